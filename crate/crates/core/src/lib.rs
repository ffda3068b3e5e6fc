//! Generic nominal subtyping with interval type arguments.
//!
//! A subtyping relation between ground generic types is approximated by
//! iterating a graph equation: the containment graph of all type arguments
//! over the current approximation is combined with the subclassing graph by
//! a partial Cartesian product. Restricting arguments to wildcard-spellable
//! intervals reproduces wildcard subtyping for comparison.
//!
//! ```
//! use subtyper::{build_subclassing, iterate, parse_decls, ArgumentMode, ConstructionConfig, NamingConfig};
//!
//! let table = parse_decls("class C<T> {}").unwrap();
//! let classes = build_subclassing(&table, &NamingConfig::default()).unwrap();
//! let (s2, _) = iterate(&classes, &ConstructionConfig::new(2, ArgumentMode::Interval)).unwrap();
//! assert_eq!(s2.vertex_count(), 8);
//! ```

pub mod construction;
pub mod dsl;
pub mod error;
pub mod export;
pub mod graph;
pub mod intervals;
pub mod oracle;
pub mod product;
mod syntax;

pub use construction::{
    iterate, iterate_all, parse_subtype_query, parse_type_expr, query_subtype, seed,
    ConstructionConfig, IterationRecord, IterationReport, SubtypeAnswer, DEFAULT_VERTEX_BUDGET,
};
pub use dsl::{build_subclassing, parse_decls, ClassDecl, ClassTable};
pub use error::{DeclErrorKind, Error, Result};
pub use export::{emit, EmitFormat, GraphDocument};
pub use graph::{DirectedGraph, Label, Path};
pub use intervals::{
    containment_graph, contains, intervals_of, parse_interval_arg, precedes, render_interval,
    ArgumentMode, ContainmentGraph, Interval, NamingConfig,
};
pub use product::{partial_product, SubclassingGraph};
