//! Partial Cartesian product of a subclassing graph with a graph of type
//! arguments: non-generic classes pass through unchanged, each generic class
//! is paired with every argument.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{transitive_reduction, DirectedGraph, Label};
use crate::intervals::{ContainmentGraph, NamingConfig};

/// The subclassing relation together with the set of generic classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubclassingGraph {
    graph: DirectedGraph,
    generics: BTreeSet<Label>,
}

impl SubclassingGraph {
    /// Validates and reduces `graph`. Top and bottom must be present, top
    /// must have no supertypes, bottom no subtypes, and neither may be generic.
    pub fn new(
        graph: DirectedGraph,
        generics: BTreeSet<Label>,
        cfg: &NamingConfig,
    ) -> Result<Self> {
        let graph = transitive_reduction(&graph)?;
        for end in [&cfg.top, &cfg.bottom] {
            if !graph.contains_vertex(end) {
                return Err(Error::UnknownVertex(end.to_string()));
            }
            if generics.contains(end) {
                return Err(Error::Config(format!("`{end}` cannot be generic")));
            }
        }
        if graph.successors(&cfg.top)?.next().is_some() {
            return Err(Error::Config(format!(
                "`{}` must not have a superclass",
                cfg.top
            )));
        }
        if graph.edges().any(|(_, v)| *v == cfg.bottom) {
            return Err(Error::Config(format!(
                "`{}` must not have a subclass",
                cfg.bottom
            )));
        }
        if let Some(g) = generics.iter().find(|g| !graph.contains_vertex(g)) {
            return Err(Error::UnknownVertex(g.to_string()));
        }
        Ok(SubclassingGraph { graph, generics })
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn generics(&self) -> &BTreeSet<Label> {
        &self.generics
    }

    pub fn is_generic(&self, class: &Label) -> bool {
        self.generics.contains(class)
    }

    /// Vertex count of the product with an argument graph of `arguments` vertices.
    pub fn product_size(&self, arguments: usize) -> usize {
        let plain = self.graph.vertex_count() - self.generics.len();
        plain.saturating_add(self.generics.len().saturating_mul(arguments))
    }
}

/// `C ⋉ A`: the next subtyping approximation, transitively reduced.
///
/// Subclassing edges lift to every instantiation (a generic subclass and a
/// generic superclass share the argument); containment edges `a₁ -> a₂`
/// become `g<a₁> -> g<a₂>` for each generic `g`.
pub fn partial_product(
    c: &SubclassingGraph,
    args: &ContainmentGraph,
    cfg: &NamingConfig,
) -> Result<DirectedGraph> {
    if args.is_empty() {
        return Err(Error::Config("argument graph is empty".into()));
    }
    let arg_labels: Vec<&Label> = args.graph.vertices().collect();
    let instances = |class: &Label| -> Result<Vec<Label>> {
        if c.is_generic(class) {
            arg_labels
                .iter()
                .map(|a| Label::new(cfg.instantiate(class.as_str(), a.as_str())))
                .collect()
        } else {
            Ok(vec![class.clone()])
        }
    };

    let mut out = DirectedGraph::new();
    for class in c.graph.vertices() {
        for inst in instances(class)? {
            if c.is_generic(class) && c.graph.contains_vertex(&inst) {
                return Err(Error::NameCollision(inst.to_string()));
            }
            out.add_vertex(inst);
        }
    }

    for (x, y) in c.graph.edges() {
        if c.is_generic(x) && c.is_generic(y) {
            for a in &arg_labels {
                out.add_edge(
                    Label::new(cfg.instantiate(x.as_str(), a.as_str()))?,
                    Label::new(cfg.instantiate(y.as_str(), a.as_str()))?,
                );
            }
        } else {
            let ys = instances(y)?;
            for xi in instances(x)? {
                for yi in &ys {
                    out.add_edge(xi.clone(), yi.clone());
                }
            }
        }
    }

    for g in &c.generics {
        for (a1, a2) in args.graph.edges() {
            out.add_edge(
                Label::new(cfg.instantiate(g.as_str(), a1.as_str()))?,
                Label::new(cfg.instantiate(g.as_str(), a2.as_str()))?,
            );
        }
    }

    transitive_reduction(&out)
}
