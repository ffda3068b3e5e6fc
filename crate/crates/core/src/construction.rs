//! Iterative construction of the subtyping relation.
//!
//! `S₁` is the subclassing graph with every generic class applied to the
//! default argument `?`. Each further round builds the containment graph of
//! the current approximation's type arguments and takes its partial product
//! with the subclassing graph:
//!
//! ```text
//! S_{i+1} = C ⋉ A(S_i)
//! ```
//!
//! The relation itself is infinite; only the finite approximations are built.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{reaches, DirectedGraph, Label, DEFAULT_PATH_BUDGET};
use crate::intervals::{
    containment_graph_bounded, count_intervals, ArgumentMode, ContainmentGraph, NamingConfig,
};
use crate::product::{partial_product, SubclassingGraph};
use crate::syntax;

/// Default cap on the vertex count of any constructed graph.
pub const DEFAULT_VERTEX_BUDGET: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionConfig {
    /// Number of product applications; `1` yields the seed.
    pub iterations: usize,
    pub mode: ArgumentMode,
    pub naming: NamingConfig,
    pub vertex_budget: usize,
    /// Cap for path enumerations requested on constructed graphs (witness
    /// listings). The construction itself never enumerates paths.
    pub path_budget: usize,
}

impl Default for ConstructionConfig {
    fn default() -> Self {
        ConstructionConfig {
            iterations: 1,
            mode: ArgumentMode::Interval,
            naming: NamingConfig::default(),
            vertex_budget: DEFAULT_VERTEX_BUDGET,
            path_budget: DEFAULT_PATH_BUDGET,
        }
    }
}

impl ConstructionConfig {
    pub fn new(iterations: usize, mode: ArgumentMode) -> Self {
        ConstructionConfig {
            iterations,
            mode,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertex_budget == 0 || self.path_budget == 0 {
            return Err(Error::Config("budgets must be positive".into()));
        }
        self.naming.validate()
    }
}

/// Size statistics of one approximation `S_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub mode: ArgumentMode,
    pub vertex_count: usize,
    pub reduced_edge_count: usize,
    pub interval_count: usize,
    pub wildcard_expressible_count: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationReport {
    pub records: Vec<IterationRecord>,
}

impl IterationReport {
    pub fn last(&self) -> Option<&IterationRecord> {
        self.records.last()
    }
}

fn record(
    s: &DirectedGraph,
    iteration: usize,
    mode: ArgumentMode,
    naming: &NamingConfig,
) -> Result<IterationRecord> {
    Ok(IterationRecord {
        iteration,
        mode,
        vertex_count: s.vertex_count(),
        reduced_edge_count: s.edge_count(),
        interval_count: count_intervals(s, ArgumentMode::Interval, naming)?,
        wildcard_expressible_count: count_intervals(s, ArgumentMode::Wildcard, naming)?,
    })
}

/// `S₁`: every generic class applied to the default argument.
pub fn seed(c: &SubclassingGraph, cfg: &NamingConfig) -> Result<DirectedGraph> {
    partial_product(c, &ContainmentGraph::default_argument(cfg)?, cfg)
}

/// Builds `S_k` and the statistics of every round up to it.
pub fn iterate(
    c: &SubclassingGraph,
    cfg: &ConstructionConfig,
) -> Result<(DirectedGraph, IterationReport)> {
    let (mut stages, report) = iterate_all(c, cfg)?;
    let last = stages.pop().expect("at least one stage");
    Ok((last, report))
}

/// Like [`iterate`] but keeps every approximation: element `i` is `S_i`,
/// with `S₀` the bare subclassing graph.
pub fn iterate_all(
    c: &SubclassingGraph,
    cfg: &ConstructionConfig,
) -> Result<(Vec<DirectedGraph>, IterationReport)> {
    cfg.validate()?;
    let naming = &cfg.naming;
    let mut report = IterationReport::default();
    let mut stages = vec![c.graph().clone()];
    if cfg.iterations == 0 {
        report.records.push(record(c.graph(), 0, cfg.mode, naming)?);
        return Ok((stages, report));
    }

    let over_budget = |needed: usize, iteration: usize, report: &IterationReport| {
        (needed > cfg.vertex_budget).then(|| Error::BudgetExceeded {
            resource: "vertex",
            limit: cfg.vertex_budget,
            iteration: Some(iteration),
            partial: Some(Box::new(report.clone())),
        })
    };

    if let Some(e) = over_budget(c.product_size(1), 1, &report) {
        return Err(e);
    }
    let mut current = seed(c, naming)?;
    report.records.push(record(&current, 1, cfg.mode, naming)?);

    for i in 2..=cfg.iterations {
        let max_arguments = if c.generics().is_empty() {
            usize::MAX
        } else {
            cfg.vertex_budget
        };
        let args = match containment_graph_bounded(&current, naming, cfg.mode, max_arguments) {
            Ok(args) => args,
            Err(Error::BudgetExceeded { .. }) => {
                return Err(over_budget(usize::MAX, i, &report).expect("over budget"));
            }
            Err(e) => return Err(e),
        };
        if let Some(e) = over_budget(c.product_size(args.len()), i, &report) {
            return Err(e);
        }
        let next = partial_product(c, &args, naming)?;
        stages.push(std::mem::replace(&mut current, next));
        report.records.push(record(&current, i, cfg.mode, naming)?);
    }
    stages.push(current);
    Ok((stages, report))
}

/// Canonical label for a ground type written with free whitespace.
pub fn parse_type_expr(text: &str, cfg: &NamingConfig) -> Result<Label> {
    syntax::parse_type(text, cfg)
}

/// Splits `T1 <: T2` into canonical labels.
pub fn parse_subtype_query(text: &str, cfg: &NamingConfig) -> Result<(Label, Label)> {
    syntax::parse_subtype_query(text, cfg)
}

/// Result of asking whether one ground type is a subtype of another in a
/// finite approximation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubtypeAnswer {
    Subtype,
    NotSubtype,
    /// At least one of the types does not occur at this depth.
    Unknown,
}

impl fmt::Display for SubtypeAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubtypeAnswer::Subtype => "true",
            SubtypeAnswer::NotSubtype => "false",
            SubtypeAnswer::Unknown => "unknown",
        })
    }
}

pub fn query_subtype(s: &DirectedGraph, sub: &Label, sup: &Label) -> SubtypeAnswer {
    if !s.contains_vertex(sub) || !s.contains_vertex(sup) {
        return SubtypeAnswer::Unknown;
    }
    match reaches(s, sub, sup) {
        Ok(true) => SubtypeAnswer::Subtype,
        _ => SubtypeAnswer::NotSubtype,
    }
}
