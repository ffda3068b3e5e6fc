//! Graph intervals and the containment graph of interval type arguments.
//!
//! An interval `[lo - hi]` over an acyclic graph names the class of all paths
//! from `lo` to `hi`; it exists exactly when `hi` is reachable from `lo`, so
//! the intervals of a graph correspond one-to-one with the pairs of its
//! reflexive transitive closure.
//!
//! One interval is contained in another when some path of the first is a
//! contiguous piece of some path of the second. On a DAG this reduces to a
//! reachability test on the endpoints:
//!
//! ```text
//! [a - b] ⊆ [c - d]  ⇔  c ⇝ a  ∧  b ⇝ d
//! ```
//!
//! A path `c ⇝ a ⇝ b ⇝ d` assembled from witnesses cannot revisit a vertex
//! without closing a cycle, so it is always simple. [`crate::oracle`] checks
//! the criterion against literal witness enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::construction::DEFAULT_VERTEX_BUDGET;
use crate::error::{Error, Result};
use crate::graph::{reaches, simple_paths_between, DirectedGraph, Indexed, Label, Path};
use crate::syntax;

/// An ordered endpoint pair `[lo - hi]`; meaningful relative to a graph in
/// which `hi` is reachable from `lo`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Label,
    pub hi: Label,
}

impl Interval {
    pub fn new(lo: Label, hi: Label) -> Self {
        Interval { lo, hi }
    }

    pub fn exact(v: Label) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} - {}]", self.lo, self.hi)
    }
}

/// Which type arguments a containment graph ranges over.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArgumentMode {
    /// Every interval of the graph.
    Interval,
    /// Only intervals spellable with wildcards: `?`, `? <: T`, `T <: ?` and
    /// exact `T`, i.e. those touching the bottom or the top class or having
    /// equal endpoints.
    Wildcard,
}

impl ArgumentMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ArgumentMode::Interval => "interval",
            ArgumentMode::Wildcard => "wildcard",
        }
    }

    /// Whether this mode admits `i` as a type argument.
    pub fn admits(self, i: &Interval, cfg: &NamingConfig) -> bool {
        match self {
            ArgumentMode::Interval => true,
            ArgumentMode::Wildcard => i.lo == cfg.bottom || i.hi == cfg.top || i.is_exact(),
        }
    }
}

impl fmt::Display for ArgumentMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ArgumentMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interval" => Ok(ArgumentMode::Interval),
            "wildcard" => Ok(ArgumentMode::Wildcard),
            other => Err(Error::Config(format!(
                "unknown mode `{other}` (expected `interval` or `wildcard`)"
            ))),
        }
    }
}

/// Spellings used when rendering type arguments and instantiations.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NamingConfig {
    pub wildcard: String,
    pub lower_bounded_prefix: String,
    pub upper_bounded_suffix: String,
    pub interval_separator: String,
    pub open_bracket: String,
    pub close_bracket: String,
    pub top: Label,
    pub bottom: Label,
}

impl Default for NamingConfig {
    fn default() -> Self {
        NamingConfig {
            wildcard: "?".into(),
            lower_bounded_prefix: "? <: ".into(),
            upper_bounded_suffix: " <: ?".into(),
            interval_separator: " - ".into(),
            open_bracket: "<".into(),
            close_bracket: ">".into(),
            top: Label::new("O").expect("valid label"),
            bottom: Label::new("N").expect("valid label"),
        }
    }
}

impl NamingConfig {
    /// Default spellings with `[` `]` around type arguments.
    pub fn square_brackets() -> Self {
        NamingConfig {
            open_bracket: "[".into(),
            close_bracket: "]".into(),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let delims = [
            ("wildcard", &self.wildcard),
            ("lower_bounded_prefix", &self.lower_bounded_prefix),
            ("upper_bounded_suffix", &self.upper_bounded_suffix),
            ("interval_separator", &self.interval_separator),
            ("open_bracket", &self.open_bracket),
            ("close_bracket", &self.close_bracket),
        ];
        for (name, d) in delims {
            if d.trim().is_empty() {
                return Err(Error::Config(format!("`{name}` must not be blank")));
            }
        }
        for (i, (n1, d1)) in delims.iter().enumerate() {
            for (n2, d2) in &delims[i + 1..] {
                if d1.trim() == d2.trim() {
                    return Err(Error::Config(format!("`{n1}` and `{n2}` are both {d1:?}")));
                }
            }
        }
        if self.top == self.bottom {
            return Err(Error::Config("top and bottom classes must differ".into()));
        }
        Ok(())
    }

    /// Name of `class` applied to the rendered argument `arg`.
    pub fn instantiate(&self, class: &str, arg: &str) -> String {
        format!("{class}{}{arg}{}", self.open_bracket, self.close_bracket)
    }
}

fn require_interval(g: &DirectedGraph, i: &Interval) -> Result<()> {
    if reaches(g, &i.lo, &i.hi)? {
        Ok(())
    } else {
        Err(Error::InvalidInterval {
            lo: i.lo.to_string(),
            hi: i.hi.to_string(),
        })
    }
}

/// All intervals of the acyclic `g`, trivial ones included.
pub fn intervals_of(g: &DirectedGraph) -> Result<BTreeSet<Interval>> {
    let idx = Indexed::from_graph(g);
    let order = idx.topological_order()?;
    let reach = idx.reach_sets(&order);
    Ok(reach
        .iter()
        .enumerate()
        .flat_map(|(u, row)| {
            let idx = &idx;
            row.iter()
                .map(move |v| Interval::new(idx.labels[u].clone(), idx.labels[v].clone()))
        })
        .collect())
}

/// Number of intervals of `g` admitted by `mode`, without materializing them.
pub fn count_intervals(g: &DirectedGraph, mode: ArgumentMode, cfg: &NamingConfig) -> Result<usize> {
    let idx = Indexed::from_graph(g);
    let order = idx.topological_order()?;
    let reach = idx.reach_sets(&order);
    Ok(match mode {
        ArgumentMode::Interval => reach.iter().map(|r| r.count()).sum(),
        ArgumentMode::Wildcard => reach
            .iter()
            .enumerate()
            .map(|(u, row)| {
                let lo = &idx.labels[u];
                if *lo == cfg.bottom {
                    row.count()
                } else {
                    row.iter()
                        .filter(|&v| v == u || idx.labels[v] == cfg.top)
                        .count()
                }
            })
            .sum(),
    })
}

/// Every simple path realizing `i`.
pub fn witnesses(g: &DirectedGraph, i: &Interval) -> Result<Vec<Path>> {
    require_interval(g, i)?;
    simple_paths_between(g, &i.lo, &i.hi, crate::graph::DEFAULT_PATH_BUDGET)
}

/// True iff `inner` occurs as a contiguous block of `outer`.
///
/// Anchors on the first occurrence of `inner`'s first vertex, which is the
/// only occurrence in a simple path.
pub fn is_subpath(inner: &[Label], outer: &[Label]) -> bool {
    let Some(first) = inner.first() else {
        return true;
    };
    let Some(start) = outer.iter().position(|v| v == first) else {
        return false;
    };
    outer.get(start..start + inner.len()) == Some(inner)
}

/// True iff `inner` is contained in `outer` over the acyclic `g`.
pub fn contains(g: &DirectedGraph, inner: &Interval, outer: &Interval) -> Result<bool> {
    require_interval(g, inner)?;
    require_interval(g, outer)?;
    Ok(reaches(g, &outer.lo, &inner.lo)? && reaches(g, &inner.hi, &outer.hi)?)
}

/// True iff the end of `first` reaches the start of `second`.
pub fn precedes(g: &DirectedGraph, first: &Interval, second: &Interval) -> Result<bool> {
    require_interval(g, first)?;
    require_interval(g, second)?;
    reaches(g, &first.hi, &second.lo)
}

/// Renders `i` preferring wildcard spellings: `?`, exact `T`, `? <: T`,
/// `T <: ?`, and `T1 - T2` only when nothing shorter applies.
pub fn render_interval(i: &Interval, cfg: &NamingConfig) -> String {
    let (lo, hi) = (&i.lo, &i.hi);
    if *lo == cfg.bottom && *hi == cfg.top {
        cfg.wildcard.clone()
    } else if lo == hi {
        lo.to_string()
    } else if *lo == cfg.bottom {
        format!("{}{hi}", cfg.lower_bounded_prefix)
    } else if *hi == cfg.top {
        format!("{lo}{}", cfg.upper_bounded_suffix)
    } else {
        format!("{lo}{}{hi}", cfg.interval_separator)
    }
}

/// Inverse of [`render_interval`]. Whitespace around delimiters is optional.
pub fn parse_interval_arg(text: &str, cfg: &NamingConfig) -> Result<Interval> {
    syntax::parse_argument(text, cfg)
}

/// Containment order over the type arguments of a subtyping graph, kept in
/// transitively reduced form. An edge `a -> b` means `a` is strictly
/// contained in `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentGraph {
    pub graph: DirectedGraph,
    pub index: BTreeMap<Label, Interval>,
}

impl ContainmentGraph {
    /// The one-argument graph holding only the default argument.
    pub fn default_argument(cfg: &NamingConfig) -> Result<Self> {
        let wildcard = Label::new(cfg.wildcard.clone())?;
        let mut graph = DirectedGraph::new();
        graph.add_vertex(wildcard.clone());
        let index =
            BTreeMap::from([(wildcard, Interval::new(cfg.bottom.clone(), cfg.top.clone()))]);
        Ok(ContainmentGraph { graph, index })
    }

    pub fn interval(&self, rendered: &Label) -> Option<&Interval> {
        self.index.get(rendered)
    }

    pub fn len(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }
}

pub fn containment_graph(
    g: &DirectedGraph,
    cfg: &NamingConfig,
    mode: ArgumentMode,
) -> Result<ContainmentGraph> {
    containment_graph_bounded(g, cfg, mode, DEFAULT_VERTEX_BUDGET)
}

/// As [`containment_graph`], failing once more than `max_arguments`
/// arguments would be produced.
pub fn containment_graph_bounded(
    g: &DirectedGraph,
    cfg: &NamingConfig,
    mode: ArgumentMode,
    max_arguments: usize,
) -> Result<ContainmentGraph> {
    let idx = Indexed::from_graph(g);
    let order = idx.topological_order()?;
    let reach = idx.reach_sets(&order);

    let mut args: Vec<(Label, (usize, usize))> = Vec::new();
    for (u, row) in reach.iter().enumerate() {
        for v in row.iter() {
            let interval = Interval::new(idx.labels[u].clone(), idx.labels[v].clone());
            if !mode.admits(&interval, cfg) {
                continue;
            }
            if args.len() >= max_arguments {
                return Err(Error::budget("type argument", max_arguments));
            }
            args.push((Label::new(render_interval(&interval, cfg))?, (u, v)));
        }
    }
    args.sort_by(|a, b| a.0.cmp(&b.0));
    if let Some(w) = args.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::NameCollision(w[0].0.to_string()));
    }

    let succ: Vec<Vec<usize>> = args
        .iter()
        .enumerate()
        .map(|(i, &(_, (lo, hi)))| {
            args.iter()
                .enumerate()
                .filter(|&(j, &(_, (olo, ohi)))| {
                    j != i && reach[olo].contains(lo) && reach[hi].contains(ohi)
                })
                .map(|(j, _)| j)
                .collect()
        })
        .collect();

    let index = args
        .iter()
        .map(|(label, (lo, hi))| {
            (
                label.clone(),
                Interval::new(idx.labels[*lo].clone(), idx.labels[*hi].clone()),
            )
        })
        .collect();
    let full = Indexed {
        labels: args.into_iter().map(|(l, _)| l).collect(),
        succ,
    };
    let graph = full.transitive_reduction()?.into_graph();
    Ok(ContainmentGraph { graph, index })
}
