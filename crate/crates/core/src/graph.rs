//! Directed graphs over type-name labels.
//!
//! Every relation built by this crate (subclassing, containment, the
//! subtyping approximations) is a [`DirectedGraph`]. Vertices are kept in
//! lexicographic label order so that iteration, exports and statistics are
//! reproducible. Reflexivity is never stored as a self-loop; it is implied
//! by [`reaches`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of paths any enumeration may produce.
pub const DEFAULT_PATH_BUDGET: usize = 1_000_000;

/// Canonical name of a vertex, e.g. `N`, `C<?>` or `C<? <: C<?>>`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Label(String);

impl Label {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.is_empty() || text.trim() != text {
            return Err(Error::InvalidLabel(text));
        }
        Ok(Label(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Label {
    type Error = Error;

    fn try_from(text: String) -> Result<Self> {
        Label::new(text)
    }
}

impl From<Label> for String {
    fn from(label: Label) -> String {
        label.0
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Label::new(s)
    }
}

impl AsRef<str> for Label {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A simple path: consecutive vertices are joined by edges, no vertex repeats.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Path(Vec<Label>);

impl Path {
    /// Wraps a vertex sequence. Callers are responsible for it being a path
    /// of whatever graph it is used with.
    pub fn new(vertices: Vec<Label>) -> Self {
        Path(vertices)
    }

    pub fn trivial(v: Label) -> Self {
        Path(vec![v])
    }

    pub fn vertices(&self) -> &[Label] {
        &self.0
    }

    /// Number of edges on the path.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn start(&self) -> Option<&Label> {
        self.0.first()
    }

    pub fn end(&self) -> Option<&Label> {
        self.0.last()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(Label::as_str).collect();
        write!(f, "[{}]", names.join(", "))
    }
}

/// Finite directed graph without self-loops or parallel edges.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct DirectedGraph {
    adj: BTreeMap<Label, BTreeSet<Label>>,
}

impl DirectedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from `(from, to)` name pairs; endpoints are added as vertices.
    pub fn from_edges<I, A, B>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut g = DirectedGraph::new();
        for (a, b) in edges {
            g.add_edge(Label::new(a.as_ref())?, Label::new(b.as_ref())?);
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Label) {
        self.adj.entry(v).or_default();
    }

    /// Adds `u -> v`, inserting missing endpoints. Self-loops are dropped.
    pub fn add_edge(&mut self, u: Label, v: Label) {
        self.add_vertex(v.clone());
        if u == v {
            self.add_vertex(u);
            return;
        }
        self.adj.entry(u).or_default().insert(v);
    }

    pub fn contains_vertex(&self, v: &Label) -> bool {
        self.adj.contains_key(v)
    }

    pub fn contains_edge(&self, u: &Label, v: &Label) -> bool {
        self.adj.get(u).is_some_and(|s| s.contains(v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Label> + '_ {
        self.adj.keys()
    }

    /// Edges in `(from, to)` lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (&Label, &Label)> + '_ {
        self.adj
            .iter()
            .flat_map(|(u, succ)| succ.iter().map(move |v| (u, v)))
    }

    pub fn successors(&self, u: &Label) -> Result<impl Iterator<Item = &Label> + '_> {
        self.adj
            .get(u)
            .map(|s| s.iter())
            .ok_or_else(|| Error::UnknownVertex(u.to_string()))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Copy of `self` with every label passed through `f`.
    pub fn relabel(&self, mut f: impl FnMut(&Label) -> Label) -> DirectedGraph {
        let mut out = DirectedGraph::new();
        for (u, succ) in &self.adj {
            let nu = f(u);
            out.add_vertex(nu.clone());
            for v in succ {
                out.add_edge(nu.clone(), f(v));
            }
        }
        out
    }

    /// Subgraph induced by the vertices satisfying `keep`.
    pub fn induced(&self, mut keep: impl FnMut(&Label) -> bool) -> DirectedGraph {
        let kept: BTreeSet<&Label> = self.adj.keys().filter(|v| keep(v)).collect();
        let mut out = DirectedGraph::new();
        for &u in &kept {
            out.add_vertex(u.clone());
            for v in &self.adj[u] {
                if kept.contains(v) {
                    out.add_edge(u.clone(), v.clone());
                }
            }
        }
        out
    }

    fn require(&self, v: &Label) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }
}

impl fmt::Debug for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirectedGraph")
            .field("vertices", &self.adj.keys().collect::<Vec<_>>())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// True iff `v == u` or a directed path leads from `u` to `v`.
pub fn reaches(g: &DirectedGraph, u: &Label, v: &Label) -> Result<bool> {
    g.require(u)?;
    g.require(v)?;
    if u == v {
        return Ok(true);
    }
    let mut seen: BTreeSet<&Label> = BTreeSet::from([u]);
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for y in &g.adj[x] {
            if y == v {
                return Ok(true);
            }
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    Ok(false)
}

pub fn is_dag(g: &DirectedGraph) -> bool {
    Indexed::from_graph(g).topological_order().is_ok()
}

/// Edge `(u, v)` for every `u != v` with `v` reachable from `u`.
pub fn transitive_closure(g: &DirectedGraph) -> DirectedGraph {
    let idx = Indexed::from_graph(g);
    let reach = idx.reach_sets_general();
    let mut out = DirectedGraph::new();
    for (u, label) in idx.labels.iter().enumerate() {
        out.add_vertex(label.clone());
        for v in reach[u].iter() {
            if v != u {
                out.add_edge(label.clone(), idx.labels[v].clone());
            }
        }
    }
    out
}

/// The unique minimal graph with the same reachability as the acyclic `g`.
pub fn transitive_reduction(g: &DirectedGraph) -> Result<DirectedGraph> {
    let idx = Indexed::from_graph(g);
    let reduced = idx.transitive_reduction()?;
    Ok(reduced.into_graph())
}

/// Every simple path of the acyclic `g`, ordered by length then by vertex
/// sequence. Single-vertex paths are included iff `include_trivial`.
pub fn all_simple_paths(g: &DirectedGraph, include_trivial: bool) -> Result<Vec<Path>> {
    all_simple_paths_bounded(g, include_trivial, DEFAULT_PATH_BUDGET)
}

pub fn all_simple_paths_bounded(
    g: &DirectedGraph,
    include_trivial: bool,
    budget: usize,
) -> Result<Vec<Path>> {
    let idx = Indexed::from_graph(g);
    idx.topological_order()?;
    let mut out = Vec::new();
    for start in 0..idx.len() {
        idx.paths_from(start, None, include_trivial, budget, &mut out)?;
    }
    Ok(sort_paths(&idx, out))
}

/// Every simple path from `from` to `to` in the acyclic `g`, in the same order
/// as [`all_simple_paths`].
pub fn simple_paths_between(
    g: &DirectedGraph,
    from: &Label,
    to: &Label,
    budget: usize,
) -> Result<Vec<Path>> {
    g.require(from)?;
    g.require(to)?;
    let idx = Indexed::from_graph(g);
    idx.topological_order()?;
    let (s, t) = (idx.index_of(from), idx.index_of(to));
    let mut out = Vec::new();
    idx.paths_from(s, Some(t), true, budget, &mut out)?;
    Ok(sort_paths(&idx, out))
}

fn sort_paths(idx: &Indexed, mut raw: Vec<Vec<usize>>) -> Vec<Path> {
    // Indices follow label order, so index order is label order.
    raw.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    raw.into_iter()
        .map(|p| Path(p.into_iter().map(|i| idx.labels[i].clone()).collect()))
        .collect()
}

/// Fixed-width bit set used for reachability rows.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub(crate) fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

/// Index-based adjacency view. Index order equals label order.
pub(crate) struct Indexed {
    pub(crate) labels: Vec<Label>,
    pub(crate) succ: Vec<Vec<usize>>,
}

impl Indexed {
    pub(crate) fn from_graph(g: &DirectedGraph) -> Self {
        let labels: Vec<Label> = g.adj.keys().cloned().collect();
        let succ = g
            .adj
            .values()
            .map(|s| {
                s.iter()
                    .map(|v| labels.binary_search(v).expect("edge endpoint is a vertex"))
                    .collect()
            })
            .collect();
        Indexed { labels, succ }
    }

    pub(crate) fn len(&self) -> usize {
        self.labels.len()
    }

    pub(crate) fn index_of(&self, v: &Label) -> usize {
        self.labels.binary_search(v).expect("vertex is present")
    }

    pub(crate) fn into_graph(self) -> DirectedGraph {
        let mut adj: BTreeMap<Label, BTreeSet<Label>> = BTreeMap::new();
        for (u, succ) in self.succ.iter().enumerate() {
            adj.insert(
                self.labels[u].clone(),
                succ.iter().map(|&v| self.labels[v].clone()).collect(),
            );
        }
        DirectedGraph { adj }
    }

    /// Kahn's algorithm; reports a vertex on a cycle when there is one.
    pub(crate) fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.len();
        let mut indegree = vec![0usize; n];
        for s in &self.succ {
            for &v in s {
                indegree[v] += 1;
            }
        }
        let mut ready: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = ready.pop_front() {
            order.push(u);
            for &v in &self.succ[u] {
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    ready.push_back(v);
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            let stuck = (0..n)
                .find(|&v| indegree[v] > 0)
                .expect("some vertex is stuck");
            Err(Error::Cyclic(self.labels[stuck].to_string()))
        }
    }

    /// Reflexive reachability rows for an acyclic graph, by dynamic
    /// programming in reverse topological order.
    pub(crate) fn reach_sets(&self, order: &[usize]) -> Vec<BitSet> {
        let n = self.len();
        let mut reach: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for &u in order.iter().rev() {
            let mut row = BitSet::new(n);
            row.insert(u);
            for &v in &self.succ[u] {
                row.union_with(&reach[v]);
            }
            reach[u] = row;
        }
        reach
    }

    /// Reflexive reachability rows for any graph (breadth-first per vertex).
    pub(crate) fn reach_sets_general(&self) -> Vec<BitSet> {
        if let Ok(order) = self.topological_order() {
            return self.reach_sets(&order);
        }
        let n = self.len();
        (0..n)
            .map(|s| {
                let mut row = BitSet::new(n);
                row.insert(s);
                let mut queue = VecDeque::from([s]);
                while let Some(u) = queue.pop_front() {
                    for &v in &self.succ[u] {
                        if !row.contains(v) {
                            row.insert(v);
                            queue.push_back(v);
                        }
                    }
                }
                row
            })
            .collect()
    }

    /// Keeps `u -> v` iff no other successor of `u` reaches `v`. Successors
    /// are visited in topological order so one pass over each adjacency list
    /// suffices.
    pub(crate) fn transitive_reduction(&self) -> Result<Indexed> {
        let order = self.topological_order()?;
        let reach = self.reach_sets(&order);
        let mut rank = vec![0usize; self.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let succ = self
            .succ
            .iter()
            .map(|s| {
                let mut by_rank = s.clone();
                by_rank.sort_by_key(|&v| rank[v]);
                let mut covered = BitSet::new(self.len());
                let mut kept = Vec::new();
                for v in by_rank {
                    if !covered.contains(v) {
                        kept.push(v);
                        covered.union_with(&reach[v]);
                    }
                }
                kept.sort_unstable();
                kept
            })
            .collect();
        Ok(Indexed {
            labels: self.labels.clone(),
            succ,
        })
    }

    /// Depth-first enumeration of simple paths starting at `start`, optionally
    /// restricted to those ending at `target`.
    fn paths_from(
        &self,
        start: usize,
        target: Option<usize>,
        include_trivial: bool,
        budget: usize,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        let mut path = vec![start];
        let mut on_path = vec![false; self.len()];
        on_path[start] = true;
        let emit = |p: &[usize], out: &mut Vec<Vec<usize>>| -> Result<()> {
            let wanted = target.is_none_or(|t| p.last() == Some(&t));
            if wanted && (include_trivial || p.len() > 1) {
                if out.len() >= budget {
                    return Err(Error::budget("path", budget));
                }
                out.push(p.to_vec());
            }
            Ok(())
        };
        emit(&path, out)?;
        while let Some((u, next)) = stack.last_mut() {
            let u = *u;
            if let Some(&v) = self.succ[u].get(*next) {
                *next += 1;
                if on_path[v] {
                    continue;
                }
                path.push(v);
                on_path[v] = true;
                emit(&path, out)?;
                stack.push((v, 0));
            } else {
                stack.pop();
                if let Some(v) = path.pop() {
                    on_path[v] = false;
                }
            }
        }
        Ok(())
    }
}
