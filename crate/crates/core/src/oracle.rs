//! Deliberately naive reference implementations of the interval definitions,
//! used by tests to cross-check the reachability-based code paths. Nothing
//! here shares code with [`crate::intervals`] beyond the data types.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Label, Path, DEFAULT_PATH_BUDGET};
use crate::intervals::Interval;

/// Parameters for [`random_dag`].
#[derive(Clone, Copy, Debug)]
pub struct RandomDagSpec {
    pub vertex_count: usize,
    pub edge_probability: f64,
    pub seed: u64,
}

/// Every simple path by plain recursion, trivial paths included iff asked.
pub fn naive_simple_paths(
    g: &DirectedGraph,
    include_trivial: bool,
    budget: usize,
) -> Result<Vec<Path>> {
    fn extend(
        g: &DirectedGraph,
        path: &mut Vec<Label>,
        out: &mut Vec<Path>,
        budget: usize,
    ) -> Result<()> {
        let last = path.last().expect("non-empty").clone();
        for next in g.successors(&last)? {
            if path.contains(next) {
                continue;
            }
            path.push(next.clone());
            if out.len() >= budget {
                return Err(Error::budget("path", budget));
            }
            out.push(Path::new(path.clone()));
            extend(g, path, out, budget)?;
            path.pop();
        }
        Ok(())
    }

    let mut out = Vec::new();
    for v in g.vertices() {
        if include_trivial {
            if out.len() >= budget {
                return Err(Error::budget("path", budget));
            }
            out.push(Path::trivial(v.clone()));
        }
        extend(g, &mut vec![v.clone()], &mut out, budget)?;
    }
    Ok(out)
}

/// Paths grouped by their `(start, end)` pair.
pub fn path_classes(g: &DirectedGraph) -> Result<BTreeMap<Interval, Vec<Path>>> {
    let mut classes: BTreeMap<Interval, Vec<Path>> = BTreeMap::new();
    for p in naive_simple_paths(g, true, DEFAULT_PATH_BUDGET)? {
        let key = Interval::new(
            p.start().expect("non-empty").clone(),
            p.end().expect("non-empty").clone(),
        );
        classes.entry(key).or_default().push(p);
    }
    Ok(classes)
}

/// Intervals as the quotient of all paths by shared endpoints.
pub fn intervals_by_quotient(g: &DirectedGraph) -> Result<BTreeSet<Interval>> {
    Ok(path_classes(g)?.into_keys().collect())
}

fn occurs_contiguously(inner: &[Label], outer: &[Label]) -> bool {
    inner.is_empty() || outer.windows(inner.len()).any(|w| w == inner)
}

/// Containment by its literal definition: some witness of `inner` is a
/// contiguous piece of some witness of `outer`.
pub fn contains_by_witness_pairs(
    g: &DirectedGraph,
    inner: &Interval,
    outer: &Interval,
) -> Result<bool> {
    let paths = naive_simple_paths(g, true, DEFAULT_PATH_BUDGET)?;
    let witnesses_of = |i: &Interval| -> Vec<&Path> {
        paths
            .iter()
            .filter(|p| p.start() == Some(&i.lo) && p.end() == Some(&i.hi))
            .collect()
    };
    let (inner_w, outer_w) = (witnesses_of(inner), witnesses_of(outer));
    if inner_w.is_empty() || outer_w.is_empty() {
        let bad = if inner_w.is_empty() { inner } else { outer };
        return Err(Error::InvalidInterval {
            lo: bad.lo.to_string(),
            hi: bad.hi.to_string(),
        });
    }
    Ok(inner_w.iter().any(|p1| {
        outer_w
            .iter()
            .any(|p2| occurs_contiguously(p1.vertices(), p2.vertices()))
    }))
}

/// Ordered pairs `(u, v)` with `v` reachable from `u`, found by depth-first
/// search from every vertex.
pub fn reachable_pairs(g: &DirectedGraph) -> Result<BTreeSet<(Label, Label)>> {
    let mut out = BTreeSet::new();
    for u in g.vertices() {
        let mut stack = vec![u.clone()];
        let mut seen = BTreeSet::from([u.clone()]);
        while let Some(x) = stack.pop() {
            for y in g.successors(&x)? {
                if seen.insert(y.clone()) {
                    stack.push(y.clone());
                }
            }
        }
        out.extend(seen.into_iter().map(|v| (u.clone(), v)));
    }
    Ok(out)
}

/// Random acyclic graph on `v0..v{n-1}`: vertices are ranked by a random
/// permutation and each rank-forward pair becomes an edge with the given
/// probability.
pub fn random_dag(spec: RandomDagSpec) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let labels: Vec<Label> = (0..spec.vertex_count)
        .map(|i| Label::new(format!("v{i}")).expect("valid label"))
        .collect();
    let mut ranked = labels.clone();
    ranked.shuffle(&mut rng);
    let mut g = DirectedGraph::new();
    for v in &labels {
        g.add_vertex(v.clone());
    }
    for i in 0..ranked.len() {
        for j in i + 1..ranked.len() {
            if rng.gen_bool(spec.edge_probability.clamp(0.0, 1.0)) {
                g.add_edge(ranked[i].clone(), ranked[j].clone());
            }
        }
    }
    g
}
