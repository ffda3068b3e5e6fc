//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.
//!
//! Expected sizes are cross-checked against a brute-force construction that
//! follows the definitions literally: intervals as path classes, containment
//! by witness-pair subpath search, the product by explicit edge rules, and
//! reduction by deleting every edge whose endpoints stay connected without it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use subtyper::graph::{reaches, transitive_closure, transitive_reduction};
use subtyper::intervals::{containment_graph, contains};
use subtyper::oracle::{
    contains_by_witness_pairs, intervals_by_quotient, path_classes, random_dag, reachable_pairs,
    RandomDagSpec,
};
use subtyper::{
    build_subclassing, emit, intervals_of, iterate, iterate_all, parse_decls, query_subtype,
    ArgumentMode, ConstructionConfig, DeclErrorKind, DirectedGraph, EmitFormat, GraphDocument,
    Interval, Label, NamingConfig, Path, SubclassingGraph, SubtypeAnswer,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}.cls", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {path}: {e}"))
}

fn classes(name: &str) -> SubclassingGraph {
    build_subclassing(
        &parse_decls(&fixture(name)).unwrap(),
        &NamingConfig::default(),
    )
    .unwrap()
}

const FIXTURES: [&str; 4] = ["example1", "example2", "example3", "example4"];

fn l(s: &str) -> Label {
    Label::new(s).unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, started: Instant) -> Outcome {
    let took = started.elapsed();
    check(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

// ---- brute-force construction oracle ------------------------------------

fn naive_render(i: &Interval) -> String {
    match (i.lo.as_str(), i.hi.as_str()) {
        ("N", "O") => "?".to_string(),
        (a, b) if a == b => a.to_string(),
        ("N", b) => format!("? <: {b}"),
        (a, "O") => format!("{a} <: ?"),
        (a, b) => format!("{a} - {b}"),
    }
}

fn connected_without(
    g: &BTreeSet<(String, String)>,
    from: &str,
    to: &str,
    skip: &(String, String),
) -> bool {
    let mut seen = BTreeSet::from([from.to_string()]);
    let mut queue = VecDeque::from([from.to_string()]);
    while let Some(x) = queue.pop_front() {
        for e in g.iter().filter(|e| e.0 == x && *e != skip) {
            if e.1 == to {
                return true;
            }
            if seen.insert(e.1.clone()) {
                queue.push_back(e.1.clone());
            }
        }
    }
    false
}

fn naive_reduce(edges: BTreeSet<(String, String)>) -> BTreeSet<(String, String)> {
    let mut current = edges;
    loop {
        let redundant = current
            .iter()
            .find(|e| connected_without(&current, &e.0, &e.1, e))
            .cloned();
        match redundant {
            Some(e) => {
                current.remove(&e);
            }
            None => return current,
        }
    }
}

struct NaiveGraph {
    vertices: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
}

impl NaiveGraph {
    fn to_graph(&self) -> DirectedGraph {
        let mut g = DirectedGraph::new();
        for v in &self.vertices {
            g.add_vertex(l(v));
        }
        for (a, b) in &self.edges {
            g.add_edge(l(a), l(b));
        }
        g
    }
}

/// `args` is `(vertices, containment edges)` in rendered form.
fn naive_product(c: &SubclassingGraph, args: &(Vec<String>, Vec<(String, String)>)) -> NaiveGraph {
    let inst = |x: &Label| -> Vec<String> {
        if c.is_generic(x) {
            args.0.iter().map(|a| format!("{x}<{a}>")).collect()
        } else {
            vec![x.to_string()]
        }
    };
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for x in c.graph().vertices() {
        vertices.extend(inst(x));
    }
    for (x, y) in c.graph().edges() {
        if c.is_generic(x) && c.is_generic(y) {
            for a in &args.0 {
                edges.insert((format!("{x}<{a}>"), format!("{y}<{a}>")));
            }
        } else {
            for xi in inst(x) {
                for yi in inst(y) {
                    edges.insert((xi.clone(), yi));
                }
            }
        }
    }
    for g in c.generics() {
        for (a1, a2) in &args.1 {
            edges.insert((format!("{g}<{a1}>"), format!("{g}<{a2}>")));
        }
    }
    NaiveGraph {
        vertices,
        edges: naive_reduce(edges),
    }
}

fn naive_arguments(s: &DirectedGraph, mode: ArgumentMode) -> (Vec<String>, Vec<(String, String)>) {
    let classes: Vec<(Interval, Vec<Path>)> = path_classes(s)
        .unwrap()
        .into_iter()
        .filter(|(i, _)| match mode {
            ArgumentMode::Interval => true,
            ArgumentMode::Wildcard => i.lo.as_str() == "N" || i.hi.as_str() == "O" || i.lo == i.hi,
        })
        .collect();
    let subpath = |p: &Path, q: &Path| {
        q.vertices()
            .windows(p.vertices().len())
            .any(|w| w == p.vertices())
    };
    let mut edges = Vec::new();
    for (a, wa) in &classes {
        for (b, wb) in &classes {
            if a != b && wa.iter().any(|p| wb.iter().any(|q| subpath(p, q))) {
                edges.push((naive_render(a), naive_render(b)));
            }
        }
    }
    (
        classes.iter().map(|(i, _)| naive_render(i)).collect(),
        edges,
    )
}

/// `S₁ .. S_k` built by the oracle.
fn naive_construction(c: &SubclassingGraph, k: usize, mode: ArgumentMode) -> Vec<DirectedGraph> {
    let mut out = Vec::new();
    let mut args = (vec!["?".to_string()], Vec::new());
    for _ in 0..k {
        let s = naive_product(c, &args).to_graph();
        args = naive_arguments(&s, mode);
        out.push(s);
    }
    out
}

// ---- criteria ------------------------------------------------------------

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let c = classes("example1");
    let (stages, _) = iterate_all(&c, &ConstructionConfig::new(2, ArgumentMode::Interval))
        .map_err(|e| e.to_string())?;
    let chain = DirectedGraph::from_edges([("N", "C<?>"), ("C<?>", "O")]).unwrap();
    check(stages[1] == chain, || format!("S1 = {:?}", stages[1]))?;
    let s2 = &stages[2];
    let generic: Vec<&Label> = s2
        .vertices()
        .filter(|v| v.as_str().starts_with("C<"))
        .collect();
    check(
        s2.vertex_count() == 8
            && generic.len() == 6
            && s2.contains_vertex(&l("O"))
            && s2.contains_vertex(&l("N")),
        || format!("S2 vertices = {:?}", s2.vertices().collect::<Vec<_>>()),
    )?;
    within(Duration::from_secs(1), started)
}

fn criterion_2() -> Outcome {
    let c = classes("example1");
    let mut sizes = BTreeMap::new();
    for mode in [ArgumentMode::Interval, ArgumentMode::Wildcard] {
        let started = Instant::now();
        let (stages, _) =
            iterate_all(&c, &ConstructionConfig::new(3, mode)).map_err(|e| e.to_string())?;
        within(Duration::from_secs(5), started)?;
        let naive = naive_construction(&c, 3, mode);
        for (i, s) in naive.iter().enumerate() {
            check(stages[i + 1] == *s, || {
                format!("{mode} S{} differs from oracle", i + 1)
            })?;
        }
        sizes.insert(
            mode,
            stages
                .iter()
                .skip(1)
                .map(|s| s.vertex_count())
                .collect::<Vec<_>>(),
        );
    }
    let (iv, wc) = (
        &sizes[&ArgumentMode::Interval],
        &sizes[&ArgumentMode::Wildcard],
    );
    check(iv[0] == wc[0] && iv[1] == wc[1], || {
        format!("k<=2 differ: {iv:?} vs {wc:?}")
    })?;
    check(iv[2] > wc[2], || format!("no gap at k=3: {iv:?} vs {wc:?}"))?;
    check(*iv == [3, 8, 32] && *wc == [3, 8, 23], || {
        format!("sizes {iv:?} / {wc:?}, frozen [3, 8, 32] / [3, 8, 23]")
    })
}

fn criterion_3() -> Outcome {
    for (name, s1_size, s1_intervals, s2_size) in [("example2", 4, 9, 20), ("example3", 4, 10, 22)]
    {
        let c = classes(name);
        let started = Instant::now();
        let (stages, report) = iterate_all(&c, &ConstructionConfig::new(2, ArgumentMode::Interval))
            .map_err(|e| e.to_string())?;
        within(Duration::from_secs(5), started)?;
        let naive = naive_construction(&c, 2, ArgumentMode::Interval);
        check(stages[1] == naive[0] && stages[2] == naive[1], || {
            format!("{name}: construction differs from oracle")
        })?;
        let oracle_intervals = intervals_by_quotient(&naive[0]).unwrap().len();
        check(
            stages[1].vertex_count() == s1_size
                && report.records[0].interval_count == s1_intervals
                && oracle_intervals == s1_intervals
                && stages[2].vertex_count() == s2_size,
            || {
                format!(
                    "{name}: |S1|={} |I(S1)|={} (oracle {oracle_intervals}) |S2|={}",
                    stages[1].vertex_count(),
                    report.records[0].interval_count,
                    stages[2].vertex_count()
                )
            },
        )?;
    }
    let s1 = iterate(
        &classes("example3"),
        &ConstructionConfig::new(1, ArgumentMode::Interval),
    )
    .map_err(|e| e.to_string())?
    .0;
    let chain =
        DirectedGraph::from_edges([("N", "E<?>"), ("E<?>", "C<?>"), ("C<?>", "O")]).unwrap();
    check(s1 == chain, || format!("example3 S1 = {s1:?}"))
}

fn random_specs(count: u64, max_n: usize) -> impl Iterator<Item = RandomDagSpec> {
    (0..count).map(move |seed| RandomDagSpec {
        vertex_count: (seed as usize) % (max_n + 1),
        edge_probability: 0.15 + 0.7 * ((seed * 37 % 100) as f64 / 100.0),
        seed,
    })
}

fn criterion_4() -> Outcome {
    let started = Instant::now();
    for spec in random_specs(200, 8) {
        let g = random_dag(spec);
        let fast = intervals_of(&g).map_err(|e| e.to_string())?;
        let slow = intervals_by_quotient(&g).map_err(|e| e.to_string())?;
        let pairs = reachable_pairs(&g).unwrap().len();
        check(fast == slow && fast.len() == pairs, || {
            format!(
                "seed {}: {} vs {} intervals, {pairs} pairs",
                spec.seed,
                fast.len(),
                slow.len()
            )
        })?;
    }
    within(Duration::from_secs(30), started)
}

fn criterion_5() -> Outcome {
    let started = Instant::now();
    for spec in random_specs(200, 6) {
        let g = random_dag(spec);
        let all: Vec<Interval> = intervals_of(&g).unwrap().into_iter().collect();
        for a in &all {
            for b in &all {
                let fast = contains(&g, a, b).unwrap();
                let slow = contains_by_witness_pairs(&g, a, b).unwrap();
                check(fast == slow, || {
                    format!("seed {}: {a} in {b}: {fast} vs {slow}", spec.seed)
                })?;
                if a != b && fast {
                    check(!contains(&g, b, a).unwrap(), || {
                        format!("antisymmetry fails for {a}, {b}")
                    })?;
                }
            }
            check(contains(&g, a, a).unwrap(), || {
                format!("reflexivity fails for {a}")
            })?;
        }
        for a in &all {
            for b in all.iter().filter(|b| contains(&g, a, b).unwrap()) {
                for c in all.iter().filter(|c| contains(&g, b, c).unwrap()) {
                    check(contains(&g, a, c).unwrap(), || {
                        format!("transitivity fails: {a} {b} {c}")
                    })?;
                }
            }
        }
    }
    within(Duration::from_secs(60), started)
}

fn criterion_6() -> Outcome {
    let mut graphs: Vec<DirectedGraph> = Vec::new();
    for name in FIXTURES {
        let c = classes(name);
        graphs.push(c.graph().clone());
        let (stages, _) = iterate_all(&c, &ConstructionConfig::new(2, ArgumentMode::Interval))
            .map_err(|e| e.to_string())?;
        graphs.extend(stages);
    }
    graphs.extend(random_specs(50, 8).map(|s| {
        random_dag(RandomDagSpec {
            seed: s.seed + 1000,
            ..s
        })
    }));
    for g in &graphs {
        let direct = intervals_of(g).unwrap();
        let reduced = intervals_of(&transitive_reduction(g).unwrap()).unwrap();
        let closed = intervals_of(&transitive_closure(g)).unwrap();
        check(direct == reduced && direct == closed, || {
            format!("mismatch on {g:?}")
        })?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for name in FIXTURES {
        let c = classes(name);
        for mode in [ArgumentMode::Interval, ArgumentMode::Wildcard] {
            let (stages, _) =
                iterate_all(&c, &ConstructionConfig::new(3, mode)).map_err(|e| e.to_string())?;
            for i in 1..3 {
                let (small, big) = (&stages[i], &stages[i + 1]);
                if let Some(v) = small.vertices().find(|v| !big.contains_vertex(v)) {
                    return Err(format!("{name} {mode}: {v} in S{i} but not S{}", i + 1));
                }
                for (u, v) in small.edges() {
                    check(reaches(big, u, v).unwrap(), || {
                        format!("{name} {mode}: {u} <: {v} lost in S{}", i + 1)
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let c = classes("example1");
    let naming = NamingConfig::default();
    let (stages, _) = iterate_all(&c, &ConstructionConfig::new(3, ArgumentMode::Interval))
        .map_err(|e| e.to_string())?;
    let (s2, s3) = (&stages[2], &stages[3]);
    let args = containment_graph(s2, &naming, ArgumentMode::Interval).unwrap();
    let mut checked = 0;
    for (r1, a1) in &args.index {
        for (r2, a2) in &args.index {
            let t1 = l(&naming.instantiate("C", r1.as_str()));
            let t2 = l(&naming.instantiate("C", r2.as_str()));
            let answer = query_subtype(s3, &t1, &t2);
            let expected = if contains(s2, a1, a2).unwrap() {
                SubtypeAnswer::Subtype
            } else {
                SubtypeAnswer::NotSubtype
            };
            check(answer == expected, || {
                format!("{t1} <: {t2}: {answer}, expected {expected}")
            })?;
            checked += 1;
        }
    }
    check(checked == 30 * 30, || format!("checked {checked} pairs"))
}

fn criterion_9() -> Outcome {
    let source = fixture("motivating");
    match parse_decls(&source) {
        Err(e) => check(
            matches!(
                e.decl_kind(),
                Some(DeclErrorKind::UnsupportedInstantiation(_))
            ),
            || format!("wrong error: {e}"),
        ),
        Ok(_) => Err("nested superclass instantiation was accepted".into()),
    }?;
    match parse_decls("class E<T> {}\nclass C<T> extends E<E<T>> {}") {
        Err(e)
            if matches!(
                e.decl_kind(),
                Some(DeclErrorKind::UnsupportedInstantiation(_))
            ) =>
        {
            Ok(())
        }
        other => Err(format!("unexpected result {other:?}")),
    }
}

fn criterion_10() -> Outcome {
    for name in FIXTURES {
        let c = classes(name);
        for k in 1..=3 {
            for mode in [ArgumentMode::Interval, ArgumentMode::Wildcard] {
                let cfg = ConstructionConfig::new(k, mode);
                let (s, report) = iterate(&c, &cfg).map_err(|e| e.to_string())?;
                let doc = GraphDocument::new(&s, &report);
                let text = emit(&s, &report, EmitFormat::Json);
                let back = GraphDocument::from_json(&text).map_err(|e| e.to_string())?;
                check(back == doc, || {
                    format!("{name} k={k} {mode}: JSON round trip changed the document")
                })?;
                check(back.to_graph().unwrap() == s, || {
                    format!("{name} k={k}: graph differs")
                })?;

                let (s_again, report_again) = iterate(&c, &cfg).map_err(|e| e.to_string())?;
                for format in [EmitFormat::Json, EmitFormat::Dot, EmitFormat::GraphMl] {
                    check(
                        emit(&s, &report, format) == emit(&s_again, &report_again, format),
                        || format!("{name} k={k} {mode}: {format:?} output not reproducible"),
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "example 1: S1 chain, S2 has O, N and six C-instantiations",
            criterion_1,
        ),
        (
            "expressiveness gap: 32 vs 23 vertices at k=3, equal before",
            criterion_2,
        ),
        (
            "examples 2 and 3: S1 sizes, interval counts, S2 sizes",
            criterion_3,
        ),
        (
            "intervals match the path quotient and reachable pairs (200 DAGs)",
            criterion_4,
        ),
        (
            "containment matches witness pairs and is a partial order (200 DAGs)",
            criterion_5,
        ),
        (
            "intervals invariant under transitive reduction and closure",
            criterion_6,
        ),
        (
            "self-similarity: S_i embeds in S_i+1 for all fixtures, k<=3",
            criterion_7,
        ),
        (
            "covariant transfer: C<a1> <: C<a2> in S3 iff a1 in a2 over S2",
            criterion_8,
        ),
        ("nested superclass instantiation is rejected", criterion_9),
        (
            "JSON round trip and byte-identical repeated builds",
            criterion_10,
        ),
    ];
    let mut failures = 0;
    for (n, (title, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let took = started.elapsed();
        match outcome {
            Ok(()) => println!("PASS criterion {:>2}: {title} ({took:.2?})", n + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {title}: {why}", n + 1);
            }
        }
    }
    println!("{} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
