//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS line with the numbers it checked. Run with
//! `cargo test -p systolic-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Signed;

use systolic::admissibility::{
    check_admissibility, verify_metric, AdmissibilityStatus, MetricAssignment,
};
use systolic::cycles::{enumerate_simple_cycles, DEFAULT_CYCLE_CAP};
use systolic::fatgraph::{EdgeId, FatGraph, FatGraphBuilder, StandardCycle};
use systolic::format::{parse_fatgraph, parse_metric, parse_ratio, serialize_fatgraph};
use systolic::generators::{
    example_g8, girth, random_slot_swaps, trivalent_girth, unitrivalent_girth, wheel_family,
    Girth,
};
use systolic::hyperbolic::{
    capping_gap, capping_girth, pants_height, pants_height_uniform, quasi_constant,
    twoseg_quasi_check,
};
use systolic::topology::{face_nonstandard_cycles, ribbon_genus, trace_faces, vf_obstruction};
use systolic::{ratio, Rational};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_systolic"))
}

fn hub_cycle_id(graph: &FatGraph) -> usize {
    graph
        .standard_cycles()
        .unwrap()
        .iter()
        .find(|c| !c.nodes.is_empty() && c.nodes.iter().all(|&x| graph.node_name(x).starts_with('p')))
        .expect("hub cycle")
        .id
}

fn first_triangle_id(graph: &FatGraph) -> usize {
    graph
        .standard_cycles()
        .unwrap()
        .iter()
        .find(|c| c.edges.len() == 3 && c.nodes.iter().any(|&x| graph.node_name(x).starts_with('w')))
        .expect("triangle cycle")
        .id
}

fn double_bigon() -> FatGraph {
    let mut b = FatGraphBuilder::new();
    b.add_node("a", 4).unwrap();
    b.add_node("b", 4).unwrap();
    b.connect("a", 0, "b", 0).unwrap();
    b.connect("a", 2, "b", 2).unwrap();
    b.connect("a", 1, "b", 3).unwrap();
    b.connect("a", 3, "b", 1).unwrap();
    b.build()
}

fn figure_eight() -> FatGraph {
    let mut b = FatGraphBuilder::new();
    b.add_node("a", 4).unwrap();
    b.connect("a", 0, "a", 2).unwrap();
    b.connect("a", 1, "a", 3).unwrap();
    b.build()
}

fn two_circles() -> FatGraph {
    let mut b = FatGraphBuilder::new();
    b.add_circle("a").unwrap();
    b.add_circle("b").unwrap();
    b.build()
}

const G_MINUS_C3: &str = "\
rot v1: v2 v4 v2 v5
rot v2: v1 v3 v1 v4
rot v3: v2 v5 v4 v5
rot v4: v1 v3 v5 v2
rot v5: v1 v3 v4 v3
";

const G_MINUS_C3_METRIC: &str = "\
len v1-v4 1/2
len v3-v4 1/2
len v4-v5 1/8
len v2-v4 1/8
len v1-v5 3/8
len v3-v5 1/2
len v1-v2 1/2
len v2-v3 3/8
";

const G_MINUS_C4: &str = "\
rot v1: v2 v5 v4 v5
rot v2: v1 v3 v4 v3
rot v3: v2 v5 v2 v4
rot v4: v1 v5 v2 v3
rot v5: v1 v4 v1 v3
";

const G_MINUS_C4_METRIC: &str = "\
len v1-v4 3/4
len v4-v5 3/8
len v2-v4 1/8
len v3-v4 1/2
len v1-v5 1/2
len v3-v5 1/8
len v1-v2 1/8
len v2-v3 1/2
";

/// The fixed evaluation corpus: the two families, their single-cycle
/// deletions, the renamed deletion presentations, and degenerate shapes.
fn corpus() -> Vec<(String, FatGraph)> {
    let mut graphs: Vec<(String, FatGraph)> = Vec::new();
    for n in 3..=6 {
        let g = wheel_family(n).unwrap();
        let hub = hub_cycle_id(&g);
        let tri = first_triangle_id(&g);
        graphs.push((
            format!("wheel-{n}-minus-hub"),
            g.delete_standard_cycles(&BTreeSet::from([hub])).unwrap(),
        ));
        graphs.push((
            format!("wheel-{n}-minus-triangle"),
            g.delete_standard_cycles(&BTreeSet::from([tri])).unwrap(),
        ));
        graphs.push((format!("wheel-{n}"), g));
    }
    let g8 = example_g8();
    for (i, cycle) in g8.standard_cycles().unwrap().iter().enumerate() {
        let rest = g8
            .delete_standard_cycles(&BTreeSet::from([cycle.id]))
            .unwrap();
        graphs.push((format!("g8-minus-{i}"), rest));
    }
    graphs.push(("g8".to_string(), g8));
    graphs.push(("g-minus-c3".to_string(), parse_fatgraph(G_MINUS_C3).unwrap()));
    graphs.push(("g-minus-c4".to_string(), parse_fatgraph(G_MINUS_C4).unwrap()));
    graphs.push(("double-bigon".to_string(), double_bigon()));
    graphs.push(("figure-eight".to_string(), figure_eight()));
    graphs.push(("circle".to_string(), FatGraph::single_circle("a")));
    graphs.push(("two-circles".to_string(), two_circles()));
    graphs
}

fn run_json(args: &[&str]) -> (serde_json::Value, Duration) {
    let start = Instant::now();
    let out = bin().args(args).output().expect("binary runs");
    let elapsed = start.elapsed();
    assert_eq!(
        out.status.code(),
        Some(0),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = serde_json::from_slice(&out.stdout).expect("valid report JSON");
    (doc, elapsed)
}

fn margin_of(doc: &serde_json::Value, path: &[&str]) -> Rational {
    let mut cur = doc;
    for p in path {
        cur = &cur[p];
    }
    parse_ratio(cur.as_str().expect("margin string")).expect("exact rational")
}

#[test]
fn criterion_1_family_verdicts() {
    let budget = Duration::from_secs(10);
    for n in 3..=8 {
        let g = wheel_family(n).unwrap();
        let dir = tempfile::tempdir().unwrap().keep();
        let path = dir.join(format!("wheel{n}.fg"));
        std::fs::write(&path, serialize_fatgraph(&g)).unwrap();
        let file = path.to_str().unwrap();

        let (doc, t_check) = run_json(&["check", file, "--json"]);
        assert_eq!(doc["result"]["status"], "not-admissible", "wheel {n}");
        let margin = margin_of(&doc, &["result", "margin"]);
        assert!(!margin.is_positive(), "wheel {n} margin must be <= 0 exactly");
        assert!(t_check < budget, "check on wheel {n} took {t_check:?}");

        let (doc, t_min) = run_json(&["minimal", file, "--json"]);
        assert_eq!(
            doc["result"]["classification"], "minimal-non-admissible",
            "wheel {n}"
        );
        for d in doc["result"]["deletions"].as_array().unwrap() {
            assert_eq!(d["status"], "admissible");
        }
        assert!(t_min < budget, "minimal on wheel {n} took {t_min:?}");
    }
    println!("[acceptance] criterion 1 (family verdicts, n = 3..8): PASS");
}

#[test]
fn criterion_2_obstruction_agreement() {
    for n in 3..=8 {
        let g = wheel_family(n).unwrap();
        let cert = vf_obstruction(&g).unwrap().expect("wheel certificate");
        assert_eq!(cert.vertices, n + 1);
        assert_eq!(cert.faces, n + 1);
    }
    let cert = vf_obstruction(&example_g8()).unwrap().expect("certificate");
    assert_eq!(cert.vertices, 5);
    assert_eq!(cert.faces, 5);

    let mut fired = 0;
    for (name, g) in corpus() {
        if let Some(_cert) = vf_obstruction(&g).unwrap() {
            fired += 1;
            let verdict = check_admissibility(&g, DEFAULT_CYCLE_CAP).unwrap();
            assert!(
                !verdict.margin.is_positive(),
                "{name}: certificate contradicts a positive margin"
            );
        }
    }
    assert!(fired >= 5, "the certificate must fire on the families");
    println!(
        "[acceptance] criterion 2 (obstruction agreement, {fired} certificates, 0 contradictions): PASS"
    );
}

#[test]
fn criterion_3_paper_witnesses_verify_exactly() {
    for n in 3..=8 {
        let g = wheel_family(n).unwrap();
        let hub = hub_cycle_id(&g);
        let rest = g.delete_standard_cycles(&BTreeSet::from([hub])).unwrap();
        let metric = MetricAssignment::uniform(&rest, ratio(1, 2)).unwrap();
        let report = verify_metric(&rest, &metric, DEFAULT_CYCLE_CAP).unwrap();
        assert!(report.pass, "uniform 1/2 on hub deletion of wheel {n}");
        assert_eq!(report.common_value, Some(ratio(1, 1)));
        assert!(
            report.min_non_standard_slack.clone().unwrap() >= ratio(1, 2),
            "non-standard sums must be at least 3/2"
        );
    }
    for (graph_text, metric_text) in [
        (G_MINUS_C3, G_MINUS_C3_METRIC),
        (G_MINUS_C4, G_MINUS_C4_METRIC),
    ] {
        let g = parse_fatgraph(graph_text).unwrap();
        let metric = parse_metric(metric_text).unwrap();
        let report = verify_metric(&g, &metric, DEFAULT_CYCLE_CAP).unwrap();
        assert!(report.pass, "printed solution must verify: {:?}", report.violations);
        assert_eq!(report.common_value, Some(ratio(1, 1)));
    }
    println!("[acceptance] criterion 3 (printed witnesses verify exactly): PASS");
}

/// The printed ring metric on a wheel with one triangle deleted: hub edges
/// get 1/(n-1), the two bigons get 1/2 per edge, interior-triangle spokes
/// get 1/2 + eps/2 - 1/(2(n-1)) and rings 1/n - eps, with eps = 1/(2n).
fn printed_ring_metric(rest: &FatGraph, n: i64) -> MetricAssignment {
    let cycles = rest.standard_cycles().unwrap();
    let eps = ratio(1, 2 * n);
    let hub_value = ratio(1, n - 1);
    let spoke_value = ratio(1, 2) + &eps / ratio(2, 1) - ratio(1, 2 * (n - 1));
    let ring_value = ratio(1, n) - &eps;
    let mut metric = MetricAssignment::new();
    let mut set_edge = |e: EdgeId, v: Rational| {
        let (h, _) = rest.edge_half_edges(e);
        metric.set(&rest.half_edge_name(h), v).unwrap();
    };
    let is_hub = |c: &StandardCycle| c.nodes.iter().all(|&x| rest.node_name(x).starts_with('p'));
    for cycle in &cycles {
        if is_hub(cycle) {
            for &e in &cycle.edges {
                set_edge(e, hub_value.clone());
            }
        } else if cycle.edges.len() == 2 {
            for &e in &cycle.edges {
                set_edge(e, ratio(1, 2));
            }
        } else {
            let hub_node = cycle
                .nodes
                .iter()
                .copied()
                .find(|&x| rest.node_name(x).starts_with('p'))
                .expect("interior triangle crosses the hub");
            for &e in &cycle.edges {
                let (a, b) = rest.edge_nodes(e);
                if a == hub_node || b == hub_node {
                    set_edge(e, spoke_value.clone());
                } else {
                    set_edge(e, ring_value.clone());
                }
            }
        }
    }
    metric
}

#[test]
fn criterion_4_documented_discrepancy() {
    for n in 4..=6 {
        let g = wheel_family(n as usize).unwrap();
        let tri = first_triangle_id(&g);
        let rest = g.delete_standard_cycles(&BTreeSet::from([tri])).unwrap();
        let metric = printed_ring_metric(&rest, n);
        let report = verify_metric(&rest, &metric, DEFAULT_CYCLE_CAP).unwrap();
        // The printed values make the interior triangles sum to
        // 1 - 1/(n(n-1)) while every other standard cycle sums to 1.
        assert!(!report.pass, "n = {n}: the printed metric must fail");
        assert!(report.common_value.is_none());
        let expected_triangle = ratio(n * (n - 1) - 1, n * (n - 1));
        let mut sums: Vec<Rational> =
            report.standard_sums.iter().map(|(_, s)| s.clone()).collect();
        sums.sort();
        sums.dedup();
        assert_eq!(
            sums,
            vec![expected_triangle.clone(), ratio(1, 1)],
            "n = {n}: standard sums must be exactly {{1 - 1/(n(n-1)), 1}}"
        );
        let triangles = report
            .standard_sums
            .iter()
            .filter(|(_, s)| *s == expected_triangle)
            .count();
        assert_eq!(triangles, n as usize - 3);

        // The graph itself is admissible; the solver finds a real witness.
        let verdict = check_admissibility(&rest, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(verdict.status, AdmissibilityStatus::Admissible);
        assert!(verdict.margin.is_positive());
    }
    println!("[acceptance] criterion 4 (documented ring-metric discrepancy, n = 4..6): PASS");
}

/// Independent oracle: every edge subset whose support is connected and
/// 2-regular at each incident node is a simple cycle, and nothing else is.
fn brute_force_cycle_keys(graph: &FatGraph) -> BTreeSet<Vec<EdgeId>> {
    let e = graph.edge_count();
    assert!(e <= 14, "oracle is exponential");
    let mut out = BTreeSet::new();
    for mask in 1u32..(1u32 << e) {
        let set: Vec<EdgeId> = (0..e)
            .filter(|i| mask >> i & 1 == 1)
            .map(EdgeId)
            .collect();
        let mut degree: std::collections::BTreeMap<_, usize> = Default::default();
        for &ed in &set {
            let (a, b) = graph.edge_nodes(ed);
            *degree.entry(a).or_default() += 1;
            *degree.entry(b).or_default() += 1;
        }
        if degree.values().any(|&d| d != 2) {
            continue;
        }
        let nodes: Vec<_> = degree.keys().copied().collect();
        let mut seen = BTreeSet::from([nodes[0]]);
        let mut stack = vec![nodes[0]];
        while let Some(u) = stack.pop() {
            for &ed in &set {
                let (a, b) = graph.edge_nodes(ed);
                for (x, y) in [(a, b), (b, a)] {
                    if x == u && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        if seen.len() == nodes.len() {
            out.insert(set);
        }
    }
    out
}

#[test]
fn criterion_5_cycle_oracle_equivalence() {
    let mut checked = 0;
    for (name, g) in corpus() {
        if g.edge_count() > 14 {
            continue;
        }
        let enumerated: BTreeSet<Vec<EdgeId>> = enumerate_simple_cycles(&g, DEFAULT_CYCLE_CAP)
            .unwrap()
            .into_iter()
            .filter(|c| !c.is_circle())
            .map(|c| c.key)
            .collect();
        let oracle = brute_force_cycle_keys(&g);
        assert_eq!(enumerated, oracle, "{name}: enumeration disagrees with the oracle");
        checked += 1;
    }
    assert!(checked >= 10, "the corpus must exercise the oracle");
    println!(
        "[acceptance] criterion 5 (cycle enumeration equals subset oracle on {checked} graphs): PASS"
    );
}

#[test]
fn criterion_6_girth_constructions() {
    let budget = Duration::from_secs(5);
    for n0 in 4..=8usize {
        let start = Instant::now();
        let g = trivalent_girth(n0).unwrap();
        assert_eq!(g.vertex_count(), 2 * (n0 * n0 - 3 * n0));
        assert!((0..g.vertex_count()).all(|v| g.degree(v) == 3));
        assert_eq!(girth(&g), Girth::Finite(n0));

        let u = unitrivalent_girth(n0).unwrap();
        assert_eq!(u.vertex_count(), 2 * (n0 * n0 - 3 * n0 + 1));
        let mut expected = vec![3usize; u.vertex_count() - 1];
        expected.insert(0, 1);
        assert_eq!(u.degree_sequence(), expected);
        assert_eq!(girth(&u), Girth::Finite(n0));
        let elapsed = start.elapsed();
        assert!(elapsed < budget, "girth {n0} took {elapsed:?}");
    }
    println!("[acceptance] criterion 6 (girth constructions, n0 = 4..8): PASS");
}

#[test]
fn criterion_7_hyperbolic_inequalities() {
    for i in 5..=100 {
        let l = i as f64 / 10.0;
        let m = pants_height(l, 2.0).unwrap();
        assert!(m - l > 1e-9, "height must exceed the waist at l = {l}");
        let mu = pants_height_uniform(l).unwrap();
        assert!(mu - l / 2.0 > 1e-9, "uniform height must exceed l/2 at l = {l}");
        let a = capping_gap(l).unwrap();
        assert!(a > 0.0);
        let t = capping_girth(l).unwrap() as f64;
        assert!(t * a > l, "t * a(l) must exceed l at l = {l}");
        assert!(
            l >= (t - 1.0) * a - 1e-12 * l.max(1.0),
            "(t-1) * a(l) must not exceed l at l = {l}"
        );
    }
    let k = quasi_constant(std::f64::consts::FRAC_PI_2).unwrap();
    assert!((k - 2.0).abs() <= 1e-12);
    let steep = std::f64::consts::FRAC_PI_2;
    let case1 = 1.0 / steep.sin() + 1.0 / steep.tan() + 1.0;
    let case2 = 1.0 / steep.sin() + 1.0;
    assert!((case1 - 2.0).abs() <= 1e-12 && (case2 - 2.0).abs() <= 1e-12);

    let mut worst: f64 = f64::INFINITY;
    for alpha in [
        std::f64::consts::PI / 6.0,
        std::f64::consts::PI / 3.0,
        std::f64::consts::FRAC_PI_2,
        2.0 * std::f64::consts::PI / 3.0,
    ] {
        let report = twoseg_quasi_check(4.0, 4.0, alpha, 10_000).unwrap();
        worst = worst.min(report.min_ratio());
    }
    assert!(
        worst >= 1.0 - 1e-9,
        "two-segment ratio dropped to {worst}"
    );
    println!(
        "[acceptance] criterion 7 (hyperbolic inequality suites; worst two-segment ratio {worst:.12}): PASS"
    );
}

#[test]
fn criterion_8_euler_bookkeeping() {
    let mut graphs_checked = 0;
    for (name, g) in corpus() {
        // Boundary-walk identity on the fat graph itself.
        let rg = ribbon_genus(&g).unwrap();
        for c in &rg.components {
            assert_eq!(
                c.chi + c.boundary_count as i64,
                2 - 2 * c.genus,
                "{name}: boundary-walk identity"
            );
        }
        // Face-trace identity on the intersection ribbon, and the face-cycle
        // partition (all corpus graphs are 4-regular, circles vacuously so).
        let ribbon = systolic::topology::intersection_graph(&g).unwrap();
        let trace = trace_faces(&ribbon);
        for c in &trace.components {
            assert_eq!(
                c.vertices as i64 - c.edges as i64 + c.faces as i64,
                2 - 2 * c.genus,
                "{name}: face-trace identity"
            );
        }
        let cycles = face_nonstandard_cycles(&g).unwrap();
        let covered: usize = cycles.iter().map(|c| c.edges.len()).sum();
        assert_eq!(covered, g.edge_count(), "{name}: face cycles must cover E");
        let mut seen = vec![0usize; g.edge_count()];
        for c in &cycles {
            for e in &c.edges {
                seen[e.0] += 1;
            }
        }
        assert!(
            seen.iter().all(|&c| c == 1),
            "{name}: face cycles must be edge-disjoint"
        );
        graphs_checked += 1;
    }
    println!(
        "[acceptance] criterion 8 (Euler bookkeeping exact on {graphs_checked} corpus graphs): PASS"
    );
}

#[test]
fn criterion_9_monotonicity_under_deletion() {
    // Admissible bases to perturb.
    let mut bases: Vec<FatGraph> = Vec::new();
    for n in 3..=5 {
        let g = wheel_family(n).unwrap();
        let hub = hub_cycle_id(&g);
        bases.push(g.delete_standard_cycles(&BTreeSet::from([hub])).unwrap());
        let tri = first_triangle_id(&g);
        bases.push(g.delete_standard_cycles(&BTreeSet::from([tri])).unwrap());
    }
    bases.push(parse_fatgraph(G_MINUS_C3).unwrap());
    bases.push(parse_fatgraph(G_MINUS_C4).unwrap());
    bases.push(double_bigon());

    let mut mutants: Vec<FatGraph> = Vec::new();
    let mut seed = 0u64;
    let mut attempts = 0;
    while mutants.len() < 50 {
        attempts += 1;
        assert!(attempts < 5000, "mutation search failed to converge");
        seed = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let base = &bases[attempts % bases.len()];
        let candidate = random_slot_swaps(base, seed, 1 + (attempts % 3));
        if !candidate.is_valid() {
            continue;
        }
        let cycles = match candidate.standard_cycles() {
            Ok(c) => c,
            Err(_) => continue,
        };
        if cycles.len() < 2 {
            continue;
        }
        match check_admissibility(&candidate, DEFAULT_CYCLE_CAP) {
            Ok(v) if v.is_admissible() => mutants.push(candidate),
            _ => continue,
        }
    }

    let mut deletions_checked = 0;
    for (i, m) in mutants.iter().enumerate() {
        for cycle in m.standard_cycles().unwrap() {
            let rest = m
                .delete_standard_cycles(&BTreeSet::from([cycle.id]))
                .unwrap();
            let verdict = check_admissibility(&rest, DEFAULT_CYCLE_CAP).unwrap();
            assert!(
                verdict.is_admissible(),
                "mutant {i}: deleting cycle {} broke admissibility",
                cycle.id
            );
            deletions_checked += 1;
        }
    }
    println!(
        "[acceptance] criterion 9 (monotonicity: 50 admissible mutants, {deletions_checked} deletions all admissible): PASS"
    );
}
