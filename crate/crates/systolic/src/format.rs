//! Text formats.
//!
//! Fat graphs parse from either of two formats (one per file):
//!
//! * explicit: `node <name> <valence>`, `edge <name>.<slot> <name>.<slot>`,
//!   `circle <name>`;
//! * rotation lists: `rot <name>: <nbr> <nbr> ...`, where the k-th mention
//!   of `b` at `a` pairs with the k-th mention of `a` at `b` (self-mentions
//!   pair consecutively), plus `circle <name>`.
//!
//! `#` starts a comment; blank lines are ignored. Serialization always emits
//! the explicit format, and parsing it back reproduces the identical
//! structure.
//!
//! Metrics are lines `len <target> <p>/<q>` where the target is an edge as
//! `a.slot` or `a-b[#k]` (a bare `a-b` addresses every parallel edge of the
//! pair), or a circle name. Lengths must be strictly positive; `p/q` keeps
//! rationals exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::admissibility::MetricAssignment;
use crate::fatgraph::{FatGraph, FatGraphBuilder};
use crate::generators::PlainGraph;
use crate::{Error, Rational};

/// Reserved characters that would collide with the grammars above.
fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| !c.is_whitespace() && !matches!(c, '.' | '-' | '#' | ':'))
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        // `#` opens a comment at line start or after whitespace; elsewhere it
        // is the parallel-edge marker of names like `a-b#2`.
        let mut cut = raw.len();
        let bytes = raw.as_bytes();
        for (pos, &b) in bytes.iter().enumerate() {
            if b == b'#' && (pos == 0 || bytes[pos - 1].is_ascii_whitespace()) {
                cut = pos;
                break;
            }
        }
        let line = raw[..cut].trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Parse a rational written as `p/q` or a bare integer.
pub fn parse_ratio(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            let p: BigInt = text.parse().ok()?;
            Some(Rational::from_integer(p))
        }
    }
}

/// Lossless `p/q` rendering in lowest terms, denominator always present.
pub fn ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse a fat graph in either format.
pub fn parse_fatgraph(text: &str) -> Result<FatGraph, Error> {
    let mut has_rot = false;
    let mut has_explicit = false;
    for (line_no, line) in significant_lines(text) {
        let keyword = line.split_whitespace().next().unwrap_or("");
        match keyword {
            "rot" => has_rot = true,
            "node" | "edge" => has_explicit = true,
            "circle" => {}
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown directive {other:?}"),
                ))
            }
        }
    }
    if has_rot && has_explicit {
        return Err(Error::parse(
            0,
            "cannot mix rotation lines with node/edge lines in one file",
        ));
    }
    if has_rot {
        parse_rotation_format(text)
    } else {
        parse_explicit_format(text)
    }
}

fn parse_half_edge_ref(line_no: usize, token: &str) -> Result<(String, usize), Error> {
    let (name, slot) = token
        .rsplit_once('.')
        .ok_or_else(|| Error::parse(line_no, format!("expected <node>.<slot>, got {token:?}")))?;
    let slot: usize = slot
        .parse()
        .map_err(|_| Error::parse(line_no, format!("bad slot in {token:?}")))?;
    if !valid_name(name) {
        return Err(Error::parse(line_no, format!("invalid node name {name:?}")));
    }
    Ok((name.to_string(), slot))
}

fn parse_explicit_format(text: &str) -> Result<FatGraph, Error> {
    let mut builder = FatGraphBuilder::new();
    let mut declared: BTreeMap<String, (usize, usize)> = BTreeMap::new(); // name -> (valence, line)
    let mut used: BTreeMap<(String, usize), usize> = BTreeMap::new(); // slot -> line
    // Nodes and circles first so edges can reference them in any order.
    for (line_no, line) in significant_lines(text) {
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "node" => {
                let name = parts
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "node needs a name"))?;
                let valence: usize = parts
                    .next()
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| Error::parse(line_no, "node needs a numeric valence"))?;
                if !valid_name(name) {
                    return Err(Error::parse(line_no, format!("invalid node name {name:?}")));
                }
                if parts.next().is_some() {
                    return Err(Error::parse(line_no, "trailing tokens after node"));
                }
                builder
                    .add_node(name, valence)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                declared.insert(name.to_string(), (valence, line_no));
            }
            "circle" => {
                let name = parts
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "circle needs a name"))?;
                if !valid_name(name) {
                    return Err(Error::parse(
                        line_no,
                        format!("invalid circle name {name:?}"),
                    ));
                }
                builder
                    .add_circle(name)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
            }
            _ => {}
        }
    }
    for (line_no, line) in significant_lines(text) {
        let mut parts = line.split_whitespace();
        if parts.next() != Some("edge") {
            continue;
        }
        let a = parts
            .next()
            .ok_or_else(|| Error::parse(line_no, "edge needs two endpoints"))?;
        let b = parts
            .next()
            .ok_or_else(|| Error::parse(line_no, "edge needs two endpoints"))?;
        if parts.next().is_some() {
            return Err(Error::parse(line_no, "trailing tokens after edge"));
        }
        let (an, asl) = parse_half_edge_ref(line_no, a)?;
        let (bn, bsl) = parse_half_edge_ref(line_no, b)?;
        // A slot paired with itself (a representable fixed point) occupies
        // its slot once.
        let endpoints: Vec<(String, usize)> = if (an.as_str(), asl) == (bn.as_str(), bsl) {
            vec![(an.clone(), asl)]
        } else {
            vec![(an.clone(), asl), (bn.clone(), bsl)]
        };
        for (n, s) in endpoints {
            if !declared.contains_key(&n) {
                return Err(Error::parse(line_no, format!("unknown node {n}")));
            }
            if let Some(prev) = used.insert((n.clone(), s), line_no) {
                return Err(Error::parse(
                    line_no,
                    format!("slot {n}.{s} already paired at line {prev}"),
                ));
            }
        }
        builder
            .connect(&an, asl, &bn, bsl)
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
    }
    for (name, (valence, line)) in &declared {
        for s in 0..*valence {
            if !used.contains_key(&(name.clone(), s)) {
                return Err(Error::DanglingSlot {
                    line: *line,
                    node: name.clone(),
                    slot: s,
                });
            }
        }
    }
    Ok(builder.build())
}

fn parse_rotation_format(text: &str) -> Result<FatGraph, Error> {
    let mut order: Vec<String> = Vec::new();
    let mut rotations: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut circles: Vec<String> = Vec::new();
    for (line_no, line) in significant_lines(text) {
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "circle" => {
                let name = parts
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "circle needs a name"))?;
                circles.push(name.to_string());
            }
            "rot" => {
                let rest = line["rot".len()..].trim();
                let (name, nbrs) = rest.split_once(':').ok_or_else(|| {
                    Error::parse(line_no, "rotation line needs `rot <name>: <nbrs>`")
                })?;
                let name = name.trim();
                if !valid_name(name) {
                    return Err(Error::parse(line_no, format!("invalid node name {name:?}")));
                }
                if rotations.contains_key(name) {
                    return Err(Error::parse(line_no, format!("duplicate rotation for {name}")));
                }
                let nbrs: Vec<String> =
                    nbrs.split_whitespace().map(|s| s.to_string()).collect();
                if nbrs.is_empty() {
                    return Err(Error::parse(line_no, "empty rotation"));
                }
                for nbr in &nbrs {
                    if !valid_name(nbr) {
                        return Err(Error::parse(
                            line_no,
                            format!("invalid node name {nbr:?}"),
                        ));
                    }
                }
                order.push(name.to_string());
                rotations.insert(name.to_string(), nbrs);
            }
            _ => unreachable!("screened by parse_fatgraph"),
        }
    }
    // Occurrence-order pairing.
    let mut builder = FatGraphBuilder::new();
    for name in &order {
        builder
            .add_node(name, rotations[name].len())
            .map_err(|e| Error::parse(0, e.to_string()))?;
    }
    for name in &order {
        for nbr in &rotations[name] {
            if !rotations.contains_key(nbr) {
                return Err(Error::MismatchedOccurrenceCounts {
                    a: name.clone(),
                    b: nbr.clone(),
                    count_ab: rotations[name].iter().filter(|x| *x == nbr).count(),
                    count_ba: 0,
                });
            }
        }
    }
    for a in &order {
        let slots_of = |from: &str, to: &str| -> Vec<usize> {
            rotations[from]
                .iter()
                .enumerate()
                .filter(|(_, n)| n.as_str() == to)
                .map(|(i, _)| i)
                .collect()
        };
        for b in &order {
            if b < a {
                continue;
            }
            if a == b {
                // Self-mentions pair consecutively.
                let slots = slots_of(a, a);
                if slots.len() % 2 != 0 {
                    return Err(Error::MismatchedOccurrenceCounts {
                        a: a.clone(),
                        b: a.clone(),
                        count_ab: slots.len(),
                        count_ba: slots.len(),
                    });
                }
                for pair in slots.chunks(2) {
                    builder
                        .connect(a, pair[0], a, pair[1])
                        .map_err(|e| Error::parse(0, e.to_string()))?;
                }
                continue;
            }
            let ab = slots_of(a, b);
            let ba = slots_of(b, a);
            if ab.len() != ba.len() {
                return Err(Error::MismatchedOccurrenceCounts {
                    a: a.clone(),
                    b: b.clone(),
                    count_ab: ab.len(),
                    count_ba: ba.len(),
                });
            }
            for (sa, sb) in ab.into_iter().zip(ba) {
                builder
                    .connect(a, sa, b, sb)
                    .map_err(|e| Error::parse(0, e.to_string()))?;
            }
        }
    }
    for name in circles {
        builder
            .add_circle(&name)
            .map_err(|e| Error::parse(0, e.to_string()))?;
    }
    Ok(builder.build())
}

/// Serialize to the explicit format. Edge lines appear in edge-id order
/// with the smaller half-edge first, so output is canonical.
pub fn serialize_fatgraph(graph: &FatGraph) -> String {
    let mut out = String::new();
    for n in graph.node_ids() {
        out.push_str(&format!(
            "node {} {}\n",
            graph.node_name(n),
            graph.valence(n)
        ));
    }
    for e in graph.edge_ids() {
        let (a, b) = graph.edge_half_edges(e);
        out.push_str(&format!(
            "edge {} {}\n",
            graph.half_edge_name(a),
            graph.half_edge_name(b)
        ));
    }
    for c in graph.circle_ids() {
        out.push_str(&format!("circle {}\n", graph.circle_name(c)));
    }
    out
}

/// Parse a metric file: `len <target> <p>/<q>` lines.
pub fn parse_metric(text: &str) -> Result<MetricAssignment, Error> {
    let mut metric = MetricAssignment::new();
    for (line_no, line) in significant_lines(text) {
        let mut parts = line.split_whitespace();
        if parts.next() != Some("len") {
            return Err(Error::parse(line_no, "metric lines start with `len`"));
        }
        let target = parts
            .next()
            .ok_or_else(|| Error::parse(line_no, "len needs a target"))?;
        let value = parts
            .next()
            .ok_or_else(|| Error::parse(line_no, "len needs a value"))?;
        if parts.next().is_some() {
            return Err(Error::parse(line_no, "trailing tokens after len"));
        }
        let value = parse_ratio(value)
            .ok_or_else(|| Error::parse(line_no, format!("bad rational {value:?}")))?;
        if !value.is_positive() {
            return Err(Error::NonPositiveLength(target.to_string()));
        }
        if metric.get(target).is_some() {
            return Err(Error::parse(
                line_no,
                format!("duplicate length for {target}"),
            ));
        }
        metric.set(target, value)?;
    }
    Ok(metric)
}

/// Render a metric as a reparsable file.
pub fn serialize_metric(metric: &MetricAssignment) -> String {
    let mut out = String::new();
    for (name, value) in metric.entries() {
        out.push_str(&format!("len {} {}\n", name, ratio_string(value)));
    }
    out
}

/// Parse a plain graph: `edge a b` lines with vertices created on first
/// mention, plus optional `node a` lines for isolated vertices.
pub fn parse_plain_graph(text: &str) -> Result<PlainGraph, Error> {
    let mut g = PlainGraph::new();
    for (line_no, line) in significant_lines(text) {
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "node" => {
                let name = parts
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "node needs a name"))?;
                g.add_vertex(name);
            }
            "edge" => {
                let a = parts
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "edge needs two endpoints"))?;
                let b = parts
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "edge needs two endpoints"))?;
                let a = g.add_vertex(a);
                let b = g.add_vertex(b);
                g.add_edge(a, b);
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown directive {other:?}"),
                ))
            }
        }
        if parts.next().is_some() {
            return Err(Error::parse(line_no, "trailing tokens"));
        }
    }
    Ok(g)
}

/// Render a plain graph as `edge` lines (plus `node` lines for isolated
/// vertices).
pub fn serialize_plain_graph(graph: &PlainGraph) -> String {
    let mut out = String::new();
    let mut isolated: Vec<usize> = (0..graph.vertex_count()).collect();
    for &(a, b) in graph.edges() {
        isolated.retain(|&v| v != a && v != b);
    }
    for v in isolated {
        out.push_str(&format!("node {}\n", graph.vertex_name(v)));
    }
    for &(a, b) in graph.edges() {
        out.push_str(&format!(
            "edge {} {}\n",
            graph.vertex_name(a),
            graph.vertex_name(b)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn ratio_round_trip() {
        for s in ["1/2", "3/8", "-5/7", "4", "0"] {
            let r = parse_ratio(s).unwrap();
            let printed = ratio_string(&r);
            assert_eq!(parse_ratio(&printed).unwrap(), r);
        }
        assert!(parse_ratio("1/0").is_none());
        assert!(parse_ratio("x").is_none());
        // Lowest terms.
        assert_eq!(ratio_string(&parse_ratio("2/4").unwrap()), "1/2");
    }

    #[test]
    fn explicit_round_trip() {
        for n in 3..=5 {
            let g = generators::wheel_family(n).unwrap();
            let text = serialize_fatgraph(&g);
            let parsed = parse_fatgraph(&text).unwrap();
            assert_eq!(parsed, g);
        }
    }

    #[test]
    fn single_circle_file() {
        let g = parse_fatgraph("circle a\n").unwrap();
        assert_eq!(g.circle_count(), 1);
        assert_eq!(g.node_count(), 0);
    }

    #[test]
    fn rotation_format_matches_generator() {
        let text = "\
rot v1: v2 v4 v3 v8
rot v2: v1 v4 v3 v6
rot v3: v1 v7 v2 v6
rot v4: v1 v2 v8 v5
rot v5: v4 v8 v6 v7
rot v6: v2 v3 v5 v7
rot v7: v3 v5 v6 v8
rot v8: v1 v7 v4 v5
";
        let parsed = parse_fatgraph(text).unwrap();
        let built = generators::example_g8();
        assert_eq!(serialize_fatgraph(&parsed), serialize_fatgraph(&built));
        assert_eq!(parsed, built);
    }

    #[test]
    fn occurrence_mismatch_is_reported() {
        let text = "\
rot a: b b c c
rot b: a c c a
rot c: a a b
";
        // c has valence 3 and mentions b once while b mentions c twice.
        assert!(matches!(
            parse_fatgraph(text),
            Err(Error::MismatchedOccurrenceCounts { .. })
        ));
    }

    #[test]
    fn dangling_slot_is_reported() {
        let text = "\
node a 4
node b 4
edge a.0 b.0
edge a.1 b.1
edge a.2 b.2
";
        assert!(matches!(
            parse_fatgraph(text),
            Err(Error::DanglingSlot { .. })
        ));
    }

    #[test]
    fn duplicate_slot_is_reported() {
        let text = "\
node a 4
node b 4
edge a.0 b.0
edge a.0 b.1
edge a.2 b.2
edge a.3 b.3
edge a.1 b.0
";
        assert!(matches!(parse_fatgraph(text), Err(Error::Parse { .. })));
    }

    #[test]
    fn metric_parsing() {
        let m = parse_metric("len a-b 1/2\nlen a-b#2 3/8\nlen c.0 1\n").unwrap();
        assert_eq!(m.get("a-b"), Some(&crate::ratio(1, 2)));
        assert_eq!(m.get("a-b#2"), Some(&crate::ratio(3, 8)));
        assert_eq!(m.get("c.0"), Some(&crate::ratio(1, 1)));
        assert!(matches!(
            parse_metric("len a-b 0/1\n"),
            Err(Error::NonPositiveLength(_))
        ));
        assert!(matches!(
            parse_metric("len a-b 1/2\nlen a-b 1/3\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn plain_graph_round_trip() {
        let g = generators::trivalent_girth(4).unwrap();
        let text = serialize_plain_graph(&g);
        let parsed = parse_plain_graph(&text).unwrap();
        assert_eq!(parsed.vertex_count(), g.vertex_count());
        assert_eq!(parsed.edge_count(), g.edge_count());
        assert_eq!(generators::girth(&parsed), generators::girth(&g));
    }
}
