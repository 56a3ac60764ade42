//! Exhaustive simple-cycle enumeration on fat graphs.
//!
//! Cycles are enumerated by a backtracking search anchored at their least
//! edge: for each edge `e = (u, v)` in increasing id order, every simple
//! path from `v` back to `u` through edges with larger ids closes exactly
//! one cycle whose minimum edge is `e`, so each cycle (up to reversal) is
//! produced once. Loops are length-one cycles; parallel edges form bigons.
//! A cycle is standard when the two half-edges it uses at every visited
//! node are opposite in the rotation; this is a function of the edge set
//! alone, since each visited node contributes exactly two incident
//! half-edges.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use crate::exec;
use crate::fatgraph::{CircleId, EdgeId, FatGraph, NodeId};
use crate::Error;

/// Default enumeration cap; instances past this are beyond desk scale.
pub const DEFAULT_CYCLE_CAP: usize = 100_000;

/// Standard / non-standard classification of a simple cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleClass {
    Standard,
    NonStandard,
}

/// A simple cycle of the graph, identified by its sorted edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleCycle {
    /// Sorted edge ids; the canonical identity of the cycle.
    pub key: Vec<EdgeId>,
    /// Node visit order along one traversal (empty for circles).
    pub nodes: Vec<NodeId>,
    pub classification: CycleClass,
    /// Present when the cycle is a bare circle component.
    pub circle: Option<CircleId>,
}

impl SimpleCycle {
    pub fn is_circle(&self) -> bool {
        self.circle.is_some()
    }

    pub fn edge_count(&self) -> usize {
        self.key.len()
    }
}

/// Enumerate every simple cycle of a valid fat graph exactly once
/// (a cycle and its reversal are the same cycle), in canonical order:
/// edge cycles sorted by key, then circles. Fails with
/// [`Error::CycleCapExceeded`] when more than `cap` cycles exist.
pub fn enumerate_simple_cycles(graph: &FatGraph, cap: usize) -> Result<Vec<SimpleCycle>, Error> {
    graph.require_valid()?;
    let edge_count = graph.edge_count();
    let endpoints: Vec<(usize, usize)> = (0..edge_count)
        .map(|e| {
            let (a, b) = graph.edge_nodes(EdgeId(e));
            (a.0, b.0)
        })
        .collect();
    // Adjacency: per node, (edge id, neighbour) — loops appear once here
    // and are handled separately as length-one cycles.
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); graph.node_count()];
    for (e, &(a, b)) in endpoints.iter().enumerate() {
        if a != b {
            adjacency[a].push((e, b));
            adjacency[b].push((e, a));
        }
    }

    let found = AtomicUsize::new(graph.circle_count());
    let exceeded = AtomicBool::new(graph.circle_count() > cap);

    let per_anchor: Vec<Vec<(Vec<usize>, Vec<usize>)>> = exec::map_range(edge_count, |anchor| {
        let mut out = Vec::new();
        if exceeded.load(Ordering::Relaxed) {
            return out;
        }
        let (u, v) = endpoints[anchor];
        let mut record = |cycle: (Vec<usize>, Vec<usize>)| {
            let prev = found.fetch_add(1, Ordering::Relaxed);
            if prev >= cap {
                exceeded.store(true, Ordering::Relaxed);
            }
            out.push(cycle);
        };
        if u == v {
            record((vec![anchor], vec![u]));
            return out;
        }
        // DFS over simple paths v -> u using edges > anchor.
        let mut used_node = vec![false; adjacency.len()];
        used_node[v] = true;
        let mut path_edges = vec![anchor];
        let mut path_nodes = vec![u, v];
        // Stack of iterators by index into adjacency lists.
        let mut frames: Vec<(usize, usize)> = vec![(v, 0)];
        while let Some((node, idx)) = frames.pop() {
            if exceeded.load(Ordering::Relaxed) {
                break;
            }
            if idx >= adjacency[node].len() {
                // Exhausted: backtrack.
                if frames.is_empty() {
                    break;
                }
                used_node[node] = false;
                path_edges.pop();
                path_nodes.pop();
                continue;
            }
            frames.push((node, idx + 1));
            let (e, next) = adjacency[node][idx];
            if e <= anchor || (next != u && used_node[next]) {
                continue;
            }
            if next == u {
                let mut edges = path_edges.clone();
                edges.push(e);
                record((edges, path_nodes.clone()));
                continue;
            }
            used_node[next] = true;
            path_edges.push(e);
            path_nodes.push(next);
            frames.push((next, 0));
        }
        out
    });

    if exceeded.load(Ordering::Relaxed) {
        return Err(Error::CycleCapExceeded(cap));
    }

    let mut cycles: Vec<SimpleCycle> = Vec::new();
    for anchor_cycles in per_anchor {
        for (edges, nodes) in anchor_cycles {
            let mut key: Vec<EdgeId> = edges.iter().map(|&e| EdgeId(e)).collect();
            key.sort_unstable();
            let classification = classify_edge_set(graph, &key);
            cycles.push(SimpleCycle {
                key,
                nodes: nodes.into_iter().map(NodeId).collect(),
                classification,
                circle: None,
            });
        }
    }
    cycles.sort_by(|a, b| a.key.cmp(&b.key));
    for c in graph.circle_ids() {
        cycles.push(SimpleCycle {
            key: Vec::new(),
            nodes: Vec::new(),
            classification: CycleClass::Standard,
            circle: Some(c),
        });
    }
    Ok(cycles)
}

/// Classify an edge set that is already known to be a simple cycle.
fn classify_edge_set(graph: &FatGraph, edge_set: &[EdgeId]) -> CycleClass {
    let half = |n: NodeId| graph.valence(n) / 2;
    // Collect the used half-edges per visited node.
    let mut per_node: std::collections::HashMap<NodeId, Vec<usize>> =
        std::collections::HashMap::new();
    for &e in edge_set {
        let (a, b) = graph.edge_half_edges(e);
        for h in [a, b] {
            let (n, s) = graph.half_edge(h);
            per_node.entry(n).or_default().push(s);
        }
    }
    for (n, slots) in per_node {
        debug_assert_eq!(slots.len(), 2, "cycle support must be 2-regular");
        let diff = (slots[0] + graph.valence(n) - slots[1]) % graph.valence(n);
        if diff != half(n) {
            return CycleClass::NonStandard;
        }
    }
    CycleClass::Standard
}

/// Classify an arbitrary edge set, first checking that it really is a simple
/// cycle (connected support, every incident node of degree exactly two).
pub fn classify_cycle(graph: &FatGraph, edge_set: &[EdgeId]) -> Result<CycleClass, Error> {
    graph.require_valid()?;
    if edge_set.is_empty() {
        return Err(Error::NotACycle("empty edge set".into()));
    }
    let mut set: Vec<EdgeId> = edge_set.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != edge_set.len() {
        return Err(Error::NotACycle("repeated edge".into()));
    }
    let mut degree: std::collections::HashMap<NodeId, usize> = std::collections::HashMap::new();
    for &e in &set {
        let (a, b) = graph.edge_nodes(e);
        *degree.entry(a).or_insert(0) += 1;
        *degree.entry(b).or_insert(0) += 1;
    }
    if degree.values().any(|&d| d != 2) {
        return Err(Error::NotACycle(
            "support is not 2-regular on its nodes".into(),
        ));
    }
    // Connectivity over the support.
    let nodes: Vec<NodeId> = degree.keys().copied().collect();
    let index_of = |n: NodeId| nodes.iter().position(|&x| x == n).unwrap();
    let mut seen = vec![false; nodes.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &e in &set {
            let (a, b) = graph.edge_nodes(e);
            for (x, y) in [(a, b), (b, a)] {
                if x == nodes[i] {
                    let j = index_of(y);
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::NotACycle("support is disconnected".into()));
    }
    Ok(classify_edge_set(graph, &set))
}
