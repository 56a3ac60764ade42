//! Graph families and a girth oracle.
//!
//! Fat graph families: the wheel family (a hub cycle crossed by a ring of
//! triangles, minimal non-admissible for every size) and a fixed 8-node
//! example that is minimal non-admissible without belonging to the wheel
//! family. Plain graph families: 3-regular graphs of prescribed girth built
//! from a long base cycle with pendant vertices joined by stride chords, and
//! their uni-trivalent variants with a single degree-one vertex.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec;
use crate::fatgraph::{FatGraph, FatGraphBuilder, NodeId};
use crate::Error;

/// Undirected multigraph without rotation data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainGraph {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Default for PlainGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl PlainGraph {
    pub fn new() -> Self {
        PlainGraph {
            names: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, name: &str) -> usize {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return i;
        }
        self.names.push(name.to_string());
        self.names.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.edges.push((a.min(b), a.max(b)));
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

/// Shortest cycle length of a plain graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn as_option(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

/// Girth by per-root BFS. Loops give 1 and parallel edges give 2 directly;
/// the BFS sweep over simple edges is exact because the shortest cycle is
/// seen from each of its vertices.
pub fn girth(graph: &PlainGraph) -> Girth {
    if graph.edges.iter().any(|&(a, b)| a == b) {
        return Girth::Finite(1);
    }
    let mut sorted = graph.edges.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Girth::Finite(2);
    }
    let n = graph.vertex_count();
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(a, b)) in graph.edges.iter().enumerate() {
        adjacency[a].push((e, b));
        adjacency[b].push((e, a));
    }
    let best_from = |root: usize| -> Option<usize> {
        let mut dist = vec![usize::MAX; n];
        let mut tree_edge = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        let mut best: Option<usize> = None;
        while let Some(u) = queue.pop_front() {
            for &(e, v) in &adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    tree_edge[v] = e;
                    queue.push_back(v);
                } else if tree_edge[u] != e && tree_edge[v] != e {
                    let candidate = dist[u] + dist[v] + 1;
                    if best.is_none_or(|b| candidate < b) {
                        best = Some(candidate);
                    }
                }
            }
        }
        best
    };
    let candidates = exec::map_range(n, best_from);
    candidates
        .into_iter()
        .flatten()
        .min()
        .map_or(Girth::Infinite, Girth::Finite)
}

/// The wheel family: a hub cycle through nodes `p1..pn`, crossed by `n`
/// triangles that chain through ring nodes `w1..wn`. All 2n nodes are
/// 4-valent with the two strands alternating in the rotation.
pub fn wheel_family(n: usize) -> Result<FatGraph, Error> {
    if n < 3 {
        return Err(Error::BadParameter(format!(
            "wheel family needs n >= 3, got {n}"
        )));
    }
    let mut b = FatGraphBuilder::new();
    for i in 1..=n {
        b.add_node(&format!("p{i}"), 4)?;
    }
    for i in 1..=n {
        b.add_node(&format!("w{i}"), 4)?;
    }
    let succ = |i: usize| if i == n { 1 } else { i + 1 };
    let pred = |i: usize| if i == 1 { n } else { i - 1 };
    for i in 1..=n {
        // Hub strand at p_i uses slots 0 and 2; triangle strand 1 and 3.
        b.connect(&format!("p{i}"), 0, &format!("p{}", succ(i)), 2)?;
        // Triangle i strand at w_i uses slots 0 and 2; triangle i+1 uses 1, 3.
        b.connect(&format!("p{i}"), 1, &format!("w{i}"), 0)?;
        b.connect(&format!("p{i}"), 3, &format!("w{}", pred(i)), 1)?;
        b.connect(&format!("w{i}"), 2, &format!("w{}", pred(i)), 3)?;
    }
    Ok(b.build())
}

/// The fixed 8-node, 16-edge, 4-regular example with rotations
/// `v1:[v2 v4 v3 v8]`, `v2:[v1 v4 v3 v6]`, `v3:[v1 v7 v2 v6]`,
/// `v4:[v1 v2 v8 v5]`, `v5:[v4 v8 v6 v7]`, `v6:[v2 v3 v5 v7]`,
/// `v7:[v3 v5 v6 v8]`, `v8:[v1 v7 v4 v5]`.
pub fn example_g8() -> FatGraph {
    let mut b = FatGraphBuilder::new();
    for i in 1..=8 {
        b.add_node(&format!("v{i}"), 4).expect("fresh builder");
    }
    let edges: [(&str, usize, &str, usize); 16] = [
        ("v1", 0, "v2", 0),
        ("v1", 1, "v4", 0),
        ("v1", 2, "v3", 0),
        ("v1", 3, "v8", 0),
        ("v2", 1, "v4", 1),
        ("v2", 2, "v3", 2),
        ("v2", 3, "v6", 0),
        ("v3", 1, "v7", 0),
        ("v3", 3, "v6", 1),
        ("v4", 2, "v8", 2),
        ("v4", 3, "v5", 0),
        ("v5", 1, "v8", 3),
        ("v5", 2, "v6", 2),
        ("v5", 3, "v7", 1),
        ("v6", 3, "v7", 2),
        ("v7", 3, "v8", 1),
    ];
    for (a, sa, bb, sb) in edges {
        b.connect(a, sa, bb, sb).expect("slots are in range");
    }
    b.build()
}

/// 3-regular graph with `2(n0^2 - 3n0)` vertices and girth `n0`: a base
/// cycle `v1..vm` with one pendant `u_j` per base vertex, then for each
/// residue class modulo `n0 - 3` a chord cycle through the pendants with
/// stride `n0 - 3`.
pub fn trivalent_girth(n0: usize) -> Result<PlainGraph, Error> {
    if n0 < 4 {
        return Err(Error::BadParameter(format!(
            "girth construction needs n0 >= 4, got {n0}"
        )));
    }
    let m = n0 * n0 - 3 * n0;
    let stride = n0 - 3;
    let mut g = PlainGraph::new();
    let vs: Vec<usize> = (1..=m).map(|i| g.add_vertex(&format!("v{i}"))).collect();
    let us: Vec<usize> = (1..=m).map(|i| g.add_vertex(&format!("u{i}"))).collect();
    for i in 0..m {
        g.add_edge(vs[i], vs[(i + 1) % m]);
        g.add_edge(vs[i], us[i]);
    }
    for class in 0..stride {
        let mut j = class;
        for _ in 0..n0 {
            g.add_edge(us[j], us[(j + stride) % m]);
            j = (j + stride) % m;
        }
    }
    Ok(g)
}

/// Uni-trivalent variant: delete the least edge `(x, y)` of the trivalent
/// graph, then attach a fresh joint `w0` to `x`, `y`, and a fresh pendant
/// `w1`. `2(n0^2 - 3n0 + 1)` vertices, degree sequence (1, 3, 3, ...).
pub fn unitrivalent_girth(n0: usize) -> Result<PlainGraph, Error> {
    let mut g = trivalent_girth(n0)?;
    let least = g
        .edges
        .iter()
        .enumerate()
        .min_by_key(|(_, &(a, b))| (a, b))
        .map(|(i, _)| i)
        .expect("construction has edges");
    let (x, y) = g.edges.remove(least);
    let w0 = g.add_vertex("w0");
    let w1 = g.add_vertex("w1");
    g.add_edge(w0, x);
    g.add_edge(w0, y);
    g.add_edge(w0, w1);
    Ok(g)
}

/// Randomly exchange rotation slots at random nodes; used to grow a fuzzing
/// corpus around the fixed families. The result may be invalid or
/// non-admissible — callers filter.
pub fn random_slot_swaps(graph: &FatGraph, seed: u64, swaps: usize) -> FatGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = graph.clone();
    if g.node_count() == 0 {
        return g;
    }
    for _ in 0..swaps {
        let v = NodeId(rng.gen_range(0..g.node_count()));
        let val = g.valence(v);
        if val < 2 {
            continue;
        }
        let s1 = rng.gen_range(0..val);
        let s2 = rng.gen_range(0..val);
        if s1 != s2 {
            g = g.with_swapped_slots(v, s1, s2);
        }
    }
    g
}
