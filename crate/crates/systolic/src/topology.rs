//! Intersection ribbon graphs, face tracing, genus, and the vertex/face
//! obstruction.
//!
//! For a 4-regular fat graph exactly two standard cycles cross at every
//! node, so the intersection graph — one vertex per standard cycle, one edge
//! per crossing node — inherits a rotation system: at each vertex, the
//! incident edges in the order the crossing nodes are met along a traversal
//! of the cycle. Each cycle can be traversed in either direction, and the
//! obstruction wants the direction assignment (when one exists) under which
//! the ribbon embeds in the sphere. [`intersection_graph`] therefore runs a
//! bounded exact search over per-vertex reversals, preferring an assignment
//! of genus zero per component and falling back to the canonical directions.
//!
//! When the oriented ribbon is connected, genus zero, and has at least as
//! many faces as vertices, averaging the face-associated non-standard
//! cycles against the standard cycles forbids admissibility; the returned
//! certificate carries those face cycles, which partition the edges of the
//! source graph.

use crate::cycles::{classify_cycle, CycleClass};
use crate::fatgraph::{EdgeId, FatGraph, NodeId};
use crate::{Error, Rational};

/// Limit on free vertices per component in the orientation search (the
/// search is exhaustive over 2^free reversal patterns).
const ORIENTATION_SEARCH_LIMIT: usize = 20;

/// The intersection graph of a 4-regular fat graph, with rotations.
#[derive(Debug, Clone)]
pub struct RibbonGraph {
    /// Ribbon vertex `i` corresponds to standard cycle `i` (canonical order).
    pub vertex_count: usize,
    /// True for vertices that come from bare circle components.
    pub is_circle: Vec<bool>,
    /// Ribbon edges: the source node where the two cycles cross, plus the
    /// two incident (vertex, slot) ends.
    pub edges: Vec<RibbonEdge>,
    /// Per vertex: incident ribbon edge ids in crossing order along the
    /// chosen traversal direction.
    pub rotations: Vec<Vec<usize>>,
    /// Per vertex and rotation slot `j`: the source edge between crossing
    /// nodes `j` and `j+1` along the traversal.
    pub arc_edges: Vec<Vec<EdgeId>>,
    /// Which vertices were reversed relative to the canonical direction.
    pub reversed: Vec<bool>,
    /// Whether every component is embedded with genus zero.
    pub oriented: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonEdge {
    pub node: NodeId,
    pub ends: [(usize, usize); 2],
}

impl RibbonGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    /// The other end of the ribbon half-edge `(v, slot)`.
    fn twin(&self, v: usize, slot: usize) -> (usize, usize) {
        let e = self.rotations[v][slot];
        let [a, b] = self.edges[e].ends;
        if a == (v, slot) {
            b
        } else {
            a
        }
    }

    /// Connected components over ribbon vertices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut stack = vec![start];
            let mut members = vec![];
            while let Some(v) = stack.pop() {
                members.push(v);
                for slot in 0..self.degree(v) {
                    let (w, _) = self.twin(v, slot);
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Reverse the traversal direction of one vertex: the rotation reverses
    /// (keeping slot 0 fixed) and each arc moves to the corner that now
    /// precedes it.
    fn reverse_vertex(&mut self, v: usize) {
        let k = self.degree(v);
        self.reversed[v] = !self.reversed[v];
        if k == 0 {
            return;
        }
        let old_rot = self.rotations[v].clone();
        let old_arcs = self.arc_edges[v].clone();
        let mut new_slot_of_old = vec![0usize; k];
        for (new_slot, old) in (0..k).map(|i| (i, (k - i) % k)) {
            new_slot_of_old[old] = new_slot;
        }
        // Re-point every edge end at this vertex; read old state first.
        let mut updates = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            for (which, end) in edge.ends.iter().enumerate() {
                if end.0 == v {
                    updates.push((e, which, end.1));
                }
            }
        }
        for (e, which, old_slot) in updates {
            self.edges[e].ends[which] = (v, new_slot_of_old[old_slot]);
        }
        self.rotations[v] = (0..k).map(|i| old_rot[(k - i) % k]).collect();
        self.arc_edges[v] = (0..k).map(|i| old_arcs[(k - 1 - i) % k]).collect();
    }
}

/// One traced face: the ribbon half-edges it consumes, in walk order.
#[derive(Debug, Clone)]
pub struct FaceWalk {
    pub half_edges: Vec<(usize, usize)>,
}

/// Topology of one connected component of a ribbon graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentTopology {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
    pub genus: i64,
}

/// Face tracing result over the whole ribbon graph.
#[derive(Debug, Clone)]
pub struct FaceTrace {
    pub faces: Vec<FaceWalk>,
    pub components: Vec<ComponentTopology>,
    pub euler_characteristic: i64,
}

impl FaceTrace {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn genus_zero_everywhere(&self) -> bool {
        self.components.iter().all(|c| c.genus == 0)
    }
}

/// Walk the faces of the rotation-system embedding: from a half-edge, cross
/// to its twin and turn to the next slot in rotation. Isolated vertices
/// contribute one (empty) face each.
pub fn trace_faces(ribbon: &RibbonGraph) -> FaceTrace {
    let mut faces = Vec::new();
    let mut component_of_face = Vec::new();
    let components = ribbon.components();
    let comp_of_vertex = {
        let mut m = vec![usize::MAX; ribbon.vertex_count];
        for (i, c) in components.iter().enumerate() {
            for &v in c {
                m[v] = i;
            }
        }
        m
    };
    let mut visited: Vec<Vec<bool>> = ribbon
        .rotations
        .iter()
        .map(|r| vec![false; r.len()])
        .collect();
    for v in 0..ribbon.vertex_count {
        if ribbon.degree(v) == 0 {
            faces.push(FaceWalk {
                half_edges: Vec::new(),
            });
            component_of_face.push(comp_of_vertex[v]);
            continue;
        }
        for start_slot in 0..ribbon.degree(v) {
            if visited[v][start_slot] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut cv, mut cs) = (v, start_slot);
            loop {
                visited[cv][cs] = true;
                walk.push((cv, cs));
                let (w, t) = ribbon.twin(cv, cs);
                cv = w;
                cs = (t + 1) % ribbon.degree(w);
                if (cv, cs) == (v, start_slot) {
                    break;
                }
            }
            faces.push(FaceWalk { half_edges: walk });
            component_of_face.push(comp_of_vertex[v]);
        }
    }
    let mut comps = Vec::new();
    for (i, members) in components.iter().enumerate() {
        let vcount = members.len();
        let ecount: usize = members.iter().map(|&v| ribbon.degree(v)).sum::<usize>() / 2;
        let fcount = component_of_face.iter().filter(|&&c| c == i).count();
        let chi = vcount as i64 - ecount as i64 + fcount as i64;
        let genus = (2 - chi) / 2;
        debug_assert_eq!(chi % 2, 0, "rotation-system chi must be even");
        comps.push(ComponentTopology {
            vertices: vcount,
            edges: ecount,
            faces: fcount,
            chi,
            genus,
        });
    }
    let euler = comps.iter().map(|c| c.chi).sum();
    FaceTrace {
        faces,
        components: comps,
        euler_characteristic: euler,
    }
}

/// Build the intersection ribbon graph of a valid 4-regular fat graph.
///
/// Rotations come from walking each standard cycle; the traversal direction
/// per cycle is chosen by a bounded exhaustive search so every component is
/// embedded with genus zero whenever possible (`oriented` reports success),
/// falling back to the canonical direction otherwise.
pub fn intersection_graph(graph: &FatGraph) -> Result<RibbonGraph, Error> {
    graph.require_valid()?;
    for n in graph.node_ids() {
        if graph.valence(n) != 4 {
            return Err(Error::NotFourRegular(
                graph.node_name(n).to_string(),
                graph.valence(n),
            ));
        }
    }
    let cycles = graph.standard_cycles()?;
    let vertex_count = cycles.len();
    // Each source node is met by exactly two (cycle, position) incidences.
    let mut at_node: std::collections::BTreeMap<NodeId, Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    for (ci, cycle) in cycles.iter().enumerate() {
        for (pos, &n) in cycle.nodes.iter().enumerate() {
            at_node.entry(n).or_default().push((ci, pos));
        }
    }
    let mut edges = Vec::new();
    let mut rotations: Vec<Vec<usize>> = cycles.iter().map(|c| vec![usize::MAX; c.nodes.len()]).collect();
    for (&node, incidences) in &at_node {
        debug_assert_eq!(incidences.len(), 2, "4-regular: two strands per node");
        let e = edges.len();
        let [(c1, p1), (c2, p2)] = [incidences[0], incidences[1]];
        debug_assert_ne!(c1, c2, "orbit simplicity: distinct cycles cross");
        edges.push(RibbonEdge {
            node,
            ends: [(c1, p1), (c2, p2)],
        });
        rotations[c1][p1] = e;
        rotations[c2][p2] = e;
    }
    let arc_edges: Vec<Vec<EdgeId>> = cycles.iter().map(|c| c.edges.clone()).collect();
    let mut ribbon = RibbonGraph {
        vertex_count,
        is_circle: cycles.iter().map(|c| c.is_circle()).collect(),
        edges,
        rotations,
        arc_edges,
        reversed: vec![false; vertex_count],
        oriented: false,
    };
    orient_for_genus_zero(&mut ribbon);
    Ok(ribbon)
}

/// Exhaustive per-component search over traversal reversals; a global
/// reversal is a mirror image, so one vertex per component stays fixed.
fn orient_for_genus_zero(ribbon: &mut RibbonGraph) {
    // Reversals never change adjacency, so component structure (and its
    // order) is stable across the whole search.
    let components = ribbon.components();
    let mut all_oriented = true;
    for (comp_index, members) in components.iter().enumerate() {
        let with_edges: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&v| ribbon.degree(v) > 0)
            .collect();
        if with_edges.is_empty() {
            continue; // isolated vertex: genus 0 already
        }
        let free = &with_edges[1..];
        if free.len() > ORIENTATION_SEARCH_LIMIT {
            all_oriented = false;
            continue;
        }
        let genus_of =
            |r: &RibbonGraph| -> i64 { trace_faces(r).components[comp_index].genus };
        if genus_of(ribbon) == 0 {
            continue;
        }
        let mut found = false;
        for mask in 1u64..(1u64 << free.len()) {
            for (bit, &v) in free.iter().enumerate() {
                let want = (mask >> bit) & 1 == 1;
                if ribbon.reversed[v] != want {
                    ribbon.reverse_vertex(v);
                }
            }
            if genus_of(ribbon) == 0 {
                found = true;
                break;
            }
        }
        if !found {
            // Restore the canonical direction.
            for &v in free {
                if ribbon.reversed[v] {
                    ribbon.reverse_vertex(v);
                }
            }
            all_oriented = false;
        }
    }
    // A ribbon with no edges at all is trivially oriented.
    ribbon.oriented = all_oriented;
}

/// A closed walk in the source graph associated to one ribbon face.
#[derive(Debug, Clone)]
pub struct FaceCycle {
    pub face: usize,
    pub edges: Vec<EdgeId>,
    pub nodes: Vec<NodeId>,
    /// Whether the walk is a simple cycle.
    pub simple: bool,
    /// Classification when simple.
    pub classification: Option<CycleClass>,
}

/// Associate to each face of the intersection embedding the closed walk in
/// the source graph obtained by concatenating, for every corner, the arc of
/// the corner's standard cycle between its two crossing nodes. The walks of
/// distinct faces are edge-disjoint and jointly cover every edge once.
pub fn face_nonstandard_cycles(graph: &FatGraph) -> Result<Vec<FaceCycle>, Error> {
    let ribbon = intersection_graph(graph)?;
    let trace = trace_faces(&ribbon);
    Ok(face_cycles_from(graph, &ribbon, &trace))
}

fn face_cycles_from(graph: &FatGraph, ribbon: &RibbonGraph, trace: &FaceTrace) -> Vec<FaceCycle> {
    let mut out = Vec::new();
    for (face_idx, walk) in trace.faces.iter().enumerate() {
        if walk.half_edges.is_empty() {
            continue;
        }
        let mut edges = Vec::new();
        let mut nodes = Vec::new();
        for &(v, s) in &walk.half_edges {
            let (w, t) = ribbon.twin(v, s);
            edges.push(ribbon.arc_edges[w][t]);
            nodes.push(ribbon.edges[ribbon.rotations[w][t]].node);
        }
        let mut sorted = nodes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let simple = sorted.len() == nodes.len();
        let classification = if simple {
            classify_cycle(graph, &edges).ok()
        } else {
            None
        };
        out.push(FaceCycle {
            face: face_idx,
            edges,
            nodes,
            simple,
            classification,
        });
    }
    out
}

/// The averaging obstruction certificate.
#[derive(Debug, Clone)]
pub struct ObstructionCertificate {
    /// Ribbon vertex count (number of standard cycles).
    pub vertices: usize,
    /// Face count of the genus-zero embedding.
    pub faces: usize,
    /// `v / f`: with all standard cycles at length 1 the average
    /// face-cycle length; at most 1 exactly when `v <= f`.
    pub mu: Rational,
    pub face_cycles: Vec<FaceCycle>,
}

/// Try the vertex/face obstruction: if the intersection ribbon is connected,
/// embeds with genus zero, and has at least as many faces as vertices, then
/// no admissible metric exists and the certificate is returned. `None`
/// means inconclusive — the margin program remains the complete decision
/// procedure.
pub fn vf_obstruction(graph: &FatGraph) -> Result<Option<ObstructionCertificate>, Error> {
    let ribbon = intersection_graph(graph)?;
    if ribbon.edge_count() == 0 {
        return Ok(None);
    }
    if ribbon.components().len() != 1 {
        return Ok(None);
    }
    if !ribbon.oriented {
        return Ok(None);
    }
    let trace = trace_faces(&ribbon);
    if !trace.genus_zero_everywhere() {
        return Ok(None);
    }
    let v = ribbon.vertex_count;
    let f = trace.face_count();
    if v > f {
        return Ok(None);
    }
    let face_cycles = face_cycles_from(graph, &ribbon, &trace);
    debug_assert_eq!(
        face_cycles.iter().map(|c| c.edges.len()).sum::<usize>(),
        graph.edge_count(),
        "face cycles must cover every edge exactly once"
    );
    Ok(Some(ObstructionCertificate {
        vertices: v,
        faces: f,
        mu: Rational::new((v as i64).into(), (f as i64).into()),
        face_cycles,
    }))
}

/// Topology of the fat graph itself: boundary walks of the thickened
/// surface, Euler characteristic, and the genus of the filling surface
/// obtained by capping each boundary with a disc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGenus {
    pub nodes: usize,
    pub edges: usize,
    pub chi: i64,
    pub boundary_count: usize,
    pub genus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGenusReport {
    pub components: Vec<ComponentGenus>,
    pub chi: i64,
    pub boundary_count: usize,
    /// Sum of per-component filling genera.
    pub genus: i64,
}

/// Boundary walks are orbits of "cross the edge, take the next slot in the
/// rotation". Each bare circle thickens to an annulus (two boundaries).
pub fn ribbon_genus(graph: &FatGraph) -> Result<RibbonGenusReport, Error> {
    graph.require_valid()?;
    let slots = graph.slot_table();
    let mut components = Vec::new();
    for members in graph.node_components() {
        let nodes = members.len();
        let member_set: std::collections::BTreeSet<NodeId> = members.iter().copied().collect();
        // Half-edges of this component.
        let he_ids: Vec<usize> = (0..graph.half_edge_count())
            .filter(|&h| member_set.contains(&graph.half_edge(crate::fatgraph::HalfEdgeId(h)).0))
            .collect();
        let edges = he_ids.len() / 2;
        let mut visited: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
        let mut walks = 0usize;
        for &start in &he_ids {
            if visited.contains(&start) {
                continue;
            }
            walks += 1;
            let mut h = start;
            loop {
                visited.insert(h);
                let p = graph.pair(crate::fatgraph::HalfEdgeId(h));
                let (n, s) = graph.half_edge(p);
                let val = graph.valence(n);
                h = slots[n.0][(s + 1) % val];
                if h == start {
                    break;
                }
            }
        }
        let chi = nodes as i64 - edges as i64;
        let genus = (2 - chi - walks as i64) / 2;
        debug_assert_eq!((2 - chi - walks as i64) % 2, 0);
        components.push(ComponentGenus {
            nodes,
            edges,
            chi,
            boundary_count: walks,
            genus,
        });
    }
    for _ in graph.circle_ids() {
        components.push(ComponentGenus {
            nodes: 0,
            edges: 0,
            chi: 0,
            boundary_count: 2,
            genus: 0,
        });
    }
    let chi = components.iter().map(|c| c.chi).sum();
    let boundary_count = components.iter().map(|c| c.boundary_count).sum();
    let genus = components.iter().map(|c| c.genus).sum();
    Ok(RibbonGenusReport {
        components,
        chi,
        boundary_count,
        genus,
    })
}

/// Minimum-genus statement for realizing the graph as a systolic graph.
#[derive(Debug, Clone)]
pub struct MinGenusReport {
    pub chi: i64,
    pub boundary_count: usize,
    pub min_genus: i64,
    pub statement: String,
}

/// Instantiate the Euler-characteristic bound: a closed surface containing
/// the thickened graph as a filling subsurface satisfies
/// `chi(F) <= chi(graph) + boundary_count`, with equality exactly when every
/// complementary region is a disc; hence `genus(F) >= g` for the filling
/// genus `g` reported by [`ribbon_genus`].
pub fn min_genus_report(graph: &FatGraph) -> Result<MinGenusReport, Error> {
    let rg = ribbon_genus(graph)?;
    let statement = format!(
        "chi(graph) = {}; {} boundary walk(s); any closed surface whose systolic graph is \
         isomorphic to this graph has genus at least {}, with equality forcing every \
         complementary region to be a disc",
        rg.chi, rg.boundary_count, rg.genus
    );
    Ok(MinGenusReport {
        chi: rg.chi,
        boundary_count: rg.boundary_count,
        min_genus: rg.genus,
        statement,
    })
}
