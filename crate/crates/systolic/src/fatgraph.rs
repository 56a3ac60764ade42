//! Half-edge combinatorial maps with per-node rotations.
//!
//! A [`FatGraph`] stores nodes, half-edges (each owning a slot in its node's
//! rotation), a fixed-point-free pairing involution, and bare circle
//! components. Validation is separate from construction: a builder accepts
//! arbitrary candidate structures and [`FatGraph::validate`] reports
//! violations as data, so that rejection paths are observable rather than
//! panics.
//!
//! The standard cycles are the orbits of the opposite-successor map: leave a
//! node through the half-edge opposite (valence/2 slots away from) the one
//! you arrived on. For a valid graph these orbits partition the edges.
//! Deleting a set of standard cycles removes their edges, drops emptied
//! nodes, and smooths valence-two nodes by concatenating their two surviving
//! edges, so that restricting a metric commutes with deletion.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::Error;

/// Index of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

/// Index of a half-edge in the flat half-edge table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdgeId(pub usize);

/// Index of an edge (a pairing orbit of two half-edges), ordered by the
/// smaller half-edge index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

/// Index of a bare circle component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircleId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
struct NodeRecord {
    name: String,
    valence: usize,
}

/// A decorated fat graph: nodes with rotations, paired half-edges, circles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatGraph {
    nodes: Vec<NodeRecord>,
    /// Half-edge table sorted by (node, slot); index is the `HalfEdgeId`.
    half_edges: Vec<(NodeId, usize)>,
    /// Involution on half-edge indices.
    pairing: Vec<usize>,
    circles: Vec<String>,
    /// Edge table: (smaller half-edge, partner), ordered by the first entry.
    edges: Vec<(usize, usize)>,
    edge_of_half_edge: Vec<usize>,
}

/// Incremental constructor. Accepts structurally complete but possibly
/// invalid graphs (odd valence, fixed points, duplicate slots); only
/// syntactic impossibilities are rejected here.
#[derive(Debug, Default)]
pub struct FatGraphBuilder {
    nodes: Vec<NodeRecord>,
    by_name: HashMap<String, usize>,
    connections: Vec<((usize, usize), (usize, usize))>,
    circles: Vec<String>,
}

impl FatGraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, name: &str, valence: usize) -> Result<NodeId, Error> {
        if self.by_name.contains_key(name) {
            return Err(Error::BadParameter(format!("duplicate node name {name}")));
        }
        let id = self.nodes.len();
        self.by_name.insert(name.to_string(), id);
        self.nodes.push(NodeRecord {
            name: name.to_string(),
            valence,
        });
        Ok(NodeId(id))
    }

    pub fn add_circle(&mut self, name: &str) -> Result<CircleId, Error> {
        if self.circles.iter().any(|c| c == name) {
            return Err(Error::BadParameter(format!("duplicate circle name {name}")));
        }
        self.circles.push(name.to_string());
        Ok(CircleId(self.circles.len() - 1))
    }

    fn resolve(&self, name: &str, slot: usize) -> Result<(usize, usize), Error> {
        let &id = self
            .by_name
            .get(name)
            .ok_or_else(|| Error::BadParameter(format!("unknown node {name}")))?;
        if slot >= self.nodes[id].valence {
            return Err(Error::BadParameter(format!(
                "slot {slot} out of range for node {name} of valence {}",
                self.nodes[id].valence
            )));
        }
        Ok((id, slot))
    }

    /// Pair half-edge `(a, sa)` with `(b, sb)`. Pairing a slot with itself is
    /// representable (it becomes a fixed point that validation reports).
    pub fn connect(&mut self, a: &str, sa: usize, b: &str, sb: usize) -> Result<(), Error> {
        let ea = self.resolve(a, sa)?;
        let eb = self.resolve(b, sb)?;
        self.connections.push((ea, eb));
        Ok(())
    }

    pub fn connect_ids(&mut self, a: NodeId, sa: usize, b: NodeId, sb: usize) {
        self.connections.push(((a.0, sa), (b.0, sb)));
    }

    pub fn build(self) -> FatGraph {
        // Half-edges are every (node, slot) mentioned by a connection, in
        // (node, slot) order; duplicates are kept so validation can see them.
        let mut endpoints: Vec<(usize, usize)> = Vec::with_capacity(self.connections.len() * 2);
        for &(ea, eb) in &self.connections {
            endpoints.push(ea);
            if eb != ea {
                endpoints.push(eb);
            }
        }
        endpoints.sort_unstable();
        let half_edges: Vec<(NodeId, usize)> = endpoints
            .iter()
            .map(|&(n, s)| (NodeId(n), s))
            .collect();
        // First unclaimed index for each (node, slot); duplicates consume
        // successive indices.
        let mut next_index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut claim = |key: (usize, usize)| -> usize {
            let offset = next_index.entry(key).or_insert(0);
            let idx = endpoints.partition_point(|&e| e < key) + *offset;
            *offset += 1;
            debug_assert_eq!(endpoints[idx], key);
            idx
        };
        let mut pairing = vec![usize::MAX; half_edges.len()];
        for &(ea, eb) in &self.connections {
            if ea == eb {
                let ia = claim(ea);
                pairing[ia] = ia;
            } else {
                let ia = claim(ea);
                let ib = claim(eb);
                pairing[ia] = ib;
                pairing[ib] = ia;
            }
        }
        debug_assert!(pairing.iter().all(|&p| p != usize::MAX));
        let mut edges = Vec::new();
        let mut edge_of_half_edge = vec![usize::MAX; half_edges.len()];
        for h in 0..half_edges.len() {
            if pairing[h] >= h {
                let e = edges.len();
                edges.push((h, pairing[h]));
                edge_of_half_edge[h] = e;
                edge_of_half_edge[pairing[h]] = e;
            }
        }
        FatGraph {
            nodes: self.nodes,
            half_edges,
            pairing,
            circles: self.circles,
            edges,
            edge_of_half_edge,
        }
    }
}

/// A single validation violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OddValence { node: String, valence: usize },
    ValenceTooSmall { node: String, valence: usize },
    ValenceMismatch { node: String, declared: usize, actual: usize },
    PairingFixedPoint { node: String, slot: usize },
    SlotDuplicate { node: String, slot: usize },
    SlotGap { node: String, slot: usize },
    NonSimpleStandardOrbit { nodes: Vec<String> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OddValence { node, valence } => {
                write!(f, "node {node} has odd valence {valence}")
            }
            Violation::ValenceTooSmall { node, valence } => {
                write!(f, "node {node} has valence {valence} < 4")
            }
            Violation::ValenceMismatch {
                node,
                declared,
                actual,
            } => write!(
                f,
                "node {node} declares valence {declared} but owns {actual} half-edges"
            ),
            Violation::PairingFixedPoint { node, slot } => {
                write!(f, "half-edge {node}.{slot} is paired with itself")
            }
            Violation::SlotDuplicate { node, slot } => {
                write!(f, "slot {node}.{slot} is used more than once")
            }
            Violation::SlotGap { node, slot } => {
                write!(f, "slot {node}.{slot} is never used")
            }
            Violation::NonSimpleStandardOrbit { nodes } => {
                write!(f, "standard orbit revisits a node: {}", nodes.join(" "))
            }
        }
    }
}

/// Outcome of [`FatGraph::validate`]; violations are data, not failures.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "VALID");
        }
        let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

/// One standard cycle: either an orbit of the opposite-successor map or a
/// bare circle component.
///
/// `edges[i]` runs from `nodes[i]` to `nodes[(i+1) % len]` in the canonical
/// direction; both vectors are empty for circles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardCycle {
    pub id: usize,
    pub edges: Vec<EdgeId>,
    pub nodes: Vec<NodeId>,
    pub circle: Option<CircleId>,
}

impl StandardCycle {
    pub fn is_circle(&self) -> bool {
        self.circle.is_some()
    }

    /// Number of length variables contributing to this cycle's length
    /// (one per edge, or one for a circle).
    pub fn var_count(&self) -> usize {
        if self.is_circle() {
            1
        } else {
            self.edges.len()
        }
    }
}

impl FatGraph {
    /// A graph consisting of a single circle component.
    pub fn single_circle(name: &str) -> FatGraph {
        let mut b = FatGraphBuilder::new();
        b.add_circle(name).expect("fresh builder");
        b.build()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn half_edge_count(&self) -> usize {
        self.half_edges.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn node_name(&self, n: NodeId) -> &str {
        &self.nodes[n.0].name
    }

    pub fn valence(&self, n: NodeId) -> usize {
        self.nodes[n.0].valence
    }

    pub fn circle_name(&self, c: CircleId) -> &str {
        &self.circles[c.0]
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn circle_ids(&self) -> impl Iterator<Item = CircleId> {
        (0..self.circles.len()).map(CircleId)
    }

    pub fn half_edge(&self, h: HalfEdgeId) -> (NodeId, usize) {
        self.half_edges[h.0]
    }

    pub fn pair(&self, h: HalfEdgeId) -> HalfEdgeId {
        HalfEdgeId(self.pairing[h.0])
    }

    pub fn edge_of(&self, h: HalfEdgeId) -> EdgeId {
        EdgeId(self.edge_of_half_edge[h.0])
    }

    pub fn edge_half_edges(&self, e: EdgeId) -> (HalfEdgeId, HalfEdgeId) {
        let (a, b) = self.edges[e.0];
        (HalfEdgeId(a), HalfEdgeId(b))
    }

    /// Endpoint nodes of an edge (equal for a loop).
    pub fn edge_nodes(&self, e: EdgeId) -> (NodeId, NodeId) {
        let (a, b) = self.edges[e.0];
        (self.half_edges[a].0, self.half_edges[b].0)
    }

    pub fn half_edge_name(&self, h: HalfEdgeId) -> String {
        let (n, s) = self.half_edges[h.0];
        format!("{}.{}", self.node_name(n), s)
    }

    /// Display name of an edge: `a-b` with the endpoint names sorted, plus
    /// `#k` (1-based, in edge-id order) when parallel edges share the pair.
    pub fn edge_name(&self, e: EdgeId) -> String {
        let (bare, k, multiplicity) = self.edge_name_parts(e);
        if multiplicity > 1 {
            format!("{bare}#{k}")
        } else {
            bare
        }
    }

    pub(crate) fn edge_name_parts(&self, e: EdgeId) -> (String, usize, usize) {
        let (a, b) = self.edge_nodes(e);
        let (x, y) = sorted_pair(self.node_name(a), self.node_name(b));
        let bare = format!("{x}-{y}");
        let mut k = 0;
        let mut multiplicity = 0;
        for other in self.edge_ids() {
            let (oa, ob) = self.edge_nodes(other);
            let (ox, oy) = sorted_pair(self.node_name(oa), self.node_name(ob));
            if ox == x && oy == y {
                multiplicity += 1;
                if other <= e {
                    k += 1;
                }
            }
        }
        (bare, k, multiplicity)
    }

    /// Half-edges owned by a node, indexed by slot. Requires a structurally
    /// clean graph (no slot gaps or duplicates).
    pub(crate) fn slot_table(&self) -> Vec<Vec<usize>> {
        let mut table: Vec<Vec<usize>> = self
            .nodes
            .iter()
            .map(|n| vec![usize::MAX; n.valence])
            .collect();
        for (h, &(n, s)) in self.half_edges.iter().enumerate() {
            table[n.0][s] = h;
        }
        table
    }

    /// Structural and orbit validation. Orbit simplicity is only checked
    /// once the structural phase is clean, since the successor map is not
    /// well defined otherwise.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut owned = vec![0usize; self.nodes.len()];
        let mut slot_seen: HashMap<(usize, usize), usize> = HashMap::new();
        for &(n, s) in &self.half_edges {
            owned[n.0] += 1;
            *slot_seen.entry((n.0, s)).or_insert(0) += 1;
        }
        for (i, rec) in self.nodes.iter().enumerate() {
            if rec.valence % 2 != 0 {
                violations.push(Violation::OddValence {
                    node: rec.name.clone(),
                    valence: rec.valence,
                });
            }
            if rec.valence < 4 {
                violations.push(Violation::ValenceTooSmall {
                    node: rec.name.clone(),
                    valence: rec.valence,
                });
            }
            if owned[i] != rec.valence {
                violations.push(Violation::ValenceMismatch {
                    node: rec.name.clone(),
                    declared: rec.valence,
                    actual: owned[i],
                });
            }
            for s in 0..rec.valence {
                match slot_seen.get(&(i, s)) {
                    None => violations.push(Violation::SlotGap {
                        node: rec.name.clone(),
                        slot: s,
                    }),
                    Some(&c) if c > 1 => violations.push(Violation::SlotDuplicate {
                        node: rec.name.clone(),
                        slot: s,
                    }),
                    _ => {}
                }
            }
        }
        for (h, &p) in self.pairing.iter().enumerate() {
            if p == h {
                let (n, s) = self.half_edges[h];
                violations.push(Violation::PairingFixedPoint {
                    node: self.node_name(n).to_string(),
                    slot: s,
                });
            }
        }
        if violations.is_empty() {
            for orbit in self.directed_standard_orbits() {
                let mut seen = BTreeSet::new();
                for &h in &orbit {
                    let (n, _) = self.half_edges[h];
                    if !seen.insert(n) {
                        violations.push(Violation::NonSimpleStandardOrbit {
                            nodes: orbit
                                .iter()
                                .map(|&h| self.node_name(self.half_edges[h].0).to_string())
                                .collect(),
                        });
                        break;
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub(crate) fn require_valid(&self) -> Result<(), Error> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(report))
        }
    }

    /// Successor of an outgoing half-edge: cross the edge, then exit through
    /// the opposite slot at the far node.
    fn next_half_edge(&self, slots: &[Vec<usize>], h: usize) -> usize {
        let p = self.pairing[h];
        let (n, s) = self.half_edges[p];
        let val = self.nodes[n.0].valence;
        slots[n.0][(s + val / 2) % val]
    }

    /// Directed orbits of the successor map, one per direction of each
    /// standard cycle. Requires a structurally clean graph.
    fn directed_standard_orbits(&self) -> Vec<Vec<usize>> {
        let slots = self.slot_table();
        let mut visited = vec![false; self.half_edges.len()];
        let mut orbits = Vec::new();
        for start in 0..self.half_edges.len() {
            if visited[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut h = start;
            loop {
                visited[h] = true;
                orbit.push(h);
                h = self.next_half_edge(&slots, h);
                if h == start {
                    break;
                }
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// The standard cycles of a valid graph in canonical order: edge cycles
    /// sorted by their canonical edge sequence, then circles.
    ///
    /// Each orbit and its reversal are reported once; the representative is
    /// the lexicographically least rotation over both directions.
    pub fn standard_cycles(&self) -> Result<Vec<StandardCycle>, Error> {
        self.require_valid()?;
        let slots = self.slot_table();
        let mut visited = vec![false; self.half_edges.len()];
        let mut raw = Vec::new();
        for start in 0..self.half_edges.len() {
            if visited[start] {
                continue;
            }
            let mut hs = Vec::new();
            let mut h = start;
            loop {
                visited[h] = true;
                hs.push(h);
                h = self.next_half_edge(&slots, h);
                if h == start {
                    break;
                }
            }
            // The reversed traversal is the orbit of the paired half-edges.
            for &x in &hs {
                visited[self.pairing[x]] = true;
            }
            let edges: Vec<EdgeId> = hs.iter().map(|&x| self.edge_of(HalfEdgeId(x))).collect();
            let nodes: Vec<NodeId> = hs.iter().map(|&x| self.half_edges[x].0).collect();
            raw.push(canonical_cycle(edges, nodes));
        }
        raw.sort();
        let mut out: Vec<StandardCycle> = raw
            .into_iter()
            .enumerate()
            .map(|(id, (edges, nodes))| StandardCycle {
                id,
                edges,
                nodes,
                circle: None,
            })
            .collect();
        for c in self.circle_ids() {
            let id = out.len();
            out.push(StandardCycle {
                id,
                edges: Vec::new(),
                nodes: Vec::new(),
                circle: Some(c),
            });
        }
        Ok(out)
    }

    /// Delete a proper subset of standard cycles (given by canonical id).
    ///
    /// Edges of the deleted cycles disappear; nodes left with no half-edges
    /// are dropped; nodes left with exactly two are smoothed, concatenating
    /// their surviving edges. A surviving cycle that loses every node becomes
    /// a fresh circle component.
    pub fn delete_standard_cycles(&self, subset: &BTreeSet<usize>) -> Result<FatGraph, Error> {
        let cycles = self.standard_cycles()?;
        for &id in subset {
            if id >= cycles.len() {
                return Err(Error::UnknownCycleId(id));
            }
        }
        if subset.len() >= cycles.len() {
            return Err(Error::DeletingEverything);
        }

        let mut deleted_edges = vec![false; self.edges.len()];
        let mut deleted_circles = vec![false; self.circles.len()];
        for &id in subset {
            let c = &cycles[id];
            match c.circle {
                Some(cid) => deleted_circles[cid.0] = true,
                None => {
                    for &e in &c.edges {
                        deleted_edges[e.0] = true;
                    }
                }
            }
        }

        let he_survives: Vec<bool> = (0..self.half_edges.len())
            .map(|h| !deleted_edges[self.edge_of_half_edge[h]])
            .collect();
        // Surviving half-edges per node, in slot order.
        let mut remaining: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        {
            let slots = self.slot_table();
            for (n, node_slots) in slots.iter().enumerate() {
                for &h in node_slots {
                    if he_survives[h] {
                        remaining[n].push(h);
                    }
                }
            }
        }

        let mut partner: HashMap<usize, usize> = HashMap::new();
        for (h, &alive) in he_survives.iter().enumerate() {
            if alive {
                partner.insert(h, self.pairing[h]);
            }
        }

        let mut new_circle_count = 0usize;
        let mut kept_nodes = Vec::new();
        for (n, rem) in remaining.iter().enumerate() {
            match rem.len() {
                0 => {}
                2 => {
                    let a = rem[0];
                    let b = rem[1];
                    let pa = partner[&a];
                    if pa == b {
                        // The last node of a surviving cycle: it closes into
                        // a bare circle.
                        new_circle_count += 1;
                    } else {
                        let pb = partner[&b];
                        partner.insert(pa, pb);
                        partner.insert(pb, pa);
                    }
                    partner.remove(&a);
                    partner.remove(&b);
                }
                _ => kept_nodes.push(n),
            }
        }

        let mut builder = FatGraphBuilder::new();
        let mut new_index: HashMap<usize, (String, usize)> = HashMap::new();
        for &n in &kept_nodes {
            let name = self.nodes[n].name.clone();
            builder.add_node(&name, remaining[n].len())?;
            for (new_slot, &h) in remaining[n].iter().enumerate() {
                new_index.insert(h, (name.clone(), new_slot));
            }
        }
        let mut done: BTreeSet<usize> = BTreeSet::new();
        for (&h, &p) in partner.iter() {
            if done.contains(&h) {
                continue;
            }
            done.insert(h);
            done.insert(p);
            let (ref an, aslot) = new_index[&h];
            let (ref bn, bslot) = new_index[&p];
            builder.connect(an, aslot, bn, bslot)?;
        }
        for (cid, name) in self.circles.iter().enumerate() {
            if !deleted_circles[cid] {
                builder.add_circle(name)?;
            }
        }
        let existing: BTreeSet<&str> = self
            .circles
            .iter()
            .enumerate()
            .filter(|(cid, _)| !deleted_circles[*cid])
            .map(|(_, n)| n.as_str())
            .collect();
        let mut next = 0usize;
        for _ in 0..new_circle_count {
            loop {
                let candidate = format!("c{next}");
                next += 1;
                if !existing.contains(candidate.as_str()) {
                    builder.add_circle(&candidate)?;
                    break;
                }
            }
        }
        let result = builder.build();
        debug_assert!(result.is_valid(), "deletion must produce a valid graph");
        Ok(result)
    }

    /// Connected components over nodes (half-edge adjacency). Circles are
    /// not included; they are their own components.
    pub fn node_components(&self) -> Vec<Vec<NodeId>> {
        let mut comp = vec![usize::MAX; self.nodes.len()];
        let mut components = Vec::new();
        for start in 0..self.nodes.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(n) = stack.pop() {
                members.push(NodeId(n));
                for (h, &(hn, _)) in self.half_edges.iter().enumerate() {
                    if hn.0 == n {
                        let (m, _) = self.half_edges[self.pairing[h]];
                        if comp[m.0] == usize::MAX {
                            comp[m.0] = id;
                            stack.push(m.0);
                        }
                    }
                }
            }
            members.sort();
            components.push(members);
        }
        components
    }

    /// Rebuild the same graph with two slots of one node exchanged.
    /// Used to perturb rotations when growing a test corpus.
    pub fn with_swapped_slots(&self, node: NodeId, s1: usize, s2: usize) -> FatGraph {
        let map = |n: NodeId, s: usize| -> usize {
            if n == node && s == s1 {
                s2
            } else if n == node && s == s2 {
                s1
            } else {
                s
            }
        };
        let mut builder = FatGraphBuilder::new();
        for rec in &self.nodes {
            builder
                .add_node(&rec.name, rec.valence)
                .expect("names already unique");
        }
        for &(a, b) in &self.edges {
            let (na, sa) = self.half_edges[a];
            let (nb, sb) = self.half_edges[b];
            builder.connect_ids(na, map(na, sa), nb, map(nb, sb));
        }
        for name in &self.circles {
            builder.add_circle(name).expect("names already unique");
        }
        builder.build()
    }

    /// Name-keyed lookup tables used when resolving metric files.
    pub(crate) fn edge_lookup(&self) -> EdgeLookup {
        let mut by_half_edge = BTreeMap::new();
        let mut by_pair: BTreeMap<String, Vec<EdgeId>> = BTreeMap::new();
        for e in self.edge_ids() {
            let (a, b) = self.edge_half_edges(e);
            by_half_edge.insert(self.half_edge_name(a), e);
            by_half_edge.insert(self.half_edge_name(b), e);
            let (bare, _, _) = self.edge_name_parts(e);
            by_pair.entry(bare).or_default().push(e);
        }
        let mut by_circle = BTreeMap::new();
        for c in self.circle_ids() {
            by_circle.insert(self.circle_name(c).to_string(), c);
        }
        EdgeLookup {
            by_half_edge,
            by_pair,
            by_circle,
        }
    }
}

pub(crate) struct EdgeLookup {
    pub by_half_edge: BTreeMap<String, EdgeId>,
    pub by_pair: BTreeMap<String, Vec<EdgeId>>,
    pub by_circle: BTreeMap<String, CircleId>,
}

fn sorted_pair<'a>(a: &'a str, b: &'a str) -> (&'a str, &'a str) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Lexicographically least rotation over both traversal directions.
fn canonical_cycle(edges: Vec<EdgeId>, nodes: Vec<NodeId>) -> (Vec<EdgeId>, Vec<NodeId>) {
    let k = edges.len();
    debug_assert_eq!(k, nodes.len());
    if k == 0 {
        return (edges, nodes);
    }
    let reversed_edges: Vec<EdgeId> = (0..k).map(|i| edges[(k - 1 - i + k) % k]).collect();
    let reversed_nodes: Vec<NodeId> = (0..k).map(|i| nodes[(k - i) % k]).collect();
    let mut best: Option<(Vec<EdgeId>, Vec<NodeId>)> = None;
    for (es, ns) in [(&edges, &nodes), (&reversed_edges, &reversed_nodes)] {
        for r in 0..k {
            let cand_e: Vec<EdgeId> = (0..k).map(|i| es[(r + i) % k]).collect();
            let cand_n: Vec<NodeId> = (0..k).map(|i| ns[(r + i) % k]).collect();
            let cand = (cand_e, cand_n);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("nonempty cycle")
}
