//! Ciliated ribbon graphs: rotation systems, faces by right-turn traversal,
//! regularity checking and the regularization pipeline.
//!
//! A graph stores, per vertex, the incident edge ends in *linear* order; the
//! cyclic order is the induced one and the cilium sits in the gap between the
//! last and the first end. Edge ends are encoded as `2*edge` (start end) and
//! `2*edge + 1` (target end).
//!
//! Faces follow the rule: arriving at a vertex along an end `x`, the traversal
//! leaves along the cyclic successor of `x`. Faces then lie to the right of
//! their boundary steps, and a vertex's cilium corner lies on exactly one face.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("graph is not regular: {0}")]
    NotRegular(String),
    #[error("regularization did not converge after {0} rounds")]
    NoConvergence(usize),
}

pub type VertexId = usize;
pub type EdgeId = usize;
/// An edge end: `2*edge` for the start end, `2*edge + 1` for the target end.
pub type EndId = usize;

pub fn start_end(e: EdgeId) -> EndId {
    2 * e
}

pub fn target_end(e: EdgeId) -> EndId {
    2 * e + 1
}

pub fn end_edge(x: EndId) -> EdgeId {
    x / 2
}

pub fn is_target_end(x: EndId) -> bool {
    x % 2 == 1
}

/// A directed traversal step: edge id plus direction (`true` = forward).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Step {
    pub fn new(edge: EdgeId, forward: bool) -> Self {
        Step { edge, forward }
    }

    pub fn reversed(self) -> Self {
        Step {
            edge: self.edge,
            forward: !self.forward,
        }
    }

    /// The end through which this step arrives at its target.
    pub fn arrival_end(self) -> EndId {
        if self.forward {
            target_end(self.edge)
        } else {
            start_end(self.edge)
        }
    }

    /// The end through which this step leaves its source.
    pub fn departure_end(self) -> EndId {
        if self.forward {
            start_end(self.edge)
        } else {
            target_end(self.edge)
        }
    }
}

impl fmt::Debug for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.edge, if self.forward { "+" } else { "-" })
    }
}

#[derive(Clone, Debug)]
pub struct Vertex {
    /// Incident edge ends in linear order; position 0 is directly after the
    /// cilium, the cilium gap is between the last position and position 0.
    pub halfedges: Vec<EndId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
}

#[derive(Clone, Debug)]
pub struct RibbonGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

/// A face as the cyclic sequence of its boundary steps, stored from an
/// arbitrary starting step in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub steps: Vec<Step>,
}

impl Face {
    /// Canonical rotation (lexicographically least) for equality of faces.
    pub fn canonical(&self) -> Vec<Step> {
        let n = self.steps.len();
        (0..n)
            .map(|r| {
                let mut w: Vec<Step> = Vec::with_capacity(n);
                w.extend_from_slice(&self.steps[r..]);
                w.extend_from_slice(&self.steps[..r]);
                w
            })
            .min()
            .unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub loops: Vec<EdgeId>,
    pub multiple_edges: Vec<(EdgeId, EdgeId)>,
    /// (face index, edge) pairs where a face traverses an edge more than once.
    pub doubly_traversed: Vec<(usize, EdgeId)>,
    /// Number of cilia on each face.
    pub cilium_counts: Vec<usize>,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.loops.is_empty()
            && self.multiple_edges.is_empty()
            && self.doubly_traversed.is_empty()
            && self.cilium_counts.iter().all(|&c| c == 1)
    }

    pub fn violation(&self) -> Option<String> {
        if let Some(e) = self.loops.first() {
            return Some(format!("condition 1: edge {e} is a loop"));
        }
        if let Some((a, b)) = self.multiple_edges.first() {
            return Some(format!("condition 1: edges {a} and {b} are multiple edges"));
        }
        if let Some((f, e)) = self.doubly_traversed.first() {
            return Some(format!(
                "condition 2: face {f} traverses edge {e} more than once"
            ));
        }
        if let Some((f, c)) = self.cilium_counts.iter().enumerate().find(|(_, &c)| c != 1) {
            return Some(format!("condition 3: face {f} contains {c} cilia"));
        }
        None
    }
}

impl RibbonGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let g = RibbonGraph { vertices, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let mut seen = vec![false; 2 * self.edges.len()];
        for (v, vert) in self.vertices.iter().enumerate() {
            for &x in &vert.halfedges {
                if x >= 2 * self.edges.len() {
                    return Err(GraphError::Invalid(format!(
                        "end {x} out of range at vertex {v}"
                    )));
                }
                if seen[x] {
                    return Err(GraphError::Invalid(format!("end {x} appears twice")));
                }
                seen[x] = true;
                let e = end_edge(x);
                let expect = if is_target_end(x) {
                    self.edges[e].to
                } else {
                    self.edges[e].from
                };
                if expect != v {
                    return Err(GraphError::Invalid(format!(
                        "end {x} listed at vertex {v} but edge {e} says {expect}"
                    )));
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(GraphError::Invalid(format!(
                "end {x} not attached to any vertex"
            )));
        }
        if self.vertices.iter().any(|v| v.halfedges.is_empty()) {
            return Err(GraphError::Invalid("isolated vertex".into()));
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.vertices[v].halfedges.len()
    }

    /// (vertex, position) of an edge end.
    pub fn end_location(&self, x: EndId) -> (VertexId, usize) {
        let e = end_edge(x);
        let v = if is_target_end(x) {
            self.edges[e].to
        } else {
            self.edges[e].from
        };
        let pos = self.vertices[v]
            .halfedges
            .iter()
            .position(|&y| y == x)
            .expect("validated graph");
        (v, pos)
    }

    /// The next step of the face containing `step`: leave through the cyclic
    /// successor of the arrival end.
    pub fn next_face_step(&self, step: Step) -> Step {
        let x = step.arrival_end();
        let (v, pos) = self.end_location(x);
        let n = self.valence(v);
        let y = self.vertices[v].halfedges[(pos + 1) % n];
        let e = end_edge(y);
        Step::new(e, !is_target_end(y))
    }

    /// All faces; every directed step lies on exactly one.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen: BTreeMap<(EdgeId, bool), bool> = BTreeMap::new();
        let mut out = vec![];
        for e in 0..self.edges.len() {
            for fw in [true, false] {
                if seen.contains_key(&(e, fw)) {
                    continue;
                }
                let start = Step::new(e, fw);
                let mut steps = vec![];
                let mut cur = start;
                loop {
                    steps.push(cur);
                    seen.insert((cur.edge, cur.forward), true);
                    cur = self.next_face_step(cur);
                    if cur == start {
                        break;
                    }
                }
                out.push(Face { steps });
            }
        }
        out
    }

    /// Index of the face containing a given directed step.
    pub fn face_of_step(&self, faces: &[Face], step: Step) -> usize {
        faces
            .iter()
            .position(|f| f.steps.contains(&step))
            .expect("every step is on a face")
    }

    /// The step arriving at the cilium corner of `v`: the face containing it
    /// has that corner, i.e. continues by leaving through `halfedges[0]`.
    pub fn cilium_arrival_step(&self, v: VertexId) -> Step {
        let x = *self.vertices[v].halfedges.last().unwrap();
        let e = end_edge(x);
        Step::new(e, is_target_end(x))
    }

    /// The ciliated face anchored at the cilium of `v`, in traversal order:
    /// it starts by leaving through `halfedges[0]` and ends by arriving
    /// through the last halfedge.
    pub fn anchored_face(&self, v: VertexId) -> Vec<Step> {
        let last_arrival = self.cilium_arrival_step(v);
        let first = self.next_face_step(last_arrival);
        let mut steps = vec![first];
        let mut cur = first;
        loop {
            if cur == last_arrival {
                break;
            }
            cur = self.next_face_step(cur);
            steps.push(cur);
        }
        steps
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.faces().len() as i64
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &x in &self.vertices[v].halfedges {
                let e = end_edge(x);
                for w in [self.edges[e].from, self.edges[e].to] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn check_regular(&self) -> RegularityReport {
        let mut loops = vec![];
        let mut multiple_edges = vec![];
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.from == edge.to {
                loops.push(e);
            }
            for (e2, edge2) in self.edges.iter().enumerate().skip(e + 1) {
                let same = (edge.from == edge2.from && edge.to == edge2.to)
                    || (edge.from == edge2.to && edge.to == edge2.from);
                if same {
                    multiple_edges.push((e, e2));
                }
            }
        }
        let faces = self.faces();
        let mut doubly_traversed = vec![];
        for (fi, f) in faces.iter().enumerate() {
            let mut counts: BTreeMap<EdgeId, usize> = BTreeMap::new();
            for s in &f.steps {
                *counts.entry(s.edge).or_default() += 1;
            }
            for (e, c) in counts {
                if c > 1 {
                    doubly_traversed.push((fi, e));
                }
            }
        }
        let mut cilium_counts = vec![0usize; faces.len()];
        for v in 0..self.num_vertices() {
            let step = self.cilium_arrival_step(v);
            let fi = self.face_of_step(&faces, step);
            cilium_counts[fi] += 1;
        }
        RegularityReport {
            loops,
            multiple_edges,
            doubly_traversed,
            cilium_counts,
        }
    }

    /// Fails with the violated condition unless the graph is regular.
    pub fn require_regular(&self) -> Result<(), GraphError> {
        let report = self.check_regular();
        match report.violation() {
            None => Ok(()),
            Some(v) => Err(GraphError::NotRegular(v)),
        }
    }

    fn tap_validate(self) -> RibbonGraph {
        debug_assert!(self.validate().is_ok());
        self
    }

    fn rotate_vertex(&mut self, v: VertexId, by: usize) {
        let n = self.vertices[v].halfedges.len();
        self.vertices[v].halfedges.rotate_left(by % n);
    }
}

// Surgery primitives used by regularization.

fn clone_parts(g: &RibbonGraph) -> (Vec<Vertex>, Vec<Edge>) {
    (g.vertices.clone(), g.edges.clone())
}

/// Replaces edge `e` (u -> v) with u -> w -> v through a fresh bivalent vertex
/// `w`. The first half keeps id `e` (u -> w); the second half gets a new id.
/// `w`'s rotation starts as `[target end of first half, start end of second
/// half]`; callers fix the cilium side afterwards.
fn subdivide_edge(g: &RibbonGraph, e: EdgeId) -> (RibbonGraph, VertexId, EdgeId) {
    let (mut vertices, mut edges) = clone_parts(g);
    let w = vertices.len();
    let e2 = edges.len();
    let old = edges[e];
    edges[e] = Edge { from: old.from, to: w };
    edges.push(Edge { from: w, to: old.to });
    // The old target end slot now holds the target end of the new edge e2.
    let slot = vertices[old.to]
        .halfedges
        .iter()
        .position(|&x| x == target_end(e))
        .unwrap();
    vertices[old.to].halfedges[slot] = target_end(e2);
    vertices.push(Vertex {
        halfedges: vec![target_end(e), start_end(e2)],
    });
    (RibbonGraph { vertices, edges }.tap_validate(), w, e2)
}

/// Chooses the rotation of bivalent vertex `w` that puts its cilium corner on
/// the face containing `marker`. Leaves the rotation alone if neither works.
fn point_cilium_at(g: &mut RibbonGraph, w: VertexId, marker: Step) {
    for _ in 0..g.vertices[w].halfedges.len() {
        let faces = g.faces();
        let fi = g.face_of_step(&faces, g.cilium_arrival_step(w));
        if faces[fi].steps.contains(&marker) {
            return;
        }
        g.rotate_vertex(w, 1);
    }
}

/// One pass of the regularization pipeline. Returns the rewritten graph and
/// whether anything changed.
fn regularize_round(g: &RibbonGraph) -> Result<(RibbonGraph, bool), GraphError> {
    // (a) Subdivide loops, cilium pointing along the loop.
    if let Some(e) = g.edges.iter().position(|ed| ed.from == ed.to) {
        let (mut g2, w, e2) = subdivide_edge(g, e);
        // Prefer the side whose face traverses the two pieces consecutively.
        let faces = g2.faces();
        let marker = Step::new(e2, true);
        let fi = g2.face_of_step(&faces, marker);
        let consecutive = faces[fi]
            .steps
            .iter()
            .zip(faces[fi].steps.iter().cycle().skip(1))
            .any(|(a, b)| (a.edge == e && b.edge == e2) || (a.edge == e2 && b.edge == e));
        let target = if consecutive { marker } else { Step::new(e2, false) };
        point_cilium_at(&mut g2, w, target);
        return Ok((g2, true));
    }

    // (b) Double edges traversed twice by a face.
    let faces = g.faces();
    let twice = faces.iter().find_map(|f| {
        let mut counts: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for s in &f.steps {
            *counts.entry(s.edge).or_default() += 1;
        }
        counts.into_iter().find(|(_, c)| *c > 1).map(|(e, _)| e)
    });
    if let Some(e) = twice {
        let (mut vertices, mut edges) = clone_parts(g);
        let u = edges[e].from;
        let v = edges[e].to;
        let e2 = edges.len();
        edges.push(Edge { from: u, to: v });
        // Insert the copy so that e and e2 bound a bigon: at v the new target
        // end comes directly after t(e); at u the new start end comes directly
        // before s(e).
        let pos_v = vertices[v]
            .halfedges
            .iter()
            .position(|&x| x == target_end(e))
            .unwrap();
        vertices[v].halfedges.insert(pos_v + 1, target_end(e2));
        let pos_u = vertices[u]
            .halfedges
            .iter()
            .position(|&x| x == start_end(e))
            .unwrap();
        vertices[u].halfedges.insert(pos_u, start_end(e2));
        let doubled = RibbonGraph { vertices, edges }.tap_validate();
        // Subdivide the copy; the bigon is the face containing (e, forward).
        let (mut g2, w, _) = subdivide_edge(&doubled, e2);
        point_cilium_at(&mut g2, w, Step::new(e, true));
        return Ok((g2, true));
    }

    // (c) Subdivide the first edge of the lexicographically first pair of
    // multiple edges.
    for e in 0..g.edges.len() {
        for e2 in e + 1..g.edges.len() {
            let (a, b) = (g.edges[e], g.edges[e2]);
            let same = (a.from == b.from && a.to == b.to) || (a.from == b.to && a.to == b.from);
            if same {
                let (g2, _, _) = subdivide_edge(g, e);
                return Ok((g2, true));
            }
        }
    }

    // (d) Subdivide faces containing more than one cilium.
    let mut cilium_corners: Vec<Vec<usize>> = vec![vec![]; faces.len()];
    for v in 0..g.num_vertices() {
        let fi = g.face_of_step(&faces, g.cilium_arrival_step(v));
        cilium_corners[fi].push(v);
    }
    if let Some(fi) = (0..faces.len()).find(|&fi| cilium_corners[fi].len() > 1) {
        let g2 = subdivide_face(g, &faces[fi])?;
        return Ok((g2, true));
    }

    // (e) Add a ciliated bivalent vertex into faces without cilia.
    if let Some(fi) = (0..faces.len()).find(|&fi| cilium_corners[fi].is_empty()) {
        let face = &faces[fi];
        let step = face.steps[0];
        // A marker step on the same face that survives the subdivision.
        let marker = face
            .steps
            .iter()
            .copied()
            .find(|s| s.edge != step.edge)
            .unwrap_or(step);
        let (mut g2, w, e2) = subdivide_edge(g, step.edge);
        let marker = if marker.edge == step.edge {
            // Single-edge face: after subdividing, the forward half of the
            // original id survives on the same side.
            Step::new(if marker.forward { step.edge } else { e2 }, marker.forward)
        } else {
            marker
        };
        point_cilium_at(&mut g2, w, marker);
        return Ok((g2, true));
    }

    Ok((g.clone(), false))
}

/// Subdivides a face by a central vertex connected to every corner in cyclic
/// order. The new vertex's cilium is rotated into a spoke face without other
/// cilia when possible.
fn subdivide_face(g: &RibbonGraph, face: &Face) -> Result<RibbonGraph, GraphError> {
    let (mut vertices, mut edges) = clone_parts(g);
    let z = vertices.len();
    let k = face.steps.len();
    let mut spoke_ends_at_z: Vec<EndId> = vec![];
    for i in 0..k {
        let arrive = face.steps[i];
        let x = arrive.arrival_end();
        let e_new = edges.len();
        let (v, pos) = {
            let e = end_edge(x);
            let v = if is_target_end(x) { edges[e].to } else { edges[e].from };
            let pos = vertices[v].halfedges.iter().position(|&y| y == x).unwrap();
            (v, pos)
        };
        edges.push(Edge { from: z, to: v });
        // The corner of this face at v opens directly after the arrival end.
        vertices[v].halfedges.insert(pos + 1, target_end(e_new));
        spoke_ends_at_z.push(start_end(e_new));
    }
    // At z the spokes appear in reverse traversal order.
    spoke_ends_at_z.reverse();
    vertices.push(Vertex {
        halfedges: spoke_ends_at_z,
    });
    let mut g2 = RibbonGraph { vertices, edges }.tap_validate();
    // Rotate z's cilium into a sub-face with no other cilia if possible.
    let n = g2.vertices[z].halfedges.len();
    for _ in 0..n {
        let faces = g2.faces();
        let mut counts = vec![0usize; faces.len()];
        for v in 0..g2.num_vertices() {
            let fi = g2.face_of_step(&faces, g2.cilium_arrival_step(v));
            counts[fi] += 1;
        }
        let fi = g2.face_of_step(&faces, g2.cilium_arrival_step(z));
        if counts[fi] == 1 {
            break;
        }
        g2.rotate_vertex(z, 1);
    }
    Ok(g2)
}

/// Regularizes a ciliated ribbon graph by the loop/doubling/subdivision
/// pipeline, iterating to a fixpoint. The output passes `check_regular` and
/// has the same Euler characteristic and connectivity as the input.
pub fn regularize(g: &RibbonGraph) -> Result<RibbonGraph, GraphError> {
    let mut cur = g.clone();
    let cap = 16 * (g.num_edges() + g.num_vertices() + 8);
    for _ in 0..cap {
        if cur.check_regular().is_regular() {
            return Ok(cur);
        }
        let (next, changed) = regularize_round(&cur)?;
        if !changed {
            return Err(GraphError::NoConvergence(cap));
        }
        cur = next;
    }
    if cur.check_regular().is_regular() {
        Ok(cur)
    } else {
        Err(GraphError::NoConvergence(cap))
    }
}

// JSON wire format: vertices list their halfedge ids in cilium order; edges
// name both endpoints by (vertex, slot). The slot data is redundant and is
// cross-checked on load.

#[derive(Serialize, Deserialize)]
struct VertexJson {
    halfedges: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    from: (usize, usize),
    to: (usize, usize),
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

pub fn graph_to_json(g: &RibbonGraph) -> String {
    let vertices = g
        .vertices
        .iter()
        .map(|v| VertexJson {
            halfedges: v.halfedges.clone(),
        })
        .collect();
    let edges = (0..g.num_edges())
        .map(|e| {
            let (fv, fp) = g.end_location(start_end(e));
            let (tv, tp) = g.end_location(target_end(e));
            EdgeJson {
                from: (fv, fp),
                to: (tv, tp),
            }
        })
        .collect();
    serde_json::to_string_pretty(&GraphJson { vertices, edges }).unwrap()
}

pub fn graph_from_json(text: &str) -> Result<RibbonGraph, GraphError> {
    let json: GraphJson =
        serde_json::from_str(text).map_err(|e| GraphError::Invalid(e.to_string()))?;
    let vertices: Vec<Vertex> = json
        .vertices
        .iter()
        .map(|v| Vertex {
            halfedges: v.halfedges.clone(),
        })
        .collect();
    let mut edges = vec![
        Edge {
            from: usize::MAX,
            to: usize::MAX
        };
        json.edges.len()
    ];
    for (e, ej) in json.edges.iter().enumerate() {
        edges[e] = Edge {
            from: ej.from.0,
            to: ej.to.0,
        };
    }
    let g = RibbonGraph::new(vertices, edges)?;
    for (e, ej) in json.edges.iter().enumerate() {
        let (fv, fp) = g.end_location(start_end(e));
        let (tv, tp) = g.end_location(target_end(e));
        if (fv, fp) != ej.from || (tv, tp) != ej.to {
            return Err(GraphError::Invalid(format!(
                "edge {e}: endpoint slots disagree with vertex lists"
            )));
        }
    }
    Ok(g)
}

// Built-in graph catalog.

/// Builds a graph from per-vertex ccw edge-id rotations; direction of each end
/// is inferred from the edge list.
fn from_rotations(
    n_vertices: usize,
    edge_list: &[(usize, usize)],
    rotations: &[Vec<usize>],
) -> RibbonGraph {
    let edges: Vec<Edge> = edge_list
        .iter()
        .map(|&(a, b)| Edge { from: a, to: b })
        .collect();
    let mut vertices = vec![];
    for v in 0..n_vertices {
        let mut halfedges = vec![];
        for &e in &rotations[v] {
            let end = if edges[e].from == v {
                start_end(e)
            } else {
                target_end(e)
            };
            halfedges.push(end);
        }
        vertices.push(Vertex { halfedges });
    }
    RibbonGraph { vertices, edges }.tap_validate()
}

/// Searches cilium rotations (order origins) until `check_regular` passes;
/// the underlying rotation system is fixed. Deterministic first match.
fn fix_cilia(mut g: RibbonGraph) -> Option<RibbonGraph> {
    fn rec(g: &mut RibbonGraph, v: usize) -> bool {
        if v == g.num_vertices() {
            return g.check_regular().is_regular();
        }
        let n = g.vertices[v].halfedges.len();
        for _ in 0..n {
            if rec(g, v + 1) {
                return true;
            }
            g.rotate_vertex(v, 1);
        }
        false
    }
    if rec(&mut g, 0) {
        Some(g)
    } else {
        None
    }
}

pub fn tetrahedron() -> RibbonGraph {
    // Vertices 0,1,2 on an outer triangle, 3 in the centre; ccw rotations from
    // the planar drawing.
    let edge_list = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let rotations = vec![
        vec![0, 2, 1], // at 0: to 1, to 3, to 2
        vec![3, 4, 0], // at 1: to 2, to 3, to 0
        vec![1, 5, 3], // at 2: to 0, to 3, to 1
        vec![5, 2, 4], // at 3: to 2, to 0, to 1
    ];
    fix_cilia(from_rotations(4, &edge_list, &rotations))
        .expect("tetrahedron admits a regular ciliation")
}

pub fn square_pyramid() -> RibbonGraph {
    // Base cycle 0-1-2-3, apex 4 in the centre of the drawing.
    let edge_list = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 0),
        (0, 4),
        (1, 4),
        (2, 4),
        (3, 4),
    ];
    let rotations = vec![
        vec![0, 4, 3],    // at 0: to 1, apex, to 3
        vec![1, 5, 0],    // at 1: to 2, apex, to 0
        vec![2, 6, 1],    // at 2: to 3, apex, to 1
        vec![3, 7, 2],    // at 3: to 0, apex, to 2
        vec![6, 7, 4, 5], // at apex, ccw
    ];
    fix_cilia(from_rotations(5, &edge_list, &rotations))
        .expect("pyramid admits a regular ciliation")
}

/// The n x m square lattice on the torus; regular for n, m >= 3.
pub fn torus(n: usize, m: usize) -> RibbonGraph {
    assert!(n >= 2 && m >= 2, "torus lattice needs n, m >= 2");
    let vid = |i: usize, j: usize| (i % n) * m + (j % m);
    let mut edge_list = vec![];
    // East edges first: (i,j) -> (i+1,j); then north: (i,j) -> (i,j+1).
    for i in 0..n {
        for j in 0..m {
            edge_list.push((vid(i, j), vid(i + 1, j)));
        }
    }
    for i in 0..n {
        for j in 0..m {
            edge_list.push((vid(i, j), vid(i, j + 1)));
        }
    }
    let east = |i: usize, j: usize| (i % n) * m + (j % m);
    let north = |i: usize, j: usize| n * m + (i % n) * m + (j % m);
    let mut rotations = vec![vec![]; n * m];
    for i in 0..n {
        for j in 0..m {
            rotations[vid(i, j)] = vec![
                east(i, j),
                north(i, j),
                east(i + n - 1, j),
                north(i, j + m - 1),
            ];
        }
    }
    let g = from_rotations(n * m, &edge_list, &rotations);
    if n >= 3 && m >= 3 {
        fix_cilia(g).expect("torus lattice admits a regular ciliation")
    } else {
        g
    }
}

/// Star graph: centre 0 with n spokes oriented inward, outer vertices 1..=n.
pub fn star(n: usize) -> RibbonGraph {
    assert!(n >= 1);
    let edge_list: Vec<(usize, usize)> = (0..n).map(|k| (k + 1, 0)).collect();
    let mut rotations = vec![vec![]; n + 1];
    rotations[0] = (0..n).collect();
    for k in 0..n {
        rotations[k + 1] = vec![k];
    }
    from_rotations(n + 1, &edge_list, &rotations)
}

/// One vertex with two interleaved loops: the genus-1 bouquet.
pub fn two_loop_bouquet() -> RibbonGraph {
    let edges = vec![Edge { from: 0, to: 0 }, Edge { from: 0, to: 0 }];
    let vertices = vec![Vertex {
        halfedges: vec![start_end(0), start_end(1), target_end(0), target_end(1)],
    }];
    RibbonGraph { vertices, edges }.tap_validate()
}

/// Triangle: 3 vertices, 3 edges, 2 faces; pigeonhole forces a cilium clash.
pub fn triangle() -> RibbonGraph {
    let edge_list = [(0, 1), (1, 2), (2, 0)];
    let rotations = vec![vec![0, 2], vec![1, 0], vec![2, 1]];
    from_rotations(3, &edge_list, &rotations)
}

/// Square 4-cycle: 4 vertices, 4 edges, 2 faces.
pub fn square_cycle() -> RibbonGraph {
    let edge_list = [(0, 1), (1, 2), (2, 3), (3, 0)];
    let rotations = vec![vec![0, 3], vec![1, 0], vec![2, 1], vec![3, 2]];
    from_rotations(4, &edge_list, &rotations)
}

/// Single edge between two vertices.
pub fn single_edge() -> RibbonGraph {
    let edge_list = [(0, 1)];
    let rotations = vec![vec![0], vec![0]];
    from_rotations(2, &edge_list, &rotations)
}

/// Built-in graph catalog lookup; `torus-n-m` and `star-n` carry parameters.
pub fn builtin_graph(name: &str) -> Option<RibbonGraph> {
    match name {
        "tetrahedron" => Some(tetrahedron()),
        "pyramid" => Some(square_pyramid()),
        _ => {
            if let Some(rest) = name.strip_prefix("torus-") {
                let parts: Vec<_> = rest.split('-').collect();
                if parts.len() == 2 {
                    if let (Ok(n), Ok(m)) = (parts[0].parse(), parts[1].parse()) {
                        if n >= 2 && m >= 2 {
                            return Some(torus(n, m));
                        }
                    }
                }
                None
            } else if let Some(rest) = name.strip_prefix("star-") {
                rest.parse().ok().filter(|&n| n >= 1).map(star)
            } else {
                None
            }
        }
    }
}

pub fn builtin_graph_names() -> Vec<&'static str> {
    vec!["tetrahedron", "pyramid", "torus-n-m (n,m >= 3)", "star-n"]
}
