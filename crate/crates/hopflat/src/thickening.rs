//! The thickened graph and its distinguished paths.
//!
//! Thickening replaces each edge `e` of a ribbon graph by a rectangle with
//! parallel sides `r(e)`, `l(e)` (right and left of `e`) and transversal sides
//! `r(ebar)`, `l(ebar)` at the target and starting end. Vertices of the
//! thickening are the sites of the base graph: (vertex, corner gap) pairs,
//! where gap `i` sits between the ends at positions `i` and `i+1` and the
//! cilium occupies gap `n-1`.
//!
//! Orientation reversal follows `r(e^-1) = l(e)^-1` and `r(ebar^-1) =
//! l(ebar)^-1`; path words are stored in traversal order (first letter
//! traversed first).

use crate::graph::{start_end, target_end, EdgeId, GraphError, RibbonGraph, Step, VertexId};
use std::fmt;

/// A vertex of the thickened graph: a corner of the base graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site {
    pub vertex: VertexId,
    /// Gap index: between halfedge positions `gap` and `gap + 1 (mod n)`.
    pub gap: usize,
}

impl fmt::Debug for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.vertex, self.gap)
    }
}

/// The four thickened edges attached to a base edge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Kind {
    /// Parallel to `e`, on its right.
    R,
    /// Parallel to `e`, on its left.
    L,
    /// Transversal at the target end, crossing right to left.
    RBar,
    /// Transversal at the starting end, crossing right to left.
    LBar,
}

/// One letter of a path word in the thickening: a thickened edge with an
/// exponent.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub kind: Kind,
    pub edge: EdgeId,
    pub forward: bool,
}

impl Letter {
    pub fn new(kind: Kind, edge: EdgeId, forward: bool) -> Self {
        Letter { kind, edge, forward }
    }

    pub fn inverse(self) -> Self {
        Letter {
            forward: !self.forward,
            ..self
        }
    }

    /// The underlying undirected thickened edge.
    pub fn undirected(self) -> (Kind, EdgeId) {
        (self.kind, self.edge)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            Kind::R => "r",
            Kind::L => "l",
            Kind::RBar => "rb",
            Kind::LBar => "lb",
        };
        write!(
            f,
            "{}({}){}",
            name,
            self.edge,
            if self.forward { "" } else { "^-1" }
        )
    }
}

fn edge_positions(g: &RibbonGraph, e: EdgeId) -> (VertexId, usize, usize, VertexId, usize, usize) {
    let (u, pos_u) = g.end_location(start_end(e));
    let (w, pos_w) = g.end_location(target_end(e));
    (u, pos_u, g.valence(u), w, pos_w, g.valence(w))
}

/// Start site of a forward thickened edge.
pub fn letter_start(g: &RibbonGraph, kind: Kind, e: EdgeId) -> Site {
    let (u, pos_u, n_u, w, pos_w, _n_w) = edge_positions(g, e);
    match kind {
        Kind::R => Site {
            vertex: u,
            gap: (pos_u + n_u - 1) % n_u,
        },
        Kind::L => Site {
            vertex: u,
            gap: pos_u,
        },
        Kind::RBar => Site {
            vertex: w,
            gap: pos_w,
        },
        Kind::LBar => Site {
            vertex: u,
            gap: (pos_u + n_u - 1) % n_u,
        },
    }
}

/// Target site of a forward thickened edge.
pub fn letter_target(g: &RibbonGraph, kind: Kind, e: EdgeId) -> Site {
    let (u, pos_u, _n_u, w, pos_w, n_w) = edge_positions(g, e);
    match kind {
        Kind::R => Site {
            vertex: w,
            gap: pos_w,
        },
        Kind::L => Site {
            vertex: w,
            gap: (pos_w + n_w - 1) % n_w,
        },
        Kind::RBar => Site {
            vertex: w,
            gap: (pos_w + n_w - 1) % n_w,
        },
        Kind::LBar => Site {
            vertex: u,
            gap: pos_u,
        },
    }
}

impl Letter {
    pub fn start(&self, g: &RibbonGraph) -> Site {
        if self.forward {
            letter_start(g, self.kind, self.edge)
        } else {
            letter_target(g, self.kind, self.edge)
        }
    }

    pub fn target(&self, g: &RibbonGraph) -> Site {
        if self.forward {
            letter_target(g, self.kind, self.edge)
        } else {
            letter_start(g, self.kind, self.edge)
        }
    }
}

/// A word in the path groupoid of the thickening, stored in traversal order.
#[derive(Clone, PartialEq, Eq)]
pub struct PathWord {
    pub letters: Vec<Letter>,
}

impl fmt::Debug for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Display in composition order: last traversed leftmost.
        let mut parts: Vec<String> = self.letters.iter().map(|l| format!("{l:?}")).collect();
        parts.reverse();
        write!(f, "{}", parts.join(" o "))
    }
}

impl PathWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        PathWord { letters }
    }

    pub fn empty() -> Self {
        PathWord { letters: vec![] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Checks that consecutive letters compose in the thickening of `g`.
    pub fn is_composable(&self, g: &RibbonGraph) -> bool {
        self.letters
            .windows(2)
            .all(|w| w[0].target(g) == w[1].start(g))
    }

    pub fn start(&self, g: &RibbonGraph) -> Option<Site> {
        self.letters.first().map(|l| l.start(g))
    }

    pub fn target(&self, g: &RibbonGraph) -> Option<Site> {
        self.letters.last().map(|l| l.target(g))
    }

    pub fn is_closed(&self, g: &RibbonGraph) -> bool {
        self.is_composable(g) && self.start(g) == self.target(g)
    }

    /// Concatenation: `self` then `other` (traversal order).
    pub fn then(&self, other: &PathWord) -> PathWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        PathWord { letters }
    }

    pub fn inverse(&self) -> PathWord {
        PathWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Free reduction: cancels adjacent inverse pairs.
    pub fn reduced(&self) -> PathWord {
        let mut out: Vec<Letter> = vec![];
        for &l in &self.letters {
            match out.last() {
                Some(&last) if last == l.inverse() => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        PathWord { letters: out }
    }
}

/// The vertex loop: clockwise around `v` from its cilium, transversal letters
/// only. Requires a loop-free graph.
pub fn vertex_loop(g: &RibbonGraph, v: VertexId) -> PathWord {
    below_prefix(g, v, g.valence(v))
}

/// The face loop for the ciliated face anchored at the cilium of `v`:
/// parallel letters along the face, `r` for forward steps, `l^-1` for
/// reversed ones.
pub fn face_loop(g: &RibbonGraph, v: VertexId) -> PathWord {
    let steps = g.anchored_face(v);
    let letters = steps
        .iter()
        .map(|s| {
            if s.forward {
                Letter::new(Kind::R, s.edge, true)
            } else {
                Letter::new(Kind::L, s.edge, false)
            }
        })
        .collect();
    PathWord { letters }
}

/// The clockwise run around `v` over the ends strictly below position `pos`:
/// traversed from position `pos - 1` down to 0, ending at the cilium site.
fn below_prefix(g: &RibbonGraph, v: VertexId, pos: usize) -> PathWord {
    let mut letters = vec![];
    for p in (0..pos).rev() {
        let x = g.vertices[v].halfedges[p];
        let e = crate::graph::end_edge(x);
        if crate::graph::is_target_end(x) {
            // Incoming: r(ebar) forward.
            letters.push(Letter::new(Kind::RBar, e, true));
        } else {
            // Outgoing: r(ebar^-1) = l(ebar)^-1.
            letters.push(Letter::new(Kind::LBar, e, false));
        }
    }
    PathWord { letters }
}

/// The two edge paths for `e`, from the cilium of the starting vertex to the
/// cilium of the target vertex: counterclockwise around the starting vertex,
/// along the edge on one side, then clockwise around the target vertex.
pub fn edge_paths(g: &RibbonGraph, e: EdgeId) -> (PathWord, PathWord) {
    let (u, pos_u) = g.end_location(start_end(e));
    let (w, pos_w) = g.end_location(target_end(e));
    let p_s_below = below_prefix(g, u, pos_u);
    let p_t_below = below_prefix(g, w, pos_w);
    let plus_mid = PathWord::new(vec![
        Letter::new(Kind::R, e, true),
        Letter::new(Kind::RBar, e, true),
    ]);
    let minus_mid = PathWord::new(vec![
        Letter::new(Kind::LBar, e, true),
        Letter::new(Kind::L, e, true),
    ]);
    let plus = p_s_below.inverse().then(&plus_mid).then(&p_t_below);
    let minus = p_s_below.inverse().then(&minus_mid).then(&p_t_below);
    (plus, minus)
}

/// The vertex-neighbourhood paths for the `i`-th edge at `v` (1-based):
/// sigma = 0 runs along the right of the edge end and crosses it, sigma = 1
/// runs along its left. Orientations enter through the reversal convention.
pub fn nb_path(g: &RibbonGraph, v: VertexId, i: usize, sigma: u8) -> Result<PathWord, GraphError> {
    let n = g.valence(v);
    if i == 0 || i > n {
        return Err(GraphError::Invalid(format!(
            "edge index {i} out of range at vertex {v} of valence {n}"
        )));
    }
    let x = g.vertices[v].halfedges[i - 1];
    let e = crate::graph::end_edge(x);
    let incoming = crate::graph::is_target_end(x);
    let tail = match (sigma, incoming) {
        (0, true) => vec![
            Letter::new(Kind::R, e, true),
            Letter::new(Kind::RBar, e, true),
        ],
        // Outgoing: r(ebar^-1) o r(e^-1) = l(ebar)^-1 o l(e)^-1.
        (0, false) => vec![
            Letter::new(Kind::L, e, false),
            Letter::new(Kind::LBar, e, false),
        ],
        (1, true) => vec![Letter::new(Kind::L, e, true)],
        // Outgoing: l(e^-1) = r(e)^-1.
        (1, false) => vec![Letter::new(Kind::R, e, false)],
        _ => {
            return Err(GraphError::Invalid(format!(
                "sigma must be 0 or 1, got {sigma}"
            )));
        }
    };
    Ok(PathWord::new(tail).then(&below_prefix(g, v, i - 1)))
}

/// The thickening as an explicit graph: sites, the four edges per base edge,
/// and the classification of its faces.
#[derive(Debug)]
pub struct ThickenedGraph {
    pub sites: Vec<Site>,
    /// Undirected thickened edges with their endpoints.
    pub edges: Vec<((Kind, EdgeId), Site, Site)>,
    /// Rectangle faces, one per base edge.
    pub edge_faces: Vec<(EdgeId, PathWord)>,
    /// Polygon faces, one per base vertex (the vertex loops).
    pub vertex_faces: Vec<(VertexId, PathWord)>,
    /// Polygon faces, one per base face, anchored at the cilia.
    pub face_faces: Vec<(VertexId, PathWord)>,
}

/// Builds the thickening of a regular ciliated ribbon graph and classifies its
/// faces as edge rectangles, vertex polygons and face polygons. The
/// classification is checked to cover every directed thickened edge once.
pub fn thicken(g: &RibbonGraph) -> Result<ThickenedGraph, GraphError> {
    g.require_regular()?;
    let mut sites = vec![];
    for v in 0..g.num_vertices() {
        for gap in 0..g.valence(v) {
            sites.push(Site { vertex: v, gap });
        }
    }
    let mut edges = vec![];
    for e in 0..g.num_edges() {
        for kind in [Kind::R, Kind::L, Kind::RBar, Kind::LBar] {
            edges.push((
                (kind, e),
                letter_start(g, kind, e),
                letter_target(g, kind, e),
            ));
        }
    }
    let mut edge_faces = vec![];
    for e in 0..g.num_edges() {
        // The right-turn boundary of the rectangle: across the starting end,
        // along the left side, back across the target end and along the right
        // side reversed. The other four directed sides belong to the vertex
        // and face polygons.
        let word = PathWord::new(vec![
            Letter::new(Kind::LBar, e, true),
            Letter::new(Kind::L, e, true),
            Letter::new(Kind::RBar, e, false),
            Letter::new(Kind::R, e, false),
        ]);
        if !word.is_closed(g) {
            return Err(GraphError::Invalid(format!(
                "edge rectangle of {e} does not close"
            )));
        }
        edge_faces.push((e, word));
    }
    let mut vertex_faces = vec![];
    for v in 0..g.num_vertices() {
        let word = vertex_loop(g, v);
        if !word.is_closed(g) {
            return Err(GraphError::Invalid(format!(
                "vertex loop at {v} does not close"
            )));
        }
        vertex_faces.push((v, word));
    }
    let mut face_faces = vec![];
    for v in 0..g.num_vertices() {
        let word = face_loop(g, v);
        if !word.is_closed(g) {
            return Err(GraphError::Invalid(format!(
                "face loop at {v} does not close"
            )));
        }
        face_faces.push((v, word));
    }
    let mut seen = std::collections::BTreeSet::new();
    for word in edge_faces
        .iter()
        .map(|(_, w)| w)
        .chain(vertex_faces.iter().map(|(_, w)| w))
        .chain(face_faces.iter().map(|(_, w)| w))
    {
        for l in &word.letters {
            if !seen.insert((l.kind, l.edge, l.forward)) {
                return Err(GraphError::Invalid(format!(
                    "directed thickened edge {l:?} lies on two classified faces"
                )));
            }
        }
    }
    if seen.len() != 8 * g.num_edges() {
        return Err(GraphError::Invalid(
            "classified faces do not cover the thickening".into(),
        ));
    }
    Ok(ThickenedGraph {
        sites,
        edges,
        edge_faces,
        vertex_faces,
        face_faces,
    })
}

/// The cilium site of a vertex in the thickening.
pub fn cilium_site(g: &RibbonGraph, v: VertexId) -> Site {
    Site {
        vertex: v,
        gap: g.valence(v) - 1,
    }
}

/// The anchored ciliated face of `v` as base-graph steps.
pub fn anchored_face_steps(g: &RibbonGraph, v: VertexId) -> Vec<Step> {
    g.anchored_face(v)
}
