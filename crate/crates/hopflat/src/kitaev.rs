//! The Kitaev model: triangle operators on the extended space, the holonomy
//! functor on the thickened graph, vertex and face operators, the gauge action
//! of the double at each vertex, the flatness idempotents and the protected
//! space dimension.
//!
//! The per-edge carrier is `H (x) H*`, which carries two products: the dual
//! double product (used to define holonomy) and the Heisenberg product (the
//! triangle operator algebra). Elements are plain sparse vectors over the
//! `E`-fold power of that carrier; which product applies is always an explicit
//! argument, never inferred.

use crate::constructions::Doubles;
use crate::exec::{map_reduce, ExecMode};
use crate::graph::{start_end, target_end, GraphError, RibbonGraph, Step, VertexId};
use crate::hopf::{comult_legs, insert, Element, HopfError, Space};
use crate::linalg::{Matrix, Scalar, SparseVec};
use crate::thickening::{edge_paths, face_loop, vertex_loop, Kind, Letter, PathWord};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("path is not composable in the thickening")]
    NotComposable,
    #[error("not a ribbon path: {0}")]
    NotRibbon(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

/// Which product on `(H (x) H*)^(x E)` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    /// Componentwise dual double product `(y (x) g)(z (x) d) = zy (x) gd`.
    DoubleDual,
    /// Componentwise Heisenberg product.
    Heisenberg,
}

/// A linear operator on the extended space `H^(x E)`, stored as a sum of
/// tensor factors acting on individual edge slots. Nothing global is ever
/// materialized; application fans out per term.
#[derive(Clone)]
pub struct LocalOp {
    /// Each term: coefficient and per-slot small matrices; slots not listed
    /// act as the identity.
    pub terms: Vec<(Scalar, Vec<(usize, Matrix)>)>,
}

impl LocalOp {
    pub fn identity() -> Self {
        LocalOp {
            terms: vec![(Scalar::one(), vec![])],
        }
    }

    /// Applies to a sparse state of `H^(x E)` with per-slot dimension `d` and
    /// `n_slots` slots.
    pub fn apply(&self, state: &SparseVec, d: usize, n_slots: usize) -> SparseVec {
        let mut out = vec![];
        for (idx, c) in state.iter() {
            for (tc, factors) in &self.terms {
                // Expand the factor action slot by slot.
                let mut partial: Vec<(u64, Scalar)> = vec![(*idx, c * tc)];
                for (slot, m) in factors {
                    let stride = (d as u64).pow((n_slots - 1 - slot) as u32);
                    let mut next = vec![];
                    for (i, cc) in &partial {
                        let digit = ((i / stride) % d as u64) as usize;
                        for r in 0..d {
                            let a = m.at(r, digit);
                            if a.is_zero() {
                                continue;
                            }
                            let j = i + (r as u64).wrapping_sub(digit as u64).wrapping_mul(stride);
                            next.push((j, cc * a));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                out.extend(partial);
            }
        }
        SparseVec::from_terms(out)
    }

    /// Composition `self . other` (other applied first).
    pub fn compose(&self, other: &LocalOp, d: usize) -> LocalOp {
        let mut terms = vec![];
        for (c1, f1) in &self.terms {
            for (c2, f2) in &other.terms {
                // Merge factor lists; on slot collision multiply matrices
                // (self's factor applied after other's).
                let mut merged: Vec<(usize, Matrix)> = f2.clone();
                for (slot, m) in f1 {
                    match merged.iter_mut().find(|(s, _)| s == slot) {
                        Some((_, existing)) => {
                            *existing = m.mul(existing);
                        }
                        None => merged.push((*slot, m.clone())),
                    }
                }
                let _ = d;
                terms.push((c1 * c2, merged));
            }
        }
        LocalOp { terms }
    }

    /// Dense matrix on `H^(x E)`; only for small total dimensions.
    pub fn dense(&self, d: usize, n_slots: usize) -> Matrix {
        let dim = (d as u64).pow(n_slots as u32) as usize;
        let mut m = Matrix::zero(dim, dim);
        for col in 0..dim as u64 {
            let img = self.apply(&SparseVec::unit(col), d, n_slots);
            m.set_column(col as usize, &img);
        }
        m
    }
}

/// Triangle operator kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleKind {
    L,
    T,
}

/// Everything needed to run a Kitaev model: the algebra bundle, the graph, and
/// the precomputed letter evaluation tables of the holonomy functor.
pub struct KitaevModel {
    pub doubles: Doubles,
    pub graph: RibbonGraph,
    /// `H (x) H*` with the dual double coalgebra (power 1).
    pub pair1: Space,
    /// `(H (x) H*)^(x E)` tagged with the Heisenberg product.
    pub heis_e: Space,
    /// `(H (x) H*)^(x E)` tagged with the dual double product.
    pub ddual_e: Space,
    /// Haar integrals of `H` and `H*`.
    pub ell: SparseVec,
    pub eta: SparseVec,
    /// Forward letter tables: image in the pair carrier per basis input.
    letters: [Vec<SparseVec>; 4],
    /// Backward letter tables (precomposed with the dual double antipode).
    letters_back: [Vec<SparseVec>; 4],
    /// Left-module matrices of the Heisenberg carrier on `H`.
    phi_mats: Vec<Matrix>,
}

fn kind_index(kind: Kind) -> usize {
    match kind {
        Kind::R => 0,
        Kind::L => 1,
        Kind::RBar => 2,
        Kind::LBar => 3,
    }
}

impl KitaevModel {
    pub fn new(doubles: Doubles, graph: RibbonGraph) -> Result<Self, ModelError> {
        let d = doubles.dim();
        let dd = d * d;
        let h = &doubles.pair.h;
        let dual = &doubles.pair.dual;
        let eps_h = h.counit.as_ref().unwrap().clone();
        let eps_dual = dual.counit.as_ref().unwrap().clone();
        let s_h = h.antipode_matrix()?.clone();
        let unit_h = SparseVec::from_dense(&h.unit);
        let unit_dual = SparseVec::from_dense(&dual.unit);
        let ell = crate::constructions::haar_integral(h)?.vec;
        let eta = crate::constructions::haar_integral(dual)?.vec;

        let mat_col = |m: &Matrix, c: usize| -> SparseVec {
            SparseVec::from_terms(
                (0..m.rows)
                    .filter(|&r| !m.at(r, c).is_zero())
                    .map(|r| (r as u64, m.at(r, c).clone()))
                    .collect(),
            )
        };

        // Forward letter tables on the pair basis (y_i (x) a_j).
        let mut r_tab = vec![SparseVec::new(); dd];
        let mut l_tab = vec![SparseVec::new(); dd];
        let mut rbar_tab = vec![SparseVec::new(); dd];
        let mut lbar_tab = vec![SparseVec::new(); dd];
        for yi in 0..d {
            for gi in 0..d {
                let flat = yi * d + gi;
                // r(e): eps(y) (1 (x) g).
                if !eps_h[yi].is_zero() {
                    r_tab[flat] = unit_h
                        .tensor(&SparseVec::unit(gi as u64), d as u64)
                        .scale(&eps_h[yi]);
                }
                // r(ebar): eps(g) (y (x) 1).
                if !eps_dual[gi].is_zero() {
                    rbar_tab[flat] = SparseVec::unit(yi as u64)
                        .tensor(&unit_dual, d as u64)
                        .scale(&eps_dual[gi]);
                }
                // l(e): eps(y) sum_{i,j} x_i S(x_j) (x) a^j g a^i.
                if !eps_h[yi].is_zero() {
                    let mut acc = vec![];
                    for i in 0..d {
                        for j in 0..d {
                            let sxj = mat_col(&s_h, j);
                            let mut hpart = vec![];
                            for (s, cs) in sxj.iter() {
                                for (k, ck) in h.mul_basis(i, *s as usize) {
                                    hpart.push((*k as u64, cs * ck));
                                }
                            }
                            let hpart = SparseVec::from_terms(hpart);
                            let mut dpart = vec![];
                            for (m, cm) in dual.mul_basis(j, gi) {
                                for (n, cn) in dual.mul_basis(*m as usize, i) {
                                    dpart.push((*n as u64, cm * cn));
                                }
                            }
                            let dpart = SparseVec::from_terms(dpart);
                            for (a, ca) in hpart.iter() {
                                for (b, cb) in dpart.iter() {
                                    acc.push((a * d as u64 + b, ca * cb));
                                }
                            }
                        }
                    }
                    l_tab[flat] = SparseVec::from_terms(acc).scale(&eps_h[yi]);
                }
                // l(ebar): eps(g) sum_{i,j} x_i y x_j' with S: x_i y S(x_j) (x) a^j a^i.
                if !eps_dual[gi].is_zero() {
                    let mut acc = vec![];
                    for i in 0..d {
                        for j in 0..d {
                            let sxj = mat_col(&s_h, j);
                            let mut hpart = vec![];
                            for (m, cm) in h.mul_basis(i, yi) {
                                for (s, cs) in sxj.iter() {
                                    for (k, ck) in h.mul_basis(*m as usize, *s as usize) {
                                        hpart.push((*k as u64, cm * &(cs * ck)));
                                    }
                                }
                            }
                            let hpart = SparseVec::from_terms(hpart);
                            let mut dpart = vec![];
                            for (n, cn) in dual.mul_basis(j, i) {
                                dpart.push((*n as u64, cn.clone()));
                            }
                            let dpart = SparseVec::from_terms(dpart);
                            for (a, ca) in hpart.iter() {
                                for (b, cb) in dpart.iter() {
                                    acc.push((a * d as u64 + b, ca * cb));
                                }
                            }
                        }
                    }
                    lbar_tab[flat] = SparseVec::from_terms(acc).scale(&eps_dual[gi]);
                }
            }
        }
        let letters = [r_tab, l_tab, rbar_tab, lbar_tab];
        // Backward tables: precompose with S_D.
        let s_d = doubles.double_dual.antipode_matrix()?.clone();
        let mut letters_back: [Vec<SparseVec>; 4] = [vec![], vec![], vec![], vec![]];
        for k in 0..4 {
            letters_back[k] = (0..dd)
                .map(|i| {
                    let mut acc = SparseVec::new();
                    for m in 0..dd {
                        let c = s_d.at(m, i);
                        if !c.is_zero() {
                            acc = acc.add(&letters[k][m].scale(c));
                        }
                    }
                    acc
                })
                .collect();
        }

        // phi(y (x) a) h = <a, h_(2)> y h_(1) as d x d matrices.
        let mut phi_mats = vec![];
        for yi in 0..d {
            for gi in 0..d {
                let mut m = Matrix::zero(d, d);
                for hcol in 0..d {
                    let legs = h.comult.as_ref().unwrap()[hcol].clone();
                    for (h1, h2, c) in legs {
                        if h2 as usize != gi {
                            continue;
                        }
                        for (k, ck) in h.mul_basis(yi, h1 as usize) {
                            *m.at_mut(*k as usize, hcol) += &(&c * ck);
                        }
                    }
                }
                phi_mats.push(m);
            }
        }

        let e = graph.num_edges() as u32;
        let pair1 = Space::new(doubles.double_dual.clone(), 1);
        let heis_e = Space::new(doubles.heisenberg.clone(), e);
        let ddual_e = Space::new(doubles.double_dual.clone(), e);
        Ok(KitaevModel {
            doubles,
            graph,
            pair1,
            heis_e,
            ddual_e,
            ell,
            eta,
            letters,
            letters_back,
            phi_mats,
        })
    }

    pub fn pair_dim(&self) -> usize {
        self.doubles.dim() * self.doubles.dim()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    /// Total dimension of `(H (x) H*)^(x E)`.
    pub fn carrier_dim(&self) -> u64 {
        (self.pair_dim() as u64).pow(self.num_edges() as u32)
    }

    /// Total dimension of the extended space `H^(x E)`.
    pub fn extended_dim(&self) -> u64 {
        (self.doubles.dim() as u64).pow(self.num_edges() as u32)
    }

    fn product_spec(&self, product: ProductKind) -> &crate::hopf::HopfAlgebraSpec {
        match product {
            ProductKind::DoubleDual => &self.doubles.double_dual,
            ProductKind::Heisenberg => &self.doubles.heisenberg,
        }
    }

    /// Unit of the carrier power.
    pub fn carrier_unit(&self) -> SparseVec {
        Element::unit(&self.heis_e).vec
    }

    /// Multiplies two carrier elements under the chosen product.
    pub fn carrier_mul(&self, product: ProductKind, a: &SparseVec, b: &SparseVec) -> SparseVec {
        crate::hopf::mul_power(
            self.product_spec(product),
            self.num_edges() as u32,
            a,
            b,
        )
    }

    /// Right-multiplies a carrier element by a single-edge insertion.
    fn mul_insert_right(
        &self,
        product: ProductKind,
        acc: &SparseVec,
        edge: usize,
        ins: &SparseVec,
    ) -> SparseVec {
        let dd = self.pair_dim() as u64;
        let stride = dd.pow((self.num_edges() - 1 - edge) as u32);
        let spec = self.product_spec(product);
        let mut out = vec![];
        for (idx, c) in acc.iter() {
            let digit = ((idx / stride) % dd) as usize;
            for (j, cj) in ins.iter() {
                for (k, ck) in spec.mul_basis(digit, *j as usize) {
                    let nidx = idx + (*k as u64).wrapping_sub(digit as u64).wrapping_mul(stride);
                    out.push((nidx, c * &(cj * ck)));
                }
            }
        }
        SparseVec::from_terms(out)
    }

    /// Evaluates one letter of the holonomy functor on a basis input of the
    /// pair carrier, giving the element inserted at the letter's edge.
    fn letter_image(&self, letter: Letter, input: usize) -> &SparseVec {
        let tab = if letter.forward {
            &self.letters[kind_index(letter.kind)]
        } else {
            &self.letters_back[kind_index(letter.kind)]
        };
        &tab[input]
    }

    /// The holonomy of a path word on an element of the pair carrier, under
    /// the chosen product on the `E`-fold power. The coproduct legs follow the
    /// convolution convention: the first Sweedler leg goes to the letter
    /// traversed last.
    pub fn holonomy(
        &self,
        word: &PathWord,
        input: &SparseVec,
        product: ProductKind,
    ) -> Result<SparseVec, ModelError> {
        if !word.is_composable(&self.graph) {
            return Err(ModelError::NotComposable);
        }
        let n = word.len() as u32;
        if n == 0 {
            let eps = Element::from_vec(&self.pair1, input.clone())
                .counit()
                .map_err(ModelError::Hopf)?;
            return Ok(self.carrier_unit().scale(&eps));
        }
        let legs = comult_legs(&self.doubles.double_dual, 1, input, n.max(2))
            .map_err(ModelError::Hopf)?;
        let mut out = SparseVec::new();
        for (coeff, leg_list) in &legs {
            // For n = 1 the comult helper still produced 2 legs; collapse the
            // extras through the counit.
            let (coeff, leg_list) = if n == 1 {
                let eps = Element::from_vec(&self.pair1, SparseVec::unit(leg_list[1]))
                    .counit()
                    .map_err(ModelError::Hopf)?;
                (coeff * &eps, vec![leg_list[0]])
            } else {
                (coeff.clone(), leg_list.clone())
            };
            if coeff.is_zero() {
                continue;
            }
            // Letter k (0-based, traversal order) takes leg n-1-k; the product
            // runs left to right over reversed traversal order.
            let mut acc = self.carrier_unit().scale(&coeff);
            for (k, leg) in leg_list.iter().enumerate() {
                let letter = word.letters[(n as usize) - 1 - k];
                let img = self.letter_image(letter, *leg as usize);
                if img.is_zero() {
                    acc = SparseVec::new();
                    break;
                }
                acc = self.mul_insert_right(product, &acc, letter.edge, img);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Checks the ribbon conditions of a path: each thickened edge at most
    /// once, and per base edge only parallel or only transversal letters.
    pub fn check_ribbon(&self, word: &PathWord) -> Result<(), ModelError> {
        let mut seen = std::collections::BTreeSet::new();
        for l in &word.letters {
            if !seen.insert(l.undirected()) {
                return Err(ModelError::NotRibbon(format!(
                    "thickened edge {l:?} traversed twice"
                )));
            }
        }
        for e in 0..self.num_edges() {
            let has_parallel = word
                .letters
                .iter()
                .any(|l| l.edge == e && matches!(l.kind, Kind::R | Kind::L));
            let has_transversal = word
                .letters
                .iter()
                .any(|l| l.edge == e && matches!(l.kind, Kind::RBar | Kind::LBar));
            if has_parallel && has_transversal {
                return Err(ModelError::NotRibbon(format!(
                    "edge {e} contributes both parallel and transversal letters"
                )));
            }
        }
        Ok(())
    }

    /// Checks the extra ordering hypothesis under which the two products give
    /// the same holonomy: when both sides of an edge appear, the right one is
    /// traversed first.
    pub fn check_ribbon_ordering(&self, word: &PathWord) -> Result<(), ModelError> {
        for e in 0..self.num_edges() {
            for (right, left) in [(Kind::R, Kind::L), (Kind::RBar, Kind::LBar)] {
                let pos_r = word.letters.iter().position(|l| l.edge == e && l.kind == right);
                let pos_l = word.letters.iter().position(|l| l.edge == e && l.kind == left);
                if let (Some(r), Some(l)) = (pos_r, pos_l) {
                    if l < r {
                        return Err(ModelError::NotRibbon(format!(
                            "edge {e}: left letter traversed before the right one"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Compares the holonomies of a ribbon path under the two products on
    /// every basis input; they must agree.
    pub fn ribbon_compare(&self, word: &PathWord) -> Result<bool, ModelError> {
        self.check_ribbon(word)?;
        self.check_ribbon_ordering(word)?;
        for input in 0..self.pair_dim() as u64 {
            let a = self.holonomy(word, &SparseVec::unit(input), ProductKind::DoubleDual)?;
            let b = self.holonomy(word, &SparseVec::unit(input), ProductKind::Heisenberg)?;
            if a != b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // Triangle and site operators on the extended space.

    /// The four basic triangle operators as matrices on one `H` factor.
    pub fn triangle_matrix(
        &self,
        kind: TriangleKind,
        plus: bool,
        x: &SparseVec,
    ) -> Result<Matrix, ModelError> {
        let h = &self.doubles.pair.h;
        let d = h.dim;
        let mut m = Matrix::zero(d, d);
        match (kind, plus) {
            (TriangleKind::L, true) => {
                for col in 0..d {
                    for (i, c) in x.iter() {
                        for (k, ck) in h.mul_basis(*i as usize, col) {
                            *m.at_mut(*k as usize, col) += &(c * ck);
                        }
                    }
                }
            }
            (TriangleKind::L, false) => {
                for col in 0..d {
                    for (i, c) in x.iter() {
                        for (k, ck) in h.mul_basis(col, *i as usize) {
                            *m.at_mut(*k as usize, col) += &(c * ck);
                        }
                    }
                }
            }
            (TriangleKind::T, true) => {
                // T+^a k = <a, k_(2)> k_(1).
                for col in 0..d {
                    for (k1, k2, c) in h.comult.as_ref().unwrap()[col].iter() {
                        let p = x.get(*k2 as u64);
                        if !p.is_zero() {
                            *m.at_mut(*k1 as usize, col) += &(&p * c);
                        }
                    }
                }
            }
            (TriangleKind::T, false) => {
                for col in 0..d {
                    for (k1, k2, c) in h.comult.as_ref().unwrap()[col].iter() {
                        let p = x.get(*k1 as u64);
                        if !p.is_zero() {
                            *m.at_mut(*k2 as usize, col) += &(&p * c);
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    /// Triangle operator acting on one edge factor of the extended space.
    pub fn triangle_operator(
        &self,
        kind: TriangleKind,
        plus: bool,
        edge: usize,
        x: &SparseVec,
    ) -> Result<LocalOp, ModelError> {
        let m = self.triangle_matrix(kind, plus, x)?;
        Ok(LocalOp {
            terms: vec![(Scalar::one(), vec![(edge, m)])],
        })
    }

    /// The vertex operator `A_v^h`: the coproduct legs of `h` distributed over
    /// the incident edges in cilium order, `L_+` on incoming ends and
    /// `L_-` after the antipode on outgoing ones.
    pub fn vertex_operator(&self, v: VertexId, hvec: &SparseVec) -> Result<LocalOp, ModelError> {
        let g = &self.graph;
        let h = &self.doubles.pair.h;
        let n = g.valence(v) as u32;
        let s_h = h.antipode_matrix().map_err(ModelError::Hopf)?;
        let ends: Vec<usize> = g.vertices[v].halfedges.clone();
        let legs = if n == 1 {
            hvec.iter().map(|(i, c)| (c.clone(), vec![*i])).collect()
        } else {
            comult_legs(h, 1, hvec, n).map_err(ModelError::Hopf)?
        };
        let mut terms = vec![];
        for (c, leg_list) in &legs {
            let mut factors = vec![];
            for (i, &end) in ends.iter().enumerate() {
                let e = crate::graph::end_edge(end);
                let leg = SparseVec::unit(leg_list[i]);
                let m = if crate::graph::is_target_end(end) {
                    self.triangle_matrix(TriangleKind::L, true, &leg)?
                } else {
                    let s_leg = {
                        let mut acc = vec![];
                        for (r, cr) in leg.iter() {
                            for row in 0..h.dim {
                                let a = s_h.at(row, *r as usize);
                                if !a.is_zero() {
                                    acc.push((row as u64, cr * a));
                                }
                            }
                        }
                        SparseVec::from_terms(acc)
                    };
                    self.triangle_matrix(TriangleKind::L, false, &s_leg)?
                };
                factors.push((e, m));
            }
            terms.push((c.clone(), factors));
        }
        Ok(LocalOp { terms })
    }

    /// The face operator `B_f^a` for the ciliated face anchored at the cilium
    /// of `v`: coproduct legs of `a` distributed over the face edges, with the
    /// first leg on the edge traversed last.
    pub fn face_operator(&self, v: VertexId, avec: &SparseVec) -> Result<LocalOp, ModelError> {
        let steps = self.graph.anchored_face(v);
        self.face_operator_from_steps(&steps, avec)
    }

    /// Face operator built from an explicit ciliated representative of the
    /// face word, in traversal order.
    pub fn face_operator_from_steps(
        &self,
        steps: &[Step],
        avec: &SparseVec,
    ) -> Result<LocalOp, ModelError> {
        let dual = &self.doubles.pair.dual;
        let n = steps.len() as u32;
        let s_dual = dual.antipode_matrix().map_err(ModelError::Hopf)?;
        let legs = if n == 1 {
            avec.iter().map(|(i, c)| (c.clone(), vec![*i])).collect()
        } else {
            comult_legs(dual, 1, avec, n).map_err(ModelError::Hopf)?
        };
        let mut terms = vec![];
        for (c, leg_list) in &legs {
            let mut factors = vec![];
            for (i, leg) in leg_list.iter().enumerate() {
                // Leg i (0-based) goes to the step traversed (n-1-i)-th.
                let step: Step = steps[(n as usize) - 1 - i];
                let leg = SparseVec::unit(*leg);
                let m = if step.forward {
                    self.triangle_matrix(TriangleKind::T, true, &leg)?
                } else {
                    let s_leg = {
                        let mut acc = vec![];
                        for (r, cr) in leg.iter() {
                            for row in 0..dual.dim {
                                let a = s_dual.at(row, *r as usize);
                                if !a.is_zero() {
                                    acc.push((row as u64, cr * a));
                                }
                            }
                        }
                        SparseVec::from_terms(acc)
                    };
                    self.triangle_matrix(TriangleKind::T, false, &s_leg)?
                };
                factors.push((step.edge, m));
            }
            terms.push((c.clone(), factors));
        }
        Ok(LocalOp { terms })
    }

    /// `rho`: realizes a carrier element as an operator on the extended space
    /// through the per-edge left module structure.
    pub fn rho(&self, x: &SparseVec) -> LocalOp {
        let dd = self.pair_dim() as u64;
        let e = self.num_edges();
        let mut terms = vec![];
        for (idx, c) in x.iter() {
            let mut factors = vec![];
            let mut rest = *idx;
            for slot in (0..e).rev() {
                let digit = (rest % dd) as usize;
                rest /= dd;
                // Identity factors can be dropped: phi(1 (x) 1) = id, but a
                // generic digit needs its matrix.
                factors.push((slot, self.phi_mats[digit].clone()));
            }
            factors.reverse();
            terms.push((c.clone(), factors));
        }
        LocalOp { terms }
    }

    /// Applies `rho(x)` to a state of the extended space.
    pub fn rho_apply(&self, x: &SparseVec, state: &SparseVec) -> SparseVec {
        self.rho(x)
            .apply(state, self.doubles.dim(), self.num_edges())
    }

    // Site representation and gauge action.

    /// `(1 (x) delta)` on the pair carrier for a dual element.
    pub fn pair_from_dual(&self, delta: &SparseVec) -> SparseVec {
        SparseVec::from_dense(&self.doubles.pair.h.unit).tensor(delta, self.doubles.dim() as u64)
    }

    /// `(z (x) 1)` on the pair carrier for an algebra element.
    pub fn pair_from_h(&self, z: &SparseVec) -> SparseVec {
        z.tensor(
            &SparseVec::from_dense(&self.doubles.pair.dual.unit),
            self.doubles.dim() as u64,
        )
    }

    /// The site representation `tau_v(delta (x) z) = Hol_{p_f(v)}(1 (x) delta)
    /// . Hol_{p_v}(z (x) 1)` with the Heisenberg product. The input lives on
    /// the double `H* (x) H`, indexed `delta * d + z`.
    pub fn site_rep(&self, v: VertexId, input: &SparseVec) -> Result<SparseVec, ModelError> {
        let d = self.doubles.dim() as u64;
        let pv = vertex_loop(&self.graph, v);
        let pf = face_loop(&self.graph, v);
        let mut out = SparseVec::new();
        for (flat, c) in input.iter() {
            let delta = flat / d;
            let z = flat % d;
            let hf = self.holonomy(
                &pf,
                &self.pair_from_dual(&SparseVec::unit(delta)),
                ProductKind::DoubleDual,
            )?;
            let hv = self.holonomy(
                &pv,
                &self.pair_from_h(&SparseVec::unit(z)),
                ProductKind::DoubleDual,
            )?;
            out = out.add(&self.carrier_mul(ProductKind::Heisenberg, &hf, &hv).scale(c));
        }
        Ok(out)
    }

    /// Right action of a single-vertex gauge transformation on a Heisenberg
    /// carrier element: `X <| g_v = tau_v(S(g_(2))) X tau_v(g_(1))`, with the
    /// coproduct and antipode of the double.
    pub fn gauge_act_vertex(
        &self,
        x: &SparseVec,
        v: VertexId,
        g: &SparseVec,
    ) -> Result<SparseVec, ModelError> {
        let double = &self.doubles.double;
        let s = double.antipode_matrix().map_err(ModelError::Hopf)?;
        let legs = comult_legs(double, 1, g, 2).map_err(ModelError::Hopf)?;
        let mut out = SparseVec::new();
        for (c, leg) in &legs {
            let g1 = SparseVec::unit(leg[0]);
            let g2 = {
                let mut acc = vec![];
                for row in 0..double.dim {
                    let a = s.at(row, leg[1] as usize);
                    if !a.is_zero() {
                        acc.push((row as u64, a.clone()));
                    }
                }
                SparseVec::from_terms(acc)
            };
            let left = self.site_rep(v, &g2)?;
            let right = self.site_rep(v, &g1)?;
            let prod = self.carrier_mul(
                ProductKind::Heisenberg,
                &self.carrier_mul(ProductKind::Heisenberg, &left, x),
                &right,
            );
            out = out.add(&prod.scale(c));
        }
        Ok(out)
    }

    /// Action of a pure tensor gauge transformation, one double element per
    /// vertex, applied vertex by vertex.
    pub fn gauge_act(&self, x: &SparseVec, gs: &[SparseVec]) -> Result<SparseVec, ModelError> {
        assert_eq!(gs.len(), self.graph.num_vertices());
        let mut acc = x.clone();
        for (v, g) in gs.iter().enumerate() {
            acc = self.gauge_act_vertex(&acc, v, g)?;
        }
        Ok(acc)
    }

    /// The Haar integral `eta (x) ell` of the double, on the `H* (x) H` basis.
    pub fn haar_double_vec(&self) -> SparseVec {
        self.eta.tensor(&self.ell, self.doubles.dim() as u64)
    }

    /// Gauge averaging: `Q_inv(X) = X <| (eta (x) ell)^(x V)`.
    pub fn q_inv(&self, x: &SparseVec) -> Result<SparseVec, ModelError> {
        let haar = self.haar_double_vec();
        let mut acc = x.clone();
        for v in 0..self.graph.num_vertices() {
            acc = self.gauge_act_vertex(&acc, v, &haar)?;
        }
        Ok(acc)
    }

    /// The flatness idempotent at a vertex: `G_v = Hol_{p_v}(ell (x) 1) .
    /// Hol_{p_f(v)}(1 (x) eta)`.
    pub fn flatness_idempotent(&self, v: VertexId) -> Result<SparseVec, ModelError> {
        let pv = vertex_loop(&self.graph, v);
        let pf = face_loop(&self.graph, v);
        let hv = self.holonomy(&pv, &self.pair_from_h(&self.ell), ProductKind::DoubleDual)?;
        let hf = self.holonomy(&pf, &self.pair_from_dual(&self.eta), ProductKind::DoubleDual)?;
        Ok(self.carrier_mul(ProductKind::Heisenberg, &hv, &hf))
    }

    /// `Q_flat(X) = X . prod_v G_v` in the Heisenberg product.
    pub fn q_flat(&self, x: &SparseVec) -> Result<SparseVec, ModelError> {
        let mut acc = x.clone();
        for v in 0..self.graph.num_vertices() {
            let g = self.flatness_idempotent(v)?;
            acc = self.carrier_mul(ProductKind::Heisenberg, &acc, &g);
        }
        Ok(acc)
    }

    /// The Hamiltonian as a local operator: the product of all vertex
    /// projectors `A_v^ell` and face projectors `B_f^eta`.
    pub fn hamiltonian_ops(&self) -> Result<(Vec<LocalOp>, Vec<LocalOp>), ModelError> {
        self.graph.require_regular()?;
        let mut a_ops = vec![];
        let mut b_ops = vec![];
        for v in 0..self.graph.num_vertices() {
            a_ops.push(self.vertex_operator(v, &self.ell.clone())?);
            b_ops.push(self.face_operator(v, &self.eta.clone())?);
        }
        Ok((a_ops, b_ops))
    }

    /// Diagonal coefficient of the Hamiltonian on one computational basis
    /// state: apply all face projectors, then all vertex projectors, and read
    /// the coefficient of the state itself.
    fn hamiltonian_diagonal(
        &self,
        a_ops: &[LocalOp],
        b_ops: &[LocalOp],
        state: u64,
    ) -> Scalar {
        let d = self.doubles.dim();
        let e = self.num_edges();
        let mut vec = SparseVec::unit(state);
        for b in b_ops {
            vec = b.apply(&vec, d, e);
            if vec.is_zero() {
                return Scalar::zero();
            }
        }
        for a in a_ops {
            vec = a.apply(&vec, d, e);
            if vec.is_zero() {
                return Scalar::zero();
            }
        }
        vec.get(state)
    }

    /// Protected space dimension: the exact trace of the Hamiltonian
    /// projector, computed state by state with only local operators applied.
    pub fn protected_dimension(&self, mode: ExecMode) -> Result<u64, ModelError> {
        let (a_ops, b_ops) = self.hamiltonian_ops()?;
        let total = self.extended_dim();
        let trace = map_reduce(
            mode,
            total,
            Scalar::zero,
            |s| self.hamiltonian_diagonal(&a_ops, &b_ops, s),
            |x, y| x + y,
        );
        let as_int = trace
            .as_integer()
            .unwrap_or_else(|| panic!("projector trace must be an integer, got {trace}"));
        Ok(u64::try_from(as_int).expect("projector trace is a nonnegative machine integer"))
    }

    /// Dense-rank oracle for the protected dimension; requires the extended
    /// dimension to stay below `cap`.
    pub fn protected_dimension_dense(&self, cap: u64) -> Result<u64, ModelError> {
        let dim = self.extended_dim();
        if dim > cap {
            return Err(ModelError::ResourceCap(format!(
                "extended space has dimension {dim} > cap {cap}; use the sparse trace"
            )));
        }
        let (a_ops, b_ops) = self.hamiltonian_ops()?;
        let d = self.doubles.dim();
        let e = self.num_edges();
        let mut cols = crate::linalg::SparseColumns::new(dim);
        for s in 0..dim {
            let mut vec = SparseVec::unit(s);
            for b in &b_ops {
                vec = b.apply(&vec, d, e);
            }
            for a in &a_ops {
                vec = a.apply(&vec, d, e);
            }
            cols.push(vec);
        }
        Ok(cols.rank() as u64)
    }

    /// Helper: the carrier element `(x)_e` inserted at one edge.
    pub fn insert_at_edge(&self, edge: usize, x: &SparseVec) -> SparseVec {
        insert(
            &self.heis_e,
            &[edge],
            &Element::from_vec(&Space::new(self.doubles.heisenberg.clone(), 1), x.clone()),
        )
        .vec
    }

    /// Both edge paths for an edge.
    pub fn edge_paths(&self, e: usize) -> (PathWord, PathWord) {
        edge_paths(&self.graph, e)
    }
}
