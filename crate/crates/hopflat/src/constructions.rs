//! Builders for the algebras the models run on: group algebras and their duals,
//! the Drinfeld double and its dual, the Heisenberg double, Haar integrals and
//! the projectors and structure maps derived from them.
//!
//! Conventions: the double lives on `H* (x) H` with basis `a^i (x) x_j` at flat
//! index `i*d + j`; its dual lives on `H (x) H*` with basis `x_i (x) a^j` at
//! flat index `i*d + j`, which is exactly the dual basis under the canonical
//! pairing. The Heisenberg double shares the `H (x) H*` carrier and is an
//! algebra only.

use crate::hopf::{
    check_hopf_axioms, comult_legs, dual_hopf, mul_power, ComultTable, Element, HopfAlgebraSpec,
    HopfError, MultTable, Space,
};
use crate::linalg::{solve_linear, Matrix, Scalar, SparseVec};
use serde::Deserialize;
use std::sync::Arc;

/// A Hopf algebra together with its dual on the dual basis.
#[derive(Clone)]
pub struct PairedHopf {
    pub h: Arc<HopfAlgebraSpec>,
    pub dual: Arc<HopfAlgebraSpec>,
}

impl PairedHopf {
    pub fn new(h: Arc<HopfAlgebraSpec>) -> Result<Self, HopfError> {
        let dual = Arc::new(dual_hopf(&h)?);
        Ok(PairedHopf { h, dual })
    }

    pub fn dim(&self) -> usize {
        self.h.dim
    }
}

/// Builds the group algebra of a finite group given by its multiplication
/// table. The table is checked to be a group before anything is constructed.
pub fn group_algebra(
    label: &str,
    table: &[Vec<usize>],
    unit: usize,
    inverses: &[usize],
) -> Result<HopfAlgebraSpec, HopfError> {
    let n = table.len();
    let bad = |m: String| HopfError::InvalidSpec(label.to_string(), m);
    if n == 0 || inverses.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(bad("table/inverses shape mismatch".into()));
    }
    let t = |i: usize, j: usize| -> Result<usize, HopfError> {
        let v = table[i][j];
        if v >= n {
            Err(bad(format!("table entry {v} out of range")))
        } else {
            Ok(v)
        }
    };
    for i in 0..n {
        if t(unit, i)? != i || t(i, unit)? != i {
            return Err(bad(format!("{unit} is not a two-sided unit")));
        }
        if t(i, inverses[i])? != unit || t(inverses[i], i)? != unit {
            return Err(bad(format!("{} is not the inverse of {i}", inverses[i])));
        }
        for j in 0..n {
            for k in 0..n {
                if t(t(i, j)?, k)? != t(i, t(j, k)?)? {
                    return Err(bad(format!("associativity fails at ({i},{j},{k})")));
                }
            }
        }
    }
    let mut mult: MultTable = vec![vec![]; n * n];
    for i in 0..n {
        for j in 0..n {
            mult[i * n + j].push((table[i][j] as u32, Scalar::one()));
        }
    }
    let mut unit_vec = vec![Scalar::zero(); n];
    unit_vec[unit] = Scalar::one();
    let comult: ComultTable = (0..n).map(|i| vec![(i as u32, i as u32, Scalar::one())]).collect();
    let counit = vec![Scalar::one(); n];
    let mut antipode = Matrix::zero(n, n);
    for (i, &inv) in inverses.iter().enumerate() {
        *antipode.at_mut(inv, i) = Scalar::one();
    }
    Ok(HopfAlgebraSpec {
        label: label.to_string(),
        dim: n,
        mult,
        unit: unit_vec,
        comult: Some(comult),
        counit: Some(counit),
        antipode: Some(antipode),
        r_matrix: None,
    })
}

/// CLI-facing group table format.
#[derive(Deserialize)]
pub struct GroupTableJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
    pub inverses: Vec<usize>,
    #[serde(default)]
    pub label: Option<String>,
}

pub fn group_algebra_from_json(text: &str) -> Result<HopfAlgebraSpec, HopfError> {
    let json: GroupTableJson =
        serde_json::from_str(text).map_err(|e| HopfError::InvalidSpec("group json".into(), e.to_string()))?;
    if json.table.len() != json.order {
        return Err(HopfError::InvalidSpec(
            "group json".into(),
            "table size != order".into(),
        ));
    }
    group_algebra(
        json.label.as_deref().unwrap_or("group"),
        &json.table,
        json.unit,
        &json.inverses,
    )
}

fn pairing_delta(i: u64, j: u64) -> Scalar {
    if i == j {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// Applies a matrix to a single basis index, returning the sparse image.
fn mat_col(m: &Matrix, col: usize) -> SparseVec {
    SparseVec::from_terms(
        (0..m.rows)
            .filter(|&r| !m.at(r, col).is_zero())
            .map(|r| (r as u64, m.at(r, col).clone()))
            .collect(),
    )
}

/// The Drinfeld double `D(H)` on `H* (x) H`, with its universal R-matrix.
pub fn drinfeld_double(pair: &PairedHopf) -> Result<HopfAlgebraSpec, HopfError> {
    let d = pair.dim();
    let h = &pair.h;
    let hd = &pair.dual;
    let dd = d * d;
    let s_dual_inv = hd.antipode_inv_matrix()?;
    let s_dual = hd.antipode_matrix()?;
    let s_h = h.antipode_matrix()?;

    // Multiplication: (a (x) h) (a' (x) h') =
    //   <a'_(3), h_(1)> <S^-1(a'_(1)), h_(3)> a a'_(2) (x) h_(2) h'.
    let mut mult: MultTable = vec![vec![]; dd * dd];
    for ai in 0..d {
        for hj in 0..d {
            let h_legs = comult_legs(h, 1, &SparseVec::unit(hj as u64), 3)?;
            for ak in 0..d {
                let a_legs = comult_legs(hd, 1, &SparseVec::unit(ak as u64), 3)?;
                for hl in 0..d {
                    let mut acc: Vec<(u64, Scalar)> = vec![];
                    for (ca, alegs) in &a_legs {
                        let (a1, a2, a3) = (alegs[0], alegs[1], alegs[2]);
                        for (ch, hlegs) in &h_legs {
                            let (h1, h2, h3) = (hlegs[0], hlegs[1], hlegs[2]);
                            // <a'_(3), h_(1)>
                            let p1 = pairing_delta(a3, h1);
                            if p1.is_zero() {
                                continue;
                            }
                            // <S^-1(a'_(1)), h_(3)>: coefficient of a^{h3} in S^-1(a^{a1}).
                            let p2 = s_dual_inv.at(h3 as usize, a1 as usize).clone();
                            if p2.is_zero() {
                                continue;
                            }
                            let coeff = ca * ch * p1 * p2;
                            for (m, cm) in hd.mul_basis(ai, a2 as usize) {
                                for (n, cn) in h.mul_basis(h2 as usize, hl) {
                                    acc.push((
                                        *m as u64 * d as u64 + *n as u64,
                                        &coeff * &(cm * cn),
                                    ));
                                }
                            }
                        }
                    }
                    let prod = SparseVec::from_terms(acc);
                    mult[(ai * d + hj) * dd + (ak * d + hl)] =
                        prod.iter().map(|(x, c)| (*x as u32, c.clone())).collect();
                }
            }
        }
    }

    // Unit 1_{H*} (x) 1_H.
    let unit = SparseVec::from_dense(&hd.unit)
        .tensor(&SparseVec::from_dense(&h.unit), d as u64)
        .to_dense(dd);

    // Delta(a (x) h) = a_(2) (x) h_(1) (x) a_(1) (x) h_(2).
    let mut comult: ComultTable = vec![vec![]; dd];
    for ai in 0..d {
        for hj in 0..d {
            let mut rows = vec![];
            for (a1, a2, ca) in pair.dual.comult.as_ref().unwrap()[ai].iter() {
                for (h1, h2, ch) in pair.h.comult.as_ref().unwrap()[hj].iter() {
                    rows.push((
                        *a2 * d as u32 + *h1,
                        *a1 * d as u32 + *h2,
                        ca * ch,
                    ));
                }
            }
            comult[ai * d + hj] = rows;
        }
    }

    // eps(a (x) h) = eps(a) eps(h).
    let mut counit = vec![Scalar::zero(); dd];
    for ai in 0..d {
        for hj in 0..d {
            counit[ai * d + hj] =
                &pair.dual.counit.as_ref().unwrap()[ai] * &pair.h.counit.as_ref().unwrap()[hj];
        }
    }

    // S(a (x) h) = <a_(1), h_(3)> <S^-1(a_(3)), h_(1)> S(a_(2)) (x) S(h_(2)).
    let mut antipode = Matrix::zero(dd, dd);
    for ai in 0..d {
        for hj in 0..d {
            let a_legs = comult_legs(hd, 1, &SparseVec::unit(ai as u64), 3)?;
            let h_legs = comult_legs(h, 1, &SparseVec::unit(hj as u64), 3)?;
            for (ca, alegs) in &a_legs {
                for (ch, hlegs) in &h_legs {
                    let p1 = pairing_delta(alegs[0], hlegs[2]);
                    if p1.is_zero() {
                        continue;
                    }
                    let p2 = s_dual_inv.at(hlegs[0] as usize, alegs[2] as usize).clone();
                    if p2.is_zero() {
                        continue;
                    }
                    let coeff = ca * ch * p1 * p2;
                    let sa = mat_col(s_dual, alegs[1] as usize);
                    let sh = mat_col(s_h, hlegs[1] as usize);
                    for (m, cm) in sa.iter() {
                        for (n, cn) in sh.iter() {
                            let row = (*m as usize) * d + *n as usize;
                            *antipode.at_mut(row, ai * d + hj) += &(&coeff * &(cm * cn));
                        }
                    }
                }
            }
        }
    }

    // R = sum_i (1 (x) x_i) (x) (a^i (x) 1).
    let mut r_terms = vec![];
    let unit_dual = SparseVec::from_dense(&hd.unit);
    let unit_h = SparseVec::from_dense(&h.unit);
    for i in 0..d as u64 {
        for (a, ca) in unit_dual.iter() {
            for (b, cb) in unit_h.iter() {
                let first = a * d as u64 + i;
                let second = i * d as u64 + b;
                r_terms.push((first * dd as u64 + second, ca * cb));
            }
        }
    }

    Ok(HopfAlgebraSpec {
        label: format!("D({})", pair.h.label),
        dim: dd,
        mult,
        unit,
        comult: Some(comult),
        counit: Some(counit),
        antipode: Some(antipode),
        r_matrix: Some(SparseVec::from_terms(r_terms)),
    })
}

/// The dual double `D(H)*` on `H (x) H*`: multiplication opposite in `H` and
/// direct in `H*`, with the coproduct and antipode carrying the double sums
/// over the dual bases.
pub fn double_dual(pair: &PairedHopf) -> Result<HopfAlgebraSpec, HopfError> {
    let d = pair.dim();
    let h = &pair.h;
    let hd = &pair.dual;
    let dd = d * d;
    let s_h = h.antipode_matrix()?;
    let s_h_inv = h.antipode_inv_matrix()?;
    let s_dual = hd.antipode_matrix()?;

    // (y (x) g) (z (x) dl) = z y (x) g dl.
    let mut mult: MultTable = vec![vec![]; dd * dd];
    for yi in 0..d {
        for gj in 0..d {
            for zk in 0..d {
                for dl in 0..d {
                    let mut acc = vec![];
                    for (m, cm) in h.mul_basis(zk, yi) {
                        for (n, cn) in hd.mul_basis(gj, dl) {
                            acc.push((*m as u64 * d as u64 + *n as u64, cm * cn));
                        }
                    }
                    mult[(yi * d + gj) * dd + (zk * d + dl)] = SparseVec::from_terms(acc)
                        .iter()
                        .map(|(x, c)| (*x as u32, c.clone()))
                        .collect();
                }
            }
        }
    }

    let unit = SparseVec::from_dense(&h.unit)
        .tensor(&SparseVec::from_dense(&hd.unit), d as u64)
        .to_dense(dd);

    // Delta(y (x) g) = sum_{i,j} (y_(1) (x) a^i g_(1) a^j) (x) (S(x_j) y_(2) x_i (x) g_(2)).
    let mut comult: ComultTable = vec![vec![]; dd];
    for yi in 0..d {
        for gj in 0..d {
            let mut acc: Vec<(u64, u64, Scalar)> = vec![];
            for (y1, y2, cy) in pair.h.comult.as_ref().unwrap()[yi].iter() {
                for (g1, g2, cg) in pair.dual.comult.as_ref().unwrap()[gj].iter() {
                    for bi in 0..d {
                        for bj in 0..d {
                            // a^i g_(1) a^j in H*.
                            let mut left_dual = vec![];
                            for (m, cm) in hd.mul_basis(bi, *g1 as usize) {
                                for (n, cn) in hd.mul_basis(*m as usize, bj) {
                                    left_dual.push((*n as u64, cm * cn));
                                }
                            }
                            let left_dual = SparseVec::from_terms(left_dual);
                            if left_dual.is_zero() {
                                continue;
                            }
                            // S(x_j) y_(2) x_i in H.
                            let sxj = mat_col(s_h, bj);
                            let mut right_h = vec![];
                            for (sj, cs) in sxj.iter() {
                                for (m, cm) in h.mul_basis(*sj as usize, *y2 as usize) {
                                    for (n, cn) in h.mul_basis(*m as usize, bi) {
                                        right_h.push((*n as u64, cs * &(cm * cn)));
                                    }
                                }
                            }
                            let right_h = SparseVec::from_terms(right_h);
                            if right_h.is_zero() {
                                continue;
                            }
                            let c = cy * cg;
                            for (ld, cld) in left_dual.iter() {
                                for (rh, crh) in right_h.iter() {
                                    acc.push((
                                        *y1 as u64 * d as u64 + ld,
                                        rh * d as u64 + *g2 as u64,
                                        &c * &(cld * crh),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            // Merge duplicate (j, k) pairs.
            let merged = SparseVec::from_terms(
                acc.iter()
                    .map(|(a, b, c)| (a * dd as u64 + b, c.clone()))
                    .collect(),
            );
            comult[yi * d + gj] = merged
                .iter()
                .map(|(flat, c)| {
                    (
                        (flat / dd as u64) as u32,
                        (flat % dd as u64) as u32,
                        c.clone(),
                    )
                })
                .collect();
        }
    }

    let mut counit = vec![Scalar::zero(); dd];
    for yi in 0..d {
        for gj in 0..d {
            counit[yi * d + gj] =
                &pair.h.counit.as_ref().unwrap()[yi] * &pair.dual.counit.as_ref().unwrap()[gj];
        }
    }

    // S(y (x) g) = sum_{i,j} x_i S^-1(y) x_j (x) S(a^j) S(g) a^i.
    let mut antipode = Matrix::zero(dd, dd);
    for yi in 0..d {
        for gj in 0..d {
            let syi = mat_col(&s_h_inv, yi);
            let sgj = mat_col(s_dual, gj);
            for bi in 0..d {
                for bj in 0..d {
                    let mut hpart = vec![];
                    for (sy, cs) in syi.iter() {
                        for (m, cm) in h.mul_basis(bi, *sy as usize) {
                            for (n, cn) in h.mul_basis(*m as usize, bj) {
                                hpart.push((*n as u64, cs * &(cm * cn)));
                            }
                        }
                    }
                    let hpart = SparseVec::from_terms(hpart);
                    if hpart.is_zero() {
                        continue;
                    }
                    let saj = mat_col(s_dual, bj);
                    let mut dpart = vec![];
                    for (sa, ca) in saj.iter() {
                        for (sg, cg) in sgj.iter() {
                            for (m, cm) in hd.mul_basis(*sa as usize, *sg as usize) {
                                for (n, cn) in hd.mul_basis(*m as usize, bi) {
                                    dpart.push((*n as u64, &(ca * cg) * &(cm * cn)));
                                }
                            }
                        }
                    }
                    let dpart = SparseVec::from_terms(dpart);
                    for (hh, chh) in hpart.iter() {
                        for (dd_, cdd) in dpart.iter() {
                            let row = (*hh as usize) * d + *dd_ as usize;
                            *antipode.at_mut(row, yi * d + gj) += &(chh * cdd);
                        }
                    }
                }
            }
        }
    }

    Ok(HopfAlgebraSpec {
        label: format!("D({})*", pair.h.label),
        dim: dd,
        mult,
        unit,
        comult: Some(comult),
        counit: Some(counit),
        antipode: Some(antipode),
        r_matrix: None,
    })
}

/// The Heisenberg double `H(H) = H #_R H*` for the right regular action:
/// `(h (x) a)(h' (x) a') = <a_(1), h'_(2)> h h'_(1) (x) a_(2) a'`.
/// Associative with unit `1 (x) 1`; no coalgebra structure.
pub fn heisenberg_double(pair: &PairedHopf) -> Result<HopfAlgebraSpec, HopfError> {
    let d = pair.dim();
    let h = &pair.h;
    let hd = &pair.dual;
    let dd = d * d;
    let mut mult: MultTable = vec![vec![]; dd * dd];
    for hi in 0..d {
        for aj in 0..d {
            let a_legs = pair.dual.comult.as_ref().unwrap()[aj].clone();
            for hk in 0..d {
                let h_legs = pair.h.comult.as_ref().unwrap()[hk].clone();
                for al in 0..d {
                    let mut acc = vec![];
                    for (a1, a2, ca) in &a_legs {
                        for (h1, h2, ch) in &h_legs {
                            let p = pairing_delta(*a1 as u64, *h2 as u64);
                            if p.is_zero() {
                                continue;
                            }
                            let c = ca * ch;
                            for (m, cm) in h.mul_basis(hi, *h1 as usize) {
                                for (n, cn) in hd.mul_basis(*a2 as usize, al) {
                                    acc.push((*m as u64 * d as u64 + *n as u64, &c * &(cm * cn)));
                                }
                            }
                        }
                    }
                    mult[(hi * d + aj) * dd + (hk * d + al)] = SparseVec::from_terms(acc)
                        .iter()
                        .map(|(x, c)| (*x as u32, c.clone()))
                        .collect();
                }
            }
        }
    }
    let unit = SparseVec::from_dense(&h.unit)
        .tensor(&SparseVec::from_dense(&hd.unit), d as u64)
        .to_dense(dd);
    Ok(HopfAlgebraSpec {
        label: format!("Heis({})", pair.h.label),
        dim: dd,
        mult,
        unit,
        comult: None,
        counit: None,
        antipode: None,
        r_matrix: None,
    })
}

/// Result of a Haar computation, with every property of the uniqueness remark
/// verified before the element is returned.
pub struct HaarIntegral {
    pub element: Element,
}

/// Computes the unique normalized two-sided integral by solving the linear
/// system `h x = x h = eps(h) x` for all basis `h`, `eps(x) = 1`, then verifies
/// `S(l) = l`, cyclic invariance of the iterated coproducts, the separability
/// idempotent property, and the evaluation identity against the dual.
pub fn haar_integral(spec: &Arc<HopfAlgebraSpec>) -> Result<Element, HopfError> {
    let d = spec.dim;
    let sp = Space::new(spec.clone(), 1);
    let eps = spec
        .counit
        .as_ref()
        .ok_or(HopfError::MissingStructure(spec.label.clone(), "counit"))?;
    // Rows: for each basis h and each coordinate r: (L_h - eps(h) I) x = 0 and
    // (R_h - eps(h) I) x = 0; final row: eps(x) = 1.
    let nrows = 2 * d * d + 1;
    let mut m = Matrix::zero(nrows, d);
    let mut rhs = vec![Scalar::zero(); nrows];
    for hi in 0..d {
        for col in 0..d {
            // e_hi * e_col and e_col * e_hi.
            for (k, c) in spec.mul_basis(hi, col) {
                *m.at_mut(hi * d + *k as usize, col) += c;
            }
            for (k, c) in spec.mul_basis(col, hi) {
                *m.at_mut(d * d + hi * d + *k as usize, col) += c;
            }
        }
        for r in 0..d {
            let e = &eps[hi];
            if !e.is_zero() {
                let v = m.at(hi * d + r, r).clone() - e.clone();
                *m.at_mut(hi * d + r, r) = v;
                let v = m.at(d * d + hi * d + r, r).clone() - e.clone();
                *m.at_mut(d * d + hi * d + r, r) = v;
            }
        }
    }
    for col in 0..d {
        *m.at_mut(2 * d * d, col) = eps[col].clone();
    }
    rhs[2 * d * d] = Scalar::one();
    let x = solve_linear(&m, &rhs).ok_or_else(|| {
        HopfError::InvalidSpec(
            spec.label.clone(),
            "no normalized two-sided integral: not semisimple or char divides order".into(),
        )
    })?;
    let ell = Element::from_vec(&sp, SparseVec::from_dense(&x));
    verify_haar_properties(spec, &ell)?;
    Ok(ell)
}

/// Checks the structural properties of a Haar integral exactly, failing with a
/// description of the first violated identity.
pub fn verify_haar_properties(spec: &Arc<HopfAlgebraSpec>, ell: &Element) -> Result<(), HopfError> {
    let fail = |m: &str| Err(HopfError::InvalidSpec(spec.label.clone(), m.to_string()));
    if ell.antipode()? != *ell {
        return fail("S(l) != l");
    }
    // Cyclic invariance of the 2- and 3-leg coproducts.
    for n in [2u32, 3] {
        let legs = comult_legs(spec, 1, &ell.vec, n)?;
        let rotated = SparseVec::from_terms(
            legs.iter()
                .map(|(c, l)| {
                    let mut idx = 0u64;
                    for k in 0..l.len() {
                        idx = idx * spec.dim as u64 + l[(k + 1) % l.len()];
                    }
                    (idx, c.clone())
                })
                .collect(),
        );
        let plain = SparseVec::from_terms(
            legs.iter()
                .map(|(c, l)| {
                    let mut idx = 0u64;
                    for &leg in l {
                        idx = idx * spec.dim as u64 + leg;
                    }
                    (idx, c.clone())
                })
                .collect(),
        );
        if rotated != plain {
            return fail("iterated coproduct of l is not cyclically invariant");
        }
    }
    // e = l_(1) (x) S(l_(2)) is a separability idempotent:
    // (x (x) 1) e = e (1 (x) x) for all basis x, and m(e) = 1.
    let sp2 = Space::new(spec.clone(), 2);
    let legs = comult_legs(spec, 1, &ell.vec, 2)?;
    let s = spec.antipode_matrix()?;
    let mut e = Element::zero(&sp2);
    for (c, l) in &legs {
        let right = mat_col(s, l[1] as usize);
        for (r, cr) in right.iter() {
            e = e
                .add(&Element::from_vec(&sp2, SparseVec::singleton(l[0] * spec.dim as u64 + r, c * cr)))
                .unwrap();
        }
    }
    let m_of_e = {
        let mut acc = Element::zero(&Space::new(spec.clone(), 1));
        for (flat, c) in e.vec.iter() {
            let i = (*flat / spec.dim as u64) as usize;
            let j = (*flat % spec.dim as u64) as usize;
            for (k, ck) in spec.mul_basis(i, j) {
                acc = acc
                    .add(&Element::from_vec(
                        &acc.space.clone(),
                        SparseVec::singleton(*k as u64, c * ck),
                    ))
                    .unwrap();
            }
        }
        acc
    };
    if m_of_e.vec != SparseVec::from_dense(&spec.unit) {
        return fail("m(e) != 1 for the separability idempotent");
    }
    let sp1 = Space::new(spec.clone(), 1);
    let unit1 = Element::from_vec(&sp1, SparseVec::from_dense(&spec.unit));
    for x in 0..spec.dim {
        let bx = Element::basis(&sp1, x as u64);
        let left = bx.tensor(&unit1)?.multiply(&e)?;
        let right = e.multiply(&unit1.tensor(&bx)?)?;
        if left != right {
            return fail("(x (x) 1) e != e (1 (x) x)");
        }
    }
    // <a_(1), l> a_(2) = <a, l> 1 for all basis a of the dual.
    let dual = dual_hopf(spec)?;
    let unit_dual = SparseVec::from_dense(&dual.unit);
    for a in 0..spec.dim {
        let mut lhs = vec![];
        for (a1, a2, c) in dual.comult.as_ref().unwrap()[a].iter() {
            let p = ell.vec.get(*a1 as u64);
            if !p.is_zero() {
                lhs.push((*a2 as u64, c * &p));
            }
        }
        let lhs = SparseVec::from_terms(lhs);
        let rhs = unit_dual.scale(&ell.vec.get(a as u64));
        if lhs != rhs {
            return fail("<a_(1), l> a_(2) != <a, l> 1");
        }
    }
    Ok(())
}

/// The eight module actions of a Hopf algebra on itself and on its dual.
/// All are returned as functions of sparse coordinate vectors.
pub struct RegularActions {
    pub pair: PairedHopf,
}

impl RegularActions {
    pub fn new(pair: &PairedHopf) -> Self {
        RegularActions { pair: pair.clone() }
    }

    pub fn left_regular(&self, h: &SparseVec, k: &SparseVec) -> SparseVec {
        mul_power(&self.pair.h, 1, h, k)
    }

    pub fn right_regular(&self, k: &SparseVec, h: &SparseVec) -> SparseVec {
        mul_power(&self.pair.h, 1, k, h)
    }

    /// `h |>* a = <a_(2), h> a_(1)`.
    pub fn left_regular_dual(&self, h: &SparseVec, a: &SparseVec) -> SparseVec {
        let legs = comult_legs(&self.pair.dual, 1, a, 2).unwrap();
        SparseVec::from_terms(
            legs.iter()
                .map(|(c, l)| (l[0], c * &h.get(l[1])))
                .collect(),
        )
    }

    /// `a <|* h = <a_(1), h> a_(2)`.
    pub fn right_regular_dual(&self, a: &SparseVec, h: &SparseVec) -> SparseVec {
        let legs = comult_legs(&self.pair.dual, 1, a, 2).unwrap();
        SparseVec::from_terms(
            legs.iter()
                .map(|(c, l)| (l[1], c * &h.get(l[0])))
                .collect(),
        )
    }

    /// `h |>_ad k = h_(1) k S(h_(2))`.
    pub fn left_adjoint(&self, h: &SparseVec, k: &SparseVec) -> SparseVec {
        let s = self.pair.h.antipode_matrix().unwrap();
        let legs = comult_legs(&self.pair.h, 1, h, 2).unwrap();
        let mut acc = SparseVec::new();
        for (c, l) in &legs {
            let left = mul_power(&self.pair.h, 1, &SparseVec::unit(l[0]), k);
            let prod = mul_power(&self.pair.h, 1, &left, &mat_col(s, l[1] as usize));
            acc = acc.add(&prod.scale(c));
        }
        acc
    }

    /// `k <|_ad h = S^-1(h_(1)) k h_(2)`.
    pub fn right_adjoint(&self, k: &SparseVec, h: &SparseVec) -> SparseVec {
        let s_inv = self.pair.h.antipode_inv_matrix().unwrap();
        let legs = comult_legs(&self.pair.h, 1, h, 2).unwrap();
        let mut acc = SparseVec::new();
        for (c, l) in &legs {
            let left = mul_power(&self.pair.h, 1, &mat_col(&s_inv, l[0] as usize), k);
            let prod = mul_power(&self.pair.h, 1, &left, &SparseVec::unit(l[1]));
            acc = acc.add(&prod.scale(c));
        }
        acc
    }

    /// `h |>*_ad a = <S^-1(a_(1)) a_(3), h> a_(2)`.
    pub fn left_coadjoint(&self, h: &SparseVec, a: &SparseVec) -> SparseVec {
        let s_inv = self.pair.dual.antipode_inv_matrix().unwrap();
        let legs = comult_legs(&self.pair.dual, 1, a, 3).unwrap();
        let mut acc = vec![];
        for (c, l) in &legs {
            let sa1 = mat_col(&s_inv, l[0] as usize);
            let prod = mul_power(&self.pair.dual, 1, &sa1, &SparseVec::unit(l[2]));
            let p = prod.dot(h);
            if !p.is_zero() {
                acc.push((l[1], c * &p));
            }
        }
        SparseVec::from_terms(acc)
    }

    /// `a <|*_ad h = <a_(1) S(a_(3)), h> a_(2)`.
    pub fn right_coadjoint(&self, a: &SparseVec, h: &SparseVec) -> SparseVec {
        let s = self.pair.dual.antipode_matrix().unwrap();
        let legs = comult_legs(&self.pair.dual, 1, a, 3).unwrap();
        let mut acc = vec![];
        for (c, l) in &legs {
            let sa3 = mat_col(s, l[2] as usize);
            let prod = mul_power(&self.pair.dual, 1, &SparseVec::unit(l[0]), &sa3);
            let p = prod.dot(h);
            if !p.is_zero() {
                acc.push((l[1], c * &p));
            }
        }
        SparseVec::from_terms(acc)
    }
}

/// The character-algebra projector `pi_ad(a) = a <|*_ad l` as a matrix on the
/// dual, together with its left-handed counterpart.
pub struct CharProjector {
    pub right: Matrix,
    pub left: Matrix,
    pub image_dim: usize,
}

pub fn char_projector(pair: &PairedHopf) -> Result<CharProjector, HopfError> {
    let d = pair.dim();
    let acts = RegularActions::new(pair);
    let ell = haar_integral(&pair.h)?;
    let mut right = Matrix::zero(d, d);
    let mut left = Matrix::zero(d, d);
    for a in 0..d {
        let img_r = acts.right_coadjoint(&SparseVec::unit(a as u64), &ell.vec);
        right.set_column(a, &img_r);
        let img_l = acts.left_coadjoint(&ell.vec, &SparseVec::unit(a as u64));
        left.set_column(a, &img_l);
    }
    let image_dim = crate::linalg::rank(&right);
    Ok(CharProjector { right, left, image_dim })
}

/// Returns whether `Delta(b) = Delta^op(b)` for an element of the dual.
pub fn is_cocommutative_elem(dual: &Arc<HopfAlgebraSpec>, b: &SparseVec) -> bool {
    let legs = comult_legs(dual, 1, b, 2).unwrap();
    let d = dual.dim as u64;
    let plain = SparseVec::from_terms(legs.iter().map(|(c, l)| (l[0] * d + l[1], c.clone())).collect());
    let flip = SparseVec::from_terms(legs.iter().map(|(c, l)| (l[1] * d + l[0], c.clone())).collect());
    plain == flip
}

/// The bundle of algebras attached to one base Hopf algebra: its dual, the
/// Drinfeld double, the dual double and the Heisenberg double, with the shared
/// `H (x) H*` carrier spaces.
pub struct Doubles {
    pub pair: PairedHopf,
    pub double: Arc<HopfAlgebraSpec>,
    pub double_dual: Arc<HopfAlgebraSpec>,
    pub heisenberg: Arc<HopfAlgebraSpec>,
}

impl Doubles {
    pub fn build(h: Arc<HopfAlgebraSpec>) -> Result<Self, HopfError> {
        let pair = PairedHopf::new(h)?;
        let double = Arc::new(drinfeld_double(&pair)?);
        let ddual = Arc::new(double_dual(&pair)?);
        let heis = Arc::new(heisenberg_double(&pair)?);
        Ok(Doubles {
            pair,
            double,
            double_dual: ddual,
            heisenberg: heis,
        })
    }

    pub fn dim(&self) -> usize {
        self.pair.dim()
    }

    /// `eta (x) ell`, the Haar integral of `D(H)` on the `H* (x) H` carrier.
    pub fn haar_double(&self) -> Result<Element, HopfError> {
        haar_integral(&self.double)
    }
}

/// Structure maps on the Heisenberg double derived from the coalgebra of the
/// dual double: the antipode `S_D` and the four splittings into two factors.
pub struct HeisenbergMaps {
    pub s_d: Matrix,
    /// Images of the carrier basis under each map, as power-2 sparse vectors.
    pub phi1: Vec<SparseVec>,
    pub phi2: Vec<SparseVec>,
    pub xi1: Vec<SparseVec>,
    pub xi2: Vec<SparseVec>,
}

pub fn hd_structure_maps(doubles: &Doubles) -> Result<HeisenbergMaps, HopfError> {
    let dd = doubles.double_dual.dim;
    let d = doubles.dim();
    let s_d = doubles.double_dual.antipode_matrix()?.clone();
    let eps_h = doubles.pair.h.counit.as_ref().unwrap();
    let eps_dual = doubles.pair.dual.counit.as_ref().unwrap();
    let s_h = doubles.pair.h.antipode_matrix()?;
    let s_dual = doubles.pair.dual.antipode_matrix()?;
    let unit_h = SparseVec::from_dense(&doubles.pair.h.unit);
    let unit_dual = SparseVec::from_dense(&doubles.pair.dual.unit);

    let mut phi1 = vec![SparseVec::new(); dd];
    let mut phi2 = vec![SparseVec::new(); dd];
    let mut xi1 = vec![SparseVec::new(); dd];
    let mut xi2 = vec![SparseVec::new(); dd];
    for b in 0..dd {
        let legs = comult_legs(&doubles.double_dual, 1, &SparseVec::unit(b as u64), 2)?;
        let mut t_phi1 = vec![];
        let mut t_phi2 = vec![];
        let mut t_xi1 = vec![];
        let mut t_xi2 = vec![];
        for (c, l) in &legs {
            let (y1, g1) = ((l[0] / d as u64) as usize, (l[0] % d as u64) as usize);
            let (y2, g2) = ((l[1] / d as u64) as usize, (l[1] % d as u64) as usize);
            // phi1: (id (x) eps) on the first factor: (y1 (x) 1) (x) leg2.
            if !eps_dual[g1].is_zero() {
                for (u, cu) in unit_dual.iter() {
                    t_phi1.push((
                        (y1 as u64 * d as u64 + u) * dd as u64 + l[1],
                        c * &(&eps_dual[g1] * cu),
                    ));
                }
            }
            // phi2: (eps (x) id) on the second factor: leg1 (x) (1 (x) g2).
            if !eps_h[y2].is_zero() {
                for (u, cu) in unit_h.iter() {
                    t_phi2.push((
                        l[0] * dd as u64 + (u * d as u64 + g2 as u64),
                        c * &(&eps_h[y2] * cu),
                    ));
                }
            }
            // xi1: (S (x) eps) on the second factor: leg1 (x) (S(y2) (x) 1).
            if !eps_dual[g2].is_zero() {
                let sy = mat_col(s_h, y2);
                for (sv, cs) in sy.iter() {
                    for (u, cu) in unit_dual.iter() {
                        t_xi1.push((
                            l[0] * dd as u64 + (sv * d as u64 + u),
                            c * &(&eps_dual[g2] * &(cs * cu)),
                        ));
                    }
                }
            }
            // xi2: (eps (x) S) on the first factor: (1 (x) S(g1)) (x) leg2.
            if !eps_h[y1].is_zero() {
                let sg = mat_col(s_dual, g1);
                for (sv, cs) in sg.iter() {
                    for (u, cu) in unit_h.iter() {
                        t_xi2.push((
                            (u * d as u64 + sv) * dd as u64 + l[1],
                            c * &(&eps_h[y1] * &(cs * cu)),
                        ));
                    }
                }
                }
        }
        phi1[b] = SparseVec::from_terms(t_phi1);
        phi2[b] = SparseVec::from_terms(t_phi2);
        xi1[b] = SparseVec::from_terms(t_xi1);
        xi2[b] = SparseVec::from_terms(t_xi2);
    }
    Ok(HeisenbergMaps { s_d, phi1, phi2, xi1, xi2 })
}

// Builtin group algebra catalog.

fn z_n_spec(n: usize, label: &str) -> HopfAlgebraSpec {
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let inverses: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    group_algebra(label, &table, 0, &inverses).expect("cyclic group table is a group")
}

fn s3_spec() -> HopfAlgebraSpec {
    // Permutations of {0,1,2}: id, the three transpositions, the two 3-cycles.
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
        // (p q)(x) = p(q(x)).
        [p[q[0]], p[q[1]], p[q[2]]]
    };
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    let table: Vec<Vec<usize>> = (0..6)
        .map(|i| (0..6).map(|j| index_of(&compose(&perms[i], &perms[j]))).collect())
        .collect();
    let inverses: Vec<usize> = (0..6)
        .map(|i| {
            (0..6)
                .find(|&j| table[i][j] == 0)
                .expect("every permutation has an inverse")
        })
        .collect();
    group_algebra("s3", &table, 0, &inverses).expect("s3 table is a group")
}

/// Built-in algebra catalog: `z2`, `z3`, `s3`, `s3-dual`.
pub fn builtin_algebra(name: &str) -> Option<Arc<HopfAlgebraSpec>> {
    match name {
        "z2" => Some(Arc::new(z_n_spec(2, "z2"))),
        "z3" => Some(Arc::new(z_n_spec(3, "z3"))),
        "s3" => Some(Arc::new(s3_spec())),
        "s3-dual" => {
            let s3 = s3_spec();
            let mut dual = dual_hopf(&s3).expect("group algebra has full structure");
            dual.label = "s3-dual".into();
            Some(Arc::new(dual))
        }
        _ => None,
    }
}

pub fn builtin_algebra_names() -> Vec<&'static str> {
    vec!["z2", "z3", "s3", "s3-dual"]
}

/// Convenience: run the axiom checker and collapse to pass/fail with the name
/// of the first failing axiom.
pub fn axioms_ok(spec: &Arc<HopfAlgebraSpec>) -> Result<(), String> {
    for r in check_hopf_axioms(spec) {
        if !r.holds {
            return Err(format!("{}: axiom '{}' fails", spec.label, r.name));
        }
    }
    Ok(())
}
