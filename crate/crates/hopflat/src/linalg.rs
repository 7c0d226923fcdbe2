//! Exact rational linear algebra.
//!
//! All arithmetic in this crate flows through [`Scalar`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. Matrices come in a
//! dense flavour for small dimensions and a column-sparse flavour used by the
//! high-dimensional rank computations. Elimination is plain rational Gaussian
//! elimination with pivoting on entry height to limit coefficient growth.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// An exact rational number, stored in lowest terms with positive denominator.
///
/// Values that fit in an `i64/u64` fraction are kept inline; anything larger is
/// promoted to an arbitrary-precision rational. Promotion is invisible: all
/// arithmetic is exact and values demote back when they fit, so structural
/// equality and hashing are canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Small(i64, u64),
    Big(Box<BigRational>),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::Small(0, 1)
    }
}

#[inline]
fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Canonicalizes an i128/u128 fraction and packs it small when it fits.
#[inline]
fn make_scalar_128(mut num: i128, mut den: u128) -> Scalar {
    debug_assert!(den != 0);
    if num == 0 {
        return Scalar::Small(0, 1);
    }
    let g = gcd_u128(num.unsigned_abs(), den);
    if g > 1 {
        num /= g as i128;
        den /= g;
    }
    if let (Ok(n), Ok(d)) = (i64::try_from(num), u64::try_from(den)) {
        Scalar::Small(n, d)
    } else {
        Scalar::Big(Box::new(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }
}

/// Demotes a big rational to the small representation when possible.
fn pack_big(r: BigRational) -> Scalar {
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_u64()) {
        Scalar::Small(n, d)
    } else {
        Scalar::Big(Box::new(r))
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Small(0, 1)
    }

    pub fn one() -> Self {
        Scalar::Small(1, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Small(n, 1)
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-(num as i128), (-(den as i128)) as u128) } else { (num as i128, den as u128) };
        make_scalar_128(num, den)
    }

    fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Scalar::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Small(1, 1))
    }

    pub fn recip(&self) -> Self {
        match self {
            Scalar::Small(n, d) => {
                assert!(*n != 0, "division by zero");
                if *n < 0 {
                    make_scalar_128(-(*d as i128), n.unsigned_abs() as u128)
                } else {
                    make_scalar_128(*d as i128, *n as u128)
                }
            }
            Scalar::Big(r) => {
                assert!(!r.is_zero(), "division by zero");
                pack_big(r.recip())
            }
        }
    }

    /// Bit-size proxy for pivot selection: sum of numerator and denominator bits.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Small(n, d) => (128 - n.unsigned_abs().leading_zeros() - d.leading_zeros()) as u64,
            Scalar::Big(r) => r.numer().bits() + r.denom().bits(),
        }
    }

    /// Parses the `"num/den"` (or `"num"`) wire format used by the JSON schemas.
    pub fn parse(s: &str) -> Result<Self, String> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|e| format!("bad numerator {s:?}: {e}"))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|e| format!("bad denominator {s:?}: {e}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(pack_big(BigRational::new(num, den)))
    }

    /// Renders the canonical wire format: `"num"` for integers, else `"num/den"`.
    pub fn to_wire(&self) -> String {
        match self {
            Scalar::Small(n, 1) => n.to_string(),
            Scalar::Small(n, d) => format!("{n}/{d}"),
            Scalar::Big(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Scalar::Small(n, d) => make_scalar_128((*n as i128).abs(), *d as u128),
            Scalar::Big(r) => pack_big(r.abs()),
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Small(n, 1) => Some(BigInt::from(*n)),
            Scalar::Small(..) => None,
            Scalar::Big(r) => {
                if r.denom().is_one() {
                    Some(r.numer().clone())
                } else {
                    None
                }
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Scalar::Small(n1, d1), Scalar::Small(n2, d2)) => {
                (*n1 as i128 * *d2 as i128).cmp(&(*n2 as i128 * *d1 as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_wire())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_wire())
    }
}

#[inline]
fn add_ref(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Small(n1, d1), Scalar::Small(n2, d2)) => {
            let num = *n1 as i128 * *d2 as i128 + *n2 as i128 * *d1 as i128;
            make_scalar_128(num, *d1 as u128 * *d2 as u128)
        }
        _ => pack_big(a.to_big() + b.to_big()),
    }
}

#[inline]
fn mul_ref(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Small(n1, d1), Scalar::Small(n2, d2)) => {
            // Cross-reduce before multiplying to keep intermediates small.
            let g1 = gcd_u128(n1.unsigned_abs() as u128, *d2 as u128).max(1);
            let g2 = gcd_u128(n2.unsigned_abs() as u128, *d1 as u128).max(1);
            let num = (*n1 as i128 / g1 as i128) * (*n2 as i128 / g2 as i128);
            let den = (*d1 as u128 / g2) * (*d2 as u128 / g1);
            make_scalar_128(num, den)
        }
        _ => pack_big(a.to_big() * b.to_big()),
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        add_ref(&self, &rhs)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        add_ref(self, rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        add_ref(&self, &-rhs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        add_ref(self, &-rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        mul_ref(&self, &rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        mul_ref(self, rhs)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        mul_ref(&self, &rhs.recip())
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        mul_ref(self, &rhs.recip())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = add_ref(self, rhs);
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Small(n, d) => make_scalar_128(-(*n as i128), *d as u128),
            Scalar::Big(r) => pack_big(-(**r).clone()),
        }
    }
}

/// Mixed-radix encoding with the first tensor factor most significant.
///
/// `digits[0]` indexes the first factor; the flat index is
/// `((d0 * s1 + d1) * s2 + d2) * ...`. Every module in the crate uses this one
/// convention.
pub fn mixed_radix_encode(digits: &[usize], shape: &[usize]) -> u64 {
    assert_eq!(digits.len(), shape.len(), "digit/shape length mismatch");
    let mut flat: u64 = 0;
    for (&d, &s) in digits.iter().zip(shape.iter()) {
        assert!(d < s, "digit {d} out of range for factor of dimension {s}");
        flat = flat * s as u64 + d as u64;
    }
    flat
}

pub fn mixed_radix_decode(flat: u64, shape: &[usize]) -> Vec<usize> {
    let mut digits = vec![0usize; shape.len()];
    let mut rest = flat;
    for i in (0..shape.len()).rev() {
        let s = shape[i] as u64;
        digits[i] = (rest % s) as usize;
        rest /= s;
    }
    assert_eq!(rest, 0, "flat index out of range for shape {shape:?}");
    digits
}

/// A sparse vector: strictly increasing indices, no explicit zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(u64, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: vec![] }
    }

    pub fn unit(index: u64) -> Self {
        SparseVec {
            entries: vec![(index, Scalar::one())],
        }
    }

    pub fn singleton(index: u64, coeff: Scalar) -> Self {
        if coeff.is_zero() {
            SparseVec::new()
        } else {
            SparseVec {
                entries: vec![(index, coeff)],
            }
        }
    }

    /// Builds from possibly unsorted, possibly duplicated terms.
    pub fn from_terms(mut terms: Vec<(u64, Scalar)>) -> Self {
        terms.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(u64, Scalar)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            if c.is_zero() {
                continue;
            }
            match entries.last_mut() {
                Some((j, acc)) if *j == i => {
                    *acc += &c;
                }
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(coords: &[Scalar]) -> Self {
        SparseVec {
            entries: coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u64, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); dim];
        for (i, c) in &self.entries {
            out[*i as usize] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(u64, Scalar)> {
        self.entries.iter()
    }

    pub fn get(&self, index: u64) -> Scalar {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i == j => {
                    let (i, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x + y;
                    if !s.is_zero() {
                        entries.push((*i, s));
                    }
                }
                (Some((i, _)), Some((j, _))) => {
                    if i < j {
                        let (i, x) = a.next().unwrap();
                        entries.push((*i, x.clone()));
                    } else {
                        let (j, y) = b.next().unwrap();
                        entries.push((*j, y.clone()));
                    }
                }
                (Some(_), None) => {
                    let (i, x) = a.next().unwrap();
                    entries.push((*i, x.clone()));
                }
                (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    entries.push((*j, y.clone()));
                }
                (None, None) => break,
            }
        }
        SparseVec { entries }
    }

    pub fn add_assign(&mut self, other: &SparseVec) {
        if self.entries.is_empty() {
            self.entries = other.entries.clone();
            return;
        }
        *self = self.add(other);
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        if c.is_one() {
            return self.clone();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add(&other.neg())
    }

    /// Dot product of the coordinate vectors.
    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, _)), Some((j, _))) = (a.peek(), b.peek()) {
            if i == j {
                let (_, x) = a.next().unwrap();
                let (_, y) = b.next().unwrap();
                acc += &(x * y);
            } else if i < j {
                a.next();
            } else {
                b.next();
            }
        }
        acc
    }

    /// Tensor product assuming `self` indexes the most significant factor block.
    pub fn tensor(&self, other: &SparseVec, other_dim: u64) -> SparseVec {
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for (i, x) in &self.entries {
            for (j, y) in &other.entries {
                entries.push((i * other_dim + j, x * y));
            }
        }
        // Index order is already sorted because both inputs are.
        SparseVec { entries }
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, c)| (i, c.to_wire())))
            .finish()
    }
}

/// A dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn set_column(&mut self, c: usize, v: &SparseVec) {
        for (i, x) in v.iter() {
            *self.at_mut(*i as usize, c) = x.clone();
        }
    }

    pub fn column(&self, c: usize) -> SparseVec {
        SparseVec::from_terms(
            (0..self.rows)
                .map(|r| (r as u64, self.at(r, c).clone()))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    *out.at_mut(r, c) += &(a * b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut terms = vec![];
        for (j, c) in v.iter() {
            let j = *j as usize;
            assert!(j < self.cols);
            for r in 0..self.rows {
                let a = self.at(r, j);
                if !a.is_zero() {
                    terms.push((r as u64, a * c));
                }
            }
        }
        SparseVec::from_terms(terms)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.at(r, c).is_one()
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }

    /// Inverse by Gauss-Jordan; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.at(r, col).is_zero())
                .min_by_key(|&r| a.at(r, col).height())?;
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                    inv.data.swap(pivot * n + c, col * n + c);
                }
            }
            let p = a.at(col, col).clone().recip();
            for c in 0..n {
                let x = a.at(col, c).clone();
                *a.at_mut(col, c) = x * p.clone();
                let y = inv.at(col, c).clone();
                *inv.at_mut(col, c) = y * p.clone();
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for c in 0..n {
                    let x = a.at(col, c) * &f;
                    let y = a.at(r, c).clone() - x;
                    *a.at_mut(r, c) = y;
                    let x = inv.at(col, c) * &f;
                    let y = inv.at(r, c).clone() - x;
                    *inv.at_mut(r, c) = y;
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_wire()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row-echelon state shared by the rank/kernel/solve entry points.
///
/// Operates on rows stored sparsely; pivots are chosen among the candidate rows
/// by minimal entry height, which keeps coefficients small in practice.
struct Elimination {
    /// Echelon rows, each normalized so the leading coefficient is 1.
    rows: Vec<Vec<(usize, Scalar)>>,
    /// Pivot column of each echelon row.
    pivots: Vec<usize>,
}

impl Elimination {
    fn new() -> Self {
        Elimination {
            rows: vec![],
            pivots: vec![],
        }
    }

    /// Reduces `row` against the current echelon rows; returns the reduced row.
    fn reduce(&self, mut row: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
        loop {
            let lead = match row.first() {
                Some((c, _)) => *c,
                None => return row,
            };
            match self.pivots.binary_search(&lead) {
                Ok(pos) => {
                    let factor = row[0].1.clone();
                    row = sub_scaled(&row, &self.rows[pos], &factor);
                }
                Err(_) => return row,
            }
        }
    }

    /// Inserts a reduced, nonzero row, keeping rows sorted by pivot column.
    fn insert(&mut self, mut row: Vec<(usize, Scalar)>) {
        let lead = row[0].1.clone().recip();
        if !lead.is_one() {
            for (_, c) in row.iter_mut() {
                *c = c.clone() * lead.clone();
            }
        }
        let pivot = row[0].0;
        let pos = self.pivots.binary_search(&pivot).unwrap_err();
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, row);
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn sub_scaled(
    a: &[(usize, Scalar)],
    b: &[(usize, Scalar)],
    factor: &Scalar,
) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut ia, mut ib) = (0, 0);
    while ia < a.len() || ib < b.len() {
        if ib == b.len() || (ia < a.len() && a[ia].0 < b[ib].0) {
            out.push(a[ia].clone());
            ia += 1;
        } else if ia == a.len() || b[ib].0 < a[ia].0 {
            let v = -&(&b[ib].1 * factor);
            if !v.is_zero() {
                out.push((b[ib].0, v));
            }
            ib += 1;
        } else {
            let v = &a[ia].1 - &(&b[ib].1 * factor);
            if !v.is_zero() {
                out.push((a[ia].0, v));
            }
            ia += 1;
            ib += 1;
        }
    }
    out
}

/// Columns of a matrix stored sparsely; used for high-dimensional rank work.
#[derive(Clone, Default)]
pub struct SparseColumns {
    pub nrows: u64,
    pub cols: Vec<SparseVec>,
}

impl SparseColumns {
    pub fn new(nrows: u64) -> Self {
        SparseColumns { nrows, cols: vec![] }
    }

    pub fn push(&mut self, col: SparseVec) {
        self.cols.push(col);
    }

    /// Exact rank by incremental row reduction of the columns.
    pub fn rank(&self) -> usize {
        let mut elim = Elimination::new();
        // Processing sparser columns first keeps the echelon rows small.
        let mut order: Vec<usize> = (0..self.cols.len()).collect();
        order.sort_by_key(|&i| self.cols[i].nnz());
        for i in order {
            let row: Vec<(usize, Scalar)> = self.cols[i]
                .iter()
                .map(|(r, c)| (*r as usize, c.clone()))
                .collect();
            let red = elim.reduce(row);
            if !red.is_empty() {
                elim.insert(red);
            }
        }
        elim.rank()
    }
}

/// Exact rank of a dense matrix. The empty matrix has rank 0.
pub fn rank(m: &Matrix) -> usize {
    let mut elim = Elimination::new();
    for r in 0..m.rows {
        let row: Vec<(usize, Scalar)> = (0..m.cols)
            .filter(|&c| !m.at(r, c).is_zero())
            .map(|c| (c, m.at(r, c).clone()))
            .collect();
        let red = elim.reduce(row);
        if !red.is_empty() {
            elim.insert(red);
        }
    }
    elim.rank()
}

/// Exact basis of the null space of `m`; `rank + kernel.len() == cols`.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    // Reduce the rows to echelon form, then back-substitute per free column.
    let mut elim = Elimination::new();
    for r in 0..m.rows {
        let row: Vec<(usize, Scalar)> = (0..m.cols)
            .filter(|&c| !m.at(r, c).is_zero())
            .map(|c| (c, m.at(r, c).clone()))
            .collect();
        let red = elim.reduce(row);
        if !red.is_empty() {
            elim.insert(red);
        }
    }
    // Full reduction: clear entries above pivots so reading off solutions is direct.
    for i in (0..elim.rows.len()).rev() {
        let row = elim.rows[i].clone();
        for j in 0..i {
            if let Ok(pos) = row_find(&elim.rows[j], elim.pivots[i]) {
                let factor = elim.rows[j][pos].1.clone();
                elim.rows[j] = sub_scaled(&elim.rows[j], &row, &factor);
            }
        }
    }
    let pivot_cols = elim.pivots.clone();
    let mut basis = vec![];
    for free in 0..m.cols {
        if pivot_cols.binary_search(&free).is_ok() {
            continue;
        }
        let mut v = vec![Scalar::zero(); m.cols];
        v[free] = Scalar::one();
        for (i, &p) in pivot_cols.iter().enumerate() {
            if let Ok(pos) = row_find(&elim.rows[i], free) {
                v[p] = -&elim.rows[i][pos].1;
            }
        }
        basis.push(v);
    }
    basis
}

fn row_find(row: &[(usize, Scalar)], col: usize) -> Result<usize, usize> {
    row.binary_search_by_key(&col, |(c, _)| *c)
}

/// Exact solution of `m x = rhs`, or `None` when the system is inconsistent.
pub fn solve_linear(m: &Matrix, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(m.rows, rhs.len(), "dimension mismatch");
    // Augmented elimination with the rhs carried as an extra column.
    let aug = Matrix::from_fn(m.rows, m.cols + 1, |r, c| {
        if c < m.cols {
            m.at(r, c).clone()
        } else {
            rhs[r].clone()
        }
    });
    let mut elim = Elimination::new();
    for r in 0..aug.rows {
        let row: Vec<(usize, Scalar)> = (0..aug.cols)
            .filter(|&c| !aug.at(r, c).is_zero())
            .map(|c| (c, aug.at(r, c).clone()))
            .collect();
        let red = elim.reduce(row);
        if !red.is_empty() {
            if red[0].0 == m.cols {
                return None; // 0 = nonzero
            }
            elim.insert(red);
        }
    }
    for i in (0..elim.rows.len()).rev() {
        let row = elim.rows[i].clone();
        for j in 0..i {
            if let Ok(pos) = row_find(&elim.rows[j], elim.pivots[i]) {
                let factor = elim.rows[j][pos].1.clone();
                elim.rows[j] = sub_scaled(&elim.rows[j], &row, &factor);
            }
        }
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (i, &p) in elim.pivots.iter().enumerate() {
        // Free variables stay 0; pivot value = rhs entry of the reduced row.
        if let Ok(pos) = row_find(&elim.rows[i], m.cols) {
            x[p] = elim.rows[i][pos].1.clone();
        }
    }
    // Verify, so that inconsistent systems with free columns are caught.
    for r in 0..m.rows {
        let mut acc = Scalar::zero();
        for c in 0..m.cols {
            acc += &(m.at(r, c) * &x[c]);
        }
        if acc != rhs[r] {
            return None;
        }
    }
    Some(x)
}
