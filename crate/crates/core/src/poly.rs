//! Polynomials over a finite field (coefficients low-degree first, no
//! trailing zeros) and dense polynomial matrices, plus Smith normal form
//! over F[z] with transform accumulation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldError, FieldSpec};
use crate::linalg::{LinalgError, Mat};

pub type Poly = Vec<u64>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrices over different fields")]
    FieldMismatch,
    #[error("entry degree {deg} exceeds reversal window {window}")]
    DegreeAboveWindow { deg: usize, window: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub fn ptrim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn pdeg(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn padd(spec: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = spec.add(x, y);
    }
    ptrim(&mut out);
    out
}

pub fn pneg(spec: &FieldSpec, a: &Poly) -> Poly {
    a.iter().map(|&c| spec.neg(c)).collect()
}

pub fn psub(spec: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    padd(spec, a, &pneg(spec, b))
}

pub fn pmul(spec: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = spec.add(out[i + j], spec.mul(ai, bj));
        }
    }
    ptrim(&mut out);
    out
}

pub fn pscale(spec: &FieldSpec, a: &Poly, s: u64) -> Poly {
    let mut out: Poly = a.iter().map(|&c| spec.mul(s, c)).collect();
    ptrim(&mut out);
    out
}

pub fn pconst(c: u64) -> Poly {
    if c == 0 {
        Vec::new()
    } else {
        vec![c]
    }
}

/// Division with remainder; divisor must be nonzero.
pub fn pdivrem(spec: &FieldSpec, a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.clone();
    ptrim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let db = b.len() - 1;
    let lead_inv = spec.inv(*b.last().unwrap()).expect("nonzero lead");
    let mut quot = vec![0u64; rem.len() - db];
    while rem.len() >= b.len() {
        let dr = rem.len() - 1;
        let c = spec.mul(*rem.last().unwrap(), lead_inv);
        quot[dr - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let idx = dr - db + j;
            rem[idx] = spec.sub(rem[idx], spec.mul(c, bj));
        }
        // The leading coefficient cancels exactly, so the degree drops.
        ptrim(&mut rem);
    }
    ptrim(&mut quot);
    (quot, rem)
}

/// Monic gcd of two polynomials.
pub fn pgcd(spec: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let (_, r) = pdivrem(spec, &x, &y);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        if lead != 1 {
            let inv = spec.inv(lead).expect("nonzero lead");
            x = pscale(spec, &x, inv);
        }
    }
    x
}

/// Dense matrix of polynomials over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMat {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    pub fn zero(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        PolyMat {
            spec,
            rows,
            cols,
            entries: vec![Vec::new(); rows * cols],
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = PolyMat::zero(spec, n, n);
        for i in 0..n {
            m.entries[i * n + i] = vec![1];
        }
        m
    }

    pub fn from_const(m: &Mat) -> Self {
        let mut out = PolyMat::zero(m.spec().clone(), m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.entries[r * m.cols() + c] = pconst(m.get(r, c));
            }
        }
        out
    }

    /// Builds sum_t coeffs[t] * z^t from constant coefficient matrices.
    pub fn from_coefficient_mats(coeffs: &[Mat]) -> Result<Self, PolyError> {
        let first = coeffs.first().expect("at least one coefficient");
        let (rows, cols) = (first.rows(), first.cols());
        let spec = first.spec().clone();
        for m in coeffs {
            if m.rows() != rows || m.cols() != cols {
                return Err(PolyError::ShapeMismatch("coefficient matrices differ in shape".into()));
            }
            if m.spec() != &spec {
                return Err(PolyError::FieldMismatch);
            }
        }
        let mut out = PolyMat::zero(spec, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let mut p: Poly = coeffs.iter().map(|m| m.get(r, c)).collect();
                ptrim(&mut p);
                out.entries[r * cols + c] = p;
            }
        }
        Ok(out)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set_entry(&mut self, r: usize, c: usize, p: Poly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    /// Max entry degree, or 0 for the zero matrix.
    pub fn degree(&self) -> usize {
        self.entries
            .iter()
            .filter_map(pdeg)
            .max()
            .unwrap_or(0)
    }

    pub fn row_degree(&self, r: usize) -> usize {
        (0..self.cols)
            .filter_map(|c| pdeg(self.entry(r, c)))
            .max()
            .unwrap_or(0)
    }

    /// Total degree: sum of row degrees.
    pub fn delta(&self) -> usize {
        (0..self.rows).map(|r| self.row_degree(r)).sum()
    }

    /// Memory: max row degree.
    pub fn memory(&self) -> usize {
        (0..self.rows).map(|r| self.row_degree(r)).max().unwrap_or(0)
    }

    /// The z^t coefficient as a constant matrix.
    pub fn coefficient_matrix(&self, t: usize) -> Mat {
        Mat::from_fn(self.spec.clone(), self.rows, self.cols, |r, c| {
            self.entry(r, c).get(t).copied().unwrap_or(0)
        })
    }

    pub fn transpose(&self) -> PolyMat {
        let mut out = PolyMat::zero(self.spec.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.entry(r, c).clone();
            }
        }
        out
    }

    pub fn neg(&self) -> PolyMat {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = pneg(&self.spec, e);
        }
        out
    }

    pub fn add(&self, other: &PolyMat) -> Result<PolyMat, PolyError> {
        if self.spec != other.spec {
            return Err(PolyError::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(PolyError::ShapeMismatch("add".into()));
        }
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = padd(&self.spec, e, o);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyMat) -> Result<PolyMat, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PolyMat) -> Result<PolyMat, PolyError> {
        if self.spec != other.spec {
            return Err(PolyError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(PolyError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMat::zero(self.spec.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_empty() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.entry(k, j);
                    if b.is_empty() {
                        continue;
                    }
                    let prod = pmul(&self.spec, a, b);
                    out.entries[i * other.cols + j] =
                        padd(&self.spec, &out.entries[i * other.cols + j], &prod);
                }
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, s: u64) -> PolyMat {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = pscale(&self.spec, e, s);
        }
        out
    }

    /// Entry-wise z^window * p(1/z): coefficients reversed inside the window.
    /// Every entry must have degree at most `window`.
    pub fn reverse_coefficients(&self, window: usize) -> Result<PolyMat, PolyError> {
        let mut out = PolyMat::zero(self.spec.clone(), self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let p = self.entry(r, c);
                if let Some(d) = pdeg(p) {
                    if d > window {
                        return Err(PolyError::DegreeAboveWindow { deg: d, window });
                    }
                }
                let mut rev = vec![0u64; window + 1];
                for (i, &coeff) in p.iter().enumerate() {
                    rev[window - i] = coeff;
                }
                ptrim(&mut rev);
                out.entries[r * self.cols + c] = rev;
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation.
    pub fn hstack(parts: &[&PolyMat]) -> Result<PolyMat, PolyError> {
        let rows = parts[0].rows;
        let spec = parts[0].spec.clone();
        if parts.iter().any(|p| p.rows != rows || p.spec != spec) {
            return Err(PolyError::ShapeMismatch("hstack".into()));
        }
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = PolyMat::zero(spec, rows, cols);
        for r in 0..rows {
            let mut at = 0usize;
            for p in parts {
                for c in 0..p.cols {
                    out.entries[r * cols + at + c] = p.entry(r, c).clone();
                }
                at += p.cols;
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(parts: &[&PolyMat]) -> Result<PolyMat, PolyError> {
        let cols = parts[0].cols;
        let spec = parts[0].spec.clone();
        if parts.iter().any(|p| p.cols != cols || p.spec != spec) {
            return Err(PolyError::ShapeMismatch("vstack".into()));
        }
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let mut out = PolyMat::zero(spec, rows, cols);
        let mut at = 0usize;
        for p in parts {
            for r in 0..p.rows {
                for c in 0..cols {
                    out.entries[(at + r) * cols + c] = p.entry(r, c).clone();
                }
            }
            at += p.rows;
        }
        Ok(out)
    }
}

// ---- JSON interchange: entries as coefficient arrays, low degree first ----

#[derive(Serialize, Deserialize)]
struct PolyMatJson {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Vec<u64>>>,
}

impl Serialize for PolyMat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.entry(r, c).clone()).collect())
            .collect();
        PolyMatJson {
            field: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PolyMatJson::deserialize(d)?;
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(D::Error::custom("entries do not match declared shape"));
        }
        let mut out = PolyMat::zero(j.field, j.rows, j.cols);
        for (r, row) in j.entries.into_iter().enumerate() {
            for (c, mut p) in row.into_iter().enumerate() {
                ptrim(&mut p);
                out.set_entry(r, c, p);
            }
        }
        Ok(out)
    }
}

/// Smith normal form of a polynomial matrix with accumulated transforms:
/// left * M * right = diag(invariants), left and right unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub invariants: Vec<Poly>,
    pub left: PolyMat,
    pub right: PolyMat,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// All invariant factors are nonzero constants, i.e. the matrix has a
    /// polynomial right inverse iff this holds and rank equals the row count.
    pub fn invariants_are_units(&self) -> bool {
        self.invariants.iter().all(|p| p.len() == 1)
    }
}

pub fn smith_normal_form(m: &PolyMat) -> SmithForm {
    let spec = m.spec().clone();
    let rows = m.rows();
    let cols = m.cols();
    let mut work = m.clone();
    let mut left = PolyMat::identity(spec.clone(), rows);
    let mut right = PolyMat::identity(spec.clone(), cols);

    let swap_rows = |w: &mut PolyMat, l: &mut PolyMat, a: usize, b: usize| {
        if a == b {
            return;
        }
        for c in 0..w.cols() {
            let ea = w.entry(a, c).clone();
            let eb = w.entry(b, c).clone();
            w.set_entry(a, c, eb);
            w.set_entry(b, c, ea);
        }
        for c in 0..l.cols() {
            let ea = l.entry(a, c).clone();
            let eb = l.entry(b, c).clone();
            l.set_entry(a, c, eb);
            l.set_entry(b, c, ea);
        }
    };
    let swap_cols = |w: &mut PolyMat, r: &mut PolyMat, a: usize, b: usize| {
        if a == b {
            return;
        }
        for i in 0..w.rows() {
            let ea = w.entry(i, a).clone();
            let eb = w.entry(i, b).clone();
            w.set_entry(i, a, eb);
            w.set_entry(i, b, ea);
        }
        for i in 0..r.rows() {
            let ea = r.entry(i, a).clone();
            let eb = r.entry(i, b).clone();
            r.set_entry(i, a, eb);
            r.set_entry(i, b, ea);
        }
    };
    // row_a -= q * row_b (mirrored into left)
    let row_sub = |w: &mut PolyMat, l: &mut PolyMat, a: usize, b: usize, q: &Poly| {
        for c in 0..w.cols() {
            let sub = pmul(&spec, q, w.entry(b, c));
            let val = psub(&spec, w.entry(a, c), &sub);
            w.set_entry(a, c, val);
        }
        for c in 0..l.cols() {
            let sub = pmul(&spec, q, l.entry(b, c));
            let val = psub(&spec, l.entry(a, c), &sub);
            l.set_entry(a, c, val);
        }
    };
    let col_sub = |w: &mut PolyMat, r: &mut PolyMat, a: usize, b: usize, q: &Poly| {
        for i in 0..w.rows() {
            let sub = pmul(&spec, q, w.entry(i, b));
            let val = psub(&spec, w.entry(i, a), &sub);
            w.set_entry(i, a, val);
        }
        for i in 0..r.rows() {
            let sub = pmul(&spec, q, r.entry(i, b));
            let val = psub(&spec, r.entry(i, a), &sub);
            r.set_entry(i, a, val);
        }
    };

    let mut t = 0usize;
    while t < rows.min(cols) {
        // Smallest-degree nonzero pivot in the remaining block.
        let mut pivot: Option<(usize, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if let Some(d) = pdeg(work.entry(i, j)) {
                    if pivot.map_or(true, |(_, _, pd)| d < pd) {
                        pivot = Some((i, j, d));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        swap_rows(&mut work, &mut left, t, pi);
        swap_cols(&mut work, &mut right, t, pj);
        // Clear row and column t; division may leave remainders that become
        // new, smaller pivots, so iterate until clean.
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if work.entry(i, t).is_empty() {
                    continue;
                }
                let (q, r) = pdivrem(&spec, work.entry(i, t), work.entry(t, t));
                row_sub(&mut work, &mut left, i, t, &q);
                if !r.is_empty() {
                    swap_rows(&mut work, &mut left, t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if work.entry(t, j).is_empty() {
                    continue;
                }
                let (q, r) = pdivrem(&spec, work.entry(t, j), work.entry(t, t));
                col_sub(&mut work, &mut right, j, t, &q);
                if !r.is_empty() {
                    swap_cols(&mut work, &mut right, t, j);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        // Divisibility chain: fold in any entry the pivot does not divide.
        let mut fixed = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if work.entry(i, j).is_empty() {
                    continue;
                }
                let (_, r) = pdivrem(&spec, work.entry(i, j), work.entry(t, t));
                if !r.is_empty() {
                    let one = pconst(spec.neg(1));
                    // row_t -= (-1) * row_i, i.e. row_t += row_i
                    row_sub(&mut work, &mut left, t, i, &one);
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue; // re-run the elimination at the same pivot index
        }
        // Normalize the pivot monic.
        let lead = *work.entry(t, t).last().expect("nonzero pivot");
        if lead != 1 {
            let inv = spec.inv(lead).expect("nonzero lead");
            for c in 0..cols {
                let scaled = pscale(&spec, work.entry(t, c), inv);
                work.set_entry(t, c, scaled);
            }
            for c in 0..left.cols() {
                let scaled = pscale(&spec, left.entry(t, c), inv);
                left.set_entry(t, c, scaled);
            }
        }
        t += 1;
    }
    let invariants: Vec<Poly> = (0..rows.min(cols))
        .map(|i| work.entry(i, i).clone())
        .filter(|p| !p.is_empty())
        .collect();
    SmithForm {
        invariants,
        left,
        right,
    }
}
