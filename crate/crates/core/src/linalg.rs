//! Dense exact linear algebra over finite fields.
//!
//! `Mat` is an immutable row-major matrix of element reps. Everything is
//! plain O(n^3) Gauss-Jordan; the matrices here are desk scale.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldError, FieldSpec};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrices over different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("matrix is singular")]
    Singular,
    #[error("index {index} out of range (< {bound} required)")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Dense matrix over a fixed finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.spec)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn from_rows(spec: FieldSpec, rows: Vec<Vec<u64>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::ShapeMismatch("ragged rows".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for v in row {
                spec.check_rep(v)?;
                data.push(v);
            }
        }
        Ok(Mat {
            spec,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_fn(
        spec: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat {
            spec,
            rows,
            cols,
            data,
        }
    }

    /// Matrix of signed integers, each reduced into the field (so -1 becomes p-1).
    pub fn from_signed(spec: FieldSpec, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let reduced: Vec<Vec<u64>> = rows
            .iter()
            .map(|row| row.iter().map(|&v| spec.from_int(v)).collect())
            .collect();
        Mat::from_rows(spec, reduced)
    }

    pub fn zero(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            spec,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zero(spec, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn require_same_field(&self, other: &Mat) -> Result<(), LinalgError> {
        if self.spec != other.spec {
            return Err(LinalgError::FieldMismatch {
                left: self.spec.to_string(),
                right: other.spec.to_string(),
            });
        }
        Ok(())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.spec.clone(), self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.require_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.spec.add(a, b))
            .collect();
        Ok(Mat {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        let data = self.data.iter().map(|&a| self.spec.neg(a)).collect();
        Mat {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scalar_mul(&self, s: u64) -> Mat {
        let data = self.data.iter().map(|&a| self.spec.mul(s, a)).collect();
        Mat {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.require_same_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let spec = &self.spec;
        let mut out = Mat::zero(spec.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = k * other.cols;
                let dst = i * other.cols;
                for j in 0..other.cols {
                    let prod = spec.mul(a, other.data[orow + j]);
                    out.data[dst + j] = spec.add(out.data[dst + j], prod);
                }
            }
        }
        Ok(out)
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.require_same_field(other)?;
        if self.rows != other.rows {
            return Err(LinalgError::ShapeMismatch("hstack row counts differ".into()));
        }
        let mut data = Vec::with_capacity((self.cols + other.cols) * self.rows);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Mat {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.require_same_field(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch("vstack col counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            spec: self.spec.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn check_indices(idx: &[usize], bound: usize) -> Result<(), LinalgError> {
        let mut seen = vec![false; bound];
        for &i in idx {
            if i >= bound {
                return Err(LinalgError::IndexOutOfRange { index: i, bound });
            }
            if seen[i] {
                return Err(LinalgError::DuplicateIndex(i));
            }
            seen[i] = true;
        }
        Ok(())
    }

    /// Row submatrix in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Result<Mat, LinalgError> {
        Self::check_indices(idx, self.rows)?;
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Ok(Mat {
            spec: self.spec.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> Result<Mat, LinalgError> {
        Self::check_indices(idx, self.cols)?;
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for r in 0..self.rows {
            for &c in idx {
                data.push(self.get(r, c));
            }
        }
        Ok(Mat {
            spec: self.spec.clone(),
            rows: self.rows,
            cols: idx.len(),
            data,
        })
    }

    /// Drops the given columns, keeping the rest in order.
    pub fn delete_cols(&self, idx: &[usize]) -> Result<Mat, LinalgError> {
        Self::check_indices(idx, self.cols)?;
        let mut drop = vec![false; self.cols];
        for &i in idx {
            drop[i] = true;
        }
        let keep: Vec<usize> = (0..self.cols).filter(|&c| !drop[c]).collect();
        self.select_cols(&keep)
    }

    pub fn delete_rows(&self, idx: &[usize]) -> Result<Mat, LinalgError> {
        Self::check_indices(idx, self.rows)?;
        let mut drop = vec![false; self.rows];
        for &i in idx {
            drop[i] = true;
        }
        let keep: Vec<usize> = (0..self.rows).filter(|&r| !drop[r]).collect();
        self.select_rows(&keep)
    }

    /// Row-echelon pivot count.
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        gauss_rank(&self.spec, &mut work, self.rows, self.cols)
    }

    /// Gauss-Jordan inverse; requires square and full rank.
    pub fn inverse(&self) -> Result<Mat, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::ShapeMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        let spec = &self.spec;
        let mut a = self.data.clone();
        let mut inv = Mat::identity(spec.clone(), n).data;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .ok_or(LinalgError::Singular)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let scale = spec.inv(a[col * n + col])?;
            if scale != 1 {
                for j in 0..n {
                    a[col * n + j] = spec.mul(scale, a[col * n + j]);
                    inv[col * n + j] = spec.mul(scale, inv[col * n + j]);
                }
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let s = spec.mul(factor, a[col * n + j]);
                    a[r * n + j] = spec.sub(a[r * n + j], s);
                    let s = spec.mul(factor, inv[col * n + j]);
                    inv[r * n + j] = spec.sub(inv[r * n + j], s);
                }
            }
        }
        let out = Mat {
            spec: spec.clone(),
            rows: n,
            cols: n,
            data: inv,
        };
        debug_assert_eq!(
            self.mul(&out).unwrap(),
            Mat::identity(spec.clone(), n),
            "Gauss-Jordan inverse failed verification"
        );
        Ok(out)
    }

    /// Checks M * M^T = alpha * I with alpha nonzero; returns alpha.
    pub fn orthogonal_scalar(&self) -> Option<u64> {
        if self.rows != self.cols {
            return None;
        }
        let prod = self.mul(&self.transpose()).ok()?;
        let alpha = prod.get(0, 0);
        if alpha == 0 {
            return None;
        }
        for r in 0..prod.rows {
            for c in 0..prod.cols {
                let want = if r == c { alpha } else { 0 };
                if prod.get(r, c) != want {
                    return None;
                }
            }
        }
        Some(alpha)
    }

    /// One solution X of self * X = rhs, or None when inconsistent.
    pub fn solve(&self, rhs: &Mat) -> Result<Option<Mat>, LinalgError> {
        self.require_same_field(rhs)?;
        if rhs.rows() != self.rows {
            return Err(LinalgError::ShapeMismatch("solve rhs row count".into()));
        }
        let spec = &self.spec;
        let total = self.cols + rhs.cols;
        let mut aug = Mat::zero(spec.clone(), self.rows, total);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.data[r * total + c] = self.get(r, c);
            }
            for c in 0..rhs.cols {
                aug.data[r * total + self.cols + c] = rhs.get(r, c);
            }
        }
        let pivots = {
            let mut work = aug.data.clone();
            let p = gauss_reduce(spec, &mut work, self.rows, total);
            aug.data = work;
            p
        };
        // Inconsistent if any pivot lands in the rhs block.
        if pivots.iter().any(|&(_, c)| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zero(spec.clone(), self.cols, rhs.cols);
        for &(pr, pc) in &pivots {
            for c in 0..rhs.cols {
                x.data[pc * rhs.cols + c] = aug.data[pr * total + self.cols + c];
            }
        }
        Ok(Some(x))
    }

    /// Basis of the right null space as matrix columns (cols x nullity).
    pub fn null_space(&self) -> Mat {
        let spec = &self.spec;
        let n = self.cols;
        let mut work = self.data.clone();
        let pivots = gauss_reduce(spec, &mut work, self.rows, n);
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        let mut out = Mat::zero(spec.clone(), n, free_cols.len());
        for (k, &fc) in free_cols.iter().enumerate() {
            out.data[fc * free_cols.len() + k] = 1;
            for &(pr, pc) in &pivots {
                // Reduced echelon: x_pc = -sum(work[pr][fc] * x_fc).
                let coeff = work[pr * n + fc];
                out.data[pc * free_cols.len() + k] = spec.neg(coeff);
            }
        }
        out
    }
}

/// In-place forward+back elimination; returns (row, col) of each pivot.
fn gauss_reduce(spec: &FieldSpec, data: &mut [u64], rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| data[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                data.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let scale = spec.inv(data[rank * cols + col]).expect("nonzero pivot");
        if scale != 1 {
            for j in 0..cols {
                data[rank * cols + j] = spec.mul(scale, data[rank * cols + j]);
            }
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let factor = data[r * cols + col];
            if factor == 0 {
                continue;
            }
            for j in 0..cols {
                let s = spec.mul(factor, data[rank * cols + j]);
                data[r * cols + j] = spec.sub(data[r * cols + j], s);
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == rows {
            break;
        }
    }
    pivots
}

fn gauss_rank(spec: &FieldSpec, data: &mut [u64], rows: usize, cols: usize) -> usize {
    gauss_reduce(spec, data, rows, cols).len()
}

// ---- JSON interchange ----

#[derive(Serialize, Deserialize)]
struct MatJson {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let data = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        MatJson {
            field: self.spec.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = MatJson::deserialize(d)?;
        if j.data.len() != j.rows || j.data.iter().any(|r| r.len() != j.cols) {
            return Err(D::Error::custom("matrix data does not match declared shape"));
        }
        Mat::from_rows(j.field, j.data).map_err(D::Error::custom)
    }
}
