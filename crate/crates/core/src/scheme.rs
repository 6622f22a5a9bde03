//! Unit schemes U*V = alpha*I and the row-selection/column-deletion code
//! derivation that every construction funnels through.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::block::BlockCode;
use crate::linalg::{LinalgError, Mat};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SchemeError {
    #[error("U must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("U is singular")]
    SingularUnit,
    #[error("U*V is not a nonzero scalar multiple of the identity")]
    NotScalarIdentity,
    #[error("row selection must pick between 1 and n-1 distinct rows of an n x n unit")]
    BadRowSelection,
    #[error("matrix has rank {rank}, need full row rank {rows}")]
    RankDeficient { rank: usize, rows: usize },
    #[error("row partition does not tile 0..{0}")]
    BadPartition(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A validated pair (U, V) with U*V = alpha*I, alpha nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitScheme {
    u: Mat,
    v: Mat,
    alpha: u64,
}

impl UnitScheme {
    /// Scheme from an invertible U alone; V is its inverse and alpha = 1.
    pub fn from_unit(u: Mat) -> Result<Self, SchemeError> {
        if u.rows() != u.cols() {
            return Err(SchemeError::NotSquare(u.rows(), u.cols()));
        }
        let v = u.inverse().map_err(|e| match e {
            LinalgError::Singular => SchemeError::SingularUnit,
            other => SchemeError::Linalg(other),
        })?;
        Ok(UnitScheme { u, v, alpha: 1 })
    }

    /// Scheme from a pair with U*V = alpha*I; alpha is read off entry (0,0)
    /// and the whole product is verified.
    pub fn from_pair(u: Mat, v: Mat) -> Result<Self, SchemeError> {
        if u.rows() != u.cols() {
            return Err(SchemeError::NotSquare(u.rows(), u.cols()));
        }
        let prod = u.mul(&v)?;
        let alpha = prod.get(0, 0);
        if alpha == 0 {
            return Err(SchemeError::NotScalarIdentity);
        }
        let n = u.rows();
        for r in 0..n {
            for c in 0..n {
                let want = if r == c { alpha } else { 0 };
                if prod.get(r, c) != want {
                    return Err(SchemeError::NotScalarIdentity);
                }
            }
        }
        Ok(UnitScheme { u, v, alpha })
    }

    pub fn n(&self) -> usize {
        self.u.rows()
    }

    pub fn u(&self) -> &Mat {
        &self.u
    }

    pub fn v(&self) -> &Mat {
        &self.v
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    /// Generator = selected rows of U; control = V with those columns removed.
    pub fn derive(&self, rows: &[usize]) -> Result<BlockCode, SchemeError> {
        let n = self.n();
        if rows.is_empty() || rows.len() >= n {
            return Err(SchemeError::BadRowSelection);
        }
        let generator = self.u.select_rows(rows)?;
        let control = self.v.delete_cols(rows)?;
        Ok(BlockCode::from_parts(generator, control)
            .expect("unit-derived generator and control always satisfy G*D = 0"))
    }

    /// Splits the scheme into consecutive row blocks of the given sizes.
    pub fn split_consecutive(&self, sizes: &[usize]) -> Result<SchemeSplit, SchemeError> {
        let mut blocks = Vec::with_capacity(sizes.len());
        let mut at = 0usize;
        for &s in sizes {
            blocks.push((at..at + s).collect());
            at += s;
        }
        if at != self.n() {
            return Err(SchemeError::BadPartition(self.n()));
        }
        self.split(blocks)
    }

    /// Splits into arbitrary ordered index blocks that tile 0..n.
    pub fn split(&self, blocks: Vec<Vec<usize>>) -> Result<SchemeSplit, SchemeError> {
        let n = self.n();
        let mut seen = vec![false; n];
        for b in &blocks {
            for &i in b {
                if i >= n || seen[i] {
                    return Err(SchemeError::BadPartition(n));
                }
                seen[i] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(SchemeError::BadPartition(n));
        }
        Ok(SchemeSplit {
            scheme: self.clone(),
            blocks,
        })
    }
}

/// A unit scheme plus an ordered row partition; block i of U pairs with
/// column block i of V (A*C = alpha*I, A*D = 0, ... for a 2-block split).
#[derive(Debug, Clone)]
pub struct SchemeSplit {
    scheme: UnitScheme,
    blocks: Vec<Vec<usize>>,
}

impl SchemeSplit {
    pub fn scheme(&self) -> &UnitScheme {
        &self.scheme
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_indices(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Row block i of U.
    pub fn u_block(&self, i: usize) -> Mat {
        self.scheme
            .u
            .select_rows(&self.blocks[i])
            .expect("partition indices validated at construction")
    }

    /// Column block i of V.
    pub fn v_block(&self, i: usize) -> Mat {
        self.scheme
            .v
            .select_cols(&self.blocks[i])
            .expect("partition indices validated at construction")
    }
}

/// Extends a full-row-rank A to an invertible U whose first rows are A, by
/// greedily appending standard basis vectors in ascending index.
pub fn complete_to_unit(a: &Mat) -> Result<UnitScheme, SchemeError> {
    let r = a.rows();
    let n = a.cols();
    if a.rank() != r {
        return Err(SchemeError::RankDeficient { rank: a.rank(), rows: r });
    }
    let mut u = a.clone();
    let mut rank = r;
    for i in 0..n {
        if rank == n {
            break;
        }
        let mut e = vec![0u64; n];
        e[i] = 1;
        let candidate = u
            .vstack(&Mat::from_rows(a.spec().clone(), vec![e]).expect("unit vector"))
            .expect("same width");
        if candidate.rank() > rank {
            rank += 1;
            u = candidate;
        }
    }
    debug_assert_eq!(rank, n);
    UnitScheme::from_unit(u)
}
