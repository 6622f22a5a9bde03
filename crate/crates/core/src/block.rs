//! Linear block codes: exact minimum distance by exhaustive enumeration,
//! duals, LCD / dual-containing / self-dual / mds classification, and CSS
//! quantum-code parameters.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldError;
use crate::linalg::{LinalgError, Mat};

/// Default enumeration cap for the distance oracle (codeword count).
pub const DEFAULT_DISTANCE_CAP: u64 = 1 << 26;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BlockError {
    #[error("generator has rank {rank}, expected full row rank {rows}")]
    GeneratorRankDeficient { rank: usize, rows: usize },
    #[error("generator and control are inconsistent: {0}")]
    BadControl(String),
    #[error("enumeration budget exceeded: need {needed} codewords, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },
    #[error("matrix is not orthogonal-like (M*M^T must be a nonzero scalar times I)")]
    NotOrthogonal,
    #[error("code is not dual-containing")]
    NotDualContaining,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// An [n, r] linear block code held as generator (r x n) plus control
/// (n x (n-r)) with G * D = 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCode {
    generator: Mat,
    control: Mat,
}

impl BlockCode {
    pub fn from_parts(generator: Mat, control: Mat) -> Result<Self, BlockError> {
        let r = generator.rows();
        let n = generator.cols();
        if r == 0 || r >= n {
            return Err(BlockError::BadControl(format!(
                "need 1 <= dimension < length, got [{n},{r}]"
            )));
        }
        let rank = generator.rank();
        if rank != r {
            return Err(BlockError::GeneratorRankDeficient { rank, rows: r });
        }
        if control.rows() != n || control.cols() != n - r {
            return Err(BlockError::BadControl(format!(
                "control must be {n}x{}, got {}x{}",
                n - r,
                control.rows(),
                control.cols()
            )));
        }
        if control.rank() != n - r {
            return Err(BlockError::BadControl("control not full rank".into()));
        }
        if !generator.mul(&control)?.is_zero() {
            return Err(BlockError::BadControl("G * D != 0".into()));
        }
        Ok(BlockCode { generator, control })
    }

    /// Builds the control matrix as a null-space basis of the generator.
    pub fn from_generator(generator: Mat) -> Result<Self, BlockError> {
        let control = generator.null_space();
        BlockCode::from_parts(generator, control)
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Mat {
        &self.generator
    }

    /// The n x (n-r) control matrix D with G * D = 0.
    pub fn control(&self) -> &Mat {
        &self.control
    }

    /// The (n-r) x n check matrix D^T; its rows generate the dual code.
    pub fn check_matrix(&self) -> Mat {
        self.control.transpose()
    }

    /// The dual code: generator D^T, control G^T.
    pub fn dual(&self) -> BlockCode {
        BlockCode {
            generator: self.control.transpose(),
            control: self.generator.transpose(),
        }
    }

    /// Exact minimum distance over all q^r - 1 nonzero codewords.
    pub fn min_distance(&self, cap: u64) -> Result<u32, BlockError> {
        min_weight_of_rowspace(&self.generator, cap)
    }

    /// dim(C intersect C-perp) via the rank of the stacked generators.
    pub fn intersection_dim(&self) -> usize {
        let stacked = self
            .generator
            .vstack(&self.check_matrix())
            .expect("generator and check matrix share the length");
        self.n() - stacked.rank()
    }

    pub fn classify(&self, cap: u64) -> CodeReport {
        let n = self.n() as u64;
        let r = self.dim() as u64;
        let inter = self.intersection_dim();
        let lcd = inter == 0;
        let dc = inter == self.n() - self.dim();
        let self_dual = dc && n == 2 * r;
        let d = self.min_distance(cap).ok();
        let mds = d.map(|d| d as u64 == n - r + 1);
        let css = if dc && d.is_some() {
            Some([n, 2 * r - n, d.unwrap() as u64])
        } else {
            None
        };
        CodeReport {
            n,
            k: r,
            d,
            flags: CodeFlags {
                lcd,
                dc,
                self_dual,
                mds,
            },
            intersection_dim: inter,
            css,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFlags {
    pub lcd: bool,
    pub dc: bool,
    pub self_dual: bool,
    /// None when the distance was refused under the enumeration budget.
    pub mds: Option<bool>,
}

/// Classification record for a block code; serialized form is part of the
/// CLI interchange contract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub n: u64,
    pub k: u64,
    pub d: Option<u32>,
    pub flags: CodeFlags,
    pub intersection_dim: usize,
    pub css: Option<[u64; 3]>,
}

/// CSS parameter triple [[n, 2r-n, d]] from a dual-containing code.
pub fn css_parameters(code: &BlockCode, cap: u64) -> Result<[u64; 3], BlockError> {
    let report = code.classify(cap);
    if !report.flags.dc {
        return Err(BlockError::NotDualContaining);
    }
    let d = code.min_distance(cap)?;
    Ok([report.n, 2 * report.k - report.n, d as u64])
}

/// Self-dual [2n, n] code from an orthogonal-like X (X*X^T = alpha*I):
/// generator (I, cX) where c^2 * alpha = -1, moving to the quadratic
/// extension when no such scalar exists in the base field.
pub fn self_dual_from_orthogonal(x: &Mat) -> Result<BlockCode, BlockError> {
    let alpha = x.orthogonal_scalar().ok_or(BlockError::NotOrthogonal)?;
    let spec = x.spec().clone();
    let target = spec.neg(spec.inv(alpha)?);
    let (spec, x, c) = match spec.sqrt(target) {
        Some(c) => (spec, x.clone(), c),
        None => {
            let emb = spec.quadratic_extension_unchecked()?;
            let ext = emb.ext().clone();
            let lifted = Mat::from_fn(ext.clone(), x.rows(), x.cols(), |r, c| emb.map(x.get(r, c)));
            let c = ext
                .sqrt(emb.map(target))
                .expect("every base-field element is a square in the quadratic extension");
            (ext, lifted, c)
        }
    };
    let n = x.rows();
    let y = x.scalar_mul(c);
    let ident = Mat::identity(spec.clone(), n);
    let generator = ident.hstack(&y)?;
    let control = y.vstack(&ident.neg())?;
    let code = BlockCode::from_parts(generator, control)?;
    debug_assert!(code
        .generator
        .mul(&code.generator.transpose())
        .unwrap()
        .is_zero());
    Ok(code)
}

fn checked_pow_u128(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Minimum Hamming weight over the nonzero row space of `gen`.
///
/// Enumerates messages (q^r of them, checked against `cap`) one scalar class
/// at a time: the class representative has its lowest nonzero digit equal
/// to 1, and weights are invariant under scaling. The scan is an odometer
/// over the free digits with incremental codeword and weight updates,
/// partitioned across workers as a pure min-reduction.
pub fn min_weight_of_rowspace(gen: &Mat, cap: u64) -> Result<u32, BlockError> {
    let q = gen.spec().q();
    let r = gen.rows();
    let needed = checked_pow_u128(q, r);
    if needed > cap as u128 {
        return Err(BlockError::BudgetExceeded { needed, cap });
    }
    const CHUNK: u64 = 1 << 16;
    let mut tasks: Vec<(usize, u64, u64)> = Vec::new();
    for lead in 0..r {
        let count = q.pow((r - 1 - lead) as u32);
        let mut start = 0u64;
        while start < count {
            let len = CHUNK.min(count - start);
            tasks.push((lead, start, len));
            start += len;
        }
    }
    let best = tasks
        .par_iter()
        .map(|&(lead, start, len)| scan_class_range(gen, lead, start, len))
        .min()
        .expect("at least one task when r >= 1");
    Ok(best)
}

fn scan_class_range(gen: &Mat, lead: usize, start: u64, len: u64) -> u32 {
    let spec = gen.spec();
    let q = spec.q();
    let r = gen.rows();
    let n = gen.cols();
    let mut digits = vec![0u64; r];
    digits[lead] = 1;
    let mut s = start;
    for d in digits.iter_mut().take(r).skip(lead + 1) {
        *d = s % q;
        s /= q;
    }
    let mut cw: Vec<u64> = gen.row(lead).to_vec();
    for i in lead + 1..r {
        if digits[i] != 0 {
            let row = gen.row(i);
            for j in 0..n {
                cw[j] = spec.add(cw[j], spec.mul(digits[i], row[j]));
            }
        }
    }
    let mut wt = cw.iter().filter(|&&x| x != 0).count() as u32;
    let mut best = wt;
    for _ in 1..len {
        let mut pos = lead + 1;
        loop {
            let old = digits[pos];
            let new = if old + 1 == q { 0 } else { old + 1 };
            digits[pos] = new;
            let delta = spec.sub(new, old);
            let row = gen.row(pos);
            for j in 0..n {
                let rv = row[j];
                if rv == 0 {
                    continue;
                }
                let oldc = cw[j];
                let newc = spec.add(oldc, spec.mul(delta, rv));
                if oldc != 0 {
                    wt -= 1;
                }
                if newc != 0 {
                    wt += 1;
                }
                cw[j] = newc;
            }
            if new != 0 {
                break;
            }
            pos += 1;
        }
        if wt < best {
            best = wt;
        }
    }
    best
}
