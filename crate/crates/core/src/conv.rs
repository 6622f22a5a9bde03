//! Convolutional codes from unit schemes: the memory-1/2/3 builders with
//! their closed-form control matrices and right inverses, the generalised
//! Singleton bound, a free-distance search oracle with iterative deepening,
//! catastrophicity via Smith normal form, and LCD/DC/self-dual
//! classification of the polynomial row module.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::block::{min_weight_of_rowspace, BlockError};
use crate::field::{FieldEmbedding, FieldError, FieldSpec};
use crate::linalg::{LinalgError, Mat};
use crate::poly::{smith_normal_form, PolyError, PolyMat};
use crate::scheme::{SchemeError, SchemeSplit, UnitScheme};

/// Default enumeration cap for the free-distance oracle (information
/// polynomial count per depth).
pub const DEFAULT_FREE_DISTANCE_CAP: u64 = 1 << 26;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ConvError {
    #[error("split must have {expected} blocks, got {got}")]
    BlockCountMismatch { expected: usize, got: usize },
    #[error("blocks must have equal sizes, got {0:?}")]
    UnequalBlocks(Vec<usize>),
    #[error("first block must have more rows than the second (2r > n)")]
    NeedsMajorityRate,
    #[error("the i-twist construction requires an orthogonal-like U (U*U^T = alpha*I)")]
    TwistNeedsOrthogonal,
    #[error("this construction is only defined in characteristic 2")]
    NeedsCharacteristicTwo,
    #[error("construction identity failed: {0}")]
    ConstructionIdentity(String),
    #[error("enumeration budget exceeded: need {needed} information polynomials, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },
    #[error("free distance of a catastrophic encoder is not searched")]
    Catastrophic,
    #[error("generator has rank {rank}, expected {rows}")]
    RankDeficient { rank: usize, rows: usize },
    #[error("no control matrix available")]
    MissingControl,
    #[error("generator has no polynomial right inverse")]
    NotRightInvertible,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Block(#[from] BlockError),
}

/// Whether a builder multiplies the z-part by a square root of -1.
/// In characteristic 2 the two coincide (i = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Twist {
    Plain,
    SqrtMinusOne,
}

/// A convolutional code: generator of full row rank, plus the control
/// matrix and right inverse when a construction supplies them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvCode {
    generator: PolyMat,
    control: Option<PolyMat>,
    right_inverse: Option<PolyMat>,
}

impl ConvCode {
    /// From a raw generator: rank, control and right inverse all come out of
    /// the Smith normal form.
    pub fn from_generator(generator: PolyMat) -> Result<Self, ConvError> {
        let k = generator.rows();
        let n = generator.cols();
        let snf = smith_normal_form(&generator);
        if snf.rank() != k {
            return Err(ConvError::RankDeficient {
                rank: snf.rank(),
                rows: k,
            });
        }
        // Right kernel basis: the last n-k columns of the right transform.
        let spec = generator.spec().clone();
        let mut control = PolyMat::zero(spec.clone(), n, n - k);
        for r in 0..n {
            for c in 0..n - k {
                control.set_entry(r, c, snf.right.entry(r, k + c).clone());
            }
        }
        let right_inverse = if snf.invariants_are_units() {
            Some(right_inverse_from_snf(&generator, &snf)?)
        } else {
            None
        };
        let code = ConvCode {
            generator,
            control: Some(control),
            right_inverse,
        };
        code.verify()?;
        Ok(code)
    }

    pub fn from_parts(
        generator: PolyMat,
        control: Option<PolyMat>,
        right_inverse: Option<PolyMat>,
    ) -> Result<Self, ConvError> {
        let code = ConvCode {
            generator,
            control,
            right_inverse,
        };
        code.verify()?;
        Ok(code)
    }

    fn verify(&self) -> Result<(), ConvError> {
        if let Some(ctrl) = &self.control {
            if !self.generator.mul(ctrl)?.is_zero() {
                return Err(ConvError::ConstructionIdentity("G(z) * control != 0".into()));
            }
        }
        if let Some(rinv) = &self.right_inverse {
            let prod = self.generator.mul(rinv)?;
            if prod != PolyMat::identity(self.generator.spec().clone(), self.generator.rows()) {
                return Err(ConvError::ConstructionIdentity("G(z) * R(z) != I".into()));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    /// Total degree: sum over rows of the max entry degree.
    pub fn delta(&self) -> usize {
        self.generator.delta()
    }

    /// Memory: max row degree.
    pub fn memory(&self) -> usize {
        self.generator.memory()
    }

    pub fn generator(&self) -> &PolyMat {
        &self.generator
    }

    pub fn control(&self) -> Option<&PolyMat> {
        self.control.as_ref()
    }

    pub fn right_inverse(&self) -> Option<&PolyMat> {
        self.right_inverse.as_ref()
    }

    /// The generalised Singleton bound for this code's parameters.
    pub fn gsb(&self) -> u64 {
        gsb(self.n(), self.k(), self.delta())
    }

    /// Generator of the module-theoretic dual: transpose of the control with
    /// coefficients reversed at the control-polynomial degree. Rows are then
    /// normalized by stripping common z factors; the source displays all have
    /// uniform control degrees, where this is a no-op, but a control with
    /// unequal column degrees would otherwise pick up spurious z multiples.
    pub fn dual_generator(&self) -> Result<PolyMat, ConvError> {
        let ctrl = self.control.as_ref().ok_or(ConvError::MissingControl)?;
        let m = ctrl.degree();
        let mut dual = ctrl.reverse_coefficients(m)?.transpose();
        for r in 0..dual.rows() {
            let valuation = (0..dual.cols())
                .filter_map(|c| dual.entry(r, c).iter().position(|&x| x != 0))
                .min();
            if let Some(v) = valuation {
                if v > 0 {
                    for c in 0..dual.cols() {
                        let e = dual.entry(r, c);
                        if !e.is_empty() {
                            let shifted = e[v..].to_vec();
                            dual.set_entry(r, c, shifted);
                        }
                    }
                }
            }
        }
        Ok(dual)
    }

    /// The dual as a full code: generator from `dual_generator`, control
    /// rev(G)^T (which annihilates it, since rev(M)^T rev(G)^T = rev(G M)^T).
    pub fn dual_code(&self) -> Result<ConvCode, ConvError> {
        let generator = self.dual_generator()?;
        let w = self.generator.degree();
        let control = self.generator.reverse_coefficients(w)?.transpose();
        ConvCode::from_parts(generator, Some(control), None)
    }

    /// A right inverse, preferring the stored one and falling back to the
    /// Smith-form construction.
    pub fn any_right_inverse(&self) -> Result<PolyMat, ConvError> {
        if let Some(r) = &self.right_inverse {
            return Ok(r.clone());
        }
        let snf = smith_normal_form(&self.generator);
        if snf.rank() != self.k() || !snf.invariants_are_units() {
            return Err(ConvError::NotRightInvertible);
        }
        right_inverse_from_snf(&self.generator, &snf)
    }

    /// True when a polynomial right inverse exists: the stored one verifies,
    /// or all invariant factors of G(z) are nonzero constants (equivalently
    /// the gcd of the k x k minors is a nonzero constant).
    pub fn is_noncatastrophic(&self) -> bool {
        if self.right_inverse.is_some() {
            return true;
        }
        let snf = smith_normal_form(&self.generator);
        snf.rank() == self.k() && snf.invariants_are_units()
    }
}

fn right_inverse_from_snf(
    generator: &PolyMat,
    snf: &crate::poly::SmithForm,
) -> Result<PolyMat, ConvError> {
    let spec = generator.spec().clone();
    let k = generator.rows();
    let n = generator.cols();
    // R = right * Sigma^+ * left with Sigma^+ = diag(1/gamma_i) padded to n x k.
    let mut sigma_plus = PolyMat::zero(spec.clone(), n, k);
    for (i, inv) in snf.invariants.iter().enumerate() {
        let c = spec.inv(inv[0])?;
        sigma_plus.set_entry(i, i, vec![c]);
    }
    let r = snf.right.mul(&sigma_plus)?.mul(&snf.left)?;
    debug_assert_eq!(
        generator.mul(&r).unwrap(),
        PolyMat::identity(spec, k),
        "Smith-form right inverse failed verification"
    );
    Ok(r)
}

/// Generalised Singleton bound (n-r)(floor(delta/r)+1) + delta + 1.
pub fn gsb(n: usize, r: usize, delta: usize) -> u64 {
    assert!(r > 0 && r < n, "gsb needs 0 < r < n");
    ((n - r) as u64) * ((delta / r) as u64 + 1) + delta as u64 + 1
}

fn split_sizes(split: &SchemeSplit) -> Vec<usize> {
    split.block_sizes()
}

/// Lifts a split (and its scheme) through a field embedding.
fn lift_split(split: &SchemeSplit, emb: &FieldEmbedding) -> Result<SchemeSplit, ConvError> {
    let scheme = split.scheme();
    let ext = emb.ext().clone();
    let lift = |m: &Mat| Mat::from_fn(ext.clone(), m.rows(), m.cols(), |r, c| emb.map(m.get(r, c)));
    let lifted = UnitScheme::from_pair(lift(scheme.u()), lift(scheme.v()))?;
    let blocks: Vec<Vec<usize>> = (0..split.block_count())
        .map(|i| split.block_indices(i).to_vec())
        .collect();
    Ok(lifted.split(blocks)?)
}

/// Ensures a square root of -1 is on hand: returns the (possibly lifted)
/// split together with i. In characteristic 2, i = 1 and nothing moves.
fn split_with_sqrt_minus_one(split: &SchemeSplit) -> Result<(SchemeSplit, u64), ConvError> {
    let spec = split.scheme().u().spec().clone();
    if let Some(i) = spec.sqrt_minus_one() {
        return Ok((split.clone(), i));
    }
    let emb = spec.quadratic_extension()?;
    let lifted = lift_split(split, &emb)?;
    let i = emb
        .ext()
        .sqrt_minus_one()
        .expect("quadratic extension by x^2+1 contains i");
    Ok((lifted, i))
}

/// Memory-1 code from a 2-block split with equal halves:
/// G(z) = A + Bz (or A + iBz), control D - Cz (or iD + Cz), right inverse
/// C / alpha.
pub fn build_memory1_equal(split: &SchemeSplit, twist: Twist) -> Result<ConvCode, ConvError> {
    let sizes = split_sizes(split);
    if sizes.len() != 2 {
        return Err(ConvError::BlockCountMismatch {
            expected: 2,
            got: sizes.len(),
        });
    }
    if sizes[0] != sizes[1] {
        return Err(ConvError::UnequalBlocks(sizes));
    }
    let (split, i) = match twist {
        Twist::Plain => (split.clone(), 1),
        Twist::SqrtMinusOne => split_with_sqrt_minus_one(split)?,
    };
    let spec = split.scheme().u().spec().clone();
    let a = split.u_block(0);
    let b = split.u_block(1);
    let c = split.v_block(0);
    let d = split.v_block(1);
    let alpha_inv = spec.inv(split.scheme().alpha())?;
    let (generator, control) = match twist {
        Twist::Plain => (
            PolyMat::from_coefficient_mats(&[a, b])?,
            PolyMat::from_coefficient_mats(&[d, c.neg()])?,
        ),
        Twist::SqrtMinusOne => (
            PolyMat::from_coefficient_mats(&[a, b.scalar_mul(i)])?,
            PolyMat::from_coefficient_mats(&[d.scalar_mul(i), c.clone()])?,
        ),
    };
    let rinv = PolyMat::from_const(&c.scalar_mul(alpha_inv));
    ConvCode::from_parts(generator, Some(control), Some(rinv))
}

/// Memory-1 code from a 2-block split with r > n-r: B is zero-padded to
/// B1 = (0; B), G(z) = A + B1 z (or A + i B1 z), control D - C1 z (or
/// iD + C1 z) with C1 the last n-r columns of C.
pub fn build_memory1_unequal(split: &SchemeSplit, twist: Twist) -> Result<ConvCode, ConvError> {
    let sizes = split_sizes(split);
    if sizes.len() != 2 {
        return Err(ConvError::BlockCountMismatch {
            expected: 2,
            got: sizes.len(),
        });
    }
    let (r, rest) = (sizes[0], sizes[1]);
    let n = r + rest;
    if 2 * r <= n {
        return Err(ConvError::NeedsMajorityRate);
    }
    if twist == Twist::SqrtMinusOne && split.scheme().u().orthogonal_scalar().is_none() {
        return Err(ConvError::TwistNeedsOrthogonal);
    }
    let (split, i) = match twist {
        Twist::Plain => (split.clone(), 1),
        Twist::SqrtMinusOne => split_with_sqrt_minus_one(split)?,
    };
    let spec = split.scheme().u().spec().clone();
    let a = split.u_block(0);
    let b = split.u_block(1);
    let c = split.v_block(0);
    let d = split.v_block(1);
    let t = 2 * r - n;
    let b1 = Mat::zero(spec.clone(), t, n).vstack(&b)?;
    let c1 = c.select_cols(&(t..r).collect::<Vec<_>>())?;
    let alpha_inv = spec.inv(split.scheme().alpha())?;
    let (generator, control) = match twist {
        Twist::Plain => (
            PolyMat::from_coefficient_mats(&[a, b1])?,
            PolyMat::from_coefficient_mats(&[d, c1.neg()])?,
        ),
        Twist::SqrtMinusOne => (
            PolyMat::from_coefficient_mats(&[a, b1.scalar_mul(i)])?,
            PolyMat::from_coefficient_mats(&[d.scalar_mul(i), c1])?,
        ),
    };
    let rinv = PolyMat::from_const(&c.scalar_mul(alpha_inv));
    ConvCode::from_parts(generator, Some(control), Some(rinv))
}

/// Memory-3 code from four equal blocks: G(z) = A + Bz + Cz^2 + Dz^3 with
/// control (F,G,H) - (E,H,G)z - (H,E,F)z^2 + (G,F,E)z^3 and right inverse
/// E / alpha.
pub fn build_memory3(split: &SchemeSplit, twist: Twist) -> Result<ConvCode, ConvError> {
    let sizes = split_sizes(split);
    if sizes.len() != 4 {
        return Err(ConvError::BlockCountMismatch {
            expected: 4,
            got: sizes.len(),
        });
    }
    if sizes.iter().any(|&s| s != sizes[0]) {
        return Err(ConvError::UnequalBlocks(sizes));
    }
    let spec = split.scheme().u().spec().clone();
    if twist == Twist::SqrtMinusOne && !spec.char2() {
        // The displayed identities only collapse for i = 1.
        return Err(ConvError::NeedsCharacteristicTwo);
    }
    let (a, b, c, d) = (
        split.u_block(0),
        split.u_block(1),
        split.u_block(2),
        split.u_block(3),
    );
    let (e, f, g, h) = (
        PolyMat::from_const(&split.v_block(0)),
        PolyMat::from_const(&split.v_block(1)),
        PolyMat::from_const(&split.v_block(2)),
        PolyMat::from_const(&split.v_block(3)),
    );
    let generator = PolyMat::from_coefficient_mats(&[a, b, c, d])?;
    let hs = |x: &PolyMat, y: &PolyMat, z: &PolyMat| PolyMat::hstack(&[x, y, z]);
    let c0 = hs(&f, &g, &h)?;
    let c1 = hs(&e, &h, &g)?.neg();
    let c2 = hs(&h, &e, &f)?.neg();
    let c3 = hs(&g, &f, &e)?;
    let control = PolyMat::from_coefficient_mats(&[
        c0.coefficient_matrix(0),
        c1.coefficient_matrix(0),
        c2.coefficient_matrix(0),
        c3.coefficient_matrix(0),
    ])?;
    let alpha_inv = spec.inv(split.scheme().alpha())?;
    let rinv = PolyMat::from_const(&split.v_block(0).scalar_mul(alpha_inv));
    ConvCode::from_parts(generator, Some(control), Some(rinv))
}

/// Memory-2 code from three equal blocks: G(z) = A + Bz + Cz^2 with the
/// syzygy control (E - Dz, F - Ez) and right inverse D / alpha.
pub fn build_memory2_three_blocks(split: &SchemeSplit) -> Result<ConvCode, ConvError> {
    let sizes = split_sizes(split);
    if sizes.len() != 3 {
        return Err(ConvError::BlockCountMismatch {
            expected: 3,
            got: sizes.len(),
        });
    }
    if sizes.iter().any(|&s| s != sizes[0]) {
        return Err(ConvError::UnequalBlocks(sizes));
    }
    let spec = split.scheme().u().spec().clone();
    let (a, b, c) = (split.u_block(0), split.u_block(1), split.u_block(2));
    let (d, e, f) = (split.v_block(0), split.v_block(1), split.v_block(2));
    let generator = PolyMat::from_coefficient_mats(&[a, b, c])?;
    let left = PolyMat::from_coefficient_mats(&[e.clone(), d.neg()])?;
    let right = PolyMat::from_coefficient_mats(&[f, e.neg()])?;
    let control = PolyMat::hstack(&[&left, &right])?;
    let alpha_inv = spec.inv(split.scheme().alpha())?;
    let rinv = PolyMat::from_const(&d.scalar_mul(alpha_inv));
    ConvCode::from_parts(generator, Some(control), Some(rinv))
}

/// Rate-3/4 patterns over four equal blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedPattern {
    /// G(z) = (A0; A1; A2) + i (0; 0; A3) z, the majority-rate memory-1 form.
    Rate34Mem1,
    /// G(z) = (E0;E1;E2) + (E1;E0;E3)z + (E2;E3;E0)z^2 + (E3;E2;E1)z^3 with
    /// control E3^T + E2^T z + E1^T z^2 + E0^T z^3 (orthogonal U, char 2).
    Rate34Mem3,
}

pub fn mixed_rate_builder(split: &SchemeSplit, pattern: MixedPattern) -> Result<ConvCode, ConvError> {
    let sizes = split_sizes(split);
    if sizes.len() != 4 {
        return Err(ConvError::BlockCountMismatch {
            expected: 4,
            got: sizes.len(),
        });
    }
    if sizes.iter().any(|&s| s != sizes[0]) {
        return Err(ConvError::UnequalBlocks(sizes));
    }
    match pattern {
        MixedPattern::Rate34Mem1 => {
            let merged: Vec<usize> = (0..3)
                .flat_map(|i| split.block_indices(i).iter().copied())
                .collect();
            let tail = split.block_indices(3).to_vec();
            let two_block = split.scheme().split(vec![merged, tail])?;
            build_memory1_unequal(&two_block, Twist::SqrtMinusOne)
        }
        MixedPattern::Rate34Mem3 => {
            let spec = split.scheme().u().spec().clone();
            if split.scheme().u().orthogonal_scalar().is_none() {
                return Err(ConvError::TwistNeedsOrthogonal);
            }
            if !spec.char2() {
                return Err(ConvError::NeedsCharacteristicTwo);
            }
            let blocks: Vec<Mat> = (0..4).map(|i| split.u_block(i)).collect();
            let stack3 = |x: usize, y: usize, z: usize| -> Result<Mat, ConvError> {
                Ok(blocks[x].vstack(&blocks[y])?.vstack(&blocks[z])?)
            };
            let g0 = stack3(0, 1, 2)?;
            let g1 = stack3(1, 0, 3)?;
            let g2 = stack3(2, 3, 0)?;
            let g3 = stack3(3, 2, 1)?;
            let generator = PolyMat::from_coefficient_mats(&[g0, g1, g2, g3])?;
            let control = PolyMat::from_coefficient_mats(&[
                blocks[3].transpose(),
                blocks[2].transpose(),
                blocks[1].transpose(),
                blocks[0].transpose(),
            ])?;
            ConvCode::from_parts(generator, Some(control), None)
        }
    }
}

/// Free-distance search result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeDistance {
    pub value: u32,
    /// True when two consecutive depths agreed and the value respects the
    /// generalised Singleton bound.
    pub settled: bool,
    /// The last information-polynomial degree that was searched.
    pub depth_reached: usize,
}

fn checked_pow_u128(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Minimum weight of P(z) G(z) over nonzero information polynomials with
/// deg P <= depth; weight counts nonzero field coefficients across all
/// coordinate polynomials.
pub fn weight_at_depth(code: &ConvCode, depth: usize, cap: u64) -> Result<u32, ConvError> {
    let spec = code.generator().spec().clone();
    let q = spec.q();
    let k = code.k();
    let digit_count = k * (depth + 1);
    let needed = checked_pow_u128(q, digit_count);
    if needed > cap as u128 {
        return Err(ConvError::BudgetExceeded { needed, cap });
    }
    let oracle = ConvOracle::new(code, depth);
    const CHUNK: u64 = 1 << 14;
    let mut tasks: Vec<(usize, u64, u64)> = Vec::new();
    for lead in 0..digit_count {
        let count = q.pow((digit_count - 1 - lead) as u32);
        let mut start = 0u64;
        while start < count {
            let len = CHUNK.min(count - start);
            tasks.push((lead, start, len));
            start += len;
        }
    }
    let best = tasks
        .par_iter()
        .map(|&(lead, start, len)| oracle.scan(lead, start, len))
        .min()
        .expect("digit_count >= 1");
    Ok(best)
}

struct ConvOracle {
    spec: FieldSpec,
    n: usize,
    k: usize,
    depth: usize,
    mu: usize,
    /// row_coeffs[i][s] = z^s coefficient row of generator row i (length n).
    row_coeffs: Vec<Vec<Vec<u64>>>,
}

impl ConvOracle {
    fn new(code: &ConvCode, depth: usize) -> Self {
        let gen = code.generator();
        let spec = gen.spec().clone();
        let n = gen.cols();
        let k = gen.rows();
        let mu = gen.memory();
        let mut row_coeffs = Vec::with_capacity(k);
        for i in 0..k {
            let deg = gen.row_degree(i);
            let mut per_s = Vec::with_capacity(deg + 1);
            for s in 0..=deg {
                let row: Vec<u64> = (0..n)
                    .map(|j| gen.entry(i, j).get(s).copied().unwrap_or(0))
                    .collect();
                per_s.push(row);
            }
            row_coeffs.push(per_s);
        }
        ConvOracle {
            spec,
            n,
            k,
            depth,
            mu,
            row_coeffs,
        }
    }

    /// Apply a digit change: digit index = t*k + i changes by field delta.
    #[inline]
    fn apply(&self, cw: &mut [u64], wt: &mut u32, pos: usize, delta: u64) {
        let t = pos / self.k;
        let i = pos % self.k;
        for (s, row) in self.row_coeffs[i].iter().enumerate() {
            let base = (t + s) * self.n;
            for (j, &rv) in row.iter().enumerate() {
                if rv == 0 {
                    continue;
                }
                let idx = base + j;
                let oldc = cw[idx];
                let newc = self.spec.add(oldc, self.spec.mul(delta, rv));
                if oldc != 0 {
                    *wt -= 1;
                }
                if newc != 0 {
                    *wt += 1;
                }
                cw[idx] = newc;
            }
        }
    }

    /// Scans one scalar-class range: lead digit fixed to 1, lower digits 0,
    /// higher digits run an odometer from `start` for `len` steps.
    fn scan(&self, lead: usize, start: u64, len: u64) -> u32 {
        let q = self.spec.q();
        let digit_count = self.k * (self.depth + 1);
        let mut digits = vec![0u64; digit_count];
        digits[lead] = 1;
        let mut s = start;
        for d in digits.iter_mut().take(digit_count).skip(lead + 1) {
            *d = s % q;
            s /= q;
        }
        let mut cw = vec![0u64; self.n * (self.depth + self.mu + 1)];
        let mut wt = 0u32;
        for (pos, &dv) in digits.iter().enumerate() {
            if dv != 0 {
                self.apply(&mut cw, &mut wt, pos, dv);
            }
        }
        let mut best = wt;
        for _ in 1..len {
            let mut pos = lead + 1;
            loop {
                let old = digits[pos];
                let new = if old + 1 == q { 0 } else { old + 1 };
                digits[pos] = new;
                self.apply(&mut cw, &mut wt, pos, self.spec.sub(new, old));
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
}

/// Free distance by iterative deepening starting at the memory, stopping
/// when two consecutive depths agree (settled) or the budget/depth limit is
/// reached. Refuses catastrophic encoders.
pub fn free_distance(
    code: &ConvCode,
    max_depth: Option<usize>,
    cap: u64,
) -> Result<FreeDistance, ConvError> {
    if !code.is_noncatastrophic() {
        return Err(ConvError::Catastrophic);
    }
    let mu = code.memory();
    let max_depth = max_depth.unwrap_or(3 * mu + 2).max(mu + 1);
    let bound = gsb(code.n(), code.k(), code.delta());
    let mut prev: Option<u32> = None;
    let mut depth = mu;
    loop {
        match weight_at_depth(code, depth, cap) {
            Ok(value) => {
                if prev == Some(value) {
                    return Ok(FreeDistance {
                        value,
                        settled: value as u64 <= bound,
                        depth_reached: depth,
                    });
                }
                prev = Some(value);
            }
            Err(ConvError::BudgetExceeded { needed, cap }) => {
                return match prev {
                    Some(value) => Ok(FreeDistance {
                        value,
                        settled: false,
                        depth_reached: depth - 1,
                    }),
                    None => Err(ConvError::BudgetExceeded { needed, cap }),
                };
            }
            Err(other) => return Err(other),
        }
        if depth == max_depth {
            return Ok(FreeDistance {
                value: prev.expect("at least one depth searched"),
                settled: false,
                depth_reached: depth,
            });
        }
        depth += 1;
    }
}

/// Minimum weight of P(z) G(z) over information polynomials with exactly
/// `support` nonzero coefficient vectors of degree <= depth.
pub fn support_distance_profile(
    code: &ConvCode,
    support: usize,
    depth: usize,
    cap: u64,
) -> Result<u32, ConvError> {
    assert!(support >= 1);
    if !code.is_noncatastrophic() {
        return Err(ConvError::Catastrophic);
    }
    let spec = code.generator().spec().clone();
    let q = spec.q();
    let k = code.k();
    let positions = depth + 1;
    if support > positions {
        return Err(ConvError::ConstructionIdentity(format!(
            "support {support} cannot exceed depth+1 = {positions}"
        )));
    }
    let vec_count = checked_pow_u128(q, k);
    let nonzero = vec_count - 1;
    let classes = nonzero / (q as u128 - 1).max(1);
    let combos = binomial(positions, support);
    let needed = combos
        .saturating_mul(classes)
        .saturating_mul(nonzero.saturating_pow(support as u32 - 1));
    if needed > cap as u128 {
        return Err(ConvError::BudgetExceeded { needed, cap });
    }
    let oracle = ConvOracle::new(code, depth);
    let mut best = u32::MAX;
    let mut chosen = Vec::with_capacity(support);
    enumerate_supports(&oracle, q, k, positions, support, 0, &mut chosen, &mut best);
    Ok(best)
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn enumerate_supports(
    oracle: &ConvOracle,
    q: u64,
    k: usize,
    positions: usize,
    remaining: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    best: &mut u32,
) {
    if remaining == 0 {
        scan_support(oracle, q, k, chosen, best);
        return;
    }
    for t in from..=positions - remaining {
        chosen.push(t);
        enumerate_supports(oracle, q, k, positions, remaining - 1, t + 1, chosen, best);
        chosen.pop();
    }
}

/// Enumerates all assignments of nonzero coefficient vectors to the chosen
/// support positions (the first position's vector is lead-normalized) and
/// records the minimum codeword weight.
fn scan_support(oracle: &ConvOracle, q: u64, k: usize, chosen: &[usize], best: &mut u32) {
    let s = chosen.len();
    let vec_count = q.pow(k as u32);
    // values[v] = the v-th nonzero vector encoding in [1, q^k)
    let mut assign = vec![1u64; s];
    loop {
        // Lead normalization: the first support vector's lowest nonzero digit
        // must be 1, otherwise the scalar class is counted elsewhere.
        let lead_ok = {
            let mut v = assign[0];
            let mut lead_digit = 0;
            while v != 0 {
                lead_digit = v % q;
                if lead_digit != 0 {
                    break;
                }
                v /= q;
            }
            lead_digit == 1
        };
        if lead_ok {
            let mut cw = vec![0u64; oracle.n * (oracle.depth + oracle.mu + 1)];
            let mut wt = 0u32;
            for (slot, &t) in chosen.iter().enumerate() {
                let mut v = assign[slot];
                let mut i = 0usize;
                while v != 0 {
                    let digit = v % q;
                    if digit != 0 {
                        oracle.apply(&mut cw, &mut wt, t * k + i, digit);
                    }
                    v /= q;
                    i += 1;
                }
            }
            if wt < *best {
                *best = wt;
            }
        }
        // Next assignment: odometer over nonzero vector encodings.
        let mut slot = 0usize;
        loop {
            assign[slot] += 1;
            if assign[slot] < vec_count {
                break;
            }
            assign[slot] = 1;
            slot += 1;
            if slot == s {
                return;
            }
        }
    }
}

/// Convolutional classification of the row module against its dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvClass {
    SelfDual,
    Dc,
    Lcd,
    None,
}

impl std::fmt::Display for ConvClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConvClass::SelfDual => "self_dual",
            ConvClass::Dc => "dc",
            ConvClass::Lcd => "lcd",
            ConvClass::None => "none",
        };
        write!(f, "{s}")
    }
}

/// Is every row of `sub` inside the row module of `code`?
///
/// With a stored right inverse this is P := sub * R followed by checking
/// P * G = sub exactly. Otherwise the question becomes finite linear
/// algebra over the field: if x G = v is solvable over F[z] at all, the
/// unique rational solution is polynomial of degree at most
/// deg(v) + (k-1) deg(G) (Cramer through k independent columns), so v must
/// lie in the F-span of the shifts z^s * G_i within that window.
fn module_contains(code: &ConvCode, sub: &PolyMat) -> Result<bool, ConvError> {
    if let Some(r) = code.right_inverse() {
        let p = sub.mul(r)?;
        return Ok(p.mul(code.generator())? == *sub);
    }
    let gen = code.generator();
    let k = gen.rows();
    let x_bound = sub.degree() + (k.saturating_sub(1)) * gen.memory();
    let window = x_bound + gen.memory();
    let lattice = sliding_lattice(gen, window);
    let targets = sliding_lattice_rows(sub, window);
    let base_rank = lattice.rank();
    let stacked = lattice.vstack(&targets)?;
    Ok(stacked.rank() == base_rank)
}

/// Rows of `m` expanded into coefficient vectors of width n*(window+1),
/// without shifts.
fn sliding_lattice_rows(m: &PolyMat, window: usize) -> Mat {
    let n = m.cols();
    let width = n * (window + 1);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = vec![0u64; width];
        for j in 0..n {
            for (t, &coeff) in m.entry(i, j).iter().enumerate() {
                row[t * n + j] = coeff;
            }
        }
        rows.push(row);
    }
    Mat::from_rows(m.spec().clone(), rows).expect("rectangular by construction")
}

/// Sliding-block lattice of a polynomial row space: rows are z^s * row_i
/// expanded into coefficient vectors up to total degree `window`.
fn sliding_lattice(m: &PolyMat, window: usize) -> Mat {
    let spec = m.spec().clone();
    let n = m.cols();
    let mu = m.memory();
    let shifts = window - mu;
    let width = n * (window + 1);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.rows() * (shifts + 1));
    for s in 0..=shifts {
        for i in 0..m.rows() {
            let mut row = vec![0u64; width];
            for j in 0..n {
                for (t, &coeff) in m.entry(i, j).iter().enumerate() {
                    row[(s + t) * n + j] = coeff;
                }
            }
            rows.push(row);
        }
    }
    Mat::from_rows(spec, rows).expect("rectangular by construction")
}

/// LCD/DC/self-dual decision. Containments go through right inverses; the
/// LCD test is the sliding-block rank comparison at window
/// memory(G) + memory(dual) + 1.
pub fn conv_classify(code: &ConvCode) -> Result<ConvClass, ConvError> {
    let dual_code = code.dual_code()?;
    let dual = dual_code.generator().clone();
    let dual_in_code = module_contains(code, &dual)?;
    let code_in_dual = module_contains(&dual_code, code.generator())?;
    if dual_in_code && code_in_dual {
        return Ok(ConvClass::SelfDual);
    }
    if dual_in_code {
        return Ok(ConvClass::Dc);
    }
    let window = code.generator().memory() + dual.memory() + 1;
    let lat_g = sliding_lattice(code.generator(), window);
    let lat_d = sliding_lattice(&dual, window);
    let stacked = lat_g.vstack(&lat_d)?;
    if lat_g.rank() + lat_d.rank() == stacked.rank() {
        return Ok(ConvClass::Lcd);
    }
    Ok(ConvClass::None)
}

/// Quantum convolutional parameters [[n, 2k-n, d]] from a DC code.
pub fn conv_css_parameters(code: &ConvCode, d: u32) -> [u64; 3] {
    let n = code.n() as u64;
    let k = code.k() as u64;
    [n, 2 * k - n, d as u64]
}

/// Closed form of the memory-1 equal-split free distance: d(A) + d(B).
pub fn memory1_equal_distance_formula(split: &SchemeSplit, cap: u64) -> Result<u32, ConvError> {
    let d1 = min_weight_of_rowspace(&split.u_block(0), cap)?;
    let d2 = min_weight_of_rowspace(&split.u_block(1), cap)?;
    Ok(d1 + d2)
}

/// Closed form of the memory-1 unequal-split distance:
/// min(d(A1), d(A) + d(stack(A1, B))) with A1 the first 2r-n rows of A.
pub fn memory1_unequal_distance_formula(split: &SchemeSplit, cap: u64) -> Result<u32, ConvError> {
    let sizes = split.block_sizes();
    let (r, rest) = (sizes[0], sizes[1]);
    let n = r + rest;
    let t = 2 * r - n;
    let a = split.u_block(0);
    let b = split.u_block(1);
    let a1 = a.select_rows(&(0..t).collect::<Vec<_>>())?;
    let d_a1 = min_weight_of_rowspace(&a1, cap)?;
    let d_a = min_weight_of_rowspace(&a, cap)?;
    let d_stack = min_weight_of_rowspace(&a1.vstack(&b)?, cap)?;
    Ok(d_a1.min(d_a + d_stack))
}
