//! The group ring Z_2(C_n x C_4): element algebra, the regular-representation
//! embedding into 4n x 4n binary matrices (block-circulant of circulants),
//! unit inversion, Tanner-graph short-cycle counting, and LDPC code
//! derivation from low-support units.

use std::fmt;

use thiserror::Error;

use crate::block::BlockCode;
use crate::conv::{self, ConvCode, ConvError, Twist};
use crate::field::FieldSpec;
use crate::linalg::{LinalgError, Mat};
use crate::scheme::{SchemeError, UnitScheme};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupRingError {
    #[error("cannot parse group ring literal {text:?}: {reason}")]
    BadLiteral { text: String, reason: String },
    #[error("elements live in different group rings (n = {0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("matrix has non-binary entries")]
    NonBinary,
    #[error("short-cycle requirement violated: {0} four-cycles, {1:?} six-cycles")]
    GirthViolated(u64, Option<u64>),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Conv(#[from] ConvError),
}

/// An element of Z_2(C_n x C_4): coefficient of h^j g^i at index j*n + i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElem {
    n: usize,
    coeffs: Vec<u64>,
}

impl GroupRingElem {
    pub fn zero(n: usize) -> Self {
        GroupRingElem {
            n,
            coeffs: vec![0; 4 * n],
        }
    }

    pub fn one(n: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[0] = 1;
        e
    }

    /// Term h^j g^i.
    pub fn term(n: usize, j: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[(j % 4) * n + (i % n)] = 1;
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, j: usize, i: usize) -> u64 {
        self.coeffs[(j % 4) * self.n + (i % self.n)]
    }

    pub fn support(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupRingError> {
        if self.n != other.n {
            return Err(GroupRingError::OrderMismatch(self.n, other.n));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a ^ b)
            .collect();
        Ok(GroupRingElem { n: self.n, coeffs })
    }

    /// Product in the group ring: convolution over C_n x C_4 with mod-2
    /// coefficients.
    pub fn mul(&self, other: &Self) -> Result<Self, GroupRingError> {
        if self.n != other.n {
            return Err(GroupRingError::OrderMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = Self::zero(n);
        for j1 in 0..4 {
            for i1 in 0..n {
                if self.coeffs[j1 * n + i1] == 0 {
                    continue;
                }
                for j2 in 0..4 {
                    for i2 in 0..n {
                        if other.coeffs[j2 * n + i2] == 0 {
                            continue;
                        }
                        let idx = ((j1 + j2) % 4) * n + (i1 + i2) % n;
                        out.coeffs[idx] ^= 1;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Regular representation: M[x][y] = coeff(x^{-1} y) with group elements
    /// enumerated h^j g^i at index j*n + i. Since the group is abelian this
    /// is a 4x4 block circulant of n x n circulants.
    pub fn to_matrix(&self) -> Mat {
        let n = self.n;
        let gf2 = FieldSpec::prime(2).expect("2 is prime");
        Mat::from_fn(gf2, 4 * n, 4 * n, |x, y| {
            let (a, b) = (x / n, x % n);
            let (c, d) = (y / n, y % n);
            self.coeffs[((c + 4 - a) % 4) * n + (d + n - b) % n]
        })
    }

    /// Inverse in the group ring,读 off the matrix inverse when it exists.
    pub fn inverse(&self) -> Option<GroupRingElem> {
        let m = self.to_matrix();
        let inv = m.inverse().ok()?;
        // Row 0 is indexed by the identity, so it lists coeff(y) directly.
        let coeffs = inv.row(0).to_vec();
        let u = GroupRingElem { n: self.n, coeffs };
        debug_assert_eq!(
            u.mul(self).expect("same order").support(),
            1,
            "inverse read-off must multiply back to 1"
        );
        Some(u)
    }

    /// Parses `"g^15 + h*g^4 + h^2*g^2 + 1" [@ CnxC4]`. Without the suffix
    /// the cyclic order must be supplied.
    pub fn parse(text: &str, default_n: Option<usize>) -> Result<Self, GroupRingError> {
        let bad = |reason: &str| GroupRingError::BadLiteral {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let (terms_part, n) = match text.split_once('@') {
            Some((lhs, rhs)) => {
                let g = rhs.trim();
                let inner = g
                    .strip_prefix('C')
                    .and_then(|s| s.strip_suffix("xC4"))
                    .ok_or_else(|| bad("group must look like C<n>xC4"))?;
                let n: usize = inner.parse().map_err(|_| bad("bad cyclic order"))?;
                (lhs.trim(), n)
            }
            None => (
                text.trim(),
                default_n.ok_or_else(|| bad("no group suffix and no default order"))?,
            ),
        };
        if n == 0 {
            return Err(bad("cyclic order must be positive"));
        }
        let terms_part = terms_part.trim().trim_matches('"').trim();
        let mut elem = Self::zero(n);
        for raw in terms_part.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let mut h_pow = 0usize;
            let mut g_pow = 0usize;
            if term == "1" {
                elem.coeffs[0] ^= 1;
                continue;
            }
            for factor in term.split('*') {
                let f = factor.trim();
                if let Some(rest) = f.strip_prefix('h') {
                    h_pow = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| bad("bad h power"))?
                    };
                } else if let Some(rest) = f.strip_prefix('g') {
                    g_pow = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| bad("bad g power"))?
                    };
                } else if f == "1" {
                    // multiplicative unit inside a product
                } else {
                    return Err(bad("unrecognized factor"));
                }
            }
            elem.coeffs[(h_pow % 4) * n + g_pow % n] ^= 1;
        }
        Ok(elem)
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for j in 0..4 {
            for i in 0..self.n {
                if self.coeffs[j * self.n + i] == 0 {
                    continue;
                }
                let t = match (j, i) {
                    (0, 0) => "1".to_string(),
                    (0, 1) => "g".to_string(),
                    (0, _) => format!("g^{i}"),
                    (1, 0) => "h".to_string(),
                    (_, 0) => format!("h^{j}"),
                    (1, 1) => "h*g".to_string(),
                    (1, _) => format!("h*g^{i}"),
                    (_, 1) => format!("h^{j}*g"),
                    _ => format!("h^{j}*g^{i}"),
                };
                terms.push(t);
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{} @ C{}xC4", terms.join(" + "), self.n)
        }
    }
}

/// The check element for the [96,48] construction in Z_2(C_24 x C_4):
/// g^15 + g^9 + g^5 + h g^21 + h g^4 + h^2 g^2 + h^3 g^12.
///
/// Support 7 (odd, as every unit of this ring must be: the coefficient sum
/// over the 2-part quotient has to be 1), invertible, and its 96x96 matrix
/// has no four-cycles with row/column support 7.
pub fn ldpc96_check_element() -> GroupRingElem {
    GroupRingElem::parse(
        "g^15 + g^9 + g^5 + h*g^21 + h*g^4 + h^2*g^2 + h^3*g^12",
        Some(24),
    )
    .expect("fixed literal")
}

/// Counts of short Tanner-graph cycles in a binary matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleReport {
    /// Pairs of columns sharing at least two rows, counted per shared-row pair.
    pub four_cycles: u64,
    /// Six-cycles (column triples joined pairwise by distinct rows); only
    /// counted on request.
    pub six_cycles: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GirthRequirement {
    /// No constraint.
    None,
    /// No four-cycles (girth at least 6).
    NoFourCycles,
    /// No four- or six-cycles (girth at least 8).
    NoSixCycles,
}

fn column_bitsets(m: &Mat) -> Result<Vec<Vec<u64>>, GroupRingError> {
    let words = m.rows().div_ceil(64);
    let mut cols = vec![vec![0u64; words]; m.cols()];
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            match m.get(r, c) {
                0 => {}
                1 => cols[c][r / 64] |= 1 << (r % 64),
                _ => return Err(GroupRingError::NonBinary),
            }
        }
    }
    Ok(cols)
}

fn intersection(a: &[u64], b: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, (&x, &y)) in a.iter().zip(b).enumerate() {
        let mut bits = x & y;
        while bits != 0 {
            let t = bits.trailing_zeros() as usize;
            out.push(w * 64 + t);
            bits &= bits - 1;
        }
    }
    out
}

/// Short-cycle census of a binary matrix viewed as a Tanner graph
/// (rows = checks, columns = variables).
pub fn short_cycle_census(m: &Mat, count_six: bool) -> Result<CycleReport, GroupRingError> {
    let cols = column_bitsets(m)?;
    let nc = cols.len();
    let mut four = 0u64;
    for a in 0..nc {
        for b in a + 1..nc {
            let shared = intersection(&cols[a], &cols[b]).len() as u64;
            if shared >= 2 {
                four += shared * (shared - 1) / 2;
            }
        }
    }
    let six = if count_six {
        let mut count = 0u64;
        for a in 0..nc {
            for b in a + 1..nc {
                let iab = intersection(&cols[a], &cols[b]);
                if iab.is_empty() {
                    continue;
                }
                for c in b + 1..nc {
                    let ibc = intersection(&cols[b], &cols[c]);
                    if ibc.is_empty() {
                        continue;
                    }
                    let iac = intersection(&cols[a], &cols[c]);
                    for &ra in &iab {
                        for &rb in &ibc {
                            if rb == ra {
                                continue;
                            }
                            for &rc in &iac {
                                if rc != ra && rc != rb {
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        Some(count)
    } else {
        None
    };
    Ok(CycleReport {
        four_cycles: four,
        six_cycles: six,
    })
}

/// Per-row support counts of a binary matrix.
pub fn row_supports(m: &Mat) -> Vec<usize> {
    (0..m.rows())
        .map(|r| m.row(r).iter().filter(|&&v| v != 0).count())
        .collect()
}

/// Per-column support counts.
pub fn col_supports(m: &Mat) -> Vec<usize> {
    (0..m.cols())
        .map(|c| (0..m.rows()).filter(|&r| m.get(r, c) != 0).count())
        .collect()
}

/// A unit-derived LDPC code: the full scheme, the kept rows, the code and
/// the cycle census of its control matrix.
#[derive(Debug, Clone)]
pub struct LdpcDerivation {
    pub scheme: UnitScheme,
    pub kept_rows: Vec<usize>,
    pub code: BlockCode,
    pub cycle_report: CycleReport,
}

/// Derives an LDPC block code from a group-ring unit: U = matrix(v^{-1}),
/// V = matrix(v), generator = kept rows of U, control = the remaining
/// columns of V (the low-density side). The census runs on the control.
pub fn ldpc_derive(
    v: &GroupRingElem,
    keep_rows: &[usize],
    require: GirthRequirement,
) -> Result<LdpcDerivation, GroupRingError> {
    let u = v.inverse().ok_or(GroupRingError::NotAUnit)?;
    let scheme = UnitScheme::from_pair(u.to_matrix(), v.to_matrix())?;
    let code = scheme.derive(keep_rows).map_err(GroupRingError::Scheme)?;
    let count_six = matches!(require, GirthRequirement::NoSixCycles);
    let cycle_report = short_cycle_census(code.control(), count_six)?;
    match require {
        GirthRequirement::None => {}
        GirthRequirement::NoFourCycles => {
            if cycle_report.four_cycles > 0 {
                return Err(GroupRingError::GirthViolated(
                    cycle_report.four_cycles,
                    cycle_report.six_cycles,
                ));
            }
        }
        GirthRequirement::NoSixCycles => {
            if cycle_report.four_cycles > 0 || cycle_report.six_cycles != Some(0) {
                return Err(GroupRingError::GirthViolated(
                    cycle_report.four_cycles,
                    cycle_report.six_cycles,
                ));
            }
        }
    }
    Ok(LdpcDerivation {
        scheme,
        kept_rows: keep_rows.to_vec(),
        code,
        cycle_report,
    })
}

/// Memory-1 convolutional LDPC code: the 4n x 4n scheme split into two
/// equal halves, G(z) = A + Bz with the low-density control D - Cz.
pub fn ldpc_conv_memory1(v: &GroupRingElem) -> Result<ConvCode, GroupRingError> {
    let u = v.inverse().ok_or(GroupRingError::NotAUnit)?;
    let scheme = UnitScheme::from_pair(u.to_matrix(), v.to_matrix())?;
    let half = scheme.n() / 2;
    let split = scheme.split_consecutive(&[half, half])?;
    Ok(conv::build_memory1_equal(&split, Twist::Plain)?)
}

/// Memory-3 convolutional LDPC code from the four equal row blocks of the
/// same scheme.
pub fn ldpc_conv_memory3(v: &GroupRingElem) -> Result<ConvCode, GroupRingError> {
    let u = v.inverse().ok_or(GroupRingError::NotAUnit)?;
    let scheme = UnitScheme::from_pair(u.to_matrix(), v.to_matrix())?;
    let quarter = scheme.n() / 4;
    let split = scheme.split_consecutive(&[quarter; 4])?;
    Ok(conv::build_memory3(&split, Twist::Plain)?)
}

/// Writes a binary parity-check matrix (rows = checks, columns = variables)
/// in the alist interchange format: dimensions, max degrees, per-node degree
/// lists, then per-node neighbor lists with 1-based indices.
pub fn to_alist(check: &Mat) -> Result<String, GroupRingError> {
    let cols = column_bitsets(check)?; // validates binary entries
    let n = check.cols();
    let m = check.rows();
    let col_deg = col_supports(check);
    let row_deg = row_supports(check);
    let max_col = col_deg.iter().max().copied().unwrap_or(0);
    let max_row = row_deg.iter().max().copied().unwrap_or(0);
    let mut out = String::new();
    out.push_str(&format!("{n} {m}\n"));
    out.push_str(&format!("{max_col} {max_row}\n"));
    out.push_str(
        &col_deg
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    out.push_str(
        &row_deg
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    for bits in cols.iter().take(n) {
        let rows: Vec<String> = (0..m).filter(|&r| bits[r / 64] >> (r % 64) & 1 == 1).map(|r| (r + 1).to_string()).collect();
        out.push_str(&rows.join(" "));
        out.push('\n');
    }
    for r in 0..m {
        let cs: Vec<String> = (0..n)
            .filter(|&c| check.get(r, c) == 1)
            .map(|c| (c + 1).to_string())
            .collect();
        out.push_str(&cs.join(" "));
        out.push('\n');
    }
    Ok(out)
}
