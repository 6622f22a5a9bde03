//! Fourier unit schemes: F_n built from a primitive n-th root of unity,
//! paired with the column arrangement (e_0^T, e_{n-1}^T, ..., e_1^T) so that
//! F_n * V = n * I_n. Row windows in arithmetic progression give mds codes;
//! the conjugate-pairing rearrangement gives LCD codes.

use thiserror::Error;

use crate::block::BlockCode;
use crate::field::{FieldError, FieldSpec};
use crate::linalg::Mat;
use crate::scheme::{SchemeError, SchemeSplit, UnitScheme};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FourierError {
    #[error("n = {n} vanishes in characteristic {p}, so F_{n} has no unit scheme there")]
    NNotInvertible { n: usize, p: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("step {step} shares a factor with n = {n}")]
    StepNotCoprime { step: usize, n: usize },
    #[error("window size must satisfy 1 <= r < n")]
    BadWindow,
    #[error("arrangement needs 2r > n + 1 so the tail block e_{{n-r+1}}..e_{{r-1}} is nonempty")]
    DegenerateArrangement,
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// The Fourier scheme F_n * V = n * I_n over a fixed field.
#[derive(Debug, Clone)]
pub struct FourierScheme {
    n: usize,
    omega: u64,
    scheme: UnitScheme,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FourierScheme {
    pub fn new(n: usize, spec: FieldSpec) -> Result<Self, FourierError> {
        if n == 0 || (n as u64) % spec.p() == 0 {
            return Err(FourierError::NNotInvertible { n, p: spec.p() });
        }
        let omega = spec.element_of_order(n as u64)?;
        let u = Mat::from_fn(spec.clone(), n, n, |i, j| spec.pow(omega, (i * j) as u64));
        // Column j of V is e_{(n-j) mod n}^T, so U * V = n * I.
        let v = Mat::from_fn(spec.clone(), n, n, |i, j| {
            let row = (n - j) % n;
            spec.pow(omega, (row * i) as u64)
        });
        let scheme = UnitScheme::from_pair(u, v)?;
        debug_assert_eq!(scheme.alpha(), spec.from_int(n as i64));
        Ok(FourierScheme { n, omega, scheme })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> u64 {
        self.omega
    }

    pub fn spec(&self) -> &FieldSpec {
        self.scheme.u().spec()
    }

    pub fn scheme(&self) -> &UnitScheme {
        &self.scheme
    }

    /// Row e_i of F_n.
    pub fn row(&self, i: usize) -> &[u64] {
        self.scheme.u().row(i % self.n)
    }

    /// Code generated by rows e_start, e_{start+step}, ... (r of them,
    /// indices mod n); mds whenever gcd(step, n) = 1.
    pub fn mds_window_code(
        &self,
        start: usize,
        r: usize,
        step: usize,
    ) -> Result<BlockCode, FourierError> {
        if gcd(step % self.n, self.n) != 1 {
            return Err(FourierError::StepNotCoprime { step, n: self.n });
        }
        if r == 0 || r >= self.n {
            return Err(FourierError::BadWindow);
        }
        let rows: Vec<usize> = (0..r).map(|k| (start + k * step) % self.n).collect();
        Ok(self.scheme.derive(&rows)?)
    }

    /// The conjugate-pairing rearrangement: rows in order
    /// e_r..e_{n-1}, e_0..e_{n-r}, e_{n-r+1}..e_{r-1} with V columns
    /// reordered to keep the scheme product n*I. The first 2(n-r)+1 rows
    /// generate an LCD mds code; the full split is returned so the
    /// companion convolutional code can be built from the same scheme.
    pub fn lcd_arrangement(&self, r: usize) -> Result<(BlockCode, SchemeSplit), FourierError> {
        let n = self.n;
        if r >= n || 2 * r < n + 2 {
            return Err(FourierError::DegenerateArrangement);
        }
        let mut order: Vec<usize> = Vec::with_capacity(n);
        order.extend(r..n);
        order.extend(0..=n - r);
        order.extend(n - r + 1..r);
        debug_assert_eq!(order.len(), n);
        self.arranged_scheme(&order, 2 * (n - r) + 1)
    }

    /// Same row set as `lcd_arrangement` (so the same LCD mds block code),
    /// but ordered so that each tail row of the generator block lines up
    /// with its conjugate in the trailing block. With that alignment the
    /// rows of the memory-1 companion's dual generator are rows of the
    /// companion itself, making it dual-containing (in characteristic 2
    /// directly; otherwise through the square-root-of-(-1) twist).
    pub fn conjugate_paired_arrangement(
        &self,
        r: usize,
    ) -> Result<(BlockCode, SchemeSplit), FourierError> {
        let n = self.n;
        if r >= n || 2 * r < n + 2 {
            return Err(FourierError::DegenerateArrangement);
        }
        let k = 2 * (n - r) + 1;
        let m = n - r;
        let s = n - k;
        if 2 * k <= n {
            return Err(FourierError::DegenerateArrangement);
        }
        let mut head: Vec<usize> = Vec::new();
        let mut tail: Vec<usize> = Vec::new();
        if s % 2 == 0 {
            let cut = m - s / 2;
            head.push(0);
            for i in 1..=cut {
                head.push(i);
                head.push(n - i);
            }
            tail.extend(cut + 1..=m);
            tail.extend((cut + 1..=m).rev().map(|i| n - i));
        } else {
            let cut = m - (s - 1) / 2;
            for i in 1..=cut {
                head.push(i);
                head.push(n - i);
            }
            tail.extend(cut + 1..=m);
            tail.push(0);
            tail.extend((cut + 1..=m).rev().map(|i| n - i));
        }
        let mut order = head;
        order.extend(tail);
        order.extend(m + 1..n - m);
        // The assembly above must tile 0..n; reject parameter combinations
        // where it cannot.
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
            return Err(FourierError::DegenerateArrangement);
        }
        self.arranged_scheme(&order, k)
    }

    fn arranged_scheme(
        &self,
        order: &[usize],
        k: usize,
    ) -> Result<(BlockCode, SchemeSplit), FourierError> {
        let n = self.n;
        let spec = self.spec().clone();
        let omega = self.omega;
        let u = Mat::from_fn(spec.clone(), n, n, |i, j| {
            spec.pow(omega, (order[i] * j) as u64)
        });
        let v = Mat::from_fn(spec.clone(), n, n, |i, j| {
            let row = (n - order[j]) % n;
            spec.pow(omega, (row * i) as u64)
        });
        let scheme = UnitScheme::from_pair(u, v)?;
        let code = scheme.derive(&(0..k).collect::<Vec<_>>())?;
        let split = scheme.split_consecutive(&[k, n - k])?;
        Ok((code, split))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::DEFAULT_DISTANCE_CAP;

    #[test]
    fn f7_over_gf8_is_a_unit_scheme() {
        let spec = FieldSpec::extension(2, 3).unwrap();
        let fs = FourierScheme::new(7, spec.clone()).unwrap();
        // 7 = 1 in characteristic 2, so the scheme is F * V = I here.
        assert_eq!(fs.scheme().alpha(), 1);
        let prod = fs.scheme().u().mul(fs.scheme().v()).unwrap();
        assert_eq!(prod, Mat::identity(spec, 7).scalar_mul(1));
    }

    #[test]
    fn f8_over_gf17_exists_and_f4_over_gf8_does_not() {
        assert!(FourierScheme::new(8, FieldSpec::prime(17).unwrap()).is_ok());
        let err = FourierScheme::new(4, FieldSpec::extension(2, 3).unwrap()).unwrap_err();
        assert!(matches!(err, FourierError::NNotInvertible { n: 4, p: 2 }));
    }

    #[test]
    fn row_column_duality() {
        // e_i . e_{(n-j) mod n}^T = n * delta_ij, exhaustively.
        let spec = FieldSpec::prime(17).unwrap();
        let fs = FourierScheme::new(8, spec.clone()).unwrap();
        let u = fs.scheme().u();
        let n_elem = spec.from_int(8);
        for i in 0..8 {
            for j in 0..8 {
                let mut dot = 0u64;
                for t in 0..8 {
                    dot = spec.add(dot, spec.mul(u.get(i, t), u.get((8 - j) % 8, t)));
                }
                let want = if i == j { n_elem } else { 0 };
                assert_eq!(dot, want, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn window_is_mds_for_small_cases() {
        let spec = FieldSpec::extension(2, 3).unwrap();
        let fs = FourierScheme::new(7, spec).unwrap();
        for (start, r, step) in [(0usize, 4usize, 1usize), (0, 5, 1), (2, 3, 2), (0, 6, 1)] {
            let code = fs.mds_window_code(start, r, step).unwrap();
            let d = code.min_distance(DEFAULT_DISTANCE_CAP).unwrap();
            assert_eq!(d as usize, 7 - r + 1, "start={start} r={r} step={step}");
        }
        assert!(matches!(
            fs.mds_window_code(0, 3, 7),
            Err(FourierError::StepNotCoprime { .. })
        ));
        // r = n-1 with step 1 has distance exactly 2.
        let code = fs.mds_window_code(0, 6, 1).unwrap();
        assert_eq!(code.min_distance(DEFAULT_DISTANCE_CAP).unwrap(), 2);
    }

    #[test]
    fn lcd_arrangement_row_pattern_matches_displays() {
        // n = 7, r = 6 gives rows e6, e0, e1 as the generator.
        let spec = FieldSpec::extension(2, 3).unwrap();
        let fs = FourierScheme::new(7, spec).unwrap();
        let (code, split) = fs.lcd_arrangement(6).unwrap();
        assert_eq!(code.dim(), 3);
        assert_eq!(code.generator().row(0), fs.row(6));
        assert_eq!(code.generator().row(1), fs.row(0));
        assert_eq!(code.generator().row(2), fs.row(1));
        assert_eq!(split.block_sizes(), vec![3, 4]);

        // Degenerate: empty tail block rejected (n = 7, r = 4).
        assert!(matches!(
            fs.lcd_arrangement(4),
            Err(FourierError::DegenerateArrangement)
        ));
    }

    #[test]
    fn lcd_arrangement_classifies_lcd_and_mds() {
        let spec = FieldSpec::extension(2, 3).unwrap();
        let fs = FourierScheme::new(7, spec).unwrap();
        for r in [5usize, 6usize] {
            let (code, _) = fs.lcd_arrangement(r).unwrap();
            let report = code.classify(DEFAULT_DISTANCE_CAP);
            assert!(report.flags.lcd, "r={r}");
            assert_eq!(report.flags.mds, Some(true), "r={r}");
        }
    }

    #[test]
    fn conjugate_paired_arrangement_matches_worked_orders() {
        // n = 7, r = 5 reproduces the worked scheme (e0,e1,e6,e2,e5 | e4?,e3?):
        // the generator row set must be {0,1,2,5,6} with conjugates adjacent
        // in the tail, and the block code is the same LCD mds code.
        let spec = FieldSpec::extension(2, 3).unwrap();
        let fs = FourierScheme::new(7, spec).unwrap();
        let (code, split) = fs.conjugate_paired_arrangement(5).unwrap();
        assert_eq!(code.dim(), 5);
        assert_eq!(code.generator().row(0), fs.row(0));
        assert_eq!(code.generator().row(1), fs.row(1));
        assert_eq!(code.generator().row(2), fs.row(6));
        assert_eq!(code.generator().row(3), fs.row(2));
        assert_eq!(code.generator().row(4), fs.row(5));
        assert_eq!(split.block_sizes(), vec![5, 2]);
        let report = code.classify(DEFAULT_DISTANCE_CAP);
        assert!(report.flags.lcd);
        assert_eq!(report.flags.mds, Some(true));

        let (lcd_code, _) = fs.lcd_arrangement(5).unwrap();
        let stacked = code.generator().vstack(lcd_code.generator()).unwrap();
        assert_eq!(stacked.rank(), 5, "same row space as the display order");

        // n = 8 over GF(17): the odd-tail case places e0 mid-tail.
        let fs8 = FourierScheme::new(8, FieldSpec::prime(17).unwrap()).unwrap();
        let (code8, split8) = fs8.conjugate_paired_arrangement(6).unwrap();
        assert_eq!(code8.dim(), 5);
        assert_eq!(split8.block_sizes(), vec![5, 3]);
        let report8 = code8.classify(DEFAULT_DISTANCE_CAP);
        assert!(report8.flags.lcd);
        assert_eq!(report8.flags.mds, Some(true));
    }
}
