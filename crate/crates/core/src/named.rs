//! Hard-coded prototype constructions: the Hamming [7,4,3] unit pair, the
//! Golay reverse circulant, the 4x4 binary orthogonal matrix and the Paley
//! Hadamard matrix of order 12. Matrices are stored exactly as printed in
//! the source displays and validated as unit schemes at construction.

use thiserror::Error;

use crate::field::{FieldError, FieldSpec};
use crate::linalg::{LinalgError, Mat};
use crate::scheme::{SchemeError, UnitScheme};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NamedError {
    #[error("Hadamard-derived codes need characteristic other than 2 or 3, got {0}")]
    BadCharacteristic(u64),
    #[error("unknown named unit {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// A named unit scheme with its provenance.
#[derive(Debug, Clone)]
pub struct NamedUnit {
    pub name: &'static str,
    pub provenance: &'static str,
    pub scheme: UnitScheme,
}

fn gf2() -> FieldSpec {
    FieldSpec::prime(2).expect("2 is prime")
}

/// The completed Hamming unit: U extends the row-modified Hamming generator
/// L, K is the lower 3x7 block, and V is the printed inverse with U*V = I_7.
pub fn hamming_unit() -> NamedUnit {
    let u = Mat::from_rows(
        gf2(),
        vec![
            vec![1, 1, 1, 1, 1, 1, 1],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
            vec![1, 0, 1, 1, 1, 0, 0],
            vec![0, 1, 0, 0, 1, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 0],
        ],
    )
    .expect("fixed matrix");
    let v = Mat::from_rows(
        gf2(),
        vec![
            vec![0, 0, 1, 1, 1, 0, 0],
            vec![1, 1, 0, 1, 1, 1, 1],
            vec![0, 1, 1, 1, 0, 1, 1],
            vec![1, 1, 0, 0, 1, 0, 1],
            vec![1, 0, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 1, 0, 0, 1],
        ],
    )
    .expect("fixed matrix");
    let scheme = UnitScheme::from_pair(u, v).expect("U has inverse V");
    assert_eq!(scheme.alpha(), 1);
    NamedUnit {
        name: "hamming",
        provenance: "Hamming [7,4,3] completed to a 7x7 unit with printed inverse",
        scheme,
    }
}

/// First row of the Golay reverse circulant.
pub const GOLAY_FIRST_ROW: [u64; 12] = [0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 0, 0];

/// The Golay reverse circulant X with X = X^T and X^2 = I_12, as the
/// scheme (X, X).
pub fn golay_unit() -> NamedUnit {
    let x = Mat::from_fn(gf2(), 12, 12, |i, j| GOLAY_FIRST_ROW[(i + j) % 12]);
    let scheme = UnitScheme::from_pair(x.clone(), x).expect("X^2 = I_12");
    NamedUnit {
        name: "golay",
        provenance: "reverse circulant of (0,1,1,0,1,1,1,1,0,1,0,0); (I_12, X) generates the Golay [24,12,8]",
        scheme,
    }
}

fn x4_matrix() -> Mat {
    Mat::from_rows(
        gf2(),
        vec![
            vec![0, 1, 1, 1],
            vec![1, 1, 1, 0],
            vec![1, 1, 0, 1],
            vec![1, 0, 1, 1],
        ],
    )
    .expect("fixed matrix")
}

/// The 4x4 binary orthogonal matrix with X = X^T, X^2 = I_4.
pub fn binary_x4() -> NamedUnit {
    let x = x4_matrix();
    let scheme = UnitScheme::from_pair(x.clone(), x).expect("X^2 = I_4");
    NamedUnit {
        name: "binary-x4",
        provenance: "4x4 binary orthogonal matrix, prototype for the memory-3 constructions",
        scheme,
    }
}

/// Same matrix in its extended-Hamming role: (I_4, X) generates the [8,4,4].
pub fn extended_hamming_x() -> NamedUnit {
    let mut unit = binary_x4();
    unit.name = "extended-hamming-x";
    unit.provenance = "(I_4, X) generates the extended Hamming [8,4,4] self-dual code";
    unit
}

/// Paley type-I Hadamard matrix of order 12 over the integers, built from
/// the quadratic residues of 11 and normalized so the first row and column
/// are all +1. Entries are +1/-1.
pub fn paley_hadamard12_signed() -> Vec<Vec<i64>> {
    let q = 11usize;
    let residues: Vec<bool> = {
        let mut r = vec![false; q];
        for x in 1..q {
            r[(x * x) % q] = true;
        }
        r
    };
    let chi = |d: usize| -> i64 {
        if d == 0 {
            0
        } else if residues[d] {
            1
        } else {
            -1
        }
    };
    let mut h = vec![vec![0i64; 12]; 12];
    for j in 0..12 {
        h[0][j] = 1;
    }
    for i in 1..12 {
        h[i][0] = -1;
        for j in 1..12 {
            let d = (j + q - i) % q;
            h[i][j] = chi(d) + if i == j { 1 } else { 0 };
        }
    }
    // Negate rows 1..12 so the first column is +1 as well.
    for row in h.iter_mut().skip(1) {
        for e in row.iter_mut() {
            *e = -*e;
        }
    }
    h
}

/// The Hadamard-12 reduced into a field of characteristic other than 2 or 3
/// (so that alpha = 12 stays a unit); +1 maps to 1, -1 maps to p-1.
pub fn paley_hadamard12(spec: &FieldSpec) -> Result<Mat, NamedError> {
    if spec.p() == 2 || spec.p() == 3 {
        return Err(NamedError::BadCharacteristic(spec.p()));
    }
    Ok(Mat::from_signed(spec.clone(), &paley_hadamard12_signed())?)
}

/// The Hadamard scheme H * H^T = 12 * I over the given field.
pub fn hadamard12_unit(spec: &FieldSpec) -> Result<NamedUnit, NamedError> {
    let h = paley_hadamard12(spec)?;
    let ht = h.transpose();
    let scheme = UnitScheme::from_pair(h, ht)?;
    Ok(NamedUnit {
        name: "hadamard12",
        provenance: "Paley type-I Hadamard matrix of order 12 (q = 11), first row/column +1",
        scheme,
    })
}

/// Named units available without extra parameters, for listings.
pub fn builtin_names() -> &'static [&'static str] {
    &["hamming", "golay", "binary-x4", "extended-hamming-x", "hadamard12"]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::{self, DEFAULT_DISTANCE_CAP};

    #[test]
    fn hamming_unit_validates_and_reproduces_distances() {
        let unit = hamming_unit();
        let code = unit.scheme.derive(&[0, 1, 2, 3]).unwrap();
        assert_eq!(code.min_distance(DEFAULT_DISTANCE_CAP).unwrap(), 3);
        let k_code = unit.scheme.derive(&[4, 5, 6]).unwrap();
        assert_eq!(k_code.min_distance(DEFAULT_DISTANCE_CAP).unwrap(), 3);
    }

    #[test]
    fn golay_x_is_a_symmetric_involution() {
        let unit = golay_unit();
        let x = unit.scheme.u();
        assert_eq!(x, &x.transpose());
        assert_eq!(x.mul(x).unwrap(), Mat::identity(gf2(), 12));
    }

    #[test]
    fn golay_self_dual_block_code() {
        let x = golay_unit().scheme.u().clone();
        let code = block::self_dual_from_orthogonal(&x).unwrap();
        let report = code.classify(DEFAULT_DISTANCE_CAP);
        assert_eq!((report.n, report.k, report.d), (24, 12, Some(8)));
        assert!(report.flags.self_dual);
    }

    #[test]
    fn golay_control_row_sums_up_to_three_are_unique() {
        let x = golay_unit().scheme.u().clone();
        let code = block::self_dual_from_orthogonal(&x).unwrap();
        let ctrl = code.control();
        let spec = ctrl.spec().clone();
        let mut sums = std::collections::HashSet::new();
        let rows = ctrl.rows();
        let mut insert = |sum: Vec<u64>| assert!(sums.insert(sum), "duplicate row sum");
        for a in 0..rows {
            insert(ctrl.row(a).to_vec());
            for b in a + 1..rows {
                let ab: Vec<u64> = (0..ctrl.cols())
                    .map(|j| spec.add(ctrl.get(a, j), ctrl.get(b, j)))
                    .collect();
                insert(ab);
                for c in b + 1..rows {
                    let abc: Vec<u64> = (0..ctrl.cols())
                        .map(|j| {
                            spec.add(spec.add(ctrl.get(a, j), ctrl.get(b, j)), ctrl.get(c, j))
                        })
                        .collect();
                    insert(abc);
                }
            }
        }
    }

    #[test]
    fn hadamard12_defining_property() {
        let h = paley_hadamard12_signed();
        for i in 0..12 {
            for j in 0..12 {
                let dot: i64 = (0..12).map(|t| h[i][t] * h[j][t]).sum();
                assert_eq!(dot, if i == j { 12 } else { 0 });
            }
        }
        assert!(h.iter().all(|row| row.iter().all(|&e| e == 1 || e == -1)));
        assert!(h[0].iter().all(|&e| e == 1));
        assert!(h.iter().all(|row| row[0] == 1));
    }

    #[test]
    fn hadamard12_over_gf5_scheme() {
        let spec = FieldSpec::prime(5).unwrap();
        let unit = hadamard12_unit(&spec).unwrap();
        assert_eq!(unit.scheme.alpha(), 2); // 12 mod 5
        assert!(matches!(
            hadamard12_unit(&FieldSpec::prime(3).unwrap()),
            Err(NamedError::BadCharacteristic(3))
        ));
    }
}
