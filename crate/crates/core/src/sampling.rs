//! Seeded sampling of matrices for property suites and randomized row
//! selection: a small SplitMix64 generator, random invertible matrices, and
//! random orthogonal matrices (signed permutations, reflections in odd
//! characteristic, conjugated orthogonal blocks in characteristic 2).

use crate::field::FieldSpec;
use crate::linalg::Mat;

/// SplitMix64; deterministic across platforms.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        self.next_u64() % bound
    }
}

pub fn random_mat(spec: &FieldSpec, rows: usize, cols: usize, rng: &mut Rng) -> Mat {
    Mat::from_fn(spec.clone(), rows, cols, |_, _| rng.below(spec.q()))
}

/// Random invertible n x n matrix by rejection.
pub fn random_invertible(spec: &FieldSpec, n: usize, rng: &mut Rng) -> Mat {
    loop {
        let m = random_mat(spec, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// Random full-row-rank r x n matrix by rejection.
pub fn random_full_rank(spec: &FieldSpec, r: usize, n: usize, rng: &mut Rng) -> Mat {
    loop {
        let m = random_mat(spec, r, n, rng);
        if m.rank() == r {
            return m;
        }
    }
}

fn random_signed_permutation(spec: &FieldSpec, n: usize, rng: &mut Rng) -> Mat {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below((i + 1) as u64) as usize;
        perm.swap(i, j);
    }
    let mut rows = Vec::with_capacity(n);
    for &p in &perm {
        let sign = if spec.char2() || rng.below(2) == 0 {
            1
        } else {
            spec.neg(1)
        };
        let mut row = vec![0u64; n];
        row[p] = sign;
        rows.push(row);
    }
    Mat::from_rows(spec.clone(), rows).expect("square")
}

/// Reflection I - (2 / v^T v) v v^T for a vector with v^T v != 0; only
/// meaningful in odd characteristic.
fn random_reflection(spec: &FieldSpec, n: usize, rng: &mut Rng) -> Mat {
    loop {
        let v: Vec<u64> = (0..n).map(|_| rng.below(spec.q())).collect();
        let norm = v
            .iter()
            .fold(0u64, |acc, &x| spec.add(acc, spec.mul(x, x)));
        if norm == 0 {
            continue;
        }
        let two = spec.add(1, 1);
        let coeff = spec.mul(two, spec.inv(norm).expect("nonzero"));
        return Mat::from_fn(spec.clone(), n, n, |r, c| {
            let outer = spec.mul(coeff, spec.mul(v[r], v[c]));
            let diag = if r == c { 1 } else { 0 };
            spec.sub(diag, outer)
        });
    }
}

/// Random orthogonal matrix (M M^T = I). In odd characteristic: a signed
/// permutation times a few reflections. In characteristic 2: permutation
/// conjugates of a direct sum with the 4x4 orthogonal involution when it
/// fits, else a permutation.
pub fn random_orthogonal(spec: &FieldSpec, n: usize, rng: &mut Rng) -> Mat {
    let m = if spec.char2() {
        let perm = random_signed_permutation(spec, n, rng);
        if n >= 4 {
            let x4 = [[0, 1, 1, 1], [1, 1, 1, 0], [1, 1, 0, 1], [1, 0, 1, 1]];
            let block = Mat::from_fn(spec.clone(), n, n, |r, c| {
                if r < 4 && c < 4 {
                    x4[r][c]
                } else if r == c {
                    1
                } else {
                    0
                }
            });
            let conj = random_signed_permutation(spec, n, rng);
            let inner = conj
                .mul(&block)
                .and_then(|m| m.mul(&conj.transpose()))
                .expect("shapes agree");
            perm.mul(&inner).expect("shapes agree")
        } else {
            perm
        }
    } else {
        let mut m = random_signed_permutation(spec, n, rng);
        for _ in 0..3 {
            m = m
                .mul(&random_reflection(spec, n, rng))
                .expect("shapes agree");
        }
        m
    };
    debug_assert_eq!(m.orthogonal_scalar(), Some(1));
    m
}
