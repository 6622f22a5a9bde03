//! Exact arithmetic in GF(p^m).
//!
//! Elements are encoded as integers in `[0, q)`: the base-p digits of the
//! integer are the coefficients of the polynomial-basis representation,
//! low-degree coefficient least significant. This encoding is part of the
//! file-interchange contract, so it must stay bit-exact across runs.

use std::fmt;
use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    BadModulusDegree { expected: u32, got: usize },
    #[error("modulus is not irreducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields ({left} vs {right})")]
    SpecMismatch { left: String, right: String },
    #[error("no element of order {n}: {n} does not divide q - 1 = {group_order}")]
    NoElementOfOrder { n: u64, group_order: u64 },
    #[error("field already contains a square root of -1")]
    ExtensionNotNeeded,
    #[error("element {rep} out of range for field of order {q}")]
    RepOutOfRange { rep: u64, q: u64 },
    #[error("cannot parse field literal {0:?}")]
    BadLiteral(String),
}

/// Lookup tables built once per field; only for small orders.
#[derive(Debug)]
struct Tables {
    /// exp[i] = g^i for a fixed generator g, i in [0, 2(q-1)).
    exp: Vec<u64>,
    /// log[a] = discrete log of a base g, defined for a in [1, q).
    log: Vec<u64>,
}

#[derive(Debug)]
struct FieldInner {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus, coefficients low-degree first, length m + 1.
    modulus: Vec<u64>,
    canonical_modulus: bool,
    tables: Option<Tables>,
}

/// A fixed finite field GF(p^m). Cheap to clone and share.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.m == other.inner.m
            && self.inner.modulus == other.inner.modulus
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "gf({})", self.inner.p)
        } else if self.inner.canonical_modulus {
            write!(f, "gf({}^{})", self.inner.p, self.inner.m)
        } else {
            let coeffs: Vec<String> = self.inner.modulus.iter().map(u64::to_string).collect();
            write!(
                f,
                "gf({}^{}; modulus=[{}])",
                self.inner.p,
                self.inner.m,
                coeffs.join(",")
            )
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

const TABLE_LIMIT: u64 = 1 << 16;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- polynomial arithmetic over GF(p) on coefficient vectors ----

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + (ai as u128 * bj as u128 % p as u128) as u64) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` divided by monic `m` over GF(p).
fn poly_rem(a: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let md = modulus.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > md {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - md;
        if lead != 0 {
            for (j, &mj) in modulus.iter().enumerate() {
                let idx = shift + j;
                let sub = (lead as u128 * mj as u128 % p as u128) as u64;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.len() <= md {
            break;
        }
    }
    poly_trim(&mut r);
    r
}

fn poly_divides(divisor: &[u64], f: &[u64], p: u64) -> bool {
    poly_rem(f, divisor, p).is_empty()
}

/// Irreducibility of a monic polynomial over GF(p) by trial division with
/// every monic polynomial of degree up to deg(f)/2. Desk-scale degrees only.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by x
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for enc in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut e = enc;
            for _ in 0..d {
                cand.push(e % p);
                e /= p;
            }
            cand.push(1);
            if poly_divides(&cand, f, p) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree m over GF(p), by ascending base-p
/// encoding of the non-leading coefficients. This is the modulus table rule.
fn canonical_modulus(p: u64, m: u32) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1]; // x; GF(p)[x]/(x) = GF(p)
    }
    let count = p.pow(m);
    for enc in 0..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut e = enc;
        for _ in 0..m {
            f.push(e % p);
            e /= p;
        }
        f.push(1);
        if poly_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

impl FieldSpec {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    /// GF(p^m) with the canonical modulus for (p, m).
    pub fn extension(p: u64, m: u32) -> Result<Self, FieldError> {
        Self::new(p, m, None)
    }

    /// GF(p^m) with an explicit monic modulus (low-degree first, length m+1).
    pub fn with_modulus(p: u64, m: u32, modulus: Vec<u64>) -> Result<Self, FieldError> {
        Self::new(p, m, Some(modulus))
    }

    fn new(p: u64, m: u32, modulus: Option<Vec<u64>>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let canonical = canonical_modulus(p, m);
        let (modulus, is_canonical) = match modulus {
            None => (canonical, true),
            Some(mut user) => {
                for c in user.iter_mut() {
                    *c %= p;
                }
                if user.len() != m as usize + 1 || user.last() != Some(&1) {
                    return Err(FieldError::BadModulusDegree {
                        expected: m,
                        got: user.len().saturating_sub(1),
                    });
                }
                if m > 1 && !poly_is_irreducible(&user, p) {
                    return Err(FieldError::ReducibleModulus { p });
                }
                let is_canonical = user == canonical;
                (user, is_canonical)
            }
        };
        let q = p.checked_pow(m).expect("field order overflows u64");
        let mut inner = FieldInner {
            p,
            m,
            q,
            modulus,
            canonical_modulus: is_canonical,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldSpec {
            inner: Arc::new(inner),
        })
    }

    /// Parses a field literal: `gf(p)`, `gf(p^m)` or `gf(p^m; modulus=[c0,c1,...,1])`.
    pub fn parse_literal(text: &str) -> Result<Self, FieldError> {
        let t = text.trim();
        let bad = || FieldError::BadLiteral(text.to_string());
        let body = t
            .strip_prefix("gf(")
            .or_else(|| t.strip_prefix("GF("))
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (order_part, modulus_part) = match body.split_once(';') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (body.trim(), None),
        };
        let (p, m) = match order_part.split_once('^') {
            Some((ps, ms)) => (
                ps.trim().parse::<u64>().map_err(|_| bad())?,
                ms.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (order_part.parse::<u64>().map_err(|_| bad())?, 1),
        };
        let modulus = match modulus_part {
            None => None,
            Some(mp) => {
                let list = mp
                    .strip_prefix("modulus=[")
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(bad)?;
                let coeffs: Result<Vec<u64>, _> =
                    list.split(',').map(|c| c.trim().parse::<u64>()).collect();
                Some(coeffs.map_err(|_| bad())?)
            }
        };
        Self::new(p, m, modulus)
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    /// Field order q = p^m.
    pub fn q(&self) -> u64 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn char2(&self) -> bool {
        self.inner.p == 2
    }

    pub fn check_rep(&self, rep: u64) -> Result<(), FieldError> {
        if rep < self.inner.q {
            Ok(())
        } else {
            Err(FieldError::RepOutOfRange {
                rep,
                q: self.inner.q,
            })
        }
    }

    /// The field element for an integer, reduced mod p (prime subfield embedding).
    pub fn from_int(&self, n: i64) -> u64 {
        let p = self.inner.p as i64;
        (n.rem_euclid(p)) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let inner = &self.inner;
        if inner.p == 2 {
            a ^ b
        } else if inner.m == 1 {
            let s = a + b;
            if s >= inner.p {
                s - inner.p
            } else {
                s
            }
        } else {
            self.add_digits(a, b)
        }
    }

    fn add_digits(&self, mut a: u64, mut b: u64) -> u64 {
        let p = self.inner.p;
        let mut out = 0u64;
        let mut base = 1u64;
        while a != 0 || b != 0 {
            let da = a % p;
            let db = b % p;
            let mut s = da + db;
            if s >= p {
                s -= p;
            }
            out += s * base;
            a /= p;
            b /= p;
            base *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        let inner = &self.inner;
        if inner.p == 2 {
            a
        } else if inner.m == 1 {
            if a == 0 {
                0
            } else {
                inner.p - a
            }
        } else {
            let p = inner.p;
            let mut out = 0u64;
            let mut base = 1u64;
            let mut x = a;
            while x != 0 {
                let d = x % p;
                if d != 0 {
                    out += (p - d) * base;
                }
                x /= p;
                base *= p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if self.inner.p == 2 {
            a ^ b
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &self.inner;
        if let Some(t) = &inner.tables {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize];
        }
        if inner.m == 1 {
            return (a as u128 * b as u128 % inner.p as u128) as u64;
        }
        self.mul_poly(a, b)
    }

    /// Polynomial-basis multiplication; the bootstrap path used to build tables.
    fn mul_poly(&self, a: u64, b: u64) -> u64 {
        let inner = &self.inner;
        let p = inner.p;
        let da = self.digits(a);
        let db = self.digits(b);
        let prod = poly_mul_mod_p(&da, &db, p);
        let red = poly_rem(&prod, &inner.modulus, p);
        self.encode(&red)
    }

    fn digits(&self, mut x: u64) -> Vec<u64> {
        let p = self.inner.p;
        let mut out = Vec::with_capacity(self.inner.m as usize);
        while x != 0 {
            out.push(x % p);
            x /= p;
        }
        out
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        let p = self.inner.p;
        let mut out = 0u64;
        for &c in coeffs.iter().rev() {
            out = out * p + c;
        }
        out
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.inner.tables {
            let ord = self.inner.q - 1;
            let l = (t.log[a as usize] as u128 * e as u128 % ord as u128) as u64;
            return t.exp[l as usize];
        }
        let mut base = a;
        let mut e = e;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(t) = &self.inner.tables {
            let ord = self.inner.q - 1;
            return Ok(t.exp[(ord - t.log[a as usize]) as usize]);
        }
        Ok(self.pow(a, self.inner.q - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u64) -> Result<u64, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let group = self.inner.q - 1;
        let mut ord = group;
        for ell in prime_factors(group) {
            while ord % ell == 0 && self.pow(a, ord / ell) == 1 {
                ord /= ell;
            }
        }
        Ok(ord)
    }

    /// Smallest-rep element of multiplicative order exactly n.
    pub fn element_of_order(&self, n: u64) -> Result<u64, FieldError> {
        let group = self.inner.q - 1;
        if n == 0 || group % n != 0 {
            return Err(FieldError::NoElementOfOrder {
                n,
                group_order: group,
            });
        }
        if n == 1 {
            return Ok(1);
        }
        let factors = prime_factors(n);
        for rep in 2..self.inner.q {
            if self.pow(rep, n) != 1 {
                continue;
            }
            if factors.iter().all(|&ell| self.pow(rep, n / ell) != 1) {
                return Ok(rep);
            }
        }
        unreachable!("the multiplicative group is cyclic, so an element of each divisor order exists")
    }

    /// Smallest-rep square root of -1 if the field has one.
    pub fn sqrt_minus_one(&self) -> Option<u64> {
        if self.char2() {
            return Some(1);
        }
        let minus_one = self.neg(1);
        (0..self.inner.q).find(|&rep| self.mul(rep, rep) == minus_one)
    }

    /// Smallest-rep square root of an arbitrary element, if one exists.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        (0..self.inner.q).find(|&rep| self.mul(rep, rep) == a)
    }

    /// The quadratic extension GF(p^{2m}) with its canonical modulus, together
    /// with the embedding of this field. Errors if -1 is already a square here.
    pub fn quadratic_extension(&self) -> Result<FieldEmbedding, FieldError> {
        if self.sqrt_minus_one().is_some() {
            return Err(FieldError::ExtensionNotNeeded);
        }
        self.quadratic_extension_unchecked()
    }

    /// Quadratic extension without the square-root-of-(-1) precondition;
    /// used when a square root of some other element is needed.
    pub fn quadratic_extension_unchecked(&self) -> Result<FieldEmbedding, FieldError> {
        let ext = FieldSpec::extension(self.inner.p, self.inner.m * 2)?;
        // The embedding sends the base generator (class of x) to a root of the
        // base modulus inside the extension; smallest-rep root for determinism.
        let base_mod = &self.inner.modulus;
        let beta = (0..ext.q())
            .find(|&cand| {
                let mut acc = 0u64;
                for &c in base_mod.iter().rev() {
                    acc = ext.add(ext.mul(acc, cand), c % ext.p());
                }
                acc == 0
            })
            .expect("the extension contains a root of the base modulus");
        Ok(FieldEmbedding {
            base: self.clone(),
            ext,
            beta,
        })
    }

    fn spec_mismatch(&self, other: &FieldSpec) -> FieldError {
        FieldError::SpecMismatch {
            left: self.to_string(),
            right: other.to_string(),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FieldSpec::parse_literal(s)
    }
}

fn build_tables(inner: &FieldInner) -> Tables {
    // Bootstrap multiplication for the generator search.
    let spec = FieldSpec {
        inner: Arc::new(FieldInner {
            p: inner.p,
            m: inner.m,
            q: inner.q,
            modulus: inner.modulus.clone(),
            canonical_modulus: inner.canonical_modulus,
            tables: None,
        }),
    };
    let q = inner.q;
    let group = q - 1;
    let factors = prime_factors(group);
    let generator = (2..q)
        .find(|&g| {
            factors
                .iter()
                .all(|&ell| spec.pow(g, group / ell) != 1)
        })
        .unwrap_or(1); // q = 2: the group is trivial and 1 generates it
    let mut exp = vec![0u64; (2 * group.max(1)) as usize];
    let mut log = vec![0u64; q as usize];
    let mut acc = 1u64;
    for i in 0..group {
        exp[i as usize] = acc;
        log[acc as usize] = i;
        acc = if inner.m == 1 {
            (acc as u128 * generator as u128 % inner.p as u128) as u64
        } else {
            spec.mul_poly(acc, generator)
        };
    }
    for i in group..2 * group.max(1) {
        exp[i as usize] = exp[(i - group) as usize];
    }
    Tables { exp, log }
}

/// Embedding of a base field into its quadratic extension.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    base: FieldSpec,
    ext: FieldSpec,
    beta: u64,
}

impl FieldEmbedding {
    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn ext(&self) -> &FieldSpec {
        &self.ext
    }

    /// Image of a base-field element in the extension.
    pub fn map(&self, rep: u64) -> u64 {
        let p = self.base.p();
        let mut acc = 0u64;
        let digits = {
            let mut d = Vec::new();
            let mut x = rep;
            while x != 0 {
                d.push(x % p);
                x /= p;
            }
            d
        };
        for &c in digits.iter().rev() {
            acc = self.ext.add(self.ext.mul(acc, self.beta), c);
        }
        acc
    }
}

/// A field element paired with its field; convenience wrapper for API edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    spec: FieldSpec,
    rep: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn new(spec: FieldSpec, rep: u64) -> Result<Self, FieldError> {
        spec.check_rep(rep)?;
        Ok(FieldElement { spec, rep })
    }

    pub fn rep(&self) -> u64 {
        self.rep
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
}

/// Checked field arithmetic on wrapped elements.
pub fn arith(op: ArithOp, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
    if a.spec != b.spec {
        return Err(a.spec.spec_mismatch(&b.spec));
    }
    let s = &a.spec;
    let rep = match op {
        ArithOp::Add => s.add(a.rep, b.rep),
        ArithOp::Sub => s.sub(a.rep, b.rep),
        ArithOp::Mul => s.mul(a.rep, b.rep),
        ArithOp::Div => s.div(a.rep, b.rep)?,
    };
    Ok(FieldElement {
        spec: s.clone(),
        rep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: u32) -> FieldSpec {
        FieldSpec::extension(p, m).unwrap()
    }

    #[test]
    fn canonical_moduli_match_documented_table() {
        // The rule is "smallest base-p encoding"; these are the values the
        // rest of the test-suite relies on.
        assert_eq!(gf(2, 2).modulus(), &[1, 1, 1]); // x^2+x+1
        assert_eq!(gf(2, 3).modulus(), &[1, 1, 0, 1]); // x^3+x+1
        assert_eq!(gf(2, 4).modulus(), &[1, 1, 0, 0, 1]); // x^4+x+1
        assert_eq!(gf(3, 2).modulus(), &[1, 0, 1]); // x^2+1
        assert_eq!(gf(5, 2).modulus(), &[2, 0, 1]); // x^2+2
        assert_eq!(gf(7, 2).modulus(), &[1, 0, 1]); // x^2+1
    }

    #[test]
    fn gf8_handmade_product() {
        // GF(2^3), modulus x^3+x+1: x * x^2 = x^3 = x + 1.
        let f = gf(2, 3);
        assert_eq!(f.mul(2, 4), 3);
    }

    #[test]
    fn additive_identity_and_prime_mul() {
        let f = gf(2, 3);
        for a in 0..8 {
            assert_eq!(f.add(a, 0), a);
        }
        let g5 = FieldSpec::prime(5).unwrap();
        assert_eq!(g5.mul(2, 3), 1);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for spec in [gf(2, 2), gf(3, 1), gf(2, 3), gf(3, 2), gf(5, 1)] {
            let q = spec.q();
            for a in 0..q {
                assert_eq!(spec.add(a, spec.neg(a)), 0);
                if a != 0 {
                    assert_eq!(spec.mul(a, spec.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(spec.add(a, b), spec.add(b, a));
                    assert_eq!(spec.mul(a, b), spec.mul(b, a));
                    for c in 0..q {
                        assert_eq!(spec.mul(a, spec.add(b, c)), spec.add(spec.mul(a, b), spec.mul(a, c)));
                        assert_eq!(spec.mul(spec.mul(a, b), c), spec.mul(a, spec.mul(b, c)));
                        assert_eq!(spec.add(spec.add(a, b), c), spec.add(a, spec.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn element_of_order_examples() {
        let f8 = gf(2, 3);
        let w = f8.element_of_order(7).unwrap();
        assert_eq!(f8.pow(w, 7), 1);
        for k in 1..7 {
            assert_ne!(f8.pow(w, k), 1);
        }
        let f17 = FieldSpec::prime(17).unwrap();
        let w8 = f17.element_of_order(8).unwrap();
        assert_eq!(f17.element_order(w8).unwrap(), 8);
        assert_eq!(f17.element_of_order(1).unwrap(), 1);

        let err = f8.element_of_order(3).unwrap_err();
        assert!(matches!(err, FieldError::NoElementOfOrder { n: 3, group_order: 7 }));
        assert!(err.to_string().contains('7'));
    }

    #[test]
    fn sqrt_minus_one_examples() {
        assert_eq!(FieldSpec::prime(5).unwrap().sqrt_minus_one(), Some(2));
        assert_eq!(gf(2, 4).sqrt_minus_one(), Some(1));
        assert_eq!(FieldSpec::prime(7).unwrap().sqrt_minus_one(), None);
    }

    #[test]
    fn quadratic_extension_of_gf7_and_gf3() {
        let g7 = FieldSpec::prime(7).unwrap();
        let emb = g7.quadratic_extension().unwrap();
        assert_eq!(emb.ext().q(), 49);
        let i = emb.ext().sqrt_minus_one().expect("GF(49) has sqrt(-1)");
        assert_eq!(emb.ext().mul(i, i), emb.ext().neg(1));
        assert_eq!(emb.map(0), 0);
        assert_eq!(emb.map(1), 1);

        let g3 = FieldSpec::prime(3).unwrap();
        let e3 = g3.quadratic_extension().unwrap();
        // Exhaustive search over the 9 elements confirms a root of -1 exists.
        let hits: Vec<u64> = (0..9)
            .filter(|&x| e3.ext().mul(x, x) == e3.ext().neg(1))
            .collect();
        assert!(!hits.is_empty());
        assert_eq!(e3.ext().sqrt_minus_one(), hits.first().copied());

        assert!(matches!(
            FieldSpec::prime(5).unwrap().quadratic_extension(),
            Err(FieldError::ExtensionNotNeeded)
        ));
    }

    #[test]
    fn embedding_is_ring_homomorphism_exhaustive() {
        for base in [FieldSpec::prime(3).unwrap(), FieldSpec::prime(7).unwrap(), gf(2, 2)] {
            let emb = match base.quadratic_extension() {
                Ok(e) => e,
                Err(FieldError::ExtensionNotNeeded) => base.quadratic_extension_unchecked().unwrap(),
                Err(e) => panic!("{e}"),
            };
            let ext = emb.ext();
            let mut seen = std::collections::HashSet::new();
            for a in 0..base.q() {
                assert!(seen.insert(emb.map(a)), "embedding must be injective");
                for b in 0..base.q() {
                    assert_eq!(emb.map(base.add(a, b)), ext.add(emb.map(a), emb.map(b)));
                    assert_eq!(emb.map(base.mul(a, b)), ext.mul(emb.map(a), emb.map(b)));
                }
            }
        }
    }

    #[test]
    fn literal_round_trip() {
        for text in ["gf(5)", "gf(2^3)", "gf(7^2)", "gf(2^3; modulus=[1,0,1,1])"] {
            let spec = FieldSpec::parse_literal(text).unwrap();
            let shown = spec.to_string();
            let again = FieldSpec::parse_literal(&shown).unwrap();
            assert_eq!(spec, again, "{text} -> {shown}");
        }
        assert_eq!(FieldSpec::parse_literal("gf(2^3)").unwrap().to_string(), "gf(2^3)");
        assert!(FieldSpec::parse_literal("gf(4)").is_err()); // 4 is not prime
        assert!(FieldSpec::parse_literal("gf(2^2; modulus=[1,0,1])").is_err()); // x^2+1 reducible mod 2
    }

    #[test]
    fn checked_arith_reports_mismatch_and_zero_division() {
        let a = FieldElement::new(gf(2, 3), 3).unwrap();
        let b = FieldElement::new(FieldSpec::prime(5).unwrap(), 3).unwrap();
        assert!(matches!(
            arith(ArithOp::Add, &a, &b),
            Err(FieldError::SpecMismatch { .. })
        ));
        let zero = FieldElement::new(gf(2, 3), 0).unwrap();
        assert!(matches!(
            arith(ArithOp::Div, &a, &zero),
            Err(FieldError::DivisionByZero)
        ));
    }
}
