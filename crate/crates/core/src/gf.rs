//! Finite fields GF(p^r) with table-driven arithmetic.
//!
//! Elements are encoded as integers in `[0, q)`: the base-p digits of the
//! encoding are the coefficients of the residue polynomial, lowest degree
//! first. Zero encodes 0 and one encodes 1. The modulus is recorded alongside
//! every serialized element so printed coordinates stay reproducible.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order this crate will build tables for.
pub const MAX_ORDER: u32 = 1 << 14;

/// Fields up to this order get full q×q addition tables; larger ones add
/// through Zech logarithms.
const FULL_ADD_TABLE_MAX: u32 = 256;

const NO_ZECH: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{r} exceeds the table cap of {MAX_ORDER}")]
    TooLarge { p: u32, r: u32 },
    #[error("modulus must be monic of degree {expected} with coefficients below {p}: {modulus:?}")]
    BadModulus {
        modulus: Vec<u32>,
        expected: u32,
        p: u32,
    },
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("element {0} is not a primitive element")]
    NotPrimitive(u32),
    #[error("element encoding {value} out of range for GF({q})")]
    OutOfRange { value: u32, q: u32 },
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

/// A field element in canonical base-p digit encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Serialized description of a field: enough to rebuild identical tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub r: u32,
    pub modulus: Vec<u32>,
    pub alpha: u32,
}

/// The finite field GF(p^r) together with its arithmetic tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    alpha: u32,
    // exp[i] = alpha^i, doubled so log sums never need reducing.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    add_table: Option<Vec<u16>>,
    // zech[i] = log(1 + alpha^i), or NO_ZECH when that sum is zero.
    zech: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.r == other.r
            && self.modulus == other.modulus
            && self.alpha == other.alpha
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, r)` when `q = p^r` for a prime `p`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

fn distinct_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

// Dense polynomials over GF(p), lowest coefficient first, trimmed.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod_p(a: u32, p: u32) -> u32 {
        let mut result = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }

    /// Remainder of `a` modulo `m` (m nonzero).
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod_p(m[dm], p) as u64;
        while a.len() > dm {
            let da = a.len() - 1;
            let factor = a[da] as u64 * lead_inv % p as u64;
            let shift = da - dm;
            for (i, &c) in m.iter().enumerate() {
                let sub = factor * c as u64 % p as u64;
                a[shift + i] = ((a[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            a = trim(a);
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    /// Enumerates every monic polynomial of the given degree.
    pub fn monic_of_degree(deg: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
        let count = (p as u64).pow(deg as u32);
        (0..count).map(move |mut n| {
            let mut c = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                c.push((n % p as u64) as u32);
                n /= p as u64;
            }
            c.push(1);
            c
        })
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = m.len() - 1;
        for d in 1..=deg / 2 {
            for f in monic_of_degree(d, p) {
                if rem(m, &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

fn digits(mut v: u32, p: u32, r: u32) -> Vec<u32> {
    (0..r)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn add_digits(a: u32, b: u32, p: u32, r: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (da, db) = (digits(a, p, r), digits(b, p, r));
    let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    encode(&sum, p)
}

fn neg_digits(a: u32, p: u32, r: u32) -> u32 {
    let d: Vec<u32> = digits(a, p, r).iter().map(|&x| (p - x) % p).collect();
    encode(&d, p)
}

/// Lexicographically least monic irreducible polynomial of degree `r`,
/// comparing coefficient vectors `[c0, c1, ..., cr]` from `c0`.
pub fn default_modulus(p: u32, r: u32) -> Vec<u32> {
    let mut candidates: Vec<Vec<u32>> = poly::monic_of_degree(r as usize, p).collect();
    candidates.sort();
    candidates
        .into_iter()
        .find(|m| poly::is_irreducible(m, p))
        .expect("an irreducible polynomial exists in every degree")
}

impl FieldSpec {
    /// Builds GF(p^r). Without a modulus the lexicographically least monic
    /// irreducible one is used; alpha is the least primitive element.
    pub fn new(p: u32, r: u32, modulus: Option<Vec<u32>>) -> Result<Self, FieldError> {
        Self::build(p, r, modulus, None)
    }

    /// Builds a prime-power field of order `q` with default parameters.
    pub fn of_order(q: u32) -> Result<Self, FieldError> {
        let (p, r) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::new(p, r, None)
    }

    /// Rebuilds a field exactly as serialized, including the chosen alpha.
    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self, FieldError> {
        Self::build(d.p, d.r, Some(d.modulus.clone()), Some(d.alpha))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            r: self.r,
            modulus: self.modulus.clone(),
            alpha: self.alpha,
        }
    }

    fn build(
        p: u32,
        r: u32,
        modulus: Option<Vec<u32>>,
        alpha: Option<u32>,
    ) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(FieldError::TooLarge { p, r })?;
        let modulus = match modulus {
            Some(m) => {
                let well_formed = m.len() == r as usize + 1
                    && m.last() == Some(&1)
                    && m.iter().all(|&c| c < p);
                if !well_formed {
                    return Err(FieldError::BadModulus {
                        modulus: m,
                        expected: r,
                        p,
                    });
                }
                if !poly::is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus(m));
                }
                m
            }
            None => default_modulus(p, r),
        };

        let mul_slow = |a: u32, b: u32| -> u32 {
            let prod = poly::mul(&digits(a, p, r), &digits(b, p, r), p);
            let red = poly::rem(&prod, &modulus, p);
            let mut padded = red;
            padded.resize(r as usize, 0);
            encode(&padded, p)
        };
        let pow_slow = |a: u32, mut e: u64| -> u32 {
            let mut result = 1u32;
            let mut base = a;
            while e > 0 {
                if e & 1 == 1 {
                    result = mul_slow(result, base);
                }
                base = mul_slow(base, base);
                e >>= 1;
            }
            result
        };
        let order = (q - 1) as u64;
        let factors = distinct_prime_factors(q - 1);
        let is_primitive = |a: u32| -> bool {
            a != 0
                && pow_slow(a, order) == 1
                && factors.iter().all(|&l| pow_slow(a, order / l as u64) != 1)
        };

        let alpha = match alpha {
            Some(a) if a >= q => return Err(FieldError::OutOfRange { value: a, q }),
            Some(a) if !is_primitive(a) => return Err(FieldError::NotPrimitive(a)),
            Some(a) => a,
            None => (1..q)
                .find(|&a| is_primitive(a))
                .expect("the multiplicative group of a finite field is cyclic"),
        };

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            exp[i + n] = x;
            log[x as usize] = i as u32;
            x = mul_slow(x, alpha);
        }

        let neg: Vec<u32> = (0..q).map(|a| neg_digits(a, p, r)).collect();
        let inv: Vec<u32> = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    exp[(n - log[a as usize] as usize) % n]
                }
            })
            .collect();
        let zech: Vec<u32> = (0..n)
            .map(|i| {
                let s = add_digits(1, exp[i], p, r);
                if s == 0 {
                    NO_ZECH
                } else {
                    log[s as usize]
                }
            })
            .collect();
        let add_table = (q <= FULL_ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b, p, r) as u16;
                }
            }
            t
        });

        Ok(FieldSpec {
            p,
            r,
            q,
            modulus,
            alpha,
            exp,
            log,
            neg,
            inv,
            add_table,
            zech,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn alpha(&self) -> FieldElement {
        FieldElement(self.alpha)
    }

    pub fn is_prime_field(&self) -> bool {
        self.r == 1
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, FieldError> {
        if value < self.q {
            Ok(FieldElement(value))
        } else {
            Err(FieldError::OutOfRange { value, q: self.q })
        }
    }

    /// All q elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if let Some(t) = &self.add_table {
            return FieldElement(t[(a.0 * self.q + b.0) as usize] as u32);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.q - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = (lb + n - la) % n;
        match self.zech[d as usize] {
            NO_ZECH => FieldElement::ZERO,
            z => FieldElement(self.exp[(la + z) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            Err(FieldError::InverseOfZero)
        } else {
            Ok(FieldElement(self.inv[a.0 as usize]))
        }
    }

    /// Division by a nonzero element.
    #[inline]
    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64 * (e % n) % n;
        FieldElement(self.exp[l as usize])
    }

    /// Discrete logarithm base alpha of a nonzero element.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// alpha^k.
    pub fn exp(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % (self.q as u64 - 1)) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> Option<u32> {
        let l = self.log(a)?;
        let n = self.q - 1;
        Some(n / gcd(l, n))
    }

    /// Textual literal: the integer for prime fields, `a^k` (`a` for k = 1)
    /// for nonzero non-one elements of extension fields.
    pub fn format(&self, a: FieldElement) -> String {
        if self.is_prime_field() || a.0 <= 1 {
            return a.0.to_string();
        }
        match self.log[a.0 as usize] {
            1 => "a".to_string(),
            k => format!("a^{k}"),
        }
    }

    /// Parses an element literal. Accepts integers (residues for prime
    /// fields, canonical encodings otherwise, negative values reduced),
    /// powers of the primitive element written `a`, `α` or `alpha` with an
    /// optional `^k`, digit vectors `(c0,c1,...)`, and sums of these joined
    /// by `+` such as `a+1`.
    pub fn parse(&self, text: &str) -> Result<FieldElement, FieldError> {
        let s = text.trim();
        let err = || FieldError::Parse(text.to_string());
        if s.is_empty() {
            return Err(err());
        }
        if s.contains('+') && !s.starts_with('(') {
            return s.split('+').try_fold(FieldElement::ZERO, |acc, term| {
                Ok(self.add(acc, self.parse(term).map_err(|_| err())?))
            });
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let coeffs: Vec<u32> = inner
                .split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| err()))
                .collect::<Result<_, _>>()?;
            if coeffs.len() > self.r as usize || coeffs.iter().any(|&c| c >= self.p) {
                return Err(err());
            }
            return Ok(FieldElement(encode(&coeffs, self.p)));
        }
        for base in ["alpha", "α", "a"] {
            if let Some(rest) = s.strip_prefix(base) {
                let k: u64 = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|e| e.trim().parse().ok())
                        .ok_or_else(err)?
                };
                return Ok(self.exp(k));
            }
        }
        let v: i64 = s.parse().map_err(|_| err())?;
        if self.is_prime_field() {
            Ok(FieldElement(v.rem_euclid(self.p as i64) as u32))
        } else if (0..self.q as i64).contains(&v) {
            Ok(FieldElement(v as u32))
        } else {
            Err(err())
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_with_printed_modulus() {
        let f = FieldSpec::new(2, 2, Some(vec![1, 1, 1])).unwrap();
        let a = f.element(2).unwrap();
        // a^2 = a + 1
        assert_eq!(f.mul(a, a), f.add(a, FieldElement::ONE));
        assert_eq!(f.elements().count(), 4);
    }

    #[test]
    fn gf5_alpha_has_order_four() {
        let f = FieldSpec::new(5, 1, None).unwrap();
        assert!(f.alpha().value() == 2 || f.alpha().value() == 3);
        assert_eq!(f.order(f.alpha()), Some(4));
        assert_eq!(f.alpha().value(), 2);
    }

    #[test]
    fn gf9_alpha_order_by_exhaustive_multiplication() {
        let f = FieldSpec::new(3, 2, None).unwrap();
        // Repeated multiplication, independent of the log tables.
        let mut x = FieldElement::ONE;
        let mut first_return = None;
        for k in 1..=8 {
            x = f.mul(x, f.alpha());
            if x == FieldElement::ONE && first_return.is_none() {
                first_return = Some(k);
            }
        }
        assert_eq!(first_return, Some(8));
        assert_ne!(f.pow(f.alpha(), 4), FieldElement::ONE);
        assert_eq!(f.pow(f.alpha(), 8), FieldElement::ONE);
    }

    #[test]
    fn gf9_inverses() {
        let f = FieldSpec::new(3, 2, None).unwrap();
        for x in f.elements().skip(1) {
            assert_eq!(f.mul(f.inv(x).unwrap(), x), FieldElement::ONE);
        }
        assert_eq!(f.inv(FieldElement::ZERO), Err(FieldError::InverseOfZero));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(4, 1, None), Err(FieldError::NotPrime(4)));
        assert!(matches!(
            FieldSpec::new(2, 2, Some(vec![1, 0, 1])),
            Err(FieldError::ReducibleModulus(_))
        ));
        assert!(matches!(
            FieldSpec::new(2, 2, Some(vec![1, 1])),
            Err(FieldError::BadModulus { .. })
        ));
        assert!(matches!(
            FieldSpec::new(2, 15, None),
            Err(FieldError::TooLarge { .. })
        ));
        let d = FieldDescriptor {
            p: 3,
            r: 2,
            modulus: vec![1, 0, 1],
            alpha: 3,
        };
        // x^2 + 1 over GF(3): x = 3 has order 4, not 8.
        assert_eq!(FieldSpec::from_descriptor(&d), Err(FieldError::NotPrimitive(3)));
    }

    #[test]
    fn default_moduli() {
        assert_eq!(default_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(default_modulus(2, 3), vec![1, 0, 1, 1]);
        assert_eq!(default_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(default_modulus(7, 1), vec![0, 1]);
    }

    #[test]
    fn element_listing() {
        let f2 = FieldSpec::of_order(2).unwrap();
        assert_eq!(f2.elements().map(|e| e.value()).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(FieldSpec::of_order(7).unwrap().elements().count(), 7);
    }

    #[test]
    fn zech_addition_matches_digit_addition() {
        let f = FieldSpec::of_order(1024).unwrap();
        assert!(f.add_table.is_none());
        for a in (0..1024).step_by(37) {
            for b in (0..1024).step_by(41) {
                let s = f.add(FieldElement(a), FieldElement(b));
                assert_eq!(s.value(), a ^ b);
            }
        }
        let g = FieldSpec::of_order(729).unwrap();
        for a in (0..729).step_by(13) {
            for b in (0..729).step_by(17) {
                let s = g.add(FieldElement(a), FieldElement(b));
                assert_eq!(s.value(), add_digits(a, b, 3, 6));
            }
        }
    }

    #[test]
    fn literals_round_trip() {
        let f = FieldSpec::new(2, 3, Some(vec![1, 1, 0, 1])).unwrap();
        for x in f.elements() {
            assert_eq!(f.parse(&f.format(x)).unwrap(), x);
        }
        assert_eq!(f.parse("α^7").unwrap(), FieldElement::ONE);
        assert_eq!(f.parse("(0,1)").unwrap(), f.alpha());
        let p = FieldSpec::of_order(7).unwrap();
        assert_eq!(p.parse("-1").unwrap().value(), 6);
        assert!(f.parse("9").is_err());
        assert!(f.parse("b").is_err());
        let f4 = FieldSpec::new(2, 2, Some(vec![1, 1, 1])).unwrap();
        assert_eq!(f4.parse("a+1").unwrap(), f4.parse("a^2").unwrap());
        assert!(f4.parse("a+").is_err());
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
