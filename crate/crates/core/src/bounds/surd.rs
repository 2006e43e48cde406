//! Exact finite sums `q_1 sqrt(r_1) + ... + q_k sqrt(r_k)` with rational `q_i`
//! and integer `r_i >= 0`.
//!
//! Terms are kept with pairwise distinct square classes (no `r_i r_j` is a
//! perfect square), so the irrational parts are linearly independent over Q
//! and a nonzero value is never mistaken for zero. Signs are decided by
//! interval enclosures with integer square roots.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::io::text::format_rational;

type Q = BigRational;

/// Most bits used when deciding a sign before giving up.
pub const MAX_PRECISION_BITS: u32 = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    /// `(coefficient, radicand)`, radicand 1 for the rational part.
    terms: Vec<(Q, BigInt)>,
}

fn is_square(r: &BigInt) -> Option<BigInt> {
    let s = r.sqrt();
    (&s * &s == *r).then_some(s)
}

/// Pulls small square factors out of the radicand.
fn reduce(mut q: Q, mut r: BigInt) -> (Q, BigInt) {
    if let Some(s) = is_square(&r) {
        return (q * Q::from_integer(s), BigInt::one());
    }
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1000);
    while p < limit {
        let p2 = &p * &p;
        if p2 > r {
            break;
        }
        while (&r % &p2).is_zero() {
            r /= &p2;
            q *= Q::from_integer(p.clone());
        }
        p += 1;
    }
    (q, r)
}

impl Surd {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn rational(q: Q) -> Self {
        Self::term(q, BigInt::one())
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::rational(Q::from_integer(n.into()))
    }

    /// `q sqrt(r)`; panics on a negative radicand.
    pub fn term(q: Q, r: BigInt) -> Self {
        assert!(!r.is_negative(), "negative radicand");
        let mut s = Self::zero();
        s.push(q, r);
        s
    }

    pub fn sqrt(r: impl Into<BigInt>) -> Self {
        Self::term(Q::one(), r.into())
    }

    /// `sqrt(q)` for rational `q >= 0`, as `sqrt(p d) / d`.
    pub fn sqrt_rational(q: &Q) -> Self {
        Self::term(Q::new(BigInt::one(), q.denom().clone()), q.numer() * q.denom())
    }

    fn push(&mut self, q: Q, r: BigInt) {
        if q.is_zero() || r.is_zero() {
            return;
        }
        let (q, r) = reduce(q, r);
        let class = self
            .terms
            .iter()
            .enumerate()
            .find_map(|(i, (_, cr))| is_square(&(cr * &r)).map(|s| (i, s)));
        if let Some((i, s)) = class {
            // sqrt(r) = (sqrt(cr r) / cr) sqrt(cr)
            let cr = self.terms[i].1.clone();
            self.terms[i].0 += q * Q::new(s, cr);
            if self.terms[i].0.is_zero() {
                self.terms.remove(i);
            }
            return;
        }
        self.terms.push((q, r));
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
    }

    pub fn terms(&self) -> &[(Q, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(q, r)] if r.is_one() => Some(q.clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (q, r) in &other.terms {
            out.push(q.clone(), r.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> Self {
        let mut out = Self::zero();
        for (q, r) in &self.terms {
            out.push(q * k, r.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (p, r) in &self.terms {
            for (q, s) in &other.terms {
                out.push(p * q, r * s);
            }
        }
        out
    }

    /// Rational interval containing the value; width about `k 2^-bits`.
    pub fn enclose(&self, bits: u32) -> (Q, Q) {
        let scale = BigInt::one() << bits;
        let mut lo = Q::zero();
        let mut hi = Q::zero();
        for (q, r) in &self.terms {
            let (a, b) = if r.is_one() {
                (Q::one(), Q::one())
            } else {
                let k = (r << (2 * bits)).sqrt();
                (Q::new(k.clone(), scale.clone()), Q::new(k + 1, scale.clone()))
            };
            if q.is_positive() {
                lo += q * a;
                hi += q * b;
            } else {
                lo += q * b;
                hi += q * a;
            }
        }
        (lo, hi)
    }

    /// Sign of the value, refining from `start_bits` by doubling up to
    /// [`MAX_PRECISION_BITS`]; `None` if still unresolved.
    pub fn signum(&self, start_bits: u32) -> Option<Ordering> {
        if let Some(q) = self.as_rational() {
            return Some(q.cmp(&Q::zero()));
        }
        let mut bits = start_bits.clamp(8, MAX_PRECISION_BITS);
        loop {
            let (lo, hi) = self.enclose(bits);
            if lo.is_positive() {
                return Some(Ordering::Greater);
            }
            if hi.is_negative() {
                return Some(Ordering::Less);
            }
            if bits >= MAX_PRECISION_BITS {
                return None;
            }
            bits = (bits * 2).min(MAX_PRECISION_BITS);
        }
    }

    /// Certified `self` vs `other`.
    pub fn compare(&self, other: &Self, start_bits: u32) -> Option<Ordering> {
        self.sub(other).signum(start_bits)
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclose(64);
        ((lo + hi) / Q::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal string rounded up at `digits` places.
    pub fn upper_decimal(&self, digits: u32) -> String {
        let (_, hi) = self.enclose(4 * digits + 64);
        let ten = Q::from_integer(BigInt::from(10).pow(digits));
        let scaled = (hi * &ten).ceil().to_integer();
        decimal(&scaled, digits)
    }
}

fn decimal(scaled: &BigInt, digits: u32) -> String {
    let neg = scaled.is_negative();
    let s = scaled.abs().to_string();
    let d = digits as usize;
    let padded = if s.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = padded.split_at(padded.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (q, r)) in self.terms.iter().enumerate() {
            let mag = q.abs();
            if i == 0 {
                if q.is_negative() {
                    write!(f, "-")?;
                }
            } else if q.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if r.is_one() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "sqrt({r})")?;
            } else {
                write!(f, "{}*sqrt({r})", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
