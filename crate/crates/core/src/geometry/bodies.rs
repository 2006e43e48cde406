//! Bodies with exact membership for rational points.
//!
//! Open cubes are `C(y) = {x : ‖x − y‖∞ < 1}`. Because `λ C(u) + (1−λ) C(v)`
//! equals `C(λu + (1−λ)v)`, the hull `conv(C(u), C(v))` is the union of
//! the cubes centred on the segment `[u, v]`, and membership reduces to
//! intersecting one interval in `λ` per coordinate.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{to_f64, GeomError};
use crate::io::text;

type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetricBody {
    /// `{x : ‖x‖₂² < r²}`.
    OpenBall { radius_sq: Q },
    /// `{x : |x_i| < h_i}`.
    OpenBox { half_widths: Vec<Q> },
    /// `K = ker(B) ∩ {|x_i| < d_i}`.
    CubeSection { rows: Vec<Vec<Q>>, half_widths: Vec<Q> },
    /// `L = conv(a, K, −a)` with `K = ker([A; c]) ∩ {|x_i| < d_i}` and `a ∈ ker(A)`.
    Bipyramid {
        a_rows: Vec<Vec<Q>>,
        c: Vec<Q>,
        half_widths: Vec<Q>,
        apex: Vec<Q>,
    },
    /// `E(u, v) = conv(C(w), C(−w))`, `w = u − v`.
    UnionHull { w: Vec<Q> },
    /// `D(u, v) = conv(C(u), C(v))`; symmetric only when `u = −v`.
    Hull { u: Vec<Q>, v: Vec<Q> },
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2_f64(v: &[Q]) -> f64 {
    v.iter().map(|x| to_f64(x).powi(2)).sum::<f64>().sqrt()
}

/// Whether `∃ λ ∈ [0, 1]` with `‖p − (v + λ (u − v))‖∞ < 1`.
fn near_segment(p: &[Q], u: &[Q], v: &[Q]) -> bool {
    let one = Q::one();
    // closed lower end, closed upper end; open constraints tracked by flags
    let mut lo = (Q::zero(), false);
    let mut hi = (Q::one(), false);
    for ((p, u), v) in p.iter().zip(u).zip(v) {
        let r = p - v;
        let slope = u - v;
        if slope.is_zero() {
            if r.abs() >= one {
                return false;
            }
            continue;
        }
        // |r − λ slope| < 1  ⇔  λ in the open interval ((r−1)/slope, (r+1)/slope) up to order
        let (a, b) = {
            let x = (&r - &one) / &slope;
            let y = (&r + &one) / &slope;
            if x < y {
                (x, y)
            } else {
                (y, x)
            }
        };
        if a > lo.0 || (a == lo.0 && !lo.1) {
            lo = (a, true);
        }
        if b < hi.0 || (b == hi.0 && !hi.1) {
            hi = (b, true);
        }
    }
    if lo.1 || hi.1 {
        lo.0 < hi.0
    } else {
        lo.0 <= hi.0
    }
}

fn near_segment_f64(p: &[f64], u: &[f64], v: &[f64]) -> bool {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for i in 0..p.len() {
        let r = p[i] - v[i];
        let slope = u[i] - v[i];
        if slope == 0.0 {
            if r.abs() >= 1.0 {
                return false;
            }
            continue;
        }
        let (x, y) = ((r - 1.0) / slope, (r + 1.0) / slope);
        lo = lo.max(x.min(y));
        hi = hi.min(x.max(y));
    }
    lo < hi
}

impl SymmetricBody {
    /// The bi-pyramid `conv(±(x − z), K)` with `d_i = z_i + 1`.
    pub fn bipyramid(a: &[Vec<BigInt>], c: &[Q], x: &[Q], z: &[BigInt]) -> Result<Self, GeomError> {
        let a_rows: Vec<Vec<Q>> = a
            .iter()
            .map(|r| r.iter().cloned().map(Q::from_integer).collect())
            .collect();
        let apex: Vec<Q> = x.iter().zip(z).map(|(x, z)| x - Q::from_integer(z.clone())).collect();
        if a_rows.iter().any(|r| !dot(r, &apex).is_zero()) {
            return Err(GeomError::InvalidInput("apex is not in ker(A)".into()));
        }
        if apex.iter().any(|t| !t.is_zero()) && dot(c, &apex).is_zero() {
            return Err(GeomError::InvalidInput("apex is parallel to the base".into()));
        }
        Ok(Self::Bipyramid {
            a_rows,
            c: c.to_vec(),
            half_widths: z.iter().map(|z| Q::from_integer(z + 1)).collect(),
            apex,
        })
    }

    pub fn union_hull(u: &[Q], v: &[Q]) -> Self {
        Self::UnionHull {
            w: u.iter().zip(v).map(|(u, v)| u - v).collect(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::OpenBall { .. } => "ball",
            Self::OpenBox { .. } => "box",
            Self::CubeSection { .. } => "cube-section",
            Self::Bipyramid { .. } => "bipyramid",
            Self::UnionHull { .. } => "union-hull",
            Self::Hull { .. } => "hull",
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            Self::Hull { u, v } => u.iter().zip(v).all(|(u, v)| (u + v).is_zero()),
            _ => true,
        }
    }

    /// Upper bound on `‖p‖₂` over the body.
    pub fn circumradius(&self) -> f64 {
        let cube = |n: usize| (n as f64).sqrt();
        match self {
            Self::OpenBall { radius_sq } => to_f64(radius_sq).sqrt(),
            Self::OpenBox { half_widths } | Self::CubeSection { half_widths, .. } => norm2_f64(half_widths),
            Self::Bipyramid { half_widths, apex, .. } => norm2_f64(half_widths).max(norm2_f64(apex)),
            Self::UnionHull { w } => norm2_f64(w) + cube(w.len()),
            Self::Hull { u, v } => norm2_f64(u).max(norm2_f64(v)) + cube(u.len()),
        }
    }

    /// Exact membership of a rational point.
    pub fn contains(&self, p: &[Q]) -> bool {
        match self {
            Self::OpenBall { radius_sq } => dot(p, p) < *radius_sq,
            Self::OpenBox { half_widths } => p.iter().zip(half_widths).all(|(x, h)| x.abs() < *h),
            Self::CubeSection { rows, half_widths } => {
                rows.iter().all(|r| dot(r, p).is_zero()) && p.iter().zip(half_widths).all(|(x, h)| x.abs() < *h)
            }
            Self::Bipyramid {
                a_rows,
                c,
                half_widths,
                apex,
            } => {
                if a_rows.iter().any(|r| !dot(r, p).is_zero()) {
                    return false;
                }
                let in_base = |x: &[Q], scale: &Q| {
                    dot(c, x).is_zero() && x.iter().zip(half_widths).all(|(x, h)| x.abs() < h * scale)
                };
                let ca = dot(c, apex);
                if ca.is_zero() {
                    return in_base(p, &Q::one());
                }
                let t = dot(c, p) / ca;
                if t.abs() > Q::one() {
                    return false;
                }
                let r: Vec<Q> = p.iter().zip(apex).map(|(p, a)| p - &t * a).collect();
                if r.iter().all(Zero::is_zero) {
                    return true;
                }
                in_base(&r, &(Q::one() - t.abs()))
            }
            Self::UnionHull { w } => {
                let neg: Vec<Q> = w.iter().map(|x| -x).collect();
                near_segment(p, w, &neg)
            }
            Self::Hull { u, v } => near_segment(p, u, v),
        }
    }

    /// Membership of a float point assumed to lie in the body's linear span
    /// (`ker(A)` for the bi-pyramid, `ker(B)` for the cube section).
    pub fn contains_f64(&self, p: &[f64]) -> bool {
        let f = |v: &[Q]| v.iter().map(to_f64).collect::<Vec<f64>>();
        match self {
            Self::OpenBall { radius_sq } => p.iter().map(|x| x * x).sum::<f64>() < to_f64(radius_sq),
            Self::OpenBox { half_widths } | Self::CubeSection { half_widths, .. } => {
                p.iter().zip(half_widths).all(|(x, h)| x.abs() < to_f64(h))
            }
            Self::Bipyramid {
                c, half_widths, apex, ..
            } => {
                let (c, h, a) = (f(c), f(half_widths), f(apex));
                let ca: f64 = c.iter().zip(&a).map(|(x, y)| x * y).sum();
                let cp: f64 = c.iter().zip(p).map(|(x, y)| x * y).sum();
                let t = if ca == 0.0 { 0.0 } else { cp / ca };
                if t.abs() >= 1.0 {
                    return false;
                }
                (0..p.len()).all(|i| (p[i] - t * a[i]).abs() < (1.0 - t.abs()) * h[i])
            }
            Self::UnionHull { w } => {
                let w = f(w);
                let neg: Vec<f64> = w.iter().map(|x| -x).collect();
                near_segment_f64(p, &w, &neg)
            }
            Self::Hull { u, v } => near_segment_f64(p, &f(u), &f(v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonnegativityReport {
    #[serde(serialize_with = "members_ser")]
    pub members: Vec<Vec<BigInt>>,
    pub negative_members: usize,
    pub holds: bool,
}

fn members_ser<S: serde::Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|v| v.iter().map(text::integer_value).collect::<Vec<_>>()))
}

/// Integer points of `D(u, v)` in `[−r, r]^n`, checking none has a negative
/// coordinate.
pub fn nonnegativity_of_hull(u: &[Q], v: &[Q], radius: i64, cap: u64) -> Result<NonnegativityReport, GeomError> {
    if u.len() != v.len() {
        return Err(GeomError::DimensionMismatch("u and v differ in length".into()));
    }
    if u.iter().chain(v).any(|x| x.is_negative()) {
        return Err(GeomError::InvalidInput("u and v must be nonnegative".into()));
    }
    let n = u.len();
    let side = (2 * radius + 1) as u64;
    if (side as f64).powi(n as i32) > cap as f64 {
        return Err(GeomError::BudgetExceeded(format!(
            "{side}^{n} grid points exceed {cap}"
        )));
    }
    let body = SymmetricBody::Hull {
        u: u.to_vec(),
        v: v.to_vec(),
    };
    let members: Vec<Vec<BigInt>> = (0..n)
        .map(|_| -radius..=radius)
        .multi_cartesian_product()
        .filter(|p| body.contains(&p.iter().map(|&x| Q::from_integer(x.into())).collect::<Vec<_>>()))
        .map(|p| p.into_iter().map(BigInt::from).collect())
        .collect();
    let negative_members = members.iter().filter(|p| p.iter().any(|x| x.is_negative())).count();
    Ok(NonnegativityReport {
        holds: negative_members == 0,
        members,
        negative_members,
    })
}
