//! Seeded, sharded Monte-Carlo volume estimates.

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bodies::SymmetricBody;
use super::{kernel_frame, orthonormalize, to_f64, GeomError};
use crate::exact::IntegerMatrix;

type Q = BigRational;

/// Samples per shard; shard `i` draws from stream `i` of the seeded generator.
pub const SHARD_SIZE: u64 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    /// Standard error of `estimate`.
    pub sigma: f64,
    pub samples: u64,
    pub hits: u64,
    pub box_volume: f64,
}

/// The seed occupies the low key bytes, so distinct seeds give distinct keys.
fn key(seed: u64) -> [u8; 32] {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key
}

/// Stream `stream` of the generator keyed by `seed`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::from_seed(key(seed));
    rng.set_stream(stream);
    rng
}

/// Volume of `{t in box : member(t)}` for the centred box with the given
/// half-widths. Results depend only on `(seed, samples)`.
pub fn mc_volume<F>(half_widths: &[f64], samples: u64, seed: u64, member: F) -> McEstimate
where
    F: Fn(&[f64]) -> bool + Sync,
{
    let box_volume: f64 = half_widths.iter().map(|h| 2.0 * h).product();
    let shards = samples.div_ceil(SHARD_SIZE);
    let hits: u64 = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = seeded_rng(seed, shard);
            let count = SHARD_SIZE.min(samples - shard * SHARD_SIZE);
            let mut t = vec![0.0; half_widths.len()];
            let mut hits = 0u64;
            for _ in 0..count {
                for (x, h) in t.iter_mut().zip(half_widths) {
                    *x = rng.gen_range(-h..*h);
                }
                hits += u64::from(member(&t));
            }
            hits
        })
        .sum();
    let p = if samples == 0 {
        0.0
    } else {
        hits as f64 / samples as f64
    };
    McEstimate {
        estimate: box_volume * p,
        sigma: box_volume * (p * (1.0 - p) / samples.max(1) as f64).sqrt(),
        samples,
        hits,
        box_volume,
    }
}

fn embed(frame: &[DVector<f64>], t: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|x| *x = 0.0);
    for (q, &tj) in frame.iter().zip(t) {
        for (o, qi) in out.iter_mut().zip(q.iter()) {
            *o += qi * tj;
        }
    }
}

/// Half-widths of a frame-coordinate box covering `{x in span : |x_i| < r_i}`.
fn covering_box(frame: &[DVector<f64>], radii: &[f64]) -> Vec<f64> {
    frame
        .iter()
        .map(|q| q.iter().zip(radii).map(|(a, r)| a.abs() * r).sum())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoxSliceResult {
    /// `2^{l−k} prod_{i <= l−k} d_i` over the smallest `d_i`.
    pub bound: f64,
    pub estimate: Option<McEstimate>,
}

/// Volume of `D (S ∩ (−1,1)^l) = (D S) ∩ prod (−d_i, d_i)` against its
/// cube-slicing lower bound. `spanning` spans `S`.
pub fn box_slice_lower_bound(
    d: &[f64],
    spanning: &[DVector<f64>],
    samples: u64,
    seed: u64,
) -> Result<BoxSliceResult, GeomError> {
    let l = d.len();
    if spanning.iter().any(|s| s.len() != l) || spanning.len() > l || spanning.is_empty() {
        return Err(GeomError::DimensionMismatch(format!(
            "{} spanning vectors for ambient dimension {l}",
            spanning.len()
        )));
    }
    if d.iter().any(|&x| !(x > 0.0)) {
        return Err(GeomError::InvalidInput("d must be positive".into()));
    }
    let dim = spanning.len();
    let mut sorted = d.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let bound = 2f64.powi(dim as i32) * sorted[..dim].iter().product::<f64>();
    if samples == 0 {
        return Ok(BoxSliceResult { bound, estimate: None });
    }
    let dm = DMatrix::from_diagonal(&DVector::from_column_slice(d));
    let image: Vec<DVector<f64>> = spanning.iter().map(|s| &dm * s).collect();
    let frame = orthonormalize(&image)?;
    let half = covering_box(&frame, d);
    let estimate = mc_volume(&half, samples, seed, |t| {
        let mut x = vec![0.0; l];
        embed(&frame, t, &mut x);
        x.iter().zip(d).all(|(x, d)| x.abs() < *d)
    });
    Ok(BoxSliceResult {
        bound,
        estimate: Some(estimate),
    })
}

/// Volume of `ker(A) ∩ prod (−h_i, h_i)`.
pub fn cube_section_volume(
    a: &IntegerMatrix,
    half_widths: &[f64],
    samples: u64,
    seed: u64,
) -> Result<McEstimate, GeomError> {
    if half_widths.len() != a.cols() {
        return Err(GeomError::DimensionMismatch("one half-width per column".into()));
    }
    let frame = kernel_frame(a)?;
    let half = covering_box(&frame, half_widths);
    let n = a.cols();
    Ok(mc_volume(&half, samples, seed, |t| {
        let mut x = vec![0.0; n];
        embed(&frame, t, &mut x);
        x.iter().zip(half_widths).all(|(x, h)| x.abs() < *h)
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EBodyResult {
    /// `2^{n−m} (1 + ‖u − v‖₂)`.
    pub bound: f64,
    pub estimate: Option<McEstimate>,
    /// Exact length when `ker(A)` is a line.
    pub length: Option<f64>,
}

/// Volume of `E(u, v) ∩ ker(A)` against `2^{n−m}(1 + ‖u − v‖₂)`.
pub fn e_body_slice_bound(
    a: &IntegerMatrix,
    u: &[Q],
    v: &[Q],
    samples: u64,
    seed: u64,
) -> Result<EBodyResult, GeomError> {
    let n = a.cols();
    if u.len() != n || v.len() != n {
        return Err(GeomError::DimensionMismatch(
            "u, v must have one entry per column".into(),
        ));
    }
    if a.mul_rational_vec(u) != a.mul_rational_vec(v) {
        return Err(GeomError::InvalidInput("A u != A v".into()));
    }
    if u.iter().chain(v).any(|x| x < &Q::from_integer(0.into())) {
        return Err(GeomError::InvalidInput("u and v must be nonnegative".into()));
    }
    let frame = kernel_frame(a)?;
    let dim = frame.len();
    let body = SymmetricBody::union_hull(u, v);
    let w: Vec<f64> = u.iter().zip(v).map(|(u, v)| to_f64(u) - to_f64(v)).collect();
    let wnorm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    let bound = 2f64.powi(dim as i32) * (1.0 + wnorm);
    let radii: Vec<f64> = w.iter().map(|x| x.abs() + 1.0).collect();
    let half = covering_box(&frame, &radii);
    let member = |t: &[f64]| {
        let mut x = vec![0.0; n];
        embed(&frame, t, &mut x);
        body.contains_f64(&x)
    };

    let length = (dim == 1).then(|| {
        // E ∩ line is a symmetric open interval; bisect for its end
        let (mut lo, mut hi) = (0.0, half[0]);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if member(&[mid]) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        2.0 * lo
    });
    let estimate = (samples > 0).then(|| mc_volume(&half, samples, seed, member));
    Ok(EBodyResult {
        bound,
        estimate,
        length,
    })
}
