//! Randomized verification suites.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    box_slice_lower_bound, complement_rows, cube_section_volume, e_body_slice_bound, eigenvalue_volume_lower_bound,
    gram_volume, lattice_points_in, nonnegativity_of_hull, orthonormalize, section_volume_transform, seeded_rng,
    to_f64, McEstimate, SubspaceSection, SymmetricBody,
};
use crate::exact::{kernel_lattice_basis, rank, rat_vec, IntegerMatrix};
use crate::integer::{ilp_solve, IntOptions};
use crate::polyhedra::{lp_solve, Instance, LpOutcome};

type Q = BigRational;

/// Relative tolerance of the closed-form identities.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Monte-Carlo checks pass when `estimate >= bound − SIGMAS σ`.
pub const SIGMAS: f64 = 3.0;
pub const SYMMETRY_PROBES: usize = 10_000;
pub const LATTICE_CAP: u64 = 2_000_000;

const STREAM_SECTIONS: u64 = 1 << 40;
const STREAM_SLICES: u64 = (1 << 40) + 1;
const STREAM_EBODY: u64 = (1 << 40) + 2;
const STREAM_LATTICE: u64 = (1 << 40) + 3;
const STREAM_PROBES: u64 = (1 << 40) + 4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometryConfig {
    /// Largest dimension of a sampled slice.
    pub max_dim: usize,
    pub samples: u64,
    pub seed: u64,
    /// Random sections for the volume identities.
    pub sections: usize,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self {
            max_dim: 5,
            samples: 100_000,
            seed: 1,
            sections: 200,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentitySummary {
    pub cases: usize,
    pub failures: usize,
    /// Largest relative error of the transform identity.
    pub max_relative_error: f64,
    /// Smallest `actual / bound` of the eigenvalue bound.
    pub min_eigen_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeCheck {
    pub label: String,
    pub dim: usize,
    pub bound: f64,
    pub estimate: Option<McEstimate>,
    /// Closed-form volume where one is known.
    pub exact: Option<f64>,
    pub status: CheckStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeOutcome {
    Found,
    NotFound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinkowskiCheck {
    pub label: String,
    pub dim: usize,
    /// `2^d det(Λ)`.
    pub threshold: f64,
    /// Certified lower bound on the volume: the larger of the cube-slicing
    /// bound and `estimate − 3σ`.
    pub certified_volume: f64,
    pub estimate: Option<McEstimate>,
    pub outcome: Option<LatticeOutcome>,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryCheck {
    pub body: String,
    pub probes: usize,
    pub members: usize,
    pub asymmetric: usize,
    pub midpoint_failures: usize,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullCheck {
    pub label: String,
    pub members: usize,
    pub negative_members: usize,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometryReport {
    pub config: GeometryConfig,
    pub identities: IdentitySummary,
    pub box_slices: Vec<VolumeCheck>,
    pub e_bodies: Vec<VolumeCheck>,
    pub minkowski: Vec<MinkowskiCheck>,
    pub symmetry: Vec<SymmetryCheck>,
    pub hull_nonnegativity: Vec<HullCheck>,
    pub notices: Vec<String>,
    pub passed: bool,
}

impl GeometryReport {
    pub fn failures(&self) -> usize {
        self.identities.failures
            + self
                .box_slices
                .iter()
                .chain(&self.e_bodies)
                .filter(|c| c.status == CheckStatus::Fail)
                .count()
            + self.minkowski.iter().filter(|c| c.status == CheckStatus::Fail).count()
            + self.symmetry.iter().filter(|c| c.status == CheckStatus::Fail).count()
            + self
                .hull_nonnegativity
                .iter()
                .filter(|c| c.status == CheckStatus::Fail)
                .count()
    }
}

fn case_seed(seed: u64, index: u64) -> u64 {
    seed ^ (index + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> DVector<f64> {
    DVector::from_fn(len, |_, _| rng.gen_range(-bound..=bound) as f64)
}

/// Orthonormal frame of a random `dim`-dimensional subspace of `R^l`.
fn random_frame(rng: &mut ChaCha8Rng, l: usize, dim: usize) -> (Vec<DVector<f64>>, Vec<DVector<f64>>) {
    loop {
        let spanning: Vec<_> = (0..dim).map(|_| random_vector(rng, l, 3)).collect();
        if let Ok(frame) = orthonormalize(&spanning) {
            return (spanning, frame);
        }
    }
}

fn random_rational_matrix(rng: &mut ChaCha8Rng, l: usize) -> DMatrix<f64> {
    loop {
        let d = DMatrix::from_fn(l, l, |_, _| {
            rng.gen_range(-6i64..=6) as f64 / rng.gen_range(1i64..=5) as f64
        });
        if d.determinant().abs() >= 0.1 {
            return d;
        }
    }
}

fn identity_suite(config: &GeometryConfig) -> IdentitySummary {
    let mut rng = seeded_rng(config.seed, STREAM_SECTIONS);
    let mut summary = IdentitySummary {
        cases: config.sections,
        failures: 0,
        max_relative_error: 0.0,
        min_eigen_ratio: f64::INFINITY,
    };
    for _ in 0..config.sections {
        let l = rng.gen_range(1..=6usize);
        let dim = rng.gen_range(1..=l);
        let (_, frame) = random_frame(&mut rng, l, dim);
        let generators = loop {
            let g = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-3i64..=3) as f64);
            if gram_volume(&g) >= 0.5 {
                break g;
            }
        };
        let d = random_rational_matrix(&mut rng, l);
        let Ok(section) = SubspaceSection::new(frame, generators) else {
            summary.failures += 1;
            continue;
        };
        let direct = gram_volume(&(&d * section.ambient_generators()));
        let transformed = complement_rows(&section, &d).and_then(|b| section_volume_transform(&section, &d, &b));
        let eigen = eigenvalue_volume_lower_bound(&section, &d);
        match (transformed, eigen) {
            (Ok(t), Ok((bound, actual))) => {
                let err = (t - direct).abs() / direct.abs().max(f64::MIN_POSITIVE);
                summary.max_relative_error = summary.max_relative_error.max(err);
                summary.min_eigen_ratio = summary.min_eigen_ratio.min(actual / bound);
                if err > IDENTITY_TOL || actual < bound * (1.0 - IDENTITY_TOL) {
                    summary.failures += 1;
                }
            }
            _ => summary.failures += 1,
        }
    }
    summary
}

fn mc_status(bound: f64, estimate: Option<&McEstimate>) -> CheckStatus {
    match estimate {
        None => CheckStatus::Skipped,
        Some(e) if e.estimate >= bound - SIGMAS * e.sigma => CheckStatus::Pass,
        Some(_) => CheckStatus::Fail,
    }
}

fn box_slice_suite(config: &GeometryConfig) -> Vec<VolumeCheck> {
    let mut rng = seeded_rng(config.seed, STREAM_SLICES);
    let mut cases: Vec<(String, Vec<f64>, Vec<DVector<f64>>)> = vec![(
        "hexagon x1+x2+x3=0".into(),
        vec![1.0; 3],
        vec![
            DVector::from_column_slice(&[1.0, -1.0, 0.0]),
            DVector::from_column_slice(&[0.0, 1.0, -1.0]),
        ],
    )];
    for l in 1..=config.max_dim {
        for dim in 1..=l {
            let mut d: Vec<f64> = (0..l).map(|_| rng.gen_range(1..=8) as f64 / 4.0).collect();
            d.sort_by(|a, b| a.total_cmp(b));
            let (spanning, _) = random_frame(&mut rng, l, dim);
            cases.push((format!("l={l} dim={dim}"), d, spanning));
        }
    }
    cases
        .into_iter()
        .enumerate()
        .map(|(i, (label, d, spanning))| {
            let dim = spanning.len();
            let r = box_slice_lower_bound(&d, &spanning, config.samples, case_seed(config.seed, i as u64))
                .expect("suite cases are well formed");
            let exact = (dim == d.len()).then(|| d.iter().map(|x| 2.0 * x).product());
            VolumeCheck {
                status: mc_status(r.bound, r.estimate.as_ref()),
                label,
                dim,
                bound: r.bound,
                estimate: r.estimate,
                exact,
            }
        })
        .collect()
}

fn random_full_rank(rng: &mut ChaCha8Rng, m: usize, n: usize, bound: i64) -> IntegerMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect();
        let a = IntegerMatrix::from_rows(&rows).expect("rectangular");
        if rank(&a) == m {
            return a;
        }
    }
}

/// `u > 0` and `v = u + t w` for a kernel vector `w`, with `t` keeping `v >= 0`.
fn points_with_equal_image(rng: &mut ChaCha8Rng, a: &IntegerMatrix) -> (Vec<Q>, Vec<Q>) {
    let n = a.cols();
    let u: Vec<Q> = (0..n).map(|_| Q::from_integer(rng.gen_range(1..=3).into())).collect();
    let basis = kernel_lattice_basis(a).expect("integer kernel");
    let coeffs: Vec<BigInt> = basis.vectors.iter().map(|_| rng.gen_range(-2..=2).into()).collect();
    let w: Vec<Q> = basis.combine(&coeffs).into_iter().map(Q::from_integer).collect();
    let t_max = u
        .iter()
        .zip(&w)
        .filter(|(_, w)| w.is_negative())
        .map(|(u, w)| -u / w)
        .min()
        .unwrap_or_else(|| Q::from_integer(2.into()));
    let t = t_max * Q::new(rng.gen_range(0..=4).into(), 4.into());
    let v = u.iter().zip(&w).map(|(u, w)| u + &t * w).collect();
    (u, v)
}

fn e_body_suite(config: &GeometryConfig) -> Vec<VolumeCheck> {
    let mut rng = seeded_rng(config.seed, STREAM_EBODY);
    let ones = |n| IntegerMatrix::from_rows(&[vec![1i64; n]]).expect("one row");
    let mut cases = vec![
        (
            "A=[[1,1]] u=(1,0) v=(0,1)".to_string(),
            ones(2),
            rat_vec(&[1, 0]),
            rat_vec(&[0, 1]),
        ),
        (
            "A=[[1,1,1]] u=(1,1,0) v=(0,1,1)".to_string(),
            ones(3),
            rat_vec(&[1, 1, 0]),
            rat_vec(&[0, 1, 1]),
        ),
        (
            "A=[[1,1,1]] u=v".to_string(),
            ones(3),
            rat_vec(&[1, 0, 0]),
            rat_vec(&[1, 0, 0]),
        ),
    ];
    for dim in 1..=config.max_dim {
        let m = rng.gen_range(1..=2usize);
        let a = random_full_rank(&mut rng, m, m + dim, 3);
        let (u, v) = points_with_equal_image(&mut rng, &a);
        cases.push((format!("random m={m} n={}", m + dim), a, u, v));
    }
    cases
        .into_iter()
        .enumerate()
        .map(|(i, (label, a, u, v))| {
            let r = e_body_slice_bound(&a, &u, &v, config.samples, case_seed(config.seed, i as u64))
                .expect("suite cases are well formed");
            let status = match (r.length, &r.estimate) {
                (Some(len), _) if len < r.bound * (1.0 - IDENTITY_TOL) => CheckStatus::Fail,
                (Some(_), None) => CheckStatus::Pass,
                _ => mc_status(r.bound, r.estimate.as_ref()),
            };
            VolumeCheck {
                label,
                dim: a.cols() - a.rows(),
                bound: r.bound,
                estimate: r.estimate,
                exact: r.length,
                status,
            }
        })
        .collect()
}

fn minkowski_suite(config: &GeometryConfig) -> Vec<MinkowskiCheck> {
    let mut rng = seeded_rng(config.seed, STREAM_LATTICE);
    let mut out = Vec::new();
    for dim in 1..=config.max_dim.min(4) {
        for rep in 0..3 {
            let m = rng.gen_range(1..=2usize);
            let n = m + dim;
            let a = random_full_rank(&mut rng, m, n, 3);
            let halves: Vec<Q> = (0..n).map(|_| Q::new(rng.gen_range(2..=8).into(), 2.into())).collect();
            let h: Vec<f64> = halves.iter().map(to_f64).collect();
            let lattice = kernel_lattice_basis(&a).expect("integer kernel");
            let threshold = 2f64.powi(dim as i32) * to_f64(&lattice.gram_det()).sqrt();

            let mut sorted = h.clone();
            sorted.sort_by(|x, y| x.total_cmp(y));
            let slicing = 2f64.powi(dim as i32) * sorted[..dim].iter().product::<f64>();
            let estimate = (config.samples > 0).then(|| {
                cube_section_volume(&a, &h, config.samples, case_seed(config.seed, out.len() as u64))
                    .expect("kernel is nontrivial")
            });
            let certified = estimate
                .as_ref()
                .map_or(slicing, |e| slicing.max(e.estimate - SIGMAS * e.sigma));

            let body = SymmetricBody::CubeSection {
                rows: a
                    .to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(Q::from_integer).collect())
                    .collect(),
                half_widths: halves,
            };
            let found = lattice_points_in(&body, &lattice, LATTICE_CAP).map(|p| !p.is_empty());
            let (outcome, status) = match found {
                Err(_) => (None, CheckStatus::Skipped),
                Ok(true) => (Some(LatticeOutcome::Found), CheckStatus::Pass),
                Ok(false) if certified > threshold => (Some(LatticeOutcome::NotFound), CheckStatus::Fail),
                Ok(false) => (Some(LatticeOutcome::NotFound), CheckStatus::Pass),
            };
            out.push(MinkowskiCheck {
                label: format!("dim={dim} case={rep} m={m}"),
                dim,
                threshold,
                certified_volume: certified,
                estimate,
                outcome,
                status,
            });
        }
    }
    out
}

/// Random rational point `sum t_j d_j` with `|t_j| ‖d_j‖ <= radius` (rounded up).
fn random_probe(rng: &mut ChaCha8Rng, directions: &[Vec<Q>], radius: f64) -> Vec<Q> {
    let scale = 8i64;
    let mut p = vec![Q::zero(); directions[0].len()];
    for d in directions {
        let len = d.iter().map(|x| to_f64(x).powi(2)).sum::<f64>().sqrt();
        let r = (radius / len * scale as f64).ceil() as i64;
        let t = Q::new(rng.gen_range(-r..=r).into(), scale.into());
        for (x, y) in p.iter_mut().zip(d) {
            *x += &t * y;
        }
    }
    p
}

/// Probes the body inside the span of `directions`, which must contain it.
fn symmetry_of(body: &SymmetricBody, directions: &[Vec<Q>], rng: &mut ChaCha8Rng) -> SymmetryCheck {
    let radius = body.circumradius();
    let mut members: Vec<Vec<Q>> = Vec::new();
    let mut asymmetric = 0;
    for _ in 0..SYMMETRY_PROBES {
        let mut p = random_probe(rng, directions, radius);
        if rng.gen_bool(0.5) {
            let shrink = Q::new(1.into(), rng.gen_range(2..=8).into());
            p.iter_mut().for_each(|x| *x *= &shrink);
        }
        let neg: Vec<Q> = p.iter().map(|x| -x).collect();
        let inside = body.contains(&p);
        if inside != body.contains(&neg) {
            asymmetric += 1;
        }
        if inside {
            members.push(p);
        }
    }
    let half = Q::new(1.into(), 2.into());
    let midpoint_failures = members
        .windows(2)
        .filter(|w| {
            let mid: Vec<Q> = w[0].iter().zip(&w[1]).map(|(x, y)| (x + y) * &half).collect();
            !body.contains(&mid)
        })
        .count();
    let ok = asymmetric == 0 && midpoint_failures == 0;
    SymmetryCheck {
        body: body.name().to_string(),
        probes: SYMMETRY_PROBES,
        members: members.len(),
        asymmetric,
        midpoint_failures,
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
    }
}

fn kernel_directions(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let a = IntegerMatrix::from_rows(rows).expect("rectangular");
    kernel_lattice_basis(&a)
        .expect("integer kernel")
        .vectors
        .into_iter()
        .map(|v| v.into_iter().map(Q::from_integer).collect())
        .collect()
}

fn symmetry_suite(config: &GeometryConfig) -> Vec<SymmetryCheck> {
    let mut rng = seeded_rng(config.seed, STREAM_PROBES);
    let axes: Vec<Vec<Q>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| Q::from_integer(BigInt::from(i64::from(i == j))))
                .collect()
        })
        .collect();
    let mut bodies = vec![
        (
            SymmetricBody::CubeSection {
                rows: vec![rat_vec(&[1, 1, 1])],
                half_widths: rat_vec(&[1, 2, 3]),
            },
            kernel_directions(&[vec![1, 1, 1]]),
        ),
        (
            SymmetricBody::union_hull(&rat_vec(&[1, 1, 0]), &rat_vec(&[0, 1, 1])),
            axes,
        ),
    ];
    let inst = Instance::from_ints(&[vec![3, 5, 7]], &[11], &[1, 0, 0]).expect("valid instance");
    if let (Ok(LpOutcome::Optimal(x)), Ok(z)) = (lp_solve(&inst), ilp_solve(&inst, &IntOptions::default())) {
        if let Ok(l) = SymmetricBody::bipyramid(&inst.a().to_rows(), inst.c(), &x.x, &z.z) {
            bodies.push((l, kernel_directions(&[vec![3, 5, 7]])));
        }
    }
    bodies.iter().map(|(b, d)| symmetry_of(b, d, &mut rng)).collect()
}

fn hull_suite() -> Vec<HullCheck> {
    let half = |n: i64| Q::new(n.into(), 2.into());
    let zero = Q::zero;
    [
        ("u=(1/2,0) v=(0,1/2)", vec![half(1), zero()], vec![zero(), half(1)], 2),
        ("u=v=0", rat_vec(&[0, 0]), rat_vec(&[0, 0]), 2),
        ("u=(3,0) v=(0,3)", rat_vec(&[3, 0]), rat_vec(&[0, 3]), 5),
        (
            "u=(2,0,1) v=(0,3/2,0)",
            rat_vec(&[2, 0, 1]),
            vec![zero(), half(3), zero()],
            4,
        ),
    ]
    .into_iter()
    .map(|(label, u, v, r)| match nonnegativity_of_hull(&u, &v, r, 1_000_000) {
        Ok(rep) => HullCheck {
            label: label.into(),
            members: rep.members.len(),
            negative_members: rep.negative_members,
            status: if rep.holds {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
        },
        Err(_) => HullCheck {
            label: label.into(),
            members: 0,
            negative_members: 0,
            status: CheckStatus::Skipped,
        },
    })
    .collect()
}

/// Runs every geometry suite. Results depend only on `config`.
pub fn verify_geometry(config: &GeometryConfig) -> GeometryReport {
    let mut notices = Vec::new();
    if config.samples == 0 {
        notices.push("samples = 0: Monte-Carlo estimates skipped, closed-form checks only".to_string());
    }
    let mut report = GeometryReport {
        config: config.clone(),
        identities: identity_suite(config),
        box_slices: box_slice_suite(config),
        e_bodies: e_body_suite(config),
        minkowski: minkowski_suite(config),
        symmetry: symmetry_suite(config),
        hull_nonnegativity: hull_suite(),
        notices,
        passed: false,
    };
    let skipped = report
        .minkowski
        .iter()
        .filter(|c| c.status == CheckStatus::Skipped)
        .count();
    if skipped > 0 {
        report.notices.push(format!(
            "{skipped} lattice searches exceeded {LATTICE_CAP} coefficient vectors"
        ));
    }
    report.passed = report.failures() == 0;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(samples: u64) -> GeometryConfig {
        GeometryConfig {
            max_dim: 3,
            samples,
            seed: 7,
            sections: 40,
        }
    }

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let a = verify_geometry(&small(20_000));
        assert!(a.passed, "{a:#?}");
        assert_eq!(a, verify_geometry(&small(20_000)));
        assert!(a.minkowski.iter().any(|c| c.outcome == Some(LatticeOutcome::Found)));
        assert!(a.identities.max_relative_error <= IDENTITY_TOL);
        assert!(a.symmetry.iter().all(|c| c.members > 500), "{:?}", a.symmetry);
    }

    #[test]
    fn zero_samples_skip_monte_carlo() {
        let r = verify_geometry(&small(0));
        assert!(r.passed, "{r:#?}");
        assert!(r.notices[0].contains("skipped"));
        assert!(r.box_slices.iter().all(|c| c.status == CheckStatus::Skipped));
        assert!(r.e_bodies.iter().all(|c| c.estimate.is_none()));
    }
}
