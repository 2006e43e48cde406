//! The integrality gap and the upper bounds it is compared against.
//!
//! Every bound is carried as an exact [`Surd`]; verdicts compare it with the
//! exact gap, so a reported violation is a genuine one.

mod regime;
pub mod surd;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::{compute_invariants_capped, restrict_instance, MatrixInvariants, DEFAULT_MINOR_CAP};
use crate::integer::{
    enumerate_integer_points, ilp_solve, min_support_optimal_given, nearest_among, IntError, IntOptions,
    IntegerSolution, SearchBox,
};
use crate::io::text;
use crate::polyhedra::{
    enumerate_vertices_capped, lp_solve, Instance, LpOutcome, PolyError, VertexSolution, DEFAULT_BASIS_CAP,
};

pub use regime::{regime_comparisons, RegimeForm, RegimeRow};
pub use surd::Surd;

type Q = BigRational;

/// Decimal places shown for upward-rounded bound values.
pub const DISPLAY_DIGITS: u32 = 6;

#[derive(Clone, Debug)]
pub struct BoundOptions {
    /// Starting precision of interval comparisons; doubled on demand.
    pub precision_bits: u32,
    pub int: IntOptions,
    pub vertex_cap: u64,
    pub minor_cap: u64,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            precision_bits: 64,
            int: IntOptions::default(),
            vertex_cap: DEFAULT_BASIS_CAP,
            minor_cap: DEFAULT_MINOR_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Satisfied,
    Violated,
    Indeterminate,
    NotApplicable,
}

/// Certified verdict of `lhs <= rhs`.
pub fn certify_le(lhs: &Surd, rhs: &Surd, precision_bits: u32) -> Verdict {
    match rhs.compare(lhs, precision_bits) {
        Some(Ordering::Less) => Verdict::Violated,
        Some(_) => Verdict::Satisfied,
        None => Verdict::Indeterminate,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CostNorms {
    #[serde(serialize_with = "text::rational::serialize")]
    pub l1: Q,
    #[serde(serialize_with = "text::rational::serialize")]
    pub l2_squared: Q,
    #[serde(serialize_with = "text::rational::serialize")]
    pub linf: Q,
}

impl CostNorms {
    pub fn of(c: &[Q]) -> Self {
        Self {
            l1: c.iter().map(|x| x.abs()).sum(),
            l2_squared: c.iter().map(|x| x * x).sum(),
            linf: c.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero),
        }
    }

    pub fn l2(&self) -> Surd {
        Surd::sqrt_rational(&self.l2_squared)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapData {
    pub lp: VertexSolution,
    pub ip: IntegerSolution,
    #[serde(serialize_with = "text::rational::serialize")]
    pub gap: Q,
}

/// `IG = IP - LP` with the LP vertex and the IP solution that realize it.
pub fn integrality_gap(inst: &Instance, opts: &IntOptions) -> Result<GapData, IntError> {
    let lp = match lp_solve(inst) {
        Ok(LpOutcome::Optimal(v)) => v,
        Ok(LpOutcome::Unbounded { .. }) => {
            // the IP is then unbounded or infeasible; let the solver decide which
            ilp_solve(inst, opts)?;
            unreachable!("an IP with unbounded relaxation has no optimum");
        }
        Err(PolyError::Infeasible { .. }) => return Err(IntError::Infeasible),
        Err(e) => return Err(e.into()),
    };
    let ip = ilp_solve(inst, opts)?;
    let gap = &ip.value - &lp.value;
    Ok(GapData { lp, ip, gap })
}

fn pow2(e: i64) -> Q {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Q::from_integer(p)
    } else {
        Q::new(BigInt::one(), p)
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn q_int(x: &BigInt) -> Q {
    Q::from_integer(x.clone())
}

/// `‖c‖₁ (n − m) Δ_m(A)`.
pub fn cook_bound(inst: &Instance, inv: &MatrixInvariants) -> Q {
    CostNorms::of(inst.c()).l1 * Q::from_integer(BigInt::from(inst.n() - inst.m())) * q_int(inv.delta_m())
}

/// `‖c‖∞ m (2 m Δ_1(A) + 1)^m`.
pub fn ew_bound(inst: &Instance, inv: &MatrixInvariants) -> Q {
    let m = inst.m();
    let base: BigInt = BigInt::from(2 * m) * inv.delta_1() + 1;
    CostNorms::of(inst.c()).linf * Q::from_integer(BigInt::from(m) * base.pow(m as u32))
}

/// `‖c‖₂ s 2^{m+1−s} Δ(A)/gcd(A)` with `s = |supp z*|`.
pub fn transference_bound(inst: &Instance, inv: &MatrixInvariants, z: &IntegerSolution) -> Surd {
    let (s, m) = (z.support_size as i64, inst.m() as i64);
    let k = Q::from_integer(s.into()) * pow2(m + 1 - s) / q_int(&inv.gcd);
    CostNorms::of(inst.c())
        .l2()
        .mul(&Surd::sqrt(inv.gram_det.clone()))
        .scale(&k)
}

/// `‖c‖₂ s C(s+m, m)^{1/2} 2^{m+1−s} Δ_m(A)/gcd(A)`.
pub fn transference_bound_delta_m(inst: &Instance, inv: &MatrixInvariants, z: &IntegerSolution) -> Surd {
    let (s, m) = (z.support_size as i64, inst.m() as i64);
    let k = Q::from_integer(s.into()) * pow2(m + 1 - s) * q_int(inv.delta_m()) / q_int(&inv.gcd);
    CostNorms::of(inst.c())
        .l2()
        .mul(&Surd::sqrt(binomial((s + m) as u64, m as u64)))
        .scale(&k)
}

/// `‖c‖₂ s (s+m)^{m/2} 2^{m+1−s} Δ_1(A)^m/gcd(A)`.
pub fn transference_bound_delta_1(inst: &Instance, inv: &MatrixInvariants, z: &IntegerSolution) -> Surd {
    let (s, m) = (z.support_size as i64, inst.m() as i64);
    let k = Q::from_integer(s.into()) * pow2(m + 1 - s) * q_int(&inv.delta_1().pow(m as u32)) / q_int(&inv.gcd);
    CostNorms::of(inst.c())
        .l2()
        .mul(&Surd::sqrt(BigInt::from(s + m).pow(m as u32)))
        .scale(&k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotApplicable(pub String);

/// `‖c‖₂ (n−m) / prod_{i<n−m} (z_(i) + 1) Δ(A)/gcd(A)` over the `n−m−1`
/// smallest coordinates of `z*`; requires `n > m + 1`.
pub fn advanced_bound(inst: &Instance, inv: &MatrixInvariants, z: &IntegerSolution) -> Result<Surd, NotApplicable> {
    let (m, n) = (inst.m(), inst.n());
    if n <= m + 1 {
        return Err(NotApplicable(format!("requires n > m + 1, got n = {n}, m = {m}")));
    }
    let mut sorted = z.z.clone();
    sorted.sort();
    let prod = sorted[..n - m - 1].iter().fold(BigInt::one(), |acc, v| acc * (v + 1));
    let k = Q::new(BigInt::from(n - m), prod * &inv.gcd);
    Ok(CostNorms::of(inst.c())
        .l2()
        .mul(&Surd::sqrt(inv.gram_det.clone()))
        .scale(&k))
}

/// `Δ(A)/gcd(A) − 1`, the distance bound from a vertex to an integer point.
pub fn proximity_distance_bound(inv: &MatrixInvariants) -> Surd {
    Surd::sqrt(inv.gram_det.clone())
        .scale(&Q::new(BigInt::one(), inv.gcd.clone()))
        .sub(&Surd::integer(1))
}

/// `‖c‖₂ (Δ(A)/gcd(A) − 1)`.
pub fn proximity_gap_bound(inst: &Instance, inv: &MatrixInvariants) -> Surd {
    CostNorms::of(inst.c()).l2().mul(&proximity_distance_bound(inv))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZChoice {
    Solver,
    MinSupport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_star: Option<ZChoice>,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Exact closed form.
    pub exact: Option<Surd>,
    /// Decimal rounded toward +∞, suffixed with `↑`.
    pub value: Option<String>,
    pub verdict: Verdict,
}

impl BoundEntry {
    fn evaluated(name: &'static str, z_star: Option<ZChoice>, bound: Surd, gap: &Q, bits: u32) -> Self {
        Self {
            name,
            z_star,
            applicable: true,
            reason: None,
            value: Some(format!("{}↑", bound.upper_decimal(DISPLAY_DIGITS))),
            verdict: certify_le(&Surd::rational(gap.clone()), &bound, bits),
            exact: Some(bound),
        }
    }

    fn not_applicable(name: &'static str, z_star: Option<ZChoice>, reason: String) -> Self {
        Self {
            name,
            z_star,
            applicable: false,
            reason: Some(reason),
            exact: None,
            value: None,
            verdict: Verdict::NotApplicable,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSummary {
    pub rows: usize,
    pub cols: usize,
    #[serde(serialize_with = "text::integer::serialize")]
    pub gram_det: BigInt,
    #[serde(serialize_with = "text::integer::serialize")]
    pub gcd: BigInt,
    #[serde(serialize_with = "text::integer::serialize")]
    pub delta_1: BigInt,
    #[serde(serialize_with = "text::integer::serialize")]
    pub delta_m: BigInt,
    /// `Δ(A)/gcd(A)`, the determinant of the kernel lattice.
    pub lattice_det: Surd,
}

impl InvariantSummary {
    pub fn of(inv: &MatrixInvariants) -> Self {
        Self {
            rows: inv.rows,
            cols: inv.cols,
            gram_det: inv.gram_det.clone(),
            gcd: inv.gcd.clone(),
            delta_1: inv.delta_1().clone(),
            delta_m: inv.delta_m().clone(),
            lattice_det: Surd::sqrt(inv.gram_det.clone()).scale(&Q::new(BigInt::one(), inv.gcd.clone())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearestWitness {
    pub vertex: VertexSolution,
    pub nearest: IntegerSolution,
    #[serde(serialize_with = "text::rational::serialize")]
    pub distance_squared: Q,
    pub bound: Surd,
    pub verdict: Verdict,
}

fn nearest_witness(
    vertex: &VertexSolution,
    points: &[IntegerSolution],
    bound: &Surd,
    bits: u32,
) -> Option<NearestWitness> {
    let (nearest, d2) = nearest_among(points, &vertex.x)?;
    Some(NearestWitness {
        vertex: vertex.clone(),
        nearest,
        verdict: certify_le(&Surd::sqrt_rational(&d2), bound, bits),
        distance_squared: d2,
        bound: bound.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProximityReport {
    pub bound: Surd,
    pub vertices: Vec<NearestWitness>,
    pub violations: usize,
}

/// The distance check at every vertex of `P(A, b)` against all integer points.
pub fn proximity_check(
    inst: &Instance,
    inv: &MatrixInvariants,
    bx: Option<&SearchBox>,
    opts: &BoundOptions,
) -> Result<ProximityReport, IntError> {
    let bound = proximity_distance_bound(inv);
    let vertices = enumerate_vertices_capped(inst, opts.vertex_cap)?;
    let points = enumerate_integer_points(inst, bx, &opts.int)?;
    if points.is_empty() {
        return Err(IntError::NoIntegerPoint);
    }
    let witnesses: Vec<NearestWitness> = vertices
        .iter()
        .map(|v| nearest_witness(v, &points, &bound, opts.precision_bits).expect("points is nonempty"))
        .collect();
    Ok(ProximityReport {
        violations: witnesses.iter().filter(|w| w.verdict == Verdict::Violated).count(),
        bound,
        vertices: witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub status: Status,
    pub invariants: InvariantSummary,
    pub norms: CostNorms,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp: Option<VertexSolution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ip: Option<IntegerSolution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_support: Option<IntegerSolution>,
    #[serde(serialize_with = "opt_rational", skip_serializing_if = "Option::is_none")]
    pub gap: Option<Q>,
    pub bounds: Vec<BoundEntry>,
    /// Nearest integer point to the optimal LP vertex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nearest: Option<NearestWitness>,
    /// Restricting to the support of the min-support solution keeps
    /// `Δ(Â) ≤ Δ(A)/gcd(A)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support_restriction_ok: Option<bool>,
    pub notes: Vec<String>,
}

fn opt_rational<S: serde::Serializer>(q: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => text::rational::serialize(q, s),
        None => s.serialize_none(),
    }
}

impl BoundReport {
    pub fn violations(&self) -> usize {
        self.bounds.iter().filter(|b| b.verdict == Verdict::Violated).count()
            + usize::from(self.nearest.as_ref().is_some_and(|n| n.verdict == Verdict::Violated))
    }

    pub fn indeterminate(&self) -> usize {
        self.bounds
            .iter()
            .filter(|b| b.verdict == Verdict::Indeterminate)
            .count()
    }

    pub fn bound(&self, name: &str, z: Option<ZChoice>) -> Option<&BoundEntry> {
        self.bounds.iter().find(|b| b.name == name && b.z_star == z)
    }
}

pub const COOK: &str = "cook";
pub const EW: &str = "eisenbrand-weismantel";
pub const TRANSFERENCE: &str = "support-transference";
pub const TRANSFERENCE_DELTA_M: &str = "support-transference-delta-m";
pub const TRANSFERENCE_DELTA_1: &str = "support-transference-delta-1";
pub const ADVANCED: &str = "sorted-support";
pub const PROXIMITY_GAP: &str = "proximity-gap";

/// Every bound for `(A, b, c)`, evaluated at both the solver's optimal hull
/// vertex and a minimum-support one.
pub fn full_report(inst: &Instance, bx: Option<&SearchBox>, opts: &BoundOptions) -> Result<BoundReport, IntError> {
    let inv = compute_invariants_capped(inst.a(), opts.minor_cap).map_err(PolyError::from)?;
    let mut report = BoundReport {
        status: Status::Optimal,
        invariants: InvariantSummary::of(&inv),
        norms: CostNorms::of(inst.c()),
        lp: None,
        ip: None,
        min_support: None,
        gap: None,
        bounds: Vec::new(),
        nearest: None,
        support_restriction_ok: None,
        notes: Vec::new(),
    };
    let data = match integrality_gap(inst, &opts.int) {
        Ok(d) => d,
        Err(IntError::Infeasible) => {
            report.status = Status::Infeasible;
            return Ok(report);
        }
        Err(IntError::Unbounded) => {
            report.status = Status::Unbounded;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let gap = data.gap.clone();
    let bits = opts.precision_bits;

    let min_support = match min_support_optimal_given(inst, &data.ip.value, bx, &opts.int) {
        Ok(z) => Some(z),
        Err(IntError::BoxRequired) => {
            report
                .notes
                .push("P(A,b) is unbounded and no box was given; min-support solution skipped".into());
            None
        }
        Err(e) => return Err(e),
    };

    let b = &mut report.bounds;
    b.push(BoundEntry::evaluated(
        COOK,
        None,
        Surd::rational(cook_bound(inst, &inv)),
        &gap,
        bits,
    ));
    b.push(BoundEntry::evaluated(
        EW,
        None,
        Surd::rational(ew_bound(inst, &inv)),
        &gap,
        bits,
    ));
    let choices =
        std::iter::once((ZChoice::Solver, &data.ip)).chain(min_support.iter().map(|z| (ZChoice::MinSupport, z)));
    for (choice, z) in choices {
        let zc = Some(choice);
        b.push(BoundEntry::evaluated(
            TRANSFERENCE,
            zc,
            transference_bound(inst, &inv, z),
            &gap,
            bits,
        ));
        b.push(BoundEntry::evaluated(
            TRANSFERENCE_DELTA_M,
            zc,
            transference_bound_delta_m(inst, &inv, z),
            &gap,
            bits,
        ));
        b.push(BoundEntry::evaluated(
            TRANSFERENCE_DELTA_1,
            zc,
            transference_bound_delta_1(inst, &inv, z),
            &gap,
            bits,
        ));
        b.push(match advanced_bound(inst, &inv, z) {
            Ok(v) => BoundEntry::evaluated(ADVANCED, zc, v, &gap, bits),
            Err(NotApplicable(r)) => BoundEntry::not_applicable(ADVANCED, zc, r),
        });
    }
    b.push(BoundEntry::evaluated(
        PROXIMITY_GAP,
        None,
        proximity_gap_bound(inst, &inv),
        &gap,
        bits,
    ));

    match enumerate_integer_points(inst, bx, &opts.int) {
        Ok(points) => {
            report.nearest = nearest_witness(&data.lp, &points, &proximity_distance_bound(&inv), bits);
        }
        Err(IntError::BoxRequired) => report
            .notes
            .push("P(A,b) is unbounded and no box was given; nearest point skipped".into()),
        Err(e) => return Err(e),
    }

    if let Some(z) = &min_support {
        if z.support_size > 0 {
            report.support_restriction_ok = Some(
                restrict_instance(inst.a(), inst.b(), inst.c(), &z.support)
                    .map(|r| r.within_delta_ratio)
                    .unwrap_or(false),
            );
        }
    }
    report.lp = Some(data.lp);
    report.ip = Some(data.ip);
    report.min_support = min_support;
    report.gap = Some(gap);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::compute_invariants;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn inst(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> Instance {
        Instance::from_ints(a, b, c).unwrap()
    }

    fn sol(i: &Instance, z: &[i64]) -> IntegerSolution {
        IntegerSolution::new(i, crate::exact::int_vec(z))
    }

    #[test]
    fn gap_examples() {
        let o = IntOptions::default();
        assert_eq!(
            integrality_gap(&inst(&[vec![2, 3]], &[5], &[1, 0]), &o).unwrap().gap,
            q(1, 1)
        );
        assert_eq!(
            integrality_gap(&inst(&[vec![1, 1]], &[2], &[1, 1]), &o).unwrap().gap,
            q(0, 1)
        );
        assert_eq!(
            integrality_gap(&inst(&[vec![3, 5, 7]], &[11], &[1, 0, 0]), &o)
                .unwrap()
                .gap,
            q(2, 1)
        );
        assert_eq!(
            integrality_gap(&inst(&[vec![2, 2]], &[3], &[1, 0]), &o),
            Err(IntError::Infeasible)
        );
        assert_eq!(
            integrality_gap(&inst(&[vec![1, 1]], &[-1], &[1, 0]), &o),
            Err(IntError::Infeasible)
        );
        assert_eq!(
            integrality_gap(&inst(&[vec![1, -1]], &[0], &[-1, 0]), &o),
            Err(IntError::Unbounded)
        );
    }

    #[test]
    fn classical_bounds() {
        let i = inst(&[vec![2, 3]], &[5], &[1, 0]);
        let inv = compute_invariants(i.a()).unwrap();
        assert_eq!(cook_bound(&i, &inv), q(3, 1));
        assert_eq!(ew_bound(&i, &inv), q(7, 1));
        let z = inst(&[vec![2, 3]], &[5], &[0, 0]);
        assert_eq!(cook_bound(&z, &inv), q(0, 1));
        assert_eq!(ew_bound(&z, &inv), q(0, 1));

        let i = inst(&[vec![3, 5, 7]], &[11], &[1, 0, 0]);
        let inv = compute_invariants(i.a()).unwrap();
        assert_eq!(cook_bound(&i, &inv), q(14, 1));
        assert_eq!(ew_bound(&i, &inv), q(15, 1));
    }

    #[test]
    fn transference_examples() {
        let i = inst(&[vec![2, 3]], &[5], &[1, 0]);
        let inv = compute_invariants(i.a()).unwrap();
        let z = sol(&i, &[1, 1]);
        assert_eq!(transference_bound(&i, &inv, &z), Surd::sqrt(13).scale(&q(2, 1)));
        assert_eq!(transference_bound_delta_m(&i, &inv, &z), Surd::sqrt(3).scale(&q(6, 1)));
        assert_eq!(transference_bound_delta_1(&i, &inv, &z), Surd::sqrt(3).scale(&q(6, 1)));
        let zero = sol(&inst(&[vec![1, 1, 1]], &[0], &[1, 0, 0]), &[0, 0, 0]);
        assert!(transference_bound(&i, &inv, &zero).is_zero());
        assert!(transference_bound_delta_m(&i, &inv, &zero).is_zero());
        assert!(transference_bound_delta_1(&i, &inv, &zero).is_zero());

        let i = inst(&[vec![3, 5, 7]], &[11], &[1, 0, 0]);
        let inv = compute_invariants(i.a()).unwrap();
        let z = sol(&i, &[2, 1, 0]);
        assert_eq!(transference_bound(&i, &inv, &z), Surd::sqrt(83).scale(&q(2, 1)));
        // one factor (0 + 1) from the n - m - 1 = 1 smallest coordinates
        assert_eq!(advanced_bound(&i, &inv, &z).unwrap(), Surd::sqrt(83).scale(&q(2, 1)));
        let i4 = inst(&[vec![3, 5, 7, 1]], &[11], &[1, 0, 0, 0]);
        let inv4 = compute_invariants(i4.a()).unwrap();
        assert_eq!(
            advanced_bound(&i4, &inv4, &sol(&i4, &[2, 1, 0, 0])).unwrap(),
            Surd::sqrt(84).scale(&q(3, 1))
        );
        let zero = sol(&i, &[0, 0, 0]);
        assert_eq!(advanced_bound(&i, &inv, &zero).unwrap(), Surd::sqrt(83).scale(&q(2, 1)));

        let i = inst(&[vec![2, 3]], &[5], &[1, 0]);
        let inv = compute_invariants(i.a()).unwrap();
        assert!(advanced_bound(&i, &inv, &sol(&i, &[1, 1])).is_err());
    }

    #[test]
    fn small_support_multiplies() {
        // s <= m gives a factor 2^{m+1-s} >= 2
        let i = inst(&[vec![1, 0, 1], vec![0, 1, 1]], &[1, 1], &[1, 1, 1]);
        let inv = compute_invariants(i.a()).unwrap();
        let z = sol(&i, &[0, 0, 1]);
        assert_eq!(transference_bound(&i, &inv, &z), Surd::integer(12));
    }

    #[test]
    fn proximity_examples() {
        let i = inst(&[vec![2, 3]], &[5], &[1, 0]);
        let inv = compute_invariants(i.a()).unwrap();
        assert_eq!(proximity_gap_bound(&i, &inv), Surd::sqrt(13).sub(&Surd::integer(1)));
        let z = inst(&[vec![2, 3]], &[5], &[0, 0]);
        assert!(proximity_gap_bound(&z, &inv).is_zero());

        let v = inst(&[vec![1, 0, 0], vec![0, 1, 0]], &[1, 1], &[1, 2, 2]);
        let inv = compute_invariants(v.a()).unwrap();
        assert!(proximity_gap_bound(&v, &inv).is_zero());
        assert_eq!(integrality_gap(&v, &IntOptions::default()).unwrap().gap, q(0, 1));
    }

    #[test]
    fn knapsack_report() {
        let i = inst(&[vec![2, 3]], &[5], &[1, 0]);
        let r = full_report(&i, None, &BoundOptions::default()).unwrap();
        assert_eq!(r.gap, Some(q(1, 1)));
        assert_eq!(r.violations(), 0);
        let get = |n| r.bound(n, None).unwrap();
        assert_eq!(get(COOK).value.as_deref(), Some("3.000000↑"));
        assert_eq!(get(EW).value.as_deref(), Some("7.000000↑"));
        assert_eq!(get(PROXIMITY_GAP).value.as_deref(), Some("2.605552↑"));
        let t = r.bound(TRANSFERENCE, Some(ZChoice::MinSupport)).unwrap();
        assert_eq!(t.value.as_deref(), Some("7.211103↑"));
        assert_eq!(t.verdict, Verdict::Satisfied);
        let a = r.bound(ADVANCED, Some(ZChoice::Solver)).unwrap();
        assert_eq!(a.verdict, Verdict::NotApplicable);
        let n = r.nearest.as_ref().unwrap();
        // optimal LP vertex (0, 5/3), nearest (1, 1)
        assert_eq!(n.distance_squared, q(13, 9));
        assert_eq!(n.verdict, Verdict::Satisfied);
        assert_eq!(r.support_restriction_ok, Some(true));
    }

    #[test]
    fn three_column_report() {
        let i = inst(&[vec![3, 5, 7]], &[11], &[1, 0, 0]);
        let r = full_report(&i, None, &BoundOptions::default()).unwrap();
        assert_eq!(r.gap, Some(q(2, 1)));
        assert_eq!(r.violations(), 0);
        let a = r.bound(ADVANCED, Some(ZChoice::Solver)).unwrap();
        assert_eq!(a.exact, Some(Surd::sqrt(83).scale(&q(2, 1))));
        assert_eq!(a.value.as_deref(), Some("18.220868↑"));
    }

    #[test]
    fn infeasible_report_has_no_bounds() {
        let i = inst(&[vec![2, 2]], &[3], &[1, 0]);
        let r = full_report(&i, None, &BoundOptions::default()).unwrap();
        assert_eq!(r.status, Status::Infeasible);
        assert!(r.bounds.is_empty());
    }

    #[test]
    fn verdicts_are_exact_at_equality() {
        assert_eq!(
            certify_le(&Surd::sqrt(13), &Surd::sqrt(52).scale(&q(1, 2)), 8),
            Verdict::Satisfied
        );
        assert_eq!(certify_le(&Surd::integer(2), &Surd::sqrt(3), 8), Verdict::Violated);
        assert_eq!(certify_le(&Surd::integer(0), &Surd::zero(), 8), Verdict::Satisfied);
    }

    #[test]
    fn proximity_at_every_vertex() {
        let i = inst(&[vec![2, 3]], &[5], &[1, 0]);
        let inv = compute_invariants(i.a()).unwrap();
        let p = proximity_check(&i, &inv, None, &BoundOptions::default()).unwrap();
        let d: Vec<Q> = p.vertices.iter().map(|w| w.distance_squared.clone()).collect();
        assert_eq!(d, vec![q(13, 4), q(13, 9)]);

        let i = inst(&[vec![1, 1, 1]], &[3], &[0, 0, 0]);
        let inv = compute_invariants(i.a()).unwrap();
        let p = proximity_check(&i, &inv, None, &BoundOptions::default()).unwrap();
        assert_eq!(p.vertices.len(), 3);
        assert_eq!(p.violations, 0);
        assert!(p.vertices.iter().all(|w| w.distance_squared.is_zero()));
    }
}
