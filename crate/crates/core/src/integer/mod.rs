//! Integer optimization over `P(A, b)` at desk scale.

mod branch_bound;
mod enumerate;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{max_minor, IntegerMatrix};
use crate::io::text;
use crate::polyhedra::simplex::{self, LpProblem, LpResult};
use crate::polyhedra::{coordinate_maxima, is_polytope, Instance, PolyError, VertexSolution};
use branch_bound::{branch_and_bound_near_vertex, integer_row, BbOutcome, IpModel};
use enumerate::SmallSystem;

type Q = BigRational;

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("integer program is infeasible")]
    Infeasible,
    #[error("integer program is unbounded")]
    Unbounded,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("P(A,b) contains no integer point")]
    NoIntegerPoint,
    #[error("P(A,b) is unbounded; an explicit enumeration box is required")]
    BoxRequired,
    #[error("data does not fit the enumeration word size")]
    Overflow,
    #[error("point is not an integer point of P(A,b)")]
    NotInPolyhedron,
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

#[derive(Clone, Debug)]
pub struct IntOptions {
    /// Node cap shared by enumeration and branch-and-bound.
    pub node_cap: u64,
    /// Compare the branch-and-bound optimum with exhaustive enumeration
    /// whenever the latter completes within `node_cap`.
    pub cross_check: bool,
}

impl Default for IntOptions {
    fn default() -> Self {
        Self {
            node_cap: DEFAULT_NODE_CAP,
            cross_check: true,
        }
    }
}

/// An integer point of `P(A, b)` with its objective value and support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntegerSolution {
    #[serde(serialize_with = "text::integer_vec::serialize")]
    pub z: Vec<BigInt>,
    #[serde(serialize_with = "text::rational::serialize")]
    pub value: Q,
    pub support: Vec<usize>,
    pub support_size: usize,
}

impl IntegerSolution {
    pub fn new(inst: &Instance, z: Vec<BigInt>) -> Self {
        let support: Vec<usize> = (0..z.len()).filter(|&j| !z[j].is_zero()).collect();
        Self {
            value: inst.objective_int(&z),
            support_size: support.len(),
            support,
            z,
        }
    }

    pub fn as_rational(&self) -> Vec<Q> {
        self.z.iter().cloned().map(Q::from_integer).collect()
    }
}

/// Per-coordinate upper bounds (lower bounds are zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBox {
    pub upper: Vec<i64>,
    /// Whether every point of `P(A, b)` lies in the box.
    pub covers_polyhedron: bool,
}

impl SearchBox {
    pub fn explicit(upper: Vec<i64>) -> Self {
        Self {
            upper,
            covers_polyhedron: false,
        }
    }
}

/// Coordinatewise maxima of `P(A, b)` rounded down. `Ok(None)` when `P` is empty.
pub fn default_box(inst: &Instance) -> Result<Option<SearchBox>, IntError> {
    match coordinate_maxima(inst) {
        Ok(Some(max)) => {
            let upper = max
                .iter()
                .map(|v| v.floor().to_integer().to_i64().ok_or(IntError::Overflow))
                .collect::<Result<_, _>>()?;
            Ok(Some(SearchBox {
                upper,
                covers_polyhedron: true,
            }))
        }
        Ok(None) => Err(IntError::BoxRequired),
        Err(PolyError::Infeasible { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn resolve_box(inst: &Instance, given: Option<&SearchBox>) -> Result<Option<SearchBox>, IntError> {
    match given {
        Some(b) => {
            if b.upper.len() != inst.n() {
                return Err(IntError::Poly(PolyError::InvalidInstance(format!(
                    "box has {} entries, expected {}",
                    b.upper.len(),
                    inst.n()
                ))));
            }
            let mut b = b.clone();
            // A user box covers P when it dominates the exact maxima.
            b.covers_polyhedron = match coordinate_maxima(inst) {
                Ok(Some(max)) => max
                    .iter()
                    .zip(&b.upper)
                    .all(|(m, &u)| m.floor().to_integer() <= BigInt::from(u)),
                Ok(None) => false,
                Err(_) => true,
            };
            Ok(Some(b))
        }
        None => default_box(inst),
    }
}

fn to_i64(x: &BigInt) -> Result<i64, IntError> {
    x.to_i64().ok_or(IntError::Overflow)
}

fn small_system(inst: &Instance, extra: Option<(&[Q], &Q)>) -> Result<SmallSystem, IntError> {
    let mut rows = Vec::with_capacity(inst.m() + 1);
    let mut rhs = Vec::with_capacity(inst.m() + 1);
    for i in 0..inst.m() {
        rows.push(inst.a().row(i).iter().map(to_i64).collect::<Result<Vec<_>, _>>()?);
        rhs.push(to_i64(&inst.b()[i])?);
    }
    if let Some((row, r)) = extra {
        let (ints, r) = integer_row(row, r);
        rows.push(ints.iter().map(to_i64).collect::<Result<Vec<_>, _>>()?);
        rhs.push(to_i64(&r)?);
    }
    Ok(SmallSystem { rows, rhs })
}

fn run_enumeration(
    inst: &Instance,
    extra: Option<(&[Q], &Q)>,
    bx: Option<&SearchBox>,
    opts: &IntOptions,
) -> Result<Vec<IntegerSolution>, IntError> {
    let Some(bx) = resolve_box(inst, bx)? else {
        return Ok(Vec::new());
    };
    let sys = small_system(inst, extra)?;
    let (pts, _) = enumerate::enumerate(&sys, &bx.upper, opts.node_cap)?;
    Ok(pts
        .into_iter()
        .map(|p| IntegerSolution::new(inst, p.into_iter().map(BigInt::from).collect()))
        .collect())
}

/// Every integer point of `P(A, b)` in the box, in ascending lexicographic order.
pub fn enumerate_integer_points(
    inst: &Instance,
    bx: Option<&SearchBox>,
    opts: &IntOptions,
) -> Result<Vec<IntegerSolution>, IntError> {
    run_enumeration(inst, None, bx, opts)
}

fn ip_model(inst: &Instance) -> IpModel {
    let p = inst.lp_problem();
    IpModel {
        rows: p.a,
        rhs: p.b,
        c: p.c,
    }
}

/// `n Δ`, where `Δ >= 1` bounds every subdeterminant of the integer-scaled
/// constraint rows. Adding unit rows for variable bounds does not raise `Δ`.
fn proximity_width(model: &IpModel) -> BigInt {
    let rows: Vec<Vec<BigInt>> = model
        .rows
        .iter()
        .zip(&model.rhs)
        .map(|(r, b)| integer_row(r, b).0)
        .collect();
    let n = model.c.len();
    let m = IntegerMatrix::from_rows(&rows).expect("rows share a length");
    let delta = (1..=rows.len().min(n))
        .map(|r| max_minor(&m, r))
        .fold(BigInt::one(), |acc, d| acc.max(d));
    delta * BigInt::from(n)
}

/// Proximity width when `P(A, b)` is unbounded; `None` for polytopes, where
/// plain branch-and-bound terminates.
fn width_if_unbounded(inst: &Instance, model: &IpModel) -> Option<BigInt> {
    (!is_polytope(inst)).then(|| proximity_width(model))
}

/// Optimum by branch-and-bound, without lexicographic normalization.
pub fn branch_and_bound_optimum(inst: &Instance, opts: &IntOptions) -> Result<IntegerSolution, IntError> {
    let model = ip_model(inst);
    let n = inst.n();
    let zeros = vec![BigInt::zero(); n];
    let width = width_if_unbounded(inst, &model);
    match branch_and_bound_near_vertex(
        &model,
        zeros.clone(),
        vec![None; n],
        None,
        width.as_ref(),
        opts.node_cap,
    )? {
        BbOutcome::Optimal { z, .. } => Ok(IntegerSolution::new(inst, z)),
        BbOutcome::Infeasible => Err(IntError::Infeasible),
        BbOutcome::RelaxationUnbounded => {
            let feas = IpModel {
                c: vec![Q::zero(); n],
                ..model
            };
            let width = width.map(|_| proximity_width(&feas));
            match branch_and_bound_near_vertex(&feas, zeros, vec![None; n], None, width.as_ref(), opts.node_cap)? {
                BbOutcome::Optimal { .. } => Err(IntError::Unbounded),
                _ => Err(IntError::Infeasible),
            }
        }
    }
}

/// Lexicographically smallest integer point of `P(A, b)` on the hyperplane
/// `c.x = value`, found by successive branch-and-bound solves. A lexicographic
/// extreme point of a finite set is a vertex of its convex hull.
fn lex_min_on_face(
    inst: &Instance,
    value: &Q,
    start: &IntegerSolution,
    opts: &IntOptions,
) -> Result<Vec<BigInt>, IntError> {
    let n = inst.n();
    let mut model = ip_model(inst);
    if inst.c().iter().any(|c| !c.is_zero()) {
        model.rows.push(inst.c().to_vec());
        model.rhs.push(value.clone());
    }
    let width = width_if_unbounded(inst, &model);
    let mut lower = vec![BigInt::zero(); n];
    let mut upper: Vec<Option<BigInt>> = vec![None; n];
    let mut current = start.z.clone();
    for j in 0..n {
        let mut c = vec![Q::zero(); n];
        c[j] = Q::one();
        let stage = IpModel { c, ..model.clone() };
        let incumbent = Some((current.clone(), Q::from_integer(current[j].clone())));
        match branch_and_bound_near_vertex(
            &stage,
            lower.clone(),
            upper.clone(),
            incumbent,
            width.as_ref(),
            opts.node_cap,
        )? {
            BbOutcome::Optimal { z, .. } => current = z,
            _ => unreachable!("the incumbent is feasible"),
        }
        lower[j] = current[j].clone();
        upper[j] = Some(current[j].clone());
    }
    Ok(current)
}

/// Optimal solution that is a vertex of the integer hull: the
/// lexicographically smallest optimal integer point.
pub fn ilp_solve(inst: &Instance, opts: &IntOptions) -> Result<IntegerSolution, IntError> {
    let bb = branch_and_bound_optimum(inst, opts)?;
    let z = lex_min_on_face(inst, &bb.value, &bb, opts)?;
    let sol = IntegerSolution::new(inst, z);
    debug_assert_eq!(sol.value, bb.value);
    if opts.cross_check && is_polytope(inst) {
        match enumerate_integer_points(inst, None, opts) {
            Ok(points) => {
                let best = points.iter().map(|p| &p.value).min();
                if best != Some(&sol.value) {
                    return Err(IntError::CrossCheck(format!(
                        "branch-and-bound value {} vs enumeration {:?}",
                        sol.value, best
                    )));
                }
            }
            Err(IntError::BudgetExceeded(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(sol)
}

/// Optimal integer points, i.e. integer points with `c.z = value`.
pub fn optimal_face_points(
    inst: &Instance,
    value: &Q,
    bx: Option<&SearchBox>,
    opts: &IntOptions,
) -> Result<Vec<IntegerSolution>, IntError> {
    if inst.c().iter().all(Zero::is_zero) {
        return enumerate_integer_points(inst, bx, opts);
    }
    run_enumeration(inst, Some((inst.c(), value)), bx, opts)
}

/// Whether `target` is the midpoint of two distinct points of `points`.
pub fn is_midpoint(target: &[BigInt], points: &HashSet<Vec<BigInt>>) -> bool {
    points.iter().any(|p| {
        if p.as_slice() == target {
            return false;
        }
        let mirror: Vec<BigInt> = target.iter().zip(p).map(|(t, p)| t * 2 - p).collect();
        points.contains(&mirror)
    })
}

/// Exact test whether `target` lies in the convex hull of `points`.
pub fn in_convex_hull(target: &[BigInt], points: &[&[BigInt]]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = target.len();
    let k = points.len();
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| points.iter().map(|p| Q::from_integer(p[i].clone())).collect())
        .collect();
    a.push(vec![Q::one(); k]);
    let mut b: Vec<Q> = target.iter().cloned().map(Q::from_integer).collect();
    b.push(Q::one());
    matches!(
        simplex::solve(&LpProblem {
            a,
            b,
            c: vec![Q::zero(); k]
        }),
        LpResult::Optimal { .. }
    )
}

/// Vertices of `conv(points)`: a point is a vertex iff it is not a midpoint
/// of two others and not in the hull of the remaining points.
pub fn hull_vertices_of(points: &[IntegerSolution]) -> Vec<IntegerSolution> {
    let set: HashSet<Vec<BigInt>> = points.iter().map(|p| p.z.clone()).collect();
    points
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            if is_midpoint(&p.z, &set) {
                return false;
            }
            let others: Vec<&[BigInt]> = points
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .map(|(_, q)| q.z.as_slice())
                .collect();
            !in_convex_hull(&p.z, &others)
        })
        .map(|(_, p)| p.clone())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HullDescription {
    pub vertices: Vec<IntegerSolution>,
    pub points_enumerated: usize,
    /// The box did not cover all of `P(A, b)`.
    pub truncated: bool,
}

pub fn hull_vertices(inst: &Instance, bx: Option<&SearchBox>, opts: &IntOptions) -> Result<HullDescription, IntError> {
    let resolved = resolve_box(inst, bx)?;
    let truncated = resolved.as_ref().is_some_and(|b| !b.covers_polyhedron);
    let points = enumerate_integer_points(inst, resolved.as_ref(), opts)?;
    Ok(HullDescription {
        vertices: hull_vertices_of(&points),
        points_enumerated: points.len(),
        truncated,
    })
}

/// Among optimal vertices of the integer hull, one with the fewest nonzero
/// coordinates (ties: lexicographically smallest).
pub fn min_support_optimal(
    inst: &Instance,
    bx: Option<&SearchBox>,
    opts: &IntOptions,
) -> Result<IntegerSolution, IntError> {
    let opt = ilp_solve(inst, opts)?;
    min_support_optimal_given(inst, &opt.value, bx, opts)
}

pub(crate) fn min_support_optimal_given(
    inst: &Instance,
    value: &Q,
    bx: Option<&SearchBox>,
    opts: &IntOptions,
) -> Result<IntegerSolution, IntError> {
    let face = optimal_face_points(inst, value, bx, opts)?;
    hull_vertices_of(&face)
        .into_iter()
        .min_by(|a, b| a.support_size.cmp(&b.support_size).then_with(|| a.z.cmp(&b.z)))
        .ok_or(IntError::NoIntegerPoint)
}

pub fn squared_distance(x: &[Q], z: &[BigInt]) -> Q {
    x.iter()
        .zip(z)
        .map(|(x, z)| {
            let d = x - Q::from_integer(z.clone());
            &d * &d
        })
        .sum()
}

/// Nearest point of `points` to `x` in the Euclidean norm (ties lexicographic).
pub fn nearest_among(points: &[IntegerSolution], x: &[Q]) -> Option<(IntegerSolution, Q)> {
    points
        .iter()
        .map(|p| (p, squared_distance(x, &p.z)))
        .min_by(|(p, d), (q, e)| d.cmp(e).then_with(|| p.z.cmp(&q.z)))
        .map(|(p, d)| (p.clone(), d))
}

/// Integer point of `P(A, b)` nearest to the vertex `x*`, with the exact
/// squared distance.
pub fn nearest_integer_point(
    inst: &Instance,
    vertex: &VertexSolution,
    bx: Option<&SearchBox>,
    opts: &IntOptions,
) -> Result<(IntegerSolution, Q), IntError> {
    let points = enumerate_integer_points(inst, bx, opts)?;
    nearest_among(&points, &vertex.x).ok_or(IntError::NoIntegerPoint)
}

/// Minimum over the enumerated points, used as the oracle for `ilp_solve`.
pub fn ilp_by_enumeration(inst: &Instance, opts: &IntOptions) -> Result<Q, IntError> {
    let points = enumerate_integer_points(inst, None, opts)?;
    points.into_iter().map(|p| p.value).min().ok_or(IntError::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int_vec, rat_vec};

    fn inst(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> Instance {
        Instance::from_ints(a, b, c).unwrap()
    }

    fn zs(points: &[IntegerSolution]) -> Vec<Vec<BigInt>> {
        points.iter().map(|p| p.z.clone()).collect()
    }

    fn opts() -> IntOptions {
        IntOptions::default()
    }

    #[test]
    fn unbounded_face_terminates() {
        // x1 = 0 is LP-feasible on the optimal face but has no integer point
        let i = inst(&[vec![1, 2, -2]], &[1], &[0, 0, 0]);
        let s = ilp_solve(
            &i,
            &IntOptions {
                node_cap: 10_000,
                ..opts()
            },
        )
        .unwrap();
        assert_eq!(s.z, int_vec(&[1, 0, 0]));

        let i = inst(&[vec![1, 2, -2]], &[1], &[0, 1, 1]);
        let s = ilp_solve(
            &i,
            &IntOptions {
                node_cap: 10_000,
                ..opts()
            },
        )
        .unwrap();
        assert_eq!(s.z, int_vec(&[1, 0, 0]));

        let i = inst(&[vec![2, 2, -2]], &[1], &[0, 0, 0]);
        assert!(matches!(ilp_solve(&i, &opts()), Err(IntError::Infeasible)));
    }

    #[test]
    fn enumeration_examples() {
        let i = inst(&[vec![2, 3]], &[5], &[0, 0]);
        assert_eq!(
            zs(&enumerate_integer_points(&i, None, &opts()).unwrap()),
            vec![int_vec(&[1, 1])]
        );

        let i = inst(&[vec![1, 1]], &[2], &[0, 0]);
        assert_eq!(
            zs(&enumerate_integer_points(&i, None, &opts()).unwrap()),
            vec![int_vec(&[0, 2]), int_vec(&[1, 1]), int_vec(&[2, 0])]
        );

        let i = inst(&[vec![1, 1]], &[-1], &[0, 0]);
        assert!(enumerate_integer_points(&i, None, &opts()).unwrap().is_empty());
    }

    #[test]
    fn unbounded_polyhedron_needs_box() {
        let i = inst(&[vec![1, -1]], &[0], &[1, 1]);
        assert_eq!(enumerate_integer_points(&i, None, &opts()), Err(IntError::BoxRequired));
        let bx = SearchBox::explicit(vec![3, 3]);
        let pts = enumerate_integer_points(&i, Some(&bx), &opts()).unwrap();
        assert_eq!(pts.len(), 4);
        let hull = hull_vertices(&i, Some(&bx), &opts()).unwrap();
        assert!(hull.truncated);
    }

    #[test]
    fn ilp_examples() {
        let i = inst(&[vec![2, 3]], &[5], &[1, 0]);
        let s = ilp_solve(&i, &opts()).unwrap();
        assert_eq!(s.z, int_vec(&[1, 1]));
        assert_eq!(s.value, rat_vec(&[1])[0]);

        let i = inst(&[vec![3, 5, 7]], &[11], &[1, 0, 0]);
        let s = ilp_solve(&i, &opts()).unwrap();
        assert_eq!(s.z, int_vec(&[2, 1, 0]));
        assert_eq!(s.value, rat_vec(&[2])[0]);

        let i = inst(&[vec![1, 1]], &[2], &[0, 0]);
        assert_eq!(ilp_solve(&i, &opts()).unwrap().z, int_vec(&[0, 2]));
    }

    #[test]
    fn ilp_errors() {
        let i = inst(&[vec![2, 2]], &[3], &[1, 0]);
        assert_eq!(ilp_solve(&i, &opts()), Err(IntError::Infeasible));
        let i = inst(&[vec![1, -1]], &[0], &[-1, -1]);
        assert_eq!(ilp_solve(&i, &opts()), Err(IntError::Unbounded));
        let i = inst(&[vec![1, 1, 1]], &[40], &[1, 2, 3]);
        let tiny = IntOptions {
            node_cap: 1,
            cross_check: false,
        };
        // the root relaxation is integral, so one node suffices
        assert!(ilp_solve(&i, &tiny).is_ok());
        let j = inst(&[vec![3, 5, 7]], &[11], &[0, 1, 1]);
        assert!(matches!(ilp_solve(&j, &tiny), Err(IntError::BudgetExceeded(_))));
    }

    #[test]
    fn min_support_examples() {
        let i = inst(&[vec![2, 3]], &[5], &[1, 0]);
        let s = min_support_optimal(&i, None, &opts()).unwrap();
        assert_eq!((s.z.clone(), s.support_size), (int_vec(&[1, 1]), 2));

        let i = inst(&[vec![1, 1]], &[2], &[1, 1]);
        let s = min_support_optimal(&i, None, &opts()).unwrap();
        assert_eq!((s.z.clone(), s.support_size), (int_vec(&[0, 2]), 1));

        let i = inst(&[vec![1, 1, 1]], &[0], &[4, -1, 2]);
        let s = min_support_optimal(&i, None, &opts()).unwrap();
        assert_eq!((s.z.clone(), s.support_size), (int_vec(&[0, 0, 0]), 0));
    }

    #[test]
    fn hull_examples() {
        let i = inst(&[vec![1, 1]], &[2], &[0, 0]);
        let h = hull_vertices(&i, None, &opts()).unwrap();
        assert_eq!(zs(&h.vertices), vec![int_vec(&[0, 2]), int_vec(&[2, 0])]);
        assert_eq!(h.points_enumerated, 3);
        assert!(!h.truncated);

        let i = inst(&[vec![2, 3]], &[5], &[0, 0]);
        assert_eq!(
            zs(&hull_vertices(&i, None, &opts()).unwrap().vertices),
            vec![int_vec(&[1, 1])]
        );

        let i = inst(&[vec![1, 1, 1]], &[1], &[0, 0, 0]);
        assert_eq!(
            zs(&hull_vertices(&i, None, &opts()).unwrap().vertices),
            vec![int_vec(&[0, 0, 1]), int_vec(&[0, 1, 0]), int_vec(&[1, 0, 0])]
        );
    }

    #[test]
    fn interior_point_that_is_no_midpoint() {
        // (1,1,.) is inside the lattice triangle (0,0),(2,1),(1,2) without being a midpoint
        let pts: Vec<IntegerSolution> = [[0, 0], [2, 1], [1, 2], [1, 1]]
            .iter()
            .map(|p| IntegerSolution {
                z: int_vec(p),
                value: Q::zero(),
                support: vec![],
                support_size: 0,
            })
            .collect();
        let set: HashSet<Vec<BigInt>> = pts.iter().map(|p| p.z.clone()).collect();
        assert!(!is_midpoint(&int_vec(&[1, 1]), &set));
        assert_eq!(hull_vertices_of(&pts).len(), 3);
    }

    #[test]
    fn nearest_examples() {
        let q = |n: i64, d: i64| Q::new(n.into(), d.into());
        let i = inst(&[vec![2, 3]], &[5], &[1, 0]);
        let v = VertexSolution {
            x: vec![q(5, 2), q(0, 1)],
            basis: vec![0],
            value: q(5, 2),
        };
        let (z, d) = nearest_integer_point(&i, &v, None, &opts()).unwrap();
        assert_eq!((z.z, d), (int_vec(&[1, 1]), q(13, 4)));

        let i = inst(&[vec![1, 1]], &[2], &[0, 0]);
        let v = VertexSolution {
            x: rat_vec(&[2, 0]),
            basis: vec![0],
            value: q(0, 1),
        };
        let (z, d) = nearest_integer_point(&i, &v, None, &opts()).unwrap();
        assert_eq!((z.z, d), (int_vec(&[2, 0]), q(0, 1)));

        let i = inst(&[vec![3, 5, 7]], &[11], &[1, 0, 0]);
        let v = VertexSolution {
            x: vec![q(11, 3), q(0, 1), q(0, 1)],
            basis: vec![0],
            value: q(11, 3),
        };
        let (z, d) = nearest_integer_point(&i, &v, None, &opts()).unwrap();
        assert_eq!((z.z, d), (int_vec(&[2, 1, 0]), q(34, 9)));

        let i = inst(&[vec![2, 2]], &[2], &[0, 0]);
        let v = VertexSolution {
            x: rat_vec(&[1, 0]),
            basis: vec![0],
            value: q(0, 1),
        };
        assert!(nearest_integer_point(&i, &v, None, &opts()).is_ok());
        let i = inst(&[vec![2, 2]], &[3], &[0, 0]);
        let v = VertexSolution {
            x: vec![q(3, 2), q(0, 1)],
            basis: vec![0],
            value: q(0, 1),
        };
        assert_eq!(
            nearest_integer_point(&i, &v, None, &opts()),
            Err(IntError::NoIntegerPoint)
        );
    }
}
