//! Exhaustive lattice point search in bodies, and the improving-point
//! construction built on the bi-pyramid `L`.

use itertools::Itertools;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::bodies::SymmetricBody;
use super::{to_f64, GeomError};
use crate::exact::{kernel_lattice_basis, LatticeBasis};
use crate::integer::{IntError, IntegerSolution};
use crate::io::text;
use crate::polyhedra::{Instance, VertexSolution};

type Q = BigRational;

/// Coefficient box `|λ_j| <= R sqrt((G G^T)^{-1}_jj)` containing every
/// lattice point of norm at most `R`.
fn coefficient_box(lattice: &LatticeBasis, radius: f64) -> Result<Vec<i64>, GeomError> {
    let d = lattice.rank();
    let g = DMatrix::from_fn(d, lattice.ambient_dim, |i, j| to_f64(&lattice.vectors[i][j]));
    let inv = (&g * g.transpose())
        .try_inverse()
        .ok_or_else(|| GeomError::InvalidInput("lattice basis is dependent".into()))?;
    Ok((0..d)
        .map(|j| (radius * inv[(j, j)].max(0.0).sqrt() + 1e-9).floor() as i64)
        .collect())
}

/// Every nonzero lattice point in the body, in descending lexicographic order
/// of basis coefficients.
pub fn lattice_points_in(
    body: &SymmetricBody,
    lattice: &LatticeBasis,
    cap: u64,
) -> Result<Vec<Vec<BigInt>>, GeomError> {
    if lattice.rank() == 0 {
        return Ok(Vec::new());
    }
    let bounds = coefficient_box(lattice, body.circumradius())?;
    let count = bounds.iter().map(|&k| (2 * k + 1) as f64).product::<f64>();
    if count > cap as f64 {
        return Err(GeomError::BudgetExceeded(format!(
            "{count} coefficient vectors exceed {cap}"
        )));
    }
    Ok(bounds
        .iter()
        .map(|&k| (-k..=k).rev())
        .multi_cartesian_product()
        .filter(|coeffs| coeffs.iter().any(|&x| x != 0))
        .map(|coeffs| lattice.combine(&coeffs.into_iter().map(BigInt::from).collect::<Vec<_>>()))
        .filter(|p| body.contains(&p.iter().cloned().map(Q::from_integer).collect::<Vec<_>>()))
        .collect())
}

/// First nonzero lattice point of the body in descending lexicographic
/// coefficient order, or `None`.
pub fn minkowski_lattice_point(
    body: &SymmetricBody,
    lattice: &LatticeBasis,
    cap: u64,
) -> Result<Option<Vec<BigInt>>, GeomError> {
    if !body.is_symmetric() {
        return Err(GeomError::InvalidInput("body is not origin-symmetric".into()));
    }
    Ok(lattice_points_in(body, lattice, cap)?.into_iter().next())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `c.y = 0`: `z*` is the midpoint of `z* ± y`, both integer points of `P`.
    Midpoint,
    /// `c.y < 0`: `z* + y` is an integer point of `P` with smaller cost.
    Improvement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    #[serde(serialize_with = "text::integer_vec::serialize")]
    pub y: Vec<BigInt>,
    pub points: Vec<IntegerSolution>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImprovingOutcome {
    /// Nonzero points of `L ∩ Λ(A)`.
    pub lattice_points: usize,
    pub witness: Option<Witness>,
    /// Lattice points whose implied witness failed verification.
    pub unverified: usize,
}

/// Searches `L = conv(±(x* − z*), K) ∩ Λ(A)` and turns each nonzero point
/// into a vertex or optimality violation of `z*`, verified exactly.
pub fn improving_point_construction(
    inst: &Instance,
    x: &VertexSolution,
    z: &IntegerSolution,
    cap: u64,
) -> Result<ImprovingOutcome, GeomError> {
    if !inst.contains_int(&z.z) {
        return Err(IntError::NotInPolyhedron.into());
    }
    if !inst.contains(&x.x) {
        return Err(GeomError::InvalidInput("x* is not in P(A,b)".into()));
    }
    let body = SymmetricBody::bipyramid(&inst.a().to_rows(), inst.c(), &x.x, &z.z)?;
    let lattice = kernel_lattice_basis(inst.a())?;
    let mut points = lattice_points_in(&body, &lattice, cap)?;
    points.sort_by_cached_key(|y| (y.iter().map(|v| v * v).sum::<BigInt>(), y.clone()));

    let cost = |y: &[BigInt]| inst.objective_int(y);
    let shift = |y: &[BigInt], sign: i64| -> Vec<BigInt> { z.z.iter().zip(y).map(|(a, b)| a + b * sign).collect() };
    let mut witness = None;
    let mut unverified = 0;
    for y in &points {
        let cy = cost(y);
        let y = if cy.is_positive() {
            y.iter().map(|v| -v).collect()
        } else {
            y.clone()
        };
        let found = if cy.is_zero() {
            let (plus, minus) = (shift(&y, 1), shift(&y, -1));
            (inst.contains_int(&plus) && inst.contains_int(&minus)).then(|| Witness {
                kind: WitnessKind::Midpoint,
                points: vec![IntegerSolution::new(inst, plus), IntegerSolution::new(inst, minus)],
                y,
            })
        } else {
            let plus = shift(&y, 1);
            (inst.contains_int(&plus) && inst.objective_int(&plus) < z.value).then(|| Witness {
                kind: WitnessKind::Improvement,
                points: vec![IntegerSolution::new(inst, plus)],
                y,
            })
        };
        match found {
            Some(w) => {
                if witness.is_none() {
                    witness = Some(w);
                }
            }
            None => unverified += 1,
        }
    }
    Ok(ImprovingOutcome {
        lattice_points: points.len(),
        witness,
        unverified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int_vec, IntegerMatrix};
    use crate::integer::{ilp_solve, IntOptions};
    use crate::polyhedra::{lp_solve, LpOutcome};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn minkowski_examples() {
        let z2 = LatticeBasis::from_generators(2, &[int_vec(&[1, 0]), int_vec(&[0, 1])]).unwrap();
        let disc = SymmetricBody::OpenBall { radius_sq: q(36, 25) };
        assert_eq!(
            minkowski_lattice_point(&disc, &z2, 1000).unwrap(),
            Some(int_vec(&[1, 0]))
        );

        let line = kernel_lattice_basis(&IntegerMatrix::from_rows(&[vec![2, 3]]).unwrap()).unwrap();
        let segment = SymmetricBody::OpenBall { radius_sq: q(16, 1) };
        let p = minkowski_lattice_point(&segment, &line, 1000).unwrap().unwrap();
        assert!(p == int_vec(&[3, -2]) || p == int_vec(&[-3, 2]));

        let square = SymmetricBody::OpenBox {
            half_widths: vec![q(1, 2), q(1, 2)],
        };
        assert_eq!(minkowski_lattice_point(&square, &z2, 1000).unwrap(), None);

        let big = SymmetricBody::OpenBall {
            radius_sq: q(10_000, 1),
        };
        assert!(matches!(
            minkowski_lattice_point(&big, &z2, 1000),
            Err(GeomError::BudgetExceeded(_))
        ));
    }

    fn solved(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> (Instance, VertexSolution, IntegerSolution) {
        let inst = Instance::from_ints(a, b, c).unwrap();
        let LpOutcome::Optimal(x) = lp_solve(&inst).unwrap() else {
            panic!()
        };
        let z = ilp_solve(&inst, &IntOptions::default()).unwrap();
        (inst, x, z)
    }

    #[test]
    fn correct_solutions_have_no_witness() {
        for (a, b, c) in [
            (vec![vec![2, 3]], vec![5], vec![1, 0]),
            (vec![vec![3, 5, 7]], vec![11], vec![1, 0, 0]),
            (vec![vec![1, 1]], vec![3], vec![1, 0]),
            (vec![vec![2, 3, 4, 1], vec![1, 0, 2, 3]], vec![10, 6], vec![1, -1, 2, 0]),
        ] {
            let (inst, x, z) = solved(&a, &b, &c);
            let out = improving_point_construction(&inst, &x, &z, 1_000_000).unwrap();
            assert_eq!(out.witness, None, "{a:?}");
            assert_eq!(out.lattice_points, 0);
        }
    }

    #[test]
    fn wrong_points() {
        let (inst, x, _) = solved(&[vec![2, 3]], &[5], &[1, 0]);
        let bad = IntegerSolution::new(&inst, int_vec(&[4, -1]));
        assert!(matches!(
            improving_point_construction(&inst, &x, &bad, 1000),
            Err(GeomError::Int(IntError::NotInPolyhedron))
        ));

        let (inst, x, _) = solved(&[vec![1, 1]], &[3], &[1, 0]);
        assert_eq!(x.x, vec![q(0, 1), q(3, 1)]);
        let fake = IntegerSolution::new(&inst, int_vec(&[3, 0]));
        let out = improving_point_construction(&inst, &x, &fake, 1000).unwrap();
        let w = out.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::Improvement);
        assert_eq!(w.y, int_vec(&[-1, 1]));
        assert_eq!(w.points[0].z, int_vec(&[2, 1]));
        assert_eq!(out.unverified, 0);
    }

    #[test]
    fn non_vertex_gives_midpoint_witness() {
        // every point of x1 + x2 + x3 = 2 is optimal for c = 0; (1,0,1) is no vertex
        let (inst, _, _) = solved(&[vec![1, 1, 1]], &[2], &[0, 0, 0]);
        let z = IntegerSolution::new(&inst, int_vec(&[1, 0, 1]));
        let x = VertexSolution {
            x: vec![q(1, 1), q(0, 1), q(1, 1)],
            basis: vec![0],
            value: q(0, 1),
        };
        let out = improving_point_construction(&inst, &x, &z, 10_000).unwrap();
        let w = out.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::Midpoint);
        assert_eq!(out.unverified, 0);
    }
}
