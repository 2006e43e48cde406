//! The standard-form polyhedron `P(A, b) = {x >= 0 : A x = b}`.

pub mod simplex;

use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{determinant, rank, solve_rational, ExactError, IntegerMatrix};
use crate::io::text;
use simplex::{LpProblem, LpResult};

type Q = BigRational;

/// Ceiling on the number of candidate bases examined by vertex enumeration.
pub const DEFAULT_BASIS_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("P(A,b) is empty")]
    Infeasible { certificate: Vec<Q> },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// Problem datum `(A, b, c)` with `A` of full row rank and fewer rows than columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    a: IntegerMatrix,
    b: Vec<BigInt>,
    c: Vec<Q>,
}

impl Instance {
    pub fn new(a: IntegerMatrix, b: Vec<BigInt>, c: Vec<Q>) -> Result<Self, PolyError> {
        let (m, n) = (a.rows(), a.cols());
        if b.len() != m {
            return Err(PolyError::InvalidInstance(format!(
                "b has length {}, A has {m} rows",
                b.len()
            )));
        }
        if c.len() != n {
            return Err(PolyError::InvalidInstance(format!(
                "c has length {}, A has {n} columns",
                c.len()
            )));
        }
        if m == 0 || m >= n {
            return Err(PolyError::InvalidInstance(format!("need 0 < m < n, got m={m}, n={n}")));
        }
        let r = rank(&a);
        if r < m {
            return Err(ExactError::RankDeficient { rank: r, rows: m }.into());
        }
        Ok(Self { a, b, c })
    }

    /// Convenience constructor from small integer data.
    pub fn from_ints(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> Result<Self, PolyError> {
        Self::new(
            IntegerMatrix::from_rows(a)?,
            crate::exact::int_vec(b),
            crate::exact::rat_vec(c),
        )
    }

    pub fn a(&self) -> &IntegerMatrix {
        &self.a
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    pub fn c(&self) -> &[Q] {
        &self.c
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn with_cost(&self, c: Vec<Q>) -> Result<Self, PolyError> {
        Self::new(self.a.clone(), self.b.clone(), c)
    }

    pub fn with_rhs(&self, b: Vec<BigInt>) -> Result<Self, PolyError> {
        Self::new(self.a.clone(), b, self.c.clone())
    }

    pub fn objective(&self, x: &[Q]) -> Q {
        self.c.iter().zip(x).map(|(c, x)| c * x).sum()
    }

    pub fn objective_int(&self, z: &[BigInt]) -> Q {
        self.c.iter().zip(z).map(|(c, z)| c * Q::from_integer(z.clone())).sum()
    }

    /// `A x = b` and `x >= 0`, exactly.
    pub fn contains(&self, x: &[Q]) -> bool {
        x.len() == self.n()
            && x.iter().all(|v| !v.is_negative())
            && self
                .a
                .mul_rational_vec(x)
                .iter()
                .zip(&self.b)
                .all(|(l, r)| *l == Q::from_integer(r.clone()))
    }

    pub fn contains_int(&self, z: &[BigInt]) -> bool {
        z.len() == self.n() && z.iter().all(|v| !v.is_negative()) && self.a.mul_vec(z) == self.b
    }

    pub(crate) fn lp_problem(&self) -> LpProblem {
        LpProblem {
            a: (0..self.m())
                .map(|i| self.a.row(i).iter().cloned().map(Q::from_integer).collect())
                .collect(),
            b: self.b.iter().cloned().map(Q::from_integer).collect(),
            c: self.c.clone(),
        }
    }
}

/// A vertex of `P(A, b)` with a defining basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSolution {
    #[serde(serialize_with = "text::rational_vec::serialize")]
    pub x: Vec<Q>,
    /// Sorted column indices, `|basis| = m`.
    pub basis: Vec<usize>,
    #[serde(serialize_with = "text::rational::serialize")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    Feasible {
        witness: Vec<Q>,
    },
    /// `y^T A >= 0`, `y . b < 0`.
    Infeasible {
        certificate: Vec<Q>,
    },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(VertexSolution),
    /// `A ray = 0`, `ray >= 0`, `c . ray < 0`.
    Unbounded {
        ray: Vec<Q>,
    },
}

pub fn is_feasible(inst: &Instance) -> Feasibility {
    let mut p = inst.lp_problem();
    p.c = vec![Q::zero(); inst.n()];
    match simplex::solve(&p) {
        LpResult::Optimal { x, .. } => Feasibility::Feasible { witness: x },
        LpResult::Infeasible { certificate } => Feasibility::Infeasible { certificate },
        LpResult::Unbounded { .. } => unreachable!("zero objective is bounded"),
    }
}

/// Checks `y^T A >= 0` and `y . b < 0` exactly.
pub fn verify_farkas(inst: &Instance, y: &[Q]) -> bool {
    if y.len() != inst.m() {
        return false;
    }
    let ya_nonneg = (0..inst.n()).all(|j| {
        let s: Q = (0..inst.m())
            .map(|i| &y[i] * Q::from_integer(inst.a()[(i, j)].clone()))
            .sum();
        !s.is_negative()
    });
    let yb: Q = y
        .iter()
        .zip(inst.b())
        .map(|(y, b)| y * Q::from_integer(b.clone()))
        .sum();
    ya_nonneg && yb.is_negative()
}

/// The basic solution `x_B = A_B^{-1} b`, `x_N = 0`, if `A_B` is nonsingular.
pub fn basic_solution(inst: &Instance, basis: &[usize]) -> Option<Vec<Q>> {
    let ab = inst.a().select_columns(basis);
    if determinant(&ab).is_zero() {
        return None;
    }
    let rhs: Vec<Q> = inst.b().iter().cloned().map(Q::from_integer).collect();
    let xb = solve_rational(&ab, &rhs)?;
    let mut x = vec![Q::zero(); inst.n()];
    for (&j, v) in basis.iter().zip(xb) {
        x[j] = v;
    }
    Some(x)
}

fn is_basis(a: &IntegerMatrix, cols: &[usize]) -> bool {
    !determinant(&a.select_columns(cols)).is_zero()
}

/// Lexicographically smallest basis containing the support of a vertex.
fn smallest_basis_for(inst: &Instance, x: &[Q]) -> Vec<usize> {
    let mut chosen: Vec<usize> = (0..inst.n()).filter(|&j| !x[j].is_zero()).collect();
    for j in 0..inst.n() {
        if chosen.len() == inst.m() {
            break;
        }
        if chosen.contains(&j) {
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(j);
        if rank(&inst.a().select_columns(&trial)) == trial.len() {
            chosen = trial;
        }
    }
    chosen.sort_unstable();
    chosen
}

const TIE_BREAK_SEARCH_CAP: usize = 200_000;

/// Exact LP optimum. Among optimal vertices the one with the
/// lexicographically smallest basis is reported.
pub fn lp_solve(inst: &Instance) -> Result<LpOutcome, PolyError> {
    match simplex::solve(&inst.lp_problem()) {
        LpResult::Infeasible { certificate } => Err(PolyError::Infeasible { certificate }),
        LpResult::Unbounded { ray } => Ok(LpOutcome::Unbounded { ray }),
        LpResult::Optimal { x, value, .. } => {
            let hit = (0..inst.n())
                .combinations(inst.m())
                .take(TIE_BREAK_SEARCH_CAP)
                .find_map(|basis| {
                    let xb = basic_solution(inst, &basis)?;
                    (xb.iter().all(|v| !v.is_negative()) && inst.objective(&xb) == value).then_some((xb, basis))
                });
            let (x, basis) = match hit {
                Some(found) => found,
                None => {
                    let basis = smallest_basis_for(inst, &x);
                    (x, basis)
                }
            };
            Ok(LpOutcome::Optimal(VertexSolution { x, basis, value }))
        }
    }
}

/// All vertices by exhaustive basis enumeration, each reported once with
/// its lexicographically smallest basis, in order of that basis.
pub fn enumerate_vertices(inst: &Instance) -> Result<Vec<VertexSolution>, PolyError> {
    enumerate_vertices_capped(inst, DEFAULT_BASIS_CAP)
}

pub fn enumerate_vertices_capped(inst: &Instance, cap: u64) -> Result<Vec<VertexSolution>, PolyError> {
    let candidates = crate::exact::binomial(inst.n() as u64, inst.m() as u64);
    if candidates > cap {
        return Err(PolyError::BudgetExceeded(format!(
            "{candidates} candidate bases exceed the cap of {cap}"
        )));
    }
    if let Feasibility::Infeasible { certificate } = is_feasible(inst) {
        return Err(PolyError::Infeasible { certificate });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for basis in (0..inst.n()).combinations(inst.m()) {
        if !is_basis(inst.a(), &basis) {
            continue;
        }
        let Some(x) = basic_solution(inst, &basis) else {
            continue;
        };
        if x.iter().any(Signed::is_negative) || !seen.insert(x.clone()) {
            continue;
        }
        let value = inst.objective(&x);
        out.push(VertexSolution { x, basis, value });
    }
    Ok(out)
}

/// Whether `min c.x` over `P(A, b)` is bounded below, decided on the
/// recession cone `{x >= 0 : A x = 0}`.
pub fn is_ip_bounded(inst: &Instance) -> bool {
    let cone = inst.with_rhs(vec![BigInt::zero(); inst.m()]).expect("same A, zero rhs");
    matches!(lp_solve(&cone), Ok(LpOutcome::Optimal(_)))
}

/// Whether `P(A, b)` itself is bounded (its recession cone is `{0}`).
pub fn is_polytope(inst: &Instance) -> bool {
    let cone = Instance::new(
        inst.a().clone(),
        vec![BigInt::zero(); inst.m()],
        vec![-Q::one(); inst.n()],
    )
    .expect("same A");
    matches!(lp_solve(&cone), Ok(LpOutcome::Optimal(_)))
}

/// `max x_j` over `P(A, b)` for every coordinate; `None` when `P` is unbounded.
pub fn coordinate_maxima(inst: &Instance) -> Result<Option<Vec<Q>>, PolyError> {
    let mut out = Vec::with_capacity(inst.n());
    for j in 0..inst.n() {
        let mut c = vec![Q::zero(); inst.n()];
        c[j] = -Q::one();
        let probe = inst.with_cost(c)?;
        match simplex::solve(&probe.lp_problem()) {
            LpResult::Optimal { value, .. } => out.push(-value),
            LpResult::Unbounded { .. } => return Ok(None),
            LpResult::Infeasible { certificate } => return Err(PolyError::Infeasible { certificate }),
        }
    }
    Ok(Some(out))
}
