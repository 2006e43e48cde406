//! Depth-first branch-and-bound on exact LP relaxations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::IntError;
use crate::polyhedra::simplex::{self, LpProblem, LpResult};

type Q = BigRational;

/// `min c.x` subject to `rows x = rhs`, `lower <= x <= upper`, `x` integer.
#[derive(Clone, Debug)]
pub(crate) struct IpModel {
    pub rows: Vec<Vec<Q>>,
    pub rhs: Vec<Q>,
    pub c: Vec<Q>,
}

#[derive(Clone, Debug)]
struct Bounds {
    lower: Vec<BigInt>,
    upper: Vec<Option<BigInt>>,
}

pub(crate) enum BbOutcome {
    Optimal {
        z: Vec<BigInt>,
    },
    Infeasible,
    /// The root relaxation is unbounded.
    RelaxationUnbounded,
}

enum NodeLp {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Q>, value: Q },
}

fn solve_node(model: &IpModel, bounds: &Bounds) -> NodeLp {
    let n = model.c.len();
    if bounds
        .upper
        .iter()
        .zip(&bounds.lower)
        .any(|(u, l)| u.as_ref().is_some_and(|u| u < l))
    {
        return NodeLp::Infeasible;
    }
    let lower: Vec<Q> = bounds.lower.iter().cloned().map(Q::from_integer).collect();
    let capped: Vec<usize> = (0..n).filter(|&j| bounds.upper[j].is_some()).collect();
    let width = n + capped.len();

    // x = lower + y, y >= 0; upper bounds via slack columns.
    let mut a = Vec::with_capacity(model.rows.len() + capped.len());
    let mut b = Vec::with_capacity(a.capacity());
    for (row, r) in model.rows.iter().zip(&model.rhs) {
        let shift: Q = row.iter().zip(&lower).map(|(x, l)| x * l).sum();
        let mut full = row.clone();
        full.resize(width, Q::zero());
        a.push(full);
        b.push(r - shift);
    }
    for (k, &j) in capped.iter().enumerate() {
        let mut full = vec![Q::zero(); width];
        full[j] = Q::from_integer(1.into());
        full[n + k] = Q::from_integer(1.into());
        a.push(full);
        let u = bounds.upper[j].clone().expect("capped");
        b.push(Q::from_integer(u - &bounds.lower[j]));
    }
    let mut c = model.c.clone();
    c.resize(width, Q::zero());
    let offset: Q = model.c.iter().zip(&lower).map(|(c, l)| c * l).sum();

    match simplex::solve(&LpProblem { a, b, c }) {
        LpResult::Infeasible { .. } => NodeLp::Infeasible,
        LpResult::Unbounded { .. } => NodeLp::Unbounded,
        LpResult::Optimal { x, value, .. } => NodeLp::Optimal {
            x: x.into_iter().take(n).zip(&lower).map(|(y, l)| y + l).collect(),
            value: value + offset,
        },
    }
}

/// Fractional coordinate with the largest denominator, smallest index on ties.
fn branching_variable(x: &[Q]) -> Option<usize> {
    let mut best: Option<(usize, &BigInt)> = None;
    for (j, v) in x.iter().enumerate() {
        if v.is_integer() {
            continue;
        }
        if best.is_none_or(|(_, d)| v.denom() > d) {
            best = Some((j, v.denom()));
        }
    }
    best.map(|(j, _)| j)
}

pub(crate) fn branch_and_bound(
    model: &IpModel,
    lower: Vec<BigInt>,
    upper: Vec<Option<BigInt>>,
    incumbent: Option<(Vec<BigInt>, Q)>,
    node_cap: u64,
) -> Result<BbOutcome, IntError> {
    let mut best = incumbent;
    let mut stack = vec![Bounds { lower, upper }];
    let mut nodes = 0u64;
    let mut root = true;
    while let Some(bounds) = stack.pop() {
        nodes += 1;
        if nodes > node_cap {
            return Err(IntError::BudgetExceeded(format!(
                "branch-and-bound exceeded {node_cap} nodes"
            )));
        }
        let lp = solve_node(model, &bounds);
        let (x, value) = match lp {
            NodeLp::Infeasible => {
                root = false;
                continue;
            }
            NodeLp::Unbounded if root => return Ok(BbOutcome::RelaxationUnbounded),
            NodeLp::Unbounded => unreachable!("children of a bounded relaxation are bounded"),
            NodeLp::Optimal { x, value } => (x, value),
        };
        root = false;
        if best.as_ref().is_some_and(|(_, v)| value >= *v) {
            continue;
        }
        match branching_variable(&x) {
            None => {
                let z = x.iter().map(|v| v.to_integer()).collect();
                best = Some((z, value));
            }
            Some(j) => {
                let floor = x[j].floor().to_integer();
                let mut up = bounds.clone();
                up.lower[j] = &floor + 1;
                let mut down = bounds;
                down.upper[j] = Some(match down.upper[j].take() {
                    Some(u) => u.min(floor),
                    None => floor,
                });
                // down branch is explored first
                stack.push(up);
                stack.push(down);
            }
        }
    }
    Ok(match best {
        Some((z, _)) => BbOutcome::Optimal { z },
        None => BbOutcome::Infeasible,
    })
}

/// Branch-and-bound restricted to `‖x − x*‖∞ <= width` around the optimal
/// root vertex `x*`. With `width = n Δ` the box keeps an optimal integer
/// point, which makes the search finite on unbounded polyhedra.
pub(crate) fn branch_and_bound_near_vertex(
    model: &IpModel,
    mut lower: Vec<BigInt>,
    mut upper: Vec<Option<BigInt>>,
    incumbent: Option<(Vec<BigInt>, Q)>,
    width: Option<&BigInt>,
    node_cap: u64,
) -> Result<BbOutcome, IntError> {
    let Some(width) = width else {
        return branch_and_bound(model, lower, upper, incumbent, node_cap);
    };
    let root = Bounds {
        lower: lower.clone(),
        upper: upper.clone(),
    };
    match solve_node(model, &root) {
        NodeLp::Infeasible => return Ok(incumbent.map_or(BbOutcome::Infeasible, |(z, _)| BbOutcome::Optimal { z })),
        NodeLp::Unbounded => return Ok(BbOutcome::RelaxationUnbounded),
        NodeLp::Optimal { x, .. } => {
            let w = Q::from_integer(width.clone());
            for (j, v) in x.iter().enumerate() {
                let lo = (v - &w).ceil().to_integer();
                let hi = (v + &w).floor().to_integer();
                if lo > lower[j] {
                    lower[j] = lo;
                }
                upper[j] = Some(match upper[j].take() {
                    Some(u) => u.min(hi),
                    None => hi,
                });
            }
        }
    }
    branch_and_bound(model, lower, upper, incumbent, node_cap)
}

/// Rational row scaled to a primitive integer row (sign preserved).
pub(crate) fn integer_row(row: &[Q], rhs: &Q) -> (Vec<BigInt>, BigInt) {
    let lcm = row
        .iter()
        .chain(std::iter::once(rhs))
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let scale = Q::from_integer(lcm);
    let ints: Vec<BigInt> = row.iter().map(|x| (x * &scale).to_integer()).collect();
    let r = (rhs * &scale).to_integer();
    let g = ints
        .iter()
        .chain(std::iter::once(&r))
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        return (ints, r);
    }
    (ints.into_iter().map(|x| x / &g).collect(), r / g)
}
