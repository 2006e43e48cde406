//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Works on arbitrary equality systems `A x = b, x >= 0`: rows need not be
//! independent (redundant rows are dropped after phase one).

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

#[derive(Clone, Debug)]
pub struct LpProblem {
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Optimal {
        x: Vec<Q>,
        /// Sorted basic column indices (one per non-redundant row).
        basis: Vec<usize>,
        value: Q,
        /// Reduced costs at the final basis; all nonnegative.
        reduced_costs: Vec<Q>,
    },
    /// `A ray = 0`, `ray >= 0`, `c . ray < 0`.
    Unbounded { ray: Vec<Q> },
    /// `y^T A >= 0` and `y . b < 0`, scaled to a primitive integer vector.
    Infeasible { certificate: Vec<Q> },
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    reduced: Vec<Q>,
    value: Q,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let inv = self.rows[r][e].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        let f = self.reduced[e].clone();
        if !f.is_zero() {
            self.value += &f * &pivot_row[self.width];
            for (x, p) in self.reduced.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = e;
    }

    /// Runs Bland pivots over columns `< limit`. Returns the entering column
    /// of an unbounded direction if one is found.
    fn run(&mut self, limit: usize) -> Option<usize> {
        loop {
            let e = (0..limit).find(|&j| self.reduced[j].is_negative())?;
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return Some(e),
            }
        }
    }
}

fn primitive(v: Vec<Q>) -> Vec<Q> {
    let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

pub fn solve(p: &LpProblem) -> LpResult {
    let m = p.a.len();
    let n = p.c.len();
    debug_assert!(p.a.iter().all(|r| r.len() == n));
    debug_assert_eq!(p.b.len(), m);
    let width = n + m;

    let mut signs = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let neg = p.b[i].is_negative();
        signs.push(if neg { -Q::one() } else { Q::one() });
        let mut row: Vec<Q> = p.a[i].iter().map(|x| if neg { -x } else { x.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        row.push(if neg { -&p.b[i] } else { p.b[i].clone() });
        rows.push(row);
    }
    let mut reduced = vec![Q::zero(); width];
    let mut value = Q::zero();
    for row in &rows {
        for j in 0..n {
            reduced[j] -= &row[j];
        }
        value += &row[width];
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        reduced,
        value,
        width,
    };

    // Phase one is bounded below by zero, so `run` cannot report a ray.
    let ray = t.run(width);
    debug_assert!(ray.is_none());

    if t.value.is_positive() {
        // duals of phase one: pi_i = 1 - reduced cost of artificial i
        let y: Vec<Q> = (0..m).map(|i| (&t.reduced[n + i] - Q::one()) * &signs[i]).collect();
        return LpResult::Infeasible {
            certificate: primitive(y),
        };
    }

    // Drive artificial variables out of the basis; rows where that is
    // impossible are linear combinations of the others.
    let mut redundant = Vec::new();
    for i in 0..t.rows.len() {
        if t.basis[i] < n {
            continue;
        }
        match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
            Some(j) => t.pivot(i, j),
            None => redundant.push(i),
        }
    }
    for &i in redundant.iter().rev() {
        t.rows.remove(i);
        t.basis.remove(i);
    }

    // Phase two on the original columns.
    for row in t.rows.iter_mut() {
        let rhs = row[width].clone();
        row.truncate(n);
        row.push(rhs);
    }
    t.width = n;
    t.reduced = p.c.clone();
    t.value = Q::zero();
    for (i, row) in t.rows.iter().enumerate() {
        let cb = &p.c[t.basis[i]];
        if cb.is_zero() {
            continue;
        }
        for j in 0..n {
            t.reduced[j] -= cb * &row[j];
        }
        t.value += cb * &row[n];
    }

    if let Some(e) = t.run(n) {
        let mut ray = vec![Q::zero(); n];
        ray[e] = Q::one();
        for (i, row) in t.rows.iter().enumerate() {
            ray[t.basis[i]] = -row[e].clone();
        }
        return LpResult::Unbounded { ray: primitive(ray) };
    }

    let mut x = vec![Q::zero(); n];
    for (i, row) in t.rows.iter().enumerate() {
        x[t.basis[i]] = row[n].clone();
    }
    let mut basis = t.basis.clone();
    basis.sort_unstable();
    LpResult::Optimal {
        x,
        basis,
        value: t.value,
        reduced_costs: t.reduced,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn lp(a: &[&[i64]], b: &[i64], c: &[i64]) -> LpProblem {
        LpProblem {
            a: a.iter().map(|r| qs(r)).collect(),
            b: qs(b),
            c: qs(c),
        }
    }

    #[test]
    fn knapsack_relaxation() {
        match solve(&lp(&[&[2, 3]], &[5], &[1, 0])) {
            LpResult::Optimal { x, value, .. } => {
                assert_eq!(value, q(0));
                assert_eq!(x, vec![q(0), Q::new(5.into(), 3.into())]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_certificate() {
        match solve(&lp(&[&[1, 1]], &[-1], &[0, 0])) {
            LpResult::Infeasible { certificate } => assert_eq!(certificate, qs(&[1])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_ray() {
        match solve(&lp(&[&[1, -1]], &[0], &[-1, -1])) {
            LpResult::Unbounded { ray } => assert_eq!(ray, qs(&[1, 1])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_rows() {
        let p = lp(&[&[1, 1, 0], &[2, 2, 0], &[0, 0, 1]], &[2, 4, 1], &[1, 2, 0]);
        match solve(&p) {
            LpResult::Optimal { x, value, basis, .. } => {
                assert_eq!(value, q(2));
                assert_eq!(x, qs(&[2, 0, 1]));
                assert_eq!(basis.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's cycling example in equality form; Bland's rule must terminate.
        let a: Vec<Vec<Q>> = vec![
            vec![
                Q::new(1.into(), 4.into()),
                q(-60),
                Q::new((-1).into(), 25.into()),
                q(9),
                q(1),
                q(0),
                q(0),
            ],
            vec![
                Q::new(1.into(), 2.into()),
                q(-90),
                Q::new((-1).into(), 50.into()),
                q(3),
                q(0),
                q(1),
                q(0),
            ],
            vec![q(0), q(0), q(1), q(0), q(0), q(0), q(1)],
        ];
        let p = LpProblem {
            a,
            b: qs(&[0, 0, 1]),
            c: vec![
                Q::new((-3).into(), 4.into()),
                q(150),
                Q::new((-1).into(), 50.into()),
                q(6),
                q(0),
                q(0),
                q(0),
            ],
        };
        match solve(&p) {
            LpResult::Optimal { value, .. } => assert_eq!(value, Q::new((-1).into(), 20.into())),
            other => panic!("{other:?}"),
        }
    }
}
