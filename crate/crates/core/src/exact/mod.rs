//! Exact integer and rational linear algebra.

mod invariants;
mod lattice;
mod matrix;
pub mod normal_form;
mod restrict;

#[allow(unused_imports)]
pub(crate) use invariants::binomial;
pub use invariants::{
    compute_invariants, compute_invariants_capped, max_minor, maximal_minor_gcd, MatrixInvariants, DEFAULT_MINOR_CAP,
};
pub use lattice::{integer_kernel, kernel_lattice_basis, LatticeBasis};
pub use matrix::{determinant, rank, IntegerMatrix};
pub use restrict::{restrict_instance, Restriction};

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("restricted system is inconsistent")]
    InconsistentRestriction,
    #[error("restricted system has no integer points")]
    NoIntegerPoints,
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

/// Some rational solution of `A x = rhs` (free variables set to zero), or
/// `None` when the system is inconsistent.
pub fn solve_rational(a: &IntegerMatrix, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(rhs.len(), m);
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            a.row(i)
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .chain(std::iter::once(rhs[i].clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !t[i][c].is_zero()) else {
            continue;
        };
        t.swap(r, p);
        let inv = t[r][c].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i == r || t[i][c].is_zero() {
                continue;
            }
            let f = t[i][c].clone();
            for j in c..=n {
                let d = &f * &t[r][j];
                t[i][j] -= d;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if t[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = t[i][n].clone();
    }
    Some(x)
}

/// Integer vector helper used across modules and tests.
pub fn int_vec(v: &[i64]) -> Vec<num_bigint::BigInt> {
    v.iter().map(|&x| num_bigint::BigInt::from(x)).collect()
}

/// Rational vector helper used across modules and tests.
pub fn rat_vec(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}
