use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{determinant, normal_form, rank, ExactError, IntegerMatrix};

/// Default ceiling on the number of minors enumerated for `Δ_r`.
pub const DEFAULT_MINOR_CAP: u64 = 1_000_000;

/// Subdeterminant data of a full-row-rank integer matrix.
///
/// `Δ(A)` is irrational in general, so it is carried as the integer
/// `det(A A^T)`; `Δ(A) = sqrt(gram_det)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixInvariants {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// `det(A A^T)`.
    pub gram_det: BigInt,
    /// `Δ_r(A)` for `r = 1..=rows`; `None` where enumeration exceeded the cap.
    pub delta_r: Vec<Option<BigInt>>,
    /// gcd of all maximal minors.
    pub gcd: BigInt,
    /// Whether the Smith-form gcd was cross-checked by exhaustive enumeration.
    pub gcd_cross_checked: bool,
}

impl MatrixInvariants {
    pub fn delta_1(&self) -> &BigInt {
        self.delta_r[0].as_ref().expect("Δ_1 is always computed")
    }

    pub fn delta_m(&self) -> &BigInt {
        self.delta_r[self.rows - 1].as_ref().expect("Δ_m is always computed")
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Maximum absolute `r x r` minor, by exhaustive enumeration.
pub fn max_minor(a: &IntegerMatrix, r: usize) -> BigInt {
    let row_sets: Vec<Vec<usize>> = (0..a.rows()).combinations(r).collect();
    let col_sets: Vec<Vec<usize>> = (0..a.cols()).combinations(r).collect();
    row_sets
        .par_iter()
        .flat_map_iter(|rs| col_sets.iter().map(move |cs| determinant(&a.submatrix(rs, cs)).abs()))
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// gcd of all maximal (`rows x rows`) minors, by exhaustive enumeration.
pub fn maximal_minor_gcd(a: &IntegerMatrix) -> BigInt {
    let rows: Vec<usize> = (0..a.rows()).collect();
    let col_sets: Vec<Vec<usize>> = (0..a.cols()).combinations(a.rows()).collect();
    col_sets
        .par_iter()
        .map(|cs| determinant(&a.submatrix(&rows, cs)))
        .reduce(BigInt::zero, |x, y| x.gcd(&y))
}

pub fn compute_invariants(a: &IntegerMatrix) -> Result<MatrixInvariants, ExactError> {
    compute_invariants_capped(a, DEFAULT_MINOR_CAP)
}

pub fn compute_invariants_capped(a: &IntegerMatrix, minor_cap: u64) -> Result<MatrixInvariants, ExactError> {
    let (m, n) = (a.rows(), a.cols());
    let rk = rank(a);
    if m == 0 || rk < m {
        return Err(ExactError::RankDeficient { rank: rk, rows: m });
    }
    let counts: Vec<u64> = (1..=m)
        .map(|r| binomial(m as u64, r as u64).saturating_mul(binomial(n as u64, r as u64)))
        .collect();
    let total = counts.iter().fold(0u64, |acc, c| acc.saturating_add(*c));
    let enumerate_all = total <= minor_cap;

    let delta_r = (1..=m)
        .map(|r| {
            if r == 1 {
                Some(a.max_abs_entry())
            } else if r == m || enumerate_all {
                Some(max_minor(a, r))
            } else {
                None
            }
        })
        .collect();

    let gcd = normal_form::smith_gcd(a);
    let gcd_cross_checked = counts[m - 1] <= minor_cap;
    if gcd_cross_checked {
        let exhaustive = maximal_minor_gcd(a);
        if exhaustive != gcd {
            return Err(ExactError::CrossCheck(format!(
                "Smith gcd {gcd} differs from minor gcd {exhaustive}"
            )));
        }
    }

    Ok(MatrixInvariants {
        rows: m,
        cols: n,
        rank: rk,
        gram_det: determinant(&a.gram_rows()),
        delta_r,
        gcd,
        gcd_cross_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(rows: &[Vec<i64>]) -> MatrixInvariants {
        compute_invariants(&IntegerMatrix::from_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn worked_examples() {
        let i = inv(&[vec![2, 3]]);
        assert_eq!(i.delta_1(), &BigInt::from(3));
        assert_eq!(i.gcd, BigInt::from(1));
        assert_eq!(i.gram_det, BigInt::from(13));

        let i = inv(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(i.delta_r, vec![Some(BigInt::from(1)), Some(BigInt::from(1))]);
        assert_eq!(i.gcd, BigInt::from(1));
        assert_eq!(i.gram_det, BigInt::from(1));

        let i = inv(&[vec![2, 4, 6]]);
        assert_eq!(i.delta_1(), &BigInt::from(6));
        assert_eq!(i.gcd, BigInt::from(2));
        assert_eq!(i.gram_det, BigInt::from(56));
    }

    #[test]
    fn rank_deficient_rejected() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(matches!(
            compute_invariants(&a),
            Err(ExactError::RankDeficient { rank: 1, rows: 2 })
        ));
    }

    #[test]
    fn cap_marks_intermediate_deltas_absent() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2, 3, 4], vec![0, 1, 5, 2], vec![3, 1, 1, 1]]).unwrap();
        let full = compute_invariants(&a).unwrap();
        let capped = compute_invariants_capped(&a, 5).unwrap();
        assert!(full.delta_r.iter().all(Option::is_some));
        assert!(capped.delta_r[1].is_none());
        assert_eq!(capped.delta_r[0], full.delta_r[0]);
        assert_eq!(capped.delta_r[2], full.delta_r[2]);
        assert_eq!(capped.gram_det, full.gram_det);
        assert!(capped.gcd_cross_checked);
        assert!(!compute_invariants_capped(&a, 3).unwrap().gcd_cross_checked);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(30, 6), 593_775);
    }
}
