use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{determinant, integer_kernel, normal_form, solve_rational, ExactError, IntegerMatrix};

/// An equivalent description of `{x_I : A_I x_I = b}` by a full-row-rank
/// integer system `Â x_I = b̂` whose maximal minors are coprime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Restriction {
    pub columns: Vec<usize>,
    pub a_hat: IntegerMatrix,
    pub b_hat: Vec<BigInt>,
    pub c_restricted: Vec<BigRational>,
    /// `det(Â Â^T) = Δ(Â)^2`.
    pub gram_det_hat: BigInt,
    /// `Δ(Â)^2 * gcd(A)^2 <= det(A A^T)`.
    pub within_delta_ratio: bool,
}

impl Restriction {
    pub fn rows(&self) -> usize {
        self.a_hat.rows()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }
}

/// Restricts `A x = b` to the coordinates in `columns` (sorted, distinct).
///
/// `Â` is built as a basis of the saturated row lattice, obtained as the
/// integer kernel of the transposed kernel basis of `A_I`. A saturated basis
/// always has coprime maximal minors, which is re-verified by Smith form.
pub fn restrict_instance(
    a: &IntegerMatrix,
    b: &[BigInt],
    c: &[BigRational],
    columns: &[usize],
) -> Result<Restriction, ExactError> {
    if b.len() != a.rows() || c.len() != a.cols() {
        return Err(ExactError::Shape("b or c length does not match A".into()));
    }
    if columns.windows(2).any(|w| w[0] >= w[1]) || columns.iter().any(|&j| j >= a.cols()) {
        return Err(ExactError::Shape(format!("invalid column set {columns:?}")));
    }
    let a_i = a.select_columns(columns);
    let n_hat = columns.len();
    let b_q: Vec<BigRational> = b.iter().cloned().map(BigRational::from_integer).collect();
    let x0 = solve_rational(&a_i, &b_q).ok_or(ExactError::InconsistentRestriction)?;

    let kernel = integer_kernel(&a_i);
    let kt = if kernel.rank() == 0 {
        IntegerMatrix::zeros(0, n_hat)
    } else {
        IntegerMatrix::from_rows(&kernel.vectors)?
    };
    let row_lattice = integer_kernel(&kt);
    let a_hat = if row_lattice.rank() == 0 {
        IntegerMatrix::zeros(0, n_hat)
    } else {
        IntegerMatrix::from_rows(&row_lattice.vectors)?
    };

    let b_hat_q = a_hat.mul_rational_vec(&x0);
    if b_hat_q.iter().any(|x| !x.is_integer()) {
        return Err(ExactError::NoIntegerPoints);
    }
    let b_hat: Vec<BigInt> = b_hat_q.into_iter().map(|x| x.to_integer()).collect();

    if a_hat.rows() > 0 && normal_form::smith_gcd(&a_hat) != BigInt::one() {
        return Err(ExactError::CrossCheck("restricted matrix is not saturated".into()));
    }
    let gram_det_hat = determinant(&a_hat.gram_rows());
    let gcd_a = normal_form::smith_gcd(a);
    let gram_a = determinant(&a.gram_rows());
    let within_delta_ratio = !gcd_a.is_zero() && &gram_det_hat * &gcd_a * &gcd_a <= gram_a;

    Ok(Restriction {
        columns: columns.to_vec(),
        a_hat,
        b_hat,
        c_restricted: columns.iter().map(|&j| c[j].clone()).collect(),
        gram_det_hat,
        within_delta_ratio,
    })
}
