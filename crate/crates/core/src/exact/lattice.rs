use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{determinant, normal_form, ExactError, IntegerMatrix};

/// Integer basis of the kernel lattice `ker(A) ∩ Z^n`.
///
/// Basis vectors are kept in row Hermite normal form, so two bases of the
/// same lattice compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl LatticeBasis {
    /// Lattice generated by the given (linearly independent) integer vectors.
    pub fn from_generators(ambient_dim: usize, generators: &[Vec<BigInt>]) -> Result<Self, ExactError> {
        if generators.is_empty() {
            return Ok(Self {
                ambient_dim,
                vectors: Vec::new(),
                pivots: Vec::new(),
            });
        }
        let g = IntegerMatrix::from_rows(generators)?;
        if g.cols() != ambient_dim {
            return Err(ExactError::Shape(format!(
                "generators have length {}, expected {ambient_dim}",
                g.cols()
            )));
        }
        let (h, pivots) = normal_form::hermite_rows(&g);
        Ok(Self {
            ambient_dim,
            vectors: h.to_rows(),
            pivots,
        })
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Basis vectors as the columns of an `ambient_dim x rank` matrix.
    pub fn as_columns(&self) -> IntegerMatrix {
        if self.vectors.is_empty() {
            return IntegerMatrix::zeros(self.ambient_dim, 0);
        }
        IntegerMatrix::from_rows(&self.vectors)
            .expect("basis rows have equal length")
            .transpose()
    }

    /// Gram determinant `det(V^T V)`, the squared lattice determinant.
    pub fn gram_det(&self) -> BigInt {
        if self.vectors.is_empty() {
            return BigInt::from(1);
        }
        let rows = IntegerMatrix::from_rows(&self.vectors).expect("basis rows have equal length");
        determinant(&rows.gram_rows())
    }

    /// Integer coordinates of `v` in this basis, or `None` when `v` is not a
    /// lattice vector.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.vectors.len());
        for (row, &c) in self.vectors.iter().zip(&self.pivots) {
            let (q, r) = rest[c].div_rem(&row[c]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
            coeffs.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn combine(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient_dim];
        for (row, k) in self.vectors.iter().zip(coeffs) {
            for (o, x) in out.iter_mut().zip(row) {
                *o += k * x;
            }
        }
        out
    }
}

/// Basis of `ker(A) ∩ Z^n` for a matrix of any rank.
pub fn integer_kernel(a: &IntegerMatrix) -> LatticeBasis {
    let n = a.cols();
    let ce = normal_form::column_echelon(a);
    let gens: Vec<Vec<BigInt>> = (ce.rank..n).map(|j| ce.transform.column(j)).collect();
    LatticeBasis::from_generators(n, &gens).expect("kernel generators are well formed")
}

/// Kernel lattice of a full-row-rank matrix with fewer rows than columns.
pub fn kernel_lattice_basis(a: &IntegerMatrix) -> Result<LatticeBasis, ExactError> {
    let ce = normal_form::column_echelon(a);
    if ce.rank < a.rows() {
        return Err(ExactError::RankDeficient {
            rank: ce.rank,
            rows: a.rows(),
        });
    }
    if a.rows() >= a.cols() {
        return Err(ExactError::Shape(format!(
            "kernel lattice needs rows < cols, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let gens: Vec<Vec<BigInt>> = (ce.rank..a.cols()).map(|j| ce.transform.column(j)).collect();
    LatticeBasis::from_generators(a.cols(), &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::compute_invariants;

    fn mat(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_lattice_basis(&mat(&[vec![2, 3]])).unwrap();
        assert_eq!(k.vectors, vec![ints(&[3, -2])]);
        assert_eq!(k.gram_det(), BigInt::from(13));

        let k = kernel_lattice_basis(&mat(&[vec![1, 1]])).unwrap();
        assert_eq!(k.vectors, vec![ints(&[1, -1])]);
        assert_eq!(k.gram_det(), BigInt::from(2));

        let k = kernel_lattice_basis(&mat(&[vec![1, 1, 1]])).unwrap();
        assert_eq!(k.rank(), 2);
        assert_eq!(k.gram_det(), BigInt::from(3));
    }

    #[test]
    fn determinant_identity_with_nontrivial_gcd() {
        let a = mat(&[vec![2, 4, 6]]);
        let k = kernel_lattice_basis(&a).unwrap();
        let inv = compute_invariants(&a).unwrap();
        assert_eq!(k.gram_det() * &inv.gcd * &inv.gcd, inv.gram_det);
    }

    #[test]
    fn membership() {
        let k = kernel_lattice_basis(&mat(&[vec![1, 1, 1]])).unwrap();
        assert!(k.contains(&ints(&[2, -5, 3])));
        assert!(!k.contains(&ints(&[1, 0, 0])));
        let coords = k.coordinates(&ints(&[2, -5, 3])).unwrap();
        assert_eq!(k.combine(&coords), ints(&[2, -5, 3]));
        // rationally in the span but not a lattice vector
        let k2 = LatticeBasis::from_generators(2, &[ints(&[2, 2])]).unwrap();
        assert!(!k2.contains(&ints(&[1, 1])));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            kernel_lattice_basis(&mat(&[vec![1, 2], vec![2, 4]])),
            Err(ExactError::RankDeficient { .. })
        ));
        assert!(kernel_lattice_basis(&mat(&[vec![1, 0], vec![0, 1]])).is_err());
    }

    #[test]
    fn integer_kernel_of_rank_deficient_matrix() {
        let a = mat(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.rank(), 2);
        for v in &k.vectors {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }
}
