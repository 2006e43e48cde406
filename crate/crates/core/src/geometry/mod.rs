//! Floating-point convex geometry: volumes of linear images of subspace
//! sections, cube slices, the bodies `D(u,v)`, `E(u,v)` and the bi-pyramid
//! `L`, and lattice point search in symmetric bodies.
//!
//! This is the only module that works in `f64`. Checks here are one-sided
//! with explicit tolerances, and the exact modules never call into it.

mod bodies;
mod lattice_search;
mod montecarlo;
pub mod suite;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use thiserror::Error;

use crate::exact::{kernel_lattice_basis, ExactError, IntegerMatrix};
use crate::integer::IntError;

pub use bodies::{nonnegativity_of_hull, NonnegativityReport, SymmetricBody};
pub use lattice_search::{
    improving_point_construction, lattice_points_in, minkowski_lattice_point, ImprovingOutcome, Witness, WitnessKind,
};
pub use montecarlo::{
    box_slice_lower_bound, cube_section_volume, e_body_slice_bound, mc_volume, seeded_rng, BoxSliceResult, EBodyResult,
    McEstimate, SHARD_SIZE,
};

/// Orthonormality tolerance of subspace frames.
pub const FRAME_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("D is singular")]
    SingularD,
    #[error("rows of B do not span the orthogonal complement of D S")]
    BadOrthogonalComplement,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ker(A) is trivial")]
    DegenerateKernel,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Int(#[from] IntError),
}

/// Gram–Schmidt with a second orthogonalization pass; fails on (numerically)
/// dependent input.
pub fn orthonormalize(vectors: &[DVector<f64>]) -> Result<Vec<DVector<f64>>, GeomError> {
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let scale = v.norm();
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                w -= q * q.dot(&w);
            }
        }
        let norm = w.norm();
        if scale == 0.0 || norm <= 1e-10 * scale {
            return Err(GeomError::InvalidInput("vectors are linearly dependent".into()));
        }
        out.push(w / norm);
    }
    Ok(out)
}

/// Orthonormal basis of the orthogonal complement of `span(basis)` in `R^dim`.
pub fn orthonormal_complement(basis: &[DVector<f64>], dim: usize) -> Vec<DVector<f64>> {
    let mut frame = basis.to_vec();
    let mut out = Vec::new();
    for i in 0..dim {
        if frame.len() == dim {
            break;
        }
        let mut w = DVector::from_fn(dim, |j, _| if i == j { 1.0 } else { 0.0 });
        for _ in 0..2 {
            for q in &frame {
                w -= q * q.dot(&w);
            }
        }
        let norm = w.norm();
        if norm > 1e-6 {
            let w = w / norm;
            frame.push(w.clone());
            out.push(w);
        }
    }
    out
}

/// Orthonormal frame of `ker(A)` built from its integer basis.
pub fn kernel_frame(a: &IntegerMatrix) -> Result<Vec<DVector<f64>>, GeomError> {
    if a.rows() >= a.cols() {
        return Err(GeomError::DegenerateKernel);
    }
    let lattice = kernel_lattice_basis(a)?;
    let vecs: Vec<DVector<f64>> = lattice
        .vectors
        .iter()
        .map(|v| DVector::from_iterator(v.len(), v.iter().map(to_f64)))
        .collect();
    orthonormalize(&vecs)
}

pub(crate) fn to_f64<T: num_traits::ToPrimitive>(x: &T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn columns(vectors: &[DVector<f64>], rows: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, vectors.len(), |i, j| vectors[j][i])
}

fn det_or_one(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        1.0
    } else {
        m.determinant()
    }
}

/// `M ⊂ S`: an `(l−k)`-dimensional subspace `S ⊂ R^l` with an orthonormal
/// frame, and a parallelepiped `M` given by generators in frame coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceSection {
    ambient_dim: usize,
    basis: Vec<DVector<f64>>,
    /// `(l−k) x r` matrix; columns are generators in frame coordinates.
    generators: DMatrix<f64>,
}

impl SubspaceSection {
    pub fn new(basis: Vec<DVector<f64>>, generators: DMatrix<f64>) -> Result<Self, GeomError> {
        let ambient_dim = basis.first().map_or(0, |b| b.len());
        if basis.iter().any(|b| b.len() != ambient_dim) || generators.nrows() != basis.len() {
            return Err(GeomError::DimensionMismatch("frame and generators disagree".into()));
        }
        for (i, p) in basis.iter().enumerate() {
            for (j, q) in basis.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                if (p.dot(q) - target).abs() > FRAME_TOL * 10.0 {
                    return Err(GeomError::InvalidInput("frame is not orthonormal".into()));
                }
            }
        }
        Ok(Self {
            ambient_dim,
            basis,
            generators,
        })
    }

    /// Orthonormalizes a spanning set of `S` first.
    pub fn from_spanning(spanning: &[DVector<f64>], generators: DMatrix<f64>) -> Result<Self, GeomError> {
        Self::new(orthonormalize(spanning)?, generators)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DVector<f64>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> DMatrix<f64> {
        columns(&self.basis, self.ambient_dim)
    }

    /// `vol(M) = sqrt(det(G^T G))`.
    pub fn volume(&self) -> f64 {
        gram_volume(&self.generators)
    }

    /// Generators of `M` in ambient coordinates.
    pub fn ambient_generators(&self) -> DMatrix<f64> {
        self.basis_matrix() * &self.generators
    }
}

/// `sqrt(det(G^T G))` for the columns of `G`.
pub fn gram_volume(g: &DMatrix<f64>) -> f64 {
    det_or_one(&(g.transpose() * g)).max(0.0).sqrt()
}

/// Rows spanning the orthogonal complement of `D S`.
pub fn complement_rows(section: &SubspaceSection, d: &DMatrix<f64>) -> Result<DMatrix<f64>, GeomError> {
    let l = section.ambient_dim;
    let image: Vec<DVector<f64>> = section.basis.iter().map(|s| d * s).collect();
    let frame = orthonormalize(&image).map_err(|_| GeomError::SingularD)?;
    let comp = orthonormal_complement(&frame, l);
    Ok(DMatrix::from_fn(comp.len(), l, |i, j| comp[i][j]))
}

fn check_d(d: &DMatrix<f64>, l: usize) -> Result<f64, GeomError> {
    if d.nrows() != l || d.ncols() != l {
        return Err(GeomError::DimensionMismatch(format!("D must be {l} x {l}")));
    }
    let det = d.determinant();
    let scale = d.norm().max(1.0).powi(l as i32);
    if !det.is_finite() || det.abs() <= 1e-12 * scale {
        return Err(GeomError::SingularD);
    }
    Ok(det)
}

/// `vol(D M) = |det D| sqrt(det(B B^T) / det(B D D^T B^T)) vol(M)` where the
/// rows of `B` span `(D S)^⊥`.
pub fn section_volume_transform(
    section: &SubspaceSection,
    d: &DMatrix<f64>,
    b: &DMatrix<f64>,
) -> Result<f64, GeomError> {
    let l = section.ambient_dim;
    let det_d = check_d(d, l)?;
    let k = l - section.dim();
    if b.nrows() != k || b.ncols() != l {
        return Err(GeomError::BadOrthogonalComplement);
    }
    let bbt = det_or_one(&(b * b.transpose()));
    if bbt <= 1e-12 * b.norm().max(1.0).powi(2 * k as i32) {
        return Err(GeomError::BadOrthogonalComplement);
    }
    for s in &section.basis {
        let ds = d * s;
        let residual = (b * &ds).norm();
        if residual > 1e-9 * b.norm().max(1.0) * ds.norm().max(1.0) {
            return Err(GeomError::BadOrthogonalComplement);
        }
    }
    let bd = b * d;
    let bddb = det_or_one(&(&bd * bd.transpose()));
    Ok(det_d.abs() * (bbt / bddb).sqrt() * section.volume())
}

/// `(prod_{i <= l−k} sqrt(λ_i)) vol(M)` over the smallest eigenvalues of
/// `D^T D`, together with the actual `vol(D M)`.
pub fn eigenvalue_volume_lower_bound(section: &SubspaceSection, d: &DMatrix<f64>) -> Result<(f64, f64), GeomError> {
    check_d(d, section.ambient_dim)?;
    let mut lambda: Vec<f64> = SymmetricEigen::new(d.transpose() * d)
        .eigenvalues
        .iter()
        .map(|&x| x.max(0.0))
        .collect();
    lambda.sort_by(|a, b| a.total_cmp(b));
    let bound = lambda[..section.dim()].iter().map(|x| x.sqrt()).product::<f64>() * section.volume();
    let b = complement_rows(section, d)?;
    let actual = section_volume_transform(section, d, &b)?;
    Ok((bound, actual))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(x)
    }

    fn segment_on_x_axis() -> SubspaceSection {
        SubspaceSection::new(vec![v(&[1.0, 0.0])], DMatrix::from_element(1, 1, 1.0)).unwrap()
    }

    #[test]
    fn transform_examples() {
        let s = segment_on_x_axis();
        let id = DMatrix::identity(2, 2);
        let b = DMatrix::from_row_slice(1, 2, &[0.0, 1.0]);
        assert!((section_volume_transform(&s, &id, &b).unwrap() - 1.0).abs() < 1e-12);
        let d = DMatrix::from_diagonal(&v(&[2.0, 3.0]));
        assert!((section_volume_transform(&s, &d, &b).unwrap() - 2.0).abs() < 1e-12);

        let sq = SubspaceSection::new(vec![v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])], DMatrix::identity(2, 2)).unwrap();
        let d = DMatrix::from_diagonal(&v(&[1.0, 1.0, 5.0]));
        let b = DMatrix::from_row_slice(1, 3, &[0.0, 0.0, 1.0]);
        assert!((section_volume_transform(&sq, &d, &b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn transform_errors() {
        let s = segment_on_x_axis();
        let b = DMatrix::from_row_slice(1, 2, &[0.0, 1.0]);
        let singular = DMatrix::from_diagonal(&v(&[1.0, 0.0]));
        assert_eq!(section_volume_transform(&s, &singular, &b), Err(GeomError::SingularD));
        let wrong = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        assert_eq!(
            section_volume_transform(&s, &DMatrix::identity(2, 2), &wrong),
            Err(GeomError::BadOrthogonalComplement)
        );
    }

    #[test]
    fn eigen_examples() {
        let s = segment_on_x_axis();
        let (b, a) = eigenvalue_volume_lower_bound(&s, &DMatrix::identity(2, 2)).unwrap();
        assert!((b - 1.0).abs() < 1e-12 && (a - 1.0).abs() < 1e-12);
        let (b, a) = eigenvalue_volume_lower_bound(&s, &DMatrix::from_diagonal(&v(&[1.0, 2.0]))).unwrap();
        assert!((b - 1.0).abs() < 1e-12 && (a - 1.0).abs() < 1e-12);
        let (b, a) = eigenvalue_volume_lower_bound(&s, &DMatrix::from_diagonal(&v(&[2.0, 3.0]))).unwrap();
        assert!((b - 2.0).abs() < 1e-12 && (a - 2.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_frames_are_orthonormal() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2, 3, 4], vec![0, 1, -1, 2]]).unwrap();
        let f = kernel_frame(&a).unwrap();
        assert_eq!(f.len(), 2);
        assert!((f[0].dot(&f[1])).abs() < 1e-12);
        let am = DMatrix::from_fn(2, 4, |i, j| to_f64(&a[(i, j)]));
        assert!(f.iter().all(|q| (&am * q).norm() < 1e-12));
        assert_eq!(
            kernel_frame(&IntegerMatrix::identity(2)),
            Err(GeomError::DegenerateKernel)
        );
    }
}
