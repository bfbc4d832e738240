//! Householder matrices, grade bounds, fixed-space analysis and the
//! consolidated decomposition report.

use crate::bilinear_space::{scalar_product, square, OrthogonalBasis, Vector};
use crate::clifford::vector_product;
use crate::error::{Error, Result};
use crate::factorization::{decompose, recompose, OrthogonalMap, ReflectionSequence};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Matrix of `φ_s` over an orthogonal basis, built entry by entry:
///
/// * `(l, j)`, `l ≠ j`: `−2 B(s,w_j) B(s,w_l) / (s² w_l²)`
/// * `(j, j)`: `−(1/s²) (B(s,w_j)²/w_j² − Σ_{i≠j} B(s,w_i)²/w_i²)`
pub fn householder_matrix(s: &Vector, basis: &OrthogonalBasis) -> Result<Matrix> {
    let sig = basis.signature();
    let s2 = square(s, sig)?;
    let inv_s2 = s2.recip().ok_or(Error::NotInvertible)?;
    let n = basis.dim();
    let proj: Vec<Scalar> = basis
        .vectors()
        .iter()
        .map(|w| scalar_product(s, w, sig))
        .collect::<Result<_>>()?;
    // B(s, w_i)² / w_i²
    let weights: Vec<Scalar> = (0..n).map(|i| &(&proj[i] * &proj[i]) / basis.square(i)).collect();
    let mut a = Matrix::zeros(n, n);
    for l in 0..n {
        for j in 0..n {
            a[(l, j)] = if l == j {
                let others: Scalar = (0..n).filter(|&i| i != j).map(|i| weights[i].clone()).sum();
                -(&inv_s2 * &(&weights[j] - &others))
            } else {
                let num = &(&Scalar::from(-2) * &proj[j]) * &proj[l];
                &(&num * &inv_s2) / basis.square(l)
            };
        }
    }
    Ok(a)
}

/// Grade of `r₁ ⋯ r_m`; no factorization of the same map is shorter.
pub fn versor_grade(reflectors: &[Vector], sig: crate::Signature) -> Result<usize> {
    let product = vector_product(reflectors, sig)?;
    product
        .grade()
        .map_err(|_| Error::InvariantBreach("versor product of invertible vectors vanished".into()))
}

pub fn grade_lower_bound(seq: &ReflectionSequence) -> Result<usize> {
    versor_grade(&seq.reflectors, seq.signature())
}

/// Whether the fixed space `Ker(T − I)` carries a non-degenerate form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelForm {
    Nondegenerate,
    Degenerate,
    /// Float mode only: the Gram determinant is within tolerance of zero.
    Undetermined,
}

impl KernelForm {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            KernelForm::Nondegenerate => Some(true),
            KernelForm::Degenerate => Some(false),
            KernelForm::Undetermined => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelAnalysis {
    pub kernel_dim: usize,
    pub form: KernelForm,
    /// `n − kernel_dim`, the dimension of the orthogonal complement of the fixed space.
    pub perp_dim: usize,
    /// Kernel basis in canonical coordinates.
    pub kernel_basis: Vec<Vector>,
    pub gram_determinant: Scalar,
}

impl KernelAnalysis {
    pub fn nondegenerate(&self) -> bool {
        self.form == KernelForm::Nondegenerate
    }
}

pub fn kernel_analysis(m: &OrthogonalMap) -> Result<KernelAnalysis> {
    let n = m.dim();
    let basis = m.basis();
    let shifted = m.matrix().try_sub(&Matrix::identity(n))?;
    let kernel: Vec<Vector> = shifted
        .nullspace()
        .into_iter()
        .map(|coords| basis.from_coords(&Vector::new(coords)))
        .collect::<Result<_>>()?;
    let k = kernel.len();
    let sig = m.signature();
    let mut gram = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = scalar_product(&kernel[i], &kernel[j], sig)?;
        }
    }
    let det = gram.determinant();
    let form = if !det.is_zero() {
        KernelForm::Nondegenerate
    } else if det.is_exact() {
        KernelForm::Degenerate
    } else {
        KernelForm::Undetermined
    };
    Ok(KernelAnalysis {
        kernel_dim: k,
        form,
        perp_dim: n - k,
        kernel_basis: kernel,
        gram_determinant: det,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionReport {
    pub sequence: ReflectionSequence,
    pub householder_matrices: Vec<Matrix>,
    pub recomposition_ok: bool,
    pub grade_lower_bound: usize,
    pub achieved_count: usize,
    pub kernel: KernelAnalysis,
    pub minimality_certified: bool,
}

impl DecompositionReport {
    pub fn kernel_dim(&self) -> usize {
        self.kernel.kernel_dim
    }

    pub fn artinian_branches(&self) -> usize {
        self.sequence.artinian_branches.len()
    }
}

/// Product of the Householder matrices of `reflectors`, left to right.
pub fn householder_product(reflectors: &[Vector], basis: &OrthogonalBasis) -> Result<Matrix> {
    reflectors.iter().try_fold(Matrix::identity(basis.dim()), |acc, s| {
        acc.try_mul(&householder_matrix(s, basis)?)
    })
}

pub fn build_report(m: &OrthogonalMap) -> Result<DecompositionReport> {
    let sequence = decompose(m)?;
    let recomposition_ok = recompose(&sequence)? == *m.matrix();
    let householder_matrices = sequence
        .reflectors
        .iter()
        .map(|s| householder_matrix(s, m.basis()))
        .collect::<Result<Vec<_>>>()?;
    let product = householder_matrices
        .iter()
        .try_fold(Matrix::identity(m.dim()), |acc, h| acc.try_mul(h))?;
    if product != *m.matrix() {
        return Err(Error::InvariantBreach(
            "product of Householder matrices differs from the input".into(),
        ));
    }
    let grade_lower_bound = grade_lower_bound(&sequence)?;
    let achieved_count = sequence.len();
    if grade_lower_bound > achieved_count {
        return Err(Error::InvariantBreach(format!(
            "grade bound {grade_lower_bound} exceeds achieved count {achieved_count}"
        )));
    }
    let kernel = kernel_analysis(m)?;
    let minimality_certified = grade_lower_bound == achieved_count
        || (kernel.nondegenerate() && achieved_count == kernel.perp_dim);
    Ok(DecompositionReport {
        sequence,
        householder_matrices,
        recomposition_ok,
        grade_lower_bound,
        achieved_count,
        kernel,
        minimality_certified,
    })
}
