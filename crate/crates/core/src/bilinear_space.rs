//! The space R^{p,q}: its symmetric form, vectors, bases and Gram matrices.

use std::fmt;
use std::ops::{Add, Index, Sub};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// `p` basis squares equal to +1 followed by `q` equal to -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::InvalidSignature { p, q });
        }
        Ok(Signature { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// Square of the `i`-th canonical basis vector (0-based).
    pub fn metric(&self, i: usize) -> i64 {
        if i < self.p {
            1
        } else {
            -1
        }
    }

    /// The form matrix `A = diag(1,…,1,-1,…,-1)`.
    pub fn form_matrix(&self) -> Matrix {
        let diag: Vec<Scalar> = (0..self.dim()).map(|i| Scalar::from(self.metric(i))).collect();
        Matrix::diagonal(&diag)
    }

    pub fn ensure_dim(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: len,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^({},{})", self.p, self.q)
    }
}

/// Coordinates of a vector in some declared ordered basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![Scalar::zero(); n])
    }

    /// The `i`-th unit vector (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Vector::zeros(n);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| Scalar::from(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, k: &Scalar) -> Vector {
        Vector(self.0.iter().map(|c| c * k).collect())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: &Scalar, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + &(k * b)).collect())
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn check_pair(x: &Vector, y: &Vector, sig: Signature) -> Result<()> {
    sig.ensure_dim(x.len())?;
    sig.ensure_dim(y.len())
}

/// `B(x, y) = Σ_{i<p} x_i y_i − Σ_{i≥p} x_i y_i` in canonical coordinates.
pub fn scalar_product(x: &Vector, y: &Vector, sig: Signature) -> Result<Scalar> {
    check_pair(x, y, sig)?;
    Ok(x.0
        .iter()
        .zip(&y.0)
        .enumerate()
        .map(|(i, (a, b))| {
            let prod = a * b;
            if sig.metric(i) > 0 {
                prod
            } else {
                -prod
            }
        })
        .sum())
}

pub fn square(x: &Vector, sig: Signature) -> Result<Scalar> {
    scalar_product(x, x, sig)
}

/// Result of an isotropy query. The zero vector reports `isotropic` with
/// `zero_input` set so callers can tell "fixed" apart from "null direction".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Isotropy {
    pub isotropic: bool,
    pub zero_input: bool,
}

pub fn is_isotropic(x: &Vector, sig: Signature) -> Result<Isotropy> {
    let zero_input = x.is_zero();
    Ok(Isotropy {
        isotropic: zero_input || square(x, sig)?.is_zero(),
        zero_input,
    })
}

pub fn is_invertible_vector(x: &Vector, sig: Signature) -> Result<bool> {
    Ok(!is_isotropic(x, sig)?.isotropic)
}

/// An ordered basis of R^{p,q} with its cached Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    sig: Signature,
    vectors: Vec<Vector>,
    gram: Matrix,
}

impl Basis {
    pub fn new(vectors: Vec<Vector>, sig: Signature) -> Result<Self> {
        sig.ensure_dim(vectors.len())?;
        for v in &vectors {
            sig.ensure_dim(v.len())?;
        }
        let coords: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.0.clone()).collect();
        if Matrix::from_columns(&coords)?.determinant().is_zero() {
            return Err(Error::DependentBasis);
        }
        let gram = gram_of(&vectors, sig)?;
        Ok(Basis { sig, vectors, gram })
    }

    pub fn canonical(sig: Signature) -> Self {
        let n = sig.dim();
        Basis {
            sig,
            vectors: (0..n).map(|i| Vector::unit(n, i)).collect(),
            gram: sig.form_matrix(),
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Matrix whose columns are the basis vectors in canonical coordinates.
    pub fn change_of_basis(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.vectors.iter().map(|v| v.0.clone()).collect();
        Matrix::from_columns(&cols).expect("basis vectors share a length")
    }
}

fn gram_of(vectors: &[Vector], sig: Signature) -> Result<Matrix> {
    let k = vectors.len();
    let mut g = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let b = scalar_product(&vectors[i], &vectors[j], sig)?;
            g[(j, i)] = b.clone();
            g[(i, j)] = b;
        }
    }
    Ok(g)
}

pub fn gram_matrix(basis: &Basis) -> Matrix {
    basis.gram.clone()
}

/// A basis whose Gram matrix is diagonal with nonzero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalBasis(Basis);

impl OrthogonalBasis {
    pub fn new(basis: Basis) -> Result<Self> {
        if !basis.gram.is_diagonal() {
            return Err(Error::NotOrthogonalBasis("Gram matrix is not diagonal".into()));
        }
        if let Some(i) = (0..basis.vectors.len()).find(|&i| basis.gram[(i, i)].is_zero()) {
            return Err(Error::NotOrthogonalBasis(format!("basis vector {} is isotropic", i + 1)));
        }
        Ok(OrthogonalBasis(basis))
    }

    pub fn from_vectors(vectors: Vec<Vector>, sig: Signature) -> Result<Self> {
        OrthogonalBasis::new(Basis::new(vectors, sig)?)
    }

    pub fn canonical(sig: Signature) -> Self {
        OrthogonalBasis(Basis::canonical(sig))
    }

    pub fn basis(&self) -> &Basis {
        &self.0
    }

    pub fn signature(&self) -> Signature {
        self.0.sig
    }

    pub fn dim(&self) -> usize {
        self.0.sig.dim()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.0.vectors
    }

    pub fn vector(&self, i: usize) -> &Vector {
        &self.0.vectors[i]
    }

    pub fn gram(&self) -> &Matrix {
        &self.0.gram
    }

    /// `w_i²`.
    pub fn square(&self, i: usize) -> &Scalar {
        &self.0.gram[(i, i)]
    }

    pub fn is_canonical(&self) -> bool {
        self.0 == Basis::canonical(self.0.sig)
    }

    /// Coordinates of a canonical-coordinate vector: `a_i = B(x, w_i) / w_i²`.
    pub fn coords_of(&self, x: &Vector) -> Result<Vector> {
        let sig = self.signature();
        let coords = self
            .vectors()
            .iter()
            .enumerate()
            .map(|(i, w)| Ok(scalar_product(x, w, sig)? / self.square(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Vector(coords))
    }

    /// Canonical coordinates of `Σ a_i w_i`.
    pub fn from_coords(&self, a: &Vector) -> Result<Vector> {
        self.signature().ensure_dim(a.len())?;
        let n = self.dim();
        Ok(self
            .vectors()
            .iter()
            .zip(&a.0)
            .fold(Vector::zeros(n), |acc, (w, c)| acc.add_scaled(c, w)))
    }

    /// The form evaluated on coordinate vectors of this basis: `Σ a_i b_i w_i²`.
    pub fn form(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        a.iter()
            .zip(b)
            .enumerate()
            .map(|(i, (x, y))| &(x * y) * self.square(i))
            .sum()
    }

    /// Re-express a canonical-coordinate matrix in this basis: `P⁻¹ M P`.
    pub fn matrix_from_canonical(&self, m: &Matrix) -> Result<Matrix> {
        let p = self.0.change_of_basis();
        p.inverse()?.try_mul(m)?.try_mul(&p)
    }

    /// Inverse of [`OrthogonalBasis::matrix_from_canonical`]: `P M P⁻¹`.
    pub fn matrix_to_canonical(&self, m: &Matrix) -> Result<Matrix> {
        let p = self.0.change_of_basis();
        p.try_mul(m)?.try_mul(&p.inverse()?)
    }
}

/// Gram–Schmidt for an indefinite form.
///
/// Residuals are processed in order. An isotropic residual `r` is repaired by
/// adding `λ·r_j` for the smallest later residual `r_j` with `B(r, r_j) ≠ 0`,
/// with `λ = 1`, or `λ = 2` when `r + r_j` is still isotropic. Non-degeneracy of
/// the form guarantees such a `r_j` exists for an independent input.
pub fn orthogonalize(basis: &Basis) -> Result<OrthogonalBasis> {
    let sig = basis.sig;
    let mut pending: Vec<Vector> = basis.vectors.clone();
    let mut done: Vec<(Vector, Scalar)> = Vec::with_capacity(pending.len());
    for k in 0..pending.len() {
        // Project every not-yet-processed vector off the finished ones.
        for v in pending.iter_mut().skip(k) {
            let mut r = v.clone();
            for (u, u2) in &done {
                let c = scalar_product(&r, u, sig)? / u2;
                r = r.add_scaled(&-c, u);
            }
            *v = r;
        }
        let mut r = pending[k].clone();
        if r.is_zero() {
            return Err(Error::DependentBasis);
        }
        let mut r2 = square(&r, sig)?;
        if r2.is_zero() {
            let mut partner = None;
            for cand in pending.iter().skip(k + 1) {
                if !scalar_product(&r, cand, sig)?.is_zero() {
                    partner = Some(cand.clone());
                    break;
                }
            }
            let partner = partner.ok_or(Error::DependentBasis)?;
            let mut repaired = &r + &partner;
            if square(&repaired, sig)?.is_zero() {
                repaired = r.add_scaled(&Scalar::from(2), &partner);
            }
            r = repaired;
            r2 = square(&r, sig)?;
        }
        done.push((r, r2));
    }
    OrthogonalBasis::new(Basis::new(done.into_iter().map(|(v, _)| v).collect(), sig)?)
}

/// Checks `QᵀAQ = A` for the canonical form matrix `A`.
pub fn is_orthogonal_map(q: &Matrix, sig: Signature) -> bool {
    orthogonality_defect(q, &sig.form_matrix())
        .is_some_and(|d| (0..d.rows()).all(|i| d.row(i).iter().all(Scalar::is_zero)))
}

/// `MᵀGM − G`, or `None` when the shapes do not agree.
pub(crate) fn orthogonality_defect(m: &Matrix, gram: &Matrix) -> Option<Matrix> {
    if !m.is_square() || m.rows() != gram.rows() {
        return None;
    }
    let lhs = m.transpose().try_mul(gram).ok()?.try_mul(m).ok()?;
    lhs.try_sub(gram).ok()
}
