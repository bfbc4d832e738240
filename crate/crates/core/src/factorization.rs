//! Factorization of an isometry of R^{p,q} into hyperplane reflections.
//!
//! The map is held as a matrix over an orthogonal basis `w_1, …, w_n` with
//! non-isotropic vectors. Each step fixes one basis vector `w` by left
//! composing reflections:
//!
//! * `M(w) = w`: nothing to do.
//! * `c = M(w) − w` invertible: `φ_c M` fixes `w`.
//! * otherwise `d = M(w) + w` is invertible (because `(M(w) − w)² = 0` forces
//!   `(M(w) + w)² = 4w²`) and `φ_w φ_d M` fixes `w`.
//!
//! Already fixed basis vectors stay fixed, since every reflector lies in the
//! span of the not-yet-fixed ones. [`decompose`] prefers indices where one of
//! the first two cases applies and only falls back to the pair when every
//! remaining basis vector has an isotropic, nonzero displacement.

use crate::bilinear_space::{orthogonality_defect, OrthogonalBasis, Signature, Vector};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// An isometry given by its matrix over an orthogonal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalMap {
    matrix: Matrix,
    basis: OrthogonalBasis,
}

impl OrthogonalMap {
    /// Validates `MᵀGM = G` for the basis Gram matrix `G`.
    pub fn new(matrix: Matrix, basis: OrthogonalBasis) -> Result<Self> {
        let n = basis.dim();
        if !matrix.is_square() || matrix.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if matrix.rows() != n { matrix.rows() } else { matrix.cols() },
            });
        }
        let defect = orthogonality_defect(&matrix, basis.gram()).expect("shapes checked above");
        let worst = defect.max_abs_entry();
        if !worst.is_zero() {
            return Err(Error::NotOrthogonalMap {
                max_deviation: worst.to_string(),
            });
        }
        Ok(OrthogonalMap { matrix, basis })
    }

    /// Matrix given in canonical coordinates, re-expressed over `basis`.
    pub fn from_canonical(matrix: &Matrix, basis: OrthogonalBasis) -> Result<Self> {
        let n = basis.dim();
        if !matrix.is_square() || matrix.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.rows(),
            });
        }
        let m = basis.matrix_from_canonical(matrix)?;
        OrthogonalMap::new(m, basis)
    }

    pub fn identity(basis: OrthogonalBasis) -> Self {
        OrthogonalMap {
            matrix: Matrix::identity(basis.dim()),
            basis,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn basis(&self) -> &OrthogonalBasis {
        &self.basis
    }

    pub fn signature(&self) -> Signature {
        self.basis.signature()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn canonical_matrix(&self) -> Result<Matrix> {
        self.basis.matrix_to_canonical(&self.matrix)
    }

    /// `M(w_j)` in canonical coordinates.
    pub fn image_of_basis_vector(&self, j: usize) -> Vector {
        self.basis
            .from_coords(&Vector::new(self.matrix.column(j)))
            .expect("column length matches basis")
    }

    /// `M(w_j) − w_j` in basis coordinates.
    fn displacement(&self, j: usize) -> Vec<Scalar> {
        let mut col = self.matrix.column(j);
        col[j] = &col[j] - &Scalar::one();
        col
    }

    /// `φ_s ∘ M` for a reflector given in basis coordinates.
    fn reflect_coords(&self, s: &[Scalar]) -> Result<OrthogonalMap> {
        let s2 = self.basis.form(s, s);
        let inv = s2.recip().ok_or(Error::NotInvertible)?;
        let n = self.dim();
        let mut out = self.matrix.clone();
        for j in 0..n {
            let col = self.matrix.column(j);
            let k = &(&Scalar::from(2) * &self.basis.form(&col, s)) * &inv;
            for i in 0..n {
                out[(i, j)] = &col[i] - &(&k * &s[i]);
            }
        }
        Ok(OrthogonalMap {
            matrix: out,
            basis: self.basis.clone(),
        })
    }

    /// `φ_s ∘ M` for a reflector in canonical coordinates.
    pub fn left_reflect(&self, s: &Vector) -> Result<OrthogonalMap> {
        let coords = self.basis.coords_of(s)?;
        self.reflect_coords(coords.coords())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepKind {
    Identity,
    /// One reflection `φ_c`.
    Single(Vector),
    /// Two reflections; the step applies `φ_w ∘ φ_d` to the map.
    Pair { w: Vector, d: Vector },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionStep {
    pub kind: StepKind,
    /// 0-based index of the basis vector the step fixes.
    pub pivot_index: usize,
}

impl ReflectionStep {
    /// Reflectors in the order they are composed onto the map. Since every
    /// reflection is an involution this is also their order in the
    /// factorization `T = φ_{r₁} ∘ ⋯ ∘ φ_{r_m}`.
    pub fn reflectors(&self) -> Vec<Vector> {
        match &self.kind {
            StepKind::Identity => Vec::new(),
            StepKind::Single(c) => vec![c.clone()],
            StepKind::Pair { w, d } => vec![d.clone(), w.clone()],
        }
    }
}

/// Builds the step that fixes basis vector `index`.
pub fn step_reflector(m: &OrthogonalMap, index: usize) -> Result<ReflectionStep> {
    if index >= m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: index + 1,
        });
    }
    let basis = m.basis();
    let disp = m.displacement(index);
    let kind = if disp.iter().all(Scalar::is_zero) {
        StepKind::Identity
    } else if !basis.form(&disp, &disp).is_zero() {
        StepKind::Single(basis.from_coords(&Vector::new(disp))?)
    } else {
        let mut sum = m.matrix.column(index);
        sum[index] = &sum[index] + &Scalar::one();
        StepKind::Pair {
            w: basis.vector(index).clone(),
            d: basis.from_coords(&Vector::new(sum))?,
        }
    };
    Ok(ReflectionStep {
        kind,
        pivot_index: index,
    })
}

fn apply_step(m: &OrthogonalMap, step: &ReflectionStep) -> Result<OrthogonalMap> {
    step.reflectors().iter().try_fold(m.clone(), |acc, s| acc.left_reflect(s))
}

/// Smallest remaining index whose basis vector is fixed or has an
/// invertible displacement.
pub fn find_pivot(m: &OrthogonalMap, remaining: &[usize]) -> Option<usize> {
    let basis = m.basis();
    let mut sorted = remaining.to_vec();
    sorted.sort_unstable();
    sorted.into_iter().find(|&j| {
        let disp = m.displacement(j);
        disp.iter().all(Scalar::is_zero) || !basis.form(&disp, &disp).is_zero()
    })
}

/// True when every remaining basis vector is moved by a nonzero isotropic vector.
pub fn detect_artinian(m: &OrthogonalMap, remaining: &[usize]) -> bool {
    !remaining.is_empty() && find_pivot(m, remaining).is_none()
}

/// Diagnostics recorded when the pair fallback is taken.
#[derive(Clone, Debug, PartialEq)]
pub struct ArtinianBranch {
    /// Remaining indices at the time of detection.
    pub remaining: Vec<usize>,
    /// Determinant of the map restricted to their span.
    pub restricted_determinant: Scalar,
}

impl ArtinianBranch {
    pub fn even_dimension(&self) -> bool {
        self.remaining.len() % 2 == 0
    }

    pub fn is_rotation(&self) -> bool {
        self.restricted_determinant.is_one()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionSequence {
    /// `r₁, …, r_m` in canonical coordinates; the map is `φ_{r₁} ∘ ⋯ ∘ φ_{r_m}`.
    pub reflectors: Vec<Vector>,
    pub steps: Vec<ReflectionStep>,
    pub source: OrthogonalMap,
    pub artinian_branches: Vec<ArtinianBranch>,
}

impl ReflectionSequence {
    pub fn len(&self) -> usize {
        self.reflectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reflectors.is_empty()
    }

    pub fn signature(&self) -> Signature {
        self.source.signature()
    }
}

fn finish(
    source: &OrthogonalMap,
    residue: &OrthogonalMap,
    steps: Vec<ReflectionStep>,
    artinian_branches: Vec<ArtinianBranch>,
    bound: usize,
) -> Result<ReflectionSequence> {
    if !residue.matrix.is_identity() {
        return Err(Error::InvariantBreach("residual map is not the identity".into()));
    }
    let reflectors: Vec<Vector> = steps.iter().flat_map(ReflectionStep::reflectors).collect();
    if reflectors.len() > bound {
        return Err(Error::InvariantBreach(format!(
            "{} reflectors exceed the bound {bound}",
            reflectors.len()
        )));
    }
    Ok(ReflectionSequence {
        reflectors,
        steps,
        source: source.clone(),
        artinian_branches,
    })
}

/// Factors `m` into at most `n` reflections.
pub fn decompose(m: &OrthogonalMap) -> Result<ReflectionSequence> {
    let n = m.dim();
    let mut current = m.clone();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut steps = Vec::with_capacity(n);
    let mut branches = Vec::new();
    while !remaining.is_empty() {
        let index = match find_pivot(&current, &remaining) {
            Some(j) => j,
            None => {
                branches.push(ArtinianBranch {
                    remaining: remaining.clone(),
                    restricted_determinant: current.matrix.submatrix(&remaining).determinant(),
                });
                remaining[0]
            }
        };
        let step = step_reflector(&current, index)?;
        current = apply_step(&current, &step)?;
        remaining.retain(|&j| j != index);
        steps.push(step);
    }
    finish(m, &current, steps, branches, n)
}

/// Processes basis indices in order without pivot search; at most `2n` reflections.
pub fn decompose_weak(m: &OrthogonalMap) -> Result<ReflectionSequence> {
    let n = m.dim();
    let mut current = m.clone();
    let mut steps = Vec::with_capacity(n);
    for index in 0..n {
        let step = step_reflector(&current, index)?;
        current = apply_step(&current, &step)?;
        steps.push(step);
    }
    finish(m, &current, steps, Vec::new(), 2 * n)
}

/// Matrix over `basis` of `φ_{r₁} ∘ ⋯ ∘ φ_{r_m}`.
pub fn compose_reflections(reflectors: &[Vector], basis: &OrthogonalBasis) -> Result<Matrix> {
    let identity = OrthogonalMap::identity(basis.clone());
    let composed = reflectors
        .iter()
        .rev()
        .try_fold(identity, |acc, s| acc.left_reflect(s))?;
    Ok(composed.matrix)
}

pub fn recompose(seq: &ReflectionSequence) -> Result<Matrix> {
    compose_reflections(&seq.reflectors, seq.source.basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear_space::{is_orthogonal_map, square};
    use crate::clifford::reflect;

    fn sig23() -> Signature {
        Signature::new(2, 3).unwrap()
    }

    fn t_e() -> Matrix {
        Matrix::from_i64_rows(&[
            &[1, 5, 4, 3, 0],
            &[-5, 1, 3, -4, 0],
            &[4, 3, 1, 5, 0],
            &[3, -4, -5, 1, 0],
            &[0, 0, 0, 0, -1],
        ])
    }

    fn canonical_map(m: Matrix) -> OrthogonalMap {
        OrthogonalMap::new(m, OrthogonalBasis::canonical(sig23())).unwrap()
    }

    #[test]
    fn rejects_non_isometries() {
        let mut scaled = Matrix::identity(5);
        scaled[(0, 0)] = Scalar::from(2);
        let err = OrthogonalMap::new(scaled, OrthogonalBasis::canonical(sig23())).unwrap_err();
        assert_eq!(err, Error::NotOrthogonalMap { max_deviation: "3".into() });
        assert!(matches!(
            OrthogonalMap::new(Matrix::identity(4), OrthogonalBasis::canonical(sig23())),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn step_examples() {
        let te = canonical_map(t_e());
        let step = step_reflector(&te, 4).unwrap();
        assert_eq!(step.kind, StepKind::Single(Vector::from_i64(&[0, 0, 0, 0, -2])));

        let after = te.left_reflect(&Vector::from_i64(&[0, 0, 0, 0, 1])).unwrap();
        let step = step_reflector(&after, 0).unwrap();
        assert_eq!(
            step.kind,
            StepKind::Pair {
                w: Vector::from_i64(&[1, 0, 0, 0, 0]),
                d: Vector::from_i64(&[2, -5, 4, 3, 0]),
            }
        );

        let id = OrthogonalMap::identity(OrthogonalBasis::canonical(sig23()));
        for j in 0..5 {
            assert_eq!(step_reflector(&id, j).unwrap().kind, StepKind::Identity);
        }
    }

    #[test]
    fn step_fixes_its_pivot() {
        let te = canonical_map(t_e());
        for j in 0..5 {
            let step = step_reflector(&te, j).unwrap();
            let next = apply_step(&te, &step).unwrap();
            assert_eq!(next.matrix().column(j), Vector::unit(5, j).into_coords());
        }
    }

    #[test]
    fn pivot_examples() {
        let te = canonical_map(t_e());
        let all: Vec<usize> = (0..5).collect();
        assert_eq!(find_pivot(&te, &all), Some(4));
        assert!(!detect_artinian(&te, &all));

        let id = OrthogonalMap::identity(OrthogonalBasis::canonical(sig23()));
        assert_eq!(find_pivot(&id, &all), Some(0));
        assert!(!detect_artinian(&id, &all));

        let after = te.left_reflect(&Vector::from_i64(&[0, 0, 0, 0, 1])).unwrap();
        assert_eq!(find_pivot(&after, &[0, 1, 2, 3]), None);
        assert!(detect_artinian(&after, &[0, 1, 2, 3]));
    }

    #[test]
    fn decompose_identity_is_empty() {
        let id = OrthogonalMap::identity(OrthogonalBasis::canonical(sig23()));
        let seq = decompose(&id).unwrap();
        assert!(seq.is_empty());
        assert!(recompose(&seq).unwrap().is_identity());
        assert!(decompose_weak(&id).unwrap().is_empty());
    }

    #[test]
    fn decompose_canonical_example() {
        let te = canonical_map(t_e());
        let seq = decompose(&te).unwrap();
        assert_eq!(seq.len(), 5);
        assert_eq!(seq.artinian_branches.len(), 1);
        let branch = &seq.artinian_branches[0];
        assert_eq!(branch.remaining, vec![0, 1, 2, 3]);
        assert!(branch.even_dimension() && branch.is_rotation());
        assert_eq!(recompose(&seq).unwrap(), t_e());
        assert_eq!(seq.reflectors[0], Vector::from_i64(&[0, 0, 0, 0, -2]));
        assert_eq!(seq.reflectors[1], Vector::from_i64(&[2, -5, 4, 3, 0]));
        assert_eq!(seq.reflectors[2], Vector::from_i64(&[1, 0, 0, 0, 0]));
    }

    #[test]
    fn weak_decomposition_of_example() {
        let te = canonical_map(t_e());
        let seq = decompose_weak(&te).unwrap();
        assert!(seq.len() <= 10);
        assert!(matches!(seq.steps[0].kind, StepKind::Pair { .. }));
        assert_eq!(recompose(&seq).unwrap(), t_e());

        // A single reflection along e1.
        let mut phi = Matrix::identity(5);
        phi[(0, 0)] = Scalar::from(-1);
        let seq = decompose_weak(&canonical_map(phi)).unwrap();
        assert_eq!(seq.reflectors, vec![Vector::from_i64(&[-2, 0, 0, 0, 0])]);
    }

    #[test]
    fn reflectors_are_invertible_and_steps_progress() {
        let te = canonical_map(t_e());
        let seq = decompose(&te).unwrap();
        for r in &seq.reflectors {
            assert!(!square(r, sig23()).unwrap().is_zero());
        }
        let mut current = te.clone();
        let mut fixed = Vec::new();
        for step in &seq.steps {
            current = apply_step(&current, step).unwrap();
            fixed.push(step.pivot_index);
            for &j in &fixed {
                assert_eq!(current.image_of_basis_vector(j), Vector::unit(5, j));
            }
        }
    }

    #[test]
    fn compose_matches_pointwise_reflection() {
        let s = sig23();
        let rs = [Vector::from_i64(&[1, 2, 0, 1, 0]), Vector::from_i64(&[0, 1, 1, 0, 3])];
        let m = compose_reflections(&rs, &OrthogonalBasis::canonical(s)).unwrap();
        assert!(is_orthogonal_map(&m, s));
        for j in 0..5 {
            let x = Vector::unit(5, j);
            let y = reflect(&rs[0], &reflect(&rs[1], &x, s).unwrap(), s).unwrap();
            assert_eq!(Vector::new(m.column(j)), y);
        }
    }
}
