//! Seeded generation of random reflections and isometries with small
//! rational entries.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bilinear_space::{is_invertible_vector, OrthogonalBasis, Signature, Vector};
use crate::error::{Error, Result};
use crate::factorization::{compose_reflections, OrthogonalMap};
use crate::scalar::Scalar;

/// Draws before giving up on finding a non-isotropic vector.
pub const MAX_RETRIES: usize = 64;

/// Deterministic generator; the same seed yields the same stream on every platform.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for case `case` of a seeded batch.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = rng_from_seed(seed);
    rng.set_stream(case);
    rng
}

/// Coordinates `a/b` with `|a| ≤ 3` and `b ∈ {1, 2}`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let num = rng.gen_range(-3..=3);
    let den = rng.gen_range(1..=2);
    Scalar::ratio(num, den)
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector {
    Vector::new((0..n).map(|_| small_rational(rng)).collect())
}

/// A random invertible vector; isotropic or zero draws are rejected and retried.
pub fn random_invertible_vector<R: Rng + ?Sized>(rng: &mut R, sig: Signature) -> Result<Vector> {
    for _ in 0..MAX_RETRIES {
        let v = random_vector(rng, sig.dim());
        if is_invertible_vector(&v, sig)? {
            return Ok(v);
        }
    }
    Err(Error::InvariantBreach(format!(
        "no invertible vector in {MAX_RETRIES} draws for {sig}"
    )))
}

/// An isometry built as a composition of `k` random reflections, with its factors.
#[derive(Clone, Debug)]
pub struct RandomIsometry {
    pub factors: Vec<Vector>,
    pub map: OrthogonalMap,
}

pub fn random_isometry<R: Rng + ?Sized>(
    rng: &mut R,
    basis: &OrthogonalBasis,
    k: usize,
) -> Result<RandomIsometry> {
    let sig = basis.signature();
    let factors = (0..k)
        .map(|_| random_invertible_vector(rng, sig))
        .collect::<Result<Vec<_>>>()?;
    let matrix = compose_reflections(&factors, basis)?;
    Ok(RandomIsometry {
        factors,
        map: OrthogonalMap::new(matrix, basis.clone())?,
    })
}
