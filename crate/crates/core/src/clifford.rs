//! The universal Clifford algebra R_{p,q} of dimension 2ⁿ.
//!
//! Blades are bitmasks: bit `i` stands for the canonical vector `e_{i+1}`.
//! Multivectors keep a sparse map from blade to nonzero coefficient, so the
//! zero multivector is the empty map and grades can be read off directly.

use std::collections::BTreeMap;
use std::fmt;

use crate::bilinear_space::{is_invertible_vector, scalar_product, square, Signature, Vector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Blade from 1-based generator indices; repeated indices are rejected.
    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut mask = 0u32;
        for &i in indices {
            let bit = 1u32.checked_shl(u32::try_from(i.checked_sub(1)?).ok()?)?;
            if mask & bit != 0 {
                return None;
            }
            mask |= bit;
        }
        Some(Blade(mask))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based generator indices in ascending order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "e{}", parts.join(""))
    }
}

/// `e_a · e_b = sign · e_{a xor b}`.
///
/// The reordering sign counts, for every generator of `b`, the generators of
/// `a` strictly above it; the metric contributes `e_i²` for every shared `i`.
pub fn blade_product(a: Blade, b: Blade, sig: Signature) -> (i8, Blade) {
    let mut swaps = 0u32;
    let mut rest = b.0;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a.0 >> (bit + 1)).count_ones();
    }
    let mut sign: i8 = if swaps % 2 == 0 { 1 } else { -1 };
    let mut common = a.0 & b.0;
    while common != 0 {
        let bit = common.trailing_zeros() as usize;
        common &= common - 1;
        if sig.metric(bit) < 0 {
            sign = -sign;
        }
    }
    (sign, Blade(a.0 ^ b.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    sig: Signature,
    terms: BTreeMap<Blade, Scalar>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector {
            sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(value: Scalar, sig: Signature) -> Self {
        Multivector::from_terms([(Blade::SCALAR, value)], sig)
    }

    pub fn blade(blade: Blade, sig: Signature) -> Self {
        Multivector::from_terms([(blade, Scalar::one())], sig)
    }

    /// Sums the given terms, dropping zero coefficients. Panics if a blade
    /// uses generators beyond the signature's dimension.
    pub fn from_terms(terms: impl IntoIterator<Item = (Blade, Scalar)>, sig: Signature) -> Self {
        let mut mv = Multivector::zero(sig);
        for (blade, coeff) in terms {
            assert!(
                u64::from(blade.0) < (1u64 << sig.dim()),
                "blade {blade} outside an algebra of dimension 2^{}",
                sig.dim()
            );
            mv.accumulate(blade, coeff);
        }
        mv
    }

    pub fn from_vector(v: &Vector, sig: Signature) -> Result<Self> {
        sig.ensure_dim(v.len())?;
        Ok(Multivector::from_terms(
            v.coords().iter().enumerate().map(|(i, c)| (Blade(1 << i), c.clone())),
            sig,
        ))
    }

    /// Grade-1 multivector back to a vector; any other component is an error.
    pub fn to_vector(&self) -> Result<Vector> {
        if let Some((blade, _)) = self.terms.iter().find(|(b, _)| b.grade() != 1) {
            return Err(Error::NotAVector {
                blade: blade.to_string(),
            });
        }
        let mut coords = vec![Scalar::zero(); self.sig.dim()];
        for (blade, c) in &self.terms {
            coords[blade.0.trailing_zeros() as usize] = c.clone();
        }
        Ok(Vector::new(coords))
    }

    fn accumulate(&mut self, blade: Blade, coeff: Scalar) {
        let merged = match self.terms.remove(&blade) {
            Some(old) => old + coeff,
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(blade, merged);
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, blade: Blade) -> Scalar {
        self.terms.get(&blade).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Scalar)> {
        self.terms.iter()
    }

    pub fn scale(&self, k: &Scalar) -> Multivector {
        Multivector::from_terms(self.terms.iter().map(|(b, c)| (*b, c * k)), self.sig)
    }

    pub fn try_add(&self, rhs: &Multivector) -> Result<Multivector> {
        self.same_algebra(rhs)?;
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.accumulate(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Multivector) -> Result<Multivector> {
        self.try_add(&rhs.scale(&Scalar::from(-1)))
    }

    fn same_algebra(&self, rhs: &Multivector) -> Result<()> {
        if self.sig != rhs.sig {
            return Err(Error::SignatureMismatch {
                left: self.sig.to_string(),
                right: rhs.sig.to_string(),
            });
        }
        Ok(())
    }

    /// Largest `r` with a nonzero `r`-vector part.
    pub fn grade(&self) -> Result<usize> {
        self.terms
            .keys()
            .map(|b| b.grade())
            .max()
            .ok_or(Error::ZeroMultivector)
    }

    pub fn grade_part(&self, r: usize) -> Multivector {
        Multivector {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.grade() == r)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| if b.0 == 0 { c.to_string() } else { format!("({c}){b}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn geometric_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.same_algebra(b)?;
    let mut out = Multivector::zero(a.sig);
    for (ba, ca) in &a.terms {
        for (bb, cb) in &b.terms {
            let (sign, blade) = blade_product(*ba, *bb, a.sig);
            let coeff = ca * cb;
            out.accumulate(blade, if sign < 0 { -coeff } else { coeff });
        }
    }
    Ok(out)
}

/// Left-to-right product of vectors, `s₁ s₂ ⋯ s_k`. The empty product is 1.
pub fn vector_product(factors: &[Vector], sig: Signature) -> Result<Multivector> {
    factors.iter().try_fold(Multivector::scalar(Scalar::one(), sig), |acc, s| {
        geometric_product(&acc, &Multivector::from_vector(s, sig)?)
    })
}

/// `s⁻¹ = s / s²`.
pub fn vector_inverse(s: &Vector, sig: Signature) -> Result<Multivector> {
    let s2 = square(s, sig)?;
    let inv = s2.recip().ok_or(Error::NotInvertible)?;
    Ok(Multivector::from_vector(s, sig)?.scale(&inv))
}

/// Hyperplane reflection `φ_s(x) = x − (2 B(x,s) / s²) s`.
pub fn reflect(s: &Vector, x: &Vector, sig: Signature) -> Result<Vector> {
    let s2 = square(s, sig)?;
    let inv = s2.recip().ok_or(Error::NotInvertible)?;
    let k = &(&Scalar::from(2) * &scalar_product(x, s, sig)?) * &inv;
    Ok(x.add_scaled(&-k, s))
}

/// The same reflection computed in the algebra as `−s x s⁻¹`.
pub fn reflect_sandwich(s: &Vector, x: &Vector, sig: Signature) -> Result<Vector> {
    let sm = Multivector::from_vector(s, sig)?;
    let xm = Multivector::from_vector(x, sig)?;
    let inv = vector_inverse(s, sig)?;
    let out = geometric_product(&geometric_product(&sm, &xm)?, &inv)?;
    out.scale(&Scalar::from(-1)).to_vector()
}

/// A product of invertible vectors, acting on vectors by the twisted sandwich
/// `(−1)^k s₁⋯s_k x s_k⁻¹⋯s₁⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct Versor {
    sig: Signature,
    factors: Vec<Vector>,
    product: Multivector,
}

impl Versor {
    pub fn new(factors: Vec<Vector>, sig: Signature) -> Result<Self> {
        for f in &factors {
            if !is_invertible_vector(f, sig)? {
                return Err(Error::NotInvertible);
            }
        }
        let product = vector_product(&factors, sig)?;
        Ok(Versor {
            sig,
            factors,
            product,
        })
    }

    pub fn identity(sig: Signature) -> Self {
        Versor {
            sig,
            factors: Vec::new(),
            product: Multivector::scalar(Scalar::one(), sig),
        }
    }

    pub fn factors(&self) -> &[Vector] {
        &self.factors
    }

    pub fn product(&self) -> &Multivector {
        &self.product
    }

    pub fn parity(&self) -> usize {
        self.factors.len() % 2
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    /// `s_k⁻¹ ⋯ s₁⁻¹`.
    pub fn inverse_product(&self) -> Result<Multivector> {
        self.factors
            .iter()
            .rev()
            .try_fold(Multivector::scalar(Scalar::one(), self.sig), |acc, s| {
                geometric_product(&acc, &vector_inverse(s, self.sig)?)
            })
    }
}

/// Applies the versor by the sandwich product. Equal to composing
/// `φ_{s₁} ∘ ⋯ ∘ φ_{s_k}` on `x`.
pub fn apply_versor(v: &Versor, x: &Vector) -> Result<Vector> {
    let xm = Multivector::from_vector(x, v.sig)?;
    let sandwich = geometric_product(&geometric_product(&v.product, &xm)?, &v.inverse_product()?)?;
    let signed = if v.parity() == 1 {
        sandwich.scale(&Scalar::from(-1))
    } else {
        sandwich
    };
    signed.to_vector()
}

/// Returns `λ` with `product(u) = λ·product(v)` when such a nonzero scalar exists.
pub fn versors_proportional(u: &Versor, v: &Versor) -> Option<Scalar> {
    if u.sig != v.sig {
        return None;
    }
    let (blade, cv) = v.product.terms.iter().next()?;
    let cu = u.product.coefficient(*blade);
    if cu.is_zero() {
        return None;
    }
    let lambda = &cu / cv;
    (v.product.scale(&lambda) == u.product).then_some(lambda)
}
