use cartan_core::analysis::{build_report, householder_matrix, householder_product, kernel_analysis, versor_grade};
use cartan_core::bilinear_space::{is_orthogonal_map, orthogonalize, scalar_product, square, Basis};
use cartan_core::clifford::{apply_versor, geometric_product, reflect, versors_proportional, Versor};
use cartan_core::factorization::{compose_reflections, decompose, recompose, OrthogonalMap};
use cartan_core::sampling::{random_invertible_vector, random_isometry, random_vector, rng_from_seed};
use cartan_core::{Blade, Matrix, Multivector, OrthogonalBasis, Scalar, Signature, Vector};
use proptest::prelude::*;

fn signature() -> impl Strategy<Value = Signature> {
    (1usize..=6).prop_flat_map(|n| (0..=n).prop_map(move |p| Signature::new(p, n - p).unwrap()))
}

fn small_signature() -> impl Strategy<Value = Signature> {
    (1usize..=4).prop_flat_map(|n| (0..=n).prop_map(move |p| Signature::new(p, n - p).unwrap()))
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| Scalar::ratio(a, b))
}

fn vector(n: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(rational(), n).prop_map(Vector::new)
}

fn multivector(sig: Signature) -> impl Strategy<Value = Multivector> {
    let blades = 1u32 << sig.dim();
    proptest::collection::vec((0..blades, rational()), 0..5)
        .prop_map(move |terms| Multivector::from_terms(terms.into_iter().map(|(b, c)| (Blade(b), c)), sig))
}

/// Orthogonal basis obtained from a random invertible vector via Gram-Schmidt.
fn mixed_basis(sig: Signature, seed: u64) -> OrthogonalBasis {
    let mut rng = rng_from_seed(seed);
    let n = sig.dim();
    let lead = random_invertible_vector(&mut rng, sig).unwrap();
    let mut vectors = vec![lead];
    for i in 0..n {
        vectors.push(Vector::unit(n, i));
    }
    // Keep the first n vectors that are linearly independent.
    let mut chosen: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut candidate = chosen.clone();
        candidate.push(v.clone());
        let m = Matrix::from_rows(candidate.iter().map(|c| c.coords().to_vec()).collect()).unwrap();
        if m.rank() == candidate.len() {
            chosen.push(v);
        }
        if chosen.len() == n {
            break;
        }
    }
    orthogonalize(&Basis::new(chosen, sig).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn form_is_symmetric_and_bilinear(
        (sig, x, y, z) in signature().prop_flat_map(|s| (Just(s), vector(s.dim()), vector(s.dim()), vector(s.dim()))),
        a in rational(),
    ) {
        prop_assert_eq!(scalar_product(&x, &y, sig).unwrap(), scalar_product(&y, &x, sig).unwrap());
        let lhs = scalar_product(&x.add_scaled(&a, &y), &z, sig).unwrap();
        let rhs = scalar_product(&x, &z, sig).unwrap() + &a * &scalar_product(&y, &z, sig).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn orthogonalize_preserves_signature(sig in small_signature(), seed in any::<u64>()) {
        let basis = mixed_basis(sig, seed);
        let positives = (0..sig.dim()).filter(|&i| basis.square(i).signum() > 0).count();
        prop_assert_eq!(positives, sig.p());
        prop_assert!(basis.gram().is_diagonal());
    }

    #[test]
    fn products_of_isometries_are_isometries(sig in signature(), seed in any::<u64>()) {
        let basis = OrthogonalBasis::canonical(sig);
        let mut rng = rng_from_seed(seed);
        let a = random_isometry(&mut rng, &basis, 2).unwrap();
        let b = random_isometry(&mut rng, &basis, 3).unwrap();
        let ab = a.map.matrix().try_mul(b.map.matrix()).unwrap();
        prop_assert!(is_orthogonal_map(&ab, sig));
        let inv = a.map.matrix().inverse().unwrap();
        prop_assert!(is_orthogonal_map(&inv, sig));
    }

    #[test]
    fn geometric_product_is_associative(
        (a, b, c) in signature().prop_flat_map(|s| (multivector(s), multivector(s), multivector(s))),
    ) {
        let left = geometric_product(&geometric_product(&a, &b).unwrap(), &c).unwrap();
        let right = geometric_product(&a, &geometric_product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn vectors_square_to_their_form(
        (sig, x, y) in signature().prop_flat_map(|s| (Just(s), vector(s.dim()), vector(s.dim()))),
    ) {
        let xm = Multivector::from_vector(&x, sig).unwrap();
        let ym = Multivector::from_vector(&y, sig).unwrap();
        prop_assert_eq!(
            geometric_product(&xm, &xm).unwrap(),
            Multivector::scalar(square(&x, sig).unwrap(), sig)
        );
        let sym = geometric_product(&xm, &ym).unwrap().try_add(&geometric_product(&ym, &xm).unwrap()).unwrap();
        let two_b = Scalar::from(2) * scalar_product(&x, &y, sig).unwrap();
        prop_assert_eq!(sym, Multivector::scalar(two_b, sig));
    }

    #[test]
    fn reflections_are_scale_invariant_involutive_isometries(
        (sig, x, y) in signature().prop_flat_map(|s| (Just(s), vector(s.dim()), vector(s.dim()))),
        seed in any::<u64>(),
        k in rational().prop_filter("nonzero", |k| !k.is_zero()),
    ) {
        let s = random_invertible_vector(&mut rng_from_seed(seed), sig).unwrap();
        let fx = reflect(&s, &x, sig).unwrap();
        let fy = reflect(&s, &y, sig).unwrap();
        prop_assert_eq!(scalar_product(&fx, &fy, sig).unwrap(), scalar_product(&x, &y, sig).unwrap());
        prop_assert_eq!(reflect(&s, &fx, sig).unwrap(), x.clone());
        prop_assert_eq!(reflect(&s.scale(&k), &x, sig).unwrap(), fx);
    }

    #[test]
    fn grade_is_bounded_by_factor_count(sig in signature(), seed in any::<u64>(), k in 0usize..=6) {
        let mut rng = rng_from_seed(seed);
        let factors: Vec<Vector> = (0..k).map(|_| random_invertible_vector(&mut rng, sig).unwrap()).collect();
        let grade = versor_grade(&factors, sig).unwrap();
        prop_assert!(grade <= k);
        let span = if k == 0 {
            0
        } else {
            Matrix::from_rows(factors.iter().map(|f| f.coords().to_vec()).collect()).unwrap().rank()
        };
        prop_assert!(grade <= span);
        if span == k {
            prop_assert_eq!(grade, k);
        }
    }

    #[test]
    fn decomposition_is_sound(sig in signature(), seed in any::<u64>()) {
        let basis = OrthogonalBasis::canonical(sig);
        let mut rng = rng_from_seed(seed);
        let k = (seed % (sig.dim() as u64 + 1)) as usize;
        let iso = random_isometry(&mut rng, &basis, k).unwrap();
        let seq = decompose(&iso.map).unwrap();
        prop_assert!(seq.len() <= sig.dim());
        prop_assert_eq!(recompose(&seq).unwrap(), iso.map.matrix().clone());
        let grade = versor_grade(&seq.reflectors, sig).unwrap();
        prop_assert!(grade <= seq.len());
        // Reflection count parity matches the determinant.
        let det = iso.map.matrix().determinant();
        prop_assert_eq!(det, Scalar::from(if seq.len() % 2 == 0 { 1 } else { -1 }));
        prop_assert_eq!(seq.len() % 2, k % 2);
        // The recovered versor acts like the generating one, up to scale.
        let original = Versor::new(iso.factors.clone(), sig).unwrap();
        let recovered = Versor::new(seq.reflectors.clone(), sig).unwrap();
        prop_assert!(versors_proportional(&original, &recovered).is_some());
        let x = random_vector(&mut rng, sig.dim());
        prop_assert_eq!(apply_versor(&original, &x).unwrap(), apply_versor(&recovered, &x).unwrap());
    }

    #[test]
    fn householder_matrices_agree_with_composition(sig in small_signature(), seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        for basis in [OrthogonalBasis::canonical(sig), mixed_basis(sig, seed)] {
            let factors: Vec<Vector> = (0..3).map(|_| random_invertible_vector(&mut rng, sig).unwrap()).collect();
            prop_assert_eq!(
                householder_product(&factors, &basis).unwrap(),
                compose_reflections(&factors, &basis).unwrap()
            );
            let h = householder_matrix(&factors[0], &basis).unwrap();
            prop_assert_eq!(h.try_mul(&h).unwrap(), Matrix::identity(sig.dim()));
        }
    }

    #[test]
    fn decomposition_over_mixed_bases(sig in small_signature(), seed in any::<u64>()) {
        let basis = mixed_basis(sig, seed);
        let mut rng = rng_from_seed(seed ^ 0xABCD);
        let iso = random_isometry(&mut rng, &basis, sig.dim()).unwrap();
        let seq = decompose(&iso.map).unwrap();
        prop_assert!(seq.len() <= sig.dim());
        prop_assert_eq!(recompose(&seq).unwrap(), iso.map.matrix().clone());
    }

    #[test]
    fn nondegenerate_fixed_space_certifies_minimality(sig in small_signature(), seed in any::<u64>()) {
        let basis = OrthogonalBasis::canonical(sig);
        let mut rng = rng_from_seed(seed);
        let k = (seed % (sig.dim() as u64 + 1)) as usize;
        let iso = random_isometry(&mut rng, &basis, k).unwrap();
        let kernel = kernel_analysis(&iso.map).unwrap();
        let report = build_report(&iso.map).unwrap();
        if kernel.nondegenerate() {
            prop_assert_eq!(report.grade_lower_bound, kernel.perp_dim);
        }
        prop_assert!(report.grade_lower_bound <= report.achieved_count);
    }
}

#[test]
fn identity_map_needs_no_reflections() {
    for n in 1..=6 {
        for p in 0..=n {
            let sig = Signature::new(p, n - p).unwrap();
            let seq = decompose(&OrthogonalMap::identity(OrthogonalBasis::canonical(sig))).unwrap();
            assert!(seq.is_empty());
        }
    }
}
