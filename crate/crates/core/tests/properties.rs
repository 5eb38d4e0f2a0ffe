use excdom_core::albert::AlbertElement;
use excdom_core::cayley::{AlgebraSignature, CompositionElement, Octonion, ScalarField};
use excdom_core::compactify::{p_membership, FreudenthalPoint, RankOnePoint};
use excdom_core::domains::{classify_v, inequality_values_v, locate_by_inequalities, project_to_stratum_frame, Location};
use excdom_core::jts::{d_operator, power, q_apply, spectral_decompose, triple};
use excdom_core::linear::{det_dense, roots_monic_cubic, span_residual, CubicPolynomial, Dense};
use excdom_core::sample;
use excdom_core::tripotents::{are_orthogonal, classify_tripotent, frame_census, peirce};
use excdom_core::type_v::{classify_tripotent_w, d_operator_w, peirce_w, triple_w, WElement};
use excdom_core::{Tolerances, C64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: Tolerances = Tolerances::DEFAULT;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rel(l: C64, r: C64) -> f64 {
    (l - r).norm() / (1.0 + l.norm() + r.norm())
}

fn rel_a(l: &AlbertElement, r: &AlbertElement) -> f64 {
    (*l - *r).norm() / (1.0 + l.norm() + r.norm())
}

fn signature() -> impl Strategy<Value = AlgebraSignature> {
    prop_oneof![
        (1usize..=3).prop_map(|l| AlgebraSignature::compact(ScalarField::Real, l)),
        (1usize..=3).prop_map(|l| AlgebraSignature::split(ScalarField::Real, l)),
        (0usize..=3).prop_map(|l| AlgebraSignature::compact(ScalarField::Complex, l)),
        (0usize..=3).prop_map(|l| AlgebraSignature::split(ScalarField::Complex, l)),
    ]
}

fn random_dense(r: &mut ChaCha8Rng, n: usize) -> Dense {
    Dense::from_row_major(n, n, (0..n * n).map(|_| sample::complex_normal(r)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_dense(&mut r, 8), random_dense(&mut r, 8));
        let lhs = det_dense(&(&a * &b)).unwrap();
        let rhs = det_dense(&a).unwrap() * det_dense(&b).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1e-300));
    }

    #[test]
    fn cubic_roots_reconstruct_coefficients(c in prop::array::uniform6(-10.0f64..10.0)) {
        let p = CubicPolynomial::monic(C64::new(c[0], c[1]), C64::new(c[2], c[3]), C64::new(c[4], c[5]));
        let q = CubicPolynomial::from_roots(roots_monic_cubic(&p));
        for k in 0..3 {
            let (a, b) = (p.coeffs[k], q.coeffs[k]);
            prop_assert!((a - b).norm() <= 1e-8 * (1.0 + a.norm()), "coefficient {k}: {a} vs {b}");
        }
    }

    #[test]
    fn composition_identities(sig in signature(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (sample::composition(&sig, &mut r), sample::composition(&sig, &mut r), sample::composition(&sig, &mut r));
        let ab = a.cd_multiply(&b).unwrap();
        let (na, nb) = (a.norm(), b.norm());
        prop_assert!((ab.norm() - na * nb).norm() < TOL.alg * (1.0 + na.norm()) * (1.0 + nb.norm()));
        let e = CompositionElement::unit(&sig);
        let quad = a.cd_multiply(&a).unwrap().sub(&a.scale(a.trace())).unwrap().add(&e.scale(na)).unwrap();
        prop_assert!(quad.coord_norm() < TOL.alg * (1.0 + a.coord_norm()).powi(2));
        let s = (1.0 + a.coord_norm()).powi(2) * (1.0 + b.coord_norm());
        for assoc in [a.associator(&a, &b), b.associator(&a, &a), a.associator(&b, &a)] {
            prop_assert!(assoc.unwrap().coord_norm() < TOL.alg * s);
        }
        prop_assert!(rel(ab.bilinear(&c).unwrap(), b.bilinear(&a.conjugate().cd_multiply(&c).unwrap()).unwrap()) < TOL.alg);
        prop_assert!(rel(ab.bilinear(&c).unwrap(), a.bilinear(&c.cd_multiply(&b.conjugate()).unwrap()).unwrap()) < TOL.alg);
        prop_assert!(rel(ab.trace(), b.cd_multiply(&a).unwrap().trace()) < TOL.alg);
        let t1 = ab.cd_multiply(&c).unwrap().trace();
        let t2 = a.cd_multiply(&b.cd_multiply(&c).unwrap()).unwrap().trace();
        prop_assert!(rel(t1, t2) < TOL.alg);
    }

    #[test]
    fn sedenions_are_not_alternative(seed in any::<u64>()) {
        let sig = AlgebraSignature::compact(ScalarField::Real, 4);
        let mut r = rng(seed);
        // Generic pairs violate alternativity; a single success is enough
        // evidence, so try a few.
        let worst = (0..8)
            .map(|_| {
                let (x, y) = (sample::composition(&sig, &mut r), sample::composition(&sig, &mut r));
                x.associator(&x.conjugate(), &y).unwrap().coord_norm()
            })
            .fold(0.0, f64::max);
        prop_assert!(worst > 0.1);
    }

    #[test]
    fn determinant_derivative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (sample::albert(&mut r), sample::albert(&mut r));
        let eps = 1e-4;
        let fd = (a + b.scale_re(eps)).det() - (a - b.scale_re(eps)).det();
        let fd = fd / (2.0 * eps);
        let exact = a.sharp().dot(&b);
        prop_assert!((fd - exact).norm() < 1e-6 * (1.0 + exact.norm()));
    }

    #[test]
    fn conjugation_compatibility(seed in any::<u64>()) {
        let a = sample::albert(&mut rng(seed));
        prop_assert!(rel_a(&a.bar().sharp(), &a.sharp().bar()) < TOL.alg);
        prop_assert!(rel(a.bar().det(), a.det().conj()) < TOL.alg);
    }

    #[test]
    fn jordan_triple_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y, z) = (sample::albert(&mut r), sample::albert(&mut r), sample::albert(&mut r));
        prop_assert!(rel_a(&triple(&x, &y, &q_apply(&x, &z)), &q_apply(&x, &triple(&y, &x, &z))) < TOL.alg);
        prop_assert!(rel_a(&triple(&q_apply(&x, &y), &y, &z), &triple(&x, &q_apply(&y, &x), &z)) < TOL.alg);
    }

    #[test]
    fn powers_stay_in_three_dimensional_span(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = sample::rescale(&sample::albert(&mut r), 0.8).unwrap();
        let y = sample::rescale(&sample::albert(&mut r), 0.8).unwrap();
        let span: Vec<Vec<C64>> = [x, x.sharp().cross(&y.bar()), y.bar().sharp()]
            .iter()
            .map(|v| v.to_coords().to_vec())
            .collect();
        for k in 1..=6 {
            let p = power(&x, k, &y).unwrap();
            prop_assert!(span_residual(&span, &p.to_coords(), 1e-12) < TOL.cls, "k = {k}");
        }
    }

    #[test]
    fn d_is_self_adjoint(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, u, v) = (sample::albert(&mut r), sample::albert(&mut r), sample::albert(&mut r));
        let d = d_operator(&x, &x);
        let du = AlbertElement::from_coords(&d.apply(&u.to_coords()));
        let dv = AlbertElement::from_coords(&d.apply(&v.to_coords()));
        prop_assert!(rel(du.hdot(&v), u.hdot(&dv)) < TOL.alg);
    }

    #[test]
    fn spectral_reconstruction(seed in any::<u64>()) {
        let x = sample::albert(&mut rng(seed));
        let sd = spectral_decompose(&x).unwrap();
        let sum = sd.pairs.iter().fold(AlbertElement::ZERO, |acc, (l, e)| acc + e.scale_re(*l));
        prop_assert!((sum - x).norm() < TOL.cls * (1.0 + x.norm()));
        for (_, e) in &sd.pairs {
            prop_assert!(classify_tripotent(e).is_ok());
        }
    }

    #[test]
    fn w_triple_product_is_closed(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y, z) = (sample::w_element(&mut r), sample::w_element(&mut r), sample::w_element(&mut r));
        let amb = triple(&x.embed(), &y.embed(), &z.embed());
        let back = WElement::restrict(&amb).unwrap();
        prop_assert!(back.sub(&triple_w(&x, &y, &z)).norm() < TOL.alg * (1.0 + back.norm()));
        prop_assert!(rel(d_operator_w(&x, &y).trace(), x.hdot(&y) * 12.0) < TOL.alg);
    }

    #[test]
    fn minimal_tripotents_of_w(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = sample::minimal_tripotent_w(&mut r);
        let (b, c) = (u.b, u.c);
        prop_assert!(b.norm().norm() < TOL.alg && c.norm().norm() < TOL.alg);
        prop_assert!((b * c).coord_norm() < TOL.alg);
        prop_assert!((b.hdot(&b) + c.hdot(&c) - 1.0).norm() < TOL.alg);
        prop_assert_eq!(classify_tripotent_w(&u).unwrap().rank, 1);
        // Dropping one condition loses the certificate.
        prop_assert!(classify_tripotent_w(&u.scale_re(1.1)).is_err());
        let bad = WElement::new(b + Octonion::unit().scale_re(0.3), c);
        prop_assert!(classify_tripotent_w(&bad.scale_re(1.0 / bad.norm())).is_err());
    }

    #[test]
    fn dual_classification_agrees(seed in any::<u64>(), which in 0usize..4) {
        let target = [0.5, 0.99, 1.0, 1.5][which];
        let x = sample::rescale(&sample::albert(&mut rng(seed)), target).unwrap();
        let v = classify_v(&x);
        if v.margin.is_none_or(|m| m > 10.0 * TOL.cls) {
            prop_assert_eq!(locate_by_inequalities(&inequality_values_v(&x), TOL.cls), v.location);
        }
    }

    #[test]
    fn monotone_exit(seed in any::<u64>(), t in 0.0f64..3.0) {
        let u = sample::rescale(&sample::albert(&mut rng(seed)), 1.0).unwrap();
        let loc = classify_v(&u.scale_re(t)).location;
        if t < 1.0 - 1e-3 {
            prop_assert_eq!(loc, Location::Interior);
        } else if t > 1.0 + 1e-3 {
            prop_assert_eq!(loc, Location::Exterior);
        }
    }

    #[test]
    fn embedding_lands_on_manifold(seed in any::<u64>(), s in prop::array::uniform2(-3.0f64..3.0)) {
        let mut r = rng(seed);
        let x = sample::albert(&mut r);
        let p = FreudenthalPoint::embed(&x);
        let sc = p.scale_norm();
        for res in p.residuals() {
            prop_assert!(res < TOL.alg * sc * sc);
        }
        prop_assert!(rel(x.dot(&x.sharp()), x.det() * 3.0) < TOL.alg);
        // degree-2 homogeneity on an off-manifold point
        let q = FreudenthalPoint { lambda: C64::new(1.0, 0.0), x, y: sample::albert(&mut r), mu: C64::new(0.5, 0.0) };
        let k = C64::new(s[0], s[1]);
        for (a, b) in q.scale(k).residuals().iter().zip(q.residuals()) {
            prop_assert!((a - k.norm_sqr() * b).abs() < 1e-12 * (1.0 + a.abs()));
        }
        let x2 = x + sample::albert(&mut r).scale_re(1e-3);
        prop_assert!(!p.projectively_equal(&FreudenthalPoint::embed(&x2), TOL.cls));
    }

    #[test]
    fn cone_round_trip(seed in any::<u64>()) {
        let x = sample::w_element(&mut rng(seed));
        let z = RankOnePoint::embed(&x);
        prop_assert!(z.residual() < TOL.alg * (1.0 + z.z.norm().powi(2)));
        let m = p_membership(&z.z.scale(C64::new(0.3, -1.2))).unwrap();
        prop_assert!(m.in_chart);
        prop_assert!(m.x.unwrap().sub(&x).norm() < TOL.cls * (1.0 + x.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn projector_algebra_for_random_tripotents(seed in any::<u64>(), k in 0usize..=3) {
        let e = sample::tripotent(&mut rng(seed), k);
        let pd = peirce(&e).unwrap();
        prop_assert!(pd.residual < TOL.cls);
        let want = [[27, 0, 0], [10, 16, 1], [1, 16, 10], [0, 0, 27]][k];
        prop_assert_eq!(pd.dims, want);
    }

    #[test]
    fn orthogonal_tripotents_add_ranks(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = sample::automorphism(&mut r, 0.5);
        let parts: Vec<AlbertElement> = (0..3).map(|i| sample::apply(&g, &AlbertElement::e(i).scale(sample::phase(&mut r)))).collect();
        prop_assert!(are_orthogonal(&parts[0], &parts[1]));
        prop_assert!(are_orthogonal(&parts[1], &parts[2]));
        prop_assert_eq!(classify_tripotent(&(parts[0] + parts[1])).unwrap().rank, 2);
        prop_assert_eq!(classify_tripotent(&(parts[0] + parts[1] + parts[2])).unwrap().rank, 3);
        let frame: Vec<_> = parts.iter().map(|p| peirce(p).unwrap()).collect();
        let census = frame_census(&frame).unwrap();
        prop_assert_eq!(&census.joint, &vec![vec![1, 8, 8], vec![8, 1, 8], vec![8, 8, 1]]);
        let inv = census.invariants();
        prop_assert_eq!((inv.a, inv.b, inv.r, inv.g), (8, 0, 3, 18));
    }

    #[test]
    fn stratum_projection_recovers_tripotent(seed in any::<u64>(), k in 1usize..=3) {
        let mut r = rng(seed);
        let rho = r.random_range(0.1..0.9);
        let (e, y) = sample::boundary_point(&mut r, k, rho);
        let p = project_to_stratum_frame(&(e + y)).unwrap();
        prop_assert_eq!(p.stratum, k);
        prop_assert_eq!(classify_tripotent(&p.e).unwrap().rank, k);
        prop_assert!((p.e - e).norm() < 1e-6);
        prop_assert!(p.v0_residual < TOL.cls);
    }
}

#[test]
fn strata_close_up_along_diagonal_paths() {
    for k in 1..=2 {
        let mut alpha = [0.0; 3];
        alpha[..k].fill(1.0);
        for t in [0.5, 0.9, 0.99, 0.999, 0.9999] {
            alpha[k] = t;
            assert_eq!(classify_v(&AlbertElement::diag_re(alpha)).location, Location::Boundary(k));
        }
        alpha[k] = 1.0;
        assert_eq!(classify_v(&AlbertElement::diag_re(alpha)).location, Location::Boundary(k + 1));
    }
}

#[test]
fn peirce_space_of_minimal_w_tripotent_has_rank_two_and_a_four() {
    let beta = excdom_core::cayley::default_null_unit();
    let half = 0.5;
    // gamma orthogonal to beta and conj(beta), null, of unit length
    let gamma = Octonion::basis(2).scale_re(half) + Octonion::basis(3).scale(C64::new(0.0, half));
    let u = WElement::new(beta, Octonion::ZERO);
    let (u1, v1) = (WElement::new(gamma, Octonion::ZERO), WElement::new(gamma.bar(), Octonion::ZERO));
    let pu = peirce_w(&u).unwrap();
    assert_eq!(pu.dims[1], 10);
    for w in [u1, v1] {
        let inside = WElement::from_coords(&pu.p(1).apply(&w.to_coords()));
        assert!(inside.sub(&w).norm() < 1e-12);
    }
    let (p1, q1) = (peirce_w(&u1).unwrap(), peirce_w(&v1).unwrap());
    let joint = &(pu.p(1) * p1.p(1)) * q1.p(1);
    assert!((joint.trace().re - 4.0).abs() < 1e-9);
    let ones = (pu.p(1) * p1.p(2)).trace().re + (pu.p(1) * q1.p(2)).trace().re;
    assert!((ones - 2.0).abs() < 1e-9);
}
