//! Seeded random elements, automorphisms and tripotents.
//!
//! Automorphisms are produced as `exp(D(u, v) - D(v, u))`: the generator is
//! a derivation of the triple product and skew-Hermitian for `(.|.)`, so its
//! exponential preserves tripotents, ranks and Peirce spaces.

use alloc::vec::Vec;

// Needed without std; unused when std is linked and f64 has inherent methods.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::albert::AlbertElement;
use crate::cayley::{null_unit_from_real_pair, AlgebraSignature, CompositionElement, Octonion, ScalarField};
use crate::jts::{d_operator, minimal_polynomial};
use crate::linear::{expm, Dense, C64};
use crate::type_v::{d_operator_w, minimal_polynomial_w, WElement};

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Complex Gaussian with `E|z|^2 = 1`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    C64::new(s * normal(rng), s * normal(rng))
}

pub fn real_octonion<R: Rng + ?Sized>(rng: &mut R) -> [f64; 8] {
    core::array::from_fn(|_| normal(rng))
}

pub fn octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    Octonion(core::array::from_fn(|_| complex_normal(rng)))
}

/// Gaussian element of the given algebra (real coordinates over the reals).
pub fn composition<R: Rng + ?Sized>(sig: &AlgebraSignature, rng: &mut R) -> CompositionElement {
    let coords: Vec<C64> = (0..sig.dim())
        .map(|_| match sig.field() {
            ScalarField::Real => C64::new(normal(rng), 0.0),
            ScalarField::Complex => complex_normal(rng),
        })
        .collect();
    CompositionElement::new(sig.clone(), coords).expect("finite coordinates of the right length")
}

pub fn albert<R: Rng + ?Sized>(rng: &mut R) -> AlbertElement {
    AlbertElement { alpha: core::array::from_fn(|_| complex_normal(rng)), a: core::array::from_fn(|_| octonion(rng)) }
}

pub fn w_element<R: Rng + ?Sized>(rng: &mut R) -> WElement {
    WElement::new(octonion(rng), octonion(rng))
}

/// `sqrt` of the largest root of `m(T; x, x)`.
pub fn spectral_norm(x: &AlbertElement) -> f64 {
    minimal_polynomial(x, x).real_roots()[0].max(0.0).sqrt()
}

pub fn spectral_norm_w(x: &WElement) -> f64 {
    minimal_polynomial_w(x, x).real_roots()[0].max(0.0).sqrt()
}

/// `x` rescaled to spectral norm `target`; `None` for `x = 0`.
pub fn rescale(x: &AlbertElement, target: f64) -> Option<AlbertElement> {
    let s = spectral_norm(x);
    (s > 0.0).then(|| x.scale_re(target / s))
}

pub fn rescale_w(x: &WElement, target: f64) -> Option<WElement> {
    let s = spectral_norm_w(x);
    (s > 0.0).then(|| x.scale_re(target / s))
}

/// Random `beta` with `(beta|beta) = 1` and `n(beta) = 0`.
pub fn null_unit<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    loop {
        if let Some(b) = null_unit_from_real_pair(real_octonion(rng), real_octonion(rng)) {
            return b;
        }
    }
}

/// Random unit complex number.
pub fn phase<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let t = rng.random::<f64>() * core::f64::consts::TAU;
    C64::new(t.cos(), t.sin())
}

/// `exp(D(u, v) - D(v, u))` on the Albert space for Gaussian `u`, `v` of
/// size `amp`.
pub fn automorphism<R: Rng + ?Sized>(rng: &mut R, amp: f64) -> Dense {
    let u = albert(rng).scale_re(amp);
    let v = albert(rng).scale_re(amp);
    let gen = &d_operator(&u, &v) - &d_operator(&v, &u);
    expm(&gen).expect("27 x 27 generator")
}

pub fn automorphism_w<R: Rng + ?Sized>(rng: &mut R, amp: f64) -> Dense {
    let u = w_element(rng).scale_re(amp);
    let v = w_element(rng).scale_re(amp);
    let gen = &d_operator_w(&u, &v) - &d_operator_w(&v, &u);
    expm(&gen).expect("16 x 16 generator")
}

pub fn apply(g: &Dense, x: &AlbertElement) -> AlbertElement {
    AlbertElement::from_coords(&g.apply(&x.to_coords()))
}

pub fn apply_w(g: &Dense, x: &WElement) -> WElement {
    WElement::from_coords(&g.apply(&x.to_coords()))
}

/// `e_1 + ... + e_k`.
pub fn diagonal_tripotent(k: usize) -> AlbertElement {
    (0..k).fold(AlbertElement::ZERO, |acc, i| acc + AlbertElement::e(i))
}

/// Random rank `k` tripotent `g(u_1 e_1 + ... + u_k e_k)` with unimodular `u_i`.
pub fn tripotent<R: Rng + ?Sized>(rng: &mut R, k: usize) -> AlbertElement {
    let mut d = AlbertElement::ZERO;
    for i in 0..k {
        d.alpha[i] = phase(rng);
    }
    apply(&automorphism(rng, 0.5), &d)
}

/// Boundary point `x = e + y` of stratum `k` together with its parts:
/// `e` a random rank `k` tripotent and `y` in `V_0(e)` of spectral norm `rho < 1`.
pub fn boundary_point<R: Rng + ?Sized>(rng: &mut R, k: usize, rho: f64) -> (AlbertElement, AlbertElement) {
    let mut e = AlbertElement::ZERO;
    for i in 0..k {
        e.alpha[i] = phase(rng);
    }
    let mut y = AlbertElement::ZERO;
    match k {
        1 => {
            y.alpha[1] = complex_normal(rng);
            y.alpha[2] = complex_normal(rng);
            y.a[0] = octonion(rng);
            y = rescale(&y, rho).unwrap_or(y);
        }
        2 => y.alpha[2] = phase(rng).scale(rho),
        _ => {}
    }
    let g = automorphism(rng, 0.5);
    (apply(&g, &e), apply(&g, &y))
}

/// Minimal tripotent of `W`: `F_2(b) + F_3(c)` with `n(b) = n(c) = 0`,
/// `bc = 0` and `(x|x) = 1`.
pub fn minimal_tripotent_w<R: Rng + ?Sized>(rng: &mut R) -> WElement {
    let b = null_unit(rng).scale(complex_normal(rng));
    let c = b.tilde() * octonion(rng);
    let x = WElement::new(b, c);
    x.scale_re(1.0 / x.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jts::triple;
    use crate::tripotents::classify_tripotent;
    use crate::type_v::classify_tripotent_w;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn automorphism_preserves_triple_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = automorphism(&mut rng, 0.5);
        let (x, y, z) = (albert(&mut rng), albert(&mut rng), albert(&mut rng));
        let lhs = apply(&g, &triple(&x, &y, &z));
        let rhs = triple(&apply(&g, &x), &apply(&g, &y), &apply(&g, &z));
        assert!((lhs - rhs).norm() < 1e-10 * lhs.norm());
        assert!((apply(&g, &x).norm() - x.norm()).abs() < 1e-12 * x.norm());
    }

    #[test]
    fn random_tripotents_have_requested_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for k in 0..=3 {
            let e = tripotent(&mut rng, k);
            assert_eq!(classify_tripotent(&e).unwrap().rank, k);
        }
        for _ in 0..10 {
            let u = minimal_tripotent_w(&mut rng);
            assert_eq!(classify_tripotent_w(&u).unwrap().rank, 1);
        }
    }

    #[test]
    fn rescaling_hits_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = rescale(&albert(&mut rng), 0.7).unwrap();
        assert!((spectral_norm(&x) - 0.7).abs() < 1e-12);
        assert!(rescale(&AlbertElement::ZERO, 1.0).is_none());
        let w = rescale_w(&w_element(&mut rng), 1.3).unwrap();
        assert!((spectral_norm_w(&w) - 1.3).abs() < 1e-12);
    }
}
