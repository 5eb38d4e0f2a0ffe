//! The 27-dimensional Albert space `H3(O)` of Hermitian octonionic 3x3
//! matrices, stored as `sum alpha_j e_j + sum F_j(a_j)`.
//!
//! Indices are zero based: `e(0)` is the first diagonal unit and `f(0, b)`
//! the off-diagonal block opposite to it.

use core::ops::{Add, Neg, Sub};

// Needed without std; unused when std is linked and f64 has inherent methods.
#[allow(unused_imports)]
use num_traits::Float;

use crate::cayley::Octonion;
use crate::linear::{C64, ONE, ZERO};

/// Real dimension over the complex field.
pub const DIM: usize = 27;

/// Even permutations `(i, j, k)` of `(0, 1, 2)`.
pub const EVEN: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlbertElement {
    pub alpha: [C64; 3],
    pub a: [Octonion; 3],
}

impl AlbertElement {
    pub const ZERO: AlbertElement = AlbertElement { alpha: [ZERO; 3], a: [Octonion::ZERO; 3] };

    /// Diagonal unit `e_i`.
    pub fn e(i: usize) -> Self {
        let mut x = Self::ZERO;
        x.alpha[i] = ONE;
        x
    }

    /// Off-diagonal element `F_i(b)`.
    pub fn f(i: usize, b: Octonion) -> Self {
        let mut x = Self::ZERO;
        x.a[i] = b;
        x
    }

    pub fn diag(alpha: [C64; 3]) -> Self {
        Self { alpha, a: [Octonion::ZERO; 3] }
    }

    pub fn diag_re(alpha: [f64; 3]) -> Self {
        Self::diag(alpha.map(|x| C64::new(x, 0.0)))
    }

    /// Coordinates `[alpha_1..3, a_1[0..8], a_2[0..8], a_3[0..8]]`.
    pub fn to_coords(&self) -> [C64; DIM] {
        let mut v = [ZERO; DIM];
        v[..3].copy_from_slice(&self.alpha);
        for j in 0..3 {
            v[3 + 8 * j..11 + 8 * j].copy_from_slice(&self.a[j].0);
        }
        v
    }

    /// Inverse of [`to_coords`](Self::to_coords); `v` must have length 27.
    pub fn from_coords(v: &[C64]) -> Self {
        let mut x = Self::ZERO;
        x.alpha.copy_from_slice(&v[..3]);
        for j in 0..3 {
            x.a[j].0.copy_from_slice(&v[3 + 8 * j..11 + 8 * j]);
        }
        x
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { alpha: self.alpha.map(|x| x * s), a: self.a.map(|o| o.scale(s)) }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Complex conjugation `a -> conj(a)` fixing the compact real form.
    pub fn bar(&self) -> Self {
        Self { alpha: self.alpha.map(|x| x.conj()), a: self.a.map(|o| o.bar()) }
    }

    /// `(a:b) = sum alpha_j beta_j + sum (a_j:b_j)`.
    pub fn dot(&self, other: &Self) -> C64 {
        let d: C64 = self.alpha.iter().zip(&other.alpha).map(|(x, y)| x * y).sum();
        d + (0..3).map(|j| self.a[j].dot(&other.a[j])).sum::<C64>()
    }

    /// `(a|b) = (a : conj b)`.
    pub fn hdot(&self, other: &Self) -> C64 {
        self.dot(&other.bar())
    }

    /// `sqrt((a|a))`.
    pub fn norm(&self) -> f64 {
        self.hdot(self).re.max(0.0).sqrt()
    }

    /// Freudenthal product, the polarization of the adjoint.
    pub fn cross(&self, other: &Self) -> Self {
        let (x, y) = (self, other);
        let mut out = Self::ZERO;
        for (i, j, k) in EVEN {
            out.alpha[i] = x.alpha[j] * y.alpha[k] + y.alpha[j] * x.alpha[k] - x.a[i].dot(&y.a[i]);
            let quad = x.a[j] * y.a[k] + y.a[j] * x.a[k];
            let lin = y.a[i].scale(x.alpha[i]) + x.a[i].scale(y.alpha[i]);
            out.a[i] = quad.tilde() - lin;
        }
        out
    }

    /// `a# = sum (alpha_j alpha_k - n(a_i)) e_i + sum F_i((a_j a_k - alpha_i ~a_i)~)`.
    pub fn sharp(&self) -> Self {
        let x = self;
        let mut out = Self::ZERO;
        for (i, j, k) in EVEN {
            out.alpha[i] = x.alpha[j] * x.alpha[k] - x.a[i].norm();
            out.a[i] = (x.a[j] * x.a[k] - x.a[i].tilde().scale(x.alpha[i])).tilde();
        }
        out
    }

    /// `alpha_1 alpha_2 alpha_3 - sum alpha_i n(a_i) + t(a_1 (a_2 a_3))`.
    pub fn det(&self) -> C64 {
        let x = self;
        let diag = x.alpha[0] * x.alpha[1] * x.alpha[2];
        let mixed: C64 = (0..3).map(|i| x.alpha[i] * x.a[i].norm()).sum();
        diag - mixed + (x.a[0] * (x.a[1] * x.a[2])).trace()
    }

    pub fn is_finite(&self) -> bool {
        self.to_coords().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Add for AlbertElement {
    type Output = AlbertElement;
    fn add(self, rhs: Self) -> Self {
        Self { alpha: [0, 1, 2].map(|j| self.alpha[j] + rhs.alpha[j]), a: [0, 1, 2].map(|j| self.a[j] + rhs.a[j]) }
    }
}

impl Sub for AlbertElement {
    type Output = AlbertElement;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for AlbertElement {
    type Output = AlbertElement;
    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

/// `T(a, b, c) = (a x b : c)`.
pub fn trilinear(a: &AlbertElement, b: &AlbertElement, c: &AlbertElement) -> C64 {
    a.cross(b).dot(c)
}

/// Relative residuals of the cubic identities of the Albert space,
/// `|lhs - rhs| / (1 + |lhs| + |rhs|)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CubicResiduals {
    /// `(a#)# = det(a) a`
    pub sharp_sharp: f64,
    /// `det(a#) = det(a)^2`
    pub det_sharp: f64,
    /// `det a = (a#:a)/3`
    pub det_trace: f64,
    /// `a# x (a x b) = det(a) b + (a#:b) a`
    pub sharp_cross: f64,
    /// `(a x b : a# x c) = det(a)(b:c) + (a#:b)(a:c)`
    pub cross_pairing: f64,
    /// `a x (a# x c) = det(a) c + (a:c) a#`
    pub cross_sharp_cross: f64,
    /// `(a x b) x (a x c) + a# x (b x c) = (a#:b) c + (a#:c) b + T(a,b,c) a`
    pub cross_cross: f64,
    /// `a x ((a x b) x c) + b x (a# x c) = (a#:b) c + (b:c) a# + (a:c) a x b`
    pub cross_cross_mixed: f64,
    /// `a# x b# + (a x b)# = (a#:b) b + (b#:a) a`
    pub sharp_sum: f64,
    /// `(a x b# : a# x b) = 3 det(a) det(b) + (a:b)(a#:b#)`
    pub mixed_pairing: f64,
}

impl CubicResiduals {
    pub fn entries(&self) -> [(&'static str, f64); 10] {
        [
            ("sharp_sharp", self.sharp_sharp),
            ("det_sharp", self.det_sharp),
            ("det_trace", self.det_trace),
            ("sharp_cross", self.sharp_cross),
            ("cross_pairing", self.cross_pairing),
            ("cross_sharp_cross", self.cross_sharp_cross),
            ("cross_cross", self.cross_cross),
            ("cross_cross_mixed", self.cross_cross_mixed),
            ("sharp_sum", self.sharp_sum),
            ("mixed_pairing", self.mixed_pairing),
        ]
    }

    pub fn max(&self) -> f64 {
        self.entries().iter().map(|e| e.1).fold(0.0, f64::max)
    }
}

fn rel_vec(lhs: AlbertElement, rhs: AlbertElement) -> f64 {
    (lhs - rhs).norm() / (1.0 + lhs.norm() + rhs.norm())
}

fn rel_scalar(lhs: C64, rhs: C64) -> f64 {
    (lhs - rhs).norm() / (1.0 + lhs.norm() + rhs.norm())
}

pub fn cubic_identity_residuals(a: &AlbertElement, b: &AlbertElement, c: &AlbertElement) -> CubicResiduals {
    let (a, b, c) = (*a, *b, *c);
    let a_s = a.sharp();
    let b_s = b.sharp();
    let det_a = a.det();
    let det_b = b.det();
    let axb = a.cross(&b);
    let axc = a.cross(&c);
    let asb = a_s.dot(&b);
    let asc = a_s.dot(&c);
    CubicResiduals {
        sharp_sharp: rel_vec(a_s.sharp(), a.scale(det_a)),
        det_sharp: rel_scalar(a_s.det(), det_a * det_a),
        det_trace: rel_scalar(det_a, a_s.dot(&a) / 3.0),
        sharp_cross: rel_vec(a_s.cross(&axb), b.scale(det_a) + a.scale(asb)),
        cross_pairing: rel_scalar(axb.dot(&a_s.cross(&c)), det_a * b.dot(&c) + asb * a.dot(&c)),
        cross_sharp_cross: rel_vec(a.cross(&a_s.cross(&c)), c.scale(det_a) + a_s.scale(a.dot(&c))),
        cross_cross: rel_vec(axb.cross(&axc) + a_s.cross(&b.cross(&c)), c.scale(asb) + b.scale(asc) + a.scale(axb.dot(&c))),
        cross_cross_mixed: rel_vec(
            a.cross(&axb.cross(&c)) + b.cross(&a_s.cross(&c)),
            c.scale(asb) + a_s.scale(b.dot(&c)) + axb.scale(a.dot(&c)),
        ),
        sharp_sum: rel_vec(a_s.cross(&b_s) + axb.sharp(), b.scale(asb) + a.scale(b_s.dot(&a))),
        mixed_pairing: rel_scalar(a.cross(&b_s).dot(&a_s.cross(&b)), det_a * det_b * 3.0 + a.dot(&b) * a_s.dot(&b_s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::c;

    fn oct(seed: u64) -> Octonion {
        // small deterministic generator, enough for fixed examples
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        Octonion([(); 8].map(|_| c(next(), next())))
    }

    fn elem(seed: u64) -> AlbertElement {
        let d = oct(seed);
        AlbertElement { alpha: [d.0[0], d.0[1], d.0[2]], a: [oct(seed + 1), oct(seed + 2), oct(seed + 3)] }
    }

    fn close(a: AlbertElement, b: AlbertElement) -> bool {
        (a - b).norm() < 1e-12 * (1.0 + a.norm())
    }

    #[test]
    fn coords_round_trip() {
        let x = elem(3);
        assert_eq!(AlbertElement::from_coords(&x.to_coords()), x);
    }

    #[test]
    fn hermitian_products() {
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { ONE } else { ZERO };
                assert_eq!(AlbertElement::e(i).hdot(&AlbertElement::e(j)), want);
            }
        }
        let s = AlbertElement::e(0) + AlbertElement::e(1);
        assert_eq!(s.hdot(&s), c(2.0, 0.0));
        let b = oct(11);
        let f = AlbertElement::f(1, b);
        assert!((f.hdot(&f) - b.hdot(&b)).norm() < 1e-14);
        let x = elem(5);
        let y = elem(9);
        assert!((x.hdot(&y) - y.hdot(&x).conj()).norm() < 1e-13);
        assert!(x.hdot(&x).re > 0.0);
    }

    #[test]
    fn sharp_examples() {
        assert_eq!(AlbertElement::diag_re([1.0, 2.0, 3.0]).sharp(), AlbertElement::diag_re([6.0, 3.0, 2.0]));
        assert_eq!(AlbertElement::e(0).sharp(), AlbertElement::ZERO);
        let x = elem(21);
        assert!(close(x.sharp().sharp(), x.scale(x.det())));
    }

    #[test]
    fn cross_matches_polarized_sharp() {
        let x = elem(1);
        let y = elem(7);
        let polar = (x + y).sharp() - x.sharp() - y.sharp();
        assert!(close(x.cross(&y), polar));
        assert!(close(x.cross(&x), x.sharp().scale_re(2.0)));
        assert_eq!(x.cross(&y), y.cross(&x));
    }

    #[test]
    fn multiplication_table() {
        let e = AlbertElement::e;
        let f = AlbertElement::f;
        for (i, j, k) in EVEN {
            assert_eq!(e(i).cross(&e(j)), e(k));
        }
        let a = oct(31);
        let b = oct(41);
        for i in 0..3 {
            assert!(close(e(i).cross(&f(i, b)), -f(i, b)));
            assert!(close(e(i).cross(&f((i + 1) % 3, b)), AlbertElement::ZERO));
            assert!(close(f(i, a).cross(&f(i, b)), -e(i).scale(a.dot(&b))));
        }
        for (i, j, k) in EVEN {
            assert!(close(f(i, a).cross(&f(j, b)), f(k, (a * b).tilde())));
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(AlbertElement::diag_re([1.0, 2.0, 3.0]).det(), c(6.0, 0.0));
        assert_eq!((AlbertElement::e(0) + AlbertElement::e(1)).det(), ZERO);
        let x = elem(13);
        assert!((x.det() - x.sharp().dot(&x) / 3.0).norm() < 1e-12 * (1.0 + x.det().norm()));
        assert!((x.sharp().det() - x.det() * x.det()).norm() < 1e-12 * (1.0 + x.det().norm_sqr()));
    }

    #[test]
    fn trilinear_symmetry() {
        let e = AlbertElement::e;
        assert_eq!(trilinear(&e(0), &e(1), &e(2)), ONE);
        let (a, b, cc) = (elem(2), elem(6), elem(10));
        let t = trilinear(&a, &b, &cc);
        for v in [
            trilinear(&a, &cc, &b),
            trilinear(&b, &a, &cc),
            trilinear(&b, &cc, &a),
            trilinear(&cc, &a, &b),
            trilinear(&cc, &b, &a),
        ] {
            assert!((v - t).norm() < 1e-12 * (1.0 + t.norm()));
        }
        assert!((trilinear(&a, &a, &a) - a.det() * 6.0).norm() < 1e-12 * (1.0 + a.det().norm()));
    }

    #[test]
    fn cubic_identities_hold() {
        let z = AlbertElement::ZERO;
        assert_eq!(cubic_identity_residuals(&z, &z, &z).max(), 0.0);
        let a = elem(100);
        let r = cubic_identity_residuals(&a, &elem(200), &elem(300));
        assert!(r.max() < 1e-12, "{r:?}");
        let r = cubic_identity_residuals(&a, &a, &elem(7));
        assert!(r.sharp_sum < 1e-12);
    }

    #[test]
    fn conjugation_compatibility() {
        let x = elem(77);
        assert!(close(x.bar().sharp(), x.sharp().bar()));
        assert!((x.bar().det() - x.det().conj()).norm() < 1e-13);
    }
}
