//! The 16-dimensional subsystem `W = F_2 + F_3 = V_1(e_1)` of the Albert space.
//!
//! Quadratic map and triple product are evaluated by octonion formulas in
//! `(b, c)` coordinates; the ambient operations serve as the reference.

use alloc::vec::Vec;

// Needed without std; unused when std is linked and f64 has inherent methods.
#[allow(unused_imports)]
use num_traits::Float;

use crate::albert::AlbertElement;
use crate::cayley::Octonion;
use crate::error::{Error, Result};
use crate::jts::{singular_values, MinimalPolynomial};
use crate::linear::{orthonormal_basis, Dense, Tolerances, C64, ZERO};
use crate::tripotents::{rank_from_invariants, InvolutionSplit, PeirceDecomposition, TripotentCertificate};

pub const DIM: usize = 16;

/// `x = F_2(b) + F_3(c)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WElement {
    pub b: Octonion,
    pub c: Octonion,
}

impl WElement {
    pub const ZERO: WElement = WElement { b: Octonion::ZERO, c: Octonion::ZERO };

    pub fn new(b: Octonion, c: Octonion) -> Self {
        Self { b, c }
    }

    pub fn embed(&self) -> AlbertElement {
        AlbertElement { alpha: [ZERO; 3], a: [Octonion::ZERO, self.b, self.c] }
    }

    /// Inverse of [`embed`](Self::embed); fails if the diagonal or `F_1`
    /// part carries more than `cls (1 + |a|)` of mass.
    pub fn restrict(a: &AlbertElement) -> Result<Self> {
        Self::restrict_with(a, &Tolerances::DEFAULT)
    }

    pub fn restrict_with(a: &AlbertElement, tol: &Tolerances) -> Result<Self> {
        let outside = AlbertElement { alpha: a.alpha, a: [a.a[0], Octonion::ZERO, Octonion::ZERO] };
        let mass = outside.norm();
        if !(mass <= tol.cls * (1.0 + a.norm())) {
            return Err(Error::OutOfSubspace { mass });
        }
        Ok(Self { b: a.a[1], c: a.a[2] })
    }

    pub fn to_coords(&self) -> [C64; DIM] {
        let mut v = [ZERO; DIM];
        v[..8].copy_from_slice(&self.b.0);
        v[8..].copy_from_slice(&self.c.0);
        v
    }

    pub fn from_coords(v: &[C64]) -> Self {
        let mut x = Self::ZERO;
        x.b.0.copy_from_slice(&v[..8]);
        x.c.0.copy_from_slice(&v[8..16]);
        x
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { b: self.b + o.b, c: self.c + o.c }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { b: self.b - o.b, c: self.c - o.c }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { b: self.b.scale(s), c: self.c.scale(s) }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn bar(&self) -> Self {
        Self { b: self.b.bar(), c: self.c.bar() }
    }

    pub fn hdot(&self, o: &Self) -> C64 {
        self.b.hdot(&o.b) + self.c.hdot(&o.c)
    }

    pub fn norm(&self) -> f64 {
        self.hdot(self).re.max(0.0).sqrt()
    }

    /// `x# = -n(b) e_2 - n(c) e_3 + F_1((bc)~)`, which lies in `V_0(e_1)`.
    pub fn sharp(&self) -> AlbertElement {
        let mut s = AlbertElement::ZERO;
        s.alpha[1] = -self.b.norm();
        s.alpha[2] = -self.c.norm();
        s.a[0] = (self.b * self.c).tilde();
        s
    }

    pub fn is_finite(&self) -> bool {
        self.to_coords().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

fn tb(o: &Octonion) -> Octonion {
    o.bar().tilde()
}

/// Quadratic map of `W` in `(b, c)` coordinates.
pub fn q_apply_w(x: &WElement, y: &WElement) -> WElement {
    let (x2, x3) = (x.b, x.c);
    let (y2, y3) = (y.bar().b, y.bar().c);
    let b = (x2 * tb(&y.b)) * x2 + (x2 * y3) * x3.tilde();
    let c = x2.tilde() * (y2 * x3) + (x3 * tb(&y.c)) * x3;
    WElement { b, c }
}

/// Triple product of `W` in `(b, c)` coordinates.
pub fn triple_w(x: &WElement, y: &WElement, z: &WElement) -> WElement {
    let (x2, x3, z2, z3) = (x.b, x.c, z.b, z.c);
    let (y2b, y3b) = (y.b.bar(), y.c.bar());
    let (y2t, y3t) = (tb(&y.b), tb(&y.c));
    let b = (x2 * y2t) * z2 + (z2 * y2t) * x2 + (x2 * y3b) * z3.tilde() + (z2 * y3b) * x3.tilde();
    let c = x2.tilde() * (y2b * z3) + z2.tilde() * (y2b * x3) + x3 * (y3t * z3) + z3 * (y3t * x3);
    WElement { b, c }
}

fn basis(i: usize) -> WElement {
    let mut v = [ZERO; DIM];
    v[i] = C64::new(1.0, 0.0);
    WElement::from_coords(&v)
}

/// Matrix of `z -> {x y z}` on `W`.
pub fn d_operator_w(x: &WElement, y: &WElement) -> Dense {
    Dense::from_columns(DIM, DIM, |j| triple_w(x, y, &basis(j)).to_coords().to_vec())
}

/// `A(x)` with `Q(x) y = A(x) conj(y)` on `W`.
pub fn q_matrix_w(x: &WElement) -> Dense {
    Dense::from_columns(DIM, DIM, |j| q_apply_w(x, &basis(j)).to_coords().to_vec())
}

pub fn bergman_operator_w(x: &WElement, y: &WElement) -> Dense {
    let qq = &q_matrix_w(x) * &q_matrix_w(y).conj();
    &(&Dense::identity(DIM) - &d_operator_w(x, y)) + &qq
}

/// `m_W(T; x, y) = T^2 - (x|y) T + (x#|y#)`.
pub fn minimal_polynomial_w(x: &WElement, y: &WElement) -> MinimalPolynomial {
    MinimalPolynomial::quadratic(x.hdot(y), x.sharp().hdot(&y.sharp()))
}

/// Number of nonzero singular values counted with multiplicity.
pub fn rank_w(x: &WElement) -> usize {
    rank_w_with(x, &Tolerances::DEFAULT)
}

pub fn rank_w_with(x: &WElement, tol: &Tolerances) -> usize {
    let roots = minimal_polynomial_w(x, x).real_roots();
    singular_values(&roots, tol).0.iter().map(|c| c.1).sum()
}

pub fn classify_tripotent_w(x: &WElement) -> Result<TripotentCertificate<WElement>> {
    classify_tripotent_w_with(x, &Tolerances::DEFAULT)
}

pub fn classify_tripotent_w_with(x: &WElement, tol: &Tolerances) -> Result<TripotentCertificate<WElement>> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = x.norm();
    let residual = triple_w(x, x, x).sub(&x.scale_re(2.0)).norm();
    if residual >= tol.cls * (1.0 + n * n * n) {
        return Err(Error::NotATripotent { residual });
    }
    let s = x.sharp();
    // det vanishes identically on W
    let invariants = [x.hdot(x).re, s.hdot(&s).re, 0.0];
    let rank = rank_from_invariants(invariants, 2, tol)?;
    Ok(TripotentCertificate { element: *x, rank, residual, invariants })
}

pub fn peirce_w(e: &WElement) -> Result<PeirceDecomposition> {
    PeirceDecomposition::from_d(&d_operator_w(e, e))
}

pub fn q_involution_split_w(e: &WElement) -> Result<InvolutionSplit> {
    crate::tripotents::involution_split_from(&q_matrix_w(e), &peirce_w(e)?)
}

/// Orthonormal (coordinate) bases of `ker L(beta)` and `ker L(conj beta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSplit {
    pub ker: Vec<Octonion>,
    pub ker_bar: Vec<Octonion>,
}

/// Checks `(beta|beta) = 1` and `n(beta) = 0`.
pub fn check_null_unit(beta: &Octonion, tol: &Tolerances) -> Result<()> {
    let h = beta.hdot(beta);
    let n = beta.norm();
    if (h - C64::new(1.0, 0.0)).norm() > tol.cls || n.norm() > tol.cls {
        return Err(Error::NotNullUnit { hermitian: h.re, norm: n.norm() });
    }
    Ok(())
}

fn image_basis(m: &Dense) -> Vec<Octonion> {
    let cols: Vec<Vec<C64>> = (0..8).map(|j| m.column(j)).collect();
    orthonormal_basis(&cols, 1e-10)
        .into_iter()
        .map(|v| {
            let mut o = Octonion::ZERO;
            o.0.copy_from_slice(&v);
            o
        })
        .collect()
}

/// `ker L(beta) = Im L(~beta)` and likewise for `conj beta`.
pub fn kernel_split(beta: &Octonion) -> Result<KernelSplit> {
    check_null_unit(beta, &Tolerances::DEFAULT)?;
    Ok(KernelSplit {
        ker: image_basis(&beta.tilde().left_mult_operator()),
        ker_bar: image_basis(&beta.bar().tilde().left_mult_operator()),
    })
}
