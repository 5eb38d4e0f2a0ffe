//! Composition algebras by the Cayley-Dickson doubling process.
//!
//! [`CompositionElement`] is the general model: any chain of extension
//! parameters over the real or complex field, with the basis of level `n`
//! laid out as `(B, vB)`. [`Octonion`] is the fixed complex octonion algebra
//! with `mu = (-1, -1, -1)` used by the Jordan triple systems; its
//! multiplication table is derived from the same doubling rule.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

// Needed without std; unused when std is linked and f64 has inherent methods.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linear::{c, Dense, C64, ONE, ZERO};

/// Highest doubling level supported. Level 4 (dimension 16) is no longer
/// alternative and is kept as the witness that the process stops at 8.
pub const MAX_LEVEL: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarField {
    Real,
    Complex,
}

/// Ground field plus the extension parameters `mu_1, ..., mu_level`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSignature {
    field: ScalarField,
    mu: Vec<f64>,
}

impl AlgebraSignature {
    pub fn new(field: ScalarField, mu: &[f64]) -> Result<Self> {
        if mu.len() > MAX_LEVEL {
            return Err(Error::DimensionMismatch { expected: MAX_LEVEL, found: mu.len() });
        }
        if mu.iter().any(|m| *m == 0.0 || !m.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { field, mu: mu.to_vec() })
    }

    /// All parameters `-1`: positive definite norm over the reals.
    pub fn compact(field: ScalarField, level: usize) -> Self {
        Self { field, mu: vec![-1.0; level.min(MAX_LEVEL)] }
    }

    /// All parameters `+1`: split forms.
    pub fn split(field: ScalarField, level: usize) -> Self {
        Self { field, mu: vec![1.0; level.min(MAX_LEVEL)] }
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn level(&self) -> usize {
        self.mu.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.mu.len()
    }

    /// Diagonal of the norm form in the doubling basis: `n(a + vb) = n(a) - mu n(b)`.
    pub fn norm_weights(&self) -> Vec<f64> {
        let mut w = vec![1.0];
        for &m in &self.mu {
            let tail: Vec<f64> = w.iter().map(|x| -m * x).collect();
            w.extend(tail);
        }
        w
    }
}

/// Element of a Cayley-Dickson algebra; coordinate 0 is the unit.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionElement {
    sig: AlgebraSignature,
    coords: Vec<C64>,
}

impl CompositionElement {
    pub fn new(sig: AlgebraSignature, coords: Vec<C64>) -> Result<Self> {
        if coords.len() != sig.dim() {
            return Err(Error::DimensionMismatch { expected: sig.dim(), found: coords.len() });
        }
        if coords.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if sig.field == ScalarField::Real && coords.iter().any(|z| z.im != 0.0) {
            return Err(Error::NotReal);
        }
        Ok(Self { sig, coords })
    }

    pub fn from_real(sig: AlgebraSignature, coords: &[f64]) -> Result<Self> {
        Self::new(sig, coords.iter().map(|&x| c(x, 0.0)).collect())
    }

    pub fn zero(sig: &AlgebraSignature) -> Self {
        Self { coords: vec![ZERO; sig.dim()], sig: sig.clone() }
    }

    pub fn unit(sig: &AlgebraSignature) -> Self {
        Self::basis(sig, 0)
    }

    pub fn basis(sig: &AlgebraSignature, i: usize) -> Self {
        let mut e = Self::zero(sig);
        e.coords[i] = ONE;
        e
    }

    pub fn signature(&self) -> &AlgebraSignature {
        &self.sig
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(())
    }

    fn with_coords(&self, coords: Vec<C64>) -> Self {
        Self { sig: self.sig.clone(), coords }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coords(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coords(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, s: C64) -> Self {
        self.with_coords(self.coords.iter().map(|a| a * s).collect())
    }

    /// `(a1 + v b1)(a2 + v b2) = a1 a2 + mu b2 ~b1 + v(~a1 b2 + a2 b1)`.
    pub fn cd_multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coords(mul_rec(&self.coords, &other.coords, &self.sig.mu)))
    }

    /// Cayley conjugation `(a + vb)~ = ~a - vb`.
    pub fn conjugate(&self) -> Self {
        self.with_coords(conj_rec(&self.coords))
    }

    /// Coordinatewise complex conjugation.
    pub fn bar(&self) -> Self {
        self.with_coords(self.coords.iter().map(|z| z.conj()).collect())
    }

    pub fn norm(&self) -> C64 {
        self.sig.norm_weights().iter().zip(&self.coords).map(|(w, a)| a * a * *w).sum()
    }

    /// `(a:b) = n(a+b) - n(a) - n(b)`.
    pub fn bilinear(&self, other: &Self) -> Result<C64> {
        self.check(other)?;
        Ok(self.sig.norm_weights().iter().zip(self.coords.iter().zip(&other.coords)).map(|(w, (a, b))| a * b * (2.0 * w)).sum())
    }

    /// `t(a) = (a:e)`.
    pub fn trace(&self) -> C64 {
        self.coords[0] * 2.0
    }

    /// Euclidean length of the coordinate vector, used to scale residuals.
    pub fn coord_norm(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `[x, y] = xy - yx`.
    pub fn commutator(&self, y: &Self) -> Result<Self> {
        self.cd_multiply(y)?.sub(&y.cd_multiply(self)?)
    }

    /// `[x, y, z] = x(yz) - (xy)z`.
    pub fn associator(&self, y: &Self, z: &Self) -> Result<Self> {
        self.cd_multiply(&y.cd_multiply(z)?)?.sub(&self.cd_multiply(y)?.cd_multiply(z)?)
    }
}

fn mul_rec(a: &[C64], b: &[C64], mu: &[f64]) -> Vec<C64> {
    let Some((&m, lower)) = mu.split_last() else {
        return vec![a[0] * b[0]];
    };
    let h = a.len() / 2;
    let (a1, b1) = a.split_at(h);
    let (a2, b2) = b.split_at(h);
    let first = mul_rec(a1, a2, lower);
    let cross = mul_rec(b2, &conj_rec(b1), lower);
    let left = mul_rec(&conj_rec(a1), b2, lower);
    let right = mul_rec(a2, b1, lower);
    let mut out: Vec<C64> = first.iter().zip(&cross).map(|(x, y)| x + y * m).collect();
    out.extend(left.iter().zip(&right).map(|(x, y)| x + y));
    out
}

fn conj_rec(a: &[C64]) -> Vec<C64> {
    let mut out: Vec<C64> = a.iter().map(|z| -z).collect();
    out[0] = a[0];
    out
}

/// Residual norms of the left, right and central Moufang identities
/// `a(x(ay)) = (axa)y`, `((xa)y)a = x(aya)`, `(ax)(ya) = a(xy)a`.
pub fn moufang_residuals(a: &CompositionElement, x: &CompositionElement, y: &CompositionElement) -> Result<[f64; 3]> {
    let ay = a.cd_multiply(y)?;
    let xa = x.cd_multiply(a)?;
    let axa = a.cd_multiply(&xa)?;
    let left = a.cd_multiply(&x.cd_multiply(&ay)?)?.sub(&axa.cd_multiply(y)?)?;
    let ya = y.cd_multiply(a)?;
    let aya = a.cd_multiply(&ya)?;
    let right = xa.cd_multiply(y)?.cd_multiply(a)?.sub(&x.cd_multiply(&aya)?)?;
    let axy = a.cd_multiply(&x.cd_multiply(y)?)?.cd_multiply(a)?;
    let central = a.cd_multiply(x)?.cd_multiply(&ya)?.sub(&axy)?;
    Ok([left.coord_norm(), right.coord_norm(), central.coord_norm()])
}

const fn conj_sign(k: usize) -> i8 {
    if k == 0 {
        1
    } else {
        -1
    }
}

// Basis product e_i e_j = sign * e_k in the compact octonions, by the
// doubling rule applied to basis vectors.
const fn basis_product(i: usize, j: usize, level: usize) -> (i8, usize) {
    if level == 0 {
        return (1, 0);
    }
    let h = 1 << (level - 1);
    match (i < h, j < h) {
        (true, true) => basis_product(i, j, level - 1),
        (true, false) => {
            let (s, k) = basis_product(i, j - h, level - 1);
            (conj_sign(i) * s, h + k)
        }
        (false, true) => {
            let (s, k) = basis_product(j, i - h, level - 1);
            (s, h + k)
        }
        (false, false) => {
            // mu = -1
            let (s, k) = basis_product(j - h, i - h, level - 1);
            (-conj_sign(i - h) * s, k)
        }
    }
}

const fn octonion_table() -> [[(i8, usize); 8]; 8] {
    let mut t = [[(0i8, 0usize); 8]; 8];
    let mut i = 0;
    while i < 8 {
        let mut j = 0;
        while j < 8 {
            t[i][j] = basis_product(i, j, 3);
            j += 1;
        }
        i += 1;
    }
    t
}

/// `OCTONION_TABLE[i][j] = (s, k)` means `e_i e_j = s e_k`.
pub const OCTONION_TABLE: [[(i8, usize); 8]; 8] = octonion_table();

/// Complex octonion `C (x) O_c` over the compact basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Octonion(pub [C64; 8]);

impl Octonion {
    pub const ZERO: Octonion = Octonion([ZERO; 8]);

    pub fn unit() -> Self {
        Self::basis(0)
    }

    pub fn basis(i: usize) -> Self {
        let mut o = Self::ZERO;
        o.0[i] = ONE;
        o
    }

    pub fn from_real(x: [f64; 8]) -> Self {
        Self(x.map(|v| c(v, 0.0)))
    }

    pub fn scalar(s: C64) -> Self {
        let mut o = Self::ZERO;
        o.0[0] = s;
        o
    }

    /// Cayley conjugate `~a`, complex linear.
    pub fn tilde(&self) -> Self {
        let mut o = self.map(|z| -z);
        o.0[0] = self.0[0];
        o
    }

    /// Complex conjugate with respect to the real form, antilinear.
    pub fn bar(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self(self.0.map(f))
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    /// Quadratic norm `n(a) = a ~a`, complex bilinear.
    pub fn norm(&self) -> C64 {
        self.0.iter().map(|z| z * z).sum()
    }

    /// `(a:b)`, with `(a:a) = 2 n(a)`.
    pub fn dot(&self, other: &Self) -> C64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum::<C64>() * 2.0
    }

    /// Hermitian product `(a|b) = (a : conj b)`.
    pub fn hdot(&self, other: &Self) -> C64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b.conj()).sum::<C64>() * 2.0
    }

    pub fn trace(&self) -> C64 {
        self.0[0] * 2.0
    }

    pub fn coord_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_composition(&self) -> CompositionElement {
        CompositionElement { sig: AlgebraSignature::compact(ScalarField::Complex, 3), coords: self.0.to_vec() }
    }

    pub fn from_composition(a: &CompositionElement) -> Result<Self> {
        if a.sig != AlgebraSignature::compact(ScalarField::Complex, 3) && a.sig != AlgebraSignature::compact(ScalarField::Real, 3)
        {
            return Err(Error::SignatureMismatch);
        }
        let mut o = Self::ZERO;
        o.0.copy_from_slice(&a.coords);
        Ok(o)
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    /// Matrix of `x -> beta x` in the standard basis.
    pub fn left_mult_operator(&self) -> Dense {
        Dense::from_columns(8, 8, |j| (*self * Octonion::basis(j)).0.to_vec())
    }

    /// Matrix of `x -> x beta`.
    pub fn right_mult_operator(&self) -> Dense {
        Dense::from_columns(8, 8, |j| (Octonion::basis(j) * *self).0.to_vec())
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        let mut out = [ZERO; 8];
        for (i, a) in self.0.iter().enumerate() {
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                let (s, k) = OCTONION_TABLE[i][j];
                let p = a * b;
                if s > 0 {
                    out[k] += p;
                } else {
                    out[k] -= p;
                }
            }
        }
        Octonion(out)
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        let mut o = self;
        for (a, b) in o.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        o
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        let mut o = self;
        for (a, b) in o.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
        o
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        self.map(|z| -z)
    }
}

/// The null vector `beta = (e_0 + i e_1)/2`: `(beta|beta) = 1`, `n(beta) = 0`.
pub fn default_null_unit() -> Octonion {
    let mut b = Octonion::ZERO;
    b.0[0] = c(0.5, 0.0);
    b.0[1] = c(0.0, 0.5);
    b
}

/// `b1 + i b2` for real octonions with `n(b1) = n(b2) = 1/4` and
/// `(b1:b2) = 0`, built from two arbitrary real directions.
pub fn null_unit_from_real_pair(u: [f64; 8], v: [f64; 8]) -> Option<Octonion> {
    let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nu == 0.0 {
        return None;
    }
    let u: [f64; 8] = u.map(|x| x / nu);
    let proj: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
    let mut w = v;
    for (wi, ui) in w.iter_mut().zip(&u) {
        *wi -= proj * ui;
    }
    let nw = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nw < 1e-8 {
        return None;
    }
    let mut b = Octonion::ZERO;
    for k in 0..8 {
        b.0[k] = c(0.5 * u[k], 0.5 * w[k] / nw);
    }
    Some(b)
}
