//! Projective compactifications: the Freudenthal manifold
//! `M = {[lambda, x, y, mu] : y# = mu x, x# = lambda y, (x:y) = 3 lambda mu}`
//! for the Albert space and the cone `P = {[z] : z# = 0}` for `W`.

use alloc::vec::Vec;

use crate::albert::AlbertElement;
use crate::cayley::Octonion;
use crate::error::{Error, Result};
use crate::linear::{Tolerances, C64, ONE, ZERO};
use crate::type_v::WElement;

/// Homogeneous coordinates in `P(C + V + V + C)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreudenthalPoint {
    pub lambda: C64,
    pub x: AlbertElement,
    pub y: AlbertElement,
    pub mu: C64,
}

impl FreudenthalPoint {
    /// `j(x) = [1, x, x#, det x]`.
    pub fn embed(x: &AlbertElement) -> Self {
        Self { lambda: ONE, x: *x, y: x.sharp(), mu: x.det() }
    }

    /// `|y# - mu x|`, `|x# - lambda y|`, `|(x:y) - 3 lambda mu|`.
    pub fn residuals(&self) -> [f64; 3] {
        [
            (self.y.sharp() - self.x.scale(self.mu)).norm(),
            (self.x.sharp() - self.y.scale(self.lambda)).norm(),
            (self.x.dot(&self.y) - self.lambda * self.mu * 3.0).norm(),
        ]
    }

    /// Largest block norm.
    pub fn scale_norm(&self) -> f64 {
        self.lambda.norm().max(self.x.norm()).max(self.y.norm()).max(self.mu.norm())
    }

    pub fn is_member(&self, tol: &Tolerances) -> bool {
        let s = self.scale_norm();
        s > 0.0 && self.residuals().iter().all(|r| *r < tol.cls * s * s)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { lambda: self.lambda * s, x: self.x.scale(s), y: self.y.scale(s), mu: self.mu * s }
    }

    fn flat(&self) -> Vec<C64> {
        let mut v = Vec::with_capacity(56);
        v.push(self.lambda);
        v.extend_from_slice(&self.x.to_coords());
        v.extend_from_slice(&self.y.to_coords());
        v.push(self.mu);
        v
    }

    /// Equality in projective space: both points are divided by their
    /// coordinate at the position where `self` is largest.
    pub fn projectively_equal(&self, other: &Self, tol: f64) -> bool {
        let (p, q) = (self.flat(), other.flat());
        let Some((i, _)) = p.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())) else {
            return false;
        };
        let qmax = q.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if p[i].norm() == 0.0 || q[i].norm() <= tol * qmax {
            return false;
        }
        let (pi, qi) = (p[i], q[i]);
        p.iter().zip(&q).all(|(a, b)| (a / pi - b / qi).norm() <= tol)
    }
}

/// Result of leaving homogeneous coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Chart {
    Finite(AlbertElement),
    AtInfinity,
}

pub fn dehomogenize(p: &FreudenthalPoint) -> Result<Chart> {
    dehomogenize_with(p, &Tolerances::DEFAULT)
}

pub fn dehomogenize_with(p: &FreudenthalPoint, tol: &Tolerances) -> Result<Chart> {
    if !p.is_member(tol) {
        let s = p.scale_norm().max(f64::MIN_POSITIVE);
        let worst = p.residuals().iter().copied().fold(0.0, f64::max);
        return Err(Error::NotOnManifold { residual: worst / (s * s) });
    }
    if p.lambda.norm() <= tol.cls * p.scale_norm() {
        return Ok(Chart::AtInfinity);
    }
    let x = p.x.scale(ONE / p.lambda);
    let back = FreudenthalPoint::embed(&x);
    if !back.projectively_equal(p, tol.cls) {
        let r = (back.y.scale(p.lambda) - p.y).norm() / p.scale_norm();
        return Err(Error::ChartMismatch { residual: r });
    }
    Ok(Chart::Finite(x))
}

/// Point `[z]` of the rank-one cone, `z# = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankOnePoint {
    pub z: AlbertElement,
}

impl RankOnePoint {
    /// `j(x) = [e_1 + x - e_1 x x#]`.
    pub fn embed(x: &WElement) -> Self {
        let e1 = AlbertElement::e(0);
        Self { z: e1 + x.embed() - e1.cross(&x.sharp()) }
    }

    pub fn residual(&self) -> f64 {
        self.z.sharp().norm()
    }
}

/// Cone membership with chart data for `(z:e_1) != 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConeMembership {
    /// `|z#|` after normalizing `z` to unit norm.
    pub residual: f64,
    pub in_chart: bool,
    pub x: Option<WElement>,
}

pub fn p_membership(z: &AlbertElement) -> Result<ConeMembership> {
    p_membership_with(z, &Tolerances::DEFAULT)
}

pub fn p_membership_with(z: &AlbertElement, tol: &Tolerances) -> Result<ConeMembership> {
    let n = z.norm();
    if !(n > 0.0) || !z.is_finite() {
        return Err(Error::NonFinite);
    }
    let unit = z.scale_re(1.0 / n);
    let residual = unit.sharp().norm();
    if residual >= tol.cls {
        return Err(Error::NotOnManifold { residual });
    }
    let lead = unit.alpha[0];
    if lead.norm() <= tol.cls {
        return Ok(ConeMembership { residual, in_chart: false, x: None });
    }
    let zn = z.scale(ONE / z.alpha[0]);
    let x = WElement::new(zn.a[1], zn.a[2]);
    let want = -AlbertElement::e(0).cross(&x.sharp());
    let got = AlbertElement { alpha: [ZERO, zn.alpha[1], zn.alpha[2]], a: [zn.a[0], Octonion::ZERO, Octonion::ZERO] };
    let mismatch = (got - want).norm();
    if mismatch > tol.cls * (1.0 + zn.norm()) {
        return Err(Error::ChartMismatch { residual: mismatch });
    }
    Ok(ConeMembership { residual, in_chart: true, x: Some(x) })
}
