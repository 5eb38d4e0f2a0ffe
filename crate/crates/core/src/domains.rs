//! Bounded symmetric domains of the Albert space (dimension 27) and of `W`
//! (dimension 16): membership, boundary strata, stratum projection.
//!
//! A point is classified twice. The primary verdict counts roots of
//! `m(T; x, x)` at 1; the secondary one reads the signs of
//! `f_k = m^(k-1)(1) / (k-1)!`. Disagreement lowers the confidence.

use alloc::vec::Vec;

// Needed without std; unused when std is linked and f64 has inherent methods.
#[allow(unused_imports)]
use num_traits::Float;

use crate::albert::AlbertElement;
use crate::error::{Error, Result};
use crate::jts::{minimal_polynomial, rank, spectral_decompose_with, MinimalPolynomial};
use crate::linear::{Tolerances, C64};
use crate::tripotents::{is_maximal_frame_element_with, peirce, q_involution_split, PeirceDecomposition};
use crate::type_v::{minimal_polynomial_w, peirce_w, q_involution_split_w, WElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    /// Stratum `k`: exactly `k` roots equal 1.
    Boundary(usize),
    Exterior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Confidence {
    High,
    Low,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DomainVerdict {
    pub location: Location,
    /// `f_1, ..., f_r`.
    pub f: Vec<f64>,
    /// Roots of `m(T; x, x)`, decreasing.
    pub roots: Vec<f64>,
    /// Distance to 1 of the closest root not counted as a unit root.
    pub margin: Option<f64>,
    pub confidence: Confidence,
}

/// `f_k = m^(k-1)(1) / (k-1)!` for `k = 1..=degree`.
pub fn inequality_values(m: &MinimalPolynomial) -> Vec<f64> {
    let [s1, s2, s3] = m.coeffs().map(|c| c.re);
    match m.degree() {
        3 => alloc::vec![1.0 - s1 + s2 - s3, 3.0 - 2.0 * s1 + s2, 3.0 - s1],
        _ => alloc::vec![1.0 - s1 + s2, 2.0 - s1],
    }
}

/// `(f_1, f_2, f_3)` for the Albert space.
pub fn inequality_values_v(x: &AlbertElement) -> [f64; 3] {
    let s = x.sharp();
    let (n, ns, d) = (x.hdot(x).re, s.hdot(&s).re, x.det().norm_sqr());
    [1.0 - n + ns - d, 3.0 - 2.0 * n + ns, 3.0 - n]
}

/// `(g_1, g_2)` for `W`.
pub fn inequality_values_w(x: &WElement) -> [f64; 2] {
    let s = x.sharp();
    let (n, ns) = (x.hdot(x).re, s.hdot(&s).re);
    [1.0 - n + ns, 2.0 - n]
}

fn locate_by_roots(roots: &[f64], tol: f64) -> (Location, Option<f64>) {
    let unit = roots.iter().filter(|m| (**m - 1.0).abs() <= tol).count();
    let margin = roots
        .iter()
        .map(|m| (m - 1.0).abs())
        .filter(|d| *d > tol)
        .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |a| a.min(d))));
    let loc = if roots.iter().any(|m| *m > 1.0 + tol) {
        Location::Exterior
    } else if unit == 0 {
        Location::Interior
    } else {
        Location::Boundary(unit)
    };
    (loc, margin)
}

/// Classification from the signs of the `f_k` alone.
pub fn locate_by_inequalities(f: &[f64], tol: f64) -> Location {
    let k = f.iter().take_while(|v| v.abs() <= tol).count();
    if f[k..].iter().all(|v| *v > tol) {
        if k == 0 {
            Location::Interior
        } else {
            Location::Boundary(k)
        }
    } else {
        Location::Exterior
    }
}

pub fn classify_polynomial(m: &MinimalPolynomial, tol: &Tolerances) -> DomainVerdict {
    let roots = m.real_roots();
    let f = inequality_values(m);
    let (location, margin) = locate_by_roots(&roots, tol.cls);
    let agree = locate_by_inequalities(&f, tol.cls) == location;
    let close = margin.is_some_and(|d| d < 10.0 * tol.cls);
    let confidence = if agree && !close { Confidence::High } else { Confidence::Low };
    DomainVerdict { location, f, roots, margin, confidence }
}

pub fn classify_v(x: &AlbertElement) -> DomainVerdict {
    classify_v_with(x, &Tolerances::DEFAULT)
}

pub fn classify_v_with(x: &AlbertElement, tol: &Tolerances) -> DomainVerdict {
    classify_polynomial(&minimal_polynomial(x, x), tol)
}

pub fn classify_w(x: &WElement) -> DomainVerdict {
    classify_w_with(x, &Tolerances::DEFAULT)
}

pub fn classify_w_with(x: &WElement, tol: &Tolerances) -> DomainVerdict {
    classify_polynomial(&minimal_polynomial_w(x, x), tol)
}

/// `x = e + y` with `e` a rank `k` tripotent and `y` in the open unit ball of `V_0(e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StratumProjection {
    pub stratum: usize,
    pub e: AlbertElement,
    pub y: AlbertElement,
    /// `|(P_1 + P_2) y|` for the Peirce projectors of `e`.
    pub v0_residual: f64,
    /// Roots of `m(T; y, y)`.
    pub residual_roots: Vec<f64>,
    pub low_confidence: bool,
}

pub fn project_to_stratum_frame(x: &AlbertElement) -> Result<StratumProjection> {
    project_to_stratum_frame_with(x, &Tolerances::DEFAULT)
}

pub fn project_to_stratum_frame_with(x: &AlbertElement, tol: &Tolerances) -> Result<StratumProjection> {
    let verdict = classify_v_with(x, tol);
    let Location::Boundary(k) = verdict.location else {
        return Err(Error::NotOnBoundary);
    };
    let sd = spectral_decompose_with(x, tol)?;
    let mut e = AlbertElement::ZERO;
    let mut found = 0;
    for ((lam, ei), mult) in sd.pairs.iter().zip(&sd.multiplicities) {
        if (lam * lam - 1.0).abs() <= tol.cls {
            e = e + *ei;
            found += mult;
        }
    }
    if found != k {
        return Err(Error::WrongStratum { expected: k, found: Some(found) });
    }
    let y = *x - e;
    let pd = peirce(&e)?;
    let outside = (pd.p(1) + pd.p(2)).apply(&y.to_coords());
    let v0_residual = AlbertElement::from_coords(&outside).norm();
    if v0_residual > tol.cls * (1.0 + x.norm()) {
        return Err(Error::OutOfSubspace { mass: v0_residual });
    }
    let residual_roots = minimal_polynomial(&y, &y).real_roots();
    let low_confidence = sd.low_confidence || verdict.confidence == Confidence::Low;
    Ok(StratumProjection { stratum: k, e, y, v0_residual, residual_roots, low_confidence })
}

/// Shilov boundary of the 27-dimensional domain: `x != 0`, `x = det(x) conj(x)#`.
pub fn shilov_test_v(x: &AlbertElement) -> bool {
    x.norm() > Tolerances::DEFAULT.cls && is_maximal_frame_element_with(x, &Tolerances::DEFAULT)
}

/// Shilov boundary of the 16-dimensional domain: `(x|x) = 2`, `(x#|x#) = 1`.
pub fn shilov_test_w(x: &WElement) -> bool {
    let tol = Tolerances::DEFAULT.cls;
    let s = x.sharp();
    (x.hdot(x).re - 2.0).abs() < tol && (s.hdot(&s).re - 1.0).abs() < tol
}

/// CR type `(s, t)`: real dimension `2s + t`, complex tangent dimension `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrType {
    pub s: usize,
    pub t: usize,
}

impl CrType {
    pub fn real_dim(&self) -> usize {
        2 * self.s + self.t
    }
}

/// Local geometry of the boundary at a tripotent `e` of rank `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryReport {
    pub rank: usize,
    /// `(dim V_0, dim V_1, dim V_2)`.
    pub peirce_dims: [usize; 3],
    /// Real dimension of the normal direction `V_2^+(e)`.
    pub normal_dim: usize,
    /// Stratum containing `e`: complex tangent `V_1 + V_0`.
    pub stratum: CrType,
    /// Manifold of rank `k` tripotents: complex tangent `V_1`.
    pub tripotents: CrType,
    /// Rank of the subsystem `V_0(e)` carrying the affine component.
    pub affine_rank: usize,
}

fn report(rank: usize, pd: &PeirceDecomposition, normal_dim: usize, affine_rank: usize) -> BoundaryReport {
    let [d0, d1, d2] = pd.dims;
    BoundaryReport {
        rank,
        peirce_dims: pd.dims,
        normal_dim,
        stratum: CrType { s: d1 + d0, t: d2 },
        tripotents: CrType { s: d1, t: d2 },
        affine_rank,
    }
}

// A fixed element with no special structure, projected into V_0(e) to read
// off the generic rank of that subsystem.
fn generic_probe(n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| {
            let t = k as f64 + 1.0;
            C64::new((0.7 * t).sin() + 0.3, (1.3 * t).cos() - 0.2)
        })
        .collect()
}

pub fn boundary_report_v(e: &AlbertElement) -> Result<BoundaryReport> {
    let cert = crate::tripotents::classify_tripotent(e)?;
    let pd = peirce(e)?;
    let split = q_involution_split(e)?;
    let y = AlbertElement::from_coords(&pd.p(0).apply(&generic_probe(27)));
    Ok(report(cert.rank, &pd, split.plus, rank(&y)))
}

pub fn boundary_report_w(e: &WElement) -> Result<BoundaryReport> {
    let cert = crate::type_v::classify_tripotent_w(e)?;
    let pd = peirce_w(e)?;
    let split = q_involution_split_w(e)?;
    let y = WElement::from_coords(&pd.p(0).apply(&generic_probe(16)));
    let roots = minimal_polynomial_w(&y, &y).real_roots();
    let scale = roots[0].max(0.0);
    let affine_rank = roots.iter().filter(|r| **r > 1e-9 * (1.0 + scale)).count();
    Ok(report(cert.rank, &pd, split.plus, affine_rank))
}
