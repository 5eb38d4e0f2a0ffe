//! Tripotents, their rank, Peirce projectors and frames.
//!
//! The Peirce machinery works from the matrix of `D(e, e)` and is shared by
//! the Albert space and by the subsystem `W`.

use alloc::vec::Vec;

// Needed without std; unused when std is linked and f64 has inherent methods.
#[allow(unused_imports)]
use num_traits::Float;

use crate::albert::AlbertElement;
use crate::error::{Error, Result};
use crate::jts::{d_operator, q_matrix, triple};
use crate::linear::{Dense, Tolerances, C64};

/// Rank certificate for a tripotent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripotentCertificate<T> {
    pub element: T,
    pub rank: usize,
    /// `|{eee} - 2e|`.
    pub residual: f64,
    /// `((e|e), (e#|e#), |det e|^2)`.
    pub invariants: [f64; 3],
}

/// Invariant triple of a rank `k` tripotent: `(k, k(k-1)/2, [k = 3])`.
pub fn expected_invariants(rank: usize) -> [f64; 3] {
    match rank {
        0 => [0.0, 0.0, 0.0],
        1 => [1.0, 0.0, 0.0],
        2 => [2.0, 1.0, 0.0],
        _ => [3.0, 3.0, 1.0],
    }
}

/// Rank from the invariant triple, or a diagnostic if the triple matches no rank.
pub(crate) fn rank_from_invariants(inv: [f64; 3], max_rank: usize, tol: &Tolerances) -> Result<usize> {
    let bad = Error::InconsistentInvariants { norm: inv[0], sharp_norm: inv[1], det_sq: inv[2] };
    let k = inv[0].round();
    if k < 0.0 || k > max_rank as f64 {
        return Err(bad);
    }
    let k = k as usize;
    let want = expected_invariants(k);
    let slack = tol.cls * (1.0 + inv[0].abs());
    if want.iter().zip(&inv).all(|(w, v)| (w - v).abs() < slack) {
        Ok(k)
    } else {
        Err(bad)
    }
}

pub fn classify_tripotent(x: &AlbertElement) -> Result<TripotentCertificate<AlbertElement>> {
    classify_tripotent_with(x, &Tolerances::DEFAULT)
}

pub fn classify_tripotent_with(x: &AlbertElement, tol: &Tolerances) -> Result<TripotentCertificate<AlbertElement>> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = x.norm();
    let residual = (triple(x, x, x) - x.scale_re(2.0)).norm();
    if residual >= tol.cls * (1.0 + n * n * n) {
        return Err(Error::NotATripotent { residual });
    }
    let s = x.sharp();
    let invariants = [x.hdot(x).re, s.hdot(&s).re, x.det().norm_sqr()];
    let rank = rank_from_invariants(invariants, 3, tol)?;
    Ok(TripotentCertificate { element: *x, rank, residual, invariants })
}

/// `x = det(x) conj(x)#`, the algebraic description of maximal tripotents.
pub fn is_maximal_frame_element(x: &AlbertElement) -> bool {
    is_maximal_frame_element_with(x, &Tolerances::DEFAULT)
}

pub fn is_maximal_frame_element_with(x: &AlbertElement, tol: &Tolerances) -> bool {
    let r = *x - x.bar().sharp().scale(x.det());
    r.norm() < tol.cls * (1.0 + x.norm())
}

/// `D(e, f) = 0`. Both arguments are assumed to be tripotents.
pub fn are_orthogonal(e: &AlbertElement, f: &AlbertElement) -> bool {
    d_operator(e, f).frobenius_norm() < Tolerances::DEFAULT.cls
}

/// Peirce projectors `P_0, P_1, P_2` of a tripotent with their dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct PeirceDecomposition {
    pub projectors: [Dense; 3],
    pub dims: [usize; 3],
    /// Largest of `|P_i^2 - P_i|`, `|P_i P_j|`, `|sum P_i - Id|`.
    pub residual: f64,
}

impl PeirceDecomposition {
    /// Lagrange interpolation of `D = D(e, e)` at its spectrum `{0, 1, 2}`:
    /// `P_0 = (D-I)(D-2I)/2`, `P_1 = -D(D-2I)`, `P_2 = D(D-I)/2`.
    pub fn from_d(d: &Dense) -> Result<Self> {
        let n = d.rows();
        let id = Dense::identity(n);
        let d1 = d - &id;
        let d2 = d - &id.scale(C64::new(2.0, 0.0));
        let half = C64::new(0.5, 0.0);
        let p = [(&d1 * &d2).scale(half), (d * &d2).scale(C64::new(-1.0, 0.0)), (d * &d1).scale(half)];
        let mut dims = [0; 3];
        for (i, pi) in p.iter().enumerate() {
            let t = pi.trace().re;
            if (t - t.round()).abs() > 0.01 || t.round() < 0.0 {
                return Err(Error::PeirceTrace { index: i, trace: t });
            }
            dims[i] = t.round() as usize;
        }
        let mut residual = (&(&(&p[0] + &p[1]) + &p[2]) - &id).max_abs();
        for i in 0..3 {
            residual = residual.max((&(&p[i] * &p[i]) - &p[i]).max_abs());
            for j in 0..3 {
                if i != j {
                    residual = residual.max((&p[i] * &p[j]).max_abs());
                }
            }
        }
        Ok(Self { projectors: p, dims, residual })
    }

    pub fn p(&self, i: usize) -> &Dense {
        &self.projectors[i]
    }
}

pub fn peirce(e: &AlbertElement) -> Result<PeirceDecomposition> {
    PeirceDecomposition::from_d(&d_operator(e, e))
}

/// Real `2n x 2n` matrix of the antilinear map `y -> A conj(y)`.
fn antilinear_real(a: &Dense) -> Dense {
    let n = a.rows();
    let mut m = Dense::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = a[(i, j)];
            m[(i, j)] = C64::new(z.re, 0.0);
            m[(i, n + j)] = C64::new(z.im, 0.0);
            m[(n + i, j)] = C64::new(z.im, 0.0);
            m[(n + i, n + j)] = C64::new(-z.re, 0.0);
        }
    }
    m
}

/// Real `2n x 2n` matrix of a complex linear map.
fn linear_real(a: &Dense) -> Dense {
    let n = a.rows();
    let mut m = Dense::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = a[(i, j)];
            m[(i, j)] = C64::new(z.re, 0.0);
            m[(i, n + j)] = C64::new(-z.im, 0.0);
            m[(n + i, j)] = C64::new(z.im, 0.0);
            m[(n + i, n + j)] = C64::new(z.re, 0.0);
        }
    }
    m
}

/// Real dimensions of the `+1` and `-1` eigenspaces of `Q(e)` on `V_2(e)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvolutionSplit {
    pub plus: usize,
    pub minus: usize,
    /// `|Q(e)^2 - Id|` on `V_2` and `|Q(e)|` on `V_1 + V_0`, in the real model.
    pub residual: f64,
}

/// Split of `V_2(e)` under `Q(e)`, given `A(e)` (with `Q(e) y = A(e) conj y`)
/// and the Peirce decomposition of `e`.
pub fn involution_split_from(a: &Dense, pd: &PeirceDecomposition) -> Result<InvolutionSplit> {
    let q = antilinear_real(a);
    let p2 = linear_real(pd.p(2));
    let rest = linear_real(&(pd.p(0) + pd.p(1)));
    let qp2 = &q * &p2;
    let sq = &(&qp2 * &qp2) - &p2;
    let residual = sq.max_abs().max((&q * &rest).max_abs());
    let half = C64::new(0.5, 0.0);
    let plus = (&p2 + &qp2).scale(half).trace().re;
    let minus = (&p2 - &qp2).scale(half).trace().re;
    for (i, t) in [(0, plus), (1, minus)] {
        if (t - t.round()).abs() > 0.01 {
            return Err(Error::PeirceTrace { index: i, trace: t });
        }
    }
    Ok(InvolutionSplit { plus: plus.round() as usize, minus: minus.round() as usize, residual })
}

pub fn q_involution_split(e: &AlbertElement) -> Result<InvolutionSplit> {
    involution_split_from(&q_matrix(e), &peirce(e)?)
}

/// Joint Peirce dimensions of a frame of orthogonal minimal tripotents.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameCensus {
    /// `dim V_ij` for `i <= j`; `V_ii = V_2(e_i)`, `V_ij = V_1(e_i) cap V_1(e_j)`.
    pub joint: Vec<Vec<usize>>,
    /// `dim V_0i = V_1(e_i) cap V_0(e_j)` for all `j != i`.
    pub off: Vec<usize>,
}

/// Rank, `a`, `b` and genus `g = 2 + a (r - 1) + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumericalInvariants {
    pub a: usize,
    pub b: usize,
    pub r: usize,
    pub g: usize,
}

fn trace_dim(m: &Dense) -> Result<usize> {
    let t = m.trace().re;
    if (t - t.round()).abs() > 0.01 || t.round() < 0.0 {
        return Err(Error::PeirceTrace { index: 1, trace: t });
    }
    Ok(t.round() as usize)
}

pub fn frame_census(frame: &[PeirceDecomposition]) -> Result<FrameCensus> {
    let r = frame.len();
    let mut joint = alloc::vec![alloc::vec![0; r]; r];
    let mut off = alloc::vec![0; r];
    for i in 0..r {
        joint[i][i] = frame[i].dims[2];
        for j in i + 1..r {
            let d = trace_dim(&(frame[i].p(1) * frame[j].p(1)))?;
            joint[i][j] = d;
            joint[j][i] = d;
        }
        let mut m = frame[i].p(1).clone();
        for (j, pj) in frame.iter().enumerate() {
            if j != i {
                m = &m * pj.p(0);
            }
        }
        off[i] = trace_dim(&m)?;
    }
    Ok(FrameCensus { joint, off })
}

impl FrameCensus {
    pub fn invariants(&self) -> NumericalInvariants {
        let r = self.off.len();
        let a = if r > 1 { self.joint[0][1] } else { 0 };
        let b = self.off.first().copied().unwrap_or(0);
        NumericalInvariants { a, b, r, g: 2 + a * r.saturating_sub(1) + b }
    }
}
