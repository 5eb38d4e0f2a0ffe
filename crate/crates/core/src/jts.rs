//! Hermitian Jordan triple structure on the Albert space.
//!
//! `Q(x)` is antilinear. As a matrix it is stored through `A(x)`, the complex
//! linear map `w -> (x:w) x - x# x w`, so that `Q(x) y = A(x) conj(y)` and
//! `Q(x) Q(y) = A(x) conj(A(y))`.

use alloc::vec::Vec;

// Needed without std; unused when std is linked and f64 has inherent methods.
#[allow(unused_imports)]
use num_traits::Float;

use crate::albert::{AlbertElement, DIM};
use crate::error::{Error, Result};
use crate::linear::{roots_real_rooted_cubic, solve_vandermonde, Dense, Tolerances, C64, ZERO};

/// `Q(x) y = (x|y) x - x# x conj(y)`.
pub fn q_apply(x: &AlbertElement, y: &AlbertElement) -> AlbertElement {
    x.scale(x.hdot(y)) - x.sharp().cross(&y.bar())
}

/// `{xyz} = (x|y) z + (z|y) x - (x x z) x conj(y)`.
pub fn triple(x: &AlbertElement, y: &AlbertElement, z: &AlbertElement) -> AlbertElement {
    z.scale(x.hdot(y)) + x.scale(z.hdot(y)) - x.cross(z).cross(&y.bar())
}

fn basis(i: usize) -> AlbertElement {
    let mut v = [ZERO; DIM];
    v[i] = C64::new(1.0, 0.0);
    AlbertElement::from_coords(&v)
}

/// Matrix of `z -> {x y z}`.
pub fn d_operator(x: &AlbertElement, y: &AlbertElement) -> Dense {
    let ybar = y.bar();
    let xy = x.hdot(y);
    Dense::from_columns(DIM, DIM, |j| {
        let z = basis(j);
        let col = z.scale(xy) + x.scale(z.hdot(y)) - x.cross(&z).cross(&ybar);
        col.to_coords().to_vec()
    })
}

/// Complex linear part `A(x)` of `Q(x)`: `Q(x) y = A(x) conj(y)`.
pub fn q_matrix(x: &AlbertElement) -> Dense {
    let xs = x.sharp();
    Dense::from_columns(DIM, DIM, |j| {
        let w = basis(j);
        (x.scale(x.dot(&w)) - xs.cross(&w)).to_coords().to_vec()
    })
}

/// Bergman operator `B(x, y) = Id - D(x, y) + Q(x) Q(y)`.
pub fn bergman_operator(x: &AlbertElement, y: &AlbertElement) -> Dense {
    let qq = &q_matrix(x) * &q_matrix(y).conj();
    &(&Dense::identity(DIM) - &d_operator(x, y)) + &qq
}

/// `x^(k, y)` with `x^(1,y) = x` and `x^(k+1,y) = D(x,y) x^(k,y) / 2`.
pub fn power(x: &AlbertElement, k: usize, y: &AlbertElement) -> Result<AlbertElement> {
    if k == 0 {
        return Err(Error::InvalidExponent(k));
    }
    let mut p = *x;
    for _ in 1..k {
        p = triple(x, y, &p).scale_re(0.5);
    }
    Ok(p)
}

/// `x^(2k+1) = x^(k+1, x)`.
pub fn odd_power(x: &AlbertElement, m: usize) -> Result<AlbertElement> {
    if m.is_multiple_of(2) {
        return Err(Error::InvalidExponent(m));
    }
    power(x, m / 2 + 1, x)
}

/// The first `count` odd powers `x, x^(3), x^(5), ...`.
pub fn odd_powers(x: &AlbertElement, count: usize) -> Vec<AlbertElement> {
    let mut out = Vec::with_capacity(count);
    let mut p = *x;
    for _ in 0..count {
        out.push(p);
        // x^(2k+1) = x^(k+1,x)
        p = triple(x, x, &p).scale_re(0.5);
    }
    out
}

/// Generic minimal polynomial `T^d - s1 T^(d-1) + s2 T^(d-2) - ...`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinimalPolynomial {
    degree: usize,
    coeffs: [C64; 3],
}

impl MinimalPolynomial {
    /// Cubic with `s = ((x|y), (x#|y#), det x conj(det y))`.
    pub fn cubic(s: [C64; 3]) -> Self {
        Self { degree: 3, coeffs: s }
    }

    /// Quadratic with `s = ((x|y), (x#|y#))`.
    pub fn quadratic(s1: C64, s2: C64) -> Self {
        Self { degree: 2, coeffs: [s1, s2, ZERO] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `[s1, s2, s3]`; `s3` is zero for the quadratic.
    pub fn coeffs(&self) -> [C64; 3] {
        self.coeffs
    }

    pub fn eval(&self, t: C64) -> C64 {
        let [s1, s2, s3] = self.coeffs;
        match self.degree {
            3 => ((t - s1) * t + s2) * t - s3,
            _ => (t - s1) * t + s2,
        }
    }

    /// Generic norm `N(x, y) = m(1; x, y)`.
    pub fn generic_norm(&self) -> C64 {
        self.eval(C64::new(1.0, 0.0))
    }

    /// Roots when the coefficients are real and the polynomial is real rooted
    /// (the case `y = x`), in decreasing order; `degree` values.
    pub fn real_roots(&self) -> Vec<f64> {
        let [s1, s2, s3] = self.coeffs.map(|c| c.re);
        if self.degree == 3 {
            roots_real_rooted_cubic(-s1, s2, -s3).to_vec()
        } else {
            let h = 0.5 * s1;
            let d = (h * h - s2).max(0.0).sqrt();
            let big = h + d;
            // product of roots is s2
            let small = if big > 0.0 { s2 / big } else { h - d };
            alloc::vec![big, small.min(big)]
        }
    }
}

pub fn minimal_polynomial(x: &AlbertElement, y: &AlbertElement) -> MinimalPolynomial {
    MinimalPolynomial::cubic([x.hdot(y), x.sharp().hdot(&y.sharp()), x.det() * y.det().conj()])
}

/// Singular values `lambda_i` with orthogonal tripotents `e_i`, `x = sum lambda_i e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    pub pairs: Vec<(f64, AlbertElement)>,
    /// Number of roots of `m(T; x, x)` merged into each pair.
    pub multiplicities: Vec<usize>,
    pub merge_tol: f64,
    /// Two singular values were separated by less than ten merge tolerances.
    pub low_confidence: bool,
}

/// Distinct nonzero singular values from the roots of `m(T; x, x)`.
///
/// Roots are clamped at zero, treated as zero below `cls (1 + max root)`,
/// and merged when their square roots are within `1e-6 (1 + lambda_max)`.
pub(crate) fn singular_values(roots: &[f64], tol: &Tolerances) -> (Vec<(f64, usize)>, f64, bool) {
    let mu_max = roots.iter().copied().fold(0.0, f64::max);
    let zero = tol.cls * (1.0 + mu_max);
    let lam: Vec<f64> = roots.iter().filter(|&&m| m > zero).map(|m| m.sqrt()).collect();
    let merge_tol = 1e-6 * (1.0 + mu_max.sqrt());
    let mut clusters: Vec<(f64, usize)> = Vec::new();
    for l in lam {
        match clusters.last_mut() {
            Some((mean, n)) if (*mean - l).abs() < merge_tol => {
                *mean = (*mean * *n as f64 + l) / (*n + 1) as f64;
                *n += 1;
            }
            _ => clusters.push((l, 1)),
        }
    }
    let low = clusters.windows(2).any(|w| w[0].0 - w[1].0 < 10.0 * merge_tol);
    (clusters, merge_tol, low)
}

/// Decomposition from odd powers; `odd` must hold `x, x^(3), ...` with at
/// least as many terms as distinct singular values.
pub(crate) fn decompose_with<T: Copy>(
    nodes: &[(f64, usize)],
    odd: &[T],
    to: impl Fn(&T) -> Vec<C64>,
    from: impl Fn(&[C64]) -> T,
    merge_tol: f64,
) -> Result<Vec<(f64, T)>> {
    let lam: Vec<f64> = nodes.iter().map(|n| n.0).collect();
    let rhs: Vec<Vec<C64>> = odd[..lam.len()].iter().map(to).collect();
    let comps = solve_vandermonde(&lam, &rhs, merge_tol)?;
    Ok(lam.into_iter().zip(comps.iter().map(|c| from(c))).collect())
}

pub fn spectral_decompose(x: &AlbertElement) -> Result<SpectralDecomposition> {
    spectral_decompose_with(x, &Tolerances::DEFAULT)
}

pub fn spectral_decompose_with(x: &AlbertElement, tol: &Tolerances) -> Result<SpectralDecomposition> {
    if !x.is_finite() {
        return Err(Error::NonFinite);
    }
    let roots = minimal_polynomial(x, x).real_roots();
    let (nodes, merge_tol, low_confidence) = singular_values(&roots, tol);
    let odd = odd_powers(x, nodes.len());
    let pairs = decompose_with(&nodes, &odd, |p| p.to_coords().to_vec(), AlbertElement::from_coords, merge_tol)?;
    let multiplicities = nodes.iter().map(|n| n.1).collect();
    Ok(SpectralDecomposition { pairs, multiplicities, merge_tol, low_confidence })
}

/// Number of nonzero singular values counted with multiplicity.
pub fn rank(x: &AlbertElement) -> usize {
    rank_with(x, &Tolerances::DEFAULT)
}

pub fn rank_with(x: &AlbertElement, tol: &Tolerances) -> usize {
    let roots = minimal_polynomial(x, x).real_roots();
    singular_values(&roots, tol).0.iter().map(|c| c.1).sum()
}
