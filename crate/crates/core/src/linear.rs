//! Small dense complex linear algebra.
//!
//! Everything here works on operators of dimension at most 64: the 27- and
//! 16-dimensional triple-system operators, 8x8 octonion multiplications and
//! the 3x3 companion matrices of minimal polynomials.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Largest operator accepted by the dense routines.
pub const MAX_DIM: usize = 64;

pub(crate) const fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub(crate) const ZERO: C64 = c(0.0, 0.0);
pub(crate) const ONE: C64 = c(1.0, 0.0);

/// Identity residuals are compared against `alg`, classification decisions
/// (roots at 1, tripotent tests, projector checks) against `cls`. Residuals
/// are always measured relative to `1 + max operand norm`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub alg: f64,
    pub cls: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances { alg: 1e-9, cls: 1e-7 };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds the matrix whose `j`-th column is `f(j)`.
    pub fn from_columns<F>(rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize) -> Vec<C64>,
    {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            let col = f(j);
            debug_assert_eq!(col.len(), rows);
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols, "vector length does not match operator");
        self.data.chunks_exact(self.cols).map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v.conj()).collect() }
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    fn check_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows > MAX_DIM {
            return Err(Error::TooLarge { dim: self.rows, max: MAX_DIM });
        }
        Ok(self.rows)
    }
}

impl Index<(usize, usize)> for Dense {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Dense {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Dense {
    type Output = Dense;
    fn mul(self, rhs: &Dense) -> Dense {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Dense::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }
}

impl Add for &Dense {
    type Output = Dense;
    fn add(self, rhs: &Dense) -> Dense {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Dense { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &Dense {
    type Output = Dense;
    fn sub(self, rhs: &Dense) -> Dense {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Dense { rows: self.rows, cols: self.cols, data }
    }
}

/// LU factorization with partial pivoting, `P A = L U` stored in place.
struct Lu {
    lu: Dense,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    fn factor(a: &Dense) -> Self {
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let (p, pmax) =
                (k..n).map(|i| (i, lu[(i, k)].norm())).fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= factor * u;
                }
            }
        }
        Self { lu, perm, sign, singular }
    }

    fn det(&self) -> C64 {
        if self.singular {
            return ZERO;
        }
        let n = self.lu.rows;
        (0..n).fold(c(self.sign, 0.0), |acc, i| acc * self.lu[(i, i)])
    }

    fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.lu.rows;
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = self.lu[(i, k)];
                x[i] = x[i] - l * x[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = self.lu[(i, k)];
                x[i] = x[i] - u * x[k];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }
}

/// Determinant by pivoted LU.
pub fn det_dense(m: &Dense) -> Result<C64> {
    let n = m.check_square()?;
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    match n {
        0 => Ok(ONE),
        1 => Ok(m[(0, 0)]),
        _ => Ok(Lu::factor(m).det()),
    }
}

/// Solves `A X = B` for square `A`; `B` is given column by column.
pub fn solve_dense(a: &Dense, rhs: &[Vec<C64>]) -> Result<Vec<Vec<C64>>> {
    let n = a.check_square()?;
    let lu = Lu::factor(a);
    if lu.singular {
        return Err(Error::DegenerateNodes { first: 0, second: 0, gap: 0.0 });
    }
    rhs.iter()
        .map(|b| {
            if b.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: b.len() });
            }
            Ok(lu.solve(b))
        })
        .collect()
}

/// Orthonormal basis (for the standard Hermitian product on coordinates) of
/// the span of the given vectors, by modified Gram-Schmidt with one
/// reorthogonalization pass. Vectors whose remaining norm is below
/// `rel_tol` times the largest input norm are discarded.
pub fn orthonormal_basis(vectors: &[Vec<C64>], rel_tol: f64) -> Vec<Vec<C64>> {
    let scale = vectors.iter().map(|v| vec_norm(v)).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let proj = hermitian_dot(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= proj * qi;
                }
            }
        }
        let n = vec_norm(&w);
        if n > rel_tol * scale {
            basis.push(w.into_iter().map(|x| x / n).collect());
        }
    }
    basis
}

/// Numerical rank of the span of the columns of `m`.
pub fn rank(m: &Dense, rel_tol: f64) -> usize {
    let cols: Vec<Vec<C64>> = (0..m.cols).map(|j| m.column(j)).collect();
    orthonormal_basis(&cols, rel_tol).len()
}

/// Distance from `v` to the span of `vectors`, relative to `|v|`
/// (absolute when `v` is zero).
pub fn span_residual(vectors: &[Vec<C64>], v: &[C64], rel_tol: f64) -> f64 {
    let basis = orthonormal_basis(vectors, rel_tol);
    let mut w = v.to_vec();
    for _ in 0..2 {
        for q in &basis {
            let proj = hermitian_dot(q, &w);
            for (wi, qi) in w.iter_mut().zip(q) {
                *wi -= proj * qi;
            }
        }
    }
    let n = vec_norm(v);
    if n == 0.0 {
        vec_norm(&w)
    } else {
        vec_norm(&w) / n
    }
}

/// `sum conj(a_i) b_i`.
pub fn hermitian_dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Matrix exponential by scaling and squaring with a Taylor kernel.
pub fn expm(a: &Dense) -> Result<Dense> {
    let n = a.check_square()?;
    let norm = a.frobenius_norm();
    let mut squarings = 0u32;
    let mut s = 1.0;
    while norm * s > 0.25 {
        s *= 0.5;
        squarings += 1;
    }
    let scaled = a.scale(c(s, 0.0));
    let mut result = Dense::identity(n);
    let mut term = Dense::identity(n);
    for k in 1..=18 {
        term = (&term * &scaled).scale(c(1.0 / k as f64, 0.0));
        result = &result + &term;
        if term.max_abs() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

/// `c0 + c1 T + c2 T^2 + c3 T^3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicPolynomial {
    pub coeffs: [C64; 4],
}

impl CubicPolynomial {
    /// Monic `T^3 + c2 T^2 + c1 T + c0`.
    pub fn monic(c2: C64, c1: C64, c0: C64) -> Self {
        Self { coeffs: [c0, c1, c2, ONE] }
    }

    pub fn from_roots(roots: [C64; 3]) -> Self {
        let [a, b, d] = roots;
        Self::monic(-(a + b + d), a * b + a * d + b * d, -(a * b * d))
    }

    pub fn eval(&self, t: C64) -> C64 {
        let [c0, c1, c2, c3] = self.coeffs;
        ((c3 * t + c2) * t + c1) * t + c0
    }

    fn derivative_at(&self, t: C64) -> C64 {
        let [_, c1, c2, c3] = self.coeffs;
        (c3 * 3.0 * t + c2 * 2.0) * t + c1
    }

    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Typical magnitude of the roots, from the coefficient sizes.
    fn root_scale(&self) -> f64 {
        let [c0, c1, c2, _] = self.coeffs;
        c2.norm().max(c1.norm().sqrt()).max(c0.norm().cbrt())
    }
}

/// Roots of a monic cubic, sorted by descending real part (then imaginary).
///
/// Closed-form Cardano; when the discriminant is tiny relative to the root
/// scale the roots come from a shifted QR iteration on the companion matrix
/// instead, with near-coincident roots replaced by their cluster mean.
/// Cardano roots are polished with Newton steps.
pub fn roots_monic_cubic(p: &CubicPolynomial) -> [C64; 3] {
    let [c0, c1, c2, c3] = p.coeffs;
    let (a, b, d) = (c2 / c3, c1 / c3, c0 / c3);
    let monic = CubicPolynomial::monic(a, b, d);
    let scale = monic.root_scale();
    let mut roots = if scale == 0.0 {
        [ZERO; 3]
    } else {
        let pp = b - a * a / 3.0;
        let qq = a * a * a * (2.0 / 27.0) - a * b / 3.0 + d;
        let disc = (qq / 2.0) * (qq / 2.0) + (pp / 3.0) * (pp / 3.0) * (pp / 3.0);
        if disc.norm() < 1e-12 * scale.powi(6) {
            let mut r = companion_roots(&monic);
            merge_clusters(&mut r, 1e-4 * scale);
            r
        } else {
            let mut r = cardano(a, pp, qq, disc);
            for x in r.iter_mut() {
                *x = polish(&monic, *x);
            }
            r
        }
    };
    sort_desc(&mut roots);
    roots
}

fn cardano(a: C64, p: C64, q: C64, disc: C64) -> [C64; 3] {
    let sq = disc.sqrt();
    let plus = -q / 2.0 + sq;
    let minus = -q / 2.0 - sq;
    let w = if plus.norm() >= minus.norm() { plus } else { minus };
    let u = w.cbrt();
    let shift = a / 3.0;
    if u.is_zero() {
        return [-shift; 3];
    }
    let v = -p / (u * 3.0);
    let omega = c(-0.5, 3.0.sqrt() / 2.0);
    let omega2 = omega.conj();
    [u + v - shift, omega * u + omega2 * v - shift, omega2 * u + omega * v - shift]
}

/// Replaces each cluster of nearly equal roots by the cluster mean. A k-fold
/// root splits by roughly eps^(1/k) under rounding while the mean of the
/// split copies stays accurate.
fn merge_clusters(roots: &mut [C64; 3], tol: f64) {
    let close = |a: C64, b: C64| (a - b).norm() <= tol;
    let [a, b, d] = *roots;
    if close(a, b) && close(b, d) && close(a, d) {
        let m = (a + b + d) / 3.0;
        *roots = [m; 3];
    } else if close(a, b) {
        let m = (a + b) / 2.0;
        *roots = [m, m, d];
    } else if close(a, d) {
        let m = (a + d) / 2.0;
        *roots = [m, b, m];
    } else if close(b, d) {
        let m = (b + d) / 2.0;
        *roots = [a, m, m];
    }
}

fn polish(p: &CubicPolynomial, r: C64) -> C64 {
    let mut best = r;
    let mut best_res = p.eval(r).norm();
    let mut x = r;
    for _ in 0..4 {
        let d = p.derivative_at(x);
        if d.norm() < 1e-8 * (1.0 + p.coeff_norm()) {
            break;
        }
        x -= p.eval(x) / d;
        let res = p.eval(x).norm();
        if res < best_res {
            best = x;
            best_res = res;
        } else {
            break;
        }
    }
    best
}

fn sort_desc(roots: &mut [C64]) {
    roots.sort_by(|x, y| {
        y.re.partial_cmp(&x.re)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(y.im.partial_cmp(&x.im).unwrap_or(core::cmp::Ordering::Equal))
    });
}

fn companion_roots(p: &CubicPolynomial) -> [C64; 3] {
    let [c0, c1, c2, _] = p.coeffs;
    let mut h = Dense::zeros(3, 3);
    h[(0, 0)] = -c2;
    h[(0, 1)] = -c1;
    h[(0, 2)] = -c0;
    h[(1, 0)] = ONE;
    h[(2, 1)] = ONE;
    let ev = hessenberg_eigenvalues(h);
    [ev[0], ev[1], ev[2]]
}

/// Eigenvalues of an upper Hessenberg matrix by single-shift complex QR
/// with Wilkinson shifts and deflation.
pub fn hessenberg_eigenvalues(mut h: Dense) -> Vec<C64> {
    let n = h.rows;
    let mut eig = Vec::with_capacity(n);
    if n == 0 {
        return eig;
    }
    let mut hi = n - 1;
    let mut iter = 0;
    loop {
        if hi == 0 {
            eig.push(h[(0, 0)]);
            break;
        }
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let diag = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if sub <= f64::EPSILON * diag.max(f64::MIN_POSITIVE) {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig.push(h[(hi, hi)]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        let shift = if iter % 11 == 10 {
            h[(hi, hi)] + c(h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        if iter > 200 {
            // give up on convergence: report the current diagonal
            for i in (0..=hi).rev() {
                eig.push(h[(i, i)]);
            }
            break;
        }
        qr_step(&mut h, l, hi, shift);
    }
    eig
}

fn wilkinson_shift(a: C64, b: C64, cc: C64, d: C64) -> C64 {
    let tr = a + d;
    let det = a * d - b * cc;
    let disc = (tr * tr / 4.0 - det).sqrt();
    let l1 = tr / 2.0 + disc;
    let l2 = tr / 2.0 - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn qr_step(h: &mut Dense, lo: usize, hi: usize, shift: C64) {
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (cs, sn) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = x * cs + sn * y;
            h[(k + 1, j)] = -sn.conj() * x + y * cs;
        }
        rotations.push((cs, sn));
    }
    for (idx, &(cs, sn)) in rotations.iter().enumerate() {
        let k = lo + idx;
        for i in lo..=(k + 1).min(hi) {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * cs + y * sn.conj();
            h[(i, k + 1)] = -x * sn + y * cs;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

fn givens(a: C64, b: C64) -> (f64, C64) {
    let na = a.norm();
    let r = na.hypot(b.norm());
    if r == 0.0 {
        return (1.0, ZERO);
    }
    if na == 0.0 {
        return (0.0, ONE);
    }
    (na / r, (a / na) * b.conj() / r)
}

/// Roots of a real cubic known to have only real roots, descending.
///
/// Trigonometric Cardano; rounding that pushes the polynomial off the
/// real-rooted set is projected back (clamped), so clustered roots stay
/// real and coalesce instead of splitting into complex pairs.
pub fn roots_real_rooted_cubic(c2: f64, c1: f64, c0: f64) -> [f64; 3] {
    let shift = -c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    let scale = c2.abs().max(c1.abs().sqrt()).max(c0.abs().cbrt());
    if p >= 0.0 || -p <= f64::EPSILON * scale * scale {
        return [shift; 3];
    }
    let m = 2.0 * (-p / 3.0).sqrt();
    let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
    let theta = arg.acos() / 3.0;
    let tau = 2.0 * core::f64::consts::PI / 3.0;
    let mut r = [m * theta.cos() + shift, m * (theta - tau).cos() + shift, m * (theta - 2.0 * tau).cos() + shift];
    r.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    refine_close_pair(&mut r, c2, c1, c0, scale);
    r
}

// A double root is only determined to about sqrt(eps / gap) by the trig
// formula. Near a pair, p is modelled by its expansion at the critical point
// t* (root of p'): the pair collapses onto t* when p(t*) is at rounding
// level, otherwise it is split symmetrically and polished by Newton.
fn refine_close_pair(r: &mut [f64; 3], c2: f64, c1: f64, c0: f64, scale: f64) {
    let window = 1e-3 * (1.0 + scale);
    let (g01, g12) = (r[0] - r[1], r[1] - r[2]);
    let (i, gap, other) = if g01 <= g12 { (0, g01, g12) } else { (1, g12, g01) };
    if gap >= window || gap >= 0.25 * other {
        return;
    }
    let disc = c2 * c2 - 3.0 * c1;
    if disc <= 0.0 {
        return;
    }
    let qd = -(c2 + c2.signum() * disc.sqrt());
    let crit = if qd == 0.0 { [0.0, 0.0] } else { [qd / 3.0, c1 / qd] };
    let mid = 0.5 * (r[i] + r[i + 1]);
    let t = if (crit[0] - mid).abs() < (crit[1] - mid).abs() { crit[0] } else { crit[1] };
    let p = |x: f64| ((x + c2) * x + c1) * x + c0;
    let h = p(t);
    let noise = 8.0 * f64::EPSILON * (((t.abs() + c2.abs()) * t.abs() + c1.abs()) * t.abs() + c0.abs());
    let curv = 6.0 * t + 2.0 * c2;
    let sq = -2.0 * h / curv;
    if h.abs() <= noise || !(sq > 0.0) {
        r[i] = t;
        r[i + 1] = t;
        // the simple root from the root sum
        r[2 - 2 * i] = -c2 - 2.0 * t;
        return;
    }
    let d = sq.sqrt();
    for (k, start) in [(i, t + d), (i + 1, t - d)] {
        let mut x = start;
        for _ in 0..4 {
            let dp = (3.0 * x + 2.0 * c2) * x + c1;
            if dp == 0.0 {
                break;
            }
            let next = x - p(x) / dp;
            if (next - t).signum() != (start - t).signum() {
                break;
            }
            x = next;
        }
        r[k] = x;
    }
}

/// Recovers `e_i` from `rhs_k = sum_i nodes_i^(2k+1) e_i`, `k = 0..nodes.len()`.
pub fn solve_vandermonde(nodes: &[f64], rhs: &[Vec<C64>], merge_tol: f64) -> Result<Vec<Vec<C64>>> {
    let m = nodes.len();
    if rhs.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: rhs.len() });
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    for i in 0..m {
        for j in i + 1..m {
            let gap = (nodes[i] - nodes[j]).abs();
            if gap <= merge_tol {
                return Err(Error::DegenerateNodes { first: i, second: j, gap });
            }
        }
    }
    let dim = rhs[0].len();
    if let Some(bad) = rhs.iter().find(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
    }
    let mut a = Dense::zeros(m, m);
    for k in 0..m {
        for (i, &x) in nodes.iter().enumerate() {
            a[(k, i)] = c(x.powi(2 * k as i32 + 1), 0.0);
        }
    }
    // one solve per coordinate; columns of the coordinate system are the rhs entries
    let columns: Vec<Vec<C64>> = (0..dim).map(|t| rhs.iter().map(|r| r[t]).collect()).collect();
    let solved = solve_dense(&a, &columns).map_err(|_| Error::DegenerateNodes { first: 0, second: 1, gap: 0.0 })?;
    Ok((0..m).map(|i| solved.iter().map(|col| col[i]).collect()).collect())
}
