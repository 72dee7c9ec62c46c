//! Hermitian eigensolver: Householder reduction to tridiagonal form followed
//! by implicit-shift QL iteration.
//!
//! Real symmetric input runs the reduction in `f64`; complex input runs it in
//! complex arithmetic and rotates the Hermitian tridiagonal to a real one with
//! a diagonal unitary before iterating.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::matrix::{DenseMatrix, C64, ONE, ZERO};
use super::LinalgError;

/// Relative tolerance on `‖M − Mᴴ‖_F / ‖M‖_F` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

const MAX_QL_SWEEPS: usize = 60;

#[derive(Clone, Debug)]
pub struct EigenDecomp {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, orthonormal in the Euclidean inner product.
    pub vectors: DenseMatrix,
}

impl EigenDecomp {
    /// `‖M − V Λ Vᴴ‖_F`.
    pub fn reconstruction_residual(&self, m: &DenseMatrix) -> f64 {
        let lam: Vec<f64> = self.values.clone();
        let vl = self.vectors.scale_cols(&lam);
        (m - &vl.matmul(&self.vectors.adjoint())).frobenius_norm()
    }
}

trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    const ZERO: Self;
    fn conj(self) -> Self;
    fn abs2(self) -> f64;
    fn re(self) -> f64;
    fn scale(self, s: f64) -> Self;
    fn to_c64(self) -> C64;
    /// `x / |x|`, or one for zero.
    fn phase(self) -> Self;
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    fn conj(self) -> Self {
        self
    }
    fn abs2(self) -> f64 {
        self * self
    }
    fn re(self) -> f64 {
        self
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn to_c64(self) -> C64 {
        C64::new(self, 0.0)
    }
    fn phase(self) -> Self {
        if self < 0.0 {
            -1.0
        } else {
            1.0
        }
    }
}

impl Scalar for C64 {
    const ZERO: Self = ZERO;
    fn conj(self) -> Self {
        C64::conj(&self)
    }
    fn abs2(self) -> f64 {
        self.norm_sqr()
    }
    fn re(self) -> f64 {
        self.re
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn to_c64(self) -> C64 {
        self
    }
    fn phase(self) -> Self {
        let r = self.norm();
        if r == 0.0 {
            ONE
        } else {
            self / r
        }
    }
}

/// Householder tridiagonalization of a Hermitian matrix held row-major in `a`.
/// Returns the real diagonal, the complex subdiagonal and, if requested, the
/// accumulated unitary `Q` with `A = Q T Qᴴ`.
fn tridiagonalize<S: Scalar>(a: &mut [S], n: usize, want_q: bool) -> (Vec<f64>, Vec<S>, Option<Vec<S>>) {
    let mut q = if want_q {
        let mut q = vec![S::ZERO; n * n];
        for i in 0..n {
            q[i * n + i] = S::ZERO.phase();
        }
        Some(q)
    } else {
        None
    };
    let mut v = vec![S::ZERO; n];
    let mut p = vec![S::ZERO; n];

    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let xnorm = (k + 1..n).map(|i| a[i * n + k].abs2()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let alpha = -(x0.phase().scale(xnorm));
        let v = &mut v[..len];
        for (t, i) in (k + 1..n).enumerate() {
            v[t] = a[i * n + k];
        }
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.abs2()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z = z.scale(1.0 / vnorm);
        }

        // p = 2 B v on the trailing block B = a[k+1.., k+1..]
        let p = &mut p[..len];
        for (r, i) in (k + 1..n).enumerate() {
            let row = &a[i * n + k + 1..i * n + n];
            let mut acc = S::ZERO;
            for (&b, &vj) in row.iter().zip(v.iter()) {
                acc += b * vj;
            }
            p[r] = acc.scale(2.0);
        }
        let c: f64 = v.iter().zip(p.iter()).map(|(&vi, &pi)| (vi.conj() * pi).re()).sum();
        // w = p - c v, stored in p
        for (pi, &vi) in p.iter_mut().zip(v.iter()) {
            *pi -= vi.scale(c);
        }
        for (r, i) in (k + 1..n).enumerate() {
            let vr = v[r];
            let wr = p[r];
            let row = &mut a[i * n + k + 1..i * n + n];
            for (s, b) in row.iter_mut().enumerate() {
                *b -= vr * p[s].conj() + wr * v[s].conj();
            }
        }
        a[(k + 1) * n + k] = alpha;
        a[k * n + k + 1] = alpha.conj();
        for i in k + 2..n {
            a[i * n + k] = S::ZERO;
            a[k * n + i] = S::ZERO;
        }

        if let Some(q) = q.as_mut() {
            for r in 0..n {
                let row = &mut q[r * n + k + 1..r * n + n];
                let mut s = S::ZERO;
                for (&qj, &vj) in row.iter().zip(v.iter()) {
                    s += qj * vj;
                }
                let s2 = s.scale(2.0);
                for (qj, &vj) in row.iter_mut().zip(v.iter()) {
                    *qj -= s2 * vj.conj();
                }
            }
        }
    }

    let d = (0..n).map(|i| a[i * n + i].re()).collect();
    let e = (0..n.saturating_sub(1)).map(|i| a[(i + 1) * n + i]).collect();
    (d, e, q)
}

/// Implicit QL with Wilkinson-type shifts on a real symmetric tridiagonal
/// matrix. `off[i]` couples rows `i` and `i+1`. Rotations are applied to the
/// columns of `z` when given.
fn tridiagonal_ql(d: &mut [f64], off: &mut [f64], mut z: Option<&mut DenseMatrix>) -> Result<(), LinalgError> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);

    // absolute floor at roundoff of ‖T‖ so clusters near zero still deflate
    let scale = d.iter().chain(&e).fold(0.0f64, |acc, v| acc.max(v.abs()));
    let floor = (f64::EPSILON * scale).max(f64::MIN_POSITIVE);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_SWEEPS {
                return Err(LinalgError::ConvergenceFailure { index: l, sweeps: MAX_QL_SWEEPS });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    let cols = z.cols();
                    let data = z.data_mut();
                    for row in data.chunks_mut(cols) {
                        let f = row[i + 1];
                        row[i + 1] = row[i] * s + f * c;
                        row[i] = row[i] * c - f * s;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn check_hermitian(m: &DenseMatrix) -> Result<(), LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let defect = m.hermitian_defect();
    let scale = m.frobenius_norm();
    if defect > HERMITIAN_TOL * scale {
        return Err(LinalgError::NonHermitian { relative_defect: defect / scale });
    }
    Ok(())
}

fn decompose(m: &DenseMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<DenseMatrix>), LinalgError> {
    check_hermitian(m)?;
    let n = m.rows();
    let (mut d, off_complex, q) = if m.is_real() {
        let mut a: Vec<f64> = (0..n * n)
            .map(|t| {
                let (i, j) = (t / n, t % n);
                0.5 * (m[(i, j)].re + m[(j, i)].re)
            })
            .collect();
        let (d, e, q) = tridiagonalize(&mut a, n, want_vectors);
        let e: Vec<C64> = e.into_iter().map(|x| x.to_c64()).collect();
        let q = q.map(|q| DenseMatrix::from_fn(n, n, |i, j| C64::new(q[i * n + j], 0.0)));
        (d, e, q)
    } else {
        let mut a: Vec<C64> = (0..n * n)
            .map(|t| {
                let (i, j) = (t / n, t % n);
                (m[(i, j)] + m[(j, i)].conj()) * 0.5
            })
            .collect();
        let (d, e, q) = tridiagonalize(&mut a, n, want_vectors);
        let q = q.map(|q| DenseMatrix::from_vec(n, n, q).expect("finite unitary factor"));
        (d, e, q)
    };

    // Diagonal unitary making the subdiagonal real and nonnegative.
    let mut phases = vec![ONE; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    for k in 0..off.len() {
        let ek = off_complex[k];
        off[k] = ek.norm();
        phases[k + 1] = if off[k] > 0.0 { phases[k] * (ek / off[k]) } else { phases[k] };
    }
    let mut z = q.map(|q| q.scale_cols_complex(&phases));
    tridiagonal_ql(&mut d, &mut off, z.as_mut())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors = z.map(|z| DenseMatrix::from_fn(n, n, |i, j| z[(i, order[j])]));
    Ok((values, vectors))
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn eigh(m: &DenseMatrix) -> Result<EigenDecomp, LinalgError> {
    let (values, vectors) = decompose(m, true)?;
    Ok(EigenDecomp { values, vectors: vectors.expect("vectors requested") })
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(m: &DenseMatrix) -> Result<Vec<f64>, LinalgError> {
    Ok(decompose(m, false)?.0)
}
