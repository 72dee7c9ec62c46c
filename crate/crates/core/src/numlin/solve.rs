use super::eigh::eigvalsh;
use super::matrix::{DenseMatrix, C64, ZERO};
use super::LinalgError;

/// Relative pivot threshold for LU and Cholesky.
pub const PIVOT_TOL: f64 = 1e-13;

fn inf_norm(m: &DenseMatrix) -> f64 {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solves `M X = B` by LU factorization with partial pivoting.
pub fn solve(m: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if b.rows() != n {
        return Err(LinalgError::DimensionMismatch { expected: n, found: b.rows() });
    }
    let tol = PIVOT_TOL * inf_norm(m);
    let mut lu = m.clone();
    let mut x = b.clone();
    let nrhs = b.cols();

    for k in 0..n {
        let (piv, pmax) = (k..n)
            .map(|i| (i, lu[(i, k)].norm()))
            .fold((k, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if pmax <= tol || pmax == 0.0 {
            return Err(LinalgError::Singular { pivot: pmax, index: k });
        }
        if piv != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = t;
            }
            for j in 0..nrhs {
                let t = x[(k, j)];
                x[(k, j)] = x[(piv, j)];
                x[(piv, j)] = t;
            }
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / pivot;
            if f == ZERO {
                continue;
            }
            lu[(i, k)] = f;
            for j in k + 1..n {
                let t = lu[(k, j)];
                lu[(i, j)] -= f * t;
            }
            for j in 0..nrhs {
                let t = x[(k, j)];
                x[(i, j)] -= f * t;
            }
        }
    }
    for k in (0..n).rev() {
        let pivot = lu[(k, k)];
        for j in 0..nrhs {
            let mut s = x[(k, j)];
            for l in k + 1..n {
                s -= lu[(k, l)] * x[(l, j)];
            }
            x[(k, j)] = s / pivot;
        }
    }
    Ok(x)
}

/// Lower-triangular `L` with `L Lᴴ = M` for Hermitian positive-definite `M`.
pub fn cholesky(m: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let defect = m.hermitian_defect();
    let scale = m.frobenius_norm();
    if defect > super::eigh::HERMITIAN_TOL * scale {
        return Err(LinalgError::NonHermitian { relative_defect: defect / scale });
    }
    let n = m.rows();
    let tol = PIVOT_TOL * inf_norm(m);
    let mut l = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut s = m[(j, j)].re;
        for k in 0..j {
            s -= l[(j, k)].norm_sqr();
        }
        if s <= tol || !s.is_finite() {
            return Err(LinalgError::NotPositiveDefinite { index: j, pivot: s });
        }
        let ljj = s.sqrt();
        l[(j, j)] = C64::new(ljj, 0.0);
        for i in j + 1..n {
            let mut t = m[(i, j)];
            for k in 0..j {
                t -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = t / ljj;
        }
    }
    Ok(l)
}

/// Solves `L X = B` for lower-triangular `L`.
pub fn solve_lower(l: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let n = l.rows();
    let mut x = b.clone();
    for j in 0..b.cols() {
        for i in 0..n {
            let mut s = x[(i, j)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, j)];
            }
            x[(i, j)] = s / l[(i, i)];
        }
    }
    x
}

/// Solves `Lᴴ X = B` for lower-triangular `L`.
pub fn solve_lower_adjoint(l: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let n = l.rows();
    let mut x = b.clone();
    for j in 0..b.cols() {
        for i in (0..n).rev() {
            let mut s = x[(i, j)];
            for k in i + 1..n {
                s -= l[(k, i)].conj() * x[(k, j)];
            }
            x[(i, j)] = s / l[(i, i)].conj();
        }
    }
    x
}

/// Eigenvalues of the Hermitian pencil `(A, B)` with `B` positive definite,
/// via the Cholesky reduction `L⁻¹ A L⁻ᴴ`, ascending.
pub fn pencil_eigvalsh(a: &DenseMatrix, b: &DenseMatrix) -> Result<Vec<f64>, LinalgError> {
    let l = cholesky(b)?;
    if a.rows() != l.rows() || a.cols() != l.rows() {
        return Err(LinalgError::DimensionMismatch { expected: l.rows(), found: a.rows() });
    }
    let x = solve_lower(&l, a);
    let c = solve_lower(&l, &x.adjoint());
    let sym = (&c + &c.adjoint()).scale_real(0.5);
    eigvalsh(&sym)
}

/// Largest singular value, from the top eigenvalue of `MᴴM` (or `MMᴴ`,
/// whichever is smaller). NaN when `M` has non-finite entries.
pub fn op_norm_euclid(m: &DenseMatrix) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    let gram = if m.rows() >= m.cols() { m.adjoint().matmul(m) } else { m.matmul(&m.adjoint()) };
    if !gram.is_finite() {
        return f64::NAN;
    }
    let top = eigvalsh(&gram).map(|v| v.last().copied().unwrap_or(0.0)).unwrap_or(f64::NAN);
    top.max(0.0).sqrt()
}
