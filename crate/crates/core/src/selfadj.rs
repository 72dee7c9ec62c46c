//! Self-adjoint operators on weighted spaces.
//!
//! An operator is stored through its quadratic-form matrix `K` and the
//! diagonal mass `W` of its space, so that `⟨f, A g⟩ = fᴴ K g` and the action
//! matrix is `A = W⁻¹K`. The pencil `(K, W)` is diagonalized once at
//! construction via the Hermitian similarity `S = W^{−1/2} K W^{−1/2}`; every
//! query afterwards is a read-only function of the cached eigenpairs.
//!
//! Resolvents follow the convention `R_A(z) = (A − z)⁻¹`.

use crate::error::{Error, Result};
use crate::numlin::{eigh, DenseMatrix, C64};
use crate::wspace::WeightedSpace;

/// Relative distance (w.r.t. `1 + ‖A‖`) below which `z` counts as on the spectrum.
pub const RESOLVENT_GUARD: f64 = 1e-10;
/// Default endpoint guard factor for spectral windows.
pub const ENDPOINT_GUARD: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SelfAdjointOp {
    space: WeightedSpace,
    form: DenseMatrix,
    values: Vec<f64>,
    /// Euclidean-orthonormal eigenvectors of `W^{−1/2} K W^{−1/2}`.
    unit_vectors: DenseMatrix,
}

impl SelfAdjointOp {
    /// Operator associated with the Hermitian form matrix `form` on `space`.
    pub fn from_form(space: WeightedSpace, form: DenseMatrix) -> Result<Self> {
        let n = space.dim();
        if form.rows() != n || form.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: form.rows() });
        }
        let isq = space.inv_sqrt_mass();
        let sim = form.scale_rows(&isq).scale_cols(&isq);
        let ed = eigh(&sim)?;
        Ok(Self { space, form, values: ed.values, unit_vectors: ed.vectors })
    }

    pub fn space(&self) -> &WeightedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn form(&self) -> &DenseMatrix {
        &self.form
    }

    /// `W⁻¹K`.
    pub fn action(&self) -> DenseMatrix {
        let inv: Vec<f64> = self.space.mass().iter().map(|x| 1.0 / x).collect();
        self.form.scale_rows(&inv)
    }

    /// Eigenvalues of the pencil `(K, W)`, ascending.
    pub fn spectrum(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvectors as columns, orthonormal in the weighted inner product.
    pub fn vectors(&self) -> DenseMatrix {
        self.unit_vectors.scale_rows(&self.space.inv_sqrt_mass())
    }

    pub fn lower_bound(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Operator norm `max |λ|`.
    pub fn norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Distance from `z` to the spectrum.
    pub fn spectral_distance(&self, z: C64) -> f64 {
        self.values
            .iter()
            .map(|&l| (C64::new(l, 0.0) - z).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// `f(A) = V f(Λ) Vᴴ W`, for any function sampled on the eigenvalues.
    pub fn func_calc(&self, f: impl Fn(f64) -> C64) -> Result<DenseMatrix> {
        let mut samples = Vec::with_capacity(self.values.len());
        for &l in &self.values {
            let v = f(l);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFiniteFunctionValue { eigenvalue: l });
            }
            samples.push(v);
        }
        Ok(self.with_spectral_samples(&samples))
    }

    fn with_spectral_samples(&self, samples: &[C64]) -> DenseMatrix {
        let u = &self.unit_vectors;
        let inner = u.scale_cols_complex(samples).matmul(&u.adjoint());
        inner.scale_rows(&self.space.inv_sqrt_mass()).scale_cols(&self.space.sqrt_mass())
    }

    pub fn resolvent(&self, z: C64) -> Result<DenseMatrix> {
        let guard = RESOLVENT_GUARD * (1.0 + self.norm());
        let distance = self.spectral_distance(z);
        if distance <= guard {
            return Err(Error::SpectrumProximity { z, distance, guard });
        }
        self.func_calc(|l| (C64::new(l, 0.0) - z).inv())
    }

    /// `P_A(window)` and its rank.
    pub fn spectral_projection(&self, win: &SpectrumWindow) -> Result<(DenseMatrix, usize)> {
        let guard = win.guard_for(self);
        win.check_clear(&self.values, guard)?;
        let samples: Vec<C64> = self
            .values
            .iter()
            .map(|&l| C64::new(if win.contains(l) { 1.0 } else { 0.0 }, 0.0))
            .collect();
        let rank = self.values.iter().filter(|&&l| win.contains(l)).count();
        Ok((self.with_spectral_samples(&samples), rank))
    }

    /// `μ_ψ(window) = ‖P_A(window) ψ‖²`.
    pub fn spectral_measure(&self, psi: &[C64], win: &SpectrumWindow) -> Result<f64> {
        if psi.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: psi.len() });
        }
        let guard = win.guard_for(self);
        win.check_clear(&self.values, guard)?;
        // coefficients in the W-orthonormal eigenbasis: Uᴴ W^{1/2} ψ
        let sq = self.space.sqrt_mass();
        let scaled: Vec<C64> = psi.iter().zip(&sq).map(|(z, s)| z * s).collect();
        let u = &self.unit_vectors;
        let mut total = 0.0;
        for (k, &l) in self.values.iter().enumerate() {
            if win.contains(l) {
                let c: C64 = (0..self.dim()).map(|i| u[(i, k)].conj() * scaled[i]).sum();
                total += c.norm_sqr();
            }
        }
        Ok(total)
    }

    /// Number of eigenvalues in `win`, after checking the endpoints are clear.
    pub fn count_in(&self, win: &SpectrumWindow) -> Result<usize> {
        let guard = win.guard_for(self);
        win.check_clear(&self.values, guard)?;
        Ok(self.values.iter().filter(|&&l| win.contains(l)).count())
    }

    /// `e^{itA}`.
    pub fn unitary_group(&self, t: f64) -> DenseMatrix {
        self.func_calc(|l| C64::new(0.0, t * l).exp()).expect("unimodular samples are finite")
    }

    /// `e^{−tA}` for `t ≥ 0`.
    pub fn heat_semigroup(&self, t: f64) -> Result<DenseMatrix> {
        if t < 0.0 || t.is_nan() {
            return Err(Error::NegativeTime(t));
        }
        self.func_calc(|l| C64::new((-t * l).exp(), 0.0))
    }
}

/// Open spectral window `(lo, hi)`. Projections refuse windows whose
/// endpoints sit within `endpoint_guard` of an eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumWindow {
    pub lo: f64,
    pub hi: f64,
    pub endpoint_guard: Option<f64>,
}

impl SpectrumWindow {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        Ok(Self { lo, hi, endpoint_guard: None })
    }

    pub fn real_line() -> Self {
        Self { lo: f64::NEG_INFINITY, hi: f64::INFINITY, endpoint_guard: None }
    }

    pub fn with_guard(mut self, guard: f64) -> Self {
        self.endpoint_guard = Some(guard);
        self
    }

    pub fn contains(&self, l: f64) -> bool {
        self.lo < l && l < self.hi
    }

    pub fn guard_for(&self, op: &SelfAdjointOp) -> f64 {
        self.endpoint_guard.unwrap_or(ENDPOINT_GUARD * (1.0 + op.norm()))
    }

    pub fn check_clear(&self, values: &[f64], guard: f64) -> Result<()> {
        for &l in values {
            for endpoint in [self.lo, self.hi] {
                if endpoint.is_finite() && (l - endpoint).abs() <= guard {
                    return Err(Error::EndpointCollision { eigenvalue: l, endpoint, guard });
                }
            }
        }
        Ok(())
    }
}

/// Bounded continuous test functions for the functional calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundedFn {
    /// `1/(1+λ²)`
    Lorentzian,
    /// `λ/(1+λ²)`
    OddLorentzian,
    /// `exp(−λ²)`
    Gaussian,
    /// `arctan λ`; different limits at ±∞, so strong mode only.
    Arctan,
}

impl BoundedFn {
    pub const ALL: [BoundedFn; 4] =
        [BoundedFn::Lorentzian, BoundedFn::OddLorentzian, BoundedFn::Gaussian, BoundedFn::Arctan];

    pub fn name(self) -> &'static str {
        match self {
            BoundedFn::Lorentzian => "lorentzian",
            BoundedFn::OddLorentzian => "odd_lorentzian",
            BoundedFn::Gaussian => "gaussian",
            BoundedFn::Arctan => "arctan",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn eval(self, l: f64) -> C64 {
        let v = match self {
            BoundedFn::Lorentzian => 1.0 / (1.0 + l * l),
            BoundedFn::OddLorentzian => l / (1.0 + l * l),
            BoundedFn::Gaussian => (-l * l).exp(),
            BoundedFn::Arctan => l.atan(),
        };
        C64::new(v, 0.0)
    }

    /// Equal limits at ±∞, the class covered by norm-mode convergence.
    pub fn norm_mode(self) -> bool {
        !matches!(self, BoundedFn::Arctan)
    }
}
