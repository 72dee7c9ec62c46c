//! Convergence diagnostics for a pair of self-adjoint operators `A` on `H`
//! and `A_n` on `H_n`, linked by an embedding `J: H → H_n`.
//!
//! Distances are weighted operator norms; strong-mode variants report one
//! residual per test vector.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::numlin::{pencil_eigvalsh, DenseMatrix, C64};
use crate::selfadj::{BoundedFn, SelfAdjointOp, SpectrumWindow};
use crate::sturm::SlProblem;
use crate::wspace::{weighted_norm, Embedding, EmbeddingMetrics};

#[derive(Clone, Debug)]
pub struct ConvergencePair {
    limit: SelfAdjointOp,
    approx: SelfAdjointOp,
    embedding: Embedding,
    jstar: DenseMatrix,
}

impl ConvergencePair {
    pub fn new(limit: SelfAdjointOp, approx: SelfAdjointOp, embedding: Embedding) -> Result<Self> {
        if embedding.src() != limit.space() {
            return Err(Error::SpaceMismatch("embedding source differs from the limit space"));
        }
        if embedding.dst() != approx.space() {
            return Err(Error::SpaceMismatch("embedding target differs from the approximating space"));
        }
        let jstar = embedding.adjoint_map();
        Ok(Self { limit, approx, embedding, jstar })
    }

    /// Discretizes both problems and links them by `J = I`.
    pub fn from_problems(limit: &SlProblem, approx: &SlProblem) -> Result<Self> {
        let j = limit.embedding_to(approx)?;
        Self::new(limit.discretize()?, approx.discretize()?, j)
    }

    pub fn limit(&self) -> &SelfAdjointOp {
        &self.limit
    }

    pub fn approx(&self) -> &SelfAdjointOp {
        &self.approx
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn jstar(&self) -> &DenseMatrix {
        &self.jstar
    }

    fn j(&self) -> &DenseMatrix {
        self.embedding.map()
    }

    /// `J* M J` for `M` on `H_n`.
    fn pull_back(&self, m: &DenseMatrix) -> DenseMatrix {
        self.jstar.matmul(&m.matmul(self.j()))
    }

    fn norm_h(&self, m: &DenseMatrix) -> f64 {
        let s = self.limit.space();
        weighted_norm(m, s, s)
    }

    fn norm_h_to_hn(&self, m: &DenseMatrix) -> f64 {
        weighted_norm(m, self.limit.space(), self.approx.space())
    }

    /// `J* f(A_n) J − f(A)` for precomputed `f(A_n)`, `f(A)`.
    fn sandwich_gap(&self, fan: &DenseMatrix, fa: &DenseMatrix) -> DenseMatrix {
        &self.pull_back(fan) - fa
    }

    fn residuals(&self, d: &DenseMatrix, test_set: &[Vec<C64>], space_is_h: bool) -> Result<Vec<f64>> {
        let space = if space_is_h { self.limit.space() } else { self.approx.space() };
        test_set.iter().map(|psi| space.norm(&d.mul_vec(psi))).collect()
    }
}

/// `‖J* R_{A_n}(z) J − R_A(z)‖` on `H`.
pub fn nrc_distance(pair: &ConvergencePair, z: C64) -> Result<f64> {
    let (rn, r) = (pair.approx.resolvent(z)?, pair.limit.resolvent(z)?);
    Ok(pair.norm_h(&pair.sandwich_gap(&rn, &r)))
}

/// `‖R_{A_n}(z) J − J R_A(z)‖` as a map `H → H_n`.
pub fn nrc_distance_alt(pair: &ConvergencePair, z: C64) -> Result<f64> {
    let (rn, r) = (pair.approx.resolvent(z)?, pair.limit.resolvent(z)?);
    Ok(pair.norm_h_to_hn(&intertwining_gap(pair, &rn, &r)))
}

fn intertwining_gap(pair: &ConvergencePair, fan: &DenseMatrix, fa: &DenseMatrix) -> DenseMatrix {
    &fan.matmul(pair.j()) - &pair.j().matmul(fa)
}

#[derive(Clone, Debug)]
pub struct SrcResiduals {
    /// `‖J*R_{A_n}(z)Jψ − R_A(z)ψ‖` per vector.
    pub sandwiched: Vec<f64>,
    /// `‖R_{A_n}(z)Jψ − JR_A(z)ψ‖` per vector.
    pub intertwined: Vec<f64>,
    /// `‖J*‖·intertwined + ‖J*J − I‖·‖R_A(z)ψ‖` per vector.
    pub bounds: Vec<f64>,
    /// Largest `sandwiched − bound`; nonpositive up to rounding.
    pub worst_excess: f64,
}

impl SrcResiduals {
    pub fn max(&self) -> f64 {
        self.sandwiched.iter().copied().fold(0.0, f64::max)
    }
}

/// Strong resolvent residuals in both forms, with the per-vector domination.
pub fn src_residuals(pair: &ConvergencePair, z: C64, test_set: &[Vec<C64>]) -> Result<SrcResiduals> {
    let (rn, r) = (pair.approx.resolvent(z)?, pair.limit.resolvent(z)?);
    let sandwiched = pair.residuals(&pair.sandwich_gap(&rn, &r), test_set, true)?;
    let intertwined = pair.residuals(&intertwining_gap(pair, &rn, &r), test_set, false)?;
    let metrics = pair.embedding.metrics();
    let mut bounds = Vec::with_capacity(test_set.len());
    let mut worst_excess = f64::NEG_INFINITY;
    for (k, psi) in test_set.iter().enumerate() {
        let rpsi = pair.limit.space().norm(&r.mul_vec(psi))?;
        let b = metrics.j_norm * intertwined[k] + metrics.jstarj_defect * rpsi;
        worst_excess = worst_excess.max(sandwiched[k] - b);
        bounds.push(b);
    }
    Ok(SrcResiduals { sandwiched, intertwined, bounds, worst_excess })
}

/// `max(‖J*f(A_n)J − f(A)‖, ‖J⁻¹f(A_n)J − f(A)‖)`.
pub fn fcalc_distance(pair: &ConvergencePair, f: impl Fn(f64) -> C64) -> Result<f64> {
    let inv = pair.embedding.j_inverse()?;
    let (fan, fa) = (pair.approx.func_calc(&f)?, pair.limit.func_calc(&f)?);
    let via_adjoint = pair.norm_h(&pair.sandwich_gap(&fan, &fa));
    let via_inverse = pair.norm_h(&(&inv.map.matmul(&fan.matmul(pair.j())) - &fa));
    Ok(via_adjoint.max(via_inverse))
}

/// `‖J*f(A_n)Jψ − f(A)ψ‖` per test vector.
pub fn fcalc_residuals(pair: &ConvergencePair, f: impl Fn(f64) -> C64, test_set: &[Vec<C64>]) -> Result<Vec<f64>> {
    let (fan, fa) = (pair.approx.func_calc(&f)?, pair.limit.func_calc(&f)?);
    pair.residuals(&pair.sandwich_gap(&fan, &fa), test_set, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semigroup {
    /// `e^{itA}`
    Unitary,
    /// `e^{−tA}`
    Heat,
}

impl Semigroup {
    pub fn name(self) -> &'static str {
        match self {
            Semigroup::Unitary => "unitary",
            Semigroup::Heat => "heat",
        }
    }

    fn apply(self, op: &SelfAdjointOp, t: f64) -> Result<DenseMatrix> {
        match self {
            Semigroup::Unitary => Ok(op.unitary_group(t)),
            Semigroup::Heat => op.heat_semigroup(t),
        }
    }
}

/// Norm distance `‖J* S_n(t) J − S(t)‖`.
pub fn semigroup_distance(pair: &ConvergencePair, t: f64, kind: Semigroup) -> Result<f64> {
    let (sn, s) = (kind.apply(&pair.approx, t)?, kind.apply(&pair.limit, t)?);
    Ok(pair.norm_h(&pair.sandwich_gap(&sn, &s)))
}

/// Per-vector residuals `‖J* S_n(t) Jψ − S(t)ψ‖`.
pub fn semigroup_residuals(pair: &ConvergencePair, t: f64, kind: Semigroup, test_set: &[Vec<C64>]) -> Result<Vec<f64>> {
    let (sn, s) = (kind.apply(&pair.approx, t)?, kind.apply(&pair.limit, t)?);
    pair.residuals(&pair.sandwich_gap(&sn, &s), test_set, true)
}

#[derive(Clone, Copy, Debug)]
pub struct RelboundCertificate {
    /// `c_n = ‖(A_nJ − JA)(A² + I)^{−1/2}‖`.
    pub c_n: f64,
    /// `nrc_distance(pair, i)`.
    pub nrc_i: f64,
    /// `nrc_i ≤ 2c_n + slack`.
    pub bound_ok: bool,
}

pub const RELBOUND_SLACK: f64 = 1e-10;

pub fn relbound_certificate(pair: &ConvergencePair, slack: f64) -> Result<RelboundCertificate> {
    let smooth = pair.limit.func_calc(|l| C64::new(1.0 / (1.0 + l * l).sqrt(), 0.0))?;
    let commutator = intertwining_gap(pair, &pair.approx.action(), &pair.limit.action());
    let c_n = pair.norm_h_to_hn(&commutator.matmul(&smooth));
    let nrc_i = nrc_distance(pair, C64::new(0.0, 1.0))?;
    Ok(RelboundCertificate { c_n, nrc_i, bound_ok: nrc_i <= 2.0 * c_n + slack })
}

/// Hermitian matrix of `q_{A_n}(J·) − q_A(·)` on `H`.
fn form_difference(pair: &ConvergencePair) -> DenseMatrix {
    let j = pair.j();
    let d = &j.adjoint().matmul(&pair.approx.form().matmul(j)) - pair.limit.form();
    (&d + &d.adjoint()).scale_real(0.5)
}

/// `ρ_n = max_ψ |ψᴴΔψ| / ψᴴ(K − γW + W)ψ`, the form-perturbation bound
/// relative to `A − γ + 1`.
pub fn form_delta(pair: &ConvergencePair, gamma: f64) -> Result<f64> {
    let mass = pair.limit.space().mass();
    let shift: Vec<C64> = mass.iter().map(|m| C64::new((1.0 - gamma) * m, 0.0)).collect();
    let reference = pair.limit.form() + &DenseMatrix::from_diag(&shift);
    let vals = pencil_eigvalsh(&form_difference(pair), &reference)?;
    Ok(vals.iter().fold(0.0, |acc: f64, v| acc.max(v.abs())))
}

/// `B_n = J*A_nJ`: the operator of the form `JᴴK_nJ` on `H`.
pub fn sandwich_operator(pair: &ConvergencePair) -> Result<SelfAdjointOp> {
    let j = pair.j();
    let k = j.adjoint().matmul(&pair.approx.form().matmul(j));
    let k = (&k + &k.adjoint()).scale_real(0.5);
    SelfAdjointOp::from_form(pair.limit.space().clone(), k)
}

#[derive(Clone, Debug)]
pub struct SandwichRow {
    /// Spectral parameter `−λ`.
    pub lambda: f64,
    pub rho_lambda: f64,
    /// `‖R_{B_n}(−λ) − R_A(−λ)‖`.
    pub lhs: f64,
    /// `‖R_A(−λ)‖ ρ_λ/(1 − ρ_λ)`, infinite when `ρ_λ ≥ 1`.
    pub rhs: f64,
}

#[derive(Clone, Debug)]
pub struct SandwichCheck {
    pub rho: f64,
    pub rows: Vec<SandwichRow>,
    /// Largest `lhs − rhs` over rows with `ρ_λ < 1`.
    pub worst_excess: f64,
}

impl SandwichCheck {
    pub fn holds(&self, slack: f64) -> bool {
        self.worst_excess <= slack
    }
}

/// Resolvent comparison between `B_n` and `A` at `−λ` for `λ = shift − γ`,
/// one row per shift (each shift must be positive).
pub fn sandwich_check(pair: &ConvergencePair, gamma: f64, shifts: &[f64]) -> Result<SandwichCheck> {
    let rho = form_delta(pair, gamma)?;
    let b = sandwich_operator(pair)?;
    let mut rows = Vec::with_capacity(shifts.len());
    let mut worst_excess = f64::NEG_INFINITY;
    for &s in shifts {
        if !(s > 0.0) {
            return Err(Error::HypothesisViolation(format!("sandwich shift must be positive, got {s}")));
        }
        let lambda = s - gamma;
        let rho_lambda = rho * (1.0 / s).max(1.0);
        let z = C64::new(-lambda, 0.0);
        let ra = pair.limit.resolvent(z)?;
        let rhs = if rho_lambda < 1.0 {
            (1.0 / pair.limit.spectral_distance(z)) * rho_lambda / (1.0 - rho_lambda)
        } else {
            f64::INFINITY
        };
        let lhs = match b.resolvent(z) {
            Ok(rb) => pair.norm_h(&(&rb - &ra)),
            Err(_) if rho_lambda >= 1.0 => f64::INFINITY,
            Err(e) => return Err(e),
        };
        if rho_lambda < 1.0 {
            worst_excess = worst_excess.max(lhs - rhs);
        }
        rows.push(SandwichRow { lambda, rho_lambda, lhs, rhs });
    }
    Ok(SandwichCheck { rho, rows, worst_excess })
}

fn windowed(values: &[f64], win: &SpectrumWindow) -> Vec<f64> {
    values.iter().copied().filter(|&l| win.contains(l)).collect()
}

fn dist_to(l: f64, set: &[f64]) -> f64 {
    set.iter().map(|s| (s - l).abs()).fold(f64::INFINITY, f64::min)
}

/// `max_{λ ∈ σ(A)∩win} dist(λ, σ(A_n))`.
pub fn spectra_inclusion_gap(pair: &ConvergencePair, win: &SpectrumWindow) -> f64 {
    let target = pair.approx.spectrum();
    windowed(pair.limit.spectrum(), win).iter().map(|&l| dist_to(l, target)).fold(0.0, f64::max)
}

/// Hausdorff distance between the windowed spectra; `∞` if exactly one is empty.
pub fn spectra_hausdorff(pair: &ConvergencePair, win: &SpectrumWindow) -> f64 {
    hausdorff(&windowed(pair.limit.spectrum(), win), &windowed(pair.approx.spectrum(), win))
}

pub fn hausdorff(a: &[f64], b: &[f64]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => 0.0,
        (true, false) | (false, true) => f64::INFINITY,
        _ => {
            let one = |x: &[f64], y: &[f64]| x.iter().map(|&l| dist_to(l, y)).fold(0.0, f64::max);
            one(a, b).max(one(b, a))
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProjectionDiagnostics {
    /// `‖J*P_{A_n}(win)Jψ − P_A(win)ψ‖` per vector.
    pub residuals: Vec<f64>,
    pub rank_a: usize,
    pub rank_an: usize,
    /// `rank_A ≤ rank_An · max(‖J‖², 1)`.
    pub inequality_holds: bool,
}

pub fn projection_diagnostics(
    pair: &ConvergencePair,
    win: &SpectrumWindow,
    test_set: &[Vec<C64>],
) -> Result<ProjectionDiagnostics> {
    let (pa, rank_a) = pair.limit.spectral_projection(win)?;
    let (pan, rank_an) = pair.approx.spectral_projection(win)?;
    let residuals = pair.residuals(&pair.sandwich_gap(&pan, &pa), test_set, true)?;
    let jn = pair.embedding.metrics().j_norm;
    let inequality_holds = rank_a as f64 <= rank_an as f64 * (jn * jn).max(1.0);
    Ok(ProjectionDiagnostics { residuals, rank_a, rank_an, inequality_holds })
}

/// Number of eigenvalues in `(λ − ε, λ + ε)`.
pub fn ess_window_count(op: &SelfAdjointOp, lambda: f64, eps: f64) -> Result<usize> {
    op.count_in(&SpectrumWindow::new(lambda - eps, lambda + eps)?)
}

#[derive(Clone, Debug)]
pub struct WeakResiduals {
    /// `|⟨φ, (J*R_{A_n}(z)J − R_A(z))ψ⟩|` per probe pair.
    pub weak: Vec<f64>,
    /// `‖(J*R_{A_n}(z)J − R_A(z))ψ‖` per probe pair.
    pub strong: Vec<f64>,
}

pub fn weak_residuals(pair: &ConvergencePair, z: C64, probes: &[(Vec<C64>, Vec<C64>)]) -> Result<WeakResiduals> {
    if z.im == 0.0 {
        return Err(Error::RealSpectralParameter(z));
    }
    let (rn, r) = (pair.approx.resolvent(z)?, pair.limit.resolvent(z)?);
    let d = pair.sandwich_gap(&rn, &r);
    let space = pair.limit.space();
    let mut weak = Vec::with_capacity(probes.len());
    let mut strong = Vec::with_capacity(probes.len());
    for (phi, psi) in probes {
        let dpsi = d.mul_vec(psi);
        weak.push(space.inner(phi, &dpsi)?.norm());
        strong.push(space.norm(&dpsi)?);
    }
    Ok(WeakResiduals { weak, strong })
}

#[derive(Clone, Copy, Debug)]
pub struct EquivalenceCheck {
    pub nrc: f64,
    pub nrc_alt: f64,
    /// `‖J*‖·nrc_alt + ‖J*J − I‖·‖R_A(z)‖`.
    pub nrc_bound: f64,
    /// `‖J‖·nrc + ‖JJ* − I‖·‖R_{A_n}(z)‖·‖J‖`.
    pub alt_bound: f64,
}

impl EquivalenceCheck {
    pub fn holds(&self, slack: f64) -> bool {
        self.nrc <= self.nrc_bound + slack && self.nrc_alt <= self.alt_bound + slack
    }
}

pub fn equivalence_check(pair: &ConvergencePair, z: C64) -> Result<EquivalenceCheck> {
    let m = pair.embedding.metrics();
    let nrc = nrc_distance(pair, z)?;
    let nrc_alt = nrc_distance_alt(pair, z)?;
    let ra = 1.0 / pair.limit.spectral_distance(z);
    let ran = 1.0 / pair.approx.spectral_distance(z);
    Ok(EquivalenceCheck {
        nrc,
        nrc_alt,
        nrc_bound: m.j_norm * nrc_alt + m.jstarj_defect * ra,
        alt_bound: m.j_norm * nrc + m.jjstar_defect * ran * m.j_norm,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct ZAudit {
    pub z: C64,
    pub nrc: f64,
    pub nrc_alt: f64,
    /// `sup_{σ(A_n)} |λ − i|/|λ − z| · sup_{σ(A)} |λ − i|/|λ − z|`.
    pub constant: f64,
    /// `constant · nrc_alt(i)`, an upper bound for `nrc_alt(z)`.
    pub alt_bound: f64,
}

fn transfer_constant(values: &[f64], z: C64) -> f64 {
    let i = C64::new(0.0, 1.0);
    values
        .iter()
        .map(|&l| (C64::new(l, 0.0) - i).norm() / (C64::new(l, 0.0) - z).norm())
        .fold(0.0, f64::max)
}

pub fn z_audit(pair: &ConvergencePair, z: C64, nrc_alt_i: f64) -> Result<ZAudit> {
    let constant = transfer_constant(pair.approx.spectrum(), z) * transfer_constant(pair.limit.spectrum(), z);
    Ok(ZAudit {
        z,
        nrc: nrc_distance(pair, z)?,
        nrc_alt: nrc_distance_alt(pair, z)?,
        constant,
        alt_bound: constant * nrc_alt_i,
    })
}

/// Everything [`assess`] computes beyond the embedding itself.
#[derive(Clone, Debug)]
pub struct AssessConfig {
    pub z: C64,
    pub z_audit: Vec<C64>,
    pub functions: Vec<BoundedFn>,
    pub heat_times: Vec<f64>,
    pub unitary_times: Vec<f64>,
    /// Window for the Hausdorff and inclusion diagnostics.
    pub window: SpectrumWindow,
    pub projection_window: Option<SpectrumWindow>,
    /// Common lower bound of all operators in the sweep.
    pub gamma: f64,
    /// Values of `λ + γ` for the sandwich resolvent comparison.
    pub sandwich_shifts: Vec<f64>,
    pub relbound_slack: f64,
    pub test_set: Vec<Vec<C64>>,
}

impl AssessConfig {
    pub fn new(window: SpectrumWindow, gamma: f64, test_set: Vec<Vec<C64>>) -> Self {
        Self {
            z: C64::new(0.0, 1.0),
            z_audit: vec![C64::new(0.0, 2.0), C64::new(-1.0, 1.0), C64::new(5.0, 3.0)],
            functions: vec![BoundedFn::Lorentzian],
            heat_times: vec![1.0],
            unitary_times: vec![0.7],
            window,
            projection_window: None,
            gamma,
            sandwich_shifts: vec![0.5, 1.0, 2.0, 10.0],
            relbound_slack: RELBOUND_SLACK,
            test_set,
        }
    }
}

/// One sweep row.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub n: u32,
    pub dim: usize,
    pub metrics: EmbeddingMetrics,
    pub nrc: f64,
    pub nrc_alt: f64,
    pub src_max: f64,
    /// `(column suffix, value)` in configuration order: functions, then
    /// heat and unitary semigroups per time.
    pub fcalc: Vec<(String, f64)>,
    pub hausdorff: f64,
    pub inclusion_gap: f64,
    pub relbound: RelboundCertificate,
    pub form_delta: f64,
    pub min_eig_a: f64,
    pub min_eig_an: f64,
    pub equivalence: EquivalenceCheck,
    pub src: SrcResiduals,
    pub z_audit: Vec<ZAudit>,
    pub sandwich: SandwichCheck,
    pub projection: Option<ProjectionDiagnostics>,
    pub weak: WeakResiduals,
    pub runtime_ms: u64,
    pub notes: String,
}

/// Column suffix for a semigroup at time `t`, e.g. `heat_t1`, `unitary_t0.7`.
pub fn semigroup_column(kind: Semigroup, t: f64) -> String {
    format!("{}_t{}", kind.name(), t)
}

pub fn assess(n: u32, pair: &ConvergencePair, cfg: &AssessConfig) -> Result<ConvergenceReport> {
    let start = Instant::now();
    let metrics = pair.embedding.metrics();
    let equivalence = equivalence_check(pair, cfg.z)?;
    let src = src_residuals(pair, cfg.z, &cfg.test_set)?;

    let mut notes = Vec::new();
    let mut fcalc = Vec::new();
    for &f in &cfg.functions {
        let value = if f.norm_mode() {
            fcalc_distance(pair, |l| f.eval(l))?
        } else {
            notes.push(format!("{} strong", f.name()));
            fcalc_residuals(pair, |l| f.eval(l), &cfg.test_set)?.into_iter().fold(0.0, f64::max)
        };
        fcalc.push((f.name().to_string(), value));
    }
    for &t in &cfg.heat_times {
        fcalc.push((semigroup_column(Semigroup::Heat, t), semigroup_distance(pair, t, Semigroup::Heat)?));
    }
    for &t in &cfg.unitary_times {
        let r = semigroup_residuals(pair, t, Semigroup::Unitary, &cfg.test_set)?;
        fcalc.push((semigroup_column(Semigroup::Unitary, t), r.into_iter().fold(0.0, f64::max)));
    }

    let z_audit = cfg
        .z_audit
        .iter()
        .map(|&z| z_audit(pair, z, equivalence.nrc_alt))
        .collect::<Result<Vec<_>>>()?;
    let sandwich = sandwich_check(pair, cfg.gamma, &cfg.sandwich_shifts)?;
    let projection = cfg
        .projection_window
        .as_ref()
        .map(|w| projection_diagnostics(pair, w, &cfg.test_set))
        .transpose()?;
    let probes: Vec<(Vec<C64>, Vec<C64>)> = (0..cfg.test_set.len())
        .map(|k| (cfg.test_set[k].clone(), cfg.test_set[(k + 1) % cfg.test_set.len()].clone()))
        .collect();
    let weak = weak_residuals(pair, cfg.z, &probes)?;

    Ok(ConvergenceReport {
        n,
        dim: pair.approx.dim(),
        metrics,
        nrc: equivalence.nrc,
        nrc_alt: equivalence.nrc_alt,
        src_max: src.max(),
        fcalc,
        hausdorff: spectra_hausdorff(pair, &cfg.window),
        inclusion_gap: spectra_inclusion_gap(pair, &cfg.window),
        relbound: relbound_certificate(pair, cfg.relbound_slack)?,
        form_delta: sandwich.rho,
        min_eig_a: pair.limit.lower_bound(),
        min_eig_an: pair.approx.lower_bound(),
        equivalence,
        src,
        z_audit,
        sandwich,
        projection,
        weak,
        runtime_ms: start.elapsed().as_millis() as u64,
        notes: notes.join("; "),
    })
}
