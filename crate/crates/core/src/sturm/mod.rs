//! Sturm–Liouville operators `(1/w)(−(p f′)′ + q f)` with Dirichlet ends,
//! discretized by the symmetric three-point scheme: `p` sampled at cell
//! midpoints, `w` and `q` at nodes.

mod expr;
mod family;

use std::fmt;
use std::sync::Arc;

pub use expr::{Expr, ExprError};
pub use family::{
    compact_cutoff_family, slnrc_family, CoefficientFamily, Deviations, FamilyKind, FamilyMember,
};

use crate::error::{Error, Result};
use crate::numlin::{pencil_eigvalsh, DenseMatrix, C64};
use crate::selfadj::SelfAdjointOp;
use crate::wspace::{Embedding, Grid, Layout, TestDictionary, WeightedSpace};

/// Shared real coefficient function.
pub type CoefFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Coefficient triple `(w, p, q)` with the lower bounds `w, p ≥ delta` and
/// `q ≥ gamma` it is expected to honour.
#[derive(Clone)]
pub struct Coefficients {
    pub w: CoefFn,
    pub p: CoefFn,
    pub q: CoefFn,
    pub delta: f64,
    pub gamma: f64,
}

impl fmt::Debug for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coefficients")
            .field("delta", &self.delta)
            .field("gamma", &self.gamma)
            .finish_non_exhaustive()
    }
}

impl Coefficients {
    /// Triple with only the structural bounds `w, p > 0`.
    pub fn new(
        w: impl Fn(f64) -> f64 + Send + Sync + 'static,
        p: impl Fn(f64) -> f64 + Send + Sync + 'static,
        q: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { w: Arc::new(w), p: Arc::new(p), q: Arc::new(q), delta: 0.0, gamma: f64::NEG_INFINITY }
    }

    pub fn constant(w: f64, p: f64, q: f64) -> Self {
        Self::new(move |_| w, move |_| p, move |_| q)
    }

    /// Evaluates expressions at a fixed family index `n`.
    pub fn from_exprs(w: &Expr, p: &Expr, q: &Expr, n: f64) -> Self {
        let (w, p, q) = (w.clone(), p.clone(), q.clone());
        Self::new(move |x| w.eval(x, n), move |x| p.eval(x, n), move |x| q.eval(x, n))
    }

    pub fn with_bounds(mut self, delta: f64, gamma: f64) -> Self {
        self.delta = delta;
        self.gamma = gamma;
        self
    }

    pub fn w_nodes(&self, grid: &Grid) -> Vec<f64> {
        grid.nodes().into_iter().map(|x| (self.w)(x)).collect()
    }

    pub fn q_nodes(&self, grid: &Grid) -> Vec<f64> {
        grid.nodes().into_iter().map(|x| (self.q)(x)).collect()
    }

    pub fn p_midpoints(&self, grid: &Grid) -> Vec<f64> {
        grid.midpoints().into_iter().map(|x| (self.p)(x)).collect()
    }

    /// Checks `w, p ≥ delta` (strictly positive) and `q ≥ gamma` at every
    /// sample point; the error names the offending node.
    pub fn check(&self, grid: &Grid) -> Result<()> {
        self.check_against(grid, self.delta, self.gamma)
    }

    pub fn check_against(&self, grid: &Grid, delta: f64, gamma: f64) -> Result<()> {
        let violation = |name: &str, kind: &str, i: usize, x: f64, v: f64, bound: String| {
            Error::HypothesisViolation(format!("{name}({kind} {i}: x = {x}) = {v} {bound}"))
        };
        for (i, x) in grid.nodes().into_iter().enumerate() {
            let w = (self.w)(x);
            if !(w.is_finite() && w > 0.0 && w >= delta) {
                return Err(violation("w", "node", i + 1, x, w, format!("below δ = {delta}")));
            }
            let q = (self.q)(x);
            if !(q.is_finite() && q >= gamma) {
                return Err(violation("q", "node", i + 1, x, q, format!("below γ = {gamma}")));
            }
        }
        for (i, x) in grid.midpoints().into_iter().enumerate() {
            let p = (self.p)(x);
            if !(p.is_finite() && p > 0.0 && p >= delta) {
                return Err(violation("p", "midpoint", i, x, p, format!("below δ = {delta}")));
            }
        }
        Ok(())
    }
}

/// Dirichlet problem on a grid.
#[derive(Clone, Debug)]
pub struct SlProblem {
    pub grid: Grid,
    pub coeffs: Coefficients,
}

/// Forward-difference factorization `T₀ = D*D`.
#[derive(Clone, Debug)]
pub struct Factorization {
    /// `D` as a map from the nodal space into the `p`-weighted staggered space.
    pub d: Embedding,
}

impl Factorization {
    pub fn map(&self) -> &DenseMatrix {
        self.d.map()
    }

    pub fn staggered(&self) -> &WeightedSpace {
        self.d.dst()
    }

    /// `D*D` as an operator on the nodal space.
    pub fn product(&self) -> DenseMatrix {
        self.d.adjoint_map().matmul(self.d.map())
    }
}

/// Outcome of the discrete form-bound check.
#[derive(Clone, Debug)]
pub struct QfreeCheck {
    pub holds: bool,
    /// Worst LHS/RHS ratio over the sample vectors.
    pub worst_ratio: f64,
    /// Supremum of the ratio over all vectors (top pencil eigenvalue).
    pub pencil_ratio: f64,
    /// Local L¹ bound `M` of `q`.
    pub bound: f64,
    pub samples: usize,
}

impl SlProblem {
    pub fn new(grid: Grid, coeffs: Coefficients) -> Self {
        Self { grid, coeffs }
    }

    fn sign_checked(&self) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
        let (nodes, mids) = (self.grid.nodes(), self.grid.midpoints());
        let w = self.coeffs.w_nodes(&self.grid);
        let p = self.coeffs.p_midpoints(&self.grid);
        let q = self.coeffs.q_nodes(&self.grid);
        for (i, &v) in w.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::CoefficientSignViolation { name: "w", x: nodes[i], value: v });
            }
        }
        for (i, &v) in p.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::CoefficientSignViolation { name: "p", x: mids[i], value: v });
            }
        }
        if let Some(i) = q.iter().position(|v| !v.is_finite()) {
            return Err(Error::CoefficientSignViolation { name: "q", x: nodes[i], value: q[i] });
        }
        Ok((w, p, q))
    }

    pub fn space(&self) -> Result<WeightedSpace> {
        let (w, _, _) = self.sign_checked()?;
        WeightedSpace::on_grid(self.grid, w)
    }

    /// Tridiagonal form matrix `K`, exactly symmetric by construction.
    pub fn form_matrix(&self) -> Result<DenseMatrix> {
        let (_, p, q) = self.sign_checked()?;
        Ok(assemble(&p, &q, self.grid.h()))
    }

    pub fn discretize(&self) -> Result<SelfAdjointOp> {
        let (w, p, q) = self.sign_checked()?;
        let space = WeightedSpace::on_grid(self.grid, w)?;
        SelfAdjointOp::from_form(space, assemble(&p, &q, self.grid.h()))
    }

    /// `Σ p_{i+½}|f_{i+1} − f_i|²/h + Σ qᵢ|fᵢ|² h` with zero boundary values.
    pub fn form_value(&self, f: &[C64]) -> Result<f64> {
        let m = self.grid.m();
        if f.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: f.len() });
        }
        let (_, p, q) = self.sign_checked()?;
        let h = self.grid.h();
        let at = |i: usize| if i == 0 || i > m { C64::new(0.0, 0.0) } else { f[i - 1] };
        let kinetic: f64 = (0..=m).map(|j| p[j] * (at(j + 1) - at(j)).norm_sqr() / h).sum();
        let potential: f64 = f.iter().zip(&q).map(|(v, q)| q * v.norm_sqr() * h).sum();
        Ok(kinetic + potential)
    }

    pub fn factorize(&self) -> Result<Factorization> {
        let (w, p, q) = self.sign_checked()?;
        let nodes = self.grid.nodes();
        if let Some(i) = q.iter().position(|&v| v != 0.0) {
            return Err(Error::NonZeroPotential { x: nodes[i], value: q[i] });
        }
        let m = self.grid.m();
        let h = self.grid.h();
        let d = DenseMatrix::from_fn(m + 1, m, |j, i| {
            if i == j {
                C64::new(1.0 / h, 0.0)
            } else if i + 1 == j {
                C64::new(-1.0 / h, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let nodal = WeightedSpace::on_grid(self.grid, w)?;
        let staggered = WeightedSpace::new(self.grid, Layout::Midpoints, p)?;
        Ok(Factorization { d: Embedding::new(nodal, staggered, d)? })
    }

    /// Discrete analogue of `∫|q||f|² ≤ M(ε∫p|f′|² + (1 + 1/ε)∫|f|²w)` on the
    /// standard dictionary extended with seeded random vectors.
    pub fn qfree_check(&self, eps: f64, samples: usize, seed: u64, slack: f64) -> Result<QfreeCheck> {
        let (w, p, q) = self.sign_checked()?;
        let h = self.grid.h();
        let qf = self.coeffs.q.clone();
        let bound = local_l1_bound(&|x| qf(x), self.grid.a(), self.grid.b(), h);
        let space = WeightedSpace::on_grid(self.grid, w.clone())?;
        let modes = samples.min(TestDictionary::SINE_MODES);
        let dict = TestDictionary::with_counts(&space, seed, modes, samples - modes);

        let zeros = vec![0.0; q.len()];
        let kinetic = assemble(&p, &zeros, h);
        let rhs_matrix = (&kinetic.scale_real(eps)
            + &DenseMatrix::from_real_diag(&space.mass()).scale_real(1.0 + 1.0 / eps))
            .scale_real(bound);
        let lhs_diag: Vec<f64> = q.iter().map(|v| v.abs() * h).collect();

        let mut worst: f64 = 0.0;
        for f in &dict.vectors {
            let lhs: f64 = f.iter().zip(&lhs_diag).map(|(v, d)| d * v.norm_sqr()).sum();
            if lhs == 0.0 {
                continue;
            }
            let rhs = quad(&rhs_matrix, f);
            worst = worst.max(if rhs > 0.0 { lhs / rhs } else { f64::INFINITY });
        }
        let pencil_ratio = if bound > 0.0 {
            let vals = pencil_eigvalsh(&DenseMatrix::from_real_diag(&lhs_diag), &rhs_matrix)?;
            vals.last().copied().unwrap_or(0.0).max(0.0)
        } else {
            0.0
        };
        Ok(QfreeCheck { holds: worst <= 1.0 + slack, worst_ratio: worst, pencil_ratio, bound, samples: dict.len() })
    }

    /// Identification `J = I` from this problem's weighting into another's.
    pub fn embedding_to(&self, other: &SlProblem) -> Result<Embedding> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        make_embedding(&self.grid, &self.coeffs, &other.coeffs)
    }
}

fn quad(m: &DenseMatrix, f: &[C64]) -> f64 {
    let mf = m.mul_vec(f);
    f.iter().zip(&mf).map(|(a, b)| (a.conj() * b).re).sum()
}

fn assemble(p: &[f64], q: &[f64], h: f64) -> DenseMatrix {
    let m = q.len();
    let mut k = DenseMatrix::zeros(m, m);
    for r in 0..m {
        k[(r, r)] = C64::new((p[r] + p[r + 1]) / h + q[r] * h, 0.0);
        if r + 1 < m {
            let off = C64::new(-p[r + 1] / h, 0.0);
            k[(r, r + 1)] = off;
            k[(r + 1, r)] = off;
        }
    }
    k
}

/// `J = I` between the `w`-weightings of two coefficient triples on `grid`.
pub fn make_embedding(grid: &Grid, src: &Coefficients, dst: &Coefficients) -> Result<Embedding> {
    let s = WeightedSpace::on_grid(*grid, src.w_nodes(grid))?;
    let d = WeightedSpace::on_grid(*grid, dst.w_nodes(grid))?;
    Embedding::identity(s, d)
}

/// `sup_k ∫_{[k,k+1)∩(a,b)} |q|` by the midpoint rule with step at most
/// `resolution` inside each cell.
pub fn local_l1_bound(q: &dyn Fn(f64) -> f64, a: f64, b: f64, resolution: f64) -> f64 {
    local_l1_bound_on(q, &[(a, b)], resolution)
}

/// As [`local_l1_bound`], over a union of disjoint segments.
pub fn local_l1_bound_on(q: &dyn Fn(f64) -> f64, segments: &[(f64, f64)], resolution: f64) -> f64 {
    let live: Vec<(f64, f64)> = segments.iter().copied().filter(|(lo, hi)| hi > lo).collect();
    if live.is_empty() {
        return 0.0;
    }
    let first = live.iter().map(|s| s.0).fold(f64::INFINITY, f64::min).floor() as i64;
    let last = live.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max).ceil() as i64;
    let mut best: f64 = 0.0;
    for k in first..last {
        let (c0, c1) = (k as f64, k as f64 + 1.0);
        let mut total = 0.0;
        for &(lo, hi) in &live {
            let (l, r) = (lo.max(c0), hi.min(c1));
            if r <= l {
                continue;
            }
            let pieces = ((r - l) / resolution).ceil().max(1.0) as usize;
            let step = (r - l) / pieces as f64;
            total += (0..pieces).map(|j| q(l + (j as f64 + 0.5) * step).abs()).sum::<f64>() * step;
        }
        best = best.max(total);
    }
    best
}

/// Node-sampled variant: each node contributes `|q(xᵢ)|·h` to the unit cell
/// containing it.
pub fn local_l1_bound_nodal(q: &dyn Fn(f64) -> f64, grid: &Grid, keep: impl Fn(f64) -> bool) -> f64 {
    let h = grid.h();
    let mut cells: std::collections::BTreeMap<i64, f64> = Default::default();
    for x in grid.nodes().into_iter().filter(|&x| keep(x)) {
        *cells.entry(x.floor() as i64).or_default() += q(x).abs() * h;
    }
    cells.values().copied().fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::eigvalsh;
    use crate::wspace::weighted_norm;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn free(a: f64, b: f64, m: usize) -> SlProblem {
        SlProblem::new(Grid::new(a, b, m).unwrap(), Coefficients::constant(1.0, 1.0, 0.0))
    }

    fn random_vec(rng: &mut ChaCha8Rng, m: usize) -> Vec<C64> {
        (0..m).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
    }

    #[test]
    fn discretize_examples() {
        let op = free(0.0, 4.0, 3).discretize().unwrap();
        let s = 2f64.sqrt();
        for (got, want) in op.spectrum().iter().zip([2.0 - s, 2.0, 2.0 + s]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-13);
        }
        let grid = Grid::new(0.0, PI, 20).unwrap();
        let base = SlProblem::new(grid, Coefficients::constant(1.0, 1.0, 0.0)).discretize().unwrap();
        let shifted = SlProblem::new(grid, Coefficients::constant(1.0, 1.0, 0.7)).discretize().unwrap();
        let heavy = SlProblem::new(grid, Coefficients::constant(2.0, 1.0, 0.0)).discretize().unwrap();
        for i in 0..20 {
            assert_abs_diff_eq!(shifted.spectrum()[i], base.spectrum()[i] + 0.7, epsilon = 1e-11);
            assert_abs_diff_eq!(heavy.spectrum()[i], base.spectrum()[i] / 2.0, epsilon = 1e-11);
        }
    }

    #[test]
    fn sign_violation() {
        let grid = Grid::new(0.0, 1.0, 9).unwrap();
        let bad = SlProblem::new(grid, Coefficients::new(|x| x - 0.5, |_| 1.0, |_| 0.0));
        assert!(matches!(bad.discretize(), Err(Error::CoefficientSignViolation { name: "w", .. })));
        let bad = SlProblem::new(grid, Coefficients::new(|_| 1.0, |x| x - 0.5, |_| 0.0));
        assert!(matches!(bad.discretize(), Err(Error::CoefficientSignViolation { name: "p", .. })));
    }

    #[test]
    fn form_value_matches_matrix() {
        let grid = Grid::new(0.0, PI, 30).unwrap();
        let prob = SlProblem::new(
            grid,
            Coefficients::new(|x| 1.0 + x.sin(), |x| 2.0 + x.cos(), |x| x * x - 1.0),
        );
        let k = prob.form_matrix().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(prob.form_value(&vec![C64::new(0.0, 0.0); 30]).unwrap(), 0.0);
        for _ in 0..20 {
            let f = random_vec(&mut rng, 30);
            let direct = prob.form_value(&f).unwrap();
            let via_k = quad(&k, &f);
            assert!((direct - via_k).abs() <= 1e-12 * direct.abs().max(1.0));
        }
        assert!(matches!(prob.form_value(&[C64::new(1.0, 0.0)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rayleigh_quotient_of_first_mode() {
        let prob = free(0.0, PI, 40);
        let op = prob.discretize().unwrap();
        let f: Vec<C64> = prob.grid.nodes().iter().map(|x| C64::new(x.sin(), 0.0)).collect();
        let norm2 = op.space().norm(&f).unwrap().powi(2);
        assert_abs_diff_eq!(prob.form_value(&f).unwrap(), op.spectrum()[0] * norm2, epsilon = 1e-12);
    }

    #[test]
    fn factorization_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let grid = Grid::new(0.0, 2.0, 25).unwrap();
        let (a1, a2): (f64, f64) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
        let prob = SlProblem::new(
            grid,
            Coefficients::new(move |x| 1.0 + a1 * (3.0 * x).sin().powi(2), move |x| 0.5 + a2 * x, |_| 0.0),
        );
        let op = prob.discretize().unwrap();
        let fac = prob.factorize().unwrap();
        let t0 = op.action();
        let gap = weighted_norm(&(&t0 - &fac.product()), op.space(), op.space());
        assert!(gap <= 1e-12 * weighted_norm(&t0, op.space(), op.space()));
        for _ in 0..5 {
            let f = random_vec(&mut rng, 25);
            let df = fac.map().mul_vec(&f);
            let lhs = fac.staggered().norm(&df).unwrap().powi(2);
            let rhs = prob.form_value(&f).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        }
        let unit = free(0.0, 1.0, 5).factorize().unwrap();
        let lap = free(0.0, 1.0, 5).discretize().unwrap().action();
        assert!((&unit.product() - &lap).max_abs() < 1e-9);
    }

    #[test]
    fn factorization_rejects_potential() {
        let grid = Grid::new(0.0, 1.0, 5).unwrap();
        let prob = SlProblem::new(grid, Coefficients::constant(1.0, 1.0, 0.1));
        assert!(matches!(prob.factorize(), Err(Error::NonZeroPotential { .. })));
    }

    #[test]
    fn local_l1_examples() {
        assert_abs_diff_eq!(local_l1_bound(&|_| -2.5, 0.0, 10.0, 0.1), 2.5, epsilon = 1e-12);
        assert_abs_diff_eq!(local_l1_bound(&|x| x, 0.0, 2.0, 0.01), 1.5, epsilon = 1e-12);
        assert_eq!(local_l1_bound(&|_| 0.0, 0.0, 3.0, 0.1), 0.0);
        // a partial cell only integrates over its overlap
        assert_abs_diff_eq!(local_l1_bound(&|_| 1.0, 0.5, 1.25, 0.01), 0.5, epsilon = 1e-12);
        let grid = Grid::new(0.0, 2.0, 199).unwrap();
        assert_abs_diff_eq!(local_l1_bound_nodal(&|_| 1.0, &grid, |_| true), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn qfree_examples() {
        let unit = SlProblem::new(Grid::new(0.0, 1.0, 30).unwrap(), Coefficients::constant(1.0, 1.0, 1.0));
        for eps in [0.1, 1.0, 10.0] {
            let c = unit.qfree_check(eps, 50, 0, 0.05).unwrap();
            assert!(c.holds && c.worst_ratio <= 1.0 && c.pencil_ratio <= 1.0);
        }
        let zero = free(0.0, 1.0, 30).qfree_check(1.0, 50, 0, 0.05).unwrap();
        assert_eq!(zero.worst_ratio, 0.0);
        let prob = SlProblem::new(
            Grid::new(0.0, PI, 100).unwrap(),
            Coefficients::new(|_| 1.0, |_| 1.0, |x| 5.0 * x.sin().powi(2)),
        );
        for eps in [0.1, 1.0] {
            let c = prob.qfree_check(eps, 200, 7, 0.05).unwrap();
            assert_eq!(c.samples, 200);
            assert!(c.holds, "eps {eps}: {c:?}");
            assert!(c.worst_ratio <= c.pencil_ratio + 1e-12);
        }
    }

    #[test]
    fn embedding_examples() {
        let grid = Grid::new(0.0, PI, 50).unwrap();
        let one = Coefficients::constant(1.0, 1.0, 0.0);
        let m = make_embedding(&grid, &one, &one).unwrap().metrics();
        assert_abs_diff_eq!(m.j_norm, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.jstarj_defect, 0.0, epsilon = 1e-14);
        let n = 4.0;
        let scaled = Coefficients::constant(1.0 + 1.0 / n, 1.0, 0.0);
        let m = make_embedding(&grid, &one, &scaled).unwrap().metrics();
        assert_abs_diff_eq!(m.jstarj_defect, 1.0 / n, epsilon = 1e-12);
        let wavy = Coefficients::new(move |x| 1.0 + x.sin() / n, |_| 1.0, |_| 0.0);
        let e = make_embedding(&grid, &one, &wavy).unwrap();
        let want = grid.nodes().iter().map(|x| x.sin().abs()).fold(0.0, f64::max) / n;
        assert_abs_diff_eq!(e.metrics().jstarj_defect, want, epsilon = 1e-12);
        let adj = e.adjoint_map();
        for (i, x) in grid.nodes().iter().enumerate() {
            assert_abs_diff_eq!(adj[(i, i)].re, 1.0 + x.sin() / n, epsilon = 1e-12);
        }
        let other = SlProblem::new(Grid::new(0.0, PI, 51).unwrap(), one.clone());
        assert!(matches!(SlProblem::new(grid, one).embedding_to(&other), Err(Error::GridMismatch)));
    }

    #[test]
    fn first_eigenvalue_converges_at_second_order() {
        let errs: Vec<(f64, f64)> = [25, 50, 100, 200]
            .iter()
            .map(|&m| {
                let prob = free(0.0, PI, m);
                let k = prob.form_matrix().unwrap().scale_real(1.0 / prob.grid.h());
                (prob.grid.h(), (eigvalsh(&k).unwrap()[0] - 1.0).abs())
            })
            .collect();
        let slope = (errs[3].1.ln() - errs[0].1.ln()) / (errs[3].0.ln() - errs[0].0.ln());
        assert!((1.8..=2.2).contains(&slope), "slope {slope}");
    }

    #[test]
    fn check_names_the_node() {
        let grid = Grid::new(0.0, 1.0, 9).unwrap();
        let c = Coefficients::new(|x| x - 0.35, |_| 1.0, |_| 0.0).with_bounds(0.1, -1.0);
        let msg = c.check(&grid).unwrap_err().to_string();
        assert!(msg.contains("w(node 1"), "{msg}");
        let c = Coefficients::constant(1.0, 1.0, -2.0).with_bounds(0.5, -1.0);
        assert!(c.check(&grid).unwrap_err().to_string().contains("q(node"));
    }
}
