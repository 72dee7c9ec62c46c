//! Weighted discrete L² spaces on uniform grids and the embedding operators
//! between them.
//!
//! A space carries the quadrature inner product `⟨f, g⟩ = h Σ wᵢ conj(fᵢ) gᵢ`.
//! All weighted operator norms reduce to the Euclidean kernel by similarity:
//! for `B: (src, W₁) → (dst, W₂)`, `‖B‖ = σ_max(W₂^{1/2} B W₁^{−1/2})`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::numlin::{op_norm_euclid, solve, DenseMatrix, C64, ZERO};

/// Uniform grid on `(a, b)` with `m` interior nodes `xᵢ = a + i·h`, `i = 1..=m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    a: f64,
    b: f64,
    m: usize,
}

impl Grid {
    pub fn new(a: f64, b: f64, m: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::InvalidGrid(format!("need finite a < b, got ({a}, {b})")));
        }
        if m == 0 {
            return Err(Error::InvalidGrid("need at least one interior node".into()));
        }
        Ok(Self { a, b, m })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> f64 {
        (self.b - self.a) / (self.m + 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.h();
        (1..=self.m).map(|i| self.a + i as f64 * h).collect()
    }

    /// The `m + 1` cell midpoints `x_{i+1/2}`, `i = 0..=m`.
    pub fn midpoints(&self) -> Vec<f64> {
        let h = self.h();
        (0..=self.m).map(|i| self.a + (i as f64 + 0.5) * h).collect()
    }
}

/// Which sample points of the grid a space lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Nodes,
    Midpoints,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedSpace {
    grid: Grid,
    layout: Layout,
    weights: Vec<f64>,
}

impl WeightedSpace {
    pub fn new(grid: Grid, layout: Layout, weights: Vec<f64>) -> Result<Self> {
        let expected = match layout {
            Layout::Nodes => grid.m(),
            Layout::Midpoints => grid.m() + 1,
        };
        if weights.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: weights.len() });
        }
        if let Some((index, &value)) =
            weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::InvalidWeight { index, value });
        }
        Ok(Self { grid, layout, weights })
    }

    /// Space on the nodes of `grid` with the given nodal weights.
    pub fn on_grid(grid: Grid, weights: Vec<f64>) -> Result<Self> {
        Self::new(grid, Layout::Nodes, weights)
    }

    /// Space with spacing `h` and nodal weights, on the grid `(0, h·(m+1))`.
    pub fn with_spacing(h: f64, weights: Vec<f64>) -> Result<Self> {
        let m = weights.len();
        let grid = Grid::new(0.0, h * (m + 1) as f64, m)?;
        Self::on_grid(grid, weights)
    }

    pub fn unit(grid: Grid) -> Self {
        Self { grid, layout: Layout::Nodes, weights: vec![1.0; grid.m()] }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn h(&self) -> f64 {
        self.grid.h()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn points(&self) -> Vec<f64> {
        match self.layout {
            Layout::Nodes => self.grid.nodes(),
            Layout::Midpoints => self.grid.midpoints(),
        }
    }

    /// Diagonal of the mass matrix, `h·wᵢ`.
    pub fn mass(&self) -> Vec<f64> {
        let h = self.h();
        self.weights.iter().map(|w| h * w).collect()
    }

    pub fn sqrt_mass(&self) -> Vec<f64> {
        self.mass().into_iter().map(f64::sqrt).collect()
    }

    pub fn inv_sqrt_mass(&self) -> Vec<f64> {
        self.mass().into_iter().map(|x| 1.0 / x.sqrt()).collect()
    }

    /// Same grid and same sample layout.
    pub fn same_grid(&self, other: &Self) -> bool {
        self.grid == other.grid && self.layout == other.layout
    }

    fn check_len(&self, v: &[C64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        Ok(())
    }

    /// Weighted inner product, conjugate-linear in `f`.
    pub fn inner(&self, f: &[C64], g: &[C64]) -> Result<C64> {
        self.check_len(f)?;
        self.check_len(g)?;
        let h = self.h();
        Ok(f.iter()
            .zip(g)
            .zip(&self.weights)
            .map(|((a, b), w)| a.conj() * b * (h * w))
            .sum())
    }

    pub fn norm(&self, f: &[C64]) -> Result<f64> {
        Ok(self.inner(f, f)?.re.max(0.0).sqrt())
    }
}

/// Weighted operator norm of `b` viewed as a map `src → dst`.
pub fn weighted_norm(b: &DenseMatrix, src: &WeightedSpace, dst: &WeightedSpace) -> f64 {
    assert_eq!(b.rows(), dst.dim(), "weighted_norm row dimension");
    assert_eq!(b.cols(), src.dim(), "weighted_norm column dimension");
    op_norm_euclid(&b.scale_rows(&dst.sqrt_mass()).scale_cols(&src.inv_sqrt_mass()))
}

/// Bounded map `J: src → dst` between weighted spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    src: WeightedSpace,
    dst: WeightedSpace,
    map: DenseMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbeddingMetrics {
    /// `‖J‖` as a map src → dst.
    pub j_norm: f64,
    /// `‖J*J − I‖` on src.
    pub jstarj_defect: f64,
    /// `‖JJ* − I‖` on dst.
    pub jjstar_defect: f64,
}

#[derive(Clone, Debug)]
pub struct JcosCheck {
    /// `‖J*Jψ − ψ‖ / ‖ψ‖` per test vector.
    pub residuals: Vec<f64>,
    pub holds: bool,
}

/// Result of inverting `J` through `J*(JJ*)⁻¹`.
#[derive(Clone, Debug)]
pub struct JInverse {
    pub map: DenseMatrix,
    /// False when `J*J` is singular; `map` is then only a right inverse.
    pub two_sided: bool,
    /// `‖J⁻¹J − I‖` on src.
    pub left_defect: f64,
    /// `‖JJ⁻¹ − I‖` on dst.
    pub right_defect: f64,
    /// `‖J* − J⁻¹‖` as maps dst → src.
    pub adjoint_gap: f64,
}

impl Embedding {
    pub fn new(src: WeightedSpace, dst: WeightedSpace, map: DenseMatrix) -> Result<Self> {
        if map.rows() != dst.dim() {
            return Err(Error::DimensionMismatch { expected: dst.dim(), found: map.rows() });
        }
        if map.cols() != src.dim() {
            return Err(Error::DimensionMismatch { expected: src.dim(), found: map.cols() });
        }
        Ok(Self { src, dst, map })
    }

    /// The natural identification between two weightings of the same grid.
    pub fn identity(src: WeightedSpace, dst: WeightedSpace) -> Result<Self> {
        if !src.same_grid(&dst) {
            return Err(Error::GridMismatch);
        }
        let n = src.dim();
        Self::new(src, dst, DenseMatrix::identity(n))
    }

    pub fn src(&self) -> &WeightedSpace {
        &self.src
    }

    pub fn dst(&self) -> &WeightedSpace {
        &self.dst
    }

    pub fn map(&self) -> &DenseMatrix {
        &self.map
    }

    pub fn apply(&self, f: &[C64]) -> Vec<C64> {
        self.map.mul_vec(f)
    }

    /// Weighted adjoint `J* = W_src⁻¹ Jᴴ W_dst`.
    pub fn adjoint_map(&self) -> DenseMatrix {
        let inv: Vec<f64> = self.src.mass().iter().map(|x| 1.0 / x).collect();
        self.map.adjoint().scale_rows(&inv).scale_cols(&self.dst.mass())
    }

    pub fn metrics(&self) -> EmbeddingMetrics {
        let adj = self.adjoint_map();
        let jsj = &adj.matmul(&self.map) - &DenseMatrix::identity(self.src.dim());
        let jjs = &self.map.matmul(&adj) - &DenseMatrix::identity(self.dst.dim());
        EmbeddingMetrics {
            j_norm: weighted_norm(&self.map, &self.src, &self.dst),
            jstarj_defect: weighted_norm(&jsj, &self.src, &self.src),
            jjstar_defect: weighted_norm(&jjs, &self.dst, &self.dst),
        }
    }

    /// Per-vector check of `‖J*Jψ − ψ‖ ≤ tol·‖ψ‖`.
    pub fn check_jcos(&self, test_set: &[Vec<C64>], tol: f64) -> Result<JcosCheck> {
        let adj = self.adjoint_map();
        let mut residuals = Vec::with_capacity(test_set.len());
        for psi in test_set {
            let norm = self.src.norm(psi)?;
            let back = adj.mul_vec(&self.map.mul_vec(psi));
            let diff: Vec<C64> = back.iter().zip(psi).map(|(a, b)| a - b).collect();
            let r = self.src.norm(&diff)?;
            residuals.push(if norm > 0.0 { r / norm } else { 0.0 });
        }
        let holds = residuals.iter().all(|&r| r <= tol);
        Ok(JcosCheck { residuals, holds })
    }

    /// `J⁻¹ = J*(JJ*)⁻¹`, available whenever `‖JJ* − I‖ < 1`.
    pub fn j_inverse(&self) -> Result<JInverse> {
        let metrics = self.metrics();
        if metrics.jjstar_defect >= 1.0 {
            return Err(Error::NotInvertible { jjstar_defect: metrics.jjstar_defect });
        }
        let adj = self.adjoint_map();
        let jjs = self.map.matmul(&adj);
        // J*(JJ*)⁻¹ = ((JJ*)⁻ᴴ J*ᴴ)ᴴ; solve with the transposed system.
        let inv = solve(&jjs.adjoint(), &adj.adjoint())?.adjoint();
        let left = &inv.matmul(&self.map) - &DenseMatrix::identity(self.src.dim());
        let right = &self.map.matmul(&inv) - &DenseMatrix::identity(self.dst.dim());
        Ok(JInverse {
            two_sided: metrics.jstarj_defect < 1.0,
            left_defect: weighted_norm(&left, &self.src, &self.src),
            right_defect: weighted_norm(&right, &self.dst, &self.dst),
            adjoint_gap: weighted_norm(&(&adj - &inv), &self.dst, &self.src),
            map: inv,
        })
    }
}

/// Fixed set of unit test vectors for per-vector (strong-mode) diagnostics:
/// the lowest discrete sine modes of the interval followed by seeded complex
/// Gaussian vectors.
#[derive(Clone, Debug)]
pub struct TestDictionary {
    pub vectors: Vec<Vec<C64>>,
    pub seed: u64,
}

impl TestDictionary {
    pub const SINE_MODES: usize = 10;
    pub const RANDOM_VECTORS: usize = 10;

    pub fn standard(space: &WeightedSpace, seed: u64) -> Self {
        Self::with_counts(space, seed, Self::SINE_MODES, Self::RANDOM_VECTORS)
    }

    pub fn with_counts(space: &WeightedSpace, seed: u64, modes: usize, random: usize) -> Self {
        let grid = space.grid();
        let len = grid.b() - grid.a();
        let pts = space.points();
        let mut vectors = Vec::with_capacity(modes + random);
        for k in 1..=modes.min(space.dim()) {
            let v: Vec<C64> = pts
                .iter()
                .map(|&x| C64::new((k as f64 * std::f64::consts::PI * (x - grid.a()) / len).sin(), 0.0))
                .collect();
            vectors.push(v);
        }
        // random sine series with 1/k decay: a fixed random L² function, not
        // mesh-scale noise, so per-vector limits are meaningful under refinement
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let modes_all = space.dim();
        for _ in 0..random {
            let coef: Vec<C64> = (1..=modes_all)
                .map(|k| {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    C64::new(re, im) / k as f64
                })
                .collect();
            let v: Vec<C64> = pts
                .iter()
                .map(|&x| {
                    let theta = std::f64::consts::PI * (x - grid.a()) / len;
                    coef.iter().enumerate().map(|(k, c)| c * ((k + 1) as f64 * theta).sin()).sum()
                })
                .collect();
            vectors.push(v);
        }
        for v in &mut vectors {
            let n = space.norm(v).expect("dictionary vector has space dimension");
            if n > 0.0 {
                v.iter_mut().for_each(|z| *z /= n);
            }
        }
        vectors.retain(|v| v.iter().any(|z| *z != ZERO));
        Self { vectors, seed }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn inner_examples() {
        let s = WeightedSpace::with_spacing(1.0, vec![1.0, 1.0]).unwrap();
        let e1 = [c(1.0, 0.0), c(0.0, 0.0)];
        assert_eq!(s.inner(&e1, &e1).unwrap(), c(1.0, 0.0));
        let s2 = WeightedSpace::with_spacing(0.5, vec![2.0, 2.0]).unwrap();
        let ones = [c(1.0, 0.0), c(1.0, 0.0)];
        assert_abs_diff_eq!(s2.inner(&ones, &ones).unwrap().re, 2.0, epsilon = 1e-15);
        let f = [c(0.0, 1.0), c(0.0, 0.0)];
        assert_eq!(s.inner(&f, &e1).unwrap(), c(0.0, -1.0));
        assert!(matches!(s.inner(&[c(1.0, 0.0)], &e1), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rejects_nonpositive_weights() {
        assert!(matches!(
            WeightedSpace::with_spacing(1.0, vec![1.0, 0.0]),
            Err(Error::InvalidWeight { index: 1, .. })
        ));
    }

    fn scaled_pair(m: usize, factor: f64) -> Embedding {
        let grid = Grid::new(0.0, 1.0, m).unwrap();
        let src = WeightedSpace::unit(grid);
        let dst = WeightedSpace::on_grid(grid, vec![factor; m]).unwrap();
        Embedding::identity(src, dst).unwrap()
    }

    fn projection(m: usize, k: usize) -> Embedding {
        let src = WeightedSpace::with_spacing(1.0, vec![1.0; m]).unwrap();
        let dst = WeightedSpace::with_spacing(1.0, vec![1.0; k]).unwrap();
        let map = DenseMatrix::from_fn(k, m, |i, j| if i == j { c(1.0, 0.0) } else { ZERO });
        Embedding::new(src, dst, map).unwrap()
    }

    #[test]
    fn adjoint_examples() {
        let id = scaled_pair(4, 1.0);
        assert_eq!(id.adjoint_map(), DenseMatrix::identity(4));
        let scaled = scaled_pair(4, 1.21);
        let adj = scaled.adjoint_map();
        for i in 0..4 {
            assert_abs_diff_eq!(adj[(i, i)].re, 1.21, epsilon = 1e-15);
        }
        let p = projection(5, 3);
        let adj = p.adjoint_map();
        let expect = DenseMatrix::from_fn(5, 3, |i, j| if i == j { c(1.0, 0.0) } else { ZERO });
        assert_eq!(adj, expect);
    }

    #[test]
    fn metrics_examples() {
        let m = scaled_pair(6, 1.0).metrics();
        assert_abs_diff_eq!(m.j_norm, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.jstarj_defect, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.jjstar_defect, 0.0, epsilon = 1e-14);

        let m = scaled_pair(6, 1.21).metrics();
        assert_abs_diff_eq!(m.j_norm, 1.1, epsilon = 1e-13);
        assert_abs_diff_eq!(m.jstarj_defect, 0.21, epsilon = 1e-13);
        assert_abs_diff_eq!(m.jjstar_defect, 0.21, epsilon = 1e-13);

        let m = projection(5, 3).metrics();
        assert_abs_diff_eq!(m.j_norm, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.jstarj_defect, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.jjstar_defect, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn jcos_examples() {
        let id = scaled_pair(3, 1.0);
        let dict = TestDictionary::standard(id.src(), 0);
        let chk = id.check_jcos(&dict.vectors, 1e-14).unwrap();
        assert!(chk.holds);

        let p = projection(4, 2);
        let inside = vec![c(1.0, 0.0), c(2.0, 0.0), ZERO, ZERO];
        let rho: f64 = 0.6;
        // unit vector with mass rho² outside the retained coordinates
        let outside = vec![c((1.0 - rho * rho).sqrt(), 0.0), ZERO, c(rho, 0.0), ZERO];
        let chk = p.check_jcos(&[inside, outside], 1e-12).unwrap();
        assert_eq!(chk.residuals[0], 0.0);
        // J*Jψ − ψ = −(outside part), norm rho
        assert_abs_diff_eq!(chk.residuals[1], rho, epsilon = 1e-15);
        assert!(!chk.holds);
        assert!(p.check_jcos(&[vec![ZERO; 3]], 1.0).is_err());
    }

    #[test]
    fn j_inverse_examples() {
        let inv = scaled_pair(4, 1.0).j_inverse().unwrap();
        assert_eq!(inv.map, DenseMatrix::identity(4));
        assert_eq!(inv.adjoint_gap, 0.0);

        // J = I with w_dst = 1.21 w_src: J* = 1.21·I, J⁻¹ = I, ‖J* − J⁻¹‖ = 0.21
        let inv = scaled_pair(4, 1.21).j_inverse().unwrap();
        assert!((&inv.map - &DenseMatrix::identity(4)).max_abs() < 1e-14);
        // as a map dst → src: σ_max(W_src^{1/2}·0.21·W_dst^{−1/2}) = 0.21/1.1
        assert_abs_diff_eq!(inv.adjoint_gap, 0.21 / 1.1, epsilon = 1e-13);
        assert!(inv.two_sided);

        // projection: right inverse only
        let inv = projection(5, 3).j_inverse().unwrap();
        assert!(!inv.two_sided);
        assert_abs_diff_eq!(inv.right_defect, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(inv.left_defect, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn j_inverse_rejects_large_defect() {
        assert!(matches!(scaled_pair(3, 2.5).j_inverse(), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn pairing_identity_and_adjoint_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let grid = Grid::new(-1.0, 2.0, 7).unwrap();
        for _ in 0..5 {
            let src = WeightedSpace::on_grid(grid, (0..7).map(|_| rng.gen_range(0.2..3.0)).collect()).unwrap();
            let dst = WeightedSpace::on_grid(grid, (0..7).map(|_| rng.gen_range(0.2..3.0)).collect()).unwrap();
            let map = DenseMatrix::from_fn(7, 7, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let j = Embedding::new(src.clone(), dst.clone(), map).unwrap();
            let adj = j.adjoint_map();
            for _ in 0..100 {
                let f: Vec<C64> = (0..7).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                let g: Vec<C64> = (0..7).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                let lhs = dst.inner(&j.apply(&f), &g).unwrap();
                let rhs = src.inner(&f, &adj.mul_vec(&g)).unwrap();
                assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
            }
            let n1 = weighted_norm(j.map(), &src, &dst);
            let n2 = weighted_norm(&adj, &dst, &src);
            assert!((n1 - n2).abs() <= 1e-10 * n1);
        }
    }

    #[test]
    fn square_defects_agree() {
        let grid = Grid::new(0.0, std::f64::consts::PI, 30).unwrap();
        let src = WeightedSpace::unit(grid);
        let dst = WeightedSpace::on_grid(grid, grid.nodes().iter().map(|x| 1.0 + x.sin() / 3.0).collect()).unwrap();
        let m = Embedding::identity(src, dst).unwrap().metrics();
        assert_abs_diff_eq!(m.jstarj_defect, m.jjstar_defect, epsilon = 1e-12);
    }

    #[test]
    fn dictionary_is_unit_and_seeded() {
        let grid = Grid::new(0.0, 1.0, 40).unwrap();
        let s = WeightedSpace::on_grid(grid, vec![2.0; 40]).unwrap();
        let d1 = TestDictionary::standard(&s, 5);
        let d2 = TestDictionary::standard(&s, 5);
        assert_eq!(d1.len(), 20);
        assert_eq!(d1.vectors, d2.vectors);
        for v in &d1.vectors {
            assert_abs_diff_eq!(s.norm(v).unwrap(), 1.0, epsilon = 1e-13);
        }
    }
}
