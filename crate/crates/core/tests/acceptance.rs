//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Oracles are computed here independently of the library where one exists:
//! closed-form discrete Laplacian spectra, a local least-squares slope, direct
//! column comparisons.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resconv::expcli::{csv_string, emit, load_scenario, run_sweep, Scenario, SweepResult};
use resconv::selfadj::SpectrumWindow;
use resconv::sturm::{Coefficients, SlProblem};
use resconv::wspace::{weighted_norm, Grid};

fn scenario(name: &str) -> Scenario {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(format!("{name}.toml"));
    load_scenario(&path).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn timed_sweep(name: &str) -> (SweepResult, f64) {
    let s = scenario(name);
    let t = Instant::now();
    let r = run_sweep(&s, None).unwrap_or_else(|e| panic!("{name}: {e}"));
    (r, t.elapsed().as_secs_f64())
}

fn col(r: &SweepResult, name: &str) -> Vec<f64> {
    r.column(name).unwrap_or_else(|| panic!("{}: no column {name}", r.scenario))
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

/// Least-squares slope of log y against log n.
fn slope(ns: &[f64], ys: &[f64]) -> f64 {
    let xs: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let ls: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ls.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ls).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    -sxy / sxx
}

fn fmt(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

struct Sweeps {
    reference: SweepResult,
    reference_secs: f64,
    identity: SweepResult,
    identity_secs: f64,
    well: SweepResult,
    cutoff: SweepResult,
    broken: SweepResult,
}

impl Sweeps {
    fn shipped(&self) -> [&SweepResult; 5] {
        [&self.reference, &self.identity, &self.well, &self.cutoff, &self.broken]
    }
}

fn c1_identity(s: &Sweeps) -> Outcome {
    let r = &s.identity;
    let distance_cols: Vec<&String> = r
        .columns
        .iter()
        .filter(|c| {
            c.starts_with("fcalc_")
                || ["jstarj_defect", "jjstar_defect", "nrc_i", "nrc_alt_i", "src_max", "hausdorff", "relbound_cert", "form_delta"]
                    .contains(&c.as_str())
        })
        .collect();
    let worst = distance_cols.iter().flat_map(|c| col(r, c)).fold(0.0f64, f64::max);
    let dim_ok = r.rows.iter().all(|row| row.report.dim == 200);
    outcome(
        worst <= 1e-12 && s.identity_secs < 5.0 && dim_ok,
        format!("max distance {worst:.2e} over {} columns, {:.2} s at m = 200", distance_cols.len(), s.identity_secs),
    )
}

fn c2_equivalence(s: &Sweeps) -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut rows = 0;
    for r in s.shipped() {
        for row in &r.rows {
            let e = row.report.equivalence;
            worst = worst.max(e.nrc - e.nrc_bound).max(e.nrc_alt - e.alt_bound);
            rows += 1;
        }
    }
    outcome(worst <= 1e-9, format!("worst excess {worst:.3e} over {rows} rows, slack 1e-9"))
}

fn c3_relbound(s: &Sweeps) -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for r in s.shipped() {
        for (a, c) in col(r, "nrc_i").iter().zip(col(r, "relbound_cert")) {
            worst = worst.max(a - 2.0 * c);
        }
    }
    outcome(worst <= 1e-10, format!("worst nrc_i − 2·relbound_cert = {worst:.3e}, slack 1e-10"))
}

fn c4_form(s: &Sweeps) -> Outcome {
    let r = &s.reference;
    let fd = col(r, "form_delta");
    let worst = r.rows.iter().map(|row| row.report.sandwich.worst_excess).fold(f64::NEG_INFINITY, f64::max);
    outcome(
        strictly_decreasing(&fd) && worst <= 1e-8,
        format!("form_delta {} ; worst sandwich excess {worst:.3e}, slack 1e-8", fmt(&fd)),
    )
}

fn c5_slnrc(s: &Sweeps) -> Outcome {
    let r = &s.reference;
    let ns = col(r, "n");
    let nrc = col(r, "nrc_i");
    let k = slope(&ns, &nrc);
    let setup = ns == [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0] && r.rows[0].report.dim == 200;
    outcome(
        setup && strictly_decreasing(&nrc) && (0.7..=1.3).contains(&k) && s.reference_secs < 60.0,
        format!("nrc_i {} ; slope {k:.4} in [0.7, 1.3]; {:.1} s", fmt(&nrc), s.reference_secs),
    )
}

fn c6_fnorm(s: &Sweeps) -> Outcome {
    let v = col(&s.reference, "fcalc_lorentzian");
    let ratio = v[v.len() - 1] / v[0];
    outcome(strictly_decreasing(&v) && ratio < 0.05, format!("fcalc_lorentzian {} ; last/first {ratio:.4e} < 0.05", fmt(&v)))
}

fn c7_semigroups(s: &Sweeps) -> Outcome {
    let r = &s.reference;
    let heat = col(r, "fcalc_heat_t1");
    let unitary = col(r, "fcalc_unitary_t0.7");
    let gamma = col(r, "gamma");
    let shared = gamma.windows(2).all(|w| w[0] == w[1])
        && r.rows.iter().all(|row| row.report.min_eig_a >= gamma[0] && row.report.min_eig_an >= gamma[0]);
    outcome(
        strictly_decreasing(&heat) && strictly_decreasing(&unitary) && shared,
        format!("heat {} ; unitary strong {} ; common γ = {:.4} bounds every row: {shared}", fmt(&heat), fmt(&unitary), gamma[0]),
    )
}

fn c8_hausdorff(s: &Sweeps) -> Outcome {
    let r = &s.reference;
    let h = col(r, "hausdorff");
    let inclusion_ok = r.rows.iter().all(|row| row.report.inclusion_gap <= row.report.hausdorff);
    let last = h[h.len() - 1];
    outcome(
        strictly_decreasing(&h) && last < 1e-2 && inclusion_ok,
        format!("hausdorff in (0, 40) {} ; final {last:.3e} (< 1e-2 required); inclusion ≤ hausdorff: {inclusion_ok}", fmt(&h)),
    )
}

fn c9_projection(s: &Sweeps) -> Outcome {
    let mut ranks = vec![];
    let mut ok = true;
    for row in s.well.rows.iter().filter(|row| row.report.n >= 4) {
        let p = row.report.projection.as_ref().expect("well scenario has a projection window");
        ok &= p.rank_a == p.rank_an;
        ranks.push(format!("n{}:{}/{}", row.report.n, p.rank_a, p.rank_an));
    }
    outcome(ok && !ranks.is_empty(), format!("rank_A/rank_An {}", ranks.join(" ")))
}

/// Closed-form count of discrete Dirichlet Laplacian eigenvalues in `(lo, hi)`.
fn laplacian_count_oracle(len: f64, m: usize, lo: f64, hi: f64) -> usize {
    let h = len / (m + 1) as f64;
    (1..=m)
        .map(|k| 4.0 / (h * h) * (k as f64 * PI / (2.0 * (m + 1) as f64)).sin().powi(2))
        .filter(|&l| l > lo && l < hi)
        .count()
}

fn c10_essential(s: &Sweeps) -> Outcome {
    let win = SpectrumWindow::new(0.75, 1.25).unwrap();
    let mut counts = vec![];
    let mut oracle_ok = true;
    let mut last_oracle = 0;
    for l in [10.0, 20.0, 40.0] {
        let m = (20.0 * l) as usize - 1;
        let grid = Grid::new(0.0, l * PI, m).unwrap();
        let op = SlProblem::new(grid, Coefficients::constant(1.0, 1.0, 0.0)).discretize().unwrap();
        let c = op.count_in(&win).unwrap();
        last_oracle = laplacian_count_oracle(l * PI, m, 0.75, 1.25);
        oracle_ok &= c == last_oracle;
        counts.push(c);
    }
    let grows = counts.windows(2).all(|w| w[1] > w[0]);
    let near = (counts[2] as f64 - 0.252 * 40.0).abs() <= 2.0 && counts[2].abs_diff(last_oracle) <= 2;

    let r = &s.cutoff;
    let cs = scenario("compact_cutoff");
    let base_grid = Grid::new(cs.interval.0, cs.interval.1, cs.m).unwrap();
    let base = SlProblem::new(base_grid, cs.member.at(0.0)).discretize().unwrap();
    let cw = cs.count_window.expect("cutoff scenario has a count window");
    let base_count = base.count_in(&SpectrumWindow::new(cw.0, cw.1).unwrap()).unwrap();
    let member_counts: Vec<usize> = r.rows.iter().map(|row| row.window_count.expect("count window")).collect();
    let tracks = member_counts.iter().all(|&c| c.abs_diff(base_count) <= 1);
    outcome(
        grows && near && oracle_ok && tracks,
        format!(
            "free counts L=10,20,40: {counts:?} (closed form agrees: {oracle_ok}; 0.252·40 = 10.08); cutoff counts {member_counts:?} vs base {base_count}"
        ),
    )
}

fn c11_factorization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (a, b) = (rng.gen_range(-2.0..0.0), rng.gen_range(1.0..4.0));
        let m = rng.gen_range(10..80);
        let cw: [f64; 3] = [rng.gen_range(0.5..2.0), rng.gen_range(-0.4..0.4), rng.gen_range(0.5..5.0)];
        let cp: [f64; 3] = [rng.gen_range(0.5..2.0), rng.gen_range(-0.4..0.4), rng.gen_range(0.5..5.0)];
        let coeffs = Coefficients::new(
            move |x| cw[0] * (1.0 + cw[1] * (cw[2] * x).sin()),
            move |x| cp[0] * (1.0 + cp[1] * (cp[2] * x).cos()),
            |_| 0.0,
        );
        let prob = SlProblem::new(Grid::new(a, b, m).unwrap(), coeffs);
        let op = prob.discretize().unwrap();
        let t0 = op.action();
        let dd = prob.factorize().unwrap().product();
        let norm = |x: &resconv::numlin::DenseMatrix| weighted_norm(x, op.space(), op.space());
        worst = worst.max(norm(&(&t0 - &dd)) / norm(&t0));
    }
    outcome(worst <= 1e-12, format!("worst ‖T₀ − D*D‖/‖T₀‖ = {worst:.2e} over 50 draws"))
}

fn c12_qfree() -> Outcome {
    let grid = Grid::new(0.0, PI, 200).unwrap();
    let prob = SlProblem::new(grid, Coefficients::new(|_| 1.0, |_| 1.0, |x| 5.0 * x.sin().powi(2)));
    let mut parts = vec![];
    let mut worst = 0.0f64;
    for eps in [0.1, 1.0] {
        let c = prob.qfree_check(eps, 200, 12, 0.05).unwrap();
        worst = worst.max(c.worst_ratio);
        parts.push(format!("ε={eps}: {:.4} (samples {})", c.worst_ratio, c.samples));
    }
    outcome(worst <= 1.05, format!("worst LHS/RHS {} ≤ 1.05", parts.join(", ")))
}

fn c13_order() -> Outcome {
    let (mut inv_h, mut err) = (vec![], vec![]);
    for m in [20, 40, 80, 160, 320] {
        let grid = Grid::new(0.0, PI, m).unwrap();
        let l0 = SlProblem::new(grid, Coefficients::constant(1.0, 1.0, 0.0)).discretize().unwrap().spectrum()[0];
        inv_h.push(1.0 / grid.h());
        err.push((l0 - 1.0).abs());
    }
    // error ~ h^k  ⇔  slope of log err against log(1/h) is −k
    let k = slope(&inv_h, &err);
    outcome((1.8..=2.2).contains(&k), format!("errors {} ; order {k:.4} in [1.8, 2.2]", fmt(&err)))
}

fn c14_determinism() -> Outcome {
    let s = scenario("compact_cutoff");
    let a = run_sweep(&s, Some(1)).unwrap();
    let b = run_sweep(&s, Some(1)).unwrap();
    let c = run_sweep(&s, Some(4)).unwrap();
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    emit(&a, dir_a.path()).unwrap();
    emit(&c, dir_b.path()).unwrap();
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("sweep.csv")).unwrap();
    let repeat = csv_string(&a) == csv_string(&b);
    let threads = read(&dir_a) == read(&dir_b);
    outcome(repeat && threads, format!("repeat byte-identical: {repeat}; 1 vs 4 workers byte-identical: {threads}"))
}

fn main() {
    let (reference, reference_secs) = timed_sweep("reference_slnrc");
    let (identity, identity_secs) = timed_sweep("identity");
    let sweeps = Sweeps {
        reference,
        reference_secs,
        identity,
        identity_secs,
        well: timed_sweep("well_potential").0,
        cutoff: timed_sweep("compact_cutoff").0,
        broken: timed_sweep("broken_relbound").0,
    };
    let s = &sweeps;
    let results: Vec<(&str, Outcome)> = vec![
        ("identity_sanity", c1_identity(s)),
        ("resolvent_distance_equivalence", c2_equivalence(s)),
        ("relative_bound", c3_relbound(s)),
        ("form_criterion", c4_form(s)),
        ("reference_family_rate", c5_slnrc(s)),
        ("bounded_function_calculus", c6_fnorm(s)),
        ("semigroups", c7_semigroups(s)),
        ("spectral_hausdorff", c8_hausdorff(s)),
        ("projection_ranks", c9_projection(s)),
        ("essential_spectrum_counts", c10_essential(s)),
        ("factorization_exactness", c11_factorization()),
        ("potential_form_bound", c12_qfree()),
        ("discretization_order", c13_order()),
        ("determinism", c14_determinism()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("\n{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
