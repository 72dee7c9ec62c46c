//! Scenario sweeps: build the family, assess every member against the limit,
//! and write the table, plot data and verdicts.

mod config;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

pub use config::{load_scenario, parse_scenario, Checks, Scenario, ScenarioKind, Triple};

use crate::conv::{assess, semigroup_column, AssessConfig, ConvergencePair, ConvergenceReport, Semigroup};
use crate::error::{Error, Result};
use crate::numlin::C64;
use crate::selfadj::{SelfAdjointOp, SpectrumWindow};
use crate::sturm::{compact_cutoff_family, make_embedding, slnrc_family, Coefficients, Deviations, SlProblem};
use crate::wspace::TestDictionary;

/// Sweep table columns, in output order.
pub fn columns(s: &Scenario) -> Vec<String> {
    let mut cols: Vec<String> = ["n", "dim", "j_norm", "jstarj_defect", "jjstar_defect", "nrc_i", "nrc_alt_i", "src_max"]
        .iter()
        .map(|c| c.to_string())
        .collect();
    cols.extend(s.functions.iter().map(|f| format!("fcalc_{}", f.name())));
    cols.extend(s.heat_times.iter().map(|&t| format!("fcalc_{}", semigroup_column(Semigroup::Heat, t))));
    cols.extend(s.unitary_times.iter().map(|&t| format!("fcalc_{}", semigroup_column(Semigroup::Unitary, t))));
    cols.extend(
        ["hausdorff", "relbound_cert", "form_delta", "gamma", "min_eig_A", "min_eig_An", "runtime_ms"]
            .iter()
            .map(|c| c.to_string()),
    );
    cols
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub report: ConvergenceReport,
    /// Deviation functionals of the member; absent for custom pairs.
    pub deviations: Option<Deviations>,
    /// Eigenvalue count of the member in the count window.
    pub window_count: Option<usize>,
}

impl SweepRow {
    fn values(&self, gamma: f64, record_runtime: bool) -> Vec<f64> {
        let r = &self.report;
        let mut v = vec![
            r.n as f64,
            r.dim as f64,
            r.metrics.j_norm,
            r.metrics.jstarj_defect,
            r.metrics.jjstar_defect,
            r.nrc,
            r.nrc_alt,
            r.src_max,
        ];
        v.extend(r.fcalc.iter().map(|(_, x)| *x));
        v.extend([
            r.hausdorff,
            r.relbound.c_n,
            r.form_delta,
            gamma,
            r.min_eig_a,
            r.min_eig_an,
            if record_runtime { r.runtime_ms as f64 } else { 0.0 },
        ]);
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), pass, detail: detail.into() }
    }

    pub fn line(&self) -> String {
        format!("{} {} {}", if self.pass { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub scenario: String,
    pub seed: u64,
    /// Common lower bound of every operator in the sweep.
    pub gamma: f64,
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
    /// Eigenvalue count of the base operator in the count window.
    pub base_window_count: Option<usize>,
    pub verdicts: Vec<Verdict>,
    pub record_runtime: bool,
}

impl SweepResult {
    /// Column values in row order.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r.values(self.gamma, self.record_runtime)[k]).collect())
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| !v.pass)
    }
}

fn at(n: u32) -> impl Fn(Error) -> Error {
    move |e| Error::AtIndex { n, source: Box::new(e) }
}

/// The coefficient triple of member `n` and its deviations from the limit.
fn members(s: &Scenario) -> Result<Vec<(u32, Coefficients, Option<Deviations>)>> {
    let grid = s.grid()?;
    let limit = s.limit_coefficients();
    Ok(match s.kind {
        ScenarioKind::Slnrc => slnrc_family(&limit, |n| s.member_coefficients(n), &s.ns, grid)?
            .members
            .into_iter()
            .map(|m| (m.n, m.coeffs, Some(m.deviations)))
            .collect(),
        ScenarioKind::CompactCutoff => compact_cutoff_family(&s.member_coefficients(0), &limit, &s.ns, grid)?
            .members
            .into_iter()
            .map(|m| (m.n, m.coeffs, Some(m.deviations)))
            .collect(),
        ScenarioKind::CustomPair => s.ns.iter().map(|&n| (n, s.member_coefficients(n), None)).collect(),
    })
}

/// Operator of member `n` (any index, not only those in `ns`).
pub fn member_operator(s: &Scenario, n: u32) -> Result<SelfAdjointOp> {
    let grid = s.grid()?;
    let coeffs = match s.kind {
        ScenarioKind::CompactCutoff => {
            compact_cutoff_family(&s.member_coefficients(0), &s.limit_coefficients(), &[n], grid)?
                .members
                .remove(0)
                .coeffs
        }
        _ => s.member_coefficients(n),
    };
    SlProblem::new(grid, coeffs).discretize().map_err(at(n))
}

fn window(w: (f64, f64)) -> Result<SpectrumWindow> {
    SpectrumWindow::new(w.0, w.1)
}

/// Runs the sweep on a pool of `threads` workers (rayon's default when `None`).
pub fn run_sweep(s: &Scenario, threads: Option<usize>) -> Result<SweepResult> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder.build().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    pool.install(|| sweep(s))
}

fn sweep(s: &Scenario) -> Result<SweepResult> {
    let grid = s.grid()?;
    let limit = s.limit_coefficients();
    let limit_op = SlProblem::new(grid, limit.clone()).discretize()?;
    let members = members(s)?;

    let pairs = members
        .par_iter()
        .map(|(n, coeffs, _)| {
            let op = SlProblem::new(grid, coeffs.clone()).discretize().map_err(at(*n))?;
            let j = make_embedding(&grid, &limit, coeffs).map_err(at(*n))?;
            ConvergencePair::new(limit_op.clone(), op, j).map_err(at(*n))
        })
        .collect::<Result<Vec<_>>>()?;
    let gamma = pairs.iter().map(|p| p.approx().lower_bound()).fold(limit_op.lower_bound(), f64::min);

    let i = C64::new(0.0, 1.0);
    let mut cfg = AssessConfig::new(
        window(s.window)?,
        gamma,
        TestDictionary::standard(limit_op.space(), s.seed).vectors,
    );
    cfg.z_audit = s.z_list.iter().copied().filter(|&z| z != i).collect();
    cfg.functions = s.functions.clone();
    cfg.heat_times = s.heat_times.clone();
    cfg.unitary_times = s.unitary_times.clone();
    cfg.projection_window = s.projection_window.map(window).transpose()?;
    cfg.sandwich_shifts = s.sandwich_shifts.clone();
    cfg.relbound_slack = s.checks.relbound_slack;
    let count_window = s.count_window.map(window).transpose()?;

    let rows = pairs
        .par_iter()
        .zip(members.par_iter())
        .map(|(pair, (n, _, dev))| {
            let report = assess(*n, pair, &cfg).map_err(at(*n))?;
            let window_count = count_window.as_ref().map(|w| pair.approx().count_in(w)).transpose().map_err(at(*n))?;
            Ok(SweepRow { report, deviations: *dev, window_count })
        })
        .collect::<Result<Vec<_>>>()?;

    let base_window_count = match (&count_window, s.kind) {
        (None, _) => None,
        (Some(w), ScenarioKind::CompactCutoff) => {
            let base = SlProblem::new(grid, s.member_coefficients(0)).discretize()?;
            Some(base.count_in(w)?)
        }
        (Some(w), _) => Some(limit_op.count_in(w)?),
    };

    let mut result = SweepResult {
        scenario: s.name.clone(),
        seed: s.seed,
        gamma,
        columns: columns(s),
        rows,
        base_window_count,
        verdicts: Vec::new(),
        record_runtime: s.record_runtime,
    };
    result.verdicts = verdicts(s, &result)?;
    Ok(result)
}

fn stem(col: &str) -> &str {
    col.strip_suffix("_i").unwrap_or(col)
}

fn fmt_worst(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        "none".into()
    } else {
        format!("{x:.3e}")
    }
}

/// Least-squares slope of `log y` against `log(1/n)`.
pub fn loglog_slope(ns: &[f64], ys: &[f64]) -> Option<f64> {
    if ns.len() < 2 || ys.iter().any(|y| !(*y > 0.0 && y.is_finite())) {
        return None;
    }
    let xs: Vec<f64> = ns.iter().map(|n| (1.0 / n).ln()).collect();
    let ls: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ls.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ls).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn verdicts(s: &Scenario, r: &SweepResult) -> Result<Vec<Verdict>> {
    let c = &s.checks;
    let rows = &r.rows;
    let mut out = Vec::new();
    let worst = |f: &dyn Fn(&SweepRow) -> f64| rows.iter().map(f).fold(f64::NEG_INFINITY, f64::max);

    let eq = worst(&|row| {
        let e = &row.report.equivalence;
        (e.nrc - e.nrc_bound).max(e.nrc_alt - e.alt_bound)
    });
    out.push(Verdict::new("equivalence", eq <= c.equivalence_slack, format!("worst_excess={}", fmt_worst(eq))));

    let src = worst(&|row| row.report.src.worst_excess);
    out.push(Verdict::new("src_domination", src <= c.equivalence_slack, format!("worst_excess={}", fmt_worst(src))));

    let rel = worst(&|row| row.report.nrc - 2.0 * row.report.relbound.c_n);
    out.push(Verdict::new(
        "relbound",
        rows.iter().all(|row| row.report.relbound.bound_ok),
        format!("worst nrc_i-2*relbound_cert={} slack={:e}", fmt_worst(rel), c.relbound_slack),
    ));

    let zt = worst(&|row| row.report.z_audit.iter().map(|a| a.nrc_alt - a.alt_bound).fold(f64::NEG_INFINITY, f64::max));
    out.push(Verdict::new("z_transfer", zt <= c.equivalence_slack, format!("worst_excess={}", fmt_worst(zt))));

    let sw = worst(&|row| row.report.sandwich.worst_excess);
    out.push(Verdict::new("sandwich", sw <= c.sandwich_slack, format!("worst_excess={}", fmt_worst(sw))));

    let inc = worst(&|row| row.report.inclusion_gap - row.report.hausdorff);
    out.push(Verdict::new("inclusion_le_hausdorff", inc <= 1e-12, format!("worst gap-hausdorff={}", fmt_worst(inc))));

    if s.projection_window.is_some() {
        let ok = rows.iter().all(|row| row.report.projection.as_ref().is_some_and(|p| p.inequality_holds));
        out.push(Verdict::new("projection_inequality", ok, "rank_A <= rank_An*max(|J|^2,1)"));
    }

    let prob = SlProblem::new(s.grid()?, s.limit_coefficients());
    let mut qfree_worst: f64 = 0.0;
    for eps in [0.1, 1.0] {
        qfree_worst = qfree_worst.max(prob.qfree_check(eps, 200, s.seed, c.qfree_slack)?.worst_ratio);
    }
    out.push(Verdict::new(
        "qfree",
        qfree_worst <= 1.0 + c.qfree_slack,
        format!("worst_ratio={qfree_worst:.4} slack={}", c.qfree_slack),
    ));

    let ns: Vec<f64> = rows.iter().map(|row| row.report.n as f64).collect();
    let col = |name: &str| r.column(name).expect("columns validated at load");
    for name in &c.decreasing {
        let v = col(name);
        let ok = v.windows(2).all(|w| w[1] < w[0]);
        out.push(Verdict::new(format!("{}_decreasing", stem(name)), ok, format!("values={:?}", v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>())));
    }
    for (name, &(lo, hi)) in &c.slope {
        let slope = loglog_slope(&ns, &col(name));
        let ok = slope.is_some_and(|x| (lo..=hi).contains(&x));
        let shown = slope.map_or("undefined".to_string(), |x| format!("{x:.4}"));
        out.push(Verdict::new(format!("{}_slope", stem(name)), ok, format!("slope={shown} window=[{lo},{hi}]")));
    }
    for (name, &ratio) in &c.final_ratio {
        let v = col(name);
        let (first, last) = (v[0], v[v.len() - 1]);
        out.push(Verdict::new(
            format!("{}_ratio", stem(name)),
            last <= ratio * first,
            format!("last/first={:.4e} limit={ratio}", last / first),
        ));
    }
    for (name, &bound) in &c.final_below {
        let last = *col(name).last().expect("ns is nonempty");
        out.push(Verdict::new(format!("{}_final", stem(name)), last < bound, format!("last={last:.4e} bound={bound:e}")));
    }
    for (name, &bound) in &c.max_value {
        let max = col(name).into_iter().fold(f64::NEG_INFINITY, f64::max);
        out.push(Verdict::new(format!("{}_max", stem(name)), max <= bound, format!("max={max:.3e} bound={bound:e}")));
    }
    if let Some(from) = c.projection_ranks_from {
        let mut detail = String::new();
        let mut ok = true;
        for row in rows.iter().filter(|row| row.report.n >= from) {
            let p = row.report.projection.as_ref().expect("projection window configured");
            ok &= p.rank_a == p.rank_an;
            let _ = write!(detail, "n{}:{}/{} ", row.report.n, p.rank_a, p.rank_an);
        }
        out.push(Verdict::new("projection_ranks", ok, detail.trim_end()));
    }
    if let (Some(from), Some(base)) = (c.window_counts_from, r.base_window_count) {
        let mut detail = format!("base={base}");
        let mut ok = true;
        for row in rows.iter().filter(|row| row.report.n >= from) {
            let k = row.window_count.expect("count window configured");
            ok &= k.abs_diff(base) <= 1;
            let _ = write!(detail, " n{}:{k}", row.report.n);
        }
        out.push(Verdict::new("window_counts", ok, detail));
    }
    Ok(out)
}

fn fmt_value(x: f64) -> String {
    if x.is_infinite() && x > 0.0 {
        "inf".into()
    } else {
        format!("{x}")
    }
}

pub fn csv_string(r: &SweepResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# scenario: {}", r.scenario);
    let _ = writeln!(out, "# seed: {}", r.seed);
    let _ = writeln!(out, "# gamma: {}", r.gamma);
    let _ = writeln!(out, "{}", r.columns.join(","));
    for row in &r.rows {
        let vals: Vec<String> = row.values(r.gamma, r.record_runtime).into_iter().map(fmt_value).collect();
        let _ = writeln!(out, "{}", vals.join(","));
    }
    out
}

pub fn verdicts_string(r: &SweepResult) -> String {
    let mut out = String::from("# status verdict detail\n");
    for v in &r.verdicts {
        out.push_str(&v.line());
        out.push('\n');
    }
    out
}

/// Writes `sweep.csv`, `verdicts.txt` and one `<column>.dat` per column.
pub fn emit(r: &SweepResult, out_dir: impl AsRef<Path>) -> Result<()> {
    let dir = out_dir.as_ref();
    fs::create_dir_all(dir)?;
    fs::write(dir.join("sweep.csv"), csv_string(r))?;
    fs::write(dir.join("verdicts.txt"), verdicts_string(r))?;
    for (k, name) in r.columns.iter().enumerate().skip(1) {
        let mut dat = String::new();
        for row in &r.rows {
            let _ = writeln!(dat, "{} {}", row.report.n, fmt_value(row.values(r.gamma, r.record_runtime)[k]));
        }
        fs::write(dir.join(format!("{name}.dat")), dat)?;
    }
    Ok(())
}

/// Runs the sweep and reports whether every verdict passed.
pub fn verify(s: &Scenario, threads: Option<usize>) -> Result<SweepResult> {
    run_sweep(s, threads)
}
