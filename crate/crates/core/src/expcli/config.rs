//! Scenario files: TOML, validated key by key so every complaint names the
//! offending key.
//!
//! ```toml
//! name = "reference_slnrc"
//! kind = "slnrc"                 # slnrc | compact_cutoff | custom_pair
//! interval = [0, "pi"]           # numbers or constant expressions
//! m = 200
//! ns = [1, 2, 4, 8]
//! z_list = [[0, 1], [0, 2]]      # complex numbers as [re, im]
//! window = [0, 40]
//!
//! [limit]                        # w, p, q in x; optional delta, gamma
//! q = "x^2/(1+x^2)"
//!
//! [member]                       # expressions in x and n
//! w = "1 + sin(x)/n"
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use toml::{Table, Value};

use crate::error::{Error, Result};
use crate::numlin::C64;
use crate::selfadj::BoundedFn;
use crate::sturm::{Coefficients, Expr};
use crate::wspace::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScenarioKind {
    /// Uniformly perturbed coefficients converging to the limit triple.
    Slnrc,
    /// Limit triple inside `|x| ≤ n`, base triple outside.
    CompactCutoff,
    /// Arbitrary member triples; no family hypotheses beyond positivity.
    CustomPair,
}

impl ScenarioKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "slnrc" => ScenarioKind::Slnrc,
            "compact_cutoff" => ScenarioKind::CompactCutoff,
            "custom_pair" => ScenarioKind::CustomPair,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Slnrc => "slnrc",
            ScenarioKind::CompactCutoff => "compact_cutoff",
            ScenarioKind::CustomPair => "custom_pair",
        }
    }
}

/// Coefficient expressions plus the hypothesis bounds they must respect.
#[derive(Clone, Debug)]
pub struct Triple {
    pub w: Expr,
    pub p: Expr,
    pub q: Expr,
}

impl Triple {
    pub fn at(&self, n: f64) -> Coefficients {
        Coefficients::from_exprs(&self.w, &self.p, &self.q, n)
    }

    fn uses_n(&self) -> bool {
        self.w.uses_n() || self.p.uses_n() || self.q.uses_n()
    }
}

/// Acceptance windows and slack knobs.
#[derive(Clone, Debug)]
pub struct Checks {
    pub relbound_slack: f64,
    pub equivalence_slack: f64,
    pub sandwich_slack: f64,
    pub qfree_slack: f64,
    /// Columns that must strictly decrease in `n`.
    pub decreasing: Vec<String>,
    /// Least-squares slope windows of `log col` against `log(1/n)`.
    pub slope: BTreeMap<String, (f64, f64)>,
    /// `last ≤ ratio · first`.
    pub final_ratio: BTreeMap<String, f64>,
    /// `last < bound`.
    pub final_below: BTreeMap<String, f64>,
    /// Every row `≤ bound`.
    pub max_value: BTreeMap<String, f64>,
    /// Projection ranks must agree for every `n ≥` this index.
    pub projection_ranks_from: Option<u32>,
    /// Window counts of members and base operator agree within 1 from this index.
    pub window_counts_from: Option<u32>,
}

impl Default for Checks {
    fn default() -> Self {
        Self {
            relbound_slack: crate::conv::RELBOUND_SLACK,
            equivalence_slack: 1e-9,
            sandwich_slack: 1e-8,
            qfree_slack: 0.05,
            decreasing: Vec::new(),
            slope: BTreeMap::new(),
            final_ratio: BTreeMap::new(),
            final_below: BTreeMap::new(),
            max_value: BTreeMap::new(),
            projection_ranks_from: None,
            window_counts_from: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub kind: ScenarioKind,
    pub interval: (f64, f64),
    pub m: usize,
    pub ns: Vec<u32>,
    /// Spectral parameters audited against the report at `z = i`.
    pub z_list: Vec<C64>,
    /// Window for spectral inclusion and Hausdorff distance.
    pub window: (f64, f64),
    pub seed: u64,
    pub limit: Triple,
    /// Member expressions (slnrc, custom_pair) or the outer triple (compact_cutoff).
    pub member: Triple,
    pub delta: f64,
    pub gamma: f64,
    pub functions: Vec<BoundedFn>,
    pub heat_times: Vec<f64>,
    pub unitary_times: Vec<f64>,
    pub projection_window: Option<(f64, f64)>,
    /// Window for eigenvalue counts of members and the base operator.
    pub count_window: Option<(f64, f64)>,
    pub sandwich_shifts: Vec<f64>,
    pub record_runtime: bool,
    pub checks: Checks,
}

impl Scenario {
    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.interval.0, self.interval.1, self.m)
    }

    pub fn limit_coefficients(&self) -> Coefficients {
        self.limit.at(0.0).with_bounds(self.delta, self.gamma)
    }

    pub fn member_coefficients(&self, n: u32) -> Coefficients {
        self.member.at(n as f64).with_bounds(self.delta, self.gamma)
    }
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    parse_scenario(&std::fs::read_to_string(path)?)
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn schema(key: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Schema { key: key.into(), reason: reason.into() }
}

/// Table wrapper that remembers which keys were consumed.
struct Section<'a> {
    prefix: &'a str,
    table: &'a Table,
    seen: Vec<&'a str>,
}

impl<'a> Section<'a> {
    fn new(prefix: &'a str, table: &'a Table) -> Self {
        Self { prefix, table, seen: Vec::new() }
    }

    fn key(&self, k: &str) -> String {
        if self.prefix.is_empty() {
            k.to_string()
        } else {
            format!("{}.{}", self.prefix, k)
        }
    }

    fn get(&mut self, k: &'a str) -> Option<&'a Value> {
        self.seen.push(k);
        self.table.get(k)
    }

    fn finish(self) -> Result<()> {
        for k in self.table.keys() {
            if !self.seen.contains(&k.as_str()) {
                return Err(schema(self.key(k), "unknown key"));
            }
        }
        Ok(())
    }

    fn number(&mut self, k: &'a str) -> Result<Option<f64>> {
        let key = self.key(k);
        self.get(k).map(|v| as_number(v, &key)).transpose()
    }

    fn string(&mut self, k: &'a str) -> Result<Option<String>> {
        let key = self.key(k);
        match self.get(k) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(schema(key, "expected a string")),
        }
    }

    fn boolean(&mut self, k: &'a str) -> Result<Option<bool>> {
        let key = self.key(k);
        match self.get(k) {
            None => Ok(None),
            Some(Value::Boolean(b)) => Ok(Some(*b)),
            Some(_) => Err(schema(key, "expected true or false")),
        }
    }

    fn integer(&mut self, k: &'a str) -> Result<Option<i64>> {
        let key = self.key(k);
        match self.get(k) {
            None => Ok(None),
            Some(Value::Integer(i)) => Ok(Some(*i)),
            Some(_) => Err(schema(key, "expected an integer")),
        }
    }

    fn array(&mut self, k: &'a str) -> Result<Option<&'a Vec<Value>>> {
        let key = self.key(k);
        match self.get(k) {
            None => Ok(None),
            Some(Value::Array(a)) => Ok(Some(a)),
            Some(_) => Err(schema(key, "expected an array")),
        }
    }

    fn numbers(&mut self, k: &'a str) -> Result<Option<Vec<f64>>> {
        let key = self.key(k);
        self.array(k)?
            .map(|a| a.iter().map(|v| as_number(v, &key)).collect::<Result<Vec<_>>>())
            .transpose()
    }

    fn pair(&mut self, k: &'a str) -> Result<Option<(f64, f64)>> {
        let key = self.key(k);
        match self.numbers(k)? {
            None => Ok(None),
            Some(v) if v.len() == 2 => Ok(Some((v[0], v[1]))),
            Some(_) => Err(schema(key, "expected two numbers")),
        }
    }

    fn table(&mut self, k: &'a str) -> Result<Option<&'a Table>> {
        let key = self.key(k);
        match self.get(k) {
            None => Ok(None),
            Some(Value::Table(t)) => Ok(Some(t)),
            Some(_) => Err(schema(key, "expected a table")),
        }
    }

    fn number_map(&mut self, k: &'a str) -> Result<BTreeMap<String, f64>> {
        let key = self.key(k);
        let mut out = BTreeMap::new();
        if let Some(t) = self.table(k)? {
            for (col, v) in t {
                out.insert(col.clone(), as_number(v, &format!("{key}.{col}"))?);
            }
        }
        Ok(out)
    }
}

/// Numbers, or strings holding constant expressions such as `"2*pi"`.
fn as_number(v: &Value, key: &str) -> Result<f64> {
    match v {
        Value::Integer(i) => Ok(*i as f64),
        Value::Float(f) => Ok(*f),
        Value::String(s) => {
            let e = Expr::parse(s)?;
            if e.uses_n() {
                return Err(schema(key, "constant expression must not use n"));
            }
            let v = e.eval(0.0, 0.0);
            if v != e.eval(1.0, 0.0) {
                return Err(schema(key, "constant expression must not use x"));
            }
            Ok(v)
        }
        _ => Err(schema(key, "expected a number")),
    }
}

fn triple(sec: Option<&Table>, name: &str, defaults: Option<&Triple>) -> Result<(Triple, Option<f64>, Option<f64>)> {
    let empty = Table::new();
    let mut s = Section::new(name, sec.unwrap_or(&empty));
    let expr = |k: &'static str, s: &mut Section, fallback: Option<&Expr>| -> Result<Expr> {
        match s.string(k)? {
            Some(src) => Ok(Expr::parse(&src)?),
            None => Ok(fallback.cloned().unwrap_or_else(|| {
                Expr::parse(if k == "q" { "0" } else { "1" }).expect("literal parses")
            })),
        }
    };
    let w = expr("w", &mut s, defaults.map(|d| &d.w))?;
    let p = expr("p", &mut s, defaults.map(|d| &d.p))?;
    let q = expr("q", &mut s, defaults.map(|d| &d.q))?;
    let delta = s.number("delta")?;
    let gamma = s.number("gamma")?;
    s.finish()?;
    Ok((Triple { w, p, q }, delta, gamma))
}

fn complex_list(arr: &[Value], key: &str) -> Result<Vec<C64>> {
    arr.iter()
        .map(|v| match v {
            Value::Array(p) if p.len() == 2 => Ok(C64::new(as_number(&p[0], key)?, as_number(&p[1], key)?)),
            _ => Err(schema(key, "complex numbers are written [re, im]")),
        })
        .collect()
}

fn checks(table: Option<&Table>) -> Result<Checks> {
    let empty = Table::new();
    let mut s = Section::new("checks", table.unwrap_or(&empty));
    let mut c = Checks::default();
    if let Some(v) = s.number("relbound_slack")? {
        c.relbound_slack = v;
    }
    if let Some(v) = s.number("equivalence_slack")? {
        c.equivalence_slack = v;
    }
    if let Some(v) = s.number("sandwich_slack")? {
        c.sandwich_slack = v;
    }
    if let Some(v) = s.number("qfree_slack")? {
        c.qfree_slack = v;
    }
    if let Some(arr) = s.array("decreasing")? {
        for v in arr {
            match v {
                Value::String(col) => c.decreasing.push(col.clone()),
                _ => return Err(schema("checks.decreasing", "expected column names")),
            }
        }
    }
    if let Some(t) = s.table("slope")? {
        for (col, v) in t {
            let key = format!("checks.slope.{col}");
            match v {
                Value::Array(a) if a.len() == 2 => {
                    c.slope.insert(col.clone(), (as_number(&a[0], &key)?, as_number(&a[1], &key)?));
                }
                _ => return Err(schema(key, "expected [lo, hi]")),
            }
        }
    }
    c.final_ratio = s.number_map("final_ratio")?;
    c.final_below = s.number_map("final_below")?;
    c.max_value = s.number_map("max_value")?;
    c.projection_ranks_from = s.integer("projection_ranks_from")?.map(|v| v as u32);
    c.window_counts_from = s.integer("window_counts_from")?.map(|v| v as u32);
    s.finish()?;
    Ok(c)
}

pub fn parse_scenario(src: &str) -> Result<Scenario> {
    let table: Table = src.parse().map_err(|e: toml::de::Error| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(src, s.start));
        Error::Parse { line, column, message: e.message().to_string() }
    })?;
    let mut top = Section::new("", &table);

    let name = top.string("name")?.unwrap_or_else(|| "scenario".into());
    let kind_src = top.string("kind")?.ok_or_else(|| schema("kind", "missing"))?;
    let kind = ScenarioKind::parse(&kind_src)
        .ok_or_else(|| schema("kind", format!("expected slnrc, compact_cutoff or custom_pair, got `{kind_src}`")))?;
    let interval = top.pair("interval")?.ok_or_else(|| schema("interval", "missing"))?;
    if !(interval.0 < interval.1) {
        return Err(schema("interval", "need a < b"));
    }
    let m = top.integer("m")?.ok_or_else(|| schema("m", "missing"))?;
    if m < 8 {
        return Err(schema("m", "need at least 8 interior nodes"));
    }
    let ns_raw = top.array("ns")?.ok_or_else(|| schema("ns", "missing"))?;
    let mut ns = Vec::with_capacity(ns_raw.len());
    for v in ns_raw {
        match v {
            Value::Integer(i) if *i >= 1 && *i <= u32::MAX as i64 => ns.push(*i as u32),
            _ => return Err(schema("ns", "family indices are positive integers")),
        }
    }
    if ns.is_empty() {
        return Err(schema("ns", "must not be empty"));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(schema("ns", "must be strictly ascending"));
    }
    let z_list = match top.array("z_list")? {
        Some(a) => complex_list(a, "z_list")?,
        None => vec![C64::new(0.0, 1.0)],
    };
    if let Some(z) = z_list.iter().find(|z| z.im == 0.0) {
        return Err(schema("z_list", format!("spectral parameters must be non-real, got {z}")));
    }
    let window = top.pair("window")?.unwrap_or((0.0, 40.0));
    if !(window.0 < window.1) {
        return Err(schema("window", "endpoints must be distinct and ascending"));
    }
    let seed = match top.integer("seed")? {
        None => 0,
        Some(s) if s >= 0 => s as u64,
        Some(_) => return Err(schema("seed", "must be nonnegative")),
    };
    let functions = match top.array("functions")? {
        None => vec![BoundedFn::Lorentzian],
        Some(a) => a
            .iter()
            .map(|v| {
                v.as_str()
                    .and_then(BoundedFn::from_name)
                    .ok_or_else(|| schema("functions", format!("unknown function {v}")))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let heat_times = top.numbers("heat_times")?.unwrap_or_else(|| vec![1.0]);
    if let Some(t) = heat_times.iter().find(|t| !(**t >= 0.0)) {
        return Err(schema("heat_times", format!("times must be nonnegative, got {t}")));
    }
    let unitary_times = top.numbers("unitary_times")?.unwrap_or_else(|| vec![0.7]);
    let projection_window = top.pair("projection_window")?;
    let count_window = top.pair("count_window")?;
    for (key, w) in [("projection_window", projection_window), ("count_window", count_window)] {
        if let Some((lo, hi)) = w {
            if !(lo < hi) {
                return Err(schema(key, "endpoints must be distinct and ascending"));
            }
        }
    }
    let sandwich_shifts = top.numbers("sandwich_shifts")?.unwrap_or_else(|| vec![0.5, 1.0, 2.0, 10.0]);
    if sandwich_shifts.iter().any(|s| !(*s > 0.0)) {
        return Err(schema("sandwich_shifts", "shifts must be positive"));
    }
    let record_runtime = top.boolean("record_runtime")?.unwrap_or(false);

    let (limit, delta, gamma) = triple(top.table("limit")?, "limit", None)?;
    if limit.uses_n() {
        return Err(schema("limit", "limit coefficients must not depend on n"));
    }
    // a missing member section means the identity schedule
    let (member, _, _) = triple(top.table("member")?, "member", Some(&limit))?;
    if kind == ScenarioKind::CompactCutoff && member.uses_n() {
        return Err(schema("member", "the outer triple of a cutoff family must not depend on n"));
    }
    let checks = checks(top.table("checks")?)?;
    top.finish()?;

    let grid = Grid::new(interval.0, interval.1, m as usize)?;
    let lim = Coefficients::from_exprs(&limit.w, &limit.p, &limit.q, 0.0);
    let w_min = grid.nodes().iter().map(|&x| (lim.w)(x)).fold(f64::INFINITY, f64::min);
    let p_min = grid.midpoints().iter().map(|&x| (lim.p)(x)).fold(f64::INFINITY, f64::min);
    let q_min = grid.nodes().iter().map(|&x| (lim.q)(x)).fold(f64::INFINITY, f64::min);
    let delta = delta.unwrap_or(0.5 * w_min.min(p_min));
    let gamma = gamma.unwrap_or(q_min - 1.0);

    let scenario = Scenario {
        name,
        kind,
        interval,
        m: m as usize,
        ns,
        z_list,
        window,
        seed,
        limit,
        member,
        delta,
        gamma,
        functions,
        heat_times,
        unitary_times,
        projection_window,
        count_window,
        sandwich_shifts,
        record_runtime,
        checks,
    };
    validate_columns(&scenario)?;
    scenario.limit_coefficients().check(&grid)?;
    if scenario.kind != ScenarioKind::CustomPair {
        for &n in &scenario.ns {
            scenario
                .member_coefficients(n)
                .check(&grid)
                .map_err(|e| Error::AtIndex { n, source: Box::new(e) })?;
        }
    }
    Ok(scenario)
}

/// Every column named in `[checks]` must exist in the sweep table.
fn validate_columns(s: &Scenario) -> Result<()> {
    let cols = super::columns(s);
    let known = |c: &str| cols.iter().any(|k| k == c);
    let named = s
        .checks
        .decreasing
        .iter()
        .map(|c| ("checks.decreasing", c))
        .chain(s.checks.slope.keys().map(|c| ("checks.slope", c)))
        .chain(s.checks.final_ratio.keys().map(|c| ("checks.final_ratio", c)))
        .chain(s.checks.final_below.keys().map(|c| ("checks.final_below", c)))
        .chain(s.checks.max_value.keys().map(|c| ("checks.max_value", c)));
    for (key, col) in named {
        if !known(col) || col == "n" {
            return Err(schema(key, format!("`{col}` is not a sweep column")));
        }
    }
    if s.checks.projection_ranks_from.is_some() && s.projection_window.is_none() {
        return Err(schema("checks.projection_ranks_from", "needs projection_window"));
    }
    if s.checks.window_counts_from.is_some() && s.count_window.is_none() {
        return Err(schema("checks.window_counts_from", "needs count_window"));
    }
    Ok(())
}
