//! Indexed families of coefficient triples converging to a limit triple.

use rayon::prelude::*;

use super::{local_l1_bound_nodal, local_l1_bound_on, Coefficients};
use crate::error::{Error, Result};
use crate::wspace::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Uniform perturbations of the limit triple on the whole interval.
    Slnrc,
    /// Limit triple on `|x| ≤ n`, base triple outside.
    CompactCutoff,
}

/// Deviation functionals of one member from the limit triple.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Deviations {
    /// `sup |w_n/w − 1|` over nodes.
    pub weight: f64,
    /// `sup |p_n/p − 1|` over midpoints.
    pub stiffness: f64,
    /// `sup_k ∫_{[k,k+1)} |q_n − q|`, midpoint rule.
    pub potential: f64,
    /// The same cell supremum from node samples only.
    pub potential_nodal: f64,
}

impl Deviations {
    fn as_array(&self) -> [f64; 3] {
        [self.weight, self.stiffness, self.potential]
    }
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub n: u32,
    pub coeffs: Coefficients,
    pub deviations: Deviations,
}

#[derive(Clone, Debug)]
pub struct CoefficientFamily {
    pub kind: FamilyKind,
    pub grid: Grid,
    pub limit: Coefficients,
    /// Outer triple for the cutoff kind; equal to `limit` otherwise.
    pub base: Coefficients,
    pub members: Vec<FamilyMember>,
}

impl CoefficientFamily {
    pub fn ns(&self) -> Vec<u32> {
        self.members.iter().map(|m| m.n).collect()
    }

    pub fn member(&self, n: u32) -> Option<&FamilyMember> {
        self.members.iter().find(|m| m.n == n)
    }
}

fn check_indices(ns: &[u32]) -> Result<()> {
    if ns.is_empty() {
        return Err(Error::HypothesisViolation("family index set is empty".into()));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::HypothesisViolation("family indices must be strictly ascending".into()));
    }
    Ok(())
}

fn deviations(
    grid: &Grid,
    limit: &Coefficients,
    member: &Coefficients,
    region: &(dyn Fn(f64) -> bool + Sync),
    segments: &[(f64, f64)],
) -> Deviations {
    let ratio_dev = |f: &dyn Fn(f64) -> f64, g: &dyn Fn(f64) -> f64, pts: Vec<f64>| {
        pts.into_iter().filter(|&x| region(x)).map(|x| (f(x) / g(x) - 1.0).abs()).fold(0.0, f64::max)
    };
    let dq = |x: f64| (member.q)(x) - (limit.q)(x);
    Deviations {
        weight: ratio_dev(&*member.w, &*limit.w, grid.nodes()),
        stiffness: ratio_dev(&*member.p, &*limit.p, grid.midpoints()),
        potential: local_l1_bound_on(&dq, segments, grid.h()),
        potential_nodal: local_l1_bound_nodal(&dq, grid, region),
    }
}

/// Builds members `schedule(n)` for each `n`, checks them against the limit's
/// `δ, γ`, and requires finite deviations that do not increase with `n`.
pub fn slnrc_family(
    limit: &Coefficients,
    schedule: impl Fn(u32) -> Coefficients + Sync,
    ns: &[u32],
    grid: Grid,
) -> Result<CoefficientFamily> {
    check_indices(ns)?;
    limit.check(&grid)?;
    let whole = [(grid.a(), grid.b())];
    let members = ns
        .par_iter()
        .map(|&n| {
            let coeffs = schedule(n);
            coeffs
                .check_against(&grid, limit.delta, limit.gamma)
                .map_err(|e| Error::AtIndex { n, source: Box::new(e) })?;
            let deviations = deviations(&grid, limit, &coeffs, &|_| true, &whole);
            if deviations.as_array().iter().any(|d| !d.is_finite()) {
                return Err(Error::AtIndex {
                    n,
                    source: Box::new(Error::HypothesisViolation("non-finite deviation".into())),
                });
            }
            Ok(FamilyMember { n, coeffs, deviations })
        })
        .collect::<Result<Vec<_>>>()?;
    for pair in members.windows(2) {
        let (prev, next) = (pair[0].deviations.as_array(), pair[1].deviations.as_array());
        for (k, name) in ["weight", "stiffness", "potential"].iter().enumerate() {
            if next[k] > prev[k] * (1.0 + 1e-12) + 1e-15 {
                return Err(Error::HypothesisViolation(format!(
                    "{name} deviation increases from n = {} ({:.3e}) to n = {} ({:.3e})",
                    pair[0].n, prev[k], pair[1].n, next[k]
                )));
            }
        }
    }
    Ok(CoefficientFamily { kind: FamilyKind::Slnrc, grid, limit: limit.clone(), base: limit.clone(), members })
}

/// Members equal `cinf` on `|x| ≤ n` and `c0` outside; deviations are measured
/// on the tail `|x| > n`.
pub fn compact_cutoff_family(
    c0: &Coefficients,
    cinf: &Coefficients,
    ns: &[u32],
    grid: Grid,
) -> Result<CoefficientFamily> {
    check_indices(ns)?;
    let delta = c0.delta.min(cinf.delta);
    let gamma = c0.gamma.min(cinf.gamma);
    c0.check_against(&grid, delta, gamma)?;
    cinf.check_against(&grid, delta, gamma)?;
    let members = ns
        .par_iter()
        .map(|&n| {
            let r = n as f64;
            let pick = |inner: &super::CoefFn, outer: &super::CoefFn| {
                let (inner, outer) = (inner.clone(), outer.clone());
                move |x: f64| if x.abs() <= r { inner(x) } else { outer(x) }
            };
            let coeffs = Coefficients::new(pick(&cinf.w, &c0.w), pick(&cinf.p, &c0.p), pick(&cinf.q, &c0.q))
                .with_bounds(delta, gamma);
            let tail = [(grid.a(), -r), (r, grid.b())];
            let deviations = deviations(&grid, cinf, &coeffs, &|x: f64| x.abs() > r, &tail);
            Ok(FamilyMember { n, coeffs, deviations })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoefficientFamily {
        kind: FamilyKind::CompactCutoff,
        grid,
        limit: cinf.clone(),
        base: c0.clone(),
        members,
    })
}
