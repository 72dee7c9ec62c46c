//! Finite-difference Sturm–Liouville operators: factorization, the q-free form
//! bound, local L¹ norms and second-order convergence of the ground state.

use resconv::expcli::loglog_slope;
use resconv::sturm::{local_l1_bound, Coefficients, SlProblem};
use resconv::wspace::{weighted_norm, Grid};
use std::f64::consts::PI;

fn main() -> resconv::Result<()> {
    // q-free operators factor as D*D through the staggered grid
    let grid = Grid::new(0.0, PI, 60)?;
    let prob = SlProblem::new(grid, Coefficients::new(|x| 1.0 + 0.3 * x.sin(), |x| 2.0 + x.cos(), |_| 0.0));
    let op = prob.discretize()?;
    let t0 = op.action();
    let fac = prob.factorize()?;
    let norm = |m: &resconv::numlin::DenseMatrix| weighted_norm(m, op.space(), op.space());
    println!("relative ‖T₀ − D*D‖ = {:.1e}", norm(&(&t0 - &fac.product())) / norm(&t0));

    // q = 5 sin² x is form bounded by the free form with any small bound
    let prob = SlProblem::new(grid, Coefficients::new(|_| 1.0, |_| 1.0, |x| 5.0 * x.sin().powi(2)));
    for eps in [0.1, 1.0] {
        let c = prob.qfree_check(eps, 200, 7, 0.05)?;
        println!("ε = {eps}: worst sampled ratio {:.4}, pencil sup {:.4}, M = {:.4}", c.worst_ratio, c.pencil_ratio, c.bound);
    }

    println!("sup over unit cells of ∫|indicator(0,1)| on (0, π): {:.6}", local_l1_bound(&|x| if (0.0..1.0).contains(&x) { 1.0 } else { 0.0 }, 0.0, PI, 1e-3));

    // −u'' on (0, π): first eigenvalue 1, error O(h²)
    let (mut hs, mut errs) = (vec![], vec![]);
    for m in [20, 40, 80, 160] {
        let g = Grid::new(0.0, PI, m)?;
        let l0 = SlProblem::new(g, Coefficients::constant(1.0, 1.0, 0.0)).discretize()?.spectrum()[0];
        println!("m = {m:>3}: λ₀ = {l0:.10}");
        hs.push(1.0 / g.h());
        errs.push((l0 - 1.0).abs());
    }
    println!("observed order {:.3}", loglog_slope(&hs, &errs).unwrap_or(f64::NAN));
    Ok(())
}
