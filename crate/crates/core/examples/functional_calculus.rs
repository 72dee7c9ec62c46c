//! Self-adjoint operators on a weighted space: resolvent, bounded functions,
//! heat and unitary groups, spectral projections.

use resconv::numlin::C64;
use resconv::selfadj::SpectrumWindow;
use resconv::sturm::{Coefficients, SlProblem};
use resconv::wspace::{weighted_norm, Grid};

fn main() -> resconv::Result<()> {
    let grid = Grid::new(0.0, std::f64::consts::PI, 120)?;
    let prob = SlProblem::new(grid, Coefficients::new(|x| 1.0 + 0.5 * x.sin(), |_| 1.0, |x| x.cos().powi(2)));
    let op = prob.discretize()?;
    let space = op.space().clone();
    println!("dim {}  lowest eigenvalues {:?}", op.dim(), &op.spectrum()[..4]);

    let z = C64::new(0.0, 1.0);
    let r = op.resolvent(z)?;
    println!("‖R(i)‖ = {:.6}   1/dist(i, σ) = {:.6}", weighted_norm(&r, &space, &space), 1.0 / op.spectral_distance(z));

    let lor = op.func_calc(|l| C64::new(1.0 / (1.0 + l * l), 0.0))?;
    println!("‖(1+A²)⁻¹‖ = {:.6}", weighted_norm(&lor, &space, &space));

    let u = op.unitary_group(0.7);
    println!("‖e^(0.7iA)‖ = {:.12}", weighted_norm(&u, &space, &space));
    let h1 = op.heat_semigroup(1.0)?;
    let h2 = op.heat_semigroup(2.0)?;
    let law = weighted_norm(&(&h1.matmul(&h1) - &h2), &space, &space);
    println!("semigroup law defect ‖e^(−A)e^(−A) − e^(−2A)‖ = {law:.2e}");

    let win = SpectrumWindow::new(0.0, 10.0)?;
    let (_, rank) = op.spectral_projection(&win)?;
    println!("rank P(0, 10) = {rank}, count_in = {}", op.count_in(&win)?);
    Ok(())
}
