//! Coefficient families and their deviation functionals.

use resconv::sturm::{compact_cutoff_family, slnrc_family, Coefficients};
use resconv::wspace::Grid;

fn main() -> resconv::Result<()> {
    let grid = Grid::new(0.0, std::f64::consts::PI, 200)?;
    let limit = Coefficients::new(|_| 1.0, |_| 1.0, |x| x * x / (1.0 + x * x)).with_bounds(0.5, -1.0);
    let fam = slnrc_family(
        &limit,
        |n| {
            let n = n as f64;
            Coefficients::new(
                move |x| 1.0 + x.sin() / n,
                move |x| 1.0 + x.cos() / (2.0 * n),
                move |x| x * x / (1.0 + x * x) + if (0.0..1.0).contains(&x) { 1.0 / n } else { 0.0 },
            )
        },
        &[1, 2, 4, 8, 16],
        grid,
    )?;
    println!(" n   weight    stiffness  potential  (nodal)");
    for m in &fam.members {
        let d = m.deviations;
        println!("{:>2}   {:.5}   {:.5}    {:.5}    {:.5}", m.n, d.weight, d.stiffness, d.potential, d.potential_nodal);
    }

    let grid = Grid::new(-20.0, 20.0, 399)?;
    let free = Coefficients::constant(1.0, 1.0, 0.0).with_bounds(0.5, -1.0);
    let outer = Coefficients::new(|x| 1.0 + 1.0 / (1.0 + x * x), |_| 1.0, |x| (-x.abs()).exp()).with_bounds(0.5, -1.0);
    let fam = compact_cutoff_family(&outer, &free, &[2, 4, 8, 16], grid)?;
    println!("\ncutoff tail deviations");
    for m in &fam.members {
        println!("{:>2}   weight {:.3e}   potential {:.3e}", m.n, m.deviations.weight, m.deviations.potential);
    }
    Ok(())
}
