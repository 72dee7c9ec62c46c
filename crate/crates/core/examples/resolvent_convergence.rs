//! Resolvent distances between operators on different weighted spaces, with
//! the relative-bound and form certificates that control them.

use resconv::conv::{
    equivalence_check, form_delta, nrc_distance, nrc_distance_alt, relbound_certificate, sandwich_check,
    ConvergencePair, RELBOUND_SLACK,
};
use resconv::numlin::C64;
use resconv::sturm::{Coefficients, SlProblem};
use resconv::wspace::Grid;

fn main() -> resconv::Result<()> {
    let grid = Grid::new(0.0, std::f64::consts::PI, 150)?;
    let limit = SlProblem::new(grid, Coefficients::new(|_| 1.0, |_| 1.0, |x| x * x / (1.0 + x * x)));
    let z = C64::new(0.0, 1.0);
    println!(" n   nrc(i)     nrc_alt(i)  2·c_n      form δ     sandwich ok  equivalence ok");
    for n in [1u32, 2, 4, 8, 16, 32] {
        let k = n as f64;
        let member = SlProblem::new(
            grid,
            Coefficients::new(
                move |x| 1.0 + x.sin() / k,
                move |x| 1.0 + x.cos() / (2.0 * k),
                move |x| x * x / (1.0 + x * x) + if (0.0..1.0).contains(&x) { 1.0 / k } else { 0.0 },
            ),
        );
        let pair = ConvergencePair::from_problems(&limit, &member)?;
        let cert = relbound_certificate(&pair, RELBOUND_SLACK)?;
        let gamma = -0.5;
        let sw = sandwich_check(&pair, gamma, &[0.5, 1.0, 2.0])?;
        println!(
            "{n:>2}   {:.4e}  {:.4e}  {:.4e}  {:.4e}  {:<11}  {}",
            nrc_distance(&pair, z)?,
            nrc_distance_alt(&pair, z)?,
            2.0 * cert.c_n,
            form_delta(&pair, gamma)?,
            sw.holds(1e-8),
            equivalence_check(&pair, z)?.holds(1e-9),
        );
    }
    Ok(())
}
