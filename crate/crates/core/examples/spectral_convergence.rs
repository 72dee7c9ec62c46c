//! Spectral consequences of resolvent convergence: Hausdorff distance of
//! spectra in a window, projection ranks around an isolated eigenvalue, and
//! window counts that grow with the interval length.

use resconv::conv::{ess_window_count, projection_diagnostics, spectra_hausdorff, spectra_inclusion_gap, ConvergencePair};
use resconv::selfadj::SpectrumWindow;
use resconv::sturm::{Coefficients, SlProblem};
use resconv::wspace::{Grid, TestDictionary};
use std::f64::consts::PI;

fn well(x: f64) -> f64 {
    x * x / (1.0 + x * x) - if x > 1.0 && x < 2.0 { 3.0 } else { 0.0 }
}

fn main() -> resconv::Result<()> {
    let grid = Grid::new(0.0, PI, 200)?;
    let limit = SlProblem::new(grid, Coefficients::new(|_| 1.0, |_| 1.0, well));
    let win = SpectrumWindow::new(0.0, 40.0)?;
    let proj = SpectrumWindow::new(-1.5, 1.5)?;
    println!(" n   hausdorff  inclusion  rank_A  rank_An  worst projection residual");
    for n in [1u32, 4, 16, 64] {
        let k = n as f64;
        let member = SlProblem::new(grid, Coefficients::new(move |x| 1.0 + x.sin() / k, |_| 1.0, well));
        let pair = ConvergencePair::from_problems(&limit, &member)?;
        let dict = TestDictionary::standard(pair.limit().space(), 0);
        let pd = projection_diagnostics(&pair, &proj, &dict.vectors)?;
        let worst = pd.residuals.iter().fold(0.0f64, |a, &b| a.max(b));
        println!(
            "{n:>2}   {:.4}     {:.4}     {}       {}        {worst:.3e}",
            spectra_hausdorff(&pair, &win),
            spectra_inclusion_gap(&pair, &win),
            pd.rank_a,
            pd.rank_an
        );
    }

    // free Laplacian on (0, Lπ): eigenvalues in (0.75, 1.25) pile up like 0.252·L
    println!("\n L   count in (0.75, 1.25)");
    for l in [10.0, 20.0, 40.0] {
        let m = (20.0 * l) as usize - 1;
        let op = SlProblem::new(Grid::new(0.0, l * PI, m)?, Coefficients::constant(1.0, 1.0, 0.0)).discretize()?;
        println!("{l:>3}  {}", ess_window_count(&op, 1.0, 0.25)?);
    }
    Ok(())
}
