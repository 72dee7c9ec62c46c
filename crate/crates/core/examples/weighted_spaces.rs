//! Weighted discrete L² spaces and the identification maps between them.

use resconv::numlin::C64;
use resconv::wspace::{Embedding, Grid, TestDictionary, WeightedSpace};

fn main() -> resconv::Result<()> {
    let grid = Grid::new(0.0, std::f64::consts::PI, 100)?;
    let nodes = grid.nodes();
    let w: Vec<f64> = nodes.iter().map(|_| 1.0).collect();
    let space = WeightedSpace::on_grid(grid, w)?;

    let one = vec![C64::new(1.0, 0.0); space.dim()];
    println!("‖1‖² on (0, π) with unit weight: {:.6} (π = {:.6})", space.norm(&one)?.powi(2), std::f64::consts::PI);

    // identity between unit weight and weight 1 + sin(x)/n
    for n in [1.0, 4.0, 16.0] {
        let wn: Vec<f64> = nodes.iter().map(|x| 1.0 + x.sin() / n).collect();
        let target = WeightedSpace::on_grid(grid, wn)?;
        let j = Embedding::identity(space.clone(), target)?;
        let m = j.metrics();
        let dict = TestDictionary::standard(j.src(), 0);
        let jcos = j.check_jcos(&dict.vectors, 0.5)?;
        let worst = jcos.residuals.iter().fold(0.0f64, |a, &b| a.max(b));
        println!(
            "n = {n:>2}: ‖J‖ = {:.4}  ‖J*J − I‖ = {:.4}  ‖JJ* − I‖ = {:.4}  worst per-vector {:.4}",
            m.j_norm, m.jstarj_defect, m.jjstar_defect, worst
        );
    }

    let wn: Vec<f64> = nodes.iter().map(|x| 1.0 + 0.4 * x.cos()).collect();
    let j = Embedding::identity(space.clone(), WeightedSpace::on_grid(grid, wn)?)?;
    let inv = j.j_inverse()?;
    println!("\nJ⁻¹: two-sided {}  left defect {:.1e}  ‖J* − J⁻¹‖ = {:.4}", inv.two_sided, inv.left_defect, inv.adjoint_gap);
    Ok(())
}
