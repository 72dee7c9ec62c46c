//! Hermitian eigensolver and the Cholesky pencil reduction on small dense matrices.

use resconv::numlin::{eigh, eigvalsh, op_norm_euclid, pencil_eigvalsh, DenseMatrix, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // three-point Dirichlet Laplacian, eigenvalues 2 − 2cos(kπ/(m+1))
    let m = 12;
    let lap = DenseMatrix::from_fn(m, m, |i, j| match i.abs_diff(j) {
        0 => C64::new(2.0, 0.0),
        1 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, 0.0),
    });
    let vals = eigvalsh(&lap)?;
    println!("k  computed            closed form");
    for (k, v) in vals.iter().enumerate().take(4) {
        let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (m + 1) as f64).cos();
        println!("{:<2} {v:<19.15} {exact:.15}", k + 1);
    }

    // complex Hermitian: eigenvectors reconstruct the matrix
    let h = DenseMatrix::from_fn(4, 4, |i, j| {
        let (i, j) = (i as f64, j as f64);
        if i == j { C64::new(i + 1.0, 0.0) } else { C64::new(0.1 * (i + j), 0.2 * (i - j)) }
    });
    let ed = eigh(&h)?;
    println!("\ncomplex 4x4 spectrum {:?}", ed.values);
    println!("reconstruction residual {:.2e}", ed.reconstruction_residual(&h));

    // generalized problem K v = λ W v with a diagonal mass
    let w = DenseMatrix::from_real_diag(&(1..=m).map(|k| 1.0 + 0.1 * k as f64).collect::<Vec<_>>());
    let pencil = pencil_eigvalsh(&lap, &w)?;
    println!("\nlowest pencil eigenvalue {:.6}, spectral norm of K {:.6}", pencil[0], op_norm_euclid(&lap));
    Ok(())
}
