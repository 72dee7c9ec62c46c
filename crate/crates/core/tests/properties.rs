use proptest::prelude::*;
use resconv::conv::{equivalence_check, hausdorff, nrc_distance, relbound_certificate, ConvergencePair};
use resconv::numlin::{eigvalsh, op_norm_euclid, DenseMatrix, C64};
use resconv::sturm::{Coefficients, SlProblem};
use resconv::wspace::{weighted_norm, Embedding, Grid, WeightedSpace};

fn hermitian(entries: &[(f64, f64)], n: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in 0..=i {
            let (re, im) = entries[k % entries.len()];
            k += 1;
            let z = if i == j { C64::new(re, 0.0) } else { C64::new(re, im) };
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_and_norm_from_spectrum(n in 2usize..12, entries in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..80)) {
        let m = hermitian(&entries, n);
        let vals = eigvalsh(&m).unwrap();
        let trace: f64 = (0..n).map(|i| m[(i, i)].re).sum();
        prop_assert!((vals.iter().sum::<f64>() - trace).abs() < 1e-10 * (1.0 + trace.abs()));
        let spec_norm = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        prop_assert!((op_norm_euclid(&m) - spec_norm).abs() < 1e-10 * (1.0 + spec_norm));
    }

    #[test]
    fn weighted_norm_of_identity_is_weight_ratio(ws in prop::collection::vec(0.2f64..5.0, 12), vs in prop::collection::vec(0.2f64..5.0, 12)) {
        // ‖I‖ from weight w to weight v is max sqrt(v/w)
        let grid = Grid::new(0.0, 1.0, 12).unwrap();
        let src = WeightedSpace::on_grid(grid, ws.clone()).unwrap();
        let dst = WeightedSpace::on_grid(grid, vs.clone()).unwrap();
        let want = ws.iter().zip(&vs).map(|(w, v)| (v / w).sqrt()).fold(0.0, f64::max);
        let got = weighted_norm(&DenseMatrix::identity(12), &src, &dst);
        prop_assert!((got - want).abs() < 1e-12 * want);
        let j = Embedding::identity(src, dst).unwrap();
        prop_assert!((j.metrics().j_norm - want).abs() < 1e-12 * want);
    }

    #[test]
    fn hausdorff_is_a_symmetric_metric(a in prop::collection::vec(-10.0f64..10.0, 1..8), b in prop::collection::vec(-10.0f64..10.0, 1..8), c in prop::collection::vec(-10.0f64..10.0, 1..8)) {
        prop_assert_eq!(hausdorff(&a, &a), 0.0);
        prop_assert_eq!(hausdorff(&a, &b), hausdorff(&b, &a));
        prop_assert!(hausdorff(&a, &c) <= hausdorff(&a, &b) + hausdorff(&b, &c) + 1e-12);
    }

    #[test]
    fn pair_bounds_hold_for_random_weights(amp in 0.0f64..0.9, freq in 0.5f64..4.0, qa in 0.0f64..3.0, y in 0.3f64..4.0) {
        let grid = Grid::new(0.0, 2.0, 30).unwrap();
        let limit = SlProblem::new(grid, Coefficients::new(|_| 1.0, |_| 1.0, move |x| qa * x));
        let member = SlProblem::new(grid, Coefficients::new(move |x| 1.0 + amp * (freq * x).sin(), |_| 1.0, move |x| qa * x));
        let pair = ConvergencePair::from_problems(&limit, &member).unwrap();
        let z = C64::new(0.0, y);
        prop_assert!(equivalence_check(&pair, z).unwrap().holds(1e-9));
        // distances never exceed the sum of resolvent norms times ‖J‖²
        let r = 1.0 / y;
        let jn = pair.embedding().metrics().j_norm;
        prop_assert!(nrc_distance(&pair, z).unwrap() <= jn * jn * r + r + 1e-12);
        let cert = relbound_certificate(&pair, 1e-10).unwrap();
        prop_assert!(cert.bound_ok);
    }
}
