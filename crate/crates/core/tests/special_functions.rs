use std::f64::consts::PI;

use elastocald::special_fn::{bessel_j_triple, bessel_y_triple, hankel1, hankel1_triple};
use num_complex::Complex64;
use proptest::prelude::*;

include!("data/hankel_table.rs");

fn scaled_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1.0)
}

#[test]
fn matches_high_precision_table() {
    let mut worst: f64 = 0.0;
    for &(z, v) in HANKEL_TABLE {
        for n in 0..3u32 {
            let want = Complex64::new(v[2 * n as usize], v[2 * n as usize + 1]);
            let got = hankel1(n, z).unwrap();
            let e = scaled_err(got, want);
            worst = worst.max(e);
            assert!(e <= 1e-12, "H{n}({z}) = {got}, want {want}, err {e:e}");
        }
    }
    println!("worst scaled error {worst:e}");
}

#[test]
fn wronskian_on_table_points() {
    for &(z, _) in HANKEL_TABLE {
        let j = bessel_j_triple(z);
        let y = bessel_y_triple(z).unwrap();
        let w = j[1] * y[0] - j[0] * y[1];
        let want = 2.0 / (PI * z);
        assert!((w - want).abs() <= 1e-12 * want.max(1.0), "z = {z}");
    }
}

proptest! {
    #[test]
    fn three_term_recurrence(z in 1e-3f64..500.0) {
        let h = hankel1_triple(z).unwrap();
        let lhs = h.h0 + h.h2;
        let rhs = h.h1 * (2.0 / z);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn wronskian(z in 1e-3f64..500.0) {
        let j = bessel_j_triple(z);
        let y = bessel_y_triple(z).unwrap();
        let w = j[1] * y[0] - j[0] * y[1];
        prop_assert!((w - 2.0 / (PI * z)).abs() <= 1e-13 * (2.0 / (PI * z)).max(1.0));
    }
}
