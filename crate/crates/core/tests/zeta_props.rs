use std::f64::consts::PI;

use ncg_core::zeta_lab::{
    compare, count_zeros, hardy_z, hardy_z_complex, osc_correlation, pearson, riemann_siegel_theta, semiclassical_area,
    smooth_n, DEFAULT_RESOLUTION,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// ζ(s) by Euler–Maclaurin summation with `n` head terms.
fn zeta_em(s: Complex64, n: usize) -> Complex64 {
    // B_{2k}/(2k)! for k = 1..=12
    const B: [f64; 12] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
        1.0 / 74724249600.0,
        -3617.0 / 10670622842880000.0,
        43867.0 / 5109094217170944000.0,
        -174611.0 / 802857662698291200000.0,
        77683.0 / 14101100039391805440000.0,
        -236364091.0 / 1693824136731743669452800000.0,
    ];
    let nf = n as f64;
    let pow = |x: f64, e: Complex64| Complex64::new(x, 0.0).powc(e);
    let mut sum: Complex64 = (1..n).map(|k| pow(k as f64, -s)).sum();
    sum += pow(nf, 1.0 - s) / (s - 1.0) + 0.5 * pow(nf, -s);
    let mut rising = s;
    let mut np = pow(nf, -s - 1.0);
    for (k, b) in B.iter().enumerate() {
        sum += b * rising * np;
        let j = 2.0 * k as f64;
        rising *= (s + j + 1.0) * (s + j + 2.0);
        np /= nf * nf;
    }
    sum
}

/// Asymptotic expansion of the Riemann–Siegel theta function.
fn theta_asymptotic(t: f64) -> f64 {
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
        + 127.0 / (430080.0 * t.powi(7))
}

fn z_oracle(t: f64) -> f64 {
    let s = Complex64::new(0.5, t);
    (Complex64::new(0.0, theta_asymptotic(t)).exp() * zeta_em(s, 400)).re
}

#[test]
fn theta_matches_asymptotic_series() {
    for t in [20.0, 35.5, 77.0, 140.0, 200.0] {
        let got = riemann_siegel_theta(t);
        assert!((got - theta_asymptotic(t)).abs() < 1e-10, "t = {t}: {got} vs {}", theta_asymptotic(t));
    }
}

#[test]
fn hardy_z_matches_euler_maclaurin() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let t = rng.gen_range(20.0..200.0);
        let (got, want) = (hardy_z(t).unwrap(), z_oracle(t));
        assert!((got - want).abs() < 1e-7 * want.abs().max(1.0), "t = {t}: {got} vs {want}");
        assert!(hardy_z_complex(t).unwrap().im.abs() < 1e-10);
    }
    assert!(hardy_z(0.0).is_err() && hardy_z(200.5).is_err());
}

#[test]
fn golden_zeros() {
    let found = count_zeros(50.0, DEFAULT_RESOLUTION).unwrap();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/zeta_zeros.json");
    if std::env::var_os("NCG_BLESS").is_some() {
        std::fs::write(path, serde_json::to_string_pretty(&found.zeros.ordinates).unwrap() + "\n").unwrap();
    }
    let golden: Vec<f64> = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(golden.len(), 10);
    assert_eq!(found.count, 10);
    assert!(!found.warning());
    for (a, b) in found.zeros.ordinates.iter().zip(&golden) {
        assert!((a - b).abs() < 1e-4, "{a} vs golden {b}");
        assert!(z_oracle(a - 1e-5).signum() != z_oracle(a + 1e-5).signum());
    }
    assert!(found.zeros.ordinates.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn count_is_monotone_and_tracks_smooth_part() {
    let full = count_zeros(200.0, DEFAULT_RESOLUTION).unwrap();
    assert_eq!(full.count, 79);
    let mut prev = 0;
    let mut c_fit: f64 = 0.0;
    for k in 0..=170 {
        let e = 30.0 + k as f64;
        let n = count_zeros(e, DEFAULT_RESOLUTION).unwrap().count;
        assert!(n >= prev);
        prev = n;
        let gap = (n as f64 - smooth_n(e).unwrap()).abs();
        assert!(gap < 2.0, "E = {e}: |{n} − smooth| = {gap}");
        c_fit = c_fit.max(gap / e.ln());
    }
    assert!(c_fit < 1.0, "fitted C = {c_fit}");
}

#[test]
fn prime_sum_sign_matters() {
    let grid: Vec<f64> = (0..=320).map(|k| 20.0 + 0.25 * k as f64).collect();
    let rows = compare(&grid, 101, 3).unwrap();
    let r = osc_correlation(&rows).unwrap();
    assert!(r > 0.5, "correlation {r}");
    let measured: Vec<f64> = rows.iter().map(|r| r.osc_measured).collect();
    let flipped: Vec<f64> = rows.iter().map(|r| -r.osc_predicted).collect();
    assert!(pearson(&measured, &flipped).unwrap() < -0.5);
}

#[test]
fn area_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let e = rng.gen_range(1.0..200.0);
        let floor = (e / (2.0 * PI)).sqrt();
        let lambda = floor * rng.gen_range(1.0..50.0);
        let r = semiclassical_area(e, lambda).unwrap();
        assert!(r.relative_gap() < 1e-6, "E = {e}, Λ = {lambda}: {r:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn area_closed_form_is_affine_in_log_lambda(e in 0.5f64..200.0, s in 1.0f64..30.0) {
        let floor = (e / (2.0 * PI)).sqrt();
        let a = semiclassical_area(e, floor * s).unwrap();
        let b = semiclassical_area(e, floor * s * PI).unwrap();
        let slope = 2.0 * e / (2.0 * PI);
        prop_assert!((b.closed_form - a.closed_form - slope * PI.ln()).abs() < 1e-9 * b.closed_form.abs().max(1.0));
        prop_assert!(a.relative_gap() < 1e-6);
    }

    #[test]
    fn z_is_real(t in 0.5f64..200.0) {
        prop_assert!(hardy_z_complex(t).unwrap().im.abs() < 1e-10);
    }
}
