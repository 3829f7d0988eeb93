use approx::assert_relative_eq;
use koch_tube::cantor::{fourier_g, mu, CantorProfile, GTable, HMode};
use koch_tube::scaling::EpsilonIndex;
use koch_tube::tube::*;
use koch_tube::{validate, DIM, LN3, PERIOD};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

fn table() -> &'static CoefficientTable {
    static T: OnceLock<CoefficientTable> = OnceLock::new();
    T.get_or_init(|| CoefficientTable::build(DEFAULT_N, DEFAULT_COEFF_M).unwrap())
}

fn profile() -> &'static CantorProfile {
    static P: OnceLock<CantorProfile> = OnceLock::new();
    P.get_or_init(|| CantorProfile::build(HMode::Approximate, 64, DEFAULT_A_MAX).unwrap())
}

fn grid() -> Vec<f64> {
    validate::off_jump_grid(0.5, 4.0, 40, 0.02)
}

#[test]
fn zeroth_coefficients() {
    let t = table();
    assert!(t.b(0).re < 0.0 && t.b(0).im == 0.0);
    assert!(t.tau(0).re < 0.0 && t.tau(0).im == 0.0);
    assert_relative_eq!(t.sigma(0).re, -SIGMA_CONST - t.tau(0).re, max_relative = 1e-14);
    for n in [1i64, 2, 7, 150] {
        assert_eq!(t.b(-n), t.b(n).conj());
        assert_eq!(t.tau(-n), t.tau(n).conj());
        assert_eq!(t.sigma(n), -t.tau(n));
        assert_eq!(t.a(-n), t.a(n).conj());
    }
    assert_eq!(t.b(201), Complex64::new(0.0, 0.0));
}

#[test]
fn both_forms_of_the_coefficients_agree() {
    assert!(validate::check_dual_forms(10, 40, 1e-12).passed);
    for n in [-3i64, 0, 5] {
        let b = coeff_b(n, 60).unwrap();
        assert!((b - coeff_b_catalan(n, 60).unwrap()).norm() <= 1e-12 * b.norm());
    }
    assert!(CoefficientTable::build(5, 0).is_err());
    assert!(CoefficientTable::build(5, MAX_COEFF_M + 1).is_err());
}

/// `Σ_k Σ_α c_α g_(k-α) e^(2πikx)` over every k the product can reach.
fn full_convolution(idx: &EpsilonIndex, c: impl Fn(i64) -> Complex64, n: i64, g: &GTable) -> Complex64 {
    let a = g.a_max as i64;
    let mut s = Complex64::new(0.0, 0.0);
    for k in -(n + a)..=(n + a) {
        let conv: Complex64 = (-n..=n).map(|al| c(al) * g.get(k - al)).sum();
        s += conv * Complex64::from_polar(1.0, 2.0 * PI * k as f64 * idx.frac);
    }
    s
}

#[test]
fn convolution_matches_product_at_matched_truncation() {
    let t = CoefficientTable::build(30, 60).unwrap();
    let g = fourier_g(80, HMode::Approximate).unwrap();
    for x in [0.3, 1.47, 2.81] {
        let idx = EpsilonIndex::from_x(x).unwrap();
        let (p1, p2) = g_pair_by_products(&idx, &t, &g, 30).unwrap();
        let a: Complex64 = (-30..=30).map(|k| t.a(k) * Complex64::from_polar(1.0, 2.0 * PI * k as f64 * idx.frac)).sum();
        let s: Complex64 = (-30..=30).map(|k| t.sigma(k) * Complex64::from_polar(1.0, 2.0 * PI * k as f64 * idx.frac)).sum();
        let c1 = (a + full_convolution(&idx, |k| t.b(k), 30, &g)) / LN3;
        let c2 = (s + full_convolution(&idx, |k| t.tau(k), 30, &g)) / LN3;
        assert!((p1 - c1).norm() <= 1e-12 * p1.norm(), "x = {x}");
        assert!((p2 - c2).norm() <= 1e-12 * p2.norm(), "x = {x}");
    }
}

#[test]
fn truncated_convolution_is_close_to_the_product() {
    let g = &profile().g;
    for eps in grid() {
        let idx = EpsilonIndex::from_epsilon(eps).unwrap();
        let (a1, _) = g_pair(&idx, table(), g, 200).unwrap();
        let (b1, _) = g_pair_by_products(&idx, table(), g, 200).unwrap();
        assert!((a1 - b1).norm() <= 5e-3 * a1.norm(), "ε = {eps}");
    }
}

#[test]
fn fourier_matches_closed_form_off_jumps() {
    assert!(validate::check_tube_vs_direct(profile(), table(), &grid(), 5e-3).passed);
    assert!(validate::check_reality(&profile().g, table(), &grid(), 1e-9).passed);
    assert!(validate::check_flattening(&profile().g, table(), &grid(), 1e-9).passed);
}

#[test]
fn closed_form_is_continuous_at_level_endpoints() {
    // the block is fully formed just above ε_k and empty just below
    let mu = mu();
    for k in 1..=4u32 {
        let e = EpsilonIndex::at_boundary(k).epsilon;
        let lo = v_direct(e * (1.0 - 1e-9), 0.0).unwrap();
        let hi = v_direct(e * (1.0 + 1e-9), mu).unwrap();
        assert!((lo - hi).abs() <= 1e-6 * lo, "k = {k}: {lo} vs {hi}");
    }
}

#[test]
fn area_is_positive_and_split_consistently() {
    for eps in grid() {
        let idx = EpsilonIndex::from_epsilon(eps).unwrap();
        let e = v_direct_eval_at(&idx, profile().h_at_frac(idx.frac), DEFAULT_COEFF_M).unwrap();
        assert!(e.v > 0.0);
        assert!((e.term_g1 + e.term_g2 - e.v).abs() <= 1e-12 * e.v);
    }
    assert!(v_direct(0.6, 0.3).is_err());
}

#[test]
fn truncation_converges() {
    let g = fourier_g(800, HMode::Approximate).unwrap();
    let t = CoefficientTable::build(400, DEFAULT_COEFF_M).unwrap();
    for x in [0.7, 1.3, 2.55] {
        let idx = EpsilonIndex::from_x(x).unwrap();
        let d = v_direct_eval_at(&idx, profile().h_at_frac(idx.frac), DEFAULT_COEFF_M).unwrap().v;
        let gap = |n| ((v_tube_at(&idx, &t, &g, n).unwrap().v - d) / d).abs();
        let (g1, g4) = (gap(100), gap(400));
        assert!(g4 < g1 && g4 < 1e-3, "x = {x}: {g1:e} {g4:e}");
    }
    assert!(v_tube_at(&EpsilonIndex::from_x(0.5).unwrap(), &t, &g, 401).is_err());
    assert!(v_tube_at(&EpsilonIndex::from_x(1.0).unwrap(), &t, &g, 10).is_err());
}

#[test]
fn earlier_estimate_has_the_right_size() {
    for k in 1..=4 {
        for f in [0.1, 0.5, 0.9] {
            let idx = EpsilonIndex::from_x(k as f64 + f).unwrap();
            let h = profile().h_at_frac(idx.frac);
            let r = v_direct(idx.epsilon, h).unwrap() / earlier_estimate(idx.epsilon).unwrap();
            assert!((0.5..=2.0).contains(&r), "x = {}: {r}", idx.x);
        }
    }
}

#[test]
fn dimension_lattice() {
    assert!(validate::check_dimensions(50).passed);
    let pp = flatten_phi_psi(table(), &profile().g).unwrap();
    let dims = complex_dimensions(3, Some(&pp));
    assert_eq!(dims.len(), 14);
    assert!(dims.iter().all(|d| d.weight.is_some()));
    let d = &dims[4];
    assert_eq!((d.n, d.line, d.re, d.im), (1, DimensionLine::Fractal, DIM, PERIOD));
    assert_relative_eq!(d.weight.unwrap(), pp.phi(1).norm());
}
