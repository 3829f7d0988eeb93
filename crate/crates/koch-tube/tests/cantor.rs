use approx::assert_relative_eq;
use koch_tube::cantor::*;
use koch_tube::scaling::EpsilonIndex;
use koch_tube::validate;

const MU: f64 = 0.967_463_147_435_977_5;

#[test]
fn mu_is_stable_across_levels() {
    assert_relative_eq!(mu(), MU, max_relative = 1e-13);
    for k in 1..=6 {
        assert!((mu_at(k) - MU).abs() <= 1e-9, "k = {k}");
    }
}

#[test]
fn sawtooth_values() {
    let at = |x: f64| h_tilde(EpsilonIndex::from_x(x).unwrap().epsilon).unwrap();
    assert_eq!(at(2.0), 0.0);
    assert_relative_eq!(at(1.25), 0.75 * MU, max_relative = 1e-12);
    assert_relative_eq!(at(0.9), 0.1 * MU, max_relative = 1e-10);
    assert_relative_eq!(at(3.9), at(0.9), max_relative = 1e-10);
}

#[test]
fn geometric_h_range_and_periodicity() {
    for f in [0.1, 0.45, 0.8] {
        let h = h_geometric_at_frac(f).unwrap();
        assert!((0.0..MU).contains(&h), "f = {f}: {h}");
        let e = EpsilonIndex::from_x(1.0 + f).unwrap().epsilon;
        let h3 = h_geometric(e / 9.0).unwrap();
        assert!((h - h3).abs() <= 1e-9, "f = {f}");
    }
}

#[test]
fn geometric_h_one_sided_limits() {
    // just below ε_k the block has barely started to form; just above it is nearly full
    let below = h_geometric_at_frac(1e-6).unwrap();
    let above = h_geometric_at_frac(1.0 - 1e-6).unwrap();
    assert!(below < 1e-3, "{below}");
    assert!((above - MU).abs() < 1e-3, "{above}");
}

#[test]
fn formed_area_reports_its_error() {
    let f = formed_at_frac(0.5, &FormedOptions::default()).unwrap();
    assert!(f.formed >= 0.0 && f.formed <= f.block);
    assert!(f.error <= 10.0 * 1e-9 * f.block);
    assert!(formed_area(0.1, &FormedOptions::default()).is_err());
}

#[test]
fn sawtooth_table_and_resynthesis() {
    assert!(validate::check_sawtooth_table(200, 1e-12).passed);
    let coarse = fourier_g(50, HMode::Approximate).unwrap();
    let fine = fourier_g(200, HMode::Approximate).unwrap();
    let profile = CantorProfile::build(HMode::Approximate, 64, 1).unwrap();
    let err = |g: &GTable| {
        (1..40)
            .map(|j| {
                let x = (j as f64 + 0.5) / 40.0;
                (g.synthesize(x, g.a_max).re - profile.h_at_frac(x)).abs()
            })
            .fold(0.0, f64::max)
    };
    assert!(err(&fine) < err(&coarse));
}

#[test]
fn coefficients_decay_and_are_hermitian() {
    let g = fourier_g(200, HMode::Approximate).unwrap();
    for a in 1..=200i64 {
        assert!((g.get(a) - g.get(-a).conj()).norm() <= 1e-15);
        assert!(g.get(a).norm() <= MU / (2.0 * std::f64::consts::PI * a as f64) * (1.0 + 1e-3));
    }
    assert_relative_eq!(g.get(0).re, MU / 2.0, max_relative = 1e-3);
    assert!(g.get(201).norm() == 0.0);
}

#[test]
fn parse_modes() {
    assert_eq!("geometric".parse::<HMode>().unwrap(), HMode::Geometric);
    assert_eq!("approximate".parse::<HMode>().unwrap(), HMode::Approximate);
    assert!("sawtooth".parse::<HMode>().is_err());
}
