use approx::assert_relative_eq;
use koch_tube::geometry::*;
use koch_tube::SQRT3;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn prefractal_shapes() {
    let c = build_prefractal(3).unwrap();
    assert_eq!(c.vertices.len(), 65);
    assert_relative_eq!(c.length(), (4.0f64 / 3.0).powi(3), max_relative = 1e-14);
    let c1 = build_prefractal(1).unwrap();
    assert_relative_eq!(c1.vertices[2].x, RHO.re, epsilon = 1e-15);
    assert_relative_eq!(c1.vertices[2].y, RHO.im, epsilon = 1e-15);
    assert!(build_prefractal(MAX_CURVE_LEVEL + 1).is_err());
}

#[test]
fn snowflake_polygons() {
    let s = build_snowflake(2).unwrap();
    assert_eq!(s.vertices.len(), 48);
    assert!(s.is_simple());
    let mut prev = 0.0;
    for m in 0..=6 {
        let p = build_snowflake(m).unwrap();
        assert_relative_eq!(p.area(), snowflake_area(m), max_relative = 1e-12);
        assert!(p.area() > prev);
        prev = p.area();
    }
    assert_relative_eq!(snowflake_area(60), 2.0 * SQRT3 / 5.0, max_relative = 1e-14);
    assert!(build_snowflake(MAX_SNOWFLAKE_LEVEL + 1).is_err());
}

#[test]
fn distances_to_the_curve() {
    assert!(distance_to_k(Complex64::new(0.0, 0.0), 1e-12) < 1e-12);
    assert!(distance_to_k(RHO, 1e-12) < 1e-12);
    let d = distance_to_k(Complex64::new(0.5, -1.0), 1e-12);
    assert_relative_eq!(d, 37f64.sqrt() / 6.0, max_relative = 1e-10);
}

#[test]
fn prefractal_distance_converges_to_the_curve() {
    let c = build_prefractal(8).unwrap();
    // Hausdorff distance between level 8 and the curve is 3^-8 / (2√3)
    let h = 3f64.powi(-8) / (2.0 * SQRT3);
    for &(x, y) in &[(0.3, -0.1), (0.5, 0.1), (0.9, 0.05), (0.2, 0.4), (0.62, -0.02)] {
        let a = c.distance(Point::new(x, y));
        let b = distance_to_k(Complex64::new(x, y), 1e-12);
        assert!((a - b).abs() <= h + 1e-12, "({x}, {y}): {a} vs {b}");
    }
}

#[test]
fn oracle_is_deterministic_across_pool_sizes() {
    let eps = 3f64.powf(-1.7);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| oracle_inner_area(eps, 20_000, 11).unwrap())
    };
    let a = run(1);
    assert_eq!(a, run(3));
    assert_eq!(a, oracle_inner_area(eps, 20_000, 11).unwrap());
    assert_ne!(a.area_mean, oracle_inner_area(eps, 20_000, 12).unwrap().area_mean);
    assert!(oracle_inner_area(0.7, 10, 1).is_err());
}

#[test]
fn oracle_saturates_above_the_inradius() {
    let e = oracle_inner_area(0.5, 20_000, 3).unwrap();
    assert!((e.area_mean - 2.0 * SQRT3 / 5.0).abs() <= 5.0 * e.std_error + e.bias_bound + 1e-3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_mirror_symmetric(x in -0.2f64..1.2, y in -0.6f64..0.6) {
        let a = distance_to_k(Complex64::new(x, y), 1e-12);
        let b = distance_to_k(Complex64::new(1.0 - x, y), 1e-12);
        prop_assert!((a - b).abs() <= 1e-10);
    }
}
