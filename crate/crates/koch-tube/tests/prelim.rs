use approx::assert_relative_eq;
use koch_tube::prelim::{fourier_pow, pre_v, pre_v_by_pieces, pre_v_fourier, pre_v_fourier_complex, prelim_coefficient, PRELIM_EPS2};
use koch_tube::quad::integrate;
use koch_tube::scaling::EpsilonIndex;
use koch_tube::{Error, DIM, LN3};

#[test]
fn closed_form_matches_piece_sum() {
    for n in 0..=5 {
        let eps = EpsilonIndex::from_x(n as f64 + 0.5).unwrap().epsilon;
        let a = pre_v(eps).unwrap().value;
        let b = pre_v_by_pieces(eps).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }
}

#[test]
fn parts_add_up() {
    for i in 0..1000 {
        let eps = 0.577 * (i as f64 + 0.5) / 1000.0;
        let p = pre_v(eps).unwrap();
        let s = p.rect + p.wedge - p.triangle + p.fringe;
        assert!((s - p.value).abs() <= 1e-13 * p.value.abs().max(1e-3), "ε = {eps}");
    }
}

#[test]
fn fourier_of_powers() {
    assert!((fourier_pow(4.0, 0.5, 2000).unwrap() - 0.5).abs() <= 5e-3);
    assert!((fourier_pow(9.0, 0.25, 500).unwrap() - 9f64.powf(-0.25)).abs() <= 1e-2);
    // jump midpoint at integer x
    assert!((fourier_pow(4.0, 2.0, 20000).unwrap() - 0.625).abs() < 1e-4);
    assert!(fourier_pow(1.0, 0.3, 10).is_err());
}

#[test]
fn fourier_series_converges() {
    let eps = 3f64.powf(-1.3);
    let v = pre_v(eps).unwrap().value;
    assert!((pre_v_fourier(eps, 2000).unwrap() - v).abs() <= 1e-2 * v);
    for n in [1, 17, 300] {
        assert!(pre_v_fourier_complex(0.123, n).unwrap().im.abs() <= 1e-10);
    }
    assert!(matches!(pre_v_fourier(3f64.powf(-2.5), 100), Err(Error::JumpPoint(_))));
}

#[test]
fn zeroth_coefficient_is_the_period_average() {
    // mean over one period in x of (Ṽ + ε² c) ε^-(2-D)
    let q = integrate(
        |x| {
            let e = EpsilonIndex::from_x(x).unwrap().epsilon;
            (pre_v(e).unwrap().value + e * e * PRELIM_EPS2) * e.powf(DIM - 2.0)
        },
        1e-12,
        1.0 - 1e-12,
        1e-13,
        200,
    );
    let c0 = prelim_coefficient(0).re / (3.0 * LN3);
    assert_relative_eq!(q.value, c0, max_relative = 1e-9);
}

#[test]
fn leading_part_is_log_periodic() {
    for x in [0.1, 0.5, 0.93] {
        let g = |e: f64| (pre_v(e).unwrap().value + e * e * PRELIM_EPS2) * e.powf(DIM - 2.0);
        let e = EpsilonIndex::from_x(x).unwrap().epsilon;
        assert_relative_eq!(g(e), g(e / 3.0), max_relative = 1e-12);
    }
}
