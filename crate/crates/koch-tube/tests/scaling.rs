use approx::assert_relative_eq;
use koch_tube::scaling::{index_of, piece_areas, piece_counts, power_identities, EpsilonIndex};
use koch_tube::{Error, EPS_MAX};
use proptest::prelude::*;
use std::f64::consts::PI;

#[test]
fn index_examples() {
    let i = index_of(EPS_MAX).unwrap();
    assert_eq!((i.x, i.n, i.frac), (0.0, 0, 0.0));
    let i = index_of(3f64.powf(-2.5)).unwrap();
    assert_eq!((i.x, i.n, i.frac), (2.0, 2, 0.0));
    let i = index_of(3f64.powf(-1.75)).unwrap();
    assert_eq!(i.n, 1);
    assert_relative_eq!(i.frac, 0.25, epsilon = 1e-12);
}

#[test]
fn boundaries_are_exact() {
    for k in 0..12 {
        let b = EpsilonIndex::at_boundary(k);
        let i = index_of(b.epsilon).unwrap();
        assert_eq!((i.n, i.frac), (k, 0.0), "k = {k}");
    }
}

#[test]
fn rejects_large_and_bad_epsilon() {
    assert!(matches!(index_of(0.6), Err(Error::Domain(_))));
    assert!(index_of(0.0).is_err());
    assert!(index_of(f64::NAN).is_err());
}

#[test]
fn counts() {
    let c = piece_counts(0).unwrap();
    assert_eq!((c.rectangles, c.wedges, c.triangles, c.fringe_components), (1, 0, 2, 1));
    let c = piece_counts(2).unwrap();
    assert_eq!((c.rectangles, c.wedges, c.triangles, c.fringe_components), (16, 10, 12, 16));
    for n in 1..=10 {
        let (a, b) = (piece_counts(n - 1).unwrap(), piece_counts(n).unwrap());
        assert_eq!(b.wedges, 4 * a.wedges + 2);
        assert_eq!(3 * (b.rectangles - b.triangles), (1 << (2 * n)) - 4);
    }
    assert!(matches!(piece_counts(-1), Err(Error::Domain(_))));
    assert!(matches!(piece_counts(32), Err(Error::Bounds(_))));
}

#[test]
fn single_piece_areas() {
    let a = piece_areas(&index_of(EPS_MAX).unwrap());
    assert_relative_eq!(a.rect, EPS_MAX, max_relative = 1e-15);
    assert_relative_eq!(a.wedge / a.triangle, PI / (3.0 * 3f64.sqrt()), max_relative = 1e-14);
    let a = piece_areas(&index_of(3f64.powf(-1.8)).unwrap());
    assert_relative_eq!(a.fringe, 3f64.sqrt() / 180.0, max_relative = 1e-14);
}

#[test]
fn power_identities_at_integers() {
    let p = power_identities(&index_of(EPS_MAX).unwrap()).unwrap();
    for v in [p.four_x, p.nine_neg_x, p.fourthirds_x, p.fourninths_x] {
        assert_relative_eq!(v, 1.0, max_relative = 1e-14);
    }
    let p = power_identities(&index_of(3f64.powf(-1.5)).unwrap()).unwrap();
    assert_relative_eq!(p.four_x, 4.0, max_relative = 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn epsilon_lies_in_its_interval(u in 1e-6f64..1.0) {
        let eps = EPS_MAX * u;
        let i = index_of(eps).unwrap();
        let (lo, hi) = i.interval();
        prop_assert!(eps > lo && eps <= hi * (1.0 + 1e-15), "{eps} not in ({lo}, {hi}]");
        prop_assert!((0.0..1.0).contains(&i.frac));
    }

    #[test]
    fn fractional_part_is_log_periodic(u in 1e-4f64..1.0) {
        let eps = EPS_MAX * u;
        let (a, b) = (index_of(eps).unwrap(), index_of(eps / 3.0).unwrap());
        let d = (a.frac - b.frac).abs();
        prop_assert!(d < 1e-12 || (1.0 - d) < 1e-12);
    }

    #[test]
    fn power_identities_hold(x in 0.0f64..3.0) {
        prop_assert!(power_identities(&EpsilonIndex::from_x(x).unwrap()).is_ok());
    }
}
