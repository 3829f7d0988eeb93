//! The preliminary area `Ṽ(ε)`: rectangles plus wedges minus overlap
//! triangles plus the fringe under each small copy of the curve.
//!
//! `Ṽ` over-counts the true neighbourhood by the error blocks handled in
//! [`crate::errorblock`].

use crate::scaling::{piece_areas, piece_counts, EpsilonIndex};
use crate::{Error, Result, DIM, LN3, PERIOD, SQRT3};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `Ṽ(ε)` with its four contributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrelimArea {
    pub epsilon: f64,
    pub value: f64,
    pub rect: f64,
    pub wedge: f64,
    pub triangle: f64,
    pub fringe: f64,
}

/// Coefficient of the ε² term of `Ṽ`, i.e. `Ṽ = (...) ε^(2-D) - PRELIM_EPS2 ε²`.
pub const PRELIM_EPS2: f64 = (PI / 3.0 + 2.0 * SQRT3) / 3.0;

/// Closed form of `Ṽ(ε)`.
pub fn pre_v(epsilon: f64) -> Result<PrelimArea> {
    Ok(pre_v_at(&EpsilonIndex::from_epsilon(epsilon)?))
}

pub fn pre_v_at(idx: &EpsilonIndex) -> PrelimArea {
    let e = idx.epsilon;
    let f = idx.frac;
    let lead = e.powf(2.0 - DIM) * 4f64.powf(-f);
    let e2 = e * e;
    let rect = lead * SQRT3 / 2.0 * 3f64.powf(f);
    let wedge = lead * PI / 18.0 - e2 * PI / 9.0;
    let triangle = lead * SQRT3 / 6.0 + e2 * 2.0 * SQRT3 / 3.0;
    let fringe = lead * 3.0 * SQRT3 / 40.0 * 9f64.powf(f);
    let value = lead
        * (3.0 * SQRT3 / 40.0 * 9f64.powf(f) + SQRT3 / 2.0 * 3f64.powf(f) + (PI / 3.0 - SQRT3) / 6.0)
        - e2 * PRELIM_EPS2;
    PrelimArea {
        epsilon: e,
        value,
        rect,
        wedge,
        triangle,
        fringe,
    }
}

/// `Ṽ` recomputed as counts times single-piece areas.
pub fn pre_v_by_pieces(epsilon: f64) -> Result<f64> {
    let idx = EpsilonIndex::from_epsilon(epsilon)?;
    let c = piece_counts(idx.n as i64)?;
    let a = piece_areas(&idx);
    Ok(c.rectangles as f64 * a.rect + c.wedges as f64 * a.wedge
        - c.triangles as f64 * a.triangle
        + c.fringe_components as f64 * a.fringe)
}

/// Symmetric partial sum `|n| ≤ N` of the Fourier series of `a^-{x}`.
///
/// At integer x the sum tends to the jump midpoint `(1 + 1/a)/2`.
pub fn fourier_pow(a: f64, x: f64, n_max: u32) -> Result<f64> {
    if !(a > 0.0) || a == 1.0 || !a.is_finite() {
        return Err(Error::Domain(format!("base must be positive and ≠ 1, got {a}")));
    }
    if n_max < 1 {
        return Err(Error::Config("need at least one harmonic".into()));
    }
    let la = a.ln();
    let t = x - x.floor();
    let mut s = 1.0 / la;
    for n in 1..=n_max {
        let w = 2.0 * PI * n as f64;
        let z = Complex64::from_polar(1.0, w * t) / Complex64::new(la, w);
        s += 2.0 * z.re;
    }
    Ok((a - 1.0) / a * s)
}

/// The n-th coefficient of the three-pole expansion of `Ṽ ε^-(2-D)`,
/// before the overall factor `1/(3 log 3)`.
pub fn prelim_coefficient(n: i64) -> Complex64 {
    let s = Complex64::new(DIM, n as f64 * PERIOD);
    let r3 = 3f64.sqrt();
    -(9.0 * r3) / (32.0 * (s - 2.0)) + (3.0 * r3) / (8.0 * (s - 1.0)) + (PI - 3.0 * r3) / (8.0 * s)
}

/// Complex partial sum of the Fourier form of `Ṽ`; the imaginary part is the
/// pairing residue.
pub fn pre_v_fourier_complex(epsilon: f64, n_max: u32) -> Result<Complex64> {
    let idx = EpsilonIndex::from_epsilon(epsilon)?;
    if idx.frac == 0.0 {
        return Err(Error::JumpPoint(epsilon));
    }
    let mut s = prelim_coefficient(0);
    for n in 1..=n_max as i64 {
        // (-1)^n ε^(-inp) = e^(2πinx)
        let ph = Complex64::from_polar(1.0, 2.0 * PI * n as f64 * idx.frac);
        s += prelim_coefficient(n) * ph + prelim_coefficient(-n) * ph.conj();
    }
    let e = idx.epsilon;
    Ok(s * e.powf(2.0 - DIM) / (3.0 * LN3) - e * e * PRELIM_EPS2)
}

/// Real Fourier approximation of `Ṽ(ε)`.
pub fn pre_v_fourier(epsilon: f64, n_max: u32) -> Result<f64> {
    pre_v_fourier_complex(epsilon, n_max).map(|z| z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_largest_epsilon() {
        let e = crate::EPS_MAX;
        let want = e.powf(2.0 - DIM) * (3.0 * SQRT3 / 40.0 + SQRT3 / 2.0 + PI / 18.0 - SQRT3 / 6.0)
            - (PI / 3.0 + 2.0 * SQRT3) / 9.0;
        let v = pre_v(e).unwrap();
        assert!((v.value - want).abs() < 1e-15);
        assert!(v.value > 0.0);
    }

    #[test]
    fn parts_add_up() {
        for i in 0..200 {
            let x = 0.013 + i as f64 * 0.031;
            let v = pre_v_at(&EpsilonIndex::from_x(x).unwrap());
            let s = v.rect + v.wedge - v.triangle + v.fringe;
            assert!((s - v.value).abs() <= 1e-12 * v.value, "x = {x}");
        }
    }

    #[test]
    fn pow_series_examples() {
        assert!((fourier_pow(4.0, 0.5, 2000).unwrap() - 0.5).abs() < 5e-3);
        assert!((fourier_pow(9.0, 0.25, 500).unwrap() - 9f64.powf(-0.25)).abs() < 1e-2);
        assert!((fourier_pow(4.0, 2.0, 20000).unwrap() - 0.625).abs() < 1e-4);
        assert!(fourier_pow(1.0, 0.5, 10).is_err());
        assert!(fourier_pow(-2.0, 0.5, 10).is_err());
    }

    #[test]
    fn fourier_rejects_jumps() {
        assert!(matches!(pre_v_fourier(crate::EPS_MAX, 10), Err(Error::JumpPoint(_))));
    }
}
