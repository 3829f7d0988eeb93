//! ε ↔ x bookkeeping and the piece counts of the preliminary decomposition.
//!
//! Everything is indexed by `x = -log3(ε√3)`, so that ε lies in the level
//! interval `I_n = (3^-(n+1)/√3, 3^-n/√3]` exactly when `n = floor(x)`.

use crate::{Error, Result, DIM, EPS_MAX, LN3, SQRT3};
use std::f64::consts::PI;

/// The triple `(x, n, {x})` attached to an admissible ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonIndex {
    pub epsilon: f64,
    pub x: f64,
    pub n: u32,
    pub frac: f64,
}

// x values this close to an integer are treated as the interval endpoint.
const SNAP: f64 = 64.0 * f64::EPSILON;

impl EpsilonIndex {
    /// Index of ε, snapping to the endpoint when ε is a rounded `3^-k/√3`.
    pub fn from_epsilon(epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::Domain(format!("ε must be positive, got {epsilon}")));
        }
        let mut x = -epsilon.ln() / LN3 - 0.5;
        let r = x.round();
        if (x - r).abs() <= SNAP * r.abs().max(1.0) {
            x = r;
        }
        if x < 0.0 {
            return Err(Error::Domain(format!(
                "ε = {epsilon} exceeds 3^(-1/2) = {EPS_MAX}"
            )));
        }
        Ok(Self::split(epsilon, x))
    }

    /// Index for a given `x ≥ 0`; ε is recomputed from x.
    pub fn from_x(x: f64) -> Result<Self> {
        if !(x.is_finite() && x >= 0.0) {
            return Err(Error::Domain(format!("x must be ≥ 0, got {x}")));
        }
        Ok(Self::split(3f64.powf(-x) / SQRT3, x))
    }

    /// The endpoint `ε = 3^-k/√3`, with `x = k` and `{x} = 0` exactly.
    pub fn at_boundary(k: u32) -> Self {
        Self {
            epsilon: 3f64.powi(-(k as i32)) / SQRT3,
            x: k as f64,
            n: k,
            frac: 0.0,
        }
    }

    fn split(epsilon: f64, x: f64) -> Self {
        let fl = x.floor();
        let mut frac = x - fl;
        if frac >= 1.0 {
            frac = 0.0;
        }
        Self {
            epsilon,
            x,
            n: fl as u32,
            frac,
        }
    }

    /// Bounds of the level interval `I_n` containing ε.
    pub fn interval(&self) -> (f64, f64) {
        let hi = 3f64.powi(-(self.n as i32)) / SQRT3;
        (hi / 3.0, hi)
    }
}

/// Shorthand for [`EpsilonIndex::from_epsilon`].
pub fn index_of(epsilon: f64) -> Result<EpsilonIndex> {
    EpsilonIndex::from_epsilon(epsilon)
}

/// Number of each kind of piece at level n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PieceCounts {
    pub rectangles: u64,
    pub wedges: u64,
    pub triangles: u64,
    pub fringe_components: u64,
}

/// Largest level whose counts fit in a `u64`.
pub const MAX_COUNT_LEVEL: i64 = 31;

/// Piece counts `r_n = 4^n`, `w_n = 2(4^n-1)/3`, `u_n = 2(4^n+2)/3`.
pub fn piece_counts(n: i64) -> Result<PieceCounts> {
    if n < 0 {
        return Err(Error::Domain(format!("level must be ≥ 0, got {n}")));
    }
    if n > MAX_COUNT_LEVEL {
        return Err(Error::Bounds(format!(
            "level {n} overflows 64-bit counts (max {MAX_COUNT_LEVEL})"
        )));
    }
    let four_n = 1u64 << (2 * n);
    Ok(PieceCounts {
        rectangles: four_n,
        wedges: 2 * (four_n - 1) / 3,
        triangles: 2 * (four_n + 2) / 3,
        fringe_components: four_n,
    })
}

/// Area of a single piece of each kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PieceAreas {
    pub rect: f64,
    pub wedge: f64,
    pub triangle: f64,
    pub fringe: f64,
}

pub fn piece_areas(idx: &EpsilonIndex) -> PieceAreas {
    let e = idx.epsilon;
    let third_n = 3f64.powi(-(idx.n as i32));
    PieceAreas {
        rect: e * third_n,
        wedge: PI * e * e / 6.0,
        triangle: e * e * SQRT3 / 2.0,
        fringe: SQRT3 / 20.0 * third_n * third_n,
    }
}

/// `4^x`, `9^-x`, `(4/3)^x`, `(4/9)^x` written as powers of ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIdentities {
    pub four_x: f64,
    pub nine_neg_x: f64,
    pub fourthirds_x: f64,
    pub fourninths_x: f64,
}

/// The ε-power forms, checked against the direct powers of x to 1e-12.
pub fn power_identities(idx: &EpsilonIndex) -> Result<PowerIdentities> {
    let e = idx.epsilon;
    let out = PowerIdentities {
        four_x: e.powf(-DIM) / 2.0,
        nine_neg_x: 3.0 * e * e,
        fourthirds_x: SQRT3 / 2.0 * e.powf(1.0 - DIM),
        fourninths_x: 1.5 * e.powf(2.0 - DIM),
    };
    let x = idx.x;
    let direct = [
        4f64.powf(x),
        9f64.powf(-x),
        (4.0f64 / 3.0).powf(x),
        (4.0f64 / 9.0).powf(x),
    ];
    let forms = [
        out.four_x,
        out.nine_neg_x,
        out.fourthirds_x,
        out.fourninths_x,
    ];
    let worst = forms
        .iter()
        .zip(direct)
        .map(|(a, b)| ((a - b) / b).abs())
        .fold(0.0, f64::max);
    if worst > 1e-12 {
        return Err(Error::Accuracy {
            achieved: worst,
            target: 1e-12,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_values_are_exact() {
        let i = index_of(EPS_MAX).unwrap();
        assert_eq!((i.x, i.n, i.frac), (0.0, 0, 0.0));
        let i = index_of(3f64.powf(-2.5)).unwrap();
        assert_eq!((i.x, i.n, i.frac), (2.0, 2, 0.0));
        let i = index_of(3f64.powf(-1.75)).unwrap();
        assert_eq!(i.n, 1);
        assert!((i.frac - 0.25).abs() < 1e-14);
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(index_of(0.0).is_err());
        assert!(index_of(-1.0).is_err());
        assert!(index_of(0.6).is_err());
        assert!(index_of(f64::NAN).is_err());
        assert!(piece_counts(-1).is_err());
        assert!(piece_counts(32).is_err());
    }

    #[test]
    fn counts_at_small_levels() {
        let c = piece_counts(0).unwrap();
        assert_eq!((c.rectangles, c.wedges, c.triangles, c.fringe_components), (1, 0, 2, 1));
        let c = piece_counts(2).unwrap();
        assert_eq!((c.rectangles, c.wedges, c.triangles, c.fringe_components), (16, 10, 12, 16));
    }

    #[test]
    fn single_piece_areas() {
        let a = piece_areas(&EpsilonIndex::at_boundary(0));
        assert!((a.rect - EPS_MAX).abs() < 1e-15);
        assert!((a.wedge / a.triangle - PI / (3.0 * SQRT3)).abs() < 1e-14);
        let a = piece_areas(&EpsilonIndex::from_x(1.3).unwrap());
        assert!((a.fringe - SQRT3 / 180.0).abs() < 1e-16);
    }

    #[test]
    fn powers_at_integers() {
        let p = power_identities(&EpsilonIndex::at_boundary(0)).unwrap();
        for v in [p.four_x, p.nine_neg_x, p.fourthirds_x, p.fourninths_x] {
            assert!((v - 1.0).abs() < 1e-14);
        }
        let p = power_identities(&EpsilonIndex::at_boundary(1)).unwrap();
        assert!((p.four_x - 4.0).abs() < 1e-13);
    }
}
