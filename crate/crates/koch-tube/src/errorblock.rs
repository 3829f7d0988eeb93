//! Error blocks: the crest regions that `Ṽ` counts but the true neighbourhood
//! does not contain.
//!
//! Over a rectangle of width `w = 3^-n` the ε-discs centred on the Cantor set
//! of the segment leave crest-shaped gaps. The k-th generation of gaps has
//! `2^(k-1)` members, each of area `A_k = ε² F(X_k)` with
//! `X_k = 3^({x}-k+1/2)` and
//!
//! ```text
//! F(X) = X - asin(X/2) - (X/2) sqrt(1 - X²/4).
//! ```

use crate::scaling::EpsilonIndex;
use crate::{Error, Result, DIM, SQRT3};

/// Default depth of the direct crest sum.
pub const DEFAULT_K: usize = 60;

/// Default depth of the rearranged power series. Its terms shrink by a
/// factor approaching `3^(2{x}-1)/4`, which is 3/4 as `{x} → 1`.
pub const DEFAULT_M: usize = 150;

const TAYLOR_CUTOFF: f64 = 1.0;

/// Crest profile `F(X)` for `0 ≤ X ≤ 2`.
///
/// Uses the power series `Σ c_m X^(2m+1)` below `X = 1` to avoid cancellation.
pub fn crest_profile(x: f64) -> f64 {
    if x <= TAYLOR_CUTOFF {
        let x2 = x * x;
        let mut c = 1.0 / 24.0;
        let mut p = x * x2;
        let mut s = 0.0;
        let mut m = 1.0;
        loop {
            let t = c * p;
            s += t;
            if t <= 1e-18 * s || m > 200.0 {
                return s;
            }
            c *= 2.0 * (2.0 * m - 1.0) / (m + 1.0) * (2.0 * m + 1.0) / (16.0 * (2.0 * m + 3.0));
            p *= x2;
            m += 1.0;
        }
    }
    let y = (x / 2.0).min(1.0);
    x - y.asin() - y * (1.0 - y * y).max(0.0).sqrt()
}

/// Coefficient `c_m = Cat(m-1) / (2^(4m-1) (2m+1))` of the crest series.
pub fn crest_coefficient(m: usize) -> f64 {
    assert!(m >= 1);
    let mut c = 1.0 / 24.0;
    for j in 1..m {
        let j = j as f64;
        c *= 2.0 * (2.0 * j - 1.0) / (j + 1.0) * (2.0 * j + 1.0) / (16.0 * (2.0 * j + 3.0));
    }
    c
}

/// Width of the rectangles and the crest parameters `X_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockGeometry {
    pub epsilon: f64,
    pub w: f64,
    pub x_k: Vec<f64>,
}

impl BlockGeometry {
    pub fn new(idx: &EpsilonIndex, depth: usize) -> Self {
        let w = 3f64.powi(-(idx.n as i32));
        let x_k = (1..=depth)
            .map(|k| 3f64.powf(idx.frac - k as f64 + 0.5))
            .collect();
        Self {
            epsilon: idx.epsilon,
            w,
            x_k,
        }
    }
}

/// Literal area of a k-th generation crest for gap width `w/3^k`.
pub fn trianglet_area_with_width(k: u32, epsilon: f64, w: f64) -> f64 {
    let g = w / 3f64.powi(k as i32);
    let y = (g / (2.0 * epsilon)).min(1.0);
    let a = epsilon * g - epsilon * epsilon * y.asin() - epsilon * (g / 2.0) * (1.0 - y * y).max(0.0).sqrt();
    a.max(0.0)
}

/// Area `A_k(ε)` of one crest of generation k ≥ 1.
pub fn trianglet_area(k: u32, epsilon: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("crest generation starts at k = 1".into()));
    }
    let idx = EpsilonIndex::from_epsilon(epsilon)?;
    Ok(trianglet_area_with_width(k, epsilon, 3f64.powi(-(idx.n as i32))))
}

/// A truncated positive series and a bound on what was left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// `B(ε) = ε² Σ_k 2^(k-1) F(X_k)`, summed through `k = K`.
///
/// Since F has only odd powers from the cube on, `F(X/3) ≤ F(X)/27` and the
/// terms shrink by at least 2/27, giving the tail bound.
pub fn b_direct(epsilon: f64, depth: usize) -> Result<SeriesSum> {
    let idx = EpsilonIndex::from_epsilon(epsilon)?;
    Ok(b_direct_at(&idx, depth))
}

pub fn b_direct_at(idx: &EpsilonIndex, depth: usize) -> SeriesSum {
    let depth = depth.max(1);
    let e2 = idx.epsilon * idx.epsilon;
    let mut s = 0.0;
    let mut weight = 1.0;
    let mut x = 3f64.powf(idx.frac - 0.5);
    for _ in 0..depth {
        s += weight * crest_profile(x);
        weight *= 2.0;
        x /= 3.0;
    }
    let next = weight * crest_profile(x);
    SeriesSum {
        value: e2 * s,
        tail_bound: e2 * next / (1.0 - 2.0 / 27.0),
        terms: depth,
    }
}

/// `Σ_k 2^(k-1) A_k(ε)` from the literal crest areas.
pub fn b_by_trianglets(epsilon: f64, depth: usize) -> Result<f64> {
    let idx = EpsilonIndex::from_epsilon(epsilon)?;
    let w = 3f64.powi(-(idx.n as i32));
    Ok((1..=depth as u32)
        .map(|k| 2f64.powi(k as i32 - 1) * trianglet_area_with_width(k, epsilon, w))
        .sum())
}

/// The same area with the k-sum done first:
///
/// ```text
/// B = ε² Σ_m Cat(m-1) 3^((2m+1)/2) 3^((2m+1){x}) / (2^(4m-1) (2m+1) (3^(2m+1) - 2)).
/// ```
pub fn b_series(epsilon: f64, terms: usize) -> Result<SeriesSum> {
    let idx = EpsilonIndex::from_epsilon(epsilon)?;
    Ok(b_series_at(&idx, terms))
}

pub fn b_series_at(idx: &EpsilonIndex, terms: usize) -> SeriesSum {
    let terms = terms.max(1);
    let x1 = 3f64.powf(idx.frac - 0.5);
    let x1sq = x1 * x1;
    let mut c = 1.0 / 24.0;
    let mut p = x1 * x1sq;
    let mut pow3 = 27.0;
    let mut s = 0.0;
    let mut next = 0.0;
    for m in 1..=terms + 1 {
        // c_m X1^(2m+1) 3^(2m+1) / (3^(2m+1) - 2)
        let t = c * p / (1.0 - 2.0 / pow3);
        if m > terms {
            next = t;
            break;
        }
        s += t;
        let mf = m as f64;
        c *= 2.0 * (2.0 * mf - 1.0) / (mf + 1.0) * (2.0 * mf + 1.0) / (16.0 * (2.0 * mf + 3.0));
        p *= x1sq;
        pow3 *= 9.0;
    }
    let ratio = x1sq / 4.0;
    let e2 = idx.epsilon * idx.epsilon;
    SeriesSum {
        value: e2 * s,
        tail_bound: e2 * next / (1.0 - ratio),
        terms,
    }
}

/// Complete blocks `c = (q-4)/3` and partial blocks `p = 2(q+2)/3`, `q = 4^n`.
pub fn block_counts(epsilon: f64) -> Result<(f64, f64)> {
    let idx = EpsilonIndex::from_epsilon(epsilon)?;
    Ok(block_counts_at(&idx))
}

pub fn block_counts_at(idx: &EpsilonIndex) -> (f64, f64) {
    let q = 4f64.powi(idx.n as i32);
    ((q - 4.0) / 3.0, 2.0 * (q + 2.0) / 3.0)
}

/// The same counts written through ε: `q = (ε^-D / 2) 4^-{x}`.
pub fn block_counts_continuous(idx: &EpsilonIndex) -> (f64, f64) {
    let q = idx.epsilon.powf(-DIM) / 2.0 * 4f64.powf(-idx.frac);
    ((q - 4.0) / 3.0, 2.0 * (q + 2.0) / 3.0)
}

/// Total over-count `E = B (c + p h)` and its split into an `ε^(2-D)` part and
/// an `ε²` part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorTotal {
    pub epsilon: f64,
    pub b: f64,
    pub c: f64,
    pub p: f64,
    pub h: f64,
    pub e: f64,
    /// `B (ε^-D/3) 4^-{x} (h + 1/2)`.
    pub lead_part: f64,
    /// `B (4/3) (h - 1)`.
    pub eps2_part: f64,
}

pub fn total_error(epsilon: f64, h_value: f64, terms: usize) -> Result<ErrorTotal> {
    total_error_at(&EpsilonIndex::from_epsilon(epsilon)?, h_value, terms)
}

pub fn total_error_at(idx: &EpsilonIndex, h_value: f64, terms: usize) -> Result<ErrorTotal> {
    if !(0.0..=1.0).contains(&h_value) {
        return Err(Error::Domain(format!("h must lie in [0, 1], got {h_value}")));
    }
    let b = b_series_at(idx, terms).value;
    let (c, p) = block_counts_at(idx);
    let e = b * (c + p * h_value);
    let lead_part = b * idx.epsilon.powf(-DIM) / 3.0 * 4f64.powf(-idx.frac) * (h_value + 0.5);
    let eps2_part = b * 4.0 / 3.0 * (h_value - 1.0);
    let gap = (lead_part + eps2_part - e).abs();
    if gap > 1e-10 * e.abs().max(b) {
        return Err(Error::Accuracy {
            achieved: gap,
            target: 1e-10 * e.abs().max(b),
        });
    }
    Ok(ErrorTotal {
        epsilon: idx.epsilon,
        b,
        c,
        p,
        h: h_value,
        e,
        lead_part,
        eps2_part,
    })
}

/// `w = ε√3 3^{x}`, the width identity of the block geometry.
pub fn width_identity(idx: &EpsilonIndex) -> f64 {
    idx.epsilon * SQRT3 * 3f64.powf(idx.frac)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_branches_meet() {
        let lit = |x: f64| {
            let y = x / 2.0;
            x - y.asin() - y * (1.0 - y * y).sqrt()
        };
        for x in [0.999_999, 1.0, 1.000_001] {
            assert!((crest_profile(x) - lit(x)).abs() < 1e-15);
        }
        assert!((crest_profile(1e-3) - 1e-9 / 24.0 - 1e-15 / 640.0).abs() < 1e-24);
    }

    #[test]
    fn coefficients_follow_catalan() {
        // Cat(1) / (2^7 * 5) = 1/640
        assert!((crest_coefficient(2) - 1.0 / 640.0).abs() < 1e-18);
        // Cat(2) / (2^11 * 7) = 2/14336
        assert!((crest_coefficient(3) - 2.0 / 14336.0).abs() < 1e-19);
    }

    #[test]
    fn block_counts_small_levels() {
        let (c, p) = block_counts_at(&EpsilonIndex::from_x(1.4).unwrap());
        assert_eq!((c, p), (0.0, 4.0));
        let (c, p) = block_counts_at(&EpsilonIndex::from_x(3.2).unwrap());
        assert_eq!((c, p), (20.0, 44.0));
    }

    #[test]
    fn first_series_term_at_level_start() {
        // m = 1 at {x} = 0: 3^(3/2) / 600
        let s = b_series_at(&EpsilonIndex::at_boundary(0), 1);
        let e2 = crate::EPS_MAX * crate::EPS_MAX;
        assert!((s.value / e2 - 3f64.powf(1.5) / 600.0).abs() < 1e-17);
    }

    #[test]
    fn h_outside_range_is_rejected() {
        assert!(total_error(0.1, -0.1, 10).is_err());
        assert!(total_error(0.1, 1.5, 10).is_err());
    }
}
