//! Formed part of a partial error block, measured on the peak configuration.
//!
//! Local frame, lengths in units of the segment length: the peak vertex V is
//! the origin, the segment carrying the block runs from 0 to 1, the domain
//! lies below it (`y = -d`, `d > 0`), and the second segment of the peak leaves
//! V in direction `e^(-iπ/3)`. With `t = ε / 3^-n = 3^-{x}/√3`, the crest over
//! the gap `[u1, u2]` of the Cantor set on `[0, 1]` is
//!
//! ```text
//! { (x, d) : u1 < x < u2, sqrt(t² - c(x)²) ≤ d < t },   c(x) = min(x - u1, u2 - x).
//! ```
//!
//! A crest point belongs to the over-count only if it lies inside the wedge
//! `d < √3 x` and is at distance ≥ t from the curve K2 over the second
//! segment. Points also lying in the strip of the second segment are shared
//! with the neighbouring block and count one half.

use super::super::errorblock::crest_profile;
use crate::geometry::{distance_to_image, Similarity};
use crate::quad;
use crate::{Error, Result, SQRT3};
use num_complex::Complex64;

/// Curve over the second segment of the peak, local frame.
pub const K2_LOCAL: Similarity = Similarity {
    a: Complex64::new(0.5, -0.866_025_403_784_438_6),
    b: Complex64::new(0.0, 0.0),
    flip: true,
};

/// Tolerances for [`formed_area`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormedOptions {
    /// Target error relative to the block area.
    pub rel_tol: f64,
    /// Crest generations below this share of the block are split evenly.
    pub tail: f64,
    pub max_panels: usize,
}

impl Default for FormedOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            tail: 1e-12,
            max_panels: 400,
        }
    }
}

/// Areas in the local frame (block area is `B / s²`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Formed {
    pub t: f64,
    pub formed: f64,
    pub block: f64,
    pub error: f64,
    pub distance_queries: usize,
}

impl Formed {
    pub fn fraction(&self) -> f64 {
        self.formed / self.block
    }
}

/// Sum of all crest areas inside a Cantor interval of length `len`.
fn subtree_area(t: f64, len: f64) -> f64 {
    let mut s = 0.0;
    let mut w = 1.0;
    let mut g = len / 3.0;
    loop {
        let term = w * crest_profile(g / t);
        s += term;
        if term <= 1e-18 * s {
            return t * t * s;
        }
        w *= 2.0;
        g /= 3.0;
    }
}

fn crest_area(t: f64, g: f64) -> f64 {
    t * t * crest_profile(g / t)
}

struct Ctx {
    t: f64,
    opts: FormedOptions,
    queries: usize,
    error: f64,
}

impl Ctx {
    fn dist(&mut self, q: Complex64, tol: f64) -> f64 {
        self.queries += 1;
        distance_to_image(&K2_LOCAL, q, tol)
    }

    /// Box test on `[x0, x1] × [d0, t]`: `Some(w)` when the whole box counts
    /// with weight w (0, 1/2 or 1), `None` when mixed.
    fn classify(&mut self, x0: f64, x1: f64, d0: f64) -> Option<f64> {
        let t = self.t;
        if SQRT3 * x1 <= d0 {
            return Some(0.0);
        }
        let q = Complex64::new(0.5 * (x0 + x1), -0.5 * (d0 + t));
        let r = 0.5 * (x1 - x0).hypot(t - d0);
        let tol = 1e-3 * r;
        let delta = self.dist(q, tol);
        if delta + r < t {
            return Some(0.0);
        }
        if delta - tol - r < t || SQRT3 * x0 < t {
            return None;
        }
        let off_strip = t <= SQRT3 * x0 - 2.0 * t || d0 > (2.0 - x0) / SQRT3;
        let in_strip = SQRT3 * x1 - 2.0 * t < d0 && t <= (2.0 - x1) / SQRT3;
        if off_strip {
            Some(1.0)
        } else if in_strip {
            Some(0.5)
        } else {
            None
        }
    }

    /// Length of `{d ∈ [lo, hi] : dist((x, -d), K2) ≥ t}` and the length left
    /// undecided (counted half).
    fn uncovered(&mut self, x: f64, lo: f64, hi: f64, len_tol: f64) -> (f64, f64) {
        if hi <= lo {
            return (0.0, 0.0);
        }
        let t = self.t;
        let dtol = 0.25 * len_tol;
        let mut total = 0.0;
        let mut unsure = 0.0;
        let mut stack = vec![(lo, hi)];
        while let Some((a, b)) = stack.pop() {
            let half = 0.5 * (b - a);
            let m = a + half;
            let g = self.dist(Complex64::new(x, -m), dtol) - t;
            // the distance is 1-Lipschitz in d
            let r = if g >= 0.0 { g - dtol } else { -g };
            if r >= half {
                if g >= 0.0 {
                    total += b - a;
                }
                continue;
            }
            if b - a <= len_tol {
                total += half;
                unsure += half;
                continue;
            }
            let r = r.max(0.0);
            if g >= 0.0 {
                total += 2.0 * r;
            }
            stack.push((a, m - r));
            stack.push((m + r, b));
        }
        (total, unsure)
    }

    /// Weighted formed length of the vertical line at x inside one crest,
    /// with its uncertainty.
    fn column(&mut self, x: f64, u1: f64, u2: f64, len_tol: f64) -> (f64, f64) {
        let t = self.t;
        let c = (x - u1).min(u2 - x);
        if c <= 0.0 {
            return (0.0, 0.0);
        }
        let lo = (t * t - c * c).max(0.0).sqrt();
        let hi = t.min(SQRT3 * x);
        if hi <= lo {
            return (0.0, 0.0);
        }
        // strip of the second segment: √3x - 2t < d ≤ (2 - x)/√3
        let s_lo = (SQRT3 * x - 2.0 * t).clamp(lo, hi);
        let s_hi = ((2.0 - x) / SQRT3).clamp(s_lo, hi);
        let (a, ea) = self.uncovered(x, lo, s_lo, len_tol);
        let (b, eb) = self.uncovered(x, s_lo, s_hi, len_tol);
        let (c, ec) = self.uncovered(x, s_hi, hi, len_tol);
        (a + 0.5 * b + c, ea + 0.5 * eb + ec)
    }

    fn crest(&mut self, u1: f64, u2: f64, block: f64) -> f64 {
        let t = self.t;
        let g = u2 - u1;
        let area = crest_area(t, g);
        let d0 = (t * t - 0.25 * g * g).max(0.0).sqrt();
        if let Some(w) = self.classify(u1, u2, d0) {
            return w * area;
        }
        // budget ∝ sqrt(area): summed over all crests it stays O(rel_tol · block)
        let abs_tol = 0.5 * self.opts.rel_tol * (area * block).sqrt();
        let len_tol = (0.1 * abs_tol / g).max(1e-13 * t);
        let mid = 0.5 * (u1 + u2);
        let max_panels = self.opts.max_panels;
        let mut value = 0.0;
        let mut err = 0.0;
        for (a, b) in [(u1, mid), (mid, u2)] {
            let q = quad::integrate_with_bound(|x| self.column(x, u1, u2, len_tol), a, b, 0.5 * abs_tol, max_panels);
            value += q.quad.value;
            err += q.quad.error;
        }
        self.error += err;
        value
    }

    fn visit(&mut self, a: f64, len: f64, block: f64) -> f64 {
        let t = self.t;
        let total = subtree_area(t, len);
        let d0 = (t * t - len * len / 36.0).max(0.0).sqrt();
        if let Some(w) = self.classify(a, a + len, d0) {
            return w * total;
        }
        if total <= self.opts.tail * block {
            self.error += 0.5 * total;
            return 0.5 * total;
        }
        let third = len / 3.0;
        self.crest(a + third, a + 2.0 * third, block)
            + self.visit(a, third, block)
            + self.visit(a + 2.0 * third, third, block)
    }
}

/// Formed area of the block at `t = ε / 3^-n`, for `t ∈ [1/(3√3), 1/√3]`.
pub fn formed_area(t: f64, opts: &FormedOptions) -> Result<Formed> {
    let lo = 1.0 / (3.0 * SQRT3);
    let hi = 1.0 / SQRT3;
    if !(t >= lo * (1.0 - 1e-12) && t <= hi * (1.0 + 1e-12)) {
        return Err(Error::Domain(format!("t = {t} outside [{lo}, {hi}]")));
    }
    let block = subtree_area(t, 1.0);
    let mut ctx = Ctx {
        t,
        opts: *opts,
        queries: 0,
        error: 0.0,
    };
    let formed = ctx.visit(0.0, 1.0, block);
    let target = opts.rel_tol * block;
    if ctx.error > 10.0 * target {
        return Err(Error::Accuracy {
            achieved: ctx.error / block,
            target: opts.rel_tol,
        });
    }
    Ok(Formed {
        t,
        formed,
        block,
        error: ctx.error,
        distance_queries: ctx.queries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{F1, F2, RHO};

    /// Local frame → frame of the whole curve, peak at ρ.
    fn to_curve_frame() -> Similarity {
        Similarity {
            a: Complex64::from_polar(1.0 / 3.0, 4.0 * std::f64::consts::FRAC_PI_3),
            b: RHO,
            flip: true,
        }
    }

    #[test]
    fn second_segment_curve_matches_the_ifs() {
        let phi = to_curve_frame();
        assert!((phi.apply(Complex64::new(1.0, 0.0)) - Complex64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
        let k2 = phi.inverse().compose(&F2.compose(&F1));
        assert!((k2.a - K2_LOCAL.a).norm() < 1e-14);
        assert!(k2.b.norm() < 1e-14);
        assert_eq!(k2.flip, K2_LOCAL.flip);
    }

    #[test]
    fn crest_points_stay_clear_of_the_far_neighbour() {
        // the curve beyond the reflex end of the segment never reaches a crest
        let phi = to_curve_frame();
        let k0 = phi.inverse().compose(&F1.compose(&F1));
        for t in [0.2, 0.3, 0.45, 0.57] {
            let mut gaps = Vec::new();
            let mut cells = vec![(0.0, 1.0)];
            for _ in 0..4 {
                let mut next = Vec::new();
                for &(a, l) in &cells {
                    let l3: f64 = l / 3.0;
                    gaps.push((a + l3, a + 2.0 * l3));
                    next.push((a, l3));
                    next.push((a + 2.0 * l3, l3));
                }
                cells = next;
            }
            for &(u1, u2) in &gaps {
                for i in 1..20 {
                    let x = u1 + (u2 - u1) * i as f64 / 20.0;
                    let c = (x - u1).min(u2 - x);
                    let lo = (t * t - c * c).sqrt();
                    for j in 0..5 {
                        let d = lo + (t - lo) * j as f64 / 5.0;
                        let q = Complex64::new(x, -d);
                        assert!(distance_to_image(&k0, q, 1e-9) >= t - 1e-9, "t={t} x={x} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn block_area_matches_series() {
        let t = 0.3;
        let direct: f64 = (1..60).map(|k| 2f64.powi(k - 1) * crest_area(t, 3f64.powi(-k))).sum();
        assert!((subtree_area(t, 1.0) - direct).abs() < 1e-16);
    }
}
