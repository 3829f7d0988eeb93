//! Monte Carlo estimate of `area{q ∈ Ω : dist(q, ∂Ω) < ε}`.
//!
//! Membership in Ω and closeness to ∂Ω are both decided on the fractal itself
//! through the IFS, so the only bias is the mass of samples the recursion could
//! not settle within its depth budget; that mass is reported as `bias_bound`.

use super::ifs::{in_triangle, region_contains, within_image, Similarity};
use crate::{Error, Result, EPS_MAX, SQRT3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Sampling box `[0, 1] × [-√3/6, √3/2]`, which contains the snowflake.
pub const ORACLE_BBOX: [f64; 4] = [0.0, 1.0, -SQRT3 / 6.0, SQRT3 / 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleEstimate {
    pub epsilon: f64,
    pub area_mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    pub bias_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub samples: u64,
    pub seed: u64,
    pub partitions: u64,
    /// Branches finer than this are left undecided.
    pub resolution: f64,
    pub membership_depth: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            samples: 1_000_000,
            seed: 7,
            partitions: 64,
            resolution: 1e-12,
            membership_depth: 80,
        }
    }
}

/// Sides of the base triangle in counterclockwise order.
pub fn snowflake_sides() -> [(Complex64, Complex64); 3] {
    let a = Complex64::new(0.0, 0.0);
    let b = Complex64::new(1.0, 0.0);
    let c = Complex64::new(0.5, SQRT3 / 2.0);
    [(a, b), (b, c), (c, a)]
}

/// Similarity carrying K onto the outward side from `a` to `b`.
fn side_map(a: Complex64, b: Complex64) -> Similarity {
    Similarity {
        a: b - a,
        b: a,
        flip: true,
    }
}

/// Exact membership in the snowflake domain; `None` when undecided at depth.
pub fn snowflake_contains(q: Complex64, depth: usize) -> Option<bool> {
    let [(a, b), (_, c), _] = snowflake_sides();
    if in_triangle(q, &[a, b, c]) {
        return Some(true);
    }
    let mut undecided = false;
    for (a, b) in snowflake_sides() {
        let z = ((q - a) / (b - a)).conj();
        match region_contains(z, depth) {
            Some(true) => return Some(true),
            Some(false) => {}
            None => undecided = true,
        }
    }
    if undecided {
        None
    } else {
        Some(false)
    }
}

enum Sample {
    Hit,
    Miss,
    Undecided,
}

fn classify(q: Complex64, eps: f64, sides: &[Similarity; 3], cfg: &OracleConfig) -> Sample {
    let mut undecided = false;
    let mut near = false;
    for s in sides {
        match within_image(s, q, eps, cfg.resolution) {
            Some(true) => {
                near = true;
                break;
            }
            Some(false) => {}
            None => undecided = true,
        }
    }
    if !near {
        return if undecided { Sample::Undecided } else { Sample::Miss };
    }
    match snowflake_contains(q, cfg.membership_depth) {
        Some(true) => Sample::Hit,
        Some(false) => Sample::Miss,
        None => Sample::Undecided,
    }
}

/// Oracle with the default partitioning and resolution.
pub fn oracle_inner_area(epsilon: f64, samples: u64, seed: u64) -> Result<OracleEstimate> {
    oracle_with(
        epsilon,
        &OracleConfig {
            samples,
            seed,
            ..OracleConfig::default()
        },
    )
}

pub fn oracle_with(epsilon: f64, cfg: &OracleConfig) -> Result<OracleEstimate> {
    if !(epsilon > 0.0 && epsilon <= EPS_MAX * (1.0 + 1e-15)) {
        return Err(Error::Domain(format!("ε = {epsilon} outside (0, 3^(-1/2)]")));
    }
    if cfg.samples < 1 || cfg.partitions < 1 {
        return Err(Error::Config("need at least one sample and one partition".into()));
    }
    let sides = snowflake_sides().map(|(a, b)| side_map(a, b));
    let [x0, x1, y0, y1] = ORACLE_BBOX;
    let parts = cfg.partitions;
    let counts: Vec<(u64, u64)> = (0..parts)
        .into_par_iter()
        .map(|k| {
            let n = cfg.samples / parts + u64::from(k < cfg.samples % parts);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(k);
            let (mut hits, mut undecided) = (0u64, 0u64);
            for _ in 0..n {
                let q = Complex64::new(rng.gen_range(x0..x1), rng.gen_range(y0..y1));
                match classify(q, epsilon, &sides, cfg) {
                    Sample::Hit => hits += 1,
                    Sample::Miss => {}
                    Sample::Undecided => undecided += 1,
                }
            }
            (hits, undecided)
        })
        .collect();
    let (hits, undecided) = counts
        .iter()
        .fold((0u64, 0u64), |(h, u), (a, b)| (h + a, u + b));
    let box_area = (x1 - x0) * (y1 - y0);
    let n = cfg.samples as f64;
    let frac = hits as f64 / n;
    Ok(OracleEstimate {
        epsilon,
        area_mean: box_area * frac,
        std_error: box_area * (frac * (1.0 - frac) / n).sqrt(),
        samples: cfg.samples,
        seed: cfg.seed,
        bias_bound: box_area * undecided as f64 / n,
    })
}
