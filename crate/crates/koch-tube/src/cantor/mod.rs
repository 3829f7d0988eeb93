//! The formed fraction `h(ε)` of a partial error block, its supremum `μ`, the
//! sawtooth stand-in `h̃` and the Fourier table `g_α`.
//!
//! `h` depends on ε only through `{x}`. Its value rises from 0 just after
//! `ε` crosses below a level endpoint `3^-k/√3` towards `μ` as ε approaches the
//! next endpoint from above.

mod formed;

pub use formed::{formed_area, Formed, FormedOptions, K2_LOCAL};

use crate::errorblock::trianglet_area_with_width;
use crate::scaling::EpsilonIndex;
use crate::{Error, Result, SQRT3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Which `h` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum HMode {
    /// Measured on the peak configuration.
    #[default]
    Geometric,
    /// The sawtooth `h̃ = μ {-[x] - x}`.
    Approximate,
}

impl fmt::Display for HMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HMode::Geometric => "geometric",
            HMode::Approximate => "approximate",
        })
    }
}

impl FromStr for HMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "geometric" => Ok(HMode::Geometric),
            "approximate" => Ok(HMode::Approximate),
            _ => Err(Error::Config(format!("unknown h mode '{s}'"))),
        }
    }
}

const MU_DEPTH: u32 = 60;

/// `μ` from crest areas `A_1, A_2, ...`:
/// `(A_1 + Σ_{k≥2} 2^(k-2) A_k) / Σ_{k≥1} 2^(k-1) A_k`.
pub fn mu_from_areas(areas: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, a) in areas.iter().enumerate() {
        let w = 2f64.powi(i as i32);
        den += w * a;
        num += if i == 0 { *a } else { 0.5 * w * a };
    }
    num / den
}

/// `μ` evaluated at `ε_k = 3^-k/√3`, approached from above.
///
/// At `ε_k⁺` the rectangles still have the width `3^-(k-1)` of the level
/// above, so `X_1 = √3`: the block is at its widest and the partial block is
/// formed except for the near half of every crest beyond the first.
pub fn mu_at(k: u32) -> f64 {
    let k = k.max(1);
    let eps = 3f64.powf(-(k as f64) - 0.5);
    let w = 3f64.powi(1 - k as i32);
    let areas: Vec<f64> = (1..=MU_DEPTH)
        .map(|j| trianglet_area_with_width(j, eps, w))
        .collect();
    mu_from_areas(&areas)
}

/// The constant `μ ≈ 0.967463`.
pub fn mu() -> f64 {
    mu_at(1)
}

/// `h̃(ε) = μ {-[x] - x}`.
pub fn h_tilde(epsilon: f64) -> Result<f64> {
    Ok(h_tilde_at(&EpsilonIndex::from_epsilon(epsilon)?, mu()))
}

pub fn h_tilde_at(idx: &EpsilonIndex, mu: f64) -> f64 {
    let v = -(idx.n as f64) - idx.x;
    let fr = v - v.floor();
    if fr >= 1.0 {
        0.0
    } else {
        mu * fr
    }
}

/// `t = ε / 3^-n` as a function of `{x}`.
pub fn relative_width(frac: f64) -> f64 {
    3f64.powf(-frac) / SQRT3
}

/// Formed fraction at `{x} = frac`, with the full result.
pub fn formed_at_frac(frac: f64, opts: &FormedOptions) -> Result<Formed> {
    formed_area(relative_width(frac), opts)
}

/// Geometric `h` at ε, clamped to `[0, μ]`.
pub fn h_geometric(epsilon: f64) -> Result<f64> {
    let idx = EpsilonIndex::from_epsilon(epsilon)?;
    h_geometric_at_frac(idx.frac)
}

pub fn h_geometric_at_frac(frac: f64) -> Result<f64> {
    let f = formed_at_frac(frac, &FormedOptions::default())?;
    Ok(f.fraction().clamp(0.0, mu()))
}

/// Fourier coefficients `g_α`, `|α| ≤ a_max`, of h as a function of x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GTable {
    pub mode: HMode,
    pub mu: f64,
    pub samples_per_period: usize,
    pub a_max: usize,
    coeffs: Vec<Complex64>,
}

impl GTable {
    pub fn get(&self, alpha: i64) -> Complex64 {
        if alpha.unsigned_abs() as usize > self.a_max {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[(alpha + self.a_max as i64) as usize]
    }

    /// Symmetric partial sum `Σ_{|α| ≤ upto} g_α e^(2πiαx)`.
    pub fn synthesize(&self, x: f64, upto: usize) -> Complex64 {
        let upto = upto.min(self.a_max) as i64;
        (-upto..=upto)
            .map(|a| self.get(a) * Complex64::from_polar(1.0, 2.0 * PI * a as f64 * x))
            .sum()
    }

    /// `(α, Re g_α, Im g_α)` rows.
    pub fn rows(&self) -> Vec<(i64, f64, f64)> {
        let m = self.a_max as i64;
        (-m..=m).map(|a| (a, self.get(a).re, self.get(a).im)).collect()
    }

    /// Exact coefficients of the piecewise-linear interpolant through
    /// `values[j] = h(j/S)`, `j = 0..=S` (one-sided at both ends).
    pub fn from_samples(mode: HMode, mu: f64, values: &[f64], a_max: usize) -> Self {
        let s = values.len() - 1;
        let dx = 1.0 / s as f64;
        let mut pos = Vec::with_capacity(a_max + 1);
        let mean = values
            .windows(2)
            .map(|w| 0.5 * (w[0] + w[1]) * dx)
            .sum::<f64>();
        pos.push(Complex64::new(mean, 0.0));
        for alpha in 1..=a_max {
            let om = 2.0 * PI * alpha as f64;
            let mi = Complex64::new(0.0, -om);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..s {
                let a = j as f64 * dx;
                let b = a + dx;
                let y0 = values[j];
                let slope = (values[j + 1] - y0) / dx;
                let ea = Complex64::from_polar(1.0, -om * a);
                let eb = Complex64::from_polar(1.0, -om * b);
                // ∫ (y0 + slope (x-a)) e^(-iωx) dx over [a, b]
                let base = (eb - ea) / mi;
                let ramp = (eb * dx) / mi + (eb - ea) / (om * om);
                acc += base * y0 + ramp * slope;
            }
            pos.push(acc);
        }
        let mut coeffs = Vec::with_capacity(2 * a_max + 1);
        for a in (1..=a_max).rev() {
            coeffs.push(pos[a].conj());
        }
        coeffs.extend_from_slice(&pos);
        Self {
            mode,
            mu,
            samples_per_period: s,
            a_max,
            coeffs,
        }
    }
}

/// `g_α = μ/2` for α = 0 and `μ/(2πiα)` otherwise: the sawtooth `μ(1 - {x})`.
pub fn sawtooth_coefficient(mu: f64, alpha: i64) -> Complex64 {
    if alpha == 0 {
        Complex64::new(mu / 2.0, 0.0)
    } else {
        Complex64::new(0.0, -mu / (2.0 * PI * alpha as f64))
    }
}

/// Default samples per period for the geometric profile.
pub const DEFAULT_SAMPLES: usize = 96;

/// h sampled over one period and its Fourier table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CantorProfile {
    pub mu: f64,
    pub mode: HMode,
    pub samples_per_period: usize,
    /// `h(j/S)` for `j = 0..=S`; the last entry is the limit `{x} → 1`.
    pub samples: Vec<f64>,
    pub g: GTable,
}

impl CantorProfile {
    pub fn build(mode: HMode, samples_per_period: usize, a_max: usize) -> Result<Self> {
        use rayon::prelude::*;
        if samples_per_period < 1 || a_max < 1 {
            return Err(Error::Config("need at least one sample and one harmonic".into()));
        }
        let mu = mu();
        let s = samples_per_period;
        let samples: Vec<f64> = match mode {
            HMode::Approximate => (0..=s)
                .map(|j| if j == 0 { mu } else { mu * (1.0 - j as f64 / s as f64) })
                .collect(),
            HMode::Geometric => (0..=s)
                .into_par_iter()
                .map(|j| h_geometric_at_frac(j as f64 / s as f64))
                .collect::<Result<Vec<_>>>()?,
        };
        let g = GTable::from_samples(mode, mu, &samples, a_max);
        Ok(Self {
            mu,
            mode,
            samples_per_period: s,
            samples,
            g,
        })
    }

    /// h at `{x} = frac` from the sampled profile; at `frac = 0` the
    /// right-continuous value.
    pub fn h_at_frac(&self, frac: f64) -> f64 {
        match self.mode {
            HMode::Approximate => {
                if frac == 0.0 {
                    0.0
                } else {
                    self.mu * (1.0 - frac)
                }
            }
            HMode::Geometric => {
                let s = self.samples_per_period as f64;
                let u = (frac * s).clamp(0.0, s);
                let j = (u.floor() as usize).min(self.samples_per_period - 1);
                let w = u - j as f64;
                self.samples[j] * (1.0 - w) + self.samples[j + 1] * w
            }
        }
    }

    pub fn h(&self, epsilon: f64) -> Result<f64> {
        Ok(self.h_at_frac(EpsilonIndex::from_epsilon(epsilon)?.frac))
    }
}

/// Fourier table of h at the default resolution.
pub fn fourier_g(a_max: usize, mode: HMode) -> Result<GTable> {
    let s = match mode {
        HMode::Geometric => DEFAULT_SAMPLES,
        HMode::Approximate => 64,
    };
    Ok(CantorProfile::build(mode, s, a_max)?.g)
}
