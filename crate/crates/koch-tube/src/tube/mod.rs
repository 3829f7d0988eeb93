//! The tube formula `V(ε) = G1(ε) ε^(2-D) + G2(ε) ε²`, evaluated either from
//! closed forms (`v_direct`) or from its Fourier coefficients (`v_tube`).

mod coeffs;

pub use coeffs::{
    coeff_a, coeff_b, coeff_b_catalan, coeff_sigma, coeff_tau, coeff_tau_catalan,
    CoefficientRow, CoefficientTable, DEFAULT_COEFF_M, MAX_COEFF_M, SIGMA_CONST,
};

use crate::cantor::GTable;
use crate::errorblock::total_error_at;
use crate::prelim::{pre_v_at, PRELIM_EPS2};
use crate::scaling::EpsilonIndex;
use crate::{Error, Result, DIM, LN3, PERIOD, SQRT3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default outer truncation of `G1`, `G2`.
pub const DEFAULT_N: usize = 200;
/// Default range of the `g_α` table.
pub const DEFAULT_A_MAX: usize = 400;

/// Truncations used for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub n: usize,
    pub m: usize,
    pub a_max: usize,
}

/// `V` with its two terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeEvaluation {
    pub epsilon: f64,
    pub v: f64,
    /// `G1 ε^(2-D)`.
    pub term_g1: f64,
    /// `G2 ε²`.
    pub term_g2: f64,
    pub truncation: Truncation,
    /// Largest imaginary part met among `G1`, `G2`, `V`.
    pub imag_residue: f64,
}

fn check_tables(table: &CoefficientTable, g: &GTable, n: usize) -> Result<()> {
    if n > table.n_max {
        return Err(Error::Config(format!(
            "N = {n} exceeds the coefficient table range {}",
            table.n_max
        )));
    }
    if g.a_max < 2 * n {
        return Err(Error::Config(format!(
            "g table range {} is below 2N = {}",
            g.a_max,
            2 * n
        )));
    }
    Ok(())
}

/// `Σ_{|α| ≤ N} c_α g_(n-α)`.
fn convolve(c: impl Fn(i64) -> Complex64, g: &GTable, n: i64, nn: i64) -> Complex64 {
    (-nn..=nn).map(|al| c(al) * g.get(n - al)).sum()
}

/// Flattened coefficients `φ_n`, `ψ_n` with `G1 = Σ φ_n ε^(-inp)`, `G2 = Σ ψ_n ε^(-inp)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiPsi {
    pub n_max: usize,
    phi: Vec<Complex64>,
    psi: Vec<Complex64>,
}

impl PhiPsi {
    pub fn phi(&self, n: i64) -> Complex64 {
        self.phi[(n + self.n_max as i64) as usize]
    }
    pub fn psi(&self, n: i64) -> Complex64 {
        self.psi[(n + self.n_max as i64) as usize]
    }

    /// `(Σ φ_n ε^(-inp), Σ ψ_n ε^(-inp))` through `e^(2πinx) = (-1)^n ε^(-inp)`.
    pub fn synthesize(&self, idx: &EpsilonIndex) -> (Complex64, Complex64) {
        let m = self.n_max as i64;
        let mut g1 = Complex64::new(0.0, 0.0);
        let mut g2 = Complex64::new(0.0, 0.0);
        for n in -m..=m {
            // ε^(-inp) = (-1)^n e^(2πinx)
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let e = Complex64::from_polar(sign, 2.0 * PI * n as f64 * idx.frac);
            g1 += self.phi(n) * e;
            g2 += self.psi(n) * e;
        }
        (g1, g2)
    }
}

/// `φ_n = (-1)^n (a_n + Σ b_α g_(n-α)) / log 3`, likewise `ψ_n` with σ, τ.
pub fn flatten_phi_psi(table: &CoefficientTable, g: &GTable) -> Result<PhiPsi> {
    let nn = table.n_max;
    check_tables(table, g, nn)?;
    let m = nn as i64;
    let mut phi = Vec::with_capacity(2 * nn + 1);
    let mut psi = Vec::with_capacity(2 * nn + 1);
    for n in -m..=m {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        phi.push(sign * (table.a(n) + convolve(|a| table.b(a), g, n, m)) / LN3);
        psi.push(sign * (table.sigma(n) + convolve(|a| table.tau(a), g, n, m)) / LN3);
    }
    Ok(PhiPsi {
        n_max: nn,
        phi,
        psi,
    })
}

/// Complex values of `(G1, G2)` with outer truncation N.
pub fn g_pair(idx: &EpsilonIndex, table: &CoefficientTable, g: &GTable, n: usize) -> Result<(Complex64, Complex64)> {
    check_tables(table, g, n)?;
    if idx.frac == 0.0 {
        return Err(Error::JumpPoint(idx.epsilon));
    }
    let m = n as i64;
    let mut g1 = Complex64::new(0.0, 0.0);
    let mut g2 = Complex64::new(0.0, 0.0);
    for k in -m..=m {
        let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 * idx.frac);
        g1 += (table.a(k) + convolve(|a| table.b(a), g, k, m)) * e;
        g2 += (table.sigma(k) + convolve(|a| table.tau(a), g, k, m)) * e;
    }
    Ok((g1 / LN3, g2 / LN3))
}

#[allow(non_snake_case)]
pub fn G1(epsilon: f64, table: &CoefficientTable, g: &GTable) -> Result<Complex64> {
    let idx = EpsilonIndex::from_epsilon(epsilon)?;
    Ok(g_pair(&idx, table, g, table.n_max)?.0)
}

#[allow(non_snake_case)]
pub fn G2(epsilon: f64, table: &CoefficientTable, g: &GTable) -> Result<Complex64> {
    let idx = EpsilonIndex::from_epsilon(epsilon)?;
    Ok(g_pair(&idx, table, g, table.n_max)?.1)
}

/// `(G1, G2)` through the products `a(ε) + b(ε) h(ε)` and `σ(ε) + τ(ε) h(ε)` of
/// the separately summed series (b, τ to |n| ≤ N, h to the full table).
pub fn g_pair_by_products(idx: &EpsilonIndex, table: &CoefficientTable, g: &GTable, n: usize) -> Result<(Complex64, Complex64)> {
    check_tables(table, g, n)?;
    let m = n as i64;
    let zero = Complex64::new(0.0, 0.0);
    let (mut a, mut b, mut s, mut t) = (zero, zero, zero, zero);
    for k in -m..=m {
        let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 * idx.frac);
        a += table.a(k) * e;
        b += table.b(k) * e;
        s += table.sigma(k) * e;
        t += table.tau(k) * e;
    }
    let h = g.synthesize(idx.frac, g.a_max);
    Ok(((a + b * h) / LN3, (s + t * h) / LN3))
}

/// Fourier evaluation of V.
pub fn v_tube(epsilon: f64, table: &CoefficientTable, g: &GTable) -> Result<TubeEvaluation> {
    v_tube_at(&EpsilonIndex::from_epsilon(epsilon)?, table, g, table.n_max)
}

pub fn v_tube_at(idx: &EpsilonIndex, table: &CoefficientTable, g: &GTable, n: usize) -> Result<TubeEvaluation> {
    let (g1, g2) = g_pair(idx, table, g, n)?;
    let e = idx.epsilon;
    let t1 = g1 * e.powf(2.0 - DIM);
    let t2 = g2 * e * e;
    let v = t1 + t2;
    Ok(TubeEvaluation {
        epsilon: e,
        v: v.re,
        term_g1: t1.re,
        term_g2: t2.re,
        truncation: Truncation {
            n,
            m: table.m,
            a_max: g.a_max,
        },
        imag_residue: g1.im.abs().max(g2.im.abs()).max(v.im.abs()),
    })
}

/// Closed-form evaluation `V = 3(Ṽ - E)` split into its `ε^(2-D)` and `ε²` terms.
pub fn v_direct_eval(epsilon: f64, h_value: f64, m: usize) -> Result<TubeEvaluation> {
    v_direct_eval_at(&EpsilonIndex::from_epsilon(epsilon)?, h_value, m)
}

pub fn v_direct_eval_at(idx: &EpsilonIndex, h_value: f64, m: usize) -> Result<TubeEvaluation> {
    let pre = pre_v_at(idx);
    let err = total_error_at(idx, h_value, m)?;
    let e2 = idx.epsilon * idx.epsilon;
    let term_g1 = 3.0 * (pre.value + e2 * PRELIM_EPS2) - 3.0 * err.lead_part;
    let term_g2 = -3.0 * e2 * PRELIM_EPS2 - 3.0 * err.eps2_part;
    Ok(TubeEvaluation {
        epsilon: idx.epsilon,
        v: 3.0 * (pre.value - err.e),
        term_g1,
        term_g2,
        truncation: Truncation {
            n: 0,
            m,
            a_max: 0,
        },
        imag_residue: 0.0,
    })
}

/// `V(ε) = 3(Ṽ(ε) - E(ε))` for a given value of h.
pub fn v_direct(epsilon: f64, h_value: f64) -> Result<f64> {
    Ok(v_direct_eval(epsilon, h_value, crate::errorblock::DEFAULT_M)?.v)
}

/// Which line a complex dimension lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DimensionLine {
    /// `Re = D`, weights `φ_n`.
    Fractal,
    /// `Re = 0`, weights `ψ_n`.
    Integer,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexDimension {
    pub n: i64,
    pub line: DimensionLine,
    pub re: f64,
    pub im: f64,
    /// `|φ_n|` or `|ψ_n|` when known.
    pub weight: Option<f64>,
}

/// `D + inp` and `inp` for `|n| ≤ N`, optionally weighted.
pub fn complex_dimensions(n_max: usize, weights: Option<&PhiPsi>) -> Vec<ComplexDimension> {
    let m = n_max as i64;
    let mut out = Vec::with_capacity(2 * (2 * n_max + 1));
    for (line, re) in [(DimensionLine::Fractal, DIM), (DimensionLine::Integer, 0.0)] {
        for n in -m..=m {
            let weight = weights.filter(|w| n.unsigned_abs() as usize <= w.n_max).map(|w| match line {
                DimensionLine::Fractal => w.phi(n).norm(),
                DimensionLine::Integer => w.psi(n).norm(),
            });
            out.push(ComplexDimension {
                n,
                line,
                re,
                im: n as f64 * PERIOD,
                weight,
            });
        }
    }
    out
}

/// Earlier estimate `ε^(2-D) (√3/4) 4^-{x} ((3/5) 9^{x} + 6·3^{x} - 1)`.
pub fn earlier_estimate(epsilon: f64) -> Result<f64> {
    let idx = EpsilonIndex::from_epsilon(epsilon)?;
    let f = idx.frac;
    Ok(epsilon.powf(2.0 - DIM) * SQRT3 / 4.0 * 4f64.powf(-f) * (0.6 * 9f64.powf(f) + 6.0 * 3f64.powf(f) - 1.0))
}
