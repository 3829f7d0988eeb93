//! Fourier coefficients of the tube formula.
//!
//! Every coefficient is a sum over the power index m of the crest series. The
//! k-sum of the crest areas contributes `3^(m+1/2) / (3^(2m+1) - 2)` to the m-th
//! term, and that factor is kept in both written forms below.

use crate::errorblock::crest_coefficient;
use crate::prelim::prelim_coefficient;
use crate::{Error, Result, DIM, LN3, PERIOD, SQRT3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default depth of the m-series inside each coefficient.
pub const DEFAULT_COEFF_M: usize = 150;
pub const MAX_COEFF_M: usize = 600;

fn check_m(m: usize) -> Result<()> {
    if m < 1 || m > MAX_COEFF_M {
        return Err(Error::Config(format!("inner depth M = {m} outside 1..={MAX_COEFF_M}")));
    }
    Ok(())
}

#[inline]
fn s(n: i64, re: f64) -> Complex64 {
    Complex64::new(re, n as f64 * PERIOD)
}

/// `(3^(2m+1) - c) / (3^(2m+1) - 2)`.
#[inline]
fn ratio3(m: usize, c: f64) -> f64 {
    let inv = 3f64.powi(-(2 * m as i32 + 1));
    (1.0 - c * inv) / (1.0 - 2.0 * inv)
}

/// `b_n` from the Catalan-type form
/// `Σ (2m-2)! (3^(2m+1)-4) 3^(m+1/2) / (2^(4m+1) (m-1)! m! (2m+1) (3^(2m+1)-2) (D-2m-1+inp))`.
pub fn coeff_b_catalan(n: i64, m_max: usize) -> Result<Complex64> {
    check_m(m_max)?;
    Ok((1..=m_max)
        .map(|m| {
            let c = crest_coefficient(m) / 4.0 * 3f64.powf(m as f64 + 0.5) * ratio3(m, 4.0);
            c / s(n, DIM - 2.0 * m as f64 - 1.0)
        })
        .sum())
}

/// Central binomial `C(2m, m) / 4^m` for m = 1..=m_max.
fn central(m_max: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(m_max);
    let mut c = 1.0;
    for m in 1..=m_max {
        c *= (2 * m - 1) as f64 / (2 * m) as f64;
        v.push(c);
    }
    v
}

/// `b_n` from the binomial form
/// `Σ (2m)! (3^(2m+1)-4) 3^(m+1/2) / (4^(2m+1) (m!)² (4m²-1) (3^(2m+1)-2) (D-2m-1+inp))`.
pub fn coeff_b(n: i64, m_max: usize) -> Result<Complex64> {
    check_m(m_max)?;
    let cb = central(m_max);
    Ok((1..=m_max)
        .map(|m| {
            let mf = m as f64;
            // 3^(m+1/2) / 4^(m+1) = (√3/4) (3/4)^m
            let c = cb[m - 1] * SQRT3 / 4.0 * 0.75f64.powi(m as i32) * ratio3(m, 4.0) / (4.0 * mf * mf - 1.0);
            c / s(n, DIM - 2.0 * mf - 1.0)
        })
        .sum())
}

/// `τ_n` from the Catalan-type form
/// `Σ (2m-2)! (3^(2m+1)-1) 3^(m+1/2) / (2^(4m-3) (m-1)! m! (2m+1) (3^(2m+1)-2) (-2m-1+inp))`.
pub fn coeff_tau_catalan(n: i64, m_max: usize) -> Result<Complex64> {
    check_m(m_max)?;
    Ok((1..=m_max)
        .map(|m| {
            let c = 4.0 * crest_coefficient(m) * 3f64.powf(m as f64 + 0.5) * ratio3(m, 1.0);
            c / s(n, -2.0 * m as f64 - 1.0)
        })
        .sum())
}

/// `τ_n` from the binomial form
/// `Σ (2m)! (3^(2m+1)-1) 3^(m+1/2) / (4^(2m-1) (m!)² (4m²-1) (-2m-1+inp) (3^(2m+1)-2))`.
pub fn coeff_tau(n: i64, m_max: usize) -> Result<Complex64> {
    check_m(m_max)?;
    let cb = central(m_max);
    Ok((1..=m_max)
        .map(|m| {
            let mf = m as f64;
            // 3^(m+1/2) / 4^(m-1) = 4√3 (3/4)^m
            let c = cb[m - 1] * 4.0 * SQRT3 * 0.75f64.powi(m as i32) * ratio3(m, 1.0) / (4.0 * mf * mf - 1.0);
            c / s(n, -2.0 * mf - 1.0)
        })
        .sum())
}

/// `a_n = c_n + b_n/2` with `c_n` the three-pole coefficient of `Ṽ`.
pub fn coeff_a(n: i64, m_max: usize) -> Result<Complex64> {
    Ok(prelim_coefficient(n) + coeff_b(n, m_max)? / 2.0)
}

/// Constant part of `σ_0`: `log 3 (π/3 + 2√3)`.
pub const SIGMA_CONST: f64 = LN3 * (PI / 3.0 + 2.0 * SQRT3);

/// `σ_n = -log 3 (π/3 + 2√3) δ_n0 - τ_n`.
pub fn coeff_sigma(n: i64, m_max: usize) -> Result<Complex64> {
    let d = if n == 0 { SIGMA_CONST } else { 0.0 };
    Ok(-d - coeff_tau(n, m_max)?)
}

/// `a_n, b_n, σ_n, τ_n` for `|n| ≤ N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub n_max: usize,
    pub m: usize,
    pub dim: f64,
    pub period: f64,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    sigma: Vec<Complex64>,
    tau: Vec<Complex64>,
}

/// One row of the JSON dump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub n: i64,
    pub a_re: f64,
    pub a_im: f64,
    pub b_re: f64,
    pub b_im: f64,
    pub sigma_re: f64,
    pub sigma_im: f64,
    pub tau_re: f64,
    pub tau_im: f64,
}

impl CoefficientTable {
    /// Builds the non-negative half and fills the rest by conjugation.
    pub fn build(n_max: usize, m: usize) -> Result<Self> {
        check_m(m)?;
        let len = 2 * n_max + 1;
        let zero = Complex64::new(0.0, 0.0);
        let mut t = Self {
            n_max,
            m,
            dim: DIM,
            period: PERIOD,
            a: vec![zero; len],
            b: vec![zero; len],
            sigma: vec![zero; len],
            tau: vec![zero; len],
        };
        for n in 0..=n_max as i64 {
            let b = coeff_b(n, m)?;
            let tau = coeff_tau(n, m)?;
            let a = prelim_coefficient(n) + b / 2.0;
            let sigma = -(if n == 0 { SIGMA_CONST } else { 0.0 }) - tau;
            let (a, b, sigma, tau) = if n == 0 {
                (Complex64::new(a.re, 0.0), Complex64::new(b.re, 0.0), Complex64::new(sigma.re, 0.0), Complex64::new(tau.re, 0.0))
            } else {
                (a, b, sigma, tau)
            };
            let i = n as usize + n_max;
            let j = n_max - n as usize;
            t.a[i] = a;
            t.b[i] = b;
            t.sigma[i] = sigma;
            t.tau[i] = tau;
            t.a[j] = a.conj();
            t.b[j] = b.conj();
            t.sigma[j] = sigma.conj();
            t.tau[j] = tau.conj();
        }
        Ok(t)
    }

    fn at(v: &[Complex64], n_max: usize, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > n_max {
            Complex64::new(0.0, 0.0)
        } else {
            v[(n + n_max as i64) as usize]
        }
    }

    pub fn a(&self, n: i64) -> Complex64 {
        Self::at(&self.a, self.n_max, n)
    }
    pub fn b(&self, n: i64) -> Complex64 {
        Self::at(&self.b, self.n_max, n)
    }
    pub fn sigma(&self, n: i64) -> Complex64 {
        Self::at(&self.sigma, self.n_max, n)
    }
    pub fn tau(&self, n: i64) -> Complex64 {
        Self::at(&self.tau, self.n_max, n)
    }

    pub fn rows(&self) -> Vec<CoefficientRow> {
        let m = self.n_max as i64;
        (-m..=m)
            .map(|n| CoefficientRow {
                n,
                a_re: self.a(n).re,
                a_im: self.a(n).im,
                b_re: self.b(n).re,
                b_im: self.b(n).im,
                sigma_re: self.sigma(n).re,
                sigma_im: self.sigma(n).im,
                tau_re: self.tau(n).re,
                tau_im: self.tau(n).im,
            })
            .collect()
    }
}
