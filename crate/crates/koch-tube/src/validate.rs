//! Property checks shared by the `selftest` command and the acceptance suite.
//!
//! Each check returns a [`Check`] with a one-line detail; none of them panic
//! on a failed property.

use crate::cantor::{mu_at, sawtooth_coefficient, CantorProfile, GTable, HMode};
use crate::errorblock::{b_direct_at, b_series_at, block_counts_at, DEFAULT_K, DEFAULT_M};
use crate::geometry::oracle_inner_area;
use crate::scaling::{piece_counts, EpsilonIndex};
use crate::tube::{
    coeff_b, coeff_b_catalan, coeff_tau, coeff_tau_catalan, complex_dimensions, flatten_phi_psi, g_pair,
    v_direct_eval_at, v_tube_at, CoefficientTable, DimensionLine,
};
use crate::{Result, DIM, PERIOD};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }

    fn failed(name: &str, err: crate::Error) -> Self {
        Self::new(name, false, format!("error: {err}"))
    }

    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// `count` values of ε with `x` log-spaced (linear in x) over `[x_lo, x_hi]`.
pub fn log_grid(x_lo: f64, x_hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| {
            let x = if count == 1 {
                x_lo
            } else {
                x_lo + (x_hi - x_lo) * i as f64 / (count - 1) as f64
            };
            3f64.powf(-x - 0.5)
        })
        .collect()
}

/// Cell-centred grid in x with every point at least `margin` away from an
/// integer.
pub fn off_jump_grid(x_lo: f64, x_hi: f64, count: usize, margin: f64) -> Vec<f64> {
    (0..count)
        .map(|i| {
            let mut x = x_lo + (x_hi - x_lo) * (i as f64 + 0.5) / count as f64;
            let f = x - x.floor();
            if f < margin {
                x += margin - f;
            } else if f > 1.0 - margin {
                x -= f - (1.0 - margin);
            }
            3f64.powf(-x - 0.5)
        })
        .collect()
}

/// One ε of the oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OraclePoint {
    pub epsilon: f64,
    pub v_direct: f64,
    pub mean: f64,
    pub std_error: f64,
    pub bias: f64,
    pub within: bool,
}

/// `v_direct` with geometric h next to the oracle; `within` requires
/// `|v_direct - mean| ≤ 3 se + bias` and a relative gap below `rel_gap`.
pub fn oracle_points(grid: &[f64], samples: u64, seed: u64, rel_gap: f64) -> Result<Vec<OraclePoint>> {
    grid.iter()
        .map(|&eps| {
            let idx = EpsilonIndex::from_epsilon(eps)?;
            let h = crate::cantor::h_geometric_at_frac(idx.frac)?;
            let vd = v_direct_eval_at(&idx, h, DEFAULT_M)?.v;
            let o = oracle_inner_area(eps, samples, seed)?;
            let gap = (vd - o.area_mean).abs();
            Ok(OraclePoint {
                epsilon: eps,
                v_direct: vd,
                mean: o.area_mean,
                std_error: o.std_error,
                bias: o.bias_bound,
                within: gap <= 3.0 * o.std_error + o.bias_bound && gap <= rel_gap * o.area_mean,
            })
        })
        .collect()
}

/// Oracle agreement at every ε of the grid.
pub fn check_oracle(grid: &[f64], samples: u64, seed: u64, rel_gap: f64) -> Check {
    match oracle_points(grid, samples, seed, rel_gap) {
        Ok(points) => oracle_check(&points),
        Err(e) => Check::failed(ORACLE_NAME, e),
    }
}

const ORACLE_NAME: &str = "oracle equivalence";

/// Summarizes [`oracle_points`].
pub fn oracle_check(points: &[OraclePoint]) -> Check {
    let worst_z = points
        .iter()
        .map(|p| (p.v_direct - p.mean).abs() / (3.0 * p.std_error + p.bias))
        .fold(0.0, f64::max);
    let failures: Vec<String> = points
        .iter()
        .filter(|p| !p.within)
        .map(|p| {
            format!(
                "ε={:.6e} direct={:.6e} oracle={:.6e}±{:.1e}",
                p.epsilon, p.v_direct, p.mean, p.std_error
            )
        })
        .collect();
    let passed = failures.is_empty();
    let detail = if passed {
        format!("{} points, worst gap {:.2} of 3σ+bias", points.len(), worst_z)
    } else {
        format!("{}/{} points outside: {}", failures.len(), points.len(), failures.join("; "))
    };
    Check::new(ORACLE_NAME, passed, detail)
}

/// Direct k-sum of the block area equals its rearranged power series.
pub fn check_rearrangement(count: usize, seed: u64, rel_tol: f64) -> Check {
    const NAME: &str = "rearranged block series";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let idx = match EpsilonIndex::from_x(rng.gen_range(0.0..6.0)) {
            Ok(i) => i,
            Err(e) => return Check::failed(NAME, e),
        };
        let d = b_direct_at(&idx, DEFAULT_K).value;
        let s = b_series_at(&idx, DEFAULT_M).value;
        worst = worst.max(((d - s) / d).abs());
    }
    Check::new(NAME, worst <= rel_tol, format!("{count} values of ε, worst relative gap {worst:.2e}"))
}

/// Catalan-type and binomial forms of `b_n`, `τ_n` agree.
pub fn check_dual_forms(n_max: i64, m: usize, tol: f64) -> Check {
    const NAME: &str = "dual coefficient forms";
    let mut worst: f64 = 0.0;
    for n in -n_max..=n_max {
        let pairs = [
            (coeff_b(n, m), coeff_b_catalan(n, m)),
            (coeff_tau(n, m), coeff_tau_catalan(n, m)),
        ];
        for (x, y) in pairs {
            match (x, y) {
                (Ok(x), Ok(y)) => worst = worst.max((x - y).norm() / x.norm().max(1e-300)),
                (Err(e), _) | (_, Err(e)) => return Check::failed(NAME, e),
            }
        }
    }
    Check::new(NAME, worst <= tol, format!("|n| ≤ {n_max}, M = {m}, worst relative gap {worst:.2e}"))
}

/// Fourier route against the closed forms on an off-jump grid.
///
/// Both routes use the same h: the direct route reads it from the sampled
/// profile behind `g`.
pub fn check_tube_vs_direct(profile: &CantorProfile, table: &CoefficientTable, grid: &[f64], rel_tol: f64) -> Check {
    const NAME: &str = "Fourier series vs closed form";
    let mut worst: f64 = 0.0;
    let mut at = 0.0;
    for &eps in grid {
        let r = (|| -> Result<f64> {
            let idx = EpsilonIndex::from_epsilon(eps)?;
            let vt = v_tube_at(&idx, table, &profile.g, table.n_max)?.v;
            let vd = v_direct_eval_at(&idx, profile.h_at_frac(idx.frac), table.m)?.v;
            Ok(((vt - vd) / vd).abs())
        })();
        match r {
            Ok(g) if g > worst => {
                worst = g;
                at = eps;
            }
            Ok(_) => {}
            Err(e) => return Check::failed(NAME, e),
        }
    }
    Check::new(
        NAME,
        worst <= rel_tol,
        format!("{} points, worst relative gap {worst:.2e} at ε={at:.6e}", grid.len()),
    )
}

/// Imaginary parts of `G1`, `G2`, `V` vanish.
pub fn check_reality(g: &GTable, table: &CoefficientTable, grid: &[f64], tol: f64) -> Check {
    const NAME: &str = "reality of G1, G2, V";
    let mut worst: f64 = 0.0;
    for &eps in grid {
        match EpsilonIndex::from_epsilon(eps).and_then(|idx| v_tube_at(&idx, table, g, table.n_max)) {
            Ok(v) => worst = worst.max(v.imag_residue),
            Err(e) => return Check::failed(NAME, e),
        }
    }
    Check::new(NAME, worst <= tol, format!("{} points, largest imaginary part {worst:.2e}", grid.len()))
}

/// `{x}`, `B/ε²`, h, `G1`, `G2` are unchanged under `ε ↦ ε/3`.
pub fn check_periodicity(
    profile: &CantorProfile,
    table: &CoefficientTable,
    count: usize,
    seed: u64,
    h_of_frac: &dyn Fn(f64) -> Result<f64>,
) -> Check {
    const NAME: &str = "multiplicative periodicity";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [0.0f64; 5];
    for _ in 0..count {
        let x: f64 = rng.gen_range(0.02..3.98);
        if (x - x.round()).abs() < 0.02 {
            continue;
        }
        let r = (|| -> Result<[f64; 5]> {
            let a = EpsilonIndex::from_x(x)?;
            let b = EpsilonIndex::from_epsilon(a.epsilon / 3.0)?;
            let ba = b_series_at(&a, DEFAULT_M).value / (a.epsilon * a.epsilon);
            let bb = b_series_at(&b, DEFAULT_M).value / (b.epsilon * b.epsilon);
            let (g1a, g2a) = g_pair(&a, table, &profile.g, table.n_max)?;
            let (g1b, g2b) = g_pair(&b, table, &profile.g, table.n_max)?;
            Ok([
                (a.frac - b.frac).abs(),
                ((ba - bb) / ba).abs(),
                (h_of_frac(a.frac)? - h_of_frac(b.frac)?).abs(),
                (g1a - g1b).norm() / g1a.norm(),
                (g2a - g2b).norm() / g2a.norm(),
            ])
        })();
        match r {
            Ok(d) => {
                for (w, v) in worst.iter_mut().zip(d) {
                    *w = w.max(v);
                }
            }
            Err(e) => return Check::failed(NAME, e),
        }
    }
    let tol = [1e-12, 1e-12, 2e-10, 1e-9, 1e-9];
    let passed = worst.iter().zip(tol).all(|(w, t)| *w <= t);
    Check::new(
        NAME,
        passed,
        format!(
            "{{x}} {:.1e}, B/ε² {:.1e}, h {:.1e}, G1 {:.1e}, G2 {:.1e}",
            worst[0], worst[1], worst[2], worst[3], worst[4]
        ),
    )
}

/// μ recomputed at `ε_k` for `k = 1..=k_max` drifts by at most `tol`.
pub fn check_mu(k_max: u32, tol: f64) -> Check {
    const NAME: &str = "μ well defined";
    let values: Vec<f64> = (1..=k_max).map(mu_at).collect();
    let m = values[0];
    let drift = values.iter().map(|v| (v - m).abs()).fold(0.0, f64::max);
    let passed = drift <= tol && m > 0.0 && m < 1.0;
    Check::new(NAME, passed, format!("μ = {m:.15}, drift over k ≤ {k_max}: {drift:.1e}"))
}

/// `max |n c_n|` over the upper half of the range stays within `factor` of its
/// maximum over the lower half.
fn bounded(name: &str, weighted: &[(i64, f64)], n_max: i64, factor: f64) -> (bool, String) {
    let lo = weighted
        .iter()
        .filter(|(n, _)| n.abs() >= 1 && n.abs() <= n_max / 2)
        .map(|p| p.1)
        .fold(0.0, f64::max);
    let hi = weighted
        .iter()
        .filter(|(n, _)| n.abs() > n_max / 2)
        .map(|p| p.1)
        .fold(0.0, f64::max);
    (hi <= factor * lo, format!("{name} {lo:.3e}/{hi:.3e}"))
}

/// `|n b_n|`, `|n τ_n|`, `|α g_α|` stay bounded over `|n|, |α| ≤ n_max`.
pub fn check_decay(table: &CoefficientTable, g: &GTable, n_max: i64) -> Check {
    const NAME: &str = "coefficient decay";
    let range = -n_max..=n_max;
    let b: Vec<_> = range.clone().map(|n| (n, n.abs() as f64 * table.b(n).norm())).collect();
    let t: Vec<_> = range.clone().map(|n| (n, n.abs() as f64 * table.tau(n).norm())).collect();
    let a: Vec<_> = range.map(|n| (n, n.abs() as f64 * g.get(n).norm())).collect();
    let parts = [
        bounded("n·b_n", &b, n_max, 1.5),
        bounded("n·τ_n", &t, n_max, 1.5),
        bounded("α·g_α", &a, n_max, 1.5),
    ];
    let passed = parts.iter().all(|p| p.0) && table.n_max as i64 >= n_max && g.a_max as i64 >= n_max;
    let detail = parts.iter().map(|p| p.1.as_str()).collect::<Vec<_>>().join(", ");
    Check::new(NAME, passed, format!("max over lower/upper half: {detail}"))
}

/// Two vertical lines `Re = D`, `Re = 0`, spacing p, closed under conjugation.
pub fn check_dimensions(n_max: usize) -> Check {
    const NAME: &str = "complex dimension lattice";
    let dims = complex_dimensions(n_max, None);
    let per_line = 2 * n_max + 1;
    let mut ok = dims.len() == 2 * per_line;
    for d in &dims {
        let re = match d.line {
            DimensionLine::Fractal => DIM,
            DimensionLine::Integer => 0.0,
        };
        ok &= d.re == re && d.im == d.n as f64 * PERIOD;
        ok &= dims.iter().any(|e| e.line == d.line && e.re == d.re && e.im == -d.im);
    }
    Check::new(NAME, ok, format!("{} values on Re = {DIM} and Re = 0, spacing {PERIOD}", dims.len()))
}

/// Block counts against the piece counts, and the wedge recurrence.
pub fn check_counting(n_max: u32) -> Check {
    const NAME: &str = "counting identities";
    let mut ok = true;
    let mut prev_w = None;
    for n in 0..=n_max {
        let pc = match piece_counts(n as i64) {
            Ok(p) => p,
            Err(e) => return Check::failed(NAME, e),
        };
        if let Some(w) = prev_w {
            ok &= pc.wedges == 4 * w + 2;
        }
        prev_w = Some(pc.wedges);
        if n == 0 {
            continue;
        }
        let (c, p) = block_counts_at(&EpsilonIndex::at_boundary(n));
        ok &= c.fract() == 0.0 && p.fract() == 0.0;
        ok &= c as u64 == pc.rectangles - pc.triangles && p as u64 == pc.triangles;
    }
    Check::new(NAME, ok, format!("n = 1..={n_max}"))
}

/// Table built from samples of `h̃` equals the sawtooth closed form.
pub fn check_sawtooth_table(a_max: usize, tol: f64) -> Check {
    const NAME: &str = "sawtooth Fourier table";
    match CantorProfile::build(HMode::Approximate, 64, a_max) {
        Ok(p) => {
            let worst = (-(a_max as i64)..=a_max as i64)
                .map(|a| (p.g.get(a) - sawtooth_coefficient(p.mu, a)).norm())
                .fold(0.0, f64::max);
            Check::new(NAME, worst <= tol, format!("|α| ≤ {a_max}, worst gap {worst:.1e}"))
        }
        Err(e) => Check::failed(NAME, e),
    }
}

/// `φ_n` re-synthesizes `G1`, `G2`.
pub fn check_flattening(g: &GTable, table: &CoefficientTable, grid: &[f64], tol: f64) -> Check {
    const NAME: &str = "flattened coefficients";
    let r = (|| -> Result<f64> {
        let pp = flatten_phi_psi(table, g)?;
        let mut worst: f64 = 0.0;
        for &eps in grid {
            let idx = EpsilonIndex::from_epsilon(eps)?;
            let (a1, a2) = g_pair(&idx, table, g, table.n_max)?;
            let (b1, b2) = pp.synthesize(&idx);
            worst = worst.max((a1 - b1).norm() / a1.norm()).max((a2 - b2).norm() / a2.norm());
        }
        Ok(worst)
    })();
    match r {
        Ok(w) => Check::new(NAME, w <= tol, format!("{} points, worst relative gap {w:.1e}", grid.len())),
        Err(e) => Check::failed(NAME, e),
    }
}
