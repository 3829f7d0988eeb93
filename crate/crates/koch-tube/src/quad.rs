//! Adaptive Gauss–Kronrod (7/15) quadrature on an interval.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of the Kronrod–Gauss differences over the final panels.
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Result of [`integrate_with_bound`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundedQuadrature {
    pub quad: Quadrature,
    /// Integral of the pointwise uncertainty reported by the integrand.
    pub carried: f64,
}

fn gk15<F: FnMut(f64) -> (f64, f64)>(f: &mut F, a: f64, b: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let (fc, uc) = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    let mut u = WGK[7] * uc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, u1) = f(c - dx);
        let (f2, u2) = f(c + dx);
        let s = f1 + f2;
        k += WGK[j] * s;
        u += WGK[j] * (u1 + u2);
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs(), u * h)
}

/// Integrates f over `[a, b]` until the estimated error is below `abs_tol`.
///
/// Panels are bisected greedily, largest error first, up to `max_panels`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_tol: f64, max_panels: usize) -> Quadrature {
    integrate_with_bound(|x| (f(x), 0.0), a, b, abs_tol, max_panels).quad
}

/// Like [`integrate`] for an integrand returning `(value, uncertainty)`.
///
/// The uncertainty is integrated on the same panels and counts towards the
/// error that drives refinement; `quad.error` holds the sum of both parts.
pub fn integrate_with_bound<F: FnMut(f64) -> (f64, f64)>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_panels: usize,
) -> BoundedQuadrature {
    if b <= a {
        return BoundedQuadrature {
            quad: Quadrature {
                value: 0.0,
                error: 0.0,
                evaluations: 0,
                converged: true,
            },
            carried: 0.0,
        };
    }
    let (v, e, u) = gk15(&mut f, a, b);
    let mut panels = vec![(a, b, v, e, u)];
    let mut evals = 15;
    loop {
        let (value, error, carried) = panels
            .iter()
            .fold((0.0, 0.0, 0.0), |(s, t, c), p| (s + p.2, t + p.3, c + p.4));
        let total = error + carried;
        let m = panels
            .iter()
            .enumerate()
            .max_by(|x, y| (x.1 .3 + x.1 .4).total_cmp(&(y.1 .3 + y.1 .4)))
            .map(|(i, p)| (i, p.0, p.1))
            .unwrap();
        let (i, pa, pb) = m;
        let mid = 0.5 * (pa + pb);
        // stop on tolerance, on the panel budget, or when a panel is too narrow to split
        if total <= abs_tol || panels.len() >= max_panels || mid <= pa || mid >= pb {
            return BoundedQuadrature {
                quad: Quadrature {
                    value,
                    error: total,
                    evaluations: evals,
                    converged: total <= abs_tol,
                },
                carried,
            };
        }
        panels.swap_remove(i);
        let (v1, e1, u1) = gk15(&mut f, pa, mid);
        let (v2, e2, u2) = gk15(&mut f, mid, pb);
        evals += 30;
        panels.push((pa, mid, v1, e1, u1));
        panels.push((mid, pb, v2, e2, u2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| x.powi(10) - 3.0 * x * x, 0.0, 2.0, 1e-14, 1);
        assert!((q.value - (2f64.powi(11) / 11.0 - 8.0)).abs() < 1e-11);
    }

    #[test]
    fn kinked_integrand_converges() {
        let q = integrate(|x: f64| (x - 0.3).abs().sqrt(), 0.0, 1.0, 1e-10, 2000);
        let want = (2.0 / 3.0) * (0.3f64.powf(1.5) + 0.7f64.powf(1.5));
        assert!(q.converged);
        assert!((q.value - want).abs() < 1e-9);
    }

    #[test]
    fn carried_uncertainty_is_integrated() {
        let q = integrate_with_bound(|x| (x, 1e-6 * x * x), 0.0, 3.0, 1e-3, 50);
        assert!((q.carried - 9e-6).abs() < 1e-15);
        assert!((q.quad.value - 4.5).abs() < 1e-13);
    }
}
