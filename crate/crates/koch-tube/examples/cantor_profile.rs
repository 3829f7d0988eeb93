//! The formed fraction h over one period next to the sawtooth `h̃`, and the
//! leading Fourier coefficients of both.
//!
//! `cargo run --release --example cantor_profile -- 24`

use koch_tube::cantor::{h_tilde_at, mu, CantorProfile, HMode};
use koch_tube::scaling::EpsilonIndex;

fn main() -> koch_tube::Result<()> {
    let s: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(24);
    let m = mu();
    println!("μ = {m:.16}");

    let geo = CantorProfile::build(HMode::Geometric, s, 8)?;
    let saw = CantorProfile::build(HMode::Approximate, s, 8)?;
    println!("\n{{x}}      h           h̃");
    for j in 0..=s {
        let x = j as f64 / s as f64;
        let ht = if j == s { 0.0 } else { h_tilde_at(&EpsilonIndex::from_x(x)?, m) };
        println!("{x:.4}  {:.9}  {ht:.9}", geo.samples[j]);
    }

    println!("\nα   g_α (h)                      g_α (h̃)");
    for a in 0..=8 {
        let (g, t) = (geo.g.get(a), saw.g.get(a));
        println!("{a}  {:+.6e} {:+.6e}i  {:+.6e} {:+.6e}i", g.re, g.im, t.re, t.im);
    }
    Ok(())
}
