//! Distance to the Koch curve and the Monte Carlo area of the inner
//! ε-neighbourhood.
//!
//! `cargo run --release --example distance_oracle -- 0.05 200000`

use koch_tube::geometry::{build_prefractal, distance_to_k, oracle_inner_area, Point};
use num_complex::Complex64;

fn main() -> koch_tube::Result<()> {
    let mut args = std::env::args().skip(1);
    let eps: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.05);
    let samples: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(200_000);

    println!("point            dist to K          dist to K_8");
    let k8 = build_prefractal(8)?;
    for (x, y) in [(0.5, -1.0), (0.5, 0.1), (0.2, 0.3), (1.5, 0.0), (0.5, 0.2887)] {
        let d = distance_to_k(Complex64::new(x, y), 1e-12);
        let dn = k8.distance(Point::new(x, y));
        println!("({x:>4}, {y:>6})  {d:.15}  {dn:.15}");
    }

    let o = oracle_inner_area(eps, samples, 7)?;
    println!(
        "\nε = {eps}: area {:.8} ± {:.2e} (bias ≤ {:.1e}, {} samples, seed {})",
        o.area_mean, o.std_error, o.bias_bound, o.samples, o.seed
    );
    Ok(())
}
