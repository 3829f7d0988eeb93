//! Closed form against the Monte Carlo oracle on a few ε.
//!
//! `cargo run --release --example oracle_compare -- 1000000`

use koch_tube::cantor::h_geometric_at_frac;
use koch_tube::geometry::oracle_inner_area;
use koch_tube::scaling::EpsilonIndex;
use koch_tube::tube::v_direct_eval_at;

fn main() -> koch_tube::Result<()> {
    let samples: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1_000_000);
    println!("x      V closed form   oracle          σ         gap/σ");
    for x in [0.6, 1.2, 1.7, 2.4, 3.5] {
        let idx = EpsilonIndex::from_x(x)?;
        let h = h_geometric_at_frac(idx.frac)?;
        let v = v_direct_eval_at(&idx, h, 150)?.v;
        let o = oracle_inner_area(idx.epsilon, samples, 7)?;
        println!(
            "{x:<5}  {v:.9e}  {:.9e}  {:.2e}  {:+.2}",
            o.area_mean,
            o.std_error,
            (v - o.area_mean) / o.std_error
        );
    }
    Ok(())
}
