//! `V(ε) = G1 ε^(2-D) + G2 ε²` from the Fourier series and from the closed
//! forms.
//!
//! `cargo run --release --example tube_formula -- approximate`

use koch_tube::cantor::{CantorProfile, HMode, DEFAULT_SAMPLES};
use koch_tube::scaling::EpsilonIndex;
use koch_tube::tube::{v_direct_eval_at, v_tube_at, CoefficientTable, DEFAULT_A_MAX, DEFAULT_COEFF_M, DEFAULT_N};

fn main() -> koch_tube::Result<()> {
    let mode: HMode = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(HMode::Geometric);
    let table = CoefficientTable::build(DEFAULT_N, DEFAULT_COEFF_M)?;
    let prof = CantorProfile::build(mode, DEFAULT_SAMPLES, DEFAULT_A_MAX)?;
    println!("h mode {mode}, N = {DEFAULT_N}, M = {DEFAULT_COEFF_M}, A_max = {DEFAULT_A_MAX}");
    println!("\nx      V Fourier            V closed form        rel gap   G1 term         G2 term");
    for i in 0..12 {
        let x = 0.55 + 0.3 * i as f64;
        let idx = EpsilonIndex::from_x(x)?;
        let t = v_tube_at(&idx, &table, &prof.g, DEFAULT_N)?;
        let d = v_direct_eval_at(&idx, prof.h_at_frac(idx.frac), DEFAULT_COEFF_M)?;
        println!(
            "{x:<5.2}  {:.12e}  {:.12e}  {:.1e}  {:+.6e}  {:+.6e}",
            t.v,
            d.v,
            ((t.v - d.v) / d.v).abs(),
            t.term_g1,
            t.term_g2
        );
    }
    Ok(())
}
