//! Complex dimensions `D + inp` and `inp` with the magnitudes of their
//! coefficients.
//!
//! `cargo run --release --example complex_dimensions -- 6`

use koch_tube::cantor::{fourier_g, HMode};
use koch_tube::tube::{complex_dimensions, flatten_phi_psi, CoefficientTable, DimensionLine, DEFAULT_COEFF_M};

fn main() -> koch_tube::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let table = CoefficientTable::build(n, DEFAULT_COEFF_M)?;
    let g = fourier_g(2 * n.max(1), HMode::Geometric)?;
    let w = flatten_phi_psi(&table, &g)?;
    println!("line     n    Re             Im              |coefficient|");
    for d in complex_dimensions(n, Some(&w)) {
        let line = match d.line {
            DimensionLine::Fractal => "fractal",
            DimensionLine::Integer => "integer",
        };
        println!("{line}  {:>3}  {:.12}  {:+.10}  {:.6e}", d.n, d.re, d.im, d.weight.unwrap_or(0.0));
    }
    Ok(())
}
