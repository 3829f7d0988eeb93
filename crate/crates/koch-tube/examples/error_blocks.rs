//! Crest areas of an error block, the block area summed directly and as a
//! power series, and the block counts.
//!
//! `cargo run --example error_blocks`

use koch_tube::errorblock::{
    b_by_trianglets, b_direct, b_series, block_counts, total_error, trianglet_area, DEFAULT_K, DEFAULT_M,
};

fn main() -> koch_tube::Result<()> {
    let eps = 3f64.powf(-2.3);
    println!("crest areas at ε = 3^-2.3");
    for k in 1..=6 {
        println!("  A_{k} = {:.6e}  (multiplicity {})", trianglet_area(k, eps)?, 1u64 << (k - 1));
    }

    println!("\nx      B direct              B series              gap       series tail");
    for x in [0.0, 0.3, 0.5, 0.8, 0.99, 2.4] {
        let e = 3f64.powf(-x - 0.5);
        let d = b_direct(e, DEFAULT_K)?;
        let s = b_series(e, DEFAULT_M)?;
        println!(
            "{x:<5}  {:.15e}  {:.15e}  {:.1e}  {:.1e}",
            d.value,
            s.value,
            ((d.value - s.value) / d.value).abs(),
            s.tail_bound
        );
    }
    println!("\nby trianglets at ε = 3^-2.3: {:.15e}", b_by_trianglets(eps, DEFAULT_K)?);

    let (c, p) = block_counts(eps)?;
    let e = total_error(eps, 0.4, DEFAULT_M)?;
    println!("complete blocks {c}, partial blocks {p}");
    println!("E = {:.6e} = {:.6e} + {:.6e} (h = 0.4)", e.e, e.lead_part, e.eps2_part);
    Ok(())
}
