//! The preliminary area `Ṽ(ε)` three ways, and the earlier estimate of the
//! neighbourhood next to the closed form.
//!
//! `cargo run --example preliminary_area`

use koch_tube::cantor::{h_tilde, mu};
use koch_tube::prelim::{pre_v, pre_v_by_pieces, pre_v_fourier};
use koch_tube::tube::{earlier_estimate, v_direct};

fn main() -> koch_tube::Result<()> {
    println!("x       Ṽ closed form          by pieces              Fourier (n ≤ 400)");
    for x in [0.25, 0.75, 1.5, 2.5, 3.3, 4.9] {
        let eps = 3f64.powf(-x - 0.5);
        let p = pre_v(eps)?;
        println!(
            "{x:<6}  {:.15e}  {:.15e}  {:.15e}",
            p.value,
            pre_v_by_pieces(eps)?,
            pre_v_fourier(eps, 400)?
        );
    }

    let eps = 3f64.powf(-2.8);
    let p = pre_v(eps)?;
    println!(
        "\nparts at ε = 3^-2.8: rect {:.6e} wedge {:.6e} triangle {:.6e} fringe {:.6e}",
        p.rect, p.wedge, p.triangle, p.fringe
    );

    // the earlier estimate against V with the sawtooth h
    println!("\nx       earlier estimate     V (sawtooth h)       ratio");
    let m = mu();
    for i in 0..16 {
        let x = 0.6 + 0.25 * i as f64;
        let eps = 3f64.powf(-x - 0.5);
        let a = earlier_estimate(eps)?;
        let v = v_direct(eps, h_tilde(eps)?.min(m))?;
        println!("{x:<6.2}  {a:.12e}  {v:.12e}  {:.6}", a / v);
    }
    Ok(())
}
