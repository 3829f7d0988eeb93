//! Prefractal curves and snowflake polygons.
//!
//! `cargo run --example prefractal -- 4`

use koch_tube::geometry::{build_prefractal, build_snowflake, snowflake_area, Point};

fn main() -> koch_tube::Result<()> {
    let level: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);

    let curve = build_prefractal(level)?;
    println!("K_{level}: {} segments, length {:.12}", curve.segments(), curve.length());
    println!("length (4/3)^n = {:.12}", (4.0f64 / 3.0).powi(level as i32));

    let p = Point::new(0.5, -1.0);
    println!("distance from (0.5, -1) to K_{level}: {:.12}", curve.distance(p));

    println!("\nlevel  vertices  polygon area        closed form");
    for m in 0..=level.min(7) {
        let s = build_snowflake(m)?;
        println!("{m:>5}  {:>8}  {:.15}  {:.15}", s.vertices.len(), s.area(), snowflake_area(m));
    }
    let s = build_snowflake(level.min(6))?;
    println!("\nlevel-{} polygon simple: {}", s.level, s.is_simple());
    println!("centroid inside: {}", s.contains(Point::new(0.5, 3f64.sqrt() / 6.0)));
    Ok(())
}
