//! Prefractal polylines, IFS queries on the Koch curve and the Monte Carlo
//! oracle for the inner neighbourhood area.

mod ifs;
mod oracle;

pub use ifs::{
    distance_to_image, distance_to_k, in_triangle, region_contains, triangle_distance,
    within_image, Similarity, F1, F2,
};
pub use oracle::{
    oracle_inner_area, oracle_with, snowflake_contains, snowflake_sides, OracleConfig,
    OracleEstimate, ORACLE_BBOX,
};

use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `ρ = 1/2 + i/(2√3)`, apex of the first bump.
pub const RHO: Complex64 = Complex64::new(0.5, 0.288_675_134_594_812_9);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
    pub fn dist(&self, o: &Point) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Self { x: z.re, y: z.im }
    }
}

impl From<Point> for Complex64 {
    fn from(p: Point) -> Self {
        Complex64::new(p.x, p.y)
    }
}

/// Level-n polygonal stage of the curve from `(0,0)` to `(1,0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefractalCurve {
    pub level: u32,
    pub vertices: Vec<Point>,
}

pub const MAX_CURVE_LEVEL: u32 = 12;
pub const MAX_SNOWFLAKE_LEVEL: u32 = 10;

impl PrefractalCurve {
    /// Replaces every segment by the four-segment motif, bump on the left.
    pub fn refine(&self) -> PrefractalCurve {
        let bump = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let mut out = Vec::with_capacity(4 * (self.vertices.len() - 1) + 1);
        for w in self.vertices.windows(2) {
            let a: Complex64 = w[0].into();
            let b: Complex64 = w[1].into();
            let d = (b - a) / 3.0;
            out.push(w[0]);
            out.push((a + d).into());
            out.push((a + d + d * bump).into());
            out.push((a + 2.0 * d).into());
        }
        out.push(*self.vertices.last().unwrap());
        PrefractalCurve {
            level: self.level + 1,
            vertices: out,
        }
    }

    pub fn segments(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn length(&self) -> f64 {
        self.vertices.windows(2).map(|w| w[0].dist(&w[1])).sum()
    }

    /// Distance from p to the polyline, by brute force.
    pub fn distance(&self, p: Point) -> f64 {
        let pc: Complex64 = p.into();
        self.vertices
            .windows(2)
            .map(|w| {
                let a: Complex64 = w[0].into();
                let b: Complex64 = w[1].into();
                let ab = b - a;
                let t = (((pc - a) * ab.conj()).re / ab.norm_sqr()).clamp(0.0, 1.0);
                (pc - a - ab * t).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn build_prefractal(n: u32) -> Result<PrefractalCurve> {
    if n > MAX_CURVE_LEVEL {
        return Err(Error::Bounds(format!(
            "curve level {n} above {MAX_CURVE_LEVEL}"
        )));
    }
    let mut c = PrefractalCurve {
        level: 0,
        vertices: vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)],
    };
    for _ in 0..n {
        c = c.refine();
    }
    Ok(c)
}

/// Closed level-m snowflake polygon, counterclockwise, first vertex not repeated.
#[derive(Debug, Clone, PartialEq)]
pub struct SnowflakePolygon {
    pub level: u32,
    pub vertices: Vec<Point>,
}

impl SnowflakePolygon {
    /// Shoelace area.
    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        (0..n)
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % n]);
                a.x * b.y - b.x * a.y
            })
            .sum::<f64>()
            / 2.0
    }

    /// Even-odd point-in-polygon test.
    pub fn contains(&self, p: Point) -> bool {
        let v = &self.vertices;
        let mut inside = false;
        let mut j = v.len() - 1;
        for i in 0..v.len() {
            let (a, b) = (v[i], v[j]);
            if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
                inside = !inside;
            }
            j = i;
        }
        inside
    }

    /// No two non-adjacent edges meet. Quadratic; meant for small levels.
    pub fn is_simple(&self) -> bool {
        let v = &self.vertices;
        let n = v.len();
        let orient = |a: Point, b: Point, c: Point| (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        let tol = 1e-12;
        for i in 0..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = (v[j], v[(j + 1) % n]);
                let o1 = orient(a, b, c);
                let o2 = orient(a, b, d);
                let o3 = orient(c, d, a);
                let o4 = orient(c, d, b);
                if o1 * o2 < -tol * tol && o3 * o4 < -tol * tol {
                    return false;
                }
                if c.dist(&a) < tol || c.dist(&b) < tol || d.dist(&a) < tol || d.dist(&b) < tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Prefractal area `√3/4 + (3√3/20)(1 - (4/9)^m)`.
pub fn snowflake_area(m: u32) -> f64 {
    let r3 = crate::SQRT3;
    r3 / 4.0 + 3.0 * r3 / 20.0 * (1.0 - (4.0f64 / 9.0).powi(m as i32))
}

pub fn build_snowflake(m: u32) -> Result<SnowflakePolygon> {
    if m > MAX_SNOWFLAKE_LEVEL {
        return Err(Error::Bounds(format!(
            "snowflake level {m} above {MAX_SNOWFLAKE_LEVEL}"
        )));
    }
    let curve = build_prefractal(m)?;
    let mut vertices = Vec::with_capacity(3 * curve.segments());
    for (a, b) in snowflake_sides() {
        // bump on the right of travel, i.e. outward for a ccw triangle
        for p in &curve.vertices[..curve.vertices.len() - 1] {
            let z = Complex64::new(p.x, -p.y);
            vertices.push((a + (b - a) * z).into());
        }
    }
    Ok(SnowflakePolygon { level: m, vertices })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_levels() {
        let c = build_prefractal(0).unwrap();
        assert_eq!(c.vertices, vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]);
        let c = build_prefractal(1).unwrap();
        let want = [
            (0.0, 0.0),
            (1.0 / 3.0, 0.0),
            (0.5, 0.5 / 3f64.sqrt()),
            (2.0 / 3.0, 0.0),
            (1.0, 0.0),
        ];
        for (p, w) in c.vertices.iter().zip(want) {
            assert!((p.x - w.0).abs() < 1e-15 && (p.y - w.1).abs() < 1e-15);
        }
        assert!((RHO.im - 0.5 / 3f64.sqrt()).abs() < 1e-17);
    }

    #[test]
    fn snowflake_counts() {
        assert_eq!(build_snowflake(2).unwrap().vertices.len(), 48);
        assert!(build_snowflake(11).is_err());
        assert!(build_prefractal(13).is_err());
    }
}
