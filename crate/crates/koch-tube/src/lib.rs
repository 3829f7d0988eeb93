//! Inner tube formula for the Koch snowflake.
//!
//! The area of the inner ε-neighbourhood of the snowflake domain Ω is
//! `V(ε) = G1(ε) ε^(2-D) + G2(ε) ε²` with `D = log3 4` and `G1`, `G2`
//! multiplicatively periodic of period 3. This crate evaluates that formula
//! two ways (closed forms and Fourier series) and checks both against a
//! Monte Carlo estimate taken directly on the fractal.
//!
//! Module map:
//!
//! - [`geometry`]: prefractal curves, IFS distance queries, the Monte Carlo oracle.
//! - [`scaling`]: ε ↔ x bookkeeping and piece counts.
//! - [`prelim`]: the over-counting area `Ṽ` and its Fourier series.
//! - [`errorblock`]: crest areas, the block area `B`, block counts and the error `E`.
//! - [`cantor`]: the formed fraction `h`, the constant `μ` and its Fourier table.
//! - [`tube`]: coefficient tables, `G1`/`G2`, `V` and the complex dimensions.
//! - [`cli`]: the command runner used by the `koch-tube` binary.

pub mod cantor;
pub mod cli;
pub mod error;
pub mod errorblock;
pub mod geometry;
pub mod prelim;
pub mod quad;
pub mod scaling;
pub mod tube;
pub mod validate;

pub use error::{Error, Result};

/// Minkowski dimension `log 4 / log 3`.
pub const DIM: f64 = 1.261_859_507_142_914_8;

/// Oscillatory period `2π / log 3`.
pub const PERIOD: f64 = 5.719_201_734_760_253_5;

/// `log 3`.
pub const LN3: f64 = 1.098_612_288_668_109_8;

/// `√3`.
pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Largest admissible ε, `3^(-1/2)`.
pub const EPS_MAX: f64 = 0.577_350_269_189_625_8;
