//! Exact computation with alternating forms and multivectors on `R^n`:
//! exterior algebra, `GL`-orbit invariants, orbit catalogs and the orbit
//! count table for `n <= 9`.

pub mod blade;
pub mod catalog;
pub mod error;
pub mod expr;
pub mod exterior;
pub mod matrix;
pub mod orbit;
pub mod random;
pub mod scalar;
pub mod selfcheck;

pub use blade::Blade;
pub use error::{Error, Result};
pub use expr::{format_with, parse, parse_expr, BladeStyle};
pub use exterior::{GlElement, KForm, KVector, VolumeForm};
pub use matrix::Matrix;
pub use scalar::Scalar;
