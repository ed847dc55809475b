//! Exact computations with quadratic algebras, binary quadratic operads and
//! F-structures: Koszul duality, black and white products, a generic
//! Grothendieck–Verdier axiom checker, and spectral-cover diagnostics.

pub mod dsl;
pub mod error;
pub mod fman;
pub mod gv;
pub mod io;
pub mod kernel;
pub mod operad;
pub mod qa;

pub use error::{Error, Result};
pub use kernel::{Matrix, Poly, Rational, Subspace, TruncSeries};

/// Seed used by every randomized check unless another one is given.
pub const DEFAULT_SEED: u64 = 20240617;
