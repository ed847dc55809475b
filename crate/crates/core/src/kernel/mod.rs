//! Exact rational linear algebra and polynomial arithmetic.
//!
//! Every other module sits on top of this one. Nothing here touches
//! floating point.

mod matrix;
mod poly;
mod rational;
mod series;
mod subspace;

pub use matrix::{kron, Matrix};
pub use poly::Poly;
pub use rational::{parse_rational, rat, Rational};
pub use series::TruncSeries;
pub use subspace::Subspace;

pub(crate) use rational::serde_rational;
