//! Exact scalars and dense matrix kernels.

pub mod matrix;
pub mod pfaffian;
pub mod poly;
pub mod scalar;
pub mod unipoly;

pub use matrix::Matrix;
pub use pfaffian::{pfaffian, pfaffianoid, pfaffianoid_direct, AntisymmetricMatrix};
pub use poly::{Monomial, MultiPoly, Var};
pub use scalar::{format_rational, int, parse_rational, rat, Rational, Scalar};
pub use unipoly::UniPoly;
