//! Exact grove and double-dimer connection probabilities on circular planar
//! networks, with brute-force oracles for cross-checking.
//!
//! ```
//! use groves::grove::tripartite_pairing_prob;
//! use groves::network::{grid_graph, response_matrix, GridNodes};
//! use groves::ColorSpec;
//!
//! let net = grid_graph(3, 3, GridNodes::Positions(vec![0, 1, 2, 4, 5, 6])).unwrap();
//! let l = response_matrix(&net).unwrap();
//! let c = ColorSpec::parse("R=1-2,G=3-4,B=5-6", 6).unwrap();
//! assert_eq!(tripartite_pairing_prob(&l, &c).unwrap().value.to_string(), "13/30");
//! ```

pub mod dimer;
pub mod error;
pub mod grove;
pub mod linalg;
pub mod network;
pub mod oracle;
pub mod partition;
pub mod reconstruction;

pub use error::{Error, Result};
pub use linalg::{AntisymmetricMatrix, Matrix, MultiPoly, Rational, Scalar, UniPoly, Var};
pub use partition::{Color, ColorSpec, Partition, PartitionSum};
pub use network::{Network, ResistanceMatrix, ResponseMatrix};
