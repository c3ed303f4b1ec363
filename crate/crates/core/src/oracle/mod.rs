//! Brute-force ground truth for the closed-form formulas.

mod carroll_speyer;
mod groves;

pub use groves::{enumerate_groves, enumerate_groves_by_subsets, enumerate_groves_with, GroveTable, SUBSET_EDGE_BOUND};
pub use carroll_speyer::{cs_count, cs_partition, forest_count_interior_rooted, forest_count_product_formula};
