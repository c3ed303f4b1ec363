//! Fixed inputs shared by the benchmarks.

use groves::linalg::rat;
use groves::network::{grid_graph, response_matrix, GridNodes};
use groves::{ColorSpec, Network, ResponseMatrix};

/// A `rows x cols` grid with `nodes` boundary nodes spread evenly and
/// conductances cycling through 1, 3/2, 2, 5/2.
pub fn grid(rows: usize, cols: usize, nodes: usize) -> Network {
    let walk = 2 * (rows + cols) - 4;
    let pos = (0..nodes).map(|k| k * walk / nodes).collect();
    let mut k = 0;
    grid_graph(rows, cols, GridNodes::Positions(pos))
        .expect("grid fits its boundary")
        .with_conductances(|_, _| {
            k += 1;
            rat(1 + k % 4, 2)
        })
        .expect("positive conductances")
}

pub fn response(rows: usize, cols: usize, nodes: usize) -> ResponseMatrix {
    response_matrix(&grid(rows, cols, nodes)).expect("connected grid")
}

/// Three arcs of near-equal size.
pub fn balanced_colors(n: usize) -> ColorSpec {
    ColorSpec::from_cuts(n, [0, n / 3, 2 * n / 3]).expect("valid cuts")
}
