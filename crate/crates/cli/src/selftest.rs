use groves::grove::{tripartite_prob, tripartite_prob_via_dual};
use groves::linalg::rat;
use groves::network::{grid_graph, response_matrix, GridNodes};
use groves::oracle::enumerate_groves;
use groves::{ColorSpec, Error, Partition, Result};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Random grids with 4 to 7 nodes and small rational conductances; every
/// tripartite partition is evaluated directly and through the dual, and
/// compared with enumeration.
pub fn run(seed: u64, instances: usize) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0usize;
    let mut failures = Vec::new();
    for k in 0..instances {
        let (rows, cols) = [(2, 3), (3, 3), (3, 4), (2, 4)][rng.gen_range(0..4)];
        let walk = 2 * (rows + cols) - 4;
        let count = rng.gen_range(4..=walk.min(7));
        let mut positions = sample(&mut rng, walk, count).into_vec();
        positions.sort_unstable();
        let net = grid_graph(rows, cols, GridNodes::Positions(positions))?
            .with_conductances(|_, _| rat(rng.gen_range(1..=5), rng.gen_range(1..=3)))?;
        let l = response_matrix(&net)?;
        let table = enumerate_groves(&net);
        for sigma in Partition::all_planar(count) {
            if ColorSpec::colorings_for(&sigma).is_empty() {
                continue;
            }
            let want = table.ratio(&sigma)?;
            for (method, got) in [("direct", tripartite_prob(&l, &sigma)?), ("dual", tripartite_prob_via_dual(&l, &sigma)?)] {
                checks += 1;
                if got.value != want {
                    failures.push(json!({ "instance": k, "partition": sigma.to_string(), "method": method }));
                }
            }
        }
    }
    if !failures.is_empty() {
        return Err(Error::Invariant(format!("{} of {checks} checks failed: {}", failures.len(), Value::from(failures))));
    }
    Ok(json!({ "seed": seed, "instances": instances, "checks": checks, "failures": 0 }))
}
