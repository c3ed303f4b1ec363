use std::path::Path;

use groves::dimer::{dd_tripartite_prob, dimer_partition_function, gbw, x_matrix, BipartiteNetwork};
use groves::grove::{minor_grove_identity, tripartite_prob, tripartite_prob_via_dual, MinorSets};
use groves::linalg::{format_rational, parse_rational, Matrix};
use groves::network::{apply_transform, dual_response, resistance_matrix, response_matrix, Move};
use groves::oracle::{cs_count, enumerate_groves};
use groves::partition::{grove_prob_generic, project};
use groves::reconstruction::{reconstruct_with, Annotation};
use groves::{ColorSpec, Error, Network, Partition, ResponseMatrix, Result};
use serde_json::{json, Value};

use crate::Command;

pub fn run(cmd: Command) -> Result<Value> {
    match cmd {
        Command::Response { graph } => Ok(response_matrix(&read_network(&graph)?)?.to_json()),
        Command::Resistance { input } => Ok(resistance_matrix(&load(&input)?.response)?.to_json()),
        Command::Dual { input } => Ok(dual_response(&load(&input)?.response)?.to_json()),
        Command::GroveProb { input, colors, partition, via_dual } => {
            let l = load(&input)?.response;
            let sigma = match (colors, partition) {
                (Some(c), _) => ColorSpec::parse(&c, l.n())?.tripartite_partition()?,
                (None, Some(p)) => parse_partition(&p, l.n())?,
                (None, None) => return Err(Error::Parse("give --colors or --partition".into())),
            };
            let pu = if via_dual { tripartite_prob_via_dual(&l, &sigma)? } else { tripartite_prob(&l, &sigma)? };
            Ok(json!({ "partition": sigma.to_string(), "pu": format_rational(&pu.value) }))
        }
        Command::Project { partition } => {
            let p: Partition = partition.parse()?;
            let terms: Vec<Value> = project(&p)
                .terms()
                .map(|(q, c)| json!({ "partition": q.to_string(), "coefficient": c.to_string() }))
                .collect();
            Ok(json!({ "partition": p.to_string(), "terms": terms }))
        }
        Command::Minors { input, a, b, c } => {
            let loaded = load(&input)?;
            let n = loaded.response.n();
            let used: Vec<usize> = a.iter().chain(&b).chain(&c).copied().collect();
            let d: Vec<usize> = (1..=n).filter(|x| !used.contains(x)).collect();
            let sets = MinorSets { a, b, c, d };
            let (det, sum) = match &loaded.network {
                Some(net) => {
                    let table = enumerate_groves(net);
                    minor_grove_identity(&loaded.response, &sets, |p| table.ratio(p))?
                }
                None => minor_grove_identity(&loaded.response, &sets, |p| grove_prob_generic(p, loaded.response.matrix()))?,
            };
            Ok(json!({
                "det": format_rational(&det),
                "grove_sum": format_rational(&sum),
                "equal": det == sum,
            }))
        }
        Command::Reconstruct { response } => {
            let l = load(&response)?.response;
            let ann = Annotation::new(l.n())?;
            let cs = reconstruct_with(&l, &ann)?;
            let edges: Vec<Value> = ann
                .graph
                .edges
                .iter()
                .zip(&cs)
                .map(|(e, c)| {
                    json!({
                        "chord": [e.chord.0, e.chord.1],
                        "ends": [e.ends.0, e.ends.1],
                        "conductance": format_rational(c),
                    })
                })
                .collect();
            let net = ann.graph.network.with_conductances(|k, _| cs[k].clone())?;
            let net: Value = serde_json::from_str(&net.to_json()).expect("valid JSON");
            Ok(json!({ "n": l.n(), "network": net, "edges": edges }))
        }
        Command::DdProb { graph, colors } => {
            let g = BipartiteNetwork::from_json(&read(&graph)?)?;
            let c = ColorSpec::parse(&colors, g.num_nodes())?;
            let x = x_matrix(&g)?;
            let pr = dd_tripartite_prob(&x, &c)?;
            Ok(json!({
                "pairing": c.tripartite_partition()?.to_string(),
                "pr": format_rational(&pr),
                "z_bw": format_rational(&dimer_partition_function(&gbw(&g))),
            }))
        }
        Command::Enumerate { graph } => Ok(enumerate_groves(&read_network(&graph)?).to_json()),
        Command::CarrollSpeyer { n } => {
            let (count, forests) = cs_count(n)?;
            Ok(json!({ "count": count.to_string(), "forests": forests.to_string() }))
        }
        Command::Transform { graph, mv } => {
            let out = apply_transform(&read_network(&graph)?, parse_move(&mv)?)?;
            Ok(serde_json::from_str(&out.to_json()).expect("valid JSON"))
        }
        Command::Selftest { seed, instances } => crate::selftest::run(seed, instances),
    }
}

struct Loaded {
    network: Option<Network>,
    response: ResponseMatrix,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_network(path: &Path) -> Result<Network> {
    Network::from_json(&read(path)?)
}

/// A network file or a response-matrix file, told apart by their keys.
fn load(path: &Path) -> Result<Loaded> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if v.get("vertices").is_some() {
        let net = Network::from_json(&text)?;
        let response = response_matrix(&net)?;
        Ok(Loaded { network: Some(net), response })
    } else {
        Ok(Loaded { network: None, response: read_response(&text)? })
    }
}

/// Either `{"n": .., "L": [[..]]}` or a bare array of rows.
fn read_response(text: &str) -> Result<ResponseMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("response JSON: {e}")))?;
    if !v.is_array() {
        return ResponseMatrix::from_json(text);
    }
    let rows: Vec<Vec<String>> = serde_json::from_value(v).map_err(|e| Error::Parse(format!("response rows: {e}")))?;
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ResponseMatrix::new(Matrix::from_rows(rows)?)
}

fn parse_partition(s: &str, n: usize) -> Result<Partition> {
    let p: Partition = s.parse()?;
    if p.n() != n {
        return Err(Error::Shape(format!("partition covers {} nodes, the network has {n}", p.n())));
    }
    Ok(p)
}

fn parse_move(s: &str) -> Result<Move> {
    let (kind, args) = s.split_once(':').ok_or_else(|| Error::Parse(format!("move {s:?} lacks `kind:args`")))?;
    let nums = args
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad number {x:?} in move"))))
        .collect::<Result<Vec<_>>>()?;
    let arity = |k: usize| {
        if nums.len() == k {
            Ok(())
        } else {
            Err(Error::Parse(format!("move {kind} takes {k} argument(s)")))
        }
    };
    match kind {
        "series" => arity(1).map(|_| Move::Series { vertex: nums[0] }),
        "parallel" => arity(2).map(|_| Move::Parallel { first: nums[0], second: nums[1] }),
        "pendant" => arity(1).map(|_| Move::Pendant { vertex: nums[0] }),
        "wye-delta" => arity(1).map(|_| Move::WyeDelta { vertex: nums[0] }),
        "delta-wye" => arity(3).map(|_| Move::DeltaWye { edges: [nums[0], nums[1], nums[2]] }),
        other => Err(Error::Parse(format!("unknown move {other:?}"))),
    }
}
