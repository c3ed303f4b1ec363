use groves::grove::{pairing_pfaffian, tripartite_pairing_prob};
use groves::linalg::{pfaffian, pfaffianoid, pfaffianoid_direct, rat, AntisymmetricMatrix};
use groves::network::{apply_transform, grid_graph, response_matrix, Edge, GridNodes, Move};
use groves::partition::{project, project_by};
use groves::{Color, ColorSpec, Matrix, Network, Partition, Rational};
use proptest::prelude::*;

fn antisymmetric(n: usize, vals: &[(i64, i64)]) -> AntisymmetricMatrix<Rational> {
    let mut it = vals.iter().cycle();
    AntisymmetricMatrix::from_upper(n, |_, _| {
        let &(a, b) = it.next().unwrap();
        rat(a, b)
    })
}

fn entries() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..=9, 1i64..=4), 28)
}

fn conductances() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((1i64..=6, 1i64..=4), 24)
}

fn grid(nodes: Vec<usize>, cs: &[(i64, i64)]) -> Network {
    let mut it = cs.iter().cycle();
    grid_graph(3, 3, GridNodes::Positions(nodes))
        .unwrap()
        .with_conductances(|_, _| {
            let &(a, b) = it.next().unwrap();
            rat(a, b)
        })
        .unwrap()
}

fn node_positions() -> impl Strategy<Value = Vec<usize>> {
    prop::sample::subsequence((0..8).collect::<Vec<_>>(), 4..=8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pfaffian_squared_is_determinant(half in 1usize..=4, vals in entries()) {
        let m = antisymmetric(2 * half, &vals);
        let pf = pfaffian(&m).unwrap();
        prop_assert_eq!(&pf * &pf, m.as_matrix().det().unwrap());
    }

    #[test]
    fn pfaffianoid_matches_near_pairings(k in 1usize..=3, vals in entries()) {
        let m = antisymmetric(2 * k + 1, &vals);
        prop_assert_eq!(pfaffianoid(&m).unwrap(), pfaffianoid_direct(&m).unwrap());
    }

    #[test]
    fn projection_ignores_order(n in 2usize..=7, pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let all = Partition::all(n);
        let t = pick.get(&all);
        let mut state = seed | 1;
        let got = project_by(t, &mut |k| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % k as u64) as usize
        });
        prop_assert_eq!(got, project(t));
    }

    #[test]
    fn pairing_pfaffian_is_rotation_invariant(nodes in node_positions(), cs in conductances(), cut in any::<prop::sample::Index>()) {
        let n = nodes.len();
        let l = response_matrix(&grid(nodes, &cs)).unwrap();
        let specs: Vec<ColorSpec> = (0..n)
            .flat_map(|a| (a..n).flat_map(move |b| (b..n).map(move |c| [a, b, c])))
            .filter_map(|cuts| ColorSpec::from_cuts(n, cuts).ok())
            .filter(|c| c.tripartite_partition().is_ok_and(|s| s.parts().iter().all(|p| p.len() == 2)))
            .collect();
        prop_assume!(!specs.is_empty());
        let spec = cut.get(&specs);
        let base = tripartite_pairing_prob(&l, spec).unwrap().value;
        for s in 1..n {
            let rotated = Matrix::from_fn(n, n, |i, j| l.matrix()[((i + s) % n, (j + s) % n)].clone());
            let colors: Vec<Color> = (0..n).map(|i| spec.color((i + s) % n + 1)).collect();
            prop_assert_eq!(pairing_pfaffian(&rotated, &ColorSpec::new(colors).unwrap()).unwrap(), base.clone());
        }
    }

    #[test]
    fn series_and_parallel_preserve_response(nodes in node_positions(), cs in conductances(), e in 0usize..12) {
        let net = grid(nodes, &cs);
        let want = response_matrix(&net).unwrap();
        let v = net.vertices();
        let mut edges = net.edges().to_vec();
        let old = edges[e].clone();
        let c = old.conductance.clone();
        edges[e] = Edge { u: old.u, v: v + 1, conductance: c.clone() };
        edges.push(Edge { u: v + 1, v: old.v, conductance: &c * rat(2, 1) });
        edges.push(Edge { u: old.u, v: v + 1, conductance: c });
        let decorated = Network::new(v + 1, edges, net.nodes().to_vec()).unwrap();
        let k = decorated.edges().len();
        let merged = apply_transform(&decorated, Move::Parallel { first: e, second: k - 1 }).unwrap();
        let reduced = apply_transform(&merged, Move::Series { vertex: v + 1 }).unwrap();
        prop_assert_eq!(response_matrix(&reduced).unwrap(), want);
    }
}
