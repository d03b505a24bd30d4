use proptest::prelude::*;

use indom::decomposition::{build_tree, find_homogeneous_set, is_module, labels, module_closure};
use indom::format::GraphFile;
use indom::generators::{gnp_filtered, sat_random, substitute, GnpParams};
use indom::oracle::{oracle_constrained, oracle_id, oracle_wid};
use indom::patterns::{is_free, PatternId};
use indom::satgraph::gamma_transform;
use indom::solver::{solve_constrained, solve_wid, Demand};
use indom::{Graph, VertexSet, WeightedGraph};

const CLASS: [PatternId; 2] = [PatternId::P5, PatternId::CoP5];

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn class_graph() -> impl Strategy<Value = Graph> {
    (1usize..=10, 0.1f64..0.9, any::<u64>())
        .prop_map(|(n, p, seed)| gnp_filtered(&GnpParams::new(n, p, &CLASS, seed, 1)).unwrap().remove(0))
}

fn weighted_class_graph() -> impl Strategy<Value = WeightedGraph> {
    class_graph().prop_flat_map(|g| {
        let n = g.n();
        proptest::collection::vec(0u64..=100, n).prop_map(move |w| WeightedGraph::new(g.clone(), w).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn emit_parse_round_trip(g in any_graph(9), w in proptest::collection::vec(0u64..1000, 9)) {
        let plain = GraphFile::unweighted(g.clone());
        prop_assert_eq!(GraphFile::parse(&plain.emit()).unwrap(), plain);
        let weighted = GraphFile { weights: Some(w[..g.n()].to_vec()), graph: g };
        prop_assert_eq!(GraphFile::parse(&weighted.emit()).unwrap(), weighted);
    }

    #[test]
    fn closures_are_modules(g in any_graph(8), x in 0usize..8, y in 0usize..8) {
        prop_assume!(x < g.n() && y < g.n() && x != y);
        let m = module_closure(&g, &VertexSet::from_ids(g.n(), [x, y]));
        prop_assert!(is_module(&g, &m));
        if let Some(h) = find_homogeneous_set(&g) {
            prop_assert!(is_module(&g, &h) && h.len() >= 2 && h.len() < g.n());
        }
    }

    #[test]
    fn solver_matches_oracle(g in weighted_class_graph()) {
        let sol = solve_wid(&g).unwrap();
        let o = oracle_wid(&g).unwrap();
        prop_assert_eq!(sol.weight(), Some(o.value));
        prop_assert_eq!(sol.vertices(), Some(&o.witness));
    }

    #[test]
    fn demands_only_raise_the_optimum(g in weighted_class_graph(), picks in proptest::collection::vec(any::<u16>(), 1..4)) {
        let n = g.n();
        let hitsets: Vec<VertexSet> = picks
            .iter()
            .map(|&bits| VertexSet::from_ids(n, (0..n).filter(|v| bits >> (v % 16) & 1 == 1)))
            .collect();
        let mut previous = solve_wid(&g).unwrap().weight();
        for k in 1..=hitsets.len() {
            let demands: Vec<Demand> = hitsets[..k].iter().cloned().map(Demand::new).collect();
            let got = solve_constrained(&g, &demands).unwrap();
            let want = oracle_constrained(&g, &hitsets[..k]).unwrap();
            prop_assert_eq!(got.weight(), want.map(|o| o.value));
            match (previous, got.weight()) {
                (Some(p), Some(c)) => prop_assert!(c >= p),
                (None, Some(_)) => prop_assert!(false, "a demand made an infeasible problem feasible"),
                _ => {}
            }
            previous = got.weight();
        }
    }

    #[test]
    fn trees_respect_bounds(g in class_graph()) {
        let t = build_tree(&g).unwrap();
        let n = g.n();
        let ls = labels(&t);
        let mut dedup = ls.clone();
        dedup.sort();
        dedup.dedup();
        prop_assert_eq!(dedup.len(), ls.len());
        prop_assert!(t.internal_count <= n * n.saturating_sub(1));
        prop_assert_eq!(build_tree(&g).unwrap(), t);
    }

    #[test]
    fn substitution_keeps_class(h in class_graph(), g in class_graph(), slot in any::<prop::sample::Index>()) {
        let s = slot.index(h.n());
        let (c, m) = substitute(&h, s, &g).unwrap();
        prop_assert!(is_module(&c, &m));
        prop_assert!(is_free(&c, &CLASS));
    }

    #[test]
    fn gamma_adds_one(size_a in 1usize..5, match_b in 1usize..5, p in 0.2f64..0.9, seed in any::<u64>()) {
        let (g, part) = sat_random(size_a, match_b, p, seed);
        let cross = part.cross_edges(&g);
        prop_assume!(!cross.is_empty());
        let (a, b) = cross[cross.len() / 2];
        let t = gamma_transform(&g, &part, a, b).unwrap();
        prop_assert_eq!(oracle_id(&t.graph).unwrap().value, oracle_id(&g).unwrap().value + 1);
    }
}
