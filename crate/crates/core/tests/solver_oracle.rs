use indom::generators::{generate, rng, GenSpec};
use indom::oracle::{oracle_constrained, oracle_wid};
use indom::patterns::PatternId;
use indom::solver::{solve_constrained, solve_naive_eq1, solve_wid, Demand, Solution};
use indom::VertexSet;
use rand::Rng;

fn class_corpus(seed: u64, count: usize, n_max: usize) -> GenSpec {
    GenSpec::GnpFiltered {
        n_min: 1,
        n_max,
        p_min: 0.15,
        p_max: 0.85,
        forbidden: vec![PatternId::P5, PatternId::CoP5],
        seed,
        count,
        max_weight: Some(100),
    }
}

#[test]
fn weighted_solver_matches_oracle() {
    for inst in generate(&class_corpus(101, 300, 11)).unwrap() {
        let g = inst.weighted();
        let got = solve_wid(&g).unwrap();
        let want = oracle_wid(&g).unwrap();
        assert_eq!(got.weight(), Some(want.value), "{}: {:?}", inst.name, inst.graph);
        assert_eq!(got.vertices(), Some(&want.witness), "{}", inst.name);
    }
}

#[test]
fn constrained_solver_matches_oracle() {
    let mut r = rng(7);
    for inst in generate(&class_corpus(202, 300, 10)).unwrap() {
        let g = inst.weighted();
        let n = g.n();
        let hitsets: Vec<VertexSet> = (0..r.gen_range(0..=3))
            .map(|_| {
                let p = r.gen_range(0.1..0.5);
                VertexSet::from_ids(n, (0..n).filter(|_| r.gen_bool(p)))
            })
            .collect();
        let demands: Vec<Demand> = hitsets.iter().cloned().map(Demand::new).collect();
        let got = solve_constrained(&g, &demands).unwrap();
        match oracle_constrained(&g, &hitsets).unwrap() {
            None => assert_eq!(got, Solution::Infeasible, "{}", inst.name),
            Some(o) => {
                assert_eq!(
                    got.weight(),
                    Some(o.value),
                    "{} {:?} {:?}",
                    inst.name,
                    inst.graph,
                    hitsets
                );
                assert_eq!(got.vertices(), Some(&o.witness));
            }
        }
    }
}

#[test]
fn substitution_composites_match_oracle() {
    let spec = GenSpec::Substitution {
        n_max: 18,
        seed: 303,
        count: 60,
        max_weight: Some(100),
    };
    for inst in generate(&spec).unwrap() {
        let g = inst.weighted();
        assert_eq!(
            solve_wid(&g).unwrap().weight(),
            Some(oracle_wid(&g).unwrap().value),
            "{}",
            inst.name
        );
    }
}

#[test]
fn naive_mode_never_beats_the_optimum_witness() {
    for inst in generate(&class_corpus(404, 100, 9)).unwrap() {
        let g = inst.weighted();
        let naive = solve_naive_eq1(&g).unwrap();
        let opt = oracle_wid(&g).unwrap().value;
        assert!(naive.witness_is_mis);
        assert!(naive.witness_weight >= opt);
    }
}
