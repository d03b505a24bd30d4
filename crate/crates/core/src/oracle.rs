//! Brute-force ground truth: maximal independent set enumeration, minimum
//! (weight) independent dominating sets, constrained variants and minimum
//! dominating sets. Everything here is exponential and size-gated.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, WeightedGraph};
use crate::vertex_set::VertexSet;

/// Default vertex bound for the enumeration oracles.
pub const DEFAULT_LIMIT: usize = 25;

/// Hard ceiling: the enumerator works on 64-bit masks.
const MASK_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle limit is {limit}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub value: u64,
    pub witness: VertexSet,
    /// Number of candidate sets examined.
    pub enumeration_size: usize,
}

fn check_limit(n: usize, limit: usize) -> Result<(), OracleError> {
    let limit = limit.min(MASK_BITS);
    if n > limit {
        Err(OracleError::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// All maximal independent sets under the default size bound, sorted.
pub fn enumerate_mis(g: &Graph) -> Result<Vec<VertexSet>, OracleError> {
    enumerate_mis_bounded(g, DEFAULT_LIMIT)
}

/// All maximal independent sets, sorted by their id sequences.
///
/// Bron–Kerbosch with pivoting on the complement graph: `chosen` is an
/// independent set, `candidates` are vertices still addable, `excluded`
/// are addable vertices already covered by an earlier branch.
pub fn enumerate_mis_bounded(g: &Graph, limit: usize) -> Result<Vec<VertexSet>, OracleError> {
    let n = g.n();
    check_limit(n, limit)?;
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, u| m | 1 << u))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut masks = Vec::new();
    bron_kerbosch(&adj, 0, all, 0, &mut masks);
    let mut sets: Vec<VertexSet> = masks
        .into_iter()
        .map(|m| VertexSet::from_ids(n, (0..n).filter(|&v| m >> v & 1 == 1)))
        .collect();
    sets.sort();
    for s in &sets {
        assert!(
            g.is_maximal_independent(s).unwrap(),
            "enumerator produced a non-maximal set {s:?}"
        );
    }
    Ok(sets)
}

fn bron_kerbosch(adj: &[u64], chosen: u64, candidates: u64, excluded: u64, out: &mut Vec<u64>) {
    if candidates == 0 {
        if excluded == 0 {
            out.push(chosen);
        }
        return;
    }
    // Pivot: the vertex of P ∪ X with the most non-neighbours in P.
    let union = candidates | excluded;
    let mut pivot = 0;
    let mut best = -1i32;
    let mut rest = union;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let cover = (candidates & !adj[u] & !(1 << u)).count_ones() as i32;
        if cover > best {
            best = cover;
            pivot = u;
        }
    }
    // Branch on the pivot itself and on candidates it does not block.
    let mut branch = candidates & (adj[pivot] | 1 << pivot);
    let mut candidates = candidates;
    let mut excluded = excluded;
    while branch != 0 {
        let v = branch.trailing_zeros() as usize;
        branch &= branch - 1;
        let keep = !(adj[v] | 1 << v);
        bron_kerbosch(adj, chosen | 1 << v, candidates & keep, excluded & keep, out);
        candidates &= !(1 << v);
        excluded |= 1 << v;
    }
}

/// Minimum weight independent dominating set.
pub fn oracle_wid(g: &WeightedGraph) -> Result<OracleReport, OracleError> {
    oracle_wid_bounded(g, DEFAULT_LIMIT)
}

pub fn oracle_wid_bounded(g: &WeightedGraph, limit: usize) -> Result<OracleReport, OracleError> {
    oracle_constrained_bounded(g, &[], limit).map(|r| r.expect("every graph has a maximal independent set"))
}

/// Minimum independent dominating set (unit weights).
pub fn oracle_id(g: &Graph) -> Result<OracleReport, OracleError> {
    oracle_wid(&WeightedGraph::unit(g.clone()))
}

/// Minimum weight maximal independent set meeting every hitset, or `None`
/// if no maximal independent set does. Ties go to the smallest id sequence.
pub fn oracle_constrained(g: &WeightedGraph, hitsets: &[VertexSet]) -> Result<Option<OracleReport>, OracleError> {
    oracle_constrained_bounded(g, hitsets, DEFAULT_LIMIT)
}

pub fn oracle_constrained_bounded(
    g: &WeightedGraph,
    hitsets: &[VertexSet],
    limit: usize,
) -> Result<Option<OracleReport>, OracleError> {
    let all = enumerate_mis_bounded(g.graph(), limit)?;
    let enumeration_size = all.len();
    // `all` is sorted, so the first minimum is the lexicographically smallest.
    let best = all
        .into_iter()
        .filter(|s| hitsets.iter().all(|h| h.intersects(s)))
        .map(|s| (g.set_weight(&s), s))
        .min_by(|a, b| a.0.cmp(&b.0));
    Ok(best.map(|(value, witness)| OracleReport {
        value,
        witness,
        enumeration_size,
    }))
}

/// Minimum dominating set by subset enumeration in increasing size; the
/// first dominating subset in lexicographic order wins.
pub fn oracle_min_dominating(g: &Graph) -> Result<OracleReport, OracleError> {
    oracle_min_dominating_bounded(g, DEFAULT_LIMIT)
}

pub fn oracle_min_dominating_bounded(g: &Graph, limit: usize) -> Result<OracleReport, OracleError> {
    let n = g.n();
    check_limit(n, limit)?;
    let closed: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, u| m | 1 << u))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut examined = 0;
    for size in 0..=n {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            examined += 1;
            let covered = combo.iter().fold(0u64, |m, &v| m | closed[v]);
            if covered == all {
                return Ok(OracleReport {
                    value: size as u64,
                    witness: VertexSet::from_ids(n, combo),
                    enumeration_size: examined,
                });
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    unreachable!("V dominates itself")
}

/// Advances `combo` to the next k-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    /// Second enumeration route: test every subset directly.
    fn mis_by_subsets(g: &Graph) -> Vec<VertexSet> {
        let n = g.n();
        let mut out: Vec<VertexSet> = (0u32..1 << n)
            .map(|m| VertexSet::from_ids(n, (0..n).filter(|&v| m >> v & 1 == 1)))
            .filter(|s| g.is_maximal_independent(s).unwrap())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn c5_has_five_mis() {
        let sets = enumerate_mis(&cycle(5)).unwrap();
        assert_eq!(sets.len(), 5);
        assert!(sets.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn complete_and_edgeless() {
        let sets = enumerate_mis(&complete(6)).unwrap();
        assert_eq!(sets.len(), 6);
        assert!(sets.iter().all(|s| s.len() == 1));
        let sets = enumerate_mis(&Graph::empty(7)).unwrap();
        assert_eq!(sets, vec![VertexSet::full(7)]);
        assert_eq!(enumerate_mis(&Graph::empty(0)).unwrap(), vec![VertexSet::new(0)]);
    }

    #[test]
    fn size_bound() {
        assert_eq!(
            enumerate_mis(&Graph::empty(26)),
            Err(OracleError::TooLarge { n: 26, limit: 25 })
        );
        assert!(enumerate_mis_bounded(&Graph::empty(26), 30).is_ok());
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(0..=10);
            let p = rng.gen_range(0.1..0.9);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::new(n, &edges).unwrap();
            assert_eq!(enumerate_mis(&g).unwrap(), mis_by_subsets(&g));
        }
    }

    #[test]
    fn named_independent_domination_numbers() {
        let r = oracle_id(&domino()).unwrap();
        assert_eq!(r.value, 2);
        let r = oracle_id(&sun3()).unwrap();
        assert_eq!(r.value, 2);
        // {1, 6} in the 1-indexed drawing.
        assert!(enumerate_mis(&sun3())
            .unwrap()
            .contains(&VertexSet::from_ids(6, [0, 5])));
    }

    #[test]
    fn weighted_p4() {
        // MIS of P4: {0,2}, {0,3}, {1,3}; weights 10,1,1,10 give 11, 20, 11.
        let g = WeightedGraph::new(path(4), vec![10, 1, 1, 10]).unwrap();
        let r = oracle_wid(&g).unwrap();
        assert_eq!(r.value, 11);
        assert_eq!(r.witness.to_vec(), vec![0, 2]);
        assert_eq!(r.enumeration_size, 3);
    }

    #[test]
    fn unit_weights_match_id() {
        let g = bull();
        assert_eq!(
            oracle_wid(&WeightedGraph::unit(g.clone())).unwrap(),
            oracle_id(&g).unwrap()
        );
    }

    #[test]
    fn constrained_filters() {
        let g = WeightedGraph::new(complete(2), vec![5, 1]).unwrap();
        let r = oracle_constrained(&g, &[VertexSet::singleton(2, 0)]).unwrap().unwrap();
        assert_eq!((r.value, r.witness.to_vec()), (5, vec![0]));
        let none = oracle_constrained(&g, &[VertexSet::new(2)]).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn domination_numbers() {
        assert_eq!(oracle_min_dominating(&path(4)).unwrap().value, 2);
        assert_eq!(oracle_min_dominating(&complete(5)).unwrap().value, 1);
        let r = oracle_min_dominating(&cycle(6)).unwrap();
        assert_eq!(r.value, 2);
        assert!(cycle(6).is_dominating(&r.witness).unwrap());
        assert_eq!(oracle_min_dominating(&Graph::empty(0)).unwrap().value, 0);
    }
}
