//! The three-layer reduction from minimum domination to weighted
//! independent domination on sat-graphs, and its desk-scale validation.
//!
//! Every source vertex `v` becomes a path `v1 - v2 - v3` with weights
//! `1, 2, 2n`. Each source edge `w - v` adds the cross edges `w2 - v3` and
//! `w3 - v2`, and the `v3` layer is a clique. Dominating sets of size `k`
//! correspond to independent dominating sets of weight `n + k`.

use serde::Serialize;

use crate::graph::{Graph, WeightedGraph};
use crate::oracle::{self, OracleError};
use crate::patterns::{find_induced, is_free, Occurrence, PatternId};
use crate::satgraph::{verify_sat_partition, SatPartition, SatViolation};
use crate::vertex_set::VertexSet;

/// Largest source accepted by [`check_reduction_equivalence`].
pub const EQUIVALENCE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WidReduction {
    pub source: Graph,
    pub target: WeightedGraph,
    pub claimed_partition: SatPartition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layers {
    pub v1: usize,
    pub v2: usize,
    pub v3: usize,
}

impl WidReduction {
    /// Target ids of a source vertex: layer `i` occupies `(i-1)*n .. i*n`.
    pub fn layers(&self, v: usize) -> Layers {
        let n = self.source.n();
        Layers {
            v1: v,
            v2: n + v,
            v3: 2 * n + v,
        }
    }

    /// The independent dominating set `{v2 : v in D} ∪ {v1 : v not in D}`.
    pub fn ids_from_dominating_set(&self, dominating: &VertexSet) -> VertexSet {
        let n = self.source.n();
        VertexSet::from_ids(
            3 * n,
            (0..n).map(|v| {
                let l = self.layers(v);
                if dominating.contains(v) {
                    l.v2
                } else {
                    l.v1
                }
            }),
        )
    }

    /// Source vertices whose middle copy is in `ids`.
    pub fn dominating_set_from_ids(&self, ids: &VertexSet) -> VertexSet {
        let n = self.source.n();
        VertexSet::from_ids(n, (0..n).filter(|&v| ids.contains(self.layers(v).v2)))
    }
}

pub fn build_wid_reduction(source: &Graph) -> WidReduction {
    let n = source.n();
    let (l1, l2, l3) = (0, n, 2 * n);
    let mut edges = Vec::with_capacity(2 * n + 2 * source.edge_count() + n * n.saturating_sub(1) / 2);
    for v in 0..n {
        edges.push((l1 + v, l2 + v));
        edges.push((l2 + v, l3 + v));
    }
    for (w, v) in source.edges() {
        edges.push((l2 + w, l3 + v));
        edges.push((l3 + w, l2 + v));
    }
    for w in 0..n {
        for v in w + 1..n {
            edges.push((l3 + w, l3 + v));
        }
    }
    let graph = Graph::new(3 * n, &edges).expect("valid by construction");
    let weights = (0..3 * n)
        .map(|id| match id / n.max(1) {
            0 => 1,
            1 => 2,
            _ => 2 * n as u64,
        })
        .collect();
    let a = VertexSet::from_ids(3 * n, l3..l3 + n);
    let b = a.complement();
    let claimed_partition = SatPartition::new(&graph, a, b).expect("layer partition is a sat-partition");
    WidReduction {
        source: source.clone(),
        target: WeightedGraph::new(graph, weights).unwrap(),
        claimed_partition,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionClassReport {
    pub sat_partition: Result<(), SatViolation>,
    pub c4_occurrence: Option<Occurrence>,
    pub sun3_occurrence: Option<Occurrence>,
    /// Whether the source avoids C3, C4, C5 and C6; the target is only
    /// guaranteed Sun_3-free under that premise.
    pub source_short_cycle_free: bool,
}

impl ReductionClassReport {
    pub fn is_ok(&self) -> bool {
        self.sat_partition.is_ok()
            && self.c4_occurrence.is_none()
            && (self.sun3_occurrence.is_none() || !self.source_short_cycle_free)
    }
}

pub fn check_reduction_class(r: &WidReduction) -> ReductionClassReport {
    let target = r.target.graph();
    ReductionClassReport {
        sat_partition: verify_sat_partition(target, &r.claimed_partition.a, &r.claimed_partition.b),
        c4_occurrence: find_induced(target, PatternId::C4),
        sun3_occurrence: find_induced(target, PatternId::Sun3),
        source_short_cycle_free: is_free(&r.source, &[PatternId::C3, PatternId::C4, PatternId::C5, PatternId::C6]),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub gamma_dom: u64,
    pub idw_target: u64,
    pub equal: bool,
    pub dominating_witness: VertexSet,
    pub ids_witness: VertexSet,
}

/// Computes the domination number of `g` and the weighted independent
/// domination number of its reduction, both by brute force.
pub fn check_reduction_equivalence(g: &Graph) -> Result<EquivalenceReport, OracleError> {
    if g.n() > EQUIVALENCE_LIMIT {
        return Err(OracleError::TooLarge {
            n: g.n(),
            limit: EQUIVALENCE_LIMIT,
        });
    }
    let r = build_wid_reduction(g);
    let dom = oracle::oracle_min_dominating(g)?;
    let wid = oracle::oracle_wid_bounded(&r.target, 3 * EQUIVALENCE_LIMIT)?;
    Ok(EquivalenceReport {
        gamma_dom: dom.value,
        idw_target: wid.value,
        equal: wid.value == g.n() as u64 + dom.value,
        dominating_witness: dom.witness,
        ids_witness: wid.witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn p4_reduction_shape() {
        let r = build_wid_reduction(&path(4));
        assert_eq!(r.target.n(), 12);
        assert_eq!(r.target.graph().edge_count(), 20);
        let l3 = r.layers(0).v3;
        assert_eq!(r.target.weight(l3), 8);
        assert_eq!(r.target.weight(r.layers(2).v2), 2);
        assert_eq!(r.target.weight(r.layers(3).v1), 1);
        // Cross edges for source edge a-b.
        let (a, b) = (r.layers(0), r.layers(1));
        assert!(r.target.graph().has_edge(a.v2, b.v3));
        assert!(r.target.graph().has_edge(a.v3, b.v2));
        assert!(!r.target.graph().has_edge(a.v2, b.v2));
    }

    #[test]
    fn k1_reduction_is_weighted_path() {
        let r = build_wid_reduction(&Graph::empty(1));
        assert_eq!(r.target.graph(), &path(3));
        assert_eq!(r.target.weights(), &[1, 2, 2]);
    }

    #[test]
    fn two_isolated_vertices() {
        let r = build_wid_reduction(&Graph::empty(2));
        let expected = Graph::new(6, &[(0, 2), (2, 4), (1, 3), (3, 5), (4, 5)]).unwrap();
        assert_eq!(r.target.graph(), &expected);
        assert_eq!(r.target.weights(), &[1, 1, 2, 2, 4, 4]);
    }

    #[test]
    fn edge_count_formula() {
        for g in [path(5), cycle(7), star(4), Graph::empty(0)] {
            let n = g.n();
            let r = build_wid_reduction(&g);
            assert_eq!(
                r.target.graph().edge_count(),
                2 * n + 2 * g.edge_count() + n * n.saturating_sub(1) / 2
            );
        }
    }

    #[test]
    fn class_checks() {
        let report = check_reduction_class(&build_wid_reduction(&path(4)));
        assert!(report.is_ok());
        assert!(report.sun3_occurrence.is_none());

        let c6 = check_reduction_class(&build_wid_reduction(&cycle(6)));
        assert!(c6.sat_partition.is_ok());
        assert!(c6.c4_occurrence.is_none());
        let occ = c6.sun3_occurrence.clone().expect("C6 source yields a Sun_3");
        assert!(occ.verify(build_wid_reduction(&cycle(6)).target.graph()));
        assert!(!c6.source_short_cycle_free);
        assert!(c6.is_ok());
    }

    #[test]
    fn equivalence_examples() {
        let p4 = check_reduction_equivalence(&path(4)).unwrap();
        assert_eq!((p4.gamma_dom, p4.idw_target, p4.equal), (2, 6, true));
        let k1 = check_reduction_equivalence(&Graph::empty(1)).unwrap();
        assert_eq!((k1.gamma_dom, k1.idw_target), (1, 2));
        assert_eq!(k1.ids_witness.to_vec(), vec![1]);
        let e3 = check_reduction_equivalence(&Graph::empty(3)).unwrap();
        assert_eq!((e3.gamma_dom, e3.idw_target), (3, 6));
        assert_eq!(e3.ids_witness.to_vec(), vec![3, 4, 5]);
        assert!(check_reduction_equivalence(&Graph::empty(11)).is_err());
    }

    #[test]
    fn correspondence_round_trip() {
        let g = path(4);
        let r = build_wid_reduction(&g);
        let d = VertexSet::from_ids(4, [1, 2]);
        let ids = r.ids_from_dominating_set(&d);
        assert!(r.target.graph().is_maximal_independent(&ids).unwrap());
        assert_eq!(r.target.set_weight(&ids), 4 + 2);
        assert_eq!(r.dominating_set_from_ids(&ids), d);
    }
}
