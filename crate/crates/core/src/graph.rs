//! Immutable simple undirected graphs, vertex weights and the small graph
//! families used as patterns and test inputs.

use serde::Serialize;
use thiserror::Error;

use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex set over {universe} ids used with a graph on {n} vertices")]
    UniverseMismatch { universe: usize, n: usize },
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency is kept as one bitset per vertex. Graphs never change after
/// construction; every derived graph is a fresh value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
    m: usize,
}

/// Correspondence between a derived graph and the graph it was taken from.
///
/// `to_old[i]` is the parent id of new vertex `i`; `to_new[v]` is the new id
/// of parent vertex `v`, if it survived. Maps are order preserving.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabel {
    pub to_old: Vec<usize>,
    pub to_new: Vec<Option<usize>>,
}

impl Relabel {
    /// Translates a set of new ids back to parent ids.
    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        VertexSet::from_ids(self.to_new.len(), set.iter().map(|v| self.to_old[v]))
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![VertexSet::new(n); n];
        let mut m = 0;
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u].insert(v) {
                adj[v].insert(u);
                m += 1;
            }
        }
        Ok(Graph { adj, m })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::new(n); n],
            m: 0,
        }
    }

    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Self {
        let m = adj.iter().map(VertexSet::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::OutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn check_set(&self, set: &VertexSet) -> Result<(), GraphError> {
        match set.iter().find(|&v| v >= self.n()) {
            Some(v) => Err(GraphError::OutOfRange { vertex: v, n: self.n() }),
            None if set.universe() != self.n() => Err(GraphError::UniverseMismatch {
                universe: set.universe(),
                n: self.n(),
            }),
            None => Ok(()),
        }
    }

    pub fn neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj[v].clone())
    }

    /// `V \ N(v)`; always contains `v` itself.
    pub fn antineighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj[v].complement())
    }

    /// Subgraph induced by `set`, relabelled to `0..|set|` in increasing id order.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, Relabel), GraphError> {
        self.check_set(set)?;
        let to_old = set.to_vec();
        let mut to_new = vec![None; self.n()];
        for (i, &v) in to_old.iter().enumerate() {
            to_new[v] = Some(i);
        }
        let k = to_old.len();
        let adj = to_old
            .iter()
            .map(|&v| VertexSet::from_ids(k, self.adj[v].intersection(set).iter().map(|u| to_new[u].unwrap())))
            .collect();
        Ok((Graph::from_adjacency(adj), Relabel { to_old, to_new }))
    }

    /// `G - S`.
    pub fn remove_vertices(&self, set: &VertexSet) -> Result<(Graph, Relabel), GraphError> {
        self.check_set(set)?;
        self.induced_subgraph(&set.complement())
    }

    pub fn remove_vertex(&self, v: usize) -> Result<(Graph, Relabel), GraphError> {
        self.check_vertex(v)?;
        self.remove_vertices(&VertexSet::singleton(self.n(), v))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|v| {
                let mut s = self.adj[v].complement();
                s.remove(v);
                s
            })
            .collect();
        Graph::from_adjacency(adj)
    }

    /// `G + H`; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let edges: Vec<_> = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)))
            .collect();
        Graph::new(shift + other.n(), &edges).expect("valid by construction")
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.m == 0
    }

    /// Number of edges with both endpoints in `set`.
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.adj[v].intersection_len(set)).sum::<usize>() / 2
    }

    pub fn is_independent(&self, set: &VertexSet) -> Result<bool, GraphError> {
        self.check_set(set)?;
        Ok(set.iter().all(|v| !self.adj[v].intersects(set)))
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let k = set.len();
        self.edges_within(set) == k * k.saturating_sub(1) / 2
    }

    /// Vertices of `set` together with all their neighbours.
    pub fn closed_neighborhood_of(&self, set: &VertexSet) -> VertexSet {
        let mut out = set.clone();
        for v in set {
            out.union_with(&self.adj[v]);
        }
        out
    }

    pub fn is_dominating(&self, set: &VertexSet) -> Result<bool, GraphError> {
        self.check_set(set)?;
        Ok(self.closed_neighborhood_of(set).len() == self.n())
    }

    /// True iff `set` is independent and every vertex outside it has a
    /// neighbour inside it, i.e. `set` is an independent dominating set.
    pub fn is_maximal_independent(&self, set: &VertexSet) -> Result<bool, GraphError> {
        Ok(self.is_independent(set)? && self.is_dominating(set)?)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(n, 0);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for u in self.adj[v].difference(&seen).iter() {
                seen.insert(u);
                stack.push(u);
            }
        }
        seen.len() == n
    }

    /// Sorted degree sequence, useful as a cheap isomorphism invariant.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Graph", 2)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        st.end()
    }
}

/// A graph with a non-negative integer weight on every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<u64>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<u64>) -> Result<Self, GraphError> {
        if weights.len() != graph.n() {
            return Err(GraphError::WeightCount {
                expected: graph.n(),
                got: weights.len(),
            });
        }
        Ok(WeightedGraph { graph, weights })
    }

    pub fn unit(graph: Graph) -> Self {
        let weights = vec![1; graph.n()];
        WeightedGraph { graph, weights }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn set_weight(&self, set: &VertexSet) -> u64 {
        set.iter().map(|v| self.weights[v]).sum()
    }

    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(WeightedGraph, Relabel), GraphError> {
        let (graph, map) = self.graph.induced_subgraph(set)?;
        let weights = map.to_old.iter().map(|&v| self.weights[v]).collect();
        Ok((WeightedGraph { graph, weights }, map))
    }

    pub fn remove_vertices(&self, set: &VertexSet) -> Result<(WeightedGraph, Relabel), GraphError> {
        self.graph.check_set(set)?;
        self.induced_subgraph(&set.complement())
    }

    pub fn with_weight(&self, v: usize, w: u64) -> WeightedGraph {
        let mut out = self.clone();
        out.weights[v] = w;
        out
    }

    pub fn into_parts(self) -> (Graph, Vec<u64>) {
        (self.graph, self.weights)
    }
}

/// Standard small graphs. Vertex ids follow the order given in each doc line.
pub mod families {
    use super::Graph;

    /// `P_n`: path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    /// `C_n` for `n >= 3`: cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::new(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    /// `K_{1,k}` with centre 0 and leaves `1..=k`.
    pub fn star(k: usize) -> Graph {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::new(k + 1, &edges).unwrap()
    }

    /// `K_2 + K_1`: edge `0 - 1` and isolated vertex 2.
    pub fn k2_plus_k1() -> Graph {
        Graph::new(3, &[(0, 1)]).unwrap()
    }

    /// Domino, 0-indexed from the usual 1..6 drawing:
    /// edges 12,13,24,34,35,46,56. The degree-3 vertices are 2 and 3.
    pub fn domino() -> Graph {
        Graph::new(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap()
    }

    /// Sun_3, 0-indexed from the usual 1..6 drawing: triangle 0,1,2 and
    /// pendants 3 ~ {0,1}, 4 ~ {0,2}, 5 ~ {1,2}.
    pub fn sun3() -> Graph {
        Graph::new(
            6,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 5), (2, 4), (2, 5)],
        )
        .unwrap()
    }

    /// Bull: path 0 - 1 - 2 - 3 with apex 4 adjacent to 1 and 2.
    /// Pendants are 0 and 3; triangle is {1, 2, 4}.
    pub fn bull() -> Graph {
        Graph::new(5, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn build_path() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g, path(3));
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn build_empty() {
        let g = Graph::new(0, &[]).unwrap();
        assert_eq!(g.n(), 0);
        assert!(g.is_complete());
        assert!(g.is_edgeless());
    }

    #[test]
    fn build_rejects_self_loop_and_range() {
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, &[(0, 2)]),
            Err(GraphError::OutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn duplicate_edges_merge() {
        let g = Graph::new(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 0));
    }

    #[test]
    fn induced_prefix_of_path() {
        let (h, map) = path(4).induced_subgraph(&VertexSet::from_ids(4, [0, 1, 2])).unwrap();
        assert_eq!(h, path(3));
        assert_eq!(map.to_old, vec![0, 1, 2]);
        assert_eq!(map.to_new[3], None);
    }

    #[test]
    fn induced_identity() {
        let g = bull();
        let (h, _) = g.induced_subgraph(&g.vertices()).unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn c5_minus_vertex_is_p4() {
        let c5 = cycle(5);
        for v in 0..5 {
            let (h, _) = c5.remove_vertex(v).unwrap();
            assert_eq!(h.edge_count(), 3);
            assert_eq!(h.degree_sequence(), vec![1, 1, 2, 2]);
            assert!(h.is_connected());
        }
    }

    #[test]
    fn remove_examples() {
        let (k2, _) = complete(3).remove_vertex(0).unwrap();
        assert_eq!(k2, complete(2));
        let (e3, _) = star(3).remove_vertex(0).unwrap();
        assert_eq!(e3, Graph::empty(3));
        // P4 minus N(1) = {0, 2} leaves {1, 3}, no edge.
        let p4 = path(4);
        let (h, map) = p4.remove_vertices(&p4.neighborhood(1).unwrap()).unwrap();
        assert_eq!(h, Graph::empty(2));
        assert_eq!(map.to_old, vec![1, 3]);
    }

    #[test]
    fn complement_of_p4_is_p4() {
        let co = path(4).complement();
        assert_eq!(co.edge_count(), 3);
        // 1 - 3 - 0 - 2 is the complement path.
        let (relabelled, _) = co.induced_subgraph(&co.vertices()).unwrap();
        assert!(relabelled.has_edge(1, 3) && relabelled.has_edge(3, 0) && relabelled.has_edge(0, 2));
    }

    #[test]
    fn antineighborhood_of_c5() {
        let c5 = cycle(5);
        let anti = c5.antineighborhood(0).unwrap();
        assert_eq!(anti.to_vec(), vec![0, 2, 3]);
        let (h, _) = c5.induced_subgraph(&anti).unwrap();
        // K2 + K1 with the isolated vertex first.
        assert_eq!(h, Graph::new(3, &[(1, 2)]).unwrap());
    }

    #[test]
    fn maximal_independent_on_c4() {
        let c4 = cycle(4);
        assert!(c4.is_maximal_independent(&VertexSet::from_ids(4, [0, 2])).unwrap());
        assert!(!c4.is_maximal_independent(&VertexSet::from_ids(4, [0])).unwrap());
        assert!(!c4.is_maximal_independent(&VertexSet::from_ids(4, [0, 1])).unwrap());
    }

    #[test]
    fn disjoint_union_shifts() {
        let g = complete(2).disjoint_union(&Graph::empty(1));
        assert_eq!(g, k2_plus_k1());
    }

    #[test]
    fn family_sizes() {
        assert_eq!(domino().edge_count(), 7);
        assert_eq!(sun3().edge_count(), 9);
        assert_eq!(bull().edge_count(), 5);
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(star(3).edge_count(), 3);
    }
}
