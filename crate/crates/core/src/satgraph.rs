//! Sat-partitions (a clique `A` plus an induced perfect matching `B` with no
//! triangle using one `A` vertex and a matched pair), the edge-splitting
//! gadget and its exhaustive application, and the structural checkers that
//! go with them.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::patterns::{find_all_induced, PatternId};
use crate::vertex_set::VertexSet;

/// Default vertex bound for [`find_sat_partition`].
pub const DEFAULT_RECOGNITION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SatPartition {
    pub a: VertexSet,
    pub b: VertexSet,
    /// The B-edges, as `(u, v)` with `u < v`, sorted.
    pub matching: Vec<(usize, usize)>,
}

impl SatPartition {
    /// Validates `(a, b)` against `g` and derives the matching.
    pub fn new(g: &Graph, a: VertexSet, b: VertexSet) -> Result<Self, SatViolation> {
        verify_sat_partition(g, &a, &b)?;
        let matching = b
            .iter()
            .flat_map(|u| {
                g.neighbors(u)
                    .intersection(&b)
                    .to_vec()
                    .into_iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect();
        Ok(SatPartition { a, b, matching })
    }

    /// Number of B-edges.
    pub fn s(&self) -> usize {
        self.matching.len()
    }

    /// Matching partner of a B vertex.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.matching.iter().find_map(|&(x, y)| {
            if x == v {
                Some(y)
            } else if y == v {
                Some(x)
            } else {
                None
            }
        })
    }

    /// A–B edges of `g` in lexicographic `(a, b)` order.
    pub fn cross_edges(&self, g: &Graph) -> Vec<(usize, usize)> {
        self.a
            .iter()
            .flat_map(|a| {
                g.neighbors(a)
                    .intersection(&self.b)
                    .to_vec()
                    .into_iter()
                    .map(move |b| (a, b))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum SatViolation {
    #[error("not a partition of the vertex set (vertex {vertex})")]
    NotPartition { vertex: usize },
    #[error("A is not a clique: {x} and {y} are non-adjacent")]
    ANotClique { x: usize, y: usize },
    #[error("B is not an induced perfect matching: vertex {vertex} has {degree} neighbours in B")]
    BNotMatching { vertex: usize, degree: usize },
    #[error("triangle ({a}, {b}, {b2}) with a in A and b, b' in B")]
    Triangle { a: usize, b: usize, b2: usize },
}

/// Checks the four sat-partition conditions, reporting the first failure.
pub fn verify_sat_partition(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<(), SatViolation> {
    let n = g.n();
    if a.universe() != n || b.universe() != n {
        return Err(SatViolation::NotPartition { vertex: n });
    }
    if let Some(v) = a.intersection(b).first() {
        return Err(SatViolation::NotPartition { vertex: v });
    }
    if let Some(v) = a.union(b).complement().first() {
        return Err(SatViolation::NotPartition { vertex: v });
    }
    for x in a {
        if let Some(y) = a.difference(g.neighbors(x)).iter().find(|&y| y != x) {
            return Err(SatViolation::ANotClique {
                x: x.min(y),
                y: x.max(y),
            });
        }
    }
    for v in b {
        let degree = g.neighbors(v).intersection_len(b);
        if degree != 1 {
            return Err(SatViolation::BNotMatching { vertex: v, degree });
        }
    }
    for x in a {
        for u in g.neighbors(x).intersection(b).iter() {
            let partner = g.neighbors(u).intersection(b).first().unwrap();
            if u < partner && g.has_edge(x, partner) {
                return Err(SatViolation::Triangle {
                    a: x,
                    b: u,
                    b2: partner,
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("graph has {n} vertices, recognition limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid sat-partition: {0}")]
    Invalid(#[from] SatViolation),
    #[error("gamma needs a in A, b in B and an edge a-b; got ({a}, {b})")]
    BadGammaEdge { a: usize, b: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Exhaustive search for a sat-partition. Returns the first one found when
/// vertices are assigned in id order, trying `A` before `B`.
pub fn find_sat_partition(g: &Graph) -> Result<Option<SatPartition>, SatError> {
    find_sat_partition_bounded(g, DEFAULT_RECOGNITION_LIMIT)
}

pub fn find_sat_partition_bounded(g: &Graph, limit: usize) -> Result<Option<SatPartition>, SatError> {
    let n = g.n();
    if n > limit {
        return Err(SatError::TooLarge { n, limit });
    }
    let mut a = VertexSet::new(n);
    let mut b = VertexSet::new(n);
    if assign(g, 0, &mut a, &mut b) {
        Ok(Some(SatPartition::new(g, a, b)?))
    } else {
        Ok(None)
    }
}

fn assign(g: &Graph, v: usize, a: &mut VertexSet, b: &mut VertexSet) -> bool {
    if v == g.n() {
        return verify_sat_partition(g, a, b).is_ok();
    }
    // A B vertex whose neighbours are all assigned must already be matched.
    let stranded = b
        .iter()
        .any(|u| g.neighbors(u).iter().all(|w| w < v) && g.neighbors(u).intersection_len(b) != 1);
    if stranded {
        return false;
    }
    let nbrs = g.neighbors(v);
    // v joins A: must be adjacent to all of A so far, and to at most one
    // endpoint of each completed B pair.
    if a.is_subset(nbrs) {
        let ok = b.iter().all(|u| {
            let partner = g.neighbors(u).intersection(b).first();
            partner.is_none_or(|p| !(nbrs.contains(u) && nbrs.contains(p)))
        });
        if ok {
            a.insert(v);
            if assign(g, v + 1, a, b) {
                return true;
            }
            a.remove(v);
        }
    }
    // v joins B: no B vertex may end with two B neighbours.
    let b_nbrs = nbrs.intersection(b);
    let ok = b_nbrs.len() <= 1
        && b_nbrs.iter().all(|u| g.neighbors(u).intersection_len(b) == 0)
        && a.iter()
            .all(|x| !(g.has_edge(x, v) && b_nbrs.first().is_some_and(|u| g.has_edge(x, u))));
    if ok {
        b.insert(v);
        if assign(g, v + 1, a, b) {
            return true;
        }
        b.remove(v);
    }
    false
}

/// Bookkeeping of gadget-created vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TransformMarkers {
    pub alpha_new: Vec<usize>,
    pub beta_new: Vec<usize>,
    pub beta_new_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transformed {
    pub graph: Graph,
    pub partition: SatPartition,
    pub markers: TransformMarkers,
    /// Old vertex ids are kept; `to_new[v] == v` for every input vertex.
    pub to_new: Vec<usize>,
}

/// Applies the edge-splitting gadget to the A–B edge `(a, b)`.
///
/// New vertices are appended: `v = n` joins A, and `x = n + 1`, `y = n + 2`
/// form a new B pair. Edge `a - b` is replaced by `v - b`, `v - x`, `a - y`,
/// and `v` is joined to all of A.
pub fn gamma_transform(g: &Graph, p: &SatPartition, a: usize, b: usize) -> Result<Transformed, SatError> {
    let (graph, partition, (v, x, y)) = gamma_raw(g, p, a, b)?;
    let n = g.n();
    Ok(Transformed {
        graph,
        partition,
        markers: TransformMarkers {
            alpha_new: vec![v],
            beta_new: vec![x, y],
            beta_new_edges: vec![(x, y)],
        },
        to_new: (0..n).collect(),
    })
}

/// The new vertices `(v, x, y)` created by one gadget application.
type GadgetVertices = (usize, usize, usize);

fn gamma_raw(
    g: &Graph,
    p: &SatPartition,
    a: usize,
    b: usize,
) -> Result<(Graph, SatPartition, GadgetVertices), SatError> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if !p.a.contains(a) || !p.b.contains(b) || !g.has_edge(a, b) {
        return Err(SatError::BadGammaEdge { a, b });
    }
    let n = g.n();
    let (v, x, y) = (n, n + 1, n + 2);
    let mut edges: Vec<(usize, usize)> = g.edges().filter(|&e| e != (a.min(b), a.max(b))).collect();
    edges.extend(p.a.iter().map(|u| (u, v)));
    edges.extend([(x, y), (v, b), (v, x), (a, y)]);
    let graph = Graph::new(n + 3, &edges)?;
    let mut new_a = VertexSet::from_ids(n + 3, p.a.iter());
    new_a.insert(v);
    let mut new_b = VertexSet::from_ids(n + 3, p.b.iter());
    new_b.insert(x);
    new_b.insert(y);
    let partition = SatPartition::new(&graph, new_a, new_b)?;
    Ok((graph, partition, (v, x, y)))
}

/// Applies the gadget once per A–B edge of the *input* graph, in
/// lexicographic `(a, b)` order. Edges created by the gadget are never
/// split again.
pub fn star_transform(g: &Graph, p: &SatPartition) -> Result<Transformed, SatError> {
    let cross = p.cross_edges(g);
    star_transform_edges(g, p, &cross)
}

/// Like [`star_transform`] but splits only the listed A–B edges.
pub fn star_transform_edges(g: &Graph, p: &SatPartition, edges: &[(usize, usize)]) -> Result<Transformed, SatError> {
    verify_sat_partition(g, &p.a, &p.b)?;
    let mut graph = g.clone();
    let mut partition = p.clone();
    let mut markers = TransformMarkers::default();
    for &(a, b) in edges {
        let (next, next_p, (v, x, y)) = gamma_raw(&graph, &partition, a, b)?;
        graph = next;
        partition = next_p;
        markers.alpha_new.push(v);
        markers.beta_new.extend([x, y]);
        markers.beta_new_edges.push((x, y));
    }
    Ok(Transformed {
        graph,
        partition,
        markers,
        to_new: (0..g.n()).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obs1Counterexample {
    pub pattern: PatternId,
    pub vertices: Vec<usize>,
}

impl fmt::Display for Obs1Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} occurrence {:?} not split as required",
            self.pattern, self.vertices
        )
    }
}

/// Every induced domino must have its two degree-3 vertices in A and the
/// rest in B; every induced Sun_3 must have its triangle in A and its
/// pendants in B.
pub fn check_obs1(g: &Graph, p: &SatPartition) -> Result<Result<(), Obs1Counterexample>, SatViolation> {
    verify_sat_partition(g, &p.a, &p.b)?;
    // Pattern vertex indices (0-indexed) that must land in A.
    let rules: [(PatternId, &[usize]); 2] = [(PatternId::Domino, &[2, 3]), (PatternId::Sun3, &[0, 1, 2])];
    for (pattern, in_a) in rules {
        for occ in find_all_induced(g, pattern) {
            let ok = occ
                .vertices
                .iter()
                .enumerate()
                .all(|(i, &v)| p.a.contains(v) == in_a.contains(&i));
            if !ok {
                return Ok(Err(Obs1Counterexample {
                    pattern,
                    vertices: occ.vertices,
                }));
            }
        }
    }
    Ok(Ok(()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum GStarViolation {
    #[error("property 1: old A vertex {a} is adjacent to old B edge ({x}, {y})")]
    OldAdjacentToOld { a: usize, x: usize, y: usize },
    #[error("property 2: new A vertex {v} touches {new_edges} new and {old_edges} old B edges")]
    NewVertexEdges {
        v: usize,
        new_edges: usize,
        old_edges: usize,
    },
    #[error("property 3: new B edge ({x}, {y}) does not have one end seeing only a new A vertex and one seeing only an old one")]
    NewEdgeEnds { x: usize, y: usize },
    #[error("markers are inconsistent with the partition")]
    BadMarkers,
}

/// Checks the three structural properties of a fully transformed graph.
pub fn check_gstar_properties(g: &Graph, p: &SatPartition, markers: &TransformMarkers) -> Result<(), GStarViolation> {
    let n = g.n();
    let alpha_new =
        VertexSet::try_from_ids(n, markers.alpha_new.iter().copied()).map_err(|_| GStarViolation::BadMarkers)?;
    if !alpha_new.is_subset(&p.a)
        || markers.beta_new.iter().any(|&v| !p.b.contains(v))
        || markers.beta_new_edges.iter().any(|&(x, y)| {
            x >= n || y >= n || !g.has_edge(x, y) || !markers.beta_new.contains(&x) || !markers.beta_new.contains(&y)
        })
    {
        return Err(GStarViolation::BadMarkers);
    }
    let alpha_old = p.a.difference(&alpha_new);
    let is_new_edge = |x: usize, y: usize| {
        markers
            .beta_new_edges
            .iter()
            .any(|&(u, v)| (u, v) == (x.min(y), x.max(y)) || (v, u) == (x.min(y), x.max(y)))
    };
    let touches = |a: usize, (x, y): (usize, usize)| g.has_edge(a, x) || g.has_edge(a, y);

    let old_edges: Vec<_> = p
        .matching
        .iter()
        .copied()
        .filter(|&(x, y)| !is_new_edge(x, y))
        .collect();
    let new_edges: Vec<_> = p.matching.iter().copied().filter(|&(x, y)| is_new_edge(x, y)).collect();

    for a in &alpha_old {
        if let Some(&(x, y)) = old_edges.iter().find(|&&e| touches(a, e)) {
            return Err(GStarViolation::OldAdjacentToOld { a, x, y });
        }
    }
    for v in &alpha_new {
        let new_count = new_edges.iter().filter(|&&e| touches(v, e)).count();
        let old_count = old_edges.iter().filter(|&&e| touches(v, e)).count();
        if new_count != 1 || old_count != 1 {
            return Err(GStarViolation::NewVertexEdges {
                v,
                new_edges: new_count,
                old_edges: old_count,
            });
        }
    }
    for &(x, y) in &new_edges {
        let a_side = |u: usize| {
            let nbrs = g.neighbors(u).intersection(&p.a);
            if nbrs.len() == 1 {
                nbrs.first().map(|w| alpha_new.contains(w))
            } else {
                None
            }
        };
        let ok = matches!(
            (a_side(x), a_side(y)),
            (Some(true), Some(false)) | (Some(false), Some(true))
        );
        if !ok {
            return Err(GStarViolation::NewEdgeEnds { x, y });
        }
    }
    Ok(())
}
