//! Induced-subgraph detection for the small forbidden patterns, plus the
//! antisimplicial-vertex predicates.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{families, Graph, GraphError};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternId {
    P5,
    CoP5,
    /// Chordless cycle on exactly `k >= 3` vertices.
    Cycle(usize),
    Domino,
    Sun3,
    /// Any chordless cycle on at least `k` vertices.
    CycleAtLeast(usize),
}

impl PatternId {
    pub const C3: PatternId = PatternId::Cycle(3);
    pub const C4: PatternId = PatternId::Cycle(4);
    pub const C5: PatternId = PatternId::Cycle(5);
    pub const C6: PatternId = PatternId::Cycle(6);

    /// The fixed pattern graph, or `None` for [`PatternId::CycleAtLeast`].
    pub fn graph(&self) -> Option<Graph> {
        match *self {
            PatternId::P5 => Some(families::path(5)),
            PatternId::CoP5 => Some(families::path(5).complement()),
            PatternId::Cycle(k) => Some(families::cycle(k)),
            PatternId::Domino => Some(families::domino()),
            PatternId::Sun3 => Some(families::sun3()),
            PatternId::CycleAtLeast(_) => None,
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternId::P5 => write!(f, "P5"),
            PatternId::CoP5 => write!(f, "coP5"),
            PatternId::Cycle(k) => write!(f, "C{k}"),
            PatternId::Domino => write!(f, "domino"),
            PatternId::Sun3 => write!(f, "sun3"),
            PatternId::CycleAtLeast(k) => write!(f, "C>={k}"),
        }
    }
}

impl Serialize for PatternId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for PatternId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown pattern `{0}`")]
pub struct UnknownPattern(pub String);

impl FromStr for PatternId {
    type Err = UnknownPattern;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace(['-', '_'], "");
        let cycle_len = |t: &str| t.parse::<usize>().ok().filter(|&k| k >= 3);
        let parsed = match norm.as_str() {
            "p5" => Some(PatternId::P5),
            "cop5" => Some(PatternId::CoP5),
            "domino" => Some(PatternId::Domino),
            "sun3" => Some(PatternId::Sun3),
            _ => {
                if let Some(rest) = norm.strip_prefix("c>=") {
                    cycle_len(rest).map(PatternId::CycleAtLeast)
                } else if let Some(rest) = norm.strip_prefix("cyclege(").and_then(|r| r.strip_suffix(')')) {
                    cycle_len(rest).map(PatternId::CycleAtLeast)
                } else if let Some(rest) = norm.strip_prefix('c') {
                    cycle_len(rest).map(PatternId::Cycle)
                } else {
                    None
                }
            }
        };
        parsed.ok_or_else(|| UnknownPattern(s.to_string()))
    }
}

/// An induced copy of a pattern: `vertices[i]` is the host vertex playing
/// pattern vertex `i`. For cycle searches the vertices are in cycle order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub pattern: PatternId,
    pub vertices: Vec<usize>,
}

impl Occurrence {
    /// Re-checks edges and non-edges against the pattern.
    pub fn verify(&self, host: &Graph) -> bool {
        let k = self.vertices.len();
        let pat = match self.pattern.graph() {
            Some(p) => p,
            None => match self.pattern {
                PatternId::CycleAtLeast(min) if k >= min && k >= 3 => families::cycle(k),
                _ => return false,
            },
        };
        if pat.n() != k {
            return false;
        }
        let mut seen = VertexSet::new(host.n());
        for &v in &self.vertices {
            if v >= host.n() || !seen.insert(v) {
                return false;
            }
        }
        (0..k).all(|i| (i + 1..k).all(|j| pat.has_edge(i, j) == host.has_edge(self.vertices[i], self.vertices[j])))
    }
}

/// Calls `visit` on every induced embedding of `pattern` into `host`, in
/// lexicographic order of the host tuples.
pub fn for_each_embedding<F>(host: &Graph, pattern: &Graph, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let k = pattern.n();
    let n = host.n();
    if k > n {
        return ControlFlow::Continue(());
    }
    // Degree pruning: an image must have at least as many neighbours and
    // non-neighbours as its pattern vertex.
    let eligible: Vec<VertexSet> = (0..k)
        .map(|i| {
            let deg = pattern.degree(i);
            let nondeg = k - 1 - deg;
            VertexSet::from_ids(
                n,
                (0..n).filter(|&v| host.degree(v) >= deg && n - 1 - host.degree(v) >= nondeg),
            )
        })
        .collect();
    let mut assignment = Vec::with_capacity(k);
    extend(host, pattern, &eligible, &mut assignment, &mut visit)
}

fn extend<F>(
    host: &Graph,
    pattern: &Graph,
    eligible: &[VertexSet],
    assignment: &mut Vec<usize>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let i = assignment.len();
    if i == pattern.n() {
        return visit(assignment);
    }
    let mut candidates = eligible[i].clone();
    for (j, &image) in assignment.iter().enumerate() {
        candidates.remove(image);
        if pattern.has_edge(i, j) {
            candidates.intersect_with(host.neighbors(image));
        } else {
            candidates.difference_with(host.neighbors(image));
        }
    }
    for v in candidates.iter() {
        assignment.push(v);
        let flow = extend(host, pattern, eligible, assignment, visit);
        assignment.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Finds the lexicographically smallest induced occurrence of `pattern`.
pub fn find_induced(host: &Graph, pattern: PatternId) -> Option<Occurrence> {
    match pattern {
        PatternId::CycleAtLeast(k) => find_long_induced_cycle(host, k).map(|vertices| Occurrence { pattern, vertices }),
        _ => {
            let pat = pattern.graph().expect("fixed pattern");
            let mut found = None;
            let _ = for_each_embedding(host, &pat, |tuple| {
                found = Some(tuple.to_vec());
                ControlFlow::Break(())
            });
            found.map(|vertices| Occurrence { pattern, vertices })
        }
    }
}

/// Every induced occurrence of a fixed pattern (one per embedding, so
/// automorphic copies are listed separately).
pub fn find_all_induced(host: &Graph, pattern: PatternId) -> Vec<Occurrence> {
    let Some(pat) = pattern.graph() else {
        return find_induced(host, pattern).into_iter().collect();
    };
    let mut out = Vec::new();
    let _ = for_each_embedding(host, &pat, |tuple| {
        out.push(Occurrence {
            pattern,
            vertices: tuple.to_vec(),
        });
        ControlFlow::Continue(())
    });
    out
}

/// Searches for a chordless cycle with at least `min_len` vertices. The
/// smallest vertex of the returned cycle comes first.
fn find_long_induced_cycle(host: &Graph, min_len: usize) -> Option<Vec<usize>> {
    let min_len = min_len.max(3);
    (0..host.n()).find_map(|start| grow_path(host, start, &mut vec![start], min_len))
}

/// Extends the chordless path `path` (starting at `start`, its smallest
/// vertex) one vertex at a time. A new vertex may only touch the last path
/// vertex, or additionally `start`, which closes a chordless cycle.
fn grow_path(host: &Graph, start: usize, path: &mut Vec<usize>, min_len: usize) -> Option<Vec<usize>> {
    let last = *path.last().unwrap();
    for u in host.neighbors(last).iter() {
        if u <= start || path.contains(&u) {
            continue;
        }
        let interior = if path.len() > 2 {
            &path[1..path.len() - 1]
        } else {
            &[][..]
        };
        if interior.iter().any(|&p| host.has_edge(u, p)) {
            continue;
        }
        if path.len() > 1 && host.has_edge(u, start) {
            if path.len() + 1 >= min_len {
                let mut cycle = path.clone();
                cycle.push(u);
                return Some(cycle);
            }
            continue;
        }
        path.push(u);
        let found = grow_path(host, start, path, min_len);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

pub fn is_free(host: &Graph, patterns: &[PatternId]) -> bool {
    patterns.iter().all(|&p| find_induced(host, p).is_none())
}

/// True iff the antineighbourhood of `v` is an independent set.
pub fn is_antisimplicial(host: &Graph, v: usize) -> Result<bool, GraphError> {
    let anti = host.antineighborhood(v)?;
    Ok(host.edges_within(&anti) == 0)
}

pub fn find_antisimplicial(host: &Graph) -> Option<usize> {
    (0..host.n()).find(|&v| host.edges_within(&host.neighbors(v).complement()) == 0)
}

/// `host` is a chordless 5-cycle: five vertices, 2-regular, connected.
pub fn is_c5(host: &Graph) -> bool {
    host.n() == 5 && (0..5).all(|v| host.degree(v) == 2) && host.is_connected()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    /// All-tuples matcher without pruning.
    fn naive_find(host: &Graph, pat: &Graph) -> Option<Vec<usize>> {
        fn rec(host: &Graph, pat: &Graph, acc: &mut Vec<usize>) -> Option<Vec<usize>> {
            if acc.len() == pat.n() {
                let k = acc.len();
                let ok = (0..k).all(|i| (0..k).all(|j| i == j || pat.has_edge(i, j) == host.has_edge(acc[i], acc[j])));
                return ok.then(|| acc.clone());
            }
            for v in 0..host.n() {
                if acc.contains(&v) {
                    continue;
                }
                acc.push(v);
                if let Some(found) = rec(host, pat, acc) {
                    return Some(found);
                }
                acc.pop();
            }
            None
        }
        rec(host, pat, &mut Vec::new())
    }

    #[test]
    fn c4_in_domino() {
        let occ = find_induced(&domino(), PatternId::C4).unwrap();
        // Labels 1, 2, 4, 3 in the 1-indexed drawing.
        assert_eq!(occ.vertices, vec![0, 1, 3, 2]);
        assert!(occ.verify(&domino()));
    }

    #[test]
    fn p5_has_no_cop5() {
        assert!(find_induced(&path(5), PatternId::CoP5).is_none());
    }

    #[test]
    fn c6_is_long_cycle() {
        let occ = find_induced(&cycle(6), PatternId::CycleAtLeast(5)).unwrap();
        assert_eq!(occ.vertices.len(), 6);
        assert!(occ.verify(&cycle(6)));
        assert!(find_induced(&cycle(6), PatternId::CycleAtLeast(7)).is_none());
    }

    #[test]
    fn long_cycle_ignores_chorded_cycles() {
        // C6 plus a long chord 0-3 leaves only two C4s.
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        assert!(find_induced(&g, PatternId::CycleAtLeast(5)).is_none());
        assert_eq!(find_induced(&g, PatternId::CycleAtLeast(4)).unwrap().vertices.len(), 4);
    }

    #[test]
    fn class_membership() {
        assert!(is_free(&bull(), &[PatternId::P5, PatternId::CoP5]));
        assert!(!is_free(&path(5), &[PatternId::P5]));
        assert!(is_free(&cycle(5), &[PatternId::P5, PatternId::CoP5]));
        // The domino does contain an induced P5 (2-1-3-5-6 in 1-indexed labels).
        assert!(!is_free(&domino(), &[PatternId::P5]));
    }

    #[test]
    fn antisimplicial_examples() {
        let k4 = complete(4);
        assert!((0..4).all(|v| is_antisimplicial(&k4, v).unwrap()));
        assert!(!is_antisimplicial(&path(5), 0).unwrap());
        let bull = bull();
        let anti: Vec<_> = (0..5).filter(|&v| is_antisimplicial(&bull, v).unwrap()).collect();
        assert_eq!(anti, vec![1, 2, 4]);
        assert_eq!(find_antisimplicial(&bull), Some(1));
        assert_eq!(find_antisimplicial(&cycle(5)), None);
    }

    #[test]
    fn c5_recognition() {
        assert!(is_c5(&cycle(5)));
        assert!(!is_c5(&path(5)));
        assert!(!is_c5(&cycle(3).disjoint_union(&complete(2))));
    }

    #[test]
    fn parse_names() {
        assert_eq!("P5".parse::<PatternId>().unwrap(), PatternId::P5);
        assert_eq!("CO_P5".parse::<PatternId>().unwrap(), PatternId::CoP5);
        assert_eq!("co-P5".parse::<PatternId>().unwrap(), PatternId::CoP5);
        assert_eq!("C4".parse::<PatternId>().unwrap(), PatternId::C4);
        assert_eq!("CYCLE_GE(5)".parse::<PatternId>().unwrap(), PatternId::CycleAtLeast(5));
        assert_eq!("C>=6".parse::<PatternId>().unwrap(), PatternId::CycleAtLeast(6));
        assert!("C2".parse::<PatternId>().is_err());
        for p in [
            PatternId::P5,
            PatternId::CoP5,
            PatternId::C4,
            PatternId::Domino,
            PatternId::Sun3,
            PatternId::CycleAtLeast(5),
        ] {
            assert_eq!(p.to_string().parse::<PatternId>().unwrap(), p);
        }
    }

    #[test]
    fn matcher_agrees_with_naive_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let pats = [
            PatternId::P5,
            PatternId::CoP5,
            PatternId::C4,
            PatternId::C5,
            PatternId::Domino,
            PatternId::Sun3,
        ];
        for _ in 0..150 {
            let n = rng.gen_range(4..=8);
            let p = rng.gen_range(0.2..0.8);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::new(n, &edges).unwrap();
            for pat in pats {
                let fast = find_induced(&g, pat).map(|o| o.vertices);
                let slow = naive_find(&g, &pat.graph().unwrap());
                assert_eq!(fast, slow, "{pat} on {g:?}");
            }
        }
    }
}
