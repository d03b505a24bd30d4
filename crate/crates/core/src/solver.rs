//! Exact minimum weight independent domination over the decomposition tree.
//!
//! The sound mode carries explicit domination demands: whenever a branch
//! deletes a vertex `v` without taking it, the remaining subproblem must
//! contain a neighbour of `v`. A demand is a hitset the solution must meet.
//! Homogeneous nodes split demands between the module and the rest, and a
//! module's representative `h` is either forbidden (solution avoids the
//! module) or reweighted to the module's optimum (solution meets it).
//!
//! The naive mode evaluates the plain two-branch minimum at antineighbourhood
//! nodes with no demands. It is kept to exhibit where that rule goes wrong.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::Add;

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{build_tree_with, DecompError, DecompNode, DecompTree, NodeKind, TreeOptions};
use crate::graph::{Graph, GraphError, WeightedGraph};
use crate::oracle::{self, OracleError};
use crate::vertex_set::VertexSet;

/// The solution must contain a vertex of `hitset` (root ids).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Demand {
    /// The deleted vertex this demand keeps dominated, if it came from a
    /// branching step rather than the caller.
    pub ghost: Option<usize>,
    pub hitset: VertexSet,
}

impl Demand {
    pub fn new(hitset: VertexSet) -> Self {
        Demand { ghost: None, hitset }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum Solution {
    Feasible {
        vertices: VertexSet,
        forbidden_used: u32,
        weight: u64,
    },
    Infeasible,
}

impl Solution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Solution::Feasible { .. })
    }

    pub fn weight(&self) -> Option<u64> {
        match self {
            Solution::Feasible { weight, .. } => Some(*weight),
            Solution::Infeasible => None,
        }
    }

    pub fn vertices(&self) -> Option<&VertexSet> {
        match self {
            Solution::Feasible { vertices, .. } => Some(vertices),
            Solution::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Decomposition(#[from] DecompError),
    #[error("demand hitset has universe {got}, graph has {n} vertices")]
    DemandUniverse { got: usize, n: usize },
}

/// Lexicographic vertex cost: forbidden uses first, then weight.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cost {
    pub forbidden: u32,
    pub weight: u64,
}

const FORBIDDEN: Cost = Cost {
    forbidden: 1,
    weight: 0,
};

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        Cost {
            forbidden: self.forbidden + rhs.forbidden,
            weight: self.weight + rhs.weight,
        }
    }
}

/// Tie-break between two vertex sets: the one holding the smallest element
/// of the symmetric difference comes first. On maximal independent sets this
/// is the order of sorted id sequences, and unlike that order it is
/// preserved under disjoint union, so optimal pieces combine into the
/// optimal whole.
pub fn tie_order(a: &VertexSet, b: &VertexSet) -> Ordering {
    match (a.difference(b).first(), b.difference(a).first()) {
        (None, None) => Ordering::Equal,
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (Some(x), Some(y)) => x.cmp(&y),
    }
}

type Best = Option<(Cost, VertexSet)>;

fn keep_better(best: &mut Best, cost: Cost, set: VertexSet) {
    let replace = match best {
        None => true,
        Some((c, s)) => cost < *c || (cost == *c && tie_order(&set, s) == Ordering::Less),
    };
    if replace {
        *best = Some((cost, set));
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolverStats {
    pub tree_nodes: usize,
    pub node_visits: usize,
    pub memo_hits: usize,
    pub memo_entries: usize,
    /// Largest canonical demand list seen at any node.
    pub max_demands: usize,
    /// Largest number of mixed demands at a homogeneous node.
    pub max_mixed: usize,
    /// Mixed-demand assignments tried across all homogeneous nodes.
    pub assignments: usize,
}

type MemoKey = (usize, Vec<VertexSet>, Vec<(usize, Cost)>);

/// A decomposition tree plus memo, reusable across demand sets.
pub struct Solver<'g> {
    tree: DecompTree,
    search: Search<'g>,
}

struct Search<'g> {
    graph: &'g WeightedGraph,
    memo: HashMap<MemoKey, Best>,
    stats: SolverStats,
}

impl<'g> Solver<'g> {
    pub fn new(graph: &'g WeightedGraph) -> Result<Self, SolveError> {
        Self::with_options(graph, &TreeOptions::default())
    }

    pub fn with_options(graph: &'g WeightedGraph, options: &TreeOptions) -> Result<Self, SolveError> {
        let tree = build_tree_with(graph.graph(), options)?;
        let stats = SolverStats {
            tree_nodes: tree.node_count,
            ..SolverStats::default()
        };
        Ok(Solver {
            tree,
            search: Search {
                graph,
                memo: HashMap::new(),
                stats,
            },
        })
    }

    pub fn tree(&self) -> &DecompTree {
        &self.tree
    }

    pub fn stats(&self) -> &SolverStats {
        &self.search.stats
    }

    pub fn solve(&mut self, demands: &[Demand]) -> Result<Solution, SolveError> {
        let n = self.search.graph.n();
        for d in demands {
            if d.hitset.universe() != n {
                return Err(SolveError::DemandUniverse {
                    got: d.hitset.universe(),
                    n,
                });
            }
        }
        let hitsets = demands.iter().map(|d| d.hitset.clone()).collect();
        let best = self.search.solve_node(&self.tree.root, hitsets, &BTreeMap::new());
        self.search.stats.memo_entries = self.search.memo.len();
        Ok(match best {
            Some((cost, vertices)) if cost.forbidden == 0 => {
                debug_assert!(self.search.graph.graph().is_maximal_independent(&vertices).unwrap());
                Solution::Feasible {
                    vertices,
                    forbidden_used: 0,
                    weight: cost.weight,
                }
            }
            _ => Solution::Infeasible,
        })
    }
}

impl Search<'_> {
    fn cost(&self, v: usize, overrides: &BTreeMap<usize, Cost>) -> Cost {
        overrides.get(&v).copied().unwrap_or(Cost {
            forbidden: 0,
            weight: self.graph.weight(v),
        })
    }

    fn set_cost(&self, set: &VertexSet, overrides: &BTreeMap<usize, Cost>) -> Cost {
        set.iter()
            .map(|v| self.cost(v, overrides))
            .fold(Cost::default(), Add::add)
    }

    fn solve_node(&mut self, node: &DecompNode, hitsets: Vec<VertexSet>, overrides: &BTreeMap<usize, Cost>) -> Best {
        self.stats.node_visits += 1;
        let hitsets = canonical_hitsets(hitsets, &node.vertices)?;
        self.stats.max_demands = self.stats.max_demands.max(hitsets.len());
        let overrides: BTreeMap<usize, Cost> = overrides
            .iter()
            .filter(|(v, _)| node.vertices.contains(**v))
            .map(|(&v, &c)| (v, c))
            .collect();
        let key = (node.id, hitsets, overrides.iter().map(|(&v, &c)| (v, c)).collect());
        if let Some(hit) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return hit.clone();
        }
        let hitsets = &key.1;
        let best = match &node.kind {
            NodeKind::LeafComplete | NodeKind::LeafF => {
                let mut best = None;
                for set in leaf_mis(node, self.graph.graph()) {
                    if hitsets.iter().all(|h| h.intersects(&set)) {
                        let cost = self.set_cost(&set, &overrides);
                        keep_better(&mut best, cost, set);
                    }
                }
                best
            }
            NodeKind::Homogeneous { module, representative } => {
                self.solve_homogeneous(node, module, *representative, hitsets, &overrides)
            }
            NodeKind::Antineighborhood { vertex } => {
                let v = *vertex;
                let [anti, rest] = &node.children[..] else {
                    unreachable!("internal nodes have two children")
                };
                let mut best = self.solve_node(anti, hitsets.clone(), &overrides);
                let mut shrunk: Vec<VertexSet> = hitsets
                    .iter()
                    .map(|h| {
                        let mut h = h.clone();
                        h.remove(v);
                        h
                    })
                    .collect();
                shrunk.push(self.graph.graph().neighbors(v).intersection(&node.vertices));
                if let Some((c, s)) = self.solve_node(rest, shrunk, &overrides) {
                    keep_better(&mut best, c, s);
                }
                best
            }
        };
        self.memo.insert(key, best.clone());
        best
    }

    fn solve_homogeneous(
        &mut self,
        node: &DecompNode,
        module: &VertexSet,
        h: usize,
        hitsets: &[VertexSet],
        overrides: &BTreeMap<usize, Cost>,
    ) -> Best {
        let [inner, outer] = &node.children[..] else {
            unreachable!("internal nodes have two children")
        };
        let mut best = None;

        // The solution avoids the module: h stands in for it and is forbidden.
        if !hitsets.iter().any(|d| d.is_subset(module)) {
            let mut ov = overrides.clone();
            ov.insert(h, FORBIDDEN);
            let outside = hitsets.iter().map(|d| d.difference(module)).collect();
            if let Some((c, s)) = self.solve_node(outer, outside, &ov) {
                keep_better(&mut best, c, s);
            }
        }

        // The solution meets the module.
        let (inside, rest): (Vec<&VertexSet>, Vec<&VertexSet>) = hitsets.iter().partition(|d| d.is_subset(module));
        let (mixed, outside): (Vec<&VertexSet>, Vec<&VertexSet>) = rest.into_iter().partition(|d| d.intersects(module));
        self.stats.max_mixed = self.stats.max_mixed.max(mixed.len());
        for mask in 0u64..1 << mixed.len() {
            self.stats.assignments += 1;
            let mut inner_hits: Vec<VertexSet> = inside.iter().map(|&d| d.clone()).collect();
            let mut outer_hits: Vec<VertexSet> = outside.iter().map(|&d| d.clone()).collect();
            for (i, d) in mixed.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    inner_hits.push(d.intersection(module));
                } else {
                    outer_hits.push(d.difference(module));
                }
            }
            outer_hits.push(VertexSet::singleton(module.universe(), h));
            let Some((inner_cost, inner_set)) = self.solve_node(inner, inner_hits, overrides) else {
                continue;
            };
            let mut ov = overrides.clone();
            ov.insert(h, inner_cost);
            let Some((cost, mut set)) = self.solve_node(outer, outer_hits, &ov) else {
                continue;
            };
            debug_assert!(set.contains(h));
            set.remove(h);
            set.union_with(&inner_set);
            keep_better(&mut best, cost, set);
        }
        best
    }
}

/// Restricts hitsets to the node, drops duplicates and supersets of other
/// hitsets. `None` if some hitset misses the node entirely.
fn canonical_hitsets(hitsets: Vec<VertexSet>, within: &VertexSet) -> Option<Vec<VertexSet>> {
    let mut hs: Vec<VertexSet> = hitsets.into_iter().map(|h| h.intersection(within)).collect();
    if hs.iter().any(VertexSet::is_empty) {
        return None;
    }
    hs.sort_by_key(|h| (h.len(), h.clone()));
    hs.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(hs.len());
    for h in hs {
        if !kept.iter().any(|k| k.is_subset(&h)) {
            kept.push(h);
        }
    }
    kept.sort();
    Some(kept)
}

/// The maximal independent sets of a leaf, in root ids.
fn leaf_mis(node: &DecompNode, root: &Graph) -> Vec<VertexSet> {
    let vs = &node.vertices;
    match node.kind {
        NodeKind::LeafComplete => vs.iter().map(|v| VertexSet::singleton(vs.universe(), v)).collect(),
        NodeKind::LeafF => {
            let edge = vs
                .iter()
                .find_map(|u| root.neighbors(u).intersection(vs).first().map(|v| (u, v)));
            match edge {
                None => vec![vs.clone()],
                Some((x, y)) => [x, y]
                    .into_iter()
                    .map(|drop| {
                        let mut s = vs.clone();
                        s.remove(drop);
                        s
                    })
                    .collect(),
            }
        }
        _ => unreachable!("not a leaf"),
    }
}

pub fn solve_wid(g: &WeightedGraph) -> Result<Solution, SolveError> {
    solve_constrained(g, &[])
}

pub fn solve_constrained(g: &WeightedGraph, demands: &[Demand]) -> Result<Solution, SolveError> {
    Solver::new(g)?.solve(demands)
}

pub fn solve_id(g: &Graph) -> Result<Solution, SolveError> {
    solve_wid(&WeightedGraph::unit(g.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaiveResult {
    /// The value the demand-free recursion reports.
    pub value: u64,
    /// Its witness after the greedy fix-up.
    pub witness: VertexSet,
    pub witness_weight: u64,
    pub witness_is_mis: bool,
}

pub fn solve_naive_eq1(g: &WeightedGraph) -> Result<NaiveResult, SolveError> {
    solve_naive_eq1_with(g, &TreeOptions::default())
}

/// Demand-free recursion. Homogeneous nodes substitute the module optimum as
/// the weight of `h`; antineighbourhood nodes take the cheaper of the `v`
/// leaf and the `G - v` value.
pub fn solve_naive_eq1_with(g: &WeightedGraph, options: &TreeOptions) -> Result<NaiveResult, SolveError> {
    let tree = build_tree_with(g.graph(), options)?;
    let mut weights = g.weights().to_vec();
    let (value, witness) = naive_node(&tree.root, g.graph(), &mut weights);
    Ok(NaiveResult {
        value,
        witness_weight: g.set_weight(&witness),
        witness_is_mis: g.graph().is_maximal_independent(&witness).unwrap(),
        witness,
    })
}

fn naive_node(node: &DecompNode, root: &Graph, weights: &mut Vec<u64>) -> (u64, VertexSet) {
    let weigh = |s: &VertexSet, w: &[u64]| s.iter().map(|v| w[v]).sum::<u64>();
    match &node.kind {
        NodeKind::LeafComplete | NodeKind::LeafF => {
            let mut best: Best = None;
            for s in leaf_mis(node, root) {
                let c = Cost {
                    forbidden: 0,
                    weight: weigh(&s, weights),
                };
                keep_better(&mut best, c, s);
            }
            let (c, s) = best.expect("a leaf always has a maximal independent set");
            (c.weight, s)
        }
        NodeKind::Homogeneous { representative, .. } => {
            let h = *representative;
            let (inner_value, inner_set) = naive_node(&node.children[0], root, weights);
            let saved = std::mem::replace(&mut weights[h], inner_value);
            let (value, mut set) = naive_node(&node.children[1], root, weights);
            weights[h] = saved;
            if set.remove(h) {
                set.union_with(&inner_set);
            }
            (value, set)
        }
        NodeKind::Antineighborhood { vertex } => {
            let v = *vertex;
            let (a_value, a_set) = naive_node(&node.children[0], root, weights);
            let (b_value, mut b_set) = naive_node(&node.children[1], root, weights);
            if a_value <= b_value {
                (a_value, a_set)
            } else {
                if !root.neighbors(v).intersects(&b_set) {
                    b_set.insert(v);
                }
                (b_value, b_set)
            }
        }
    }
}

/// The bare two-term minimum `min(id_w(G - N(v)), id_w(G - v))`, evaluated
/// by brute force.
pub fn eq1_literal_value(g: &WeightedGraph, v: usize) -> Result<u64, EvalError> {
    let nv = g.graph().neighborhood(v)?;
    let (without_nv, _) = g.remove_vertices(&nv)?;
    let (without_v, _) = g.remove_vertices(&VertexSet::singleton(g.n(), v))?;
    Ok(oracle::oracle_wid(&without_nv)?
        .value
        .min(oracle::oracle_wid(&without_v)?.value))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
