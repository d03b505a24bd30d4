//! Seeded instance generation: named graphs, filtered random graphs, random
//! sat-graphs, substitution composites and planted-module instances.
//!
//! Every generator draws from a `ChaCha8Rng` seeded with the given `u64`, so
//! a spec and a seed determine the output exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{families, Graph, GraphError, WeightedGraph};
use crate::patterns::{is_free, PatternId};
use crate::satgraph::SatPartition;
use crate::vertex_set::VertexSet;

/// Rejections allowed per `gnp_filtered` call unless overridden.
pub const DEFAULT_BUDGET: usize = 200_000;

/// Attempts at one vertex before the partial graph is discarded.
const VERTEX_RETRIES: usize = 64;

const CLASS: [PatternId; 2] = [PatternId::P5, PatternId::CoP5];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error(
        "rejection budget exhausted after {rejections} rejections ({produced} of {requested} graphs on {n} vertices)"
    )]
    BudgetExhausted {
        n: usize,
        requested: usize,
        produced: usize,
        rejections: usize,
    },
    #[error("cannot substitute an empty graph")]
    EmptySubstitute,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graphs by name: `DOMINO`, `SUN3`, `BULL`, `K2_PLUS_K1`, and the
/// parameterised `P_n`, `C_n`, `K_n`, `STAR_n` (also without underscore).
pub fn named(name: &str) -> Result<Graph, GenError> {
    let unknown = || GenError::UnknownName(name.to_string());
    let norm = name.trim().to_ascii_uppercase().replace(['_', '-'], "");
    match norm.as_str() {
        "DOMINO" => return Ok(families::domino()),
        "SUN3" => return Ok(families::sun3()),
        "BULL" => return Ok(families::bull()),
        "K2PLUSK1" | "K2+K1" => return Ok(families::k2_plus_k1()),
        _ => {}
    }
    let split = norm.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?;
    let (kind, digits) = norm.split_at(split);
    let k: usize = digits.parse().map_err(|_| unknown())?;
    match kind {
        "P" if k >= 1 => Ok(families::path(k)),
        "C" if k >= 3 => Ok(families::cycle(k)),
        "K" => Ok(families::complete(k)),
        "STAR" => Ok(families::star(k)),
        _ => Err(unknown()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GnpParams {
    pub n: usize,
    pub p: f64,
    pub forbidden: Vec<PatternId>,
    pub seed: u64,
    pub count: usize,
    pub budget: usize,
}

impl GnpParams {
    pub fn new(n: usize, p: f64, forbidden: &[PatternId], seed: u64, count: usize) -> Self {
        GnpParams {
            n,
            p,
            forbidden: forbidden.to_vec(),
            seed,
            count,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Random graphs free of every forbidden pattern.
///
/// Vertices are added one at a time, each joined to earlier vertices with
/// probability `p`; a vertex whose edges create a forbidden pattern is
/// redrawn. The patterns are induced subgraphs, so a free prefix stays free.
/// Every returned graph is re-verified with [`is_free`].
pub fn gnp_filtered(params: &GnpParams) -> Result<Vec<Graph>, GenError> {
    let mut rng = rng(params.seed);
    let mut out = Vec::with_capacity(params.count);
    let mut rejections = 0;
    while out.len() < params.count {
        match grow_filtered(&mut rng, params, &mut rejections) {
            Some(g) => {
                assert!(is_free(&g, &params.forbidden));
                out.push(g);
            }
            None => {
                return Err(GenError::BudgetExhausted {
                    n: params.n,
                    requested: params.count,
                    produced: out.len(),
                    rejections,
                })
            }
        }
    }
    Ok(out)
}

fn grow_filtered(rng: &mut ChaCha8Rng, params: &GnpParams, rejections: &mut usize) -> Option<Graph> {
    'restart: loop {
        let mut edges = Vec::new();
        for v in 0..params.n {
            let mut tries = 0;
            loop {
                let new: Vec<(usize, usize)> = (0..v).filter(|_| rng.gen_bool(params.p)).map(|u| (u, v)).collect();
                let len = edges.len();
                edges.extend_from_slice(&new);
                let g = Graph::new(v + 1, &edges).unwrap();
                if is_free(&g, &params.forbidden) {
                    break;
                }
                edges.truncate(len);
                *rejections += 1;
                if *rejections > params.budget {
                    return None;
                }
                tries += 1;
                if tries == VERTEX_RETRIES {
                    continue 'restart;
                }
            }
        }
        return Some(Graph::new(params.n, &edges).unwrap());
    }
}

/// A sat-graph built valid by construction: A = `0..size_a` is a clique and
/// B is `match_b` disjoint edges `(size_a + 2i, size_a + 2i + 1)`. Each A–B
/// pair is joined with probability `p_ab` unless the A vertex already sees
/// the B vertex's partner.
pub fn sat_random(size_a: usize, match_b: usize, p_ab: f64, seed: u64) -> (Graph, SatPartition) {
    let mut rng = rng(seed);
    let n = size_a + 2 * match_b;
    let mut edges = Vec::new();
    for x in 0..size_a {
        for y in x + 1..size_a {
            edges.push((x, y));
        }
    }
    for i in 0..match_b {
        edges.push((size_a + 2 * i, size_a + 2 * i + 1));
    }
    for a in 0..size_a {
        let mut seen = VertexSet::new(n);
        for b in size_a..n {
            let partner = if (b - size_a).is_multiple_of(2) { b + 1 } else { b - 1 };
            if !seen.contains(partner) && rng.gen_bool(p_ab) {
                edges.push((a, b));
                seen.insert(b);
            }
        }
    }
    let g = Graph::new(n, &edges).unwrap();
    let a = VertexSet::from_ids(n, 0..size_a);
    let b = a.complement();
    let p = SatPartition::new(&g, a, b).expect("valid by construction");
    (g, p)
}

/// Replaces vertex `slot` of `h` by a copy of `g`. The copy's vertex 0 takes
/// the id `slot`; its other vertices are appended after `h`'s. Returns the
/// composite and the copy's vertex set, which is a module of it.
pub fn substitute(h: &Graph, slot: usize, g: &Graph) -> Result<(Graph, VertexSet), GenError> {
    h.check_vertex(slot)?;
    if g.n() == 0 {
        return Err(GenError::EmptySubstitute);
    }
    let n = h.n() + g.n() - 1;
    let id = |i: usize| if i == 0 { slot } else { h.n() + i - 1 };
    let mut edges: Vec<(usize, usize)> = h.edges().collect();
    edges.extend(g.edges().map(|(x, y)| (id(x), id(y))));
    for u in h.neighbors(slot).iter() {
        edges.extend((1..g.n()).map(|i| (u, id(i))));
    }
    let module = VertexSet::from_ids(n, (0..g.n()).map(id));
    Ok((Graph::new(n, &edges)?, module))
}

/// Small (P5, co-P5)-free building block with `2..=max_n` vertices: either a
/// fixed prime or a filtered random graph.
fn class_block(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let max_n = max_n.max(2);
    match rng.gen_range(0..6) {
        0 if max_n >= 5 => families::cycle(5),
        1 if max_n >= 5 => families::bull(),
        2 if max_n >= 4 => families::path(4),
        _ => {
            let n = rng.gen_range(2..=max_n.min(7));
            let p = rng.gen_range(0.2..0.8);
            let params = GnpParams::new(n, p, &CLASS, rng.gen(), 1);
            gnp_filtered(&params)
                .expect("small class graphs are easy to sample")
                .remove(0)
        }
    }
}

/// A (P5, co-P5)-free graph on at most `max_n` vertices built by repeated
/// substitution of class blocks into random slots. Both patterns are prime,
/// so substitution keeps the composite in the class.
pub fn substitution_instance(seed: u64, max_n: usize) -> Graph {
    let mut rng = rng(seed);
    let target = rng.gen_range(max_n.min(6)..=max_n);
    let mut g = class_block(&mut rng, target);
    while g.n() < target {
        let room = target - g.n() + 1;
        let block = class_block(&mut rng, room.min(6));
        if block.n() > room {
            break;
        }
        let slot = rng.gen_range(0..g.n());
        g = substitute(&g, slot, &block).unwrap().0;
    }
    debug_assert!(is_free(&g, &CLASS));
    g
}

/// A weighted class graph with a known module `M` planted by substitution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlantedModule {
    pub graph: WeightedGraph,
    pub module: VertexSet,
}

pub fn planted_module(seed: u64, max_n: usize, max_weight: u64) -> PlantedModule {
    let mut rng = rng(seed);
    let max_n = max_n.max(4);
    let outer_n = rng.gen_range(2..=(max_n - 2).min(8));
    let outer = class_block(&mut rng, outer_n);
    let inner = class_block(&mut rng, (max_n - outer.n() + 1).clamp(2, 6));
    let slot = rng.gen_range(0..outer.n());
    let (g, module) = substitute(&outer, slot, &inner).unwrap();
    let weights = random_weights(&mut rng, g.n(), max_weight);
    PlantedModule {
        graph: WeightedGraph::new(g, weights).unwrap(),
        module,
    }
}

pub fn random_weights(rng: &mut impl Rng, n: usize, max_weight: u64) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(0..=max_weight)).collect()
}

/// What a corpus is made of. Serialised into corpus manifests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    Named {
        names: Vec<String>,
    },
    GnpFiltered {
        n_min: usize,
        n_max: usize,
        p_min: f64,
        p_max: f64,
        forbidden: Vec<PatternId>,
        seed: u64,
        count: usize,
        max_weight: Option<u64>,
    },
    SatRandom {
        n_max: usize,
        seed: u64,
        count: usize,
    },
    Substitution {
        n_max: usize,
        seed: u64,
        count: usize,
        max_weight: Option<u64>,
    },
    PlantedModule {
        n_max: usize,
        seed: u64,
        count: usize,
        max_weight: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
    pub weights: Option<Vec<u64>>,
    pub partition: Option<SatPartition>,
    pub module: Option<VertexSet>,
}

impl Instance {
    fn plain(name: String, graph: Graph) -> Self {
        Instance {
            name,
            graph,
            weights: None,
            partition: None,
            module: None,
        }
    }

    /// The instance's weights, or unit weights.
    pub fn weighted(&self) -> WeightedGraph {
        match &self.weights {
            Some(w) => WeightedGraph::new(self.graph.clone(), w.clone()).unwrap(),
            None => WeightedGraph::unit(self.graph.clone()),
        }
    }
}

/// Expands a spec into its instances, in a fixed order.
pub fn generate(spec: &GenSpec) -> Result<Vec<Instance>, GenError> {
    match spec {
        GenSpec::Named { names } => names
            .iter()
            .map(|name| Ok(Instance::plain(name.clone(), named(name)?)))
            .collect(),
        GenSpec::GnpFiltered {
            n_min,
            n_max,
            p_min,
            p_max,
            forbidden,
            seed,
            count,
            max_weight,
        } => {
            let mut master = rng(*seed);
            (0..*count)
                .map(|i| {
                    let n = master.gen_range(*n_min..=*n_max);
                    let p = if p_max > p_min {
                        master.gen_range(*p_min..*p_max)
                    } else {
                        *p_min
                    };
                    let params = GnpParams::new(n, p, forbidden, master.gen(), 1);
                    let g = gnp_filtered(&params)?.remove(0);
                    let mut inst = Instance::plain(format!("gnp-{i:04}"), g);
                    inst.weights = max_weight.map(|w| random_weights(&mut master, n, w));
                    Ok(inst)
                })
                .collect()
        }
        GenSpec::SatRandom { n_max, seed, count } => {
            let mut master = rng(*seed);
            Ok((0..*count)
                .map(|i| {
                    let match_b = master.gen_range(0..=n_max / 2);
                    let size_a = master.gen_range(0..=n_max - 2 * match_b);
                    let p_ab = master.gen_range(0.1..0.9);
                    let (g, p) = sat_random(size_a, match_b, p_ab, master.gen());
                    let mut inst = Instance::plain(format!("sat-{i:04}"), g);
                    inst.partition = Some(p);
                    inst
                })
                .collect())
        }
        GenSpec::Substitution {
            n_max,
            seed,
            count,
            max_weight,
        } => {
            let mut master = rng(*seed);
            Ok((0..*count)
                .map(|i| {
                    let g = substitution_instance(master.gen(), *n_max);
                    let n = g.n();
                    let mut inst = Instance::plain(format!("subst-{i:04}"), g);
                    inst.weights = max_weight.map(|w| random_weights(&mut master, n, w));
                    inst
                })
                .collect())
        }
        GenSpec::PlantedModule {
            n_max,
            seed,
            count,
            max_weight,
        } => {
            let mut master = rng(*seed);
            Ok((0..*count)
                .map(|i| {
                    let pm = planted_module(master.gen(), *n_max, *max_weight);
                    let (g, w) = pm.graph.into_parts();
                    Instance {
                        name: format!("planted-{i:04}"),
                        graph: g,
                        weights: Some(w),
                        partition: None,
                        module: Some(pm.module),
                    }
                })
                .collect())
        }
    }
}
