//! Homogeneous sets, primality, good-vertex selection and the labelled
//! decomposition tree that drives the solver.
//!
//! The tree is built top-down. A graph that is complete or has at most one
//! edge is a leaf. Otherwise, if it has a homogeneous set `M` it splits into
//! `G[M]` and `G[(V \ M) ∪ {h}]` with `h = min M`; if it is prime it splits
//! at a good vertex `v` into `G - N(v)` (always a leaf) and `G - v`.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Relabel};
use crate::patterns::{find_antisimplicial, find_induced, Occurrence, PatternId};
use crate::vertex_set::VertexSet;

/// The smallest module of `g` containing `seed`: outside vertices that see
/// part of the set but not all of it are absorbed until none remain.
pub fn module_closure(g: &Graph, seed: &VertexSet) -> VertexSet {
    let mut module = seed.clone();
    loop {
        let splitter = module.complement().iter().find(|&z| {
            let seen = g.neighbors(z).intersection_len(&module);
            seen != 0 && seen != module.len()
        });
        match splitter {
            Some(z) => {
                module.insert(z);
            }
            None => return module,
        }
    }
}

/// True iff every vertex outside `set` sees all of it or none of it.
pub fn is_module(g: &Graph, set: &VertexSet) -> bool {
    set.complement().iter().all(|z| {
        let seen = g.neighbors(z).intersection_len(set);
        seen == 0 || seen == set.len()
    })
}

/// A homogeneous set (`2 <= |M| < n`), from the first vertex pair in
/// lexicographic order whose module closure is not the whole graph.
pub fn find_homogeneous_set(g: &Graph) -> Option<VertexSet> {
    let n = g.n();
    for x in 0..n {
        for y in x + 1..n {
            let m = module_closure(g, &VertexSet::from_ids(n, [x, y]));
            if m.len() < n {
                assert!(is_module(g, &m), "closure returned a non-module");
                return Some(m);
            }
        }
    }
    None
}

pub fn is_prime(g: &Graph) -> bool {
    find_homogeneous_set(g).is_none()
}

/// The input left the class where a good vertex is guaranteed.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("no good vertex in a prime {n}-vertex subgraph on root vertices {vertices:?}{}", witness_note(.witness))]
pub struct NotInClass {
    pub n: usize,
    /// Root ids of the offending subgraph.
    pub vertices: Vec<usize>,
    pub subgraph: Graph,
    /// A P5 or co-P5 in the subgraph (local ids), when one exists.
    pub witness: Option<Occurrence>,
}

fn witness_note(w: &Option<Occurrence>) -> String {
    match w {
        Some(o) => format!("; contains induced {} at local vertices {:?}", o.pattern, o.vertices),
        None => String::new(),
    }
}

/// Good vertex of a prime graph: the smallest antisimplicial vertex if one
/// exists, otherwise the smallest vertex whose antineighbourhood spans at
/// most one edge (the 5-cycle case).
pub fn find_good_vertex(g: &Graph) -> Result<usize, NotInClass> {
    if let Some(v) = find_antisimplicial(g) {
        return Ok(v);
    }
    (0..g.n())
        .find(|&v| antineighborhood_edges(g, v) <= 1)
        .ok_or_else(|| NotInClass {
            n: g.n(),
            vertices: (0..g.n()).collect(),
            subgraph: g.clone(),
            witness: find_induced(g, PatternId::P5).or_else(|| find_induced(g, PatternId::CoP5)),
        })
}

pub fn antineighborhood_edges(g: &Graph, v: usize) -> usize {
    g.edges_within(&g.neighbors(v).complement())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum NodeKind {
    LeafComplete,
    /// At most one edge.
    LeafF,
    Homogeneous {
        module: VertexSet,
        representative: usize,
    },
    Antineighborhood {
        vertex: usize,
    },
}

impl NodeKind {
    pub fn is_leaf(&self) -> bool {
        matches!(self, NodeKind::LeafComplete | NodeKind::LeafF)
    }

    fn name(&self) -> &'static str {
        match self {
            NodeKind::LeafComplete => "leaf-complete",
            NodeKind::LeafF => "leaf-F",
            NodeKind::Homogeneous { .. } => "homogeneous",
            NodeKind::Antineighborhood { .. } => "antineighborhood",
        }
    }
}

/// One node of the decomposition tree. All vertex ids in `kind`, `vertices`
/// and `label` are ids of the root graph; `graph` is the node's subgraph
/// relabelled to `0..k` in increasing root-id order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompNode {
    /// Preorder index, unique within the tree.
    pub id: usize,
    pub kind: NodeKind,
    pub vertices: VertexSet,
    #[serde(skip)]
    pub graph: Graph,
    pub label: Option<(usize, usize)>,
    pub children: Vec<DecompNode>,
}

impl DecompNode {
    /// Preorder traversal.
    pub fn iter(&self) -> impl Iterator<Item = &DecompNode> {
        let mut stack = vec![self];
        std::iter::from_fn(move || {
            let node = stack.pop()?;
            stack.extend(node.children.iter().rev());
            Some(node)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompTree {
    pub n: usize,
    pub node_count: usize,
    pub internal_count: usize,
    pub root: DecompNode,
}

#[derive(Debug, Clone, Default)]
pub struct TreeOptions {
    /// Use this vertex (a root id) at the root instead of the default good
    /// vertex. Only valid when the root is prime, not complete, has at least
    /// two edges, and the vertex's antineighbourhood spans at most one edge.
    pub root_vertex: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error(transparent)]
    NotInClass(#[from] NotInClass),
    #[error("vertex {0} cannot be used as the root branching vertex")]
    BadPin(usize),
}

pub fn build_tree(g: &Graph) -> Result<DecompTree, DecompError> {
    build_tree_with(g, &TreeOptions::default())
}

pub fn build_tree_with(g: &Graph, options: &TreeOptions) -> Result<DecompTree, DecompError> {
    let identity: Vec<usize> = (0..g.n()).collect();
    let mut builder = Builder {
        root_n: g.n(),
        next_id: 0,
        pin: options.root_vertex,
    };
    let root = builder.build(g.clone(), identity)?;
    if let Some(v) = builder.pin {
        return Err(DecompError::BadPin(v));
    }
    let node_count = root.iter().count();
    let internal_count = root.iter().filter(|x| !x.kind.is_leaf()).count();
    Ok(DecompTree {
        n: g.n(),
        node_count,
        internal_count,
        root,
    })
}

struct Builder {
    root_n: usize,
    next_id: usize,
    pin: Option<usize>,
}

impl Builder {
    fn build(&mut self, g: Graph, root_ids: Vec<usize>) -> Result<DecompNode, DecompError> {
        let id = self.next_id;
        self.next_id += 1;
        let vertices = VertexSet::from_ids(self.root_n, root_ids.iter().copied());
        let lift = |local: usize| root_ids[local];
        let pin = self.pin.take();

        let leaf = |kind| DecompNode {
            id,
            kind,
            vertices: vertices.clone(),
            graph: g.clone(),
            label: None,
            children: Vec::new(),
        };
        if g.n() >= 2 && g.is_complete() {
            return match pin {
                Some(v) => Err(DecompError::BadPin(v)),
                None => Ok(leaf(NodeKind::LeafComplete)),
            };
        }
        if g.edge_count() <= 1 {
            return match pin {
                Some(v) => Err(DecompError::BadPin(v)),
                None => Ok(leaf(NodeKind::LeafF)),
            };
        }

        if let Some(module) = find_homogeneous_set(&g) {
            if let Some(v) = pin {
                return Err(DecompError::BadPin(v));
            }
            let mut members = module.iter();
            let h = members.next().unwrap();
            let a = members.next().unwrap();
            let b = module.complement().first().unwrap();
            let mut outer = module.complement();
            outer.insert(h);
            let (g1, m1) = g.induced_subgraph(&module).unwrap();
            let (g2, m2) = g.induced_subgraph(&outer).unwrap();
            let inner_node = self.build(g1, compose(&root_ids, &m1))?;
            let outer_node = self.build(g2, compose(&root_ids, &m2))?;
            return Ok(DecompNode {
                id,
                kind: NodeKind::Homogeneous {
                    module: VertexSet::from_ids(self.root_n, module.iter().map(lift)),
                    representative: lift(h),
                },
                vertices,
                graph: g,
                label: Some((lift(a), lift(b))),
                children: vec![inner_node, outer_node],
            });
        }

        let v = match pin {
            Some(root_v) => {
                let local = root_ids
                    .iter()
                    .position(|&r| r == root_v)
                    .ok_or(DecompError::BadPin(root_v))?;
                if antineighborhood_edges(&g, local) > 1 {
                    return Err(DecompError::BadPin(root_v));
                }
                local
            }
            None => find_good_vertex(&g).map_err(|mut e| {
                e.vertices = root_ids.clone();
                e
            })?,
        };
        let b = g.neighbors(v).first().expect("prime graph with an edge is connected");
        let (g1, m1) = g.remove_vertices(g.neighbors(v)).unwrap();
        let (g2, m2) = g.remove_vertex(v).unwrap();
        let anti_node = self.build(g1, compose(&root_ids, &m1))?;
        debug_assert!(anti_node.kind.is_leaf());
        let rest_node = self.build(g2, compose(&root_ids, &m2))?;
        Ok(DecompNode {
            id,
            kind: NodeKind::Antineighborhood { vertex: lift(v) },
            vertices,
            graph: g,
            label: Some((lift(v), lift(b))),
            children: vec![anti_node, rest_node],
        })
    }
}

fn compose(root_ids: &[usize], map: &Relabel) -> Vec<usize> {
    map.to_old.iter().map(|&i| root_ids[i]).collect()
}

/// Labels of all internal nodes, in preorder.
pub fn labels(tree: &DecompTree) -> Vec<(usize, usize)> {
    tree.root.iter().filter_map(|x| x.label).collect()
}

/// Graphviz rendering of the tree.
pub fn to_dot(tree: &DecompTree) -> String {
    let mut out = String::from("digraph decomposition {\n  node [shape=box];\n");
    for node in tree.root.iter() {
        let mut text = format!("{} {:?}", node.kind.name(), node.vertices);
        match &node.kind {
            NodeKind::Homogeneous { module, representative } => {
                write!(text, "\\nM={module:?} h={representative}").unwrap();
            }
            NodeKind::Antineighborhood { vertex } => write!(text, "\\nv={vertex}").unwrap(),
            _ => {}
        }
        if let Some((a, b)) = node.label {
            write!(text, "\\nlabel=({a},{b})").unwrap();
        }
        writeln!(out, "  n{} [label=\"{}\"];", node.id, text).unwrap();
        for child in &node.children {
            writeln!(out, "  n{} -> n{};", node.id, child.id).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
