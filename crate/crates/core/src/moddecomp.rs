//! Modules, the strong-module tree and quotients.
//!
//! The decomposition is the direct recursive one: at each strong module `M`
//! the maximal strong submodules are the components of `G[M]`, the
//! co-components, or (when both `G[M]` and its complement are connected) the
//! maximal proper modules, found by closing vertex pairs under splitters.
//! That costs roughly `O(n^4 / 64)` and is meant for graphs of a few hundred
//! vertices at most.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::{sort_by_min, VertexSet};

/// Returns true iff every vertex outside `m` is adjacent to all of `m` or to none of it.
pub fn is_module(g: &Graph, m: &VertexSet) -> bool {
    is_module_within(g, &g.vertices(), m)
}

/// Module test in `G[within]`. `m` must be a subset of `within`.
pub fn is_module_within(g: &Graph, within: &VertexSet, m: &VertexSet) -> bool {
    within
        .difference(m)
        .iter()
        .all(|v| g.neighborhood(v).covers_all_or_none_of(m))
}

/// Smallest module of `G[within]` containing `seed`.
pub fn module_closure(g: &Graph, within: &VertexSet, seed: &VertexSet) -> VertexSet {
    let mut m = seed.clone();
    loop {
        let mut splitters = VertexSet::empty(g.n());
        for v in within.difference(&m).iter() {
            if !g.neighborhood(v).covers_all_or_none_of(&m) {
                splitters.insert(v);
            }
        }
        if splitters.is_empty() {
            return m;
        }
        m.union_with(&splitters);
    }
}

/// A graph is prime when it has at least four vertices and only trivial modules.
pub fn is_prime(g: &Graph) -> bool {
    let n = g.n();
    if n < 4 {
        return false;
    }
    let all = g.vertices();
    // A non-trivial module contains some pair, whose closure it then contains.
    for u in 0..n {
        for v in u + 1..n {
            let pair = VertexSet::from_members(n, [u, v]);
            if !module_closure(g, &all, &pair).is_full() {
                return false;
            }
        }
    }
    true
}

/// Label of a node of the strong-module tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Leaf,
    /// Complete quotient (■).
    Complete,
    /// Edgeless quotient (□).
    Empty,
    /// Prime quotient (⊔).
    Prime,
}

/// The maximal strong modules of `G[m]` and the kind of the quotient they induce.
///
/// `m` must be a strong module of `g` with at least two vertices. Blocks are
/// ordered by minimum vertex.
pub fn maximal_strong_modules(g: &Graph, m: &VertexSet) -> (NodeKind, Vec<VertexSet>) {
    debug_assert!(m.len() >= 2);
    let comps = g.components_within(m);
    if comps.len() > 1 {
        return (NodeKind::Empty, comps);
    }
    let co = g.co_components_within(m);
    if co.len() > 1 {
        return (NodeKind::Complete, co);
    }
    // Both G[m] and its complement are connected, so the maximal proper
    // modules partition m.
    let mut rest = m.clone();
    let mut blocks = Vec::new();
    while let Some(v) = rest.min() {
        let mut block = VertexSet::singleton(g.n(), v);
        for u in rest.iter().skip(1) {
            if block.contains(u) {
                continue;
            }
            let pair = VertexSet::from_members(g.n(), [v, u]);
            let closure = module_closure(g, m, &pair);
            if closure != *m {
                block.union_with(&closure);
            }
        }
        rest.difference_with(&block);
        blocks.push(block);
    }
    sort_by_min(&mut blocks);
    (NodeKind::Prime, blocks)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub vertices: VertexSet,
    pub kind: NodeKind,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// The strong modules of a graph ordered by inclusion, with node labels.
///
/// Node 0 is the root `V(G)`. Children are ordered by minimum vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongModuleTree {
    nodes: Vec<TreeNode>,
    leaf_of: Vec<usize>,
}

pub fn strong_module_tree(g: &Graph) -> Result<StrongModuleTree> {
    let n = g.n();
    if n == 0 {
        return Err(Error::precondition(
            "the strong-module tree needs at least one vertex",
        ));
    }
    let mut tree = StrongModuleTree {
        nodes: Vec::new(),
        leaf_of: vec![usize::MAX; n],
    };
    tree.push(g, g.vertices(), None);
    Ok(tree)
}

impl StrongModuleTree {
    fn push(&mut self, g: &Graph, vertices: VertexSet, parent: Option<usize>) -> usize {
        let id = self.nodes.len();
        if vertices.len() == 1 {
            self.leaf_of[vertices.min().unwrap()] = id;
            self.nodes.push(TreeNode {
                vertices,
                kind: NodeKind::Leaf,
                parent,
                children: Vec::new(),
            });
            return id;
        }
        let (kind, blocks) = maximal_strong_modules(g, &vertices);
        self.nodes.push(TreeNode {
            vertices,
            kind,
            parent,
            children: Vec::new(),
        });
        for block in blocks {
            let child = self.push(g, block, Some(id));
            self.nodes[id].children.push(child);
        }
        id
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    /// Node id of the leaf `{v}`.
    pub fn leaf(&self, v: usize) -> usize {
        self.leaf_of[v]
    }

    /// Internal nodes (strong modules with at least two vertices) in preorder.
    pub fn internal_nodes(&self) -> impl Iterator<Item = (usize, &TreeNode)> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, node)| node.kind != NodeKind::Leaf)
    }

    /// All non-empty strong modules.
    pub fn strong_modules(&self) -> Vec<VertexSet> {
        self.nodes
            .iter()
            .map(|node| node.vertices.clone())
            .collect()
    }

    /// Node id whose vertex set is exactly `m`, if `m` is a strong module.
    pub fn find(&self, m: &VertexSet) -> Option<usize> {
        let id = self.up_id(m).ok()?;
        (self.nodes[id].vertices == *m).then_some(id)
    }

    /// The children of node `id` as blocks, i.e. `Π(G[M])`.
    pub fn children_blocks(&self, id: usize) -> Vec<VertexSet> {
        self.nodes[id]
            .children
            .iter()
            .map(|&c| self.nodes[c].vertices.clone())
            .collect()
    }

    fn check_query(&self, w: &VertexSet) -> Result<()> {
        if w.is_empty() {
            return Err(Error::precondition("query set must be non-empty"));
        }
        if !w.is_subset(&self.root().vertices) {
            return Err(Error::precondition("query set is not a vertex subset"));
        }
        Ok(())
    }

    fn up_id(&self, w: &VertexSet) -> Result<usize> {
        self.check_query(w)?;
        let mut at = 0;
        'descend: loop {
            for &c in &self.nodes[at].children {
                if w.is_subset(&self.nodes[c].vertices) {
                    at = c;
                    continue 'descend;
                }
            }
            return Ok(at);
        }
    }

    fn strict_up_id(&self, w: &VertexSet) -> Result<usize> {
        self.check_query(w)?;
        if *w == self.root().vertices {
            return Err(Error::precondition(
                "no strong module strictly contains the whole vertex set",
            ));
        }
        let mut at = 0;
        'descend: loop {
            for &c in &self.nodes[at].children {
                let child = &self.nodes[c].vertices;
                if w.is_subset(child) && child != w {
                    at = c;
                    continue 'descend;
                }
            }
            return Ok(at);
        }
    }

    /// Smallest strong module containing `w`.
    pub fn up(&self, w: &VertexSet) -> Result<&TreeNode> {
        self.up_id(w).map(|id| &self.nodes[id])
    }

    /// Smallest strong module strictly containing `w`; `w` must be a proper subset.
    pub fn strict_up(&self, w: &VertexSet) -> Result<&TreeNode> {
        self.strict_up_id(w).map(|id| &self.nodes[id])
    }

    /// Node id of `{v}`'s parent, i.e. of `{v}↟`. `None` for a single-vertex graph.
    pub fn parent_of_vertex(&self, v: usize) -> Option<usize> {
        self.nodes[self.leaf_of[v]].parent
    }

    /// Nested JSON-ready view of the tree.
    pub fn to_json_tree(&self) -> JsonTreeNode {
        self.json_node(0)
    }

    fn json_node(&self, id: usize) -> JsonTreeNode {
        let node = &self.nodes[id];
        JsonTreeNode {
            vertices: node.vertices.to_vec(),
            label: node.kind,
            children: node.children.iter().map(|&c| self.json_node(c)).collect(),
        }
    }

    /// Indented text rendering using vertex labels from `g`.
    pub fn render(&self, g: &Graph) -> String {
        let mut out = String::new();
        self.render_node(g, 0, 0, &mut out);
        out
    }

    fn render_node(&self, g: &Graph, id: usize, depth: usize, out: &mut String) {
        let node = &self.nodes[id];
        let members: Vec<String> = node.vertices.iter().map(|v| g.label(v)).collect();
        let tag = match node.kind {
            NodeKind::Leaf => "leaf",
            NodeKind::Complete => "complete ■",
            NodeKind::Empty => "empty □",
            NodeKind::Prime => "prime ⊔",
        };
        out.push_str(&format!(
            "{}{tag} {{{}}}\n",
            "  ".repeat(depth),
            members.join(",")
        ));
        for &c in &node.children {
            self.render_node(g, c, depth + 1, out);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsonTreeNode {
    pub vertices: Vec<usize>,
    pub label: NodeKind,
    pub children: Vec<JsonTreeNode>,
}

/// A partition of `V(G)` into modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularPartition {
    blocks: Vec<VertexSet>,
}

impl ModularPartition {
    /// Validates `blocks` as a modular partition of `g` and orders them by minimum vertex.
    pub fn new(g: &Graph, mut blocks: Vec<VertexSet>) -> Result<Self> {
        let mut covered = VertexSet::empty(g.n());
        for b in &blocks {
            if b.universe() != g.n() {
                return Err(Error::precondition(
                    "block from a different vertex universe",
                ));
            }
            if b.is_empty() {
                return Err(Error::precondition("empty block in partition"));
            }
            if b.intersects(&covered) {
                return Err(Error::precondition("partition blocks overlap"));
            }
            if !is_module(g, b) {
                return Err(Error::precondition(format!(
                    "block {:?} is not a module",
                    b.to_vec()
                )));
            }
            covered.union_with(b);
        }
        if !covered.is_full() {
            return Err(Error::precondition("partition does not cover every vertex"));
        }
        sort_by_min(&mut blocks);
        Ok(ModularPartition { blocks })
    }

    pub fn singletons(g: &Graph) -> Self {
        ModularPartition {
            blocks: (0..g.n()).map(|v| VertexSet::singleton(g.n(), v)).collect(),
        }
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }
}

/// The quotient `G/P`: one vertex per block, adjacency inherited from any representatives.
pub fn quotient(g: &Graph, blocks: &[VertexSet]) -> Result<Graph> {
    let p = ModularPartition::new(g, blocks.to_vec())?;
    Ok(quotient_of(g, &p))
}

pub fn quotient_of(g: &Graph, p: &ModularPartition) -> Graph {
    let reps: Vec<usize> = p.blocks.iter().map(|b| b.min().unwrap()).collect();
    let mut q = Graph::empty(reps.len());
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if g.has_edge(reps[i], reps[j]) {
                q.add_edge(i, j).expect("distinct block indices");
            }
        }
    }
    q
}

/// Where a vertex outside a prime set `X` falls relative to `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelativeCell {
    /// `G[X ∪ {v}]` is prime.
    Extender,
    /// `X` stays a module of `G[X ∪ {v}]`.
    Uniform,
    /// `{u, v}` is a module of `G[X ∪ {v}]`.
    TwinOf(usize),
}

/// Partition of `V(G) \ X` relative to a set `X` inducing a prime subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativePartition {
    pub extenders: VertexSet,
    pub uniform: VertexSet,
    /// `(u, X_G(u))` for each `u ∈ X`, in increasing `u`.
    pub twins: Vec<(usize, VertexSet)>,
}

impl RelativePartition {
    pub fn cell_of(&self, v: usize) -> Option<RelativeCell> {
        if self.extenders.contains(v) {
            Some(RelativeCell::Extender)
        } else if self.uniform.contains(v) {
            Some(RelativeCell::Uniform)
        } else {
            self.twins
                .iter()
                .find(|(_, cell)| cell.contains(v))
                .map(|&(u, _)| RelativeCell::TwinOf(u))
        }
    }
}

/// Classifies an outside vertex by its trace `N(v) ∩ X`, given the index built
/// by [`twin_index`]. `G[X]` must be prime for the cells to be exclusive.
pub(crate) fn classify_trace(
    x: &VertexSet,
    trace: &VertexSet,
    twin_index: &HashMap<VertexSet, usize>,
) -> RelativeCell {
    if trace.is_empty() || trace == x {
        return RelativeCell::Uniform;
    }
    match twin_index.get(trace) {
        Some(&u) => RelativeCell::TwinOf(u),
        None => RelativeCell::Extender,
    }
}

/// Maps `N_X(u)` and `N_X(u) ∪ {u}` to `u` for each `u ∈ X`.
pub(crate) fn twin_index(g: &Graph, x: &VertexSet) -> HashMap<VertexSet, usize> {
    let mut index = HashMap::new();
    for u in x {
        let open = g.neighborhood(u).intersection(x);
        let mut closed = open.clone();
        closed.insert(u);
        index.insert(open, u);
        index.insert(closed, u);
    }
    index
}

pub fn partition_relative_to_prime(g: &Graph, x: &VertexSet) -> Result<RelativePartition> {
    if !is_prime(&g.subgraph(x)) {
        return Err(Error::precondition("G[X] must be prime"));
    }
    let n = g.n();
    let index = twin_index(g, x);
    let mut result = RelativePartition {
        extenders: VertexSet::empty(n),
        uniform: VertexSet::empty(n),
        twins: x.iter().map(|u| (u, VertexSet::empty(n))).collect(),
    };
    for v in x.complement().iter() {
        let trace = g.neighborhood(v).intersection(x);
        match classify_trace(x, &trace, &index) {
            RelativeCell::Extender => result.extenders.insert(v),
            RelativeCell::Uniform => result.uniform.insert(v),
            RelativeCell::TwinOf(u) => {
                let slot = result.twins.iter_mut().find(|(w, _)| *w == u).unwrap();
                slot.1.insert(v);
            }
        }
    }
    Ok(result)
}
