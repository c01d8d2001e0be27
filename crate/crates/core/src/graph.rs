//! Undirected simple graphs over dense vertex ids and their elementary predicates.

use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// An undirected simple graph on the vertices `0..n`.
///
/// Adjacency rows are kept symmetric and irreflexive by every constructor, so
/// a `Graph` value always satisfies those invariants.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    names: Option<Vec<String>>,
}

/// How a vertex relates to a set that does not contain it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniformity {
    /// No edge to the set. Also returned for the empty set.
    Zero,
    /// An edge to every member.
    One,
    Mixed,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::empty(n); n],
            names: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    /// Path `0-1-…-(n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn set_names(&mut self, names: Vec<String>) -> Result<()> {
        if names.len() != self.n() {
            return Err(Error::precondition(format!(
                "{} names given for {} vertices",
                names.len(),
                self.n()
            )));
        }
        self.names = Some(names);
        Ok(())
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        self.set_names(names)?;
        Ok(self)
    }

    /// Display label of `v`: its name when present, otherwise the id.
    pub fn label(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    /// Id of the vertex carrying `name`.
    pub fn vertex_named(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|x| x == name)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Adds `{u, v}`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n() && v < self.n() {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        }
    }

    /// Sets the pair `{u, v}` to an edge or a non-edge.
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) -> Result<()> {
        if present {
            self.add_edge(u, v)
        } else {
            self.check_vertex(u)?;
            self.check_vertex(v)?;
            self.remove_edge(u, v);
            Ok(())
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighborhood(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|v| {
                let mut row = self.adj[v].complement();
                row.remove(v);
                row
            })
            .collect();
        Graph {
            adj,
            names: self.names.clone(),
        }
    }

    /// `G[W]` relabelled densely in increasing id order, with the map from new
    /// ids to old ids.
    pub fn induced_subgraph(&self, w: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if w.universe() != self.n() {
            if let Some(v) = w.iter().find(|&v| v >= self.n()) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n(),
                });
            }
        }
        let map: Vec<usize> = w.iter().collect();
        let k = map.len();
        let mut sub = Graph::empty(k);
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    sub.adj[i].insert(j);
                    sub.adj[j].insert(i);
                }
            }
        }
        if let Some(names) = &self.names {
            sub.names = Some(map.iter().map(|&v| names[v].clone()).collect());
        }
        Ok((sub, map))
    }

    /// `G[W]` when only the structure matters.
    pub fn subgraph(&self, w: &VertexSet) -> Graph {
        self.induced_subgraph(w)
            .expect("vertex set belongs to this graph")
            .0
    }

    pub fn is_clique(&self, w: &VertexSet) -> bool {
        w.iter().all(|v| {
            let mut rest = w.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    pub fn is_stable(&self, w: &VertexSet) -> bool {
        w.iter().all(|v| self.adj[v].is_disjoint(w))
    }

    pub fn is_complete(&self) -> bool {
        self.is_clique(&self.vertices())
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(VertexSet::is_empty)
    }

    /// `Iso(G)`: vertices without neighbours.
    pub fn isolated_vertices(&self) -> VertexSet {
        VertexSet::from_members(self.n(), (0..self.n()).filter(|&v| self.adj[v].is_empty()))
    }

    /// Vertices adjacent to every other vertex, i.e. `Iso` of the complement.
    pub fn dominating_vertices(&self) -> VertexSet {
        let n = self.n();
        VertexSet::from_members(n, (0..n).filter(|&v| self.adj[v].len() + 1 == n))
    }

    /// Whether `v` sees all of `w`, none of it, or a mix. `v` must not be in `w`.
    pub fn uniform_to(&self, v: usize, w: &VertexSet) -> Uniformity {
        debug_assert!(!w.contains(v));
        let hits = self.adj[v].intersection_len(w);
        if hits == 0 {
            Uniformity::Zero
        } else if hits == w.len() {
            Uniformity::One
        } else {
            Uniformity::Mixed
        }
    }

    /// Edge indicator between disjoint sets: `Some(true)` when fully adjacent,
    /// `Some(false)` when fully non-adjacent, `None` otherwise.
    pub fn sets_adjacency(&self, a: &VertexSet, b: &VertexSet) -> Option<bool> {
        let mut seen = None;
        for v in a {
            let u = match self.uniform_to(v, b) {
                Uniformity::Zero => false,
                Uniformity::One => true,
                Uniformity::Mixed => return None,
            };
            if *seen.get_or_insert(u) != u {
                return None;
            }
        }
        Some(seen.unwrap_or(false))
    }

    /// Connected components, ordered by minimum vertex.
    pub fn components_within(&self, m: &VertexSet) -> Vec<VertexSet> {
        components(m, |v| self.adj[v].clone())
    }

    /// Components of the complement restricted to `m`, ordered by minimum vertex.
    pub fn co_components_within(&self, m: &VertexSet) -> Vec<VertexSet> {
        components(m, |v| {
            let mut row = self.adj[v].complement();
            row.remove(v);
            row
        })
    }

    /// Structural equality that ignores vertex names.
    pub fn same_structure(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }
}

fn components(m: &VertexSet, row: impl Fn(usize) -> VertexSet) -> Vec<VertexSet> {
    let mut unseen = m.clone();
    let mut out = Vec::new();
    while let Some(start) = unseen.min() {
        let mut comp = VertexSet::singleton(m.universe(), start);
        let mut frontier = comp.clone();
        unseen.remove(start);
        while !frontier.is_empty() {
            let mut next = VertexSet::empty(m.universe());
            for v in &frontier {
                next.union_with(&row(v));
            }
            next.intersect_with(&unseen);
            unseen.difference_with(&next);
            comp.union_with(&next);
            frontier = next;
        }
        out.push(comp);
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}
