//! Minimal modules and the families built from them.
//!
//! The minimal modules with at least two vertices are either twin pairs or
//! sets inducing prime subgraphs. Merging overlapping minimal modules gives a
//! partition of the vertex set whose non-singleton blocks are the maximal
//! clique modules, the maximal stable modules and the prime-inducing minimal
//! modules. The same families are read off the strong-module tree as a second,
//! independent derivation; disagreement is reported as an internal error.

use std::collections::{HashMap, HashSet};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moddecomp::{is_prime, module_closure, strong_module_tree, NodeKind};
use crate::vertex_set::{sort_by_min, sort_by_size_then_min, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    /// Maximal modules that are cliques, with at least two vertices.
    pub cliques: Vec<VertexSet>,
    /// Maximal modules that are stable sets, with at least two vertices.
    pub stables: Vec<VertexSet>,
    /// Minimal modules inducing prime subgraphs.
    pub primes: Vec<VertexSet>,
    /// Vertices lying in no minimal module.
    pub singles: VertexSet,
    /// Blocks of the union of overlapping minimal modules; singletons included.
    pub approx_classes: Vec<VertexSet>,
    /// Vertices grouped by their smallest strictly containing strong module.
    pub twin_classes: Vec<VertexSet>,
    /// Vertices grouped by equal open neighbourhood.
    #[serde(skip)]
    pub sabidussi_classes: Vec<VertexSet>,
}

impl FamilyReport {
    /// Largest clique module size, or 1 when there is none.
    pub fn modular_clique_number(&self) -> usize {
        self.cliques.iter().map(VertexSet::len).max().unwrap_or(1)
    }

    /// Largest stable module size, or 1 when there is none.
    pub fn modular_stability_number(&self) -> usize {
        self.stables.iter().map(VertexSet::len).max().unwrap_or(1)
    }

    /// Members of `cliques` and of `stables` whose size equals the larger of the two numbers above.
    pub fn max_families(&self) -> (Vec<VertexSet>, Vec<VertexSet>) {
        let m = self
            .modular_clique_number()
            .max(self.modular_stability_number());
        let pick = |family: &[VertexSet]| -> Vec<VertexSet> {
            family.iter().filter(|c| c.len() == m).cloned().collect()
        };
        (pick(&self.cliques), pick(&self.stables))
    }

    /// The members of the three families in one list: cliques, stables, primes.
    pub fn members(&self) -> impl Iterator<Item = &VertexSet> {
        self.cliques.iter().chain(&self.stables).chain(&self.primes)
    }
}

/// Closures of all vertex pairs, deduplicated.
fn pair_closures(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let all = g.vertices();
    let mut seen = HashSet::new();
    let mut closures = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let c = module_closure(g, &all, &VertexSet::from_members(n, [u, v]));
            if seen.insert(c.clone()) {
                closures.push(c);
            }
        }
    }
    closures
}

/// All inclusion-minimal modules with at least two vertices, ordered by minimum vertex.
///
/// Each such module is the closure of any pair it contains, so it suffices to
/// keep the pair closures containing no other pair closure.
pub fn minimal_modules(g: &Graph) -> Vec<VertexSet> {
    let mut closures = pair_closures(g);
    closures.sort_by_key(VertexSet::len);
    // Any non-minimal closure contains a minimal one, which is itself a closure.
    let mut minimal: Vec<VertexSet> = Vec::new();
    for c in closures {
        if !minimal.iter().any(|m| m.is_subset(&c)) {
            minimal.push(c);
        }
    }
    sort_by_min(&mut minimal);
    minimal
}

/// Partition of `V(G)` by equal open neighbourhood, ordered by minimum vertex.
pub fn sabidussi_classes(g: &Graph) -> Vec<VertexSet> {
    group_by_key(g.n(), |v| g.neighborhood(v).clone())
}

fn group_by_key<K: std::hash::Hash + Eq>(n: usize, key: impl Fn(usize) -> K) -> Vec<VertexSet> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut classes: Vec<VertexSet> = Vec::new();
    for v in 0..n {
        let slot = *index.entry(key(v)).or_insert_with(|| {
            classes.push(VertexSet::empty(n));
            classes.len() - 1
        });
        classes[slot].insert(v);
    }
    classes
}

pub fn compute_families(g: &Graph) -> Result<FamilyReport> {
    let n = g.n();
    if n == 0 {
        return Err(Error::precondition("families need at least one vertex"));
    }

    let minimal = minimal_modules(g);
    let mut uf = UnionFind::<usize>::new(n);
    for m in &minimal {
        let first = m.min().expect("minimal modules are non-empty");
        for v in m.iter().skip(1) {
            uf.union(first, v);
        }
    }
    let labels = uf.into_labeling();
    let mut approx_classes = group_by_key(n, |v| labels[v]);
    sort_by_min(&mut approx_classes);

    let mut cliques = Vec::new();
    let mut stables = Vec::new();
    let mut primes = Vec::new();
    let mut singles = VertexSet::empty(n);
    for block in &approx_classes {
        if block.len() == 1 {
            singles.union_with(block);
        } else if g.is_clique(block) {
            cliques.push(block.clone());
        } else if g.is_stable(block) {
            stables.push(block.clone());
        } else {
            primes.push(block.clone());
        }
    }
    sort_by_size_then_min(&mut cliques);
    sort_by_size_then_min(&mut stables);
    sort_by_size_then_min(&mut primes);

    let tree = strong_module_tree(g)?;
    let mut twin_classes = group_by_key(n, |v| tree.parent_of_vertex(v));
    sort_by_min(&mut twin_classes);

    let report = FamilyReport {
        cliques,
        stables,
        primes,
        singles,
        approx_classes,
        twin_classes,
        sabidussi_classes: sabidussi_classes(g),
    };
    cross_check(g, &report, &tree)?;
    Ok(report)
}

fn mismatch(what: &str, left: &[VertexSet], right: &[VertexSet]) -> Error {
    Error::Internal(format!("{what} disagree: {left:?} vs {right:?}"))
}

/// Re-derives the families from the strong-module tree and the neighbourhoods.
fn cross_check(
    g: &Graph,
    report: &FamilyReport,
    tree: &crate::moddecomp::StrongModuleTree,
) -> Result<()> {
    let mut cliques = Vec::new();
    let mut stables = Vec::new();
    let mut primes = Vec::new();
    for class in &report.twin_classes {
        let v = class.min().expect("classes are non-empty");
        let Some(parent) = tree.parent_of_vertex(v) else {
            continue;
        };
        let node = tree.node(parent);
        match node.kind {
            NodeKind::Complete if class.len() >= 2 => cliques.push(class.clone()),
            NodeKind::Empty if class.len() >= 2 => stables.push(class.clone()),
            NodeKind::Prime if *class == node.vertices => primes.push(class.clone()),
            _ => {}
        }
    }
    sort_by_size_then_min(&mut cliques);
    sort_by_size_then_min(&mut stables);
    sort_by_size_then_min(&mut primes);
    if cliques != report.cliques {
        return Err(mismatch("clique modules", &report.cliques, &cliques));
    }
    if stables != report.stables {
        return Err(mismatch("stable modules", &report.stables, &stables));
    }
    if primes != report.primes {
        return Err(mismatch("prime modules", &report.primes, &primes));
    }
    if let Some(p) = primes.iter().find(|p| !is_prime(&g.subgraph(p))) {
        return Err(Error::Internal(format!(
            "{p:?} does not induce a prime graph"
        )));
    }

    let mut false_twins: Vec<VertexSet> = report
        .sabidussi_classes
        .iter()
        .filter(|c| c.len() >= 2)
        .cloned()
        .collect();
    sort_by_size_then_min(&mut false_twins);
    if false_twins != report.stables {
        return Err(mismatch(
            "false-twin classes",
            &report.stables,
            &false_twins,
        ));
    }
    Ok(())
}

/// Clique and stable members of maximum size; see [`FamilyReport::max_families`].
pub fn max_families(g: &Graph) -> Result<(Vec<VertexSet>, Vec<VertexSet>)> {
    Ok(compute_families(g)?.max_families())
}
