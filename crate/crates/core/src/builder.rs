//! Construction of prime extensions with the optimal number of added vertices.
//!
//! Added vertices always get ids `n, n + 1, …` after the `n` original ones.
//! Every free choice is fixed: the witness module is the largest clique or
//! stable module with the smallest minimum vertex, injections into subsets of
//! the added vertices enumerate masks in increasing binary order, and
//! neighbourhoods inside prime-inducing modules are the first admissible ones
//! in binary order over the module's sorted members.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::bound::{ceil_log2, modular_numbers_from, prime_bound, BoundCase, ModularNumbers};
use crate::error::{Error, Result};
use crate::families::{compute_families, FamilyReport};
use crate::graph::Graph;
use crate::io::{parse_edge_list, write_edge_list};
use crate::moddecomp::{classify_trace, is_prime, twin_index, RelativeCell};
use crate::vertex_set::VertexSet;

/// Largest order for which [`prime_one_extension_neighborhoods`] enumerates subsets.
pub const ONE_EXTENSION_LIMIT: usize = 20;

/// What an original vertex is in the input graph's family report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// Member of the module realising the modular number.
    Witness,
    Clique,
    Stable,
    Prime,
    Single,
    /// Set aside before the recursive construction and re-attached afterwards.
    Removed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub role: Role,
    /// Added vertices adjacent to this vertex in the extension.
    pub added_neighbors: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    /// The witness module (or the first prime-inducing module when there is
    /// no clique or stable module), in ids of the input graph.
    pub s0: Vec<usize>,
    /// Whether the gadget was built on the complement.
    pub flip: bool,
    /// One vertex of each largest module, removed for the recursive step.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<usize>,
    /// Keyed by original vertex id.
    pub attachments: BTreeMap<usize, Attachment>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionResult {
    pub h: Graph,
    pub original: VertexSet,
    pub added: VertexSet,
    pub p: usize,
    pub case: BoundCase,
    pub trace: Trace,
}

/// JSON form of an [`ExtensionResult`]; `graph` is the edge-list text of the extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub p: usize,
    pub case: BoundCase,
    pub added: Vec<usize>,
    pub trace: Trace,
    pub graph: String,
}

impl ExtensionResult {
    pub fn report(&self) -> ExtensionReport {
        ExtensionReport {
            p: self.p,
            case: self.case,
            added: self.added.to_vec(),
            trace: self.trace.clone(),
            graph: write_edge_list(&self.h),
        }
    }

    pub fn from_report(report: &ExtensionReport) -> Result<Self> {
        let h = parse_edge_list(&report.graph)?;
        if let Some(&v) = report.added.iter().find(|&&v| v >= h.n()) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: h.n(),
            });
        }
        let added = VertexSet::from_members(h.n(), report.added.iter().copied());
        Ok(ExtensionResult {
            original: added.complement(),
            added,
            p: report.p,
            case: report.case,
            trace: report.trace.clone(),
            h,
        })
    }
}

fn mask_members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |j| mask >> j & 1 == 1)
}

/// Neighbourhood masks over the added vertices for a stable witness of size
/// `size_s ≥ 3`, indexed by position in the sorted witness, together with the
/// injection sending added vertex `j` to the witness position whose mask is
/// everything but `j`.
fn gadget_masks(size_s: usize) -> (Vec<u64>, Vec<usize>) {
    let t = ceil_log2(size_s + 1);
    let full = (1u64 << t) - 1;
    let mut masks = vec![0u64; size_s];
    let mut used = HashSet::new();
    let mut phi = Vec::with_capacity(t);
    for j in 0..t {
        let s = size_s - 1 - j;
        masks[s] = full ^ (1 << j);
        used.insert(masks[s]);
        phi.push(s);
    }
    let mut next = 1u64;
    for mask in masks.iter_mut().take(size_s - t) {
        while used.contains(&next) {
            next += 1;
        }
        *mask = next;
        next += 1;
    }
    (masks, phi)
}

/// Two stable sets `S = 0..size_s` and `S′ = size_s..size_s + ⌈log₂(size_s + 1)⌉`
/// forming a prime graph, and the injection `φ` from `S′` into `S`
/// (`phi[j]` is the image of `size_s + j`) with `N(φ(s′)) = S′ ∖ {s′}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableGadget {
    pub graph: Graph,
    pub phi: Vec<usize>,
}

pub fn build_stable_stable_gadget(size_s: usize) -> Result<StableGadget> {
    if size_s < 3 {
        return Err(Error::precondition(format!(
            "the stable gadget needs at least 3 vertices, got {size_s}"
        )));
    }
    let t = ceil_log2(size_s + 1);
    let (masks, phi) = gadget_masks(size_s);
    let mut graph = Graph::empty(size_s + t);
    for (s, &mask) in masks.iter().enumerate() {
        for j in mask_members(mask) {
            graph.add_edge(s, size_s + j)?;
        }
    }
    Ok(StableGadget { graph, phi })
}

/// Exact primality criterion for a graph split into two stable sets `S` and
/// `S′` with `|S′| = ⌈log₂(|S| + 1)⌉ ≥ 2`: neighbourhoods of `S` are distinct
/// and non-empty, and when `|S| = 2^(|S′|-1)` no edge joins two degree-one vertices.
pub fn check_2xstable(g: &Graph, s: &VertexSet, s_prime: &VertexSet) -> Result<bool> {
    if s.universe() != g.n() || s_prime.universe() != g.n() {
        return Err(Error::precondition(
            "S and S′ must be vertex sets of the graph",
        ));
    }
    if !s.is_disjoint(s_prime) || !s.union(s_prime).is_full() {
        return Err(Error::precondition(
            "S and S′ must partition the vertex set",
        ));
    }
    if !g.is_stable(s) || !g.is_stable(s_prime) {
        return Err(Error::precondition("S and S′ must both be stable"));
    }
    let t = s_prime.len();
    if t < 2 || t != ceil_log2(s.len() + 1) {
        return Err(Error::precondition(format!(
            "|S′| = {t} must equal ⌈log₂(|S| + 1)⌉ and be at least 2"
        )));
    }
    let mut seen = HashSet::new();
    for v in s {
        let nb = g.neighborhood(v);
        if nb.is_empty() || !seen.insert(nb.clone()) {
            return Ok(false);
        }
    }
    if s.len() == 1 << (t - 1) {
        for v in s.iter().filter(|&v| g.degree(v) == 1) {
            let u = g.neighborhood(v).min().expect("degree one");
            if g.degree(u) == 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn excluded_one_extension_sets(g: &Graph, p: &VertexSet) -> HashSet<VertexSet> {
    let mut excluded = HashSet::new();
    excluded.insert(VertexSet::empty(g.n()));
    excluded.insert(p.clone());
    for v in p {
        let open = g.neighborhood(v).intersection(p);
        let mut closed = open.clone();
        closed.insert(v);
        excluded.insert(open);
        excluded.insert(closed);
    }
    excluded
}

/// Every neighbourhood in `V(G)` whose attachment to one new vertex keeps `G` prime,
/// in increasing binary order. There are exactly `2^n − 2n − 2` of them.
pub fn prime_one_extension_neighborhoods(g: &Graph) -> Result<Vec<VertexSet>> {
    let n = g.n();
    if n > ONE_EXTENSION_LIMIT {
        return Err(Error::Budget(format!(
            "enumerating 2^{n} neighbourhoods exceeds the limit of {ONE_EXTENSION_LIMIT} vertices"
        )));
    }
    if !is_prime(g) {
        return Err(Error::precondition("the graph must be prime"));
    }
    let excluded = excluded_one_extension_sets(g, &g.vertices());
    Ok((0..1u64 << n)
        .map(|mask| VertexSet::from_mask(n, mask))
        .filter(|c| !excluded.contains(c))
        .collect())
}

/// First admissible one-extension neighbourhood of `G[P]`, as a subset of `P`.
///
/// Candidates are enumerated in binary order over the sorted members of `P`;
/// at most `2|P| + 2` of them are excluded, so the search is short.
pub(crate) fn first_admissible(g: &Graph, p: &VertexSet) -> VertexSet {
    let members = p.to_vec();
    let excluded = excluded_one_extension_sets(g, p);
    let limit = 2 * members.len() as u64 + 3;
    (0..limit)
        .map(|c| {
            VertexSet::from_members(
                g.n(),
                members
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i < 64 && c >> i & 1 == 1)
                    .map(|(_, &v)| v),
            )
        })
        .find(|c| !excluded.contains(c))
        .expect("a prime module has an admissible neighbourhood among the first 2|P| + 3 subsets")
}

fn attach_mask(h: &mut Graph, v: usize, first_added: usize, mask: u64) -> Result<()> {
    for j in mask_members(mask) {
        h.add_edge(v, first_added + j)?;
    }
    Ok(())
}

fn copy_edges(from: &Graph, to: &mut Graph) -> Result<()> {
    for (u, v) in from.edges() {
        to.add_edge(u, v)?;
    }
    Ok(())
}

/// Checks that every added vertex extends `G[P]` to a prime graph.
fn assert_extenders(h: &Graph, p: &VertexSet, added: std::ops::Range<usize>) -> Result<()> {
    let wide = VertexSet::from_members(h.n(), p.iter());
    let index = twin_index(h, &wide);
    for a in added {
        let trace = h.neighborhood(a).intersection(&wide);
        if classify_trace(&wide, &trace, &index) != RelativeCell::Extender {
            return Err(Error::Internal(format!(
                "added vertex {a} does not extend the prime module {p:?}"
            )));
        }
    }
    Ok(())
}

fn widen(s: &VertexSet, universe: usize) -> VertexSet {
    VertexSet::from_members(universe, s.iter())
}

/// Core of the `⌈log₂(m + 1)⌉` construction. Returns the extension on
/// `n + ⌈log₂(m + 1)⌉` vertices and whether the complement was used.
fn mainone_graph(g: &Graph, report: &FamilyReport, nums: &ModularNumbers) -> Result<(Graph, bool)> {
    let n = g.n();
    let m = nums.m;
    if m < 2 {
        return Err(Error::precondition(format!("needs m ≥ 2, got m = {m}")));
    }
    let s0 = &nums.witness;
    // Pairs are handled with a path through a clique pair, larger witnesses
    // with the stable gadget; work on the complement when the witness has the
    // other shape.
    let flip = if m == 2 {
        g.is_stable(s0)
    } else {
        g.is_clique(s0)
    };
    let wg = if flip { g.complement() } else { g.clone() };
    let (cliques, stables) = if flip {
        (&report.stables, &report.cliques)
    } else {
        (&report.cliques, &report.stables)
    };

    let t = ceil_log2(m + 1);
    let full = (1u64 << t) - 1;
    let mut h = Graph::empty(n + t);
    copy_edges(&wg, &mut h)?;

    let s0_members = s0.to_vec();
    if m == 2 {
        h.add_edge(n, s0_members[0])?;
        h.add_edge(n + 1, s0_members[1])?;
    } else {
        let (masks, _) = gadget_masks(m);
        for (&v, &mask) in s0_members.iter().zip(&masks) {
            attach_mask(&mut h, v, n, mask)?;
        }
    }

    for c in cliques.iter().filter(|c| *c != s0) {
        let masks = (0..full).take(c.len());
        for (v, mask) in c.iter().zip(masks) {
            attach_mask(&mut h, v, n, mask)?;
        }
    }
    for s in stables.iter().filter(|s| *s != s0) {
        let masks = 1..=full;
        for (v, mask) in s.iter().zip(masks) {
            attach_mask(&mut h, v, n, mask)?;
        }
    }
    for p in &report.primes {
        let nb = first_admissible(&wg, p);
        for a in n..n + t {
            for v in &nb {
                h.add_edge(v, a)?;
            }
        }
        assert_extenders(&h, p, n..n + t)?;
    }
    let anchor = s0.min().expect("witness is non-empty");
    for v in &report.singles {
        if !wg.has_edge(v, anchor) {
            h.add_edge(v, n)?;
        }
    }
    if flip {
        h = h.complement();
    }
    Ok((h, flip))
}

fn role_of(report: &FamilyReport, witness: &VertexSet, removed: &[usize], v: usize) -> Role {
    if removed.contains(&v) {
        Role::Removed
    } else if witness.len() >= 2 && witness.contains(v) {
        Role::Witness
    } else if report.cliques.iter().any(|c| c.contains(v)) {
        Role::Clique
    } else if report.stables.iter().any(|s| s.contains(v)) {
        Role::Stable
    } else if report.primes.iter().any(|p| p.contains(v)) {
        Role::Prime
    } else {
        Role::Single
    }
}

struct Draft {
    h: Graph,
    case: BoundCase,
    s0: VertexSet,
    flip: bool,
    removed: Vec<usize>,
}

fn finish(g: &Graph, report: Option<&FamilyReport>, draft: Draft) -> Result<ExtensionResult> {
    let n = g.n();
    let Draft {
        mut h,
        case,
        s0,
        flip,
        removed,
    } = draft;
    let total = h.n();
    if total < n || !h.subgraph(&widen(&g.vertices(), total)).same_structure(g) {
        return Err(Error::Internal(
            "construction changed the input graph".into(),
        ));
    }
    let original = widen(&g.vertices(), total);
    let added = original.complement();
    if let Some(names) = g.names() {
        let mut all = names.to_vec();
        all.extend((0..added.len()).map(|j| format!("x{j}")));
        h.set_names(all)?;
    }
    let mut attachments = BTreeMap::new();
    if let Some(report) = report {
        for v in 0..n {
            attachments.insert(
                v,
                Attachment {
                    role: role_of(report, &s0, &removed, v),
                    added_neighbors: h.neighborhood(v).intersection(&added).to_vec(),
                },
            );
        }
    }
    Ok(ExtensionResult {
        p: added.len(),
        case,
        trace: Trace {
            s0: s0.to_vec(),
            flip,
            removed,
            attachments,
        },
        original,
        added,
        h,
    })
}

/// Extension with `⌈log₂(m + 1)⌉` added vertices, prime whenever `m ≥ 2`.
pub fn build_mainone_extension(g: &Graph, report: &FamilyReport) -> Result<ExtensionResult> {
    let nums = modular_numbers_from(report, g.n().max(1));
    let (h, flip) = mainone_graph(g, report, &nums)?;
    let case = if nums.m.is_power_of_two() {
        BoundCase::PowerIso
    } else {
        BoundCase::NonPower
    };
    finish(
        g,
        Some(report),
        Draft {
            h,
            case,
            s0: nums.witness,
            flip,
            removed: Vec::new(),
        },
    )
}

/// Extension with `k` added vertices when `m = 2^k` and neither the isolated
/// nor the dominating vertices number `2^k`.
pub fn build_power_extension(g: &Graph, report: &FamilyReport) -> Result<ExtensionResult> {
    let n = g.n();
    let nums = modular_numbers_from(report, n.max(1));
    let m = nums.m;
    if m < 2 || !m.is_power_of_two() {
        return Err(Error::precondition(format!(
            "needs m = 2^k with k ≥ 1, got m = {m}"
        )));
    }
    if g.isolated_vertices().len() == m || g.dominating_vertices().len() == m {
        return Err(Error::precondition(
            "isolated or dominating vertices number exactly m",
        ));
    }
    let k = m.trailing_zeros() as usize;
    if k == 1 {
        let alpha = n;
        let mut h = Graph::empty(n + 1);
        copy_edges(g, &mut h)?;
        for c in report.cliques.iter().chain(&report.stables) {
            h.add_edge(c.min().expect("non-empty"), alpha)?;
        }
        for p in &report.primes {
            for v in &first_admissible(g, p) {
                h.add_edge(v, alpha)?;
            }
            assert_extenders(&h, p, alpha..alpha + 1)?;
        }
        let anchor = nums.witness.min().expect("witness is non-empty");
        for v in &report.singles {
            if !g.has_edge(v, anchor) {
                h.add_edge(v, alpha)?;
            }
        }
        return finish(
            g,
            Some(report),
            Draft {
                h,
                case: BoundCase::PowerNonIso,
                s0: nums.witness,
                flip: false,
                removed: Vec::new(),
            },
        );
    }

    let (cmax, smax) = report.max_families();
    let largest: Vec<VertexSet> = cmax.into_iter().chain(smax).collect();
    let mut removed: Vec<usize> = largest
        .iter()
        .map(|c| c.min().expect("non-empty"))
        .collect();
    removed.sort_unstable();
    let keep = g
        .vertices()
        .difference(&VertexSet::from_members(n, removed.iter().copied()));
    let (g_rest, map) = g.induced_subgraph(&keep)?;
    let rest_report = compute_families(&g_rest)?;
    let rest_nums = modular_numbers_from(&rest_report, g_rest.n());
    if rest_nums.m != m - 1 {
        return Err(Error::Internal(format!(
            "removing one vertex per largest module left m = {}, expected {}",
            rest_nums.m,
            m - 1
        )));
    }
    let (h_rest, flip) = mainone_graph(&g_rest, &rest_report, &rest_nums)?;
    let n_rest = g_rest.n();
    debug_assert_eq!(h_rest.n(), n_rest + k);

    let lift = |v: usize| if v < n_rest { map[v] } else { n + (v - n_rest) };
    let mut h = Graph::empty(n + k);
    copy_edges(g, &mut h)?;
    for (u, v) in h_rest.edges() {
        h.add_edge(lift(u), lift(v))?;
    }
    let trace_mask = |v: usize| -> u64 {
        (0..k)
            .filter(|&j| h_rest.has_edge(v, n_rest + j))
            .fold(0, |acc, j| acc | 1 << j)
    };
    for c in &largest {
        let w = c.min().expect("non-empty");
        let used: HashSet<u64> = c
            .iter()
            .filter(|&v| v != w)
            .map(|v| trace_mask(map.binary_search(&v).expect("kept vertex")))
            .collect();
        let missing: Vec<u64> = (0..1u64 << k).filter(|x| !used.contains(x)).collect();
        if missing.len() != 1 {
            return Err(Error::Internal(format!(
                "module {c:?} leaves {} unused neighbourhoods, expected exactly one",
                missing.len()
            )));
        }
        attach_mask(&mut h, w, n, missing[0])?;
    }
    let s0 = VertexSet::from_members(n, rest_nums.witness.iter().map(|v| map[v]));
    finish(
        g,
        Some(report),
        Draft {
            h,
            case: BoundCase::PowerNonIso,
            s0,
            flip,
            removed,
        },
    )
}

/// One added vertex for a non-prime graph on at least four vertices without
/// clique or stable modules of size two.
pub fn build_m1_extension(g: &Graph, report: &FamilyReport) -> Result<ExtensionResult> {
    let n = g.n();
    if n < 4 || is_prime(g) {
        return Err(Error::precondition(
            "needs a non-prime graph on at least four vertices",
        ));
    }
    if !report.cliques.is_empty() || !report.stables.is_empty() {
        return Err(Error::precondition("needs a graph without twin vertices"));
    }
    let p0 = report
        .primes
        .first()
        .ok_or_else(|| Error::Internal("no prime-inducing module".into()))?;
    let alpha = n;
    let mut h = Graph::empty(n + 1);
    copy_edges(g, &mut h)?;
    for p in &report.primes {
        for v in &first_admissible(g, p) {
            h.add_edge(v, alpha)?;
        }
        assert_extenders(&h, p, alpha..alpha + 1)?;
    }
    let anchor = p0.min().expect("non-empty");
    for v in &report.singles {
        if !g.has_edge(v, anchor) {
            h.add_edge(v, alpha)?;
        }
    }
    finish(
        g,
        Some(report),
        Draft {
            h,
            case: BoundCase::MOne,
            s0: p0.clone(),
            flip: false,
            removed: Vec::new(),
        },
    )
}

fn build_tiny_extension(g: &Graph) -> Result<ExtensionResult> {
    let n = g.n();
    let h = Graph::path(4);
    let report = if n == 1 {
        Some(compute_families(g)?)
    } else {
        None
    };
    finish(
        g,
        report.as_ref(),
        Draft {
            h,
            case: BoundCase::Tiny,
            s0: VertexSet::empty(n),
            flip: false,
            removed: Vec::new(),
        },
    )
}

/// A prime extension of `g` with exactly `p(G)` added vertices.
pub fn build_prime_extension(g: &Graph) -> Result<ExtensionResult> {
    let cert = prime_bound(g)?;
    let result = match cert.case {
        BoundCase::Tiny => build_tiny_extension(g)?,
        BoundCase::AlreadyPrime => {
            let report = compute_families(g)?;
            finish(
                g,
                Some(&report),
                Draft {
                    h: g.clone(),
                    case: BoundCase::AlreadyPrime,
                    s0: VertexSet::empty(g.n()),
                    flip: false,
                    removed: Vec::new(),
                },
            )?
        }
        BoundCase::MOne => build_m1_extension(g, &compute_families(g)?)?,
        BoundCase::NonPower | BoundCase::PowerIso => {
            build_mainone_extension(g, &compute_families(g)?)?
        }
        BoundCase::PowerNonIso => build_power_extension(g, &compute_families(g)?)?,
    };
    if result.p != cert.p || result.case != cert.case {
        return Err(Error::Internal(format!(
            "construction added {} vertices ({:?}) but the bound is {} ({:?})",
            result.p, result.case, cert.p, cert.case
        )));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{
        exhaustive_prime_bound, is_prime_bruteforce, verify_extension, OracleBudget,
    };
    use crate::testing::{arb_graph, arb_modular_graph, fig1, fig3, graph_from_bits, set};
    use proptest::prelude::*;

    fn assert_sound(g: &Graph, r: &ExtensionResult) {
        let v = verify_extension(g, r);
        assert!(v.ok, "{:?} for {g:?}", v.diagnoses);
        assert!(is_prime(&r.h));
    }

    #[test]
    fn five_vertex_gadget_is_exact() {
        let gadget = build_stable_stable_gadget(5).unwrap();
        let g = &gadget.graph;
        assert_eq!(g.n(), 8);
        // S = s1..s5 at 0..5, S′ = s′1..s′3 at 5..8.
        assert_eq!(gadget.phi, vec![4, 3, 2]);
        let nb = |v: usize| g.neighborhood(v).to_vec();
        assert_eq!(nb(0), vec![5]);
        assert_eq!(nb(1), vec![6]);
        assert_eq!(nb(2), vec![5, 6]);
        assert_eq!(nb(3), vec![5, 7]);
        assert_eq!(nb(4), vec![6, 7]);
        assert!(is_prime_bruteforce(g));
        assert!(build_stable_stable_gadget(2).is_err());
    }

    #[test]
    fn gadgets_are_prime() {
        for size in 3..=24 {
            let gadget = build_stable_stable_gadget(size).unwrap();
            let g = &gadget.graph;
            let t = g.n() - size;
            let s = VertexSet::from_members(g.n(), 0..size);
            assert!(is_prime(g), "size {size}");
            assert!(check_2xstable(g, &s, &s.complement()).unwrap());
            for (j, &phi) in gadget.phi.iter().enumerate() {
                let mut expected = s.complement();
                expected.remove(size + j);
                assert_eq!(g.neighborhood(phi), &expected);
            }
            if size == 1 << (t - 1) {
                assert!((size..g.n()).all(|v| g.degree(v) >= 2));
            }
        }
        let g = build_stable_stable_gadget(8).unwrap().graph;
        assert_eq!(g.n(), 12);
        assert!(is_prime_bruteforce(&g));
    }

    #[test]
    fn check_2xstable_examples() {
        let fig2 = build_stable_stable_gadget(5).unwrap().graph;
        assert!(check_2xstable(&fig2, &set(8, &[0, 1, 2, 3, 4]), &set(8, &[5, 6, 7])).unwrap());
        let mut twins = fig2.clone();
        twins.remove_edge(1, 6);
        twins.add_edge(1, 5).unwrap();
        assert!(!check_2xstable(&twins, &set(8, &[0, 1, 2, 3, 4]), &set(8, &[5, 6, 7])).unwrap());

        // S = {0, 1}, S′ = {2, 3}. The path 0-2-1-3 passes.
        let path = Graph::from_edges(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        assert!(check_2xstable(&path, &set(4, &[0, 1]), &set(4, &[2, 3])).unwrap());
        assert!(is_prime(&path));
        // Two disjoint edges: injective, but 0-2 joins two degree-one vertices.
        let bad = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        assert!(!check_2xstable(&bad, &set(4, &[0, 1]), &set(4, &[2, 3])).unwrap());
        assert!(!is_prime(&bad));
        assert!(check_2xstable(&bad, &set(4, &[0]), &set(4, &[1, 2, 3])).is_err());
    }

    #[test]
    fn check_2xstable_matches_primality() {
        // Every bipartite graph between S (size 2..=6) and S′ of the matching size.
        for size in 2..=6usize {
            let t = ceil_log2(size + 1);
            let n = size + t;
            let s = VertexSet::from_members(n, 0..size);
            let rows = 1u64 << t;
            let total = rows.pow(size as u32);
            let step = (total / 4096).max(1);
            let mut code = 0;
            while code < total {
                let mut g = Graph::empty(n);
                let mut rest = code;
                for v in 0..size {
                    attach_mask(&mut g, v, size, rest % rows).unwrap();
                    rest /= rows;
                }
                assert_eq!(
                    check_2xstable(&g, &s, &s.complement()).unwrap(),
                    is_prime_bruteforce(&g),
                    "size {size}, code {code}"
                );
                code += step;
            }
        }
    }

    #[test]
    fn one_extension_neighbourhoods_of_p4() {
        let p4 = Graph::path(4);
        let nbs = prime_one_extension_neighborhoods(&p4).unwrap();
        assert_eq!(nbs.len(), 6);
        for nb in &nbs {
            let mut h = Graph::empty(5);
            copy_edges(&p4, &mut h).unwrap();
            for v in nb {
                h.add_edge(v, 4).unwrap();
            }
            assert!(is_prime_bruteforce(&h));
        }
        assert!(!nbs.contains(&VertexSet::empty(4)));
        assert!(!nbs.contains(p4.neighborhood(1)));
        assert!(prime_one_extension_neighborhoods(&Graph::path(3)).is_err());
        assert!(prime_one_extension_neighborhoods(&Graph::path(21)).is_err());
        assert_eq!(first_admissible(&p4, &p4.vertices()), nbs[0]);
    }

    #[test]
    fn fig1_extension() {
        let g = fig1();
        let r = build_prime_extension(&g).unwrap();
        assert_eq!((r.p, r.case), (3, BoundCase::NonPower));
        assert_eq!(r.h.n(), 13);
        assert!(!r.trace.flip);
        assert_eq!(r.trace.s0, vec![5, 6, 7, 8, 9]);
        assert_sound(&g, &r);
        let first_added = 10;
        // a sees S and gets no edge to the first added vertex; b does.
        assert!(!r.h.has_edge(0, first_added));
        assert!(r.h.has_edge(1, first_added));
        // Clique attachments in binary order: c1 → ∅, c2 → {x0}, c3 → {x1}.
        assert!(r.trace.attachments[&2].added_neighbors.is_empty());
        assert_eq!(r.trace.attachments[&3].added_neighbors, vec![10]);
        assert_eq!(r.trace.attachments[&4].added_neighbors, vec![11]);
        assert_eq!(r.trace.attachments[&9].role, Role::Witness);
        assert_eq!(r.h.label(12), "x2");
        // The drawn choice is another valid instance.
        assert!(is_prime_bruteforce(&fig3()));
        assert!(fig3()
            .subgraph(&VertexSet::from_members(13, 0..10))
            .same_structure(&g));
    }

    #[test]
    fn twin_pair_uses_a_path() {
        // Two true twins 0, 1 attached to 2, which is attached to 3.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let r = build_prime_extension(&g).unwrap();
        assert_sound(&g, &r);
        let cert = prime_bound(&g).unwrap();
        assert_eq!(cert.m, 2);
        assert_eq!(r.p, cert.p);
    }

    #[test]
    fn mainone_pair_gadget_is_a_path() {
        let g = Graph::complete(2);
        let r = build_prime_extension(&g).unwrap();
        assert_eq!((r.p, r.case), (2, BoundCase::PowerIso));
        assert!(r
            .h
            .same_structure(&Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3)]).unwrap()));
        assert_sound(&g, &r);
    }

    #[test]
    fn empty_graphs() {
        let g = Graph::empty(5);
        let r = build_prime_extension(&g).unwrap();
        assert_eq!(r.p, 3);
        assert_sound(&g, &r);
        let gadget = build_stable_stable_gadget(5).unwrap().graph;
        assert!(r.h.same_structure(&gadget));
    }

    #[test]
    fn power_extension_k1() {
        let g = Graph::path(3);
        let r = build_prime_extension(&g).unwrap();
        assert_eq!((r.p, r.case), (1, BoundCase::PowerNonIso));
        assert_sound(&g, &r);
        // The added vertex hangs off endpoint 0, giving the path 3-0-1-2.
        assert_eq!(r.h.neighborhood(3).to_vec(), vec![0]);

        let co = Graph::path(3).complement();
        let r = build_prime_extension(&co).unwrap();
        assert_eq!(r.p, 1);
        assert_sound(&co, &r);
    }

    fn two_false_twin_classes() -> Graph {
        // P4 spine 0-1-2-3; 0 blown up into {0, 4, 5, 6} and 3 into {3, 7, 8}.
        let mut g = Graph::empty(9);
        copy_edges(&Graph::path(4), &mut g).unwrap();
        for v in [4, 5, 6] {
            g.add_edge(v, 1).unwrap();
        }
        for v in [7, 8] {
            g.add_edge(v, 2).unwrap();
        }
        g
    }

    #[test]
    fn power_extension_k2() {
        let g = two_false_twin_classes();
        let cert = prime_bound(&g).unwrap();
        assert_eq!((cert.m, cert.p, cert.case), (4, 2, BoundCase::PowerNonIso));
        let r = build_prime_extension(&g).unwrap();
        assert_eq!(r.trace.removed, vec![0]);
        assert_eq!(r.trace.attachments[&0].role, Role::Removed);
        assert_sound(&g, &r);
        assert!(is_prime_bruteforce(&r.h));
        let search = exhaustive_prime_bound(&g, &OracleBudget::default()).unwrap();
        assert_eq!(search.p, 2);
    }

    #[test]
    fn power_extension_preconditions() {
        let g = Graph::empty(4);
        let report = compute_families(&g).unwrap();
        assert!(build_power_extension(&g, &report).is_err());
        let report = compute_families(&fig1()).unwrap();
        assert!(build_power_extension(&fig1(), &report).is_err());
    }

    fn p4_with_dominating_vertex() -> Graph {
        let mut g = Graph::empty(5);
        copy_edges(&Graph::path(4), &mut g).unwrap();
        for v in 0..4 {
            g.add_edge(v, 4).unwrap();
        }
        g
    }

    #[test]
    fn m1_extension() {
        let g = p4_with_dominating_vertex();
        let r = build_prime_extension(&g).unwrap();
        assert_eq!((r.p, r.case), (1, BoundCase::MOne));
        assert_eq!(r.trace.s0, vec![0, 1, 2, 3]);
        assert_sound(&g, &r);
        assert!(is_prime_bruteforce(&r.h));

        let p4 = Graph::path(4);
        assert!(build_m1_extension(&p4, &compute_families(&p4).unwrap()).is_err());
        let p3 = Graph::path(3);
        assert!(build_m1_extension(&p3, &compute_families(&p3).unwrap()).is_err());
        let k2 = graph_from_bits(5, 1);
        assert!(build_m1_extension(&k2, &compute_families(&k2).unwrap()).is_err());
    }

    #[test]
    fn tiny_and_prime_cases() {
        let r = build_prime_extension(&Graph::empty(0)).unwrap();
        assert_eq!(r.p, 4);
        assert!(r.h.same_structure(&Graph::path(4)));
        let r = build_prime_extension(&Graph::empty(1)).unwrap();
        assert_eq!(r.p, 3);
        assert!(r.h.same_structure(&Graph::path(4)));
        assert_sound(&Graph::empty(1), &r);
        let r = build_prime_extension(&Graph::path(4)).unwrap();
        assert_eq!(r.p, 0);
        assert!(r.added.is_empty());
        assert!(r.h.same_structure(&Graph::path(4)));
    }

    #[test]
    fn report_round_trip() {
        let r = build_prime_extension(&fig1()).unwrap();
        let json = serde_json::to_string(&r.report()).unwrap();
        let back: ExtensionReport = serde_json::from_str(&json).unwrap();
        let again = ExtensionResult::from_report(&back).unwrap();
        assert_eq!(again, r);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["case"], "NON_POWER");
        assert_eq!(value["added"], serde_json::json!([10, 11, 12]));
    }

    #[test]
    fn verify_catches_broken_results() {
        let g = fig1();
        let mut r = build_prime_extension(&g).unwrap();
        r.h.remove_edge(2, 3);
        let v = verify_extension(&g, &r);
        assert!(!v.ok);
        assert!(v
            .diagnoses
            .iter()
            .any(|d| d == "extension property violated"));

        let p4 = Graph::path(4);
        let mut h = Graph::empty(5);
        copy_edges(&p4, &mut h).unwrap();
        h.add_edge(0, 4).unwrap();
        h.add_edge(1, 4).unwrap();
        let bad = ExtensionResult {
            h,
            original: VertexSet::from_members(5, 0..4),
            added: VertexSet::singleton(5, 4),
            p: 1,
            case: BoundCase::AlreadyPrime,
            trace: Trace::default(),
        };
        let v = verify_extension(&p4, &bad);
        assert!(!v.ok);
        assert!(v
            .diagnoses
            .iter()
            .any(|d| d.starts_with("added count exceeds optimum")));
    }

    #[test]
    fn construction_is_deterministic() {
        let g = two_false_twin_classes();
        assert_eq!(
            build_prime_extension(&g).unwrap(),
            build_prime_extension(&g).unwrap()
        );
    }

    fn arb_prime_graph() -> impl Strategy<Value = Graph> {
        arb_graph(8).prop_filter("prime", |g| g.n() >= 4 && is_prime(g))
    }

    proptest! {
        #[test]
        fn extensions_are_sound(g in arb_modular_graph(6)) {
            prop_assume!(g.n() <= 14);
            let r = build_prime_extension(&g).unwrap();
            let cert = prime_bound(&g).unwrap();
            prop_assert_eq!(r.p, cert.p);
            prop_assert!(r.h.subgraph(&r.original).same_structure(&g));
            prop_assert!(is_prime_bruteforce(&r.h));
        }

        #[test]
        fn extensions_of_random_graphs_are_sound(g in arb_graph(9)) {
            let r = build_prime_extension(&g).unwrap();
            let v = verify_extension(&g, &r);
            prop_assert!(v.ok, "{:?}", v.diagnoses);
        }

        #[test]
        fn one_extension_count(g in arb_prime_graph()) {
            let n = g.n();
            let nbs = prime_one_extension_neighborhoods(&g).unwrap();
            prop_assert_eq!(nbs.len(), (1usize << n) - 2 * n - 2);
            let mut prime_count = 0;
            for mask in 0..1u64 << n {
                let mut h = Graph::empty(n + 1);
                copy_edges(&g, &mut h).unwrap();
                attach_mask(&mut h, n, 0, mask).unwrap();
                if is_prime_bruteforce(&h) {
                    prime_count += 1;
                    prop_assert!(nbs.contains(&VertexSet::from_mask(n, mask)));
                }
            }
            prop_assert_eq!(prime_count, nbs.len());
        }
    }
}
