//! Brute-force ground truth for small graphs.
//!
//! Everything here works on 64-bit adjacency masks and shares no code with the
//! decomposition, family or builder modules, so it can be used to check them.

use rayon::prelude::*;
use serde::Serialize;

use crate::bound::prime_bound;
use crate::builder::ExtensionResult;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

const MASK_LIMIT: usize = 64;
/// Largest order accepted by the clique search.
pub const CLIQUE_SEARCH_LIMIT: usize = 48;

/// Caps for the exhaustive searches. Inputs beyond a cap are refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest graph accepted for subset enumeration and extension search.
    pub max_vertices: usize,
    /// Largest number of added vertices tried by the extension search.
    pub max_added: usize,
    /// Largest number of attachment patterns enumerated for a single size.
    pub max_candidates: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 16,
            max_added: 4,
            max_candidates: 1 << 26,
        }
    }
}

impl OracleBudget {
    pub fn new(max_vertices: usize, max_added: usize, max_candidates: u64) -> Result<Self> {
        if max_vertices == 0 || max_added == 0 || max_candidates == 0 {
            return Err(Error::precondition("oracle budget caps must be positive"));
        }
        Ok(OracleBudget {
            max_vertices,
            max_added,
            max_candidates,
        })
    }

    fn check_vertices(&self, n: usize) -> Result<()> {
        if n > self.max_vertices || n > MASK_LIMIT {
            return Err(Error::Budget(format!(
                "{n} vertices exceed the oracle limit of {}",
                self.max_vertices.min(MASK_LIMIT)
            )));
        }
        Ok(())
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    assert!(g.n() <= MASK_LIMIT, "mask oracle needs at most 64 vertices");
    (0..g.n()).map(|v| g.neighborhood(v).to_mask()).collect()
}

#[inline]
fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
fn is_module_mask(adj: &[u64], full: u64, m: u64) -> bool {
    let mut out = full & !m;
    while out != 0 {
        let v = out.trailing_zeros() as usize;
        out &= out - 1;
        let hit = adj[v] & m;
        if hit != 0 && hit != m {
            return false;
        }
    }
    true
}

#[inline]
fn closure_mask(adj: &[u64], full: u64, mut m: u64) -> u64 {
    loop {
        let mut grow = 0;
        let mut out = full & !m;
        while out != 0 {
            let v = out.trailing_zeros() as usize;
            out &= out - 1;
            let hit = adj[v] & m;
            if hit != 0 && hit != m {
                grow |= 1 << v;
            }
        }
        if grow == 0 {
            return m;
        }
        m |= grow;
        if m == full {
            return m;
        }
    }
}

fn is_prime_masks(adj: &[u64]) -> bool {
    let n = adj.len();
    if n < 4 {
        return false;
    }
    let full = full_mask(n);
    for u in 0..n {
        for v in u + 1..n {
            if closure_mask(adj, full, 1 << u | 1 << v) != full {
                return false;
            }
        }
    }
    true
}

/// Primality by closing every vertex pair under splitters. Needs `n ≤ 64`.
pub fn is_prime_bruteforce(g: &Graph) -> bool {
    is_prime_masks(&masks(g))
}

/// Every module of `g`, trivial ones included, in increasing mask order.
pub fn all_modules(g: &Graph, budget: &OracleBudget) -> Result<Vec<VertexSet>> {
    budget.check_vertices(g.n())?;
    let n = g.n();
    let adj = masks(g);
    let full = full_mask(n);
    Ok((0..=full)
        .filter(|&m| is_module_mask(&adj, full, m))
        .map(|m| VertexSet::from_mask(n, m))
        .collect())
}

fn all_module_masks(g: &Graph) -> Result<Vec<u64>> {
    OracleBudget::default().check_vertices(g.n())?;
    let adj = masks(g);
    let full = full_mask(g.n());
    Ok((0..=full)
        .filter(|&m| is_module_mask(&adj, full, m))
        .collect())
}

/// Non-empty modules that overlap no other module.
pub fn strong_modules_bruteforce(g: &Graph) -> Result<Vec<VertexSet>> {
    let modules = all_module_masks(g)?;
    Ok(modules
        .iter()
        .filter(|&&m| m != 0)
        .filter(|&&m| {
            modules
                .iter()
                .all(|&o| m & o == 0 || m & o == m || m & o == o)
        })
        .map(|&m| VertexSet::from_mask(g.n(), m))
        .collect())
}

/// `(ω_M, α_M)` by enumerating modules: the largest module that is a clique,
/// resp. a stable set. Both are at least 1 when `n ≥ 1`.
pub fn modular_numbers_bruteforce(g: &Graph) -> Result<(usize, usize)> {
    let adj = masks(g);
    let mut omega = 0;
    let mut alpha = 0;
    for m in all_module_masks(g)? {
        let size = m.count_ones() as usize;
        let mut rest = m;
        let mut clique = true;
        let mut stable = true;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let others = m & !(1 << v);
            clique &= adj[v] & others == others;
            stable &= adj[v] & others == 0;
        }
        if clique {
            omega = omega.max(size);
        }
        if stable {
            alpha = alpha.max(size);
        }
    }
    Ok((omega, alpha))
}

/// Inclusion-minimal modules with at least two vertices.
pub fn minimal_modules_bruteforce(g: &Graph) -> Result<Vec<VertexSet>> {
    let big: Vec<u64> = all_module_masks(g)?
        .into_iter()
        .filter(|m| m.count_ones() >= 2)
        .collect();
    Ok(big
        .iter()
        .filter(|&&m| !big.iter().any(|&o| o != m && o & m == o))
        .map(|&m| VertexSet::from_mask(g.n(), m))
        .collect())
}

/// Result of the exhaustive extension search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleBound {
    /// Smallest number of added vertices admitting a prime extension.
    pub p: usize,
    /// The first prime extension found, on `0..n+p`, original vertices first.
    pub extension: Graph,
}

/// Number of attachment bits for `q` added vertices on a graph of order `n`.
fn pattern_bits(n: usize, q: usize) -> usize {
    q * n + q * q.saturating_sub(1) / 2
}

fn apply_pattern(base: &[u64], n: usize, q: usize, mut pattern: u64, out: &mut Vec<u64>) {
    out.clear();
    out.extend_from_slice(base);
    out.resize(n + q, 0);
    for j in 0..q {
        let a = n + j;
        for b in 0..n + j {
            if pattern & 1 == 1 {
                out[a] |= 1 << b;
                out[b] |= 1 << a;
            }
            pattern >>= 1;
        }
    }
}

/// Smallest `q` such that some `q`-extension of `g` is prime, by trying every
/// attachment pattern for `q = 0, 1, …` in increasing binary order.
///
/// Patterns are checked in parallel; the reported extension is always the first
/// prime one in that order.
pub fn exhaustive_prime_bound(g: &Graph, budget: &OracleBudget) -> Result<OracleBound> {
    let n = g.n();
    budget.check_vertices(n)?;
    let base = masks(g);
    for q in 0..=budget.max_added {
        if n + q > MASK_LIMIT {
            break;
        }
        let bits = pattern_bits(n, q);
        if bits >= 63 || 1u64 << bits > budget.max_candidates {
            return Err(Error::Budget(format!(
                "{q} added vertices need 2^{bits} patterns, above the cap of {}",
                budget.max_candidates
            )));
        }
        let count = 1u64 << bits;
        let found = (0..count).into_par_iter().find_first(|&pattern| {
            let mut adj = Vec::with_capacity(n + q);
            apply_pattern(&base, n, q, pattern, &mut adj);
            is_prime_masks(&adj)
        });
        if let Some(pattern) = found {
            let mut adj = Vec::new();
            apply_pattern(&base, n, q, pattern, &mut adj);
            let mut h = Graph::empty(n + q);
            for (a, row) in adj.iter().enumerate() {
                for b in VertexSet::from_mask(n + q, *row).iter().filter(|&b| b > a) {
                    h.add_edge(a, b)?;
                }
            }
            return Ok(OracleBound { p: q, extension: h });
        }
    }
    Err(Error::Budget(format!(
        "no prime extension with at most {} added vertices",
        budget.max_added
    )))
}

fn max_clique(adj: &[u64], candidates: u64, size: usize, best: &mut usize) {
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + candidates.count_ones() as usize <= *best {
        return;
    }
    let v = candidates.trailing_zeros() as usize;
    max_clique(adj, candidates & adj[v], size + 1, best);
    max_clique(adj, candidates & !(1 << v), size, best);
}

/// Exact clique number and stability number by branch and bound.
pub fn clique_and_stability_numbers(g: &Graph) -> Result<(usize, usize)> {
    let n = g.n();
    if n > CLIQUE_SEARCH_LIMIT {
        return Err(Error::Budget(format!(
            "clique search is limited to {CLIQUE_SEARCH_LIMIT} vertices, got {n}"
        )));
    }
    let full = full_mask(n);
    let adj = masks(g);
    let co: Vec<u64> = adj
        .iter()
        .enumerate()
        .map(|(v, row)| full & !row & !(1 << v))
        .collect();
    let mut omega = 0;
    let mut alpha = 0;
    max_clique(&adj, full, 0, &mut omega);
    max_clique(&co, full, 0, &mut alpha);
    Ok((omega, alpha))
}

/// Outcome of [`verify_extension`]; `diagnoses` is empty exactly when `ok`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub ok: bool,
    pub diagnoses: Vec<String>,
}

/// Checks that `r` is a prime extension of `g` with exactly `p(G)` added vertices.
///
/// The optimum is taken from the certificate computed by [`prime_bound`].
/// Primality uses the pair-closure test when the extension fits in 64
/// vertices and the decomposition otherwise.
pub fn verify_extension(g: &Graph, r: &ExtensionResult) -> Verification {
    let mut diagnoses = Vec::new();
    let h = &r.h;
    let layout_ok = r.original.universe() == h.n()
        && r.added.universe() == h.n()
        && r.original.is_disjoint(&r.added)
        && r.original.union(&r.added).is_full()
        && r.original.len() == g.n();
    if !layout_ok {
        diagnoses.push("original and added vertices do not partition the extension".to_string());
    } else {
        if !h.subgraph(&r.original).same_structure(g) {
            diagnoses.push("extension property violated".to_string());
        }
        let prime = if h.n() <= MASK_LIMIT {
            is_prime_bruteforce(h)
        } else {
            crate::moddecomp::is_prime(h)
        };
        if !prime {
            diagnoses.push("extension is not prime".to_string());
        }
        if r.added.len() != r.p {
            diagnoses.push(format!(
                "added count {} does not match claimed p = {}",
                r.added.len(),
                r.p
            ));
        }
        match prime_bound(g) {
            Ok(cert) if r.added.len() > cert.p => diagnoses.push(format!(
                "added count exceeds optimum ({} > {})",
                r.added.len(),
                cert.p
            )),
            Ok(cert) if r.added.len() < cert.p && prime => diagnoses.push(format!(
                "prime extension smaller than the computed bound ({} < {})",
                r.added.len(),
                cert.p
            )),
            Ok(_) => {}
            Err(e) => diagnoses.push(format!("could not compute the bound: {e}")),
        }
    }
    Verification {
        ok: diagnoses.is_empty(),
        diagnoses,
    }
}
