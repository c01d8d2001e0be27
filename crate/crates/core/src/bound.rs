//! Modular clique and stability numbers and the exact prime bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{compute_families, FamilyReport};
use crate::graph::Graph;
use crate::moddecomp::is_prime;
use crate::oracle::clique_and_stability_numbers;
use crate::vertex_set::VertexSet;

/// `⌈log₂ x⌉` for `x ≥ 1`, in integer arithmetic; `0` for `x ≤ 1`.
pub fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModularNumbers {
    pub omega_m: usize,
    pub alpha_m: usize,
    pub m: usize,
    /// A largest clique or stable module (smallest minimum vertex on ties),
    /// or `{0}` when `m = 1`.
    pub witness: VertexSet,
}

/// Reads the modular numbers off an already computed family report of a graph on `n ≥ 1` vertices.
pub fn modular_numbers_from(report: &FamilyReport, n: usize) -> ModularNumbers {
    let omega_m = report.modular_clique_number();
    let alpha_m = report.modular_stability_number();
    let m = omega_m.max(alpha_m);
    let witness = report
        .cliques
        .iter()
        .chain(&report.stables)
        .filter(|c| c.len() == m)
        .min_by_key(|c| c.min())
        .cloned()
        .unwrap_or_else(|| VertexSet::singleton(n, 0));
    ModularNumbers {
        omega_m,
        alpha_m,
        m,
        witness,
    }
}

pub fn modular_numbers(g: &Graph) -> Result<ModularNumbers> {
    let report = compute_families(g)?;
    Ok(modular_numbers_from(&report, g.n()))
}

/// Which argument determines the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundCase {
    /// The graph is prime already.
    AlreadyPrime,
    /// At most one vertex.
    Tiny,
    /// Non-prime, at least four vertices, no clique or stable module of size two.
    MOne,
    /// `m` is at least 2 and not a power of two: `p = ⌈log₂ m⌉`.
    NonPower,
    /// `m = 2^k` and the isolated or dominating vertices number exactly `2^k`: `p = k + 1`.
    PowerIso,
    /// `m = 2^k` otherwise: `p = k`.
    PowerNonIso,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub p: usize,
    pub case: BoundCase,
    pub m: usize,
    pub omega_m: usize,
    pub alpha_m: usize,
    /// Number of isolated vertices.
    pub iso_g: usize,
    /// Number of isolated vertices of the complement, i.e. dominating vertices.
    pub iso_gbar: usize,
    pub witness: VertexSet,
}

/// Smallest number of vertices to add to `g` to obtain a prime graph.
pub fn prime_bound(g: &Graph) -> Result<BoundCertificate> {
    let n = g.n();
    let iso_g = g.isolated_vertices().len();
    let iso_gbar = g.dominating_vertices().len();
    if n <= 1 {
        // The smallest prime graphs have four vertices; a path on four
        // vertices contains any graph on at most one vertex.
        return Ok(BoundCertificate {
            p: 4 - n,
            case: BoundCase::Tiny,
            m: n,
            omega_m: n,
            alpha_m: n,
            iso_g,
            iso_gbar,
            witness: VertexSet::full(n),
        });
    }
    let report = compute_families(g)?;
    let nums = modular_numbers_from(&report, n);
    let m = nums.m;
    let (p, case) = if is_prime(g) {
        (0, BoundCase::AlreadyPrime)
    } else if m == 1 {
        if n < 4 {
            return Err(Error::Internal(format!(
                "non-prime graph on {n} vertices without twins"
            )));
        }
        (1, BoundCase::MOne)
    } else if !m.is_power_of_two() {
        (ceil_log2(m), BoundCase::NonPower)
    } else {
        let k = m.trailing_zeros() as usize;
        if iso_g == m || iso_gbar == m {
            (k + 1, BoundCase::PowerIso)
        } else {
            (k, BoundCase::PowerNonIso)
        }
    };
    Ok(BoundCertificate {
        p,
        case,
        m,
        omega_m: nums.omega_m,
        alpha_m: nums.alpha_m,
        iso_g,
        iso_gbar,
        witness: nums.witness,
    })
}

/// Whether `cert.p ≤ ⌈log₂(max(ω, α) + 1)⌉`, with exact clique and stability
/// numbers. Graphs with fewer than two vertices are outside the statement and
/// pass trivially.
pub fn brignall_bound_check(g: &Graph, cert: &BoundCertificate) -> Result<bool> {
    if g.n() < 2 {
        return Ok(true);
    }
    let (omega, alpha) = clique_and_stability_numbers(g)?;
    Ok(cert.p <= ceil_log2(omega.max(alpha) + 1))
}
