//! Graph generators shared by the integration tests.

#![allow(dead_code)]

use primebound::Graph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graph on `n` vertices whose edges are the set bits of `bits` in pair order
/// (0,1), (0,2), …, (1,2), ….
pub fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits >> k & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g
}

/// Every labelled graph on `n ≤ 11` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0..1u64 << pairs).map(move |bits| graph_from_bits(n, bits))
}

pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Substitutes `blocks` into the vertices of `skeleton`.
pub fn substitute(skeleton: &Graph, blocks: &[Graph]) -> Graph {
    assert_eq!(skeleton.n(), blocks.len());
    let mut start = Vec::with_capacity(blocks.len());
    let mut n = 0;
    for b in blocks {
        start.push(n);
        n += b.n();
    }
    let mut g = Graph::empty(n);
    for (i, b) in blocks.iter().enumerate() {
        for (u, v) in b.edges() {
            g.add_edge(start[i] + u, start[i] + v).unwrap();
        }
    }
    for (a, c) in skeleton.edges() {
        for u in 0..blocks[a].n() {
            for v in 0..blocks[c].n() {
                g.add_edge(start[a] + u, start[c] + v).unwrap();
            }
        }
    }
    g
}

fn random_block(rng: &mut impl Rng, size: usize) -> Graph {
    match rng.gen_range(0..4) {
        0 => Graph::complete(size),
        1 => Graph::empty(size),
        2 => Graph::path(size),
        _ => random_graph(rng, size, 0.5),
    }
}

/// A random graph with at most `max_n` vertices and plenty of non-trivial
/// modules: a random skeleton with cliques, stable sets, paths or random
/// graphs substituted into its vertices, sometimes two levels deep.
pub fn modular_graph(rng: &mut impl Rng, max_n: usize) -> Graph {
    let target = rng.gen_range(1..=max_n);
    let mut blocks = Vec::new();
    let mut n = 0;
    while n < target {
        let size = rng.gen_range(1..=(target - n).min(8));
        let block = if size >= 4 && rng.gen_bool(0.3) {
            let inner = rng.gen_range(2..=size.min(4));
            let mut parts = vec![1; inner];
            for _ in inner..size {
                parts[rng.gen_range(0..inner)] += 1;
            }
            let inner_blocks: Vec<Graph> = parts.iter().map(|&s| random_block(rng, s)).collect();
            substitute(&random_graph(rng, inner, 0.5), &inner_blocks)
        } else {
            random_block(rng, size)
        };
        n += block.n();
        blocks.push(block);
    }
    let density = rng.gen_range(0.2..0.8);
    let skeleton = random_graph(rng, blocks.len(), density);
    substitute(&skeleton, &blocks)
}
