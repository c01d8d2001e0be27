//! Shared helpers for unit tests.

use proptest::prelude::*;

use crate::graph::Graph;
use crate::io::parse_edge_list;
use crate::vertex_set::VertexSet;

pub(crate) fn fig1() -> Graph {
    parse_edge_list(include_str!("../../../fixtures/fig1.txt")).unwrap()
}

pub(crate) fn fig3() -> Graph {
    parse_edge_list(include_str!("../../../fixtures/fig3.txt")).unwrap()
}

pub(crate) fn set(n: usize, members: &[usize]) -> VertexSet {
    VertexSet::from_members(n, members.iter().copied())
}

/// Graph on `n` vertices whose edges are the set bits of `bits` in pair order
/// (0,1), (0,2), …, (1,2), ….
pub(crate) fn graph_from_bits(n: usize, bits: u64) -> Graph {
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

/// Every labelled graph on `n` vertices.
pub(crate) fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0..1u64 << pairs).map(move |bits| graph_from_bits(n, bits))
}

pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

/// Graphs built by substituting small cliques, stable sets and paths into a
/// random skeleton, so that non-trivial modules are common.
pub(crate) fn arb_modular_graph(max_blocks: usize) -> impl Strategy<Value = Graph> {
    let block = (0u8..4, 1usize..5);
    (
        proptest::collection::vec(block, 1..=max_blocks),
        any::<u64>(),
    )
        .prop_map(|(blocks, skeleton_bits)| {
            let k = blocks.len();
            let skeleton =
                graph_from_bits(k, skeleton_bits & ((1u64 << (k * (k - 1) / 2).min(63)) - 1));
            let n: usize = blocks.iter().map(|&(_, size)| size).sum();
            let mut g = Graph::empty(n);
            let mut start = Vec::with_capacity(k);
            let mut at = 0;
            for &(kind, size) in &blocks {
                start.push(at);
                for i in 0..size {
                    for j in i + 1..size {
                        let edge = match kind {
                            0 => true,
                            1 => false,
                            _ => j == i + 1,
                        };
                        if edge {
                            g.add_edge(at + i, at + j).unwrap();
                        }
                    }
                }
                at += size;
            }
            for a in 0..k {
                for b in a + 1..k {
                    if skeleton.has_edge(a, b) {
                        for i in 0..blocks[a].1 {
                            for j in 0..blocks[b].1 {
                                g.add_edge(start[a] + i, start[b] + j).unwrap();
                            }
                        }
                    }
                }
            }
            g
        })
}
