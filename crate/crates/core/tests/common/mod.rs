#![allow(dead_code)]

use primeage::Graph;
use proptest::prelude::*;

/// Random graph on `lo..=hi` vertices with edge probability one half.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut g = Graph::new(n);
                let mut it = bits.into_iter();
                for v in 1..n {
                    for u in 0..v {
                        if it.next().unwrap() {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
                g
            },
        )
    })
}

pub fn letters(lo: usize, hi: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..=1, lo..=hi)
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
