//! Isomorph-free generation of all graphs of small order by one-vertex
//! extension and canonical deduplication.

use super::{canonical_form, canonical_key, CanonKey, Graph};
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Largest order accepted by the exhaustive generators.
pub const GENERATION_CAP: usize = 10;

/// All graphs on `g.order() + 1` vertices that delete (at the last vertex) to
/// `g`, keyed canonically.
pub fn one_vertex_extensions(g: &Graph) -> Result<BTreeMap<CanonKey, Graph>> {
    let n = g.order();
    if n >= 63 {
        return Err(Error::TooLarge { n: n + 1, cap: 63 });
    }
    let mut out = BTreeMap::new();
    for mask in 0u64..1 << n {
        let ext = extend(g, mask);
        let key = canonical_key(&ext)?;
        out.entry(key).or_insert(ext);
    }
    Ok(out)
}

pub(crate) fn extend(g: &Graph, mask: u64) -> Graph {
    let n = g.order();
    let mut ext = Graph::new(n + 1);
    for (u, v) in g.edges() {
        ext.set(u, v, true);
    }
    for u in super::bits_of(mask) {
        ext.set(u, n, true);
    }
    ext
}

/// Canonical representatives of every isomorphism class of order `0..=n_max`,
/// sorted by key within each order.
pub fn graphs_up_to(n_max: usize) -> Result<Vec<Vec<Graph>>> {
    if n_max > GENERATION_CAP {
        return Err(Error::TooLarge {
            n: n_max,
            cap: GENERATION_CAP,
        });
    }
    let mut levels = vec![vec![Graph::new(0)]];
    for n in 1..=n_max {
        let prev = &levels[n - 1];
        let mut found: Vec<(CanonKey, Graph)> = prev
            .par_iter()
            .flat_map_iter(|g| {
                (0u64..1 << (n - 1)).map(move |mask| {
                    let ext = extend(g, mask);
                    let form = canonical_form(&ext).expect("order within cap");
                    (canonical_key(&form).expect("order within cap"), form)
                })
            })
            .collect();
        found.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
        found.dedup_by(|a, b| a.0 == b.0);
        levels.push(found.into_iter().map(|(_, g)| g).collect());
    }
    Ok(levels)
}

pub fn graphs_of_order(n: usize) -> Result<Vec<Graph>> {
    Ok(graphs_up_to(n)?.pop().expect("at least order 0"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // Unlabeled graphs on n vertices: 1, 1, 2, 4, 11, 34, 156, 1044.
        let counts: Vec<usize> = graphs_up_to(7).unwrap().iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn extensions_of_k2() {
        let ext = one_vertex_extensions(&Graph::path(2)).unwrap();
        // K2+K1, P3, K3
        assert_eq!(ext.len(), 3);
    }
}
