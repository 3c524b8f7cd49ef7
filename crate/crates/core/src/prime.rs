//! Modules, primality, critical primality, two-vertex deletions that keep a
//! graph prime, and heights in the poset of finite prime graphs.
//!
//! A module is a vertex set that every outside vertex sees uniformly (all
//! adjacent or all non-adjacent). It is nontrivial when it has at least two
//! vertices and is proper. Graphs on at most two vertices have no nontrivial
//! module and therefore count as prime; this is the only place that
//! convention lives.

use crate::error::{Error, Result};
use crate::graph::{bits_of, canonical_key, graphs_up_to, CanonKey, Graph};
use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A nontrivial module, as a sorted list of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleWitness {
    pub subset: Vec<usize>,
}

impl ModuleWitness {
    pub fn validates(&self, g: &Graph) -> bool {
        let n = g.order();
        let k = self.subset.len();
        if k < 2 || k >= n || self.subset.iter().any(|&v| v >= n) {
            return false;
        }
        let mut inside = vec![false; n];
        for &v in &self.subset {
            inside[v] = true;
        }
        (0..n).filter(|&z| !inside[z]).all(|z| {
            let first = g.has_edge(z, self.subset[0]);
            self.subset.iter().all(|&m| g.has_edge(z, m) == first)
        })
    }
}

/// Smallest module containing `seed`: absorb splitters until none remain.
fn module_closure(rows: &[u64], all: u64, seed: u64) -> u64 {
    let mut m = seed;
    loop {
        let mut grow = 0u64;
        for z in bits_of(all & !m) {
            let hit = rows[z] & m;
            if hit != 0 && hit != m {
                grow |= 1 << z;
            }
        }
        if grow == 0 {
            return m;
        }
        m |= grow;
    }
}

fn rows_of(g: &Graph) -> (Vec<u64>, u64) {
    let n = g.order();
    let rows = (0..n).map(|v| g.row64(v)).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    (rows, all)
}

/// A nontrivial module if one exists: the closure of the lexicographically
/// first vertex pair whose closure is proper.
pub fn find_nontrivial_module(g: &Graph) -> Result<Option<ModuleWitness>> {
    g.require_core()?;
    Ok(module_mask(g).map(|m| ModuleWitness {
        subset: bits_of(m).collect(),
    }))
}

fn module_mask(g: &Graph) -> Option<u64> {
    let n = g.order();
    if n < 3 {
        return None;
    }
    let (rows, all) = rows_of(g);
    for a in 0..n {
        for b in a + 1..n {
            let m = module_closure(&rows, all, 1 << a | 1 << b);
            if m != all {
                return Some(m);
            }
        }
    }
    None
}

/// Primality for graphs within the core cap. Order `<= 2` is prime.
pub fn is_prime(g: &Graph) -> Result<bool> {
    g.require_core()?;
    Ok(module_mask(g).is_none())
}

pub(crate) fn is_prime_small(g: &Graph) -> bool {
    module_mask(g).is_none()
}

/// Prime, at least four vertices, and no single-vertex deletion is prime.
pub fn is_critically_prime(g: &Graph) -> Result<bool> {
    if g.order() < 4 || !is_prime(g)? {
        return Ok(false);
    }
    for v in 0..g.order() {
        if is_prime_small(&g.delete_vertex(v)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lexicographically first pair `(c, d)` whose deletion leaves a prime graph.
/// Every prime graph of order at least 7 has one.
pub fn schmerl_trotter_pair(g: &Graph) -> Result<Option<(usize, usize)>> {
    if !is_prime(g)? {
        return Err(Error::NotPrime);
    }
    let n = g.order();
    for c in 0..n {
        for d in c + 1..n {
            let keep: Vec<usize> = (0..n).filter(|&v| v != c && v != d).collect();
            if is_prime_small(&g.induced_subgraph(&keep)?) {
                return Ok(Some((c, d)));
            }
        }
    }
    Ok(None)
}

/// Default order cap for the height computation.
pub const HEIGHT_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeHeightRecord {
    pub key: CanonKey,
    pub height: usize,
    pub order: usize,
}

impl PrimeHeightRecord {
    /// `height <= order <= 2 (height - 1)` for order at least 2.
    pub fn satisfies_bounds(&self) -> bool {
        self.order < 2 || (self.height <= self.order && self.order + 2 <= 2 * self.height)
    }
}

/// Memo of heights keyed by isomorphism class. Entries are idempotent, so
/// concurrent writers racing on a key store the same value.
#[derive(Debug, Default)]
pub struct HeightTable {
    memo: DashMap<CanonKey, usize>,
    cap: usize,
}

impl HeightTable {
    pub fn new() -> Self {
        Self::with_cap(HEIGHT_CAP)
    }

    pub fn with_cap(cap: usize) -> Self {
        HeightTable {
            memo: DashMap::new(),
            cap,
        }
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// Length of a longest chain of primes from the empty graph up to `g`
    /// under embeddability.
    pub fn prime_height(&self, g: &Graph) -> Result<PrimeHeightRecord> {
        if g.order() > self.cap {
            return Err(Error::TooLarge {
                n: g.order(),
                cap: self.cap,
            });
        }
        if !is_prime(g)? {
            return Err(Error::NotPrime);
        }
        let key = canonical_key(g)?;
        let height = self.height_of(g, &key);
        Ok(PrimeHeightRecord {
            key,
            height,
            order: g.order(),
        })
    }

    fn height_of(&self, g: &Graph, key: &CanonKey) -> usize {
        if let Some(h) = self.memo.get(key) {
            return *h;
        }
        let n = g.order();
        let h = if n == 0 {
            0
        } else {
            let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            let mut best = 0;
            for mask in 0..full {
                let sub = g.induced_mask(mask);
                if is_prime_small(&sub) {
                    let k = canonical_key(&sub).expect("within cap");
                    best = best.max(self.height_of(&sub, &k));
                }
            }
            best + 1
        };
        self.memo.insert(key.clone(), h);
        h
    }
}

/// Number of prime isomorphism classes of each order `0..=n_max`.
pub fn prime_level_census(n_max: usize) -> Result<Vec<usize>> {
    if n_max > HEIGHT_CAP {
        return Err(Error::TooLarge {
            n: n_max,
            cap: HEIGHT_CAP,
        });
    }
    Ok(prime_graphs_up_to(n_max)?.iter().map(Vec::len).collect())
}

/// Canonical representatives of the prime graphs of each order `0..=n_max`.
pub fn prime_graphs_up_to(n_max: usize) -> Result<Vec<Vec<Graph>>> {
    Ok(graphs_up_to(n_max)?
        .into_par_iter()
        .map(|level| level.into_iter().filter(is_prime_small).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    #[test]
    fn module_examples() {
        let c4 = Graph::cycle(4);
        let w = find_nontrivial_module(&c4).unwrap().unwrap();
        assert_eq!(w.subset, vec![0, 2]);
        assert!(w.validates(&c4));
        assert_eq!(find_nontrivial_module(&Graph::path(4)).unwrap(), None);
        let k3 = find_nontrivial_module(&Graph::clique(3)).unwrap().unwrap();
        assert_eq!(k3.subset, vec![0, 1]);
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&Graph::path(2)).unwrap());
        assert!(is_prime(&Graph::new(0)).unwrap());
        assert!(is_prime(&Graph::path(4)).unwrap());
        assert!(!is_prime(&Graph::clique(4)).unwrap());
        assert!(is_prime(&Graph::path(64)).unwrap());
        assert!(is_prime(&Graph::path(65)).is_err());
    }

    #[test]
    fn critical_examples() {
        assert!(is_critically_prime(&Graph::path(4)).unwrap());
        assert!(!is_critically_prime(&Graph::path(5)).unwrap());
        assert!(!is_critically_prime(&Graph::clique(3)).unwrap());
    }

    #[test]
    fn pair_examples() {
        let p7 = Graph::path(7);
        let (c, d) = schmerl_trotter_pair(&p7).unwrap().unwrap();
        let keep: Vec<usize> = (0..7).filter(|&v| v != c && v != d).collect();
        assert!(reference::is_prime(&p7.induced_subgraph(&keep).unwrap()));
        // All six pairs of P_4 leave a 2-vertex graph, prime by convention.
        assert_eq!(schmerl_trotter_pair(&Graph::path(4)).unwrap(), Some((0, 1)));
        assert_eq!(
            schmerl_trotter_pair(&Graph::clique(4)),
            Err(Error::NotPrime)
        );
    }

    #[test]
    fn height_examples() {
        let t = HeightTable::new();
        assert_eq!(t.prime_height(&Graph::new(0)).unwrap().height, 0);
        assert_eq!(t.prime_height(&Graph::path(2)).unwrap().height, 2);
        // Chain: empty < K1 < K2 < P4; nothing prime on three vertices.
        let p4 = t.prime_height(&Graph::path(4)).unwrap();
        assert_eq!(p4.height, 3);
        assert!(p4.satisfies_bounds());
        assert!(t.prime_height(&Graph::path(9)).is_err());
        assert_eq!(t.prime_height(&Graph::clique(3)), Err(Error::NotPrime));
    }

    #[test]
    fn census_small_orders() {
        let c = prime_level_census(5).unwrap();
        assert_eq!(c, vec![1, 1, 2, 0, 1, 4]);
    }

    #[test]
    fn agrees_with_subset_scan_up_to_six() {
        for level in graphs_up_to(6).unwrap() {
            for g in level {
                let fast = find_nontrivial_module(&g).unwrap();
                assert_eq!(fast.is_none(), reference::is_prime(&g));
                if let Some(w) = fast {
                    assert!(w.validates(&g));
                }
            }
        }
    }
}
