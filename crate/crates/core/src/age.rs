//! Finite approximations of ages, their bounds, antichains, and the
//! cofinality diagnostics of prime members.
//!
//! Level `k + 1` of an age is found by extending every member of level `k` by
//! one vertex in all possible ways, keeping the candidates whose one-vertex
//! deletions all lie in level `k`, and testing each for an induced embedding
//! in the source graph. Candidates that fail the embedding test are exactly
//! the bounds (minimal excluded graphs) of that order, so both come out of
//! the same pass.

use crate::error::{Error, Result};
use crate::graph::{canonical_key, embeds, from_graph6, one_vertex_extensions, CanonKey, Graph};
use crate::prime::{is_prime_small, HeightTable};
use crate::word_graph::graph_of_word;
use crate::words::{Word, WordSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Default largest member size for age and bound enumeration.
pub const DEFAULT_K_MAX: usize = 6;

/// Default prefix length for a given `k_max`.
pub fn default_prefix_len(k_max: usize) -> usize {
    10 * k_max
}

/// What an approximation was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AgeSource {
    Word { word: WordSpec, prefix_len: usize },
    Graph { graph6: String },
}

impl AgeSource {
    pub fn host(&self) -> Result<Graph> {
        match self {
            AgeSource::Word { word, prefix_len } => {
                graph_of_word(&Word::new(word.clone())?, *prefix_len)
            }
            AgeSource::Graph { graph6 } => from_graph6(graph6),
        }
    }
}

/// Isomorphism classes of induced subgraphs with at most `k_max` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgeApprox {
    pub source: AgeSource,
    pub k_max: usize,
    /// `levels[k]` holds the keys of the members on `k` vertices, sorted.
    pub levels: Vec<Vec<CanonKey>>,
}

impl AgeApprox {
    pub fn contains(&self, key: &CanonKey) -> bool {
        let k = key.order();
        k <= self.k_max && self.levels[k].binary_search(key).is_ok()
    }

    pub fn members(&self) -> impl Iterator<Item = &CanonKey> {
        self.levels.iter().flatten()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Every one-vertex deletion of every member is a member.
    pub fn is_hereditary(&self) -> bool {
        self.members().all(|key| {
            let g = key.to_graph();
            (0..g.order()).all(|v| {
                let d = g.delete_vertex(v).expect("vertex in range");
                self.contains(&canonical_key(&d).expect("small member"))
            })
        })
    }
}

struct Growth {
    levels: Vec<Vec<CanonKey>>,
    bounds: Vec<Vec<CanonKey>>,
}

fn grow(host: &Graph, k_max: usize) -> Result<Growth> {
    if k_max > host.order() {
        return Err(Error::Parameter(format!(
            "k_max {k_max} exceeds the source order {}",
            host.order()
        )));
    }
    let mut levels = vec![vec![canonical_key(&Graph::new(0))?]];
    let mut bounds = vec![Vec::new()];
    for k in 0..k_max {
        let below: &Vec<CanonKey> = &levels[k];
        let mut candidates: Vec<CanonKey> = below
            .par_iter()
            .map(|key| -> Result<Vec<CanonKey>> {
                Ok(one_vertex_extensions(&key.to_graph())?
                    .into_keys()
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        candidates.par_sort_unstable();
        candidates.dedup();
        let verdicts: Vec<(CanonKey, bool)> = candidates
            .into_par_iter()
            .filter_map(|key| {
                let g = key.to_graph();
                let hereditary = (0..g.order()).all(|v| {
                    let d = g.delete_vertex(v).expect("vertex in range");
                    below
                        .binary_search(&canonical_key(&d).expect("small graph"))
                        .is_ok()
                });
                hereditary.then(|| {
                    let inside = embeds(&g, host);
                    (key, inside)
                })
            })
            .collect();
        let (inside, outside): (Vec<_>, Vec<_>) = verdicts.into_iter().partition(|v| v.1);
        levels.push(inside.into_iter().map(|v| v.0).collect());
        bounds.push(outside.into_iter().map(|v| v.0).collect());
    }
    Ok(Growth { levels, bounds })
}

/// Exact isomorphism classes of induced subgraphs of the source with at most
/// `k_max` vertices.
pub fn age_enumerate(source: AgeSource, k_max: usize) -> Result<AgeApprox> {
    let host = source.host()?;
    let growth = grow(&host, k_max)?;
    Ok(AgeApprox {
        source,
        k_max,
        levels: growth.levels,
    })
}

pub fn word_age(word: &Word, prefix_len: usize, k_max: usize) -> Result<AgeApprox> {
    age_enumerate(
        AgeSource::Word {
            word: word.spec().clone(),
            prefix_len,
        },
        k_max,
    )
}

pub fn graph_age(g: &Graph, k_max: usize) -> Result<AgeApprox> {
    age_enumerate(
        AgeSource::Graph {
            graph6: crate::graph::to_graph6(g),
        },
        k_max,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Inclusion {
    /// No member of the first approximation is missing from the second, up to `k`.
    YesAtScale {
        k: usize,
    },
    No {
        witness: CanonKey,
    },
}

/// Compares two approximations up to the smaller `k_max`. The witness is the
/// smallest missing member (by order, then key).
pub fn age_includes(a: &AgeApprox, b: &AgeApprox) -> Inclusion {
    let k = a.k_max.min(b.k_max);
    for level in 0..=k {
        if let Some(w) = a.levels[level]
            .iter()
            .find(|key| b.levels[level].binary_search(key).is_err())
        {
            return Inclusion::No { witness: w.clone() };
        }
    }
    Inclusion::YesAtScale { k }
}

/// A graph outside the age of a word graph prefix whose one-vertex deletions
/// all lie inside it. Exclusion is only known at the recorded scale.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub key: CanonKey,
    pub order: usize,
    pub edges: Vec<(usize, usize)>,
    pub checked_deletions: Vec<CanonKey>,
    pub non_membership_scale: usize,
    /// Still excluded from the prefix of twice the length.
    pub stable: bool,
}

impl BoundCertificate {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.order, &self.edges).expect("certificate edges in range")
    }

    /// Re-checks the certificate from scratch against the prefix of length
    /// `prefix_len`: every deletion embeds, the graph itself does not.
    pub fn validate(&self, word: &Word, prefix_len: usize) -> Result<bool> {
        let host = graph_of_word(word, prefix_len)?;
        let g = self.graph();
        if canonical_key(&g)? != self.key {
            return Ok(false);
        }
        let mut deletions = BTreeSet::new();
        for v in 0..g.order() {
            let d = g.delete_vertex(v)?;
            if !embeds(&d, &host) {
                return Ok(false);
            }
            deletions.insert(canonical_key(&d)?);
        }
        let listed: BTreeSet<CanonKey> = self.checked_deletions.iter().cloned().collect();
        Ok(deletions == listed && !embeds(&g, &host))
    }
}

/// All bounds with at most `k_max` vertices of the age of the word graph on
/// the first `prefix_len` letters.
pub fn bounds_enumerate(
    word: &Word,
    prefix_len: usize,
    k_max: usize,
) -> Result<Vec<BoundCertificate>> {
    let host = graph_of_word(word, prefix_len)?;
    let growth = grow(&host, k_max)?;
    let wide = graph_of_word(word, 2 * prefix_len)?;
    growth
        .bounds
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|key| {
            let g = key.to_graph();
            let mut deletions = BTreeSet::new();
            for v in 0..g.order() {
                deletions.insert(canonical_key(&g.delete_vertex(v)?)?);
            }
            Ok(BoundCertificate {
                order: g.order(),
                edges: g.edges(),
                checked_deletions: deletions.into_iter().collect(),
                non_membership_scale: prefix_len,
                stable: !embeds(&g, &wide),
                key,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntichainReport {
    pub lo: usize,
    pub hi: usize,
    pub members: Vec<CanonKey>,
}

/// A maximum antichain of the embeddability order restricted to members
/// whose order lies in `lo..=hi`. Exact, via a maximum matching in the
/// comparability bipartite graph and König's theorem.
pub fn max_antichain_in_window(age: &AgeApprox, lo: usize, hi: usize) -> AntichainReport {
    let hi = hi.min(age.k_max);
    let items: Vec<(CanonKey, Graph)> = (lo..=hi)
        .flat_map(|k| age.levels.get(k).into_iter().flatten())
        .map(|key| (key.clone(), key.to_graph()))
        .collect();
    let n = items.len();
    let above: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    items[i].1.order() < items[j].1.order() && embeds(&items[i].1, &items[j].1)
                })
                .collect()
        })
        .collect();
    let chosen = max_antichain_of(&above);
    AntichainReport {
        lo,
        hi,
        members: chosen.into_iter().map(|i| items[i].0.clone()).collect(),
    }
}

/// Maximum antichain of a strict order given by successor lists.
pub(crate) fn max_antichain_of(above: &[Vec<usize>]) -> Vec<usize> {
    let n = above.len();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut match_left: Vec<Option<usize>> = vec![None; n];
    fn augment(
        u: usize,
        above: &[Vec<usize>],
        seen: &mut [bool],
        match_right: &mut [Option<usize>],
        match_left: &mut [Option<usize>],
    ) -> bool {
        for &v in &above[u] {
            if !std::mem::replace(&mut seen[v], true) {
                let free = match match_right[v] {
                    None => true,
                    Some(w) => augment(w, above, seen, match_right, match_left),
                };
                if free {
                    match_right[v] = Some(u);
                    match_left[u] = Some(v);
                    return true;
                }
            }
        }
        false
    }
    for u in 0..n {
        let mut seen = vec![false; n];
        augment(u, above, &mut seen, &mut match_right, &mut match_left);
    }
    // König: alternate from unmatched left vertices.
    let mut left_reached = vec![false; n];
    let mut right_reached = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| match_left[u].is_none()).collect();
    for &u in &stack {
        left_reached[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &above[u] {
            if !std::mem::replace(&mut right_reached[v], true) {
                if let Some(w) = match_right[v] {
                    if !std::mem::replace(&mut left_reached[w], true) {
                        stack.push(w);
                    }
                }
            }
        }
    }
    (0..n)
        .filter(|&x| left_reached[x] && !right_reached[x])
        .collect()
}

/// Maximum antichains over the sliding windows `[lo, lo + width - 1]`.
pub fn antichain_search(age: &AgeApprox, width: usize) -> Vec<AntichainReport> {
    let width = width.max(1);
    (0..=age.k_max)
        .map(|lo| max_antichain_in_window(age, lo, lo + width - 1))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CofinalityRow {
    pub n: usize,
    /// Least `m` such that every considered member of order `<= n` embeds in
    /// every considered member of order `>= m`, among orders up to `k_max`.
    pub m: Option<usize>,
    /// A failing pair at the largest testable `m`, when `m` is absent.
    pub witness: Option<(CanonKey, CanonKey)>,
}

/// Evidence report; it never asserts that the age is minimal prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JonssonReport {
    pub k_max: usize,
    pub prime_only: bool,
    /// Considered members per order `0..=k_max`.
    pub counts_by_order: Vec<usize>,
    /// Considered prime members per height; empty when `prime_only` is off.
    pub counts_by_height: Vec<usize>,
    pub cofinality: Vec<CofinalityRow>,
    /// No prime member has more than two vertices.
    pub degenerate: bool,
}

pub fn jonsson_desk_check(
    age: &AgeApprox,
    prime_only: bool,
    n_max: usize,
) -> Result<JonssonReport> {
    let considered: Vec<Vec<Graph>> = age
        .levels
        .iter()
        .map(|level| {
            level
                .iter()
                .map(CanonKey::to_graph)
                .filter(|g| !prime_only || is_prime_small(g))
                .collect()
        })
        .collect();
    let counts_by_order: Vec<usize> = considered.iter().map(Vec::len).collect();
    let degenerate = prime_only && counts_by_order.iter().skip(3).all(|&c| c == 0);

    let mut counts_by_height = Vec::new();
    if prime_only {
        let table = HeightTable::with_cap(age.k_max.max(crate::prime::HEIGHT_CAP));
        for g in considered.iter().flatten() {
            let h = table.prime_height(g)?.height;
            if counts_by_height.len() <= h {
                counts_by_height.resize(h + 1, 0);
            }
            counts_by_height[h] += 1;
        }
    }

    let cofinality = (0..=n_max.min(age.k_max))
        .map(|n| cofinality_row(&considered, n, age.k_max))
        .collect();
    Ok(JonssonReport {
        k_max: age.k_max,
        prime_only,
        counts_by_order,
        counts_by_height,
        cofinality,
        degenerate,
    })
}

fn cofinality_row(considered: &[Vec<Graph>], n: usize, k_max: usize) -> CofinalityRow {
    let small: Vec<&Graph> = considered[..=n].iter().flatten().collect();
    let mut witness = None;
    for m in n..=k_max {
        let large: Vec<&Graph> = considered[m..].iter().flatten().collect();
        if large.is_empty() {
            break;
        }
        let failure = small.par_iter().find_map_first(|s| {
            large.iter().find(|l| !embeds(s, l)).map(|l| {
                (
                    canonical_key(s).expect("small"),
                    canonical_key(l).expect("small"),
                )
            })
        });
        match failure {
            None => {
                return CofinalityRow {
                    n,
                    m: Some(m),
                    witness: None,
                }
            }
            Some(pair) => witness = Some(pair),
        }
    }
    CofinalityRow {
        n,
        m: None,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    fn key(g: &Graph) -> CanonKey {
        canonical_key(g).unwrap()
    }

    #[test]
    fn path_age_to_three() {
        let age = graph_age(&Graph::path(5), 3).unwrap();
        assert_eq!(age.level_sizes(), vec![1, 1, 2, 3]);
        let p3 = key(&Graph::path(3));
        let k2k1 = key(&Graph::path(2).disjoint_union(&Graph::new(1)));
        let e3 = key(&Graph::empty(3));
        assert!(age.contains(&p3) && age.contains(&k2k1) && age.contains(&e3));
        assert!(age.is_hereditary());
    }

    #[test]
    fn clique_age() {
        let age = graph_age(&Graph::clique(3), 3).unwrap();
        assert_eq!(age.level_sizes(), vec![1, 1, 1, 1]);
        assert!(graph_age(&Graph::clique(3), 4).is_err());
    }

    #[test]
    fn matches_subset_oracle() {
        for g in [
            Graph::cycle(7),
            Graph::path(6).complement(),
            Graph::complete_bipartite(2, 4),
        ] {
            let age = graph_age(&g, 5).unwrap();
            let oracle = reference::age_classes(&g, 5);
            for (k, level) in oracle.iter().enumerate() {
                let mut keys: Vec<CanonKey> = level.iter().map(key).collect();
                keys.sort();
                assert_eq!(age.levels[k], keys, "order {k} of {g:?}");
            }
        }
    }

    #[test]
    fn inclusion() {
        let p5 = graph_age(&Graph::path(5), 3).unwrap();
        let p9 = graph_age(&Graph::path(9), 3).unwrap();
        let k3 = graph_age(&Graph::clique(3), 3).unwrap();
        assert_eq!(age_includes(&p5, &p9), Inclusion::YesAtScale { k: 3 });
        assert_eq!(
            age_includes(&k3, &p9),
            Inclusion::No {
                witness: key(&Graph::clique(3))
            }
        );
    }

    #[test]
    fn path_bounds() {
        let ones = Word::constant(1);
        let bounds = bounds_enumerate(&ones, 40, 4).unwrap();
        let keys: Vec<&CanonKey> = bounds.iter().map(|b| &b.key).collect();
        assert!(keys.contains(&&key(&Graph::clique(3))));
        assert!(keys.contains(&&key(&Graph::complete_bipartite(1, 3))));
        for b in &bounds {
            assert!(b.validate(&ones, 40).unwrap());
            assert!(b.stable);
        }
    }

    #[test]
    fn antichains() {
        let age = graph_age(&Graph::clique(5), 5).unwrap();
        let whole = max_antichain_in_window(&age, 0, 5);
        assert_eq!(whole.members.len(), 1);
        let age = graph_age(&Graph::path(8), 4).unwrap();
        // P4 and 3K1 are incomparable.
        let w = max_antichain_in_window(&age, 3, 4);
        assert!(w.members.len() >= 2);
        let reports = antichain_search(&age, 2);
        assert_eq!(reports.len(), 5);
    }

    #[test]
    fn antichain_matches_oracle() {
        let age = graph_age(&Graph::cycle(8), 4).unwrap();
        let items: Vec<Graph> = age.members().map(CanonKey::to_graph).collect();
        let less: Vec<Vec<bool>> = items
            .iter()
            .map(|a| {
                items
                    .iter()
                    .map(|b| a.order() < b.order() && embeds(a, b))
                    .collect()
            })
            .collect();
        let report = max_antichain_in_window(&age, 0, 4);
        assert_eq!(report.members.len(), reference::max_antichain(&less));
    }

    #[test]
    fn jonsson_path_and_clique() {
        let age = graph_age(&Graph::path(12), 7).unwrap();
        let rep = jonsson_desk_check(&age, true, 6).unwrap();
        // Prime members of a path's age: orders 0..2, then one path per order.
        assert_eq!(rep.counts_by_order, vec![1, 1, 2, 0, 1, 1, 1, 1]);
        for row in &rep.cofinality[3..] {
            assert_eq!(row.m, Some(row.n));
        }
        let clique = graph_age(&Graph::clique(6), 6).unwrap();
        let rep = jonsson_desk_check(&clique, true, 3).unwrap();
        assert!(rep.degenerate);
    }
}
