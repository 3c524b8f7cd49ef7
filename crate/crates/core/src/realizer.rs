//! Two-linear-order realizers of transitive orientations of word graphs,
//! and conversions between bichains, posets, permutations and graphs.
//!
//! Convention: the permutation graph of `σ` has an edge for each pair
//! reversed by `σ`. For a bichain `B`, the pairs reversed between its two
//! orders are the incomparable pairs of the intersection order, so
//! `permutation_graph(bichain_to_permutation(B)) = incomparability_graph(o(B))`.

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

/// A total order, listed from least to greatest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearOrder(Vec<i64>);

impl LinearOrder {
    pub fn new(seq: Vec<i64>) -> Result<Self> {
        let mut sorted = seq.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidOrder("repeated element".into()));
        }
        Ok(LinearOrder(seq))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> LinearOrder {
        LinearOrder(self.0.iter().rev().copied().collect())
    }

    fn ranks(&self) -> HashMap<i64, usize> {
        self.0.iter().enumerate().map(|(r, &x)| (x, r)).collect()
    }

    fn sorted_elements(&self) -> Vec<i64> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }

    pub fn is_extremal(&self, x: i64) -> bool {
        self.0.first() == Some(&x) || self.0.last() == Some(&x)
    }

    /// Keeps only the listed elements, in their current relative order.
    pub fn restrict(&self, keep: &[i64]) -> LinearOrder {
        LinearOrder(
            self.0
                .iter()
                .copied()
                .filter(|x| keep.contains(x))
                .collect(),
        )
    }
}

/// Two linear orders on one vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bichain {
    pub first: LinearOrder,
    pub second: LinearOrder,
}

impl Bichain {
    pub fn new(first: LinearOrder, second: LinearOrder) -> Result<Self> {
        if first.sorted_elements() != second.sorted_elements() {
            return Err(Error::VertexSetMismatch);
        }
        Ok(Bichain { first, second })
    }

    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }
}

/// A realizer is a bichain read as the pair `(L, M)` whose intersection is
/// the realized order.
pub type Realizer = Bichain;

/// A finite strict partial order on labelled elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poset {
    pub elements: Vec<i64>,
    /// `less[i][j]` iff `elements[i] < elements[j]`.
    pub less: Vec<Vec<bool>>,
}

impl Poset {
    pub fn is_strict_order(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|i| !self.less[i][i])
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    !self.less[i][j] || (0..n).all(|k| !self.less[j][k] || self.less[i][k])
                })
            })
    }

    fn graph(&self, comparable: bool) -> Graph {
        let n = self.elements.len();
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                let c = self.less[i][j] || self.less[j][i];
                if c == comparable {
                    g.set(i, j, true);
                }
            }
        }
        g.with_labels(self.elements.clone())
            .expect("poset elements are distinct")
    }
}

/// `x < y` iff `x` precedes `y` in both orders. Elements are listed in the
/// first order.
pub fn intersection_order(b: &Bichain) -> Poset {
    let elements = b.first.as_slice().to_vec();
    let r2 = b.second.ranks();
    let n = elements.len();
    let less = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i < j && r2[&elements[i]] < r2[&elements[j]])
                .collect()
        })
        .collect();
    Poset { elements, less }
}

pub fn comparability_graph(p: &Poset) -> Graph {
    p.graph(true)
}

pub fn incomparability_graph(p: &Poset) -> Graph {
    p.graph(false)
}

/// One-line notation: `σ(i)` is the 1-based rank in the second order of the
/// `i`-th element of the first order.
pub fn bichain_to_permutation(b: &Bichain) -> Vec<usize> {
    let r2 = b.second.ranks();
    b.first.as_slice().iter().map(|x| r2[x] + 1).collect()
}

/// The bichain `({1..n}, natural order, order by σ value)`.
pub fn permutation_to_bichain(sigma: &[usize]) -> Result<Bichain> {
    let n = sigma.len();
    let mut second = vec![0i64; n];
    let mut seen = vec![false; n];
    for (i, &s) in sigma.iter().enumerate() {
        if s == 0 || s > n || std::mem::replace(&mut seen[s - 1], true) {
            return Err(Error::Parameter("not a permutation of 1..n".into()));
        }
        second[s - 1] = i as i64 + 1;
    }
    Bichain::new(LinearOrder((1..=n as i64).collect()), LinearOrder(second))
}

/// Graph on labels `1..=n` whose edges are the pairs reversed by `σ`.
pub fn permutation_graph(sigma: &[usize]) -> Graph {
    let n = sigma.len();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if sigma[i] > sigma[j] {
                g.set(i, j, true);
            }
        }
    }
    g.with_labels((1..=n as i64).collect())
        .expect("distinct labels")
}

/// Whether the intersection order of `r` has comparability graph `g`
/// (matched by labels) and is transitive.
pub fn validate_realizer(r: &Realizer, g: &Graph) -> Result<bool> {
    let n = g.order();
    let labels: Vec<i64> = (0..n).map(|v| g.label(v)).collect();
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    if r.first.sorted_elements() != sorted || r.second.sorted_elements() != sorted {
        return Err(Error::VertexSetMismatch);
    }
    let (r1, r2) = (r.first.ranks(), r.second.ranks());
    let rank: Vec<(usize, usize)> = labels.iter().map(|x| (r1[x], r2[x])).collect();
    let below = |a: usize, b: usize| rank[a].0 < rank[b].0 && rank[a].1 < rank[b].1;
    for a in 0..n {
        for b in a + 1..n {
            if (below(a, b) || below(b, a)) != g.has_edge(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(intersection_order(r).is_strict_order())
}

/// Incremental realizer construction for graphs of growing words.
///
/// Holds a realizer `(L, M)` of a transitive orientation of the graph of the
/// letters pushed so far, in which the newest vertex is extremal in `L` or
/// `M`. Each letter inserts the next vertex next to an extreme of one order
/// and at an extreme of the other, so a push costs O(1). When the newest
/// vertex is a minimum rather than a maximum, the insertion is the mirror
/// image of the maximal case (the dual realizer is never built).
#[derive(Debug, Clone)]
pub struct RealizerBuilder {
    orders: [VecDeque<i64>; 2],
    newest: i64,
}

impl Default for RealizerBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl RealizerBuilder {
    /// The realizer of the one-vertex graph on label `-1`.
    pub fn new() -> Self {
        RealizerBuilder {
            orders: [VecDeque::from([-1]), VecDeque::from([-1])],
            newest: -1,
        }
    }

    pub fn newest(&self) -> i64 {
        self.newest
    }

    /// Where the newest vertex sits: (order index, at the top).
    fn anchor(&self) -> Option<(usize, bool)> {
        let v = Some(&self.newest);
        if self.orders[0].back() == v {
            Some((0, true))
        } else if self.orders[1].back() == v {
            Some((1, true))
        } else if self.orders[0].front() == v {
            Some((0, false))
        } else if self.orders[1].front() == v {
            Some((1, false))
        } else {
            None
        }
    }

    pub fn newest_is_extremal(&self) -> bool {
        self.anchor().is_some()
    }

    /// Appends one letter, adding vertex `newest + 1`.
    pub fn push(&mut self, bit: u8) -> Result<()> {
        let (side, top) = self
            .anchor()
            .ok_or_else(|| Error::Invariant("newest vertex lost extremality".into()))?;
        let new = self.newest + 1;
        let [a, b] = &mut self.orders;
        let (l, m) = if side == 0 { (a, b) } else { (b, a) };
        if top {
            // Just below the maximum of L.
            l.insert(l.len() - 1, new);
            // Letter 1: comparable to the old newest only, so M's bottom.
            // Letter 0: comparable to all but the old newest, so M's top.
            if bit == 1 {
                m.push_front(new);
            } else {
                m.push_back(new);
            }
        } else {
            l.insert(1, new);
            if bit == 1 {
                m.push_back(new);
            } else {
                m.push_front(new);
            }
        }
        self.newest = new;
        Ok(())
    }

    pub fn realizer(&self) -> Realizer {
        Bichain {
            first: LinearOrder(self.orders[0].iter().copied().collect()),
            second: LinearOrder(self.orders[1].iter().copied().collect()),
        }
    }
}

/// Realizer of a transitive orientation of the graph of `letters`.
pub fn build_realizer(letters: &[u8]) -> Result<Realizer> {
    let mut b = RealizerBuilder::new();
    for &bit in letters {
        b.push(bit)?;
        if !b.newest_is_extremal() {
            return Err(Error::Invariant("extension step broke extremality".into()));
        }
    }
    Ok(b.realizer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_graph::graph_of_letters;

    fn order(v: &[i64]) -> LinearOrder {
        LinearOrder::new(v.to_vec()).unwrap()
    }

    #[test]
    fn base_and_small_words() {
        let r = build_realizer(&[]).unwrap();
        assert_eq!(r.first.as_slice(), &[-1]);
        assert_eq!(r.second.as_slice(), &[-1]);
        let r = build_realizer(&[1]).unwrap();
        assert!(validate_realizer(&r, &graph_of_letters(&[1])).unwrap());
        for len in 0..=4 {
            for mask in 0..1u32 << len {
                let w: Vec<u8> = (0..len).map(|i| (mask >> i & 1) as u8).collect();
                let r = build_realizer(&w).unwrap();
                assert!(
                    validate_realizer(&r, &graph_of_letters(&w)).unwrap(),
                    "{w:?}"
                );
            }
        }
        let r = build_realizer(&[1, 1, 1, 1]).unwrap();
        assert!(validate_realizer(&r, &graph_of_letters(&[1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn validation_edge_cases() {
        let same = Bichain::new(order(&[1, 2, 3]), order(&[1, 2, 3])).unwrap();
        assert!(
            validate_realizer(&same, &Graph::clique(3).with_labels(vec![1, 2, 3]).unwrap())
                .unwrap()
        );
        let opposite = Bichain::new(order(&[1, 2, 3]), order(&[3, 2, 1])).unwrap();
        assert!(validate_realizer(
            &opposite,
            &Graph::empty(3).with_labels(vec![1, 2, 3]).unwrap()
        )
        .unwrap());
        assert_eq!(
            validate_realizer(&same, &Graph::clique(3)),
            Err(Error::VertexSetMismatch)
        );
        assert!(Bichain::new(order(&[1, 2]), order(&[1, 3])).is_err());
        assert!(LinearOrder::new(vec![1, 1]).is_err());
    }

    #[test]
    fn intersections_and_graphs() {
        let b = Bichain::new(order(&[1, 2, 3]), order(&[2, 1, 3])).unwrap();
        let p = intersection_order(&b);
        assert!(p.is_strict_order());
        let comp = comparability_graph(&p);
        let pairs: Vec<(i64, i64)> = comp
            .edges()
            .into_iter()
            .map(|(u, v)| (comp.label(u), comp.label(v)))
            .collect();
        assert_eq!(pairs, vec![(1, 3), (2, 3)]);
        assert_eq!(incomparability_graph(&p), comp.complement());
        let chain =
            intersection_order(&Bichain::new(order(&[1, 2, 3]), order(&[1, 2, 3])).unwrap());
        assert_eq!(comparability_graph(&chain).edge_count(), 3);
        let anti = intersection_order(&Bichain::new(order(&[1, 2, 3]), order(&[3, 2, 1])).unwrap());
        assert_eq!(comparability_graph(&anti).edge_count(), 0);
    }

    #[test]
    fn permutations() {
        let id = Bichain::new(order(&[1, 2, 3]), order(&[1, 2, 3])).unwrap();
        assert_eq!(bichain_to_permutation(&id), vec![1, 2, 3]);
        let rev = Bichain::new(order(&[1, 2, 3]), order(&[3, 2, 1])).unwrap();
        assert_eq!(bichain_to_permutation(&rev), vec![3, 2, 1]);
        let b = Bichain::new(order(&[1, 2, 3]), order(&[2, 1, 3])).unwrap();
        let sigma = bichain_to_permutation(&b);
        assert_eq!(sigma, vec![2, 1, 3]);
        assert_eq!(
            permutation_graph(&sigma),
            incomparability_graph(&intersection_order(&b))
        );
        assert!(permutation_to_bichain(&[1, 1]).is_err());
    }
}
