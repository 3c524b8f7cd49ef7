//! Finite simple graphs with bit-row adjacency.
//!
//! Rows are stored as `ceil(n / 64)` words each, so structural operations work
//! for any order. Kernels that need a single word per row (canonical labeling,
//! module search) check [`CORE_CAP`] and fail with [`Error::TooLarge`].

mod canon;
mod embed;
mod generate;
mod graph6;

pub use canon::{canonical_form, canonical_key, canonical_labeling, CanonKey};
pub use embed::{embeds, find_embedding};
pub use generate::{graphs_of_order, graphs_up_to, one_vertex_extensions};
pub use graph6::{from_graph6, to_dot, to_graph6};

use crate::error::{Error, Result};
use std::fmt;

/// Largest order handled by the single-word kernels.
pub const CORE_CAP: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
    labels: Option<Vec<i64>>,
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Iterates the set bits of a single word.
pub(crate) fn bits_of(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let i = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(i)
        }
    })
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        Graph {
            n,
            stride,
            bits: vec![0; n * stride],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Adds the edge `{u, v}`. Loops are rejected silently since the graph is simple.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u != v {
            self.set(u, v, true);
        }
        Ok(())
    }

    pub(crate) fn set(&mut self, u: usize, v: usize, on: bool) {
        let (a, b) = (u * self.stride + v / 64, v * self.stride + u / 64);
        if on {
            self.bits[a] |= 1 << (v % 64);
            self.bits[b] |= 1 << (u % 64);
        } else {
            self.bits[a] &= !(1 << (v % 64));
            self.bits[b] &= !(1 << (u % 64));
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency row of `v` as `ceil(n/64)` words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    /// Single-word adjacency row; only meaningful when `n <= 64`.
    #[inline]
    pub(crate) fn row64(&self, v: usize) -> u64 {
        debug_assert!(self.n <= CORE_CAP);
        if self.stride == 0 {
            0
        } else {
            self.bits[v]
        }
    }

    pub(crate) fn require_core(&self) -> Result<()> {
        if self.n > CORE_CAP {
            Err(Error::TooLarge {
                n: self.n,
                cap: CORE_CAP,
            })
        } else {
            Ok(())
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .flat_map(|(k, &w)| bits_of(w).map(move |b| k * 64 + b))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    /// External label of vertex `v`; the index itself when no label map is set.
    pub fn label(&self, v: usize) -> i64 {
        match &self.labels {
            Some(l) => l[v],
            None => v as i64,
        }
    }

    pub fn index_of(&self, label: i64) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|&x| x == label),
            None => usize::try_from(label).ok().filter(|&v| v < self.n),
        }
    }

    pub fn with_labels(mut self, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidLabels(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidLabels("labels are not distinct".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && !self.has_edge(u, v) {
                    g.bits[u * g.stride + v / 64] |= 1 << (v % 64);
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// Subgraph induced on `subset`, with vertices renumbered in the given order.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Graph> {
        for &v in subset {
            self.check(v)?;
        }
        let mut seen = vec![false; self.n];
        for &v in subset {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Parameter(format!("vertex {v} repeated in subset")));
            }
        }
        let mut g = Graph::new(subset.len());
        for (i, &u) in subset.iter().enumerate() {
            for (j, &v) in subset.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set(i, j, true);
                }
            }
        }
        if let Some(l) = &self.labels {
            g.labels = Some(subset.iter().map(|&v| l[v]).collect());
        }
        Ok(g)
    }

    /// Deletes one vertex, keeping the remaining vertices in order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Induced subgraph on a bitmask of vertices (`n <= 64`).
    pub(crate) fn induced_mask(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = bits_of(mask).collect();
        self.induced_subgraph(&keep).expect("mask within range")
    }

    /// Applies `perm`, where `perm[old] = new`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Parameter("permutation length mismatch".into()));
        }
        let mut inv = vec![usize::MAX; self.n];
        for (old, &new) in perm.iter().enumerate() {
            self.check(new)?;
            if inv[new] != usize::MAX {
                return Err(Error::Parameter("not a permutation".into()));
            }
            inv[new] = old;
        }
        self.induced_subgraph(&inv)
    }

    /// Line graph; vertex `k` is the `k`-th edge of [`Graph::edges`].
    pub fn line_graph(&self) -> Graph {
        let edges = self.edges();
        let mut g = Graph::new(edges.len());
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if a == c || a == d || b == c || b == d {
                    g.set(i, j, true);
                }
            }
        }
        g
    }

    /// Disjoint union, `other`'s vertices following `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.set(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set(self.n + u, self.n + v, true);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.set(i - 1, i, true);
        }
        g
    }

    /// Cycle on `n` vertices; for `n < 3` this degenerates to the path.
    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.set(0, n - 1, true);
        }
        g
    }

    pub fn clique(n: usize) -> Graph {
        Graph::new(n).complement()
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n)
    }

    /// `K_{a,b}` with the `a` side first.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.set(u, v, true);
            }
        }
        g
    }
}

/// Named constructor families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Clique(usize),
    CompleteBipartite(usize, usize),
    Empty(usize),
}

pub fn make(family: Family) -> Graph {
    match family {
        Family::Path(n) => Graph::path(n),
        Family::Cycle(n) => Graph::cycle(n),
        Family::Clique(n) => Graph::clique(n),
        Family::CompleteBipartite(a, b) => Graph::complete_bipartite(a, b),
        Family::Empty(n) => Graph::empty(n),
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.n)?;
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}-{}", self.label(u), self.label(v)))
            .collect();
        write!(f, "{})", edges.join(" "))
    }
}
