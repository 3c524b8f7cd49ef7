//! Canonical labeling by individualization and equitable refinement.
//!
//! The canonical form is the relabeling whose adjacency rows are
//! lexicographically greatest among the leaves of the search tree. Leaves
//! equivalent under a discovered automorphism are pruned, both by orbit
//! pruning at each node and by jumping back to the divergence point when a
//! leaf reproduces the first leaf.

use super::{bits_of, to_graph6, Graph};
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;

/// Canonical byte string of an isomorphism class: the graph6 encoding of the
/// canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonKey(String);

impl CanonKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Rebuilds the canonical representative.
    pub fn to_graph(&self) -> Graph {
        super::from_graph6(&self.0).expect("canonical keys are valid graph6")
    }

    pub fn order(&self) -> usize {
        self.to_graph().order()
    }
}

impl fmt::Display for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonKey({})", self.0)
    }
}

pub fn canonical_key(g: &Graph) -> Result<CanonKey> {
    Ok(CanonKey(to_graph6(&canonical_form(g)?)))
}

/// Unlabeled canonical representative of `g`'s isomorphism class.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let lab = canonical_labeling(g)?;
    Ok(g.induced_subgraph(&lab)?.without_labels())
}

/// `lab[p]` is the vertex placed at canonical position `p`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>> {
    g.require_core()?;
    let n = g.order();
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj: Vec<u64> = (0..n).map(|v| g.row64(v)).collect();
    let mut search = Search {
        adj: &adj,
        n,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut cells = vec![all];
    refine(&adj, &mut cells, vec![all]);
    let mut path = Vec::new();
    search.descend(cells, &mut path);
    Ok(search.best.expect("search visits at least one leaf").1)
}

struct Leaf {
    rows: Vec<u64>,
    lab: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(depth)` when the caller should unwind to `depth`.
    fn descend(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        if cells.len() == self.n {
            return self.leaf(&cells, path);
        }
        let target = cells
            .iter()
            .position(|c| c.count_ones() > 1)
            .expect("non-discrete partition has a non-singleton cell");
        let depth = path.len();
        let mut tried: Vec<usize> = Vec::new();
        for v in bits_of(cells[target]) {
            if !tried.is_empty() && self.same_orbit(v, &tried, path) {
                continue;
            }
            let mut next = cells.clone();
            let rest = next[target] & !(1u64 << v);
            next[target] = 1u64 << v;
            next.insert(target + 1, rest);
            refine(self.adj, &mut next, vec![1u64 << v]);
            path.push(v);
            let jump = self.descend(next, path);
            path.pop();
            tried.push(v);
            if let Some(level) = jump {
                if level < depth {
                    return jump;
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let rows = relabeled_rows(self.adj, &lab);
        let Some(first) = &self.first else {
            self.best = Some((rows.clone(), lab.clone()));
            self.first = Some(Leaf {
                rows,
                lab,
                path: path.to_vec(),
            });
            return None;
        };
        if rows == first.rows {
            let aut = automorphism(&first.lab, &lab, self.n);
            let diverge = first
                .path
                .iter()
                .zip(path)
                .take_while(|(a, b)| a == b)
                .count();
            self.automorphisms.push(aut);
            return Some(diverge);
        }
        let best = self.best.as_mut().expect("best set with first");
        match rows.cmp(&best.0) {
            std::cmp::Ordering::Greater => *best = (rows, lab),
            std::cmp::Ordering::Equal => {
                let aut = automorphism(&best.1, &lab, self.n);
                self.automorphisms.push(aut);
            }
            std::cmp::Ordering::Less => {}
        }
        None
    }

    /// Orbit test under the automorphisms found so far that fix `path` pointwise.
    fn same_orbit(&self, v: usize, tried: &[usize], path: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for aut in &self.automorphisms {
            if path.iter().all(|&x| aut[x] == x) {
                any = true;
                for (x, &y) in aut.iter().enumerate() {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }
}

/// Maps the vertex at each position of `from` to the vertex at the same
/// position of `to`.
fn automorphism(from: &[usize], to: &[usize], n: usize) -> Vec<usize> {
    let mut aut = vec![0; n];
    for (p, &v) in from.iter().enumerate() {
        aut[v] = to[p];
    }
    aut
}

fn relabeled_rows(adj: &[u64], lab: &[usize]) -> Vec<u64> {
    let n = lab.len();
    let mut pos = vec![0usize; n];
    for (p, &v) in lab.iter().enumerate() {
        pos[v] = p;
    }
    lab.iter()
        .map(|&v| bits_of(adj[v]).fold(0u64, |acc, u| acc | 1u64 << pos[u]))
        .collect()
}

/// Splits cells by neighbour counts into each splitter until equitable.
/// Sub-cells are ordered by increasing count, which keeps the result
/// independent of vertex numbering.
fn refine(adj: &[u64], cells: &mut Vec<u64>, splitters: Vec<u64>) {
    let mut queue: VecDeque<u64> = splitters.into();
    while let Some(s) = queue.pop_front() {
        let mut i = 0;
        while i < cells.len() {
            let c = cells[i];
            if c.count_ones() < 2 {
                i += 1;
                continue;
            }
            let mut groups: Vec<(u32, u64)> = Vec::new();
            for v in bits_of(c) {
                let k = (adj[v] & s).count_ones();
                match groups.iter_mut().find(|g| g.0 == k) {
                    Some(g) => g.1 |= 1u64 << v,
                    None => groups.push((k, 1u64 << v)),
                }
            }
            if groups.len() == 1 {
                i += 1;
                continue;
            }
            groups.sort_unstable_by_key(|g| g.0);
            let len = groups.len();
            cells.splice(i..=i, groups.iter().map(|g| g.1));
            queue.extend(groups.iter().map(|g| g.1));
            i += len;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn key(g: &Graph) -> CanonKey {
        canonical_key(g).unwrap()
    }

    #[test]
    fn examples() {
        let p4 = Graph::path(4);
        assert_eq!(key(&p4), key(&p4.complement()));
        assert_ne!(key(&Graph::clique(3)), key(&Graph::path(3)));
        let c5 = Graph::cycle(5);
        let rotated = c5.permute(&[1, 2, 3, 4, 0]).unwrap();
        assert_eq!(key(&c5), key(&rotated));
    }

    #[test]
    fn symmetric_graphs_terminate() {
        for n in [0, 1, 2, 17, 40, 64] {
            let k = key(&Graph::clique(n));
            assert_eq!(k.to_graph(), Graph::clique(n));
            key(&Graph::empty(n));
        }
        let k33 = Graph::complete_bipartite(32, 32);
        assert_eq!(key(&k33).to_graph().edge_count(), 1024);
        assert!(canonical_key(&Graph::path(65)).is_err());
    }

    #[test]
    fn labels_ignored() {
        let g = Graph::path(3).with_labels(vec![-1, 0, 1]).unwrap();
        assert_eq!(key(&g), key(&Graph::path(3)));
        assert_eq!(canonical_form(&g).unwrap().labels(), None);
    }
}
