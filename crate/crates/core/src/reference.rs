//! Exhaustive reference implementations used as oracles by the verification
//! suite. They share nothing with the fast kernels beyond `has_edge`.

use crate::graph::Graph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism by trying every bijection. Practical up to about 8 vertices.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    permutations(n)
        .iter()
        .any(|p| (0..n).all(|i| (i + 1..n).all(|j| a.has_edge(i, j) == b.has_edge(p[i], p[j]))))
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Induced embedding by enumerating every vertex subset of `g` of size `|h|`.
pub fn embeds(h: &Graph, g: &Graph) -> bool {
    if h.order() > g.order() {
        return false;
    }
    subsets_of_size(g.order(), h.order()).iter().any(|s| {
        let sub = g.induced_subgraph(s).expect("subset in range");
        isomorphic(h, &sub)
    })
}

/// Whether `set` (a bitmask) is a module of `g`.
pub fn is_module(g: &Graph, set: u64) -> bool {
    let members: Vec<usize> = (0..g.order()).filter(|&v| set >> v & 1 == 1).collect();
    (0..g.order()).filter(|&z| set >> z & 1 == 0).all(|z| {
        let first = members.first().map(|&m| g.has_edge(z, m));
        members.iter().all(|&m| Some(g.has_edge(z, m)) == first)
    })
}

/// Every nontrivial module, by scanning all `2^n` subsets.
pub fn nontrivial_modules(g: &Graph) -> Vec<u64> {
    let n = g.order();
    assert!(n < 32, "exhaustive module scan is for small graphs");
    (0u64..1 << n)
        .filter(|s| {
            let k = s.count_ones() as usize;
            k >= 2 && k < n && is_module(g, *s)
        })
        .collect()
}

/// Primality by subset enumeration; orders up to 2 count as prime.
pub fn is_prime(g: &Graph) -> bool {
    nontrivial_modules(g).is_empty()
}

/// Isomorphism classes of induced subgraphs with at most `k_max` vertices,
/// found by enumerating every subset and comparing with brute-force
/// isomorphism. Returns one representative per class, grouped by order.
pub fn age_classes(g: &Graph, k_max: usize) -> Vec<Vec<Graph>> {
    let mut levels: Vec<Vec<Graph>> = vec![Vec::new(); k_max + 1];
    for (k, level) in levels.iter_mut().enumerate() {
        for s in subsets_of_size(g.order(), k) {
            let sub = g
                .induced_subgraph(&s)
                .expect("subset in range")
                .without_labels();
            if !level.iter().any(|r| isomorphic(r, &sub)) {
                level.push(sub);
            }
        }
    }
    levels
}

/// Largest antichain of a strict order given as `less[i][j]`, by trying all
/// subsets. Intended for at most ~20 elements.
pub fn max_antichain(less: &[Vec<bool>]) -> usize {
    let n = less.len();
    assert!(n <= 24);
    let mut best = 0;
    for s in 0u32..1 << n {
        let k = s.count_ones() as usize;
        if k <= best {
            continue;
        }
        let ok = (0..n).all(|i| s >> i & 1 == 0 || (0..n).all(|j| s >> j & 1 == 0 || !less[i][j]));
        if ok {
            best = k;
        }
    }
    best
}
