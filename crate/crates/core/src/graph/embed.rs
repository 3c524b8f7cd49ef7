//! Induced-subgraph embedding search with forward checking over bit domains.

use super::{words_for, Graph};

/// Whether `h` is isomorphic to an induced subgraph of `g`.
pub fn embeds(h: &Graph, g: &Graph) -> bool {
    find_embedding(h, g).is_some()
}

/// An injective map `phi` (pattern vertex -> host vertex) such that
/// `h.has_edge(a, b) == g.has_edge(phi[a], phi[b])` for all pairs.
pub fn find_embedding(h: &Graph, g: &Graph) -> Option<Vec<usize>> {
    let k = h.order();
    let n = g.order();
    if k > n {
        return None;
    }
    if k == 0 {
        return Some(Vec::new());
    }
    let w = words_for(n);

    // Pattern order: repeatedly take the vertex most constrained by those
    // already placed, preferring high degree or high co-degree.
    let hdeg: Vec<usize> = (0..k).map(|v| h.degree(v)).collect();
    let mut order = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    for _ in 0..k {
        let pick = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = order.iter().filter(|&&u| h.has_edge(u, v)).count();
                let skew = hdeg[v].max(k - 1 - hdeg[v]);
                (linked, skew, std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        placed[pick] = true;
        order.push(pick);
    }

    let gdeg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    // domains[level * k * w + t * w ..] is the domain of order[t] at `level`.
    let mut domains = vec![0u64; (k + 1) * k * w];
    for (t, &u) in order.iter().enumerate() {
        let base = &mut domains[t * w..(t + 1) * w];
        for x in 0..n {
            if gdeg[x] >= hdeg[u] && n - 1 - gdeg[x] >= k - 1 - hdeg[u] {
                base[x / 64] |= 1 << (x % 64);
            }
        }
        if base.iter().all(|&b| b == 0) {
            return None;
        }
    }

    let mut image = vec![usize::MAX; k];
    let mut cursor = vec![0usize; k];
    let mut level = 0usize;
    loop {
        let stride = k * w;
        let here = level * stride + level * w;
        // Next candidate at or after cursor[level] in this level's domain.
        let mut found = None;
        let mut x = cursor[level];
        while x < n {
            let word = domains[here + x / 64] >> (x % 64);
            if word == 0 {
                x = (x / 64 + 1) * 64;
                continue;
            }
            x += word.trailing_zeros() as usize;
            if x < n {
                found = Some(x);
            }
            break;
        }
        let Some(x) = found else {
            if level == 0 {
                return None;
            }
            level -= 1;
            continue;
        };
        cursor[level] = x + 1;
        let u = order[level];
        image[u] = x;
        if level + 1 == k {
            return Some(image);
        }
        // Forward check: restrict every later domain at the next level.
        let (cur, next) = domains.split_at_mut((level + 1) * stride);
        let cur = &cur[level * stride..];
        let row = g.row(x);
        let mut dead = false;
        for t in level + 1..k {
            let v = order[t];
            let adjacent = h.has_edge(u, v);
            let mut live = 0u64;
            for j in 0..w {
                let mut d = cur[t * w + j];
                d &= if adjacent { row[j] } else { !row[j] };
                if j == x / 64 {
                    d &= !(1u64 << (x % 64));
                }
                next[t * w + j] = d;
                live |= d;
            }
            if live == 0 {
                dead = true;
                break;
            }
        }
        if !dead {
            level += 1;
            cursor[level] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn check(h: &Graph, g: &Graph, phi: &[usize]) {
        for a in 0..h.order() {
            for b in 0..h.order() {
                if a != b {
                    assert_ne!(phi[a], phi[b]);
                    assert_eq!(h.has_edge(a, b), g.has_edge(phi[a], phi[b]));
                }
            }
        }
    }

    #[test]
    fn examples() {
        assert!(embeds(&Graph::path(3), &Graph::path(4)));
        assert!(!embeds(&Graph::clique(3), &Graph::cycle(5)));
        assert!(embeds(&Graph::new(0), &Graph::new(0)));
        assert!(embeds(&Graph::new(0), &Graph::clique(4)));
        assert!(!embeds(&Graph::path(4), &Graph::cycle(4)));
        assert!(embeds(&Graph::empty(2), &Graph::cycle(4)));
    }

    #[test]
    fn wide_host() {
        let host = Graph::path(150);
        let phi = find_embedding(&Graph::path(100), &host).unwrap();
        check(&Graph::path(100), &host, &phi);
        let claw = Graph::complete_bipartite(1, 3);
        assert!(!embeds(&claw, &host));
        let two_edges = Graph::path(2).disjoint_union(&Graph::path(2));
        let phi = find_embedding(&two_edges, &host).unwrap();
        check(&two_edges, &host, &phi);
    }
}
