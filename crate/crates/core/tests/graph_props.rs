mod common;

use common::{graph, permutation};
use primeage::graph::{canonical_key, embeds, find_embedding, from_graph6, to_graph6};
use primeage::prime::{find_nontrivial_module, is_prime};
use primeage::{reference, Graph};
use proptest::prelude::*;

proptest! {
    #[test]
    fn complement_is_an_involution(g in graph(0, 70)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn induced_subgraph_commutes_with_complement(
        g in graph(1, 20),
        picks in proptest::collection::btree_set(0usize..20, 0..20),
    ) {
        let s: Vec<usize> = picks.into_iter().filter(|&v| v < g.order()).collect();
        prop_assert_eq!(
            g.induced_subgraph(&s).unwrap().complement(),
            g.complement().induced_subgraph(&s).unwrap()
        );
    }

    #[test]
    fn graph6_round_trip(g in graph(0, 80)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_key_matches_isomorphism(a in graph(0, 6), b in graph(0, 6)) {
        let same = canonical_key(&a).unwrap() == canonical_key(&b).unwrap();
        prop_assert_eq!(same, reference::isomorphic(&a, &b));
    }

    #[test]
    fn canonical_key_ignores_relabeling(
        (g, perm) in graph(0, 40).prop_flat_map(|g| { let n = g.order(); (Just(g), permutation(n)) })
    ) {
        let h = g.permute(&perm).unwrap();
        prop_assert_eq!(canonical_key(&g).unwrap(), canonical_key(&h).unwrap());
    }

    #[test]
    fn embedding_search_matches_subset_scan(h in graph(0, 5), g in graph(0, 8)) {
        let found = find_embedding(&h, &g);
        prop_assert_eq!(found.is_some(), reference::embeds(&h, &g));
        if let Some(phi) = found {
            prop_assert_eq!(g.induced_subgraph(&phi).unwrap().without_labels(), h);
        }
    }

    #[test]
    fn embedding_is_reflexive(g in graph(0, 30)) {
        prop_assert!(embeds(&g, &g));
    }

    #[test]
    fn primality_matches_oracle_and_complement(g in graph(0, 10)) {
        let p = is_prime(&g).unwrap();
        prop_assert_eq!(p, reference::is_prime(&g));
        prop_assert_eq!(p, is_prime(&g.complement()).unwrap());
        match find_nontrivial_module(&g).unwrap() {
            Some(w) => {
                prop_assert!(!p);
                prop_assert!(w.validates(&g));
            }
            None => prop_assert!(p),
        }
    }
}

#[test]
fn large_hosts_are_searched() {
    // A 100-vertex path holds P_30 but no triangle.
    let host = Graph::path(100);
    assert!(embeds(&Graph::path(30), &host));
    assert!(!embeds(&Graph::clique(3), &host));
    let short = Graph::path(19);
    assert!(embeds(&Graph::empty(10), &short));
    assert!(!embeds(&Graph::empty(11), &short));
}

#[test]
fn core_operations_reject_oversized_graphs() {
    let g = Graph::path(65);
    assert!(canonical_key(&g).is_err());
    assert!(is_prime(&g).is_err());
}
