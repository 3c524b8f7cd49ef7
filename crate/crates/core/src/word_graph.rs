//! Graphs of 0-1 words.
//!
//! For a word `u_0 .. u_{L-1}`, [`graph_of_word`] builds the graph on labels
//! `-1, 0, .., L-1` where, for labels `i < j`, `{i, j}` is an edge iff
//! `u_j = 1` and `j = i + 1`, or `u_j = 0` and `j != i + 1`. Vertex index is
//! label + 1. The forward variant reads the letter of the smaller endpoint
//! instead, on labels `0, .., L`.

use crate::error::{Error, Result};
use crate::graph::{find_embedding, Graph};
use crate::words::Word;
use serde::{Deserialize, Serialize};

/// Word graph of an explicit letter sequence.
pub fn graph_of_letters(letters: &[u8]) -> Graph {
    let len = letters.len();
    let mut g = Graph::new(len + 1);
    for (j, &bit) in letters.iter().enumerate() {
        let v = j + 1;
        if bit == 1 {
            g.set(v, v - 1, true);
        } else {
            for u in 0..v - 1 {
                g.set(u, v, true);
            }
        }
    }
    let labels = (-1..len as i64).collect();
    g.with_labels(labels).expect("labels are distinct")
}

/// Word graph of the first `len` letters of `w`.
pub fn graph_of_word(w: &Word, len: usize) -> Result<Graph> {
    Ok(graph_of_letters(&w.prefix(len)?))
}

/// Forward word graph of an explicit letter sequence, on labels `0..=len`.
pub fn forward_graph_of_letters(letters: &[u8]) -> Graph {
    let len = letters.len();
    let mut g = Graph::new(len + 1);
    for (i, &bit) in letters.iter().enumerate() {
        if bit == 1 {
            g.set(i, i + 1, true);
        } else {
            for v in i + 2..=len {
                g.set(i, v, true);
            }
        }
    }
    let labels = (0..=len as i64).collect();
    g.with_labels(labels).expect("labels are distinct")
}

pub fn graph_of_word_forward(w: &Word, len: usize) -> Result<Graph> {
    Ok(forward_graph_of_letters(&w.prefix(len)?))
}

/// Outcome of a finite-scale age membership query. Absence from a finite
/// prefix graph says nothing about the infinite age, so there is no "no".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Membership {
    /// Embeds; `labels[k]` is the word-graph label hosting pattern vertex `k`.
    Yes {
        labels: Vec<i64>,
    },
    NotFoundAtScale {
        prefix_len: usize,
    },
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes { .. })
    }
}

pub fn age_membership(h: &Graph, w: &Word, len: usize) -> Result<Membership> {
    if h.order() > len + 1 {
        return Err(Error::PatternTooLarge {
            pattern: h.order(),
            len,
        });
    }
    let g = graph_of_word(w, len)?;
    Ok(match find_embedding(h, &g) {
        Some(phi) => Membership::Yes {
            labels: phi.into_iter().map(|v| g.label(v)).collect(),
        },
        None => Membership::NotFoundAtScale { prefix_len: len },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_key;
    use crate::words::{complement_word, reverse_star};

    fn letters(s: &str) -> Word {
        Word::explicit(s).unwrap()
    }

    #[test]
    fn small_words() {
        let g = graph_of_word(&letters("1"), 1).unwrap();
        assert_eq!(g.labels(), Some(&[-1, 0][..]));
        assert_eq!(g.edges(), vec![(0, 1)]);
        let p5 = graph_of_word(&letters("1111"), 4).unwrap();
        assert_eq!(p5.clone().without_labels(), Graph::path(5));
        let g = graph_of_word(&letters("0"), 1).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = graph_of_word(&letters(""), 0).unwrap();
        assert_eq!((g.order(), g.labels()), (1, Some(&[-1][..])));
    }

    #[test]
    fn forward_variant() {
        let g = graph_of_word_forward(&Word::constant(1), 4).unwrap();
        assert_eq!(g.without_labels(), Graph::path(5));
        assert_eq!(
            graph_of_word_forward(&letters("0"), 1)
                .unwrap()
                .edge_count(),
            0
        );
        let w = letters("0010110");
        let lhs = graph_of_word_forward(&reverse_star(&w, 7).unwrap(), 7).unwrap();
        let rhs = graph_of_word(&w, 7).unwrap();
        assert_eq!(canonical_key(&lhs).unwrap(), canonical_key(&rhs).unwrap());
    }

    #[test]
    fn complement_identity_small() {
        let w = letters("0110100");
        let flipped = graph_of_word(&complement_word(&w), 7).unwrap();
        assert_eq!(flipped, graph_of_word(&w, 7).unwrap().complement());
    }

    #[test]
    fn membership() {
        let ones = Word::constant(1);
        assert!(age_membership(&Graph::path(3), &ones, 5).unwrap().is_yes());
        assert_eq!(
            age_membership(&Graph::clique(3), &ones, 5).unwrap(),
            Membership::NotFoundAtScale { prefix_len: 5 }
        );
        assert!(age_membership(&Graph::path(7), &ones, 5).is_err());
    }

    #[test]
    fn fibonacci_contains_triangle() {
        // Golden value: G of the Fibonacci prefix of length 20 contains K3
        // (labels 0, 2, 5 are pairwise non-consecutive and u_2 = u_5 = 0).
        let m = age_membership(&Graph::clique(3), &Word::fibonacci(), 20).unwrap();
        assert!(m.is_yes());
    }
}
