//! Generators for the unavoidable prime families and a detector reporting
//! which of them (or their complements) occur in a graph.
//!
//! Half-graph convention: `u_i ~ v_j` iff `i <= j`. The family built from
//! the half-graph by turning one side into a clique and adding a vertex is
//! not generated, since the adjacency of the added vertex is not pinned down;
//! the detector covers the five families below only.

use crate::error::{Error, Result};
use crate::graph::{embeds, find_embedding, Graph};
use crate::prime::is_prime;
use crate::word_graph::graph_of_word;
use crate::words::Word;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    SubdividedStar,
    LineOfK2n,
    LineOfSubdividedStar,
    HalfGraph,
    ChainWordPrime,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::SubdividedStar,
        FamilyKind::LineOfK2n,
        FamilyKind::LineOfSubdividedStar,
        FamilyKind::HalfGraph,
        FamilyKind::ChainWordPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::SubdividedStar => "subdivided-star",
            FamilyKind::LineOfK2n => "line-of-k2n",
            FamilyKind::LineOfSubdividedStar => "line-of-subdivided-star",
            FamilyKind::HalfGraph => "half-graph",
            FamilyKind::ChainWordPrime => "chain-word-prime",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyId {
    pub kind: FamilyKind,
    pub complemented: bool,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complemented {
            write!(f, "co-{}", self.kind)
        } else {
            write!(f, "{}", self.kind)
        }
    }
}

fn positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Parameter(
            "family parameter must be at least 1".into(),
        ))
    } else {
        Ok(())
    }
}

/// `K_{1,n}` with every edge subdivided: centre 0, then `s_i, l_i` pairs.
pub fn subdivided_star(n: usize) -> Result<Graph> {
    positive(n)?;
    let mut g = Graph::new(2 * n + 1);
    for i in 0..n {
        let (s, l) = (1 + 2 * i, 2 + 2 * i);
        g.add_edge(0, s)?;
        g.add_edge(s, l)?;
    }
    Ok(g)
}

pub fn line_of_k2n(n: usize) -> Result<Graph> {
    positive(n)?;
    Ok(Graph::complete_bipartite(2, n).line_graph())
}

pub fn line_of_subdivided_star(n: usize) -> Result<Graph> {
    Ok(subdivided_star(n)?.line_graph())
}

/// Vertices `u_1..u_n` then `v_1..v_n`, with `u_i ~ v_j` iff `i <= j`.
pub fn half_graph(n: usize) -> Result<Graph> {
    positive(n)?;
    let mut g = Graph::new(2 * n);
    for i in 0..n {
        for j in i..n {
            g.add_edge(i, n + j)?;
        }
    }
    Ok(g)
}

/// The word graph of a length-`n` prefix of `seed`, with its primality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWordMember {
    pub graph: Graph,
    pub prime: bool,
}

pub fn chain_word_prime(n: usize, seed: &Word) -> Result<ChainWordMember> {
    let graph = graph_of_word(seed, n)?;
    let prime = is_prime(&graph)?;
    Ok(ChainWordMember { graph, prime })
}

/// The parameter-`n` member of a family, unlabeled. The chain-word family
/// uses the Fibonacci word.
pub fn member(id: FamilyId, n: usize) -> Result<Graph> {
    let g = match id.kind {
        FamilyKind::SubdividedStar => subdivided_star(n)?,
        FamilyKind::LineOfK2n => line_of_k2n(n)?,
        FamilyKind::LineOfSubdividedStar => line_of_subdivided_star(n)?,
        FamilyKind::HalfGraph => half_graph(n)?,
        FamilyKind::ChainWordPrime => chain_word_prime(n, &Word::fibonacci())?
            .graph
            .without_labels(),
    };
    Ok(if id.complemented { g.complement() } else { g })
}

pub fn all_family_ids() -> Vec<FamilyId> {
    FamilyKind::ALL
        .into_iter()
        .flat_map(|kind| {
            [false, true]
                .into_iter()
                .map(move |complemented| FamilyId { kind, complemented })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detection {
    pub family: FamilyId,
    /// Host vertex for each vertex of the family member.
    pub embedding: Vec<usize>,
}

/// Families whose parameter-`n` member, or its complement, is an induced
/// subgraph of `g`. The chain-word family is tested with `seed`.
pub fn detect_unavoidable(g: &Graph, n: usize, seed: &Word) -> Result<Vec<Detection>> {
    positive(n)?;
    let chain = chain_word_prime(n, seed)?.graph.without_labels();
    let ids = all_family_ids();
    let patterns: Vec<(FamilyId, Graph)> = ids
        .into_iter()
        .map(|id| {
            let p = match id.kind {
                FamilyKind::ChainWordPrime if id.complemented => chain.complement(),
                FamilyKind::ChainWordPrime => chain.clone(),
                _ => member(id, n)?,
            };
            Ok((id, p))
        })
        .collect::<Result<_>>()?;
    let hits: Vec<Detection> = patterns
        .par_iter()
        .filter_map(|(id, p)| {
            find_embedding(p, g).map(|embedding| Detection {
                family: *id,
                embedding,
            })
        })
        .collect();
    // Every hit is re-checked with a fresh search before it is reported.
    for hit in &hits {
        let p = &patterns
            .iter()
            .find(|(id, _)| *id == hit.family)
            .expect("known id")
            .1;
        let sub = g.induced_subgraph(&hit.embedding)?.without_labels();
        if sub != *p || !embeds(p, g) {
            return Err(Error::Invariant(format!(
                "detection of {} did not re-validate",
                hit.family
            )));
        }
    }
    Ok(hits)
}
