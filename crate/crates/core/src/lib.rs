//! Prime graphs, graphs of 0-1 words, permutation-graph realizers, and
//! finite-scale ages and bounds of hereditary graph classes.

pub mod age;
pub mod catalogue;
pub mod cli;
pub mod error;
pub mod graph;
pub mod prime;
pub mod realizer;
pub mod reference;
pub mod verify;
pub mod word_graph;
pub mod words;

pub use error::{Error, Result};
pub use graph::{CanonKey, Graph};
