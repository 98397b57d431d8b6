//! Finite automata, padded relations, and automatic structures.

pub mod nfa;
pub mod padded;
pub mod structure;
pub mod transfer;

pub use nfa::{Nfa, Symbol};
pub use padded::{compose_relations, convolve, deconvolve, PaddedRelationNfa, PairLetter};
pub use structure::{structure_for_finite, verify_structure, AutomaticStructure, StructureDefect, StructureReport};
pub use transfer::{
    rewrite_triples, rewriting_relation, transfer, transfer_letters, triples_consistent, Transfer, Triple,
};
