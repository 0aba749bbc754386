//! Observation functions and indistinguishability relations for games
//! with imperfect information, represented by finite automata.
//!
//! An observation function is given by a Mealy machine; its observation
//! histories induce an equivalence on equal-length input histories, which
//! is recognised by a synchronous two-tape automaton. This crate converts
//! machines to relations, validates relation automata, decides whether a
//! relation has an information tree of bounded branching, and synthesizes a
//! machine for it when it does.

pub mod alphabet;
pub mod automata;
pub mod error;
pub mod io;
pub mod oracle;
pub mod relation;
pub mod structure;
pub mod synthesis;

pub use alphabet::{Alphabet, Symbol, Word};
pub use automata::{Dfa, MealyMachine, Nfa, StateId, TwoTapeDfa, WordPair};
pub use error::{Error, Result};
pub use relation::{mealy_to_relation, validate, Counterexample, ValidationReport};
pub use structure::{decide_bounded_branching, BranchingVerdict, PumpingWitness};
pub use synthesis::{synthesize_mealy, Synthesis};

/// Resource limits for the exponential constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_states: 1_000_000 }
    }
}
