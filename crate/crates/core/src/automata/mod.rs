//! Deterministic and nondeterministic automata, transducers and two-tape
//! automata, with the products and normal forms used throughout the crate.

pub mod dfa;
pub mod mealy;
pub mod nfa;
pub mod two_tape;
pub mod witness;

pub use dfa::{Dfa, DfaBuilder, Hole, Product, StateId};
pub use mealy::MealyMachine;
pub use nfa::{Nfa, Transition};
pub use two_tape::{TwoTapeDfa, WordPair};
