pub mod dot;
pub mod format;

pub use dot::export_dot;
pub use format::{parse, parse_mealy, parse_relation, serialize, Automaton, ParseOptions};
