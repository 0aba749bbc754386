use super::dfa::{Dfa, StateId};
use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// Deterministic transducer emitting one output symbol per input symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyMachine {
    input: Alphabet,
    output: Alphabet,
    initial: StateId,
    delta: Vec<StateId>,
    out: Vec<Symbol>,
    names: Vec<String>,
}

impl MealyMachine {
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        names: Vec<String>,
        initial: StateId,
        delta: Vec<StateId>,
        out: Vec<Symbol>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Malformed("machine has no states".into()));
        }
        if initial >= n {
            return Err(Error::Malformed("initial state out of range".into()));
        }
        if delta.len() != n * input.len() || out.len() != delta.len() {
            return Err(Error::Malformed(
                "transition and output functions must be total on states × inputs".into(),
            ));
        }
        if delta.iter().any(|&t| t >= n) {
            return Err(Error::Malformed("transition target out of range".into()));
        }
        if out.iter().any(|&o| !output.contains(o)) {
            return Err(Error::Malformed("output symbol out of range".into()));
        }
        Ok(MealyMachine {
            input,
            output,
            initial,
            delta,
            out,
            names,
        })
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn name(&self, state: StateId) -> &str {
        &self.names[state]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn next(&self, state: StateId, symbol: Symbol) -> StateId {
        self.delta[state * self.input.len() + symbol]
    }

    #[inline]
    pub fn output_of(&self, state: StateId, symbol: Symbol) -> Symbol {
        self.out[state * self.input.len() + symbol]
    }

    /// Observation history of `word`: one output per step. The empty word
    /// maps to the empty sequence.
    pub fn observe(&self, word: &[Symbol]) -> Result<Word> {
        self.input.check_word(word)?;
        let mut q = self.initial;
        Ok(word
            .iter()
            .map(|&s| {
                let o = self.output_of(q, s);
                q = self.next(q, s);
                o
            })
            .collect())
    }

    /// Observation history of a nonempty word.
    pub fn observation_history(&self, word: &[Symbol]) -> Result<Word> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        self.observe(word)
    }

    /// The underlying semi-automaton, every state accepting.
    pub fn semi_automaton(&self) -> Dfa {
        Dfa::from_parts(
            self.input.clone(),
            self.names.clone(),
            self.initial,
            self.delta.clone(),
            vec![true; self.num_states()],
        )
    }

    /// Same machine with outputs renamed through `output`; `out` indices are kept.
    pub fn with_output_alphabet(&self, output: Alphabet) -> Result<Self> {
        MealyMachine::new(
            self.input.clone(),
            output,
            self.names.clone(),
            self.initial,
            self.delta.clone(),
            self.out.clone(),
        )
    }
}
