use std::collections::{HashMap, VecDeque};

use super::dfa::{Dfa, StateId};
use super::nfa::{Nfa, Transition};
use super::witness::least_word;
use crate::alphabet::{unzip_pair, zip_pair, Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// A synchronous two-tape automaton: a DFA over `Γ × Γ`, where the pair
/// `(a, b)` has index `a * |Γ| + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTapeDfa {
    base: Alphabet,
    dfa: Dfa,
}

/// A pair of equal-length histories.
pub type WordPair = (Word, Word);

impl TwoTapeDfa {
    pub fn new(base: Alphabet, dfa: Dfa) -> Result<Self> {
        if dfa.alphabet() != &base.pairs(&base) {
            return Err(Error::AlphabetMismatch(format!(
                "two-tape automaton must read {} × {}",
                base, base
            )));
        }
        Ok(TwoTapeDfa { base, dfa })
    }

    pub(crate) fn wrap(base: &Alphabet, dfa: Dfa) -> Self {
        debug_assert_eq!(dfa.alphabet(), &base.pairs(base));
        TwoTapeDfa {
            base: base.clone(),
            dfa,
        }
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn into_dfa(self) -> Dfa {
        self.dfa
    }

    pub fn num_states(&self) -> usize {
        self.dfa.num_states()
    }

    pub fn initial(&self) -> StateId {
        self.dfa.initial()
    }

    pub fn name(&self, state: StateId) -> &str {
        self.dfa.name(state)
    }

    pub fn is_accepting(&self, state: StateId) -> bool {
        self.dfa.is_accepting(state)
    }

    #[inline]
    pub fn pair(&self, a: Symbol, b: Symbol) -> Symbol {
        a * self.base.len() + b
    }

    #[inline]
    pub fn step(&self, state: StateId, a: Symbol, b: Symbol) -> StateId {
        self.dfa.next(state, self.pair(a, b))
    }

    pub fn run_pair_from(&self, state: StateId, first: &[Symbol], second: &[Symbol]) -> Result<StateId> {
        self.base.check_word(first)?;
        self.base.check_word(second)?;
        let w = zip_pair(self.base.len(), first, second)?;
        self.dfa.run_from(state, &w)
    }

    pub fn run_pair(&self, first: &[Symbol], second: &[Symbol]) -> Result<StateId> {
        self.run_pair_from(self.initial(), first, second)
    }

    pub fn accepts(&self, first: &[Symbol], second: &[Symbol]) -> Result<bool> {
        Ok(self.dfa.is_accepting(self.run_pair(first, second)?))
    }

    /// The first non-accepting state all of whose transitions are self-loops.
    pub fn reject_sink(&self) -> Option<StateId> {
        let k = self.dfa.alphabet().len();
        (0..self.num_states())
            .find(|&q| !self.dfa.is_accepting(q) && (0..k).all(|s| self.dfa.next(q, s) == q))
    }

    pub fn complement(&self) -> TwoTapeDfa {
        TwoTapeDfa::wrap(&self.base, self.dfa.complement())
    }

    pub fn minimize(&self) -> TwoTapeDfa {
        TwoTapeDfa::wrap(&self.base, self.dfa.minimize())
    }

    pub fn with_accepting(&self, accepting: Vec<bool>) -> TwoTapeDfa {
        TwoTapeDfa::wrap(&self.base, self.dfa.with_accepting(accepting))
    }

    /// Swaps the two tapes.
    pub fn transpose(&self) -> TwoTapeDfa {
        let k = self.base.len();
        let n = self.num_states();
        let mut delta = Vec::with_capacity(n * k * k);
        for q in 0..n {
            for a in 0..k {
                for b in 0..k {
                    delta.push(self.step(q, b, a));
                }
            }
        }
        let dfa = Dfa::from_parts(
            self.dfa.alphabet().clone(),
            self.dfa.names().to_vec(),
            self.initial(),
            delta,
            self.dfa.accepting().to_vec(),
        );
        TwoTapeDfa::wrap(&self.base, dfa)
    }

    fn project(&self, keep_first: bool) -> Nfa {
        let k = self.base.len();
        let transitions = (0..self.num_states())
            .map(|q| {
                let mut edges = Vec::with_capacity(k * k);
                for a in 0..k {
                    for b in 0..k {
                        let (symbol, decoration) = if keep_first { (a, b) } else { (b, a) };
                        edges.push(Transition {
                            symbol,
                            target: self.step(q, a, b),
                            decoration: Some(decoration),
                        });
                    }
                }
                edges
            })
            .collect();
        Nfa::new(
            self.base.clone(),
            Some(self.base.clone()),
            self.dfa.names().to_vec(),
            vec![self.initial()],
            transitions,
            self.dfa.accepting().to_vec(),
        )
        .expect("projection is well-formed")
    }

    /// Projection onto the first tape; edges carry the second-tape letter.
    pub fn project_first(&self) -> Nfa {
        self.project(true)
    }

    /// Projection onto the second tape; edges carry the first-tape letter.
    pub fn project_second(&self) -> Nfa {
        self.project(false)
    }

    /// Relational composition: `(τ, π)` is accepted iff some `ρ` has
    /// `(τ, ρ) ∈ L(self)` and `(ρ, π) ∈ L(other)`.
    pub fn compose(&self, other: &TwoTapeDfa, max_states: usize) -> Result<TwoTapeDfa> {
        if self.base != other.base {
            return Err(Error::AlphabetMismatch(format!("{} vs {}", self.base, other.base)));
        }
        let k = self.base.len();
        let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
        let mut pairs = vec![(self.initial(), other.initial())];
        ids.insert(pairs[0], 0);
        let mut transitions: Vec<Vec<Transition>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (p, q) = pairs[i];
            let mut edges = Vec::new();
            for a in 0..k {
                for c in 0..k {
                    for b in 0..k {
                        let t = (self.step(p, a, b), other.step(q, b, c));
                        let id = *ids.entry(t).or_insert_with(|| {
                            pairs.push(t);
                            queue.push_back(pairs.len() - 1);
                            pairs.len() - 1
                        });
                        if pairs.len() > max_states {
                            return Err(Error::StateBudgetExceeded {
                                cap: max_states,
                                operation: "composition",
                            });
                        }
                        edges.push(Transition {
                            symbol: a * k + c,
                            target: id,
                            decoration: None,
                        });
                    }
                }
            }
            if transitions.len() <= i {
                transitions.resize(i + 1, Vec::new());
            }
            transitions[i] = edges;
        }
        transitions.resize(pairs.len(), Vec::new());
        let nfa = Nfa::new(
            self.dfa.alphabet().clone(),
            None,
            pairs.iter().map(|(p, q)| format!("({},{})", self.name(*p), other.name(*q))).collect(),
            vec![0],
            transitions,
            pairs
                .iter()
                .map(|&(p, q)| self.is_accepting(p) && other.is_accepting(q))
                .collect(),
        )?;
        Ok(TwoTapeDfa::wrap(&self.base, nfa.determinize(max_states)?))
    }

    /// Shortest pair accepted by exactly one automaton; ties broken by the
    /// first tape, then the second.
    pub fn distinguishing_pair(&self, other: &TwoTapeDfa) -> Result<Option<WordPair>> {
        let product = self.dfa.synchronised_product(&other.dfa, |a, b| a != b)?;
        Ok(least_word(&product.dfa, |q| product.dfa.is_accepting(q), 2, &[0, 1])
            .map(|w| unzip_pair(self.base.len(), &w)))
    }

    pub fn language_equivalent(&self, other: &TwoTapeDfa) -> Result<bool> {
        self.dfa.language_equivalent(&other.dfa)
    }

    pub fn format_pair(&self, pair: &WordPair) -> String {
        format!(
            "({}, {})",
            self.base.format_word(&pair.0),
            self.base.format_word(&pair.1)
        )
    }
}
