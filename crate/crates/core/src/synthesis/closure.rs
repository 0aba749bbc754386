//! The deterministic automaton over matrix-index states.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Symbol};
use crate::automata::{Dfa, StateId, TwoTapeDfa};
use crate::error::{Error, Result};
use crate::Limits;

use super::matrix::{successor, transform, MatrixIndexState};

/// Reachable matrix-index states in breadth-first order, with the
/// successor function as a transition table.
#[derive(Clone, Debug)]
pub struct ClosureAutomaton {
    input: Alphabet,
    states: Vec<MatrixIndexState>,
    delta: Vec<StateId>,
}

/// Builds the closure of the initial state `([q_I], 1)` under
/// [`successor`]. `r` must be minimal and valid with bounded branching,
/// otherwise the exploration stops at the state budget.
pub fn build_closure(r: &TwoTapeDfa, limits: &Limits) -> Result<ClosureAutomaton> {
    let k = r.base().len();
    let start = MatrixIndexState::initial(r);
    let mut ids: HashMap<MatrixIndexState, StateId> = HashMap::new();
    let mut states = vec![start.clone()];
    ids.insert(start, 0);
    let mut delta = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(p) = queue.pop_front() {
        for c in 0..k {
            let next = successor(&states[p].matrix, states[p].column, c, r);
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= limits.max_states {
                        return Err(Error::StateBudgetExceeded {
                            cap: limits.max_states,
                            operation: "closure construction",
                        });
                    }
                    let id = states.len();
                    ids.insert(next.clone(), id);
                    states.push(next);
                    queue.push_back(id);
                    id
                }
            };
            // BFS order guarantees rows are filled in state order.
            debug_assert_eq!(delta.len(), p * k + c);
            delta.push(id);
        }
    }
    Ok(ClosureAutomaton {
        input: r.base().clone(),
        states,
        delta,
    })
}

impl ClosureAutomaton {
    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, p: StateId) -> &MatrixIndexState {
        &self.states[p]
    }

    pub fn states(&self) -> &[MatrixIndexState] {
        &self.states
    }

    pub fn next(&self, p: StateId, c: Symbol) -> StateId {
        self.delta[p * self.input.len() + c]
    }

    pub fn run(&self, word: &[Symbol]) -> StateId {
        word.iter().fold(0, |p, &c| self.next(p, c))
    }

    /// Largest matrix dimension, i.e. the most interchangeability classes
    /// met in one information set.
    pub fn max_dimension(&self) -> usize {
        self.states.iter().map(|s| s.matrix.dim()).max().unwrap_or(0)
    }

    /// Largest number of children of an information set: the number of
    /// indistinguishability classes among the rows of the transformed
    /// matrix, maximised over all reachable matrices.
    pub fn branching_bound(&self, r: &TwoTapeDfa) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut best = 0;
        for s in &self.states {
            if !seen.insert(&s.matrix) {
                continue;
            }
            let t = transform(&s.matrix, r);
            let mut reps: Vec<usize> = Vec::new();
            for u in 0..t.dim() {
                if !reps.iter().any(|&v| r.is_accepting(t.get(v, u))) {
                    reps.push(u);
                }
            }
            best = best.max(reps.len());
        }
        best
    }

    /// The closure as a DFA with every state accepting.
    pub fn semi_automaton(&self, names: Vec<String>) -> Dfa {
        let n = self.states.len();
        Dfa::from_parts(self.input.clone(), names, 0, self.delta.clone(), vec![true; n])
    }
}
