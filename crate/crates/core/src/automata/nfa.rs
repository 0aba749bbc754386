use std::collections::{HashMap, VecDeque};

use super::dfa::{Dfa, StateId};
use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// One labelled edge. `decoration` records an extra symbol carried by the
/// edge, e.g. the second-tape letter of a projected two-tape automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub symbol: Symbol,
    pub target: StateId,
    pub decoration: Option<Symbol>,
}

/// A nondeterministic automaton. Parallel edges that differ only in their
/// decoration are kept apart, so runs are sequences of distinct edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    decorations: Option<Alphabet>,
    initial: Vec<StateId>,
    transitions: Vec<Vec<Transition>>,
    accepting: Vec<bool>,
    names: Vec<String>,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        decorations: Option<Alphabet>,
        names: Vec<String>,
        initial: Vec<StateId>,
        mut transitions: Vec<Vec<Transition>>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let n = names.len();
        if transitions.len() != n || accepting.len() != n {
            return Err(Error::Malformed("state tables have inconsistent sizes".into()));
        }
        if initial.iter().any(|&q| q >= n) {
            return Err(Error::Malformed("initial state out of range".into()));
        }
        for edges in &mut transitions {
            for t in edges.iter() {
                if t.target >= n || !alphabet.contains(t.symbol) {
                    return Err(Error::Malformed("transition out of range".into()));
                }
                match (&decorations, t.decoration) {
                    (Some(d), Some(x)) if d.contains(x) => {}
                    (None, None) => {}
                    _ => return Err(Error::Malformed("decoration outside its alphabet".into())),
                }
            }
            edges.sort();
            edges.dedup();
        }
        Ok(Nfa {
            alphabet,
            decorations,
            initial,
            transitions,
            accepting,
            names,
        })
    }

    pub fn from_dfa(dfa: &Dfa) -> Nfa {
        let k = dfa.alphabet().len();
        Nfa {
            alphabet: dfa.alphabet().clone(),
            decorations: None,
            initial: vec![dfa.initial()],
            transitions: (0..dfa.num_states())
                .map(|q| {
                    (0..k)
                        .map(|s| Transition {
                            symbol: s,
                            target: dfa.next(q, s),
                            decoration: None,
                        })
                        .collect()
                })
                .collect(),
            accepting: dfa.accepting().to_vec(),
            names: dfa.names().to_vec(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn decorations(&self) -> Option<&Alphabet> {
        self.decorations.as_ref()
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn transitions(&self, state: StateId) -> &[Transition] {
        &self.transitions[state]
    }

    pub fn is_accepting(&self, state: StateId) -> bool {
        self.accepting[state]
    }

    pub fn name(&self, state: StateId) -> &str {
        &self.names[state]
    }

    pub fn accepts(&self, word: &[Symbol]) -> Result<bool> {
        self.alphabet.check_word(word)?;
        let mut current = vec![false; self.num_states()];
        for &q in &self.initial {
            current[q] = true;
        }
        for &s in word {
            let mut next = vec![false; self.num_states()];
            for q in (0..self.num_states()).filter(|&q| current[q]) {
                for t in self.transitions[q].iter().filter(|t| t.symbol == s) {
                    next[t.target] = true;
                }
            }
            current = next;
        }
        Ok((0..self.num_states()).any(|q| current[q] && self.accepting[q]))
    }

    /// Number of distinct accepting runs (edge sequences) on `word`.
    pub fn count_accepting_runs(&self, word: &[Symbol]) -> Result<u128> {
        self.alphabet.check_word(word)?;
        let mut counts = vec![0u128; self.num_states()];
        for &q in &self.initial {
            counts[q] += 1;
        }
        for &s in word {
            let mut next = vec![0u128; self.num_states()];
            for (q, &c) in counts.iter().enumerate().filter(|(_, c)| **c > 0) {
                for t in self.transitions[q].iter().filter(|t| t.symbol == s) {
                    next[t.target] += c;
                }
            }
            counts = next;
        }
        Ok(counts
            .iter()
            .enumerate()
            .filter(|(q, _)| self.accepting[*q])
            .map(|(_, c)| c)
            .sum())
    }

    /// Restriction to useful states: reachable from an initial state and
    /// co-reachable to an accepting one. Order of surviving states is kept.
    pub fn trim(&self) -> Nfa {
        let n = self.num_states();
        let mut fwd = vec![false; n];
        let mut stack: Vec<StateId> = self.initial.clone();
        for &q in &stack {
            fwd[q] = true;
        }
        while let Some(q) = stack.pop() {
            for t in &self.transitions[q] {
                if !fwd[t.target] {
                    fwd[t.target] = true;
                    stack.push(t.target);
                }
            }
        }
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (q, edges) in self.transitions.iter().enumerate() {
            for t in edges {
                preds[t.target].push(q);
            }
        }
        let mut bwd = self.accepting.clone();
        let mut stack: Vec<StateId> = (0..n).filter(|&q| bwd[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !bwd[p] {
                    bwd[p] = true;
                    stack.push(p);
                }
            }
        }
        let keep: Vec<StateId> = (0..n).filter(|&q| fwd[q] && bwd[q]).collect();
        let mut new_id = vec![usize::MAX; n];
        for (i, &q) in keep.iter().enumerate() {
            new_id[q] = i;
        }
        Nfa {
            alphabet: self.alphabet.clone(),
            decorations: self.decorations.clone(),
            initial: self
                .initial
                .iter()
                .filter(|&&q| new_id[q] != usize::MAX)
                .map(|&q| new_id[q])
                .collect(),
            transitions: keep
                .iter()
                .map(|&q| {
                    self.transitions[q]
                        .iter()
                        .filter(|t| new_id[t.target] != usize::MAX)
                        .map(|t| Transition {
                            target: new_id[t.target],
                            ..*t
                        })
                        .collect()
                })
                .collect(),
            accepting: keep.iter().map(|&q| self.accepting[q]).collect(),
            names: keep.iter().map(|&q| self.names[q].clone()).collect(),
        }
    }

    /// Moves decorations into the input: the result reads `(symbol, decoration)`
    /// pairs over `alphabet × decorations`.
    pub fn fold_decorations(&self) -> Result<Nfa> {
        let dec = self
            .decorations
            .as_ref()
            .ok_or_else(|| Error::Malformed("automaton carries no decorations".into()))?;
        let kd = dec.len();
        Ok(Nfa {
            alphabet: self.alphabet.pairs(dec),
            decorations: None,
            initial: self.initial.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|edges| {
                    edges
                        .iter()
                        .map(|t| Transition {
                            symbol: t.symbol * kd + t.decoration.expect("decorated"),
                            target: t.target,
                            decoration: None,
                        })
                        .collect()
                })
                .collect(),
            accepting: self.accepting.clone(),
            names: self.names.clone(),
        })
    }

    /// Subset construction, ignoring decorations. The result is complete (the
    /// empty subset acts as a sink) and numbered in breadth-first order.
    pub fn determinize(&self, max_states: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let mut start = self.initial.clone();
        start.sort_unstable();
        start.dedup();
        let mut ids: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let mut subsets = vec![start.clone()];
        ids.insert(start, 0);
        let mut delta = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        let mut mark = vec![false; self.num_states()];
        while let Some(i) = queue.pop_front() {
            for s in 0..k {
                let mut next = Vec::new();
                for &q in &subsets[i] {
                    for t in self.transitions[q].iter().filter(|t| t.symbol == s) {
                        if !mark[t.target] {
                            mark[t.target] = true;
                            next.push(t.target);
                        }
                    }
                }
                for &q in &next {
                    mark[q] = false;
                }
                next.sort_unstable();
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        if id >= max_states {
                            return Err(Error::StateBudgetExceeded {
                                cap: max_states,
                                operation: "determinization",
                            });
                        }
                        ids.insert(next.clone(), id);
                        subsets.push(next);
                        queue.push_back(id);
                        id
                    }
                };
                // Rows are filled in queue order, which equals id order.
                delta.push(id);
            }
        }
        let accepting = subsets
            .iter()
            .map(|set| set.iter().any(|&q| self.accepting[q]))
            .collect();
        let names = (0..subsets.len()).map(|i| format!("S{i}")).collect();
        Ok(Dfa::from_parts(self.alphabet.clone(), names, 0, delta, accepting))
    }

    /// All accepted words of exactly `len` letters, with their decoration words
    /// for each accepting run. Exponential; intended for tests and small inputs.
    pub fn decorated_language(&self, len: usize) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        let mut stack: Vec<(StateId, Word, Word)> =
            self.initial.iter().map(|&q| (q, Vec::new(), Vec::new())).collect();
        while let Some((q, w, d)) = stack.pop() {
            if w.len() == len {
                if self.accepting[q] {
                    out.push((w, d));
                }
                continue;
            }
            for t in &self.transitions[q] {
                let mut w2 = w.clone();
                w2.push(t.symbol);
                let mut d2 = d.clone();
                if let Some(x) = t.decoration {
                    d2.push(x);
                }
                stack.push((t.target, w2, d2));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}
