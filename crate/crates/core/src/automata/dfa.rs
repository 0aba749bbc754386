use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// Index of a state inside its automaton.
pub type StateId = usize;

/// A complete deterministic automaton.
///
/// Transitions are stored row-major: the successor of `q` on `s` lives at
/// `q * |alphabet| + s`. Every state carries a display name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: StateId,
    delta: Vec<StateId>,
    accepting: Vec<bool>,
    names: Vec<String>,
}

/// Result of a product construction: the automaton plus, for each of its
/// states, the pair of factor states it stands for.
#[derive(Clone, Debug)]
pub struct Product {
    pub dfa: Dfa,
    pub pairs: Vec<(StateId, StateId)>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: StateId,
        delta: Vec<StateId>,
        accepting: Vec<bool>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Malformed("automaton has no states".into()));
        }
        if initial >= n {
            return Err(Error::Malformed(format!("initial state {initial} out of range")));
        }
        if delta.len() != n * alphabet.len() {
            return Err(Error::Malformed("transition table is not total".into()));
        }
        if let Some(&t) = delta.iter().find(|&&t| t >= n) {
            return Err(Error::Malformed(format!("transition target {t} out of range")));
        }
        if accepting.len() != n {
            return Err(Error::Malformed("accepting flags do not cover all states".into()));
        }
        Ok(Dfa {
            alphabet,
            initial,
            delta,
            accepting,
            names,
        })
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: StateId,
        delta: Vec<StateId>,
        accepting: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(delta.len(), names.len() * alphabet.len());
        Dfa {
            alphabet,
            initial,
            delta,
            accepting,
            names,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    #[inline]
    pub fn next(&self, state: StateId, symbol: Symbol) -> StateId {
        self.delta[state * self.alphabet.len() + symbol]
    }

    pub fn is_accepting(&self, state: StateId) -> bool {
        self.accepting[state]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn name(&self, state: StateId) -> &str {
        &self.names[state]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    /// Extended transition function from `state`.
    pub fn run_from(&self, state: StateId, word: &[Symbol]) -> Result<StateId> {
        self.alphabet.check_word(word)?;
        Ok(word.iter().fold(state, |q, &s| self.next(q, s)))
    }

    /// Extended transition function from the initial state.
    pub fn run(&self, word: &[Symbol]) -> Result<StateId> {
        self.run_from(self.initial, word)
    }

    pub fn accepts(&self, word: &[Symbol]) -> Result<bool> {
        Ok(self.accepting[self.run(word)?])
    }

    pub fn with_accepting(&self, accepting: Vec<bool>) -> Dfa {
        assert_eq!(accepting.len(), self.num_states());
        Dfa {
            accepting,
            ..self.clone()
        }
    }

    pub fn with_names(&self, names: Vec<String>) -> Dfa {
        assert_eq!(names.len(), self.num_states());
        Dfa {
            names,
            ..self.clone()
        }
    }

    pub fn complement(&self) -> Dfa {
        self.with_accepting(self.accepting.iter().map(|a| !a).collect())
    }

    /// States reachable from the initial state, in breadth-first discovery
    /// order (symbols expanded in alphabet order).
    pub fn bfs_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for s in 0..self.alphabet.len() {
                let t = self.next(q, s);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// Restriction to reachable states, renumbered in breadth-first order.
    pub fn reachable(&self) -> Dfa {
        let order = self.bfs_order();
        self.renumber(&order)
    }

    fn renumber(&self, order: &[StateId]) -> Dfa {
        let k = self.alphabet.len();
        let mut new_id = vec![usize::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            new_id[q] = i;
        }
        let mut delta = Vec::with_capacity(order.len() * k);
        for &q in order {
            for s in 0..k {
                delta.push(new_id[self.next(q, s)]);
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: new_id[self.initial],
            delta,
            accepting: order.iter().map(|&q| self.accepting[q]).collect(),
            names: order.iter().map(|&q| self.names[q].clone()).collect(),
        }
    }

    /// Canonical minimal automaton of the same language.
    ///
    /// Moore-style partition refinement on the reachable part, then
    /// breadth-first renumbering. Each block keeps the name of its first
    /// member in the reachable order.
    pub fn minimize(&self) -> Dfa {
        self.minimize_with_map().0
    }

    /// Like [`Dfa::minimize`], also returning for every input state its state
    /// in the result (`None` for unreachable states).
    pub fn minimize_with_map(&self) -> (Dfa, Vec<Option<StateId>>) {
        let k = self.alphabet.len();
        let order = self.bfs_order();
        let mut local = vec![usize::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            local[q] = i;
        }
        let n = order.len();
        let succ: Vec<usize> = order
            .iter()
            .flat_map(|&q| (0..k).map(move |s| (q, s)))
            .map(|(q, s)| local[self.next(q, s)])
            .collect();

        let mut block: Vec<usize> = order.iter().map(|&q| self.accepting[q] as usize).collect();
        let mut count = {
            let mut seen = HashMap::new();
            for b in block.iter_mut() {
                let len = seen.len();
                *b = *seen.entry(*b).or_insert(len);
            }
            seen.len()
        };
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::with_capacity(count * 2);
            let mut next_block = vec![0; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(block[q]);
                sig.extend((0..k).map(|s| block[succ[q * k + s]]));
                let len = ids.len();
                next_block[q] = *ids.entry(sig).or_insert(len);
            }
            let new_count = ids.len();
            block = next_block;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // Quotient in breadth-first order over blocks.
        let mut rep = vec![usize::MAX; count];
        for q in 0..n {
            if rep[block[q]] == usize::MAX {
                rep[block[q]] = q;
            }
        }
        let mut new_id = vec![usize::MAX; count];
        let mut queue = VecDeque::from([block[0]]);
        let mut blocks_in_order = vec![block[0]];
        new_id[block[0]] = 0;
        while let Some(b) = queue.pop_front() {
            let q = rep[b];
            for s in 0..k {
                let t = block[succ[q * k + s]];
                if new_id[t] == usize::MAX {
                    new_id[t] = blocks_in_order.len();
                    blocks_in_order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut delta = Vec::with_capacity(count * k);
        for &b in &blocks_in_order {
            let q = rep[b];
            for s in 0..k {
                delta.push(new_id[block[succ[q * k + s]]]);
            }
        }
        let dfa = Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            delta,
            accepting: blocks_in_order
                .iter()
                .map(|&b| self.accepting[order[rep[b]]])
                .collect(),
            names: blocks_in_order
                .iter()
                .map(|&b| self.names[order[rep[b]]].clone())
                .collect(),
        };
        let map = (0..self.num_states())
            .map(|q| (local[q] != usize::MAX).then(|| new_id[block[local[q]]]))
            .collect();
        (dfa, map)
    }

    fn product_by(
        alphabet: Alphabet,
        sizes: (usize, usize),
        initial: (StateId, StateId),
        step: impl Fn(StateId, StateId, Symbol) -> (StateId, StateId),
        accept: impl Fn(StateId, StateId) -> bool,
        name: impl Fn(StateId, StateId) -> String,
    ) -> Product {
        let k = alphabet.len();
        let (n1, n2) = sizes;
        let key = |p: (usize, usize)| p.0 * n2 + p.1;
        let mut id = vec![usize::MAX; n1 * n2];
        let mut pairs = vec![initial];
        id[key(initial)] = 0;
        let mut head = 0;
        while head < pairs.len() {
            let (p, q) = pairs[head];
            head += 1;
            for s in 0..k {
                let t = step(p, q, s);
                if id[key(t)] == usize::MAX {
                    id[key(t)] = pairs.len();
                    pairs.push(t);
                }
            }
        }
        for p in 0..n1 {
            for q in 0..n2 {
                if id[key((p, q))] == usize::MAX {
                    id[key((p, q))] = pairs.len();
                    pairs.push((p, q));
                }
            }
        }
        let mut delta = Vec::with_capacity(pairs.len() * k);
        for &(p, q) in &pairs {
            for s in 0..k {
                delta.push(id[key(step(p, q, s))]);
            }
        }
        let dfa = Dfa {
            alphabet,
            initial: 0,
            delta,
            accepting: pairs.iter().map(|&(p, q)| accept(p, q)).collect(),
            names: pairs.iter().map(|&(p, q)| name(p, q)).collect(),
        };
        Product { dfa, pairs }
    }

    /// Both automata read the same symbol. The result contains every pair of
    /// states; reachable pairs come first in breadth-first order.
    pub fn synchronised_product(
        &self,
        other: &Dfa,
        accept: impl Fn(bool, bool) -> bool,
    ) -> Result<Product> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(Self::product_by(
            self.alphabet.clone(),
            (self.num_states(), other.num_states()),
            (self.initial, other.initial),
            |p, q, s| (self.next(p, s), other.next(q, s)),
            |p, q| accept(self.accepting[p], other.accepting[q]),
            |p, q| format!("({},{})", self.names[p], other.names[q]),
        ))
    }

    /// The two automata run on separate tapes; the result reads pair symbols
    /// over `self.alphabet × other.alphabet`.
    pub fn parallel_product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Product {
        let k2 = other.alphabet.len();
        Self::product_by(
            self.alphabet.pairs(&other.alphabet),
            (self.num_states(), other.num_states()),
            (self.initial, other.initial),
            |p, q, s| (self.next(p, s / k2), other.next(q, s % k2)),
            |p, q| accept(self.accepting[p], other.accepting[q]),
            |p, q| format!("({},{})", self.names[p], other.names[q]),
        )
    }

    /// Shortest (then lexicographically least) word accepted by exactly one
    /// of the two automata, or `None` if they are equivalent.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Word>> {
        let product = self.synchronised_product(other, |a, b| a != b)?;
        Ok(crate::automata::witness::least_word(
            &product.dfa,
            |q| product.dfa.is_accepting(q),
            1,
            &[0],
        ))
    }

    pub fn language_equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.distinguishing_word(other)?.is_none())
    }
}

/// Explores the reachable part of an implicit deterministic automaton whose
/// states are values of `K`, numbering them in breadth-first order.
pub(crate) fn explore<K>(
    alphabet: Alphabet,
    initial: K,
    step: impl Fn(&K, Symbol) -> K,
    accept: impl Fn(&K) -> bool,
    name: impl Fn(&K) -> String,
    max_states: usize,
    operation: &'static str,
) -> Result<(Dfa, Vec<K>)>
where
    K: Clone + Eq + std::hash::Hash,
{
    let k = alphabet.len();
    let mut ids: HashMap<K, StateId> = HashMap::new();
    ids.insert(initial.clone(), 0);
    let mut keys = vec![initial];
    let mut delta = Vec::new();
    let mut head = 0;
    while head < keys.len() {
        for s in 0..k {
            let t = step(&keys[head], s);
            let id = match ids.get(&t) {
                Some(&id) => id,
                None => {
                    let id = keys.len();
                    if id >= max_states {
                        return Err(Error::StateBudgetExceeded {
                            cap: max_states,
                            operation,
                        });
                    }
                    ids.insert(t.clone(), id);
                    keys.push(t);
                    id
                }
            };
            delta.push(id);
        }
        head += 1;
    }
    let dfa = Dfa {
        alphabet,
        initial: 0,
        delta,
        accepting: keys.iter().map(&accept).collect(),
        names: keys.iter().map(&name).collect(),
    };
    Ok((dfa, keys))
}

/// Incremental construction of a possibly partial transition table.
#[derive(Clone, Debug)]
pub struct DfaBuilder {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: StateId,
    delta: Vec<Option<StateId>>,
    accepting: Vec<bool>,
}

/// A missing transition in a partial automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hole {
    pub state: StateId,
    pub symbol: Symbol,
}

impl DfaBuilder {
    pub fn new(alphabet: Alphabet, names: Vec<String>) -> Self {
        let n = names.len();
        DfaBuilder {
            delta: vec![None; n * alphabet.len()],
            accepting: vec![false; n],
            initial: 0,
            alphabet,
            names,
        }
    }

    pub fn set_initial(&mut self, state: StateId) {
        self.initial = state;
    }

    pub fn set_accepting(&mut self, state: StateId, accepting: bool) {
        self.accepting[state] = accepting;
    }

    /// Adds a transition; returns the previous target if one was already set.
    pub fn set(&mut self, state: StateId, symbol: Symbol, target: StateId) -> Option<StateId> {
        self.delta[state * self.alphabet.len() + symbol].replace(target)
    }

    pub fn get(&self, state: StateId, symbol: Symbol) -> Option<StateId> {
        self.delta[state * self.alphabet.len() + symbol]
    }

    pub fn holes(&self) -> Vec<Hole> {
        let k = self.alphabet.len();
        self.delta
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_none())
            .map(|(i, _)| Hole {
                state: i / k,
                symbol: i % k,
            })
            .collect()
    }

    /// Builds the automaton; fails on the first missing transition.
    pub fn build(self) -> std::result::Result<Dfa, Hole> {
        if let Some(h) = self.holes().into_iter().next() {
            return Err(h);
        }
        Ok(Dfa {
            delta: self.delta.into_iter().map(Option::unwrap).collect(),
            alphabet: self.alphabet,
            initial: self.initial,
            accepting: self.accepting,
            names: self.names,
        })
    }

    /// Routes every missing transition to one fresh non-accepting sink.
    /// Leaves the automaton unchanged when it is already total.
    pub fn complete_to_sink(mut self) -> Dfa {
        if self.holes().is_empty() {
            return self.build().expect("no holes");
        }
        let sink = self.names.len();
        let mut name = "sink".to_string();
        while self.names.contains(&name) {
            name.push('\'');
        }
        self.names.push(name);
        self.accepting.push(false);
        self.delta.extend(std::iter::repeat_n(Some(sink), self.alphabet.len()));
        for t in self.delta.iter_mut() {
            t.get_or_insert(sink);
        }
        self.build().expect("completed")
    }
}
