//! Structure of minimal relation automata: the reflexive/ambiguous state
//! partition, interchangeable histories, lexicographic representatives, and
//! the decision whether the information tree has bounded branching.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::automata::dfa::explore;
use crate::automata::{Dfa, Nfa, StateId, TwoTapeDfa};
use crate::error::{Error, Result};
use crate::synthesis::closure::build_closure;
use crate::Limits;

/// Reflexive states are reached from the initial state on diagonal pairs;
/// ambiguous states reach a rejecting state on diagonal pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateClassification {
    reflexive: Vec<bool>,
    ambiguous: Vec<bool>,
}

impl StateClassification {
    pub fn is_reflexive(&self, q: StateId) -> bool {
        self.reflexive[q]
    }

    pub fn is_ambiguous(&self, q: StateId) -> bool {
        self.ambiguous[q]
    }

    pub fn reflexive_states(&self) -> Vec<StateId> {
        (0..self.reflexive.len()).filter(|&q| self.reflexive[q]).collect()
    }

    pub fn ambiguous_states(&self) -> Vec<StateId> {
        (0..self.ambiguous.len()).filter(|&q| self.ambiguous[q]).collect()
    }
}

/// Classifies the states of `r`, which must be minimal and valid. Fails if
/// the two classes do not partition the state set.
pub fn classify_states(r: &TwoTapeDfa) -> Result<StateClassification> {
    let n = r.num_states();
    let k = r.base().len();
    let mut reflexive = vec![false; n];
    reflexive[r.initial()] = true;
    let mut stack = vec![r.initial()];
    while let Some(q) = stack.pop() {
        for a in 0..k {
            let t = r.step(q, a, a);
            if !reflexive[t] {
                reflexive[t] = true;
                stack.push(t);
            }
        }
    }

    let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for q in 0..n {
        for a in 0..k {
            preds[r.step(q, a, a)].push(q);
        }
    }
    let mut ambiguous: Vec<bool> = (0..n).map(|q| !r.is_accepting(q)).collect();
    let mut stack: Vec<StateId> = (0..n).filter(|&q| ambiguous[q]).collect();
    while let Some(q) = stack.pop() {
        for &p in &preds[q] {
            if !ambiguous[p] {
                ambiguous[p] = true;
                stack.push(p);
            }
        }
    }

    for q in 0..n {
        let problem = match (reflexive[q], ambiguous[q]) {
            (true, true) => "both reflexive and ambiguous",
            (false, false) => "neither reflexive nor ambiguous",
            _ => continue,
        };
        return Err(Error::PartitionViolation {
            state: r.name(q).to_string(),
            problem,
        });
    }
    Ok(StateClassification {
        reflexive,
        ambiguous,
    })
}

/// Whether two equal-length histories are interchangeable, i.e. the pair
/// leads to a reflexive state of the minimal automaton.
pub fn interchangeable(
    r: &TwoTapeDfa,
    classification: &StateClassification,
    first: &[Symbol],
    second: &[Symbol],
) -> Result<bool> {
    Ok(classification.is_reflexive(r.run_pair(first, second)?))
}

/// Synchronous lexicographic order on equal-length words: accepts
/// `(τ, τ')` with `τ ≤ τ'` (`τ < τ'` when `strict`).
pub fn lex_order_dfa(alphabet: &Alphabet, strict: bool) -> TwoTapeDfa {
    let k = alphabet.len();
    // 0: equal so far, 1: first smaller, 2: first larger
    let mut delta = Vec::with_capacity(3 * k * k);
    for state in 0..3 {
        for a in 0..k {
            for b in 0..k {
                delta.push(match state {
                    0 if a < b => 1,
                    0 if a > b => 2,
                    s => s,
                });
            }
        }
    }
    let dfa = Dfa::new(
        alphabet.pairs(alphabet),
        vec!["eq".into(), "lt".into(), "gt".into()],
        0,
        delta,
        vec![!strict, true, false],
    )
    .expect("well-formed");
    TwoTapeDfa::wrap(alphabet, dfa)
}

/// Recognises the lexicographically least member of every class of
/// interchangeable histories.
pub fn representatives_dfa(
    r: &TwoTapeDfa,
    classification: &StateClassification,
    limits: &Limits,
) -> Result<Dfa> {
    let interchange = r.with_accepting(
        (0..r.num_states())
            .map(|q| classification.is_reflexive(q))
            .collect(),
    );
    let lex = lex_order_dfa(r.base(), true);
    let below = interchange
        .dfa()
        .synchronised_product(lex.dfa(), |a, b| a && b)?;
    let below = TwoTapeDfa::wrap(r.base(), below.dfa.reachable());
    // Second-tape words that have a strictly smaller interchangeable partner.
    let dominated = below.project_second().determinize(limits.max_states)?;
    Ok(dominated.complement().minimize())
}

/// Pairs `(τ, ρ)` with `τ ∼ ρ` and `ρ` a representative.
pub fn representation_relation(r: &TwoTapeDfa, representatives: &Dfa, limits: &Limits) -> Result<TwoTapeDfa> {
    let k = r.base().len();
    let (dfa, _) = explore(
        r.dfa().alphabet().clone(),
        (r.initial(), representatives.initial()),
        |&(q, s), sym| (r.dfa().next(q, sym), representatives.next(s, sym % k)),
        |&(q, s)| r.is_accepting(q) && representatives.is_accepting(s),
        |&(q, s)| format!("({},{})", r.name(q), representatives.name(s)),
        limits.max_states,
        "representation relation",
    )?;
    Ok(TwoTapeDfa::wrap(r.base(), dfa))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PumpingKind {
    /// Runs `p -v-> p`, `p -v-> q`, `q -v-> q` with `p ≠ q`.
    Diverging,
    /// Two distinct runs `p -v-> p`.
    Branching,
}

/// Evidence of infinite ambiguity of the decision automaton: after `prefix`
/// reaches `p`, repeating `cycle` multiplies runs, and `suffix` leads from
/// `q` to acceptance. States are those of the decision automaton, whose
/// names refer to states of the minimized relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpingWitness {
    pub kind: PumpingKind,
    pub p: StateId,
    pub q: StateId,
    pub p_name: String,
    pub q_name: String,
    pub prefix: Word,
    pub cycle: Word,
    pub suffix: Word,
    pub alphabet: Alphabet,
}

impl PumpingWitness {
    /// Checks the witness runs on `n` by explicit run counting.
    pub fn replays_in(&self, n: &Nfa) -> bool {
        let reach = |from: StateId, word: &[Symbol]| -> Vec<u128> {
            let mut counts = vec![0u128; n.num_states()];
            counts[from] = 1;
            for &s in word {
                let mut next = vec![0u128; n.num_states()];
                for (q, &c) in counts.iter().enumerate().filter(|(_, c)| **c > 0) {
                    for t in n.transitions(q).iter().filter(|t| t.symbol == s) {
                        next[t.target] = next[t.target].saturating_add(c);
                    }
                }
                counts = next;
            }
            counts
        };
        if self.cycle.is_empty() || self.p >= n.num_states() || self.q >= n.num_states() {
            return false;
        }
        let reaches_p = n.initial().iter().any(|&i| reach(i, &self.prefix)[self.p] > 0);
        let accepts = reach(self.q, &self.suffix)
            .iter()
            .enumerate()
            .any(|(s, &c)| c > 0 && n.is_accepting(s));
        let from_p = reach(self.p, &self.cycle);
        let loops = match self.kind {
            PumpingKind::Diverging => {
                self.p != self.q
                    && from_p[self.p] > 0
                    && from_p[self.q] > 0
                    && reach(self.q, &self.cycle)[self.q] > 0
            }
            PumpingKind::Branching => self.p == self.q && from_p[self.p] >= 2,
        };
        reaches_p && accepts && loops
    }

    /// The history `prefix · cycle^e · suffix`.
    pub fn pumped(&self, e: usize) -> Word {
        let mut w = self.prefix.clone();
        for _ in 0..e {
            w.extend_from_slice(&self.cycle);
        }
        w.extend_from_slice(&self.suffix);
        w
    }
}

impl fmt::Display for PumpingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = |x: &Word| self.alphabet.format_word(x);
        match self.kind {
            PumpingKind::Diverging => write!(
                f,
                "pumping witness: cycle {} loops on {} and on {} and leads from {} to {}; prefix {}, suffix {}",
                w(&self.cycle),
                self.p_name,
                self.q_name,
                self.p_name,
                self.q_name,
                w(&self.prefix),
                w(&self.suffix)
            ),
            PumpingKind::Branching => write!(
                f,
                "pumping witness: cycle {} has two distinct loops on {}; prefix {}, suffix {}",
                w(&self.cycle),
                self.p_name,
                w(&self.prefix),
                w(&self.suffix)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchingVerdict {
    /// `bound` is the largest branching degree of the information tree;
    /// `max_clique` the largest number of interchangeability classes inside
    /// one information set.
    Bounded { bound: usize, max_clique: usize },
    Unbounded { witness: Box<PumpingWitness> },
}

impl BranchingVerdict {
    pub fn is_bounded(&self) -> bool {
        matches!(self, BranchingVerdict::Bounded { .. })
    }
}

/// Intermediate objects of the boundedness decision.
#[derive(Clone, Debug)]
pub struct BranchingAnalysis {
    pub minimal: TwoTapeDfa,
    /// For every state of the input, its state in `minimal`.
    pub state_map: Vec<Option<StateId>>,
    pub classification: StateClassification,
    pub representatives: Dfa,
    pub representation: TwoTapeDfa,
    /// Trimmed first-tape projection of `representation`; its accepting runs
    /// on `τ` correspond one-to-one to representatives related to `τ`.
    pub decision: Nfa,
    pub verdict: BranchingVerdict,
}

fn shortest_path(n: &Nfa, sources: &[StateId], target: impl Fn(StateId) -> bool) -> Option<Word> {
    let mut parent: Vec<Option<(StateId, Symbol)>> = vec![None; n.num_states()];
    let mut seen = vec![false; n.num_states()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    let k = n.alphabet().len();
    while let Some(q) = queue.pop_front() {
        if target(q) {
            let mut w = Vec::new();
            let mut cur = q;
            while let Some((p, s)) = parent[cur] {
                w.push(s);
                cur = p;
            }
            w.reverse();
            return Some(w);
        }
        for s in 0..k {
            for t in n.transitions(q).iter().filter(|t| t.symbol == s) {
                if !seen[t.target] {
                    seen[t.target] = true;
                    parent[t.target] = Some((q, s));
                    queue.push_back(t.target);
                }
            }
        }
    }
    None
}

/// Successor sets per state and symbol, duplicates removed.
fn successor_table(n: &Nfa) -> Vec<Vec<Vec<StateId>>> {
    let k = n.alphabet().len();
    (0..n.num_states())
        .map(|q| {
            let mut row = vec![Vec::new(); k];
            for t in n.transitions(q) {
                row[t.symbol].push(t.target);
            }
            for v in row.iter_mut() {
                v.sort_unstable();
                v.dedup();
            }
            row
        })
        .collect()
}

/// Breadth-first search over tuples for the shortlex-least nonempty word
/// leading from `start` to `goal`.
fn tuple_search<K: Clone + Eq + std::hash::Hash>(
    k: usize,
    start: K,
    goal: &K,
    successors: impl Fn(&K, Symbol) -> Vec<K>,
) -> Option<Word> {
    let mut parent: HashMap<K, Option<(K, Symbol)>> = HashMap::new();
    let mut queue = VecDeque::new();
    // The start node is only a goal after a nonempty word, so it is not
    // marked as visited until it is reached again.
    for s in 0..k {
        for t in successors(&start, s) {
            if !parent.contains_key(&t) {
                parent.insert(t.clone(), Some((start.clone(), s)));
                queue.push_back(t);
            }
        }
    }
    let rebuild = |parent: &HashMap<K, Option<(K, Symbol)>>, mut cur: K| {
        let mut w = Vec::new();
        while let Some((p, s)) = parent.get(&cur).cloned().flatten() {
            w.push(s);
            if p == start {
                break;
            }
            cur = p;
        }
        w.reverse();
        w
    };
    while let Some(x) = queue.pop_front() {
        if &x == goal {
            return Some(rebuild(&parent, x));
        }
        for s in 0..k {
            for t in successors(&x, s) {
                if !parent.contains_key(&t) {
                    parent.insert(t.clone(), Some((x.clone(), s)));
                    queue.push_back(t);
                }
            }
        }
    }
    None
}

/// Searches the trimmed decision automaton for a pumping pattern. Returns
/// the witness with the shortest, then lexicographically least, cycle.
pub fn find_pumping_witness(n: &Nfa) -> Option<PumpingWitness> {
    let size = n.num_states();
    let k = n.alphabet().len();
    let succ = successor_table(n);
    let mut best: Option<(Word, PumpingKind, StateId, StateId)> = None;
    let consider = |cycle: Word, kind, p, q, best: &mut Option<(Word, PumpingKind, StateId, StateId)>| {
        let better = match best {
            None => true,
            Some((c, ..)) => (cycle.len(), &cycle) < (c.len(), c),
        };
        if better {
            *best = Some((cycle, kind, p, q));
        }
    };

    // Pair graph reachability, used to prune the triple searches.
    let pair_succ = |&(x, y): &(StateId, StateId), s: Symbol| -> Vec<(StateId, StateId)> {
        let mut out = Vec::new();
        for &a in &succ[x][s] {
            for &b in &succ[y][s] {
                out.push((a, b));
            }
        }
        out
    };
    for p in 0..size {
        // Pairs (p, q) reachable from (p, p) by a nonempty word.
        let mut seen = vec![false; size * size];
        let mut queue = VecDeque::new();
        for s in 0..k {
            for t in pair_succ(&(p, p), s) {
                if !seen[t.0 * size + t.1] {
                    seen[t.0 * size + t.1] = true;
                    queue.push_back(t);
                }
            }
        }
        while let Some(x) = queue.pop_front() {
            for s in 0..k {
                for t in pair_succ(&x, s) {
                    if !seen[t.0 * size + t.1] {
                        seen[t.0 * size + t.1] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        for q in (0..size).filter(|&q| q != p && seen[p * size + q]) {
            let found = tuple_search(k, (p, p, q), &(p, q, q), |&(x, y, z), s| {
                let mut out = Vec::new();
                for &a in &succ[x][s] {
                    for &b in &succ[y][s] {
                        for &c in &succ[z][s] {
                            out.push((a, b, c));
                        }
                    }
                }
                out
            });
            if let Some(cycle) = found {
                consider(cycle, PumpingKind::Diverging, p, q, &mut best);
            }
        }

        // Two distinct edge sequences from p back to p.
        let found = tuple_search(k, (p, p, false), &(p, p, true), |&(x, y, split), s| {
            let mut out = Vec::new();
            for t1 in n.transitions(x).iter().filter(|t| t.symbol == s) {
                for t2 in n.transitions(y).iter().filter(|t| t.symbol == s) {
                    out.push((t1.target, t2.target, split || t1 != t2));
                }
            }
            out
        });
        if let Some(cycle) = found {
            consider(cycle, PumpingKind::Branching, p, p, &mut best);
        }
    }

    let (cycle, kind, p, q) = best?;
    let prefix = shortest_path(n, n.initial(), |s| s == p).expect("trimmed: p is reachable");
    let suffix = shortest_path(n, &[q], |s| n.is_accepting(s)).expect("trimmed: q is co-reachable");
    Some(PumpingWitness {
        kind,
        p,
        q,
        p_name: n.name(p).to_string(),
        q_name: n.name(q).to_string(),
        prefix,
        cycle,
        suffix,
        alphabet: n.alphabet().clone(),
    })
}

/// Decides whether the information tree of the relation recognised by `r`
/// has bounded branching. `r` should already be validated; it is minimized
/// internally.
pub fn decide_bounded_branching(r: &TwoTapeDfa, limits: &Limits) -> Result<BranchingAnalysis> {
    let (min, state_map) = r.dfa().minimize_with_map();
    let minimal = TwoTapeDfa::wrap(r.base(), min);
    let classification = classify_states(&minimal)?;
    let representatives = representatives_dfa(&minimal, &classification, limits)?;
    let representation = representation_relation(&minimal, &representatives, limits)?;
    let decision = representation.project_first().trim();
    let verdict = match find_pumping_witness(&decision) {
        Some(witness) => BranchingVerdict::Unbounded {
            witness: Box::new(witness),
        },
        None => {
            let closure = build_closure(&minimal, limits)?;
            BranchingVerdict::Bounded {
                bound: closure.branching_bound(&minimal),
                max_clique: closure.max_dimension(),
            }
        }
    };
    Ok(BranchingAnalysis {
        minimal,
        state_map,
        classification,
        representatives,
        representation,
        decision,
        verdict,
    })
}
