//! Equality and disequality constraints on output variables, and their
//! solution by union-find and greedy colouring.

use std::collections::{BTreeMap, HashMap, VecDeque};

use petgraph::unionfind::UnionFind;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::automata::{StateId, TwoTapeDfa};
use crate::error::{Error, Result};

use super::closure::ClosureAutomaton;

/// Output variable `x_{p,a}`: the observation emitted by closure state `p`
/// on input `a`. Encoded as `p * k + a`.
pub type Var = usize;

/// A pair of histories whose last steps read the two variables of a
/// constraint. `first` ends at the left variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub first: Word,
    pub second: Word,
}

#[derive(Clone, Debug, Default)]
pub struct ConstraintSet {
    k: usize,
    num_vars: usize,
    /// Keyed by `(left, right)` with `left ≤ right`.
    pub equalities: BTreeMap<(Var, Var), Witness>,
    pub disequalities: BTreeMap<(Var, Var), Witness>,
}

impl ConstraintSet {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn var(&self, state: StateId, symbol: Symbol) -> Var {
        state * self.k + symbol
    }

    pub fn var_parts(&self, v: Var) -> (StateId, Symbol) {
        (v / self.k, v % self.k)
    }

    pub fn var_name(&self, v: Var, input: &Alphabet) -> String {
        let (p, a) = self.var_parts(v);
        format!("x[p{},{}]", p + 1, input.name(a))
    }

    pub fn render(&self, input: &Alphabet) -> String {
        let mut out = String::new();
        for (sep, set) in [("=", &self.equalities), ("!=", &self.disequalities)] {
            for (&(u, v), w) in set {
                out.push_str(&format!(
                    "{} {sep} {}    from ({}, {})\n",
                    self.var_name(u, input),
                    self.var_name(v, input),
                    input.format_word(&w.first),
                    input.format_word(&w.second)
                ));
            }
        }
        out
    }
}

fn insert(set: &mut BTreeMap<(Var, Var), Witness>, u: Var, v: Var, first: Word, second: Word) {
    let (key, w) = if u <= v {
        ((u, v), Witness { first, second })
    } else {
        ((v, u), Witness { first: second, second: first })
    };
    set.entry(key).or_insert(w);
}

/// Walks the reachable triples `(p, p', q)` of two copies of the closure
/// and `r` with `q` accepting. Every pair of inputs `(a, b)` yields
/// `x_{p,a} = x_{p',b}` if the extended histories stay related, and
/// `x_{p,a} ≠ x_{p',b}` otherwise.
pub fn generate_constraints(f0: &ClosureAutomaton, r: &TwoTapeDfa) -> ConstraintSet {
    let k = r.base().len();
    let mut set = ConstraintSet {
        k,
        num_vars: f0.num_states() * k,
        ..Default::default()
    };
    let start = (0, 0, r.initial());
    let mut histories: HashMap<(StateId, StateId, StateId), (Word, Word)> = HashMap::new();
    histories.insert(start, (Vec::new(), Vec::new()));
    let mut queue = VecDeque::from([start]);
    while let Some(node @ (p1, p2, q)) = queue.pop_front() {
        let (t1, t2) = histories[&node].clone();
        for a in 0..k {
            for b in 0..k {
                let target = r.step(q, a, b);
                let mut w1 = t1.clone();
                w1.push(a);
                let mut w2 = t2.clone();
                w2.push(b);
                let (u, v) = (set.var(p1, a), set.var(p2, b));
                if r.is_accepting(target) {
                    insert(&mut set.equalities, u, v, w1.clone(), w2.clone());
                    let next = (f0.next(p1, a), f0.next(p2, b), target);
                    if let std::collections::hash_map::Entry::Vacant(e) = histories.entry(next) {
                        e.insert((w1, w2));
                        queue.push_back(next);
                    }
                } else {
                    insert(&mut set.disequalities, u, v, w1, w2);
                }
            }
        }
    }
    set
}

/// Output symbol per variable, numbered from zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<Symbol>,
    pub num_symbols: usize,
}

fn equality_chain(phi: &ConstraintSet, from: Var, to: Var) -> Vec<(Var, Var)> {
    let mut adj: HashMap<Var, Vec<Var>> = HashMap::new();
    for &(u, v) in phi.equalities.keys() {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut parent: HashMap<Var, Var> = HashMap::from([(from, from)]);
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in adj.get(&x).into_iter().flatten() {
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(y) {
                e.insert(x);
                queue.push_back(y);
            }
        }
    }
    let mut chain = Vec::new();
    let mut cur = to;
    while cur != from {
        let prev = parent[&cur];
        chain.push((prev, cur));
        cur = prev;
    }
    chain.reverse();
    chain
}

/// Merges equal variables, rejects a disequality inside one class, and
/// colours the classes greedily in order of their least variable.
pub fn solve_constraints(phi: &ConstraintSet) -> Result<Assignment> {
    let n = phi.num_vars();
    let mut uf = UnionFind::<usize>::new(n);
    for &(u, v) in phi.equalities.keys() {
        uf.union(u, v);
    }
    for &(u, v) in phi.disequalities.keys() {
        if uf.equiv(u, v) {
            return Err(Error::Infeasible {
                pair: (u, v),
                chain: equality_chain(phi, u, v),
            });
        }
    }

    let mut class_of = vec![usize::MAX; n];
    let mut classes = 0;
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    for (v, slot) in class_of.iter_mut().enumerate() {
        *slot = *root_class.entry(uf.find(v)).or_insert_with(|| {
            classes += 1;
            classes - 1
        });
    }
    let mut conflicts = vec![Vec::new(); classes];
    for &(u, v) in phi.disequalities.keys() {
        conflicts[class_of[u]].push(class_of[v]);
        conflicts[class_of[v]].push(class_of[u]);
    }
    let mut colour = vec![usize::MAX; classes];
    for c in 0..classes {
        let used: Vec<usize> = conflicts[c].iter().map(|&d| colour[d]).collect();
        colour[c] = (0..).find(|x| !used.contains(x)).expect("unbounded range");
    }
    let num_symbols = colour.iter().max().map_or(0, |m| m + 1);
    Ok(Assignment {
        values: class_of.iter().map(|&c| colour[c]).collect(),
        num_symbols,
    })
}
