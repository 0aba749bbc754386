//! Validation of two-tape automata as indistinguishability relations, and
//! the translation of observation machines into relations.

use std::fmt;

use crate::alphabet::{unzip_pair, Alphabet, Word};
use crate::automata::dfa::explore;
use crate::automata::witness::least_word;
use crate::automata::{MealyMachine, TwoTapeDfa};

/// Name of the reject sink introduced by [`mealy_to_relation`].
pub const SINK_NAME: &str = "rej";

/// Runs the machine on both tapes at once; the first step where the two
/// outputs differ sends the pair to a single reject sink.
pub fn mealy_to_relation(m: &MealyMachine) -> TwoTapeDfa {
    let k = m.input().len();
    let pairs = m.input().pairs(m.input());
    let (dfa, _) = explore(
        pairs,
        Some((m.initial(), m.initial())),
        |key, s| {
            let (p, q) = (*key)?;
            let (a, b) = (s / k, s % k);
            (m.output_of(p, a) == m.output_of(q, b)).then(|| (m.next(p, a), m.next(q, b)))
        },
        Option::is_some,
        |key| match key {
            Some((p, q)) => format!("({},{})", m.name(*p), m.name(*q)),
            None => SINK_NAME.to_string(),
        },
        usize::MAX,
        "relation construction",
    )
    .expect("state space is bounded by |Q|² + 1");
    TwoTapeDfa::wrap(m.input(), dfa)
}

/// A violation of one of the defining properties, given by concrete
/// histories. All witnesses are shortest, then least on the first tape,
/// then on the second (and, for transitivity, on the middle history last).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// `(history, history)` is rejected.
    Reflexive { history: Word },
    /// Exactly one of `(first, second)` and `(second, first)` is accepted.
    Symmetric { first: Word, second: Word },
    /// `(first, middle)` and `(middle, last)` are accepted, `(first, last)` is not.
    Transitive { first: Word, middle: Word, last: Word },
    /// `(first, second)` is accepted but the pair of their one-letter-shorter
    /// prefixes is rejected.
    PerfectRecall { first: Word, second: Word },
}

impl Counterexample {
    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let w = |x: &Word| alphabet.format_word(x);
        match self {
            Counterexample::Reflexive { history } => {
                format!("({}, {}) is rejected", w(history), w(history))
            }
            Counterexample::Symmetric { first, second } => format!(
                "exactly one of ({0}, {1}) and ({1}, {0}) is accepted",
                w(first),
                w(second)
            ),
            Counterexample::Transitive { first, middle, last } => format!(
                "({0}, {1}) and ({1}, {2}) are accepted but ({0}, {2}) is rejected",
                w(first),
                w(middle),
                w(last)
            ),
            Counterexample::PerfectRecall { first, second } => {
                let n = first.len() - 1;
                format!(
                    "({}, {}) is accepted but its prefix pair ({}, {}) is rejected",
                    w(first),
                    w(second),
                    w(&first[..n].to_vec()),
                    w(&second[..n].to_vec())
                )
            }
        }
    }

    /// Checks the claimed violation against `r` using only single runs.
    pub fn replays_on(&self, r: &TwoTapeDfa) -> bool {
        let acc = |a: &Word, b: &Word| r.accepts(a, b).unwrap_or(false);
        match self {
            Counterexample::Reflexive { history } => !acc(history, history),
            Counterexample::Symmetric { first, second } => acc(first, second) != acc(second, first),
            Counterexample::Transitive { first, middle, last } => {
                acc(first, middle) && acc(middle, last) && !acc(first, last)
            }
            Counterexample::PerfectRecall { first, second } => {
                let n = first.len();
                n > 0 && acc(first, second) && !acc(&first[..n - 1].to_vec(), &second[..n - 1].to_vec())
            }
        }
    }
}

/// Outcome of one property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl Check {
    fn from_witness(counterexample: Option<Counterexample>) -> Self {
        Check {
            holds: counterexample.is_none(),
            counterexample,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub reflexive: Check,
    pub symmetric: Check,
    pub transitive: Check,
    pub perfect_recall: Check,
}

impl ValidationReport {
    /// Synchronicity is structural for two-tape automata and always holds.
    pub const SYNCHRONOUS: bool = true;

    pub fn is_valid(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.holds)
    }

    pub fn checks(&self) -> [(&'static str, &Check); 4] {
        [
            ("reflexive", &self.reflexive),
            ("symmetric", &self.symmetric),
            ("transitive", &self.transitive),
            ("perfect-recall", &self.perfect_recall),
        ]
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for (name, check) in self.checks() {
            out.push_str(&format!("{name}: {}", if check.holds { "yes" } else { "no" }));
            if let Some(c) = &check.counterexample {
                out.push_str(&format!(" ({})", c.describe(alphabet)));
            }
            out.push('\n');
        }
        out.push_str("synchronous: yes (structural)\n");
        out.push_str(&format!("valid: {}\n", if self.is_valid() { "yes" } else { "no" }));
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, check) in self.checks() {
            writeln!(f, "{name}: {}", check.holds)?;
        }
        Ok(())
    }
}

/// Every state reachable on diagonal letters must accept.
pub fn check_reflexive(r: &TwoTapeDfa) -> Check {
    let (diag, keys) = explore(
        r.base().clone(),
        r.initial(),
        |&q, a| r.step(q, a, a),
        |&q| r.is_accepting(q),
        |&q| r.name(q).to_string(),
        usize::MAX,
        "reflexivity check",
    )
    .expect("bounded by |Q|");
    let witness = least_word(&diag, |q| !r.is_accepting(keys[q]), 1, &[0])
        .map(|history| Counterexample::Reflexive { history });
    Check::from_witness(witness)
}

/// `L(r)` must equal its transpose.
pub fn check_symmetric(r: &TwoTapeDfa) -> Check {
    let t = r.transpose();
    let witness = r
        .distinguishing_pair(&t)
        .expect("same alphabet")
        .map(|(first, second)| Counterexample::Symmetric { first, second });
    Check::from_witness(witness)
}

/// `L(r) ∘ L(r) ⊆ L(r)`, searched on the three-tape product that tracks
/// `(τ, ρ)`, `(ρ, π)` and `(τ, π)` simultaneously.
pub fn check_transitive(r: &TwoTapeDfa) -> Check {
    let k = r.base().len();
    let triples = r.base().pairs(r.base()).pairs(r.base());
    let init = r.initial();
    let (dfa, _) = explore(
        triples,
        (init, init, init),
        |&(p, q, s), sym| {
            let (a, b, c) = (sym / (k * k), (sym / k) % k, sym % k);
            (r.step(p, a, b), r.step(q, b, c), r.step(s, a, c))
        },
        |&(p, q, s)| r.is_accepting(p) && r.is_accepting(q) && !r.is_accepting(s),
        |&(p, q, s)| format!("({},{},{})", r.name(p), r.name(q), r.name(s)),
        usize::MAX,
        "transitivity check",
    )
    .expect("bounded by |Q|³");
    let witness = least_word(&dfa, |q| dfa.is_accepting(q), 3, &[0, 2, 1]).map(|w| {
        let mut first = Vec::with_capacity(w.len());
        let mut middle = Vec::with_capacity(w.len());
        let mut last = Vec::with_capacity(w.len());
        for sym in w {
            first.push(sym / (k * k));
            middle.push((sym / k) % k);
            last.push(sym % k);
        }
        Counterexample::Transitive { first, middle, last }
    });
    Check::from_witness(witness)
}

/// No accepted pair may have a rejected prefix pair.
pub fn check_perfect_recall(r: &TwoTapeDfa) -> Check {
    let (dfa, _) = explore(
        r.dfa().alphabet().clone(),
        (r.initial(), false),
        |&(q, _), s| (r.dfa().next(q, s), !r.is_accepting(q)),
        |&(q, came_from_reject)| came_from_reject && r.is_accepting(q),
        |&(q, f)| format!("({},{})", r.name(q), f),
        usize::MAX,
        "perfect-recall check",
    )
    .expect("bounded by 2|Q|");
    let witness = least_word(&dfa, |q| dfa.is_accepting(q), 2, &[0, 1]).map(|w| {
        let (first, second) = unzip_pair(r.base().len(), &w);
        Counterexample::PerfectRecall { first, second }
    });
    Check::from_witness(witness)
}

pub fn validate(r: &TwoTapeDfa) -> ValidationReport {
    ValidationReport {
        reflexive: check_reflexive(r),
        symmetric: check_symmetric(r),
        transitive: check_transitive(r),
        perfect_recall: check_perfect_recall(r),
    }
}
