//! Line-oriented text format for Mealy machines and two-tape automata.
//!
//! ```text
//! # comment
//! kind relation
//! alphabet a b
//! states q1 q2 rej
//! initial q1
//! accepting q1 q2
//! q1 a b -> q2
//! ...
//! ```
//!
//! Mealy machines use `kind mealy`, an `observations` line instead of
//! `accepting`, and transitions of the form `p1 a -> p2 : 1`.

use std::collections::HashMap;

use crate::alphabet::Alphabet;
use crate::automata::{DfaBuilder, MealyMachine, TwoTapeDfa};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automaton {
    Mealy(MealyMachine),
    Relation(TwoTapeDfa),
}

impl Automaton {
    pub fn kind(&self) -> &'static str {
        match self {
            Automaton::Mealy(_) => "mealy",
            Automaton::Relation(_) => "relation",
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Route missing relation transitions to a fresh non-accepting sink
    /// instead of failing.
    pub complete_with_sink: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Mealy,
    Relation,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (byte, ch)) in content.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((byte, col)),
                (true, Some((b, c))) => {
                    tokens.push(Token {
                        text: &content[b..byte],
                        column: c + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((b, c)) = start {
            tokens.push(Token {
                text: &content[b..],
                column: c + 1,
            });
        }
        if !tokens.is_empty() {
            lines.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    lines
}

#[derive(Default)]
struct Header<'a> {
    alphabet: Option<(usize, Vec<&'a Token<'a>>)>,
    observations: Option<(usize, Vec<&'a Token<'a>>)>,
    states: Option<(usize, Vec<&'a Token<'a>>)>,
    initial: Option<(usize, &'a Token<'a>)>,
    accepting: Option<(usize, Vec<&'a Token<'a>>)>,
}

fn names_alphabet(line: usize, tokens: &[&Token<'_>]) -> Result<Alphabet> {
    if tokens.is_empty() {
        return Err(err(line, 1, "expected at least one symbol"));
    }
    let mut seen = HashMap::new();
    for t in tokens {
        if seen.insert(t.text, ()).is_some() {
            return Err(err(line, t.column, format!("duplicate symbol `{}`", t.text)));
        }
    }
    Alphabet::new(tokens.iter().map(|t| t.text)).map_err(|e| err(line, 1, e.to_string()))
}

/// Parses a Mealy machine or a two-tape automaton.
pub fn parse(text: &str, options: ParseOptions) -> Result<Automaton> {
    let lines = tokenize(text);
    let Some(first) = lines.first() else {
        return Err(err(1, 1, "expected `kind mealy` or `kind relation`, found end of input"));
    };
    let kind = match first.tokens.as_slice() {
        [k, v] if k.text == "kind" && v.text == "mealy" => Kind::Mealy,
        [k, v] if k.text == "kind" && v.text == "relation" => Kind::Relation,
        [k, v, ..] if k.text == "kind" => {
            return Err(err(first.number, v.column, "expected `mealy` or `relation`"))
        }
        [t, ..] => {
            return Err(err(first.number, t.column, format!("expected `kind`, found `{}`", t.text)))
        }
        [] => unreachable!(),
    };

    let mut header = Header::default();
    let mut body = Vec::new();
    for line in &lines[1..] {
        let n = line.number;
        let head = &line.tokens[0];
        if line.tokens.iter().any(|t| t.text == "->") {
            body.push(line);
            continue;
        }
        if !body.is_empty() {
            return Err(err(n, head.column, "header lines must precede transitions"));
        }
        let rest: Vec<&Token<'_>> = line.tokens[1..].iter().collect();
        let dup = || err(n, head.column, format!("duplicate `{}` line", head.text));
        match head.text {
            "alphabet" => {
                if header.alphabet.replace((n, rest)).is_some() {
                    return Err(dup());
                }
            }
            "observations" if kind == Kind::Mealy => {
                if header.observations.replace((n, rest)).is_some() {
                    return Err(dup());
                }
            }
            "states" => {
                if header.states.replace((n, rest)).is_some() {
                    return Err(dup());
                }
            }
            "initial" => {
                let [t] = rest.as_slice() else {
                    return Err(err(n, head.column, "expected exactly one initial state"));
                };
                if header.initial.replace((n, *t)).is_some() {
                    return Err(dup());
                }
            }
            "accepting" if kind == Kind::Relation => {
                if header.accepting.replace((n, rest)).is_some() {
                    return Err(dup());
                }
            }
            "kind" => return Err(dup()),
            other => {
                return Err(err(n, head.column, format!("unexpected `{other}`")));
            }
        }
    }

    let last_line = lines.last().map_or(1, |l| l.number);
    let missing = |what: &str| err(last_line, 1, format!("missing `{what}` line"));
    let (alpha_line, alpha_tokens) = header.alphabet.take().ok_or_else(|| missing("alphabet"))?;
    let alphabet = names_alphabet(alpha_line, &alpha_tokens)?;
    let (states_line, state_tokens) = header.states.take().ok_or_else(|| missing("states"))?;
    if state_tokens.is_empty() {
        return Err(err(states_line, 1, "expected at least one state"));
    }
    let mut state_index = HashMap::new();
    for (i, t) in state_tokens.iter().enumerate() {
        if matches!(t.text, "->" | ":") {
            return Err(err(states_line, t.column, format!("`{}` is not a valid state name", t.text)));
        }
        if state_index.insert(t.text, i).is_some() {
            return Err(err(states_line, t.column, format!("duplicate state `{}`", t.text)));
        }
    }
    let names: Vec<String> = state_tokens.iter().map(|t| t.text.to_string()).collect();
    let lookup_state = |line: usize, t: &Token<'_>| {
        state_index
            .get(t.text)
            .copied()
            .ok_or_else(|| err(line, t.column, format!("unknown state `{}`", t.text)))
    };
    let lookup_symbol = |a: &Alphabet, line: usize, t: &Token<'_>| {
        a.lookup(t.text)
            .map_err(|_| err(line, t.column, format!("unknown symbol `{}`", t.text)))
    };
    let (init_line, init_token) = header.initial.ok_or_else(|| missing("initial"))?;
    let initial = lookup_state(init_line, init_token)?;
    let hole_error = |state: usize, what: String| {
        let t = state_tokens[state];
        err(states_line, t.column, format!("state `{}` has no transition on {what}", t.text))
    };

    match kind {
        Kind::Relation => {
            let (acc_line, acc_tokens) = header.accepting.ok_or_else(|| missing("accepting"))?;
            let mut builder = DfaBuilder::new(alphabet.pairs(&alphabet), names);
            builder.set_initial(initial);
            for t in &acc_tokens {
                builder.set_accepting(lookup_state(acc_line, t)?, true);
            }
            let k = alphabet.len();
            for line in body {
                let n = line.number;
                let [src, a, b, arrow, dst] = line.tokens.as_slice() else {
                    return Err(err(n, 1, "expected `STATE SYM SYM -> STATE`"));
                };
                if arrow.text != "->" {
                    return Err(err(n, arrow.column, "expected `->`"));
                }
                let p = lookup_state(n, src)?;
                let sym = lookup_symbol(&alphabet, n, a)? * k + lookup_symbol(&alphabet, n, b)?;
                let q = lookup_state(n, dst)?;
                if builder.set(p, sym, q).is_some() {
                    return Err(err(n, src.column, format!("duplicate transition for `{} {} {}`", src.text, a.text, b.text)));
                }
            }
            let dfa = if options.complete_with_sink {
                builder.complete_to_sink()
            } else {
                builder.build().map_err(|h| {
                    hole_error(h.state, format!("({}, {})", alphabet.name(h.symbol / k), alphabet.name(h.symbol % k)))
                })?
            };
            Ok(Automaton::Relation(TwoTapeDfa::new(alphabet, dfa)?))
        }
        Kind::Mealy => {
            let (obs_line, obs_tokens) =
                header.observations.take().ok_or_else(|| missing("observations"))?;
            let output = names_alphabet(obs_line, &obs_tokens)?;
            let k = alphabet.len();
            let n_states = names.len();
            let mut delta = vec![None; n_states * k];
            let mut out = vec![0; n_states * k];
            for line in body {
                let n = line.number;
                let [src, a, arrow, dst, colon, o] = line.tokens.as_slice() else {
                    return Err(err(n, 1, "expected `STATE SYM -> STATE : OBS`"));
                };
                if arrow.text != "->" {
                    return Err(err(n, arrow.column, "expected `->`"));
                }
                if colon.text != ":" {
                    return Err(err(n, colon.column, "expected `:`"));
                }
                let p = lookup_state(n, src)?;
                let s = lookup_symbol(&alphabet, n, a)?;
                let q = lookup_state(n, dst)?;
                let obs = lookup_symbol(&output, n, o)?;
                if delta[p * k + s].replace(q).is_some() {
                    return Err(err(n, src.column, format!("duplicate transition for `{} {}`", src.text, a.text)));
                }
                out[p * k + s] = obs;
            }
            if let Some(i) = delta.iter().position(Option::is_none) {
                let mut e = hole_error(i / k, format!("`{}`", alphabet.name(i % k)));
                if options.complete_with_sink {
                    if let Error::Parse { message, .. } = &mut e {
                        message.push_str(" (sink completion applies to relations only)");
                    }
                }
                return Err(e);
            }
            let delta = delta.into_iter().map(Option::unwrap).collect();
            Ok(Automaton::Mealy(MealyMachine::new(alphabet, output, names, initial, delta, out)?))
        }
    }
}

pub fn parse_relation(text: &str, options: ParseOptions) -> Result<TwoTapeDfa> {
    match parse(text, options)? {
        Automaton::Relation(r) => Ok(r),
        Automaton::Mealy(_) => Err(err(1, 1, "expected a relation, found a Mealy machine")),
    }
}

pub fn parse_mealy(text: &str) -> Result<MealyMachine> {
    match parse(text, ParseOptions::default())? {
        Automaton::Mealy(m) => Ok(m),
        Automaton::Relation(_) => Err(err(1, 1, "expected a Mealy machine, found a relation")),
    }
}

pub fn serialize_relation(r: &TwoTapeDfa) -> String {
    let g = r.base();
    let mut out = String::from("kind relation\n");
    out.push_str(&format!("alphabet {}\n", g.symbols().join(" ")));
    out.push_str(&format!("states {}\n", r.dfa().names().join(" ")));
    out.push_str(&format!("initial {}\n", r.name(r.initial())));
    let acc: Vec<&str> = (0..r.num_states())
        .filter(|&q| r.is_accepting(q))
        .map(|q| r.name(q))
        .collect();
    if acc.is_empty() {
        out.push_str("accepting\n");
    } else {
        out.push_str(&format!("accepting {}\n", acc.join(" ")));
    }
    for q in 0..r.num_states() {
        for a in 0..g.len() {
            for b in 0..g.len() {
                out.push_str(&format!(
                    "{} {} {} -> {}\n",
                    r.name(q),
                    g.name(a),
                    g.name(b),
                    r.name(r.step(q, a, b))
                ));
            }
        }
    }
    out
}

pub fn serialize_mealy(m: &MealyMachine) -> String {
    let g = m.input();
    let mut out = String::from("kind mealy\n");
    out.push_str(&format!("alphabet {}\n", g.symbols().join(" ")));
    out.push_str(&format!("observations {}\n", m.output().symbols().join(" ")));
    out.push_str(&format!("states {}\n", m.names().join(" ")));
    out.push_str(&format!("initial {}\n", m.name(m.initial())));
    for p in 0..m.num_states() {
        for a in 0..g.len() {
            out.push_str(&format!(
                "{} {} -> {} : {}\n",
                m.name(p),
                g.name(a),
                m.name(m.next(p, a)),
                m.output().name(m.output_of(p, a))
            ));
        }
    }
    out
}

pub fn serialize(automaton: &Automaton) -> String {
    match automaton {
        Automaton::Mealy(m) => serialize_mealy(m),
        Automaton::Relation(r) => serialize_relation(r),
    }
}
