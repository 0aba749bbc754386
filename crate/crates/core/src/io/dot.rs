//! Graphviz export.

use std::fmt::Write;

use crate::automata::{MealyMachine, TwoTapeDfa};
use crate::io::format::Automaton;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn relation_dot(r: &TwoTapeDfa) -> String {
    let g = r.base();
    let mut out = String::from("digraph relation {\n  rankdir=LR;\n  node [shape=circle];\n");
    out.push_str("  __start [shape=point];\n");
    for q in 0..r.num_states() {
        if r.is_accepting(q) {
            let _ = writeln!(out, "  {} [shape=doublecircle];", quote(r.name(q)));
        }
    }
    let _ = writeln!(out, "  __start -> {};", quote(r.name(r.initial())));
    for q in 0..r.num_states() {
        for a in 0..g.len() {
            for b in 0..g.len() {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label={}];",
                    quote(r.name(q)),
                    quote(r.name(r.step(q, a, b))),
                    quote(&format!("{},{}", g.name(a), g.name(b)))
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn mealy_dot(m: &MealyMachine) -> String {
    let g = m.input();
    let mut out = String::from("digraph mealy {\n  rankdir=LR;\n  node [shape=circle];\n");
    out.push_str("  __start [shape=point];\n");
    let _ = writeln!(out, "  __start -> {};", quote(m.name(m.initial())));
    for p in 0..m.num_states() {
        for a in 0..g.len() {
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(m.name(p)),
                quote(m.name(m.next(p, a))),
                quote(&format!("{}/{}", g.name(a), m.output().name(m.output_of(p, a))))
            );
        }
    }
    out.push_str("}\n");
    out
}

pub fn export_dot(automaton: &Automaton) -> String {
    match automaton {
        Automaton::Mealy(m) => mealy_dot(m),
        Automaton::Relation(r) => relation_dot(r),
    }
}
