use infoquot::alphabet::Alphabet;
use infoquot::oracle::InfoTreeSlice;
use infoquot::structure::PumpingKind;
use infoquot::{Counterexample, PumpingWitness, ValidationReport, Word};
use serde_json::{json, Value};

pub const FORMAT_VERSION: u32 = 1;

pub fn word_list(base: &Alphabet, words: &[Word]) -> Vec<String> {
    words.iter().map(|w| base.format_word(w)).collect()
}

fn counterexample_json(c: &Counterexample, base: &Alphabet) -> Value {
    let f = |w: &Word| base.format_word(w);
    match c {
        Counterexample::Reflexive { history } => json!({"kind": "reflexive", "histories": [f(history)]}),
        Counterexample::Symmetric { first, second } => {
            json!({"kind": "symmetric", "histories": [f(first), f(second)]})
        }
        Counterexample::Transitive { first, middle, last } => {
            json!({"kind": "transitive", "histories": [f(first), f(middle), f(last)]})
        }
        Counterexample::PerfectRecall { first, second } => {
            json!({"kind": "perfect-recall", "histories": [f(first), f(second)]})
        }
    }
}

pub fn report_json(report: &ValidationReport, base: &Alphabet) -> Value {
    let mut properties = serde_json::Map::new();
    for (name, check) in report.checks() {
        properties.insert(
            name.to_string(),
            json!({
                "holds": check.holds,
                "counterexample": check.counterexample.as_ref().map(|c| counterexample_json(c, base)),
            }),
        );
    }
    json!({
        "formatVersion": FORMAT_VERSION,
        "command": "validate",
        "valid": report.is_valid(),
        "synchronous": true,
        "properties": properties,
    })
}

pub fn pumping_json(w: &PumpingWitness) -> Value {
    let f = |x: &Word| w.alphabet.format_word(x);
    json!({
        "kind": match w.kind {
            PumpingKind::Diverging => "diverging",
            PumpingKind::Branching => "branching",
        },
        "p": w.p_name,
        "q": w.q_name,
        "prefix": f(&w.prefix),
        "cycle": f(&w.cycle),
        "suffix": f(&w.suffix),
    })
}

/// `{aa,ab,...}` with at most eight members spelled out.
pub fn brief_class(base: &Alphabet, members: &[Word]) -> String {
    let shown: Vec<String> = members.iter().take(8).map(|w| base.format_word(w)).collect();
    if members.len() > 8 {
        format!("{{{},...}} ({} histories)", shown.join(","), members.len())
    } else {
        format!("{{{}}}", shown.join(","))
    }
}

pub fn tree_dot(tree: &InfoTreeSlice, base: &Alphabet) -> String {
    let mut out = String::from("digraph infotree {\n  node [shape=box];\n");
    for i in 0..tree.nodes.len() {
        out.push_str(&format!(
            "  n{i} [label=\"{}\\ndegree {}\"];\n",
            brief_class(base, tree.members(i)),
            tree.degrees[i]
        ));
    }
    for (p, c) in tree.edges() {
        out.push_str(&format!("  n{p} -> n{c};\n"));
    }
    out.push_str("}\n");
    out
}
