#![allow(dead_code)]

use infoquot::io::{parse_mealy, parse_relation, ParseOptions};
use infoquot::{MealyMachine, TwoTapeDfa, Word};

pub fn corpus(name: &str) -> String {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn relation(name: &str) -> TwoTapeDfa {
    parse_relation(&corpus(name), ParseOptions::default()).unwrap()
}

pub fn mealy(name: &str) -> MealyMachine {
    parse_mealy(&corpus(name)).unwrap()
}

pub fn embargo(k: usize) -> TwoTapeDfa {
    relation(&format!("embargo-k{k}.rel"))
}

/// Relations of the corpus that are valid and have bounded branching.
pub fn bounded_corpus() -> Vec<(String, TwoTapeDfa)> {
    let mut out = vec![("running.rel".to_string(), relation("running.rel"))];
    for k in 1..=4 {
        out.push((format!("embargo-k{k}.rel"), embargo(k)));
    }
    out
}

pub fn w(r: &TwoTapeDfa, text: &str) -> Word {
    r.base().parse_word(text).unwrap()
}

pub fn state(r: &TwoTapeDfa, name: &str) -> usize {
    r.dfa().state_by_name(name).unwrap_or_else(|| panic!("no state {name}"))
}

pub fn relation_text(text: &str) -> TwoTapeDfa {
    parse_relation(text, ParseOptions::default()).unwrap()
}

pub fn mealy_text(text: &str) -> MealyMachine {
    parse_mealy(text).unwrap()
}

/// Accepts `(τ, τ')` iff `τ = τ'`.
pub fn equality(alphabet: &str) -> TwoTapeDfa {
    let symbols: Vec<&str> = alphabet.split_whitespace().collect();
    let mut text = format!("kind relation\nalphabet {alphabet}\nstates d rej\ninitial d\naccepting d\n");
    for a in &symbols {
        for b in &symbols {
            let t = if a == b { "d" } else { "rej" };
            text.push_str(&format!("d {a} {b} -> {t}\nrej {a} {b} -> rej\n"));
        }
    }
    relation_text(&text)
}

pub fn pair_words(r: &TwoTapeDfa, max: usize) -> Vec<(Word, Word)> {
    let k = r.base().len();
    let mut out = Vec::new();
    for n in 0..=max {
        let words: Vec<Word> = infoquot::alphabet::words_of_length(k, n).collect();
        for x in &words {
            for y in &words {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}
