mod common;

use common::{corpus, relation, relation_text, w};
use infoquot::io::{export_dot, parse, serialize, Automaton, ParseOptions};
use infoquot::structure::{classify_states, interchangeable, lex_order_dfa};
use infoquot::Error;

const CORPUS: &[&str] = &[
    "running.mealy",
    "running.rel",
    "running-reflexive.rel",
    "running-transitive.rel",
    "running-recall.rel",
    "unbounded.rel",
    "embargo-k1.rel",
    "embargo-k2.rel",
    "embargo-k3.rel",
    "embargo-k4.rel",
    "embargo-k5.rel",
    "embargo-k6.rel",
];

#[test]
fn serialization_round_trips_on_the_corpus() {
    for name in CORPUS {
        let a = parse(&corpus(name), ParseOptions::default()).unwrap();
        let text = serialize(&a);
        let b = parse(&text, ParseOptions::default()).unwrap();
        assert_eq!(a, b, "{name}");
        assert_eq!(serialize(&b), text, "{name}");
        assert!(export_dot(&a).starts_with("digraph"), "{name}");
    }
}

#[test]
fn partial_relations_are_completed_on_request() {
    let text = "kind relation\nalphabet a\nstates s\ninitial s\naccepting s\n";
    match parse(text, ParseOptions::default()) {
        Err(Error::Parse { message, .. }) => assert!(message.contains("no transition"), "{message}"),
        other => panic!("{other:?}"),
    }
    let Automaton::Relation(r) = parse(text, ParseOptions { complete_with_sink: true }).unwrap() else {
        panic!("relation expected");
    };
    assert_eq!(r.num_states(), 2);
    assert!(!r.accepts(&[0], &[0]).unwrap());
}

#[test]
fn non_minimal_input_violates_the_partition() {
    // `u` is unreachable and never rejects, so it is in neither class.
    let r = relation_text(
        "kind relation
alphabet a
states s u
initial s
accepting s u
s a a -> s
u a a -> u
",
    );
    match classify_states(&r) {
        Err(Error::PartitionViolation { state, .. }) => assert_eq!(state, "u"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn interchangeability_needs_equal_lengths() {
    let r = relation("running.rel").minimize();
    let c = classify_states(&r).unwrap();
    assert!(interchangeable(&r, &c, &w(&r, "ab"), &w(&r, "ab")).unwrap());
    assert!(!interchangeable(&r, &c, &w(&r, "a"), &w(&r, "b")).unwrap());
    assert!(matches!(
        interchangeable(&r, &c, &w(&r, "a"), &w(&r, "ab")),
        Err(Error::LengthMismatch { left: 1, right: 2 })
    ));
}

#[test]
fn lexicographic_order_automata() {
    let r = relation("running.rel");
    let lt = lex_order_dfa(r.base(), true);
    let le = lex_order_dfa(r.base(), false);
    assert!(lt.accepts(&w(&r, "ab"), &w(&r, "ba")).unwrap());
    assert!(!lt.accepts(&w(&r, "ab"), &w(&r, "ab")).unwrap());
    assert!(le.accepts(&w(&r, "ab"), &w(&r, "ab")).unwrap());
    assert!(!le.accepts(&w(&r, "ba"), &w(&r, "aa")).unwrap());
    assert_eq!(lt.num_states(), 3);
}
