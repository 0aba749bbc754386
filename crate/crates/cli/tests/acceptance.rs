//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use infoquot::alphabet::words_of_length;
use infoquot::io::{parse_mealy, parse_relation, ParseOptions};
use infoquot::oracle::{brute_matrix, kernel_equal, rank_observation, OracleBudget};
use infoquot::relation::Counterexample;
use infoquot::structure::{classify_states, decide_bounded_branching};
use infoquot::synthesis::{build_closure, generate_constraints, successor, transform, StateMatrix};
use infoquot::{mealy_to_relation, synthesize_mealy, validate, Alphabet, BranchingVerdict, Limits, MealyMachine, TwoTapeDfa, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(1);
const UNBOUNDED_LIMIT: Duration = Duration::from_secs(5);
const EMBARGO_K6_LIMIT: Duration = Duration::from_secs(60);
const PROPERTY_LIMIT: Duration = Duration::from_secs(120);
const PROPERTY_CASES: usize = 200;
const PROPERTY_SEED: u64 = 0x1f0_0b5e;

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn relation(name: &str) -> TwoTapeDfa {
    parse_relation(&std::fs::read_to_string(corpus(name)).unwrap(), ParseOptions::default()).unwrap()
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infoquot")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn running_example_round_trip(dir: &Path) -> Verdict {
    let started = Instant::now();
    let out = dir.join("running.rel");
    let o = cli(&["from-mealy", path(&corpus("running.mealy")), "-o", path(&out)]);
    ensure(code(&o) == 0, "from-mealy failed")?;
    let o = cli(&["equiv", path(&out), path(&corpus("running.rel"))]);
    let elapsed = started.elapsed();
    ensure(code(&o) == 0, format!("from-mealy result not equivalent: {}", stdout(&o)))?;
    ensure(elapsed < ROUND_TRIP_LIMIT, format!("round trip took {elapsed:?}"))?;

    let o = cli(&["to-mealy", path(&corpus("running.rel"))]);
    ensure(code(&o) == 0, "to-mealy failed")?;
    let m = parse_mealy(&stdout(&o)).map_err(|e| e.to_string())?;
    ensure(m.num_states() == 4, format!("{} states", m.num_states()))?;
    ensure(m.output().len() == 2, format!("{} observation symbols", m.output().len()))?;
    let r = relation("running.rel");
    let cx = kernel_equal(&m, &r, 6, &OracleBudget::default()).map_err(|e| e.to_string())?;
    ensure(cx.is_none(), format!("kernel differs at {cx:?}"))?;

    let o = cli(&["oracle-partition", path(&corpus("running.rel")), "--depth", "2"]);
    ensure(
        stdout(&o).lines().any(|l| l == "length 2: {aa,ab,bb} {ba}"),
        format!("partition printed as {}", stdout(&o)),
    )?;
    Ok(format!("equivalent in {elapsed:?}; 4 states, 2 observations; kernel to depth 6; {{aa,ab,bb}},{{ba}}"))
}

fn classification() -> Verdict {
    let r = relation("running.rel").minimize();
    let c = classify_states(&r).map_err(|e| e.to_string())?;
    let names = |v: Vec<usize>| v.into_iter().map(|q| r.name(q).to_string()).collect::<BTreeSet<_>>();
    let refl = names(c.reflexive_states());
    let amb = names(c.ambiguous_states());
    ensure(refl == ["q1", "q2"].map(String::from).into(), format!("reflexive {refl:?}"))?;
    ensure(amb == ["q3", "q4", "rej"].map(String::from).into(), format!("ambiguous {amb:?}"))?;
    Ok("Reflexive {q1,q2}, Ambiguous {q3,q4,rej}".into())
}

fn unboundedness() -> Verdict {
    let started = Instant::now();
    let file = corpus("unbounded.rel");
    let o = cli(&["check-bounded", "--json", path(&file)]);
    ensure(code(&o) == 1, format!("check-bounded exit {}", code(&o)))?;
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).map_err(|e| e.to_string())?;
    ensure(v["bounded"] == false, "verdict not unbounded")?;

    let r = relation("unbounded.rel");
    let analysis = decide_bounded_branching(&r, &Limits::default()).map_err(|e| e.to_string())?;
    let BranchingVerdict::Unbounded { witness } = &analysis.verdict else {
        return Err("library verdict bounded".into());
    };
    ensure(witness.replays_in(&analysis.decision), "witness does not replay")?;
    ensure(v["witness"]["cycle"] == r.base().format_word(&witness.cycle), "CLI witness differs")?;

    let o = cli(&["to-mealy", path(&file)]);
    ensure(code(&o) == 1, "to-mealy did not refuse")?;
    ensure(
        String::from_utf8_lossy(&o.stderr).contains("pumping witness"),
        "to-mealy stderr lacks the witness",
    )?;

    let o = cli(&["tree", "--json", "--depth", "5", path(&file)]);
    ensure(code(&o) == 0, "tree failed")?;
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).map_err(|e| e.to_string())?;
    let mut degrees = Vec::new();
    for n in 1..=5usize {
        let first = "a".repeat(n);
        let node = v["nodes"]
            .as_array()
            .unwrap()
            .iter()
            .find(|node| node["members"][0] == first.as_str())
            .ok_or("node missing")?;
        let size = node["members"].as_array().unwrap().len();
        let degree = node["degree"].as_u64().unwrap() as usize;
        ensure(size == 1 << n, format!("node {{a,b}}^{n} has {size} members"))?;
        ensure(degree == (1 << n) + 1, format!("degree {degree} at n = {n}"))?;
        degrees.push(degree);
    }
    let elapsed = started.elapsed();
    ensure(elapsed < UNBOUNDED_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("exit 1, witness replays, to-mealy refuses, degrees {degrees:?} in {elapsed:?}"))
}

fn exponential_family(dir: &Path) -> Verdict {
    let mut sizes = Vec::new();
    let mut k6 = Duration::ZERO;
    for k in 1..=6usize {
        let started = Instant::now();
        let name = format!("embargo-k{k}.rel");
        let out = dir.join(format!("embargo-k{k}.mealy"));
        let o = cli(&["to-mealy", path(&corpus(&name)), "-o", path(&out)]);
        ensure(code(&o) == 0, format!("k = {k}: to-mealy failed"))?;
        let m = parse_mealy(&std::fs::read_to_string(&out).unwrap()).map_err(|e| e.to_string())?;
        ensure(m.output().len() >= 1 << k, format!("k = {k}: {} symbols", m.output().len()))?;
        let r = relation(&name);
        let cx = kernel_equal(&m, &r, k + 3, &OracleBudget::uniform(k + 3)).map_err(|e| e.to_string())?;
        ensure(cx.is_none(), format!("k = {k}: kernel differs at {cx:?}"))?;
        sizes.push(m.output().len());
        if k == 6 {
            k6 = started.elapsed();
        }
    }
    ensure(k6 < EMBARGO_K6_LIMIT, format!("k = 6 took {k6:?}"))?;
    Ok(format!("observation symbols {sizes:?}; kernel to depth k+3; k = 6 in {k6:?}"))
}

fn worked_closure_example() -> Verdict {
    let r = relation("running.rel").minimize();
    let q = |n: &str| r.dfa().state_by_name(n).unwrap();
    let m = StateMatrix::from_rows(&[vec![q("q1"), q("q3")], vec![q("q4"), q("q2")]]);
    let x = q("rej");
    let expected = StateMatrix::from_rows(&[
        vec![q("q1"), q("q3"), x, q("q1")],
        vec![q("q4"), q("q2"), x, q("q4")],
        vec![x, x, q("q2"), x],
        vec![q("q1"), q("q3"), x, q("q1")],
    ]);
    ensure(transform(&m, &r) == expected, "transform differs")?;
    let sa = successor(&m, 1, 0, &r);
    ensure(sa.matrix == StateMatrix::singleton(q("q2")) && sa.index() == 1, "successor_a(M,2) differs")?;
    let sb = successor(&m, 1, 1, &r);
    ensure(sb.matrix == m && sb.index() == 1, "successor_b(M,2) differs")?;

    let f0 = build_closure(&r, &Limits::default()).map_err(|e| e.to_string())?;
    ensure(f0.num_states() == 4, "closure size")?;
    let phi = generate_constraints(&f0, &r);
    // Variables x y z r s t u v are p1a p1b p2a p2b p3a p3b p4a p4b.
    let names = ["x", "y", "z", "r", "s", "t", "u", "v"];
    let mut class: BTreeMap<usize, usize> = (0..8).map(|i| (i, i)).collect();
    for &(a, b) in phi.equalities.keys() {
        let (ca, cb) = (class[&a], class[&b]);
        for c in class.values_mut() {
            if *c == cb {
                *c = ca;
            }
        }
    }
    let label = |i: usize| -> String {
        (0..8).filter(|&j| class[&j] == class[&i]).map(|j| names[j]).collect::<Vec<_>>().join("=")
    };
    let classes: BTreeSet<String> = (0..8).map(label).collect();
    let want: BTreeSet<String> = ["x=y", "z=r=t", "s", "u", "v"].map(String::from).into();
    ensure(classes == want, format!("classes {classes:?}"))?;
    let diseq: BTreeSet<(String, String)> = phi
        .disequalities
        .keys()
        .map(|&(a, b)| {
            let (la, lb) = (label(a), label(b));
            if la < lb { (la, lb) } else { (lb, la) }
        })
        .collect();
    let want: BTreeSet<(String, String)> =
        [("s", "z=r=t"), ("u", "v")].map(|(a, b)| (a.to_string(), b.to_string())).into();
    ensure(diseq == want, format!("disequalities {diseq:?}"))?;
    Ok("transform, both successors and {x=y, z=r=t, t!=s, u!=v} reproduced".into())
}

fn random_machine(rng: &mut ChaCha8Rng) -> MealyMachine {
    let n = rng.gen_range(1..=4);
    let k = rng.gen_range(1..=3);
    let o = rng.gen_range(1..=3);
    let input = Alphabet::new(["a", "b", "c"].into_iter().take(k)).unwrap();
    let delta = (0..n * k).map(|_| rng.gen_range(0..n)).collect();
    let out = (0..n * k).map(|_| rng.gen_range(0..o)).collect();
    let names = (1..=n).map(|i| format!("s{i}")).collect();
    MealyMachine::new(input, Alphabet::numbered(o), names, 0, delta, out).unwrap()
}

fn property_suite() -> Verdict {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(PROPERTY_SEED);
    for case in 0..PROPERTY_CASES {
        let m = random_machine(&mut rng);
        let r = mealy_to_relation(&m);
        ensure(validate(&r).is_valid(), format!("case {case}: invalid relation"))?;
        let analysis = decide_bounded_branching(&r, &Limits::default()).map_err(|e| format!("case {case}: {e}"))?;
        ensure(analysis.verdict.is_bounded(), format!("case {case}: unbounded"))?;
        let syn = synthesize_mealy(&r, &Limits::default()).map_err(|e| format!("case {case}: {e}"))?;
        let back = mealy_to_relation(&syn.machine);
        ensure(back.language_equivalent(&r).unwrap(), format!("case {case}: round trip differs"))?;
    }
    let elapsed = started.elapsed();
    ensure(elapsed < PROPERTY_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("{PROPERTY_CASES} seeded machines round-trip, no infeasibility, {elapsed:?}"))
}

fn oracle_agreement() -> Verdict {
    let budget = OracleBudget::default();
    let mut bounded: Vec<String> = vec!["running.rel".into()];
    bounded.extend((1..=6).map(|k| format!("embargo-k{k}.rel")));
    let mut checked = 0usize;
    for name in &bounded {
        let r = relation(name).minimize();
        let f0 = build_closure(&r, &Limits::default()).map_err(|e| e.to_string())?;
        for n in 0..=6 {
            for tau in words_of_length(r.base().len(), n) {
                let s = f0.state(f0.run(&tau));
                let (m, i) = brute_matrix(&r, &tau, &budget).map_err(|e| e.to_string())?;
                ensure(s.matrix == m && s.index() == i, format!("{name}: closure differs at {tau:?}"))?;
                checked += 1;
            }
        }
    }
    for name in bounded.iter().map(String::as_str).chain(["unbounded.rel"]) {
        let r = relation(name);
        let ranks = rank_observation(&r, 6, &budget).map_err(|e| e.to_string())?;
        for n in 0..=6 {
            let words: Vec<Word> = words_of_length(r.base().len(), n).collect();
            let hist: Vec<Vec<usize>> =
                words.iter().map(|w| (1..=w.len()).map(|i| ranks[&w[..i]]).collect()).collect();
            // Group by rank history, then compare against the relation
            // between group leaders and members.
            let mut groups: BTreeMap<&Vec<usize>, Vec<usize>> = BTreeMap::new();
            for (i, h) in hist.iter().enumerate() {
                groups.entry(h).or_default().push(i);
            }
            let leaders: Vec<usize> = groups.values().map(|g| g[0]).collect();
            for g in groups.values() {
                for &i in g {
                    ensure(r.accepts(&words[g[0]], &words[i]).unwrap(), format!("{name}: rank kernel too coarse"))?;
                }
            }
            for (a, &x) in leaders.iter().enumerate() {
                for &y in &leaders[a + 1..] {
                    ensure(!r.accepts(&words[x], &words[y]).unwrap(), format!("{name}: rank kernel too fine"))?;
                }
            }
        }
    }
    for name in ["running-reflexive.rel", "running-transitive.rel", "running-recall.rel"] {
        let r = relation(name);
        for (_, check) in validate(&r).checks() {
            if let Some(cx) = &check.counterexample {
                ensure(cx.replays_on(&r), format!("{name}: counterexample does not replay"))?;
            }
        }
    }
    Ok(format!("{checked} closure states match; rank kernels match to depth 6; counterexamples replay"))
}

/// Shortest length at which `bad` holds for some pair of words, by
/// enumeration up to `max`.
fn shortest_violation(r: &TwoTapeDfa, max: usize, bad: impl Fn(&Word, &Word) -> bool) -> Option<(Word, Word)> {
    for n in 0..=max {
        let words: Vec<Word> = words_of_length(r.base().len(), n).collect();
        for x in &words {
            for y in &words {
                if bad(x, y) {
                    return Some((x.clone(), y.clone()));
                }
            }
        }
    }
    None
}

fn validation_negatives() -> Verdict {
    let mut lines = Vec::new();
    for (name, property) in [
        ("running-reflexive.rel", "reflexive"),
        ("running-transitive.rel", "transitive"),
        ("running-recall.rel", "perfect-recall"),
    ] {
        let o = cli(&["validate", "--json", path(&corpus(name))]);
        ensure(code(&o) == 1, format!("{name}: exit {}", code(&o)))?;
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).map_err(|e| e.to_string())?;
        ensure(v["properties"][property]["holds"] == false, format!("{name}: {property} not rejected"))?;

        let r = relation(name);
        let report = validate(&r);
        let acc = |x: &Word, y: &Word| r.accepts(x, y).unwrap();
        match report.checks().iter().find(|(p, _)| *p == property).unwrap().1.counterexample.clone() {
            Some(Counterexample::Reflexive { history }) => {
                let least = shortest_violation(&r, 4, |x, y| x == y && !acc(x, y)).unwrap();
                ensure(history == least.0, format!("{name}: witness {history:?} not least"))?;
            }
            Some(Counterexample::PerfectRecall { first, second }) => {
                let least = shortest_violation(&r, 4, |x, y| {
                    !x.is_empty() && acc(x, y) && !acc(&x[..x.len() - 1].to_vec(), &y[..y.len() - 1].to_vec())
                })
                .unwrap();
                ensure((first.clone(), second.clone()) == least, format!("{name}: witness not least"))?;
            }
            Some(Counterexample::Transitive { first, middle, last }) => {
                ensure(acc(&first, &middle) && acc(&middle, &last) && !acc(&first, &last), "triple does not replay")?;
                let shortest = (0..=4)
                    .find(|&n| {
                        let words: Vec<Word> = words_of_length(2, n).collect();
                        words.iter().any(|x| {
                            words.iter().any(|y| acc(x, y) && words.iter().any(|z| acc(y, z) && !acc(x, z)))
                        })
                    })
                    .unwrap();
                ensure(first.len() == shortest, format!("{name}: triple of length {} not shortest", first.len()))?;
            }
            other => return Err(format!("{name}: unexpected {other:?}")),
        }
        lines.push(format!("{name} rejected"));
    }
    Ok(lines.join(", "))
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let criteria: Vec<Criterion> = vec![
        ("1 running-example round trip", Box::new(|| running_example_round_trip(dir.path()))),
        ("2 state classification", Box::new(classification)),
        ("3 unbounded branching", Box::new(unboundedness)),
        ("4 exponential family", Box::new(|| exponential_family(dir.path()))),
        ("5 closure worked example", Box::new(worked_closure_example)),
        ("6 randomized property suite", Box::new(property_suite)),
        ("7 oracle agreement", Box::new(oracle_agreement)),
        ("8 validation negatives", Box::new(validation_negatives)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
