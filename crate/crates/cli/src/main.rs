//! `infoquot`: validate indistinguishability relations, decide bounded
//! branching, and convert between Mealy machines and two-tape automata.
//!
//! Exit codes: 0 success, 1 negative answer (invalid, unbounded, not
//! equivalent), 2 usage, parse or resource errors.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use infoquot::io::{export_dot, parse, serialize, Automaton, ParseOptions};
use infoquot::oracle::{enumerate_partition, info_tree, OracleBudget};
use infoquot::{
    decide_bounded_branching, mealy_to_relation, synthesize_mealy, validate, BranchingVerdict, Error, Limits,
    TwoTapeDfa,
};
use serde_json::json;

use report::{pumping_json, report_json, word_list, FORMAT_VERSION};

#[derive(Parser, Debug)]
#[command(name = "infoquot", version, about = "Observation functions and indistinguishability relations")]
struct Cli {
    /// Route missing relation transitions to a fresh rejecting sink.
    #[arg(long, global = true)]
    complete_with_sink: bool,

    /// State budget for subset and closure constructions.
    #[arg(long, global = true, env = "INFOQUOT_MAX_STATES", default_value_t = 1_000_000)]
    max_states: usize,

    /// Depth for `tree` and `oracle-partition`.
    #[arg(long, global = true, default_value_t = 4)]
    depth: usize,

    /// Raise the enumeration budgets of the oracle commands to this depth.
    #[arg(long, global = true)]
    max_depth: Option<usize>,

    /// Print automata and trees in Graphviz DOT.
    #[arg(long, global = true)]
    dot: bool,

    /// Print machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a relation automaton recognises an indistinguishability relation.
    Validate { file: PathBuf },
    /// Convert a Mealy machine to the relation of its observation histories.
    FromMealy {
        file: PathBuf,
        #[arg(short, long)]
        o: Option<PathBuf>,
    },
    /// Synthesize a Mealy machine inducing the given relation.
    ToMealy {
        file: PathBuf,
        #[arg(short, long)]
        o: Option<PathBuf>,
    },
    /// Decide whether the information tree has bounded branching.
    CheckBounded { file: PathBuf },
    /// Minimize a relation automaton.
    Minimize {
        file: PathBuf,
        #[arg(short, long)]
        o: Option<PathBuf>,
    },
    /// Compare the relations of two files.
    Equiv { first: PathBuf, second: PathBuf },
    /// Print the information tree up to `--depth`.
    Tree { file: PathBuf },
    /// Print the information partition per length up to `--depth`.
    OraclePartition { file: PathBuf },
}

/// A completed command: its stdout text and whether the answer was positive.
struct Outcome {
    stdout: String,
    positive: bool,
}

impl Outcome {
    fn yes(stdout: String) -> Self {
        Outcome { stdout, positive: true }
    }

    fn no(stdout: String) -> Self {
        Outcome { stdout, positive: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(if out.positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(cli: &Cli, path: &PathBuf) -> Result<Automaton> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let options = ParseOptions {
        complete_with_sink: cli.complete_with_sink,
    };
    parse(&text, options).with_context(|| path.display().to_string())
}

/// Relations are taken as they are; Mealy machines stand for their relation.
fn load_relation(cli: &Cli, path: &PathBuf) -> Result<TwoTapeDfa> {
    Ok(match load(cli, path)? {
        Automaton::Relation(r) => r,
        Automaton::Mealy(m) => mealy_to_relation(&m),
    })
}

fn emit(cli: &Cli, automaton: &Automaton, out: &Option<PathBuf>, command: &str) -> Result<String> {
    let text = if cli.dot { export_dot(automaton) } else { serialize(automaton) };
    let states = match automaton {
        Automaton::Relation(r) => r.num_states(),
        Automaton::Mealy(m) => m.num_states(),
    };
    match out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            if cli.json {
                let v = json!({
                    "formatVersion": FORMAT_VERSION,
                    "command": command,
                    "kind": automaton.kind(),
                    "states": states,
                    "output": path.display().to_string(),
                });
                Ok(format!("{v:#}\n"))
            } else {
                Ok(String::new())
            }
        }
        None if cli.json => {
            let v = json!({
                "formatVersion": FORMAT_VERSION,
                "command": command,
                "kind": automaton.kind(),
                "states": states,
                "text": text,
            });
            Ok(format!("{v:#}\n"))
        }
        None => Ok(text),
    }
}

fn limits(cli: &Cli) -> Limits {
    Limits {
        max_states: cli.max_states,
    }
}

fn budget(cli: &Cli) -> OracleBudget {
    cli.max_depth.map_or_else(OracleBudget::default, OracleBudget::uniform)
}

/// Validation failures end oracle and synthesis commands with exit 1.
fn require_valid(cli: &Cli, r: &TwoTapeDfa, command: &str) -> Option<Outcome> {
    let report = validate(r);
    if report.is_valid() {
        return None;
    }
    let text = if cli.json {
        let mut v = report_json(&report, r.base());
        v["command"] = json!(command);
        format!("{v:#}\n")
    } else {
        format!("relation is not valid\n{}", report.render(r.base()))
    };
    Some(Outcome::no(text))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate { file } => {
            let r = load_relation(cli, file)?;
            let report = validate(&r);
            let text = if cli.json {
                format!("{:#}\n", report_json(&report, r.base()))
            } else {
                report.render(r.base())
            };
            Ok(Outcome {
                stdout: text,
                positive: report.is_valid(),
            })
        }
        Command::FromMealy { file, o } => {
            let Automaton::Mealy(m) = load(cli, file)? else {
                bail!("{} is not a Mealy machine", file.display());
            };
            let r = mealy_to_relation(&m);
            Ok(Outcome::yes(emit(cli, &Automaton::Relation(r), o, "from-mealy")?))
        }
        Command::ToMealy { file, o } => {
            let r = load_relation(cli, file)?;
            match synthesize_mealy(&r, &limits(cli)) {
                Ok(syn) => Ok(Outcome::yes(emit(cli, &Automaton::Mealy(syn.machine), o, "to-mealy")?)),
                Err(Error::Unrepresentable { witness }) => {
                    eprintln!("relation has unbounded branching; no Mealy machine induces it");
                    eprintln!("{witness}");
                    let text = if cli.json {
                        let v = json!({
                            "formatVersion": FORMAT_VERSION,
                            "command": "to-mealy",
                            "bounded": false,
                            "witness": pumping_json(&witness),
                        });
                        format!("{v:#}\n")
                    } else {
                        String::new()
                    };
                    Ok(Outcome::no(text))
                }
                Err(Error::InvalidRelation { report }) => {
                    eprintln!("relation is not valid");
                    eprint!("{}", report.render(r.base()));
                    Ok(Outcome::no(String::new()))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::CheckBounded { file } => {
            let r = load_relation(cli, file)?;
            if let Some(out) = require_valid(cli, &r, "check-bounded") {
                return Ok(out);
            }
            let analysis = decide_bounded_branching(&r, &limits(cli))?;
            let min = &analysis.minimal;
            let map: Vec<(String, String)> = analysis
                .state_map
                .iter()
                .enumerate()
                .map(|(q, m)| {
                    let target = m.map_or_else(|| "unreachable".to_string(), |s| min.name(s).to_string());
                    (r.name(q).to_string(), target)
                })
                .collect();
            match &analysis.verdict {
                BranchingVerdict::Bounded { bound, max_clique } => {
                    let text = if cli.json {
                        let v = json!({
                            "formatVersion": FORMAT_VERSION,
                            "command": "check-bounded",
                            "bounded": true,
                            "bound": bound,
                            "maxClique": max_clique,
                        });
                        format!("{v:#}\n")
                    } else {
                        format!(
                            "bounded: yes\nbranching bound: {bound}\nmax classes per information set: {max_clique}\n"
                        )
                    };
                    Ok(Outcome::yes(text))
                }
                BranchingVerdict::Unbounded { witness } => {
                    let text = if cli.json {
                        let v = json!({
                            "formatVersion": FORMAT_VERSION,
                            "command": "check-bounded",
                            "bounded": false,
                            "witness": pumping_json(witness),
                            "stateMap": map.iter().map(|(a, b)| json!({"input": a, "minimal": b})).collect::<Vec<_>>(),
                        });
                        format!("{v:#}\n")
                    } else {
                        let mut t = format!("bounded: no\n{witness}\n");
                        t.push_str("witness states are pairs (minimal relation state, representative state)\n");
                        t.push_str("input state -> minimal state:\n");
                        for (a, b) in &map {
                            t.push_str(&format!("  {a} -> {b}\n"));
                        }
                        t
                    };
                    Ok(Outcome::no(text))
                }
            }
        }
        Command::Minimize { file, o } => {
            let r = load_relation(cli, file)?;
            Ok(Outcome::yes(emit(cli, &Automaton::Relation(r.minimize()), o, "minimize")?))
        }
        Command::Equiv { first, second } => {
            let a = load_relation(cli, first)?;
            let b = load_relation(cli, second)?;
            if a.base() != b.base() {
                bail!("alphabets differ: {} vs {}", a.base(), b.base());
            }
            let pair = a.distinguishing_pair(&b)?;
            let text = if cli.json {
                let v = json!({
                    "formatVersion": FORMAT_VERSION,
                    "command": "equiv",
                    "equivalent": pair.is_none(),
                    "pair": pair.as_ref().map(|(x, y)| json!([a.base().format_word(x), a.base().format_word(y)])),
                });
                format!("{v:#}\n")
            } else {
                match &pair {
                    None => "equivalent\n".to_string(),
                    Some(p) => format!(
                        "not equivalent\nshortest distinguishing pair: {}\n",
                        a.format_pair(p)
                    ),
                }
            };
            Ok(Outcome {
                stdout: text,
                positive: pair.is_none(),
            })
        }
        Command::Tree { file } => {
            let r = load_relation(cli, file)?;
            if let Some(out) = require_valid(cli, &r, "tree") {
                return Ok(out);
            }
            let tree = info_tree(&r, cli.depth, &budget(cli))?;
            let base = r.base();
            let text = if cli.json {
                let nodes: Vec<_> = (0..tree.nodes.len())
                    .map(|i| {
                        let n = &tree.nodes[i];
                        json!({
                            "id": i,
                            "length": n.length,
                            "parent": n.parent,
                            "degree": tree.degrees[i],
                            "members": word_list(base, tree.members(i)),
                        })
                    })
                    .collect();
                let v = json!({
                    "formatVersion": FORMAT_VERSION,
                    "command": "tree",
                    "depth": cli.depth,
                    "nodes": nodes,
                });
                format!("{v:#}\n")
            } else if cli.dot {
                report::tree_dot(&tree, base)
            } else {
                let mut t = String::new();
                for (i, n) in tree.nodes.iter().enumerate() {
                    let parent = n.parent.map_or_else(|| "-".to_string(), |p| format!("n{p}"));
                    t.push_str(&format!(
                        "n{i} length={} parent={parent} degree={} members={}\n",
                        n.length,
                        tree.degrees[i],
                        report::brief_class(base, tree.members(i))
                    ));
                }
                t
            };
            Ok(Outcome::yes(text))
        }
        Command::OraclePartition { file } => {
            let r = load_relation(cli, file)?;
            if let Some(out) = require_valid(cli, &r, "oracle-partition") {
                return Ok(out);
            }
            let p = enumerate_partition(&r, cli.depth, &budget(cli))?;
            let base = r.base();
            let text = if cli.json {
                let classes: Vec<Vec<Vec<String>>> = p
                    .classes
                    .iter()
                    .map(|cs| cs.iter().map(|c| word_list(base, c)).collect())
                    .collect();
                let v = json!({
                    "formatVersion": FORMAT_VERSION,
                    "command": "oracle-partition",
                    "depth": p.depth,
                    "classes": classes,
                });
                format!("{v:#}\n")
            } else {
                let mut t = String::new();
                for (len, cs) in p.classes.iter().enumerate() {
                    let parts: Vec<String> = cs.iter().map(|c| format!("{{{}}}", word_list(base, c).join(","))).collect();
                    t.push_str(&format!("length {len}: {}\n", parts.join(" ")));
                }
                t
            };
            Ok(Outcome::yes(text))
        }
    }
}
