//! Synthesis of a Mealy machine whose observation histories induce a given
//! indistinguishability relation.

pub mod closure;
pub mod constraints;
pub mod matrix;

pub use closure::{build_closure, ClosureAutomaton};
pub use constraints::{generate_constraints, solve_constraints, Assignment, ConstraintSet, Var, Witness};
pub use matrix::{successor, transform, MatrixIndexState, StateMatrix};

use crate::alphabet::Alphabet;
use crate::automata::{MealyMachine, TwoTapeDfa};
use crate::error::{Error, Result};
use crate::relation::validate;
use crate::structure::{decide_bounded_branching, BranchingAnalysis, BranchingVerdict};
use crate::Limits;

/// Everything computed on the way to the machine.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub analysis: BranchingAnalysis,
    pub closure: ClosureAutomaton,
    pub constraints: ConstraintSet,
    pub assignment: Assignment,
    pub machine: MealyMachine,
}

/// Validates `r`, decides boundedness, and builds a machine with states
/// `p1, p2, ...` in breadth-first order and observations `1, 2, ...`.
pub fn synthesize_mealy(r: &TwoTapeDfa, limits: &Limits) -> Result<Synthesis> {
    let report = validate(r);
    if !report.is_valid() {
        return Err(Error::InvalidRelation {
            report: Box::new(report),
        });
    }
    let analysis = decide_bounded_branching(r, limits)?;
    if let BranchingVerdict::Unbounded { witness } = &analysis.verdict {
        return Err(Error::Unrepresentable {
            witness: witness.clone(),
        });
    }
    let minimal = &analysis.minimal;
    let closure = build_closure(minimal, limits)?;
    let constraints = generate_constraints(&closure, minimal);
    let assignment = solve_constraints(&constraints)?;

    let k = r.base().len();
    let n = closure.num_states();
    let names: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    let delta = (0..n * k).map(|v| closure.next(v / k, v % k)).collect();
    let machine = MealyMachine::new(
        r.base().clone(),
        Alphabet::numbered(assignment.num_symbols.max(1)),
        names,
        0,
        delta,
        assignment.values.clone(),
    )?;
    Ok(Synthesis {
        analysis,
        closure,
        constraints,
        assignment,
        machine,
    })
}
