//! Satisfiability oracle for monotone formulas: a small DPLL with unit
//! propagation as the default route, plus an exhaustive mode used to
//! cross-check it on small instances.

use super::{Assignment, Clause, Pm3SatInstance, Polarity, VariableId};
use thiserror::Error;

/// Exhaustive search is capped here; DPLL handles anything larger.
pub const EXHAUSTIVE_VAR_LIMIT: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveSatError {
    #[error("exhaustive mode limited to {EXHAUSTIVE_VAR_LIMIT} variables, got {0}")]
    TooManyVariables(usize),
}

/// Finds a satisfying assignment via DPLL, or proves there is none.
/// Deterministic: branches on the lowest unassigned variable, false first,
/// so the returned witness is stable across runs.
pub fn solve_sat(inst: &Pm3SatInstance) -> Option<Assignment> {
    let mut values: Vec<Option<bool>> = vec![None; inst.n];
    if dpll(&inst.clauses, &mut values) {
        Some(Assignment {
            values: values.into_iter().map(|v| v.unwrap_or(false)).collect(),
        })
    } else {
        None
    }
}

fn clause_state(clause: &Clause, values: &[Option<bool>]) -> ClauseState {
    let want = clause.polarity == Polarity::Positive;
    let mut unassigned = None;
    let mut unassigned_count = 0;
    for &v in &clause.vars {
        match values[v] {
            Some(val) if val == want => return ClauseState::Satisfied,
            Some(_) => {}
            None => {
                unassigned = Some(v);
                unassigned_count += 1;
            }
        }
    }
    match unassigned_count {
        0 => ClauseState::Falsified,
        1 => ClauseState::Unit(unassigned.unwrap()),
        _ => ClauseState::Open,
    }
}

enum ClauseState {
    Satisfied,
    Falsified,
    Unit(VariableId),
    Open,
}

fn dpll(clauses: &[Clause], values: &mut Vec<Option<bool>>) -> bool {
    // Unit propagation to fixpoint.
    let mut trail: Vec<VariableId> = Vec::new();
    loop {
        let mut unit = None;
        for clause in clauses {
            match clause_state(clause, values) {
                ClauseState::Falsified => {
                    for v in trail {
                        values[v] = None;
                    }
                    return false;
                }
                ClauseState::Unit(v) => {
                    unit = Some((v, clause.polarity == Polarity::Positive));
                    break;
                }
                _ => {}
            }
        }
        match unit {
            Some((v, val)) => {
                values[v] = Some(val);
                trail.push(v);
            }
            None => break,
        }
    }
    let branch = (0..values.len()).find(|&v| values[v].is_none());
    let result = match branch {
        None => true,
        Some(v) => {
            let mut ok = false;
            for &val in &[false, true] {
                values[v] = Some(val);
                if dpll(clauses, values) {
                    ok = true;
                    break;
                }
                values[v] = None;
            }
            ok
        }
    };
    if !result {
        for v in trail {
            values[v] = None;
        }
    }
    result
}

/// Exhaustive truth-table search; the independent oracle for the DPLL route.
pub fn solve_sat_exhaustive(inst: &Pm3SatInstance) -> Result<Option<Assignment>, SolveSatError> {
    if inst.n > EXHAUSTIVE_VAR_LIMIT {
        return Err(SolveSatError::TooManyVariables(inst.n));
    }
    for bits in 0u64..(1u64 << inst.n) {
        let a = Assignment::from_bits(inst.n, bits);
        if inst.evaluate(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}
