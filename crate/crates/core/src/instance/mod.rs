//! Planar Monotone 3-SAT instances: a monotone CNF together with a
//! rectilinear layout (variable intervals on the line y = 0, clause
//! rectangles above or below it, vertical connection legs).

mod generate;
mod layout;
mod sat;

pub use generate::{enumerate_family, GenError, GenParams};
pub use layout::{layout_formula, LayoutError};
pub use sat::{solve_sat, solve_sat_exhaustive, SolveSatError, EXHAUSTIVE_VAR_LIMIT};

use crate::rat::Q;
use crate::report::VerificationReport;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub type VariableId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Polarity {
    #[serde(rename = "pos")]
    Positive,
    #[serde(rename = "neg")]
    Negative,
}

impl Polarity {
    pub fn sign(&self) -> &'static str {
        match self {
            Polarity::Positive => "+",
            Polarity::Negative => "-",
        }
    }
}

/// A monotone clause: all literals unnegated (positive) or all negated
/// (negative). `vars` is kept sorted ascending and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Clause {
    pub id: usize,
    pub polarity: Polarity,
    pub vars: Vec<VariableId>,
}

impl Clause {
    pub fn new(id: usize, polarity: Polarity, mut vars: Vec<VariableId>) -> Self {
        vars.sort_unstable();
        Clause { id, polarity, vars }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    /// True iff the clause is satisfied under the assignment.
    pub fn satisfied_by(&self, a: &Assignment) -> bool {
        match self.polarity {
            Polarity::Positive => self.vars.iter().any(|&v| a.values[v]),
            Polarity::Negative => self.vars.iter().any(|&v| !a.values[v]),
        }
    }
}

/// Axis-parallel clause rectangle, as (x_lo, x_hi, y_lo, y_hi).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect(pub Q, pub Q, pub Q, pub Q);

impl Rect {
    pub fn x_lo(&self) -> Q {
        self.0
    }
    pub fn x_hi(&self) -> Q {
        self.1
    }
    pub fn y_lo(&self) -> Q {
        self.2
    }
    pub fn y_hi(&self) -> Q {
        self.3
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        self.x_lo() <= other.x_hi()
            && other.x_lo() <= self.x_hi()
            && self.y_lo() <= other.y_hi()
            && other.y_lo() <= self.y_hi()
    }

    pub fn contains_x(&self, x: Q) -> bool {
        self.x_lo() <= x && x <= self.x_hi()
    }
}

/// Rectilinear layout: one x-interval per variable at y = 0, one rectangle
/// per clause, and one vertical leg per (clause, member variable).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layout {
    /// Per variable: (x_lo, x_hi) of its interval on the line y = 0.
    pub intervals: Vec<(Q, Q)>,
    /// Per clause id: its rectangle.
    pub rects: Vec<Rect>,
    /// Per clause id: the legs as (variable, x coordinate) pairs.
    pub legs: Vec<Vec<(VariableId, Q)>>,
}

impl Layout {
    pub fn empty(n: usize) -> Self {
        Layout {
            intervals: (0..n)
                .map(|i| (Q::int(3 * i as i64), Q::int(3 * i as i64 + 2)))
                .collect(),
            rects: Vec::new(),
            legs: Vec::new(),
        }
    }

    pub fn leg_x(&self, clause: usize, var: VariableId) -> Option<Q> {
        self.legs
            .get(clause)?
            .iter()
            .find(|(v, _)| *v == var)
            .map(|&(_, x)| x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pm3SatInstance {
    pub n: usize,
    pub clauses: Vec<Clause>,
    pub layout: Layout,
}

/// A total truth assignment over the instance variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn all_false(n: usize) -> Self {
        Assignment {
            values: vec![false; n],
        }
    }

    pub fn from_bits(n: usize, bits: u64) -> Self {
        Assignment {
            values: (0..n).map(|i| bits >> i & 1 == 1).collect(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("instance json: {0}")]
    Json(String),
    #[error("clause {0}: id does not match its position")]
    ClauseIdNotDense(usize),
    #[error("clause {0}: variable {1} out of range (n = {2})")]
    VarOutOfRange(usize, VariableId, usize),
    #[error("clause {0}: vars not strictly ascending")]
    VarsNotSorted(usize),
    #[error("clause {0}: empty")]
    EmptyClause(usize),
}

impl Pm3SatInstance {
    /// Structural counts: (2-literal clauses, 3-literal clauses).
    pub fn clause_profile(&self) -> (usize, usize) {
        let m2 = self.clauses.iter().filter(|c| c.len() == 2).count();
        let m3 = self.clauses.iter().filter(|c| c.len() == 3).count();
        (m2, m3)
    }

    pub fn evaluate(&self, a: &Assignment) -> bool {
        assert_eq!(a.values.len(), self.n, "assignment must be total");
        self.clauses.iter().all(|c| c.satisfied_by(a))
    }

    pub fn encode(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn decode(text: &str) -> Result<Self, DecodeError> {
        let inst: Pm3SatInstance =
            serde_json::from_str(text).map_err(|e| DecodeError::Json(e.to_string()))?;
        for (idx, clause) in inst.clauses.iter().enumerate() {
            if clause.id != idx {
                return Err(DecodeError::ClauseIdNotDense(idx));
            }
            if clause.is_empty() {
                return Err(DecodeError::EmptyClause(idx));
            }
            for &v in &clause.vars {
                if v >= inst.n {
                    return Err(DecodeError::VarOutOfRange(idx, v, inst.n));
                }
            }
            if clause.vars.windows(2).any(|w| w[0] >= w[1]) {
                return Err(DecodeError::VarsNotSorted(idx));
            }
        }
        Ok(inst)
    }

    /// Checks every layout invariant plus arrival-normalization of the
    /// formula. Violations become report findings, never errors.
    pub fn validate(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        self.validate_formula(&mut report);
        self.validate_layout(&mut report);
        report
    }

    fn validate_formula(&self, report: &mut VerificationReport) {
        for clause in &self.clauses {
            if clause.len() < 2 || clause.len() > 3 {
                report.flag(
                    "clause-size",
                    format!(
                        "clause {} has {} literals; laid-out instances must arrive normalized (2..=3)",
                        clause.id,
                        clause.len()
                    ),
                );
            }
            let mut sorted = clause.vars.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != clause.vars.len() {
                report.flag("clause-dup-var", format!("clause {} repeats a variable", clause.id));
            }
            for &v in &clause.vars {
                if v >= self.n {
                    report.flag(
                        "clause-var-range",
                        format!("clause {} uses variable {} >= n = {}", clause.id, v, self.n),
                    );
                }
            }
        }
        for (i, a) in self.clauses.iter().enumerate() {
            for b in &self.clauses[i + 1..] {
                if a.polarity != b.polarity {
                    continue;
                }
                if a.vars == b.vars {
                    report.flag(
                        "clause-duplicate",
                        format!("clauses {} and {} are identical", a.id, b.id),
                    );
                } else if a.vars.iter().all(|v| b.vars.contains(v)) {
                    report.flag(
                        "clause-subsumed",
                        format!("clause {} subsumes clause {}; not normalized", a.id, b.id),
                    );
                } else if b.vars.iter().all(|v| a.vars.contains(v)) {
                    report.flag(
                        "clause-subsumed",
                        format!("clause {} subsumes clause {}; not normalized", b.id, a.id),
                    );
                }
            }
        }
    }

    fn validate_layout(&self, report: &mut VerificationReport) {
        let lay = &self.layout;
        if lay.intervals.len() != self.n {
            report.flag(
                "layout-intervals-count",
                format!("{} intervals for {} variables", lay.intervals.len(), self.n),
            );
            return;
        }
        if lay.rects.len() != self.clauses.len() || lay.legs.len() != self.clauses.len() {
            report.flag(
                "layout-clause-count",
                format!(
                    "{} rects / {} leg groups for {} clauses",
                    lay.rects.len(),
                    lay.legs.len(),
                    self.clauses.len()
                ),
            );
            return;
        }
        for (i, &(lo, hi)) in lay.intervals.iter().enumerate() {
            if lo >= hi {
                report.flag(
                    "interval-degenerate",
                    format!("variable {} interval [{}, {}] is empty", i, lo, hi),
                );
            }
        }
        // Intervals must be pairwise disjoint and follow the variable order.
        for i in 1..self.n {
            let (_, prev_hi) = lay.intervals[i - 1];
            let (lo, _) = lay.intervals[i];
            if prev_hi >= lo {
                report.flag(
                    "intervals-overlap",
                    format!(
                        "intervals of variables {} and {} overlap or are out of order ({} >= {})",
                        i - 1,
                        i,
                        prev_hi,
                        lo
                    ),
                );
            }
        }
        // Clause rectangles are pairwise disjoint and on the correct side.
        for clause in &self.clauses {
            let r = &lay.rects[clause.id];
            if r.x_lo() >= r.x_hi() || r.y_lo() >= r.y_hi() {
                report.flag(
                    "rect-degenerate",
                    format!("clause {} rectangle has empty extent", clause.id),
                );
            }
            match clause.polarity {
                Polarity::Positive if !r.y_lo().is_positive() => report.flag(
                    "rect-side",
                    format!("positive clause {} rectangle not strictly in y > 0", clause.id),
                ),
                Polarity::Negative if !r.y_hi().is_negative() => report.flag(
                    "rect-side",
                    format!("negative clause {} rectangle not strictly in y < 0", clause.id),
                ),
                _ => {}
            }
        }
        for (i, a) in self.clauses.iter().enumerate() {
            for b in &self.clauses[i + 1..] {
                if lay.rects[a.id].intersects(&lay.rects[b.id]) {
                    report.flag(
                        "rects-overlap",
                        format!("rectangles of clauses {} and {} intersect", a.id, b.id),
                    );
                }
            }
        }
        // Legs: one per clause member, x inside both the interval and the
        // rectangle, distinct x within a clause, crossing nothing.
        for clause in &self.clauses {
            let legs = &lay.legs[clause.id];
            let mut leg_vars: Vec<VariableId> = legs.iter().map(|&(v, _)| v).collect();
            leg_vars.sort_unstable();
            let mut want = clause.vars.clone();
            want.sort_unstable();
            if leg_vars != want {
                report.flag(
                    "legs-cover",
                    format!("clause {} legs do not cover exactly its variables", clause.id),
                );
                continue;
            }
            let rect = &lay.rects[clause.id];
            for &(v, x) in legs {
                let (lo, hi) = lay.intervals[v];
                if x < lo || x > hi {
                    report.flag(
                        "leg-outside-interval",
                        format!("clause {} leg at variable {} has x = {} outside [{}, {}]", clause.id, v, x, lo, hi),
                    );
                }
                if !rect.contains_x(x) {
                    report.flag(
                        "leg-outside-rect",
                        format!("clause {} leg at variable {} has x = {} outside its rectangle", clause.id, v, x),
                    );
                }
            }
            for (k, &(_, x1)) in legs.iter().enumerate() {
                for &(_, x2) in &legs[k + 1..] {
                    if x1 == x2 {
                        report.flag(
                            "legs-same-x",
                            format!("clause {} has two legs at x = {}", clause.id, x1),
                        );
                    }
                }
            }
            // The open leg segment runs from y = 0 to the rectangle edge
            // facing the line; it must not meet any other rectangle.
            let y_reach = match clause.polarity {
                Polarity::Positive => rect.y_lo(),
                Polarity::Negative => rect.y_hi(),
            };
            for other in &self.clauses {
                if other.id == clause.id {
                    continue;
                }
                let o = &lay.rects[other.id];
                for &(v, x) in legs {
                    if !o.contains_x(x) {
                        continue;
                    }
                    let hit = match clause.polarity {
                        Polarity::Positive => o.y_lo() < y_reach && o.y_hi().is_positive(),
                        Polarity::Negative => o.y_hi() > y_reach && o.y_lo().is_negative(),
                    };
                    if hit {
                        report.flag(
                            "leg-through-rect",
                            format!(
                                "clause {} leg at variable {} (x = {}) passes through rectangle of clause {}",
                                clause.id, v, x, other.id
                            ),
                        );
                    }
                }
            }
        }
        // Same-side legs share the segment near y = 0, so they must have
        // pairwise distinct x; opposite sides only meet at the line itself.
        let mut by_side: BTreeMap<(Polarity, VariableId), Vec<(usize, Q)>> = BTreeMap::new();
        for clause in &self.clauses {
            for &(v, x) in &lay.legs[clause.id] {
                by_side
                    .entry((clause.polarity, v))
                    .or_default()
                    .push((clause.id, x));
            }
        }
        for clause in &self.clauses {
            for other in &self.clauses {
                if other.id <= clause.id || other.polarity != clause.polarity {
                    continue;
                }
                for &(v1, x1) in &lay.legs[clause.id] {
                    for &(v2, x2) in &lay.legs[other.id] {
                        if x1 == x2 {
                            report.flag(
                                "legs-cross",
                                format!(
                                    "same-side legs of clauses {} (variable {}) and {} (variable {}) share x = {}",
                                    clause.id, v1, other.id, v2, x1
                                ),
                            );
                        }
                    }
                }
            }
        }
    }

    /// Observation-style pair condition: any two literals appear together in
    /// at most two clauses, and when two such clauses exist both carry a
    /// third literal.
    pub fn check_pair_condition(&self) -> VerificationReport {
        check_pair_condition_of(&self.clauses)
    }
}

pub fn check_pair_condition_of(clauses: &[Clause]) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut pairs: BTreeMap<(Polarity, VariableId, VariableId), Vec<usize>> = BTreeMap::new();
    for clause in clauses {
        for (i, &a) in clause.vars.iter().enumerate() {
            for &b in &clause.vars[i + 1..] {
                let key = (clause.polarity, a.min(b), a.max(b));
                pairs.entry(key).or_default().push(clause.id);
            }
        }
    }
    for ((pol, a, b), ids) in pairs {
        if ids.len() > 2 {
            report.flag(
                "pair-overused",
                format!(
                    "literal pair {}x{} {}x{} appears in {} clauses {:?}",
                    pol.sign(),
                    a,
                    pol.sign(),
                    b,
                    ids.len(),
                    ids
                ),
            );
        } else if ids.len() == 2 {
            for &id in &ids {
                let clause = clauses.iter().find(|c| c.id == id).expect("clause id");
                if clause.len() < 3 {
                    report.flag(
                        "pair-no-third-literal",
                        format!(
                            "literal pair {}x{} {}x{} shared by clauses {:?} but clause {} has no third literal",
                            pol.sign(),
                            a,
                            pol.sign(),
                            b,
                            ids,
                            id
                        ),
                    );
                }
            }
        }
    }
    report
}

/// Result of the pre-layout normalization pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeOutcome {
    Normalized {
        clauses: Vec<Clause>,
        /// Assignments forced by unit elimination, in derivation order.
        forced: Vec<(VariableId, bool)>,
    },
    /// Unit propagation derived both x and its negation.
    ForcedUnsat,
}

/// Normalizes an abstract monotone formula: eliminates 1-literal clauses by
/// unit propagation, drops duplicates, and drops any clause containing
/// another clause of the same polarity. Operates before any layout exists;
/// unit elimination changes the incidence structure, so laid-out instances
/// must arrive already normalized.
pub fn normalize(formula: &[Clause], n: usize) -> NormalizeOutcome {
    let mut clauses: Vec<(Polarity, Vec<VariableId>)> = formula
        .iter()
        .map(|c| {
            let mut vars = c.vars.clone();
            vars.sort_unstable();
            vars.dedup();
            (c.polarity, vars)
        })
        .collect();
    let mut forced: Vec<(VariableId, bool)> = Vec::new();
    let mut assigned: Vec<Option<bool>> = vec![None; n];

    // Unit propagation. A positive unit forces true, a negative unit false.
    loop {
        let unit = clauses.iter().position(|(_, vars)| vars.len() == 1);
        let Some(idx) = unit else { break };
        let (pol, vars) = clauses[idx].clone();
        let v = vars[0];
        let value = pol == Polarity::Positive;
        match assigned[v] {
            Some(prev) if prev != value => return NormalizeOutcome::ForcedUnsat,
            Some(_) => {
                clauses.remove(idx);
                continue;
            }
            None => {
                assigned[v] = Some(value);
                forced.push((v, value));
            }
        }
        let mut next = Vec::with_capacity(clauses.len());
        for (pol2, vars2) in clauses {
            let satisfied = (pol2 == Polarity::Positive) == value && vars2.contains(&v);
            if satisfied {
                continue;
            }
            let vars2: Vec<_> = vars2.into_iter().filter(|&u| u != v).collect();
            if vars2.is_empty() {
                return NormalizeOutcome::ForcedUnsat;
            }
            next.push((pol2, vars2));
        }
        clauses = next;
    }

    // Duplicate elimination.
    let mut seen: Vec<(Polarity, Vec<VariableId>)> = Vec::new();
    for c in clauses {
        if !seen.contains(&c) {
            seen.push(c);
        }
    }
    // Subsumption: drop any clause strictly containing another clause of the
    // same polarity.
    let kept: Vec<(Polarity, Vec<VariableId>)> = seen
        .iter()
        .filter(|(pol, vars)| {
            !seen.iter().any(|(pol2, vars2)| {
                pol2 == pol && vars2.len() < vars.len() && vars2.iter().all(|v| vars.contains(v))
            })
        })
        .cloned()
        .collect();

    NormalizeOutcome::Normalized {
        clauses: kept
            .into_iter()
            .enumerate()
            .map(|(id, (polarity, vars))| Clause { id, polarity, vars })
            .collect(),
        forced,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::u3_instance;

    fn clause(id: usize, pol: Polarity, vars: &[usize]) -> Clause {
        Clause::new(id, pol, vars.to_vec())
    }

    #[test]
    fn validate_passes_trivial_instance() {
        let inst = Pm3SatInstance {
            n: 1,
            clauses: vec![],
            layout: Layout::empty(1),
        };
        assert!(inst.validate().passed());
    }

    #[test]
    fn validate_rejects_overlapping_intervals() {
        let mut inst = Pm3SatInstance {
            n: 2,
            clauses: vec![],
            layout: Layout::empty(2),
        };
        inst.layout.intervals[1] = (Q::int(1), Q::int(4));
        let report = inst.validate();
        assert!(!report.passed());
        assert!(report.findings.iter().any(|f| f.code == "intervals-overlap"));
    }

    #[test]
    fn validate_passes_u3() {
        let inst = u3_instance();
        let report = inst.validate();
        assert!(report.passed(), "U3 must validate: {report}");
        assert!(inst.check_pair_condition().passed());
    }

    #[test]
    fn pair_condition_cases() {
        // A single 2-clause passes.
        let f = vec![clause(0, Polarity::Positive, &[0, 1])];
        assert!(check_pair_condition_of(&f).passed());
        // A pair shared by a 2-clause and a 3-clause is the disallowed
        // pattern: the 2-clause lacks a third literal.
        let f = vec![
            clause(0, Polarity::Positive, &[0, 1]),
            clause(1, Polarity::Positive, &[0, 1, 2]),
        ];
        assert!(!check_pair_condition_of(&f).passed());
        // Two 3-clauses sharing a pair both carry a third literal.
        let f = vec![
            clause(0, Polarity::Positive, &[0, 1, 2]),
            clause(1, Polarity::Positive, &[0, 1, 3]),
        ];
        assert!(check_pair_condition_of(&f).passed());
    }

    #[test]
    fn normalize_detects_forced_unsat() {
        let f = vec![
            clause(0, Polarity::Positive, &[0]),
            clause(1, Polarity::Negative, &[0]),
        ];
        assert_eq!(normalize(&f, 1), NormalizeOutcome::ForcedUnsat);
    }

    #[test]
    fn normalize_subsumes_superset_clause() {
        let f = vec![
            clause(0, Polarity::Positive, &[0, 1]),
            clause(1, Polarity::Positive, &[0, 1, 2]),
        ];
        match normalize(&f, 3) {
            NormalizeOutcome::Normalized { clauses, forced } => {
                assert_eq!(clauses.len(), 1);
                assert_eq!(clauses[0].vars, vec![0, 1]);
                assert!(forced.is_empty());
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn normalize_unit_then_subsumption() {
        let f = vec![
            clause(0, Polarity::Positive, &[0]),
            clause(1, Polarity::Positive, &[0, 1]),
        ];
        match normalize(&f, 2) {
            NormalizeOutcome::Normalized { clauses, forced } => {
                assert!(clauses.is_empty());
                assert_eq!(forced, vec![(0, true)]);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn normalize_is_idempotent_on_samples() {
        let samples = vec![
            vec![
                clause(0, Polarity::Positive, &[0, 1]),
                clause(1, Polarity::Negative, &[0, 1]),
                clause(2, Polarity::Positive, &[0, 1, 2]),
            ],
            vec![
                clause(0, Polarity::Positive, &[0]),
                clause(1, Polarity::Negative, &[1, 2]),
            ],
        ];
        for f in samples {
            if let NormalizeOutcome::Normalized { clauses, .. } = normalize(&f, 3) {
                match normalize(&clauses, 3) {
                    NormalizeOutcome::Normalized { clauses: again, .. } => {
                        assert_eq!(clauses, again)
                    }
                    _ => panic!("second pass must stay normalized"),
                }
            }
        }
    }

    #[test]
    fn evaluate_cases() {
        let inst = Pm3SatInstance {
            n: 2,
            clauses: vec![],
            layout: Layout::empty(2),
        };
        assert!(inst.evaluate(&Assignment::all_false(2)));

        let inst = Pm3SatInstance {
            n: 2,
            clauses: vec![clause(0, Polarity::Positive, &[0, 1])],
            layout: Layout::empty(2),
        };
        // Layout is not consulted by evaluate.
        assert!(!inst.evaluate(&Assignment::all_false(2)));
        assert!(inst.evaluate(&Assignment::from_bits(2, 0b01)));
    }

    #[test]
    fn u3_is_unsatisfiable_by_exhaustion() {
        let inst = u3_instance();
        for bits in 0..8u64 {
            assert!(!inst.evaluate(&Assignment::from_bits(3, bits)));
        }
    }

    #[test]
    fn decode_rejects_truncated_text() {
        let err = Pm3SatInstance::decode("{\"n\": 2, \"clauses\": []}").unwrap_err();
        match err {
            DecodeError::Json(msg) => assert!(msg.contains("layout"), "message names the missing field: {msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn decode_rejects_unknown_fields() {
        let mut text = u3_instance().encode();
        text = text.replacen("\"n\"", "\"extra\": 1, \"n\"", 1);
        assert!(matches!(
            Pm3SatInstance::decode(&text),
            Err(DecodeError::Json(_))
        ));
    }

    #[test]
    fn round_trip_u3_and_empty() {
        let inst = u3_instance();
        assert_eq!(Pm3SatInstance::decode(&inst.encode()).unwrap(), inst);
        let empty = Pm3SatInstance {
            n: 2,
            clauses: vec![],
            layout: Layout::empty(2),
        };
        assert_eq!(Pm3SatInstance::decode(&empty.encode()).unwrap(), empty);
    }
}
