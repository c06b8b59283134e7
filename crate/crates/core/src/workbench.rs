//! End-to-end pipelines and the claim-verification harness.
//!
//! A pipeline run takes a validated instance through: reduction build,
//! natural embedding, certification, protected triangulation,
//! triangulation verification, exact solving on the triangulated graph,
//! and a SAT check of the instance itself. The claim verdict is the
//! biconditional "optimum <= n iff satisfiable"; the structural lower
//! bound "optimum >= n" is asserted unconditionally.

use crate::embed::{natural_embedding_dom, natural_embedding_pdom, EmbedError};
use crate::instance::{
    generate, solve_sat, Assignment, Clause, GenError, GenParams, Layout, Pm3SatInstance, Polarity,
};
use crate::planegraph::PlaneGraph;
use crate::reductions::{build_dom, build_pdom, BuildError};
use crate::solvers::{
    is_power_dominating, min_dominating, min_power_dominating, two_step_saturation, SolveOutcome,
    SolverError, VertexSet,
};
use crate::triangulate::{triangulate_protected, verify_triangulation, TriangulateError};
use std::fmt::Write as _;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Dom,
    Pdom,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Dom => "dom",
            Mode::Pdom => "pdom",
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("validate: instance failed validation:\n{0}")]
    Validation(String),
    #[error("build: {0}")]
    Build(#[from] BuildError),
    #[error("embed: {0}")]
    Embed(#[from] EmbedError),
    #[error("certify/triangulate: {0}")]
    Triangulate(#[from] TriangulateError),
    #[error("verify-triangulation failed:\n{0}")]
    TriangulationVerdict(String),
    #[error("solve: {0}")]
    Solve(#[from] SolverError),
}

/// Everything a pipeline run measured and decided.
#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub mode: Mode,
    pub n: usize,
    pub m2: usize,
    pub m3: usize,
    pub vertices: usize,
    pub edges_before: usize,
    pub edges_after: usize,
    pub protected_size: usize,
    pub certified: bool,
    pub triangulation_ok: bool,
    pub used_fallback: bool,
    pub satisfiable: bool,
    /// Optimum at budget n (+1 confirmation step when exceeded).
    pub optimum: SolveOutcome,
    pub strictly_above: Option<bool>,
    pub lower_bound_ok: bool,
    /// Power domination only: a size-n witness built from a satisfying
    /// assignment saturates in two steps.
    pub two_step: Option<bool>,
    pub claim_holds: bool,
    /// Wall-clock milliseconds per stage; excluded from the canonical
    /// summary so repeated runs stay byte-identical.
    pub timings_ms: Vec<(&'static str, u128)>,
}

impl PipelineResult {
    /// Canonical machine-parseable summary, stable across runs.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "mode={} n={} m2={} m3={} vertices={} edges_before={} edges_after={} protected={} \
             certified={} triangulated={} fallback={} sat={} optimum={} lower_bound_ok={} claim={}",
            self.mode.name(),
            self.n,
            self.m2,
            self.m3,
            self.vertices,
            self.edges_before,
            self.edges_after,
            self.protected_size,
            self.certified,
            self.triangulation_ok,
            self.used_fallback,
            self.satisfiable,
            match &self.optimum {
                SolveOutcome::Exact { size, .. } => size.to_string(),
                SolveOutcome::ExceedsBudget { budget } => format!(">{budget}"),
            },
            self.lower_bound_ok,
            self.claim_holds,
        );
        if let Some(ts) = self.two_step {
            let _ = write!(s, " two_step={ts}");
        }
        s
    }
}

fn precheck(inst: &Pm3SatInstance) -> Result<(), PipelineError> {
    let report = inst.validate();
    if !report.passed() {
        return Err(PipelineError::Validation(report.to_string()));
    }
    let pairs = inst.check_pair_condition();
    if !pairs.passed() {
        return Err(PipelineError::Validation(pairs.to_string()));
    }
    Ok(())
}

/// The witness the equivalence proof constructs from a satisfying
/// assignment: the true literal vertex per variable.
fn assignment_witness_dom(
    red: &crate::reductions::DomReduction,
    a: &Assignment,
    total: usize,
) -> VertexSet {
    VertexSet::from_iter(
        total,
        red.vars.iter().enumerate().map(|(i, g)| {
            if a.values[i] {
                g.v
            } else {
                g.vbar
            }
        }),
    )
}

fn assignment_witness_pdom(
    red: &crate::reductions::PdomReduction,
    a: &Assignment,
    total: usize,
) -> VertexSet {
    VertexSet::from_iter(
        total,
        red.vars.iter().enumerate().map(|(i, g)| {
            if a.values[i] {
                g.v
            } else {
                g.vbar
            }
        }),
    )
}

pub fn run_dom_pipeline(inst: &Pm3SatInstance) -> Result<PipelineResult, PipelineError> {
    run_pipeline(inst, Mode::Dom)
}

pub fn run_pdom_pipeline(inst: &Pm3SatInstance) -> Result<PipelineResult, PipelineError> {
    run_pipeline(inst, Mode::Pdom)
}

pub fn run_pipeline(inst: &Pm3SatInstance, mode: Mode) -> Result<PipelineResult, PipelineError> {
    precheck(inst)?;
    let mut timings: Vec<(&'static str, u128)> = Vec::new();
    let clock = Instant::now();

    enum Red {
        Dom(crate::reductions::DomReduction),
        Pdom(crate::reductions::PdomReduction),
    }
    let red = match mode {
        Mode::Dom => Red::Dom(build_dom(inst)?),
        Mode::Pdom => Red::Pdom(build_pdom(inst)?),
    };
    timings.push(("build", clock.elapsed().as_millis()));

    let clock = Instant::now();
    let (embedded, protected) = match &red {
        Red::Dom(r) => (natural_embedding_dom(inst, r)?, r.protected.clone()),
        Red::Pdom(r) => (natural_embedding_pdom(inst, r)?, r.protected.clone()),
    };
    timings.push(("embed", clock.elapsed().as_millis()));

    let clock = Instant::now();
    let tri = triangulate_protected(&embedded, &protected)?;
    let verdict = verify_triangulation(&embedded, &tri.graph, &protected);
    if !verdict.passed() {
        return Err(PipelineError::TriangulationVerdict(verdict.to_string()));
    }
    timings.push(("triangulate", clock.elapsed().as_millis()));

    let clock = Instant::now();
    let sat = solve_sat(inst);
    timings.push(("sat", clock.elapsed().as_millis()));

    let n = inst.n;
    let clock = Instant::now();
    let optimum = match &red {
        Red::Dom(_) => min_dominating(&tri.graph, Some(n))?,
        Red::Pdom(r) => {
            let necessity = r.necessity_sets();
            min_power_dominating(&tri.graph, Some(n), Some(&necessity))?
        }
    };
    // When the budget is exceeded, confirm strictness one step higher.
    let strictly_above = match &optimum {
        SolveOutcome::ExceedsBudget { .. } => {
            let confirm = match &red {
                Red::Dom(_) => min_dominating(&tri.graph, Some(n + 1))?,
                Red::Pdom(r) => {
                    let necessity = r.necessity_sets();
                    min_power_dominating(&tri.graph, Some(n + 1), Some(&necessity))?
                }
            };
            Some(match confirm {
                SolveOutcome::Exact { size, .. } => size == n + 1,
                SolveOutcome::ExceedsBudget { .. } => true,
            })
        }
        SolveOutcome::Exact { .. } => None,
    };
    timings.push(("solve", clock.elapsed().as_millis()));

    // The structural lower bound holds regardless of satisfiability.
    let lower_bound_ok = match &optimum {
        SolveOutcome::Exact { size, .. } => *size >= n,
        SolveOutcome::ExceedsBudget { .. } => true,
    };
    let within = optimum.size_within(n);
    let claim_holds = within == sat.is_some() && lower_bound_ok;

    // Power domination: a satisfying assignment yields a witness that
    // saturates after one closed-neighborhood step plus one propagation
    // round.
    let two_step = match (&red, &sat) {
        (Red::Pdom(r), Some(a)) => {
            let witness = assignment_witness_pdom(r, a, tri.graph.vertex_count());
            Some(
                is_power_dominating(&tri.graph, &witness)
                    && two_step_saturation(&tri.graph, &witness),
            )
        }
        _ => None,
    };
    // Domination side: the assignment witness must dominate.
    if let (Red::Dom(r), Some(a)) = (&red, &sat) {
        let witness = assignment_witness_dom(r, a, tri.graph.vertex_count());
        debug_assert!(crate::solvers::is_dominating(&tri.graph, &witness));
    }

    let (m2, m3) = inst.clause_profile();
    Ok(PipelineResult {
        mode,
        n,
        m2,
        m3,
        vertices: tri.graph.vertex_count(),
        edges_before: embedded.edge_count(),
        edges_after: tri.graph.edge_count(),
        protected_size: protected.len(),
        certified: true,
        triangulation_ok: true,
        used_fallback: tri.used_fallback,
        satisfiable: sat.is_some(),
        optimum,
        strictly_above,
        lower_bound_ok,
        two_step,
        claim_holds,
        timings_ms: timings,
    })
}

/// Triangulated graphs of both reductions, for callers that want the
/// artifacts rather than the verdicts.
pub fn embed_and_triangulate(
    inst: &Pm3SatInstance,
    mode: Mode,
) -> Result<(PlaneGraph, PlaneGraph, VertexSet), PipelineError> {
    precheck(inst)?;
    let (embedded, protected) = match mode {
        Mode::Dom => {
            let r = build_dom(inst)?;
            (natural_embedding_dom(inst, &r)?, r.protected.clone())
        }
        Mode::Pdom => {
            let r = build_pdom(inst)?;
            (natural_embedding_pdom(inst, &r)?, r.protected.clone())
        }
    };
    let tri = triangulate_protected(&embedded, &protected)?;
    Ok((embedded, tri.graph, protected))
}

#[derive(Debug, Clone)]
pub struct BatchSummary {
    pub count: usize,
    pub claims_held: usize,
    pub failures: Vec<String>,
    pub lines: Vec<String>,
}

impl BatchSummary {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty() && self.claims_held == 2 * self.count
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            let _ = writeln!(out, "{line}");
        }
        let _ = writeln!(
            out,
            "batch count={} claims_held={} failures={}",
            self.count,
            self.claims_held,
            self.failures.len()
        );
        out
    }
}

#[derive(Debug, Error)]
pub enum BatchError {
    #[error("generation failed: {0}")]
    Gen(#[from] GenError),
}

/// Generates `count` instances and runs both pipelines on each. Failures
/// are findings, not errors; with `replay_dir` set, each failing instance
/// and its graphs are written out for deterministic replay.
pub fn batch_verify(
    max_n: usize,
    max_m: usize,
    seed: u64,
    count: usize,
    replay_dir: Option<&std::path::Path>,
) -> Result<BatchSummary, BatchError> {
    let mut summary = BatchSummary {
        count,
        claims_held: 0,
        failures: Vec::new(),
        lines: Vec::new(),
    };
    for idx in 0..count {
        let params = GenParams::new(
            1 + (idx % max_n.max(1)),
            idx % (max_m + 1),
            seed.wrapping_add(idx as u64),
        );
        let inst = generate(&params)?;
        for mode in [Mode::Dom, Mode::Pdom] {
            match run_pipeline(&inst, mode) {
                Ok(result) => {
                    summary.lines.push(format!("instance={idx} {}", result.summary()));
                    if result.claim_holds && result.two_step != Some(false) {
                        summary.claims_held += 1;
                    } else {
                        summary
                            .failures
                            .push(format!("instance={idx} mode={}: claim failed", mode.name()));
                        dump_replay(replay_dir, idx, mode, &inst);
                    }
                }
                Err(err) => {
                    summary.lines.push(format!(
                        "instance={idx} mode={} error={err}",
                        mode.name()
                    ));
                    summary
                        .failures
                        .push(format!("instance={idx} mode={}: {err}", mode.name()));
                    dump_replay(replay_dir, idx, mode, &inst);
                }
            }
        }
    }
    Ok(summary)
}

fn dump_replay(dir: Option<&std::path::Path>, idx: usize, mode: Mode, inst: &Pm3SatInstance) {
    let Some(dir) = dir else { return };
    let _ = std::fs::create_dir_all(dir);
    let base = dir.join(format!("instance-{idx}-{}", mode.name()));
    let _ = std::fs::write(base.with_extension("instance.json"), inst.encode());
    if let Ok((before, after, _)) = embed_and_triangulate(inst, mode) {
        let _ = std::fs::write(base.with_extension("before.json"), before.to_json());
        let _ = std::fs::write(base.with_extension("after.json"), after.to_json());
    }
}

/// The unsatisfiable 3-variable fixture: all three positive 2-clauses and
/// all three negative 2-clauses over {x0, x1, x2}. The positive side forces
/// at least two true variables, the negative side at least two false.
pub fn u3_formula() -> Vec<Clause> {
    vec![
        Clause::new(0, Polarity::Positive, vec![0, 1]),
        Clause::new(1, Polarity::Positive, vec![1, 2]),
        Clause::new(2, Polarity::Positive, vec![0, 2]),
        Clause::new(3, Polarity::Negative, vec![0, 1]),
        Clause::new(4, Polarity::Negative, vec![1, 2]),
        Clause::new(5, Polarity::Negative, vec![0, 2]),
    ]
}

pub fn u3_instance() -> Pm3SatInstance {
    let clauses = u3_formula();
    let layout = crate::instance::layout_formula(&clauses, 3)
        .expect("the U3 formula admits the nested layout");
    Pm3SatInstance {
        n: 3,
        clauses,
        layout,
    }
}

/// U3 with the negative clause on {x1, x2} removed; satisfiable.
pub fn u3_minus_one_clause() -> Pm3SatInstance {
    let mut clauses = u3_formula();
    clauses.remove(4);
    for (id, c) in clauses.iter_mut().enumerate() {
        c.id = id;
    }
    let layout = crate::instance::layout_formula(&clauses, 3).expect("layoutable");
    Pm3SatInstance {
        n: 3,
        clauses,
        layout,
    }
}

/// A bare instance without layout, for the abstract-formula operations.
pub fn bare_instance(n: usize, clauses: Vec<Clause>) -> Pm3SatInstance {
    Pm3SatInstance {
        n,
        clauses,
        layout: Layout::empty(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u3_layout_nests_the_spanning_rectangles() {
        let inst = u3_instance();
        assert!(inst.validate().passed());
        // The {x0, x2} rectangles sit above/below the adjacent-pair ones.
        let r01 = &inst.layout.rects[0];
        let r02 = &inst.layout.rects[2];
        assert!(r02.y_lo() > r01.y_hi());
    }

    #[test]
    fn dom_pipeline_single_variable() {
        let inst = bare_instance(1, vec![]);
        let inst = Pm3SatInstance {
            layout: crate::instance::layout_formula(&inst.clauses, 1).unwrap(),
            ..inst
        };
        let r = run_dom_pipeline(&inst).unwrap();
        assert!(r.claim_holds);
        assert!(r.satisfiable);
        assert_eq!(r.optimum.exact_size(), Some(1));
    }

    #[test]
    fn pdom_pipeline_single_variable_two_step() {
        let inst = Pm3SatInstance {
            n: 1,
            clauses: vec![],
            layout: crate::instance::layout_formula(&[], 1).unwrap(),
        };
        let r = run_pdom_pipeline(&inst).unwrap();
        assert!(r.claim_holds);
        assert_eq!(r.optimum.exact_size(), Some(1));
        assert_eq!(r.two_step, Some(true));
    }

    #[test]
    fn dom_pipeline_u3() {
        let r = run_dom_pipeline(&u3_instance()).unwrap();
        assert!(!r.satisfiable);
        assert!(matches!(r.optimum, SolveOutcome::ExceedsBudget { budget: 3 }));
        assert_eq!(r.strictly_above, Some(true));
        assert!(r.claim_holds);
        assert_eq!(r.vertices, 24);
        assert_eq!(r.edges_before, 48);
        assert_eq!(r.edges_after, 66);
        assert!(!r.used_fallback);
    }

    #[test]
    fn dom_pipeline_u3_minus_one() {
        let r = run_dom_pipeline(&u3_minus_one_clause()).unwrap();
        assert!(r.satisfiable);
        assert_eq!(r.optimum.exact_size(), Some(3));
        assert!(r.claim_holds);
    }

    #[test]
    fn pdom_pipeline_u3() {
        let r = run_pdom_pipeline(&u3_instance()).unwrap();
        assert!(!r.satisfiable);
        assert!(matches!(r.optimum, SolveOutcome::ExceedsBudget { budget: 3 }));
        assert!(r.claim_holds);
        assert_eq!(r.vertices, 42);
        assert_eq!(r.edges_before, 102);
        assert_eq!(r.edges_after, 3 * 42 - 6);
    }

    #[test]
    fn pdom_pipeline_u3_minus_one() {
        let r = run_pdom_pipeline(&u3_minus_one_clause()).unwrap();
        assert!(r.satisfiable);
        assert_eq!(r.optimum.exact_size(), Some(3));
        assert_eq!(r.two_step, Some(true));
        assert!(r.claim_holds);
    }

    #[test]
    fn batch_is_deterministic_and_empty_batch_is_empty() {
        let empty = batch_verify(3, 3, 5, 0, None).unwrap();
        assert_eq!(empty.count, 0);
        assert!(empty.render().contains("count=0"));
        let a = batch_verify(3, 3, 5, 6, None).unwrap();
        let b = batch_verify(3, 3, 5, 6, None).unwrap();
        assert_eq!(a.render(), b.render());
        assert!(a.all_hold(), "{}", a.render());
    }
}
