//! Constructs a rectilinear layout for a normalized monotone formula, or
//! reports that none exists.
//!
//! Per side of the line, clause rectangles are stacked at integer levels.
//! A clause attaching a variable strictly inside another clause's span must
//! sit below it (its leg would otherwise cross the wider rectangle, whose
//! x-extent covers every intermediate interval entirely). Collecting those
//! forced below/above constraints into a digraph and topologically sorting
//! it yields the nesting order; a cycle means the side admits no layout.
//!
//! Within one interval, legs are placed left to right as: clauses attaching
//! their rightmost variable here (bottom level first), then the single
//! clause crossing over this variable, then clauses attaching their
//! leftmost variable here (top level first). This keeps every leg clear of
//! every lower rectangle.

use super::{Clause, Layout, Polarity, Rect, VariableId};
use crate::rat::Q;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LayoutError {
    #[error("no nesting order exists for the {0:?} side (constraint cycle)")]
    NestingCycle(Polarity),
    #[error("clause {0} has fewer than 2 variables; normalize first")]
    ClauseTooSmall(usize),
}

enum LegKind {
    RightEnd,
    Crossing,
    LeftEnd,
}

/// Builds a layout for the formula, if one exists. Deterministic.
pub fn layout_formula(clauses: &[Clause], n: usize) -> Result<Layout, LayoutError> {
    for c in clauses {
        if c.len() < 2 {
            return Err(LayoutError::ClauseTooSmall(c.id));
        }
    }
    let mut layout = Layout::empty(n);
    layout.rects = vec![Rect(Q::zero(), Q::zero(), Q::zero(), Q::zero()); clauses.len()];
    layout.legs = vec![Vec::new(); clauses.len()];

    for polarity in [Polarity::Positive, Polarity::Negative] {
        let side: Vec<&Clause> = clauses.iter().filter(|c| c.polarity == polarity).collect();
        if side.is_empty() {
            continue;
        }
        let levels = assign_levels(&side, polarity)?;

        // Group leg requests per interval, ordered left to right.
        let mut per_interval: BTreeMap<VariableId, Vec<(usize, usize)>> = BTreeMap::new();
        for clause in &side {
            for &v in &clause.vars {
                per_interval
                    .entry(v)
                    .or_default()
                    .push((clause.id, levels[&clause.id]));
            }
        }
        let mut leg_positions: BTreeMap<(usize, VariableId), Q> = BTreeMap::new();
        for (&v, attachments) in &per_interval {
            let mut right_end: Vec<(usize, usize)> = Vec::new();
            let mut crossing: Vec<(usize, usize)> = Vec::new();
            let mut left_end: Vec<(usize, usize)> = Vec::new();
            for &(cid, level) in attachments {
                let clause = side.iter().find(|c| c.id == cid).unwrap();
                let lo = *clause.vars.first().unwrap();
                let hi = *clause.vars.last().unwrap();
                match leg_kind(v, lo, hi) {
                    LegKind::RightEnd => right_end.push((cid, level)),
                    LegKind::Crossing => crossing.push((cid, level)),
                    LegKind::LeftEnd => left_end.push((cid, level)),
                }
            }
            right_end.sort_by_key(|&(cid, level)| (level, cid));
            left_end.sort_by_key(|&(cid, level)| (std::cmp::Reverse(level), cid));
            // At most one clause can cross over an interval it attaches;
            // two such clauses would each be forced below the other.
            assert!(crossing.len() <= 1, "nesting order left two crossers at one interval");
            let ordered: Vec<usize> = right_end
                .iter()
                .chain(crossing.iter())
                .chain(left_end.iter())
                .map(|&(cid, _)| cid)
                .collect();
            let (lo, hi) = layout.intervals[v];
            let width = hi - lo;
            let count = ordered.len() as i64;
            for (k, cid) in ordered.into_iter().enumerate() {
                let x = lo + width * Q::new(k as i64 + 1, count + 1);
                leg_positions.insert((cid, v), x);
            }
        }
        for clause in &side {
            let legs: Vec<(VariableId, Q)> = clause
                .vars
                .iter()
                .map(|&v| (v, leg_positions[&(clause.id, v)]))
                .collect();
            let x_lo = legs.iter().map(|&(_, x)| x).fold(legs[0].1, Q::min);
            let x_hi = legs.iter().map(|&(_, x)| x).fold(legs[0].1, Q::max);
            let level = Q::int(levels[&clause.id] as i64);
            let rect = match polarity {
                Polarity::Positive => Rect(x_lo, x_hi, level, level + Q::new(1, 2)),
                Polarity::Negative => Rect(x_lo, x_hi, -level - Q::new(1, 2), -level),
            };
            layout.rects[clause.id] = rect;
            layout.legs[clause.id] = legs;
        }
    }
    Ok(layout)
}

fn leg_kind(v: VariableId, span_lo: VariableId, span_hi: VariableId) -> LegKind {
    if v == span_hi {
        LegKind::RightEnd
    } else if v == span_lo {
        LegKind::LeftEnd
    } else {
        LegKind::Crossing
    }
}

/// Assigns 1-based stacking levels per side. Kahn's algorithm with a
/// smallest-id tie-break keeps the result deterministic.
fn assign_levels(side: &[&Clause], polarity: Polarity) -> Result<BTreeMap<usize, usize>, LayoutError> {
    let k = side.len();
    // below[i][j]: clause side[i] must be strictly below side[j].
    let mut below = vec![vec![false; k]; k];
    for (i, a) in side.iter().enumerate() {
        for (j, b) in side.iter().enumerate() {
            if i == j {
                continue;
            }
            let lo = *b.vars.first().unwrap();
            let hi = *b.vars.last().unwrap();
            if a.vars.iter().any(|&v| lo < v && v < hi) {
                below[i][j] = true;
            }
        }
    }
    let mut indegree: Vec<usize> = (0..k)
        .map(|j| (0..k).filter(|&i| below[i][j]).count())
        .collect();
    let mut placed = vec![false; k];
    let mut levels = BTreeMap::new();
    for level in 1..=k {
        let next = (0..k)
            .filter(|&i| !placed[i] && indegree[i] == 0)
            .min_by_key(|&i| side[i].id);
        let Some(i) = next else {
            return Err(LayoutError::NestingCycle(polarity));
        };
        placed[i] = true;
        levels.insert(side[i].id, level);
        for j in 0..k {
            if below[i][j] {
                indegree[j] -= 1;
            }
        }
    }
    Ok(levels)
}
