//! Exact domination and power domination machinery: the closed-neighborhood
//! and propagation operators, decision predicates, and the two optimizers.

use crate::planegraph::{PlaneGraph, VertexId};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Bitset over the vertices of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter(n: usize, vs: impl IntoIterator<Item = VertexId>) -> Self {
        let mut s = Self::empty(n);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: VertexId) {
        assert!(v < self.n, "vertex {v} outside universe {}", self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: VertexId) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    /// Orders sets by their sorted member lists; used for deterministic
    /// witness tie-breaks.
    pub fn lex_cmp(&self, other: &VertexSet) -> Ordering {
        self.to_vec().cmp(&other.to_vec())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Closed neighborhood Γ(S): S plus every vertex with a neighbor in S.
/// Γ(∅) = ∅.
pub fn closed_neighborhood(g: &PlaneGraph, s: &VertexSet) -> VertexSet {
    let mut out = s.clone();
    for v in s.iter() {
        for &u in g.neighbors(v) {
            out.insert(u);
        }
    }
    out
}

pub fn is_dominating(g: &PlaneGraph, s: &VertexSet) -> bool {
    closed_neighborhood(g, s).len() == g.vertex_count()
}

/// S₁: members of S with exactly one neighbor outside S.
pub fn s1(g: &PlaneGraph, s: &VertexSet) -> VertexSet {
    let mut out = VertexSet::empty(g.vertex_count());
    for v in s.iter() {
        let outside = g.neighbors(v).iter().filter(|&&u| !s.contains(u)).count();
        if outside == 1 {
            out.insert(v);
        }
    }
    out
}

/// Γ₁(S) = S ∪ Γ(S₁): one propagation round.
pub fn gamma1_step(g: &PlaneGraph, s: &VertexSet) -> VertexSet {
    let mut out = s.clone();
    out.union_with(&closed_neighborhood(g, &s1(g, s)));
    out
}

/// Γ_P(S): Γ once, then Γ₁ to its fixpoint. Terminates within |V|
/// iterations since each non-final round grows the set.
pub fn power_closure(g: &PlaneGraph, s: &VertexSet) -> VertexSet {
    let mut current = closed_neighborhood(g, s);
    for _ in 0..=g.vertex_count() {
        let next = gamma1_step(g, &current);
        if next == current {
            return current;
        }
        current = next;
    }
    unreachable!("Γ₁ failed to reach a fixpoint within |V| rounds");
}

pub fn is_power_dominating(g: &PlaneGraph, s: &VertexSet) -> bool {
    power_closure(g, s).len() == g.vertex_count()
}

/// True iff one Γ step and a single Γ₁ round already observe everything.
pub fn two_step_saturation(g: &PlaneGraph, s: &VertexSet) -> bool {
    gamma1_step(g, &closed_neighborhood(g, s)).len() == g.vertex_count()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Exact { size: usize, witness: VertexSet },
    /// Every set within the budget fails; the optimum exceeds it.
    ExceedsBudget { budget: usize },
}

impl SolveOutcome {
    pub fn size_within(&self, bound: usize) -> bool {
        matches!(self, SolveOutcome::Exact { size, .. } if *size <= bound)
    }

    pub fn exact_size(&self) -> Option<usize> {
        match self {
            SolveOutcome::Exact { size, .. } => Some(*size),
            SolveOutcome::ExceedsBudget { .. } => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("search exceeded the configured node budget of {0}")]
    ResourceLimit(u64),
    #[error("graph has no vertices")]
    EmptyGraph,
}

const DOM_NODE_BUDGET: u64 = 200_000_000;

/// Exact minimum dominating set by branch and bound. Branches on an
/// undominated vertex of minimum closed-neighborhood size (its dominators);
/// the lower bound counts undominated vertices with pairwise disjoint
/// closed neighborhoods. With a budget it may stop early and report that
/// the optimum exceeds it.
pub fn min_dominating(g: &PlaneGraph, budget: Option<usize>) -> Result<SolveOutcome, SolverError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(SolverError::EmptyGraph);
    }
    let cap = budget.unwrap_or(n);
    let mut search = DomSearch {
        g,
        best: None,
        cap,
        nodes: 0,
    };
    let mut chosen = Vec::new();
    let dominated = VertexSet::empty(n);
    search.run(&mut chosen, &dominated)?;
    match search.best {
        Some(best) => {
            let size = best.len();
            // Deterministic witness: lexicographically least among minimum
            // solutions, found by a second bounded pass.
            let witness = lex_min_dominating(g, size)?;
            Ok(SolveOutcome::Exact { size, witness })
        }
        None => Ok(SolveOutcome::ExceedsBudget { budget: cap }),
    }
}

struct DomSearch<'a> {
    g: &'a PlaneGraph,
    best: Option<VertexSet>,
    cap: usize,
    nodes: u64,
}

impl<'a> DomSearch<'a> {
    fn run(&mut self, chosen: &mut Vec<VertexId>, dominated: &VertexSet) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > DOM_NODE_BUDGET {
            return Err(SolverError::ResourceLimit(DOM_NODE_BUDGET));
        }
        let n = self.g.vertex_count();
        let upper = self.best.as_ref().map(|b| b.len()).unwrap_or(self.cap + 1);
        if dominated.len() == n {
            if chosen.len() < upper {
                self.best = Some(VertexSet::from_iter(n, chosen.iter().copied()));
            }
            return Ok(());
        }
        if chosen.len() + 1 >= upper && dominated.len() != n {
            // Even one more pick cannot beat the incumbent unless it
            // finishes the job; the lower bound below handles the rest.
        }
        if chosen.len() + self.lower_bound(dominated) >= upper {
            return Ok(());
        }
        // Branch vertex: undominated with fewest candidate dominators.
        let branch = (0..n)
            .filter(|&v| !dominated.contains(v))
            .min_by_key(|&v| (self.g.degree(v), v))
            .expect("some vertex undominated");
        let mut candidates: Vec<VertexId> = Vec::with_capacity(self.g.degree(branch) + 1);
        candidates.push(branch);
        candidates.extend_from_slice(self.g.neighbors(branch));
        candidates.sort_unstable();
        for c in candidates {
            let mut next = dominated.clone();
            next.insert(c);
            for &u in self.g.neighbors(c) {
                next.insert(u);
            }
            chosen.push(c);
            self.run(chosen, &next)?;
            chosen.pop();
        }
        Ok(())
    }

    /// Greedy family of undominated vertices with pairwise disjoint closed
    /// neighborhoods; each needs its own dominator.
    fn lower_bound(&self, dominated: &VertexSet) -> usize {
        let n = self.g.vertex_count();
        let mut blocked = VertexSet::empty(n);
        let mut count = 0;
        for v in 0..n {
            if dominated.contains(v) || blocked.contains(v) {
                continue;
            }
            if self.g.neighbors(v).iter().any(|&u| blocked.contains(u)) {
                continue;
            }
            count += 1;
            blocked.insert(v);
            for &u in self.g.neighbors(v) {
                blocked.insert(u);
            }
        }
        count
    }
}

/// First dominating set of exactly the given size in lexicographic member
/// order; this is the lex-least one.
fn lex_min_dominating(g: &PlaneGraph, size: usize) -> Result<VertexSet, SolverError> {
    let n = g.vertex_count();
    let mut chosen: Vec<VertexId> = Vec::new();
    let dominated = VertexSet::empty(n);
    let mut nodes = 0u64;
    fn rec(
        g: &PlaneGraph,
        size: usize,
        start: VertexId,
        chosen: &mut Vec<VertexId>,
        dominated: &VertexSet,
        nodes: &mut u64,
    ) -> Result<Option<VertexSet>, SolverError> {
        *nodes += 1;
        if *nodes > DOM_NODE_BUDGET {
            return Err(SolverError::ResourceLimit(DOM_NODE_BUDGET));
        }
        let n = g.vertex_count();
        if dominated.len() == n {
            return Ok(Some(VertexSet::from_iter(n, chosen.iter().copied())));
        }
        if chosen.len() == size {
            return Ok(None);
        }
        // Once a vertex and all its dominators are skipped it can never be
        // dominated; prune such branches.
        let remaining = size - chosen.len();
        let must = (0..n)
            .filter(|&v| !dominated.contains(v))
            .map(|v| {
                std::iter::once(v)
                    .chain(g.neighbors(v).iter().copied())
                    .filter(|&c| c >= start)
                    .count()
            })
            .min()
            .unwrap_or(usize::MAX);
        if must == 0 {
            return Ok(None);
        }
        let _ = remaining;
        for c in start..n {
            let mut next = dominated.clone();
            next.insert(c);
            for &u in g.neighbors(c) {
                next.insert(u);
            }
            chosen.push(c);
            if let Some(found) = rec(g, size, c + 1, chosen, &next, nodes)? {
                return Ok(Some(found));
            }
            chosen.pop();
        }
        Ok(None)
    }
    rec(g, size, 0, &mut chosen, &dominated, &mut nodes)?
        .ok_or(SolverError::ResourceLimit(DOM_NODE_BUDGET))
}

const PDOM_NODE_BUDGET: u64 = 500_000_000;

/// Exact minimum power dominating set. Enumerates candidate sets of
/// increasing size k = 0, 1, ..., so the reported size is exact even
/// without certificates. `necessity` optionally supplies sets that every
/// power dominating set must intersect (per-gadget necessity certificates
/// from the reductions); pruning is sound only for such certified inputs.
pub fn min_power_dominating(
    g: &PlaneGraph,
    budget: Option<usize>,
    necessity: Option<&[VertexSet]>,
) -> Result<SolveOutcome, SolverError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(SolverError::EmptyGraph);
    }
    let cap = budget.unwrap_or(n).min(n);
    let sets = necessity.unwrap_or(&[]);
    // Pairwise disjoint necessity sets each demand a distinct member.
    let mut lb = 0;
    {
        let mut taken = VertexSet::empty(n);
        for set in sets {
            if !set.intersects(&taken) {
                lb += 1;
                taken.union_with(set);
            }
        }
    }
    let mut nodes = 0u64;
    for k in lb..=cap {
        let mut chosen = Vec::with_capacity(k);
        if let Some(witness) = enum_pdom(g, k, 0, &mut chosen, sets, &mut nodes)? {
            return Ok(SolveOutcome::Exact { size: k, witness });
        }
    }
    Ok(SolveOutcome::ExceedsBudget { budget: cap })
}

fn enum_pdom(
    g: &PlaneGraph,
    k: usize,
    start: VertexId,
    chosen: &mut Vec<VertexId>,
    necessity: &[VertexSet],
    nodes: &mut u64,
) -> Result<Option<VertexSet>, SolverError> {
    *nodes += 1;
    if *nodes > PDOM_NODE_BUDGET {
        return Err(SolverError::ResourceLimit(PDOM_NODE_BUDGET));
    }
    let n = g.vertex_count();
    if chosen.len() == k {
        let s = VertexSet::from_iter(n, chosen.iter().copied());
        for set in necessity {
            if !set.intersects(&s) {
                return Ok(None);
            }
        }
        if is_power_dominating(g, &s) {
            return Ok(Some(s));
        }
        return Ok(None);
    }
    let slots = k - chosen.len();
    // Unhit necessity sets each need one of the remaining slots, and only
    // vertices >= start are still available.
    let mut unhit = 0;
    for set in necessity {
        let hit = chosen.iter().any(|&c| set.contains(c));
        if hit {
            continue;
        }
        if set.iter().all(|v| v < start) {
            return Ok(None);
        }
        unhit += 1;
        let _ = unhit;
    }
    // Candidates sorted ascending keeps the first witness lexicographically
    // least.
    for c in start..n {
        if n - c < slots {
            break;
        }
        chosen.push(c);
        if let Some(found) = enum_pdom(g, k, c + 1, chosen, necessity, nodes)? {
            return Ok(Some(found));
        }
        chosen.pop();
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planegraph::PlaneGraph;

    fn k4() -> PlaneGraph {
        PlaneGraph::unlabeled(vec![
            vec![1, 3, 2],
            vec![2, 3, 0],
            vec![0, 3, 1],
            vec![0, 1, 2],
        ])
        .unwrap()
    }

    fn cycle(n: usize) -> PlaneGraph {
        PlaneGraph::unlabeled(
            (0..n)
                .map(|v| vec![(v + 1) % n, (v + n - 1) % n])
                .collect(),
        )
        .unwrap()
    }

    fn path(n: usize) -> PlaneGraph {
        PlaneGraph::unlabeled(
            (0..n)
                .map(|v| {
                    let mut r = Vec::new();
                    if v > 0 {
                        r.push(v - 1);
                    }
                    if v + 1 < n {
                        r.push(v + 1);
                    }
                    r
                })
                .collect(),
        )
        .unwrap()
    }

    fn octahedron() -> PlaneGraph {
        PlaneGraph::unlabeled(vec![
            vec![1, 5, 4, 2],
            vec![2, 3, 5, 0],
            vec![0, 4, 3, 1],
            vec![2, 4, 5, 1],
            vec![0, 5, 3, 2],
            vec![4, 0, 1, 3],
        ])
        .unwrap()
    }

    fn star(leaves: usize) -> PlaneGraph {
        let mut rots = vec![(1..=leaves).collect::<Vec<_>>()];
        rots.extend((1..=leaves).map(|_| vec![0]));
        PlaneGraph::unlabeled(rots).unwrap()
    }

    #[test]
    fn closed_neighborhood_cases() {
        let g = star(4);
        assert!(closed_neighborhood(&g, &VertexSet::empty(5)).is_empty());
        let center = VertexSet::from_iter(5, [0]);
        assert_eq!(closed_neighborhood(&g, &center).len(), 5);
        // Octahedron: one vertex reaches all but its antipode.
        let oct = octahedron();
        let s = VertexSet::from_iter(6, [0]);
        let gamma = closed_neighborhood(&oct, &s);
        assert_eq!(gamma.len(), 5);
        assert!(!gamma.contains(3));
    }

    #[test]
    fn dominating_cases() {
        let g = k4();
        assert!(is_dominating(&g, &VertexSet::full(4)));
        assert!(is_dominating(&g, &VertexSet::from_iter(4, [2])));
        let c5 = cycle(5);
        assert!(!is_dominating(&c5, &VertexSet::from_iter(5, [0])));
    }

    #[test]
    fn s1_cases() {
        let g = path(3);
        assert!(s1(&g, &VertexSet::full(3)).is_empty());
        let s = VertexSet::from_iter(3, [0, 1]);
        assert_eq!(s1(&g, &s).to_vec(), vec![1]);
        let oct = octahedron();
        let gamma = closed_neighborhood(&oct, &VertexSet::from_iter(6, [0]));
        let ones = s1(&oct, &gamma);
        // Every observed neighbor of the antipode sees only it outside.
        assert_eq!(ones.to_vec(), vec![1, 2, 4, 5]);
    }

    #[test]
    fn gamma1_cases() {
        let oct = octahedron();
        assert_eq!(gamma1_step(&oct, &VertexSet::full(6)), VertexSet::full(6));
        let gamma = closed_neighborhood(&oct, &VertexSet::from_iter(6, [0]));
        assert_eq!(gamma1_step(&oct, &gamma), VertexSet::full(6));
        let c5 = cycle(5);
        let gamma = closed_neighborhood(&c5, &VertexSet::from_iter(5, [0]));
        assert_eq!(gamma1_step(&c5, &gamma), VertexSet::full(5));
    }

    #[test]
    fn power_closure_cases() {
        let p5 = path(5);
        assert!(power_closure(&p5, &VertexSet::empty(5)).is_empty());
        let s = VertexSet::from_iter(5, [0]);
        assert_eq!(power_closure(&p5, &s), VertexSet::full(5));
        assert!(!two_step_saturation(&p5, &s));
        let oct = octahedron();
        assert!(two_step_saturation(&oct, &VertexSet::from_iter(6, [0])));
        assert!(two_step_saturation(&oct, &VertexSet::full(6)));
    }

    #[test]
    fn min_dominating_cases() {
        assert_eq!(min_dominating(&k4(), None).unwrap().exact_size(), Some(1));
        let c5 = cycle(5);
        let out = min_dominating(&c5, None).unwrap();
        assert_eq!(out.exact_size(), Some(2));
        if let SolveOutcome::Exact { witness, .. } = out {
            assert!(is_dominating(&c5, &witness));
            // Lex-least witness.
            assert_eq!(witness.to_vec(), vec![0, 2]);
        }
        assert_eq!(
            min_dominating(&c5, Some(1)).unwrap(),
            SolveOutcome::ExceedsBudget { budget: 1 }
        );
    }

    #[test]
    fn min_power_dominating_cases() {
        assert_eq!(
            min_power_dominating(&k4(), None, None).unwrap().exact_size(),
            Some(1)
        );
        let p5 = path(5);
        let out = min_power_dominating(&p5, None, None).unwrap();
        assert_eq!(out.exact_size(), Some(1));
        let oct = octahedron();
        assert_eq!(
            min_power_dominating(&oct, None, None).unwrap().exact_size(),
            Some(1)
        );
    }

    #[test]
    fn single_vertex_power_domination_is_one() {
        // Γ_P(∅) = ∅, so even K1 needs one seed.
        let g = PlaneGraph::unlabeled(vec![vec![]]).unwrap();
        assert!(!is_power_dominating(&g, &VertexSet::empty(1)));
        assert_eq!(
            min_power_dominating(&g, None, None).unwrap().exact_size(),
            Some(1)
        );
    }

    #[test]
    fn domination_implies_power_domination() {
        let g = cycle(6);
        let s = VertexSet::from_iter(6, [0, 3]);
        assert!(is_dominating(&g, &s));
        assert!(is_power_dominating(&g, &s));
    }
}
