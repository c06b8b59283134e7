//! Random and exhaustive instance generation.

use super::layout::layout_formula;
use super::{check_pair_condition_of, Clause, Pm3SatInstance, Polarity};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub max_clause_size: usize,
    /// Probability that a clause is positive.
    pub polarity_mix: f64,
    pub seed: u64,
}

impl GenParams {
    pub fn new(n: usize, m: usize, seed: u64) -> Self {
        GenParams {
            n,
            m,
            max_clause_size: 3,
            polarity_mix: 0.5,
            seed,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("no legal instance found after {0} attempts")]
    RetriesExhausted(usize),
}

const FORMULA_RETRIES: usize = 400;
const CLAUSE_RETRIES: usize = 200;

/// Generates a random instance that validates, satisfies the pair
/// condition, is normalized, and admits the natural embedding.
/// Deterministic in the seed.
pub fn generate(params: &GenParams) -> Result<Pm3SatInstance, GenError> {
    if params.n == 0 {
        return Err(GenError::BadParams("n must be at least 1".into()));
    }
    if !(2..=3).contains(&params.max_clause_size) {
        return Err(GenError::BadParams(
            "max_clause_size must be 2 or 3".into(),
        ));
    }
    if params.m > 0 && params.n < 2 {
        return Err(GenError::BadParams(
            "clauses need at least 2 distinct variables".into(),
        ));
    }
    if !(0.0..=1.0).contains(&params.polarity_mix) {
        return Err(GenError::BadParams("polarity_mix must be in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..FORMULA_RETRIES {
        let Some(clauses) = sample_formula(params, &mut rng) else {
            continue;
        };
        let Ok(layout) = layout_formula(&clauses, params.n) else {
            continue;
        };
        let inst = Pm3SatInstance {
            n: params.n,
            clauses,
            layout,
        };
        if crate::embed::plan_connectors(&inst.clauses, inst.n).is_err() {
            continue;
        }
        debug_assert!(inst.validate().passed(), "generated instance must validate");
        debug_assert!(inst.check_pair_condition().passed());
        return Ok(inst);
    }
    Err(GenError::RetriesExhausted(FORMULA_RETRIES))
}

fn sample_formula(params: &GenParams, rng: &mut ChaCha8Rng) -> Option<Vec<Clause>> {
    let mut clauses: Vec<Clause> = Vec::with_capacity(params.m);
    'clauses: for id in 0..params.m {
        for _ in 0..CLAUSE_RETRIES {
            let max = params.max_clause_size.min(params.n);
            let size = rng.gen_range(2..=max.max(2));
            let mut pool: Vec<usize> = (0..params.n).collect();
            for i in (1..pool.len()).rev() {
                let j = rng.gen_range(0..=i);
                pool.swap(i, j);
            }
            pool.truncate(size);
            let polarity = if rng.gen_bool(params.polarity_mix) {
                Polarity::Positive
            } else {
                Polarity::Negative
            };
            let candidate = Clause::new(id, polarity, pool);
            if clause_admissible(&clauses, &candidate) {
                clauses.push(candidate);
                continue 'clauses;
            }
        }
        return None;
    }
    Some(clauses)
}

/// The candidate must keep the formula normalized (no duplicates, no
/// same-polarity containment) and must keep the pair condition intact.
fn clause_admissible(existing: &[Clause], candidate: &Clause) -> bool {
    for clause in existing {
        if clause.polarity != candidate.polarity {
            continue;
        }
        let sub = clause.vars.iter().all(|v| candidate.vars.contains(v))
            || candidate.vars.iter().all(|v| clause.vars.contains(v));
        if sub {
            return false;
        }
    }
    let mut all = existing.to_vec();
    all.push(candidate.clone());
    check_pair_condition_of(&all).passed()
}

/// Enumerates every normalized, layout-realizable instance with at most
/// `max_n` variables and `max_m` clauses. Instances are emitted in a fixed
/// deterministic order.
pub fn enumerate_family(max_n: usize, max_m: usize) -> Vec<Pm3SatInstance> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        // All candidate monotone clauses over exactly this variable count.
        let mut candidates: Vec<(Polarity, Vec<usize>)> = Vec::new();
        for polarity in [Polarity::Positive, Polarity::Negative] {
            for size in 2..=3usize.min(n) {
                let mut subset: Vec<usize> = (0..size).collect();
                loop {
                    candidates.push((polarity, subset.clone()));
                    // Next k-subset in lexicographic order.
                    let mut i = size;
                    while i > 0 {
                        i -= 1;
                        if subset[i] < n - (size - i) {
                            subset[i] += 1;
                            for j in i + 1..size {
                                subset[j] = subset[j - 1] + 1;
                            }
                            break;
                        }
                        if i == 0 {
                            subset.clear();
                        }
                    }
                    if subset.is_empty() {
                        break;
                    }
                }
            }
        }
        let total = candidates.len();
        if total > 20 {
            // Keep exhaustive enumeration tractable; callers cap max_n.
            panic!("enumerate_family: {total} candidate clauses is too many");
        }
        for mask in 0u32..(1u32 << total) {
            if (mask.count_ones() as usize) > max_m {
                continue;
            }
            let clauses: Vec<Clause> = (0..total)
                .filter(|&i| mask >> i & 1 == 1)
                .enumerate()
                .map(|(id, i)| Clause::new(id, candidates[i].0, candidates[i].1.clone()))
                .collect();
            if !formula_normalized(&clauses) {
                continue;
            }
            if !check_pair_condition_of(&clauses).passed() {
                continue;
            }
            let Ok(layout) = layout_formula(&clauses, n) else {
                continue;
            };
            if crate::embed::plan_connectors(&clauses, n).is_err() {
                continue;
            }
            out.push(Pm3SatInstance { n, clauses, layout });
        }
    }
    out
}

fn formula_normalized(clauses: &[Clause]) -> bool {
    for (i, a) in clauses.iter().enumerate() {
        for b in &clauses[i + 1..] {
            if a.polarity != b.polarity {
                continue;
            }
            if a.vars.iter().all(|v| b.vars.contains(v))
                || b.vars.iter().all(|v| a.vars.contains(v))
            {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable_instance() {
        let inst = generate(&GenParams::new(1, 0, 42)).unwrap();
        assert_eq!(inst.n, 1);
        assert!(inst.clauses.is_empty());
        assert!(inst.validate().passed());
    }

    #[test]
    fn generated_instances_validate() {
        let inst = generate(&GenParams::new(4, 3, 7)).unwrap();
        assert!(inst.validate().passed(), "{}", inst.validate());
        assert!(inst.check_pair_condition().passed());
        assert_eq!(inst.clauses.len(), 3);
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate(&GenParams::new(5, 5, 123)).unwrap();
        let b = generate(&GenParams::new(5, 5, 123)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_clauses_with_one_variable() {
        assert!(matches!(
            generate(&GenParams::new(1, 2, 0)),
            Err(GenError::BadParams(_))
        ));
    }

    #[test]
    fn family_members_all_validate() {
        let family = enumerate_family(3, 4);
        assert!(family.len() > 50, "family has {} members", family.len());
        for inst in &family {
            assert!(inst.validate().passed(), "{}", inst.validate());
            assert!(inst.check_pair_condition().passed());
        }
        // The family contains instances that leave a variable unused.
        assert!(family
            .iter()
            .any(|i| i.n == 3 && i.clauses.iter().all(|c| !c.vars.contains(&1))));
    }
}
