//! `P(X) = B` for arbitrary systems (with transient states) when `P` is
//! pseudo-injective.
//!
//! The solution is grown one connected component at a time. With `q` the
//! least cycle length left in `B`, everything is restricted to cycle lengths
//! dividing `q`; the new component `C` has an unroll tree `x` with
//! `a ⊗ x^i = t` for trees `a` of a coefficient and `t` of `B`. Candidates
//! for `x` come from levelwise tree division, `C` is rebuilt from `x`, and
//! accepted when `P(Y + C) - P(Y)` is contained in what is left of `B`. A
//! bounded amount of backtracking covers choices that do not extend.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::Reason;
use crate::canon::{canon, sub_components, CanonForm};
use crate::cyclesum::anti_lcm;
use crate::error::{Error, Result};
use crate::fdds::Fdds;
use crate::poly::FddsPoly;
use crate::unroll::{distinct_trees, tree_divide, DivideLimits, UnrollTree};

/// Result of [`solve_poly_general`].
#[derive(Debug, Clone)]
pub struct GeneralOutcome {
    pub solution: Option<Fdds>,
    /// Connected components of the solution in the order they were added.
    pub components_added: Vec<Fdds>,
    /// `P(solution) ≅ B`, checked on the final answer.
    pub verified: bool,
    pub reason: Reason,
    pub note: String,
}

impl GeneralOutcome {
    fn fail(reason: Reason, note: impl Into<String>) -> Self {
        GeneralOutcome {
            solution: None,
            components_added: Vec::new(),
            verified: false,
            reason,
            note: note.into(),
        }
    }

    pub fn is_solved(&self) -> bool {
        self.reason == Reason::Solved
    }
}

/// Search limits for [`solve_poly_general_with`].
#[derive(Debug, Clone, Copy)]
pub struct GeneralLimits {
    /// Rejected candidates tolerated over the whole search; `None` means `|b|`.
    pub backtrack_budget: Option<usize>,
    /// Candidate components tried per step.
    pub candidates_per_step: usize,
    pub divide: DivideLimits,
}

impl Default for GeneralLimits {
    fn default() -> Self {
        GeneralLimits {
            backtrack_budget: None,
            candidates_per_step: 64,
            divide: DivideLimits::default(),
        }
    }
}

pub fn solve_poly_general(p: &FddsPoly, b: &Fdds) -> GeneralOutcome {
    solve_poly_general_with(p, b, GeneralLimits::default())
}

pub fn solve_poly_general_with(p: &FddsPoly, b: &Fdds, limits: GeneralLimits) -> GeneralOutcome {
    if !p.is_pseudo_injective() {
        return GeneralOutcome::fail(Reason::PreconditionFailed, "polynomial is not pseudo-injective");
    }
    let Some(rest) = sub_components(b, &p.constant()) else {
        return GeneralOutcome::fail(Reason::NoSolution, "constant term not contained in the right-hand side");
    };
    let q = p.without_constant();
    let mut search = Search {
        p: &q,
        ma: q.nonconstant_sum().min_cycle_len().expect("nonempty"),
        cap: BigUint::from(rest.len()),
        height: rest.max_height(),
        budget: limits.backtrack_budget.unwrap_or(b.len()),
        limits,
        added: Vec::new(),
    };
    let Some(y) = search.extend(Fdds::zero(), Fdds::zero(), rest) else {
        let note = if search.budget == 0 { "backtracking budget exhausted" } else { "no candidate component extends" };
        return GeneralOutcome::fail(Reason::NoSolution, note);
    };
    let verified = p.eval_capped(&y, &BigUint::from(b.len())).is_ok_and(|v| canon(&v) == canon(b));
    if !verified {
        return GeneralOutcome::fail(Reason::NoSolution, "final verification failed");
    }
    GeneralOutcome {
        solution: Some(y),
        components_added: search.added,
        verified,
        reason: Reason::Solved,
        note: String::new(),
    }
}

struct Search<'a> {
    p: &'a FddsPoly,
    ma: usize,
    cap: BigUint,
    height: usize,
    budget: usize,
    limits: GeneralLimits,
    added: Vec<Fdds>,
}

impl Search<'_> {
    fn extend(&mut self, y: Fdds, py: Fdds, rest: Fdds) -> Option<Fdds> {
        if rest.is_empty() {
            return Some(y);
        }
        let q = rest.min_cycle_len().expect("nonempty");
        if !q.is_multiple_of(self.ma) {
            return None;
        }
        let candidates = self.candidates(&rest, q);
        for c in candidates {
            if self.budget == 0 {
                return None;
            }
            let yc = y.sum(&c);
            let next = self
                .p
                .eval_capped(&yc, &self.cap)
                .ok()
                .and_then(|pyc| Some((sub_components(&rest, &sub_components(&pyc, &py)?)?, pyc)));
            if let Some((rest2, pyc)) = next {
                self.added.push(c);
                if let Some(sol) = self.extend(yc, pyc, rest2) {
                    return Some(sol);
                }
                self.added.pop();
            }
            self.budget = self.budget.saturating_sub(1);
        }
        None
    }

    /// Connected candidates for the next component, most promising first.
    fn candidates(&self, rest: &Fdds, q: usize) -> Vec<Fdds> {
        let depth = 2 * q + self.height + 2;
        let base = anti_lcm(&q.into(), &self.ma.into())
            .expect("checked")
            .to_usize()
            .expect("at most q");
        let targets = sorted_trees(&rest.restrict_exact(q), depth);
        let mut degrees: Vec<(usize, Vec<UnrollTree>)> = self
            .p
            .nonconstant_terms()
            .filter_map(|(i, a)| {
                let trees = sorted_trees(&a.restrict_dividing(q), depth);
                (!trees.is_empty()).then_some((i, trees))
            })
            .collect();
        // the lowest degree reaching the least cycle length goes first
        let lead = degrees
            .iter()
            .position(|(i, _)| self.p.coeff(*i).and_then(|a| a.min_cycle_len().ok()) == Some(self.ma));
        if let Some(k) = lead {
            let first = degrees.remove(k);
            degrees.insert(0, first);
        }

        let mut seen_trees = HashSet::new();
        let mut seen_comps: HashSet<CanonForm> = HashSet::new();
        let mut out = Vec::new();
        'outer: for (i, coeff_trees) in &degrees {
            for t in &targets {
                for a in coeff_trees {
                    let Ok(xs) = tree_divide(t, a, *i, self.limits.divide) else {
                        continue;
                    };
                    for x in xs {
                        if !seen_trees.insert(x.code().to_vec()) {
                            continue;
                        }
                        let len = x.period().lcm(&base);
                        for k in (1..=q / len).filter(|k| q.is_multiple_of(k * len)) {
                            let Ok(c) = crate::unroll::deroll(&x, k * len) else {
                                continue;
                            };
                            if seen_comps.insert(canon(&c)) {
                                out.push(c);
                            }
                        }
                        if out.len() >= self.limits.candidates_per_step {
                            break 'outer;
                        }
                    }
                }
            }
        }
        out
    }
}

/// Distinct unroll trees of a system, in increasing order.
fn sorted_trees(a: &Fdds, depth: usize) -> Vec<UnrollTree> {
    let mut seen = HashSet::new();
    let mut trees: Vec<UnrollTree> = a
        .components()
        .iter()
        .flat_map(|c| distinct_trees(c, depth))
        .filter(|t| seen.insert(t.code().to_vec()))
        .collect();
    trees.sort();
    trees
}

/// The least tree `x` with `min(A_i) ⊗ x^i = min(B)` for some degree `i`,
/// trying degrees in increasing order. Inputs are expected to be restricted
/// to cycle lengths dividing the current target length.
pub fn min_tree_divide(p: &FddsPoly, b: &Fdds, depth: usize) -> Option<(UnrollTree, usize)> {
    let t = sorted_trees(b, depth).into_iter().next()?;
    for (i, a) in p.nonconstant_terms() {
        let Some(amin) = sorted_trees(a, depth).into_iter().next() else {
            continue;
        };
        let limits = DivideLimits {
            max_results: usize::MAX,
            ..DivideLimits::default()
        };
        if let Ok(xs) = tree_divide(&t, &amin, i, limits) {
            if let Some(x) = xs.into_iter().min() {
                return Some((x, i));
            }
        }
    }
    None
}

/// `lcm(p, aLcm(b_min, a_min))`: the cycle length of the next component
/// built from a tree of period `p`.
pub fn candidate_cycle_length(a_min: &BigUint, b_min: &BigUint, p: &BigUint) -> Result<BigUint> {
    if p == &BigUint::default() {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    Ok(p.lcm(&anti_lcm(b_min, a_min)?))
}
