//! Exhaustive reference solvers for small instances.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::canon::{canon, canonical_table};
use crate::cyclesum::CycleSum;
use crate::enumerate::{partitions, Catalog};
use crate::error::{Error, Result};
use crate::fdds::Fdds;
use crate::par::{self, Exec};
use crate::poly::{CyclePoly, FddsPoly};

/// Candidate sizes `s ≤ max_states` with `|P(X)| = |b|` whenever `|X| = s`.
fn feasible_sizes<C: crate::poly::Element>(p: &crate::poly::Poly<C>, b_size: &BigUint, max_states: usize) -> Vec<usize> {
    (0..=max_states).filter(|&s| p.size_at(&BigUint::from(s)) == *b_size).collect()
}

/// Every `X` with at most `max_states` states and `p(X) ≅ b`, as canonical
/// successor tables sorted by code. Fails once more than `budget` candidates
/// would have to be tried.
pub fn brute_force_solve(p: &FddsPoly, b: &Fdds, max_states: usize, budget: usize) -> Result<Vec<Fdds>> {
    brute_force_solve_with(p, b, max_states, budget, Exec::best())
}

pub fn brute_force_solve_with(p: &FddsPoly, b: &Fdds, max_states: usize, budget: usize, exec: Exec) -> Result<Vec<Fdds>> {
    let sizes = feasible_sizes(p, &BigUint::from(b.len()), max_states);
    let Some(&largest) = sizes.last() else {
        return Ok(Vec::new());
    };
    let cat = Catalog::new(largest);
    let mut candidates = Vec::new();
    for &s in &sizes {
        if candidates.len() + cat.system_count(s) > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        candidates.extend(cat.systems(s));
    }
    let target = canon(b);
    let cap = BigUint::from(b.len());
    let hits = par::map(exec, &candidates, |x| match p.eval_capped(x, &cap) {
        Ok(v) => canon(&v) == target,
        Err(_) => false,
    });
    let mut out: Vec<(crate::canon::CanonForm, Fdds)> = candidates
        .into_iter()
        .zip(hits)
        .filter(|(_, hit)| *hit)
        .map(|(x, _)| (canon(&x), canonical_table(&x)))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, x)| x).collect())
}

/// The unique solutions with the most and the fewest connected components.
/// `None` when there is no solution; an error if either extreme is shared.
pub fn count_extreme_solutions(p: &FddsPoly, b: &Fdds, max_states: usize, budget: usize) -> Result<Option<(Fdds, Fdds)>> {
    let sols = brute_force_solve(p, b, max_states, budget)?;
    if sols.is_empty() {
        return Ok(None);
    }
    let counts: Vec<usize> = sols.iter().map(|x| x.components().len()).collect();
    let pick = |target: usize, what: &str| -> Result<Fdds> {
        let mut it = sols.iter().zip(&counts).filter(|(_, &c)| c == target);
        let first = it.next().expect("extreme is attained").0.clone();
        if it.next().is_some() {
            return Err(Error::InvariantViolation(format!("{what} component count {target} is shared")));
        }
        Ok(first)
    };
    let max = pick(*counts.iter().max().expect("nonempty"), "maximal")?;
    let min = pick(*counts.iter().min().expect("nonempty"), "minimal")?;
    Ok(Some((max, min)))
}

/// Every sum of cycles `X` with at most `max_states` states and `p(X) = b`,
/// sorted.
pub fn brute_force_cycles(p: &CyclePoly, b: &CycleSum, max_states: usize) -> Vec<CycleSum> {
    let b_size = b.size();
    let cap = b_size.clone();
    let mut out = Vec::new();
    for s in feasible_sizes(p, &b_size, max_states) {
        for parts in partitions(s) {
            let x = CycleSum::from_pairs(parts.into_iter().map(|l| (BigUint::from(l), BigUint::from(1u32))));
            if p.eval_compact(&x, &cap).is_ok_and(|v| v == *b) {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

/// Sums of cycles solving `p(X) = b`, searching every size the equation allows.
pub fn brute_force_cycles_all(p: &CyclePoly, b: &CycleSum) -> Vec<CycleSum> {
    let max = b.size().to_usize().unwrap_or(usize::MAX);
    brute_force_cycles(p, b, max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(s: &str) -> CycleSum {
        CycleSum::parse(s).unwrap()
    }

    fn worked() -> CyclePoly {
        CyclePoly::from_terms([(2, cs("1x2")), (1, cs("1x4+1x6"))])
    }

    #[test]
    fn worked_solution_set() {
        let b = cs("16x2+4x4+18x6+1x12");
        let p = worked().to_fdds_poly(100).unwrap();
        let sols = brute_force_solve(&p, &b.to_fdds(1000).unwrap(), 7, 100_000).unwrap();
        let mut compact: Vec<CycleSum> = sols.iter().map(|x| CycleSum::from_fdds(x).unwrap()).collect();
        compact.sort();
        let mut want = vec![cs("4x1+1x3"), cs("2x2+1x3"), cs("2x1+1x2+1x3")];
        want.sort();
        assert_eq!(compact, want);
        assert_eq!(brute_force_cycles(&worked(), &b, 7), want);
        let (max, min) = count_extreme_solutions(&p, &b.to_fdds(1000).unwrap(), 7, 100_000).unwrap().unwrap();
        assert_eq!(CycleSum::from_fdds(&max), Some(cs("4x1+1x3")));
        assert_eq!(CycleSum::from_fdds(&min), Some(cs("2x2+1x3")));
    }

    #[test]
    fn small_cases() {
        let id = FddsPoly::identity();
        let c2 = Fdds::cycle(2);
        let sols = brute_force_solve(&id, &c2, 4, 1000).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(crate::canon::is_isomorphic(&sols[0], &c2));
        let p = FddsPoly::from_terms([(1, Fdds::cycle(2))]);
        assert!(brute_force_solve(&p, &Fdds::cycle(3), 4, 1000).unwrap().is_empty());
        assert!(matches!(brute_force_solve(&id, &Fdds::cycles(1, 9), 9, 10), Err(Error::BudgetExceeded(10))));
    }

    #[test]
    fn strategies_agree() {
        let p = FddsPoly::from_terms([(1, Fdds::parse("0 0").unwrap())]);
        let b = p.eval(&Fdds::parse("1 0 0 2").unwrap()).unwrap();
        let a = brute_force_solve_with(&p, &b, 6, 10_000, Exec::Sequential).unwrap();
        let c = brute_force_solve_with(&p, &b, 6, 10_000, Exec::Parallel).unwrap();
        assert_eq!(a, c);
        assert_eq!(a.len(), 1);
    }
}
