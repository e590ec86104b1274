use fdds::enumerate::partitions;
use fdds::gen::{self, planted_cycle_poly};
use fdds::solver::cycles::{rewrite_solution, solve_linear_compact, solve_linear_explicit, solve_poly_compact};
use fdds::solver::oracle::{brute_force_cycles, brute_force_cycles_all};
use fdds::{CyclePoly, CycleSum, Reason};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn from_parts(parts: &[usize]) -> CycleSum {
    CycleSum::from_pairs(parts.iter().map(|&l| (BigUint::from(l), BigUint::from(1u32))))
}

fn all_sums(max: usize) -> Vec<CycleSum> {
    (0..=max).flat_map(partitions).map(|p| from_parts(&p)).collect()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn linear_solver_is_complete_at_desk_scale() {
    let coefficients: Vec<CycleSum> = all_sums(8)
        .into_iter()
        .filter(|a| !a.is_zero() && a.is_pseudo_cancelable().unwrap())
        .collect();
    let rhs = all_sums(12);
    let mut solvable = 0;
    for a in &coefficients {
        let poly = CyclePoly::from_terms([(1, a.clone())]);
        for b in &rhs {
            let out = solve_linear_compact(a, b);
            let all = brute_force_cycles_all(&poly, b);
            assert_eq!(out.is_solved(), !all.is_empty(), "{a} X = {b}");
            if let Some(y) = out.solution {
                solvable += 1;
                assert_eq!(a.product(&y), *b);
                // strictly the most components, hence unique
                let most = all.iter().filter(|x| **x != y).map(|x| x.component_count()).max();
                assert!(most.is_none_or(|m| m < y.component_count()), "{a} X = {b}: {y} is not the max-component solution");
            }
        }
    }
    assert!(solvable > 500);
}

#[test]
fn explicit_linear_solver_agrees_at_desk_scale() {
    let coefficients = ["1x1", "1x2", "1x2+1x4", "2x3", "1x1+1x2+1x3"];
    for a in coefficients.map(|s| CycleSum::parse(s).unwrap()) {
        for b in all_sums(10) {
            let compact = solve_linear_compact(&a, &b);
            let explicit = solve_linear_explicit(&a.to_fdds(100).unwrap(), &b.to_fdds(100).unwrap());
            assert_eq!(explicit.reason, compact.reason);
            assert_eq!(explicit.solution.map(|y| CycleSum::from_fdds(&y).unwrap()), compact.solution);
        }
    }
}

#[test]
fn powers_grow_as_multisets() {
    let cap = big(u64::MAX);
    for x in all_sums(8).into_iter().filter(|x| !x.is_zero()) {
        for i in 1..=3 {
            let lo = x.pow_capped(i, &cap).unwrap();
            let hi = x.pow_capped(i + 1, &cap).unwrap();
            assert!(lo.is_subset(&hi), "{x}: power {i} not inside power {}", i + 1);
        }
    }
}

#[test]
fn non_injective_polynomials_are_rejected() {
    let a = CycleSum::parse("1x2+1x3").unwrap();
    assert_eq!(solve_linear_compact(&a, &a).reason, Reason::PreconditionFailed);
    let p = CyclePoly::from_terms([(0, CycleSum::one())]);
    assert_eq!(solve_poly_compact(&p, &CycleSum::one()).reason, Reason::PreconditionFailed);
}

#[test]
fn rewrites_stay_in_the_solution_set() {
    let mut rng = gen::rng(77);
    let mut rewrites = 0;
    for _ in 0..150 {
        let pl = planted_cycle_poly(&mut rng, 2, 2, 6, 8).unwrap();
        let sols = brute_force_cycles_all(&pl.poly, &pl.rhs);
        let m = pl.poly.nonconstant_sum().min_len().unwrap().to_u64().unwrap();
        for x in &sols {
            for (len, _) in x.entries() {
                let len = len.to_u64().unwrap();
                for k in (1..=len).filter(|k| len % k == 0 && m.is_multiple_of(*k)) {
                    let l = len / k;
                    if k.gcd(&l) != 1 {
                        continue;
                    }
                    for d in (1..=k).filter(|d| k % d == 0) {
                        let y = rewrite_solution(x, &big(k), &big(d), &big(l)).unwrap();
                        assert!(sols.contains(&y), "{x} rewritten to {y} for {}", pl.poly);
                        rewrites += 1;
                    }
                }
            }
        }
    }
    assert!(rewrites > 200);
}

#[test]
fn worked_solutions_rewrite_into_each_other() {
    let x = CycleSum::parse("2x2+1x3").unwrap();
    let once = rewrite_solution(&x, &big(2), &big(2), &big(1)).unwrap();
    assert_eq!(once, CycleSum::parse("2x1+1x2+1x3").unwrap());
    let twice = rewrite_solution(&once, &big(2), &big(2), &big(1)).unwrap();
    assert_eq!(twice, CycleSum::parse("4x1+1x3").unwrap());
    assert_eq!(rewrite_solution(&x, &big(2), &big(1), &big(1)).unwrap(), x);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn compact_poly_solutions_re_verify(seed in any::<u64>()) {
        let pl = planted_cycle_poly(&mut gen::rng(seed), 3, 3, 8, 12).unwrap();
        let out = solve_poly_compact(&pl.poly, &pl.rhs);
        let y = out.solution.expect("planted instances are solvable");
        prop_assert_eq!(pl.poly.eval_compact(&y, &big(u64::MAX)).unwrap(), pl.rhs.clone());
        if pl.x0.size() >= big(2) {
            // a degree-m term alone has at least 2^m states
            let m = pl.poly.degree().unwrap() as u32;
            prop_assert!(big(2).pow(m) <= pl.rhs.size());
        }
        let small = brute_force_cycles(&pl.poly, &pl.rhs, 8);
        prop_assert!(small.is_empty() || small.iter().all(|x| x.component_count() <= y.component_count()));
    }

    #[test]
    fn increments_grow_with_multiplicity(seed in any::<u64>(), l in 1u32..7) {
        let mut rng = gen::rng(seed);
        let p = fdds::gen::random_cycle_poly(&mut rng, 2, 2, 6).unwrap().without_constant();
        let y = fdds::gen::random_cycle_sum(&mut rng, 6);
        let cap = big(u64::MAX);
        let py = p.eval_compact(&y, &cap).unwrap();
        let delta = |d: u32| {
            let yc = y.add(&CycleSum::cycles(d, l));
            p.eval_compact(&yc, &cap).unwrap().sub(&py).expect("P(Y) inside P(Y + dC)")
        };
        let first = delta(1);
        let q = first.min_len().unwrap().clone();
        let mut prev = (CycleSum::zero(), big(0));
        for d in 1..6 {
            let cur = delta(d);
            let count = cur.count_of(&q);
            prop_assert!(prev.0.is_subset(&cur));
            prop_assert!(count > prev.1);
            prop_assert_eq!(cur.min_len(), Some(&q));
            prev = (cur, count);
        }
    }
}
