//! Seeded random instances.
//!
//! Solvable instances are built forwards: pick `X₀`, compute `B = P(X₀)`.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclesum::CycleSum;
use crate::error::{Error, Result};
use crate::fdds::Fdds;
use crate::poly::{CyclePoly, FddsPoly};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random map on `n` states.
pub fn random_fdds(rng: &mut impl Rng, n: usize) -> Fdds {
    Fdds::new((0..n).map(|_| rng.gen_range(0..n)).collect()).expect("in range")
}

/// A random map on between 0 and `max_states` states.
pub fn random_fdds_up_to(rng: &mut impl Rng, max_states: usize) -> Fdds {
    let n = rng.gen_range(0..=max_states);
    random_fdds(rng, n)
}

/// A random connected system with `n ≥ 1` states: a cycle, then each
/// remaining state mapped to an earlier one.
pub fn random_connected(rng: &mut impl Rng, n: usize) -> Fdds {
    assert!(n >= 1);
    let len = rng.gen_range(1..=n);
    let mut succ: Vec<usize> = (0..len).map(|i| (i + 1) % len).collect();
    for v in len..n {
        succ.push(rng.gen_range(0..v));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Fdds::new(succ).and_then(|f| f.relabel(&perm)).expect("valid")
}

/// A random sum of cycles with between 1 and `max_states` states.
pub fn random_cycle_sum(rng: &mut impl Rng, max_states: usize) -> CycleSum {
    let total = rng.gen_range(1..=max_states.max(1));
    let mut left = total;
    let mut pairs = Vec::new();
    while left > 0 {
        let l = rng.gen_range(1..=left);
        pairs.push((BigUint::from(l), BigUint::from(1u32)));
        left -= l;
    }
    CycleSum::from_pairs(pairs)
}

/// A random pseudo-cancelable sum of cycles with at most `max_states`
/// states: a base length `m` present at least once, other lengths multiples of `m`.
pub fn random_pseudo_cancelable(rng: &mut impl Rng, max_states: usize) -> Result<CycleSum> {
    if max_states == 0 {
        return Err(Error::InvalidArgument("a pseudo-cancelable sum needs at least one state".into()));
    }
    let m = rng.gen_range(1..=max_states.min(6));
    let total = rng.gen_range(m..=max_states);
    let mut pairs = vec![(BigUint::from(m), BigUint::from(1u32))];
    let mut left = total - m;
    while left >= m {
        let l = m * rng.gen_range(1..=left / m);
        pairs.push((BigUint::from(l), BigUint::from(1u32)));
        left -= l;
    }
    Ok(CycleSum::from_pairs(pairs))
}

/// A pseudo-injective compact polynomial: up to `terms` nonconstant terms of
/// degree at most `max_degree`, each coefficient a multiple-of-`m` cycle sum.
pub fn random_cycle_poly(rng: &mut impl Rng, max_degree: usize, terms: usize, coeff_states: usize) -> Result<CyclePoly> {
    if max_degree == 0 || terms == 0 || coeff_states == 0 {
        return Err(Error::InvalidArgument("need a nonconstant term with a nonempty coefficient".into()));
    }
    let m = rng.gen_range(1..=coeff_states.min(4));
    let mut p = CyclePoly::new();
    for _ in 0..rng.gen_range(1..=terms) {
        let d = rng.gen_range(1..=max_degree);
        let states = rng.gen_range(m..=coeff_states.max(m));
        let mut pairs = Vec::new();
        let mut left = states;
        while left >= m {
            let l = m * rng.gen_range(1..=left / m);
            pairs.push((BigUint::from(l), BigUint::from(1u32)));
            left -= l;
        }
        p.add_term(d, CycleSum::from_pairs(pairs));
    }
    // make sure the least length is present
    let lead = p.nonconstant_terms().next().expect("nonempty").0;
    p.add_term(lead, CycleSum::cycle(m));
    if rng.gen_bool(0.3) {
        p.add_term(0, random_cycle_sum(rng, coeff_states));
    }
    debug_assert!(p.is_pseudo_injective());
    Ok(p)
}

/// A pseudo-injective explicit polynomial whose coefficients may have
/// transient states; retries until the nonconstant part is pseudo-cancelable.
pub fn random_fdds_poly(rng: &mut impl Rng, max_degree: usize, terms: usize, coeff_states: usize) -> Result<FddsPoly> {
    if max_degree == 0 || terms == 0 || coeff_states == 0 {
        return Err(Error::InvalidArgument("need a nonconstant term with a nonempty coefficient".into()));
    }
    loop {
        let mut p = FddsPoly::new();
        for _ in 0..rng.gen_range(1..=terms) {
            let d = rng.gen_range(1..=max_degree);
            let n = rng.gen_range(1..=coeff_states);
            p.add_term(d, random_fdds(rng, n));
        }
        if rng.gen_bool(0.3) {
            let n = rng.gen_range(1..=coeff_states);
            p.add_term(0, random_fdds(rng, n));
        }
        if p.is_pseudo_injective() {
            return Ok(p);
        }
    }
}

/// Equation with a known solution.
#[derive(Debug, Clone)]
pub struct Planted<P, X> {
    pub poly: P,
    pub x0: X,
    pub rhs: X,
}

/// `a·X₀` with `a` pseudo-cancelable and `X₀` a random sum of cycles.
pub fn planted_linear(rng: &mut impl Rng, a_states: usize, x_states: usize) -> Result<Planted<CycleSum, CycleSum>> {
    let a = random_pseudo_cancelable(rng, a_states)?;
    let x0 = random_cycle_sum(rng, x_states);
    let rhs = a.product(&x0);
    Ok(Planted { poly: a, x0, rhs })
}

/// `P(X₀)` over sums of cycles.
pub fn planted_cycle_poly(
    rng: &mut impl Rng,
    max_degree: usize,
    terms: usize,
    coeff_states: usize,
    x_states: usize,
) -> Result<Planted<CyclePoly, CycleSum>> {
    let poly = random_cycle_poly(rng, max_degree, terms, coeff_states)?;
    let x0 = random_cycle_sum(rng, x_states);
    let rhs = poly.eval_compact(&x0, &BigUint::from(u64::MAX)).map_err(Error::from)?;
    Ok(Planted { poly, x0, rhs })
}

/// `P(X₀)` for explicit systems with transient states.
pub fn planted_fdds_poly(
    rng: &mut impl Rng,
    max_degree: usize,
    terms: usize,
    coeff_states: usize,
    x_states: usize,
) -> Result<Planted<FddsPoly, Fdds>> {
    let poly = random_fdds_poly(rng, max_degree, terms, coeff_states)?;
    let x0 = random_fdds_up_to(rng, x_states);
    let rhs = poly.eval(&x0)?;
    Ok(Planted { poly, x0, rhs })
}
