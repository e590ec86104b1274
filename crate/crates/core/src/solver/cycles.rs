//! Greedy solvers for `A·X = B` and `P(X) = B` over sums of cycles.
//!
//! Each iteration adds cycles of the least length compatible with the
//! smallest cycle left in `B`, which yields the solution with the most
//! connected components.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{Reason, SolveOutcome, SolveTrace, TraceRecord};
use crate::canon::sub_components;
use crate::cyclesum::{anti_lcm, CycleSum};
use crate::error::{Error, Result};
use crate::fdds::Fdds;
use crate::poly::{CyclePoly, FddsPoly};

fn compact(a: &Fdds) -> CycleSum {
    CycleSum::from_fdds(a).expect("checked to be a sum of cycles")
}

fn min_len(a: &Fdds) -> usize {
    a.min_cycle_len().expect("nonempty")
}

/// Solve `a·X = b` on explicit sums of cycles, one cycle per iteration.
pub fn solve_linear_explicit(a: &Fdds, b: &Fdds) -> SolveOutcome<Fdds> {
    use Reason::*;
    let mut trace = SolveTrace::default();
    if a.is_empty() || !a.is_sum_of_cycles() || !b.is_sum_of_cycles() {
        return SolveOutcome::fail(PreconditionFailed, trace, "operands must be nonempty sums of cycles");
    }
    if !a.is_pseudo_cancelable().unwrap_or(false) {
        return SolveOutcome::fail(PreconditionFailed, trace, "coefficient is not pseudo-cancelable");
    }
    let ma = min_len(a);
    let mut rest = b.clone();
    let mut x = Fdds::zero();
    let mut ax = CycleSum::zero();
    while !rest.is_empty() {
        if a.len() > rest.len() {
            return SolveOutcome::fail(NoSolution, trace, "coefficient larger than what is left");
        }
        let mb = min_len(&rest);
        if !mb.is_multiple_of(ma) {
            return SolveOutcome::fail(NoSolution, trace, format!("{ma} does not divide {mb}"));
        }
        let len = anti_lcm(&mb.into(), &ma.into()).expect("divides").to_usize().expect("fits");
        let c = Fdds::cycle(len);
        let ac = a.product(&c).expect("bounded by |b|");
        let record = TraceRecord {
            b_remaining: compact(&rest),
            y: compact(&x),
            c: compact(&c),
            p_y_plus_c: ax.add(&compact(&ac)),
            p_y: ax.clone(),
            delta: compact(&ac),
        };
        ax = record.p_y_plus_c.clone();
        trace.iterations.push(record);
        match sub_components(&rest, &ac) {
            Some(r) => rest = r,
            None => return SolveOutcome::fail(NoSolution, trace, "product not contained in the right-hand side"),
        }
        x = x.sum(&c);
    }
    SolveOutcome::solved(x, trace)
}

/// Solve `p(X) = b` on explicit sums of cycles, one cycle per iteration.
pub fn solve_poly_explicit(p: &FddsPoly, b: &Fdds) -> SolveOutcome<Fdds> {
    use Reason::*;
    let mut trace = SolveTrace::default();
    if !p.is_pseudo_injective() {
        return SolveOutcome::fail(PreconditionFailed, trace, "polynomial is not pseudo-injective");
    }
    if !b.is_sum_of_cycles() || p.terms().any(|(_, c)| !c.is_sum_of_cycles()) {
        return SolveOutcome::fail(PreconditionFailed, trace, "operands must be sums of cycles");
    }
    let Some(b1) = sub_components(b, &p.constant()) else {
        return SolveOutcome::fail(NoSolution, trace, "constant term not contained in the right-hand side");
    };
    let q = p.without_constant();
    let ma = min_len(&q.nonconstant_sum());
    let cap = BigUint::from(b1.len());
    let mut rest = b1;
    let mut y = Fdds::zero();
    let mut py = Fdds::zero();
    while !rest.is_empty() {
        let mb = min_len(&rest);
        if !mb.is_multiple_of(ma) {
            return SolveOutcome::fail(NoSolution, trace, format!("{ma} does not divide {mb}"));
        }
        let len = anti_lcm(&mb.into(), &ma.into()).expect("divides").to_usize().expect("fits");
        let c = Fdds::cycle(len);
        let yc = y.sum(&c);
        let Ok(pyc) = q.eval_capped(&yc, &cap) else {
            return SolveOutcome::fail(NoSolution, trace, "evaluation exceeds the right-hand side");
        };
        let delta = sub_components(&pyc, &py).expect("P(Y) is contained in P(Y + C)");
        trace.iterations.push(TraceRecord {
            b_remaining: compact(&rest),
            y: compact(&y),
            c: compact(&c),
            p_y_plus_c: compact(&pyc),
            p_y: compact(&py),
            delta: compact(&delta),
        });
        match sub_components(&rest, &delta) {
            Some(r) => rest = r,
            None => return SolveOutcome::fail(NoSolution, trace, "increment not contained in the right-hand side"),
        }
        y = yc;
        py = pyc;
    }
    SolveOutcome::solved(y, trace)
}

/// Solve `a·X = b` in compact form, adding all cycles of one length at once.
pub fn solve_linear_compact(a: &CycleSum, b: &CycleSum) -> SolveOutcome<CycleSum> {
    use Reason::*;
    let mut trace = SolveTrace::default();
    if a.is_zero() || !a.is_pseudo_cancelable().unwrap_or(false) {
        return SolveOutcome::fail(PreconditionFailed, trace, "coefficient is not a nonempty pseudo-cancelable sum");
    }
    let (a_size, la) = (a.size(), a.min_len().expect("nonempty").clone());
    let mut rest = b.clone();
    let mut x = CycleSum::zero();
    let mut ax = CycleSum::zero();
    while let Some((lb, nb)) = rest.entries().first().cloned() {
        if a_size > rest.size() {
            return SolveOutcome::fail(NoSolution, trace, "coefficient larger than what is left");
        }
        if !lb.is_multiple_of(&la) {
            return SolveOutcome::fail(NoSolution, trace, format!("{la} does not divide {lb}"));
        }
        let p = anti_lcm(&lb, &la).expect("divides");
        let d = a.product(&CycleSum::cycle(p.clone())).count_of(&lb);
        if d.is_zero() || !nb.is_multiple_of(&d) {
            return SolveOutcome::fail(NoSolution, trace, format!("{d} does not divide {nb}"));
        }
        let s = CycleSum::cycles(nb / d, p);
        let as_ = a.product(&s);
        let record = TraceRecord {
            b_remaining: rest.clone(),
            y: x.clone(),
            c: s.clone(),
            p_y_plus_c: ax.add(&as_),
            p_y: ax.clone(),
            delta: as_.clone(),
        };
        ax = record.p_y_plus_c.clone();
        trace.iterations.push(record);
        match rest.sub(&as_) {
            Some(r) => rest = r,
            None => return SolveOutcome::fail(NoSolution, trace, "product not contained in the right-hand side"),
        }
        x = x.add(&s);
    }
    SolveOutcome::solved(x, trace)
}

/// Solve `p(X) = b` in compact form. For each smallest remaining length `q`,
/// the number `d` of new cycles is found by binary search: the count of
/// `q`-cycles in `P(Y + d·C_l) - P(Y)` grows strictly with `d` and must
/// match the count in `b` exactly.
pub fn solve_poly_compact(p: &CyclePoly, b: &CycleSum) -> SolveOutcome<CycleSum> {
    use Reason::*;
    let mut trace = SolveTrace::default();
    if !p.is_pseudo_injective() {
        return SolveOutcome::fail(PreconditionFailed, trace, "polynomial is not pseudo-injective");
    }
    let Some(b1) = b.sub(&p.constant()) else {
        return SolveOutcome::fail(NoSolution, trace, "constant term not contained in the right-hand side");
    };
    let q = p.without_constant();
    let ma = q.nonconstant_sum().min_len().expect("nonempty").clone();
    let cap = b1.size();
    let mut rest = b1;
    let mut y = CycleSum::zero();
    let mut py = CycleSum::zero();
    while let Some((lb, nb)) = rest.entries().first().cloned() {
        if !lb.is_multiple_of(&ma) {
            return SolveOutcome::fail(NoSolution, trace, format!("{ma} does not divide {lb}"));
        }
        let l = anti_lcm(&lb, &ma).expect("divides");
        // (count of lb-cycles in the increment, value, increment) for d copies
        let probe = |d: &BigUint| -> Option<(BigUint, CycleSum, CycleSum)> {
            let yc = y.add(&CycleSum::cycles(d.clone(), l.clone()));
            let val = q.eval_compact(&yc, &cap).ok()?;
            let delta = val.sub(&py).expect("P(Y) is contained in P(Y + dC)");
            Some((delta.count_of(&lb), val, delta))
        };
        let (mut lo, mut hi) = (BigUint::from(1u32), nb.clone());
        let mut found = None;
        while lo <= hi {
            let mid: BigUint = (&lo + &hi) >> 1;
            match probe(&mid) {
                None => hi = mid - 1u32,
                Some((count, val, delta)) => match count.cmp(&nb) {
                    std::cmp::Ordering::Greater => hi = mid - 1u32,
                    std::cmp::Ordering::Less => lo = mid + 1u32,
                    std::cmp::Ordering::Equal => {
                        found = Some((mid, val, delta));
                        break;
                    }
                },
            }
        }
        let Some((d, val, delta)) = found else {
            return SolveOutcome::fail(NoSolution, trace, format!("no multiplicity of C{l} accounts for {nb} cycles of length {lb}"));
        };
        let c = CycleSum::cycles(d, l);
        trace.iterations.push(TraceRecord {
            b_remaining: rest.clone(),
            y: y.clone(),
            c: c.clone(),
            p_y_plus_c: val.clone(),
            p_y: py.clone(),
            delta: delta.clone(),
        });
        match rest.sub(&delta) {
            Some(r) => rest = r,
            None => return SolveOutcome::fail(NoSolution, trace, "increment not contained in the right-hand side"),
        }
        y = y.add(&c);
        py = val;
    }
    SolveOutcome::solved(y, trace)
}

/// Explicit `a·X = b` through the compact solver.
pub fn solve_linear_explicit_fast(a: &Fdds, b: &Fdds) -> SolveOutcome<Fdds> {
    let (Some(ca), Some(cb)) = (CycleSum::from_fdds(a), CycleSum::from_fdds(b)) else {
        return SolveOutcome::fail(Reason::PreconditionFailed, SolveTrace::default(), "operands must be sums of cycles");
    };
    // |X| ≤ |b| whenever a solution exists
    solve_linear_compact(&ca, &cb).map(|x| x.to_fdds(b.len()).expect("bounded by |b|"))
}

/// Replace one cycle of length `k·l` in `x` by `d` cycles of length `(k/d)·l`.
///
/// When `k` divides the minimum cycle length of the coefficients and is
/// coprime to `l`, both sums give the same value under the polynomial.
pub fn rewrite_solution(x: &CycleSum, k: &BigUint, d: &BigUint, l: &BigUint) -> Result<CycleSum> {
    if d.is_zero() || !k.is_multiple_of(d) {
        return Err(Error::NotDivisible {
            divisor: d.to_string(),
            dividend: k.to_string(),
        });
    }
    let long = k * l;
    let rest = x
        .sub(&CycleSum::cycle(long.clone()))
        .ok_or_else(|| Error::MissingCycle(long.to_string()))?;
    Ok(rest.add(&CycleSum::cycles(d.clone(), k / d * l)))
}
