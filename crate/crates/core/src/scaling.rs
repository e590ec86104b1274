//! Size sweeps for the linear solvers and a log-log growth fit.

use std::time::Instant;

use num_bigint::BigUint;
use rand::Rng;

use crate::cyclesum::CycleSum;
use crate::fdds::Fdds;
use crate::gen;
use crate::solver::cycles::{solve_linear_compact, solve_linear_explicit_fast};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub size: usize,
    pub seconds: f64,
}

/// Coefficient used by the sweeps: `C1 + C2`.
pub fn sweep_coefficient() -> CycleSum {
    CycleSum::from_pairs([(1u32.into(), 1u32.into()), (2u32.into(), 1u32.into())])
}

/// `X` with the lengths `1..=c` present, random small counts.
pub fn distinct_lengths(rng: &mut impl Rng, c: usize) -> CycleSum {
    CycleSum::from_pairs((1..=c).map(|l| (BigUint::from(l), BigUint::from(rng.gen_range(1..=3u32)))))
}

/// Explicit `A·X = B` with `|B|` close to `n` (never above), many distinct lengths in `X`.
pub fn explicit_linear_instance(n: usize) -> (Fdds, Fdds) {
    let a = sweep_coefficient();
    let a_size = 3;
    let budget = n / a_size;
    // lengths 1..=k once each, then a filler of C1s
    let mut k = 0;
    while (k + 1) * (k + 2) / 2 <= budget {
        k += 1;
    }
    let mut pairs: Vec<(BigUint, BigUint)> = (1..=k).map(|l| (BigUint::from(l), BigUint::from(1u32))).collect();
    let used = k * (k + 1) / 2;
    if budget > used {
        pairs.push((BigUint::from(1u32), BigUint::from(budget - used)));
    }
    let x = CycleSum::from_pairs(pairs);
    let b = a.product(&x);
    let a = a.to_fdds(usize::MAX).expect("small");
    let b = b.to_fdds(usize::MAX).expect("bounded by n");
    (a, b)
}

/// Median wall time of `reps` runs of `f`.
pub fn time_median(reps: usize, mut f: impl FnMut()) -> f64 {
    let mut times: Vec<f64> = (0..reps.max(1))
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_secs_f64()
        })
        .collect();
    times.sort_by(f64::total_cmp);
    times[times.len() / 2]
}

/// Least-squares slope of `log(seconds)` against `log(size)`.
pub fn fitted_exponent(points: &[SweepPoint]) -> f64 {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.size > 0 && p.seconds > 0.0)
        .map(|p| ((p.size as f64).ln(), p.seconds.ln()))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return f64::NAN;
    }
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Explicit linear solving through the compact encoding at each size.
pub fn sweep_explicit_fast(sizes: &[usize], reps: usize) -> Vec<SweepPoint> {
    sizes
        .iter()
        .map(|&n| {
            let (a, b) = explicit_linear_instance(n);
            let seconds = time_median(reps, || {
                let out = solve_linear_explicit_fast(&a, &b);
                assert!(out.is_solved());
            });
            SweepPoint { size: b.len(), seconds }
        })
        .collect()
}

/// Compact linear solving with `c` distinct lengths in the unknown.
pub fn sweep_compact_linear(counts: &[usize], reps: usize, seed: u64) -> Vec<SweepPoint> {
    let mut rng = gen::rng(seed);
    counts
        .iter()
        .map(|&c| {
            let a = sweep_coefficient();
            let b = a.product(&distinct_lengths(&mut rng, c));
            let seconds = time_median(reps, || {
                let out = solve_linear_compact(&a, &b);
                assert!(out.is_solved());
            });
            SweepPoint { size: c, seconds }
        })
        .collect()
}
