//! Sums of cycles in compact form: sorted `(length, count)` pairs with
//! arbitrary-precision entries.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Overflow, Result};
use crate::fdds::Fdds;

/// A multiset of cycles, `Σ n_i · C_{l_i}`, kept sorted by length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct CycleSum {
    entries: Vec<(BigUint, BigUint)>,
}

impl CycleSum {
    pub fn zero() -> Self {
        CycleSum::default()
    }

    pub fn one() -> Self {
        Self::cycle(1u32)
    }

    /// A single cycle of length `l`.
    pub fn cycle(l: impl Into<BigUint>) -> Self {
        Self::cycles(1u32, l)
    }

    /// `n` copies of a cycle of length `l`.
    pub fn cycles(n: impl Into<BigUint>, l: impl Into<BigUint>) -> Self {
        Self::from_pairs([(l.into(), n.into())])
    }

    /// Build from `(length, count)` pairs in any order; zero counts are
    /// dropped and equal lengths merged.
    ///
    /// # Panics
    /// If a length is zero.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (BigUint, BigUint)>) -> Self {
        let mut map: BTreeMap<BigUint, BigUint> = BTreeMap::new();
        for (l, n) in pairs {
            assert!(!l.is_zero(), "cycle length must be positive");
            if !n.is_zero() {
                *map.entry(l).or_default() += n;
            }
        }
        CycleSum {
            entries: map.into_iter().collect(),
        }
    }

    /// `(length, count)` pairs by increasing length.
    pub fn entries(&self) -> &[(BigUint, BigUint)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_len(&self) -> Option<&BigUint> {
        self.entries.first().map(|(l, _)| l)
    }

    /// Count of cycles of length `l`.
    pub fn count_of(&self, l: &BigUint) -> BigUint {
        self.entries
            .binary_search_by(|(x, _)| x.cmp(l))
            .map(|i| self.entries[i].1.clone())
            .unwrap_or_default()
    }

    /// Number of states, `Σ n_i · l_i`.
    pub fn size(&self) -> BigUint {
        self.entries.iter().map(|(l, n)| l * n).sum()
    }

    /// Number of connected components, `Σ n_i`.
    pub fn component_count(&self) -> BigUint {
        self.entries.iter().map(|(_, n)| n).sum()
    }

    pub fn is_pseudo_cancelable(&self) -> Result<bool> {
        let m = self.min_len().ok_or(Error::EmptySystem)?;
        Ok(self.entries.iter().all(|(l, _)| l.is_multiple_of(m)))
    }

    pub fn add(&self, other: &CycleSum) -> CycleSum {
        Self::from_pairs(self.entries.iter().chain(&other.entries).cloned())
    }

    /// Countwise difference, or `None` if `other` is not contained in `self`.
    pub fn sub(&self, other: &CycleSum) -> Option<CycleSum> {
        let mut map: BTreeMap<BigUint, BigUint> = self.entries.iter().cloned().collect();
        for (l, n) in &other.entries {
            let have = map.get_mut(l)?;
            if *have < *n {
                return None;
            }
            *have -= n;
        }
        Some(Self::from_pairs(map))
    }

    /// Multiset containment `self ⊑ other`.
    pub fn is_subset(&self, other: &CycleSum) -> bool {
        self.entries.iter().all(|(l, n)| other.count_of(l) >= *n)
    }

    /// Product: `C_p · C_q = gcd(p, q) · C_lcm(p, q)` extended bilinearly.
    pub fn product(&self, other: &CycleSum) -> CycleSum {
        let mut pairs = Vec::with_capacity(self.entries.len() * other.entries.len());
        for (la, na) in &self.entries {
            for (lb, nb) in &other.entries {
                let g = la.gcd(lb);
                let l = la / &g * lb;
                pairs.push((l, na * nb * g));
            }
        }
        Self::from_pairs(pairs)
    }

    /// Product, failing when the result would have more than `cap` states.
    pub fn product_capped(&self, other: &CycleSum, cap: &BigUint) -> std::result::Result<CycleSum, Overflow> {
        if self.size() * other.size() > *cap {
            return Err(Overflow);
        }
        Ok(self.product(other))
    }

    /// `self^e` by repeated squaring with every intermediate checked against `cap`.
    pub fn pow_capped(&self, e: usize, cap: &BigUint) -> std::result::Result<CycleSum, Overflow> {
        let mut acc = CycleSum::one();
        if e == 0 {
            return Ok(acc);
        }
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = acc.product_capped(&base, cap)?;
            }
            e >>= 1;
            if e == 0 {
                return Ok(acc);
            }
            base = base.product_capped(&base, cap)?;
        }
    }

    /// Keep the cycles whose length divides `p`.
    pub fn restrict_dividing(&self, p: &BigUint) -> CycleSum {
        CycleSum {
            entries: self.entries.iter().filter(|(l, _)| p.is_multiple_of(l)).cloned().collect(),
        }
    }

    /// Expand into an explicit system, cycles laid out by increasing length.
    pub fn to_fdds(&self, cap: usize) -> Result<Fdds> {
        let size = self.size();
        let n = size.to_usize().filter(|&n| n <= cap).ok_or_else(|| Error::SizeOverflow {
            size: size.to_string(),
            cap: cap.to_string(),
        })?;
        let mut succ = Vec::with_capacity(n);
        for (l, count) in &self.entries {
            let l = l.to_usize().expect("bounded by size");
            let count = count.to_usize().expect("bounded by size");
            for _ in 0..count {
                let base = succ.len();
                succ.extend((1..l).map(|i| base + i));
                succ.push(base);
            }
        }
        Ok(Fdds::from_vec_unchecked(succ))
    }

    /// Compact summary of a permutation; `None` if there are transient states.
    pub fn from_fdds(a: &Fdds) -> Option<CycleSum> {
        let n = a.len();
        let mut indeg = vec![0u8; n];
        for &s in a.succ() {
            if indeg[s] == 1 {
                return None;
            }
            indeg[s] = 1;
        }
        let mut seen = vec![false; n];
        let mut lens: BTreeMap<usize, usize> = BTreeMap::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                len += 1;
                v = a.succ()[v];
            }
            *lens.entry(len).or_default() += 1;
        }
        Some(CycleSum {
            entries: lens.into_iter().map(|(l, c)| (l.into(), c.into())).collect(),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "0" {
            return Ok(CycleSum::zero());
        }
        let mut pairs = Vec::new();
        for term in s.split('+') {
            let (n, l) = term
                .split_once(['x', 'X'])
                .ok_or_else(|| Error::Parse(format!("term `{term}` is not of the form NxL")))?;
            let (n, l) = (parse_big(n)?, parse_big(l)?);
            if l.is_zero() {
                return Err(Error::Parse(format!("zero cycle length in `{term}`")));
            }
            pairs.push((l, n));
        }
        Ok(Self::from_pairs(pairs))
    }
}

/// Decimal integer, optionally written `base^exp`.
pub(crate) fn parse_big(s: &str) -> Result<BigUint> {
    let dec = |t: &str| {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("`{t}` is not a decimal number")));
        }
        Ok(t.parse::<BigUint>().expect("digits only"))
    };
    match s.split_once('^') {
        Some((b, e)) => {
            let e = dec(e)?
                .to_u32()
                .ok_or_else(|| Error::Parse(format!("exponent `{e}` too large")))?;
            Ok(dec(b)?.pow(e))
        }
        None => dec(s),
    }
}

impl fmt::Display for CycleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, n)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{n}x{l}")?;
        }
        Ok(())
    }
}

impl FromStr for CycleSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// The anti-lcm of `b` with respect to `a` (`a | b`): the product of the
/// prime powers of `b` whose exponent in `b` is larger than in `a`, which is
/// also the least `c` with `lcm(a, c) = b`.
///
/// Computed without factoring as `gcd(b, (b/a)^K mod b)` with `K = ⌈log₂ b⌉`:
/// a prime missing from `b/a` contributes nothing, and one present has
/// exponent at least `K ≥` its exponent in `b`.
pub fn anti_lcm(b: &BigUint, a: &BigUint) -> Result<BigUint> {
    if a.is_zero() || b.is_zero() || !b.is_multiple_of(a) {
        return Err(Error::NotDivisible {
            divisor: a.to_string(),
            dividend: b.to_string(),
        });
    }
    if b.is_one() {
        return Ok(BigUint::one());
    }
    let q = b / a;
    let k = BigUint::from((b - 1u32).bits());
    Ok(b.gcd(&q.modpow(&k, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cs(s: &str) -> CycleSum {
        CycleSum::parse(s).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Trial-division reference.
    fn anti_lcm_by_factoring(b: u64, a: u64) -> u64 {
        let mut res = 1;
        let (mut bb, mut aa) = (b, a);
        let mut p = 2;
        while bb > 1 {
            if p * p > bb {
                p = bb;
            }
            let (mut eb, mut ea, mut pk) = (0, 0, 1);
            while bb % p == 0 {
                bb /= p;
                eb += 1;
                pk *= p;
            }
            while aa % p == 0 {
                aa /= p;
                ea += 1;
            }
            if eb > ea {
                res *= pk;
            }
            p += 1;
        }
        res
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(cs("16x2+4x4+18x6+1x12").to_string(), "16x2+4x4+18x6+1x12");
        assert_eq!(cs("0"), CycleSum::zero());
        assert_eq!(cs(" 1x3 + 2x1 + 1x3 ").to_string(), "2x1+2x3");
        assert_eq!(cs("10^3x7").count_of(&big(7)), big(1000));
        assert_eq!(cs("0x5"), CycleSum::zero());
        assert!(CycleSum::parse("3x0").is_err());
        assert!(CycleSum::parse("3y2").is_err());
        assert!(CycleSum::parse("x2").is_err());
    }

    #[test]
    fn products() {
        assert_eq!(cs("1x2").product(&cs("1x2")), cs("2x2"));
        assert_eq!(cs("1x2").product(&cs("1x3")), cs("1x6"));
        assert_eq!(cs("1x2").product(&cs("16x1+11x3")), cs("16x2+11x6"));
        assert_eq!(cs("1x2").product(&CycleSum::zero()), CycleSum::zero());
        assert_eq!(cs("1x5").product(&CycleSum::one()), cs("1x5"));
    }

    #[test]
    fn add_sub_subset() {
        let rhs = cs("16x2+4x4+18x6+1x12");
        let c = cs("1x2+1x4+1x6");
        assert!(c.is_subset(&rhs));
        assert_eq!(rhs.sub(&c).unwrap(), cs("15x2+3x4+17x6+1x12"));
        assert_eq!(cs("16x2").sub(&cs("16x2")).unwrap(), CycleSum::zero());
        assert_eq!(cs("1x2").sub(&cs("2x2")), None);
        assert_eq!(cs("1x2").sub(&cs("1x3")), None);
        assert!(!cs("1x3").is_subset(&cs("5x2")));
        assert_eq!(c.add(&rhs).sub(&c).unwrap(), rhs);
    }

    #[test]
    fn sizes() {
        assert_eq!(CycleSum::zero().size(), big(0));
        assert_eq!(cs("16x2+4x4+18x6+1x12").size(), big(168));
        let huge = BigUint::from(10u32).pow(100);
        assert_eq!(CycleSum::cycle(huge.clone()).size(), huge);
    }

    #[test]
    fn anti_lcm_examples() {
        assert_eq!(anti_lcm(&big(252), &big(12)).unwrap(), big(63));
        assert_eq!(anti_lcm(&big(252), &big(252)).unwrap(), big(1));
        assert_eq!(anti_lcm(&big(252), &big(1)).unwrap(), big(252));
        assert_eq!(anti_lcm(&big(1), &big(1)).unwrap(), big(1));
        assert!(matches!(anti_lcm(&big(10), &big(3)), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn anti_lcm_matches_factoring_up_to_2000() {
        for b in 1..=2000u64 {
            for a in (1..=b).filter(|a| b % a == 0) {
                assert_eq!(anti_lcm(&big(b), &big(a)).unwrap(), big(anti_lcm_by_factoring(b, a)), "({b}, {a})");
            }
        }
    }

    #[test]
    fn anti_lcm_is_least_lcm_complement() {
        for b in 1..=600u64 {
            for a in (1..=b).filter(|a| b % a == 0) {
                let least = (1..=b).find(|&c| a.lcm(&c) == b).unwrap();
                assert_eq!(anti_lcm(&big(b), &big(a)).unwrap(), big(least));
            }
        }
    }

    #[test]
    fn fdds_conversion() {
        let a = Fdds::parse("1 0 3 2").unwrap();
        assert_eq!(CycleSum::from_fdds(&a), Some(cs("2x2")));
        assert_eq!(CycleSum::from_fdds(&Fdds::parse("0 0").unwrap()), None);
        assert_eq!(CycleSum::from_fdds(&Fdds::zero()), Some(CycleSum::zero()));
        assert!(matches!(cs("2x5").to_fdds(9), Err(Error::SizeOverflow { .. })));
    }

    #[test]
    fn power_law() {
        let cap = BigUint::from(u64::MAX);
        for p in 1..=20u64 {
            for q in 1..=5usize {
                let lhs = CycleSum::cycle(p).pow_capped(q, &cap).unwrap();
                assert_eq!(lhs, CycleSum::cycles(p.pow(q as u32 - 1), p));
            }
        }
        assert_eq!(cs("1x3").pow_capped(3, &big(8)), Err(Overflow));
    }

    fn small_cs() -> impl Strategy<Value = CycleSum> {
        prop::collection::vec((1u64..7, 0u64..3), 0..4)
            .prop_map(|v| CycleSum::from_pairs(v.into_iter().map(|(l, n)| (big(l), big(n)))))
    }

    proptest! {
        #[test]
        fn fdds_round_trip(a in small_cs()) {
            let f = a.to_fdds(1000).unwrap();
            prop_assert_eq!(CycleSum::from_fdds(&f), Some(a));
        }

        #[test]
        fn product_agrees_with_explicit(a in small_cs(), b in small_cs()) {
            let p = a.to_fdds(1000).unwrap().product(&b.to_fdds(1000).unwrap()).unwrap();
            prop_assert_eq!(CycleSum::from_fdds(&p), Some(a.product(&b)));
        }

        #[test]
        fn powers_are_monotone(x in small_cs(), i in 1usize..4) {
            let cap = BigUint::from(u64::MAX);
            let lo = x.pow_capped(i, &cap).unwrap();
            let hi = x.pow_capped(i + 1, &cap).unwrap();
            prop_assert!(lo.is_subset(&hi));
        }

        #[test]
        fn anti_lcm_wide(a in prop::collection::vec(any::<u64>(), 1..5), m in prop::collection::vec(any::<u64>(), 1..5)) {
            let a: BigUint = a.into_iter().map(|x| big(x | 1)).product();
            let b = &a * m.into_iter().map(|x| big(x.max(1))).product::<BigUint>();
            let c = anti_lcm(&b, &a).unwrap();
            prop_assert_eq!(a.lcm(&c), b.clone());
            prop_assert!(b.is_multiple_of(&c));
            // no proper divisor of c keeps the lcm
            prop_assert_eq!(c.gcd(&(&b / &c)), BigUint::one());
        }

        #[test]
        fn distinct_lengths_need_triangular_size(a in small_cs()) {
            let c = a.entries().len() as u64;
            prop_assert!(a.size() >= big(c * (c + 1) / 2));
        }
    }
}
