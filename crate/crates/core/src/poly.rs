//! Polynomials over the semiring, with coefficients in either encoding.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::cyclesum::CycleSum;
use crate::error::{Error, Overflow, Result};
use crate::fdds::Fdds;
use crate::par::Exec;

/// Semiring elements a [`Poly`] can be evaluated over.
pub trait Element: Clone + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn size(&self) -> BigUint;
    fn add(&self, other: &Self) -> Self;
    /// Product; the caller has already checked the result size against `cap`.
    fn mul(&self, other: &Self, cap: &BigUint) -> std::result::Result<Self, Overflow>;
    fn is_pseudo_cancelable(&self) -> Result<bool>;
}

impl Element for CycleSum {
    fn zero() -> Self {
        CycleSum::zero()
    }
    fn one() -> Self {
        CycleSum::one()
    }
    fn is_zero(&self) -> bool {
        CycleSum::is_zero(self)
    }
    fn size(&self) -> BigUint {
        CycleSum::size(self)
    }
    fn add(&self, other: &Self) -> Self {
        CycleSum::add(self, other)
    }
    fn mul(&self, other: &Self, cap: &BigUint) -> std::result::Result<Self, Overflow> {
        self.product_capped(other, cap)
    }
    fn is_pseudo_cancelable(&self) -> Result<bool> {
        CycleSum::is_pseudo_cancelable(self)
    }
}

impl Element for Fdds {
    fn zero() -> Self {
        Fdds::zero()
    }
    fn one() -> Self {
        Fdds::one()
    }
    fn is_zero(&self) -> bool {
        self.is_empty()
    }
    fn size(&self) -> BigUint {
        BigUint::from(self.len())
    }
    fn add(&self, other: &Self) -> Self {
        self.sum(other)
    }
    fn mul(&self, other: &Self, cap: &BigUint) -> std::result::Result<Self, Overflow> {
        let cap = cap.to_usize().unwrap_or(usize::MAX);
        self.product_with(other, cap, Exec::best()).map_err(|_| Overflow)
    }
    fn is_pseudo_cancelable(&self) -> Result<bool> {
        Fdds::is_pseudo_cancelable(self)
    }
}

/// `Σ A_i X^i`, stored as a map from degree to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<C> {
    coeffs: BTreeMap<usize, C>,
}

pub type CyclePoly = Poly<CycleSum>;
pub type FddsPoly = Poly<Fdds>;

impl<C: Element> Default for Poly<C> {
    fn default() -> Self {
        Poly { coeffs: BTreeMap::new() }
    }
}

impl<C: Element> Poly<C> {
    pub fn new() -> Self {
        Self::default()
    }

    /// The polynomial `X`.
    pub fn identity() -> Self {
        Self::from_terms([(1, C::one())])
    }

    /// Terms with equal degree are added; zero coefficients are dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, C)>) -> Self {
        let mut p = Self::new();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, degree: usize, c: C) {
        if c.is_zero() {
            return;
        }
        let merged = match self.coeffs.remove(&degree) {
            Some(old) => old.add(&c),
            None => c,
        };
        self.coeffs.insert(degree, merged);
    }

    pub fn coeff(&self, degree: usize) -> Option<&C> {
        self.coeffs.get(&degree)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    /// Terms of degree at least one.
    pub fn nonconstant_terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.terms().filter(|&(d, _)| d > 0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// The constant coefficient, `0` when absent.
    pub fn constant(&self) -> C {
        self.coeffs.get(&0).cloned().unwrap_or_else(C::zero)
    }

    /// The same polynomial without its constant term.
    pub fn without_constant(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().filter(|(&d, _)| d > 0).map(|(&d, c)| (d, c.clone())).collect(),
        }
    }

    /// Sum of the nonconstant coefficients.
    pub fn nonconstant_sum(&self) -> C {
        self.nonconstant_terms().fold(C::zero(), |acc, (_, c)| acc.add(c))
    }

    /// Pseudo-injective: the nonconstant coefficients add up to a
    /// pseudo-cancelable element. Polynomials without such terms are not.
    pub fn is_pseudo_injective(&self) -> bool {
        let s = self.nonconstant_sum();
        !s.is_zero() && s.is_pseudo_cancelable().unwrap_or(false)
    }

    /// `|P(X)|` from sizes alone.
    pub fn size_at(&self, x_size: &BigUint) -> BigUint {
        self.terms().map(|(d, c)| c.size() * x_size.pow(d as u32)).sum()
    }

    /// Evaluate, giving up as soon as the result (and hence any
    /// intermediate power or product) would exceed `cap` states.
    pub fn eval_capped(&self, x: &C, cap: &BigUint) -> std::result::Result<C, Overflow> {
        if self.size_at(&x.size()) > *cap {
            return Err(Overflow);
        }
        let mut acc = C::zero();
        // powers of x reused across terms
        let mut pow = C::one();
        let mut pow_deg = 0;
        for (d, c) in self.terms() {
            while pow_deg < d {
                pow = pow.mul(x, cap)?;
                pow_deg += 1;
            }
            acc = acc.add(&c.mul(&pow, cap)?);
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &C) -> Result<C> {
        let cap = BigUint::from(crate::fdds::DEFAULT_PRODUCT_CAP);
        self.eval_capped(x, &cap).map_err(Error::from)
    }
}

impl CyclePoly {
    /// Evaluation with repeated squaring per term; suited to large degrees.
    pub fn eval_compact(&self, x: &CycleSum, cap: &BigUint) -> std::result::Result<CycleSum, Overflow> {
        if self.size_at(&x.size()) > *cap {
            return Err(Overflow);
        }
        let mut acc = CycleSum::zero();
        for (d, c) in self.terms() {
            acc = acc.add(&c.product_capped(&x.pow_capped(d, cap)?, cap)?);
        }
        Ok(acc)
    }

    /// Explicit polynomial with the same coefficients.
    pub fn to_fdds_poly(&self, cap: usize) -> Result<FddsPoly> {
        let mut p = FddsPoly::new();
        for (d, c) in self.terms() {
            p.add_term(d, c.to_fdds(cap)?);
        }
        Ok(p)
    }
}

impl FddsPoly {
    /// Compact polynomial, if every coefficient is a sum of cycles.
    pub fn to_cycle_poly(&self) -> Option<CyclePoly> {
        let mut p = CyclePoly::new();
        for (d, c) in self.terms() {
            p.add_term(d, CycleSum::from_fdds(c)?);
        }
        Some(p)
    }
}

impl<C: Element> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})·X")?,
                _ => write!(f, "({c})·X^{d}")?,
            }
        }
        Ok(())
    }
}
