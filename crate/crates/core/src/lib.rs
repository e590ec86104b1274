//! Finite discrete dynamical systems (FDDS) as a commutative semiring, with
//! exact solvers for `A·X = B` and `P(X) = B` when `A` is pseudo-cancelable
//! or `P` pseudo-injective.
//!
//! Systems come in two encodings: [`Fdds`], an explicit successor table,
//! and [`CycleSum`], a compact list of `(length, count)` pairs for systems
//! without transient states.

pub mod canon;
pub mod cyclesum;
pub mod enumerate;
pub mod equation;
pub mod error;
pub mod fdds;
pub mod gen;
pub mod par;
pub mod poly;
pub mod scaling;
pub mod solver;
pub mod unroll;

pub use canon::{canon, is_isomorphic, sub_components, CanonForm};
pub use cyclesum::{anti_lcm, CycleSum};
pub use error::{Error, Overflow, Result};
pub use fdds::{Component, Fdds};
pub use par::Exec;
pub use poly::{CyclePoly, FddsPoly, Poly};
pub use solver::{Reason, SolveOutcome, SolveTrace, TraceRecord};
pub use unroll::UnrollTree;
