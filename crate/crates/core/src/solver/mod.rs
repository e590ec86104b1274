//! Equation solvers.

pub mod cycles;
pub mod general;
pub mod oracle;

use std::fmt;

use crate::cyclesum::CycleSum;

/// Why a solver stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    Solved,
    NoSolution,
    PreconditionFailed,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::Solved => "solved",
            Reason::NoSolution => "no-solution",
            Reason::PreconditionFailed => "precondition-failed",
        })
    }
}

/// One iteration of a greedy cycle solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    /// Right-hand side still to be produced, before this iteration.
    pub b_remaining: CycleSum,
    /// Partial solution before this iteration.
    pub y: CycleSum,
    /// Cycles added in this iteration.
    pub c: CycleSum,
    pub p_y_plus_c: CycleSum,
    pub p_y: CycleSum,
    /// `P(Y + C) - P(Y)`, removed from the right-hand side.
    pub delta: CycleSum,
}

impl TraceRecord {
    pub const HEADER: &'static str = "B_remaining\tY\tC\tP(Y+C)\tP(Y)\tdelta";
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.b_remaining, self.y, self.c, self.p_y_plus_c, self.p_y, self.delta
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveTrace {
    pub iterations: Vec<TraceRecord>,
}

impl fmt::Display for SolveTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", TraceRecord::HEADER)?;
        for r in &self.iterations {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Result of a solver run; `solution` is present exactly when `reason` is
/// [`Reason::Solved`].
#[derive(Debug, Clone)]
pub struct SolveOutcome<S> {
    pub solution: Option<S>,
    pub trace: SolveTrace,
    pub reason: Reason,
    /// Short explanation when no solution is returned.
    pub note: String,
}

impl<S> SolveOutcome<S> {
    pub(crate) fn solved(solution: S, trace: SolveTrace) -> Self {
        SolveOutcome {
            solution: Some(solution),
            trace,
            reason: Reason::Solved,
            note: String::new(),
        }
    }

    pub(crate) fn fail(reason: Reason, trace: SolveTrace, note: impl Into<String>) -> Self {
        SolveOutcome {
            solution: None,
            trace,
            reason,
            note: note.into(),
        }
    }

    pub fn is_solved(&self) -> bool {
        self.reason == Reason::Solved
    }

    pub fn map<T>(self, f: impl FnOnce(S) -> T) -> SolveOutcome<T> {
        SolveOutcome {
            solution: self.solution.map(f),
            trace: self.trace,
            reason: self.reason,
            note: self.note,
        }
    }
}
