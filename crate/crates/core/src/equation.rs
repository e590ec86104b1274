//! Text formats for operands and equation files.
//!
//! An operand is either compact (`16x2+4x4`, `0` for the empty sum) or an
//! explicit successor table (`1 0 3 2`). A leading `compact:` or
//! `explicit:` forces the encoding; otherwise text containing an `x` is
//! compact. An equation file looks like
//!
//! ```text
//! # comments start with '#'
//! [polynomial]
//! 2 = compact: 1x2
//! 1 = compact: 1x4+1x6
//! [rhs]
//! compact: 16x2+4x4+18x6+1x12
//! ```

use std::fmt;

use crate::cyclesum::CycleSum;
use crate::error::{Error, Result};
use crate::fdds::Fdds;
use crate::poly::{CyclePoly, FddsPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Compact(CycleSum),
    Explicit(Fdds),
}

impl Operand {
    pub fn parse(text: &str) -> Result<Self> {
        let body: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let body = body.join(" ");
        let body = body.trim();
        if let Some(rest) = body.strip_prefix("compact:") {
            return Ok(Operand::Compact(CycleSum::parse(rest)?));
        }
        if let Some(rest) = body.strip_prefix("explicit:") {
            return Ok(Operand::Explicit(Fdds::parse(rest)?));
        }
        if body.contains(['x', 'X']) {
            Ok(Operand::Compact(CycleSum::parse(body)?))
        } else {
            Ok(Operand::Explicit(Fdds::parse(body)?))
        }
    }

    pub fn is_compact(&self) -> bool {
        matches!(self, Operand::Compact(_))
    }

    /// Explicit form, expanding compact operands up to `cap` states.
    pub fn to_fdds(&self, cap: usize) -> Result<Fdds> {
        match self {
            Operand::Compact(c) => c.to_fdds(cap),
            Operand::Explicit(f) => Ok(f.clone()),
        }
    }

    /// Compact form, if the operand is a sum of cycles.
    pub fn to_cycle_sum(&self) -> Option<CycleSum> {
        match self {
            Operand::Compact(c) => Some(c.clone()),
            Operand::Explicit(f) => CycleSum::from_fdds(f),
        }
    }

    pub fn has_transients(&self) -> bool {
        match self {
            Operand::Compact(_) => false,
            Operand::Explicit(f) => !f.is_sum_of_cycles(),
        }
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Compact(c) => write!(f, "compact: {c}"),
            Operand::Explicit(a) => write!(f, "explicit: {a}"),
        }
    }
}

/// `Σ terms = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub terms: Vec<(usize, Operand)>,
    pub rhs: Operand,
    /// Comment lines, kept verbatim without the leading `#`.
    pub comments: Vec<String>,
}

impl Equation {
    pub fn parse(text: &str) -> Result<Self> {
        #[derive(PartialEq)]
        enum Section {
            None,
            Poly,
            Rhs,
        }
        let mut section = Section::None;
        let mut terms = Vec::new();
        let mut rhs = None;
        let mut comments = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(c) = line.strip_prefix('#') {
                comments.push(c.trim().to_string());
                continue;
            }
            match line.to_ascii_lowercase().as_str() {
                "[polynomial]" => {
                    section = Section::Poly;
                    continue;
                }
                "[rhs]" => {
                    section = Section::Rhs;
                    continue;
                }
                _ => {}
            }
            let err = |m: &str| Error::Parse(format!("line {}: {m}", no + 1));
            match section {
                Section::None => return Err(err("expected a [polynomial] or [rhs] section")),
                Section::Poly => {
                    let (deg, value) = line.split_once('=').ok_or_else(|| err("expected `<degree> = <operand>`"))?;
                    let deg = deg.trim().parse::<usize>().map_err(|_| err("degree is not a number"))?;
                    terms.push((deg, Operand::parse(value)?));
                }
                Section::Rhs => {
                    if rhs.is_some() {
                        return Err(err("more than one right-hand side"));
                    }
                    // an optional `<label> =` prefix is ignored
                    let value = match line.split_once('=') {
                        Some((label, v)) if !label.contains(':') => v,
                        _ => line,
                    };
                    rhs = Some(Operand::parse(value)?);
                }
            }
        }
        if terms.is_empty() {
            return Err(Error::Parse("no polynomial terms".into()));
        }
        let rhs = rhs.ok_or_else(|| Error::Parse("missing [rhs] section".into()))?;
        Ok(Equation { terms, rhs, comments })
    }

    fn operands(&self) -> impl Iterator<Item = &Operand> {
        self.terms.iter().map(|(_, o)| o).chain(std::iter::once(&self.rhs))
    }

    pub fn all_compact(&self) -> bool {
        self.operands().all(Operand::is_compact)
    }

    pub fn has_transients(&self) -> bool {
        self.operands().any(Operand::has_transients)
    }

    /// Linear with a single term of degree one.
    pub fn is_linear(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 1
    }

    pub fn cycle_poly(&self) -> Option<CyclePoly> {
        let mut p = CyclePoly::new();
        for (d, o) in &self.terms {
            p.add_term(*d, o.to_cycle_sum()?);
        }
        Some(p)
    }

    pub fn fdds_poly(&self, cap: usize) -> Result<FddsPoly> {
        let mut p = FddsPoly::new();
        for (d, o) in &self.terms {
            p.add_term(*d, o.to_fdds(cap)?);
        }
        Ok(p)
    }

    pub fn from_cycle_poly(p: &CyclePoly, rhs: CycleSum) -> Self {
        Equation {
            terms: p.terms().map(|(d, c)| (d, Operand::Compact(c.clone()))).collect(),
            rhs: Operand::Compact(rhs),
            comments: Vec::new(),
        }
    }

    pub fn from_fdds_poly(p: &FddsPoly, rhs: Fdds) -> Self {
        Equation {
            terms: p.terms().map(|(d, c)| (d, Operand::Explicit(c.clone()))).collect(),
            rhs: Operand::Explicit(rhs),
            comments: Vec::new(),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.comments {
            writeln!(f, "# {c}")?;
        }
        writeln!(f, "[polynomial]")?;
        for (d, o) in &self.terms {
            writeln!(f, "{d} = {o}")?;
        }
        writeln!(f, "[rhs]")?;
        writeln!(f, "{}", self.rhs)
    }
}
