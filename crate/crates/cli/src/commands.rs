use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use fdds::canon::canonical_table;
use fdds::equation::{Equation, Operand};
use fdds::gen;
use fdds::par::{self, Exec};
use fdds::scaling::{fitted_exponent, sweep_compact_linear, sweep_explicit_fast};
use fdds::solver::cycles::{solve_linear_compact, solve_linear_explicit, solve_poly_compact, solve_poly_explicit};
use fdds::solver::general::solve_poly_general;
use fdds::solver::oracle::brute_force_solve;
use fdds::unroll::unroll;
use fdds::{CycleSum, Error, Fdds, Reason, SolveOutcome};

use crate::args::{BenchKind, Command, Encoding, GenKind, Global, Mode};

pub const SOLVED: u8 = 0;
pub const NO_SOLUTION: u8 = 1;
pub const PRECONDITION: u8 = 2;
pub const PARSE: u8 = 3;
pub const OVERFLOW: u8 = 4;

/// Text for the output stream and the process exit code.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub code: u8,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, code: SOLVED }
    }
}

/// A command that could not run, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::IndexOutOfRange { .. } => PARSE,
            Error::SizeOverflow { .. } | Error::CapExceeded | Error::BudgetExceeded(_) => OVERFLOW,
            _ => PRECONDITION,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<Report, Failure>;

pub fn run(command: &Command, g: &Global) -> Outcome {
    match command {
        Command::Solve { files } => Ok(solve_batch(files, g)),
        Command::Mul { a, b } => binary(a, b, g, Op::Mul),
        Command::Add { a, b } => binary(a, b, g, Op::Add),
        Command::Iso { a, b } => iso(a, b),
        Command::Canon { a } => canon(a, g),
        Command::Unroll { a } => unroll_levels(a, g),
        Command::Gen {
            kind,
            degree,
            terms,
            coeff_states,
        } => generate(*kind, *degree, *terms, *coeff_states, g),
        Command::Bench { kind, sizes, reps } => Ok(bench(*kind, sizes, *reps, g)),
        Command::Convert { a, to } => convert(a, *to, g),
        Command::Oracle { file } => oracle(file, g),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(PARSE, format!("{}: {e}", path.display())))
}

fn read_operand(path: &Path) -> Result<Operand, Failure> {
    Operand::parse(&read(path)?).map_err(|e| Failure::new(PARSE, format!("{}: {e}", path.display())))
}

fn read_equation(path: &Path) -> Result<Equation, Failure> {
    Equation::parse(&read(path)?).map_err(|e| Failure::new(PARSE, format!("{}: {e}", path.display())))
}

fn compact_of(o: &Operand) -> Result<CycleSum, Failure> {
    o.to_cycle_sum()
        .ok_or_else(|| Failure::new(PRECONDITION, "operand has transient states and has no compact form"))
}

/// The empty compact sum keeps its prefix so that it reads back as compact.
fn show_compact(c: &CycleSum) -> String {
    if c.is_zero() {
        "compact: 0".into()
    } else {
        c.to_string()
    }
}

/// A solution in the encoding of the right-hand side when possible.
fn show_like(x: &Fdds, rhs: &Operand) -> String {
    match (rhs.is_compact(), CycleSum::from_fdds(x)) {
        (true, Some(c)) => show_compact(&c),
        _ => x.to_string(),
    }
}

fn resolve_mode(mode: Mode, eq: &Equation) -> Mode {
    match mode {
        Mode::Auto if eq.all_compact() => Mode::Compact,
        Mode::Auto if eq.has_transients() => Mode::General,
        Mode::Auto => Mode::Explicit,
        m => m,
    }
}

fn solve_batch(files: &[PathBuf], g: &Global) -> Report {
    let results = par::map(Exec::best(), files, |f| solve_file(f, g));
    let mut text = String::new();
    let mut code = SOLVED;
    for (f, r) in files.iter().zip(results) {
        if files.len() > 1 {
            let _ = writeln!(text, "== {}", f.display());
        }
        match r {
            Ok(rep) => {
                text.push_str(&rep.text);
                code = code.max(rep.code);
            }
            Err(fail) => {
                let _ = writeln!(text, "error: {}", fail.message);
                code = code.max(fail.code);
            }
        }
    }
    Report { text, code }
}

fn solve_file(path: &Path, g: &Global) -> Outcome {
    let eq = read_equation(path)?;
    match resolve_mode(g.mode, &eq) {
        Mode::Compact => {
            let b = compact_of(&eq.rhs)?;
            let out = if eq.is_linear() {
                solve_linear_compact(&compact_of(&eq.terms[0].1)?, &b)
            } else {
                let p = eq
                    .cycle_poly()
                    .ok_or_else(|| Failure::new(PRECONDITION, "coefficient has transient states and has no compact form"))?;
                solve_poly_compact(&p, &b)
            };
            Ok(render(out, g.trace, show_compact))
        }
        Mode::Explicit => {
            let b = eq.rhs.to_fdds(g.cap)?;
            let out = if eq.is_linear() {
                solve_linear_explicit(&eq.terms[0].1.to_fdds(g.cap)?, &b)
            } else {
                solve_poly_explicit(&eq.fdds_poly(g.cap)?, &b)
            };
            Ok(render(out, g.trace, |x| show_like(x, &eq.rhs)))
        }
        Mode::General | Mode::Auto => {
            let p = eq.fdds_poly(g.cap)?;
            let b = eq.rhs.to_fdds(g.cap)?;
            let out = solve_poly_general(&p, &b);
            let mut text = String::new();
            let code = match out.reason {
                Reason::Solved => {
                    let y = out.solution.as_ref().expect("solved");
                    let _ = writeln!(text, "{}", show_like(y, &eq.rhs));
                    if g.trace {
                        let _ = writeln!(text, "component");
                        for c in &out.components_added {
                            let _ = writeln!(text, "{c}");
                        }
                    }
                    SOLVED
                }
                reason => failure_text(&mut text, reason, &out.note),
            };
            Ok(Report { text, code })
        }
    }
}

fn failure_text(text: &mut String, reason: Reason, note: &str) -> u8 {
    match reason {
        Reason::NoSolution => {
            let _ = writeln!(text, "no solution");
            if !note.is_empty() {
                eprintln!("no solution: {note}");
            }
            NO_SOLUTION
        }
        _ => {
            let _ = writeln!(text, "precondition failed: {note}");
            PRECONDITION
        }
    }
}

fn render<S>(out: SolveOutcome<S>, trace: bool, show: impl Fn(&S) -> String) -> Report {
    let mut text = String::new();
    let code = match &out.solution {
        Some(y) => {
            let _ = writeln!(text, "{}", show(y));
            if trace {
                text.push_str(&out.trace.to_string());
            }
            SOLVED
        }
        None => failure_text(&mut text, out.reason, &out.note),
    };
    Report { text, code }
}

#[derive(Clone, Copy)]
enum Op {
    Mul,
    Add,
}

fn binary(a: &Path, b: &Path, g: &Global, op: Op) -> Outcome {
    let (a, b) = (read_operand(a)?, read_operand(b)?);
    let compact = match g.mode {
        Mode::Compact => true,
        Mode::Auto => a.is_compact() && b.is_compact(),
        Mode::Explicit | Mode::General => false,
    };
    let text = if compact {
        let (a, b) = (compact_of(&a)?, compact_of(&b)?);
        show_compact(&match op {
            Op::Mul => a.product(&b),
            Op::Add => a.add(&b),
        })
    } else {
        let (a, b) = (a.to_fdds(g.cap)?, b.to_fdds(g.cap)?);
        match op {
            Op::Mul => a.product_with(&b, g.cap, Exec::best())?,
            Op::Add => a.sum(&b),
        }
        .to_string()
    };
    Ok(Report::ok(text + "\n"))
}

fn iso(a: &Path, b: &Path) -> Outcome {
    let (a, b) = (read_operand(a)?, read_operand(b)?);
    let same = match (&a, &b) {
        (Operand::Explicit(x), Operand::Explicit(y)) => fdds::is_isomorphic(x, y),
        // a compact operand has no transients, so compare compact forms
        _ => matches!((a.to_cycle_sum(), b.to_cycle_sum()), (Some(x), Some(y)) if x == y),
    };
    Ok(Report::ok(if same { "isomorphic\n" } else { "not-isomorphic\n" }.into()))
}

fn canon(a: &Path, g: &Global) -> Outcome {
    let text = match (read_operand(a)?, g.mode) {
        (Operand::Compact(c), Mode::Auto | Mode::Compact) => show_compact(&c),
        (o, Mode::Compact) => show_compact(&compact_of(&o)?),
        (o, _) => canonical_table(&o.to_fdds(g.cap)?).to_string(),
    };
    Ok(Report::ok(text + "\n"))
}

fn unroll_levels(a: &Path, g: &Global) -> Outcome {
    let a = read_operand(a)?.to_fdds(g.cap)?;
    let depth = g.depth.unwrap_or(a.len());
    let mut text = String::new();
    for (i, t) in unroll(&a, depth).iter().enumerate() {
        let sizes: Vec<String> = t.level_sizes().iter().map(usize::to_string).collect();
        let _ = writeln!(text, "tree {i}\tperiod {}\t{}", t.period(), sizes.join(" "));
    }
    Ok(Report::ok(text))
}

fn generate(kind: GenKind, degree: usize, terms: usize, coeff_states: usize, g: &Global) -> Outcome {
    let mut rng = gen::rng(g.seed);
    let n = g.max_states;
    let text = match kind {
        GenKind::Fdds => Operand::Explicit(gen::random_fdds_up_to(&mut rng, n)).to_string() + "\n",
        GenKind::Cycles => Operand::Compact(gen::random_cycle_sum(&mut rng, n)).to_string() + "\n",
        GenKind::PseudoCancelable => Operand::Compact(gen::random_pseudo_cancelable(&mut rng, n)?).to_string() + "\n",
        GenKind::Linear => {
            let pl = gen::planted_linear(&mut rng, coeff_states, n)?;
            let p = fdds::CyclePoly::from_terms([(1, pl.poly)]);
            with_ground_truth(Equation::from_cycle_poly(&p, pl.rhs), show_compact(&pl.x0), g.seed)
        }
        GenKind::Poly => {
            let pl = gen::planted_cycle_poly(&mut rng, degree, terms, coeff_states, n)?;
            with_ground_truth(Equation::from_cycle_poly(&pl.poly, pl.rhs), show_compact(&pl.x0), g.seed)
        }
        GenKind::General => {
            let pl = gen::planted_fdds_poly(&mut rng, degree, terms, coeff_states, n)?;
            with_ground_truth(Equation::from_fdds_poly(&pl.poly, pl.rhs), pl.x0.to_string(), g.seed)
        }
    };
    Ok(Report::ok(text))
}

fn with_ground_truth(mut eq: Equation, x0: String, seed: u64) -> String {
    eq.comments.push(format!("seed: {seed}"));
    eq.comments.push(format!("x0: {x0}"));
    eq.to_string()
}

fn bench(kind: BenchKind, sizes: &[usize], reps: usize, g: &Global) -> Report {
    let points = match kind {
        BenchKind::Explicit => {
            let sizes = if sizes.is_empty() { &[1_000, 10_000, 100_000, 1_000_000][..] } else { sizes };
            sweep_explicit_fast(sizes, reps)
        }
        BenchKind::Compact => {
            let sizes = if sizes.is_empty() { &[10, 30, 100, 300, 1000][..] } else { sizes };
            sweep_compact_linear(sizes, reps, g.seed)
        }
    };
    let mut text = String::from("size\tseconds\n");
    for p in &points {
        let _ = writeln!(text, "{}\t{:.6}", p.size, p.seconds);
    }
    let _ = writeln!(text, "exponent\t{:.3}", fitted_exponent(&points));
    Report::ok(text)
}

fn convert(a: &Path, to: Encoding, g: &Global) -> Outcome {
    let a = read_operand(a)?;
    let text = match to {
        Encoding::Compact => Operand::Compact(compact_of(&a)?).to_string(),
        Encoding::Explicit => Operand::Explicit(a.to_fdds(g.cap)?).to_string(),
    };
    Ok(Report::ok(text + "\n"))
}

fn oracle(file: &Path, g: &Global) -> Outcome {
    let eq = read_equation(file)?;
    let p = eq.fdds_poly(g.cap)?;
    let b = eq.rhs.to_fdds(g.cap)?;
    let sols = brute_force_solve(&p, &b, g.max_states, 10_000_000)?;
    if sols.is_empty() {
        return Ok(Report {
            text: "no solution\n".into(),
            code: NO_SOLUTION,
        });
    }
    let mut text = String::new();
    for x in &sols {
        let _ = writeln!(text, "{}", show_like(x, &eq.rhs));
    }
    Ok(Report::ok(text))
}
