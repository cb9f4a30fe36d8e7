use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rsym::experiment::{preset, presets, run_preset, TrialOutcome};
use rsym::verifier::VerifyError;
use rsym::{dehn_bounds, verify_solver, Mode, Presentation, Schedule, Solver, Verifier, VerifyResult};
use rsym_oracle::{check_all, enumerate_with_ceiling, Ceiling};

use crate::file::{load_presentation_file, Loaded};
use crate::report::{Bounds, ExperimentReport, FailureReport, Frac, Outcome, SolverStatus, TrialLine, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "rsym", version, about = "Hyperbolicity verification and word problems for pregroup presentations")]
pub struct Cli {
    /// Run every stage on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the pregroup axioms and preprocess the relators.
    Validate { file: PathBuf },
    /// Run the verifier, then the solver check, then report Dehn function bounds.
    IsHyperbolic {
        #[arg(long, value_parser = parse_frac)]
        epsilon: Frac,
        /// Write a JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Record wall-clock time in the report.
        #[arg(long)]
        timing: bool,
        file: PathBuf,
    },
    /// Decide whether words are trivial, using a verified solver.
    SolveWord {
        #[arg(long = "word", required_unless_present = "words_file")]
        words: Vec<String>,
        /// One word per line; blank lines and lines starting with `#` are skipped.
        #[arg(long = "file", conflicts_with = "words")]
        words_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SolverChoice::Auto)]
        mode: SolverChoice,
        file: PathBuf,
    },
    /// Enumerate small diagrams and cross-check curvature against the verifier's bounds.
    OracleCheck {
        #[arg(long)]
        max_faces: usize,
        #[arg(long, default_value_t = 40)]
        max_boundary: usize,
        /// Also check that interior green faces end at or below minus this value.
        #[arg(long, value_parser = parse_frac)]
        epsilon: Option<Frac>,
        file: PathBuf,
    },
    /// Verify seeded random presentations from a preset.
    Experiment {
        #[arg(long, required_unless_present = "list")]
        preset: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_frac, default_value = "1/10")]
        epsilon: Frac,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print the preset names and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverChoice {
    /// Plain first, then the trivial-interleaving variant when its hypothesis holds.
    Auto,
    Plain,
    Trivint,
}

fn parse_frac(s: &str) -> Result<Frac, String> {
    let f: Frac = s.parse()?;
    if f.0 <= rsym::Rat::from_integer(0) {
        return Err(format!("{s} is not positive"));
    }
    Ok(f)
}

/// Output sinks for one invocation.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, io: Io) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { io.err.write_all(text.as_bytes()) } else { io.out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let schedule = if cli.sequential { Schedule::Sequential } else { Schedule::Parallel };
    let result = match cli.command {
        Command::Validate { file } => validate(&file, io.out),
        Command::IsHyperbolic { epsilon, report, timing, file } => {
            is_hyperbolic(&file, epsilon, report.as_deref(), timing, schedule, io.out)
        }
        Command::SolveWord { words, words_file, mode, file } => solve_word(&file, words, words_file.as_deref(), mode, schedule, io.out),
        Command::OracleCheck { max_faces, max_boundary, epsilon, file } => {
            oracle_check(&file, max_faces, max_boundary, epsilon, schedule, io.out)
        }
        Command::Experiment { preset, trials, seed, epsilon, report, list } => {
            experiment(preset.as_deref(), trials, seed, epsilon, report.as_deref(), list, schedule, io.out)
        }
    };
    match result {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Refused(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            EXIT_FAIL
        }
    }
}

enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// A precondition the input did not meet: exit 1.
    Refused(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

fn load(path: &Path) -> Result<Loaded, Failure> {
    load_presentation_file(path).map_err(|e| Failure::Input(e.to_string()))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn summary(l: &Loaded, out: &mut dyn Write) -> std::io::Result<()> {
    let p = &l.pres;
    writeln!(
        out,
        "pregroup: {} elements; relators: {}; V_P: {} triangles; {}",
        p.pregroup().len(),
        p.relators().len(),
        p.vp().len(),
        if l.untwisted { "untwisted" } else { "twisted" }
    )?;
    for (i, r) in p.relators().iter().enumerate() {
        writeln!(out, "  R{} = {}", i + 1, p.format_word(r))?;
    }
    for line in &l.log {
        writeln!(out, "  preprocessing: {line}")?;
    }
    Ok(())
}

fn validate(file: &Path, out: &mut dyn Write) -> CmdResult {
    let l = load(file)?;
    writeln!(out, "{}: valid", file.display())?;
    summary(&l, out)?;
    Ok(EXIT_OK)
}

/// The first solver mode that verifies, trying plain first.
fn verified_solver(v: &Verifier, choice: SolverChoice) -> Option<Mode> {
    let modes: &[Mode] = match choice {
        SolverChoice::Auto => &[Mode::Plain, Mode::TrivInt],
        SolverChoice::Plain => &[Mode::Plain],
        SolverChoice::Trivint => &[Mode::TrivInt],
    };
    modes.iter().copied().find(|&m| verify_solver(v, m).is_ok_and(|r| r.is_verified()))
}

fn status(mode: Option<Mode>) -> SolverStatus {
    match mode {
        Some(Mode::Plain) => SolverStatus::PlainVerified,
        Some(Mode::TrivInt) => SolverStatus::TrivintVerified,
        None => SolverStatus::Unverified,
    }
}

fn is_hyperbolic(
    file: &Path,
    eps: Frac,
    report_path: Option<&Path>,
    timing: bool,
    schedule: Schedule,
    out: &mut dyn Write,
) -> CmdResult {
    let l = load(file)?;
    let started = Instant::now();
    let pres = &l.pres;
    let mut report = VerificationReport {
        presentation: file.display().to_string(),
        outcome: Outcome::Fail,
        epsilon: eps,
        untwisted: l.untwisted,
        timing_ms: None,
        solver: None,
        bounds: None,
        failure: None,
        message: None,
    };
    match Verifier::with_schedule(pres, schedule) {
        Err(VerifyError::Twisted) => {
            report.outcome = Outcome::Unsupported;
            report.message = Some(VerifyError::Twisted.to_string());
        }
        Err(e) => return Err(Failure::Input(e.to_string())),
        Ok(v) => match v.verify(eps.0, schedule).map_err(|e| Failure::Input(e.to_string()))? {
            VerifyResult::Verified => {
                let mode = verified_solver(&v, SolverChoice::Auto);
                report.outcome = Outcome::Verified;
                report.solver = Some(status(mode));
                report.bounds = Some(Bounds::from(&dehn_bounds(pres, eps.0, mode)));
            }
            VerifyResult::Fail(f) => report.failure = Some(FailureReport::new(&v, pres, &f)),
        },
    }
    if timing {
        report.timing_ms = Some(started.elapsed().as_millis() as u64);
    }
    print_verification(&report, out)?;
    if let Some(path) = report_path {
        write_json(path, &report)?;
    }
    Ok(if report.outcome == Outcome::Verified { EXIT_OK } else { EXIT_FAIL })
}

fn print_verification(r: &VerificationReport, out: &mut dyn Write) -> std::io::Result<()> {
    match r.outcome {
        Outcome::Verified => writeln!(out, "{}: verified with epsilon {}", r.presentation, r.epsilon)?,
        Outcome::Fail => writeln!(out, "{}: not verified with epsilon {}", r.presentation, r.epsilon)?,
        Outcome::Unsupported => writeln!(out, "{}: unsupported", r.presentation)?,
    }
    if let Some(s) = r.solver {
        writeln!(out, "solver: {s}")?;
    }
    if let Some(b) = &r.bounds {
        writeln!(out, "f(n) = {} ({} bound)", b.f, b.part)?;
        writeln!(out, "PD(n) <= {}", b.pd_rsym)?;
        if let Some(pd) = &b.pd_solver {
            writeln!(out, "PD(n) <= {} from the solver", pd)?;
        }
        writeln!(out, "Dehn slope: D(n) <= {}", b.dehn)?;
        writeln!(out, "lambda = {}, gamma = {}", b.lambda, b.gamma)?;
    }
    if let Some(f) = &r.failure {
        writeln!(out, "failing relator: {}", f.relator)?;
        writeln!(out, "start place: {}", f.start_place)?;
        writeln!(out, "trail ({} list entries searched):", f.list_size)?;
        for (i, s) in f.trail.iter().enumerate() {
            writeln!(out, "  {:>3}. {}  step {}  chi {}  psi {}", i + 1, s.place, s.step_len, s.chi, s.psi)?;
        }
    }
    if let Some(m) = &r.message {
        writeln!(out, "{m}")?;
    }
    if let Some(ms) = r.timing_ms {
        writeln!(out, "time: {ms} ms")?;
    }
    Ok(())
}

fn solve_word(
    file: &Path,
    mut words: Vec<String>,
    words_file: Option<&Path>,
    choice: SolverChoice,
    schedule: Schedule,
    out: &mut dyn Write,
) -> CmdResult {
    let l = load(file)?;
    if let Some(path) = words_file {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        words.extend(text.lines().map(str::trim).filter(|s| !s.is_empty() && !s.starts_with('#')).map(String::from));
    }
    let mut parsed = Vec::new();
    for w in &words {
        parsed.push(l.parse_word(w).map_err(|e| Failure::Input(format!("word {w:?}: {e}")))?);
    }
    let v = Verifier::with_schedule(&l.pres, schedule).map_err(|e| Failure::Refused(e.to_string()))?;
    let Some(mode) = verified_solver(&v, choice) else {
        return Err(Failure::Refused(format!("no solver verifies for {}; refusing to decide words", file.display())));
    };
    let solver = Solver::new(&l.pres, mode);
    let two_stack = mode == Mode::Plain && l.pres.check_untwisted();
    let mut all = true;
    for (text, w) in words.iter().zip(&parsed) {
        let trivial = if two_stack { solver.dehn(w) } else { solver.solve(w) };
        all &= trivial;
        writeln!(out, "{text}\t{trivial}")?;
    }
    Ok(if all { EXIT_OK } else { EXIT_FAIL })
}

fn oracle_check(
    file: &Path,
    max_faces: usize,
    max_boundary: usize,
    eps: Option<Frac>,
    schedule: Schedule,
    out: &mut dyn Write,
) -> CmdResult {
    let l = load(file)?;
    let pres: &Presentation = &l.pres;
    let ds = enumerate_with_ceiling(pres, max_faces, max_boundary, Ceiling::default(), schedule)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let v = Verifier::with_schedule(pres, schedule).ok();
    let r = check_all(&ds, pres, v.as_ref(), eps.map(|e| e.0), schedule);
    writeln!(out, "diagrams: {} (at most {max_faces} faces, boundary at most {max_boundary})", r.diagrams)?;
    writeln!(out, "interior green faces: {}", r.interior_faces)?;
    writeln!(out, "donations: {} from vertices, {} from blobs", r.vertex_donations, r.blob_donations)?;
    writeln!(out, "compared with verifier bounds: {}", r.dominated)?;
    if v.is_none() {
        writeln!(out, "verifier unavailable: bounds not compared")?;
    }
    writeln!(out, "violations: {}", r.violations.len())?;
    for (i, x) in r.violations.iter().take(20) {
        writeln!(out, "  diagram {i}: [{}] {x}", x.code())?;
    }
    Ok(if r.is_clean() { EXIT_OK } else { EXIT_FAIL })
}

#[allow(clippy::too_many_arguments)]
fn experiment(
    name: Option<&str>,
    trials: usize,
    seed: u64,
    eps: Frac,
    report_path: Option<&Path>,
    list: bool,
    schedule: Schedule,
    out: &mut dyn Write,
) -> CmdResult {
    if list {
        for p in presets() {
            writeln!(out, "{}", p.name)?;
        }
        return Ok(EXIT_OK);
    }
    let name = name.unwrap_or_default();
    let p = preset(name).ok_or_else(|| Failure::Input(format!("unknown preset {name:?}; see --list")))?;
    let pg = p.base.pregroup();
    let results = run_preset(&p, trials, seed, eps.0, schedule);
    let lines: Vec<TrialLine> = results
        .iter()
        .map(|t| TrialLine {
            relators: t.relators.iter().map(|r| pg.format_word(r)).collect(),
            outcome: match &t.outcome {
                TrialOutcome::Verified => "verified".to_string(),
                TrialOutcome::Failed => "failed".to_string(),
                TrialOutcome::Skipped(why) => format!("skipped: {why}"),
            },
        })
        .collect();
    let verified = results.iter().filter(|t| t.outcome == TrialOutcome::Verified).count();
    for (i, t) in lines.iter().enumerate() {
        writeln!(out, "trial {:>3}: {}", i + 1, t.outcome)?;
    }
    writeln!(out, "{}: {verified}/{trials} verified (seed {seed}, epsilon {eps})", p.name)?;
    if let Some(path) = report_path {
        write_json(path, &ExperimentReport { preset: p.name.clone(), seed, epsilon: eps, trials: lines, verified })?;
    }
    Ok(EXIT_OK)
}
