//! Command-line front end and interactive session.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::domain::{check_axioms, check_axioms_with, sample_grid, Axiom, AxiomSet, Domain};
use crate::semantics::fixpoint_model;
use crate::similarity::SimilarityRelation;
use crate::solver::{solve, SolveError, SolverOptions};
use crate::syntax::{parse_goal, parse_program, Program};
use crate::transform::{eliminate_with, TransformOptions, TransformedProgram};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_LOAD: i32 = 2;
pub const EXIT_EXPECT: i32 = 3;

const DEFAULT_MODEL_DEPTH: usize = 2;
const MODEL_ROUNDS: usize = 256;

#[derive(Debug, Parser)]
#[command(
    name = "sqlp",
    version,
    about = "Qualified logic programming with similarity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a goal against a program.
    Run {
        file: PathBuf,
        #[arg(long)]
        goal: String,
        #[command(flatten)]
        solve: SolveArgs,
        /// Exit with status 3 unless exactly this many answers are found.
        #[arg(long, value_name = "N")]
        expect_answers: Option<usize>,
    },
    /// Print the similarity-free program.
    Transform {
        file: PathBuf,
        #[arg(long)]
        full_sim_clauses: bool,
        /// Annotate each clause with its origin.
        #[arg(long)]
        provenance: bool,
    },
    /// Print the least model up to a term depth.
    Model {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MODEL_DEPTH, value_name = "N")]
        depth: usize,
    },
    /// Check the qualification domain axioms.
    Check {
        /// Check the domain declared by this program.
        file: Option<PathBuf>,
        /// Check this domain instead, e.g. `UxW`.
        #[arg(long, value_name = "D", conflicts_with = "file")]
        domain: Option<Domain>,
    },
    /// Start an interactive session.
    Repl {
        file: Option<PathBuf>,
        #[command(flatten)]
        solve: SolveArgs,
    },
}

#[derive(Debug, Clone, Args)]
struct SolveArgs {
    #[arg(long, default_value_t = 512, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    max_depth: u64,
    #[arg(long, value_name = "N")]
    max_answers: Option<usize>,
    #[arg(long)]
    no_prune: bool,
    #[arg(long)]
    full_sim_clauses: bool,
    /// Rerun the search with growing step limits up to the maximum depth.
    #[arg(long)]
    iterative_deepening: bool,
}

impl SolveArgs {
    fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            max_depth: self.max_depth as usize,
            max_answers: self.max_answers,
            prune: !self.no_prune,
            iterative_deepening: self.iterative_deepening,
        }
    }

    fn transform_options(&self) -> TransformOptions {
        TransformOptions {
            full_sim_clauses: self.full_sim_clauses,
        }
    }
}

/// A failure to load a program, with the path it came from.
#[derive(Debug)]
pub struct LoadError {
    path: PathBuf,
    message: String,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path.display(), self.message)
    }
}

impl std::error::Error for LoadError {}

/// A program with its closed similarity and its transformation.
pub struct Loaded {
    pub path: PathBuf,
    pub program: Program,
    pub relation: SimilarityRelation,
    pub transformed: TransformedProgram,
}

impl Loaded {
    pub fn from_file(path: &Path, opts: TransformOptions) -> Result<Self, LoadError> {
        let fail = |message: String| LoadError {
            path: path.to_path_buf(),
            message,
        };
        let text = std::fs::read_to_string(path).map_err(|e| fail(e.to_string()))?;
        let program = parse_program(&text).map_err(|e| fail(e.to_string()))?;
        let relation =
            SimilarityRelation::from_program(&program).map_err(|e| fail(e.to_string()))?;
        let transformed =
            eliminate_with(&program, &relation, opts).map_err(|e| fail(e.to_string()))?;
        Ok(Loaded {
            path: path.to_path_buf(),
            program,
            relation,
            transformed,
        })
    }
}

/// Parses `args` (program name first) and runs the command against the
/// process's standard streams.
pub fn run_batch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    let stdin = io::stdin();
    run_with(
        args,
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

/// [`run_batch`] over explicit streams.
pub fn run_with<I, T>(
    args: I,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, input, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(
    command: Command,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    match command {
        Command::Run {
            file,
            goal,
            solve: args,
            expect_answers,
        } => {
            let loaded = match Loaded::from_file(&file, args.transform_options()) {
                Ok(l) => l,
                Err(e) => return load_failure(err, &e),
            };
            let goal = match parse_goal(&goal, &loaded.program) {
                Ok(g) => g,
                Err(e) => {
                    writeln!(err, "error: goal: {e}")?;
                    return Ok(EXIT_LOAD);
                }
            };
            let mut sols = match solve(&loaded.transformed, &goal, &args.solver_options()) {
                Ok(s) => s,
                Err(e) => return solve_failure(err, &e),
            };
            for answer in sols.by_ref() {
                writeln!(out, "{answer}")?;
            }
            let summary = sols.summary();
            writeln!(out, "{summary}")?;
            match expect_answers {
                Some(n) if n != summary.answers => {
                    writeln!(
                        err,
                        "error: expected {n} answers, found {}",
                        summary.answers
                    )?;
                    Ok(EXIT_EXPECT)
                }
                _ => Ok(EXIT_OK),
            }
        }
        Command::Transform {
            file,
            full_sim_clauses,
            provenance,
        } => match Loaded::from_file(&file, TransformOptions { full_sim_clauses }) {
            Ok(l) => {
                out.write_all(l.transformed.render(provenance).as_bytes())?;
                Ok(EXIT_OK)
            }
            Err(e) => load_failure(err, &e),
        },
        Command::Model { file, depth } => {
            match Loaded::from_file(&file, TransformOptions::default()) {
                Ok(l) => {
                    write_model(out, &l, depth)?;
                    Ok(EXIT_OK)
                }
                Err(e) => load_failure(err, &e),
            }
        }
        Command::Check { file, domain } => {
            let domain = match (file, domain) {
                (_, Some(d)) => d,
                (Some(file), None) => match Loaded::from_file(&file, TransformOptions::default()) {
                    Ok(l) => l.program.domain,
                    Err(e) => return load_failure(err, &e),
                },
                (None, None) => {
                    writeln!(err, "error: give a program file or --domain")?;
                    return Ok(EXIT_USAGE);
                }
            };
            write_axiom_report(out, &domain)?;
            Ok(EXIT_OK)
        }
        Command::Repl { file, solve: args } => {
            let mut session = Session::new(args.solver_options(), args.transform_options());
            if let Some(file) = file {
                session.load(&file, out)?;
            }
            session.run(input, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn load_failure(err: &mut dyn Write, e: &LoadError) -> io::Result<i32> {
    writeln!(err, "error: {e}")?;
    Ok(EXIT_LOAD)
}

fn solve_failure(err: &mut dyn Write, e: &SolveError) -> io::Result<i32> {
    writeln!(err, "error: {e}")?;
    Ok(EXIT_USAGE)
}

fn write_model(out: &mut dyn Write, loaded: &Loaded, depth: usize) -> io::Result<()> {
    let table = fixpoint_model(&loaded.program, &loaded.relation, depth, MODEL_ROUNDS);
    out.write_all(table.dump().as_bytes())?;
    if !table.is_saturated() {
        writeln!(out, "% not saturated after {} rounds", table.rounds())?;
    }
    Ok(())
}

fn write_axiom_report(out: &mut dyn Write, domain: &Domain) -> io::Result<()> {
    let samples = sample_grid(domain);
    let violations = check_axioms(domain, &samples).unwrap_or_default();
    let form = if domain.is_strict() {
        "strict"
    } else {
        "relaxed"
    };
    if violations.is_empty() {
        writeln!(
            out,
            "{domain}: all axioms hold ({form} decrease) on {} samples",
            samples.len()
        )?;
    } else {
        writeln!(out, "{domain}: {} violations", violations.len())?;
        for v in &violations {
            writeln!(out, "  {v}")?;
        }
    }
    if !domain.is_strict() {
        let strict = check_axioms_with(domain, &samples, AxiomSet::Strict).unwrap_or_default();
        if let Some(v) = strict.iter().find(|v| v.axiom == Axiom::StrictDecrease) {
            writeln!(out, "{domain}: quasi domain, strict decrease fails: {v}")?;
        }
    }
    Ok(())
}

const HELP: &str = "\
commands:
  :load <path>            load a program
  :transform              print the similarity-free program
  :solve <goal>           solve a goal, one answer at a time
  :model [depth]          print the least model
  :check-axioms           check the loaded domain's axioms
  :set depth|answers <n>  set the step budget or the answer limit
  :quit                   leave
";

/// State of an interactive session.
pub struct Session {
    loaded: Option<Loaded>,
    options: SolverOptions,
    transform: TransformOptions,
}

impl Session {
    pub fn new(options: SolverOptions, transform: TransformOptions) -> Self {
        Session {
            loaded: None,
            options,
            transform,
        }
    }

    pub fn loaded(&self) -> Option<&Loaded> {
        self.loaded.as_ref()
    }

    /// Loads `path`, replacing the current program only on success.
    pub fn load(&mut self, path: &Path, out: &mut dyn Write) -> io::Result<()> {
        match Loaded::from_file(path, self.transform) {
            Ok(l) => {
                writeln!(
                    out,
                    "loaded {} ({} clauses, domain {})",
                    path.display(),
                    l.program.clauses().len(),
                    l.program.domain
                )?;
                self.loaded = Some(l);
            }
            Err(e) => writeln!(out, "error: {e}")?,
        }
        Ok(())
    }

    /// Reads commands until `:quit` or end of input.
    pub fn run(&mut self, input: &mut dyn BufRead, out: &mut dyn Write) -> io::Result<()> {
        loop {
            write!(out, "sqlp> ")?;
            out.flush()?;
            let Some(line) = read_line(input)? else {
                writeln!(out)?;
                return Ok(());
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match cmd {
                ":quit" | ":q" => return Ok(()),
                ":load" if !rest.is_empty() => self.load(Path::new(rest), out)?,
                ":transform" => match &self.loaded {
                    Some(l) => out.write_all(l.transformed.render(false).as_bytes())?,
                    None => writeln!(out, "no program loaded")?,
                },
                ":solve" if !rest.is_empty() => self.solve(rest, input, out)?,
                ":solve" => writeln!(out, "no goal given")?,
                ":model" => match (&self.loaded, rest) {
                    (None, _) => writeln!(out, "no program loaded")?,
                    (Some(l), "") => write_model(out, l, DEFAULT_MODEL_DEPTH)?,
                    (Some(l), d) => match d.parse() {
                        Ok(depth) => write_model(out, l, depth)?,
                        Err(_) => writeln!(out, "bad depth `{d}`")?,
                    },
                },
                ":check-axioms" => match &self.loaded {
                    Some(l) => write_axiom_report(out, &l.program.domain)?,
                    None => writeln!(out, "no program loaded")?,
                },
                ":set" => self.set(rest, out)?,
                _ => out.write_all(HELP.as_bytes())?,
            }
        }
    }

    fn set(&mut self, rest: &str, out: &mut dyn Write) -> io::Result<()> {
        let mut words = rest.split_whitespace();
        let (key, value) = (
            words.next(),
            words.next().and_then(|v| v.parse::<usize>().ok()),
        );
        match (key, value) {
            (Some("depth"), Some(n)) if n > 0 => {
                self.options.max_depth = n;
                writeln!(out, "depth = {n}")
            }
            (Some("answers"), Some(n)) => {
                self.options.max_answers = (n > 0).then_some(n);
                writeln!(out, "answers = {n}")
            }
            _ => out.write_all(HELP.as_bytes()),
        }
    }

    fn solve(
        &mut self,
        text: &str,
        input: &mut dyn BufRead,
        out: &mut dyn Write,
    ) -> io::Result<()> {
        let Some(l) = &self.loaded else {
            return writeln!(out, "no program loaded");
        };
        let goal = match parse_goal(text, &l.program) {
            Ok(g) => g,
            Err(e) => return writeln!(out, "error: goal: {e}"),
        };
        let mut sols = match solve(&l.transformed, &goal, &self.options) {
            Ok(s) => s,
            Err(e) => return writeln!(out, "error: {e}"),
        };
        for answer in sols.by_ref() {
            writeln!(out, "{answer}")?;
            write!(out, "more solutions (y/n)? ")?;
            out.flush()?;
            let reply = read_line(input)?.unwrap_or_default();
            if reply.trim().eq_ignore_ascii_case("n") {
                writeln!(out)?;
                return Ok(());
            }
            writeln!(out)?;
        }
        writeln!(out, "{}", sols.summary())
    }
}

fn read_line(input: &mut dyn BufRead) -> io::Result<Option<String>> {
    let mut line = String::new();
    match input.read_line(&mut line)? {
        0 => Ok(None),
        _ => Ok(Some(line)),
    }
}
