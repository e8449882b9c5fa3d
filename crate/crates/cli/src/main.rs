use std::fs;
use std::io::{self, BufRead, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use reldiv::builder::Builder;
use reldiv::classical::{janet_on_slice, pommaret_on_slice};
use reldiv::closures::{escalier_from_seed, ideal_from_seed, ClosureReport};
use reldiv::enumerate::{enumerate_divisions, EnumerateOptions};
use reldiv::graphs::{generalized_graph, redundant_graph, ufnarovsky_graph};
use reldiv::oracle::{verify_division_covering, DEFAULT_MARGIN};
use reldiv::term::VarSet;
use reldiv::{sigma_expected, vandermonde_identity_check, Error, RelDivision, Term, TermSet};

#[derive(Parser)]
#[command(name = "reldiv", version, about = "Relative involutive divisions on degree slices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Pommaret or Janet division on T_D as JSON.
    Gen {
        kind: GenKind,
        n: usize,
        degree: u32,
        /// Variable order, smallest first, as comma-separated names (Pommaret only).
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        pretty: bool,
    },
    /// Validate a division file; exit status 0 iff valid.
    Validate {
        file: PathBuf,
        /// Also scan every term up to degree D+K for coverage.
        #[arg(long, value_name = "K")]
        oracle: Option<u32>,
    },
    /// List every division on T_D, one JSON object per line.
    Enumerate {
        n: usize,
        degree: u32,
        /// One representative per orbit under variable permutations.
        #[arg(long)]
        orbits: bool,
        /// Worker threads for the search; output order does not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Append a {"count", "orbit_sizes"} record.
        #[arg(long)]
        summary: bool,
    },
    /// Export one of the propagation graphs of a division.
    Graph {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphKind::Ufnarovsky)]
        kind: GraphKind,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Close a seed set; exit status 0 iff the result is certified.
    Closure {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ClosureMode,
        /// Seed terms, e.g. "x^2*y" or "[2,1,0]".
        seeds: Vec<String>,
        /// Oracle margin used for certification.
        #[arg(long, value_name = "K", default_value_t = DEFAULT_MARGIN)]
        certify: u32,
    },
    /// Build a division on T_D term by term.
    Build {
        n: usize,
        degree: u32,
        /// Replay choices (`term: vars` per line) instead of reading a terminal.
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Compare the profile of a division with the forced one.
    Sigma { file: PathBuf },
    /// Check the binomial identity behind the forced profile for d = 0..=d_max.
    Vandermonde { n: usize, degree: u32, d_max: u32 },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Pommaret,
    Janet,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Ufnarovsky,
    Generalized,
    Redundant,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureMode {
    Ideal,
    Escalier,
}

/// Exit 1 for a negative answer, 2 for bad input.
enum Failure {
    Semantic(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidDivision(_) | Error::Conflict(_) | Error::NoInvolutiveDivisor(_) => {
                Failure::Semantic(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Semantic(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Gen { kind, n, degree, order, pretty } => gen(kind, n, degree, order, pretty),
        Command::Validate { file, oracle } => validate(&file, oracle),
        Command::Enumerate { n, degree, orbits, jobs, summary } => enumerate(n, degree, orbits, jobs, summary),
        Command::Graph { file, kind, format } => graph(&file, kind, format),
        Command::Closure { file, mode, seeds, certify } => closure(&file, mode, &seeds, certify),
        Command::Build { n, degree, script } => build(n, degree, script.as_deref()),
        Command::Sigma { file } => sigma(&file),
        Command::Vandermonde { n, degree, d_max } => {
            if n == 0 || degree == 0 {
                return Err(Failure::Usage("n and degree must be at least 1".into()));
            }
            let ok = vandermonde_identity_check(n, degree, d_max);
            println!("{ok}");
            Ok(exit(ok))
        }
    }
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load(path: &Path) -> Result<RelDivision, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    RelDivision::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn gen(kind: GenKind, n: usize, degree: u32, order: Option<String>, pretty: bool) -> CmdResult {
    let div = match kind {
        GenKind::Pommaret => {
            let order = match order {
                Some(spec) => spec
                    .split(',')
                    .map(|v| reldiv::term::parse_var(v, n))
                    .collect::<reldiv::Result<Vec<_>>>()?,
                None => (0..n).collect(),
            };
            pommaret_on_slice(n, degree, &order)?
        }
        GenKind::Janet => {
            if order.is_some() {
                return Err(Failure::Usage("--order applies to pommaret only".into()));
            }
            janet_on_slice(n, degree)?
        }
    };
    println!("{}", if pretty { div.to_json_pretty() } else { div.to_json() });
    Ok(ExitCode::SUCCESS)
}

fn validate(path: &Path, oracle: Option<u32>) -> CmdResult {
    let div = load(path)?;
    let mut report = div.validate();
    if let Some(k) = oracle {
        let bounded = verify_division_covering(&div, k);
        report = reldiv::ValidationReport::new(
            report.violations.into_iter().chain(bounded.violations).collect(),
            false,
        );
    }
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    for v in &report.violations {
        eprintln!("{}", v.describe(div.n()));
    }
    if report.coverage_unverified {
        eprintln!("note: coverage of a general support is only checked with --oracle");
    }
    Ok(exit(report.valid))
}

fn enumerate(n: usize, degree: u32, orbits: bool, jobs: usize, summary: bool) -> CmdResult {
    if degree == 0 {
        return Err(Failure::Usage("degree must be at least 1".into()));
    }
    if jobs > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let result = enumerate_divisions(n, degree, EnumerateOptions { up_to_symmetry: orbits, parallel: jobs > 1 })?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for div in &result.divisions {
        writeln!(out, "{}", div.to_json())?;
    }
    if summary {
        writeln!(out, "{}", serde_json::to_string(&result.summary).expect("summary serializes"))?;
    } else {
        eprintln!("count: {}", result.summary.count);
    }
    Ok(ExitCode::SUCCESS)
}

fn graph(path: &Path, kind: GraphKind, format: GraphFormat) -> CmdResult {
    let div = load(path)?;
    let g = match kind {
        GraphKind::Ufnarovsky => ufnarovsky_graph(&div)?,
        GraphKind::Generalized => generalized_graph(&div)?,
        GraphKind::Redundant => redundant_graph(&div)?,
    };
    match format {
        GraphFormat::Dot => print!("{}", g.to_dot()),
        GraphFormat::Json => println!("{}", g.to_json()),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CertifiedReport<'a> {
    #[serde(flatten)]
    report: &'a ClosureReport,
    certified: bool,
}

fn closure(path: &Path, mode: ClosureMode, seeds: &[String], margin: u32) -> CmdResult {
    let div = load(path)?;
    let seed = seeds.iter().map(|s| Term::parse(s, div.n())).collect::<reldiv::Result<TermSet>>()?;
    let (report, certified) = match mode {
        ClosureMode::Ideal => {
            let r = ideal_from_seed(&div, &seed, margin)?;
            (r.report, r.certified)
        }
        ClosureMode::Escalier => {
            let r = escalier_from_seed(&div, &seed, margin)?;
            (r.report, r.certified)
        }
    };
    let out = CertifiedReport { report: &report, certified };
    println!("{}", serde_json::to_string(&out).expect("report serializes"));
    Ok(exit(certified))
}

fn format_set(m: VarSet, n: usize) -> String {
    reldiv::term::var_names(m, n).join(",")
}

fn build(n: usize, degree: u32, script: Option<&Path>) -> CmdResult {
    if script.is_none() && !io::stdin().is_terminal() {
        return Err(Failure::Usage("build needs a terminal or --script FILE".into()));
    }
    let color = std::env::var_os("NO_COLOR").is_none() && io::stderr().is_terminal();
    let mut builder = Builder::new(n, degree)?;
    let err = io::stderr();
    let mut log = err.lock();
    writeln!(log, "{}", builder.render_table(color))?;

    if let Some(path) = script {
        let text =
            fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        for (lineno, line) in text.lines().enumerate() {
            match builder.apply_line(line) {
                Ok(None) => {}
                Ok(Some((t, m))) => {
                    writeln!(log, "> M({t}) = {{{}}}", format_set(m, n))?;
                    writeln!(log, "{}", builder.render_table(color))?;
                }
                Err(e) => {
                    let msg = format!("line {}: {e}", lineno + 1);
                    return Err(match e {
                        Error::Conflict(_) => Failure::Semantic(msg),
                        _ => Failure::Usage(msg),
                    });
                }
            }
        }
    } else {
        interactive(&mut builder, &mut log, color)?;
    }

    for (t, m) in builder.autocomplete()? {
        writeln!(log, "> M({t}) = {{{}}} (only option left)", format_set(m, n))?;
    }
    if !builder.is_complete() {
        writeln!(log, "{}", builder.render_table(color))?;
    }
    let div = builder.finish()?;
    println!("{}", div.to_json());
    Ok(ExitCode::SUCCESS)
}

fn interactive(builder: &mut Builder, log: &mut impl Write, color: bool) -> Result<(), Failure> {
    let n = builder.state().n();
    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();
    while !builder.is_complete() {
        let dead = builder.dead_terms();
        if !dead.is_empty() {
            let names: Vec<String> = dead.iter().map(Term::to_string).collect();
            writeln!(log, "dead end: nothing is left for {}", names.join(", "))?;
            return Err(Failure::Semantic("no completion from this state".into()));
        }
        write!(log, "choice (term: vars, `auto`, or `quit`)> ")?;
        log.flush()?;
        let Some(line) = lines.next() else { break };
        let line = line?;
        match line.trim() {
            "quit" | "q" => break,
            "auto" => {
                for (t, m) in builder.autocomplete()? {
                    writeln!(log, "> M({t}) = {{{}}}", format_set(m, n))?;
                }
            }
            _ => match builder.apply_line(&line) {
                Ok(Some(_)) => {}
                Ok(None) => continue,
                Err(e) => {
                    writeln!(log, "rejected: {e}")?;
                    continue;
                }
            },
        }
        writeln!(log, "{}", builder.render_table(color))?;
    }
    Ok(())
}

fn sigma(path: &Path) -> CmdResult {
    let div = load(path)?;
    let degree = div.degree().ok_or_else(|| Failure::Usage(Error::NotSliceKind.to_string()))?;
    let observed = div.sigma_profile();
    let expected = sigma_expected(div.n(), degree);
    let fmt = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    println!("observed: ({})", fmt(&observed));
    println!("expected: ({})", fmt(&expected));
    Ok(exit(observed == expected))
}
