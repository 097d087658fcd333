use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use modlab::report::{AlgebraSummary, CensusSummary, ModuleReport, Report, Timing};
use modlab::theorems::{build_census, run_suite, CensusAnalysis, Suite};
use modlab::{Caps, Error, FiniteAlgebra, ModuleScript, RingSpec};

#[derive(Parser)]
#[command(name = "modlab", version, about = "Injectivity properties of finite modules over basic algebras")]
struct Cli {
    /// Enumeration caps: vectors, homomorphisms, lattice size.
    #[arg(long, global = true, value_parser = parse_caps, default_value = "4194304,1048576,1000000")]
    caps: Caps,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Ring specification files.
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    /// Module property reports.
    Module {
        #[command(subcommand)]
        action: ModuleAction,
    },
    /// Isomorphism classes of submodules of an injective cogenerator.
    Census {
        ring: PathBuf,
        /// Copies of each indecomposable injective, one per simple module.
        #[arg(long, value_delimiter = ',', required = true)]
        bounds: Vec<usize>,
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
    /// The two worked examples and every census-quantified check.
    Paper {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
}

#[derive(Subcommand)]
enum RingAction {
    Check { path: PathBuf },
}

#[derive(Subcommand)]
enum ModuleAction {
    Report {
        ring: PathBuf,
        /// File holding a module description.
        module: Option<PathBuf>,
        /// Inline module description.
        #[arg(short = 'e', long = "expr", conflicts_with = "module")]
        expr: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Example1,
    Example2,
    All,
}

fn parse_caps(s: &str) -> Result<Caps, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated caps: vectors,homs,lattice".into());
    }
    let mut v = [0u64; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("'{p}' is not a positive integer"))?;
        if *slot == 0 {
            return Err("caps must be positive".into());
        }
    }
    Ok(Caps { vectors: v[0], homs: v[1], lattice: v[2] })
}

/// A failed run: exit code and message for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

fn describe(path: &Path, e: &Error) -> String {
    match e {
        Error::Parse { line, message } => format!("{}:{line}: {message}", path.display()),
        other => format!("{}: {other}", path.display()),
    }
}

fn from_error(path: &Path, e: Error) -> Failure {
    Failure { code: if e.is_cap() { 3 } else { 2 }, message: describe(path, &e) }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_ring(path: &Path) -> Result<Arc<FiniteAlgebra>, Failure> {
    RingSpec::load(&read(path)?).map_err(|e| from_error(path, e))
}

/// Runs a command; the report is emitted even when the exit code is nonzero.
fn execute(cli: &Cli) -> Result<(Report, u8), Failure> {
    let caps = &cli.caps;
    match &cli.command {
        Command::Ring { action: RingAction::Check { path } } => {
            let a = load_ring(path)?;
            let mut r = Report::new(format!("ring check {}", path.display()));
            r.algebra = Some(AlgebraSummary::of(&a));
            Ok((r, 0))
        }
        Command::Module { action: ModuleAction::Report { ring, module, expr } } => {
            let a = load_ring(ring)?;
            let (name, text, origin) = match (module, expr) {
                (Some(p), None) => (p.display().to_string(), read(p)?, p.clone()),
                (None, Some(e)) => (e.clone(), e.clone(), PathBuf::from("<expr>")),
                _ => return Err(Failure::input("give a module file or -e <expression>")),
            };
            let m = ModuleScript::evaluate(&a, &text).map_err(|e| from_error(&origin, e))?;
            let profile = m.property_profile(caps).map_err(|e| from_error(&origin, e))?;
            let mut r = Report::new(format!("module report {}", ring.display()));
            r.algebra = Some(AlgebraSummary::of(&a));
            r.cap_notices = profile.cap_notices.clone();
            let code = if profile.is_complete() { 0 } else { 3 };
            r.modules.push(ModuleReport { name, profile });
            Ok((r, code))
        }
        Command::Census { ring, bounds, max_length } => {
            let a = load_ring(ring)?;
            let stem = ring.file_stem().map_or("ring".into(), |s| s.to_string_lossy().into_owned());
            let census = build_census(&stem, &a, bounds, *max_length, caps).map_err(|e| from_error(ring, e))?;
            let an = CensusAnalysis::new(census, caps).map_err(|e| from_error(ring, e))?;
            let mut r = Report::new(format!("census {}", ring.display()));
            r.algebra = Some(AlgebraSummary::of(&a));
            let code = if an.is_partial() { 3 } else { 0 };
            if an.census.certificate.partial {
                r.cap_notices.push("submodule lattice cap exceeded; census built from cyclic submodules only".into());
            }
            for p in &an.profiles {
                for n in &p.cap_notices {
                    if !r.cap_notices.contains(n) {
                        r.cap_notices.push(n.clone());
                    }
                }
            }
            r.censuses.push(CensusSummary::of(&an));
            Ok((r, code))
        }
        Command::Paper { suite } => {
            let (suite, name) = match suite {
                SuiteArg::Example1 => (Suite::Example1, "example1"),
                SuiteArg::Example2 => (Suite::Example2, "example2"),
                SuiteArg::All => (Suite::All, "all"),
            };
            let res = run_suite(suite, caps).map_err(|e| from_error(Path::new(name), e))?;
            let mut r = Report::new(format!("paper {name}"));
            r.censuses = res.censuses.iter().map(CensusSummary::of).collect();
            r.verdicts = res.verdicts;
            if let Some(v) = r.verdicts.iter().find(|v| !v.holds) {
                let what = v.witness.as_ref().map_or("no witness", |w| w.detail.as_str());
                eprintln!("modlab: {} failed on {}: {what}", v.id, v.universe);
                return Ok((r, 1));
            }
            Ok((r, 0))
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), Failure> {
    let body = match cli.format {
        Format::Text => report.render_text(),
        Format::Structured => report.to_json(),
    };
    match &cli.out {
        Some(p) => fs::write(p, body).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| Failure::input(format!("stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = execute(&cli).and_then(|(mut report, code)| {
        report.timing = Some(Timing { elapsed_ms: started.elapsed().as_millis() as u64 });
        emit(&cli, &report)?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("modlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
