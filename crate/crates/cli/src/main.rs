mod report;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use bireg_core::congruences;
use bireg_core::oracle::{bipartition_counts, cache_dir_from_env, coeff_fast, regular_counts, regular_fast, CACHE_ENV, EXACT_CAP};
use bireg_core::qexpr::{parse, Evaluator};
use bireg_core::series::CoeffRing;
use clap::{Parser, Subcommand};

use report::{render, Format};
use suites::{Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "bireg", version, about = "Verify q-series identities and congruences for regular bipartitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print B_{l,m}(n)
    Coeff {
        l: u64,
        m: u64,
        n: usize,
        #[arg(long = "mod", value_name = "P", value_parser = clap::value_parser!(u64).range(2..))]
        modulus: Option<u64>,
    },
    /// Print b_l(n)
    Regular {
        l: u64,
        n: usize,
        #[arg(long = "mod", value_name = "P", value_parser = clap::value_parser!(u64).range(2..))]
        modulus: Option<u64>,
    },
    /// Run verification suites
    Verify(VerifyArgs),
    /// List registered identities, chains and families
    List {
        #[arg(value_enum, default_value = "all")]
        what: Suite,
    },
    /// Print the first coefficients of a q-expression such as "(^ (f 1) -1)"
    Expand {
        expr: String,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
        #[arg(long = "mod", value_name = "M", value_parser = clap::value_parser!(u64).range(2..))]
        modulus: Option<u64>,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Defaults to the suite implied by the filters, else all
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    /// Identity id to run (repeatable)
    #[arg(long = "case", value_name = "ID")]
    cases: Vec<String>,
    /// Chain id to replay (repeatable)
    #[arg(long = "chain", value_name = "ID")]
    chains: Vec<String>,
    /// Family id or id/reading (repeatable)
    #[arg(long = "family", value_name = "KEY")]
    families: Vec<String>,
    /// Truncation order for identities and chains
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    order: Option<u64>,
    /// Largest n for every selected family
    #[arg(long)]
    n_max: Option<u64>,
    /// Check identities modulo this number instead of their own mode
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    modulus: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Oracle table cache
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Extra identities, one per line
    #[arg(long)]
    file: Option<PathBuf>,
}

impl VerifyArgs {
    fn config(&self) -> SuiteConfig {
        let implied = match (self.cases.is_empty(), self.chains.is_empty(), self.families.is_empty()) {
            (false, true, true) => Suite::Identities,
            (true, false, true) => Suite::Chains,
            (true, true, false) => Suite::Families,
            _ => Suite::All,
        };
        let jobs = self.jobs.map(|j| j as usize).unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        SuiteConfig {
            cases: self.cases.clone(),
            chains: self.chains.clone(),
            families: self.families.clone(),
            order: self.order.map(|o| o as usize),
            n_max: self.n_max,
            modulus: self.modulus,
            jobs,
            cache_dir: self.cache_dir.clone().or_else(cache_dir_from_env),
            file: self.file.clone(),
            ..SuiteConfig::new(self.suite.unwrap_or(implied))
        }
    }
}

/// `B_{l,m}(n)`, or `b_l(n)` when `m` is `None`. Large indices need a
/// prime modulus.
fn coeff(l: u64, m: Option<u64>, n: usize, modulus: Option<u64>) -> Result<String> {
    let ring = match modulus {
        Some(p) => CoeffRing::modular(p)?,
        None => CoeffRing::EXACT,
    };
    let table = match (m, modulus) {
        (Some(m), Some(p)) if n > EXACT_CAP => coeff_fast(l, m, n, p)?,
        (None, Some(p)) if n > EXACT_CAP => regular_fast(l, n, p)?,
        (Some(m), _) => bipartition_counts(l, m, n, ring)?,
        (None, _) => regular_counts(l, n, ring)?,
    };
    Ok(table.get(n).to_string())
}

fn expand(src: &str, order: usize, modulus: Option<u64>) -> Result<String> {
    let e = parse(src)?;
    let ring = match modulus {
        Some(m) => CoeffRing::modular(m)?,
        None => CoeffRing::EXACT,
    };
    let s = Evaluator::new(ring).eval(&e, order)?;
    Ok(s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
}

fn list(what: Suite, file: Option<&PathBuf>) -> Result<String> {
    let reg = suites::registry(file)?;
    let mut out = String::new();
    if matches!(what, Suite::Identities | Suite::All) {
        for c in &reg.identities {
            let flag = if c.suspect { " (suspect)" } else { "" };
            out += &format!("identity {} [{}] {} order {}{flag}: {} = {}\n", c.id, c.section, c.mode, c.default_order, c.lhs, c.rhs);
        }
    }
    if matches!(what, Suite::Chains | Suite::All) {
        for c in &reg.chains {
            out += &format!("chain {} [{}] {} order {}: {} steps\n", c.id, c.section, c.mode, c.default_order, c.steps.len());
        }
    }
    if matches!(what, Suite::Families | Suite::All) {
        for f in congruences::families() {
            out += &format!("family {} [{}] n <= {}: {}\n", f.key(), f.section, f.n_max, f.statement());
        }
    }
    Ok(out)
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let report = suites::run(&args.config())?;
    let text = render(&report, args.format)?;
    match &args.output {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => emit(&text)?,
    }
    if args.output.is_some() && args.format != Format::Text {
        let s = &report.summary;
        eprintln!("{} cases, {} failed", s.total, s.failed);
    }
    Ok(report.summary.is_success())
}

fn run(cli: Cli) -> Result<bool> {
    let out = match cli.command {
        Command::Coeff { l, m, n, modulus } => coeff(l, Some(m), n, modulus)?,
        Command::Regular { l, n, modulus } => coeff(l, None, n, modulus)?,
        Command::Expand { expr, order, modulus } => expand(&expr, order as usize, modulus)?,
        Command::List { what } => list(what, None)?.trim_end().to_string(),
        Command::Verify(args) => return verify(&args),
    };
    emit(&format!("{out}\n"))?;
    Ok(true)
}

/// Writes to stdout; a reader that closed the pipe early is not an error.
fn emit(text: &str) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
