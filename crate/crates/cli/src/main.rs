use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use chrono::Utc;
use clap::{Args, Parser, Subcommand, ValueEnum};
use fibsum::identities::{factor_fib_plus_minus_one, factor_fibsq_plus_minus_one, Sign};
use fibsum::modular::certify_period;
use fibsum::search::{theorem_suite, TheoremCase};
use fibsum::suites::{run_suite, SuiteKind};
use fibsum::{conjecture_scan, fib, lucas, weighted_power_sum, SearchConfig};
use fibsum_cli::{Format, ResultFile, RunManifest, TOOL_VERSION};
use serde_json::json;

/// Exact Fibonacci/Lucas arithmetic and the weighted power sum solver.
#[derive(Debug, Parser)]
#[command(name = "fibsum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print F(n).
    Fib {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Print L(n).
    Lucas {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Print 1 F(1)^p + 2 F(2)^p + ... + k F(k)^p.
    Sum {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 1)]
        p: u32,
    },
    /// Solve the sum equal to F(n)^q over a (p, q, k) box.
    Search(SearchArgs),
    /// Run identity sweeps and report the first counterexample.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(10..))]
        limit: u64,
    },
    /// Check the four completely solved (p, q) cases.
    Theorems {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        k_max: u64,
    },
    /// Certify the residue period of F(u) modulo F(kappa).
    Period {
        #[arg(long)]
        kappa: u64,
        /// Defaults to 10 * kappa.
        #[arg(long)]
        checked_up_to: Option<u64>,
    },
    /// Factor F(k) +- 1 (or F(k)^2 +- 1 with --squared).
    Factor {
        #[arg(long)]
        k: u64,
        #[arg(long, allow_negative_numbers = true, value_parser = ["-1", "+1", "1"])]
        sign: String,
        #[arg(long)]
        squared: bool,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Single exponent p.
    #[arg(long, conflicts_with = "p_max")]
    p: Option<u32>,
    /// Search 1 <= p <= P_MAX.
    #[arg(long)]
    p_max: Option<u32>,
    #[arg(long, conflicts_with = "q_max")]
    q: Option<u32>,
    #[arg(long)]
    q_max: Option<u32>,
    #[arg(long, default_value_t = 100)]
    k_max: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Result file. Without it records go to stdout and the summary to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Identities,
    Lemmas,
    Periods,
    Bounds,
    All,
}

enum Failure {
    Usage(anyhow::Error),
    Verification(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<fibsum::Error> for Failure {
    fn from(e: fibsum::Error) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let mut stdout = io::stdout().lock();
    match command {
        Command::Fib { n } => writeln!(stdout, "{}", fib(n))?,
        Command::Lucas { n } => writeln!(stdout, "{}", lucas(n))?,
        Command::Sum { k, p } => writeln!(stdout, "{}", weighted_power_sum(k, p)?)?,
        Command::Search(args) => search(args, &mut stdout)?,
        Command::Verify { suite, limit } => verify(suite, limit, &mut stdout)?,
        Command::Theorems { k_max } => theorems(k_max, &mut stdout)?,
        Command::Period {
            kappa,
            checked_up_to,
        } => {
            let cert = certify_period(kappa, checked_up_to.unwrap_or(10 * kappa))?;
            let verdict = if cert.holds { "holds" } else { "FAILS" };
            writeln!(
                stdout,
                "kappa={} modulus={} period={} checked_up_to={}: {verdict}",
                cert.kappa, cert.modulus, cert.period, cert.checked_up_to
            )?;
            if let Some(u) = cert.first_failure {
                return Err(Failure::Verification(format!("first failure at u={u}")));
            }
        }
        Command::Factor { k, sign, squared } => {
            let sign = if sign == "-1" {
                Sign::Minus
            } else {
                Sign::Plus
            };
            let (factors, base) = if squared {
                (factor_fibsq_plus_minus_one(k, sign)?, format!("F_{k}^2"))
            } else {
                (factor_fib_plus_minus_one(k, sign)?, format!("F_{k}"))
            };
            let op = if sign == Sign::Minus { '-' } else { '+' };
            writeln!(stdout, "{base} {op} 1 = {factors} = {}", factors.product())?;
        }
    }
    Ok(())
}

fn search(args: SearchArgs, stdout: &mut impl Write) -> Result<(), Failure> {
    let started = Utc::now();
    let p_range = args.p.map_or(1..=args.p_max.unwrap_or(100), |p| p..=p);
    let q_range = args.q.map_or(1..=args.q_max.unwrap_or(100), |q| q..=q);
    let config = SearchConfig {
        p_range,
        q_range,
        k_max: args.k_max,
        parallelism: args
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
    };
    config.validate()?;
    // Open the output before the scan so an unwritable path fails fast.
    let sink = match &args.out {
        Some(path) => {
            Some(File::create(path).with_context(|| format!("cannot write {}", path.display()))?)
        }
        None => None,
    };
    let records = conjecture_scan(&config)?;
    let file = ResultFile {
        manifest: RunManifest {
            command: "search".into(),
            config: json!({
                "p_range": [config.p_range.start(), config.p_range.end()],
                "q_range": [config.q_range.start(), config.q_range.end()],
                "k_max": config.k_max,
                "jobs": config.parallelism,
                "format": format!("{:?}", args.format).to_lowercase(),
            }),
            started,
            finished: Utc::now(),
            tool_version: TOOL_VERSION.into(),
        },
        records,
    };
    match sink {
        Some(f) => {
            let mut w = BufWriter::new(f);
            file.write(args.format, &mut w)?;
            w.flush()?;
            writeln!(stdout, "{}", file.summary())?;
        }
        None => {
            file.write(args.format, &mut *stdout)?;
            eprintln!("{}", file.summary());
        }
    }
    Ok(())
}

fn verify(suite: SuiteArg, limit: u64, stdout: &mut impl Write) -> Result<(), Failure> {
    let kinds: Vec<SuiteKind> = match suite {
        SuiteArg::Identities => vec![SuiteKind::Identities],
        SuiteArg::Lemmas => vec![SuiteKind::Lemmas],
        SuiteArg::Periods => vec![SuiteKind::Periods],
        SuiteArg::Bounds => vec![SuiteKind::Bounds],
        SuiteArg::All => SuiteKind::ALL.to_vec(),
    };
    let mut first_failure = None;
    for kind in kinds {
        let report = run_suite(kind, limit);
        for check in &report.checks {
            writeln!(stdout, "[{}] {check}", kind.name())?;
        }
        if first_failure.is_none() {
            first_failure = report.first_failure().cloned();
        }
    }
    match first_failure {
        None => {
            writeln!(stdout, "all checks passed (limit {limit})")?;
            Ok(())
        }
        Some(c) => Err(Failure::Verification(format!(
            "counterexample for {}: {}",
            c.name,
            c.counterexample.unwrap_or_default()
        ))),
    }
}

fn theorems(k_max: u64, stdout: &mut impl Write) -> Result<(), Failure> {
    let mut failed = Vec::new();
    for case in TheoremCase::ALL {
        let report = theorem_suite(case, k_max)?;
        let set = report
            .found
            .iter()
            .map(|(k, n)| format!("({k},{n})"))
            .collect::<Vec<_>>()
            .join(", ");
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        writeln!(
            stdout,
            "Theorem {}: {verdict} (found set {{{set}}})",
            case.id()
        )?;
        if !report.passed() {
            failed.push(case.id());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("failed: {failed:?}")))
    }
}
