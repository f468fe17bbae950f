//! `dunkl`: verification suites with deterministic JSON reports.
//!
//! Exit codes: 0 when every case passes, 1 on a failed case or computation error,
//! 2 on a usage error.

mod checks;
mod commands;
mod context;
mod report;
mod suite;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use context::{CliError, Context, KappaSpec, Source};
use report::SuiteReport;

#[derive(Parser, Debug)]
#[command(
    name = "dunkl",
    version,
    about = "Verify Dunkl operator and Coxeter bundle identities exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Catalog name such as A2, B3, G2, I2(5), H3.
    #[arg(long, global = true)]
    system: Option<String>,
    /// JSON file holding a list of integer root vectors; overrides --system.
    #[arg(long, global = true, value_name = "FILE")]
    roots: Option<PathBuf>,
    /// Maximum polynomial degree.
    #[arg(long, global = true)]
    degree: Option<u32>,
    /// Numeric multiplicity `orbit=value` (orbit `k0`, `k1`, `short`, `long`); other orbits stay symbolic.
    #[arg(long, global = true, value_name = "ORBIT=VALUE")]
    kappa: Vec<String>,
    /// Write the JSON report to a file, or `-` for stdout (the default).
    #[arg(long, global = true, value_name = "PATH|-")]
    json: Option<String>,
    /// Worker threads; falls back to DUNKL_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest group order to generate.
    #[arg(long, global = true)]
    order_cap: Option<usize>,
    /// Seed for sampled inputs.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Run every map sequentially.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coxeter group structure.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Root system axioms.
    Rootsys {
        #[command(subcommand)]
        cmd: RootsysCmd,
    },
    /// Dunkl operator identities.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Curvature of a Dunkl connection on every proper 2-rotation.
    Curvature {
        /// `standard`, `coth`, or `poly:<odd q(r)>` such as `poly:r`.
        #[arg(long, default_value = "standard")]
        connection: String,
    },
    /// The finite-group differential calculus.
    Qcalc {
        #[command(subcommand)]
        cmd: QcalcCmd,
    },
    /// Verification suites.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// Order, reflections, classes and the 2-rotation census.
    Info,
}

#[derive(Subcommand, Debug)]
enum RootsysCmd {
    /// Check the axioms and positive halves.
    Validate,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// `[T_ξ, T_η] = 0` on all monomials up to the degree (default 6).
    Commutativity {
        /// Keep every multiplicity symbolic (the default unless --kappa is given).
        #[arg(long, conflicts_with = "kappa")]
        symbolic_kappa: bool,
    },
    /// The deformed Leibniz rule on random pairs (default degree 4).
    Leibniz {
        #[arg(long, default_value_t = 50)]
        pairs: usize,
    },
}

#[derive(Subcommand, Debug)]
enum QcalcCmd {
    /// `δ(δ_g)` in the `[s]⊗[t]` basis.
    Delta {
        /// Group element index.
        #[arg(long)]
        element: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SuiteCmd {
    /// Every invariant on the desk catalog, or on --system if given.
    All,
}

fn threads(opts: &GlobalOpts) -> Result<Option<usize>, CliError> {
    if let Some(n) = opts.threads {
        return Ok(Some(n));
    }
    match std::env::var("DUNKL_THREADS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("DUNKL_THREADS='{v}' is not a thread count"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: &Cli) -> Result<SuiteReport, CliError> {
    let opts = &cli.opts;
    if let Some(n) = threads(opts)? {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        dunkl_core::par::configure_threads(n).map_err(CliError::Failure)?;
    }
    if opts.sequential {
        dunkl_core::par::set_parallel(false);
    }
    let source = match &opts.roots {
        Some(path) => Source::Custom(context::read_roots(path)?),
        None => Source::Catalog(opts.system.clone().unwrap_or_else(|| "A2".into())),
    };
    let ctx = Context {
        source,
        kappa: KappaSpec::parse(&opts.kappa)?,
        order_cap: opts.order_cap,
        seed: opts.seed,
    };
    match &cli.command {
        Command::Group {
            cmd: GroupCmd::Info,
        } => commands::group_info(&ctx),
        Command::Rootsys {
            cmd: RootsysCmd::Validate,
        } => commands::rootsys_validate(&ctx),
        Command::Verify {
            cmd: VerifyCmd::Commutativity { .. },
        } => commands::verify_commutativity(&ctx, opts.degree.unwrap_or(6)),
        Command::Verify {
            cmd: VerifyCmd::Leibniz { pairs },
        } => commands::verify_leibniz(&ctx, opts.degree.unwrap_or(4), *pairs),
        Command::Curvature { connection } => {
            commands::curvature(&ctx, &commands::ConnectionSpec::parse(connection)?)
        }
        Command::Qcalc {
            cmd: QcalcCmd::Delta { element },
        } => commands::qcalc_delta(&ctx, *element),
        Command::Suite { cmd: SuiteCmd::All } => {
            let explicit = opts.system.is_some() || opts.roots.is_some();
            suite::suite_all(&ctx, explicit, opts.degree.unwrap_or(6))
        }
    }
}

fn emit(report: &SuiteReport, target: Option<&str>) -> Result<(), CliError> {
    let text =
        serde_json::to_string_pretty(report).map_err(|e| CliError::Failure(e.to_string()))?;
    match target {
        None | Some("-") => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}").map_err(|e| CliError::Failure(e.to_string()))
        }
        Some(path) => {
            std::fs::write(path, text + "\n")
                .map_err(|e| CliError::Failure(format!("{path}: {e}")))?;
            println!(
                "{}: {} cases, {} failed; report written to {path}",
                report.suite,
                report.cases.len(),
                report.failures()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|r| emit(&r, cli.opts.json.as_deref()).map(|_| r));
    match outcome {
        Ok(report) if report.passed() => ExitCode::SUCCESS,
        Ok(report) => {
            for c in report
                .cases
                .iter()
                .filter(|c| c.status == report::Status::Fail)
            {
                eprintln!("FAIL {}: {}", c.id, c.witness.as_deref().unwrap_or(""));
            }
            ExitCode::from(1)
        }
        Err(e @ CliError::Usage(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use commands::ConnectionSpec;
    use dunkl_core::algebra::Scalar;
    use dunkl_core::rootsystem::RootSystem;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn connection_specs() {
        assert_eq!(
            ConnectionSpec::parse("standard").unwrap(),
            ConnectionSpec::Standard
        );
        assert_eq!(ConnectionSpec::parse("coth").unwrap(), ConnectionSpec::Coth);
        let one = Scalar::one();
        let zero = Scalar::zero();
        assert_eq!(
            ConnectionSpec::parse("poly:r").unwrap(),
            ConnectionSpec::Poly(vec![zero.clone(), one.clone()])
        );
        assert_eq!(
            ConnectionSpec::parse("poly:r - 1/2*r^3").unwrap(),
            ConnectionSpec::Poly(vec![zero.clone(), one, zero.clone(), Scalar::frac(-1, 2)])
        );
        assert!(ConnectionSpec::parse("poly:").is_err());
        assert!(ConnectionSpec::parse("poly:x^2").is_err());
        assert!(ConnectionSpec::parse("flat").is_err());
    }

    #[test]
    fn kappa_overrides() {
        let rs = RootSystem::standard("B2").unwrap();
        let k = KappaSpec::parse(&["long=2/3".into()])
            .unwrap()
            .build(&rs)
            .unwrap();
        assert_eq!(k.nsymbols(), 1);
        let k = KappaSpec::parse(&["k0=1".into(), "1=-2".into()])
            .unwrap()
            .build(&rs)
            .unwrap();
        assert_eq!(k.nsymbols(), 0);
        assert!(KappaSpec::parse(&["k0".into()]).is_err());
        assert!(KappaSpec::parse(&["k2=1".into()])
            .unwrap()
            .build(&rs)
            .is_err());
        assert!(KappaSpec::parse(&["k0=1/0".into()]).is_err());
    }
}
