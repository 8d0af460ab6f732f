use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qvint::commands;
use qvint::config::{DomainSpec, ExperimentConfig, FieldSpec, Format, KSpec, SecretSpec};
use qvint::error::{usage, CliError, Result};
use qvint::report::to_json;
use qvint::verify::{self, Fault, VerifyOptions};
use qvint_core::simulator::DEFAULT_STATE_CAP;
use qvint_core::zmap::DEFAULT_TUPLE_CAP;

#[derive(Parser)]
#[command(name = "qvint", version, about = "Quantum vector interpolation experiments over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Domain statistics, query-count formulas and regime classification.
    Analyze(Common),
    /// Exhaustive pre-image census of Z with bound and identity checks.
    Enumerate(Common),
    /// State-vector simulation of the k-query algorithm.
    Simulate(Common),
    /// Run the property suite over the built-in instance grid.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Field size: q, or p^r.
    #[arg(long)]
    field: Option<String>,
    /// Modulus coefficients, constant term first (e.g. 1,1,0,1).
    #[arg(long, requires = "field")]
    modulus: Option<String>,
    /// Vandermonde domain of degree d.
    #[arg(long, value_name = "D")]
    vandermonde: Option<u32>,
    /// Monomial domain in m variables of degree at most d.
    #[arg(long, value_name = "M,D")]
    monomial: Option<String>,
    /// Explicit domain file.
    #[arg(long, value_name = "PATH")]
    domain_file: Option<PathBuf>,
    /// Query count, or `low` / `high` to use a formula.
    #[arg(long)]
    k: Option<String>,
    /// Secret vector (e.g. 1,2), `sweep` for all of F_q^n, or `random`.
    #[arg(long)]
    secret: Option<String>,
    /// Measurement samples per secret; 0 reports analytic values only.
    #[arg(long, default_value_t = 0)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// json, or csv for the enumerate census table.
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long, default_value_t = DEFAULT_TUPLE_CAP)]
    max_tuples: u64,
    /// Cap on q^n for dense states and character sweeps.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    max_states: u64,
    /// Include wall-clock timings (makes reports differ between runs).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Smaller grid.
    #[arg(long)]
    quick: bool,
    /// Write the results as JSON to this file as well.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Test hook: inject a known fault (`corrupt-modulus`).
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

impl Common {
    fn config(&self) -> Result<ExperimentConfig> {
        let field = self
            .field
            .as_deref()
            .map(|f| FieldSpec::parse(f, self.modulus.as_deref()))
            .transpose()?;
        let domain = DomainSpec::from_flags(
            self.vandermonde,
            self.monomial.as_deref(),
            self.domain_file.clone(),
        )?;
        let mut config = ExperimentConfig::new(field, domain);
        config.k = self.k.as_deref().map(str::parse::<KSpec>).transpose()?;
        config.secret = self.secret.as_deref().map(str::parse::<SecretSpec>).transpose()?;
        config.trials = self.trials;
        config.seed = self.seed;
        config.max_tuples = self.max_tuples;
        config.max_states = self.max_states;
        config.format = self.format.parse()?;
        Ok(config)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn json_only(config: &ExperimentConfig, command: &str) -> Result<()> {
    if config.format == Format::Csv {
        return Err(usage(format!("{command} only writes json; csv is for the enumerate census")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze(args) => {
            let config = args.config()?;
            json_only(&config, "analyze")?;
            args.emit(&to_json(&commands::analyze(&config, args.timings)?)?)
        }
        Command::Enumerate(args) => {
            let config = args.config()?;
            let result = commands::enumerate(&config, args.timings)?;
            match config.format {
                Format::Json => args.emit(&to_json(&result.report)?),
                Format::Csv => {
                    match &args.out {
                        Some(path) => {
                            commands::write_census_csv(&result.census, fs::File::create(path)?)?;
                            // the summary still goes to stdout
                            io::stdout().write_all(to_json(&result.report)?.as_bytes())?;
                        }
                        None => commands::write_census_csv(&result.census, io::stdout().lock())?,
                    }
                    Ok(())
                }
            }
        }
        Command::Simulate(args) => {
            let config = args.config()?;
            json_only(&config, "simulate")?;
            args.emit(&to_json(&commands::simulate(&config, args.timings)?)?)
        }
        Command::Verify(args) => {
            let fault = match args.inject_fault.as_deref() {
                None => None,
                Some("corrupt-modulus") => Some(Fault::CorruptModulus),
                Some(other) => return Err(usage(format!("unknown fault {other:?}"))),
            };
            let results = verify::run(VerifyOptions {
                quick: args.quick,
                fault,
            });
            let mut stdout = io::stdout().lock();
            for r in &results {
                writeln!(stdout, "{r}")?;
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            writeln!(stdout, "{} checks, {} failed", results.len(), failed)?;
            if let Some(path) = &args.out {
                fs::write(path, to_json(&results)?)?;
            }
            if failed > 0 {
                return Err(CliError::ChecksFailed(failed));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qvint: {e}");
            e.into_exit()
        }
    }
}
