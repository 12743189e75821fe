use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kappamu::report::analysis::{run_analysis, AnalysisOptions, RicciPerturbation};
use kappamu::report::audit::run_audit;
use kappamu::report::presets::preset;
use kappamu::report::spec::{parse_spec, ManifoldSpec};
use kappamu::report::text::{render_audit, render_report};
use kappamu::scalar::Rational;

/// Exact curvature, contact and pseudosymmetry checks for left-invariant
/// metrics on Lie groups.
#[derive(Debug, Parser)]
#[command(name = "kappamu", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze a manifold given as a JSON document.
    Analyze {
        spec_file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Add p/q to S(e_i, e_j) before the identity checks, as `i,j,p/q`.
        #[arg(long, value_parser = parse_perturbation)]
        perturb_ricci: Option<RicciPerturbation>,
    },
    /// Analyze a built-in example.
    Example {
        preset: String,
        #[arg(long, allow_hyphen_values = true)]
        c2: Option<Rational>,
        #[arg(long, allow_hyphen_values = true)]
        c3: Option<Rational>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, value_parser = parse_perturbation)]
        perturb_ricci: Option<RicciPerturbation>,
    },
    /// Check the solution families and branch polynomials for a range of n.
    Audit {
        #[arg(long)]
        n_from: u32,
        #[arg(long)]
        n_to: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_perturbation(s: &str) -> Result<RicciPerturbation, String> {
    let parts: Vec<&str> = s.splitn(3, ',').collect();
    let [i, j, delta] = parts[..] else {
        return Err("expected i,j,p/q".to_string());
    };
    let index = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad index {t:?}: {e}"));
    Ok(RicciPerturbation {
        i: index(i)?,
        j: index(j)?,
        delta: delta.parse().map_err(|e| format!("{e}"))?,
    })
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(1)
}

fn verdict(certified: bool) -> ExitCode {
    if certified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn analyze(spec: &ManifoldSpec, format: Format, perturb_ricci: Option<RicciPerturbation>) -> ExitCode {
    let options = AnalysisOptions { perturb_ricci };
    match run_analysis(spec, &options) {
        Ok(doc) => {
            match format {
                Format::Text => emit(&render_report(&doc)),
                Format::Json => emit(&(doc.to_json() + "\n")),
            }
            verdict(doc.all_certified)
        }
        Err(e) => fail(e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Analyze {
            spec_file,
            format,
            perturb_ricci,
        } => {
            let text = match fs::read_to_string(&spec_file) {
                Ok(t) => t,
                Err(e) => return fail(format!("cannot read {spec_file}: {e}")),
            };
            match parse_spec(&text) {
                Ok(spec) => analyze(&spec, format, perturb_ricci),
                Err(e) => fail(format!("[{}] {e}", e.code())),
            }
        }
        Command::Example {
            preset: name,
            c2,
            c3,
            format,
            perturb_ricci,
        } => match preset(&name, c2, c3) {
            Ok(spec) => analyze(&spec, format, perturb_ricci),
            Err(e) => fail(e),
        },
        Command::Audit { n_from, n_to, format } => match run_audit(n_from, n_to) {
            Ok(table) => {
                match format {
                    Format::Text => emit(&render_audit(&table)),
                    Format::Json => emit(&(table.to_json() + "\n")),
                }
                verdict(table.all_certified)
            }
            Err(e) => fail(e),
        },
    }
}
