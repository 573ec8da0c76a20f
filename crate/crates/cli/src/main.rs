//! `zeckgen`: encode, decode and check generalized Zeckendorf systems
//! described by a TOML config.

use std::io::{BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use zeckgen_cli::config::{self, kind_name, SystemConfig};
use zeckgen_cli::verbs::{self, Report, VerbError};

#[derive(Parser, Debug)]
#[command(name = "zeckgen", version, about = "Generalized Zeckendorf numeration systems")]
struct Cli {
    /// System config (TOML). Defaults to the classical Fibonacci system.
    #[arg(short, long, global = true)]
    config: Option<String>,

    /// Decimal places in decimal mode. Overrides the config; the
    /// ZECKGEN_PRECISION variable supplies a default when neither is set.
    #[arg(long, global = true)]
    precision: Option<u32>,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Expansion of each integer, as indices from the top (`10,5,3`).
    Encode { values: Vec<String> },
    /// Value of each coefficient function (`3:1,5:1,10:1` or `10,5,3`).
    Decode { values: Vec<String> },
    /// The first members of the collection with their values.
    Enumerate { count: Option<String> },
    /// Distinct values over members of bounded order.
    VerifyUnique,
    /// Greedy block expansion of reals in (0, 1).
    RealExpand { values: Vec<String> },
    /// Digits of p-adic residues, or values of coefficient functions.
    PadicExpand {
        /// Evaluate coefficient functions instead of decoding residues.
        #[arg(long)]
        eval: bool,
        values: Vec<String>,
    },
    /// Checks the configured recurrence against the sequence.
    VerifyRecurrence,
    /// Checks that each maximal function sums to the previous term.
    VerifyMaximal { indices: Vec<String> },
    /// Dominant-root test for the L-list polynomial or given coefficients
    /// `a_0,…,a_n`.
    DominantCheck { coeffs: Option<String> },
    /// The shift map on each integer.
    Shift { values: Vec<String> },
    /// All values up to a bound, with the first collision if any.
    Subset { bound: Option<String> },
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::Encode { .. } => "encode",
            Verb::Decode { .. } => "decode",
            Verb::Enumerate { .. } => "enumerate",
            Verb::VerifyUnique => "verify-unique",
            Verb::RealExpand { .. } => "real-expand",
            Verb::PadicExpand { .. } => "padic-expand",
            Verb::VerifyRecurrence => "verify-recurrence",
            Verb::VerifyMaximal { .. } => "verify-maximal",
            Verb::DominantCheck { .. } => "dominant-check",
            Verb::Shift { .. } => "shift",
            Verb::Subset { .. } => "subset",
        }
    }
}

/// Arguments as given, `-` replaced by whitespace-separated tokens from
/// standard input, or the config's inputs when none are given.
fn resolve_inputs(given: &[String], cfg: &SystemConfig) -> Result<Vec<String>, VerbError> {
    if given.is_empty() {
        return Ok(cfg.inputs.clone());
    }
    let mut out = Vec::new();
    for a in given {
        if a == "-" {
            for line in std::io::stdin().lock().lines() {
                let line = line.map_err(|e| VerbError::Usage(format!("reading standard input: {e}")))?;
                out.extend(line.split_whitespace().map(str::to_string));
            }
        } else {
            out.push(a.clone());
        }
    }
    Ok(out)
}

fn optional(arg: &Option<String>, cfg: &SystemConfig) -> Result<Vec<String>, VerbError> {
    match arg {
        Some(a) => resolve_inputs(std::slice::from_ref(a), cfg),
        None => Ok(cfg.inputs.clone()),
    }
}

fn run(cli: &Cli, cfg: &SystemConfig) -> Result<Report, VerbError> {
    match &cli.verb {
        Verb::Encode { values } => verbs::encode(cfg, &resolve_inputs(values, cfg)?),
        Verb::Decode { values } => verbs::decode(cfg, &resolve_inputs(values, cfg)?),
        Verb::Enumerate { count } => verbs::enumerate(cfg, &optional(count, cfg)?),
        Verb::VerifyUnique => verbs::verify_unique(cfg),
        Verb::RealExpand { values } => verbs::real_expand(cfg, &resolve_inputs(values, cfg)?),
        Verb::PadicExpand { eval, values } => verbs::padic_expand(cfg, &resolve_inputs(values, cfg)?, *eval),
        Verb::VerifyRecurrence => verbs::verify_recurrence_verb(cfg),
        Verb::VerifyMaximal { indices } => verbs::verify_maximal(cfg, indices),
        Verb::DominantCheck { coeffs } => verbs::dominant_check(cfg, coeffs.as_slice()),
        Verb::Shift { values } => verbs::shift(cfg, &resolve_inputs(values, cfg)?),
        Verb::Subset { bound } => verbs::subset(cfg, &optional(bound, cfg)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match &cli.config {
        Some(path) => match SystemConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("zeckgen: {e}");
                return ExitCode::from(2);
            }
        },
        None => SystemConfig::fibonacci(),
    };
    if let Some(p) = cli.precision {
        if let config::ModeSpec::Decimal { precision } = &mut cfg.mode {
            *precision = Some(p.to_string());
        }
    }
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    let _ = writeln!(w, "# fixture: {}", cfg.name);
    let _ = writeln!(w, "# verb: {}", cli.verb.name());
    let _ = writeln!(w, "# family: {}", kind_name(&cfg.family));
    match run(&cli, &cfg) {
        Ok(report) => {
            for line in &report.lines {
                let _ = writeln!(w, "{line}");
            }
            ExitCode::from(if report.negative { 1 } else { 0 })
        }
        Err(e) => {
            let _ = w.flush();
            eprintln!("zeckgen: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
