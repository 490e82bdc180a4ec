//! Command-line front end. Every subcommand produces a [`Report`]; the exit code
//! is 0 when every item passed, 1 when some check failed, 2 on input errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;

pub use report::{emit_report, Format, Report, ResultItem, Summary, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "logmat", version, about = "Exact checks on the logarithmic matrix M_log")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FormArgs {
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    /// Hecke eigenvalue `a_p` as `num/den`.
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    pub ap: String,
    /// Nebentypus value `eps(p)` as `num/den`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub eps: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HypothesisArg {
    ThmABsw,
    None,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Valuations of M_log at varpi_n against the closed form.
    Ord {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// `ord` for n = 2..=n_max.
    VerifyProp {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value_t = 5)]
        n_max: u32,
    },
    /// Min-plus induction with symbolic a, b.
    Claim {
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// `num/den`, or `sym` for a symbolic slope.
        #[arg(long, default_value = "1")]
        r: String,
        #[arg(long, default_value_t = 8)]
        n_max: u32,
    },
    /// det M_n against kappa_n times the product of Phi_j.
    Det {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    /// Structure of M_n when a_p = 0.
    Ap0 {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        eps: String,
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    /// M_m(varpi_n) = M_n(varpi_n).
    Stab {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        m: u32,
    },
    /// Table of t_n^+ and t_n^-.
    Tn {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
    },
    /// Synthetic Artin-formalism instances.
    Artin {
        #[command(flatten)]
        form: FormArgs,
        /// Truncation bound.
        #[arg(long = "d", visible_alias = "D", default_value_t = 32)]
        d: usize,
        #[arg(long, default_value_t = 50)]
        trials: u64,
        /// First seed; trials use consecutive seeds.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = HypothesisArg::ThmABsw)]
        hypothesis: HypothesisArg,
    },
    /// Solves the even and odd limit equations for r.
    Endgame {
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Ramification index.
        #[arg(long, default_value_t = 2)]
        e: u64,
        /// Lower bound assumed for r, default 1/p.
        #[arg(long)]
        r_bound: Option<String>,
    },
    /// Truncated plus and minus logarithms.
    Pollack {
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Number of factors.
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Also report valuations at varpi_n.
        #[arg(long)]
        n: Option<u32>,
    },
}

/// Failure before a report exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_)
            | Error::NotPrime(_)
            | Error::OrdinaryForm
            | Error::HypothesisViolated(_)
            | Error::DivisionByZero => 2,
            _ => 1,
        };
        RunError { code, message: e.to_string() }
    }
}

/// Parses `argv` (program name first) and computes the report.
pub fn report_for(argv: &[String]) -> Result<(Report, Cli), RunError> {
    let cli = Cli::try_parse_from(argv).map_err(|e| RunError {
        code: if e.use_stderr() { 2 } else { 0 },
        message: e.render().to_string(),
    })?;
    let mut report = commands::execute(&cli.command)?;
    if !cli.no_timestamp {
        report.timestamp =
            Some(SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
    }
    Ok((report, cli))
}

pub fn run(argv: &[String]) -> i32 {
    let (report, cli) = match report_for(argv) {
        Ok(x) => x,
        Err(RunError { code: 0, message }) => {
            print!("{message}");
            return 0;
        }
        Err(RunError { code, message }) => {
            eprintln!("{}", message.trim_end());
            return code;
        }
    };
    let text = emit_report(&report, cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    exit_code(&report)
}

/// 0 when every item passed, 1 otherwise.
pub fn exit_code(report: &Report) -> i32 {
    if report.all_passed() {
        0
    } else {
        1
    }
}
