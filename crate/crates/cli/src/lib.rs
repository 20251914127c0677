//! `lctlab` command-line frontend.
//!
//! [`run`] parses arguments, dispatches to the library and emits a report.
//! Exit codes: 0 success, 1 a checked relation failed, 2 usage error,
//! 3 enumeration budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use lctlab::budget::DEFAULT_BUDGET;
use lctlab::Execution;

mod commands;
mod error;
pub mod golden;
mod input;
pub mod report;

pub use error::CliError;
pub use report::{Format, Report, Row};

/// Seed used by the randomized drivers when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "lctlab",
    version,
    about = "Exact singularity invariants: lct(f, J_f^2), Milnor numbers, formal equivalence, jets, exponential sums"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Maximum enumeration size.
    #[arg(long, global = true, env = "LCTLAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Seed for randomized drivers.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the report here instead of stdout (a directory for `golden`).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Run enumeration kernels on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

impl GlobalOpts {
    pub fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct PolyArg {
    /// Polynomial, e.g. "x^3 + y^3" or "x1*x4 - x2*x3".
    #[arg(long)]
    pub poly: String,
    /// Number of variables; inferred from the highest variable when absent.
    #[arg(long)]
    pub nvars: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct IdealArg {
    /// Comma-separated generators.
    #[arg(long)]
    pub ideal: String,
    #[arg(long)]
    pub nvars: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Log canonical thresholds.
    #[command(subcommand)]
    Lct(LctCommand),
    /// Split off the quadratic part of a multiplicity-2 polynomial.
    Morsify {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, default_value_t = 10)]
        order: u32,
    },
    /// Coordinate change taking f to f + g for g in J_f^2.
    Tougeron {
        #[command(flatten)]
        poly: PolyArg,
        /// Comma-separated h_ij for i <= j (row-major), defining
        /// g = sum h_ij df/dx_i df/dx_j; random from --seed when absent.
        #[arg(long)]
        witness: Option<String>,
        #[arg(long, default_value_t = 10)]
        order: u32,
    },
    /// Milnor number at the origin.
    Milnor {
        #[command(flatten)]
        poly: PolyArg,
        /// Order cap for the colength sequence.
        #[arg(long, default_value_t = 30)]
        order: u32,
        /// Minimal exponent; enables the alpha^n mu >= (n/2)^n check.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Jet contact loci over finite fields.
    #[command(subcommand)]
    Jets(JetsCommand),
    /// Normalized exponential sum E(p^m).
    Expsum {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        /// Restrict x mod p to the zero set of these comma-separated polynomials.
        #[arg(long)]
        restrict: Option<String>,
    },
    /// sigma_m for m = 1..mmax, optionally against lct - epsilon.
    Decay {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        mmax: u32,
        #[arg(long)]
        lct: Option<String>,
        #[arg(long, default_value_t = lctlab::expsum::DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Restricted-sum identities and coset vanishing.
    IgusaCheck {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        restrict: Option<String>,
        /// Primes at or below this only warn; default 2 deg(f) n.
        #[arg(long)]
        min_p: Option<u64>,
    },
    /// Number of solutions of f = 0 mod p^k.
    Nk {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
    /// Theorem and property checks over families and seeded instances.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Regenerate the golden TSV tables.
    Golden,
}

#[derive(Subcommand, Debug)]
pub enum LctCommand {
    /// lct(f, J_f^2) for x_1^d + ... + x_n^d.
    Diagonal {
        #[arg(long = "n")]
        n: u32,
        #[arg(long = "d")]
        d: u32,
    },
    /// lct(f, J_f^2) for the generic n x n determinant.
    Det {
        #[arg(long = "n")]
        n: u32,
    },
    /// lct of a monomial ideal.
    Monomial {
        #[command(flatten)]
        ideal: IdealArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum JetsCommand {
    /// Number of m-jets with contact order >= e along the ideal.
    Count {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        e: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// alpha >= lct(f, J_f^2) on diagonal (2..grid) and determinantal families.
    #[command(name = "thmB")]
    ThmB {
        #[arg(long, default_value_t = 8)]
        grid: u32,
    },
    /// lct(f, J_f^2) > 1 iff rational; equals lct(f) otherwise.
    #[command(name = "thmA")]
    ThmA {
        #[arg(long, default_value_t = 8)]
        grid: u32,
    },
    /// lct(a + D(a)^2) = lct(a) on a monomial ideal or the built-in corpus.
    #[command(name = "corD")]
    CorD {
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Milnor numbers of diagonal polynomials and alpha^n mu >= (n/2)^n.
    Milnor {
        #[arg(long = "n", default_value_t = 3)]
        n: u32,
        #[arg(long = "d", default_value_t = 4)]
        d: u32,
    },
    /// Seeded random Tougeron and rank-2 equivalences.
    Equiv {
        #[arg(long, default_value_t = 20)]
        cases: usize,
        #[arg(long, default_value_t = 12)]
        order: u32,
    },
    /// Seeded random instances of the divided-power Taylor formula.
    Taylor {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

/// Parses `args` (including the program name), runs, and returns the exit
/// code. Reports go to stdout or `--output`; diagnostics to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    if g.budget == 0 {
        return Err(CliError::Usage("--budget must be positive".into()));
    }
    if let Command::Golden = cli.command {
        let dir = g.output.clone().unwrap_or_else(|| PathBuf::from("golden"));
        let written = golden::emit_golden_tables(&dir, g.budget, g.exec())?;
        for path in written {
            println!("{}", path.display());
        }
        return Ok(EXIT_OK);
    }
    let report = commands::dispatch(&cli.command, g)?;
    let text = report.render(g.format);
    match &g.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))?,
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
        }
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}
