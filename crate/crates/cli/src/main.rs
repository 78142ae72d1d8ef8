mod commands;
mod session;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dertool_core::calc::hunter::HuntMode;
use dertool_core::calc::{GradeKind, ImageKind};
use dertool_core::polyext::DEFAULT_DEGREE_CAP;
use dertool_core::{Error, ErrorClass, Result};

use commands::{CertArgs, CertSide, Outcome};
use session::Session;

/// Exact calculus of derivations and E-derivations on finite-dimensional
/// algebras and on polynomial extensions B[t].
///
/// Exit codes: 0 success, 1 mathematical negative, 2 input error,
/// 3 internal invariant violation.
#[derive(Parser, Debug)]
#[command(name = "dertool", version)]
struct Cli {
    /// Built-in algebra (Q, dual, T2, N3, QxQ, Q^n, trunc<n>, sums like T2+dual)
    /// or an algebra JSON file.
    #[arg(long, global = true, default_value = "Q")]
    algebra: String,
    /// Work in B[t] over the chosen algebra B.
    #[arg(long, global = true)]
    poly: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for written files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Master seed; the DERTOOL_SEED environment variable takes precedence.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Derivation,
    Endomorphism,
    Ederivation,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify an operator (derivation, endomorphism, E-derivation, LN).
    Check {
        #[arg(long)]
        op: String,
    },
    /// Jordan–Chevalley decomposition of an operator matrix.
    Jc {
        #[arg(long)]
        op: String,
    },
    /// Spectral grading by the semisimple part of an operator.
    Grade {
        #[arg(long)]
        op: String,
        #[arg(long, value_enum, default_value = "derivation")]
        kind: KindArg,
    },
    /// Image of a derivation or E-derivation with its block structure.
    Image {
        #[arg(long)]
        op: String,
        #[arg(long, value_enum, default_value = "derivation")]
        kind: KindArg,
    },
    /// I - e^D and e^D for an LN derivation D.
    Exp {
        #[arg(long)]
        op: String,
        /// Element to apply to; without it the full matrices are printed.
        #[arg(long)]
        a: Option<String>,
    },
    /// ln(I - delta) for an LN E-derivation delta.
    Log {
        #[arg(long)]
        op: String,
        #[arg(long)]
        a: Option<String>,
    },
    /// Construct a preimage certificate and write it to a file.
    Certify {
        #[arg(long)]
        op: String,
        #[arg(long, value_enum, default_value = "auto")]
        side: CertSide,
        /// Idempotent in ker D.
        #[arg(long)]
        e: Option<String>,
        /// Element with D(s) = e in eAe; solved for when omitted.
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        target: Option<String>,
        /// Grading used by the spectral construction.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// File name inside --out.
        #[arg(long, default_value = "certificate.json")]
        name: String,
    },
    /// Re-check a certificate file by one operator application.
    Verify { file: PathBuf },
    /// Decide whether 1 lies in the image and, if so, prove surjectivity.
    Surjectivity {
        #[arg(long)]
        op: String,
        /// Also write the unit certificate to this file inside --out.
        #[arg(long)]
        cert: Option<String>,
    },
    /// Seeded randomized search for counterexamples.
    Hunt {
        #[arg(long)]
        mode: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Also write the report to this file inside --out.
        #[arg(long)]
        report: Option<String>,
    },
    /// Check the series identity (1-t)^i sum_n (1/n) C(n,i) t^(n-i) = 1/i.
    SeriesClaim {
        /// Single i; all of 1..=10 when omitted.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
}

fn grade_kind(k: KindArg) -> GradeKind {
    match k {
        KindArg::Derivation => GradeKind::Derivation,
        _ => GradeKind::Endomorphism,
    }
}

fn image_kind(k: KindArg) -> ImageKind {
    match k {
        KindArg::Derivation => ImageKind::Derivation,
        _ => ImageKind::Ederivation,
    }
}

fn seed(cli_seed: u64) -> Result<u64> {
    match std::env::var("DERTOOL_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Error::Invalid(format!("DERTOOL_SEED='{s}' is not an unsigned integer"))),
        Err(_) => Ok(cli_seed),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let mut session = Session::new(cli.out.clone(), seed(cli.seed)?);
    let needs_algebra = !matches!(cli.command, Command::Verify { .. } | Command::Hunt { .. } | Command::SeriesClaim { .. });
    let loaded = if needs_algebra { Some(session.space(&cli.algebra, cli.poly, cli.degree_cap)?) } else { None };
    let space = || loaded.as_ref().ok_or_else(|| Error::Invalid("no algebra loaded".into()));
    match &cli.command {
        Command::Check { op } => commands::check(&mut session, space()?, op),
        Command::Jc { op } => commands::jc(&mut session, space()?, op),
        Command::Grade { op, kind } => commands::grade_cmd(&mut session, space()?, op, grade_kind(*kind)),
        Command::Image { op, kind } => commands::image(&mut session, space()?, op, image_kind(*kind)),
        Command::Exp { op, a } => commands::series(&mut session, space()?, op, a.as_deref(), false),
        Command::Log { op, a } => commands::series(&mut session, space()?, op, a.as_deref(), true),
        Command::Certify { op, side, e, s, a, b, target, kind, name } => {
            let args = CertArgs {
                spec: op,
                side: *side,
                e: e.as_deref(),
                s: s.as_deref(),
                a: a.as_deref(),
                b: b.as_deref(),
                target: target.as_deref(),
                kind: kind.map(image_kind),
                name,
            };
            commands::certify(&mut session, space()?, &args)
        }
        Command::Verify { file } => commands::verify(file),
        Command::Surjectivity { op, cert } => commands::surjectivity(&mut session, space()?, op, cert.as_deref()),
        Command::Hunt { mode, trials, report } => {
            commands::hunt_cmd(&mut session, mode.parse::<HuntMode>()?, *trials, report.as_deref())
        }
        Command::SeriesClaim { i, order } => commands::series_claim(*i, *order),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                println!("{}", out.human);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            let code = match e.class() {
                ErrorClass::Negative => 1,
                ErrorClass::Input => 2,
                ErrorClass::Internal => 3,
            };
            if json {
                let class = ["ok", "negative", "input", "internal"][code as usize];
                println!("{}", serde_json::json!({ "error": e.to_string(), "class": class }));
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
