use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use seqcert::analysis::{
    run_analysis, AnalysisError, AnalysisRequest, CertificateSource, CheckKind, SequenceSource, EXIT_INPUT_ERROR,
};
use seqcert::{catalog, definition};

#[derive(Parser)]
#[command(name = "seqcert", version, about = "Exact log-behavior checks and certificates for three-term recurrences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate terms, run checks and verify a certificate.
    Analyze(AnalyzeArgs),
    /// Print a builtin sequence as a definition file.
    Export {
        name: String,
        /// Omit the certificate block.
        #[arg(long)]
        no_certificate: bool,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Builtin name (flf, clf) or path to a sequence definition file.
    #[arg(long)]
    sequence: String,
    /// Highest term index N; terms S_0..S_N are generated.
    #[arg(long, default_value_t = 100)]
    terms: i64,
    /// Comma list of log-concave, log-convex, log-balanced, nth-root,
    /// criterion, certificate.
    #[arg(long, default_value = "")]
    checks: String,
    /// builtin, none, or a certificate file.
    #[arg(long, default_value = "none")]
    certificate: String,
    /// Starting index for the criterion range check; searched when absent.
    #[arg(long)]
    n0: Option<i64>,
    /// Lower window index for the log checks.
    #[arg(long)]
    from: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the certificate spot check.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn analyze(args: AnalyzeArgs) -> Result<i32, AnalysisError> {
    let req = AnalysisRequest {
        sequence: SequenceSource::parse(&args.sequence),
        terms: args.terms,
        checks: CheckKind::parse_list(&args.checks)?,
        certificate: CertificateSource::parse(&args.certificate),
        n0: args.n0,
        from: args.from,
        seed: args.seed,
    };
    let outcome = run_analysis(&req)?;
    match args.format {
        Format::Text => print!("{}", outcome.report.to_text()),
        Format::Json => println!("{}", outcome.report.to_json()),
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    // Usage errors share the input-error code; clap's own status 2 means
    // inconclusive here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT_ERROR as u8 } else { 0 });
        }
    };
    let code = match cli.command {
        Command::Analyze(args) => analyze(args).unwrap_or_else(|e| {
            eprintln!("seqcert: {e}");
            EXIT_INPUT_ERROR
        }),
        Command::Export { name, no_certificate } => match catalog::builtin(&name) {
            Some(rec) => {
                let cert = if no_certificate { None } else { catalog::builtin_certificate(&name) };
                println!("{}", definition::to_json(&rec, cert.as_ref()));
                0
            }
            None => {
                eprintln!("seqcert: unknown builtin sequence {name:?} (available: flf, clf)");
                EXIT_INPUT_ERROR
            }
        },
    };
    ExitCode::from(code as u8)
}
