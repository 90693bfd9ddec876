use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ratequiv::corpus::{CorpusVerb, DEFAULT_SEED};
use ratequiv::exec::Exec;
use ratequiv_cli::run::{DEFAULT_COUNT, DEFAULT_MAX_DEGREE};
use ratequiv_cli::{emit_json, emit_text, parse, run, run_corpus_command, Document, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact intersection theory of principal divisors over the rationals.
///
/// Exit status: 0 when every verdict passes, 1 on a failed verification,
/// 2 on usage or syntax errors, 3 when a resource budget runs out.
#[derive(Debug, Parser)]
#[command(name = "ratequiv", version)]
struct Cli {
    /// Seed for generated fixtures.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Reduction-step budget for each Gröbner basis computation.
    #[arg(long, global = true)]
    max_steps: Option<u64>,
    /// Largest degree of generated polynomials.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run fixtures one at a time.
    #[arg(long, global = true)]
    sequential: bool,
    /// Record wall-clock time per command (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Run a script; `-` or no file reads standard input.
    Run { file: Option<PathBuf> },
    /// Run a seeded fixture corpus.
    Corpus {
        verb: CorpusVerb,
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        seed: cli.seed,
        max_degree: cli.max_degree,
        max_steps: cli.max_steps,
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
        timing: cli.timing,
    };
    let doc = match &cli.command {
        Cmd::Run { file } => {
            let src = match read_source(file.as_ref()) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("ratequiv: {e}");
                    return ExitCode::from(2);
                }
            };
            match parse(&src) {
                Ok(script) => run(&script, &cfg),
                Err(e) => {
                    let name = match file {
                        Some(p) if p.as_os_str() != "-" => p.display().to_string(),
                        _ => "<stdin>".into(),
                    };
                    eprintln!("{name}:{e}");
                    return ExitCode::from(2);
                }
            }
        }
        Cmd::Corpus { verb, count } => run_corpus_command(*verb, *count, &cfg),
    };
    print(&doc, cli.format);
    ExitCode::from(doc.exit_code() as u8)
}

fn read_source(file: Option<&PathBuf>) -> std::io::Result<String> {
    match file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn print(doc: &Document, format: Format) {
    match format {
        Format::Text => print!("{}", emit_text(doc)),
        Format::Json => print!("{}", emit_json(doc)),
    }
}
