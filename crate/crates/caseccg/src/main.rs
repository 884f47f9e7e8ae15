use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use caseccg::cli::{cmd_lexgen, cmd_parse, cmd_reduce, CliConfig, OutputFormat, EXIT_OK};
use caseccg::parser::LowerTypeMode;

#[derive(Parser)]
#[command(
    name = "caseccg",
    about = "Case-driven categorial parsing to predicate-argument structures"
)]
struct Cli {
    /// Lexicon file (required by `parse` and `lexgen`)
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    /// Goal category for parsing
    #[arg(long, global = true, default_value = "S")]
    goal: String,
    /// When to admit bare lower-type NP assignments
    #[arg(long, global = true, value_enum, default_value_t = LowerArg::Onfail)]
    lower: LowerArg,
    /// Reduction step limit
    #[arg(long, global = true, default_value_t = 10_000)]
    steps: usize,
    /// Output format for `parse`
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LowerArg {
    Onfail,
    Always,
    Never,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a sentence (or stdin lines) into derivations and PAS
    Parse {
        /// Whitespace-separated tokens, hyphen-separated morphemes
        sentence: Option<String>,
    },
    /// Reduce a combinatory term step by step
    Reduce {
        /// Term text, e.g. "T m (T b r)"
        term: Option<String>,
    },
    /// Show the schema assignments and suffix entries for argument rank N
    Lexgen { n: u32 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = CliConfig {
        lexicon_path: cli.lexicon,
        goal: cli.goal,
        lower_type_mode: match cli.lower {
            LowerArg::Onfail => LowerTypeMode::OnFail,
            LowerArg::Always => LowerTypeMode::Always,
            LowerArg::Never => LowerTypeMode::Never,
        },
        step_limit: cli.steps,
        output: match cli.format {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Jsonl => OutputFormat::JsonLines,
        },
    };

    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();

    let code = match cli.command {
        Command::Parse { sentence } => match sentence {
            Some(s) => cmd_parse(&config, &s, &mut out, &mut err),
            None => each_stdin_line(|line, out, err| cmd_parse(&config, line, out, err), &mut out, &mut err),
        },
        Command::Reduce { term } => match term {
            Some(t) => cmd_reduce(&config, &t, &mut out, &mut err),
            None => each_stdin_line(|line, out, err| cmd_reduce(&config, line, out, err), &mut out, &mut err),
        },
        Command::Lexgen { n } => cmd_lexgen(&config, n, &mut out, &mut err),
    };
    ExitCode::from(code as u8)
}

/// Batch mode: run the command once per non-empty stdin line; the worst
/// exit status wins.
fn each_stdin_line<W: Write, E: Write>(
    mut run: impl FnMut(&str, &mut W, &mut E) -> i32,
    out: &mut W,
    err: &mut E,
) -> i32 {
    let stdin = io::stdin();
    let mut worst = EXIT_OK;
    for line in stdin.lock().lines() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                let _ = writeln!(err, "error: {}", e);
                return caseccg::cli::EXIT_ERROR;
            }
        };
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        worst = worst.max(run(trimmed, out, err));
    }
    worst
}
