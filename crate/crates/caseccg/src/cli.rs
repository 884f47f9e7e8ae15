//! Command implementations behind the `caseccg` binary: sentence parsing,
//! stepwise term reduction, and schema inspection. Each command writes to
//! the supplied streams and returns its exit status, so the binary stays a
//! thin argument-parsing shell and tests can drive commands directly.

use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use serde_json::json;

use crate::category::Category;
use crate::comb::Term;
use crate::lexicon::{argument_categories, Lexicon};
use crate::parser::{parse_with_chart, LowerTypeMode, ParseOptions};
use crate::pas::pas_of_term;

/// Exit statuses: 0 success, 1 no result (no derivation, no normal form,
/// no governor), 2 usage or input errors.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_RESULT: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    JsonLines,
}

/// Resolved command-line configuration, defaults applied.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub lexicon_path: Option<PathBuf>,
    pub goal: String,
    pub lower_type_mode: LowerTypeMode,
    pub step_limit: usize,
    pub output: OutputFormat,
}

impl Default for CliConfig {
    fn default() -> CliConfig {
        CliConfig {
            lexicon_path: None,
            goal: "S".to_string(),
            lower_type_mode: LowerTypeMode::OnFail,
            step_limit: 10_000,
            output: OutputFormat::Text,
        }
    }
}

fn fail(err_out: &mut impl Write, message: impl Display) -> i32 {
    let _ = writeln!(err_out, "error: {}", message);
    EXIT_ERROR
}

fn load_lexicon(config: &CliConfig, err_out: &mut impl Write) -> Result<Lexicon, i32> {
    let path = match &config.lexicon_path {
        Some(p) => p,
        None => return Err(fail(err_out, "no lexicon given (use --lexicon PATH)")),
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(err_out, format!("cannot read {}: {}", path.display(), e)))?;
    let lexicon: Lexicon = text.parse().map_err(|e| fail(err_out, e))?;
    for warning in lexicon.warnings() {
        let _ = writeln!(err_out, "warning: {}", warning);
    }
    Ok(lexicon)
}

/// Parse one sentence and report every goal derivation: the derivation
/// table, its combinatory form, and the evaluated PAS.
pub fn cmd_parse(
    config: &CliConfig,
    sentence: &str,
    out: &mut impl Write,
    err_out: &mut impl Write,
) -> i32 {
    let lexicon = match load_lexicon(config, err_out) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let goal: Category = match config.goal.parse() {
        Ok(g) => g,
        Err(e) => return fail(err_out, e),
    };
    let tokens: Vec<&str> = sentence.split_whitespace().collect();
    if tokens.is_empty() {
        return fail(err_out, "empty sentence");
    }
    let opts = ParseOptions {
        goal,
        lower_type_mode: config.lower_type_mode,
        ..ParseOptions::default()
    };
    let (_, derivations) = match parse_with_chart(&tokens, &lexicon, &opts) {
        Ok(r) => r,
        Err(e) => return fail(err_out, e),
    };
    if derivations.is_empty() {
        let _ = writeln!(out, "no derivation");
        return EXIT_NO_RESULT;
    }
    for (index, derivation) in derivations.iter().enumerate() {
        let form = derivation.semantics();
        let pas = pas_of_term(form, config.step_limit);
        match config.output {
            OutputFormat::Text => {
                let _ = writeln!(out, "derivation {}", index + 1);
                let _ = writeln!(out, "{}", derivation.pretty());
                let _ = writeln!(out, "form: {}", form);
                match &pas {
                    Ok(p) => {
                        let _ = writeln!(out, "PAS: {}", p);
                    }
                    Err(e) => {
                        let _ = writeln!(out, "PAS: <{}>", e);
                    }
                }
                let _ = writeln!(out);
            }
            OutputFormat::JsonLines => {
                let record = json!({
                    "category": derivation.root.category.to_string(),
                    "label": derivation.root.label.to_string(),
                    "semantics": form.to_string(),
                    "pas": pas.as_ref().map(|p| p.to_string()).ok(),
                });
                let _ = writeln!(out, "{}", record);
            }
        }
    }
    EXIT_OK
}

/// Reduce a term, printing the whole term after each leftmost-outermost
/// contraction, then the two result flags. Exit 0 only for a
/// combinator-free normal form.
pub fn cmd_reduce(
    config: &CliConfig,
    term_text: &str,
    out: &mut impl Write,
    err_out: &mut impl Write,
) -> i32 {
    let term: Term = match term_text.parse() {
        Ok(t) => t,
        Err(e) => return fail(err_out, e),
    };
    let _ = writeln!(out, "{}", term);
    let mut sink = Vec::new();
    let (_, stats) = term.evaluate_traced(config.step_limit, |step| {
        sink.push(step.to_string());
    });
    for step in &sink {
        let _ = writeln!(out, "→ {}", step);
    }
    if !stats.normal_form {
        let _ = writeln!(out, "… step limit ({}) reached", config.step_limit);
    }
    let _ = writeln!(
        out,
        "normal form: {}  combinator-free: {}  steps: {}",
        yes_no(stats.normal_form),
        yes_no(stats.combinator_free),
        stats.steps
    );
    if stats.normal_form && stats.combinator_free {
        EXIT_OK
    } else {
        EXIT_NO_RESULT
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// List every category/semantics assignment the schema produces for
/// argument rank `n` over the lexicon's inventory, followed by the case
/// suffix entries declared at that rank.
pub fn cmd_lexgen(
    config: &CliConfig,
    n: u32,
    out: &mut impl Write,
    err_out: &mut impl Write,
) -> i32 {
    let lexicon = match load_lexicon(config, err_out) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let assignments = argument_categories(n, lexicon.inventory());
    if assignments.is_empty() {
        let _ = writeln!(out, "no inventory category governs NP{}", n);
        return EXIT_NO_RESULT;
    }
    let _ = writeln!(out, "argument categories for NP{}:", n);
    for a in &assignments {
        let _ = writeln!(out, "  {} : {}  ({})", a.category, a.semantics, a.kind);
    }
    for decl in lexicon.case_decls().iter().filter(|d| d.rank == n) {
        let _ = writeln!(out, "case {} suffix entries:", decl.name);
        for a in &assignments {
            for allomorph in &decl.allomorphs {
                let shown = if allomorph.is_empty() { "∅" } else { allomorph };
                let _ = writeln!(
                    out,
                    "  -{} := {}\\N : {}",
                    shown, a.category, a.semantics
                );
            }
        }
    }
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo_config() -> CliConfig {
        CliConfig {
            lexicon_path: Some(PathBuf::from(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/lexicons/demo.lex"
            ))),
            ..CliConfig::default()
        }
    }

    fn run_parse(config: &CliConfig, sentence: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cmd_parse(config, sentence, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn parse_reports_the_pas() {
        let (code, out, _) = run_parse(&demo_config(), "Mehmet kitab-ı oku-du");
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("PAS: r b m"));
        assert!(out.contains("form: T m (T b r)"));
    }

    #[test]
    fn parse_exit_one_when_no_derivation() {
        let (code, out, _) = run_parse(&demo_config(), "Mehmet Mehmet");
        assert_eq!(code, EXIT_NO_RESULT);
        assert!(out.contains("no derivation"));
    }

    #[test]
    fn parse_exit_two_on_unknown_token() {
        let (code, _, err) = run_parse(&demo_config(), "Mehmet zzz oku-du");
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("zzz"));
    }

    #[test]
    fn jsonl_and_text_agree_on_the_pas() {
        let mut config = demo_config();
        config.output = OutputFormat::JsonLines;
        let (code, out, _) = run_parse(&config, "oku-du Mehmet kitab-ı");
        assert_eq!(code, EXIT_OK);
        let record: serde_json::Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
        assert_eq!(record["pas"], "r b m");
        assert_eq!(record["category"], "S");
        assert_eq!(record["label"], "OT");
        assert_eq!(record["semantics"], "B (T m) (T b) r");
    }

    #[test]
    fn reduce_traces_each_step() {
        let config = CliConfig::default();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cmd_reduce(&config, "B3 cause C r c b m", &mut out, &mut err);
        assert_eq!(code, EXIT_OK);
        let text = String::from_utf8(out).unwrap();
        let steps: Vec<&str> = text.lines().filter(|l| l.starts_with("→ ")).collect();
        assert_eq!(steps, vec!["→ cause (C r c b) m", "→ cause (r b c) m"]);
    }

    #[test]
    fn reduce_flags_residual_combinators() {
        let config = CliConfig::default();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cmd_reduce(&config, "C I I b", &mut out, &mut err);
        assert_eq!(code, EXIT_NO_RESULT);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("→ b I"));
        assert!(text.contains("combinator-free: no"));
    }

    #[test]
    fn reduce_syntax_error_exits_two() {
        let config = CliConfig::default();
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(cmd_reduce(&config, "(f", &mut out, &mut err), EXIT_ERROR);
    }

    #[test]
    fn lexgen_lists_the_subject_types() {
        let config = demo_config();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cmd_lexgen(&config, 1, &mut out, &mut err);
        assert_eq!(code, EXIT_OK);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("NP1 : I  (lower)"));
        assert!(text.contains("S/(S|NP1) : T  (shifted)"));
        assert!(text.contains("S\\(S|NP1) : T  (shifted)"));
        assert!(text.contains("-∅ := NP1\\N : I"));
    }

    #[test]
    fn lexgen_reports_missing_governor() {
        let config = demo_config();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cmd_lexgen(&config, 4, &mut out, &mut err);
        assert_eq!(code, EXIT_NO_RESULT);
        assert!(String::from_utf8(out).unwrap().contains("NP4"));
    }
}
