//! The command line. `solve` prints who is what, `ask` answers one
//! question, `models` lists every interpretation, `parse` shows the
//! trees without solving, `check` scores a whole directory of puzzles,
//! and `prove` runs the prover on a bare theory file.
//!
//! Every subcommand honors the global flags for swapping the grammar,
//! synonym dictionary and gazetteer, forcing the background domain,
//! and bounding models and wall-clock time. `--json` switches the
//! output to one machine-readable object per run.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::chart::ChartParser;
use crate::fol::TheoryFile;
use crate::prover::{check_proof, proof_dot, prove, Outcome, Proof};
use crate::solve::{
    frontend, refutation_inputs, solve, Answer, Domain, Question, Role, SolveError, SolveReport,
    SolverConfig, YesNo,
};
use crate::text::SentenceKind;

#[derive(Parser)]
#[command(
    name = "knaves",
    version,
    about = "Solves knights-and-knaves puzzles stated in English"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    globals: Globals,
}

#[derive(Args)]
struct Globals {
    /// Grammar file replacing the built-in grammar
    #[arg(long, global = true, value_name = "FILE")]
    grammar: Option<PathBuf>,
    /// Synonym dictionary replacing the built-in one
    #[arg(long, global = true, value_name = "FILE")]
    synonyms: Option<PathBuf>,
    /// Name gazetteer replacing the built-in one
    #[arg(long, global = true, value_name = "FILE")]
    gazetteer: Option<PathBuf>,
    /// Background axioms to assume; detected from the text when absent
    #[arg(long, global = true, value_parser = domain_flag,
          value_name = "knights-knaves|comparatives")]
    domain: Option<Domain>,
    /// Upper bound on enumerated models
    #[arg(long, global = true, value_name = "N")]
    max_models: Option<usize>,
    /// Give up after this many seconds
    #[arg(long, global = true, value_name = "N")]
    max_seconds: Option<u64>,
    /// `key = value` file read before the flags are applied
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// One machine-readable JSON object instead of prose
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a puzzle file and print the verdicts
    Solve {
        puzzle: PathBuf,
        /// Also print the clause form of the theory
        #[arg(long)]
        dump_clauses: bool,
    },
    /// Answer one question about a puzzle
    Ask {
        puzzle: PathBuf,
        question: String,
        /// Write the proof behind a Yes or No as Graphviz DOT
        #[arg(long, value_name = "FILE")]
        emit_proof: Option<PathBuf>,
    },
    /// List every model of a puzzle's theory
    Models { puzzle: PathBuf },
    /// Parse the sentences without solving anything
    Parse {
        puzzle: PathBuf,
        /// Print each parse tree in bracketed form
        #[arg(long)]
        dump_tree: bool,
    },
    /// Solve every .txt puzzle in a directory and count the failures
    Check { corpus: PathBuf },
    /// Prove the goals of a theory file; no English involved
    Prove {
        theory: PathBuf,
        /// Write the first proof as Graphviz DOT
        #[arg(long, value_name = "FILE")]
        emit_proof: Option<PathBuf>,
    },
}

fn domain_flag(s: &str) -> Result<Domain, String> {
    match s {
        "knights-knaves" => Ok(Domain::KnightsKnaves),
        "comparatives" => Ok(Domain::Comparatives),
        _ => Err("expected `knights-knaves` or `comparatives`".to_string()),
    }
}

/// What a subcommand produced: prose for people, an object for `--json`,
/// and whether the result counts as a failure for the exit code.
struct CmdOutput {
    text: String,
    json: Value,
    failed: bool,
}

pub fn run(args: &[String]) -> u8 {
    let argv = std::iter::once("knaves".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version land here too; they are not failures.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let json = cli.globals.json;
    let config = match build_config(&cli.globals) {
        Ok(c) => c,
        Err(msg) => return fail(json, &msg),
    };
    let started = Instant::now();
    let command = cli.command;
    let result = with_deadline(cli.globals.max_seconds, move || run_command(&command, &config));
    match result {
        Ok(out) => {
            if json {
                let mut value = out.json;
                if let Value::Object(map) = &mut value {
                    map.insert(
                        "timings".to_string(),
                        json!({ "total_ms": started.elapsed().as_millis() as u64 }),
                    );
                }
                emit(&value.to_string());
            } else if !out.text.is_empty() {
                emit(&out.text);
            }
            u8::from(out.failed)
        }
        Err(msg) => fail(json, &msg),
    }
}

/// Prints a line, shrugging off a closed pipe: `knaves ... | head` must
/// not panic.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout(), "{s}");
}

fn fail(json: bool, msg: &str) -> u8 {
    if json {
        emit(&json!({ "verdict": "error", "diagnostics": [msg] }).to_string());
    } else {
        let _ = writeln!(std::io::stderr(), "error: {msg}");
    }
    1
}

fn build_config(globals: &Globals) -> Result<SolverConfig, String> {
    let mut config = match &globals.config {
        Some(path) => SolverConfig::from_file(path).map_err(|e| e.to_string())?,
        None => SolverConfig::default(),
    };
    if let Some(p) = &globals.grammar {
        config.grammar = Some(p.clone());
    }
    if let Some(p) = &globals.synonyms {
        config.synonyms = Some(p.clone());
    }
    if let Some(p) = &globals.gazetteer {
        config.gazetteer = Some(p.clone());
    }
    if let Some(d) = globals.domain {
        config.domain = Some(d);
    }
    if let Some(n) = globals.max_models {
        config.max_models = n;
    }
    Ok(config)
}

/// Runs the job on a worker thread when a time budget is set. On
/// timeout the worker is abandoned; the process exits right after, so
/// nothing lingers.
fn with_deadline<F>(seconds: Option<u64>, job: F) -> Result<CmdOutput, String>
where
    F: FnOnce() -> Result<CmdOutput, String> + Send + 'static,
{
    let Some(s) = seconds else {
        return job();
    };
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(job());
    });
    match rx.recv_timeout(Duration::from_secs(s)) {
        Ok(result) => result,
        Err(_) => Err(format!("gave up after {s} seconds")),
    }
}

fn run_command(command: &Cmd, config: &SolverConfig) -> Result<CmdOutput, String> {
    match command {
        Cmd::Solve { puzzle, dump_clauses } => cmd_solve(puzzle, *dump_clauses, config),
        Cmd::Ask { puzzle, question, emit_proof } => {
            cmd_ask(puzzle, question, emit_proof.as_deref(), config)
        }
        Cmd::Models { puzzle } => cmd_models(puzzle, config),
        Cmd::Parse { puzzle, dump_tree } => cmd_parse(puzzle, *dump_tree, config),
        Cmd::Check { corpus } => cmd_check(corpus, config),
        Cmd::Prove { theory, emit_proof } => cmd_prove(theory, emit_proof.as_deref(), config),
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
}

/// `marge` -> `Marge`, for printing.
fn title(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}

/// Token-joined sentence text back to something readable.
fn detok(s: &str) -> String {
    s.replace(" ?", "?").replace(" .", ".").replace(" ,", ",").replace(" :", ":")
}

/// `Marge: knight, Homer: knight` over the persons with settled kinds.
fn assignment_line(report: &SolveReport) -> Option<String> {
    let parts: Vec<String> = report
        .persons
        .iter()
        .filter_map(|p| report.verdict(p).map(|kind| format!("{}: {kind}", title(p))))
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join(", "))
    }
}

fn assignment_json(report: &SolveReport) -> Value {
    let mut map = serde_json::Map::new();
    for p in &report.persons {
        let v = match report.verdict(p) {
            Some(kind) => Value::String(kind.to_string()),
            None => Value::Null,
        };
        map.insert(p.clone(), v);
    }
    Value::Object(map)
}

/// `unique`, `contradictory` or `ambiguous`, by model count.
fn theory_verdict(report: &SolveReport) -> &'static str {
    match report.models.len() {
        0 => "contradictory",
        1 => "unique",
        _ => "ambiguous",
    }
}

fn solve_diagnostics(report: &SolveReport) -> Vec<String> {
    let mut out = Vec::new();
    for entry in &report.extensions {
        out.push(format!(
            "learned `{}` from `{}` through the synonym dictionary",
            entry.surface, entry.known_surface
        ));
    }
    match report.models.len() {
        0 => out.push("the statements contradict each other; no model satisfies them".to_string()),
        1 => {}
        n => out.push(format!("underdetermined: {n} models satisfy the statements")),
    }
    let open: Vec<String> = report
        .persons
        .iter()
        .filter(|p| !report.models.is_empty() && report.verdict(p).is_none())
        .map(|p| title(p))
        .collect();
    if !open.is_empty() && !report.models.is_empty() && report.models.len() > 1 {
        out.push(format!("undetermined: {}", open.join(", ")));
    }
    out
}

fn answer_text(answer: &Answer) -> String {
    match answer {
        Answer::YesNo { verdict, .. } => verdict.to_string(),
        Answer::Who { persons, note } => {
            if persons.is_empty() {
                match note {
                    Some(n) => format!("nobody ({n})"),
                    None => "nobody".to_string(),
                }
            } else {
                persons.iter().map(|p| title(p)).collect::<Vec<_>>().join(", ")
            }
        }
        Answer::Verdict => "see the verdicts above".to_string(),
    }
}

fn answer_json(answer: &Answer) -> Value {
    match answer {
        Answer::YesNo { verdict, proof } => json!({
            "verdict": verdict.to_string().to_lowercase(),
            "proved": proof.is_some(),
        }),
        Answer::Who { persons, note } => json!({
            "persons": persons,
            "note": note,
        }),
        Answer::Verdict => json!({ "verdict": "assignment" }),
    }
}

fn cmd_solve(puzzle: &Path, dump_clauses: bool, config: &SolverConfig) -> Result<CmdOutput, String> {
    let text = read_file(puzzle)?;
    let report = solve(&text, config).map_err(|e| e.to_string())?;
    let diagnostics = solve_diagnostics(&report);

    let mut lines: Vec<String> = Vec::new();
    if let Some(line) = assignment_line(&report) {
        lines.push(line);
    }
    for qa in &report.answers {
        if !matches!(qa.answer, Answer::Verdict) {
            lines.push(format!("{} -> {}", detok(&qa.question), answer_text(&qa.answer)));
        }
    }
    lines.push(format!("Models: {}", report.models.len()));
    for d in &diagnostics {
        lines.push(format!("note: {d}"));
    }
    if dump_clauses {
        lines.push("formulas(assumptions).".to_string());
        for clause in &report.clauses {
            let body = clause
                .literals
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(" | ");
            lines.push(format!("  {body}."));
        }
        lines.push("end_of_list.".to_string());
    }

    let answers: Vec<Value> = report
        .answers
        .iter()
        .map(|qa| json!({ "question": detok(&qa.question), "answer": answer_json(&qa.answer) }))
        .collect();
    let value = json!({
        "verdict": theory_verdict(&report),
        "assignment": assignment_json(&report),
        "model_count": report.models.len(),
        "answers": answers,
        "diagnostics": diagnostics,
    });
    Ok(CmdOutput { text: lines.join("\n"), json: value, failed: false })
}

/// The accepted question shapes, for the error message when one fails
/// to parse.
const QUESTION_FORMS: &str = "accepted question forms include: `Is X a knight?`, \
`Is X a knave and Y a knight?`, `Are X and Y the same?`, `Are X and Y different?`, \
`Are X and Y both knights?`, `Does X lie?`, `Does X tell the truth?`, `Who is a knight?`, \
`Who is the tallest?`, `Who lies?`, `What are X and Y?`";

fn cmd_ask(
    puzzle: &Path,
    question: &str,
    emit_proof: Option<&Path>,
    config: &SolverConfig,
) -> Result<CmdOutput, String> {
    let text = read_file(puzzle)?;
    let q = question.trim();
    let mark = if q.ends_with('?') { "" } else { "?" };
    let merged = format!("{text}\n{q}{mark}");
    let report = match solve(&merged, config) {
        Ok(report) => report,
        Err(SolveError::Sentence { index, text: sentence, source }) => {
            let last = frontend(&merged, config)
                .map(|f| index + 1 == f.prepared.sentences.len())
                .unwrap_or(false);
            let mut msg = format!("sentence `{sentence}`: {source}");
            if last {
                msg.push_str("\n");
                msg.push_str(QUESTION_FORMS);
            }
            return Err(msg);
        }
        Err(e) => return Err(e.to_string()),
    };
    let qa = report.answers.last().ok_or("the question was not answered")?;

    let mut lines: Vec<String> = Vec::new();
    let mut diagnostics: Vec<String> = Vec::new();
    match &qa.answer {
        Answer::YesNo { verdict, proof } => {
            lines.push(verdict.to_string());
            if let Some(path) = emit_proof {
                let proof = proof
                    .as_ref()
                    .ok_or_else(|| format!("the answer is {verdict}; there is no proof to emit"))?;
                let goal = report
                    .sentences
                    .iter()
                    .rev()
                    .find_map(|s| match &s.role {
                        Role::Question { question: Question::YesNo { goal } } => Some(goal),
                        _ => None,
                    })
                    .ok_or("the question left no goal behind")?;
                write_proof(proof, &report.theory.assumptions, goal, *verdict, path)?;
                lines.push(format!("proof written to {}", path.display()));
                diagnostics.push(format!("proof verified, {} steps", proof.clauses.len()));
            }
        }
        Answer::Who { persons: _, note: Some(note) } if note.starts_with("unknown predicate") => {
            return Err(note.clone());
        }
        other => {
            if emit_proof.is_some() {
                return Err("only yes/no questions come with proofs".to_string());
            }
            lines.push(answer_text(other));
            if let Answer::Who { note: Some(note), .. } = other {
                diagnostics.push(note.clone());
            }
        }
    }

    let value = json!({
        "verdict": match &qa.answer {
            Answer::YesNo { verdict, .. } => verdict.to_string().to_lowercase(),
            Answer::Who { .. } => "who".to_string(),
            Answer::Verdict => "assignment".to_string(),
        },
        "answer": answer_json(&qa.answer),
        "assignment": assignment_json(&report),
        "model_count": report.models.len(),
        "diagnostics": diagnostics,
    });
    Ok(CmdOutput { text: lines.join("\n"), json: value, failed: false })
}

/// Re-verifies the proof against rebuilt input clauses, then writes the
/// DOT text. Nothing is written for a proof that does not check.
fn write_proof(
    proof: &Proof,
    assumptions: &[crate::fol::Formula],
    goal: &crate::fol::Formula,
    verdict: YesNo,
    path: &Path,
) -> Result<(), String> {
    let inputs = refutation_inputs(assumptions, goal, verdict)
        .ok_or("an Unknown verdict has no refutation")?;
    check_proof(proof, &inputs).map_err(|e| format!("proof failed verification: {e}"))?;
    std::fs::write(path, proof_dot(proof))
        .map_err(|e| format!("writing {}: {e}", path.display()))
}

fn cmd_models(puzzle: &Path, config: &SolverConfig) -> Result<CmdOutput, String> {
    let text = read_file(puzzle)?;
    let report = solve(&text, config).map_err(|e| e.to_string())?;
    let mut lines = vec![format!("Models: {}", report.models.len())];
    let mut models_json: Vec<Value> = Vec::new();
    for (i, model) in report.models.iter().enumerate() {
        let atoms: Vec<String> = model
            .assignment
            .iter()
            .filter(|(_, v)| **v)
            .map(|(a, _)| a.to_string())
            .collect();
        lines.push(format!("{}. {}", i + 1, atoms.join(" ")));
        models_json.push(json!(atoms));
    }
    let value = json!({
        "verdict": theory_verdict(&report),
        "assignment": assignment_json(&report),
        "model_count": report.models.len(),
        "models": models_json,
        "diagnostics": solve_diagnostics(&report),
    });
    Ok(CmdOutput { text: lines.join("\n"), json: value, failed: false })
}

fn cmd_parse(puzzle: &Path, dump_tree: bool, config: &SolverConfig) -> Result<CmdOutput, String> {
    let text = read_file(puzzle)?;
    let front = frontend(&text, config).map_err(|e| e.to_string())?;
    let parser = ChartParser::new(&front.grammar);

    let mut lines: Vec<String> = Vec::new();
    let mut sentences_json: Vec<Value> = Vec::new();
    let mut failed = false;
    for (i, sentence) in front.prepared.sentences.iter().enumerate() {
        let starts: &[&str] = match sentence.kind {
            SentenceKind::Statement => &["S", "P"],
            SentenceKind::Question => &["QY", "QW", "QV"],
        };
        let shown = detok(&sentence.tokens.join(" "));
        let mut parsed = None;
        let mut first_error = None;
        for start in starts {
            match parser.parse_as(&sentence.tokens, start) {
                Ok(trees) => {
                    parsed = Some((*start, trees));
                    break;
                }
                Err(e) => {
                    if first_error.is_none() {
                        first_error = Some(e);
                    }
                }
            }
        }
        match parsed {
            Some((start, trees)) => {
                let plural = if trees.len() == 1 { "tree" } else { "trees" };
                lines.push(format!("{}. [{start}, {} {plural}] {shown}", i + 1, trees.len()));
                let brackets: Vec<String> = trees.iter().map(|t| t.bracketed()).collect();
                if dump_tree {
                    for b in &brackets {
                        lines.push(format!("   {b}"));
                    }
                }
                sentences_json.push(json!({
                    "text": shown,
                    "category": start,
                    "trees": brackets,
                }));
            }
            None => {
                failed = true;
                let msg = first_error.map(|e| e.to_string()).unwrap_or_default();
                lines.push(format!("{}. no parse: {shown} ({msg})", i + 1));
                sentences_json.push(json!({
                    "text": shown,
                    "category": Value::Null,
                    "error": msg,
                }));
            }
        }
    }
    let value = json!({
        "verdict": if failed { "parse-failure" } else { "parsed" },
        "sentences": sentences_json,
        "diagnostics": Vec::<String>::new(),
    });
    Ok(CmdOutput { text: lines.join("\n"), json: value, failed })
}

/// One puzzle's fate under `check`. The three failure stages mirror how
/// the pipeline can lose a puzzle: the cast is not recognized, a
/// sentence does not parse or compose, or the theory reasons to no
/// unique assignment.
enum Fate {
    Solved,
    Persons(String),
    Parsing(String),
    Reasoning(String),
}

fn classify(path: &Path, config: &SolverConfig) -> Fate {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Fate::Persons(format!("unreadable: {e}")),
    };
    match solve(&text, config) {
        Err(e @ SolveError::Text(_)) => Fate::Persons(e.to_string()),
        Err(
            e @ (SolveError::Sentence { .. } | SolveError::Grammar(_) | SolveError::Lambda(_)),
        ) => Fate::Parsing(e.to_string()),
        Err(e) => Fate::Reasoning(e.to_string()),
        Ok(report) => match report.models.len() {
            1 => Fate::Solved,
            0 => Fate::Reasoning("contradictory: no models".to_string()),
            n => Fate::Reasoning(format!("underdetermined: {n} models")),
        },
    }
}

fn cmd_check(corpus: &Path, config: &SolverConfig) -> Result<CmdOutput, String> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus)
        .map_err(|e| format!("reading {}: {e}", corpus.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "txt"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(format!("no .txt puzzles in {}", corpus.display()));
    }

    let mut solved: Vec<String> = Vec::new();
    let mut persons: Vec<(String, String)> = Vec::new();
    let mut parsing: Vec<(String, String)> = Vec::new();
    let mut reasoning: Vec<(String, String)> = Vec::new();
    for file in &files {
        let name = file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| file.display().to_string());
        match classify(file, config) {
            Fate::Solved => solved.push(name),
            Fate::Persons(msg) => persons.push((name, msg)),
            Fate::Parsing(msg) => parsing.push((name, msg)),
            Fate::Reasoning(msg) => reasoning.push((name, msg)),
        }
    }

    let total = files.len();
    let rate = 100.0 * solved.len() as f64 / total as f64;
    let mut lines = vec![format!("{total} puzzles, {} solved ({rate:.1}%)", solved.len())];
    let stage = |label: &str, bucket: &[(String, String)], lines: &mut Vec<String>| {
        lines.push(format!("{label} failures: {}", bucket.len()));
        for (name, msg) in bucket {
            lines.push(format!("  {name}: {msg}"));
        }
    };
    stage("person recognition", &persons, &mut lines);
    stage("parsing", &parsing, &mut lines);
    stage("reasoning", &reasoning, &mut lines);

    let failed = solved.len() < total;
    let names = |bucket: &[(String, String)]| -> Vec<Value> {
        bucket.iter().map(|(name, msg)| json!({ "puzzle": name, "reason": msg })).collect()
    };
    let value = json!({
        "verdict": if failed { "failures" } else { "all-solved" },
        "total": total,
        "solved": solved.len(),
        "failures": {
            "person_recognition": names(&persons),
            "parsing": names(&parsing),
            "reasoning": names(&reasoning),
        },
        "diagnostics": Vec::<String>::new(),
    });
    Ok(CmdOutput { text: lines.join("\n"), json: value, failed })
}

fn cmd_prove(
    theory: &Path,
    emit_proof: Option<&Path>,
    config: &SolverConfig,
) -> Result<CmdOutput, String> {
    let file = TheoryFile::load(theory).map_err(|e| e.to_string())?;
    if file.goals.is_empty() {
        return Err("the theory file has no goals".to_string());
    }
    let mut lines: Vec<String> = Vec::new();
    let mut goals_json: Vec<Value> = Vec::new();
    let mut failed = false;
    let mut first_proof: Option<(Proof, crate::fol::Formula)> = None;
    for (i, goal) in file.goals.iter().enumerate() {
        let inputs = refutation_inputs(&file.assumptions, goal, YesNo::Yes)
            .expect("a Yes direction always has inputs");
        let result = prove(&inputs, &config.prover);
        match result.outcome {
            Outcome::Refuted(proof) => {
                lines.push(format!(
                    "goal {}: proved ({} steps, {} iterations)",
                    i + 1,
                    proof.clauses.len(),
                    result.iterations
                ));
                goals_json.push(json!({
                    "goal": goal.to_string(),
                    "proved": true,
                    "steps": proof.clauses.len(),
                }));
                if first_proof.is_none() {
                    first_proof = Some((proof, goal.clone()));
                }
            }
            Outcome::Saturated => {
                failed = true;
                lines.push(format!("goal {}: not provable (saturated)", i + 1));
                goals_json.push(json!({ "goal": goal.to_string(), "proved": false }));
            }
            Outcome::ResourceLimit => {
                failed = true;
                lines.push(format!("goal {}: gave up (resource limit)", i + 1));
                goals_json.push(json!({ "goal": goal.to_string(), "proved": false }));
            }
        }
    }
    if let Some(path) = emit_proof {
        let (proof, goal) =
            first_proof.as_ref().ok_or("no goal was proved; there is no proof to emit")?;
        write_proof(proof, &file.assumptions, goal, YesNo::Yes, path)?;
        lines.push(format!("proof written to {}", path.display()));
    }
    let value = json!({
        "verdict": if failed { "unproved-goals" } else { "all-proved" },
        "goals": goals_json,
        "diagnostics": Vec::<String>::new(),
    });
    Ok(CmdOutput { text: lines.join("\n"), json: value, failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_flag_parses_both_values() {
        assert_eq!(domain_flag("knights-knaves"), Ok(Domain::KnightsKnaves));
        assert_eq!(domain_flag("comparatives"), Ok(Domain::Comparatives));
        assert!(domain_flag("zebra").is_err());
    }

    #[test]
    fn title_capitalizes_the_first_letter() {
        assert_eq!(title("marge"), "Marge");
        assert_eq!(title(""), "");
    }

    #[test]
    fn detok_reattaches_punctuation() {
        assert_eq!(detok("is sue a knight ?"), "is sue a knight?");
    }
}
