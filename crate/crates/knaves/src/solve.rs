//! The solver: from puzzle text to verdicts, models, answers and proofs.
//!
//! [`solve`] runs the whole pipeline:
//!
//! 1. prepare the text: sentences, the cast of persons, pronoun and
//!    ordinal references,
//! 2. set up the grammar for this cast, growing the lexicon through the
//!    synonym dictionary when the text uses words the grammar lacks,
//! 3. parse every sentence; statements become formulas, questions become
//!    goals, preamble sentences set the scene and add nothing,
//! 4. turn each reported statement into a biconditional between an
//!    utterance atom and the reported content, and tie every utterance
//!    atom to the speaker's knighthood,
//! 5. add the island background axioms and, when the text compares
//!    people, the ordering axioms,
//! 6. enumerate the models of the grounded theory for the verdict table,
//!    and run the resolution prover once per yes/no question.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use crate::chart::{ChartError, ChartParser};
use crate::fol::{
    parse_formula, Atom, Clause, Clausifier, Formula, Provenance, Term, TheoryFile,
};
use crate::grammar::{
    extend_lexicon, lexical_pos, parse_grammar, person_rules, Grammar, GrammarError, LexiconEntry,
    Symbol,
};
use crate::lambda::{beta_reduce, to_formula, LambdaError, LambdaTerm};
use crate::models::{
    all_models, consensus, expand_quantifiers, ground, Interpretation, ModelError,
    DEFAULT_MODEL_LIMIT,
};
use crate::prover::{prove, Outcome, Proof, ProverConfig};
use crate::text::{
    inflection_signature, lemmatize, prepare, PreparedText, SentenceKind, SynonymDb, TextError,
};

/// The grammar shipped with the crate.
pub const DEFAULT_GRAMMAR: &str = include_str!("../data/knights-knaves.fcfg");
/// The synonym dictionary shipped with the crate.
pub const DEFAULT_SYNONYMS: &str = include_str!("../data/synonyms.txt");
/// The name gazetteer shipped with the crate.
pub const DEFAULT_GAZETTEER: &str = include_str!("../data/gazetteer.txt");

/// Which background axioms to force. Left unset, the solver looks at
/// the predicates the text uses and picks for itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Always add the island axioms (knights, knaves, truth and lies).
    KnightsKnaves,
    /// Never add them; only the ordering axioms of any comparative
    /// family the text mentions.
    Comparatives,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Grammar file to use instead of the built-in one.
    pub grammar: Option<PathBuf>,
    /// Synonym dictionary to use instead of the built-in one.
    pub synonyms: Option<PathBuf>,
    /// Gazetteer to use instead of the built-in one.
    pub gazetteer: Option<PathBuf>,
    /// Force the background domain instead of detecting it.
    pub domain: Option<Domain>,
    /// Upper bound on enumerated models.
    pub max_models: usize,
    pub prover: ProverConfig,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            grammar: None,
            synonyms: None,
            gazetteer: None,
            domain: None,
            max_models: DEFAULT_MODEL_LIMIT,
            prover: ProverConfig::default(),
        }
    }
}

impl SolverConfig {
    /// Reads a `key = value` configuration file. Keys: `grammar`,
    /// `synonyms`, `gazetteer`, `domain`, `max-models`, `max-clauses`,
    /// `max-iterations`. Blank lines and `#` comments are ignored;
    /// relative paths are resolved against the file's directory.
    pub fn from_file(path: impl AsRef<Path>) -> Result<SolverConfig, SolveError> {
        let path = path.as_ref();
        let text = read(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let mut config = SolverConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(SolveError::Config {
                line: i + 1,
                msg: "expected `key = value`".to_string(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let number = |v: &str| {
                v.parse::<usize>().map_err(|_| SolveError::Config {
                    line: i + 1,
                    msg: format!("`{key}` needs a number, got `{v}`"),
                })
            };
            match key {
                "grammar" => config.grammar = Some(base.join(value)),
                "synonyms" => config.synonyms = Some(base.join(value)),
                "gazetteer" => config.gazetteer = Some(base.join(value)),
                "domain" => {
                    config.domain = Some(match value {
                        "knights-knaves" => Domain::KnightsKnaves,
                        "comparatives" => Domain::Comparatives,
                        other => {
                            return Err(SolveError::Config {
                                line: i + 1,
                                msg: format!(
                                    "`domain` is `knights-knaves` or `comparatives`, got `{other}`"
                                ),
                            })
                        }
                    })
                }
                "max-models" => config.max_models = number(value)?,
                "max-clauses" => config.prover.max_clauses = number(value)?,
                "max-iterations" => config.prover.max_iterations = number(value)?,
                other => {
                    return Err(SolveError::Config {
                        line: i + 1,
                        msg: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        Ok(config)
    }

    fn grammar_text(&self) -> Result<String, SolveError> {
        match &self.grammar {
            Some(p) => read(p),
            None => Ok(DEFAULT_GRAMMAR.to_string()),
        }
    }

    fn synonyms_text(&self) -> Result<String, SolveError> {
        match &self.synonyms {
            Some(p) => read(p),
            None => Ok(DEFAULT_SYNONYMS.to_string()),
        }
    }

    fn gazetteer_names(&self) -> Result<Vec<String>, SolveError> {
        let text = match &self.gazetteer {
            Some(p) => read(p)?,
            None => DEFAULT_GAZETTEER.to_string(),
        };
        Ok(text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect())
    }
}

fn read(path: &Path) -> Result<String, SolveError> {
    std::fs::read_to_string(path).map_err(|e| SolveError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("{0}")]
    Text(#[from] TextError),
    #[error("grammar: {0}")]
    Grammar(#[from] GrammarError),
    #[error("sentence {index} (`{text}`): {source}")]
    Sentence {
        index: usize,
        text: String,
        source: ChartError,
    },
    #[error("{0}")]
    Model(#[from] ModelError),
    #[error("{0}")]
    Lambda(#[from] LambdaError),
    #[error("reading {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
}

/// What one sentence contributed.
#[derive(Debug, Clone)]
pub enum Role {
    /// Preamble: parsed, but carries no content.
    Scene,
    /// A statement that became an axiom.
    Statement { formula: Formula },
    /// A question to answer after solving.
    Question { question: Question },
}

#[derive(Debug, Clone)]
pub enum Question {
    /// `Is Sue a knight?` and friends: a closed goal to prove or refute.
    YesNo { goal: Formula },
    /// `Who is the shortest?`: a property; the answer lists everyone who
    /// satisfies it in every model.
    Who { property: LambdaTerm },
    /// `What are Marge and Homer?`: the verdict table is the answer.
    Verdict,
}

#[derive(Debug, Clone)]
pub struct SentenceReport {
    pub text: String,
    pub role: Role,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YesNo {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for YesNo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YesNo::Yes => write!(f, "Yes"),
            YesNo::No => write!(f, "No"),
            YesNo::Unknown => write!(f, "Unknown"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Answer {
    /// The verdict and, when it is not `Unknown`, the refutation behind
    /// it. A `Yes` proof refutes the negated goal, a `No` proof refutes
    /// the goal itself.
    YesNo { verdict: YesNo, proof: Option<Proof> },
    /// Persons satisfying the asked property in every model. When the
    /// list is empty for a reason worth naming, `note` says which:
    /// models that disagree make the query ambiguous, and a property
    /// the theory never mentions cannot be queried at all.
    Who { persons: Vec<String>, note: Option<String> },
    /// Answered by the verdict table.
    Verdict,
}

#[derive(Debug, Clone)]
pub struct QuestionAnswer {
    pub question: String,
    pub answer: Answer,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    /// The cast, in order of first mention, lowercased.
    pub persons: Vec<String>,
    pub sentences: Vec<SentenceReport>,
    /// Lexicon entries added for words the grammar did not know.
    pub extensions: Vec<LexiconEntry>,
    /// Assumptions (and yes/no goals) as a loadable theory file.
    pub theory: TheoryFile,
    /// The assumptions in clause form, quantifiers intact.
    pub clauses: Vec<Clause>,
    /// Every model of the grounded theory. Empty means the puzzle is
    /// contradictory; more than one means it is underdetermined.
    pub models: Vec<Interpretation>,
    /// `knight` or `knave` per person, where every model agrees.
    pub verdicts: BTreeMap<String, Option<String>>,
    pub answers: Vec<QuestionAnswer>,
}

impl SolveReport {
    /// The settled kind of a person: `Some("knight")`, `Some("knave")`,
    /// or `None` when the puzzle leaves it open.
    pub fn verdict(&self, person: &str) -> Option<&str> {
        self.verdicts.get(&person.to_lowercase()).and_then(|v| v.as_deref())
    }

    /// True when exactly one model satisfies the theory.
    pub fn determined(&self) -> bool {
        self.models.len() == 1
    }
}

/// Predicates with fixed meanings; an utterance atom never uses one.
const RESERVED: &[&str] =
    &["knight", "knave", "same", "different", "lie", "truth", "inhabitant"];

/// A comparative adjective family: `more` relates pairs, `less` is its
/// converse, `most` and `least` name the extremes.
struct Family {
    more: &'static str,
    less: &'static str,
    most: &'static str,
    least: &'static str,
}

const FAMILIES: &[Family] = &[
    Family { more: "taller", less: "shorter", most: "tallest", least: "shortest" },
    Family { more: "older", less: "younger", most: "oldest", least: "youngest" },
];

/// The front of the pipeline: the prepared text and the grammar grown
/// for its cast and vocabulary. Tools that only parse stop here.
#[derive(Debug, Clone)]
pub struct Frontend {
    pub prepared: PreparedText,
    pub grammar: Grammar,
    pub synonyms: SynonymDb,
    /// Lexicon entries added for words the grammar did not know.
    pub extensions: Vec<LexiconEntry>,
}

pub fn frontend(text: &str, config: &SolverConfig) -> Result<Frontend, SolveError> {
    let gazetteer = config.gazetteer_names()?;
    let prepared = prepare(text, &gazetteer)?;
    let mut grammar = parse_grammar(&config.grammar_text()?)?;
    for rule in person_rules(&prepared.persons) {
        grammar.add_rule(rule);
    }
    let synonyms = SynonymDb::parse(&config.synonyms_text()?)?;
    let extensions = extend_for_unknown_words(&mut grammar, &prepared.sentences, &synonyms);
    Ok(Frontend { prepared, grammar, synonyms, extensions })
}

pub fn solve(text: &str, config: &SolverConfig) -> Result<SolveReport, SolveError> {
    let Frontend { prepared, grammar, synonyms, extensions } = frontend(text, config)?;
    let parser = ChartParser::new(&grammar);

    // Parse every sentence into its role.
    let mut sentences: Vec<SentenceReport> = Vec::new();
    for (index, sentence) in prepared.sentences.iter().enumerate() {
        let text = sentence.tokens.join(" ");
        let role = match sentence.kind {
            SentenceKind::Statement => match parser.sentence_formula(&sentence.tokens, "S") {
                Ok((_, formula)) => Role::Statement { formula },
                Err(first) => match parser.parse_as(&sentence.tokens, "P") {
                    Ok(_) => Role::Scene,
                    Err(_) => return Err(SolveError::Sentence { index, text, source: first }),
                },
            },
            SentenceKind::Question => Role::Question {
                question: parse_question(&parser, &sentence.tokens)
                    .map_err(|source| SolveError::Sentence { index, text: text.clone(), source })?,
            },
        };
        sentences.push(SentenceReport { text, role });
    }

    // Statements become axioms. A statement of the shape
    // `verb(speaker) <-> content` is an utterance: it gets an axiom
    // tying the utterance atom to the speaker's knighthood, and a fresh
    // atom name when the same speaker uses the same verb again.
    let persons = prepared.persons.clone();
    let mut axioms: Vec<(Formula, Provenance)> = Vec::new();
    let mut bridges: Vec<Formula> = Vec::new();
    let mut verb_counts: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut verbs: BTreeSet<String> = BTreeSet::new();
    for report in &mut sentences {
        if let Role::Statement { formula } = &mut report.role {
            if let Some((verb, speaker)) = utterance_parts(formula, &persons) {
                let count = verb_counts.entry((verb.clone(), speaker.clone())).or_insert(0);
                *count += 1;
                let atom_name =
                    if *count > 1 { format!("{verb}_{count}") } else { verb.clone() };
                if atom_name != verb {
                    *formula = rename_pred(formula, &verb, &atom_name);
                }
                bridges.push(Formula::iff(
                    Formula::pred("knight", vec![Term::cst(speaker.clone())]),
                    Formula::pred(atom_name, vec![Term::cst(speaker)]),
                ));
                verbs.insert(verb);
            }
            axioms.push((formula.clone(), Provenance::InputAxiom));
        }
    }
    for bridge in bridges {
        axioms.push((bridge, Provenance::InputAxiom));
    }

    // When two reporting verbs in the text are synonyms, say so.
    let verbs: Vec<String> = verbs.into_iter().collect();
    for i in 0..verbs.len() {
        for j in i + 1..verbs.len() {
            if synonyms.are_synonyms(&verbs[i], &verbs[j], "v") {
                let f = parse_formula(&format!(
                    "all x ({}(x) <-> {}(x))",
                    verbs[i], verbs[j]
                ))
                .expect("synonymy axiom parses");
                axioms.push((f, Provenance::Synonymy));
            }
        }
    }

    // Background axioms, chosen by the predicates the text used.
    let mut used: BTreeSet<String> = BTreeSet::new();
    for (f, _) in &axioms {
        collect_preds(f, &mut used);
    }
    for report in &sentences {
        if let Role::Question { question } = &report.role {
            match question {
                Question::YesNo { goal } => collect_preds(goal, &mut used),
                Question::Who { property } => {
                    if let Some(p) = persons.first() {
                        if let Ok(f) = property_instance(property, p) {
                            collect_preds(&f, &mut used);
                        }
                    }
                }
                Question::Verdict => {
                    used.insert("knight".to_string());
                }
            }
        }
    }
    for f in background(&persons, &used, config.domain) {
        axioms.push((f, Provenance::InputAxiom));
    }

    // What the finished theory actually talks about; wh-queries on
    // anything else are rejected rather than answered vacuously.
    let mut axiom_preds: BTreeSet<String> = BTreeSet::new();
    for (f, _) in &axioms {
        collect_preds(f, &mut axiom_preds);
    }

    // Models of the theory grounded over the cast.
    let mut model_clausifier = Clausifier::new();
    let mut ground_form: Vec<Clause> = Vec::new();
    for (f, prov) in &axioms {
        let expanded = expand_quantifiers(f, &persons)?;
        ground_form.extend(model_clausifier.clausify(&expanded, prov.clone()));
    }
    let ground_theory = ground(&ground_form, &persons)?;
    let models = all_models(&ground_theory, config.max_models)?;

    let mut verdicts: BTreeMap<String, Option<String>> = BTreeMap::new();
    let agreed = consensus(&models);
    for p in &persons {
        let kind = if models.is_empty() {
            None
        } else if agreed.get(&Atom::pred("knight", vec![Term::cst(p.clone())]))
            == Some(&Some(true))
        {
            Some("knight".to_string())
        } else if agreed.get(&Atom::pred("knave", vec![Term::cst(p.clone())]))
            == Some(&Some(true))
        {
            Some("knave".to_string())
        } else {
            None
        };
        verdicts.insert(p.clone(), kind);
    }

    // Answer the questions.
    let mut answers: Vec<QuestionAnswer> = Vec::new();
    for report in &sentences {
        if let Role::Question { question } = &report.role {
            let answer = match question {
                Question::YesNo { goal } => {
                    let (verdict, proof) =
                        answer_yes_no(&axioms, goal, &persons, &models, &config.prover);
                    Answer::YesNo { verdict, proof }
                }
                Question::Who { property } => {
                    let (persons, note) =
                        who_answers(property, &persons, &models, &axiom_preds);
                    Answer::Who { persons, note }
                }
                Question::Verdict => Answer::Verdict,
            };
            answers.push(QuestionAnswer { question: report.text.clone(), answer });
        }
    }

    // The clause form of the assumptions, for display and export.
    let mut report_clausifier = Clausifier::new();
    let mut clauses: Vec<Clause> = Vec::new();
    for (f, prov) in &axioms {
        clauses.extend(report_clausifier.clausify(f, prov.clone()));
    }
    let theory = TheoryFile {
        assumptions: axioms.iter().map(|(f, _)| f.clone()).collect(),
        goals: sentences
            .iter()
            .filter_map(|s| match &s.role {
                Role::Question { question: Question::YesNo { goal } } => Some(goal.clone()),
                _ => None,
            })
            .collect(),
    };

    Ok(SolveReport {
        persons,
        sentences,
        extensions,
        theory,
        clauses,
        models,
        verdicts,
        answers,
    })
}

/// The clause set a yes/no answer's proof stands on: the assumptions
/// plus the goal or its negation, depending on the verdict. Feed this
/// to `check_proof` to re-verify the proof independently. Clausifying
/// the same formulas in the same order reproduces the exact clauses the
/// prover saw, Skolem names included.
pub fn refutation_inputs(
    assumptions: &[Formula],
    goal: &Formula,
    verdict: YesNo,
) -> Option<Vec<Clause>> {
    let extra = match verdict {
        YesNo::Yes => Formula::not(goal.clone()),
        YesNo::No => goal.clone(),
        YesNo::Unknown => return None,
    };
    let mut clausifier = Clausifier::new();
    let mut clauses: Vec<Clause> = Vec::new();
    for f in assumptions {
        clauses.extend(clausifier.clausify(f, Provenance::InputAxiom));
    }
    clauses.extend(clausifier.clausify(&extra, Provenance::NegatedGoal));
    Some(clauses)
}

/// Appends `question` to the puzzle text, solves, and returns the answer
/// to that question.
pub fn ask(text: &str, question: &str, config: &SolverConfig) -> Result<QuestionAnswer, SolveError> {
    let q = question.trim();
    let mark = if q.ends_with('?') { "" } else { "?" };
    let merged = format!("{text}\n{q}{mark}");
    let mut report = solve(&merged, config)?;
    Ok(report.answers.pop().expect("the appended question is answered last"))
}

/// Questions try the yes/no shape first, then `who`, then the verdict
/// forms. The first error is the one worth reporting: it names the
/// unknown word or the position where no parse exists.
fn parse_question(parser: &ChartParser, tokens: &[String]) -> Result<Question, ChartError> {
    let first = match parser.sentence_formula(tokens, "QY") {
        Ok((_, goal)) => return Ok(Question::YesNo { goal }),
        Err(e) => e,
    };
    if let Ok(trees) = parser.parse_as(tokens, "QW") {
        for tree in &trees {
            if let Ok(sem @ LambdaTerm::Lam(..)) = parser.semantics(tree) {
                return Ok(Question::Who { property: sem });
            }
        }
    }
    if parser.parse_as(tokens, "QV").is_ok() {
        return Ok(Question::Verdict);
    }
    Err(first)
}

/// Copies lexicon entries for alphabetic tokens the grammar does not
/// know, when the synonym dictionary links their lemma to a known word
/// of the same part of speech with the same inflection.
fn extend_for_unknown_words(
    grammar: &mut Grammar,
    sentences: &[crate::text::Sentence],
    synonyms: &SynonymDb,
) -> Vec<LexiconEntry> {
    let vocabulary: BTreeSet<String> = grammar.vocabulary().into_iter().collect();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut entries: Vec<LexiconEntry> = Vec::new();
    for sentence in sentences {
        for token in &sentence.tokens {
            let lower = token.to_lowercase();
            if vocabulary.contains(&lower)
                || !lower.chars().all(|c| c.is_ascii_alphabetic())
                || !seen.insert(lower.clone())
            {
                continue;
            }
            let lemma = lemmatize(&lower);
            for rule in grammar.rules.clone() {
                if rule.rhs.len() != 1 {
                    continue;
                }
                let known_surface = match &rule.rhs[0] {
                    Symbol::Terminal(t) => t.to_lowercase(),
                    Symbol::NonTerminal(_) => continue,
                };
                let pos = match lexical_pos(&rule.lhs.name) {
                    Some(p) => p,
                    None => continue,
                };
                if rule.lhs.name == "PropN" {
                    continue;
                }
                let known_lemma = lemmatize(&known_surface);
                if !synonyms.are_synonyms(&lemma, &known_lemma, pos.tag()) {
                    continue;
                }
                if inflection_signature(&lower, &lemma)
                    != inflection_signature(&known_surface, &known_lemma)
                {
                    continue;
                }
                let entry = LexiconEntry {
                    surface: lower.clone(),
                    lemma: lemma.clone(),
                    known_surface: known_surface.clone(),
                    known_lemma,
                    pos,
                };
                if !extend_lexicon(grammar, std::slice::from_ref(&entry)).is_empty() {
                    entries.push(entry);
                }
            }
        }
    }
    entries
}

/// Recognizes `verb(speaker) <-> content`: an utterance to bridge.
fn utterance_parts(f: &Formula, persons: &[String]) -> Option<(String, String)> {
    if let Formula::Iff(l, _) = f {
        if let Formula::Atom(Atom::Pred(name, args)) = l.as_ref() {
            if args.len() == 1 && !RESERVED.contains(&name.as_str()) {
                if let Term::Const(c) = &args[0] {
                    if persons.contains(c) {
                        return Some((name.clone(), c.clone()));
                    }
                }
            }
        }
    }
    None
}

/// Renames a predicate throughout a formula.
fn rename_pred(f: &Formula, old: &str, new: &str) -> Formula {
    match f {
        Formula::Atom(Atom::Pred(name, args)) if name == old => {
            Formula::pred(new, args.clone())
        }
        Formula::Atom(_) => f.clone(),
        Formula::Not(b) => Formula::not(rename_pred(b, old, new)),
        Formula::And(l, r) => Formula::and(rename_pred(l, old, new), rename_pred(r, old, new)),
        Formula::Or(l, r) => Formula::or(rename_pred(l, old, new), rename_pred(r, old, new)),
        Formula::Implies(l, r) => {
            Formula::implies(rename_pred(l, old, new), rename_pred(r, old, new))
        }
        Formula::Iff(l, r) => Formula::iff(rename_pred(l, old, new), rename_pred(r, old, new)),
        Formula::Forall(v, b) => Formula::forall(v.clone(), rename_pred(b, old, new)),
        Formula::Exists(v, b) => Formula::exists(v.clone(), rename_pred(b, old, new)),
    }
}

fn collect_preds(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(Atom::Pred(name, _)) => {
            out.insert(name.clone());
        }
        Formula::Atom(Atom::Eq(..)) => {}
        Formula::Not(b) | Formula::Forall(_, b) | Formula::Exists(_, b) => collect_preds(b, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            collect_preds(l, out);
            collect_preds(r, out);
        }
    }
}

/// The fixed axioms, selected by the predicates the text mentions. The
/// island background comes in whenever knight-talk or an utterance shows
/// up; each comparative family comes in when one of its words does. A
/// forced domain overrides the island detection, never the families.
fn background(persons: &[String], used: &BTreeSet<String>, domain: Option<Domain>) -> Vec<Formula> {
    let mut out = Vec::new();
    let family_words: BTreeSet<&str> = FAMILIES
        .iter()
        .flat_map(|f| [f.more, f.less, f.most, f.least])
        .collect();
    // Anything that is not comparative vocabulary, an utterance atom
    // included, puts us on the island.
    let island = match domain {
        Some(Domain::KnightsKnaves) => true,
        Some(Domain::Comparatives) => false,
        None => used.iter().any(|p| !family_words.contains(p.as_str())),
    };
    if island {
        let fixed = [
            "all x (inhabitant(x) -> knight(x) | knave(x))",
            "all x (knight(x) -> -knave(x))",
            "all x (knave(x) -> -knight(x))",
            "all x (knight(x) <-> truth(x))",
            "all x (knave(x) <-> lie(x))",
            "all x all y (same(x,y) <-> knight(x) & knight(y) | knave(x) & knave(y))",
            "all x all y (different(x,y) <-> -same(x,y))",
        ];
        for s in fixed {
            out.push(parse_formula(s).expect("background axiom parses"));
        }
        for p in persons {
            out.push(Formula::pred("inhabitant", vec![Term::cst(p.clone())]));
        }
        for i in 0..persons.len() {
            for j in i + 1..persons.len() {
                out.push(Formula::not(Formula::eq(
                    Term::cst(persons[i].clone()),
                    Term::cst(persons[j].clone()),
                )));
            }
        }
    }
    for family in FAMILIES {
        let words = [family.more, family.less, family.most, family.least];
        if !words.iter().any(|w| used.contains(*w)) {
            continue;
        }
        let axioms = [
            format!(
                "all x all y all z ({m}(x,y) & {m}(y,z) -> {m}(x,z))",
                m = family.more
            ),
            format!("all x all y ({m}(x,y) -> -{m}(y,x))", m = family.more),
            format!("all x all y ({l}(x,y) <-> {m}(y,x))", l = family.less, m = family.more),
            format!("all x ({s}(x) <-> all y (x = y | {m}(x,y)))", s = family.most, m = family.more),
            format!("all x ({s}(x) <-> all y (x = y | {m}(y,x)))", s = family.least, m = family.more),
        ];
        for s in &axioms {
            out.push(parse_formula(s).expect("ordering axiom parses"));
        }
    }
    out
}

/// Answers a closed goal. The models decide the verdict: the theory is
/// universal and function-free, so truth in every model over the cast
/// coincides with entailment. The prover then certifies the settled
/// direction only; a failed direction would make it saturate, slowly.
/// `Yes` comes with a refutation of the negated goal, `No` with a
/// refutation of the goal itself.
fn answer_yes_no(
    axioms: &[(Formula, Provenance)],
    goal: &Formula,
    persons: &[String],
    models: &[Interpretation],
    config: &ProverConfig,
) -> (YesNo, Option<Proof>) {
    if models.is_empty() {
        // A contradictory theory entails everything.
        return (YesNo::Yes, refute(axioms, Formula::not(goal.clone()), config));
    }
    let truths: Vec<bool> = models.iter().map(|m| holds_in(goal, persons, m)).collect();
    if truths.iter().all(|&t| t) {
        (YesNo::Yes, refute(axioms, Formula::not(goal.clone()), config))
    } else if truths.iter().all(|&t| !t) {
        (YesNo::No, refute(axioms, goal.clone(), config))
    } else {
        (YesNo::Unknown, None)
    }
}

fn holds_in(goal: &Formula, persons: &[String], model: &Interpretation) -> bool {
    matches!(model.satisfies(goal, persons), Ok(true))
}

fn refute(
    axioms: &[(Formula, Provenance)],
    extra: Formula,
    config: &ProverConfig,
) -> Option<Proof> {
    let mut clausifier = Clausifier::new();
    let mut clauses: Vec<Clause> = Vec::new();
    for (f, prov) in axioms {
        clauses.extend(clausifier.clausify(f, prov.clone()));
    }
    clauses.extend(clausifier.clausify(&extra, Provenance::NegatedGoal));
    match prove(&clauses, config).outcome {
        Outcome::Refuted(proof) => Some(proof),
        _ => None,
    }
}

fn property_instance(property: &LambdaTerm, person: &str) -> Result<Formula, LambdaError> {
    let applied = beta_reduce(&LambdaTerm::app(
        property.clone(),
        LambdaTerm::sym(person.to_string()),
    ))?;
    to_formula(&applied)
}

/// Everyone who satisfies the property in every model, the certain
/// answers. An empty model set answers nobody: a contradictory puzzle
/// certifies nothing. A property over predicates the theory never uses
/// is an error, not an empty answer; and when nobody is certain but
/// somebody qualifies in some model, the query is ambiguous.
fn who_answers(
    property: &LambdaTerm,
    persons: &[String],
    models: &[Interpretation],
    axiom_preds: &BTreeSet<String>,
) -> (Vec<String>, Option<String>) {
    if models.is_empty() {
        return (Vec::new(), Some("the puzzle has no models".to_string()));
    }
    if let Some(p) = persons.first() {
        if let Ok(f) = property_instance(property, p) {
            let mut preds = BTreeSet::new();
            collect_preds(&f, &mut preds);
            if let Some(missing) = preds.iter().find(|q| !axiom_preds.contains(*q)) {
                return (Vec::new(), Some(format!("unknown predicate `{missing}`")));
            }
        }
    }
    let mut certain = Vec::new();
    let mut possible = false;
    for p in persons {
        let f = match property_instance(property, p) {
            Ok(f) => f,
            Err(e) => return (Vec::new(), Some(e.to_string())),
        };
        let hits = models.iter().filter(|m| holds_in(&f, persons, m)).count();
        if hits == models.len() {
            certain.push(p.clone());
        } else if hits > 0 {
            possible = true;
        }
    }
    if certain.is_empty() && possible {
        return (certain, Some("ambiguous: the models disagree".to_string()));
    }
    (certain, None)
}
