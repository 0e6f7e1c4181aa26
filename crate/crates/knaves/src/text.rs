//! Turns raw puzzle text into sentences a grammar can parse.
//!
//! The stages, in the order the pipeline runs them:
//!
//! 1. split into sentences and tokens, keeping punctuation as tokens;
//! 2. find the cast of persons, either by name or, for puzzles about
//!    unnamed islanders, by minting the letters `a`, `b`, `c`;
//! 3. rewrite references: quoted `I` and bare `he`/`she` become the
//!    speaker or subject, `we` becomes the whole cast, `the first one`
//!    becomes the first islander;
//! 4. classify each sentence as a statement or a question.
//!
//! Lemmatization and the synonym table live here too. They are not
//! applied to the token stream; the parser sees surface forms. They feed
//! the lexicon-extension step that lets `Sue states ...` parse once the
//! grammar knows `says` and the synonym table links `state` to `say`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TextError {
    #[error("no persons found in the puzzle text")]
    NoPersons,
    #[error("cannot resolve `{pronoun}` in sentence {sentence}: no person mentioned yet")]
    UnresolvedPronoun { pronoun: String, sentence: usize },
    #[error("synonym file line {line}: {msg}")]
    SynonymFormat { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SentenceKind {
    Statement,
    Question,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<String>,
    pub kind: SentenceKind,
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tokens.join(" "))
    }
}

/// A puzzle after text preparation: rewritten sentences plus the cast of
/// persons in first-mention order, lowercased.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreparedText {
    pub sentences: Vec<Sentence>,
    pub persons: Vec<String>,
}

/// Splits text into sentences. A sentence ends at `.`, `?` or `!` outside
/// double quotes; the terminator stays with its sentence.
pub fn split_sentences(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut in_quote = false;
    for ch in text.chars() {
        current.push(ch);
        match ch {
            '"' => in_quote = !in_quote,
            '.' | '?' | '!' if !in_quote => {
                let trimmed = current.trim();
                if !trimmed.is_empty() {
                    out.push(trimmed.to_string());
                }
                current.clear();
            }
            _ => {}
        }
    }
    let trimmed = current.trim();
    if !trimmed.is_empty() {
        out.push(trimmed.to_string());
    }
    out
}

/// Splits a sentence into tokens. Words are maximal runs of letters,
/// digits and hyphens; every punctuation mark is its own token.
pub fn tokenize(sentence: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut word = String::new();
    for ch in sentence.chars() {
        if ch.is_alphanumeric() || ch == '-' || ch == '\'' && !word.is_empty() {
            word.push(ch);
        } else {
            if !word.is_empty() {
                out.push(std::mem::take(&mut word));
            }
            if !ch.is_whitespace() {
                out.push(ch.to_string());
            }
        }
    }
    if !word.is_empty() {
        out.push(word);
    }
    out
}

/// Capitalized words that start sentences without naming anyone.
const FUNCTION_WORDS: &[&str] = &[
    "a", "an", "the", "on", "in", "at", "of", "and", "or", "not", "no", "if", "then", "is",
    "are", "am", "was", "were", "be", "he", "she", "it", "we", "they", "i", "you", "who",
    "what", "which", "does", "do", "did", "can", "could", "every", "each", "some", "there",
    "this", "that", "these", "those", "knight", "knights", "knave", "knaves", "island",
    "islander", "islanders", "inhabitant", "inhabitants", "people", "person", "two", "three",
    "four", "five", "both", "all", "one", "only", "but", "so", "as", "to", "from", "with",
    "us", "me", "him", "her", "my", "your", "our", "their", "its", "exactly", "suppose",
    "meet", "says", "say", "claims", "kind", "type", "same", "different", "truth", "lie",
    "lies", "tell", "tells", "always", "never", "live", "true", "false",
];

/// Verbs and copulas that make a sentence-initial capitalized word look
/// like a subject, hence a name.
const SUBJECT_CUES: &[&str] = &[
    "says", "say", "said", "claims", "claimed", "states", "stated", "tells", "told",
    "asserts", "declares", "is", "are", "was", "and", "answers", "replies",
];

fn is_capitalized(token: &str) -> bool {
    token.chars().next().is_some_and(|c| c.is_uppercase())
        && token.chars().all(|c| c.is_alphanumeric())
}

/// Finds the cast of named persons across the tokenized sentences, in
/// first-mention order. A capitalized word names a person when it is not
/// a function word and either sits mid-sentence, appears in the
/// gazetteer, or starts a sentence right before a subject cue such as
/// `says`. Returned names are lowercased.
pub fn recognize_persons(sentences: &[Vec<String>], gazetteer: &[String]) -> Vec<String> {
    let gaz: Vec<String> = gazetteer.iter().map(|g| g.to_lowercase()).collect();
    // First pass: sure-fire mentions.
    let mut known: Vec<String> = Vec::new();
    let note = |name: String, known: &mut Vec<String>| {
        if !known.contains(&name) {
            known.push(name);
        }
    };
    for tokens in sentences {
        for (i, tok) in tokens.iter().enumerate() {
            if !is_capitalized(tok) {
                continue;
            }
            let lower = tok.to_lowercase();
            if FUNCTION_WORDS.contains(&lower.as_str()) {
                continue;
            }
            let mid_sentence = i > 0 && !matches!(tokens[i - 1].as_str(), "\"" | ":");
            let cued = tokens
                .get(i + 1)
                .is_some_and(|next| SUBJECT_CUES.contains(&next.to_lowercase().as_str()));
            if mid_sentence || gaz.contains(&lower) || cued {
                note(lower, &mut known);
            }
        }
    }
    // Second pass: sentence-initial occurrences of already-known names
    // keep their first-mention position.
    let mut out: Vec<String> = Vec::new();
    for tokens in sentences {
        for tok in tokens {
            let lower = tok.to_lowercase();
            if is_capitalized(tok) && known.contains(&lower) && !out.contains(&lower) {
                out.push(lower);
            }
        }
    }
    out
}

const NUMBER_WORDS: &[(&str, usize)] =
    &[("one", 1), ("two", 2), ("three", 3), ("four", 4), ("five", 5)];

const PERSON_NOUNS: &[&str] = &["inhabitants", "islanders", "people", "persons", "natives"];

/// Letters minted for unnamed islanders, in order.
const ANONYMOUS_NAMES: &[&str] = &["a", "b", "c", "d", "e"];

/// For puzzles about unnamed islanders: when no names were found but some
/// sentence announces `two inhabitants` or the like, mint the letters
/// `a`, `b`, ... as the cast.
pub fn synthesize_persons(sentences: &[Vec<String>]) -> Vec<String> {
    for tokens in sentences {
        for (i, tok) in tokens.iter().enumerate() {
            let lower = tok.to_lowercase();
            if let Some(&(_, n)) = NUMBER_WORDS.iter().find(|(w, _)| *w == lower) {
                if tokens
                    .get(i + 1)
                    .is_some_and(|next| PERSON_NOUNS.contains(&next.to_lowercase().as_str()))
                {
                    return ANONYMOUS_NAMES[..n.min(ANONYMOUS_NAMES.len())]
                        .iter()
                        .map(|s| s.to_string())
                        .collect();
                }
            }
        }
    }
    Vec::new()
}

const ORDINALS: &[(&str, usize)] =
    &[("first", 0), ("second", 1), ("third", 2), ("fourth", 3), ("fifth", 4)];

/// Rewrites references in one sentence. `subject` is the first person
/// mentioned in the sentence, used for `I`, `he` and `she`; `fallback` is
/// the most recent person from earlier sentences.
fn rewrite_sentence(
    tokens: &[String],
    persons: &[String],
    fallback: Option<&str>,
    index: usize,
) -> Result<Vec<String>, TextError> {
    // `the first one says` style references resolve before pronouns so
    // the sentence gains its subject.
    let mut tokens = resolve_ordinals(tokens, persons);
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let lower = tokens[i].to_lowercase();
        match lower.as_str() {
            "i" | "he" | "she" | "me" | "him" | "her" if tokens[i].len() <= 3 => {
                // The subject: the first person mentioned before the
                // pronoun. A name that is only mentioned later cannot be
                // what the pronoun points back to.
                let subject = out
                    .iter()
                    .map(|t| t.to_lowercase())
                    .find(|t| persons.contains(t));
                let who = subject
                    .as_deref()
                    .or(fallback)
                    .ok_or_else(|| TextError::UnresolvedPronoun {
                        pronoun: tokens[i].clone(),
                        sentence: index,
                    })?;
                out.push(who.to_string());
            }
            "we" | "us" | "they" | "them" => {
                if persons.is_empty() {
                    return Err(TextError::UnresolvedPronoun {
                        pronoun: tokens[i].clone(),
                        sentence: index,
                    });
                }
                for (k, p) in persons.iter().enumerate() {
                    if k > 0 {
                        out.push("and".to_string());
                    }
                    out.push(p.clone());
                }
            }
            _ => out.push(std::mem::take(&mut tokens[i])),
        }
        i += 1;
    }
    Ok(out)
}

/// Replaces `the first (one|inhabitant|...)` with the matching person.
fn resolve_ordinals(tokens: &[String], persons: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let is_the = tokens[i].to_lowercase() == "the";
        let ord = tokens
            .get(i + 1)
            .and_then(|t| ORDINALS.iter().find(|(w, _)| *w == t.to_lowercase()));
        if let (true, Some(&(_, k))) = (is_the, ord) {
            if let Some(p) = persons.get(k) {
                out.push(p.clone());
                i += 2;
                // An optional head noun after the ordinal is swallowed.
                if tokens.get(i).is_some_and(|t| {
                    matches!(
                        t.to_lowercase().as_str(),
                        "one" | "inhabitant" | "islander" | "person" | "native"
                    )
                }) {
                    i += 1;
                }
                continue;
            }
        }
        out.push(tokens[i].clone());
        i += 1;
    }
    out
}

/// Runs the whole preparation: split, tokenize, find the cast, rewrite
/// references, classify. Sentence-final punctuation is dropped from the
/// token lists; interior punctuation stays.
pub fn prepare(text: &str, gazetteer: &[String]) -> Result<PreparedText, TextError> {
    let raw: Vec<Vec<String>> = split_sentences(text).iter().map(|s| tokenize(s)).collect();
    let mut persons = recognize_persons(&raw, gazetteer);
    if persons.is_empty() {
        persons = synthesize_persons(&raw);
    }
    if persons.is_empty() {
        return Err(TextError::NoPersons);
    }
    let mut sentences = Vec::new();
    let mut fallback: Option<String> = None;
    for (index, tokens) in raw.iter().enumerate() {
        let mut tokens = tokens.clone();
        let kind = match tokens.last().map(|s| s.as_str()) {
            Some("?") => SentenceKind::Question,
            _ => SentenceKind::Statement,
        };
        if matches!(tokens.last().map(|s| s.as_str()), Some("." | "?" | "!")) {
            tokens.pop();
        }
        let rewritten = rewrite_sentence(&tokens, &persons, fallback.as_deref(), index)?;
        if let Some(last) = rewritten
            .iter()
            .rev()
            .map(|t| t.to_lowercase())
            .find(|t| persons.contains(t))
        {
            fallback = Some(last);
        }
        sentences.push(Sentence { tokens: rewritten, kind });
    }
    Ok(PreparedText { sentences, persons })
}

/// Irregular lemmas the suffix rules would get wrong.
const LEMMA_EXCEPTIONS: &[(&str, &str)] = &[
    ("is", "be"),
    ("are", "be"),
    ("am", "be"),
    ("was", "be"),
    ("were", "be"),
    ("been", "be"),
    ("has", "have"),
    ("had", "have"),
    ("does", "do"),
    ("did", "do"),
    ("said", "say"),
    ("told", "tell"),
    ("men", "man"),
    ("women", "woman"),
    ("people", "person"),
];

/// A small rule-based lemmatizer: exception table first, then suffix
/// stripping (`-ies` to `-y`, `-es` after sibilants, plain `-s`).
pub fn lemmatize(word: &str) -> String {
    let w = word.to_lowercase();
    if let Some(&(_, lemma)) = LEMMA_EXCEPTIONS.iter().find(|(form, _)| *form == w) {
        return lemma.to_string();
    }
    if let Some(stem) = w.strip_suffix("ies") {
        if stem.len() >= 2 {
            return format!("{stem}y");
        }
    }
    for suffix in ["sses", "shes", "ches", "xes"] {
        if let Some(stem) = w.strip_suffix(suffix) {
            return format!("{stem}{}", &suffix[..suffix.len() - 2]);
        }
    }
    if let Some(stem) = w.strip_suffix('s') {
        if stem.len() >= 2 && !stem.ends_with('s') && !stem.ends_with('u') {
            return stem.to_string();
        }
    }
    w
}

/// The part of a surface form that is not shared with its lemma, used to
/// check that two words inflect the same way. `says` and `states` both
/// map to `s`, so a grammar entry for `says` can be copied for `states`.
pub fn inflection_signature(surface: &str, lemma: &str) -> String {
    let s = surface.to_lowercase();
    let l = lemma.to_lowercase();
    let shared = s
        .chars()
        .zip(l.chars())
        .take_while(|(a, b)| a == b)
        .count();
    s.chars().skip(shared).collect()
}

/// A synonym table keyed by lemma and part-of-speech tag. The file format
/// is one line per entry: lemma, a tag (`v`, `n` or `a`), then a
/// comma-separated list of synonyms. `%` starts a comment. The relation
/// is closed symmetrically on load.
#[derive(Debug, Clone, Default)]
pub struct SynonymDb {
    entries: BTreeMap<(String, String), Vec<String>>,
}

impl SynonymDb {
    pub fn parse(src: &str) -> Result<SynonymDb, TextError> {
        let mut db = SynonymDb::default();
        for (lineno, raw) in src.lines().enumerate() {
            let line = raw.split('%').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let lemma = parts.next().unwrap().to_lowercase();
            let tag = parts.next().ok_or(TextError::SynonymFormat {
                line: lineno + 1,
                msg: "expected: lemma tag syn1,syn2,...".into(),
            })?;
            if !matches!(tag, "v" | "n" | "a") {
                return Err(TextError::SynonymFormat {
                    line: lineno + 1,
                    msg: format!("unknown tag `{tag}`, expected v, n or a"),
                });
            }
            let rest: String = parts.collect::<Vec<_>>().join("");
            if rest.is_empty() {
                return Err(TextError::SynonymFormat {
                    line: lineno + 1,
                    msg: "no synonyms listed".into(),
                });
            }
            for syn in rest.split(',').filter(|s| !s.is_empty()) {
                db.link(&lemma, tag, &syn.to_lowercase());
            }
        }
        Ok(db)
    }

    pub fn load(path: &Path) -> Result<SynonymDb, TextError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| TextError::Io(format!("{}: {e}", path.display())))?;
        SynonymDb::parse(&src)
    }

    fn link(&mut self, a: &str, tag: &str, b: &str) {
        for (x, y) in [(a, b), (b, a)] {
            let syns = self.entries.entry((x.to_string(), tag.to_string())).or_default();
            if !syns.iter().any(|s| s == y) {
                syns.push(y.to_string());
            }
        }
    }

    /// The synonyms of a lemma under one part-of-speech tag.
    pub fn synonyms(&self, lemma: &str, tag: &str) -> &[String] {
        self.entries
            .get(&(lemma.to_lowercase(), tag.to_string()))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Whether two lemmas are synonyms under the tag.
    pub fn are_synonyms(&self, a: &str, b: &str, tag: &str) -> bool {
        self.synonyms(a, tag).iter().any(|s| s == &b.to_lowercase())
    }
}
