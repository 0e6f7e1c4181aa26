//! Growing the lexicon at run time.
//!
//! Puzzles keep naming new people, and they paraphrase: one text's
//! inhabitants *say*, another's *state* or *declare*. Person names become
//! fresh proper-noun entries; unknown content words become copies of a
//! known entry when a synonym dictionary links their lemmas, the parts of
//! speech agree, and the two surface forms inflect their lemmas the same
//! way. The copied entry keeps its own predicate name (the new lemma), so
//! the theory later needs an axiom connecting the two predicates; spotting
//! that is the text pipeline's job.

use crate::lambda::{rename_sym, LambdaTerm};

use super::{Category, FeatureStructure, FeatureValue, Grammar, ProductionRule, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Pos {
    Noun,
    Verb,
    Adjective,
}

impl Pos {
    pub fn parse(tag: &str) -> Option<Pos> {
        match tag {
            "n" | "noun" => Some(Pos::Noun),
            "v" | "verb" => Some(Pos::Verb),
            "a" | "adj" | "adjective" => Some(Pos::Adjective),
            _ => None,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Pos::Noun => "n",
            Pos::Verb => "v",
            Pos::Adjective => "a",
        }
    }
}

/// Part of speech of a lexical category, by naming convention: `V`,
/// `VSpeech` and friends are verbs, `N`/`PropN` nouns, `Adj...`
/// adjectives. Categories like `Det` or `Conj` are closed-class and get
/// no part of speech, which keeps them out of synonym substitution.
pub fn lexical_pos(category: &str) -> Option<Pos> {
    if category == "N" || category == "PropN" {
        Some(Pos::Noun)
    } else if category.starts_with("Adj") {
        Some(Pos::Adjective)
    } else if category.starts_with('V') && category != "VP" {
        Some(Pos::Verb)
    } else {
        None
    }
}

/// A pending lexicon addition: `surface` (as it occurs in the text) should
/// parse like `known_surface` already does, with predicates renamed from
/// the known lemma to the new one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub surface: String,
    pub lemma: String,
    pub known_surface: String,
    pub known_lemma: String,
    pub pos: Pos,
}

/// Copies lexical rules for each entry. Only single-terminal lexical rules
/// whose category matches the entry's part of speech are copied. Returns
/// the indices of rules added to the grammar, one per entry that matched;
/// entries with no matching rule are skipped.
pub fn extend_lexicon(grammar: &mut Grammar, entries: &[LexiconEntry]) -> Vec<usize> {
    let mut added = Vec::new();
    for entry in entries {
        let templates: Vec<ProductionRule> = grammar
            .rules
            .iter()
            .filter(|r| {
                r.rhs.len() == 1
                    && r.terminals().first().map(|t| t.eq_ignore_ascii_case(&entry.known_surface))
                        == Some(true)
                    && lexical_pos(&r.lhs.name) == Some(entry.pos)
            })
            .cloned()
            .collect();
        for template in templates {
            let mut rule = template;
            rule.rhs = vec![Symbol::Terminal(entry.surface.clone())];
            if let Some(sem) = rule.lhs.sem.take() {
                rule.lhs.sem = Some(rename_sym(&sem, &entry.known_lemma, &entry.lemma));
            }
            if grammar.rules.contains(&rule) {
                continue;
            }
            added.push(grammar.rules.len());
            grammar.add_rule(rule);
        }
    }
    added
}

/// Proper-noun entries for the persons of one puzzle. The semantic
/// constant is the lowercased name.
pub fn person_rules(names: &[String]) -> Vec<ProductionRule> {
    names
        .iter()
        .map(|name| {
            let constant = name.to_ascii_lowercase();
            let sem = LambdaTerm::lam(
                "P",
                LambdaTerm::app(LambdaTerm::var("P"), LambdaTerm::sym(constant)),
            );
            let mut features = FeatureStructure::new();
            features.set("NUM", FeatureValue::Atomic("sg".to_string()));
            ProductionRule {
                lhs: Category { name: "PropN".to_string(), features, sem: Some(sem) },
                rhs: vec![Symbol::Terminal(name.clone())],
            }
        })
        .collect()
}
