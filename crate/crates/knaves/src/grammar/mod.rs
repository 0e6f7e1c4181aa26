//! Feature grammars: context-free productions whose categories carry flat
//! feature structures (for agreement) and lambda-term semantics (for
//! meaning).
//!
//! A category like `V[NUM=sg, SEM=<\x. knight(x)>]` has a name, a feature
//! list, and an optional semantic annotation. Feature values are atoms
//! (`sg`) or variables (`?n`) scoped to one rule application; parsing
//! unifies them, which is how `Marge are the tallest` fails while `Maria is
//! the tallest` parses. The `SEM` feature is special: it is never unified,
//! only carried, and composed bottom-up once a parse tree stands.

mod fcfg;
mod lexicon;

pub use fcfg::{parse_grammar, print_grammar, GrammarError};
pub use lexicon::{extend_lexicon, lexical_pos, person_rules, LexiconEntry, Pos};

use std::collections::BTreeMap;
use std::fmt;

use crate::lambda::LambdaTerm;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum FeatureValue {
    Atomic(String),
    Var(String),
}

impl fmt::Display for FeatureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureValue::Atomic(a) => write!(f, "{a}"),
            FeatureValue::Var(v) => write!(f, "?{v}"),
        }
    }
}

/// A flat feature list. Absent features are unconstrained.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct FeatureStructure {
    feats: BTreeMap<String, FeatureValue>,
}

impl FeatureStructure {
    pub fn new() -> FeatureStructure {
        FeatureStructure::default()
    }

    pub fn set(&mut self, name: impl Into<String>, value: FeatureValue) {
        self.feats.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<&FeatureValue> {
        self.feats.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &FeatureValue)> {
        self.feats.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.feats.is_empty()
    }

    /// Applies bindings, leaving unresolved variables in place.
    pub fn resolve(&self, bindings: &Bindings) -> FeatureStructure {
        let mut out = FeatureStructure::new();
        for (k, v) in &self.feats {
            out.set(k.clone(), bindings.resolve(v));
        }
        out
    }

    /// Renames every feature variable with a prefix, keeping distinct
    /// scopes distinct when one item's features flow into another's.
    pub fn rename_vars(&self, prefix: &str) -> FeatureStructure {
        let mut out = FeatureStructure::new();
        for (k, v) in &self.feats {
            let v = match v {
                FeatureValue::Var(n) => FeatureValue::Var(format!("{prefix}{n}")),
                atomic => atomic.clone(),
            };
            out.set(k.clone(), v);
        }
        out
    }
}

/// A grammar symbol occurrence: category name, features, and the semantic
/// annotation. On a rule's left side `sem` holds the composition template;
/// on the right side it names the variable that will receive a child's
/// semantics.
#[derive(Debug, Clone, PartialEq)]
pub struct Category {
    pub name: String,
    pub features: FeatureStructure,
    pub sem: Option<LambdaTerm>,
}

impl Category {
    pub fn new(name: impl Into<String>) -> Category {
        Category { name: name.into(), features: FeatureStructure::new(), sem: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    NonTerminal(Category),
    Terminal(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductionRule {
    pub lhs: Category,
    pub rhs: Vec<Symbol>,
}

impl ProductionRule {
    /// A lexical rule rewrites to terminals only.
    pub fn is_lexical(&self) -> bool {
        self.rhs.iter().all(|s| matches!(s, Symbol::Terminal(_)))
    }

    pub fn terminals(&self) -> Vec<&str> {
        self.rhs
            .iter()
            .filter_map(|s| match s {
                Symbol::Terminal(t) => Some(t.as_str()),
                Symbol::NonTerminal(_) => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grammar {
    pub start: String,
    pub rules: Vec<ProductionRule>,
}

impl Grammar {
    /// Rule indices whose left side has the given category name.
    pub fn rules_for<'a>(
        &'a self,
        name: &'a str,
    ) -> impl Iterator<Item = (usize, &'a ProductionRule)> + 'a {
        self.rules.iter().enumerate().filter(move |(_, r)| r.lhs.name == name)
    }

    pub fn add_rule(&mut self, rule: ProductionRule) {
        self.rules.push(rule);
    }

    /// Every terminal the grammar can consume, sorted and deduplicated,
    /// compared case-insensitively like the parser does.
    pub fn vocabulary(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .rules
            .iter()
            .flat_map(|r| r.terminals().into_iter().map(|t| t.to_ascii_lowercase()))
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Variable bindings accumulated while matching one rule application.
/// Values may be atoms or further variables; `resolve` chases the chain.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Bindings {
    map: BTreeMap<String, FeatureValue>,
}

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    pub fn resolve(&self, v: &FeatureValue) -> FeatureValue {
        let mut cur = v.clone();
        let mut hops = 0;
        while let FeatureValue::Var(name) = &cur {
            match self.map.get(name) {
                Some(next) => cur = next.clone(),
                None => break,
            }
            hops += 1;
            debug_assert!(hops < 1000, "binding cycle");
        }
        cur
    }

    fn bind(&mut self, var: String, value: FeatureValue) {
        if FeatureValue::Var(var.clone()) != value {
            self.map.insert(var, value);
        }
    }

    /// Unifies two feature values under the current bindings.
    pub fn unify_values(&mut self, a: &FeatureValue, b: &FeatureValue) -> bool {
        let ra = self.resolve(a);
        let rb = self.resolve(b);
        match (ra, rb) {
            (FeatureValue::Atomic(x), FeatureValue::Atomic(y)) => x == y,
            (FeatureValue::Var(v), other) | (other, FeatureValue::Var(v)) => {
                self.bind(v, other);
                true
            }
        }
    }
}

/// Unifies the features of a rule slot with those of a candidate
/// constituent, extending `bindings` on success. Only features present on
/// both sides constrain the match; the category names must already agree.
pub fn unify_features(
    slot: &FeatureStructure,
    found: &FeatureStructure,
    bindings: &Bindings,
) -> Option<Bindings> {
    let mut out = bindings.clone();
    for (name, slot_val) in slot.iter() {
        if let Some(found_val) = found.get(name) {
            if !out.unify_values(slot_val, found_val) {
                return None;
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atomic(s: &str) -> FeatureValue {
        FeatureValue::Atomic(s.to_string())
    }

    fn var(s: &str) -> FeatureValue {
        FeatureValue::Var(s.to_string())
    }

    fn feats(pairs: &[(&str, FeatureValue)]) -> FeatureStructure {
        let mut f = FeatureStructure::new();
        for (k, v) in pairs {
            f.set(*k, v.clone());
        }
        f
    }

    #[test]
    fn atoms_unify_only_with_themselves() {
        let mut b = Bindings::new();
        assert!(b.unify_values(&atomic("sg"), &atomic("sg")));
        assert!(!b.unify_values(&atomic("sg"), &atomic("pl")));
    }

    #[test]
    fn variable_binds_and_propagates() {
        let slot = feats(&[("NUM", var("n"))]);
        let np = feats(&[("NUM", atomic("sg"))]);
        let b = unify_features(&slot, &np, &Bindings::new()).unwrap();
        // The same ?n now forces sg elsewhere in the rule.
        let vp_slot = feats(&[("NUM", var("n"))]);
        let vp_pl = feats(&[("NUM", atomic("pl"))]);
        assert!(unify_features(&vp_slot, &vp_pl, &b).is_none());
        let vp_sg = feats(&[("NUM", atomic("sg"))]);
        assert!(unify_features(&vp_slot, &vp_sg, &b).is_some());
    }

    #[test]
    fn absent_features_do_not_constrain() {
        let slot = feats(&[("NUM", atomic("sg"))]);
        let bare = FeatureStructure::new();
        assert!(unify_features(&slot, &bare, &Bindings::new()).is_some());
    }

    #[test]
    fn var_var_unification_links_scopes() {
        let mut b = Bindings::new();
        assert!(b.unify_values(&var("n"), &var("m")));
        assert!(b.unify_values(&var("m"), &atomic("pl")));
        assert_eq!(b.resolve(&var("n")), atomic("pl"));
    }
}
