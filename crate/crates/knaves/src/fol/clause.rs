//! Clauses: implicitly universally quantified disjunctions of literals,
//! tagged with where they came from so proofs and model output can cite
//! their sources.

use std::fmt;

use super::term::{Literal, Substitution, Term};

pub type ClauseId = usize;

/// How a derived clause was produced. Literal indices refer to the parent
/// clauses' stored literal order at the time of derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivedRule {
    /// Binary resolution: `left_lit` in the first parent against the
    /// complement of `right_lit` in the second.
    Resolve { left_lit: usize, right_lit: usize },
    /// Factoring: literal `merged` was unified into literal `keep`.
    Factor { keep: usize, merged: usize },
    /// A condensed chain of resolutions of one nucleus against unit or
    /// all-positive satellites, recorded as a single composite step.
    HyperResolve { steps: Vec<HyperStep> },
}

/// One fold of a hyper-resolution: the working clause's literal `target_lit`
/// is resolved against `satellite_lit` of clause `satellite`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperStep {
    pub satellite: ClauseId,
    pub satellite_lit: usize,
    pub target_lit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Stated by the puzzle: background knowledge or a translated sentence.
    InputAxiom,
    /// Added by the synonym-detection pass, not by the puzzle text.
    Synonymy,
    /// From clausifying the negation of the conjecture.
    NegatedGoal,
    Derived { rule: DerivedRule, parents: Vec<ClauseId> },
}

impl Provenance {
    pub fn parents(&self) -> &[ClauseId] {
        match self {
            Provenance::Derived { parents, .. } => parents,
            _ => &[],
        }
    }

    /// Short label used in listings and proof graphs.
    pub fn label(&self) -> String {
        match self {
            Provenance::InputAxiom => "assumption".to_string(),
            Provenance::Synonymy => "synonymy".to_string(),
            Provenance::NegatedGoal => "clausify".to_string(),
            Provenance::Derived { rule, parents } => {
                let ids: Vec<String> = parents.iter().map(|p| p.to_string()).collect();
                match rule {
                    DerivedRule::Resolve { .. } => format!("resolve({})", ids.join(",")),
                    DerivedRule::Factor { .. } => format!("factor({})", ids.join(",")),
                    DerivedRule::HyperResolve { .. } => format!("hyper({})", ids.join(",")),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub id: ClauseId,
    pub literals: Vec<Literal>,
    pub provenance: Provenance,
}

impl Clause {
    /// Builds a clause with literals sorted deterministically and exact
    /// duplicates removed. Sorting keys ignore variable names first, so
    /// variants of the same clause line up the same way.
    pub fn new(id: ClauseId, mut literals: Vec<Literal>, provenance: Provenance) -> Clause {
        literals.sort_by(|a, b| blank_key(a).cmp(&blank_key(b)).then_with(|| a.cmp(b)));
        literals.dedup();
        Clause { id, literals, provenance }
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.literals.len() == 1
    }

    pub fn is_positive(&self) -> bool {
        self.literals.iter().all(|l| l.positive)
    }

    /// True when the clause can never constrain anything: it contains a
    /// complementary pair, or a trivially true equality `t = t`.
    pub fn is_tautology(&self) -> bool {
        for (i, l) in self.literals.iter().enumerate() {
            if l.positive {
                if let super::term::Atom::Eq(a, b) = &l.atom {
                    if a == b {
                        return true;
                    }
                }
            }
            for m in &self.literals[i + 1..] {
                if l.positive != m.positive && l.atom == m.atom {
                    return true;
                }
            }
        }
        false
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        for l in &self.literals {
            l.collect_vars(&mut out);
        }
        out
    }

    pub fn apply(&self, sub: &Substitution) -> Vec<Literal> {
        self.literals.iter().map(|l| sub.apply_literal(l)).collect()
    }

    /// Renaming into the reserved `_c` namespace, for comparisons up to
    /// variable names. Never displayed.
    pub fn canonical_literals(&self) -> Vec<Literal> {
        canonicalize(&self.literals)
    }
}

/// Sort key with every variable name erased, so ordering does not depend on
/// what the variables happen to be called.
fn blank_key(l: &Literal) -> String {
    let blanked = blank_literal(l);
    format!("{}{}", if l.positive { "+" } else { "-" }, blanked)
}

fn blank_literal(l: &Literal) -> String {
    fn blank_term(t: &Term) -> String {
        match t {
            Term::Var(_) => "_".to_string(),
            Term::Const(c) => c.clone(),
            Term::App(f, args) => {
                let inner: Vec<String> = args.iter().map(blank_term).collect();
                format!("{}({})", f, inner.join(","))
            }
        }
    }
    match &l.atom {
        super::term::Atom::Pred(p, args) => {
            let inner: Vec<String> = args.iter().map(blank_term).collect();
            format!("{}({})", p, inner.join(","))
        }
        super::term::Atom::Eq(a, b) => format!("=({},{})", blank_term(a), blank_term(b)),
    }
}

/// Renames variables to `_c0, _c1, ...` in first-occurrence order over the
/// blank-sorted literals, then resorts. Output of this is a true variant of
/// the input, so equal outputs mean alpha-equivalent clauses.
pub fn canonicalize(literals: &[Literal]) -> Vec<Literal> {
    let mut lits: Vec<Literal> = literals.to_vec();
    lits.sort_by(|a, b| blank_key(a).cmp(&blank_key(b)).then_with(|| a.cmp(b)));
    lits.dedup();
    let mut order = Vec::new();
    for l in &lits {
        l.collect_vars(&mut order);
    }
    let mut sub = Substitution::new();
    for (i, v) in order.iter().enumerate() {
        sub.bind(v.clone(), Term::var(format!("_c{i}")));
    }
    let mut out: Vec<Literal> = lits.iter().map(|l| sub.apply_literal(l)).collect();
    out.sort_by(|a, b| blank_key(a).cmp(&blank_key(b)).then_with(|| a.cmp(b)));
    out
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}
