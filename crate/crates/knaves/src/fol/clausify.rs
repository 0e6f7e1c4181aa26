//! Conversion to clause normal form.
//!
//! The pipeline is the textbook one, in a fixed order so output is
//! reproducible: close free variables universally, expand `<->` and `->`,
//! rectify binders, push negations to literals, pull quantifiers out
//! front, replace existentials by Skolem terms over the universals to
//! their left, drop the universal prefix, and distribute `|` over `&`.
//! Expansion comes before rectification because `<->` duplicates its
//! sides, binders and all. Skolem symbols are numbered `sk1, sk2, ...` in
//! order of first use within a session, so clausifying a whole theory
//! through one `Clausifier` never reuses a name.

use super::clause::{Clause, ClauseId, Provenance};
use super::formula::Formula;
use super::term::{Literal, Substitution, Term};

#[derive(Debug, Clone)]
pub struct Clausifier {
    next_clause: ClauseId,
    next_skolem: usize,
}

impl Default for Clausifier {
    fn default() -> Self {
        Clausifier::new()
    }
}

impl Clausifier {
    pub fn new() -> Clausifier {
        Clausifier { next_clause: 1, next_skolem: 1 }
    }

    pub fn next_clause_id(&self) -> ClauseId {
        self.next_clause
    }

    /// Clausifies one formula; every produced clause carries `provenance`
    /// and a fresh id. The result is equisatisfiable with the input.
    pub fn clausify(&mut self, f: &Formula, provenance: Provenance) -> Vec<Clause> {
        let closed = f.clone().universal_closure();
        let expanded = expand_connectives(&closed);
        let rectified = rectify(&expanded);
        let negation_normal = nnf(&rectified, true);
        let (prefix, matrix) = prenex(&negation_normal);
        let matrix = self.skolemize(&prefix, matrix);
        let mut seen: Vec<Vec<Literal>> = Vec::new();
        let mut out = Vec::new();
        for lits in cnf(&matrix) {
            let clause = Clause::new(self.next_clause, lits, provenance.clone());
            if clause.is_tautology() {
                continue;
            }
            let canon = clause.canonical_literals();
            if seen.iter().any(|s| *s == canon) {
                continue;
            }
            seen.push(canon);
            self.next_clause += 1;
            out.push(clause);
        }
        out
    }

    fn skolemize(&mut self, prefix: &[(Quant, String)], matrix: Formula) -> Formula {
        let mut universals: Vec<Term> = Vec::new();
        let mut sub = Substitution::new();
        for (q, v) in prefix {
            match q {
                Quant::All => universals.push(Term::var(v.clone())),
                Quant::Exists => {
                    let name = format!("sk{}", self.next_skolem);
                    self.next_skolem += 1;
                    let replacement = if universals.is_empty() {
                        Term::cst(name)
                    } else {
                        Term::App(name, universals.clone())
                    };
                    sub.bind(v.clone(), replacement);
                }
            }
        }
        matrix.substitute(&sub)
    }
}

/// Convenience for a one-off formula in its own session.
pub fn clausify_formula(f: &Formula) -> Vec<Clause> {
    Clausifier::new().clausify(f, Provenance::InputAxiom)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quant {
    All,
    Exists,
}

/// Renames binders so that no two quantifiers bind the same name and no
/// binder shadows a free variable. Renamed binders get the smallest unused
/// `name{n}` suffix; the choice depends only on the formula.
fn rectify(f: &Formula) -> Formula {
    fn fresh(base: &str, taken: &mut Vec<String>) -> String {
        if !taken.iter().any(|t| t == base) {
            taken.push(base.to_string());
            return base.to_string();
        }
        let mut n = 1;
        loop {
            let cand = format!("{base}{n}");
            if !taken.iter().any(|t| *t == cand) {
                taken.push(cand.clone());
                return cand;
            }
            n += 1;
        }
    }

    fn walk(f: &Formula, renames: &Substitution, taken: &mut Vec<String>) -> Formula {
        match f {
            Formula::Atom(a) => Formula::Atom(renames.apply_atom(a)),
            Formula::Not(g) => Formula::not(walk(g, renames, taken)),
            Formula::And(l, r) => Formula::and(walk(l, renames, taken), walk(r, renames, taken)),
            Formula::Or(l, r) => Formula::or(walk(l, renames, taken), walk(r, renames, taken)),
            Formula::Implies(l, r) => {
                Formula::implies(walk(l, renames, taken), walk(r, renames, taken))
            }
            Formula::Iff(l, r) => Formula::iff(walk(l, renames, taken), walk(r, renames, taken)),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let new_name = fresh(v, taken);
                let mut renames = renames.clone();
                renames.remove(v);
                if new_name != *v {
                    renames.bind(v.clone(), Term::var(new_name.clone()));
                }
                let body = walk(body, &renames, taken);
                match f {
                    Formula::Forall(..) => Formula::forall(new_name, body),
                    _ => Formula::exists(new_name, body),
                }
            }
        }
    }

    let mut taken = f.free_vars();
    walk(f, &Substitution::new(), &mut taken)
}

/// Rewrites `->` and `<->` into `&`, `|`, `-`.
fn expand_connectives(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(expand_connectives(g)),
        Formula::And(l, r) => Formula::and(expand_connectives(l), expand_connectives(r)),
        Formula::Or(l, r) => Formula::or(expand_connectives(l), expand_connectives(r)),
        Formula::Implies(l, r) => {
            Formula::or(Formula::not(expand_connectives(l)), expand_connectives(r))
        }
        Formula::Iff(l, r) => {
            let l = expand_connectives(l);
            let r = expand_connectives(r);
            Formula::and(
                Formula::or(Formula::not(l.clone()), r.clone()),
                Formula::or(Formula::not(r), l),
            )
        }
        Formula::Forall(v, b) => Formula::forall(v.clone(), expand_connectives(b)),
        Formula::Exists(v, b) => Formula::exists(v.clone(), expand_connectives(b)),
    }
}

/// Negation normal form of an implication-free formula. `positive` tracks
/// the parity of enclosing negations.
fn nnf(f: &Formula, positive: bool) -> Formula {
    match (f, positive) {
        (Formula::Atom(_), true) => f.clone(),
        (Formula::Atom(_), false) => Formula::not(f.clone()),
        (Formula::Not(g), _) => nnf(g, !positive),
        (Formula::And(l, r), true) => Formula::and(nnf(l, true), nnf(r, true)),
        (Formula::And(l, r), false) => Formula::or(nnf(l, false), nnf(r, false)),
        (Formula::Or(l, r), true) => Formula::or(nnf(l, true), nnf(r, true)),
        (Formula::Or(l, r), false) => Formula::and(nnf(l, false), nnf(r, false)),
        (Formula::Forall(v, b), true) => Formula::forall(v.clone(), nnf(b, true)),
        (Formula::Forall(v, b), false) => Formula::exists(v.clone(), nnf(b, false)),
        (Formula::Exists(v, b), true) => Formula::exists(v.clone(), nnf(b, true)),
        (Formula::Exists(v, b), false) => Formula::forall(v.clone(), nnf(b, false)),
        (Formula::Implies(..) | Formula::Iff(..), _) => {
            unreachable!("nnf runs after connective expansion")
        }
    }
}

/// Pulls the quantifier prefix out of a rectified NNF formula, left subtree
/// first.
fn prenex(f: &Formula) -> (Vec<(Quant, String)>, Formula) {
    match f {
        Formula::Atom(_) | Formula::Not(_) => (Vec::new(), f.clone()),
        Formula::And(l, r) => {
            let (mut p, ml) = prenex(l);
            let (pr, mr) = prenex(r);
            p.extend(pr);
            (p, Formula::and(ml, mr))
        }
        Formula::Or(l, r) => {
            let (mut p, ml) = prenex(l);
            let (pr, mr) = prenex(r);
            p.extend(pr);
            (p, Formula::or(ml, mr))
        }
        Formula::Forall(v, b) => {
            let (mut p, m) = prenex(b);
            p.insert(0, (Quant::All, v.clone()));
            (p, m)
        }
        Formula::Exists(v, b) => {
            let (mut p, m) = prenex(b);
            p.insert(0, (Quant::Exists, v.clone()));
            (p, m)
        }
        Formula::Implies(..) | Formula::Iff(..) => {
            unreachable!("prenex runs after connective expansion")
        }
    }
}

/// Distributes `|` over `&` in a quantifier-free NNF matrix, returning the
/// clauses as literal lists in derivation order.
fn cnf(f: &Formula) -> Vec<Vec<Literal>> {
    match f {
        Formula::Atom(a) => vec![vec![Literal::pos(a.clone())]],
        Formula::Not(g) => match g.as_ref() {
            Formula::Atom(a) => vec![vec![Literal::neg(a.clone())]],
            _ => unreachable!("matrix is in negation normal form"),
        },
        Formula::And(l, r) => {
            let mut out = cnf(l);
            out.extend(cnf(r));
            out
        }
        Formula::Or(l, r) => {
            let left = cnf(l);
            let right = cnf(r);
            let mut out = Vec::new();
            for cl in &left {
                for cr in &right {
                    let mut merged = cl.clone();
                    merged.extend(cr.iter().cloned());
                    out.push(merged);
                }
            }
            out
        }
        _ => unreachable!("matrix is quantifier-free"),
    }
}
