//! Truth-table evaluation of ground formulas.
//!
//! This is deliberately independent of both the clausifier and the model
//! finder: it walks the formula tree directly, so it can serve as an oracle
//! for testing them. Equalities are decided by the unique-names convention
//! (two ground terms are equal exactly when they are the same term).

use std::collections::BTreeSet;

use super::clause::Clause;
use super::formula::Formula;
use super::term::{Atom, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TruthError {
    #[error("formula is not ground: contains a quantifier")]
    Quantifier,
    #[error("formula is not ground: free variable `{0}`")]
    FreeVariable(String),
    #[error("too many distinct atoms for truth-table evaluation: {0}")]
    TooManyAtoms(usize),
}

fn check_ground_term(t: &Term) -> Result<(), TruthError> {
    match t {
        Term::Var(v) => Err(TruthError::FreeVariable(v.clone())),
        Term::Const(_) => Ok(()),
        Term::App(_, args) => args.iter().try_for_each(check_ground_term),
    }
}

/// Distinct predicate atoms in first-occurrence order. Equalities are not
/// collected; they evaluate on their own.
pub fn pred_atoms(f: &Formula) -> Vec<Atom> {
    fn walk(f: &Formula, out: &mut Vec<Atom>) {
        match f {
            Formula::Atom(a) => {
                if matches!(a, Atom::Pred(..)) && !out.contains(a) {
                    out.push(a.clone());
                }
            }
            Formula::Not(g) => walk(g, out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                walk(l, out);
                walk(r, out);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => walk(b, out),
        }
    }
    let mut out = Vec::new();
    walk(f, &mut out);
    out
}

/// Evaluates a ground formula against the set of true predicate atoms.
pub fn eval_ground(f: &Formula, tru: &BTreeSet<Atom>) -> Result<bool, TruthError> {
    match f {
        Formula::Atom(a) => match a {
            Atom::Pred(_, args) => {
                args.iter().try_for_each(check_ground_term)?;
                Ok(tru.contains(a))
            }
            Atom::Eq(l, r) => {
                check_ground_term(l)?;
                check_ground_term(r)?;
                Ok(l == r)
            }
        },
        Formula::Not(g) => Ok(!eval_ground(g, tru)?),
        Formula::And(l, r) => Ok(eval_ground(l, tru)? && eval_ground(r, tru)?),
        Formula::Or(l, r) => Ok(eval_ground(l, tru)? || eval_ground(r, tru)?),
        Formula::Implies(l, r) => Ok(!eval_ground(l, tru)? || eval_ground(r, tru)?),
        Formula::Iff(l, r) => Ok(eval_ground(l, tru)? == eval_ground(r, tru)?),
        Formula::Forall(..) | Formula::Exists(..) => Err(TruthError::Quantifier),
    }
}

/// Evaluates a ground clause (true when any literal holds).
pub fn eval_clause_ground(c: &Clause, tru: &BTreeSet<Atom>) -> Result<bool, TruthError> {
    for lit in &c.literals {
        let holds = match &lit.atom {
            Atom::Pred(_, args) => {
                args.iter().try_for_each(check_ground_term)?;
                tru.contains(&lit.atom)
            }
            Atom::Eq(l, r) => {
                check_ground_term(l)?;
                check_ground_term(r)?;
                l == r
            }
        };
        if holds == lit.positive {
            return Ok(true);
        }
    }
    Ok(false)
}

const MAX_TABLE_ATOMS: usize = 24;

fn assignments(atoms: &[Atom]) -> impl Iterator<Item = BTreeSet<Atom>> + '_ {
    (0u32..(1u32 << atoms.len())).map(move |mask| {
        atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect()
    })
}

/// Whether a ground formula has a satisfying assignment, by full enumeration.
pub fn satisfiable_ground(f: &Formula) -> Result<bool, TruthError> {
    let atoms = pred_atoms(f);
    if atoms.len() > MAX_TABLE_ATOMS {
        return Err(TruthError::TooManyAtoms(atoms.len()));
    }
    for tru in assignments(&atoms) {
        if eval_ground(f, &tru)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether a set of ground clauses has a satisfying assignment.
pub fn clauses_satisfiable_ground(clauses: &[Clause]) -> Result<bool, TruthError> {
    let mut atoms: Vec<Atom> = Vec::new();
    for c in clauses {
        for l in &c.literals {
            if matches!(l.atom, Atom::Pred(..)) && !atoms.contains(&l.atom) {
                atoms.push(l.atom.clone());
            }
        }
    }
    if atoms.len() > MAX_TABLE_ATOMS {
        return Err(TruthError::TooManyAtoms(atoms.len()));
    }
    'outer: for tru in assignments(&atoms) {
        for c in clauses {
            if !eval_clause_ground(c, &tru)? {
                continue 'outer;
            }
        }
        return Ok(true);
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::clausify::clausify_formula;
    use crate::fol::parse::parse_formula;

    #[test]
    fn evaluates_connectives() {
        let f = parse_formula("(p(a) -> q(a)) & (q(a) <-> r(a))").unwrap();
        let mut tru = BTreeSet::new();
        assert!(eval_ground(&f, &tru).unwrap());
        tru.insert(Atom::pred("p", vec![Term::cst("a")]));
        assert!(!eval_ground(&f, &tru).unwrap());
        tru.insert(Atom::pred("q", vec![Term::cst("a")]));
        tru.insert(Atom::pred("r", vec![Term::cst("a")]));
        assert!(eval_ground(&f, &tru).unwrap());
    }

    #[test]
    fn equality_by_unique_names() {
        let t = parse_formula("a = a").unwrap();
        let f = parse_formula("a = b").unwrap();
        let empty = BTreeSet::new();
        assert!(eval_ground(&t, &empty).unwrap());
        assert!(!eval_ground(&f, &empty).unwrap());
    }

    #[test]
    fn rejects_non_ground() {
        let f = parse_formula("p(x)").unwrap();
        assert_eq!(
            eval_ground(&f, &BTreeSet::new()),
            Err(TruthError::FreeVariable("x".to_string()))
        );
        let g = parse_formula("all x p(x)").unwrap();
        assert_eq!(eval_ground(&g, &BTreeSet::new()), Err(TruthError::Quantifier));
    }

    #[test]
    fn satisfiability_matches_clausifier_on_fixed_cases() {
        for (text, expect) in [
            ("p(a) & -p(a)", false),
            ("p(a) | -p(a)", true),
            ("(p(a) <-> q(a)) & p(a) & -q(a)", false),
            ("(p(a) -> q(a)) & p(a) & q(a)", true),
            ("(m(a) <-> knave(a) & knave(b)) & m(a) & -knave(b)", false),
        ] {
            let f = parse_formula(text).unwrap();
            assert_eq!(satisfiable_ground(&f).unwrap(), expect, "oracle on {text}");
            let clauses = clausify_formula(&f);
            assert_eq!(
                clauses_satisfiable_ground(&clauses).unwrap(),
                expect,
                "clausified {text}"
            );
        }
    }
}
