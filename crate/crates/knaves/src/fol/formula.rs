//! First-order formulas with the usual connectives and quantifiers.

use std::fmt;

use super::term::{Atom, Substitution, Term};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(Atom::pred(name, args))
    }

    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Atom(Atom::Eq(l, r))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn forall(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(f))
    }

    pub fn exists(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(f))
    }

    /// Left-nested conjunction of a non-empty list.
    pub fn and_all(mut fs: Vec<Formula>) -> Formula {
        assert!(!fs.is_empty(), "and_all of empty list");
        let first = fs.remove(0);
        fs.into_iter().fold(first, Formula::and)
    }

    /// Left-nested disjunction of a non-empty list.
    pub fn or_all(mut fs: Vec<Formula>) -> Formula {
        assert!(!fs.is_empty(), "or_all of empty list");
        let first = fs.remove(0);
        fs.into_iter().fold(first, Formula::or)
    }

    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            Formula::Atom(a) => {
                let mut vs = Vec::new();
                a.collect_vars(&mut vs);
                for v in vs {
                    if !bound.iter().any(|b| *b == v) && !out.iter().any(|o| *o == v) {
                        out.push(v);
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_ground(&self) -> bool {
        self.free_vars().is_empty() && !self.has_quantifier()
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Not(f) => f.has_quantifier(),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => l.has_quantifier() || r.has_quantifier(),
            Formula::Forall(..) | Formula::Exists(..) => true,
        }
    }

    /// Universally closes every free variable, in first-occurrence order, so
    /// `p(x) -> q(x)` becomes `all x (p(x) -> q(x))`.
    pub fn universal_closure(self) -> Formula {
        let vars = self.free_vars();
        vars.into_iter().rev().fold(self, |f, v| Formula::forall(v, f))
    }

    /// Applies a substitution to free occurrences only, renaming bound
    /// variables (by appending primes) where a binding would otherwise
    /// capture: `substitute(all x p(x,y), {y := x})` gives `all x' p(x',x)`.
    pub fn substitute(&self, sub: &Substitution) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(sub.apply_atom(a)),
            Formula::Not(f) => Formula::not(f.substitute(sub)),
            Formula::And(l, r) => Formula::and(l.substitute(sub), r.substitute(sub)),
            Formula::Or(l, r) => Formula::or(l.substitute(sub), r.substitute(sub)),
            Formula::Implies(l, r) => Formula::implies(l.substitute(sub), r.substitute(sub)),
            Formula::Iff(l, r) => Formula::iff(l.substitute(sub), r.substitute(sub)),
            Formula::Forall(v, f) => {
                let (v, f, sub) = rename_if_captured(v, f, sub);
                Formula::Forall(v, Box::new(f.substitute(&sub)))
            }
            Formula::Exists(v, f) => {
                let (v, f, sub) = rename_if_captured(v, f, sub);
                Formula::Exists(v, Box::new(f.substitute(&sub)))
            }
        }
    }
}

/// Prepares a quantifier body for substitution: drops any binding of the
/// bound variable itself, and if a remaining binding would smuggle the bound
/// name into the body, renames the binder (appending primes) first.
fn rename_if_captured(
    bound: &str,
    body: &Formula,
    sub: &Substitution,
) -> (String, Formula, Substitution) {
    let mut sub = sub.clone();
    sub.remove(bound);
    let body_free = body.free_vars();
    let captured = body_free
        .iter()
        .any(|v| v != bound && sub.get(v).is_some_and(|t| t.contains_var(bound)));
    if !captured {
        return (bound.to_string(), body.clone(), sub);
    }
    let mut taken = all_var_names(body);
    for (v, t) in sub.iter() {
        taken.push(v.clone());
        t.collect_vars(&mut taken);
    }
    let mut fresh = format!("{bound}'");
    while taken.iter().any(|v| *v == fresh) {
        fresh.push('\'');
    }
    let renamed = body.substitute(&Substitution::singleton(bound, Term::var(fresh.clone())));
    (fresh, renamed, sub)
}

/// Every variable name occurring in the formula, bound or free.
fn all_var_names(f: &Formula) -> Vec<String> {
    fn walk(f: &Formula, out: &mut Vec<String>) {
        match f {
            Formula::Atom(a) => a.collect_vars(out),
            Formula::Not(g) => walk(g, out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                walk(l, out);
                walk(r, out);
            }
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                if !out.iter().any(|x| x == v) {
                    out.push(v.clone());
                }
                walk(g, out);
            }
        }
    }
    let mut out = Vec::new();
    walk(f, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl Formula {
    /// Binding strengths, loosest first: `<->` 1, `->` 2, `|` 3, `&` 4,
    /// `-` and quantifiers 5. `&` and `|` print associatively; `->` and
    /// `<->` associate to the right.
    fn prec(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(..) | Formula::Forall(..) | Formula::Exists(..) => 5,
            Formula::Atom(_) => 6,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, outer: u8) -> fmt::Result {
        let mine = self.prec();
        let parens = mine < outer;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Formula::Atom(a) => write!(f, "{a}")?,
            Formula::Not(inner) => {
                if let Formula::Atom(Atom::Eq(l, r)) = inner.as_ref() {
                    write!(f, "{l} != {r}")?;
                } else {
                    write!(f, "-")?;
                    inner.fmt_prec(f, 6)?;
                }
            }
            Formula::And(l, r) => {
                l.fmt_prec(f, 4)?;
                write!(f, " & ")?;
                r.fmt_prec(f, 4)?;
            }
            Formula::Or(l, r) => {
                l.fmt_prec(f, 3)?;
                write!(f, " | ")?;
                r.fmt_prec(f, 3)?;
            }
            Formula::Implies(l, r) => {
                l.fmt_prec(f, 3)?;
                write!(f, " -> ")?;
                r.fmt_prec(f, 2)?;
            }
            Formula::Iff(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, " <-> ")?;
                r.fmt_prec(f, 2)?;
            }
            Formula::Forall(v, body) => {
                write!(f, "all {v} ")?;
                fmt_quant_body(body, f)?;
            }
            Formula::Exists(v, body) => {
                write!(f, "exists {v} ")?;
                fmt_quant_body(body, f)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Quantifier bodies are parenthesized unless they are themselves atoms,
/// negations or quantifiers, so `all x (p(x) -> q(x))` round-trips.
fn fmt_quant_body(body: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match body {
        Formula::Atom(_) | Formula::Not(_) | Formula::Forall(..) | Formula::Exists(..) => {
            body.fmt_prec(f, 5)
        }
        _ => {
            write!(f, "(")?;
            body.fmt_prec(f, 0)?;
            write!(f, ")")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: &str, args: Vec<Term>) -> Formula {
        Formula::pred(n, args)
    }

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn display_precedence() {
        let f = Formula::iff(
            p("say", vec![Term::cst("marge")]),
            Formula::or(
                Formula::and(p("knight", vec![Term::cst("homer")]), p("knight", vec![Term::cst("marge")])),
                Formula::and(p("knave", vec![Term::cst("homer")]), p("knave", vec![Term::cst("marge")])),
            ),
        );
        assert_eq!(
            f.to_string(),
            "say(marge) <-> knight(homer) & knight(marge) | knave(homer) & knave(marge)"
        );
    }

    #[test]
    fn display_quantifier_body_parens() {
        let f = Formula::forall("x", Formula::implies(p("knight", vec![x()]), p("truth", vec![x()])));
        assert_eq!(f.to_string(), "all x (knight(x) -> truth(x))");
        let g = Formula::forall("x", p("person", vec![x()]));
        assert_eq!(g.to_string(), "all x person(x)");
        let h = Formula::not(Formula::and(p("a", vec![]), p("b", vec![])));
        assert_eq!(h.to_string(), "-(a & b)");
    }

    #[test]
    fn free_vars_in_first_occurrence_order() {
        let f = Formula::and(
            p("taller", vec![Term::var("y"), Term::var("x")]),
            Formula::exists("z", p("p", vec![Term::var("z"), Term::var("w")])),
        );
        assert_eq!(f.free_vars(), vec!["y", "x", "w"]);
    }

    #[test]
    fn universal_closure_orders_binders() {
        let f = p("taller", vec![Term::var("y"), Term::var("x")]).universal_closure();
        assert_eq!(f.to_string(), "all y all x taller(y,x)");
    }

    #[test]
    fn substitute_avoids_capture() {
        // all x p(x,y) with {y := x} must rename the binder, not capture.
        let f = Formula::forall("x", p("p", vec![x(), Term::var("y")]));
        let got = f.substitute(&Substitution::singleton("y", x()));
        assert_eq!(got.to_string(), "all x' p(x',x)");
    }

    #[test]
    fn substitute_skips_bound_occurrences() {
        let f = Formula::and(
            p("q", vec![x()]),
            Formula::forall("x", p("p", vec![x()])),
        );
        let got = f.substitute(&Substitution::singleton("x", Term::cst("a")));
        assert_eq!(got.to_string(), "q(a) & all x p(x)");
    }
}
