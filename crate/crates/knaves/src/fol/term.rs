//! Terms, atoms, literals and substitutions.
//!
//! A term is a variable, a constant, or a function application. Whether an
//! identifier names a variable is decided at parse time (quantifier-bound
//! names and names starting with `u`..`z` are variables); the tree keeps the
//! distinction explicit so nothing downstream has to re-derive it.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn cst(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Appends the free variables in first-occurrence order, skipping duplicates.
    pub fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.iter().any(|x| x == v) {
                    out.push(v.clone());
                }
            }
            Term::Const(_) => {}
            Term::App(_, args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(name)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => write!(f, "{c}"),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// An atomic claim: a predicate applied to terms, or an equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Pred(String, Vec<Term>),
    Eq(Term, Term),
}

impl Atom {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Atom {
        Atom::Pred(name.into(), args)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Atom::Pred(_, args) => args.iter().all(Term::is_ground),
            Atom::Eq(l, r) => l.is_ground() && r.is_ground(),
        }
    }

    pub fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Atom::Pred(_, args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
            Atom::Eq(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Pred(name, args) if args.is_empty() => write!(f, "{name}"),
            Atom::Pred(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Atom::Eq(l, r) => write!(f, "{l} = {r}"),
        }
    }
}

/// A possibly negated atom. Negative equalities print as `l != r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal { positive: true, atom }
    }

    pub fn neg(atom: Atom) -> Literal {
        Literal { positive: false, atom }
    }

    pub fn complement(&self) -> Literal {
        Literal { positive: !self.positive, atom: self.atom.clone() }
    }

    pub fn collect_vars(&self, out: &mut Vec<String>) {
        self.atom.collect_vars(out);
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.atom, self.positive) {
            (Atom::Eq(l, r), false) => write!(f, "{l} != {r}"),
            (atom, true) => write!(f, "{atom}"),
            (atom, false) => write!(f, "-{atom}"),
        }
    }
}

/// A finite map from variable names to terms, kept idempotent: no variable in
/// the domain occurs in any value, so applying twice equals applying once.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn singleton(var: impl Into<String>, term: Term) -> Substitution {
        let mut s = Substitution::new();
        s.bind(var.into(), term);
        s
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.map.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &String> {
        self.map.keys()
    }

    pub fn remove(&mut self, var: &str) -> Option<Term> {
        self.map.remove(var)
    }

    /// Adds `var := term`, first resolving `term` through the current map and
    /// then rewriting existing values, which preserves idempotency.
    ///
    /// The caller is responsible for the occurs check; binding `x := f(x)`
    /// would loop forever at application time and is rejected here by debug
    /// assertion only.
    pub fn bind(&mut self, var: impl Into<String>, term: Term) {
        let var = var.into();
        let term = self.apply_term(&term);
        if term == Term::Var(var.clone()) {
            return;
        }
        debug_assert!(!term.contains_var(&var), "occurs violation binding {var}");
        let single = Substitution { map: BTreeMap::from([(var.clone(), term.clone())]) };
        for value in self.map.values_mut() {
            *value = single.apply_term(value);
        }
        self.map.insert(var, term);
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => match self.map.get(v) {
                Some(replacement) => replacement.clone(),
                None => t.clone(),
            },
            Term::Const(_) => t.clone(),
            Term::App(name, args) => {
                Term::App(name.clone(), args.iter().map(|a| self.apply_term(a)).collect())
            }
        }
    }

    pub fn apply_atom(&self, a: &Atom) -> Atom {
        match a {
            Atom::Pred(name, args) => {
                Atom::Pred(name.clone(), args.iter().map(|t| self.apply_term(t)).collect())
            }
            Atom::Eq(l, r) => Atom::Eq(self.apply_term(l), self.apply_term(r)),
        }
    }

    pub fn apply_literal(&self, l: &Literal) -> Literal {
        Literal { positive: l.positive, atom: self.apply_atom(&l.atom) }
    }

    /// `self.compose(other)` applies like "self, then other".
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &self.map {
            let t = other.apply_term(t);
            if t != Term::Var(v.clone()) {
                out.map.insert(v.clone(), t);
            }
        }
        for (v, t) in &other.map {
            if !out.map.contains_key(v) && !self.map.contains_key(v) {
                out.map.insert(v.clone(), t.clone());
            }
        }
        out
    }
}

fn unify_into(s: &mut Substitution, a: &Term, b: &Term) -> bool {
    let a = s.apply_term(a);
    let b = s.apply_term(b);
    match (&a, &b) {
        (Term::Var(x), Term::Var(y)) if x == y => true,
        (Term::Var(x), t) | (t, Term::Var(x)) => {
            if t.contains_var(x) {
                false
            } else {
                s.bind(x.clone(), t.clone());
                true
            }
        }
        (Term::Const(c), Term::Const(d)) => c == d,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| unify_into(s, x, y))
        }
        _ => false,
    }
}

/// Most general unifier of two terms, or None if they do not unify.
/// Fails the occurs check rather than building a cyclic binding.
pub fn unify_terms(a: &Term, b: &Term) -> Option<Substitution> {
    let mut s = Substitution::new();
    unify_into(&mut s, a, b).then_some(s)
}

/// Most general unifier of two atoms. Predicates must agree on name and
/// arity; equalities unify only with equalities, left with left.
pub fn unify_atoms(a: &Atom, b: &Atom) -> Option<Substitution> {
    let mut s = Substitution::new();
    let ok = match (a, b) {
        (Atom::Pred(p, xs), Atom::Pred(q, ys)) => {
            p == q
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| unify_into(&mut s, x, y))
        }
        (Atom::Eq(l1, r1), Atom::Eq(l2, r2)) => {
            unify_into(&mut s, l1, l2) && unify_into(&mut s, r1, r2)
        }
        _ => false,
    };
    ok.then_some(s)
}
