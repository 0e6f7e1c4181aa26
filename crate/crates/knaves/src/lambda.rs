//! Lambda terms for semantic composition.
//!
//! Grammar rules pair syntax with a semantic template. Composing a parse
//! tree means instantiating each rule's template with the children's
//! semantics and beta-reducing; a sentence is understood when its term
//! reduces to something [`to_formula`] accepts.
//!
//! One AST covers both calculi: lambda abstraction and application live
//! alongside the first-order connectives and quantifiers, so a template
//! like `\x. (?v(x) <-> ?s)` can hold an unreduced application inside a
//! biconditional. Identifiers are variables when a lambda or quantifier
//! binds them, template holes when written `?n`, and symbols otherwise;
//! symbols become predicates, constants or functions by position when the
//! reduced term is lowered to a formula.

use std::fmt;

use crate::fol::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaTerm {
    /// A variable: lambda-bound, quantifier-bound, or a `?hole` awaiting
    /// template instantiation.
    Var(String),
    /// A predicate, constant or function symbol.
    Sym(String),
    Lam(String, Box<LambdaTerm>),
    App(Box<LambdaTerm>, Box<LambdaTerm>),
    Not(Box<LambdaTerm>),
    And(Box<LambdaTerm>, Box<LambdaTerm>),
    Or(Box<LambdaTerm>, Box<LambdaTerm>),
    Implies(Box<LambdaTerm>, Box<LambdaTerm>),
    Iff(Box<LambdaTerm>, Box<LambdaTerm>),
    Forall(String, Box<LambdaTerm>),
    Exists(String, Box<LambdaTerm>),
    Eq(Box<LambdaTerm>, Box<LambdaTerm>),
    /// A finished formula carried as an inert leaf.
    Wff(Formula),
    /// A finished individual term carried as an inert leaf.
    Obj(Term),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LambdaError {
    #[error("beta reduction exceeded {0} steps")]
    Budget(usize),
    #[error("unreduced lambda abstraction where a formula was expected")]
    DanglingLambda,
    #[error("unbound variable `{0}` in reduced term")]
    UnboundVar(String),
    #[error("uninstantiated template hole `{0}`")]
    Hole(String),
    #[error("expected a formula, found an individual term `{0}`")]
    TermAsFormula(String),
    #[error("expected an individual term, found `{0}`")]
    NotATerm(String),
    #[error("lambda syntax error at {0}: {1}")]
    Parse(usize, String),
}

pub const REDUCTION_BUDGET: usize = 10_000;

impl LambdaTerm {
    pub fn var(n: impl Into<String>) -> LambdaTerm {
        LambdaTerm::Var(n.into())
    }

    pub fn sym(n: impl Into<String>) -> LambdaTerm {
        LambdaTerm::Sym(n.into())
    }

    pub fn lam(v: impl Into<String>, b: LambdaTerm) -> LambdaTerm {
        LambdaTerm::Lam(v.into(), Box::new(b))
    }

    pub fn app(f: LambdaTerm, a: LambdaTerm) -> LambdaTerm {
        LambdaTerm::App(Box::new(f), Box::new(a))
    }

    /// `f(a, b, c)` as a curried application chain.
    pub fn apply_all(f: LambdaTerm, args: Vec<LambdaTerm>) -> LambdaTerm {
        args.into_iter().fold(f, LambdaTerm::app)
    }

    /// Free variables, `?holes` included, in first-occurrence order.
    /// `Wff` and `Obj` leaves are closed by construction.
    pub fn free_vars(&self) -> Vec<String> {
        fn walk(t: &LambdaTerm, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match t {
                LambdaTerm::Var(v) => {
                    if !bound.iter().any(|b| b == v) && !out.iter().any(|o| o == v) {
                        out.push(v.clone());
                    }
                }
                LambdaTerm::Sym(_) | LambdaTerm::Wff(_) | LambdaTerm::Obj(_) => {}
                LambdaTerm::Lam(v, b) | LambdaTerm::Forall(v, b) | LambdaTerm::Exists(v, b) => {
                    bound.push(v.clone());
                    walk(b, bound, out);
                    bound.pop();
                }
                LambdaTerm::Not(b) => walk(b, bound, out),
                LambdaTerm::App(l, r)
                | LambdaTerm::And(l, r)
                | LambdaTerm::Or(l, r)
                | LambdaTerm::Implies(l, r)
                | LambdaTerm::Iff(l, r)
                | LambdaTerm::Eq(l, r) => {
                    walk(l, bound, out);
                    walk(r, bound, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// The template holes (`?n`) occurring in this term.
    pub fn holes(&self) -> Vec<String> {
        self.free_vars().into_iter().filter(|v| v.starts_with('?')).collect()
    }
}

/// Replaces template holes by name. Holes are free by construction (`?` is
/// not a legal binder), so this is plain substitution; binders in the
/// template are renamed if an instantiation value would be captured.
pub fn instantiate(template: &LambdaTerm, bindings: &[(String, LambdaTerm)]) -> LambdaTerm {
    let mut t = template.clone();
    let mut fresh = FreshVars::new();
    for (hole, value) in bindings {
        t = substitute(&t, hole, value, &mut fresh);
    }
    t
}

struct FreshVars {
    next: usize,
}

impl FreshVars {
    fn new() -> FreshVars {
        FreshVars { next: 1 }
    }

    fn fresh(&mut self) -> String {
        let name = format!("_v{}", self.next);
        self.next += 1;
        name
    }
}

/// Capture-avoiding substitution of `value` for free occurrences of `var`.
fn substitute(t: &LambdaTerm, var: &str, value: &LambdaTerm, fresh: &mut FreshVars) -> LambdaTerm {
    match t {
        LambdaTerm::Var(v) if v == var => value.clone(),
        LambdaTerm::Var(_) | LambdaTerm::Sym(_) | LambdaTerm::Wff(_) | LambdaTerm::Obj(_) => {
            t.clone()
        }
        LambdaTerm::Lam(v, b) | LambdaTerm::Forall(v, b) | LambdaTerm::Exists(v, b) => {
            let rebuild = |v: String, b: LambdaTerm| match t {
                LambdaTerm::Lam(..) => LambdaTerm::Lam(v, Box::new(b)),
                LambdaTerm::Forall(..) => LambdaTerm::Forall(v, Box::new(b)),
                _ => LambdaTerm::Exists(v, Box::new(b)),
            };
            if v == var {
                return t.clone();
            }
            if value.free_vars().iter().any(|f| f == v) {
                let renamed = fresh.fresh();
                let body =
                    substitute(b, v, &LambdaTerm::Var(renamed.clone()), fresh);
                let body = substitute(&body, var, value, fresh);
                rebuild(renamed, body)
            } else {
                rebuild(v.clone(), substitute(b, var, value, fresh))
            }
        }
        LambdaTerm::Not(b) => LambdaTerm::Not(Box::new(substitute(b, var, value, fresh))),
        LambdaTerm::App(l, r) => LambdaTerm::App(
            Box::new(substitute(l, var, value, fresh)),
            Box::new(substitute(r, var, value, fresh)),
        ),
        LambdaTerm::And(l, r) => LambdaTerm::And(
            Box::new(substitute(l, var, value, fresh)),
            Box::new(substitute(r, var, value, fresh)),
        ),
        LambdaTerm::Or(l, r) => LambdaTerm::Or(
            Box::new(substitute(l, var, value, fresh)),
            Box::new(substitute(r, var, value, fresh)),
        ),
        LambdaTerm::Implies(l, r) => LambdaTerm::Implies(
            Box::new(substitute(l, var, value, fresh)),
            Box::new(substitute(r, var, value, fresh)),
        ),
        LambdaTerm::Iff(l, r) => LambdaTerm::Iff(
            Box::new(substitute(l, var, value, fresh)),
            Box::new(substitute(r, var, value, fresh)),
        ),
        LambdaTerm::Eq(l, r) => LambdaTerm::Eq(
            Box::new(substitute(l, var, value, fresh)),
            Box::new(substitute(r, var, value, fresh)),
        ),
    }
}

/// Builds the application `f(a)` without reducing it.
pub fn apply(f: LambdaTerm, a: LambdaTerm) -> LambdaTerm {
    LambdaTerm::app(f, a)
}

/// Normal-order reduction to beta normal form, with a step budget so a
/// mistyped self-application fails instead of spinning. Renamed binders
/// take fresh `_v1, _v2, ...` names, numbered per call.
pub fn beta_reduce(t: &LambdaTerm) -> Result<LambdaTerm, LambdaError> {
    let mut fresh = FreshVars::new();
    let mut current = t.clone();
    for _ in 0..REDUCTION_BUDGET {
        match step(&current, &mut fresh) {
            Some(next) => current = next,
            None => return Ok(current),
        }
    }
    Err(LambdaError::Budget(REDUCTION_BUDGET))
}

/// One leftmost-outermost reduction step, or None at normal form.
fn step(t: &LambdaTerm, fresh: &mut FreshVars) -> Option<LambdaTerm> {
    match t {
        LambdaTerm::App(f, a) => {
            if let LambdaTerm::Lam(v, b) = f.as_ref() {
                return Some(substitute(b, v, a, fresh));
            }
            if let Some(f2) = step(f, fresh) {
                return Some(LambdaTerm::app(f2, a.as_ref().clone()));
            }
            step(a, fresh).map(|a2| LambdaTerm::app(f.as_ref().clone(), a2))
        }
        LambdaTerm::Var(_) | LambdaTerm::Sym(_) | LambdaTerm::Wff(_) | LambdaTerm::Obj(_) => None,
        LambdaTerm::Lam(v, b) => {
            step(b, fresh).map(|b2| LambdaTerm::Lam(v.clone(), Box::new(b2)))
        }
        LambdaTerm::Forall(v, b) => {
            step(b, fresh).map(|b2| LambdaTerm::Forall(v.clone(), Box::new(b2)))
        }
        LambdaTerm::Exists(v, b) => {
            step(b, fresh).map(|b2| LambdaTerm::Exists(v.clone(), Box::new(b2)))
        }
        LambdaTerm::Not(b) => step(b, fresh).map(|b2| LambdaTerm::Not(Box::new(b2))),
        LambdaTerm::And(l, r) => step_pair(l, r, fresh, |a, b| LambdaTerm::And(Box::new(a), Box::new(b))),
        LambdaTerm::Or(l, r) => step_pair(l, r, fresh, |a, b| LambdaTerm::Or(Box::new(a), Box::new(b))),
        LambdaTerm::Implies(l, r) => {
            step_pair(l, r, fresh, |a, b| LambdaTerm::Implies(Box::new(a), Box::new(b)))
        }
        LambdaTerm::Iff(l, r) => step_pair(l, r, fresh, |a, b| LambdaTerm::Iff(Box::new(a), Box::new(b))),
        LambdaTerm::Eq(l, r) => step_pair(l, r, fresh, |a, b| LambdaTerm::Eq(Box::new(a), Box::new(b))),
    }
}

fn step_pair(
    l: &LambdaTerm,
    r: &LambdaTerm,
    fresh: &mut FreshVars,
    rebuild: impl Fn(LambdaTerm, LambdaTerm) -> LambdaTerm,
) -> Option<LambdaTerm> {
    if let Some(l2) = step(l, fresh) {
        return Some(rebuild(l2, r.clone()));
    }
    step(r, fresh).map(|r2| rebuild(l.clone(), r2))
}

/// Alpha-equivalence: equality up to consistent renaming of bound
/// variables.
pub fn alpha_eq(a: &LambdaTerm, b: &LambdaTerm) -> bool {
    fn walk(a: &LambdaTerm, b: &LambdaTerm, env: &mut Vec<(String, String)>) -> bool {
        match (a, b) {
            (LambdaTerm::Var(x), LambdaTerm::Var(y)) => {
                for (l, r) in env.iter().rev() {
                    if l == x || r == y {
                        return l == x && r == y;
                    }
                }
                x == y
            }
            (LambdaTerm::Sym(x), LambdaTerm::Sym(y)) => x == y,
            (LambdaTerm::Wff(x), LambdaTerm::Wff(y)) => x == y,
            (LambdaTerm::Obj(x), LambdaTerm::Obj(y)) => x == y,
            (LambdaTerm::Lam(x, ba), LambdaTerm::Lam(y, bb))
            | (LambdaTerm::Forall(x, ba), LambdaTerm::Forall(y, bb))
            | (LambdaTerm::Exists(x, ba), LambdaTerm::Exists(y, bb)) => {
                env.push((x.clone(), y.clone()));
                let ok = walk(ba, bb, env);
                env.pop();
                ok
            }
            (LambdaTerm::Not(x), LambdaTerm::Not(y)) => walk(x, y, env),
            (LambdaTerm::App(la, ra), LambdaTerm::App(lb, rb))
            | (LambdaTerm::And(la, ra), LambdaTerm::And(lb, rb))
            | (LambdaTerm::Or(la, ra), LambdaTerm::Or(lb, rb))
            | (LambdaTerm::Implies(la, ra), LambdaTerm::Implies(lb, rb))
            | (LambdaTerm::Iff(la, ra), LambdaTerm::Iff(lb, rb))
            | (LambdaTerm::Eq(la, ra), LambdaTerm::Eq(lb, rb)) => {
                walk(la, lb, env) && walk(ra, rb, env)
            }
            _ => false,
        }
    }
    walk(a, b, &mut Vec::new())
}

/// Lowers a beta-normal closed term to a first-order formula.
pub fn to_formula(t: &LambdaTerm) -> Result<Formula, LambdaError> {
    lower_formula(t, &mut Vec::new())
}

fn lower_formula(t: &LambdaTerm, quantified: &mut Vec<String>) -> Result<Formula, LambdaError> {
    match t {
        LambdaTerm::Wff(f) => Ok(f.clone()),
        LambdaTerm::Not(b) => Ok(Formula::not(lower_formula(b, quantified)?)),
        LambdaTerm::And(l, r) => Ok(Formula::and(
            lower_formula(l, quantified)?,
            lower_formula(r, quantified)?,
        )),
        LambdaTerm::Or(l, r) => Ok(Formula::or(
            lower_formula(l, quantified)?,
            lower_formula(r, quantified)?,
        )),
        LambdaTerm::Implies(l, r) => Ok(Formula::implies(
            lower_formula(l, quantified)?,
            lower_formula(r, quantified)?,
        )),
        LambdaTerm::Iff(l, r) => Ok(Formula::iff(
            lower_formula(l, quantified)?,
            lower_formula(r, quantified)?,
        )),
        LambdaTerm::Forall(v, b) => {
            quantified.push(v.clone());
            let body = lower_formula(b, quantified)?;
            quantified.pop();
            Ok(Formula::forall(v.clone(), body))
        }
        LambdaTerm::Exists(v, b) => {
            quantified.push(v.clone());
            let body = lower_formula(b, quantified)?;
            quantified.pop();
            Ok(Formula::exists(v.clone(), body))
        }
        LambdaTerm::Eq(l, r) => Ok(Formula::eq(
            lower_term(l, quantified)?,
            lower_term(r, quantified)?,
        )),
        LambdaTerm::Sym(s) => Ok(Formula::pred(s.clone(), vec![])),
        LambdaTerm::App(..) => {
            let (head, args) = split_spine(t);
            match head {
                LambdaTerm::Sym(p) => {
                    let args = args
                        .iter()
                        .map(|a| lower_term(a, quantified))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(Formula::pred(p.clone(), args))
                }
                LambdaTerm::Var(v) if v.starts_with('?') => Err(LambdaError::Hole(v.clone())),
                LambdaTerm::Var(v) => Err(LambdaError::UnboundVar(v.clone())),
                LambdaTerm::Lam(..) => Err(LambdaError::DanglingLambda),
                other => Err(LambdaError::TermAsFormula(other.to_string())),
            }
        }
        LambdaTerm::Var(v) if v.starts_with('?') => Err(LambdaError::Hole(v.clone())),
        LambdaTerm::Var(v) => Err(LambdaError::UnboundVar(v.clone())),
        LambdaTerm::Lam(..) => Err(LambdaError::DanglingLambda),
        LambdaTerm::Obj(o) => Err(LambdaError::TermAsFormula(o.to_string())),
    }
}

fn lower_term(t: &LambdaTerm, quantified: &[String]) -> Result<Term, LambdaError> {
    match t {
        LambdaTerm::Obj(o) => Ok(o.clone()),
        LambdaTerm::Sym(s) => Ok(Term::cst(s.clone())),
        LambdaTerm::Var(v) if v.starts_with('?') => Err(LambdaError::Hole(v.clone())),
        LambdaTerm::Var(v) => {
            if quantified.iter().any(|q| q == v) {
                Ok(Term::var(v.clone()))
            } else {
                Err(LambdaError::UnboundVar(v.clone()))
            }
        }
        LambdaTerm::App(..) => {
            let (head, args) = split_spine(t);
            match head {
                LambdaTerm::Sym(f) => {
                    let args = args
                        .iter()
                        .map(|a| lower_term(a, quantified))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(Term::App(f.clone(), args))
                }
                other => Err(LambdaError::NotATerm(other.to_string())),
            }
        }
        other => Err(LambdaError::NotATerm(other.to_string())),
    }
}

/// Unrolls a curried application chain into its head and argument list.
fn split_spine(t: &LambdaTerm) -> (&LambdaTerm, Vec<&LambdaTerm>) {
    let mut args = Vec::new();
    let mut cur = t;
    while let LambdaTerm::App(f, a) = cur {
        args.push(a.as_ref());
        cur = f.as_ref();
    }
    args.reverse();
    (cur, args)
}

/// Embeds a finished formula as an inert leaf.
pub fn lift(f: Formula) -> LambdaTerm {
    LambdaTerm::Wff(f)
}

/// Renames a symbol throughout a term. Symbols are not binders, so this is
/// a straight tree walk; `Wff` and `Obj` leaves stay untouched.
pub fn rename_sym(t: &LambdaTerm, old: &str, new: &str) -> LambdaTerm {
    match t {
        LambdaTerm::Sym(s) if s == old => LambdaTerm::Sym(new.to_string()),
        LambdaTerm::Sym(_) | LambdaTerm::Var(_) | LambdaTerm::Wff(_) | LambdaTerm::Obj(_) => {
            t.clone()
        }
        LambdaTerm::Lam(v, b) => LambdaTerm::Lam(v.clone(), Box::new(rename_sym(b, old, new))),
        LambdaTerm::Forall(v, b) => {
            LambdaTerm::Forall(v.clone(), Box::new(rename_sym(b, old, new)))
        }
        LambdaTerm::Exists(v, b) => {
            LambdaTerm::Exists(v.clone(), Box::new(rename_sym(b, old, new)))
        }
        LambdaTerm::Not(b) => LambdaTerm::Not(Box::new(rename_sym(b, old, new))),
        LambdaTerm::App(l, r) => LambdaTerm::App(
            Box::new(rename_sym(l, old, new)),
            Box::new(rename_sym(r, old, new)),
        ),
        LambdaTerm::And(l, r) => LambdaTerm::And(
            Box::new(rename_sym(l, old, new)),
            Box::new(rename_sym(r, old, new)),
        ),
        LambdaTerm::Or(l, r) => LambdaTerm::Or(
            Box::new(rename_sym(l, old, new)),
            Box::new(rename_sym(r, old, new)),
        ),
        LambdaTerm::Implies(l, r) => LambdaTerm::Implies(
            Box::new(rename_sym(l, old, new)),
            Box::new(rename_sym(r, old, new)),
        ),
        LambdaTerm::Iff(l, r) => LambdaTerm::Iff(
            Box::new(rename_sym(l, old, new)),
            Box::new(rename_sym(r, old, new)),
        ),
        LambdaTerm::Eq(l, r) => LambdaTerm::Eq(
            Box::new(rename_sym(l, old, new)),
            Box::new(rename_sym(r, old, new)),
        ),
    }
}

impl fmt::Display for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, f, 0)
    }
}

fn prec(t: &LambdaTerm) -> u8 {
    match t {
        LambdaTerm::Lam(..) => 0,
        LambdaTerm::Iff(..) => 1,
        LambdaTerm::Implies(..) => 2,
        LambdaTerm::Or(..) => 3,
        LambdaTerm::And(..) => 4,
        LambdaTerm::Not(..) | LambdaTerm::Forall(..) | LambdaTerm::Exists(..) => 5,
        LambdaTerm::Eq(..) => 6,
        _ => 7,
    }
}

fn fmt_prec(t: &LambdaTerm, f: &mut fmt::Formatter<'_>, outer: u8) -> fmt::Result {
    let mine = prec(t);
    let parens = mine < outer;
    if parens {
        write!(f, "(")?;
    }
    match t {
        LambdaTerm::Var(v) => write!(f, "{v}")?,
        LambdaTerm::Sym(s) => write!(f, "{s}")?,
        LambdaTerm::Wff(w) => write!(f, "[{w}]")?,
        LambdaTerm::Obj(o) => write!(f, "{o}")?,
        LambdaTerm::Lam(v, b) => {
            write!(f, "\\{v}. ")?;
            if matches!(prec(b.as_ref()), 1..=4) {
                write!(f, "(")?;
                fmt_prec(b, f, 0)?;
                write!(f, ")")?;
            } else {
                fmt_prec(b, f, 0)?;
            }
        }
        LambdaTerm::App(..) => {
            let (head, args) = split_spine(t);
            fmt_prec(head, f, 7)?;
            write!(f, "(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                fmt_prec(a, f, 0)?;
            }
            write!(f, ")")?;
        }
        LambdaTerm::Not(b) => {
            if let LambdaTerm::Eq(l, r) = b.as_ref() {
                fmt_prec(l, f, 7)?;
                write!(f, " != ")?;
                fmt_prec(r, f, 7)?;
            } else {
                write!(f, "-")?;
                fmt_prec(b, f, 7)?;
            }
        }
        LambdaTerm::And(l, r) => {
            fmt_prec(l, f, 4)?;
            write!(f, " & ")?;
            fmt_prec(r, f, 4)?;
        }
        LambdaTerm::Or(l, r) => {
            fmt_prec(l, f, 3)?;
            write!(f, " | ")?;
            fmt_prec(r, f, 3)?;
        }
        LambdaTerm::Implies(l, r) => {
            fmt_prec(l, f, 3)?;
            write!(f, " -> ")?;
            fmt_prec(r, f, 2)?;
        }
        LambdaTerm::Iff(l, r) => {
            fmt_prec(l, f, 2)?;
            write!(f, " <-> ")?;
            fmt_prec(r, f, 2)?;
        }
        LambdaTerm::Forall(v, b) => {
            write!(f, "all {v} ")?;
            fmt_quant_body(b, f)?;
        }
        LambdaTerm::Exists(v, b) => {
            write!(f, "exists {v} ")?;
            fmt_quant_body(b, f)?;
        }
        LambdaTerm::Eq(l, r) => {
            fmt_prec(l, f, 7)?;
            write!(f, " = ")?;
            fmt_prec(r, f, 7)?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

fn fmt_quant_body(body: &LambdaTerm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match body {
        LambdaTerm::Not(_)
        | LambdaTerm::Forall(..)
        | LambdaTerm::Exists(..)
        | LambdaTerm::Var(_)
        | LambdaTerm::Sym(_)
        | LambdaTerm::App(..) => fmt_prec(body, f, 5),
        _ => {
            write!(f, "(")?;
            fmt_prec(body, f, 0)?;
            write!(f, ")")
        }
    }
}

/// Parses the semantic sublanguage used in grammar files: the formula
/// syntax extended with `\v. body` abstraction, application of arbitrary
/// subterms, and `?hole` template variables.
pub fn parse_sem(text: &str) -> Result<LambdaTerm, LambdaError> {
    let mut p = SemParser { chars: text.char_indices().peekable(), text, bound: Vec::new() };
    let t = p.parse_expr(0)?;
    p.skip_ws();
    if let Some(&(i, c)) = p.chars.peek() {
        return Err(LambdaError::Parse(i, format!("trailing input `{c}`")));
    }
    Ok(t)
}

struct SemParser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
    bound: Vec<String>,
}

impl<'a> SemParser<'a> {
    fn skip_ws(&mut self) {
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_whitespace() {
                self.chars.next();
            } else {
                break;
            }
        }
    }

    fn pos(&mut self) -> usize {
        self.chars.peek().map(|&(i, _)| i).unwrap_or(self.text.len())
    }

    fn err<T>(&mut self, msg: impl Into<String>) -> Result<T, LambdaError> {
        Err(LambdaError::Parse(self.pos(), msg.into()))
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.chars.peek().map(|&(_, c)| c) == Some(want) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: char) -> Result<(), LambdaError> {
        if self.eat(want) {
            Ok(())
        } else {
            self.err(format!("expected `{want}`"))
        }
    }

    fn peek_op(&mut self, op: &str) -> bool {
        self.skip_ws();
        self.text[self.pos_now()..].starts_with(op)
    }

    fn pos_now(&mut self) -> usize {
        self.pos()
    }

    fn eat_op(&mut self, op: &str) -> bool {
        if self.peek_op(op) {
            for _ in 0..op.chars().count() {
                self.chars.next();
            }
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, LambdaError> {
        self.skip_ws();
        let mut name = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                name.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        if name.is_empty() {
            self.err("expected an identifier")
        } else {
            Ok(name)
        }
    }

    /// Precedence climbing, `min`: 0 any, 1 iff, 2 implies, 3 or, 4 and.
    fn parse_expr(&mut self, min: u8) -> Result<LambdaTerm, LambdaError> {
        let mut left = self.parse_unary()?;
        loop {
            self.skip_ws();
            if min <= 1 && self.peek_op("<->") {
                self.eat_op("<->");
                let right = self.parse_expr(1)?;
                left = LambdaTerm::Iff(Box::new(left), Box::new(right));
            } else if min <= 2 && self.peek_op("->") {
                self.eat_op("->");
                let right = self.parse_expr(2)?;
                left = LambdaTerm::Implies(Box::new(left), Box::new(right));
            } else if min <= 3 && self.peek_op("|") {
                self.eat_op("|");
                let right = self.parse_expr(4)?;
                left = LambdaTerm::Or(Box::new(left), Box::new(right));
            } else if min <= 4 && self.peek_op("&") {
                self.eat_op("&");
                let right = self.parse_expr(5)?;
                left = LambdaTerm::And(Box::new(left), Box::new(right));
            } else if self.peek_op("!=") {
                self.eat_op("!=");
                let right = self.parse_unary()?;
                left = LambdaTerm::Not(Box::new(LambdaTerm::Eq(Box::new(left), Box::new(right))));
            } else if self.peek_op("=") {
                self.eat_op("=");
                let right = self.parse_unary()?;
                left = LambdaTerm::Eq(Box::new(left), Box::new(right));
            } else {
                return Ok(left);
            }
        }
    }

    fn parse_unary(&mut self) -> Result<LambdaTerm, LambdaError> {
        self.skip_ws();
        match self.chars.peek().map(|&(_, c)| c) {
            Some('\\') => {
                self.chars.next();
                let v = self.ident()?;
                self.expect('.')?;
                self.bound.push(v.clone());
                let body = self.parse_expr(0)?;
                self.bound.pop();
                Ok(LambdaTerm::lam(v, body))
            }
            Some('-') if !self.peek_op("->") => {
                self.chars.next();
                Ok(LambdaTerm::Not(Box::new(self.parse_unary()?)))
            }
            Some('(') => {
                self.chars.next();
                let inner = self.parse_expr(0)?;
                self.expect(')')?;
                self.postfix(inner)
            }
            Some('?') => {
                self.chars.next();
                let name = self.ident()?;
                self.postfix(LambdaTerm::Var(format!("?{name}")))
            }
            Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
                let name = self.ident()?;
                match name.as_str() {
                    "all" | "exists" => {
                        let v = self.ident()?;
                        self.bound.push(v.clone());
                        let body = self.parse_unary()?;
                        self.bound.pop();
                        Ok(if name == "all" {
                            LambdaTerm::Forall(v, Box::new(body))
                        } else {
                            LambdaTerm::Exists(v, Box::new(body))
                        })
                    }
                    _ => {
                        let base = if self.bound.iter().any(|b| *b == name) {
                            LambdaTerm::Var(name)
                        } else {
                            LambdaTerm::Sym(name)
                        };
                        self.postfix(base)
                    }
                }
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }

    /// Zero or more `(arg, ...)` application suffixes.
    fn postfix(&mut self, mut base: LambdaTerm) -> Result<LambdaTerm, LambdaError> {
        loop {
            self.skip_ws();
            if self.chars.peek().map(|&(_, c)| c) != Some('(') {
                return Ok(base);
            }
            self.chars.next();
            if self.eat(')') {
                continue;
            }
            loop {
                let arg = self.parse_expr(0)?;
                base = LambdaTerm::app(base, arg);
                if self.eat(',') {
                    continue;
                }
                self.expect(')')?;
                break;
            }
        }
    }
}
