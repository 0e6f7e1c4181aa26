//! First-order logic: terms, formulas, clauses, unification, clause normal
//! form, and the theory file format.

mod clause;
mod clausify;
mod formula;
mod parse;
mod term;
mod theory;
pub mod truth;

pub use clause::{canonicalize, Clause, ClauseId, DerivedRule, HyperStep, Provenance};
pub use clausify::{clausify_formula, Clausifier};
pub use formula::Formula;
pub use parse::{is_variable_name, parse_formula, parse_formula_with, ParseError, SymbolTable};
pub use term::{unify_atoms, unify_terms, Atom, Literal, Substitution, Term};
pub use theory::{TheoryError, TheoryFile};
pub use truth::{
    clauses_satisfiable_ground, eval_clause_ground, eval_ground, pred_atoms,
    satisfiable_ground, TruthError,
};
