//! Solves knights-and-knaves puzzles stated in English.
//!
//! On the island of knights and knaves every inhabitant is one or the
//! other: knights always tell the truth, knaves always lie. A puzzle gives
//! you a handful of islanders, quotes what they say, and asks who is what.
//! This crate takes such a puzzle as plain text and answers it with a
//! model of the island and, on request, a resolution proof:
//!
//! ```
//! use knaves::solve::{solve, SolverConfig};
//!
//! let text = "On the island live two inhabitants, Marge and Homer. \
//!             Marge says: \"We are both knights\". \
//!             Homer claims Marge and he are of the same kind. \
//!             What are Marge and Homer?";
//! let report = solve(text, &SolverConfig::default()).unwrap();
//! assert_eq!(report.verdict("marge"), Some("knight"));
//! assert_eq!(report.verdict("homer"), Some("knight"));
//! ```
//!
//! The pipeline behind that call, module by module:
//!
//! * [`text`] splits the puzzle into sentences, finds the cast of persons,
//!   resolves pronouns, and lemmatizes the words.
//! * [`grammar`] and [`chart`] parse each sentence with a feature grammar
//!   whose rules carry lambda-term semantics.
//! * [`lambda`] reduces those semantic terms to closed first-order
//!   formulas, the representation defined in [`fol`].
//! * [`models`] grounds the resulting theory over the island's inhabitants
//!   and enumerates its models; [`prover`] answers yes/no questions by
//!   resolution refutation and records checkable proofs.
//! * [`solve`] glues the stages together and [`cli`] exposes them as the
//!   `knaves` command-line tool.
//!
//! The book under `book/` walks through the same pipeline chapter by
//! chapter; its code blocks are compiled as doctests by the `guide` crate.

pub mod fol;

pub mod chart;
pub mod cli;
pub mod grammar;
pub mod lambda;
pub mod models;
pub mod prover;
pub mod solve;
pub mod text;
