//! Theory files: assumptions and goals in labelled lists.
//!
//! ```text
//! % friends of marge
//! formulas(assumptions).
//!   exists x exists y (married(x,y) & (looking(x) | looking(y))).
//! end_of_list.
//!
//! formulas(goals).
//!   exists x (looking(x) & married(x,y)).
//! end_of_list.
//! ```
//!
//! Sections may repeat and may be empty; all formulas in one file share a
//! symbol table, so an arity clash anywhere in the file is an error.

use std::io;
use std::path::Path;

use super::formula::Formula;
use super::parse::{self, FormulaParser, ParseError, SymbolTable, TokKind, Token};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TheoryFile {
    pub assumptions: Vec<Formula>,
    pub goals: Vec<Formula>,
}

#[derive(Debug, thiserror::Error)]
pub enum TheoryError {
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

impl TheoryFile {
    pub fn parse(text: &str) -> Result<TheoryFile, ParseError> {
        let toks = parse::tokenize(text)?;
        let mut symbols = SymbolTable::new();
        let mut pos = 0usize;
        let mut out = TheoryFile::default();
        loop {
            match &toks[pos].kind {
                TokKind::Eof => return Ok(out),
                TokKind::Ident(k) if k == "formulas" => {
                    let (name, after) = parse_header(&toks, pos)?;
                    pos = after;
                    let bucket: &mut Vec<Formula> = match name.as_str() {
                        "assumptions" => &mut out.assumptions,
                        "goals" => &mut out.goals,
                        other => {
                            let t = &toks[pos];
                            return Err(ParseError {
                                line: t.line,
                                col: t.col,
                                msg: format!(
                                    "unknown list `{other}` (expected assumptions or goals)"
                                ),
                            });
                        }
                    };
                    loop {
                        match &toks[pos].kind {
                            TokKind::Ident(k) if k == "end_of_list" => {
                                pos += 1;
                                expect_dot(&toks, &mut pos)?;
                                break;
                            }
                            TokKind::Eof => {
                                let t = &toks[pos];
                                return Err(ParseError {
                                    line: t.line,
                                    col: t.col,
                                    msg: "missing end_of_list".to_string(),
                                });
                            }
                            _ => {
                                let mut fp = FormulaParser::new(&toks[pos..], &mut symbols);
                                bucket.push(fp.parse_terminated()?);
                                pos += fp.position();
                            }
                        }
                    }
                }
                _ => {
                    let t = &toks[pos];
                    return Err(ParseError {
                        line: t.line,
                        col: t.col,
                        msg: format!("expected `formulas(...)` section, found {}", t.kind),
                    });
                }
            }
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<TheoryFile, TheoryError> {
        let text = std::fs::read_to_string(path)?;
        Ok(TheoryFile::parse(&text)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("formulas(assumptions).\n");
        for f in &self.assumptions {
            out.push_str(&format!("  {f}.\n"));
        }
        out.push_str("end_of_list.\n");
        if !self.goals.is_empty() {
            out.push_str("\nformulas(goals).\n");
            for f in &self.goals {
                out.push_str(&format!("  {f}.\n"));
            }
            out.push_str("end_of_list.\n");
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> io::Result<()> {
        std::fs::write(path, self.to_text())
    }
}

fn parse_header(toks: &[Token], mut pos: usize) -> Result<(String, usize), ParseError> {
    pos += 1; // formulas
    if toks[pos].kind != TokKind::LParen {
        let t = &toks[pos];
        return Err(ParseError { line: t.line, col: t.col, msg: "expected `(`".to_string() });
    }
    pos += 1;
    let name = match &toks[pos].kind {
        TokKind::Ident(n) => n.clone(),
        _ => {
            let t = &toks[pos];
            return Err(ParseError { line: t.line, col: t.col, msg: "expected a list name".to_string() });
        }
    };
    pos += 1;
    if toks[pos].kind != TokKind::RParen {
        let t = &toks[pos];
        return Err(ParseError { line: t.line, col: t.col, msg: "expected `)`".to_string() });
    }
    pos += 1;
    expect_dot(toks, &mut pos)?;
    Ok((name, pos))
}

fn expect_dot(toks: &[Token], pos: &mut usize) -> Result<(), ParseError> {
    if toks[*pos].kind != TokKind::Dot {
        let t = &toks[*pos];
        return Err(ParseError { line: t.line, col: t.col, msg: "expected `.`".to_string() });
    }
    *pos += 1;
    Ok(())
}
