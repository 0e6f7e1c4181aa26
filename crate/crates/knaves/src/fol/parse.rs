//! Text syntax for formulas.
//!
//! The surface syntax follows the input language of the classic resolution
//! provers: `-` negation, `&`, `|`, `->`, `<->`, `= `/`!=`, quantifiers
//! `all x`, `exists y`, and `%` line comments. `->` and `<->` associate to
//! the right, `&` binds tighter than `|`, and a quantifier takes the
//! shortest body, so `all x (p(x) -> q(x))` needs its parentheses.
//!
//! An identifier is a variable when an enclosing quantifier binds it or its
//! first letter is in `u`..`z`; anything else is a constant, function or
//! predicate symbol depending on position. Arities must stay consistent
//! within one parse session.

use std::collections::BTreeMap;
use std::fmt;

use super::formula::Formula;
use super::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn at(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line, col, msg: msg.into() }
    }
}

/// True for identifiers the parser reads as variables when unbound.
pub fn is_variable_name(name: &str) -> bool {
    matches!(name.chars().next(), Some('u'..='z'))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokKind {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Minus,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    Equal,
    NotEqual,
    Eof,
}

impl fmt::Display for TokKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokKind::Ident(s) => write!(f, "`{s}`"),
            TokKind::LParen => write!(f, "`(`"),
            TokKind::RParen => write!(f, "`)`"),
            TokKind::Comma => write!(f, "`,`"),
            TokKind::Dot => write!(f, "`.`"),
            TokKind::Minus => write!(f, "`-`"),
            TokKind::Amp => write!(f, "`&`"),
            TokKind::Pipe => write!(f, "`|`"),
            TokKind::Arrow => write!(f, "`->`"),
            TokKind::DArrow => write!(f, "`<->`"),
            TokKind::Equal => write!(f, "`=`"),
            TokKind::NotEqual => write!(f, "`!=`"),
            TokKind::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokKind,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                advance(&mut chars);
            }
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    advance(&mut chars);
                }
            }
            '(' | ')' | ',' | '.' | '&' | '|' => {
                advance(&mut chars);
                let kind = match c {
                    '(' => TokKind::LParen,
                    ')' => TokKind::RParen,
                    ',' => TokKind::Comma,
                    '.' => TokKind::Dot,
                    '&' => TokKind::Amp,
                    _ => TokKind::Pipe,
                };
                toks.push(Token { kind, line: tl, col: tc });
            }
            '-' => {
                advance(&mut chars);
                if chars.peek() == Some(&'>') {
                    advance(&mut chars);
                    toks.push(Token { kind: TokKind::Arrow, line: tl, col: tc });
                } else {
                    toks.push(Token { kind: TokKind::Minus, line: tl, col: tc });
                }
            }
            '<' => {
                advance(&mut chars);
                if chars.peek() == Some(&'-') {
                    advance(&mut chars);
                    if chars.peek() == Some(&'>') {
                        advance(&mut chars);
                        toks.push(Token { kind: TokKind::DArrow, line: tl, col: tc });
                        continue;
                    }
                }
                return Err(ParseError::at(tl, tc, "expected `<->`"));
            }
            '=' => {
                advance(&mut chars);
                toks.push(Token { kind: TokKind::Equal, line: tl, col: tc });
            }
            '!' => {
                advance(&mut chars);
                if chars.peek() == Some(&'=') {
                    advance(&mut chars);
                    toks.push(Token { kind: TokKind::NotEqual, line: tl, col: tc });
                } else {
                    return Err(ParseError::at(tl, tc, "expected `!=`"));
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        name.push(advance(&mut chars));
                    } else {
                        break;
                    }
                }
                toks.push(Token { kind: TokKind::Ident(name), line: tl, col: tc });
            }
            other => {
                return Err(ParseError::at(tl, tc, format!("unexpected character `{other}`")));
            }
        }
    }
    toks.push(Token { kind: TokKind::Eof, line, col });
    Ok(toks)
}

/// Symbol arities seen so far in a session. Predicate and function symbols
/// live in separate namespaces but one name may not appear in both.
#[derive(Debug, Clone, Default)]
pub struct SymbolTable {
    preds: BTreeMap<String, usize>,
    funcs: BTreeMap<String, usize>,
}

impl SymbolTable {
    pub fn new() -> SymbolTable {
        SymbolTable::default()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&String, &usize)> {
        self.preds.iter()
    }

    fn note_pred(&mut self, name: &str, arity: usize, line: usize, col: usize) -> Result<(), ParseError> {
        if self.funcs.contains_key(name) {
            return Err(ParseError::at(
                line,
                col,
                format!("`{name}` already used as a function or constant"),
            ));
        }
        match self.preds.get(name) {
            Some(&a) if a != arity => Err(ParseError::at(
                line,
                col,
                format!("predicate `{name}` used with arity {arity}, previously {a}"),
            )),
            _ => {
                self.preds.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    fn note_func(&mut self, name: &str, arity: usize, line: usize, col: usize) -> Result<(), ParseError> {
        if self.preds.contains_key(name) {
            return Err(ParseError::at(
                line,
                col,
                format!("`{name}` already used as a predicate"),
            ));
        }
        match self.funcs.get(name) {
            Some(&a) if a != arity => Err(ParseError::at(
                line,
                col,
                format!("symbol `{name}` used with arity {arity}, previously {a}"),
            )),
            _ => {
                self.funcs.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }
}

pub(crate) struct FormulaParser<'a> {
    toks: &'a [Token],
    pos: usize,
    symbols: &'a mut SymbolTable,
    bound: Vec<String>,
}

impl<'a> FormulaParser<'a> {
    pub(crate) fn new(toks: &'a [Token], symbols: &'a mut SymbolTable) -> FormulaParser<'a> {
        FormulaParser { toks, pos: 0, symbols, bound: Vec::new() }
    }

    pub(crate) fn position(&self) -> usize {
        self.pos
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos.min(self.toks.len() - 1)].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: TokKind) -> Result<Token, ParseError> {
        let t = self.bump();
        if t.kind == kind {
            Ok(t)
        } else {
            Err(ParseError::at(t.line, t.col, format!("expected {kind}, found {}", t.kind)))
        }
    }

    fn err_here(&self, msg: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError::at(t.line, t.col, msg)
    }

    /// Parses one formula followed by its `.` terminator.
    pub(crate) fn parse_terminated(&mut self) -> Result<Formula, ParseError> {
        let f = self.parse_iff()?;
        self.expect(TokKind::Dot)?;
        Ok(f)
    }

    /// Parses one formula; a trailing `.` is allowed but not required.
    pub(crate) fn parse_single(&mut self) -> Result<Formula, ParseError> {
        let f = self.parse_iff()?;
        if self.peek().kind == TokKind::Dot {
            self.bump();
        }
        if self.peek().kind != TokKind::Eof {
            return Err(self.err_here(format!("trailing input {}", self.peek().kind)));
        }
        Ok(f)
    }

    fn parse_iff(&mut self) -> Result<Formula, ParseError> {
        let left = self.parse_implies()?;
        if self.peek().kind == TokKind::DArrow {
            self.bump();
            let right = self.parse_iff()?;
            Ok(Formula::iff(left, right))
        } else {
            Ok(left)
        }
    }

    fn parse_implies(&mut self) -> Result<Formula, ParseError> {
        let left = self.parse_or()?;
        if self.peek().kind == TokKind::Arrow {
            self.bump();
            let right = self.parse_implies()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn parse_or(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.parse_and()?;
        while self.peek().kind == TokKind::Pipe {
            self.bump();
            let r = self.parse_and()?;
            f = Formula::or(f, r);
        }
        Ok(f)
    }

    fn parse_and(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.parse_unary()?;
        while self.peek().kind == TokKind::Amp {
            self.bump();
            let r = self.parse_unary()?;
            f = Formula::and(f, r);
        }
        Ok(f)
    }

    fn parse_unary(&mut self) -> Result<Formula, ParseError> {
        match &self.peek().kind {
            TokKind::Minus => {
                self.bump();
                Ok(Formula::not(self.parse_unary()?))
            }
            TokKind::LParen => {
                self.bump();
                let f = self.parse_iff()?;
                self.expect(TokKind::RParen)?;
                Ok(f)
            }
            TokKind::Ident(name) if name == "all" || name == "exists" => {
                let universal = name == "all";
                self.bump();
                let t = self.bump();
                let var = match t.kind {
                    TokKind::Ident(v) => v,
                    other => {
                        return Err(ParseError::at(
                            t.line,
                            t.col,
                            format!("expected a variable after quantifier, found {other}"),
                        ))
                    }
                };
                self.bound.push(var.clone());
                let body = self.parse_unary()?;
                self.bound.pop();
                Ok(if universal {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                })
            }
            TokKind::Ident(_) => self.parse_atom(),
            other => Err(self.err_here(format!("expected a formula, found {other}"))),
        }
    }

    /// A predicate application, or an equality between two terms.
    fn parse_atom(&mut self) -> Result<Formula, ParseError> {
        let t = self.bump();
        let (name, line, col) = match t.kind {
            TokKind::Ident(n) => (n, t.line, t.col),
            other => return Err(ParseError::at(t.line, t.col, format!("expected a symbol, found {other}"))),
        };
        let args = if self.peek().kind == TokKind::LParen {
            Some(self.parse_args()?)
        } else {
            None
        };
        match self.peek().kind {
            TokKind::Equal | TokKind::NotEqual => {
                let negated = self.bump().kind == TokKind::NotEqual;
                let left = self.finish_term(name, args, line, col)?;
                let right = self.parse_term()?;
                let eq = Formula::eq(left, right);
                Ok(if negated { Formula::not(eq) } else { eq })
            }
            _ => {
                if self.is_var(&name) {
                    return Err(ParseError::at(
                        line,
                        col,
                        format!("variable `{name}` cannot be used as a predicate"),
                    ));
                }
                let args = args.unwrap_or_default();
                self.symbols.note_pred(&name, args.len(), line, col)?;
                Ok(Formula::pred(name, args))
            }
        }
    }

    fn parse_args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(TokKind::LParen)?;
        let mut args = Vec::new();
        if self.peek().kind != TokKind::RParen {
            loop {
                args.push(self.parse_term()?);
                if self.peek().kind == TokKind::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(TokKind::RParen)?;
        Ok(args)
    }

    fn parse_term(&mut self) -> Result<Term, ParseError> {
        let t = self.bump();
        let (name, line, col) = match t.kind {
            TokKind::Ident(n) => (n, t.line, t.col),
            other => return Err(ParseError::at(t.line, t.col, format!("expected a term, found {other}"))),
        };
        let args = if self.peek().kind == TokKind::LParen {
            Some(self.parse_args()?)
        } else {
            None
        };
        self.finish_term(name, args, line, col)
    }

    fn finish_term(
        &mut self,
        name: String,
        args: Option<Vec<Term>>,
        line: usize,
        col: usize,
    ) -> Result<Term, ParseError> {
        match args {
            Some(args) => {
                if self.is_var(&name) {
                    return Err(ParseError::at(
                        line,
                        col,
                        format!("variable `{name}` cannot be applied to arguments"),
                    ));
                }
                self.symbols.note_func(&name, args.len(), line, col)?;
                Ok(Term::App(name, args))
            }
            None => {
                if self.is_var(&name) {
                    Ok(Term::Var(name))
                } else {
                    self.symbols.note_func(&name, 0, line, col)?;
                    Ok(Term::Const(name))
                }
            }
        }
    }

    fn is_var(&self, name: &str) -> bool {
        self.bound.iter().any(|b| b == name) || is_variable_name(name)
    }
}

/// Parses a single formula with a fresh symbol table.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut table = SymbolTable::new();
    parse_formula_with(text, &mut table)
}

/// Parses a single formula, checking arities against an existing table.
pub fn parse_formula_with(text: &str, symbols: &mut SymbolTable) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    FormulaParser::new(&toks, symbols).parse_single()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_preamble_axiom() {
        let f = parse_formula("all x (inhabitant(x) -> knave(x) | knight(x)).").unwrap();
        assert_eq!(f.to_string(), "all x (inhabitant(x) -> knave(x) | knight(x))");
    }

    #[test]
    fn parses_utterance_biconditional() {
        let f = parse_formula(
            "say(marge) <-> (knight(homer) & knight(marge)) | (knave(homer) & knave(marge))",
        )
        .unwrap();
        assert_eq!(
            f.to_string(),
            "say(marge) <-> knight(homer) & knight(marge) | knave(homer) & knave(marge)"
        );
    }

    #[test]
    fn precedence_and_over_or_over_implies() {
        let f = parse_formula("a & b | c -> d").unwrap();
        assert_eq!(
            f,
            Formula::implies(
                Formula::or(
                    Formula::and(Formula::pred("a", vec![]), Formula::pred("b", vec![])),
                    Formula::pred("c", vec![]),
                ),
                Formula::pred("d", vec![]),
            )
        );
    }

    #[test]
    fn implies_right_associative() {
        let f = parse_formula("a -> b -> c").unwrap();
        assert_eq!(f.to_string(), "a -> b -> c");
        assert_eq!(
            f,
            Formula::implies(
                Formula::pred("a", vec![]),
                Formula::implies(Formula::pred("b", vec![]), Formula::pred("c", vec![])),
            )
        );
    }

    #[test]
    fn variables_by_letter_and_binding() {
        let f = parse_formula("all carl (p(carl, x, a))").unwrap();
        assert_eq!(
            f,
            Formula::forall(
                "carl",
                Formula::pred("p", vec![Term::var("carl"), Term::var("x"), Term::cst("a")]),
            )
        );
    }

    #[test]
    fn inequality_sugar() {
        let f = parse_formula("homer != marge").unwrap();
        assert_eq!(f, Formula::not(Formula::eq(Term::cst("homer"), Term::cst("marge"))));
    }

    #[test]
    fn comments_are_skipped() {
        let f = parse_formula("p(a) % trailing note\n & q(b)").unwrap();
        assert_eq!(f.to_string(), "p(a) & q(b)");
    }

    #[test]
    fn arity_clash_is_reported_with_position() {
        let err = parse_formula("p(a) & p(a,b)").unwrap_err();
        assert_eq!((err.line, err.col), (1, 8));
        assert!(err.msg.contains("arity"));
    }

    #[test]
    fn pred_func_namespace_clash() {
        let err = parse_formula("p(a) & q(p(a))").unwrap_err();
        assert!(err.msg.contains("already used as a predicate"));
    }

    #[test]
    fn unclosed_paren() {
        let err = parse_formula("p(a").unwrap_err();
        assert!(err.msg.contains("expected"));
    }

    #[test]
    fn variable_in_predicate_position_rejected() {
        let err = parse_formula("all x x").unwrap_err();
        assert!(err.msg.contains("cannot be used as a predicate"));
    }

    #[test]
    fn roundtrip_examples() {
        for text in [
            "all x (knight(x) -> truth(x))",
            "exists x exists y (married(x,y) & (looking(x) | looking(y)))",
            "say(marge) <-> knight(homer) & knight(marge) | knave(homer) & knave(marge)",
            "a != b",
            "-(a & b) | -(-c)",
            "all x (same(x,x))",
            "p -> q -> r",
            "p <-> q <-> r",
        ] {
            let f = parse_formula(text).unwrap();
            let printed = f.to_string();
            let again = parse_formula(&printed).unwrap();
            assert_eq!(f, again, "round-trip failed for {text}");
        }
    }
}
