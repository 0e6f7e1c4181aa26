//! The grammar file format.
//!
//! ```text
//! # agreement demo
//! % start S
//!
//! S[SEM=<?np(?vp)>] -> NP[NUM=?n, SEM=?np] VP[NUM=?n, SEM=?vp]
//! NP[NUM=sg, SEM=<\P. P(maria)>] -> 'Maria'
//! VP[NUM=?n, SEM=?v] -> V[NUM=?n, SEM=?v]
//! V[NUM=sg, SEM=<\x. smart(x)>] -> 'is' 'smart'
//! ```
//!
//! One rule per line; `#` starts a comment, `% start NAME` names the start
//! category, `'word'` quotes a terminal, and `A -> B | C` abbreviates two
//! rules. A continuation line beginning with `|` extends the previous
//! rule's alternation list. `SEM=<...>` values hold lambda syntax; inside
//! the angle brackets `->` and `<->` are connectives, not delimiters.

use crate::lambda::{parse_sem, LambdaTerm};

use super::{Category, FeatureValue, Grammar, ProductionRule, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct GrammarError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, GrammarError> {
    Err(GrammarError { line, msg: msg.into() })
}

pub fn parse_grammar(text: &str) -> Result<Grammar, GrammarError> {
    let mut start: Option<String> = None;
    let mut rules: Vec<ProductionRule> = Vec::new();
    // Logical lines: a line starting with `|` (after indent) continues the
    // previous rule's alternation.
    let mut logical: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('%') {
            let rest = rest.trim();
            if let Some(name) = rest.strip_prefix("start") {
                let name = name.trim();
                if name.is_empty() {
                    return err(lineno, "missing start category name");
                }
                start = Some(name.to_string());
            } else {
                return err(lineno, format!("unknown directive `%{rest}`"));
            }
            continue;
        }
        if trimmed.starts_with('|') {
            match logical.last_mut() {
                Some((_, prev)) => {
                    prev.push(' ');
                    prev.push_str(trimmed);
                }
                None => return err(lineno, "continuation `|` with no rule before it"),
            }
            continue;
        }
        logical.push((lineno, trimmed.to_string()));
    }

    for (lineno, line) in logical {
        let (lhs_text, rhs_text) = match split_arrow(&line) {
            Some(parts) => parts,
            None => return err(lineno, "expected `->` between left and right sides"),
        };
        let lhs = parse_category(lhs_text.trim(), lineno)?;
        for alt in split_top_level(&rhs_text, '|') {
            let symbols = parse_rhs(alt.trim(), lineno)?;
            if symbols.is_empty() {
                return err(lineno, "empty right-hand side");
            }
            let rule = ProductionRule { lhs: lhs.clone(), rhs: symbols };
            validate_rule(&rule, lineno)?;
            rules.push(rule);
        }
    }

    if rules.is_empty() {
        return err(0, "grammar has no rules");
    }
    let start = match start {
        Some(s) => s,
        None => rules[0].lhs.name.clone(),
    };
    if !rules.iter().any(|r| r.lhs.name == start) {
        return err(0, format!("start category `{start}` has no rules"));
    }
    Ok(Grammar { start, rules })
}

/// Strips a `#` comment, ignoring `#` inside quoted terminals.
fn strip_comment(line: &str) -> &str {
    let mut in_quote = false;
    for (i, c) in line.char_indices() {
        match c {
            '\'' => in_quote = !in_quote,
            '#' if !in_quote => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Splits on the rule arrow `->`, which is never inside `[...]` because
/// SEM values hide their arrows behind `<` and `-`.
fn split_arrow(line: &str) -> Option<(String, String)> {
    let mut depth = 0i32;
    let bytes = line.as_bytes();
    let mut i = 0;
    while i + 1 < bytes.len() {
        match bytes[i] {
            b'[' => depth += 1,
            b']' => depth -= 1,
            b'-' if depth == 0 && bytes[i + 1] == b'>' => {
                return Some((line[..i].to_string(), line[i + 2..].to_string()));
            }
            _ => {}
        }
        i += 1;
    }
    None
}

/// Splits at top level: not inside `[...]`, `<...>` or quotes. The `<` of
/// `<->` inside a SEM is tracked by angle depth together with its closing
/// `>`, so the count stays balanced.
fn split_top_level(text: &str, sep: char) -> Vec<String> {
    let mut parts = Vec::new();
    let mut cur = String::new();
    let mut square = 0i32;
    let mut in_quote = false;
    for c in text.chars() {
        if in_quote {
            if c == '\'' {
                in_quote = false;
            }
            cur.push(c);
            continue;
        }
        match c {
            '\'' => {
                in_quote = true;
                cur.push(c);
            }
            '[' => {
                square += 1;
                cur.push(c);
            }
            ']' => {
                square -= 1;
                cur.push(c);
            }
            c if c == sep && square == 0 => {
                parts.push(std::mem::take(&mut cur));
            }
            _ => cur.push(c),
        }
    }
    parts.push(cur);
    parts
}

fn parse_rhs(text: &str, lineno: usize) -> Result<Vec<Symbol>, GrammarError> {
    let mut symbols = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        if let Some(stripped) = rest.strip_prefix('\'') {
            match stripped.find('\'') {
                Some(end) => {
                    let word = &stripped[..end];
                    if word.is_empty() {
                        return err(lineno, "empty terminal");
                    }
                    symbols.push(Symbol::Terminal(word.to_string()));
                    rest = stripped[end + 1..].trim_start();
                }
                None => return err(lineno, "unterminated terminal quote"),
            }
        } else {
            let end = category_end(rest);
            let cat_text = &rest[..end];
            symbols.push(Symbol::NonTerminal(parse_category(cat_text, lineno)?));
            rest = rest[end..].trim_start();
        }
    }
    Ok(symbols)
}

/// Length of the category occurrence at the start of `text`: the name and,
/// if present, its balanced `[...]` block.
fn category_end(text: &str) -> usize {
    let mut i = 0;
    let bytes = text.as_bytes();
    while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'[' {
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'[' {
        let mut depth = 0i32;
        while i < bytes.len() {
            match bytes[i] {
                b'[' => depth += 1,
                b']' => {
                    depth -= 1;
                    if depth == 0 {
                        return i + 1;
                    }
                }
                _ => {}
            }
            i += 1;
        }
    }
    i
}

fn parse_category(text: &str, lineno: usize) -> Result<Category, GrammarError> {
    let text = text.trim();
    let (name, feat_text) = match text.find('[') {
        Some(open) => {
            if !text.ends_with(']') {
                return err(lineno, format!("unclosed feature block in `{text}`"));
            }
            (&text[..open], Some(&text[open + 1..text.len() - 1]))
        }
        None => (text, None),
    };
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return err(lineno, format!("bad category name `{name}`"));
    }
    let mut cat = Category::new(name);
    if let Some(feat_text) = feat_text {
        for entry in split_feature_entries(feat_text) {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let (key, value) = match entry.split_once('=') {
                Some(kv) => kv,
                None => return err(lineno, format!("expected FEATURE=value in `{entry}`")),
            };
            let key = key.trim();
            let value = value.trim();
            if key == "SEM" {
                let sem_text = value
                    .strip_prefix('<')
                    .and_then(|v| v.strip_suffix('>'));
                let sem = match sem_text {
                    Some(inner) => match parse_sem(inner) {
                        Ok(t) => t,
                        Err(e) => return err(lineno, format!("in SEM of {name}: {e}")),
                    },
                    None => {
                        // An unbracketed SEM value must be a bare hole,
                        // the form used on rule right sides.
                        match value.strip_prefix('?') {
                            Some(v) if !v.is_empty() => LambdaTerm::Var(format!("?{v}")),
                            _ => {
                                return err(
                                    lineno,
                                    format!("SEM must be `<...>` or `?var`, got `{value}`"),
                                )
                            }
                        }
                    }
                };
                cat.sem = Some(sem);
            } else {
                let fv = match value.strip_prefix('?') {
                    Some(v) if !v.is_empty() => FeatureValue::Var(v.to_string()),
                    _ => {
                        if value.is_empty()
                            || !value.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                        {
                            return err(lineno, format!("bad feature value `{value}`"));
                        }
                        FeatureValue::Atomic(value.to_string())
                    }
                };
                cat.features.set(key, fv);
            }
        }
    }
    Ok(cat)
}

/// Splits a feature block on commas that are not inside a `<...>` SEM
/// value. Angle depth ignores the arrows `->` and `<->`.
fn split_feature_entries(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut cur = String::new();
    let mut angle = 0i32;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '<' => {
                // `<->` inside a SEM is a connective, not a delimiter.
                if angle > 0 && chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    cur.push_str("<->");
                    i += 3;
                    continue;
                }
                angle += 1;
                cur.push(c);
            }
            '-' if angle > 0 && chars.get(i + 1) == Some(&'>') => {
                cur.push_str("->");
                i += 2;
                continue;
            }
            '>' => {
                angle -= 1;
                cur.push(c);
            }
            ',' if angle == 0 => {
                parts.push(std::mem::take(&mut cur));
            }
            _ => cur.push(c),
        }
        i += 1;
    }
    parts.push(cur);
    parts
}

fn validate_rule(rule: &ProductionRule, lineno: usize) -> Result<(), GrammarError> {
    let mut rhs_sem_vars: Vec<String> = Vec::new();
    for sym in &rule.rhs {
        if let Symbol::NonTerminal(cat) = sym {
            if let Some(sem) = &cat.sem {
                match sem {
                    LambdaTerm::Var(v) if v.starts_with('?') => {
                        if rhs_sem_vars.contains(v) {
                            return err(
                                lineno,
                                format!("semantic variable `{v}` bound twice on the right side"),
                            );
                        }
                        rhs_sem_vars.push(v.clone());
                    }
                    _ => {
                        return err(
                            lineno,
                            "right-side SEM must be a plain `?var`".to_string(),
                        )
                    }
                }
            }
        }
    }
    if let Some(sem) = &rule.lhs.sem {
        for hole in sem.holes() {
            if !rhs_sem_vars.contains(&hole) {
                return err(
                    lineno,
                    format!("left-side SEM uses `{hole}` but no right-side symbol binds it"),
                );
            }
        }
    }
    Ok(())
}

/// Prints a grammar in the same format `parse_grammar` reads. Alternations
/// are expanded, one rule per line.
pub fn print_grammar(g: &Grammar) -> String {
    let mut out = String::new();
    out.push_str(&format!("% start {}\n", g.start));
    for rule in &g.rules {
        out.push_str(&print_category(&rule.lhs));
        out.push_str(" ->");
        for sym in &rule.rhs {
            out.push(' ');
            match sym {
                Symbol::Terminal(t) => out.push_str(&format!("'{t}'")),
                Symbol::NonTerminal(c) => out.push_str(&print_category(c)),
            }
        }
        out.push('\n');
    }
    out
}

fn print_category(c: &Category) -> String {
    let mut parts: Vec<String> = c
        .features
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    if let Some(sem) = &c.sem {
        match sem {
            LambdaTerm::Var(v) if v.starts_with('?') => parts.push(format!("SEM={v}")),
            other => parts.push(format!("SEM=<{other}>")),
        }
    }
    if parts.is_empty() {
        c.name.clone()
    } else {
        format!("{}[{}]", c.name, parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = "\
# tiny agreement grammar
% start S

S[SEM=<?np(?vp)>] -> NP[NUM=?n, SEM=?np] VP[NUM=?n, SEM=?vp]
NP[NUM=sg, SEM=<\\P. P(maria)>] -> 'Maria'
VP[NUM=?n, SEM=?v] -> V[NUM=?n, SEM=?v]
V[NUM=sg, SEM=<\\x. smart(x)>] -> 'is' 'smart'
V[NUM=pl, SEM=<\\x. smart(x)>] -> 'are' 'smart'
Conj -> 'and' | 'but'
";

    #[test]
    fn parses_rules_and_start() {
        let g = parse_grammar(DEMO).unwrap();
        assert_eq!(g.start, "S");
        assert_eq!(g.rules.len(), 7);
        assert_eq!(g.rules[1].terminals(), vec!["Maria"]);
        assert!(g.rules[1].is_lexical());
        assert!(!g.rules[0].is_lexical());
        // Alternation expanded to two rules with the same lhs.
        assert_eq!(g.rules[5].lhs.name, "Conj");
        assert_eq!(g.rules[6].lhs.name, "Conj");
        assert_eq!(g.rules[6].terminals(), vec!["but"]);
    }

    #[test]
    fn sem_with_arrows_survives_the_feature_block() {
        let text = "% start S\nS[SEM=<\\x. (say(x) <-> p -> q)>] -> 'hi'\n";
        let g = parse_grammar(text).unwrap();
        let sem = g.rules[0].lhs.sem.as_ref().unwrap();
        assert_eq!(sem.to_string(), "\\x. (say(x) <-> p -> q)");
    }

    #[test]
    fn sem_with_commas_survives_entry_splitting() {
        let text = "% start S\nS[NUM=sg, SEM=<same(a,b)>, X=y] -> 'hi'\n";
        let g = parse_grammar(text).unwrap();
        let lhs = &g.rules[0].lhs;
        assert_eq!(lhs.sem.as_ref().unwrap().to_string(), "same(a,b)");
        assert_eq!(lhs.features.get("NUM"), Some(&FeatureValue::Atomic("sg".into())));
        assert_eq!(lhs.features.get("X"), Some(&FeatureValue::Atomic("y".into())));
    }

    #[test]
    fn round_trips_through_print() {
        let g = parse_grammar(DEMO).unwrap();
        let printed = print_grammar(&g);
        let again = parse_grammar(&printed).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn continuation_lines_extend_alternation() {
        let text = "% start V\nV -> 'says'\n   | 'claims'\n   | 'states'\n";
        let g = parse_grammar(text).unwrap();
        assert_eq!(g.rules.len(), 3);
        assert_eq!(g.rules[2].terminals(), vec!["states"]);
    }

    #[test]
    fn rejects_unbound_sem_hole() {
        let text = "% start S\nS[SEM=<?np(?vp)>] -> NP[SEM=?np] VP\n";
        let e = parse_grammar(text).unwrap_err();
        assert!(e.msg.contains("?vp"), "{e}");
    }

    #[test]
    fn rejects_duplicate_sem_binding() {
        let text = "% start S\nS[SEM=<?a>] -> NP[SEM=?a] VP[SEM=?a]\n";
        let e = parse_grammar(text).unwrap_err();
        assert!(e.msg.contains("bound twice"));
    }

    #[test]
    fn rejects_complex_rhs_sem() {
        let text = "% start S\nS[SEM=<?a>] -> NP[SEM=<\\x. p(x)>]\n";
        let e = parse_grammar(text).unwrap_err();
        assert!(e.msg.contains("plain `?var`"));
    }

    #[test]
    fn rejects_unknown_directive() {
        let e = parse_grammar("% begin S\nS -> 'x'\n").unwrap_err();
        assert!(e.msg.contains("unknown directive"));
    }

    #[test]
    fn missing_start_defaults_to_first_lhs() {
        let g = parse_grammar("S -> 'x'\n").unwrap();
        assert_eq!(g.start, "S");
    }
}
