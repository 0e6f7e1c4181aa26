//! Chart parsing with feature unification.
//!
//! A classic Earley parser over the feature grammar: predict, scan,
//! complete, with one twist at completion time. Advancing the dot over a
//! nonterminal unifies the rule slot's features with the finished
//! constituent's features under the item's accumulated bindings; if they
//! clash the derivation dies there. That single check is what rejects
//! `Marge are the tallest` while letting coordinated subjects take plural
//! verbs.
//!
//! The chart keeps every cause of every item, so afterwards all parse
//! trees can be unpacked, ordered smallest first. Semantics is composed
//! bottom-up over a chosen tree: each rule's SEM template is instantiated
//! with the children's semantics and beta-reduced.

use std::collections::BTreeMap;
use std::fmt;

use crate::grammar::{unify_features, Bindings, Category, Grammar, ProductionRule, Symbol};
use crate::lambda::{beta_reduce, instantiate, to_formula, LambdaError, LambdaTerm};
use crate::fol::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChartError {
    #[error("unknown word `{token}` at position {position}")]
    UnknownWord { token: String, position: usize },
    #[error("no parse: no complete `{start}` covers the {len} tokens")]
    NoParse { start: String, len: usize },
    #[error("rule for `{0}` has no SEM to compose")]
    NoSemantics(String),
    #[error("empty input")]
    Empty,
    #[error("{0}")]
    Lambda(#[from] LambdaError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseTree {
    /// Index of the applied grammar rule.
    pub rule: usize,
    /// The rule's left side with features resolved for this derivation.
    pub root: Category,
    pub children: Vec<TreeNode>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    Leaf(String),
    Tree(ParseTree),
}

impl ParseTree {
    /// Total number of tree nodes and leaves, the primary parse-ranking
    /// key.
    pub fn size(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(|c| match c {
                TreeNode::Leaf(_) => 1,
                TreeNode::Tree(t) => t.size(),
            })
            .sum::<usize>()
    }

    /// Rule indices in preorder, the tie-breaking parse-ranking key.
    pub fn rule_sequence(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_rules(&mut out);
        out
    }

    fn collect_rules(&self, out: &mut Vec<usize>) {
        out.push(self.rule);
        for c in &self.children {
            if let TreeNode::Tree(t) = c {
                t.collect_rules(out);
            }
        }
    }

    /// Bracketed form: `(S (NP (PropN 'Maria')) (VP ...))`. Features that
    /// resolved to atoms are shown; SEM is not.
    pub fn bracketed(&self) -> String {
        let mut out = String::new();
        self.write_bracketed(&mut out);
        out
    }

    fn write_bracketed(&self, out: &mut String) {
        out.push('(');
        out.push_str(&category_label(&self.root));
        for c in &self.children {
            out.push(' ');
            match c {
                TreeNode::Leaf(w) => {
                    out.push('\'');
                    out.push_str(w);
                    out.push('\'');
                }
                TreeNode::Tree(t) => t.write_bracketed(out),
            }
        }
        out.push(')');
    }
}

fn category_label(c: &Category) -> String {
    let feats: Vec<String> = c
        .features
        .iter()
        .filter_map(|(k, v)| match v {
            crate::grammar::FeatureValue::Atomic(a) => Some(format!("{k}={a}")),
            crate::grammar::FeatureValue::Var(_) => None,
        })
        .collect();
    if feats.is_empty() {
        c.name.clone()
    } else {
        format!("{}[{}]", c.name, feats.join(","))
    }
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bracketed())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Item {
    rule: usize,
    dot: usize,
    origin: usize,
    bindings: Bindings,
}

type ItemKey = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
enum Cause {
    Predicted,
    Scanned { prev: ItemKey },
    Completed { prev: ItemKey, child: ItemKey },
}

struct Chart<'g> {
    grammar: &'g Grammar,
    /// Items per end position, in insertion order.
    items: Vec<Vec<Item>>,
    /// Dedup index per end position.
    index: Vec<BTreeMap<Item, usize>>,
    causes: Vec<Vec<Vec<Cause>>>,
}

impl<'g> Chart<'g> {
    fn new(grammar: &'g Grammar, positions: usize) -> Chart<'g> {
        Chart {
            grammar,
            items: vec![Vec::new(); positions],
            index: vec![BTreeMap::new(); positions],
            causes: vec![Vec::new(); positions],
        }
    }

    fn add(&mut self, pos: usize, item: Item, cause: Cause) -> Option<usize> {
        if let Some(&idx) = self.index[pos].get(&item) {
            if !self.causes[pos][idx].contains(&cause) {
                self.causes[pos][idx].push(cause);
            }
            return None;
        }
        let idx = self.items[pos].len();
        self.index[pos].insert(item.clone(), idx);
        self.items[pos].push(item);
        self.causes[pos].push(vec![cause]);
        Some(idx)
    }

    fn item(&self, key: ItemKey) -> &Item {
        &self.items[key.0][key.1]
    }

    fn rule(&self, item: &Item) -> &'g ProductionRule {
        &self.grammar.rules[item.rule]
    }

    fn next_symbol(&self, item: &Item) -> Option<&'g Symbol> {
        self.grammar.rules[item.rule].rhs.get(item.dot)
    }

    /// The completed constituent's visible features: the rule's lhs under
    /// the item's bindings, residual variables renamed to this item's own
    /// namespace so two different derivations can never share a variable.
    fn signature(&self, key: ItemKey) -> crate::grammar::FeatureStructure {
        let item = self.item(key);
        let resolved = self.rule(item).lhs.features.resolve(&item.bindings);
        resolved.rename_vars(&format!("i{}_{}__", key.0, key.1))
    }
}

pub struct ChartParser<'g> {
    grammar: &'g Grammar,
}

impl<'g> ChartParser<'g> {
    pub fn new(grammar: &'g Grammar) -> ChartParser<'g> {
        ChartParser { grammar }
    }

    /// All parses of the tokens as the grammar's start category, smallest
    /// tree first, ties broken by preorder rule indices.
    pub fn parse(&self, tokens: &[String]) -> Result<Vec<ParseTree>, ChartError> {
        self.parse_as(tokens, &self.grammar.start.clone())
    }

    /// All parses rooted at an arbitrary category, for grammars that
    /// distinguish statements from questions.
    pub fn parse_as(&self, tokens: &[String], start: &str) -> Result<Vec<ParseTree>, ChartError> {
        if tokens.is_empty() {
            return Err(ChartError::Empty);
        }
        self.check_vocabulary(tokens)?;
        let n = tokens.len();
        let mut chart = Chart::new(self.grammar, n + 1);

        for (ri, _) in self.grammar.rules_for(start) {
            chart.add(0, Item { rule: ri, dot: 0, origin: 0, bindings: Bindings::new() }, Cause::Predicted);
        }

        for pos in 0..=n {
            // Within a position, process items to fixpoint in insertion
            // order: predictions and completions both append here.
            let mut cursor = 0;
            while cursor < chart.items[pos].len() {
                let item = chart.items[pos][cursor].clone();
                match chart.next_symbol(&item) {
                    Some(Symbol::Terminal(t)) => {
                        if pos < n && t.eq_ignore_ascii_case(&tokens[pos]) {
                            let next = Item { dot: item.dot + 1, ..item.clone() };
                            chart.add(pos + 1, next, Cause::Scanned { prev: (pos, cursor) });
                        }
                    }
                    Some(Symbol::NonTerminal(slot)) => {
                        let slot_name = slot.name.clone();
                        for (ri, _) in self.grammar.rules_for(&slot_name) {
                            chart.add(
                                pos,
                                Item { rule: ri, dot: 0, origin: pos, bindings: Bindings::new() },
                                Cause::Predicted,
                            );
                        }
                    }
                    None => {
                        // Complete: advance every waiting parent at the
                        // origin position.
                        let child_key = (pos, cursor);
                        let child_name = chart.rule(&item).lhs.name.clone();
                        let child_sig = chart.signature(child_key);
                        let origin = item.origin;
                        let parents: Vec<(usize, Item)> = chart.items[origin]
                            .iter()
                            .enumerate()
                            .filter(|(_, p)| {
                                matches!(
                                    chart.next_symbol(p),
                                    Some(Symbol::NonTerminal(c)) if c.name == child_name
                                )
                            })
                            .map(|(i, p)| (i, p.clone()))
                            .collect();
                        for (pi, parent) in parents {
                            let slot = match chart.next_symbol(&parent) {
                                Some(Symbol::NonTerminal(c)) => c,
                                _ => unreachable!(),
                            };
                            if let Some(bindings) =
                                unify_features(&slot.features, &child_sig, &parent.bindings)
                            {
                                let next = Item {
                                    rule: parent.rule,
                                    dot: parent.dot + 1,
                                    origin: parent.origin,
                                    bindings,
                                };
                                chart.add(
                                    pos,
                                    next,
                                    Cause::Completed { prev: (origin, pi), child: child_key },
                                );
                            }
                        }
                    }
                }
                cursor += 1;
            }
        }

        let mut trees = Vec::new();
        for (idx, item) in chart.items[n].iter().enumerate() {
            if item.origin == 0
                && item.dot == self.grammar.rules[item.rule].rhs.len()
                && self.grammar.rules[item.rule].lhs.name == start
            {
                let mut active = Vec::new();
                trees.extend(self.trees_of(&chart, (n, idx), &mut active));
            }
        }
        if trees.is_empty() {
            return Err(ChartError::NoParse { start: start.to_string(), len: n });
        }
        let mut keyed: Vec<(usize, Vec<usize>, ParseTree)> = trees
            .into_iter()
            .map(|t| (t.size(), t.rule_sequence(), t))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        let mut out: Vec<ParseTree> = Vec::new();
        for (_, _, t) in keyed {
            if !out.contains(&t) {
                out.push(t);
            }
        }
        Ok(out)
    }

    fn check_vocabulary(&self, tokens: &[String]) -> Result<(), ChartError> {
        let vocab = self.grammar.vocabulary();
        for (i, t) in tokens.iter().enumerate() {
            if vocab.binary_search(&t.to_ascii_lowercase()).is_err() {
                return Err(ChartError::UnknownWord { token: t.clone(), position: i });
            }
        }
        Ok(())
    }

    /// All trees for a complete item, guarding against derivation cycles
    /// through unary rules.
    fn trees_of(&self, chart: &Chart, key: ItemKey, active: &mut Vec<ItemKey>) -> Vec<ParseTree> {
        if active.contains(&key) {
            return Vec::new();
        }
        active.push(key);
        let item = chart.item(key);
        let root = Category {
            name: self.grammar.rules[item.rule].lhs.name.clone(),
            features: self.grammar.rules[item.rule].lhs.features.resolve(&item.bindings),
            sem: None,
        };
        let out = self
            .expansions(chart, key, active)
            .into_iter()
            .map(|children| ParseTree { rule: chart.item(key).rule, root: root.clone(), children })
            .collect();
        active.pop();
        out
    }

    /// The possible child sequences covering the first `dot` symbols of an
    /// item, one per way its causes chain back to the prediction.
    fn expansions(
        &self,
        chart: &Chart,
        key: ItemKey,
        active: &mut Vec<ItemKey>,
    ) -> Vec<Vec<TreeNode>> {
        let (pos, idx) = key;
        let mut out: Vec<Vec<TreeNode>> = Vec::new();
        let causes = chart.causes[pos][idx].clone();
        for cause in causes {
            match cause {
                Cause::Predicted => out.push(Vec::new()),
                Cause::Scanned { prev } => {
                    let word = tokens_word(chart, prev);
                    for mut front in self.expansions(chart, prev, active) {
                        front.push(TreeNode::Leaf(word.clone()));
                        out.push(front);
                    }
                }
                Cause::Completed { prev, child } => {
                    let child_trees = self.trees_of(chart, child, active);
                    for front in self.expansions(chart, prev, active) {
                        for ct in &child_trees {
                            let mut seq = front.clone();
                            seq.push(TreeNode::Tree(ct.clone()));
                            out.push(seq);
                        }
                    }
                }
            }
        }
        let mut dedup: Vec<Vec<TreeNode>> = Vec::new();
        for seq in out {
            if !dedup.contains(&seq) {
                dedup.push(seq);
            }
        }
        dedup
    }

    /// Composes the semantics of a parse tree bottom-up and reduces it.
    pub fn semantics(&self, tree: &ParseTree) -> Result<LambdaTerm, ChartError> {
        let rule = &self.grammar.rules[tree.rule];
        let template = match &rule.lhs.sem {
            Some(t) => t,
            None => return Err(ChartError::NoSemantics(rule.lhs.name.clone())),
        };
        let mut bindings: Vec<(String, LambdaTerm)> = Vec::new();
        for (sym, child) in rule.rhs.iter().zip(&tree.children) {
            if let (Symbol::NonTerminal(cat), TreeNode::Tree(sub)) = (sym, child) {
                if let Some(LambdaTerm::Var(hole)) = &cat.sem {
                    bindings.push((hole.clone(), self.semantics(sub)?));
                }
            }
        }
        let filled = instantiate(template, &bindings);
        Ok(beta_reduce(&filled)?)
    }

    /// The meaning of a token sequence: parses it, composes each tree in
    /// rank order, and returns the first result that lowers to a closed
    /// formula, together with its tree.
    pub fn sentence_formula(
        &self,
        tokens: &[String],
        start: &str,
    ) -> Result<(ParseTree, Formula), ChartError> {
        let trees = self.parse_as(tokens, start)?;
        let mut first_err: Option<ChartError> = None;
        for tree in trees {
            match self.semantics(&tree).and_then(|sem| Ok(to_formula(&sem)?)) {
                Ok(f) => return Ok((tree, f)),
                Err(e) => {
                    if first_err.is_none() {
                        first_err = Some(e);
                    }
                }
            }
        }
        Err(first_err.expect("at least one tree"))
    }
}

/// The token a scan consumed: the terminal at the previous item's dot.
fn tokens_word(chart: &Chart, prev: ItemKey) -> String {
    let item = chart.item(prev);
    match &chart.grammar.rules[item.rule].rhs[item.dot] {
        Symbol::Terminal(t) => t.clone(),
        Symbol::NonTerminal(_) => unreachable!("scan cause always sits before a terminal"),
    }
}

/// Splits a plain string on whitespace, for tests and the command line.
pub fn toks(s: &str) -> Vec<String> {
    s.split_whitespace().map(|w| w.to_string()).collect()
}
