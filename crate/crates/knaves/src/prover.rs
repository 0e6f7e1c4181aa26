//! Refutation proving by binary resolution with factoring.
//!
//! The saturation is a given-clause loop: pick the smallest unprocessed
//! clause, resolve it against everything processed (itself included),
//! factor it, keep whatever survives the tautology and subsumption
//! filters. Deriving the empty clause refutes the input; running out of
//! clauses to process means the input is satisfiable.
//!
//! Every derived clause records its parents and the literal positions
//! used, so a [`Proof`] can be replayed step by step by [`check_proof`]
//! without trusting the prover. Chains of resolutions against unit or
//! all-positive side clauses can be condensed into single composite
//! steps for presentation; the checker replays those too.

use std::collections::BTreeMap;

use crate::fol::{
    canonicalize, unify_atoms, Clause, ClauseId, DerivedRule, HyperStep, Literal, Provenance,
    Substitution, Term,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProverConfig {
    /// Kept-clause budget; exceeding it stops the search.
    pub max_clauses: usize,
    /// Given-clause iterations budget.
    pub max_iterations: usize,
}

impl Default for ProverConfig {
    fn default() -> ProverConfig {
        ProverConfig { max_clauses: 20_000, max_iterations: 10_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The empty clause was derived; the input set is unsatisfiable.
    Refuted(Proof),
    /// No more inferences and no empty clause; the input is satisfiable.
    Saturated,
    /// A budget ran out before either answer.
    ResourceLimit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProveResult {
    pub outcome: Outcome,
    /// Clauses kept at the end, inputs included.
    pub kept: usize,
    pub iterations: usize,
}

/// The ancestors of an empty clause, in id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub clauses: Vec<Clause>,
    pub empty: ClauseId,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProofError {
    #[error("proof refers to missing clause {0}")]
    MissingClause(ClauseId),
    #[error("clause {0} is a leaf but does not appear among the inputs")]
    LeafNotInInput(ClauseId),
    #[error("clause {id}: {reason}")]
    BadStep { id: ClauseId, reason: String },
    #[error("clause {0} is claimed empty but has literals")]
    NotEmpty(ClauseId),
}

impl Proof {
    pub fn find(&self, id: ClauseId) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.id == id)
    }

    /// Input clauses the refutation actually used.
    pub fn leaves(&self) -> Vec<&Clause> {
        self.clauses
            .iter()
            .filter(|c| !matches!(c.provenance, Provenance::Derived { .. }))
            .collect()
    }
}

/// Renames the second clause's variables positionally so they are
/// disjoint from `taken`. Deterministic, so the proof checker reproduces
/// the prover's choice exactly.
fn rename_apart(taken: &[String], b: &Clause) -> Vec<Literal> {
    let b_vars = b.vars();
    let mut sub = Substitution::new();
    let mut used: Vec<String> = taken.to_vec();
    for v in dedup_names(&b_vars) {
        let fresh = if !used.contains(&v) {
            v.clone()
        } else {
            let mut n = 1;
            loop {
                let candidate = format!("{v}{n}");
                if !used.contains(&candidate) && !b_vars.contains(&candidate) {
                    break candidate;
                }
                n += 1;
            }
        };
        used.push(fresh.clone());
        if fresh != v {
            sub.bind(v, Term::var(fresh));
        }
    }
    b.apply(&sub)
}

fn dedup_names(names: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for n in names {
        if !out.contains(n) {
            out.push(n.clone());
        }
    }
    out
}

/// Friendly variable names for a derived clause: `x, y, z, u, v, w`, then
/// numbered, in first-occurrence order. Renaming a clause is sound since
/// its variables are implicitly universal.
fn tidy_variables(clause: &Clause) -> Clause {
    const LETTERS: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    let vars = dedup_names(&clause.vars());
    let mut sub = Substitution::new();
    for (i, v) in vars.iter().enumerate() {
        let name = if i < LETTERS.len() {
            LETTERS[i].to_string()
        } else {
            format!("{}{}", LETTERS[i % LETTERS.len()], i / LETTERS.len())
        };
        sub.bind(v.clone(), Term::var(name));
    }
    Clause { id: clause.id, literals: clause.apply(&sub), provenance: clause.provenance.clone() }
}

/// All binary resolvents of the two clauses, with the literal positions
/// that produced each.
fn resolvents(a: &Clause, b: &Clause, next_id: &mut ClauseId) -> Vec<Clause> {
    let mut out = Vec::new();
    let a_vars = a.vars();
    let b_lits = rename_apart(&a_vars, b);
    for (i, la) in a.literals.iter().enumerate() {
        for (j, lb) in b_lits.iter().enumerate() {
            if la.positive == lb.positive {
                continue;
            }
            if let Some(mgu) = unify_atoms(&la.atom, &lb.atom) {
                let mut lits: Vec<Literal> = Vec::new();
                for (k, l) in a.literals.iter().enumerate() {
                    if k != i {
                        lits.push(mgu.apply_literal(l));
                    }
                }
                for (k, l) in b_lits.iter().enumerate() {
                    if k != j {
                        lits.push(mgu.apply_literal(l));
                    }
                }
                let clause = Clause::new(
                    *next_id,
                    lits,
                    Provenance::Derived {
                        rule: DerivedRule::Resolve { left_lit: i, right_lit: j },
                        parents: vec![a.id, b.id],
                    },
                );
                if !clause.is_tautology() {
                    out.push(tidy_variables(&clause));
                    *next_id += 1;
                }
            }
        }
    }
    out
}

/// All factors of a clause: unify two same-sign literals, drop the second.
fn factors(c: &Clause, next_id: &mut ClauseId) -> Vec<Clause> {
    let mut out = Vec::new();
    for i in 0..c.literals.len() {
        for j in i + 1..c.literals.len() {
            if c.literals[i].positive != c.literals[j].positive {
                continue;
            }
            if let Some(mgu) = unify_atoms(&c.literals[i].atom, &c.literals[j].atom) {
                let lits: Vec<Literal> = c
                    .literals
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, l)| mgu.apply_literal(l))
                    .collect();
                let clause = Clause::new(
                    *next_id,
                    lits,
                    Provenance::Derived {
                        rule: DerivedRule::Factor { keep: i, merged: j },
                        parents: vec![c.id],
                    },
                );
                if !clause.is_tautology() {
                    out.push(tidy_variables(&clause));
                    *next_id += 1;
                }
            }
        }
    }
    out
}

/// Theta-subsumption: does `c` have an instance that is a subset of `d`?
/// The length guard keeps a clause from subsuming its own factors.
pub fn subsumes(c: &Clause, d: &Clause) -> bool {
    if c.literals.len() > d.literals.len() {
        return false;
    }
    // d's variables act as constants here: matching binds only c's side,
    // so rename d apart first to avoid accidental capture.
    let d_lits = rename_apart(&c.vars(), d);
    let mut binding = BTreeMap::new();
    subsume_from(&c.literals, 0, &d_lits, &mut binding)
}

fn subsume_from(
    c: &[Literal],
    at: usize,
    d: &[Literal],
    binding: &mut BTreeMap<String, Term>,
) -> bool {
    if at == c.len() {
        return true;
    }
    for target in d {
        if target.positive != c[at].positive {
            continue;
        }
        let saved = binding.clone();
        if match_atom(&c[at].atom, &target.atom, binding)
            && subsume_from(c, at + 1, d, binding)
        {
            return true;
        }
        *binding = saved;
    }
    false
}

/// One-way matching: variables on the pattern side only.
fn match_atom(
    pat: &crate::fol::Atom,
    tgt: &crate::fol::Atom,
    binding: &mut BTreeMap<String, Term>,
) -> bool {
    use crate::fol::Atom;
    match (pat, tgt) {
        (Atom::Pred(p, pa), Atom::Pred(q, qa)) => {
            p == q
                && pa.len() == qa.len()
                && pa.iter().zip(qa).all(|(x, y)| match_term(x, y, binding))
        }
        (Atom::Eq(pl, pr), Atom::Eq(ql, qr)) => {
            match_term(pl, ql, binding) && match_term(pr, qr, binding)
        }
        _ => false,
    }
}

fn match_term(pat: &Term, tgt: &Term, binding: &mut BTreeMap<String, Term>) -> bool {
    match pat {
        Term::Var(v) => match binding.get(v) {
            Some(bound) => bound == tgt,
            None => {
                binding.insert(v.clone(), tgt.clone());
                true
            }
        },
        Term::Const(_) => pat == tgt,
        Term::App(f, args) => match tgt {
            Term::App(g, brgs) if f == g && args.len() == brgs.len() => {
                args.iter().zip(brgs).all(|(x, y)| match_term(x, y, binding))
            }
            _ => false,
        },
    }
}

/// Given-clause saturation. Input clause ids are kept; derived clauses
/// get ids after the largest input id.
pub fn prove(inputs: &[Clause], config: &ProverConfig) -> ProveResult {
    let mut next_id: ClauseId = inputs.iter().map(|c| c.id + 1).max().unwrap_or(1);
    let mut processed: Vec<Clause> = Vec::new();
    let mut unprocessed: Vec<Clause> = Vec::new();
    let mut iterations = 0;

    for c in inputs {
        if c.is_tautology() {
            continue;
        }
        if unprocessed.iter().any(|kept| subsumes(kept, c)) {
            continue;
        }
        unprocessed.push(c.clone());
    }

    loop {
        if let Some(empty) = unprocessed.iter().chain(&processed).find(|c| c.is_empty()) {
            let proof = extract_proof(empty.id, &processed, &unprocessed);
            return ProveResult {
                outcome: Outcome::Refuted(proof),
                kept: processed.len() + unprocessed.len(),
                iterations,
            };
        }
        if unprocessed.is_empty() {
            return ProveResult {
                outcome: Outcome::Saturated,
                kept: processed.len(),
                iterations,
            };
        }
        if iterations == config.max_iterations
            || processed.len() + unprocessed.len() > config.max_clauses
        {
            return ProveResult {
                outcome: Outcome::ResourceLimit,
                kept: processed.len() + unprocessed.len(),
                iterations,
            };
        }
        iterations += 1;

        // The given clause: fewest literals, oldest first.
        let pick = unprocessed
            .iter()
            .enumerate()
            .min_by_key(|(_, c)| (c.literals.len(), c.id))
            .map(|(i, _)| i)
            .unwrap();
        let given = unprocessed.remove(pick);
        processed.push(given.clone());

        let mut fresh: Vec<Clause> = Vec::new();
        for other in &processed {
            fresh.extend(resolvents(&given, other, &mut next_id));
            if other.id != given.id {
                fresh.extend(resolvents(other, &given, &mut next_id));
            }
        }
        fresh.extend(factors(&given, &mut next_id));

        for clause in fresh {
            let redundant = processed
                .iter()
                .chain(&unprocessed)
                .any(|kept| subsumes(kept, &clause));
            if !redundant {
                unprocessed.push(clause);
            }
        }
    }
}

fn extract_proof(empty: ClauseId, processed: &[Clause], unprocessed: &[Clause]) -> Proof {
    let by_id: BTreeMap<ClauseId, &Clause> = processed
        .iter()
        .chain(unprocessed)
        .map(|c| (c.id, c))
        .collect();
    let mut wanted: Vec<ClauseId> = vec![empty];
    let mut cursor = 0;
    while cursor < wanted.len() {
        let id = wanted[cursor];
        cursor += 1;
        if let Some(c) = by_id.get(&id) {
            for p in c.provenance.parents() {
                if !wanted.contains(p) {
                    wanted.push(*p);
                }
            }
        }
    }
    wanted.sort();
    let clauses = wanted.iter().filter_map(|id| by_id.get(id).map(|c| (*c).clone())).collect();
    Proof { clauses, empty }
}

/// Replays every derived step of a proof from its parents and confirms
/// the leaves are genuine inputs. Comparison is up to variable renaming.
pub fn check_proof(proof: &Proof, inputs: &[Clause]) -> Result<(), ProofError> {
    let by_id: BTreeMap<ClauseId, &Clause> = proof.clauses.iter().map(|c| (c.id, c)).collect();
    let empty = by_id.get(&proof.empty).ok_or(ProofError::MissingClause(proof.empty))?;
    if !empty.is_empty() {
        return Err(ProofError::NotEmpty(proof.empty));
    }
    for clause in &proof.clauses {
        match &clause.provenance {
            Provenance::InputAxiom | Provenance::Synonymy | Provenance::NegatedGoal => {
                let known = inputs
                    .iter()
                    .any(|i| canonicalize(&i.literals) == canonicalize(&clause.literals));
                if !known {
                    return Err(ProofError::LeafNotInInput(clause.id));
                }
            }
            Provenance::Derived { rule, parents } => {
                for p in parents {
                    if *p >= clause.id {
                        return Err(ProofError::BadStep {
                            id: clause.id,
                            reason: format!("parent {p} does not precede the clause"),
                        });
                    }
                }
                let replayed = replay(rule, parents, &by_id, clause.id)?;
                if canonicalize(&replayed) != canonicalize(&clause.literals) {
                    return Err(ProofError::BadStep {
                        id: clause.id,
                        reason: format!(
                            "replay gives {{{}}}, proof says {clause}",
                            replayed
                                .iter()
                                .map(|l| l.to_string())
                                .collect::<Vec<_>>()
                                .join(", ")
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

fn replay(
    rule: &DerivedRule,
    parents: &[ClauseId],
    by_id: &BTreeMap<ClauseId, &Clause>,
    id: ClauseId,
) -> Result<Vec<Literal>, ProofError> {
    let fetch = |cid: &ClauseId| by_id.get(cid).copied().ok_or(ProofError::MissingClause(*cid));
    let bad = |reason: String| ProofError::BadStep { id, reason };
    match rule {
        DerivedRule::Resolve { left_lit, right_lit } => {
            let [a_id, b_id] = parents else {
                return Err(bad(format!("resolution needs 2 parents, got {}", parents.len())));
            };
            let a = fetch(a_id)?;
            let b = fetch(b_id)?;
            let b_lits = rename_apart(&a.vars(), b);
            let la = a
                .literals
                .get(*left_lit)
                .ok_or_else(|| bad(format!("no literal {left_lit} in clause {a_id}")))?;
            let lb = b_lits
                .get(*right_lit)
                .ok_or_else(|| bad(format!("no literal {right_lit} in clause {b_id}")))?;
            if la.positive == lb.positive {
                return Err(bad("resolved literals have the same sign".to_string()));
            }
            let mgu = unify_atoms(&la.atom, &lb.atom)
                .ok_or_else(|| bad("resolved literals do not unify".to_string()))?;
            let mut lits = Vec::new();
            for (k, l) in a.literals.iter().enumerate() {
                if k != *left_lit {
                    lits.push(mgu.apply_literal(l));
                }
            }
            for (k, l) in b_lits.iter().enumerate() {
                if k != *right_lit {
                    lits.push(mgu.apply_literal(l));
                }
            }
            Ok(lits)
        }
        DerivedRule::Factor { keep, merged } => {
            let [a_id] = parents else {
                return Err(bad(format!("factoring needs 1 parent, got {}", parents.len())));
            };
            let a = fetch(a_id)?;
            let lk = a
                .literals
                .get(*keep)
                .ok_or_else(|| bad(format!("no literal {keep} in clause {a_id}")))?;
            let lm = a
                .literals
                .get(*merged)
                .ok_or_else(|| bad(format!("no literal {merged} in clause {a_id}")))?;
            if lk.positive != lm.positive {
                return Err(bad("factored literals differ in sign".to_string()));
            }
            let mgu = unify_atoms(&lk.atom, &lm.atom)
                .ok_or_else(|| bad("factored literals do not unify".to_string()))?;
            Ok(a.literals
                .iter()
                .enumerate()
                .filter(|(k, _)| k != merged)
                .map(|(_, l)| mgu.apply_literal(l))
                .collect())
        }
        DerivedRule::HyperResolve { steps } => {
            let Some((nucleus_id, satellite_ids)) = parents.split_first() else {
                return Err(bad("composite step has no parents".to_string()));
            };
            if satellite_ids.len() != steps.len() {
                return Err(bad(format!(
                    "{} satellites for {} folds",
                    satellite_ids.len(),
                    steps.len()
                )));
            }
            let mut working: Vec<Literal> = fetch(nucleus_id)?.literals.clone();
            for (step, sid) in steps.iter().zip(satellite_ids) {
                if *sid != step.satellite {
                    return Err(bad("satellite order disagrees with parent list".to_string()));
                }
                let satellite = fetch(sid)?;
                let mut taken = Vec::new();
                for l in &working {
                    l.collect_vars(&mut taken);
                }
                let s_lits = rename_apart(&taken, satellite);
                let lt = working
                    .get(step.target_lit)
                    .ok_or_else(|| bad(format!("no working literal {}", step.target_lit)))?
                    .clone();
                let ls = s_lits
                    .get(step.satellite_lit)
                    .ok_or_else(|| bad(format!("no satellite literal {}", step.satellite_lit)))?;
                if lt.positive == ls.positive {
                    return Err(bad("fold literals have the same sign".to_string()));
                }
                let mgu = unify_atoms(&lt.atom, &ls.atom)
                    .ok_or_else(|| bad("fold literals do not unify".to_string()))?;
                let mut lits = Vec::new();
                for (k, l) in working.iter().enumerate() {
                    if k != step.target_lit {
                        lits.push(mgu.apply_literal(l));
                    }
                }
                for (k, l) in s_lits.iter().enumerate() {
                    if k != step.satellite_lit {
                        lits.push(mgu.apply_literal(l));
                    }
                }
                // Intermediates were real clauses during the original
                // derivation, so replay reproduces their stored order.
                working = Clause::new(0, lits, Provenance::InputAxiom).literals;
            }
            Ok(working)
        }
    }
}

/// Condenses chains of resolutions into composite steps: a clause
/// resolved repeatedly against unit or all-positive satellites, where
/// each intermediate result is used exactly once, becomes one
/// [`DerivedRule::HyperResolve`]. Purely presentational; the conclusion
/// keeps its id and literals.
pub fn condense(proof: &Proof) -> Proof {
    let by_id: BTreeMap<ClauseId, &Clause> = proof.clauses.iter().map(|c| (c.id, c)).collect();
    let mut uses: BTreeMap<ClauseId, usize> = BTreeMap::new();
    for c in &proof.clauses {
        for p in c.provenance.parents() {
            *uses.entry(*p).or_insert(0) += 1;
        }
    }
    let is_satellite = |id: ClauseId| {
        by_id
            .get(&id)
            .is_some_and(|c| c.is_unit() || c.is_positive())
    };

    // Walk each clause's derivation upward while it looks like a fold
    // against a satellite and the intermediate below is single-use.
    let mut condensed: Vec<Clause> = Vec::new();
    let mut absorbed: Vec<ClauseId> = Vec::new();
    for clause in proof.clauses.iter().rev() {
        if absorbed.contains(&clause.id) {
            continue;
        }
        let mut folds: Vec<(ClauseId, HyperStep)> = Vec::new();
        let mut cursor = clause;
        loop {
            let Provenance::Derived {
                rule: DerivedRule::Resolve { left_lit, right_lit },
                parents,
            } = &cursor.provenance
            else {
                break;
            };
            let [nucleus_side, satellite_side] = parents[..] else { break };
            if !is_satellite(satellite_side) {
                break;
            }
            folds.push((
                cursor.id,
                HyperStep {
                    satellite: satellite_side,
                    satellite_lit: *right_lit,
                    target_lit: *left_lit,
                },
            ));
            let Some(above) = by_id.get(&nucleus_side) else { break };
            let above_single_use = uses.get(&nucleus_side).copied().unwrap_or(0) == 1;
            if matches!(
                above.provenance,
                Provenance::Derived { rule: DerivedRule::Resolve { .. }, .. }
            ) && above_single_use
            {
                cursor = above;
            } else {
                // The chain bottoms out at this nucleus.
                folds.push((
                    nucleus_side,
                    HyperStep { satellite: 0, satellite_lit: 0, target_lit: 0 },
                ));
                break;
            }
        }
        // The last pushed entry marks the nucleus, not a fold.
        if folds.len() >= 3 {
            let (nucleus_id, _) = folds.pop().unwrap();
            folds.reverse();
            let steps: Vec<HyperStep> = folds.iter().map(|(_, s)| s.clone()).collect();
            let mut parents = vec![nucleus_id];
            parents.extend(steps.iter().map(|s| s.satellite));
            for (intermediate, _) in &folds[..folds.len() - 1] {
                absorbed.push(*intermediate);
            }
            condensed.push(Clause {
                id: clause.id,
                literals: clause.literals.clone(),
                provenance: Provenance::Derived {
                    rule: DerivedRule::HyperResolve { steps },
                    parents,
                },
            });
        } else {
            condensed.push(clause.clone());
        }
    }
    condensed.reverse();
    // Drop absorbed intermediates that nothing references anymore.
    let referenced: Vec<ClauseId> = condensed
        .iter()
        .flat_map(|c| c.provenance.parents().to_vec())
        .collect();
    condensed.retain(|c| {
        c.id == proof.empty || referenced.contains(&c.id) || !absorbed.contains(&c.id)
    });
    Proof { clauses: condensed, empty: proof.empty }
}

/// Renders a proof as a Graphviz digraph: one node per clause, edges from
/// parents to conclusions.
pub fn proof_dot(proof: &Proof) -> String {
    let mut out = String::from("digraph proof {\n");
    out.push_str("  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n");
    for c in &proof.clauses {
        let label = format!("{}: {} [{}]", c.id, c, c.provenance.label());
        let shape = if c.is_empty() { ", style=bold" } else { "" };
        out.push_str(&format!(
            "  c{} [label=\"{}\"{}];\n",
            c.id,
            label.replace('\\', "\\\\").replace('"', "\\\""),
            shape
        ));
    }
    for c in &proof.clauses {
        for p in c.provenance.parents() {
            out.push_str(&format!("  c{} -> c{};\n", p, c.id));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{clauses_satisfiable_ground, parse_formula, Atom, Clausifier};
    use proptest::prelude::*;

    fn input_clauses(texts: &[&str]) -> Vec<Clause> {
        let mut clausifier = Clausifier::new();
        let mut out = Vec::new();
        for t in texts {
            let f = parse_formula(t).unwrap();
            out.extend(clausifier.clausify(&f.universal_closure(), Provenance::InputAxiom));
        }
        out
    }

    fn refute(texts: &[&str]) -> Proof {
        let inputs = input_clauses(texts);
        match prove(&inputs, &ProverConfig::default()).outcome {
            Outcome::Refuted(p) => {
                check_proof(&p, &inputs).unwrap();
                p
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn refutes_direct_contradiction() {
        let proof = refute(&["p(a)", "-p(a)"]);
        assert_eq!(proof.clauses.len(), 3);
        assert!(proof.find(proof.empty).unwrap().is_empty());
    }

    #[test]
    fn refutes_with_instantiation() {
        // Mortality of socrates, negated: needs one unifying resolution
        // per step, with the goal clause ground.
        let proof = refute(&["all x (man(x) -> mortal(x))", "man(s)", "-mortal(s)"]);
        let kinds: Vec<String> = proof.clauses.iter().map(|c| c.provenance.label()).collect();
        assert_eq!(kinds.iter().filter(|k| k.starts_with("resolve")).count(), 2);
    }

    #[test]
    fn factoring_is_needed_and_found() {
        // Without factoring every resolvent of these two keeps two
        // literals and the search saturates; with it, both collapse to
        // units and refute.
        let proof = refute(&["all x all y (p(x) | p(y))", "all u all v (-p(u) | -p(v))"]);
        assert!(proof
            .clauses
            .iter()
            .any(|c| c.provenance.label().starts_with("factor")));
    }

    #[test]
    fn satisfiable_set_saturates() {
        let inputs = input_clauses(&["p(a)", "q(a) | r(a)"]);
        let result = prove(&inputs, &ProverConfig::default());
        assert_eq!(result.outcome, Outcome::Saturated);
    }

    #[test]
    fn resource_limit_reported() {
        let inputs = input_clauses(&["all x (p(x) -> p(f(x)))", "p(a)", "-q(a)", "q(b)"]);
        let result = prove(&inputs, &ProverConfig { max_clauses: 20_000, max_iterations: 5 });
        assert_eq!(result.outcome, Outcome::ResourceLimit);
    }

    #[test]
    fn subsumption_is_one_way_matching() {
        let a = &input_clauses(&["all x p(x)"])[0];
        let b = &input_clauses(&["p(a) | q(b)"])[0];
        assert!(subsumes(a, b));
        assert!(!subsumes(b, a));
        // A shared variable must take one value across the clause.
        let c = &input_clauses(&["all x (p(x) | q(x))"])[0];
        let d = &input_clauses(&["p(a) | q(b)"])[0];
        assert!(!subsumes(c, d));
        let e = &input_clauses(&["p(a) | q(a)"])[0];
        assert!(subsumes(c, e));
    }

    #[test]
    fn checker_rejects_tampered_proofs() {
        let inputs = input_clauses(&["all x (man(x) -> mortal(x))", "man(s)", "-mortal(s)"]);
        let Outcome::Refuted(proof) = prove(&inputs, &ProverConfig::default()).outcome else {
            panic!("expected refutation");
        };
        check_proof(&proof, &inputs).unwrap();
        // Swap a derived clause's literals for something else.
        let mut bad = proof.clone();
        let target = bad
            .clauses
            .iter_mut()
            .find(|c| matches!(c.provenance, Provenance::Derived { .. }) && !c.is_empty())
            .unwrap();
        target.literals = vec![Literal::pos(Atom::pred("man", vec![Term::cst("s")]))];
        assert!(matches!(
            check_proof(&bad, &inputs),
            Err(ProofError::BadStep { .. })
        ));
        // Smuggle in a leaf that was never part of the input.
        let mut forged = proof.clone();
        let leaf = forged
            .clauses
            .iter_mut()
            .find(|c| !matches!(c.provenance, Provenance::Derived { .. }))
            .unwrap();
        leaf.literals = vec![Literal::pos(Atom::pred("god", vec![Term::cst("s")]))];
        assert!(matches!(
            check_proof(&forged, &inputs),
            Err(ProofError::LeafNotInInput(_) | ProofError::BadStep { .. })
        ));
    }

    #[test]
    fn chains_condense_into_composite_steps() {
        // Nucleus {-p, -q, r} folded over units {p}, {q} and {-r}.
        let inputs = input_clauses(&["-p(a) | -q(a) | r(a)", "p(a)", "q(a)", "-r(a)"]);
        let Outcome::Refuted(proof) = prove(&inputs, &ProverConfig::default()).outcome else {
            panic!("expected refutation");
        };
        check_proof(&proof, &inputs).unwrap();
        let condensed = condense(&proof);
        check_proof(&condensed, &inputs).unwrap();
        let hyper = condensed
            .clauses
            .iter()
            .find(|c| matches!(
                c.provenance,
                Provenance::Derived { rule: DerivedRule::HyperResolve { .. }, .. }
            ))
            .expect("one composite step");
        let Provenance::Derived { rule: DerivedRule::HyperResolve { steps }, parents } =
            &hyper.provenance
        else {
            unreachable!();
        };
        assert_eq!(steps.len(), 3);
        assert_eq!(parents.len(), 4);
        assert!(condensed.clauses.len() < proof.clauses.len());
    }

    #[test]
    fn dot_export_names_every_clause() {
        let proof = refute(&["p(a)", "-p(a)"]);
        let dot = proof_dot(&proof);
        assert!(dot.starts_with("digraph proof {"));
        for c in &proof.clauses {
            assert!(dot.contains(&format!("c{} [label=", c.id)), "node for {}", c.id);
        }
        assert!(dot.contains("->"));
        assert!(dot.trim_end().ends_with('}'));
    }

    #[test]
    fn condense_keeps_plain_proofs_unchanged() {
        let proof = refute(&["p(a)", "-p(a)"]);
        let condensed = condense(&proof);
        assert_eq!(condensed, proof);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // The prover against the truth table: on random ground clause
        // sets the refutation answer must match exhaustive evaluation,
        // and every refutation must replay.
        #[test]
        fn ground_refutation_matches_truth_table(
            spec in proptest::collection::vec(
                proptest::collection::vec((0usize..4, proptest::bool::ANY), 1..=3),
                1..=6,
            )
        ) {
            let atoms = ["p", "q", "r", "s"];
            let mut clausifier = Clausifier::new();
            let mut inputs = Vec::new();
            for lits in &spec {
                let mut parts: Vec<String> = Vec::new();
                for (a, positive) in lits {
                    parts.push(format!("{}{}(c)", if *positive { "" } else { "-" }, atoms[*a]));
                }
                let f = parse_formula(&parts.join(" | ")).unwrap();
                inputs.extend(clausifier.clausify(&f, Provenance::InputAxiom));
            }
            let satisfiable = clauses_satisfiable_ground(&inputs).unwrap();
            let result = prove(&inputs, &ProverConfig::default());
            match result.outcome {
                Outcome::Refuted(proof) => {
                    prop_assert!(!satisfiable, "refuted a satisfiable set");
                    prop_assert!(check_proof(&proof, &inputs).is_ok());
                    let condensed = condense(&proof);
                    prop_assert!(check_proof(&condensed, &inputs).is_ok());
                }
                Outcome::Saturated => prop_assert!(satisfiable, "saturated on an unsatisfiable set"),
                Outcome::ResourceLimit => prop_assert!(false, "budget too small for ground case"),
            }
        }
    }
}
