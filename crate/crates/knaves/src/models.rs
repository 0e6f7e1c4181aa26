//! Model enumeration over the island's finite cast.
//!
//! A puzzle's persons form a known finite domain with unique names, so
//! its models can be enumerated outright:
//!
//! 1. [`expand_quantifiers`] replaces `all x`/`exists x` with finite
//!    conjunctions and disjunctions over the cast, leaving a ground
//!    formula and, downstream, ground clauses with no Skolem terms;
//! 2. [`ground`] maps those clauses to propositional form, deciding
//!    equality literals by unique names on the way;
//! 3. [`all_models`] enumerates every satisfying assignment with a DPLL
//!    search: unit propagation plus splitting, false branch first, so
//!    models come out in a fixed lexicographic order.
//!
//! [`consensus`] then reports which atoms hold in every model, the basis
//! for answering `Who is a knight?` questions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::fol::{eval_ground, Atom, Clause, Formula, Substitution, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("cannot ground `{term}`: function symbols have no finite-domain value")]
    FunctionTerm { term: String },
    #[error("empty domain")]
    EmptyDomain,
    #[error("clause has {vars} variables; grounding over {domain} elements is too large")]
    TooManyVariables { vars: usize, domain: usize },
    #[error("more than {limit} models; raise the model limit if this is expected")]
    LimitExceeded { limit: usize },
    #[error("evaluating a formula in a model: {msg}")]
    Eval { msg: String },
}

/// Replaces every quantifier by a finite conjunction or disjunction over
/// the domain constants. The result is ground whenever the input's free
/// variables were all quantified.
pub fn expand_quantifiers(f: &Formula, domain: &[String]) -> Result<Formula, ModelError> {
    if domain.is_empty() {
        return Err(ModelError::EmptyDomain);
    }
    let out = match f {
        Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(expand_quantifiers(g, domain)?),
        Formula::And(l, r) => {
            Formula::and(expand_quantifiers(l, domain)?, expand_quantifiers(r, domain)?)
        }
        Formula::Or(l, r) => {
            Formula::or(expand_quantifiers(l, domain)?, expand_quantifiers(r, domain)?)
        }
        Formula::Implies(l, r) => {
            Formula::implies(expand_quantifiers(l, domain)?, expand_quantifiers(r, domain)?)
        }
        Formula::Iff(l, r) => {
            Formula::iff(expand_quantifiers(l, domain)?, expand_quantifiers(r, domain)?)
        }
        Formula::Forall(v, body) => {
            Formula::and_all(instances(v, body, domain)?)
        }
        Formula::Exists(v, body) => {
            Formula::or_all(instances(v, body, domain)?)
        }
    };
    Ok(out)
}

fn instances(v: &str, body: &Formula, domain: &[String]) -> Result<Vec<Formula>, ModelError> {
    domain
        .iter()
        .map(|c| {
            let mut sub = Substitution::new();
            sub.bind(v, Term::cst(c.as_str()));
            expand_quantifiers(&body.substitute(&sub), domain)
        })
        .collect()
}

/// A clause set mapped to propositional form. Atom indices follow the
/// sorted order of the atom displays, so everything downstream is
/// deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTheory {
    pub atoms: Vec<Atom>,
    pub clauses: Vec<Vec<(usize, bool)>>,
}

const MAX_GROUND_VARS: usize = 6;

/// Grounds clauses over the domain: free clause variables range over the
/// constants, equality literals are decided by unique names, and clauses
/// that become trivially true are dropped.
pub fn ground(clauses: &[Clause], domain: &[String]) -> Result<GroundTheory, ModelError> {
    if domain.is_empty() {
        return Err(ModelError::EmptyDomain);
    }
    let mut atoms: Vec<Atom> = Vec::new();
    let mut raw: Vec<Vec<(Atom, bool)>> = Vec::new();
    for clause in clauses {
        let vars = clause.vars();
        if vars.len() > MAX_GROUND_VARS {
            return Err(ModelError::TooManyVariables { vars: vars.len(), domain: domain.len() });
        }
        let mut picks = vec![0usize; vars.len()];
        loop {
            let mut sub = Substitution::new();
            for (v, &k) in vars.iter().zip(&picks) {
                sub.bind(v, Term::cst(domain[k].as_str()));
            }
            if let Some(ground_clause) = ground_one(&clause.apply(&sub), &mut atoms)? {
                if !raw.contains(&ground_clause) {
                    raw.push(ground_clause);
                }
            }
            // Advance the mixed-radix counter over domain picks.
            let mut i = 0;
            loop {
                if i == picks.len() {
                    break;
                }
                picks[i] += 1;
                if picks[i] < domain.len() {
                    break;
                }
                picks[i] = 0;
                i += 1;
            }
            if i == picks.len() {
                break;
            }
        }
    }
    atoms.sort();
    let index: BTreeMap<&Atom, usize> = atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut out: Vec<Vec<(usize, bool)>> = Vec::new();
    for lits in raw {
        let mut clause: Vec<(usize, bool)> =
            lits.iter().map(|(a, pos)| (index[a], *pos)).collect();
        clause.sort();
        clause.dedup();
        if !out.contains(&clause) {
            out.push(clause);
        }
    }
    out.sort();
    Ok(GroundTheory { atoms, clauses: out })
}

/// One fully instantiated clause: `None` when it is trivially true.
fn ground_one(
    lits: &[crate::fol::Literal],
    atoms: &mut Vec<Atom>,
) -> Result<Option<Vec<(Atom, bool)>>, ModelError> {
    let mut out: Vec<(Atom, bool)> = Vec::new();
    for lit in lits {
        match &lit.atom {
            Atom::Eq(l, r) => {
                check_flat(l)?;
                check_flat(r)?;
                // Unique names: the literal is decided on the spot.
                if (l == r) == lit.positive {
                    return Ok(None);
                }
            }
            Atom::Pred(_, args) => {
                args.iter().try_for_each(check_flat)?;
                let entry = (lit.atom.clone(), lit.positive);
                let opposite = (lit.atom.clone(), !lit.positive);
                if out.contains(&opposite) {
                    return Ok(None);
                }
                if !out.contains(&entry) {
                    out.push(entry);
                }
                if !atoms.contains(&lit.atom) {
                    atoms.push(lit.atom.clone());
                }
            }
        }
    }
    Ok(Some(out))
}

fn check_flat(t: &Term) -> Result<(), ModelError> {
    match t {
        Term::Var(_) | Term::Const(_) => Ok(()),
        Term::App(..) => Err(ModelError::FunctionTerm { term: t.to_string() }),
    }
}

/// A total truth assignment to the theory's atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub assignment: BTreeMap<Atom, bool>,
}

impl Interpretation {
    pub fn holds(&self, a: &Atom) -> Option<bool> {
        self.assignment.get(a).copied()
    }

    /// Whether a closed formula is true here, with quantifiers ranging
    /// over `domain`. Atoms the assignment does not mention are false.
    pub fn satisfies(&self, f: &Formula, domain: &[String]) -> Result<bool, ModelError> {
        let expanded = expand_quantifiers(f, domain)?;
        let tru: BTreeSet<Atom> = self
            .assignment
            .iter()
            .filter(|(_, v)| **v)
            .map(|(a, _)| a.clone())
            .collect();
        eval_ground(&expanded, &tru).map_err(|e| ModelError::Eval { msg: e.to_string() })
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (atom, value) in &self.assignment {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}{atom}", if *value { "" } else { "-" })?;
        }
        Ok(())
    }
}

pub const DEFAULT_MODEL_LIMIT: usize = 4096;

/// Every model of the ground theory, in lexicographic order of the
/// assignment with false before true.
pub fn all_models(theory: &GroundTheory, limit: usize) -> Result<Vec<Interpretation>, ModelError> {
    let mut assign: Vec<Option<bool>> = vec![None; theory.atoms.len()];
    let mut out: Vec<Vec<bool>> = Vec::new();
    search(theory, &mut assign, limit, &mut out)?;
    Ok(out
        .into_iter()
        .map(|values| Interpretation {
            assignment: theory.atoms.iter().cloned().zip(values).collect(),
        })
        .collect())
}

fn search(
    theory: &GroundTheory,
    assign: &mut Vec<Option<bool>>,
    limit: usize,
    out: &mut Vec<Vec<bool>>,
) -> Result<(), ModelError> {
    // Unit propagation to fixpoint; the trail remembers what to undo.
    let mut trail: Vec<usize> = Vec::new();
    let mut conflict = false;
    loop {
        let mut changed = false;
        for clause in &theory.clauses {
            let mut satisfied = false;
            let mut unassigned: Option<(usize, bool)> = None;
            let mut open = 0;
            for &(atom, positive) in clause {
                match assign[atom] {
                    Some(v) if v == positive => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        open += 1;
                        unassigned = Some((atom, positive));
                    }
                }
            }
            if satisfied {
                continue;
            }
            match (open, unassigned) {
                (0, _) => {
                    conflict = true;
                    break;
                }
                (1, Some((atom, positive))) => {
                    assign[atom] = Some(positive);
                    trail.push(atom);
                    changed = true;
                }
                _ => {}
            }
        }
        if conflict || !changed {
            break;
        }
    }
    if !conflict {
        match assign.iter().position(|v| v.is_none()) {
            None => {
                if out.len() == limit {
                    // Undo before erroring so callers see a clean state.
                    for atom in trail {
                        assign[atom] = None;
                    }
                    return Err(ModelError::LimitExceeded { limit });
                }
                out.push(assign.iter().map(|v| v.unwrap()).collect());
            }
            Some(atom) => {
                for value in [false, true] {
                    assign[atom] = Some(value);
                    let result = search(theory, assign, limit, out);
                    assign[atom] = None;
                    if let Err(e) = result {
                        for atom in trail {
                            assign[atom] = None;
                        }
                        return Err(e);
                    }
                }
            }
        }
    }
    for atom in trail {
        assign[atom] = None;
    }
    Ok(())
}

/// For each atom, its truth value when all models agree on it, `None`
/// where they differ. Empty input gives an empty map.
pub fn consensus(models: &[Interpretation]) -> BTreeMap<Atom, Option<bool>> {
    let mut out: BTreeMap<Atom, Option<bool>> = BTreeMap::new();
    if let Some(first) = models.first() {
        for (atom, &value) in &first.assignment {
            out.insert(atom.clone(), Some(value));
        }
        for model in &models[1..] {
            for (atom, &value) in &model.assignment {
                match out.get(atom) {
                    Some(Some(v)) if *v != value => {
                        out.insert(atom.clone(), None);
                    }
                    Some(_) => {}
                    None => {
                        out.insert(atom.clone(), None);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{
        clauses_satisfiable_ground, clausify_formula, eval_clause_ground, parse_formula,
        Literal,
    };
    use std::collections::BTreeSet;

    fn names(ss: &[&str]) -> Vec<String> {
        ss.iter().map(|s| s.to_string()).collect()
    }

    fn theory_of(texts: &[&str], domain: &[&str]) -> GroundTheory {
        let domain = names(domain);
        let mut clauses = Vec::new();
        for t in texts {
            let f = parse_formula(t).unwrap();
            let g = expand_quantifiers(&f.universal_closure(), &domain).unwrap();
            clauses.extend(clausify_formula(&g));
        }
        ground(&clauses, &domain).unwrap()
    }

    #[test]
    fn quantifiers_expand_over_the_cast() {
        let d = names(&["a", "b"]);
        let f = parse_formula("exists x knight(x)").unwrap();
        assert_eq!(
            expand_quantifiers(&f, &d).unwrap().to_string(),
            "knight(a) | knight(b)"
        );
        let f = parse_formula("all x (knight(x) <-> -knave(x))").unwrap();
        assert_eq!(
            expand_quantifiers(&f, &d).unwrap().to_string(),
            "(knight(a) <-> -knave(a)) & (knight(b) <-> -knave(b))"
        );
    }

    #[test]
    fn nested_quantifiers_expand_inside_out() {
        let d = names(&["a", "b"]);
        let f = parse_formula("all x (exists y like(x, y))").unwrap();
        assert_eq!(
            expand_quantifiers(&f, &d).unwrap().to_string(),
            "(like(a,a) | like(a,b)) & (like(b,a) | like(b,b))"
        );
    }

    #[test]
    fn equality_literals_are_decided_by_unique_names() {
        // all x (x = a) over two elements: the instance for b reduces to
        // an empty clause, so there is no model.
        let t = theory_of(&["all x (x = a)"], &["a", "b"]);
        assert_eq!(t.clauses, vec![Vec::new()]);
        assert!(all_models(&t, 16).unwrap().is_empty());
        // A disequality that holds vanishes together with its clause.
        let t = theory_of(&["a != b"], &["a", "b"]);
        assert!(t.clauses.is_empty());
        assert_eq!(all_models(&t, 16).unwrap().len(), 1);
    }

    #[test]
    fn function_terms_are_rejected() {
        let f = parse_formula("knight(f(a))").unwrap();
        let clauses = clausify_formula(&f);
        assert_eq!(
            ground(&clauses, &names(&["a"])),
            Err(ModelError::FunctionTerm { term: "f(a)".to_string() })
        );
    }

    #[test]
    fn knight_or_knave_gives_two_models_per_person() {
        let t = theory_of(
            &["all x (knight(x) | knave(x))", "all x -(knight(x) & knave(x))"],
            &["a"],
        );
        let models = all_models(&t, 16).unwrap();
        let shown: Vec<String> = models.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, vec!["-knave(a), knight(a)", "knave(a), -knight(a)"]);
    }

    #[test]
    fn both_knights_island_has_one_model() {
        // a says "we are both knights", b says "a and I are of the same
        // kind". Only the island where both are knights satisfies both
        // speaker bridges.
        let t = theory_of(
            &[
                "all x (knight(x) | knave(x))",
                "all x -(knight(x) & knave(x))",
                "knight(a) <-> knight(a) & knight(b)",
                "knight(b) <-> knight(a) & knight(b) | knave(a) & knave(b)",
            ],
            &["a", "b"],
        );
        let models = all_models(&t, 16).unwrap();
        assert_eq!(models.len(), 1);
        let m = &models[0];
        for (name, expect) in
            [("knight", true), ("knave", false)].iter().flat_map(|&(p, v)| {
                [("a", p, v), ("b", p, v)].map(|(c, p, v)| (Atom::pred(p, vec![Term::cst(c)]), v))
            })
        {
            assert_eq!(m.holds(&name), Some(expect), "{name}");
        }
    }

    #[test]
    fn models_come_out_in_lexicographic_order() {
        let t = theory_of(&["p(a) | p(b)"], &["a", "b"]);
        let shown: Vec<String> = all_models(&t, 16)
            .unwrap()
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(
            shown,
            vec!["-p(a), p(b)", "p(a), -p(b)", "p(a), p(b)"]
        );
    }

    #[test]
    fn model_limit_is_enforced() {
        let t = theory_of(
            &["p(a) | q(a) | r(a) | s(a)"],
            &["a"],
        );
        assert_eq!(
            all_models(&t, 3),
            Err(ModelError::LimitExceeded { limit: 3 })
        );
        assert_eq!(all_models(&t, 15).unwrap().len(), 15);
    }

    #[test]
    fn consensus_reports_shared_verdicts() {
        let t = theory_of(&["p(a)", "p(a) | q(a)"], &["a"]);
        let models = all_models(&t, 16).unwrap();
        assert_eq!(models.len(), 2);
        let shared = consensus(&models);
        let p = Atom::pred("p", vec![Term::cst("a")]);
        let q = Atom::pred("q", vec![Term::cst("a")]);
        assert_eq!(shared[&p], Some(true));
        assert_eq!(shared[&q], None);
    }

    #[test]
    fn dpll_agrees_with_the_truth_table_on_fixed_theories() {
        for texts in [
            &["p(a) & -p(a)"][..],
            &["p(a) | q(b)", "-p(a)"][..],
            &["(p(a) <-> q(a)) & (q(a) <-> r(a))", "r(a) | p(a)"][..],
            &["knight(a) <-> knave(a)"][..],
        ] {
            let domain = names(&["a", "b"]);
            let mut clauses = Vec::new();
            for t in texts {
                let f = parse_formula(t).unwrap();
                clauses.extend(clausify_formula(&f));
            }
            let theory = ground(&clauses, &domain).unwrap();
            let models = all_models(&theory, 1024).unwrap();
            assert_eq!(
                clauses_satisfiable_ground(&clauses).unwrap(),
                !models.is_empty(),
                "on {texts:?}"
            );
            // Every reported model really satisfies every clause.
            for m in &models {
                let tru: BTreeSet<Atom> = m
                    .assignment
                    .iter()
                    .filter(|(_, &v)| v)
                    .map(|(a, _)| a.clone())
                    .collect();
                for c in &clauses {
                    assert!(eval_clause_ground(c, &tru).unwrap());
                }
            }
        }
    }

    #[test]
    fn model_count_matches_exhaustive_enumeration() {
        // A pinned case with an awkward mix of forced and free atoms.
        let t = theory_of(
            &["p(a) -> q(a)", "q(a) -> r(a)", "p(b) | q(b)"],
            &["a", "b"],
        );
        let models = all_models(&t, 1024).unwrap();
        // Oracle: walk every assignment of the theory's atoms directly.
        let n = t.atoms.len();
        let mut count = 0usize;
        for mask in 0u32..(1 << n) {
            let ok = t.clauses.iter().all(|c| {
                c.iter().any(|&(atom, pos)| ((mask >> atom) & 1 == 1) == pos)
            });
            if ok {
                count += 1;
            }
        }
        assert_eq!(models.len(), count);
        assert_eq!(models.len(), 12);
    }

    #[test]
    fn duplicate_literals_and_tautologies_vanish_in_grounding() {
        let lits = vec![
            Literal::pos(Atom::pred("p", vec![Term::cst("a")])),
            Literal::pos(Atom::pred("p", vec![Term::cst("a")])),
        ];
        let mut atoms = Vec::new();
        let g = ground_one(&lits, &mut atoms).unwrap().unwrap();
        assert_eq!(g.len(), 1);
        let lits = vec![
            Literal::pos(Atom::pred("p", vec![Term::cst("a")])),
            Literal::neg(Atom::pred("p", vec![Term::cst("a")])),
        ];
        assert_eq!(ground_one(&lits, &mut Vec::new()).unwrap(), None);
    }
}
