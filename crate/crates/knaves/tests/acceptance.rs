//! End-to-end acceptance battery. One test runs eleven independent
//! checks over the full pipeline and prints a PASS or FAIL line for
//! each; the test fails if any check does.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use knaves::chart::ChartParser;
use knaves::fol::{
    clauses_satisfiable_ground, clausify_formula, eval_ground, parse_formula, satisfiable_ground,
    Atom, Clause, Clausifier, DerivedRule, Formula, HyperStep, Literal, Provenance, Term,
    TheoryFile,
};
use knaves::grammar::{parse_grammar, person_rules};
use knaves::lambda::{beta_reduce, parse_sem, to_formula, LambdaTerm};
use knaves::models::{all_models, ground};
use knaves::prover::{check_proof, condense, proof_dot, prove, Outcome, Proof, ProverConfig};
use knaves::solve::{refutation_inputs, solve, Answer, SolverConfig, YesNo, DEFAULT_GRAMMAR};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

#[test]
fn acceptance() {
    let checks: [(&str, Check); 11] = [
        ("two-knight puzzle has exactly one model, found in under two seconds", c1),
        ("compound question gets a Yes with a checkable refutation and a DOT file", c2),
        ("case-split goal is proved and holds in every enumerated model", c3),
        ("six-question battery answers with checked refutations", c4),
        ("beta reduction applies a conjunctive property to its argument", c5),
        ("comparatives parse, agreement violations do not, wh-answer is right", c6),
        ("random island theories: enumerated models equal brute force", c7),
        ("proof search succeeds exactly on goals true in every model", c8),
        ("clausification preserves ground satisfiability", c9),
        ("every bundled puzzle matches its recorded solution", c10),
        ("emitted proofs verify, condensed and by hand", c11),
    ];
    let mut failures = 0;
    for (i, (label, run)) in checks.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}: {label} [{detail}]", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {}: {label} [{why}]", i + 1);
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance check(s) failed");
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn puzzle(name: &str) -> Result<String, String> {
    std::fs::read_to_string(corpus_dir().join(name)).map_err(|e| format!("reading {name}: {e}"))
}

/// Solves `text` with `question` appended and returns the last answer's
/// verdict, its proof, and the refutation inputs the proof stands on.
fn answered(text: &str, question: &str) -> Result<(YesNo, Option<Proof>, Vec<Clause>), String> {
    let merged = format!("{text}\n{question}");
    let report = solve(&merged, &SolverConfig::default()).map_err(|e| e.to_string())?;
    let goal = report.theory.goals.last().ok_or("no yes/no goal was recorded')")?;
    let qa = report.answers.last().ok_or("the question produced no answer")?;
    let Answer::YesNo { verdict, proof } = &qa.answer else {
        return Err(format!("`{question}` was not read as a yes/no question"));
    };
    let inputs = refutation_inputs(&report.theory.assumptions, goal, *verdict)
        .unwrap_or_default();
    Ok((*verdict, proof.clone(), inputs))
}

// 1. The two-inhabitant puzzle where both turn out to be knights.
fn c1() -> Result<String, String> {
    let text = puzzle("01-marge-homer.txt")?;
    let started = Instant::now();
    let report = solve(&text, &SolverConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    ensure(report.models.len() == 1, format!("{} models", report.models.len()))?;
    ensure(report.verdict("marge") == Some("knight"), "marge is not a knight")?;
    ensure(report.verdict("homer") == Some("knight"), "homer is not a knight")?;
    ensure(elapsed < Duration::from_secs(2), format!("took {} ms", elapsed.as_millis()))?;
    Ok(format!("{} ms", elapsed.as_millis()))
}

// 2. A conjunctive question over the anonymous-speakers puzzle, answered
// with a refutation that verifies, ends in the empty clause, and renders
// to DOT both from the library and through the binary.
fn c2() -> Result<String, String> {
    let text = puzzle("03-both-knaves.txt")?;
    let question = "Is the first one a knave and the second one a knight?";

    let report = solve(&text, &SolverConfig::default()).map_err(|e| e.to_string())?;
    ensure(report.models.len() == 1, format!("{} models", report.models.len()))?;
    ensure(report.verdict("a") == Some("knave"), "first speaker is not a knave")?;
    ensure(report.verdict("b") == Some("knight"), "second speaker is not a knight")?;

    let (verdict, proof, inputs) = answered(&text, question)?;
    ensure(verdict == YesNo::Yes, format!("verdict {verdict}"))?;
    let proof = proof.ok_or("no proof came back with the Yes")?;
    check_proof(&proof, &inputs).map_err(|e| format!("verification: {e}"))?;
    let last = proof.clauses.last().ok_or("empty proof")?;
    ensure(last.id == proof.empty && last.is_empty(), "proof does not end in the empty clause")?;
    valid_dot(&proof_dot(&proof))?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dot_path = dir.path().join("refutation.dot");
    let out = Command::new(env!("CARGO_BIN_EXE_knaves"))
        .arg("ask")
        .arg(corpus_dir().join("03-both-knaves.txt"))
        .arg(question)
        .arg("--emit-proof")
        .arg(&dot_path)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        out.status.success(),
        format!("binary failed: {}", String::from_utf8_lossy(&out.stderr)),
    )?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(stdout.contains("Yes"), format!("binary answered `{}`", stdout.trim()))?;
    let dot = std::fs::read_to_string(&dot_path).map_err(|e| e.to_string())?;
    valid_dot(&dot)?;
    Ok(format!("{} clauses in the refutation", proof.clauses.len()))
}

fn valid_dot(dot: &str) -> Result<(), String> {
    ensure(dot.starts_with("digraph"), "DOT output does not start with digraph")?;
    let open = dot.matches('{').count();
    let close = dot.matches('}').count();
    ensure(open == close && open > 0, format!("unbalanced braces: {open} vs {close}"))?;
    ensure(dot.contains("->"), "DOT output has no edges")
}

// 3. A goal that needs a case split: provable even though the deciding
// atom differs between models.
fn c3() -> Result<String, String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/theories/friends.in");
    let file = TheoryFile::load(&path).map_err(|e| e.to_string())?;
    let goal = file.goals.first().ok_or("theory file has no goal")?;

    let inputs = refutation_inputs(&file.assumptions, goal, YesNo::Yes)
        .ok_or("no refutation inputs")?;
    let result = prove(&inputs, &ProverConfig::default());
    let Outcome::Refuted(proof) = result.outcome else {
        return Err("the goal was not proved".to_string());
    };
    check_proof(&proof, &inputs).map_err(|e| format!("verification: {e}"))?;

    let domain: Vec<String> = ["monica", "ross", "rachel"].map(String::from).to_vec();
    let mut clausifier = Clausifier::new();
    let mut clauses: Vec<Clause> = Vec::new();
    for f in &file.assumptions {
        clauses.extend(clausifier.clausify(f, Provenance::InputAxiom));
    }
    let mut theory = ground(&clauses, &domain).map_err(|e| e.to_string())?;
    // The assumptions never mention whether ross is married; add the
    // atom so the enumeration shows both cases.
    let ross = Atom::pred("married", vec![Term::cst("ross")]);
    if !theory.atoms.contains(&ross) {
        theory.atoms.push(ross.clone());
    }
    let models = all_models(&theory, 64).map_err(|e| e.to_string())?;
    ensure(models.len() == 2, format!("{} models, expected the two ross cases", models.len()))?;
    let mut saw = [false, false];
    for m in &models {
        let yes = m.satisfies(goal, &domain).map_err(|e| e.to_string())?;
        ensure(yes, format!("goal fails in model {m}"))?;
        saw[usize::from(m.holds(&ross) == Some(true))] = true;
    }
    ensure(saw[0] && saw[1], "only one ross case was enumerated")?;
    Ok(format!("proved in {} steps, true in both models", proof.clauses.len()))
}

// 4. Six questions over the truth-teller-and-liar pair, each answer
// backed by a refutation that verifies.
fn c4() -> Result<String, String> {
    let text = puzzle("02-sue-alice.txt")?;
    let battery = [
        ("Is Sue a knight?", YesNo::Yes),
        ("Does Alice lie?", YesNo::Yes),
        ("Is Alice a knave?", YesNo::Yes),
        ("Are Alice and Sue different?", YesNo::Yes),
        ("Are Alice and Sue the same?", YesNo::No),
        ("Are Alice and Sue both knights?", YesNo::No),
    ];
    for (question, want) in battery {
        let (verdict, proof, inputs) = answered(&text, question)?;
        ensure(verdict == want, format!("`{question}`: got {verdict}, want {want}"))?;
        let proof = proof.ok_or(format!("`{question}`: settled without a proof"))?;
        check_proof(&proof, &inputs).map_err(|e| format!("`{question}`: {e}"))?;
    }
    Ok("6 answers, 6 checked refutations".to_string())
}

// 5. Applying a lambda-abstracted conjunction to an individual.
fn c5() -> Result<String, String> {
    let walk = LambdaTerm::app(LambdaTerm::sym("walk"), LambdaTerm::var("x"));
    let chew = LambdaTerm::app(LambdaTerm::sym("chew_gum"), LambdaTerm::var("x"));
    let property = LambdaTerm::lam("x", LambdaTerm::And(Box::new(walk), Box::new(chew)));
    let applied = LambdaTerm::app(property, LambdaTerm::sym("gerald"));

    let reduced = beta_reduce(&applied).map_err(|e| e.to_string())?;
    let formula = to_formula(&reduced).map_err(|e| e.to_string())?;
    ensure(
        formula.to_string() == "walk(gerald) & chew_gum(gerald)",
        format!("reduced to `{formula}`"),
    )?;
    let built = Formula::and(
        Formula::pred("walk", vec![Term::cst("gerald")]),
        Formula::pred("chew_gum", vec![Term::cst("gerald")]),
    );
    ensure(formula == built, "reduction differs structurally from the built formula")?;

    // The same term written in the semantic sublanguage.
    let spelled = parse_sem(r"(\x. walk(x) & chew_gum(x))(gerald)").map_err(|e| e.to_string())?;
    let again = to_formula(&beta_reduce(&spelled).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(again == formula, format!("parsed spelling reduced to `{again}`"))?;
    Ok(format!("{formula}"))
}

// 6. The comparative fragment: grammaticality, agreement, and the
// wh-question over a two-fact height puzzle.
fn c6() -> Result<String, String> {
    let mut grammar = parse_grammar(DEFAULT_GRAMMAR).map_err(|e| e.to_string())?;
    let cast: Vec<String> = ["kevin", "diana", "maria"].map(String::from).to_vec();
    for rule in person_rules(&cast) {
        grammar.add_rule(rule);
    }
    let parser = ChartParser::new(&grammar);

    let good: Vec<String> = "kevin is taller than diana".split(' ').map(String::from).collect();
    let (_, formula) = parser
        .sentence_formula(&good, "S")
        .map_err(|e| format!("`kevin is taller than diana`: {e}"))?;
    ensure(
        formula == parse_formula("taller(kevin, diana)").unwrap(),
        format!("parsed to `{formula}`"),
    )?;

    let bad: Vec<String> = "maria are the tallest".split(' ').map(String::from).collect();
    ensure(
        parser.parse_as(&bad, "S").is_err(),
        "`maria are the tallest` parsed despite the agreement violation",
    )?;

    let text = puzzle("18-shortest.txt")?;
    let report = solve(&text, &SolverConfig::default()).map_err(|e| e.to_string())?;
    let who = report
        .answers
        .iter()
        .find_map(|qa| match &qa.answer {
            Answer::Who { persons, .. } => Some(persons.clone()),
            _ => None,
        })
        .ok_or("no wh-answer came back")?;
    ensure(who == vec!["maria".to_string()], format!("who = {who:?}"))?;
    Ok("1 parse, 0 parses, maria".to_string())
}

// 7. Random theories over up to four islanders: the model enumerator
// must agree with brute force over every knight/knave stamping.
fn c7() -> Result<String, String> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let names = ["ada", "bix", "cam", "dot"];
    let mut theories = 0usize;
    let mut model_count = 0usize;
    for _ in 0..120 {
        let n = rng.gen_range(1..=4usize);
        let cast: Vec<String> = names[..n].iter().map(|s| s.to_string()).collect();
        let mut axioms: Vec<Formula> = Vec::new();
        for p in &cast {
            let knight = Formula::pred("knight", vec![Term::cst(p.clone())]);
            let knave = Formula::pred("knave", vec![Term::cst(p.clone())]);
            axioms.push(Formula::or(knight.clone(), knave.clone()));
            axioms.push(Formula::not(Formula::and(knight, knave)));
        }
        for p in &cast {
            if rng.gen_bool(0.8) {
                let content = island_formula(&mut rng, &cast, 2);
                axioms.push(Formula::iff(
                    Formula::pred("knight", vec![Term::cst(p.clone())]),
                    content,
                ));
            }
        }

        let mut clausifier = Clausifier::new();
        let mut clauses: Vec<Clause> = Vec::new();
        for f in &axioms {
            clauses.extend(clausifier.clausify(f, Provenance::InputAxiom));
        }
        let theory = ground(&clauses, &cast).map_err(|e| e.to_string())?;
        let models = all_models(&theory, 4096).map_err(|e| e.to_string())?;
        let got: BTreeSet<BTreeSet<Atom>> = models
            .iter()
            .map(|m| {
                m.assignment
                    .iter()
                    .filter(|(_, v)| **v)
                    .map(|(a, _)| a.clone())
                    .collect()
            })
            .collect();

        // Brute force: stamp every islander knight or knave and keep the
        // stampings where every axiom evaluates true.
        let mut want: BTreeSet<BTreeSet<Atom>> = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let mut tru: BTreeSet<Atom> = BTreeSet::new();
            for (i, p) in cast.iter().enumerate() {
                let kind = if mask & (1 << i) != 0 { "knight" } else { "knave" };
                tru.insert(Atom::pred(kind, vec![Term::cst(p.clone())]));
            }
            if axioms.iter().all(|f| eval_ground(f, &tru) == Ok(true)) {
                want.insert(tru);
            }
        }
        ensure(
            got == want,
            format!("theory over {cast:?}: {} enumerated vs {} brute-forced", got.len(), want.len()),
        )?;
        theories += 1;
        model_count += got.len();
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(60), format!("took {} ms", elapsed.as_millis()))?;
    Ok(format!("{theories} theories, {model_count} models, {} ms", elapsed.as_millis()))
}

/// Random closed formula over knight/knave atoms of the cast.
fn island_formula(rng: &mut ChaCha8Rng, cast: &[String], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        let p = &cast[rng.gen_range(0..cast.len())];
        let kind = if rng.gen_bool(0.5) { "knight" } else { "knave" };
        let atom = Formula::pred(kind, vec![Term::cst(p.clone())]);
        return if rng.gen_bool(0.25) { Formula::not(atom) } else { atom };
    }
    let l = island_formula(rng, cast, depth - 1);
    let r = island_formula(rng, cast, depth - 1);
    match rng.gen_range(0..4) {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        2 => Formula::implies(l, r),
        _ => Formula::iff(l, r),
    }
}

// 8. Soundness and completeness on the bundled puzzles: for generated
// ground goals, a refutation exists exactly when the goal holds in
// every model of the puzzle's theory.
fn c8() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let limited = ProverConfig { max_clauses: 2_000, max_iterations: 400 };
    let mut entailed = 0usize;
    let mut open = 0usize;
    for file in corpus_texts()? {
        let name = file.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        let text = std::fs::read_to_string(&file).map_err(|e| format!("{name}: {e}"))?;
        let report = solve(&text, &SolverConfig::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure(!report.models.is_empty(), format!("{name}: no models"))?;

        let atoms: Vec<Atom> = report.models[0].assignment.keys().cloned().collect();
        let mut goals: Vec<Formula> = Vec::new();
        let settled = atoms
            .iter()
            .find(|a| report.models[0].holds(a) == Some(true))
            .ok_or(format!("{name}: model with no true atom"))?;
        goals.push(Formula::Atom(settled.clone()));
        goals.push(Formula::not(Formula::Atom(settled.clone())));
        for _ in 0..3 {
            goals.push(ground_goal(&mut rng, &atoms, 2));
        }

        for goal in goals {
            let holds = report
                .models
                .iter()
                .all(|m| m.satisfies(&goal, &report.persons) == Ok(true));
            let inputs = refutation_inputs(&report.theory.assumptions, &goal, YesNo::Yes)
                .ok_or("no refutation inputs")?;
            if holds {
                let result = prove(&inputs, &ProverConfig::default());
                let Outcome::Refuted(proof) = result.outcome else {
                    return Err(format!("{name}: entailed goal `{goal}` was not proved"));
                };
                check_proof(&proof, &inputs).map_err(|e| format!("{name}: `{goal}`: {e}"))?;
                entailed += 1;
            } else {
                // Soundness holds at any budget: a satisfiable set must
                // not refute, however little search is allowed.
                let result = prove(&inputs, &limited);
                ensure(
                    !matches!(result.outcome, Outcome::Refuted(_)),
                    format!("{name}: open goal `{goal}` was proved"),
                )?;
                open += 1;
            }
        }
    }
    ensure(entailed > 0 && open > 0, "goal generation never exercised both directions")?;
    Ok(format!("{entailed} entailed goals proved, {open} open goals unproved"))
}

/// Random ground formula over the given atoms.
fn ground_goal(rng: &mut ChaCha8Rng, atoms: &[Atom], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.4) {
        let atom = Formula::Atom(atoms[rng.gen_range(0..atoms.len())].clone());
        return if rng.gen_bool(0.3) { Formula::not(atom) } else { atom };
    }
    let l = ground_goal(rng, atoms, depth - 1);
    let r = ground_goal(rng, atoms, depth - 1);
    match rng.gen_range(0..4) {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        2 => Formula::implies(l, r),
        _ => Formula::iff(l, r),
    }
}

fn corpus_texts() -> Result<Vec<PathBuf>, String> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "txt"))
        .collect();
    files.sort();
    ensure(files.len() >= 20, format!("only {} bundled puzzles", files.len()))?;
    Ok(files)
}

// 9. Clausification agrees with direct truth-table evaluation on
// satisfiability, over random ground formulas.
fn c9() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let atoms: Vec<Atom> =
        (0..6).map(|i| Atom::pred(format!("p{i}"), vec![Term::cst("c")])).collect();
    let mut sat = 0usize;
    let mut unsat = 0usize;
    for round in 0..220 {
        let mut formula = random_formula(&mut rng, &atoms, 3);
        // Every tenth round force a contradiction so both outcomes occur.
        if round % 10 == 0 {
            formula = Formula::and(formula.clone(), Formula::not(formula));
        }
        let direct = satisfiable_ground(&formula).map_err(|e| e.to_string())?;
        let clauses = clausify_formula(&formula);
        let via_clauses = clauses_satisfiable_ground(&clauses).map_err(|e| e.to_string())?;
        ensure(
            direct == via_clauses,
            format!("`{formula}`: table says {direct}, clauses say {via_clauses}"),
        )?;
        if direct {
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    ensure(sat > 0 && unsat > 0, "generation never exercised both outcomes")?;
    Ok(format!("220 formulas: {sat} satisfiable, {unsat} not"))
}

fn random_formula(rng: &mut ChaCha8Rng, atoms: &[Atom], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        let atom = Formula::Atom(atoms[rng.gen_range(0..atoms.len())].clone());
        return if rng.gen_bool(0.3) { Formula::not(atom) } else { atom };
    }
    let l = random_formula(rng, atoms, depth - 1);
    let r = random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..5) {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        2 => Formula::implies(l, r),
        3 => Formula::iff(l, r),
        _ => Formula::not(Formula::and(l, r)),
    }
}

// 10. The whole corpus solves to the recorded solutions, and the
// bundled checker agrees with a clean report.
fn c10() -> Result<String, String> {
    let recorded = std::fs::read_to_string(corpus_dir().join("expected.tsv"))
        .map_err(|e| e.to_string())?;
    let mut rows = 0usize;
    for line in recorded.lines().filter(|l| !l.trim().is_empty()) {
        let (name, solution) =
            line.split_once('\t').ok_or(format!("bad solutions row `{line}`"))?;
        let text = puzzle(&format!("{name}.txt"))?;
        let report =
            solve(&text, &SolverConfig::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.models.len() == 1, format!("{name}: {} models", report.models.len()))?;
        for field in solution.split_whitespace() {
            let (key, value) =
                field.split_once('=').ok_or(format!("{name}: bad field `{field}`"))?;
            if key == "who" {
                let who = report
                    .answers
                    .iter()
                    .find_map(|qa| match &qa.answer {
                        Answer::Who { persons, .. } => Some(persons.clone()),
                        _ => None,
                    })
                    .ok_or(format!("{name}: no wh-answer"))?;
                ensure(who == vec![value.to_string()], format!("{name}: who = {who:?}"))?;
            } else {
                ensure(
                    report.verdict(key) == Some(value),
                    format!("{name}: {key} is {:?}, recorded {value}", report.verdict(key)),
                )?;
            }
        }
        rows += 1;
    }
    ensure(rows >= 20, format!("only {rows} recorded solutions"))?;

    let out = Command::new(env!("CARGO_BIN_EXE_knaves"))
        .arg("check")
        .arg(corpus_dir())
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        out.status.success(),
        format!("checker failed: {}", String::from_utf8_lossy(&out.stderr)),
    )?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    for needle in [
        format!("{rows} puzzles, {rows} solved (100.0%)"),
        "person recognition failures: 0".to_string(),
        "parsing failures: 0".to_string(),
        "reasoning failures: 0".to_string(),
    ] {
        ensure(stdout.contains(&needle), format!("checker output lacks `{needle}`"))?;
    }
    Ok(format!("{rows} puzzles, checker reports a clean sweep"))
}

// 11. Proof checking: every proof the earlier checks produce still
// verifies after condensation, and a refutation written out by hand,
// composite step included, passes the same checker.
fn c11() -> Result<String, String> {
    let mut bundle: Vec<(String, Proof, Vec<Clause>)> = Vec::new();

    let text = puzzle("03-both-knaves.txt")?;
    let (verdict, proof, inputs) =
        answered(&text, "Is the first one a knave and the second one a knight?")?;
    ensure(verdict == YesNo::Yes, format!("verdict {verdict}"))?;
    bundle.push(("ask".to_string(), proof.ok_or("no ask proof")?, inputs));

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/theories/friends.in");
    let file = TheoryFile::load(&path).map_err(|e| e.to_string())?;
    let goal = file.goals.first().ok_or("theory file has no goal")?;
    let inputs = refutation_inputs(&file.assumptions, goal, YesNo::Yes)
        .ok_or("no refutation inputs")?;
    match prove(&inputs, &ProverConfig::default()).outcome {
        Outcome::Refuted(proof) => bundle.push(("theory".to_string(), proof, inputs)),
        _ => return Err("the theory goal was not proved".to_string()),
    }

    let pair = puzzle("02-sue-alice.txt")?;
    for question in [
        "Is Sue a knight?",
        "Does Alice lie?",
        "Are Alice and Sue the same?",
        "Are Alice and Sue both knights?",
    ] {
        let (verdict, proof, inputs) = answered(&pair, question)?;
        ensure(verdict != YesNo::Unknown, format!("`{question}` stayed unknown"))?;
        bundle.push((format!("`{question}`"), proof.ok_or("missing proof")?, inputs));
    }

    let mut composites = 0usize;
    for (label, proof, inputs) in &bundle {
        check_proof(proof, inputs).map_err(|e| format!("{label}: {e}"))?;
        let condensed = condense(proof);
        check_proof(&condensed, inputs).map_err(|e| format!("{label} condensed: {e}"))?;
        composites += condensed
            .clauses
            .iter()
            .filter(|c| {
                matches!(
                    &c.provenance,
                    Provenance::Derived { rule: DerivedRule::HyperResolve { .. }, .. }
                )
            })
            .count();
    }
    ensure(composites > 0, "condensation never produced a composite step")?;

    let (inputs, proof) = hand_refutation();
    check_proof(&proof, &inputs).map_err(|e| format!("hand proof: {e}"))?;

    // A tampered copy must be rejected.
    let mut broken = proof.clone();
    for clause in &mut broken.clauses {
        if clause.id == 15 {
            *clause = Clause::new(
                15,
                vec![Literal::pos(Atom::pred("knave", vec![Term::cst("b")]))],
                clause.provenance.clone(),
            );
        }
    }
    ensure(check_proof(&broken, &inputs).is_err(), "a tampered proof was accepted")?;

    Ok(format!(
        "{} proofs verified, {composites} composite steps, hand proof accepted",
        bundle.len() + 1
    ))
}

/// The anonymous-speakers refutation written out clause by clause: from
/// `a` announcing that both speakers are knaves, conclude that `a` is a
/// knave and `b` a knight. The final step folds two unit satellites
/// into one composite inference.
fn hand_refutation() -> (Vec<Clause>, Proof) {
    let var = |n: &str| Term::var(n);
    let cst = |n: &str| Term::cst(n);
    let p1 = |name: &str, t: Term| Atom::pred(name, vec![t]);
    let pos = |a: Atom| Literal::pos(a);
    let neg = |a: Atom| Literal::neg(a);
    let input = |id: usize, lits: Vec<Literal>| Clause::new(id, lits, Provenance::InputAxiom);
    // Index of a literal in a clause's stored order.
    let at = |c: &Clause, l: &Literal| {
        c.literals.iter().position(|x| x == l).expect("literal is in the clause")
    };

    // The island, the two speakers, and `m`: what `a` announced is true.
    let everyone = input(
        1,
        vec![
            neg(p1("inhabitant", var("x"))),
            pos(p1("knight", var("x"))),
            pos(p1("knave", var("x"))),
        ],
    );
    let not_both = input(2, vec![neg(p1("knight", var("y"))), neg(p1("knave", var("y")))]);
    let msg_a = input(3, vec![neg(p1("m", cst("a"))), pos(p1("knave", cst("a")))]);
    let msg_b = input(4, vec![neg(p1("m", cst("a"))), pos(p1("knave", cst("b")))]);
    let msg_back = input(
        5,
        vec![pos(p1("m", cst("a"))), neg(p1("knave", cst("a"))), neg(p1("knave", cst("b")))],
    );
    let knights_truthful = input(6, vec![neg(p1("knight", var("x"))), pos(p1("m", var("x")))]);
    let knaves_lie = input(7, vec![neg(p1("knave", var("x"))), neg(p1("m", var("x")))]);
    let a_here = input(8, vec![pos(p1("inhabitant", cst("a")))]);
    let b_here = input(9, vec![pos(p1("inhabitant", cst("b")))]);
    let denial = Clause::new(
        10,
        vec![neg(p1("knave", cst("a"))), neg(p1("knight", cst("b")))],
        Provenance::NegatedGoal,
    );

    let resolve = |id: usize,
                   lits: Vec<Literal>,
                   left: &Clause,
                   ll: &Literal,
                   right: &Clause,
                   rl: &Literal| {
        Clause::new(
            id,
            lits,
            Provenance::Derived {
                rule: DerivedRule::Resolve { left_lit: at(left, ll), right_lit: at(right, rl) },
                parents: vec![left.id, right.id],
            },
        )
    };

    // a is knight or knave; a knight a would make the announcement true.
    let a_kind = resolve(
        11,
        vec![pos(p1("knight", cst("a"))), pos(p1("knave", cst("a")))],
        &everyone,
        &neg(p1("inhabitant", var("x"))),
        &a_here,
        &pos(p1("inhabitant", cst("a"))),
    );
    let a_knave_or_true = resolve(
        12,
        vec![pos(p1("knave", cst("a"))), pos(p1("m", cst("a")))],
        &a_kind,
        &pos(p1("knight", cst("a"))),
        &knights_truthful,
        &neg(p1("knight", var("x"))),
    );
    // Either way a is a knave; so the announcement is false; so b is
    // not a knave; so b is a knight, and the denial collapses.
    let a_knave = resolve(
        13,
        vec![pos(p1("knave", cst("a")))],
        &a_knave_or_true,
        &pos(p1("m", cst("a"))),
        &msg_a,
        &neg(p1("m", cst("a"))),
    );
    let not_both_knaves = resolve(
        14,
        vec![neg(p1("knave", cst("a"))), neg(p1("knave", cst("b")))],
        &knaves_lie,
        &neg(p1("m", var("x"))),
        &msg_back,
        &pos(p1("m", cst("a"))),
    );
    let b_not_knave = resolve(
        15,
        vec![neg(p1("knave", cst("b")))],
        &not_both_knaves,
        &neg(p1("knave", cst("a"))),
        &a_knave,
        &pos(p1("knave", cst("a"))),
    );
    let b_kind = resolve(
        16,
        vec![pos(p1("knight", cst("b"))), pos(p1("knave", cst("b")))],
        &everyone,
        &neg(p1("inhabitant", var("x"))),
        &b_here,
        &pos(p1("inhabitant", cst("b"))),
    );
    let b_knave_or_a_not = resolve(
        17,
        vec![neg(p1("knave", cst("a"))), pos(p1("knave", cst("b")))],
        &denial,
        &neg(p1("knight", cst("b"))),
        &b_kind,
        &pos(p1("knight", cst("b"))),
    );

    // Fold both units into the remaining clause at once.
    let step1 = HyperStep {
        satellite: a_knave.id,
        satellite_lit: at(&a_knave, &pos(p1("knave", cst("a")))),
        target_lit: at(&b_knave_or_a_not, &neg(p1("knave", cst("a")))),
    };
    // After the first fold one literal remains.
    let step2 = HyperStep {
        satellite: b_not_knave.id,
        satellite_lit: at(&b_not_knave, &neg(p1("knave", cst("b")))),
        target_lit: 0,
    };
    let empty = Clause::new(
        18,
        Vec::new(),
        Provenance::Derived {
            rule: DerivedRule::HyperResolve { steps: vec![step1, step2] },
            parents: vec![b_knave_or_a_not.id, a_knave.id, b_not_knave.id],
        },
    );

    let inputs = vec![
        everyone.clone(),
        not_both.clone(),
        msg_a.clone(),
        msg_b.clone(),
        msg_back.clone(),
        knights_truthful.clone(),
        knaves_lie.clone(),
        a_here.clone(),
        b_here.clone(),
        denial.clone(),
    ];
    let clauses = vec![
        everyone,
        not_both,
        msg_a,
        msg_b,
        msg_back,
        knights_truthful,
        knaves_lie,
        a_here,
        b_here,
        denial,
        a_kind,
        a_knave_or_true,
        a_knave,
        not_both_knaves,
        b_not_knave,
        b_kind,
        b_knave_or_a_not,
        empty,
    ];
    (inputs, Proof { clauses, empty: 18 })
}
