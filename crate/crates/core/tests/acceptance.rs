//! Acceptance run: one pass/fail line per criterion.
//!
//! Exits non-zero when a criterion fails, unless the failure is listed in
//! `KNOWN_FAILURES` and matches its description exactly. A listed failure
//! that starts passing also fails the run, so the list cannot go stale.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_sequents, residual_oracle, small_formulas, LOracle};
use lambek::algebra::{
    builtin, enumerate_biclosed, eval_sequent, find_countermodel, library_models, rel_quantale,
    supports, trivial, two, validate, valuations, FinBiclosedPoset, DEFAULT_SEED,
};
use lambek::corpus::{parse_corpus, run_corpus, CorpusEntry, Expectation, Payload, RunConfig, GOLDEN};
use lambek::dialectica::{check_laws, formula_object, interpret, Dial, DialError, DialObject};
use lambek::ill::preservation_report;
use lambek::rewrite::{check_peaks, normalize, Mode};
use lambek::sequent::{check_derivation, eliminate_cut, prove, Derivation, ProveOutcome, SearchBudget};
use lambek::syntax::{parse_sequent, CalculusLevel, Context, Formula, Term};
use lambek::testgen::{cut_derivations, terms};
use lambek::typing::subject_reduction_report;
use lambek::Exec;

const SEED: u64 = 0x1a3b_5eed;
const FUEL: usize = 10_000;

/// Criterion 8 on rel2: the `!` laws multiply multisets in a fixed order on a
/// non-commutative host.
const KNOWN_FAILURES: &[(u32, &str)] = &[(8, "rel2 !-laws order-sensitive")];

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the failure is the documented one for this criterion.
    known: Option<&'static str>,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Outcome {
        Outcome {
            pass,
            detail,
            known: None,
        }
    }
}

/// Found derivations handed from criteria 1 and 2 to criterion 9.
#[derive(Default)]
struct Found {
    derivations: Vec<(Derivation, CalculusLevel)>,
}

fn golden() -> Vec<CorpusEntry> {
    parse_corpus(GOLDEN).expect("golden corpus parses")
}

fn criterion_1(found: &mut Found) -> Outcome {
    let es = golden();
    let report = run_corpus(&es, &RunConfig::default(), Exec::default());
    let required: &[(&str, &str, bool)] = &[
        ("l", "a |- a", true),
        ("l", "|- a \\ a", true),
        ("l", "a, a \\ b |- b", true),
        ("l", "a / b, b |- a", true),
        ("l", "(a * b) * c |- a * (b * c)", true),
        ("l", "a * (b * c) |- (a * b) * c", true),
        ("l", "a, b |- b * a", false),
        ("l", "a * I |- I", false),
        ("l", "a |- I", false),
        ("lkappa", "k a, b |- b * k a", true),
        ("lkappa", "a, k b |- k b * a", true),
        ("lbang", "!a |- I", true),
        ("lbang", "!a |- !a * !a", true),
        ("lbang", "!a |- a", true),
        ("lbang", "!a |- !!a", true),
    ];
    let missing: Vec<String> = required
        .iter()
        .filter(|(level, s, provable)| {
            let s = parse_sequent(s).unwrap();
            let want = if *provable {
                Expectation::Provable
            } else {
                Expectation::NotProvable
            };
            !es.iter().any(|e| {
                e.level.name() == *level && e.payload == Payload::Sequent(s.clone()) && e.expectation == want
            })
        })
        .map(|(l, s, _)| format!("{l}: {s}"))
        .collect();
    for e in &es {
        if let (Payload::Sequent(s), Expectation::Provable) = (&e.payload, &e.expectation) {
            if let ProveOutcome::Found(d) = prove(s, e.level, SearchBudget::default()) {
                found.derivations.push((d, e.level));
            }
        }
    }
    let mut detail = format!(
        "{} entries: {} passed, {} failed, {} indeterminate",
        report.results.len(),
        report.passed(),
        report.failed(),
        report.indeterminate()
    );
    for (e, v) in &report.results {
        if v.label() != "pass" {
            detail.push_str(&format!("; {} {:?}", e.id, v));
        }
    }
    if !missing.is_empty() {
        detail.push_str(&format!("; missing required entries: {}", missing.join(", ")));
    }
    Outcome::new(report.ok() && missing.is_empty(), detail)
}

fn sweep(fs: &[Formula], max_ante: usize, found: &mut Found) -> (usize, usize, Vec<String>) {
    let mut oracle = LOracle::new();
    let mut provable = 0;
    let mut problems = Vec::new();
    let seqs = all_sequents(fs, max_ante);
    for s in &seqs {
        let want = oracle.provable(s);
        provable += want as usize;
        match prove(s, CalculusLevel::L, SearchBudget::default()) {
            ProveOutcome::Found(d) if want => found.derivations.push((d, CalculusLevel::L)),
            ProveOutcome::NotProvable if !want => {}
            other => problems.push(format!("{s}: oracle {want}, prover {}", outcome_name(&other))),
        }
    }
    (seqs.len(), provable, problems)
}

fn outcome_name(o: &ProveOutcome) -> &'static str {
    match o {
        ProveOutcome::Found(_) => "found",
        ProveOutcome::NotProvable => "not provable",
        ProveOutcome::BudgetExceeded => "budget exceeded",
    }
}

fn criterion_2(found: &mut Found) -> Outcome {
    let atoms = [Formula::atom("a"), Formula::atom("b")];
    let (n, p, mut problems) = sweep(&small_formulas(&atoms), 4, found);
    // extra coverage with the unit among the base formulas
    let with_unit = [Formula::atom("a"), Formula::atom("b"), Formula::Unit];
    let (n2, p2, problems2) = sweep(&small_formulas(&with_unit), 2, found);
    problems.extend(problems2);
    let mut detail = format!(
        "{n} sequents over {{a,b}} with <= 4 antecedents, {p} provable; plus {n2} with I and <= 2 antecedents, {p2} provable; {} disagreements",
        problems.len()
    );
    if let Some(first) = problems.first() {
        detail.push_str(&format!(" (first: {first})"));
    }
    Outcome::new(problems.is_empty(), detail)
}

fn criterion_3() -> Outcome {
    let mut total = 0;
    let mut cuts = 0;
    let mut failures = Vec::new();
    for level in CalculusLevel::ALL {
        for (i, d) in cut_derivations(level, 200, SEED).into_iter().enumerate() {
            total += 1;
            cuts += d.count_cuts();
            match eliminate_cut(&d, FUEL) {
                Ok(e) if !e.is_cut_free() => failures.push(format!("{level}#{i}: output has cuts")),
                Ok(e) if e.conclusion != d.conclusion => {
                    failures.push(format!("{level}#{i}: endsequent changed"))
                }
                Ok(e) => {
                    if let Err(err) = check_derivation(&e, level) {
                        failures.push(format!("{level}#{i}: output does not check: {err}"));
                    }
                }
                Err(err) => failures.push(format!("{level}#{i}: {err}")),
            }
        }
    }
    let mut detail = format!(
        "{total} derivations (200 per level, {cuts} cuts), {} failures",
        failures.len()
    );
    if let Some(f) = failures.first() {
        detail.push_str(&format!(" (first: {f})"));
    }
    Outcome::new(failures.is_empty() && total == 800, detail)
}

fn generated(level: CalculusLevel) -> Vec<(Context, Term)> {
    terms(level, 500, SEED ^ level as u64)
        .into_iter()
        .map(|g| (g.context, g.term))
        .collect()
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut reducts = 0;
    let mut violations = Vec::new();
    for level in CalculusLevel::ALL {
        for (ctx, t) in generated(level) {
            checked += 1;
            match subject_reduction_report(&ctx, &t, level) {
                Ok(r) => {
                    reducts += r.reducts_checked;
                    for v in r.violations {
                        violations.push(format!("{level}: {t} via {}", v.redex));
                    }
                }
                Err(e) => violations.push(format!("{level}: generated term ill-typed: {e}")),
            }
        }
    }
    let mut detail = format!(
        "{checked} terms (500 per level), {reducts} one-step reducts retyped, {} violations",
        violations.len()
    );
    if let Some(v) = violations.first() {
        detail.push_str(&format!(" (first: {v})"));
    }
    Outcome::new(violations.is_empty(), detail)
}

/// Typed terms of the golden corpus followed by the generated ones.
fn term_corpus() -> Vec<(Context, Term, CalculusLevel)> {
    let mut out: Vec<(Context, Term, CalculusLevel)> = golden()
        .into_iter()
        .filter_map(|e| match (e.payload, e.expectation) {
            (Payload::Judgment(j), Expectation::Type(_) | Expectation::NormalForm(_) | Expectation::Preserved) => {
                Some((j.context, j.term, e.level))
            }
            _ => None,
        })
        .collect();
    for level in CalculusLevel::ALL {
        out.extend(generated(level).into_iter().map(|(c, t)| (c, t, level)));
    }
    out
}

fn criterion_5() -> Outcome {
    let corpus = term_corpus();
    let mut stuck = Vec::new();
    let mut peaks = 0;
    let mut peak_failures = Vec::new();
    for (_, t, _) in &corpus {
        if let Err(e) = normalize(t, FUEL) {
            stuck.push(format!("{t}: {e}"));
        }
        let (n, fails) = check_peaks(t, FUEL, Mode::Lambek);
        peaks += n;
        peak_failures.extend(fails.into_iter().map(|f| format!("{t}: {f:?}")));
    }
    let mut detail = format!(
        "{} terms, {} not normalized; {peaks} peaks, {} not joinable",
        corpus.len(),
        stuck.len(),
        peak_failures.len()
    );
    if let Some(f) = stuck.first().or(peak_failures.first()) {
        detail.push_str(&format!(" (first: {f})"));
    }
    Outcome::new(stuck.is_empty() && peak_failures.is_empty(), detail)
}

fn criterion_6() -> Outcome {
    let corpus = term_corpus();
    let r = preservation_report(&corpus, Exec::default());
    let beta = r.steps().filter(|s| s.redex.rule.is_beta()).count();
    let longest = r.steps().filter_map(|s| s.target_steps).max().unwrap_or(0);
    let detail = format!(
        "{} judgments, {} typed after embedding; {} steps ({beta} beta), {} failures, longest target path {longest}",
        r.entries.len(),
        r.typed(),
        r.steps().count(),
        r.step_failures()
    );
    Outcome::new(r.ok(), detail)
}

fn mutations(m: &FinBiclosedPoset, count: usize, rng: &mut ChaCha8Rng) -> Vec<(String, FinBiclosedPoset)> {
    let n = m.len();
    let mut out: Vec<(String, FinBiclosedPoset)> = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 10_000 {
        tries += 1;
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut x = m.clone();
        let what = match out.len() % 4 {
            0 => {
                x.op[i][j] = (m.op[i][j] + rng.gen_range(1..n)) % n;
                format!("op[{i}][{j}] := {}", x.op[i][j])
            }
            1 => {
                x.rres[i][j] = (m.rres[i][j] + rng.gen_range(1..n)) % n;
                format!("rres[{i}][{j}] := {}", x.rres[i][j])
            }
            2 => {
                x.lres[i][j] = (m.lres[i][j] + rng.gen_range(1..n)) % n;
                format!("lres[{i}][{j}] := {}", x.lres[i][j])
            }
            _ => {
                x.leq[i][j] = !m.leq[i][j];
                format!("leq[{i}][{j}] := {}", x.leq[i][j])
            }
        };
        if !out.iter().any(|(w, _)| *w == what) {
            out.push((what, x));
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut problems = Vec::new();
    let hosts = [two(), rel_quantale(2)];
    for m in &hosts {
        let r = validate(m);
        if !r.ok() {
            problems.push(format!("{} does not validate: {}", m.label, r.failures[0]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut rejected = 0;
    let mut muts = 0;
    for m in &hosts {
        for (what, x) in mutations(m, 10, &mut rng) {
            muts += 1;
            let r = validate(&x);
            if !r.ok() && r.failures.iter().all(|f| !f.witness.is_empty()) {
                rejected += 1;
            } else {
                problems.push(format!("{} with {what} not rejected with a witness", m.label));
            }
        }
    }
    let mut models = hosts.to_vec();
    let mut enumerated = 0;
    for n in [2, 3] {
        let ms = enumerate_biclosed(n, Exec::default());
        enumerated += ms.len();
        for m in &ms {
            if !validate(m).ok() {
                problems.push(format!("enumerated model {} does not validate", m.label));
            }
        }
        models.extend(ms);
    }
    models.extend(enumerate_biclosed(1, Exec::default()));
    for m in &models {
        if residual_oracle(m, true).as_ref() != Some(&m.rres) || residual_oracle(m, false).as_ref() != Some(&m.lres) {
            problems.push(format!("residuals of {} differ from the oracle", m.label));
        }
    }
    let mut detail = format!(
        "two and rel2 validate; {rejected}/{muts} mutations rejected with witness; residuals match on {} models; enumerate(2,3) gave {enumerated} valid models",
        models.len()
    );
    if let Some(p) = problems.first() {
        detail = format!("{} problems (first: {p})", problems.len());
    }
    Outcome::new(problems.is_empty() && muts == 20, detail)
}

fn criterion_8() -> Outcome {
    let hosts = [trivial(), two(), rel_quantale(2)];
    let mut parts = Vec::new();
    let mut pass = true;
    let mut only_known = true;
    for m in &hosts {
        let r = check_laws(m, 50, 2, SEED, Exec::default());
        let bad: Vec<_> = r.results.iter().filter(|l| !l.ok()).collect();
        let checked: usize = r.results.iter().map(|l| l.checked).sum();
        let bound: usize = r.results.iter().map(|l| l.bound_exceeded).sum();
        let skipped: usize = r.results.iter().map(|l| l.size_skipped).sum();
        if bad.is_empty() && skipped == 0 {
            parts.push(format!("{}: {} laws ok ({checked} instances)", m.label, r.results.len()));
            continue;
        }
        pass = false;
        let known_shape = m.label == "rel2"
            && bound == 0
            && skipped == 0
            && bad
                .iter()
                .all(|l| l.law.starts_with("bang") && l.failed == 0 && l.bound_exceeded == 0);
        only_known &= known_shape;
        let names: Vec<String> = bad
            .iter()
            .map(|l| format!("{} ({} fail, {} order-sensitive of {})", l.law, l.failed, l.order_sensitive, l.checked))
            .collect();
        parts.push(format!(
            "{}: {} laws ok, {} not: {}; bound exceeded {bound}, skipped {skipped}",
            m.label,
            r.results.len() - bad.len(),
            bad.len(),
            names.join(", ")
        ));
    }
    let mut o = Outcome::new(pass, parts.join("; "));
    if !pass && only_known {
        o.known = Some("rel2 !-laws order-sensitive");
    }
    o
}

/// Base objects with carriers of size 1 or 2 for each atom, smaller on retry.
fn atom_objects(dial: &Dial, atoms: &[String], rng: &mut ChaCha8Rng, level: u8) -> BTreeMap<String, DialObject> {
    atoms
        .iter()
        .map(|a| {
            let u = if level == 1 || level >= 3 { 1 } else { rng.gen_range(1..=2) };
            let x = if level >= 2 { 1 } else { rng.gen_range(1..=2) };
            let alpha = (0..u * x).map(|_| rng.gen_range(0..dial.host.len())).collect();
            (a.clone(), dial.base(u, x, alpha).unwrap())
        })
        .collect()
}

fn interpret_check(host: &FinBiclosedPoset, d: &Derivation, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let dial = Dial::new(host).with_exec(Exec::Sequential);
    let s = &d.conclusion;
    let atoms: Vec<String> = s.atoms().into_iter().collect();
    for level in 0..4u8 {
        let objs = atom_objects(&dial, &atoms, rng, level);
        match interpret(&dial, d, &objs, 2) {
            Ok(m) => {
                let target = formula_object(&dial, &s.succedent, &objs, 2).map_err(|e| e.to_string())?;
                let valid = dial
                    .is_morphism(&m.source, &m.target, &m.f, &m.big_f)
                    .map_err(|e| e.to_string())?
                    .is_none();
                if m.target != target || !valid {
                    return Err(format!("{s}: invalid interpretation on {}", host.label));
                }
                return Ok(level > 0);
            }
            Err(DialError::SizeExceeded { .. }) => continue,
            Err(e) => return Err(format!("{s} on {}: {e}", host.label)),
        }
    }
    Err(format!("{s}: too large even with 1x1 atoms"))
}

fn criterion_9(found: &Found) -> Outcome {
    let mut problems = Vec::new();
    let models = library_models();
    let mut evaluations = 0;
    let mut interpretations = 0;
    let mut shrunk = 0;
    let hosts = [builtin("trivial").unwrap(), two(), rel_quantale(2)];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (d, level) in &found.derivations {
        let s = &d.conclusion;
        let atoms: Vec<String> = s.atoms().into_iter().collect();
        for m in models {
            if !supports(m, s) || (level.has_bang() && m.bang.is_none()) || (level.has_kappa() && m.kappa.is_none()) {
                continue;
            }
            for v in valuations(m, &atoms, 200, DEFAULT_SEED) {
                evaluations += 1;
                if eval_sequent(m, &v, s) != Ok(true) {
                    problems.push(format!("{s} fails in {} under {v:?}", m.label));
                }
            }
        }
        for host in &hosts {
            // `!` multiplies in a fixed order; only commutative hosts carry it
            if d.rules_used().iter().any(|r| r.is_bang_rule()) && !host.is_commutative() {
                continue;
            }
            match interpret_check(host, d, &mut rng) {
                Ok(s) => {
                    interpretations += 1;
                    shrunk += s as usize;
                }
                Err(e) => problems.push(e),
            }
        }
    }
    let mut countermodels = 0;
    for e in golden() {
        let Payload::Sequent(s) = &e.payload else { continue };
        let cm = find_countermodel(s, e.level, models, 200, DEFAULT_SEED);
        match (&e.expectation, cm) {
            (Expectation::Provable, Some(c)) => {
                problems.push(format!("{s}: countermodel {} for a provable sequent", c.model.label))
            }
            (Expectation::NotProvable, None) if e.level == CalculusLevel::L => {
                problems.push(format!("{s}: no countermodel for an unprovable sequent"))
            }
            (Expectation::NotProvable, Some(_)) if e.level == CalculusLevel::L => countermodels += 1,
            _ => {}
        }
    }
    let unprovable_l = golden()
        .iter()
        .filter(|e| e.level == CalculusLevel::L && e.expectation == Expectation::NotProvable)
        .count();
    let mut detail = format!(
        "{} derivations: {evaluations} model evaluations, {interpretations} dialectica interpretations ({shrunk} with shrunk atoms); countermodels for {countermodels}/{unprovable_l} unprovable L entries",
        found.derivations.len()
    );
    if let Some(p) = problems.first() {
        detail.push_str(&format!("; {} problems (first: {p})", problems.len()));
    }
    Outcome::new(problems.is_empty() && countermodels == unprovable_l, detail)
}

fn main() -> ExitCode {
    let mut found = Found::default();
    let criteria: Vec<(u32, &str, Duration)> = vec![
        (1, "golden corpus", Duration::from_secs(10)),
        (2, "prover agrees with brute-force oracle", Duration::from_secs(120)),
        (3, "cut elimination", Duration::from_secs(600)),
        (4, "subject reduction", Duration::from_secs(600)),
        (5, "normalization and confluence", Duration::from_secs(600)),
        (6, "embedding preservation", Duration::from_secs(600)),
        (7, "algebra validation", Duration::from_secs(120)),
        (8, "dialectica law suite", Duration::from_secs(300)),
        (9, "soundness cross-check", Duration::from_secs(600)),
    ];
    let mut unexpected = 0;
    let mut known = 0;
    for (id, title, limit) in criteria {
        let start = Instant::now();
        let mut o = match id {
            1 => criterion_1(&mut found),
            2 => criterion_2(&mut found),
            3 => criterion_3(),
            4 => criterion_4(),
            5 => criterion_5(),
            6 => criterion_6(),
            7 => criterion_7(),
            8 => criterion_8(),
            _ => criterion_9(&found),
        };
        let elapsed = start.elapsed();
        if elapsed > limit {
            o.pass = false;
            o.known = None;
            o.detail.push_str(&format!("; over the {}s limit", limit.as_secs()));
        }
        let listed = KNOWN_FAILURES.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        let status = match (o.pass, o.known, listed) {
            (true, _, None) => "PASS",
            (true, _, Some(_)) => {
                unexpected += 1;
                "PASS (listed as a known failure; update the list)"
            }
            (false, Some(k), Some(l)) if k == l => {
                known += 1;
                "FAIL (known)"
            }
            (false, _, _) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("criterion {id} {status}: {title} [{:.1}s] {}", elapsed.as_secs_f64(), o.detail);
    }
    println!("acceptance: {unexpected} unexpected, {known} known failures");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
