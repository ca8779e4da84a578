//! Line-oriented regression corpus.
//!
//! One entry per line: `<id> <level> <kind> <payload> => <expectation>`.
//! Blank lines and lines starting with `#` are ignored. The payload ends at
//! the last ` => ` of the line.
//!
//! | kind        | payload     | expectations                          |
//! |-------------|-------------|---------------------------------------|
//! | `sequent`   | `Γ \|- A`   | `provable`, `not-provable`            |
//! | `judgment`  | `ctx \|- t` | `type A`, `error <TypeErrorKind>`     |
//! | `normalize` | `ctx \|- t` | `nf <term>` (up to α)                 |
//! | `embed`     | `ctx \|- t` | `preserved`                           |

use std::fmt;

use crate::ill::preservation_report;
use crate::rewrite::{check_peaks, normalize, Mode, RewriteError};
use crate::sequent::{check_derivation, prove, ProveOutcome, SearchBudget};
use crate::syntax::{
    alpha_eq, parse_formula, parse_judgment, parse_sequent, parse_term, CalculusLevel, Formula,
    Judgment, Sequent, Term,
};
use crate::typing::{subject_reduction_report, typecheck, TypeErrorKind};
use crate::Exec;

/// The golden corpus shipped with the crate.
pub const GOLDEN: &str = include_str!("../corpus/golden.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Sequent(Sequent),
    Judgment(Judgment),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    Provable,
    NotProvable,
    Type(Formula),
    TypeError(TypeErrorKind),
    NormalForm(Term),
    Preserved,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    /// 1-based line number in the source file.
    pub line: usize,
    pub level: CalculusLevel,
    pub payload: Payload,
    pub expectation: Expectation,
}

impl CorpusEntry {
    pub fn kind(&self) -> &'static str {
        match (&self.payload, &self.expectation) {
            (Payload::Sequent(_), _) => "sequent",
            (_, Expectation::NormalForm(_)) => "normalize",
            (_, Expectation::Preserved) => "embed",
            _ => "judgment",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct CorpusError {
    pub line: usize,
    pub message: String,
}

pub fn type_error_kind(name: &str) -> Option<TypeErrorKind> {
    use TypeErrorKind::*;
    [
        UnboundVar,
        OrderViolation,
        NonLinearUse,
        ConnectiveAtWrongLevel,
        Mismatch,
        PromoteArity,
    ]
    .into_iter()
    .find(|k| format!("{k:?}") == name)
}

fn parse_line(line: usize, text: &str) -> Result<CorpusEntry, CorpusError> {
    let bad = |message: String| CorpusError { line, message };
    let (head, expect) = text
        .rsplit_once(" => ")
        .ok_or_else(|| bad("missing ` => `".into()))?;
    let mut rest = head.trim();
    let mut word = || {
        let (w, r) = rest.split_once(char::is_whitespace)?;
        rest = r.trim_start();
        Some(w)
    };
    let (id, level, kind) = match (word(), word(), word()) {
        (Some(i), Some(l), Some(k)) => (i, l, k),
        _ => return Err(bad("expected `<id> <level> <kind> <payload>`".into())),
    };
    let payload = rest;
    let level = CalculusLevel::from_name(level).ok_or_else(|| bad(format!("unknown level {level}")))?;
    let expect = expect.trim();
    let (word, rest) = expect
        .split_once(char::is_whitespace)
        .map_or((expect, ""), |(w, r)| (w, r.trim()));
    let judgment = || parse_judgment(payload).map_err(|e| bad(format!("payload: {e}")));
    let (payload, expectation) = match (kind, word) {
        ("sequent", "provable" | "not-provable") => {
            let s = parse_sequent(payload).map_err(|e| bad(format!("payload: {e}")))?;
            let e = if word == "provable" {
                Expectation::Provable
            } else {
                Expectation::NotProvable
            };
            (Payload::Sequent(s), e)
        }
        ("judgment", "type") => {
            let a = parse_formula(rest).map_err(|e| bad(format!("expectation: {e}")))?;
            (Payload::Judgment(judgment()?), Expectation::Type(a))
        }
        ("judgment", "error") => {
            let k = type_error_kind(rest).ok_or_else(|| bad(format!("unknown type error {rest}")))?;
            (Payload::Judgment(judgment()?), Expectation::TypeError(k))
        }
        ("normalize", "nf") => {
            let t = parse_term(rest).map_err(|e| bad(format!("expectation: {e}")))?;
            (Payload::Judgment(judgment()?), Expectation::NormalForm(t))
        }
        ("embed", "preserved") if rest.is_empty() => (Payload::Judgment(judgment()?), Expectation::Preserved),
        ("sequent" | "judgment" | "normalize" | "embed", _) => {
            return Err(bad(format!("expectation `{expect}` does not fit kind {kind}")))
        }
        _ => return Err(bad(format!("unknown kind {kind}"))),
    };
    Ok(CorpusEntry {
        id: id.to_string(),
        line,
        level,
        payload,
        expectation,
    })
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .map(|(i, l)| parse_line(i + 1, l))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub budget: SearchBudget,
    pub fuel: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budget: SearchBudget::default(),
            fuel: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Indeterminate(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Indeterminate(_) => "indeterminate",
        }
    }
}

pub fn run_entry(e: &CorpusEntry, cfg: &RunConfig) -> Verdict {
    match (&e.payload, &e.expectation) {
        (Payload::Sequent(s), want) => match prove(s, e.level, cfg.budget) {
            ProveOutcome::Found(d) => match (check_derivation(&d, e.level), want) {
                (Err(err), _) => Verdict::Fail(format!("prover returned an invalid derivation: {err}")),
                (Ok(_), Expectation::Provable) => Verdict::Pass,
                (Ok(_), _) => Verdict::Fail("found a derivation".into()),
            },
            ProveOutcome::NotProvable if *want == Expectation::NotProvable => Verdict::Pass,
            ProveOutcome::NotProvable => Verdict::Fail("not provable".into()),
            ProveOutcome::BudgetExceeded => Verdict::Indeterminate("search budget exceeded".into()),
        },
        (Payload::Judgment(j), Expectation::Type(a)) => match typecheck(&j.context, &j.term, e.level) {
            Ok(b) if &b == a => Verdict::Pass,
            Ok(b) => Verdict::Fail(format!("has type {b}")),
            Err(err) => Verdict::Fail(err.to_string()),
        },
        (Payload::Judgment(j), Expectation::TypeError(k)) => match typecheck(&j.context, &j.term, e.level) {
            Err(err) if err.kind == *k => Verdict::Pass,
            Err(err) => Verdict::Fail(err.to_string()),
            Ok(b) => Verdict::Fail(format!("typechecks as {b}")),
        },
        (Payload::Judgment(j), Expectation::NormalForm(nf)) => normal_form(j, e.level, nf, cfg.fuel),
        (Payload::Judgment(j), Expectation::Preserved) => {
            let r = preservation_report(&[(j.context.clone(), j.term.clone(), e.level)], Exec::Sequential);
            if r.ok() {
                Verdict::Pass
            } else {
                Verdict::Fail(r.to_string().lines().last().unwrap_or_default().to_string())
            }
        }
        (Payload::Judgment(_), exp) => Verdict::Fail(format!("{exp:?} does not apply to a judgment")),
    }
}

/// Checks the normal form, that the term keeps its type along the way and
/// that its one-step peaks join.
fn normal_form(j: &Judgment, level: CalculusLevel, want: &Term, fuel: usize) -> Verdict {
    let sr = match subject_reduction_report(&j.context, &j.term, level) {
        Ok(r) => r,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    if !sr.ok() {
        return Verdict::Fail(format!("{} reducts change type", sr.violations.len()));
    }
    match normalize(&j.term, fuel) {
        Ok(n) if !alpha_eq(&n.term, want) => Verdict::Fail(format!("normal form is {}", n.term)),
        Ok(n) => match typecheck(&j.context, &n.term, level) {
            Ok(b) if b == sr.ty => {
                let (_, failures) = check_peaks(&j.term, fuel, Mode::Lambek);
                if failures.is_empty() {
                    Verdict::Pass
                } else {
                    Verdict::Fail(format!("{} peaks do not join", failures.len()))
                }
            }
            Ok(b) => Verdict::Fail(format!("normal form has type {b}")),
            Err(e) => Verdict::Fail(format!("normal form: {e}")),
        },
        Err(RewriteError::FuelExhausted { steps, .. }) => {
            Verdict::Indeterminate(format!("fuel exhausted after {steps} steps"))
        }
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusReport {
    pub results: Vec<(CorpusEntry, Verdict)>,
}

impl CorpusReport {
    pub fn count(&self, label: &str) -> usize {
        self.results.iter().filter(|(_, v)| v.label() == label).count()
    }

    pub fn passed(&self) -> usize {
        self.count("pass")
    }

    pub fn failed(&self) -> usize {
        self.count("fail")
    }

    pub fn indeterminate(&self) -> usize {
        self.count("indeterminate")
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0 && self.indeterminate() == 0
    }

    pub fn machine(&self) -> String {
        let mut out = String::new();
        for (e, v) in &self.results {
            out.push_str(&format!("record=entry id={} line={} kind={} result={}", e.id, e.line, e.kind(), v.label()));
            if let Verdict::Fail(m) | Verdict::Indeterminate(m) = v {
                out.push_str(&format!(" detail={m:?}"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "record=summary entries={} passed={} failed={} indeterminate={}\n",
            self.results.len(),
            self.passed(),
            self.failed(),
            self.indeterminate()
        ));
        out
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, v) in &self.results {
            match v {
                Verdict::Pass => writeln!(f, "pass  {} ({})", e.id, e.kind())?,
                Verdict::Fail(m) => writeln!(f, "FAIL  {} (line {}): {m}", e.id, e.line)?,
                Verdict::Indeterminate(m) => writeln!(f, "????  {} (line {}): {m}", e.id, e.line)?,
            }
        }
        write!(
            f,
            "{} entries: {} passed, {} failed, {} indeterminate",
            self.results.len(),
            self.passed(),
            self.failed(),
            self.indeterminate()
        )
    }
}

/// Runs every entry; results stay in corpus order.
pub fn run_corpus(entries: &[CorpusEntry], cfg: &RunConfig, exec: Exec) -> CorpusReport {
    let verdicts = exec.map(entries, |e| run_entry(e, cfg));
    CorpusReport {
        results: entries.iter().cloned().zip(verdicts).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let text = "# comment\n\
            s1 l sequent a, a \\ b |- b => provable\n\
            \n\
            j1 l judgment x:a, y:b |- y * x => error OrderViolation\n\
            j2 l judgment |- \\r x:a. x => type a \\ a\n\
            n1 l normalize y:a |- appl (\\l x:a. x) y => nf y\n\
            e1 l embed y:a |- appl (\\l x:a. x) y => preserved\n";
        let es = parse_corpus(text).unwrap();
        assert_eq!(es.len(), 5);
        assert_eq!(es[0].line, 2);
        assert_eq!(
            es.iter().map(CorpusEntry::kind).collect::<Vec<_>>(),
            ["sequent", "judgment", "judgment", "normalize", "embed"]
        );
        let r = run_corpus(&es, &RunConfig::default(), Exec::Sequential);
        assert!(r.ok(), "{r}");
    }

    #[test]
    fn malformed_lines_are_rejected() {
        for bad in [
            "s1 l sequent a |- a",
            "s1 q sequent a |- a => provable",
            "s1 l sequent a |- a => type a",
            "s1 l frob a |- a => provable",
            "j1 l judgment x:a |- x => error Nope",
            "s1 l sequent a |- => provable",
        ] {
            assert!(parse_corpus(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn flipped_expectation_fails() {
        let es = parse_corpus("s1 l sequent a, b |- b * a => provable").unwrap();
        let r = run_corpus(&es, &RunConfig::default(), Exec::Sequential);
        assert_eq!(r.failed(), 1);
        assert!(!r.ok());
    }

    #[test]
    fn empty_corpus() {
        let r = run_corpus(&parse_corpus("# nothing\n").unwrap(), &RunConfig::default(), Exec::Parallel);
        assert_eq!((r.results.len(), r.ok()), (0, true));
    }

    #[test]
    fn golden_corpus_parses() {
        assert!(parse_corpus(GOLDEN).unwrap().len() >= 50);
    }
}
