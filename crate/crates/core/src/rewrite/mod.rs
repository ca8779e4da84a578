//! Reduction, normalization and joinability for the term calculi.
//!
//! Redexes are listed in leftmost-outermost order (preorder over
//! [`Term::children`]); `normalize` always contracts the first one.

mod rules;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::syntax::sexp::term_to_sexp;
use crate::syntax::{alpha_eq, alpha_normalize, render_path, Path, Term};

pub use rules::{contract, Mode, RewriteRule};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Redex {
    pub path: Path,
    pub rule: RewriteRule,
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.rule, render_path(&self.path))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("no {rule} redex at {}", render_path(path))]
    InvalidRedex { path: Path, rule: RewriteRule },
    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted { steps: usize, term: Term },
}

pub fn redexes(t: &Term) -> Vec<Redex> {
    redexes_in(t, Mode::Lambek)
}

pub fn redexes_in(t: &Term, mode: Mode) -> Vec<Redex> {
    let mut out = Vec::new();
    collect(t, mode, &mut Vec::new(), &mut out, false);
    out
}

fn collect(t: &Term, mode: Mode, path: &mut Path, out: &mut Vec<Redex>, first_only: bool) {
    for rule in RewriteRule::ALL {
        if contract(t, rule, mode).is_some() {
            out.push(Redex {
                path: path.clone(),
                rule,
            });
            if first_only {
                return;
            }
        }
    }
    for (i, c) in t.children().into_iter().enumerate() {
        if first_only && !out.is_empty() {
            return;
        }
        path.push(i);
        collect(c, mode, path, out, first_only);
        path.pop();
    }
}

pub fn first_redex(t: &Term, mode: Mode) -> Option<Redex> {
    let mut out = Vec::new();
    collect(t, mode, &mut Vec::new(), &mut out, true);
    out.pop()
}

pub fn step(t: &Term, r: &Redex) -> Result<Term, RewriteError> {
    step_in(t, r, Mode::Lambek)
}

pub fn step_in(t: &Term, r: &Redex, mode: Mode) -> Result<Term, RewriteError> {
    let invalid = || RewriteError::InvalidRedex {
        path: r.path.clone(),
        rule: r.rule,
    };
    let sub = t.subterm(&r.path).ok_or_else(invalid)?;
    let new = contract(sub, r.rule, mode).ok_or_else(invalid)?;
    let mut out = t.clone();
    *out.subterm_mut(&r.path).unwrap() = new;
    Ok(out)
}

/// All one-step reducts, paired with the redex contracted.
pub fn reducts(t: &Term, mode: Mode) -> Vec<(Redex, Term)> {
    redexes_in(t, mode)
        .into_iter()
        .map(|r| {
            let u = step_in(t, &r, mode).expect("listed redex contracts");
            (r, u)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceLine {
    pub rule: RewriteRule,
    pub path: Path,
    pub term: Term,
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} @ {} : {}",
            self.rule,
            render_path(&self.path),
            term_to_sexp(&self.term)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub term: Term,
    pub steps: usize,
}

pub fn normalize(t: &Term, fuel: usize) -> Result<Normalized, RewriteError> {
    normalize_in(t, fuel, Mode::Lambek, None)
}

/// Normalizes under `mode`, appending one line per step to `trace` if given.
pub fn normalize_in(
    t: &Term,
    fuel: usize,
    mode: Mode,
    mut trace: Option<&mut Vec<TraceLine>>,
) -> Result<Normalized, RewriteError> {
    let mut cur = t.clone();
    let mut steps = 0;
    while let Some(r) = first_redex(&cur, mode) {
        if steps == fuel {
            return Err(RewriteError::FuelExhausted { steps, term: cur });
        }
        cur = step_in(&cur, &r, mode)?;
        steps += 1;
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(TraceLine {
                rule: r.rule,
                path: r.path,
                term: cur.clone(),
            });
        }
    }
    Ok(Normalized { term: cur, steps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Joinability {
    Joinable,
    NotJoinable,
    /// Fuel or the conversion search bound ran out.
    Indeterminate,
}

pub const CONVERSION_SEARCH_BOUND: usize = 10_000;

pub fn joinable(t1: &Term, t2: &Term, fuel: usize) -> Joinability {
    joinable_in(t1, t2, fuel, Mode::Lambek)
}

/// Normalizes both terms and compares the normal forms up to α-equivalence
/// and the commuting conversions, the latter by breadth-first search over
/// conversion steps in both directions.
pub fn joinable_in(t1: &Term, t2: &Term, fuel: usize, mode: Mode) -> Joinability {
    let (n1, n2) = match (
        normalize_in(t1, fuel, mode, None),
        normalize_in(t2, fuel, mode, None),
    ) {
        (Ok(a), Ok(b)) => (a.term, b.term),
        _ => return Joinability::Indeterminate,
    };
    if alpha_eq(&n1, &n2) {
        return Joinability::Joinable;
    }
    let target = alpha_normalize(&n2);
    let start = alpha_normalize(&n1);
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for next in conversion_neighbours(&cur) {
            let next = alpha_normalize(&next);
            if next == target {
                return Joinability::Joinable;
            }
            if seen.insert(next.clone()) {
                if seen.len() > CONVERSION_SEARCH_BOUND {
                    return Joinability::Indeterminate;
                }
                queue.push_back(next);
            }
        }
    }
    Joinability::NotJoinable
}

/// Terms one commuting conversion away from `t`, in either direction.
fn conversion_neighbours(t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    walk_conversions(t, t, &mut path, &mut out);
    out
}

fn walk_conversions(root: &Term, t: &Term, path: &mut Path, out: &mut Vec<Term>) {
    let mut replace = |new: Term| {
        let mut r = root.clone();
        *r.subterm_mut(path).unwrap() = new;
        out.push(r);
    };
    if let Some((_, u)) = rules::hoist(t) {
        replace(u);
    }
    if let Some(u) = rules::unhoist(t) {
        replace(u);
    }
    for (i, c) in t.children().into_iter().enumerate() {
        path.push(i);
        walk_conversions(root, c, path, out);
        path.pop();
    }
}

#[derive(Clone, Debug)]
pub struct PeakFailure {
    pub left: Redex,
    pub right: Redex,
    pub outcome: Joinability,
}

/// Checks every pair of distinct one-step reducts of `t` for joinability.
pub fn check_peaks(t: &Term, fuel: usize, mode: Mode) -> (usize, Vec<PeakFailure>) {
    let rs = reducts(t, mode);
    let mut checked = 0;
    let mut failures = Vec::new();
    for i in 0..rs.len() {
        for j in i + 1..rs.len() {
            checked += 1;
            let outcome = joinable_in(&rs[i].1, &rs[j].1, fuel, mode);
            if outcome != Joinability::Joinable {
                failures.push(PeakFailure {
                    left: rs[i].0.clone(),
                    right: rs[j].0.clone(),
                    outcome,
                });
            }
        }
    }
    (checked, failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{free_vars, parse_term};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn nf(s: &str) -> Term {
        normalize(&t(s), 1000).unwrap().term
    }

    #[test]
    fn redex_listing() {
        assert_eq!(
            redexes(&t("appl (\\l x:a. x) y")),
            vec![Redex {
                path: vec![],
                rule: RewriteRule::BetaL
            }]
        );
        assert!(redexes(&t("unit")).is_empty());
        assert_eq!(
            redexes(&t("derelict! (promote! z for x in x)"))[0].rule,
            RewriteRule::BetaDR
        );
    }

    #[test]
    fn basic_steps() {
        assert_eq!(nf("appl (\\l x:a. x) y"), t("y"));
        assert_eq!(nf("let unit be unit in w"), t("w"));
        assert_eq!(nf("derelictk (promotek z for x in x)"), t("z"));
        let r = normalize(&t("appl (\\l x:a. x) (appl (\\l y:b. y) z)"), 10).unwrap();
        assert_eq!((r.term, r.steps), (t("z"), 2));
        assert_eq!(normalize(&t("y"), 1).unwrap().steps, 0);
    }

    #[test]
    fn tensor_lets() {
        assert_eq!(nf("let a * b be x * y in y * x"), t("b * a"));
        assert_eq!(
            nf("let (a * b) * c be (x * y) * z in x * (y * z)"),
            t("a * (b * c)")
        );
        assert_eq!(nf("let unit * c be unit * z in z"), t("c"));
        assert_eq!(nf("let unit be - in c"), t("c"));
    }

    #[test]
    fn beta_t2_avoids_capture() {
        // x is free in the second component and bound by the first pattern.
        let r = nf("let (p * q) * x be (x * y) * z in (x * y) * z");
        assert_eq!(r, t("(p * q) * x"));
    }

    #[test]
    fn commuting_conversion_hoists_let() {
        let s = t("let (let u be a * b in a * b) be c * d in c * d");
        let rs = redexes(&s);
        assert_eq!(rs[0].rule, RewriteRule::NatT);
        let out = step(&s, &rs[0]).unwrap();
        assert_eq!(out, t("let u be a * b in let a * b be c * d in c * d"));
    }

    #[test]
    fn modal_steps() {
        assert_eq!(nf("discard (promote! u, v for x, y in x) in w"), t("discard u in discard v in w"));
        let out = nf("copy (promote! u for x in derelict! x) as y, z in y * z");
        assert_eq!(
            out,
            t("copy u as x$0, x$1 in (promote! x$0 for x in derelict! x) * (promote! x$1 for x in derelict! x)")
        );
        // Two sources: no ordered contractum.
        let two = t("copy (promote! u, v for x, w in x) as y, z in y * z");
        assert!(redexes(&two).is_empty());
        assert_eq!(redexes_in(&two, Mode::Ill)[0].rule, RewriteRule::BetaC);
    }

    #[test]
    fn joinability_of_let_peak() {
        let s = t("let (appl (\\l x:a. x) y) be unit in unit");
        let (n, fails) = check_peaks(&s, 100, Mode::Lambek);
        assert!(fails.is_empty());
        let _ = n;
        assert_eq!(joinable(&s, &s, 10), Joinability::Joinable);
        assert_eq!(joinable(&t("x"), &t("y"), 10), Joinability::NotJoinable);
        let loopy = t("appl (\\l x:a. x) y");
        assert_eq!(joinable(&loopy, &loopy, 0), Joinability::Indeterminate);
    }

    #[test]
    fn conversions_join_in_both_directions() {
        let a = t("let u be unit in let v be unit in w");
        let b = t("let v be unit in let u be unit in w");
        // Both are normal; they differ only by where the lets sit, which the
        // conversions cannot reorder, so they must not join.
        assert_eq!(joinable(&a, &b, 10), Joinability::NotJoinable);
    }

    #[test]
    fn steps_preserve_free_variables() {
        let s = t("appl (\\l x:a. \\l y:b. appl x y) y");
        let out = nf("appl (\\l x:a. \\l y:b. appl x y) y");
        assert_eq!(free_vars(&s), free_vars(&out));
    }

    #[test]
    fn trace_lines() {
        let mut tr = Vec::new();
        normalize_in(&t("appl (\\l x:a. x) y"), 5, Mode::Lambek, Some(&mut tr)).unwrap();
        assert_eq!(tr[0].to_string(), "BetaL @ root : (var y)");
    }
}
