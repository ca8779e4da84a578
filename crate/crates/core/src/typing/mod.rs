//! Type checking for the four term calculi and elaboration of typed terms into
//! sequent derivations.
//!
//! Contexts are ordered and every hypothesis is used exactly once. For rules
//! with several subterms the context is split by where each subterm's free
//! variables sit, so no split annotations are needed. When a scrutinee is
//! closed the position of the bound variables is not determined by the
//! context; every position is tried from left to right.
//!
//! The exchange terms follow the E1/E2 rules:
//!
//! ```text
//! Γ1 ⊢ t1 : κA   Γ2 ⊢ t2 : B   Δ1, x:B, y:κA, Δ2 ⊢ t3 : C
//! ---------------------------------------------------------
//!        Δ1, Γ1, Γ2, Δ2 ⊢ exchl t1, t2 with x, y in t3 : C
//!
//! Γ1 ⊢ t1 : A   Γ2 ⊢ t2 : κB   Δ1, x:κB, y:A, Δ2 ⊢ t3 : C
//! ---------------------------------------------------------
//!        Δ1, Γ1, Γ2, Δ2 ⊢ exchr t1, t2 with x, y in t3 : C
//! ```
//!
//! so `x` always stands for `t2` and `y` for `t1`.

mod report;

use std::collections::BTreeSet;
use std::fmt;

use crate::sequent::Derivation;
use crate::syntax::{
    free_occurrences, rename_apart, render_path, CalculusLevel, Context,
    Formula, Pattern, Term,
};

pub use report::{subject_reduction_report, SubjectReductionReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeErrorKind {
    UnboundVar,
    OrderViolation,
    NonLinearUse,
    ConnectiveAtWrongLevel,
    Mismatch,
    PromoteArity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeError {
    pub kind: TypeErrorKind,
    pub location: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} at {}: {}",
            self.kind,
            render_path(&self.location),
            self.detail
        )
    }
}

impl std::error::Error for TypeError {}

fn err<T>(kind: TypeErrorKind, path: &[usize], detail: impl Into<String>) -> Result<T, TypeError> {
    Err(TypeError {
        kind,
        location: path.to_vec(),
        detail: detail.into(),
    })
}

/// Returns the type of `t` in `ctx`.
pub fn typecheck(ctx: &Context, t: &Term, level: CalculusLevel) -> Result<Formula, TypeError> {
    elaborate_typed(ctx, t, level).map(|(a, _)| a)
}

/// A derivation of `(formulas of ctx) ⊢ A` where `A` is the type of `t`.
pub fn elaborate(ctx: &Context, t: &Term, level: CalculusLevel) -> Result<Derivation, TypeError> {
    elaborate_typed(ctx, t, level).map(|(_, d)| d)
}

pub fn elaborate_typed(
    ctx: &Context,
    t: &Term,
    level: CalculusLevel,
) -> Result<(Formula, Derivation), TypeError> {
    check_level(t, level, &mut Vec::new())?;
    for (x, a) in ctx {
        if !a.legal_at(level) {
            return err(
                TypeErrorKind::ConnectiveAtWrongLevel,
                &[],
                format!("hypothesis {x}:{a} is not a {level} formula"),
            );
        }
    }
    let mut seen = BTreeSet::new();
    for (x, _) in ctx {
        if !seen.insert(x) {
            return err(
                TypeErrorKind::NonLinearUse,
                &[],
                format!("variable `{x}` declared twice in the context"),
            );
        }
    }
    synth(ctx, t, &mut Vec::new())
}

fn check_level(t: &Term, level: CalculusLevel, path: &mut Vec<usize>) -> Result<(), TypeError> {
    let bang = matches!(
        t,
        Term::Copy(..) | Term::Discard(..) | Term::PromoteBang(..) | Term::DerelictBang(_)
    );
    let kappa = matches!(
        t,
        Term::ExchL(..) | Term::ExchR(..) | Term::PromoteKappa(..) | Term::DerelictKappa(_)
    );
    if (bang && !level.has_bang()) || (kappa && !level.has_kappa()) {
        return err(
            TypeErrorKind::ConnectiveAtWrongLevel,
            path,
            format!("construct not available at level {level}"),
        );
    }
    if let Term::LamL(_, a, _) | Term::LamR(_, a, _) = t {
        if !a.legal_at(level) {
            return err(
                TypeErrorKind::ConnectiveAtWrongLevel,
                path,
                format!("annotation {a} is not a {level} formula"),
            );
        }
    }
    if let Term::PromoteBang(srcs, xs, _) | Term::PromoteKappa(srcs, xs, _) = t {
        if srcs.len() != xs.len() {
            return err(
                TypeErrorKind::PromoteArity,
                path,
                format!("{} sources for {} variables", srcs.len(), xs.len()),
            );
        }
    }
    for (i, c) in t.children().into_iter().enumerate() {
        path.push(i);
        check_level(c, level, path)?;
        path.pop();
    }
    Ok(())
}

fn names(ctx: &[(String, Formula)]) -> BTreeSet<String> {
    ctx.iter().map(|(x, _)| x.clone()).collect()
}

/// Each hypothesis used exactly once and nothing else free.
fn check_linear(ctx: &[(String, Formula)], t: &Term, path: &[usize]) -> Result<(), TypeError> {
    let occ = free_occurrences(t);
    for x in &occ {
        if !ctx.iter().any(|(y, _)| y == x) {
            return err(TypeErrorKind::UnboundVar, path, format!("`{x}` is not in scope"));
        }
    }
    for (x, _) in ctx {
        let n = occ.iter().filter(|y| *y == x).count();
        if n != 1 {
            return err(
                TypeErrorKind::NonLinearUse,
                path,
                format!("`{x}` is used {n} times"),
            );
        }
    }
    Ok(())
}

/// Candidate start positions of the contiguous block of `ctx` holding exactly
/// the free variables of `t`.
fn locate(ctx: &[(String, Formula)], t: &Term, path: &[usize]) -> Result<Vec<usize>, TypeError> {
    let fv: BTreeSet<String> = free_occurrences(t).into_iter().collect();
    if fv.is_empty() {
        return Ok((0..=ctx.len()).collect());
    }
    let start = ctx.iter().position(|(x, _)| fv.contains(x)).unwrap();
    let block: BTreeSet<String> = ctx[start..(start + fv.len()).min(ctx.len())]
        .iter()
        .map(|(x, _)| x.clone())
        .collect();
    if block != fv {
        return err(
            TypeErrorKind::OrderViolation,
            path,
            "the subterm's hypotheses are not contiguous in the context",
        );
    }
    Ok(vec![start])
}

/// Splits `ctx` into a prefix holding the free variables of `t` and the rest.
fn split_prefix(
    ctx: &[(String, Formula)],
    t: &Term,
    path: &[usize],
) -> Result<usize, TypeError> {
    let fv: BTreeSet<String> = free_occurrences(t).into_iter().collect();
    let n = fv.len();
    if n > ctx.len() || ctx[..n].iter().any(|(x, _)| !fv.contains(x)) {
        return err(
            TypeErrorKind::OrderViolation,
            path,
            "hypotheses appear out of order",
        );
    }
    Ok(n)
}

fn distinct(vars: &[String], path: &[usize]) -> Result<(), TypeError> {
    let set: BTreeSet<&String> = vars.iter().collect();
    if set.len() != vars.len() {
        return err(
            TypeErrorKind::NonLinearUse,
            path,
            "a binder introduces the same variable twice",
        );
    }
    Ok(())
}

fn with_child<T>(path: &mut Vec<usize>, i: usize, f: impl FnOnce(&mut Vec<usize>) -> T) -> T {
    path.push(i);
    let r = f(path);
    path.pop();
    r
}

fn concat(parts: &[&[(String, Formula)]]) -> Vec<(String, Formula)> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// Bindings produced by matching `p` against `a`, left to right.
fn bind_pattern(
    p: &Pattern,
    a: &Formula,
    path: &[usize],
) -> Result<Vec<(String, Formula)>, TypeError> {
    match (p, a) {
        (Pattern::Var(x), _) => Ok(vec![(x.clone(), a.clone())]),
        (Pattern::Unit | Pattern::Wildcard, Formula::Unit) => Ok(vec![]),
        (Pattern::Unit | Pattern::Wildcard, _) => err(
            TypeErrorKind::Mismatch,
            path,
            format!("unit pattern against {a}"),
        ),
        (Pattern::Tensor(p1, p2), Formula::Tensor(a1, a2)) => {
            let mut out = bind_pattern(p1, a1, path)?;
            out.extend(bind_pattern(p2, a2, path)?);
            Ok(out)
        }
        (Pattern::Tensor(..), _) => err(
            TypeErrorKind::Mismatch,
            path,
            format!("tensor pattern against {a}"),
        ),
    }
}

/// Collapses the pattern bindings sitting at `q..` in `d`'s antecedent into a
/// single formula `a` using Tl and Ul.
fn pattern_left(d: Derivation, p: &Pattern, a: &Formula, q: usize) -> Derivation {
    match (p, a) {
        (Pattern::Var(_), _) => d,
        (Pattern::Unit | Pattern::Wildcard, _) => Derivation::ul(d, q),
        (Pattern::Tensor(p1, p2), Formula::Tensor(a1, a2)) => {
            let m1 = p1.vars().len();
            let d = pattern_left(d, p2, a2, q + m1);
            let d = pattern_left(d, p1, a1, q);
            Derivation::tl(d, q)
        }
        _ => unreachable!("pattern checked before elaboration"),
    }
}

fn synth(
    ctx: &[(String, Formula)],
    t: &Term,
    path: &mut Vec<usize>,
) -> Result<(Formula, Derivation), TypeError> {
    check_linear(ctx, t, path)?;
    match t {
        Term::Var(_) => {
            let a = ctx[0].1.clone();
            Ok((a.clone(), Derivation::ax(a)))
        }
        Term::Unit => Ok((Formula::Unit, Derivation::ur())),
        Term::Tensor(a, b) => {
            let n = split_prefix(ctx, a, path)?;
            let (ta, da) = with_child(path, 0, |p| synth(&ctx[..n], a, p))?;
            let (tb, db) = with_child(path, 1, |p| synth(&ctx[n..], b, p))?;
            Ok((Formula::tensor(ta, tb), Derivation::tr(da, db)))
        }
        Term::LamR(x, ann, body) => {
            let (xs, body) = rename_apart(std::slice::from_ref(x), body, &names(ctx));
            let inner = concat(&[&[(xs[0].clone(), ann.clone())], ctx]);
            let (b, d) = with_child(path, 0, |p| synth(&inner, &body, p))?;
            Ok((Formula::rimp(ann.clone(), b), Derivation::irr(d)))
        }
        Term::LamL(x, ann, body) => {
            let (xs, body) = rename_apart(std::slice::from_ref(x), body, &names(ctx));
            let inner = concat(&[ctx, &[(xs[0].clone(), ann.clone())]]);
            let (a, d) = with_child(path, 0, |p| synth(&inner, &body, p))?;
            Ok((Formula::limp(a, ann.clone()), Derivation::irl(d)))
        }
        Term::AppR(f, s) => {
            let n = split_prefix(ctx, s, path)?;
            let (ts, ds) = with_child(path, 1, |p| synth(&ctx[..n], s, p))?;
            let (tf, df) = with_child(path, 0, |p| synth(&ctx[n..], f, p))?;
            match tf {
                Formula::RImp(a, b) if *a == ts => {
                    let ev = Derivation::ilr(ds, Derivation::ax((*b).clone()), 0);
                    Ok(((*b).clone(), Derivation::cut(df, ev, n)))
                }
                other => err(
                    TypeErrorKind::Mismatch,
                    path,
                    format!("appr applies {other} to an argument of type {ts}"),
                ),
            }
        }
        Term::AppL(f, s) => {
            let n = split_prefix(ctx, f, path)?;
            let (tf, df) = with_child(path, 0, |p| synth(&ctx[..n], f, p))?;
            let (ts, ds) = with_child(path, 1, |p| synth(&ctx[n..], s, p))?;
            match tf {
                Formula::LImp(a, b) if *b == ts => {
                    let ev = Derivation::ill(ds, Derivation::ax((*a).clone()), 0);
                    Ok(((*a).clone(), Derivation::cut(df, ev, 0)))
                }
                other => err(
                    TypeErrorKind::Mismatch,
                    path,
                    format!("appl applies {other} to an argument of type {ts}"),
                ),
            }
        }
        Term::DerelictBang(s) | Term::DerelictKappa(s) => {
            let bang = matches!(t, Term::DerelictBang(_));
            let (ts, ds) = with_child(path, 0, |p| synth(ctx, s, p))?;
            match (&ts, bang) {
                (Formula::Bang(a), true) => {
                    let d = Derivation::bl(Derivation::ax((**a).clone()), 0);
                    Ok(((**a).clone(), Derivation::cut(ds, d, 0)))
                }
                (Formula::Kappa(a), false) => {
                    let d = Derivation::el(Derivation::ax((**a).clone()), 0);
                    Ok(((**a).clone(), Derivation::cut(ds, d, 0)))
                }
                _ => err(
                    TypeErrorKind::Mismatch,
                    path,
                    format!("dereliction of a term of type {ts}"),
                ),
            }
        }
        Term::PromoteBang(srcs, xs, body) | Term::PromoteKappa(srcs, xs, body) => {
            let bang = matches!(t, Term::PromoteBang(..));
            distinct(xs, path)?;
            let mut rest = ctx;
            let mut hyps = Vec::new();
            let mut src_ds = Vec::new();
            for (i, s) in srcs.iter().enumerate() {
                let n = split_prefix(rest, s, path)?;
                let (ts, ds) = with_child(path, i, |p| synth(&rest[..n], s, p))?;
                let ok = if bang { ts.is_bang() } else { ts.is_kappa() };
                if !ok {
                    return err(
                        TypeErrorKind::Mismatch,
                        path,
                        format!("promotion source {i} has non-modal type {ts}"),
                    );
                }
                hyps.push((xs[i].clone(), ts));
                src_ds.push((n, ds));
                rest = &rest[n..];
            }
            let (tb, db) = with_child(path, srcs.len(), |p| synth(&hyps, body, p))?;
            let mut d = if bang {
                Derivation::br(db)
            } else {
                Derivation::er(db)
            };
            let mut pos = 0;
            for (n, ds) in src_ds {
                d = Derivation::cut(ds, d, pos);
                pos += n;
            }
            let ty = if bang {
                Formula::bang(tb)
            } else {
                Formula::kappa(tb)
            };
            Ok((ty, d))
        }
        Term::Let(s, pat, body) => {
            let pv = pat.vars();
            distinct(&pv, path)?;
            let starts = locate(ctx, s, path)?;
            let n = free_occurrences(s).len();
            let mut last_err = None;
            for q in starts {
                let (d1, g, d2) = (&ctx[..q], &ctx[q..q + n], &ctx[q + n..]);
                let (ts, ds) = with_child(path, 0, |p| synth(g, s, p))?;
                let binds = bind_pattern(pat, &ts, path)?;
                let outer = concat(&[d1, d2]);
                let (new_vars, body) = rename_apart(&pv, body, &names(&outer));
                let mut binds = binds;
                for (b, v) in binds.iter_mut().zip(&new_vars) {
                    b.0 = v.clone();
                }
                let inner = concat(&[d1, &binds, d2]);
                match with_child(path, 1, |p| synth(&inner, &body, p)) {
                    Ok((c, du)) => {
                        let dl = pattern_left(du, pat, &ts, q);
                        return Ok((c, Derivation::cut(ds, dl, q)));
                    }
                    Err(e) => last_err = Some(e),
                }
            }
            Err(last_err.unwrap())
        }
        Term::Copy(s, _, _, body) | Term::Discard(s, body) => {
            let copy = matches!(t, Term::Copy(..));
            let binders: Vec<String> = match t {
                Term::Copy(_, x, y, _) => vec![x.clone(), y.clone()],
                _ => vec![],
            };
            distinct(&binders, path)?;
            let starts = locate(ctx, s, path)?;
            let n = free_occurrences(s).len();
            let mut last_err = None;
            for q in starts {
                let (d1, g, d2) = (&ctx[..q], &ctx[q..q + n], &ctx[q + n..]);
                let (ts, ds) = with_child(path, 0, |p| synth(g, s, p))?;
                if !ts.is_bang() {
                    return err(
                        TypeErrorKind::Mismatch,
                        path,
                        format!("scrutinee has type {ts}, expected a !-type"),
                    );
                }
                let outer = concat(&[d1, d2]);
                let (vs, body) = rename_apart(&binders, body, &names(&outer));
                let mid: Vec<(String, Formula)> =
                    vs.iter().map(|v| (v.clone(), ts.clone())).collect();
                let inner = concat(&[d1, &mid, d2]);
                match with_child(path, 1, |p| synth(&inner, &body, p)) {
                    Ok((c, du)) => {
                        let dl = if copy {
                            Derivation::contract(du, q)
                        } else {
                            Derivation::weaken(du, q, ts.clone())
                        };
                        return Ok((c, Derivation::cut(ds, dl, q)));
                    }
                    Err(e) => last_err = Some(e),
                }
            }
            Err(last_err.unwrap())
        }
        Term::ExchL(t1, t2, x, y, body) | Term::ExchR(t1, t2, x, y, body) => {
            let left = matches!(t, Term::ExchL(..));
            let binders = vec![x.clone(), y.clone()];
            distinct(&binders, path)?;
            let both = Term::tensor((**t1).clone(), (**t2).clone());
            let starts = locate(ctx, &both, path)?;
            let n1 = free_occurrences(t1).len();
            let n2 = free_occurrences(t2).len();
            let mut last_err = None;
            for q in starts {
                let d1 = &ctx[..q];
                let g1 = &ctx[q..q + n1];
                let g2 = &ctx[q + n1..q + n1 + n2];
                let d2 = &ctx[q + n1 + n2..];
                if g1.iter().any(|(v, _)| !free_occurrences(t1).contains(v)) {
                    return err(
                        TypeErrorKind::OrderViolation,
                        path,
                        "exchange operands appear out of order",
                    );
                }
                let (ty1, dd1) = with_child(path, 0, |p| synth(g1, t1, p))?;
                let (ty2, dd2) = with_child(path, 1, |p| synth(g2, t2, p))?;
                let kappa_ok = if left { ty1.is_kappa() } else { ty2.is_kappa() };
                if !kappa_ok {
                    return err(
                        TypeErrorKind::Mismatch,
                        path,
                        format!(
                            "exchange needs a k-typed {} operand, found {}",
                            if left { "first" } else { "second" },
                            if left { &ty1 } else { &ty2 }
                        ),
                    );
                }
                let outer = concat(&[d1, d2]);
                let (vs, body) = rename_apart(&binders, body, &names(&outer));
                // x stands for t2, y for t1.
                let mid = vec![(vs[0].clone(), ty2.clone()), (vs[1].clone(), ty1.clone())];
                let inner = concat(&[d1, &mid, d2]);
                match with_child(path, 2, |p| synth(&inner, &body, p)) {
                    Ok((c, db)) => {
                        let swapped = if left {
                            Derivation::e1(db, q)
                        } else {
                            Derivation::e2(db, q + 1)
                        };
                        let d = Derivation::cut(dd1, swapped, q);
                        let d = Derivation::cut(dd2, d, q + n1);
                        return Ok((c, d));
                    }
                    Err(e) => last_err = Some(e),
                }
            }
            Err(last_err.unwrap())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequent::check_derivation;
    use crate::syntax::{parse_context, parse_formula, parse_term};
    use CalculusLevel::*;

    fn tc(ctx: &str, t: &str, level: CalculusLevel) -> Result<Formula, TypeError> {
        let ctx = parse_context(ctx).unwrap();
        let t = parse_term(t).unwrap();
        let r = typecheck(&ctx, &t, level);
        if let Ok(a) = &r {
            let d = elaborate(&ctx, &t, level).unwrap();
            let s = check_derivation(&d, level).unwrap();
            assert_eq!(&s.succedent, a);
            let ante: Vec<Formula> = ctx.iter().map(|(_, f)| f.clone()).collect();
            assert_eq!(s.antecedent, ante);
        }
        r
    }

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn identity_function() {
        assert_eq!(tc("", "\\r x:a. x", L).unwrap(), f("a \\ a"));
        assert_eq!(tc("", "\\l x:a. x", L).unwrap(), f("a / a"));
    }

    #[test]
    fn order_violation() {
        let e = tc("x:a, y:b", "y * x", L).unwrap_err();
        assert_eq!(e.kind, TypeErrorKind::OrderViolation);
        assert_eq!(tc("x:a, y:b", "x * y", L).unwrap(), f("a * b"));
    }

    #[test]
    fn application_orders() {
        assert_eq!(tc("y:a, f:a \\ b", "appr f y", L).unwrap(), f("b"));
        assert_eq!(
            tc("f:a \\ b, y:a", "appr f y", L).unwrap_err().kind,
            TypeErrorKind::OrderViolation
        );
        assert_eq!(tc("f:b / a, y:a", "appl f y", L).unwrap(), f("b"));
        assert_eq!(tc("y:a", "appl (\\l x:a. x) y", L).unwrap(), f("a"));
    }

    #[test]
    fn linearity() {
        assert_eq!(
            tc("x:a", "x * x", L).unwrap_err().kind,
            TypeErrorKind::NonLinearUse
        );
        assert_eq!(
            tc("x:a, y:b", "x", L).unwrap_err().kind,
            TypeErrorKind::NonLinearUse
        );
        assert_eq!(tc("", "z", L).unwrap_err().kind, TypeErrorKind::UnboundVar);
        assert_eq!(
            tc("", "\\l x:a. unit", L).unwrap_err().kind,
            TypeErrorKind::NonLinearUse
        );
    }

    #[test]
    fn lets_and_units() {
        assert_eq!(tc("", "let unit be unit in unit", L).unwrap(), f("I"));
        assert_eq!(tc("", "let unit be - in unit", L).unwrap(), f("I"));
        assert_eq!(tc("u:a * b", "let u be x * y in x * y", L).unwrap(), f("a * b"));
        assert_eq!(
            tc("u:a * b", "let u be x * y in y * x", L).unwrap_err().kind,
            TypeErrorKind::OrderViolation
        );
        assert_eq!(
            tc("w:c, u:(a * b) * I", "let u be (x * y) * z in let z be unit in w * (x * y)", L)
                .unwrap(),
            f("c * (a * b)")
        );
        // Closed scrutinee: the bound variables may sit anywhere.
        assert_eq!(
            tc("v:a", "let unit * unit be p * q in let q be unit in let p be unit in v", L)
                .unwrap(),
            f("a")
        );
        assert_eq!(
            tc("v:a", "let unit be - in v * unit", L).unwrap(),
            f("a * I")
        );
    }

    #[test]
    fn modal_terms() {
        assert_eq!(
            tc("x:!a", "copy x as y, z in y * z", LBang).unwrap(),
            f("!a * !a")
        );
        assert_eq!(tc("x:!a", "discard x in unit", LBang).unwrap(), f("I"));
        assert_eq!(tc("x:!a", "derelict! x", LBang).unwrap(), f("a"));
        assert_eq!(
            tc("x:!a", "promote! x for y in y", LBang).unwrap(),
            f("!!a")
        );
        assert_eq!(
            tc("x:!a", "copy x as y, z in y * z", L).unwrap_err().kind,
            TypeErrorKind::ConnectiveAtWrongLevel
        );
        assert_eq!(
            tc("x:a", "promote! x for y in y", LBang).unwrap_err().kind,
            TypeErrorKind::Mismatch
        );
    }

    #[test]
    fn exchange_terms() {
        assert_eq!(
            tc("x:k a, y:b", "exchl x, y with x', y' in x' * y'", LKappa).unwrap(),
            f("b * k a")
        );
        assert_eq!(
            tc("x:a, y:k b", "exchr x, y with x', y' in x' * y'", LKappa).unwrap(),
            f("k b * a")
        );
        let ctx = parse_context("x:k a, y:b").unwrap();
        let t = parse_term("exchl x, y with x', y' in x' * y'").unwrap();
        let d = elaborate(&ctx, &t, LKappa).unwrap();
        assert!(d.rules_used().contains(&crate::sequent::RuleName::E1));
        assert_eq!(
            tc("x:k a, y:b", "exchl x, y with x', y' in y' * x'", LKappa)
                .unwrap_err()
                .kind,
            TypeErrorKind::OrderViolation
        );
    }

    #[test]
    fn binder_shadowing_context_is_renamed() {
        assert_eq!(
            tc("x:a", "x * (\\l x:b. x)", L).unwrap(),
            f("a * (b / b)")
        );
    }
}
