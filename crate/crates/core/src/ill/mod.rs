//! Intuitionistic linear logic as an embedding target.
//!
//! ILL has one implication `A -o B`, the `!` modality, and multiset contexts.
//! Both Lambek implications embed as `-o` and `κ` embeds as `!`; exchange
//! terms are translated away by substitution. ILL terms are reduced with the
//! same rule table as the source calculi (see [`crate::rewrite::Mode::Ill`]),
//! by way of [`IllTerm::to_term`], which writes λ/app as their right-handed
//! Lambek counterparts.

mod report;

use std::collections::BTreeSet;
use std::fmt;

use crate::rewrite::{normalize_in, Mode, RewriteError};
use crate::syntax::{
    free_occurrences, render_path, render_term, substitute_many, Formula, Pattern, Style, Term,
};

pub use report::{preservation_report, EntryReport, PreservationReport, StepReport};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IllFormula {
    Atom(String),
    Unit,
    Tensor(Box<IllFormula>, Box<IllFormula>),
    Lolli(Box<IllFormula>, Box<IllFormula>),
    Bang(Box<IllFormula>),
}

impl IllFormula {
    pub fn tensor(a: IllFormula, b: IllFormula) -> IllFormula {
        IllFormula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn lolli(a: IllFormula, b: IllFormula) -> IllFormula {
        IllFormula::Lolli(Box::new(a), Box::new(b))
    }

    pub fn bang(a: IllFormula) -> IllFormula {
        IllFormula::Bang(Box::new(a))
    }

    /// The Lambek formula writing `-o` as `⇀`.
    pub fn to_formula(&self) -> Formula {
        match self {
            IllFormula::Atom(a) => Formula::Atom(a.clone()),
            IllFormula::Unit => Formula::Unit,
            IllFormula::Tensor(a, b) => Formula::tensor(a.to_formula(), b.to_formula()),
            IllFormula::Lolli(a, b) => Formula::rimp(a.to_formula(), b.to_formula()),
            IllFormula::Bang(a) => Formula::bang(a.to_formula()),
        }
    }

    /// Inverse of [`IllFormula::to_formula`]; `None` on `↼` or `κ`.
    pub fn from_formula(f: &Formula) -> Option<IllFormula> {
        Some(match f {
            Formula::Atom(a) => IllFormula::Atom(a.clone()),
            Formula::Unit => IllFormula::Unit,
            Formula::Tensor(a, b) => {
                IllFormula::tensor(IllFormula::from_formula(a)?, IllFormula::from_formula(b)?)
            }
            Formula::RImp(a, b) => {
                IllFormula::lolli(IllFormula::from_formula(a)?, IllFormula::from_formula(b)?)
            }
            Formula::Bang(a) => IllFormula::bang(IllFormula::from_formula(a)?),
            Formula::LImp(..) | Formula::Kappa(_) => return None,
        })
    }
}

fn fprec(f: &IllFormula) -> u8 {
    match f {
        IllFormula::Lolli(..) => 0,
        IllFormula::Tensor(..) => 1,
        _ => 2,
    }
}

fn write_formula(f: &IllFormula, out: &mut fmt::Formatter<'_>, paren: bool) -> fmt::Result {
    if paren {
        out.write_str("(")?;
    }
    match f {
        IllFormula::Atom(a) => out.write_str(a)?,
        IllFormula::Unit => out.write_str("I")?,
        IllFormula::Tensor(a, b) => {
            write_formula(a, out, fprec(a) < 1)?;
            out.write_str(" * ")?;
            write_formula(b, out, fprec(b) < 2)?;
        }
        IllFormula::Lolli(a, b) => {
            write_formula(a, out, fprec(a) < 1)?;
            out.write_str(" -o ")?;
            write_formula(b, out, false)?;
        }
        IllFormula::Bang(a) => {
            out.write_str("!")?;
            write_formula(a, out, fprec(a) < 2)?;
        }
    }
    if paren {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for IllFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f, false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IllTerm {
    Var(String),
    Unit,
    Tensor(Box<IllTerm>, Box<IllTerm>),
    Lam(String, IllFormula, Box<IllTerm>),
    App(Box<IllTerm>, Box<IllTerm>),
    Let(Box<IllTerm>, Pattern, Box<IllTerm>),
    Copy(Box<IllTerm>, String, String, Box<IllTerm>),
    Discard(Box<IllTerm>, Box<IllTerm>),
    Promote(Vec<IllTerm>, Vec<String>, Box<IllTerm>),
    Derelict(Box<IllTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("not an ILL term: {0}")]
pub struct NotIll(pub String);

impl IllTerm {
    /// Writes λ/app as `\r`/`appr`.
    pub fn to_term(&self) -> Term {
        let b = |t: &IllTerm| Box::new(t.to_term());
        match self {
            IllTerm::Var(x) => Term::Var(x.clone()),
            IllTerm::Unit => Term::Unit,
            IllTerm::Tensor(a, c) => Term::Tensor(b(a), b(c)),
            IllTerm::Lam(x, a, body) => Term::LamR(x.clone(), a.to_formula(), b(body)),
            IllTerm::App(f, a) => Term::AppR(b(f), b(a)),
            IllTerm::Let(s, p, body) => Term::Let(b(s), p.clone(), b(body)),
            IllTerm::Copy(s, x, y, body) => Term::Copy(b(s), x.clone(), y.clone(), b(body)),
            IllTerm::Discard(s, body) => Term::Discard(b(s), b(body)),
            IllTerm::Promote(srcs, xs, body) => Term::PromoteBang(
                srcs.iter().map(IllTerm::to_term).collect(),
                xs.clone(),
                b(body),
            ),
            IllTerm::Derelict(s) => Term::DerelictBang(b(s)),
        }
    }

    /// Inverse of [`IllTerm::to_term`].
    pub fn from_term(t: &Term) -> Result<IllTerm, NotIll> {
        let b = |t: &Term| IllTerm::from_term(t).map(Box::new);
        Ok(match t {
            Term::Var(x) => IllTerm::Var(x.clone()),
            Term::Unit => IllTerm::Unit,
            Term::Tensor(a, c) => IllTerm::Tensor(b(a)?, b(c)?),
            Term::LamR(x, a, body) => IllTerm::Lam(
                x.clone(),
                IllFormula::from_formula(a).ok_or_else(|| NotIll(format!("annotation {a}")))?,
                b(body)?,
            ),
            Term::AppR(f, a) => IllTerm::App(b(f)?, b(a)?),
            Term::Let(s, p, body) => IllTerm::Let(b(s)?, p.clone(), b(body)?),
            Term::Copy(s, x, y, body) => IllTerm::Copy(b(s)?, x.clone(), y.clone(), b(body)?),
            Term::Discard(s, body) => IllTerm::Discard(b(s)?, b(body)?),
            Term::PromoteBang(srcs, xs, body) => IllTerm::Promote(
                srcs.iter().map(IllTerm::from_term).collect::<Result<_, _>>()?,
                xs.clone(),
                b(body)?,
            ),
            Term::DerelictBang(s) => IllTerm::Derelict(b(s)?),
            other => return Err(NotIll(other.to_string())),
        })
    }

    pub fn size(&self) -> usize {
        self.to_term().size()
    }
}

impl fmt::Display for IllTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const ILL: Style = Style {
            ann: |a| IllFormula::from_formula(a).map_or_else(|| a.to_string(), |a| a.to_string()),
            lam_r: "\\",
            app_r: "app ",
        };
        f.write_str(&render_term(&self.to_term(), &ILL))
    }
}

pub fn embed_formula(a: &Formula) -> IllFormula {
    match a {
        Formula::Atom(x) => IllFormula::Atom(x.clone()),
        Formula::Unit => IllFormula::Unit,
        Formula::Tensor(a, b) => IllFormula::tensor(embed_formula(a), embed_formula(b)),
        Formula::RImp(a, b) => IllFormula::lolli(embed_formula(a), embed_formula(b)),
        // B ↼ A consumes an A: the argument is the second component.
        Formula::LImp(b, a) => IllFormula::lolli(embed_formula(a), embed_formula(b)),
        Formula::Bang(a) | Formula::Kappa(a) => IllFormula::bang(embed_formula(a)),
    }
}

pub fn embed_term(t: &Term) -> IllTerm {
    IllTerm::from_term(&embed_raw(t)).expect("embedding yields ILL syntax")
}

/// The embedding, written in the ILL fragment of [`Term`].
fn embed_raw(t: &Term) -> Term {
    let b = |t: &Term| Box::new(embed_raw(t));
    let ann = |a: &Formula| embed_formula(a).to_formula();
    match t {
        Term::Var(x) => Term::Var(x.clone()),
        Term::Unit => Term::Unit,
        Term::Tensor(a, c) => Term::Tensor(b(a), b(c)),
        Term::LamL(x, a, body) | Term::LamR(x, a, body) => Term::LamR(x.clone(), ann(a), b(body)),
        Term::AppL(f, a) | Term::AppR(f, a) => Term::AppR(b(f), b(a)),
        Term::Let(s, p, body) => Term::Let(b(s), p.clone(), b(body)),
        Term::Copy(s, x, y, body) => Term::Copy(b(s), x.clone(), y.clone(), b(body)),
        Term::Discard(s, body) => Term::Discard(b(s), b(body)),
        Term::PromoteBang(srcs, xs, body) | Term::PromoteKappa(srcs, xs, body) => {
            Term::PromoteBang(srcs.iter().map(embed_raw).collect(), xs.clone(), b(body))
        }
        Term::DerelictBang(s) | Term::DerelictKappa(s) => Term::DerelictBang(b(s)),
        Term::ExchL(t1, t2, x, y, body) | Term::ExchR(t1, t2, x, y, body) => substitute_many(
            &embed_raw(body),
            &[(x.clone(), embed_raw(t2)), (y.clone(), embed_raw(t1))],
        ),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IllJudgment {
    pub context: Vec<(String, IllFormula)>,
    pub term: IllTerm,
    pub ty: IllFormula,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at {}: {detail}", render_path(location))]
pub struct IllTypeError {
    pub kind: &'static str,
    pub location: Vec<usize>,
    pub detail: String,
}

fn ill_err<T>(kind: &'static str, path: &[usize], detail: String) -> Result<T, IllTypeError> {
    Err(IllTypeError {
        kind,
        location: path.to_vec(),
        detail,
    })
}

pub fn ill_typecheck(j: &IllJudgment) -> Result<(), IllTypeError> {
    let found = ill_infer(&j.context, &j.term)?;
    if found != j.ty {
        return ill_err(
            "mismatch",
            &[],
            format!("term has type {found}, expected {}", j.ty),
        );
    }
    Ok(())
}

/// Type of `t` under the multiset context `ctx`.
pub fn ill_infer(ctx: &[(String, IllFormula)], t: &IllTerm) -> Result<IllFormula, IllTypeError> {
    let mut seen = BTreeSet::new();
    for (x, _) in ctx {
        if !seen.insert(x) {
            return ill_err("linearity", &[], format!("`{x}` declared twice"));
        }
    }
    infer(ctx, &t.to_term(), &mut Vec::new())
}

fn restrict(ctx: &[(String, IllFormula)], t: &Term) -> Vec<(String, IllFormula)> {
    let fv: BTreeSet<String> = free_occurrences(t).into_iter().collect();
    ctx.iter().filter(|(x, _)| fv.contains(x)).cloned().collect()
}

fn without(ctx: &[(String, IllFormula)], t: &Term) -> Vec<(String, IllFormula)> {
    let fv: BTreeSet<String> = free_occurrences(t).into_iter().collect();
    ctx.iter().filter(|(x, _)| !fv.contains(x)).cloned().collect()
}

fn bind(
    mut ctx: Vec<(String, IllFormula)>,
    extra: Vec<(String, IllFormula)>,
) -> Vec<(String, IllFormula)> {
    // Inner binders shadow outer hypotheses of the same name; those are then
    // unusable and the linearity check reports them.
    ctx.retain(|(x, _)| !extra.iter().any(|(y, _)| y == x));
    ctx.extend(extra);
    ctx
}

fn bind_pattern(
    p: &Pattern,
    a: &IllFormula,
    path: &[usize],
) -> Result<Vec<(String, IllFormula)>, IllTypeError> {
    match (p, a) {
        (Pattern::Var(x), _) => Ok(vec![(x.clone(), a.clone())]),
        (Pattern::Unit | Pattern::Wildcard, IllFormula::Unit) => Ok(vec![]),
        (Pattern::Tensor(p, q), IllFormula::Tensor(a, b)) => {
            let mut out = bind_pattern(p, a, path)?;
            out.extend(bind_pattern(q, b, path)?);
            Ok(out)
        }
        _ => ill_err("mismatch", path, format!("pattern {p} against {a}")),
    }
}

fn infer(
    ctx: &[(String, IllFormula)],
    t: &Term,
    path: &mut Vec<usize>,
) -> Result<IllFormula, IllTypeError> {
    let occ = free_occurrences(t);
    for x in &occ {
        if !ctx.iter().any(|(y, _)| y == x) {
            return ill_err("unbound", path, format!("`{x}` is not in scope"));
        }
    }
    for (x, _) in ctx {
        let n = occ.iter().filter(|y| *y == x).count();
        if n != 1 {
            return ill_err("linearity", path, format!("`{x}` used {n} times"));
        }
    }
    let sub = |path: &mut Vec<usize>, i: usize, ctx: &[(String, IllFormula)], t: &Term| {
        path.push(i);
        let r = infer(ctx, t, path);
        path.pop();
        r
    };
    match t {
        Term::Var(_) => Ok(ctx[0].1.clone()),
        Term::Unit => Ok(IllFormula::Unit),
        Term::Tensor(a, b) => {
            let ta = sub(path, 0, &restrict(ctx, a), a)?;
            let tb = sub(path, 1, &restrict(ctx, b), b)?;
            Ok(IllFormula::tensor(ta, tb))
        }
        Term::LamR(x, a, body) => {
            let a = IllFormula::from_formula(a).expect("ILL annotation");
            let inner = bind(ctx.to_vec(), vec![(x.clone(), a.clone())]);
            let tb = sub(path, 0, &inner, body)?;
            Ok(IllFormula::lolli(a, tb))
        }
        Term::AppR(f, a) => {
            let tf = sub(path, 0, &restrict(ctx, f), f)?;
            let ta = sub(path, 1, &restrict(ctx, a), a)?;
            match tf {
                IllFormula::Lolli(x, y) if *x == ta => Ok(*y),
                other => ill_err(
                    "mismatch",
                    path,
                    format!("applying {other} to an argument of type {ta}"),
                ),
            }
        }
        Term::Let(s, p, body) => {
            let ts = sub(path, 0, &restrict(ctx, s), s)?;
            let binds = bind_pattern(p, &ts, path)?;
            let inner = bind(without(ctx, s), binds);
            sub(path, 1, &inner, body)
        }
        Term::Copy(s, x, y, body) => {
            let ts = sub(path, 0, &restrict(ctx, s), s)?;
            if !matches!(ts, IllFormula::Bang(_)) {
                return ill_err("mismatch", path, format!("copy of {ts}"));
            }
            if x == y {
                return ill_err("linearity", path, format!("copy binds `{x}` twice"));
            }
            let inner = bind(
                without(ctx, s),
                vec![(x.clone(), ts.clone()), (y.clone(), ts)],
            );
            sub(path, 1, &inner, body)
        }
        Term::Discard(s, body) => {
            let ts = sub(path, 0, &restrict(ctx, s), s)?;
            if !matches!(ts, IllFormula::Bang(_)) {
                return ill_err("mismatch", path, format!("discard of {ts}"));
            }
            sub(path, 1, &without(ctx, s), body)
        }
        Term::PromoteBang(srcs, xs, body) => {
            if srcs.len() != xs.len() {
                return ill_err("arity", path, "promotion arity".into());
            }
            let mut hyps = Vec::new();
            for (i, (s, x)) in srcs.iter().zip(xs).enumerate() {
                let ts = sub(path, i, &restrict(ctx, s), s)?;
                if !matches!(ts, IllFormula::Bang(_)) {
                    return ill_err("mismatch", path, format!("promotion source of type {ts}"));
                }
                hyps.push((x.clone(), ts));
            }
            let tb = sub(path, srcs.len(), &hyps, body)?;
            Ok(IllFormula::bang(tb))
        }
        Term::DerelictBang(s) => match sub(path, 0, ctx, s)? {
            IllFormula::Bang(a) => Ok(*a),
            other => ill_err("mismatch", path, format!("dereliction of {other}")),
        },
        _ => ill_err("syntax", path, "not an ILL construct".into()),
    }
}

/// Normalizes an ILL term with the ILL rule set.
pub fn ill_normalize(t: &IllTerm, fuel: usize) -> Result<(IllTerm, usize), RewriteError> {
    let n = normalize_in(&t.to_term(), fuel, Mode::Ill, None)?;
    Ok((IllTerm::from_term(&n.term).expect("ILL rules stay in ILL"), n.steps))
}
