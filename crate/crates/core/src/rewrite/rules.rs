use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{
    all_vars, free_vars, fresh_name, rename_apart, substitute, substitute_many, Pattern, Term,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RewriteRule {
    BetaL,
    BetaR,
    BetaU,
    BetaT1,
    BetaT2,
    NatU,
    NatT,
    LetU,
    BetaDR,
    BetaDI,
    BetaC,
    NatD,
    NatC,
    BetaEDR,
    NatEl,
    NatEr,
}

impl RewriteRule {
    /// Table order; also the order in which rules are tried at a single node.
    pub const ALL: [RewriteRule; 16] = [
        RewriteRule::BetaL,
        RewriteRule::BetaR,
        RewriteRule::BetaU,
        RewriteRule::BetaT1,
        RewriteRule::BetaT2,
        RewriteRule::NatU,
        RewriteRule::NatT,
        RewriteRule::LetU,
        RewriteRule::BetaDR,
        RewriteRule::BetaDI,
        RewriteRule::BetaC,
        RewriteRule::NatD,
        RewriteRule::NatC,
        RewriteRule::BetaEDR,
        RewriteRule::NatEl,
        RewriteRule::NatEr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RewriteRule::BetaL => "BetaL",
            RewriteRule::BetaR => "BetaR",
            RewriteRule::BetaU => "BetaU",
            RewriteRule::BetaT1 => "BetaT1",
            RewriteRule::BetaT2 => "BetaT2",
            RewriteRule::NatU => "NatU",
            RewriteRule::NatT => "NatT",
            RewriteRule::LetU => "LetU",
            RewriteRule::BetaDR => "BetaDR",
            RewriteRule::BetaDI => "BetaDI",
            RewriteRule::BetaC => "BetaC",
            RewriteRule::NatD => "NatD",
            RewriteRule::NatC => "NatC",
            RewriteRule::BetaEDR => "BetaEDR",
            RewriteRule::NatEl => "NatEl",
            RewriteRule::NatEr => "NatEr",
        }
    }

    pub fn from_name(s: &str) -> Option<RewriteRule> {
        RewriteRule::ALL.into_iter().find(|r| r.name() == s)
    }

    /// Commuting conversions, as opposed to computational steps.
    pub fn is_conversion(self) -> bool {
        matches!(
            self,
            RewriteRule::NatU
                | RewriteRule::NatT
                | RewriteRule::NatD
                | RewriteRule::NatC
                | RewriteRule::NatEl
                | RewriteRule::NatEr
        )
    }

    /// The β-family: steps that compute by substitution or by consuming an
    /// introduction form.
    pub fn is_beta(self) -> bool {
        !self.is_conversion() && self != RewriteRule::LetU
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which term discipline the rules run under.
///
/// With ordered contexts a copy of a promotion with two or more sources has no
/// well-typed contractum (the duplicated sources would interleave), so BetaC
/// only fires on promotions with at most one source. Under `Ill` contexts are
/// multisets and BetaC is unrestricted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Lambek,
    Ill,
}

/// Contracts `t` at its root with `rule`, if the left-hand side matches.
pub fn contract(t: &Term, rule: RewriteRule, mode: Mode) -> Option<Term> {
    use RewriteRule::*;
    match (rule, t) {
        (BetaL, Term::AppL(f, s)) => match &**f {
            Term::LamL(x, _, b) => Some(substitute(b, x, s)),
            _ => None,
        },
        (BetaR, Term::AppR(f, s)) => match &**f {
            Term::LamR(x, _, b) => Some(substitute(b, x, s)),
            _ => None,
        },
        (BetaU, Term::Let(s, Pattern::Unit, b)) if **s == Term::Unit => Some((**b).clone()),
        (LetU, Term::Let(s, Pattern::Wildcard, b)) => {
            Some(Term::let_((**s).clone(), Pattern::Unit, (**b).clone()))
        }
        (BetaT1, Term::Let(s, Pattern::Tensor(p, q), b)) => match (&**s, &**p, &**q) {
            (Term::Tensor(s1, s2), Pattern::Var(x), Pattern::Var(y)) => Some(substitute_many(
                b,
                &[(x.clone(), (**s1).clone()), (y.clone(), (**s2).clone())],
            )),
            _ => None,
        },
        (BetaT2, Term::Let(s, Pattern::Tensor(p, q), b)) => match &**s {
            Term::Tensor(s1, s2)
                if !matches!((&**p, &**q), (Pattern::Var(_), Pattern::Var(_))) =>
            {
                Some(beta_t2(s1, p, s2, q, b))
            }
            _ => None,
        },
        (BetaDR, Term::DerelictBang(s)) => match &**s {
            Term::PromoteBang(srcs, xs, b) => Some(open_promotion(srcs, xs, b)),
            _ => None,
        },
        (BetaEDR, Term::DerelictKappa(s)) => match &**s {
            Term::PromoteKappa(srcs, xs, b) => Some(open_promotion(srcs, xs, b)),
            _ => None,
        },
        (BetaDI, Term::Discard(s, body)) => match &**s {
            Term::PromoteBang(srcs, _, _) => Some(
                srcs.iter()
                    .rev()
                    .fold((**body).clone(), |acc, src| Term::discard(src.clone(), acc)),
            ),
            _ => None,
        },
        (BetaC, Term::Copy(s, y, z, body)) => match &**s {
            Term::PromoteBang(srcs, xs, pb) if mode == Mode::Ill || srcs.len() <= 1 => {
                Some(beta_c(t, srcs, xs, pb, y, z, body))
            }
            _ => None,
        },
        (NatU | NatT | NatD | NatC | NatEl | NatEr, _) => match hoist(t) {
            Some((r, out)) if r == rule => Some(out),
            _ => None,
        },
        _ => None,
    }
}

fn open_promotion(srcs: &[Term], xs: &[String], body: &Term) -> Term {
    let pairs: Vec<(String, Term)> = xs.iter().cloned().zip(srcs.iter().cloned()).collect();
    substitute_many(body, &pairs)
}

/// `let s be p in u`, or `[s/x]u` when `p` is the variable `x`.
fn bind(s: &Term, p: &Pattern, u: Term) -> Term {
    match p {
        Pattern::Var(x) => substitute(&u, x, s),
        _ => Term::let_(s.clone(), p.clone(), u),
    }
}

fn beta_t2(s1: &Term, p: &Pattern, s2: &Term, q: &Pattern, b: &Term) -> Term {
    // p's variables end up scoping over s2.
    let (pv, b) = rename_apart(&p.vars(), b, &free_vars(s2));
    let mut p = p.clone();
    for (old, new) in p.vars().iter().zip(&pv) {
        p = p.rename(old, new);
    }
    bind(s1, &p, bind(s2, q, b))
}

fn beta_c(
    whole: &Term,
    srcs: &[Term],
    xs: &[String],
    pb: &Term,
    y: &str,
    z: &str,
    body: &Term,
) -> Term {
    let mut taken: BTreeSet<String> = all_vars(whole);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for x in xs {
        let a = fresh_name(x, &taken);
        taken.insert(a.clone());
        let b = fresh_name(x, &taken);
        taken.insert(b.clone());
        left.push(a);
        right.push(b);
    }
    let mk = |names: &[String]| Term::PromoteBang(
        names.iter().map(|n| Term::Var(n.clone())).collect(),
        xs.to_vec(),
        Box::new(pb.clone()),
    );
    let inner = substitute_many(
        body,
        &[(y.to_string(), mk(&left)), (z.to_string(), mk(&right))],
    );
    srcs.iter()
        .zip(left.iter().zip(&right))
        .rev()
        .fold(inner, |acc, (src, (a, b))| Term::copy(src.clone(), a, b, acc))
}

/// The scrutinee, binders and body of an eliminator that binds over a body.
fn eliminator_parts(t: &Term) -> Option<(&Term, Vec<String>, &Term)> {
    match t {
        Term::Let(s, p, u) => Some((s, p.vars(), u)),
        Term::Copy(s, x, y, u) => Some((s, vec![x.clone(), y.clone()], u)),
        Term::Discard(s, u) => Some((s, vec![], u)),
        _ => None,
    }
}

fn with_scrutinee(t: &Term, s: Term) -> Term {
    match t {
        Term::Let(_, p, u) => Term::Let(Box::new(s), p.clone(), u.clone()),
        Term::Copy(_, x, y, u) => Term::Copy(Box::new(s), x.clone(), y.clone(), u.clone()),
        Term::Discard(_, u) => Term::Discard(Box::new(s), u.clone()),
        _ => unreachable!(),
    }
}

/// Forms that can be hoisted out of a scrutinee: the rule that does so, the
/// binders scoping over the body, and the body.
fn binder_parts(t: &Term) -> Option<(RewriteRule, Vec<String>, &Term)> {
    match t {
        Term::Let(_, p @ (Pattern::Unit | Pattern::Wildcard), b) => {
            Some((RewriteRule::NatU, p.vars(), b))
        }
        Term::Let(_, p, b) => Some((RewriteRule::NatT, p.vars(), b)),
        Term::Copy(_, x, y, b) => Some((RewriteRule::NatC, vec![x.clone(), y.clone()], b)),
        Term::Discard(_, b) => Some((RewriteRule::NatD, vec![], b)),
        Term::ExchL(_, _, x, y, b) => Some((RewriteRule::NatEl, vec![x.clone(), y.clone()], b)),
        Term::ExchR(_, _, x, y, b) => Some((RewriteRule::NatEr, vec![x.clone(), y.clone()], b)),
        _ => None,
    }
}

/// Rebuilds a binder form with new binder names and a new body.
fn with_body(t: &Term, names: &[String], body: Term) -> Term {
    let b = Box::new(body);
    match t {
        Term::Let(s, p, _) => {
            let mut p = p.clone();
            for (old, new) in p.vars().iter().zip(names) {
                p = p.rename(old, new);
            }
            Term::Let(s.clone(), p, b)
        }
        Term::Copy(s, _, _, _) => Term::Copy(s.clone(), names[0].clone(), names[1].clone(), b),
        Term::Discard(s, _) => Term::Discard(s.clone(), b),
        Term::ExchL(t1, t2, _, _, _) => Term::ExchL(
            t1.clone(),
            t2.clone(),
            names[0].clone(),
            names[1].clone(),
            b,
        ),
        Term::ExchR(t1, t2, _, _, _) => Term::ExchR(
            t1.clone(),
            t2.clone(),
            names[0].clone(),
            names[1].clone(),
            b,
        ),
        _ => unreachable!(),
    }
}

/// `E[B[t]] ⇝ B[E[t]]`: a binder form `B` in the scrutinee of an eliminator
/// `E` is moved outward so that `E` scrutinizes `B`'s body.
pub(crate) fn hoist(t: &Term) -> Option<(RewriteRule, Term)> {
    let (scrut, outer_binders, outer_body) = eliminator_parts(t)?;
    let (rule, inner_binders, inner_body) = binder_parts(scrut)?;
    let mut avoid = free_vars(outer_body);
    avoid.extend(outer_binders);
    let (names, inner_body) = rename_apart(&inner_binders, inner_body, &avoid);
    let moved = with_scrutinee(t, inner_body);
    Some((rule, with_body(scrut, &names, moved)))
}

/// Inverse of [`hoist`]: `B[E[t]] ⇝ E[B[t]]` when `B`'s binders do not occur
/// in the rest of `E`.
pub(crate) fn unhoist(t: &Term) -> Option<Term> {
    let (_, inner_binders, inner_body) = binder_parts(t)?;
    let (scrut, _, outer_body) = eliminator_parts(inner_body)?;
    let fv = free_vars(outer_body);
    if inner_binders.iter().any(|b| fv.contains(b)) {
        return None;
    }
    let b = with_body(t, &inner_binders, scrut.clone());
    Some(with_scrutinee(inner_body, b))
}
