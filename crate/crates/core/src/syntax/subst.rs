use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::Term;

/// Free variables of `t`.
pub fn free_vars(t: &Term) -> BTreeSet<String> {
    free_occurrences(t).into_iter().collect()
}

/// Free variable occurrences in left-to-right order, with repetitions.
pub fn free_occurrences(t: &Term) -> Vec<String> {
    let mut out = Vec::new();
    let mut bound = Vec::new();
    occ(t, &mut bound, &mut out);
    out
}

fn occ(t: &Term, bound: &mut Vec<String>, out: &mut Vec<String>) {
    let under = |vars: &[String], body: &Term, bound: &mut Vec<String>, out: &mut Vec<String>| {
        let n = bound.len();
        bound.extend(vars.iter().cloned());
        occ(body, bound, out);
        bound.truncate(n);
    };
    match t {
        Term::Var(x) => {
            if !bound.contains(x) {
                out.push(x.clone());
            }
        }
        Term::Unit => {}
        Term::Tensor(a, b) | Term::AppL(a, b) | Term::AppR(a, b) | Term::Discard(a, b) => {
            occ(a, bound, out);
            occ(b, bound, out);
        }
        Term::LamL(x, _, b) | Term::LamR(x, _, b) => under(std::slice::from_ref(x), b, bound, out),
        Term::DerelictBang(a) | Term::DerelictKappa(a) => occ(a, bound, out),
        Term::Let(s, p, b) => {
            occ(s, bound, out);
            under(&p.vars(), b, bound, out);
        }
        Term::Copy(s, x, y, b) => {
            occ(s, bound, out);
            under(&[x.clone(), y.clone()], b, bound, out);
        }
        Term::PromoteBang(srcs, xs, b) | Term::PromoteKappa(srcs, xs, b) => {
            for s in srcs {
                occ(s, bound, out);
            }
            under(xs, b, bound, out);
        }
        Term::ExchL(a, b, x, y, c) | Term::ExchR(a, b, x, y, c) => {
            occ(a, bound, out);
            occ(b, bound, out);
            under(&[x.clone(), y.clone()], c, bound, out);
        }
    }
}

/// Every variable name appearing anywhere in `t`, free or bound.
pub fn all_vars(t: &Term) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_all(t, &mut out);
    out
}

fn collect_all(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(x) => {
            out.insert(x.clone());
        }
        Term::LamL(x, _, _) | Term::LamR(x, _, _) => {
            out.insert(x.clone());
        }
        Term::Let(_, p, _) => out.extend(p.vars()),
        Term::Copy(_, x, y, _) | Term::ExchL(_, _, x, y, _) | Term::ExchR(_, _, x, y, _) => {
            out.insert(x.clone());
            out.insert(y.clone());
        }
        Term::PromoteBang(_, xs, _) | Term::PromoteKappa(_, xs, _) => out.extend(xs.iter().cloned()),
        _ => {}
    }
    for c in t.children() {
        collect_all(c, out);
    }
}

/// Smallest `base$n` not in `avoid`; an existing `$n` suffix on `base` is dropped first.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = match base.rfind('$') {
        Some(i) if base[i + 1..].chars().all(|c| c.is_ascii_digit()) => &base[..i],
        _ => base,
    };
    (0..)
        .map(|n| format!("{stem}${n}"))
        .find(|c| !avoid.contains(c))
        .unwrap()
}

/// Renames those `binders` that occur in `avoid`, rewriting `body` to match.
pub fn rename_apart(
    binders: &[String],
    body: &Term,
    avoid: &BTreeSet<String>,
) -> (Vec<String>, Term) {
    let mut taken = avoid.clone();
    taken.extend(all_vars(body));
    taken.extend(binders.iter().cloned());
    let mut out = Vec::new();
    let mut pairs = Vec::new();
    for b in binders {
        if avoid.contains(b) {
            let f = fresh_name(b, &taken);
            taken.insert(f.clone());
            pairs.push((b.clone(), Term::Var(f.clone())));
            out.push(f);
        } else {
            out.push(b.clone());
        }
    }
    if pairs.is_empty() {
        (out, body.clone())
    } else {
        (out, substitute_many(body, &pairs))
    }
}

/// Capture-avoiding `[s/x]t`.
pub fn substitute(t: &Term, x: &str, s: &Term) -> Term {
    substitute_many(t, &[(x.to_string(), s.clone())])
}

/// Simultaneous capture-avoiding substitution.
pub fn substitute_many(t: &Term, pairs: &[(String, Term)]) -> Term {
    let map: BTreeMap<String, Term> = pairs.iter().cloned().collect();
    let mut avoid = all_vars(t);
    for (x, s) in pairs {
        avoid.insert(x.clone());
        avoid.extend(all_vars(s));
    }
    subst(t, &map, &mut avoid)
}

fn subst(t: &Term, map: &BTreeMap<String, Term>, avoid: &mut BTreeSet<String>) -> Term {
    if map.is_empty() {
        return t.clone();
    }
    match t {
        Term::Var(x) => map.get(x).cloned().unwrap_or_else(|| t.clone()),
        Term::Unit => Term::Unit,
        Term::Tensor(a, b) => Term::tensor(subst(a, map, avoid), subst(b, map, avoid)),
        Term::AppL(a, b) => Term::app_l(subst(a, map, avoid), subst(b, map, avoid)),
        Term::AppR(a, b) => Term::app_r(subst(a, map, avoid), subst(b, map, avoid)),
        Term::Discard(a, b) => Term::discard(subst(a, map, avoid), subst(b, map, avoid)),
        Term::DerelictBang(a) => Term::derelict_bang(subst(a, map, avoid)),
        Term::DerelictKappa(a) => Term::derelict_kappa(subst(a, map, avoid)),
        Term::LamL(x, ann, b) | Term::LamR(x, ann, b) => {
            let (xs, b) = under_binder(std::slice::from_ref(x), b, map, avoid);
            let x = xs.into_iter().next().unwrap();
            if matches!(t, Term::LamL(..)) {
                Term::LamL(x, ann.clone(), Box::new(b))
            } else {
                Term::LamR(x, ann.clone(), Box::new(b))
            }
        }
        Term::Let(s, p, b) => {
            let s = subst(s, map, avoid);
            let vars = p.vars();
            let (new_vars, b) = under_binder(&vars, b, map, avoid);
            let mut p = p.clone();
            for (old, new) in vars.iter().zip(&new_vars) {
                if old != new {
                    p = p.rename(old, new);
                }
            }
            Term::let_(s, p, b)
        }
        Term::Copy(s, x, y, b) => {
            let s = subst(s, map, avoid);
            let (v, b) = under_binder(&[x.clone(), y.clone()], b, map, avoid);
            Term::Copy(Box::new(s), v[0].clone(), v[1].clone(), Box::new(b))
        }
        Term::PromoteBang(srcs, xs, b) | Term::PromoteKappa(srcs, xs, b) => {
            let srcs = srcs.iter().map(|s| subst(s, map, avoid)).collect();
            let (xs, b) = under_binder(xs, b, map, avoid);
            if matches!(t, Term::PromoteBang(..)) {
                Term::PromoteBang(srcs, xs, Box::new(b))
            } else {
                Term::PromoteKappa(srcs, xs, Box::new(b))
            }
        }
        Term::ExchL(a, b, x, y, c) | Term::ExchR(a, b, x, y, c) => {
            let a = Box::new(subst(a, map, avoid));
            let b = Box::new(subst(b, map, avoid));
            let (v, c) = under_binder(&[x.clone(), y.clone()], c, map, avoid);
            let (x, y, c) = (v[0].clone(), v[1].clone(), Box::new(c));
            if matches!(t, Term::ExchL(..)) {
                Term::ExchL(a, b, x, y, c)
            } else {
                Term::ExchR(a, b, x, y, c)
            }
        }
    }
}

fn under_binder(
    vars: &[String],
    body: &Term,
    map: &BTreeMap<String, Term>,
    avoid: &mut BTreeSet<String>,
) -> (Vec<String>, Term) {
    let mut inner: BTreeMap<String, Term> = map
        .iter()
        .filter(|(k, _)| !vars.contains(k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    // Only entries whose key actually occurs free matter for capture.
    let fv_body = free_vars(body);
    inner.retain(|k, _| fv_body.contains(k));
    if inner.is_empty() {
        return (vars.to_vec(), body.clone());
    }
    let incoming: BTreeSet<String> = inner.values().flat_map(free_vars).collect();
    let mut new_vars = vars.to_vec();
    for v in new_vars.iter_mut() {
        if incoming.contains(v) {
            let fresh = fresh_name(v, avoid);
            avoid.insert(fresh.clone());
            inner.insert(v.clone(), Term::Var(fresh.clone()));
            *v = fresh;
        }
    }
    let body = subst(body, &inner, avoid);
    (new_vars, body)
}

/// Renames every bound variable to a canonical name determined by binder
/// position, leaving free variables alone.
pub fn alpha_normalize(t: &Term) -> Term {
    let mut counter = 0usize;
    canon(t, &HashMap::new(), &mut counter)
}

pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    alpha_normalize(a) == alpha_normalize(b)
}

fn canon(t: &Term, env: &HashMap<String, String>, n: &mut usize) -> Term {
    let bind = |vars: &[String], env: &HashMap<String, String>, n: &mut usize| {
        let mut e = env.clone();
        let mut names = Vec::new();
        for v in vars {
            let c = format!("%{}", *n);
            *n += 1;
            e.insert(v.clone(), c.clone());
            names.push(c);
        }
        (e, names)
    };
    match t {
        Term::Var(x) => Term::Var(env.get(x).cloned().unwrap_or_else(|| x.clone())),
        Term::Unit => Term::Unit,
        Term::Tensor(a, b) => Term::tensor(canon(a, env, n), canon(b, env, n)),
        Term::AppL(a, b) => Term::app_l(canon(a, env, n), canon(b, env, n)),
        Term::AppR(a, b) => Term::app_r(canon(a, env, n), canon(b, env, n)),
        Term::Discard(a, b) => Term::discard(canon(a, env, n), canon(b, env, n)),
        Term::DerelictBang(a) => Term::derelict_bang(canon(a, env, n)),
        Term::DerelictKappa(a) => Term::derelict_kappa(canon(a, env, n)),
        Term::LamL(x, ann, b) | Term::LamR(x, ann, b) => {
            let (e, names) = bind(std::slice::from_ref(x), env, n);
            let body = Box::new(canon(b, &e, n));
            let x = names[0].clone();
            if matches!(t, Term::LamL(..)) {
                Term::LamL(x, ann.clone(), body)
            } else {
                Term::LamR(x, ann.clone(), body)
            }
        }
        Term::Let(s, p, b) => {
            let s = canon(s, env, n);
            let vars = p.vars();
            let (e, names) = bind(&vars, env, n);
            let mut p2 = p.clone();
            // Rename through a temporary prefix so overlapping names cannot collide.
            for (old, new) in vars.iter().zip(&names) {
                p2 = p2.rename(old, &format!("#{new}"));
            }
            for new in &names {
                p2 = p2.rename(&format!("#{new}"), new);
            }
            Term::let_(s, p2, canon(b, &e, n))
        }
        Term::Copy(s, x, y, b) => {
            let s = canon(s, env, n);
            let (e, v) = bind(&[x.clone(), y.clone()], env, n);
            Term::Copy(Box::new(s), v[0].clone(), v[1].clone(), Box::new(canon(b, &e, n)))
        }
        Term::PromoteBang(srcs, xs, b) | Term::PromoteKappa(srcs, xs, b) => {
            let srcs = srcs.iter().map(|s| canon(s, env, n)).collect();
            let (e, v) = bind(xs, env, n);
            let body = Box::new(canon(b, &e, n));
            if matches!(t, Term::PromoteBang(..)) {
                Term::PromoteBang(srcs, v, body)
            } else {
                Term::PromoteKappa(srcs, v, body)
            }
        }
        Term::ExchL(a, b, x, y, c) | Term::ExchR(a, b, x, y, c) => {
            let a = Box::new(canon(a, env, n));
            let b = Box::new(canon(b, env, n));
            let (e, v) = bind(&[x.clone(), y.clone()], env, n);
            let c = Box::new(canon(c, &e, n));
            if matches!(t, Term::ExchL(..)) {
                Term::ExchL(a, b, v[0].clone(), v[1].clone(), c)
            } else {
                Term::ExchR(a, b, v[0].clone(), v[1].clone(), c)
            }
        }
    }
}
