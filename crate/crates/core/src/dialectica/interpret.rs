//! Derivations as dialectica morphisms.
//!
//! An antecedent `A1, …, An` denotes the left-nested tensor of the `Ai`.
//! Its `X` carrier is isomorphic to the product over `i` of functions from
//! the other leaves' `U` components to `Xi`, so each rule is interpreted on
//! that flat form: `fwd` maps the leaves' `U` values to the target `U`, and
//! `back(y, us, i)` gives leaf `i`'s `X` value without reading `us[i]`.
//! The flat form is converted back to the nested tensor once, at the root.
//!
//! Antecedent objects are computed from the derivation, so a contracted
//! `!A` carries the sum of its copies' bounds and a promoted context the
//! product of bounds. Where a premise expects a different grading than the
//! conclusion provides, a coercion converts values and reports
//! `BoundExceeded` if a multiset does not fit.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::carrier::Val;
use super::morphism::{bag, bang_parts, tensor_parts, DialMorphism};
use super::object::DialObject;
use super::{Dial, DialError};
use crate::sequent::{Derivation, RuleName};
use crate::syntax::{render_path, Formula};

type Res<T> = Result<T, DialError>;
type FwdFn = Arc<dyn Fn(&[Val]) -> Res<Val> + Send + Sync>;
type BackFn = Arc<dyn Fn(&Val, &[Option<Val>], usize) -> Res<Val> + Send + Sync>;
type MapFn = Arc<dyn Fn(&Val) -> Res<Val> + Send + Sync>;

#[derive(Clone)]
struct Multi {
    srcs: Vec<DialObject>,
    fwd: FwdFn,
    back: BackFn,
}

fn all(us: &[Option<Val>]) -> Vec<Val> {
    us.iter()
        .map(|u| u.clone().expect("leaf value is available"))
        .collect()
}

fn some(us: &[Val]) -> Vec<Option<Val>> {
    us.iter().cloned().map(Some).collect()
}

fn cat<T: Clone>(parts: &[&[T]]) -> Vec<T> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// The object denoted by a formula; `!` gets the given bound.
pub fn formula_object(
    dial: &Dial,
    f: &Formula,
    atoms: &BTreeMap<String, DialObject>,
    bound: usize,
) -> Res<DialObject> {
    let go = |g: &Formula| formula_object(dial, g, atoms, bound);
    match f {
        Formula::Atom(a) => atoms
            .get(a)
            .cloned()
            .ok_or_else(|| DialError::UnknownAtom(a.clone())),
        Formula::Unit => Ok(DialObject::Unit),
        Formula::Tensor(a, b) => dial.tensor_obj(&go(a)?, &go(b)?),
        Formula::RImp(a, b) => dial.hom_r(&go(a)?, &go(b)?),
        Formula::LImp(b, a) => dial.hom_l(&go(b)?, &go(a)?),
        Formula::Bang(a) => dial.bang_obj(&go(a)?, bound),
        Formula::Kappa(a) => dial.kappa_obj(&go(a)?),
    }
}

/// Interprets `d` with atoms sent to `atoms` and `!` in the succedent at
/// `bound`. The result has been checked with [`Dial::is_morphism`].
pub fn interpret(
    dial: &Dial,
    d: &Derivation,
    atoms: &BTreeMap<String, DialObject>,
    bound: usize,
) -> Res<DialMorphism> {
    let it = Interp { dial, atoms, bound };
    let target = formula_object(dial, d.succ(), atoms, bound)?;
    let m = it.go(d, &target, &mut Vec::new())?;
    it.finish(m, &target)
}

/// Converts values from one grading of an object to another of the same shape.
#[derive(Clone)]
struct Coercion {
    fwd: MapFn,
    back: MapFn,
}

fn identity() -> Coercion {
    Coercion {
        fwd: Arc::new(|v| Ok(v.clone())),
        back: Arc::new(|v| Ok(v.clone())),
    }
}

/// Pointwise larger bounds in covariant position, smaller in contravariant.
fn join(a: &DialObject, b: &DialObject, positive: bool) -> DialObject {
    use DialObject::*;
    if a == b {
        return a.clone();
    }
    match (a, b) {
        (Bang(x, k1), Bang(y, k2)) => {
            let k = if positive { *k1.max(k2) } else { *k1.min(k2) };
            Bang(Box::new(join(x, y, positive)), k)
        }
        (Tensor(a1, b1), Tensor(a2, b2)) => Tensor(
            Box::new(join(a1, a2, positive)),
            Box::new(join(b1, b2, positive)),
        ),
        (Kappa(x), Kappa(y)) => Kappa(Box::new(join(x, y, positive))),
        (HomR(a1, b1), HomR(a2, b2)) => HomR(
            Box::new(join(a1, a2, !positive)),
            Box::new(join(b1, b2, positive)),
        ),
        (HomL(b1, a1), HomL(b2, a2)) => HomL(
            Box::new(join(b1, b2, positive)),
            Box::new(join(a1, a2, !positive)),
        ),
        _ => a.clone(),
    }
}

struct Interp<'a, 'm> {
    dial: &'a Dial<'m>,
    atoms: &'a BTreeMap<String, DialObject>,
    bound: usize,
}

impl Interp<'_, '_> {
    fn coercion(&self, from: &DialObject, to: &DialObject, at: &str) -> Res<Coercion> {
        use DialObject::*;
        if from == to {
            return Ok(identity());
        }
        let cap = self.dial.cap;
        match (from, to) {
            (Bang(a, k1), Bang(b, _)) => {
                let c = self.coercion(a, b, at)?;
                let ua = a.u_carrier().elements(cap, "U carrier")?;
                let (xa, xb, ub) = (a.x_carrier(), b.x_carrier(), b.u_carrier());
                let (k1, at) = (*k1, at.to_string());
                let fwd = c.fwd.clone();
                Ok(Coercion {
                    fwd: c.fwd.clone(),
                    back: Arc::new(move |phi| {
                        let mut out = Vec::with_capacity(ua.len());
                        for u in &ua {
                            let mut items = Vec::new();
                            for &i in ub.apply(phi, &fwd(u)?).bag() {
                                items.push(xa.encode(&(c.back)(&xb.decode(i))?));
                            }
                            out.push(bag(k1, items, &at)?);
                        }
                        Ok(Val::Fun(out))
                    }),
                })
            }
            (Kappa(a), Kappa(b)) => self.coercion(a, b, at),
            (Tensor(a1, b1), Tensor(a2, b2)) => {
                let ca = self.coercion(a1, a2, at)?;
                let cb = self.coercion(b1, b2, at)?;
                let ua = a1.u_carrier().elements(cap, "U carrier")?;
                let ub = b1.u_carrier().elements(cap, "U carrier")?;
                let (ua2, ub2) = (a2.u_carrier(), b2.u_carrier());
                let (fa, fb) = (ca.fwd.clone(), cb.fwd.clone());
                Ok(Coercion {
                    fwd: Arc::new(move |u| {
                        let (x, y) = u.split();
                        Ok(Val::pair(fa(x)?, fb(y)?))
                    }),
                    back: Arc::new(move |x| {
                        let (h, k) = x.split();
                        let h2 = ub
                            .iter()
                            .map(|v| (ca.back)(ub2.apply(h, &(cb.fwd)(v)?)))
                            .collect::<Res<_>>()?;
                        let k2 = ua
                            .iter()
                            .map(|u| (cb.back)(ua2.apply(k, &(ca.fwd)(u)?)))
                            .collect::<Res<_>>()?;
                        Ok(Val::pair(Val::Fun(h2), Val::Fun(k2)))
                    }),
                })
            }
            (HomR(a1, b1), HomR(a2, b2)) | (HomL(b1, a1), HomL(b2, a2)) => {
                // contravariant in the argument
                let ca = self.coercion(a2, a1, at)?;
                let cb = self.coercion(b1, b2, at)?;
                let ua2 = a2.u_carrier().elements(cap, "U carrier")?;
                let yb2 = b2.x_carrier().elements(cap, "X carrier")?;
                let (ua1, yb1) = (a1.u_carrier(), b1.x_carrier());
                let (fa, bb) = (ca.fwd.clone(), cb.back.clone());
                Ok(Coercion {
                    fwd: Arc::new(move |gg| {
                        let (g, big_g) = gg.split();
                        let g2 = ua2
                            .iter()
                            .map(|u| (cb.fwd)(ua1.apply(g, &(ca.fwd)(u)?)))
                            .collect::<Res<_>>()?;
                        let gg2 = yb2
                            .iter()
                            .map(|y| (ca.back)(yb1.apply(big_g, &(cb.back)(y)?)))
                            .collect::<Res<_>>()?;
                        Ok(Val::pair(Val::Fun(g2), Val::Fun(gg2)))
                    }),
                    back: Arc::new(move |x| {
                        let (u, y) = x.split();
                        Ok(Val::pair(fa(u)?, bb(y)?))
                    }),
                })
            }
            _ => Err(DialError::ShapeMismatch(format!("cannot coerce {from} to {to}"))),
        }
    }

    fn obj(&self, f: &Formula) -> Res<DialObject> {
        formula_object(self.dial, f, self.atoms, self.bound)
    }

    fn go(&self, d: &Derivation, target: &DialObject, path: &mut Vec<usize>) -> Res<Multi> {
        let at = format!("{} at {}", d.rule, render_path(path));
        let mut sub = |i: usize, d: &Derivation, t: &DialObject| -> Res<Multi> {
            path.push(i);
            let r = self.go(d, t, path);
            path.pop();
            r
        };
        let cap = self.dial.cap;
        let prem = |i: usize| &d.premises[i];
        match d.rule {
            RuleName::Ax => Ok(Multi {
                srcs: vec![target.clone()],
                fwd: Arc::new(|us| Ok(us[0].clone())),
                back: Arc::new(|y, _, _| Ok(y.clone())),
            }),
            RuleName::Cut => {
                let p = d.splits[0];
                let r = sub(1, prem(1), target)?;
                let l = sub(0, prem(0), &r.srcs[p])?;
                let g = l.srcs.len();
                let srcs = cat(&[&r.srcs[..p], &l.srcs, &r.srcs[p + 1..]]);
                let (l2, r2) = (l.clone(), r.clone());
                Ok(Multi {
                    srcs,
                    fwd: Arc::new(move |us| {
                        let mid = (l.fwd)(&us[p..p + g])?;
                        (r.fwd)(&cat(&[&us[..p], &[mid], &us[p + g..]]))
                    }),
                    back: Arc::new(move |y, us, i| {
                        if (p..p + g).contains(&i) {
                            let v = cat(&[&us[..p], &[None], &us[p + g..]]);
                            let ax = (r2.back)(y, &v, p)?;
                            (l2.back)(&ax, &us[p..p + g], i - p)
                        } else {
                            let mid = (l2.fwd)(&all(&us[p..p + g]))?;
                            let v = cat(&[&us[..p], &[Some(mid)], &us[p + g..]]);
                            (r2.back)(y, &v, if i < p { i } else { i - g + 1 })
                        }
                    }),
                })
            }
            RuleName::Tr => {
                let (ta, tb) = tensor_parts(target)?;
                let l = sub(0, prem(0), ta)?;
                let r = sub(1, prem(1), tb)?;
                let g = l.srcs.len();
                let srcs = cat(&[&l.srcs, &r.srcs]);
                let (ua, ub) = (ta.u_carrier(), tb.u_carrier());
                let (l2, r2) = (l.clone(), r.clone());
                Ok(Multi {
                    srcs,
                    fwd: Arc::new(move |us| Ok(Val::pair((l.fwd)(&us[..g])?, (r.fwd)(&us[g..])?))),
                    back: Arc::new(move |y, us, i| {
                        let (h, k) = y.split();
                        if i < g {
                            let v = (r2.fwd)(&all(&us[g..]))?;
                            (l2.back)(ub.apply(h, &v), &us[..g], i)
                        } else {
                            let u = (l2.fwd)(&all(&us[..g]))?;
                            (r2.back)(ua.apply(k, &u), &us[g..], i - g)
                        }
                    }),
                })
            }
            RuleName::Ur => {
                if *target != DialObject::Unit {
                    return Err(DialError::ShapeMismatch(format!("{at}: target {target}")));
                }
                Ok(Multi {
                    srcs: vec![],
                    fwd: Arc::new(|_| Ok(Val::Idx(0))),
                    back: Arc::new(|_, _, _| unreachable!("the empty antecedent has no leaves")),
                })
            }
            RuleName::Ul | RuleName::W => {
                let k = d.principal.expect("principal position");
                let p = sub(0, prem(0), target)?;
                let leaf = if d.rule == RuleName::Ul {
                    DialObject::Unit
                } else {
                    self.obj(&d.ctx()[k])?
                };
                let empty = if d.rule == RuleName::Ul {
                    Val::Idx(0)
                } else {
                    let n = leaf.u_carrier().size_within(cap, "U carrier")?;
                    Val::Fun(vec![Val::Bag(vec![]); n])
                };
                let mut srcs = p.srcs.clone();
                srcs.insert(k, leaf);
                let p2 = p.clone();
                Ok(Multi {
                    srcs,
                    fwd: Arc::new(move |us| (p.fwd)(&cat(&[&us[..k], &us[k + 1..]]))),
                    back: Arc::new(move |y, us, i| {
                        if i == k {
                            return Ok(empty.clone());
                        }
                        let v = cat(&[&us[..k], &us[k + 1..]]);
                        (p2.back)(y, &v, if i > k { i - 1 } else { i })
                    }),
                })
            }
            RuleName::Tl => {
                let k = d.principal.expect("principal position");
                let p = sub(0, prem(0), target)?;
                let (a, b) = (p.srcs[k].clone(), p.srcs[k + 1].clone());
                let leaf = self.dial.tensor_obj(&a, &b)?;
                let mut srcs = p.srcs.clone();
                srcs.splice(k..k + 2, [leaf]);
                let ua = a.u_carrier().elements(cap, "U carrier")?;
                let ub = b.u_carrier().elements(cap, "U carrier")?;
                let p2 = p.clone();
                let expand = move |us: &[Option<Val>], x: Option<Val>, y: Option<Val>| {
                    cat(&[&us[..k], &[x, y], &us[k + 1..]])
                };
                Ok(Multi {
                    srcs,
                    fwd: Arc::new(move |us| {
                        let (x, y) = us[k].split();
                        (p.fwd)(&cat(&[&us[..k], &[x.clone(), y.clone()], &us[k + 1..]]))
                    }),
                    back: Arc::new(move |y, us, i| {
                        if i == k {
                            let h = ub
                                .iter()
                                .map(|v| (p2.back)(y, &expand(us, None, Some(v.clone())), k))
                                .collect::<Res<_>>()?;
                            let kk = ua
                                .iter()
                                .map(|u| (p2.back)(y, &expand(us, Some(u.clone()), None), k + 1))
                                .collect::<Res<_>>()?;
                            return Ok(Val::pair(Val::Fun(h), Val::Fun(kk)));
                        }
                        let uk = us[k].as_ref().expect("leaf value is available");
                        let (x1, x2) = uk.split();
                        let v = expand(us, Some(x1.clone()), Some(x2.clone()));
                        (p2.back)(y, &v, if i > k { i + 1 } else { i })
                    }),
                })
            }
            RuleName::IRr | RuleName::IRl => {
                let right = d.rule == RuleName::IRr;
                let (arg, res) = match (target, right) {
                    (DialObject::HomR(a, b), true) | (DialObject::HomL(b, a), false) => (a, b),
                    _ => return Err(DialError::ShapeMismatch(format!("{at}: target {target}"))),
                };
                let p = sub(0, prem(0), res)?;
                let n = p.srcs.len();
                let slot = if right { 0 } else { n - 1 };
                let c = self.coercion(arg, &p.srcs[slot], &at)?;
                let srcs = if right { p.srcs[1..].to_vec() } else { p.srcs[..n - 1].to_vec() };
                let ua = arg.u_carrier().elements(cap, "U carrier")?;
                let yb = res.x_carrier().elements(cap, "X carrier")?;
                let place = move |us: &[Option<Val>], x: Option<Val>| {
                    if right {
                        cat(&[&[x], us])
                    } else {
                        cat(&[us, &[x]])
                    }
                };
                let (p2, c2) = (p.clone(), c.clone());
                Ok(Multi {
                    srcs,
                    fwd: Arc::new(move |us| {
                        let opt = some(us);
                        let g = ua
                            .iter()
                            .map(|u| (p.fwd)(&all(&place(&opt, Some((c.fwd)(u)?)))))
                            .collect::<Res<_>>()?;
                        let big_g = yb
                            .iter()
                            .map(|y| (c.back)(&(p.back)(y, &place(&opt, None), slot)?))
                            .collect::<Res<_>>()?;
                        Ok(Val::pair(Val::Fun(g), Val::Fun(big_g)))
                    }),
                    back: Arc::new(move |x, us, i| {
                        let (u, y) = x.split();
                        let v = place(us, Some((c2.fwd)(u)?));
                        (p2.back)(y, &v, if right { i + 1 } else { i })
                    }),
                })
            }
            RuleName::ILr | RuleName::ILl => {
                let right = d.rule == RuleName::ILr;
                let (body_pos, arg_f) = if right {
                    (d.splits[0], prem(0).succ().clone())
                } else {
                    (d.principal.expect("principal position"), prem(0).succ().clone())
                };
                let pb = sub(1, prem(1), target)?;
                let body_obj = pb.srcs[body_pos].clone();
                let arg_obj = self.obj(&arg_f)?;
                let pa = sub(0, prem(0), &arg_obj)?;
                let g = pa.srcs.len();
                let i = body_pos;
                // positions in the conclusion: the hom and the argument's context
                let (h_pos, ctx_lo) = if right { (i + g, i) } else { (i, i + 1) };
                let hom = if right {
                    self.dial.hom_r(&arg_obj, &body_obj)?
                } else {
                    self.dial.hom_l(&body_obj, &arg_obj)?
                };
                let srcs = if right {
                    cat(&[&pb.srcs[..i], &pa.srcs, &[hom], &pb.srcs[i + 1..]])
                } else {
                    cat(&[&pb.srcs[..i], &[hom], &pa.srcs, &pb.srcs[i + 1..]])
                };
                let ua = arg_obj.u_carrier();
                let yb = body_obj.x_carrier();
                let body_ctx = move |us: &[Option<Val>], mid: Option<Val>| {
                    cat(&[&us[..i], &[mid], &us[i + g + 1..]])
                };
                let applied = {
                    let pa = pa.clone();
                    let ua = ua.clone();
                    move |us: &[Option<Val>]| -> Res<Val> {
                        let hv = us[h_pos].as_ref().expect("leaf value is available");
                        let u = (pa.fwd)(&all(&us[ctx_lo..ctx_lo + g]))?;
                        Ok(ua.apply(hv.split().0, &u).clone())
                    }
                };
                let applied2 = applied.clone();
                let pb2 = pb.clone();
                Ok(Multi {
                    srcs,
                    fwd: Arc::new(move |us| {
                        let opt = some(us);
                        let mid = applied(&opt)?;
                        (pb.fwd)(&all(&body_ctx(&opt, Some(mid))))
                    }),
                    back: Arc::new(move |y, us, j| {
                        if j == h_pos || (ctx_lo..ctx_lo + g).contains(&j) {
                            let yv = (pb2.back)(y, &body_ctx(us, None), i)?;
                            if j == h_pos {
                                let u = (pa.fwd)(&all(&us[ctx_lo..ctx_lo + g]))?;
                                return Ok(Val::pair(u, yv));
                            }
                            let hv = us[h_pos].as_ref().expect("leaf value is available");
                            let xa = yb.apply(hv.split().1, &yv);
                            return (pa.back)(xa, &us[ctx_lo..ctx_lo + g], j - ctx_lo);
                        }
                        let mid = applied2(us)?;
                        let v = body_ctx(us, Some(mid));
                        (pb2.back)(y, &v, if j < i { j } else { j - g })
                    }),
                })
            }
            RuleName::C => {
                let k = d.principal.expect("principal position");
                let p = sub(0, prem(0), target)?;
                let (o1, o2) = (p.srcs[k].clone(), p.srcs[k + 1].clone());
                let (a1, k1) = bang_parts(&o1)?;
                let (a2, k2) = bang_parts(&o2)?;
                let a = join(a1, a2, true);
                let big_k = k1 + k2;
                let leaf = self.dial.bang_obj(&a, big_k)?;
                let c1 = self.coercion(&self.dial.bang_obj(&a, k1)?, &o1, &at)?;
                let c2 = self.coercion(&self.dial.bang_obj(&a, k2)?, &o2, &at)?;
                let mut srcs = p.srcs.clone();
                srcs.splice(k..k + 2, [leaf]);
                let ua = a.u_carrier();
                let us_all = ua.elements(cap, "U carrier")?;
                let (p2, c1b, c2b) = (p.clone(), c1.clone(), c2.clone());
                Ok(Multi {
                    srcs,
                    fwd: Arc::new(move |us| {
                        let two = [(c1.fwd)(&us[k])?, (c2.fwd)(&us[k])?];
                        (p.fwd)(&cat(&[&us[..k], &two, &us[k + 1..]]))
                    }),
                    back: Arc::new(move |y, us, j| {
                        let rest = &us[k + 1..];
                        if j == k {
                            let mut phi = Vec::with_capacity(us_all.len());
                            for u in &us_all {
                                let v1 = cat(&[&us[..k], &[None, Some((c2b.fwd)(u)?)], rest]);
                                let v2 = cat(&[&us[..k], &[Some((c1b.fwd)(u)?), None], rest]);
                                let x1 = (c1b.back)(&(p2.back)(y, &v1, k)?)?;
                                let x2 = (c2b.back)(&(p2.back)(y, &v2, k + 1)?)?;
                                let mut items = ua.apply(&x1, u).bag().to_vec();
                                items.extend_from_slice(ua.apply(&x2, u).bag());
                                phi.push(bag(big_k, items, &at)?);
                            }
                            return Ok(Val::Fun(phi));
                        }
                        let u = us[k].as_ref().expect("leaf value is available");
                        let two = [Some((c1b.fwd)(u)?), Some((c2b.fwd)(u)?)];
                        let v = cat(&[&us[..k], &two, rest]);
                        (p2.back)(y, &v, if j > k { j + 1 } else { j })
                    }),
                })
            }
            RuleName::Bl => {
                let k = d.principal.expect("principal position");
                let p = sub(0, prem(0), target)?;
                let inner = p.srcs[k].clone();
                let mut srcs = p.srcs.clone();
                srcs[k] = self.dial.bang_obj(&inner, 1)?;
                let n = inner.u_carrier().size_within(cap, "U carrier")?;
                let xc = inner.x_carrier();
                let p2 = p.clone();
                Ok(Multi {
                    srcs,
                    fwd: p.fwd,
                    back: Arc::new(move |y, us, j| {
                        let x = (p2.back)(y, us, j)?;
                        if j == k {
                            let single = bag(1, vec![xc.encode(&x)], &at)?;
                            return Ok(Val::Fun(vec![single; n]));
                        }
                        Ok(x)
                    }),
                })
            }
            RuleName::Br => {
                let (ta, kt) = bang_parts(target)?;
                let p = sub(0, prem(0), ta)?;
                let mut srcs = Vec::with_capacity(p.srcs.len());
                let mut leaves = Vec::new();
                for s in &p.srcs {
                    let (g, ki) = bang_parts(s)?;
                    srcs.push(self.dial.bang_obj(g, ki * kt)?);
                    leaves.push((g.u_carrier().elements(cap, "U carrier")?, g.u_carrier(), ki * kt));
                }
                let (uta, xta) = (ta.u_carrier(), ta.x_carrier());
                let p2 = p.clone();
                Ok(Multi {
                    srcs,
                    fwd: p.fwd,
                    back: Arc::new(move |psi, us, i| {
                        let (ws, wc, bound) = &leaves[i];
                        let mut phi = Vec::with_capacity(ws.len());
                        for w in ws {
                            let mut v = us.to_vec();
                            v[i] = Some(w.clone());
                            let u = (p2.fwd)(&all(&v))?;
                            let mut items = Vec::new();
                            for &yi in uta.apply(psi, &u).bag() {
                                let x = (p2.back)(&xta.decode(yi), us, i)?;
                                items.extend_from_slice(wc.apply(&x, w).bag());
                            }
                            phi.push(bag(*bound, items, &at)?);
                        }
                        Ok(Val::Fun(phi))
                    }),
                })
            }
            RuleName::Er => {
                let ta = match target {
                    DialObject::Kappa(a) => a,
                    _ => return Err(DialError::ShapeMismatch(format!("{at}: target {target}"))),
                };
                sub(0, prem(0), ta)
            }
            RuleName::El => {
                let k = d.principal.expect("principal position");
                let mut p = sub(0, prem(0), target)?;
                p.srcs[k] = self.dial.kappa_obj(&p.srcs[k])?;
                Ok(p)
            }
            RuleName::E1 | RuleName::E2 => {
                let k = d.principal.expect("principal position");
                let (a, b) = if d.rule == RuleName::E1 { (k, k + 1) } else { (k - 1, k) };
                let p = sub(0, prem(0), target)?;
                let mut srcs = p.srcs.clone();
                srcs.swap(a, b);
                let p2 = p.clone();
                let perm = move |j: usize| match j {
                    j if j == a => b,
                    j if j == b => a,
                    j => j,
                };
                Ok(Multi {
                    srcs,
                    fwd: Arc::new(move |us| {
                        let mut v = us.to_vec();
                        v.swap(a, b);
                        (p.fwd)(&v)
                    }),
                    back: Arc::new(move |y, us, j| {
                        let mut v = us.to_vec();
                        v.swap(a, b);
                        (p2.back)(y, &v, perm(j))
                    }),
                })
            }
        }
    }

    /// Tabulates against the left-nested tensor of the antecedent.
    fn finish(&self, m: Multi, target: &DialObject) -> Res<DialMorphism> {
        let dial = self.dial;
        let n = m.srcs.len();
        let mut prefixes: Vec<DialObject> = Vec::with_capacity(n);
        for (i, s) in m.srcs.iter().enumerate() {
            let next = if i == 0 {
                s.clone()
            } else {
                dial.tensor_obj(&prefixes[i - 1], s)?
            };
            prefixes.push(next);
        }
        let source = prefixes.last().cloned().unwrap_or(DialObject::Unit);
        let leaf_us: Vec<Vec<Val>> = m
            .srcs
            .iter()
            .map(|s| s.u_carrier().elements(dial.cap, "U carrier"))
            .collect::<Res<_>>()?;
        let prefix_us: Vec<Vec<Val>> = prefixes
            .iter()
            .take(n.saturating_sub(1))
            .map(|s| s.u_carrier().elements(dial.cap, "U carrier"))
            .collect::<Res<_>>()?;

        fn flatten(v: &Val, n: usize, out: &mut Vec<Val>) {
            if n == 1 {
                out.push(v.clone());
            } else {
                let (l, r) = v.split();
                flatten(l, n - 1, out);
                out.push(r.clone());
            }
        }

        // X value of the prefix tree over leaves `0..hi`, with the other
        // leaves' U values fixed in `ctx`.
        fn tree(
            m: &Multi,
            y: &Val,
            hi: usize,
            ctx: &mut Vec<Option<Val>>,
            leaf_us: &[Vec<Val>],
            prefix_us: &[Vec<Val>],
        ) -> Res<Val> {
            if hi == 1 {
                return (m.back)(y, ctx, 0);
            }
            let last = hi - 1;
            let mut h = Vec::with_capacity(leaf_us[last].len());
            for v in &leaf_us[last] {
                ctx[last] = Some(v.clone());
                h.push(tree(m, y, last, ctx, leaf_us, prefix_us)?);
            }
            ctx[last] = None;
            let mut k = Vec::with_capacity(prefix_us[last - 1].len());
            for u in &prefix_us[last - 1] {
                let mut flat = Vec::with_capacity(last);
                flatten(u, last, &mut flat);
                for (slot, val) in ctx.iter_mut().zip(flat) {
                    *slot = Some(val);
                }
                k.push((m.back)(y, ctx, last)?);
            }
            for slot in ctx.iter_mut().take(last) {
                *slot = None;
            }
            Ok(Val::pair(Val::Fun(h), Val::Fun(k)))
        }

        dial.build(
            &source,
            target,
            |u| {
                if n == 0 {
                    return (m.fwd)(&[]);
                }
                let mut flat = Vec::with_capacity(n);
                flatten(u, n, &mut flat);
                (m.fwd)(&flat)
            },
            |y| {
                if n == 0 {
                    return Ok(Val::Idx(0));
                }
                tree(&m, y, n, &mut vec![None; n], &leaf_us, &prefix_us)
            },
        )
    }
}
