//! Sampled checks of the categorical laws.
//!
//! Each law is checked on `samples` instances built from random base
//! objects with carriers of size 1 or 2. Equalities are tablewise. When an
//! instance exceeds the size cap it is redrawn with smaller carriers; one
//! that still does not fit counts as skipped. Failures of `!` laws on a
//! non-commutative host are counted separately as order-sensitive, since
//! `!` multiplies multisets in a fixed element order.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::morphism::DialMorphism;
use super::object::{DialObject, Eval};
use super::{Dial, DialError};
use crate::algebra::FinBiclosedPoset;
use crate::Exec;

pub const LAW_NAMES: [&str; 14] = [
    "category",
    "tensor-bifunctor",
    "unitors",
    "associator",
    "triangle",
    "pentagon",
    "adjunction-right",
    "adjunction-left",
    "kappa-comonad",
    "kappa-exchange",
    "bang-arrows",
    "bang-comonad",
    "bang-comonoid",
    "bang-natural",
];

fn is_bang_law(law: &str) -> bool {
    law.starts_with("bang")
}

fn is_kappa_law(law: &str) -> bool {
    law.starts_with("kappa")
}

/// Four-fold tensors of 2×2 objects reach millions of elements; pentagon
/// instances above this are redrawn smaller.
const PENTAGON_CAP: usize = 20_000;

/// Hom-sets are enumerated only below this many candidate tables.
const HOM_LIMIT: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawOutcome {
    Pass,
    Fail(String),
    OrderSensitive(String),
    BoundExceeded(String),
    SizeSkipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub law: &'static str,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub order_sensitive: usize,
    pub bound_exceeded: usize,
    pub size_skipped: usize,
    /// Instances that needed smaller carriers to fit the cap.
    pub shrunk: usize,
    pub first_problem: Option<String>,
    /// Set when the host cannot support the law at all.
    pub unsupported: Option<String>,
}

impl LawResult {
    pub fn ok(&self) -> bool {
        self.unsupported.is_some()
            || (self.failed == 0
                && self.order_sensitive == 0
                && self.bound_exceeded == 0
                && self.passed > 0)
    }

    pub fn status(&self) -> &'static str {
        if self.unsupported.is_some() {
            "unsupported"
        } else if self.ok() {
            "ok"
        } else if self.failed == 0 && self.bound_exceeded == 0 && self.order_sensitive > 0 {
            "order-sensitive"
        } else {
            "FAIL"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub host: String,
    pub samples: usize,
    pub bound: usize,
    pub seed: u64,
    pub results: Vec<LawResult>,
}

impl LawReport {
    pub fn ok(&self) -> bool {
        self.results.iter().all(LawResult::ok)
    }

    pub fn get(&self, law: &str) -> Option<&LawResult> {
        self.results.iter().find(|r| r.law == law)
    }

    pub fn machine(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!(
                "host={} law={} checked={} passed={} failed={} order_sensitive={} bound_exceeded={} size_skipped={} shrunk={} status={}\n",
                self.host,
                r.law,
                r.checked,
                r.passed,
                r.failed,
                r.order_sensitive,
                r.bound_exceeded,
                r.size_skipped,
                r.shrunk,
                r.status()
            ));
        }
        out
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "host {}: {} samples per law, bound {}, seed {:#x}",
            self.host, self.samples, self.bound, self.seed
        )?;
        writeln!(
            f,
            "{:<18} {:>7} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6}  status",
            "law", "checked", "pass", "fail", "order", "bound", "skip", "shrunk"
        )?;
        for r in &self.results {
            writeln!(
                f,
                "{:<18} {:>7} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6}  {}",
                r.law,
                r.checked,
                r.passed,
                r.failed,
                r.order_sensitive,
                r.bound_exceeded,
                r.size_skipped,
                r.shrunk,
                r.status()
            )?;
            if let Some(u) = &r.unsupported {
                writeln!(f, "    {u}")?;
            }
            if let Some(p) = &r.first_problem {
                writeln!(f, "    first problem: {p}")?;
            }
        }
        Ok(())
    }
}

enum Problem {
    Mismatch(String),
    Dial(DialError),
}

impl From<DialError> for Problem {
    fn from(e: DialError) -> Problem {
        Problem::Dial(e)
    }
}

type Check = Result<(), Problem>;

fn same(what: &str, l: &DialMorphism, r: &DialMorphism) -> Check {
    if l == r {
        Ok(())
    } else {
        Err(Problem::Mismatch(format!("{what}: tables differ")))
    }
}

/// Random small objects. Higher levels shrink carriers toward 1.
struct Sampler {
    rng: ChaCha8Rng,
    level: u8,
}

impl Sampler {
    fn side(&mut self, shrink: bool) -> usize {
        if shrink {
            1
        } else {
            self.rng.gen_range(1..=2)
        }
    }

    fn object(&mut self, d: &Dial) -> DialObject {
        let u = self.side(self.level == 1 || self.level >= 3);
        let x = self.side(self.level >= 2);
        let n = d.host.len();
        let alpha = (0..u * x).map(|_| self.rng.gen_range(0..n)).collect();
        DialObject::Base { u, x, alpha }
    }

    fn pick<T: Clone>(&mut self, items: &[T]) -> T {
        items[self.rng.gen_range(0..items.len())].clone()
    }

    /// A random morphism out of `a` into a fresh object.
    fn from(&mut self, d: &Dial, a: &DialObject) -> Result<DialMorphism, Problem> {
        for _ in 0..20 {
            let b = self.object(d);
            let homs = hom_set(d, a, &b)?;
            if !homs.is_empty() {
                return Ok(self.pick(&homs));
            }
        }
        Ok(d.id(a)?)
    }

    /// A random morphism from a fresh object into `b`.
    fn into(&mut self, d: &Dial, b: &DialObject) -> Result<DialMorphism, Problem> {
        for _ in 0..20 {
            let a = self.object(d);
            let homs = hom_set(d, &a, b)?;
            if !homs.is_empty() {
                return Ok(self.pick(&homs));
            }
        }
        Ok(d.id(b)?)
    }
}

/// All morphisms `a → b`. For fixed `f` the condition splits over `y`, so
/// the valid `F` are a product of per-`y` choices.
pub(crate) fn hom_set(
    d: &Dial,
    a: &DialObject,
    b: &DialObject,
) -> Result<Vec<DialMorphism>, DialError> {
    let us = a.u_carrier().elements(d.cap, "source U")?;
    let vs = b.u_carrier().elements(d.cap, "target U")?;
    let xs = a.x_carrier().elements(d.cap, "source X")?;
    let ys = b.x_carrier().elements(d.cap, "target X")?;
    let candidates = (vs.len() as u128).checked_pow(us.len() as u32);
    if candidates.is_none_or(|c| c > HOM_LIMIT) {
        return Err(DialError::SizeExceeded {
            what: "hom-set",
            size: candidates,
        });
    }
    let m = d.host;
    let (ea, eb) = (Eval::new(a), Eval::new(b));
    let sa: Vec<Vec<usize>> = us
        .iter()
        .map(|u| xs.iter().map(|x| ea.alpha(m, u, x)).collect())
        .collect();
    let sb: Vec<Vec<usize>> = vs
        .iter()
        .map(|v| ys.iter().map(|y| eb.alpha(m, v, y)).collect())
        .collect();
    let mut out = Vec::new();
    let mut f = vec![0usize; us.len()];
    loop {
        let allowed: Vec<Vec<usize>> = (0..ys.len())
            .map(|y| {
                (0..xs.len())
                    .filter(|&x| (0..us.len()).all(|u| m.le(sa[u][x], sb[f[u]][y])))
                    .collect()
            })
            .collect();
        let count = allowed
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128));
        if count.is_none_or(|c| c + out.len() as u128 > HOM_LIMIT) {
            return Err(DialError::SizeExceeded {
                what: "hom-set",
                size: count,
            });
        }
        if !allowed.iter().any(Vec::is_empty) {
            let mut pos = vec![0usize; ys.len()];
            loop {
                out.push(DialMorphism {
                    source: a.clone(),
                    target: b.clone(),
                    f: f.clone(),
                    big_f: pos.iter().zip(&allowed).map(|(&p, c)| c[p]).collect(),
                });
                let mut i = 0;
                while i < pos.len() {
                    pos[i] += 1;
                    if pos[i] < allowed[i].len() {
                        break;
                    }
                    pos[i] = 0;
                    i += 1;
                }
                if i == pos.len() {
                    break;
                }
            }
        }
        let mut i = 0;
        while i < f.len() {
            f[i] += 1;
            if f[i] < vs.len() {
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if i == f.len() {
            break;
        }
    }
    Ok(out)
}

fn run_law(law: &str, d: &Dial, s: &mut Sampler, k: usize) -> Check {
    match law {
        "category" => {
            let a = s.object(d);
            let f = s.from(d, &a)?;
            let g = s.from(d, &f.target)?;
            let h = s.from(d, &g.target)?;
            same("id . f", &d.compose(&d.id(&f.target)?, &f)?, &f)?;
            same("f . id", &d.compose(&f, &d.id(&a)?)?, &f)?;
            let l = d.compose(&h, &d.compose(&g, &f)?)?;
            let r = d.compose(&d.compose(&h, &g)?, &f)?;
            same("associativity", &l, &r)
        }
        "tensor-bifunctor" => {
            let (a1, a2) = (s.object(d), s.object(d));
            let f1 = s.from(d, &a1)?;
            let f2 = s.from(d, &a2)?;
            let g1 = s.from(d, &f1.target)?;
            let g2 = s.from(d, &f2.target)?;
            let l = d.compose(&d.tensor_mor(&g1, &g2)?, &d.tensor_mor(&f1, &f2)?)?;
            let r = d.tensor_mor(&d.compose(&g1, &f1)?, &d.compose(&g2, &f2)?)?;
            same("interchange", &l, &r)?;
            let ids = d.tensor_mor(&d.id(&a1)?, &d.id(&a2)?)?;
            same("id * id", &ids, &d.id(&d.tensor_obj(&a1, &a2)?)?)
        }
        "unitors" => {
            let a = s.object(d);
            let f = s.from(d, &a)?;
            let b = &f.target;
            let id_i = d.id(&DialObject::Unit)?;
            let l = d.compose(&d.left_unitor(b)?, &d.tensor_mor(&id_i, &f)?)?;
            same("left naturality", &l, &d.compose(&f, &d.left_unitor(&a)?)?)?;
            let r = d.compose(&d.right_unitor(b)?, &d.tensor_mor(&f, &id_i)?)?;
            same("right naturality", &r, &d.compose(&f, &d.right_unitor(&a)?)?)?;
            let ia = d.tensor_obj(&DialObject::Unit, &a)?;
            let ai = d.tensor_obj(&a, &DialObject::Unit)?;
            let (lu, lui) = (d.left_unitor(&a)?, d.left_unitor_inv(&a)?);
            let (ru, rui) = (d.right_unitor(&a)?, d.right_unitor_inv(&a)?);
            same("left inverse", &d.compose(&lu, &lui)?, &d.id(&a)?)?;
            same("left inverse'", &d.compose(&lui, &lu)?, &d.id(&ia)?)?;
            same("right inverse", &d.compose(&ru, &rui)?, &d.id(&a)?)?;
            same("right inverse'", &d.compose(&rui, &ru)?, &d.id(&ai)?)
        }
        "associator" => {
            let (a1, a2, a3) = (s.object(d), s.object(d), s.object(d));
            let f1 = s.from(d, &a1)?;
            let f2 = s.from(d, &a2)?;
            let f3 = s.from(d, &a3)?;
            let (b1, b2, b3) = (&f1.target, &f2.target, &f3.target);
            let l = d.compose(
                &d.associator(b1, b2, b3)?,
                &d.tensor_mor(&d.tensor_mor(&f1, &f2)?, &f3)?,
            )?;
            let r = d.compose(
                &d.tensor_mor(&f1, &d.tensor_mor(&f2, &f3)?)?,
                &d.associator(&a1, &a2, &a3)?,
            )?;
            same("naturality", &l, &r)?;
            let (al, ali) = (d.associator(&a1, &a2, &a3)?, d.associator_inv(&a1, &a2, &a3)?);
            same("inverse", &d.compose(&ali, &al)?, &d.id(&al.source)?)?;
            same("inverse'", &d.compose(&al, &ali)?, &d.id(&al.target)?)
        }
        "triangle" => {
            let (a, b) = (s.object(d), s.object(d));
            let l = d.compose(
                &d.tensor_mor(&d.id(&a)?, &d.left_unitor(&b)?)?,
                &d.associator(&a, &DialObject::Unit, &b)?,
            )?;
            let r = d.tensor_mor(&d.right_unitor(&a)?, &d.id(&b)?)?;
            same("triangle", &l, &r)
        }
        "pentagon" => {
            let (a, b, c, e) = (s.object(d), s.object(d), s.object(d), s.object(d));
            let ab = d.tensor_obj(&a, &b)?;
            let bc = d.tensor_obj(&b, &c)?;
            let ce = d.tensor_obj(&c, &e)?;
            let l = d.compose(
                &d.tensor_mor(&d.id(&a)?, &d.associator(&b, &c, &e)?)?,
                &d.compose(
                    &d.associator(&a, &bc, &e)?,
                    &d.tensor_mor(&d.associator(&a, &b, &c)?, &d.id(&e)?)?,
                )?,
            )?;
            let r = d.compose(&d.associator(&a, &b, &ce)?, &d.associator(&ab, &c, &e)?)?;
            same("pentagon", &l, &r)
        }
        "adjunction-right" | "adjunction-left" => {
            let right = law == "adjunction-right";
            let (a, b, c) = (s.object(d), s.object(d), s.object(d));
            let ab = d.tensor_obj(&a, &b)?;
            let lhs = hom_set(d, &ab, &c)?;
            let rhs = if right {
                hom_set(d, &b, &d.hom_r(&a, &c)?)?
            } else {
                hom_set(d, &a, &d.hom_l(&c, &b)?)?
            };
            if lhs.len() != rhs.len() {
                return Err(Problem::Mismatch(format!(
                    "hom-sets of sizes {} and {}",
                    lhs.len(),
                    rhs.len()
                )));
            }
            let curry = |m: &DialMorphism| if right { d.curry_r(m) } else { d.curry_l(m) };
            let uncurry = |m: &DialMorphism| if right { d.uncurry_r(m) } else { d.uncurry_l(m) };
            let mut images = HashSet::new();
            for m in &lhs {
                let n = curry(m)?;
                same("uncurry . curry", &uncurry(&n)?, m)?;
                images.insert(n);
            }
            if images.len() != rhs.len() {
                return Err(Problem::Mismatch("curry is not injective".into()));
            }
            for n in &rhs {
                same("curry . uncurry", &curry(&uncurry(n)?)?, n)?;
            }
            if lhs.is_empty() {
                return Ok(());
            }
            let m = s.pick(&lhs);
            let kk = s.from(d, &c)?;
            if right {
                let h = s.into(d, &b)?;
                let pre = d.compose(&m, &d.tensor_mor(&d.id(&a)?, &h)?)?;
                same("natural in B", &d.curry_r(&pre)?, &d.compose(&d.curry_r(&m)?, &h)?)?;
                let post = d.curry_r(&d.compose(&kk, &m)?)?;
                let via = d.compose(&d.hom_r_post(&a, &kk)?, &d.curry_r(&m)?)?;
                same("natural in C", &post, &via)
            } else {
                let h = s.into(d, &a)?;
                let pre = d.compose(&m, &d.tensor_mor(&h, &d.id(&b)?)?)?;
                same("natural in A", &d.curry_l(&pre)?, &d.compose(&d.curry_l(&m)?, &h)?)?;
                let post = d.curry_l(&d.compose(&kk, &m)?)?;
                let via = d.compose(&d.hom_l_post(&kk, &b)?, &d.curry_l(&m)?)?;
                same("natural in C", &post, &via)
            }
        }
        "kappa-comonad" => {
            let a = s.object(d);
            let f = s.from(d, &a)?;
            let b = &f.target;
            let ka = d.kappa_obj(&a)?;
            let eps = d.eps_kappa(&a)?;
            let delta = d.delta_kappa(&a)?;
            let id = d.id(&ka)?;
            same("counit left", &d.compose(&d.eps_kappa(&ka)?, &delta)?, &id)?;
            same("counit right", &d.compose(&d.kappa_mor(&eps)?, &delta)?, &id)?;
            let l = d.compose(&d.kappa_mor(&delta)?, &delta)?;
            let r = d.compose(&d.delta_kappa(&ka)?, &delta)?;
            same("coassociativity", &l, &r)?;
            let kf = d.kappa_mor(&f)?;
            same(
                "counit naturality",
                &d.compose(&f, &eps)?,
                &d.compose(&d.eps_kappa(b)?, &kf)?,
            )?;
            same(
                "comultiplication naturality",
                &d.compose(&d.kappa_mor(&kf)?, &delta)?,
                &d.compose(&d.delta_kappa(b)?, &kf)?,
            )
        }
        "kappa-exchange" => {
            let (a, b) = (s.object(d), s.object(d));
            let f = s.from(d, &a)?;
            let g = s.from(d, &b)?;
            let bl = d.beta_l(&a, &b)?;
            let br = d.beta_r(&b, &a)?;
            same("beta_r . beta_l", &d.compose(&br, &bl)?, &d.id(&bl.source)?)?;
            same("beta_l . beta_r", &d.compose(&bl, &br)?, &d.id(&br.source)?)?;
            let kf = d.kappa_mor(&f)?;
            let l = d.compose(&d.beta_l(&f.target, &g.target)?, &d.tensor_mor(&kf, &g)?)?;
            let r = d.compose(&d.tensor_mor(&g, &kf)?, &bl)?;
            same("beta_l naturality", &l, &r)?;
            let l = d.compose(&d.beta_r(&g.target, &f.target)?, &d.tensor_mor(&g, &kf)?)?;
            let r = d.compose(&d.tensor_mor(&kf, &g)?, &br)?;
            same("beta_r naturality", &l, &r)
        }
        "bang-arrows" => {
            let a = s.object(d);
            d.eps_bang(&a, k)?;
            d.delta_bang(&a, k, k)?;
            d.e_arrow(&a, k)?;
            d.d_arrow(&a, k)?;
            Ok(())
        }
        "bang-comonad" => {
            let a = s.object(d);
            let id = d.id(&d.bang_obj(&a, k)?)?;
            let l = d.compose(&d.bang_mor(&d.eps_bang(&a, 1)?, k)?, &d.delta_bang(&a, k, 1)?)?;
            same("counit right", &l, &id)?;
            let ba = d.bang_obj(&a, k)?;
            let r = d.compose(&d.eps_bang(&ba, 1)?, &d.delta_bang(&a, 1, k)?)?;
            same("counit left", &r, &id)?;
            let l = d.compose(&d.bang_mor(&d.delta_bang(&a, k, k)?, k)?, &d.delta_bang(&a, k, k * k)?)?;
            let r = d.compose(&d.delta_bang(&ba, k, k)?, &d.delta_bang(&a, k * k, k)?)?;
            same("coassociativity", &l, &r)
        }
        "bang-comonoid" => {
            let a = s.object(d);
            let dd = d.d_arrow(&a, k)?;
            let ba = d.bang_obj(&a, k)?;
            let incl = d.bang_incl(&a, 2 * k, k)?;
            let l = d.compose(
                &d.left_unitor(&ba)?,
                &d.compose(&d.tensor_mor(&d.e_arrow(&a, k)?, &d.id(&ba)?)?, &dd)?,
            )?;
            same("left counit", &l, &incl)?;
            let r = d.compose(
                &d.right_unitor(&ba)?,
                &d.compose(&d.tensor_mor(&d.id(&ba)?, &d.e_arrow(&a, k)?)?, &dd)?,
            )?;
            same("right counit", &r, &incl)
        }
        "bang-natural" => {
            let a = s.object(d);
            let f = s.from(d, &a)?;
            let b = &f.target;
            let bf = d.bang_mor(&f, k)?;
            same(
                "counit",
                &d.compose(&f, &d.eps_bang(&a, k)?)?,
                &d.compose(&d.eps_bang(b, k)?, &bf)?,
            )?;
            let l = d.compose(&d.bang_mor(&bf, k)?, &d.delta_bang(&a, k, k)?)?;
            let r = d.compose(&d.delta_bang(b, k, k)?, &d.bang_mor(&f, k * k)?)?;
            same("comultiplication", &l, &r)
        }
        other => Err(Problem::Mismatch(format!("unknown law {other}"))),
    }
}

fn instance(law: &'static str, host: &FinBiclosedPoset, k: usize, seed: u64) -> (LawOutcome, bool) {
    let mut d = Dial::new(host).with_exec(Exec::Sequential);
    if law == "pentagon" {
        d = d.with_cap(PENTAGON_CAP);
    }
    let mut shrunk = false;
    for level in 0..4u8 {
        let mut s = Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed ^ ((level as u64) << 56)),
            level,
        };
        let outcome = match run_law(law, &d, &mut s, k) {
            Ok(()) => LawOutcome::Pass,
            Err(Problem::Dial(DialError::SizeExceeded { .. })) => {
                shrunk = true;
                continue;
            }
            Err(Problem::Dial(e @ DialError::BoundExceeded { .. })) => {
                LawOutcome::BoundExceeded(e.to_string())
            }
            Err(p) => {
                let msg = match p {
                    Problem::Mismatch(m) => m,
                    Problem::Dial(e) => e.to_string(),
                };
                if is_bang_law(law) && !host.is_commutative() {
                    LawOutcome::OrderSensitive(msg)
                } else {
                    LawOutcome::Fail(msg)
                }
            }
        };
        return (outcome, shrunk);
    }
    (LawOutcome::SizeSkipped, true)
}

/// Checks every law in [`LAW_NAMES`] on `samples` instances each.
pub fn check_laws(
    host: &FinBiclosedPoset,
    samples: usize,
    bound: usize,
    seed: u64,
    exec: Exec,
) -> LawReport {
    let jobs: Vec<(usize, usize)> = (0..LAW_NAMES.len())
        .flat_map(|l| (0..samples).map(move |i| (l, i)))
        .filter(|&(l, _)| host.kappa.is_some() || !is_kappa_law(LAW_NAMES[l]))
        .collect();
    let outcomes = exec.map(&jobs, |&(l, i)| {
        let s = seed
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add((l as u64) << 32 | i as u64);
        instance(LAW_NAMES[l], host, bound, s)
    });
    let mut results: Vec<LawResult> = LAW_NAMES
        .iter()
        .map(|&law| LawResult {
            law,
            checked: 0,
            passed: 0,
            failed: 0,
            order_sensitive: 0,
            bound_exceeded: 0,
            size_skipped: 0,
            shrunk: 0,
            first_problem: None,
            unsupported: (is_kappa_law(law) && host.kappa.is_none())
                .then(|| "host has no kappa table".to_string()),
        })
        .collect();
    for (&(l, i), (outcome, shrunk)) in jobs.iter().zip(outcomes) {
        let r = &mut results[l];
        r.checked += 1;
        r.shrunk += shrunk as usize;
        let problem = match outcome {
            LawOutcome::Pass => {
                r.passed += 1;
                None
            }
            LawOutcome::Fail(m) => {
                r.failed += 1;
                Some(m)
            }
            LawOutcome::OrderSensitive(m) => {
                r.order_sensitive += 1;
                Some(format!("order-sensitive: {m}"))
            }
            LawOutcome::BoundExceeded(m) => {
                r.bound_exceeded += 1;
                Some(m)
            }
            LawOutcome::SizeSkipped => {
                r.size_skipped += 1;
                None
            }
        };
        if r.first_problem.is_none() {
            r.first_problem = problem.map(|p| format!("sample {i}: {p}"));
        }
    }
    LawReport {
        host: host.label.clone(),
        samples,
        bound,
        seed,
        results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{trivial, two};

    #[test]
    fn trivial_host_passes_everything() {
        let r = check_laws(&trivial(), 3, 2, 1, Exec::Parallel);
        assert!(r.ok(), "{r}");
        assert!(r.results.iter().all(|l| l.size_skipped == 0));
    }

    #[test]
    fn hom_set_matches_brute_force() {
        let m = two();
        let d = Dial::new(&m);
        let a = d.base(2, 2, vec![0, 1, 1, 0]).unwrap();
        let b = d.base(2, 2, vec![1, 0, 0, 1]).unwrap();
        let fast = hom_set(&d, &a, &b).unwrap();
        let mut brute = 0;
        for f in 0..4 {
            for g in 0..4 {
                let ft = vec![f & 1, f >> 1];
                let gt = vec![g & 1, g >> 1];
                if d.is_morphism(&a, &b, &ft, &gt).unwrap().is_none() {
                    brute += 1;
                }
            }
        }
        assert_eq!(fast.len(), brute);
        assert!(fast.iter().all(|m| d.morphism(&a, &b, m.f.clone(), m.big_f.clone()).is_ok()));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = check_laws(&two(), 2, 2, 7, Exec::Parallel);
        let b = check_laws(&two(), 2, 2, 7, Exec::Sequential);
        assert_eq!(a, b);
    }
}
