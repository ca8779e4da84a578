//! Seeded generators of well-typed terms and of derivations containing Cut.
//!
//! Terms are built bottom-up from typed pieces `(Γ, t, A)`. Each step wraps
//! existing pieces in a construction whose typing rule is known to apply, so
//! every output typechecks by construction; the tests check this anyway.
//! Many constructions create redexes (β for both implications, tensor and
//! unit lets, promotion against derelict/discard/copy) and nested lets for
//! the commuting conversions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sequent::Derivation;
use crate::syntax::{substitute, CalculusLevel, Context, Formula, Pattern, Term};
use crate::typing::elaborate;

pub const MAX_TERM_DEPTH: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub context: Context,
    pub term: Term,
    pub ty: Formula,
}

pub struct TermGen {
    rng: ChaCha8Rng,
    level: CalculusLevel,
    next: usize,
}

const ATOMS: [&str; 3] = ["a", "b", "c"];

impl TermGen {
    pub fn new(level: CalculusLevel, seed: u64) -> TermGen {
        TermGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            level,
            next: 0,
        }
    }

    fn fresh(&mut self) -> String {
        self.next += 1;
        format!("x{}", self.next)
    }

    fn leaf_type(&mut self) -> Formula {
        let a = Formula::atom(ATOMS.choose(&mut self.rng).unwrap());
        match self.rng.gen_range(0..10) {
            0 | 1 if self.level.has_bang() => Formula::bang(a),
            2 | 3 if self.level.has_kappa() => Formula::kappa(a),
            4 => Formula::tensor(a, Formula::atom(ATOMS.choose(&mut self.rng).unwrap())),
            _ => a,
        }
    }

    fn var(&mut self, ty: Formula) -> Generated {
        let x = self.fresh();
        Generated {
            context: vec![(x.clone(), ty.clone())],
            term: Term::var(&x),
            ty,
        }
    }

    /// A term of type `ty` over a fresh context.
    fn arg(&mut self, ty: &Formula, d: usize) -> Generated {
        if d == 0 || self.rng.gen_bool(0.4) {
            return self.var(ty.clone());
        }
        match ty {
            Formula::Tensor(a, b) if self.rng.gen_bool(0.5) => {
                let (s, t) = (self.arg(a, d - 1), self.arg(b, d - 1));
                join_tensor(s, t)
            }
            Formula::Bang(c) if self.rng.gen_bool(0.6) => {
                // promote! s for y in derelict! y
                let s = self.arg(ty, d - 1);
                let y = self.fresh();
                Generated {
                    context: s.context,
                    term: Term::promote_bang(vec![s.term], &[&y], Term::derelict_bang(Term::var(&y))),
                    ty: Formula::bang((**c).clone()),
                }
            }
            Formula::Kappa(c) if self.rng.gen_bool(0.6) => {
                let s = self.arg(ty, d - 1);
                let y = self.fresh();
                Generated {
                    context: s.context,
                    term: Term::promote_kappa(vec![s.term], &[&y], Term::derelict_kappa(Term::var(&y))),
                    ty: Formula::kappa((**c).clone()),
                }
            }
            Formula::Unit => Generated {
                context: vec![],
                term: Term::Unit,
                ty: Formula::Unit,
            },
            _ => {
                // an identity redex of either handedness
                let s = self.arg(ty, d - 1);
                let x = self.fresh();
                let term = if self.rng.gen_bool(0.5) {
                    Term::app_l(Term::lam_l(&x, ty.clone(), Term::var(&x)), s.term)
                } else {
                    Term::app_r(Term::lam_r(&x, ty.clone(), Term::var(&x)), s.term)
                };
                Generated { term, ..s }
            }
        }
    }

    fn piece(&mut self, d: usize) -> Generated {
        if d == 0 {
            return if self.rng.gen_bool(0.1) {
                Generated {
                    context: vec![],
                    term: Term::Unit,
                    ty: Formula::Unit,
                }
            } else {
                let ty = self.leaf_type();
                self.var(ty)
            };
        }
        for _ in 0..8 {
            let choice = self.rng.gen_range(0..14);
            if let Some(g) = self.construct(choice, d) {
                return g;
            }
        }
        let ty = self.leaf_type();
        self.var(ty)
    }

    fn construct(&mut self, choice: u32, d: usize) -> Option<Generated> {
        let bang = self.level.has_bang();
        let kappa = self.level.has_kappa();
        match choice {
            0 | 1 => {
                let (s, t) = (self.piece(d - 1), self.piece(d - 1));
                Some(join_tensor(s, t))
            }
            2 => {
                // appr (\r x:B. t) s, x first in t's context
                let g = self.piece(d - 1);
                let (x, b) = g.context.first()?.clone();
                let s = self.arg(&b, d - 1);
                Some(Generated {
                    context: [s.context, g.context[1..].to_vec()].concat(),
                    term: Term::app_r(Term::lam_r(&x, b, g.term), s.term),
                    ty: g.ty,
                })
            }
            3 => {
                let g = self.piece(d - 1);
                let (x, b) = g.context.last()?.clone();
                let s = self.arg(&b, d - 1);
                let n = g.context.len() - 1;
                Some(Generated {
                    context: [g.context[..n].to_vec(), s.context].concat(),
                    term: Term::app_l(Term::lam_l(&x, b, g.term), s.term),
                    ty: g.ty,
                })
            }
            4 => {
                let g = self.piece(d - 1);
                let (x, b) = g.context.first()?.clone();
                let ty = Formula::rimp(b.clone(), g.ty);
                Some(Generated {
                    context: g.context[1..].to_vec(),
                    term: Term::lam_r(&x, b, g.term),
                    ty,
                })
            }
            5 | 6 => {
                // let s be x * y in t, s either a tensor redex or any term
                let g = self.piece(d - 1);
                let i = self.pick_pair(&g.context, |_, _| true)?;
                let (x, a) = g.context[i].clone();
                let (y, b) = g.context[i + 1].clone();
                let s = if choice == 5 {
                    let (s1, s2) = (self.arg(&a, d - 1), self.arg(&b, d - 1));
                    join_tensor(s1, s2)
                } else {
                    self.arg(&Formula::tensor(a, b), d - 1)
                };
                Some(Generated {
                    context: splice(&g.context, i, 2, s.context),
                    term: Term::let_(s.term, Pattern::tensor(Pattern::Var(x), Pattern::Var(y)), g.term),
                    ty: g.ty,
                })
            }
            7 => {
                let g = self.piece(d - 1);
                let i = self.rng.gen_range(0..=g.context.len());
                let s = self.arg(&Formula::Unit, d - 1);
                Some(Generated {
                    context: splice(&g.context, i, 0, s.context),
                    term: Term::let_(s.term, Pattern::Unit, g.term),
                    ty: g.ty,
                })
            }
            8 => {
                // replace a variable by a term of its type
                let g = self.piece(d - 1);
                if g.context.is_empty() {
                    return None;
                }
                let i = self.rng.gen_range(0..g.context.len());
                let (x, b) = g.context[i].clone();
                let s = self.arg(&b, d - 1);
                Some(Generated {
                    context: splice(&g.context, i, 1, s.context),
                    term: substitute(&g.term, &x, &s.term),
                    ty: g.ty,
                })
            }
            9 if bang => {
                let g = self.piece(d - 1);
                let i = self.rng.gen_range(0..=g.context.len());
                let c = Formula::bang(Formula::atom(ATOMS.choose(&mut self.rng).unwrap()));
                let s = self.arg(&c, d - 1);
                Some(Generated {
                    context: splice(&g.context, i, 0, s.context),
                    term: Term::discard(s.term, g.term),
                    ty: g.ty,
                })
            }
            10 if bang => {
                let g = self.piece(d - 1);
                match self.pick_pair(&g.context, |p, q| p == q && p.is_bang()) {
                    Some(i) => {
                        let (x, c) = g.context[i].clone();
                        let y = g.context[i + 1].0.clone();
                        let s = self.arg(&c, d - 1);
                        Some(Generated {
                            context: splice(&g.context, i, 2, s.context),
                            term: Term::copy(s.term, &x, &y, g.term),
                            ty: g.ty,
                        })
                    }
                    None => {
                        let c = Formula::atom(ATOMS.choose(&mut self.rng).unwrap());
                        let s = self.arg(&Formula::bang(c.clone()), d - 1);
                        let (p, q) = (self.fresh(), self.fresh());
                        let body = Term::tensor(
                            Term::derelict_bang(Term::var(&p)),
                            Term::derelict_bang(Term::var(&q)),
                        );
                        Some(Generated {
                            context: s.context,
                            term: Term::copy(s.term, &p, &q, body),
                            ty: Formula::tensor(c.clone(), c),
                        })
                    }
                }
            }
            11 if bang => {
                // derelict! of a promotion, plugged in for a variable
                let g = self.piece(d - 1);
                if g.context.is_empty() {
                    return None;
                }
                let i = self.rng.gen_range(0..g.context.len());
                let (x, b) = g.context[i].clone();
                let s = self.arg(&Formula::bang(b), d - 1);
                Some(Generated {
                    context: splice(&g.context, i, 1, s.context),
                    term: substitute(&g.term, &x, &Term::derelict_bang(s.term)),
                    ty: g.ty,
                })
            }
            12 if kappa => {
                let g = self.piece(d - 1);
                let left = self.rng.gen_bool(0.5);
                let i = self.pick_pair(&g.context, |p, q| if left { q.is_kappa() } else { p.is_kappa() })?;
                let (x, b) = g.context[i].clone();
                let (y, a) = g.context[i + 1].clone();
                // x stands for the second operand, y for the first
                let (s1, s2) = (self.arg(&a, d - 1), self.arg(&b, d - 1));
                let term = if left {
                    Term::exch_l(s1.term, s2.term, &x, &y, g.term)
                } else {
                    Term::exch_r(s1.term, s2.term, &x, &y, g.term)
                };
                Some(Generated {
                    context: splice(&g.context, i, 2, [s1.context, s2.context].concat()),
                    term,
                    ty: g.ty,
                })
            }
            13 if kappa => {
                let g = self.piece(d - 1);
                if g.context.is_empty() {
                    return None;
                }
                let i = self.rng.gen_range(0..g.context.len());
                let (x, b) = g.context[i].clone();
                let s = self.arg(&Formula::kappa(b), d - 1);
                Some(Generated {
                    context: splice(&g.context, i, 1, s.context),
                    term: substitute(&g.term, &x, &Term::derelict_kappa(s.term)),
                    ty: g.ty,
                })
            }
            _ => None,
        }
    }

    fn pick_pair(&mut self, ctx: &Context, ok: impl Fn(&Formula, &Formula) -> bool) -> Option<usize> {
        let cands: Vec<usize> = (0..ctx.len().saturating_sub(1))
            .filter(|&i| ok(&ctx[i].1, &ctx[i + 1].1))
            .collect();
        cands.choose(&mut self.rng).copied()
    }

    /// A well-typed term of depth at most [`MAX_TERM_DEPTH`].
    pub fn term(&mut self) -> Generated {
        loop {
            let d = self.rng.gen_range(1..=4);
            let g = self.piece(d);
            if g.term.depth() <= MAX_TERM_DEPTH {
                return g;
            }
        }
    }

    /// The elaboration of a generated term, when it contains a Cut.
    pub fn derivation_with_cut(&mut self) -> Derivation {
        loop {
            let g = self.term();
            if let Ok(d) = elaborate(&g.context, &g.term, self.level) {
                if d.count_cuts() > 0 {
                    return d;
                }
            }
        }
    }
}

fn join_tensor(s: Generated, t: Generated) -> Generated {
    Generated {
        context: [s.context, t.context].concat(),
        term: Term::tensor(s.term, t.term),
        ty: Formula::tensor(s.ty, t.ty),
    }
}

fn splice(ctx: &Context, at: usize, remove: usize, with: Context) -> Context {
    let mut out = ctx[..at].to_vec();
    out.extend(with);
    out.extend_from_slice(&ctx[at + remove..]);
    out
}

pub fn terms(level: CalculusLevel, n: usize, seed: u64) -> Vec<Generated> {
    let mut g = TermGen::new(level, seed);
    (0..n).map(|_| g.term()).collect()
}

pub fn cut_derivations(level: CalculusLevel, n: usize, seed: u64) -> Vec<Derivation> {
    let mut g = TermGen::new(level, seed);
    (0..n).map(|_| g.derivation_with_cut()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::redexes;
    use crate::sequent::check_derivation;
    use crate::typing::typecheck;

    #[test]
    fn generated_terms_typecheck() {
        for level in CalculusLevel::ALL {
            let ts = terms(level, 300, 11);
            for g in &ts {
                assert_eq!(
                    typecheck(&g.context, &g.term, level).as_ref(),
                    Ok(&g.ty),
                    "{level}: {}",
                    g.term
                );
                assert!(g.term.depth() <= MAX_TERM_DEPTH);
            }
            let with_redex = ts.iter().filter(|g| !redexes(&g.term).is_empty()).count();
            assert!(with_redex * 2 > ts.len(), "{level}: only {with_redex} with redexes");
        }
    }

    #[test]
    fn cut_derivations_check() {
        for level in CalculusLevel::ALL {
            for d in cut_derivations(level, 20, 5) {
                assert!(d.count_cuts() > 0);
                check_derivation(&d, level).unwrap();
            }
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(terms(CalculusLevel::LBangKappa, 20, 3), terms(CalculusLevel::LBangKappa, 20, 3));
    }
}
