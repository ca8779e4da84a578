use thiserror::Error;

use super::{Derivation, RuleName};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("fuel exhausted with {remaining_cuts} cut(s) remaining")]
    FuelExhausted { remaining_cuts: usize },
    /// Contracting a promoted context of two or more formulas would need the
    /// copies to be adjacent, which the ordered calculus cannot arrange.
    #[error("cut of a !-promotion with {context_len} hypotheses against a contraction cannot be reduced without exchange")]
    NonAdjacentContraction { context_len: usize },
    #[error("malformed derivation: {0}")]
    Malformed(String),
}

/// Rewrites `d` into a cut-free derivation of the same endsequent.
///
/// Cuts are removed innermost first; each cut between cut-free derivations is
/// reduced by the usual principal and permutation steps. `fuel` bounds the
/// number of reduction steps.
pub fn eliminate_cut(d: &Derivation, fuel: usize) -> Result<Derivation, CutError> {
    let mut e = Elim { fuel };
    match e.elim(d) {
        Err(CutError::FuelExhausted { .. }) => Err(CutError::FuelExhausted {
            remaining_cuts: d.count_cuts(),
        }),
        r => r,
    }
}

struct Elim {
    fuel: usize,
}

fn malformed<T>(msg: &str) -> Result<T, CutError> {
    Err(CutError::Malformed(msg.to_string()))
}

impl Elim {
    fn elim(&mut self, d: &Derivation) -> Result<Derivation, CutError> {
        if d.is_cut_free() {
            return Ok(d.clone());
        }
        let prems = d
            .premises
            .iter()
            .map(|p| self.elim(p))
            .collect::<Result<Vec<_>, _>>()?;
        if d.rule == RuleName::Cut {
            let mut it = prems.into_iter();
            let (l, r) = (it.next().unwrap(), it.next().unwrap());
            let p = d.splits[0];
            return self.reduce(l, r, p);
        }
        let mut out = d.clone();
        out.premises = prems;
        Ok(out)
    }

    /// `l: Γ ⊢ A` and `r: Δ1, A, Δ2 ⊢ C` (A at `p`), both cut-free; returns a
    /// cut-free derivation of `Δ1, Γ, Δ2 ⊢ C`.
    fn reduce(&mut self, l: Derivation, r: Derivation, p: usize) -> Result<Derivation, CutError> {
        if self.fuel == 0 {
            return Err(CutError::FuelExhausted { remaining_cuts: 1 });
        }
        self.fuel -= 1;
        if r.ctx().get(p) != Some(l.succ()) {
            return malformed("cut formula does not match");
        }
        if l.rule == RuleName::Ax {
            return Ok(r);
        }
        if r.rule == RuleName::Ax {
            return Ok(l);
        }
        if is_left_rule(l.rule) {
            return self.commute_left(l, r, p);
        }
        if r.principal == Some(p) {
            return self.principal(l, r, p);
        }
        self.commute_right(l, r, p)
    }

    /// The last rule of `l` acts on its antecedent: push the cut into the
    /// premise carrying the succedent and replay the rule.
    fn commute_left(&mut self, l: Derivation, r: Derivation, p: usize) -> Result<Derivation, CutError> {
        let Derivation {
            rule,
            premises,
            splits,
            principal,
            conclusion,
        } = l;
        let mut prems = premises.into_iter();
        match rule {
            RuleName::ILr => {
                let (arg, body) = (prems.next().unwrap(), prems.next().unwrap());
                let i = splits[0];
                let body = self.reduce(body, r, p)?;
                Ok(Derivation::ilr(arg, body, i + p))
            }
            RuleName::ILl => {
                let (arg, body) = (prems.next().unwrap(), prems.next().unwrap());
                let k = principal.unwrap();
                let body = self.reduce(body, r, p)?;
                Ok(Derivation::ill(arg, body, k + p))
            }
            _ => {
                let k = principal.unwrap();
                let inner = self.reduce(prems.next().unwrap(), r, p)?;
                Ok(match rule {
                    RuleName::Ul => Derivation::ul(inner, k + p),
                    RuleName::Tl => Derivation::tl(inner, k + p),
                    RuleName::C => Derivation::contract(inner, k + p),
                    RuleName::W => Derivation::weaken(inner, k + p, conclusion.antecedent[k].clone()),
                    RuleName::Bl => Derivation::bl(inner, k + p),
                    RuleName::El => Derivation::el(inner, k + p),
                    RuleName::E1 => Derivation::e1(inner, k + p),
                    RuleName::E2 => Derivation::e2(inner, k + p),
                    _ => return malformed("unexpected left rule"),
                })
            }
        }
    }

    /// `l` introduces the cut formula on the right and `r` on the left.
    fn principal(&mut self, l: Derivation, r: Derivation, p: usize) -> Result<Derivation, CutError> {
        let g = l.ctx().len();
        let mut lp = l.premises.clone().into_iter();
        let mut rp = r.premises.clone().into_iter();
        match (l.rule, r.rule) {
            (RuleName::Ur, RuleName::Ul) => Ok(rp.next().unwrap()),
            (RuleName::Tr, RuleName::Tl) => {
                let (l1, l2) = (lp.next().unwrap(), lp.next().unwrap());
                let x = self.reduce(l2, rp.next().unwrap(), p + 1)?;
                self.reduce(l1, x, p)
            }
            (RuleName::IRr, RuleName::ILr) => {
                // l': A, Γ ⊢ B ; r0: Δa ⊢ A ; r1: Δ1, B, Δ2 ⊢ C
                let lprem = lp.next().unwrap();
                let (r0, r1) = (rp.next().unwrap(), rp.next().unwrap());
                let i = r.splits[0];
                let x = self.reduce(r0, lprem, 0)?;
                self.reduce(x, r1, i)
            }
            (RuleName::IRl, RuleName::ILl) => {
                // l': Γ, B ⊢ A ; r0: Δb ⊢ B ; r1: Δ1, A, Δ2 ⊢ C
                let lprem = lp.next().unwrap();
                let (r0, r1) = (rp.next().unwrap(), rp.next().unwrap());
                let x = self.reduce(r0, lprem, g)?;
                self.reduce(x, r1, p)
            }
            (RuleName::Br, RuleName::Bl) | (RuleName::Er, RuleName::El) => {
                self.reduce(lp.next().unwrap(), rp.next().unwrap(), p)
            }
            (RuleName::Br, RuleName::W) => {
                let mut d = rp.next().unwrap();
                for (off, f) in l.ctx().iter().enumerate() {
                    d = Derivation::weaken(d, p + off, f.clone());
                }
                Ok(d)
            }
            (RuleName::Br, RuleName::C) => {
                let prem = rp.next().unwrap();
                let x = self.reduce(l.clone(), prem, p + 1)?;
                let y = self.reduce(l, x, p)?;
                match g {
                    0 => Ok(y),
                    1 => Ok(Derivation::contract(y, p)),
                    _ => Err(CutError::NonAdjacentContraction { context_len: g }),
                }
            }
            (RuleName::Er, RuleName::E1) => {
                // r': Δ1, B, κA, Δ2 ⊢ C
                let x = self.reduce(l, rp.next().unwrap(), p + 1)?;
                // x: Δ1, B, Γ, Δ2 ; move B (at p) past the κ-context Γ.
                x.move_formula(p, p + g)
                    .ok_or_else(|| CutError::Malformed("exchange over non-k context".into()))
            }
            (RuleName::Er, RuleName::E2) => {
                // r': Δ1, κA, B, Δ2 ⊢ C
                let x = self.reduce(l, rp.next().unwrap(), p - 1)?;
                // x: Δ1, Γ, B, Δ2 ; move B (at p-1+g) to p-1.
                x.move_formula(p - 1 + g, p - 1)
                    .ok_or_else(|| CutError::Malformed("exchange over non-k context".into()))
            }
            _ => malformed("cut formula is principal on both sides with mismatched rules"),
        }
    }

    /// The cut formula is passive in the last rule of `r`: push the cut into
    /// the premise that contains it and replay the rule.
    fn commute_right(&mut self, l: Derivation, r: Derivation, p: usize) -> Result<Derivation, CutError> {
        let g = l.ctx().len();
        // Index shift for positions to the right of the cut formula.
        let sh = |k: usize| if k < p { k } else { k + g - 1 };
        let Derivation {
            rule,
            premises,
            splits,
            principal,
            conclusion,
        } = r;
        let mut prems = premises.into_iter();
        match rule {
            RuleName::Tr => {
                let (r0, r1) = (prems.next().unwrap(), prems.next().unwrap());
                let i = splits[0];
                if p < i {
                    let r0 = self.reduce(l, r0, p)?;
                    Ok(Derivation::tr(r0, r1))
                } else {
                    let r1 = self.reduce(l, r1, p - i)?;
                    Ok(Derivation::tr(r0, r1))
                }
            }
            RuleName::ILr => {
                let (r0, r1) = (prems.next().unwrap(), prems.next().unwrap());
                let (i, k) = (splits[0], principal.unwrap());
                if p < i {
                    let r1 = self.reduce(l, r1, p)?;
                    Ok(Derivation::ilr(r0, r1, i + g - 1))
                } else if p < k {
                    let r0 = self.reduce(l, r0, p - i)?;
                    Ok(Derivation::ilr(r0, r1, i))
                } else {
                    let r1 = self.reduce(l, r1, p - k + i)?;
                    Ok(Derivation::ilr(r0, r1, i))
                }
            }
            RuleName::ILl => {
                let (r0, r1) = (prems.next().unwrap(), prems.next().unwrap());
                let (j, k) = (splits[0], principal.unwrap());
                if p < k {
                    let r1 = self.reduce(l, r1, p)?;
                    Ok(Derivation::ill(r0, r1, k + g - 1))
                } else if p < j {
                    let r0 = self.reduce(l, r0, p - k - 1)?;
                    Ok(Derivation::ill(r0, r1, k))
                } else {
                    let r1 = self.reduce(l, r1, p - (j - k - 1))?;
                    Ok(Derivation::ill(r0, r1, k))
                }
            }
            RuleName::IRr => {
                let x = self.reduce(l, prems.next().unwrap(), p + 1)?;
                Ok(Derivation::irr(x))
            }
            RuleName::IRl => {
                let x = self.reduce(l, prems.next().unwrap(), p)?;
                Ok(Derivation::irl(x))
            }
            RuleName::Br => Ok(Derivation::br(self.reduce(l, prems.next().unwrap(), p)?)),
            RuleName::Er => Ok(Derivation::er(self.reduce(l, prems.next().unwrap(), p)?)),
            RuleName::Ul | RuleName::W => {
                let k = principal.unwrap();
                let pp = if p < k { p } else { p - 1 };
                let x = self.reduce(l, prems.next().unwrap(), pp)?;
                Ok(if rule == RuleName::Ul {
                    Derivation::ul(x, sh(k))
                } else {
                    Derivation::weaken(x, sh(k), conclusion.antecedent[k].clone())
                })
            }
            RuleName::Tl | RuleName::C => {
                let k = principal.unwrap();
                let pp = if p < k { p } else { p + 1 };
                let x = self.reduce(l, prems.next().unwrap(), pp)?;
                Ok(if rule == RuleName::Tl {
                    Derivation::tl(x, sh(k))
                } else {
                    Derivation::contract(x, sh(k))
                })
            }
            RuleName::Bl | RuleName::El => {
                let k = principal.unwrap();
                let x = self.reduce(l, prems.next().unwrap(), p)?;
                Ok(if rule == RuleName::Bl {
                    Derivation::bl(x, sh(k))
                } else {
                    Derivation::el(x, sh(k))
                })
            }
            RuleName::E1 => {
                let k = principal.unwrap();
                let prem = prems.next().unwrap();
                if p == k + 1 {
                    // The cut formula is the one κA crosses; it sits at k in the premise.
                    let x = self.reduce(l, prem, k)?;
                    // x: Δ1, Γ, κA, Δ2 ; move κA from k+g to k.
                    x.move_formula(k + g, k)
                        .ok_or_else(|| CutError::Malformed("k-formula lost".into()))
                } else {
                    let x = self.reduce(l, prem, p)?;
                    Ok(Derivation::e1(x, sh(k)))
                }
            }
            RuleName::E2 => {
                let k = principal.unwrap();
                let prem = prems.next().unwrap();
                if p + 1 == k {
                    // Premise: Δ1, κA, B, Δ2 with B at k.
                    let x = self.reduce(l, prem, k)?;
                    // x: Δ1, κA, Γ, Δ2 ; move κA from k-1 to k-1+g.
                    x.move_formula(k - 1, k - 1 + g)
                        .ok_or_else(|| CutError::Malformed("k-formula lost".into()))
                } else {
                    let x = self.reduce(l, prem, p)?;
                    Ok(Derivation::e2(x, sh(k)))
                }
            }
            RuleName::Ax | RuleName::Ur | RuleName::Cut => malformed("unexpected rule in cut"),
        }
    }
}

fn is_left_rule(r: RuleName) -> bool {
    matches!(
        r,
        RuleName::Ul
            | RuleName::Tl
            | RuleName::ILr
            | RuleName::ILl
            | RuleName::C
            | RuleName::W
            | RuleName::Bl
            | RuleName::El
            | RuleName::E1
            | RuleName::E2
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequent::{check_derivation, prove, SearchBudget};
    use crate::syntax::{parse_sequent, CalculusLevel, Formula};

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn ax_against_ax() {
        let d = Derivation::cut(Derivation::ax(a("a")), Derivation::ax(a("a")), 0);
        assert_eq!(eliminate_cut(&d, 100).unwrap(), Derivation::ax(a("a")));
    }

    #[test]
    fn unit_cut_example() {
        // I |- a \ a via Ul, IRr, Ax
        let right = Derivation::ul(Derivation::irr(Derivation::ax(a("a"))), 0);
        let d = Derivation::cut(Derivation::ur(), right, 0);
        assert_eq!(
            check_derivation(&d, CalculusLevel::L).unwrap(),
            parse_sequent("|- a \\ a").unwrap()
        );
        let e = eliminate_cut(&d, 100).unwrap();
        assert!(e.is_cut_free());
        let oracle = prove(&parse_sequent("|- a \\ a").unwrap(), CalculusLevel::L, SearchBudget::default());
        let crate::sequent::ProveOutcome::Found(p) = oracle else { panic!() };
        assert_eq!(e.conclusion, p.conclusion);
        assert_eq!(check_derivation(&e, CalculusLevel::L).unwrap(), p.conclusion);
    }

    #[test]
    fn principal_implication_cut() {
        // Γ = b ; l: b |- a \ (a * b) by IRr over Tr ; r: a, a \ (a * b) |- a * b
        let l = Derivation::irr(Derivation::tr(Derivation::ax(a("a")), Derivation::ax(a("b"))));
        let r = Derivation::ilr(
            Derivation::ax(a("a")),
            Derivation::ax(Formula::tensor(a("a"), a("b"))),
            0,
        );
        let d = Derivation::cut(l, r, 1);
        let s = check_derivation(&d, CalculusLevel::L).unwrap();
        assert_eq!(s, parse_sequent("a, b |- a * b").unwrap());
        let e = eliminate_cut(&d, 1000).unwrap();
        assert!(e.is_cut_free());
        assert_eq!(check_derivation(&e, CalculusLevel::L).unwrap(), s);
    }

    #[test]
    fn kappa_promotion_against_exchange() {
        let ka = Formula::kappa(a("a"));
        // l: k a |- k a by Er(El(Ax)) ; r: k a, b |- b * k a by E1
        let l = Derivation::er(Derivation::el(Derivation::ax(a("a")), 0));
        let r = Derivation::e1(Derivation::tr(Derivation::ax(a("b")), Derivation::ax(ka.clone())), 0);
        let d = Derivation::cut(l, r, 0);
        let s = check_derivation(&d, CalculusLevel::LKappa).unwrap();
        let e = eliminate_cut(&d, 1000).unwrap();
        assert!(e.is_cut_free());
        assert_eq!(check_derivation(&e, CalculusLevel::LKappa).unwrap(), s);
    }

    #[test]
    fn bang_contraction_with_wide_context_is_reported() {
        let ba = Formula::bang(a("a"));
        let bb = Formula::bang(a("b"));
        let pair = Formula::tensor(ba.clone(), bb.clone());
        // l: !a, !b |- !(!a * !b)
        let l = Derivation::br(Derivation::tr(Derivation::ax(ba.clone()), Derivation::ax(bb.clone())));
        let bp = Formula::bang(pair.clone());
        // r: !(..) |- !(..) * !(..)
        let r = Derivation::contract(
            Derivation::tr(Derivation::ax(bp.clone()), Derivation::ax(bp.clone())),
            0,
        );
        let d = Derivation::cut(l, r, 0);
        assert!(check_derivation(&d, CalculusLevel::LBang).is_ok());
        assert_eq!(
            eliminate_cut(&d, 1000),
            Err(CutError::NonAdjacentContraction { context_len: 2 })
        );
    }

    #[test]
    fn fuel_exhaustion_reports_cut_count() {
        let d = Derivation::cut(Derivation::ax(a("a")), Derivation::ax(a("a")), 0);
        assert_eq!(
            eliminate_cut(&d, 0),
            Err(CutError::FuelExhausted { remaining_cuts: 1 })
        );
    }
}
