use thiserror::Error;

use super::{Derivation, RuleName};
use crate::syntax::{render_path, CalculusLevel, Formula, Sequent};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("rule {rule} is not available at level {level} (at {})", render_path(.path))]
    WrongLevel {
        rule: RuleName,
        level: CalculusLevel,
        path: Vec<usize>,
    },
    #[error("connective not available at level {level} in {sequent} (at {})", render_path(.path))]
    ConnectiveAtWrongLevel {
        level: CalculusLevel,
        sequent: Sequent,
        path: Vec<usize>,
    },
    #[error("{rule}: {detail} (at {})", render_path(.path))]
    Mismatch {
        rule: RuleName,
        detail: String,
        path: Vec<usize>,
    },
    #[error("{rule}: bad split/principal indices: {detail} (at {})", render_path(.path))]
    BadIndices {
        rule: RuleName,
        detail: String,
        path: Vec<usize>,
    },
    #[error("Br requires every hypothesis to be !-prefixed (at {})", render_path(.path))]
    NonBangContext { path: Vec<usize> },
    #[error("Er requires every hypothesis to be k-prefixed (at {})", render_path(.path))]
    NonKappaContext { path: Vec<usize> },
}

/// Validates every node against its rule schema and returns the endsequent.
pub fn check_derivation(d: &Derivation, level: CalculusLevel) -> Result<Sequent, CheckError> {
    let mut path = Vec::new();
    check_node(d, level, &mut path)?;
    Ok(d.conclusion.clone())
}

fn check_node(d: &Derivation, level: CalculusLevel, path: &mut Vec<usize>) -> Result<(), CheckError> {
    if !d.rule.legal_at(level) {
        return Err(CheckError::WrongLevel {
            rule: d.rule,
            level,
            path: path.clone(),
        });
    }
    if !d.conclusion.legal_at(level) {
        return Err(CheckError::ConnectiveAtWrongLevel {
            level,
            sequent: d.conclusion.clone(),
            path: path.clone(),
        });
    }
    check_rule(d, path)?;
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_node(p, level, path)?;
        path.pop();
    }
    Ok(())
}

struct Ctx<'a> {
    d: &'a Derivation,
    path: &'a [usize],
}

impl Ctx<'_> {
    fn mismatch<T>(&self, detail: impl Into<String>) -> Result<T, CheckError> {
        Err(CheckError::Mismatch {
            rule: self.d.rule,
            detail: detail.into(),
            path: self.path.to_vec(),
        })
    }

    fn bad<T>(&self, detail: impl Into<String>) -> Result<T, CheckError> {
        Err(CheckError::BadIndices {
            rule: self.d.rule,
            detail: detail.into(),
            path: self.path.to_vec(),
        })
    }

    fn arity(&self, n: usize) -> Result<(), CheckError> {
        if self.d.premises.len() != n {
            return self.mismatch(format!(
                "expected {n} premises, found {}",
                self.d.premises.len()
            ));
        }
        Ok(())
    }

    fn splits(&self, n: usize) -> Result<&[usize], CheckError> {
        if self.d.splits.len() != n {
            return self.bad(format!("expected {n} split indices, found {}", self.d.splits.len()));
        }
        Ok(&self.d.splits)
    }

    fn no_splits(&self) -> Result<(), CheckError> {
        self.splits(0).map(|_| ())
    }

    fn principal(&self) -> Result<usize, CheckError> {
        match self.d.principal {
            Some(k) if k < self.d.ctx().len() => Ok(k),
            Some(k) => self.bad(format!("principal {k} out of range")),
            None => self.bad("missing principal index"),
        }
    }

    fn no_principal(&self) -> Result<(), CheckError> {
        if self.d.principal.is_some() {
            return self.bad("unexpected principal index");
        }
        Ok(())
    }

    fn expect_premise(&self, i: usize, ante: &[Formula], succ: &Formula) -> Result<(), CheckError> {
        let p = &self.d.premises[i].conclusion;
        if p.antecedent != ante || p.succedent != *succ {
            let want = Sequent::new(ante.to_vec(), succ.clone());
            return self.mismatch(format!(
                "premise {i} is `{}`, expected `{want}`",
                p
            ));
        }
        Ok(())
    }
}

fn check_rule(d: &Derivation, path: &[usize]) -> Result<(), CheckError> {
    let c = Ctx { d, path };
    let ctx = d.ctx();
    let succ = d.succ();
    let n = ctx.len();
    match d.rule {
        RuleName::Ax => {
            c.arity(0)?;
            c.no_splits()?;
            c.no_principal()?;
            if n != 1 || ctx[0] != *succ {
                return c.mismatch("conclusion is not of the form A |- A");
            }
        }
        RuleName::Cut => {
            c.arity(2)?;
            c.no_principal()?;
            let s = c.splits(2)?;
            let (i, j) = (s[0], s[1]);
            if i > j || j > n {
                return c.bad(format!("[{i}, {j}] out of range"));
            }
            let a = d.premises[0].succ().clone();
            c.expect_premise(0, &ctx[i..j], &a)?;
            let mut right = ctx[..i].to_vec();
            right.push(a);
            right.extend_from_slice(&ctx[j..]);
            c.expect_premise(1, &right, succ)?;
        }
        RuleName::Ur => {
            c.arity(0)?;
            c.no_splits()?;
            c.no_principal()?;
            if n != 0 || *succ != Formula::Unit {
                return c.mismatch("conclusion is not |- I");
            }
        }
        RuleName::Ul => {
            c.arity(1)?;
            c.no_splits()?;
            let k = c.principal()?;
            if ctx[k] != Formula::Unit {
                return c.mismatch("principal formula is not I");
            }
            let mut prem = ctx.to_vec();
            prem.remove(k);
            c.expect_premise(0, &prem, succ)?;
        }
        RuleName::Tl => {
            c.arity(1)?;
            c.no_splits()?;
            let k = c.principal()?;
            let Formula::Tensor(a, b) = &ctx[k] else {
                return c.mismatch("principal formula is not a tensor");
            };
            let prem = super::splice(ctx, k, 1, &[(**a).clone(), (**b).clone()]);
            c.expect_premise(0, &prem, succ)?;
        }
        RuleName::Tr => {
            c.arity(2)?;
            c.no_principal()?;
            let i = c.splits(1)?[0];
            if i > n {
                return c.bad(format!("split {i} out of range"));
            }
            let Formula::Tensor(a, b) = succ else {
                return c.mismatch("succedent is not a tensor");
            };
            c.expect_premise(0, &ctx[..i], a)?;
            c.expect_premise(1, &ctx[i..], b)?;
        }
        RuleName::IRr => {
            c.arity(1)?;
            c.no_splits()?;
            c.no_principal()?;
            let Formula::RImp(a, b) = succ else {
                return c.mismatch("succedent is not a right implication");
            };
            let mut prem = vec![(**a).clone()];
            prem.extend_from_slice(ctx);
            c.expect_premise(0, &prem, b)?;
        }
        RuleName::IRl => {
            c.arity(1)?;
            c.no_splits()?;
            c.no_principal()?;
            let Formula::LImp(a, b) = succ else {
                return c.mismatch("succedent is not a left implication");
            };
            let mut prem = ctx.to_vec();
            prem.push((**b).clone());
            c.expect_premise(0, &prem, a)?;
        }
        RuleName::ILr => {
            c.arity(2)?;
            let k = c.principal()?;
            let i = c.splits(1)?[0];
            if i > k {
                return c.bad(format!("split {i} after principal {k}"));
            }
            let Formula::RImp(a, b) = &ctx[k] else {
                return c.mismatch("principal formula is not a right implication");
            };
            c.expect_premise(0, &ctx[i..k], a)?;
            let mut prem = ctx[..i].to_vec();
            prem.push((**b).clone());
            prem.extend_from_slice(&ctx[k + 1..]);
            c.expect_premise(1, &prem, succ)?;
        }
        RuleName::ILl => {
            c.arity(2)?;
            let k = c.principal()?;
            let j = c.splits(1)?[0];
            if j <= k || j > n {
                return c.bad(format!("split {j} not in ({k}, {n}]"));
            }
            let Formula::LImp(a, b) = &ctx[k] else {
                return c.mismatch("principal formula is not a left implication");
            };
            c.expect_premise(0, &ctx[k + 1..j], b)?;
            let mut prem = ctx[..k].to_vec();
            prem.push((**a).clone());
            prem.extend_from_slice(&ctx[j..]);
            c.expect_premise(1, &prem, succ)?;
        }
        RuleName::C => {
            c.arity(1)?;
            c.no_splits()?;
            let k = c.principal()?;
            if !ctx[k].is_bang() {
                return c.mismatch("principal formula is not !-prefixed");
            }
            let prem = super::splice(ctx, k, 0, &[ctx[k].clone()]);
            c.expect_premise(0, &prem, succ)?;
        }
        RuleName::W => {
            c.arity(1)?;
            c.no_splits()?;
            let k = c.principal()?;
            if !ctx[k].is_bang() {
                return c.mismatch("principal formula is not !-prefixed");
            }
            let prem = super::splice(ctx, k, 1, &[]);
            c.expect_premise(0, &prem, succ)?;
        }
        RuleName::Bl | RuleName::El => {
            c.arity(1)?;
            c.no_splits()?;
            let k = c.principal()?;
            let body = match (&ctx[k], d.rule) {
                (Formula::Bang(a), RuleName::Bl) | (Formula::Kappa(a), RuleName::El) => a,
                _ => return c.mismatch("principal formula has the wrong modality"),
            };
            let prem = super::splice(ctx, k, 1, &[(**body).clone()]);
            c.expect_premise(0, &prem, succ)?;
        }
        RuleName::Br | RuleName::Er => {
            c.arity(1)?;
            c.no_splits()?;
            c.no_principal()?;
            let body = match (succ, d.rule) {
                (Formula::Bang(a), RuleName::Br) | (Formula::Kappa(a), RuleName::Er) => a,
                _ => return c.mismatch("succedent has the wrong modality"),
            };
            if d.rule == RuleName::Br && !ctx.iter().all(Formula::is_bang) {
                return Err(CheckError::NonBangContext {
                    path: path.to_vec(),
                });
            }
            if d.rule == RuleName::Er && !ctx.iter().all(Formula::is_kappa) {
                return Err(CheckError::NonKappaContext {
                    path: path.to_vec(),
                });
            }
            c.expect_premise(0, ctx, body)?;
        }
        RuleName::E1 | RuleName::E2 => {
            c.arity(1)?;
            c.no_splits()?;
            let k = c.principal()?;
            if !ctx[k].is_kappa() {
                return c.mismatch("principal formula is not k-prefixed");
            }
            let other = if d.rule == RuleName::E1 {
                if k + 1 >= n {
                    return c.bad("no formula to the right of the principal formula");
                }
                k + 1
            } else {
                if k == 0 {
                    return c.bad("no formula to the left of the principal formula");
                }
                k - 1
            };
            let mut prem = ctx.to_vec();
            prem.swap(k, other);
            c.expect_premise(0, &prem, succ)?;
        }
    }
    Ok(())
}
