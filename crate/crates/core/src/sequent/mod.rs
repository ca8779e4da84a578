//! Sequent-level derivations for L, L!, Lκ and L!κ.
//!
//! A [`Derivation`] records its rule, conclusion, premises and the indices
//! needed to recover each premise's antecedent from the conclusion:
//!
//! | rule       | `splits`  | `principal` | premise antecedents                         |
//! |------------|-----------|-------------|---------------------------------------------|
//! | Cut        | `[i, j]`  |             | `Γ[i..j]`; `Γ[..i], A, Γ[j..]`              |
//! | Tr         | `[i]`     |             | `Γ[..i]`; `Γ[i..]`                          |
//! | ILr        | `[i]`     | `k`         | `Γ[i..k]`; `Γ[..i], B, Γ[k+1..]`            |
//! | ILl        | `[j]`     | `k`         | `Γ[k+1..j]`; `Γ[..k], A, Γ[j..]`            |
//! | Ul Tl C W Bl El | | `k`         | the formula at `k` is rewritten             |
//! | E1         |           | `k`         | `κA` at `k` came from `k+1`                 |
//! | E2         |           | `k`         | `κA` at `k` came from `k-1`                 |
//!
//! E1 reads `Δ1, B, κA, Δ2 ⊢ C` / `Δ1, κA, B, Δ2 ⊢ C` and E2 the mirror image.

mod check;
mod cut;
mod prove;

use std::fmt;

use crate::syntax::sexp::{sequent_from_sexp, sequent_to_sexp, Sexp, SexpError};
use crate::syntax::{CalculusLevel, Formula, Sequent};

pub use check::{check_derivation, CheckError};
pub use cut::{eliminate_cut, CutError};
pub use prove::{prove, ProveOutcome, SearchBudget, SearchStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleName {
    Ax,
    Cut,
    Ur,
    Ul,
    Tl,
    Tr,
    IRl,
    ILl,
    IRr,
    ILr,
    C,
    W,
    Br,
    Bl,
    Er,
    El,
    E1,
    E2,
}

impl RuleName {
    pub const ALL: [RuleName; 18] = [
        RuleName::Ax,
        RuleName::Cut,
        RuleName::Ur,
        RuleName::Ul,
        RuleName::Tl,
        RuleName::Tr,
        RuleName::IRl,
        RuleName::ILl,
        RuleName::IRr,
        RuleName::ILr,
        RuleName::C,
        RuleName::W,
        RuleName::Br,
        RuleName::Bl,
        RuleName::Er,
        RuleName::El,
        RuleName::E1,
        RuleName::E2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleName::Ax => "Ax",
            RuleName::Cut => "Cut",
            RuleName::Ur => "Ur",
            RuleName::Ul => "Ul",
            RuleName::Tl => "Tl",
            RuleName::Tr => "Tr",
            RuleName::IRl => "IRl",
            RuleName::ILl => "ILl",
            RuleName::IRr => "IRr",
            RuleName::ILr => "ILr",
            RuleName::C => "C",
            RuleName::W => "W",
            RuleName::Br => "Br",
            RuleName::Bl => "Bl",
            RuleName::Er => "Er",
            RuleName::El => "El",
            RuleName::E1 => "E1",
            RuleName::E2 => "E2",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleName> {
        RuleName::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn is_bang_rule(self) -> bool {
        matches!(self, RuleName::C | RuleName::W | RuleName::Br | RuleName::Bl)
    }

    pub fn is_kappa_rule(self) -> bool {
        matches!(self, RuleName::Er | RuleName::El | RuleName::E1 | RuleName::E2)
    }

    pub fn legal_at(self, level: CalculusLevel) -> bool {
        (!self.is_bang_rule() || level.has_bang()) && (!self.is_kappa_rule() || level.has_kappa())
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The rules available at `level`, in canonical order.
pub fn rules_for(level: CalculusLevel) -> Vec<RuleName> {
    RuleName::ALL
        .into_iter()
        .filter(|r| r.legal_at(level))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub rule: RuleName,
    pub conclusion: Sequent,
    pub premises: Vec<Derivation>,
    pub splits: Vec<usize>,
    pub principal: Option<usize>,
}

fn splice(ctx: &[Formula], at: usize, remove: usize, insert: &[Formula]) -> Vec<Formula> {
    let mut out = ctx[..at].to_vec();
    out.extend_from_slice(insert);
    out.extend_from_slice(&ctx[at + remove..]);
    out
}

fn node(
    rule: RuleName,
    ante: Vec<Formula>,
    succ: Formula,
    premises: Vec<Derivation>,
    splits: Vec<usize>,
    principal: Option<usize>,
) -> Derivation {
    Derivation {
        rule,
        conclusion: Sequent::new(ante, succ),
        premises,
        splits,
        principal,
    }
}

/// Constructors computing the conclusion from the premises. They do not
/// validate; pass the result to [`check_derivation`] when in doubt.
impl Derivation {
    pub fn ctx(&self) -> &[Formula] {
        &self.conclusion.antecedent
    }

    pub fn succ(&self) -> &Formula {
        &self.conclusion.succedent
    }

    pub fn ax(a: Formula) -> Derivation {
        node(RuleName::Ax, vec![a.clone()], a, vec![], vec![], None)
    }

    /// Cuts `left: Γ ⊢ A` into position `p` of `right`'s antecedent.
    pub fn cut(left: Derivation, right: Derivation, p: usize) -> Derivation {
        let g = left.ctx().len();
        let ante = splice(right.ctx(), p, 1, left.ctx());
        let succ = right.succ().clone();
        node(RuleName::Cut, ante, succ, vec![left, right], vec![p, p + g], None)
    }

    pub fn ur() -> Derivation {
        node(RuleName::Ur, vec![], Formula::Unit, vec![], vec![], None)
    }

    /// Inserts `I` at `k`.
    pub fn ul(prem: Derivation, k: usize) -> Derivation {
        let ante = splice(prem.ctx(), k, 0, &[Formula::Unit]);
        let succ = prem.succ().clone();
        node(RuleName::Ul, ante, succ, vec![prem], vec![], Some(k))
    }

    /// Joins positions `k, k+1` into a tensor.
    pub fn tl(prem: Derivation, k: usize) -> Derivation {
        let f = Formula::tensor(prem.ctx()[k].clone(), prem.ctx()[k + 1].clone());
        let ante = splice(prem.ctx(), k, 2, &[f]);
        let succ = prem.succ().clone();
        node(RuleName::Tl, ante, succ, vec![prem], vec![], Some(k))
    }

    pub fn tr(left: Derivation, right: Derivation) -> Derivation {
        let i = left.ctx().len();
        let mut ante = left.ctx().to_vec();
        ante.extend_from_slice(right.ctx());
        let succ = Formula::tensor(left.succ().clone(), right.succ().clone());
        node(RuleName::Tr, ante, succ, vec![left, right], vec![i], None)
    }

    /// From `A, Γ ⊢ B` to `Γ ⊢ A ⇀ B`.
    pub fn irr(prem: Derivation) -> Derivation {
        let a = prem.ctx()[0].clone();
        let ante = prem.ctx()[1..].to_vec();
        let succ = Formula::rimp(a, prem.succ().clone());
        node(RuleName::IRr, ante, succ, vec![prem], vec![], None)
    }

    /// From `Γ, B ⊢ A` to `Γ ⊢ A ↼ B`.
    pub fn irl(prem: Derivation) -> Derivation {
        let n = prem.ctx().len();
        let b = prem.ctx()[n - 1].clone();
        let ante = prem.ctx()[..n - 1].to_vec();
        let succ = Formula::limp(prem.succ().clone(), b);
        node(RuleName::IRl, ante, succ, vec![prem], vec![], None)
    }

    /// `arg: Γ ⊢ A`, `body: Δ1, B, Δ2 ⊢ C` with `B` at `i`.
    pub fn ilr(arg: Derivation, body: Derivation, i: usize) -> Derivation {
        let imp = Formula::rimp(arg.succ().clone(), body.ctx()[i].clone());
        let mut mid = arg.ctx().to_vec();
        mid.push(imp);
        let k = i + arg.ctx().len();
        let ante = splice(body.ctx(), i, 1, &mid);
        let succ = body.succ().clone();
        node(RuleName::ILr, ante, succ, vec![arg, body], vec![i], Some(k))
    }

    /// `arg: Γ ⊢ B`, `body: Δ1, A, Δ2 ⊢ C` with `A` at `k`.
    pub fn ill(arg: Derivation, body: Derivation, k: usize) -> Derivation {
        let imp = Formula::limp(body.ctx()[k].clone(), arg.succ().clone());
        let mut mid = vec![imp];
        mid.extend_from_slice(arg.ctx());
        let j = k + 1 + arg.ctx().len();
        let ante = splice(body.ctx(), k, 1, &mid);
        let succ = body.succ().clone();
        node(RuleName::ILl, ante, succ, vec![arg, body], vec![j], Some(k))
    }

    /// Merges the two `!A` at `k, k+1`.
    pub fn contract(prem: Derivation, k: usize) -> Derivation {
        let ante = splice(prem.ctx(), k, 1, &[]);
        let succ = prem.succ().clone();
        node(RuleName::C, ante, succ, vec![prem], vec![], Some(k))
    }

    /// Inserts `bang` (which must be `!A`) at `k`.
    pub fn weaken(prem: Derivation, k: usize, bang: Formula) -> Derivation {
        let ante = splice(prem.ctx(), k, 0, &[bang]);
        let succ = prem.succ().clone();
        node(RuleName::W, ante, succ, vec![prem], vec![], Some(k))
    }

    pub fn bl(prem: Derivation, k: usize) -> Derivation {
        let f = Formula::bang(prem.ctx()[k].clone());
        let ante = splice(prem.ctx(), k, 1, &[f]);
        let succ = prem.succ().clone();
        node(RuleName::Bl, ante, succ, vec![prem], vec![], Some(k))
    }

    pub fn br(prem: Derivation) -> Derivation {
        let ante = prem.ctx().to_vec();
        let succ = Formula::bang(prem.succ().clone());
        node(RuleName::Br, ante, succ, vec![prem], vec![], None)
    }

    pub fn el(prem: Derivation, k: usize) -> Derivation {
        let f = Formula::kappa(prem.ctx()[k].clone());
        let ante = splice(prem.ctx(), k, 1, &[f]);
        let succ = prem.succ().clone();
        node(RuleName::El, ante, succ, vec![prem], vec![], Some(k))
    }

    pub fn er(prem: Derivation) -> Derivation {
        let ante = prem.ctx().to_vec();
        let succ = Formula::kappa(prem.succ().clone());
        node(RuleName::Er, ante, succ, vec![prem], vec![], None)
    }

    /// Premise has `B, κA` at `k, k+1`; the conclusion has `κA, B`.
    pub fn e1(prem: Derivation, k: usize) -> Derivation {
        let mut ante = prem.ctx().to_vec();
        ante.swap(k, k + 1);
        let succ = prem.succ().clone();
        node(RuleName::E1, ante, succ, vec![prem], vec![], Some(k))
    }

    /// Premise has `κA, B` at `k-1, k`; the conclusion has `B, κA`.
    pub fn e2(prem: Derivation, k: usize) -> Derivation {
        let mut ante = prem.ctx().to_vec();
        ante.swap(k - 1, k);
        let succ = prem.succ().clone();
        node(RuleName::E2, ante, succ, vec![prem], vec![], Some(k))
    }

    /// Swaps antecedent positions `q, q+1` with one exchange step; one of the
    /// two formulas must be a κ-formula.
    pub fn swap_adjacent(self, q: usize) -> Option<Derivation> {
        let ctx = self.ctx();
        if q + 1 >= ctx.len() {
            return None;
        }
        if ctx[q + 1].is_kappa() {
            Some(Derivation::e1(self, q))
        } else if ctx[q].is_kappa() {
            Some(Derivation::e2(self, q + 1))
        } else {
            None
        }
    }

    /// Moves the antecedent formula at `from` to `to` by adjacent exchanges.
    pub fn move_formula(self, from: usize, to: usize) -> Option<Derivation> {
        let mut d = self;
        let mut at = from;
        while at < to {
            d = d.swap_adjacent(at)?;
            at += 1;
        }
        while at > to {
            d = d.swap_adjacent(at - 1)?;
            at -= 1;
        }
        Some(d)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    pub fn count_cuts(&self) -> usize {
        usize::from(self.rule == RuleName::Cut)
            + self.premises.iter().map(Derivation::count_cuts).sum::<usize>()
    }

    pub fn is_cut_free(&self) -> bool {
        self.count_cuts() == 0
    }

    /// Every rule used, each once, in canonical order.
    pub fn rules_used(&self) -> Vec<RuleName> {
        let mut seen = [false; 18];
        fn go(d: &Derivation, seen: &mut [bool; 18]) {
            seen[d.rule as usize] = true;
            for p in &d.premises {
                go(p, seen);
            }
        }
        go(self, &mut seen);
        RuleName::ALL
            .into_iter()
            .filter(|r| seen[*r as usize])
            .collect()
    }

    pub fn to_sexp(&self) -> Sexp {
        let mut items = vec![
            Sexp::atom("rule"),
            Sexp::atom(self.rule.name()),
            Sexp::atom(":concl"),
            sequent_to_sexp(&self.conclusion),
            Sexp::atom(":splits"),
            Sexp::List(self.splits.iter().map(|i| Sexp::Atom(i.to_string())).collect()),
        ];
        if let Some(k) = self.principal {
            items.push(Sexp::atom(":principal"));
            items.push(Sexp::Atom(k.to_string()));
        }
        items.push(Sexp::atom(":prems"));
        items.push(Sexp::List(self.premises.iter().map(Derivation::to_sexp).collect()));
        Sexp::List(items)
    }

    pub fn from_sexp(s: &Sexp) -> Result<Derivation, SexpError> {
        let (h, args) = s.head()?;
        if h != "rule" {
            return Err(SexpError(format!("expected `rule`, found `{h}`")));
        }
        let name = args
            .first()
            .ok_or_else(|| SexpError("missing rule name".into()))?
            .as_atom()?;
        let rule =
            RuleName::from_name(name).ok_or_else(|| SexpError(format!("unknown rule `{name}`")))?;
        let mut conclusion = None;
        let mut splits = Vec::new();
        let mut principal = None;
        let mut premises = Vec::new();
        let mut rest = args[1..].iter();
        let index = |s: &Sexp| -> Result<usize, SexpError> {
            let a = s.as_atom()?;
            a.parse()
                .map_err(|_| SexpError(format!("expected an index, found `{a}`")))
        };
        while let Some(key) = rest.next() {
            let value = rest
                .next()
                .ok_or_else(|| SexpError(format!("missing value for {key}")))?;
            match key.as_atom()? {
                ":concl" => conclusion = Some(sequent_from_sexp(value)?),
                ":splits" => {
                    splits = value.as_list()?.iter().map(index).collect::<Result<_, _>>()?
                }
                ":principal" => principal = Some(index(value)?),
                ":prems" => {
                    premises = value
                        .as_list()?
                        .iter()
                        .map(Derivation::from_sexp)
                        .collect::<Result<_, _>>()?
                }
                other => return Err(SexpError(format!("unknown key `{other}`"))),
            }
        }
        Ok(Derivation {
            rule,
            conclusion: conclusion.ok_or_else(|| SexpError("missing :concl".into()))?,
            premises,
            splits,
            principal,
        })
    }

    fn write_tree(&self, out: &mut String, indent: usize) {
        out.push_str(&"  ".repeat(indent));
        out.push_str(&format!("{}  {}\n", self.rule, self.conclusion));
        for p in &self.premises {
            p.write_tree(out, indent + 1);
        }
    }
}

/// Indented tree, conclusion first.
impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_tree(&mut s, 0);
        f.write_str(s.trim_end())
    }
}
