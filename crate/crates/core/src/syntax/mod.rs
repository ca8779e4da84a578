//! Formulas, sequents, patterns and terms shared by every other module.
//!
//! The ASCII concrete syntax is:
//!
//! | construct | syntax      |
//! |-----------|-------------|
//! | unit      | `I`         |
//! | tensor    | `A * B`     |
//! | `A ⇀ B`   | `A \ B`     |
//! | `A ↼ B`   | `A / B`     |
//! | of-course | `!A`        |
//! | exchange  | `k A`       |
//!
//! Prefix modalities bind tightest, then `*` (left associative), then the two
//! implications (`\` right associative, `/` left associative; mixing them
//! without parentheses is rejected).

mod parse;
mod render;
pub(crate) use render::{render_term, Style};
pub mod sexp;
mod subst;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::{
    parse_context, parse_formula, parse_judgment, parse_pattern, parse_sequent, parse_term,
    ParseError,
};
pub use subst::{
    all_vars, alpha_eq, alpha_normalize, free_occurrences, free_vars, fresh_name, rename_apart,
    substitute, substitute_many,
};

/// A proposition / type of the Lambek calculi.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Unit,
    Tensor(Box<Formula>, Box<Formula>),
    /// `A ⇀ B` (consumes an `A` on its left). Fields: argument, result.
    RImp(Box<Formula>, Box<Formula>),
    /// `A ↼ B` (consumes a `B` on its right). Fields: result, argument.
    LImp(Box<Formula>, Box<Formula>),
    Bang(Box<Formula>),
    Kappa(Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    /// `arg ⇀ res`
    pub fn rimp(arg: Formula, res: Formula) -> Formula {
        Formula::RImp(Box::new(arg), Box::new(res))
    }

    /// `res ↼ arg`
    pub fn limp(res: Formula, arg: Formula) -> Formula {
        Formula::LImp(Box::new(res), Box::new(arg))
    }

    pub fn bang(a: Formula) -> Formula {
        Formula::Bang(Box::new(a))
    }

    pub fn kappa(a: Formula) -> Formula {
        Formula::Kappa(Box::new(a))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Unit => 1,
            Formula::Tensor(a, b) | Formula::RImp(a, b) | Formula::LImp(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Bang(a) | Formula::Kappa(a) => 1 + a.size(),
        }
    }

    /// Height of the syntax tree; leaves have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Unit => 1,
            Formula::Tensor(a, b) | Formula::RImp(a, b) | Formula::LImp(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Bang(a) | Formula::Kappa(a) => 1 + a.depth(),
        }
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Unit => {}
            Formula::Tensor(a, b) | Formula::RImp(a, b) | Formula::LImp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Bang(a) | Formula::Kappa(a) => a.collect_atoms(out),
        }
    }

    pub fn has_bang(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Unit => false,
            Formula::Tensor(a, b) | Formula::RImp(a, b) | Formula::LImp(a, b) => {
                a.has_bang() || b.has_bang()
            }
            Formula::Bang(_) => true,
            Formula::Kappa(a) => a.has_bang(),
        }
    }

    pub fn has_kappa(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Unit => false,
            Formula::Tensor(a, b) | Formula::RImp(a, b) | Formula::LImp(a, b) => {
                a.has_kappa() || b.has_kappa()
            }
            Formula::Kappa(_) => true,
            Formula::Bang(a) => a.has_kappa(),
        }
    }

    /// Whether every connective of the formula exists at `level`.
    pub fn legal_at(&self, level: CalculusLevel) -> bool {
        (level.has_bang() || !self.has_bang()) && (level.has_kappa() || !self.has_kappa())
    }

    pub fn is_bang(&self) -> bool {
        matches!(self, Formula::Bang(_))
    }

    pub fn is_kappa(&self) -> bool {
        matches!(self, Formula::Kappa(_))
    }
}

/// Which of the four calculi is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CalculusLevel {
    L,
    LBang,
    LKappa,
    LBangKappa,
}

impl CalculusLevel {
    pub const ALL: [CalculusLevel; 4] = [
        CalculusLevel::L,
        CalculusLevel::LBang,
        CalculusLevel::LKappa,
        CalculusLevel::LBangKappa,
    ];

    pub fn has_bang(self) -> bool {
        matches!(self, CalculusLevel::LBang | CalculusLevel::LBangKappa)
    }

    pub fn has_kappa(self) -> bool {
        matches!(self, CalculusLevel::LKappa | CalculusLevel::LBangKappa)
    }

    /// `self` admits everything `other` admits.
    pub fn extends(self, other: CalculusLevel) -> bool {
        (self.has_bang() || !other.has_bang()) && (self.has_kappa() || !other.has_kappa())
    }

    pub fn name(self) -> &'static str {
        match self {
            CalculusLevel::L => "l",
            CalculusLevel::LBang => "lbang",
            CalculusLevel::LKappa => "lkappa",
            CalculusLevel::LBangKappa => "lbangkappa",
        }
    }

    pub fn from_name(s: &str) -> Option<CalculusLevel> {
        CalculusLevel::ALL.into_iter().find(|l| l.name() == s)
    }
}

impl fmt::Display for CalculusLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `Γ ⊢ A` with an ordered antecedent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Formula) -> Sequent {
        Sequent {
            antecedent,
            succedent,
        }
    }

    pub fn size(&self) -> usize {
        self.antecedent.iter().map(Formula::size).sum::<usize>() + self.succedent.size()
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in &self.antecedent {
            f.collect_atoms(&mut out);
        }
        self.succedent.collect_atoms(&mut out);
        out
    }

    pub fn legal_at(&self, level: CalculusLevel) -> bool {
        self.antecedent.iter().all(|f| f.legal_at(level)) && self.succedent.legal_at(level)
    }

    pub fn has_bang(&self) -> bool {
        self.antecedent.iter().any(Formula::has_bang) || self.succedent.has_bang()
    }

    pub fn has_kappa(&self) -> bool {
        self.antecedent.iter().any(Formula::has_kappa) || self.succedent.has_kappa()
    }
}

/// Ordered typing context `x1:A1, …, xn:An`.
pub type Context = Vec<(String, Formula)>;

/// Binding patterns of `let`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// `-`
    Wildcard,
    Var(String),
    Unit,
    Tensor(Box<Pattern>, Box<Pattern>),
}

impl Pattern {
    pub fn tensor(p: Pattern, q: Pattern) -> Pattern {
        Pattern::Tensor(Box::new(p), Box::new(q))
    }

    /// Bound variables, left to right.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Pattern::Var(x) => out.push(x.clone()),
            Pattern::Tensor(p, q) => {
                p.collect_vars(out);
                q.collect_vars(out);
            }
            Pattern::Wildcard | Pattern::Unit => {}
        }
    }

    pub fn rename(&self, from: &str, to: &str) -> Pattern {
        match self {
            Pattern::Var(x) if x == from => Pattern::Var(to.to_string()),
            Pattern::Tensor(p, q) => Pattern::tensor(p.rename(from, to), q.rename(from, to)),
            other => other.clone(),
        }
    }
}

/// Terms of the typed calculi (the λL_!κ grammar, a superset of the other three).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Unit,
    Tensor(Box<Term>, Box<Term>),
    /// `\l x:B. t : A ↼ B`
    LamL(String, Formula, Box<Term>),
    /// `\r x:A. t : A ⇀ B`
    LamR(String, Formula, Box<Term>),
    /// `appl t s`: function first, its context first.
    AppL(Box<Term>, Box<Term>),
    /// `appr t s`: function first, but the argument's context precedes it.
    AppR(Box<Term>, Box<Term>),
    Let(Box<Term>, Pattern, Box<Term>),
    Copy(Box<Term>, String, String, Box<Term>),
    Discard(Box<Term>, Box<Term>),
    PromoteBang(Vec<Term>, Vec<String>, Box<Term>),
    DerelictBang(Box<Term>),
    ExchL(Box<Term>, Box<Term>, String, String, Box<Term>),
    ExchR(Box<Term>, Box<Term>, String, String, Box<Term>),
    PromoteKappa(Vec<Term>, Vec<String>, Box<Term>),
    DerelictKappa(Box<Term>),
}

/// Address of a subterm: child indices from the root.
pub type Path = Vec<usize>;

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(x.to_string())
    }

    pub fn tensor(a: Term, b: Term) -> Term {
        Term::Tensor(Box::new(a), Box::new(b))
    }

    pub fn lam_l(x: &str, ann: Formula, body: Term) -> Term {
        Term::LamL(x.to_string(), ann, Box::new(body))
    }

    pub fn lam_r(x: &str, ann: Formula, body: Term) -> Term {
        Term::LamR(x.to_string(), ann, Box::new(body))
    }

    pub fn app_l(f: Term, a: Term) -> Term {
        Term::AppL(Box::new(f), Box::new(a))
    }

    pub fn app_r(f: Term, a: Term) -> Term {
        Term::AppR(Box::new(f), Box::new(a))
    }

    pub fn let_(s: Term, p: Pattern, body: Term) -> Term {
        Term::Let(Box::new(s), p, Box::new(body))
    }

    pub fn copy(s: Term, x: &str, y: &str, body: Term) -> Term {
        Term::Copy(Box::new(s), x.to_string(), y.to_string(), Box::new(body))
    }

    pub fn discard(s: Term, body: Term) -> Term {
        Term::Discard(Box::new(s), Box::new(body))
    }

    pub fn promote_bang(srcs: Vec<Term>, vars: &[&str], body: Term) -> Term {
        Term::PromoteBang(srcs, vars.iter().map(|s| s.to_string()).collect(), Box::new(body))
    }

    pub fn promote_kappa(srcs: Vec<Term>, vars: &[&str], body: Term) -> Term {
        Term::PromoteKappa(srcs, vars.iter().map(|s| s.to_string()).collect(), Box::new(body))
    }

    pub fn derelict_bang(t: Term) -> Term {
        Term::DerelictBang(Box::new(t))
    }

    pub fn derelict_kappa(t: Term) -> Term {
        Term::DerelictKappa(Box::new(t))
    }

    pub fn exch_l(t1: Term, t2: Term, x: &str, y: &str, body: Term) -> Term {
        Term::ExchL(
            Box::new(t1),
            Box::new(t2),
            x.to_string(),
            y.to_string(),
            Box::new(body),
        )
    }

    pub fn exch_r(t1: Term, t2: Term, x: &str, y: &str, body: Term) -> Term {
        Term::ExchR(
            Box::new(t1),
            Box::new(t2),
            x.to_string(),
            y.to_string(),
            Box::new(body),
        )
    }

    /// Immediate subterms in left-to-right syntactic order.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Unit => vec![],
            Term::LamL(_, _, b) | Term::LamR(_, _, b) => vec![b],
            Term::DerelictBang(t) | Term::DerelictKappa(t) => vec![t],
            Term::Tensor(a, b) | Term::AppL(a, b) | Term::AppR(a, b) => vec![a, b],
            Term::Let(s, _, b) | Term::Copy(s, _, _, b) | Term::Discard(s, b) => vec![s, b],
            Term::ExchL(a, b, _, _, c) | Term::ExchR(a, b, _, _, c) => vec![a, b, c],
            Term::PromoteBang(srcs, _, b) | Term::PromoteKappa(srcs, _, b) => {
                let mut v: Vec<&Term> = srcs.iter().collect();
                v.push(b);
                v
            }
        }
    }

    pub fn child_mut(&mut self, i: usize) -> Option<&mut Term> {
        match self {
            Term::Var(_) | Term::Unit => None,
            Term::LamL(_, _, b) | Term::LamR(_, _, b) => (i == 0).then_some(&mut **b),
            Term::DerelictBang(t) | Term::DerelictKappa(t) => (i == 0).then_some(&mut **t),
            Term::Tensor(a, b) | Term::AppL(a, b) | Term::AppR(a, b) => match i {
                0 => Some(a),
                1 => Some(b),
                _ => None,
            },
            Term::Let(s, _, b) | Term::Copy(s, _, _, b) | Term::Discard(s, b) => match i {
                0 => Some(s),
                1 => Some(b),
                _ => None,
            },
            Term::ExchL(a, b, _, _, c) | Term::ExchR(a, b, _, _, c) => match i {
                0 => Some(a),
                1 => Some(b),
                2 => Some(c),
                _ => None,
            },
            Term::PromoteBang(srcs, _, b) | Term::PromoteKappa(srcs, _, b) => {
                let n = srcs.len();
                if i < n {
                    Some(&mut srcs[i])
                } else if i == n {
                    Some(b)
                } else {
                    None
                }
            }
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        let mut cur = self;
        for &i in path {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    pub fn subterm_mut(&mut self, path: &[usize]) -> Option<&mut Term> {
        let mut cur = self;
        for &i in path {
            cur = cur.child_mut(i)?;
        }
        Some(cur)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(|c| c.depth())
            .max()
            .unwrap_or(0)
    }

    /// Whether the term (including its type annotations) only uses syntax of `level`.
    pub fn legal_at(&self, level: CalculusLevel) -> bool {
        let own = match self {
            Term::Copy(..) | Term::Discard(..) | Term::PromoteBang(..) | Term::DerelictBang(_) => {
                level.has_bang()
            }
            Term::ExchL(..) | Term::ExchR(..) | Term::PromoteKappa(..) | Term::DerelictKappa(_) => {
                level.has_kappa()
            }
            Term::LamL(_, a, _) | Term::LamR(_, a, _) => a.legal_at(level),
            _ => true,
        };
        own && self.children().iter().all(|c| c.legal_at(level))
    }
}

/// A term paired with the ordered context it is checked in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub context: Context,
    pub term: Term,
}

pub fn render_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        path.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_lattice() {
        assert!(CalculusLevel::LBangKappa.extends(CalculusLevel::LKappa));
        assert!(CalculusLevel::LBang.extends(CalculusLevel::L));
        assert!(!CalculusLevel::LBang.extends(CalculusLevel::LKappa));
        assert_eq!(CalculusLevel::from_name("lkappa"), Some(CalculusLevel::LKappa));
    }

    #[test]
    fn paths_address_children_in_order() {
        let t = parse_term("let x * y be u * v in appl f v").unwrap();
        assert_eq!(t.subterm(&[0]), Some(&parse_term("x * y").unwrap()));
        assert_eq!(t.subterm(&[1, 1]), Some(&Term::var("v")));
        assert_eq!(render_path(&[1, 0]), "1.0");
        assert_eq!(render_path(&[]), "root");
    }

    #[test]
    fn formula_measures() {
        let f = parse_formula("!a * b \\ c").unwrap();
        assert_eq!(f.size(), 6);
        assert_eq!(f.depth(), 4);
        assert!(f.has_bang() && !f.has_kappa());
        assert!(!f.legal_at(CalculusLevel::LKappa));
    }
}
