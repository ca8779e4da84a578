//! Finite biclosed posets: ordered monoids with both residuals, optionally
//! carrying an exchange operator `κ` and an exponential `!`.
//!
//! Elements are indices `0..n`. `rres[a][b]` is `a ⇀ b`, the largest `x` with
//! `a∘x ≤ b`; `lres[a][b]` is the largest `x` with `x∘a ≤ b`, so `B ↼ A`
//! evaluates to `lres[A][B]`.

mod builtin;
mod countermodel;
mod enumerate;
mod file;

use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::{Formula, Sequent};

pub use builtin::{builtin, rel_quantale, trivial, two, BUILTIN_NAMES};
pub use countermodel::{
    all_valuations, find_countermodel, library_models, sample_valuations, valuations,
    Countermodel, DEFAULT_SEED,
};
pub use enumerate::{canonical_code, enumerate_biclosed, isomorphic, MAX_ENUMERATION_SIZE};
pub use file::{parse_model, write_model, ModelFileError};

pub type Table = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinBiclosedPoset {
    pub label: String,
    pub names: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub op: Table,
    pub unit: usize,
    pub rres: Table,
    pub lres: Table,
    pub kappa: Option<Vec<usize>>,
    pub bang: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Shape,
    Reflexive,
    Antisymmetric,
    Transitive,
    Associative,
    LeftUnit,
    RightUnit,
    MonotoneLeft,
    MonotoneRight,
    RightResidual,
    LeftResidual,
    KappaMonotone,
    KappaMinimality,
    KappaDuplication,
    LeftExchange,
    RightExchange,
    /// `κa∘κb ≤ κ(a∘b)`; with `e ≤ κe` this makes promotion of a κ-context sound.
    KappaProduct,
    KappaUnit,
    BangMonotone,
    BangDereliction,
    BangDuplication,
    BangWeakening,
    BangContraction,
    BangProduct,
    BangUnit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails at {:?}", self.axiom, self.witness)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("no maximum for the {side:?} residual of ({a}, {b})")]
    NoMaximum { a: usize, b: usize, side: Side },
    #[error("κ not constructible from the centre: no maximum central element below {0}")]
    NotConstructible(usize),
    #[error("the centre-derived κ table fails {0:?}")]
    CentreKappaInvalid(Axiom),
    #[error("model has no {0} table")]
    MissingTable(&'static str),
    #[error("no value for atom `{0}`")]
    MissingAtom(String),
}

pub type Valuation = BTreeMap<String, usize>;

impl FinBiclosedPoset {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.op[a][b]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.op[a][b] == self.op[b][a]))
    }

    /// Builds a model from order and monoid tables, computing the residuals.
    pub fn from_tables(
        label: &str,
        names: Vec<String>,
        leq: Vec<Vec<bool>>,
        op: Table,
        unit: usize,
    ) -> Result<FinBiclosedPoset, AlgebraError> {
        let mut m = FinBiclosedPoset {
            label: label.to_string(),
            names,
            leq,
            op,
            unit,
            rres: vec![],
            lres: vec![],
            kappa: None,
            bang: None,
        };
        let (r, l) = compute_residuals(&m)?;
        m.rres = r;
        m.lres = l;
        Ok(m)
    }

    /// Greatest element of `xs` under the order, if there is one.
    fn maximum(&self, xs: &[usize]) -> Option<usize> {
        xs.iter()
            .copied()
            .find(|&m| xs.iter().all(|&x| self.le(x, m)))
    }
}

/// Residual tables by brute-force maximum search.
pub fn compute_residuals(m: &FinBiclosedPoset) -> Result<(Table, Table), AlgebraError> {
    let n = m.len();
    let mut rres = vec![vec![0; n]; n];
    let mut lres = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let right: Vec<usize> = (0..n).filter(|&x| m.le(m.mul(a, x), b)).collect();
            rres[a][b] = m.maximum(&right).ok_or(AlgebraError::NoMaximum {
                a,
                b,
                side: Side::Right,
            })?;
            let left: Vec<usize> = (0..n).filter(|&x| m.le(m.mul(x, a), b)).collect();
            lres[a][b] = m.maximum(&left).ok_or(AlgebraError::NoMaximum {
                a,
                b,
                side: Side::Left,
            })?;
        }
    }
    Ok((rres, lres))
}

pub fn validate(m: &FinBiclosedPoset) -> ValidationReport {
    let mut failures = Vec::new();
    let n = m.len();
    let mut fail = |axiom: Axiom, witness: Vec<usize>| failures.push(AxiomFailure { axiom, witness });

    let square = |t: &Table| t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n));
    let unary = |t: &Option<Vec<usize>>| t.as_ref().is_none_or(|t| t.len() == n && t.iter().all(|&x| x < n));
    if n == 0
        || m.leq.len() != n
        || m.leq.iter().any(|r| r.len() != n)
        || !square(&m.op)
        || !square(&m.rres)
        || !square(&m.lres)
        || m.unit >= n
        || !unary(&m.kappa)
        || !unary(&m.bang)
    {
        fail(Axiom::Shape, vec![]);
        return ValidationReport { failures };
    }

    let le = |a: usize, b: usize| m.leq[a][b];
    let op = |a: usize, b: usize| m.op[a][b];
    let all3 = || (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))));

    // Each axiom reports its first witness only.
    macro_rules! check {
        ($axiom:expr, $iter:expr, $pred:expr) => {
            if let Some(w) = $iter.find(|w| !$pred(w)) {
                fail($axiom, w);
            }
        };
    }
    let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| vec![a, b]));
    let singles = || (0..n).map(|a| vec![a]);
    let triples = || all3().map(|(a, b, c)| vec![a, b, c]);

    check!(Axiom::Reflexive, singles(), |w: &Vec<usize>| le(w[0], w[0]));
    check!(Axiom::Antisymmetric, pairs(), |w: &Vec<usize>| {
        !(le(w[0], w[1]) && le(w[1], w[0])) || w[0] == w[1]
    });
    check!(Axiom::Transitive, triples(), |w: &Vec<usize>| {
        !(le(w[0], w[1]) && le(w[1], w[2])) || le(w[0], w[2])
    });
    check!(Axiom::Associative, triples(), |w: &Vec<usize>| {
        op(op(w[0], w[1]), w[2]) == op(w[0], op(w[1], w[2]))
    });
    check!(Axiom::LeftUnit, singles(), |w: &Vec<usize>| op(m.unit, w[0]) == w[0]);
    check!(Axiom::RightUnit, singles(), |w: &Vec<usize>| op(w[0], m.unit) == w[0]);
    check!(Axiom::MonotoneLeft, triples(), |w: &Vec<usize>| {
        !le(w[0], w[1]) || le(op(w[0], w[2]), op(w[1], w[2]))
    });
    check!(Axiom::MonotoneRight, triples(), |w: &Vec<usize>| {
        !le(w[0], w[1]) || le(op(w[2], w[0]), op(w[2], w[1]))
    });
    // a∘x ≤ b ⟺ x ≤ a⇀b, and x∘a ≤ b ⟺ x ≤ lres[a][b].
    check!(Axiom::RightResidual, triples(), |w: &Vec<usize>| {
        le(op(w[0], w[2]), w[1]) == le(w[2], m.rres[w[0]][w[1]])
    });
    check!(Axiom::LeftResidual, triples(), |w: &Vec<usize>| {
        le(op(w[2], w[0]), w[1]) == le(w[2], m.lres[w[0]][w[1]])
    });

    if let Some(k) = &m.kappa {
        check!(Axiom::KappaMonotone, pairs(), |w: &Vec<usize>| {
            !le(w[0], w[1]) || le(k[w[0]], k[w[1]])
        });
        check!(Axiom::KappaMinimality, singles(), |w: &Vec<usize>| le(k[w[0]], w[0]));
        check!(Axiom::KappaDuplication, singles(), |w: &Vec<usize>| le(k[w[0]], k[k[w[0]]]));
        check!(Axiom::LeftExchange, pairs(), |w: &Vec<usize>| {
            le(op(k[w[0]], w[1]), op(w[1], k[w[0]]))
        });
        check!(Axiom::RightExchange, pairs(), |w: &Vec<usize>| {
            le(op(w[0], k[w[1]]), op(k[w[1]], w[0]))
        });
        check!(Axiom::KappaProduct, pairs(), |w: &Vec<usize>| {
            le(op(k[w[0]], k[w[1]]), k[op(w[0], w[1])])
        });
        check!(Axiom::KappaUnit, std::iter::once(vec![m.unit]), |w: &Vec<usize>| {
            le(w[0], k[w[0]])
        });
    }
    if let Some(b) = &m.bang {
        check!(Axiom::BangMonotone, pairs(), |w: &Vec<usize>| {
            !le(w[0], w[1]) || le(b[w[0]], b[w[1]])
        });
        check!(Axiom::BangDereliction, singles(), |w: &Vec<usize>| le(b[w[0]], w[0]));
        check!(Axiom::BangDuplication, singles(), |w: &Vec<usize>| le(b[w[0]], b[b[w[0]]]));
        check!(Axiom::BangWeakening, singles(), |w: &Vec<usize>| le(b[w[0]], m.unit));
        check!(Axiom::BangContraction, singles(), |w: &Vec<usize>| {
            le(b[w[0]], op(b[w[0]], b[w[0]]))
        });
        check!(Axiom::BangProduct, pairs(), |w: &Vec<usize>| {
            le(op(b[w[0]], b[w[1]]), b[op(w[0], w[1])])
        });
        check!(Axiom::BangUnit, std::iter::once(vec![m.unit]), |w: &Vec<usize>| {
            le(w[0], b[w[0]])
        });
    }
    ValidationReport { failures }
}

/// `κa` = the largest central element below `a`.
pub fn center_kappa(m: &FinBiclosedPoset) -> Result<Vec<usize>, AlgebraError> {
    let n = m.len();
    let centre: Vec<usize> = (0..n)
        .filter(|&c| (0..n).all(|b| m.mul(c, b) == m.mul(b, c)))
        .collect();
    let mut k = Vec::with_capacity(n);
    for a in 0..n {
        let below: Vec<usize> = centre.iter().copied().filter(|&c| m.le(c, a)).collect();
        k.push(m.maximum(&below).ok_or(AlgebraError::NotConstructible(a))?);
    }
    let mut probe = m.clone();
    probe.kappa = Some(k.clone());
    probe.bang = None;
    if let Some(f) = validate(&probe).failures.first() {
        return Err(AlgebraError::CentreKappaInvalid(f.axiom));
    }
    Ok(k)
}

/// Value of a formula; `↼` follows `⟦B ↼ A⟧ = lres[⟦A⟧][⟦B⟧]`.
pub fn eval_formula(m: &FinBiclosedPoset, v: &Valuation, f: &Formula) -> Result<usize, AlgebraError> {
    Ok(match f {
        Formula::Atom(a) => *v.get(a).ok_or_else(|| AlgebraError::MissingAtom(a.clone()))?,
        Formula::Unit => m.unit,
        Formula::Tensor(a, b) => m.mul(eval_formula(m, v, a)?, eval_formula(m, v, b)?),
        Formula::RImp(a, b) => m.rres[eval_formula(m, v, a)?][eval_formula(m, v, b)?],
        Formula::LImp(b, a) => m.lres[eval_formula(m, v, a)?][eval_formula(m, v, b)?],
        Formula::Bang(a) => {
            let t = m.bang.as_ref().ok_or(AlgebraError::MissingTable("bang"))?;
            t[eval_formula(m, v, a)?]
        }
        Formula::Kappa(a) => {
            let t = m.kappa.as_ref().ok_or(AlgebraError::MissingTable("kappa"))?;
            t[eval_formula(m, v, a)?]
        }
    })
}

/// `⟦Γ⟧ ≤ ⟦A⟧`, folding the antecedent left to right.
pub fn eval_sequent(m: &FinBiclosedPoset, v: &Valuation, s: &Sequent) -> Result<bool, AlgebraError> {
    let mut acc = m.unit;
    for a in &s.antecedent {
        acc = m.mul(acc, eval_formula(m, v, a)?);
    }
    Ok(m.le(acc, eval_formula(m, v, &s.succedent)?))
}

/// Whether `m` has the tables needed to evaluate `s`.
pub fn supports(m: &FinBiclosedPoset, s: &Sequent) -> bool {
    (!s.has_bang() || m.bang.is_some()) && (!s.has_kappa() || m.kappa.is_some())
}
