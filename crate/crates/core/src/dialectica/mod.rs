//! Finite dialectica spaces over a biclosed poset.
//!
//! Objects are triples `(U, X, α)` with `α : U × X → M`; a morphism
//! `(f, F) : (U, X, α) → (V, Y, β)` satisfies `α(u, F y) ≤ β(f u, y)`.
//! Everything is finite and tabulated: a morphism stores `f` and `F` as index
//! tables over the carriers (see [`carrier`] for the indexing), and every
//! constructor on [`Dial`] checks the adjointness condition before returning.
//!
//! `!A` uses multisets truncated at a bound. The bounds are graded: the
//! comultiplication `δ` goes from `!_{kj} A` to `!_k !_j A` and the diagonal
//! `d` from `!_{2k} A` to `!_k A ⊗ !_k A`, so no arrow ever needs a multiset
//! it cannot represent. Multiset products are taken in index order of `X`,
//! which matters only on non-commutative hosts.

pub mod carrier;
mod interpret;
mod laws;
mod morphism;
mod object;

use thiserror::Error;

use crate::algebra::FinBiclosedPoset;
use crate::Exec;

pub use carrier::{Carrier, Val};
pub use interpret::{formula_object, interpret};
pub use laws::{check_laws, LawOutcome, LawReport, LawResult, LAW_NAMES};
pub use morphism::DialMorphism;
pub use object::DialObject;

pub const DEFAULT_CAP: usize = 100_000;
pub const DEFAULT_BOUND: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DialError {
    #[error("{what} has {} elements, above the cap", show_size(*.size))]
    SizeExceeded {
        what: &'static str,
        size: Option<u128>,
    },
    #[error("multiset of size {size} exceeds bound {bound}{}", show_at(.at))]
    BoundExceeded { bound: usize, size: usize, at: String },
    #[error("host has no kappa table")]
    MissingKappaTable,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("adjointness fails at u = {u}, y = {y}")]
    NotAMorphism { u: usize, y: usize },
    #[error("no object for atom {0}")]
    UnknownAtom(String),
    #[error("bad table: {0}")]
    BadTable(String),
}

fn show_size(s: Option<u128>) -> String {
    s.map_or_else(|| "too many".to_string(), |s| s.to_string())
}

fn show_at(at: &str) -> String {
    if at.is_empty() {
        String::new()
    } else {
        format!(" at {at}")
    }
}

/// Constructions over one host.
#[derive(Clone, Copy, Debug)]
pub struct Dial<'m> {
    pub host: &'m FinBiclosedPoset,
    /// Largest carrier any construction enumerates.
    pub cap: usize,
    pub exec: Exec,
}

impl<'m> Dial<'m> {
    pub fn new(host: &'m FinBiclosedPoset) -> Dial<'m> {
        Dial {
            host,
            cap: DEFAULT_CAP,
            exec: Exec::default(),
        }
    }

    pub fn with_cap(self, cap: usize) -> Dial<'m> {
        Dial { cap, ..self }
    }

    pub fn with_exec(self, exec: Exec) -> Dial<'m> {
        Dial { exec, ..self }
    }

    /// A base object from its relation table, row-major over `U × X`.
    pub fn base(&self, u: usize, x: usize, alpha: Vec<usize>) -> Result<DialObject, DialError> {
        if alpha.len() != u * x {
            return Err(DialError::BadTable(format!(
                "expected {} entries, found {}",
                u * x,
                alpha.len()
            )));
        }
        if let Some(&bad) = alpha.iter().find(|&&a| a >= self.host.len()) {
            return Err(DialError::BadTable(format!("{bad} is not a host element")));
        }
        Ok(DialObject::Base { u, x, alpha })
    }

    pub fn constant(&self, u: usize, x: usize, value: usize) -> Result<DialObject, DialError> {
        self.base(u, x, vec![value; u * x])
    }

    pub fn alpha(&self, a: &DialObject, u: &Val, x: &Val) -> usize {
        a.alpha(self.host, u, x)
    }

    fn guard(&self, a: DialObject) -> Result<DialObject, DialError> {
        a.u_carrier().size_within(self.cap, "U carrier")?;
        a.x_carrier().size_within(self.cap, "X carrier")?;
        Ok(a)
    }

    pub fn unit(&self) -> DialObject {
        DialObject::Unit
    }

    pub fn tensor_obj(&self, a: &DialObject, b: &DialObject) -> Result<DialObject, DialError> {
        self.guard(DialObject::Tensor(Box::new(a.clone()), Box::new(b.clone())))
    }

    /// `A ⇀ B`, related by `rres(α(u, F y), β(f u, y))`.
    pub fn hom_r(&self, a: &DialObject, b: &DialObject) -> Result<DialObject, DialError> {
        self.guard(DialObject::HomR(Box::new(a.clone()), Box::new(b.clone())))
    }

    /// `B ↼ A`, related by `lres(α(u, F y), β(f u, y))`.
    pub fn hom_l(&self, b: &DialObject, a: &DialObject) -> Result<DialObject, DialError> {
        self.guard(DialObject::HomL(Box::new(b.clone()), Box::new(a.clone())))
    }

    pub fn kappa_obj(&self, a: &DialObject) -> Result<DialObject, DialError> {
        if self.host.kappa.is_none() {
            return Err(DialError::MissingKappaTable);
        }
        Ok(DialObject::Kappa(Box::new(a.clone())))
    }

    pub fn bang_obj(&self, a: &DialObject, bound: usize) -> Result<DialObject, DialError> {
        self.guard(DialObject::Bang(Box::new(a.clone()), bound))
    }
}

#[cfg(test)]
mod tests;
