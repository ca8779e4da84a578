//! Workbench for the Lambek calculus and its modal extensions.
//!
//! * [`syntax`]: formulas, terms, parsing, printing, substitution.
//! * [`sequent`]: derivation checking, proof search and cut elimination.
//! * [`typing`]: type checking of the term calculi and elaboration to derivations.
//! * [`rewrite`]: reduction, normalization and joinability.
//! * [`ill`]: intuitionistic linear logic and the embedding into it.
//! * [`algebra`]: finite biclosed posets and countermodel search.
//! * [`dialectica`]: finite dialectica spaces and interpretation of derivations.
//! * [`corpus`]: the line-oriented regression corpus format.
//! * [`testgen`]: seeded generators of typed terms and of derivations with Cut.

pub mod exec;
pub mod syntax;

pub use exec::Exec;
pub mod sequent;
pub mod typing;
pub mod rewrite;
pub mod ill;
pub mod algebra;
pub mod dialectica;
pub mod corpus;
pub mod testgen;
