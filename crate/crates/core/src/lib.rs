//! A workbench for the propositional logic of the plausible and its relatives:
//! modal formula syntax, neighborhood/Kripke/universal semantics, a Hilbert
//! proof checker, bounded countermodel search and finite plausibility algebras.

pub mod algebra;
pub mod cli;
pub mod formula;
pub mod proof;
pub mod search;
pub mod semantics;
