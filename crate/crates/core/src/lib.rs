//! Finite lattices and the structures built on them: interval algebras,
//! Heyting towers, Boolean rings over GF(2), cyclic orders with their
//! localized chain logics, and Galois contexts with concept enumeration.
//!
//! Every law check is exhaustive over the finite carrier and returns a
//! concrete witness on failure.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cyclic;
pub mod error;
pub mod galois;
pub mod gf2;
pub mod interval;
pub mod lattice;
pub mod laws;
pub mod poset;

pub use cyclic::{ChainLogic, CyclicAxioms, CyclicOrder, LocalizedChain};
pub use error::{Error, MissingBound, Precondition};
pub use galois::{
    context_from_model, Concept, FiniteModel, FormalContext, ObjectSet, PredicateSet, Subset,
};
pub use gf2::{BooleanRingView, Gf2Vector};
pub use interval::{
    build_tower, check_subinterval_theorem, interval, project, relative_negation, HeytingTower,
    IntervalAlgebra, LocalComplement, TowerLevel,
};
pub use lattice::{Generator, Lattice};
pub use laws::{Law, LawReport};
pub use poset::{Elem, Poset};
