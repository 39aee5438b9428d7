use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::laws::Law;

/// Which bound is missing when a poset fails to be a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MissingBound {
    Meet,
    Join,
}

/// Precondition of the subinterval check that did not hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precondition {
    NotComparable,
    NotModular,
    LacksLocalComplements,
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precondition::NotComparable => "interval endpoints are not ordered",
            Precondition::NotModular => "lattice is not modular",
            Precondition::LacksLocalComplements => "interval lacks local complements",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DuplicateLabel(String),
    InvalidLabel(String),
    UnknownLabel(String),
    /// Labels along a cycle of asserted pairs, first label repeated at the end.
    CycleDetected(Vec<String>),
    NotALattice {
        x: String,
        y: String,
        missing: MissingBound,
    },
    EmptyLattice,
    SizeLimitExceeded {
        what: &'static str,
        limit: usize,
    },
    NotComparable {
        a: String,
        b: String,
    },
    NotMember(String),
    PreconditionFailed(Precondition),
    NotDistributive,
    NotDescending {
        upper: String,
        lower: String,
    },
    NotBoolean,
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    TooFew(usize),
    NotAChain,
    NonDistinctTriple(String, String, String),
    AxiomsFail(Law),
    ArityMismatch {
        predicate: String,
        expected: usize,
        found: usize,
    },
    OutOfDomain(String),
    UnknownObject(String),
    UnknownPredicate(String),
    ConceptCapExceeded(usize),
    InvalidDescriptor(String),
    /// A structural invariant checked at construction did not hold.
    InvariantViolated(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateLabel(l) => write!(f, "duplicate label `{l}`"),
            Error::InvalidLabel(l) => write!(f, "invalid label `{l}`"),
            Error::UnknownLabel(l) => write!(f, "unknown label `{l}`"),
            Error::CycleDetected(cycle) => write!(f, "order has a cycle: {}", cycle.join(" < ")),
            Error::NotALattice { x, y, missing } => {
                let which = match missing {
                    MissingBound::Meet => "greatest lower bound",
                    MissingBound::Join => "least upper bound",
                };
                write!(f, "not a lattice: ({x},{y}) has no {which}")
            }
            Error::EmptyLattice => f.write_str("a lattice needs at least one element"),
            Error::SizeLimitExceeded { what, limit } => {
                write!(f, "{what} exceeds the size limit of {limit}")
            }
            Error::NotComparable { a, b } => write!(f, "`{a}` is not below `{b}`"),
            Error::NotMember(x) => write!(f, "`{x}` is not a member of the interval"),
            Error::PreconditionFailed(p) => write!(f, "precondition failed: {p}"),
            Error::NotDistributive => f.write_str("lattice is not distributive"),
            Error::NotDescending { upper, lower } => {
                write!(
                    f,
                    "zeros must strictly descend, but `{lower}` is not below `{upper}`"
                )
            }
            Error::NotBoolean => f.write_str("lattice is not a Boolean algebra"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
            Error::TooFew(n) => write!(f, "a cyclic order needs at least 3 elements, got {n}"),
            Error::NotAChain => f.write_str("order is not total"),
            Error::NonDistinctTriple(a, b, c) => {
                write!(f, "triple ({a},{b},{c}) has repeated elements")
            }
            Error::AxiomsFail(law) => write!(f, "cyclic axiom `{}` fails", law.name()),
            Error::ArityMismatch {
                predicate,
                expected,
                found,
            } => {
                write!(
                    f,
                    "predicate `{predicate}` has arity {found}, expected {expected}"
                )
            }
            Error::OutOfDomain(x) => write!(f, "`{x}` is not in the domain"),
            Error::UnknownObject(o) => write!(f, "unknown object `{o}`"),
            Error::UnknownPredicate(p) => write!(f, "unknown predicate `{p}`"),
            Error::ConceptCapExceeded(cap) => write!(f, "more than {cap} concepts"),
            Error::InvalidDescriptor(d) => write!(f, "invalid generator descriptor `{d}`"),
            Error::InvariantViolated(what) => write!(f, "invariant violated: {what}"),
        }
    }
}

impl core::error::Error for Error {}
