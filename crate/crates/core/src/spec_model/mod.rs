//! Prime spectra and the complete lattice of specialization-closed subsets.
//!
//! Two backends are supported: a finite poset of abstract points, and
//! `Spec Z` with the family {finite sets of maximal ideals, cofinite sets of
//! maximal ideals, the whole spectrum}.

mod closed_set;
mod ideals;
mod poset;
mod prime;
pub mod wire;

use thiserror::Error;

pub use closed_set::{
    Backend, MinSet, Point, PrimeEnumerator, SpecClosedSet, UpSet, DEFAULT_MIN_BOUND,
};
pub use ideals::{v_of_ideal, w_pair};
pub use poset::{PosetSpec, MAX_POSET_POINTS};
pub use prime::{IdealZ, PrimeList, PrimeSet, PrimeZ};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("backend mismatch: {0} vs {1}")]
    BackendMismatch(&'static str, &'static str),
    #[error("operands live on different posets")]
    PosetMismatch,
    #[error("empty family: union and intersection need at least one operand")]
    EmptyFamily,
    #[error("precondition violated: W1 is not contained in W2")]
    NotContained,
    #[error("W is closed (Min(W) is finite), so no strictly ascending witness chain exists")]
    ClosedHasNoWitness,
    #[error("chain length must be positive")]
    ZeroLength,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("member set is not closed under specialization")]
    NotUpClosed,
    #[error("poset has {0} points, at most 64 are supported")]
    PosetTooLarge(usize),
    #[error("duplicate point identifier {0:?}")]
    DuplicatePoint(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("relation is not antisymmetric on {0:?} and {1:?}")]
    NotAntisymmetric(String, String),
    #[error("malformed set: {0}")]
    Malformed(String),
}

impl SpecError {
    /// Errors that reject a well-formed request because an operation's
    /// precondition does not hold (as opposed to malformed input).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            SpecError::NotContained
                | SpecError::ClosedHasNoWitness
                | SpecError::ZeroLength
                | SpecError::EmptyFamily
                | SpecError::BackendMismatch(..)
                | SpecError::PosetMismatch
        )
    }
}
