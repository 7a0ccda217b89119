//! Injective `Z`-modules, two-term injective complexes and the derived
//! section functor `RΓ_W`.

mod complex;
mod inj_module;
mod rgamma;

use thiserror::Error;

use crate::zmodules::ModuleError;

pub use complex::{minimal_injective_resolution, DifferentialMap, InjComplex};
pub use inj_module::{
    complement_on_injective, e_of_prime, gamma_on_injective, Indecomposable, InjModule,
    InjModuleWire, PrueferWire,
};
pub use rgamma::{
    divides_injectives_check, hom_entry, hom_vanishing_check, indecomposables_up_to, r_gamma,
    triangle_decompose, HomEntry, LocalCohomology, Triangle, DEFAULT_PRIME_BOUND,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InjError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("injective modules live over Spec Z, a Z-backend set is required")]
    NotZBackend,
    #[error("malformed injective module: {0}")]
    Malformed(String),
    #[error("degree-0 cohomology is not finitely generated")]
    NotFinitelyGenerated,
    #[error("complex terms disagree with its differential")]
    InconsistentComplex,
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}
