//! Finitely generated abelian groups in canonical form and the section
//! functors acting on them.

mod module;
mod preradical;
mod section;
mod smith;

use thiserror::Error;

use crate::spec_model::SpecError;

pub use module::{module_from_presentation, support, Cyclic, FgModule, FgModuleWire};
pub use preradical::{
    closure, kills_cyclic, w_of_preradical, DescriptorWire, PreradicalDescriptor,
};
pub use section::{
    ann_preradical_apply, gamma_w, torsion_pair, Submodule, SummandImage, TorsionPair,
};
pub use smith::{smith_normal_form, PresentationMatrix, PresentationWire, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("summand Z/{0}^0 has a zero exponent")]
    ZeroExponent(u64),
    #[error("entries do not form a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize },
    #[error("elementary divisor {0} exceeds the factorable range (u64)")]
    DivisorTooLarge(String),
    #[error("submodule data does not match the ambient module")]
    BadSubmodule,
    #[error("section functors on Z-modules need a Z-backend set")]
    NotZBackend,
    #[error("composite descriptor with an empty operand list")]
    EmptyDescriptor,
    #[error(transparent)]
    Spec(#[from] SpecError),
}
