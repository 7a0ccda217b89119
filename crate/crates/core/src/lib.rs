//! Specialization-closed supports, section functors and local cohomology,
//! computed over finite prime posets and over `Spec Z`.

pub mod arith;
pub mod cli;
pub mod injectives;
pub mod json;
pub mod oracles;
pub mod spec_model;
pub mod verify;
pub mod zmodules;
