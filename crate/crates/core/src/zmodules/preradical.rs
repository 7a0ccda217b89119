//! A closed language of left exact preradicals on `Z`-modules, their
//! support sets `W_γ`, and the closure into section functors.

use serde::{Deserialize, Serialize};

use super::module::FgModule;
use super::section::{ann_preradical_apply, gamma_w, Submodule};
use super::ModuleError;
use crate::spec_model::wire::ClosedSetWire;
use crate::spec_model::{IdealZ, PrimeSet, SpecClosedSet};

/// `Composition([g1, g2, .., gk])` is `g1 · g2 · .. · gk`, applied
/// right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreradicalDescriptor {
    Section(SpecClosedSet),
    AnnBy(IdealZ),
    Composition(Vec<PreradicalDescriptor>),
    Intersection(Vec<PreradicalDescriptor>),
    Sum(Vec<PreradicalDescriptor>),
}

/// Which simple-ish test modules a preradical does not kill: `Z` itself and
/// the set of primes `q` with `γ(Z/q) != 0`.
struct CyclicProfile {
    keeps_z: bool,
    primes: PrimeSet,
}

impl PreradicalDescriptor {
    /// Evaluates the preradical on `m`.
    ///
    /// Every constituent acts on each canonical summand by a subgroup from
    /// that summand's chain of subgroups, so composites, intersections and
    /// sums are computed per summand.
    pub fn apply(&self, m: &FgModule) -> Result<Submodule, ModuleError> {
        match self {
            PreradicalDescriptor::Section(w) => gamma_w(w, m),
            PreradicalDescriptor::AnnBy(i) => Ok(ann_preradical_apply(*i, m)),
            PreradicalDescriptor::Composition(items) => {
                let mut acc = Submodule::whole(m);
                for g in items.iter().rev() {
                    let inner = g.apply(&acc.module())?;
                    acc = acc.compose(&inner)?;
                }
                Ok(acc)
            }
            PreradicalDescriptor::Intersection(items) => {
                let (first, rest) = items.split_first().ok_or(ModuleError::EmptyDescriptor)?;
                rest.iter()
                    .try_fold(first.apply(m)?, |acc, g| acc.intersect(&g.apply(m)?))
            }
            PreradicalDescriptor::Sum(items) => {
                let (first, rest) = items.split_first().ok_or(ModuleError::EmptyDescriptor)?;
                rest.iter()
                    .try_fold(first.apply(m)?, |acc, g| acc.sum(&g.apply(m)?))
            }
        }
    }

    /// Checks the tree is well formed: non-empty lists, `Z`-backend sets.
    pub fn validate(&self) -> Result<(), ModuleError> {
        match self {
            PreradicalDescriptor::Section(w) => match w {
                SpecClosedSet::Poset(_) => Err(ModuleError::NotZBackend),
                _ => Ok(()),
            },
            PreradicalDescriptor::AnnBy(_) => Ok(()),
            PreradicalDescriptor::Composition(items)
            | PreradicalDescriptor::Intersection(items)
            | PreradicalDescriptor::Sum(items) => {
                if items.is_empty() {
                    return Err(ModuleError::EmptyDescriptor);
                }
                items.iter().try_for_each(|g| g.validate())
            }
        }
    }

    /// On `Z` and on every `Z/q` each constituent is either the identity or
    /// zero, so the profile composes by boolean and set algebra.
    fn profile(&self) -> CyclicProfile {
        match self {
            PreradicalDescriptor::Section(w) => CyclicProfile {
                keeps_z: w.is_whole(),
                primes: w.maximal_part(),
            },
            PreradicalDescriptor::AnnBy(i) => match i.prime_divisors() {
                None => CyclicProfile {
                    keeps_z: true,
                    primes: PrimeSet::all(),
                },
                Some(l) => CyclicProfile {
                    keeps_z: false,
                    primes: PrimeSet::Finite(l),
                },
            },
            PreradicalDescriptor::Composition(items)
            | PreradicalDescriptor::Intersection(items) => items.iter().map(|g| g.profile()).fold(
                CyclicProfile {
                    keeps_z: true,
                    primes: PrimeSet::all(),
                },
                |acc, p| CyclicProfile {
                    keeps_z: acc.keeps_z && p.keeps_z,
                    primes: acc.primes.intersect(&p.primes),
                },
            ),
            PreradicalDescriptor::Sum(items) => items.iter().map(|g| g.profile()).fold(
                CyclicProfile {
                    keeps_z: false,
                    primes: PrimeSet::none(),
                },
                |acc, p| CyclicProfile {
                    keeps_z: acc.keeps_z || p.keeps_z,
                    primes: acc.primes.union(&p.primes),
                },
            ),
        }
    }
}

/// `W_γ = { p : γ(Z/q) != 0 for some q ⊆ p }`.
pub fn w_of_preradical(g: &PreradicalDescriptor) -> Result<SpecClosedSet, ModuleError> {
    g.validate()?;
    let profile = g.profile();
    Ok(if profile.keeps_z {
        SpecClosedSet::ZWhole
    } else {
        match profile.primes {
            PrimeSet::Finite(l) => SpecClosedSet::ZFiniteMax(l),
            PrimeSet::Cofinite(e) => SpecClosedSet::ZCofiniteMax(e),
        }
    })
}

/// The smallest section functor containing `g`: `Γ_{W_γ}`.
pub fn closure(g: &PreradicalDescriptor) -> Result<PreradicalDescriptor, ModuleError> {
    Ok(PreradicalDescriptor::Section(w_of_preradical(g)?))
}

/// Literal evaluation of `γ(Z)` and `γ(Z/q)`; used to cross-check the
/// symbolic profile on primes up to a bound.
pub fn kills_cyclic(g: &PreradicalDescriptor, q: Option<u64>) -> Result<bool, ModuleError> {
    let m = match q {
        None => FgModule::free(1),
        Some(q) => FgModule::cyclic(q),
    };
    Ok(g.apply(&m)?.module().is_zero())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DescriptorWire {
    Section { w: ClosedSetWire },
    Ann { gen: crate::json::JsonU64 },
    Comp { items: Vec<DescriptorWire> },
    Cap { items: Vec<DescriptorWire> },
    Sum { items: Vec<DescriptorWire> },
}

impl DescriptorWire {
    pub fn decode(&self) -> Result<PreradicalDescriptor, ModuleError> {
        let list = |items: &[DescriptorWire]| {
            items
                .iter()
                .map(|d| d.decode())
                .collect::<Result<Vec<_>, _>>()
        };
        let d = match self {
            DescriptorWire::Section { w } => PreradicalDescriptor::Section(w.decode(None)?),
            DescriptorWire::Ann { gen } => PreradicalDescriptor::AnnBy(IdealZ::new(gen.0)),
            DescriptorWire::Comp { items } => PreradicalDescriptor::Composition(list(items)?),
            DescriptorWire::Cap { items } => PreradicalDescriptor::Intersection(list(items)?),
            DescriptorWire::Sum { items } => PreradicalDescriptor::Sum(list(items)?),
        };
        d.validate()?;
        Ok(d)
    }
}

impl From<&PreradicalDescriptor> for DescriptorWire {
    fn from(d: &PreradicalDescriptor) -> Self {
        let list =
            |items: &[PreradicalDescriptor]| items.iter().map(DescriptorWire::from).collect();
        match d {
            PreradicalDescriptor::Section(w) => DescriptorWire::Section { w: w.into() },
            PreradicalDescriptor::AnnBy(i) => DescriptorWire::Ann {
                gen: crate::json::JsonU64(i.generator()),
            },
            PreradicalDescriptor::Composition(items) => DescriptorWire::Comp { items: list(items) },
            PreradicalDescriptor::Intersection(items) => DescriptorWire::Cap { items: list(items) },
            PreradicalDescriptor::Sum(items) => DescriptorWire::Sum { items: list(items) },
        }
    }
}

impl Serialize for PreradicalDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DescriptorWire::from(self).serialize(s)
    }
}
