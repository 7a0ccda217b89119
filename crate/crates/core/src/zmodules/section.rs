//! Section functors `Γ_W`, annihilator preradicals `Hom(Z/(a), -)` and
//! torsion pairs, all acting summand by summand on the canonical form.

use serde::Serialize;

use super::module::{Cyclic, FgModule};
use super::ModuleError;
use crate::arith;
use crate::spec_model::{Backend, IdealZ, PrimeZ, SpecClosedSet};

/// A submodule of `ambient` that splits along the canonical decomposition.
///
/// `kept[i]` describes what survives of the `i`-th canonical summand: for a
/// free summand `0` (nothing) or `1` (all of it), for `Z/p^e` the exponent
/// `k <= e` of the surviving subgroup `p^(e-k) Z/p^e ≅ Z/p^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    ambient: FgModule,
    kept: Vec<u32>,
}

/// Where a canonical summand of a submodule goes: its generator maps to
/// `p^shift` times the generator of ambient summand `source`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SummandImage {
    pub source: usize,
    pub shift: u32,
}

fn full_level(c: Cyclic) -> u32 {
    match c {
        Cyclic::Free => 1,
        Cyclic::PrimePower { exp, .. } => exp,
    }
}

impl Submodule {
    pub fn new(ambient: FgModule, kept: Vec<u32>) -> Result<Self, ModuleError> {
        let summands = ambient.summands();
        if kept.len() != summands.len()
            || kept.iter().zip(&summands).any(|(&k, &c)| k > full_level(c))
        {
            return Err(ModuleError::BadSubmodule);
        }
        Ok(Submodule { ambient, kept })
    }

    /// Keeps each summand up to the level chosen by `level`.
    pub fn from_levels(ambient: &FgModule, level: impl Fn(Cyclic) -> u32) -> Self {
        let kept = ambient
            .summands()
            .into_iter()
            .map(|c| level(c).min(full_level(c)))
            .collect();
        Submodule {
            ambient: ambient.clone(),
            kept,
        }
    }

    pub fn whole(ambient: &FgModule) -> Self {
        Self::from_levels(ambient, full_level)
    }

    pub fn zero(ambient: &FgModule) -> Self {
        Self::from_levels(ambient, |_| 0)
    }

    pub fn ambient(&self) -> &FgModule {
        &self.ambient
    }

    pub fn kept(&self) -> &[u32] {
        &self.kept
    }

    /// Indices of the ambient summands meeting the submodule nontrivially.
    pub fn surviving(&self) -> Vec<usize> {
        (0..self.kept.len()).filter(|&i| self.kept[i] > 0).collect()
    }

    fn pieces(&self) -> Vec<(Cyclic, usize, u32)> {
        let mut v: Vec<(Cyclic, usize, u32)> = self
            .ambient
            .summands()
            .into_iter()
            .zip(&self.kept)
            .enumerate()
            .filter(|(_, (_, &k))| k > 0)
            .map(|(i, (c, &k))| match c {
                Cyclic::Free => (Cyclic::Free, i, 0),
                Cyclic::PrimePower { prime, exp } => {
                    (Cyclic::PrimePower { prime, exp: k }, i, exp - k)
                }
            })
            .collect();
        v.sort_unstable();
        v
    }

    /// The submodule as an abstract module, in canonical form.
    pub fn module(&self) -> FgModule {
        FgModule::from_summands(self.pieces().into_iter().map(|(c, _, _)| c))
    }

    /// Images of the canonical summands of [`Submodule::module`], in order.
    pub fn embedding(&self) -> Vec<SummandImage> {
        self.pieces()
            .into_iter()
            .map(|(_, source, shift)| SummandImage { source, shift })
            .collect()
    }

    /// `ambient / self` in canonical form.
    pub fn quotient(&self) -> FgModule {
        FgModule::from_summands(
            self.ambient
                .summands()
                .into_iter()
                .zip(&self.kept)
                .filter_map(|(c, &k)| match c {
                    Cyclic::Free => (k == 0).then_some(Cyclic::Free),
                    Cyclic::PrimePower { prime, exp } => (exp > k).then_some(Cyclic::PrimePower {
                        prime,
                        exp: exp - k,
                    }),
                }),
        )
    }

    /// Re-embeds `inner`, a submodule of `self.module()`, into the ambient.
    pub fn compose(&self, inner: &Submodule) -> Result<Submodule, ModuleError> {
        if inner.ambient != self.module() {
            return Err(ModuleError::BadSubmodule);
        }
        let mut kept = vec![0u32; self.kept.len()];
        for (image, &k) in self.embedding().iter().zip(&inner.kept) {
            kept[image.source] = k;
        }
        Ok(Submodule {
            ambient: self.ambient.clone(),
            kept,
        })
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.ambient == other.ambient && self.kept.iter().zip(&other.kept).all(|(a, b)| a <= b)
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule, ModuleError> {
        self.combine(other, u32::min)
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule, ModuleError> {
        self.combine(other, u32::max)
    }

    fn combine(&self, other: &Submodule, f: fn(u32, u32) -> u32) -> Result<Submodule, ModuleError> {
        if self.ambient != other.ambient {
            return Err(ModuleError::BadSubmodule);
        }
        Ok(Submodule {
            ambient: self.ambient.clone(),
            kept: self
                .kept
                .iter()
                .zip(&other.kept)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Membership of an element of a finite ambient, given by its coordinates
    /// in the canonical summands.
    pub fn contains_element(&self, coords: &[u64]) -> bool {
        self.ambient
            .summands()
            .into_iter()
            .zip(&self.kept)
            .zip(coords)
            .all(|((c, &k), &x)| match c {
                Cyclic::Free => k == 1 || x == 0,
                Cyclic::PrimePower { prime, exp } => x % prime.pow(exp - k) == 0,
            })
    }
}

fn require_z(w: &SpecClosedSet) -> Result<(), ModuleError> {
    match w.backend() {
        Backend::Z => Ok(()),
        Backend::Poset => Err(ModuleError::NotZBackend),
    }
}

/// `Γ_W(M) = { x : Supp(Zx) ⊆ W }`.
pub fn gamma_w(w: &SpecClosedSet, m: &FgModule) -> Result<Submodule, ModuleError> {
    require_z(w)?;
    if w.is_whole() {
        return Ok(Submodule::whole(m));
    }
    Ok(Submodule::from_levels(m, |c| match c {
        Cyclic::Free => 0,
        Cyclic::PrimePower { prime, exp } => {
            if w.contains_prime(PrimeZ::Max(prime)) {
                exp
            } else {
                0
            }
        }
    }))
}

/// `Hom(Z/I, M) = { x : I x = 0 }`.
pub fn ann_preradical_apply(ideal: IdealZ, m: &FgModule) -> Submodule {
    let a = ideal.generator();
    if a == 0 {
        return Submodule::whole(m);
    }
    Submodule::from_levels(m, |c| match c {
        Cyclic::Free => 0,
        Cyclic::PrimePower { prime, exp } => exp.min(arith::valuation(a, prime)),
    })
}

/// The torsion pair `0 -> T -> M -> F -> 0` of `Γ_W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionPair {
    pub torsion: Submodule,
    pub torsion_free: FgModule,
}

impl TorsionPair {
    pub fn torsion_module(&self) -> FgModule {
        self.torsion.module()
    }
}

pub fn torsion_pair(w: &SpecClosedSet, m: &FgModule) -> Result<TorsionPair, ModuleError> {
    let torsion = gamma_w(w, m)?;
    let torsion_free = torsion.quotient();
    Ok(TorsionPair {
        torsion,
        torsion_free,
    })
}
