use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::smith::{smith_normal_form, PresentationMatrix};
use super::ModuleError;
use crate::arith;
use crate::json::JsonU64;
use crate::spec_model::SpecClosedSet;

/// One indecomposable summand of a finitely generated abelian group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cyclic {
    Free,
    PrimePower { prime: u64, exp: u32 },
}

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/p^e` in canonical form:
/// torsion summands sorted by `(p, e)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FgModule {
    free_rank: usize,
    torsion: Vec<(u64, u32)>,
}

impl FgModule {
    pub fn new(free_rank: usize, torsion: Vec<(u64, u32)>) -> Result<Self, ModuleError> {
        for &(p, e) in &torsion {
            if !arith::is_prime(p) {
                return Err(ModuleError::NotPrime(p));
            }
            if e == 0 {
                return Err(ModuleError::ZeroExponent(p));
            }
        }
        let mut torsion = torsion;
        torsion.sort_unstable();
        Ok(FgModule { free_rank, torsion })
    }

    pub fn zero() -> Self {
        FgModule::default()
    }

    pub fn free(rank: usize) -> Self {
        FgModule {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n`, with `Z/0 = Z`.
    pub fn cyclic(n: u64) -> Self {
        if n == 0 {
            return Self::free(1);
        }
        FgModule {
            free_rank: 0,
            torsion: arith::factorize(n),
        }
    }

    pub(crate) fn from_summands<I: IntoIterator<Item = Cyclic>>(summands: I) -> Self {
        let mut m = FgModule::zero();
        for c in summands {
            match c {
                Cyclic::Free => m.free_rank += 1,
                Cyclic::PrimePower { prime, exp } => m.torsion.push((prime, exp)),
            }
        }
        m.torsion.sort_unstable();
        m
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[(u64, u32)] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Canonical summand list: free copies first, then torsion in order.
    pub fn summands(&self) -> Vec<Cyclic> {
        std::iter::repeat_n(Cyclic::Free, self.free_rank)
            .chain(
                self.torsion
                    .iter()
                    .map(|&(prime, exp)| Cyclic::PrimePower { prime, exp }),
            )
            .collect()
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigUint {
        self.torsion
            .iter()
            .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigUint> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn direct_sum(&self, other: &FgModule) -> FgModule {
        let mut torsion: Vec<_> = self.torsion.iter().chain(&other.torsion).copied().collect();
        torsion.sort_unstable();
        FgModule {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }

    /// Distinct primes occurring in the torsion part.
    pub fn torsion_primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.torsion.iter().map(|&(p, _)| p).collect();
        v.dedup();
        v
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for &(p, e) in &self.torsion {
            parts.push(if e == 1 {
                format!("Z/{p}")
            } else {
                format!("Z/{p}^{e}")
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

/// `coker(A)` in canonical form: `rows - rank(A)` free summands plus the
/// nontrivial elementary divisors split into prime powers.
pub fn module_from_presentation(a: &PresentationMatrix) -> Result<FgModule, ModuleError> {
    let snf = smith_normal_form(a);
    let mut torsion = Vec::new();
    for d in snf.diagonal.iter().filter(|d| !d.is_zero()) {
        let d = d
            .abs()
            .to_u64()
            .ok_or_else(|| ModuleError::DivisorTooLarge(d.to_string()))?;
        torsion.extend(arith::factorize(d));
    }
    torsion.sort_unstable();
    Ok(FgModule {
        free_rank: a.rows() - snf.rank(),
        torsion,
    })
}

/// `Supp(M) = V(Ann M)`.
pub fn support(m: &FgModule) -> SpecClosedSet {
    if m.free_rank > 0 {
        SpecClosedSet::ZWhole
    } else {
        SpecClosedSet::z_finite(m.torsion_primes()).expect("canonical torsion primes are prime")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FgModuleWire {
    pub rank: usize,
    pub torsion: Vec<(JsonU64, u32)>,
}

impl From<&FgModule> for FgModuleWire {
    fn from(m: &FgModule) -> Self {
        FgModuleWire {
            rank: m.free_rank,
            torsion: m.torsion.iter().map(|&(p, e)| (JsonU64(p), e)).collect(),
        }
    }
}

impl TryFrom<FgModuleWire> for FgModule {
    type Error = ModuleError;
    fn try_from(w: FgModuleWire) -> Result<Self, ModuleError> {
        FgModule::new(
            w.rank,
            w.torsion.into_iter().map(|(p, e)| (p.0, e)).collect(),
        )
    }
}

impl Serialize for FgModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FgModuleWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FgModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        FgModuleWire::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}
