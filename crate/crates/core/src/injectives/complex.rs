//! Two-term injective complexes `I^0 -> I^1` built from tagged per-summand
//! maps, and the minimal injective resolution of a finitely generated group.

use serde::Serialize;

use super::inj_module::InjModule;
use super::InjError;
use crate::json::JsonU64;
use crate::spec_model::{PrimeSet, SpecClosedSet};
use crate::zmodules::{Cyclic, FgModule};

/// One block of the differential. A `false` source or target flag means the
/// corresponding term has been cut away (by a sub- or quotient complex),
/// leaving a lone summand in the other degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DifferentialMap {
    /// `Q -> ⊕_{p ∈ targets} Z(p^∞)`: the projection `Q -> Q/Z ≅ ⊕_p Z(p^∞)`
    /// followed by the projection onto the listed primes.
    CanonicalQuotient { source: bool, targets: PrimeSet },
    /// `Z(p^∞) -> Z(p^∞)`, multiplication by `p^exp`.
    MultiplicationBy {
        prime: u64,
        exp: u32,
        source: bool,
        target: bool,
    },
}

impl DifferentialMap {
    fn source_term(&self) -> InjModule {
        match self {
            DifferentialMap::CanonicalQuotient { source, .. } => {
                InjModule::rational(u64::from(*source))
            }
            DifferentialMap::MultiplicationBy { prime, source, .. } => {
                InjModule::pruefer(*prime, u64::from(*source))
            }
        }
    }

    fn target_term(&self) -> InjModule {
        match self {
            DifferentialMap::CanonicalQuotient { targets, .. } => InjModule::pruefer_on(targets, 1),
            DifferentialMap::MultiplicationBy { prime, target, .. } => {
                InjModule::pruefer(*prime, u64::from(*target))
            }
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            DifferentialMap::CanonicalQuotient { source, targets } => !source && targets.is_empty(),
            DifferentialMap::MultiplicationBy { source, target, .. } => !source && !target,
        }
    }

    /// Degreewise `Γ_W` (`keep = true`) or `I / Γ_W(I)` (`keep = false`).
    fn split(&self, w: &SpecClosedSet, keep: bool) -> DifferentialMap {
        let in_w = |p: u64| w.is_whole() || w.maximal_part().contains(p);
        match self {
            DifferentialMap::CanonicalQuotient { source, targets } => {
                let side = if keep {
                    w.maximal_part()
                } else {
                    w.maximal_part().complement()
                };
                DifferentialMap::CanonicalQuotient {
                    source: *source && (w.is_whole() == keep),
                    targets: targets.intersect(&side),
                }
            }
            DifferentialMap::MultiplicationBy {
                prime,
                exp,
                source,
                target,
            } => {
                let stays = in_w(*prime) == keep;
                DifferentialMap::MultiplicationBy {
                    prime: *prime,
                    exp: *exp,
                    source: *source && stays,
                    target: *target && stays,
                }
            }
        }
    }

    /// `(H^0, H^1)` of this block; `H^0` must be finitely generated.
    fn cohomology(&self) -> Result<(FgModule, InjModule), InjError> {
        match self {
            DifferentialMap::CanonicalQuotient {
                source: true,
                targets,
            } if targets.is_all() => Ok((FgModule::free(1), InjModule::zero())),
            // ker(Q -> partial Q/Z) is a localization of Z (or Q itself).
            DifferentialMap::CanonicalQuotient { source: true, .. } => {
                Err(InjError::NotFinitelyGenerated)
            }
            DifferentialMap::CanonicalQuotient {
                source: false,
                targets,
            } => Ok((FgModule::zero(), InjModule::pruefer_on(targets, 1))),
            DifferentialMap::MultiplicationBy {
                prime,
                exp,
                source: true,
                target: true,
            } => Ok((
                FgModule::new(0, vec![(*prime, *exp)]).expect("prime"),
                InjModule::zero(),
            )),
            DifferentialMap::MultiplicationBy {
                source: true,
                target: false,
                ..
            } => Err(InjError::NotFinitelyGenerated),
            DifferentialMap::MultiplicationBy {
                prime,
                target: true,
                ..
            } => Ok((FgModule::zero(), InjModule::pruefer(*prime, 1))),
            DifferentialMap::MultiplicationBy { .. } => Ok((FgModule::zero(), InjModule::zero())),
        }
    }
}

/// A complex `I^0 -> I^1` of injective `Z`-modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjComplex {
    degree0: InjModule,
    degree1: InjModule,
    differential: Vec<DifferentialMap>,
}

impl InjComplex {
    pub fn from_maps(maps: Vec<DifferentialMap>) -> Self {
        let differential: Vec<_> = maps.into_iter().filter(|m| !m.is_zero()).collect();
        let degree0 = differential
            .iter()
            .fold(InjModule::zero(), |acc, m| acc.direct_sum(&m.source_term()));
        let degree1 = differential
            .iter()
            .fold(InjModule::zero(), |acc, m| acc.direct_sum(&m.target_term()));
        InjComplex {
            degree0,
            degree1,
            differential,
        }
    }

    pub fn zero() -> Self {
        InjComplex::from_maps(Vec::new())
    }

    pub fn degree0(&self) -> &InjModule {
        &self.degree0
    }

    pub fn degree1(&self) -> &InjModule {
        &self.degree1
    }

    /// Terms beyond degree one are always zero.
    pub fn term(&self, degree: usize) -> InjModule {
        match degree {
            0 => self.degree0.clone(),
            1 => self.degree1.clone(),
            _ => InjModule::zero(),
        }
    }

    pub fn differential(&self) -> &[DifferentialMap] {
        &self.differential
    }

    pub fn is_zero(&self) -> bool {
        self.degree0.is_zero() && self.degree1.is_zero()
    }

    /// Terms agree with the summed sources and targets of the differential.
    pub fn validate(&self) -> Result<(), InjError> {
        let rebuilt = InjComplex::from_maps(self.differential.clone());
        if rebuilt.degree0 != self.degree0 || rebuilt.degree1 != self.degree1 {
            return Err(InjError::InconsistentComplex);
        }
        Ok(())
    }

    /// The subcomplex `Γ_W(I)`.
    pub fn gamma(&self, w: &SpecClosedSet) -> Result<InjComplex, InjError> {
        self.split(w, true)
    }

    /// The quotient complex `I / Γ_W(I)`.
    pub fn quotient_by_gamma(&self, w: &SpecClosedSet) -> Result<InjComplex, InjError> {
        self.split(w, false)
    }

    fn split(&self, w: &SpecClosedSet, keep: bool) -> Result<InjComplex, InjError> {
        if matches!(w, SpecClosedSet::Poset(_)) {
            return Err(InjError::NotZBackend);
        }
        Ok(InjComplex::from_maps(
            self.differential.iter().map(|m| m.split(w, keep)).collect(),
        ))
    }

    /// `(H^0, H^1)`, computed block by block.
    pub fn cohomology(&self) -> Result<(FgModule, InjModule), InjError> {
        let mut h0 = FgModule::zero();
        let mut h1 = InjModule::zero();
        for m in &self.differential {
            let (a, b) = m.cohomology()?;
            h0 = h0.direct_sum(&a);
            h1 = h1.direct_sum(&b);
        }
        Ok((h0, h1))
    }
}

/// `Z ↦ [Q -> ⊕_p Z(p^∞)]`, `Z/p^e ↦ [Z(p^∞) -p^e-> Z(p^∞)]`, summed.
pub fn minimal_injective_resolution(m: &FgModule) -> InjComplex {
    InjComplex::from_maps(
        m.summands()
            .into_iter()
            .map(|c| match c {
                Cyclic::Free => DifferentialMap::CanonicalQuotient {
                    source: true,
                    targets: PrimeSet::all(),
                },
                Cyclic::PrimePower { prime, exp } => DifferentialMap::MultiplicationBy {
                    prime,
                    exp,
                    source: true,
                    target: true,
                },
            })
            .collect(),
    )
}

#[derive(Serialize)]
struct MapWire<'a> {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    prime: Option<JsonU64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exp: Option<u32>,
    source: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    targets: Option<&'a InjModule>,
}

impl Serialize for InjComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let targets: Vec<InjModule> = self
            .differential
            .iter()
            .map(|m| match m {
                DifferentialMap::CanonicalQuotient { targets, .. } => {
                    InjModule::pruefer_on(targets, 1)
                }
                _ => InjModule::zero(),
            })
            .collect();
        let maps: Vec<MapWire> = self
            .differential
            .iter()
            .zip(&targets)
            .map(|(m, t)| match m {
                DifferentialMap::CanonicalQuotient { source, .. } => MapWire {
                    kind: "canonical_quotient",
                    prime: None,
                    exp: None,
                    source: *source,
                    target: None,
                    targets: Some(t),
                },
                DifferentialMap::MultiplicationBy {
                    prime,
                    exp,
                    source,
                    target,
                } => MapWire {
                    kind: "multiplication",
                    prime: Some(JsonU64(*prime)),
                    exp: Some(*exp),
                    source: *source,
                    target: Some(*target),
                    targets: None,
                },
            })
            .collect();
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("i0", &self.degree0)?;
        map.serialize_entry("i1", &self.degree1)?;
        map.serialize_entry("differential", &maps)?;
        map.end()
    }
}
