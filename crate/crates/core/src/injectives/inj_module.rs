use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::InjError;
use crate::arith;
use crate::json::JsonU64;
use crate::spec_model::{PrimeSet, PrimeZ, SpecClosedSet};
use crate::zmodules::FgModule;

/// An indecomposable injective `Z`-module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Indecomposable {
    /// `Q = E(Z)`.
    Rational,
    /// The Prüfer group `Z(p^∞) = E(Z/p)`.
    Pruefer(u64),
}

impl Indecomposable {
    /// The prime whose injective hull this is.
    pub fn prime(self) -> PrimeZ {
        match self {
            Indecomposable::Rational => PrimeZ::Zero,
            Indecomposable::Pruefer(p) => PrimeZ::Max(p),
        }
    }
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indecomposable::Rational => f.write_str("Q"),
            Indecomposable::Pruefer(p) => write!(f, "Z({p}^inf)"),
        }
    }
}

/// `Q^rational ⊕ ⊕_p Z(p^∞)^{m(p)}` where `m` equals `default` outside a
/// finite exception map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct InjModule {
    rational: u64,
    default: u64,
    except: BTreeMap<u64, u64>,
}

impl InjModule {
    pub fn new(rational: u64, default: u64, except: BTreeMap<u64, u64>) -> Result<Self, InjError> {
        if let Some(&p) = except.keys().find(|&&p| !arith::is_prime(p)) {
            return Err(InjError::NotPrime(p));
        }
        let mut m = InjModule {
            rational,
            default,
            except,
        };
        m.normalize();
        Ok(m)
    }

    pub fn zero() -> Self {
        InjModule::default()
    }

    pub fn rational(copies: u64) -> Self {
        InjModule {
            rational: copies,
            ..Default::default()
        }
    }

    /// `copies` of `Z(p^∞)` for a single prime.
    pub fn pruefer(p: u64, copies: u64) -> Self {
        let mut m = InjModule::zero();
        if copies > 0 {
            m.except.insert(p, copies);
        }
        m
    }

    /// `copies` of `Z(p^∞)` for every prime in `primes`.
    pub fn pruefer_on(primes: &PrimeSet, copies: u64) -> Self {
        let mut m = InjModule::zero();
        match primes {
            PrimeSet::Finite(l) => {
                m.except = l.iter().map(|p| (p, copies)).collect();
            }
            PrimeSet::Cofinite(e) => {
                m.default = copies;
                m.except = e.iter().map(|p| (p, 0)).collect();
            }
        }
        m.normalize();
        m
    }

    fn normalize(&mut self) {
        let d = self.default;
        self.except.retain(|_, v| *v != d);
    }

    pub fn rational_mult(&self) -> u64 {
        self.rational
    }

    pub fn pruefer_default(&self) -> u64 {
        self.default
    }

    pub fn pruefer_exceptions(&self) -> &BTreeMap<u64, u64> {
        &self.except
    }

    /// Multiplicity of `Z(p^∞)`; `p` is assumed prime.
    pub fn pruefer_mult(&self, p: u64) -> u64 {
        self.except.get(&p).copied().unwrap_or(self.default)
    }

    pub fn multiplicity(&self, e: Indecomposable) -> u64 {
        match e {
            Indecomposable::Rational => self.rational,
            Indecomposable::Pruefer(p) => self.pruefer_mult(p),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational == 0 && self.default == 0 && self.except.is_empty()
    }

    /// `Some(E)` iff this is a single indecomposable summand.
    pub fn as_indecomposable(&self) -> Option<Indecomposable> {
        if self.default != 0 {
            return None;
        }
        match (self.rational, self.except.len()) {
            (1, 0) => Some(Indecomposable::Rational),
            (0, 1) => {
                let (&p, &m) = self.except.iter().next().expect("one entry");
                (m == 1).then_some(Indecomposable::Pruefer(p))
            }
            _ => None,
        }
    }

    pub fn direct_sum(&self, other: &InjModule) -> InjModule {
        let mut except = BTreeMap::new();
        for &p in self.except.keys().chain(other.except.keys()) {
            except.insert(p, self.pruefer_mult(p) + other.pruefer_mult(p));
        }
        let mut m = InjModule {
            rational: self.rational + other.rational,
            default: self.default + other.default,
            except,
        };
        m.normalize();
        m
    }

    /// Keeps `Q` iff `keep_rational` and `Z(p^∞)` iff `p ∈ primes`.
    pub(crate) fn filter(&self, keep_rational: bool, primes: &PrimeSet) -> InjModule {
        let mut m = InjModule {
            rational: if keep_rational { self.rational } else { 0 },
            ..Default::default()
        };
        match primes {
            PrimeSet::Finite(l) => {
                m.except = l.iter().map(|p| (p, self.pruefer_mult(p))).collect();
            }
            PrimeSet::Cofinite(e) => {
                m.default = self.default;
                m.except = self.except.clone();
                for p in e.iter() {
                    m.except.insert(p, 0);
                }
            }
        }
        m.normalize();
        m
    }

    /// `p^k`-torsion `{x : p^k x = 0}`; only the `Z(p^∞)` summands contribute,
    /// each with a copy of `Z/p^k`.
    pub fn pn_torsion(&self, p: u64, k: u32) -> FgModule {
        let copies = self.pruefer_mult(p) as usize;
        if k == 0 || copies == 0 {
            return FgModule::zero();
        }
        FgModule::new(0, vec![(p, k); copies]).expect("p is prime, k >= 1")
    }
}

impl fmt::Display for InjModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if self.rational > 0 {
            parts.push(format!("Q^{}", self.rational));
        }
        if self.default > 0 {
            parts.push(format!("Z(p^inf)^{} for all other p", self.default));
        }
        for (&p, &m) in &self.except {
            parts.push(format!("Z({p}^inf)^{m}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

/// `E(R/p)`.
pub fn e_of_prime(p: PrimeZ) -> InjModule {
    match p {
        PrimeZ::Zero => InjModule::rational(1),
        PrimeZ::Max(q) => InjModule::pruefer(q, 1),
    }
}

/// `Γ_W(E)`: `Q` survives only for the whole spectrum, `Z(p^∞)` iff `p ∈ W`.
pub fn gamma_on_injective(w: &SpecClosedSet, e: &InjModule) -> Result<InjModule, InjError> {
    if matches!(w, SpecClosedSet::Poset(_)) {
        return Err(InjError::NotZBackend);
    }
    Ok(e.filter(w.is_whole(), &w.maximal_part()))
}

/// `E / Γ_W(E)`.
pub fn complement_on_injective(w: &SpecClosedSet, e: &InjModule) -> Result<InjModule, InjError> {
    if matches!(w, SpecClosedSet::Poset(_)) {
        return Err(InjError::NotZBackend);
    }
    Ok(e.filter(!w.is_whole(), &w.maximal_part().complement()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrueferWire {
    pub default: JsonU64,
    #[serde(default)]
    pub except: BTreeMap<String, JsonU64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InjModuleWire {
    pub q: JsonU64,
    pub pruefer: PrueferWire,
}

impl TryFrom<InjModuleWire> for InjModule {
    type Error = InjError;
    fn try_from(w: InjModuleWire) -> Result<Self, InjError> {
        let mut except = BTreeMap::new();
        for (k, v) in w.pruefer.except {
            let p: u64 = k
                .parse()
                .map_err(|_| InjError::Malformed(format!("prime key {k:?}")))?;
            except.insert(p, v.0);
        }
        InjModule::new(w.q.0, w.pruefer.default.0, except)
    }
}

impl Serialize for InjModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        struct Except<'a>(&'a BTreeMap<u64, u64>);
        impl Serialize for Except<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (p, m) in self.0 {
                    map.serialize_entry(&p.to_string(), &JsonU64(*m))?;
                }
                map.end()
            }
        }
        struct Pruefer<'a>(&'a InjModule);
        impl Serialize for Pruefer<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(2))?;
                map.serialize_entry("default", &JsonU64(self.0.default))?;
                map.serialize_entry("except", &Except(&self.0.except))?;
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("q", &JsonU64(self.rational))?;
        map.serialize_entry("pruefer", &Pruefer(self))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for InjModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        InjModuleWire::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}
