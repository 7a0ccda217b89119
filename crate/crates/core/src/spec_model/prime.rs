use std::fmt;

use num_integer::Integer;

use super::SpecError;
use crate::arith;

/// A point of `Spec Z`: the generic point `(0)` or a maximal ideal `(p)`.
///
/// The derived order puts `Zero` below every `Max`, which matches inclusion;
/// distinct `Max` points are incomparable under inclusion (see
/// [`PrimeZ::is_contained_in`]), the derived `Ord` is only for sorting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimeZ {
    Zero,
    Max(u64),
}

impl PrimeZ {
    pub fn max(p: u64) -> Result<Self, SpecError> {
        if arith::is_prime(p) {
            Ok(PrimeZ::Max(p))
        } else {
            Err(SpecError::NotPrime(p))
        }
    }

    /// Inclusion of prime ideals.
    pub fn is_contained_in(self, other: PrimeZ) -> bool {
        match (self, other) {
            (PrimeZ::Zero, _) => true,
            (PrimeZ::Max(p), PrimeZ::Max(q)) => p == q,
            (PrimeZ::Max(_), PrimeZ::Zero) => false,
        }
    }
}

impl fmt::Display for PrimeZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeZ::Zero => f.write_str("(0)"),
            PrimeZ::Max(p) => write!(f, "({p})"),
        }
    }
}

/// A finite, ascending, duplicate-free list of primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeList(Vec<u64>);

impl PrimeList {
    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self, SpecError> {
        let mut v: Vec<u64> = primes.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&p| !arith::is_prime(p)) {
            return Err(SpecError::NotPrime(bad));
        }
        v.sort_unstable();
        v.dedup();
        Ok(PrimeList(v))
    }

    pub fn empty() -> Self {
        PrimeList(Vec::new())
    }

    /// Caller guarantees the input is sorted, deduplicated and prime.
    pub(crate) fn from_sorted_unchecked(v: Vec<u64>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        PrimeList(v)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &PrimeList) -> PrimeList {
        let mut v: Vec<u64> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        PrimeList(v)
    }

    pub fn intersection(&self, other: &PrimeList) -> PrimeList {
        PrimeList(
            self.0
                .iter()
                .copied()
                .filter(|&p| other.contains(p))
                .collect(),
        )
    }

    pub fn difference(&self, other: &PrimeList) -> PrimeList {
        PrimeList(
            self.0
                .iter()
                .copied()
                .filter(|&p| !other.contains(p))
                .collect(),
        )
    }

    pub fn is_subset(&self, other: &PrimeList) -> bool {
        self.0.iter().all(|&p| other.contains(p))
    }
}

impl fmt::Display for PrimeList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// The ideal `(n)` of `Z`, `n >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdealZ(u64);

impl IdealZ {
    pub fn new(generator: u64) -> Self {
        IdealZ(generator)
    }

    /// The non-negative generator of the ideal generated by `n`.
    pub fn from_signed(n: i64) -> Self {
        IdealZ(n.unsigned_abs())
    }

    pub fn zero() -> Self {
        IdealZ(0)
    }

    pub fn unit() -> Self {
        IdealZ(1)
    }

    pub fn generator(self) -> u64 {
        self.0
    }

    /// `(a) + (b) = (gcd(a, b))`.
    pub fn sum(self, other: IdealZ) -> IdealZ {
        IdealZ(self.0.gcd(&other.0))
    }

    /// `(a)(b) = (ab)`, `None` on overflow.
    pub fn product(self, other: IdealZ) -> Option<IdealZ> {
        self.0.checked_mul(other.0).map(IdealZ)
    }

    /// Prime divisors of the generator, `None` for the zero ideal.
    pub fn prime_divisors(self) -> Option<PrimeList> {
        match self.0 {
            0 => None,
            n => Some(PrimeList::from_sorted_unchecked(arith::prime_divisors(n))),
        }
    }
}

impl fmt::Display for IdealZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// A finite or cofinite set of primes; the cofinite case lists the excluded
/// primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimeSet {
    Finite(PrimeList),
    Cofinite(PrimeList),
}

impl PrimeSet {
    pub fn all() -> Self {
        PrimeSet::Cofinite(PrimeList::empty())
    }

    pub fn none() -> Self {
        PrimeSet::Finite(PrimeList::empty())
    }

    pub fn is_all(&self) -> bool {
        matches!(self, PrimeSet::Cofinite(e) if e.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Finite(l) if l.is_empty())
    }

    /// Membership; `p` is assumed prime.
    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::Finite(l) => l.contains(p),
            PrimeSet::Cofinite(e) => !e.contains(p),
        }
    }

    pub fn complement(&self) -> PrimeSet {
        match self {
            PrimeSet::Finite(l) => PrimeSet::Cofinite(l.clone()),
            PrimeSet::Cofinite(e) => PrimeSet::Finite(e.clone()),
        }
    }

    pub fn intersect(&self, other: &PrimeSet) -> PrimeSet {
        use PrimeSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.intersection(b)),
            (Finite(a), Cofinite(e)) | (Cofinite(e), Finite(a)) => Finite(a.difference(e)),
            (Cofinite(e), Cofinite(f)) => Cofinite(e.union(f)),
        }
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        use PrimeSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.union(b)),
            (Finite(a), Cofinite(e)) | (Cofinite(e), Finite(a)) => Cofinite(e.difference(a)),
            (Cofinite(e), Cofinite(f)) => Cofinite(e.intersection(f)),
        }
    }
}
