use std::fmt;
use std::sync::Arc;

use super::{PosetSpec, PrimeList, PrimeSet, PrimeZ, SpecError};
use crate::arith;

/// Default truncation bound for enumerating an infinite `Min(W)`.
pub const DEFAULT_MIN_BOUND: u64 = 10_000;

/// An up-closed member mask over a shared [`PosetSpec`].
#[derive(Clone)]
pub struct UpSet {
    poset: Arc<PosetSpec>,
    mask: u64,
}

impl UpSet {
    pub fn new(poset: Arc<PosetSpec>, mask: u64) -> Result<Self, SpecError> {
        if mask & !poset.full_mask() != 0 {
            return Err(SpecError::UnknownPoint(format!(
                "bit {}",
                63 - mask.leading_zeros()
            )));
        }
        if !poset.is_up_closed(mask) {
            return Err(SpecError::NotUpClosed);
        }
        Ok(UpSet { poset, mask })
    }

    pub fn from_members<S: AsRef<str>>(
        poset: Arc<PosetSpec>,
        members: &[S],
    ) -> Result<Self, SpecError> {
        let mut mask = 0u64;
        for m in members {
            let i = poset
                .index_of(m.as_ref())
                .ok_or_else(|| SpecError::UnknownPoint(m.as_ref().to_string()))?;
            mask |= 1 << i;
        }
        Self::new(poset, mask)
    }

    pub fn poset(&self) -> &Arc<PosetSpec> {
        &self.poset
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn members(&self) -> Vec<&str> {
        (0..self.poset.len())
            .filter(|&i| self.mask >> i & 1 == 1)
            .map(|i| self.poset.points()[i].as_str())
            .collect()
    }

    fn same_poset(&self, other: &UpSet) -> bool {
        Arc::ptr_eq(&self.poset, &other.poset) || *self.poset == *other.poset
    }

    fn with_mask(&self, mask: u64) -> UpSet {
        debug_assert!(self.poset.is_up_closed(mask));
        UpSet {
            poset: Arc::clone(&self.poset),
            mask,
        }
    }
}

impl PartialEq for UpSet {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask && self.same_poset(other)
    }
}

impl Eq for UpSet {}

impl fmt::Debug for UpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UpSet{:?}", self.members())
    }
}

/// A point of either backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Z(PrimeZ),
    Poset(usize),
}

/// A specialization-closed subset of a prime spectrum.
///
/// On `Spec Z` only three shapes are representable: the whole spectrum, a
/// finite set of maximal ideals, and a cofinite set of maximal ideals (given
/// by the excluded primes). This family is closed under every operation here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecClosedSet {
    Poset(UpSet),
    ZWhole,
    ZFiniteMax(PrimeList),
    ZCofiniteMax(PrimeList),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Z,
    Poset,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Z => "z",
            Backend::Poset => "poset",
        }
    }
}

/// The minimal points of a specialization-closed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinSet {
    Finite(Vec<Point>),
    Infinite(PrimeEnumerator),
}

impl MinSet {
    pub fn is_finite(&self) -> bool {
        matches!(self, MinSet::Finite(_))
    }
}

/// Ascending stream of the primes outside a finite excluded set, truncated
/// at `bound` for enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeEnumerator {
    excluded: PrimeList,
    bound: u64,
}

impl PrimeEnumerator {
    pub fn new(excluded: PrimeList, bound: u64) -> Self {
        PrimeEnumerator { excluded, bound }
    }

    pub fn excluded(&self) -> &PrimeList {
        &self.excluded
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound;
        self
    }

    /// Every element `<= bound`, ascending.
    pub fn truncated(&self) -> Vec<u64> {
        arith::primes_up_to(self.bound)
            .into_iter()
            .filter(|&p| !self.excluded.contains(p))
            .collect()
    }

    /// The unbounded ascending stream.
    pub fn stream(&self) -> impl Iterator<Item = u64> + '_ {
        let mut cur = 1u64;
        std::iter::from_fn(move || loop {
            cur = arith::next_prime(cur)?;
            if !self.excluded.contains(cur) {
                return Some(cur);
            }
        })
    }
}

impl SpecClosedSet {
    pub fn z_whole() -> Self {
        SpecClosedSet::ZWhole
    }

    pub fn z_empty() -> Self {
        SpecClosedSet::ZFiniteMax(PrimeList::empty())
    }

    pub fn z_finite<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self, SpecError> {
        Ok(SpecClosedSet::ZFiniteMax(PrimeList::new(primes)?))
    }

    pub fn z_cofinite<I: IntoIterator<Item = u64>>(excluded: I) -> Result<Self, SpecError> {
        Ok(SpecClosedSet::ZCofiniteMax(PrimeList::new(excluded)?))
    }

    pub fn poset_empty(poset: &Arc<PosetSpec>) -> Self {
        SpecClosedSet::Poset(UpSet {
            poset: Arc::clone(poset),
            mask: 0,
        })
    }

    pub fn poset_whole(poset: &Arc<PosetSpec>) -> Self {
        SpecClosedSet::Poset(UpSet {
            poset: Arc::clone(poset),
            mask: poset.full_mask(),
        })
    }

    pub fn poset_mask(poset: &Arc<PosetSpec>, mask: u64) -> Result<Self, SpecError> {
        Ok(SpecClosedSet::Poset(UpSet::new(Arc::clone(poset), mask)?))
    }

    pub fn backend(&self) -> Backend {
        match self {
            SpecClosedSet::Poset(_) => Backend::Poset,
            _ => Backend::Z,
        }
    }

    /// The bottom element of the same backend (and poset).
    pub fn empty_like(&self) -> Self {
        match self {
            SpecClosedSet::Poset(u) => SpecClosedSet::Poset(u.with_mask(0)),
            _ => Self::z_empty(),
        }
    }

    /// The top element of the same backend (and poset).
    pub fn whole_like(&self) -> Self {
        match self {
            SpecClosedSet::Poset(u) => SpecClosedSet::Poset(u.with_mask(u.poset.full_mask())),
            _ => SpecClosedSet::ZWhole,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SpecClosedSet::Poset(u) => u.mask == 0,
            SpecClosedSet::ZFiniteMax(l) => l.is_empty(),
            _ => false,
        }
    }

    pub fn is_whole(&self) -> bool {
        match self {
            SpecClosedSet::Poset(u) => u.mask == u.poset.full_mask(),
            SpecClosedSet::ZWhole => true,
            _ => false,
        }
    }

    fn check_same_backend(&self, other: &Self) -> Result<(), SpecError> {
        match (self, other) {
            (SpecClosedSet::Poset(a), SpecClosedSet::Poset(b)) => {
                if a.same_poset(b) {
                    Ok(())
                } else {
                    Err(SpecError::PosetMismatch)
                }
            }
            (a, b) if a.backend() == b.backend() => Ok(()),
            (a, b) => Err(SpecError::BackendMismatch(
                a.backend().name(),
                b.backend().name(),
            )),
        }
    }

    /// The maximal ideals in a `Z`-backend set (empty for poset sets).
    pub fn maximal_part(&self) -> PrimeSet {
        match self {
            SpecClosedSet::ZWhole => PrimeSet::all(),
            SpecClosedSet::ZFiniteMax(l) => PrimeSet::Finite(l.clone()),
            SpecClosedSet::ZCofiniteMax(e) => PrimeSet::Cofinite(e.clone()),
            SpecClosedSet::Poset(_) => PrimeSet::none(),
        }
    }

    /// Membership of a point.
    pub fn contains(&self, point: Point) -> Result<bool, SpecError> {
        match (self, point) {
            (SpecClosedSet::Poset(u), Point::Poset(i)) => {
                if i >= u.poset.len() {
                    return Err(SpecError::UnknownPoint(format!("#{i}")));
                }
                Ok(u.mask >> i & 1 == 1)
            }
            (SpecClosedSet::Poset(_), Point::Z(_)) => Err(SpecError::BackendMismatch("poset", "z")),
            (_, Point::Poset(_)) => Err(SpecError::BackendMismatch("z", "poset")),
            (SpecClosedSet::ZWhole, Point::Z(_)) => Ok(true),
            (_, Point::Z(PrimeZ::Zero)) => Ok(false),
            (SpecClosedSet::ZFiniteMax(l), Point::Z(PrimeZ::Max(p))) => Ok(l.contains(p)),
            (SpecClosedSet::ZCofiniteMax(e), Point::Z(PrimeZ::Max(p))) => {
                Ok(arith::is_prime(p) && !e.contains(p))
            }
        }
    }

    /// Convenience for the integer backend.
    pub fn contains_prime(&self, p: PrimeZ) -> bool {
        self.contains(Point::Z(p)).unwrap_or(false)
    }

    pub fn union(&self, other: &Self) -> Result<Self, SpecError> {
        use SpecClosedSet::*;
        self.check_same_backend(other)?;
        Ok(match (self, other) {
            (Poset(a), Poset(b)) => Poset(a.with_mask(a.mask | b.mask)),
            (ZWhole, _) | (_, ZWhole) => ZWhole,
            (ZFiniteMax(a), ZFiniteMax(b)) => ZFiniteMax(a.union(b)),
            (ZFiniteMax(a), ZCofiniteMax(e)) | (ZCofiniteMax(e), ZFiniteMax(a)) => {
                ZCofiniteMax(e.difference(a))
            }
            (ZCofiniteMax(e), ZCofiniteMax(f)) => ZCofiniteMax(e.intersection(f)),
            _ => unreachable!("backend checked"),
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, SpecError> {
        use SpecClosedSet::*;
        self.check_same_backend(other)?;
        Ok(match (self, other) {
            (Poset(a), Poset(b)) => Poset(a.with_mask(a.mask & b.mask)),
            (ZWhole, w) | (w, ZWhole) => w.clone(),
            (ZFiniteMax(a), ZFiniteMax(b)) => ZFiniteMax(a.intersection(b)),
            (ZFiniteMax(a), ZCofiniteMax(e)) | (ZCofiniteMax(e), ZFiniteMax(a)) => {
                ZFiniteMax(a.difference(e))
            }
            (ZCofiniteMax(e), ZCofiniteMax(f)) => ZCofiniteMax(e.union(f)),
            _ => unreachable!("backend checked"),
        })
    }

    /// Union of a non-empty family.
    pub fn union_all(family: &[SpecClosedSet]) -> Result<Self, SpecError> {
        let (first, rest) = family.split_first().ok_or(SpecError::EmptyFamily)?;
        rest.iter().try_fold(first.clone(), |acc, w| acc.union(w))
    }

    /// Intersection of a non-empty family.
    pub fn intersect_all(family: &[SpecClosedSet]) -> Result<Self, SpecError> {
        let (first, rest) = family.split_first().ok_or(SpecError::EmptyFamily)?;
        rest.iter()
            .try_fold(first.clone(), |acc, w| acc.intersect(w))
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool, SpecError> {
        use SpecClosedSet::*;
        self.check_same_backend(other)?;
        Ok(match (self, other) {
            (Poset(a), Poset(b)) => a.mask & !b.mask == 0,
            (_, ZWhole) => true,
            (ZWhole, _) => false,
            (ZFiniteMax(a), ZFiniteMax(b)) => a.is_subset(b),
            (ZFiniteMax(a), ZCofiniteMax(e)) => a.intersection(e).is_empty(),
            (ZCofiniteMax(_), ZFiniteMax(_)) => false,
            (ZCofiniteMax(e), ZCofiniteMax(f)) => f.is_subset(e),
            _ => unreachable!("backend checked"),
        })
    }

    /// Minimal points, with the default enumeration bound for infinite results.
    pub fn min_elements(&self) -> MinSet {
        self.min_elements_bounded(DEFAULT_MIN_BOUND)
    }

    pub fn min_elements_bounded(&self, bound: u64) -> MinSet {
        match self {
            SpecClosedSet::Poset(u) => {
                let pts = (0..u.poset.len())
                    .filter(|&i| u.mask >> i & 1 == 1 && u.poset.down_mask(i) & u.mask == 1 << i)
                    .map(Point::Poset)
                    .collect();
                MinSet::Finite(pts)
            }
            SpecClosedSet::ZWhole => MinSet::Finite(vec![Point::Z(PrimeZ::Zero)]),
            SpecClosedSet::ZFiniteMax(l) => {
                MinSet::Finite(l.iter().map(|p| Point::Z(PrimeZ::Max(p))).collect())
            }
            SpecClosedSet::ZCofiniteMax(e) => {
                MinSet::Infinite(PrimeEnumerator::new(e.clone(), bound))
            }
        }
    }

    /// Zariski-closedness, i.e. finiteness of `Min(W)`.
    pub fn is_closed(&self) -> bool {
        !matches!(self, SpecClosedSet::ZCofiniteMax(_))
    }

    /// The largest specialization-closed `W` with `W ∩ W2 = W1`.
    ///
    /// A point lies in the result iff its up-set meets `W2` only inside `W1`.
    pub fn quotient(w1: &Self, w2: &Self) -> Result<Self, SpecError> {
        use SpecClosedSet::*;
        if !w1.is_subset(w2)? {
            return Err(SpecError::NotContained);
        }
        Ok(match (w1, w2) {
            (Poset(a), Poset(b)) => {
                let p = &a.poset;
                let mask = (0..p.len())
                    .filter(|&i| p.up_mask(i) & b.mask & !a.mask == 0)
                    .fold(0u64, |m, i| m | 1 << i);
                Poset(a.with_mask(mask))
            }
            // Height one over the generic point: a maximal point survives iff
            // it is outside W2 or inside W1; the generic point iff W1 = W2.
            _ if w1 == w2 => ZWhole,
            _ => {
                let outside_w2 = match w2 {
                    ZWhole => Self::z_empty(),
                    ZFiniteMax(b) => ZCofiniteMax(b.clone()),
                    ZCofiniteMax(f) => ZFiniteMax(f.clone()),
                    Poset(_) => unreachable!("backend checked"),
                };
                w1.union(&outside_w2)?
            }
        })
    }

    /// A strictly ascending chain of `n` closed subsets of a non-closed `W`,
    /// adding one minimal prime at a time in ascending order.
    pub fn acc_witness_chain(&self, n: usize) -> Result<Vec<SpecClosedSet>, SpecError> {
        if n == 0 {
            return Err(SpecError::ZeroLength);
        }
        let enumerator = match self.min_elements() {
            MinSet::Finite(_) => return Err(SpecError::ClosedHasNoWitness),
            MinSet::Infinite(e) => e,
        };
        let mut chain = Vec::with_capacity(n);
        let mut primes = Vec::with_capacity(n);
        for p in enumerator.stream().take(n) {
            primes.push(p);
            chain.push(SpecClosedSet::ZFiniteMax(PrimeList::from_sorted_unchecked(
                primes.clone(),
            )));
        }
        Ok(chain)
    }
}

impl fmt::Display for SpecClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecClosedSet::Poset(u) => write!(f, "{{{}}}", u.members().join(",")),
            SpecClosedSet::ZWhole => f.write_str("Spec Z"),
            SpecClosedSet::ZFiniteMax(l) => write!(f, "finite{l}"),
            SpecClosedSet::ZCofiniteMax(e) => write!(f, "cofinite excl {e}"),
        }
    }
}
