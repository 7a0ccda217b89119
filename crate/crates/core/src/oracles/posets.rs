use std::sync::Arc;

use super::OracleError;
use crate::spec_model::{PosetSpec, SpecClosedSet};

pub const MAX_SEARCH_POINTS: usize = 16;

fn guard(p: &PosetSpec) -> Result<(), OracleError> {
    if p.len() > MAX_SEARCH_POINTS {
        return Err(OracleError::TooLarge {
            what: "poset size",
            size: p.len() as u128,
            limit: MAX_SEARCH_POINTS as u128,
        });
    }
    Ok(())
}

/// Every subset checked pair by pair against the order relation.
fn upset_masks(p: &PosetSpec) -> Vec<u64> {
    let n = p.len();
    (0u64..1 << n)
        .filter(|&mask| {
            (0..n).all(|q| mask >> q & 1 == 0 || (0..n).all(|r| !p.leq(q, r) || mask >> r & 1 == 1))
        })
        .collect()
}

/// All up-closed subsets, ordered by size and then by bitmask.
pub fn enumerate_upsets(p: &Arc<PosetSpec>) -> Result<Vec<SpecClosedSet>, OracleError> {
    guard(p)?;
    let mut masks = upset_masks(p);
    masks.sort_by_key(|m| (m.count_ones(), *m));
    Ok(masks
        .into_iter()
        .map(|m| SpecClosedSet::poset_mask(p, m).expect("enumerated masks are up-closed"))
        .collect())
}

fn mask_of(w: &SpecClosedSet, p: &PosetSpec) -> Result<u64, OracleError> {
    match w {
        SpecClosedSet::Poset(u) if **u.poset() == *p => Ok(u.mask()),
        _ => Err(OracleError::WrongBackend("sets on the given poset")),
    }
}

/// Up-sets of one poset, enumerated once and searched many times.
pub struct UpsetOracle {
    poset: Arc<PosetSpec>,
    masks: Vec<u64>,
}

impl UpsetOracle {
    pub fn new(p: &Arc<PosetSpec>) -> Result<Self, OracleError> {
        guard(p)?;
        Ok(UpsetOracle {
            poset: p.clone(),
            masks: upset_masks(p),
        })
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    /// The inclusion-maximum of `{W up-closed : W ∩ W2 = W1}`, found by
    /// exhaustion; fails unless that maximum is unique.
    pub fn quotient(
        &self,
        w1: &SpecClosedSet,
        w2: &SpecClosedSet,
    ) -> Result<SpecClosedSet, OracleError> {
        let (m1, m2) = (mask_of(w1, &self.poset)?, mask_of(w2, &self.poset)?);
        if m1 & !m2 != 0 {
            return Err(OracleError::NotContained);
        }
        let candidates: Vec<u64> = self
            .masks
            .iter()
            .copied()
            .filter(|w| w & m2 == m1)
            .collect();
        let maximal: Vec<u64> = candidates
            .iter()
            .copied()
            .filter(|&c| !candidates.iter().any(|&d| d != c && d & c == c))
            .collect();
        match maximal.as_slice() {
            [only] => Ok(SpecClosedSet::poset_mask(&self.poset, *only).expect("up-closed")),
            other => Err(OracleError::NoUniqueMaximum(other.len())),
        }
    }
}

/// One-shot form of [`UpsetOracle::quotient`].
pub fn quotient_by_search(
    p: &Arc<PosetSpec>,
    w1: &SpecClosedSet,
    w2: &SpecClosedSet,
) -> Result<SpecClosedSet, OracleError> {
    UpsetOracle::new(p)?.quotient(w1, w2)
}
