use std::collections::HashMap;
use std::fmt;

use super::SpecError;

/// Largest poset the bitmask representation can hold.
pub const MAX_POSET_POINTS: usize = 64;

/// A finite poset standing in for a prime spectrum. `q <= p` reads
/// "q is contained in p", so `p` is a specialization of `q`.
#[derive(Clone, PartialEq, Eq)]
pub struct PosetSpec {
    points: Vec<String>,
    /// `up[i]` has bit `j` set iff `i <= j`.
    up: Vec<u64>,
    /// `down[i]` has bit `j` set iff `j <= i`.
    down: Vec<u64>,
}

impl fmt::Debug for PosetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PosetSpec")
            .field("points", &self.points)
            .field("leq", &self.strict_pairs())
            .finish()
    }
}

impl PosetSpec {
    /// Builds the poset generated by `leq` (pairs `(q, p)` with `q <= p`).
    ///
    /// Reflexive and transitive closure is taken; a relation whose closure is
    /// not antisymmetric is rejected, as are duplicate or unknown identifiers.
    pub fn new<S: AsRef<str>>(points: &[S], leq: &[(S, S)]) -> Result<Self, SpecError> {
        if points.len() > MAX_POSET_POINTS {
            return Err(SpecError::PosetTooLarge(points.len()));
        }
        let mut index = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.as_ref().to_string(), i).is_some() {
                return Err(SpecError::DuplicatePoint(p.as_ref().to_string()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| SpecError::UnknownPoint(s.as_ref().to_string()))
        };
        let mut pairs = Vec::with_capacity(leq.len());
        for (q, p) in leq {
            pairs.push((lookup(q)?, lookup(p)?));
        }
        Self::from_indices(
            points.iter().map(|s| s.as_ref().to_string()).collect(),
            &pairs,
        )
    }

    /// Same as [`PosetSpec::new`] with relation pairs given by index.
    pub fn from_indices(points: Vec<String>, leq: &[(usize, usize)]) -> Result<Self, SpecError> {
        let n = points.len();
        if n > MAX_POSET_POINTS {
            return Err(SpecError::PosetTooLarge(n));
        }
        let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for &(q, p) in leq {
            if q >= n || p >= n {
                return Err(SpecError::UnknownPoint(format!("#{}", q.max(p))));
            }
            up[q] |= 1u64 << p;
        }
        // Warshall closure on bit rows.
        for k in 0..n {
            for i in 0..n {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if up[i] >> j & 1 == 1 && up[j] >> i & 1 == 1 {
                    return Err(SpecError::NotAntisymmetric(
                        points[i].clone(),
                        points[j].clone(),
                    ));
                }
            }
        }
        let mut down = vec![0u64; n];
        for (i, &above) in up.iter().enumerate() {
            for (j, below) in down.iter_mut().enumerate() {
                if above >> j & 1 == 1 {
                    *below |= 1u64 << i;
                }
            }
        }
        Ok(PosetSpec { points, up, down })
    }

    /// Antichain on the given identifiers.
    pub fn antichain(n: usize) -> Result<Self, SpecError> {
        Self::from_indices((0..n).map(|i| format!("p{i}")).collect(), &[])
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p == id)
    }

    /// `q <= p`.
    pub fn leq(&self, q: usize, p: usize) -> bool {
        self.up[q] >> p & 1 == 1
    }

    /// Mask of the principal up-set `V(p)`.
    pub fn up_mask(&self, p: usize) -> u64 {
        self.up[p]
    }

    pub fn down_mask(&self, p: usize) -> u64 {
        self.down[p]
    }

    pub fn full_mask(&self) -> u64 {
        if self.points.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.points.len()) - 1
        }
    }

    pub fn is_up_closed(&self, mask: u64) -> bool {
        (0..self.len()).all(|i| mask >> i & 1 == 0 || self.up[i] & !mask == 0)
    }

    /// Smallest up-set containing `mask`.
    pub fn up_closure(&self, mask: u64) -> u64 {
        (0..self.len())
            .filter(|&i| mask >> i & 1 == 1)
            .fold(0, |acc, i| acc | self.up[i])
    }

    /// Strict relation pairs `(q, p)`, `q < p`, in index order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for q in 0..self.len() {
            for p in 0..self.len() {
                if q != p && self.leq(q, p) {
                    out.push((q, p));
                }
            }
        }
        out
    }
}
