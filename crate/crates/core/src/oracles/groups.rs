use std::collections::HashSet;

use super::{gcd, trial_factor, OracleError};
use crate::spec_model::{PrimeZ, SpecClosedSet};
use crate::zmodules::FgModule;

/// Largest group whose elements are listed explicitly.
pub const MAX_GROUP_ORDER: u64 = 1_000_000;

/// Coordinates of an element of `Z/n_1 ⊕ ... ⊕ Z/n_k`.
pub type Element = Vec<u64>;

/// `Z/n_1 ⊕ ... ⊕ Z/n_k` with every element listable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTorsionGroup {
    orders: Vec<u64>,
    size: u64,
}

impl FiniteTorsionGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self, OracleError> {
        if orders.contains(&0) {
            return Err(OracleError::BadArgument(
                "cyclic order 0 is not finite".into(),
            ));
        }
        let size = orders.iter().try_fold(1u64, |acc, &n| {
            acc.checked_mul(n).filter(|&s| s <= MAX_GROUP_ORDER)
        });
        match size {
            Some(size) => Ok(FiniteTorsionGroup { orders, size }),
            None => Err(OracleError::TooLarge {
                what: "group order",
                size: orders
                    .iter()
                    .fold(1u128, |a, &n| a.saturating_mul(n as u128)),
                limit: MAX_GROUP_ORDER as u128,
            }),
        }
    }

    /// The torsion summands of `m`, in canonical order; `m` must be finite.
    pub fn from_module(m: &FgModule) -> Result<Self, OracleError> {
        if m.free_rank() > 0 {
            return Err(OracleError::BadArgument("module has a free summand".into()));
        }
        let mut orders = Vec::new();
        for &(p, e) in m.torsion() {
            let n = p.checked_pow(e).ok_or(OracleError::TooLarge {
                what: "summand order",
                size: u128::MAX,
                limit: MAX_GROUP_ORDER as u128,
            })?;
            orders.push(n);
        }
        FiniteTorsionGroup::new(orders)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// All elements in mixed-radix order, last coordinate fastest.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = Vec::with_capacity(self.size as usize);
        let mut x = vec![0u64; self.orders.len()];
        for _ in 0..self.size {
            out.push(x.clone());
            for i in (0..x.len()).rev() {
                x[i] += 1;
                if x[i] < self.orders[i] {
                    break;
                }
                x[i] = 0;
            }
        }
        out
    }

    pub fn scale(&self, x: &[u64], c: u64) -> Element {
        x.iter()
            .zip(&self.orders)
            .map(|(&xi, &n)| ((xi as u128 * (c % n) as u128) % n as u128) as u64)
            .collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &n)| ((a as u128 + b as u128) % n as u128) as u64)
            .collect()
    }

    /// Additive order, which generates `Ann(x)`.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.orders).fold(1u64, |acc, (&xi, &n)| {
            let o = n / gcd(xi as u128, n as u128) as u64;
            acc / gcd(acc as u128, o as u128) as u64 * o
        })
    }

    fn prime_divisors(&self) -> Vec<u64> {
        trial_factor(self.size)
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }
}

/// `{x : Supp(Zx) ⊆ W}` with `Supp(Zx) = V(Ann(x))` read off the order of `x`.
pub fn gamma_by_elements(
    w: &SpecClosedSet,
    g: &FiniteTorsionGroup,
) -> Result<Vec<Element>, OracleError> {
    if matches!(w, SpecClosedSet::Poset(_)) {
        return Err(OracleError::WrongBackend("a Z-backend set"));
    }
    Ok(g.elements()
        .into_iter()
        .filter(|x| {
            trial_factor(g.element_order(x))
                .into_iter()
                .all(|(p, _)| w.contains_prime(PrimeZ::Max(p)))
        })
        .collect())
}

/// `{x : a x = 0}`.
pub fn ann_by_elements(a: u64, g: &FiniteTorsionGroup) -> Vec<Element> {
    g.elements()
        .into_iter()
        .filter(|x| g.scale(x, a).iter().all(|&c| c == 0))
        .collect()
}

fn log_exact(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        assert_eq!(n % p, 0, "count is not a power of {p}");
        n /= p;
        k += 1;
    }
    k
}

/// Isomorphism type from `p^k`-torsion counts: `count(k) = p^{s_k}` and the
/// number of cyclic factors of exponent `>= k` is `s_k - s_{k-1}`.
fn structure_from_counts(g: &FiniteTorsionGroup, count: impl Fn(u64) -> u64) -> FgModule {
    let mut torsion = Vec::new();
    for p in g.prime_divisors() {
        let mut levels = vec![0u32];
        let mut pk = 1u64;
        loop {
            pk = match pk.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
            let s = log_exact(count(pk), p);
            if s == *levels.last().expect("non-empty") {
                break;
            }
            levels.push(s);
        }
        let top = levels.len() - 1;
        for k in 1..=top {
            let at_least_k = levels[k] - levels[k - 1];
            let at_least_next = if k < top {
                levels[k + 1] - levels[k]
            } else {
                0
            };
            for _ in 0..(at_least_k - at_least_next) {
                torsion.push((p, k as u32));
            }
        }
    }
    FgModule::new(0, torsion).expect("primes from trial division")
}

/// Isomorphism type of a subgroup given by its element list.
pub fn subgroup_structure(g: &FiniteTorsionGroup, h: &[Element]) -> FgModule {
    structure_from_counts(g, |pk| {
        h.iter()
            .filter(|x| g.scale(x, pk).iter().all(|&c| c == 0))
            .count() as u64
    })
}

/// Isomorphism type of `G/H`, counting cosets killed by `p^k`.
pub fn quotient_structure(g: &FiniteTorsionGroup, h: &[Element]) -> FgModule {
    let hs: HashSet<&Element> = h.iter().collect();
    let all = g.elements();
    structure_from_counts(g, |pk| {
        let n = all.iter().filter(|x| hs.contains(&g.scale(x, pk))).count() as u64;
        n / h.len() as u64
    })
}
