use serde::Serialize;

use super::{gcd, OracleError};
use crate::json::JsonU64;

/// Smallest `n <= power_bound` with `a^n` in the ideal, or `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeWitness {
    pub prime: JsonU64,
    pub witness: Option<u32>,
}

/// Membership of each prime in `W((a),(b)) = {p : a^n ∈ p + (b) for some n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WPairReport {
    pub a: JsonU64,
    pub b: JsonU64,
    pub prime_bound: JsonU64,
    pub power_bound: u32,
    /// Witness for the generic point `(0)`.
    pub generic: Option<u32>,
    pub primes: Vec<PrimeWitness>,
}

impl WPairReport {
    pub fn witness(&self, q: u64) -> Option<Option<u32>> {
        self.primes
            .iter()
            .find(|w| w.prime.0 == q)
            .map(|w| w.witness)
    }
}

/// First `n` in `1..=power_bound` with `d | a^n`; `d = 0` needs `a^n = 0`.
fn power_witness(a: u64, d: u64, power_bound: u32) -> Option<u32> {
    if d == 0 {
        return (a == 0).then_some(1);
    }
    let d = d as u128;
    let mut r = 1u128 % d;
    for n in 1..=power_bound {
        r = r * a as u128 % d;
        if r == 0 {
            return Some(n);
        }
    }
    None
}

fn is_prime_by_trial(q: u64) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Decides `a^n ∈ (q) + (b) = (gcd(q, b))` for each prime `q <= prime_bound`
/// and `a^n ∈ (b)` for `(0)`, searching `n <= power_bound`.
pub fn w_pair_by_definition(
    a: u64,
    b: u64,
    prime_bound: u64,
    power_bound: u32,
) -> Result<WPairReport, OracleError> {
    if prime_bound == 0 || power_bound == 0 {
        return Err(OracleError::BadArgument("bounds must be positive".into()));
    }
    if prime_bound > 1_000_000 {
        return Err(OracleError::TooLarge {
            what: "prime bound",
            size: prime_bound as u128,
            limit: 1_000_000,
        });
    }
    let primes = (2..=prime_bound)
        .filter(|&q| is_prime_by_trial(q))
        .map(|q| PrimeWitness {
            prime: JsonU64(q),
            witness: power_witness(a, gcd(q as u128, b as u128) as u64, power_bound),
        })
        .collect();
    Ok(WPairReport {
        a: JsonU64(a),
        b: JsonU64(b),
        prime_bound: JsonU64(prime_bound),
        power_bound,
        generic: power_witness(a, b, power_bound),
        primes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_and_three() {
        let r = w_pair_by_definition(2, 3, 20, 5).unwrap();
        for w in &r.primes {
            let expect = if w.prime.0 == 3 { None } else { Some(1) };
            assert_eq!(w.witness, expect, "q = {}", w.prime.0);
        }
        assert_eq!(r.generic, None);
        assert_eq!(r.primes.len(), 8);
    }

    #[test]
    fn unit_ideal_and_powers() {
        let r = w_pair_by_definition(7, 1, 30, 3).unwrap();
        assert!(r.primes.iter().all(|w| w.witness == Some(1)));
        assert_eq!(r.generic, Some(1));
        let r = w_pair_by_definition(6, 4, 20, 5).unwrap();
        assert_eq!(r.generic, Some(2));
        assert_eq!(r.witness(2), Some(Some(1)));
        assert_eq!(r.witness(4), None);
        assert_eq!(w_pair_by_definition(0, 0, 5, 5).unwrap().generic, Some(1));
        assert_eq!(w_pair_by_definition(3, 0, 5, 5).unwrap().generic, None);
    }
}
