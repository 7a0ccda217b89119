//! `V(I)` and `W(I, J)` on `Spec Z`.

use super::{IdealZ, PrimeList, SpecClosedSet};

/// `V(I)`: the primes containing `I`.
pub fn v_of_ideal(ideal: IdealZ) -> SpecClosedSet {
    match ideal.prime_divisors() {
        None => SpecClosedSet::ZWhole,
        Some(primes) => SpecClosedSet::ZFiniteMax(primes),
    }
}

/// `W(I, J) = { p : I^n ⊆ p + J for some n > 0 }` for `I = (a)`, `J = (b)`.
///
/// A maximal `(q)` is a member iff `q ∤ b` (then `(q) + J` is the unit
/// ideal) or `q | a`. The generic point is a member iff `a^n ∈ (b)` for some
/// `n`, i.e. every prime divisor of `b` divides `a` (`b = 0` forces `a = 0`).
pub fn w_pair(i: IdealZ, j: IdealZ) -> SpecClosedSet {
    let (a, b) = (i.generator(), j.generator());
    if b == 0 {
        // p + (0) = p: the condition reduces to a ∈ p.
        return v_of_ideal(i);
    }
    if a == 0 {
        return SpecClosedSet::ZWhole;
    }
    let b_primes = j.prime_divisors().expect("b != 0");
    let excluded: Vec<u64> = b_primes.iter().filter(|&q| a % q != 0).collect();
    if excluded.is_empty() {
        SpecClosedSet::ZWhole
    } else {
        SpecClosedSet::ZCofiniteMax(PrimeList::from_sorted_unchecked(excluded))
    }
}
