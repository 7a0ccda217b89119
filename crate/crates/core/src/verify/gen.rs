//! Seeded generators for posets, closed sets, ideals and modules.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith;
use crate::spec_model::{PosetSpec, SpecClosedSet};
use crate::zmodules::FgModule;

/// A poset on `0..=max_points` points: each pair `i < j` is related with
/// probability `density`, then closed transitively.
pub fn poset<R: Rng>(rng: &mut R, max_points: usize, density: f64) -> Arc<PosetSpec> {
    let n = rng.gen_range(0..=max_points);
    let points: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut leq = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                leq.push((i, j));
            }
        }
    }
    Arc::new(PosetSpec::from_indices(points, &leq).expect("index order is acyclic"))
}

pub fn upset<R: Rng>(rng: &mut R, p: &Arc<PosetSpec>) -> SpecClosedSet {
    let seed_mask = rng.gen::<u64>() & p.full_mask();
    let keep = rng.gen::<u64>() & rng.gen::<u64>();
    SpecClosedSet::poset_mask(p, p.up_closure(seed_mask & keep)).expect("closure is up-closed")
}

fn some_primes<R: Rng>(rng: &mut R, pool: &[u64], max: usize) -> Vec<u64> {
    let k = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, k).copied().collect()
}

/// Any of the three `Spec Z` shapes, including the empty set.
pub fn z_set<R: Rng>(rng: &mut R, pool: &[u64]) -> SpecClosedSet {
    match rng.gen_range(0..8) {
        0 => SpecClosedSet::z_whole(),
        1 => SpecClosedSet::z_empty(),
        2..=4 => SpecClosedSet::z_finite(some_primes(rng, pool, 4)).expect("pool is prime"),
        _ => SpecClosedSet::z_cofinite(some_primes(rng, pool, 3)).expect("pool is prime"),
    }
}

/// A product of primes from `pool` with small exponents, at least 2.
pub fn smooth<R: Rng>(rng: &mut R, pool: &[u64], max_factors: usize, limit: u64) -> u64 {
    loop {
        let mut n = 1u64;
        for _ in 0..rng.gen_range(1..=max_factors) {
            let p = *pool.choose(rng).expect("non-empty pool");
            match n.checked_mul(p) {
                Some(v) if v <= limit => n = v,
                _ => break,
            }
        }
        if n >= 2 {
            return n;
        }
    }
}

/// Free rank `<= max_rank` plus torsion of order `<= max_torsion`.
pub fn module<R: Rng>(rng: &mut R, pool: &[u64], max_rank: usize, max_torsion: u64) -> FgModule {
    let rank = rng.gen_range(0..=max_rank);
    let mut order = 1u64;
    let mut torsion = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        let p = *pool.choose(rng).expect("non-empty pool");
        let e = rng.gen_range(1..=3);
        match arith::checked_pow(p, e).and_then(|q| q.checked_mul(order)) {
            Some(o) if o <= max_torsion => {
                order = o;
                torsion.push((p, e));
            }
            _ => {}
        }
    }
    FgModule::new(rank, torsion).expect("pool is prime")
}

pub fn prime_pool(bound: u64) -> Vec<u64> {
    arith::primes_up_to(bound.max(2))
}
