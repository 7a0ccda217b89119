//! Brute-force ground truth. Nothing here calls the formula code it is
//! used to check: up-sets are enumerated, group elements are listed, Ext
//! groups are built stage by stage from gcds, and ideal membership is
//! decided by divisibility.

mod ext_colimit;
mod groups;
mod ideals;
mod posets;
mod smith;

use thiserror::Error;

pub use ext_colimit::{
    local_cohomology_ext_colimit, ColimitValue, ExtColimitReport, TowerKind, TowerReport,
};
pub use groups::{
    ann_by_elements, gamma_by_elements, quotient_structure, subgroup_structure, Element,
    FiniteTorsionGroup, MAX_GROUP_ORDER,
};
pub use ideals::{w_pair_by_definition, PrimeWitness, WPairReport};
pub use posets::{enumerate_upsets, quotient_by_search, UpsetOracle, MAX_SEARCH_POINTS};
pub use smith::{determinantal_divisors, module_by_minors};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} is {size}, the oracle is limited to {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("precondition violated: W1 is not contained in W2")]
    NotContained,
    #[error("oracle needs {0}")]
    WrongBackend(&'static str),
    #[error("search found {0} maximal candidates, expected exactly one")]
    NoUniqueMaximum(usize),
    #[error("degree-{degree} tower did not stabilize within {truncation} stages")]
    NotStabilized { degree: u8, truncation: u32 },
    #[error("invalid argument: {0}")]
    BadArgument(String),
}

/// Trial-division factorization, kept separate from the library's
/// Pollard-Rho path.
pub(crate) fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
