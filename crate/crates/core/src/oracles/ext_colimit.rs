use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{trial_factor, OracleError};
use crate::zmodules::{Cyclic, FgModule};

/// How a tower of cyclic stages behaves at the end of the window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TowerKind {
    /// Constant size with isomorphic transitions.
    Stable,
    /// Constant size with nilpotent transitions: the colimit is zero.
    Vanishing,
    /// Strictly growing with injective transitions: a divisible colimit.
    Pruefer,
}

/// The stages `Ext^i(Z/a^n, C)`, `n = 1..N`, for one cyclic summand `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub summand: String,
    /// Orders of the cyclic stages, as decimal strings.
    pub stages: Vec<String>,
    pub transition: &'static str,
    pub kind: TowerKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ColimitValue {
    Finite {
        module: FgModule,
    },
    /// `⊕ Z(p^∞)^{m}` over the listed `(p, m)`, plus a finite part.
    Divisible {
        pruefer: Vec<(u64, u64)>,
        finite: FgModule,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtColimitReport {
    pub a: u64,
    pub degree: u8,
    pub truncation: u32,
    pub towers: Vec<TowerReport>,
    pub value: ColimitValue,
}

impl ExtColimitReport {
    /// The `p^k`-torsion `{x : p^k x = 0}` of the colimit.
    pub fn pn_torsion(&self, p: u64, k: u32) -> FgModule {
        let (copies, finite) = match &self.value {
            ColimitValue::Finite { module } => (0, module),
            ColimitValue::Divisible { pruefer, finite } => (
                pruefer
                    .iter()
                    .find(|&&(q, _)| q == p)
                    .map_or(0, |&(_, m)| m),
                finite,
            ),
        };
        let mut torsion: Vec<(u64, u32)> = finite
            .torsion()
            .iter()
            .filter(|&&(q, _)| q == p)
            .map(|&(q, e)| (q, e.min(k)))
            .collect();
        if k > 0 {
            torsion.extend(std::iter::repeat_n((p, k), copies as usize));
        }
        torsion.retain(|&(_, e)| e > 0);
        FgModule::new(0, torsion).expect("p is prime")
    }
}

fn module_of_order(n: &BigUint) -> Result<FgModule, OracleError> {
    let n = n
        .to_u64()
        .ok_or_else(|| OracleError::BadArgument("stage order exceeds u64".into()))?;
    Ok(FgModule::new(0, trial_factor(n)).expect("trial division yields primes"))
}

/// `colim_n Ext^i(Z/a^n, M)` computed from the presentation
/// `0 -> Z -a^n-> Z -> Z/a^n -> 0`: `Hom(Z/a^n, M) = M[a^n]` with inclusions
/// as transitions, and `Ext^1(Z/a^n, M) = M/a^n M` with multiplication by `a`
/// as transitions. Fails rather than guesses when `truncation` stages are
/// not enough to see the limit.
pub fn local_cohomology_ext_colimit(
    a: u64,
    m: &FgModule,
    degree: u8,
    truncation: u32,
) -> Result<ExtColimitReport, OracleError> {
    if a < 2 {
        return Err(OracleError::BadArgument("a must be at least 2".into()));
    }
    if degree > 1 {
        return Err(OracleError::BadArgument("degree must be 0 or 1".into()));
    }
    if truncation < 3 {
        return Err(OracleError::BadArgument("need at least 3 stages".into()));
    }
    let big_a = BigUint::from(a);
    let not_stable = OracleError::NotStabilized { degree, truncation };
    let mut towers = Vec::new();
    let mut finite = FgModule::zero();
    let mut pruefer: Vec<(u64, u64)> = Vec::new();

    for c in m.summands() {
        let (label, c_order) = match c {
            Cyclic::Free => ("Z".to_string(), BigUint::zero()),
            Cyclic::PrimePower { prime, exp } => {
                (format!("Z/{prime}^{exp}"), BigUint::from(prime).pow(exp))
            }
        };
        let mut stages = Vec::with_capacity(truncation as usize);
        let mut power = BigUint::one();
        for _ in 0..truncation {
            power *= &big_a;
            let s = match (degree, c_order.is_zero()) {
                (0, true) => BigUint::one(),
                _ => power.gcd(&c_order),
            };
            stages.push(s);
        }
        let last = &stages[stages.len() - 1];
        let prev = &stages[stages.len() - 2];
        let kind = if degree == 0 {
            // Inclusions: equal consecutive sizes mean the union has stopped growing.
            if last != prev {
                return Err(not_stable);
            }
            finite = finite.direct_sum(&module_of_order(last)?);
            TowerKind::Stable
        } else if last == prev && last.gcd(&big_a).is_one() {
            finite = finite.direct_sum(&module_of_order(last)?);
            TowerKind::Stable
        } else if last == prev {
            let first_stable = stages.iter().position(|s| s == last).expect("present");
            let room = stages.len() - 1 - first_stable;
            // a^k kills Z/s for some k <= room.
            let mut pk = BigUint::one();
            let mut dies = false;
            for _ in 0..room {
                pk = (pk * &big_a) % last;
                if pk.is_zero() {
                    dies = true;
                    break;
                }
            }
            if !dies {
                return Err(not_stable);
            }
            TowerKind::Vanishing
        } else {
            let n = stages.len();
            for i in n - 3..n - 1 {
                let (s, t) = (&stages[i], &stages[i + 1]);
                // |ker(·a : Z/s -> Z/t)| = s·gcd(a, t) / t
                let kernel = s * big_a.gcd(t) / t;
                if s >= t || !kernel.is_one() {
                    return Err(not_stable);
                }
            }
            let growth = (last / prev).to_u64().ok_or_else(|| not_stable.clone())?;
            for (p, _) in trial_factor(growth) {
                match pruefer.iter_mut().find(|(q, _)| *q == p) {
                    Some(entry) => entry.1 += 1,
                    None => pruefer.push((p, 1)),
                }
            }
            TowerKind::Pruefer
        };
        towers.push(TowerReport {
            summand: label,
            stages: stages.iter().map(|s| s.to_string()).collect(),
            transition: if degree == 0 {
                "inclusion"
            } else {
                "multiplication by a"
            },
            kind,
        });
    }
    pruefer.sort_unstable();
    let value = if degree == 0 {
        ColimitValue::Finite { module: finite }
    } else {
        ColimitValue::Divisible { pruefer, finite }
    };
    Ok(ExtColimitReport {
        a,
        degree,
        truncation,
        towers,
        value,
    })
}
