use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{trial_factor, OracleError};
use crate::zmodules::{FgModule, PresentationMatrix};

const MAX_MINOR_DIM: usize = 6;

fn det_by_expansion(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        n => (0..n)
            .filter(|&j| !m[0][j].is_zero())
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * det_by_expansion(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .rev()
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// `d_k = gcd of all k×k minors`, for `k = 1..=min(rows, cols)`.
pub fn determinantal_divisors(a: &PresentationMatrix) -> Result<Vec<BigInt>, OracleError> {
    let (r, c) = (a.rows(), a.cols());
    if r.max(c) > MAX_MINOR_DIM {
        return Err(OracleError::TooLarge {
            what: "matrix dimension",
            size: r.max(c) as u128,
            limit: MAX_MINOR_DIM as u128,
        });
    }
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a.entry(i, j).clone()).collect())
                    .collect();
                g = g.gcd(&det_by_expansion(&sub));
            }
        }
        out.push(g.abs());
    }
    Ok(out)
}

/// `coker(Z^cols -> Z^rows)` from the invariant factors `d_k / d_{k-1}`.
pub fn module_by_minors(a: &PresentationMatrix) -> Result<FgModule, OracleError> {
    let d = determinantal_divisors(a)?;
    let rank = d.iter().take_while(|g| !g.is_zero()).count();
    let mut torsion = Vec::new();
    let mut prev = BigInt::from(1);
    for g in &d[..rank] {
        let f = (g / &prev)
            .to_u64()
            .ok_or_else(|| OracleError::BadArgument("invariant factor exceeds u64".into()))?;
        torsion.extend(trial_factor(f));
        prev = g.clone();
    }
    Ok(FgModule::new(a.rows() - rank, torsion).expect("trial division yields primes"))
}
