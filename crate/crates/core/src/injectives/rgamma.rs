use serde::Serialize;

use super::complex::{minimal_injective_resolution, InjComplex};
use super::inj_module::{e_of_prime, gamma_on_injective, Indecomposable, InjModule};
use super::InjError;
use crate::arith;
use crate::spec_model::SpecClosedSet;
use crate::zmodules::{gamma_w, FgModule};

/// Prime bound used when a check ranges over all indecomposable injectives.
pub const DEFAULT_PRIME_BOUND: u64 = 97;

/// `H^0` and `H^1` of `RΓ_W(M)`; higher degrees vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCohomology {
    pub h0: FgModule,
    pub h1: InjModule,
}

impl LocalCohomology {
    pub fn direct_sum(&self, other: &LocalCohomology) -> LocalCohomology {
        LocalCohomology {
            h0: self.h0.direct_sum(&other.h0),
            h1: self.h1.direct_sum(&other.h1),
        }
    }
}

fn require_z(w: &SpecClosedSet) -> Result<(), InjError> {
    match w {
        SpecClosedSet::Poset(_) => Err(InjError::NotZBackend),
        _ => Ok(()),
    }
}

/// `RΓ_W(M)` as the cohomology of `Γ_W` applied to the minimal injective
/// resolution, cross-checked against `Γ_W(M)` in degree 0.
pub fn r_gamma(w: &SpecClosedSet, m: &FgModule) -> Result<LocalCohomology, InjError> {
    require_z(w)?;
    let resolution = minimal_injective_resolution(m);
    let (h0, h1) = resolution.gamma(w)?.cohomology()?;
    let direct = gamma_w(w, m)?.module();
    if h0 != direct {
        return Err(InjError::CrossCheck(format!(
            "H^0 = {h0} but Gamma_W(M) = {direct}"
        )));
    }
    if h1.rational_mult() != 0 {
        return Err(InjError::CrossCheck("H^1 has a rational summand".into()));
    }
    Ok(LocalCohomology { h0, h1 })
}

/// `Γ_W(I) -> I -> I / Γ_W(I)` for the minimal injective resolution `I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub sub: InjComplex,
    pub whole: InjComplex,
    pub quot: InjComplex,
}

pub fn triangle_decompose(w: &SpecClosedSet, m: &FgModule) -> Result<Triangle, InjError> {
    require_z(w)?;
    let whole = minimal_injective_resolution(m);
    let sub = whole.gamma(w)?;
    let quot = whole.quotient_by_gamma(w)?;
    for d in 0..2 {
        if sub.term(d).direct_sum(&quot.term(d)) != whole.term(d) {
            return Err(InjError::CrossCheck(format!("degree {d} does not split")));
        }
        if !gamma_on_injective(w, &quot.term(d))?.is_zero() {
            return Err(InjError::CrossCheck(format!(
                "quotient term in degree {d} meets W"
            )));
        }
        if gamma_on_injective(w, &sub.term(d))? != sub.term(d) {
            return Err(InjError::CrossCheck(format!(
                "sub term in degree {d} is not supported in W"
            )));
        }
    }
    Ok(Triangle { sub, whole, quot })
}

/// Whether `Hom(E, E')` vanishes, with a named reason or witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "hom", rename_all = "snake_case")]
pub enum HomEntry {
    Zero { reason: &'static str },
    Nonzero { witness: &'static str },
}

impl HomEntry {
    pub fn is_zero(self) -> bool {
        matches!(self, HomEntry::Zero { .. })
    }
}

pub fn hom_entry(source: Indecomposable, target: Indecomposable) -> HomEntry {
    use Indecomposable::*;
    match (source, target) {
        (Rational, Rational) => HomEntry::Nonzero {
            witness: "identity of Q",
        },
        (Rational, Pruefer(_)) => HomEntry::Nonzero {
            witness: "Q -> Q/Z -> Z(p^inf) projection",
        },
        (Pruefer(_), Rational) => HomEntry::Zero {
            reason: "torsion source, torsion-free target",
        },
        (Pruefer(p), Pruefer(q)) if p == q => HomEntry::Nonzero {
            witness: "identity of Z(p^inf)",
        },
        (Pruefer(_), Pruefer(_)) => HomEntry::Zero {
            reason: "image is p-primary and q-primary at once",
        },
    }
}

/// `Q` followed by `Z(p^∞)` for every prime `p <= bound`.
pub fn indecomposables_up_to(bound: u64) -> Vec<Indecomposable> {
    std::iter::once(Indecomposable::Rational)
        .chain(
            arith::primes_up_to(bound)
                .into_iter()
                .map(Indecomposable::Pruefer),
        )
        .collect()
}

/// `Hom(E(R/p), E(R/q)) = 0` for all `p ∈ W`, `q ∉ W` in range.
pub fn hom_vanishing_check(w: &SpecClosedSet, prime_bound: u64) -> Result<bool, InjError> {
    require_z(w)?;
    let all = indecomposables_up_to(prime_bound);
    let (inside, outside): (Vec<_>, Vec<_>) =
        all.into_iter().partition(|e| w.contains_prime(e.prime()));
    Ok(inside
        .iter()
        .all(|&s| outside.iter().all(|&t| hom_entry(s, t).is_zero())))
}

/// `Γ_W(E)` is `E` or `0` for every indecomposable `E` in range.
pub fn divides_injectives_check(w: &SpecClosedSet, prime_bound: u64) -> Result<bool, InjError> {
    require_z(w)?;
    for e in indecomposables_up_to(prime_bound) {
        let module = e_of_prime(e.prime());
        let g = gamma_on_injective(w, &module)?;
        if !(g.is_zero() || g == module) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec_model::PrimeSet;

    fn fin(v: &[u64]) -> SpecClosedSet {
        SpecClosedSet::z_finite(v.iter().copied()).unwrap()
    }

    #[test]
    fn local_cohomology_of_z_at_a_prime() {
        let lc = r_gamma(&fin(&[5]), &FgModule::free(1)).unwrap();
        assert_eq!(
            lc,
            LocalCohomology {
                h0: FgModule::zero(),
                h1: InjModule::pruefer(5, 1)
            }
        );
        assert_eq!(
            serde_json::to_string(&lc).unwrap(),
            r#"{"h0":{"rank":0,"torsion":[]},"h1":{"q":0,"pruefer":{"default":0,"except":{"5":1}}}}"#
        );
    }

    #[test]
    fn whole_spectrum_is_identity() {
        let m = FgModule::new(2, vec![(3, 2)]).unwrap();
        let lc = r_gamma(&SpecClosedSet::z_whole(), &m).unwrap();
        assert_eq!(
            lc,
            LocalCohomology {
                h0: m,
                h1: InjModule::zero()
            }
        );
    }

    #[test]
    fn cofinite_support() {
        let w = SpecClosedSet::z_cofinite([3]).unwrap();
        let lc = r_gamma(&w, &FgModule::free(1)).unwrap();
        assert_eq!(lc.h0, FgModule::zero());
        let expect = InjModule::pruefer_on(
            &PrimeSet::Cofinite(crate::spec_model::PrimeList::new([3]).unwrap()),
            1,
        );
        assert_eq!(lc.h1, expect);
        assert_eq!(lc.h1.pruefer_mult(3), 0);
        assert_eq!(lc.h1.pruefer_mult(101), 1);
    }

    #[test]
    fn torsion_has_no_h1() {
        let lc = r_gamma(&fin(&[2]), &FgModule::cyclic(12)).unwrap();
        assert_eq!(
            lc,
            LocalCohomology {
                h0: FgModule::cyclic(4),
                h1: InjModule::zero()
            }
        );
    }

    #[test]
    fn triangle_pieces() {
        let t = triangle_decompose(&fin(&[2]), &FgModule::free(1)).unwrap();
        assert_eq!(t.quot.degree0(), &InjModule::rational(1));
        assert_eq!(t.quot.degree1().pruefer_mult(2), 0);
        assert_eq!(t.quot.degree1().pruefer_mult(3), 1);
        assert!(t.quot.gamma(&fin(&[2])).unwrap().is_zero());

        let m = FgModule::new(1, vec![(5, 1)]).unwrap();
        let t = triangle_decompose(&SpecClosedSet::z_whole(), &m).unwrap();
        assert!(t.quot.is_zero());
        assert_eq!(t.sub, t.whole);
        let t = triangle_decompose(&SpecClosedSet::z_empty(), &m).unwrap();
        assert!(t.sub.is_zero());
        assert_eq!(t.quot, t.whole);
    }

    #[test]
    fn hom_table() {
        use Indecomposable::*;
        assert!(hom_entry(Pruefer(2), Pruefer(3)).is_zero());
        assert!(!hom_entry(Rational, Pruefer(2)).is_zero());
        assert!(hom_entry(Pruefer(2), Rational).is_zero());
        assert!(!hom_entry(Rational, Rational).is_zero());
        assert!(!hom_entry(Pruefer(7), Pruefer(7)).is_zero());
    }

    #[test]
    fn conditions_hold_for_representable_sets() {
        let sets = [
            SpecClosedSet::z_whole(),
            SpecClosedSet::z_empty(),
            fin(&[2, 97]),
            SpecClosedSet::z_cofinite([2, 3]).unwrap(),
        ];
        for w in &sets {
            assert!(hom_vanishing_check(w, DEFAULT_PRIME_BOUND).unwrap(), "{w}");
            assert!(
                divides_injectives_check(w, DEFAULT_PRIME_BOUND).unwrap(),
                "{w}"
            );
        }
    }
}
