use std::collections::BTreeSet;
use std::sync::Arc;

use lcoh::injectives::r_gamma;
use lcoh::oracles::{
    gamma_by_elements, module_by_minors, Element, FiniteTorsionGroup, UpsetOracle,
};
use lcoh::spec_model::{
    v_of_ideal, w_pair, IdealZ, MinSet, Point, PosetSpec, PrimeSet, SpecClosedSet,
};
use lcoh::verify::gen;
use lcoh::zmodules::{
    gamma_w, module_from_presentation, smith_normal_form, torsion_pair, w_of_preradical, FgModule,
    PreradicalDescriptor, PresentationMatrix, Submodule,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const POOL: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
const SMALL: [u64; 4] = [2, 3, 5, 7];

fn z_set() -> impl Strategy<Value = SpecClosedSet> {
    let primes = || proptest::sample::subsequence(POOL.to_vec(), 0..=4);
    prop_oneof![
        Just(SpecClosedSet::z_whole()),
        primes().prop_map(|ps| SpecClosedSet::z_finite(ps).unwrap()),
        primes().prop_map(|ps| SpecClosedSet::z_cofinite(ps).unwrap()),
    ]
}

fn module(max_rank: usize) -> impl Strategy<Value = FgModule> {
    let summand = (proptest::sample::select(SMALL.to_vec()), 1u32..=3);
    (0..=max_rank, proptest::collection::vec(summand, 0..=3))
        .prop_map(|(r, t)| FgModule::new(r, t).unwrap())
}

/// A finite group small enough for the element-level oracles.
fn finite_module() -> impl Strategy<Value = FgModule> {
    module(0).prop_filter("order <= 10^4", |m| m.torsion_order() <= 10_000u32.into())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// A poset with at most `n` points and all of its up-sets.
fn poset_with_upsets(n: usize) -> impl Strategy<Value = (Arc<PosetSpec>, Vec<SpecClosedSet>)> {
    (any::<u64>(), 0.05f64..0.6).prop_map(move |(seed, density)| {
        let p = gen::poset(&mut ChaCha8Rng::seed_from_u64(seed), n, density);
        let sets = UpsetOracle::new(&p)
            .unwrap()
            .masks()
            .iter()
            .map(|&m| SpecClosedSet::poset_mask(&p, m).unwrap())
            .collect();
        (p, sets)
    })
}

fn matrix(max_dim: usize) -> impl Strategy<Value = PresentationMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-12i64..=12, c), r).prop_map(
            move |rows| {
                let entries = rows
                    .into_iter()
                    .map(|row| row.into_iter().map(BigInt::from).collect())
                    .collect();
                PresentationMatrix::new(r, c, entries).unwrap()
            },
        )
    })
}

/// A product of elementary integer matrices, so determinant ±1.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> PresentationMatrix {
    let mut m: Vec<Vec<BigInt>> = PresentationMatrix::identity(n).entries().to_vec();
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            m.swap(i, (i + 1) % n);
            continue;
        }
        let row = m[j].clone();
        for (a, b) in m[i].iter_mut().zip(row) {
            *a += b * k;
        }
    }
    PresentationMatrix::new(n, n, m).unwrap()
}

fn elements_of(sub: &Submodule, g: &FiniteTorsionGroup) -> BTreeSet<Element> {
    g.elements()
        .into_iter()
        .filter(|x| sub.contains_element(x))
        .collect()
}

fn is_sorted_unique(v: &[u64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

fn canonical(w: &SpecClosedSet) -> bool {
    match w {
        SpecClosedSet::ZFiniteMax(ps) | SpecClosedSet::ZCofiniteMax(ps) => {
            is_sorted_unique(ps.as_slice())
        }
        SpecClosedSet::ZWhole => true,
        SpecClosedSet::Poset(u) => u.poset().is_up_closed(u.mask()),
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn poset_lattice_laws((_p, sets) in poset_with_upsets(8), picks in proptest::collection::vec(any::<proptest::sample::Index>(), 3)) {
        let [a, b, c] = [0, 1, 2].map(|i| &sets[picks[i].index(sets.len())]);
        let bottom = a.empty_like();
        let top = a.whole_like();
        prop_assert_eq!(a.union(b).unwrap(), b.union(a).unwrap());
        prop_assert_eq!(a.intersect(b).unwrap(), b.intersect(a).unwrap());
        prop_assert_eq!(a.union(&b.union(c).unwrap()).unwrap(), a.union(b).unwrap().union(c).unwrap());
        prop_assert_eq!(a.intersect(&b.intersect(c).unwrap()).unwrap(), a.intersect(b).unwrap().intersect(c).unwrap());
        prop_assert_eq!(&a.union(a).unwrap(), a);
        prop_assert_eq!(&a.intersect(a).unwrap(), a);
        prop_assert_eq!(&a.union(&a.intersect(b).unwrap()).unwrap(), a);
        prop_assert_eq!(&a.intersect(&a.union(b).unwrap()).unwrap(), a);
        prop_assert_eq!(&a.union(&bottom).unwrap(), a);
        prop_assert_eq!(&a.intersect(&top).unwrap(), a);
        prop_assert!(sets.contains(&a.union(b).unwrap()) && sets.contains(&a.intersect(b).unwrap()));
    }

    #[test]
    fn poset_quotient_is_the_unique_maximum((p, sets) in poset_with_upsets(8), picks in proptest::collection::vec(any::<proptest::sample::Index>(), 2)) {
        let oracle = UpsetOracle::new(&p).unwrap();
        let a = &sets[picks[0].index(sets.len())];
        let b = &sets[picks[1].index(sets.len())];
        let (w1, w2) = (a.intersect(b).unwrap(), b.clone());
        let q = SpecClosedSet::quotient(&w1, &w2).unwrap();
        prop_assert_eq!(&q, &oracle.quotient(&w1, &w2).unwrap());
        prop_assert_eq!(q.intersect(&w2).unwrap(), w1);
        prop_assert!(canonical(&q));
        prop_assert!(SpecClosedSet::quotient(&w2, &w2).unwrap().is_whole());
    }

    #[test]
    fn poset_sets_are_closed_with_finite_min((_p, sets) in poset_with_upsets(8), pick in any::<proptest::sample::Index>()) {
        let w = &sets[pick.index(sets.len())];
        prop_assert!(w.is_closed());
        let MinSet::Finite(min) = w.min_elements() else { panic!("poset Min is finite") };
        let SpecClosedSet::Poset(u) = w else { unreachable!() };
        let rebuilt = min.iter().fold(w.empty_like(), |acc, &q| {
            let Point::Poset(q) = q else { panic!("poset point expected") };
            acc.union(&SpecClosedSet::poset_mask(u.poset(), u.poset().up_mask(q)).unwrap()).unwrap()
        });
        prop_assert_eq!(&rebuilt, w);
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn z_lattice_laws(a in z_set(), b in z_set(), c in z_set()) {
        prop_assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
        prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        prop_assert_eq!(a.union(&b.union(&c).unwrap()).unwrap(), a.union(&b).unwrap().union(&c).unwrap());
        prop_assert_eq!(a.intersect(&b.intersect(&c).unwrap()).unwrap(), a.intersect(&b).unwrap().intersect(&c).unwrap());
        prop_assert_eq!(&a.union(&a.intersect(&b).unwrap()).unwrap(), &a);
        prop_assert_eq!(&a.intersect(&a.union(&b).unwrap()).unwrap(), &a);
        for w in [a.union(&b).unwrap(), a.intersect(&b).unwrap()] {
            prop_assert!(canonical(&w));
        }
    }

    #[test]
    fn z_quotient_laws(a in z_set(), b in z_set()) {
        let (w1, w2) = (a.intersect(&b).unwrap(), b);
        let q = SpecClosedSet::quotient(&w1, &w2).unwrap();
        prop_assert_eq!(q.intersect(&w2).unwrap(), w1.clone());
        prop_assert!(w1.is_subset(&q).unwrap());
        prop_assert!(canonical(&q));
        prop_assert!(SpecClosedSet::quotient(&w2, &w2).unwrap().is_whole());
        // Maximality: adding any prime outside q breaks q ∩ W2 = W1.
        for &p in &POOL {
            let bigger = q.union(&SpecClosedSet::z_finite([p]).unwrap()).unwrap();
            if bigger != q {
                prop_assert_ne!(bigger.intersect(&w2).unwrap(), w1.clone());
            }
        }
    }

    #[test]
    fn z_closedness_and_chains(w in z_set()) {
        prop_assert_eq!(w.is_closed(), w.min_elements().is_finite());
        if !w.is_closed() {
            let chain = w.acc_witness_chain(6).unwrap();
            prop_assert_eq!(chain.len(), 6);
            for pair in chain.windows(2) {
                prop_assert!(pair[0].is_subset(&pair[1]).unwrap() && pair[0] != pair[1]);
            }
            for c in &chain {
                prop_assert!(c.is_closed() && c.is_subset(&w).unwrap());
            }
        }
    }

    #[test]
    fn w_pair_coherence(a in 0u64..5000, b in 0u64..5000) {
        let (i, j) = (IdealZ::new(a), IdealZ::new(b));
        let w = w_pair(i, j);
        prop_assert_eq!(&w, &SpecClosedSet::quotient(&v_of_ideal(i.sum(j)), &v_of_ideal(j)).unwrap());
        prop_assert!(canonical(&w));
        prop_assert!(v_of_ideal(i).is_subset(&w).unwrap());
    }

    #[test]
    fn smith_form_is_a_divisibility_chain(a in matrix(4)) {
        let snf = smith_normal_form(&a);
        let d = snf.left.mul(&a).mul(&snf.right);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let want = if i == j { snf.diagonal[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(d.entry(i, j), &want);
            }
        }
        prop_assert!(snf.left.is_unimodular() && snf.right.is_unimodular());
        let nonzero: Vec<&BigInt> = snf.diagonal.iter().take_while(|x| !x.is_zero()).collect();
        prop_assert!(snf.diagonal[nonzero.len()..].iter().all(|x| x.is_zero()));
        for pair in nonzero.windows(2) {
            prop_assert!(pair[0] > &BigInt::zero() && (pair[1] % pair[0]).is_zero());
        }
    }

    #[test]
    fn presentation_module_is_invariant(a in matrix(4), left in proptest::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..6), right in proptest::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..6)) {
        let m = module_from_presentation(&a).unwrap();
        prop_assert_eq!(&m, &module_by_minors(&a).unwrap());
        if a.rows() > 0 && a.cols() > 0 {
            let u = unimodular(a.rows(), &left);
            let v = unimodular(a.cols(), &right);
            prop_assert!(u.determinant().magnitude().is_one() && v.determinant().magnitude().is_one());
            prop_assert_eq!(module_from_presentation(&u.mul(&a).mul(&v)).unwrap(), m);
        }
    }

    #[test]
    fn section_functor_laws(w1 in z_set(), w2 in z_set(), m in module(2)) {
        let g = gamma_w(&w1, &m).unwrap();
        prop_assert_eq!(gamma_w(&w1, &g.module()).unwrap().module(), g.module());
        let meet = gamma_w(&w1.intersect(&w2).unwrap(), &m).unwrap();
        let g2 = gamma_w(&w2, &m).unwrap();
        prop_assert_eq!(g.compose(&gamma_w(&w2, &g.module()).unwrap()).unwrap(), meet.clone());
        prop_assert_eq!(g2.compose(&gamma_w(&w1, &g2.module()).unwrap()).unwrap(), meet);
        let pair = torsion_pair(&w1, &m).unwrap();
        prop_assert_eq!(gamma_w(&w1, &pair.torsion_module()).unwrap().module(), pair.torsion_module());
        prop_assert!(gamma_w(&w1, &pair.torsion_free).unwrap().module().is_zero());
    }

    #[test]
    fn subfunctor_law(w in z_set(), m in finite_module(), levels in proptest::collection::vec(0u32..=3, 4)) {
        let kept: Vec<u32> = m.torsion().iter().zip(&levels).map(|(&(_, e), &k)| k.min(e)).collect();
        let n = Submodule::new(m.clone(), kept).unwrap();
        let group = FiniteTorsionGroup::from_module(&m).unwrap();
        let gamma_n = n.compose(&gamma_w(&w, &n.module()).unwrap()).unwrap();
        let gamma_m: BTreeSet<Element> = gamma_by_elements(&w, &group).unwrap().into_iter().collect();
        let meet: BTreeSet<Element> = elements_of(&n, &group).intersection(&gamma_m).cloned().collect();
        prop_assert_eq!(elements_of(&gamma_n, &group), meet);
    }

    #[test]
    fn closure_is_monotone(w in z_set(), v in z_set(), a in 2u64..500, m in module(2)) {
        let small = PreradicalDescriptor::Intersection(vec![
            PreradicalDescriptor::Section(w.clone()),
            PreradicalDescriptor::AnnBy(IdealZ::new(a)),
        ]);
        let big = PreradicalDescriptor::Sum(vec![
            PreradicalDescriptor::Section(w),
            PreradicalDescriptor::Section(v),
        ]);
        let mid = PreradicalDescriptor::Sum(vec![small.clone(), PreradicalDescriptor::Section(SpecClosedSet::z_empty())]);
        for (lo, hi) in [(&small, &mid), (&mid, &big), (&small, &big)] {
            prop_assert!(lo.apply(&m).unwrap().is_subset(&hi.apply(&m).unwrap()));
            prop_assert!(w_of_preradical(lo).unwrap().is_subset(&w_of_preradical(hi).unwrap()).unwrap());
        }
    }

    #[test]
    fn rgamma_is_additive_and_supported(w in z_set(), m in module(2), n in module(2)) {
        let (a, b) = (r_gamma(&w, &m).unwrap(), r_gamma(&w, &n).unwrap());
        let sum = r_gamma(&w, &m.direct_sum(&n)).unwrap();
        prop_assert_eq!(&sum, &a.direct_sum(&b));
        prop_assert_eq!(sum.h0.clone(), gamma_w(&w, &m.direct_sum(&n)).unwrap().module());
        prop_assert_eq!(sum.h1.rational_mult(), 0);
        for &p in &POOL {
            if sum.h1.pruefer_mult(p) > 0 {
                prop_assert!(w.maximal_part().contains(p) || w.is_whole());
            }
        }
        if let PrimeSet::Cofinite(_) = w.maximal_part() {
            prop_assert_eq!(sum.h1.pruefer_default(), a.h1.pruefer_default() + b.h1.pruefer_default());
        } else {
            prop_assert_eq!(sum.h1.pruefer_default(), 0);
        }
    }
}

/// `γ(M) = mM` over the local ring `Z/4` with its single prime `m = (2)`.
/// It is a preradical but not left exact, and it is not the section
/// functor of its own support set.
#[test]
fn maximal_ideal_multiple_is_not_left_exact() {
    let point = Arc::new(PosetSpec::new(&["m"], &[]).unwrap());
    let times_two = |xs: &[u64]| -> BTreeSet<u64> { xs.iter().map(|x| (2 * x) % 4).collect() };
    let ring: Vec<u64> = (0..4).collect();
    let residue_field: Vec<u64> = vec![0, 2];

    // γ(R/m) = 0, so the set of primes it keeps is empty.
    assert_eq!(times_two(&residue_field), BTreeSet::from([0]));
    let w_gamma = SpecClosedSet::poset_empty(&point);
    assert!(w_gamma.is_empty());
    // The section functor of the empty set is zero, yet γ(R) = {0, 2}.
    assert_eq!(times_two(&ring), BTreeSet::from([0, 2]));

    // N = 2R ⊂ R: γ(N) = 0 but N ∩ γ(R) = N.
    let n: BTreeSet<u64> = residue_field.iter().copied().collect();
    let gamma_n = times_two(&residue_field);
    let meet: BTreeSet<u64> = n.intersection(&times_two(&ring)).copied().collect();
    assert_ne!(gamma_n, meet);
}
