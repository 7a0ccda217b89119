//! Seeded invariant suites comparing the library against the oracles.
//!
//! Every run is a pure function of [`VerifyParams`]; the report serializes
//! byte-identically for identical parameters.

pub mod gen;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::injectives::{
    divides_injectives_check, hom_vanishing_check, r_gamma, triangle_decompose, LocalCohomology,
};
use crate::oracles::{
    ann_by_elements, gamma_by_elements, local_cohomology_ext_colimit, quotient_structure,
    subgroup_structure, w_pair_by_definition, ColimitValue, Element, FiniteTorsionGroup,
    UpsetOracle,
};
use crate::spec_model::{v_of_ideal, w_pair, IdealZ, MinSet, PrimeZ, SpecClosedSet};
use crate::zmodules::{
    ann_preradical_apply, closure, gamma_w, torsion_pair, FgModule, PreradicalDescriptor,
};

/// Failures kept per suite; the count is always exact.
const MAX_REPORTED: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Lattice,
    Torsion,
    Rgamma,
    Tstructure,
    Wij,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Lattice,
        Suite::Torsion,
        Suite::Rgamma,
        Suite::Tstructure,
        Suite::Wij,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lattice => "lattice",
            Suite::Torsion => "torsion",
            Suite::Rgamma => "rgamma",
            Suite::Tstructure => "tstructure",
            Suite::Wij => "wij",
            Suite::All => "all",
        }
    }

    fn salt(self) -> u64 {
        match self {
            Suite::Lattice => 0x6c61_7474,
            Suite::Torsion => 0x746f_7273,
            Suite::Rgamma => 0x7267_616d,
            Suite::Tstructure => 0x7473_7472,
            Suite::Wij => 0x7769_6a00,
            Suite::All => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                format!("unknown suite {s:?}, expected lattice|torsion|rgamma|tstructure|wij|all")
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyParams {
    pub seed: u64,
    pub poset_size: usize,
    pub cases: usize,
    pub prime_bound: u64,
    pub power_bound: u32,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            seed: 0,
            poset_size: 7,
            cases: 100,
            prime_bound: 97,
            power_bound: 64,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub checks: u64,
    pub failed: u64,
    pub pass: bool,
    pub counterexamples: Vec<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub params: VerifyParams,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

struct Tally {
    checks: u64,
    failed: u64,
    counterexamples: Vec<Value>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failed: 0,
            counterexamples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, law: &str, payload: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.counterexamples.len() < MAX_REPORTED {
                self.counterexamples
                    .push(json!({ "law": law, "case": payload() }));
            }
        }
    }

    /// Records an error from an operation that is expected to succeed.
    fn ok<T, E: fmt::Display>(
        &mut self,
        r: Result<T, E>,
        law: &str,
        payload: impl FnOnce() -> Value,
    ) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                let msg = e.to_string();
                self.check(false, law, || json!({ "error": msg, "input": payload() }));
                None
            }
        }
    }

    fn finish(self, suite: Suite, cases: usize) -> SuiteReport {
        SuiteReport {
            suite,
            cases,
            checks: self.checks,
            failed: self.failed,
            pass: self.failed == 0,
            counterexamples: self.counterexamples,
        }
    }
}

pub fn run(suite: Suite, params: &VerifyParams) -> VerifyReport {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let reports: Vec<SuiteReport> = suites.into_iter().map(|s| run_one(s, params)).collect();
    let pass = reports.iter().all(|r| r.pass);
    VerifyReport {
        params: params.clone(),
        suites: reports,
        pass,
    }
}

fn run_one(suite: Suite, params: &VerifyParams) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ suite.salt());
    let mut t = Tally::new();
    match suite {
        Suite::Lattice => lattice(&mut rng, params, &mut t),
        Suite::Torsion => torsion(&mut rng, params, &mut t),
        Suite::Rgamma => rgamma(&mut rng, params, &mut t),
        Suite::Tstructure => tstructure(&mut rng, params, &mut t),
        Suite::Wij => wij(&mut rng, params, &mut t),
        Suite::All => unreachable!("expanded by run"),
    }
    t.finish(suite, params.cases)
}

fn js<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Exhaustive quotient comparison on random posets, lattice laws on
/// up-sets, and the pointwise quotient rule on `Spec Z`.
fn lattice(rng: &mut ChaCha8Rng, params: &VerifyParams, t: &mut Tally) {
    let size = params.poset_size.min(crate::oracles::MAX_SEARCH_POINTS);
    for _ in 0..params.cases {
        let density = rng.gen_range(0.05..0.6);
        let p = gen::poset(rng, size, density);
        let poset_json = || js(&crate::spec_model::wire::PosetWire::from(&*p));
        let Some(oracle) = t.ok(UpsetOracle::new(&p), "enumerate", poset_json) else {
            continue;
        };
        let sets: Vec<SpecClosedSet> = oracle
            .masks()
            .iter()
            .map(|&m| SpecClosedSet::poset_mask(&p, m).expect("up-closed"))
            .collect();
        for w1 in &sets {
            for w2 in &sets {
                let (a, b) = (mask(w1), mask(w2));
                if a & !b != 0 {
                    continue;
                }
                let fast = SpecClosedSet::quotient(w1, w2);
                let slow = oracle.quotient(w1, w2);
                t.check(
                    matches!((&fast, &slow), (Ok(x), Ok(y)) if x == y),
                    "quotient = quotient_by_search",
                    || json!({ "poset": poset_json(), "w1": js(w1), "w2": js(w2),
                               "quotient": fast.as_ref().map(js).ok(), "search": slow.as_ref().map(js).ok() }),
                );
            }
        }
        if sets.is_empty() {
            continue;
        }
        for _ in 0..8 {
            let x = &sets[rng.gen_range(0..sets.len())];
            let y = &sets[rng.gen_range(0..sets.len())];
            let z = &sets[rng.gen_range(0..sets.len())];
            let u = x.union(y).expect("same poset");
            let i = x.intersect(y).expect("same poset");
            t.check(
                mask(&u) == mask(x) | mask(y) && mask(&i) == mask(x) & mask(y),
                "union and intersection are pointwise",
                || json!({ "poset": poset_json(), "x": js(x), "y": js(y) }),
            );
            let lhs = x
                .intersect(&y.union(z).expect("same poset"))
                .expect("same poset");
            let rhs = i
                .union(&x.intersect(z).expect("same poset"))
                .expect("same poset");
            t.check(
                lhs == rhs,
                "distributivity",
                || json!({ "poset": poset_json(), "x": js(x), "y": js(y), "z": js(z) }),
            );
        }
    }
    let pool = gen::prime_pool(params.prime_bound.min(50));
    let probe = gen::prime_pool(params.prime_bound.max(60));
    for _ in 0..params.cases {
        let w1 = gen::z_set(rng, &pool);
        let w2 = gen::z_set(rng, &pool);
        let whole = SpecClosedSet::z_whole();
        t.check(
            SpecClosedSet::quotient(&w1, &whole).as_ref() == Ok(&w1),
            "quotient(W, whole) = W",
            || js(&w1),
        );
        if !w1.is_subset(&w2).expect("z sets") {
            t.check(
                SpecClosedSet::quotient(&w1, &w2).is_err(),
                "quotient rejects W1 not in W2",
                || json!({ "w1": js(&w1), "w2": js(&w2) }),
            );
            continue;
        }
        let Some(q) = t.ok(
            SpecClosedSet::quotient(&w1, &w2),
            "quotient",
            || json!({ "w1": js(&w1), "w2": js(&w2) }),
        ) else {
            continue;
        };
        let pointwise = probe.iter().all(|&p| {
            let pz = PrimeZ::Max(p);
            q.contains_prime(pz) == (!w2.contains_prime(pz) || w1.contains_prime(pz))
        });
        // V((0)) ∩ W2 ⊆ W1 iff W2 ⊆ W1.
        let generic = q.contains_prime(PrimeZ::Zero) == w2.is_subset(&w1).expect("z sets");
        t.check(
            pointwise && generic && q.intersect(&w2).expect("z sets") == w1,
            "pointwise quotient on Spec Z",
            || json!({ "w1": js(&w1), "w2": js(&w2), "quotient": js(&q) }),
        );
    }
}

fn mask(w: &SpecClosedSet) -> u64 {
    match w {
        SpecClosedSet::Poset(u) => u.mask(),
        _ => unreachable!("poset sets only"),
    }
}

fn element_set(els: Vec<Element>) -> BTreeSet<Element> {
    els.into_iter().collect()
}

/// Section-functor laws on random `(W, M)`, with element-level comparison
/// on the torsion part.
fn torsion(rng: &mut ChaCha8Rng, params: &VerifyParams, t: &mut Tally) {
    let set_pool = gen::prime_pool(params.prime_bound.min(30));
    let mod_pool = gen::prime_pool(params.prime_bound.min(13));
    for _ in 0..params.cases {
        let w = gen::z_set(rng, &set_pool);
        let w2 = gen::z_set(rng, &set_pool);
        let m = gen::module(rng, &mod_pool, 2, 10_000);
        let case = || json!({ "w": js(&w), "w2": js(&w2), "module": js(&m) });
        let Some(g) = t.ok(gamma_w(&w, &m), "gamma_w", case) else {
            continue;
        };

        let gg = gamma_w(&w, &g.module()).expect("z set");
        t.check(
            gg.module() == g.module() && g.compose(&gg).as_ref() == Ok(&g),
            "idempotence",
            case,
        );

        let meet = gamma_w(&w.intersect(&w2).expect("z sets"), &m).expect("z set");
        for (outer, inner) in [(&w, &w2), (&w2, &w)] {
            let first = gamma_w(inner, &m).expect("z set");
            let second = gamma_w(outer, &first.module()).expect("z set");
            t.check(
                first.compose(&second).as_ref() == Ok(&meet),
                "commutation",
                case,
            );
        }

        let pair = torsion_pair(&w, &m).expect("z set");
        t.check(
            gamma_w(&w, &pair.torsion_free)
                .expect("z set")
                .module()
                .is_zero(),
            "radical property",
            case,
        );
        let tm = pair.torsion_module();
        t.check(
            gamma_w(&w, &tm).expect("z set").module() == tm,
            "torsion class is fixed",
            case,
        );
        t.check(
            pair.torsion
                .module()
                .direct_sum(&pair.torsion_free)
                .free_rank()
                == m.free_rank()
                && pair.torsion.module().torsion_order() * pair.torsion_free.torsion_order()
                    == m.torsion_order(),
            "torsion pair is exact",
            case,
        );

        let finite = FgModule::new(0, m.torsion().to_vec()).expect("canonical");
        let g_fin = gamma_w(&w, &finite).expect("z set");
        let Some(group) = t.ok(
            FiniteTorsionGroup::from_module(&finite),
            "finite group",
            case,
        ) else {
            continue;
        };
        let by_elements = gamma_by_elements(&w, &group).expect("z set");
        let by_formula: Vec<Element> = group
            .elements()
            .into_iter()
            .filter(|x| g_fin.contains_element(x))
            .collect();
        t.check(
            element_set(by_elements.clone()) == element_set(by_formula),
            "gamma_by_elements",
            case,
        );
        t.check(
            subgroup_structure(&group, &by_elements) == g_fin.module(),
            "gamma structure",
            case,
        );
        t.check(
            quotient_structure(&group, &by_elements) == g_fin.quotient(),
            "quotient structure",
            case,
        );

        // Subfunctor law: Γ_W(N) = N ∩ Γ_W(M) for N = Γ_{W2}(M).
        let n = gamma_w(&w2, &finite).expect("z set");
        let lhs = n
            .compose(&gamma_w(&w, &n.module()).expect("z set"))
            .expect("same module");
        t.check(
            lhs == n.intersect(&g_fin).expect("same module"),
            "subfunctor law",
            case,
        );

        let a = gen::smooth(rng, &mod_pool, 3, 1_000_000);
        let ann = ann_preradical_apply(IdealZ::new(a), &finite);
        let ann_formula: Vec<Element> = group
            .elements()
            .into_iter()
            .filter(|x| ann.contains_element(x))
            .collect();
        t.check(
            element_set(ann_by_elements(a, &group)) == element_set(ann_formula),
            "ann by elements",
            || json!({ "a": a, "module": js(&finite) }),
        );
        let section = gamma_w(&v_of_ideal(IdealZ::new(a)), &finite).expect("z set");
        t.check(
            ann.is_subset(&section),
            "ann contained in closure",
            || json!({ "a": a, "module": js(&finite) }),
        );
        let cl = closure(&PreradicalDescriptor::AnnBy(IdealZ::new(a)));
        t.check(
            cl.as_ref().ok() == Some(&PreradicalDescriptor::Section(v_of_ideal(IdealZ::new(a)))),
            "closure of ann",
            || json!({ "a": a }),
        );
    }
}

/// Truncation depth for comparing `H^1` with the colimit oracle.
const H1_DEPTH: u32 = 8;
const COLIMIT_STAGES: u32 = 40;

/// `RΓ_{V(a)}` against the Ext-colimit oracle, plus additivity.
fn rgamma(rng: &mut ChaCha8Rng, params: &VerifyParams, t: &mut Tally) {
    let pool = gen::prime_pool(params.prime_bound.min(97));
    for &p in pool.iter().take(6) {
        let w = v_of_ideal(IdealZ::new(p));
        let got = r_gamma(&w, &FgModule::free(1));
        let expect = LocalCohomology {
            h0: FgModule::zero(),
            h1: crate::injectives::InjModule::pruefer(p, 1),
        };
        t.check(
            got.as_ref() == Ok(&expect),
            "H^1 of Z at a prime",
            || json!({ "p": p }),
        );
    }
    for _ in 0..params.cases {
        let a = gen::smooth(rng, &pool, 3, 1_000_000);
        let m = gen::module(rng, &pool, 3, 1 << 10);
        let w = v_of_ideal(IdealZ::new(a));
        let case = || json!({ "a": a, "module": js(&m) });
        let Some(lc) = t.ok(r_gamma(&w, &m), "r_gamma", case) else {
            continue;
        };
        let Some(d0) = t.ok(
            local_cohomology_ext_colimit(a, &m, 0, COLIMIT_STAGES),
            "ext colimit degree 0",
            case,
        ) else {
            continue;
        };
        t.check(
            d0.value
                == ColimitValue::Finite {
                    module: lc.h0.clone(),
                },
            "degree 0 matches oracle",
            || json!({ "a": a, "module": js(&m), "h0": js(&lc.h0), "oracle": js(&d0.value) }),
        );
        let Some(d1) = t.ok(
            local_cohomology_ext_colimit(a, &m, 1, COLIMIT_STAGES),
            "ext colimit degree 1",
            case,
        ) else {
            continue;
        };
        let truncations_agree = pool
            .iter()
            .all(|&p| (1..=H1_DEPTH).all(|k| lc.h1.pn_torsion(p, k) == d1.pn_torsion(p, k)));
        t.check(
            truncations_agree,
            "degree 1 matches oracle",
            || json!({ "a": a, "module": js(&m), "h1": js(&lc.h1), "oracle": js(&d1.value) }),
        );
        t.check(
            lc.h1.pruefer_default() == 0
                && lc
                    .h1
                    .pruefer_exceptions()
                    .keys()
                    .all(|&p| w.contains_prime(PrimeZ::Max(p))),
            "H^1 supported in W",
            case,
        );
        let n = gen::module(rng, &pool, 2, 1 << 8);
        let sum = r_gamma(&w, &m.direct_sum(&n));
        let parts = r_gamma(&w, &n).map(|x| lc.direct_sum(&x));
        t.check(
            matches!((&sum, &parts), (Ok(x), Ok(y)) if x == y),
            "additivity",
            || json!({ "a": a, "m": js(&m), "n": js(&n) }),
        );
    }
}

/// Injective division, Hom vanishing and the triangle on random sets.
fn tstructure(rng: &mut ChaCha8Rng, params: &VerifyParams, t: &mut Tally) {
    let pool = gen::prime_pool(params.prime_bound);
    let mod_pool = gen::prime_pool(params.prime_bound.min(13));
    for _ in 0..params.cases {
        let w = gen::z_set(rng, &pool);
        let m = gen::module(rng, &mod_pool, 2, 10_000);
        let case = || json!({ "w": js(&w), "module": js(&m) });
        t.check(
            divides_injectives_check(&w, params.prime_bound) == Ok(true),
            "divides indecomposable injectives",
            case,
        );
        t.check(
            hom_vanishing_check(&w, params.prime_bound) == Ok(true),
            "Hom vanishing",
            case,
        );
        let Some(tri) = t.ok(triangle_decompose(&w, &m), "triangle", case) else {
            continue;
        };
        t.check(
            tri.quot.gamma(&w).map(|c| c.is_zero()) == Ok(true),
            "quotient complex in Ker",
            case,
        );
        t.check(
            tri.sub.gamma(&w).as_ref() == Ok(&tri.sub),
            "sub complex in Im",
            case,
        );
    }
}

/// `W(I,J)` as a quotient and by definition; closedness and ACC witnesses.
fn wij(rng: &mut ChaCha8Rng, params: &VerifyParams, t: &mut Tally) {
    let pool = gen::prime_pool(params.prime_bound);
    for _ in 0..params.cases {
        let pick = |rng: &mut ChaCha8Rng| match rng.gen_range(0..10) {
            0 => 0,
            1 => 1,
            _ => gen::smooth(rng, &pool, 4, u64::MAX / 2),
        };
        let (a, b) = (pick(rng), pick(rng));
        let case = || json!({ "a": a, "b": b });
        let (i, j) = (IdealZ::new(a), IdealZ::new(b));
        let w = w_pair(i, j);
        let q = SpecClosedSet::quotient(&v_of_ideal(i.sum(j)), &v_of_ideal(j));
        t.check(
            q.as_ref() == Ok(&w),
            "w_pair = quotient(V(I+J), V(J))",
            || json!({ "a": a, "b": b, "w_pair": js(&w), "quotient": q.as_ref().map(js).ok() }),
        );
        let Some(def) = t.ok(
            w_pair_by_definition(a, b, params.prime_bound, params.power_bound),
            "w_pair_by_definition",
            case,
        ) else {
            continue;
        };
        let agree = def
            .primes
            .iter()
            .all(|x| w.contains_prime(PrimeZ::Max(x.prime.0)) == x.witness.is_some())
            && w.contains_prime(PrimeZ::Zero) == def.generic.is_some();
        t.check(
            agree,
            "w_pair = definition",
            || json!({ "a": a, "b": b, "w_pair": js(&w), "definition": js(&def) }),
        );
        closedness(&w, t);
    }
}

/// `is_closed` agrees with finiteness of `Min(W)`; non-closed sets carry a
/// strictly ascending chain of closed subsets.
fn closedness(w: &SpecClosedSet, t: &mut Tally) {
    let finite_min = matches!(w.min_elements(), MinSet::Finite(_));
    t.check(w.is_closed() == finite_min, "closed iff Min finite", || {
        js(w)
    });
    if w.is_closed() {
        return;
    }
    let chain = w.acc_witness_chain(5);
    let ok = chain.as_ref().is_ok_and(|c| {
        c.len() == 5
            && c.iter()
                .all(|x| x.is_closed() && x.is_subset(w) == Ok(true))
            && c.windows(2)
                .all(|p| p[0].is_subset(&p[1]) == Ok(true) && p[0] != p[1])
    });
    t.check(ok, "ascending chain of closed subsets", || js(w));
}
