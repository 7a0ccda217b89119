//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::collections::BTreeSet;
use std::panic;
use std::process::Command;
use std::sync::Arc;

use lcoh::arith;
use lcoh::injectives::{
    divides_injectives_check, hom_vanishing_check, r_gamma, triangle_decompose, InjModule,
    DEFAULT_PRIME_BOUND,
};
use lcoh::oracles::{
    ann_by_elements, gamma_by_elements, local_cohomology_ext_colimit, subgroup_structure,
    w_pair_by_definition, ColimitValue, Element, FiniteTorsionGroup, UpsetOracle,
};
use lcoh::spec_model::{v_of_ideal, w_pair, IdealZ, MinSet, PosetSpec, PrimeZ, SpecClosedSet};
use lcoh::verify::gen;
use lcoh::zmodules::{
    ann_preradical_apply, closure, gamma_w, torsion_pair, FgModule, PreradicalDescriptor,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (u8, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + salt)
}

/// Whole, empty, finite and cofinite sets over a prime pool, plus random ones.
fn z_corpus(pool: &[u64], random: usize, r: &mut ChaCha8Rng) -> Vec<SpecClosedSet> {
    let mut out = vec![SpecClosedSet::z_whole(), SpecClosedSet::z_empty()];
    for &p in pool {
        out.push(SpecClosedSet::z_finite([p]).unwrap());
        out.push(SpecClosedSet::z_cofinite([p]).unwrap());
    }
    out.push(SpecClosedSet::z_cofinite([]).unwrap());
    out.extend((0..random).map(|_| gen::z_set(r, pool)));
    out
}

fn poset_corpus(r: &mut ChaCha8Rng, posets: usize) -> Vec<(Arc<PosetSpec>, Vec<SpecClosedSet>)> {
    (0..posets)
        .map(|_| {
            let density = r.gen_range(0.05..0.6);
            let p = gen::poset(r, 6, density);
            let sets = UpsetOracle::new(&p)
                .unwrap()
                .masks()
                .iter()
                .map(|&m| SpecClosedSet::poset_mask(&p, m).unwrap())
                .collect();
            (p, sets)
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let mut r = rng(1);
    let mut pairs = 0usize;
    for case in 0..200 {
        let density = r.gen_range(0.05..0.6);
        let p = gen::poset(&mut r, 7, density);
        let oracle = UpsetOracle::new(&p).unwrap();
        let sets: Vec<SpecClosedSet> = oracle
            .masks()
            .iter()
            .map(|&m| SpecClosedSet::poset_mask(&p, m).unwrap())
            .collect();
        for w1 in &sets {
            for w2 in &sets {
                if !w1.is_subset(w2).unwrap() {
                    continue;
                }
                pairs += 1;
                let fast = SpecClosedSet::quotient(w1, w2).unwrap();
                match oracle.quotient(w1, w2) {
                    Ok(slow) if slow == fast => {}
                    other => {
                        return fail(format!("poset #{case} {p:?}, W1={w1}, W2={w2}: quotient={fast}, search={other:?}"));
                    }
                }
            }
        }
    }
    pass(format!(
        "200 posets, {pairs} pairs W1 ⊆ W2, unique maximum every time"
    ))
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let pool = gen::prime_pool(30);
    let mut corpus = z_corpus(&pool, 50, &mut r);
    for (_, sets) in poset_corpus(&mut r, 30) {
        corpus.extend(sets);
    }
    let mut checked = [0usize; 3];
    let mut failures: Vec<String> = Vec::new();
    for w in &corpus {
        let whole = w.whole_like();
        let empty = w.empty_like();
        checked[0] += 1;
        if SpecClosedSet::quotient(w, &whole).as_ref() != Ok(w) {
            failures.push(format!("quotient({w}, whole) != {w}"));
        }
        if w.is_empty() {
            checked[2] += 1;
            if SpecClosedSet::quotient(&empty, w).as_ref() != Ok(&whole) {
                failures.push(format!("quotient(empty, empty) != whole on {w}"));
            }
        } else {
            checked[1] += 1;
            match SpecClosedSet::quotient(&empty, w) {
                Ok(q) if q.is_empty() => {}
                Ok(q) => failures.push(format!("quotient(empty, {w}) = {q}, expected empty")),
                Err(e) => failures.push(format!("quotient(empty, {w}): {e}")),
            }
        }
    }
    let detail = format!(
        "{} sets: W/whole checked {}, empty/W (W nonempty) checked {}, empty/empty checked {}",
        corpus.len(),
        checked[0],
        checked[1],
        checked[2]
    );
    if failures.is_empty() {
        pass(detail)
    } else {
        fail(format!(
            "{detail}; {} violations, first: {}",
            failures.len(),
            failures[0]
        ))
    }
}

fn random_ideal(r: &mut ChaCha8Rng, pool: &[u64]) -> u64 {
    match r.gen_range(0..12) {
        0 => 0,
        1 => 1,
        _ => gen::smooth(r, pool, 5, u64::MAX / 2),
    }
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let pool = gen::prime_pool(100);
    for _ in 0..200 {
        let (a, b) = (random_ideal(&mut r, &pool), random_ideal(&mut r, &pool));
        let (i, j) = (IdealZ::new(a), IdealZ::new(b));
        let w = w_pair(i, j);
        let q = SpecClosedSet::quotient(&v_of_ideal(i.sum(j)), &v_of_ideal(j)).unwrap();
        if q != w {
            return fail(format!("({a}),({b}): w_pair = {w}, quotient = {q}"));
        }
        let def = w_pair_by_definition(a, b, 100, 64).unwrap();
        for x in &def.primes {
            if w.contains_prime(PrimeZ::Max(x.prime.0)) != x.witness.is_some() {
                return fail(format!(
                    "({a}),({b}) at prime {}: w_pair = {w}, definition {:?}",
                    x.prime.0, x.witness
                ));
            }
        }
        if w.contains_prime(PrimeZ::Zero) != def.generic.is_some() {
            return fail(format!(
                "({a}),({b}) at (0): w_pair = {w}, definition {:?}",
                def.generic
            ));
        }
    }
    pass("200 pairs agree with the quotient and with the definition on all primes ≤ 100 and (0)")
}

fn check_acc(w: &SpecClosedSet) -> Result<bool, String> {
    let finite = matches!(w.min_elements(), MinSet::Finite(_));
    if w.is_closed() != finite {
        return Err(format!(
            "{w}: is_closed = {}, Min finite = {finite}",
            w.is_closed()
        ));
    }
    if w.is_closed() {
        if w.acc_witness_chain(5).is_ok() {
            return Err(format!("{w}: closed set produced a witness chain"));
        }
        return Ok(false);
    }
    let chain = w.acc_witness_chain(5).map_err(|e| format!("{w}: {e}"))?;
    let ok = chain.len() == 5
        && chain
            .iter()
            .all(|c| c.is_closed() && c.is_subset(w) == Ok(true))
        && chain
            .windows(2)
            .all(|p| p[0].is_subset(&p[1]) == Ok(true) && p[0] != p[1]);
    if !ok {
        return Err(format!(
            "{w}: chain {chain:?} is not strictly ascending closed inside W"
        ));
    }
    Ok(true)
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut corpus = z_corpus(&gen::prime_pool(97), 200, &mut r);
    for (_, sets) in poset_corpus(&mut r, 20) {
        corpus.extend(sets);
    }
    let mut non_closed = 0;
    for w in &corpus {
        match check_acc(w) {
            Ok(true) => non_closed += 1,
            Ok(false) => {}
            Err(e) => return fail(e),
        }
    }
    pass(format!(
        "{} sets, {non_closed} non-closed with valid chains",
        corpus.len()
    ))
}

fn elements_of(sub: &lcoh::zmodules::Submodule, g: &FiniteTorsionGroup) -> BTreeSet<Element> {
    g.elements()
        .into_iter()
        .filter(|x| sub.contains_element(x))
        .collect()
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let set_pool = gen::prime_pool(30);
    let mod_pool = gen::prime_pool(13);
    for case in 0..500 {
        let w = gen::z_set(&mut r, &set_pool);
        let w2 = gen::z_set(&mut r, &set_pool);
        let m = gen::module(&mut r, &mod_pool, 2, 10_000);
        let ctx = || format!("case {case}: W={w}, W2={w2}, M={m}");

        let g = gamma_w(&w, &m).unwrap();
        let gg = gamma_w(&w, &g.module()).unwrap();
        if gg.module() != g.module() || g.compose(&gg).unwrap() != g {
            return fail(format!("idempotence, {}", ctx()));
        }
        let meet = gamma_w(&w.intersect(&w2).unwrap(), &m).unwrap();
        for (outer, inner) in [(&w, &w2), (&w2, &w)] {
            let first = gamma_w(inner, &m).unwrap();
            if first
                .compose(&gamma_w(outer, &first.module()).unwrap())
                .unwrap()
                != meet
            {
                return fail(format!("commutation, {}", ctx()));
            }
        }
        let pair = torsion_pair(&w, &m).unwrap();
        if !gamma_w(&w, &pair.torsion_free).unwrap().module().is_zero() {
            return fail(format!("radical property, {}", ctx()));
        }
        let t = pair.torsion_module();
        if gamma_w(&w, &t).unwrap().module() != t
            || t.free_rank() + pair.torsion_free.free_rank() != m.free_rank()
            || t.torsion_order() * pair.torsion_free.torsion_order() != m.torsion_order()
        {
            return fail(format!("torsion pair, {}", ctx()));
        }
        let finite = FgModule::new(0, m.torsion().to_vec()).unwrap();
        let group = FiniteTorsionGroup::from_module(&finite).unwrap();
        let g_fin = gamma_w(&w, &finite).unwrap();
        let by_elements = gamma_by_elements(&w, &group).unwrap();
        if by_elements.iter().cloned().collect::<BTreeSet<_>>() != elements_of(&g_fin, &group)
            || subgroup_structure(&group, &by_elements) != g_fin.module()
        {
            return fail(format!("elementwise Γ_W, {}", ctx()));
        }
    }
    pass("500 (W, M): idempotence, commutation, radical, torsion pair, element oracle")
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let pool = gen::prime_pool(50);
    let mod_pool = gen::prime_pool(13);
    let mut elementwise = 0;
    for _ in 0..100 {
        let a = gen::smooth(&mut r, &pool, 4, 1 << 40);
        let ideal = IdealZ::new(a);
        let v = v_of_ideal(ideal);
        let cl = closure(&PreradicalDescriptor::AnnBy(ideal)).unwrap();
        if cl != PreradicalDescriptor::Section(v.clone()) {
            return fail(format!("closure(Ann(({a}))) = {cl:?}"));
        }
        let m = gen::module(&mut r, &mod_pool, 0, 10_000);
        let group = FiniteTorsionGroup::from_module(&m).unwrap();
        let ann = ann_preradical_apply(ideal, &m);
        let section = gamma_w(&v, &m).unwrap();
        let ann_els: BTreeSet<Element> = ann_by_elements(a, &group).into_iter().collect();
        if ann_els != elements_of(&ann, &group) {
            return fail(format!(
                "Ann(({a})) on {m} disagrees with the element oracle"
            ));
        }
        let sec_els = elements_of(&section, &group);
        if !ann_els.is_subset(&sec_els) {
            return fail(format!("Ann(({a}))({m}) not inside Γ_V(({a}))({m})"));
        }
        elementwise += ann_els.len();
    }
    pass(format!(
        "100 generators, {elementwise} annihilated elements all inside the section"
    ))
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let pool = gen::prime_pool(13);
    for &p in &pool {
        let lc = r_gamma(&v_of_ideal(IdealZ::new(p)), &FgModule::free(1)).unwrap();
        let oracle = local_cohomology_ext_colimit(p, &FgModule::free(1), 1, 16).unwrap();
        let want = ColimitValue::Divisible {
            pruefer: vec![(p, 1)],
            finite: FgModule::zero(),
        };
        if lc.h1 != InjModule::pruefer(p, 1) || !lc.h0.is_zero() || oracle.value != want {
            return fail(format!(
                "H^1 at ({p}) of Z: {lc:?}, oracle {:?}",
                oracle.value
            ));
        }
    }
    for case in 0..100 {
        let a = gen::smooth(&mut r, &pool, 3, 100_000);
        let m = gen::module(&mut r, &pool, 3, 1 << 10);
        let lc = r_gamma(&v_of_ideal(IdealZ::new(a)), &m).unwrap();
        let d0 = local_cohomology_ext_colimit(a, &m, 0, 40).unwrap();
        if d0.value
            != (ColimitValue::Finite {
                module: lc.h0.clone(),
            })
        {
            return fail(format!(
                "case {case}: a={a}, M={m}: H^0 = {}, oracle {:?}",
                lc.h0, d0.value
            ));
        }
        let d1 = local_cohomology_ext_colimit(a, &m, 1, 40).unwrap();
        for &p in &pool {
            for k in 1..=8 {
                if lc.h1.pn_torsion(p, k) != d1.pn_torsion(p, k) {
                    return fail(format!(
                        "case {case}: a={a}, M={m}: H^1[{p}^{k}] = {}, oracle {}",
                        lc.h1.pn_torsion(p, k),
                        d1.pn_torsion(p, k)
                    ));
                }
            }
        }
    }
    pass("100 modules match in degree 0 and in degree 1 through p^n-torsion, n ≤ 8")
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let pool = gen::prime_pool(97);
    let corpus = z_corpus(&pool, 300, &mut r);
    let mod_pool = gen::prime_pool(13);
    for w in &corpus {
        if divides_injectives_check(w, DEFAULT_PRIME_BOUND) != Ok(true) {
            return fail(format!("{w} does not divide the indecomposable injectives"));
        }
        if hom_vanishing_check(w, DEFAULT_PRIME_BOUND) != Ok(true) {
            return fail(format!("Hom vanishing fails for {w}"));
        }
        for _ in 0..3 {
            let m = gen::module(&mut r, &mod_pool, 2, 10_000);
            let t = match triangle_decompose(w, &m) {
                Ok(t) => t,
                Err(e) => return fail(format!("triangle for {w}, {m}: {e}")),
            };
            if !t.quot.gamma(w).unwrap().is_zero() || t.sub.gamma(w).unwrap() != t.sub {
                return fail(format!("triangle for {w}, {m} is not separated"));
            }
        }
    }
    pass(format!(
        "{} sets with primes ≤ 97, three triangles each",
        corpus.len()
    ))
}

fn smooth_numbers(bound: u64, primes: &[u64]) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let mut next = Vec::new();
        for &n in &out {
            let mut m = n;
            while m <= bound {
                next.push(m);
                m = match m.checked_mul(p) {
                    Some(v) => v,
                    None => break,
                };
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

fn criterion_9() -> Outcome {
    let w = w_pair(IdealZ::new(2), IdealZ::new(3));
    if w.contains_prime(PrimeZ::Zero)
        || !w.contains_prime(PrimeZ::Max(2))
        || w.contains_prime(PrimeZ::Max(3))
    {
        return fail(format!("unexpected shape {w}"));
    }
    if w.is_closed() {
        return fail(format!("{w} reported closed"));
    }
    if let Err(e) = check_acc(&w) {
        return fail(e);
    }
    let ideals = smooth_numbers(1_000_000, &arith::primes_up_to(100));
    let mut count = 1usize;
    if v_of_ideal(IdealZ::zero()) == w {
        return fail("equals V((0))");
    }
    for n in &ideals {
        count += 1;
        if v_of_ideal(IdealZ::new(*n)) == w {
            return fail(format!("equals V(({n}))"));
        }
    }
    pass(format!(
        "{w} is not closed and differs from V(I) for {count} ideals (100-smooth ≤ 10^6 and (0))"
    ))
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_lcoh");
    let run = || {
        Command::new(bin)
            .args(["verify", "--suite", "all", "--seed", "42"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    if !a.status.success() {
        return fail(format!(
            "verify exited with {:?}: {}",
            a.status.code(),
            String::from_utf8_lossy(&a.stderr)
        ));
    }
    if a.stdout != b.stdout {
        return fail("reports differ between runs");
    }
    pass(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "lattice quotient vs exhaustive search", criterion_1),
        (2, "quotient identities", criterion_2),
        (3, "W(I,J) as a quotient", criterion_3),
        (4, "ACC iff closed", criterion_4),
        (5, "section functor laws", criterion_5),
        (6, "closure of Hom(R/I, -)", criterion_6),
        (7, "RΓ vs Ext colimit", criterion_7),
        (8, "abstract local cohomology conditions", criterion_8),
        (9, "non-classical W((2),(3))", criterion_9),
        (10, "verify determinism", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, f) in criteria {
        let outcome = panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            fail(format!("panicked: {msg}"))
        });
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "criterion {n:>2} [{name}]: {} ({})",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
