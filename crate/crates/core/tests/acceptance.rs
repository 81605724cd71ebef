//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p periodica --test acceptance -- --nocapture`.

use std::sync::Arc;
use std::time::{Duration, Instant};

use periodica::algebra::{presets, Algebra};
use periodica::complex::{cone, decompose_acyclic_projective, homotopy_hom, GradedMorphism, PeriodicComplex};
use periodica::derived::stalk_tilting_check;
use periodica::hochschild::{bar_hh_oracle, bimodule_resolution, formality_criterion, hh_dims, LaurentSetup, BAR_MAX_ENTRIES};
use periodica::homological::Bounded;
use periodica::module::Module;
use periodica::report::Verdict;
use periodica::reproduce::{ex5_8, ex5_9, lemma4_1, prop3_10, prop3_25};
use periodica::sampling::{random_chain_map, random_graded_morphism, random_periodic_complex, rng};
use periodica::stable::algebra_period;
use periodica::{Field, Result};

const Q: Field = Field::Rationals;

fn ka(n: usize) -> Arc<Algebra> {
    presets::build(presets::linear_a(Q, n))
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn run(results: &mut Vec<bool>, id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Result<Outcome>) {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let (pass, detail) = match out {
        Ok(o) => (o.pass && took <= limit, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let word = if pass { "PASS" } else { "FAIL" };
    println!("{word} criterion {id} ({name}): {detail} [{:.1}s, limit {}s]", took.as_secs_f64(), limit.as_secs());
    results.push(pass);
}

fn tilting_nakayama() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [3, 4] {
        let start = Instant::now();
        let r = ex5_8(n, Q)?;
        let took = start.elapsed();
        let fine = r.verdict == Verdict::Pass && took < Duration::from_secs(30);
        pass &= fine;
        parts.push(format!("n={n}: {:?} in {:.1}s", r.verdict, took.as_secs_f64()));
        for c in r.checks.iter().filter(|c| c.status != periodica::report::Status::Pass) {
            parts.push(format!("{}: {}", c.name, c.detail));
        }
    }
    ok(pass, parts.join("; "))
}

fn vanishing_grid() -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [2, 3] {
        for m in [2, 3] {
            let r = lemma4_1(&ka(n), m, 8)?;
            pass &= r.verdict == Verdict::Pass && r.checks.iter().any(|c| c.name.starts_with("formality"));
            parts.push(format!("kA{n} m={m}: {:?}", r.verdict));
        }
    }
    ok(pass, parts.join(", "))
}

fn dual_numbers_not_formal() -> Result<Outcome> {
    let setup = LaurentSetup::new(presets::build(presets::dual_numbers(Q)), 2)?;
    let f = formality_criterion(&setup, 8, 8)?;
    let pass = matches!(f.witness, Some((q, _)) if q >= 3) && !f.pass;
    ok(pass, format!("witness HH^(q,2-q) at {:?}", f.witness))
}

fn ext_sums() -> Result<Outcome> {
    let r = prop3_10(&ka(2), 2, 7, 50, 8)?;
    let mut pass = r.verdict == Verdict::Pass;
    let mut parts = vec![format!("kA2 m=2 with 50 random pairs: {:?}", r.verdict)];
    for (n, pairs) in [(2, 9), (3, 36)] {
        for m in [2, 3] {
            let r = prop3_10(&ka(n), m, 11, 0, 8)?;
            let counted = r.data["ext_sums"].as_array().map_or(0, |a| a.len());
            pass &= r.verdict == Verdict::Pass && counted == pairs;
            parts.push(format!("kA{n} m={m}: {counted} pairs {:?}", r.verdict));
        }
    }
    ok(pass, parts.join(", "))
}

fn hereditary_round_trip() -> Result<Outcome> {
    let r = prop3_25(&ka(2), 2, 7, 50)?;
    ok(r.verdict == Verdict::Pass, format!("50 random complexes over kA2, m=2: {:?}", r.verdict))
}

fn periods() -> Result<Outcome> {
    let f2 = Field::prime(2)?;
    let cases = [((2, 2, Q), 2), ((3, 3, Q), 2), ((1, 2, f2), 1), ((1, 2, Q), 2)];
    let mut pass = true;
    let mut parts = Vec::new();
    for ((n, m, field), want) in cases {
        let got = algebra_period(&presets::build(presets::cyclic_nakayama(field, n, m)), 8)?;
        pass &= got == Bounded::Exact(want);
        parts.push(format!("Λ({n},{m}) over {}: {got}", field.name()));
    }
    ok(pass, parts.join(", "))
}

fn stalk_tilting() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [2, 3] {
        for m in [2, 3] {
            let a = ka(n);
            let r = stalk_tilting_check(&a, m, 8)?;
            let shape = r.rigidity.iter().enumerate().all(|(i, &d)| d == if i == 0 { a.dim() } else { 0 });
            pass &= r.pass && shape && r.witnesses.len() == n;
            parts.push(format!("kA{n} m={m}: rigidity {:?}, {} witnesses", r.rigidity, r.witnesses.len()));
        }
    }
    ok(pass, parts.join(", "))
}

fn dual_numbers_stalks() -> Result<Outcome> {
    let r = ex5_9(Q, 8)?;
    let count = r.data["stalks"]["count"].as_u64().unwrap_or(0);
    let cited = r.cited.first().and_then(|c| c.value.as_u64()).unwrap_or(0);
    ok(r.verdict == Verdict::Pass && count == 4 && cited == 3, format!("{count} computed vs {cited} cited, {:?}", r.verdict))
}

fn invariants() -> Result<Outcome> {
    let mut failures: Vec<String> = Vec::new();
    let mut counts = [0usize; 6];
    for (n, m) in [(2, 1), (2, 2), (2, 3), (3, 2)] {
        let a = ka(n);
        let mut pool: Vec<Module> = (0..n).map(|v| Module::projective(&a, v)).collect();
        pool.extend((0..n).map(|v| Module::simple(&a, v)));
        let projectives: Vec<Module> = (0..n).map(|v| Module::projective(&a, v)).collect();
        let mut g = rng(1000 + (n * 10 + m) as u64);
        for _ in 0..6 {
            let u = random_periodic_complex(&pool, m, 2, &mut g)?;
            let v = random_periodic_complex(&pool, m, 2, &mut g)?;
            let w = random_periodic_complex(&pool, m, 2, &mut g)?;
            // cone-diagram identities
            let f = random_chain_map(&v, &w, &mut g)?;
            let cd = cone(&f, &v, &w)?;
            for (name, holds) in cd.verify(&f, &v, &w) {
                if !holds {
                    failures.push(format!("cone identity {name}"));
                }
            }
            counts[0] += 1;
            // d² = 0 after every constructor
            let built = [v.shift(1), v.shift(-3), cd.cone.clone(), PeriodicComplex::k_of(m, v.comp(0))];
            if !built.iter().all(PeriodicComplex::d_squared_zero) {
                failures.push("d² = 0".into());
            }
            counts[1] += 1;
            // graded Leibniz
            for (p, q) in [(0, 1), (1, -1), (2, 3)] {
                let x = random_graded_morphism(&u, &v, p, &mut g)?;
                let y = random_graded_morphism(&v, &w, q, &mut g)?;
                let lhs = y.compose(&x).differential(&u, &w);
                let sign = if q % 2 == 0 { Q.one() } else { -Q.one() };
                let rhs = y.differential(&v, &w).compose(&x).add(&y.compose(&x.differential(&u, &v)).scale(&sign));
                if lhs != rhs {
                    failures.push(format!("Leibniz p={p} q={q}"));
                }
                counts[2] += 1;
            }
            // contractible ⇔ acyclic ⇔ splits into K's, on complexes of projectives
            let p = random_periodic_complex(&projectives, m, 3, &mut g)?;
            let pid = GradedMorphism::identity(&p);
            let cp = cone(&pid, &p, &p)?.cone;
            for x in [p, cp] {
                let acyclic = x.is_acyclic();
                let contractible = x.is_contractible()?;
                let splits = decompose_acyclic_projective(&x).is_ok();
                let end_zero = homotopy_hom(&x, &x, 0)? == 0;
                if !(acyclic == contractible && contractible == splits && splits == end_zero) {
                    failures.push(format!("equivalence: acyclic {acyclic}, contractible {contractible}, splits {splits}, End 0 {end_zero}"));
                }
                counts[3] += 1;
            }
            // strict periodicity of the shift
            let twice = v.shift(2 * m as i64) == v;
            let once = m % 2 == 1 || v.shift(m as i64) == v;
            if !(twice && once) {
                failures.push(format!("shift periodicity m={m}"));
            }
            counts[4] += 1;
        }
    }
    for a in [ka(2), ka(3), presets::build(presets::dual_numbers(Q))] {
        let res = bimodule_resolution(&a, 5)?;
        let hh = hh_dims(&res, 3)?;
        for (p, &want) in hh.iter().enumerate() {
            if bar_hh_oracle(&a, p, BAR_MAX_ENTRIES)? != want {
                failures.push(format!("bar oracle {} p={p}", a.name()));
            }
            counts[5] += 1;
        }
    }
    let detail = format!(
        "{} cone diagrams, {} d² batches, {} Leibniz pairs, {} equivalence spot-checks, {} shift checks, {} bar comparisons; failures {:?}",
        counts[0], counts[1], counts[2], counts[3], counts[4], counts[5], failures
    );
    ok(failures.is_empty(), detail)
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    let s = Duration::from_secs;
    run(&mut results, 1, "stable category of kQ_n/rad^n, n = 3, 4", s(60), tilting_nakayama);
    run(&mut results, 2, "HH^{p,q} vanishing and formality for kA_2, kA_3", s(120), vanishing_grid);
    run(&mut results, 3, "formality criterion fails for dual numbers", s(60), dual_numbers_not_formal);
    run(&mut results, 4, "fold Hom sums and Ext sums", s(300), ext_sums);
    run(&mut results, 5, "hereditary round trip", s(300), hereditary_round_trip);
    run(&mut results, 6, "periods of kQ_n/rad^m", s(60), periods);
    run(&mut results, 7, "stalk Λ is periodic tilting", s(120), stalk_tilting);
    run(&mut results, 8, "four stalks in D_2(k[x]/(x²))", s(60), dual_numbers_stalks);
    run(&mut results, 9, "invariant suites", s(300), invariants);
    let passed = results.iter().filter(|&&b| b).count();
    println!("{passed}/{} criteria passed", results.len());
    assert_eq!(passed, results.len());
}
