//! Acceptance suite: one line per criterion, exit status 1 if any fails.

mod common;

use std::time::Instant;

use common::*;
use freecrit::action::{check_h_action_only, verify_certificate, WitnessKind};
use freecrit::checkers::*;
use freecrit::complex::{AlgMatrix, ChainMap, FreeComplex};
use freecrit::field::PrimeField;
use freecrit::homotopy::{derived_annihilator, solve_homotopy, Homotopy};
use freecrit::io::fixtures::{run_bundled, FILES};
use freecrit::io::{to_json, Loader, Source};
use freecrit::koszul::{binomial, koszul, subsets};
use freecrit::module::{is_free, lemma43_freeness, FiniteModule, Freeness};
use freecrit::walg::{check_lemma_a1, check_weyl_relations, exterior_model, random_graded_conjugate, structure_map, StructureMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn bundle(name: &str) -> Result<InstanceBundle<PrimeField>, String> {
    Loader::new(gf(), Source::Embedded(FILES))
        .bundle_file(&format!("{name}.bundle.json"))
        .map_err(|e| e.to_string())
}

fn power(m: &ChainMap<PrimeField>, n: usize) -> ChainMap<PrimeField> {
    let mut acc = ChainMap::identity(&m.source);
    for _ in 0..n {
        acc = acc.compose(m).unwrap();
    }
    acc
}

fn h0_module(b: &InstanceBundle<PrimeField>) -> Result<FiniteModule<PrimeField>, String> {
    let gens = homology_action(b).map_err(|e| e.to_string())?.ok_or("no action on homology")?;
    h0_over_b(b, &gens).map_err(|e| e.to_string())?.ok_or_else(|| "H_0 is not a B-module".into())
}

fn criterion1() -> Outcome {
    let b = bundle("ex5.5")?;
    let c = &b.complex;
    let a = c.algebra();
    let cert = b.certificate.as_ref().unwrap();
    let u = &cert.generators[0].map;
    ensure(u.chain_defects().is_empty(), "U is not a chain map")?;
    let x = ChainMap::scalar(c, &a.parse_element("x").unwrap());
    let y = ChainMap::scalar(c, &a.parse_element("y").unwrap());
    ensure(power(u, 2).sub(&x).is_zero(), "U^2 != x")?;
    let mut h = Homotopy::zero(c, c);
    h.maps[0] = AlgMatrix::identity(a, 2).neg(a.field());
    ensure(h.verify(&power(u, 3).sub(&y)).unwrap(), "-id is not a homotopy U^3 ~ y")?;
    let h0 = h0_module(&b)?;
    ensure(h0.dim() == 4 && h0.nu() == 1, format!("dim H_0 = {}, nu = {}", h0.dim(), h0.nu()))?;
    ensure(is_free(&h0) == Freeness::Free { rank: 1 }, "H_0 not free of rank 1")?;
    let o = koszul_decompose(c).unwrap().err().ok_or("decomposition unexpectedly succeeded")?;
    Ok(format!("U^2 = x, U^3 ~ y via -id, H_0 free of rank 1 (dim 4), decomposition obstructed ({}/{})", o.independent, o.needed))
}

fn criterion2() -> Outcome {
    let b = bundle("ex5.6")?;
    let c = &b.complex;
    let a = c.algebra();
    let u = &b.certificate.as_ref().unwrap().generators[0].map;
    let s = |n: &str| ChainMap::scalar(c, &a.parse_element(n).unwrap());
    ensure(power(u, 3).sub(&s("x")).is_zero(), "U^3 != x")?;
    for (n, v) in [(4, "y"), (5, "z")] {
        let h = solve_homotopy(&power(u, n).sub(&s(v))).unwrap();
        ensure(h.is_some(), format!("U^{n} - {v} is not null-homotopic"))?;
    }
    let betti = c.betti();
    ensure(betti == (0..=2).map(|i| binomial(2, i) * 3).collect::<Vec<_>>(), format!("ranks {betti:?}"))?;
    let h0 = h0_module(&b)?;
    ensure(is_free(&h0) == Freeness::Free { rank: 1 }, "H_0 not free of rank 1")?;
    let r = check_thm51(&b).unwrap();
    ensure(r.status == Status::Applies && r.verdict == Verdict::Pass, r.to_string())?;
    Ok(format!("U^3 = x, U^4 ~ y, U^5 ~ z (solved), ranks {betti:?}, H_0 free of rank 1, {} conclusions pass", r.conclusions.len()))
}

fn criterion3() -> Outcome {
    let b = bundle("ex5.7")?;
    let cert = b.certificate.as_ref().unwrap();
    let r = verify_certificate(&b.complex, cert).unwrap();
    ensure(r.relations.len() == 5 && r.verified, format!("{:?}", r.relations.iter().map(|x| x.ok).collect::<Vec<_>>()))?;
    let comm = r.relations.iter().find(|x| x.poly == "v*u - u*v").ok_or("no commutator relation")?;
    ensure(comm.kind == WitnessKind::Explicit && comm.ok, "commutator not witnessed by d")?;
    let t = check_thm51(&b).unwrap();
    let h = t.hypothesis("proj dim F <= edim A - nu(m_A B)").unwrap();
    ensure(h.verdict == Verdict::Fail && h.threshold == "<= 0", format!("{h:?}"))?;
    ensure(t.status == Status::Open, format!("status {:?}", t.status))?;
    let beta0 = freecrit::algebra::beta0_of_mab(&b.morphism).unwrap();
    Ok(format!("5 relations verified, nu(m_A B) = {beta0} > 3 - 1, hypothesis fails, instance flagged open"))
}

fn criterion4() -> Outcome {
    let b = bundle("ex2.3")?;
    let c = &b.complex;
    let a = c.algebra();
    ensure(a.truncation() == Some(6), "not on the truncated backend")?;
    let h0 = h0_module(&b)?;
    ensure(h0.dim() == 1, "H_0 is not k")?;
    ensure(matches!(is_free(&h0), Freeness::NotFree { .. }), "H_0 = k reported free over B")?;
    let x = a.parse_element("x").unwrap();
    let h1 = c.homology(1).unwrap();
    ensure(h1.module.action_of(&x).is_zero(a.field()), "x acts nontrivially on H_1")?;
    let ann = derived_annihilator(c).unwrap();
    ensure(!ann.contains(a.field(), &x), "x in the derived annihilator")?;

    let k = koszul(a, &[x.clone()]).unwrap().complex;
    let kh1 = k.homology(1).unwrap();
    let degs = kh1.module.degrees().ok_or("no degrees")?;
    let grading = a.grading().unwrap();
    // H_1(K(x)) = (0 :_A x) placed in degree 1 higher; compare with m_A.
    for d in 1..=5i64 {
        let in_m = grading.degrees.iter().filter(|&&g| g as i64 == d).count();
        let in_h = degs.iter().filter(|&&g| g == d + 1).count();
        ensure(in_m == in_h, format!("degree {d}: m_A has {in_m}, H_1 has {in_h}"))?;
    }
    ensure(kh1.nu() == 2, format!("nu(H_1) = {}", kh1.nu()))?;
    Ok("H_0 = k not free over B, x H_1 = 0, x outside the derived annihilator, H_1(K(x)) ~ m_A through degree 5 with nu = 2".into())
}

struct Instance {
    alg: usize,
    p: usize,
    b: usize,
    complex: FreeComplex<PrimeField>,
    xs: Vec<Vec<u64>>,
}

fn round_trip_instances() -> Vec<Instance> {
    let cat = catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut out = Vec::new();
    for (ai, (_, a)) in cat.iter().enumerate() {
        for p in 1..=3 {
            for b in 1..=3 {
                for _ in 0..10 {
                    let xs = random_sequence(a, p, &mut rng);
                    let k = koszul(a, &xs).unwrap().complex.power(b).unwrap();
                    out.push(Instance {
                        alg: ai,
                        p,
                        b,
                        complex: conjugate(&k, &mut rng),
                        xs,
                    });
                }
            }
        }
    }
    out
}

fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let n = std::thread::available_parallelism().map_or(4, |n| n.get()).min(16);
    let chunk = items.len().div_ceil(n).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

fn criterion5(instances: &[Instance]) -> Outcome {
    let results = par_map(instances, |inst| -> Result<(), String> {
        let c = &inst.complex;
        let d = koszul_decompose(c)
            .map_err(|e| e.to_string())?
            .map_err(|o| format!("obstruction {o:?}"))?;
        ensure(d.p == inst.p && d.multiplicity == inst.b, format!("p = {}, b = {}", d.p, d.multiplicity))?;
        let l = &d.lift;
        ensure(l.phi.compose(&l.inverse).unwrap().sub(&ChainMap::identity(c)).is_zero(), "phi inverse != id")?;
        ensure(l.inverse.compose(&l.phi).unwrap().sub(&ChainMap::identity(&l.source)).is_zero(), "inverse phi != id")?;
        Ok(())
    });
    let failures: Vec<String> = results
        .iter()
        .zip(instances)
        .filter_map(|(r, i)| r.as_ref().err().map(|e| format!("alg {} p {} b {}: {e}", i.alg, i.p, i.b)))
        .collect();
    ensure(failures.is_empty(), failures.join("; "))?;
    Ok(format!("{} conjugated Koszul powers decomposed with the right multiplicity", instances.len()))
}

fn criterion6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut reps = Vec::new();
    for p in 1..=4 {
        for dim0 in 1..=2 {
            reps.push(exterior_model(&gf(), p, dim0));
        }
    }
    let models = reps.len();
    for i in 0..50 {
        let base = reps[i % models].clone();
        reps.push(random_graded_conjugate(&base, &mut rng));
    }
    for (i, rep) in reps.iter().enumerate() {
        let w = check_weyl_relations(rep, true);
        ensure(w.ok(), format!("rep {i}: {:?}", w.failures.first()))?;
        for k in 0..=rep.p {
            for set in subsets(rep.p, k) {
                ensure(check_lemma_a1(rep, &set), format!("rep {i}: lemma fails for {set:?}"))?;
            }
        }
        ensure(matches!(structure_map(rep).unwrap(), StructureMap::Iso(_)), format!("rep {i}: structure map not bijective"))?;
        for j in 0..=rep.p {
            ensure(rep.dims[j] == binomial(rep.p, j) * rep.dims[0], format!("rep {i}: dim V_{j}"))?;
        }
    }
    Ok(format!("{models} exterior models and 50 conjugates satisfy the relations, the lemma, bijectivity and the dimension law"))
}

fn criterion7(instances: &[Instance]) -> Outcome {
    let results = par_map(instances, |inst| -> Result<(), String> {
        let r = prop44_divisibility(&inst.complex, &inst.xs).map_err(|e| e.to_string())?;
        ensure(r.divisible && r.quotient == Some(vec![inst.b as i64]), format!("{r:?}"))
    });
    let bad = results.iter().filter(|r| r.is_err()).count();
    ensure(bad == 0, format!("{bad} failures, first {:?}", results.iter().find(|r| r.is_err())))?;
    let a = &catalog()[0].1;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mixed = 0;
    for p in 1..=2 {
        let xs = random_sequence(a, p, &mut rng);
        let k = koszul(a, &xs).unwrap().complex;
        for (ka, kc) in [(1, 1), (2, 1), (1, 2), (0, 3)] {
            let shifted = k.shift(1).unwrap().power(kc).unwrap();
            let c = if ka == 0 { shifted } else { k.power(ka).unwrap().direct_sum(&shifted).unwrap() };
            let r = prop44_divisibility(&c, &xs).map_err(|e| e.to_string())?;
            let want: Vec<i64> = if ka == 0 { vec![0, kc as i64] } else { vec![ka as i64, kc as i64] };
            ensure(r.quotient == Some(want.clone()), format!("K^{ka} + sK^{kc}: {:?} vs {want:?}", r.quotient))?;
            mixed += 1;
        }
    }
    Ok(format!("{} instances give quotient b; {mixed} mixed sums give a + ct", instances.len()))
}

fn criterion8() -> Outcome {
    for run in 0..2 {
        let b = bundle("ex2.3")?;
        let gens = homology_action(&b).unwrap().ok_or("no H-level action")?;
        let h = check_h_action_only(&b.complex, &b.morphism, &gens).unwrap();
        ensure(h.valid, format!("run {run}: H-level action rejected"))?;
        let q = check_question(&b).unwrap();
        ensure(q.status == Status::HypothesesNotMet, format!("run {run}: {q}"))?;
        ensure(q.hypothesis("derived action").unwrap().verdict == Verdict::Fail, format!("run {run}: derived action accepted"))?;
    }
    Ok("H-level action accepted, question rejected (x not null-homotopic), on repeated runs".into())
}

fn random_module(a: &Alg, rng: &mut ChaCha8Rng) -> (FiniteModule<PrimeField>, bool) {
    match rng.gen_range(0..4) {
        0 => (FiniteModule::free(a, rng.gen_range(1..=3)).random_conjugate(rng), true),
        1 => {
            let gens: Vec<Vec<u64>> = (0..rng.gen_range(1..=2)).map(|_| random_in_m(a, rng)).collect();
            (FiniteModule::cyclic(a, &gens).random_conjugate(rng), false)
        }
        2 => {
            let free = FiniteModule::free(a, rng.gen_range(1..=2));
            (free.direct_sum(&FiniteModule::residue_field(a)).random_conjugate(rng), false)
        }
        _ => {
            let g = vec![random_in_m(a, rng)];
            let m = FiniteModule::cyclic(a, &g).direct_sum(&FiniteModule::free(a, 1));
            (m.random_conjugate(rng), false)
        }
    }
}

fn criterion9() -> Outcome {
    let cat = catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut free, mut non) = (0, 0);
    for i in 0..200 {
        let a = &cat[i % cat.len()].1;
        let (m, planted) = random_module(a, &mut rng);
        let x = is_free(&m).is_free();
        let y = lemma43_freeness(&m).unwrap().is_free();
        ensure(x == y, format!("module {i}: is_free {x:?}, lemma {y:?}"))?;
        ensure(x == Some(planted), format!("module {i}: planted {planted}, found {x:?}"))?;
        if planted {
            free += 1;
        } else {
            non += 1;
        }
    }
    Ok(format!("200 modules ({free} free, {non} not) agree"))
}

fn criterion10() -> Outcome {
    let run = || -> Result<String, String> {
        let reports = run_bundled(gf(), None).map_err(|e| e.to_string())?;
        to_json(&reports).map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, "fixture reports differ between runs")?;
    let reports = run_bundled(gf(), None).unwrap();
    ensure(reports.iter().all(|r| r.ok), "some fixture misses its expectations")?;
    Ok(format!("{} bytes of fixture reports identical across runs", a.len()))
}

fn main() {
    let mut all = true;
    let mut report = |n: usize, t: Instant, r: Outcome| {
        let ms = t.elapsed().as_millis();
        match r {
            Ok(s) => println!("criterion {n:>2}: PASS ({ms} ms) {s}"),
            Err(e) => {
                all = false;
                println!("criterion {n:>2}: FAIL ({ms} ms) {e}");
            }
        }
    };
    let t = Instant::now();
    report(1, t, criterion1());
    let t = Instant::now();
    report(2, t, criterion2());
    let t = Instant::now();
    report(3, t, criterion3());
    let t = Instant::now();
    report(4, t, criterion4());
    let t = Instant::now();
    let instances = round_trip_instances();
    report(5, t, criterion5(&instances));
    let t = Instant::now();
    report(6, t, criterion6());
    let t = Instant::now();
    report(7, t, criterion7(&instances));
    let t = Instant::now();
    report(8, t, criterion8());
    let t = Instant::now();
    report(9, t, criterion9());
    let t = Instant::now();
    report(10, t, criterion10());
    if !all {
        std::process::exit(1);
    }
}
