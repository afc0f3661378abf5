use std::sync::Arc;

use freecrit::algebra::{AlgebraMorphism, ArtinAlgebra, GradedMonomialAlgebra};
use freecrit::checkers::*;
use freecrit::complex::{AlgMatrix, ChainMap, FreeComplex};
use freecrit::field::PrimeField;
use freecrit::io::fixtures::FILES;
use freecrit::io::{Loader, Source};
use freecrit::koszul::koszul;

fn gf() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn alg(vars: &[&str], ideal: &[&str], d: u32) -> Arc<ArtinAlgebra<PrimeField>> {
    let g = GradedMonomialAlgebra::parse(vars.iter().map(|s| s.to_string()).collect(), ideal, d).unwrap();
    Arc::new(g.truncate(&gf()).unwrap())
}

fn el(a: &ArtinAlgebra<PrimeField>, s: &str) -> Vec<u64> {
    a.parse_element(s).unwrap()
}

fn fixture_bundle(name: &str) -> InstanceBundle<PrimeField> {
    Loader::new(gf(), Source::Embedded(FILES)).bundle_file(&format!("{name}.bundle.json")).unwrap()
}

#[test]
fn koszul_powers_satisfy_every_conclusion() {
    let a = alg(&["x", "y", "z"], &["x^2", "y^2", "z^2"], 6);
    let xs = vec![el(&a, "x"), el(&a, "y")];
    let k = koszul(&a, &xs).unwrap().complex.power(2).unwrap();
    let (b, proj) = a.quotient(&xs).unwrap();
    let images: Vec<(String, Vec<u64>)> = a
        .symbols()
        .iter()
        .map(|(n, v)| (n.clone(), proj.mul_vec(a.field(), v)))
        .collect();
    let phi = AlgebraMorphism::from_images(&a, &b, &images).unwrap();
    let bundle = InstanceBundle::new("K(x,y)^2", phi, k).unwrap();
    let r = check_thm51(&bundle).unwrap();
    assert_eq!(r.status, Status::Applies, "{r}");
    assert_eq!(r.verdict, Verdict::Pass, "{r}");
    let q = check_question(&bundle).unwrap();
    assert_eq!(q.verdict, Verdict::Pass, "{q}");
    let t = check_thm31(&bundle).unwrap();
    assert_eq!(t.status, Status::HypothesesNotMet, "{t}");
    assert!(!t.refutes());
}

#[test]
fn example_2_3_separates_the_two_notions_of_action() {
    let b = fixture_bundle("ex2.3");
    let (v, why) = derived_action_status(&b).unwrap();
    assert_eq!(v, Verdict::Fail);
    assert!(why.contains('x'), "{why}");
    let q = check_question(&b).unwrap();
    assert_eq!(q.status, Status::HypothesesNotMet);
    assert_eq!(q.conclusion("H_0 free over B").unwrap().verdict, Verdict::Fail, "{q}");
    let t = check_thm31(&b).unwrap();
    let h = t.hypothesis("edim A - edim B <= depth A - dim B").unwrap();
    assert_eq!(h.verdict, Verdict::Fail, "{t}");
}

#[test]
fn lemma32_on_koszul_over_a_non_cohen_macaulay_ring() {
    let b = fixture_bundle("ex4.5");
    let r = check_lemma32(&b).unwrap();
    let c = r.conclusion("(1) proj dim F >= depth A - dim B + sup H").unwrap();
    assert_eq!(c.verdict, Verdict::Pass, "{r}");
    assert_eq!(c.value, "1");
}

#[test]
fn exceptional_ci_decisions() {
    let a = alg(&["x"], &["x^4"], 6);
    let id = AlgebraMorphism::parse(&a, &a, &[("x", "x")]).unwrap();
    assert_eq!(is_exceptional_ci_surjective(&id).unwrap(), CiVerdict::Yes);

    let a = alg(&["x", "y"], &["x^2", "x*y"], 6);
    let b = alg(&["y"], &[], 6);
    let phi = AlgebraMorphism::parse(&a, &b, &[("x", "0"), ("y", "y")]).unwrap();
    assert!(matches!(is_exceptional_ci_surjective(&phi).unwrap(), CiVerdict::No(_)));

    let a = alg(&["x", "y"], &[], 6);
    let phi = AlgebraMorphism::parse(&a, &b, &[("x", "0"), ("y", "y")]).unwrap();
    assert!(matches!(is_exceptional_ci_surjective(&phi).unwrap(), CiVerdict::UpToDegree(_)));
}

#[test]
fn artinian_ci_test() {
    assert_eq!(artinian_ci(&alg(&["u", "v"], &["u^2", "v^3"], 8)).unwrap(), CiVerdict::Yes);
    assert!(matches!(artinian_ci(&alg(&["u", "v"], &["u^2", "u*v", "v^2"], 8)).unwrap(), CiVerdict::No(_)));
    assert_eq!(artinian_ci(&ArtinAlgebra::ground_field(&gf())).unwrap(), CiVerdict::Yes);
}

#[test]
fn strict_action_fails_on_a_koszul_complex() {
    let a = alg(&["x", "y"], &["x^3", "y^2"], 6);
    let c = koszul(&a, &[el(&a, "x")]).unwrap().complex;
    let (b, _) = a.quotient(&[el(&a, "x")]).unwrap();
    let phi = AlgebraMorphism::parse(&a, &b, &[("x", "0"), ("y", "y")]).unwrap();
    let y = ChainMap::scalar(&c, &el(&a, "y"));
    let bundle = InstanceBundle::new("K(x)", phi, c.clone()).unwrap().with_strict_action(vec![(b.parse_element("y").unwrap(), y)]);
    // x acts on K(x) as x, not as 0.
    let (ok, _) = strict_action_status(&bundle).unwrap();
    assert!(!ok);
    let r = check_thm41(&bundle).unwrap();
    assert_eq!(r.status, Status::HypothesesNotMet);
}

#[test]
fn thm41_on_a_ring_over_itself() {
    let a = alg(&["x"], &["x^3"], 6);
    let c = FreeComplex::new(a.clone(), 1, vec![]).unwrap();
    let phi = AlgebraMorphism::parse(&a, &a, &[("x", "x")]).unwrap();
    let x = ChainMap::scalar(&c, &el(&a, "x"));
    let bundle = InstanceBundle::new("A", phi, c).unwrap().with_strict_action(vec![(el(&a, "x"), x)]);
    let r = check_thm41(&bundle).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{r}");
}

#[test]
fn thm41_tor_hypothesis_fails_on_a_shifted_sum() {
    // F = A ⊕ ΣA with zero differential and B = A: Tor_1 ≠ 0 while edim A - edim B = 0.
    let a = alg(&["x", "y"], &["x^2", "y^2"], 6);
    let zero = AlgMatrix::zeros(&a, 1, 1);
    let c = FreeComplex::new(a.clone(), 1, vec![zero]).unwrap();
    let phi = AlgebraMorphism::parse(&a, &a, &[("x", "x"), ("y", "y")]).unwrap();
    let gens = vec![(el(&a, "x"), ChainMap::scalar(&c, &el(&a, "x"))), (el(&a, "y"), ChainMap::scalar(&c, &el(&a, "y")))];
    let bundle = InstanceBundle::new("A+ΣA", phi, c).unwrap().with_strict_action(gens);
    let r = check_thm41(&bundle).unwrap();
    let h = r.hypothesis("Tor_i(k, F) = 0 for i > edim A - edim B").unwrap();
    assert_eq!(h.verdict, Verdict::Fail, "{r}");
}

#[test]
fn decomposition_recovers_koszul_powers() {
    let a = alg(&["x", "y", "z"], &["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"], 4);
    let xs = vec![el(&a, "x"), el(&a, "y")];
    let k = koszul(&a, &xs).unwrap().complex.power(2).unwrap();
    let d = koszul_decompose(&k).unwrap().unwrap();
    assert_eq!((d.p, d.multiplicity), (2, 2));
    assert!(d.lift.phi.compose(&d.lift.inverse).unwrap().sub(&ChainMap::identity(&k)).is_zero());
}

#[test]
fn decomposition_obstructed_on_example_5_5() {
    let b = fixture_bundle("ex5.5");
    let o = koszul_decompose(&b.complex).unwrap().unwrap_err();
    assert_eq!((o.independent, o.needed), (0, 1));
}

#[test]
fn divisibility_of_mixed_sums() {
    let a = alg(&["x", "y", "z"], &["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"], 4);
    let xs = vec![el(&a, "x"), el(&a, "y")];
    let k = koszul(&a, &xs).unwrap().complex;
    let mixed = k.power(2).unwrap().direct_sum(&k.shift(1).unwrap()).unwrap();
    let r = prop44_divisibility(&mixed, &xs).unwrap();
    assert!(r.divisible);
    assert_eq!(r.quotient, Some(vec![2, 1]));
    let r0 = prop44_divisibility(&mixed, &[]).unwrap();
    assert!(r0.divisible);
}

#[test]
fn question58_harness_on_example_5_6() {
    let b = fixture_bundle("ex5.6");
    let a = b.source();
    let e = AlgMatrix::parse_rows(a, &[&["0", "0", "x"], &["1", "0", "0"], &["0", "1", "0"]]).unwrap();
    let f = a.field();
    let z1 = e.scale(a, &el(a, "x")).sub(f, &AlgMatrix::scalar_diag(a, 3, &el(a, "y")));
    let z2 = e.scale(a, &el(a, "y")).sub(f, &AlgMatrix::scalar_diag(a, 3, &el(a, "z")));
    let (_, r) = question58_candidate(&b.complex, &[z1, z2]).unwrap();
    assert!(r.commuting && r.betti_match && r.homology_match && r.identical_up_to_sign, "{r:?}");
}

#[test]
fn report_json_has_stable_fields() {
    let r = check_thm51(&fixture_bundle("ex5.5")).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    for k in ["checker", "instance", "hypotheses", "conclusions", "status", "verdict", "notes"] {
        assert!(v.get(k).is_some(), "{k}");
    }
    assert_eq!(v["verdict"], "pass");
}
