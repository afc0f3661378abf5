mod common;

use common::*;
use freecrit::checkers::{divide_by_one_plus_t, koszul_decompose, Range, Verdict};
use freecrit::complex::{AlgMatrix, ChainMap, FreeComplex};
use freecrit::field::{Field, PrimeField};
use freecrit::homotopy::{derived_annihilator, solve_homotopy, Homotopy};
use freecrit::koszul::koszul;
use freecrit::module::{is_free, lemma43_freeness, FiniteModule};
use freecrit::walg::{check_weyl_relations, exterior_model, random_graded_conjugate, structure_map, StructureMap};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(a: &Alg, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> AlgMatrix<u64> {
    let f = a.field();
    let entries = (0..rows * cols).map(|_| (0..a.dim()).map(|_| f.random(rng)).collect()).collect();
    AlgMatrix::from_entries(a, rows, cols, entries).unwrap()
}

fn koszul_instance(seed: u64, alg: usize, p: usize, b: usize) -> (FreeComplex<PrimeField>, FreeComplex<PrimeField>, Vec<Vec<u64>>) {
    let cat = catalog();
    let a = &cat[alg % cat.len()].1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = random_sequence(a, p, &mut rng);
    let k = koszul(a, &xs).unwrap().complex.power(b).unwrap();
    let c = conjugate(&k, &mut rng);
    (k, c, xs)
}

// Schoolbook product with (1+t)^c.
fn times_one_plus_t(q: &[i64], c: usize) -> Vec<i64> {
    let mut cur = q.to_vec();
    for _ in 0..c {
        let mut next = vec![0; cur.len() + 1];
        for (i, &v) in cur.iter().enumerate() {
            next[i] += v;
            next[i + 1] += v;
        }
        cur = next;
    }
    cur
}

fn range_strategy() -> impl Strategy<Value = (Range, i64)> {
    (-20i64..20, 0i64..10, any::<bool>(), any::<bool>()).prop_map(|(lo, w, open_lo, open_hi)| {
        let r = Range {
            lo: (!open_lo).then_some(lo),
            hi: (!open_hi).then_some(lo + w),
        };
        (r, lo + w / 2)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugation_preserves_homology(seed in any::<u64>(), alg in 0usize..5, p in 1usize..3, b in 1usize..3) {
        let (k, c, _) = koszul_instance(seed, alg, p, b);
        prop_assert!(c.square_defects().is_empty());
        for i in 0..=k.top() {
            prop_assert_eq!(k.homology(i).unwrap().dim(), c.homology(i).unwrap().dim());
        }
    }

    #[test]
    fn sequence_lies_in_the_derived_annihilator(seed in any::<u64>(), alg in 0usize..5, p in 1usize..3) {
        let (_, c, xs) = koszul_instance(seed, alg, p, 1);
        let ann = derived_annihilator(&c).unwrap();
        let f = c.field();
        for x in &xs {
            prop_assert!(ann.contains(f, x));
        }
        // a unit never annihilates a nonzero complex
        prop_assert!(!ann.contains(f, &c.algebra().one()));
    }

    #[test]
    fn boundaries_are_null_homotopic(seed in any::<u64>(), alg in 0usize..5, p in 1usize..3) {
        let (_, c, _) = koszul_instance(seed, alg, p, 1);
        let a = c.algebra().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let h = Homotopy {
            maps: (0..=c.top()).map(|i| random_matrix(&a, c.rank(i + 1), c.rank(i), &mut rng)).collect(),
        };
        let f = h.boundary(&c, &c).unwrap();
        prop_assert!(f.chain_defects().is_empty());
        let g = solve_homotopy(&f).unwrap();
        prop_assert!(g.is_some_and(|g| g.verify(&f).unwrap()));
        // identity on a nonzero complex over a local ring is never null-homotopic
        prop_assert!(solve_homotopy(&ChainMap::identity(&c)).unwrap().is_none());
    }

    #[test]
    fn decomposition_recovers_rank_and_multiplicity(seed in any::<u64>(), alg in 0usize..5, p in 1usize..4, b in 1usize..3) {
        let (_, c, _) = koszul_instance(seed, alg, p, b);
        let d = koszul_decompose(&c).unwrap().unwrap();
        prop_assert_eq!((d.p, d.multiplicity), (p, b));
        prop_assert!(d.lift.phi.compose(&d.lift.inverse).unwrap().sub(&ChainMap::identity(&c)).is_zero());
    }

    #[test]
    fn free_detection_agrees_with_syzygy_criterion(seed in any::<u64>(), alg in 0usize..5, rank in 0usize..3, extra in 0usize..3) {
        let cat = catalog();
        let a = &cat[alg].1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = FiniteModule::free(a, rank);
        for _ in 0..extra {
            let g: Vec<Vec<u64>> = (0..rng.gen_range(1..=2)).map(|_| random_in_m(a, &mut rng)).collect();
            m = m.direct_sum(&FiniteModule::cyclic(a, &g));
        }
        let m = m.random_conjugate(&mut rng);
        let planted = extra == 0;
        prop_assert_eq!(is_free(&m).is_free(), Some(planted));
        prop_assert_eq!(lemma43_freeness(&m).unwrap().is_free(), Some(planted));
    }

    #[test]
    fn conjugated_exterior_models_stay_valid(seed in any::<u64>(), p in 1usize..5, dim0 in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = random_graded_conjugate(&exterior_model(&gf(), p, dim0), &mut rng);
        prop_assert!(check_weyl_relations(&rep, true).ok());
        prop_assert!(matches!(structure_map(&rep).unwrap(), StructureMap::Iso(_)));
    }
}

proptest! {
    #[test]
    fn division_inverts_multiplication(q in proptest::collection::vec(-9i64..10, 1..6), c in 0usize..5) {
        let mut q = q;
        while q.last() == Some(&0) {
            q.pop();
        }
        prop_assert_eq!(divide_by_one_plus_t(&times_one_plus_t(&q, c), c), Some(q));
    }

    #[test]
    fn division_needs_a_root_at_minus_one(poly in proptest::collection::vec(-9i64..10, 1..8), c in 1usize..4) {
        let at_minus_one: i64 = poly.iter().enumerate().map(|(i, &a)| if i % 2 == 0 { a } else { -a }).sum();
        if at_minus_one != 0 {
            prop_assert_eq!(divide_by_one_plus_t(&poly, c), None);
        }
    }

    #[test]
    fn range_arithmetic_is_sound((a, x) in range_strategy(), (b, y) in range_strategy()) {
        let contains = |r: Range, v: i64| r.lo.is_none_or(|l| l <= v) && r.hi.is_none_or(|h| v <= h);
        prop_assert!(contains(a.add(b), x + y));
        prop_assert!(contains(a.sub(b), x - y));
        prop_assert!(contains(a.max(b), x.max(y)));
        match a.le(b) {
            Verdict::Pass => prop_assert!(x <= y),
            Verdict::Fail => prop_assert!(x > y),
            Verdict::NotApplicable => {}
        }
        match a.eq(b) {
            Verdict::Pass => prop_assert_eq!(x, y),
            Verdict::Fail => prop_assert_ne!(x, y),
            Verdict::NotApplicable => {}
        }
    }
}
