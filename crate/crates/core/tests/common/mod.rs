#![allow(dead_code)]

use std::sync::Arc;

use freecrit::algebra::{ArtinAlgebra, GradedMonomialAlgebra};
use freecrit::complex::{AlgMatrix, FreeComplex};
use freecrit::field::{Field, PrimeField};
use freecrit::linalg::Matrix;
use freecrit::walg::invert;
use rand::Rng;

pub type Alg = Arc<ArtinAlgebra<PrimeField>>;

pub fn gf() -> PrimeField {
    PrimeField::new(101).unwrap()
}

pub fn monomial(vars: &[&str], ideal: &[&str]) -> Alg {
    let g = GradedMonomialAlgebra::parse(vars.iter().map(|s| s.to_string()).collect(), ideal, 12).unwrap();
    Arc::new(g.artinize(&gf()).unwrap())
}

/// Small Artinian algebras of embedding dimension at least 3.
pub fn catalog() -> Vec<(&'static str, Alg)> {
    let xyz = ["x", "y", "z"];
    vec![
        ("k[x,y,z]/m^2", monomial(&xyz, &["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"])),
        (
            "k[x,y,z,w]/m^2",
            monomial(
                &["x", "y", "z", "w"],
                &["x^2", "x*y", "x*z", "x*w", "y^2", "y*z", "y*w", "z^2", "z*w", "w^2"],
            ),
        ),
        ("k[x,y,z]/(x^2,xy,xz,y^2,yz,z^3)", monomial(&xyz, &["x^2", "x*y", "x*z", "y^2", "y*z", "z^3"])),
        ("k[x,y,z]/(x^2,y^2,z^2,xz,yz)", monomial(&xyz, &["x^2", "y^2", "z^2", "x*z", "y*z"])),
        ("k[x,y,z]/(x^2,y^2,z^2)", monomial(&xyz, &["x^2", "y^2", "z^2"])),
    ]
}

/// A random element of the maximal ideal.
pub fn random_in_m<R: Rng>(a: &ArtinAlgebra<PrimeField>, rng: &mut R) -> Vec<u64> {
    let f = a.field();
    let mut v: Vec<u64> = (0..a.dim()).map(|_| f.random(rng)).collect();
    let c = a.residue(&v);
    v = a.sub(&v, &a.scalar(&c));
    v
}

/// `p` random elements of `m` that are independent modulo `m^2`.
pub fn random_sequence<R: Rng>(a: &ArtinAlgebra<PrimeField>, p: usize, rng: &mut R) -> Vec<Vec<u64>> {
    loop {
        let xs: Vec<Vec<u64>> = (0..p).map(|_| random_in_m(a, rng)).collect();
        if a.adapted_basis(&xs).is_ok() {
            return xs;
        }
    }
}

/// A random invertible matrix over `A` with its inverse: a random scalar
/// unit plus a random matrix with entries in `m`.
pub fn random_unit<R: Rng>(a: &Alg, n: usize, rng: &mut R) -> (AlgMatrix<u64>, AlgMatrix<u64>) {
    let f = a.field();
    let (p, _) = Matrix::random_invertible(f, n, rng);
    let mut g = AlgMatrix::from_scalars(a, &p);
    for r in 0..n {
        for c in 0..n {
            let e = a.add(g.entry(r, c), &random_in_m(a, rng));
            g.set_entry(r, c, &e);
        }
    }
    let inv = invert(a, &g).expect("invertible modulo m");
    (g, inv)
}

/// `g_{i-1} d_i g_i^{-1}` for random units `g_i`: an isomorphic complex.
pub fn conjugate<R: Rng>(c: &FreeComplex<PrimeField>, rng: &mut R) -> FreeComplex<PrimeField> {
    let a = c.algebra();
    let units: Vec<_> = c.ranks().iter().map(|&r| random_unit(a, r, rng)).collect();
    let diffs = (1..c.ranks().len())
        .map(|i| units[i - 1].0.mul(a, &c.d(i)).mul(a, &units[i].1))
        .collect();
    FreeComplex::new(a.clone(), c.rank(0), diffs).unwrap()
}
