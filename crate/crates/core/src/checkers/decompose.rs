//! Koszul decompositions, the divisibility of Betti polynomials by
//! `(1+t)^c`, and complete-intersection tests for surjections.

use serde::Serialize;

use crate::algebra::{AlgebraMorphism, ArtinAlgebra};
use crate::complex::{AlgMatrix, FreeComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homotopy::derived_annihilator;
use crate::koszul::{binomial, koszul, subsets};
use crate::linalg::kernel_basis;
use crate::module::{poincare_truncated, FiniteModule};
use crate::walg::{koszul_lift, KoszulLift};

/// Minimal generators of the kernel of `φ`, as elements of `A`.
pub fn kernel_generators<F: Field>(phi: &AlgebraMorphism<F>) -> Result<Vec<Vec<F::Elem>>> {
    let a = phi.source();
    let ker = kernel_basis(a.field(), phi.matrix());
    a.minimal_generators(1, &ker)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CiVerdict {
    Yes,
    No(String),
    /// No obstruction up to this internal degree (truncated rings only).
    UpToDegree(i64),
}

/// Whether the kernel of a surjection `φ` is generated by a regular
/// sequence that is part of a minimal generating set of `m_A`.
pub fn is_exceptional_ci_surjective<F: Field>(phi: &AlgebraMorphism<F>) -> Result<CiVerdict> {
    if !phi.is_surjective() {
        return Err(Error::Precondition("map is not surjective".into()));
    }
    let gens = kernel_generators(phi)?;
    if gens.is_empty() {
        return Ok(CiVerdict::Yes);
    }
    let a = phi.source();
    match a.adapted_basis(&gens) {
        Ok(_) => {}
        Err(Error::DependentModM2) => return Ok(CiVerdict::No("kernel generators are dependent modulo m^2".into())),
        Err(e) => return Err(e),
    }
    let alg = std::sync::Arc::new(a.clone());
    let k = koszul(&alg, &gens)?;
    let h1 = k.complex.homology(1)?;
    if h1.exact_dim() > 0 {
        return Ok(CiVerdict::No(format!("H_1 of the Koszul complex on the kernel has dimension {}", h1.exact_dim())));
    }
    match h1.module.exact_through() {
        Some(t) => Ok(CiVerdict::UpToDegree(t)),
        None => Ok(CiVerdict::Yes),
    }
}

/// Complete intersection test for the fiber `B/m_A B`.
///
/// For an Artinian local ring `C` of embedding dimension `e`,
/// `β_2(k) = C(e,2) + ν(I)` where `C = Q/I` is a minimal presentation, and
/// `C` is a complete intersection iff `ν(I) = e`.
pub fn fiber_ci<F: Field>(phi: &AlgebraMorphism<F>) -> Result<CiVerdict> {
    let b = phi.target();
    let (fiber, _) = b.quotient(&phi.image_of_maximal_ideal())?;
    artinian_ci(&fiber)
}

pub fn artinian_ci<F: Field>(c: &ArtinAlgebra<F>) -> Result<CiVerdict> {
    let e = c.edim();
    if e == 0 {
        return Ok(CiVerdict::Yes);
    }
    if let Some(d) = c.truncation() {
        return Ok(CiVerdict::UpToDegree(d as i64));
    }
    let alg = std::sync::Arc::new(c.clone());
    let betti = poincare_truncated(&FiniteModule::residue_field(&alg), 2)?;
    let relations = betti[2] - binomial(e, 2);
    if relations == e {
        Ok(CiVerdict::Yes)
    } else {
        Ok(CiVerdict::No(format!("{relations} minimal relations on {e} generators")))
    }
}

/// `F ≅ K(x_1, ..., x_p) ⊗ A^b`.
#[derive(Debug, Clone)]
pub struct Decomposition<F: Field> {
    pub p: usize,
    pub multiplicity: usize,
    pub sequence: Vec<Vec<F::Elem>>,
    pub lift: KoszulLift<F>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub annihilator_dim: usize,
    /// Largest number of annihilator elements independent modulo `m^2`.
    pub independent: usize,
    pub needed: usize,
    /// The annihilator is only known over a truncation.
    pub truncated: bool,
}

pub const MAX_DECOMPOSE_P: usize = 4;

/// Looks for `p = pd F` elements of the derived annihilator independent
/// modulo `m^2` and lifts the Koszul complex on them to an isomorphism.
///
/// Independence modulo `m^2` is a linear condition on images in `m/m^2`, so
/// a greedy pass over a basis of the annihilator finds `p` such elements
/// whenever any exist.
pub fn koszul_decompose<F: Field>(c: &FreeComplex<F>) -> Result<std::result::Result<Decomposition<F>, Obstruction>> {
    if !c.is_minimal() {
        return Err(Error::Precondition("complex is not minimal".into()));
    }
    let p = c.proj_dim().unwrap_or(0);
    if p > MAX_DECOMPOSE_P {
        return Err(Error::Precondition(format!("projective dimension {p} exceeds {MAX_DECOMPOSE_P}")));
    }
    let a = c.algebra();
    let ann = derived_annihilator(c)?;
    let mut xs = Vec::new();
    let mut hs = Vec::new();
    for (x, h) in ann.basis.iter().zip(&ann.witnesses) {
        if xs.len() == p {
            break;
        }
        if !a.in_maximal_ideal(x) {
            continue;
        }
        xs.push(x.clone());
        match a.adapted_basis(&xs) {
            Ok(_) => hs.push(h.clone()),
            Err(Error::DependentModM2) => {
                xs.pop();
            }
            Err(e) => return Err(e),
        }
    }
    if xs.len() < p || !ann.exact {
        return Ok(Err(Obstruction {
            annihilator_dim: ann.dim(),
            independent: xs.len(),
            needed: p,
            truncated: !ann.exact,
        }));
    }
    let lift = koszul_lift(c, &xs, &hs)?;
    Ok(Ok(Decomposition {
        p,
        multiplicity: c.rank(0),
        sequence: xs,
        lift,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop44 {
    pub c: usize,
    pub betti: Vec<usize>,
    /// Coefficients of `Σ β_i t^i / (1+t)^c` when the division is exact.
    pub quotient: Option<Vec<i64>>,
    pub divisible: bool,
}

/// Divides `Σ β_i(F) t^i` by `(1+t)^c` for `x_1, ..., x_c` in the derived
/// annihilator of `F` and independent modulo `m^2`.
pub fn prop44_divisibility<F: Field>(c: &FreeComplex<F>, xs: &[Vec<F::Elem>]) -> Result<Prop44> {
    let a = c.algebra();
    if !xs.is_empty() {
        a.adapted_basis(xs)?;
        let ann = derived_annihilator(c)?;
        if let Some(x) = xs.iter().find(|x| !ann.contains(a.field(), x)) {
            return Err(Error::Precondition(format!("{} is not in the derived annihilator", a.format(x))));
        }
    }
    let betti = c.betti();
    let quotient = divide_by_one_plus_t(&betti.iter().map(|&b| b as i64).collect::<Vec<_>>(), xs.len());
    let divisible = quotient.as_ref().is_some_and(|q| q.iter().all(|&x| x >= 0));
    Ok(Prop44 {
        c: xs.len(),
        betti,
        quotient,
        divisible,
    })
}

/// Exact quotient of a polynomial by `(1+t)^c`, trailing zeros dropped.
pub fn divide_by_one_plus_t(poly: &[i64], c: usize) -> Option<Vec<i64>> {
    let mut cur: Vec<i64> = poly.to_vec();
    while cur.last() == Some(&0) {
        cur.pop();
    }
    for _ in 0..c {
        if cur.is_empty() {
            return Some(cur);
        }
        // a_i = q_i + q_{i-1}, solved from the bottom up.
        let n = cur.len() - 1;
        if n == 0 {
            return None;
        }
        let mut q = vec![0; n];
        q[0] = cur[0];
        for i in 1..n {
            q[i] = cur[i] - q[i - 1];
        }
        if cur[n] != q[n - 1] {
            return None;
        }
        cur = q;
    }
    Some(cur)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Question58Report {
    pub commuting: bool,
    pub betti_match: bool,
    pub homology_match: bool,
    /// Each differential of the candidate is `±` that of `F`, so the two
    /// complexes agree after changing signs of basis vectors degreewise.
    pub identical_up_to_sign: bool,
}

/// Builds `K(z_1, ..., z_c) ⊗ F_0` from commuting endomorphisms `z_i` of
/// `F_0` and compares it with `F`. No search for the `z_i` is attempted.
pub fn question58_candidate<F: Field>(c: &FreeComplex<F>, zs: &[AlgMatrix<F::Elem>]) -> Result<(FreeComplex<F>, Question58Report)> {
    let a = c.algebra();
    let f = a.field();
    let r0 = c.rank(0);
    if let Some(z) = zs.iter().find(|z| z.rows() != r0 || z.cols() != r0) {
        return Err(Error::Dimension(format!("{}x{} action on F_0 of rank {r0}", z.rows(), z.cols())));
    }
    let mut commuting = true;
    for (i, zi) in zs.iter().enumerate() {
        for zj in &zs[i + 1..] {
            if !zi.mul(a, zj).sub(f, &zj.mul(a, zi)).is_zero(f) {
                commuting = false;
            }
        }
    }
    let n = zs.len();
    let sets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| subsets(n, k)).collect();
    let mut diffs = Vec::new();
    for i in 1..=n {
        let mut d = AlgMatrix::zeros(a, sets[i - 1].len() * r0, sets[i].len() * r0);
        for (col, set) in sets[i].iter().enumerate() {
            for (j, &idx) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(j);
                let row = sets[i - 1].iter().position(|s| *s == rest).expect("subset listed");
                for r in 0..r0 {
                    for s in 0..r0 {
                        let e = zs[idx].entry(r, s);
                        let v = if j % 2 == 0 { e.to_vec() } else { a.neg(e) };
                        d.set_entry(row * r0 + r, col * r0 + s, &v);
                    }
                }
            }
        }
        diffs.push(d);
    }
    let cand = FreeComplex::new(a.clone(), r0, diffs)?;
    let betti_match = trim(cand.betti()) == trim(c.betti());
    let homology_match = if commuting && cand.validate().is_ok() {
        let h1: Vec<usize> = cand.homology_all()?.iter().map(|h| h.dim()).collect();
        let h2: Vec<usize> = c.homology_all()?.iter().map(|h| h.dim()).collect();
        trim(h1) == trim(h2)
    } else {
        false
    };
    let identical_up_to_sign = betti_match
        && (1..=n.max(c.top())).all(|i| {
            let (x, y) = (cand.d(i), c.d(i));
            x == y || x == y.neg(f)
        });
    Ok((
        cand,
        Question58Report {
            commuting,
            betti_match,
            homology_match,
            identical_up_to_sign,
        },
    ))
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_by_powers_of_one_plus_t() {
        assert_eq!(divide_by_one_plus_t(&[2, 4, 2], 2), Some(vec![2]));
        assert_eq!(divide_by_one_plus_t(&[2, 3, 1], 1), Some(vec![2, 1]));
        assert_eq!(divide_by_one_plus_t(&[1, 1], 2), None);
        assert_eq!(divide_by_one_plus_t(&[3, 1], 0), Some(vec![3, 1]));
        assert_eq!(divide_by_one_plus_t(&[1, 0, 1], 1), None);
    }
}
