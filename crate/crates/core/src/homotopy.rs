//! Null-homotopies of chain maps as one exact linear system, and the
//! derived annihilator `{a : a·id_F ≃ 0}`.
//!
//! Unknowns are the `k`-coordinates of every entry of every `h_i: F_i ->
//! G_{i+1}`; equations are the coordinates of `f_i - d h_i - h_{i-1} d`.

use crate::complex::{AlgMatrix, ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{solve, Matrix, ProjectedSolver};

/// Maps `h_i: F_i -> G_{i+1}`, shape `rank G_{i+1} x rank F_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy<E> {
    pub maps: Vec<AlgMatrix<E>>,
}

impl<E: Clone + PartialEq> Homotopy<E> {
    pub fn zero<F: Field<Elem = E>>(source: &FreeComplex<F>, target: &FreeComplex<F>) -> Self {
        let top = source.top().max(target.top());
        let alg = source.algebra();
        Homotopy {
            maps: (0..=top).map(|i| AlgMatrix::zeros(alg, target.rank(i + 1), source.rank(i))).collect(),
        }
    }

    /// `h_i`, zero outside the stored range.
    pub fn component<F: Field<Elem = E>>(&self, source: &FreeComplex<F>, target: &FreeComplex<F>, i: usize) -> AlgMatrix<E> {
        match self.maps.get(i) {
            Some(m) => m.clone(),
            None => AlgMatrix::zeros(source.algebra(), target.rank(i + 1), source.rank(i)),
        }
    }

    /// `d h + h d` as a chain map `source -> target`.
    pub fn boundary<F: Field<Elem = E>>(&self, source: &FreeComplex<F>, target: &FreeComplex<F>) -> Result<ChainMap<F>> {
        let alg = source.algebra();
        let f = alg.field();
        let top = source.top().max(target.top());
        let maps = (0..=top)
            .map(|i| {
                let a = target.d(i + 1).mul(alg, &self.component(source, target, i));
                if i == 0 {
                    a
                } else {
                    a.add(f, &self.component(source, target, i - 1).mul(alg, &source.d(i)))
                }
            })
            .collect();
        ChainMap::new(source, target, maps)
    }

    /// Does `d h + h d = f` hold exactly?
    pub fn verify<F: Field<Elem = E>>(&self, map: &ChainMap<F>) -> Result<bool> {
        let b = self.boundary(&map.source, &map.target)?;
        Ok(b.sub(map).is_zero())
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Homotopy {
            maps: self.maps.iter().map(|m| m.neg(f)).collect(),
        }
    }
}

/// Index layout of the homotopy system for a pair of complexes.
struct Layout {
    dim: usize,
    top: usize,
    /// Offset of `h_i`'s unknowns.
    unknowns: Vec<usize>,
    /// Offset of degree `i`'s equations.
    equations: Vec<usize>,
    n_unknowns: usize,
    n_equations: usize,
}

impl Layout {
    fn new<F: Field>(source: &FreeComplex<F>, target: &FreeComplex<F>) -> Self {
        let dim = source.algebra().dim();
        let top = source.top().max(target.top());
        let mut unknowns = Vec::new();
        let mut equations = Vec::new();
        let (mut u, mut e) = (0, 0);
        for i in 0..=top {
            unknowns.push(u);
            u += target.rank(i + 1) * source.rank(i) * dim;
            equations.push(e);
            e += target.rank(i) * source.rank(i) * dim;
        }
        Layout {
            dim,
            top,
            unknowns,
            equations,
            n_unknowns: u,
            n_equations: e,
        }
    }
}

/// Flattens the components of a degree-zero map into equation coordinates.
fn flatten<F: Field>(layout: &Layout, map: &ChainMap<F>) -> Vec<F::Elem> {
    let f = map.source.field();
    let mut v = vec![f.zero(); layout.n_equations];
    for i in 0..=layout.top {
        let m = map.component(i);
        let cols = map.source.rank(i);
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let off = layout.equations[i] + (r * cols + c) * layout.dim;
                v[off..off + layout.dim].clone_from_slice(m.entry(r, c));
            }
        }
    }
    v
}

fn unflatten<F: Field>(layout: &Layout, source: &FreeComplex<F>, target: &FreeComplex<F>, x: &[F::Elem]) -> Homotopy<F::Elem> {
    let alg = source.algebra();
    let maps = (0..=layout.top)
        .map(|i| {
            let (rows, cols) = (target.rank(i + 1), source.rank(i));
            let mut m = AlgMatrix::zeros(alg, rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    let off = layout.unknowns[i] + (r * cols + c) * layout.dim;
                    m.set_entry(r, c, &x[off..off + layout.dim]);
                }
            }
            m
        })
        .collect();
    Homotopy { maps }
}

/// The `k`-matrix of `h -> d h + h d`.
fn system<F: Field>(layout: &Layout, source: &FreeComplex<F>, target: &FreeComplex<F>) -> Matrix<F::Elem> {
    let alg = source.algebra();
    let f = alg.field();
    let dim = layout.dim;
    let mut m = Matrix::zeros(f, layout.n_equations, layout.n_unknowns);
    for i in 0..=layout.top {
        let (rows, cols) = (target.rank(i + 1), source.rank(i));
        if rows * cols == 0 {
            continue;
        }
        let dg = target.d(i + 1);
        let df = source.d(i + 1);
        // Multiplication tables of the differential entries, column b = x e_b.
        let dg_mult: Vec<Vec<Option<Matrix<F::Elem>>>> = (0..dg.rows())
            .map(|rr| (0..dg.cols()).map(|r| mult_if_nonzero(alg, dg.entry(rr, r))).collect())
            .collect();
        let df_mult: Vec<Vec<Option<Matrix<F::Elem>>>> = (0..df.rows())
            .map(|c| (0..df.cols()).map(|cc| mult_if_nonzero(alg, df.entry(c, cc))).collect())
            .collect();
        let g_rows = target.rank(i);
        let f_next = source.rank(i + 1);
        for r in 0..rows {
            for c in 0..cols {
                for b in 0..dim {
                    let col = layout.unknowns[i] + (r * cols + c) * dim + b;
                    // d^G_{i+1} (E_rc e_b): column c gets d^G[:, r] e_b.
                    for (rr, row_mults) in dg_mult.iter().enumerate().take(g_rows) {
                        if let Some(mx) = &row_mults[r] {
                            let base = layout.equations[i] + (rr * cols + c) * dim;
                            for k in 0..dim {
                                let v = mx.get(k, b);
                                if !f.is_zero(v) {
                                    let cur = m.get(base + k, col).clone();
                                    m.set(base + k, col, f.add(&cur, v));
                                }
                            }
                        }
                    }
                    // (E_rc e_b) d^F_{i+1}: row r gets e_b d^F[c, :].
                    for cc in 0..f_next {
                        if let Some(mx) = &df_mult[c][cc] {
                            let base = layout.equations[i + 1] + (r * f_next + cc) * dim;
                            for k in 0..dim {
                                let v = mx.get(k, b);
                                if !f.is_zero(v) {
                                    let cur = m.get(base + k, col).clone();
                                    m.set(base + k, col, f.add(&cur, v));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    m
}

fn mult_if_nonzero<F: Field>(alg: &crate::algebra::ArtinAlgebra<F>, x: &[F::Elem]) -> Option<Matrix<F::Elem>> {
    if alg.is_zero(x) {
        None
    } else {
        Some(alg.mult_matrix(x))
    }
}

/// Is `map` a chain map?
pub fn is_chain_map<F: Field>(map: &ChainMap<F>) -> bool {
    map.chain_defects().is_empty()
}

/// A homotopy `h` with `d h + h d = map`, or `None` if none exists over the
/// algebra at hand. The solution is deterministic (free unknowns zero).
pub fn solve_homotopy<F: Field>(map: &ChainMap<F>) -> Result<Option<Homotopy<F::Elem>>> {
    let (src, tgt) = (&map.source, &map.target);
    let layout = Layout::new(src, tgt);
    let rhs = flatten(&layout, map);
    let l = system(&layout, src, tgt);
    let Some(x) = solve(src.field(), &l, &rhs)? else {
        return Ok(None);
    };
    let h = unflatten(&layout, src, tgt, &x);
    if !h.verify(map)? {
        return Err(Error::Precondition("solved homotopy fails re-substitution".into()));
    }
    Ok(Some(h))
}

pub fn is_null_homotopic<F: Field>(map: &ChainMap<F>) -> Result<bool> {
    Ok(solve_homotopy(map)?.is_some())
}

/// Are `f` and `g` chain homotopic?
pub fn homotopy_class_eq<F: Field>(f: &ChainMap<F>, g: &ChainMap<F>) -> Result<bool> {
    is_null_homotopic(&f.sub(g))
}

/// Basis of `{a ∈ A : a·id_F ≃ 0}` with a witness homotopy for each element.
#[derive(Debug, Clone)]
pub struct DerivedAnnihilator<F: Field> {
    pub basis: Vec<Vec<F::Elem>>,
    pub witnesses: Vec<Homotopy<F::Elem>>,
    /// `false` when computed over a truncated algebra: then membership is
    /// only certified over the truncation, while non-membership is exact.
    pub exact: bool,
}

impl<F: Field> DerivedAnnihilator<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether `a` lies in the computed subspace.
    pub fn contains(&self, field: &F, a: &[F::Elem]) -> bool {
        let mut span = crate::linalg::EchelonSpan::new(field, a.len());
        for v in &self.basis {
            span.insert(v);
        }
        span.contains(a)
    }
}

pub fn derived_annihilator<F: Field>(c: &FreeComplex<F>) -> Result<DerivedAnnihilator<F>> {
    let alg = c.algebra();
    let f = alg.field();
    let dim = alg.dim();
    let layout = Layout::new(c, c);
    let l = system(&layout, c, c);
    // [a·id | -L] with the a-coordinates first.
    let mut m = Matrix::zeros(f, layout.n_equations, dim + layout.n_unknowns);
    for i in 0..=layout.top {
        let r = c.rank(i);
        for g in 0..r {
            for b in 0..dim {
                let row = layout.equations[i] + (g * r + g) * dim + b;
                m.set(row, b, f.one());
            }
        }
    }
    for row in 0..l.rows() {
        for col in 0..l.cols() {
            let v = l.get(row, col);
            if !f.is_zero(v) {
                m.set(row, dim + col, f.neg(v));
            }
        }
    }
    let solver = ProjectedSolver::new(f, &m, dim)?;
    let mut basis = Vec::new();
    let mut witnesses = Vec::new();
    for a in solver.projection() {
        let h = unflatten(&layout, c, c, &solver.complete(a));
        basis.push(a.clone());
        witnesses.push(h);
    }
    Ok(DerivedAnnihilator {
        basis,
        witnesses,
        exact: !alg.is_truncated(),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{ArtinAlgebra, GradedMonomialAlgebra};
    use crate::field::PrimeField;
    use crate::koszul::koszul;

    fn artin(vars: &[&str], ideal: &[&str]) -> Arc<ArtinAlgebra<PrimeField>> {
        let f = PrimeField::new(101).unwrap();
        Arc::new(
            GradedMonomialAlgebra::parse(vars.iter().map(|s| s.to_string()).collect(), ideal, 12)
                .unwrap()
                .artinize(&f)
                .unwrap(),
        )
    }

    #[test]
    fn single_free_module_has_zero_annihilator() {
        let a = artin(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let c = FreeComplex::new(a.clone(), 1, vec![]).unwrap();
        let ann = derived_annihilator(&c).unwrap();
        assert!(ann.basis.is_empty());
        let x = a.parse_element("x").unwrap();
        assert!(!is_null_homotopic(&ChainMap::scalar(&c, &x)).unwrap());
        assert!(homotopy_class_eq(&ChainMap::identity(&c), &ChainMap::identity(&c)).unwrap());
    }

    #[test]
    fn witnesses_verify_and_span_an_ideal() {
        let a = artin(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let x = a.parse_element("x").unwrap();
        let k = koszul(&a, &[x]).unwrap();
        let ann = derived_annihilator(&k.complex).unwrap();
        assert!(ann.exact);
        for (v, h) in ann.basis.iter().zip(&ann.witnesses) {
            assert!(h.verify(&ChainMap::scalar(&k.complex, v)).unwrap());
            for b in 0..a.dim() {
                assert!(ann.contains(a.field(), &a.mul(v, &a.basis_element(b))));
            }
        }
    }

    #[test]
    fn solver_finds_koszul_homotopies() {
        let a = artin(&["x", "y", "z"], &["x^2", "y^2", "z^2"]);
        let xs: Vec<_> = ["x", "y"].iter().map(|s| a.parse_element(s).unwrap()).collect();
        let k = koszul(&a, &xs).unwrap();
        for x in &xs {
            let h = solve_homotopy(&ChainMap::scalar(&k.complex, x)).unwrap().unwrap();
            assert!(h.verify(&ChainMap::scalar(&k.complex, x)).unwrap());
        }
        let z = a.parse_element("z").unwrap();
        assert!(solve_homotopy(&ChainMap::scalar(&k.complex, &z)).unwrap().is_none());
    }
}
