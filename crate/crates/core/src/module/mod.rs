//! Finite-dimensional modules over an [`ArtinAlgebra`], given by the action
//! matrices of the algebra basis on a `k`-basis of the module.

mod invariants;

pub use invariants::{
    depth, dim_module, is_faithful, is_free, lemma43_freeness, poincare_truncated, Depth, Dimension, Freeness,
};

use std::sync::Arc;

use rand::Rng;

use crate::algebra::ArtinAlgebra;
use crate::complex::AlgMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Coordinates, EchelonSpan, Matrix};

#[derive(Debug, Clone)]
pub struct FiniteModule<F: Field> {
    alg: Arc<ArtinAlgebra<F>>,
    dim: usize,
    /// `actions[b]` is the matrix of multiplication by the basis element `e_b`.
    actions: Vec<Matrix<F::Elem>>,
    /// Internal degrees of the basis vectors, when known.
    degrees: Option<Vec<i64>>,
    /// For modules computed over a truncated ring: the largest internal
    /// degree in which the module agrees with the untruncated one.
    exact_through: Option<i64>,
}

impl<F: Field> FiniteModule<F> {
    pub fn new(alg: Arc<ArtinAlgebra<F>>, dim: usize, actions: Vec<Matrix<F::Elem>>) -> Result<Self> {
        if actions.len() != alg.dim() {
            return Err(Error::Dimension(format!("{} action matrices for an algebra of dim {}", actions.len(), alg.dim())));
        }
        if let Some(m) = actions.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension(format!("{}x{} action matrix on a module of dim {dim}", m.rows(), m.cols())));
        }
        Ok(FiniteModule {
            alg,
            dim,
            actions,
            degrees: None,
            exact_through: None,
        })
    }

    pub fn with_degrees(mut self, degrees: Vec<i64>, exact_through: Option<i64>) -> Self {
        assert_eq!(degrees.len(), self.dim);
        self.degrees = Some(degrees);
        self.exact_through = exact_through;
        self
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra<F>> {
        &self.alg
    }

    pub fn field(&self) -> &F {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix<F::Elem>] {
        &self.actions
    }

    pub fn degrees(&self) -> Option<&[i64]> {
        self.degrees.as_deref()
    }

    pub fn exact_through(&self) -> Option<i64> {
        self.exact_through
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Matrix of multiplication by an arbitrary algebra element.
    pub fn action_of(&self, a: &[F::Elem]) -> Matrix<F::Elem> {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim, self.dim);
        for (b, c) in a.iter().enumerate() {
            if !f.is_zero(c) {
                m = m.add(f, &self.actions[b].scaled(f, c));
            }
        }
        m
    }

    /// The free module `A^rank`, basis indexed `(generator, algebra basis)`.
    pub fn free(alg: &Arc<ArtinAlgebra<F>>, rank: usize) -> Self {
        let actions = (0..alg.dim())
            .map(|b| AlgMatrix::scalar_diag(alg, rank, &alg.basis_element(b)).k_matrix(alg))
            .collect();
        let mut m = FiniteModule::new(alg.clone(), rank * alg.dim(), actions).expect("shapes");
        if let Some(g) = alg.grading() {
            let degs = (0..rank).flat_map(|_| g.degrees.iter().map(|&d| d as i64)).collect();
            m = m.with_degrees(degs, g.truncation.map(|t| t as i64));
        }
        m
    }

    /// The residue field `k = A/m`.
    pub fn residue_field(alg: &Arc<ArtinAlgebra<F>>) -> Self {
        let f = alg.field();
        let actions = (0..alg.dim())
            .map(|b| Matrix::filled(1, 1, if b == 0 { f.one() } else { f.zero() }))
            .collect();
        FiniteModule::new(alg.clone(), 1, actions)
            .expect("shapes")
            .with_degrees(vec![0], None)
    }

    /// `A^rows / image(d)`.
    pub fn cokernel(alg: &Arc<ArtinAlgebra<F>>, d: &AlgMatrix<F::Elem>) -> Self {
        let free = FiniteModule::free(alg, d.rows());
        let image = d.k_matrix(alg).columns();
        let all: Vec<Vec<F::Elem>> = (0..free.dim).map(|i| crate::algebra::unit_vector(alg.field(), free.dim, i)).collect();
        free.subquotient(&all, free.degrees.as_deref(), &image).0
    }

    /// The subquotient `Z/B` of `self` for invariant subspaces `B ⊆ Z`,
    /// together with representatives of its basis. Representatives are the
    /// first vectors of `z` (in order) independent of `B` and the earlier ones.
    pub fn subquotient(&self, z: &[Vec<F::Elem>], zdeg: Option<&[i64]>, b: &[Vec<F::Elem>]) -> (FiniteModule<F>, Vec<Vec<F::Elem>>) {
        let f = self.field().clone();
        let mut span = EchelonSpan::new(&f, self.dim);
        for v in b {
            span.insert(v);
        }
        let b_basis = span.rows();
        let mut reps = Vec::new();
        let mut degs = Vec::new();
        for (i, v) in z.iter().enumerate() {
            if span.insert(v) {
                reps.push(v.clone());
                if let Some(d) = zdeg {
                    degs.push(d[i]);
                }
            }
        }
        let mut all = b_basis.clone();
        all.extend(reps.iter().cloned());
        let coords = Coordinates::new(&f, self.dim, &all).expect("independent");
        let skip = b_basis.len();
        let n = reps.len();
        let actions = self
            .actions
            .iter()
            .map(|act| {
                let cols: Vec<Vec<F::Elem>> = reps
                    .iter()
                    .map(|r| coords.coords_unchecked(&act.mul_vec(&f, r))[skip..].to_vec())
                    .collect();
                Matrix::from_columns(n, &cols, f.zero())
            })
            .collect();
        let mut m = FiniteModule::new(self.alg.clone(), n, actions).expect("shapes");
        if zdeg.is_some() {
            m = m.with_degrees(degs, self.exact_through);
        } else {
            m.exact_through = self.exact_through;
        }
        (m, reps)
    }

    /// Checks that the action is unital and respects the structure constants.
    pub fn validate(&self) -> Result<()> {
        let f = self.field();
        let a = &self.alg;
        if self.actions[0] != Matrix::identity(f, self.dim) {
            return Err(Error::InvalidAlgebra("the unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.actions[i].mul(f, &self.actions[j]);
                let prod = a.mul(&a.basis_element(i), &a.basis_element(j));
                if lhs != self.action_of(&prod) {
                    return Err(Error::InvalidAlgebra(format!(
                        "action of {} * {} is not the composite",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Basis of `m M`.
    pub fn m_times(&self) -> Vec<Vec<F::Elem>> {
        let mut span = EchelonSpan::new(self.field(), self.dim);
        for act in &self.actions[1..] {
            for c in act.columns() {
                span.insert(&c);
            }
        }
        span.rows()
    }

    /// Indices of standard basis vectors whose images form a basis of `M/mM`.
    pub fn minimal_generators(&self) -> Vec<usize> {
        let f = self.field();
        let mut span = EchelonSpan::new(f, self.dim);
        for v in self.m_times() {
            span.insert(&v);
        }
        (0..self.dim)
            .filter(|&i| span.insert(&crate::algebra::unit_vector(f, self.dim, i)))
            .collect()
    }

    /// `dim_k M/mM`.
    pub fn nu(&self) -> usize {
        self.dim - self.m_times().len()
    }

    /// `k`-matrix of the cover `A^ν -> M` sending the `g`-th generator to the
    /// `g`-th minimal generator.
    pub fn cover(&self) -> Matrix<F::Elem> {
        let gens = self.minimal_generators();
        let d = self.alg.dim();
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim, gens.len() * d);
        for (g, &i) in gens.iter().enumerate() {
            for b in 0..d {
                let col = self.actions[b].column(i);
                for (r, v) in col.into_iter().enumerate() {
                    m.set(r, g * d + b, v);
                }
            }
        }
        m
    }

    /// The first syzygy: kernel of the minimal cover, as a submodule of `A^ν`.
    pub fn syzygy(&self) -> FiniteModule<F> {
        let nu = self.minimal_generators().len();
        let free = FiniteModule::free(&self.alg, nu);
        let kernel = crate::linalg::kernel_basis(self.field(), &self.cover());
        free.subquotient(&kernel, None, &[]).0
    }

    /// `M ⊕ N`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let f = self.field();
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(x, y)| x.block_diag(y, f.zero()))
            .collect();
        FiniteModule::new(self.alg.clone(), self.dim + other.dim, actions).expect("shapes")
    }

    /// A module with a random basis change applied; isomorphic to `self`.
    pub fn random_conjugate<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        let f = self.field();
        let (p, pinv) = Matrix::random_invertible(f, self.dim, rng);
        let actions = self.actions.iter().map(|a| pinv.mul(f, &a.mul(f, &p))).collect();
        FiniteModule::new(self.alg.clone(), self.dim, actions).expect("shapes")
    }

    /// `A/I` for an ideal spanned (as a submodule of `A`) by `gens`.
    pub fn cyclic(alg: &Arc<ArtinAlgebra<F>>, gens: &[Vec<F::Elem>]) -> Self {
        let d = AlgMatrix::from_entries(alg, 1, gens.len(), gens.to_vec()).expect("entries");
        FiniteModule::cokernel(alg, &d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedMonomialAlgebra;
    use crate::field::PrimeField;

    fn alg(vars: &[&str], ideal: &[&str]) -> Arc<ArtinAlgebra<PrimeField>> {
        let f = PrimeField::new(101).unwrap();
        Arc::new(
            GradedMonomialAlgebra::parse(vars.iter().map(|s| s.to_string()).collect(), ideal, 12)
                .unwrap()
                .artinize(&f)
                .unwrap(),
        )
    }

    #[test]
    fn free_and_residue_modules_are_valid() {
        let a = alg(&["u"], &["u^4"]);
        let m = FiniteModule::free(&a, 2);
        m.validate().unwrap();
        assert_eq!(m.nu(), 2);
        let k = FiniteModule::residue_field(&a);
        k.validate().unwrap();
        assert_eq!(k.nu(), 1);
    }

    #[test]
    fn cyclic_quotient() {
        let a = alg(&["u"], &["u^4"]);
        let u2 = a.parse_element("u^2").unwrap();
        let m = FiniteModule::cyclic(&a, &[u2]);
        m.validate().unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.nu(), 1);
        // The syzygy of A/(u^2) is (u^2) ≅ A/(u^2), again of dim 2.
        let s = m.syzygy();
        s.validate().unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.nu(), 1);
    }
}
