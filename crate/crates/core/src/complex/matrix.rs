use crate::algebra::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// Matrix with entries in an [`ArtinAlgebra`], stored as a flat array of
/// coordinate vectors (`entry (r, c)` occupies `(r*cols + c)*dim ..`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgMatrix<E> {
    rows: usize,
    cols: usize,
    adim: usize,
    data: Vec<E>,
}

impl<E: Clone> AlgMatrix<E> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn algebra_dim(&self) -> usize {
        self.adim
    }

    pub fn entry(&self, r: usize, c: usize) -> &[E] {
        let s = (r * self.cols + c) * self.adim;
        &self.data[s..s + self.adim]
    }

    pub fn set_entry(&mut self, r: usize, c: usize, v: &[E]) {
        assert_eq!(v.len(), self.adim);
        let s = (r * self.cols + c) * self.adim;
        self.data[s..s + self.adim].clone_from_slice(v);
    }

    pub fn transpose(&self) -> Self {
        let mut out = AlgMatrix {
            rows: self.cols,
            cols: self.rows,
            adim: self.adim,
            data: self.data.clone(),
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set_entry(c, r, self.entry(r, c));
            }
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len() * self.adim);
        for &r in rows {
            for &c in cols {
                data.extend_from_slice(self.entry(r, c));
            }
        }
        AlgMatrix {
            rows: rows.len(),
            cols: cols.len(),
            adim: self.adim,
            data,
        }
    }
}

impl<E: Clone + PartialEq> AlgMatrix<E> {
    pub fn zeros<F: Field<Elem = E>>(a: &ArtinAlgebra<F>, rows: usize, cols: usize) -> Self {
        AlgMatrix {
            rows,
            cols,
            adim: a.dim(),
            data: vec![a.field().zero(); rows * cols * a.dim()],
        }
    }

    pub fn identity<F: Field<Elem = E>>(a: &ArtinAlgebra<F>, n: usize) -> Self {
        AlgMatrix::scalar_diag(a, n, &a.one())
    }

    /// `n x n` diagonal matrix with `x` on the diagonal.
    pub fn scalar_diag<F: Field<Elem = E>>(a: &ArtinAlgebra<F>, n: usize, x: &[E]) -> Self {
        let mut m = AlgMatrix::zeros(a, n, n);
        for i in 0..n {
            m.set_entry(i, i, x);
        }
        m
    }

    pub fn from_entries<F: Field<Elem = E>>(a: &ArtinAlgebra<F>, rows: usize, cols: usize, entries: Vec<Vec<E>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        let mut data = Vec::with_capacity(rows * cols * a.dim());
        for e in entries {
            if e.len() != a.dim() {
                return Err(Error::Dimension(format!("entry of length {} in algebra of dim {}", e.len(), a.dim())));
            }
            data.extend(e);
        }
        Ok(AlgMatrix {
            rows,
            cols,
            adim: a.dim(),
            data,
        })
    }

    /// Parses row-major entry strings.
    pub fn parse<F: Field<Elem = E>>(a: &ArtinAlgebra<F>, rows: &[Vec<String>]) -> Result<Self> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nr * nc);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != nc {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {nc}", r.len())));
            }
            for s in r {
                entries.push(a.parse_element(s)?);
            }
        }
        AlgMatrix::from_entries(a, nr, nc, entries)
    }

    /// Parses a matrix given as rows of strings; convenience for literals.
    pub fn parse_rows<F: Field<Elem = E>>(a: &ArtinAlgebra<F>, rows: &[&[&str]]) -> Result<Self> {
        let owned: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        AlgMatrix::parse(a, &owned)
    }

    /// Lifts a matrix over the residue field.
    pub fn from_scalars<F: Field<Elem = E>>(a: &ArtinAlgebra<F>, m: &Matrix<E>) -> Self {
        let mut out = AlgMatrix::zeros(a, m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set_entry(r, c, &a.scalar(m.get(r, c)));
            }
        }
        out
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape");
        AlgMatrix {
            data: self.data.iter().zip(&other.data).map(|(x, y)| f.add(x, y)).collect(),
            ..self.clone()
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape");
        AlgMatrix {
            data: self.data.iter().zip(&other.data).map(|(x, y)| f.sub(x, y)).collect(),
            ..self.clone()
        }
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        AlgMatrix {
            data: self.data.iter().map(|x| f.neg(x)).collect(),
            ..self.clone()
        }
    }

    pub fn scale_k<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        AlgMatrix {
            data: self.data.iter().map(|x| f.mul(c, x)).collect(),
            ..self.clone()
        }
    }

    /// Entrywise product with an algebra element.
    pub fn scale<F: Field<Elem = E>>(&self, a: &ArtinAlgebra<F>, x: &[E]) -> Self {
        let mut out = self.clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set_entry(r, c, &a.mul(x, self.entry(r, c)));
            }
        }
        out
    }

    pub fn mul<F: Field<Elem = E>>(&self, a: &ArtinAlgebra<F>, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul shape {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let f = a.field();
        let mut out = AlgMatrix::zeros(a, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = self.entry(r, k);
                if a.is_zero(x) {
                    continue;
                }
                for c in 0..other.cols {
                    let y = other.entry(k, c);
                    if a.is_zero(y) {
                        continue;
                    }
                    let p = a.mul(x, y);
                    let s = (r * out.cols + c) * out.adim;
                    f.axpy(&mut out.data[s..s + out.adim], &f.one(), &p);
                }
            }
        }
        out
    }

    /// Applies the matrix to a free-module vector (`cols` blocks of length `dim`).
    pub fn apply<F: Field<Elem = E>>(&self, a: &ArtinAlgebra<F>, v: &[E]) -> Vec<E> {
        let d = self.adim;
        assert_eq!(v.len(), self.cols * d, "apply length");
        let f = a.field();
        let mut out = vec![f.zero(); self.rows * d];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.entry(r, c);
                let y = &v[c * d..(c + 1) * d];
                if a.is_zero(x) || a.is_zero(y) {
                    continue;
                }
                let p = a.mul(x, y);
                f.axpy(&mut out[r * d..(r + 1) * d], &f.one(), &p);
            }
        }
        out
    }

    pub fn entries_in_maximal_ideal<F: Field<Elem = E>>(&self, a: &ArtinAlgebra<F>) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| a.in_maximal_ideal(self.entry(r, c))))
    }

    /// Residue matrix over `k`.
    pub fn mod_m<F: Field<Elem = E>>(&self, a: &ArtinAlgebra<F>) -> Matrix<E> {
        let mut m = Matrix::zeros(a.field(), self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, a.residue(self.entry(r, c)));
            }
        }
        m
    }

    /// The `k`-linear map on `A^cols -> A^rows`, indexed `(generator, basis)`.
    pub fn k_matrix<F: Field<Elem = E>>(&self, a: &ArtinAlgebra<F>) -> Matrix<E> {
        let d = self.adim;
        let f = a.field();
        let mut m = Matrix::zeros(f, self.rows * d, self.cols * d);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.entry(r, c);
                if a.is_zero(x) {
                    continue;
                }
                for b in 0..d {
                    let p = a.mul(x, &a.basis_element(b));
                    for (k, v) in p.into_iter().enumerate() {
                        if !f.is_zero(&v) {
                            m.set(r * d + k, c * d + b, v);
                        }
                    }
                }
            }
        }
        m
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            let w = self.cols * self.adim;
            data.extend_from_slice(&self.data[r * w..(r + 1) * w]);
            let w2 = other.cols * other.adim;
            data.extend_from_slice(&other.data[r * w2..(r + 1) * w2]);
        }
        Ok(AlgMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            adim: self.adim,
            data,
        })
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(AlgMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            adim: self.adim,
            data,
        })
    }

    /// `[[a, b], [c, d]]`.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    pub fn block_diag<F: Field<Elem = E>>(&self, alg: &ArtinAlgebra<F>, other: &Self) -> Self {
        let tr = AlgMatrix::zeros(alg, self.rows, other.cols);
        let bl = AlgMatrix::zeros(alg, other.rows, self.cols);
        AlgMatrix::blocks(self, &tr, &bl, other).expect("shapes agree")
    }

    pub fn format<F: Field<Elem = E>>(&self, a: &ArtinAlgebra<F>) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| a.format(self.entry(r, c))).collect())
            .collect()
    }

    /// Kronecker product with the identity: `self ⊗ I_n` acting on `A^{cols*n}`
    /// with generators indexed `(c, j)`.
    pub fn kron_identity<F: Field<Elem = E>>(&self, alg: &ArtinAlgebra<F>, n: usize) -> Self {
        let mut out = AlgMatrix::zeros(alg, self.rows * n, self.cols * n);
        for r in 0..self.rows {
            for c in 0..self.cols {
                for j in 0..n {
                    out.set_entry(r * n + j, c * n + j, self.entry(r, c));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedMonomialAlgebra;
    use crate::field::PrimeField;

    fn plane() -> ArtinAlgebra<PrimeField> {
        let f = PrimeField::new(101).unwrap();
        GradedMonomialAlgebra::parse(vec!["x".into(), "y".into()], &["x^2", "x*y", "y^2"], 4)
            .unwrap()
            .artinize(&f)
            .unwrap()
    }

    #[test]
    fn k_matrix_is_a_homomorphism() {
        let a = plane();
        let f = a.field().clone();
        let m = AlgMatrix::parse_rows(&a, &[&["1 + x", "y"], &["2", "x - y"]]).unwrap();
        let n = AlgMatrix::parse_rows(&a, &[&["y", "3"], &["1", "x"]]).unwrap();
        let lhs = m.mul(&a, &n).k_matrix(&a);
        let rhs = m.k_matrix(&a).mul(&f, &n.k_matrix(&a));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_agrees_with_k_matrix() {
        let a = plane();
        let f = a.field().clone();
        let m = AlgMatrix::parse_rows(&a, &[&["1 + x", "y"]]).unwrap();
        let v: Vec<_> = [1, 2, 3, 4, 5, 6].iter().map(|&n| f.from_i64(n)).collect();
        assert_eq!(m.apply(&a, &v), m.k_matrix(&a).mul_vec(&f, &v));
    }
}
