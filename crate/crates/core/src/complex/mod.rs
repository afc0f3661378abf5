//! Bounded complexes `0 -> F_top -> ... -> F_0 -> 0` of finite free modules
//! over an [`ArtinAlgebra`], chain maps between them, and their homology.

mod matrix;

pub use matrix::AlgMatrix;

use std::sync::Arc;

use crate::algebra::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_basis, Matrix};
use crate::module::FiniteModule;

#[derive(Debug, Clone)]
pub struct FreeComplex<F: Field> {
    alg: Arc<ArtinAlgebra<F>>,
    ranks: Vec<usize>,
    /// `diffs[i]` is `d_{i+1}: F_{i+1} -> F_i`.
    diffs: Vec<AlgMatrix<F::Elem>>,
    /// Internal degrees of the generators, for complexes over graded algebras.
    shifts: Option<Vec<Vec<i64>>>,
    labels: Option<Vec<Vec<String>>>,
}

/// Position `(i, r, c)` where `(d_i d_{i+1})[r][c] != 0`.
pub type SquareDefect = (usize, usize, usize);

#[derive(Debug, Clone)]
pub struct HomologyModule<F: Field> {
    pub degree: usize,
    /// Cycle representatives of the basis, as `k`-vectors of `F_i`.
    pub reps: Vec<Vec<F::Elem>>,
    pub module: FiniteModule<F>,
}

impl<F: Field> HomologyModule<F> {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn nu(&self) -> usize {
        self.module.nu()
    }

    /// Dimension of the part known to agree with the untruncated homology.
    pub fn exact_dim(&self) -> usize {
        match (self.module.exact_through(), self.module.degrees()) {
            (Some(t), Some(d)) => d.iter().filter(|&&x| x <= t).count(),
            _ => self.dim(),
        }
    }

    pub fn is_truncated(&self) -> bool {
        self.module.exact_through().is_some()
    }
}

/// Homogeneous degree of a nonzero element, or `None` if it mixes degrees.
fn element_degree<F: Field>(a: &ArtinAlgebra<F>, x: &[F::Elem]) -> Option<Option<i64>> {
    let g = a.grading()?;
    let mut deg = None;
    for (i, c) in x.iter().enumerate() {
        if a.field().is_zero(c) {
            continue;
        }
        let d = g.degrees[i] as i64;
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return None,
            _ => {}
        }
    }
    Some(deg)
}

impl<F: Field> FreeComplex<F> {
    /// Complex with `F_0` of rank `r0` and the given differentials
    /// `d_1, d_2, ...`; shifts are inferred when the algebra is graded.
    pub fn new(alg: Arc<ArtinAlgebra<F>>, r0: usize, diffs: Vec<AlgMatrix<F::Elem>>) -> Result<Self> {
        let mut ranks = vec![r0];
        for (i, d) in diffs.iter().enumerate() {
            if d.algebra_dim() != alg.dim() {
                return Err(Error::Dimension(format!("d_{} has entries of length {}", i + 1, d.algebra_dim())));
            }
            if d.rows() != ranks[i] {
                return Err(Error::Dimension(format!(
                    "d_{} has {} rows but F_{i} has rank {}",
                    i + 1,
                    d.rows(),
                    ranks[i]
                )));
            }
            ranks.push(d.cols());
        }
        let mut c = FreeComplex {
            alg,
            ranks,
            diffs,
            shifts: None,
            labels: None,
        };
        c.shifts = c.infer_shifts();
        if c.alg.is_truncated() && c.shifts.is_none() {
            return Err(Error::InvalidComplex(
                "differentials over a truncated algebra must be homogeneous".into(),
            ));
        }
        Ok(c)
    }

    /// Same complex with prescribed generator degrees (checked for homogeneity).
    pub fn with_shifts(mut self, shifts: Vec<Vec<i64>>) -> Result<Self> {
        if shifts.len() != self.ranks.len() || shifts.iter().zip(&self.ranks).any(|(s, &r)| s.len() != r) {
            return Err(Error::Dimension("shift table does not match ranks".into()));
        }
        for (i, d) in self.diffs.iter().enumerate() {
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    match element_degree(&self.alg, d.entry(r, c)) {
                        Some(None) => {}
                        Some(Some(e)) if e == shifts[i + 1][c] - shifts[i][r] => {}
                        _ => {
                            return Err(Error::InvalidComplex(format!(
                                "entry ({r},{c}) of d_{} is not of degree {}",
                                i + 1,
                                shifts[i + 1][c] - shifts[i][r]
                            )))
                        }
                    }
                }
            }
        }
        self.shifts = Some(shifts);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.ranks.len() || labels.iter().zip(&self.ranks).any(|(l, &r)| l.len() != r) {
            return Err(Error::Dimension("label table does not match ranks".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    fn infer_shifts(&self) -> Option<Vec<Vec<i64>>> {
        self.alg.grading()?;
        let mut shifts: Vec<Vec<Option<i64>>> = self.ranks.iter().map(|&r| vec![None; r]).collect();
        for i in 0..self.ranks.len() {
            for g in 0..self.ranks[i] {
                if shifts[i][g].is_some() {
                    continue;
                }
                shifts[i][g] = Some(0);
                let mut stack = vec![(i, g)];
                while let Some((j, h)) = stack.pop() {
                    let s = shifts[j][h].expect("visited");
                    // Neighbours below: entries of column h of d_j.
                    if j > 0 {
                        let d = &self.diffs[j - 1];
                        for r in 0..d.rows() {
                            let deg = element_degree(&self.alg, d.entry(r, h))?;
                            if let Some(e) = deg {
                                let want = s - e;
                                match shifts[j - 1][r] {
                                    None => {
                                        shifts[j - 1][r] = Some(want);
                                        stack.push((j - 1, r));
                                    }
                                    Some(x) if x != want => return None,
                                    _ => {}
                                }
                            }
                        }
                    }
                    // Neighbours above: entries of row h of d_{j+1}.
                    if j < self.diffs.len() {
                        let d = &self.diffs[j];
                        for c in 0..d.cols() {
                            let deg = element_degree(&self.alg, d.entry(h, c))?;
                            if let Some(e) = deg {
                                let want = s + e;
                                match shifts[j + 1][c] {
                                    None => {
                                        shifts[j + 1][c] = Some(want);
                                        stack.push((j + 1, c));
                                    }
                                    Some(x) if x != want => return None,
                                    _ => {}
                                }
                            }
                        }
                    }
                }
            }
        }
        Some(shifts.into_iter().map(|v| v.into_iter().map(|x| x.expect("all visited")).collect()).collect())
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra<F>> {
        &self.alg
    }

    pub fn field(&self) -> &F {
        self.alg.field()
    }

    /// Highest degree carrying a module (possibly of rank zero).
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn shifts(&self) -> Option<&[Vec<i64>]> {
        self.shifts.as_deref()
    }

    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    /// `d_i: F_i -> F_{i-1}`; zero outside the stored range.
    pub fn d(&self, i: usize) -> AlgMatrix<F::Elem> {
        if i >= 1 && i <= self.diffs.len() {
            self.diffs[i - 1].clone()
        } else {
            AlgMatrix::zeros(&self.alg, if i == 0 { 0 } else { self.rank(i - 1) }, self.rank(i))
        }
    }

    pub fn differentials(&self) -> &[AlgMatrix<F::Elem>] {
        &self.diffs
    }

    /// Every nonzero entry of `d_i d_{i+1}`.
    pub fn square_defects(&self) -> Vec<SquareDefect> {
        let mut out = Vec::new();
        for i in 1..self.diffs.len() {
            let p = self.diffs[i - 1].mul(&self.alg, &self.diffs[i]);
            for r in 0..p.rows() {
                for c in 0..p.cols() {
                    if !self.alg.is_zero(p.entry(r, c)) {
                        out.push((i, r, c));
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        match self.square_defects().first() {
            None => Ok(()),
            Some(&(i, r, c)) => Err(Error::InvalidComplex(format!(
                "d_{i} d_{} is nonzero at ({r},{c})",
                i + 1
            ))),
        }
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// `d(F) ⊆ m F`.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.entries_in_maximal_ideal(&self.alg))
    }

    /// Internal degree of each `k`-basis vector of `F_i`.
    fn k_degrees(&self, i: usize) -> Option<Vec<i64>> {
        let shifts = self.shifts.as_ref()?;
        let g = self.alg.grading()?;
        let s = shifts.get(i)?;
        Some(
            s.iter()
                .flat_map(|&sh| g.degrees.iter().map(move |&d| sh + d as i64))
                .collect(),
        )
    }

    /// Largest internal degree in which `H_i` of the truncated complex is
    /// the homology of the untruncated one.
    pub fn exact_through(&self, i: usize) -> Option<i64> {
        let t = self.alg.truncation()? as i64;
        let shifts = self.shifts.as_ref()?;
        let lo = [i.checked_sub(1), Some(i), Some(i + 1)]
            .into_iter()
            .flatten()
            .filter_map(|j| shifts.get(j))
            .flatten()
            .copied()
            .min();
        Some(t + lo.unwrap_or(0))
    }

    /// `H_i` with its induced module structure.
    pub fn homology(&self, i: usize) -> Result<HomologyModule<F>> {
        let f = self.field().clone();
        let n = self.rank(i) * self.alg.dim();
        let free = {
            let m = FiniteModule::free(&self.alg, self.rank(i));
            match self.k_degrees(i) {
                Some(d) => m.with_degrees(d, self.exact_through(i)),
                None => m,
            }
        };
        let dk = self.d(i).k_matrix(&self.alg);
        let up = self.d(i + 1).k_matrix(&self.alg);
        let boundaries = up.columns();
        let (cycles, degs) = match self.k_degrees(i) {
            Some(kd) => {
                // Homogeneous cycles, degree by degree.
                let mut all_degs: Vec<i64> = kd.clone();
                all_degs.sort_unstable();
                all_degs.dedup();
                let mut cycles = Vec::new();
                let mut degs = Vec::new();
                for t in all_degs {
                    let cols: Vec<usize> = (0..n).filter(|&j| kd[j] == t).collect();
                    let sub = dk.select_columns(&cols);
                    for v in kernel_basis(&f, &sub) {
                        let mut full = vec![f.zero(); n];
                        for (k, &j) in cols.iter().enumerate() {
                            full[j] = v[k].clone();
                        }
                        cycles.push(full);
                        degs.push(t);
                    }
                }
                (cycles, Some(degs))
            }
            None => (kernel_basis(&f, &dk), None),
        };
        let (module, reps) = free.subquotient(&cycles, degs.as_deref(), &boundaries);
        Ok(HomologyModule { degree: i, reps, module })
    }

    pub fn homology_all(&self) -> Result<Vec<HomologyModule<F>>> {
        (0..=self.top()).map(|i| self.homology(i)).collect()
    }

    /// Class of a cycle in the basis of [`homology`](Self::homology)`(i)`.
    pub fn homology_class(&self, h: &HomologyModule<F>, z: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let f = self.field();
        let boundaries = self.d(h.degree + 1).k_matrix(&self.alg).columns();
        let mut span = crate::linalg::EchelonSpan::new(f, z.len());
        for b in &boundaries {
            span.insert(b);
        }
        let mut all = span.rows();
        let skip = all.len();
        all.extend(h.reps.iter().cloned());
        let coords = crate::linalg::Coordinates::new(f, z.len(), &all)?;
        let c = coords
            .coords(z)
            .ok_or_else(|| Error::Precondition("vector is not a cycle modulo boundaries".into()))?;
        Ok(c[skip..].to_vec())
    }

    /// `dim_k H_i(F ⊗ k)`, for every `i`.
    pub fn betti(&self) -> Vec<usize> {
        let f = self.field();
        let rk: Vec<usize> = (0..=self.top() + 1).map(|i| self.d(i).mod_m(&self.alg).rank(f)).collect();
        (0..=self.top()).map(|i| self.rank(i) - rk[i] - rk[i + 1]).collect()
    }

    /// Largest `i` with a nonzero Betti number; `None` for contractible complexes.
    pub fn proj_dim(&self) -> Option<usize> {
        self.betti().iter().rposition(|&b| b != 0)
    }

    /// `(inf, sup)` of the nonvanishing homology, `None` when acyclic.
    ///
    /// The infimum agrees with that of `F ⊗ k` and is therefore exact on any
    /// backend; the supremum is refused over a truncated algebra when the
    /// top homology cannot be seen inside the exact window.
    pub fn inf_sup(&self) -> Result<Option<(usize, usize)>> {
        let betti = self.betti();
        let Some(inf) = betti.iter().position(|&b| b != 0) else {
            return Ok(None);
        };
        for i in (inf..=self.top()).rev() {
            let h = self.homology(i)?;
            if h.exact_dim() > 0 {
                return Ok(Some((inf, i)));
            }
            if h.is_truncated() && i > inf {
                return Err(Error::TruncationInsufficient(format!(
                    "H_{i} vanishes through degree {} but may not vanish above it",
                    h.module.exact_through().unwrap_or_default()
                )));
            }
        }
        Ok(Some((inf, inf)))
    }

    /// `Σ (-1)^i dim_k H_i` (Artinian backends only).
    pub fn euler_characteristic_homology(&self) -> Result<i64> {
        if self.alg.is_truncated() {
            return Err(Error::TruncationInsufficient("homology of a truncated complex is not finite".into()));
        }
        let mut s = 0i64;
        for i in 0..=self.top() {
            let d = self.homology(i)?.dim() as i64;
            s += if i % 2 == 0 { d } else { -d };
        }
        Ok(s)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same_algebra(other)?;
        let top = self.top().max(other.top());
        let r0 = self.rank(0) + other.rank(0);
        let diffs = (1..=top).map(|i| self.d(i).block_diag(&self.alg, &other.d(i))).collect();
        let mut c = FreeComplex::new(self.alg.clone(), r0, diffs)?;
        if let (Some(a), Some(b)) = (&self.shifts, &other.shifts) {
            let s = (0..=top)
                .map(|i| {
                    let mut v = a.get(i).cloned().unwrap_or_default();
                    v.extend(b.get(i).cloned().unwrap_or_default());
                    v
                })
                .collect();
            c = c.with_shifts(s)?;
        }
        Ok(c)
    }

    /// `F^{⊕ n}`.
    pub fn power(&self, n: usize) -> Result<Self> {
        let mut c = FreeComplex::new(self.alg.clone(), 0, Vec::new())?;
        for _ in 0..n {
            c = c.direct_sum(self)?;
        }
        Ok(c)
    }

    /// `F[n]` with `F[n]_i = F_{i-n}` and differential `(-1)^n d`.
    pub fn shift(&self, n: usize) -> Result<Self> {
        let f = self.field();
        let sign = if n % 2 == 0 { f.one() } else { f.neg(&f.one()) };
        // F[n]_j = 0 below n, so d_1..d_{n-1} are empty and d_n: F_0 -> 0.
        let mut diffs: Vec<AlgMatrix<F::Elem>> = (1..n).map(|_| AlgMatrix::zeros(&self.alg, 0, 0)).collect();
        if n > 0 {
            diffs.push(AlgMatrix::zeros(&self.alg, 0, self.rank(0)));
        }
        diffs.extend(self.diffs.iter().map(|d| d.scale_k(f, &sign)));
        let r0 = if n == 0 { self.rank(0) } else { 0 };
        let mut c = FreeComplex::new(self.alg.clone(), r0, diffs)?;
        if let Some(s) = &self.shifts {
            let mut v = vec![Vec::new(); n];
            v.extend(s.iter().cloned());
            c = c.with_shifts(v)?;
        }
        Ok(c)
    }

    /// Mapping cone with `d(x, y) = (-d_F x, f(x) + d_G y)`.
    pub fn cone(map: &ChainMap<F>) -> Result<Self> {
        let (src, tgt) = (&map.source, &map.target);
        let alg = &src.alg;
        let f = alg.field();
        let top = (src.top() + 1).max(tgt.top());
        let mut diffs = Vec::new();
        for i in 1..=top {
            // cone_i = F_{i-1} ⊕ G_i -> cone_{i-1} = F_{i-2} ⊕ G_{i-1}.
            let df = if i >= 2 {
                src.d(i - 1).neg(f)
            } else {
                AlgMatrix::zeros(alg, 0, src.rank(i - 1))
            };
            let fmap = map.component(i - 1);
            let zero = AlgMatrix::zeros(alg, df.rows(), tgt.rank(i));
            let dg = tgt.d(i);
            diffs.push(AlgMatrix::blocks(&df, &zero, &fmap, &dg)?);
        }
        let mut c = FreeComplex::new(alg.clone(), tgt.rank(0), diffs)?;
        if let (Some(a), Some(b)) = (&src.shifts, &tgt.shifts) {
            let s = (0..=top)
                .map(|i| {
                    let mut v = if i >= 1 { a.get(i - 1).cloned().unwrap_or_default() } else { Vec::new() };
                    v.extend(b.get(i).cloned().unwrap_or_default());
                    v
                })
                .collect();
            // Maps of nonzero internal degree keep the inferred shifts.
            if let Ok(shifted) = c.clone().with_shifts(s) {
                c = shifted;
            }
        }
        Ok(c)
    }

    /// The complex of `k`-vector spaces `F ⊗ k`.
    pub fn mod_m(&self) -> Vec<Matrix<F::Elem>> {
        self.diffs.iter().map(|d| d.mod_m(&self.alg)).collect()
    }

    pub(crate) fn check_same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg {
            Ok(())
        } else {
            Err(Error::Dimension("complexes over different algebras".into()))
        }
    }

    /// Is `map` a quasi-isomorphism?
    ///
    /// A bounded free complex over a local ring is acyclic exactly when it
    /// is contractible, i.e. when all its Betti numbers vanish, so the test
    /// is exact on every backend.
    pub fn is_quasi_iso(map: &ChainMap<F>) -> Result<bool> {
        let c = FreeComplex::cone(map)?;
        Ok(c.betti().iter().all(|&b| b == 0))
    }
}

/// Degree-preserving map of complexes `f: F -> G`.
#[derive(Debug, Clone)]
pub struct ChainMap<F: Field> {
    pub source: FreeComplex<F>,
    pub target: FreeComplex<F>,
    /// `maps[i]: F_i -> G_i`, shape `rank G_i x rank F_i`.
    maps: Vec<AlgMatrix<F::Elem>>,
}

impl<F: Field> ChainMap<F> {
    /// Wraps the components; missing trailing components are zero. Does not
    /// check the chain-map identity; see [`validate`](Self::validate).
    pub fn new(source: &FreeComplex<F>, target: &FreeComplex<F>, mut maps: Vec<AlgMatrix<F::Elem>>) -> Result<Self> {
        source.check_same_algebra(target)?;
        let top = source.top().max(target.top());
        if maps.len() > top + 1 {
            return Err(Error::Dimension(format!("{} components for complexes of length {top}", maps.len())));
        }
        while maps.len() <= top {
            let i = maps.len();
            maps.push(AlgMatrix::zeros(&source.alg, target.rank(i), source.rank(i)));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != target.rank(i) || m.cols() != source.rank(i) {
                return Err(Error::Dimension(format!(
                    "component {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.rank(i),
                    source.rank(i)
                )));
            }
        }
        Ok(ChainMap {
            source: source.clone(),
            target: target.clone(),
            maps,
        })
    }

    pub fn identity(c: &FreeComplex<F>) -> Self {
        let maps = (0..=c.top()).map(|i| AlgMatrix::identity(&c.alg, c.rank(i))).collect();
        ChainMap::new(c, c, maps).expect("shapes")
    }

    /// Multiplication by an algebra element on every `F_i`.
    pub fn scalar(c: &FreeComplex<F>, a: &[F::Elem]) -> Self {
        let maps = (0..=c.top()).map(|i| AlgMatrix::scalar_diag(&c.alg, c.rank(i), a)).collect();
        ChainMap::new(c, c, maps).expect("shapes")
    }

    pub fn zero(source: &FreeComplex<F>, target: &FreeComplex<F>) -> Result<Self> {
        ChainMap::new(source, target, Vec::new())
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra<F>> {
        &self.source.alg
    }

    /// `f_i`, zero outside the range.
    pub fn component(&self, i: usize) -> AlgMatrix<F::Elem> {
        match self.maps.get(i) {
            Some(m) => m.clone(),
            None => AlgMatrix::zeros(&self.source.alg, self.target.rank(i), self.source.rank(i)),
        }
    }

    pub fn components(&self) -> &[AlgMatrix<F::Elem>] {
        &self.maps
    }

    /// Degrees `i` where `d^G_i f_i != f_{i-1} d^F_i`.
    pub fn chain_defects(&self) -> Vec<usize> {
        let a = &self.source.alg;
        let f = a.field();
        (1..self.maps.len())
            .filter(|&i| {
                let lhs = self.target.d(i).mul(a, &self.maps[i]);
                let rhs = self.maps[i - 1].mul(a, &self.source.d(i));
                !lhs.sub(f, &rhs).is_zero(f)
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        match self.chain_defects().first() {
            None => Ok(()),
            Some(i) => Err(Error::NotChainMap(format!("d f != f d in degree {i}"))),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.source.field();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(f, b)).collect();
        ChainMap { maps, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.source.field();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(f, b)).collect();
        ChainMap { maps, ..self.clone() }
    }

    pub fn scale(&self, a: &[F::Elem]) -> Self {
        let alg = self.source.alg.clone();
        let maps = self.maps.iter().map(|m| m.scale(&alg, a)).collect();
        ChainMap { maps, ..self.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let a = &self.source.alg;
        let top = self.maps.len().max(other.maps.len());
        let maps = (0..top).map(|i| self.component(i).mul(a, &other.component(i))).collect();
        ChainMap::new(&other.source, &self.target, maps)
    }

    pub fn is_zero(&self) -> bool {
        let f = self.source.field();
        self.maps.iter().all(|m| m.is_zero(f))
    }

    /// Map induced on `H_i`, in the bases chosen by [`FreeComplex::homology`].
    pub fn on_homology(&self, i: usize, hs: &HomologyModule<F>, ht: &HomologyModule<F>) -> Result<Matrix<F::Elem>> {
        let a = &self.source.alg;
        let f = a.field();
        let comp = self.component(i);
        let cols = hs
            .reps
            .iter()
            .map(|z| self.target.homology_class(ht, &comp.apply(a, z)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(ht.dim(), &cols, f.zero()))
    }

    /// Residue matrices `f_i ⊗ k`.
    pub fn mod_m(&self) -> Vec<Matrix<F::Elem>> {
        self.maps.iter().map(|m| m.mod_m(&self.source.alg)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedMonomialAlgebra;
    use crate::field::PrimeField;

    fn alg(vars: &[&str], ideal: &[&str], d: u32) -> Arc<ArtinAlgebra<PrimeField>> {
        let f = PrimeField::new(101).unwrap();
        Arc::new(
            GradedMonomialAlgebra::parse(vars.iter().map(|s| s.to_string()).collect(), ideal, d)
                .unwrap()
                .truncate(&f)
                .unwrap(),
        )
    }

    fn plane() -> Arc<ArtinAlgebra<PrimeField>> {
        alg(&["x", "y"], &["x^2", "x*y", "y^2"], 6)
    }

    #[test]
    fn two_term_complex_homology() {
        let a = plane();
        // A --[y, -x]^T--> A^2 --[x, y]--> A over k[x,y]/(x,y)^2.
        let d1 = AlgMatrix::parse_rows(&a, &[&["x", "y"]]).unwrap();
        let d2 = AlgMatrix::parse_rows(&a, &[&["y"], &["-x"]]).unwrap();
        let c = FreeComplex::new(a.clone(), 1, vec![d1, d2]).unwrap().validated().unwrap();
        assert!(c.is_minimal());
        assert_eq!(c.betti(), vec![1, 2, 1]);
        let h0 = c.homology(0).unwrap();
        assert_eq!(h0.dim(), 1);
        // (1 - 2 + 1) * dim A = 0.
        assert_eq!(c.euler_characteristic_homology().unwrap(), 0);
    }

    #[test]
    fn planted_square_defect() {
        let a = plane();
        let d1 = AlgMatrix::parse_rows(&a, &[&["1"]]).unwrap();
        let d2 = AlgMatrix::parse_rows(&a, &[&["1"]]).unwrap();
        let c = FreeComplex::new(a, 1, vec![d1, d2]).unwrap();
        assert_eq!(c.square_defects(), vec![(1, 0, 0)]);
        assert!(c.validate().is_err());
    }

    #[test]
    fn identity_complex_is_acyclic_and_contractible() {
        let a = plane();
        let d1 = AlgMatrix::identity(&a, 1);
        let c = FreeComplex::new(a, 1, vec![d1]).unwrap();
        assert!(!c.is_minimal());
        assert_eq!(c.betti(), vec![0, 0]);
        assert_eq!(c.homology(0).unwrap().dim(), 0);
        assert_eq!(c.homology(1).unwrap().dim(), 0);
        assert_eq!(c.inf_sup().unwrap(), None);
        assert_eq!(c.proj_dim(), None);
    }

    #[test]
    fn quasi_isomorphisms() {
        let a = plane();
        let d1 = AlgMatrix::parse_rows(&a, &[&["x", "y"]]).unwrap();
        let c = FreeComplex::new(a.clone(), 1, vec![d1]).unwrap();
        assert!(FreeComplex::is_quasi_iso(&ChainMap::identity(&c)).unwrap());
        assert!(!FreeComplex::is_quasi_iso(&ChainMap::zero(&c, &c).unwrap()).unwrap());
        let two = c.direct_sum(&c).unwrap();
        assert!(FreeComplex::is_quasi_iso(&ChainMap::identity(&two)).unwrap());
    }

    #[test]
    fn cone_is_a_complex() {
        let a = plane();
        let d1 = AlgMatrix::parse_rows(&a, &[&["x", "y"]]).unwrap();
        let c = FreeComplex::new(a.clone(), 1, vec![d1]).unwrap();
        let x = a.parse_element("x").unwrap();
        let cone = FreeComplex::cone(&ChainMap::scalar(&c, &x)).unwrap();
        cone.validate().unwrap();
        assert_eq!(cone.ranks(), &[1, 3, 2]);
    }

    #[test]
    fn shift_moves_homology() {
        let a = plane();
        let d1 = AlgMatrix::parse_rows(&a, &[&["x", "y"]]).unwrap();
        let c = FreeComplex::new(a.clone(), 1, vec![d1]).unwrap();
        let s = c.shift(2).unwrap();
        s.validate().unwrap();
        assert_eq!(s.betti(), vec![0, 0, 1, 2]);
        assert_eq!(s.homology(2).unwrap().dim(), c.homology(0).unwrap().dim());
    }

    #[test]
    fn truncated_example_homology_window() {
        let a = alg(&["x", "y"], &["x^2", "x*y"], 6);
        let d1 = AlgMatrix::parse_rows(&a, &[&["x", "y"]]).unwrap();
        let c = FreeComplex::new(a.clone(), 1, vec![d1]).unwrap();
        assert_eq!(c.shifts().unwrap(), &[vec![0], vec![1, 1]]);
        let h0 = c.homology(0).unwrap();
        assert_eq!(h0.dim(), 1);
        assert_eq!(c.inf_sup().unwrap(), Some((0, 1)));
    }
}
