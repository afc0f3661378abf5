//! Graded representations of the skew Weyl algebra `W` on `s_1..s_p`
//! (degree `+1`) and `t_1..t_p` (degree `-1`) with `s_i t_j + t_j s_i = δ_ij`,
//! the exterior model, and the lift of homotopies to a Koszul isomorphism.
//!
//! `W` itself is never built; everything is a matrix identity on a
//! representation. For a sequence `I = (i_1..i_n)`, `S_I = S_{i_1} ∘ ⋯ ∘ S_{i_n}`.

use std::sync::Arc;

use rand::Rng;

use crate::complex::{AlgMatrix, ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homotopy::Homotopy;
use crate::koszul::{koszul, subsets, KoszulComplex};
use crate::linalg::Matrix;

/// `V_0..V_top` with `S[i][j]: V_j -> V_{j+1}` and `T[i][j]: V_j -> V_{j-1}`;
/// spaces outside `0..=top` are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WModuleRep<F: Field> {
    pub field: F,
    pub p: usize,
    pub dims: Vec<usize>,
    pub s: Vec<Vec<Matrix<F::Elem>>>,
    pub t: Vec<Vec<Matrix<F::Elem>>>,
}

impl<F: Field> WModuleRep<F> {
    pub fn new(field: &F, p: usize, dims: Vec<usize>, s: Vec<Vec<Matrix<F::Elem>>>, t: Vec<Vec<Matrix<F::Elem>>>) -> Result<Self> {
        let rep = WModuleRep {
            field: field.clone(),
            p,
            dims,
            s,
            t,
        };
        rep.check_shapes()?;
        Ok(rep)
    }

    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn dim(&self, j: isize) -> usize {
        if j < 0 {
            0
        } else {
            self.dims.get(j as usize).copied().unwrap_or(0)
        }
    }

    fn check_shapes(&self) -> Result<()> {
        if self.s.len() != self.p || self.t.len() != self.p {
            return Err(Error::Dimension(format!("expected {} matrices each for s and t", self.p)));
        }
        for i in 0..self.p {
            if self.s[i].len() != self.dims.len() || self.t[i].len() != self.dims.len() {
                return Err(Error::Dimension(format!("s_{0} and t_{0} need one matrix per degree", i + 1)));
            }
            for j in 0..self.dims.len() {
                let jj = j as isize;
                let (s, t) = (&self.s[i][j], &self.t[i][j]);
                if s.rows() != self.dim(jj + 1) || s.cols() != self.dim(jj) {
                    return Err(Error::Dimension(format!("s_{} in degree {j} has the wrong shape", i + 1)));
                }
                if t.rows() != self.dim(jj - 1) || t.cols() != self.dim(jj) {
                    return Err(Error::Dimension(format!("t_{} in degree {j} has the wrong shape", i + 1)));
                }
            }
        }
        Ok(())
    }

    /// `S_i` out of degree `j`, zero-shaped outside the range.
    fn s_at(&self, i: usize, j: isize) -> Matrix<F::Elem> {
        if j < 0 || j as usize >= self.dims.len() {
            Matrix::zeros(&self.field, self.dim(j + 1), self.dim(j))
        } else {
            self.s[i][j as usize].clone()
        }
    }

    fn t_at(&self, i: usize, j: isize) -> Matrix<F::Elem> {
        if j < 0 || j as usize >= self.dims.len() {
            Matrix::zeros(&self.field, self.dim(j - 1), self.dim(j))
        } else {
            self.t[i][j as usize].clone()
        }
    }

    /// Word in the generators acting on `V_j`; letters are applied right to
    /// left, so `word[0]` is applied last. Returns the matrix and the target degree.
    pub fn word(&self, word: &[Letter], j: usize) -> (Matrix<F::Elem>, isize) {
        let f = &self.field;
        let mut deg = j as isize;
        let mut acc = Matrix::identity(f, self.dim(deg));
        for l in word.iter().rev() {
            let m = match *l {
                Letter::S(i) => {
                    let m = self.s_at(i, deg);
                    deg += 1;
                    m
                }
                Letter::T(i) => {
                    let m = self.t_at(i, deg);
                    deg -= 1;
                    m
                }
            };
            acc = m.mul(f, &acc);
        }
        (acc, deg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    S(usize),
    T(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: String,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylReport {
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl WeylReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `a b + sign·b a` on `V_j`, for words `a`, `b`.
fn graded_commutator<F: Field>(rep: &WModuleRep<F>, a: &[Letter], b: &[Letter], anti: bool, j: usize) -> Matrix<F::Elem> {
    let f = &rep.field;
    let ab: Vec<Letter> = a.iter().chain(b).copied().collect();
    let ba: Vec<Letter> = b.iter().chain(a).copied().collect();
    let (x, _) = rep.word(&ab, j);
    let (y, _) = rep.word(&ba, j);
    if anti {
        x.add(f, &y)
    } else {
        x.sub(f, &y)
    }
}

/// Checks `[s_i, t_j] = δ_ij` in every degree. With `extended`, also that
/// `s_i^2`, `[s_i, s_j]`, `t_i^2`, `[t_i, t_j]` act as zero and that
/// `s_i^2`, `[s_i, s_j]` commute with every `t_k` (and symmetrically).
pub fn check_weyl_relations<F: Field>(rep: &WModuleRep<F>, extended: bool) -> WeylReport {
    use Letter::{S, T};
    let f = &rep.field;
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut check = |name: String, j: usize, m: Matrix<F::Elem>, expect_identity: bool| {
        checked += 1;
        let ok = if expect_identity {
            m == Matrix::identity(f, m.rows())
        } else {
            m.is_zero(f)
        };
        if !ok {
            failures.push(RelationFailure { relation: name, degree: j });
        }
    };
    let p = rep.p;
    for j in 0..rep.dims.len() {
        for i in 0..p {
            for k in 0..p {
                let m = graded_commutator(rep, &[S(i)], &[T(k)], true, j);
                check(format!("[s{},t{}]", i + 1, k + 1), j, m, i == k);
            }
        }
        if !extended {
            continue;
        }
        for i in 0..p {
            for k in i..p {
                let (ss, tt) = if i == k {
                    (rep.word(&[S(i), S(i)], j).0, rep.word(&[T(i), T(i)], j).0)
                } else {
                    (
                        graded_commutator(rep, &[S(i)], &[S(k)], true, j),
                        graded_commutator(rep, &[T(i)], &[T(k)], true, j),
                    )
                };
                check(format!("[s{},s{}]", i + 1, k + 1), j, ss, false);
                check(format!("[t{},t{}]", i + 1, k + 1), j, tt, false);
                for l in 0..p {
                    let sq: Vec<Letter> = vec![S(i), S(k)];
                    let tq: Vec<Letter> = vec![T(i), T(k)];
                    let a = graded_commutator(rep, &sq, &[T(l)], false, j);
                    let a2 = graded_commutator(rep, &[S(k), S(i)], &[T(l)], false, j);
                    let b = graded_commutator(rep, &tq, &[S(l)], false, j);
                    let b2 = graded_commutator(rep, &[T(k), T(i)], &[S(l)], false, j);
                    check(format!("[s{}s{}+s{}s{},t{}]", i + 1, k + 1, k + 1, i + 1, l + 1), j, if i == k { a } else { a.add(f, &a2) }, false);
                    check(format!("[t{}t{}+t{}t{},s{}]", i + 1, k + 1, k + 1, i + 1, l + 1), j, if i == k { b } else { b.add(f, &b2) }, false);
                }
            }
        }
    }
    WeylReport { checked, failures }
}

/// `t_{op I} s_I = Σ_{J ⊆ I} (-1)^{|J|} s_J t_{op J}` and the mirrored
/// identity, in every degree, for a monotone `I` (0-based indices).
pub fn check_lemma_a1<F: Field>(rep: &WModuleRep<F>, set: &[usize]) -> bool {
    let f = &rep.field;
    let s_of = |ix: &[usize]| ix.iter().map(|&i| Letter::S(i)).collect::<Vec<_>>();
    let t_op = |ix: &[usize]| ix.iter().rev().map(|&i| Letter::T(i)).collect::<Vec<_>>();
    for j in 0..rep.dims.len() {
        let n = rep.dims[j];
        let lhs1 = rep.word(&[t_op(set), s_of(set)].concat(), j).0;
        let lhs2 = rep.word(&[s_of(set), t_op(set)].concat(), j).0;
        let mut rhs1 = Matrix::zeros(f, n, n);
        let mut rhs2 = Matrix::zeros(f, n, n);
        for k in 0..=set.len() {
            for pick in subsets(set.len(), k) {
                let sub: Vec<usize> = pick.iter().map(|&q| set[q]).collect();
                let a = rep.word(&[s_of(&sub), t_op(&sub)].concat(), j).0;
                let b = rep.word(&[t_op(&sub), s_of(&sub)].concat(), j).0;
                if k % 2 == 0 {
                    rhs1 = rhs1.add(f, &a);
                    rhs2 = rhs2.add(f, &b);
                } else {
                    rhs1 = rhs1.sub(f, &a);
                    rhs2 = rhs2.sub(f, &b);
                }
            }
        }
        if lhs1 != rhs1 || lhs2 != rhs2 {
            return false;
        }
    }
    true
}

/// The exterior algebra on `s_1..s_p` tensored with `k^{dim0}`: basis
/// `s_I ⊗ v` with `I` monotone, ordered by `I` (lexicographic) then `v`.
/// `s_i` acts by left multiplication and `t_i` as the graded derivation
/// with `t_i(s_j) = δ_ij`.
pub fn exterior_model<F: Field>(field: &F, p: usize, dim0: usize) -> WModuleRep<F> {
    let sets: Vec<Vec<Vec<usize>>> = (0..=p).map(|k| subsets(p, k)).collect();
    let dims: Vec<usize> = sets.iter().map(|s| s.len() * dim0).collect();
    let sign = |n: usize| if n % 2 == 0 { field.one() } else { field.neg(&field.one()) };
    let mut s = vec![Vec::new(); p];
    let mut t = vec![Vec::new(); p];
    for i in 0..p {
        for j in 0..=p {
            let up = if j < p { dims[j + 1] } else { 0 };
            let down = if j > 0 { dims[j - 1] } else { 0 };
            let mut sm = Matrix::zeros(field, up, dims[j]);
            let mut tm = Matrix::zeros(field, down, dims[j]);
            for (col, set) in sets[j].iter().enumerate() {
                let below = set.iter().filter(|&&l| l < i).count();
                if let Some(pos) = set.iter().position(|&l| l == i) {
                    let mut rest = set.clone();
                    rest.remove(pos);
                    let row = sets[j - 1].iter().position(|x| *x == rest).expect("listed");
                    for v in 0..dim0 {
                        tm.set(row * dim0 + v, col * dim0 + v, sign(pos));
                    }
                } else if j < p {
                    let mut more = set.clone();
                    more.insert(below, i);
                    let row = sets[j + 1].iter().position(|x| *x == more).expect("listed");
                    for v in 0..dim0 {
                        sm.set(row * dim0 + v, col * dim0 + v, sign(below));
                    }
                }
            }
            s[i].push(sm);
            t[i].push(tm);
        }
    }
    WModuleRep {
        field: field.clone(),
        p,
        dims,
        s,
        t,
    }
}

/// A random isomorphic copy: a basis change in each degree, combined with a
/// change of generators `s' = M s`, `t' = (M^{-1})^T t`.
pub fn random_graded_conjugate<F: Field, R: Rng + ?Sized>(rep: &WModuleRep<F>, rng: &mut R) -> WModuleRep<F> {
    let f = &rep.field;
    let n = rep.dims.len();
    let g: Vec<(Matrix<F::Elem>, Matrix<F::Elem>)> = rep.dims.iter().map(|&d| Matrix::random_invertible(f, d, rng)).collect();
    let (m, minv) = Matrix::random_invertible(f, rep.p, rng);
    let g_at = |j: isize| -> Matrix<F::Elem> {
        if j < 0 || j as usize >= n {
            Matrix::zeros(f, 0, 0)
        } else {
            g[j as usize].0.clone()
        }
    };
    let mut s = vec![Vec::new(); rep.p];
    let mut t = vec![Vec::new(); rep.p];
    for i in 0..rep.p {
        for j in 0..n {
            let jj = j as isize;
            let mut sm = Matrix::zeros(f, rep.dim(jj + 1), rep.dim(jj));
            let mut tm = Matrix::zeros(f, rep.dim(jj - 1), rep.dim(jj));
            for a in 0..rep.p {
                sm = sm.add(f, &rep.s[a][j].scaled(f, m.get(i, a)));
                tm = tm.add(f, &rep.t[a][j].scaled(f, minv.get(a, i)));
            }
            let ginv = &g[j].1;
            s[i].push(g_at(jj + 1).mul(f, &sm).mul(f, ginv));
            t[i].push(g_at(jj - 1).mul(f, &tm).mul(f, ginv));
        }
    }
    WModuleRep {
        field: f.clone(),
        p: rep.p,
        dims: rep.dims.clone(),
        s,
        t,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureMap<E> {
    /// `φ_j: Λ^j ⊗ V_0 -> V_j` in each degree, all bijective.
    Iso(Vec<Matrix<E>>),
    NotIso { degree: usize, reason: String },
}

/// `s_I ⊗ v ↦ S_I v`, checked to be bijective degree by degree.
pub fn structure_map<F: Field>(rep: &WModuleRep<F>) -> Result<StructureMap<F::Elem>> {
    let f = &rep.field;
    let p = rep.p;
    let d0 = rep.dim(0);
    if d0 == 0 {
        return Err(Error::Precondition("V_0 is zero".into()));
    }
    if rep.dims.iter().skip(p + 1).any(|&d| d > 0) {
        return Err(Error::Precondition(format!("nonzero space above degree {p}")));
    }
    let mut maps = Vec::new();
    for j in 0..=p {
        if rep.dim(j as isize) == 0 {
            return Ok(StructureMap::NotIso {
                degree: j,
                reason: "V_j is zero".into(),
            });
        }
        let mut cols = Vec::new();
        for set in subsets(p, j) {
            let word: Vec<Letter> = set.iter().map(|&i| Letter::S(i)).collect();
            let (m, _) = rep.word(&word, 0);
            cols.extend(m.columns());
        }
        let phi = Matrix::from_columns(rep.dim(j as isize), &cols, f.zero());
        if phi.rows() != phi.cols() {
            return Ok(StructureMap::NotIso {
                degree: j,
                reason: format!("dim V_{j} = {} but the exterior side has {}", phi.rows(), phi.cols()),
            });
        }
        if phi.rank(f) != phi.rows() {
            return Ok(StructureMap::NotIso {
                degree: j,
                reason: "not of full rank".into(),
            });
        }
        maps.push(phi);
    }
    Ok(StructureMap::Iso(maps))
}

/// The `W`-representation on `F ⊗ k` coming from homotopies `x_i = d h_i + h_i d`
/// on a minimal complex: `s_i = h_i mod m` and `t_j` is the coefficient of
/// `x_j` in `d`, read modulo `m^2` in a basis of `m/m^2` extending `x`.
pub fn rep_from_homotopies<F: Field>(c: &FreeComplex<F>, xs: &[Vec<F::Elem>], hs: &[Homotopy<F::Elem>]) -> Result<WModuleRep<F>> {
    let alg = c.algebra();
    let f = alg.field();
    if !c.is_minimal() {
        return Err(Error::Precondition("complex is not minimal".into()));
    }
    if xs.len() != hs.len() {
        return Err(Error::Dimension("one homotopy per element is needed".into()));
    }
    let basis = alg.adapted_basis(xs)?;
    let p = xs.len();
    let top = c.top();
    let dims: Vec<usize> = (0..=top).map(|j| c.rank(j)).collect();
    let mut s = vec![Vec::new(); p];
    let mut t = vec![Vec::new(); p];
    for i in 0..p {
        for j in 0..=top {
            let h = hs[i].component(c, c, j);
            s[i].push(h.mod_m(alg));
            let d = c.d(j);
            let mut tm = Matrix::zeros(f, d.rows(), d.cols());
            for r in 0..d.rows() {
                for col in 0..d.cols() {
                    let co = basis
                        .coordinates(d.entry(r, col))
                        .ok_or_else(|| Error::Precondition("differential entry outside m".into()))?;
                    tm.set(r, col, co[i].clone());
                }
            }
            t[i].push(tm);
        }
    }
    WModuleRep::new(f, p, dims, s, t)
}

/// A chain isomorphism `Φ: K(x) ⊗ F_0 -> F`, `e_I ⊗ f ↦ h_I(f)`, and its inverse.
#[derive(Debug, Clone)]
pub struct KoszulLift<F: Field> {
    pub koszul: KoszulComplex<F>,
    /// `K(x) ⊗ F_0`, basis `e_I ⊗ f` ordered by `I` then `f`.
    pub source: FreeComplex<F>,
    pub phi: ChainMap<F>,
    pub inverse: ChainMap<F>,
}

pub fn koszul_lift<F: Field>(c: &FreeComplex<F>, xs: &[Vec<F::Elem>], hs: &[Homotopy<F::Elem>]) -> Result<KoszulLift<F>> {
    let alg = c.algebra();
    let f = alg.field();
    if !c.is_minimal() {
        return Err(Error::Precondition("complex is not minimal".into()));
    }
    alg.adapted_basis(xs)?;
    for (x, h) in xs.iter().zip(hs) {
        if !h.verify(&ChainMap::scalar(c, x))? {
            return Err(Error::Precondition(format!("witness for {} is not a homotopy", alg.format(x))));
        }
    }
    let k = koszul(alg, xs)?;
    let r0 = c.rank(0);
    let diffs = k.complex.differentials().iter().map(|d| d.kron_identity(alg, r0)).collect();
    let source = FreeComplex::new(alg.clone(), r0, diffs)?;
    let p = xs.len();
    let mut maps = Vec::new();
    for j in 0..=p.max(c.top()) {
        let mut phi = AlgMatrix::zeros(alg, c.rank(j), source.rank(j));
        if j <= p {
            for (idx, set) in k.subsets[j].iter().enumerate() {
                // h_{i_1} ∘ ⋯ ∘ h_{i_n} restricted to F_0.
                let mut m = AlgMatrix::identity(alg, r0);
                for (deg, &i) in set.iter().rev().enumerate() {
                    m = hs[i].component(c, c, deg).mul(alg, &m);
                }
                for col in 0..r0 {
                    for row in 0..c.rank(j) {
                        phi.set_entry(row, idx * r0 + col, m.entry(row, col));
                    }
                }
            }
        }
        maps.push(phi);
    }
    let phi = ChainMap::new(&source, c, maps)?;
    if !phi.chain_defects().is_empty() {
        return Err(Error::NotChainMap("assembled map fails to commute with d".into()));
    }
    let mut inv = Vec::new();
    for j in 0..=phi.components().len().saturating_sub(1) {
        let m = phi.component(j);
        let red = m.mod_m(alg);
        if red.rows() != red.cols() || red.rank(f) != red.rows() {
            return Err(Error::NotInvertibleModM(j));
        }
        inv.push(invert(alg, &m).ok_or(Error::NotInvertibleModM(j))?);
    }
    let inverse = ChainMap::new(c, &source, inv)?;
    let round = phi.compose(&inverse)?;
    if round.sub(&ChainMap::identity(c)).is_zero() {
        Ok(KoszulLift {
            koszul: k,
            source,
            phi,
            inverse,
        })
    } else {
        Err(Error::Precondition("inverse fails to compose to the identity".into()))
    }
}

/// Inverse of a square matrix over `A`, via its `k`-linearization.
pub fn invert<F: Field>(alg: &Arc<crate::algebra::ArtinAlgebra<F>>, m: &AlgMatrix<F::Elem>) -> Option<AlgMatrix<F::Elem>> {
    let f = alg.field();
    if m.rows() != m.cols() {
        return None;
    }
    let d = alg.dim();
    let kinv = m.k_matrix(alg).inverse(f)?;
    let n = m.rows();
    let mut out = AlgMatrix::zeros(alg, n, n);
    for c in 0..n {
        let col = kinv.column(c * d);
        for r in 0..n {
            out.set_entry(r, c, &col[r * d..(r + 1) * d]);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::GradedMonomialAlgebra;
    use crate::field::PrimeField;

    fn gf() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn exterior_model_satisfies_everything() {
        for p in 1..=3 {
            let rep = exterior_model(&gf(), p, 2);
            let r = check_weyl_relations(&rep, true);
            assert!(r.ok(), "{:?}", r.failures);
            for k in 0..=p {
                for set in subsets(p, k) {
                    assert!(check_lemma_a1(&rep, &set));
                }
            }
            match structure_map(&rep).unwrap() {
                StructureMap::Iso(ms) => {
                    for m in ms {
                        assert_eq!(m, Matrix::identity(&gf(), m.rows()));
                    }
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn planted_sign_error_is_found() {
        let f = gf();
        let mut rep = exterior_model(&f, 2, 1);
        rep.s[1][0] = rep.s[1][0].scaled(&f, &f.neg(&f.one()));
        rep.t[1][1] = rep.t[1][1].scaled(&f, &f.from_i64(2));
        let r = check_weyl_relations(&rep, false);
        assert!(!r.ok());
        assert!(r.failures.iter().any(|x| x.relation == "[s2,t2]"));
    }

    #[test]
    fn conjugates_stay_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rep = exterior_model(&gf(), 3, 2);
        let c = random_graded_conjugate(&rep, &mut rng);
        assert!(check_weyl_relations(&c, true).ok());
        assert!(check_lemma_a1(&c, &[0, 1, 2]));
        assert!(matches!(structure_map(&c).unwrap(), StructureMap::Iso(_)));
    }

    #[test]
    fn koszul_power_lifts() {
        let f = gf();
        let a = Arc::new(
            GradedMonomialAlgebra::parse(vec!["x".into(), "y".into(), "z".into()], &["x^2", "y^2", "z^2"], 8)
                .unwrap()
                .artinize(&f)
                .unwrap(),
        );
        let xs: Vec<_> = ["x", "y"].iter().map(|s| a.parse_element(s).unwrap()).collect();
        let k = koszul(&a, &xs).unwrap();
        let f2 = k.complex.power(2).unwrap();
        let hs: Vec<_> = (0..2)
            .map(|t| {
                let h = k.contraction(t);
                Homotopy {
                    maps: h.maps.iter().map(|m| m.block_diag(&a, m)).collect(),
                }
            })
            .collect();
        let lift = koszul_lift(&f2, &xs, &hs).unwrap();
        assert_eq!(lift.source.ranks(), &[2, 4, 2]);
        let rep = rep_from_homotopies(&f2, &xs, &hs).unwrap();
        assert!(check_weyl_relations(&rep, true).ok());
        assert!(matches!(structure_map(&rep).unwrap(), StructureMap::Iso(_)));
    }
}
