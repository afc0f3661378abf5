//! Certificates for an action of an `A`-algebra `B` on a complex that holds
//! up to homotopy, and the resulting module structures on homology.
//!
//! A certificate lists chain endomorphisms for generators of `B` and a set
//! of relations, each a noncommutative polynomial in the generators with
//! coefficients from `A`, to be null-homotopic on `F`. Products are
//! composed left to right: `u*v` is the map `U ∘ V`.

use num_bigint::BigInt;

use crate::algebra::{AlgebraMorphism, ArtinAlgebra};
use crate::closure::{self, ClosureError, Ops};
use crate::complex::{ChainMap, FreeComplex, HomologyModule};
use crate::error::{Error, Result};
use crate::expr::{self, Evaluator, Expr};
use crate::field::Field;
use crate::homotopy::{solve_homotopy, Homotopy};
use crate::linalg::Matrix;

#[derive(Debug, Clone)]
pub struct ActionGenerator<F: Field> {
    pub name: String,
    /// The element of `B` this generator stands for.
    pub image: Vec<F::Elem>,
    pub map: ChainMap<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness<E> {
    /// The relation is claimed to vanish on the nose.
    None,
    Explicit(Homotopy<E>),
    /// Ask the solver for a homotopy.
    Solve,
}

#[derive(Debug, Clone)]
pub struct Relation<E> {
    pub poly: String,
    pub expr: Expr,
    pub witness: Witness<E>,
}

impl<E> Relation<E> {
    pub fn parse(poly: &str, witness: Witness<E>) -> Result<Self> {
        Ok(Relation {
            poly: poly.to_string(),
            expr: expr::parse(poly)?,
            witness,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ActionCertificate<F: Field> {
    pub morphism: AlgebraMorphism<F>,
    pub generators: Vec<ActionGenerator<F>>,
    pub relations: Vec<Relation<F::Elem>>,
}

/// Evaluates relation polynomials as chain maps.
struct MapEval<'a, F: Field> {
    complex: &'a FreeComplex<F>,
    generators: &'a [ActionGenerator<F>],
}

impl<F: Field> Evaluator for MapEval<'_, F> {
    type Value = ChainMap<F>;

    fn constant(&self, num: &BigInt, den: &BigInt) -> Result<Self::Value> {
        let alg = self.complex.algebra();
        let c = alg.field().from_ratio(num, den)?;
        Ok(ChainMap::scalar(self.complex, &alg.scalar(&c)))
    }

    fn ident(&self, name: &str) -> Result<Self::Value> {
        if let Some(g) = self.generators.iter().find(|g| g.name == name) {
            return Ok(g.map.clone());
        }
        let a = self.complex.algebra().ident(name)?;
        Ok(ChainMap::scalar(self.complex, &a))
    }

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        Ok(a.add(b))
    }

    fn neg(&self, a: &Self::Value) -> Result<Self::Value> {
        let alg = self.complex.algebra();
        Ok(a.scale(&alg.neg(&alg.one())))
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        a.compose(b)
    }
}

/// Evaluates relation polynomials in `B`, with `A`-symbols sent through `φ`.
struct TargetEval<'a, F: Field> {
    morphism: &'a AlgebraMorphism<F>,
    generators: &'a [(String, Vec<F::Elem>)],
}

impl<F: Field> Evaluator for TargetEval<'_, F> {
    type Value = Vec<F::Elem>;

    fn constant(&self, num: &BigInt, den: &BigInt) -> Result<Self::Value> {
        Evaluator::constant(self.morphism.target(), num, den)
    }

    fn ident(&self, name: &str) -> Result<Self::Value> {
        if let Some((_, v)) = self.generators.iter().find(|(n, _)| n == name) {
            return Ok(v.clone());
        }
        Ok(self.morphism.apply(&self.morphism.source().ident(name)?))
    }

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        Ok(self.morphism.target().add(a, b))
    }

    fn neg(&self, a: &Self::Value) -> Result<Self::Value> {
        Ok(self.morphism.target().neg(a))
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        Ok(self.morphism.target().mul(a, b))
    }
}

/// Evaluates relation polynomials on homology, with `A` acting through the
/// module structure of `H_i`.
struct HomologyEval<'a, F: Field> {
    h: &'a HomologyModule<F>,
    generators: &'a [(String, Matrix<F::Elem>)],
}

impl<F: Field> Evaluator for HomologyEval<'_, F> {
    type Value = Matrix<F::Elem>;

    fn constant(&self, num: &BigInt, den: &BigInt) -> Result<Self::Value> {
        let f = self.h.module.field();
        let c = f.from_ratio(num, den)?;
        Ok(Matrix::identity(f, self.h.dim()).scaled(f, &c))
    }

    fn ident(&self, name: &str) -> Result<Self::Value> {
        if let Some((_, m)) = self.generators.iter().find(|(n, _)| n == name) {
            return Ok(m.clone());
        }
        let a = self.h.module.algebra().ident(name)?;
        Ok(self.h.module.action_of(&a))
    }

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        Ok(a.add(self.h.module.field(), b))
    }

    fn neg(&self, a: &Self::Value) -> Result<Self::Value> {
        let f = self.h.module.field();
        Ok(a.scaled(f, &f.neg(&f.one())))
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        Ok(a.mul(self.h.module.field(), b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// The relation is zero as a chain map.
    Exact,
    Explicit,
    Solved,
    Missing,
}

#[derive(Debug, Clone)]
pub struct RelationCheck<E> {
    pub poly: String,
    /// The polynomial vanishes in `B`.
    pub holds_in_target: bool,
    pub kind: WitnessKind,
    pub ok: bool,
    /// Degrees where the relation is nonzero, when it fails.
    pub residual_degrees: Vec<usize>,
    pub homotopy: Option<Homotopy<E>>,
}

#[derive(Debug, Clone)]
pub struct CertificateReport<E> {
    /// Per generator: name and whether it is a chain map.
    pub chain_maps: Vec<(String, bool)>,
    pub relations: Vec<RelationCheck<E>>,
    pub verified: bool,
}

pub fn verify_certificate<F: Field>(c: &FreeComplex<F>, cert: &ActionCertificate<F>) -> Result<CertificateReport<F::Elem>> {
    if cert.morphism.source() != c.algebra().as_ref() {
        return Err(Error::Precondition("certificate morphism does not start at the complex's algebra".into()));
    }
    for g in &cert.generators {
        if g.map.source.ranks() != c.ranks() || g.map.target.ranks() != c.ranks() {
            return Err(Error::Dimension(format!("generator `{}` is not an endomorphism of the complex", g.name)));
        }
        if c.algebra().symbols().iter().any(|(n, _)| *n == g.name) {
            return Err(Error::Precondition(format!("generator `{}` clashes with an algebra symbol", g.name)));
        }
    }
    let chain_maps: Vec<(String, bool)> = cert
        .generators
        .iter()
        .map(|g| (g.name.clone(), g.map.chain_defects().is_empty()))
        .collect();
    let ev = MapEval {
        complex: c,
        generators: &cert.generators,
    };
    let images: Vec<(String, Vec<F::Elem>)> = cert.generators.iter().map(|g| (g.name.clone(), g.image.clone())).collect();
    let tev = TargetEval {
        morphism: &cert.morphism,
        generators: &images,
    };
    let mut relations = Vec::new();
    for rel in &cert.relations {
        let value = rel.expr.eval(&ev)?;
        let holds_in_target = cert.morphism.target().is_zero(&rel.expr.eval(&tev)?);
        let (kind, ok, homotopy) = if value.is_zero() {
            (WitnessKind::Exact, true, None)
        } else {
            match &rel.witness {
                Witness::None => (WitnessKind::Missing, false, None),
                Witness::Explicit(h) => (WitnessKind::Explicit, h.verify(&value)?, Some(h.clone())),
                Witness::Solve => match solve_homotopy(&value)? {
                    Some(h) => (WitnessKind::Solved, true, Some(h)),
                    None => (WitnessKind::Solved, false, None),
                },
            }
        };
        let residual_degrees = if ok {
            Vec::new()
        } else {
            let f = c.field();
            (0..=c.top()).filter(|&i| !value.component(i).is_zero(f)).collect()
        };
        relations.push(RelationCheck {
            poly: rel.poly.clone(),
            holds_in_target,
            kind,
            ok: ok && holds_in_target,
            residual_degrees,
            homotopy,
        });
    }
    let verified = chain_maps.iter().all(|(_, ok)| *ok) && relations.iter().all(|r| r.ok);
    Ok(CertificateReport {
        chain_maps,
        relations,
        verified,
    })
}

/// Per degree `i`: `H_i` and the action matrix of each generator on it.
#[derive(Debug, Clone)]
pub struct InducedHomologyAction<F: Field> {
    pub homology: Vec<HomologyModule<F>>,
    /// `matrices[i]` lists `(name, matrix on H_i)`.
    pub matrices: Vec<Vec<(String, Matrix<F::Elem>)>>,
}

impl<F: Field> InducedHomologyAction<F> {
    /// Matrix of a polynomial in the generators on `H_i`.
    pub fn evaluate(&self, i: usize, poly: &str) -> Result<Matrix<F::Elem>> {
        let ev = HomologyEval {
            h: &self.homology[i],
            generators: &self.matrices[i],
        };
        expr::parse(poly)?.eval(&ev)
    }
}

/// Pushes the generators to homology and checks that every relation acts
/// as zero there.
pub fn induced_action_on_homology<F: Field>(c: &FreeComplex<F>, cert: &ActionCertificate<F>) -> Result<InducedHomologyAction<F>> {
    let homology = c.homology_all()?;
    let mut matrices = Vec::new();
    for (i, h) in homology.iter().enumerate() {
        let ms = cert
            .generators
            .iter()
            .map(|g| Ok((g.name.clone(), g.map.on_homology(i, h, h)?)))
            .collect::<Result<Vec<_>>>()?;
        matrices.push(ms);
    }
    let action = InducedHomologyAction { homology, matrices };
    for i in 0..action.homology.len() {
        let f = c.field();
        for rel in &cert.relations {
            let ev = HomologyEval {
                h: &action.homology[i],
                generators: &action.matrices[i],
            };
            if !rel.expr.eval(&ev)?.is_zero(f) {
                return Err(Error::RelationFailsOnHomology(format!("`{}` on H_{i}", rel.poly)));
            }
        }
    }
    Ok(action)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HDegreeCheck {
    pub degree: usize,
    pub dim: usize,
    /// The generator matrices extend to a representation of `B`.
    pub representation: bool,
    /// `φ(a)` acts as `a` does, for the generators `a` of `A`.
    pub compatible: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HActionReport {
    pub degrees: Vec<HDegreeCheck>,
    pub valid: bool,
}

/// Checks that matrices on the homology bases define `B`-module structures
/// extending the `A`-module structures, with no homotopy data involved.
///
/// `generators` pairs elements of `B` that generate it as an algebra with,
/// for each degree `i`, the matrix on `H_i`.
pub fn check_h_action_only<F: Field>(
    c: &FreeComplex<F>,
    morphism: &AlgebraMorphism<F>,
    generators: &[(Vec<F::Elem>, Vec<Matrix<F::Elem>>)],
) -> Result<HActionReport> {
    let homology = c.homology_all()?;
    let b = morphism.target();
    let f = b.field();
    let mut degrees = Vec::new();
    for (i, h) in homology.iter().enumerate() {
        let n = h.dim();
        let mut gens = Vec::new();
        for (elem, mats) in generators {
            let m = mats
                .get(i)
                .cloned()
                .ok_or_else(|| Error::Dimension(format!("no matrix given for H_{i}")))?;
            if m.rows() != n || m.cols() != n {
                return Err(Error::Dimension(format!("matrix for H_{i} must be {n}x{n}")));
            }
            gens.push((elem.clone(), m));
        }
        let rep = represent(b, n, &gens);
        let (representation, compatible, detail) = match rep {
            Ok(rho) => {
                let mut bad = None;
                for (name, a) in morphism.source().symbols() {
                    let img = morphism.apply(a);
                    let lhs = combine(f, n, &rho, &img);
                    if lhs != h.module.action_of(a) {
                        bad = Some(format!("`{name}` acts differently through B on H_{i}"));
                        break;
                    }
                }
                (true, bad.is_none(), bad)
            }
            Err(msg) => (false, false, Some(msg)),
        };
        degrees.push(HDegreeCheck {
            degree: i,
            dim: n,
            representation,
            compatible,
            detail,
        });
    }
    let valid = degrees.iter().all(|d| d.representation && d.compatible);
    Ok(HActionReport { degrees, valid })
}

/// Matrices on `H_i` for generators of `B`, taken from the `A`-action of
/// chosen preimages; requires `φ` surjective.
pub fn lifted_action<F: Field>(
    c: &FreeComplex<F>,
    morphism: &AlgebraMorphism<F>,
    generators: &[Vec<F::Elem>],
) -> Result<Vec<(Vec<F::Elem>, Vec<Matrix<F::Elem>>)>> {
    let homology = c.homology_all()?;
    let f = c.field();
    let phi = morphism.matrix();
    generators
        .iter()
        .map(|g| {
            let pre = crate::linalg::solve(f, phi, g)?
                .ok_or_else(|| Error::Precondition("generator has no preimage in A".into()))?;
            let mats = homology.iter().map(|h| h.module.action_of(&pre)).collect();
            Ok((g.clone(), mats))
        })
        .collect()
}

/// Representation of `B` on `k^n` generated by the given matrices, as the
/// images of `B`'s basis; `Err` describes the first violated relation.
pub(crate) fn represent<F: Field>(
    b: &ArtinAlgebra<F>,
    n: usize,
    gens: &[(Vec<F::Elem>, Matrix<F::Elem>)],
) -> std::result::Result<Vec<Matrix<F::Elem>>, String> {
    let f = b.field();
    let mul = |x: &Matrix<F::Elem>, y: &Matrix<F::Elem>| Ok(x.mul(f, y));
    let comb = |terms: &[(F::Elem, &Matrix<F::Elem>)]| {
        let mut acc = Matrix::zeros(f, n, n);
        for (c, m) in terms {
            acc = acc.add(f, &m.scaled(f, c));
        }
        Ok(acc)
    };
    let eq = |x: &Matrix<F::Elem>, y: &Matrix<F::Elem>| x == y;
    let ops = Ops {
        mul: &mul,
        combine: &comb,
        eq: &eq,
    };
    match closure::extend(b, Matrix::identity(f, n), gens, ops) {
        Ok(r) => Ok(r),
        Err(ClosureError::Inconsistent { element }) => Err(format!("relation violated at {element}")),
        Err(ClosureError::NotGenerating { reached }) => Err(format!("generators span only {reached} dimensions of B")),
        Err(ClosureError::Other(e)) => Err(e.to_string()),
    }
}

fn combine<F: Field>(f: &F, n: usize, rho: &[Matrix<F::Elem>], b: &[F::Elem]) -> Matrix<F::Elem> {
    let mut acc = Matrix::zeros(f, n, n);
    for (c, m) in b.iter().zip(rho) {
        if !f.is_zero(c) {
            acc = acc.add(f, &m.scaled(f, c));
        }
    }
    acc
}
