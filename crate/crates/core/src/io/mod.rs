//! JSON documents for algebras, complexes, certificates, bundles and
//! W-module representations, and a loader that resolves file references.
//!
//! Algebra elements are written as polynomial strings in the algebra's
//! generators; scalars as integers or `"num/den"` strings.

pub mod fixtures;

use std::cell::RefCell;
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::action::{ActionCertificate, ActionGenerator, Relation, Witness};
use crate::algebra::{AlgebraMorphism, ArtinAlgebra, GradedMonomialAlgebra};
use crate::checkers::InstanceBundle;
use crate::complex::{AlgMatrix, ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::field::{Field, FieldConfig};
use crate::homotopy::Homotopy;
use crate::linalg::Matrix;
use crate::walg::WModuleRep;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn parse<F: Field>(&self, f: &F) -> Result<F::Elem> {
        match self {
            Scalar::Int(n) => Ok(f.from_i64(*n)),
            Scalar::Text(s) => f.parse(s),
        }
    }

    pub fn of<F: Field>(f: &F, x: &F::Elem) -> Scalar {
        let s = f.format(x);
        s.parse().map_or(Scalar::Text(s), Scalar::Int)
    }
}

/// A file path or an inline document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Path(String),
    Inline(Box<T>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    #[serde(flatten)]
    pub field: FieldConfig,
    #[serde(flatten)]
    pub body: AlgebraBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraBody {
    Artinian {
        labels: Vec<String>,
        /// `(i, j, k, c)`: the coefficient of `e_k` in `e_i e_j`.
        constants: Vec<(usize, usize, usize, Scalar)>,
    },
    MonomialQuotient {
        vars: Vec<String>,
        ideal: Vec<String>,
        truncation: u32,
    },
}

impl AlgebraDoc {
    pub fn build<F: Field>(&self, f: &F) -> Result<ArtinAlgebra<F>> {
        check_field(&self.field, f)?;
        match &self.body {
            AlgebraBody::Artinian { labels, constants } => {
                let entries = constants
                    .iter()
                    .map(|(i, j, k, c)| Ok((*i, *j, *k, c.parse(f)?)))
                    .collect::<Result<Vec<_>>>()?;
                ArtinAlgebra::from_constants(f, labels.clone(), entries)?.validated()
            }
            AlgebraBody::MonomialQuotient { vars, ideal, truncation } => {
                let gens: Vec<&str> = ideal.iter().map(String::as_str).collect();
                GradedMonomialAlgebra::parse(vars.clone(), &gens, *truncation)?.truncate(f)
            }
        }
    }

    /// Structure-constant form of any algebra.
    pub fn artinian<F: Field>(a: &ArtinAlgebra<F>) -> Self {
        let f = a.field();
        let n = a.dim();
        let mut constants = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = a.constant(i, j, k);
                    if !f.is_zero(c) {
                        constants.push((i, j, k, Scalar::of(f, c)));
                    }
                }
            }
        }
        AlgebraDoc {
            field: f.config(),
            body: AlgebraBody::Artinian {
                labels: a.labels().to_vec(),
                constants,
            },
        }
    }
}

pub fn check_field<F: Field>(declared: &FieldConfig, f: &F) -> Result<()> {
    if *declared != f.config() {
        return Err(Error::FieldMismatch {
            found: declared.to_string(),
            session: f.config().to_string(),
        });
    }
    Ok(())
}

/// Rows of polynomial strings.
pub type Grid = Vec<Vec<String>>;

/// Rows of scalars.
pub type ScalarGrid = Vec<Vec<Scalar>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub algebra: Ref<AlgebraDoc>,
    pub ranks: Vec<usize>,
    pub differentials: Vec<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub source: Ref<AlgebraDoc>,
    pub target: Ref<AlgebraDoc>,
    /// `(generator of A, its image in B)`.
    pub images: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    /// Element of `B`; defaults to `name`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image: Option<String>,
    /// Component on `F_i`, for each `i`.
    pub matrices: Vec<Grid>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessDoc {
    /// `"solve"` or `"none"`.
    Keyword(String),
    /// `h_i: F_i -> F_{i+1}` for `i = 0, 1, ...`; missing ones are zero.
    Matrices(Vec<Grid>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub poly: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub morphism: Ref<MorphismDoc>,
    pub generators: Vec<GeneratorDoc>,
    pub relations: Vec<RelationDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HGeneratorDoc {
    pub image: String,
    /// Matrix on `H_i` in the homology basis, for each `i`.
    pub matrices: Vec<ScalarGrid>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrictGeneratorDoc {
    pub image: String,
    pub matrices: Vec<Grid>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleDoc {
    pub name: String,
    pub complex: Ref<ComplexDoc>,
    /// Required unless a certificate supplies it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<Ref<MorphismDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Ref<CertificateDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_action: Option<Vec<HGeneratorDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict_action: Option<Vec<StrictGeneratorDoc>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepDoc {
    #[serde(flatten)]
    pub field: FieldConfig,
    pub p: usize,
    pub dims: Vec<usize>,
    /// `S[i][j]: V_j -> V_{j+1}`.
    #[serde(rename = "S")]
    pub s: Vec<Vec<ScalarGrid>>,
    /// `T[i][j]: V_j -> V_{j-1}`.
    #[serde(rename = "T")]
    pub t: Vec<Vec<ScalarGrid>>,
}

fn scalar_matrix<F: Field>(f: &F, g: &ScalarGrid, rows: usize, cols: usize) -> Result<Matrix<F::Elem>> {
    if g.len() != rows || g.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension(format!("expected a {rows}x{cols} matrix")));
    }
    let data = g.iter().flatten().map(|s| s.parse(f)).collect::<Result<Vec<_>>>()?;
    Matrix::from_vec(rows, cols, data)
}

fn scalar_grid<F: Field>(f: &F, m: &Matrix<F::Elem>) -> ScalarGrid {
    (0..m.rows()).map(|r| m.row(r).iter().map(|x| Scalar::of(f, x)).collect()).collect()
}

fn alg_matrix<F: Field>(a: &ArtinAlgebra<F>, g: &Grid, rows: usize, cols: usize) -> Result<AlgMatrix<F::Elem>> {
    if g.len() != rows || g.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension(format!("expected a {rows}x{cols} matrix")));
    }
    let entries = g.iter().flatten().map(|s| a.parse_element(s)).collect::<Result<Vec<_>>>()?;
    AlgMatrix::from_entries(a, rows, cols, entries)
}

impl RepDoc {
    pub fn build<F: Field>(&self, f: &F) -> Result<WModuleRep<F>> {
        check_field(&self.field, f)?;
        let n = self.dims.len();
        let dim = |j: isize| if j < 0 || j as usize >= n { 0 } else { self.dims[j as usize] };
        let side = |ms: &Vec<Vec<ScalarGrid>>, step: isize| -> Result<Vec<Vec<Matrix<F::Elem>>>> {
            ms.iter()
                .map(|per| {
                    if per.len() != n {
                        return Err(Error::Dimension(format!("expected {n} matrices per generator")));
                    }
                    per.iter()
                        .enumerate()
                        .map(|(j, g)| scalar_matrix(f, g, dim(j as isize + step), dim(j as isize)))
                        .collect()
                })
                .collect()
        };
        WModuleRep::new(f, self.p, self.dims.clone(), side(&self.s, 1)?, side(&self.t, -1)?)
    }

    pub fn from_rep<F: Field>(rep: &WModuleRep<F>) -> Self {
        let f = &rep.field;
        let side = |ms: &Vec<Vec<Matrix<F::Elem>>>| ms.iter().map(|per| per.iter().map(|m| scalar_grid(f, m)).collect()).collect();
        RepDoc {
            field: f.config(),
            p: rep.p,
            dims: rep.dims.clone(),
            s: side(&rep.s),
            t: side(&rep.t),
        }
    }
}

impl ComplexDoc {
    /// Document for a complex over an algebra stored elsewhere.
    pub fn from_complex<F: Field>(c: &FreeComplex<F>, algebra: Ref<AlgebraDoc>) -> Self {
        let a = c.algebra();
        ComplexDoc {
            algebra,
            ranks: c.ranks().to_vec(),
            differentials: c.differentials().iter().map(|d| d.format(a)).collect(),
            labels: c.labels().map(|l| l.to_vec()),
        }
    }
}

/// Where documents come from.
#[derive(Debug, Clone)]
pub enum Source {
    Dir(PathBuf),
    /// `(name, contents)` pairs compiled into the binary.
    Embedded(&'static [(&'static str, &'static str)]),
}

/// Resolves references and builds values over a fixed field. Algebras are
/// cached by path, so objects loaded from the same file share one `Arc`.
pub struct Loader<F: Field> {
    field: F,
    source: Source,
    algebras: RefCell<HashMap<String, Arc<ArtinAlgebra<F>>>>,
}

impl<F: Field> Loader<F> {
    pub fn new(field: F, source: Source) -> Self {
        Loader {
            field,
            source,
            algebras: RefCell::new(HashMap::new()),
        }
    }

    /// Loader for references relative to the directory holding `path`.
    pub fn beside(field: F, path: &Path) -> Self {
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Loader::new(field, Source::Dir(dir))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn read(&self, name: &str) -> Result<String> {
        match &self.source {
            Source::Dir(dir) => {
                let p = dir.join(name);
                std::fs::read_to_string(&p).map_err(|e| Error::Io {
                    path: p.display().to_string(),
                    source: e,
                })
            }
            Source::Embedded(files) => files
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, s)| s.to_string())
                .ok_or_else(|| Error::Io {
                    path: name.to_string(),
                    source: std::io::Error::new(std::io::ErrorKind::NotFound, "no such embedded file"),
                }),
        }
    }

    pub fn doc<T: DeserializeOwned>(&self, name: &str) -> Result<T> {
        let text = self.read(name)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{name}: {e}")))
    }

    fn resolve<T: DeserializeOwned + Clone>(&self, r: &Ref<T>) -> Result<T> {
        match r {
            Ref::Path(p) => self.doc(p),
            Ref::Inline(t) => Ok((**t).clone()),
        }
    }

    pub fn algebra(&self, r: &Ref<AlgebraDoc>) -> Result<Arc<ArtinAlgebra<F>>> {
        if let Ref::Path(p) = r {
            if let Some(a) = self.algebras.borrow().get(p) {
                return Ok(a.clone());
            }
        }
        let a = Arc::new(self.resolve(r)?.build(&self.field)?);
        if let Ref::Path(p) = r {
            self.algebras.borrow_mut().insert(p.clone(), a.clone());
        }
        Ok(a)
    }

    pub fn complex(&self, r: &Ref<ComplexDoc>) -> Result<FreeComplex<F>> {
        let doc = self.resolve(r)?;
        let a = self.algebra(&doc.algebra)?;
        if doc.ranks.is_empty() || doc.ranks.len() != doc.differentials.len() + 1 {
            return Err(Error::Dimension("need one more rank than differentials".into()));
        }
        let diffs = doc
            .differentials
            .iter()
            .enumerate()
            .map(|(i, g)| alg_matrix(&a, g, doc.ranks[i], doc.ranks[i + 1]))
            .collect::<Result<Vec<_>>>()?;
        let mut c = FreeComplex::new(a, doc.ranks[0], diffs)?;
        if let Some(l) = doc.labels {
            c = c.with_labels(l)?;
        }
        c.validated()
    }

    pub fn morphism(&self, r: &Ref<MorphismDoc>) -> Result<AlgebraMorphism<F>> {
        let doc = self.resolve(r)?;
        let s = self.algebra(&doc.source)?;
        let t = self.algebra(&doc.target)?;
        let images: Vec<(&str, &str)> = doc.images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        AlgebraMorphism::parse(&s, &t, &images)
    }

    fn chain_map(&self, c: &FreeComplex<F>, ms: &[Grid]) -> Result<ChainMap<F>> {
        let a = c.algebra();
        let maps = ms
            .iter()
            .enumerate()
            .map(|(i, g)| alg_matrix(a, g, c.rank(i), c.rank(i)))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(c, c, maps)
    }

    pub fn certificate(&self, r: &Ref<CertificateDoc>, c: &FreeComplex<F>) -> Result<ActionCertificate<F>> {
        let doc = self.resolve(r)?;
        let morphism = self.morphism(&doc.morphism)?;
        let a = c.algebra();
        let b = morphism.target();
        let generators = doc
            .generators
            .iter()
            .map(|g| {
                Ok(ActionGenerator {
                    name: g.name.clone(),
                    image: b.parse_element(g.image.as_deref().unwrap_or(&g.name))?,
                    map: self.chain_map(c, &g.matrices)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let relations = doc
            .relations
            .iter()
            .map(|r| {
                let w = match &r.witness {
                    None => Witness::None,
                    Some(WitnessDoc::Keyword(k)) if k == "none" => Witness::None,
                    Some(WitnessDoc::Keyword(k)) if k == "solve" => Witness::Solve,
                    Some(WitnessDoc::Keyword(k)) => return Err(Error::Parse(format!("unknown witness `{k}`"))),
                    Some(WitnessDoc::Matrices(ms)) => {
                        let mut h = Homotopy::zero(c, c);
                        if ms.len() > h.maps.len() {
                            return Err(Error::Dimension("more homotopy components than degrees".into()));
                        }
                        for (i, g) in ms.iter().enumerate() {
                            h.maps[i] = alg_matrix(a, g, c.rank(i + 1), c.rank(i))?;
                        }
                        Witness::Explicit(h)
                    }
                };
                Relation::parse(&r.poly, w)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ActionCertificate {
            morphism,
            generators,
            relations,
        })
    }

    pub fn bundle(&self, doc: &BundleDoc) -> Result<InstanceBundle<F>> {
        let c = self.complex(&doc.complex)?;
        let cert = doc.certificate.as_ref().map(|r| self.certificate(r, &c)).transpose()?;
        let morphism = match (&doc.morphism, &cert) {
            (Some(m), _) => self.morphism(m)?,
            (None, Some(ct)) => ct.morphism.clone(),
            (None, None) => return Err(Error::Parse(format!("bundle `{}` names no morphism", doc.name))),
        };
        let mut b = InstanceBundle::new(&doc.name, morphism, c)?;
        if let Some(ct) = cert {
            b = b.with_certificate(ct);
        }
        let f = &self.field;
        if let Some(hs) = &doc.h_action {
            let homology = b.complex.homology_all()?;
            let gens = hs
                .iter()
                .map(|g| {
                    let mats = g
                        .matrices
                        .iter()
                        .zip(&homology)
                        .map(|(m, h)| scalar_matrix(f, m, h.dim(), h.dim()))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((b.target.parse_element(&g.image)?, mats))
                })
                .collect::<Result<Vec<_>>>()?;
            b = b.with_h_action(gens);
        }
        if let Some(ss) = &doc.strict_action {
            let gens = ss
                .iter()
                .map(|g| Ok((b.target.parse_element(&g.image)?, self.chain_map(&b.complex, &g.matrices)?)))
                .collect::<Result<Vec<_>>>()?;
            b = b.with_strict_action(gens);
        }
        Ok(b)
    }

    pub fn bundle_file(&self, name: &str) -> Result<InstanceBundle<F>> {
        self.bundle(&self.doc(name)?)
    }
}

/// Deterministic pretty JSON.
pub fn to_json<T: Serialize>(x: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};

    const MONO: &str = r#"{"field":"gfp","p":101,"kind":"monomial_quotient","vars":["x","y"],"ideal":["x^2","x*y","y^2"],"truncation":4}"#;

    #[test]
    fn algebra_documents_round_trip() {
        let doc: AlgebraDoc = serde_json::from_str(MONO).unwrap();
        let again: AlgebraDoc = serde_json::from_str(&to_json(&doc).unwrap()).unwrap();
        assert_eq!(doc, again);
        let f = PrimeField::new(101).unwrap();
        let a = doc.build(&f).unwrap();
        let art = AlgebraDoc::artinian(&a);
        let b = art.build(&f).unwrap();
        assert_eq!(a.dim(), b.dim());
        assert_eq!(AlgebraDoc::artinian(&b), art);
    }

    #[test]
    fn field_mismatch_is_reported() {
        let doc: AlgebraDoc = serde_json::from_str(MONO).unwrap();
        let err = doc.build(&RationalField).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch { .. }), "{err}");
    }

    #[test]
    fn malformed_document_names_position() {
        let err = serde_json::from_str::<AlgebraDoc>("{\"field\": \"gfp\",\n \"p\": }").unwrap_err();
        assert!(err.line() == 2, "{err}");
    }
}
