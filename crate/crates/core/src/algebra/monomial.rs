//! Quotients of a polynomial ring by a monomial ideal, graded by total
//! degree and cut off at a truncation degree `D`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ArtinAlgebra, Grading};
use crate::error::{Error, Result};
use crate::expr::{self, Evaluator};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn format(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

pub(crate) fn divisible_by_any(m: &[u32], ideal: &[Vec<u32>]) -> bool {
    ideal.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
}

/// All exponent vectors of total degree `d` in `n` variables, in
/// lexicographically decreasing order (`x^2, x*y, y^2`).
fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, d, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMonomialAlgebra {
    vars: Vec<String>,
    ideal: Vec<Monomial>,
    truncation: u32,
}

impl fmt::Display for GradedMonomialAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.ideal.iter().map(|m| m.format(&self.vars)).collect();
        write!(f, "k[{}]/({}) up to degree {}", self.vars.join(","), gens.join(","), self.truncation)
    }
}

/// Integer-coefficient polynomials, only used to recognise monomials.
struct PolyEval<'a> {
    vars: &'a [String],
}

type Poly = BTreeMap<Vec<u32>, BigRational>;

impl Evaluator for PolyEval<'_> {
    type Value = Poly;

    fn constant(&self, num: &BigInt, den: &BigInt) -> Result<Poly> {
        let mut p = Poly::new();
        let c = BigRational::new(num.clone(), den.clone());
        if !c.is_zero() {
            p.insert(vec![0; self.vars.len()], c);
        }
        Ok(p)
    }

    fn ident(&self, name: &str) -> Result<Poly> {
        let i = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        let mut e = vec![0; self.vars.len()];
        e[i] = 1;
        Ok(Poly::from([(e, BigRational::one())]))
    }

    fn add(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let mut out = a.clone();
        for (m, c) in b {
            let s = out.get(m).cloned().unwrap_or_else(BigRational::zero) + c;
            if s.is_zero() {
                out.remove(m);
            } else {
                out.insert(m.clone(), s);
            }
        }
        Ok(out)
    }

    fn neg(&self, a: &Poly) -> Result<Poly> {
        Ok(a.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let mut out = Poly::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let term = Poly::from([(m, ca * cb)]);
                out = self.add(&out, &term)?;
            }
        }
        Ok(out)
    }
}

impl GradedMonomialAlgebra {
    pub fn new(vars: Vec<String>, ideal: Vec<Monomial>, truncation: u32) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if !super::is_identifier(v) {
                return Err(Error::InvalidAlgebra(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidAlgebra(format!("repeated variable `{v}`")));
            }
        }
        for m in &ideal {
            if m.0.len() != vars.len() {
                return Err(Error::InvalidAlgebra("monomial arity differs from variable count".into()));
            }
            if m.degree() == 0 {
                return Err(Error::InvalidAlgebra("the ideal contains 1".into()));
            }
        }
        Ok(GradedMonomialAlgebra { vars, ideal, truncation })
    }

    /// Parses generators written like `x^2` or `x*y`.
    pub fn parse(vars: Vec<String>, ideal: &[&str], truncation: u32) -> Result<Self> {
        let ev = PolyEval { vars: &vars };
        let mut gens = Vec::new();
        for src in ideal {
            let p = expr::parse(src)?.eval(&ev)?;
            let mut terms = p.into_iter();
            match (terms.next(), terms.next()) {
                (Some((m, c)), None) if c.is_one() => gens.push(Monomial(m)),
                _ => return Err(Error::InvalidAlgebra(format!("`{src}` is not a monomial"))),
            }
        }
        GradedMonomialAlgebra::new(vars, gens, truncation)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn ideal(&self) -> &[Monomial] {
        &self.ideal
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn with_truncation(&self, d: u32) -> Self {
        GradedMonomialAlgebra {
            truncation: d,
            ..self.clone()
        }
    }

    fn ideal_exps(&self) -> Vec<Vec<u32>> {
        self.ideal.iter().map(|m| m.0.clone()).collect()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !divisible_by_any(&m.0, &self.ideal_exps())
    }

    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        let ideal = self.ideal_exps();
        monomials_of_degree(self.vars.len(), d)
            .into_iter()
            .filter(|m| !divisible_by_any(m, &ideal))
            .map(Monomial)
            .collect()
    }

    pub fn hilbert(&self, d: u32) -> usize {
        self.standard_monomials(d).len()
    }

    /// First degree `<= D` with no standard monomials, if any.
    pub fn socle_free_degree(&self) -> Option<u32> {
        (0..=self.truncation).find(|&d| self.hilbert(d) == 0)
    }

    pub fn is_artinian(&self) -> bool {
        self.socle_free_degree().is_some()
    }

    /// Krull dimension: the largest set of variables whose monomials avoid
    /// every generator.
    pub fn krull_dim(&self) -> usize {
        krull_dim_of(self.vars.len(), &self.ideal_exps())
    }

    /// The exact finite-dimensional algebra; fails if the quotient is not
    /// visibly Artinian within degree `D`.
    pub fn artinize<F: Field>(&self, field: &F) -> Result<ArtinAlgebra<F>> {
        match self.socle_free_degree() {
            Some(0) => Err(Error::InvalidAlgebra("zero ring".into())),
            Some(d) => self.build(field, d - 1, None),
            None => Err(Error::NotArtinian(self.truncation)),
        }
    }

    /// `A / m^{D+1}`; exact (no truncation flag) when that equals `A`.
    pub fn truncate<F: Field>(&self, field: &F) -> Result<ArtinAlgebra<F>> {
        if self.is_artinian() {
            return self.artinize(field);
        }
        self.build(field, self.truncation, Some(self.truncation))
    }

    fn build<F: Field>(&self, field: &F, top: u32, truncation: Option<u32>) -> Result<ArtinAlgebra<F>> {
        let ideal = self.ideal_exps();
        let mut basis: Vec<Vec<u32>> = Vec::new();
        for d in 0..=top {
            basis.extend(self.standard_monomials(d).into_iter().map(|m| m.0));
        }
        let index: HashMap<&[u32], usize> = basis.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut entries = Vec::new();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let p: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if p.iter().sum::<u32>() > top || divisible_by_any(&p, &ideal) {
                    continue;
                }
                entries.push((i, j, index[p.as_slice()], field.one()));
            }
        }
        let labels: Vec<String> = basis.iter().map(|m| Monomial(m.clone()).format(&self.vars)).collect();
        let degrees = basis.iter().map(|m| m.iter().sum()).collect();
        let dim = basis.len();
        let symbols = self
            .vars
            .iter()
            .enumerate()
            .map(|(v, name)| {
                let mut e = vec![0; self.vars.len()];
                e[v] = 1;
                let vec = match index.get(e.as_slice()) {
                    Some(&i) => super::unit_vector(field, dim, i),
                    None => vec![field.zero(); dim],
                };
                (name.clone(), vec)
            })
            .collect();
        let alg = ArtinAlgebra::from_constants(field, labels, entries)?
            .with_symbols(symbols)
            .with_grading(Grading {
                degrees,
                truncation,
                exponents: Some(basis.clone()),
                ideal: Some(ideal),
            });
        Ok(alg)
    }
}

pub(crate) fn krull_dim_of(n: usize, ideal: &[Vec<u32>]) -> usize {
    let supports: Vec<u64> = ideal
        .iter()
        .map(|g| g.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |s, (i, _)| s | (1 << i)))
        .collect();
    let mut best = 0;
    for set in 0u64..(1u64 << n) {
        // A generator supported inside `set` kills every monomial there.
        if supports.iter().all(|&s| s & !set != 0) {
            best = best.max(set.count_ones() as usize);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn degree_order_is_lex_within_degree() {
        assert_eq!(monomials_of_degree(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_of_degree(3, 1).len(), 3);
        assert_eq!(monomials_of_degree(0, 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn truncated_polynomial_ring_in_one_variable() {
        let f = PrimeField::new(101).unwrap();
        let g = GradedMonomialAlgebra::parse(vars(&["u"]), &["u^4"], 10).unwrap();
        let a = g.artinize(&f).unwrap();
        assert_eq!(a.labels(), &["1", "u", "u^2", "u^3"]);
        assert!(a.validate().is_valid());
    }

    #[test]
    fn field_as_quotient() {
        let f = PrimeField::new(101).unwrap();
        let g = GradedMonomialAlgebra::parse(vars(&["x"]), &["x"], 4).unwrap();
        let a = g.artinize(&f).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.edim(), 0);
    }

    #[test]
    fn non_artinian_is_refused() {
        let f = PrimeField::new(101).unwrap();
        let g = GradedMonomialAlgebra::parse(vars(&["x", "y"]), &["x^2", "x*y"], 6).unwrap();
        assert!(matches!(g.artinize(&f), Err(Error::NotArtinian(6))));
        let t = g.truncate(&f).unwrap();
        assert_eq!(t.dim(), 8);
        assert_eq!(t.truncation(), Some(6));
        assert!(t.validate().is_valid());
        assert_eq!(g.krull_dim(), 1);
        // y^4 * y^3 needs degree 7.
        let y4 = t.parse_element("y^4").unwrap();
        let y3 = t.parse_element("y^3").unwrap();
        assert!(matches!(t.mul_checked(&y4, &y3), Err(Error::TruncationInsufficient(_))));
        // x * y^6 is zero in the ring regardless of truncation.
        let x = t.parse_element("x").unwrap();
        let y6 = t.parse_element("y^6").unwrap();
        assert!(t.is_zero(&t.mul_checked(&x, &y6).unwrap()));
    }

    #[test]
    fn rejects_non_monomials() {
        assert!(GradedMonomialAlgebra::parse(vars(&["x", "y"]), &["x + y"], 3).is_err());
        assert!(GradedMonomialAlgebra::parse(vars(&["x", "y"]), &["2*x"], 3).is_err());
        assert!(GradedMonomialAlgebra::parse(vars(&["x", "y"]), &["z"], 3).is_err());
    }

    #[test]
    fn krull_dimension_by_supports() {
        assert_eq!(krull_dim_of(3, &[]), 3);
        assert_eq!(krull_dim_of(3, &[vec![1, 1, 0]]), 2);
        assert_eq!(krull_dim_of(2, &[vec![2, 0], vec![0, 2]]), 0);
    }
}
