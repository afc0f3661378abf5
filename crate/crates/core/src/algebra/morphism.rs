use super::ArtinAlgebra;
use crate::closure::{self, ClosureError, Ops};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A local homomorphism `A -> B`, stored as the matrix of its values on the
/// basis of `A`.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism<F: Field> {
    source: ArtinAlgebra<F>,
    target: ArtinAlgebra<F>,
    matrix: Matrix<F::Elem>,
}

impl<F: Field> AlgebraMorphism<F> {
    /// The morphism sending each named generator of `source` to the given
    /// element of `target`.
    pub fn from_images(source: &ArtinAlgebra<F>, target: &ArtinAlgebra<F>, images: &[(String, Vec<F::Elem>)]) -> Result<Self> {
        let f = source.field();
        let mut gens = Vec::new();
        for (name, img) in images {
            let s = source
                .symbols()
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::Parse(format!("`{name}` is not a generator of the source")))?;
            if img.len() != target.dim() {
                return Err(Error::Dimension(format!("image of `{name}` has length {}", img.len())));
            }
            if source.in_maximal_ideal(&s) && !target.in_maximal_ideal(img) {
                return Err(Error::NotLocal(format!("{name} maps to the unit {}", target.format(img))));
            }
            gens.push((s, img.clone()));
        }
        let mul = |x: &Vec<F::Elem>, y: &Vec<F::Elem>| Ok(target.mul(x, y));
        let combine = |terms: &[(F::Elem, &Vec<F::Elem>)]| {
            let mut acc = target.zero();
            for (c, v) in terms {
                f.axpy(&mut acc, c, v);
            }
            Ok(acc)
        };
        let eq = |x: &Vec<F::Elem>, y: &Vec<F::Elem>| x == y;
        let cols = closure::extend(source, target.one(), &gens, Ops { mul: &mul, combine: &combine, eq: &eq })
            .map_err(|e| match e {
                ClosureError::Inconsistent { element } => {
                    Error::NotWellDefined(format!("a relation through {element} does not hold in the target"))
                }
                ClosureError::NotGenerating { reached } => Error::Precondition(format!(
                    "the given generators span {reached} of {} dimensions",
                    source.dim()
                )),
                ClosureError::Other(e) => e,
            })?;
        let matrix = Matrix::from_columns(target.dim(), &cols, f.zero());
        let phi = AlgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix,
        };
        for i in 1..source.dim() {
            if !target.in_maximal_ideal(&phi.apply(&source.basis_element(i))) {
                return Err(Error::NotLocal(format!("{} maps outside the maximal ideal", source.labels()[i])));
            }
        }
        Ok(phi)
    }

    /// Parses each image in the target's symbols.
    pub fn parse(source: &ArtinAlgebra<F>, target: &ArtinAlgebra<F>, images: &[(&str, &str)]) -> Result<Self> {
        let parsed = images
            .iter()
            .map(|(n, e)| Ok((n.to_string(), target.parse_element(e)?)))
            .collect::<Result<Vec<_>>>()?;
        AlgebraMorphism::from_images(source, target, &parsed)
    }

    pub fn source(&self) -> &ArtinAlgebra<F> {
        &self.source
    }

    pub fn target(&self) -> &ArtinAlgebra<F> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<F::Elem> {
        &self.matrix
    }

    pub fn apply(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        self.matrix.mul_vec(self.source.field(), a)
    }

    /// Is the map onto?
    pub fn is_surjective(&self) -> bool {
        self.matrix.rank(self.source.field()) == self.target.dim()
    }

    /// Images of a basis of `m_A`.
    pub fn image_of_maximal_ideal(&self) -> Vec<Vec<F::Elem>> {
        (1..self.source.dim())
            .map(|i| self.apply(&self.source.basis_element(i)))
            .collect()
    }
}

/// Minimal number of generators of the ideal `m_A B`.
pub fn beta0_of_mab<F: Field>(phi: &AlgebraMorphism<F>) -> Result<usize> {
    Ok(phi.target.minimal_generators(1, &phi.image_of_maximal_ideal())?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedMonomialAlgebra;
    use crate::field::PrimeField;

    fn alg(vars: &[&str], ideal: &[&str]) -> ArtinAlgebra<PrimeField> {
        let f = PrimeField::new(101).unwrap();
        GradedMonomialAlgebra::parse(vars.iter().map(|s| s.to_string()).collect(), ideal, 12)
            .unwrap()
            .artinize(&f)
            .unwrap()
    }

    #[test]
    fn well_defined_and_beta0() {
        let a = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let b = alg(&["u"], &["u^4"]);
        let phi = AlgebraMorphism::parse(&a, &b, &[("x", "u^2"), ("y", "u^3")]).unwrap();
        assert_eq!(beta0_of_mab(&phi).unwrap(), 1);
        assert!(!phi.is_surjective());
    }

    #[test]
    fn broken_relation_is_rejected() {
        let a = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let b = alg(&["u"], &["u^4"]);
        // x^2 = 0 in A but u^2 is not zero in B.
        let e = AlgebraMorphism::parse(&a, &b, &[("x", "u"), ("y", "u^3")]).unwrap_err();
        assert!(matches!(e, Error::NotWellDefined(_)), "{e}");
    }

    #[test]
    fn non_local_is_rejected() {
        let a = alg(&["x"], &["x^2"]);
        let b = alg(&["u"], &["u^2"]);
        let e = AlgebraMorphism::parse(&a, &b, &[("x", "1 + u")]).unwrap_err();
        assert!(matches!(e, Error::NotLocal(_)));
    }

    #[test]
    fn surjection_onto_quotient() {
        let a = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let b = alg(&["y"], &["y^2"]);
        let phi = AlgebraMorphism::parse(&a, &b, &[("x", "0"), ("y", "y")]).unwrap();
        assert!(phi.is_surjective());
        assert_eq!(beta0_of_mab(&phi).unwrap(), 1);
    }
}
