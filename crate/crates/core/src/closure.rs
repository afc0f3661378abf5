//! Extension of a map given on algebra generators to the whole algebra.
//!
//! Starting from `1`, products with the generators are explored breadth
//! first. Each new product is either independent of what was seen (and gets
//! the product of the images) or a combination of earlier elements, in which
//! case the images must satisfy the same combination.

use crate::algebra::ArtinAlgebra;
use crate::field::Field;
use crate::linalg::TrackedSpan;

pub(crate) enum ClosureError {
    /// A relation among source elements whose images disagree.
    Inconsistent { element: String },
    /// The generators span only this many dimensions.
    NotGenerating { reached: usize },
    Other(crate::Error),
}

impl From<crate::Error> for ClosureError {
    fn from(e: crate::Error) -> Self {
        ClosureError::Other(e)
    }
}

pub(crate) struct Ops<'a, F: Field, T> {
    pub mul: &'a dyn Fn(&T, &T) -> crate::Result<T>,
    pub combine: &'a dyn Fn(&[(F::Elem, &T)]) -> crate::Result<T>,
    pub eq: &'a dyn Fn(&T, &T) -> bool,
}

/// Images of the standard basis vectors of `a`.
pub(crate) fn extend<F: Field, T: Clone>(
    a: &ArtinAlgebra<F>,
    one: T,
    gens: &[(Vec<F::Elem>, T)],
    ops: Ops<'_, F, T>,
) -> Result<Vec<T>, ClosureError> {
    let f = a.field();
    let mut span = TrackedSpan::new(f, a.dim());
    let mut items: Vec<(Vec<F::Elem>, T)> = Vec::new();
    span.insert(&a.one());
    items.push((a.one(), one));
    let mut next = 0;
    let combine = |c: &[F::Elem], items: &[(Vec<F::Elem>, T)]| -> crate::Result<T> {
        let terms: Vec<(F::Elem, &T)> = c
            .iter()
            .zip(items)
            .filter(|(x, _)| !f.is_zero(x))
            .map(|(x, (_, t))| (x.clone(), t))
            .collect();
        (ops.combine)(&terms)
    };
    while next < items.len() {
        for (gs, gt) in gens {
            let s = a.mul(&items[next].0, gs);
            let t = (ops.mul)(&items[next].1, gt)?;
            match span.express(&s) {
                Some(c) => {
                    let expected = combine(&c, &items)?;
                    if !(ops.eq)(&expected, &t) {
                        return Err(ClosureError::Inconsistent { element: a.format(&s) });
                    }
                }
                None => {
                    span.insert(&s);
                    items.push((s, t));
                }
            }
        }
        next += 1;
    }
    if items.len() < a.dim() {
        return Err(ClosureError::NotGenerating { reached: items.len() });
    }
    (0..a.dim())
        .map(|i| {
            let c = span.express(&a.basis_element(i)).expect("spanning");
            combine(&c, &items).map_err(ClosureError::Other)
        })
        .collect()
}
