//! Koszul complexes `K(x_1, ..., x_c)` with exterior bases `e_I`.
//!
//! Subsets `I` of a fixed size are listed in lexicographic order and
//! `d(e_I) = Σ_j (-1)^{j+1} x_{i_j} e_{I \ i_j}`.

use std::sync::Arc;

use crate::algebra::ArtinAlgebra;
use crate::complex::{AlgMatrix, FreeComplex};
use crate::error::Result;
use crate::field::Field;
use crate::homotopy::{self, DerivedAnnihilator, Homotopy};
use crate::linalg::EchelonSpan;

#[derive(Debug, Clone)]
pub struct KoszulComplex<F: Field> {
    pub complex: FreeComplex<F>,
    pub sequence: Vec<Vec<F::Elem>>,
    /// `subsets[i]` lists the index sets of size `i`, 0-based.
    pub subsets: Vec<Vec<Vec<usize>>>,
}

/// Subsets of `0..n` of size `k` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn label(set: &[usize]) -> String {
    if set.is_empty() {
        "1".into()
    } else {
        let parts: Vec<String> = set.iter().map(|i| (i + 1).to_string()).collect();
        format!("e{}", parts.join(","))
    }
}

pub fn koszul<F: Field>(alg: &Arc<ArtinAlgebra<F>>, xs: &[Vec<F::Elem>]) -> Result<KoszulComplex<F>> {
    let f = alg.field();
    let c = xs.len();
    let sets: Vec<Vec<Vec<usize>>> = (0..=c).map(|k| subsets(c, k)).collect();
    let mut diffs = Vec::new();
    for i in 1..=c {
        let mut d = AlgMatrix::zeros(alg, sets[i - 1].len(), sets[i].len());
        for (col, set) in sets[i].iter().enumerate() {
            for (j, &idx) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(j);
                let row = sets[i - 1].iter().position(|s| *s == rest).expect("subset listed");
                let x = if j % 2 == 0 { xs[idx].clone() } else { alg.neg(&xs[idx]) };
                d.set_entry(row, col, &x);
            }
        }
        diffs.push(d);
    }
    let mut complex = FreeComplex::new(alg.clone(), 1, diffs)?;
    // Give e_I the degree Σ deg x_i when every x_i is homogeneous and nonzero.
    if let Some(g) = alg.grading() {
        let degs: Option<Vec<i64>> = xs
            .iter()
            .map(|x| {
                let ds: Vec<u32> = (0..alg.dim()).filter(|&b| !f.is_zero(&x[b])).map(|b| g.degrees[b]).collect();
                match ds.first() {
                    Some(&d) if ds.iter().all(|&e| e == d) => Some(d as i64),
                    _ => None,
                }
            })
            .collect();
        if let Some(degs) = degs {
            let shifts = sets
                .iter()
                .map(|ss| ss.iter().map(|s| s.iter().map(|&i| degs[i]).sum()).collect())
                .collect();
            complex = complex.with_shifts(shifts)?;
        }
    }
    let labels = sets.iter().map(|ss| ss.iter().map(|s| label(s)).collect()).collect();
    complex = complex.with_labels(labels)?;
    Ok(KoszulComplex {
        complex,
        sequence: xs.to_vec(),
        subsets: sets,
    })
}

impl<F: Field> KoszulComplex<F> {
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// Left multiplication by `e_t`: `e_I -> (-1)^{#{i in I : i < t}} e_{I ∪ t}`.
    /// It satisfies `d σ_t + σ_t d = x_t`.
    pub fn contraction(&self, t: usize) -> Homotopy<F::Elem> {
        let alg = self.complex.algebra();
        let f = alg.field();
        let c = self.len();
        let maps = (0..=c)
            .map(|i| {
                let mut m = AlgMatrix::zeros(alg, self.complex.rank(i + 1), self.complex.rank(i));
                if i < c {
                    for (col, set) in self.subsets[i].iter().enumerate() {
                        if set.contains(&t) {
                            continue;
                        }
                        let below = set.iter().filter(|&&s| s < t).count();
                        let mut bigger = set.clone();
                        bigger.push(t);
                        bigger.sort_unstable();
                        let row = self.subsets[i + 1].iter().position(|s| *s == bigger).expect("listed");
                        let sign = if below % 2 == 0 { f.one() } else { f.neg(&f.one()) };
                        m.set_entry(row, col, &alg.scalar(&sign));
                    }
                }
                m
            })
            .collect();
        Homotopy { maps }
    }

    /// Derived annihilator together with the ideal `(x)`, and whether they agree.
    pub fn annihilator_check(&self) -> Result<KoszulAnnihilatorReport<F>> {
        let alg = self.complex.algebra();
        let f = alg.field();
        let ann = homotopy::derived_annihilator(&self.complex)?;
        let mut ideal = EchelonSpan::new(f, alg.dim());
        for x in &self.sequence {
            for b in 0..alg.dim() {
                ideal.insert(&alg.mul(x, &alg.basis_element(b)));
            }
        }
        let mut ann_span = EchelonSpan::new(f, alg.dim());
        for v in &ann.basis {
            ann_span.insert(v);
        }
        let contains = ideal.rows().iter().all(|v| ann_span.contains(v));
        let equal = contains && ann_span.dim() == ideal.dim();
        Ok(KoszulAnnihilatorReport {
            ideal_dim: ideal.dim(),
            annihilator: ann,
            contains_ideal: contains,
            equals_ideal: equal,
        })
    }
}

#[derive(Debug, Clone)]
pub struct KoszulAnnihilatorReport<F: Field> {
    pub ideal_dim: usize,
    pub annihilator: DerivedAnnihilator<F>,
    pub contains_ideal: bool,
    pub equals_ideal: bool,
}
