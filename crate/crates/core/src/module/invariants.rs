use std::fmt;

use super::FiniteModule;
use crate::algebra::{unit_vector, ArtinAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_basis, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Freeness<E> {
    Free { rank: usize },
    /// A nonzero element of the kernel of the minimal cover `B^ν -> M`.
    NotFree { rank_bound: usize, witness: Vec<E> },
    /// No kernel element up to this internal degree (truncated rings only).
    FreeUpTo { rank: usize, degree: i64 },
}

impl<E> Freeness<E> {
    pub fn is_free(&self) -> Option<bool> {
        match self {
            Freeness::Free { .. } => Some(true),
            Freeness::NotFree { .. } => Some(false),
            Freeness::FreeUpTo { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    Finite(usize),
    /// No obstruction found; depth is at least this.
    AtLeast(usize),
    /// Depth of the zero module.
    Infinite,
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(n) => write!(f, "{n}"),
            Depth::AtLeast(n) => write!(f, ">={n}"),
            Depth::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    /// Bounds when the annihilator could not be pinned down.
    Between(usize, usize),
    /// Dimension of the zero module.
    NegInfinity,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Between(a, b) => write!(f, "[{a},{b}]"),
            Dimension::NegInfinity => write!(f, "-inf"),
        }
    }
}

/// Kernel of the minimal cover `B^ν -> M`, split by internal degree when
/// the module is graded. Returns `(ν, kernel vectors with degrees)`.
fn cover_kernel<F: Field>(m: &FiniteModule<F>) -> (usize, Vec<(Vec<F::Elem>, Option<i64>)>) {
    let gens = m.minimal_generators();
    let cover = m.cover();
    let b = m.algebra();
    let f = m.field();
    let d = b.dim();
    let degrees = match (m.degrees(), b.grading()) {
        (Some(md), Some(g)) => Some(
            gens.iter()
                .flat_map(|&i| g.degrees.iter().map(move |&e| md[i] + e as i64))
                .collect::<Vec<i64>>(),
        ),
        _ => None,
    };
    let out = match degrees {
        None => kernel_basis(f, &cover).into_iter().map(|v| (v, None)).collect(),
        Some(kd) => {
            let mut ts = kd.clone();
            ts.sort_unstable();
            ts.dedup();
            let n = gens.len() * d;
            let mut out = Vec::new();
            for t in ts {
                let cols: Vec<usize> = (0..n).filter(|&j| kd[j] == t).collect();
                for v in kernel_basis(f, &cover.select_columns(&cols)) {
                    let mut full = vec![f.zero(); n];
                    for (k, &j) in cols.iter().enumerate() {
                        full[j] = v[k].clone();
                    }
                    out.push((full, Some(t)));
                }
            }
            out
        }
    };
    (gens.len(), out)
}

/// Is `M` a free module over its algebra?
pub fn is_free<F: Field>(m: &FiniteModule<F>) -> Freeness<F::Elem> {
    let b = m.algebra();
    let window = exact_window(m);
    if window.is_none() {
        // Exact Artinian case: free iff dim M = ν dim B, witness from the kernel.
        let nu = m.nu();
        if m.dim() == nu * b.dim() {
            return Freeness::Free { rank: nu };
        }
        let (_, ker) = cover_kernel(m);
        let witness = ker.into_iter().next().map(|(v, _)| v).expect("dimension count forces a kernel");
        return Freeness::NotFree { rank_bound: nu, witness };
    }
    let window = window.expect("truncated");
    let (nu, ker) = cover_kernel(m);
    for (v, t) in ker {
        if t.is_some_and(|t| t <= window) {
            return Freeness::NotFree { rank_bound: nu, witness: v };
        }
    }
    Freeness::FreeUpTo { rank: nu, degree: window }
}

/// Largest internal degree in which computations with `M` over a truncated
/// ring are exact, or `None` when everything is exact.
fn exact_window<F: Field>(m: &FiniteModule<F>) -> Option<i64> {
    let b = m.algebra();
    let t = b.truncation().map(|t| t as i64);
    match (t, m.exact_through()) {
        (None, None) => None,
        (Some(t), None) => Some(t + m.degrees().and_then(|d| d.iter().min().copied()).unwrap_or(0)),
        (None, Some(e)) => Some(e),
        (Some(t), Some(e)) => {
            let lo = m.degrees().and_then(|d| d.iter().min().copied()).unwrap_or(0);
            Some(e.min(t + lo))
        }
    }
}

/// Does only `0 ∈ B` act as zero on `M`?
pub fn is_faithful<F: Field>(m: &FiniteModule<F>) -> Result<bool> {
    let b = m.algebra();
    if b.is_truncated() {
        return Err(Error::TruncationInsufficient(
            "faithfulness over a truncated ring is not decided".into(),
        ));
    }
    let f = m.field();
    let n = m.dim() * m.dim();
    let cols: Vec<Vec<F::Elem>> = m.actions().iter().map(|a| a.data().to_vec()).collect();
    let mat = Matrix::from_columns(n, &cols, f.zero());
    Ok(mat.rank(f) == b.dim())
}

/// `depth_A M`.
///
/// Over an exact Artinian ring the socle `Hom(k, M)` of a nonzero module is
/// nonzero, so the depth is zero. Over a truncated ring a socle element is
/// only trusted when it lies in the exact window; otherwise the answer is a
/// lower bound.
pub fn depth<F: Field>(m: &FiniteModule<F>) -> Result<Depth> {
    if m.is_zero() {
        return Ok(Depth::Infinite);
    }
    let a = m.algebra();
    let f = m.field();
    let soc = socle(m, a);
    match exact_window(m) {
        None => {
            if soc.is_empty() {
                return Err(Error::InvalidAlgebra("nonzero module over an Artinian ring with zero socle".into()));
            }
            Ok(Depth::Finite(0))
        }
        Some(window) => {
            // Socle vectors of degree t are exact when every product with a
            // degree-one element stays inside the window.
            let degs = m.degrees().ok_or_else(|| Error::Precondition("graded module without degrees".into()))?;
            let found = soc.iter().any(|v| {
                let top = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|(i, _)| degs[i])
                    .max()
                    .unwrap_or(i64::MIN);
                top < window
            });
            Ok(if found { Depth::Finite(0) } else { Depth::AtLeast(1) })
        }
    }
}

/// Vectors killed by the maximal ideal. On graded modules each vector is
/// homogeneous, and only degree-one algebra elements are used.
fn socle<F: Field>(m: &FiniteModule<F>, a: &ArtinAlgebra<F>) -> Vec<Vec<F::Elem>> {
    let f = m.field();
    let gens: Vec<usize> = match a.grading() {
        Some(g) => (1..a.dim()).filter(|&b| g.degrees[b] == 1).collect(),
        None => (1..a.dim()).collect(),
    };
    let stacked = |cols: &[usize]| -> Matrix<F::Elem> {
        let mut rows = Vec::new();
        for &b in &gens {
            let act = m.actions()[b].select_columns(cols);
            for r in 0..act.rows() {
                rows.push(act.row(r).to_vec());
            }
        }
        Matrix::from_rows(rows, cols.len()).expect("widths")
    };
    match m.degrees() {
        None => {
            let all: Vec<usize> = (0..m.dim()).collect();
            if gens.is_empty() {
                return all.iter().map(|&i| unit_vector(f, m.dim(), i)).collect();
            }
            kernel_basis(f, &stacked(&all))
        }
        Some(degs) => {
            let mut ts = degs.to_vec();
            ts.sort_unstable();
            ts.dedup();
            let mut out = Vec::new();
            for t in ts {
                let cols: Vec<usize> = (0..m.dim()).filter(|&j| degs[j] == t).collect();
                let ker = if gens.is_empty() {
                    (0..cols.len()).map(|i| unit_vector(f, cols.len(), i)).collect()
                } else {
                    kernel_basis(f, &stacked(&cols))
                };
                for v in ker {
                    let mut full = vec![f.zero(); m.dim()];
                    for (k, &j) in cols.iter().enumerate() {
                        full[j] = v[k].clone();
                    }
                    out.push(full);
                }
            }
            out
        }
    }
}

/// Krull dimension of `M`.
pub fn dim_module<F: Field>(m: &FiniteModule<F>) -> Result<Dimension> {
    if m.is_zero() {
        return Ok(Dimension::NegInfinity);
    }
    let a = m.algebra();
    let Some(window) = exact_window(m) else {
        return Ok(Dimension::Finite(0));
    };
    let g = a.grading().expect("truncated rings are graded");
    let (Some(exps), Some(ideal)) = (&g.exponents, &g.ideal) else {
        return Err(Error::Precondition("dimension needs a monomial ring".into()));
    };
    let nvars = exps.first().map_or(0, |e| e.len());
    let krull = crate::algebra::krull_dim_of(nvars, ideal);
    let degs = m.degrees().ok_or_else(|| Error::Precondition("graded module without degrees".into()))?;
    let f = m.field();
    // An algebra element kills M inside the window when its action vanishes on
    // every basis vector whose image degree is still exact.
    let kills = |b: usize| -> bool {
        let s = g.degrees[b] as i64;
        let act = &m.actions()[b];
        (0..m.dim()).filter(|&j| degs[j] + s <= window).all(|j| act.column(j).iter().all(|x| f.is_zero(x)))
    };
    let mut ann_monomials: Vec<Vec<u32>> = ideal.clone();
    let mut killed = Vec::new();
    for b in 1..a.dim() {
        if kills(b) {
            killed.push(b);
            ann_monomials.push(exps[b].clone());
        }
    }
    // The annihilator is monomial when no combination of surviving basis
    // elements of a single degree kills M.
    let mut monomial = true;
    let mut by_degree: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
    for b in 1..a.dim() {
        if !killed.contains(&b) {
            by_degree.entry(g.degrees[b]).or_default().push(b);
        }
    }
    for (s, bs) in by_degree {
        let rows: Vec<usize> = (0..m.dim()).filter(|&j| degs[j] + s as i64 <= window).collect();
        if rows.is_empty() || bs.len() < 2 {
            continue;
        }
        let mut cols = Vec::new();
        for &b in &bs {
            let act = &m.actions()[b];
            let mut v = Vec::new();
            for &j in &rows {
                v.extend(act.column(j));
            }
            cols.push(v);
        }
        let mat = Matrix::from_columns(cols[0].len(), &cols, f.zero());
        if mat.rank(f) < bs.len() {
            monomial = false;
        }
    }
    let d = crate::algebra::krull_dim_of(nvars, &ann_monomials);
    Ok(if monomial { Dimension::Finite(d) } else { Dimension::Between(0, krull) })
}

/// `β_0, ..., β_n` of a module over an exact Artinian ring, by iterated
/// minimal covers.
pub fn poincare_truncated<F: Field>(m: &FiniteModule<F>, n: usize) -> Result<Vec<usize>> {
    if m.algebra().is_truncated() {
        return Err(Error::TruncationInsufficient(
            "Betti numbers of modules need an exact Artinian ring".into(),
        ));
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = m.clone();
    for i in 0..=n {
        out.push(cur.nu());
        if i < n {
            if cur.is_zero() {
                out.resize(n + 1, 0);
                break;
            }
            cur = cur.syzygy();
        }
    }
    Ok(out)
}

/// Freeness read off from `β_0` and `β_1`: free of rank `β_0` iff `β_1 = 0`.
pub fn lemma43_freeness<F: Field>(m: &FiniteModule<F>) -> Result<Freeness<F::Elem>> {
    let p = poincare_truncated(m, 1)?;
    if p[1] == 0 {
        Ok(Freeness::Free { rank: p[0] })
    } else {
        let (_, ker) = cover_kernel(m);
        Ok(Freeness::NotFree {
            rank_bound: p[0],
            witness: ker.into_iter().next().map(|(v, _)| v).unwrap_or_default(),
        })
    }
}
