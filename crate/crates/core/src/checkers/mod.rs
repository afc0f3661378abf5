//! Hypothesis and conclusion checks for freeness statements about a complex
//! `F` over `A` that carries an action of a local `A`-algebra `B`.
//!
//! Every check is three-valued: a quantity that is only bounded on a
//! truncated backend gives `not_applicable` rather than a guess.

mod decompose;
mod range;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use decompose::{
    artinian_ci, divide_by_one_plus_t, fiber_ci, is_exceptional_ci_surjective, kernel_generators, koszul_decompose, prop44_divisibility, question58_candidate,
    CiVerdict, Decomposition, Obstruction, Prop44, Question58Report, MAX_DECOMPOSE_P,
};
pub use range::Range;

use crate::action::{self, check_h_action_only, induced_action_on_homology, lifted_action, verify_certificate, ActionCertificate};
use crate::algebra::{beta0_of_mab, AlgebraMorphism, ArtinAlgebra};
use crate::closure::{self, ClosureError, Ops};
use crate::complex::{ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homotopy::derived_annihilator;
use crate::koszul::binomial;
use crate::linalg::Matrix;
use crate::module::{depth, dim_module, is_free, poincare_truncated, Depth, Dimension, FiniteModule, Freeness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn from_option(b: Option<bool>) -> Self {
        b.map_or(Verdict::NotApplicable, Verdict::from_bool)
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::NotApplicable, _) | (_, Verdict::NotApplicable) => Verdict::NotApplicable,
            _ => Verdict::Pass,
        }
    }

    pub fn all(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        vs.into_iter().fold(Verdict::Pass, Verdict::and)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "n/a",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: String,
    pub threshold: String,
    pub verdict: Verdict,
}

impl Check {
    pub fn new(name: &str, value: impl fmt::Display, threshold: impl fmt::Display, verdict: Verdict) -> Self {
        Check {
            name: name.to_string(),
            value: value.to_string(),
            threshold: threshold.to_string(),
            verdict,
        }
    }

    fn le(name: &str, a: Range, b: Range) -> Self {
        Check::new(name, a, format!("<= {b}"), a.le(b))
    }

    fn ge(name: &str, a: Range, b: Range) -> Self {
        Check::new(name, a, format!(">= {b}"), b.le(a))
    }

    fn eq(name: &str, a: Range, b: Range) -> Self {
        Check::new(name, a, format!("= {b}"), a.eq(b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// All hypotheses hold.
    Applies,
    HypothesesNotMet,
    /// Some hypothesis could not be decided.
    Undetermined,
    /// Hypotheses of the question hold but no proved statement covers the instance.
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checker: String,
    pub instance: String,
    pub hypotheses: Vec<Check>,
    pub conclusions: Vec<Check>,
    pub status: Status,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn build(checker: &str, instance: &str, hypotheses: Vec<Check>, conclusions: Vec<Check>, notes: Vec<String>) -> Self {
        let hyp = Verdict::all(hypotheses.iter().map(|c| c.verdict));
        let status = match hyp {
            Verdict::Pass => Status::Applies,
            Verdict::Fail => Status::HypothesesNotMet,
            Verdict::NotApplicable => Status::Undetermined,
        };
        let verdict = Verdict::all(hypotheses.iter().chain(&conclusions).map(|c| c.verdict));
        CheckReport {
            checker: checker.to_string(),
            instance: instance.to_string(),
            hypotheses,
            conclusions,
            status,
            verdict,
            notes,
        }
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Check> {
        self.hypotheses.iter().find(|c| c.name == name)
    }

    pub fn conclusion(&self, name: &str) -> Option<&Check> {
        self.conclusions.iter().find(|c| c.name == name)
    }

    /// Hypotheses all pass while some conclusion fails.
    pub fn refutes(&self) -> bool {
        self.status == Status::Applies && self.conclusions.iter().any(|c| c.verdict == Verdict::Fail)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} on {}: {} ({:?})", self.checker, self.instance, self.verdict, self.status)?;
        for (title, list) in [("hypotheses", &self.hypotheses), ("conclusions", &self.conclusions)] {
            writeln!(f, "  {title}:")?;
            for c in list {
                if c.threshold.starts_with(['<', '>', '=']) {
                    writeln!(f, "    [{}] {}: {} {}", c.verdict, c.name, c.value, c.threshold)?;
                } else {
                    writeln!(f, "    [{}] {}: {} (expected {})", c.verdict, c.name, c.value, c.threshold)?;
                }
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

type GenMatrices<E> = Vec<(Vec<E>, Vec<Matrix<E>>)>;

/// `A`, `B`, `φ: A -> B`, a complex `F` over `A`, and whatever action data
/// is available: a certificate for a derived action, bare matrices on
/// homology, or a strict action by chain maps.
#[derive(Debug, Clone)]
pub struct InstanceBundle<F: Field> {
    pub name: String,
    pub morphism: AlgebraMorphism<F>,
    pub target: Arc<ArtinAlgebra<F>>,
    pub complex: FreeComplex<F>,
    pub certificate: Option<ActionCertificate<F>>,
    /// Elements of `B` generating it, with their matrices on each `H_i`.
    pub h_action: Option<GenMatrices<F::Elem>>,
    /// Elements of `B` generating it, acting by chain endomorphisms.
    pub strict_action: Option<Vec<(Vec<F::Elem>, ChainMap<F>)>>,
}

impl<F: Field> InstanceBundle<F> {
    pub fn new(name: &str, morphism: AlgebraMorphism<F>, complex: FreeComplex<F>) -> Result<Self> {
        if morphism.source() != complex.algebra().as_ref() {
            return Err(Error::Precondition("the morphism does not start at the complex's algebra".into()));
        }
        Ok(InstanceBundle {
            name: name.to_string(),
            target: Arc::new(morphism.target().clone()),
            morphism,
            complex,
            certificate: None,
            h_action: None,
            strict_action: None,
        })
    }

    pub fn with_certificate(mut self, cert: ActionCertificate<F>) -> Self {
        self.certificate = Some(cert);
        self
    }

    pub fn with_h_action(mut self, gens: GenMatrices<F::Elem>) -> Self {
        self.h_action = Some(gens);
        self
    }

    pub fn with_strict_action(mut self, gens: Vec<(Vec<F::Elem>, ChainMap<F>)>) -> Self {
        self.strict_action = Some(gens);
        self
    }

    pub fn source(&self) -> &Arc<ArtinAlgebra<F>> {
        self.complex.algebra()
    }
}

fn depth_range(d: Depth) -> Range {
    match d {
        Depth::Finite(n) => Range::exact(n as i64),
        Depth::AtLeast(n) => Range::at_least(n as i64),
        Depth::Infinite => Range::unknown(),
    }
}

fn dim_range(d: Dimension) -> Range {
    match d {
        Dimension::Finite(n) => Range::exact(n as i64),
        Dimension::Between(a, b) => Range::between(a as i64, b as i64),
        Dimension::NegInfinity => Range::unknown(),
    }
}

fn ring_depth<F: Field>(a: &Arc<ArtinAlgebra<F>>) -> Result<Range> {
    Ok(depth_range(depth(&FiniteModule::free(a, 1))?))
}

fn ring_dim<F: Field>(a: &Arc<ArtinAlgebra<F>>) -> Result<Range> {
    Ok(dim_range(dim_module(&FiniteModule::free(a, 1))?))
}

/// Basic numerical data of a bundle.
struct Basics {
    pd: Option<usize>,
    inf: Option<usize>,
    sup: Range,
    edim_a: i64,
    edim_b: i64,
}

impl Basics {
    fn of<F: Field>(b: &InstanceBundle<F>) -> Result<(Self, Vec<String>)> {
        let mut notes = Vec::new();
        let c = &b.complex;
        let inf = c.betti().iter().position(|&x| x != 0);
        let sup = match c.inf_sup() {
            Ok(Some((_, s))) => Range::exact(s as i64),
            Ok(None) => Range::unknown(),
            Err(Error::TruncationInsufficient(msg)) => {
                // Homology seen in the exact window bounds sup from below;
                // the length of F bounds it from above.
                notes.push(format!("sup H bounded only: {msg}"));
                let seen = c.homology_all()?.iter().rposition(|h| h.exact_dim() > 0);
                Range {
                    lo: Some(seen.or(inf).unwrap_or(0) as i64),
                    hi: Some(c.top() as i64),
                }
            }
            Err(e) => return Err(e),
        };
        Ok((
            Basics {
                pd: c.proj_dim(),
                inf,
                sup,
                edim_a: b.source().edim() as i64,
                edim_b: b.target.edim() as i64,
            },
            notes,
        ))
    }

    fn pd(&self) -> Range {
        self.pd.map_or(Range::unknown(), |p| Range::exact(p as i64))
    }

    fn inf_check(&self) -> Check {
        let v = self.inf.map_or("none".to_string(), |i| i.to_string());
        Check::new("inf H = 0", v, "= 0", Verdict::from_bool(self.inf == Some(0)))
    }
}

/// Whether a derived action of `B` on `F` is established, with a reason.
///
/// Without a certificate and for surjective `φ`, a derived action exists
/// exactly when the kernel of `φ` lies in the derived annihilator of `F`.
pub fn derived_action_status<F: Field>(b: &InstanceBundle<F>) -> Result<(Verdict, String)> {
    if let Some(cert) = &b.certificate {
        let r = verify_certificate(&b.complex, cert)?;
        if r.verified {
            return Ok((Verdict::Pass, "certificate verified".into()));
        }
        let bad: Vec<String> = r.relations.iter().filter(|x| !x.ok).map(|x| x.poly.clone()).collect();
        return Ok((Verdict::Fail, format!("certificate fails at {}", bad.join(", "))));
    }
    if b.strict_action.is_some() {
        let (ok, why) = strict_action_status(b)?;
        if ok {
            return Ok((Verdict::Pass, "strict action".into()));
        }
        return Ok((Verdict::Fail, why));
    }
    if b.morphism.is_surjective() {
        let a = b.source();
        let ann = derived_annihilator(&b.complex)?;
        for g in kernel_generators(&b.morphism)? {
            if !ann.contains(a.field(), &g) {
                return Ok((Verdict::Fail, format!("{} is not null-homotopic on F", a.format(&g))));
            }
        }
        if ann.exact {
            return Ok((Verdict::Pass, "kernel of the map lies in the derived annihilator".into()));
        }
        return Ok((Verdict::NotApplicable, "kernel null-homotopic only over the truncation".into()));
    }
    Ok((Verdict::NotApplicable, "no certificate supplied".into()))
}

/// Checks that the strict generators commute with `d`, satisfy the
/// relations of `B` on the nose, and restrict to the `A`-action along `φ`.
pub fn strict_action_status<F: Field>(b: &InstanceBundle<F>) -> Result<(bool, String)> {
    let Some(gens) = &b.strict_action else {
        return Ok((false, "no strict action supplied".into()));
    };
    let c = &b.complex;
    for (_, m) in gens {
        if m.source.ranks() != c.ranks() || m.target.ranks() != c.ranks() {
            return Err(Error::Dimension("strict generator is not an endomorphism of F".into()));
        }
        if !m.chain_defects().is_empty() {
            return Ok((false, "a generator does not commute with d".into()));
        }
    }
    let a = c.algebra();
    let mul = |x: &ChainMap<F>, y: &ChainMap<F>| x.compose(y);
    let comb = |terms: &[(F::Elem, &ChainMap<F>)]| {
        let mut acc = ChainMap::zero(c, c)?;
        for (k, m) in terms {
            acc = acc.add(&m.scale(&a.scalar(k)));
        }
        Ok(acc)
    };
    let eq = |x: &ChainMap<F>, y: &ChainMap<F>| x.sub(y).is_zero();
    let ops = Ops {
        mul: &mul,
        combine: &comb,
        eq: &eq,
    };
    let rho = match closure::extend(&b.target, ChainMap::identity(c), gens, ops) {
        Ok(r) => r,
        Err(ClosureError::Inconsistent { element }) => return Ok((false, format!("relation of B fails at {element}"))),
        Err(ClosureError::NotGenerating { reached }) => return Ok((false, format!("generators span {reached} dimensions of B"))),
        Err(ClosureError::Other(e)) => return Err(e),
    };
    for (name, x) in a.symbols() {
        let img = b.morphism.apply(x);
        let mut acc = ChainMap::zero(c, c)?;
        for (k, m) in img.iter().zip(&rho) {
            if !a.field().is_zero(k) {
                acc = acc.add(&m.scale(&a.scalar(k)));
            }
        }
        if !acc.sub(&ChainMap::scalar(c, x)).is_zero() {
            return Ok((false, format!("`{name}` acts differently through B")));
        }
    }
    Ok((true, "strict action".into()))
}

/// Matrices of generators of `B` on every `H_i`, from whichever action
/// data the bundle carries; for surjective `φ` without such data, the
/// action of preimages in `A`, which is a `B`-action iff the kernel kills
/// `H_*`.
pub fn homology_action<F: Field>(b: &InstanceBundle<F>) -> Result<Option<GenMatrices<F::Elem>>> {
    if let Some(h) = &b.h_action {
        return Ok(Some(h.clone()));
    }
    let c = &b.complex;
    if let Some(cert) = &b.certificate {
        if !verify_certificate(c, cert)?.verified {
            return Ok(None);
        }
        let act = induced_action_on_homology(c, cert)?;
        let out = cert
            .generators
            .iter()
            .enumerate()
            .map(|(g, gen)| (gen.image.clone(), act.matrices.iter().map(|m| m[g].1.clone()).collect()))
            .collect();
        return Ok(Some(out));
    }
    if let Some(gens) = &b.strict_action {
        if !strict_action_status(b)?.0 {
            return Ok(None);
        }
        let hs = c.homology_all()?;
        let out = gens
            .iter()
            .map(|(e, m)| {
                let mats = hs.iter().enumerate().map(|(i, h)| m.on_homology(i, h, h)).collect::<Result<Vec<_>>>()?;
                Ok((e.clone(), mats))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Some(out));
    }
    if b.morphism.is_surjective() {
        let gens: Vec<Vec<F::Elem>> = b.target.symbols().iter().map(|(_, v)| v.clone()).collect();
        return Ok(Some(lifted_action(c, &b.morphism, &gens)?));
    }
    Ok(None)
}

/// `H_0(F)` as a `B`-module, when the action matrices define one.
pub fn h0_over_b<F: Field>(b: &InstanceBundle<F>, gens: &GenMatrices<F::Elem>) -> Result<Option<FiniteModule<F>>> {
    let h0 = b.complex.homology(0)?;
    let n = h0.dim();
    let g0: Vec<(Vec<F::Elem>, Matrix<F::Elem>)> = gens.iter().map(|(e, m)| (e.clone(), m[0].clone())).collect();
    let Ok(rho) = action::represent(&b.target, n, &g0) else {
        return Ok(None);
    };
    let mut m = FiniteModule::new(b.target.clone(), n, rho)?;
    if let (Some(d), Some(_)) = (h0.module.degrees(), b.target.grading()) {
        m = m.with_degrees(d.to_vec(), h0.module.exact_through());
    }
    Ok(Some(m))
}

fn freeness_check<F: Field>(name: &str, m: Option<&FiniteModule<F>>) -> Check {
    match m.map(is_free) {
        Some(Freeness::Free { rank }) => Check::new(name, format!("free of rank {rank}"), "free", Verdict::Pass),
        Some(Freeness::NotFree { rank_bound, .. }) => {
            Check::new(name, format!("not free ({rank_bound} generators)"), "free", Verdict::Fail)
        }
        Some(Freeness::FreeUpTo { rank, degree }) => Check::new(
            name,
            format!("free of rank {rank} through degree {degree}"),
            "free",
            Verdict::NotApplicable,
        ),
        None => Check::new(name, "no B-module structure", "free", Verdict::NotApplicable),
    }
}

fn h_action_check<F: Field>(b: &InstanceBundle<F>) -> Result<(Check, Option<GenMatrices<F::Elem>>)> {
    let gens = homology_action(b)?;
    let check = match &gens {
        None => Check::new("B-action on homology", "none", "valid", Verdict::Fail),
        Some(g) => {
            let r = check_h_action_only(&b.complex, &b.morphism, g)?;
            Check::new("B-action on homology", if r.valid { "valid" } else { "invalid" }, "valid", Verdict::from_bool(r.valid))
        }
    };
    let ok = check.verdict == Verdict::Pass;
    Ok((check, if ok { gens } else { None }))
}

/// Would any proved statement cover this instance of the question?
fn covered<F: Field>(b: &InstanceBundle<F>, basics: &Basics) -> Result<Option<String>> {
    let beta0 = beta0_of_mab(&b.morphism)? as i64;
    if let Some(p) = basics.pd {
        if (p as i64) <= basics.edim_a - beta0 {
            return Ok(Some("projective dimension is within edim A - ν(m_A B)".into()));
        }
    }
    if let Ok(CiVerdict::Yes) = fiber_ci(&b.morphism) {
        return Ok(Some("the fiber B/m_A B is a complete intersection".into()));
    }
    let gap = Range::exact(basics.edim_a - basics.edim_b);
    let room = ring_depth(b.source())?.sub(ring_dim(&b.target)?);
    if gap.le(room) == Verdict::Pass {
        return Ok(Some("edim A - edim B <= depth A - dim B".into()));
    }
    if b.strict_action.is_some() && strict_action_status(b)?.0 {
        return Ok(Some("the action is strict".into()));
    }
    Ok(None)
}

/// Hypotheses: a derived action, `inf H = 0` and `pd F <= edim A - edim B`.
/// Conclusion: `H_0(F)` is free over `B`.
pub fn check_question<F: Field>(b: &InstanceBundle<F>) -> Result<CheckReport> {
    let (basics, mut notes) = Basics::of(b)?;
    let (dv, why) = derived_action_status(b)?;
    let hyps = vec![
        Check::new("derived action", why, "established", dv),
        basics.inf_check(),
        Check::le("proj dim F <= edim A - edim B", basics.pd(), Range::exact(basics.edim_a - basics.edim_b)),
    ];
    let (_, gens) = h_action_check(b)?;
    let h0 = match &gens {
        Some(g) => h0_over_b(b, g)?,
        None => None,
    };
    let concl = vec![freeness_check("H_0 free over B", h0.as_ref())];
    let mut r = CheckReport::build("question", &b.name, hyps, concl, Vec::new());
    if r.status == Status::Applies {
        match covered(b, &basics)? {
            Some(why) => notes.push(format!("covered: {why}")),
            None => {
                notes.push("no theorem applies; the instance is open".into());
                r.status = Status::Open;
            }
        }
    }
    r.notes = notes;
    Ok(r)
}

/// The two lower bounds on `pd F` in the presence of a `B`-action on `H_*`,
/// and the criterion for equality in the second one.
pub fn check_lemma32<F: Field>(b: &InstanceBundle<F>) -> Result<CheckReport> {
    let (basics, notes) = Basics::of(b)?;
    let (hc, _) = h_action_check(b)?;
    let hyps = vec![hc, basics.inf_check()];
    let a = b.source();
    let depth_a = ring_depth(a)?;
    let dim_a = ring_dim(a)?;
    let dim_b = ring_dim(&b.target)?;
    let pd = basics.pd();
    let mut concl = vec![
        Check::ge("(1) proj dim F >= depth A - dim B + sup H", pd, depth_a.sub(dim_b).add(basics.sup)),
        Check::ge("(2) proj dim F >= dim A - dim B", pd, dim_a.sub(dim_b)),
    ];
    // dim F = max_n (dim H_n - n), depth F = depth A - pd F.
    let hs = b.complex.homology_all()?;
    let mut dim_f: Option<Range> = None;
    for (n, h) in hs.iter().enumerate() {
        let d = match dim_module(&h.module)? {
            Dimension::NegInfinity => continue,
            other => dim_range(other),
        };
        let shifted = d.sub(Range::exact(n as i64));
        dim_f = Some(dim_f.map_or(shifted, |x| x.max(shifted)));
    }
    let equality = pd.eq(dim_a.sub(dim_b));
    let criterion = match dim_f {
        Some(df) => {
            let cmd_f = df.sub(depth_a.sub(pd));
            let cmd_a = dim_a.sub(depth_a);
            let h0 = dim_range(dim_module(&hs[0].module)?);
            cmd_f.eq(cmd_a).and(h0.eq(dim_b))
        }
        None => Verdict::NotApplicable,
    };
    let v = match (equality, criterion) {
        (Verdict::NotApplicable, _) | (_, Verdict::NotApplicable) => Verdict::NotApplicable,
        (x, y) => Verdict::from_bool(x == y),
    };
    concl.push(Check::new(
        "equality in (2) iff cmd F = cmd A and dim H_0 = dim B",
        format!("equality {equality}, criterion {criterion}"),
        "agree",
        v,
    ));
    Ok(CheckReport::build("lemma32", &b.name, hyps, concl, notes))
}

/// Hypotheses: a `B`-action on `H_*`, `inf H = 0` and
/// `pd F <= edim A - edim B <= depth A - dim B`.
pub fn check_thm31<F: Field>(b: &InstanceBundle<F>) -> Result<CheckReport> {
    let (basics, mut notes) = Basics::of(b)?;
    let (hc, gens) = h_action_check(b)?;
    let a = b.source();
    let depth_a = ring_depth(a)?;
    let dim_a = ring_dim(a)?;
    let depth_b = ring_depth(&b.target)?;
    let dim_b = ring_dim(&b.target)?;
    let gap = Range::exact(basics.edim_a - basics.edim_b);
    let pd = basics.pd();
    let hyps = vec![
        hc,
        basics.inf_check(),
        Check::le("proj dim F <= edim A - edim B", pd, gap),
        Check::le("edim A - edim B <= depth A - dim B", gap, depth_a.sub(dim_b)),
    ];
    let h0 = match &gens {
        Some(g) => h0_over_b(b, g)?,
        None => None,
    };
    let ci = if b.morphism.is_surjective() {
        match is_exceptional_ci_surjective(&b.morphism)? {
            CiVerdict::Yes => Check::new("(4) exceptional complete intersection", "yes", "yes", Verdict::Pass),
            CiVerdict::No(why) => Check::new("(4) exceptional complete intersection", why, "yes", Verdict::Fail),
            CiVerdict::UpToDegree(d) => Check::new(
                "(4) exceptional complete intersection",
                format!("regular through degree {d}"),
                "yes",
                Verdict::NotApplicable,
            ),
        }
    } else {
        notes.push("map is not surjective; exceptional complete intersection not checked".into());
        Check::new("(4) exceptional complete intersection", "not surjective", "yes", Verdict::NotApplicable)
    };
    let concl = vec![
        freeness_check("(1) H_0 free over B", h0.as_ref()),
        Check::eq("(1) sup H = 0", basics.sup, Range::exact(0)),
        Check::eq("(2) proj dim F = edim A - edim B", pd, gap),
        Check::eq("(2) edim A - edim B = depth A - dim B", gap, depth_a.sub(dim_b)),
        Check::eq("(3) A Cohen-Macaulay: depth = dim", depth_a, dim_a),
        Check::eq("(3) B Cohen-Macaulay: depth = dim", depth_b, dim_b),
        ci,
    ];
    Ok(CheckReport::build("thm31", &b.name, hyps, concl, notes))
}

/// For a complex of `B`-modules (a strict action): if `Tor^A_i(k, F) = 0`
/// for `i > edim A - edim B`, then `H_*(F) = H_0(F)` is free over `B` and
/// `φ` is an exceptional complete intersection.
pub fn check_thm41<F: Field>(b: &InstanceBundle<F>) -> Result<CheckReport> {
    let (basics, mut notes) = Basics::of(b)?;
    let (ok, why) = strict_action_status(b)?;
    let gap = basics.edim_a - basics.edim_b;
    let betti = b.complex.betti();
    let tail: Vec<usize> = betti.iter().enumerate().filter(|(i, _)| *i as i64 > gap).map(|(_, &x)| x).collect();
    let hyps = vec![
        Check::new("strict B-action", why, "valid", Verdict::from_bool(ok)),
        basics.inf_check(),
        Check::new(
            "Tor_i(k, F) = 0 for i > edim A - edim B",
            format!("{tail:?}"),
            format!("zero above {gap}"),
            Verdict::from_bool(tail.iter().all(|&x| x == 0)),
        ),
    ];
    let gens = if ok { homology_action(b)? } else { None };
    let h0 = match &gens {
        Some(g) => h0_over_b(b, g)?,
        None => None,
    };
    let ci = if b.morphism.is_surjective() {
        match is_exceptional_ci_surjective(&b.morphism)? {
            CiVerdict::Yes => Check::new("exceptional complete intersection", "yes", "yes", Verdict::Pass),
            CiVerdict::No(why) => Check::new("exceptional complete intersection", why, "yes", Verdict::Fail),
            CiVerdict::UpToDegree(d) => Check::new(
                "exceptional complete intersection",
                format!("regular through degree {d}"),
                "yes",
                Verdict::NotApplicable,
            ),
        }
    } else {
        notes.push("map is not surjective; only the surjective case is checked".into());
        Check::new("exceptional complete intersection", "not surjective", "yes", Verdict::NotApplicable)
    };
    let concl = vec![
        Check::eq("H_i = 0 for i > 0", basics.sup, Range::exact(0)),
        freeness_check("H_0 free over B", h0.as_ref()),
        ci,
    ];
    Ok(CheckReport::build("thm41", &b.name, hyps, concl, notes))
}

/// Hypotheses: a derived action, `inf H = 0` and `p = pd F <= edim A - ν(m_A B)`.
pub fn check_thm51<F: Field>(b: &InstanceBundle<F>) -> Result<CheckReport> {
    let (basics, mut notes) = Basics::of(b)?;
    let (dv, why) = derived_action_status(b)?;
    let beta0 = beta0_of_mab(&b.morphism)? as i64;
    let pd = basics.pd();
    let bound = Range::exact(basics.edim_a - beta0);
    let hyps = vec![
        Check::new("derived action", why, "established", dv),
        basics.inf_check(),
        Check::le("proj dim F <= edim A - nu(m_A B)", pd, bound),
    ];
    let gens = if dv == Verdict::Pass { homology_action(b)? } else { None };
    let h0 = match &gens {
        Some(g) => h0_over_b(b, g)?,
        None => None,
    };
    let h0_a = b.complex.homology(0)?;
    let beta_m = match poincare_truncated(&h0_a.module, 1) {
        Ok(v) => {
            let p = basics.pd.unwrap_or(0);
            Check::new(
                "(1) beta_1(H_0) = p * beta_0(H_0)",
                format!("{} vs {} * {}", v[1], p, v[0]),
                "equal",
                Verdict::from_bool(v[1] == p * v[0]),
            )
        }
        Err(Error::TruncationInsufficient(_)) => Check::new("(1) beta_1(H_0) = p * beta_0(H_0)", "truncated", "equal", Verdict::NotApplicable),
        Err(e) => return Err(e),
    };
    let ci = match fiber_ci(&b.morphism)? {
        CiVerdict::Yes => Check::new("(2) B/m_A B complete intersection", "yes", "yes", Verdict::Pass),
        CiVerdict::No(why) => Check::new("(2) B/m_A B complete intersection", why, "yes", Verdict::Fail),
        CiVerdict::UpToDegree(d) => Check::new("(2) B/m_A B complete intersection", format!("through degree {d}"), "yes", Verdict::NotApplicable),
    };
    let betti = b.complex.betti();
    let binom = match basics.pd {
        Some(p) => {
            let ok = (0..=p).all(|i| betti.get(i).copied().unwrap_or(0) == binomial(p, i) * betti[0]);
            Check::new("(4) beta_i(F) = C(p,i) beta_0(F)", format!("{betti:?}"), format!("binomial in p = {p}"), Verdict::from_bool(ok))
        }
        None => Check::new("(4) beta_i(F) = C(p,i) beta_0(F)", format!("{betti:?}"), "binomial", Verdict::NotApplicable),
    };
    let concl = vec![
        freeness_check("(1) H_0 free over B", h0.as_ref()),
        beta_m,
        ci,
        Check::eq("(3) p = edim A - nu(m_A B)", pd, bound),
        Check::eq("(3) p = edim A - edim B", pd, Range::exact(basics.edim_a - basics.edim_b)),
        binom,
    ];
    let mut r = CheckReport::build("thm51", &b.name, hyps, concl, Vec::new());
    if r.status == Status::HypothesesNotMet && dv == Verdict::Pass && basics.inf == Some(0) {
        let q = pd.le(Range::exact(basics.edim_a - basics.edim_b));
        if q == Verdict::Pass && covered(b, &basics)?.is_none() {
            notes.push("the question's hypotheses hold but no theorem applies; the instance is open".into());
            r.status = Status::Open;
        }
    }
    r.notes = notes;
    Ok(r)
}
