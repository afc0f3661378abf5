//! The bundled worked examples and a runner that checks each against its
//! recorded expectations.

use serde::{Deserialize, Serialize};

use super::{Loader, Ref, Source};
use crate::action::{check_h_action_only, verify_certificate};
use crate::checkers::{
    check_lemma32, check_question, check_thm31, check_thm41, check_thm51, homology_action, koszul_decompose, prop44_divisibility,
    CheckReport, Status, Verdict,
};
use crate::error::{Error, Result};
use crate::field::Field;

macro_rules! embed {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/", $name)))),*]
    };
}

/// Every fixture file, by name.
pub static FILES: &[(&str, &str)] = embed![
    "kxy-x2-xy.algebra.json",
    "ky.algebra.json",
    "kxy-m2.algebra.json",
    "ku-u4.algebra.json",
    "kxyz-m2.algebra.json",
    "ku-u6.algebra.json",
    "kuv-m4.algebra.json",
    "ex2.3.complex.json",
    "ex2.3.bundle.json",
    "ex2.3.fixture.json",
    "ex4.5.complex.json",
    "ex4.5.certificate.json",
    "ex4.5.bundle.json",
    "ex4.5.fixture.json",
    "ex5.5.complex.json",
    "ex5.5.certificate.json",
    "ex5.5.bundle.json",
    "ex5.5.fixture.json",
    "ex5.6.complex.json",
    "ex5.6.certificate.json",
    "ex5.6.bundle.json",
    "ex5.6.fixture.json",
    "ex5.7.complex.json",
    "ex5.7.certificate.json",
    "ex5.7.bundle.json",
    "ex5.7.fixture.json",
];

pub const NAMES: &[&str] = &["ex2.3", "ex4.5", "ex5.5", "ex5.6", "ex5.7"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub checker: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureDoc {
    pub name: String,
    pub description: String,
    /// Where the expected values come from: a worked example, a derivation
    /// by hand, or a trivial case.
    pub source: String,
    pub bundle: Ref<super::BundleDoc>,
    pub expected: Vec<Expected>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub checker: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    pub detail: String,
    pub expected: Expected,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub source: String,
    pub outcomes: Vec<CheckOutcome>,
    pub reports: Vec<CheckReport>,
    pub ok: bool,
}

/// Runs one named check on a bundle: `(verdict, status, detail, full report)`.
pub fn run_check<F: Field>(
    b: &crate::checkers::InstanceBundle<F>,
    checker: &str,
) -> Result<(Verdict, Option<Status>, String, Option<CheckReport>)> {
    let full = |r: CheckReport| {
        let detail = r.notes.join("; ");
        Ok((r.verdict, Some(r.status), detail, Some(r)))
    };
    match checker {
        "question" => full(check_question(b)?),
        "lemma32" => full(check_lemma32(b)?),
        "thm31" => full(check_thm31(b)?),
        "thm41" => full(check_thm41(b)?),
        "thm51" => full(check_thm51(b)?),
        "certificate" => {
            let cert = b
                .certificate
                .as_ref()
                .ok_or_else(|| Error::Precondition("bundle has no certificate".into()))?;
            let r = verify_certificate(&b.complex, cert)?;
            let kinds: Vec<String> = r.relations.iter().map(|x| format!("{}: {:?}", x.poly, x.kind)).collect();
            Ok((Verdict::from_bool(r.verified), None, kinds.join(", "), None))
        }
        "h_action" => match homology_action(b)? {
            None => Ok((Verdict::Fail, None, "no action on homology".into(), None)),
            Some(g) => {
                let r = check_h_action_only(&b.complex, &b.morphism, &g)?;
                let bad: Vec<String> = r.degrees.iter().filter_map(|d| d.detail.clone()).collect();
                Ok((Verdict::from_bool(r.valid), None, bad.join("; "), None))
            }
        },
        "decompose" => match koszul_decompose(&b.complex)? {
            Ok(d) => Ok((Verdict::Pass, None, format!("p = {}, multiplicity {}", d.p, d.multiplicity), None)),
            Err(o) => Ok((
                Verdict::Fail,
                None,
                format!("{} of {} independent annihilator elements", o.independent, o.needed),
                None,
            )),
        },
        "prop44" => {
            let xs = match koszul_decompose(&b.complex)? {
                Ok(d) => d.sequence,
                Err(_) => Vec::new(),
            };
            let r = prop44_divisibility(&b.complex, &xs)?;
            Ok((Verdict::from_bool(r.divisible), None, format!("{:?} / (1+t)^{} = {:?}", r.betti, r.c, r.quotient), None))
        }
        other => Err(Error::Parse(format!("unknown checker `{other}`"))),
    }
}

pub fn run_fixture<F: Field>(loader: &Loader<F>, doc: &FixtureDoc) -> Result<FixtureReport> {
    let bundle_doc = match &doc.bundle {
        Ref::Path(p) => loader.doc(p)?,
        Ref::Inline(b) => (**b).clone(),
    };
    let b = loader.bundle(&bundle_doc)?;
    let mut outcomes = Vec::new();
    let mut reports = Vec::new();
    for e in &doc.expected {
        let (verdict, status, detail, report) = run_check(&b, &e.checker)?;
        let ok = verdict == e.verdict && e.status.is_none_or(|s| Some(s) == status);
        outcomes.push(CheckOutcome {
            checker: e.checker.clone(),
            verdict,
            status,
            detail,
            expected: e.clone(),
            ok,
        });
        reports.extend(report);
    }
    let ok = outcomes.iter().all(|o| o.ok);
    Ok(FixtureReport {
        name: doc.name.clone(),
        source: doc.source.clone(),
        outcomes,
        reports,
        ok,
    })
}

/// Runs the bundled fixtures, or only `only`.
pub fn run_bundled<F: Field>(field: F, only: Option<&str>) -> Result<Vec<FixtureReport>> {
    let names: Vec<&str> = match only {
        Some(n) if NAMES.contains(&n) => vec![n],
        Some(n) => return Err(Error::Parse(format!("no fixture named `{n}`"))),
        None => NAMES.to_vec(),
    };
    let loader = Loader::new(field, Source::Embedded(FILES));
    names
        .iter()
        .map(|n| {
            let doc: FixtureDoc = loader.doc(&format!("{n}.fixture.json"))?;
            run_fixture(&loader, &doc)
        })
        .collect()
}
