use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use freecrit::action::{check_h_action_only, verify_certificate};
use freecrit::algebra::ArtinAlgebra;
use freecrit::checkers::{h0_over_b, homology_action, koszul_decompose, InstanceBundle, Verdict};
use freecrit::complex::{ChainMap, FreeComplex};
use freecrit::error::Error;
use freecrit::field::{Field, FieldConfig, PrimeField, RationalField};
use freecrit::homotopy::{derived_annihilator, solve_homotopy};
use freecrit::io::fixtures::{run_bundled, run_check};
use freecrit::io::{AlgebraDoc, BundleDoc, ComplexDoc, Loader, Ref, RepDoc};
use freecrit::koszul::koszul;
use freecrit::module::{is_free, lemma43_freeness, poincare_truncated, Freeness};

#[derive(Parser)]
#[command(name = "freecrit", version, about = "Freeness checks for complexes with derived actions over local algebras")]
struct Cli {
    /// Coefficient field: gfp:<prime> or rational.
    #[arg(long, global = true, default_value = "gfp:101")]
    field: String,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and check its invariants.
    Validate { file: PathBuf },
    /// Homology of a complex, degree by degree.
    Homology { complex: PathBuf },
    /// Betti numbers of a complex (ranks after tensoring with k).
    Betti { complex: PathBuf },
    /// Betti numbers of H_i of a complex as an A-module, up to a bound.
    Poincare {
        complex: PathBuf,
        #[arg(long, default_value_t = 4)]
        trunc: usize,
        #[arg(long, default_value_t = 0)]
        degree: usize,
    },
    /// Basis of the elements of A acting null-homotopically on a complex.
    Annihilator { complex: PathBuf },
    /// Decide whether multiplication by an element is null-homotopic.
    Homotopy {
        complex: PathBuf,
        /// Polynomial in the algebra's generators.
        #[arg(long)]
        element: String,
        /// Print the homotopy.
        #[arg(long)]
        solve: bool,
    },
    /// Verify the action certificate of a bundle, or its action on homology.
    VerifyAction { bundle: PathBuf },
    /// Split a complex as a sum of copies of one Koszul complex.
    Decompose { complex: PathBuf },
    /// Freeness of H_0 of a bundle over the target algebra.
    Freeness { bundle: PathBuf },
    /// Run one checker on a bundle.
    Check {
        bundle: PathBuf,
        #[arg(long, value_parser = ["question", "lemma32", "thm31", "thm41", "thm51", "prop44"])]
        theorem: String,
    },
    /// Run the bundled worked examples against their expectations.
    PaperExamples {
        #[arg(long)]
        only: Option<String>,
    },
    /// Print the Koszul complex on a sequence of elements.
    Koszul {
        /// Algebra file; the ground field when omitted.
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Comma-separated elements.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        vars: Vec<String>,
    },
}

/// A command's result: text for people, JSON for machines, and pass/fail.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: Value, ok: bool) -> Self {
        Output { text, json, ok }
    }
}

type Res<T> = Result<T, Error>;

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn load_complex<F: Field>(field: &F, path: &Path) -> Res<FreeComplex<F>> {
    Loader::beside(field.clone(), path).complex(&Ref::Path(file_name(path)))
}

fn load_bundle<F: Field>(field: &F, path: &Path) -> Res<InstanceBundle<F>> {
    Loader::beside(field.clone(), path).bundle_file(&file_name(path))
}

fn format_all<F: Field>(a: &ArtinAlgebra<F>, xs: &[Vec<F::Elem>]) -> Vec<String> {
    xs.iter().map(|x| a.format(x)).collect()
}

fn freeness_json<E>(f: &Freeness<E>) -> Value {
    match f {
        Freeness::Free { rank } => json!({"free": true, "rank": rank}),
        Freeness::NotFree { rank_bound, .. } => json!({"free": false, "generators": rank_bound}),
        Freeness::FreeUpTo { rank, degree } => json!({"free": null, "rank": rank, "exact_through": degree}),
    }
}

fn freeness_text<E>(f: &Freeness<E>) -> String {
    match f {
        Freeness::Free { rank } => format!("free of rank {rank}"),
        Freeness::NotFree { rank_bound, .. } => format!("not free ({rank_bound} generators, nonzero relation)"),
        Freeness::FreeUpTo { rank, degree } => format!("free of rank {rank} through degree {degree}"),
    }
}

fn validate<F: Field>(field: &F, path: &Path) -> Res<Output> {
    let loader = Loader::beside(field.clone(), path);
    let name = file_name(path);
    let v: Value = loader.doc(&name)?;
    let has = |k: &str| v.get(k).is_some();
    let (kind, summary) = if has("expected") {
        let doc: freecrit::io::fixtures::FixtureDoc = loader.doc(&name)?;
        let bundle = match &doc.bundle {
            Ref::Path(p) => loader.doc::<BundleDoc>(p)?,
            Ref::Inline(b) => (**b).clone(),
        };
        loader.bundle(&bundle)?;
        ("fixture", format!("{} expectations", doc.expected.len()))
    } else if has("generators") && has("relations") {
        let doc: freecrit::io::CertificateDoc = loader.doc(&name)?;
        loader.morphism(&doc.morphism)?;
        ("certificate", format!("{} generators, {} relations (checked against a complex in its bundle)", doc.generators.len(), doc.relations.len()))
    } else if has("complex") {
        let b = loader.bundle_file(&name)?;
        let cert = match &b.certificate {
            Some(c) => format!(", certificate with {} relations", c.relations.len()),
            None => String::new(),
        };
        ("bundle", format!("{}: ranks {:?}{cert}", b.name, b.complex.ranks()))
    } else if has("ranks") {
        let c = load_complex(field, path)?;
        ("complex", format!("ranks {:?}, d^2 = 0", c.ranks()))
    } else if has("dims") {
        let doc: RepDoc = loader.doc(&name)?;
        let rep = doc.build(field)?;
        ("representation", format!("p = {}, dims {:?}", rep.p, rep.dims))
    } else if has("kind") {
        let a = loader.algebra(&Ref::Path(name.clone()))?;
        ("algebra", format!("dim {}, edim {}", a.dim(), a.edim()))
    } else if has("images") {
        let m = loader.morphism(&Ref::Path(name.clone()))?;
        ("morphism", format!("{} -> {}", m.source().dim(), m.target().dim()))
    } else {
        return Err(Error::Parse(format!("{name}: unrecognized document")));
    };
    Ok(Output::new(format!("{kind} ok: {summary}"), json!({"kind": kind, "summary": summary}), true))
}

fn homology<F: Field>(field: &F, path: &Path) -> Res<Output> {
    let c = load_complex(field, path)?;
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for h in c.homology_all()? {
        let exact = !h.is_truncated();
        text.push(format!(
            "H_{}: dim {}, nu {}{}",
            h.degree,
            h.dim(),
            h.nu(),
            if exact { String::new() } else { format!(" (exact part dim {})", h.exact_dim()) }
        ));
        rows.push(json!({"degree": h.degree, "dim": h.dim(), "nu": h.nu(), "exact": exact, "exact_dim": h.exact_dim()}));
    }
    Ok(Output::new(text.join("\n"), json!({"homology": rows}), true))
}

fn betti<F: Field>(field: &F, path: &Path) -> Res<Output> {
    let c = load_complex(field, path)?;
    let b = c.betti();
    Ok(Output::new(format!("betti {b:?}"), json!({"betti": b, "minimal": c.is_minimal()}), true))
}

fn poincare<F: Field>(field: &F, path: &Path, trunc: usize, degree: usize) -> Res<Output> {
    let c = load_complex(field, path)?;
    if degree > c.top() {
        return Err(Error::Precondition(format!("complex has no degree {degree}")));
    }
    let h = c.homology(degree)?;
    let p = poincare_truncated(&h.module, trunc)?;
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, &b)| b != 0)
        .map(|(i, b)| match i {
            0 => format!("{b}"),
            1 => format!("{b}t"),
            _ => format!("{b}t^{i}"),
        })
        .collect();
    let series = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
    Ok(Output::new(
        format!("P(H_{degree}) = {series} + O(t^{})", trunc + 1),
        json!({"degree": degree, "betti": p, "truncated_at": trunc}),
        true,
    ))
}

fn annihilator<F: Field>(field: &F, path: &Path) -> Res<Output> {
    let c = load_complex(field, path)?;
    let ann = derived_annihilator(&c)?;
    let basis = format_all(c.algebra(), &ann.basis);
    let text = format!(
        "derived annihilator: dim {}{}\n{}",
        basis.len(),
        if ann.exact { "" } else { " (over the truncation)" },
        basis.join("\n")
    );
    Ok(Output::new(text.trim_end().to_string(), json!({"basis": basis, "exact": ann.exact}), true))
}

fn homotopy<F: Field>(field: &F, path: &Path, element: &str, solve: bool) -> Res<Output> {
    let c = load_complex(field, path)?;
    let a = c.algebra();
    let x = a.parse_element(element)?;
    let h = solve_homotopy(&ChainMap::scalar(&c, &x))?;
    let Some(h) = h else {
        return Ok(Output::new(
            format!("{element} is not null-homotopic"),
            json!({"element": element, "null_homotopic": false}),
            false,
        ));
    };
    let maps: Vec<_> = h.maps.iter().map(|m| m.format(a)).collect();
    let mut text = format!("{element} is null-homotopic");
    if solve {
        for (i, m) in maps.iter().enumerate() {
            text.push_str(&format!("\nh_{i}: {m:?}"));
        }
    }
    let mut j = json!({"element": element, "null_homotopic": true});
    if solve {
        j["homotopy"] = json!(maps);
    }
    Ok(Output::new(text, j, true))
}

fn verify_action<F: Field>(field: &F, path: &Path) -> Res<Output> {
    let b = load_bundle(field, path)?;
    if let Some(cert) = &b.certificate {
        let r = verify_certificate(&b.complex, cert)?;
        let rows: Vec<Value> = r
            .relations
            .iter()
            .map(|x| json!({"relation": x.poly, "witness": format!("{:?}", x.kind), "ok": x.ok}))
            .collect();
        let text: Vec<String> = r
            .relations
            .iter()
            .map(|x| format!("{}: {} ({:?})", x.poly, if x.ok { "ok" } else { "FAILS" }, x.kind))
            .collect();
        return Ok(Output::new(
            format!("certificate {}\n{}", if r.verified { "verified" } else { "rejected" }, text.join("\n")),
            json!({"kind": "certificate", "verified": r.verified, "relations": rows}),
            r.verified,
        ));
    }
    let gens = homology_action(&b)?.ok_or_else(|| Error::Precondition("bundle has neither a certificate nor an action on homology".into()))?;
    let r = check_h_action_only(&b.complex, &b.morphism, &gens)?;
    let bad: Vec<String> = r.degrees.iter().filter_map(|d| d.detail.clone()).collect();
    Ok(Output::new(
        format!(
            "action on homology only: {}{}",
            if r.valid { "valid" } else { "invalid" },
            if bad.is_empty() { String::new() } else { format!("\n{}", bad.join("\n")) }
        ),
        json!({"kind": "homology", "valid": r.valid, "failures": bad}),
        r.valid,
    ))
}

fn decompose<F: Field>(field: &F, path: &Path) -> Res<Output> {
    let c = load_complex(field, path)?;
    Ok(match koszul_decompose(&c)? {
        Ok(d) => {
            let seq = format_all(c.algebra(), &d.sequence);
            Output::new(
                format!("F = K({})^{}", seq.join(", "), d.multiplicity),
                json!({"decomposed": true, "p": d.p, "multiplicity": d.multiplicity, "sequence": seq}),
                true,
            )
        }
        Err(o) => Output::new(
            format!("no decomposition: {} of {} independent annihilator elements found", o.independent, o.needed),
            json!({"decomposed": false, "annihilator_dim": o.annihilator_dim, "independent": o.independent, "needed": o.needed, "truncated": o.truncated}),
            false,
        ),
    })
}

fn freeness<F: Field>(field: &F, path: &Path) -> Res<Output> {
    let b = load_bundle(field, path)?;
    let gens = homology_action(&b)?.ok_or_else(|| Error::Precondition("no action of B on homology".into()))?;
    let m = h0_over_b(&b, &gens)?.ok_or_else(|| Error::Precondition("H_0 is not a B-module".into()))?;
    let direct = is_free(&m);
    // The syzygy test needs an exact ring; on a truncation only the direct test runs.
    let syzygy = match lemma43_freeness(&m) {
        Ok(s) => Some(s),
        Err(Error::TruncationInsufficient(_)) => None,
        Err(e) => return Err(e),
    };
    let ok = direct.is_free() == Some(true);
    Ok(Output::new(
        format!(
            "H_0 over B: dim {}, nu {}, {} (syzygy test: {})",
            m.dim(),
            m.nu(),
            freeness_text(&direct),
            syzygy.as_ref().map_or("n/a on a truncated ring".to_string(), freeness_text)
        ),
        json!({"dim": m.dim(), "nu": m.nu(), "direct": freeness_json(&direct), "syzygy": syzygy.as_ref().map(freeness_json)}),
        ok,
    ))
}

fn check<F: Field>(field: &F, path: &Path, theorem: &str) -> Res<Output> {
    let b = load_bundle(field, path)?;
    let (verdict, status, detail, report) = run_check(&b, theorem)?;
    let ok = verdict != Verdict::Fail;
    Ok(match report {
        Some(r) => Output::new(r.to_string().trim_end().to_string(), serde_json::to_value(&r).unwrap(), ok),
        None => Output::new(
            format!("{theorem}: {verdict}\n{detail}"),
            json!({"checker": theorem, "verdict": verdict, "status": status, "detail": detail}),
            ok,
        ),
    })
}

fn examples<F: Field>(field: &F, only: Option<&str>) -> Res<Output> {
    let reports = run_bundled(field.clone(), only)?;
    let mut text = Vec::new();
    for r in &reports {
        text.push(format!("{} [{}]: {}", r.name, r.source, if r.ok { "pass" } else { "FAIL" }));
        for o in &r.outcomes {
            let status = o.status.map(|s| format!(" ({s:?})")).unwrap_or_default();
            text.push(format!(
                "  {}: {}{status}, expected {}{}",
                o.checker,
                o.verdict,
                o.expected.verdict,
                if o.ok { "" } else { "  MISMATCH" }
            ));
        }
    }
    let ok = reports.iter().all(|r| r.ok);
    Ok(Output::new(text.join("\n"), serde_json::to_value(&reports).unwrap(), ok))
}

fn koszul_cmd<F: Field>(field: &F, algebra: Option<&Path>, vars: &[String]) -> Res<Output> {
    let (a, alg_ref) = match algebra {
        Some(p) => {
            let r = Ref::Path(file_name(p));
            (Loader::beside(field.clone(), p).algebra(&r)?, r)
        }
        None => {
            let a = ArtinAlgebra::ground_field(field);
            let doc = AlgebraDoc::artinian(&a);
            (Arc::new(a), Ref::Inline(Box::new(doc)))
        }
    };
    let xs = vars
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| a.parse_element(s))
        .collect::<Res<Vec<_>>>()?;
    let k = koszul(&a, &xs)?;
    let doc = ComplexDoc::from_complex(&k.complex, alg_ref);
    let j = serde_json::to_value(&doc).unwrap();
    Ok(Output::new(serde_json::to_string_pretty(&j).unwrap(), j, true))
}

fn run<F: Field>(field: F, cmd: &Command) -> Res<Output> {
    let f = &field;
    match cmd {
        Command::Validate { file } => validate(f, file),
        Command::Homology { complex } => homology(f, complex),
        Command::Betti { complex } => betti(f, complex),
        Command::Poincare { complex, trunc, degree } => poincare(f, complex, *trunc, *degree),
        Command::Annihilator { complex } => annihilator(f, complex),
        Command::Homotopy { complex, element, solve } => homotopy(f, complex, element, *solve),
        Command::VerifyAction { bundle } => verify_action(f, bundle),
        Command::Decompose { complex } => decompose(f, complex),
        Command::Freeness { bundle } => freeness(f, bundle),
        Command::Check { bundle, theorem } => check(f, bundle, theorem),
        Command::PaperExamples { only } => examples(f, only.as_deref()),
        Command::Koszul { algebra, vars } => koszul_cmd(f, algebra.as_deref(), vars),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli.field.parse::<FieldConfig>().and_then(|cfg| match cfg {
        FieldConfig::Gfp { p } => run(PrimeField::new(p)?, &cli.command),
        FieldConfig::Rational => run(RationalField, &cli.command),
    });
    match result {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).unwrap());
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
