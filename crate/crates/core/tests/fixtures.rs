use freecrit::field::PrimeField;
use freecrit::io::fixtures::run_bundled;
use freecrit::io::to_json;

#[test]
fn bundled_examples_meet_expectations() {
    let reports = run_bundled(PrimeField::new(101).unwrap(), None).unwrap();
    for r in &reports {
        for o in &r.outcomes {
            println!("{} {}: {} {:?} {}", r.name, o.checker, o.verdict, o.status, o.detail);
        }
        for c in &r.reports {
            if !r.ok {
                println!("{c}");
            }
        }
    }
    assert!(reports.iter().all(|r| r.ok));
}

#[test]
fn reports_are_deterministic() {
    let f = PrimeField::new(101).unwrap();
    let a = to_json(&run_bundled(f, None).unwrap()).unwrap();
    let b = to_json(&run_bundled(f, None).unwrap()).unwrap();
    assert_eq!(a, b);
}
