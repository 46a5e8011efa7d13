use std::time::Instant;

use arsite::selftest::{render_report, run, run_group, GROUPS};

#[test]
fn every_group_passes_on_another_seed() {
    for (name, _) in GROUPS {
        let t = Instant::now();
        let r = run_group(name, 7).unwrap();
        eprintln!("{name}: {} checks in {:.1?}", r.checks, t.elapsed());
        assert!(r.passed(), "{}", r.to_json());
    }
}

#[test]
fn report_order_is_independent_of_threads() {
    let only: Vec<String> = ["08_fibers", "06_primes_and_ideals"].map(String::from).to_vec();
    let a = render_report(3, &run(3, 1, &only));
    let b = render_report(3, &run(3, 4, &only));
    assert_eq!(a, b);
    assert!(a.starts_with("{\"group\":\"06_primes_and_ideals\""));
    assert_eq!(a.lines().count(), 3);
}
