use degen_core::identities::{
    check_cor7, check_thm3, check_thm4, check_thm5, check_thm6, check_thm8, parse_selection,
    reports_to_json, run_suite, run_suite_in, Bounds, CheckId,
};
use degen_core::ring::int;
use degen_core::stirling::{Fault, StirlingCache, StirlingFamily, StirlingKind};
use degen_core::Error;

#[test]
fn check_examples() {
    assert!(check_thm3(0, 0, 20).passed);
    assert!(check_thm4(2).passed);
    assert!(check_thm5(1, 1).passed);
    assert!(check_thm6(1, 16).passed);
    assert!(check_cor7(1, 1).passed);
    assert!(check_thm8(0, 0, 16).passed);
    assert!(check_thm8(1, 0, 16).passed);
}

#[test]
fn grid_sizes() {
    let b = Bounds { nmax: Some(12), rmax: Some(4), ..Bounds::default() };
    let reps = run_suite(&[CheckId::Thm5], &b, 0);
    assert_eq!(reps.len(), 48);
    assert!(reps.iter().all(|r| r.passed));
    let b = Bounds { nmax: Some(3), ..Bounds::default() };
    assert_eq!(run_suite(&[CheckId::Thm4], &b, 0).len(), 4);
    assert!(run_suite(&[], &b, 0).is_empty());
}

#[test]
fn unknown_check_lists_valid_ids() {
    match parse_selection("thm4,nosuch") {
        Err(Error::UnknownCheck { id, valid }) => {
            assert_eq!(id, "nosuch");
            for c in CheckId::ALL {
                assert!(valid.contains(c.id()));
            }
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let b = Bounds { nmax: Some(4), rmax: Some(2), order: Some(8), samples: Some(5) };
    let sel = parse_selection("all").unwrap();
    let first = reports_to_json(&run_suite_in(&StirlingCache::new(), &sel, &b, 42)).to_string();
    let second = reports_to_json(&run_suite(&sel, &b, 42)).to_string();
    assert_eq!(first, second);
    let other_seed = reports_to_json(&run_suite(&sel, &b, 43)).to_string();
    assert_ne!(first, other_seed);
}

#[test]
fn every_single_entry_fault_is_caught() {
    let b = Bounds { nmax: Some(6), rmax: Some(2), order: Some(8), samples: Some(2) };
    let sel = parse_selection("all").unwrap();
    for kind in StirlingKind::ALL {
        let r = if kind.has_r() { 2 } else { 0 };
        let family = StirlingFamily::with_r(kind, r);
        for (n, k) in [(1, 0), (3, 1), (5, 5), (6, 2)] {
            let fault = Fault { family, n, k, delta: int(1) };
            let cache = StirlingCache::with_faults(vec![fault]);
            let reps = run_suite_in(&cache, &sel, &b, 0);
            let bad: Vec<_> = reps.iter().filter(|r| !r.passed).collect();
            assert!(!bad.is_empty(), "{family} ({n},{k}) went unnoticed");
            let located = bad.iter().any(|r| {
                let loc = &r.counterexample.as_ref().unwrap().location;
                r.check == "stirling" && loc.contains(&format!("(n={n}, k={k})"))
            });
            assert!(located, "{family} ({n},{k}) not localized");
        }
    }
}
