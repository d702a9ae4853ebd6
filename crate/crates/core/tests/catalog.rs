//! Full-catalog verification on the default grid, plus the classical
//! specializations at (1, -1) and (2, -1).

use lucas_core::identities::{check_identity, Binding, IdentityId, Status};
use lucas_core::sweep::{all_identity_ids, run_catalog, sweep, SweepGrid, Verdict};
use lucas_core::validate_params;

#[test]
fn default_grid_run_is_clean_and_verdicts_are_as_expected() {
    let grid = SweepGrid::default_grid();
    let run = run_catalog(&all_identity_ids(), &grid).expect("sweep evaluates");
    assert!(run.clean(), "alarm: {:?}", run.alarm.map(|a| a.to_string()));
    assert_eq!(run.reports.len(), all_identity_ids().len());

    // Audit entries that document misprinted variants must falsify...
    let expect_falsified = ["R-theta-even", "T94-printed", "R-e-printed", "H92-printed"];
    // ...and every other entry must verify.
    for report in &run.reports {
        let id = IdentityId::from_str_id(&report.identity).unwrap();
        if expect_falsified.contains(&report.identity.as_str()) {
            assert_eq!(
                report.verdict,
                Verdict::Falsified,
                "{} should be falsified on the default grid",
                report.identity
            );
            assert_eq!(id.status(), Status::Audit);
            assert!(!report.counterexamples.is_empty());
        } else {
            assert_eq!(
                report.verdict,
                Verdict::VerifiedOnGrid,
                "{} unexpectedly falsified: {:?}",
                report.identity,
                report.counterexamples.first()
            );
        }
        assert!(report.cases_checked > 0, "{} checked nothing", report.identity);
    }
}

/// The printed e-recurrence constant is only wrong for q = -1; on a
/// q = 1 grid it coincides with the corrected constant and verifies.
#[test]
fn printed_e_constant_verifies_on_q_plus_one_grid() {
    let mut grid = SweepGrid::default_grid();
    grid.params.retain(|p| p.q() == 1);
    assert!(!grid.params.is_empty());
    let report = sweep(IdentityId::REPrinted, &grid).unwrap();
    assert_eq!(report.verdict, Verdict::VerifiedOnGrid);

    let mut grid = SweepGrid::default_grid();
    grid.params.retain(|p| p.q() == -1);
    let report = sweep(IdentityId::REPrinted, &grid).unwrap();
    assert_eq!(report.verdict, Verdict::Falsified);
}

/// At (2, -1) the second family of alternating-sum forms specializes to the
/// classical Pell statements; instantiate the documented (s, t, r) choices.
#[test]
fn pell_specializations_of_t5_family() {
    let pell = validate_params(2, -1).unwrap();
    for k in 0..6i64 {
        for n in 0..8i64 {
            // (s, t) = (2k, 0), r in {0, 2, 1, -1}; (s, t) = (2k+1, 0),
            // r in {2, 3}; (s, t) = (2k, 1), r = 0.
            let cases = [
                (2 * k, 0, 0),
                (2 * k, 0, 2),
                (2 * k, 0, 1),
                (2 * k, 0, -1),
                (2 * k + 1, 0, 2),
                (2 * k + 1, 0, 3),
                (2 * k, 1, 0),
            ];
            for (s, t, r) in cases {
                let binding = Binding { r, s, t, n, ..Default::default() };
                let result = check_identity(IdentityId::T5_71, &pell, &binding).unwrap();
                assert!(result.holds(), "k={k} n={n} r={r} s={s} t={t}");
            }
            // The three alternating-sum families at the same specialization.
            for id in [IdentityId::T5_81, IdentityId::T5_91, IdentityId::T5_101] {
                let binding = Binding { k, n, ..Default::default() };
                assert!(check_identity(id, &pell, &binding).unwrap().holds());
            }
        }
    }
}

/// At (1, -1) the correction-sequence forms are the classical Fibonacci/Lucas
/// alternating-sum statements.
#[test]
fn fibonacci_specializations_of_correction_forms() {
    let fib = validate_params(1, -1).unwrap();
    for k in 0..6i64 {
        for n in 0..8i64 {
            for id in [IdentityId::T92, IdentityId::T93, IdentityId::T94] {
                let binding = Binding { k, n, ..Default::default() };
                assert!(
                    check_identity(id, &fib, &binding).unwrap().holds(),
                    "{id} at k={k} n={n}"
                );
            }
        }
    }
}
