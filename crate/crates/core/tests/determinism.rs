use boostlab::bench::{run_suite, ExperimentConfig, TaskFamily};
use boostlab::discrepancy::{min_discrepancy_coloring_with, min_discrepancy_exhaustive, SetSystem};
use boostlab::gamma_vc::{line_points, worst_labeling};
use boostlab::rational::{int, ratio};
use boostlab::realizability::{gamma_star, minmax_gamma_star};
use boostlab::{BaseClassSpec, Exec, Rng};
use proptest::prelude::*;

#[test]
fn suite_csv_is_identical_across_runs_and_executors() {
    let cfg = ExperimentConfig::from_json(
        r#"{"tasks":[{"family":"k-sign-changes","m":10,"k":3},{"family":"grid-random-labels","n":2,"d":2}],
            "algorithms":["graph-boost","adaboost"],"mode":{"kind":"sampled"},"seeds":[3,1,4]}"#,
    )
    .unwrap();
    let a = run_suite(&cfg, Exec::Parallel).unwrap();
    let b = run_suite(&cfg, Exec::Sequential).unwrap();
    assert_eq!(a.csv, b.csv);
    assert_eq!(a.records.len(), 12);
}

#[test]
fn generated_tasks_carry_fresh_gamma_star() {
    let cases = [
        (TaskFamily::AlternatingThresholds { m: 6 }, Some(ratio(1, 5))),
        (TaskFamily::KSignChanges { m: 8, k: 1 }, Some(int(1))),
        (TaskFamily::GridRandomLabels { n: 2, d: 2, m: None, labels: Some(vec![1, -1, -1, 1]) }, None),
        (TaskFamily::FiniteClassMixture { t: 4, s: 1, m: 6 }, None),
    ];
    for (family, expected) in cases {
        let task = family.generate(None, 10, &mut Rng::seed_from(5)).unwrap();
        let fresh = gamma_star(&task.train, &task.class).unwrap().0;
        assert_eq!(task.gamma_star, fresh, "{family}");
        assert_eq!(minmax_gamma_star(&task.train, &task.class).unwrap(), fresh, "{family}");
        if let Some(e) = expected {
            assert_eq!(fresh, e, "{family}");
        }
    }
}

#[test]
fn empty_seed_list_is_a_config_error() {
    let err = ExperimentConfig::from_json(r#"{"tasks":[{"family":"alternating-thresholds","m":3}],"seeds":[]}"#);
    assert!(matches!(err, Err(boostlab::Error::Config(_))));
}

#[test]
fn worst_labeling_matches_between_executors() {
    let th = BaseClassSpec::thresholds();
    for n in 1..=9 {
        let patterns = th.patterns(&line_points(n)).unwrap();
        let a = worst_labeling(Exec::Sequential, &patterns, n).unwrap();
        let b = worst_labeling(Exec::Parallel, &patterns, n).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.1, ratio(1, (2 * ((n as i64 - 1) / 2) + 1).max(1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coloring_search_is_executor_independent(
        n in 1usize..12,
        raw in prop::collection::vec(prop::collection::vec(any::<bool>(), 12), 0..7),
    ) {
        let sets = raw.iter().map(|r| (0..n).filter(|&i| r[i]).collect()).collect();
        let sys = SetSystem::new(n, sets).unwrap();
        let seq = min_discrepancy_coloring_with(Exec::Sequential, &sys).unwrap();
        let par = min_discrepancy_coloring_with(Exec::Parallel, &sys).unwrap();
        prop_assert_eq!(&seq, &par);
        prop_assert_eq!(seq, min_discrepancy_exhaustive(&sys).unwrap());
    }
}
