mod common;

use common::random_instance;
use corels_core::oracle::{brute_force, DEFAULT_BUDGET};
use corels_core::solver::{solve, Ablations, SolverConfig, Status};
use corels_core::{RuleList, SearchPolicy};

fn oracle_units(d: &corels_core::LabeledDataset, lambda: corels_core::Lambda) -> u128 {
    brute_force(d, lambda, None, DEFAULT_BUDGET).unwrap().min_objective_units
}

#[test]
fn solver_matches_oracle_on_random_instances() {
    for seed in 0..60 {
        let (d, lambda) = random_instance(seed);
        let r = solve(&d, &SolverConfig::new(lambda)).unwrap();
        assert_eq!(r.status, Status::CertifiedOptimal, "seed {seed}");
        assert_eq!(r.optimality_gap, 0.0);
        assert_eq!(r.best_objective_units.0 as u128, oracle_units(&d, lambda), "seed {seed}");
        let rebuilt = RuleList::from_prefix(&r.best_rule_list.prefix(), &d.antecedents, &d.labels);
        assert_eq!(rebuilt, r.best_rule_list, "seed {seed}");
        assert_eq!(rebuilt.mistakes(&d.antecedents, &d.labels), r.best_mistakes);
    }
}

#[test]
fn every_policy_reaches_the_same_optimum() {
    for seed in 100..140 {
        let (d, lambda) = random_instance(seed);
        let expected = oracle_units(&d, lambda);
        for policy in SearchPolicy::ALL {
            let mut cfg = SolverConfig::new(lambda);
            cfg.policy = policy;
            let r = solve(&d, &cfg).unwrap();
            assert_eq!(r.best_objective_units.0 as u128, expected, "seed {seed} policy {policy}");
        }
    }
}

#[test]
fn ablations_change_speed_not_the_optimum() {
    let variants = [
        Ablations { no_priority: true, ..Ablations::default() },
        Ablations { no_support_bounds: true, ..Ablations::default() },
        Ablations { no_lookahead: true, ..Ablations::default() },
        Ablations { no_symmap: true, ..Ablations::default() },
        Ablations { no_equiv_points: true, ..Ablations::default() },
        Ablations {
            no_priority: true,
            no_support_bounds: true,
            no_lookahead: true,
            no_symmap: true,
            no_equiv_points: true,
        },
    ];
    for seed in 200..240 {
        let (d, lambda) = random_instance(seed);
        let expected = oracle_units(&d, lambda);
        let full = solve(&d, &SolverConfig::new(lambda)).unwrap();
        for ab in variants {
            let mut cfg = SolverConfig::new(lambda);
            cfg.ablations = ab;
            let r = solve(&d, &cfg).unwrap();
            assert_eq!(r.status, Status::CertifiedOptimal);
            assert_eq!(r.best_objective_units.0 as u128, expected, "seed {seed} {ab:?}");
            if ab == (Ablations { no_symmap: true, ..Ablations::default() }) {
                assert!(full.counters.lower_bound_evaluations <= r.counters.lower_bound_evaluations);
            }
        }
    }
}

#[test]
fn runs_are_deterministic() {
    let (d, lambda) = random_instance(7);
    let a = solve(&d, &SolverConfig::new(lambda)).unwrap();
    let b = solve(&d, &SolverConfig::new(lambda)).unwrap();
    assert_eq!(a, b);
}
