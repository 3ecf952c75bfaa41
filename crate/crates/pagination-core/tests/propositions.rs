//! Oracle-backed structural checks: the exhaustive enumerator agrees with
//! the pruned search, optimality is equivalent to maximal average page
//! cardinality, reductions lift to optima, and no heuristic ever beats the
//! oracle.

mod common;

use common::{enumerate_valid_paginations, fig2};
use pagination_core::exact::{brute_force_optimal, SearchLimits};
use pagination_core::generator::{generate, splitmix64, GeneratorConfig};
use pagination_core::genetic::{run_ga, GaConfig, GaModel};
use pagination_core::greedy::{any_fit, best_fusion, AnyFitStrategy};
use pagination_core::instance::{validate, Instance};
use pagination_core::metrics::total_cardinality;
use pagination_core::oar::overload_and_remove;
use pagination_core::rules::reduce;

fn small_instances(count: usize, base_seed: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut attempt = 0u64;
    while out.len() < count {
        let capacity = 3 + (attempt % 4) as u32; // 3..=6
        let symbols = capacity as usize + 2 + (attempt % 3) as usize;
        let tiles = 3 + (attempt % 5) as usize; // 3..=7
        let config = GeneratorConfig::new(
            capacity,
            symbols,
            tiles,
            splitmix64(base_seed.wrapping_add(attempt)),
        )
        .unwrap();
        if let Ok(instance) = generate(&config) {
            out.push(instance);
        }
        attempt += 1;
    }
    out
}

#[test]
fn pruned_search_agrees_with_exhaustive_enumeration() {
    for instance in small_instances(25, 0xA11CE) {
        let all = enumerate_valid_paginations(&instance);
        let enumerated_min = all.iter().map(|p| p.page_count()).min().unwrap();
        let oracle = brute_force_optimal(&instance, &SearchLimits::default()).unwrap();
        assert!(oracle.proven);
        assert_eq!(oracle.page_count, enumerated_min);
        validate(&instance, &oracle.pagination).unwrap();
    }
}

#[test]
fn optimal_means_maximal_average_cardinality() {
    // The total cardinality is pagination-independent, so page count p and
    // mean page cardinality c are tied by p * c = c(T); minimal p must be
    // exactly maximal c.
    for instance in small_instances(15, 0xBEEF) {
        let all = enumerate_valid_paginations(&instance);
        let min_pages = all.iter().map(|p| p.page_count()).min().unwrap();
        let best_mean = all
            .iter()
            .map(|p| f64::from(total_cardinality(&instance, p)) / p.page_count() as f64)
            .fold(f64::NEG_INFINITY, f64::max);
        for pagination in &all {
            let total = f64::from(total_cardinality(&instance, pagination));
            let mean = total / pagination.page_count() as f64;
            assert!(
                (mean * pagination.page_count() as f64 - total).abs() < 1e-9,
                "p * mean cardinality must equal the total"
            );
            let optimal = pagination.page_count() == min_pages;
            let maximal = (mean - best_mean).abs() < 1e-9;
            assert_eq!(optimal, maximal);
        }
    }
}

#[test]
fn no_heuristic_beats_the_oracle() {
    for instance in small_instances(30, 0xCAFE) {
        let order: Vec<usize> = instance.tile_indices().collect();
        let optimum = brute_force_optimal(&instance, &SearchLimits::default())
            .unwrap()
            .page_count;

        let mut counts = Vec::new();
        for strategy in AnyFitStrategy::ALL {
            counts.push(any_fit(&instance, &order, strategy).unwrap().page_count());
        }
        counts.push(best_fusion(&instance, &order).unwrap().page_count());
        counts.push(overload_and_remove(&instance, &order).unwrap().page_count());
        let mut ga_config = GaConfig::with_seed(7);
        ga_config.population_size = 20;
        ga_config.generations = 10;
        for model in [GaModel::Standard, GaModel::Grouping] {
            counts.push(
                run_ga(&instance, model, &ga_config)
                    .unwrap()
                    .pagination
                    .page_count(),
            );
        }

        for count in counts {
            assert!(count >= optimum, "a heuristic undercut a proven optimum");
        }
    }
}

#[test]
fn reduced_optimum_lifts_to_original_optimum() {
    // One instance per reduction rule: an included tile, a capacity-sized
    // tile, and a universal symbol.
    let cases: Vec<Instance> = vec![
        Instance::from_tokens(
            5,
            &[
                &["1", "2"],
                &["1", "2", "6"],
                &["3", "4", "5"],
                &["3", "7", "8"],
            ],
        )
        .unwrap(),
        Instance::from_tokens(
            4,
            &[&["a", "b", "c", "d"], &["a", "b"], &["b", "c"], &["d", "e"]],
        )
        .unwrap(),
        Instance::from_tokens(
            5,
            &[
                &["z", "1", "2"],
                &["z", "3", "4"],
                &["z", "1", "5"],
                &["z", "6"],
            ],
        )
        .unwrap(),
    ];

    for instance in cases {
        let (reduced, log) = reduce(&instance).unwrap();
        let reduced_optimum = brute_force_optimal(&reduced, &SearchLimits::default()).unwrap();
        assert!(reduced_optimum.proven);
        let lifted = log.lift(&reduced_optimum.pagination);
        validate(&instance, &lifted).unwrap();

        let direct = brute_force_optimal(&instance, &SearchLimits::default()).unwrap();
        assert!(direct.proven);
        assert_eq!(
            lifted.page_count(),
            direct.page_count,
            "lifting a reduced optimum must stay optimal"
        );
    }
}

#[test]
fn oracle_handles_fig2_gap_examples() {
    let instance = fig2();
    let oracle = brute_force_optimal(&instance, &SearchLimits::default()).unwrap();
    assert_eq!(oracle.page_count, 2);
    assert!(oracle.proven);
}

#[test]
fn specialized_construction_is_oracle_optimal_at_capacity_six() {
    // 24 tiles: beyond the default oracle cap, lifted explicitly.
    let built = pagination_core::adversarial::specialized_adversarial(6).unwrap();
    let limits = SearchLimits::uncapped(50_000_000);
    let oracle = brute_force_optimal(&built.instance, &limits).unwrap();
    assert!(oracle.proven);
    assert_eq!(oracle.page_count, 4);
    assert_eq!(built.optimal.page_count(), 4);
    assert_eq!(built.trap.page_count(), 9);
    validate(&built.instance, &built.trap).unwrap();
}

#[test]
fn standard_ga_escapes_the_alternating_trap() {
    // Seeding with First Fit on random permutations keeps the standard GA
    // from paying the full worst-order price; over 20 seeds it lands on the
    // two-page optimum essentially always.
    let built = pagination_core::adversarial::af_adversarial(4).unwrap();
    let instance = built.instance.with_tile_order(&built.worst_order);
    let mut optimal_hits = 0;
    for seed in 0..20u64 {
        let run = run_ga(&instance, GaModel::Standard, &GaConfig::with_seed(seed)).unwrap();
        let pages = run.pagination.page_count();
        assert!(pages <= 6, "seed {seed} gave {pages} pages");
        if pages == 2 {
            optimal_hits += 1;
        }
    }
    assert!(
        optimal_hits >= 15,
        "only {optimal_hits}/20 seeds reached 2 pages"
    );
}
