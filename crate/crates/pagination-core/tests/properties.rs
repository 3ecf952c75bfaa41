//! Property tests over randomly built instances: solver outputs are valid
//! paginations, decantation reaches its fixpoint, metrics respect their
//! algebraic identities, and the genetic operators preserve partitions.

mod common;

use common::has_move_to_lower_page;
use proptest::prelude::*;

use pagination_core::genetic::{
    encode_standard, grouping_crossover, grouping_mutate, standard_crossover, standard_fitness,
    standard_mutate,
};
use pagination_core::greedy::{
    any_fit, best_fusion, best_fusion_undecanted, decant, first_fit, AnyFitStrategy,
};
use pagination_core::instance::{
    components_within, connected_components, is_valid, validate, Alphabet, Instance, Pagination,
    Tile,
};
use pagination_core::metrics::{
    cardinality, relative_size, total_cardinality, total_multiplicity, volume, METRIC_EPSILON,
};
use pagination_core::oar::overload_and_remove;
use pagination_core::set::SymbolSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random instance with tiles no larger than the capacity; rule compliance
/// is deliberately not enforced so solvers see messy inputs too.
fn arb_instance() -> impl Strategy<Value = Instance> {
    (3u32..=8, 2usize..=8).prop_flat_map(|(capacity, tile_count)| {
        let symbols = capacity as usize + 4;
        let tile = proptest::collection::btree_set(0..symbols, 1..=(capacity as usize).min(5));
        proptest::collection::vec(tile, tile_count).prop_map(move |tiles| {
            let tokens: Vec<String> = (0..symbols).map(|i| format!("s{i}")).collect();
            let alphabet = Alphabet::new(tokens).unwrap();
            let tiles: Vec<Tile> = tiles
                .into_iter()
                .map(|ids| Tile::new(SymbolSet::from_ids(symbols, ids)).unwrap())
                .collect();
            Instance::new(capacity, alphabet, tiles).unwrap()
        })
    })
}

fn arb_order(tile_count: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..tile_count).collect::<Vec<usize>>()).prop_shuffle()
}

fn arb_instance_and_order() -> impl Strategy<Value = (Instance, Vec<usize>)> {
    arb_instance().prop_flat_map(|instance| {
        let order = arb_order(instance.tile_count());
        (Just(instance), order)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn any_fit_outputs_are_valid((instance, order) in arb_instance_and_order(),
                                 strategy_index in 0usize..6) {
        let strategy = AnyFitStrategy::ALL[strategy_index];
        let pagination = any_fit(&instance, &order, strategy).unwrap();
        validate(&instance, &pagination).unwrap();
    }

    #[test]
    fn best_fusion_outputs_are_valid_and_connected((instance, order) in arb_instance_and_order()) {
        let raw = best_fusion_undecanted(&instance, &order).unwrap();
        validate(&instance, &raw).unwrap();
        // Tiles only join pages they share a symbol with, so every raw page
        // is a single connected component.
        for page in raw.pages() {
            prop_assert_eq!(components_within(&instance, page.tiles()).len(), 1);
        }
        let decanted = best_fusion(&instance, &order).unwrap();
        validate(&instance, &decanted).unwrap();
        prop_assert!(decanted.page_count() <= raw.page_count());
    }

    #[test]
    fn overload_and_remove_outputs_are_valid((instance, order) in arb_instance_and_order()) {
        let pagination = overload_and_remove(&instance, &order).unwrap();
        validate(&instance, &pagination).unwrap();
    }

    #[test]
    fn decant_never_increases_pages_and_reaches_fixpoint(
        (instance, order) in arb_instance_and_order(),
        strategy_index in 0usize..6,
    ) {
        let input = any_fit(&instance, &order, AnyFitStrategy::ALL[strategy_index]).unwrap();
        let output = decant(&instance, &input).unwrap();
        validate(&instance, &output).unwrap();
        prop_assert!(output.page_count() <= input.page_count());
        prop_assert!(!has_move_to_lower_page(&instance, &output));
        prop_assert_eq!(decant(&instance, &output).unwrap(), output);
    }

    #[test]
    fn complete_paginations_preserve_cardinality_and_multiplicity(
        (instance, order) in arb_instance_and_order(),
    ) {
        let pagination = first_fit(&instance, &order).unwrap();
        let all: Vec<usize> = instance.tile_indices().collect();
        prop_assert_eq!(
            total_cardinality(&instance, &pagination),
            cardinality(&instance, &all)
        );
        for symbol in 0..instance.symbol_count() {
            let direct = all
                .iter()
                .filter(|&&t| instance.tile(t).contains(symbol))
                .count() as u32;
            prop_assert_eq!(total_multiplicity(&instance, &pagination, symbol), direct);
        }
    }

    #[test]
    fn relative_size_bounds_and_telescoping((instance, order) in arb_instance_and_order()) {
        let pagination = first_fit(&instance, &order).unwrap();
        for page in pagination.pages() {
            let mut sum = 0.0;
            for &tile in page.tiles() {
                let f = relative_size(&instance, page.tiles(), tile);
                let size = f64::from(instance.tile(tile).size());
                // Every multiplicity is between 1 and the page's tile
                // count, which bounds the member relative size by
                // |t|/|p| from below and |t| from above. (A flat lower
                // bound of 1 does not hold: a small tile whose symbols
                // are all heavily shared can fall below it.)
                let page_len = page.len() as f64;
                prop_assert!(f >= size / page_len - METRIC_EPSILON);
                prop_assert!(f <= size + METRIC_EPSILON);
                sum += f;
            }
            // The reciprocals of the multiplicities telescope to the number
            // of distinct symbols on the page.
            prop_assert!((sum - f64::from(volume(&instance, page))).abs() < 1e-7);
        }
    }

    #[test]
    fn volume_is_at_most_cardinality((instance, order) in arb_instance_and_order()) {
        let pagination = first_fit(&instance, &order).unwrap();
        for page in pagination.pages() {
            let v = volume(&instance, page);
            let c = cardinality(&instance, page.tiles());
            prop_assert!(v <= c);
            let shared = page.tiles().iter().enumerate().any(|(i, &a)| {
                page.tiles()[i + 1..]
                    .iter()
                    .any(|&b| instance.tile(a).symbols().intersects(instance.tile(b).symbols()))
            });
            prop_assert_eq!(v == c, !shared);
        }
    }

    #[test]
    fn connected_components_partition_the_tiles(instance in arb_instance()) {
        let classes = connected_components(&instance);
        let mut seen = vec![false; instance.tile_count()];
        for class in &classes {
            for &tile in class {
                prop_assert!(!seen[tile]);
                seen[tile] = true;
            }
        }
        prop_assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn invalid_chromosomes_cost_more_than_valid_ones(
        (instance, order) in arb_instance_and_order(),
        genes_seed in proptest::collection::vec(1u32..=6, 2..=8),
    ) {
        // Baseline: the worst any valid chromosome can score.
        let valid_bound = instance.tile_count() as u64 * u64::from(instance.capacity());

        let seeded = encode_standard(&instance, &first_fit(&instance, &order).unwrap());
        prop_assert!(standard_fitness(&instance, &seeded) <= valid_bound);

        let m_max = instance.tile_count() as u32;
        let mut genes: Vec<u32> = genes_seed.iter().map(|g| (g - 1) % m_max + 1).collect();
        genes.truncate(instance.tile_count());
        while genes.len() < instance.tile_count() {
            genes.push(1);
        }
        let decoded = pagination_core::genetic::decode_standard(&genes);
        let fitness = standard_fitness(&instance, &genes);
        if is_valid(&instance, &decoded) {
            prop_assert!(fitness <= valid_bound);
        } else {
            prop_assert!(fitness > valid_bound);
        }
    }

    #[test]
    fn standard_fitness_grows_with_page_count((instance, order) in arb_instance_and_order()) {
        // Compact encodings: ranges ((k-1)C, kC] never overlap across page
        // counts, so more pages always cost more.
        let p1 = encode_standard(&instance, &first_fit(&instance, &order).unwrap());
        let singles: Vec<Vec<usize>> = instance.tile_indices().map(|t| vec![t]).collect();
        let p2 = encode_standard(&instance, &Pagination::from_pages(singles));
        let ff_pages = pagination_core::genetic::decode_standard(&p1).page_count();
        let single_pages = instance.tile_count();
        if ff_pages < single_pages {
            prop_assert!(
                standard_fitness(&instance, &p1) < standard_fitness(&instance, &p2)
            );
        }
    }

    #[test]
    fn standard_operators_keep_gene_ranges(
        (instance, order) in arb_instance_and_order(),
        seed in 0u64..1000,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = encode_standard(&instance, &first_fit(&instance, &order).unwrap());
        let mut b = a.clone();
        b.reverse();
        let (c1, c2) = standard_crossover(&a, &b, &mut rng);
        let m_max = instance.tile_count() as u32;
        for child in [&c1, &c2] {
            prop_assert_eq!(child.len(), instance.tile_count());
            prop_assert!(child.iter().all(|&g| g >= 1 && g <= m_max));
        }
        let mut mutated = a.clone();
        standard_mutate(&instance, &mut mutated, &mut rng);
        prop_assert!(mutated.iter().all(|&g| g >= 1 && g <= m_max));
    }

    #[test]
    fn grouping_operators_preserve_partitions(
        (instance, order) in arb_instance_and_order(),
        seed in 0u64..1000,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<Vec<usize>> = first_fit(&instance, &order).unwrap()
            .pages().iter().map(|p| p.tiles().to_vec()).collect();
        let natural: Vec<usize> = instance.tile_indices().collect();
        let b: Vec<Vec<usize>> = first_fit(&instance, &natural).unwrap()
            .pages().iter().map(|p| p.tiles().to_vec()).collect();

        let (c1, c2) = grouping_crossover(&instance, &a, &b, &mut rng);
        for child in [c1, c2] {
            validate(&instance, &Pagination::from_pages(child)).unwrap();
        }
        let mutated = grouping_mutate(&instance, &a, &mut rng);
        validate(&instance, &Pagination::from_pages(mutated)).unwrap();
    }

    #[test]
    fn grouping_fitness_terms_stay_in_unit_range((instance, order) in arb_instance_and_order()) {
        let pagination = first_fit(&instance, &order).unwrap();
        let cap = pagination_core::genetic::m_cap(&instance);
        for page in pagination.pages() {
            prop_assert!(u64::from(cardinality(&instance, page.tiles())) <= cap);
        }
        let chromosome: Vec<Vec<usize>> =
            pagination.pages().iter().map(|p| p.tiles().to_vec()).collect();
        let fitness = pagination_core::genetic::grouping_fitness(&instance, &chromosome, 2);
        prop_assert!(fitness > 0.0 && fitness <= 1.0 + METRIC_EPSILON);
    }
}

/// Classical first fit on plain sizes, the cross-check for the zero-overlap
/// case where pagination degenerates to bin packing.
fn classical_first_fit(sizes: &[u32], capacity: u32) -> usize {
    let mut bins: Vec<u32> = Vec::new();
    for &size in sizes {
        match bins.iter_mut().find(|b| **b + size <= capacity) {
            Some(bin) => *bin += size,
            None => bins.push(size),
        }
    }
    bins.len()
}

#[test]
fn zero_overlap_first_fit_matches_bin_packing() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for round in 0..20 {
        let capacity = 6 + (round % 4) as u32;
        let tile_count = 4 + (round % 6) as usize;
        let sizes: Vec<u32> = (0..tile_count)
            .map(|_| 1 + rand::Rng::gen_range(&mut rng, 0..capacity))
            .collect();

        // Build disjoint tiles over a fresh symbol range per tile.
        let universe: usize = sizes.iter().map(|&s| s as usize).sum();
        let tokens: Vec<String> = (0..universe).map(|i| format!("s{i}")).collect();
        let alphabet = Alphabet::new(tokens).unwrap();
        let mut tiles = Vec::new();
        let mut next = 0usize;
        for &size in &sizes {
            let ids = next..next + size as usize;
            next += size as usize;
            tiles.push(Tile::new(SymbolSet::from_ids(universe, ids)).unwrap());
        }
        let instance = Instance::new(capacity, alphabet, tiles).unwrap();

        let order: Vec<usize> = instance.tile_indices().collect();
        let paged = first_fit(&instance, &order).unwrap();
        assert_eq!(paged.page_count(), classical_first_fit(&sizes, capacity));
    }
}
