//! The Overload-and-Remove heuristic.
//!
//! Tiles wait in a FIFO queue. Each dequeued tile goes to the page where its
//! relative size is smallest, provided that value is strictly below the tile
//! size and the tile has never been on that page before; otherwise it opens
//! a new page. The placement may overload the page, in which case tiles with
//! the smallest size over relative-size ratio are evicted back into the
//! queue while the page stays overloaded and the member ratios disagree.
//! Evicted tiles may never re-enter the page they left. Pages still
//! overloaded when the queue empties are dissolved and their tiles
//! redistributed by First Fit.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::greedy::{check_sizes, decant_valid, TileTooLarge};
use crate::instance::{assert_permutation, Instance, Pagination};
use crate::pack::{first_fit_insert, to_pagination, PageState};

/// Tolerance for deciding that two size/relative-size ratios differ.
const RATIO_EPSILON: f64 = 1e-9;

struct OarPage {
    /// Stable identity; pages are never renumbered during a run, so the
    /// forbidden sets of evicted tiles cannot alias a later page.
    id: u64,
    state: PageState,
}

/// Overload-and-Remove without the decantation post-treatment.
pub fn overload_and_remove_undecanted(
    instance: &Instance,
    initial_order: &[usize],
) -> Result<Pagination, TileTooLarge> {
    check_sizes(instance)?;
    assert_permutation(initial_order, instance.tile_count());
    let capacity = instance.capacity();
    let tile_count = instance.tile_count();

    let mut queue: VecDeque<usize> = initial_order.iter().copied().collect();
    let mut pages: Vec<OarPage> = Vec::new();
    let mut next_id: u64 = 0;
    // Pages each tile has ever been put on, by page id.
    let mut placed_on: Vec<Vec<u64>> = vec![Vec::new(); tile_count];

    // Every (tile, page) pair is consumed at most once and pages never
    // empty, so the number of dequeues is bounded; the guard only trips on
    // a logic error.
    let mut budget = (tile_count * tile_count + 2 * tile_count + 4) as u64;

    while let Some(index) = queue.pop_front() {
        assert!(budget > 0, "overload-and-remove failed to terminate");
        budget -= 1;

        let tile = instance.tile(index);
        let size = f64::from(tile.size());

        let mut best: Option<(usize, f64)> = None;
        for (i, page) in pages.iter().enumerate() {
            if placed_on[index].contains(&page.id) {
                continue;
            }
            let f = page.state.candidate_relative_size(tile);
            if f < size && best.is_none_or(|(_, best_f)| f < best_f) {
                best = Some((i, f));
            }
        }

        let Some((target, _)) = best else {
            let mut state = PageState::new(instance.symbol_count());
            state.add(index, tile);
            placed_on[index].push(next_id);
            pages.push(OarPage { id: next_id, state });
            next_id += 1;
            continue;
        };

        let page = &mut pages[target];
        debug_assert!(!placed_on[index].contains(&page.id));
        page.state.add(index, tile);
        placed_on[index].push(page.id);

        // Unload while the page is overloaded and the members' ratios still
        // disagree; evict the smallest ratio, ties to the lowest index.
        while page.state.volume() > capacity {
            let ratios: Vec<(usize, f64)> = page
                .state
                .tiles
                .iter()
                .map(|&t| {
                    let f = page.state.member_relative_size(instance.tile(t));
                    (t, f64::from(instance.tile(t).size()) / f)
                })
                .collect();
            let spread = ratios
                .iter()
                .map(|&(_, r)| r)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                    (lo.min(r), hi.max(r))
                });
            if spread.1 - spread.0 <= RATIO_EPSILON {
                break;
            }
            let (victim, _) = ratios
                .iter()
                .copied()
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)))
                .expect("overloaded page has members");
            page.state.remove(victim, instance.tile(victim));
            queue.push_back(victim);
        }
    }

    // Dissolve the pages left overloaded and refill by First Fit, taking
    // the orphaned tiles in page-creation order, ascending index inside a
    // page.
    let mut orphans: Vec<usize> = Vec::new();
    let mut kept: Vec<PageState> = Vec::new();
    for page in pages {
        if page.state.volume() > capacity {
            let mut tiles = page.state.tiles.clone();
            tiles.sort_unstable();
            orphans.extend(tiles);
        } else {
            kept.push(page.state);
        }
    }
    for index in orphans {
        first_fit_insert(instance, &mut kept, index);
    }

    Ok(to_pagination(kept))
}

/// Overload-and-Remove with the decantation post-treatment applied.
pub fn overload_and_remove(
    instance: &Instance,
    initial_order: &[usize],
) -> Result<Pagination, TileTooLarge> {
    let raw = overload_and_remove_undecanted(instance, initial_order)?;
    Ok(decant_valid(instance, &raw))
}
