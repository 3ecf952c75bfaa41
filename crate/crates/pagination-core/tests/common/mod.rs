//! Shared fixtures and independent oracles for the integration tests.
//!
//! The enumerator here deliberately avoids the library's pruned search: it
//! walks every assignment of tiles to pages (restricted growth form) and
//! keeps the valid ones, so it can double-check the real oracle and the
//! optimality propositions on tiny instances.

#![allow(dead_code)] // each test target uses its own subset of the helpers

use pagination_core::instance::{Instance, Pagination};
use pagination_core::set::SymbolSet;

pub fn fig2() -> Instance {
    Instance::from_tokens(
        7,
        &[
            &["a", "b", "c", "d", "e"],
            &["d", "e", "f"],
            &["e", "f", "g"],
            &["h", "i", "j", "k"],
        ],
    )
    .unwrap()
}

/// Every valid pagination of the instance, by exhaustive enumeration of
/// restricted-growth assignments. Only sensible for a handful of tiles.
pub fn enumerate_valid_paginations(instance: &Instance) -> Vec<Pagination> {
    let n = instance.tile_count();
    assert!(n <= 8, "enumeration oracle is for tiny instances");
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    walk(instance, &mut assignment, 0, 0, &mut out);
    out
}

fn walk(
    instance: &Instance,
    assignment: &mut Vec<usize>,
    tile: usize,
    pages_used: usize,
    out: &mut Vec<Pagination>,
) {
    let n = instance.tile_count();
    if tile == n {
        let mut pages = vec![Vec::new(); pages_used];
        for (t, &p) in assignment.iter().enumerate() {
            pages[p].push(t);
        }
        let pagination = Pagination::from_pages(pages);
        if pagination_fits(instance, &pagination) {
            out.push(pagination);
        }
        return;
    }
    for page in 0..=pages_used.min(n - 1) {
        assignment[tile] = page;
        let used = pages_used.max(page + 1);
        walk(instance, assignment, tile + 1, used, out);
    }
}

fn pagination_fits(instance: &Instance, pagination: &Pagination) -> bool {
    pagination.pages().iter().all(|page| {
        let mut union = SymbolSet::empty(instance.symbol_count());
        for &t in page.tiles() {
            union.union_with(instance.tile(t).symbols());
        }
        union.len() <= instance.capacity()
    })
}

/// True iff some page, component or single tile could move to a page of
/// lesser index without breaking validity — i.e. the pagination is not
/// fully decanted.
pub fn has_move_to_lower_page(instance: &Instance, pagination: &Pagination) -> bool {
    let pages: Vec<Vec<usize>> = pagination
        .pages()
        .iter()
        .map(|p| p.tiles().to_vec())
        .collect();
    let unions: Vec<SymbolSet> = pages
        .iter()
        .map(|p| instance.union_of(p.iter().copied()))
        .collect();

    #[allow(clippy::needless_range_loop)]
    for j in 1..pages.len() {
        let mut granules: Vec<Vec<usize>> = vec![pages[j].clone()];
        granules.extend(pagination_components(instance, &pages[j]));
        granules.extend(pages[j].iter().map(|&t| vec![t]));
        for granule in granules {
            let gset = instance.union_of(granule.iter().copied());
            if (0..j).any(|i| unions[i].union_len(&gset) <= instance.capacity()) {
                return true;
            }
        }
    }
    false
}

fn pagination_components(instance: &Instance, tiles: &[usize]) -> Vec<Vec<usize>> {
    pagination_core::instance::components_within(instance, tiles)
}
