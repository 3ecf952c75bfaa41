//! Greedy solvers: the Any Fit family, Best Fusion, and the decantation
//! post-treatment.
//!
//! Any Fit places each tile into an existing page where the merged volume
//! stays within the capacity, choosing the page by strategy, and opens a new
//! page otherwise. Best Fusion instead minimizes the relative size of the
//! candidate and only accepts a page when that value is strictly below the
//! tile size, i.e. when the tile actually shares symbols with the page; its
//! result is then decanted.
//!
//! Decantation moves whole pages, then connected components within pages,
//! then single tiles, to the lowest-index page where they fit. After the
//! three passes no page contents, component or tile can move to a page of
//! lesser index.

use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{
    assert_permutation, components_within, validate, Instance, Pagination, PaginationDefect,
};
use crate::pack::{to_pagination, PageState};

/// Page choice rule for [`any_fit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnyFitStrategy {
    /// Only the most recently opened page is considered.
    Next,
    /// Lowest-index page where the tile fits.
    First,
    /// Fullest eligible page, measured before the tile is added.
    BestBefore,
    /// Fullest eligible page, measured with the tile tentatively added.
    BestAfter,
    /// Least full eligible page.
    Worst,
    /// Second-least-full eligible page, falling back to the least full one
    /// when only a single page is eligible.
    AlmostWorst,
}

impl AnyFitStrategy {
    pub const ALL: [AnyFitStrategy; 6] = [
        AnyFitStrategy::Next,
        AnyFitStrategy::First,
        AnyFitStrategy::BestBefore,
        AnyFitStrategy::BestAfter,
        AnyFitStrategy::Worst,
        AnyFitStrategy::AlmostWorst,
    ];
}

/// A tile that cannot fit on any page on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileTooLarge {
    pub tile: usize,
    pub size: u32,
    pub capacity: u32,
}

impl core::fmt::Display for TileTooLarge {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "tile {} has {} symbols, above the capacity {}",
            self.tile, self.size, self.capacity
        )
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TileTooLarge {}

pub(crate) fn check_sizes(instance: &Instance) -> Result<(), TileTooLarge> {
    for (i, tile) in instance.tiles().iter().enumerate() {
        if tile.size() > instance.capacity() {
            return Err(TileTooLarge {
                tile: i,
                size: tile.size(),
                capacity: instance.capacity(),
            });
        }
    }
    Ok(())
}

/// Online Any Fit placement of the tiles in the given order. `order` must be
/// a permutation of the tile indices.
pub fn any_fit(
    instance: &Instance,
    order: &[usize],
    strategy: AnyFitStrategy,
) -> Result<Pagination, TileTooLarge> {
    check_sizes(instance)?;
    assert_permutation(order, instance.tile_count());
    let capacity = instance.capacity();
    let mut pages: Vec<PageState> = Vec::new();

    for &index in order {
        let tile = instance.tile(index);
        let chosen: Option<usize> = match strategy {
            AnyFitStrategy::Next => pages
                .last()
                .filter(|p| p.merged_volume(tile) <= capacity)
                .map(|_| pages.len() - 1),
            AnyFitStrategy::First => pages.iter().position(|p| p.merged_volume(tile) <= capacity),
            AnyFitStrategy::BestBefore => pages
                .iter()
                .enumerate()
                .filter(|(_, p)| p.merged_volume(tile) <= capacity)
                .max_by_key(|(i, p)| (p.volume(), usize::MAX - i))
                .map(|(i, _)| i),
            AnyFitStrategy::BestAfter => pages
                .iter()
                .enumerate()
                .filter(|(_, p)| p.merged_volume(tile) <= capacity)
                .max_by_key(|(i, p)| (p.merged_volume(tile), usize::MAX - i))
                .map(|(i, _)| i),
            AnyFitStrategy::Worst => pages
                .iter()
                .enumerate()
                .filter(|(_, p)| p.merged_volume(tile) <= capacity)
                .min_by_key(|(i, p)| (p.volume(), *i))
                .map(|(i, _)| i),
            AnyFitStrategy::AlmostWorst => {
                let mut eligible: Vec<(u32, usize)> = pages
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| p.merged_volume(tile) <= capacity)
                    .map(|(i, p)| (p.volume(), i))
                    .collect();
                eligible.sort_unstable();
                match eligible.len() {
                    0 => None,
                    1 => Some(eligible[0].1),
                    _ => Some(eligible[1].1),
                }
            }
        };
        match chosen {
            Some(i) => pages[i].add(index, tile),
            None => {
                let mut page = PageState::new(instance.symbol_count());
                page.add(index, tile);
                pages.push(page);
            }
        }
    }

    Ok(to_pagination(pages))
}

/// First Fit, the placement used as a building block everywhere else.
pub fn first_fit(instance: &Instance, order: &[usize]) -> Result<Pagination, TileTooLarge> {
    any_fit(instance, order, AnyFitStrategy::First)
}

/// Best Fusion placement without the decantation post-treatment.
pub fn best_fusion_undecanted(
    instance: &Instance,
    order: &[usize],
) -> Result<Pagination, TileTooLarge> {
    check_sizes(instance)?;
    assert_permutation(order, instance.tile_count());
    let capacity = instance.capacity();
    let mut pages: Vec<PageState> = Vec::new();

    for &index in order {
        let tile = instance.tile(index);
        let mut best: Option<(usize, f64)> = None;
        for (i, page) in pages.iter().enumerate() {
            if page.merged_volume(tile) > capacity {
                continue;
            }
            let f = page.candidate_relative_size(tile);
            if best.is_none_or(|(_, best_f)| f < best_f) {
                best = Some((i, f));
            }
        }
        // A page is worth joining only when the tile put there occupies
        // strictly less than its own size, i.e. shares at least one symbol.
        match best {
            Some((i, f)) if f < f64::from(tile.size()) => pages[i].add(index, tile),
            _ => {
                let mut page = PageState::new(instance.symbol_count());
                page.add(index, tile);
                pages.push(page);
            }
        }
    }

    Ok(to_pagination(pages))
}

/// Best Fusion with the decantation post-treatment applied.
pub fn best_fusion(instance: &Instance, order: &[usize]) -> Result<Pagination, TileTooLarge> {
    let raw = best_fusion_undecanted(instance, order)?;
    Ok(decant_valid(instance, &raw))
}

/// Tile order sorted by decreasing size, ties by ascending index. Offered as
/// an order producer for experiments; size is a poor proxy for occupied
/// volume here, so none of the solvers sorts by default.
pub fn size_sorted_order(instance: &Instance) -> Vec<usize> {
    let mut order: Vec<usize> = instance.tile_indices().collect();
    order.sort_by_key(|&i| (core::cmp::Reverse(instance.tile(i).size()), i));
    order
}

#[derive(Clone, Copy)]
enum Granularity {
    Pages,
    Components,
    Tiles,
}

/// Decantation: three First Fit passes of decreasing granularity (whole
/// pages, connected components within pages, single tiles), each moving its
/// granules to the lowest-index page that can take them. Never increases
/// the page count. Errors if the input pagination is invalid.
pub fn decant(
    instance: &Instance,
    pagination: &Pagination,
) -> Result<Pagination, PaginationDefect> {
    validate(instance, pagination)?;
    Ok(decant_valid(instance, pagination))
}

pub(crate) fn decant_valid(instance: &Instance, pagination: &Pagination) -> Pagination {
    let mut pages: Vec<Vec<usize>> = pagination
        .pages()
        .iter()
        .map(|p| p.tiles().to_vec())
        .collect();
    decant_pass(instance, &mut pages, Granularity::Pages);
    decant_pass(instance, &mut pages, Granularity::Components);
    decant_pass(instance, &mut pages, Granularity::Tiles);
    Pagination::from_pages(pages)
}

fn decant_pass(instance: &Instance, pages: &mut Vec<Vec<usize>>, granularity: Granularity) {
    let capacity = instance.capacity();
    let mut unions: Vec<crate::set::SymbolSet> = pages
        .iter()
        .map(|p| instance.union_of(p.iter().copied()))
        .collect();

    let mut j = 1;
    while j < pages.len() {
        let granules: Vec<Vec<usize>> = match granularity {
            Granularity::Pages => vec![pages[j].clone()],
            Granularity::Components => components_within(instance, &pages[j]),
            Granularity::Tiles => pages[j].iter().map(|&t| vec![t]).collect(),
        };
        for granule in granules {
            let granule_union = instance.union_of(granule.iter().copied());
            let target = (0..j).find(|&i| unions[i].union_len(&granule_union) <= capacity);
            if let Some(i) = target {
                unions[i].union_with(&granule_union);
                pages[i].extend(granule.iter().copied());
                pages[j].retain(|t| !granule.contains(t));
                unions[j] = instance.union_of(pages[j].iter().copied());
            }
        }
        if pages[j].is_empty() {
            pages.remove(j);
            unions.remove(j);
        } else {
            j += 1;
        }
    }
}
