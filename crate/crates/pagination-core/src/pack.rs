//! Internal mutable page state shared by the solvers: per-symbol
//! multiplicity counts plus the running volume, so that merged volumes and
//! relative sizes come out of O(|tile|) loops instead of full unions.

use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{Instance, Pagination, Tile};

#[derive(Clone, Debug)]
pub(crate) struct PageState {
    pub tiles: Vec<usize>,
    counts: Vec<u32>,
    volume: u32,
}

impl PageState {
    pub fn new(universe: usize) -> Self {
        PageState {
            tiles: Vec::new(),
            counts: vec![0; universe],
            volume: 0,
        }
    }

    pub fn volume(&self) -> u32 {
        self.volume
    }

    pub fn add(&mut self, index: usize, tile: &Tile) {
        for symbol in tile.symbols().iter() {
            if self.counts[symbol] == 0 {
                self.volume += 1;
            }
            self.counts[symbol] += 1;
        }
        self.tiles.push(index);
    }

    pub fn remove(&mut self, index: usize, tile: &Tile) {
        let position = self
            .tiles
            .iter()
            .position(|&t| t == index)
            .expect("tile must be on the page");
        self.tiles.remove(position);
        for symbol in tile.symbols().iter() {
            self.counts[symbol] -= 1;
            if self.counts[symbol] == 0 {
                self.volume -= 1;
            }
        }
    }

    /// Volume the page would have after adding the tile.
    pub fn merged_volume(&self, tile: &Tile) -> u32 {
        let fresh = tile
            .symbols()
            .iter()
            .filter(|&s| self.counts[s] == 0)
            .count() as u32;
        self.volume + fresh
    }

    /// Relative size the tile would have after joining the page.
    pub fn candidate_relative_size(&self, tile: &Tile) -> f64 {
        tile.symbols()
            .iter()
            .map(|s| 1.0 / f64::from(self.counts[s] + 1))
            .sum()
    }

    /// Relative size of a tile already on the page.
    pub fn member_relative_size(&self, tile: &Tile) -> f64 {
        tile.symbols()
            .iter()
            .map(|s| 1.0 / f64::from(self.counts[s]))
            .sum()
    }
}

/// First Fit insertion into existing page states, appending a new page when
/// nothing fits. Returns the page index used.
pub(crate) fn first_fit_insert(
    instance: &Instance,
    pages: &mut Vec<PageState>,
    tile_index: usize,
) -> usize {
    let tile = instance.tile(tile_index);
    for (i, page) in pages.iter_mut().enumerate() {
        if page.merged_volume(tile) <= instance.capacity() {
            page.add(tile_index, tile);
            return i;
        }
    }
    let mut page = PageState::new(instance.symbol_count());
    page.add(tile_index, tile);
    pages.push(page);
    pages.len() - 1
}

pub(crate) fn to_pagination(pages: Vec<PageState>) -> Pagination {
    Pagination::from_pages(pages.into_iter().map(|p| p.tiles))
}

pub(crate) fn states_from_pages(instance: &Instance, pages: &[Vec<usize>]) -> Vec<PageState> {
    pages
        .iter()
        .map(|tiles| {
            let mut state = PageState::new(instance.symbol_count());
            for &t in tiles {
                state.add(t, instance.tile(t));
            }
            state
        })
        .collect()
}
