//! The metric algebra on tiles, pages and paginations: size, volume, loss,
//! cardinality, multiplicity and relative size.
//!
//! All metrics extend from a page to a whole pagination by summing. The
//! relative size of a tile is always evaluated against the union of the
//! context with the tile itself, so the same function serves both for tiles
//! already placed on a page and for candidates being probed against it.
//!
//! Relative sizes are accumulated in double precision; every multiplicity is
//! a small integer, so comparisons at 1e-9 are far below the smallest
//! meaningful gap between two distinct values.

use crate::instance::{Instance, Page, Pagination, Tile};

/// Tolerance used when comparing metric values that were accumulated from
/// reciprocals of small integers.
pub const METRIC_EPSILON: f64 = 1e-9;

/// Number of symbols on a tile.
pub fn tile_size(tile: &Tile) -> u32 {
    tile.size()
}

/// Number of distinct symbols on a page. Panics if a tile index is out of
/// range.
pub fn volume(instance: &Instance, page: &Page) -> u32 {
    instance.union_of(page.tiles().iter().copied()).len()
}

/// Capacity minus volume. Overloaded pages yield a negative loss; no
/// clamping is applied.
pub fn loss(instance: &Instance, page: &Page) -> i64 {
    instance.capacity() as i64 - volume(instance, page) as i64
}

/// Total number of symbols, distinct or not, over a set of tiles.
pub fn cardinality(instance: &Instance, tiles: &[usize]) -> u32 {
    tiles.iter().map(|&t| instance.tile(t).size()).sum()
}

/// Number of tiles in the context containing the symbol.
pub fn multiplicity(instance: &Instance, tiles: &[usize], symbol: usize) -> u32 {
    tiles
        .iter()
        .filter(|&&t| instance.tile(t).contains(symbol))
        .count() as u32
}

/// Sum of the reciprocals of the multiplicities of the tile's symbols, the
/// multiplicities being taken over `context ∪ {tile}`. For a member tile
/// this is its relative size on the page; for a candidate it measures the
/// marginal footprint the tile would have after joining.
pub fn relative_size(instance: &Instance, context: &[usize], tile: usize) -> f64 {
    let joined = !context.contains(&tile);
    let mut sum = 0.0;
    for symbol in instance.tile(tile).symbols().iter() {
        let mut m = multiplicity(instance, context, symbol);
        if joined {
            m += 1;
        }
        sum += 1.0 / f64::from(m);
    }
    sum
}

/// Sum of the page volumes of a pagination.
pub fn total_volume(instance: &Instance, pagination: &Pagination) -> u32 {
    pagination.pages().iter().map(|p| volume(instance, p)).sum()
}

/// Sum of the per-page losses.
pub fn total_loss(instance: &Instance, pagination: &Pagination) -> i64 {
    pagination.pages().iter().map(|p| loss(instance, p)).sum()
}

/// Sum of the per-page cardinalities.
pub fn total_cardinality(instance: &Instance, pagination: &Pagination) -> u32 {
    pagination
        .pages()
        .iter()
        .map(|p| cardinality(instance, p.tiles()))
        .sum()
}

/// Sum of the per-page multiplicities of a symbol.
pub fn total_multiplicity(instance: &Instance, pagination: &Pagination, symbol: usize) -> u32 {
    pagination
        .pages()
        .iter()
        .map(|p| multiplicity(instance, p.tiles(), symbol))
        .sum()
}

/// Number of extra page slots occupied by symbols repeated across pages:
/// for every symbol, the number of pages holding it minus one.
pub fn replication_count(instance: &Instance, pagination: &Pagination) -> u32 {
    let mut total = 0;
    for symbol in 0..instance.symbol_count() {
        let pages_with = pagination
            .pages()
            .iter()
            .filter(|p| p.tiles().iter().any(|&t| instance.tile(t).contains(symbol)))
            .count() as u32;
        total += pages_with.saturating_sub(1);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Pagination;
    use alloc::vec;
    use alloc::vec::Vec;

    fn fig2() -> Instance {
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

    fn sym(instance: &Instance, token: &str) -> usize {
        instance.alphabet().index_of(token).unwrap()
    }

    #[test]
    fn worked_example_metrics() {
        let instance = fig2();
        let p1 = Page::new(vec![0, 1]);

        assert_eq!(tile_size(instance.tile(0)), 5);
        assert_eq!(tile_size(instance.tile(3)), 4);
        assert_eq!(volume(&instance, &p1), 6);
        assert_eq!(loss(&instance, &p1), 1);
        assert_eq!(cardinality(&instance, p1.tiles()), 8);
        assert_eq!(multiplicity(&instance, p1.tiles(), sym(&instance, "e")), 2);

        // f(P1, t2) = 1/2 + 1/2 + 1
        let f = relative_size(&instance, p1.tiles(), 1);
        assert!((f - 2.0).abs() < METRIC_EPSILON);

        // Over the whole tile set: f(T, t2) = 1/2 + 1/3 + 1/2
        let all: Vec<usize> = instance.tile_indices().collect();
        let f = relative_size(&instance, &all, 1);
        assert!((f - 4.0 / 3.0).abs() < METRIC_EPSILON);
    }

    #[test]
    fn singleton_tile_and_empty_page() {
        let instance = Instance::from_tokens(3, &[&["x"], &["y", "z"]]).unwrap();
        assert_eq!(tile_size(instance.tile(0)), 1);
        let empty = Page::new(vec![]);
        assert_eq!(volume(&instance, &empty), 0);
        assert_eq!(cardinality(&instance, empty.tiles()), 0);
    }

    #[test]
    fn disjoint_tiles_add_volumes() {
        let instance = Instance::from_tokens(5, &[&["1", "2"], &["3", "4"]]).unwrap();
        let page = Page::new(vec![0, 1]);
        assert_eq!(volume(&instance, &page), 4);
        // A tile alone on a page has relative size equal to its size.
        assert!((relative_size(&instance, &[0], 0) - 2.0).abs() < METRIC_EPSILON);
    }

    #[test]
    fn saturated_page_has_zero_loss() {
        let instance = Instance::from_tokens(4, &[&["1", "2"], &["3", "4"]]).unwrap();
        assert_eq!(loss(&instance, &Page::new(vec![0, 1])), 0);
    }

    #[test]
    fn pagination_totals_match_worked_example() {
        let instance = fig2();
        let p3 = Pagination::from_pages([vec![0, 1], vec![2, 3]]);
        assert_eq!(total_volume(&instance, &p3), 13);
        assert_eq!(total_loss(&instance, &p3), 1);
        assert_eq!(total_cardinality(&instance, &p3), 15);
        let e = sym(&instance, "e");
        assert_eq!(total_multiplicity(&instance, &p3, e), 3);
    }

    #[test]
    fn absent_symbol_has_zero_multiplicity() {
        let instance = fig2();
        let page = Page::new(vec![3]);
        assert_eq!(
            multiplicity(&instance, page.tiles(), sym(&instance, "a")),
            0
        );
    }

    #[test]
    fn overloaded_page_has_negative_loss() {
        let instance = fig2();
        let all = Page::new(vec![0, 1, 2, 3]);
        assert_eq!(loss(&instance, &all), -4);
    }

    #[test]
    fn replication_counts() {
        // C=5, tiles a1/357/a2/468: the two-page optimum replicates "a" once.
        let instance = Instance::from_tokens(
            5,
            &[&["a", "1"], &["3", "5", "7"], &["a", "2"], &["4", "6", "8"]],
        )
        .unwrap();
        let two_pages = Pagination::from_pages([vec![0, 1], vec![2, 3]]);
        assert_eq!(replication_count(&instance, &two_pages), 1);
        let three_pages = Pagination::from_pages([vec![0, 2], vec![1], vec![3]]);
        assert_eq!(replication_count(&instance, &three_pages), 0);
    }
}
