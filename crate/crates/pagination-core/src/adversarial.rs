//! Instances on which greedy solvers are provably bad, together with their
//! optimal paginations.
//!
//! The Any Fit family has no performance guarantee: feeding it the half-size
//! combinations of two disjoint alphabets in alternation makes it open one
//! page per pair, `binom(C, C/2)` pages in total, where two pages suffice.
//!
//! The specialized family (Best Fusion and friends) can be trapped as well:
//! all tiles of the locked construction are equivalent under every metric,
//! so a greedy scheduler may pair them in a way that yields `3C/(C+2)` times
//! the optimal page count.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{Alphabet, Instance, Pagination, Tile};
use crate::set::SymbolSet;

/// Which adversarial construction to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdversarialFamily {
    /// Against Any Fit placement. Needs an even capacity of at least 2.
    AnyFit,
    /// Against relative-size greedy placement. Needs an even capacity of at
    /// least 4.
    Specialized,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversarialError {
    pub family: AdversarialFamily,
    pub capacity: u32,
    pub minimum: u32,
}

impl core::fmt::Display for AdversarialError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "{:?} construction needs an even capacity of at least {}, got {}",
            self.family, self.minimum, self.capacity
        )
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AdversarialError {}

/// Output of [`af_adversarial`].
#[derive(Clone, Debug)]
pub struct AnyFitAdversarial {
    pub instance: Instance,
    /// Two pages: all x-tiles, then all y-tiles.
    pub optimal: Pagination,
    /// Alternating x/y tile order on which every Any Fit strategy opens
    /// `binom(C, C/2)` pages.
    pub worst_order: Vec<usize>,
}

/// Builds the Any Fit trap for an even capacity: the `C/2`-subsets of two
/// disjoint `C`-symbol alphabets. Tiles are enumerated in lexicographic
/// order, x-tiles first.
pub fn af_adversarial(capacity: u32) -> Result<AnyFitAdversarial, AdversarialError> {
    if capacity < 2 || !capacity.is_multiple_of(2) {
        return Err(AdversarialError {
            family: AdversarialFamily::AnyFit,
            capacity,
            minimum: 2,
        });
    }
    let c = capacity as usize;
    let half = c / 2;
    let universe = 2 * c;

    let mut tokens: Vec<String> = (1..=c).map(|i| format!("x{i}")).collect();
    tokens.extend((1..=c).map(|i| format!("y{i}")));
    let alphabet = Alphabet::new(tokens).expect("adversarial tokens are well-formed");

    let combos = combinations(c, half);
    let mut tiles = Vec::with_capacity(2 * combos.len());
    for combo in &combos {
        tiles.push(tile_from(universe, combo.iter().copied()));
    }
    for combo in &combos {
        tiles.push(tile_from(universe, combo.iter().map(|&i| i + c)));
    }
    let family_size = combos.len();
    let instance =
        Instance::new(capacity, alphabet, tiles).expect("adversarial instance is well-formed");

    let optimal = Pagination::from_pages([
        (0..family_size).collect::<Vec<_>>(),
        (family_size..2 * family_size).collect::<Vec<_>>(),
    ]);

    let mut worst_order = Vec::with_capacity(2 * family_size);
    for i in 0..family_size {
        worst_order.push(i);
        worst_order.push(i + family_size);
    }

    Ok(AnyFitAdversarial {
        instance,
        optimal,
        worst_order,
    })
}

/// Output of [`specialized_adversarial`].
#[derive(Clone, Debug)]
pub struct SpecializedAdversarial {
    pub instance: Instance,
    /// `C/2 + 1` pages: one per tile family.
    pub optimal: Pagination,
    /// `3C/2` pages: the locked pairing a metric-blind greedy can fall into.
    pub trap: Pagination,
}

/// Builds the specialized trap for an even capacity `C >= 4`.
///
/// The base family holds the `(C-1)`-subsets of a `C`-symbol alphabet. Its
/// tiles are paired off; each pair's intersection, extended with the two
/// locking symbols `a` and `b`, spans another `C`-symbol alphabet whose
/// `(C-1)`-subsets form one more family. Gathering each family on one page
/// is optimal; pairing base tiles with locking tiles instead yields `3C/2`
/// pages.
pub fn specialized_adversarial(capacity: u32) -> Result<SpecializedAdversarial, AdversarialError> {
    if capacity < 4 || !capacity.is_multiple_of(2) {
        return Err(AdversarialError {
            family: AdversarialFamily::Specialized,
            capacity,
            minimum: 4,
        });
    }
    let c = capacity as usize;
    // Symbols 0..c are the base alphabet; c and c+1 are the locks a and b.
    let universe = c + 2;
    let a = c;
    let b = c + 1;

    let mut tokens: Vec<String> = (1..=c).map(|i| format!("{i}")).collect();
    tokens.push("a".into());
    tokens.push("b".into());
    let alphabet = Alphabet::new(tokens).expect("adversarial tokens are well-formed");

    // Base family: (C-1)-subsets of the base alphabet, lexicographic.
    let base_combos = combinations(c, c - 1);
    debug_assert_eq!(base_combos.len(), c);

    let mut tiles: Vec<Tile> = base_combos
        .iter()
        .map(|combo| tile_from(universe, combo.iter().copied()))
        .collect();
    let mut optimal_pages: Vec<Vec<usize>> = vec![(0..c).collect()];
    let mut trap_pages: Vec<Vec<usize>> = Vec::new();

    // Pair consecutive base tiles; each pair spawns a locked family over
    // (t1 ∩ t2) ∪ {a, b}.
    for pair in 0..c / 2 {
        let t1 = 2 * pair;
        let t2 = 2 * pair + 1;
        let shared: Vec<usize> = base_combos[t1]
            .iter()
            .copied()
            .filter(|s| base_combos[t2].contains(s))
            .collect();
        debug_assert_eq!(shared.len(), c - 2);

        let family_symbols: Vec<usize> = shared.iter().copied().chain([a, b]).collect();
        let family_start = tiles.len();
        // (C-1)-subsets of the family alphabet, lexicographic over its
        // symbol list (shared symbols first, then a, then b).
        for combo in combinations(c, c - 1) {
            let ids = combo.iter().map(|&i| family_symbols[i]);
            tiles.push(tile_from(universe, ids));
        }
        optimal_pages.push((family_start..family_start + c).collect());

        // Locking tiles: in lexicographic order the subset at family index
        // j omits family position c-1-j, so (t1 ∩ t2) ∪ {a} (omitting b, the
        // last position) is the first family tile and (t1 ∩ t2) ∪ {b} the
        // second.
        let lock_a = family_start;
        let lock_b = family_start + 1;
        debug_assert!(tiles[lock_a].contains(a) && !tiles[lock_a].contains(b));
        debug_assert!(tiles[lock_b].contains(b) && !tiles[lock_b].contains(a));
        trap_pages.push(vec![t1, lock_a]);
        trap_pages.push(vec![t2, lock_b]);
    }

    // The leftover C-2 tiles of each locked family (those holding both a
    // and b) gather on one page per family.
    for pair in 0..c / 2 {
        let family_start = c + pair * c;
        let leftovers: Vec<usize> = (family_start..family_start + c)
            .filter(|&t| tiles[t].contains(a) && tiles[t].contains(b))
            .collect();
        debug_assert_eq!(leftovers.len(), c - 2);
        trap_pages.push(leftovers);
    }

    let instance =
        Instance::new(capacity, alphabet, tiles).expect("adversarial instance is well-formed");
    Ok(SpecializedAdversarial {
        instance,
        optimal: Pagination::from_pages(optimal_pages),
        trap: Pagination::from_pages(trap_pages),
    })
}

fn tile_from(universe: usize, ids: impl IntoIterator<Item = usize>) -> Tile {
    Tile::new(SymbolSet::from_ids(universe, ids)).expect("combinations are non-empty")
}

/// All k-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn walk(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            walk(n, k, i + 1, current, out);
            current.pop();
        }
    }
    walk(n, k, 0, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{is_valid, validate};
    use crate::metrics::volume;

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn af_capacity_four() {
        let built = af_adversarial(4).unwrap();
        assert_eq!(built.instance.tile_count(), 12);
        assert_eq!(built.optimal.page_count(), 2);
        validate(&built.instance, &built.optimal).unwrap();
        assert_eq!(built.worst_order.len(), 12);
        assert_eq!(&built.worst_order[..4], &[0, 6, 1, 7]);
        // Every tile has size C/2; same-family tiles pairwise fit together.
        for tile in built.instance.tiles() {
            assert_eq!(tile.size(), 2);
        }
    }

    #[test]
    fn af_degenerate_capacity_two() {
        let built = af_adversarial(2).unwrap();
        assert_eq!(built.instance.tile_count(), 4);
        for tile in built.instance.tiles() {
            assert_eq!(tile.size(), 1);
        }
        assert!(is_valid(&built.instance, &built.optimal));
    }

    #[test]
    fn af_rejects_odd_capacity() {
        assert!(af_adversarial(5).is_err());
        assert!(af_adversarial(0).is_err());
    }

    #[test]
    fn specialized_capacity_four() {
        let built = specialized_adversarial(4).unwrap();
        assert_eq!(built.instance.tile_count(), 12);
        assert_eq!(built.optimal.page_count(), 3);
        assert_eq!(built.trap.page_count(), 6);
        validate(&built.instance, &built.optimal).unwrap();
        validate(&built.instance, &built.trap).unwrap();

        // The locked pages hold exactly two size-(C-1) tiles overlapping in
        // C-2 symbols and are saturated.
        for page in &built.trap.pages()[..4] {
            assert_eq!(page.len(), 2);
            let tiles = page.tiles();
            let t1 = built.instance.tile(tiles[0]);
            let t2 = built.instance.tile(tiles[1]);
            assert_eq!(t1.size(), 3);
            assert_eq!(t2.size(), 3);
            assert_eq!(t1.symbols().union_len(t2.symbols()), 4);
            assert_eq!(volume(&built.instance, page), 4);
        }
    }

    #[test]
    fn specialized_capacity_six() {
        let built = specialized_adversarial(6).unwrap();
        assert_eq!(built.instance.tile_count(), 24);
        assert_eq!(built.optimal.page_count(), 4);
        assert_eq!(built.trap.page_count(), 9);
        validate(&built.instance, &built.optimal).unwrap();
        validate(&built.instance, &built.trap).unwrap();
    }

    #[test]
    fn specialized_rejects_small_or_odd() {
        assert!(specialized_adversarial(2).is_err());
        assert!(specialized_adversarial(5).is_err());
    }
}
