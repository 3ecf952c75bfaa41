//! Problem data model: alphabet, tiles, instances, pages and paginations.
//!
//! All types are immutable values once constructed and can be shared
//! read-only across concurrent solver runs; solvers build their own local
//! page state and only produce a [`Pagination`] at the end.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::set::SymbolSet;

/// The dense symbol alphabet of an instance. Symbol ids are the positions
/// `0..len`, tokens are the original textual names kept for I/O round-trips.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet, checking that tokens are unique, non-empty and
    /// whitespace-free.
    pub fn new(tokens: Vec<String>) -> Result<Self, InstanceError> {
        for (i, token) in tokens.iter().enumerate() {
            if token.is_empty() || token.chars().any(char::is_whitespace) {
                return Err(InstanceError::BadToken {
                    token: token.clone(),
                });
            }
            if tokens[..i].contains(token) {
                return Err(InstanceError::DuplicateToken {
                    token: token.clone(),
                });
            }
        }
        Ok(Alphabet { tokens })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn token(&self, id: usize) -> &str {
        &self.tokens[id]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.tokens.iter().position(|t| t == token)
    }
}

/// A tile: a non-empty set of symbols. Tiles may overlap; that is the point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    symbols: SymbolSet,
}

impl Tile {
    pub fn new(symbols: SymbolSet) -> Result<Self, InstanceError> {
        if symbols.is_empty() {
            return Err(InstanceError::EmptyTile);
        }
        Ok(Tile { symbols })
    }

    /// Number of symbols on the tile.
    pub fn size(&self) -> u32 {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &SymbolSet {
        &self.symbols
    }

    pub fn contains(&self, symbol: usize) -> bool {
        self.symbols.contains(symbol)
    }
}

/// A problem instance: a capacity, an alphabet and an indexed tile collection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    capacity: u32,
    alphabet: Alphabet,
    tiles: Vec<Tile>,
}

impl Instance {
    /// Builds an instance. The tile list may be empty (reduction can strip
    /// every tile from a degenerate instance); parsers and generators reject
    /// that case themselves.
    pub fn new(capacity: u32, alphabet: Alphabet, tiles: Vec<Tile>) -> Result<Self, InstanceError> {
        if capacity == 0 {
            return Err(InstanceError::ZeroCapacity);
        }
        for (i, tile) in tiles.iter().enumerate() {
            if tile.symbols.universe() != alphabet.len() {
                return Err(InstanceError::UniverseMismatch { tile: i });
            }
        }
        Ok(Instance {
            capacity,
            alphabet,
            tiles,
        })
    }

    /// Convenience constructor used all over the test suites: tiles given as
    /// token lists, the alphabet built in first-appearance order.
    pub fn from_tokens(capacity: u32, tiles: &[&[&str]]) -> Result<Self, InstanceError> {
        let mut tokens: Vec<String> = Vec::new();
        for tile in tiles {
            for token in *tile {
                if !tokens.iter().any(|t| t == token) {
                    tokens.push(token.to_string());
                }
            }
        }
        let alphabet = Alphabet::new(tokens)?;
        let universe = alphabet.len();
        let tiles = tiles
            .iter()
            .map(|tile| {
                let ids = tile.iter().map(|tok| alphabet.index_of(tok).unwrap());
                Tile::new(SymbolSet::from_ids(universe, ids))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Instance::new(capacity, alphabet, tiles)
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbol_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn tile(&self, index: usize) -> &Tile {
        &self.tiles[index]
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn tile_indices(&self) -> impl Iterator<Item = usize> {
        0..self.tiles.len()
    }

    /// Union of the given tiles' symbol sets.
    pub fn union_of(&self, tiles: impl IntoIterator<Item = usize>) -> SymbolSet {
        let mut out = SymbolSet::empty(self.alphabet.len());
        for index in tiles {
            out.union_with(self.tiles[index].symbols());
        }
        out
    }

    /// A copy of the instance with tiles permuted into the given order.
    /// Panics if `order` is not a permutation of the tile indices.
    pub fn with_tile_order(&self, order: &[usize]) -> Instance {
        assert_permutation(order, self.tiles.len());
        let tiles = order.iter().map(|&i| self.tiles[i].clone()).collect();
        Instance {
            capacity: self.capacity,
            alphabet: self.alphabet.clone(),
            tiles,
        }
    }
}

/// One page of a pagination: a set of tile indices, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    tiles: Vec<usize>,
}

impl Page {
    pub fn new(mut tiles: Vec<usize>) -> Self {
        tiles.sort_unstable();
        tiles.dedup();
        Page { tiles }
    }

    pub fn tiles(&self) -> &[usize] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn contains(&self, tile: usize) -> bool {
        self.tiles.binary_search(&tile).is_ok()
    }
}

/// An ordered list of pages. A complete pagination partitions the tile
/// indices; empty pages are never stored. Page order matters to First Fit
/// style procedures and to decantation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pagination {
    pages: Vec<Page>,
}

impl Pagination {
    pub fn new(pages: Vec<Page>) -> Self {
        Pagination {
            pages: pages.into_iter().filter(|p| !p.is_empty()).collect(),
        }
    }

    /// Builds a pagination from raw index lists, dropping empty pages.
    pub fn from_pages(pages: impl IntoIterator<Item = Vec<usize>>) -> Self {
        Self::new(pages.into_iter().map(Page::new).collect())
    }

    pub fn pages(&self) -> &[Page] {
        &self.pages
    }

    pub fn page_count(&self) -> usize {
        self.pages.len()
    }

    /// The page holding the given tile, if any.
    pub fn page_of(&self, tile: usize) -> Option<usize> {
        self.pages.iter().position(|p| p.contains(tile))
    }
}

/// Construction errors for the data model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceError {
    ZeroCapacity,
    EmptyTile,
    BadToken { token: String },
    DuplicateToken { token: String },
    UniverseMismatch { tile: usize },
}

impl core::fmt::Display for InstanceError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            InstanceError::ZeroCapacity => write!(f, "capacity must be positive"),
            InstanceError::EmptyTile => write!(f, "tiles must be non-empty"),
            InstanceError::BadToken { token } => {
                write!(
                    f,
                    "bad symbol token {token:?}: tokens must be non-empty and whitespace-free"
                )
            }
            InstanceError::DuplicateToken { token } => {
                write!(f, "duplicate symbol token {token:?}")
            }
            InstanceError::UniverseMismatch { tile } => {
                write!(f, "tile {tile} is not drawn from the instance alphabet")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for InstanceError {}

/// First defect found when checking a pagination against an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PaginationDefect {
    UnknownTile { page: usize, tile: usize },
    DuplicateTile { tile: usize },
    MissingTile { tile: usize },
    EmptyPage { page: usize },
    OverloadedPage { page: usize, volume: u32 },
}

impl core::fmt::Display for PaginationDefect {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PaginationDefect::UnknownTile { page, tile } => {
                write!(f, "page {page} references unknown tile {tile}")
            }
            PaginationDefect::DuplicateTile { tile } => {
                write!(f, "tile {tile} appears on more than one page")
            }
            PaginationDefect::MissingTile { tile } => {
                write!(f, "tile {tile} is not on any page")
            }
            PaginationDefect::EmptyPage { page } => write!(f, "page {page} is empty"),
            PaginationDefect::OverloadedPage { page, volume } => {
                write!(f, "page {page} has volume {volume} above the capacity")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PaginationDefect {}

/// Checks that the pagination partitions the tile indices and that every
/// page volume fits the capacity. Reports the first violated condition.
pub fn validate(instance: &Instance, pagination: &Pagination) -> Result<(), PaginationDefect> {
    let tile_count = instance.tile_count();
    let mut seen = alloc::vec![false; tile_count];
    for (page_index, page) in pagination.pages().iter().enumerate() {
        if page.is_empty() {
            return Err(PaginationDefect::EmptyPage { page: page_index });
        }
        for &tile in page.tiles() {
            if tile >= tile_count {
                return Err(PaginationDefect::UnknownTile {
                    page: page_index,
                    tile,
                });
            }
            if seen[tile] {
                return Err(PaginationDefect::DuplicateTile { tile });
            }
            seen[tile] = true;
        }
    }
    if let Some(tile) = seen.iter().position(|&s| !s) {
        return Err(PaginationDefect::MissingTile { tile });
    }
    for (page_index, page) in pagination.pages().iter().enumerate() {
        let volume = instance.union_of(page.tiles().iter().copied()).len();
        if volume > instance.capacity() {
            return Err(PaginationDefect::OverloadedPage {
                page: page_index,
                volume,
            });
        }
    }
    Ok(())
}

/// `true` iff [`validate`] finds no defect.
pub fn is_valid(instance: &Instance, pagination: &Pagination) -> bool {
    validate(instance, pagination).is_ok()
}

/// Connected components of the instance: the classes of the transitive
/// closure of "shares at least one symbol". Classes are returned sorted by
/// their smallest tile index, members ascending.
pub fn connected_components(instance: &Instance) -> Vec<Vec<usize>> {
    let tile_count = instance.tile_count();
    let mut parent: Vec<usize> = (0..tile_count).collect();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let mut first_holder: Vec<Option<usize>> = alloc::vec![None; instance.symbol_count()];
    for tile in 0..tile_count {
        for symbol in instance.tile(tile).symbols().iter() {
            match first_holder[symbol] {
                None => first_holder[symbol] = Some(tile),
                Some(other) => {
                    let a = find(&mut parent, tile);
                    let b = find(&mut parent, other);
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of: Vec<Option<usize>> = alloc::vec![None; tile_count];
    for tile in 0..tile_count {
        let root = find(&mut parent, tile);
        match class_of[root] {
            Some(c) => classes[c].push(tile),
            None => {
                class_of[root] = Some(classes.len());
                classes.push(alloc::vec![tile]);
            }
        }
    }
    classes
}

/// Connected components of a subset of tiles (used when decanting the
/// contents of a single page).
pub fn components_within(instance: &Instance, tiles: &[usize]) -> Vec<Vec<usize>> {
    let mut classes: Vec<(SymbolSet, Vec<usize>)> = Vec::new();
    for &tile in tiles {
        let symbols = instance.tile(tile).symbols();
        let mut merged: Option<usize> = None;
        let mut i = 0;
        while i < classes.len() {
            if classes[i].0.intersects(symbols) {
                match merged {
                    None => {
                        classes[i].0.union_with(symbols);
                        classes[i].1.push(tile);
                        merged = Some(i);
                        i += 1;
                    }
                    Some(target) => {
                        let (set, members) = classes.remove(i);
                        classes[target].0.union_with(&set);
                        classes[target].1.extend(members);
                    }
                }
            } else {
                i += 1;
            }
        }
        if merged.is_none() {
            let mut set = SymbolSet::empty(instance.symbol_count());
            set.union_with(symbols);
            classes.push((set, alloc::vec![tile]));
        }
    }
    classes.into_iter().map(|(_, members)| members).collect()
}

pub(crate) fn assert_permutation(order: &[usize], tile_count: usize) {
    assert_eq!(
        order.len(),
        tile_count,
        "order must cover every tile exactly once"
    );
    let mut seen = alloc::vec![false; tile_count];
    for &i in order {
        assert!(i < tile_count, "order references unknown tile {i}");
        assert!(!seen[i], "order repeats tile {i}");
        seen[i] = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn from_tokens_builds_dense_alphabet() {
        let instance = fig2();
        assert_eq!(instance.symbol_count(), 11);
        assert_eq!(instance.alphabet().token(0), "a");
        assert_eq!(instance.alphabet().token(10), "k");
        assert_eq!(instance.tile(0).size(), 5);
        assert_eq!(instance.tile(3).size(), 4);
    }

    #[test]
    fn alphabet_rejects_bad_tokens() {
        assert!(matches!(
            Alphabet::new(alloc::vec!["a".into(), "a".into()]),
            Err(InstanceError::DuplicateToken { .. })
        ));
        assert!(matches!(
            Alphabet::new(alloc::vec!["a b".into()]),
            Err(InstanceError::BadToken { .. })
        ));
        assert!(matches!(
            Alphabet::new(alloc::vec!["".into()]),
            Err(InstanceError::BadToken { .. })
        ));
    }

    #[test]
    fn validate_accepts_fig2_optimum() {
        let instance = fig2();
        let p3 = Pagination::from_pages([alloc::vec![0, 1], alloc::vec![2, 3]]);
        assert!(is_valid(&instance, &p3));
    }

    #[test]
    fn validate_rejects_overload_and_non_partition() {
        let instance = fig2();
        let all_on_one = Pagination::from_pages([alloc::vec![0, 1, 2, 3]]);
        assert_eq!(
            validate(&instance, &all_on_one),
            Err(PaginationDefect::OverloadedPage {
                page: 0,
                volume: 11
            })
        );
        let missing = Pagination::from_pages([alloc::vec![0, 1], alloc::vec![2]]);
        assert_eq!(
            validate(&instance, &missing),
            Err(PaginationDefect::MissingTile { tile: 3 })
        );
        let duplicated = Pagination::from_pages([alloc::vec![0, 1], alloc::vec![1, 2, 3]]);
        assert_eq!(
            validate(&instance, &duplicated),
            Err(PaginationDefect::DuplicateTile { tile: 1 })
        );
    }

    #[test]
    fn components_of_fig2() {
        let instance = fig2();
        assert_eq!(
            connected_components(&instance),
            alloc::vec![alloc::vec![0, 1, 2], alloc::vec![3]]
        );
    }

    #[test]
    fn components_of_disjoint_tiles_are_singletons() {
        let instance = Instance::from_tokens(4, &[&["a", "b"], &["c", "d"], &["e"]]).unwrap();
        assert_eq!(
            connected_components(&instance),
            alloc::vec![alloc::vec![0], alloc::vec![1], alloc::vec![2]]
        );
    }

    #[test]
    fn chain_is_one_component() {
        let instance = Instance::from_tokens(4, &[&["1", "2"], &["2", "3"], &["3", "4"]]).unwrap();
        assert_eq!(
            connected_components(&instance),
            alloc::vec![alloc::vec![0, 1, 2]]
        );
    }

    #[test]
    fn components_within_page() {
        let instance = fig2();
        assert_eq!(
            components_within(&instance, &[2, 3]),
            alloc::vec![alloc::vec![2], alloc::vec![3]]
        );
        assert_eq!(
            components_within(&instance, &[0, 1, 2]),
            alloc::vec![alloc::vec![0, 1, 2]]
        );
    }

    #[test]
    fn reorder_tiles() {
        let instance = fig2();
        let reordered = instance.with_tile_order(&[3, 0, 1, 2]);
        assert_eq!(reordered.tile(0).size(), 4);
        assert_eq!(reordered.tile(1).size(), 5);
        assert_eq!(reordered.alphabet(), instance.alphabet());
    }
}
