//! Well-formedness rules, rule checking with concrete witnesses, and
//! instance reduction.
//!
//! Rules 1 to 8 rule out instances that are infeasible, trivial or reducible
//! without loss for an offline solver; rule 9 (no one-symbol tiles) is the
//! optional extra constraint enforced by the random generator. Violations
//! are data, not errors: [`check_rules`] always returns a full report.
//!
//! [`reduce`] applies the reductions implied by rules 1, 3, 4, 5 and 6 to a
//! fixpoint and records a log from which any pagination of the reduced
//! instance can be lifted back to a pagination of the original one.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{Alphabet, Instance, Pagination, Tile};
use crate::set::SymbolSet;

/// The nine instance rules, in their canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    /// 1 — no tile is included in another one.
    NoInclusion,
    /// 2 — no tile contains the whole alphabet.
    NoTotalCover,
    /// 3 — every tile has fewer than `C` symbols.
    TileSmallerThanCapacity,
    /// 4 — no symbol belongs to every tile.
    NoUniversalSymbol,
    /// 5 — every symbol belongs to at least one tile.
    NoUnusedSymbol,
    /// 6 — every tile fits on a page with at least one other tile.
    Coexistence,
    /// 7 — the capacity exceeds 2.
    CapacityAboveTwo,
    /// 8 — the capacity is below the alphabet size.
    CapacityBelowAlphabet,
    /// 9 — every tile has more than one symbol.
    MultiSymbolTiles,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::NoInclusion,
        Rule::NoTotalCover,
        Rule::TileSmallerThanCapacity,
        Rule::NoUniversalSymbol,
        Rule::NoUnusedSymbol,
        Rule::Coexistence,
        Rule::CapacityAboveTwo,
        Rule::CapacityBelowAlphabet,
        Rule::MultiSymbolTiles,
    ];

    /// 1-based rule number.
    pub fn number(self) -> usize {
        Rule::ALL.iter().position(|&r| r == self).unwrap() + 1
    }
}

/// Evidence for a rule violation, checkable against the instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `included` is a subset of `superset`.
    TilePair {
        included: usize,
        superset: usize,
    },
    Tile(usize),
    Symbol(usize),
    Capacity(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleStatus {
    Satisfied,
    Violated(Witness),
}

impl RuleStatus {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, RuleStatus::Satisfied)
    }
}

/// Per-rule status for all nine rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleReport {
    statuses: Vec<(Rule, RuleStatus)>,
}

impl RuleReport {
    pub fn status(&self, rule: Rule) -> &RuleStatus {
        &self.statuses.iter().find(|(r, _)| *r == rule).unwrap().1
    }

    pub fn is_satisfied(&self, rule: Rule) -> bool {
        self.status(rule).is_satisfied()
    }

    pub fn all_satisfied(&self) -> bool {
        self.statuses.iter().all(|(_, s)| s.is_satisfied())
    }

    /// Rules violated, in canonical order.
    pub fn violations(&self) -> impl Iterator<Item = (Rule, &Witness)> {
        self.statuses.iter().filter_map(|(r, s)| match s {
            RuleStatus::Satisfied => None,
            RuleStatus::Violated(w) => Some((*r, w)),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (Rule, &RuleStatus)> {
        self.statuses.iter().map(|(r, s)| (*r, s))
    }
}

/// Checks all nine rules and reports the first witness found per rule.
pub fn check_rules(instance: &Instance) -> RuleReport {
    let n = instance.tile_count();
    let capacity = instance.capacity();

    let mut statuses = Vec::with_capacity(9);

    let mut inclusion = RuleStatus::Satisfied;
    'outer: for i in 0..n {
        for j in 0..n {
            if i != j
                && instance
                    .tile(i)
                    .symbols()
                    .is_subset_of(instance.tile(j).symbols())
            {
                inclusion = RuleStatus::Violated(Witness::TilePair {
                    included: i,
                    superset: j,
                });
                break 'outer;
            }
        }
    }
    statuses.push((Rule::NoInclusion, inclusion));

    let total_cover = (0..n)
        .find(|&i| instance.tile(i).size() as usize == instance.symbol_count())
        .map(|i| RuleStatus::Violated(Witness::Tile(i)))
        .unwrap_or(RuleStatus::Satisfied);
    statuses.push((Rule::NoTotalCover, total_cover));

    let oversized = (0..n)
        .find(|&i| instance.tile(i).size() >= capacity)
        .map(|i| RuleStatus::Violated(Witness::Tile(i)))
        .unwrap_or(RuleStatus::Satisfied);
    statuses.push((Rule::TileSmallerThanCapacity, oversized));

    let mut universal = RuleStatus::Satisfied;
    if n > 0 {
        for symbol in 0..instance.symbol_count() {
            if (0..n).all(|i| instance.tile(i).contains(symbol)) {
                universal = RuleStatus::Violated(Witness::Symbol(symbol));
                break;
            }
        }
    }
    statuses.push((Rule::NoUniversalSymbol, universal));

    let mut unused = RuleStatus::Satisfied;
    for symbol in 0..instance.symbol_count() {
        if (0..n).all(|i| !instance.tile(i).contains(symbol)) {
            unused = RuleStatus::Violated(Witness::Symbol(symbol));
            break;
        }
    }
    statuses.push((Rule::NoUnusedSymbol, unused));

    let mut lonely = RuleStatus::Satisfied;
    for i in 0..n {
        let compatible = (0..n).any(|j| {
            j != i
                && instance
                    .tile(i)
                    .symbols()
                    .union_len(instance.tile(j).symbols())
                    <= capacity
        });
        if !compatible {
            lonely = RuleStatus::Violated(Witness::Tile(i));
            break;
        }
    }
    statuses.push((Rule::Coexistence, lonely));

    statuses.push((
        Rule::CapacityAboveTwo,
        if capacity > 2 {
            RuleStatus::Satisfied
        } else {
            RuleStatus::Violated(Witness::Capacity(capacity))
        },
    ));

    statuses.push((
        Rule::CapacityBelowAlphabet,
        if (capacity as usize) < instance.symbol_count() {
            RuleStatus::Satisfied
        } else {
            RuleStatus::Violated(Witness::Capacity(capacity))
        },
    ));

    let single = (0..n)
        .find(|&i| instance.tile(i).size() <= 1)
        .map(|i| RuleStatus::Violated(Witness::Tile(i)))
        .unwrap_or(RuleStatus::Satisfied);
    statuses.push((Rule::MultiSymbolTiles, single));

    RuleReport { statuses }
}

/// One reduction event. Tile references use the indices of the *original*
/// instance so that the log stays interpretable after the instance shrinks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    /// The tile was a subset of `superset` and was dropped; the lift puts it
    /// back on the page holding `superset`.
    DropIncludedTile { tile: usize, superset: usize },
    /// The tile filled a whole page by itself (size `C`, or incompatible
    /// with every other tile) and was moved to a dedicated page.
    ExtractToDedicatedPage { tile: usize, reason: ExtractReason },
    /// The symbol appeared on every tile; it was stripped from all of them
    /// and the capacity decremented. A tile consisting of just that symbol,
    /// if present, was removed and is re-added to any page by the lift.
    StripUniversalSymbol {
        symbol_token: String,
        singleton_tile: Option<usize>,
    },
    /// Symbols no longer used by any tile were dropped from the alphabet.
    DropUnusedSymbols { symbol_tokens: Vec<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtractReason {
    FillsCapacity,
    IncompatibleWithAll,
}

/// Reduction outcome: the log and the mapping from reduced tile indices back
/// to original ones.
#[derive(Clone, Debug)]
pub struct ReductionLog {
    steps: Vec<ReductionStep>,
    /// `tile_map[reduced_index] == original_index`.
    tile_map: Vec<usize>,
    original_tile_count: usize,
}

impl ReductionLog {
    pub fn steps(&self) -> &[ReductionStep] {
        &self.steps
    }

    pub fn is_noop(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn tile_map(&self) -> &[usize] {
        &self.tile_map
    }

    /// Lifts a pagination of the reduced instance back to a pagination of
    /// the original instance by replaying the log in reverse.
    pub fn lift(&self, reduced: &Pagination) -> Pagination {
        let mut pages: Vec<Vec<usize>> = reduced
            .pages()
            .iter()
            .map(|p| p.tiles().iter().map(|&t| self.tile_map[t]).collect())
            .collect();

        for step in self.steps.iter().rev() {
            match step {
                ReductionStep::DropIncludedTile { tile, superset } => {
                    let page = pages
                        .iter_mut()
                        .find(|p| p.contains(superset))
                        .expect("superset tile must already be placed");
                    page.push(*tile);
                }
                ReductionStep::ExtractToDedicatedPage { tile, .. } => {
                    pages.push(vec![*tile]);
                }
                ReductionStep::StripUniversalSymbol { singleton_tile, .. } => {
                    if let Some(tile) = singleton_tile {
                        if pages.is_empty() {
                            pages.push(vec![*tile]);
                        } else {
                            pages[0].push(*tile);
                        }
                    }
                }
                ReductionStep::DropUnusedSymbols { .. } => {}
            }
        }

        Pagination::from_pages(pages)
    }
}

/// Reduction failure: some tile cannot fit on any page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibleInstance {
    pub tile: usize,
    pub size: u32,
    pub capacity: u32,
}

impl core::fmt::Display for InfeasibleInstance {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "tile {} has {} symbols, above the capacity {}; the instance has no solution",
            self.tile, self.size, self.capacity
        )
    }
}

#[cfg(feature = "std")]
impl std::error::Error for InfeasibleInstance {}

/// Applies the rule reductions to a fixpoint. See the module docs for the
/// lifting contract.
pub fn reduce(instance: &Instance) -> Result<(Instance, ReductionLog), InfeasibleInstance> {
    // Working state; tile sets are edited in place, `tile_map` tracks the
    // original index of every surviving tile.
    let mut capacity = instance.capacity();
    let mut tokens: Vec<String> = instance.alphabet().tokens().to_vec();
    let mut sets: Vec<SymbolSet> = instance
        .tiles()
        .iter()
        .map(|t| t.symbols().clone())
        .collect();
    let mut tile_map: Vec<usize> = (0..instance.tile_count()).collect();
    let mut steps: Vec<ReductionStep> = Vec::new();

    for (i, set) in sets.iter().enumerate() {
        if set.len() > capacity {
            return Err(InfeasibleInstance {
                tile: i,
                size: set.len(),
                capacity,
            });
        }
    }

    loop {
        let mut changed = false;

        // Rule 1: drop tiles included in another tile. Among equal sets the
        // higher index goes.
        'drop: loop {
            let n = sets.len();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let included = sets[i].is_subset_of(&sets[j]) && (sets[i] != sets[j] || i > j);
                    if included {
                        steps.push(ReductionStep::DropIncludedTile {
                            tile: tile_map[i],
                            superset: tile_map[j],
                        });
                        sets.remove(i);
                        tile_map.remove(i);
                        changed = true;
                        continue 'drop;
                    }
                }
            }
            break;
        }

        // Rule 3: a tile of size C can only share a page with subsets of
        // itself, which rule 1 just removed. Move it to a dedicated page.
        while let Some(i) = sets.iter().position(|s| s.len() == capacity) {
            steps.push(ReductionStep::ExtractToDedicatedPage {
                tile: tile_map[i],
                reason: ExtractReason::FillsCapacity,
            });
            sets.remove(i);
            tile_map.remove(i);
            changed = true;
        }

        // Rule 6: a tile compatible with no other needs a page of its own.
        while let Some(i) = (0..sets.len()).find(|&i| {
            sets.len() > 1
                && (0..sets.len()).all(|j| j == i || sets[i].union_len(&sets[j]) > capacity)
        }) {
            steps.push(ReductionStep::ExtractToDedicatedPage {
                tile: tile_map[i],
                reason: ExtractReason::IncompatibleWithAll,
            });
            sets.remove(i);
            tile_map.remove(i);
            changed = true;
        }

        // Rule 4: strip a symbol shared by every tile and lower the capacity.
        if !sets.is_empty() {
            let universe = tokens.len();
            if let Some(symbol) = (0..universe).find(|&s| sets.iter().all(|set| set.contains(s))) {
                let singleton = sets
                    .iter()
                    .position(|set| set.len() == 1)
                    .map(|i| tile_map[i]);
                if let Some(orig) = singleton {
                    let i = tile_map.iter().position(|&t| t == orig).unwrap();
                    sets.remove(i);
                    tile_map.remove(i);
                }
                for set in &mut sets {
                    set.remove(symbol);
                }
                steps.push(ReductionStep::StripUniversalSymbol {
                    symbol_token: tokens[symbol].clone(),
                    singleton_tile: singleton,
                });
                capacity -= 1;
                changed = true;
            }
        }

        // Rule 5: drop symbols used by no tile and compact the alphabet.
        {
            let universe = tokens.len();
            let unused: Vec<usize> = (0..universe)
                .filter(|&s| sets.iter().all(|set| !set.contains(s)))
                .collect();
            if !unused.is_empty() && !sets.is_empty() {
                let mut new_ids = vec![usize::MAX; universe];
                let mut kept = 0;
                for (symbol, new_id) in new_ids.iter_mut().enumerate() {
                    if !unused.contains(&symbol) {
                        *new_id = kept;
                        kept += 1;
                    }
                }
                sets = sets
                    .iter()
                    .map(|set| SymbolSet::from_ids(kept, set.iter().map(|s| new_ids[s])))
                    .collect();
                steps.push(ReductionStep::DropUnusedSymbols {
                    symbol_tokens: unused.iter().map(|&s| tokens[s].clone()).collect(),
                });
                tokens = tokens
                    .into_iter()
                    .enumerate()
                    .filter(|(s, _)| new_ids[*s] != usize::MAX)
                    .map(|(_, t)| t)
                    .collect();
                changed = true;
            }
        }

        if !changed {
            break;
        }
    }

    let alphabet = Alphabet::new(tokens).expect("tokens were valid in the original instance");
    let tiles = sets
        .into_iter()
        .map(|s| Tile::new(s).expect("reduction never empties a surviving tile"))
        .collect();
    let reduced = Instance::new(capacity, alphabet, tiles)
        .expect("reduced instance preserves construction invariants");
    let original_tile_count = instance.tile_count();
    Ok((
        reduced,
        ReductionLog {
            steps,
            tile_map,
            original_tile_count,
        },
    ))
}

/// Lifts and validates against the original instance in one go.
pub fn lift_and_check(
    instance: &Instance,
    log: &ReductionLog,
    reduced_pagination: &Pagination,
) -> Result<Pagination, crate::instance::PaginationDefect> {
    debug_assert_eq!(log.original_tile_count, instance.tile_count());
    let lifted = log.lift(reduced_pagination);
    crate::instance::validate(instance, &lifted)?;
    Ok(lifted)
}

/// Renders a rule report with tokens resolved against the instance.
pub fn render_report(instance: &Instance, report: &RuleReport) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (rule, status) in report.iter() {
        let _ = write!(out, "rule {} ", rule.number());
        match status {
            RuleStatus::Satisfied => {
                let _ = writeln!(out, "satisfied");
            }
            RuleStatus::Violated(witness) => {
                let _ = write!(out, "violated: ");
                match witness {
                    Witness::TilePair { included, superset } => {
                        let _ = writeln!(
                            out,
                            "tile {} ({}) is included in tile {} ({})",
                            included,
                            render_tile(instance, *included),
                            superset,
                            render_tile(instance, *superset)
                        );
                    }
                    Witness::Tile(tile) => {
                        let _ = writeln!(out, "tile {} ({})", tile, render_tile(instance, *tile));
                    }
                    Witness::Symbol(symbol) => {
                        let _ = writeln!(out, "symbol {}", instance.alphabet().token(*symbol));
                    }
                    Witness::Capacity(c) => {
                        let _ = writeln!(out, "capacity {c}");
                    }
                }
            }
        }
    }
    out
}

fn render_tile(instance: &Instance, tile: usize) -> String {
    let mut out = String::new();
    for (i, symbol) in instance.tile(tile).symbols().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(instance.alphabet().token(symbol));
    }
    out
}
