//! Exact solving at desk scale: a depth-first set-partition oracle with
//! pruning, plus export of the integer linear program in LP text format for
//! external solvers.
//!
//! The oracle enumerates canonical partitions (the first tile always opens
//! page 0, a tile may open at most one new page), prunes any branch whose
//! page count already reaches the incumbent, and seeds the incumbent with a
//! decanted First Fit run. It stops early when the incumbent matches the
//! volume lower bound `ceil(v(T)/C)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::greedy::{check_sizes, decant_valid, first_fit, TileTooLarge};
use crate::instance::{Instance, Pagination};
use crate::set::SymbolSet;

/// Caps on the oracle search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
    /// Refuse instances with more tiles than this; `None` lifts the cap.
    pub tile_cap: Option<usize>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: 10_000_000,
            tile_cap: Some(12),
        }
    }
}

impl SearchLimits {
    pub fn uncapped(max_nodes: u64) -> Self {
        SearchLimits {
            max_nodes,
            tile_cap: None,
        }
    }
}

/// Outcome of an oracle run. `proven` is true when the search space was
/// exhausted (or the volume lower bound was met), so no pagination with
/// fewer pages exists.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub page_count: usize,
    pub pagination: Pagination,
    pub explored_nodes: u64,
    pub proven: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// More tiles than the configured cap; exhaustive search would blow up.
    TooManyTiles {
        tiles: usize,
        cap: usize,
    },
    Infeasible(TileTooLarge),
}

impl core::fmt::Display for OracleError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            OracleError::TooManyTiles { tiles, cap } => {
                write!(f, "{tiles} tiles exceed the oracle cap of {cap}")
            }
            OracleError::Infeasible(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OracleError {}

/// Volume lower bound on the page count: every page holds at most `C`
/// distinct symbols and every symbol must appear somewhere.
pub fn volume_lower_bound(instance: &Instance) -> usize {
    if instance.tile_count() == 0 {
        return 0;
    }
    let total = instance.union_of(instance.tile_indices()).len();
    total.div_ceil(instance.capacity()) as usize
}

/// Exhaustive search for an optimal pagination.
pub fn brute_force_optimal(
    instance: &Instance,
    limits: &SearchLimits,
) -> Result<OracleResult, OracleError> {
    brute_force_optimal_with(instance, limits, &mut || false)
}

/// Exhaustive search with an external stop check (polled every few thousand
/// nodes); lets std callers impose wall-clock limits.
pub fn brute_force_optimal_with(
    instance: &Instance,
    limits: &SearchLimits,
    should_stop: &mut dyn FnMut() -> bool,
) -> Result<OracleResult, OracleError> {
    check_sizes(instance).map_err(OracleError::Infeasible)?;
    if let Some(cap) = limits.tile_cap {
        if instance.tile_count() > cap {
            return Err(OracleError::TooManyTiles {
                tiles: instance.tile_count(),
                cap,
            });
        }
    }

    let tile_count = instance.tile_count();
    if tile_count == 0 {
        return Ok(OracleResult {
            page_count: 0,
            pagination: Pagination::from_pages(Vec::<Vec<usize>>::new()),
            explored_nodes: 0,
            proven: true,
        });
    }

    // Incumbent: decanted First Fit on the natural order.
    let order: Vec<usize> = instance.tile_indices().collect();
    let seed = decant_valid(
        instance,
        &first_fit(instance, &order).expect("sizes already checked"),
    );
    let lower_bound = volume_lower_bound(instance);

    let mut search = Search {
        instance,
        capacity: instance.capacity(),
        max_nodes: limits.max_nodes,
        nodes: 0,
        aborted: false,
        assignment: vec![usize::MAX; tile_count],
        unions: Vec::new(),
        page_tiles: Vec::new(),
        best_count: seed.page_count(),
        best: seed,
        lower_bound,
        should_stop,
    };
    if search.best_count > lower_bound {
        search.dfs(0);
    }

    let proven = !search.aborted || search.best_count == lower_bound;
    Ok(OracleResult {
        page_count: search.best_count,
        pagination: search.best,
        explored_nodes: search.nodes,
        proven,
    })
}

struct Search<'a> {
    instance: &'a Instance,
    capacity: u32,
    max_nodes: u64,
    nodes: u64,
    aborted: bool,
    assignment: Vec<usize>,
    unions: Vec<SymbolSet>,
    page_tiles: Vec<Vec<usize>>,
    best_count: usize,
    best: Pagination,
    lower_bound: usize,
    should_stop: &'a mut dyn FnMut() -> bool,
}

impl Search<'_> {
    fn dfs(&mut self, tile: usize) {
        if self.aborted || self.best_count == self.lower_bound {
            return;
        }
        // Pages only accumulate along a branch, so reaching the incumbent
        // count means nothing below can be strictly better.
        if self.unions.len() >= self.best_count {
            return;
        }
        if tile == self.assignment.len() {
            self.best_count = self.unions.len();
            self.best = Pagination::from_pages(self.page_tiles.clone());
            return;
        }

        self.nodes += 1;
        if self.nodes > self.max_nodes || (self.nodes.is_multiple_of(4096) && (self.should_stop)())
        {
            self.aborted = true;
            return;
        }

        let symbols = self.instance.tile(tile).symbols().clone();
        for page in 0..self.unions.len() {
            if self.unions[page].union_len(&symbols) <= self.capacity {
                let saved = self.unions[page].clone();
                self.unions[page].union_with(&symbols);
                self.page_tiles[page].push(tile);
                self.assignment[tile] = page;
                self.dfs(tile + 1);
                self.unions[page] = saved;
                self.page_tiles[page].pop();
                self.assignment[tile] = usize::MAX;
                if self.aborted || self.best_count == self.lower_bound {
                    return;
                }
            }
        }

        // Canonical form: a tile may open exactly one new page, the next
        // unused index.
        if self.unions.len() + 1 < self.best_count {
            self.unions.push(symbols.clone());
            self.page_tiles.push(vec![tile]);
            self.assignment[tile] = self.unions.len() - 1;
            self.dfs(tile + 1);
            self.unions.pop();
            self.page_tiles.pop();
            self.assignment[tile] = usize::MAX;
        }
    }
}

/// How a pagination compares against the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub pages: usize,
    pub outcome: GapOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GapOutcome {
    /// The oracle proved the optimum.
    Exact { optimum: usize, gap: usize },
    /// The oracle was skipped or did not finish; only bounds are known.
    Unknown {
        lower_bound: usize,
        best_known: usize,
    },
}

/// Compares a pagination's page count against the oracle optimum when the
/// instance is within limits, and against the volume lower bound otherwise.
pub fn verify_optimality_gap(
    instance: &Instance,
    pagination: &Pagination,
    limits: &SearchLimits,
) -> Result<GapReport, crate::instance::PaginationDefect> {
    crate::instance::validate(instance, pagination)?;
    let pages = pagination.page_count();
    let outcome = match brute_force_optimal(instance, limits) {
        Ok(result) if result.proven => GapOutcome::Exact {
            optimum: result.page_count,
            gap: pages - result.page_count,
        },
        Ok(result) => GapOutcome::Unknown {
            lower_bound: volume_lower_bound(instance),
            best_known: result.page_count.min(pages),
        },
        Err(_) => GapOutcome::Unknown {
            lower_bound: volume_lower_bound(instance),
            best_known: pages,
        },
    };
    Ok(GapReport { pages, outcome })
}

/// Writes the integer program in LP text format over a fixed page horizon.
///
/// Variables: `y_<symbol>_<page>` (symbol on page), `x_<tile>_<page>` (tile
/// on page), `p_<page>` (page used), all binary. Constraints: every tile on
/// exactly one page; a page is used as soon as it holds a symbol; at most
/// `C` symbols per used page; a tile brings each of its symbols along.
/// Output is deterministic for a fixed input.
pub fn export_lp(instance: &Instance, page_horizon: usize) -> String {
    assert!(page_horizon >= 1, "need at least one page");
    let mut out = String::new();
    let capacity = instance.capacity();
    let symbols = instance.symbol_count();
    let tiles = instance.tile_count();

    out.push_str(&format!(
        "\\ pagination set-partition model: capacity {capacity}, {symbols} symbols, {tiles} tiles, {page_horizon} pages\n"
    ));
    out.push_str("Minimize\n obj:");
    for k in 0..page_horizon {
        if k > 0 {
            out.push_str(" +");
        }
        out.push_str(&format!(" p_{k}"));
        wrap(&mut out);
    }
    out.push_str("\nSubject To\n");

    // Each tile sits on exactly one page.
    for j in 0..tiles {
        out.push_str(&format!(" e1_t{j}:"));
        for k in 0..page_horizon {
            if k > 0 {
                out.push_str(" +");
            }
            out.push_str(&format!(" x_{j}_{k}"));
            wrap(&mut out);
        }
        out.push_str(" = 1\n");
    }

    // A page holding any symbol counts as used.
    for i in 0..symbols {
        for k in 0..page_horizon {
            out.push_str(&format!(" e2_s{i}_p{k}: p_{k} - y_{i}_{k} >= 0\n"));
        }
    }

    // At most C symbols on a used page.
    for k in 0..page_horizon {
        out.push_str(&format!(" e3_p{k}:"));
        for i in 0..symbols {
            if i > 0 {
                out.push_str(" +");
            }
            out.push_str(&format!(" y_{i}_{k}"));
            wrap(&mut out);
        }
        out.push_str(&format!(" - {capacity} p_{k} <= 0\n"));
    }

    // A tile on a page brings each of its symbols there.
    for j in 0..tiles {
        for i in instance.tile(j).symbols().iter() {
            for k in 0..page_horizon {
                out.push_str(&format!(" e4_s{i}_t{j}_p{k}: y_{i}_{k} - x_{j}_{k} >= 0\n"));
            }
        }
    }

    out.push_str("Binary\n");
    for i in 0..symbols {
        for k in 0..page_horizon {
            out.push_str(&format!(" y_{i}_{k}\n"));
        }
    }
    for j in 0..tiles {
        for k in 0..page_horizon {
            out.push_str(&format!(" x_{j}_{k}\n"));
        }
    }
    for k in 0..page_horizon {
        out.push_str(&format!(" p_{k}\n"));
    }
    out.push_str("End\n");
    out
}

// Break sum rows before they grow unwieldy; LP readers accept continued
// expressions on indented lines.
fn wrap(out: &mut String) {
    if let Some(last_newline) = out.rfind('\n') {
        if out.len() - last_newline > 70 {
            out.push_str("\n   ");
        }
    }
}
