//! Solvers and tooling for the pagination problem: bin packing where the
//! items (tiles) are sets of symbols and may overlap, so that packing two
//! tiles on the same page costs only the volume of their union.
//!
//! The crate is `no_std`-compatible (it only needs `alloc`); everything here
//! is pure computation. File formats, the benchmark harness and the CLI live
//! in the companion `pagination-cli` crate.
//!
//! Overview of the modules:
//!
//! * [`instance`] — the data model: alphabet, tiles, instances, pages and
//!   paginations, validity checking, connected components.
//! * [`metrics`] — size, volume, loss, cardinality, multiplicity and
//!   relative size, on pages and whole paginations.
//! * [`rules`] — the nine well-formedness rules, rule checking with
//!   witnesses, and instance reduction with a replayable log.
//! * [`generator`] — the random instance generator and the full benchmark
//!   sweep over the (capacity, symbols, tiles) grid.
//! * [`adversarial`] — constructions on which greedy solvers are provably
//!   bad, together with their optimal paginations.
//! * [`greedy`] — the Any Fit family, Best Fusion, and the decantation
//!   post-treatment.
//! * [`oar`] — the Overload-and-Remove heuristic.
//! * [`genetic`] — standard and grouping genetic algorithms.
//! * [`exact`] — a small-instance exact oracle and LP model export.
//! * [`stats`] — difficulty, average multiplicity and Pearson correlation.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod adversarial;
pub mod exact;
pub mod generator;
pub mod genetic;
pub mod greedy;
pub mod instance;
pub mod metrics;
pub mod oar;
pub mod rules;
pub mod set;
pub mod stats;

mod pack;

pub use instance::{Alphabet, Instance, Page, Pagination, Tile};

mod float {
    //! Float helpers routed through `libm` so the crate builds without std.

    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }

    pub fn round(x: f64) -> f64 {
        libm::round(x)
    }

    pub fn powi(base: f64, exp: u32) -> f64 {
        let mut out = 1.0;
        for _ in 0..exp {
            out *= base;
        }
        out
    }
}
