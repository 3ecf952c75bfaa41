//! Benchmark harness: run a roster of solvers over instance sets, record
//! page counts, wall times and the per-instance statistical difficulty, and
//! serialize everything as CSV.
//!
//! Runs are deterministic for a fixed (instances, roster, seed) triple: the
//! per-run RNG seed is derived from the base seed, the instance id and the
//! solver, never from thread scheduling. Wall times are recorded for
//! information only.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use pagination_core::generator::splitmix64;
use pagination_core::genetic::{run_ga, GaConfig, GaModel};
use pagination_core::greedy::{any_fit, best_fusion, AnyFitStrategy};
use pagination_core::instance::{Instance, Pagination};
use pagination_core::metrics::cardinality;
use pagination_core::oar::overload_and_remove;
use pagination_core::stats::{average_multiplicity, difficulty};

/// The solvers the harness knows how to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverId {
    FirstFit,
    NextFit,
    BestFitBefore,
    BestFitAfter,
    WorstFit,
    AlmostWorstFit,
    BestFusion,
    OverloadAndRemove,
    StandardGa,
    GroupingGa,
}

impl SolverId {
    /// The roster used for difficulty measurements.
    pub const DEFAULT_ROSTER: [SolverId; 5] = [
        SolverId::FirstFit,
        SolverId::BestFusion,
        SolverId::OverloadAndRemove,
        SolverId::StandardGa,
        SolverId::GroupingGa,
    ];

    pub const ALL: [SolverId; 10] = [
        SolverId::FirstFit,
        SolverId::NextFit,
        SolverId::BestFitBefore,
        SolverId::BestFitAfter,
        SolverId::WorstFit,
        SolverId::AlmostWorstFit,
        SolverId::BestFusion,
        SolverId::OverloadAndRemove,
        SolverId::StandardGa,
        SolverId::GroupingGa,
    ];

    /// Command-line name.
    pub fn cli_name(self) -> &'static str {
        match self {
            SolverId::FirstFit => "first-fit",
            SolverId::NextFit => "next-fit",
            SolverId::BestFitBefore => "best-fit-before",
            SolverId::BestFitAfter => "best-fit-after",
            SolverId::WorstFit => "worst-fit",
            SolverId::AlmostWorstFit => "almost-worst-fit",
            SolverId::BestFusion => "best-fusion",
            SolverId::OverloadAndRemove => "oar",
            SolverId::StandardGa => "standard-ga",
            SolverId::GroupingGa => "grouping-ga",
        }
    }

    /// Identifier used in CSV column names.
    pub fn snake_name(self) -> &'static str {
        match self {
            SolverId::FirstFit => "first_fit",
            SolverId::NextFit => "next_fit",
            SolverId::BestFitBefore => "best_fit_before",
            SolverId::BestFitAfter => "best_fit_after",
            SolverId::WorstFit => "worst_fit",
            SolverId::AlmostWorstFit => "almost_worst_fit",
            SolverId::BestFusion => "best_fusion",
            SolverId::OverloadAndRemove => "overload_and_remove",
            SolverId::StandardGa => "standard_ga",
            SolverId::GroupingGa => "grouping_ga",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<SolverId> {
        SolverId::ALL.iter().copied().find(|s| s.cli_name() == name)
    }

    fn strategy(self) -> Option<AnyFitStrategy> {
        match self {
            SolverId::FirstFit => Some(AnyFitStrategy::First),
            SolverId::NextFit => Some(AnyFitStrategy::Next),
            SolverId::BestFitBefore => Some(AnyFitStrategy::BestBefore),
            SolverId::BestFitAfter => Some(AnyFitStrategy::BestAfter),
            SolverId::WorstFit => Some(AnyFitStrategy::Worst),
            SolverId::AlmostWorstFit => Some(AnyFitStrategy::AlmostWorst),
            _ => None,
        }
    }

    /// Runs the solver on the instance's natural tile order. `decant`
    /// selects whether Best Fusion, Overload-and-Remove and the GAs apply
    /// their post-treatment (the Any Fit family never does).
    pub fn solve(self, instance: &Instance, seed: u64, decant: bool) -> Pagination {
        let order: Vec<usize> = instance.tile_indices().collect();
        match self {
            SolverId::BestFusion => {
                if decant {
                    best_fusion(instance, &order)
                } else {
                    pagination_core::greedy::best_fusion_undecanted(instance, &order)
                }
            }
            SolverId::OverloadAndRemove => {
                if decant {
                    overload_and_remove(instance, &order)
                } else {
                    pagination_core::oar::overload_and_remove_undecanted(instance, &order)
                }
            }
            SolverId::StandardGa | SolverId::GroupingGa => {
                let model = if self == SolverId::StandardGa {
                    GaModel::Standard
                } else {
                    GaModel::Grouping
                };
                let config = GaConfig::with_seed(seed);
                let run = if decant {
                    run_ga(instance, model, &config)
                } else {
                    pagination_core::genetic::run_ga_undecanted(instance, model, &config)
                };
                return run
                    .expect("tile sizes were checked before solving")
                    .pagination;
            }
            _ => any_fit(instance, &order, self.strategy().unwrap()),
        }
        .expect("tile sizes were checked before solving")
    }
}

/// One solver run on one instance.
#[derive(Clone, Debug)]
pub struct SolverOutcome {
    pub solver: SolverId,
    pub page_count: usize,
    pub wall_time: f64,
    pub pagination: Option<Pagination>,
}

/// All solver outcomes for one instance plus the derived statistics.
#[derive(Clone, Debug)]
pub struct BenchRecord {
    pub instance_id: String,
    pub capacity: u32,
    pub symbols: usize,
    pub tiles: usize,
    pub cardinality: u32,
    pub avg_multiplicity: f64,
    pub outcomes: Vec<SolverOutcome>,
    pub difficulty: f64,
}

impl BenchRecord {
    pub fn page_counts(&self) -> Vec<usize> {
        self.outcomes.iter().map(|o| o.page_count).collect()
    }

    /// Best page count any rostered solver reached on this instance.
    pub fn best_pages(&self) -> usize {
        self.outcomes
            .iter()
            .map(|o| o.page_count)
            .min()
            .expect("records hold at least one outcome")
    }
}

fn fnv1a64(text: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in text.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x1000_0000_01b3);
    }
    hash
}

/// Runs the roster over every instance with a bounded worker pool and
/// returns the records sorted by average multiplicity.
pub fn run_benchmark(
    instances: &[(String, Instance)],
    roster: &[SolverId],
    seed: u64,
    jobs: usize,
    keep_paginations: bool,
) -> Vec<BenchRecord> {
    assert!(roster.len() >= 2, "difficulty needs at least two solvers");
    let jobs = jobs.max(1);
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<BenchRecord>>> = Mutex::new(vec![None; instances.len()]);

    std::thread::scope(|scope| {
        for _ in 0..jobs.min(instances.len().max(1)) {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= instances.len() {
                    break;
                }
                let (id, instance) = &instances[index];
                let record = bench_one(id, instance, roster, seed, keep_paginations);
                slots.lock().unwrap()[index] = Some(record);
            });
        }
    });

    let mut records: Vec<BenchRecord> = slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every slot was filled"))
        .collect();
    records.sort_by(|a, b| {
        a.avg_multiplicity
            .partial_cmp(&b.avg_multiplicity)
            .unwrap()
            .then_with(|| a.instance_id.cmp(&b.instance_id))
    });
    records
}

fn bench_one(
    id: &str,
    instance: &Instance,
    roster: &[SolverId],
    seed: u64,
    keep_paginations: bool,
) -> BenchRecord {
    let instance_seed = splitmix64(seed ^ fnv1a64(id));
    let mut outcomes = Vec::with_capacity(roster.len());
    for (solver_index, &solver) in roster.iter().enumerate() {
        let run_seed = splitmix64(instance_seed ^ solver_index as u64);
        let start = Instant::now();
        let pagination = solver.solve(instance, run_seed, true);
        let wall_time = start.elapsed().as_secs_f64();
        debug_assert!(pagination_core::instance::is_valid(instance, &pagination));
        outcomes.push(SolverOutcome {
            solver,
            page_count: pagination.page_count(),
            wall_time,
            pagination: keep_paginations.then_some(pagination),
        });
    }
    let counts: Vec<usize> = outcomes.iter().map(|o| o.page_count).collect();
    let all: Vec<usize> = instance.tile_indices().collect();
    BenchRecord {
        instance_id: id.to_string(),
        capacity: instance.capacity(),
        symbols: instance.symbol_count(),
        tiles: instance.tile_count(),
        cardinality: cardinality(instance, &all),
        avg_multiplicity: average_multiplicity(instance),
        difficulty: difficulty(&counts),
        outcomes,
    }
}

/// CSV with one row per record. Columns: instance metadata, one
/// `<solver>_pages` column per rostered solver, then the difficulty.
pub fn write_csv(records: &[BenchRecord], roster: &[SolverId]) -> String {
    let mut out = String::from("instance_id,capacity,symbols,tiles,cardinality,avg_multiplicity");
    for solver in roster {
        out.push(',');
        out.push_str(solver.snake_name());
        out.push_str("_pages");
    }
    out.push_str(",difficulty\n");

    for record in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}",
            record.instance_id,
            record.capacity,
            record.symbols,
            record.tiles,
            record.cardinality,
            format_float(record.avg_multiplicity),
        ));
        for solver in roster {
            let outcome = record
                .outcomes
                .iter()
                .find(|o| o.solver == *solver)
                .expect("record covers the roster");
            out.push_str(&format!(",{}", outcome.page_count));
        }
        out.push_str(&format!(",{}\n", format_float(record.difficulty)));
    }
    out
}

fn format_float(value: f64) -> String {
    let text = format!("{value:.6}");
    text.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    #[error("empty CSV")]
    Empty,
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("line {line}: {message}")]
    BadRow { line: usize, message: String },
}

/// Reads a benchmark CSV back into records (paginations and wall times are
/// not part of the format).
pub fn read_csv(text: &str) -> Result<(Vec<SolverId>, Vec<BenchRecord>), CsvError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(CsvError::Empty)?;
    let columns: Vec<&str> = header.split(',').collect();
    let fixed = [
        "instance_id",
        "capacity",
        "symbols",
        "tiles",
        "cardinality",
        "avg_multiplicity",
    ];
    if columns.len() < fixed.len() + 2 || columns[..fixed.len()] != fixed {
        return Err(CsvError::BadHeader(header.to_string()));
    }
    if columns[columns.len() - 1] != "difficulty" {
        return Err(CsvError::BadHeader(header.to_string()));
    }
    let mut roster = Vec::new();
    for column in &columns[fixed.len()..columns.len() - 1] {
        let name = column.strip_suffix("_pages").ok_or_else(|| {
            CsvError::BadHeader(format!("expected a <solver>_pages column, got {column}"))
        })?;
        let solver = SolverId::ALL
            .iter()
            .copied()
            .find(|s| s.snake_name() == name)
            .ok_or_else(|| CsvError::BadHeader(format!("unknown solver {name}")))?;
        roster.push(solver);
    }

    let mut records = Vec::new();
    for (index, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            return Err(CsvError::BadRow {
                line: index + 1,
                message: format!("expected {} fields, got {}", columns.len(), fields.len()),
            });
        }
        let parse_err = |message: String| CsvError::BadRow {
            line: index + 1,
            message,
        };
        let outcomes = roster
            .iter()
            .enumerate()
            .map(|(i, &solver)| {
                Ok(SolverOutcome {
                    solver,
                    page_count: fields[fixed.len() + i].parse().map_err(|_| {
                        parse_err(format!("bad page count {:?}", fields[fixed.len() + i]))
                    })?,
                    wall_time: 0.0,
                    pagination: None,
                })
            })
            .collect::<Result<Vec<_>, CsvError>>()?;
        records.push(BenchRecord {
            instance_id: fields[0].to_string(),
            capacity: fields[1]
                .parse()
                .map_err(|_| parse_err(format!("bad capacity {:?}", fields[1])))?,
            symbols: fields[2]
                .parse()
                .map_err(|_| parse_err(format!("bad symbol count {:?}", fields[2])))?,
            tiles: fields[3]
                .parse()
                .map_err(|_| parse_err(format!("bad tile count {:?}", fields[3])))?,
            cardinality: fields[4]
                .parse()
                .map_err(|_| parse_err(format!("bad cardinality {:?}", fields[4])))?,
            avg_multiplicity: fields[5]
                .parse()
                .map_err(|_| parse_err(format!("bad multiplicity {:?}", fields[5])))?,
            difficulty: fields[columns.len() - 1].parse().map_err(|_| {
                parse_err(format!("bad difficulty {:?}", fields[columns.len() - 1]))
            })?,
            outcomes,
        });
    }
    Ok((roster, records))
}
