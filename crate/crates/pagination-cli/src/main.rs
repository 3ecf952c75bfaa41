//! Command line for the pagination toolkit: instance generation, rule
//! checking and reduction, the solver roster, the exact oracle, LP export,
//! and the benchmark/analysis pipeline.
//!
//! Exit codes: 0 success, 1 usage error, 2 infeasible or invalid input,
//! 3 resource-limit stop (oracle budget exhausted, generator retries spent).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pagination_cli::analyze::{analysis_report, moving_window, render_csv, render_json};
use pagination_cli::bench::{run_benchmark, write_csv, BenchRecord, SolverId};
use pagination_cli::formats::{
    parse_instance, write_instance, write_oracle_solution, write_pagination,
};
use pagination_cli::svg::{line_chart, scatter_chart};
use pagination_core::adversarial::{af_adversarial, specialized_adversarial};
use pagination_core::exact::{brute_force_optimal_with, export_lp, SearchLimits};
use pagination_core::generator::{
    generate, shuffled_order, sweep_slots, GeneratorConfig, RNG_ALGORITHM, SWEEP_INSTANCE_COUNT,
};
use pagination_core::genetic::{run_ga, run_ga_undecanted, GaConfig, GaModel};
use pagination_core::greedy::size_sorted_order;
use pagination_core::instance::{validate, Instance, Pagination};
use pagination_core::rules::{check_rules, reduce, render_report};

#[derive(Parser)]
#[command(
    name = "pagination",
    version,
    about = "Solvers and benchmarks for overlapping-item bin packing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Generate(GenerateArgs),
    /// Generate the full benchmark sweep as instance files.
    Sweep(SweepArgs),
    /// Check the nine instance rules and print a witness per violation.
    Check(InArgs),
    /// Apply the rule reductions and write the reduced instance.
    Reduce(ReduceArgs),
    /// Run one solver on an instance file.
    Solve(SolveArgs),
    /// Prove an optimal page count by exhaustive search.
    Oracle(OracleArgs),
    /// Write the integer program in LP format.
    ExportLp(ExportLpArgs),
    /// Build an adversarial instance, optionally solving it on the spot.
    Adversarial(AdversarialArgs),
    /// Run a solver roster over a directory of instances and write CSV.
    Bench(BenchArgs),
    /// Moving-window smoothing and difficulty predictors over a bench CSV.
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    capacity: u32,
    #[arg(long)]
    symbols: usize,
    #[arg(long)]
    tiles: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_dir: PathBuf,
    /// Generate only the first N instances of the sweep.
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct InArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TileOrder {
    Natural,
    Random,
    SizeDesc,
}

#[derive(Args)]
struct SolveArgs {
    /// Solver name (first-fit, next-fit, best-fit-before, best-fit-after,
    /// worst-fit, almost-worst-fit, best-fusion, oar, standard-ga,
    /// grouping-ga).
    #[arg(long)]
    algo: String,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = TileOrder::Natural)]
    order: TileOrder,
    /// Skip the decantation post-treatment (best-fusion, oar and the GAs).
    #[arg(long)]
    no_decant: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the GA fitness history as CSV (GA solvers only).
    #[arg(long)]
    history: Option<PathBuf>,
    /// Population size (GA solvers only).
    #[arg(long, default_value_t = 80)]
    population: usize,
    /// Generation count (GA solvers only).
    #[arg(long, default_value_t = 50)]
    generations: usize,
    /// Crossover probability (GA solvers only).
    #[arg(long, default_value_t = 0.90)]
    crossover_rate: f64,
    /// Per-offspring mutation probability (GA solvers only).
    #[arg(long, default_value_t = 0.01)]
    mutation_rate: f64,
    /// Disparity exponent of the grouping fitness (GA solvers only).
    #[arg(long, default_value_t = 2)]
    disparity: u32,
    /// Individuals carried over unchanged per generation (GA solvers only).
    #[arg(long, default_value_t = 1)]
    elitism: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 10_000_000)]
    max_nodes: u64,
    /// Wall-clock budget in seconds; 0 disables the limit.
    #[arg(long, default_value_t = 60)]
    time_limit: u64,
    /// Refuse instances with more tiles than this; 0 lifts the cap.
    #[arg(long, default_value_t = 12)]
    tile_cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportLpArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Page horizon; defaults to the best quick-heuristic page count.
    #[arg(long)]
    pages: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AdversarialFamilyArg {
    Af,
    Specialized,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AdversarialOrder {
    Natural,
    Worst,
}

#[derive(Args)]
struct AdversarialArgs {
    #[arg(long, value_enum)]
    family: AdversarialFamilyArg,
    #[arg(long)]
    capacity: u32,
    /// Tile order baked into the emitted instance (`worst` interleaves the
    /// two Any Fit families; only meaningful for --family af).
    #[arg(long, value_enum, default_value_t = AdversarialOrder::Natural)]
    order: AdversarialOrder,
    /// Also run a solver on the instance and report its page count.
    #[arg(long = "solve")]
    solve_with: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of .txt instance files.
    #[arg(long)]
    in_dir: PathBuf,
    /// Comma-separated solver names; defaults to the difficulty roster.
    #[arg(long)]
    roster: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    svg_dir: Option<PathBuf>,
    /// Moving-window size for the SVG quality chart.
    #[arg(long, default_value_t = 500)]
    window: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 500)]
    window: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg_dir: Option<PathBuf>,
}

/// Failures mapped to exit codes 1 (usage), 2 (bad input), 3 (limits).
enum Failure {
    Usage(String),
    Input(anyhow::Error),
    Limit(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Limit(_) => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure::Input(error)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let code = if error.use_stderr() { 1 } else { 0 };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(message) => eprintln!("usage error: {message}"),
                Failure::Input(error) => eprintln!("error: {error:#}"),
                Failure::Limit(error) => eprintln!("stopped: {error:#}"),
            }
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Generate(args) => cmd_generate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Check(args) => cmd_check(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::ExportLp(args) => cmd_export_lp(args),
        Command::Adversarial(args) => cmd_adversarial(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Analyze(args) => cmd_analyze(args),
    }
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Input)?;
    parse_instance(&text).map_err(|e| Failure::Input(anyhow!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Input),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<(), Failure> {
    let config = GeneratorConfig::new(args.capacity, args.symbols, args.tiles, args.seed)
        .map_err(|e| Failure::Input(anyhow!("{e}")))?;
    let instance = generate(&config).map_err(|e| Failure::Limit(anyhow!("{e}")))?;
    eprintln!(
        "generated capacity {} symbols {} tiles {} (seed {}, rng {RNG_ALGORITHM})",
        args.capacity, args.symbols, args.tiles, args.seed
    );
    emit(&args.out, &write_instance(&instance))
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Failure> {
    let mut slots = sweep_slots(args.seed);
    if let Some(limit) = args.limit {
        slots.truncate(limit);
    }
    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))
        .map_err(Failure::Input)?;

    let jobs = args.jobs.max(1);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let failures = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if index >= slots.len() {
                    break;
                }
                let slot = &slots[index];
                match generate(&slot.config) {
                    Ok(instance) => {
                        let path = args.out_dir.join(format!("{}.txt", slot.id()));
                        if let Err(error) = fs::write(&path, write_instance(&instance)) {
                            failures
                                .lock()
                                .unwrap()
                                .push(anyhow!("writing {}: {error}", path.display()));
                        }
                    }
                    Err(error) => {
                        failures
                            .lock()
                            .unwrap()
                            .push(anyhow!("slot {}: {error}", slot.id()));
                    }
                }
            });
        }
    });

    let failures = failures.into_inner().unwrap();
    if let Some(first) = failures.into_iter().next() {
        return Err(Failure::Limit(first));
    }
    eprintln!(
        "wrote {} of {SWEEP_INSTANCE_COUNT} sweep instances to {} (seed {}, rng {RNG_ALGORITHM})",
        slots.len(),
        args.out_dir.display(),
        args.seed
    );
    Ok(())
}

fn cmd_check(args: InArgs) -> Result<(), Failure> {
    let instance = read_instance(&args.input)?;
    let report = check_rules(&instance);
    print!("{}", render_report(&instance, &report));
    if report.all_satisfied() {
        println!("all rules satisfied");
    }
    Ok(())
}

fn cmd_reduce(args: ReduceArgs) -> Result<(), Failure> {
    let instance = read_instance(&args.input)?;
    let (reduced, log) = reduce(&instance).map_err(|e| Failure::Input(anyhow!("{e}")))?;
    for step in log.steps() {
        eprintln!("reduction: {step:?}");
    }
    eprintln!(
        "reduced from {} tiles / capacity {} to {} tiles / capacity {}",
        instance.tile_count(),
        instance.capacity(),
        reduced.tile_count(),
        reduced.capacity()
    );
    emit(&args.out, &write_instance(&reduced))
}

fn order_for(instance: &Instance, order: TileOrder, seed: u64) -> Vec<usize> {
    match order {
        TileOrder::Natural => instance.tile_indices().collect(),
        TileOrder::SizeDesc => size_sorted_order(instance),
        TileOrder::Random => shuffled_order(instance.tile_count(), seed),
    }
}

fn cmd_solve(args: SolveArgs) -> Result<(), Failure> {
    let solver = SolverId::from_cli_name(&args.algo)
        .ok_or_else(|| Failure::Usage(format!("unknown solver {:?}", args.algo)))?;
    let is_ga = matches!(solver, SolverId::StandardGa | SolverId::GroupingGa);
    if args.history.is_some() && !is_ga {
        return Err(Failure::Usage(
            "--history only applies to standard-ga and grouping-ga".into(),
        ));
    }
    let instance = read_instance(&args.input)?;
    let order = order_for(&instance, args.order, args.seed);

    let pagination: Pagination = if is_ga {
        let model = if solver == SolverId::StandardGa {
            GaModel::Standard
        } else {
            GaModel::Grouping
        };
        if args.population < 2 {
            return Err(Failure::Usage("--population must be at least 2".into()));
        }
        if !(0.0..=1.0).contains(&args.crossover_rate) || !(0.0..=1.0).contains(&args.mutation_rate)
        {
            return Err(Failure::Usage(
                "--crossover-rate and --mutation-rate are probabilities".into(),
            ));
        }
        if args.disparity < 1 {
            return Err(Failure::Usage("--disparity must be at least 1".into()));
        }
        let config = GaConfig {
            population_size: args.population,
            generations: args.generations,
            crossover_rate: args.crossover_rate,
            mutation_rate: args.mutation_rate,
            disparity: args.disparity,
            elitism_count: args.elitism,
            rng_seed: args.seed,
        };
        let run = if args.no_decant {
            run_ga_undecanted(&instance, model, &config)
        } else {
            run_ga(&instance, model, &config)
        }
        .map_err(|e| Failure::Input(anyhow!("{e}")))?;
        if let Some(path) = &args.history {
            let mut csv = String::from("generation,best_fitness,mean_fitness\n");
            for entry in &run.history {
                csv.push_str(&format!(
                    "{},{},{}\n",
                    entry.generation, entry.best_fitness, entry.mean_fitness
                ));
            }
            fs::write(path, csv)
                .with_context(|| format!("writing {}", path.display()))
                .map_err(Failure::Input)?;
        }
        run.pagination
    } else {
        solve_ordered(solver, &instance, &order, !args.no_decant)
            .map_err(|e| Failure::Input(anyhow!("{e}")))?
    };

    validate(&instance, &pagination)
        .map_err(|e| Failure::Input(anyhow!("solver produced an invalid pagination: {e}")))?;
    eprintln!("{} pages {}", solver.cli_name(), pagination.page_count());
    emit(&args.out, &write_pagination(&pagination))
}

fn solve_ordered(
    solver: SolverId,
    instance: &Instance,
    order: &[usize],
    decant: bool,
) -> Result<Pagination, pagination_core::greedy::TileTooLarge> {
    use pagination_core::greedy::{any_fit, best_fusion, best_fusion_undecanted, AnyFitStrategy};
    use pagination_core::oar::{overload_and_remove, overload_and_remove_undecanted};
    match solver {
        SolverId::FirstFit => any_fit(instance, order, AnyFitStrategy::First),
        SolverId::NextFit => any_fit(instance, order, AnyFitStrategy::Next),
        SolverId::BestFitBefore => any_fit(instance, order, AnyFitStrategy::BestBefore),
        SolverId::BestFitAfter => any_fit(instance, order, AnyFitStrategy::BestAfter),
        SolverId::WorstFit => any_fit(instance, order, AnyFitStrategy::Worst),
        SolverId::AlmostWorstFit => any_fit(instance, order, AnyFitStrategy::AlmostWorst),
        SolverId::BestFusion => {
            if decant {
                best_fusion(instance, order)
            } else {
                best_fusion_undecanted(instance, order)
            }
        }
        SolverId::OverloadAndRemove => {
            if decant {
                overload_and_remove(instance, order)
            } else {
                overload_and_remove_undecanted(instance, order)
            }
        }
        SolverId::StandardGa | SolverId::GroupingGa => unreachable!("handled by the caller"),
    }
}

fn cmd_oracle(args: OracleArgs) -> Result<(), Failure> {
    let instance = read_instance(&args.input)?;
    let limits = SearchLimits {
        max_nodes: args.max_nodes,
        tile_cap: (args.tile_cap > 0).then_some(args.tile_cap),
    };
    let deadline =
        (args.time_limit > 0).then(|| Instant::now() + Duration::from_secs(args.time_limit));
    let mut should_stop = move || deadline.is_some_and(|d| Instant::now() > d);

    let result = brute_force_optimal_with(&instance, &limits, &mut should_stop)
        .map_err(|e| Failure::Input(anyhow!("{e}")))?;

    println!("pages {}, proven {}", result.page_count, result.proven);
    if let Some(path) = &args.out {
        fs::write(
            path,
            write_oracle_solution(&result.pagination, result.proven, result.explored_nodes),
        )
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::Input)?;
    }
    if !result.proven {
        return Err(Failure::Limit(anyhow!(
            "search stopped after {} nodes without proving optimality",
            result.explored_nodes
        )));
    }
    Ok(())
}

fn cmd_export_lp(args: ExportLpArgs) -> Result<(), Failure> {
    let instance = read_instance(&args.input)?;
    let pages = match args.pages {
        Some(pages) if pages >= 1 => pages,
        Some(_) => return Err(Failure::Usage("--pages must be at least 1".into())),
        None => {
            let order: Vec<usize> = instance.tile_indices().collect();
            // Best quick heuristic: decanted First Fit, Best Fusion and
            // Overload-and-Remove.
            let candidates = [
                SolverId::FirstFit,
                SolverId::BestFusion,
                SolverId::OverloadAndRemove,
            ];
            candidates
                .iter()
                .map(|s| {
                    solve_ordered(*s, &instance, &order, true)
                        .map(|p| p.page_count())
                        .map_err(|e| Failure::Input(anyhow!("{e}")))
                })
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .min()
                .unwrap_or(1)
                .max(1)
        }
    };
    emit(&args.out, &export_lp(&instance, pages))
}

fn cmd_adversarial(args: AdversarialArgs) -> Result<(), Failure> {
    let (instance, optimal_pages, note): (Instance, usize, Option<String>) = match args.family {
        AdversarialFamilyArg::Af => {
            let built =
                af_adversarial(args.capacity).map_err(|e| Failure::Input(anyhow!("{e}")))?;
            let instance = match args.order {
                AdversarialOrder::Natural => built.instance,
                AdversarialOrder::Worst => built.instance.with_tile_order(&built.worst_order),
            };
            (instance, built.optimal.page_count(), None)
        }
        AdversarialFamilyArg::Specialized => {
            let built = specialized_adversarial(args.capacity)
                .map_err(|e| Failure::Input(anyhow!("{e}")))?;
            let note = format!("trap pages {}", built.trap.page_count());
            (built.instance, built.optimal.page_count(), Some(note))
        }
    };

    println!(
        "family {} capacity {} tiles {}",
        match args.family {
            AdversarialFamilyArg::Af => "af",
            AdversarialFamilyArg::Specialized => "specialized",
        },
        args.capacity,
        instance.tile_count()
    );
    println!("optimal pages {optimal_pages}");
    if let Some(note) = note {
        println!("{note}");
    }

    if let Some(name) = &args.solve_with {
        let solver = SolverId::from_cli_name(name)
            .ok_or_else(|| Failure::Usage(format!("unknown solver {name:?}")))?;
        let pagination = solver.solve(&instance, args.seed, true);
        validate(&instance, &pagination)
            .map_err(|e| Failure::Input(anyhow!("solver produced an invalid pagination: {e}")))?;
        println!("{} pages {}", solver.cli_name(), pagination.page_count());
    }

    if args.out.is_some() {
        emit(&args.out, &write_instance(&instance))?;
    }
    Ok(())
}

fn parse_roster(text: Option<&str>) -> Result<Vec<SolverId>, Failure> {
    match text {
        None => Ok(SolverId::DEFAULT_ROSTER.to_vec()),
        Some(list) => {
            let mut roster = Vec::new();
            for name in list.split(',') {
                let name = name.trim();
                let solver = SolverId::from_cli_name(name)
                    .ok_or_else(|| Failure::Usage(format!("unknown solver {name:?}")))?;
                roster.push(solver);
            }
            if roster.len() < 2 {
                return Err(Failure::Usage(
                    "the roster needs at least two solvers to measure difficulty".into(),
                ));
            }
            Ok(roster)
        }
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let roster = parse_roster(args.roster.as_deref())?;

    let mut paths: Vec<PathBuf> = fs::read_dir(&args.in_dir)
        .with_context(|| format!("reading {}", args.in_dir.display()))
        .map_err(Failure::Input)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "txt"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Failure::Input(anyhow!(
            "no .txt instances in {}",
            args.in_dir.display()
        )));
    }

    let mut instances = Vec::with_capacity(paths.len());
    for path in &paths {
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("instance")
            .to_string();
        instances.push((id, read_instance(path)?));
    }

    let records = run_benchmark(&instances, &roster, args.seed, args.jobs, false);
    fs::write(&args.csv, write_csv(&records, &roster))
        .with_context(|| format!("writing {}", args.csv.display()))
        .map_err(Failure::Input)?;
    eprintln!(
        "benchmarked {} instances with {} solvers (seed {}, rng {RNG_ALGORITHM})",
        records.len(),
        roster.len(),
        args.seed
    );

    if let Some(dir) = &args.svg_dir {
        write_charts(dir, &records, &roster, args.window)?;
    }
    Ok(())
}

fn write_charts(
    dir: &Path,
    records: &[BenchRecord],
    roster: &[SolverId],
    window: usize,
) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .with_context(|| format!("creating {}", dir.display()))
        .map_err(Failure::Input)?;

    let points: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.avg_multiplicity, r.difficulty))
        .collect();
    let scatter = scatter_chart(
        "Statistical difficulty by average multiplicity",
        "average multiplicity",
        "difficulty",
        &points,
    );
    fs::write(dir.join("difficulty_by_multiplicity.svg"), scatter)
        .context("writing difficulty chart")
        .map_err(Failure::Input)?;

    let window = window.clamp(1, records.len().max(1));
    let smoothed = moving_window(records, window);
    let series: Vec<(String, Vec<(f64, f64)>)> = roster
        .iter()
        .enumerate()
        .map(|(i, solver)| {
            (
                solver.snake_name().to_string(),
                smoothed
                    .iter()
                    .map(|p| (p.avg_multiplicity, p.relative_quality[i]))
                    .collect(),
            )
        })
        .collect();
    let lines = line_chart(
        "Relative quality by average multiplicity",
        "average multiplicity",
        "best size / size",
        &series,
    );
    fs::write(dir.join("relative_quality_by_multiplicity.svg"), lines)
        .context("writing quality chart")
        .map_err(Failure::Input)?;
    Ok(())
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))
        .map_err(Failure::Input)?;
    let (roster, records) =
        pagination_cli::bench::read_csv(&text).map_err(|e| Failure::Input(anyhow!("{e}")))?;

    let window = args.window.max(1);
    let report =
        analysis_report(&records, &roster, window).map_err(|e| Failure::Input(anyhow!("{e}")))?;

    let rendered = match args.format {
        ReportFormat::Csv => render_csv(&report),
        ReportFormat::Json => render_json(&report),
    };
    emit(&args.out, &rendered)?;

    if let Some(dir) = &args.svg_dir {
        write_charts(dir, &records, &roster, window)?;
    }
    Ok(())
}
