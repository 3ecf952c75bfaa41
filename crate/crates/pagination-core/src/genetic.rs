//! Standard and grouping genetic algorithms.
//!
//! The standard model encodes a chromosome as one page index per tile. It
//! can describe invalid paginations, so its fitness charges any overloaded
//! chromosome more than every valid one; seeding the population with First
//! Fit results keeps at least one valid individual around from the start.
//!
//! The grouping model encodes the page list itself, one gene per page, so
//! every chromosome is a valid pagination and crossover exchanges whole
//! pages instead of tearing them apart. Its fitness rewards pages of high
//! cardinality, normalized by the sum of the multiplicities of the C most
//! common symbols.
//!
//! Both models run the same generational loop: binary tournament selection,
//! two-point or group crossover, the model's mutation, and elitism.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::float;
use crate::greedy::{check_sizes, decant_valid, TileTooLarge};
use crate::instance::{Instance, Pagination};
use crate::metrics::cardinality;
use crate::pack::{first_fit_insert, to_pagination, PageState};

/// Shared GA parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    /// Probability that an offspring undergoes one mutation event.
    pub mutation_rate: f64,
    /// Disparity exponent of the grouping fitness.
    pub disparity: u32,
    pub elitism_count: usize,
    pub rng_seed: u64,
}

impl GaConfig {
    pub fn with_seed(rng_seed: u64) -> Self {
        GaConfig {
            rng_seed,
            ..GaConfig::default()
        }
    }

    fn check(&self) {
        assert!(self.population_size >= 2, "population must hold at least 2");
        assert!(
            (0.0..=1.0).contains(&self.crossover_rate),
            "crossover rate must be a probability"
        );
        assert!(
            (0.0..=1.0).contains(&self.mutation_rate),
            "mutation rate must be a probability"
        );
        assert!(self.disparity >= 1, "disparity must be at least 1");
    }
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 80,
            generations: 50,
            crossover_rate: 0.90,
            mutation_rate: 0.01,
            disparity: 2,
            elitism_count: 1,
            rng_seed: 0,
        }
    }
}

/// Which encoding to evolve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaModel {
    Standard,
    Grouping,
}

/// Best and mean population fitness of one generation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaHistoryEntry {
    pub generation: usize,
    pub best_fitness: f64,
    pub mean_fitness: f64,
}

/// Result of a GA run: the best pagination found and the per-generation
/// fitness history.
#[derive(Clone, Debug)]
pub struct GaRun {
    pub pagination: Pagination,
    pub history: Vec<GaHistoryEntry>,
}

/// Page assignment chromosome of the standard model: `genes[i]` is the
/// 1-based page of tile `i`.
pub type StandardChromosome = Vec<u32>;

/// Page-list chromosome of the grouping model; always a valid pagination.
pub type GroupingChromosome = Vec<Vec<usize>>;

/// Fitness of a standard chromosome, to be minimized.
///
/// Overloaded chromosomes count a saturated symbol grid plus every symbol in
/// excess; valid ones count all pages before the last nonempty one as
/// saturated plus the volume of that last page. Any invalid chromosome
/// therefore scores strictly above any valid one.
pub fn standard_fitness(instance: &Instance, genes: &StandardChromosome) -> u64 {
    assert_eq!(genes.len(), instance.tile_count());
    let capacity = u64::from(instance.capacity());
    let page_volumes = decode_volumes(instance, genes);

    let overload: u64 = page_volumes
        .iter()
        .map(|&v| u64::from(v).saturating_sub(capacity))
        .sum();
    if overload > 0 {
        return instance.tile_count() as u64 * capacity + overload;
    }

    match genes.iter().max() {
        Some(&last) => {
            let last_volume = u64::from(page_volumes[last as usize - 1]);
            (u64::from(last) - 1) * capacity + last_volume
        }
        None => 0,
    }
}

fn decode_volumes(instance: &Instance, genes: &StandardChromosome) -> Vec<u32> {
    let max_page = genes.iter().max().copied().unwrap_or(0) as usize;
    let mut unions = vec![crate::set::SymbolSet::empty(instance.symbol_count()); max_page];
    for (tile, &gene) in genes.iter().enumerate() {
        assert!(
            gene >= 1 && gene as usize <= instance.tile_count(),
            "page indices are 1-based and bounded by the tile count"
        );
        unions[gene as usize - 1].union_with(instance.tile(tile).symbols());
    }
    unions.iter().map(|u| u.len()).collect()
}

/// Decodes a standard chromosome into a pagination: pages ordered by gene
/// value, empty page numbers skipped.
pub fn decode_standard(genes: &StandardChromosome) -> Pagination {
    let max_page = genes.iter().max().copied().unwrap_or(0) as usize;
    let mut pages: Vec<Vec<usize>> = vec![Vec::new(); max_page];
    for (tile, &gene) in genes.iter().enumerate() {
        pages[gene as usize - 1].push(tile);
    }
    Pagination::from_pages(pages)
}

/// Encodes a pagination as a standard chromosome.
pub fn encode_standard(instance: &Instance, pagination: &Pagination) -> StandardChromosome {
    let mut genes = vec![0u32; instance.tile_count()];
    for (page_index, page) in pagination.pages().iter().enumerate() {
        for &tile in page.tiles() {
            genes[tile] = page_index as u32 + 1;
        }
    }
    genes
}

/// Reassigns one uniformly chosen tile to a uniformly chosen different page
/// index in `1..=tile_count`.
pub fn standard_mutate(instance: &Instance, genes: &mut StandardChromosome, rng: &mut impl Rng) {
    let m_max = instance.tile_count() as u32;
    if m_max < 2 {
        return;
    }
    let slot = rng.gen_range(0..genes.len());
    let current = genes[slot];
    let mut target = rng.gen_range(1..m_max);
    if target >= current {
        target += 1;
    }
    genes[slot] = target;
}

/// Two-point crossover at the given cut positions (half-open `[c1, c2)`).
pub fn standard_crossover_at(
    a: &StandardChromosome,
    b: &StandardChromosome,
    cuts: (usize, usize),
) -> (StandardChromosome, StandardChromosome) {
    let (c1, c2) = cuts;
    assert!(c1 <= c2 && c2 <= a.len() && a.len() == b.len());
    let mut child_a = a.clone();
    let mut child_b = b.clone();
    child_a[c1..c2].copy_from_slice(&b[c1..c2]);
    child_b[c1..c2].copy_from_slice(&a[c1..c2]);
    (child_a, child_b)
}

/// Two-point crossover with uniformly sampled cuts.
pub fn standard_crossover(
    a: &StandardChromosome,
    b: &StandardChromosome,
    rng: &mut impl Rng,
) -> (StandardChromosome, StandardChromosome) {
    let cuts = sample_cuts(a.len(), rng);
    standard_crossover_at(a, b, cuts)
}

fn sample_cuts(len: usize, rng: &mut impl Rng) -> (usize, usize) {
    let c1 = rng.gen_range(0..=len);
    let c2 = rng.gen_range(0..=len);
    (c1.min(c2), c1.max(c2))
}

/// Sum of the multiplicities of the C most common symbols of the instance;
/// an upper bound on the cardinality any valid page can reach, used to
/// normalize the grouping fitness.
pub fn m_cap(instance: &Instance) -> u64 {
    let all: Vec<usize> = instance.tile_indices().collect();
    let mut multiplicities: Vec<u32> = (0..instance.symbol_count())
        .map(|s| crate::metrics::multiplicity(instance, &all, s))
        .collect();
    multiplicities.sort_unstable_by(|a, b| b.cmp(a));
    multiplicities
        .iter()
        .take(instance.capacity() as usize)
        .map(|&m| u64::from(m))
        .sum()
}

/// Fitness of a grouping chromosome, to be maximized: the mean over pages of
/// `(cardinality / m_cap)^d` where `d` is the disparity.
pub fn grouping_fitness(
    instance: &Instance,
    chromosome: &GroupingChromosome,
    disparity: u32,
) -> f64 {
    grouping_fitness_with_cap(instance, chromosome, disparity, m_cap(instance))
}

fn grouping_fitness_with_cap(
    instance: &Instance,
    chromosome: &GroupingChromosome,
    disparity: u32,
    cap: u64,
) -> f64 {
    let pages = chromosome.len();
    if pages == 0 {
        return 0.0;
    }
    let sum: f64 = chromosome
        .iter()
        .map(|page| {
            let c = f64::from(cardinality(instance, page));
            float::powi(c / cap as f64, disparity)
        })
        .sum();
    sum / pages as f64
}

/// Empties one to three uniformly chosen pages, shuffles the freed tiles and
/// reinserts them by First Fit.
pub fn grouping_mutate(
    instance: &Instance,
    chromosome: &GroupingChromosome,
    rng: &mut impl Rng,
) -> GroupingChromosome {
    if chromosome.is_empty() {
        return chromosome.clone();
    }
    let max_emptied = chromosome.len().min(3);
    let count = rng.gen_range(1..=max_emptied);
    let mut page_indices: Vec<usize> = (0..chromosome.len()).collect();
    page_indices.shuffle(rng);
    let emptied = &page_indices[..count];

    let mut freed: Vec<usize> = Vec::new();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for (i, page) in chromosome.iter().enumerate() {
        if emptied.contains(&i) {
            freed.extend(page.iter().copied());
        } else {
            kept.push(page.clone());
        }
    }
    freed.sort_unstable();
    freed.shuffle(rng);

    reinsert_first_fit(instance, kept, freed)
}

/// Group crossover at explicit cut positions: the middle section of `b`
/// replaces the middle section of `a`, tiles duplicated by the injection are
/// removed from the outer sections, and the tiles of the dropped middle
/// section that are still missing re-enter by First Fit in decreasing size
/// order (ties by ascending index).
pub fn grouping_crossover_at(
    instance: &Instance,
    a: &GroupingChromosome,
    b: &GroupingChromosome,
    a_cuts: (usize, usize),
    b_cuts: (usize, usize),
) -> GroupingChromosome {
    let (a1, a2) = a_cuts;
    let (b1, b2) = b_cuts;
    assert!(a1 <= a2 && a2 <= a.len());
    assert!(b1 <= b2 && b2 <= b.len());

    let injected: Vec<Vec<usize>> = b[b1..b2].to_vec();
    let mut in_injected = vec![false; instance.tile_count()];
    for page in &injected {
        for &tile in page {
            in_injected[tile] = true;
        }
    }

    let strip = |pages: &[Vec<usize>]| -> Vec<Vec<usize>> {
        pages
            .iter()
            .map(|page| {
                page.iter()
                    .copied()
                    .filter(|&t| !in_injected[t])
                    .collect::<Vec<usize>>()
            })
            .filter(|page| !page.is_empty())
            .collect()
    };

    let mut child: Vec<Vec<usize>> = strip(&a[..a1]);
    child.extend(injected);
    child.extend(strip(&a[a2..]));

    let mut placed = vec![false; instance.tile_count()];
    for page in &child {
        for &tile in page {
            placed[tile] = true;
        }
    }
    let mut missing: Vec<usize> = (0..instance.tile_count()).filter(|&t| !placed[t]).collect();
    missing.sort_by_key(|&t| (core::cmp::Reverse(instance.tile(t).size()), t));

    reinsert_first_fit(instance, child, missing)
}

/// Group crossover with cut pairs sampled independently on each parent.
/// Returns both children.
pub fn grouping_crossover(
    instance: &Instance,
    a: &GroupingChromosome,
    b: &GroupingChromosome,
    rng: &mut impl Rng,
) -> (GroupingChromosome, GroupingChromosome) {
    let a_cuts = sample_cuts(a.len(), rng);
    let b_cuts = sample_cuts(b.len(), rng);
    let child_a = grouping_crossover_at(instance, a, b, a_cuts, b_cuts);
    let child_b = grouping_crossover_at(instance, b, a, b_cuts, a_cuts);
    (child_a, child_b)
}

fn reinsert_first_fit(
    instance: &Instance,
    pages: Vec<Vec<usize>>,
    tiles: Vec<usize>,
) -> GroupingChromosome {
    let mut states: Vec<PageState> = crate::pack::states_from_pages(instance, &pages);
    for tile in tiles {
        first_fit_insert(instance, &mut states, tile);
    }
    states.into_iter().map(|s| s.tiles).collect()
}

/// Runs the configured GA and returns the best pagination seen across all
/// generations, decanted, along with the fitness history.
pub fn run_ga(
    instance: &Instance,
    model: GaModel,
    config: &GaConfig,
) -> Result<GaRun, TileTooLarge> {
    let run = run_ga_undecanted(instance, model, config)?;
    Ok(GaRun {
        pagination: decant_valid(instance, &run.pagination),
        history: run.history,
    })
}

/// Same as [`run_ga`] but skips the final decantation.
pub fn run_ga_undecanted(
    instance: &Instance,
    model: GaModel,
    config: &GaConfig,
) -> Result<GaRun, TileTooLarge> {
    check_sizes(instance)?;
    config.check();
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);

    // Initial population: First Fit over random tile permutations, so every
    // seed individual is valid.
    let mut seeds: Vec<Pagination> = Vec::with_capacity(config.population_size);
    for _ in 0..config.population_size {
        let mut order: Vec<usize> = instance.tile_indices().collect();
        order.shuffle(&mut rng);
        let mut states: Vec<PageState> = Vec::new();
        for tile in order {
            first_fit_insert(instance, &mut states, tile);
        }
        seeds.push(to_pagination(states));
    }

    match model {
        GaModel::Standard => {
            let population: Vec<StandardChromosome> =
                seeds.iter().map(|p| encode_standard(instance, p)).collect();
            let driver = StandardDriver { instance };
            let (best, history) = evolve(&driver, population, config, &mut rng);
            Ok(GaRun {
                pagination: decode_standard(&best),
                history,
            })
        }
        GaModel::Grouping => {
            let population: Vec<GroupingChromosome> = seeds
                .iter()
                .map(|p| p.pages().iter().map(|pg| pg.tiles().to_vec()).collect())
                .collect();
            let driver = GroupingDriver {
                instance,
                cap: m_cap(instance),
                disparity: config.disparity,
            };
            let (best, history) = evolve(&driver, population, config, &mut rng);
            Ok(GaRun {
                pagination: Pagination::from_pages(best),
                history,
            })
        }
    }
}

/// Model-specific pieces of the generational loop. Fitness is reported as
/// f64; `better` orients the comparison.
trait GaDriver {
    type Genome: Clone;

    fn fitness(&self, genome: &Self::Genome) -> f64;
    fn better(&self, a: f64, b: f64) -> bool;
    fn crossover(
        &self,
        a: &Self::Genome,
        b: &Self::Genome,
        rng: &mut ChaCha8Rng,
    ) -> (Self::Genome, Self::Genome);
    fn mutate(&self, genome: &mut Self::Genome, rng: &mut ChaCha8Rng);
}

struct StandardDriver<'a> {
    instance: &'a Instance,
}

impl GaDriver for StandardDriver<'_> {
    type Genome = StandardChromosome;

    fn fitness(&self, genome: &Self::Genome) -> f64 {
        standard_fitness(self.instance, genome) as f64
    }

    fn better(&self, a: f64, b: f64) -> bool {
        a < b
    }

    fn crossover(
        &self,
        a: &Self::Genome,
        b: &Self::Genome,
        rng: &mut ChaCha8Rng,
    ) -> (Self::Genome, Self::Genome) {
        standard_crossover(a, b, rng)
    }

    fn mutate(&self, genome: &mut Self::Genome, rng: &mut ChaCha8Rng) {
        standard_mutate(self.instance, genome, rng);
    }
}

struct GroupingDriver<'a> {
    instance: &'a Instance,
    cap: u64,
    disparity: u32,
}

impl GaDriver for GroupingDriver<'_> {
    type Genome = GroupingChromosome;

    fn fitness(&self, genome: &Self::Genome) -> f64 {
        grouping_fitness_with_cap(self.instance, genome, self.disparity, self.cap)
    }

    fn better(&self, a: f64, b: f64) -> bool {
        a > b
    }

    fn crossover(
        &self,
        a: &Self::Genome,
        b: &Self::Genome,
        rng: &mut ChaCha8Rng,
    ) -> (Self::Genome, Self::Genome) {
        grouping_crossover(self.instance, a, b, rng)
    }

    fn mutate(&self, genome: &mut Self::Genome, rng: &mut ChaCha8Rng) {
        *genome = grouping_mutate(self.instance, genome, rng);
    }
}

fn evolve<D: GaDriver>(
    driver: &D,
    mut population: Vec<D::Genome>,
    config: &GaConfig,
    rng: &mut ChaCha8Rng,
) -> (D::Genome, Vec<GaHistoryEntry>) {
    let mut fitness: Vec<f64> = population.iter().map(|g| driver.fitness(g)).collect();
    let best_start = best_index(driver, &fitness);
    let mut best_genome = population[best_start].clone();
    let mut best_fitness = fitness[best_start];
    let mut history = Vec::with_capacity(config.generations);

    for generation in 0..config.generations {
        history.push(GaHistoryEntry {
            generation,
            best_fitness: fitness[best_index(driver, &fitness)],
            mean_fitness: fitness.iter().sum::<f64>() / fitness.len() as f64,
        });

        let mut next: Vec<D::Genome> = Vec::with_capacity(config.population_size);
        let mut ranked: Vec<usize> = (0..population.len()).collect();
        ranked.sort_by(|&a, &b| {
            if driver.better(fitness[a], fitness[b]) {
                core::cmp::Ordering::Less
            } else if driver.better(fitness[b], fitness[a]) {
                core::cmp::Ordering::Greater
            } else {
                a.cmp(&b)
            }
        });
        for &elite in ranked.iter().take(config.elitism_count) {
            next.push(population[elite].clone());
        }

        while next.len() < config.population_size {
            let p1 = tournament(driver, &fitness, rng);
            let p2 = tournament(driver, &fitness, rng);
            let (mut c1, mut c2) = if rng.gen_bool(config.crossover_rate) {
                driver.crossover(&population[p1], &population[p2], rng)
            } else {
                (population[p1].clone(), population[p2].clone())
            };
            if rng.gen_bool(config.mutation_rate) {
                driver.mutate(&mut c1, rng);
            }
            next.push(c1);
            if next.len() < config.population_size {
                if rng.gen_bool(config.mutation_rate) {
                    driver.mutate(&mut c2, rng);
                }
                next.push(c2);
            }
        }

        population = next;
        fitness = population.iter().map(|g| driver.fitness(g)).collect();
        let generation_best = best_index(driver, &fitness);
        if driver.better(fitness[generation_best], best_fitness) {
            best_fitness = fitness[generation_best];
            best_genome = population[generation_best].clone();
        }
    }

    (best_genome, history)
}

fn best_index<D: GaDriver>(driver: &D, fitness: &[f64]) -> usize {
    let mut best = 0;
    for i in 1..fitness.len() {
        if driver.better(fitness[i], fitness[best]) {
            best = i;
        }
    }
    best
}

fn tournament<D: GaDriver>(driver: &D, fitness: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let a = rng.gen_range(0..fitness.len());
    let b = rng.gen_range(0..fitness.len());
    if driver.better(fitness[b], fitness[a]) {
        b
    } else {
        a
    }
}
