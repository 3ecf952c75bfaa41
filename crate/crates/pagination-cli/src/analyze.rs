//! Post-hoc analysis of benchmark records: moving-window smoothing over
//! average multiplicity and the difficulty-predictor correlation table.

use serde::Serialize;

use pagination_core::stats::{pearson_r, CorrelationError};

use crate::bench::{BenchRecord, SolverId};

/// One smoothed point: window means of multiplicity, difficulty and the
/// per-solver relative quality (best page count over the solver's).
#[derive(Clone, Debug, Serialize)]
pub struct WindowPoint {
    pub avg_multiplicity: f64,
    pub difficulty: f64,
    pub relative_quality: Vec<f64>,
}

/// Moving-window means over the records sorted by increasing average
/// multiplicity; `n - window + 1` points, so the endpoints disappear.
pub fn moving_window(records: &[BenchRecord], window: usize) -> Vec<WindowPoint> {
    assert!(window >= 1, "window must be positive");
    let mut sorted: Vec<&BenchRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        a.avg_multiplicity
            .partial_cmp(&b.avg_multiplicity)
            .unwrap()
            .then_with(|| a.instance_id.cmp(&b.instance_id))
    });

    if sorted.len() < window {
        return Vec::new();
    }
    let solvers = sorted.first().map(|r| r.outcomes.len()).unwrap_or_default();

    let mut points = Vec::with_capacity(sorted.len() - window + 1);
    for chunk in sorted.windows(window) {
        let n = window as f64;
        let avg_multiplicity = chunk.iter().map(|r| r.avg_multiplicity).sum::<f64>() / n;
        let difficulty = chunk.iter().map(|r| r.difficulty).sum::<f64>() / n;
        let mut relative_quality = vec![0.0; solvers];
        for record in chunk {
            let best = record.best_pages() as f64;
            for (i, outcome) in record.outcomes.iter().enumerate() {
                relative_quality[i] += best / outcome.page_count as f64;
            }
        }
        for quality in &mut relative_quality {
            *quality /= n;
        }
        points.push(WindowPoint {
            avg_multiplicity,
            difficulty,
            relative_quality,
        });
    }
    points
}

/// Correlation of the statistical difficulty with one candidate predictor.
#[derive(Clone, Debug, Serialize)]
pub struct PredictorEntry {
    pub predictor: &'static str,
    /// `None` when the correlation is undefined (zero variance).
    pub r: Option<f64>,
}

/// The candidate predictors, in report order.
pub const PREDICTORS: [&str; 5] = [
    "symbols",
    "instance_size",
    "tiles",
    "cardinality",
    "avg_multiplicity",
];

/// Pearson correlations of the difficulty against each candidate predictor:
/// the alphabet size, the instance size |S|*|T|, the tile count, the
/// cardinality, and the average multiplicity.
pub fn predictor_report(records: &[BenchRecord]) -> Result<Vec<PredictorEntry>, CorrelationError> {
    if records.len() < 2 {
        return Err(CorrelationError::TooFewPoints);
    }
    let difficulty: Vec<f64> = records.iter().map(|r| r.difficulty).collect();
    let series: [(&'static str, Vec<f64>); 5] = [
        (
            "symbols",
            records.iter().map(|r| r.symbols as f64).collect(),
        ),
        (
            "instance_size",
            records
                .iter()
                .map(|r| (r.symbols * r.tiles) as f64)
                .collect(),
        ),
        ("tiles", records.iter().map(|r| r.tiles as f64).collect()),
        (
            "cardinality",
            records.iter().map(|r| f64::from(r.cardinality)).collect(),
        ),
        (
            "avg_multiplicity",
            records.iter().map(|r| r.avg_multiplicity).collect(),
        ),
    ];

    let mut entries = Vec::with_capacity(series.len());
    for (predictor, xs) in series {
        let r = match pearson_r(&xs, &difficulty) {
            Ok(r) => Some(r),
            // A constant predictor (or constant difficulty) has no defined
            // correlation; report it as such rather than failing the run.
            Err(CorrelationError::ZeroVariance { .. }) => None,
            Err(other) => return Err(other),
        };
        entries.push(PredictorEntry { predictor, r });
    }
    Ok(entries)
}

/// Full analysis document for JSON output.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub window_size: usize,
    pub solvers: Vec<&'static str>,
    pub predictors: Vec<PredictorEntry>,
    pub window: Vec<WindowPoint>,
}

pub fn analysis_report(
    records: &[BenchRecord],
    roster: &[SolverId],
    window: usize,
) -> Result<AnalysisReport, CorrelationError> {
    Ok(AnalysisReport {
        window_size: window,
        solvers: roster.iter().map(|s| s.snake_name()).collect(),
        predictors: predictor_report(records)?,
        window: moving_window(records, window),
    })
}

/// The windowed series as CSV, prefixed by the predictor table as comments.
pub fn render_csv(report: &AnalysisReport) -> String {
    let mut out = String::new();
    for entry in &report.predictors {
        match entry.r {
            Some(r) => out.push_str(&format!("# r({}) = {r:.4}\n", entry.predictor)),
            None => out.push_str(&format!(
                "# r({}) undefined (zero variance)\n",
                entry.predictor
            )),
        }
    }
    out.push_str("avg_multiplicity,difficulty");
    for solver in &report.solvers {
        out.push_str(&format!(",{solver}_quality"));
    }
    out.push('\n');
    for point in &report.window {
        out.push_str(&format!(
            "{:.6},{:.6}",
            point.avg_multiplicity, point.difficulty
        ));
        for quality in &point.relative_quality {
            out.push_str(&format!(",{quality:.6}"));
        }
        out.push('\n');
    }
    out
}

pub fn render_json(report: &AnalysisReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}
