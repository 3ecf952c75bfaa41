//! End-to-end checks of the `pagination` binary: subcommands, file
//! contracts and exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pagination_cli::formats::{parse_instance, parse_pagination};
use pagination_core::instance::validate;

const FIG2: &str =
    "pagination-instance v1\ncapacity 7\ntiles 4\na b c d e\nd e f\ne f g\nh i j k\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pagination"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn write_fig2(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("fig2.txt");
    fs::write(&path, FIG2).unwrap();
    path
}

#[test]
fn solve_grouping_ga_finds_the_fig2_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_fig2(dir.path());
    let out = dir.path().join("solution.txt");
    let output = run(&[
        "solve",
        "--algo",
        "grouping-ga",
        "--in",
        input.to_str().unwrap(),
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let pagination = parse_pagination(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(pagination.page_count(), 2);
    let instance = parse_instance(FIG2).unwrap();
    validate(&instance, &pagination).unwrap();
}

#[test]
fn oracle_reports_proven_pages() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_fig2(dir.path());
    let solution = dir.path().join("oracle.txt");
    let output = run(&[
        "oracle",
        "--in",
        input.to_str().unwrap(),
        "--out",
        solution.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("pages 2, proven true"));

    let text = fs::read_to_string(&solution).unwrap();
    assert!(text.contains("# proven true nodes"));
    let pagination = parse_pagination(&text).unwrap();
    assert_eq!(pagination.page_count(), 2);
}

#[test]
fn adversarial_first_fit_on_worst_order_explodes() {
    let output = run(&[
        "adversarial",
        "--family",
        "af",
        "--capacity",
        "4",
        "--order",
        "worst",
        "--solve",
        "first-fit",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("optimal pages 2"));
    assert!(text.contains("first-fit pages 6"));
}

#[test]
fn adversarial_specialized_reports_the_trap() {
    let output = run(&[
        "adversarial",
        "--family",
        "specialized",
        "--capacity",
        "4",
        "--solve",
        "oar",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("optimal pages 3"));
    assert!(text.contains("trap pages 6"));
    assert!(text.contains("oar pages 3"));
}

#[test]
fn generate_check_reduce_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let instance_path = dir.path().join("generated.txt");
    let output = run(&[
        "generate",
        "--capacity",
        "10",
        "--symbols",
        "15",
        "--tiles",
        "12",
        "--seed",
        "3",
        "--out",
        instance_path.to_str().unwrap(),
    ]);
    assert!(output.status.success());

    let output = run(&["check", "--in", instance_path.to_str().unwrap()]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("all rules satisfied"));

    // Reduce is the identity here but must round-trip the file.
    let reduced_path = dir.path().join("reduced.txt");
    let output = run(&[
        "reduce",
        "--in",
        instance_path.to_str().unwrap(),
        "--out",
        reduced_path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert_eq!(
        fs::read_to_string(&instance_path).unwrap(),
        fs::read_to_string(&reduced_path).unwrap()
    );
}

#[test]
fn check_reports_violations_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(
        &path,
        "pagination-instance v1\ncapacity 5\ntiles 2\na b\na b c\n",
    )
    .unwrap();
    let output = run(&["check", "--in", path.to_str().unwrap()]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("rule 1 violated"));
}

#[test]
fn export_lp_defaults_to_a_heuristic_horizon() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_fig2(dir.path());
    let output = run(&["export-lp", "--in", input.to_str().unwrap()]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("Minimize"));
    assert!(text.contains("Subject To"));
    // First Fit reaches the two-page optimum, so the horizon is 2 pages.
    assert!(text.contains("p_1"));
    assert!(!text.contains("p_2"));
}

#[test]
fn solve_history_records_ga_generations() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_fig2(dir.path());
    let history = dir.path().join("history.csv");
    let output = run(&[
        "solve",
        "--algo",
        "grouping-ga",
        "--in",
        input.to_str().unwrap(),
        "--history",
        history.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let text = fs::read_to_string(&history).unwrap();
    assert!(text.starts_with("generation,best_fitness,mean_fitness\n"));
    assert_eq!(text.lines().count(), 51);
}

#[test]
fn solve_accepts_ga_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_fig2(dir.path());
    let history = dir.path().join("short.csv");
    let output = run(&[
        "solve",
        "--algo",
        "standard-ga",
        "--in",
        input.to_str().unwrap(),
        "--population",
        "10",
        "--generations",
        "5",
        "--crossover-rate",
        "0.8",
        "--mutation-rate",
        "0.05",
        "--history",
        history.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    // 5 generations -> header plus 5 rows.
    assert_eq!(fs::read_to_string(&history).unwrap().lines().count(), 6);

    let output = run(&[
        "solve",
        "--algo",
        "grouping-ga",
        "--in",
        input.to_str().unwrap(),
        "--population",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn bench_and_analyze_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let instances = dir.path().join("instances");
    fs::create_dir(&instances).unwrap();
    // A handful of generated instances plus the worked example.
    write_fig2(&instances);
    for (i, seed) in [(0, 11u64), (1, 12), (2, 13), (3, 14)] {
        let path = instances.join(format!("gen{i}.txt"));
        let output = run(&[
            "generate",
            "--capacity",
            &format!("{}", 8 + i),
            "--symbols",
            "16",
            "--tiles",
            "14",
            "--seed",
            &seed.to_string(),
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(output.status.success());
    }

    let csv = dir.path().join("bench.csv");
    let svg_dir = dir.path().join("charts");
    let output = run(&[
        "bench",
        "--in-dir",
        instances.to_str().unwrap(),
        "--seed",
        "5",
        "--jobs",
        "2",
        "--csv",
        csv.to_str().unwrap(),
        "--svg-dir",
        svg_dir.to_str().unwrap(),
        "--window",
        "2",
    ]);
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with(
        "instance_id,capacity,symbols,tiles,cardinality,avg_multiplicity,first_fit_pages"
    ));
    assert_eq!(text.lines().count(), 6);
    assert!(svg_dir.join("difficulty_by_multiplicity.svg").exists());
    assert!(svg_dir
        .join("relative_quality_by_multiplicity.svg")
        .exists());

    // Deterministic given the seed.
    let csv2 = dir.path().join("bench2.csv");
    let output = run(&[
        "bench",
        "--in-dir",
        instances.to_str().unwrap(),
        "--seed",
        "5",
        "--jobs",
        "4",
        "--csv",
        csv2.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert_eq!(text, fs::read_to_string(&csv2).unwrap());

    let output = run(&[
        "analyze",
        "--in",
        csv.to_str().unwrap(),
        "--window",
        "2",
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["predictors"].as_array().unwrap().len(), 5);
    assert_eq!(value["window"].as_array().unwrap().len(), 4);

    let output = run(&["analyze", "--in", csv.to_str().unwrap(), "--window", "2"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("avg_multiplicity,difficulty,first_fit_quality"));
}

#[test]
fn sweep_writes_the_requested_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep");
    let output = run(&[
        "sweep",
        "--seed",
        "1",
        "--limit",
        "12",
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let mut names: Vec<String> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 12);
    assert_eq!(names[0], "C15_S20_T20_0.txt");
    let instance = parse_instance(&fs::read_to_string(out.join(&names[0])).unwrap()).unwrap();
    assert_eq!(instance.capacity(), 15);
    assert_eq!(instance.tile_count(), 20);
}

#[test]
fn exit_codes_follow_the_contract() {
    // Unknown flag: usage error.
    let output = run(&["solve", "--bogus"]);
    assert_eq!(output.status.code(), Some(1));

    // Unknown solver name: usage error.
    let dir = tempfile::tempdir().unwrap();
    let input = write_fig2(dir.path());
    let output = run(&["solve", "--algo", "nope", "--in", input.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));

    // Missing file: input error.
    let output = run(&["check", "--in", "/nonexistent/instance.txt"]);
    assert_eq!(output.status.code(), Some(2));

    // Malformed instance: input error.
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "not an instance\n").unwrap();
    let output = run(&[
        "solve",
        "--algo",
        "first-fit",
        "--in",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));

    // Oracle out of budget: resource-limit stop.
    let adversarial = dir.path().join("specialized.txt");
    let output = run(&[
        "adversarial",
        "--family",
        "specialized",
        "--capacity",
        "4",
        "--out",
        adversarial.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let output = run(&[
        "oracle",
        "--in",
        adversarial.to_str().unwrap(),
        "--max-nodes",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(3));
    assert!(stdout(&output).contains("proven false"));

    // Help exits cleanly.
    let output = run(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
}
