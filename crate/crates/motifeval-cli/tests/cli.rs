//! End-to-end tests driving the compiled binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn motifeval(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_motifeval"));
    cmd.args(args);
    cmd.env_remove("MOTIFEVAL_SEED");
    for (key, value) in envs {
        cmd.env(key, value);
    }
    cmd.output().expect("binary runs")
}

fn write(path: &Path, content: &str) {
    fs::write(path, content).unwrap();
}

fn stdout_json(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

const GT_FIXTURE: &str = r#"{
  "motif_sets": [
    {"label": "A", "motifs": [{"start": 1, "end": 10}, {"start": 21, "end": 30}]},
    {"label": "B", "motifs": [{"start": 41, "end": 50}]}
  ]
}"#;

const PRED_FIXTURE: &str = r#"{
  "motif_sets": [
    {"motifs": [{"start": 2, "end": 11}, {"start": 22, "end": 31}, {"start": 60, "end": 69}]},
    {"motifs": [{"start": 42, "end": 51}]}
  ]
}"#;

#[test]
fn eval_perfect_reproduction_scores_one() {
    let dir = tempfile::tempdir().unwrap();
    let gt = dir.path().join("gt.json");
    write(&gt, GT_FIXTURE);

    let output = motifeval(
        &["eval", gt.to_str().unwrap(), gt.to_str().unwrap()],
        &[],
    );
    let report = stdout_json(&output);
    assert_eq!(report["prom"]["f1"], 1.0);
    assert_eq!(report["prom"]["precision"], 1.0);
    assert_eq!(report["prom"]["recall"], 1.0);
}

#[test]
fn eval_derived_fixture_matches_known_values() {
    let dir = tempfile::tempdir().unwrap();
    let gt = dir.path().join("gt.json");
    let pred = dir.path().join("pred.json");
    write(&gt, GT_FIXTURE);
    write(&pred, PRED_FIXTURE);

    let output = motifeval(
        &[
            "eval",
            gt.to_str().unwrap(),
            pred.to_str().unwrap(),
            "--metrics",
            "prom,cm,cg,score",
        ],
        &[],
    );
    let report = stdout_json(&output);
    assert_eq!(report["prom"]["tp"], 3);
    assert_eq!(report["prom"]["fn"], 0);
    assert_eq!(report["prom"]["fp"], 1);
    assert_eq!(report["prom"]["precision"], 0.75);
    assert_eq!(report["prom"]["recall"], 1.0);
    assert_eq!(report["prom"]["f1"], 0.857143);
    // every motif found with overlap rate 9/11
    assert_eq!(report["cm"], 0.818182);
    assert_eq!(report["cg"], 0.818182);
    // one-index shifts for the three matched motifs, plus the length of
    // the stray motif inside the matched set
    assert_eq!(report["score"], 13.0);

    let tsv = motifeval(
        &[
            "eval",
            gt.to_str().unwrap(),
            pred.to_str().unwrap(),
            "--metrics",
            "prom",
            "--format",
            "tsv",
        ],
        &[],
    );
    assert!(tsv.status.success());
    let text = String::from_utf8(tsv.stdout).unwrap();
    assert!(text.contains("prom.precision\t0.750000"));
    assert!(text.contains("prom.f1\t0.857143"));
}

#[test]
fn eval_reports_ground_truth_overlap_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let gt = dir.path().join("gt.json");
    let pred = dir.path().join("pred.json");
    // the second set touches index 10 of the first
    write(
        &gt,
        r#"{"motif_sets": [
            {"motifs": [{"start": 1, "end": 10}]},
            {"motifs": [{"start": 10, "end": 20}]}
        ]}"#,
    );
    write(&pred, PRED_FIXTURE);

    let output = motifeval(&["eval", gt.to_str().unwrap(), pred.to_str().unwrap()], &[]);
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("overlap"), "stderr: {stderr}");
}

#[test]
fn eval_reports_parse_failures_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let gt = dir.path().join("gt.json");
    let pred = dir.path().join("pred.json");
    write(&gt, "{\"motif_sets\": [");
    write(&pred, PRED_FIXTURE);

    let output = motifeval(&["eval", gt.to_str().unwrap(), pred.to_str().unwrap()], &[]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("gt.json"), "stderr must name the file: {stderr}");

    // structurally valid JSON with an invalid segment also exits 2
    write(
        &gt,
        r#"{"motif_sets": [{"motifs": [{"start": 9, "end": 3}]}]}"#,
    );
    let output = motifeval(&["eval", gt.to_str().unwrap(), pred.to_str().unwrap()], &[]);
    assert_eq!(output.status.code(), Some(2));
}

fn dataset_fixture(classes: usize, per_class: usize, len: usize) -> String {
    let classes: Vec<Value> = (0..classes)
        .map(|ci| {
            let instances: Vec<Value> = (0..per_class)
                .map(|ii| {
                    let base = (ci * per_class + ii) as f64 * 1000.0;
                    let samples: Vec<Value> = (0..len)
                        .map(|t| serde_json::json!([base + t as f64]))
                        .collect();
                    Value::Array(samples)
                })
                .collect();
            serde_json::json!({"label": format!("C{ci}"), "instances": instances})
        })
        .collect();
    serde_json::json!({"name": "fixture", "dimensions": 1, "classes": classes}).to_string()
}

#[test]
fn gen_writes_split_series_and_manifest_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let dataset = dir.path().join("dataset.json");
    write(&dataset, &dataset_fixture(7, 8, 5));

    let run = |out: &Path| {
        let output = motifeval(
            &[
                "gen",
                dataset.to_str().unwrap(),
                "--out-dir",
                out.to_str().unwrap(),
                "--n-val",
                "2",
                "--n-test",
                "3",
                "--seed",
                "11",
            ],
            &[],
        );
        assert!(
            output.status.success(),
            "stderr: {}",
            String::from_utf8_lossy(&output.stderr)
        );
    };

    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    run(&out_a);
    run(&out_b);

    for split in ["validation", "test"] {
        let count = fs::read_dir(out_a.join(split)).unwrap().count();
        assert_eq!(count, if split == "validation" { 2 } else { 3 });
    }
    assert!(out_a.join("manifest.json").exists());

    // byte-identical reruns
    for split in ["validation", "test"] {
        let dir_a = out_a.join(split);
        for entry in fs::read_dir(&dir_a).unwrap() {
            let path = entry.unwrap().path();
            let rel = path.file_name().unwrap();
            let a = fs::read(&path).unwrap();
            let b = fs::read(out_b.join(split).join(rel)).unwrap();
            assert_eq!(a, b, "series differ between identical runs");
        }
    }

    // a series file parses and has alternating layout
    let first = fs::read_dir(out_a.join("validation"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .min()
        .unwrap();
    let series: Value = serde_json::from_str(&fs::read_to_string(first).unwrap()).unwrap();
    let layout = series["layout"].as_array().unwrap();
    assert!(layout.len() >= 3);
    for (i, entry) in layout.iter().enumerate() {
        let expected = if i % 2 == 0 { "motif" } else { "filler" };
        assert_eq!(entry["role"], expected);
    }
    assert_eq!(series["provenance"]["split"], "validation");
}

#[test]
fn gen_uses_env_seed_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let dataset = dir.path().join("dataset.json");
    write(&dataset, &dataset_fixture(5, 6, 4));
    let out = dir.path().join("out");

    let output = motifeval(
        &[
            "gen",
            dataset.to_str().unwrap(),
            "--out-dir",
            out.to_str().unwrap(),
            "--n-val",
            "1",
            "--n-test",
            "1",
        ],
        &[("MOTIFEVAL_SEED", "42")],
    );
    assert!(output.status.success());
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 42);
    assert_eq!(manifest["command"], "gen");
    assert!(manifest["inputs"][0]["sha256"].as_str().unwrap().len() == 64);
}

const RESULTS_FIXTURE: &str = r#"{"results": [
    {"dataset": "d1", "series": "0", "method": "m1", "metric": "f1", "value": 0.9},
    {"dataset": "d1", "series": "1", "method": "m1", "metric": "f1", "value": 0.7},
    {"dataset": "d1", "series": "0", "method": "m2", "metric": "f1", "value": 0.4},
    {"dataset": "d1", "series": "1", "method": "m2", "metric": "f1", "value": 0.5}
]}"#;

#[test]
fn rank_single_metric_yields_unit_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().join("results.json");
    write(&results, RESULTS_FIXTURE);

    let output = motifeval(&["rank", results.to_str().unwrap()], &[]);
    let report = stdout_json(&output);
    assert_eq!(report["metrics"], serde_json::json!(["f1"]));
    assert_eq!(report["tau"], serde_json::json!([[1.0]]));
}

#[test]
fn rank_average_ranks_table() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().join("results.json");
    write(&results, RESULTS_FIXTURE);

    let output = motifeval(
        &[
            "rank",
            results.to_str().unwrap(),
            "--avg-ranks",
            "f1",
            "--format",
            "tsv",
        ],
        &[],
    );
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("m1\t1.000000"));
    assert!(text.contains("m2\t2.000000"));
}

#[test]
fn rwdemo_with_zero_insertions_skips_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let dataset = dir.path().join("dataset.json");
    write(&dataset, &dataset_fixture(3, 3, 40));

    let output = motifeval(
        &[
            "rwdemo",
            dataset.to_str().unwrap(),
            "--n-series",
            "2",
            "--insert-min",
            "0",
            "--insert-max",
            "0",
            "--window",
            "20",
            "--rw-length",
            "400",
            "--seed",
            "5",
        ],
        &[],
    );
    let report = stdout_json(&output);
    assert_eq!(report["mean_f1"], 0.0);
    assert_eq!(report["skipped"], 2);
    assert_eq!(report["evaluated"], 0);
    assert_eq!(report["series"][0]["skipped"], true);
}

#[test]
fn rwdemo_writes_outputs_when_asked() {
    let dir = tempfile::tempdir().unwrap();
    let dataset = dir.path().join("dataset.json");
    // smooth arcs, long enough for a meaningful window
    let classes: Vec<Value> = (0..2)
        .map(|ci| {
            let instances: Vec<Value> = (0..3)
                .map(|ii| {
                    let samples: Vec<Value> = (0..60)
                        .map(|t| {
                            let x = t as f64 / 60.0;
                            let phase = ci as f64 + ii as f64 * 0.2;
                            serde_json::json!([(std::f64::consts::TAU * (x + phase)).sin() * 2.0])
                        })
                        .collect();
                    Value::Array(samples)
                })
                .collect();
            serde_json::json!({"label": format!("S{ci}"), "instances": instances})
        })
        .collect();
    write(
        &dataset,
        &serde_json::json!({"name": "smooth", "dimensions": 1, "classes": classes}).to_string(),
    );

    let out = dir.path().join("rw");
    let output = motifeval(
        &[
            "rwdemo",
            dataset.to_str().unwrap(),
            "--n-series",
            "2",
            "--insert-min",
            "1",
            "--insert-max",
            "2",
            "--rw-length",
            "1500",
            "--out-dir",
            out.to_str().unwrap(),
            "--seed",
            "7",
        ],
        &[],
    );
    let report = stdout_json(&output);
    assert_eq!(report["series"].as_array().unwrap().len(), 2);
    assert!(out.join("series_0000.json").exists());
    assert!(out.join("report.json").exists());
    assert!(out.join("manifest.json").exists());
}

#[test]
fn import_ucr_roundtrips_into_gen() {
    let dir = tempfile::tempdir().unwrap();
    let tsv = dir.path().join("train.tsv");
    // 6 classes x 8 instances of length 5; a 0.25 split leaves both
    // pools with enough instances per class
    let mut lines = Vec::new();
    for class in 0..6 {
        for instance in 0..8 {
            let values: Vec<String> = (0..5)
                .map(|t| format!("{}", (class * 1000 + instance * 10 + t) as f64))
                .collect();
            lines.push(format!("{class}\t{}", values.join("\t")));
        }
    }
    write(&tsv, &lines.join("\n"));

    let dataset = dir.path().join("dataset.json");
    let output = motifeval(
        &[
            "import-ucr",
            tsv.to_str().unwrap(),
            "--name",
            "tiny",
            "--out",
            dataset.to_str().unwrap(),
        ],
        &[],
    );
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );

    let parsed: Value = serde_json::from_str(&fs::read_to_string(&dataset).unwrap()).unwrap();
    assert_eq!(parsed["dimensions"], 1);
    assert_eq!(parsed["classes"].as_array().unwrap().len(), 6);

    // the imported dataset feeds straight into gen
    let out = dir.path().join("bench");
    let output = motifeval(
        &[
            "gen",
            dataset.to_str().unwrap(),
            "--out-dir",
            out.to_str().unwrap(),
            "--n-val",
            "1",
            "--n-test",
            "1",
            "--seed",
            "3",
        ],
        &[],
    );
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
}

#[test]
fn import_ucr_rejects_ragged_instances() {
    let dir = tempfile::tempdir().unwrap();
    let tsv = dir.path().join("bad.tsv");
    write(&tsv, "1\t1.0\t2.0\n2\t1.0\t2.0\t3.0\n");
    let output = motifeval(
        &[
            "import-ucr",
            tsv.to_str().unwrap(),
            "--name",
            "bad",
            "--out",
            dir.path().join("out.json").to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(output.status.code(), Some(2));
}
