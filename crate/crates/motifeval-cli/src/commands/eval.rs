//! `motifeval eval`: compute PROM, correctness, and score for one
//! (ground truth, discovered) file pair.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use motifeval::prom::{evaluate, EvalReport};
use motifeval::reference::{correctness, score, CorrectnessVariant};
use motifeval::types::{Averaging, EvalConfig};

use crate::formats::{self, round6, SegmentDto};
use crate::manifest::RunManifest;
use crate::{AveragingArg, CliError, EvalArgs, MetricKind, OutputFormat};

#[derive(Serialize)]
struct MatchDto {
    gt_set: usize,
    gt_motif: usize,
    disc_set: usize,
    disc_motif: usize,
    gt_segment: SegmentDto,
    disc_segment: SegmentDto,
    overlap_rate: f64,
}

#[derive(Serialize)]
struct MatrixDto {
    /// The extended (g+1) x (d+1) matching matrix; the last column and
    /// row count unmatched ground-truth and discovered motifs.
    cells: Vec<Vec<usize>>,
    /// Ground-truth set index shown in each row.
    row_sets: Vec<usize>,
    /// Discovered set index shown in each column (the permutation pi).
    column_sets: Vec<usize>,
}

#[derive(Serialize)]
struct PromDto {
    tp: usize,
    #[serde(rename = "fn")]
    fn_: usize,
    fp: usize,
    precision: f64,
    recall: f64,
    f1: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_set_recall: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_set_precision: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_pair_f1: Option<Vec<f64>>,
    matching_matrix: MatrixDto,
    motif_matches: Vec<MatchDto>,
}

impl PromDto {
    fn from_report(report: &EvalReport) -> Self {
        let mm = &report.matching;
        let d = mm.num_disc_sets();
        Self {
            tp: report.counts.true_positives,
            fn_: report.counts.false_negatives,
            fp: report.counts.false_positives,
            precision: round6(report.precision),
            recall: round6(report.recall),
            f1: round6(report.f1),
            per_set_recall: report
                .macro_averages
                .as_ref()
                .map(|m| m.recall_per_gt_set.iter().map(|&v| round6(v)).collect()),
            per_set_precision: report
                .macro_averages
                .as_ref()
                .map(|m| m.precision_per_disc_set.iter().map(|&v| round6(v)).collect()),
            per_pair_f1: report
                .macro_averages
                .as_ref()
                .map(|m| m.f1_per_pair.iter().map(|&v| round6(v)).collect()),
            matching_matrix: MatrixDto {
                cells: mm.cells().to_vec(),
                row_sets: (0..mm.num_gt_sets()).map(|r| mm.gt_set_at(r)).collect(),
                column_sets: (0..d).map(|c| mm.disc_set_at(c)).collect(),
            },
            motif_matches: mm
                .motif_matches()
                .iter()
                .map(|m| MatchDto {
                    gt_set: m.gt_index.0,
                    gt_motif: m.gt_index.1,
                    disc_set: m.disc_index.0,
                    disc_motif: m.disc_index.1,
                    gt_segment: m.gt_segment.into(),
                    disc_segment: m.disc_segment.into(),
                    overlap_rate: round6(m.overlap_rate),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct EvalOutput {
    config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    prom: Option<PromDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    score: Option<f64>,
}

fn to_tsv(output: &EvalOutput) -> String {
    let mut lines: Vec<String> = Vec::new();
    if let Some(prom) = &output.prom {
        lines.push(format!("prom.tp\t{}", prom.tp));
        lines.push(format!("prom.fn\t{}", prom.fn_));
        lines.push(format!("prom.fp\t{}", prom.fp));
        lines.push(format!("prom.precision\t{:.6}", prom.precision));
        lines.push(format!("prom.recall\t{:.6}", prom.recall));
        lines.push(format!("prom.f1\t{:.6}", prom.f1));
    }
    let mut scalars: BTreeMap<&str, f64> = BTreeMap::new();
    if let Some(v) = output.cm {
        scalars.insert("cm.value", v);
    }
    if let Some(v) = output.cg {
        scalars.insert("cg.value", v);
    }
    if let Some(v) = output.score {
        scalars.insert("score.value", v);
    }
    for (key, value) in scalars {
        lines.push(format!("{key}\t{value:.6}"));
    }
    lines.join("\n") + "\n"
}

pub fn run(args: &EvalArgs) -> Result<(), CliError> {
    let gt = formats::read_ground_truth(&args.gt)?;
    let disc = formats::read_discovered(&args.pred)?;

    let averaging = match args.averaging {
        AveragingArg::Micro => Averaging::Micro,
        AveragingArg::Macro => Averaging::Macro,
    };
    let cfg = EvalConfig::new(args.or_threshold, args.penalize_offtarget, averaging)
        .map_err(|e| CliError::input(e.to_string()))?;

    let gt_context = args.gt.display().to_string();
    let mut output = EvalOutput {
        config: json!({
            "or_threshold": args.or_threshold,
            "averaging": format!("{:?}", args.averaging).to_lowercase(),
            "penalize_offtarget": args.penalize_offtarget,
            "score_penalize_offtarget": args.score_penalize_offtarget,
        }),
        prom: None,
        cm: None,
        cg: None,
        score: None,
    };

    for metric in &args.metrics {
        match metric {
            MetricKind::Prom => {
                let report = evaluate(&gt, &disc, &cfg)
                    .map_err(|e| CliError::from_lib(&gt_context, e))?;
                output.prom = Some(PromDto::from_report(&report));
            }
            MetricKind::Cm => {
                let result = correctness(&gt, &disc, CorrectnessVariant::OverMatched)
                    .map_err(|e| CliError::from_lib(&gt_context, e))?;
                output.cm = Some(round6(result.value));
            }
            MetricKind::Cg => {
                let result = correctness(&gt, &disc, CorrectnessVariant::OverGroundTruth)
                    .map_err(|e| CliError::from_lib(&gt_context, e))?;
                output.cg = Some(round6(result.value));
            }
            MetricKind::Score => {
                let result = score(&gt, &disc, args.score_penalize_offtarget)
                    .map_err(|e| CliError::from_lib(&gt_context, e))?;
                output.score = Some(round6(result.value));
            }
        }
    }

    let rendered = match args.format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&output)
                .map_err(|e| CliError::internal(e.to_string()))?
                + "\n"
        }
        OutputFormat::Tsv => to_tsv(&output),
    };

    match &args.out {
        None => print!("{rendered}"),
        Some(path) => {
            std::fs::write(path, &rendered)
                .map_err(|e| CliError::internal(format!("writing {}: {e}", path.display())))?;
            let manifest = RunManifest::new(
                "eval",
                None,
                json!({
                    "gt": args.gt.display().to_string(),
                    "pred": args.pred.display().to_string(),
                    "metrics": args.metrics.iter().map(|m| format!("{m:?}").to_lowercase()).collect::<Vec<_>>(),
                    "averaging": format!("{:?}", args.averaging).to_lowercase(),
                    "or_threshold": args.or_threshold,
                    "penalize_offtarget": args.penalize_offtarget,
                    "score_penalize_offtarget": args.score_penalize_offtarget,
                    "format": format!("{:?}", args.format).to_lowercase(),
                    "out": path.display().to_string(),
                }),
                &[&args.gt, &args.pred],
            )?;
            manifest.write(&manifest_path(path))?;
        }
    }
    Ok(())
}

fn manifest_path(out: &Path) -> std::path::PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}
