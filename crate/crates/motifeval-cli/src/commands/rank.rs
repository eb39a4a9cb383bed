//! `motifeval rank`: Kendall tau matrices and average-rank tables.

use serde::Serialize;
use serde_json::json;

use motifeval::analysis::{average_ranks, tau_matrix, TauMode};

use crate::formats::{read_results_table, round6};
use crate::manifest::RunManifest;
use crate::{CliError, OutputFormat, RankArgs, TauModeArg};

#[derive(Serialize)]
struct TauOutput {
    mode: String,
    metrics: Vec<String>,
    tau: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct RankEntry {
    method: String,
    average_rank: f64,
}

#[derive(Serialize)]
struct RanksOutput {
    metric: String,
    ranks: Vec<RankEntry>,
}

pub fn run(args: &RankArgs) -> Result<(), CliError> {
    let context = args.results.display().to_string();
    let table = read_results_table(&args.results, &args.lower_better)?;

    let rendered = match &args.avg_ranks {
        Some(metric) => {
            let ranks = average_ranks(&table, metric)
                .map_err(|e| CliError::from_lib(&context, e))?;
            let output = RanksOutput {
                metric: metric.clone(),
                ranks: ranks
                    .into_iter()
                    .map(|(method, rank)| RankEntry { method, average_rank: round6(rank) })
                    .collect(),
            };
            match args.format {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&output)
                        .map_err(|e| CliError::internal(e.to_string()))?
                        + "\n"
                }
                OutputFormat::Tsv => {
                    let mut lines = vec!["method\taverage_rank".to_string()];
                    lines.extend(
                        output
                            .ranks
                            .iter()
                            .map(|e| format!("{}\t{:.6}", e.method, e.average_rank)),
                    );
                    lines.join("\n") + "\n"
                }
            }
        }
        None => {
            let mode = match args.mode {
                TauModeArg::Combined => TauMode::Combined,
                TauModeArg::PerDatasetAverage => TauMode::PerDatasetAverage,
            };
            let matrix = tau_matrix(&table, mode).map_err(|e| CliError::from_lib(&context, e))?;
            let output = TauOutput {
                mode: match args.mode {
                    TauModeArg::Combined => "combined".to_string(),
                    TauModeArg::PerDatasetAverage => "per-dataset-average".to_string(),
                },
                metrics: table.metrics().to_vec(),
                tau: matrix
                    .into_iter()
                    .map(|row| row.into_iter().map(round6).collect())
                    .collect(),
            };
            match args.format {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&output)
                        .map_err(|e| CliError::internal(e.to_string()))?
                        + "\n"
                }
                OutputFormat::Tsv => {
                    let mut lines = vec![format!("metric\t{}", output.metrics.join("\t"))];
                    for (metric, row) in output.metrics.iter().zip(&output.tau) {
                        let cells: Vec<String> =
                            row.iter().map(|v| format!("{v:.6}")).collect();
                        lines.push(format!("{metric}\t{}", cells.join("\t")));
                    }
                    lines.join("\n") + "\n"
                }
            }
        }
    };

    match &args.out {
        None => print!("{rendered}"),
        Some(path) => {
            std::fs::write(path, &rendered)
                .map_err(|e| CliError::internal(format!("writing {}: {e}", path.display())))?;
            let manifest = RunManifest::new(
                "rank",
                None,
                json!({
                    "results": args.results.display().to_string(),
                    "mode": format!("{:?}", args.mode),
                    "avg_ranks": args.avg_ranks,
                    "lower_better": args.lower_better,
                    "format": format!("{:?}", args.format).to_lowercase(),
                    "out": path.display().to_string(),
                }),
                &[&args.results],
            )?;
            let mut name = path.file_name().unwrap_or_default().to_os_string();
            name.push(".manifest.json");
            manifest.write(&path.with_file_name(name))?;
        }
    }
    Ok(())
}
