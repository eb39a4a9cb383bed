//! `motifeval rwdemo`: generate random-walk benchmarks, run the
//! stationarity solver, and report per-series PROM results.

use std::fs;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use motifeval::benchgen::derive_seed;
use motifeval::prom::evaluate;
use motifeval::rwbaseline::{generate_rw_series, rw_solver, RwOptions, RwSolverOptions};
use motifeval::types::EvalConfig;

use crate::formats::{read_dataset, round6, write_json, MotifSetDto, MotifSetsFile};
use crate::manifest::RunManifest;
use crate::{resolve_seed, CliError, OutputFormat, RwdemoArgs};

#[derive(Serialize, Clone)]
struct SeriesReport {
    index: usize,
    seed: u64,
    inserted: usize,
    discovered: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    tp: Option<usize>,
    #[serde(rename = "fn", skip_serializing_if = "Option::is_none")]
    fn_: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fp: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    precision: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    recall: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f1: Option<f64>,
    skipped: bool,
}

#[derive(Serialize)]
struct RwdemoOutput {
    config: serde_json::Value,
    series: Vec<SeriesReport>,
    evaluated: usize,
    skipped: usize,
    mean_f1: f64,
}

pub fn run(args: &RwdemoArgs) -> Result<(), CliError> {
    let context = args.dataset.display().to_string();
    let dataset = read_dataset(&args.dataset)?;
    let seed = resolve_seed(args.seed)?;

    if args.insert_min > args.insert_max {
        return Err(CliError::input(format!(
            "--insert-min {} exceeds --insert-max {}",
            args.insert_min, args.insert_max
        )));
    }

    let mean_len = {
        let total: usize = dataset
            .classes()
            .iter()
            .flat_map(|c| c.instances.iter())
            .map(|i| i.len())
            .sum();
        total / dataset.total_instances().max(1)
    };
    let window = args.window.unwrap_or_else(|| (mean_len / 2).max(11));
    let rw_length = args.rw_length.unwrap_or(25 * mean_len.max(1));
    let min_gap = args.min_gap.unwrap_or(2 * window);

    let gen_opts = RwOptions {
        n_insert_range: (args.insert_min, args.insert_max),
        rw_length,
        min_gap,
        group_by_class: args.group_by_class,
    };
    let solver_opts = RwSolverOptions {
        window,
        alpha: args.alpha,
        stride: args.stride,
        min_motif_len: None,
    };
    let cfg = EvalConfig::default();

    struct SeriesOutcome {
        report: SeriesReport,
        series: motifeval::rwbaseline::RwBenchmarkSeries,
        discovered: motifeval::MotifSetCollection,
    }

    let outcomes: Vec<SeriesOutcome> = (0..args.n_series)
        .into_par_iter()
        .map(|i| -> Result<SeriesOutcome, CliError> {
            let series_seed = derive_seed(seed, i as u64);
            let bench = generate_rw_series(&dataset, &gen_opts, series_seed)
                .map_err(|e| CliError::from_lib(&context, e))?;
            let found = rw_solver(&bench.series, &solver_opts)
                .map_err(|e| CliError::from_lib(&context, e))?;
            let inserted = bench.inserted.total_motifs();
            let discovered = found.total_motifs();
            let report = if bench.inserted.is_empty() {
                // nothing was inserted: no ground truth to evaluate against
                SeriesReport {
                    index: i,
                    seed: series_seed,
                    inserted,
                    discovered,
                    tp: None,
                    fn_: None,
                    fp: None,
                    precision: None,
                    recall: None,
                    f1: None,
                    skipped: true,
                }
            } else {
                let eval = evaluate(&bench.inserted, &found, &cfg)
                    .map_err(|e| CliError::from_lib(&context, e))?;
                SeriesReport {
                    index: i,
                    seed: series_seed,
                    inserted,
                    discovered,
                    tp: Some(eval.counts.true_positives),
                    fn_: Some(eval.counts.false_negatives),
                    fp: Some(eval.counts.false_positives),
                    precision: Some(round6(eval.precision)),
                    recall: Some(round6(eval.recall)),
                    f1: Some(round6(eval.f1)),
                    skipped: false,
                }
            };
            Ok(SeriesOutcome { report, series: bench, discovered: found })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let evaluated = outcomes.iter().filter(|o| !o.report.skipped).count();
    let skipped = outcomes.len() - evaluated;
    let mean_f1 = if evaluated == 0 {
        0.0
    } else {
        outcomes
            .iter()
            .filter_map(|o| o.report.f1)
            .sum::<f64>()
            / evaluated as f64
    };

    let config = json!({
        "dataset": args.dataset.display().to_string(),
        "n_series": args.n_series,
        "window": window,
        "alpha": args.alpha,
        "stride": args.stride,
        "insert_min": args.insert_min,
        "insert_max": args.insert_max,
        "rw_length": rw_length,
        "min_gap": min_gap,
        "group_by_class": args.group_by_class,
    });

    let output = RwdemoOutput {
        config: config.clone(),
        series: outcomes.iter().map(|o| o.report.clone()).collect(),
        evaluated,
        skipped,
        mean_f1: round6(mean_f1),
    };

    let rendered = match args.format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&output)
                .map_err(|e| CliError::internal(e.to_string()))?
                + "\n"
        }
        OutputFormat::Tsv => {
            let mut lines =
                vec!["index\tinserted\tdiscovered\ttp\tfn\tfp\tprecision\trecall\tf1\tskipped"
                    .to_string()];
            for r in &output.series {
                let opt_u = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
                let opt_f = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.6}"));
                lines.push(format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.index,
                    r.inserted,
                    r.discovered,
                    opt_u(r.tp),
                    opt_u(r.fn_),
                    opt_u(r.fp),
                    opt_f(r.precision),
                    opt_f(r.recall),
                    opt_f(r.f1),
                    r.skipped
                ));
            }
            lines.push(format!("mean_f1\t{:.6}", output.mean_f1));
            lines.join("\n") + "\n"
        }
    };

    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::internal(format!("creating {}: {e}", dir.display())))?;
        for outcome in &outcomes {
            let i = outcome.report.index;
            let series_doc = json!({
                "seed": outcome.series.seed,
                "values": outcome.series.series.values(),
                "inserted": MotifSetsFile::from_collection(&outcome.series.inserted).motif_sets,
                "discovered": outcome
                    .discovered
                    .sets()
                    .iter()
                    .map(MotifSetDto::from_motif_set)
                    .collect::<Vec<_>>(),
            });
            write_json(&dir.join(format!("series_{i:04}.json")), &series_doc)?;
        }
        fs::write(dir.join("report.json"), &rendered)
            .map_err(|e| CliError::internal(format!("writing report: {e}")))?;
        let manifest = RunManifest::new("rwdemo", Some(seed), config, &[&args.dataset])?;
        manifest.write(&dir.join("manifest.json"))?;
    }

    print!("{rendered}");
    Ok(())
}
