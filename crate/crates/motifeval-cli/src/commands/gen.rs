//! `motifeval gen`: build a validation/test benchmark from a dataset.

use std::fs;

use rayon::prelude::*;
use serde_json::json;

use motifeval::benchgen::{generate_benchmark, BenchmarkOptions, BenchmarkSeries};

use crate::formats::{read_dataset, write_json, BenchmarkSeriesFile};
use crate::manifest::RunManifest;
use crate::{resolve_seed, CliError, GenArgs};

fn write_split(dir: &std::path::Path, series: &[BenchmarkSeries]) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::internal(format!("creating {}: {e}", dir.display())))?;
    series
        .par_iter()
        .map(|s| {
            let path = dir.join(format!("series_{:04}.json", s.provenance.index));
            write_json(&path, &BenchmarkSeriesFile::from_series(s))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(())
}

pub fn run(args: &GenArgs) -> Result<(), CliError> {
    let dataset = read_dataset(&args.dataset)?;
    let seed = resolve_seed(args.seed)?;
    let opts = BenchmarkOptions {
        split_ratio: args.split_ratio,
        cardinality_cap: args.cardinality_cap,
    };
    let (validation, test) = generate_benchmark(&dataset, args.n_val, args.n_test, seed, &opts)
        .map_err(|e| CliError::from_lib(&args.dataset.display().to_string(), e))?;

    write_split(&args.out_dir.join("validation"), &validation)?;
    write_split(&args.out_dir.join("test"), &test)?;

    let manifest = RunManifest::new(
        "gen",
        Some(seed),
        json!({
            "dataset": args.dataset.display().to_string(),
            "out_dir": args.out_dir.display().to_string(),
            "n_val": args.n_val,
            "n_test": args.n_test,
            "split_ratio": args.split_ratio,
            "cardinality_cap": args.cardinality_cap,
        }),
        &[&args.dataset],
    )?;
    manifest.write(&args.out_dir.join("manifest.json"))?;

    println!(
        "wrote {} validation and {} test series to {}",
        validation.len(),
        test.len(),
        args.out_dir.display()
    );
    Ok(())
}
