//! JSON file schemas and their conversions to library types.
//!
//! All files are UTF-8 JSON with 0-based inclusive segment indices.
//! Parsing is strict: structural problems report the file and location
//! and map to exit code 2.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use motifeval::analysis::{Direction, ResultRow, ResultsTable};
use motifeval::benchgen::{BenchmarkSeries, InstanceDataset, LabeledClass};
use motifeval::types::{MotifSet, MotifSetCollection, Segment, TimeSeries};

use crate::CliError;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SegmentDto {
    pub start: usize,
    pub end: usize,
}

impl SegmentDto {
    pub fn to_segment(self, context: &str) -> Result<Segment, CliError> {
        Segment::new(self.start, self.end)
            .map_err(|e| CliError::input(format!("{context}: {e}")))
    }
}

impl From<Segment> for SegmentDto {
    fn from(seg: Segment) -> Self {
        Self { start: seg.start(), end: seg.end() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MotifSetDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub motifs: Vec<SegmentDto>,
}

impl MotifSetDto {
    fn to_motif_set(&self, context: &str) -> Result<MotifSet, CliError> {
        let motifs = self
            .motifs
            .iter()
            .enumerate()
            .map(|(i, dto)| dto.to_segment(&format!("{context}, motif {i}")))
            .collect::<Result<Vec<_>, _>>()?;
        MotifSet::new(self.label.clone(), motifs)
            .map_err(|e| CliError::input(format!("{context}: {e}")))
    }

    pub fn from_motif_set(set: &MotifSet) -> Self {
        Self {
            label: set.label().map(str::to_string),
            motifs: set.motifs().iter().map(|&s| s.into()).collect(),
        }
    }
}

/// `{"motif_sets": [{"label": ..., "motifs": [{"start", "end"}]}]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MotifSetsFile {
    pub motif_sets: Vec<MotifSetDto>,
}

impl MotifSetsFile {
    pub fn from_collection(collection: &MotifSetCollection) -> Self {
        Self {
            motif_sets: collection
                .sets()
                .iter()
                .map(MotifSetDto::from_motif_set)
                .collect(),
        }
    }

    fn to_sets(&self, path: &Path) -> Result<Vec<MotifSet>, CliError> {
        self.motif_sets
            .iter()
            .enumerate()
            .map(|(i, dto)| dto.to_motif_set(&format!("{}: motif set {i}", path.display())))
            .collect()
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::internal(format!("serializing {}: {e}", path.display())))?;
    fs::write(path, text + "\n")
        .map_err(|e| CliError::internal(format!("writing {}: {e}", path.display())))
}

pub fn read_ground_truth(path: &Path) -> Result<MotifSetCollection, CliError> {
    let file: MotifSetsFile = read_json(path)?;
    Ok(MotifSetCollection::ground_truth(file.to_sets(path)?))
}

pub fn read_discovered(path: &Path) -> Result<MotifSetCollection, CliError> {
    let file: MotifSetsFile = read_json(path)?;
    Ok(MotifSetCollection::discovered(file.to_sets(path)?))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassDto {
    pub label: String,
    /// Instances as length x dimensions sample lists.
    pub instances: Vec<Vec<Vec<f64>>>,
}

/// `{"name", "dimensions", "classes": [{"label", "instances"}]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatasetFile {
    pub name: String,
    pub dimensions: usize,
    pub classes: Vec<ClassDto>,
}

impl DatasetFile {
    pub fn to_dataset(&self, path: &Path) -> Result<InstanceDataset, CliError> {
        let mut classes = Vec::with_capacity(self.classes.len());
        for class in &self.classes {
            let mut instances = Vec::with_capacity(class.instances.len());
            for (i, samples) in class.instances.iter().enumerate() {
                let context = format!(
                    "{}: class '{}', instance {i}",
                    path.display(),
                    class.label
                );
                let mut values = Vec::with_capacity(samples.len() * self.dimensions);
                for sample in samples {
                    if sample.len() != self.dimensions {
                        return Err(CliError::input(format!(
                            "{context}: sample has {} components, dataset declares {}",
                            sample.len(),
                            self.dimensions
                        )));
                    }
                    values.extend_from_slice(sample);
                }
                instances.push(
                    TimeSeries::new(values, self.dimensions)
                        .map_err(|e| CliError::input(format!("{context}: {e}")))?,
                );
            }
            classes.push(LabeledClass { label: class.label.clone(), instances });
        }
        InstanceDataset::new(self.name.clone(), self.dimensions, classes)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
    }
}

pub fn read_dataset(path: &Path) -> Result<InstanceDataset, CliError> {
    let file: DatasetFile = read_json(path)?;
    file.to_dataset(path)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayoutDto {
    pub class: String,
    pub instance: usize,
    pub segment: SegmentDto,
    pub role: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProvenanceDto {
    pub dataset: String,
    pub split: String,
    pub seed: u64,
    pub index: usize,
}

/// One generated benchmark series with ground truth and layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchmarkSeriesFile {
    pub dimensions: usize,
    /// Row-major samples, length x dimensions.
    pub series: Vec<Vec<f64>>,
    pub ground_truth: Vec<MotifSetDto>,
    pub layout: Vec<LayoutDto>,
    pub provenance: ProvenanceDto,
}

impl BenchmarkSeriesFile {
    pub fn from_series(series: &BenchmarkSeries) -> Self {
        Self {
            dimensions: series.series.dims(),
            series: (0..series.series.len())
                .map(|i| series.series.sample(i).to_vec())
                .collect(),
            ground_truth: series
                .ground_truth
                .sets()
                .iter()
                .map(MotifSetDto::from_motif_set)
                .collect(),
            layout: series
                .layout
                .iter()
                .map(|entry| LayoutDto {
                    class: entry.class.clone(),
                    instance: entry.instance,
                    segment: entry.segment.into(),
                    role: if entry.is_motif { "motif" } else { "filler" }.to_string(),
                })
                .collect(),
            provenance: ProvenanceDto {
                dataset: series.provenance.dataset.clone(),
                split: series.provenance.split.clone(),
                seed: series.provenance.seed,
                index: series.provenance.index,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultRecordDto {
    pub dataset: String,
    pub series: String,
    pub method: String,
    pub metric: String,
    pub value: f64,
}

/// `{"results": [{"dataset", "series", "method", "metric", "value"}]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultsFile {
    pub results: Vec<ResultRecordDto>,
}

/// Reads a results table; metrics named in `lower_better` rank ascending.
pub fn read_results_table(path: &Path, lower_better: &[String]) -> Result<ResultsTable, CliError> {
    let file: ResultsFile = read_json(path)?;
    let rows: Vec<ResultRow> = file
        .results
        .into_iter()
        .map(|r| ResultRow {
            dataset: r.dataset,
            series: r.series,
            method: r.method,
            metric: r.metric,
            value: r.value,
        })
        .collect();
    ResultsTable::new(rows, |metric| {
        if lower_better.iter().any(|m| m == metric) {
            Direction::LowerBetter
        } else {
            Direction::HigherBetter
        }
    })
    .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Converts tab-separated classification instances (one `label v1 v2 ...`
/// line per instance) into the native dataset format. Univariate,
/// fixed-length instances only.
pub fn import_ucr_files(paths: &[std::path::PathBuf], name: &str) -> Result<DatasetFile, CliError> {
    let mut classes: Vec<(String, Vec<Vec<f64>>)> = Vec::new();
    let mut expected_len: Option<usize> = None;

    for path in paths {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split('\t');
            let label = fields
                .next()
                .ok_or_else(|| {
                    CliError::input(format!("{}:{}: empty line", path.display(), lineno + 1))
                })?
                .trim()
                .to_string();
            let values: Vec<f64> = fields
                .enumerate()
                .map(|(i, field)| {
                    field.trim().parse::<f64>().map_err(|e| {
                        CliError::input(format!(
                            "{}:{}: value {}: {e}",
                            path.display(),
                            lineno + 1,
                            i + 2
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if values.is_empty() {
                return Err(CliError::input(format!(
                    "{}:{}: instance has no values",
                    path.display(),
                    lineno + 1
                )));
            }
            match expected_len {
                None => expected_len = Some(values.len()),
                Some(len) if len != values.len() => {
                    return Err(CliError::input(format!(
                        "{}:{}: instance length {} differs from {len}; only fixed-length \
                         archives are supported",
                        path.display(),
                        lineno + 1,
                        values.len()
                    )));
                }
                Some(_) => {}
            }
            match classes.iter_mut().find(|(l, _)| *l == label) {
                Some((_, instances)) => instances.push(values),
                None => classes.push((label, vec![values])),
            }
        }
    }
    if classes.is_empty() {
        return Err(CliError::input("no instances found in the input files".to_string()));
    }
    classes.sort_by(|a, b| a.0.cmp(&b.0));

    Ok(DatasetFile {
        name: name.to_string(),
        dimensions: 1,
        classes: classes
            .into_iter()
            .map(|(label, instances)| ClassDto {
                label,
                instances: instances
                    .into_iter()
                    .map(|values| values.into_iter().map(|v| vec![v]).collect())
                    .collect(),
            })
            .collect(),
    })
}

/// Rounds metric values to six decimals so textual outputs are stable.
pub fn round6(value: f64) -> f64 {
    (value * 1e6).round() / 1e6
}
