//! Rank agreement between metrics and average-rank tables for methods.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// Whether larger or smaller metric values are better. Score is the only
/// lower-is-better metric in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    HigherBetter,
    LowerBetter,
}

impl Direction {
    /// Orients a value so that larger always means better.
    fn oriented(self, value: f64) -> f64 {
        match self {
            Direction::HigherBetter => value,
            Direction::LowerBetter => -value,
        }
    }
}

/// Kendall rank correlation (tau-b, tie-corrected) between two paired
/// value lists, after orienting both best-to-worst.
///
/// Computed with the merge-sort inversion-counting formulation, O(n log n).
pub fn kendall_tau(
    values_a: &[f64],
    values_b: &[f64],
    direction_a: Direction,
    direction_b: Direction,
) -> Result<f64> {
    if values_a.len() != values_b.len() {
        return Err(Error::InvalidParameter(format!(
            "paired lists differ in length: {} vs {}",
            values_a.len(),
            values_b.len()
        )));
    }
    let n = values_a.len();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two paired values".into()));
    }
    if values_a.iter().chain(values_b).any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("values must be finite".into()));
    }

    let mut pairs: Vec<(f64, f64)> = values_a
        .iter()
        .zip(values_b)
        .map(|(&a, &b)| (direction_a.oriented(a), direction_b.oriented(b)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));

    fn tie_pairs<F: Fn(&(f64, f64), &(f64, f64)) -> bool>(pairs: &[(f64, f64)], same: F) -> u64 {
        let mut total = 0u64;
        let mut run = 1u64;
        for w in pairs.windows(2) {
            if same(&w[0], &w[1]) {
                run += 1;
            } else {
                total += run * (run - 1) / 2;
                run = 1;
            }
        }
        total + run * (run - 1) / 2
    }

    let ties_a = tie_pairs(&pairs, |x, y| x.0 == y.0);
    let ties_joint = tie_pairs(&pairs, |x, y| x.0 == y.0 && x.1 == y.1);

    // Merge sort by the second component, counting swaps = discordant pairs.
    let mut keys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let mut buffer = keys.clone();
    let mut swaps = 0u64;
    let mut width = 1usize;
    while width < n {
        let mut offset = 0usize;
        while offset < n {
            let mid = (offset + width).min(n);
            let end = (offset + 2 * width).min(n);
            let (mut i, mut j, mut out) = (offset, mid, offset);
            while i < mid || j < end {
                if i < mid && (j >= end || keys[i] <= keys[j]) {
                    buffer[out] = keys[i];
                    i += 1;
                } else {
                    buffer[out] = keys[j];
                    swaps += (mid - i) as u64;
                    j += 1;
                }
                out += 1;
            }
            offset = end;
        }
        std::mem::swap(&mut keys, &mut buffer);
        width *= 2;
    }

    let ties_b = {
        let mut sorted: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        sorted.sort_by(f64::total_cmp);
        let mut total = 0u64;
        let mut run = 1u64;
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                run += 1;
            } else {
                total += run * (run - 1) / 2;
                run = 1;
            }
        }
        total + run * (run - 1) / 2
    };

    let total_pairs = (n as u64 * (n as u64 - 1)) / 2;
    if ties_a == total_pairs || ties_b == total_pairs {
        return Err(Error::DegenerateInput(
            "a list with all values tied has no ranking".into(),
        ));
    }

    let concordant_minus_discordant = total_pairs as f64 - ties_a as f64 - ties_b as f64
        + ties_joint as f64
        - 2.0 * swaps as f64;
    let denom =
        ((total_pairs - ties_a) as f64 * (total_pairs - ties_b) as f64).sqrt();
    Ok((concordant_minus_discordant / denom).clamp(-1.0, 1.0))
}

/// One result cell: a metric value for a (dataset, series, method) key.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub dataset: String,
    pub series: String,
    pub method: String,
    pub metric: String,
    pub value: f64,
}

/// A flat table of evaluation results with per-metric directions.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultsTable {
    rows: Vec<ResultRow>,
    metrics: Vec<String>,
    directions: BTreeMap<String, Direction>,
}

impl ResultsTable {
    /// Builds a table, rejecting duplicate (dataset, series, method,
    /// metric) keys and non-finite values. `direction_of` assigns each
    /// metric its orientation.
    pub fn new(
        rows: Vec<ResultRow>,
        direction_of: impl Fn(&str) -> Direction,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut metrics = BTreeSet::new();
        for row in &rows {
            if !row.value.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "non-finite value for metric '{}' on {}/{}/{}",
                    row.metric, row.dataset, row.series, row.method
                )));
            }
            if !seen.insert((
                row.dataset.clone(),
                row.series.clone(),
                row.method.clone(),
                row.metric.clone(),
            )) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate key {}/{}/{}/{}",
                    row.dataset, row.series, row.method, row.metric
                )));
            }
            metrics.insert(row.metric.clone());
        }
        let metrics: Vec<String> = metrics.into_iter().collect();
        let directions = metrics
            .iter()
            .map(|m| (m.clone(), direction_of(m)))
            .collect();
        Ok(Self { rows, metrics, directions })
    }

    /// Metric ids in sorted order; the axis of tau matrices.
    pub fn metrics(&self) -> &[String] {
        &self.metrics
    }

    pub fn direction(&self, metric: &str) -> Option<Direction> {
        self.directions.get(metric).copied()
    }

    pub fn rows(&self) -> &[ResultRow] {
        &self.rows
    }

    /// Per result key (dataset, series, method), the value of every
    /// metric; errors if any metric is missing for a key.
    fn complete_records(&self) -> Result<Vec<((String, String, String), Vec<f64>)>> {
        let mut grouped: BTreeMap<(String, String, String), BTreeMap<&str, f64>> = BTreeMap::new();
        for row in &self.rows {
            grouped
                .entry((row.dataset.clone(), row.series.clone(), row.method.clone()))
                .or_default()
                .insert(&row.metric, row.value);
        }
        let mut records = Vec::with_capacity(grouped.len());
        let mut missing = Vec::new();
        for (key, values) in grouped {
            let mut vector = Vec::with_capacity(self.metrics.len());
            for metric in &self.metrics {
                match values.get(metric.as_str()) {
                    Some(&v) => vector.push(v),
                    None => missing.push(format!("{}/{}/{}:{metric}", key.0, key.1, key.2)),
                }
            }
            if missing.is_empty() {
                records.push((key, vector));
            }
        }
        if missing.is_empty() {
            Ok(records)
        } else {
            Err(Error::MissingCell { cells: missing })
        }
    }
}

/// How to pool results when correlating metric rankings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauMode {
    /// One ranking over all datasets' results together.
    Combined,
    /// Tau per dataset, then averaged; the meaningful mode for metrics
    /// whose scale varies across datasets.
    PerDatasetAverage,
}

/// Symmetric matrix of Kendall tau values between all metric pairs, in
/// the order of [`ResultsTable::metrics`]. The diagonal is 1 by
/// definition.
pub fn tau_matrix(table: &ResultsTable, mode: TauMode) -> Result<Vec<Vec<f64>>> {
    let records = table.complete_records()?;
    let k = table.metrics().len();
    let mut matrix = vec![vec![1.0; k]; k];

    let tau_of = |subset: &[&(
        (String, String, String),
        Vec<f64>,
    )], a: usize, b: usize|
     -> Result<f64> {
        let va: Vec<f64> = subset.iter().map(|(_, v)| v[a]).collect();
        let vb: Vec<f64> = subset.iter().map(|(_, v)| v[b]).collect();
        kendall_tau(
            &va,
            &vb,
            table.direction(&table.metrics()[a]).unwrap(),
            table.direction(&table.metrics()[b]).unwrap(),
        )
    };

    for a in 0..k {
        for b in a + 1..k {
            let tau = match mode {
                TauMode::Combined => {
                    let all: Vec<&((String, String, String), Vec<f64>)> =
                        records.iter().collect();
                    tau_of(&all, a, b)?
                }
                TauMode::PerDatasetAverage => {
                    let mut datasets: BTreeMap<&str, Vec<&((String, String, String), Vec<f64>)>> =
                        BTreeMap::new();
                    for record in &records {
                        datasets.entry(&record.0 .0).or_default().push(record);
                    }
                    let mut sum = 0.0;
                    for subset in datasets.values() {
                        sum += tau_of(subset, a, b)?;
                    }
                    sum / datasets.len() as f64
                }
            };
            matrix[a][b] = tau;
            matrix[b][a] = tau;
        }
    }
    Ok(matrix)
}

/// Ranks with ties replaced by the mean of the positions they occupy;
/// `values` must already be oriented so larger is better. Rank 1 is best.
fn average_ranks_of(values: &[f64]) -> Vec<f64> {
    let m = values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let mut ranks = vec![0.0; m];
    let mut pos = 0usize;
    while pos < m {
        let mut end = pos;
        while end + 1 < m && values[order[end + 1]] == values[order[pos]] {
            end += 1;
        }
        // positions pos..=end are tied: average of ranks pos+1..=end+1
        let rank = (pos + 1 + end + 1) as f64 / 2.0;
        for &idx in &order[pos..=end] {
            ranks[idx] = rank;
        }
        pos = end + 1;
    }
    ranks
}

/// Average rank of every method under one metric: per dataset, methods
/// are ranked by their mean metric value (direction-aware, ties
/// averaged), and those ranks are averaged across datasets.
///
/// Returns (method, average rank) sorted best first. Errors with
/// [`Error::MissingCell`] if some (dataset, method) pair has no value.
pub fn average_ranks(table: &ResultsTable, metric: &str) -> Result<Vec<(String, f64)>> {
    let direction = table
        .direction(metric)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown metric '{metric}'")))?;

    let mut datasets: BTreeSet<&str> = BTreeSet::new();
    let mut methods: BTreeSet<&str> = BTreeSet::new();
    let mut cells: BTreeMap<(&str, &str), Vec<f64>> = BTreeMap::new();
    for row in table.rows() {
        if row.metric != metric {
            continue;
        }
        datasets.insert(&row.dataset);
        methods.insert(&row.method);
        cells
            .entry((&row.dataset, &row.method))
            .or_default()
            .push(row.value);
    }
    if datasets.is_empty() {
        return Err(Error::InvalidParameter(format!("no rows carry metric '{metric}'")));
    }

    let mut missing = Vec::new();
    for &d in &datasets {
        for &m in &methods {
            if !cells.contains_key(&(d, m)) {
                missing.push(format!("{d}/{m}"));
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingCell { cells: missing });
    }

    let methods: Vec<&str> = methods.into_iter().collect();
    let mut rank_sums = vec![0.0; methods.len()];
    for &dataset in &datasets {
        let means: Vec<f64> = methods
            .iter()
            .map(|&m| {
                let values = &cells[&(dataset, m)];
                direction.oriented(values.iter().sum::<f64>() / values.len() as f64)
            })
            .collect();
        for (i, rank) in average_ranks_of(&means).into_iter().enumerate() {
            rank_sums[i] += rank;
        }
    }

    let mut result: Vec<(String, f64)> = methods
        .into_iter()
        .zip(rank_sums)
        .map(|(m, sum)| (m.to_string(), sum / datasets.len() as f64))
        .collect();
    result.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(result)
}
