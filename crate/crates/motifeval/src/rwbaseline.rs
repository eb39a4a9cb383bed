//! Random-walk benchmarks and the trivial stationarity-based solver.
//!
//! Benchmarks built by splicing classification instances into Gaussian
//! random walk are solvable without any notion of similarity: the first
//! difference of a random walk is stationary, so a sliding Dickey-Fuller
//! test on differenced windows separates walk from structured signal.
//! The solver here implements exactly that and is used to show such
//! benchmarks are too easy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::benchgen::InstanceDataset;
use crate::error::{Error, Result};
use crate::types::{MotifSet, MotifSetCollection, Segment, TimeSeries};

/// A univariate random-walk series with instances spliced in.
#[derive(Debug, Clone, PartialEq)]
pub struct RwBenchmarkSeries {
    pub series: TimeSeries,
    /// Ground truth: by default a single motif set holding every
    /// inserted instance; empty when nothing was inserted.
    pub inserted: MotifSetCollection,
    pub seed: u64,
}

/// Options for random-walk benchmark generation.
#[derive(Debug, Clone, PartialEq)]
pub struct RwOptions {
    /// Inclusive range for the number of inserted instances.
    pub n_insert_range: (usize, usize),
    /// Total series length; insertions replace walk stretches.
    pub rw_length: usize,
    /// Minimum number of walk samples between two insertions.
    pub min_gap: usize,
    /// Group ground truth into one motif set per class instead of a
    /// single set with all insertions.
    pub group_by_class: bool,
}

impl RwOptions {
    pub fn new(rw_length: usize) -> Self {
        Self {
            n_insert_range: (2, 8),
            rw_length,
            min_gap: 0,
            group_by_class: false,
        }
    }
}

fn z_normalized(values: &[f64]) -> Vec<f64> {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let sd = var.sqrt();
    if sd < 1e-12 {
        vec![0.0; values.len()]
    } else {
        values.iter().map(|v| (v - mean) / sd).collect()
    }
}

/// Generates a Gaussian random walk of `rw_length` samples with
/// `n_insert` instances from the pool spliced in at uniformly random,
/// non-overlapping positions.
///
/// Instances are z-normalized and offset to the walk level at the splice
/// point, and the walk after each insertion is re-leveled to continue
/// from the instance's final value, so splices introduce no jumps.
pub fn generate_rw_series(
    pool: &InstanceDataset,
    opts: &RwOptions,
    seed: u64,
) -> Result<RwBenchmarkSeries> {
    if pool.dims() != 1 {
        return Err(Error::InvalidParameter(
            "random-walk benchmarks are univariate; pool has multiple dimensions".into(),
        ));
    }
    let (lo, hi) = opts.n_insert_range;
    if lo > hi {
        return Err(Error::InvalidParameter(format!(
            "empty insertion range [{lo}, {hi}]"
        )));
    }
    if opts.rw_length == 0 {
        return Err(Error::InvalidParameter("rw_length must be positive".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_insert = rng.random_range(lo..=hi);

    // Uniform over all (class, instance) pairs, with replacement.
    let flat: Vec<(usize, usize)> = pool
        .classes()
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| (0..c.instances.len()).map(move |ii| (ci, ii)))
        .collect();
    let picks: Vec<(usize, usize)> =
        (0..n_insert).map(|_| flat[rng.random_range(0..flat.len())]).collect();
    let lengths: Vec<usize> = picks
        .iter()
        .map(|&(ci, ii)| pool.classes()[ci].instances[ii].len())
        .collect();

    let occupied: usize =
        lengths.iter().sum::<usize>() + opts.min_gap * n_insert.saturating_sub(1);
    if occupied > opts.rw_length {
        return Err(Error::InsufficientSpace {
            requested: n_insert,
            occupied,
            available: opts.rw_length,
        });
    }

    // Free walk samples distributed over the n_insert + 1 gaps by a
    // uniform composition (sorted uniform draws).
    let free = opts.rw_length - occupied;
    let mut cuts: Vec<usize> = (0..n_insert).map(|_| rng.random_range(0..=free)).collect();
    cuts.sort_unstable();
    let mut gaps = Vec::with_capacity(n_insert + 1);
    let mut prev = 0usize;
    for &cut in &cuts {
        gaps.push(cut - prev);
        prev = cut;
    }
    gaps.push(free - prev);

    let walk: Vec<f64> = {
        let mut level = 0.0f64;
        (0..opts.rw_length)
            .map(|_| {
                let step: f64 = StandardNormal.sample(&mut rng);
                level += step;
                level
            })
            .collect()
    };

    let mut values = Vec::with_capacity(opts.rw_length);
    let mut segments: Vec<(usize, Segment)> = Vec::with_capacity(n_insert);
    let mut walk_pos = 0usize;
    let mut shift = 0.0f64;
    for (i, &(ci, ii)) in picks.iter().enumerate() {
        let lead = gaps[i] + if i > 0 { opts.min_gap } else { 0 };
        for _ in 0..lead {
            values.push(walk[walk_pos] + shift);
            walk_pos += 1;
        }
        let level = values.last().copied().unwrap_or(0.0);
        let instance = z_normalized(pool.classes()[ci].instances[ii].values());
        let start = values.len();
        values.extend(instance.iter().map(|v| v + level));
        segments.push((ci, Segment::new(start, values.len() - 1)?));
        // re-level the remaining walk to continue from the instance end
        let consumed = instance.len();
        shift = values.last().copied().unwrap_or(0.0)
            - walk.get(walk_pos + consumed - 1).copied().unwrap_or(0.0);
        walk_pos += consumed;
    }
    while walk_pos < opts.rw_length {
        values.push(walk[walk_pos] + shift);
        walk_pos += 1;
    }
    debug_assert_eq!(values.len(), opts.rw_length);

    let inserted = if segments.is_empty() {
        MotifSetCollection::ground_truth(vec![])
    } else if opts.group_by_class {
        let mut by_class: Vec<(usize, Vec<Segment>)> = Vec::new();
        for &(ci, seg) in &segments {
            match by_class.iter_mut().find(|(c, _)| *c == ci) {
                Some((_, v)) => v.push(seg),
                None => by_class.push((ci, vec![seg])),
            }
        }
        MotifSetCollection::ground_truth(
            by_class
                .into_iter()
                .map(|(ci, motifs)| {
                    MotifSet::new(Some(pool.classes()[ci].label.clone()), motifs).unwrap()
                })
                .collect(),
        )
    } else {
        MotifSetCollection::ground_truth(vec![MotifSet::new(
            Some("inserted".to_string()),
            segments.iter().map(|&(_, s)| s).collect(),
        )
        .unwrap()])
    };

    Ok(RwBenchmarkSeries {
        series: TimeSeries::univariate(values)?,
        inserted,
        seed,
    })
}

/// Outcome of a Dickey-Fuller unit-root test.
///
/// H0 is a unit root (non-stationary); rejection means the input looks
/// stationary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DfTestResult {
    /// t-ratio of the lag coefficient in the levels regression.
    pub statistic: f64,
    pub reject_h0: bool,
    pub alpha: f64,
    pub critical_value: f64,
}

const DF_ALPHAS: [f64; 4] = [0.01, 0.025, 0.05, 0.10];

/// Critical values of the Dickey-Fuller t-distribution, constant case
/// (Fuller's tau_mu table), by sample size row and significance column.
const DF_SAMPLE_SIZES: [f64; 6] = [25.0, 50.0, 100.0, 250.0, 500.0, f64::INFINITY];
const DF_CRITICAL: [[f64; 4]; 6] = [
    [-3.75, -3.33, -3.00, -2.63],
    [-3.58, -3.22, -2.93, -2.60],
    [-3.51, -3.17, -2.89, -2.58],
    [-3.46, -3.14, -2.88, -2.57],
    [-3.44, -3.13, -2.87, -2.57],
    [-3.43, -3.12, -2.86, -2.57],
];

/// Critical value for sample size `n` at level `alpha`, interpolated
/// linearly in alpha and in 1/n between tabulated points.
fn df_critical_value(n: usize, alpha: f64) -> Result<f64> {
    if !(DF_ALPHAS[0]..=DF_ALPHAS[3]).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [{}, {}], got {alpha}",
            DF_ALPHAS[0], DF_ALPHAS[3]
        )));
    }
    let col_at = |row: &[f64; 4]| -> f64 {
        let hi = DF_ALPHAS.iter().position(|&a| alpha <= a).unwrap();
        if DF_ALPHAS[hi] == alpha {
            return row[hi];
        }
        let lo = hi - 1;
        let w = (alpha - DF_ALPHAS[lo]) / (DF_ALPHAS[hi] - DF_ALPHAS[lo]);
        row[lo] + w * (row[hi] - row[lo])
    };

    let n = n as f64;
    if n <= DF_SAMPLE_SIZES[0] {
        return Ok(col_at(&DF_CRITICAL[0]));
    }
    for k in 1..DF_SAMPLE_SIZES.len() {
        if n <= DF_SAMPLE_SIZES[k] {
            let lo = &DF_CRITICAL[k - 1];
            let hi = &DF_CRITICAL[k];
            // interpolate in 1/n; the last row is the asymptote at 1/n = 0
            let inv_lo = 1.0 / DF_SAMPLE_SIZES[k - 1];
            let inv_hi = if DF_SAMPLE_SIZES[k].is_infinite() { 0.0 } else { 1.0 / DF_SAMPLE_SIZES[k] };
            let w = (1.0 / n - inv_lo) / (inv_hi - inv_lo);
            return Ok(col_at(lo) + w * (col_at(hi) - col_at(lo)));
        }
    }
    unreachable!("sample sizes end at infinity");
}

/// Dickey-Fuller test with intercept and no trend term: regresses first
/// differences on lagged levels and returns the t-ratio of the lag
/// coefficient, rejecting H0 (unit root) when it falls below the
/// critical value at `alpha`.
pub fn dickey_fuller(values: &[f64], alpha: f64) -> Result<DfTestResult> {
    if values.len() < 10 {
        return Err(Error::InvalidParameter(format!(
            "Dickey-Fuller needs a window of at least 10 samples, got {}",
            values.len()
        )));
    }
    let critical_value = df_critical_value(values.len(), alpha)?;

    let n_obs = values.len() - 1;
    let x = &values[..n_obs];
    let dy: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();

    let mean_x = x.iter().sum::<f64>() / n_obs as f64;
    let mean_dy = dy.iter().sum::<f64>() / n_obs as f64;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (xv, yv) in x.iter().zip(&dy) {
        let dx = xv - mean_x;
        let dyv = yv - mean_dy;
        sxx += dx * dx;
        sxy += dx * dyv;
        syy += dyv * dyv;
    }
    if sxx <= 0.0 {
        return Err(Error::DegenerateWindow);
    }

    let gamma = sxy / sxx;
    let ssr = (syy - gamma * sxy).max(0.0);
    let dof = (n_obs - 2) as f64;
    let se = (ssr / dof / sxx).sqrt();

    // A perfect fit (e.g. a noiseless ramp) leaves zero residual
    // variance; the t-ratio then carries no information unless the lag
    // coefficient itself is nonzero.
    let statistic = if se > 0.0 {
        gamma / se
    } else if gamma == 0.0 {
        0.0
    } else {
        gamma.signum() * f64::INFINITY
    };

    Ok(DfTestResult {
        statistic,
        reject_h0: statistic < critical_value,
        alpha,
        critical_value,
    })
}

/// Options for the sliding-window random-walk solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwSolverOptions {
    pub window: usize,
    pub alpha: f64,
    /// Window start step; defaults to max(1, window / 4).
    pub stride: Option<usize>,
    /// Minimum length of an emitted motif; defaults to window / 2,
    /// suppressing slivers created by type-I errors.
    pub min_motif_len: Option<usize>,
}

impl RwSolverOptions {
    pub fn new(window: usize, alpha: f64) -> Self {
        Self { window, alpha, stride: None, min_motif_len: None }
    }
}

/// The trivial solver for random-walk benchmarks: slides a window,
/// differences it, and runs the Dickey-Fuller test. A sample is deemed
/// random walk only when every window covering it rejects H0; the
/// remaining samples form the discovered motifs, returned as a single
/// motif set.
pub fn rw_solver(series: &TimeSeries, opts: &RwSolverOptions) -> Result<MotifSetCollection> {
    if series.dims() != 1 {
        return Err(Error::InvalidParameter("rw_solver expects a univariate series".into()));
    }
    let n = series.len();
    let window = opts.window;
    // the differenced window feeds the test, which needs 10 samples
    if window < 11 {
        return Err(Error::InvalidParameter(format!(
            "window must be at least 11, got {window}"
        )));
    }
    if window > n {
        return Err(Error::InvalidParameter(format!(
            "window {window} exceeds series length {n}"
        )));
    }
    let stride = opts.stride.unwrap_or_else(|| (window / 4).max(1));
    let min_len = opts.min_motif_len.unwrap_or(window / 2).max(1);
    let values = series.values();

    let mut starts: Vec<usize> = (0..=n - window).step_by(stride).collect();
    if *starts.last().unwrap() != n - window {
        starts.push(n - window);
    }

    let mut non_rw = vec![false; n];
    for &start in &starts {
        let diffs: Vec<f64> = values[start..start + window]
            .windows(2)
            .map(|w| w[1] - w[0])
            .collect();
        let test = dickey_fuller(&diffs, opts.alpha)?;
        if !test.reject_h0 {
            for flag in &mut non_rw[start..start + window] {
                *flag = true;
            }
        }
    }

    let mut motifs = Vec::new();
    let mut run_start = None;
    for i in 0..=n {
        let inside = i < n && non_rw[i];
        match (run_start, inside) {
            (None, true) => run_start = Some(i),
            (Some(s), false) => {
                if i - s >= min_len {
                    motifs.push(Segment::new(s, i - 1)?);
                }
                run_start = None;
            }
            _ => {}
        }
    }

    if motifs.is_empty() {
        Ok(MotifSetCollection::discovered(vec![]))
    } else {
        Ok(MotifSetCollection::discovered(vec![MotifSet::new(
            Some("non-random".to_string()),
            motifs,
        )?]))
    }
}
