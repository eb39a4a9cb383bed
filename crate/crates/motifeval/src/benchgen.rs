//! Benchmark construction from labeled instance datasets.
//!
//! A benchmark series is a concatenation of classification instances:
//! instances of a repeated class form a ground-truth motif set, and a
//! single instance of a class that appears nowhere else in the series is
//! placed between any two consecutive motifs. This structure suppresses
//! off-target patterns that plain random concatenation would create.
//!
//! With c classes, g motif sets need g motif classes and sum(k_i) - 1
//! distinct filler classes, so g is bounded by g_max = floor((c+1)/3).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::types::{MotifSet, MotifSetCollection, Segment, TimeSeries};

/// One labeled class of a classification dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledClass {
    pub label: String,
    pub instances: Vec<TimeSeries>,
}

/// A labeled instance dataset: the raw material for benchmark series.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceDataset {
    name: String,
    dims: usize,
    classes: Vec<LabeledClass>,
}

impl InstanceDataset {
    pub fn new(name: impl Into<String>, dims: usize, classes: Vec<LabeledClass>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::InsufficientClasses { needed: 1, found: 0 });
        }
        for class in &classes {
            if class.instances.is_empty() {
                return Err(Error::InsufficientInstances {
                    class: class.label.clone(),
                    needed: 1,
                    found: 0,
                });
            }
            if let Some(bad) = class.instances.iter().find(|i| i.dims() != dims) {
                return Err(Error::InvalidSeries(format!(
                    "instance of class '{}' has {} dimensions, dataset declares {dims}",
                    class.label,
                    bad.dims()
                )));
            }
        }
        Ok(Self { name: name.into(), dims, classes })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[LabeledClass] {
        &self.classes
    }

    pub fn total_instances(&self) -> usize {
        self.classes.iter().map(|c| c.instances.len()).sum()
    }
}

/// Maximum number of ground-truth motif sets constructible from a
/// dataset with `c` classes: floor((c + 1) / 3).
pub fn g_max(c: usize) -> usize {
    (c + 1) / 3
}

/// Knobs for single-series generation. The forced fields override random
/// sampling and exist for tests and targeted reproduction.
#[derive(Debug, Clone, PartialEq)]
pub struct GenOptions {
    /// Upper bound on sampled motif-set cardinalities.
    pub cardinality_cap: usize,
    pub forced_g: Option<usize>,
    pub forced_cardinalities: Option<Vec<usize>>,
    /// Provenance split tag, e.g. "validation" or "test".
    pub split: String,
    /// Provenance series index.
    pub index: usize,
}

impl Default for GenOptions {
    fn default() -> Self {
        Self {
            cardinality_cap: 5,
            forced_g: None,
            forced_cardinalities: None,
            split: "adhoc".to_string(),
            index: 0,
        }
    }
}

/// Where a benchmark series came from, sufficient to regenerate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub dataset: String,
    pub split: String,
    pub seed: u64,
    pub index: usize,
}

/// One concatenated instance in a benchmark series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutEntry {
    pub class: String,
    /// Index into the class's instance list of the generating pool.
    pub instance: usize,
    pub segment: Segment,
    pub is_motif: bool,
}

/// A generated benchmark time series with its ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSeries {
    pub series: TimeSeries,
    /// One motif set per repeated class, labeled with the class label.
    pub ground_truth: MotifSetCollection,
    /// All concatenated instances in series order; motifs and fillers
    /// strictly alternate and tile the series exactly.
    pub layout: Vec<LayoutEntry>,
    pub provenance: Provenance,
}

impl BenchmarkSeries {
    pub fn filler_segments(&self) -> impl Iterator<Item = (&str, Segment)> {
        self.layout
            .iter()
            .filter(|e| !e.is_motif)
            .map(|e| (e.class.as_str(), e.segment))
    }
}

/// Derives an independent sub-seed from a master seed and a stream id,
/// so per-series generation is reproducible in isolation.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    fn splitmix64(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    splitmix64(master.wrapping_add(splitmix64(stream)))
}

fn shuffled_indices(count: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut indices: Vec<usize> = (0..count).collect();
    indices.shuffle(rng);
    indices
}

/// Generates one benchmark series from the pool, deterministically for a
/// given seed.
///
/// The number of motif sets g is sampled uniformly from [1, g_max], the
/// g motif classes uniformly without replacement, and cardinalities
/// start at 2 and grow by random increments while the filler budget
/// sum(k_i) - 1 <= c - g allows. Instances are drawn without replacement
/// within a series and the motif order is a uniform shuffle.
pub fn generate_series(
    pool: &InstanceDataset,
    seed: u64,
    opts: &GenOptions,
) -> Result<BenchmarkSeries> {
    let c = pool.num_classes();
    if c < 2 {
        return Err(Error::InsufficientClasses { needed: 2, found: c });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let bound = g_max(c);
    let g = match (&opts.forced_cardinalities, opts.forced_g) {
        (Some(k), _) => k.len(),
        (None, Some(g)) => g,
        (None, None) => rng.random_range(1..=bound),
    };
    if g == 0 || g > bound {
        return Err(Error::InvalidParameter(format!(
            "g = {g} outside [1, {bound}] for {c} classes"
        )));
    }

    // Motif classes, uniform without replacement.
    let class_order = shuffled_indices(c, &mut rng);
    let motif_classes: Vec<usize> = class_order[..g].to_vec();
    let filler_pool: Vec<usize> = class_order[g..].to_vec();

    for &ci in &motif_classes {
        let class = &pool.classes()[ci];
        if class.instances.len() < 2 {
            return Err(Error::InsufficientInstances {
                class: class.label.clone(),
                needed: 2,
                found: class.instances.len(),
            });
        }
    }

    let filler_budget = c - g;
    let cardinalities: Vec<usize> = match &opts.forced_cardinalities {
        Some(forced) => {
            if forced.iter().any(|&k| k < 2) {
                return Err(Error::InvalidParameter(
                    "every motif-set cardinality must be at least 2".into(),
                ));
            }
            let total: usize = forced.iter().sum();
            if total - 1 > filler_budget {
                return Err(Error::InvalidParameter(format!(
                    "cardinalities need {} filler classes but only {filler_budget} are available",
                    total - 1
                )));
            }
            for (&k, &ci) in forced.iter().zip(&motif_classes) {
                let class = &pool.classes()[ci];
                if class.instances.len() < k {
                    return Err(Error::InsufficientInstances {
                        class: class.label.clone(),
                        needed: k,
                        found: class.instances.len(),
                    });
                }
            }
            forced.clone()
        }
        None => {
            let mut k = vec![2usize; g];
            loop {
                let total: usize = k.iter().sum();
                let candidates: Vec<usize> = (0..g)
                    .filter(|&i| {
                        k[i] < opts.cardinality_cap
                            && k[i] < pool.classes()[motif_classes[i]].instances.len()
                            && total - 1 < filler_budget
                    })
                    .collect();
                if candidates.is_empty() || rng.random_bool(0.5) {
                    break;
                }
                k[candidates[rng.random_range(0..candidates.len())]] += 1;
            }
            k
        }
    };

    let total_motifs: usize = cardinalities.iter().sum();
    let filler_count = total_motifs - 1;

    // One instance per motif, without replacement within the series.
    let mut motif_instances: Vec<(usize, usize)> = Vec::with_capacity(total_motifs);
    for (&ci, &k) in motif_classes.iter().zip(&cardinalities) {
        let picks = shuffled_indices(pool.classes()[ci].instances.len(), &mut rng);
        motif_instances.extend(picks[..k].iter().map(|&ii| (ci, ii)));
    }
    motif_instances.shuffle(&mut rng);

    // One instance from each of filler_count distinct non-motif classes.
    let filler_instances: Vec<(usize, usize)> = filler_pool[..filler_count]
        .iter()
        .map(|&ci| {
            let ii = rng.random_range(0..pool.classes()[ci].instances.len());
            (ci, ii)
        })
        .collect();

    // Interleave: motif, filler, motif, ..., motif.
    let mut values = Vec::new();
    let mut layout = Vec::with_capacity(total_motifs + filler_count);
    let mut cursor = 0usize;
    let append = |(ci, ii): (usize, usize), is_motif: bool,
                  values: &mut Vec<f64>, cursor: &mut usize|
     -> LayoutEntry {
        let class = &pool.classes()[ci];
        let instance = &class.instances[ii];
        let start = *cursor;
        values.extend_from_slice(instance.values());
        *cursor += instance.len();
        LayoutEntry {
            class: class.label.clone(),
            instance: ii,
            segment: Segment::new(start, *cursor - 1).expect("non-empty instance"),
            is_motif,
        }
    };
    for (pos, &motif) in motif_instances.iter().enumerate() {
        layout.push(append(motif, true, &mut values, &mut cursor));
        if pos < filler_count {
            layout.push(append(filler_instances[pos], false, &mut values, &mut cursor));
        }
    }

    // Ground truth: one motif set per motif class, ordered by position.
    let gt_sets: Vec<MotifSet> = motif_classes
        .iter()
        .map(|&ci| {
            let label = pool.classes()[ci].label.clone();
            let motifs: Vec<Segment> = layout
                .iter()
                .filter(|e| e.is_motif && e.class == label)
                .map(|e| e.segment)
                .collect();
            MotifSet::new(Some(label), motifs).expect("cardinality >= 2")
        })
        .collect();

    Ok(BenchmarkSeries {
        series: TimeSeries::new(values, pool.dims())?,
        ground_truth: MotifSetCollection::ground_truth(gt_sets),
        layout,
        provenance: Provenance {
            dataset: pool.name().to_string(),
            split: opts.split.clone(),
            seed,
            index: opts.index,
        },
    })
}

/// Splits a dataset per class into disjoint validation and test pools
/// whose union restores the original instances.
pub fn split_dataset(
    pool: &InstanceDataset,
    validation_ratio: f64,
    seed: u64,
) -> Result<(InstanceDataset, InstanceDataset)> {
    if !validation_ratio.is_finite() || !(0.0..1.0).contains(&validation_ratio) || validation_ratio == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "validation ratio must lie in (0, 1), got {validation_ratio}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut val_classes = Vec::with_capacity(pool.num_classes());
    let mut test_classes = Vec::with_capacity(pool.num_classes());
    for class in pool.classes() {
        let n = class.instances.len();
        if n < 2 {
            return Err(Error::InsufficientInstances {
                class: class.label.clone(),
                needed: 2,
                found: n,
            });
        }
        let n_val = ((n as f64 * validation_ratio).round() as usize).clamp(1, n - 1);
        let mut order = shuffled_indices(n, &mut rng);
        let mut val_idx: Vec<usize> = order.drain(..n_val).collect();
        let mut test_idx = order;
        val_idx.sort_unstable();
        test_idx.sort_unstable();
        val_classes.push(LabeledClass {
            label: class.label.clone(),
            instances: val_idx.iter().map(|&i| class.instances[i].clone()).collect(),
        });
        test_classes.push(LabeledClass {
            label: class.label.clone(),
            instances: test_idx.iter().map(|&i| class.instances[i].clone()).collect(),
        });
    }
    Ok((
        InstanceDataset::new(pool.name(), pool.dims(), val_classes)?,
        InstanceDataset::new(pool.name(), pool.dims(), test_classes)?,
    ))
}

pub const DEFAULT_VALIDATION_SERIES: usize = 50;
pub const DEFAULT_TEST_SERIES: usize = 200;
pub const DEFAULT_SPLIT_RATIO: f64 = 0.25;

/// Options for whole-benchmark generation.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkOptions {
    pub split_ratio: f64,
    pub cardinality_cap: usize,
}

impl Default for BenchmarkOptions {
    fn default() -> Self {
        Self { split_ratio: DEFAULT_SPLIT_RATIO, cardinality_cap: 5 }
    }
}

const VALIDATION_STREAM: u64 = 1 << 32;
const TEST_STREAM: u64 = 2 << 32;

/// Generates a full benchmark: the instance pool is split once, then
/// `n_val` series are built from the validation pool and `n_test` from
/// the test pool, so no classification instance appears in both splits.
pub fn generate_benchmark(
    pool: &InstanceDataset,
    n_val: usize,
    n_test: usize,
    seed: u64,
    opts: &BenchmarkOptions,
) -> Result<(Vec<BenchmarkSeries>, Vec<BenchmarkSeries>)> {
    let (val_pool, test_pool) = split_dataset(pool, opts.split_ratio, derive_seed(seed, 0))?;
    let generate = |split_pool: &InstanceDataset, tag: &str, stream: u64, count: usize| {
        (0..count)
            .map(|i| {
                let gen_opts = GenOptions {
                    cardinality_cap: opts.cardinality_cap,
                    split: tag.to_string(),
                    index: i,
                    ..GenOptions::default()
                };
                generate_series(split_pool, derive_seed(seed, stream | i as u64), &gen_opts)
            })
            .collect::<Result<Vec<_>>>()
    };
    let validation = generate(&val_pool, "validation", VALIDATION_STREAM, n_val)?;
    let test = generate(&test_pool, "test", TEST_STREAM, n_test)?;
    Ok((validation, test))
}
