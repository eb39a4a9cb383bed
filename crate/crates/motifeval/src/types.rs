//! Domain types shared by all evaluation and generation modules.
//!
//! A time series is a sequence of `n` samples with `dims` real components
//! each. Motifs are inclusive integer index intervals on the time axis;
//! all metrics in this crate are purely positional, so segments never
//! reference series values. Indices are 0-based and inclusive throughout.

use crate::error::{Error, Result};

/// A time series of `n` samples, each with `dims` real components.
///
/// Values are stored row-major (sample-by-sample). `dims == 1` for
/// univariate series.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    dims: usize,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>, dims: usize) -> Result<Self> {
        if dims == 0 {
            return Err(Error::InvalidSeries("dimension count must be >= 1".into()));
        }
        if values.is_empty() {
            return Err(Error::InvalidSeries("series must have at least one sample".into()));
        }
        if values.len() % dims != 0 {
            return Err(Error::InvalidSeries(format!(
                "value count {} is not a multiple of dimension count {dims}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSeries(format!("non-finite component {bad}")));
        }
        Ok(Self { values, dims })
    }

    pub fn univariate(values: Vec<f64>) -> Result<Self> {
        Self::new(values, 1)
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.values.len() / self.dims
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn sample(&self, i: usize) -> &[f64] {
        &self.values[i * self.dims..(i + 1) * self.dims]
    }

    /// Row-major backing storage.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Samples of `segment` as a row-major slice.
    pub fn slice(&self, segment: Segment) -> &[f64] {
        &self.values[segment.start() * self.dims..(segment.end() + 1) * self.dims]
    }
}

/// An inclusive integer interval `[start:end]` on a series' time axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    start: usize,
    end: usize,
}

impl Segment {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start > end {
            return Err(Error::InvalidSegment { start, end });
        }
        Ok(Self { start, end })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    /// Number of indices covered, `end - start + 1`.
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    /// Size of the positional intersection with `other`.
    pub fn intersection_len(&self, other: Segment) -> usize {
        let lo = self.start.max(other.start);
        let hi = self.end.min(other.end);
        if lo > hi {
            0
        } else {
            hi - lo + 1
        }
    }

    pub fn overlaps(&self, other: Segment) -> bool {
        self.intersection_len(other) > 0
    }
}

impl std::fmt::Display for Segment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}:{}]", self.start, self.end)
    }
}

/// The occurrences of one pattern: a non-empty list of segments.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifSet {
    label: Option<String>,
    motifs: Vec<Segment>,
}

impl MotifSet {
    pub fn new(label: Option<String>, motifs: Vec<Segment>) -> Result<Self> {
        if motifs.is_empty() {
            return Err(Error::EmptyMotifSet);
        }
        Ok(Self { label, motifs })
    }

    pub fn unlabeled(motifs: Vec<Segment>) -> Result<Self> {
        Self::new(None, motifs)
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn motifs(&self) -> &[Segment] {
        &self.motifs
    }

    /// Cardinality of the set.
    pub fn len(&self) -> usize {
        self.motifs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motifs.is_empty()
    }
}

/// Whether a collection plays the ground-truth or the discovered role.
///
/// Ground-truth segments must be pairwise disjoint across all sets;
/// discovered collections carry no such requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollectionKind {
    GroundTruth,
    Discovered,
}

/// An ordered list of motif sets, either ground truth or discovered.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifSetCollection {
    kind: CollectionKind,
    sets: Vec<MotifSet>,
}

/// One pair of ground-truth segments that share at least one index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverlapViolation {
    /// (set index, motif index) of the first segment.
    pub first: (usize, usize),
    /// (set index, motif index) of the second segment.
    pub second: (usize, usize),
    pub first_segment: Segment,
    pub second_segment: Segment,
}

impl std::fmt::Display for OverlapViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "set {} motif {} {} overlaps set {} motif {} {}",
            self.first.0,
            self.first.1,
            self.first_segment,
            self.second.0,
            self.second.1,
            self.second_segment
        )
    }
}

impl MotifSetCollection {
    /// Constructing a ground-truth collection does not check disjointness;
    /// call [`MotifSetCollection::validate_ground_truth`] to obtain a
    /// diagnostic report for possibly malformed third-party data.
    pub fn ground_truth(sets: Vec<MotifSet>) -> Self {
        Self { kind: CollectionKind::GroundTruth, sets }
    }

    pub fn discovered(sets: Vec<MotifSet>) -> Self {
        Self { kind: CollectionKind::Discovered, sets }
    }

    pub fn kind(&self) -> CollectionKind {
        self.kind
    }

    pub fn sets(&self) -> &[MotifSet] {
        &self.sets
    }

    /// Number of motif sets.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Total number of motifs across all sets.
    pub fn total_motifs(&self) -> usize {
        self.sets.iter().map(MotifSet::len).sum()
    }

    /// Checks that every pair of segments across all sets is disjoint.
    ///
    /// Violations are data, not failures: the full list of offending
    /// pairs is returned so malformed files can be diagnosed.
    pub fn validate_ground_truth(&self) -> Vec<OverlapViolation> {
        let mut indexed: Vec<((usize, usize), Segment)> = Vec::with_capacity(self.total_motifs());
        for (si, set) in self.sets.iter().enumerate() {
            for (mi, &seg) in set.motifs().iter().enumerate() {
                indexed.push(((si, mi), seg));
            }
        }
        // Sweep over start-sorted segments; only neighbors can overlap.
        indexed.sort_by_key(|&(_, seg)| (seg.start(), seg.end()));
        let mut violations = Vec::new();
        for (i, &(id_a, seg_a)) in indexed.iter().enumerate() {
            for &(id_b, seg_b) in &indexed[i + 1..] {
                if seg_b.start() > seg_a.end() {
                    break;
                }
                let (first, second) = if id_a <= id_b { (id_a, id_b) } else { (id_b, id_a) };
                violations.push(OverlapViolation {
                    first,
                    second,
                    first_segment: if id_a <= id_b { seg_a } else { seg_b },
                    second_segment: if id_a <= id_b { seg_b } else { seg_a },
                });
            }
        }
        violations.sort_by_key(|v| (v.first, v.second));
        violations
    }

    /// Errors with [`Error::GroundTruthOverlap`] unless all segments are
    /// pairwise disjoint.
    pub fn require_disjoint(&self) -> Result<()> {
        let violations = self.validate_ground_truth();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::GroundTruthOverlap { violations })
        }
    }
}

/// Micro- or macro-averaging of precision, recall, and F1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Averaging {
    #[default]
    Micro,
    Macro,
}

/// Evaluation configuration shared by the matching and scoring steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    or_threshold: f64,
    pub penalize_off_target: bool,
    pub averaging: Averaging,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            or_threshold: 0.5,
            penalize_off_target: false,
            averaging: Averaging::Micro,
        }
    }
}

impl EvalConfig {
    /// Overlap-rate comparisons are strict (`OR > or_threshold`), so 0.5 is
    /// the loosest threshold for which a discovered segment can match at
    /// most one ground-truth segment.
    pub fn new(or_threshold: f64, penalize_off_target: bool, averaging: Averaging) -> Result<Self> {
        if !or_threshold.is_finite() || !(0.5..=1.0).contains(&or_threshold) {
            return Err(Error::InvalidConfig(format!(
                "or_threshold must lie in [0.5, 1], got {or_threshold}"
            )));
        }
        Ok(Self { or_threshold, penalize_off_target, averaging })
    }

    pub fn with_or_threshold(mut self, or_threshold: f64) -> Result<Self> {
        if !or_threshold.is_finite() || !(0.5..=1.0).contains(&or_threshold) {
            return Err(Error::InvalidConfig(format!(
                "or_threshold must lie in [0.5, 1], got {or_threshold}"
            )));
        }
        self.or_threshold = or_threshold;
        Ok(self)
    }

    pub fn or_threshold(&self) -> f64 {
        self.or_threshold
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(start: usize, end: usize) -> Segment {
        Segment::new(start, end).unwrap()
    }

    #[test]
    fn segment_length_is_inclusive() {
        assert_eq!(seg(1, 10).len(), 10);
        assert_eq!(seg(5, 5).len(), 1);
    }

    #[test]
    fn segment_rejects_reversed_bounds() {
        assert!(matches!(Segment::new(3, 2), Err(Error::InvalidSegment { .. })));
    }

    #[test]
    fn series_rejects_bad_shapes() {
        assert!(TimeSeries::new(vec![], 1).is_err());
        assert!(TimeSeries::new(vec![1.0, 2.0, 3.0], 2).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::NAN], 1).is_err());
        assert!(TimeSeries::new(vec![1.0, 2.0], 0).is_err());
        let ts = TimeSeries::new(vec![1.0, 2.0, 3.0, 4.0], 2).unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts.sample(1), &[3.0, 4.0]);
    }

    #[test]
    fn motif_set_must_be_nonempty() {
        assert!(matches!(MotifSet::unlabeled(vec![]), Err(Error::EmptyMotifSet)));
    }

    #[test]
    fn disjoint_ground_truth_is_ok() {
        let gt = MotifSetCollection::ground_truth(vec![
            MotifSet::unlabeled(vec![seg(1, 10)]).unwrap(),
            MotifSet::unlabeled(vec![seg(21, 30)]).unwrap(),
        ]);
        assert!(gt.validate_ground_truth().is_empty());
        assert!(gt.require_disjoint().is_ok());
    }

    #[test]
    fn touching_inclusive_endpoints_violate() {
        let gt = MotifSetCollection::ground_truth(vec![
            MotifSet::unlabeled(vec![seg(1, 10)]).unwrap(),
            MotifSet::unlabeled(vec![seg(10, 20)]).unwrap(),
        ]);
        let violations = gt.validate_ground_truth();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].first, (0, 0));
        assert_eq!(violations[0].second, (1, 0));
    }

    #[test]
    fn nesting_within_one_set_violates() {
        let gt = MotifSetCollection::ground_truth(vec![MotifSet::unlabeled(vec![
            seg(1, 10),
            seg(5, 8),
        ])
        .unwrap()]);
        assert_eq!(gt.validate_ground_truth().len(), 1);
        assert!(matches!(
            gt.require_disjoint(),
            Err(Error::GroundTruthOverlap { .. })
        ));
    }

    #[test]
    fn validation_matches_brute_force_on_random_collections() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n_sets = rng.random_range(1..5);
            let sets: Vec<MotifSet> = (0..n_sets)
                .map(|_| {
                    let n_motifs = rng.random_range(1..5);
                    let motifs = (0..n_motifs)
                        .map(|_| {
                            let start = rng.random_range(0..60);
                            let len = rng.random_range(1..12);
                            seg(start, start + len - 1)
                        })
                        .collect();
                    MotifSet::unlabeled(motifs).unwrap()
                })
                .collect();
            let collection = MotifSetCollection::ground_truth(sets);

            let mut brute = 0usize;
            let flat: Vec<Segment> = collection
                .sets()
                .iter()
                .flat_map(|s| s.motifs().iter().copied())
                .collect();
            for i in 0..flat.len() {
                for j in i + 1..flat.len() {
                    if flat[i].overlaps(flat[j]) {
                        brute += 1;
                    }
                }
            }
            assert_eq!(collection.validate_ground_truth().len(), brute);
        }
    }

    #[test]
    fn config_threshold_bounds() {
        assert!(EvalConfig::new(0.5, false, Averaging::Micro).is_ok());
        assert!(EvalConfig::new(1.0, false, Averaging::Micro).is_ok());
        assert!(EvalConfig::new(0.49, false, Averaging::Micro).is_err());
        assert!(EvalConfig::new(1.01, false, Averaging::Micro).is_err());
        assert!(EvalConfig::new(f64::NAN, false, Averaging::Micro).is_err());
    }
}
