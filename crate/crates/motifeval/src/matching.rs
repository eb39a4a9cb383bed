//! Motif-level matching, motif-set assignment, and the matching matrix.
//!
//! Matching proceeds in three steps: individual discovered motifs are
//! matched to ground-truth motifs by overlap rate, motif sets are then
//! matched optimally via linear sum assignment on the contingency table,
//! and the result is folded into an extended matching matrix whose last
//! column holds unmatched ground-truth motifs and last row unmatched
//! discovered motifs.

use crate::assignment;
use crate::error::Result;
use crate::types::{EvalConfig, MotifSetCollection, Segment};

/// Overlap rate of two inclusive intervals: intersection size over union
/// size. Symmetric; 1 iff equal, 0 iff disjoint.
pub fn overlap_rate(a: Segment, b: Segment) -> f64 {
    let (inter, union) = overlap_counts(a, b);
    inter as f64 / union as f64
}

/// Exact intersection and union sizes of two inclusive intervals. The
/// union counts |a| + |b| - |a ∩ b| positions.
pub fn overlap_counts(a: Segment, b: Segment) -> (usize, usize) {
    let inter = a.intersection_len(b);
    let union = a.len() + b.len() - inter;
    (inter, union)
}

const F64_MANTISSA_SCALE: f64 = 9007199254740992.0; // 2^53

/// Whether `inter / union > threshold`, decided in exact integer
/// arithmetic. Any f64 threshold in [0.5, 1] scales to an integer at
/// 2^53, so boundary overlap rates are never misclassified by rounding.
fn strictly_exceeds(inter: usize, union: usize, threshold: f64) -> bool {
    debug_assert!((0.5..=1.0).contains(&threshold));
    let scaled_threshold = (threshold * F64_MANTISSA_SCALE) as u128;
    ((inter as u128) << 53) > scaled_threshold * union as u128
}

/// Exact comparison of `a.0 / a.1` and `b.0 / b.1` as rationals.
fn compare_rates(a: (usize, usize), b: (usize, usize)) -> std::cmp::Ordering {
    (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128))
}

/// One matched (ground-truth motif, discovered motif) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotifMatch {
    /// (set index, motif index) into the ground-truth collection.
    pub gt_index: (usize, usize),
    /// (set index, motif index) into the discovered collection.
    pub disc_index: (usize, usize),
    pub gt_segment: Segment,
    pub disc_segment: Segment,
    pub overlap_rate: f64,
}

/// One ground-truth motif together with every discovered motif attaining
/// its maximal overlap rate above the threshold. Several candidates only
/// occur on exact rate ties.
#[derive(Debug, Clone)]
struct CandidateMatch {
    gt_index: (usize, usize),
    gt_segment: Segment,
    /// (intersection, union) of the maximal overlap, kept exact.
    overlap: (usize, usize),
    /// (set index, motif index, segment) of every best candidate.
    candidates: Vec<(usize, usize, Segment)>,
}

impl CandidateMatch {
    /// Spec tie-break: smallest (set index, motif start, motif index).
    fn resolve_default(&self) -> (usize, usize, Segment) {
        *self
            .candidates
            .iter()
            .min_by_key(|&&(si, mi, seg)| (si, seg.start(), mi))
            .expect("candidate lists are non-empty")
    }

    fn resolve_within_set(&self, set: usize) -> Option<(usize, usize, Segment)> {
        self.candidates
            .iter()
            .filter(|&&(si, _, _)| si == set)
            .min_by_key(|&&(_, mi, seg)| (seg.start(), mi))
            .copied()
    }

    fn to_match(&self, resolved: (usize, usize, Segment)) -> MotifMatch {
        MotifMatch {
            gt_index: self.gt_index,
            disc_index: (resolved.0, resolved.1),
            gt_segment: self.gt_segment,
            disc_segment: resolved.2,
            overlap_rate: self.overlap.0 as f64 / self.overlap.1 as f64,
        }
    }
}

/// For every ground-truth motif, all discovered motifs attaining its
/// maximal overlap rate, kept only when that rate exceeds the threshold.
fn max_or_candidates(
    gt: &MotifSetCollection,
    disc: &MotifSetCollection,
    cfg: &EvalConfig,
) -> Result<Vec<CandidateMatch>> {
    gt.require_disjoint()?;
    let threshold = cfg.or_threshold();

    let disc_segments: Vec<((usize, usize), Segment)> = disc
        .sets()
        .iter()
        .enumerate()
        .flat_map(|(si, set)| {
            set.motifs()
                .iter()
                .enumerate()
                .map(move |(mi, &seg)| ((si, mi), seg))
        })
        .collect();

    let mut matches = Vec::new();
    for (gi, gt_set) in gt.sets().iter().enumerate() {
        for (gj, &gt_seg) in gt_set.motifs().iter().enumerate() {
            let mut best: (usize, usize) = (0, 1);
            let mut candidates: Vec<(usize, usize, Segment)> = Vec::new();
            for &((si, mi), disc_seg) in &disc_segments {
                let counts = overlap_counts(gt_seg, disc_seg);
                if counts.0 == 0 {
                    continue;
                }
                match compare_rates(counts, best) {
                    std::cmp::Ordering::Greater => {
                        best = counts;
                        candidates.clear();
                        candidates.push((si, mi, disc_seg));
                    }
                    std::cmp::Ordering::Equal => candidates.push((si, mi, disc_seg)),
                    std::cmp::Ordering::Less => {}
                }
            }
            if !candidates.is_empty() && strictly_exceeds(best.0, best.1, threshold) {
                matches.push(CandidateMatch {
                    gt_index: (gi, gj),
                    gt_segment: gt_seg,
                    overlap: best,
                    candidates,
                });
            }
        }
    }
    Ok(matches)
}

/// Matches each ground-truth motif with the discovered motif of highest
/// overlap rate, keeping the pair only when the rate strictly exceeds
/// the configured threshold.
///
/// Because ground-truth segments are disjoint and the threshold is at
/// least 0.5, a discovered segment can exceed the threshold with at most
/// one ground-truth segment, so the result does not depend on processing
/// order and no discovered segment is claimed twice.
///
/// Ties between discovered candidates with equal overlap rate are broken
/// by smallest (set index, motif start, motif index).
pub fn match_motifs(
    gt: &MotifSetCollection,
    disc: &MotifSetCollection,
    cfg: &EvalConfig,
) -> Result<Vec<MotifMatch>> {
    Ok(max_or_candidates(gt, disc, cfg)?
        .iter()
        .map(|cm| cm.to_match(cm.resolve_default()))
        .collect())
}

/// Contingency table: cell (i, j) counts matches between ground-truth
/// set i and discovered set j.
pub fn build_contingency(
    gt: &MotifSetCollection,
    disc: &MotifSetCollection,
    matches: &[MotifMatch],
) -> Vec<Vec<usize>> {
    let mut table = vec![vec![0usize; disc.len()]; gt.len()];
    for m in matches {
        table[m.gt_index.0][m.disc_index.0] += 1;
    }
    table
}

/// Maximum-diagonal column assignment on a non-negative integer matrix.
///
/// Returns `min(rows, cols)` pairs `(row, column)` sorted by row, whose
/// cell sum is maximal over all injective assignments. Ties are broken
/// deterministically: rows are decided in order and each takes the
/// smallest column compatible with an optimal assignment, which yields
/// the lexicographically smallest column permutation.
pub fn optimal_set_assignment(table: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let profits: Vec<Vec<f64>> = table
        .iter()
        .map(|row| row.iter().map(|&c| c as f64).collect())
        .collect();
    let (_, pairs) = assignment::max_profit_canonical(&profits, |_, col| col);
    pairs
}

/// The matching matrix: the contingency table with matched pairs on the
/// diagonal, extended with a column of unmatched ground-truth motif
/// counts and a row of unmatched discovered motif counts.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchingMatrix {
    m_star: Vec<Vec<usize>>,
    gt_order: Vec<usize>,
    disc_order: Vec<usize>,
    gt_cardinalities: Vec<usize>,
    disc_cardinalities: Vec<usize>,
    matches: Vec<MotifMatch>,
}

impl MatchingMatrix {
    /// Number of ground-truth motif sets g.
    pub fn num_gt_sets(&self) -> usize {
        self.gt_order.len()
    }

    /// Number of discovered motif sets d.
    pub fn num_disc_sets(&self) -> usize {
        self.disc_order.len()
    }

    /// Number of matched set pairs, min(g, d).
    pub fn num_pairs(&self) -> usize {
        self.num_gt_sets().min(self.num_disc_sets())
    }

    /// Cell of the extended (g+1) x (d+1) matrix. The last column counts
    /// unmatched ground-truth motifs per row, the last row unmatched
    /// discovered motifs per column; the bottom-right cell is unused.
    pub fn value(&self, row: usize, col: usize) -> usize {
        self.m_star[row][col]
    }

    /// The extended matrix, rows of length d+1.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.m_star
    }

    /// Ground-truth set index shown in `row`. Rows keep input order when
    /// g <= d; when g > d the matched sets occupy the leading rows.
    pub fn gt_set_at(&self, row: usize) -> usize {
        self.gt_order[row]
    }

    /// Discovered set index shown in `col` (the column permutation π).
    pub fn disc_set_at(&self, col: usize) -> usize {
        self.disc_order[col]
    }

    /// Cardinality of the ground-truth set shown in `row`.
    pub fn gt_cardinality(&self, row: usize) -> usize {
        self.gt_cardinalities[self.gt_order[row]]
    }

    /// Cardinality of the discovered set shown in `col`.
    pub fn disc_cardinality(&self, col: usize) -> usize {
        self.disc_cardinalities[self.disc_order[col]]
    }

    /// Motif-level matches the matrix was built from.
    pub fn motif_matches(&self) -> &[MotifMatch] {
        &self.matches
    }
}

/// Runs the full matching pipeline and assembles the matching matrix.
///
/// The set assignment maximizes the number of matched segments on the
/// diagonal; a motif whose best overlap rate is tied across several sets
/// counts toward whichever of them the assignment pairs with its row.
/// Among equally optimal assignments, ties prefer for each row (in
/// order) the largest cell, then the smallest discovered-set
/// cardinality, then the smallest column profile, and only then the
/// smallest set index. Everything ahead of the index depends on set
/// contents alone, so precision and recall are invariant under
/// reordering of the discovered sets: index order only ever decides
/// between columns that are indistinguishable in every cell.
pub fn build_matching_matrix(
    gt: &MotifSetCollection,
    disc: &MotifSetCollection,
    cfg: &EvalConfig,
) -> Result<MatchingMatrix> {
    let candidates = max_or_candidates(gt, disc, cfg)?;
    let g = gt.len();
    let d = disc.len();
    let disc_cardinalities: Vec<usize> = disc.sets().iter().map(|s| s.len()).collect();
    let gt_cardinalities: Vec<usize> = gt.sets().iter().map(|s| s.len()).collect();

    // attainable[i][j]: how many of set i's motifs could count toward
    // column j, i.e. j holds one of their best-overlap candidates.
    let mut attainable = vec![vec![0usize; d]; g];
    for cm in &candidates {
        let mut sets: Vec<usize> = cm.candidates.iter().map(|&(si, _, _)| si).collect();
        sets.sort_unstable();
        sets.dedup();
        for si in sets {
            attainable[cm.gt_index.0][si] += 1;
        }
    }

    let pairs = if g == 0 || d == 0 {
        Vec::new()
    } else {
        let profits: Vec<Vec<f64>> = attainable
            .iter()
            .map(|row| row.iter().map(|&c| c as f64).collect())
            .collect();
        let column_profiles: Vec<Vec<usize>> = (0..d)
            .map(|col| (0..g).map(|row| attainable[row][col]).collect())
            .collect();
        let (_, pairs) = assignment::max_profit_canonical(&profits, |row, col| {
            (
                std::cmp::Reverse(attainable[row][col]),
                disc_cardinalities[col],
                &column_profiles[col],
                col,
            )
        });
        pairs
    };

    // Resolve each motif's candidates: toward the column its row is
    // paired with when possible, otherwise by the default tie-break.
    let paired_col: Vec<Option<usize>> = (0..g)
        .map(|row| pairs.iter().find(|&&(r, _)| r == row).map(|&(_, c)| c))
        .collect();
    let matches: Vec<MotifMatch> = candidates
        .iter()
        .map(|cm| {
            let resolved = paired_col[cm.gt_index.0]
                .and_then(|col| cm.resolve_within_set(col))
                .unwrap_or_else(|| cm.resolve_default());
            cm.to_match(resolved)
        })
        .collect();
    let table = build_contingency(gt, disc, &matches);

    let mut gt_order: Vec<usize> = pairs.iter().map(|&(i, _)| i).collect();
    let mut disc_order: Vec<usize> = pairs.iter().map(|&(_, j)| j).collect();
    let mut gt_rest: Vec<usize> = (0..g).filter(|i| !gt_order.contains(i)).collect();
    let mut disc_rest: Vec<usize> = (0..d).filter(|j| !disc_order.contains(j)).collect();
    gt_rest.sort_unstable();
    disc_rest.sort_unstable();
    gt_order.append(&mut gt_rest);
    disc_order.append(&mut disc_rest);

    let mut m_star = vec![vec![0usize; d + 1]; g + 1];
    for (r, &gi) in gt_order.iter().enumerate() {
        for (c, &dj) in disc_order.iter().enumerate() {
            m_star[r][c] = table[gi][dj];
        }
        let matched: usize = table[gi].iter().sum();
        m_star[r][d] = gt_cardinalities[gi] - matched;
    }
    for (c, &dj) in disc_order.iter().enumerate() {
        let matched: usize = (0..g).map(|gi| table[gi][dj]).sum();
        m_star[g][c] = disc_cardinalities[dj] - matched;
    }

    Ok(MatchingMatrix {
        m_star,
        gt_order,
        disc_order,
        gt_cardinalities,
        disc_cardinalities,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::types::{MotifSet, MotifSetCollection};
    use approx::assert_abs_diff_eq;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn seg(start: usize, end: usize) -> Segment {
        Segment::new(start, end).unwrap()
    }

    fn collection(kind: &str, sets: Vec<Vec<Segment>>) -> MotifSetCollection {
        let sets = sets
            .into_iter()
            .map(|m| MotifSet::unlabeled(m).unwrap())
            .collect();
        match kind {
            "gt" => MotifSetCollection::ground_truth(sets),
            _ => MotifSetCollection::discovered(sets),
        }
    }

    /// Overlap rate by explicit index enumeration, the test-side oracle.
    fn enumerated_or(a: Segment, b: Segment) -> f64 {
        let in_a = |i: usize| i >= a.start() && i <= a.end();
        let in_b = |i: usize| i >= b.start() && i <= b.end();
        let hi = a.end().max(b.end());
        let mut inter = 0usize;
        let mut union = 0usize;
        for i in 0..=hi {
            match (in_a(i), in_b(i)) {
                (true, true) => {
                    inter += 1;
                    union += 1;
                }
                (true, false) | (false, true) => union += 1,
                _ => {}
            }
        }
        inter as f64 / union as f64
    }

    #[test]
    fn overlap_rate_identity_disjoint_partial() {
        assert_eq!(overlap_rate(seg(1, 10), seg(1, 10)), 1.0);
        assert_eq!(overlap_rate(seg(1, 10), seg(20, 29)), 0.0);
        let partial = overlap_rate(seg(1, 10), seg(6, 15));
        assert_abs_diff_eq!(partial, 5.0 / 15.0, epsilon = 1e-15);
        assert_abs_diff_eq!(partial, enumerated_or(seg(1, 10), seg(6, 15)), epsilon = 1e-15);
    }

    #[test]
    fn overlap_rate_is_symmetric_on_random_segments() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let a = seg(rng.random_range(0..50), rng.random_range(50..100));
            let b = seg(rng.random_range(0..50), rng.random_range(50..100));
            assert_eq!(overlap_rate(a, b), overlap_rate(b, a));
            assert_abs_diff_eq!(overlap_rate(a, b), enumerated_or(a, b), epsilon = 1e-12);
        }
    }

    #[test]
    fn threshold_comparison_is_exact_at_boundaries() {
        // OR exactly 0.5 must not match the default threshold.
        assert!(!strictly_exceeds(1, 2, 0.5));
        assert!(!strictly_exceeds(500_000, 1_000_000, 0.5));
        assert!(strictly_exceeds(2, 3, 0.5));
        // 2/3 rounds down as an f64, so the exact rational 2/3 exceeds it
        assert!(strictly_exceeds(2, 3, 2.0 / 3.0));
        assert!(!strictly_exceeds(3, 4, 0.75));
        assert!(strictly_exceeds(4, 5, 0.75));
        // threshold 1.0 can never be strictly exceeded
        assert!(!strictly_exceeds(7, 7, 1.0));
    }

    #[test]
    fn match_motifs_basic_cases() {
        let cfg = EvalConfig::default();
        let gt = collection("gt", vec![vec![seg(1, 10)]]);

        let disc = collection("disc", vec![vec![seg(2, 11)]]);
        let matches = match_motifs(&gt, &disc, &cfg).unwrap();
        assert_eq!(matches.len(), 1);
        assert_abs_diff_eq!(matches[0].overlap_rate, 9.0 / 11.0, epsilon = 1e-15);

        let disc = collection("disc", vec![vec![seg(6, 15)]]);
        assert!(match_motifs(&gt, &disc, &cfg).unwrap().is_empty());

        let disc = MotifSetCollection::discovered(vec![]);
        assert!(match_motifs(&gt, &disc, &cfg).unwrap().is_empty());
    }

    #[test]
    fn match_motifs_rejects_overlapping_ground_truth() {
        let cfg = EvalConfig::default();
        let gt = collection("gt", vec![vec![seg(1, 10)], vec![seg(5, 14)]]);
        let disc = collection("disc", vec![vec![seg(1, 10)]]);
        assert!(matches!(
            match_motifs(&gt, &disc, &cfg),
            Err(Error::GroundTruthOverlap { .. })
        ));
    }

    #[test]
    fn contingency_counts_matches_per_set_pair() {
        let cfg = EvalConfig::default();
        let gt = collection("gt", vec![vec![seg(0, 9), seg(20, 29)], vec![seg(40, 49)]]);
        let disc = collection("disc", vec![vec![seg(1, 10), seg(21, 30)], vec![seg(41, 50)]]);
        let matches = match_motifs(&gt, &disc, &cfg).unwrap();
        let table = build_contingency(&gt, &disc, &matches);
        assert_eq!(table, vec![vec![2, 0], vec![0, 1]]);

        let no_matches = build_contingency(&gt, &disc, &[]);
        assert_eq!(no_matches, vec![vec![0, 0], vec![0, 0]]);

        let gt1 = collection("gt", vec![vec![seg(0, 9), seg(20, 29)]]);
        let disc2 = collection("disc", vec![vec![seg(1, 10)], vec![seg(21, 30)]]);
        let matches = match_motifs(&gt1, &disc2, &cfg).unwrap();
        assert_eq!(build_contingency(&gt1, &disc2, &matches), vec![vec![1, 1]]);
    }

    #[test]
    fn assignment_examples() {
        assert_eq!(optimal_set_assignment(&[vec![2, 0], vec![0, 1]]), vec![(0, 0), (1, 1)]);
        assert_eq!(optimal_set_assignment(&[vec![0, 5], vec![5, 0]]), vec![(0, 1), (1, 0)]);
        assert_eq!(optimal_set_assignment(&[vec![1, 9, 4]]), vec![(0, 1)]);
    }

    #[test]
    fn assignment_objective_matches_exhaustive_search() {
        fn exhaustive(table: &[Vec<usize>]) -> usize {
            fn recurse(table: &[Vec<usize>], row: usize, used: &mut Vec<bool>) -> usize {
                if row == table.len() {
                    return 0;
                }
                let mut best = recurse(table, row + 1, used);
                for j in 0..used.len() {
                    if !used[j] {
                        used[j] = true;
                        best = best.max(table[row][j] + recurse(table, row + 1, used));
                        used[j] = false;
                    }
                }
                best
            }
            recurse(table, 0, &mut vec![false; table[0].len()])
        }

        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let rows = rng.random_range(1..6);
            let cols = rng.random_range(1..6);
            let table: Vec<Vec<usize>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.random_range(0..9)).collect())
                .collect();
            let pairs = optimal_set_assignment(&table);
            let objective: usize = pairs.iter().map(|&(i, j)| table[i][j]).sum();
            assert_eq!(objective, exhaustive(&table));
            assert_eq!(pairs.len(), rows.min(cols));
        }
    }

    #[test]
    fn matching_matrix_perfect_reproduction() {
        let cfg = EvalConfig::default();
        let gt = collection("gt", vec![vec![seg(0, 9), seg(20, 29)], vec![seg(40, 49)]]);
        let disc = collection("disc", vec![vec![seg(0, 9), seg(20, 29)], vec![seg(40, 49)]]);
        let mm = build_matching_matrix(&gt, &disc, &cfg).unwrap();
        assert_eq!(mm.value(0, 0), 2);
        assert_eq!(mm.value(1, 1), 1);
        assert_eq!(mm.value(0, 2), 0);
        assert_eq!(mm.value(1, 2), 0);
        assert_eq!(mm.value(2, 0), 0);
        assert_eq!(mm.value(2, 1), 0);
    }

    #[test]
    fn matching_matrix_with_stray_discovered_motif() {
        let cfg = EvalConfig::default();
        let gt = collection("gt", vec![vec![seg(1, 10), seg(21, 30)], vec![seg(41, 50)]]);
        let disc = collection(
            "disc",
            vec![vec![seg(2, 11), seg(22, 31), seg(60, 69)], vec![seg(42, 51)]],
        );
        let mm = build_matching_matrix(&gt, &disc, &cfg).unwrap();
        assert_eq!(mm.disc_set_at(0), 0);
        assert_eq!(mm.disc_set_at(1), 1);
        assert_eq!(mm.value(0, 0), 2);
        assert_eq!(mm.value(0, 1), 0);
        assert_eq!(mm.value(1, 0), 0);
        assert_eq!(mm.value(1, 1), 1);
        // last column: per-row unmatched GT motifs
        assert_eq!(mm.value(0, 2), 0);
        assert_eq!(mm.value(1, 2), 0);
        // last row: per-column unmatched discovered motifs
        assert_eq!(mm.value(2, 0), 1);
        assert_eq!(mm.value(2, 1), 0);
    }

    #[test]
    fn matching_matrix_shape_rule() {
        let cfg = EvalConfig::default();
        let gt = collection("gt", vec![vec![seg(0, 9)]]);
        let disc = collection(
            "disc",
            vec![vec![seg(100, 109)], vec![seg(200, 209)], vec![seg(300, 309)]],
        );
        let mm = build_matching_matrix(&gt, &disc, &cfg).unwrap();
        assert_eq!(mm.cells().len(), 2);
        assert!(mm.cells().iter().all(|row| row.len() == 4));
    }

    /// Random disjoint ground truth: segments laid left to right with
    /// at least one free index between them, dealt to sets round-robin
    /// after shuffling.
    fn random_ground_truth(rng: &mut ChaCha8Rng, max_sets: usize) -> MotifSetCollection {
        let n_sets = rng.random_range(1..=max_sets);
        let n_segments = rng.random_range(n_sets..=n_sets * 3);
        let mut cursor = 0usize;
        let mut segments = Vec::new();
        for _ in 0..n_segments {
            let start = cursor + rng.random_range(1..6);
            let len = rng.random_range(3..12);
            segments.push(seg(start, start + len - 1));
            cursor = start + len;
        }
        segments.shuffle(rng);
        let mut sets = vec![Vec::new(); n_sets];
        for (i, s) in segments.into_iter().enumerate() {
            sets[i % n_sets].push(s);
        }
        collection("gt", sets)
    }

    fn random_discovered(rng: &mut ChaCha8Rng, span: usize) -> MotifSetCollection {
        let n_sets = rng.random_range(0..4);
        let sets = (0..n_sets)
            .map(|_| {
                let n = rng.random_range(1..5);
                (0..n)
                    .map(|_| {
                        let start = rng.random_range(0..span);
                        let len = rng.random_range(1..15);
                        seg(start, start + len - 1)
                    })
                    .collect()
            })
            .collect();
        collection("disc", sets)
    }

    #[test]
    fn lemma1_no_discovered_segment_exceeds_half_with_two_gt_segments() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..500 {
            let gt = random_ground_truth(&mut rng, 4);
            let disc = random_discovered(&mut rng, 120);
            for disc_set in disc.sets() {
                for &alpha in disc_set.motifs() {
                    let qualifying = gt
                        .sets()
                        .iter()
                        .flat_map(|s| s.motifs())
                        .filter(|&&beta| {
                            let (i, u) = overlap_counts(alpha, beta);
                            strictly_exceeds(i, u, 0.5)
                        })
                        .count();
                    assert!(qualifying <= 1);
                }
            }
        }
    }

    #[test]
    fn match_motifs_is_independent_of_gt_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let cfg = EvalConfig::default();
        for _ in 0..200 {
            let gt = random_ground_truth(&mut rng, 4);
            let disc = random_discovered(&mut rng, 120);
            let baseline: Vec<(Segment, Segment)> = match_motifs(&gt, &disc, &cfg)
                .unwrap()
                .iter()
                .map(|m| (m.gt_segment, m.disc_segment))
                .collect();

            let mut shuffled_sets: Vec<MotifSet> = gt.sets().to_vec();
            shuffled_sets.shuffle(&mut rng);
            let shuffled_sets: Vec<MotifSet> = shuffled_sets
                .into_iter()
                .map(|s| {
                    let mut motifs = s.motifs().to_vec();
                    motifs.shuffle(&mut rng);
                    MotifSet::unlabeled(motifs).unwrap()
                })
                .collect();
            let shuffled = MotifSetCollection::ground_truth(shuffled_sets);
            let mut reordered: Vec<(Segment, Segment)> = match_motifs(&shuffled, &disc, &cfg)
                .unwrap()
                .iter()
                .map(|m| (m.gt_segment, m.disc_segment))
                .collect();

            let mut expected = baseline;
            expected.sort();
            reordered.sort();
            assert_eq!(reordered, expected);
        }
    }

    #[test]
    fn raising_threshold_never_adds_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..200 {
            let gt = random_ground_truth(&mut rng, 3);
            let disc = random_discovered(&mut rng, 100);
            let mut previous = usize::MAX;
            for threshold in [0.5, 0.6, 0.75, 0.9, 1.0] {
                let cfg = EvalConfig::default().with_or_threshold(threshold).unwrap();
                let count = match_motifs(&gt, &disc, &cfg).unwrap().len();
                assert!(count <= previous);
                previous = count;
            }
        }
    }

    #[test]
    fn matrix_marginals_hold_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let cfg = EvalConfig::default();
        for _ in 0..300 {
            let gt = random_ground_truth(&mut rng, 4);
            let disc = random_discovered(&mut rng, 120);
            let mm = build_matching_matrix(&gt, &disc, &cfg).unwrap();
            let g = mm.num_gt_sets();
            let d = mm.num_disc_sets();
            for row in 0..g {
                let sum: usize = (0..=d).map(|c| mm.value(row, c)).sum();
                assert_eq!(sum, mm.gt_cardinality(row));
            }
            for col in 0..d {
                let sum: usize = (0..=g).map(|r| mm.value(r, col)).sum();
                assert_eq!(sum, mm.disc_cardinality(col));
            }
            // each match appears exactly once in the core cells
            let core: usize = (0..g)
                .map(|r| (0..d).map(|c| mm.value(r, c)).sum::<usize>())
                .sum();
            assert_eq!(core, mm.motif_matches().len());
        }
    }
}
