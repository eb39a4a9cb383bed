//! The two pre-existing comparison metrics: correctness and score.
//!
//! Correctness sums qualifying overlap rates per matched set pair and
//! normalizes by ground-truth cardinality; it does not penalize false
//! discoveries and can exceed 1 when several discovered motifs overlap
//! the same ground-truth motif. Score sums start-index differences of
//! paired motifs plus the lengths of unpaired motifs, minimized over all
//! two-level matchings; lower is better.

use crate::assignment;
use crate::error::{Error, Result};
use crate::matching::overlap_counts;
use crate::types::{MotifSet, MotifSetCollection};

/// Cost placed on forbidden assignment slots. Large enough that no valid
/// two-level matching ever reaches it: starts and lengths are bounded by
/// the series length.
const FORBIDDEN: f64 = 1e12;

/// Which denominator correctness is averaged over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrectnessVariant {
    /// Average over the m = min(g, d) matched set pairs.
    OverMatched,
    /// Average over all g ground-truth sets; unmatched sets contribute 0.
    OverGroundTruth,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrectnessResult {
    pub value: f64,
    pub variant: CorrectnessVariant,
    /// The maximizing (ground-truth set, discovered set) pairing.
    pub assignment: Vec<(usize, usize)>,
}

/// Sum of overlap rates above 0.5 between one ground-truth set and one
/// discovered set, normalized by the ground-truth cardinality. The 0.5
/// cutoff is fixed by the metric definition.
fn correctness_contribution(gt_set: &MotifSet, disc_set: &MotifSet) -> f64 {
    let mut sum = 0.0;
    for &beta in gt_set.motifs() {
        for &alpha in disc_set.motifs() {
            let (inter, union) = overlap_counts(beta, alpha);
            // strictly greater than 1/2, exact in integers
            if 2 * inter > union {
                sum += inter as f64 / union as f64;
            }
        }
    }
    sum / gt_set.len() as f64
}

/// Correctness metric, using the set pairing that maximizes the final
/// value.
pub fn correctness(
    gt: &MotifSetCollection,
    disc: &MotifSetCollection,
    variant: CorrectnessVariant,
) -> Result<CorrectnessResult> {
    if gt.is_empty() {
        return Err(Error::EmptyGroundTruth);
    }
    gt.require_disjoint()?;

    let g = gt.len();
    let d = disc.len();
    if d == 0 {
        return Ok(CorrectnessResult { value: 0.0, variant, assignment: Vec::new() });
    }

    let contributions: Vec<Vec<f64>> = gt
        .sets()
        .iter()
        .map(|gs| disc.sets().iter().map(|ds| correctness_contribution(gs, ds)).collect())
        .collect();
    let (total, assignment) = assignment::max_profit_canonical(&contributions, |_, col| col);

    let denominator = match variant {
        CorrectnessVariant::OverMatched => g.min(d),
        CorrectnessVariant::OverGroundTruth => g,
    };
    let value = if denominator == 0 { 0.0 } else { total / denominator as f64 };
    Ok(CorrectnessResult { value, variant, assignment })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreResult {
    pub value: f64,
    pub penalize_unmatched_disc: bool,
}

fn total_length(set: &MotifSet) -> f64 {
    set.motifs().iter().map(|s| s.len() as f64).sum()
}

/// Cheapest motif-level pairing between two sets: paired motifs cost the
/// absolute difference of their start indices, and a motif of either
/// side may stay unpaired at the cost of its own length.
fn inner_score(gt_set: &MotifSet, disc_set: &MotifSet) -> f64 {
    let k = gt_set.len();
    let l = disc_set.len();
    let n = k + l;
    let mut cost = vec![vec![0.0f64; n]; n];
    for (a, &beta) in gt_set.motifs().iter().enumerate() {
        for (b, &alpha) in disc_set.motifs().iter().enumerate() {
            cost[a][b] = (beta.start() as f64 - alpha.start() as f64).abs();
        }
        for slot in 0..k {
            cost[a][l + slot] = if slot == a { beta.len() as f64 } else { FORBIDDEN };
        }
    }
    for (b, &alpha) in disc_set.motifs().iter().enumerate() {
        for slot in 0..l {
            cost[k + slot][b] = if slot == b { alpha.len() as f64 } else { FORBIDDEN };
        }
    }
    let (total, _) = assignment::min_cost_square(&cost);
    total
}

/// Score metric: the minimum over all two-level matchings of start-index
/// differences plus unpaired motif lengths.
///
/// Unmatched ground-truth motif sets always add the lengths of their
/// motifs; unmatched discovered sets add theirs only when
/// `penalize_unmatched_disc` is set.
pub fn score(
    gt: &MotifSetCollection,
    disc: &MotifSetCollection,
    penalize_unmatched_disc: bool,
) -> Result<ScoreResult> {
    if gt.is_empty() {
        return Err(Error::EmptyGroundTruth);
    }
    gt.require_disjoint()?;

    let g = gt.len();
    let d = disc.len();
    let n = g + d;
    let mut cost = vec![vec![0.0f64; n]; n];
    for (i, gs) in gt.sets().iter().enumerate() {
        for (j, ds) in disc.sets().iter().enumerate() {
            cost[i][j] = inner_score(gs, ds);
        }
        for slot in 0..g {
            cost[i][d + slot] = if slot == i { total_length(gs) } else { FORBIDDEN };
        }
    }
    for (j, ds) in disc.sets().iter().enumerate() {
        let unmatched = if penalize_unmatched_disc { total_length(ds) } else { 0.0 };
        for slot in 0..d {
            cost[g + slot][j] = if slot == j { unmatched } else { FORBIDDEN };
        }
    }
    let (value, _) = assignment::min_cost_square(&cost);
    Ok(ScoreResult { value, penalize_unmatched_disc })
}
