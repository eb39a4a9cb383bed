//! Precision, recall, and F1 from the matching matrix.
//!
//! True positives are diagonal entries of the matching matrix; false
//! negatives are the remaining ground-truth motifs; false positives are
//! the remaining motifs of matched discovered sets, plus, only when
//! configured, all motifs of unmatched (off-target) discovered sets.

use crate::error::{Error, Result};
use crate::matching::{build_matching_matrix, MatchingMatrix};
use crate::types::{Averaging, EvalConfig, MotifSetCollection};

/// Pooled true-positive, false-negative, and false-positive counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfusionCounts {
    pub true_positives: usize,
    pub false_negatives: usize,
    pub false_positives: usize,
}

/// Counts TP, FN, and FP from a matching matrix.
///
/// Unmatched discovered sets contribute false positives only when
/// `cfg.penalize_off_target` is set; matched sets always contribute
/// their unmatched motifs.
pub fn count_confusion(mm: &MatchingMatrix, cfg: &EvalConfig) -> ConfusionCounts {
    let g = mm.num_gt_sets();
    let d = mm.num_disc_sets();
    let m = mm.num_pairs();

    let true_positives: usize = (0..m).map(|k| mm.value(k, k)).sum();

    let total_gt: usize = (0..g).map(|r| mm.gt_cardinality(r)).sum();
    let false_negatives = total_gt - true_positives;

    let mut false_positives = 0usize;
    for col in 0..d {
        if col < m {
            false_positives += mm.disc_cardinality(col) - mm.value(col, col);
        } else if cfg.penalize_off_target {
            false_positives += mm.disc_cardinality(col);
        }
    }

    ConfusionCounts { true_positives, false_negatives, false_positives }
}

/// Micro-averaged precision, recall, and F1 from pooled counts.
///
/// F is 0 whenever TP is 0; P and R fall back to 0 when their
/// denominators are empty so all three stay defined.
pub fn micro_prf(tp: usize, fn_: usize, fp: usize) -> (f64, f64, f64) {
    let precision = if tp + fp == 0 { 0.0 } else { tp as f64 / (tp + fp) as f64 };
    let recall = if tp + fn_ == 0 { 0.0 } else { tp as f64 / (tp + fn_) as f64 };
    let f1 = if tp == 0 { 0.0 } else { 2.0 * precision * recall / (precision + recall) };
    (precision, recall, f1)
}

/// Per-set components of macro-averaged precision, recall, and F1.
#[derive(Debug, Clone, PartialEq)]
pub struct MacroAverages {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Recall per ground-truth set, in input order.
    pub recall_per_gt_set: Vec<f64>,
    /// Precision per discovered set, in input order; 0 for unmatched sets.
    pub precision_per_disc_set: Vec<f64>,
    /// F1 per matched set pair, in matrix slot order.
    pub f1_per_pair: Vec<f64>,
}

fn macro_detail(mm: &MatchingMatrix, cfg: &EvalConfig) -> MacroAverages {
    let g = mm.num_gt_sets();
    let d = mm.num_disc_sets();
    let m = mm.num_pairs();

    let mut recall_per_gt_set = vec![0.0; g];
    let mut slot_recall = vec![0.0; m];
    for row in 0..g {
        let tp = if row < m { mm.value(row, row) } else { 0 };
        let r = tp as f64 / mm.gt_cardinality(row) as f64;
        recall_per_gt_set[mm.gt_set_at(row)] = r;
        if row < m {
            slot_recall[row] = r;
        }
    }

    let mut precision_per_disc_set = vec![0.0; d];
    let mut slot_precision = vec![0.0; m];
    for col in 0..m {
        let p = mm.value(col, col) as f64 / mm.disc_cardinality(col) as f64;
        precision_per_disc_set[mm.disc_set_at(col)] = p;
        slot_precision[col] = p;
    }

    let f1_per_pair: Vec<f64> = (0..m)
        .map(|k| {
            if mm.value(k, k) == 0 {
                0.0
            } else {
                let (p, r) = (slot_precision[k], slot_recall[k]);
                2.0 * p * r / (p + r)
            }
        })
        .collect();

    let recall = if g == 0 { 0.0 } else { recall_per_gt_set.iter().sum::<f64>() / g as f64 };

    let precision_sum: f64 = slot_precision.iter().sum();
    let precision_denom = if cfg.penalize_off_target { d } else { m };
    let precision = if precision_denom == 0 { 0.0 } else { precision_sum / precision_denom as f64 };

    let f1_sum: f64 = f1_per_pair.iter().sum();
    // Unmatched sets contribute F = 0, so only the denominator varies:
    // over g when g >= d, over d or m (off-target penalty) when d > g.
    let f1_denom = if g >= d {
        g
    } else if cfg.penalize_off_target {
        d
    } else {
        m
    };
    let f1 = if f1_denom == 0 { 0.0 } else { f1_sum / f1_denom as f64 };

    MacroAverages {
        precision,
        recall,
        f1,
        recall_per_gt_set,
        precision_per_disc_set,
        f1_per_pair,
    }
}

/// Macro-averaged precision, recall, and F1.
///
/// Recall averages over all g ground-truth sets; precision averages the
/// matched pairs' values over d (penalizing off-target sets) or over m;
/// F1 averages with unmatched sets contributing 0, over g when g >= d
/// and over d or m when d > g.
pub fn macro_prf(mm: &MatchingMatrix, cfg: &EvalConfig) -> (f64, f64, f64) {
    let detail = macro_detail(mm, cfg);
    (detail.precision, detail.recall, detail.f1)
}

/// Full evaluation result, carrying the matching matrix and motif-level
/// matches for diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub config: EvalConfig,
    pub counts: ConfusionCounts,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Per-set breakdown, present when macro averaging was requested.
    pub macro_averages: Option<MacroAverages>,
    pub matching: MatchingMatrix,
}

/// Evaluates discovered motif sets against the ground truth: matching,
/// confusion counting, and averaging in one pipeline.
pub fn evaluate(
    gt: &MotifSetCollection,
    disc: &MotifSetCollection,
    cfg: &EvalConfig,
) -> Result<EvalReport> {
    if gt.is_empty() {
        return Err(Error::EmptyGroundTruth);
    }
    let matching = build_matching_matrix(gt, disc, cfg)?;
    let counts = count_confusion(&matching, cfg);

    let (precision, recall, f1, macro_averages) = match cfg.averaging {
        Averaging::Micro => {
            let (p, r, f) = micro_prf(
                counts.true_positives,
                counts.false_negatives,
                counts.false_positives,
            );
            (p, r, f, None)
        }
        Averaging::Macro => {
            let detail = macro_detail(&matching, cfg);
            (detail.precision, detail.recall, detail.f1, Some(detail))
        }
    };

    Ok(EvalReport {
        config: *cfg,
        counts,
        precision,
        recall,
        f1,
        macro_averages,
        matching,
    })
}
