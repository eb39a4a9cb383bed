//! Linear sum assignment on small dense matrices.
//!
//! The solver is the O(n^3) shortest-augmenting-path formulation with row
//! and column potentials. Matrices here are motif-set contingency tables,
//! so n is the number of motif sets and stays small; the greedy
//! lexicographic refinement re-solves reduced problems, which is cheap at
//! that scale but makes tie-breaking fully deterministic.

/// Minimum-cost perfect matching on a square cost matrix.
///
/// Returns the total cost and, for each row, the assigned column.
/// Costs may be negative; all entries must be finite.
pub(crate) fn min_cost_square(cost: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let n = cost.len();
    debug_assert!(cost.iter().all(|row| row.len() == n));
    if n == 0 {
        return (0.0, Vec::new());
    }

    // 1-based internally; p[j] is the row matched to column j.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut row_to_col = vec![0usize; n];
    for j in 1..=n {
        row_to_col[p[j] - 1] = j - 1;
    }
    let total = (0..n).map(|i| cost[i][row_to_col[i]]).sum();
    (total, row_to_col)
}

/// Maximum total profit of an assignment of size `min(rows, cols)` on a
/// rectangular non-negative profit matrix.
pub(crate) fn max_profit_value(profits: &[Vec<f64>]) -> f64 {
    max_profit_pairs(profits).0
}

/// Maximum-profit assignment of size `min(rows, cols)`; the matrix is
/// padded square with zero profit, so pairs with zero profit are kept as
/// long as both sides are real. Pair order follows row order.
pub(crate) fn max_profit_pairs(profits: &[Vec<f64>]) -> (f64, Vec<(usize, usize)>) {
    let rows = profits.len();
    let cols = profits.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return (0.0, Vec::new());
    }
    let n = rows.max(cols);
    let cost: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i < rows && j < cols { -profits[i][j] } else { 0.0 })
                .collect()
        })
        .collect();
    let (_, row_to_col) = min_cost_square(&cost);
    let mut pairs: Vec<(usize, usize)> = row_to_col
        .iter()
        .enumerate()
        .filter(|&(i, &j)| i < rows && j < cols)
        .map(|(i, &j)| (i, j))
        .collect();
    pairs.sort_unstable();
    let total = pairs.iter().map(|&(i, j)| profits[i][j]).sum();
    (total, pairs)
}

/// Maximum-profit assignment with a deterministic, caller-defined
/// tie-break among equally optimal solutions.
///
/// Rows are decided in index order. A row is matched whenever some
/// optimal assignment matches it; its column is chosen as the minimum of
/// `tie_key(row, col)` over all columns that still permit an optimal
/// completion. Requires non-negative profits.
pub(crate) fn max_profit_canonical<K: Ord>(
    profits: &[Vec<f64>],
    tie_key: impl Fn(usize, usize) -> K,
) -> (f64, Vec<(usize, usize)>) {
    let rows = profits.len();
    let cols = profits.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return (0.0, Vec::new());
    }
    debug_assert!(profits.iter().flatten().all(|&p| p >= 0.0));

    let total = max_profit_value(profits);
    let mut col_free = vec![true; cols];
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(rows.min(cols));
    let mut fixed_value = 0.0f64;

    let completion = |row_pool: &[usize], col_free: &[bool]| -> f64 {
        let free_cols: Vec<usize> = (0..cols).filter(|&j| col_free[j]).collect();
        if row_pool.is_empty() || free_cols.is_empty() {
            return 0.0;
        }
        let sub: Vec<Vec<f64>> = row_pool
            .iter()
            .map(|&i| free_cols.iter().map(|&j| profits[i][j]).collect())
            .collect();
        max_profit_value(&sub)
    };

    for row in 0..rows {
        let mut candidates: Vec<(K, usize)> = (0..cols)
            .filter(|&j| col_free[j])
            .map(|j| (tie_key(row, j), j))
            .collect();
        candidates.sort_by(|a, b| a.0.cmp(&b.0));

        let remaining: Vec<usize> = (row + 1..rows).collect();
        let mut chosen = None;
        for (_, col) in candidates {
            col_free[col] = false;
            let reachable = fixed_value + profits[row][col] + completion(&remaining, &col_free);
            col_free[col] = true;
            if reachable == total {
                chosen = Some(col);
                break;
            }
        }
        if let Some(col) = chosen {
            col_free[col] = false;
            fixed_value += profits[row][col];
            pairs.push((row, col));
        }
    }
    (total, pairs)
}
