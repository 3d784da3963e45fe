use serde::Serialize;

use super::TriangleKind;

/// `ln(e^a + e^b)` without overflow; `-inf` is the log of zero.
#[inline]
pub fn log_sum_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a > b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// `ln T(n, k)` for `k = 0..=n`, with `-inf` for zero entries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogRow {
    pub kind: TriangleKind,
    pub n: usize,
    pub log_values: Vec<f64>,
}

impl LogRow {
    pub fn value(&self, k: usize) -> f64 {
        self.log_values.get(k).copied().unwrap_or(f64::NEG_INFINITY)
    }
}

/// One log-domain step of the recurrence: row `n` from row `n - 1`.
pub fn next_log_row(kind: TriangleKind, prev: &[f64], n: usize) -> Vec<f64> {
    debug_assert_eq!(prev.len(), n);
    (0..=n)
        .map(|k| {
            let (a, b) = kind.coeffs_unchecked(n, k);
            let left = if k > 0 && a != 0 {
                prev[k - 1] + (a as f64).ln()
            } else {
                f64::NEG_INFINITY
            };
            let right = if k < n && b != 0 {
                prev[k] + (b as f64).ln()
            } else {
                f64::NEG_INFINITY
            };
            log_sum_exp(left, right)
        })
        .collect()
}

pub fn log_row(kind: TriangleKind, n: usize) -> LogRow {
    let mut row = vec![0.0];
    for i in 1..=n {
        row = next_log_row(kind, &row, i);
    }
    LogRow {
        kind,
        n,
        log_values: row,
    }
}

/// Log-domain rows `0..=n_max`, kept for repeated transition lookups.
#[derive(Debug, Clone)]
pub struct LogTable {
    kind: TriangleKind,
    rows: Vec<Vec<f64>>,
}

impl LogTable {
    pub fn new(kind: TriangleKind, n_max: usize) -> Self {
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![0.0]);
        for n in 1..=n_max {
            let next = next_log_row(kind, &rows[n - 1], n);
            rows.push(next);
        }
        LogTable { kind, rows }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.rows[n]
    }

    /// `ln T(n, k)`, `-inf` for `k < 0`, `k > n` or zero entries.
    pub fn ln_value(&self, n: usize, k: isize) -> f64 {
        if k < 0 {
            return f64::NEG_INFINITY;
        }
        self.rows
            .get(n)
            .and_then(|r| r.get(k as usize))
            .copied()
            .unwrap_or(f64::NEG_INFINITY)
    }
}
