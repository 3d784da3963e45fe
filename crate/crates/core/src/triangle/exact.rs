use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::TriangleKind;
use crate::error::{Error, Result};

/// Row `n` from row `n - 1` (which has `n` entries); returns `n + 1` entries.
pub(crate) fn next_row(kind: TriangleKind, prev: &[BigUint], n: usize) -> Vec<BigUint> {
    debug_assert_eq!(prev.len(), n);
    (0..=n)
        .map(|k| {
            let (a, b) = kind.coeffs_unchecked(n, k);
            let mut v = BigUint::zero();
            if k > 0 && a != 0 {
                v += &prev[k - 1] * a;
            }
            if k < n && b != 0 {
                v += &prev[k] * b;
            }
            v
        })
        .collect()
}

/// Row `n` of the triangle, `T(n, 0..=n)`, in one bottom-up sweep.
pub fn triangle_row(kind: TriangleKind, n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for i in 1..=n {
        row = next_row(kind, &row, i);
    }
    row
}

/// Exact `T(n, k)` for `0 <= k <= n`.
pub fn triangle_value(kind: TriangleKind, n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::OutOfRange { n, k });
    }
    let mut row = triangle_row(kind, n);
    Ok(row.swap_remove(k))
}

/// All rows `0..=n_max` of one triangle, exact.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleTable {
    kind: TriangleKind,
    rows: Vec<Vec<BigUint>>,
}

impl TriangleTable {
    pub fn new(kind: TriangleKind, n_max: usize) -> Self {
        let mut rows = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=n_max {
            let next = next_row(kind, &rows[n - 1], n);
            rows.push(next);
        }
        TriangleTable { kind, rows }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Option<&[BigUint]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    /// `T(n, k)`; `None` when `n > n_max` or `k > n`.
    pub fn get(&self, n: usize, k: usize) -> Option<&BigUint> {
        self.rows.get(n).and_then(|r| r.get(k))
    }

    /// `T(n, k)` extended by zero to negative `k` and `k > n`.
    pub(crate) fn get_or_zero(&self, n: usize, k: isize) -> BigUint {
        if k < 0 {
            return BigUint::zero();
        }
        self.get(n, k as usize).cloned().unwrap_or_default()
    }
}
