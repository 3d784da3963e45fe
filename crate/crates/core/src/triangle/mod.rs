//! The four Pascal-type triangles `T(n, k) = a(n,k) T(n-1,k-1) + b(n,k) T(n-1,k)`.
//!
//! Every kind uses the same row sweep. Entries outside a kind's support are
//! stored as explicit zeros (exact rows) or `-inf` (log rows), so the zero
//! convention of the recurrence is applied mechanically rather than by
//! per-kind special cases.

mod distribution;
mod exact;
mod log;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use distribution::{
    exact_normalizer, exact_row_distribution, normalizer, row_distribution, ExactRowDistribution,
    RowDistribution, RowParam,
};
pub use exact::{triangle_row, triangle_value, TriangleTable};
pub use log::{log_row, log_sum_exp, next_log_row, LogRow, LogTable};

/// Which triangle, and therefore which coefficient pair `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleKind {
    /// Binomial coefficients, `(a, b) = (1, 1)`.
    Pascal,
    /// Stirling numbers of the second kind, `(a, b) = (1, k)`.
    Stirling2,
    /// Unsigned Stirling numbers of the first kind, `(a, b) = (1, n - 1)`.
    Stirling1,
    /// Eulerian numbers, `(a, b) = (n - k, k + 1)`.
    Euler,
}

impl TriangleKind {
    pub const ALL: [TriangleKind; 4] = [
        TriangleKind::Pascal,
        TriangleKind::Stirling2,
        TriangleKind::Stirling1,
        TriangleKind::Euler,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TriangleKind::Pascal => "pascal",
            TriangleKind::Stirling2 => "stirling2",
            TriangleKind::Stirling1 => "stirling1",
            TriangleKind::Euler => "euler",
        }
    }

    /// `true` when the column generating function carries the `1/n!` weight
    /// (labelled structures: both Stirling kinds).
    pub fn has_factorial_weight(self) -> bool {
        matches!(self, TriangleKind::Stirling1 | TriangleKind::Stirling2)
    }

    /// Whether `T(n, k)` can be nonzero.
    pub fn in_support(self, n: usize, k: usize) -> bool {
        if n == 0 {
            return k == 0;
        }
        match self {
            TriangleKind::Pascal => k <= n,
            TriangleKind::Stirling2 | TriangleKind::Stirling1 => (1..=n).contains(&k),
            TriangleKind::Euler => k < n,
        }
    }

    /// Column range `[lo, hi]` of the support of row `n`.
    pub fn support(self, n: usize) -> (usize, usize) {
        if n == 0 {
            return (0, 0);
        }
        match self {
            TriangleKind::Pascal => (0, n),
            TriangleKind::Stirling2 | TriangleKind::Stirling1 => (1, n),
            TriangleKind::Euler => (0, n - 1),
        }
    }

    /// Coefficient pair without range checks; callers guarantee `(n, k)` in `S*`.
    pub(crate) fn coeffs_unchecked(self, n: usize, k: usize) -> (u64, u64) {
        let (n, k) = (n as u64, k as u64);
        match self {
            TriangleKind::Pascal => (1, 1),
            TriangleKind::Stirling2 => (1, k),
            TriangleKind::Stirling1 => (1, n - 1),
            TriangleKind::Euler => (n - k, k + 1),
        }
    }
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TriangleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pascal" => Ok(TriangleKind::Pascal),
            "stirling2" => Ok(TriangleKind::Stirling2),
            "stirling1" => Ok(TriangleKind::Stirling1),
            "euler" => Ok(TriangleKind::Euler),
            other => Err(Error::InvalidParameter(format!(
                "unknown triangle kind `{other}`"
            ))),
        }
    }
}

/// The coefficient pair `(a(n,k), b(n,k))` of the recurrence.
///
/// Defined on `S* = {0 <= k <= n} \ {(0,0)}`.
pub fn coeffs(kind: TriangleKind, n: usize, k: usize) -> Result<(u64, u64)> {
    if k > n || n == 0 {
        return Err(Error::OutOfRange { n, k });
    }
    Ok(kind.coeffs_unchecked(n, k))
}
