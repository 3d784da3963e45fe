use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::convergence::realized_start;
use crate::chains::Precision;
use crate::error::Result;
use crate::fields::phi_at;
use crate::triangle::{log_row, triangle_row, TriangleKind};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeRow {
    pub m: usize,
    pub ell: usize,
    /// λ(m, ℓ) after rounding ℓ.
    pub lambda: f64,
    pub p1: f64,
    pub phi: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeReport {
    pub kind: TriangleKind,
    pub lambda_requested: f64,
    pub precision: Precision,
    pub rows: Vec<SlopeRow>,
}

/// `p1(m, ℓ)` from row `m − 1` alone.
fn p1_at(kind: TriangleKind, m: usize, ell: usize, precision: Precision) -> f64 {
    let (a, b) = kind.coeffs_unchecked(m, ell);
    match precision {
        Precision::Exact => {
            let row = triangle_row(kind, m - 1);
            let up = &row[ell - 1] * a;
            let stay = &row[ell] * b;
            let total = &up + stay;
            BigRational::new(BigInt::from(up), BigInt::from(total))
                .to_f64()
                .unwrap_or(f64::NAN)
        }
        Precision::Log => {
            let row = log_row(kind, m - 1);
            let up = (a as f64).ln() + row.value(ell - 1);
            let stay = (b as f64).ln() + row.value(ell);
            // 1 / (1 + e^{stay - up})
            1.0 / (1.0 + (stay - up).exp())
        }
    }
}

/// Default evaluator: exact rows for Pascal, where `p1 = ℓ/m` makes the
/// error vanish identically, log-domain rows for the rest.
pub fn default_precision(kind: TriangleKind) -> Precision {
    match kind {
        TriangleKind::Pascal => Precision::Exact,
        _ => Precision::Log,
    }
}

/// `|p1(m, ℓ) − φ(λ(m, ℓ))|` for each `m`, with `ℓ = round(m/(1 + λ))`.
pub fn slope_convergence(kind: TriangleKind, lambda: f64, ms: &[usize]) -> Result<SlopeReport> {
    slope_convergence_with(kind, lambda, ms, default_precision(kind))
}

pub fn slope_convergence_with(
    kind: TriangleKind,
    lambda: f64,
    ms: &[usize],
    precision: Precision,
) -> Result<SlopeReport> {
    let rows = ms
        .iter()
        .map(|&m| {
            let (ell, realized) = realized_start(kind, m, lambda)?;
            let p1 = p1_at(kind, m, ell, precision);
            let phi = phi_at(kind, &realized)?;
            Ok(SlopeRow {
                m,
                ell,
                lambda: realized.value(),
                p1,
                phi,
                error: (p1 - phi).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SlopeReport {
        kind,
        lambda_requested: lambda,
        precision,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::reverse_transition_exact;

    #[test]
    fn pascal_error_is_zero() {
        let r = slope_convergence(TriangleKind::Pascal, 1.0, &[3, 10, 101, 999]).unwrap();
        assert!(r.rows.iter().all(|row| row.error == 0.0), "{r:?}");
        let r = slope_convergence(TriangleKind::Pascal, 0.37, &[10, 57, 400]).unwrap();
        assert!(r.rows.iter().all(|row| row.error == 0.0), "{r:?}");
    }

    #[test]
    fn log_and_exact_agree() {
        for kind in TriangleKind::ALL {
            for m in [5, 30, 120] {
                let a = slope_convergence_with(kind, 1.3, &[m], Precision::Exact).unwrap();
                let b = slope_convergence_with(kind, 1.3, &[m], Precision::Log).unwrap();
                assert!((a.rows[0].p1 - b.rows[0].p1).abs() < 1e-11, "{kind} {m}");
            }
        }
    }

    #[test]
    fn exact_p1_matches_transition() {
        let r =
            slope_convergence_with(TriangleKind::Stirling1, 2.0, &[12], Precision::Exact).unwrap();
        let t = reverse_transition_exact(TriangleKind::Stirling1, 12, 4).unwrap();
        assert_eq!(r.rows[0].ell, 4);
        assert_eq!(r.rows[0].p1, t.p1.to_f64().unwrap());
    }

    #[test]
    fn stirling2_improves_and_euler_is_close() {
        let r = slope_convergence(TriangleKind::Stirling2, 1.0, &[200, 2000]).unwrap();
        assert!(r.rows[1].error < r.rows[0].error);
        let e = slope_convergence(TriangleKind::Euler, 1.0, &[500]).unwrap();
        assert!((e.rows[0].p1 - 0.5).abs() < 0.01);
    }
}
