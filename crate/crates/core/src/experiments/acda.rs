use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::chains::{ExactTransitions, Precision, ReversedChain};
use crate::error::{Error, Result};
use crate::fields::{zeta, ZetaSolution};
use crate::triangle::TriangleKind;

/// Largest `n` for which [`acda_probability`] works in exact rationals.
pub const ACDA_EXACT_MAX_N: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct AcdaProbability {
    pub k: usize,
    pub n: usize,
    /// Exact value when `n <= ACDA_EXACT_MAX_N`.
    pub exact: Option<BigRational>,
    pub value: f64,
}

fn validate(k: usize, n: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "alphabet size k must be at least 2, got {k}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "number of states n must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Probability, under the conditioned coupon collector from `(kn + 1, n)`,
/// that the completion curve satisfies `k X_j >= j` for every `j <= kn`.
///
/// Forward DP over `(j, x)`: `mass(j, x)` is the probability, for the chain
/// started at `(j, x)`, that its path down to the origin stays admissible.
/// Steps carry the reversed-chain weights `p1`/`p0` of the target state.
pub fn acda_probability(k: usize, n: usize) -> Result<AcdaProbability> {
    validate(k, n)?;
    if n <= ACDA_EXACT_MAX_N {
        let exact = acda_exact(k, n);
        let value = exact.to_f64().unwrap_or(f64::NAN);
        Ok(AcdaProbability {
            k,
            n,
            exact: Some(exact),
            value,
        })
    } else {
        Ok(AcdaProbability {
            k,
            n,
            exact: None,
            value: acda_float(k, n)?,
        })
    }
}

fn admissible(k: usize, n: usize, j: usize, x: usize) -> bool {
    j > k * n || k * x >= j
}

fn acda_exact(k: usize, n: usize) -> BigRational {
    let m = k * n + 1;
    let kind = TriangleKind::Stirling2;
    let transitions = ExactTransitions::new(kind, m);
    let mut mass = vec![BigRational::zero(); n + 1];
    mass[0] = BigRational::from_integer(1.into());
    for j in 1..=m {
        let lo = n.saturating_sub(m - j);
        let hi = j.min(n);
        let mut next = vec![BigRational::zero(); n + 1];
        for (x, slot) in next.iter_mut().enumerate().take(hi + 1).skip(lo) {
            if !kind.in_support(j, x) || !admissible(k, n, j, x) {
                continue;
            }
            let pair = transitions.pair(j, x).expect("state in support");
            let mut v = &mass[x] * &pair.p0;
            if x > 0 {
                v += &mass[x - 1] * &pair.p1;
            }
            *slot = v;
        }
        mass = next;
    }
    mass.swap_remove(n)
}

fn acda_float(k: usize, n: usize) -> Result<f64> {
    let m = k * n + 1;
    let kind = TriangleKind::Stirling2;
    let chain = ReversedChain::with_precision(kind, m, n, Precision::Log)?;
    let mut mass = vec![0.0; n + 1];
    mass[0] = 1.0;
    for j in 1..=m {
        let lo = n.saturating_sub(m - j);
        let hi = j.min(n);
        let mut next = vec![0.0; n + 1];
        for (x, slot) in next.iter_mut().enumerate().take(hi + 1).skip(lo) {
            if !kind.in_support(j, x) || !admissible(k, n, j, x) {
                continue;
            }
            let p1 = chain.p1(j, x);
            let mut v = mass[x] * (1.0 - p1);
            if x > 0 {
                v += mass[x - 1] * p1;
            }
            *slot = v;
        }
        mass = next;
    }
    Ok(mass[n])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KorsunovConstant {
    pub k: usize,
    /// ζ₂(k − 1).
    pub zeta: ZetaSolution,
    /// `c_k = 1 − k e^{−ζ₂(k−1)}`.
    pub c_k: f64,
    /// `1 − c_k`, the probability of crossing the line `y = x/k`.
    pub crossing_probability: f64,
}

pub fn korsunov_constant(k: usize) -> Result<KorsunovConstant> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "k must be at least 2, got {k}"
        )));
    }
    let zeta = zeta(TriangleKind::Stirling2, (k - 1) as f64)?;
    let crossing = k as f64 * zeta.phi();
    Ok(KorsunovConstant {
        k,
        zeta,
        c_k: 1.0 - crossing,
        crossing_probability: crossing,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AcdaReport {
    pub k: usize,
    pub n: usize,
    pub probability: f64,
    /// `"p/q"` when computed exactly.
    pub exact: Option<String>,
    pub c_k: f64,
    pub gap: f64,
}

pub fn acda_report(k: usize, n: usize) -> Result<AcdaReport> {
    let p = acda_probability(k, n)?;
    let c = korsunov_constant(k)?;
    Ok(AcdaReport {
        k,
        n,
        probability: p.value,
        exact: p.exact.map(|q| format!("{}/{}", q.numer(), q.denom())),
        c_k: c.c_k,
        gap: (p.value - c.c_k).abs(),
    })
}
