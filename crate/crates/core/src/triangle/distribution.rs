use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{log_row, triangle_row, TriangleKind};
use crate::error::{Error, Result};

/// Parameter of the growth process attached to a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "name", content = "value", rename_all = "lowercase")]
pub enum RowParam {
    /// Success probability `p` of the Bernoulli walk (Pascal).
    Probability(f64),
    /// Number `N` of distinct coupons (Stirling2).
    Coupons(u64),
    /// Concentration `theta` of the Chinese restaurant process (Stirling1).
    Theta(f64),
    /// Euler rows carry no parameter.
    None,
}

impl RowParam {
    /// Checks that the parameter matches `kind` and lies in the open range
    /// used by the row distributions.
    pub fn validate(self, kind: TriangleKind) -> Result<()> {
        match (kind, self) {
            (TriangleKind::Pascal, RowParam::Probability(p)) if p > 0.0 && p < 1.0 => Ok(()),
            (TriangleKind::Stirling2, RowParam::Coupons(n)) if n >= 1 => Ok(()),
            (TriangleKind::Stirling1, RowParam::Theta(t)) if t > 0.0 && t.is_finite() => Ok(()),
            (TriangleKind::Euler, _) => Ok(()),
            (kind, param) => Err(Error::InvalidParameter(format!(
                "{param:?} is not a valid parameter for the {kind} triangle"
            ))),
        }
    }

    /// Exact rational value of a real parameter (every finite `f64` is a dyadic rational).
    pub(crate) fn exact_real(x: f64) -> BigRational {
        BigRational::from_float(x).expect("finite parameter")
    }
}

/// Law `h_n` of `X_n` under the forward process, as floats.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowDistribution {
    pub kind: TriangleKind,
    pub n: usize,
    pub param: RowParam,
    pub probabilities: Vec<f64>,
}

/// Law `h_n` as exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactRowDistribution {
    pub kind: TriangleKind,
    pub n: usize,
    pub param: RowParam,
    pub probabilities: Vec<BigRational>,
}

fn big(v: BigUint) -> BigInt {
    BigInt::from(v)
}

fn falling(n: u64, k: usize) -> BigUint {
    (0..k as u64).fold(BigUint::one(), |acc, i| {
        if i >= n {
            BigUint::zero()
        } else {
            acc * (n - i)
        }
    })
}

fn rising(theta: &BigRational, n: usize) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, i| {
        acc * (theta + BigRational::from_integer(BigInt::from(i)))
    })
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// Exact normalizer `T_n(theta)` so that `h_n(k) = T(n,k) w_k / T_n(theta)`.
///
/// Pascal `(1 + theta)^n` with `theta = p / (1 - p)`; Stirling2 `N^n`;
/// Stirling1 the rising factorial `theta (theta + 1) ... (theta + n - 1)`; Euler `n!`.
pub fn exact_normalizer(kind: TriangleKind, n: usize, param: RowParam) -> Result<BigRational> {
    param.validate(kind)?;
    Ok(match (kind, param) {
        (TriangleKind::Pascal, RowParam::Probability(p)) => {
            let p = RowParam::exact_real(p);
            let theta = &p / (BigRational::one() - &p);
            num_traits::pow(BigRational::one() + theta, n)
        }
        (TriangleKind::Stirling2, RowParam::Coupons(big_n)) => {
            BigRational::from_integer(big(num_traits::pow(BigUint::from(big_n), n)))
        }
        (TriangleKind::Stirling1, RowParam::Theta(t)) => rising(&RowParam::exact_real(t), n),
        (TriangleKind::Euler, _) => BigRational::from_integer(big(factorial(n))),
        _ => unreachable!("validated above"),
    })
}

/// Float normalizer, see [`exact_normalizer`].
pub fn normalizer(kind: TriangleKind, n: usize, param: RowParam) -> Result<f64> {
    param.validate(kind)?;
    Ok(match (kind, param) {
        (TriangleKind::Pascal, RowParam::Probability(p)) => (1.0 / (1.0 - p)).powi(n as i32),
        (TriangleKind::Stirling2, RowParam::Coupons(big_n)) => (big_n as f64).powi(n as i32),
        (TriangleKind::Stirling1, RowParam::Theta(t)) => (0..n).map(|i| t + i as f64).product(),
        (TriangleKind::Euler, _) => (1..=n).map(|i| i as f64).product(),
        _ => unreachable!("validated above"),
    })
}

pub fn exact_row_distribution(
    kind: TriangleKind,
    n: usize,
    param: RowParam,
) -> Result<ExactRowDistribution> {
    let total = exact_normalizer(kind, n, param)?;
    let row = triangle_row(kind, n);
    let probabilities = row
        .into_iter()
        .enumerate()
        .map(|(k, t)| {
            let t = BigRational::from_integer(big(t));
            let weight = match (kind, param) {
                (TriangleKind::Pascal, RowParam::Probability(p)) => {
                    let p = RowParam::exact_real(p);
                    let theta = &p / (BigRational::one() - &p);
                    num_traits::pow(theta, k)
                }
                (TriangleKind::Stirling2, RowParam::Coupons(big_n)) => {
                    BigRational::from_integer(big(falling(big_n, k)))
                }
                (TriangleKind::Stirling1, RowParam::Theta(th)) => {
                    num_traits::pow(RowParam::exact_real(th), k)
                }
                _ => BigRational::one(),
            };
            t * weight / &total
        })
        .collect();
    Ok(ExactRowDistribution {
        kind,
        n,
        param,
        probabilities,
    })
}

/// Float `h_n`, evaluated in the log domain so large `n` stays finite.
pub fn row_distribution(kind: TriangleKind, n: usize, param: RowParam) -> Result<RowDistribution> {
    param.validate(kind)?;
    let logs = log_row(kind, n);
    let probabilities = logs
        .log_values
        .iter()
        .enumerate()
        .map(|(k, &lt)| {
            if lt == f64::NEG_INFINITY {
                return 0.0;
            }
            let kf = k as f64;
            let nf = n as f64;
            let log_h = match (kind, param) {
                (TriangleKind::Pascal, RowParam::Probability(p)) => {
                    lt + kf * p.ln() + (nf - kf) * (-p).ln_1p()
                }
                (TriangleKind::Stirling2, RowParam::Coupons(big_n)) => {
                    if k as u64 > big_n {
                        return 0.0;
                    }
                    let bn = big_n as f64;
                    let log_falling: f64 = (0..k).map(|i| (bn - i as f64).ln()).sum();
                    lt + log_falling - nf * bn.ln()
                }
                (TriangleKind::Stirling1, RowParam::Theta(t)) => {
                    let log_rising: f64 = (0..n).map(|i| (t + i as f64).ln()).sum();
                    lt + kf * t.ln() - log_rising
                }
                _ => {
                    let log_fact: f64 = (1..=n).map(|i| (i as f64).ln()).sum();
                    lt - log_fact
                }
            };
            log_h.exp()
        })
        .collect();
    Ok(RowDistribution {
        kind,
        n,
        param,
        probabilities,
    })
}
