use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::triangle::{LogTable, RowParam, TriangleKind, TriangleTable};

/// Largest horizon for which [`ReversedChain::new`] uses exact big-integer rows.
pub const EXACT_THRESHOLD: usize = 64;

/// How triangle ratios are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// Exact big integers, ratios rounded once to `f64`.
    Exact,
    /// Log-domain rows in binary64.
    Log,
}

/// Reversed-chain step probabilities out of `(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitionPair {
    /// `(n, k) -> (n - 1, k)`.
    pub p0: f64,
    /// `(n, k) -> (n - 1, k - 1)`.
    pub p1: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactTransitionPair {
    pub p0: BigRational,
    pub p1: BigRational,
}

fn check_state(kind: TriangleKind, n: usize, k: usize) -> Result<()> {
    if n == 0 || k > n {
        return Err(Error::OutOfRange { n, k });
    }
    if !kind.in_support(n, k) {
        return Err(Error::Unreachable { n, k });
    }
    Ok(())
}

/// Exact reversed-chain transitions read off a precomputed triangle.
#[derive(Debug, Clone)]
pub struct ExactTransitions {
    table: TriangleTable,
}

impl ExactTransitions {
    pub fn new(kind: TriangleKind, n_max: usize) -> Self {
        ExactTransitions {
            table: TriangleTable::new(kind, n_max),
        }
    }

    pub fn kind(&self) -> TriangleKind {
        self.table.kind()
    }

    pub fn table(&self) -> &TriangleTable {
        &self.table
    }

    pub fn pair(&self, n: usize, k: usize) -> Result<ExactTransitionPair> {
        let kind = self.table.kind();
        check_state(kind, n, k)?;
        if n > self.table.n_max() {
            return Err(Error::OutOfRange { n, k });
        }
        let (a, b) = kind.coeffs_unchecked(n, k);
        let total = BigInt::from(self.table.get(n, k).cloned().unwrap_or_default());
        let up = BigInt::from(self.table.get_or_zero(n - 1, k as isize - 1) * a);
        let stay = BigInt::from(self.table.get_or_zero(n - 1, k as isize) * b);
        Ok(ExactTransitionPair {
            p0: BigRational::new(stay, total.clone()),
            p1: BigRational::new(up, total),
        })
    }
}

/// Exact `(p0, p1)` out of `(n, k)`.
pub fn reverse_transition_exact(
    kind: TriangleKind,
    n: usize,
    k: usize,
) -> Result<ExactTransitionPair> {
    check_state(kind, n, k)?;
    ExactTransitions::new(kind, n).pair(n, k)
}

fn log_pair(logs: &LogTable, n: usize, k: usize) -> TransitionPair {
    let (a, b) = logs.kind().coeffs_unchecked(n, k);
    let here = logs.ln_value(n, k as isize);
    let up = (a as f64).ln() + logs.ln_value(n - 1, k as isize - 1) - here;
    let stay = (b as f64).ln() + logs.ln_value(n - 1, k as isize) - here;
    normalized(up.exp(), stay.exp())
}

fn normalized(up: f64, stay: f64) -> TransitionPair {
    // The two terms sum to one up to rounding; renormalize so boundary
    // states are exactly forced.
    let total = up + stay;
    let p1 = up / total;
    TransitionPair { p0: 1.0 - p1, p1 }
}

/// Float `(p0, p1)` out of `(n, k)` through log-domain rows.
pub fn reverse_transition(kind: TriangleKind, n: usize, k: usize) -> Result<TransitionPair> {
    check_state(kind, n, k)?;
    let logs = LogTable::new(kind, n);
    Ok(log_pair(&logs, n, k))
}

/// Kind plus parameter of a forward growth process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForwardParams {
    pub kind: TriangleKind,
    pub param: RowParam,
}

impl ForwardParams {
    /// Accepts `p` in `[0, 1]` (degenerate walks included), `N >= 1`, `theta > 0`.
    pub fn new(kind: TriangleKind, param: RowParam) -> Result<Self> {
        let ok = match (kind, param) {
            (TriangleKind::Pascal, RowParam::Probability(p)) => (0.0..=1.0).contains(&p),
            (TriangleKind::Stirling2, RowParam::Coupons(n)) => n >= 1,
            (TriangleKind::Stirling1, RowParam::Theta(t)) => t > 0.0 && t.is_finite(),
            (TriangleKind::Euler, RowParam::None) => true,
            _ => false,
        };
        if ok {
            Ok(ForwardParams { kind, param })
        } else {
            Err(Error::InvalidParameter(format!(
                "{param:?} is not a valid parameter for the {kind} growth process"
            )))
        }
    }

    pub fn pascal(p: f64) -> Result<Self> {
        Self::new(TriangleKind::Pascal, RowParam::Probability(p))
    }

    pub fn coupons(n: u64) -> Result<Self> {
        Self::new(TriangleKind::Stirling2, RowParam::Coupons(n))
    }

    pub fn restaurant(theta: f64) -> Result<Self> {
        Self::new(TriangleKind::Stirling1, RowParam::Theta(theta))
    }

    pub fn descents() -> Self {
        ForwardParams {
            kind: TriangleKind::Euler,
            param: RowParam::None,
        }
    }
}

fn check_forward_state(params: &ForwardParams, n: usize, x: usize) -> Result<()> {
    let in_range = match params.param {
        RowParam::Coupons(big_n) => x <= n && x as u64 <= big_n,
        _ => x <= n,
    };
    if in_range {
        Ok(())
    } else {
        Err(Error::OutOfRange { n, k: x })
    }
}

/// Up-step probability `Q_{n, x, x+1}` of the forward process.
pub fn forward_kernel(params: &ForwardParams, n: usize, x: usize) -> Result<f64> {
    check_forward_state(params, n, x)?;
    Ok(match params.param {
        RowParam::Probability(p) => p,
        RowParam::Coupons(big_n) => (big_n - x as u64) as f64 / big_n as f64,
        RowParam::Theta(theta) => theta / (n as f64 + theta),
        RowParam::None => (n - x) as f64 / (n + 1) as f64,
    })
}

pub fn forward_kernel_exact(params: &ForwardParams, n: usize, x: usize) -> Result<BigRational> {
    check_forward_state(params, n, x)?;
    let int = |v: u64| BigRational::from_integer(BigInt::from(v));
    Ok(match params.param {
        RowParam::Probability(p) => RowParam::exact_real(p),
        RowParam::Coupons(big_n) => int(big_n - x as u64) / int(big_n),
        RowParam::Theta(theta) => {
            let theta = RowParam::exact_real(theta);
            &theta / (int(n as u64) + &theta)
        }
        RowParam::None => int((n - x) as u64) / int(n as u64 + 1),
    })
}

/// Up-step probabilities `p1` over every state reachable from `(m, l)`.
///
/// At level `n` the reachable columns are `max(0, l - (m - n)) ..= min(n, l)`.
#[derive(Debug, Clone)]
pub struct ReversedChain {
    kind: TriangleKind,
    m: usize,
    ell: usize,
    precision: Precision,
    // p1[n][k - lo(n)]
    p1: Vec<Vec<f64>>,
}

impl ReversedChain {
    /// Exact rows up to [`EXACT_THRESHOLD`], log rows beyond.
    pub fn new(kind: TriangleKind, m: usize, ell: usize) -> Result<Self> {
        let precision = if m <= EXACT_THRESHOLD {
            Precision::Exact
        } else {
            Precision::Log
        };
        Self::with_precision(kind, m, ell, precision)
    }

    pub fn with_precision(
        kind: TriangleKind,
        m: usize,
        ell: usize,
        precision: Precision,
    ) -> Result<Self> {
        if ell > m {
            return Err(Error::OutOfRange { n: m, k: ell });
        }
        if !kind.in_support(m, ell) {
            return Err(Error::Unreachable { n: m, k: ell });
        }
        let mut p1 = vec![Vec::new(); m + 1];
        match precision {
            Precision::Exact => {
                let exact = ExactTransitions::new(kind, m);
                for (n, slot) in p1.iter_mut().enumerate().skip(1) {
                    let (lo, hi) = Self::band(m, ell, n);
                    *slot = (lo..=hi)
                        .map(|k| match exact.pair(n, k) {
                            Ok(pair) => pair.p1.to_f64().unwrap_or(0.0),
                            Err(_) => 0.0,
                        })
                        .collect();
                }
            }
            Precision::Log => {
                let logs = LogTable::new(kind, m);
                for (n, slot) in p1.iter_mut().enumerate().skip(1) {
                    let (lo, hi) = Self::band(m, ell, n);
                    *slot = (lo..=hi)
                        .map(|k| {
                            if kind.in_support(n, k) {
                                log_pair(&logs, n, k).p1
                            } else {
                                0.0
                            }
                        })
                        .collect();
                }
            }
        }
        Ok(ReversedChain {
            kind,
            m,
            ell,
            precision,
            p1,
        })
    }

    fn band(m: usize, ell: usize, n: usize) -> (usize, usize) {
        (ell.saturating_sub(m - n), n.min(ell))
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn horizon(&self) -> usize {
        self.m
    }

    pub fn level(&self) -> usize {
        self.ell
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// `p1(n, k)`; zero outside the reachable band.
    pub fn p1(&self, n: usize, k: usize) -> f64 {
        if n == 0 || n > self.m {
            return 0.0;
        }
        let (lo, hi) = Self::band(self.m, self.ell, n);
        if k < lo || k > hi {
            return 0.0;
        }
        self.p1[n][k - lo]
    }
}
