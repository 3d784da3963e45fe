use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 400;
const NEWTON_ITERATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Root {
    pub x: f64,
    /// `|f(x)|` at the returned point.
    pub residual: f64,
    pub iterations: usize,
}

/// Root of a monotone `f` on `[lo, hi]`, where `f` returns `(value, derivative)`.
///
/// Bisection keeps the bracket; Newton steps are taken whenever they land
/// strictly inside it. Stops when the Newton step is below two ulps, the
/// bracket collapses to adjacent floats, or `f` hits zero. Returns the best
/// point seen.
pub(crate) fn bracketed_newton<F>(f: F, mut lo: f64, mut hi: f64) -> Result<Root>
where
    F: Fn(f64) -> (f64, f64),
{
    let (f_lo, _) = f(lo);
    let (f_hi, _) = f(hi);
    if f_lo == 0.0 {
        return Ok(Root {
            x: lo,
            residual: 0.0,
            iterations: 0,
        });
    }
    if f_hi == 0.0 {
        return Ok(Root {
            x: hi,
            residual: 0.0,
            iterations: 0,
        });
    }
    if !(f_lo.is_finite() && f_hi.is_finite()) || (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::Bracket(format!(
            "f({lo}) = {f_lo} and f({hi}) = {f_hi} do not straddle zero"
        )));
    }
    let increasing = f_hi > 0.0;
    let mut x = 0.5 * (lo + hi);
    let mut best = Root {
        x,
        residual: f64::INFINITY,
        iterations: 0,
    };
    for it in 1..=MAX_ITERATIONS {
        let (fx, dfx) = f(x);
        if fx.abs() < best.residual {
            best = Root {
                x,
                residual: fx.abs(),
                iterations: it,
            };
        }
        if fx == 0.0 {
            break;
        }
        if (fx > 0.0) == increasing {
            hi = x;
        } else {
            lo = x;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let step = fx / dfx;
        if step.abs() <= 2.0 * f64::EPSILON * x.abs() {
            break;
        }
        let candidate = x - step;
        x = if it <= NEWTON_ITERATIONS && candidate.is_finite() && candidate > lo && candidate < hi
        {
            candidate
        } else {
            mid
        };
    }
    best.iterations = best.iterations.max(1);
    Ok(best)
}
