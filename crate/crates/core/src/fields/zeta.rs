use serde::Serialize;

use super::root::bracketed_newton;
use crate::error::{Error, Result};
use crate::triangle::TriangleKind;

/// Slope parameter λ = (m − ℓ)/ℓ together with t = 1/(1 + λ) and s = 1 − t.
///
/// `t` and `s` are stored separately so that values coming from integer
/// ratios or from a point `(x, y)` keep full precision on both sides of 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lambda {
    value: f64,
    t: f64,
    s: f64,
}

impl Lambda {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidLambda(lambda));
        }
        let t = 1.0 / (1.0 + lambda);
        Ok(Self {
            value: lambda,
            t,
            s: lambda / (1.0 + lambda),
        })
    }

    /// λ(m, ℓ) for a start with `0 < ℓ < m`.
    pub fn from_ratio(m: u64, ell: u64) -> Result<Self> {
        if ell == 0 || ell >= m {
            return Err(Error::InvalidParameter(format!(
                "lambda needs 0 < ell < m, got m = {m}, ell = {ell}"
            )));
        }
        let (m, ell) = (m as f64, ell as f64);
        Ok(Self {
            value: (m - ell) / ell,
            t: ell / m,
            s: (m - ell) / m,
        })
    }

    /// The λ whose field line passes through `(x, y)`, i.e. (x − y)/y.
    pub fn from_point(x: f64, y: f64) -> Result<Self> {
        let value = (x - y) / y;
        if !(value.is_finite() && value > 0.0 && y > 0.0) {
            return Err(Error::IntegrationDomain { x, arg: value });
        }
        Ok(Self {
            value,
            t: y / x,
            s: (x - y) / x,
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// 1/(1 + λ).
    pub fn t(&self) -> f64 {
        self.t
    }

    /// λ/(1 + λ).
    pub fn s(&self) -> f64 {
        self.s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaSolution {
    pub kind: TriangleKind,
    pub lambda: Lambda,
    pub zeta: f64,
    /// 1 − ζ, computed without cancellation. Only differs from `1.0 - zeta`
    /// in the last bits, but φ₃ is exactly this quantity.
    pub complement: f64,
    pub residual: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

impl ZetaSolution {
    /// The limit slope φ(λ).
    pub fn phi(&self) -> f64 {
        let (t, s) = (self.lambda.t, self.lambda.s);
        match self.kind {
            TriangleKind::Pascal => t,
            TriangleKind::Stirling2 => (-self.zeta).exp(),
            TriangleKind::Stirling1 => self.complement,
            TriangleKind::Euler => {
                if self.zeta == 0.0 {
                    s
                } else if self.zeta > 0.0 {
                    1.0 - t * ratio_expm1(self.zeta)
                } else {
                    // φ(1 − t) = 1 − φ(t), evaluated on the positive side.
                    s * ratio_expm1(-self.zeta)
                }
            }
        }
    }
}

/// z/(e^z − 1), with the removable singularity at 0.
fn ratio_expm1(z: f64) -> f64 {
    if z == 0.0 {
        1.0
    } else {
        z / z.exp_m1()
    }
}

const EULER_SERIES_CUTOFF: f64 = 1e-2;

/// u(z) = 1/z − 1/(e^z − 1), decreasing from 1/2 at 0 to 0 at +∞, and its derivative.
fn euler_u(z: f64) -> (f64, f64) {
    if z.abs() < EULER_SERIES_CUTOFF {
        let z2 = z * z;
        let u = 0.5 - z / 12.0 + z * z2 / 720.0 - z * z2 * z2 / 30240.0
            + z * z2 * z2 * z2 / 1_209_600.0;
        let du = -1.0 / 12.0 + z2 / 240.0 - z2 * z2 / 6048.0 + z2 * z2 * z2 / 172_800.0;
        (u, du)
    } else {
        let e = (-z).exp();
        let u = 1.0 / z - 1.0 / z.exp_m1();
        let du = -1.0 / (z * z) + e / ((1.0 - e) * (1.0 - e));
        (u, du)
    }
}

/// ζ₂: ζ/(1 − e^{−ζ}) = 1 + λ, ζ > 0.
fn stirling2_lhs(z: f64) -> (f64, f64) {
    let d = -(-z).exp_m1();
    let e = (-z).exp();
    (z / d, (d - z * e) / (d * d))
}

/// ζ₃ side: ζ/((1 − ζ)(−ln(1 − ζ))), increasing on (0, 1).
fn stirling1_lhs_zeta(z: f64) -> (f64, f64) {
    let l = -(-z).ln_1p();
    let h = (1.0 - z) * l;
    let dh = 1.0 - l;
    (z / h, (h - z * dh) / (h * h))
}

/// Same equation written in ε = 1 − ζ: (1 − ε)/(ε(−ln ε)), decreasing on (0, 1).
fn stirling1_lhs_eps(e: f64) -> (f64, f64) {
    let l = -e.ln();
    let g = e * l;
    let dg = l - 1.0;
    ((1.0 - e) / g, (-g - (1.0 - e) * dg) / (g * g))
}

/// Above this λ the root sits closer to 1 than to 0 and is solved in ε = 1 − ζ.
fn stirling1_switch() -> f64 {
    1.0 / std::f64::consts::LN_2 - 1.0
}

pub fn zeta(kind: TriangleKind, lambda: f64) -> Result<ZetaSolution> {
    zeta_at(kind, &Lambda::new(lambda)?)
}

pub fn zeta_at(kind: TriangleKind, lambda: &Lambda) -> Result<ZetaSolution> {
    let lam = lambda.value;
    let target = 1.0 + lam;
    let solution = |zeta: f64, complement: f64, residual: f64, bracket, iterations| ZetaSolution {
        kind,
        lambda: *lambda,
        zeta,
        complement,
        residual,
        bracket,
        iterations,
    };
    match kind {
        TriangleKind::Pascal => {
            let z = lambda.s;
            let residual = (1.0 / lambda.t - target).abs();
            Ok(solution(z, lambda.t, residual, (z, z), 0))
        }
        TriangleKind::Stirling2 => {
            let lo = (lam / 4.0).min(1e-12);
            let hi = 2.0 * target + 1.0;
            let root = bracketed_newton(
                |z| {
                    let (v, d) = stirling2_lhs(z);
                    (v - target, d)
                },
                lo,
                hi,
            )?;
            Ok(solution(
                root.x,
                1.0 - root.x,
                root.residual,
                (lo, hi),
                root.iterations,
            ))
        }
        TriangleKind::Stirling1 => {
            if lam <= stirling1_switch() {
                let (lo, hi) = ((lam / 4.0).min(1e-12), 0.5);
                let root = bracketed_newton(
                    |z| {
                        let (v, d) = stirling1_lhs_zeta(z);
                        (v - target, d)
                    },
                    lo,
                    hi,
                )?;
                Ok(solution(
                    root.x,
                    1.0 - root.x,
                    root.residual,
                    (lo, hi),
                    root.iterations,
                ))
            } else {
                let mut lo = 1e-12;
                while stirling1_lhs_eps(lo).0 < target {
                    lo *= 1e-3;
                    if lo < f64::MIN_POSITIVE {
                        return Err(Error::Bracket(format!(
                            "no Stirling1 bracket for lambda = {lam}"
                        )));
                    }
                }
                let hi = 0.5;
                let root = bracketed_newton(
                    |e| {
                        let (v, d) = stirling1_lhs_eps(e);
                        (v - target, d)
                    },
                    lo,
                    hi,
                )?;
                let bracket = (1.0 - hi, 1.0 - lo);
                Ok(solution(
                    1.0 - root.x,
                    root.x,
                    root.residual,
                    bracket,
                    root.iterations,
                ))
            }
        }
        TriangleKind::Euler => {
            let (t, s) = (lambda.t, lambda.s);
            if t == s {
                return Ok(solution(
                    0.0,
                    1.0,
                    (euler_u(0.0).0 - s).abs(),
                    (0.0, 0.0),
                    0,
                ));
            }
            // g(ζ) = e^ζ/(e^ζ − 1) − 1/ζ = 1 − u(ζ) and g(−ζ) = 1 − g(ζ).
            let (goal, sign) = if t > s { (s, 1.0) } else { (t, -1.0) };
            let mut hi = 8.0;
            while euler_u(hi).0 >= goal {
                hi *= 2.0;
                if !hi.is_finite() {
                    return Err(Error::Bracket(format!(
                        "no Euler bracket for lambda = {lam}"
                    )));
                }
            }
            let root = bracketed_newton(
                |z| {
                    let (v, d) = euler_u(z);
                    (v - goal, d)
                },
                0.0,
                hi,
            )?;
            let z = sign * root.x;
            let bracket = if sign > 0.0 { (0.0, hi) } else { (-hi, 0.0) };
            Ok(solution(
                z,
                1.0 - z,
                root.residual,
                bracket,
                root.iterations,
            ))
        }
    }
}

pub fn phi(kind: TriangleKind, lambda: f64) -> Result<f64> {
    phi_at(kind, &Lambda::new(lambda)?)
}

pub fn phi_at(kind: TriangleKind, lambda: &Lambda) -> Result<f64> {
    match kind {
        TriangleKind::Pascal => Ok(lambda.t),
        _ => Ok(zeta_at(kind, lambda)?.phi()),
    }
}
