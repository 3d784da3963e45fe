use serde::Serialize;

use super::zeta::{phi_at, zeta_at, Lambda, ZetaSolution};
use crate::error::{Error, Result};
use crate::triangle::TriangleKind;

/// Grid for the RK4 integrator: from the anchor down to `x_min` with a fixed
/// step of at most `min(max_step, x_min)`.
///
/// Field lines are tangent to the diagonal at the origin, where the slope
/// field stiffens like `1/x`; capping the step at `x_min` keeps the last
/// steps inside the stability region of explicit RK4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeGrid {
    pub x_min: f64,
    pub max_step: f64,
}

impl Default for OdeGrid {
    fn default() -> Self {
        Self {
            x_min: 1e-4,
            max_step: 1e-3,
        }
    }
}

impl OdeGrid {
    fn validate(&self, x0: f64) -> Result<()> {
        if !(self.x_min > 0.0 && self.x_min < x0) {
            return Err(Error::InvalidParameter(format!(
                "x_min must lie in (0, {x0}), got {}",
                self.x_min
            )));
        }
        if !(self.max_step > 0.0 && self.max_step.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "max_step must be positive, got {}",
                self.max_step
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineMode {
    ClosedForm,
    OdeGrid,
}

/// The field line γ_λ through `(1, 1/(1 + λ))`, or through another anchor
/// when built with [`integrate_field_line`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldLine {
    kind: TriangleKind,
    lambda: f64,
    zeta: ZetaSolution,
    mode: LineMode,
    #[serde(skip)]
    xs: Vec<f64>,
    #[serde(skip)]
    ys: Vec<f64>,
    #[serde(skip)]
    slopes: Vec<f64>,
}

/// Slope of the field at `(x, y)`: φ((x − y)/y).
pub fn slope_at(kind: TriangleKind, x: f64, y: f64) -> Result<f64> {
    let lambda = Lambda::from_point(x, y)?;
    phi_at(kind, &lambda)
}

fn closed_value(sol: &ZetaSolution, x: f64) -> f64 {
    match sol.kind {
        TriangleKind::Pascal => x * sol.lambda.t(),
        TriangleKind::Stirling2 => -(-x * sol.zeta).exp_m1() / sol.zeta,
        TriangleKind::Stirling1 => {
            let (z, e) = (sol.zeta, sol.complement);
            e / z * (x * z / e).ln_1p()
        }
        TriangleKind::Euler => unreachable!("no closed form for the Euler line"),
    }
}

pub fn field_line_closed(kind: TriangleKind, lambda: f64, x: f64) -> Result<f64> {
    FieldLine::closed(kind, lambda)?.eval_checked(x)
}

pub fn field_line_ode(kind: TriangleKind, lambda: f64, grid: OdeGrid) -> Result<FieldLine> {
    let lam = Lambda::new(lambda)?;
    let mut line = integrate_field_line(kind, 1.0, lam.t(), grid)?;
    line.lambda = lambda;
    line.zeta = zeta_at(kind, &lam)?;
    Ok(line)
}

/// RK4 integration of y' = φ((x − y)/y) backward from `(x0, y0)` to `grid.x_min`.
pub fn integrate_field_line(
    kind: TriangleKind,
    x0: f64,
    y0: f64,
    grid: OdeGrid,
) -> Result<FieldLine> {
    grid.validate(x0)?;
    let anchor = Lambda::from_point(x0, y0)?;
    let zeta = zeta_at(kind, &anchor)?;
    let max_step = grid.max_step.min(grid.x_min);
    let steps = ((x0 - grid.x_min) / max_step).ceil() as usize;
    let h = (x0 - grid.x_min) / steps as f64;
    let f = |x: f64, y: f64| slope_at(kind, x, y);

    let mut xs = Vec::with_capacity(steps + 1);
    let mut ys = Vec::with_capacity(steps + 1);
    let mut slopes = Vec::with_capacity(steps + 1);
    let (mut x, mut y) = (x0, y0);
    xs.push(x);
    ys.push(y);
    slopes.push(f(x, y)?);
    for i in 1..=steps {
        let k1 = slopes[i - 1];
        let k2 = f(x - 0.5 * h, y - 0.5 * h * k1)?;
        let k3 = f(x - 0.5 * h, y - 0.5 * h * k2)?;
        let k4 = f(x - h, y - h * k3)?;
        y -= h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        x = if i == steps {
            grid.x_min
        } else {
            x0 - i as f64 * h
        };
        xs.push(x);
        ys.push(y);
        slopes.push(f(x, y)?);
    }
    xs.reverse();
    ys.reverse();
    slopes.reverse();
    Ok(FieldLine {
        kind,
        lambda: anchor.value(),
        zeta,
        mode: LineMode::OdeGrid,
        xs,
        ys,
        slopes,
    })
}

impl FieldLine {
    /// Closed-form line; not available for Euler.
    pub fn closed(kind: TriangleKind, lambda: f64) -> Result<Self> {
        if kind == TriangleKind::Euler {
            return Err(Error::InvalidParameter(
                "the Euler field line has no closed form; integrate it instead".into(),
            ));
        }
        let zeta = zeta_at(kind, &Lambda::new(lambda)?)?;
        Ok(Self {
            kind,
            lambda,
            zeta,
            mode: LineMode::ClosedForm,
            xs: Vec::new(),
            ys: Vec::new(),
            slopes: Vec::new(),
        })
    }

    /// Closed form when one exists, RK4 on the default grid otherwise.
    pub fn for_kind(kind: TriangleKind, lambda: f64) -> Result<Self> {
        match kind {
            TriangleKind::Euler => field_line_ode(kind, lambda, OdeGrid::default()),
            _ => Self::closed(kind, lambda),
        }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn zeta(&self) -> &ZetaSolution {
        &self.zeta
    }

    pub fn mode(&self) -> LineMode {
        self.mode
    }

    /// Grid nodes `(x_i, y_i)` in increasing `x`; empty in closed-form mode.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    pub fn x_min(&self) -> f64 {
        self.xs.first().copied().unwrap_or(0.0)
    }

    fn eval_checked(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "x must be finite and >= 0, got {x}"
            )));
        }
        Ok(self.eval(x))
    }

    /// γ(x). Grid lines use cubic Hermite interpolation between nodes,
    /// a straight segment to the origin below the first node, and the end
    /// tangent beyond the last one.
    pub fn eval(&self, x: f64) -> f64 {
        match self.mode {
            LineMode::ClosedForm => closed_value(&self.zeta, x),
            LineMode::OdeGrid => {
                let n = self.xs.len();
                let (x_lo, x_hi) = (self.xs[0], self.xs[n - 1]);
                if x <= x_lo {
                    return self.ys[0] * x / x_lo;
                }
                if x >= x_hi {
                    return self.ys[n - 1] + (x - x_hi) * self.slopes[n - 1];
                }
                let i = self.xs.partition_point(|&v| v <= x) - 1;
                let (xa, xb) = (self.xs[i], self.xs[i + 1]);
                let h = xb - xa;
                let u = (x - xa) / h;
                let (u2, u3) = (u * u, u * u * u);
                let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
                let h10 = u3 - 2.0 * u2 + u;
                let h01 = -2.0 * u3 + 3.0 * u2;
                let h11 = u3 - u2;
                h00 * self.ys[i]
                    + h10 * h * self.slopes[i]
                    + h01 * self.ys[i + 1]
                    + h11 * h * self.slopes[i + 1]
            }
        }
    }

    /// `(x, γ(x))` at `count` evenly spaced points of `[0, 1]`.
    pub fn sample(&self, count: usize) -> Vec<(f64, f64)> {
        match count {
            0 => Vec::new(),
            1 => vec![(1.0, self.eval(1.0))],
            _ => (0..count)
                .map(|i| {
                    let x = i as f64 / (count - 1) as f64;
                    (x, self.eval(x))
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomothetyReport {
    pub kind: TriangleKind,
    pub lambda: f64,
    pub c: f64,
    /// Largest finite-difference residual |ΔY/ΔX − φ((X − Y)/Y)| of the scaled curve.
    pub max_ode_residual: f64,
    /// Largest gap between the scaled curve and the line integrated from `(c, c/(1 + λ))`.
    pub max_anchor_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

const HOMOTHETY_TOLERANCE: f64 = 1e-6;
const HOMOTHETY_X_MIN: f64 = 1e-3;

/// Checks that `(c·x, c·γ_λ(x))` is again a field line.
pub fn homothety_check(kind: TriangleKind, lambda: f64, c: f64) -> Result<HomothetyReport> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "c must lie in (0, 1], got {c}"
        )));
    }
    let grid = OdeGrid {
        x_min: HOMOTHETY_X_MIN,
        max_step: 1e-4,
    };
    let base = field_line_ode(kind, lambda, grid)?;
    let scaled: Vec<(f64, f64)> = base.points().map(|(x, y)| (c * x, c * y)).collect();

    let mut max_ode_residual: f64 = 0.0;
    for w in scaled.windows(3) {
        let (x, y) = w[1];
        let fd = (w[2].1 - w[0].1) / (w[2].0 - w[0].0);
        max_ode_residual = max_ode_residual.max((fd - slope_at(kind, x, y)?).abs());
    }

    // A coarser step than the base line, so the two discretizations differ.
    let t = Lambda::new(lambda)?.t();
    let anchored = integrate_field_line(
        kind,
        c,
        c * t,
        OdeGrid {
            x_min: c * HOMOTHETY_X_MIN,
            max_step: 1e-3,
        },
    )?;
    let max_anchor_deviation = scaled
        .iter()
        .map(|&(x, y)| (anchored.eval(x) - y).abs())
        .fold(0.0, f64::max);

    Ok(HomothetyReport {
        kind,
        lambda,
        c,
        max_ode_residual,
        max_anchor_deviation,
        tolerance: HOMOTHETY_TOLERANCE,
        passed: max_ode_residual < HOMOTHETY_TOLERANCE
            && max_anchor_deviation < HOMOTHETY_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sup_gap(kind: TriangleKind, lambda: f64) -> f64 {
        let ode = field_line_ode(kind, lambda, OdeGrid::default()).unwrap();
        let closed = FieldLine::closed(kind, lambda).unwrap();
        ode.points()
            .filter(|&(x, _)| x >= 1e-3)
            .map(|(x, y)| (y - closed.eval(x)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn closed_form_examples() {
        assert!((field_line_closed(TriangleKind::Pascal, 1.0, 0.6).unwrap() - 0.3).abs() < 1e-15);
        assert!(
            (field_line_closed(TriangleKind::Stirling2, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-12
        );
        let z = 1.593_624_260_040_04_f64;
        let expect = (1.0 - (-z / 2.0).exp()) / z;
        let got = field_line_closed(TriangleKind::Stirling2, 1.0, 0.5).unwrap();
        assert!((got - expect).abs() < 1e-12);
        assert!((got - 0.34466).abs() < 5e-5);
        assert!(field_line_closed(TriangleKind::Euler, 1.0, 0.5).is_err());
        assert!(field_line_closed(TriangleKind::Pascal, 1.0, -0.1).is_err());
    }

    #[test]
    fn closed_forms_pass_through_anchor() {
        for kind in [
            TriangleKind::Pascal,
            TriangleKind::Stirling2,
            TriangleKind::Stirling1,
        ] {
            for lam in [1e-3, 0.2, 1.0, 7.0, 1e3] {
                let y1 = field_line_closed(kind, lam, 1.0).unwrap();
                assert!((y1 - 1.0 / (1.0 + lam)).abs() < 1e-9, "{kind} {lam}");
                assert!(field_line_closed(kind, lam, 1e-6).unwrap() < 1e-5);
            }
        }
    }

    #[test]
    fn ode_matches_closed_forms() {
        for kind in [
            TriangleKind::Pascal,
            TriangleKind::Stirling2,
            TriangleKind::Stirling1,
        ] {
            for lam in [0.1, 1.0, 2.0, 10.0] {
                let gap = sup_gap(kind, lam);
                assert!(gap < 1e-7, "{kind} {lam}: {gap}");
            }
        }
    }

    #[test]
    fn euler_line_through_half_is_straight() {
        let line = field_line_ode(TriangleKind::Euler, 1.0, OdeGrid::default()).unwrap();
        let gap = line
            .points()
            .map(|(x, y)| (y - x / 2.0).abs())
            .fold(0.0, f64::max);
        assert!(gap < 1e-7, "{gap}");
    }

    #[test]
    fn ode_lines_are_monotone_and_below_diagonal() {
        for kind in TriangleKind::ALL {
            let line = field_line_ode(kind, 0.7, OdeGrid::default()).unwrap();
            let pts: Vec<_> = line.points().collect();
            assert!(pts.windows(2).all(|w| w[0].1 < w[1].1), "{kind}");
            assert!(pts.iter().all(|&(x, y)| y > 0.0 && y <= x), "{kind}");
            assert!((pts.last().unwrap().1 - 1.0 / 1.7).abs() < 1e-12);
        }
    }

    #[test]
    fn interpolation_between_nodes() {
        let ode = field_line_ode(TriangleKind::Stirling2, 1.0, OdeGrid::default()).unwrap();
        let closed = FieldLine::closed(TriangleKind::Stirling2, 1.0).unwrap();
        for i in 0..=997 {
            let x = 0.0013 + i as f64 * 1.0007e-3;
            assert!((ode.eval(x) - closed.eval(x)).abs() < 1e-7, "{x}");
        }
        assert_eq!(ode.eval(0.0), 0.0);
    }

    #[test]
    fn homothety_examples() {
        for (kind, c) in [
            (TriangleKind::Pascal, 0.5),
            (TriangleKind::Stirling2, 0.5),
            (TriangleKind::Euler, 0.3),
            (TriangleKind::Stirling1, 0.3),
        ] {
            let r = homothety_check(kind, 1.0, c).unwrap();
            assert!(r.passed, "{r:?}");
        }
        assert!(homothety_check(TriangleKind::Pascal, 1.0, 0.0).is_err());
    }

    #[test]
    fn bad_grid_is_rejected() {
        let bad = OdeGrid {
            x_min: 0.0,
            max_step: 1e-3,
        };
        assert!(field_line_ode(TriangleKind::Pascal, 1.0, bad).is_err());
    }
}
