use rayon::prelude::*;
use serde::Serialize;

use crate::chains::{PathSample, ReversedChain};
use crate::error::{Error, Result};
use crate::fields::{FieldLine, Lambda};
use crate::rng::path_seed;
use crate::triangle::TriangleKind;

/// Anything that can be evaluated as `y = γ(x)` on `[0, 1]`.
pub trait Curve {
    fn eval(&self, x: f64) -> f64;
}

impl Curve for FieldLine {
    fn eval(&self, x: f64) -> f64 {
        FieldLine::eval(self, x)
    }
}

impl<F: Fn(f64) -> f64> Curve for F {
    fn eval(&self, x: f64) -> f64 {
        self(x)
    }
}

/// `max_j |X_j/m − γ(j/m)|` over `j = 0..=m`.
pub fn sup_distance<C: Curve + ?Sized>(path: &PathSample, line: &C) -> f64 {
    let m = path.m as f64;
    path.levels()
        .into_iter()
        .enumerate()
        .map(|(j, x)| (x as f64 / m - line.eval(j as f64 / m)).abs())
        .fold(0.0, f64::max)
}

/// `ℓ = round(m/(1 + λ))` and the λ it actually realizes.
pub(crate) fn realized_start(kind: TriangleKind, m: usize, lambda: f64) -> Result<(usize, Lambda)> {
    Lambda::new(lambda)?;
    let ell = (m as f64 / (1.0 + lambda)).round() as usize;
    if !kind.in_support(m, ell) {
        return Err(Error::Unreachable { n: m, k: ell });
    }
    let realized = Lambda::from_ratio(m as u64, ell as u64)?;
    Ok((ell, realized))
}

/// Wilson score interval at 95% for `hits` out of `n`.
pub fn wilson_interval(hits: usize, n: usize) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = n as f64;
    let p = hits as f64 / n;
    let z2 = Z * Z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = Z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Convergence is a theorem for this triangle.
    Proven,
    /// Euler: observed only.
    Conjectural,
}

impl Status {
    pub fn of(kind: TriangleKind) -> Self {
        match kind {
            TriangleKind::Euler => Status::Conjectural,
            _ => Status::Proven,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub kind: TriangleKind,
    pub status: Status,
    pub m: usize,
    pub ell: usize,
    pub lambda_requested: f64,
    pub lambda: f64,
    pub eta: f64,
    pub n_paths: usize,
    pub seed: u64,
    /// `m^{-η}`.
    pub threshold: f64,
    /// Sup distance of path `i`, in path order.
    pub distances: Vec<f64>,
    pub exceedances: usize,
    pub exceedance_fraction: f64,
    pub wilson_95: (f64, f64),
}

/// Simulates `n_paths` reversed chains from `(m, round(m/(1 + λ)))` and
/// counts how often the sup distance to the field line reaches `m^{-η}`.
///
/// Path `i` uses the stream `path_seed(seed, i)`.
pub fn convergence_experiment(
    kind: TriangleKind,
    m: usize,
    lambda: f64,
    eta: f64,
    n_paths: usize,
    seed: u64,
) -> Result<ConvergenceReport> {
    if !(eta > 0.0 && eta < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "eta must lie in (0, 1/2), got {eta}"
        )));
    }
    if n_paths == 0 {
        return Err(Error::InvalidParameter(
            "at least one path is required".into(),
        ));
    }
    let (ell, realized) = realized_start(kind, m, lambda)?;
    let line = FieldLine::for_kind(kind, realized.value())?;
    let chain = ReversedChain::new(kind, m, ell)?;
    let distances: Vec<f64> = (0..n_paths as u64)
        .into_par_iter()
        .map(|i| sup_distance(&chain.sample_seeded(path_seed(seed, i)), &line))
        .collect();
    let threshold = (m as f64).powf(-eta);
    let exceedances = distances.iter().filter(|&&d| d >= threshold).count();
    Ok(ConvergenceReport {
        kind,
        status: Status::of(kind),
        m,
        ell,
        lambda_requested: lambda,
        lambda: realized.value(),
        eta,
        n_paths,
        seed,
        threshold,
        distances,
        exceedances,
        exceedance_fraction: exceedances as f64 / n_paths as f64,
        wilson_95: wilson_interval(exceedances, n_paths),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::Direction;

    #[test]
    fn sup_distance_by_hand() {
        let path =
            PathSample::from_steps(TriangleKind::Pascal, Direction::Reversed, vec![1, 0, 1, 0]);
        assert_eq!(sup_distance(&path, &|t: f64| t / 2.0), 0.125);
        let line = FieldLine::closed(TriangleKind::Pascal, 1.0).unwrap();
        assert_eq!(sup_distance(&path, &line), 0.125);
    }

    #[test]
    fn path_on_the_line_has_zero_distance() {
        let path = PathSample::from_steps(TriangleKind::Pascal, Direction::Forward, vec![1, 1, 1]);
        assert_eq!(sup_distance(&path, &|t: f64| t), 0.0);
    }

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 200);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.02);
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo + hi - 1.0).abs() < 1e-12);
        assert!(lo < 0.5 && hi > 0.5);
    }

    #[test]
    fn realized_lambda_uses_rounded_level() {
        let (ell, lam) = realized_start(TriangleKind::Stirling2, 7, 1.0).unwrap();
        assert_eq!(ell, 4);
        assert_eq!(lam.t(), 4.0 / 7.0);
        assert!(realized_start(TriangleKind::Euler, 10, 1e-9).is_err());
    }

    #[test]
    fn rejects_bad_eta() {
        for eta in [0.0, 0.5, -1.0] {
            assert!(convergence_experiment(TriangleKind::Pascal, 100, 1.0, eta, 10, 1).is_err());
        }
    }

    #[test]
    fn deterministic_and_labelled() {
        let a = convergence_experiment(TriangleKind::Euler, 200, 1.0, 0.25, 20, 9).unwrap();
        let b = convergence_experiment(TriangleKind::Euler, 200, 1.0, 0.25, 20, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.status, Status::Conjectural);
        assert!(a.distances.iter().all(|&d| d >= 0.0));
        assert!((0.0..=1.0).contains(&a.exceedance_fraction));
    }

    #[test]
    fn stirling2_single_paths_stay_close() {
        let r = convergence_experiment(TriangleKind::Stirling2, 1000, 1.0, 0.25, 200, 17).unwrap();
        let close = r.distances.iter().filter(|&&d| d < 0.05).count();
        assert!(close as f64 >= 0.99 * 200.0, "{close}");
    }
}
