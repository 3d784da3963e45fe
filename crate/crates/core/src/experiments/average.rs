use rayon::prelude::*;
use serde::Serialize;

use crate::chains::ReversedChain;
use crate::error::{Error, Result};
use crate::rng::path_seed;
use crate::triangle::TriangleKind;

/// Starting ratios `t = ℓ/m` used when none are given.
pub const DEFAULT_STARTS: [f64; 10] = [0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanCurve {
    pub t: f64,
    pub ell: usize,
    /// Mean of `X_j / m` over the paths, `j = 0..=m`.
    pub mean: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AveragedPaths {
    pub kind: TriangleKind,
    pub m: usize,
    pub n_paths: usize,
    pub seed: u64,
    pub curves: Vec<MeanCurve>,
}

/// Mean normalized trajectory of `n_paths` reversed chains from each start
/// `(m, round(m t))`.
///
/// Path `i` of start `s` uses `path_seed(path_seed(seed, s), i)`. Levels are
/// summed as integers, so the result does not depend on scheduling.
pub fn averaged_paths(
    kind: TriangleKind,
    m: usize,
    starts: &[f64],
    n_paths: usize,
    seed: u64,
) -> Result<AveragedPaths> {
    if n_paths == 0 {
        return Err(Error::InvalidParameter(
            "at least one path is required".into(),
        ));
    }
    if m == 0 {
        return Err(Error::InvalidParameter(
            "horizon m must be at least 1".into(),
        ));
    }
    let curves = starts
        .iter()
        .enumerate()
        .map(|(s, &t)| {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::InvalidParameter(format!(
                    "start ratio must lie in [0, 1], got {t}"
                )));
            }
            let ell = (m as f64 * t).round() as usize;
            let chain = ReversedChain::new(kind, m, ell)?;
            let start_seed = path_seed(seed, s as u64);
            let totals = (0..n_paths as u64)
                .into_par_iter()
                .map(|i| chain.sample_seeded(path_seed(start_seed, i)).levels())
                .reduce(
                    || vec![0usize; m + 1],
                    |mut acc, levels| {
                        acc.iter_mut().zip(levels).for_each(|(a, x)| *a += x);
                        acc
                    },
                );
            let scale = (n_paths * m) as f64;
            Ok(MeanCurve {
                t,
                ell,
                mean: totals.into_iter().map(|x| x as f64 / scale).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AveragedPaths {
        kind,
        m,
        n_paths,
        seed,
        curves,
    })
}
