//! Literal samplers whose laws match the normalized Eulerian rows.

use std::collections::HashSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, SimRng};

/// One-dimensional internal DLA with `n` particles; returns the number of
/// particles settled strictly right of the origin.
///
/// The first particle settles at 0. Each later particle runs a symmetric
/// +-1 walk from 0 until it reaches an empty site, where it stays.
pub fn idla_run(n: usize, rng: &mut SimRng) -> usize {
    let mut occupied: HashSet<i64> = HashSet::with_capacity(n);
    let mut right = 0usize;
    for i in 0..n {
        let mut pos = 0i64;
        if i > 0 {
            while occupied.contains(&pos) {
                pos += if rng.random::<bool>() { 1 } else { -1 };
            }
        }
        occupied.insert(pos);
        if pos > 0 {
            right += 1;
        }
    }
    right
}

pub fn idla_simulate(n: usize, seed: u64) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "iDLA needs at least one particle".into(),
        ));
    }
    Ok(idla_run(n, &mut rng_from_seed(seed)))
}

/// `floor(U_1 + ... + U_n)` for i.i.d. uniforms on `[0, 1)`.
pub fn tanny_draw(n: usize, rng: &mut SimRng) -> usize {
    let s: f64 = (0..n).map(|_| rng.random::<f64>()).sum();
    s.floor() as usize
}

pub fn tanny_sample(n: usize, seed: u64) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidParameter("Tanny sampler needs n >= 1".into()));
    }
    Ok(tanny_draw(n, &mut rng_from_seed(seed)))
}

fn histogram(
    n: usize,
    draws: usize,
    seed: u64,
    mut draw: impl FnMut(&mut SimRng) -> usize,
) -> Vec<u64> {
    let mut rng = rng_from_seed(seed);
    let mut counts = vec![0u64; n + 1];
    for _ in 0..draws {
        counts[draw(&mut rng).min(n)] += 1;
    }
    counts
}

/// Counts of `X_n` over `runs` iDLA runs sharing one seeded stream; index `k` in `0..=n`.
pub fn idla_histogram(n: usize, runs: usize, seed: u64) -> Vec<u64> {
    histogram(n, runs, seed, |rng| idla_run(n, rng))
}

/// Counts of `floor(U_1 + ... + U_n)` over `draws` samples; index `k` in `0..=n`.
pub fn tanny_histogram(n: usize, draws: usize, seed: u64) -> Vec<u64> {
    histogram(n, draws, seed, |rng| tanny_draw(n, rng))
}
