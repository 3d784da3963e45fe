use rand::Rng;
use serde::Serialize;

use super::kernel::{forward_kernel, ForwardParams, ReversedChain};
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, SimRng};
use crate::triangle::TriangleKind;

/// A point `(n, k)` of the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct State {
    pub n: usize,
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Reversed,
}

/// A realized trajectory, always stored read forward: `X_0 = 0` and
/// increments `Y_1..Y_m` in `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSample {
    pub kind: TriangleKind,
    pub direction: Direction,
    pub m: usize,
    pub steps: Vec<u8>,
}

impl PathSample {
    pub fn from_steps(kind: TriangleKind, direction: Direction, steps: Vec<u8>) -> Self {
        debug_assert!(steps.iter().all(|&y| y <= 1));
        PathSample {
            kind,
            direction,
            m: steps.len(),
            steps,
        }
    }

    /// `X_0, ..., X_m`.
    pub fn levels(&self) -> Vec<usize> {
        let mut x = 0usize;
        std::iter::once(0)
            .chain(self.steps.iter().map(|&y| {
                x += y as usize;
                x
            }))
            .collect()
    }

    /// Final level `X_m`.
    pub fn end_level(&self) -> usize {
        self.steps.iter().map(|&y| y as usize).sum()
    }

    /// Start state of the chain that produced the path: `(0, 0)` for a
    /// forward path, `(m, X_m)` for a reversed one.
    pub fn start(&self) -> State {
        match self.direction {
            Direction::Forward => State { n: 0, k: 0 },
            Direction::Reversed => State {
                n: self.m,
                k: self.end_level(),
            },
        }
    }

    pub fn end(&self) -> State {
        match self.direction {
            Direction::Forward => State {
                n: self.m,
                k: self.end_level(),
            },
            Direction::Reversed => State { n: 0, k: 0 },
        }
    }

    /// `w_m(t) = X_{floor(m t)} / m` for `t` in `[0, 1]`.
    pub fn w(&self, t: f64) -> f64 {
        let j = ((self.m as f64 * t).floor().max(0.0) as usize).min(self.m);
        let x: usize = self.steps[..j].iter().map(|&y| y as usize).sum();
        x as f64 / self.m as f64
    }

    /// `X_j / m` for `j = 0..=m`.
    pub fn normalized(&self) -> Vec<f64> {
        let m = self.m as f64;
        self.levels().into_iter().map(|x| x as f64 / m).collect()
    }

    /// Increment string `Y_1 Y_2 ... Y_m`, e.g. `"0110"`.
    pub fn trajectory(&self) -> String {
        self.steps
            .iter()
            .map(|&y| if y == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Forward process `X_{n+1} = X_n + Y_{n+1}` with `Y_{n+1}` drawn from the
/// forward kernel.
pub fn simulate_forward(params: &ForwardParams, m: usize, seed: u64) -> Result<PathSample> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "horizon m must be at least 1".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    let mut x = 0usize;
    let mut steps = Vec::with_capacity(m);
    for n in 0..m {
        let up = forward_kernel(params, n, x)?;
        let y = u8::from(rng.random::<f64>() < up);
        x += y as usize;
        steps.push(y);
    }
    Ok(PathSample::from_steps(
        params.kind,
        Direction::Forward,
        steps,
    ))
}

impl ReversedChain {
    /// One trajectory from `(m, l)` down to `(0, 0)`.
    pub fn sample(&self, rng: &mut SimRng) -> PathSample {
        let m = self.horizon();
        let mut k = self.level();
        let mut steps = vec![0u8; m];
        for n in (1..=m).rev() {
            let p1 = self.p1(n, k);
            if p1 > 0.0 && rng.random::<f64>() < p1 {
                steps[n - 1] = 1;
                k -= 1;
            }
        }
        debug_assert_eq!(k, 0);
        PathSample::from_steps(self.kind(), Direction::Reversed, steps)
    }

    pub fn sample_seeded(&self, seed: u64) -> PathSample {
        self.sample(&mut rng_from_seed(seed))
    }
}

/// Reversed chain from `(m, l)` to the terminal state `(0, 0)`.
pub fn simulate_reversed(
    kind: TriangleKind,
    m: usize,
    ell: usize,
    seed: u64,
) -> Result<PathSample> {
    Ok(ReversedChain::new(kind, m, ell)?.sample_seeded(seed))
}
