use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::kernel::{forward_kernel_exact, ExactTransitions, ForwardParams};
use crate::error::{Error, Result};
use crate::triangle::TriangleKind;

/// Largest horizon for exact path-law enumeration (at most `C(12, 6) = 924` paths).
pub const ENUMERATION_BOUND: usize = 12;

/// Exact law of `(X_0, ..., X_m)` given `X_m = l`, keyed by increment string.
///
/// The support lists every monotone 0/1 path ending at `l`, including
/// those of probability zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathLaw {
    pub m: usize,
    pub ell: usize,
    pub probabilities: BTreeMap<String, BigRational>,
}

impl PathLaw {
    pub fn total(&self) -> BigRational {
        self.probabilities.values().sum()
    }

    pub fn get(&self, trajectory: &str) -> Option<&BigRational> {
        self.probabilities.get(trajectory)
    }

    /// Exact law of `X_n`.
    pub fn marginal(&self, n: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); n.min(self.ell) + 1];
        for (path, p) in &self.probabilities {
            let x = path.bytes().take(n).filter(|&c| c == b'1').count();
            out[x] += p;
        }
        out
    }
}

struct Fraction<'a>(&'a BigRational);

impl Serialize for Fraction<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Fraction", 2)?;
        st.serialize_field("numerator", &self.0.numer().to_string())?;
        st.serialize_field("denominator", &self.0.denom().to_string())?;
        st.end()
    }
}

struct Paths<'a>(&'a BTreeMap<String, BigRational>);

impl Serialize for Paths<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, &Fraction(v))?;
        }
        map.end()
    }
}

impl Serialize for PathLaw {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PathLaw", 3)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("ell", &self.ell)?;
        st.serialize_field("paths", &Paths(&self.probabilities))?;
        st.end()
    }
}

fn check_bounds(m: usize, ell: usize) -> Result<()> {
    if m > ENUMERATION_BOUND {
        return Err(Error::EnumerationBound {
            m,
            bound: ENUMERATION_BOUND,
        });
    }
    if ell > m {
        return Err(Error::OutOfRange { n: m, k: ell });
    }
    Ok(())
}

/// Increment patterns of length `m` with exactly `ell` ones, in increasing
/// bitmask order (bit `i` is `Y_{i+1}`).
fn patterns(m: usize, ell: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..(1u32 << m))
        .filter(move |mask| mask.count_ones() as usize == ell)
        .map(move |mask| (0..m).map(|i| ((mask >> i) & 1) as u8).collect())
}

fn key(steps: &[u8]) -> String {
    steps
        .iter()
        .map(|&y| if y == 1 { '1' } else { '0' })
        .collect()
}

/// Law of the forward process conditioned on `X_m = l`, by enumeration.
pub fn conditioned_forward_law(params: &ForwardParams, m: usize, ell: usize) -> Result<PathLaw> {
    check_bounds(m, ell)?;
    let mut weights = BTreeMap::new();
    let mut total = BigRational::zero();
    for steps in patterns(m, ell) {
        let mut w = BigRational::one();
        let mut x = 0usize;
        for (n, &y) in steps.iter().enumerate() {
            let up = forward_kernel_exact(params, n, x)?;
            w *= if y == 1 { up } else { BigRational::one() - up };
            if w.is_zero() {
                break;
            }
            x += y as usize;
        }
        total += &w;
        weights.insert(key(&steps), w);
    }
    if total.is_zero() {
        return Err(Error::ZeroProbability { m, ell });
    }
    let probabilities = weights.into_iter().map(|(k, w)| (k, w / &total)).collect();
    Ok(PathLaw {
        m,
        ell,
        probabilities,
    })
}

/// Law of the reversed chain started at `(m, l)`, read forward.
pub fn reversed_law(kind: TriangleKind, m: usize, ell: usize) -> Result<PathLaw> {
    check_bounds(m, ell)?;
    if !kind.in_support(m, ell) {
        return Err(Error::Unreachable { n: m, k: ell });
    }
    let transitions = ExactTransitions::new(kind, m);
    let mut probabilities = BTreeMap::new();
    for steps in patterns(m, ell) {
        let mut p = BigRational::one();
        let mut k = ell;
        for n in (1..=m).rev() {
            let pair = transitions.pair(n, k)?;
            if steps[n - 1] == 1 {
                p *= pair.p1;
                k -= 1;
            } else {
                p *= pair.p0;
            }
            // Zero mass also guards against stepping into states outside the support.
            if p.is_zero() {
                break;
            }
        }
        probabilities.insert(key(&steps), p);
    }
    Ok(PathLaw {
        m,
        ell,
        probabilities,
    })
}
