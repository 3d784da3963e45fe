//! Brute-force counts shared by the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use pascal_fields::TriangleKind;

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        heap(k - 1, a, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
            heap(k - 1, a, out);
        }
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

pub fn cycles(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut count = 0;
    for start in 0..p.len() {
        if !seen[start] {
            count += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = p[i];
            }
        }
    }
    count
}

pub fn descents(p: &[usize]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Visits every restricted growth string of length `len`, i.e. every set
/// partition of `len` labelled points, passing the block count.
pub fn for_each_rgs(len: usize, mut f: impl FnMut(&[usize], usize)) {
    fn go(s: &mut Vec<usize>, len: usize, blocks: usize, f: &mut dyn FnMut(&[usize], usize)) {
        if s.len() == len {
            f(s, blocks);
            return;
        }
        for v in 0..=blocks {
            s.push(v);
            go(s, len, blocks.max(v + 1), f);
            s.pop();
        }
    }
    go(&mut Vec::with_capacity(len), len, 0, &mut f);
}

/// Row `n` of `kind` by direct enumeration of the objects it counts.
pub fn brute_row(kind: TriangleKind, n: usize) -> Vec<u64> {
    let mut row = vec![0u64; n + 1];
    match kind {
        TriangleKind::Pascal => {
            for mask in 0u32..(1 << n) {
                row[mask.count_ones() as usize] += 1;
            }
        }
        TriangleKind::Stirling2 => for_each_rgs(n, |_, blocks| row[blocks] += 1),
        TriangleKind::Stirling1 => {
            for p in permutations(n) {
                row[cycles(&p)] += 1;
            }
        }
        TriangleKind::Euler => {
            if n == 0 {
                row[0] = 1;
            } else {
                for p in permutations(n) {
                    row[descents(&p)] += 1;
                }
            }
        }
    }
    row
}

/// Completion curve `X_0..X_m` of a word: number of distinct letters in each prefix.
pub fn completion_curve(word: &[usize]) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(word.len() + 1);
    out.push(0);
    for &c in word {
        seen.insert(c);
        out.push(seen.len());
    }
    out
}

pub fn admissible(curve: &[usize], k: usize, n: usize) -> bool {
    (0..=k * n).all(|l| k * curve[l] >= l)
}

/// `(admissible, total)` surjections `[kn + 1] -> [n]` counted through set
/// partitions; the completion curve does not see the labels, so both counts
/// carry the same `n!` factor, which is dropped.
pub fn acda_counts_rgs(k: usize, n: usize) -> (u64, u64) {
    let m = k * n + 1;
    let (mut good, mut total) = (0, 0);
    for_each_rgs(m, |s, blocks| {
        if blocks == n {
            total += 1;
            if admissible(&completion_curve(s), k, n) {
                good += 1;
            }
        }
    });
    (good, total)
}

/// `(admissible, total)` over every word `[kn + 1] -> [n]` that is onto.
pub fn acda_counts_words(k: usize, n: usize) -> (u64, u64) {
    let m = k * n + 1;
    let mut word = vec![0usize; m];
    let (mut good, mut total) = (0, 0);
    loop {
        let curve = completion_curve(&word);
        if curve[m] == n {
            total += 1;
            if admissible(&curve, k, n) {
                good += 1;
            }
        }
        // next word in base n
        let mut i = 0;
        loop {
            if i == m {
                return (good, total);
            }
            word[i] += 1;
            if word[i] < n {
                break;
            }
            word[i] = 0;
            i += 1;
        }
    }
}

pub fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Total variation distance between a histogram and a probability vector.
pub fn total_variation(counts: &[u64], probs: &[f64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let len = counts.len().max(probs.len());
    0.5 * (0..len)
        .map(|i| {
            let c = counts.get(i).copied().unwrap_or(0) as f64 / total as f64;
            (c - probs.get(i).copied().unwrap_or(0.0)).abs()
        })
        .sum::<f64>()
}
