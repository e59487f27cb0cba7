//! Unimodality vocabulary for finite sequences.
//!
//! Everything here is generic over `T: Ord`, so it works unchanged on
//! face counts (`BigInt`) and on exact rationals (`BigRational`).

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{invalid, Result};

/// Exact scalar used throughout the crate.
pub type ExactScalar = BigRational;

/// Structure of a sequence with respect to unimodality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnimodalityReport {
    pub is_unimodal: bool,
    /// Indices `i` with `s[..=i]` non-decreasing and `s[i..]` non-increasing.
    pub peak_indices: Vec<usize>,
    /// Indices `i` with `s[j] > s[i] < s[k]` for some `j < i < k`.
    pub dip_indices: Vec<usize>,
    /// Largest `p` with `s[0] < ... < s[p]`.
    pub increasing_prefix_end: usize,
    /// Smallest `q` with `s[q] > ... > s[len - 1]`.
    pub decreasing_suffix_start: usize,
}

pub fn unimodality_report<T: Ord>(s: &[T]) -> Result<UnimodalityReport> {
    if s.is_empty() {
        return Err(invalid("sequence must be nonempty"));
    }
    let n = s.len();

    // nondec_to[i]: s[..=i] is non-decreasing; nonin_from[i]: s[i..] is non-increasing.
    let mut nondec_to = vec![true; n];
    for i in 1..n {
        nondec_to[i] = nondec_to[i - 1] && s[i - 1] <= s[i];
    }
    let mut nonin_from = vec![true; n];
    for i in (0..n - 1).rev() {
        nonin_from[i] = nonin_from[i + 1] && s[i] >= s[i + 1];
    }
    let peak_indices: Vec<usize> = (0..n).filter(|&i| nondec_to[i] && nonin_from[i]).collect();

    // Running maxima from either side decide every dip in one pass each.
    let mut prefix_max: Vec<&T> = Vec::with_capacity(n);
    for (i, x) in s.iter().enumerate() {
        prefix_max.push(if i == 0 { x } else { prefix_max[i - 1].max(x) });
    }
    let mut suffix_max: Vec<&T> = vec![&s[n - 1]; n];
    for i in (0..n - 1).rev() {
        suffix_max[i] = suffix_max[i + 1].max(&s[i]);
    }
    let dip_indices: Vec<usize> = (1..n.saturating_sub(1))
        .filter(|&i| *prefix_max[i - 1] > s[i] && *suffix_max[i + 1] > s[i])
        .collect();

    let increasing_prefix_end = (1..n).take_while(|&i| s[i - 1] < s[i]).last().unwrap_or(0);
    let decreasing_suffix_start = (0..n - 1)
        .rev()
        .take_while(|&i| s[i] > s[i + 1])
        .last()
        .unwrap_or(n - 1);

    Ok(UnimodalityReport {
        is_unimodal: dip_indices.is_empty(),
        peak_indices,
        dip_indices,
        increasing_prefix_end,
        decreasing_suffix_start,
    })
}

pub fn is_symmetric<T: PartialEq>(s: &[T]) -> bool {
    s.iter().eq(s.iter().rev())
}

pub fn is_unimodal<T: Ord>(s: &[T]) -> bool {
    unimodality_report(s).map(|r| r.is_unimodal).unwrap_or(false)
}

/// `s[from] < s[from + 1] < ... < s[to]`; vacuous when `to <= from`.
pub fn strictly_increasing_on<T: Ord>(s: &[T], from: usize, to: usize) -> bool {
    (from..to).all(|i| s[i] < s[i + 1])
}

/// `s[from] > s[from + 1] > ... > s[to]`; vacuous when `to <= from`.
pub fn strictly_decreasing_on<T: Ord>(s: &[T], from: usize, to: usize) -> bool {
    (from..to).all(|i| s[i] > s[i + 1])
}

pub fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}
