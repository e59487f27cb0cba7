//! Counterexample search over NCPs with caps glued on.
//!
//! With `c` caps on an NCP of dimension `d` with `2^n` vertices the face
//! vector is `f(c) = f_ncp + c * delta`, linear in `c`. A dip pattern
//! therefore holds on an interval of cap counts, found exactly by solving
//! two linear inequalities.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{capped_ncp_f_vector, capping_delta, ncp_f_vector, NcpParams};
use crate::cubecore::{partial_unimodality_check, pow2, PartialUnimodalityReport};
use crate::error::{invalid, Error, Result};
use crate::feasibility::DipPattern;
use crate::seqkit;

/// One end of an interval of cap counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    Unbounded,
    Closed(BigRational),
    Open(BigRational),
}

impl Endpoint {
    fn value(&self) -> Option<&BigRational> {
        match self {
            Endpoint::Unbounded => None,
            Endpoint::Closed(v) | Endpoint::Open(v) => Some(v),
        }
    }

    fn is_open(&self) -> bool {
        !matches!(self, Endpoint::Closed(_))
    }
}

/// A nonempty interval of real cap counts; emptiness is `None` at the API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapsInterval {
    pub lower: Endpoint,
    pub upper: Endpoint,
}

impl CapsInterval {
    pub fn everything() -> Self {
        Self { lower: Endpoint::Unbounded, upper: Endpoint::Unbounded }
    }

    pub fn contains(&self, c: &BigRational) -> bool {
        let above = match &self.lower {
            Endpoint::Unbounded => true,
            Endpoint::Closed(v) => c >= v,
            Endpoint::Open(v) => c > v,
        };
        let below = match &self.upper {
            Endpoint::Unbounded => true,
            Endpoint::Closed(v) => c <= v,
            Endpoint::Open(v) => c < v,
        };
        above && below
    }

    pub fn contains_int(&self, c: &BigInt) -> bool {
        self.contains(&BigRational::from_integer(c.clone()))
    }

    /// Intersection with another interval; `None` when empty.
    pub fn intersect(&self, other: &CapsInterval) -> Option<CapsInterval> {
        fn tighter(a: &Endpoint, b: &Endpoint, lower: bool) -> Endpoint {
            match (a.value(), b.value()) {
                (None, _) => b.clone(),
                (_, None) => a.clone(),
                (Some(x), Some(y)) if x == y => {
                    if a.is_open() {
                        a.clone()
                    } else {
                        b.clone()
                    }
                }
                (Some(x), Some(y)) => {
                    if (x > y) == lower {
                        a.clone()
                    } else {
                        b.clone()
                    }
                }
            }
        }
        let out = CapsInterval {
            lower: tighter(&self.lower, &other.lower, true),
            upper: tighter(&self.upper, &other.upper, false),
        };
        let nonempty = match (out.lower.value(), out.upper.value()) {
            (Some(l), Some(u)) => l < u || (l == u && !out.lower.is_open() && !out.upper.is_open()),
            _ => true,
        };
        nonempty.then_some(out)
    }

    /// Smallest integer in the interval, if it is bounded below and has one.
    pub fn smallest_integer(&self) -> Option<BigInt> {
        let c = match &self.lower {
            Endpoint::Unbounded => return None,
            Endpoint::Closed(v) => v.ceil().to_integer(),
            Endpoint::Open(v) => v.floor().to_integer() + BigInt::one(),
        };
        self.contains_int(&c).then_some(c)
    }

    /// Largest integer in the interval, if it is bounded above and has one.
    pub fn largest_integer(&self) -> Option<BigInt> {
        let c = match &self.upper {
            Endpoint::Unbounded => return None,
            Endpoint::Closed(v) => v.floor().to_integer(),
            Endpoint::Open(v) => v.ceil().to_integer() - BigInt::one(),
        };
        self.contains_int(&c).then_some(c)
    }
}

impl fmt::Display for CapsInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lower {
            Endpoint::Unbounded => write!(f, "(-inf")?,
            Endpoint::Closed(v) => write!(f, "[{v}")?,
            Endpoint::Open(v) => write!(f, "({v}")?,
        }
        match &self.upper {
            Endpoint::Unbounded => write!(f, ", +inf)"),
            Endpoint::Closed(v) => write!(f, ", {v}]"),
            Endpoint::Open(v) => write!(f, ", {v})"),
        }
    }
}

/// Solution set of `a + b c > 0` over the reals.
fn positive_linear(a: &BigInt, b: &BigInt) -> Option<CapsInterval> {
    if b.is_zero() {
        return a.is_positive().then(CapsInterval::everything);
    }
    let root = BigRational::new(-a, b.clone());
    Some(if b.is_positive() {
        CapsInterval { lower: Endpoint::Open(root), upper: Endpoint::Unbounded }
    } else {
        CapsInterval { lower: Endpoint::Unbounded, upper: Endpoint::Open(root) }
    })
}

/// Exact set of cap counts `c >= 0` for which `f(c)` dips in pattern `p`,
/// or `None` when no real `c` works.
pub fn dip_caps_interval(d: usize, n: usize, p: DipPattern) -> Result<Option<CapsInterval>> {
    let params = NcpParams::new(d, n)?;
    if !p.fits(d) {
        return Err(invalid(format!("pattern ({}, {}, {}) does not fit dimension {d}", p.j, p.i, p.k)));
    }
    let base = ncp_f_vector(params)?;
    let delta = capping_delta(d)?;
    Ok(interval_from_parts(base.entries(), &delta, p))
}

fn interval_from_parts(base: &[BigInt], delta: &[BigInt], p: DipPattern) -> Option<CapsInterval> {
    let nonneg = CapsInterval { lower: Endpoint::Closed(BigRational::zero()), upper: Endpoint::Unbounded };
    let left = positive_linear(&(&base[p.j] - &base[p.i]), &(&delta[p.j] - &delta[p.i]))?;
    let right = positive_linear(&(&base[p.k] - &base[p.i]), &(&delta[p.k] - &delta[p.i]))?;
    nonneg.intersect(&left)?.intersect(&right)
}

/// A concrete capped NCP whose f-vector dips.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleSpec {
    pub d: usize,
    pub n: usize,
    #[serde(serialize_with = "crate::decimal::ser_display")]
    pub c: BigInt,
    pub pattern: DipPattern,
    /// `(f_j, f_i, f_k)`.
    #[serde(serialize_with = "crate::decimal::ser_display_vec")]
    pub f_digest: Vec<BigInt>,
    #[serde(serialize_with = "ser_interval")]
    pub interval: CapsInterval,
}

fn ser_interval<S: serde::Serializer>(i: &CapsInterval, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(i)
}

/// Smallest integer cap count producing a dip on the `(d, n)` NCP; ties go to
/// the lexicographically smallest pattern.
pub fn find_counterexample(d: usize, n: usize) -> Result<Option<CounterexampleSpec>> {
    let params = NcpParams::new(d, n)?;
    let base = ncp_f_vector(params)?;
    let delta = capping_delta(d)?;
    let candidates: Vec<(BigInt, DipPattern, CapsInterval)> = DipPattern::all(d)
        .into_par_iter()
        .filter_map(|p| {
            let iv = interval_from_parts(base.entries(), &delta, p)?;
            let c = iv.smallest_integer()?;
            Some((c, p, iv))
        })
        .collect();
    let Some((c, pattern, interval)) = candidates.into_iter().min_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1))) else {
        return Ok(None);
    };
    let f = capped_ncp_f_vector(params, &c)?;
    let e = f.entries();
    if !(e[pattern.j] > e[pattern.i] && e[pattern.i] < e[pattern.k]) {
        return Err(Error::InternalConsistency(format!("dip for d={d}, n={n}, c={c} does not survive construction")));
    }
    Ok(Some(CounterexampleSpec {
        d,
        n,
        c,
        pattern,
        f_digest: vec![e[pattern.j].clone(), e[pattern.i].clone(), e[pattern.k].clone()],
        interval,
    }))
}

/// Smallest `n` in `d..=n_max` whose NCP can be capped into a dip.
pub fn minimal_vertex_exponent(d: usize, n_max: usize) -> Result<Option<usize>> {
    if n_max < d {
        return Err(invalid(format!("n_max={n_max} must be at least d={d}")));
    }
    for n in d..=n_max {
        if find_counterexample(d, n)?.is_some() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Parameters of the published 12-dimensional counterexample.
pub const PAPER_D: usize = 12;
pub const PAPER_N: usize = 131;

/// `1.841 * 10^42` caps, read as the exact integer `1841 * 10^39`.
pub fn paper_cap_count() -> BigInt {
    BigInt::from(1841) * BigInt::from(10).pow(39)
}

/// Leading digits and length of the published vertex count `3.770370722 * 10^45`.
pub const PAPER_VERTEX_DIGITS: &str = "3770370722";
pub const PAPER_VERTEX_DIGIT_COUNT: usize = 46;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub d: usize,
    pub n: usize,
    #[serde(serialize_with = "crate::decimal::ser_display")]
    pub c: BigInt,
    #[serde(serialize_with = "crate::decimal::ser_display_vec")]
    pub f: Vec<BigInt>,
    pub dip_4_5_6: bool,
    pub dip_indices: Vec<usize>,
    pub vertex_digit_count: usize,
    pub vertex_leading_digits: String,
    pub vertex_count_matches: bool,
    /// `f_0 = 2^131 + delta_0 * c` with `delta_0 = 2048`.
    pub vertex_identity_holds: bool,
    pub partial_unimodality: PartialUnimodalityReport,
    #[serde(serialize_with = "ser_interval")]
    pub interval: CapsInterval,
    pub interval_contains_c: bool,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.dip_4_5_6
            && self.dip_indices == [5]
            && self.vertex_count_matches
            && self.vertex_identity_holds
            && self.partial_unimodality.holds()
            && self.interval_contains_c
    }
}

/// Rebuilds the published counterexample and checks every claim made about it.
pub fn verify_paper_counterexample() -> Result<VerificationReport> {
    let (d, n, c) = (PAPER_D, PAPER_N, paper_cap_count());
    let params = NcpParams::new(d, n)?;
    let f = capped_ncp_f_vector(params, &c)?.into_entries();
    let report = seqkit::unimodality_report(&f)?;
    let digits = f[0].to_string();
    let leading: String = digits.chars().take(PAPER_VERTEX_DIGITS.len()).collect();
    let pattern = DipPattern::new(4, 5, 6)?;
    let interval = dip_caps_interval(d, n, pattern)?
        .ok_or_else(|| Error::InternalConsistency("no cap count gives the published dip".into()))?;
    Ok(VerificationReport {
        d,
        n,
        dip_4_5_6: f[4] > f[5] && f[5] < f[6],
        dip_indices: report.dip_indices,
        vertex_digit_count: digits.len(),
        vertex_count_matches: digits.len() == PAPER_VERTEX_DIGIT_COUNT && leading == PAPER_VERTEX_DIGITS,
        vertex_leading_digits: leading,
        vertex_identity_holds: f[0] == pow2(n as u32) + BigInt::from(2048) * &c,
        partial_unimodality: partial_unimodality_check(&f)?,
        interval_contains_c: interval.contains_int(&c),
        interval,
        c,
        f,
    })
}
