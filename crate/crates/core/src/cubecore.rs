//! Cube face vectors, the f ↔ short cubical h transform and the structural
//! checks built on top of it.
//!
//! The transform matrix is `H(i, j) = 2^-j * C(d-i-1, d-j-1)`. It is upper
//! triangular with nonzero diagonal, so both directions of the transform are
//! triangular substitutions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::seqkit::{self, strictly_decreasing_on, strictly_increasing_on};

/// `C(n, k)`, zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

pub fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

/// Face counts `f_0 .. f_{d-1}` of a d-polytope.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FaceVector(Vec<BigInt>);

impl FaceVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid("face vector must have at least one entry"));
        }
        if let Some(k) = entries.iter().position(|x| x.is_negative()) {
            return Err(invalid(format!("face count f_{k} is negative")));
        }
        Ok(Self(entries))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        seqkit::to_rational(&self.0)
    }

    /// `sum (-1)^k f_k`.
    pub fn euler_sum(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (k, f)| if k % 2 == 0 { acc + f } else { acc - f })
    }
}

/// Short cubical h-vector; entries are rationals so that arbitrary points of
/// h-space (e.g. feasibility witnesses) can be pushed through the transform.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShortHVector(Vec<BigRational>);

impl ShortHVector {
    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid("h-vector must have at least one entry"));
        }
        Ok(Self(entries))
    }

    pub fn from_integers(entries: Vec<BigInt>) -> Result<Self> {
        Self::new(seqkit::to_rational(&entries))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigRational> {
        self.0
    }
}

/// The `d x d` transform matrix, kept as integer binomials plus the column
/// scale `2^-j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformMatrix {
    d: usize,
    // binoms[i][j] = C(d-i-1, d-j-1)
    binoms: Vec<Vec<BigInt>>,
}

impl TransformMatrix {
    fn compute(d: usize) -> Self {
        let di = d as i64;
        let binoms = (0..di)
            .map(|i| (0..di).map(|j| binomial(di - i - 1, di - j - 1)).collect())
            .collect();
        Self { d, binoms }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(self.binoms[i][j].clone(), pow2(j as u32))
    }

    pub fn row(&self, i: usize) -> Vec<BigRational> {
        (0..self.d).map(|j| self.entry(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.d).map(|i| self.row(i)).collect()
    }

    /// Integer part `C(d-i-1, d-j-1)` of an entry.
    pub fn binomial_part(&self, i: usize, j: usize) -> &BigInt {
        &self.binoms[i][j]
    }
}

fn matrix_cache() -> &'static Mutex<HashMap<usize, Arc<TransformMatrix>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<TransformMatrix>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn build_transform_matrix(d: usize) -> Result<Arc<TransformMatrix>> {
    if d < 1 {
        return Err(invalid("dimension must be at least 1"));
    }
    if let Some(m) = matrix_cache().lock().unwrap().get(&d) {
        return Ok(Arc::clone(m));
    }
    // Built outside the lock; a racing insert stores an identical matrix.
    let m = Arc::new(TransformMatrix::compute(d));
    Ok(Arc::clone(matrix_cache().lock().unwrap().entry(d).or_insert(m)))
}

/// `f_k = 2^(d-k) * C(d, k)` for `k < d`.
pub fn cube_f_vector(d: usize) -> Result<FaceVector> {
    if d < 1 {
        return Err(invalid("dimension must be at least 1"));
    }
    let di = d as i64;
    Ok(FaceVector(
        (0..d).map(|k| pow2((d - k) as u32) * binomial(di, k as i64)).collect(),
    ))
}

/// Exact row-vector product `h * H`.
pub fn h_to_f_rational(h: &ShortHVector) -> Result<Vec<BigRational>> {
    let d = h.dim();
    let m = build_transform_matrix(d)?;
    // Put h over a common denominator so the inner sums stay in integers.
    let den = h.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = h.0.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    Ok((0..d)
        .map(|j| {
            let mut acc = BigInt::zero();
            for (i, hi) in scaled.iter().enumerate().take(j + 1) {
                acc += hi * m.binomial_part(i, j);
            }
            BigRational::new(acc, &den << j)
        })
        .collect())
}

/// `h * H` with integrality asserted on every entry.
pub fn h_to_f(h: &ShortHVector) -> Result<FaceVector> {
    let f = h_to_f_rational(h)?;
    let mut out = Vec::with_capacity(f.len());
    for (index, x) in f.into_iter().enumerate() {
        if !x.is_integer() {
            return Err(Error::NonIntegral { index, value: x.to_string() });
        }
        out.push(x.to_integer());
    }
    FaceVector::new(out)
}

/// Solves `f = h * H` by forward substitution over the columns of `H`.
pub fn f_to_h_rational(f: &[BigRational]) -> Result<ShortHVector> {
    let d = f.len();
    let m = build_transform_matrix(d)?;
    let mut h: Vec<BigRational> = Vec::with_capacity(d);
    for j in 0..d {
        let mut rest = f[j].clone();
        for (i, hi) in h.iter().enumerate() {
            let b = m.binomial_part(i, j);
            if !b.is_zero() {
                rest -= hi * BigRational::new(b.clone(), pow2(j as u32));
            }
        }
        // H(j, j) = 2^-j
        h.push(rest * BigRational::from_integer(pow2(j as u32)));
    }
    ShortHVector::new(h)
}

pub fn f_to_h(f: &FaceVector) -> Result<ShortHVector> {
    f_to_h_rational(&f.to_rational())
}

/// The three conditions every short cubical h-vector of a cubical polytope
/// satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub positive_integers: bool,
    pub symmetric: bool,
    pub unimodal: bool,
}

impl ValidationReport {
    pub fn all(&self) -> bool {
        self.positive_integers && self.symmetric && self.unimodal
    }
}

pub fn validate_adin(h: &ShortHVector) -> ValidationReport {
    ValidationReport {
        positive_integers: h.0.iter().all(|x| x.is_integer() && x.is_positive()),
        symmetric: seqkit::is_symmetric(&h.0),
        unimodal: seqkit::is_unimodal(&h.0),
    }
}

/// `floor((d + 2i) / 3)`, the peak position shared by row `i` of `H` and by
/// `b^i`.
pub fn row_peak(d: usize, i: usize) -> usize {
    (d + 2 * i) / 3
}

/// `b^i = H(i,*) + H(d-i-1,*)`, or `H(i,*)` alone when `2i = d-1`.
pub fn basis_vector(d: usize, i: usize) -> Result<Vec<BigRational>> {
    if d < 1 {
        return Err(invalid("dimension must be at least 1"));
    }
    if i > (d - 1) / 2 {
        return Err(invalid(format!("basis index {i} exceeds floor((d-1)/2) = {}", (d - 1) / 2)));
    }
    let m = build_transform_matrix(d)?;
    let mirror = d - 1 - i;
    Ok((0..d)
        .map(|j| {
            if mirror == i {
                m.entry(i, j)
            } else {
                m.entry(i, j) + m.entry(mirror, j)
            }
        })
        .collect())
}

/// `a[from] < ... < a[peak-1] <= a[peak] > ... > a[d-1]`.
fn peak_chain_holds(a: &[BigRational], from: usize, peak: usize) -> bool {
    let rising = peak == from || (strictly_increasing_on(a, from, peak - 1) && a[peak - 1] <= a[peak]);
    rising && strictly_decreasing_on(a, peak, a.len() - 1)
}

/// Checks both parts of the row structure of `H`: every row rises strictly to
/// `floor((d+2i)/3)` and falls strictly after it (with the extra tie exactly
/// when `d - i = 0 mod 3`), and the Pascal recursion
/// `H(i,j) = H(i+1,j) + 2 H(i+1,j+1)`.
pub fn verify_lemma1(d: usize) -> bool {
    let Ok(m) = build_transform_matrix(d) else {
        return false;
    };
    let rows = m.rows();
    for (i, row) in rows.iter().enumerate() {
        let p = row_peak(d, i);
        if p < i || p >= d || !peak_chain_holds(row, i, p) {
            return false;
        }
        let tie = p > i && row[p - 1] == row[p];
        if tie != (d - i).is_multiple_of(3) {
            return false;
        }
        let Ok(report) = seqkit::unimodality_report(&row[i..]) else {
            return false;
        };
        let expected: Vec<usize> = if tie { vec![p - 1 - i, p - i] } else { vec![p - i] };
        if report.peak_indices != expected {
            return false;
        }
    }
    let two = BigRational::from_integer(BigInt::from(2));
    for i in 0..d.saturating_sub(1) {
        for j in 0..d - 1 {
            if rows[i][j] != &rows[i + 1][j] + &two * &rows[i + 1][j + 1] {
                return false;
            }
        }
    }
    true
}

/// Checks the peak chain of `a_j = H(i,j) + H(k,j)`.
///
/// Both rows vanish below column `i`, so the chain is read from column `i`
/// onward, the same range used for the rows of `H` themselves.
pub fn verify_lemma2(d: usize, i: usize, k: usize) -> Result<bool> {
    if d < 1 || i > k || k >= d {
        return Err(invalid(format!("need 0 <= i <= k <= d-1, got d={d}, i={i}, k={k}")));
    }
    let m = build_transform_matrix(d)?;
    let a: Vec<BigRational> = (0..d).map(|j| m.entry(i, j) + m.entry(k, j)).collect();
    Ok(peak_chain_holds(&a, i, row_peak(d, i)))
}

/// Outcome of the one-third / two-thirds monotonicity checks on an f-vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialUnimodalityReport {
    pub d: usize,
    /// `f_0 < ... < f_{t-1} <= f_t` with `t = floor(d/3)`.
    pub head_increasing: bool,
    /// `f_u > ... > f_{d-1}` with `u = floor(2d/3)`.
    pub tail_decreasing: bool,
    /// Whether the strengthened tail bound applies (`d = 0, 2, 3 mod 6`, `d >= 3`).
    pub strengthened_tail_applies: bool,
    /// `f_{u-1} > f_u > ... > f_{d-1}`; `None` when it does not apply.
    pub strengthened_tail_decreasing: Option<bool>,
    /// The index range `floor(d/3) ..= floor(2d/3)`.
    pub dip_zone: (usize, usize),
    /// Positions where a dip is still possible once the head and tail bounds
    /// hold (strictly between the increasing head and decreasing tail).
    pub possible_dip_positions: Vec<usize>,
    pub dip_indices: Vec<usize>,
}

impl PartialUnimodalityReport {
    pub fn holds(&self) -> bool {
        self.head_increasing && self.tail_decreasing && self.strengthened_tail_decreasing.unwrap_or(true)
    }
}

pub fn partial_unimodality_check<T: Ord>(f: &[T]) -> Result<PartialUnimodalityReport> {
    let d = f.len();
    if d < 2 {
        return Err(invalid("partial unimodality needs d >= 2"));
    }
    let t = d / 3;
    let u = 2 * d / 3;
    let head_increasing = t == 0 || (strictly_increasing_on(f, 0, t - 1) && f[t - 1] <= f[t]);
    let tail_decreasing = strictly_decreasing_on(f, u, d - 1);
    let strengthened_tail_applies = d >= 3 && matches!(d % 6, 0 | 2 | 3);
    let strengthened_tail_decreasing =
        strengthened_tail_applies.then(|| strictly_decreasing_on(f, u - 1, d - 1));
    let tail_start = if strengthened_tail_applies { u - 1 } else { u };
    let possible_dip_positions = (t + 1..tail_start).collect();
    let report = seqkit::unimodality_report(f)?;
    Ok(PartialUnimodalityReport {
        d,
        head_increasing,
        tail_decreasing,
        strengthened_tail_applies,
        strengthened_tail_decreasing,
        dip_zone: (t, u),
        possible_dip_positions,
        dip_indices: report.dip_indices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn cube_vectors() {
        assert_eq!(cube_f_vector(1).unwrap().entries(), ints(&[2]).as_slice());
        assert_eq!(cube_f_vector(3).unwrap().entries(), ints(&[8, 12, 6]).as_slice());
        assert!(cube_f_vector(0).is_err());
        let r = seqkit::unimodality_report(cube_f_vector(9).unwrap().entries()).unwrap();
        assert_eq!(r.peak_indices, vec![3]);
    }

    #[test]
    fn cube_monotonicity_up_to_200() {
        for d in 1..=200 {
            let f = cube_f_vector(d).unwrap();
            let f = f.entries();
            assert!(strictly_increasing_on(f, 0, d / 3), "d={d}");
            assert!(strictly_decreasing_on(f, (d + 1) / 3, d - 1), "d={d}");
        }
    }

    #[test]
    fn matrix_entries_d3() {
        let m = build_transform_matrix(3).unwrap();
        assert_eq!(m.row(0), vec![q(1, 1), q(1, 1), q(1, 4)]);
        assert_eq!(m.row(2), vec![q(0, 1), q(0, 1), q(1, 4)]);
        assert!(build_transform_matrix(0).is_err());
    }

    #[test]
    fn matrix_shape_and_rows_are_scaled_cubes() {
        for d in 1..=15 {
            let m = build_transform_matrix(d).unwrap();
            let scale = BigRational::new(BigInt::one(), pow2(d as u32 - 1));
            for i in 0..d {
                assert_eq!(m.entry(i, i), BigRational::new(BigInt::one(), pow2(i as u32)));
                for j in 0..i {
                    assert!(m.entry(i, j).is_zero());
                }
                // Zeros, then 2^(1-d) times the (d-i-1)-cube face vector with a trailing 1.
                let mut cube: Vec<BigInt> = if d - i - 1 >= 1 {
                    cube_f_vector(d - i - 1).unwrap().into_entries()
                } else {
                    vec![]
                };
                cube.push(BigInt::one());
                for (off, c) in cube.iter().enumerate() {
                    assert_eq!(m.entry(i, i + off), BigRational::from_integer(c.clone()) * &scale, "d={d} i={i}");
                }
            }
        }
    }

    #[test]
    fn transform_examples() {
        let h = ShortHVector::from_integers(ints(&[8, 8, 8])).unwrap();
        assert_eq!(h_to_f(&h).unwrap().entries(), ints(&[8, 12, 6]).as_slice());
        let h = ShortHVector::from_integers(ints(&[4, 4])).unwrap();
        assert_eq!(h_to_f(&h).unwrap().entries(), ints(&[4, 4]).as_slice());
        let f = FaceVector::new(ints(&[4, 4])).unwrap();
        assert_eq!(f_to_h(&f).unwrap().entries(), &[q(4, 1), q(4, 1)]);
    }

    #[test]
    fn non_integral_result_is_reported() {
        let h = ShortHVector::from_integers(ints(&[1, 0, 0])).unwrap();
        assert!(matches!(h_to_f(&h), Err(Error::NonIntegral { index: 2, .. })));
        assert_eq!(h_to_f_rational(&h).unwrap()[2], q(1, 4));
    }

    #[test]
    fn adin_examples() {
        let v = validate_adin(&ShortHVector::from_integers(ints(&[8, 8, 8])).unwrap());
        assert!(v.all());
        let v = validate_adin(&ShortHVector::from_integers(ints(&[1, 2, 1, 2])).unwrap());
        assert!(!v.symmetric);
        let v = validate_adin(&ShortHVector::new(vec![q(1, 2), q(1, 2)]).unwrap());
        assert!(!v.positive_integers && v.symmetric);
    }

    #[test]
    fn basis_vectors_d3() {
        assert_eq!(basis_vector(3, 0).unwrap(), vec![q(1, 1), q(1, 1), q(1, 2)]);
        assert_eq!(basis_vector(3, 1).unwrap(), vec![q(0, 1), q(1, 2), q(1, 4)]);
        assert!(basis_vector(3, 2).is_err());
    }

    #[test]
    fn lemma_examples_d3() {
        let m = build_transform_matrix(3).unwrap();
        assert_eq!(row_peak(3, 1), 1);
        assert_eq!(m.entry(0, 1), m.entry(1, 1) + q(2, 1) * m.entry(1, 2));
        assert!(verify_lemma2(3, 0, 2).unwrap());
        assert!(verify_lemma2(3, 2, 1).is_err());
        assert!(verify_lemma2(3, 0, 3).is_err());
    }

    #[test]
    fn lemma2_diagonal_matches_lemma1() {
        for d in 1..=20 {
            let l1 = verify_lemma1(d);
            for i in 0..d {
                assert_eq!(verify_lemma2(d, i, i).unwrap(), l1, "d={d} i={i}");
            }
        }
    }

    #[test]
    fn partial_unimodality_cube12() {
        let f = cube_f_vector(12).unwrap();
        let r = partial_unimodality_check(f.entries()).unwrap();
        assert!(r.holds());
        assert_eq!(r.dip_zone, (4, 8));
        assert_eq!(r.possible_dip_positions, vec![5, 6]);
        assert!(r.dip_indices.is_empty());
        assert!(partial_unimodality_check(&[1]).is_err());
    }

    #[test]
    fn polygon_is_outside_strengthened_tail() {
        let r = partial_unimodality_check(&ints(&[7, 7])).unwrap();
        assert!(!r.strengthened_tail_applies);
        assert!(r.holds());
    }
}
