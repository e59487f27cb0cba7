//! f-vectors of capped polytopes and neighborly cubical polytopes (NCPs).
//!
//! Naming: `c` is the number of caps glued on, `n` is the vertex exponent of
//! an NCP (it has `2^n` vertices).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cubecore::{binomial, cube_f_vector, pow2, FaceVector};
use crate::error::{invalid, Error, Result};

/// Parameters of a neighborly cubical d-polytope with `2^n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NcpParams {
    d: usize,
    n: usize,
}

impl NcpParams {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d < 2 {
            return Err(invalid(format!("NCP dimension must be at least 2, got {d}")));
        }
        if n < d {
            return Err(invalid(format!("NCP vertex exponent n={n} must be at least d={d}")));
        }
        Ok(Self { d, n })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Per-entry increase of the f-vector caused by one capping operation.
pub fn capping_delta(d: usize) -> Result<Vec<BigInt>> {
    if d < 2 {
        return Err(invalid(format!("capping needs d >= 2, got {d}")));
    }
    let di = d as i64;
    let mut delta: Vec<BigInt> = (0..d - 1)
        .map(|k| {
            let k32 = k as u32;
            pow2(d as u32 - k32) * binomial(di, k as i64) - pow2(d as u32 - k32 - 1) * binomial(di - 1, k as i64)
        })
        .collect();
    delta.push(BigInt::from(2 * (d - 1)));
    Ok(delta)
}

/// `f + c * delta`.
pub fn apply_caps(f: &FaceVector, c: &BigInt) -> Result<FaceVector> {
    if c.is_negative() {
        return Err(invalid("cap count must be nonnegative"));
    }
    let delta = capping_delta(f.dim())?;
    FaceVector::new(f.entries().iter().zip(&delta).map(|(x, dx)| x + c * dx).collect())
}

/// Evaluates the closed NCP formula exactly.
///
/// For odd `d` the formula carries `2^-j` terms; they are summed as rationals
/// and the result must come out integral.
pub fn ncp_f_vector(p: NcpParams) -> Result<FaceVector> {
    let (d, n) = (p.d as i64, p.n as i64);
    let half_top = if d % 2 == 0 { (d - 2) / 2 } else { (d - 3) / 2 };
    let mut out = Vec::with_capacity(p.d);
    for k in 0..d {
        let mut sum = BigRational::zero();
        for i in 0..=half_top {
            let face = binomial(d - i - 1, k - i) + binomial(i, k - d + i + 1);
            sum += BigRational::from_integer(face * binomial(n - d + i, i));
        }
        if d % 2 == 1 {
            let mid = binomial((d - 1) / 2, d - k - 1);
            if !mid.is_zero() {
                for j in 0..=(n - d) {
                    let term = &mid * binomial(n - (d + 3) / 2 - j, n - d - j);
                    sum += BigRational::new(term, pow2(j as u32));
                }
            }
        }
        let value = sum * BigRational::from_integer(pow2((n - k) as u32));
        if !value.is_integer() {
            return Err(Error::InternalConsistency(format!(
                "NCP formula gave non-integral f_{k} = {value} for d={d}, n={n}"
            )));
        }
        out.push(value.to_integer());
    }
    let f = FaceVector::new(out)?;
    if f.entries()[0] != pow2(p.n as u32) {
        return Err(Error::InternalConsistency(format!("NCP f_0 != 2^{n} for d={d}")));
    }
    Ok(f)
}

pub fn capped_ncp_f_vector(p: NcpParams, c: &BigInt) -> Result<FaceVector> {
    apply_caps(&ncp_f_vector(p)?, c)
}

/// `c` capping operations applied to the d-cube.
pub fn capped_cube_f_vector(d: usize, c: &BigInt) -> Result<FaceVector> {
    apply_caps(&cube_f_vector(d)?, c)
}

/// Euler characteristic of the boundary of a d-polytope, `1 - (-1)^d`.
pub fn boundary_euler(d: usize) -> BigInt {
    if d.is_multiple_of(2) {
        BigInt::zero()
    } else {
        BigInt::one() + BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubecore::{f_to_h, validate_adin};
    use crate::seqkit::unimodality_report;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(capping_delta(3).unwrap(), ints(&[4, 8, 4]));
        assert_eq!(capping_delta(2).unwrap(), ints(&[2, 2]));
        assert!(capping_delta(1).is_err());
    }

    #[test]
    fn delta_is_euler_neutral_and_positive() {
        for d in 2..=50 {
            let delta = capping_delta(d).unwrap();
            assert!(delta.iter().all(|x| x.is_positive()));
            let alt = FaceVector::new(delta.clone()).unwrap().euler_sum();
            assert!(alt.is_zero(), "d={d}");
            let r = unimodality_report(&delta).unwrap();
            assert!(r.peak_indices.contains(&((d + 1) / 3)), "d={d} {:?}", r.peak_indices);
            if d >= 3 {
                let r = unimodality_report(&delta[..d - 1]).unwrap();
                assert!(r.peak_indices.contains(&((d + 1) / 3)), "d={d} {:?}", r.peak_indices);
            }
        }
    }

    #[test]
    fn capping_examples() {
        let cube = cube_f_vector(3).unwrap();
        assert_eq!(apply_caps(&cube, &BigInt::one()).unwrap().entries(), ints(&[12, 20, 10]).as_slice());
        assert_eq!(apply_caps(&cube, &BigInt::zero()).unwrap(), cube);
        let twice = apply_caps(&apply_caps(&cube, &BigInt::from(3)).unwrap(), &BigInt::from(4)).unwrap();
        assert_eq!(twice, apply_caps(&cube, &BigInt::from(7)).unwrap());
        assert!(apply_caps(&cube, &BigInt::from(-1)).is_err());
        let p = NcpParams::new(3, 3).unwrap();
        assert_eq!(capped_ncp_f_vector(p, &BigInt::from(2)).unwrap().entries(), ints(&[16, 28, 14]).as_slice());
    }

    #[test]
    fn ncp_on_2_to_the_d_vertices_is_the_cube() {
        for d in 2..=20 {
            assert_eq!(ncp_f_vector(NcpParams::new(d, d).unwrap()).unwrap(), cube_f_vector(d).unwrap(), "d={d}");
        }
    }

    #[test]
    fn ncp_small_cases() {
        let f = ncp_f_vector(NcpParams::new(4, 5).unwrap()).unwrap();
        assert_eq!(f.entries()[0], BigInt::from(32));
        let f = ncp_f_vector(NcpParams::new(5, 6).unwrap()).unwrap();
        assert_eq!(f.euler_sum(), boundary_euler(5));
        assert!(NcpParams::new(4, 3).is_err());
        assert!(NcpParams::new(1, 3).is_err());
    }

    #[test]
    fn ncp_satisfies_euler_and_adin() {
        for d in 2..=10 {
            for n in d..=d + 6 {
                let f = ncp_f_vector(NcpParams::new(d, n).unwrap()).unwrap();
                assert_eq!(f.euler_sum(), boundary_euler(d), "d={d} n={n}");
                assert!(validate_adin(&f_to_h(&f).unwrap()).all(), "d={d} n={n}");
                assert!(unimodality_report(f.entries()).unwrap().is_unimodal, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn capped_cubes_are_cubical_and_peak_late_third() {
        for d in 2..=40 {
            for c in [1u64, 10, 1_000_000, 1_000_000_000] {
                let f = capped_cube_f_vector(d, &BigInt::from(c)).unwrap();
                if c <= 1_000_000 {
                    assert!(validate_adin(&f_to_h(&f).unwrap()).all(), "d={d} c={c}");
                }
                let r = unimodality_report(f.entries()).unwrap();
                assert!(r.peak_indices.contains(&((d + 1) / 3)), "d={d} c={c} {:?}", r.peak_indices);
            }
        }
    }

    // The limiting peak sits at floor(2d/3) - 1 whenever d = 0, 2, 3 mod 6,
    // where the tail is already strictly decreasing from that index.
    #[test]
    fn ncp_peak_drifts_to_two_thirds() {
        for (d, limit, settles_from) in [(6usize, 3usize, 9usize), (8, 4, 12), (10, 6, 34), (12, 7, 26)] {
            let u = 2 * d / 3;
            assert!(limit == u || limit + 1 == u);
            for n in d..=d + 150 {
                let f = ncp_f_vector(NcpParams::new(d, n).unwrap()).unwrap();
                let peaks = unimodality_report(f.entries()).unwrap().peak_indices;
                if n >= settles_from {
                    assert_eq!(peaks, vec![limit], "d={d} n={n}");
                } else if n + 1 == settles_from {
                    assert_ne!(peaks, vec![limit], "d={d} n={n}");
                }
            }
        }
    }
}
