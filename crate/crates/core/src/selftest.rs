//! Bounded, deterministic checks behind the `selftest` command.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::constructions::{capping_delta, ncp_f_vector, NcpParams};
use crate::cubecore::{
    cube_f_vector, f_to_h_rational, h_to_f_rational, partial_unimodality_check, pow2, verify_lemma1, verify_lemma2,
    FaceVector, ShortHVector,
};
use crate::feasibility::{expand_reduced, reduced_vars, refute_dimension};
use crate::search::verify_paper_counterexample;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_string(), passed, detail: detail.into() }
}

/// `(d, i, k)` with `d <= d_max` where the peak chain of `H(i,*) + H(k,*)` fails.
pub fn lemma2_failures(d_max: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for d in 1..=d_max {
        for i in 0..d {
            for k in i..d {
                if !verify_lemma2(d, i, k).unwrap_or(false) {
                    out.push((d, i, k));
                }
            }
        }
    }
    out
}

/// A spread of valid reduced h-vectors (positive, nondecreasing) for dimension `d`.
fn sample_valid_h(d: usize) -> Vec<ShortHVector> {
    let m = reduced_vars(d);
    let shapes: [&dyn Fn(usize) -> i64; 5] = [
        &|_| 1,
        &|t| 1 + t as i64,
        &|t| 1 + (t * t) as i64,
        &|t| if t + 1 == m { 1_000_000 } else { 1 },
        &|t| 1 << (2 * t).min(19),
    ];
    shapes
        .iter()
        .map(|f| {
            let g: Vec<BigInt> = (0..m).map(|t| BigInt::from(f(t))).collect();
            ShortHVector::from_integers(expand_reduced(&g, d)).expect("nonempty")
        })
        .collect()
}

pub fn run_all() -> Vec<Check> {
    let mut out = Vec::new();

    let bad: Vec<usize> = (1..=50).filter(|&d| !verify_lemma1(d)).collect();
    out.push(check("lemma1 (d <= 50)", bad.is_empty(), format!("failing d: {bad:?}")));

    let fails = lemma2_failures(30);
    let family: Vec<(usize, usize, usize)> = (2..=30).map(|d| (d, d - 2, d - 1)).collect();
    out.push(check(
        "lemma2 exceptions are exactly (d, d-2, d-1) (d <= 30)",
        fails == family,
        format!("{} failing triples", fails.len()),
    ));
    let paired_ok = (3..=30).all(|d| (0..=(d - 1) / 2).all(|i| verify_lemma2(d, i, d - 1 - i).unwrap_or(false)));
    out.push(check("lemma2 on basis pairs (3 <= d <= 30)", paired_ok, ""));

    let round_trip = (1..=30).all(|d| {
        let h: Vec<BigRational> = (0..d).map(|i| BigRational::new(BigInt::from(i * i) - 7, BigInt::from(i + 1))).collect();
        let h = ShortHVector::new(h).expect("nonempty");
        f_to_h_rational(&h_to_f_rational(&h).unwrap()).unwrap() == h
    });
    out.push(check("f <-> h round trip (d <= 30)", round_trip, ""));

    let cube_h = (1..=12).all(|d| {
        let f = cube_f_vector(d).unwrap();
        f_to_h_rational(&f.to_rational()).unwrap().entries().iter().all(|x| *x == BigRational::from_integer(pow2(d as u32)))
    });
    out.push(check("cube h-vector is constant 2^d (d <= 12)", cube_h, ""));

    let mut t1_bad = Vec::new();
    for d in 3..=60 {
        for h in sample_valid_h(d) {
            let f = h_to_f_rational(&h).unwrap();
            if !partial_unimodality_check(&f).unwrap().holds() {
                t1_bad.push(d);
            }
        }
    }
    out.push(check("partial unimodality on sampled h (3 <= d <= 60)", t1_bad.is_empty(), format!("failing d: {t1_bad:?}")));

    let euler = (2..=50).all(|d| FaceVector::new(capping_delta(d).unwrap()).unwrap().euler_sum().is_zero());
    out.push(check("capping keeps the Euler sum (d <= 50)", euler, ""));
    let ncp_cube = (2..=20).all(|d| ncp_f_vector(NcpParams::new(d, d).unwrap()).unwrap() == cube_f_vector(d).unwrap());
    out.push(check("NCP with n = d is the cube (d <= 20)", ncp_cube, ""));

    let mut refute_detail = String::new();
    let refuted = (2..=10).all(|d| match refute_dimension(d) {
        Ok(r) => {
            let ok = r.refuted() && r.replay_all().is_ok();
            if !ok {
                refute_detail = format!("d = {d}");
            }
            ok
        }
        Err(e) => {
            refute_detail = e.to_string();
            false
        }
    });
    out.push(check("every dip pattern refuted with replayed certificates (2 <= d <= 10)", refuted, refute_detail));

    let paper = verify_paper_counterexample().map(|r| r.ok()).unwrap_or(false);
    out.push(check("published d = 12 counterexample", paper, ""));
    out
}
