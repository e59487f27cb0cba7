use cubical::constructions::{capped_ncp_f_vector, NcpParams};
use cubical::cubecore::{basis_vector, f_to_h_rational, h_to_f_rational, ShortHVector};
use cubical::feasibility::{
    build_dip_system, find_h_witness, fourier_motzkin, refute_dimension, replay_certificate, ConstraintSystem,
    DipPattern, FeasibilityOutcome, LinConstraint, Relation,
};
use cubical::search::{dip_caps_interval, find_counterexample, minimal_vertex_exponent, paper_cap_count};
use cubical::seqkit::{is_symmetric, is_unimodal};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rational_vec(max_len: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-500i64..500, 1i64..40), 1..=max_len)
        .prop_map(|v| v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect())
}

proptest! {
    #[test]
    fn transform_round_trips(h in rational_vec(30)) {
        let h = ShortHVector::new(h).unwrap();
        let f = h_to_f_rational(&h).unwrap();
        prop_assert_eq!(f_to_h_rational(&f).unwrap(), h);
    }

    #[test]
    fn symmetric_h_decomposes_over_basis(half in prop::collection::vec(-100i64..100, 1..=12), odd in any::<bool>()) {
        let d = 2 * half.len() - usize::from(odd);
        if d == 0 {
            return Ok(());
        }
        let h: Vec<BigRational> = (0..d).map(|t| q(half[t.min(d - 1 - t)])).collect();
        let f = h_to_f_rational(&ShortHVector::new(h.clone()).unwrap()).unwrap();
        let mut sum = vec![BigRational::zero(); d];
        for i in 0..=(d - 1) / 2 {
            for (acc, b) in sum.iter_mut().zip(basis_vector(d, i).unwrap()) {
                *acc += &h[i] * b;
            }
        }
        prop_assert_eq!(sum, f);
    }
}

// ---- Fourier–Motzkin against a brute-force grid ----------------------------

fn grid_points(vars: usize) -> Vec<Vec<BigRational>> {
    let axis: Vec<BigRational> = if vars <= 2 {
        (-36..=36).map(|k| BigRational::new(k.into(), 6.into())).collect()
    } else {
        (-8..=8).map(|k| BigRational::new(k.into(), 2.into())).collect()
    };
    let mut pts = vec![Vec::new()];
    for _ in 0..vars {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |x| {
                    let mut p = p.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    pts
}

fn random_system() -> impl Strategy<Value = ConstraintSystem> {
    (1usize..=3).prop_flat_map(|vars| {
        prop::collection::vec((prop::collection::vec(-3i64..=3, vars), -3i64..=3, any::<bool>()), 1..=5).prop_map(
            move |rows| {
                let mut sys = ConstraintSystem::new(vars);
                for (n, (c, k, strict)) in rows.into_iter().enumerate() {
                    let rel = if strict { Relation::Positive } else { Relation::NonNegative };
                    sys.push(LinConstraint::new(c.into_iter().map(q).collect(), q(k), rel), format!("r{n}")).unwrap();
                }
                sys
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]
    #[test]
    fn fourier_motzkin_matches_grid_search(sys in random_system()) {
        let grid_hit = grid_points(sys.vars()).into_iter().find(|p| sys.is_satisfied_by(p));
        match fourier_motzkin(&sys) {
            FeasibilityOutcome::Feasible(w) => prop_assert!(sys.is_satisfied_by(&w)),
            FeasibilityOutcome::Infeasible(cert) => {
                prop_assert!(grid_hit.is_none(), "refuted system has grid point {:?}", grid_hit);
                prop_assert!(replay_certificate(&sys, &cert).is_ok());
            }
        }
    }
}

// ---- dip systems -------------------------------------------------------------

#[test]
fn symmetric_unimodal_iff_nondecreasing_to_middle() {
    for len in 1..=7u32 {
        for code in 0..4usize.pow(len) {
            let s: Vec<i64> = (0..len).map(|p| ((code >> (2 * p)) & 3) as i64).collect();
            let mid = (len as usize).div_ceil(2) - 1;
            let nondec = s[..=mid].windows(2).all(|w| w[0] <= w[1]);
            assert_eq!(is_symmetric(&s) && is_unimodal(&s), is_symmetric(&s) && nondec, "{s:?}");
        }
    }
}

#[test]
fn dimension_four_agrees_with_integer_grid() {
    let r = refute_dimension(4).unwrap();
    assert_eq!(r.outcomes.len(), 4);
    assert!(r.refuted());
    r.replay_all().unwrap();
    // h = (a, b, b, a) with 1 <= a <= b <= 64: no f-vector dips.
    for a in 1..=64i64 {
        for b in a..=64 {
            let h = ShortHVector::new(vec![q(a), q(b), q(b), q(a)]).unwrap();
            let f = h_to_f_rational(&h).unwrap();
            assert!(is_unimodal(&f), "h = ({a}, {b}, {b}, {a})");
        }
    }
}

#[test]
fn patterns_outside_the_dip_zone_are_infeasible() {
    for d in 3..=12 {
        let (t, u) = (d / 3, 2 * d / 3);
        for o in refute_dimension(d).unwrap().outcomes {
            if o.pattern.i <= t || o.pattern.i >= u {
                assert!(!o.outcome.is_feasible(), "d={d} {:?}", o.pattern);
            }
        }
    }
}

#[test]
fn dimension_twelve_admits_the_published_dip() {
    let sys = build_dip_system(12, DipPattern::new(4, 5, 6).unwrap()).unwrap();
    assert!(fourier_motzkin(&sys).is_feasible());
    let w = find_h_witness(12).unwrap().expect("d = 12 witness");
    assert!(!w.dip_indices.is_empty());
}

#[test]
fn refutation_is_deterministic() {
    assert_eq!(refute_dimension(9).unwrap(), refute_dimension(9).unwrap());
    assert_eq!(find_h_witness(11).unwrap(), find_h_witness(11).unwrap());
}

// ---- search ------------------------------------------------------------------

#[test]
fn search_respects_refutation() {
    for d in 3..=10 {
        assert!(refute_dimension(d).unwrap().refuted());
        for n in d..=d + 30 {
            assert!(find_counterexample(d, n).unwrap().is_none(), "d={d} n={n}");
        }
    }
    assert!(minimal_vertex_exponent(10, 40).unwrap().is_none());
}

#[test]
fn dip_needs_a_middle_index() {
    for (d, n) in [(9usize, 40usize), (11, 60), (12, 131), (13, 80)] {
        let (t, u) = (d / 3, 2 * d / 3);
        for p in DipPattern::all(d) {
            if p.i <= t || p.i >= u {
                assert!(dip_caps_interval(d, n, p).unwrap().is_none(), "d={d} n={n} {p:?}");
            }
        }
    }
}

#[test]
fn paper_interval_is_frozen() {
    let iv = dip_caps_interval(12, 131, DipPattern::new(4, 5, 6).unwrap()).unwrap().unwrap();
    assert_eq!(
        iv.to_string(),
        "(20246311675893389727029560541192025414828032/11, 263403140056272400094468920775189661480910848/143)"
    );
    let lo: BigInt = "1840573788717580884275414594653820492257094".parse().unwrap();
    let hi: BigInt = "1841980000393513287373908536889438192174201".parse().unwrap();
    assert_eq!(iv.smallest_integer(), Some(lo.clone()));
    assert_eq!(iv.largest_integer(), Some(hi));
    assert!(iv.contains_int(&paper_cap_count()));
    let spec = find_counterexample(12, 131).unwrap().unwrap();
    assert_eq!(spec.c, lo);
    assert_eq!(spec.pattern, DipPattern::new(4, 5, 6).unwrap());
    let f = capped_ncp_f_vector(NcpParams::new(12, 131).unwrap(), &spec.c).unwrap();
    assert_eq!(spec.f_digest, vec![f.entries()[4].clone(), f.entries()[5].clone(), f.entries()[6].clone()]);
}

// Exhaustive scan over n = 12..=131: no smaller NCP in this family can be
// capped into a dip.
#[test]
fn smallest_vertex_exponent_for_d12() {
    assert_eq!(minimal_vertex_exponent(12, 131).unwrap(), Some(131));
    assert!(minimal_vertex_exponent(12, 130).unwrap().is_none());
}

#[test]
fn interval_membership_matches_construction() {
    let params = NcpParams::new(12, 131).unwrap();
    let p = DipPattern::new(4, 5, 6).unwrap();
    let iv = dip_caps_interval(12, 131, p).unwrap().unwrap();
    let lo = iv.smallest_integer().unwrap();
    let step: BigInt = BigInt::from(10).pow(38);
    for k in -3i64..=20 {
        let c = &lo + &step * k;
        let f = capped_ncp_f_vector(params, &c).unwrap();
        let e = f.entries();
        assert_eq!(iv.contains_int(&c), e[4] > e[5] && e[5] < e[6], "c = {c}");
    }
}
