//! Exact linear feasibility over the rationals, and the dip-pattern systems
//! that decide whether a positive, symmetric, unimodal short cubical h-vector
//! can produce a face vector with a dip.
//!
//! The decision procedure is Fourier–Motzkin elimination with strict and weak
//! inequalities carried natively. Every run ends either in a witness point,
//! checked against the original system, or in a certificate: the chain of
//! nonnegative combinations that derives a ground contradiction.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cubecore::{basis_vector, h_to_f_rational, validate_adin, ShortHVector};
use crate::decimal::{ser_display, ser_display_vec};
use crate::error::{invalid, Error, Result};
use crate::seqkit;

/// Relation of a linear form against zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    NonNegative,
    #[serde(rename = ">")]
    Positive,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Positive)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::NonNegative => ">=",
            Relation::Positive => ">",
        }
    }

    fn from_strict(strict: bool) -> Self {
        if strict {
            Relation::Positive
        } else {
            Relation::NonNegative
        }
    }
}

/// `coefficients . x + constant (>= | >) 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LinConstraint {
    #[serde(serialize_with = "ser_display_vec")]
    pub coefficients: Vec<BigRational>,
    #[serde(serialize_with = "ser_display")]
    pub constant: BigRational,
    pub relation: Relation,
}

impl LinConstraint {
    pub fn new(coefficients: Vec<BigRational>, constant: BigRational, relation: Relation) -> Self {
        Self { coefficients, constant, relation }
    }

    pub fn evaluate(&self, x: &[BigRational]) -> BigRational {
        self.coefficients.iter().zip(x).fold(self.constant.clone(), |acc, (a, v)| acc + a * v)
    }

    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        let v = self.evaluate(x);
        match self.relation {
            Relation::NonNegative => !v.is_negative(),
            Relation::Positive => v.is_positive(),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    /// A ground constraint that no point satisfies: `c >= 0` with `c < 0`, or
    /// `c > 0` with `c <= 0`.
    pub fn is_contradiction(&self) -> bool {
        self.is_ground()
            && match self.relation {
                Relation::NonNegative => self.constant.is_negative(),
                Relation::Positive => !self.constant.is_positive(),
            }
    }

    fn scaled(&self, s: &BigRational) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|a| a * s).collect(),
            constant: &self.constant * s,
            relation: self.relation,
        }
    }

    /// Positive scale that makes the last nonzero coefficient `+-1`, or the
    /// constant `+-1` for a ground constraint.
    fn normalizer(&self) -> BigRational {
        let pivot = self
            .coefficients
            .iter()
            .rev()
            .find(|a| !a.is_zero())
            .unwrap_or(&self.constant);
        if pivot.is_zero() {
            BigRational::one()
        } else {
            pivot.abs().recip()
        }
    }
}

/// Sum of `multiplier * constraint`, strict if any strict constraint enters
/// with a positive multiplier.
pub fn combine<'a>(terms: impl IntoIterator<Item = (&'a LinConstraint, &'a BigRational)>, vars: usize) -> LinConstraint {
    let mut coefficients = vec![BigRational::zero(); vars];
    let mut constant = BigRational::zero();
    let mut strict = false;
    for (c, m) in terms {
        for (acc, a) in coefficients.iter_mut().zip(&c.coefficients) {
            *acc += a * m;
        }
        constant += &c.constant * m;
        strict |= c.relation.is_strict() && m.is_positive();
    }
    LinConstraint::new(coefficients, constant, Relation::from_strict(strict))
}

/// A list of constraints over `vars` variables, each with a provenance tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintSystem {
    vars: usize,
    constraints: Vec<LinConstraint>,
    tags: Vec<String>,
}

impl ConstraintSystem {
    pub fn new(vars: usize) -> Self {
        Self { vars, constraints: Vec::new(), tags: Vec::new() }
    }

    pub fn push(&mut self, constraint: LinConstraint, tag: impl Into<String>) -> Result<()> {
        if constraint.coefficients.len() != self.vars {
            return Err(invalid(format!(
                "constraint has {} coefficients, system has {} variables",
                constraint.coefficients.len(),
                self.vars
            )));
        }
        self.constraints.push(constraint);
        self.tags.push(tag.into());
        Ok(())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn constraints(&self) -> &[LinConstraint] {
        &self.constraints
    }

    pub fn tags(&self) -> &[String] {
        &self.tags
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        x.len() == self.vars && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }
}

/// One derived constraint: `constraint = sum multiplier * constraint[parent]`.
///
/// Ids `0..system.len()` are the original constraints; derivations take the
/// following ids in order, and parents always precede their child.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub id: usize,
    #[serde(serialize_with = "ser_parents")]
    pub parents: Vec<(usize, BigRational)>,
    pub constraint: LinConstraint,
}

fn ser_parents<S: serde::Serializer>(v: &[(usize, BigRational)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (id, m) in v {
        seq.serialize_element(&(id, m.to_string()))?;
    }
    seq.end()
}

/// Proof that a system has no solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub derivations: Vec<Derivation>,
    /// Id of the contradictory ground constraint.
    pub contradiction: usize,
    /// The same contradiction written directly over the original constraints.
    #[serde(serialize_with = "ser_parents")]
    pub farkas: Vec<(usize, BigRational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityOutcome {
    Infeasible(Certificate),
    Feasible(Vec<BigRational>),
}

impl FeasibilityOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityOutcome::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[BigRational]> {
        match self {
            FeasibilityOutcome::Feasible(w) => Some(w),
            FeasibilityOutcome::Infeasible(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            FeasibilityOutcome::Infeasible(c) => Some(c),
            FeasibilityOutcome::Feasible(_) => None,
        }
    }
}

struct Node {
    constraint: LinConstraint,
    parents: Vec<(usize, BigRational)>,
}

struct Eliminator {
    vars: usize,
    nodes: Vec<Node>,
    originals: usize,
}

impl Eliminator {
    fn push(&mut self, constraint: LinConstraint, parents: Vec<(usize, BigRational)>) -> usize {
        self.nodes.push(Node { constraint, parents });
        self.nodes.len() - 1
    }

    /// Keeps one constraint per normalized direction, the tightest one.
    fn insert_pruned(&self, kept: &mut HashMap<Vec<BigRational>, usize>, id: usize) {
        let c = &self.nodes[id].constraint;
        let s = c.normalizer();
        let key: Vec<BigRational> = c.coefficients.iter().map(|a| a * &s).collect();
        let rank = (c.constant.clone() * &s, !c.relation.is_strict());
        match kept.get(&key) {
            Some(&old) => {
                let o = &self.nodes[old].constraint;
                let os = o.normalizer();
                if rank < (o.constant.clone() * &os, !o.relation.is_strict()) {
                    kept.insert(key, id);
                }
            }
            None => {
                kept.insert(key, id);
            }
        }
    }

    fn certificate(&self, contradiction: usize) -> Certificate {
        // Ancestors of the contradiction, in creation order.
        let mut needed = vec![false; self.nodes.len()];
        needed[contradiction] = true;
        for id in (0..=contradiction).rev() {
            if needed[id] {
                for (p, _) in &self.nodes[id].parents {
                    needed[*p] = true;
                }
            }
        }
        let mut renumber: HashMap<usize, usize> = (0..self.originals).map(|i| (i, i)).collect();
        let mut derivations = Vec::new();
        // Farkas multipliers of every needed node over the originals.
        let mut flat: HashMap<usize, Vec<BigRational>> = HashMap::new();
        for id in 0..=contradiction {
            if !needed[id] {
                continue;
            }
            if id < self.originals {
                let mut unit = vec![BigRational::zero(); self.originals];
                unit[id] = BigRational::one();
                flat.insert(id, unit);
                continue;
            }
            let node = &self.nodes[id];
            let mut acc = vec![BigRational::zero(); self.originals];
            for (p, m) in &node.parents {
                for (a, b) in acc.iter_mut().zip(&flat[p]) {
                    *a += b * m;
                }
            }
            flat.insert(id, acc);
            let new_id = self.originals + derivations.len();
            renumber.insert(id, new_id);
            derivations.push(Derivation {
                id: new_id,
                parents: node.parents.iter().map(|(p, m)| (renumber[p], m.clone())).collect(),
                constraint: node.constraint.clone(),
            });
        }
        let farkas = flat[&contradiction]
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| (i, m.clone()))
            .collect();
        Certificate { derivations, contradiction: renumber[&contradiction], farkas }
    }
}

#[derive(Default)]
struct Bound {
    value: Option<BigRational>,
    strict: bool,
}

impl Bound {
    fn tighten(&mut self, value: BigRational, strict: bool, lower: bool) {
        let better = match &self.value {
            None => true,
            Some(v) if *v == value => strict && !self.strict,
            Some(v) => (value > *v) == lower,
        };
        if better {
            self.value = Some(value);
            self.strict = strict;
        }
    }
}

/// Decides feasibility by eliminating variables from the highest index down.
///
/// Pairing a lower bound with an upper bound on the eliminated variable uses
/// multipliers `1/a` and `1/|b|`; the result is strict if either side is.
/// Derived constraints are scaled so their last nonzero coefficient is `+-1`,
/// and only the tightest constraint per direction survives each round.
///
/// A feasible system gets a witness by back-substitution from `x_0` upward:
/// the midpoint of a two-sided interval, one past a one-sided bound, zero
/// when unconstrained.
pub fn fourier_motzkin(sys: &ConstraintSystem) -> FeasibilityOutcome {
    let vars = sys.vars;
    let mut el = Eliminator { vars, nodes: Vec::new(), originals: sys.len() };
    for c in &sys.constraints {
        el.push(c.clone(), Vec::new());
    }
    for id in 0..sys.len() {
        if el.nodes[id].constraint.is_contradiction() {
            return FeasibilityOutcome::Infeasible(el.certificate(id));
        }
    }
    let mut kept = HashMap::new();
    for id in 0..sys.len() {
        if !el.nodes[id].constraint.is_ground() {
            el.insert_pruned(&mut kept, id);
        }
    }
    let mut active: Vec<usize> = kept.into_values().collect();
    active.sort_unstable();

    // stages[v] = constraints live while x_v is being eliminated (only x_0..=x_v occur).
    let mut stages: Vec<Vec<usize>> = vec![Vec::new(); vars];
    for v in (0..vars).rev() {
        stages[v] = active.clone();
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for &id in &active {
            let a = &el.nodes[id].constraint.coefficients[v];
            if a.is_positive() {
                lower.push(id);
            } else if a.is_negative() {
                upper.push(id);
            } else {
                rest.push(id);
            }
        }
        let mut kept = HashMap::new();
        for id in rest {
            el.insert_pruned(&mut kept, id);
        }
        for &lo in &lower {
            for &up in &upper {
                let ml = el.nodes[lo].constraint.coefficients[v].recip();
                let mu = -el.nodes[up].constraint.coefficients[v].recip();
                let raw = combine([(&el.nodes[lo].constraint, &ml), (&el.nodes[up].constraint, &mu)], el.vars);
                let s = raw.normalizer();
                let id = el.push(raw.scaled(&s), vec![(lo, ml * &s), (up, mu * &s)]);
                let c = &el.nodes[id].constraint;
                if c.is_contradiction() {
                    return FeasibilityOutcome::Infeasible(el.certificate(id));
                }
                if !c.is_ground() {
                    el.insert_pruned(&mut kept, id);
                }
            }
        }
        active = kept.into_values().collect();
        active.sort_unstable();
    }

    let mut x: Vec<BigRational> = Vec::with_capacity(vars);
    for v in 0..vars {
        let (mut lo, mut hi) = (Bound::default(), Bound::default());
        for &id in &stages[v] {
            let c = &el.nodes[id].constraint;
            let a = &c.coefficients[v];
            if a.is_zero() {
                continue;
            }
            let rest = c.coefficients[..v].iter().zip(&x).fold(c.constant.clone(), |acc, (b, xv)| acc + b * xv);
            let edge = -rest / a;
            let strict = c.relation.is_strict();
            if a.is_positive() {
                lo.tighten(edge, strict, true);
            } else {
                hi.tighten(edge, strict, false);
            }
        }
        let one = BigRational::one();
        let value = match (lo.value, hi.value) {
            (Some(l), Some(h)) if l == h => l,
            (Some(l), Some(h)) => (l + h) / BigRational::from_integer(BigInt::from(2)),
            (Some(l), None) => l + one,
            (None, Some(h)) => h - one,
            (None, None) => BigRational::zero(),
        };
        x.push(value);
    }
    assert!(sys.is_satisfied_by(&x), "Fourier-Motzkin witness violates its system");
    FeasibilityOutcome::Feasible(x)
}

/// Checks a certificate step by step against the system it refutes.
pub fn replay_certificate(sys: &ConstraintSystem, cert: &Certificate) -> Result<()> {
    let fail = |msg: String| Err(Error::InternalConsistency(format!("certificate replay: {msg}")));
    let mut table: Vec<&LinConstraint> = sys.constraints.iter().collect();
    for (pos, der) in cert.derivations.iter().enumerate() {
        if der.id != sys.len() + pos {
            return fail(format!("derivation {pos} has id {}, expected {}", der.id, sys.len() + pos));
        }
        if der.constraint.coefficients.len() != sys.vars {
            return fail(format!("derivation {} has the wrong arity", der.id));
        }
        let mut terms = Vec::new();
        for (p, m) in &der.parents {
            if *p >= der.id {
                return fail(format!("derivation {} uses later constraint {p}", der.id));
            }
            if m.is_negative() {
                return fail(format!("derivation {} has a negative multiplier", der.id));
            }
            terms.push((table[*p], m));
        }
        let sum = combine(terms, sys.vars);
        if sum.coefficients != der.constraint.coefficients || sum.constant != der.constraint.constant {
            return fail(format!("derivation {} does not equal its stated combination", der.id));
        }
        if der.constraint.relation.is_strict() && !sum.relation.is_strict() {
            return fail(format!("derivation {} claims strictness it does not inherit", der.id));
        }
        table.push(&der.constraint);
    }
    match table.get(cert.contradiction) {
        Some(c) if c.is_contradiction() => {}
        _ => return fail("final constraint is not a ground contradiction".into()),
    }
    let mut terms = Vec::new();
    for (i, m) in &cert.farkas {
        if *i >= sys.len() || m.is_negative() {
            return fail(format!("bad Farkas entry for constraint {i}"));
        }
        terms.push((&sys.constraints[*i], m));
    }
    if !combine(terms, sys.vars).is_contradiction() {
        return fail("Farkas combination is not contradictory".into());
    }
    Ok(())
}

/// Positions `j < i < k` of a dip `f_j > f_i < f_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DipPattern {
    pub j: usize,
    pub i: usize,
    pub k: usize,
}

impl DipPattern {
    pub fn new(j: usize, i: usize, k: usize) -> Result<Self> {
        if !(j < i && i < k) {
            return Err(invalid(format!("dip pattern needs j < i < k, got ({j}, {i}, {k})")));
        }
        Ok(Self { j, i, k })
    }

    pub fn fits(&self, d: usize) -> bool {
        self.k < d
    }

    /// All patterns for dimension `d`, in lexicographic order.
    pub fn all(d: usize) -> Vec<DipPattern> {
        let mut out = Vec::new();
        for j in 0..d {
            for i in j + 1..d {
                for k in i + 1..d {
                    out.push(DipPattern { j, i, k });
                }
            }
        }
        out
    }
}

impl std::fmt::Display for DipPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "f_{} > f_{} < f_{}", self.j, self.i, self.k)
    }
}

/// Number of reduced coordinates `g_0 .. g_{m-1}`, `m = ceil(d/2)`.
pub fn reduced_vars(d: usize) -> usize {
    d.div_ceil(2)
}

/// Expands reduced coordinates to the symmetric h-vector `h_t = g_{min(t, d-1-t)}`.
pub fn expand_reduced<T: Clone>(g: &[T], d: usize) -> Vec<T> {
    (0..d).map(|t| g[t.min(d - 1 - t)].clone()).collect()
}

/// The system whose rational solutions are exactly the reduced h-vectors
/// (normalized by `g_0 >= 1`) that are positive, symmetric, unimodal and give
/// an f-vector dipping in the pattern `p`.
///
/// Since `f = sum_s g_s b^s`, the linear form of `f_e` in `g` has coefficient
/// `b^s_e` on `g_s`.
pub fn build_dip_system(d: usize, p: DipPattern) -> Result<ConstraintSystem> {
    if d < 3 || !p.fits(d) {
        return Err(invalid(format!("pattern ({}, {}, {}) does not fit dimension {d}", p.j, p.i, p.k)));
    }
    let m = reduced_vars(d);
    let basis: Vec<Vec<BigRational>> = (0..m).map(|s| basis_vector(d, s)).collect::<Result<_>>()?;
    let zero = BigRational::zero();
    let one = BigRational::one();
    let unit = |s: usize, v: &BigRational| {
        let mut c = vec![zero.clone(); m];
        c[s] = v.clone();
        c
    };
    let mut sys = ConstraintSystem::new(m);
    sys.push(LinConstraint::new(unit(0, &one), -one.clone(), Relation::NonNegative), "h positive: g_0 >= 1")?;
    for t in 0..m - 1 {
        let mut c = unit(t + 1, &one);
        c[t] = -one.clone();
        sys.push(
            LinConstraint::new(c, zero.clone(), Relation::NonNegative),
            format!("h nondecreasing to middle: g_{} >= g_{t}", t + 1),
        )?;
    }
    for (hi, tag) in [(p.j, "left"), (p.k, "right")] {
        let c: Vec<BigRational> = (0..m).map(|s| &basis[s][hi] - &basis[s][p.i]).collect();
        sys.push(
            LinConstraint::new(c, zero.clone(), Relation::Positive),
            format!("dip {tag}: f_{hi} > f_{}", p.i),
        )?;
    }
    Ok(sys)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternOutcome {
    pub pattern: DipPattern,
    pub system: ConstraintSystem,
    pub outcome: FeasibilityOutcome,
}

/// Per-pattern outcomes for one dimension, in lexicographic pattern order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutationReport {
    pub d: usize,
    pub outcomes: Vec<PatternOutcome>,
}

impl RefutationReport {
    /// True when no pattern admits a dipping f-vector.
    pub fn refuted(&self) -> bool {
        self.outcomes.iter().all(|o| !o.outcome.is_feasible())
    }

    pub fn feasible_patterns(&self) -> Vec<DipPattern> {
        self.outcomes.iter().filter(|o| o.outcome.is_feasible()).map(|o| o.pattern).collect()
    }

    /// Replays every certificate in the report.
    pub fn replay_all(&self) -> Result<()> {
        for o in &self.outcomes {
            if let FeasibilityOutcome::Infeasible(cert) = &o.outcome {
                replay_certificate(&o.system, cert)?;
            }
        }
        Ok(())
    }

    /// Self-contained JSON bundle: every system with its tagged constraints,
    /// and for each refuted pattern the derivation steps with multipliers.
    pub fn certificate_bundle(&self) -> serde_json::Value {
        let patterns: Vec<serde_json::Value> = self
            .outcomes
            .iter()
            .map(|o| {
                let constraints: Vec<serde_json::Value> = o
                    .system
                    .constraints()
                    .iter()
                    .zip(o.system.tags())
                    .enumerate()
                    .map(|(id, (c, tag))| {
                        serde_json::json!({
                            "id": id,
                            "tag": tag,
                            "coefficients": crate::decimal::rationals_to_strings(&c.coefficients),
                            "constant": c.constant.to_string(),
                            "relation": c.relation.symbol(),
                        })
                    })
                    .collect();
                let mut entry = serde_json::json!({
                    "pattern": [o.pattern.j, o.pattern.i, o.pattern.k],
                    "variables": o.system.vars(),
                    "constraints": constraints,
                });
                match &o.outcome {
                    FeasibilityOutcome::Infeasible(cert) => {
                        entry["outcome"] = "infeasible".into();
                        entry["certificate"] = serde_json::to_value(cert).expect("certificate serializes");
                    }
                    FeasibilityOutcome::Feasible(w) => {
                        entry["outcome"] = "feasible".into();
                        entry["witness"] = crate::decimal::rationals_to_strings(w).into();
                    }
                }
                entry
            })
            .collect();
        serde_json::json!({
            "dimension": self.d,
            "variables": "g_0..g_{m-1}, h_t = g_min(t, d-1-t)",
            "normalization": "g_0 >= 1 stands in for positive integers: the dip constraints are homogeneous, so any rational solution scales to an integral one",
            "patterns": patterns,
        })
    }
}

/// Decides every dip pattern of dimension `d`. Patterns run in parallel; the
/// report is ordered by pattern, independent of scheduling.
pub fn refute_dimension(d: usize) -> Result<RefutationReport> {
    if d < 2 {
        return Err(invalid("refutation needs d >= 2"));
    }
    let outcomes = DipPattern::all(d)
        .into_par_iter()
        .map(|pattern| {
            let system = build_dip_system(d, pattern)?;
            let outcome = fourier_motzkin(&system);
            Ok(PatternOutcome { pattern, system, outcome })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RefutationReport { d, outcomes })
}

/// An integral h-vector that passes every necessary condition on short
/// cubical h-vectors while `h * H` dips. Whether a polytope realizes it is not
/// decided here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HWitness {
    pub pattern: DipPattern,
    pub h: ShortHVector,
    /// `h * H`; integral because `h` is scaled by the needed power of two.
    pub f: Vec<BigInt>,
    pub dip_indices: Vec<usize>,
}

/// Turns the first feasible dip pattern into a verified integral h-vector.
pub fn find_h_witness(d: usize) -> Result<Option<HWitness>> {
    let report = refute_dimension(d)?;
    let Some(hit) = report.outcomes.iter().find(|o| o.outcome.is_feasible()) else {
        return Ok(None);
    };
    let g = hit.outcome.witness().expect("feasible outcome has a witness");
    let h = integral_h_from_reduced(g, d)?;
    let f_rat = h_to_f_rational(&h)?;
    let dip_indices = seqkit::unimodality_report(&f_rat)?.dip_indices;
    let f: Vec<BigInt> = f_rat.iter().map(|x| x.to_integer()).collect();
    let p = hit.pattern;
    let verified = validate_adin(&h).all()
        && f_rat.iter().all(|x| x.is_integer())
        && !dip_indices.is_empty()
        && f[p.j] > f[p.i]
        && f[p.i] < f[p.k];
    if !verified {
        return Err(Error::InternalConsistency(format!("scaled witness for d={d} failed re-verification")));
    }
    Ok(Some(HWitness { pattern: p, h, f, dip_indices }))
}

/// Clears denominators, divides out the common factor, then multiplies by the
/// least power of two that makes `h * H` integral.
fn integral_h_from_reduced(g: &[BigRational], d: usize) -> Result<ShortHVector> {
    let den = g.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = g.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let common = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if common.is_zero() {
        return Err(Error::InternalConsistency("zero witness".into()));
    }
    for x in &mut ints {
        *x /= &common;
    }
    for _ in 0..d {
        let h = ShortHVector::from_integers(expand_reduced(&ints, d))?;
        if h_to_f_rational(&h)?.iter().all(|x| x.is_integer()) {
            return Ok(h);
        }
        for x in &mut ints {
            *x *= 2;
        }
    }
    Err(Error::InternalConsistency(format!("no power of two up to 2^{d} clears h * H")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubecore::build_transform_matrix;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn lc(coeffs: &[i64], constant: i64, strict: bool) -> LinConstraint {
        LinConstraint::new(coeffs.iter().map(|&a| q(a)).collect(), q(constant), Relation::from_strict(strict))
    }

    fn system(vars: usize, cs: Vec<LinConstraint>) -> ConstraintSystem {
        let mut s = ConstraintSystem::new(vars);
        for (n, c) in cs.into_iter().enumerate() {
            s.push(c, format!("c{n}")).unwrap();
        }
        s
    }

    #[test]
    fn one_variable_contradiction() {
        // x - 1 >= 0, -x >= 0
        let sys = system(1, vec![lc(&[1], -1, false), lc(&[-1], 0, false)]);
        let out = fourier_motzkin(&sys);
        let cert = out.certificate().expect("infeasible");
        replay_certificate(&sys, cert).unwrap();
        let last = &cert.derivations.last().unwrap().constraint;
        assert_eq!(last.constant, q(-1));
        assert_eq!(last.relation, Relation::NonNegative);
        assert_eq!(cert.farkas, vec![(0, q(1)), (1, q(1))]);
    }

    #[test]
    fn open_interval_midpoint() {
        // x > 0, -x + 3 > 0
        let sys = system(1, vec![lc(&[1], 0, true), lc(&[-1], 3, true)]);
        assert_eq!(fourier_motzkin(&sys).witness().unwrap(), &[BigRational::new(3.into(), 2.into())]);
    }

    #[test]
    fn strictness_propagates() {
        // x >= 0, -x > 0 has no solution; x >= 0, -x >= 0 has x = 0.
        let sys = system(1, vec![lc(&[1], 0, false), lc(&[-1], 0, true)]);
        replay_certificate(&sys, fourier_motzkin(&sys).certificate().unwrap()).unwrap();
        let sys = system(1, vec![lc(&[1], 0, false), lc(&[-1], 0, false)]);
        assert_eq!(fourier_motzkin(&sys).witness().unwrap(), &[q(0)]);
    }

    #[test]
    fn ground_constraints_and_empty_systems() {
        let sys = system(2, vec![lc(&[0, 0], -1, false)]);
        let cert = fourier_motzkin(&sys).certificate().cloned().unwrap();
        assert!(cert.derivations.is_empty());
        assert_eq!(cert.contradiction, 0);
        replay_certificate(&sys, &cert).unwrap();
        assert_eq!(fourier_motzkin(&ConstraintSystem::new(2)).witness().unwrap(), &[q(0), q(0)]);
        assert!(fourier_motzkin(&system(1, vec![lc(&[0], 2, true)])).is_feasible());
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let sys = system(2, vec![lc(&[1, 1], -2, true), lc(&[-1, 0], 0, false), lc(&[0, -1], 1, false)]);
        let cert = fourier_motzkin(&sys).certificate().cloned().unwrap();
        replay_certificate(&sys, &cert).unwrap();

        let mut bad = cert.clone();
        bad.derivations[0].parents[0].1 = -bad.derivations[0].parents[0].1.clone();
        assert!(replay_certificate(&sys, &bad).is_err());

        let mut bad = cert.clone();
        bad.farkas.pop();
        assert!(replay_certificate(&sys, &bad).is_err());

        let mut bad = cert;
        bad.derivations.last_mut().unwrap().constraint.constant += q(5);
        assert!(replay_certificate(&sys, &bad).is_err());
    }

    #[test]
    fn push_rejects_wrong_arity() {
        let mut s = ConstraintSystem::new(2);
        assert!(s.push(lc(&[1], 0, false), "x").is_err());
    }

    #[test]
    fn dip_system_shape() {
        let sys = build_dip_system(10, DipPattern::new(3, 4, 5).unwrap()).unwrap();
        assert_eq!(sys.vars(), 5);
        assert_eq!(sys.len(), 7);
        assert!(build_dip_system(2, DipPattern::new(0, 1, 2).unwrap()).is_err());
        assert!(DipPattern::new(1, 1, 2).is_err());
        assert_eq!(DipPattern::all(10).len(), 120);
    }

    #[test]
    fn dip_system_coefficients_d4() {
        // m = 2: h = (g0, g1, g1, g0); f_e = g0 (H(0,e) + H(3,e)) + g1 (H(1,e) + H(2,e)).
        let sys = build_dip_system(4, DipPattern::new(0, 1, 2).unwrap()).unwrap();
        let h = build_transform_matrix(4).unwrap();
        let col = |e: usize| [h.entry(0, e) + h.entry(3, e), h.entry(1, e) + h.entry(2, e)];
        let (c0, c1, c2) = (col(0), col(1), col(2));
        let left = &sys.constraints()[2];
        let right = &sys.constraints()[3];
        for s in 0..2 {
            assert_eq!(left.coefficients[s], &c0[s] - &c1[s]);
            assert_eq!(right.coefficients[s], &c2[s] - &c1[s]);
        }
        assert!(left.relation.is_strict() && right.relation.is_strict());
    }

    #[test]
    fn expand_reduced_is_symmetric() {
        assert_eq!(expand_reduced(&[1, 2, 3], 5), vec![1, 2, 3, 2, 1]);
        assert_eq!(expand_reduced(&[1, 2], 4), vec![1, 2, 2, 1]);
    }

    #[test]
    fn small_dimensions_are_refuted() {
        for d in 2..=6 {
            let r = refute_dimension(d).unwrap();
            assert!(r.refuted(), "d={d}");
            r.replay_all().unwrap();
        }
        assert!(find_h_witness(5).unwrap().is_none());
    }
}
