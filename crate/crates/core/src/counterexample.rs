//! Quantified finite-scale demonstrations of the non-extension mechanisms.
//!
//! None of these demos can prove a negative universal; they compute the
//! obstruction quantities the contradiction arguments hinge on and report
//! them at explicit truncation scales.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::Rational64;
use serde_json::Value;

use crate::bv::BVFunction;
use crate::calculus::{conjugated_calculus_trusted, diagonal_calculus};
use crate::error::{Error, Result};
use crate::operator::{c0_iso, ell1_iso};
use crate::rule::{Catalog, FunctionRule};
use crate::sampling::{random_dyadic_vector, seeded_rng};
use crate::set::{Coord, CompactRealSet};
use crate::space::{lp_norm, PExp};

/// A sequence with finitely many explicit coordinates followed by a constant
/// tail: `(head_0, …, head_{m-1}, tail, tail, …)`. The limit functional
/// returns the tail value — on convergent sequences every translation
/// invariant extension of the limit agrees with the limit itself, so this
/// model keeps the displayed identities while staying computable.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergentSeqModel {
    head: Vec<Complex64>,
    tail: Complex64,
}

impl ConvergentSeqModel {
    pub fn new(head: Vec<Complex64>, tail: Complex64) -> Self {
        ConvergentSeqModel { head, tail }
    }

    pub fn constant(c: Complex64, head_len: usize) -> Self {
        ConvergentSeqModel { head: vec![c; head_len], tail: c }
    }

    pub fn basis(i: usize, head_len: usize) -> Self {
        let mut head = vec![Complex64::new(0.0, 0.0); head_len.max(i + 1)];
        head[i] = Complex64::new(1.0, 0.0);
        ConvergentSeqModel { head, tail: Complex64::new(0.0, 0.0) }
    }

    pub fn head(&self) -> &[Complex64] {
        &self.head
    }

    pub fn tail(&self) -> Complex64 {
        self.tail
    }

    /// The limit functional.
    pub fn limit(&self) -> Complex64 {
        self.tail
    }

    pub fn coordinate(&self, i: usize) -> Complex64 {
        self.head.get(i).copied().unwrap_or(self.tail)
    }

    pub fn sup_norm(&self) -> f64 {
        self.head
            .iter()
            .map(|v| v.norm())
            .fold(self.tail.norm(), f64::max)
    }

    pub fn is_zero(&self) -> bool {
        let zero = Complex64::new(0.0, 0.0);
        self.tail == zero && self.head.iter().all(|v| *v == zero)
    }

    /// Sequence-level equality (representations may pad heads differently).
    pub fn eq_seq(&self, other: &Self) -> bool {
        if self.tail != other.tail {
            return false;
        }
        let len = self.head.len().max(other.head.len());
        (0..len).all(|i| self.coordinate(i) == other.coordinate(i))
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.head.len().max(other.head.len());
        ConvergentSeqModel {
            head: (0..len).map(|i| self.coordinate(i) + other.coordinate(i)).collect(),
            tail: self.tail + other.tail,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.head.len().max(other.head.len());
        ConvergentSeqModel {
            head: (0..len).map(|i| self.coordinate(i) - other.coordinate(i)).collect(),
            tail: self.tail - other.tail,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        ConvergentSeqModel {
            head: self.head.iter().map(|v| c * v).collect(),
            tail: c * self.tail,
        }
    }

    /// `x ↦ (Lx, 0, 0, …)`: puts the limit in coordinate 0 and kills the
    /// rest. Squares to zero because its output has vanishing limit.
    pub fn limit_spike(&self) -> Self {
        ConvergentSeqModel { head: vec![self.limit()], tail: Complex64::new(0.0, 0.0) }
    }

    /// `x ↦ (Lx, Lx, …)`: broadcasts the limit. Idempotent.
    pub fn limit_broadcast(&self) -> Self {
        ConvergentSeqModel { head: Vec::new(), tail: self.limit() }
    }
}

/// `f(S_p)x = f(0)x` — the calculus seen by every finite-exponent model.
pub fn broadcast_calculus_finite(rule: &FunctionRule, x: &ConvergentSeqModel) -> ConvergentSeqModel {
    x.scale(rule.value_at_zero())
}

/// `f(S_∞)x = f(0)(x - Sx) + f(1)Sx` — the calculus of the sup-norm model.
pub fn broadcast_calculus_sup(rule: &FunctionRule, x: &ConvergentSeqModel) -> ConvergentSeqModel {
    let f0 = rule.value_at_zero();
    let f1 = rule.eval(&Coord::exact(1, 1));
    let sx = x.limit_broadcast();
    x.sub(&sx).scale(f0).add(&sx.scale(f1))
}

// ---------------------------------------------------------------------------
// Range inclusion
// ---------------------------------------------------------------------------

/// Outcome of the projection-range check at a split point λ.
#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RangeInclusionReport {
    pub lambda: String,
    pub set_size: usize,
    /// Catalog rules vanishing on `σ ∩ (-∞, λ]`, checked against `P`.
    pub left_rules: Vec<String>,
    /// Catalog rules vanishing on `σ ∩ [λ, ∞)`, checked against `Q = I - P`.
    pub right_rules: Vec<String>,
    pub worst_defect: f64,
    pub pass: bool,
}

impl RangeInclusionReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Check that `f(T)P = 0` for every catalog rule vanishing on the left part
/// `σ ∩ (-∞, λ]` and `f(T)Q = 0` for every rule vanishing on the right part,
/// where `P = χ_{σ∩(-∞,λ]}(T)` on the multiplication model. Exact.
pub fn range_inclusion_check(
    set: &CompactRealSet,
    lambda: Rational64,
    catalog: &Catalog,
) -> Result<RangeInclusionReport> {
    let chi_l = FunctionRule::chi_leq(lambda);
    let p = diagonal_calculus(set).evaluate(&chi_l)?;
    range_inclusion_with_projection(set, lambda, catalog, p.matrix())
}

/// Same check against an explicitly supplied projection matrix (the honest
/// one is diagonal; corrupted inputs should fail).
pub fn range_inclusion_with_projection(
    set: &CompactRealSet,
    lambda: Rational64,
    catalog: &Catalog,
    projection: &DMatrix<Complex64>,
) -> Result<RangeInclusionReport> {
    if set.position(&lambda).is_none() {
        return Err(Error::invalid(format!("λ = {lambda} is not a point of the set")));
    }
    let n = set.len();
    if projection.nrows() != n || projection.ncols() != n {
        return Err(Error::DimensionMismatch("projection must match the set size".into()));
    }
    let q = DMatrix::<Complex64>::identity(n, n) - projection;
    let cal = diagonal_calculus(set);

    let mut left_rules = Vec::new();
    let mut right_rules = Vec::new();
    let mut worst = 0.0f64;
    for e in catalog.entries() {
        let f = crate::bv::restrict(&e.rule, set);
        let vanishes_left = set
            .points()
            .iter()
            .zip(f.values())
            .all(|(t, v)| t.cmp_rational(&lambda) == std::cmp::Ordering::Greater || v.norm() == 0.0);
        let vanishes_right = set
            .points()
            .iter()
            .zip(f.values())
            .all(|(t, v)| t.cmp_rational(&lambda) == std::cmp::Ordering::Less || v.norm() == 0.0);
        if !(vanishes_left || vanishes_right) {
            continue;
        }
        let ft = cal.evaluate(&e.rule)?;
        if vanishes_left {
            let defect = (ft.matrix() * projection).iter().map(|v| v.norm()).fold(0.0, f64::max);
            worst = worst.max(defect);
            left_rules.push(e.id.clone());
        }
        if vanishes_right {
            let defect = (ft.matrix() * &q).iter().map(|v| v.norm()).fold(0.0, f64::max);
            worst = worst.max(defect);
            right_rules.push(e.id.clone());
        }
    }
    Ok(RangeInclusionReport {
        lambda: lambda.to_string(),
        set_size: n,
        left_rules,
        right_rules,
        worst_defect: worst,
        pass: worst == 0.0,
    })
}

// ---------------------------------------------------------------------------
// The c₀ obstruction
// ---------------------------------------------------------------------------

/// Quantities behind the contradiction argument on the c₀ model.
#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ObstructionReport {
    pub n: u32,
    pub epsilon: f64,
    pub k: usize,
    /// `sup_{k >= K} |(χ_L(T)e₀)_k|` in c₀ coordinates — the persistent tail
    /// that stops the candidate projection from landing in the model of
    /// vanishing sequences. Expected to be exactly 1 at every scale.
    pub tail_defect: f64,
    /// Max achievable `|x(0)|` over unit-sup feasible x killed by the
    /// left spanning family.
    pub constraint_defect_left: f64,
    /// Mirror image for the right family.
    pub constraint_defect_right: f64,
    pub constraint_defect: f64,
    pub witnesses: Vec<String>,
    pub pass: bool,
}

impl ObstructionReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// `sup_{k >= k_start} |(f(T)e₀)_k|` in c₀ coordinates, with `f(T)` applied
/// through the conjugated calculus of the multiplication operator.
pub fn tail_defect(rule: &FunctionRule, n: u32, k_start: usize) -> Result<f64> {
    if k_start == 0 || k_start >= n as usize {
        return Err(Error::invalid(format!(
            "tail start {k_start} must lie in 1..n = {n}"
        )));
    }
    let set = CompactRealSet::sigma0(n)?;
    let (u, uinv) = c0_iso(n)?;
    let cal = conjugated_calculus_trusted(diagonal_calculus(&set), u, uinv);
    let dim = n as usize + 1;
    let mut e0 = DVector::zeros(dim);
    e0[0] = Complex64::new(1.0, 0.0);
    let y = cal.apply(rule, &e0)?;
    Ok((k_start..dim).map(|k| y[k].norm()).fold(0.0, f64::max))
}

fn positive_indices(set: &CompactRealSet) -> Vec<usize> {
    let zero = Rational64::new(0, 1);
    (0..set.len())
        .filter(|&i| set.point(i).cmp_rational(&zero) == std::cmp::Ordering::Greater)
        .collect()
}

fn negative_indices(set: &CompactRealSet) -> Vec<usize> {
    let zero = Rational64::new(0, 1);
    (0..set.len())
        .filter(|&i| set.point(i).cmp_rational(&zero) == std::cmp::Ordering::Less)
        .collect()
}

/// Maximize `|x(0)|` over unit-sup-norm x on the set model subject to
/// `f(T)x = 0` for every member of a spanning family (which pins the
/// coordinates the family touches to zero) and `|x(t) - x(0)| <= ε` at the
/// `k` points of each sign nearest 0. The constraints are interval bounds on
/// coordinate differences, so the maximizer is written down directly and
/// then verified against every constraint.
fn max_center_value(
    set: &CompactRealSet,
    family: &[FunctionRule],
    eps: f64,
    k: usize,
) -> Result<(f64, DVector<Complex64>)> {
    let zero_idx = set
        .position(&Rational64::new(0, 1))
        .ok_or_else(|| Error::invalid("the feasibility model needs 0 in the set"))?;

    // Coordinates touched by the family must vanish.
    let mut pinned: BTreeSet<usize> = BTreeSet::new();
    for f in family {
        for (i, t) in set.points().iter().enumerate() {
            if f.eval(t).norm() != 0.0 {
                pinned.insert(i);
            }
        }
    }
    // Near-zero constraint set: k nearest points on each side.
    let mut near: Vec<usize> = Vec::new();
    for step in 1..=k {
        if zero_idx >= step {
            near.push(zero_idx - step);
        }
        if zero_idx + step < set.len() {
            near.push(zero_idx + step);
        }
    }

    let bound = if near.iter().any(|i| pinned.contains(i)) {
        eps.min(1.0)
    } else {
        1.0
    };

    // Build the maximizer and verify feasibility.
    let mut x = DVector::from_element(set.len(), Complex64::new(0.0, 0.0));
    x[zero_idx] = Complex64::new(bound, 0.0);
    for &i in &near {
        if !pinned.contains(&i) {
            x[i] = x[zero_idx];
        }
    }
    for &i in &near {
        let gap = (x[i] - x[zero_idx]).norm();
        if gap > eps {
            return Err(Error::invalid(format!(
                "constructed witness violates the ε-continuity constraint (gap {gap})"
            )));
        }
    }
    if x.iter().map(|v| v.norm()).fold(0.0, f64::max) > 1.0 {
        return Err(Error::invalid("constructed witness leaves the unit ball"));
    }
    for f in family {
        for (i, t) in set.points().iter().enumerate() {
            if (f.eval(t) * x[i]).norm() != 0.0 {
                return Err(Error::invalid(
                    "constructed witness is not annihilated by the spanning family",
                ));
            }
        }
    }
    Ok((bound, x))
}

/// Run the full obstruction demo at truncation `n`: the tail defect of the
/// left split indicator and the two ε-feasibility problems.
pub fn c0_obstruction_demo(n: u32, eps: f64, k: usize) -> Result<ObstructionReport> {
    if k == 0 || 2 * k >= n as usize {
        return Err(Error::invalid(format!("need 1 <= K < n/2, got K = {k}, n = {n}")));
    }
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::invalid("ε must lie in [0, 1]"));
    }
    let set = CompactRealSet::sigma0(n)?;
    let chi_l = FunctionRule::chi_leq(Rational64::new(0, 1));
    let tail = tail_defect(&chi_l, n, k)?;

    // Left side: the spanning family of the rules vanishing on σ ∩ (-∞, 0]
    // is realized by point indicators at the positive points.
    let left_family: Vec<FunctionRule> = positive_indices(&set)
        .into_iter()
        .map(|i| FunctionRule::chi_point(set.point(i).as_exact().expect("sigma0 points are exact")))
        .collect();
    let (left, _) = max_center_value(&set, &left_family, eps, k)?;

    // Right side mirrors it with the negative points.
    let right_family: Vec<FunctionRule> = negative_indices(&set)
        .into_iter()
        .map(|i| FunctionRule::chi_point(set.point(i).as_exact().expect("sigma0 points are exact")))
        .collect();
    let (right, _) = max_center_value(&set, &right_family, eps, k)?;

    let constraint = left.max(right);
    Ok(ObstructionReport {
        n,
        epsilon: eps,
        k,
        tail_defect: tail,
        constraint_defect_left: left,
        constraint_defect_right: right,
        constraint_defect: constraint,
        witnesses: vec!["chi_leq_0".into()],
        pass: tail == 1.0 && constraint <= eps,
    })
}

// ---------------------------------------------------------------------------
// The ℓ¹ isomorphism demo
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Ell1IsoReport {
    pub n: u32,
    pub trials: usize,
    /// `‖U(g)‖₁ / (‖g‖_∞ + var g)`, expected <= 1.
    pub worst_forward_ratio: f64,
    /// `‖U⁻¹(x)‖_BV / ‖x‖₁`, expected <= 2.
    pub worst_inverse_ratio: f64,
    pub worst_vector_roundtrip: f64,
    pub worst_function_roundtrip: f64,
    pub pass: bool,
}

impl Ell1IsoReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Exercise the interleaved-difference isomorphism on random inputs: the
/// forward norm inequality on rule-generated functions, the inverse norm
/// inequality and both round trips on random coordinate vectors.
pub fn ell1_iso_demo(n: u32, trials: usize, seed: u64) -> Result<Ell1IsoReport> {
    let set = CompactRealSet::sigma0(n)?;
    let (fwd, inv) = ell1_iso(n)?;
    let mut rng = seeded_rng(seed);
    let catalog = Catalog::standard();

    let mut worst_forward = 0.0f64;
    let mut worst_inverse = 0.0f64;
    let mut worst_vec_rt = 0.0f64;
    let mut worst_fun_rt = 0.0f64;

    for _ in 0..trials {
        // Random rule: a complex combination of two catalog members.
        let i = rand::Rng::gen_range(&mut rng, 0..catalog.len());
        let j = rand::Rng::gen_range(&mut rng, 0..catalog.len());
        let c1 = crate::sampling::random_complex(&mut rng);
        let c2 = crate::sampling::random_complex(&mut rng);
        let rule = FunctionRule::sum(
            FunctionRule::scale(c1, catalog.entries()[i].rule.clone()),
            FunctionRule::scale(c2, catalog.entries()[j].rule.clone()),
        );
        let g = crate::bv::restrict(&rule, &set);
        let g_norm = g.bv_norm();
        if g_norm > 0.0 {
            let coords = DVector::from_column_slice(g.values());
            let image = fwd.apply(&coords)?;
            worst_forward = worst_forward.max(lp_norm(&image, PExp::one()) / g_norm);
        }

        // Random coordinate vector, dyadic so the integer partial-sum
        // matrices act without rounding.
        let x = random_dyadic_vector(n as usize, 8, &mut rng);
        let x_norm = lp_norm(&x, PExp::one());
        if x_norm == 0.0 {
            continue;
        }
        let g_back = inv.apply(&x)?;
        let bvf = BVFunction::from_values(&set, g_back.iter().copied().collect())?;
        worst_inverse = worst_inverse.max(bvf.bv_norm() / x_norm);

        let x_rt = fwd.apply(&g_back)?;
        worst_vec_rt = worst_vec_rt
            .max((&x_rt - &x).iter().map(|v| v.norm()).fold(0.0, f64::max));
        let g_rt = inv.apply(&x_rt)?;
        worst_fun_rt = worst_fun_rt
            .max((&g_rt - &g_back).iter().map(|v| v.norm()).fold(0.0, f64::max));
    }

    Ok(Ell1IsoReport {
        n,
        trials,
        worst_forward_ratio: worst_forward,
        worst_inverse_ratio: worst_inverse,
        worst_vector_roundtrip: worst_vec_rt,
        worst_function_roundtrip: worst_fun_rt,
        pass: worst_forward <= 1.0 + 1e-12
            && worst_inverse <= 2.0 + 1e-12
            && worst_vec_rt <= 1e-12
            && worst_fun_rt <= 1e-12,
    })
}

// ---------------------------------------------------------------------------
// The limit-operator models
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BanachLimitReport {
    /// Head length of the probe vectors.
    pub m: usize,
    pub spike_squares_to_zero: bool,
    pub spike_nonzero: bool,
    pub spike_norm: f64,
    pub broadcast_idempotent: bool,
    pub broadcast_kills_finite_support: bool,
    pub broadcast_fixes_constants: bool,
    pub finite_calculus_defect: f64,
    pub sup_calculus_defect: f64,
    /// The two calculi applied to the constant-one vector with `χ_{{1}}`:
    /// the finite-exponent one gives 0, the sup one gives the vector back.
    pub calculi_disagree: bool,
    pub witnesses: Vec<String>,
    pub pass: bool,
}

impl BanachLimitReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn probe_vectors(m: usize) -> Vec<ConvergentSeqModel> {
    let mut probes = Vec::new();
    for i in 0..m {
        probes.push(ConvergentSeqModel::basis(i, m));
    }
    probes.push(ConvergentSeqModel::constant(Complex64::new(1.0, 0.0), m));
    probes.push(ConvergentSeqModel::constant(Complex64::new(0.0, -0.5), m));
    // A genuinely converging probe: head walks toward the tail value.
    let head: Vec<Complex64> = (0..m)
        .map(|i| Complex64::new(1.0 / (i + 1) as f64, -0.25))
        .collect();
    probes.push(ConvergentSeqModel::new(head, Complex64::new(0.0, -0.25)));
    probes
}

/// Exercise the two limit operators on the convergent-sequence model and the
/// two displayed calculi for the broadcast operator.
pub fn banach_limit_demo(m: usize) -> Result<BanachLimitReport> {
    if m == 0 {
        return Err(Error::invalid("head length must be at least 1"));
    }
    let probes = probe_vectors(m);
    let one = ConvergentSeqModel::constant(Complex64::new(1.0, 0.0), m);

    // x = (5, 0, 0, …): tail 0, so both operators kill it.
    let spike_probe = ConvergentSeqModel::new(vec![Complex64::new(5.0, 0.0)], Complex64::new(0.0, 0.0));
    let spike_kills_finite =
        spike_probe.limit_spike().is_zero() && spike_probe.limit_broadcast().is_zero();

    let spike_squares_to_zero = probes
        .iter()
        .all(|x| x.limit_spike().limit_spike().is_zero());
    let spike_nonzero = !one.limit_spike().is_zero();
    let spike_norm = probes
        .iter()
        .filter(|x| x.sup_norm() > 0.0)
        .map(|x| x.limit_spike().sup_norm() / x.sup_norm())
        .fold(0.0, f64::max);

    let broadcast_idempotent = probes
        .iter()
        .all(|x| x.limit_broadcast().limit_broadcast().eq_seq(&x.limit_broadcast()));
    let broadcast_kills_finite_support = probes
        .iter()
        .filter(|x| x.tail() == Complex64::new(0.0, 0.0))
        .all(|x| x.limit_broadcast().is_zero());
    let broadcast_fixes_constants = one.limit_broadcast().eq_seq(&one);

    // Multiplicativity of the two calculi.
    let catalog = Catalog::standard();
    let mut finite_defect = 0.0f64;
    let mut sup_defect = 0.0f64;
    for (a, b) in catalog.pairs() {
        let prod = FunctionRule::product(a.rule.clone(), b.rule.clone());
        for x in &probes {
            // finite-exponent calculus on the finitely supported submodel
            if x.tail() == Complex64::new(0.0, 0.0) {
                let lhs = broadcast_calculus_finite(&prod, x);
                let rhs = broadcast_calculus_finite(&a.rule, &broadcast_calculus_finite(&b.rule, x));
                finite_defect = finite_defect.max(seq_gap(&lhs, &rhs));
            }
            let lhs = broadcast_calculus_sup(&prod, x);
            let rhs = broadcast_calculus_sup(&a.rule, &broadcast_calculus_sup(&b.rule, x));
            sup_defect = sup_defect.max(seq_gap(&lhs, &rhs));
        }
    }

    // The disagreement witness: χ_{{1}} on the constant-one vector.
    let chi1 = FunctionRule::chi_point(Rational64::new(1, 1));
    let via_finite = broadcast_calculus_finite(&chi1, &one);
    let via_sup = broadcast_calculus_sup(&chi1, &one);
    let calculi_disagree = via_finite.is_zero() && via_sup.eq_seq(&one);

    let pass = spike_squares_to_zero
        && spike_nonzero
        && spike_norm == 1.0
        && spike_kills_finite
        && broadcast_idempotent
        && broadcast_kills_finite_support
        && broadcast_fixes_constants
        && finite_defect <= 1e-12
        && sup_defect <= 1e-12
        && calculi_disagree;
    Ok(BanachLimitReport {
        m,
        spike_squares_to_zero,
        spike_nonzero,
        spike_norm,
        broadcast_idempotent,
        broadcast_kills_finite_support,
        broadcast_fixes_constants,
        finite_calculus_defect: finite_defect,
        sup_calculus_defect: sup_defect,
        calculi_disagree,
        witnesses: vec!["chi_point_1".into()],
        pass,
    })
}

fn seq_gap(a: &ConvergentSeqModel, b: &ConvergentSeqModel) -> f64 {
    a.sub(b).sup_norm()
}
