//! Finite-matrix checks for moving calculi across the ℓᵖ scale: exponent
//! interpolation bounds, the bi-adjoint duality chain, cross-exponent
//! consistency of a single diagonal family, and the pre-adjoint product laws.
//!
//! Interpolation endpoints are restricted to `p ∈ {1, 2, ∞}`, where the
//! matrix norms are exact; the general-`p` estimator only ever appears on
//! the small side of an inequality.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bv::restrict;
use crate::calculus::{diagonal_calculus, two_point_calculus};
use crate::error::{Error, Result};
use crate::operator::{
    exact_idempotent, operator_norm_seeded, NormEstimate, OperatorModel,
};
use crate::rule::{Catalog, FunctionRule};
use crate::sampling::{random_unit_vector, seeded_rng};
use crate::set::CompactRealSet;
use crate::space::{PExp, SpaceTag};

/// Sesquilinear pairing `⟨y, x⟩ = Σ conj(y_i) x_i`.
fn pairing(y: &DVector<Complex64>, x: &DVector<Complex64>) -> Complex64 {
    y.dotc(x)
}

fn lp_operator(matrix: DMatrix<Complex64>, p: PExp) -> OperatorModel {
    let (r, c) = matrix.shape();
    OperatorModel::new(matrix, SpaceTag::lp(p, c), SpaceTag::lp(p, r))
        .expect("square tags match the matrix")
}

/// `‖A‖_{p→p}` for a raw matrix.
pub fn matrix_p_norm(a: &DMatrix<Complex64>, p: PExp, seed: u64) -> NormEstimate {
    operator_norm_seeded(&lp_operator(a.clone(), p), seed)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct PNormEntry {
    pub p: f64,
    pub value: f64,
    pub exact: bool,
}

/// Table of `‖A‖_p` over a sample list, with exactness flags.
pub fn p_norm_profile(a: &DMatrix<Complex64>, ps: &[PExp], seed: u64) -> Vec<PNormEntry> {
    ps.iter()
        .map(|&p| {
            let est = matrix_p_norm(a, p, seed);
            PNormEntry { p: p.as_f64(), value: est.value, exact: est.exact }
        })
        .collect()
}

/// One linear transformation viewed along a range of exponents.
#[derive(Clone, Debug)]
pub struct PScaleFamily {
    pub matrix: DMatrix<Complex64>,
    pub p_range: (PExp, PExp),
    pub norm_table: Vec<PNormEntry>,
}

impl PScaleFamily {
    pub fn new(
        matrix: DMatrix<Complex64>,
        r: PExp,
        s: PExp,
        sample_ps: &[PExp],
        seed: u64,
    ) -> Result<Self> {
        if r.as_f64() >= s.as_f64() {
            return Err(Error::invalid("exponent range needs r < s"));
        }
        let norm_table = p_norm_profile(&matrix, sample_ps, seed);
        Ok(PScaleFamily { matrix, p_range: (r, s), norm_table })
    }
}

fn is_exact_endpoint(p: PExp) -> bool {
    matches!(p, PExp::Inf) || matches!(p, PExp::Finite(x) if x == 1.0 || x == 2.0)
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RieszThorinReport {
    pub check: String,
    pub p0: f64,
    pub p1: f64,
    pub theta: f64,
    pub p_theta: f64,
    /// Estimate (or exact value) of `‖A‖_{p_θ}`.
    pub lhs: f64,
    /// `‖A‖_{p0}^{1-θ} · ‖A‖_{p1}^{θ}`.
    pub rhs: f64,
    pub margin: f64,
    pub exact_flags: Vec<bool>,
    pub pass: bool,
}

impl RieszThorinReport {
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "margin": self.margin,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pTheta": self.p_theta,
            "exactFlags": self.exact_flags,
            "pass": self.pass,
        })
    }
}

/// Verify `‖A‖_{p_θ} <= ‖A‖_{p0}^{1-θ}·‖A‖_{p1}^{θ} + tol` with exact
/// endpoint norms, `1/p_θ = (1-θ)/p0 + θ/p1`.
pub fn riesz_thorin_check(
    a: &DMatrix<Complex64>,
    p0: PExp,
    p1: PExp,
    theta: f64,
    tol: f64,
    seed: u64,
) -> Result<RieszThorinReport> {
    if !is_exact_endpoint(p0) || !is_exact_endpoint(p1) {
        return Err(Error::invalid("interpolation endpoints must lie in {1, 2, ∞}"));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::invalid("θ must lie in [0, 1]"));
    }
    let inv = |p: PExp| match p {
        PExp::Inf => 0.0,
        PExp::Finite(x) => 1.0 / x,
    };
    let inv_theta = (1.0 - theta) * inv(p0) + theta * inv(p1);
    let p_theta = if inv_theta == 0.0 {
        PExp::Inf
    } else {
        PExp::new(1.0 / inv_theta)?
    };

    let n0 = matrix_p_norm(a, p0, seed);
    let n1 = matrix_p_norm(a, p1, seed);
    let lhs = matrix_p_norm(a, p_theta, seed);
    let rhs = n0.value.powf(1.0 - theta) * n1.value.powf(theta);
    let margin = rhs - lhs.value;
    Ok(RieszThorinReport {
        check: "riesz-thorin".into(),
        p0: p0.as_f64(),
        p1: p1.as_f64(),
        theta,
        p_theta: p_theta.as_f64(),
        lhs: lhs.value,
        rhs,
        margin,
        exact_flags: vec![lhs.exact, n0.exact, n1.exact],
        pass: lhs.value <= rhs + tol,
    })
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DualityReport {
    pub check: String,
    pub trials: usize,
    pub worst_defect: f64,
    pub pass: bool,
}

impl DualityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "worstDefect": self.worst_defect,
            "trials": self.trials,
            "pass": self.pass,
        })
    }
}

/// Finite shadow of the bi-adjoint endpoint construction: with `V = (A*)*`,
/// check `⟨y, Vx⟩ = ⟨A*y, x⟩ = ⟨y, Ax⟩` on random unit pairs.
pub fn duality_identity_check(
    a: &DMatrix<Complex64>,
    trials: usize,
    seed: u64,
    tol: f64,
) -> DualityReport {
    let mut rng = seeded_rng(seed);
    let adj = a.adjoint();
    let v = adj.adjoint();
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let x = random_unit_vector(a.ncols(), PExp::two(), &mut rng);
        let y = random_unit_vector(a.nrows(), PExp::two(), &mut rng);
        let lhs = pairing(&y, &(&v * &x));
        let mid = pairing(&(&adj * &y), &x);
        let rhs = pairing(&y, &(a * &x));
        worst = worst.max((lhs - mid).norm()).max((mid - rhs).norm());
    }
    DualityReport {
        check: "duality-identity".into(),
        trials,
        worst_defect: worst,
        pass: worst <= tol,
    }
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LeftExtensionReport {
    pub check: String,
    /// Worst gap between the actions of the family members on shared
    /// vectors across sampled exponents (expected 0: one matrix).
    pub consistency_defect: f64,
    /// `sup_p sup_f ‖Ψ_p(f)‖_p / ‖f‖_BV`.
    pub uniform_bound: f64,
    /// Worst defect of the product law on the endpoint model.
    pub product_defect: f64,
    pub sampled_ps: Vec<f64>,
    pub pass: bool,
}

impl LeftExtensionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "worstDefect": self.consistency_defect.max(self.product_defect),
            "uniformBound": self.uniform_bound,
            "sampledPs": self.sampled_ps,
            "pass": self.pass,
        })
    }
}

/// One diagonal family `Ψ_p(f) = diag(f(t_i))` across sampled exponents:
/// the matrix does not depend on `p` (cross-exponent consistency), the norms
/// are uniformly bounded by the function norm with constant 1, and the
/// product law holds on the smallest-exponent endpoint model.
pub fn extend_calculus_left(
    set: &CompactRealSet,
    catalog: &Catalog,
    ps: &[PExp],
    tol: f64,
    seed: u64,
) -> Result<LeftExtensionReport> {
    if ps.is_empty() {
        return Err(Error::invalid("need at least one sampled exponent"));
    }
    let cal = diagonal_calculus(set);
    let mut rng = seeded_rng(seed);
    let mut consistency = 0.0f64;
    let mut uniform = 0.0f64;
    let mut product = 0.0f64;

    for e in catalog.entries() {
        let m = cal.evaluate(&e.rule)?;
        // (i) the same matrix acts identically regardless of the norm tag
        let x = random_unit_vector(set.len(), PExp::two(), &mut rng);
        let reference = m.matrix() * &x;
        for &p in ps {
            let tagged = lp_operator(m.matrix().clone(), p);
            let y = tagged.apply(&x)?;
            let gap = (&y - &reference).iter().map(|v| v.norm()).fold(0.0, f64::max);
            consistency = consistency.max(gap);
        }
        // (ii) uniform boundedness with constant 1 against the BV norm
        let f_norm = restrict(&e.rule, set).bv_norm();
        if f_norm > 0.0 {
            for &p in ps {
                let est = matrix_p_norm(m.matrix(), p, seed);
                uniform = uniform.max(est.value / f_norm);
            }
        }
    }

    // (iii) endpoint product law U_{fg} = U_f U_g
    for (a, b) in catalog.pairs() {
        let fg = cal.evaluate(&FunctionRule::product(a.rule.clone(), b.rule.clone()))?;
        let fa = cal.evaluate(&a.rule)?;
        let fb = cal.evaluate(&b.rule)?;
        let defect = fg.sub(&fa.compose(&fb)?)?.max_abs_entry();
        product = product.max(defect);
    }

    Ok(LeftExtensionReport {
        check: "extend-calculus-left".into(),
        consistency_defect: consistency,
        uniform_bound: uniform,
        product_defect: product,
        sampled_ps: ps.iter().map(|p| p.as_f64()).collect(),
        pass: consistency == 0.0 && uniform <= 1.0 + tol && product == 0.0,
    })
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RightExtensionReport {
    pub check: String,
    /// `‖U_{fg} - U_g U_f‖` worst case on the diagonal model.
    pub diagonal_defect: f64,
    /// Same on the idempotent-built model.
    pub idempotent_defect: f64,
    /// Worst gap along the pairing chain on random vectors.
    pub pairing_defect: f64,
    pub pass: bool,
}

impl RightExtensionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "worstDefect": self.diagonal_defect.max(self.idempotent_defect),
            "pairingDefect": self.pairing_defect,
            "pass": self.pass,
        })
    }
}

fn anti_hom_defects(
    evaluate: &dyn Fn(&FunctionRule) -> Result<OperatorModel>,
    catalog: &Catalog,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for (a, b) in catalog.pairs() {
        let v_fg = evaluate(&FunctionRule::product(a.rule.clone(), b.rule.clone()))?;
        let v_f = evaluate(&a.rule)?;
        let v_g = evaluate(&b.rule)?;
        // homomorphism on the sup side
        let hom = v_fg.sub(&v_f.compose(&v_g)?)?.max_abs_entry();
        // antihomomorphism of the pre-adjoints
        let u_fg = v_fg.adjoint();
        let u_swap = v_g.adjoint().compose(&v_f.adjoint())?;
        let anti = u_fg.sub(&u_swap)?.max_abs_entry();
        worst = worst.max(hom).max(anti);
    }
    Ok(worst)
}

fn pairing_chain_defect(
    evaluate: &dyn Fn(&FunctionRule) -> Result<OperatorModel>,
    catalog: &Catalog,
    dim: usize,
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for (a, b) in catalog.pairs() {
        let v_fg = evaluate(&FunctionRule::product(a.rule.clone(), b.rule.clone()))?;
        let v_f = evaluate(&a.rule)?;
        let v_g = evaluate(&b.rule)?;
        let u_f = v_f.adjoint();
        let u_g = v_g.adjoint();
        let x = random_unit_vector(dim, PExp::two(), rng);
        let y = random_unit_vector(dim, PExp::two(), rng);

        let t1 = pairing(&y, &v_fg.apply(&x)?);
        let t2 = pairing(&v_fg.adjoint().apply(&y)?, &x);
        let t3 = pairing(&u_g.compose(&u_f)?.apply(&y)?, &x);
        let t4 = pairing(&u_f.apply(&y)?, &v_g.apply(&x)?);
        let t5 = pairing(&y, &v_f.compose(&v_g)?.apply(&x)?);
        for pair in [(t1, t2), (t2, t3), (t3, t4), (t4, t5)] {
            worst = worst.max((pair.0 - pair.1).norm());
        }
    }
    Ok(worst)
}

/// Pre-adjoint transfer: for each rule form `V_f` on the sup model and its
/// adjoint `U_f` on the ℓ¹ model, then verify the antihomomorphism
/// `U_{fg} = U_g U_f`, the homomorphism `V_{fg} = V_f V_g`, and the pairing
/// chain, on a diagonal model and on an exactly idempotent two-point model.
pub fn adjoint_calculus_right(
    set: &CompactRealSet,
    catalog: &Catalog,
    tol: f64,
    seed: u64,
) -> Result<RightExtensionReport> {
    let mut rng = seeded_rng(seed);

    // Diagonal (commutative) model over the set.
    let diag = diagonal_calculus(set);
    let eval_diag = |rule: &FunctionRule| -> Result<OperatorModel> {
        let m = diag.evaluate(rule)?;
        OperatorModel::new(
            m.matrix().clone(),
            SpaceTag::sup(set.len()),
            SpaceTag::sup(set.len()),
        )
    };
    let diagonal_defect = anti_hom_defects(&eval_diag, catalog)?;

    // Idempotent-built model: f(0)(I - P) + f(1)P with P exactly idempotent
    // and genuinely non-diagonal.
    let dim = 8usize;
    let p = exact_idempotent(dim, 3, &mut rng)?;
    let pencil = two_point_calculus(p, SpaceTag::sup(dim))?;
    let eval_pencil = |rule: &FunctionRule| -> Result<OperatorModel> { pencil.evaluate(rule) };
    let idempotent_defect = anti_hom_defects(&eval_pencil, catalog)?;

    let pairing_defect = pairing_chain_defect(&eval_pencil, catalog, dim, &mut rng)?
        .max(pairing_chain_defect(&eval_diag, catalog, set.len(), &mut rng)?);

    Ok(RightExtensionReport {
        check: "adjoint-calculus-right".into(),
        diagonal_defect,
        idempotent_defect,
        pairing_defect,
        pass: diagonal_defect == 0.0 && idempotent_defect == 0.0 && pairing_defect <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::random_matrix;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn riesz_thorin_identity_matrix_is_tight() {
        let a = DMatrix::<Complex64>::identity(5, 5);
        for theta in [0.0, 0.25, 0.5, 1.0] {
            let r = riesz_thorin_check(&a, PExp::one(), PExp::Inf, theta, 1e-9, 1).unwrap();
            assert!(r.pass);
            assert!((r.lhs - 1.0).abs() <= 1e-9);
            assert!((r.rhs - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn riesz_thorin_diagonal_matrices_are_exponent_independent() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![re(0.5), re(-2.0), re(1.0)]));
        let r = riesz_thorin_check(&a, PExp::one(), PExp::Inf, 0.5, 1e-9, 1).unwrap();
        assert!(r.pass);
        assert!((r.rhs - 2.0).abs() <= 1e-12);
        assert!(r.margin >= 0.0);
    }

    #[test]
    fn riesz_thorin_random_complex_matrices_at_the_midpoint() {
        let mut rng = seeded_rng(31);
        for _ in 0..25 {
            let a = random_matrix(20, 20, &mut rng);
            let r = riesz_thorin_check(&a, PExp::one(), PExp::Inf, 0.5, 1e-9, 7).unwrap();
            assert_eq!(r.p_theta, 2.0);
            assert!(r.exact_flags.iter().all(|&e| e));
            assert!(r.margin >= -1e-9, "margin {}", r.margin);
            assert!(r.pass);
        }
    }

    #[test]
    fn riesz_thorin_rejects_inexact_endpoints() {
        let a = DMatrix::<Complex64>::identity(3, 3);
        assert!(riesz_thorin_check(&a, PExp::new(1.5).unwrap(), PExp::Inf, 0.5, 1e-9, 1).is_err());
        assert!(riesz_thorin_check(&a, PExp::one(), PExp::Inf, 1.5, 1e-9, 1).is_err());
    }

    #[test]
    fn duality_zero_vector_pairs_to_zero() {
        let a = DMatrix::<Complex64>::identity(4, 4);
        let x = DVector::<Complex64>::zeros(4);
        let y = DVector::from_element(4, re(1.0));
        assert_eq!(pairing(&y, &(&a * &x)), re(0.0));
    }

    #[test]
    fn duality_diagonal_coordinate_case() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![re(2.0), re(3.0)]));
        let adj = a.adjoint();
        for i in 0..2 {
            for j in 0..2 {
                let mut x = DVector::<Complex64>::zeros(2);
                x[j] = re(1.0);
                let mut y = DVector::<Complex64>::zeros(2);
                y[i] = re(1.0);
                let lhs = pairing(&y, &(&a * &x));
                let mid = pairing(&(&adj * &y), &x);
                let expect = if i == j { a[(i, i)] } else { re(0.0) };
                assert_eq!(lhs, expect);
                assert_eq!(mid, expect);
            }
        }
    }

    #[test]
    fn duality_check_on_random_matrices() {
        let mut rng = seeded_rng(5);
        for _ in 0..10 {
            let a = random_matrix(12, 9, &mut rng);
            let report = duality_identity_check(&a, 100, 23, 1e-12);
            assert!(report.pass, "worst defect {}", report.worst_defect);
        }
    }

    #[test]
    fn left_extension_on_sigma0() {
        let set = CompactRealSet::sigma0(6).unwrap();
        let ps = [
            PExp::one(),
            PExp::new(1.5).unwrap(),
            PExp::two(),
            PExp::new(4.0).unwrap(),
            PExp::Inf,
        ];
        let report =
            extend_calculus_left(&set, &Catalog::standard(), &ps, 1e-12, 3).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.consistency_defect, 0.0);
        assert_eq!(report.product_defect, 0.0);
        assert!(report.uniform_bound <= 1.0 + 1e-12);
    }

    #[test]
    fn left_extension_unit_rule_is_the_identity_at_every_exponent() {
        let set = CompactRealSet::sigma0(5).unwrap();
        let cal = diagonal_calculus(&set);
        let m = cal.evaluate(&FunctionRule::one()).unwrap();
        for p in [PExp::one(), PExp::two(), PExp::Inf] {
            let est = matrix_p_norm(m.matrix(), p, 1);
            assert_eq!(est.value, 1.0);
        }
    }

    #[test]
    fn right_extension_product_laws_are_exact() {
        let set = CompactRealSet::sigma0(6).unwrap();
        let report = adjoint_calculus_right(&set, &Catalog::standard(), 1e-12, 11).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.diagonal_defect, 0.0);
        assert_eq!(report.idempotent_defect, 0.0);
    }

    #[test]
    fn profile_of_the_shear_matrix() {
        // [[1, 1], [0, 1]]: row and column sums give 2; the spectral norm is
        // the golden ratio.
        let a = DMatrix::from_row_slice(2, 2, &[re(1.0), re(1.0), re(0.0), re(1.0)]);
        let profile = p_norm_profile(&a, &[PExp::one(), PExp::two(), PExp::Inf], 3);
        assert_eq!(profile[0].value, 2.0);
        assert!(profile[0].exact);
        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((profile[1].value - golden).abs() <= 1e-9, "{}", profile[1].value);
        assert!(profile[1].exact);
        assert_eq!(profile[2].value, 2.0);
    }

    #[test]
    fn profile_of_diagonals_is_constant() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![re(2.0), re(1.0)]));
        let ps = [PExp::one(), PExp::new(1.5).unwrap(), PExp::two(), PExp::new(3.0).unwrap(), PExp::Inf];
        let profile = p_norm_profile(&a, &ps, 9);
        for entry in &profile {
            assert!(
                (entry.value - 2.0).abs() <= 1e-9,
                "p = {}: {}",
                entry.p,
                entry.value
            );
            assert!(entry.value <= 2.0 + 1e-12, "estimates stay below the truth");
        }
    }

    #[test]
    fn p_scale_family_carries_exact_endpoints() {
        let mut rng = seeded_rng(8);
        let a = random_matrix(6, 6, &mut rng);
        let fam = PScaleFamily::new(
            a,
            PExp::one(),
            PExp::Inf,
            &[PExp::one(), PExp::two(), PExp::Inf],
            5,
        )
        .unwrap();
        assert!(fam.norm_table.iter().all(|e| e.exact));
        assert!(PScaleFamily::new(
            fam.matrix.clone(),
            PExp::two(),
            PExp::two(),
            &[],
            5
        )
        .is_err());
    }
}
