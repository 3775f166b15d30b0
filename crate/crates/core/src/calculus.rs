//! Functional calculi for the operator models: assignments `f ↦ f(T)`.
//!
//! Every shipped calculus is a unital algebra homomorphism from the rule
//! catalog into tagged matrices, and the underlying operator is recovered as
//! the value at the identity rule. The two inequivalent extensions of the
//! diagonal calculus on `{0} ∪ {1/k}` differ only in how they fill the entry
//! at the accumulation point: one takes the value of the rule at 0, the
//! other the exact limit of `f(1/k)` — computed symbolically so that the
//! inequivalence witness is meaningful rather than a rounding artifact.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::Rational64;
use serde_json::{json, Value};

use crate::bv::{continuity_at_limit, restrict};
use crate::error::{Error, Result};
use crate::operator::{operator_norm, OperatorModel};
use crate::rule::{Catalog, FunctionRule};
use crate::set::{Coord, CompactRealSet};
use crate::space::{PExp, SpaceTag};

#[derive(Clone, Debug)]
enum CalcKind {
    /// `f(T) = diag(f(t_i))` over explicit points (a multiplication model,
    /// possibly with repeated points from a block extension).
    Diagonal { points: Vec<Coord>, tag: SpaceTag },
    /// Same diagonal, but the entry at the leading point is the exact limit
    /// of `f(1/k)` instead of `f(0)`.
    LimitDiagonal { points: Vec<Coord>, tag: SpaceTag },
    /// `f(T) = V⁻¹ · base(f) · V`.
    Conjugated {
        base: Box<CalculusMap>,
        iso: OperatorModel,
        iso_inv: OperatorModel,
    },
    /// `f(T) = f(0)(I - P) + f(1)P` for an idempotent `P` (spectrum `{0,1}`).
    TwoPoint { projection: DMatrix<Complex64>, tag: SpaceTag },
}

/// An assignment `f ↦ f(T)` for a fixed operator model.
#[derive(Clone, Debug)]
pub struct CalculusMap {
    kind: CalcKind,
}

fn diagonal_matrix(values: impl Iterator<Item = Complex64>, n: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(n, n);
    for (i, v) in values.enumerate() {
        m[(i, i)] = v;
    }
    m
}

/// The calculus of the multiplication operator on a compact-set model:
/// `f(T) = diag(f(t_1), …, f(t_k))`, whose model norm is exactly `‖f‖_∞`.
pub fn diagonal_calculus(set: &CompactRealSet) -> CalculusMap {
    CalculusMap {
        kind: CalcKind::Diagonal {
            points: set.points().to_vec(),
            tag: SpaceTag::c_sigma(set),
        },
    }
}

/// A diagonal calculus over an explicit point list (repeats allowed), for
/// block-extended multiplication models.
pub fn diagonal_calculus_over(points: Vec<Coord>, tag: SpaceTag) -> Result<CalculusMap> {
    if points.len() != tag.dimension {
        return Err(Error::DimensionMismatch(format!(
            "{} diagonal points for tag dimension {}",
            points.len(),
            tag.dimension
        )));
    }
    Ok(CalculusMap { kind: CalcKind::Diagonal { points, tag } })
}

/// Transport a calculus along an isomorphism pair: `f(T) = V⁻¹ · base(f) · V`.
/// The pair must compose to the identity (checked exactly).
pub fn conjugated_calculus(
    base: CalculusMap,
    iso: OperatorModel,
    iso_inv: OperatorModel,
) -> Result<CalculusMap> {
    let round = iso.compose(&iso_inv)?;
    let n = round.matrix().nrows();
    if round.matrix() != &DMatrix::<Complex64>::identity(n, n) {
        return Err(Error::invalid("iso · isoInv must be the identity"));
    }
    Ok(conjugated_calculus_trusted(base, iso, iso_inv))
}

/// Same construction without the inverse-pair validation, for callers that
/// built the pair themselves. The validation is a full matrix product, which
/// dominates everything else at large truncation sizes.
pub(crate) fn conjugated_calculus_trusted(
    base: CalculusMap,
    iso: OperatorModel,
    iso_inv: OperatorModel,
) -> CalculusMap {
    CalculusMap {
        kind: CalcKind::Conjugated { base: Box::new(base), iso, iso_inv },
    }
}

fn phi_points(n: u32) -> Result<Vec<Coord>> {
    if n < 2 {
        return Err(Error::invalid("extension models need n >= 2"));
    }
    let mut points = vec![Coord::zero()];
    points.extend((1..=n as i64).map(|k| Coord::Exact(Rational64::new(1, k))));
    Ok(points)
}

/// The extension of the diagonal calculus over `{0} ∪ {1/k : k <= n}` that
/// fills the accumulation-point entry with `f(0)`.
pub fn value_extension(n: u32) -> Result<CalculusMap> {
    let points = phi_points(n)?;
    let tag = SpaceTag::lp(PExp::two(), points.len());
    diagonal_calculus_over(points, tag)
}

/// The extension that fills the accumulation-point entry with the exact
/// limit of `f(1/k)` instead. Agrees with [`value_extension`] exactly on
/// rules continuous at 0; differs on `χ_{{0}}`.
pub fn limit_extension(n: u32) -> Result<CalculusMap> {
    let points = phi_points(n)?;
    let tag = SpaceTag::lp(PExp::two(), points.len());
    Ok(CalculusMap { kind: CalcKind::LimitDiagonal { points, tag } })
}

/// The calculus `f ↦ f(0)(I - P) + f(1)P` of an idempotent model.
pub fn two_point_calculus(projection: DMatrix<Complex64>, tag: SpaceTag) -> Result<CalculusMap> {
    if projection.nrows() != projection.ncols() || projection.nrows() != tag.dimension {
        return Err(Error::DimensionMismatch(
            "projection must be square and match the tag".into(),
        ));
    }
    let defect = (&projection * &projection - &projection)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    if defect > 1e-12 {
        return Err(Error::invalid(format!("matrix is not idempotent (defect {defect})")));
    }
    Ok(CalculusMap { kind: CalcKind::TwoPoint { projection, tag } })
}

impl CalculusMap {
    /// The space the calculus acts on.
    pub fn space(&self) -> SpaceTag {
        match &self.kind {
            CalcKind::Diagonal { tag, .. }
            | CalcKind::LimitDiagonal { tag, .. }
            | CalcKind::TwoPoint { tag, .. } => tag.clone(),
            CalcKind::Conjugated { iso, .. } => iso.domain().clone(),
        }
    }

    /// The operator itself: the value of the calculus at the identity rule.
    pub fn operator(&self) -> Result<OperatorModel> {
        self.evaluate(&FunctionRule::identity())
    }

    /// The model points the calculus evaluates rules on (diagonal points,
    /// the base points for a conjugated calculus, `{0, 1}` for the
    /// idempotent pencil).
    pub fn spectrum(&self) -> Vec<Coord> {
        match &self.kind {
            CalcKind::Diagonal { points, .. } | CalcKind::LimitDiagonal { points, .. } => {
                points.clone()
            }
            CalcKind::Conjugated { base, .. } => base.spectrum(),
            CalcKind::TwoPoint { .. } => vec![Coord::zero(), Coord::exact(1, 1)],
        }
    }

    /// A deduplicated sorted compact-set model of [`Self::spectrum`], for
    /// restricting rules when computing norm ratios.
    pub fn spectrum_set(&self) -> Result<CompactRealSet> {
        let mut exact: Vec<Rational64> = Vec::new();
        let mut approx: Vec<f64> = Vec::new();
        for c in self.spectrum() {
            match c.as_exact() {
                Some(r) => {
                    if !exact.contains(&r) {
                        exact.push(r);
                    }
                }
                None => approx.push(c.as_f64()),
            }
        }
        if approx.is_empty() {
            CompactRealSet::from_rationals(exact, &[])
        } else {
            let mut all: Vec<f64> = exact
                .iter()
                .map(|r| *r.numer() as f64 / *r.denom() as f64)
                .chain(approx)
                .collect();
            all.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
            all.dedup();
            CompactRealSet::from_f64s(all, &[])
        }
    }

    /// Evaluate `f(T)`.
    pub fn evaluate(&self, rule: &FunctionRule) -> Result<OperatorModel> {
        match &self.kind {
            CalcKind::Diagonal { points, tag } => {
                let m = diagonal_matrix(points.iter().map(|t| rule.eval(t)), points.len());
                OperatorModel::new(m, tag.clone(), tag.clone())
            }
            CalcKind::LimitDiagonal { points, tag } => {
                let mut vals: Vec<Complex64> = points.iter().map(|t| rule.eval(t)).collect();
                vals[0] = rule.limit_along_inv_k();
                let m = diagonal_matrix(vals.into_iter(), points.len());
                OperatorModel::new(m, tag.clone(), tag.clone())
            }
            CalcKind::Conjugated { base, iso, iso_inv } => {
                let inner = base.evaluate(rule)?;
                iso_inv.compose(&inner)?.compose(iso)
            }
            CalcKind::TwoPoint { projection, tag } => {
                let dim = projection.nrows();
                let f0 = rule.eval(&Coord::zero());
                let f1 = rule.eval(&Coord::exact(1, 1));
                let eye = DMatrix::<Complex64>::identity(dim, dim);
                let m = (&eye - projection).map(|v| f0 * v) + projection.map(|v| f1 * v);
                OperatorModel::new(m, tag.clone(), tag.clone())
            }
        }
    }

    /// Apply `f(T)` to a vector without materializing the full matrix;
    /// conjugated calculi chain three matrix-vector products.
    pub fn apply(&self, rule: &FunctionRule, x: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        match &self.kind {
            CalcKind::Diagonal { points, .. } => {
                if x.len() != points.len() {
                    return Err(Error::DimensionMismatch("vector length != diagonal size".into()));
                }
                Ok(DVector::from_iterator(
                    x.len(),
                    points.iter().zip(x.iter()).map(|(t, xi)| rule.eval(t) * xi),
                ))
            }
            CalcKind::LimitDiagonal { points, .. } => {
                if x.len() != points.len() {
                    return Err(Error::DimensionMismatch("vector length != diagonal size".into()));
                }
                let mut out = DVector::from_iterator(
                    x.len(),
                    points.iter().zip(x.iter()).map(|(t, xi)| rule.eval(t) * xi),
                );
                out[0] = rule.limit_along_inv_k() * x[0];
                Ok(out)
            }
            CalcKind::Conjugated { base, iso, iso_inv } => {
                let up = iso.apply(x)?;
                let mid = base.apply(rule, &up)?;
                iso_inv.apply(&mid)
            }
            CalcKind::TwoPoint { .. } => {
                let m = self.evaluate(rule)?;
                m.apply(x)
            }
        }
    }
}

/// Result of sweeping the homomorphism laws over a catalog.
#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HomomorphismReport {
    pub worst_defect: f64,
    /// Rule ids of the pair attaining the worst defect.
    pub witness: Option<[String; 2]>,
    /// Whether the unit rule maps exactly to the identity matrix.
    pub unital: bool,
    pub catalog_size: usize,
    pub tol: f64,
    pub pass: bool,
}

impl HomomorphismReport {
    pub fn to_json(&self) -> Value {
        json!({
            "worstDefect": self.worst_defect,
            "witness": self.witness,
            "unital": self.unital,
            "catalogSize": self.catalog_size,
            "pass": self.pass,
        })
    }
}

/// Check multiplicativity, additivity, and unitality of a calculus over all
/// ordered catalog pairs. Defects are measured entrywise (max absolute
/// entry), which is zero exactly when the law holds exactly.
pub fn homomorphism_check(
    calculus: &CalculusMap,
    catalog: &Catalog,
    tol: f64,
) -> Result<HomomorphismReport> {
    let unit = calculus.evaluate(&FunctionRule::one())?;
    let n = unit.matrix().nrows();
    let unital = unit.matrix() == &DMatrix::<Complex64>::identity(n, n);

    let mut worst = 0.0f64;
    let mut witness = None;
    let mut evaluated: Vec<OperatorModel> = Vec::with_capacity(catalog.len());
    for e in catalog.entries() {
        evaluated.push(calculus.evaluate(&e.rule)?);
    }
    for (i, a) in catalog.entries().iter().enumerate() {
        for (j, b) in catalog.entries().iter().enumerate() {
            let prod = calculus.evaluate(&FunctionRule::product(a.rule.clone(), b.rule.clone()))?;
            let sum = calculus.evaluate(&FunctionRule::sum(a.rule.clone(), b.rule.clone()))?;
            let prod_defect = prod.sub(&evaluated[i].compose(&evaluated[j])?)?.max_abs_entry();
            let sum_defect = sum.sub(&evaluated[i].add(&evaluated[j])?)?.max_abs_entry();
            let defect = prod_defect.max(sum_defect);
            if defect > worst {
                worst = defect;
                witness = Some([a.id.clone(), b.id.clone()]);
            }
        }
    }
    Ok(HomomorphismReport {
        worst_defect: worst,
        witness,
        unital,
        catalog_size: catalog.len(),
        tol,
        pass: unital && worst <= tol,
    })
}

/// Which function norm to ratio operator norms against.
#[derive(Clone, Copy, Debug)]
pub enum CalculusNorm {
    /// `‖f‖_∞ + var f` on the calculus spectrum.
    Bv,
    /// Same norm, but rules failing the continuity probe at the
    /// accumulation point are excluded from the supremum.
    AcProxy { n: u32, m: usize, tol: f64 },
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    /// `sup ‖f(T)‖ / ‖f‖` over the admitted catalog rules — a lower bound
    /// for the true calculus norm.
    pub bound: f64,
    pub witness: Option<String>,
    pub catalog_size: usize,
    /// How many rules entered the supremum (the AC proxy may skip some).
    pub admitted: usize,
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "bound": self.bound,
            "witness": self.witness,
            "catalogSize": self.catalog_size,
            "admitted": self.admitted,
        })
    }
}

/// `sup ‖f(T)‖ / norm(f)` over the catalog (zero-norm rules skipped).
pub fn calculus_bound(
    calculus: &CalculusMap,
    catalog: &Catalog,
    norm: CalculusNorm,
) -> Result<BoundReport> {
    if catalog.is_empty() {
        return Err(Error::invalid("calculus bound needs a nonempty catalog"));
    }
    let set = calculus.spectrum_set()?;
    let mut bound = 0.0f64;
    let mut witness = None;
    let mut admitted = 0usize;
    for e in catalog.entries() {
        if let CalculusNorm::AcProxy { n, m, tol } = norm {
            if !continuity_at_limit(&e.rule, n, m, tol)?.continuous {
                continue;
            }
        }
        let f_norm = restrict(&e.rule, &set).bv_norm();
        if f_norm == 0.0 {
            continue;
        }
        admitted += 1;
        let ratio = operator_norm(&calculus.evaluate(&e.rule)?).value / f_norm;
        if ratio > bound {
            bound = ratio;
            witness = Some(e.id.clone());
        }
    }
    Ok(BoundReport { bound, witness, catalog_size: catalog.len(), admitted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{c0_iso, multiplication_operator};
    use crate::sampling::{random_vector, seeded_rng};

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn sigma0(n: u32) -> CompactRealSet {
        CompactRealSet::sigma0(n).unwrap()
    }

    #[test]
    fn diagonal_calculus_unit_and_generator() {
        let set = sigma0(4);
        let cal = diagonal_calculus(&set);
        let one = cal.evaluate(&FunctionRule::one()).unwrap();
        assert_eq!(one.matrix(), &DMatrix::<Complex64>::identity(5, 5));
        let t = cal.operator().unwrap();
        assert_eq!(t.matrix(), multiplication_operator(&set).matrix());
    }

    #[test]
    fn diagonal_calculus_left_indicator() {
        let set = sigma0(4);
        let cal = diagonal_calculus(&set);
        let chi = cal
            .evaluate(&FunctionRule::chi_leq(Rational64::new(0, 1)))
            .unwrap();
        let expect = [1.0, 1.0, 1.0, 0.0, 0.0];
        for (i, &x) in expect.iter().enumerate() {
            assert_eq!(chi.matrix()[(i, i)], re(x));
        }
        assert_eq!(operator_norm(&chi).value, 1.0);
    }

    #[test]
    fn diagonal_norm_identity_matches_sup_norm() {
        let set = sigma0(10);
        let cal = diagonal_calculus(&set);
        for e in Catalog::standard().entries() {
            let norm = operator_norm(&cal.evaluate(&e.rule).unwrap()).value;
            let sup = restrict(&e.rule, &set).sup_norm();
            assert_eq!(norm, sup, "norm identity failed for {}", e.id);
        }
    }

    #[test]
    fn conjugated_calculus_requires_an_inverse_pair() {
        let (u, _) = c0_iso(4).unwrap();
        let (_, vinv) = c0_iso(4).unwrap();
        let bad = vinv.scale(re(2.0));
        assert!(conjugated_calculus(diagonal_calculus(&sigma0(4)), u, bad).is_err());
    }

    #[test]
    fn conjugated_calculus_closed_form() {
        // f(T)x = (f(0)x_0, ((f(t_k) - f(0))x_0 + f(t_k)x_k)_k)
        let n = 12u32;
        let (u, uinv) = c0_iso(n).unwrap();
        let set = sigma0(n);
        let cal = conjugated_calculus(diagonal_calculus(&set), u, uinv).unwrap();
        let mut rng = seeded_rng(17);
        let x = random_vector(n as usize + 1, &mut rng);
        for e in Catalog::standard().entries() {
            let y = cal.apply(&e.rule, &x).unwrap();
            let f0 = e.rule.value_at_zero();
            assert!((y[0] - f0 * x[0]).norm() <= 1e-12);
            for k in 1..=n as i64 {
                let t = Coord::exact(if k % 2 == 0 { 1 } else { -1 }, k);
                let ft = e.rule.eval(&t);
                let expect = (ft - f0) * x[0] + ft * x[k as usize];
                assert!(
                    (y[k as usize] - expect).norm() <= 1e-12,
                    "closed form failed for {} at k = {k}",
                    e.id
                );
            }
            // agree with the materialized matrix product
            let full = cal.evaluate(&e.rule).unwrap().apply(&x).unwrap();
            let gap = (&full - &y).iter().map(|v| v.norm()).fold(0.0, f64::max);
            assert!(gap <= 1e-12);
        }
    }

    #[test]
    fn conjugated_left_indicator_on_e0_alternates() {
        let n = 10u32;
        let (u, uinv) = c0_iso(n).unwrap();
        let cal = conjugated_calculus(diagonal_calculus(&sigma0(n)), u, uinv).unwrap();
        let mut e0 = DVector::zeros(n as usize + 1);
        e0[0] = re(1.0);
        let y = cal
            .apply(&FunctionRule::chi_leq(Rational64::new(0, 1)), &e0)
            .unwrap();
        assert_eq!(y[0], re(1.0));
        for k in 1..=n as usize {
            let expect = if k % 2 == 0 { re(-1.0) } else { re(0.0) };
            assert_eq!(y[k], expect, "coordinate {k}");
        }
    }

    #[test]
    fn extensions_agree_on_polynomials() {
        let v = value_extension(8).unwrap();
        let l = limit_extension(8).unwrap();
        let p = FunctionRule::Polynomial(vec![re(0.5), re(-1.0), re(2.0)]);
        assert_eq!(v.evaluate(&p).unwrap().matrix(), l.evaluate(&p).unwrap().matrix());
    }

    #[test]
    fn extensions_differ_on_the_point_indicator_at_zero() {
        let v = value_extension(6).unwrap();
        let l = limit_extension(6).unwrap();
        let chi0 = FunctionRule::chi_point(Rational64::new(0, 1));
        let mv = v.evaluate(&chi0).unwrap();
        let ml = l.evaluate(&chi0).unwrap();
        assert_eq!(mv.matrix()[(0, 0)], re(1.0));
        assert!(mv.matrix().iter().skip(1).all(|x| *x == re(0.0)));
        assert!(ml.matrix().iter().all(|x| *x == re(0.0)));
    }

    #[test]
    fn extensions_on_the_half_open_unit_indicator() {
        let v = value_extension(5).unwrap();
        let l = limit_extension(5).unwrap();
        let chi = FunctionRule::chi_left_open(Rational64::new(0, 1), Rational64::new(1, 1));
        let mv = v.evaluate(&chi).unwrap();
        let ml = l.evaluate(&chi).unwrap();
        assert_eq!(mv.matrix()[(0, 0)], re(0.0));
        for k in 1..=5 {
            assert_eq!(mv.matrix()[(k, k)], re(1.0));
        }
        assert_eq!(ml.matrix(), &DMatrix::<Complex64>::identity(6, 6));
    }

    #[test]
    fn extensions_share_the_same_operator() {
        let v = value_extension(7).unwrap();
        let l = limit_extension(7).unwrap();
        assert_eq!(
            v.operator().unwrap().matrix(),
            l.operator().unwrap().matrix()
        );
        // diag(0, 1, 1/2, …, 1/7)
        let t = v.operator().unwrap();
        assert_eq!(t.matrix()[(0, 0)], re(0.0));
        assert_eq!(t.matrix()[(1, 1)], re(1.0));
        assert_eq!(t.matrix()[(2, 2)], re(0.5));
    }

    #[test]
    fn homomorphism_check_passes_for_shipped_calculi() {
        let cat = Catalog::standard();
        let diag = diagonal_calculus(&sigma0(10));
        assert!(homomorphism_check(&diag, &cat, 1e-10).unwrap().pass);

        let (u, uinv) = c0_iso(10).unwrap();
        let conj = conjugated_calculus(diagonal_calculus(&sigma0(10)), u, uinv).unwrap();
        assert!(homomorphism_check(&conj, &cat, 1e-10).unwrap().pass);

        assert!(homomorphism_check(&value_extension(20).unwrap(), &cat, 1e-10).unwrap().pass);
        assert!(homomorphism_check(&limit_extension(20).unwrap(), &cat, 1e-10).unwrap().pass);
    }

    #[test]
    fn homomorphism_check_flags_a_corrupted_map() {
        // Perturb one entry of the conjugating inverse; the construction
        // helper would reject the pair, so assemble the map directly.
        let n = 6u32;
        let (u, uinv) = c0_iso(n).unwrap();
        let mut bad = uinv.matrix().clone();
        bad[(0, 1)] += re(0.125);
        let bad_inv =
            OperatorModel::new(bad, uinv.domain().clone(), uinv.codomain().clone()).unwrap();
        let corrupted = CalculusMap {
            kind: CalcKind::Conjugated {
                base: Box::new(diagonal_calculus(&sigma0(n))),
                iso: u,
                iso_inv: bad_inv,
            },
        };
        let report = homomorphism_check(&corrupted, &Catalog::standard(), 1e-10).unwrap();
        assert!(!report.pass);
        assert!(report.worst_defect > 0.0);
        assert!(report.witness.is_some());
    }

    #[test]
    fn calculus_bound_for_diagonal_is_at_most_one() {
        let cal = diagonal_calculus(&sigma0(10));
        let report = calculus_bound(&cal, &Catalog::standard(), CalculusNorm::Bv).unwrap();
        assert!(report.bound <= 1.0 + 1e-12, "bound {}", report.bound);
        assert!(report.bound > 0.0);
    }

    #[test]
    fn calculus_bound_on_a_singleton_reaches_one() {
        let set = CompactRealSet::from_rationals(vec![Rational64::new(1, 1)], &[]).unwrap();
        let cal = diagonal_calculus(&set);
        let catalog = Catalog::new(vec![crate::rule::CatalogEntry {
            id: "one".into(),
            rule: FunctionRule::one(),
        }]);
        let report = calculus_bound(&cal, &catalog, CalculusNorm::Bv).unwrap();
        assert_eq!(report.bound, 1.0);
    }

    #[test]
    fn calculus_bound_conjugated_respects_iso_norms() {
        let (u, uinv) = c0_iso(8).unwrap();
        let u_norm = operator_norm(&u).value;
        let uinv_norm = operator_norm(&uinv).value;
        let cal = conjugated_calculus(diagonal_calculus(&sigma0(8)), u, uinv).unwrap();
        let report = calculus_bound(&cal, &Catalog::standard(), CalculusNorm::Bv).unwrap();
        assert!(report.bound <= u_norm * uinv_norm + 1e-12);
    }

    #[test]
    fn calculus_bound_rejects_empty_catalog() {
        let cal = diagonal_calculus(&sigma0(4));
        assert!(calculus_bound(&cal, &Catalog::new(vec![]), CalculusNorm::Bv).is_err());
    }

    #[test]
    fn ac_proxy_skips_discontinuous_rules() {
        let cal = diagonal_calculus(&sigma0(10));
        let bv = calculus_bound(&cal, &Catalog::standard(), CalculusNorm::Bv).unwrap();
        let ac = calculus_bound(
            &cal,
            &Catalog::standard(),
            CalculusNorm::AcProxy { n: 100, m: 5, tol: 1e-9 },
        )
        .unwrap();
        assert!(ac.admitted < bv.admitted);
    }
}
