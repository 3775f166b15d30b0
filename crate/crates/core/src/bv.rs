//! Functions of bounded variation on a finite compact-set model.
//!
//! On a finite strictly increasing point list the total variation is the sum
//! of consecutive jumps: by the triangle inequality, dropping points from a
//! partition never increases the sum, so the full partition attains the
//! supremum over all sub-partitions. The norm used throughout is
//! `‖f‖ = ‖f‖_∞ + var(f)`, which makes the function space a unital Banach
//! algebra with computable constants.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rule::FunctionRule;
use crate::set::CompactRealSet;

/// A scalar function restricted to a [`CompactRealSet`]: one complex value
/// per point, plus the generating rule when one exists.
#[derive(Clone, Debug, PartialEq)]
pub struct BVFunction {
    set: CompactRealSet,
    values: Vec<Complex64>,
    source_rule: Option<FunctionRule>,
}

/// Restrict a rule to a set by evaluating it at every point.
pub fn restrict(rule: &FunctionRule, set: &CompactRealSet) -> BVFunction {
    let values = set.points().iter().map(|t| rule.eval(t)).collect();
    BVFunction {
        set: set.clone(),
        values,
        source_rule: Some(rule.clone()),
    }
}

impl BVFunction {
    pub fn from_values(set: &CompactRealSet, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != set.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a set of {} points",
                values.len(),
                set.len()
            )));
        }
        Ok(BVFunction { set: set.clone(), values, source_rule: None })
    }

    pub fn set(&self) -> &CompactRealSet {
        &self.set
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn source_rule(&self) -> Option<&FunctionRule> {
        self.source_rule.as_ref()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Total variation over the sorted points: `Σ |v[i+1] - v[i]|`.
    pub fn variation(&self) -> f64 {
        self.values.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
    }

    /// `‖f‖_∞ + var(f)`.
    pub fn bv_norm(&self) -> f64 {
        self.sup_norm() + self.variation()
    }

    fn check_same_set(&self, other: &BVFunction) -> Result<()> {
        if self.set != other.set {
            return Err(Error::SetMismatch(
                "pointwise algebra requires both functions on the same set".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &BVFunction) -> Result<BVFunction> {
        self.check_same_set(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        let source_rule = match (&self.source_rule, &other.source_rule) {
            (Some(f), Some(g)) => Some(FunctionRule::sum(f.clone(), g.clone())),
            _ => None,
        };
        Ok(BVFunction { set: self.set.clone(), values, source_rule })
    }

    pub fn mul(&self, other: &BVFunction) -> Result<BVFunction> {
        self.check_same_set(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        let source_rule = match (&self.source_rule, &other.source_rule) {
            (Some(f), Some(g)) => Some(FunctionRule::product(f.clone(), g.clone())),
            _ => None,
        };
        Ok(BVFunction { set: self.set.clone(), values, source_rule })
    }

    pub fn scale(&self, c: Complex64) -> BVFunction {
        BVFunction {
            set: self.set.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
            source_rule: self.source_rule.clone().map(|f| FunctionRule::scale(c, f)),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut doc = self.set.to_json();
        doc["values"] = json!(self
            .values
            .iter()
            .map(|v| vec![v.re, v.im])
            .collect::<Vec<_>>());
        doc
    }
}

/// Outcome of the continuity-at-the-accumulation-point probe.
#[derive(Clone, Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContinuityReport {
    pub continuous: bool,
    /// `max |f(t) - f(0)|` over the probed tail points.
    pub defect: f64,
    pub n: u32,
    pub m: usize,
    pub tol: f64,
}

/// Probe continuity of a rule at the accumulation point 0 of the alternating
/// reciprocal set: evaluate `|f(t) - f(0)|` at the `m` points of each sign
/// closest to 0 in the size-`n` truncation. On a fixed finite truncation
/// every function is trivially of bounded variation, so membership in the
/// continuous subalgebra is a property of the rule family, detected here.
pub fn continuity_at_limit(
    rule: &FunctionRule,
    n: u32,
    m: usize,
    tol: f64,
) -> Result<ContinuityReport> {
    if m >= n as usize {
        return Err(Error::invalid(format!(
            "tail sample count m = {m} must be smaller than the truncation size n = {n}"
        )));
    }
    let set = CompactRealSet::sigma0(n)?;
    let zero_idx = set
        .position(&num_rational::Rational64::new(0, 1))
        .expect("0 belongs to sigma0");
    let f0 = rule.value_at_zero();

    let mut defect: f64 = 0.0;
    // m negative points nearest 0 (just below zero_idx) and m positive ones.
    for step in 1..=m {
        if zero_idx >= step {
            let t = set.point(zero_idx - step);
            defect = defect.max((rule.eval(t) - f0).norm());
        }
        if zero_idx + step < set.len() {
            let t = set.point(zero_idx + step);
            defect = defect.max((rule.eval(t) - f0).norm());
        }
    }
    Ok(ContinuityReport { continuous: defect <= tol, defect, n, m, tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::Catalog;
    use num_rational::Rational64;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn sigma0(n: u32) -> CompactRealSet {
        CompactRealSet::sigma0(n).unwrap()
    }

    /// Brute-force supremum of the partition sums over every subsequence of
    /// length >= 2. Independent of `BVFunction::variation`.
    pub(crate) fn variation_oracle(values: &[Complex64]) -> f64 {
        let k = values.len();
        assert!(k <= 16, "oracle is exponential in the point count");
        let mut best = 0.0f64;
        for mask in 0u32..(1 << k) {
            if mask.count_ones() < 2 {
                continue;
            }
            let idx: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            let sum: f64 = idx.windows(2).map(|w| (values[w[1]] - values[w[0]]).norm()).sum();
            best = best.max(sum);
        }
        best
    }

    #[test]
    fn restrict_identity_on_sigma0_4() {
        let f = restrict(&FunctionRule::identity(), &sigma0(4));
        let expect: Vec<Complex64> =
            [-1.0, -1.0 / 3.0, 0.0, 0.25, 0.5].iter().map(|&x| re(x)).collect();
        assert_eq!(f.values(), expect.as_slice());
    }

    #[test]
    fn restrict_left_indicator() {
        let f = restrict(&FunctionRule::chi_leq(Rational64::new(0, 1)), &sigma0(4));
        let expect: Vec<Complex64> = [1.0, 1.0, 1.0, 0.0, 0.0].iter().map(|&x| re(x)).collect();
        assert_eq!(f.values(), expect.as_slice());
    }

    #[test]
    fn restrict_zero_rule() {
        let f = restrict(&FunctionRule::zero(), &sigma0(7));
        assert!(f.values().iter().all(|v| *v == re(0.0)));
        assert_eq!(f.bv_norm(), 0.0);
    }

    #[test]
    fn variation_of_constant_is_zero() {
        let f = restrict(&FunctionRule::one(), &sigma0(10));
        assert_eq!(f.variation(), 0.0);
    }

    #[test]
    fn variation_of_identity_is_range() {
        // Monotone function: variation = max - min = 1/2 - (-1) = 3/2.
        let f = restrict(&FunctionRule::identity(), &sigma0(4));
        assert_eq!(f.variation(), 1.5);
    }

    #[test]
    fn variation_of_left_indicator_matches_oracle() {
        let f = restrict(&FunctionRule::chi_leq(Rational64::new(0, 1)), &sigma0(4));
        assert_eq!(variation_oracle(f.values()), 1.0);
        assert_eq!(f.variation(), 1.0);
    }

    #[test]
    fn bv_norm_examples() {
        assert_eq!(restrict(&FunctionRule::one(), &sigma0(4)).bv_norm(), 1.0);
        assert_eq!(restrict(&FunctionRule::identity(), &sigma0(4)).bv_norm(), 2.5);
        assert_eq!(
            restrict(&FunctionRule::chi_leq(Rational64::new(0, 1)), &sigma0(4)).bv_norm(),
            2.0
        );
    }

    #[test]
    fn algebra_identities() {
        let set = sigma0(6);
        let f = restrict(&FunctionRule::identity(), &set);
        let zero = restrict(&FunctionRule::zero(), &set);
        let one = restrict(&FunctionRule::one(), &set);
        assert_eq!(f.add(&zero).unwrap().values(), f.values());
        assert_eq!(f.mul(&one).unwrap().values(), f.values());

        // chi_L · chi_R = 0 and chi_L + chi_R = 1 at every point.
        let chi_l = restrict(&FunctionRule::chi_leq(Rational64::new(0, 1)), &set);
        let chi_r = restrict(&FunctionRule::chi_gt(Rational64::new(0, 1)), &set);
        assert_eq!(chi_l.mul(&chi_r).unwrap().values(), zero.values());
        assert_eq!(chi_l.add(&chi_r).unwrap().values(), one.values());
    }

    #[test]
    fn mismatched_sets_rejected() {
        let f = restrict(&FunctionRule::one(), &sigma0(4));
        let g = restrict(&FunctionRule::one(), &sigma0(6));
        assert!(matches!(f.add(&g), Err(Error::SetMismatch(_))));
        assert!(matches!(f.mul(&g), Err(Error::SetMismatch(_))));
    }

    #[test]
    fn combined_source_rules_track_values() {
        let set = sigma0(8);
        let f = restrict(&FunctionRule::identity(), &set);
        let g = restrict(&FunctionRule::chi_leq(Rational64::new(0, 1)), &set);
        let h = f.mul(&g).unwrap();
        let rule = h.source_rule().expect("combined rule present");
        for (i, t) in set.points().iter().enumerate() {
            assert_eq!(rule.eval(t), h.values()[i]);
        }
    }

    #[test]
    fn continuity_probe_polynomial_passes() {
        let r = continuity_at_limit(&FunctionRule::identity(), 200, 5, 1e-9).unwrap();
        assert!(r.continuous, "defect {}", r.defect);
    }

    #[test]
    fn continuity_probe_left_indicator_fails_with_unit_defect() {
        let r =
            continuity_at_limit(&FunctionRule::chi_leq(Rational64::new(0, 1)), 100, 5, 0.5)
                .unwrap();
        assert!(!r.continuous);
        assert_eq!(r.defect, 1.0);
    }

    #[test]
    fn continuity_probe_point_indicator_away_from_zero() {
        let r =
            continuity_at_limit(&FunctionRule::chi_point(Rational64::new(-1, 1)), 50, 5, 1e-12)
                .unwrap();
        assert!(r.continuous);
        assert_eq!(r.defect, 0.0);
    }

    #[test]
    fn continuity_probe_rejects_oversized_m() {
        assert!(continuity_at_limit(&FunctionRule::one(), 5, 5, 1e-9).is_err());
    }

    #[test]
    fn subadditivity_over_standard_catalog() {
        let cat = Catalog::standard();
        for n in [4, 10] {
            let set = sigma0(n);
            for (a, b) in cat.pairs() {
                let f = restrict(&a.rule, &set);
                let g = restrict(&b.rule, &set);
                let sum = f.add(&g).unwrap();
                assert!(
                    sum.variation() <= f.variation() + g.variation() + 1e-12,
                    "subadditivity failed for {} + {}",
                    a.id,
                    b.id
                );
                let prod = f.mul(&g).unwrap();
                assert!(
                    prod.bv_norm() <= f.bv_norm() * g.bv_norm() + 1e-12,
                    "submultiplicativity failed for {} * {}",
                    a.id,
                    b.id
                );
            }
        }
    }

    #[test]
    fn restriction_monotonicity_on_subsets() {
        let big = sigma0(10);
        let rats: Vec<Rational64> =
            big.points().iter().map(|c| c.as_exact().unwrap()).collect();
        // keep every other point
        let sub: Vec<Rational64> = rats.iter().copied().step_by(2).collect();
        let small = CompactRealSet::from_rationals(sub, &[]).unwrap();
        for entry in Catalog::standard().entries() {
            let on_big = restrict(&entry.rule, &big);
            let on_small = restrict(&entry.rule, &small);
            assert!(
                on_small.variation() <= on_big.variation() + 1e-12,
                "restriction grew variation for {}",
                entry.id
            );
        }
    }
}
