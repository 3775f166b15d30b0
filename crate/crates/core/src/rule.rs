//! Closed-form scalar function rules.
//!
//! The catalog is deliberately small: polynomials, interval indicators,
//! single-point indicators, and pointwise sums, products, and scalar
//! multiples of those. It is closed under the algebra operations, every
//! member can be evaluated at any real argument, and — the property the
//! inequivalent-extension demonstrations rely on — the limit of `f(1/k)`
//! as `k → ∞` is computable symbolically, never by numerical sampling.

use num_complex::Complex64;
use num_rational::Rational64;
use serde_json::{json, Value};

use crate::set::Coord;

/// Lower endpoint of an interval indicator.
#[derive(Clone, Debug, PartialEq)]
pub enum LowerBound {
    Unbounded,
    /// `t >= a`
    Closed(Rational64),
    /// `t > a`
    Open(Rational64),
}

/// Upper endpoint of an interval indicator.
#[derive(Clone, Debug, PartialEq)]
pub enum UpperBound {
    Unbounded,
    /// `t <= b`
    Closed(Rational64),
    /// `t < b`
    Open(Rational64),
}

/// A rule-defined scalar function on the real line.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionRule {
    /// `coeffs[i] · t^i` (ascending powers). An empty list is the zero rule.
    Polynomial(Vec<Complex64>),
    /// Indicator of an interval with explicit open/closed endpoint flags.
    IntervalIndicator { lower: LowerBound, upper: UpperBound },
    /// Indicator of a single point.
    PointIndicator(Rational64),
    Sum(Box<FunctionRule>, Box<FunctionRule>),
    Product(Box<FunctionRule>, Box<FunctionRule>),
    Scale(Complex64, Box<FunctionRule>),
}

impl FunctionRule {
    pub fn zero() -> Self {
        FunctionRule::Polynomial(Vec::new())
    }

    pub fn constant(c: Complex64) -> Self {
        FunctionRule::Polynomial(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// The identity function `t ↦ t`.
    pub fn identity() -> Self {
        FunctionRule::Polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    /// `χ_{(-∞, λ]}`.
    pub fn chi_leq(lambda: Rational64) -> Self {
        FunctionRule::IntervalIndicator {
            lower: LowerBound::Unbounded,
            upper: UpperBound::Closed(lambda),
        }
    }

    /// `χ_{(λ, ∞)}`.
    pub fn chi_gt(lambda: Rational64) -> Self {
        FunctionRule::IntervalIndicator {
            lower: LowerBound::Open(lambda),
            upper: UpperBound::Unbounded,
        }
    }

    /// `χ_{[a, b]}`.
    pub fn chi_closed(a: Rational64, b: Rational64) -> Self {
        FunctionRule::IntervalIndicator {
            lower: LowerBound::Closed(a),
            upper: UpperBound::Closed(b),
        }
    }

    /// `χ_{(a, b]}`.
    pub fn chi_left_open(a: Rational64, b: Rational64) -> Self {
        FunctionRule::IntervalIndicator {
            lower: LowerBound::Open(a),
            upper: UpperBound::Closed(b),
        }
    }

    pub fn chi_point(a: Rational64) -> Self {
        FunctionRule::PointIndicator(a)
    }

    pub fn sum(f: FunctionRule, g: FunctionRule) -> Self {
        FunctionRule::Sum(Box::new(f), Box::new(g))
    }

    pub fn product(f: FunctionRule, g: FunctionRule) -> Self {
        FunctionRule::Product(Box::new(f), Box::new(g))
    }

    pub fn scale(c: Complex64, f: FunctionRule) -> Self {
        FunctionRule::Scale(c, Box::new(f))
    }

    /// Evaluate at a point coordinate. Indicator membership is decided by
    /// exact rational comparison whenever the coordinate is exact.
    pub fn eval(&self, t: &Coord) -> Complex64 {
        match self {
            FunctionRule::Polynomial(coeffs) => {
                let x = t.as_f64();
                let mut acc = Complex64::new(0.0, 0.0);
                for c in coeffs.iter().rev() {
                    acc = acc * x + c;
                }
                acc
            }
            FunctionRule::IntervalIndicator { lower, upper } => {
                let in_lower = match lower {
                    LowerBound::Unbounded => true,
                    LowerBound::Closed(a) => t.cmp_rational(a) != std::cmp::Ordering::Less,
                    LowerBound::Open(a) => t.cmp_rational(a) == std::cmp::Ordering::Greater,
                };
                let in_upper = match upper {
                    UpperBound::Unbounded => true,
                    UpperBound::Closed(b) => t.cmp_rational(b) != std::cmp::Ordering::Greater,
                    UpperBound::Open(b) => t.cmp_rational(b) == std::cmp::Ordering::Less,
                };
                if in_lower && in_upper {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            FunctionRule::PointIndicator(a) => {
                if t.cmp_rational(a) == std::cmp::Ordering::Equal {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            FunctionRule::Sum(f, g) => f.eval(t) + g.eval(t),
            FunctionRule::Product(f, g) => f.eval(t) * g.eval(t),
            FunctionRule::Scale(c, f) => c * f.eval(t),
        }
    }

    pub fn eval_f64(&self, t: f64) -> Complex64 {
        self.eval(&Coord::Approx(t))
    }

    pub fn value_at_zero(&self) -> Complex64 {
        self.eval(&Coord::zero())
    }

    /// The exact limit of `f(1/k)` as `k → ∞`, computed symbolically.
    ///
    /// Polynomials contribute their constant coefficient; an interval
    /// indicator contributes 1 exactly when it contains all sufficiently
    /// small positive reals; a point indicator hits any fixed point at most
    /// once along `{1/k}`, so it contributes 0.
    pub fn limit_along_inv_k(&self) -> Complex64 {
        match self {
            FunctionRule::Polynomial(coeffs) => {
                coeffs.first().copied().unwrap_or(Complex64::new(0.0, 0.0))
            }
            FunctionRule::IntervalIndicator { lower, upper } => {
                let zero = Rational64::new(0, 1);
                let lower_ok = match lower {
                    LowerBound::Unbounded => true,
                    LowerBound::Closed(a) => *a <= zero,
                    LowerBound::Open(a) => *a <= zero,
                };
                let upper_ok = match upper {
                    UpperBound::Unbounded => true,
                    UpperBound::Closed(b) => *b > zero,
                    UpperBound::Open(b) => *b > zero,
                };
                if lower_ok && upper_ok {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            FunctionRule::PointIndicator(_) => Complex64::new(0.0, 0.0),
            FunctionRule::Sum(f, g) => f.limit_along_inv_k() + g.limit_along_inv_k(),
            FunctionRule::Product(f, g) => f.limit_along_inv_k() * g.limit_along_inv_k(),
            FunctionRule::Scale(c, f) => c * f.limit_along_inv_k(),
        }
    }

    /// Whether the rule is continuous at 0 along the model direction `{1/k}`,
    /// decided symbolically: the limit along `1/k` equals the value at 0.
    pub fn continuous_at_zero_along_inv_k(&self) -> bool {
        self.limit_along_inv_k() == self.value_at_zero()
    }
}

/// A named rule collection; names are the stable identifiers used in CLI
/// arguments and check reports.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub rule: FunctionRule,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Self {
        Catalog { entries }
    }

    /// The default twelve-rule catalog used by the check suites: constants,
    /// low-degree polynomials, the left/right split indicators at 0, point
    /// indicators on and off the accumulation point, a half-open unit
    /// indicator, a discontinuous ramp, and a complex-scaled identity.
    ///
    /// Coefficients are dyadic so that rule evaluation is exact in `f64`.
    pub fn standard() -> Self {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let entries = vec![
            ("one", FunctionRule::one()),
            ("zero", FunctionRule::zero()),
            ("id", FunctionRule::identity()),
            ("square", FunctionRule::Polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])),
            (
                "poly_mix",
                FunctionRule::Polynomial(vec![c(0.5, 0.0), c(-1.0, 0.0), c(2.0, 0.0)]),
            ),
            ("chi_leq_0", FunctionRule::chi_leq(Rational64::new(0, 1))),
            ("chi_pos", FunctionRule::chi_gt(Rational64::new(0, 1))),
            ("chi_point_0", FunctionRule::chi_point(Rational64::new(0, 1))),
            ("chi_point_neg1", FunctionRule::chi_point(Rational64::new(-1, 1))),
            (
                "chi_unit",
                FunctionRule::chi_left_open(Rational64::new(0, 1), Rational64::new(1, 1)),
            ),
            (
                "ramp_left",
                FunctionRule::product(
                    FunctionRule::chi_leq(Rational64::new(0, 1)),
                    FunctionRule::Polynomial(vec![c(1.0, 0.0), c(1.0, 0.0)]),
                ),
            ),
            ("complex_tilt", FunctionRule::scale(c(0.5, 0.5), FunctionRule::identity())),
        ];
        Catalog::new(
            entries
                .into_iter()
                .map(|(id, rule)| CatalogEntry { id: id.to_string(), rule })
                .collect(),
        )
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&FunctionRule> {
        self.entries.iter().find(|e| e.id == id).map(|e| &e.rule)
    }

    /// All ordered pairs, for homomorphism and subadditivity sweeps.
    pub fn pairs(&self) -> impl Iterator<Item = (&CatalogEntry, &CatalogEntry)> {
        self.entries
            .iter()
            .flat_map(move |a| self.entries.iter().map(move |b| (a, b)))
    }

    pub fn ids(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.id.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!(self.ids())
    }
}
