//! Finite models of compact subsets of the real line.
//!
//! A [`CompactRealSet`] is a strictly increasing finite list of points, a
//! subset of which may be flagged as accumulation points of the generating
//! family. Points produced by the built-in constructors are stored as exact
//! rationals so that ordering and duplicate detection never depend on
//! floating-point rounding; coordinates only become `f64` inside norm and
//! matrix computations.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A point coordinate: exact rational when constructor-generated, raw `f64`
/// for user-supplied generic sets.
#[derive(Clone, Debug)]
pub enum Coord {
    Exact(Rational64),
    Approx(f64),
}

impl Coord {
    pub fn exact(num: i64, den: i64) -> Self {
        Coord::Exact(Rational64::new(num, den))
    }

    pub fn zero() -> Self {
        Coord::Exact(Rational64::new(0, 1))
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Coord::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Coord::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<Rational64> {
        match self {
            Coord::Exact(r) => Some(*r),
            Coord::Approx(_) => None,
        }
    }

    /// Compare against an exact rational, exactly when possible.
    pub fn cmp_rational(&self, r: &Rational64) -> Ordering {
        match self {
            Coord::Exact(a) => a.cmp(r),
            Coord::Approx(x) => x
                .partial_cmp(&(*r.numer() as f64 / *r.denom() as f64))
                .expect("set coordinates are finite"),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Coord::Exact(r) => json!({ "num": r.numer(), "den": r.denom() }),
            Coord::Approx(x) => json!(x),
        }
    }
}

impl PartialEq for Coord {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coord::Exact(a), Coord::Exact(b)) => a == b,
            _ => self.as_f64() == other.as_f64(),
        }
    }
}

impl Eq for Coord {}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Coord::Exact(a), Coord::Exact(b)) => a.cmp(b),
            _ => self
                .as_f64()
                .partial_cmp(&other.as_f64())
                .expect("set coordinates are finite"),
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Exact(r) => {
                if *r.denom() == 1 {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coord::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// Which generating family produced the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetFamily {
    GenericFinite,
    /// `{0} ∪ {(-1)^k / k : 1 <= k <= n}` with the accumulation point 0 marked.
    Sigma0(u32),
    /// `n` equally spaced points from `a` to `b` inclusive.
    IntervalGrid { a: Rational64, b: Rational64, n: u32 },
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetFamily::GenericFinite => write!(f, "generic-finite"),
            SetFamily::Sigma0(n) => write!(f, "sigma0-truncation({n})"),
            SetFamily::IntervalGrid { a, b, n } => {
                write!(f, "interval-grid({},{},{})", rational_str(a), rational_str(b), n)
            }
        }
    }
}

fn rational_str(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Ordered finite point set modeling a compact subset of the real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactRealSet {
    points: Vec<Coord>,
    limit_markers: BTreeSet<usize>,
    family: SetFamily,
}

impl CompactRealSet {
    /// The truncation `{0} ∪ {(-1)^k / k : 1 <= k <= n}` of the alternating
    /// reciprocal set, sorted increasingly, with 0 flagged as the
    /// accumulation point.
    pub fn sigma0(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("sigma0 truncation size n must be >= 1"));
        }
        let mut pts: Vec<Rational64> = (1..=n as i64)
            .map(|k| Rational64::new(if k % 2 == 0 { 1 } else { -1 }, k))
            .collect();
        pts.push(Rational64::new(0, 1));
        pts.sort();
        let zero = Rational64::new(0, 1);
        let zero_idx = pts.binary_search(&zero).expect("0 belongs to sigma0");
        let points = pts.into_iter().map(Coord::Exact).collect();
        Ok(CompactRealSet {
            points,
            limit_markers: BTreeSet::from([zero_idx]),
            family: SetFamily::Sigma0(n),
        })
    }

    /// `n` equally spaced points from `a` to `b` inclusive (`n >= 2`, `a < b`).
    pub fn interval_grid(a: Rational64, b: Rational64, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("interval grid needs n >= 2 points"));
        }
        if a >= b {
            return Err(Error::invalid("interval grid needs a < b"));
        }
        let step = (b - a) / Rational64::new(n as i64 - 1, 1);
        let points = (0..n as i64)
            .map(|k| Coord::Exact(a + step * Rational64::new(k, 1)))
            .collect();
        Ok(CompactRealSet {
            points,
            limit_markers: BTreeSet::new(),
            family: SetFamily::IntervalGrid { a, b, n },
        })
    }

    /// A generic finite set from exact rational points (strictly increasing
    /// after sorting; duplicates rejected). `markers` are indices into the
    /// sorted point list.
    pub fn from_rationals(mut pts: Vec<Rational64>, markers: &[usize]) -> Result<Self> {
        if pts.is_empty() {
            return Err(Error::invalid("a compact set model needs at least one point"));
        }
        pts.sort();
        if pts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate points in set"));
        }
        let points: Vec<Coord> = pts.into_iter().map(Coord::Exact).collect();
        Self::with_markers(points, markers, SetFamily::GenericFinite)
    }

    /// A generic finite set from raw floating-point coordinates.
    pub fn from_f64s(mut pts: Vec<f64>, markers: &[usize]) -> Result<Self> {
        if pts.is_empty() {
            return Err(Error::invalid("a compact set model needs at least one point"));
        }
        if pts.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("set points must be finite"));
        }
        pts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        if pts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate points in set"));
        }
        let points: Vec<Coord> = pts.into_iter().map(Coord::Approx).collect();
        Self::with_markers(points, markers, SetFamily::GenericFinite)
    }

    fn with_markers(points: Vec<Coord>, markers: &[usize], family: SetFamily) -> Result<Self> {
        let mut limit_markers = BTreeSet::new();
        for &m in markers {
            if m >= points.len() {
                return Err(Error::invalid(format!(
                    "limit marker index {m} out of range for {} points",
                    points.len()
                )));
            }
            limit_markers.insert(m);
        }
        Ok(CompactRealSet { points, limit_markers, family })
    }

    pub fn points(&self) -> &[Coord] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &Coord {
        &self.points[i]
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn min(&self) -> &Coord {
        self.points.first().expect("nonempty")
    }

    pub fn max(&self) -> &Coord {
        self.points.last().expect("nonempty")
    }

    pub fn is_limit_marked(&self, i: usize) -> bool {
        self.limit_markers.contains(&i)
    }

    pub fn limit_marker_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.limit_markers.iter().copied()
    }

    /// Index of an exact rational point, if present.
    pub fn position(&self, r: &Rational64) -> Option<usize> {
        self.points.binary_search_by(|c| c.cmp_rational(r)).ok()
    }

    /// The set `σ ∪ {ω}` for `ω` strictly above the current maximum.
    /// Limit markers are preserved; the family degrades to generic-finite.
    pub fn extend_above(&self, omega: Rational64) -> Result<Self> {
        if self.max().cmp_rational(&omega) != Ordering::Less {
            return Err(Error::invalid(format!(
                "extension point {} must exceed max σ = {}",
                rational_str(&omega),
                self.max()
            )));
        }
        let mut points = self.points.clone();
        points.push(Coord::Exact(omega));
        Ok(CompactRealSet {
            points,
            limit_markers: self.limit_markers.clone(),
            family: SetFamily::GenericFinite,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "points": self.points.iter().map(Coord::to_json).collect::<Vec<_>>(),
            "limitMarkers": self
                .limit_markers
                .iter()
                .map(|&i| self.points[i].to_json())
                .collect::<Vec<_>>(),
            "family": self.family.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rats(set: &CompactRealSet) -> Vec<Rational64> {
        set.points().iter().map(|c| c.as_exact().unwrap()).collect()
    }

    #[test]
    fn sigma0_first_four_terms() {
        let s = CompactRealSet::sigma0(4).unwrap();
        let expect: Vec<Rational64> = [(-1, 1), (-1, 3), (0, 1), (1, 4), (1, 2)]
            .iter()
            .map(|&(n, d)| Rational64::new(n, d))
            .collect();
        assert_eq!(rats(&s), expect);
        let zero_idx = s.position(&Rational64::new(0, 1)).unwrap();
        assert!(s.is_limit_marked(zero_idx));
        assert_eq!(s.limit_marker_indices().count(), 1);
    }

    #[test]
    fn sigma0_single_generator() {
        let s = CompactRealSet::sigma0(1).unwrap();
        let expect: Vec<Rational64> =
            vec![Rational64::new(-1, 1), Rational64::new(0, 1)];
        assert_eq!(rats(&s), expect);
    }

    #[test]
    fn sigma0_six_terms_enumerated() {
        // Enumerate (-1)^k/k for k = 1..=6 independently and sort.
        let mut expect: Vec<Rational64> = (1..=6)
            .map(|k| Rational64::new(if k % 2 == 0 { 1 } else { -1 }, k))
            .collect();
        expect.push(Rational64::new(0, 1));
        expect.sort();
        let s = CompactRealSet::sigma0(6).unwrap();
        assert_eq!(rats(&s), expect);
        assert_eq!(
            rats(&s),
            [(-1, 1), (-1, 3), (-1, 5), (0, 1), (1, 6), (1, 4), (1, 2)]
                .iter()
                .map(|&(n, d)| Rational64::new(n, d))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn sigma0_zero_rejected() {
        assert!(CompactRealSet::sigma0(0).is_err());
    }

    #[test]
    fn points_strictly_increasing() {
        for n in [1, 2, 5, 17, 100] {
            let s = CompactRealSet::sigma0(n).unwrap();
            assert!(s.points().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn interval_grid_three_points() {
        let g = CompactRealSet::interval_grid(
            Rational64::new(0, 1),
            Rational64::new(1, 1),
            3,
        )
        .unwrap();
        assert_eq!(
            rats(&g),
            vec![Rational64::new(0, 1), Rational64::new(1, 2), Rational64::new(1, 1)]
        );
    }

    #[test]
    fn duplicates_rejected() {
        let r = CompactRealSet::from_rationals(
            vec![Rational64::new(1, 2), Rational64::new(1, 2)],
            &[],
        );
        assert!(r.is_err());
    }

    #[test]
    fn extend_above_requires_strict_dominance() {
        let s = CompactRealSet::sigma0(4).unwrap();
        assert!(s.extend_above(Rational64::new(1, 2)).is_err());
        let ext = s.extend_above(Rational64::new(3, 2)).unwrap();
        assert_eq!(ext.len(), 6);
        assert_eq!(ext.max().as_exact().unwrap(), Rational64::new(3, 2));
        // markers carried over
        assert_eq!(ext.limit_marker_indices().count(), 1);
    }

    #[test]
    fn json_document_shape() {
        let s = CompactRealSet::sigma0(2).unwrap();
        let v = s.to_json();
        assert_eq!(v["family"], "sigma0-truncation(2)");
        assert_eq!(v["points"][0], serde_json::json!({"num": -1, "den": 1}));
        assert_eq!(v["limitMarkers"][0], serde_json::json!({"num": 0, "den": 1}));
    }
}
