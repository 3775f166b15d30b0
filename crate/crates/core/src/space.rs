//! Space tags for finite sequence-space truncations.
//!
//! A tag records which classical space a coordinate vector is modeling; the
//! coordinates themselves are plain complex vectors. The tag only changes
//! which norm is attached. The `c₀` model carries the sup norm — a finite
//! truncation cannot see vanishing at infinity, which is instead surfaced by
//! the tail-defect diagnostics in the counterexample demos.

use nalgebra::DVector;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::set::CompactRealSet;

/// An exponent `p ∈ [1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PExp {
    Finite(f64),
    Inf,
}

impl PExp {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            return Ok(PExp::Inf);
        }
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::invalid(format!("exponent p = {p} must satisfy p >= 1")));
        }
        Ok(PExp::Finite(p))
    }

    pub fn one() -> Self {
        PExp::Finite(1.0)
    }

    pub fn two() -> Self {
        PExp::Finite(2.0)
    }

    /// The conjugate exponent: `1/p + 1/p' = 1`.
    pub fn conjugate(&self) -> PExp {
        match self {
            PExp::Inf => PExp::Finite(1.0),
            PExp::Finite(p) if *p == 1.0 => PExp::Inf,
            PExp::Finite(p) => PExp::Finite(p / (p - 1.0)),
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            PExp::Finite(p) => *p,
            PExp::Inf => f64::INFINITY,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            PExp::Finite(p) => json!(p),
            PExp::Inf => json!("inf"),
        }
    }
}

/// Which space a model vector belongs to.
#[derive(Clone, Debug, PartialEq)]
pub enum SpaceKind {
    /// Truncation of c₀ (sup norm on the model).
    C0Model,
    /// Truncation of ℓᵖ.
    LpModel(PExp),
    /// Truncation of ℓ^∞.
    SupModel,
    /// Functions on a compact set model, sup norm.
    CSigmaModel(CompactRealSet),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceTag {
    pub kind: SpaceKind,
    pub dimension: usize,
}

impl SpaceTag {
    pub fn c0(dimension: usize) -> Self {
        SpaceTag { kind: SpaceKind::C0Model, dimension }
    }

    pub fn lp(p: PExp, dimension: usize) -> Self {
        SpaceTag { kind: SpaceKind::LpModel(p), dimension }
    }

    pub fn sup(dimension: usize) -> Self {
        SpaceTag { kind: SpaceKind::SupModel, dimension }
    }

    pub fn c_sigma(set: &CompactRealSet) -> Self {
        SpaceTag { kind: SpaceKind::CSigmaModel(set.clone()), dimension: set.len() }
    }

    /// Whether the attached norm is the coordinate sup norm.
    pub fn is_sup_like(&self) -> bool {
        matches!(
            self.kind,
            SpaceKind::C0Model
                | SpaceKind::SupModel
                | SpaceKind::CSigmaModel(_)
                | SpaceKind::LpModel(PExp::Inf)
        )
    }

    pub fn lp_exponent(&self) -> Option<PExp> {
        match &self.kind {
            SpaceKind::LpModel(p) => Some(*p),
            _ => None,
        }
    }

    /// The dual space tag. Duals of the sup-like tags are modeled by ℓ¹.
    pub fn dual(&self) -> SpaceTag {
        let kind = match &self.kind {
            SpaceKind::LpModel(PExp::Finite(p)) if *p == 1.0 => SpaceKind::SupModel,
            SpaceKind::LpModel(p) => SpaceKind::LpModel(p.conjugate()),
            SpaceKind::C0Model | SpaceKind::SupModel | SpaceKind::CSigmaModel(_) => {
                SpaceKind::LpModel(PExp::one())
            }
        };
        SpaceTag { kind, dimension: self.dimension }
    }

    pub fn to_json(&self) -> Value {
        match &self.kind {
            SpaceKind::C0Model => json!({ "kind": "c0", "dimension": self.dimension }),
            SpaceKind::LpModel(p) => {
                json!({ "kind": "lp", "p": p.to_json(), "dimension": self.dimension })
            }
            SpaceKind::SupModel => json!({ "kind": "sup", "dimension": self.dimension }),
            SpaceKind::CSigmaModel(set) => {
                json!({ "kind": "c-sigma", "dimension": self.dimension, "set": set.to_json() })
            }
        }
    }
}

/// `‖x‖_p` for a coordinate vector.
pub fn lp_norm(x: &DVector<Complex64>, p: PExp) -> f64 {
    match p {
        PExp::Inf => x.iter().map(|v| v.norm()).fold(0.0, f64::max),
        PExp::Finite(p) if p == 1.0 => x.iter().map(|v| v.norm()).sum(),
        PExp::Finite(p) if p == 2.0 => x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt(),
        PExp::Finite(p) => x.iter().map(|v| v.norm().powf(p)).sum::<f64>().powf(1.0 / p),
    }
}

/// The norm attached to a tag.
pub fn tagged_norm(x: &DVector<Complex64>, tag: &SpaceTag) -> f64 {
    if tag.is_sup_like() {
        lp_norm(x, PExp::Inf)
    } else {
        lp_norm(x, tag.lp_exponent().expect("non-sup tags are lp"))
    }
}

/// A coordinate vector together with its space tag.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorModel {
    pub coords: DVector<Complex64>,
    pub space: SpaceTag,
}

impl VectorModel {
    pub fn new(coords: DVector<Complex64>, space: SpaceTag) -> Result<Self> {
        if coords.len() != space.dimension {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} tagged with dimension {}",
                coords.len(),
                space.dimension
            )));
        }
        Ok(VectorModel { coords, space })
    }

    pub fn norm(&self) -> f64 {
        tagged_norm(&self.coords, &self.space)
    }
}
