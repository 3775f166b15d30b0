//! Computable models for bounded-variation function algebras on compact
//! subsets of the real line, finite truncations of the classical sequence
//! spaces, functional calculi for explicit operator models, and the
//! exponent-scale transfer checks built on them.
//!
//! Everything is finite, deterministic given a seed, and exact wherever a
//! closed form exists; stochastic estimators are flagged and only ever used
//! as lower bounds.

pub mod bv;
pub mod calculus;
pub mod counterexample;
pub mod error;
pub mod extrapolate;
pub mod operator;
pub mod rule;
pub mod sampling;
pub mod set;
pub mod space;

pub use bv::{continuity_at_limit, restrict, BVFunction, ContinuityReport};
pub use calculus::{
    calculus_bound, conjugated_calculus, diagonal_calculus, diagonal_calculus_over,
    homomorphism_check, limit_extension, two_point_calculus, value_extension, BoundReport,
    CalculusMap, CalculusNorm, HomomorphismReport,
};
pub use counterexample::{
    banach_limit_demo, broadcast_calculus_finite, broadcast_calculus_sup, c0_obstruction_demo,
    ell1_iso_demo, range_inclusion_check, range_inclusion_with_projection, tail_defect,
    BanachLimitReport, ConvergentSeqModel, Ell1IsoReport, ObstructionReport,
    RangeInclusionReport,
};
pub use error::{Error, Result};
pub use extrapolate::{
    adjoint_calculus_right, duality_identity_check, extend_calculus_left, matrix_p_norm,
    p_norm_profile, riesz_thorin_check, DualityReport, LeftExtensionReport, PNormEntry,
    PScaleFamily, RieszThorinReport, RightExtensionReport,
};
pub use operator::{
    c0_iso, default_extension_scalar, direct_sum, ell1_iso, exact_idempotent,
    multiplication_operator, operator_norm, operator_norm_seeded, NormEstimate, OperatorModel,
};
pub use rule::{Catalog, CatalogEntry, FunctionRule, LowerBound, UpperBound};
pub use set::{CompactRealSet, Coord, SetFamily};
pub use space::{lp_norm, tagged_norm, PExp, SpaceKind, SpaceTag, VectorModel};
