//! Exact computational engine for the support theory of elementary super
//! group algebras over fields of odd characteristic: finite-field linear
//! algebra, graded modules, minimal resolutions, pi-points and rank varieties.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `superpoint` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod field;
pub mod matrix;
pub mod module;
pub mod pipoint;
pub mod resolution;
pub mod variety;

pub use algebra::{AlgebraElement, AlgebraPresentation, Family, Monomial};
pub use error::{Error, Result};
pub use field::{extend_field, FieldEmbedding, FiniteField, Scalar};
pub use matrix::Mat;
pub use module::{GradedModule, ModuleMap, Violation};
pub use pipoint::{
    coefficient_tuple, equivalent, frobenius_image, is_pi_point, normalize, normalize_tuple,
    prime_ideal_generators, restrict_spec, standard_restriction, standard_spec, AlgebraMapSpec,
    PiPointRep, RestrictedAction,
};
pub use resolution::{
    betti, carlson_data, carlson_module, minimal_resolution, syzygy, CarlsonData,
    CohomologyClassRep, Resolution,
};
pub use variety::{
    homogeneity_check, hom_support_check, is_projective, max_image_test, rank_variety,
    support_set, tensor_support_check, MatrixForm, ProjectivityVerdict, RankVariety, SupportSet,
    DEFAULT_BUDGET,
};
