//! Pointwise G2 geometry toolkit.
//!
//! * [`algebra`]: octonions, the cross product, the forms φ₀, ψ₀, χ₀, exterior
//!   algebra over ℝ⁷, the metric of a 3-form and the Hodge star.
//! * [`calibration`]: oriented planes and the associative, coassociative and
//!   ψ-positive predicates.
//! * [`boundary`]: the splitting of the normal bundle of an associative along
//!   a coassociative boundary condition.
//! * [`symbol`]: principal symbols, elliptic boundary condition checks and
//!   the index formula.
//! * [`chern`]: discrete first Chern numbers of sampled line bundles.
//! * [`torus`]: fixed loci of affine involutions of T⁷ and orbit censuses.
//! * [`worked`]: the flat and orbifold examples assembled end to end.

pub mod algebra;
pub mod boundary;
pub mod calibration;
pub mod chern;
pub mod identities;
pub mod par;
pub mod sampling;
pub mod scalar;
pub mod symbol;
pub mod torus;
pub mod worked;

pub use algebra::kform::KForm;
pub use algebra::octonion::Octonion;
pub use algebra::vector::Vector7;
pub use par::Exec;
pub use scalar::{ratio, Rational, Scalar};
