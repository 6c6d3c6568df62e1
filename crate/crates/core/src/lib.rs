//! Generalized quaternions `H(α, β)` and their rotation action on the
//! 3-space with metric `diag(α, β, αβ)`.
//!
//! Real quaternions (`α = β = 1`), split quaternions (`α = 1, β = −1`) and
//! the degenerate semi-quaternion families are all instances of the same
//! [`Signature`]. The [`conformance`] module holds the randomized and
//! fixture-based verification harness.

// `!(x > 0.0)` is used on purpose: NaN must land in the error branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conformance;
pub mod error;
pub mod gquat;
pub mod metric;
pub mod rotation;

pub use error::{Error, Result};
pub use gquat::{GQuat, QuatAngle};
pub use metric::{scaled_max_diff, Mat3, Mat4, QuasiOrthogonality, Signature, Vec3};
pub use rotation::{PolarForm, PolarKind};
