//! Known-incorrect formula variants.
//!
//! Each one is a plausible transcription slip, kept so the suite and the
//! errata report can demonstrate that the oracles reject it.

use super::Subject;
use crate::error::Result;
use crate::gquat::GQuat;
use crate::metric::{Mat3, Signature, Vec3};
use std::f64::consts::FRAC_1_SQRT_2;

/// Vector product with `αβ` on the `k` component instead of 1; breaks
/// `i × j = k`.
pub fn cross_alpha_beta_k(sig: &Signature, u: &Vec3, v: &Vec3) -> Vec3 {
    let c = sig.cross(u, v);
    Vec3::new(c[0], c[1], sig.alpha_beta() * c[2])
}

/// Rotation matrix with the inner `α` of entry (1,3) and the inner `β` of
/// entry (2,3) dropped: `2β(xz + wy)` and `2α(yz − wx)`.
pub fn rotation_matrix_bare_third_column(sig: &Signature, q: &GQuat) -> Result<Mat3> {
    let mut m = sig.rotation_matrix(q)?;
    let norm = sig.norm(q);
    let GQuat { w, x, y, z } = *q;
    m[(0, 2)] = 2.0 * sig.beta() * (x * z + w * y) / norm;
    m[(1, 2)] = 2.0 * sig.alpha() * (y * z - w * x) / norm;
    Ok(m)
}

/// Scales by `1/N(q)` instead of `1/√N(q)`; the result has norm `1/N(q)`.
pub fn normalize_by_norm(sig: &Signature, q: &GQuat) -> GQuat {
    q.scale(1.0 / sig.norm(q))
}

/// The closed form listed for `q = 1/√2 + ½(1/√α, −1/√β, 0)`. It agrees with
/// the true matrix only when `α = β = 1`.
pub fn listed_example_matrix(alpha: f64, beta: f64) -> Mat3 {
    let r = FRAC_1_SQRT_2;
    Mat3([
        [0.5 + 0.25 * (alpha - beta), -beta / 2.0, -beta * r],
        [-alpha / 2.0, 0.5 + 0.25 * (beta - alpha), -alpha * r],
        [r, r, 0.5 - 0.25 * (alpha + beta)],
    ])
}

impl Subject {
    pub fn with_bare_third_column() -> Self {
        Subject {
            name: "bare-third-column",
            rotation_matrix: rotation_matrix_bare_third_column,
            ..Subject::reference()
        }
    }

    pub fn with_alpha_beta_cross() -> Self {
        Subject { name: "alpha-beta-cross", cross: cross_alpha_beta_k, ..Subject::reference() }
    }
}
