//! Rotation action of unit generalized quaternions on 3-space.
//!
//! A quaternion `q` with `N(q) ≠ 0` acts on pure quaternions by
//! `φ(ω) = q ω q⁻¹`. [`Signature::conjugation_map`] evaluates this directly
//! with two quaternion products and is the reference every closed form in
//! this module is checked against. Matrices act on column coordinate
//! vectors: column `j` of [`Signature::rotation_matrix`] is `φ(eⱼ)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gquat::GQuat;
use crate::metric::{Mat3, Signature, Vec3};

/// Allowed deviation of `N(q)` from 1 for operations that require a unit
/// quaternion.
pub const UNIT_TOL: f64 = 1e-9;

/// Allowed deviation of `⟨s, s⟩` from ±1 for a polar-form axis.
pub const AXIS_TOL: f64 = 1e-9;

/// `|⟨V, V⟩|` below this fraction of `|α|x² + |β|y² + |αβ|z²` counts as a
/// null vector part.
pub const NULL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarKind {
    Identity,
    Elliptic,
    Hyperbolic,
}

impl PolarKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PolarKind::Identity => "identity",
            PolarKind::Elliptic => "elliptic",
            PolarKind::Hyperbolic => "hyperbolic",
        }
    }
}

/// `q = cos(φ/2) + sin(φ/2)·s` (elliptic, `⟨s,s⟩ = 1`) or
/// `q = cosh(γ/2) + sinh(γ/2)·s` (hyperbolic, `⟨s,s⟩ = −1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PolarForm {
    Identity,
    /// `angle ∈ (0, 2π)`.
    Elliptic { angle: f64, axis: Vec3 },
    /// `angle ≠ 0`.
    Hyperbolic { angle: f64, axis: Vec3 },
}

impl PolarForm {
    pub fn kind(&self) -> PolarKind {
        match self {
            PolarForm::Identity => PolarKind::Identity,
            PolarForm::Elliptic { .. } => PolarKind::Elliptic,
            PolarForm::Hyperbolic { .. } => PolarKind::Hyperbolic,
        }
    }

    pub fn angle(&self) -> f64 {
        match *self {
            PolarForm::Identity => 0.0,
            PolarForm::Elliptic { angle, .. } | PolarForm::Hyperbolic { angle, .. } => angle,
        }
    }

    pub fn axis(&self) -> Option<Vec3> {
        match *self {
            PolarForm::Identity => None,
            PolarForm::Elliptic { axis, .. } | PolarForm::Hyperbolic { axis, .. } => Some(axis),
        }
    }

    /// Checks the angle range and that the axis has inner square ±1 under
    /// `sig`.
    pub fn validate(&self, sig: &Signature) -> Result<()> {
        let (angle, axis, expected) = match *self {
            PolarForm::Identity => return Ok(()),
            PolarForm::Elliptic { angle, axis } => {
                if !(angle > 0.0 && angle < std::f64::consts::TAU) {
                    return Err(Error::InvalidAngle { kind: "elliptic", angle });
                }
                (angle, axis, 1.0)
            }
            PolarForm::Hyperbolic { angle, axis } => {
                if !angle.is_finite() || angle == 0.0 {
                    return Err(Error::InvalidAngle { kind: "hyperbolic", angle });
                }
                (angle, axis, -1.0)
            }
        };
        debug_assert!(angle.is_finite());
        let inner = sig.inner(&axis, &axis);
        if !((inner - expected).abs() <= AXIS_TOL) {
            return Err(Error::InvalidAxis { inner, expected });
        }
        Ok(())
    }
}

impl Signature {
    fn require_unit(&self, q: &GQuat) -> Result<()> {
        let norm = self.norm(q);
        if (norm - 1.0).abs() <= UNIT_TOL {
            Ok(())
        } else {
            Err(Error::NotUnit { norm })
        }
    }

    /// `φ(w) = q·w·q̄ / N(q)` computed with two quaternion products.
    pub fn conjugation_map(&self, q: &GQuat, w: &Vec3) -> Result<Vec3> {
        let norm = self.norm(q);
        // Same invertibility test as `inverse`.
        self.inverse(q)?;
        let image = self.multiply(&self.multiply(q, &GQuat::pure(*w)), &q.conjugate());
        debug_assert!(
            image.w.abs() <= 1e-12 * scalar_scale(self, q, w),
            "conjugate of a pure quaternion has scalar part {}",
            image.w
        );
        Ok(image.vector_part().scale(1.0 / norm))
    }

    /// Closed-form matrix of `φ`, columns `φ(e₁), φ(e₂), φ(e₃)`.
    ///
    /// The quadratic form in the components is divided by `N(q)`, so
    /// non-unit (and negative-norm) quaternions are handled without
    /// normalizing first.
    pub fn rotation_matrix(&self, q: &GQuat) -> Result<Mat3> {
        let norm = self.norm(q);
        self.inverse(q)?;
        let (a, b) = (self.alpha(), self.beta());
        let ab = self.alpha_beta();
        let GQuat { w, x, y, z } = *q;
        let (xx, yy, zz) = (a * x * x, b * y * y, ab * z * z);
        // Diagonal as 1 − 2(·)/N rather than (w² ± ·)/N: equal algebraically,
        // and exact on the common unit inputs where w² rounds.
        let diag = |s: f64| 1.0 - 2.0 * s / norm;
        let off = |e: f64| if norm == 1.0 { e } else { e / norm };
        Ok(Mat3([
            [diag(yy + zz), off(2.0 * b * (x * y - w * z)), off(2.0 * b * (a * x * z + w * y))],
            [off(2.0 * a * (x * y + w * z)), diag(xx + zz), off(2.0 * a * (b * y * z - w * x))],
            [off(2.0 * (a * x * z - w * y)), off(2.0 * (w * x + b * y * z)), diag(xx + yy)],
        ]))
    }

    /// Decomposes a unit quaternion into angle and unit axis.
    ///
    /// Vector parts with positive inner square give the elliptic form with
    /// `φ = 2·atan2(√⟨V,V⟩, w)`; negative inner square gives the hyperbolic
    /// form with `γ = 2·asinh(√−⟨V,V⟩)`. In both cases the half-angle sine is
    /// non-negative and the axis carries the orientation, so
    /// [`Signature::from_axis_angle`] reproduces `q` exactly up to rounding.
    pub fn polar_form(&self, q: &GQuat) -> Result<PolarForm> {
        self.require_unit(q)?;
        let v = q.vector_part();
        if v.is_zero() {
            return Ok(PolarForm::Identity);
        }
        let inner = self.inner(&v, &v);
        let magnitude = self.alpha().abs() * v[0] * v[0]
            + self.beta().abs() * v[1] * v[1]
            + self.alpha_beta().abs() * v[2] * v[2];
        if inner.abs() <= NULL_TOL * magnitude {
            return Err(Error::NullVectorPart { inner });
        }
        if inner > 0.0 {
            let s = inner.sqrt();
            Ok(PolarForm::Elliptic { angle: 2.0 * s.atan2(q.w), axis: v.scale(1.0 / s) })
        } else {
            if q.w < 0.0 {
                return Err(Error::NegativeHyperbolicScalar { scalar: q.w });
            }
            let s = (-inner).sqrt();
            Ok(PolarForm::Hyperbolic { angle: 2.0 * s.asinh(), axis: v.scale(1.0 / s) })
        }
    }

    /// Inverse of [`Signature::polar_form`].
    pub fn from_axis_angle(&self, pf: &PolarForm) -> Result<GQuat> {
        pf.validate(self)?;
        Ok(match *pf {
            PolarForm::Identity => GQuat::ONE,
            PolarForm::Elliptic { angle, axis } => {
                let (s, c) = (angle / 2.0).sin_cos();
                GQuat::from_scalar_vector(c, axis.scale(s))
            }
            PolarForm::Hyperbolic { angle, axis } => {
                let half = angle / 2.0;
                GQuat::from_scalar_vector(half.cosh(), axis.scale(half.sinh()))
            }
        })
    }

    /// The generalized skew-symmetric matrix of `s`; `S·v = s × v`.
    pub fn axis_skew_matrix(&self, s: &Vec3) -> Mat3 {
        let (a, b) = (self.alpha(), self.beta());
        Mat3([
            [0.0, -b * s[2], b * s[1]],
            [a * s[2], 0.0, -a * s[0]],
            [-s[1], s[0], 0.0],
        ])
    }

    /// `I + sin φ·S + (1 − cos φ)·S²` for elliptic forms (`α, β > 0`) and
    /// `I + sinh γ·S + (cosh γ − 1)·S²` for hyperbolic forms (`α > 0 > β`).
    pub fn rodrigues_matrix(&self, pf: &PolarForm) -> Result<Mat3> {
        pf.validate(self)?;
        let (a, b) = (self.alpha(), self.beta());
        let (first, second, axis) = match *pf {
            PolarForm::Identity => return Ok(Mat3::IDENTITY),
            PolarForm::Elliptic { angle, axis } => {
                if !(a > 0.0 && b > 0.0) {
                    return Err(Error::UnsupportedSignature { kind: "elliptic", alpha: a, beta: b });
                }
                (angle.sin(), 1.0 - angle.cos(), axis)
            }
            PolarForm::Hyperbolic { angle, axis } => {
                if !(a > 0.0 && b < 0.0) {
                    return Err(Error::UnsupportedSignature { kind: "hyperbolic", alpha: a, beta: b });
                }
                (angle.sinh(), angle.cosh() - 1.0, axis)
            }
        };
        let s = self.axis_skew_matrix(&axis);
        Ok(Mat3::IDENTITY + s.scale(first) + (s * s).scale(second))
    }

    /// `q₁·q₂` for unit quaternions; `M(q₁q₂) = M(q₁)·M(q₂)`.
    pub fn compose(&self, q1: &GQuat, q2: &GQuat) -> Result<GQuat> {
        self.require_unit(q1)?;
        self.require_unit(q2)?;
        Ok(self.multiply(q1, q2))
    }
}

fn scalar_scale(sig: &Signature, q: &GQuat, w: &Vec3) -> f64 {
    let qa = q.to_array().iter().map(|c| c * c).sum::<f64>();
    let wa = w.0.iter().map(|c| c * c).sum::<f64>();
    let coeff = 1.0f64.max(sig.alpha().abs()).max(sig.beta().abs()).max(sig.alpha_beta().abs());
    (qa * wa.sqrt() * coeff * coeff).max(1.0)
}
