//! The algebra of generalized quaternions.
//!
//! Basis `{1, i, j, k}` with `i² = −α`, `j² = −β`, `k² = −αβ`, `ij = k = −ji`,
//! `jk = βi = −kj`, `ki = αj = −ik`. Every operation that depends on `(α, β)`
//! is a method on [`Signature`].

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{Mat4, Signature, Vec3};

/// Norms whose magnitude falls below this are treated as zero when inverting.
pub const UNDERFLOW_NORM: f64 = 1e-300;

/// Cosine overshoot beyond which [`QuatAngle::warning`] is raised.
pub const CLAMP_WARNING: f64 = 1e-9;

/// `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct GQuat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl GQuat {
    pub const ONE: GQuat = GQuat::new(1.0, 0.0, 0.0, 0.0);
    pub const ZERO: GQuat = GQuat::new(0.0, 0.0, 0.0, 0.0);
    pub const I: GQuat = GQuat::new(0.0, 1.0, 0.0, 0.0);
    pub const J: GQuat = GQuat::new(0.0, 0.0, 1.0, 0.0);
    pub const K: GQuat = GQuat::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        GQuat { w, x, y, z }
    }

    pub fn from_scalar_vector(s: f64, v: Vec3) -> Self {
        GQuat::new(s, v[0], v[1], v[2])
    }

    /// The pure quaternion `0 + v`.
    pub fn pure(v: Vec3) -> Self {
        GQuat::from_scalar_vector(0.0, v)
    }

    #[inline]
    pub fn scalar_part(&self) -> f64 {
        self.w
    }

    #[inline]
    pub fn vector_part(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn conjugate(&self) -> GQuat {
        GQuat::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn scale(&self, c: f64) -> GQuat {
        GQuat::new(c * self.w, c * self.x, c * self.y, c * self.z)
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }

    /// Basis element by index: 0 → 1, 1 → i, 2 → j, 3 → k.
    pub fn basis(n: usize) -> GQuat {
        let mut a = [0.0; 4];
        a[n] = 1.0;
        GQuat::from(a)
    }
}

impl From<[f64; 4]> for GQuat {
    fn from(a: [f64; 4]) -> Self {
        GQuat::new(a[0], a[1], a[2], a[3])
    }
}

impl From<GQuat> for [f64; 4] {
    fn from(q: GQuat) -> Self {
        q.to_array()
    }
}

impl Add for GQuat {
    type Output = GQuat;
    fn add(self, p: GQuat) -> GQuat {
        GQuat::new(self.w + p.w, self.x + p.x, self.y + p.y, self.z + p.z)
    }
}

impl Sub for GQuat {
    type Output = GQuat;
    fn sub(self, p: GQuat) -> GQuat {
        GQuat::new(self.w - p.w, self.x - p.x, self.y - p.y, self.z - p.z)
    }
}

impl Neg for GQuat {
    type Output = GQuat;
    fn neg(self) -> GQuat {
        GQuat::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul<GQuat> for f64 {
    type Output = GQuat;
    fn mul(self, q: GQuat) -> GQuat {
        q.scale(self)
    }
}

/// Angle between two quaternions under the scalar product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuatAngle {
    pub radians: f64,
    /// How far `|cos λ|` exceeded 1 before clamping; zero when it did not.
    pub overshoot: f64,
}

impl QuatAngle {
    /// The cosine had to be clamped by more than [`CLAMP_WARNING`]. Always
    /// the case for some pairs in mixed signature, where the scalar product
    /// does not obey Cauchy–Schwarz.
    pub fn warning(&self) -> bool {
        self.overshoot > CLAMP_WARNING
    }
}

impl Signature {
    /// Product `q·p`.
    ///
    /// Evaluated in exactly the order of `left_matrix(q) · p`, so the two
    /// agree bit for bit.
    pub fn multiply(&self, q: &GQuat, p: &GQuat) -> GQuat {
        let (a, b) = (self.alpha(), self.beta());
        let ab = self.alpha_beta();
        let GQuat { w: a0, x: a1, y: a2, z: a3 } = *q;
        let GQuat { w: b0, x: b1, y: b2, z: b3 } = *p;
        GQuat::new(
            a0 * b0 - a * a1 * b1 - b * a2 * b2 - ab * a3 * b3,
            a1 * b0 + a0 * b1 - b * a3 * b2 + b * a2 * b3,
            a2 * b0 + a * a3 * b1 + a0 * b2 - a * a1 * b3,
            a3 * b0 - a2 * b1 + a1 * b2 + a0 * b3,
        )
    }

    /// `N(q) = w² + αx² + βy² + αβz²`; may be zero or negative outside the
    /// positive-definite signatures.
    pub fn norm(&self, q: &GQuat) -> f64 {
        q.w * q.w + self.alpha() * q.x * q.x + self.beta() * q.y * q.y + self.alpha_beta() * q.z * q.z
    }

    /// `q̄ / N(q)`, defined for every nonzero norm including negative ones.
    pub fn inverse(&self, q: &GQuat) -> Result<GQuat> {
        let norm = self.norm(q);
        if norm == 0.0 || norm.abs() < UNDERFLOW_NORM {
            return Err(Error::NonInvertible { norm });
        }
        let c = q.conjugate();
        Ok(GQuat::new(c.w / norm, c.x / norm, c.y / norm, c.z / norm))
    }

    /// `q / √N(q)`.
    pub fn normalize(&self, q: &GQuat) -> Result<GQuat> {
        let norm = self.norm(q);
        if !(norm > 0.0) {
            return Err(Error::NonPositiveNorm { norm });
        }
        let r = norm.sqrt();
        Ok(GQuat::new(q.w / r, q.x / r, q.y / r, q.z / r))
    }

    /// Matrix `L(q)` with `L(q)·p = q·p` for `p` as the column `(w, x, y, z)`.
    pub fn left_matrix(&self, q: &GQuat) -> Mat4 {
        let (a, b) = (self.alpha(), self.beta());
        let ab = self.alpha_beta();
        let GQuat { w: a0, x: a1, y: a2, z: a3 } = *q;
        Mat4([
            [a0, -(a * a1), -(b * a2), -(ab * a3)],
            [a1, a0, -(b * a3), b * a2],
            [a2, a * a3, a0, -(a * a1)],
            [a3, -a2, a1, a0],
        ])
    }

    /// `S(q)S(p) + ⟨V(q), V(p)⟩`, the scalar part of `q·p̄`.
    pub fn scalar_product(&self, q: &GQuat, p: &GQuat) -> f64 {
        q.w * p.w + self.inner(&q.vector_part(), &p.vector_part())
    }

    /// `λ = arccos(⟨q,p⟩ / (√N(q)·√N(p)))` with the cosine clamped to
    /// `[−1, 1]`.
    pub fn angle_between(&self, q: &GQuat, p: &GQuat) -> Result<QuatAngle> {
        let (nq, np) = (self.norm(q), self.norm(p));
        for norm in [nq, np] {
            if !(norm > 0.0) {
                return Err(Error::NonPositiveNorm { norm });
            }
        }
        let cos = self.scalar_product(q, p) / (nq.sqrt() * np.sqrt());
        let overshoot = (cos.abs() - 1.0).max(0.0);
        Ok(QuatAngle { radians: cos.clamp(-1.0, 1.0).acos(), overshoot })
    }

    /// Applies `L(q)` through the generic matrix path.
    pub fn multiply_via_matrix(&self, q: &GQuat, p: &GQuat) -> GQuat {
        self.left_matrix(q).mul_vec(&p.to_array()).into()
    }
}
