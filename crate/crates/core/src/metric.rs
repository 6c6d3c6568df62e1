//! Metric structure of the 3-space attached to a signature `(α, β)`.
//!
//! The inner product is `⟨u, v⟩ = α u₁v₁ + β u₂v₂ + αβ u₃v₃`, i.e. `uᵀ ε v`
//! with `ε = diag(α, β, αβ)`. Alongside it live the matching vector product,
//! the quasi-orthogonality and generalized skew-symmetry predicates, and the
//! small fixed-size dense matrices every other module works with.
//!
//! Matrix arithmetic evaluates in a fixed order (row-dot-column summed left
//! to right, determinant by cofactor expansion along the first row) so that
//! results are reproducible bit for bit.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pair `(α, β)` defining both the algebra and the metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Signature {
    alpha: f64,
    beta: f64,
}

impl Signature {
    /// Real quaternions / Euclidean 3-space.
    pub const EUCLIDEAN: Signature = Signature { alpha: 1.0, beta: 1.0 };
    /// Split quaternions / Minkowski 3-space.
    pub const SPLIT: Signature = Signature { alpha: 1.0, beta: -1.0 };

    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NonFinite { what: "alpha", value: alpha });
        }
        if !beta.is_finite() {
            return Err(Error::NonFinite { what: "beta", value: beta });
        }
        Ok(Signature { alpha, beta })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `αβ`, the square coefficient of the third basis direction.
    #[inline]
    pub fn alpha_beta(&self) -> f64 {
        self.alpha * self.beta
    }

    /// True when `ε` is singular (`α = 0` or `β = 0`).
    pub fn is_degenerate(&self) -> bool {
        self.alpha == 0.0 || self.beta == 0.0
    }

    fn require_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(Error::DegenerateSignature { alpha: self.alpha, beta: self.beta })
        } else {
            Ok(())
        }
    }

    pub fn inner(&self, u: &Vec3, v: &Vec3) -> f64 {
        self.alpha * u[0] * v[0] + self.beta * u[1] * v[1] + self.alpha_beta() * u[2] * v[2]
    }

    /// `diag(α, β, αβ)`.
    pub fn epsilon_matrix(&self) -> Mat3 {
        Mat3::diag(self.alpha, self.beta, self.alpha_beta())
    }

    /// Vector product compatible with the algebra: `i×j = k`, `j×k = βi`,
    /// `k×i = αj`. This is exactly the vector part of the product of two
    /// pure quaternions.
    pub fn cross(&self, u: &Vec3, v: &Vec3) -> Vec3 {
        Vec3([
            self.beta * (u[1] * v[2] - u[2] * v[1]),
            self.alpha * (u[2] * v[0] - u[0] * v[2]),
            u[0] * v[1] - u[1] * v[0],
        ])
    }

    /// Checks `MᵀεM = ε` and `det M = 1`.
    ///
    /// The orthogonality residual is compared against `tol · max(1, ‖ε‖∞)` so
    /// large signature parameters do not produce spurious failures; the
    /// determinant residual is compared against `tol` directly.
    pub fn quasi_orthogonality(&self, m: &Mat3, tol: f64) -> Result<QuasiOrthogonality> {
        self.require_nondegenerate()?;
        let eps = self.epsilon_matrix();
        let residual = (m.transpose() * eps * *m - eps).max_abs();
        let scale = eps.max_abs().max(1.0);
        let det = m.det();
        let det_residual = (det - 1.0).abs();
        Ok(QuasiOrthogonality {
            residual,
            scale,
            det,
            det_residual,
            tolerance: tol,
            passed: residual <= tol * scale && det_residual <= tol,
        })
    }

    pub fn is_quasi_orthogonal(&self, m: &Mat3, tol: f64) -> Result<bool> {
        self.quasi_orthogonality(m, tol).map(|r| r.passed)
    }

    /// Raw `max |Sᵀε + εS|`.
    pub fn skew_residual(&self, s: &Mat3) -> f64 {
        let eps = self.epsilon_matrix();
        (s.transpose() * eps + eps * *s).max_abs()
    }

    /// `Sᵀε = −εS` up to `tol · max(1, ‖ε‖∞)`.
    pub fn is_generalized_skew(&self, s: &Mat3, tol: f64) -> bool {
        let scale = self.epsilon_matrix().max_abs().max(1.0);
        self.skew_residual(s) <= tol * scale
    }
}

impl TryFrom<[f64; 2]> for Signature {
    type Error = Error;

    fn try_from(value: [f64; 2]) -> Result<Self> {
        Signature::new(value[0], value[1])
    }
}

impl From<Signature> for [f64; 2] {
    fn from(sig: Signature) -> Self {
        [sig.alpha, sig.beta]
    }
}

/// Outcome of a quasi-orthogonality check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuasiOrthogonality {
    /// `max |MᵀεM − ε|`, unscaled.
    pub residual: f64,
    /// `max(1, ‖ε‖∞)`.
    pub scale: f64,
    pub det: f64,
    pub det_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Coordinates in the basis `{i, j, k}`; identified with a pure quaternion.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    /// The `n`-th standard basis vector.
    pub fn basis(n: usize) -> Self {
        let mut v = [0.0; 3];
        v[n] = 1.0;
        Vec3(v)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    pub fn scale(&self, c: f64) -> Vec3 {
        Vec3([c * self[0], c * self[1], c * self[2]])
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.0)
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3([self[0] + rhs[0], self[1] + rhs[1], self[2] + rhs[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3([self[0] - rhs[0], self[1] - rhs[1], self[2] - rhs[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self[0], -self[1], -self[2]])
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v.scale(self)
    }
}

/// Dense row-major 3×3 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);

    pub fn diag(a: f64, b: f64, c: f64) -> Mat3 {
        Mat3([[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]])
    }

    pub fn from_row_major(v: [f64; 9]) -> Mat3 {
        Mat3([[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]])
    }

    pub fn from_columns(c0: Vec3, c1: Vec3, c2: Vec3) -> Mat3 {
        Mat3([[c0[0], c1[0], c2[0]], [c0[1], c1[1], c2[1]], [c0[2], c1[2], c2[2]]])
    }

    pub fn to_row_major(&self) -> [f64; 9] {
        let m = &self.0;
        [m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2]]
    }

    pub fn column(&self, j: usize) -> Vec3 {
        Vec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        let m = &self.0;
        Vec3([dot3(&m[0], &v.0), dot3(&m[1], &v.0), dot3(&m[2], &v.0)])
    }

    pub fn scale(&self, c: f64) -> Mat3 {
        Mat3(self.0.map(|row| row.map(|x| c * x)))
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.to_row_major())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = dot3(&self.0[i], &rhs.column(j).0);
            }
        }
        Mat3(out)
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, rhs: Mat3) -> Mat3 {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, rhs: Mat3) -> Mat3 {
        self + rhs.scale(-1.0)
    }
}

/// Dense row-major 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat4(pub [[f64; 4]; 4]);

impl Mat4 {
    pub const IDENTITY: Mat4 = Mat4([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]);

    pub fn transpose(&self) -> Mat4 {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in self.0.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out[j][i] = x;
            }
        }
        Mat4(out)
    }

    pub fn mul_vec(&self, v: &[f64; 4]) -> [f64; 4] {
        self.0.map(|row| dot4(&row, v))
    }

    pub fn column(&self, j: usize) -> [f64; 4] {
        [self.0[0][j], self.0[1][j], self.0[2][j], self.0[3][j]]
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = dot4(&self.0[i], &rhs.column(j));
            }
        }
        Mat4(out)
    }
}

#[inline]
fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub(crate) fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

pub(crate) fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0, |acc: f64, x| acc.max(x.abs()))
}

/// `max |aᵢ − bᵢ| / max(1, max |aᵢ|, max |bᵢ|)`.
///
/// The comparison metric used throughout the crate for "agrees within tol".
pub fn scaled_max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let diff = a.iter().zip(b).fold(0.0, |acc: f64, (x, y)| acc.max((x - y).abs()));
    diff / max_abs(a).max(max_abs(b)).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(a: f64, b: f64) -> Signature {
        Signature::new(a, b).unwrap()
    }

    #[test]
    fn rejects_non_finite_signature() {
        assert!(matches!(Signature::new(f64::NAN, 1.0), Err(Error::NonFinite { what: "alpha", .. })));
        assert!(matches!(Signature::new(1.0, f64::INFINITY), Err(Error::NonFinite { what: "beta", .. })));
    }

    #[test]
    fn inner_examples() {
        let s = sig(2.0, 3.0);
        let e1 = Vec3::new(1.0, 0.0, 0.0);
        assert_eq!(s.inner(&e1, &e1), 2.0);
        assert_eq!(s.inner(&Vec3::ZERO, &Vec3::new(4.0, -1.0, 7.0)), 0.0);
        // 2·1·0 + 3·2·1 + 6·0·1
        assert_eq!(s.inner(&Vec3::new(1.0, 2.0, 0.0), &Vec3::new(0.0, 1.0, 1.0)), 6.0);
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(Signature::EUCLIDEAN.epsilon_matrix(), Mat3::IDENTITY);
        assert_eq!(sig(2.0, 3.0).epsilon_matrix(), Mat3::diag(2.0, 3.0, 6.0));
        assert_eq!(Signature::SPLIT.epsilon_matrix(), Mat3::diag(1.0, -1.0, -1.0));
    }

    #[test]
    fn cross_examples() {
        let s = sig(2.0, 3.0);
        let i = Vec3::basis(0);
        let j = Vec3::basis(1);
        let k = Vec3::basis(2);
        assert_eq!(s.cross(&i, &j), k);
        assert_eq!(s.cross(&j, &k), Vec3::new(3.0, 0.0, 0.0));
        assert_eq!(s.cross(&k, &i), Vec3::new(0.0, 2.0, 0.0));
        let u = Vec3::new(1.0, 2.0, 0.0);
        assert_eq!(s.cross(&u, &u), Vec3::ZERO);
        assert_eq!(s.cross(&u, &Vec3::new(0.0, 1.0, 1.0)), Vec3::new(6.0, -2.0, 1.0));
    }

    #[test]
    fn quasi_orthogonal_identity_and_degenerate() {
        for s in [sig(2.0, 3.0), Signature::SPLIT, sig(-0.5, 7.0)] {
            assert!(s.is_quasi_orthogonal(&Mat3::IDENTITY, 1e-12).unwrap());
        }
        assert_eq!(
            sig(1.0, 0.0).is_quasi_orthogonal(&Mat3::IDENTITY, 1e-9),
            Err(Error::DegenerateSignature { alpha: 1.0, beta: 0.0 })
        );
    }

    #[test]
    fn quasi_orthogonal_euclidean_example_matrix() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let m = Mat3([[0.5, -0.5, -r], [-0.5, 0.5, -r], [r, r, 0.0]]);
        assert!(Signature::EUCLIDEAN.is_quasi_orthogonal(&m, 1e-12).unwrap());
    }

    #[test]
    fn listed_quarter_turn_matrix_is_not_quasi_orthogonal() {
        // α = 2, β = 1 in the listed closed form of the quarter turn.
        let (a, b) = (2.0, 1.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let m = Mat3([
            [0.5 + 0.25 * (a - b), -b / 2.0, -b * r],
            [-a / 2.0, 0.5 + 0.25 * (b - a), -a * r],
            [r, r, 0.5 - 0.25 * (a + b)],
        ]);
        let report = sig(a, b).quasi_orthogonality(&m, 1e-9).unwrap();
        assert!(!report.passed);
        // MᵀεM − ε worst entry is 9/8; det is 125/64.
        assert!((report.residual - 1.125).abs() < 1e-12, "{report:?}");
        assert!((report.det - 125.0 / 64.0).abs() < 1e-12);
    }

    #[test]
    fn tolerance_scales_with_epsilon() {
        // Residual ≈ 32·2e-10: above 1e-9 but inside 1e-9·‖ε‖∞ = 1.6e-8.
        let s = sig(4.0, 4.0);
        let m = Mat3::diag(1.0 + 2e-10, 1.0, 1.0 / (1.0 + 2e-10));
        let report = s.quasi_orthogonality(&m, 1e-9).unwrap();
        assert!(report.residual > 1e-9);
        assert!(report.passed);
    }

    #[test]
    fn generalized_skew_examples() {
        let s = sig(2.0, 3.0);
        assert!(s.is_generalized_skew(&Mat3::ZERO, 1e-12));
        let (a, b) = (2.0, 3.0);
        let (s1, s2, s3) = (1.0, 1.0, 1.0);
        let template = Mat3([[0.0, -b * s3, b * s2], [a * s3, 0.0, -a * s1], [-s2, s1, 0.0]]);
        assert!(s.is_generalized_skew(&template, 1e-12));
        assert!(!s.is_generalized_skew(&Mat3::IDENTITY, 1e-9));
        assert_eq!(s.skew_residual(&Mat3::IDENTITY), 12.0);
    }

    #[test]
    fn matrix_plumbing() {
        assert_eq!(Mat3::IDENTITY.det(), 1.0);
        assert_eq!(Mat3::diag(2.0, 3.0, 6.0).det(), 36.0);
        assert_eq!(
            sig(2.0, 3.0).epsilon_matrix().mul_vec(&Vec3::new(1.0, 1.0, 1.0)),
            Vec3::new(2.0, 3.0, 6.0)
        );
        let a = Mat3::from_row_major([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 10.0]);
        assert_eq!(a * Mat3::IDENTITY, a);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.det(), -3.0);
        assert_eq!(a.column(2), Vec3::new(3.0, 6.0, 10.0));
        let x = Mat4([
            [1.0, 2.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 3.0],
            [0.0, 0.0, 1.0, 0.0],
            [4.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(x * Mat4::IDENTITY, x);
        assert_eq!(x.transpose().0[3][1], 3.0);
        assert_eq!(x.mul_vec(&[1.0, 1.0, 1.0, 1.0]), [3.0, 4.0, 1.0, 5.0]);
    }

    #[test]
    fn signature_serde_round_trip() {
        let s: Signature = serde_json::from_str("[2.5,-1]").unwrap();
        assert_eq!(s, sig(2.5, -1.0));
        assert_eq!(serde_json::to_string(&s).unwrap(), "[2.5,-1.0]");
    }
}
