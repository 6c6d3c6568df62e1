//! Deterministic sampling for the property suites.
//!
//! The generator is xoshiro256++ seeded through SplitMix64 (the
//! `seed_from_u64` construction of the reference implementation). A draw in
//! `[0, 1)` takes the top 53 bits of the next output: `(x >> 11) · 2⁻⁵³`.
//! Every sampled case gets its own generator whose seed is derived from the
//! suite seed and the case coordinates, so any single case can be replayed
//! without running the others.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256PlusPlus};
use std::f64::consts::TAU;

use crate::gquat::GQuat;
use crate::metric::{Signature, Vec3};
use crate::rotation::PolarForm;

/// Components of sampled quaternions and vectors lie in `[−COMPONENT, COMPONENT]`.
pub const COMPONENT: f64 = 2.0;

/// Magnitude bound for sampled signature parameters.
pub const SIGNATURE_RANGE: f64 = 4.0;

/// Sampled unit quaternions satisfy `N(q) ≥ CONDITIONING · N⁺(q)` before
/// normalization, where `N⁺` is the norm with `|α|, |β|, |αβ|`.
pub const CONDITIONING: f64 = 0.1;

/// Hyperbolic angles are drawn from `[−HYPERBOLIC_RANGE, HYPERBOLIC_RANGE]`.
pub const HYPERBOLIC_RANGE: f64 = 3.0;

const MAX_ATTEMPTS: usize = 100_000;

/// Folds a list of words into one seed with chained SplitMix64 steps.
pub fn derive_seed(parts: &[u64]) -> u64 {
    parts.iter().fold(0x6a09_e667_f3bc_c909, |state, &part| {
        SplitMix64::seed_from_u64(state ^ part).next_u64()
    })
}

/// 64-bit FNV-1a, used to turn property names into seed words.
pub fn name_key(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

/// Which region of the `(α, β)` plane to draw a signature from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignatureFamily {
    /// `α, β ∈ (0, 4]`.
    Positive,
    /// `α ∈ (0, 4]`, `β ∈ [−4, 0)`.
    Split,
    /// `α, β ∈ [−4, 4]`.
    General,
}

pub struct CaseRng(Xoshiro256PlusPlus);

impl CaseRng {
    pub fn new(seed: u64) -> Self {
        CaseRng(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn for_case(parts: &[u64]) -> Self {
        CaseRng::new(derive_seed(parts))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform in `(0, hi]`.
    fn positive(&mut self, hi: f64) -> f64 {
        hi * (1.0 - self.unit())
    }

    pub fn component(&mut self) -> f64 {
        self.uniform(-COMPONENT, COMPONENT)
    }

    pub fn vec3(&mut self) -> Vec3 {
        Vec3::new(self.component(), self.component(), self.component())
    }

    pub fn quat(&mut self) -> GQuat {
        GQuat::new(self.component(), self.component(), self.component(), self.component())
    }

    pub fn signature(&mut self, family: SignatureFamily) -> Signature {
        let r = SIGNATURE_RANGE;
        let (a, b) = match family {
            SignatureFamily::Positive => (self.positive(r), self.positive(r)),
            SignatureFamily::Split => (self.positive(r), -self.positive(r)),
            SignatureFamily::General => (self.uniform(-r, r), self.uniform(-r, r)),
        };
        Signature::new(a, b).expect("sampled signature is finite")
    }

    /// A unit quaternion whose pre-normalization norm is at least
    /// [`CONDITIONING`] times its absolute norm.
    pub fn unit_quat(&mut self, sig: &Signature) -> GQuat {
        for _ in 0..MAX_ATTEMPTS {
            let q = self.quat();
            let norm = sig.norm(&q);
            if norm > 0.0 && norm >= CONDITIONING * absolute_norm(sig, &q) {
                return sig.normalize(&q).expect("positive norm");
            }
        }
        panic!("no well-conditioned unit quaternion found for {sig:?}");
    }

    /// A vector with `⟨s, s⟩ = sign` (±1) under `sig`, conditioned like
    /// [`CaseRng::unit_quat`].
    pub fn unit_axis(&mut self, sig: &Signature, sign: f64) -> Vec3 {
        for _ in 0..MAX_ATTEMPTS {
            let v = self.vec3();
            let inner = sig.inner(&v, &v) * sign;
            let abs = absolute_norm(sig, &GQuat::pure(v));
            if inner > 0.0 && inner >= CONDITIONING * abs {
                return v.scale(1.0 / inner.sqrt());
            }
        }
        panic!("no axis with inner square {sign} found for {sig:?}");
    }

    /// Elliptic form with `φ ∈ (0, 2π)` and a unit spacelike axis.
    pub fn elliptic_form(&mut self, sig: &Signature) -> PolarForm {
        let axis = self.unit_axis(sig, 1.0);
        let angle = loop {
            let a = TAU * self.unit();
            if a > 0.0 {
                break a;
            }
        };
        PolarForm::Elliptic { angle, axis }
    }

    /// Hyperbolic form with `γ ∈ [−3, 3] \ {0}` and a unit timelike axis.
    pub fn hyperbolic_form(&mut self, sig: &Signature) -> PolarForm {
        let axis = self.unit_axis(sig, -1.0);
        let angle = loop {
            let a = self.uniform(-HYPERBOLIC_RANGE, HYPERBOLIC_RANGE);
            if a != 0.0 {
                break a;
            }
        };
        PolarForm::Hyperbolic { angle, axis }
    }
}

/// `w² + |α|x² + |β|y² + |αβ|z²`.
pub fn absolute_norm(sig: &Signature, q: &GQuat) -> f64 {
    q.w * q.w
        + sig.alpha().abs() * q.x * q.x
        + sig.beta().abs() * q.y * q.y
        + sig.alpha_beta().abs() * q.z * q.z
}
