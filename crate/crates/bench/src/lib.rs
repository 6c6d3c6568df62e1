//! Deterministic inputs shared by the benchmarks.

use genquat::conformance::CaseRng;
use genquat::{GQuat, Signature, Vec3};

/// Signatures benchmarked: Euclidean, split and one general pair.
pub fn signatures() -> [(&'static str, Signature); 3] {
    [
        ("euclidean", Signature::EUCLIDEAN),
        ("split", Signature::SPLIT),
        ("general", Signature::new(2.5, -0.75).expect("finite")),
    ]
}

/// `n` unit quaternions and vectors drawn from a fixed seed.
pub fn inputs(sig: &Signature, n: usize) -> (Vec<GQuat>, Vec<Vec3>) {
    let mut rng = CaseRng::new(0x5eed);
    (0..n).map(|_| (rng.unit_quat(sig), rng.vec3())).unzip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_unit_and_reproducible() {
        for (_, sig) in signatures() {
            let (qs, vs) = inputs(&sig, 64);
            assert_eq!(qs.len(), 64);
            assert_eq!(vs.len(), 64);
            assert!(qs.iter().all(|q| (sig.norm(q) - 1.0).abs() < 1e-12));
            assert_eq!(inputs(&sig, 64).0, qs);
        }
    }
}
