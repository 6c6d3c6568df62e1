//! Independent Euclidean rotation-matrix formula for unit real quaternions.

use crate::error::{Error, Result};
use crate::gquat::GQuat;
use crate::metric::{Mat3, Signature};
use crate::rotation::UNIT_TOL;

/// Classical conversion of a unit real quaternion to its rotation matrix,
/// written with the `2(w² + x²) − 1` diagonal.
pub fn wittenburg_matrix(q: &GQuat) -> Result<Mat3> {
    let norm = Signature::EUCLIDEAN.norm(q);
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit { norm });
    }
    let GQuat { w, x, y, z } = *q;
    Ok(Mat3([
        [2.0 * (w * w + x * x) - 1.0, 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 2.0 * (w * w + y * y) - 1.0, 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 2.0 * (w * w + z * z) - 1.0],
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformance::CaseRng;
    use crate::metric::scaled_max_diff;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn identity_and_euclidean_example() {
        assert_eq!(wittenburg_matrix(&GQuat::ONE).unwrap(), Mat3::IDENTITY);
        let r = FRAC_1_SQRT_2;
        let m = wittenburg_matrix(&GQuat::new(r, 0.5, -0.5, 0.0)).unwrap();
        let expected = Mat3([[0.5, -0.5, -r], [-0.5, 0.5, -r], [r, r, 0.0]]);
        assert!(scaled_max_diff(&m.to_row_major(), &expected.to_row_major()) <= 1e-15);
    }

    #[test]
    fn agrees_with_closed_form() {
        let mut rng = CaseRng::new(5);
        for _ in 0..100 {
            let q = rng.unit_quat(&Signature::EUCLIDEAN);
            let a = wittenburg_matrix(&q).unwrap();
            let b = Signature::EUCLIDEAN.rotation_matrix(&q).unwrap();
            assert!(scaled_max_diff(&a.to_row_major(), &b.to_row_major()) <= 1e-14);
        }
    }

    #[test]
    fn rejects_non_unit() {
        assert_eq!(
            wittenburg_matrix(&GQuat::new(1.0, 1.0, 0.0, 0.0)),
            Err(Error::NotUnit { norm: 2.0 })
        );
    }
}
