//! Fixed worked examples with exactly known answers.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use super::variants::listed_example_matrix;
use super::{FixtureReport, Subject, ToleranceProfile};
use crate::error::Error;
use crate::gquat::GQuat;
use crate::metric::{Mat3, Signature};
use crate::rotation::PolarForm;

/// Unit quaternion `1/√2 + ½(1/√α, −1/√β, 0)`: a quarter turn for any
/// positive signature.
pub(crate) fn quarter_turn(sig: &Signature) -> GQuat {
    GQuat::new(FRAC_1_SQRT_2, 0.5 / sig.alpha().sqrt(), -0.5 / sig.beta().sqrt(), 0.0)
}

pub(crate) fn euclidean_quarter_turn_matrix() -> Mat3 {
    let r = FRAC_1_SQRT_2;
    Mat3([[0.5, -0.5, -r], [-0.5, 0.5, -r], [r, r, 0.0]])
}

pub(crate) fn split_example_matrix() -> Mat3 {
    let s = 3f64.sqrt() / 2.0;
    Mat3([[1.0, 0.0, 0.0], [0.0, 0.5, -s], [0.0, s, 0.5]])
}

/// The quarter-turn matrix at `(α, β) = (2, 3)`, from conjugation of the
/// basis vectors in exact arithmetic.
pub(crate) fn quarter_turn_matrix_2_3() -> Mat3 {
    let r6 = 6f64.sqrt();
    Mat3([[0.5, -r6 / 4.0, -r6 / 2.0], [-r6 / 6.0, 0.5, -1.0], [r6 / 6.0, 0.5, 0.0]])
}

/// Signatures at which the quarter-turn example is checked.
pub const QUARTER_TURN_SIGNATURES: [(f64, f64); 3] = [(2.0, 3.0), (2.0, 1.0), (5.0, 0.5)];

fn max_abs_diff(a: &Mat3, b: &Mat3) -> f64 {
    a.to_row_major()
        .iter()
        .zip(b.to_row_major())
        .fold(0.0, |acc: f64, (x, y)| acc.max((x - y).abs()))
}

fn report(name: &'static str, residual: f64, tolerance: f64) -> FixtureReport {
    let residual = if residual.is_finite() { residual } else { f64::INFINITY };
    FixtureReport { name, residual, tolerance, passed: residual <= tolerance }
}

pub(super) fn all(tol: &ToleranceProfile, subject: &Subject) -> Vec<FixtureReport> {
    let euclid = Signature::EUCLIDEAN;
    let split = Signature::SPLIT;
    let matrix = |sig: &Signature, q: &GQuat, expected: &Mat3| match (subject.rotation_matrix)(sig, q) {
        Ok(m) => max_abs_diff(&m, expected),
        Err(_) => f64::INFINITY,
    };

    let mut out = Vec::new();
    let q = quarter_turn(&euclid);
    out.push(report(
        "example-2.3-euclidean-matrix",
        matrix(&euclid, &q, &euclidean_quarter_turn_matrix()),
        tol.fixture_exact,
    ));
    let polar = match euclid.polar_form(&q) {
        Ok(PolarForm::Elliptic { angle, axis }) => {
            let expected = [FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0];
            axis.0.iter().zip(expected).fold((angle - FRAC_PI_2).abs(), |acc, (a, b)| acc.max((a - b).abs()))
        }
        _ => f64::INFINITY,
    };
    out.push(report("example-2.3-euclidean-polar", polar, tol.fixture));

    let q = GQuat::new(3f64.sqrt() / 2.0, 0.5, 0.0, 0.0);
    out.push(report("example-2.3-split-matrix", matrix(&split, &q, &split_example_matrix()), tol.fixture_exact));

    let sig = Signature::new(2.0, 3.0).expect("finite");
    out.push(report(
        "example-3.4-corrected-matrix",
        matrix(&sig, &quarter_turn(&sig), &quarter_turn_matrix_2_3()),
        tol.fixture,
    ));
    for (name, (a, b)) in [
        "example-3.4-quasi-orthogonality-2-3",
        "example-3.4-quasi-orthogonality-2-1",
        "example-3.4-quasi-orthogonality-5-0.5",
    ]
    .into_iter()
    .zip(QUARTER_TURN_SIGNATURES)
    {
        let sig = Signature::new(a, b).expect("finite");
        let q = quarter_turn(&sig);
        let residual = (subject.rotation_matrix)(&sig, &q)
            .and_then(|m| sig.quasi_orthogonality(&m, tol.fixture))
            .map(|r| (r.residual / r.scale).max(r.det_residual))
            .unwrap_or(f64::INFINITY);
        let angle = sig.polar_form(&q).map(|pf| (pf.angle() - FRAC_PI_2).abs()).unwrap_or(f64::INFINITY);
        out.push(report(name, residual.max(angle), tol.fixture));
    }

    // The listed closed form must be rejected wherever α ≠ β; residual 0
    // means every such instance was rejected.
    let rejected = QUARTER_TURN_SIGNATURES
        .iter()
        .filter(|(a, b)| a != b)
        .map(|&(a, b)| {
            let sig = Signature::new(a, b).expect("finite");
            match sig.quasi_orthogonality(&listed_example_matrix(a, b), tol.fixture) {
                Ok(r) if !r.passed => 0.0,
                _ => f64::INFINITY,
            }
        })
        .fold(0.0, f64::max);
    out.push(report("example-3.4-listed-matrix-rejected", rejected, 0.0));

    let zero_divisor = GQuat::new(1.0, 0.0, 1.0, 0.0);
    let residual = match split.inverse(&zero_divisor) {
        Err(Error::NonInvertible { norm }) => norm.abs(),
        _ => f64::INFINITY,
    };
    out.push(report("zero-divisor", residual, 0.0));

    out.push(report("basis-product-table", basis_table_residual(&sig), 0.0));
    out
}

/// Largest deviation of the 16 basis products from `i² = −α`, `j² = −β`,
/// `k² = −αβ`, `ij = k`, `jk = βi`, `ki = αj` and their anticommuted forms.
fn basis_table_residual(sig: &Signature) -> f64 {
    let (a, b, ab) = (sig.alpha(), sig.beta(), sig.alpha_beta());
    let table: [[[f64; 4]; 4]; 4] = [
        [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]],
        [[0.0, 1.0, 0.0, 0.0], [-a, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0], [0.0, 0.0, -a, 0.0]],
        [[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, -1.0], [-b, 0.0, 0.0, 0.0], [0.0, b, 0.0, 0.0]],
        [[0.0, 0.0, 0.0, 1.0], [0.0, 0.0, a, 0.0], [0.0, -b, 0.0, 0.0], [-ab, 0.0, 0.0, 0.0]],
    ];
    let mut r: f64 = 0.0;
    for (row, entries) in table.iter().enumerate() {
        for (col, expected) in entries.iter().enumerate() {
            let got = sig.multiply(&GQuat::basis(row), &GQuat::basis(col)).to_array();
            for (g, e) in got.iter().zip(expected) {
                r = r.max((g - e).abs());
            }
        }
    }
    r
}
