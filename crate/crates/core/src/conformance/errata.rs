//! Machine-checked list of formula errors that the oracles expose.

use serde::Serialize;

use super::fixtures::{quarter_turn, QUARTER_TURN_SIGNATURES};
use super::variants::{cross_alpha_beta_k, listed_example_matrix, normalize_by_norm, rotation_matrix_bare_third_column};
use crate::gquat::GQuat;
use crate::metric::{scaled_max_diff, Signature, Vec3};

/// Residuals above this separate a wrong formula from rounding noise.
const DETECTION: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evidence {
    pub signature: Signature,
    /// Components of the input the two computations were run on.
    pub input: Vec<f64>,
    /// What is compared, in words.
    pub computation: &'static str,
    pub listed: Vec<f64>,
    pub oracle: Vec<f64>,
    /// Scaled max difference between `listed` and `oracle`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Erratum {
    pub id: &'static str,
    pub listed: &'static str,
    pub adopted: &'static str,
    pub evidence: Evidence,
    /// The listed form disagrees with the oracle and the adopted form agrees.
    pub confirmed: bool,
}

fn sig(alpha: f64, beta: f64) -> Signature {
    Signature::new(alpha, beta).expect("finite")
}

fn evidence(
    signature: Signature,
    input: Vec<f64>,
    computation: &'static str,
    listed: Vec<f64>,
    oracle: Vec<f64>,
) -> Evidence {
    let residual = scaled_max_diff(&listed, &oracle);
    Evidence { signature, input, computation, listed, oracle, residual }
}

pub fn erratum_report() -> Vec<Erratum> {
    vec![cross_k(), unit_normalization(), rotation_m13_m23(), example_3_4()]
}

fn cross_k() -> Erratum {
    let s = sig(2.0, 3.0);
    let (i, j) = (Vec3::basis(0), Vec3::basis(1));
    let oracle = s.multiply(&GQuat::pure(i), &GQuat::pure(j)).vector_part();
    let ev = evidence(
        s,
        [i.0, j.0].concat(),
        "i × j against the vector part of the product i·j",
        cross_alpha_beta_k(&s, &i, &j).0.to_vec(),
        oracle.0.to_vec(),
    );
    let adopted = scaled_max_diff(&s.cross(&i, &j).0, &oracle.0);
    Erratum {
        id: "cross-k",
        listed: "k component αβ(u₁v₂ − u₂v₁)",
        adopted: "k component u₁v₂ − u₂v₁",
        confirmed: ev.residual > DETECTION && adopted <= DETECTION,
        evidence: ev,
    }
}

fn unit_normalization() -> Erratum {
    let s = sig(2.0, 3.0);
    let q = GQuat::new(1.0, 1.0, 1.0, 0.0);
    let ev = evidence(
        s,
        q.to_array().to_vec(),
        "norm of the normalized quaternion against 1",
        vec![s.norm(&normalize_by_norm(&s, &q))],
        vec![1.0],
    );
    let adopted = s.normalize(&q).map(|u| (s.norm(&u) - 1.0).abs()).unwrap_or(f64::INFINITY);
    Erratum {
        id: "unit-normalization",
        listed: "q / N(q)",
        adopted: "q / √N(q)",
        confirmed: ev.residual > DETECTION && adopted <= DETECTION,
        evidence: ev,
    }
}

fn rotation_m13_m23() -> Erratum {
    let s = sig(2.0, 3.0);
    let q = s.normalize(&GQuat::new(1.0, 0.5, 0.25, 0.5)).expect("positive norm");
    let oracle = s.conjugation_map(&q, &Vec3::basis(2)).expect("invertible");
    let listed = rotation_matrix_bare_third_column(&s, &q).expect("invertible").column(2);
    let ev = evidence(
        s,
        q.to_array().to_vec(),
        "third column of M against q·k·q̄ / N(q)",
        listed.0.to_vec(),
        oracle.0.to_vec(),
    );
    let adopted = s
        .rotation_matrix(&q)
        .map(|m| scaled_max_diff(&m.column(2).0, &oracle.0))
        .unwrap_or(f64::INFINITY);
    Erratum {
        id: "rotation-m13-m23",
        listed: "M₁₃ = 2β(a₁a₃ + a₀a₂), M₂₃ = 2α(a₂a₃ − a₀a₁)",
        adopted: "M₁₃ = 2β(αa₁a₃ + a₀a₂), M₂₃ = 2α(βa₂a₃ − a₀a₁)",
        confirmed: ev.residual > DETECTION && adopted <= DETECTION,
        evidence: ev,
    }
}

fn example_3_4() -> Erratum {
    let (a, b) = QUARTER_TURN_SIGNATURES[1];
    let s = sig(a, b);
    let eps = s.epsilon_matrix();
    let m = listed_example_matrix(a, b);
    let ev = evidence(
        s,
        quarter_turn(&s).to_array().to_vec(),
        "Mᵀ ε M of the listed matrix against ε",
        (m.transpose() * eps * m).to_row_major().to_vec(),
        eps.to_row_major().to_vec(),
    );
    let adopted = s
        .rotation_matrix(&quarter_turn(&s))
        .and_then(|m| s.quasi_orthogonality(&m, DETECTION))
        .map(|r| r.passed)
        .unwrap_or(false);
    Erratum {
        id: "example-3.4",
        listed: "closed-form matrix of 1/√2 + ½(1/√α, −1/√β, 0), quasi-orthogonal only for α = β",
        adopted: "matrix from conjugating the basis vectors",
        confirmed: ev.residual > DETECTION && adopted,
        evidence: ev,
    }
}
