//! Oracle-driven verification harness.
//!
//! [`run_suite`] evaluates every algebraic and geometric invariant of the
//! crate on deterministic random samples, plus a fixed fixture set, and
//! returns a [`SuiteReport`] that serializes to stable JSON. The functions
//! under test are pluggable through [`Subject`] so that known-bad formula
//! variants (see [`variants`]) can be shown to fail; the oracles (quaternion
//! products, conjugation, the left-multiplication matrix) always come from
//! the crate itself.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::gquat::GQuat;
use crate::metric::{Mat3, Signature, Vec3};

mod errata;
mod fixtures;
mod properties;
mod reference;
pub mod sampling;
pub mod variants;

pub use errata::{erratum_report, Erratum, Evidence};
pub use reference::wittenburg_matrix;
pub use sampling::{CaseRng, SignatureFamily};

use sampling::name_key;

/// Tolerances applied by the suite; defaults are the documented bounds of
/// each invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ToleranceProfile {
    /// Symmetry of the inner product and agreement with `uᵀεv`.
    pub machine: f64,
    pub cross_orthogonality: f64,
    pub associativity: f64,
    pub norm_multiplicativity: f64,
    pub conjugation: f64,
    pub pure_product: f64,
    pub isometry: f64,
    pub quasi_orthogonality: f64,
    pub determinant: f64,
    pub closure: f64,
    pub oracle_agreement: f64,
    pub linearity: f64,
    pub homomorphism: f64,
    pub polar_round_trip: f64,
    pub rodrigues: f64,
    pub euclidean_reduction: f64,
    pub fixture_exact: f64,
    pub fixture: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        ToleranceProfile {
            machine: 1e-15,
            cross_orthogonality: 1e-12,
            associativity: 1e-9,
            norm_multiplicativity: 1e-9,
            conjugation: 1e-12,
            pure_product: 1e-12,
            isometry: 1e-10,
            quasi_orthogonality: 1e-9,
            determinant: 1e-10,
            closure: 1e-8,
            oracle_agreement: 1e-12,
            linearity: 1e-12,
            homomorphism: 1e-10,
            polar_round_trip: 1e-12,
            rodrigues: 1e-12,
            euclidean_reduction: 1e-14,
            fixture_exact: 1e-15,
            fixture: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Samples per property per signature; at least 1.
    pub cases: usize,
    pub signatures: Vec<Signature>,
    pub tolerances: ToleranceProfile,
}

impl SuiteConfig {
    /// `(1, 1)`, `(1, −1)`, three positive, three split and two general
    /// signatures drawn from `seed`.
    pub fn new(seed: u64, cases: usize) -> Self {
        SuiteConfig {
            seed,
            cases: cases.max(1),
            signatures: default_signatures(seed),
            tolerances: ToleranceProfile::default(),
        }
    }
}

pub fn default_signatures(seed: u64) -> Vec<Signature> {
    let mut rng = CaseRng::for_case(&[seed, name_key("signatures")]);
    let mut sigs = vec![Signature::EUCLIDEAN, Signature::SPLIT];
    for (family, count) in [
        (SignatureFamily::Positive, 3),
        (SignatureFamily::Split, 3),
        (SignatureFamily::General, 2),
    ] {
        sigs.extend((0..count).map(|_| rng.signature(family)));
    }
    sigs
}

/// The functions under test. Everything else (products, conjugation,
/// matrices of the left action) is taken from the crate.
#[derive(Clone, Copy)]
pub struct Subject {
    pub name: &'static str,
    pub cross: fn(&Signature, &Vec3, &Vec3) -> Vec3,
    pub rotation_matrix: fn(&Signature, &GQuat) -> Result<Mat3>,
}

impl Subject {
    pub fn reference() -> Self {
        Subject {
            name: "reference",
            cross: |sig, u, v| sig.cross(u, v),
            rotation_matrix: |sig, q| sig.rotation_matrix(q),
        }
    }
}

impl std::fmt::Debug for Subject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subject").field("name", &self.name).finish()
    }
}

/// The sampled inputs of one case; enough to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct CaseInput {
    pub signature: Option<Signature>,
    pub signature_index: usize,
    pub case: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub quaternions: Vec<GQuat>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vectors: Vec<Vec3>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub scalars: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub metric: &'static str,
    pub tolerance: f64,
    /// Non-finite residuals are recorded as `+∞` (serialized as `null`).
    pub worst_residual: f64,
    pub worst_input: Option<CaseInput>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub module: &'static str,
    pub signatures: usize,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckReport>,
    pub first_failure: Option<CaseInput>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.worst_residual <= c.tolerance)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureReport {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub subject: &'static str,
    pub seed: u64,
    pub cases: usize,
    pub signatures: Vec<Signature>,
    pub tolerances: ToleranceProfile,
    pub properties: Vec<PropertyReport>,
    pub fixtures: Vec<FixtureReport>,
    pub verdict: Verdict,
}

impl SuiteReport {
    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn fixture(&self, name: &str) -> Option<&FixtureReport> {
        self.fixtures.iter().find(|f| f.name == name)
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    run_suite_with(cfg, &Subject::reference())
}

/// One property evaluated on one signature.
struct Cell {
    property: usize,
    signature: usize,
}

struct CellOutcome {
    cases: usize,
    failed: usize,
    worst: Vec<(f64, Option<CaseInput>)>,
    first_failure: Option<CaseInput>,
}

pub fn run_suite_with(cfg: &SuiteConfig, subject: &Subject) -> SuiteReport {
    let props = properties::all(&cfg.tolerances);
    let cells: Vec<Cell> = props
        .iter()
        .enumerate()
        .flat_map(|(p, prop)| {
            cfg.signatures
                .iter()
                .enumerate()
                .filter(move |(_, sig)| (prop.applies)(sig))
                .map(move |(s, _)| Cell { property: p, signature: s })
        })
        .collect();

    let outcomes: Vec<CellOutcome> = cells
        .par_iter()
        .map(|cell| {
            let prop = &props[cell.property];
            let sig = cfg.signatures[cell.signature];
            let cases = if prop.deterministic { 1 } else { cfg.cases.max(1) };
            let mut outcome = CellOutcome {
                cases,
                failed: 0,
                worst: vec![(0.0, None); prop.checks.len()],
                first_failure: None,
            };
            for case in 0..cases {
                let mut rng = CaseRng::for_case(&[
                    cfg.seed,
                    name_key(prop.name),
                    cell.signature as u64,
                    case as u64,
                ]);
                let mut result = (prop.eval)(&mut rng, &sig, subject);
                result.input.signature = Some(sig);
                result.input.signature_index = cell.signature;
                result.input.case = case;
                debug_assert_eq!(result.residuals.len(), prop.checks.len());
                let mut ok = true;
                for ((residual, (_, tol)), worst) in
                    result.residuals.iter().zip(&prop.checks).zip(&mut outcome.worst)
                {
                    let r = if residual.is_finite() { *residual } else { f64::INFINITY };
                    if r > *tol {
                        ok = false;
                    }
                    if r > worst.0 || worst.1.is_none() {
                        *worst = (r.max(worst.0), Some(result.input.clone()));
                    }
                }
                if !ok {
                    outcome.failed += 1;
                    outcome.first_failure.get_or_insert_with(|| result.input.clone());
                }
            }
            outcome
        })
        .collect();

    let mut reports: Vec<PropertyReport> = props
        .iter()
        .map(|prop| PropertyReport {
            name: prop.name,
            module: prop.module,
            signatures: 0,
            cases: 0,
            passed: 0,
            failed: 0,
            checks: prop
                .checks
                .iter()
                .map(|&(metric, tolerance)| CheckReport {
                    metric,
                    tolerance,
                    worst_residual: 0.0,
                    worst_input: None,
                })
                .collect(),
            first_failure: None,
        })
        .collect();

    // Cells are in (property, signature) order, so the merge is deterministic.
    for (cell, outcome) in cells.iter().zip(outcomes) {
        let report = &mut reports[cell.property];
        report.signatures += 1;
        report.cases += outcome.cases;
        report.failed += outcome.failed;
        report.passed += outcome.cases - outcome.failed;
        for (check, (residual, input)) in report.checks.iter_mut().zip(outcome.worst) {
            if residual > check.worst_residual || check.worst_input.is_none() {
                check.worst_residual = residual.max(check.worst_residual);
                check.worst_input = input;
            }
        }
        if report.first_failure.is_none() {
            report.first_failure = outcome.first_failure;
        }
    }

    let fixtures = fixtures::all(&cfg.tolerances, subject);
    let verdict = if reports.iter().all(PropertyReport::passed) && fixtures.iter().all(|f| f.passed) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    SuiteReport {
        subject: subject.name,
        seed: cfg.seed,
        cases: cfg.cases,
        signatures: cfg.signatures.clone(),
        tolerances: cfg.tolerances,
        properties: reports,
        fixtures,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn failing(report: &SuiteReport) -> Vec<&'static str> {
        let mut names: Vec<_> = report.properties.iter().filter(|p| !p.passed()).map(|p| p.name).collect();
        names.extend(report.fixtures.iter().filter(|f| !f.passed).map(|f| f.name));
        names
    }

    #[test]
    fn reference_passes() {
        let report = run_suite(&SuiteConfig::new(42, 1));
        assert_eq!(failing(&report), Vec::<&str>::new());
        assert_eq!(report.verdict, Verdict::Pass);
        let report = run_suite(&SuiteConfig::new(7, 200));
        assert_eq!(failing(&report), Vec::<&str>::new());
    }

    #[test]
    fn bare_third_column_fails_oracle_agreement() {
        let report = run_suite_with(&SuiteConfig::new(42, 20), &Subject::with_bare_third_column());
        assert_eq!(report.verdict, Verdict::Fail);
        let p = report.property("oracle-agreement").unwrap();
        assert!(!p.passed());
        let input = p.first_failure.as_ref().unwrap();
        assert_ne!(input.signature.unwrap(), Signature::EUCLIDEAN);
        // The Euclidean reduction is blind to it.
        assert!(report.property("euclidean-reduction").unwrap().passed());
    }

    #[test]
    fn alpha_beta_cross_fails_pure_product() {
        let report = run_suite_with(&SuiteConfig::new(42, 20), &Subject::with_alpha_beta_cross());
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(!report.property("pure-product-identity").unwrap().passed());
        assert!(!report.property("cross-basis-identities").unwrap().passed());
    }

    #[test]
    fn replay_is_byte_identical() {
        let cfg = SuiteConfig::new(1234, 30);
        let a = serde_json::to_string(&run_suite(&cfg)).unwrap();
        let b = serde_json::to_string(&run_suite(&cfg)).unwrap();
        assert_eq!(a, b);
        let c = serde_json::to_string(&run_suite(&SuiteConfig::new(1235, 30))).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn first_failure_replays() {
        let cfg = SuiteConfig::new(42, 5);
        let report = run_suite_with(&cfg, &Subject::with_bare_third_column());
        let input = report.property("oracle-agreement").unwrap().first_failure.clone().unwrap();
        let props = properties::all(&cfg.tolerances);
        let prop = props.iter().find(|p| p.name == "oracle-agreement").unwrap();
        let mut rng = CaseRng::for_case(&[
            cfg.seed,
            name_key(prop.name),
            input.signature_index as u64,
            input.case as u64,
        ]);
        let replay = (prop.eval)(&mut rng, &input.signature.unwrap(), &Subject::with_bare_third_column());
        assert_eq!(replay.input.quaternions, input.quaternions);
    }

    #[test]
    fn every_property_reported_once() {
        let report = run_suite(&SuiteConfig::new(42, 1));
        let names: Vec<&str> = report.properties.iter().map(|p| p.name).collect();
        let expected = [
            "inner-symmetry",
            "cross-orthogonality",
            "cross-antisymmetry",
            "cross-basis-identities",
            "quasi-orthogonal-closure",
            "associativity",
            "left-matrix-faithfulness",
            "norm-multiplicativity",
            "conjugation-anti-homomorphism",
            "conjugate-product-norm",
            "pure-product-identity",
            "special-case-reduction",
            "isometry",
            "quasi-orthogonality",
            "oracle-agreement",
            "linearity",
            "homomorphism",
            "polar-round-trip",
            "rodrigues-equivalence",
            "euclidean-reduction",
            "sign-invariance",
        ];
        assert_eq!(names, expected);
        for p in &report.properties {
            assert!(p.signatures > 0, "{} ran on no signature", p.name);
        }
        assert_eq!(report.property("special-case-reduction").unwrap().signatures, 2);
        assert_eq!(report.property("euclidean-reduction").unwrap().signatures, 1);
    }

    #[test]
    fn errata_are_confirmed() {
        let errata = erratum_report();
        let ids: Vec<_> = errata.iter().map(|e| e.id).collect();
        assert_eq!(ids, ["cross-k", "unit-normalization", "rotation-m13-m23", "example-3.4"]);
        for e in &errata {
            assert!(e.confirmed, "{} not confirmed", e.id);
        }
        let cross = &errata[0].evidence;
        assert_eq!(cross.listed, [0.0, 0.0, 6.0]);
        assert_eq!(cross.oracle, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn default_signatures_cover_families() {
        let sigs = default_signatures(42);
        assert_eq!(sigs.len(), 10);
        assert_eq!(sigs[..2], [Signature::EUCLIDEAN, Signature::SPLIT]);
        assert!(sigs[2..5].iter().all(|s| s.alpha() > 0.0 && s.beta() > 0.0));
        assert!(sigs[5..8].iter().all(|s| s.alpha() > 0.0 && s.beta() < 0.0));
        assert_eq!(sigs, default_signatures(42));
    }
}
