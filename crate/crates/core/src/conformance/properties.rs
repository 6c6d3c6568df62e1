//! The invariant catalogue evaluated by the suite.

use super::reference::wittenburg_matrix;
use super::sampling::absolute_norm;
use super::{CaseInput, CaseRng, Subject, ToleranceProfile};
use crate::error::Error;
use crate::gquat::GQuat;
use crate::metric::{scaled_max_diff, Mat3, Signature, Vec3};
use crate::rotation::PolarForm;

pub(super) struct CaseResult {
    pub input: CaseInput,
    pub residuals: Vec<f64>,
}

impl CaseResult {
    fn new(quaternions: Vec<GQuat>, vectors: Vec<Vec3>, residuals: Vec<f64>) -> Self {
        CaseResult {
            input: CaseInput { quaternions, vectors, ..CaseInput::default() },
            residuals,
        }
    }

    fn with_scalars(mut self, scalars: Vec<f64>) -> Self {
        self.input.scalars = scalars;
        self
    }
}

type Eval = fn(&mut CaseRng, &Signature, &Subject) -> CaseResult;

pub(super) struct Property {
    pub name: &'static str,
    pub module: &'static str,
    pub checks: Vec<(&'static str, f64)>,
    pub applies: fn(&Signature) -> bool,
    /// Evaluated once per signature without sampling.
    pub deterministic: bool,
    pub eval: Eval,
}

fn any(_: &Signature) -> bool {
    true
}

fn nondegenerate(sig: &Signature) -> bool {
    !sig.is_degenerate()
}

fn rodrigues_branch(sig: &Signature) -> bool {
    sig.alpha() > 0.0 && sig.beta() != 0.0
}

fn special_case(sig: &Signature) -> bool {
    *sig == Signature::EUCLIDEAN || *sig == Signature::SPLIT
}

fn euclidean(sig: &Signature) -> bool {
    *sig == Signature::EUCLIDEAN
}

pub(super) fn all(tol: &ToleranceProfile) -> Vec<Property> {
    let p = |name, module, checks, applies, eval| Property {
        name,
        module,
        checks,
        applies,
        deterministic: false,
        eval,
    };
    vec![
        // metric
        p(
            "inner-symmetry",
            "metric",
            vec![("symmetry", tol.machine), ("epsilon-form", tol.machine)],
            any,
            inner_symmetry,
        ),
        p("cross-orthogonality", "metric", vec![("relative", tol.cross_orthogonality)], any, cross_orthogonality),
        p("cross-antisymmetry", "metric", vec![("exact", 0.0)], any, cross_antisymmetry),
        Property {
            deterministic: true,
            ..p("cross-basis-identities", "metric", vec![("exact", 0.0)], any, cross_basis_identities)
        },
        p(
            "quasi-orthogonal-closure",
            "metric",
            vec![("orthogonality", tol.closure), ("determinant", tol.closure)],
            nondegenerate,
            quasi_orthogonal_closure,
        ),
        // gquat
        p("associativity", "gquat", vec![("relative", tol.associativity)], any, associativity),
        p("left-matrix-faithfulness", "gquat", vec![("exact", 0.0)], any, left_matrix_faithfulness),
        p(
            "norm-multiplicativity",
            "gquat",
            vec![("relative", tol.norm_multiplicativity)],
            any,
            norm_multiplicativity,
        ),
        p(
            "conjugation-anti-homomorphism",
            "gquat",
            vec![("relative", tol.conjugation)],
            any,
            conjugation_anti_homomorphism,
        ),
        p(
            "conjugate-product-norm",
            "gquat",
            vec![("vector-part", tol.conjugation), ("scalar-part", tol.conjugation)],
            any,
            conjugate_product_norm,
        ),
        p("pure-product-identity", "gquat", vec![("relative", tol.pure_product)], any, pure_product_identity),
        Property {
            deterministic: true,
            ..p("special-case-reduction", "gquat", vec![("exact", 0.0)], special_case, special_case_reduction)
        },
        // rotation
        p("isometry", "rotation", vec![("relative", tol.isometry)], any, isometry),
        p(
            "quasi-orthogonality",
            "rotation",
            vec![("orthogonality", tol.quasi_orthogonality), ("determinant", tol.determinant)],
            nondegenerate,
            quasi_orthogonality,
        ),
        p("oracle-agreement", "rotation", vec![("relative", tol.oracle_agreement)], any, oracle_agreement),
        p("linearity", "rotation", vec![("relative", tol.linearity)], any, linearity),
        p("homomorphism", "rotation", vec![("relative", tol.homomorphism)], any, homomorphism),
        p("polar-round-trip", "rotation", vec![("relative", tol.polar_round_trip)], any, polar_round_trip),
        p(
            "rodrigues-equivalence",
            "rotation",
            vec![("relative", tol.rodrigues)],
            rodrigues_branch,
            rodrigues_equivalence,
        ),
        p(
            "euclidean-reduction",
            "rotation",
            vec![("relative", tol.euclidean_reduction)],
            euclidean,
            euclidean_reduction,
        ),
        p("sign-invariance", "rotation", vec![("exact", 0.0)], any, sign_invariance),
    ]
}

fn qdiff(a: &GQuat, b: &GQuat) -> f64 {
    scaled_max_diff(&a.to_array(), &b.to_array())
}

fn vdiff(a: &Vec3, b: &Vec3) -> f64 {
    scaled_max_diff(&a.0, &b.0)
}

fn mdiff(a: &Mat3, b: &Mat3) -> f64 {
    scaled_max_diff(&a.to_row_major(), &b.to_row_major())
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc: f64, (x, y)| acc.max((x - y).abs()))
}

/// Sum of the absolute values of the three terms of `⟨u, v⟩`.
fn abs_inner(sig: &Signature, u: &Vec3, v: &Vec3) -> f64 {
    (sig.alpha() * u[0] * v[0]).abs()
        + (sig.beta() * u[1] * v[1]).abs()
        + (sig.alpha_beta() * u[2] * v[2]).abs()
}

fn basis_images(sig: &Signature, q: &GQuat) -> Result<Mat3, Error> {
    let cols: Result<Vec<Vec3>, Error> =
        (0..3).map(|j| sig.conjugation_map(q, &Vec3::basis(j))).collect();
    let cols = cols?;
    Ok(Mat3::from_columns(cols[0], cols[1], cols[2]))
}

fn inner_symmetry(rng: &mut CaseRng, sig: &Signature, _: &Subject) -> CaseResult {
    let (u, v) = (rng.vec3(), rng.vec3());
    let scale = abs_inner(sig, &u, &v).max(1.0);
    let uv = sig.inner(&u, &v);
    let matrix_form: f64 = u.0.iter().zip(sig.epsilon_matrix().mul_vec(&v).0).map(|(a, b)| a * b).sum();
    CaseResult::new(
        vec![],
        vec![u, v],
        vec![(uv - sig.inner(&v, &u)).abs() / scale, (uv - matrix_form).abs() / scale],
    )
}

fn cross_orthogonality(rng: &mut CaseRng, sig: &Signature, subject: &Subject) -> CaseResult {
    let (u, v) = (rng.vec3(), rng.vec3());
    let c = (subject.cross)(sig, &u, &v);
    let r = [u, v]
        .iter()
        .map(|w| sig.inner(&c, w).abs() / abs_inner(sig, &c, w).max(1.0))
        .fold(0.0, f64::max);
    CaseResult::new(vec![], vec![u, v], vec![r])
}

fn cross_antisymmetry(rng: &mut CaseRng, sig: &Signature, subject: &Subject) -> CaseResult {
    let (u, v) = (rng.vec3(), rng.vec3());
    let a = (subject.cross)(sig, &u, &v);
    let b = -(subject.cross)(sig, &v, &u);
    CaseResult::new(vec![], vec![u, v], vec![max_abs_diff(&a.0, &b.0)])
}

fn cross_basis_identities(_: &mut CaseRng, sig: &Signature, subject: &Subject) -> CaseResult {
    let [i, j, k] = [0, 1, 2].map(Vec3::basis);
    let cross = |u: &Vec3, v: &Vec3| (subject.cross)(sig, u, v);
    let r = [
        max_abs_diff(&cross(&i, &j).0, &k.0),
        max_abs_diff(&cross(&j, &k).0, &[sig.beta(), 0.0, 0.0]),
        max_abs_diff(&cross(&k, &i).0, &[0.0, sig.alpha(), 0.0]),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    CaseResult::new(vec![], vec![], vec![r])
}

fn quasi_orthogonal_closure(rng: &mut CaseRng, sig: &Signature, subject: &Subject) -> CaseResult {
    let (q1, q2) = (rng.unit_quat(sig), rng.unit_quat(sig));
    let qs = vec![q1, q2];
    let (a, b) = match ((subject.rotation_matrix)(sig, &q1), (subject.rotation_matrix)(sig, &q2)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return CaseResult::new(qs, vec![], vec![f64::INFINITY; 2]),
    };
    let premise = |m: &Mat3| sig.is_quasi_orthogonal(m, 1e-9).unwrap_or(false);
    if !(premise(&a) && premise(&b)) {
        // Vacuous: the implication only constrains products of passing matrices.
        return CaseResult::new(qs, vec![], vec![0.0, 0.0]);
    }
    let report = sig.quasi_orthogonality(&(a * b), 1e-8).expect("nondegenerate");
    CaseResult::new(qs, vec![], vec![report.residual / report.scale, report.det_residual])
}

fn associativity(rng: &mut CaseRng, sig: &Signature, _: &Subject) -> CaseResult {
    let (q, p, r) = (rng.quat(), rng.quat(), rng.quat());
    let left = sig.multiply(&sig.multiply(&q, &p), &r);
    let right = sig.multiply(&q, &sig.multiply(&p, &r));
    CaseResult::new(vec![q, p, r], vec![], vec![qdiff(&left, &right)])
}

fn left_matrix_faithfulness(rng: &mut CaseRng, sig: &Signature, _: &Subject) -> CaseResult {
    let (q, p) = (rng.quat(), rng.quat());
    let direct = sig.multiply(&q, &p);
    let via_matrix = sig.multiply_via_matrix(&q, &p);
    CaseResult::new(vec![q, p], vec![], vec![max_abs_diff(&direct.to_array(), &via_matrix.to_array())])
}

fn norm_multiplicativity(rng: &mut CaseRng, sig: &Signature, _: &Subject) -> CaseResult {
    let (q, p) = (rng.quat(), rng.quat());
    let qp = sig.multiply(&q, &p);
    let scale = absolute_norm(sig, &qp)
        .max(absolute_norm(sig, &q) * absolute_norm(sig, &p))
        .max(1.0);
    let r = (sig.norm(&qp) - sig.norm(&q) * sig.norm(&p)).abs() / scale;
    CaseResult::new(vec![q, p], vec![], vec![r])
}

fn conjugation_anti_homomorphism(rng: &mut CaseRng, sig: &Signature, _: &Subject) -> CaseResult {
    let (q, p) = (rng.quat(), rng.quat());
    let left = sig.multiply(&q, &p).conjugate();
    let right = sig.multiply(&p.conjugate(), &q.conjugate());
    CaseResult::new(vec![q, p], vec![], vec![qdiff(&left, &right)])
}

fn conjugate_product_norm(rng: &mut CaseRng, sig: &Signature, _: &Subject) -> CaseResult {
    let q = rng.quat();
    let n = sig.multiply(&q, &q.conjugate());
    let scale = absolute_norm(sig, &q).max(1.0);
    CaseResult::new(
        vec![q],
        vec![],
        vec![n.vector_part().max_abs() / scale, (n.w - sig.norm(&q)).abs() / scale],
    )
}

fn pure_product_identity(rng: &mut CaseRng, sig: &Signature, subject: &Subject) -> CaseResult {
    let (u, v) = (rng.vec3(), rng.vec3());
    let product = sig.multiply(&GQuat::pure(u), &GQuat::pure(v));
    let split = GQuat::from_scalar_vector(-sig.inner(&u, &v), (subject.cross)(sig, &u, &v));
    CaseResult::new(vec![], vec![u, v], vec![qdiff(&product, &split)])
}

/// `(sign, basis index)` of each product `eᵣ·e꜀` in the basis `{1, i, j, k}`.
type Table = [[(f64, usize); 4]; 4];

const REAL_QUATERNIONS: Table = [
    [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
    [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
    [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
    [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
];

const SPLIT_QUATERNIONS: Table = [
    [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
    [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
    [(1.0, 2), (-1.0, 3), (1.0, 0), (-1.0, 1)],
    [(1.0, 3), (1.0, 2), (1.0, 1), (1.0, 0)],
];

fn special_case_reduction(_: &mut CaseRng, sig: &Signature, _: &Subject) -> CaseResult {
    let table = if *sig == Signature::EUCLIDEAN { &REAL_QUATERNIONS } else { &SPLIT_QUATERNIONS };
    let mut r: f64 = 0.0;
    for (row, entries) in table.iter().enumerate() {
        for (col, &(sign, idx)) in entries.iter().enumerate() {
            let got = sig.multiply(&GQuat::basis(row), &GQuat::basis(col));
            let expected = GQuat::basis(idx).scale(sign);
            r = r.max(max_abs_diff(&got.to_array(), &expected.to_array()));
        }
    }
    CaseResult::new(vec![], vec![], vec![r])
}

fn isometry(rng: &mut CaseRng, sig: &Signature, _: &Subject) -> CaseResult {
    let q = rng.unit_quat(sig);
    let (u, v) = (rng.vec3(), rng.vec3());
    let r = match (sig.conjugation_map(&q, &u), sig.conjugation_map(&q, &v)) {
        (Ok(fu), Ok(fv)) => {
            let scale = abs_inner(sig, &u, &v).max(abs_inner(sig, &fu, &fv)).max(1.0);
            (sig.inner(&fu, &fv) - sig.inner(&u, &v)).abs() / scale
        }
        _ => f64::INFINITY,
    };
    CaseResult::new(vec![q], vec![u, v], vec![r])
}

fn quasi_orthogonality(rng: &mut CaseRng, sig: &Signature, subject: &Subject) -> CaseResult {
    let q = rng.unit_quat(sig);
    let residuals = match (subject.rotation_matrix)(sig, &q) {
        Ok(m) => {
            let report = sig.quasi_orthogonality(&m, 1e-9).expect("nondegenerate");
            vec![report.residual / report.scale, report.det_residual]
        }
        Err(_) => vec![f64::INFINITY; 2],
    };
    CaseResult::new(vec![q], vec![], residuals)
}

fn oracle_agreement(rng: &mut CaseRng, sig: &Signature, subject: &Subject) -> CaseResult {
    let q = rng.unit_quat(sig);
    let r = match ((subject.rotation_matrix)(sig, &q), basis_images(sig, &q)) {
        (Ok(m), Ok(oracle)) => mdiff(&m, &oracle),
        _ => f64::INFINITY,
    };
    CaseResult::new(vec![q], vec![], vec![r])
}

fn linearity(rng: &mut CaseRng, sig: &Signature, _: &Subject) -> CaseResult {
    let q = rng.unit_quat(sig);
    let (u, v) = (rng.vec3(), rng.vec3());
    let (a, b) = (rng.component(), rng.component());
    let phi = |w: &Vec3| sig.conjugation_map(&q, w);
    let r = match (phi(&(a * u + b * v)), phi(&u), phi(&v)) {
        (Ok(lhs), Ok(fu), Ok(fv)) => vdiff(&lhs, &(a * fu + b * fv)),
        _ => f64::INFINITY,
    };
    CaseResult::new(vec![q], vec![u, v], vec![r]).with_scalars(vec![a, b])
}

fn homomorphism(rng: &mut CaseRng, sig: &Signature, subject: &Subject) -> CaseResult {
    let (q, p) = (rng.unit_quat(sig), rng.unit_quat(sig));
    let m = |x: &GQuat| (subject.rotation_matrix)(sig, x);
    let r = match (m(&sig.multiply(&q, &p)), m(&q), m(&p)) {
        (Ok(mqp), Ok(mq), Ok(mp)) => mdiff(&mqp, &(mq * mp)),
        _ => f64::INFINITY,
    };
    CaseResult::new(vec![q, p], vec![], vec![r])
}

fn polar_round_trip(rng: &mut CaseRng, sig: &Signature, _: &Subject) -> CaseResult {
    let mut q = rng.unit_quat(sig);
    // The cosh/sinh form only covers the a₀ > 0 sheet; −q is the same rotation.
    if let Err(Error::NegativeHyperbolicScalar { .. }) = sig.polar_form(&q) {
        q = -q;
    }
    let (r, angle) = match sig.polar_form(&q).and_then(|pf| Ok((sig.from_axis_angle(&pf)?, pf.angle()))) {
        Ok((back, angle)) => (qdiff(&back, &q), angle),
        Err(_) => (f64::INFINITY, f64::NAN),
    };
    CaseResult::new(vec![q], vec![], vec![r]).with_scalars(vec![angle])
}

fn rodrigues_equivalence(rng: &mut CaseRng, sig: &Signature, subject: &Subject) -> CaseResult {
    let pf = if sig.beta() > 0.0 { rng.elliptic_form(sig) } else { rng.hyperbolic_form(sig) };
    let (angle, axis) = match pf {
        PolarForm::Elliptic { angle, axis } | PolarForm::Hyperbolic { angle, axis } => (angle, axis),
        PolarForm::Identity => unreachable!(),
    };
    let r = match (sig.rodrigues_matrix(&pf), sig.from_axis_angle(&pf)) {
        (Ok(rod), Ok(q)) => match (subject.rotation_matrix)(sig, &q) {
            Ok(m) => mdiff(&rod, &m),
            Err(_) => f64::INFINITY,
        },
        _ => f64::INFINITY,
    };
    CaseResult::new(vec![], vec![axis], vec![r]).with_scalars(vec![angle])
}

fn euclidean_reduction(rng: &mut CaseRng, sig: &Signature, subject: &Subject) -> CaseResult {
    let q = rng.unit_quat(sig);
    let r = match ((subject.rotation_matrix)(sig, &q), wittenburg_matrix(&q)) {
        (Ok(m), Ok(w)) => mdiff(&m, &w),
        _ => f64::INFINITY,
    };
    CaseResult::new(vec![q], vec![], vec![r])
}

fn sign_invariance(rng: &mut CaseRng, sig: &Signature, subject: &Subject) -> CaseResult {
    let q = rng.unit_quat(sig);
    let r = match ((subject.rotation_matrix)(sig, &q), (subject.rotation_matrix)(sig, &-q)) {
        (Ok(a), Ok(b)) => max_abs_diff(&a.to_row_major(), &b.to_row_major()),
        _ => f64::INFINITY,
    };
    CaseResult::new(vec![q], vec![], vec![r])
}
