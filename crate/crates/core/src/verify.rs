//! The invariant suite behind the `verify` command.
//!
//! Gated checks decide the outcome. Diagnostics compare against contested
//! constants from the literature and never fail a run.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::bch;
use crate::exec::Exec;
use crate::harmonics::{self, ActionConvention, EigenspaceAction};
use crate::linop::{self, LinOp, Vector};
use crate::moufang::{self, Convention};
use crate::octonion::Octonion;
use crate::sampling;
use crate::spectral;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub gated: bool,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed: Option<f64>,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisSpectrum {
    pub index: usize,
    pub purely_imaginary: bool,
    pub max_abs_real: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub algebra: String,
    pub dim: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub basis_spectra: Vec<BasisSpectrum>,
    pub classification: spectral::ApClassification,
    pub diagnostics: Vec<Diagnostic>,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Tolerance for algebraic identities on exact inputs.
    pub tol: f64,
    pub samples: usize,
    pub exec: Exec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: sampling::DEFAULT_SEED, tol: 1e-12, samples: 100, exec: Exec::Parallel }
    }
}

/// Transcendental-function tolerance.
const TRANSCENDENTAL_TOL: f64 = 1e-9;

fn gated(name: &str, value: f64, threshold: f64) -> Check {
    Check { name: name.into(), gated: true, passed: value <= threshold, value, threshold }
}

fn at_least(name: &str, value: f64, threshold: f64) -> Check {
    Check { name: name.into(), gated: true, passed: value >= threshold, value, threshold }
}

fn unit_pair(seed: u64, i: usize, dim: usize) -> (Vector, Vector) {
    let mut rng = sampling::stream(seed, i as u64);
    (sampling::unit_vector(&mut rng, dim), sampling::unit_vector(&mut rng, dim))
}

fn imag(v: &Vector) -> Octonion {
    moufang::imaginary_from_vector(v).expect("7-vector")
}

pub fn run(alg: &AlgebraSpec, opts: &VerifyOptions) -> VerifyReport {
    let d = alg.dim();
    let ex = opts.exec;
    let mut checks = Vec::new();
    let mut diagnostics = Vec::new();

    checks.push(gated("malcev_residual_basis_max", alg.max_basis_malcev_residual(ex), opts.tol));

    let defect_identity = ex.max_f64(opts.samples, |i| {
        let (x, y) = unit_pair(opts.seed, i, d);
        let s = alg.defect_s(&x, &y).expect("dims");
        let c = alg.ad_commutator_defect(&x, &y).expect("dims");
        (s - c).norm()
    });
    checks.push(gated("commutator_defect_identity_max_frobenius", defect_identity, opts.tol));

    let antisym = ex.max_f64(opts.samples, |i| {
        let (x, y) = unit_pair(opts.seed ^ 1, i, d);
        (alg.defect_s(&x, &y).expect("dims") + alg.defect_s(&y, &x).expect("dims")).norm()
    });
    checks.push(gated("defect_antisymmetry_max_frobenius", antisym, opts.tol));

    if let Ok(dn) = alg.defect_norm(opts.samples.max(1) * 10, opts.seed, ex) {
        diagnostics.push(Diagnostic {
            name: "defect_norm_basis_sup".into(),
            value: dn.basis_sup,
            claimed: alg.is_octonion().then_some(2.0),
            note: "exact max over basis pairs of ||S(e_i,e_j)||_op".into(),
        });
        diagnostics.push(Diagnostic {
            name: "defect_norm_sampled_sup".into(),
            value: dn.sampled_sup,
            claimed: None,
            note: "Monte-Carlo lower bound over random unit triples".into(),
        });
    }
    diagnostics.push(Diagnostic {
        name: "bracket_bound_basis".into(),
        value: alg.bracket_bound_basis(),
        claimed: None,
        note: "max ||[e_i,e_j]||, lower bound for the continuity constant".into(),
    });

    let basis_spectra = ex.map(d, |i| {
        let rep = spectral::spectrum_ad(alg, &alg.basis(i), None).expect("dims");
        BasisSpectrum { index: i, purely_imaginary: rep.purely_imaginary, max_abs_real: rep.max_abs_real() }
    });
    let classification = spectral::classify_almost_periodic(alg, opts.samples, opts.seed, ex);

    if alg.is_octonion() {
        octonion_checks(alg, opts, &mut checks, &mut diagnostics);
    }

    let passed = checks.iter().filter(|c| c.gated).all(|c| c.passed);
    VerifyReport {
        algebra: alg.name().to_string(),
        dim: d,
        seed: opts.seed,
        checks,
        basis_spectra,
        classification,
        diagnostics,
        passed,
    }
}

fn octonion_checks(alg: &AlgebraSpec, opts: &VerifyOptions, checks: &mut Vec<Check>, diags: &mut Vec<Diagnostic>) {
    let ex = opts.exec;
    let n = opts.samples;

    let spectrum_err = ex.max_f64(n, |i| {
        let mut rng = sampling::stream(opts.seed ^ 2, i as u64);
        let x = sampling::gaussian_vector(&mut rng, 7);
        let norm = x.norm();
        let rep = spectral::spectrum_ad(alg, &x, None).expect("dims");
        let expected = [(Complex64::new(0.0, -norm), 3), (Complex64::new(0.0, 0.0), 1), (Complex64::new(0.0, norm), 3)];
        if rep.eigenvalues.len() != 3 {
            return f64::INFINITY;
        }
        rep.eigenvalues
            .iter()
            .zip(expected)
            .map(|(e, (z, m))| if e.mult == m { (e.value() - z).norm() } else { f64::INFINITY })
            .fold(0.0, f64::max)
    });
    checks.push(gated("adjoint_spectrum_pattern_max_error", spectrum_err, 1e-10));

    let minpoly = ex.max_f64(n, |i| {
        let x = sampling::unit_vector(&mut sampling::stream(opts.seed ^ 3, i as u64), 7);
        spectral::minpoly_residual(alg, &x).expect("octonion")
    });
    checks.push(gated("minpoly_residual_max", minpoly, 1e-10));

    let period = ex.max_f64(n, |i| {
        let mut rng = sampling::stream(opts.seed ^ 4, i as u64);
        let x = sampling::unit_vector(&mut rng, 7) * (0.5 + 1.5 * (i as f64 / n as f64));
        let t = 2.0 * PI / x.norm();
        let e = spectral::exp_ad(alg, &x, t).expect("dims");
        let p = spectral::minimal_period(alg, &x, None).expect("nonzero").unwrap_or(f64::INFINITY);
        (e - LinOp::identity(7, 7)).norm().max((p * x.norm() - 2.0 * PI).abs())
    });
    checks.push(gated("adjoint_group_periodicity_max", period, TRANSCENDENTAL_TOL));

    let flow_period = ex.max_f64(n, |i| {
        let mut rng = sampling::stream(opts.seed ^ 5, i as u64);
        let x = imag(&(sampling::unit_vector(&mut rng, 7) * (0.5 + 1.5 * (i as f64 / n as f64))));
        let pv = sampling::unit_vector(&mut rng, 8);
        let p0 = Octonion::new(std::array::from_fn(|k| pv[k]));
        let t = 2.0 * PI / x.norm();
        (moufang::flow_point(&x, &p0, t, Convention::Left).expect("unit") - p0).norm()
    });
    checks.push(gated("flow_periodicity_max", flow_period, TRANSCENDENTAL_TOL));

    let times: Vec<f64> = (0..=256).map(|k| 2.0 * PI * k as f64 / 256.0).collect();
    let traj = moufang::flow_trajectory(&Octonion::basis(1), &Octonion::ONE, &times, Convention::Left, ex)
        .expect("valid flow");
    let closure = moufang::orbit_closure_dim(&traj, 1e-6).map(|d| d as f64).unwrap_or(f64::NAN);
    checks.push(Check {
        name: "orbit_closure_dim".into(),
        gated: true,
        passed: closure == 1.0,
        value: closure,
        threshold: 1.0,
    });

    let conj = ex.max_f64(n * 2, |i| {
        let mut rng = sampling::stream(opts.seed ^ 6, i as u64);
        let x = sampling::unit_vector(&mut rng, 7) * 2.0 * ((i % 7) as f64 + 1.0) / 7.0;
        let y = sampling::gaussian_vector(&mut rng, 7);
        let t = 20.0 * (i as f64 / (2 * n) as f64) - 10.0;
        let a = spectral::exp_ad(alg, &x, t).expect("dims") * &y;
        let b = moufang::conj_orbit(&imag(&x), &imag(&y), t).expect("imaginary");
        (a - moufang::imaginary_to_vector(&b)).norm()
    });
    checks.push(gated("conjugation_identity_max", conj, TRANSCENDENTAL_TOL));

    let octo = EigenspaceAction::octonion(ActionConvention::StandardRight);
    let quat = EigenspaceAction::quaternion(ActionConvention::StandardRight);
    let cas = |a: &EigenspaceAction, want: i64| match harmonics::casimir_scalar(a) {
        Some(c) if c == want => 0.0,
        _ => (harmonics::casimir(a) - LinOp::identity(a.dim(), a.dim()) * want as f64).norm().max(1.0),
    };
    checks.push(gated("casimir_octonion_residual", cas(&octo, 7), 0.0));
    checks.push(gated("casimir_quaternion_residual", cas(&quat, 3), 0.0));

    let cob = ex.max_f64(n.min(50), |i| {
        let mut rng = sampling::stream(opts.seed ^ 7, i as u64);
        let (x, y, z) = (
            sampling::unit_vector(&mut rng, 7),
            sampling::unit_vector(&mut rng, 7),
            sampling::unit_vector(&mut rng, 7),
        );
        (octo.delta_t(&x, &y, &z).expect("dims") - octo.pi_of_jacobian(&x, &y, &z).expect("dims")).norm()
    });
    checks.push(gated("coboundary_identity_max", cob, 1e-10));

    let calib = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| quat.defect_t(&quat.base().basis(i), &quat.base().basis(j)).expect("dims").norm())
        .fold(0.0, f64::max);
    checks.push(gated("defect_t_associative_calibration", calib, opts.tol));
    let t12 = linop::op_norm(&octo.defect_t(&alg.basis(0), &alg.basis(1)).expect("dims"));
    checks.push(at_least("defect_t_nontrivial", t12, 0.5));

    let bch_err = ex.max_f64(n, |i| {
        let (x, y) = unit_pair(opts.seed ^ 8, i, 7);
        let budget = 0.12 * (i as f64 + 1.0) / n as f64;
        let split = 0.25 + 0.5 * (i % 5) as f64 / 4.0;
        bch::bch_error(&(x * budget * split), &(y * budget * (1.0 - split)), 6).unwrap_or(f64::INFINITY)
    });
    checks.push(gated("bch_order6_inside_radius_max", bch_err, 1e-8));

    for conv in [ActionConvention::HalfLeft, ActionConvention::StandardRight] {
        if let Ok(cmp) = harmonics::compare_claims(&EigenspaceAction::octonion(conv)) {
            for c in cmp {
                diags.push(Diagnostic {
                    name: format!("{} [{}]", c.quantity, c.convention),
                    value: c.measured,
                    claimed: Some(c.claimed),
                    note: c.note,
                });
            }
        }
    }
    if let Ok(r) = moufang::flow_conjugacy_residual(&Octonion::basis(1), &Octonion::basis(2).scale(0.3), 1.0) {
        diags.push(Diagnostic {
            name: "flow_conjugacy_residual(e1, 0.3 e2, t=1)".into(),
            value: r,
            claimed: Some(0.0),
            note: "Phi_t(exp y) vs exp(e^{t ad x} y); reported only".into(),
        });
    }
    let lit = alg.defect_s_literal(&alg.basis(0), &alg.basis(1)).expect("dims");
    let s = alg.defect_s(&alg.basis(0), &alg.basis(1)).expect("dims");
    diags.push(Diagnostic {
        name: "literal_defect_formula_discrepancy(e1,e2)".into(),
        value: (lit - s).norm(),
        claimed: Some(0.0),
        note: "J([x,y],z,x) - J(x,y,[z,x]) vs the commutator defect".into(),
    });
}
