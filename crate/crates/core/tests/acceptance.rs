//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::Instant;

use malcev_core::bch;
use malcev_core::harmonics::{self, ActionConvention, EigenspaceAction};
use malcev_core::linop::{self, CMatrix};
use malcev_core::moufang::{self, Convention};
use malcev_core::sampling::{self, DEFAULT_SEED};
use malcev_core::spectral::{self, ExpMethod, SkewPropagator};
use malcev_core::{builtin, AlgebraSpec, Exec, LinOp, Octonion, Vector};
use num_complex::Complex64;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

fn octonion() -> AlgebraSpec {
    builtin("octonion").unwrap()
}

fn unit(seed: u64, i: usize, dim: usize) -> Vector {
    sampling::unit_vector(&mut sampling::stream(seed, i as u64), dim)
}

fn imag(v: &Vector) -> Octonion {
    moufang::imaginary_from_vector(v).unwrap()
}

fn unit_octonion(seed: u64, i: usize) -> Octonion {
    let v = unit(seed, i, 8);
    Octonion::new(std::array::from_fn(|k| v[k]))
}

fn c1_malcev_identity() -> Verdict {
    let alg = octonion();
    let start = Instant::now();
    let r = alg.max_basis_malcev_residual(Exec::Sequential);
    let secs = start.elapsed().as_secs_f64();
    verdict(r <= 1e-12 && secs < 1.0, format!("max residual {r:.3e} over 343 triples (tol 1e-12) in {secs:.3}s (< 1s)"))
}

fn c2_commutator_defect() -> Verdict {
    let alg = octonion();
    let worst = (0..100)
        .map(|i| {
            let mut rng = sampling::stream(DEFAULT_SEED, i);
            let x = sampling::gaussian_vector(&mut rng, 7);
            let y = sampling::gaussian_vector(&mut rng, 7);
            let adx = alg.ad_matrix(&x).unwrap();
            let ady = alg.ad_matrix(&y).unwrap();
            let lhs = linop::commutator(&adx, &ady) - alg.ad_matrix(&alg.bracket(&x, &y).unwrap()).unwrap();
            (lhs - alg.defect_s(&x, &y).unwrap()).norm()
        })
        .fold(0.0, f64::max);
    verdict(worst <= 1e-12, format!("max Frobenius residual {worst:.3e} on 100 pairs (tol 1e-12)"))
}

fn c3_defect_norms() -> Verdict {
    let alg = octonion();
    let mut pair_norms = Vec::new();
    for i in 0..7 {
        for j in i + 1..7 {
            pair_norms.push(linop::op_norm(&alg.defect_s(&alg.basis(i), &alg.basis(j)).unwrap()));
        }
    }
    let pair_err = pair_norms.iter().map(|n| (n - 2.0).abs()).fold(0.0, f64::max);
    let lo = pair_norms.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = pair_norms.iter().copied().fold(0.0, f64::max);
    let sup = alg.defect_norm(1000, DEFAULT_SEED, Exec::Parallel).unwrap();
    let lie_sup = ["su2", "im_quaternion", "m3", "sl2"]
        .iter()
        .map(|n| builtin(n).unwrap().defect_norm(200, DEFAULT_SEED, Exec::Parallel).unwrap().basis_sup)
        .fold(0.0, f64::max);
    let ok = pair_err <= 1e-10 && (sup.basis_sup - 2.0).abs() <= 1e-10 && lie_sup <= 1e-14;
    verdict(
        ok,
        format!(
            "||S(e_i,e_j)||_op in [{lo:.12}, {hi:.12}] over 21 pairs (expected 2 within 1e-10); \
             basis_sup {:.12} (expected 2); sampled_sup {:.6}; Lie builtins basis_sup {lie_sup:.1e}",
            sup.basis_sup, sup.sampled_sup
        ),
    )
}

fn c4_adjoint_spectrum() -> Verdict {
    let alg = octonion();
    let mut worst_eig: f64 = 0.0;
    let mut worst_min: f64 = 0.0;
    let mut pattern_ok = true;
    for i in 0..100 {
        let mut rng = sampling::stream(DEFAULT_SEED ^ 0x44, i);
        let x = sampling::gaussian_vector(&mut rng, 7) * (0.1 + 3.0 * i as f64 / 100.0);
        let n = x.norm();
        let rep = spectral::spectrum_ad(&alg, &x, None).unwrap();
        for (z, m) in [(Complex64::new(0.0, 0.0), 1), (Complex64::new(0.0, n), 3), (Complex64::new(0.0, -n), 3)] {
            pattern_ok &= rep.multiplicity_near(z, 1e-10) == m;
        }
        let ev = spectral::eigenvalues(&alg.ad_matrix(&x).unwrap());
        for e in ev {
            let d = [0.0, n, -n].iter().map(|t| (e - Complex64::new(0.0, *t)).norm()).fold(f64::INFINITY, f64::min);
            worst_eig = worst_eig.max(d);
        }
        let ad = alg.ad_matrix(&x).unwrap();
        worst_min = worst_min.max((&ad * &ad * &ad + &ad * (n * n)).norm());
    }
    verdict(
        pattern_ok && worst_eig <= 1e-10 && worst_min <= 1e-10,
        format!("multiplicities (1,3,3): {pattern_ok}; max eigenvalue error {worst_eig:.3e}; max minpoly residual {worst_min:.3e} (tol 1e-10)"),
    )
}

fn c5_almost_periodicity() -> Verdict {
    let oct = spectral::classify_almost_periodic(&octonion(), 100, DEFAULT_SEED, Exec::Parallel);
    let sl2 = builtin("sl2").unwrap();
    let cls = spectral::classify_almost_periodic(&sl2, 100, DEFAULT_SEED, Exec::Parallel);
    let h = sl2.basis(0);
    let re = spectral::spectrum_ad(&sl2, &h, None).unwrap().max_abs_real();
    let y = sl2.basis(1) + sl2.basis(2);
    let stats = spectral::orbit_stats(&sl2, &h, &y, 20.0, 2001, 1e-6, Exec::Parallel).unwrap();
    verdict(
        oct.almost_periodic && !cls.almost_periodic && re > 1e-6 && stats.sup_norm > 100.0,
        format!(
            "octonion almost periodic: {}; sl2 almost periodic: {}; ad(h) max |Re| {re:.3}; orbit sup norm by t=20 {:.3e}",
            oct.almost_periodic, cls.almost_periodic, stats.sup_norm
        ),
    )
}

fn c6_periodicity() -> Verdict {
    let alg = octonion();
    let (mut group, mut flow, mut oracle, mut witness) = (0.0f64, 0.0f64, 0.0f64, f64::INFINITY);
    for i in 0..50 {
        let xv = unit(DEFAULT_SEED ^ 0x66, i, 7) * (0.3 + 2.0 * i as f64 / 50.0);
        let x = imag(&xv);
        let p = unit_octonion(DEFAULT_SEED ^ 0x67, i);
        let period = TAU / xv.norm();
        group = group.max((spectral::exp_ad(&alg, &xv, period).unwrap() - LinOp::identity(7, 7)).norm());
        flow = flow.max((moufang::flow_point(&x, &p, period, Convention::Left).unwrap() - p).norm());
        let mut best: f64 = 0.0;
        for k in 0..=80 {
            let t = period * (0.1 + 0.8 * k as f64 / 80.0);
            let q = moufang::flow_point(&x, &p, t, Convention::Left).unwrap();
            best = best.max((q - p).norm());
            if k % 20 == 0 {
                let lm = x.left_mul_matrix();
                let l = LinOp::from_fn(8, 8, |r, c| lm[r][c]);
                let pv = Vector::from_column_slice(&p.0);
                let direct = spectral::matrix_exp(&l, t, ExpMethod::Pade).unwrap() * pv;
                oracle = oracle.max((direct - Vector::from_column_slice(&q.0)).norm());
            }
        }
        witness = witness.min(best);
    }
    let times: Vec<f64> = (0..=400).map(|k| TAU * k as f64 / 400.0).collect();
    let traj = moufang::flow_trajectory(&Octonion::basis(1), &Octonion::ONE, &times, Convention::Left, Exec::Parallel)
        .unwrap();
    let closure = moufang::orbit_closure_dim(&traj, 1e-6).ok();
    verdict(
        group <= 1e-9 && flow <= 1e-9 && oracle <= 1e-9 && witness >= 0.05 && closure == Some(1),
        format!(
            "max ||e^(T ad x) - I|| {group:.3e}; max ||Phi_T(p) - p|| {flow:.3e} (tol 1e-9); \
             flow vs Pade expm {oracle:.3e}; minimality witness {witness:.3} (>= 0.05); closure dim {closure:?}"
        ),
    )
}

fn c7_conjugation() -> Verdict {
    let alg = octonion();
    let worst = (0..200)
        .map(|i| {
            let mut rng = sampling::stream(DEFAULT_SEED ^ 0x77, i);
            let x = sampling::gaussian_vector(&mut rng, 7);
            let y = sampling::gaussian_vector(&mut rng, 7);
            let t = -5.0 + 10.0 * i as f64 / 200.0;
            let lhs = spectral::exp_ad(&alg, &x, t).unwrap() * &y;
            let q = moufang::oct_exp(&imag(&(&x * (t / 2.0)))).unwrap();
            let rhs = q * imag(&y) * q.inverse().unwrap();
            (lhs - moufang::imaginary_to_vector(&rhs)).norm()
        })
        .fold(0.0, f64::max);
    verdict(worst <= 1e-9, format!("max residual {worst:.3e} on 200 triples (tol 1e-9)"))
}

fn exact_scalar(m: &LinOp, c: f64) -> bool {
    m.iter().enumerate().all(|(idx, v)| {
        let (r, col) = (idx % m.nrows(), idx / m.nrows());
        *v == if r == col { c } else { 0.0 }
    })
}

fn c8_casimir() -> Verdict {
    let oct = harmonics::casimir(&EigenspaceAction::octonion(ActionConvention::default()));
    let quat = harmonics::casimir(&EigenspaceAction::quaternion(ActionConvention::default()));
    let (a, b) = (exact_scalar(&oct, 7.0), exact_scalar(&quat, 3.0));
    verdict(a && b, format!("octonion Casimir == 7 I exactly: {a}; quaternion Casimir == 3 I exactly: {b}"))
}

fn c9_coboundary() -> Verdict {
    let action = EigenspaceAction::octonion(ActionConvention::default());
    let worst = (0..50)
        .map(|i| {
            let mut rng = sampling::stream(DEFAULT_SEED ^ 0x99, i);
            let (x, y, z) = (
                sampling::gaussian_vector(&mut rng, 7),
                sampling::gaussian_vector(&mut rng, 7),
                sampling::gaussian_vector(&mut rng, 7),
            );
            (action.delta_t(&x, &y, &z).unwrap() - action.pi_of_jacobian(&x, &y, &z).unwrap()).norm()
        })
        .fold(0.0, f64::max);
    let b = action.base();
    let assoc = action.delta_t(&b.basis(0), &b.basis(1), &b.basis(3)).unwrap().norm();
    verdict(
        worst <= 1e-10 && assoc <= 1e-12,
        format!("max ||dT - pi(J)||_F {worst:.3e} on 50 triples (tol 1e-10); ||dT(e1,e2,e4)|| {assoc:.3e} (tol 1e-12)"),
    )
}

fn c10_bch() -> Verdict {
    let cfg = bch::BchConfig::new(6, 2.0, 1.0).unwrap();
    let mut worst: f64 = 0.0;
    let mut all_inside = true;
    for i in 0..100 {
        let mut rng = sampling::stream(DEFAULT_SEED ^ 0x10, i);
        let x = sampling::unit_vector(&mut rng, 7);
        let y = sampling::unit_vector(&mut rng, 7);
        let total = 0.12 * (i as f64 + 1.0) / 100.0;
        let split = (i % 9) as f64 / 8.0;
        let (x, y) = (x * total * split, y * total * (1.0 - split));
        all_inside &= bch::bch_radius_ok(&cfg, &x, &y);
        worst = worst.max(bch::bch_error(&x, &y, 6).unwrap());
    }
    let (e1, e2) = (octonion().basis(0), octonion().basis(1));
    let mut slopes = Vec::new();
    for order in 2..=4 {
        let err = |s: f64| bch::bch_error(&(&e1 * s), &(&e2 * s), order).unwrap();
        slopes.push((order, (err(0.1) / err(0.05)).log2()));
    }
    let slopes_ok = slopes.iter().all(|(o, s)| *s >= *o as f64 + 0.8);
    let shown: Vec<String> = slopes.iter().map(|(o, s)| format!("{o}:{s:.3}")).collect();
    verdict(
        worst <= 1e-8 && all_inside && slopes_ok,
        format!("order-6 max error {worst:.3e} on 100 pairs inside radius {all_inside} (tol 1e-8); slopes {} (>= order+0.8)", shown.join(" ")),
    )
}

fn c11_laplacian() -> Verdict {
    let table = harmonics::laplacian_table(6, Exec::Parallel).unwrap();
    let lambdas_ok = table.rows.iter().all(|r| r.lambda == (r.k * (r.k + 6)) as f64);
    let r = &table.rows;
    let ok = lambdas_ok && r[0].mult_oracle == 1 && r[1].mult_oracle == 8 && r[1].mismatch;
    verdict(
        ok,
        format!(
            "lambda_k = k(k+6) for k <= 6: {lambdas_ok}; oracle multiplicities {:?}; k=1 formula {} flagged {}",
            r.iter().map(|r| r.mult_oracle).collect::<Vec<_>>(),
            r[1].mult_paper,
            r[1].mismatch
        ),
    )
}

fn c12_structural_defect() -> Verdict {
    let quat = EigenspaceAction::quaternion(ActionConvention::default());
    let qb = quat.base();
    let mut calib: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            calib = calib.max(quat.defect_t(&qb.basis(i), &qb.basis(j)).unwrap().norm());
        }
    }
    let oct = EigenspaceAction::octonion(ActionConvention::default());
    let t12 = linop::op_norm(&oct.defect_t(&oct.base().basis(0), &oct.base().basis(1)).unwrap());
    let mut report = Vec::new();
    for conv in [ActionConvention::StandardRight, ActionConvention::HalfLeft] {
        for c in harmonics::compare_claims(&EigenspaceAction::octonion(conv)).unwrap() {
            report.push(format!(
                "{} [{}] {:.6} vs claimed {} ({})",
                c.quantity, c.convention, c.measured, c.claimed, c.note
            ));
        }
    }
    verdict(
        calib <= 1e-12 && t12 >= 0.5,
        format!(
            "calibration max ||T|| {calib:.3e} (tol 1e-12); ||T(e1,e2)|| {t12:.6} (>= 0.5); reported: {}",
            report.join("; ")
        ),
    )
}

fn c13_resolvent() -> Verdict {
    let alg = octonion();
    let (t_end, n) = (40.0, 8000usize);
    let h = t_end / n as f64;
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let x = unit(DEFAULT_SEED ^ 0x13, i, 7);
        let prop = SkewPropagator::new(&alg.ad_matrix(&x).unwrap()).unwrap();
        let mut acc = LinOp::zeros(7, 7);
        for k in 0..=n {
            let t = k as f64 * h;
            let w = if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += prop.at(t) * (w * (-2.0 * t).exp());
        }
        let quad = acc * (h / 3.0);
        let res: CMatrix = spectral::resolvent(&alg, &x, Complex64::new(2.0, 0.0), None).unwrap();
        worst = worst.max((linop::to_complex(&quad) - res).norm());
    }
    verdict(worst <= 1e-6, format!("max ||Simpson - (2 - ad x)^-1|| {worst:.3e} on 10 unit x (tol 1e-6)"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("C1 Malcev identity", c1_malcev_identity),
        ("C2 commutator-defect identity", c2_commutator_defect),
        ("C3 defect norms", c3_defect_norms),
        ("C4 adjoint spectrum", c4_adjoint_spectrum),
        ("C5 almost-periodicity classification", c5_almost_periodicity),
        ("C6 strict periodicity", c6_periodicity),
        ("C7 conjugation identity", c7_conjugation),
        ("C8 Casimir", c8_casimir),
        ("C9 coboundary", c9_coboundary),
        ("C10 BCH", c10_bch),
        ("C11 Laplacian table", c11_laplacian),
        ("C12 structural defect", c12_structural_defect),
        ("C13 resolvent Laplace transform", c13_resolvent),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (name, f) in criteria {
        let v = f();
        if !v.passed {
            failures += 1;
        }
        println!("[{}] {name}: {}", if v.passed { "PASS" } else { "FAIL" }, v.detail);
    }
    println!(
        "acceptance: {} passed, {failures} failed in {:.2}s",
        criteria.len() - failures,
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
