//! Spectra of adjoint operators and the maps built on them: exponentials,
//! orbit statistics, minimal periods, the projector-sum functional calculus
//! and resolvents.

use std::f64::consts::PI;

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linop::{self, CMatrix, LinOp, Vector};
use crate::sampling;

/// Integer-ratio acceptance for frequency commensurability.
pub const RATIO_TOL: f64 = 1e-8;

/// Entrywise bound on `A + Aᵀ` for the eigendecomposition exponential path.
pub const SKEW_TOL: f64 = 1e-13;

pub fn default_tol(generator_norm: f64) -> f64 {
    1e-9 * (1.0 + generator_norm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
}

impl Eigenvalue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<Eigenvalue>,
    pub purely_imaginary: bool,
    pub generator_norm: f64,
    pub tol_used: f64,
}

impl SpectrumReport {
    pub fn total_multiplicity(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.mult).sum()
    }

    pub fn max_abs_real(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.re.abs()).fold(0.0, f64::max)
    }

    /// Multiplicity of the group containing `z`, or 0.
    pub fn multiplicity_near(&self, z: Complex64, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|e| (e.value() - z).norm() <= tol).map(|e| e.mult).sum()
    }
}

/// Raw (ungrouped) eigenvalues of a real square matrix.
pub fn eigenvalues(m: &LinOp) -> Vec<Complex64> {
    if m.is_empty() {
        return Vec::new();
    }
    m.complex_eigenvalues().iter().copied().collect()
}

/// Clusters eigenvalues lying within `tol` of a cluster's first member and
/// returns cluster means, ordered by imaginary then real part.
pub fn group_eigenvalues(values: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
    let mut groups: Vec<(Complex64, Complex64, usize)> = Vec::new();
    for z in sorted {
        match groups.iter_mut().find(|(anchor, _, _)| (z - *anchor).norm() <= tol) {
            Some((_, sum, n)) => {
                *sum += z;
                *n += 1;
            }
            None => groups.push((z, z, 1)),
        }
    }
    let mut out: Vec<(Complex64, usize)> = groups.into_iter().map(|(_, sum, n)| (sum / n as f64, n)).collect();
    out.sort_by(|a, b| a.0.im.total_cmp(&b.0.im).then(a.0.re.total_cmp(&b.0.re)));
    out
}

pub fn spectrum_of_matrix(m: &LinOp, tol: f64, generator_norm: f64) -> SpectrumReport {
    let groups = group_eigenvalues(&eigenvalues(m), tol);
    let eigenvalues: Vec<Eigenvalue> =
        groups.iter().map(|(z, n)| Eigenvalue { re: z.re, im: z.im, mult: *n }).collect();
    let purely_imaginary = eigenvalues.iter().all(|e| e.re.abs() <= tol);
    SpectrumReport { eigenvalues, purely_imaginary, generator_norm, tol_used: tol }
}

/// Spectrum of `ad(x)`, grouped within `tol` (default `1e-9 (1 + ‖x‖)`).
pub fn spectrum_ad(alg: &AlgebraSpec, x: &Vector, tol: Option<f64>) -> Result<SpectrumReport> {
    let ad = alg.ad_matrix(x)?;
    let norm = alg.norm(x);
    Ok(spectrum_of_matrix(&ad, tol.unwrap_or_else(|| default_tol(norm)), norm))
}

/// `‖ad(x)³ + ‖x‖² ad(x)‖_F`; octonion builtin only.
pub fn minpoly_residual(alg: &AlgebraSpec, x: &Vector) -> Result<f64> {
    if !alg.is_octonion() {
        return Err(Error::UnsupportedAlgebra(alg.name().to_string()));
    }
    let a = alg.ad_matrix(x)?;
    let n2 = alg.norm(x).powi(2);
    Ok((&a * &a * &a + a * n2).norm())
}

/// `e^{tA}` for skew-symmetric `A` through the Hermitian eigenproblem of `iA`.
/// Precomputes the decomposition so repeated evaluation is cheap.
#[derive(Debug, Clone)]
pub struct SkewPropagator {
    vectors: CMatrix,
    /// Eigenvalues of `iA`; `A` has eigenvalues `-i * mu`.
    mu: Vec<f64>,
}

impl SkewPropagator {
    pub fn new(a: &LinOp) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch { expected: a.nrows(), found: a.ncols() });
        }
        let scale = a.amax().max(1.0);
        if (a + a.transpose()).amax() > SKEW_TOL * scale {
            return Err(Error::InvalidArgument("matrix is not skew-symmetric".into()));
        }
        let h = linop::to_complex(a) * Complex64::i();
        let eig = SymmetricEigen::new(h);
        Ok(SkewPropagator { vectors: eig.eigenvectors, mu: eig.eigenvalues.iter().copied().collect() })
    }

    pub fn at(&self, t: f64) -> LinOp {
        let u = &self.vectors;
        let n = u.nrows();
        let phases: Vec<Complex64> = self.mu.iter().map(|&m| Complex64::from_polar(1.0, -m * t)).collect();
        let mut scaled = u.clone();
        for (c, p) in phases.iter().enumerate() {
            scaled.column_mut(c).iter_mut().for_each(|z| *z *= *p);
        }
        let full = scaled * u.adjoint();
        LinOp::from_fn(n, n, |r, c| full[(r, c)].re)
    }
}

/// Which algorithm computes a matrix exponential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExpMethod {
    /// Eigendecomposition when the input is skew, Padé otherwise.
    #[default]
    Auto,
    Eigen,
    /// Scaling and squaring with Padé approximants (nalgebra).
    Pade,
}

pub fn matrix_exp(a: &LinOp, t: f64, method: ExpMethod) -> Result<LinOp> {
    match method {
        ExpMethod::Pade => Ok((a * t).exp()),
        ExpMethod::Eigen => Ok(SkewPropagator::new(a)?.at(t)),
        ExpMethod::Auto => match SkewPropagator::new(a) {
            Ok(p) => Ok(p.at(t)),
            Err(_) => Ok((a * t).exp()),
        },
    }
}

/// `e^{t ad(x)}`.
pub fn exp_ad(alg: &AlgebraSpec, x: &Vector, t: f64) -> Result<LinOp> {
    matrix_exp(&alg.ad_matrix(x)?, t, ExpMethod::Auto)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_max: f64,
    pub steps: usize,
    pub dt: f64,
}

impl TimeGrid {
    pub fn new(t_max: f64, steps: usize) -> Result<Self> {
        if steps < 2 || t_max.is_nan() || t_max <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "time grid needs steps >= 2 and t_max > 0 (got {steps}, {t_max})"
            )));
        }
        Ok(TimeGrid { t_max, steps, dt: t_max / (steps - 1) as f64 })
    }

    pub fn time(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.t_max
        } else {
            i as f64 * self.dt
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitStats {
    pub sup_norm: f64,
    pub recurrence_epsilon: f64,
    pub recurrence_time: Option<f64>,
    pub grid: TimeGrid,
}

/// First grid time at which a sampled orbit returns within `epsilon` of its
/// start after having left that ball. An orbit that never leaves the ball
/// recurs at the first positive grid time.
pub fn first_recurrence(times: &[f64], distances: &[f64], epsilon: f64) -> Option<f64> {
    let mut left = false;
    for (&t, &d) in times.iter().zip(distances).skip(1) {
        if d >= epsilon {
            left = true;
        } else if left {
            return Some(t);
        }
    }
    if left {
        None
    } else {
        times.get(1).copied()
    }
}

/// Boundedness and recurrence of `t -> e^{t ad(x)} y` on a uniform grid over
/// `[0, t_max]`. Grid points are evaluated independently under `exec`.
pub fn orbit_stats(
    alg: &AlgebraSpec,
    x: &Vector,
    y: &Vector,
    t_max: f64,
    steps: usize,
    epsilon: f64,
    exec: Exec,
) -> Result<OrbitStats> {
    let grid = TimeGrid::new(t_max, steps)?;
    let ad = alg.ad_matrix(x)?;
    if y.len() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found: y.len() });
    }
    let propagator = SkewPropagator::new(&ad).ok();
    let samples: Vec<(f64, f64)> = exec.map(steps, |i| {
        let t = grid.time(i);
        let e = match &propagator {
            Some(p) => p.at(t),
            None => (&ad * t).exp(),
        };
        let point = e * y;
        (alg.norm(&point), alg.norm(&(point - y)))
    });
    let sup_norm = samples.iter().map(|s| s.0).fold(0.0, f64::max);
    let times: Vec<f64> = (0..steps).map(|i| grid.time(i)).collect();
    let dists: Vec<f64> = samples.iter().map(|s| s.1).collect();
    Ok(OrbitStats {
        sup_norm,
        recurrence_epsilon: epsilon,
        recurrence_time: first_recurrence(&times, &dists, epsilon),
        grid,
    })
}

/// Residual `‖Π_j (A - λ_j I)‖ / Π_j (‖A‖ + |λ_j|)` over distinct eigenvalues;
/// near zero exactly when `A` is diagonalizable.
pub fn diagonalizability_residual(m: &LinOp, groups: &[(Complex64, usize)]) -> f64 {
    let n = m.nrows();
    let a = linop::to_complex(m);
    let id = CMatrix::identity(n, n);
    let a_norm = m.norm();
    let mut prod = id.clone();
    let mut scale = 1.0;
    for (lambda, _) in groups {
        prod *= &a - &id * *lambda;
        scale *= a_norm + lambda.norm();
    }
    if scale == 0.0 {
        return 0.0;
    }
    prod.norm() / scale
}

/// Minimal period of `t -> e^{tA}` read off the eigenfrequencies, or `None`
/// when the flow is not periodic (non-imaginary or defective spectrum, no
/// nonzero frequency, or incommensurate frequencies).
pub fn period_of_matrix(m: &LinOp, tol: f64) -> Option<f64> {
    let groups = group_eigenvalues(&eigenvalues(m), tol);
    if groups.iter().any(|(z, _)| z.re.abs() > tol) {
        return None;
    }
    if diagonalizability_residual(m, &groups) > 1e-9 {
        return None;
    }
    let freqs: Vec<f64> = groups.iter().map(|(z, _)| z.im.abs()).filter(|&w| w > tol).collect();
    let omega = freqs.iter().copied().fold(f64::INFINITY, f64::min);
    if !omega.is_finite() {
        return None;
    }
    let commensurate = freqs.iter().all(|w| {
        let r = w / omega;
        (r - r.round()).abs() <= RATIO_TOL
    });
    commensurate.then(|| 2.0 * PI / omega)
}

pub fn minimal_period(alg: &AlgebraSpec, x: &Vector, tol: Option<f64>) -> Result<Option<f64>> {
    let norm = alg.norm(x);
    if norm == 0.0 {
        return Err(Error::ZeroElement);
    }
    let ad = alg.ad_matrix(x)?;
    Ok(period_of_matrix(&ad, tol.unwrap_or_else(|| default_tol(norm))))
}

/// Spectral projectors `P_i` of a diagonalizable matrix (Lagrange–Sylvester
/// products over the distinct eigenvalues).
pub fn spectral_projectors(m: &LinOp, tol: f64) -> Result<Vec<(Complex64, CMatrix)>> {
    let groups = group_eigenvalues(&eigenvalues(m), tol);
    let residual = diagonalizability_residual(m, &groups);
    if residual > 1e-9 {
        return Err(Error::NotDiagonalizable { residual });
    }
    let n = m.nrows();
    let a = linop::to_complex(m);
    let id = CMatrix::identity(n, n);
    Ok(groups
        .iter()
        .enumerate()
        .map(|(i, (li, _))| {
            let mut p = id.clone();
            for (j, (lj, _)) in groups.iter().enumerate() {
                if i != j {
                    p *= (&a - &id * *lj) / (*li - *lj);
                }
            }
            (*li, p)
        })
        .collect())
}

/// `f(A) = Σ f(λ_i) P_i` for a matrix with purely imaginary spectrum.
pub fn functional_calculus_matrix<F>(m: &LinOp, f: F, tol: f64) -> Result<LinOp>
where
    F: Fn(Complex64) -> Complex64,
{
    let projectors = spectral_projectors(m, tol)?;
    let max_real = projectors.iter().map(|(l, _)| l.re.abs()).fold(0.0, f64::max);
    if max_real > tol {
        return Err(Error::NonImaginarySpectrum { max_real });
    }
    let mut defect: f64 = 0.0;
    for (l, _) in &projectors {
        let fl = f(*l);
        let d = (f(l.conj()) - fl.conj()).norm() / (1.0 + fl.norm());
        defect = defect.max(d);
    }
    if defect > 1e-10 {
        return Err(Error::NonConjugateSymmetricF { defect });
    }
    let n = m.nrows();
    let mut acc = CMatrix::zeros(n, n);
    for (l, p) in &projectors {
        acc += p * f(*l);
    }
    Ok(LinOp::from_fn(n, n, |r, c| acc[(r, c)].re))
}

pub fn functional_calculus<F>(alg: &AlgebraSpec, x: &Vector, f: F, tol: Option<f64>) -> Result<LinOp>
where
    F: Fn(Complex64) -> Complex64,
{
    let ad = alg.ad_matrix(x)?;
    functional_calculus_matrix(&ad, f, tol.unwrap_or_else(|| default_tol(alg.norm(x))))
}

/// `R(λ, x) = (λI - ad x)^{-1}`.
pub fn resolvent(alg: &AlgebraSpec, x: &Vector, lambda: Complex64, tol: Option<f64>) -> Result<CMatrix> {
    let ad = alg.ad_matrix(x)?;
    let tol = tol.unwrap_or_else(|| default_tol(alg.norm(x)));
    let distance = eigenvalues(&ad).iter().map(|z| (z - lambda).norm()).fold(f64::INFINITY, f64::min);
    if distance <= tol {
        return Err(Error::SpectrumHit { distance });
    }
    let n = ad.nrows();
    let shifted = CMatrix::identity(n, n) * lambda - linop::to_complex(&ad);
    shifted.try_inverse().ok_or(Error::SpectrumHit { distance })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApClassification {
    pub almost_periodic: bool,
    pub samples: usize,
    pub non_imaginary_count: usize,
    pub max_abs_real: f64,
}

/// Classifies an algebra as almost periodic when `ad(x)` has purely
/// imaginary, semisimple spectrum for every basis element and `samples`
/// seeded random elements.
pub fn classify_almost_periodic(alg: &AlgebraSpec, samples: usize, seed: u64, exec: Exec) -> ApClassification {
    let d = alg.dim();
    let results: Vec<(bool, f64)> = exec.map(d + samples, |n| {
        let x = if n < d { alg.basis(n) } else { sampling::gaussian_vector(&mut sampling::stream(seed, n as u64), d) };
        let ad = alg.ad_matrix(&x).expect("sampled vectors have the algebra's dimension");
        let report = spectrum_of_matrix(&ad, default_tol(alg.norm(&x)), alg.norm(&x));
        let groups: Vec<(Complex64, usize)> = report.eigenvalues.iter().map(|e| (e.value(), e.mult)).collect();
        let ok = report.purely_imaginary && diagonalizability_residual(&ad, &groups) <= 1e-9;
        (ok, report.max_abs_real())
    });
    let non_imaginary_count = results.iter().filter(|r| !r.0).count();
    ApClassification {
        almost_periodic: non_imaginary_count == 0,
        samples: d + samples,
        non_imaginary_count,
        max_abs_real: results.iter().map(|r| r.1).fold(0.0, f64::max),
    }
}
