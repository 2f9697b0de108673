//! Exact flows on the unit octonions `S^7`.
//!
//! The flow generated by an imaginary `x` is `Φ_t(p) = exp(tx) * p` under the
//! [`Convention::Left`] translation used as default here, and `p * exp(tx)`
//! under [`Convention::Right`]. Both are evaluated in closed form; there is
//! no ODE integration anywhere in this module.

use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::{SMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::algebra::{builtin, AlgebraSpec};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linop::Vector;
use crate::octonion::Octonion;
use crate::spectral;

/// Real-part tolerance for "imaginary" inputs.
pub const IMAGINARY_TOL: f64 = 1e-12;
/// Norm tolerance for "unit" inputs.
pub const UNIT_TOL: f64 = 1e-12;

pub const CSV_HEADER: &str = "t,c0,c1,c2,c3,c4,c5,c6,c7";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `Φ_t(p) = exp(tx) * p`.
    #[default]
    Left,
    /// `Φ_t(p) = p * exp(tx)`.
    Right,
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Convention::Left),
            "right" => Ok(Convention::Right),
            other => Err(Error::UnknownConvention(other.to_string())),
        }
    }
}

fn require_imaginary(x: &Octonion) -> Result<()> {
    if x.re().abs() > IMAGINARY_TOL {
        return Err(Error::NotImaginary { real: x.re() });
    }
    Ok(())
}

fn require_unit(p: &Octonion, tol: f64) -> Result<()> {
    let n = p.norm();
    if (n - 1.0).abs() > tol {
        return Err(Error::NotUnit { norm: n });
    }
    Ok(())
}

/// Imaginary octonion from a 7-vector of `e1..e7` coefficients.
pub fn imaginary_from_vector(v: &Vector) -> Result<Octonion> {
    Octonion::imaginary(v.as_slice())
}

pub fn imaginary_to_vector(x: &Octonion) -> Vector {
    Vector::from_column_slice(&x.im())
}

/// `cos‖x‖ + sin‖x‖ x/‖x‖` for imaginary `x`.
pub fn oct_exp(x: &Octonion) -> Result<Octonion> {
    require_imaginary(x)?;
    let theta = x.norm();
    if theta == 0.0 {
        return Ok(Octonion::ONE);
    }
    let mut out = x.scale(theta.sin() / theta);
    out.0[0] = theta.cos();
    Ok(out)
}

/// Principal logarithm of a unit octonion; the result has norm `< π`.
pub fn oct_log(q: &Octonion, tol: f64) -> Result<Octonion> {
    require_unit(q, tol)?;
    if (*q + Octonion::ONE).norm() <= tol {
        return Err(Error::BranchPoint);
    }
    let mut im = *q;
    im.0[0] = 0.0;
    let s = im.norm();
    if s == 0.0 {
        return Ok(Octonion::ZERO);
    }
    let theta = s.atan2(q.re());
    Ok(im.scale(theta / s))
}

/// `Φ_t(p0)` under the given convention.
pub fn flow_point(x: &Octonion, p0: &Octonion, t: f64, convention: Convention) -> Result<Octonion> {
    let g = oct_exp(&x.scale(t))?;
    Ok(match convention {
        Convention::Left => g * *p0,
        Convention::Right => *p0 * g,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    points: Vec<Octonion>,
    generator: Option<Octonion>,
    convention: Convention,
}

impl Trajectory {
    /// Wraps sampled points, checking unit norms and increasing times.
    pub fn from_samples(
        times: Vec<f64>,
        points: Vec<Octonion>,
        generator: Option<Octonion>,
        convention: Convention,
    ) -> Result<Self> {
        if times.len() != points.len() {
            return Err(Error::DimensionMismatch { expected: times.len(), found: points.len() });
        }
        if times.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
            return Err(Error::InvalidArgument("times must be strictly increasing".into()));
        }
        for p in &points {
            require_unit(p, 1e-12)?;
        }
        Ok(Trajectory { times, points, generator, convention })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn points(&self) -> &[Octonion] {
        &self.points
    }

    pub fn generator(&self) -> Option<&Octonion> {
        self.generator.as_ref()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// CSV with header `t,c0,...,c7`, 17 significant digits per value.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.len() * 200);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for (t, p) in self.times.iter().zip(&self.points) {
            write!(out, "{t:.16e}").unwrap();
            for c in p.0 {
                write!(out, ",{c:.16e}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h.trim() == CSV_HEADER => {}
            other => return Err(Error::Parse(format!("bad trajectory header: {other:?}"))),
        }
        let mut times = Vec::new();
        let mut points = Vec::new();
        for (n, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let fields: Vec<f64> = line
                .split(',')
                .map(|f| f.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("row {}: {e}", n + 2)))?;
            if fields.len() != 9 {
                return Err(Error::Parse(format!("row {}: expected 9 fields, got {}", n + 2, fields.len())));
            }
            times.push(fields[0]);
            let mut c = [0.0; 8];
            c.copy_from_slice(&fields[1..]);
            points.push(Octonion(c));
        }
        Trajectory::from_samples(times, points, None, Convention::default())
    }
}

/// Samples the flow of imaginary `x` from unit `p0` at the given times.
pub fn flow_trajectory(
    x: &Octonion,
    p0: &Octonion,
    times: &[f64],
    convention: Convention,
    exec: Exec,
) -> Result<Trajectory> {
    require_imaginary(x)?;
    require_unit(p0, UNIT_TOL)?;
    let points = exec
        .map(times.len(), |i| flow_point(x, p0, times[i], convention).expect("generator already checked imaginary"));
    Trajectory::from_samples(times.to_vec(), points, Some(*x), convention)
}

/// `q y q⁻¹` with `q = exp(t x / 2)`; equals `e^{t ad x} y` for the
/// half-commutator bracket.
pub fn conj_orbit(x: &Octonion, y: &Octonion, t: f64) -> Result<Octonion> {
    require_imaginary(x)?;
    require_imaginary(y)?;
    let q = oct_exp(&x.scale(0.5 * t))?;
    let out = (q * *y) * q.conj();
    Ok(out)
}

/// `‖Φ_t(exp y) - exp(e^{t ad x} y)‖` under the left convention.
pub fn flow_conjugacy_residual(x: &Octonion, y: &Octonion, t: f64) -> Result<f64> {
    require_imaginary(x)?;
    require_imaginary(y)?;
    let alg: AlgebraSpec = builtin("octonion")?;
    let moved = spectral::exp_ad(&alg, &imaginary_to_vector(x), t)? * imaginary_to_vector(y);
    if moved.norm() >= std::f64::consts::PI - 1e-12 || y.norm() >= std::f64::consts::PI - 1e-12 {
        return Err(Error::BranchPoint);
    }
    let lhs = flow_point(x, &oct_exp(y)?, t, Convention::Left)?;
    let rhs = oct_exp(&imaginary_from_vector(&moved)?)?;
    Ok((lhs - rhs).norm())
}

/// Dimension of the orbit closure of a sampled trajectory.
///
/// The centred point cloud is reduced to its PCA rank (singular values above
/// `epsilon` times the largest). Rank 0 is a fixed point. Rank 1 or 2 is a
/// circle and additionally requires the samples to return to the start:
/// after moving away, some sample must come within
/// `max(epsilon, largest step between consecutive samples)` of the first.
/// Higher ranks are read as tori with `ceil(rank / 2)` independent angles.
pub fn orbit_closure_dim(traj: &Trajectory, epsilon: f64) -> Result<usize> {
    let pts = traj.points();
    if pts.len() < 3 {
        return Err(Error::InsufficientSamples(format!("need at least 3 samples, got {}", pts.len())));
    }
    let n = pts.len() as f64;
    let mut mean = [0.0; 8];
    for p in pts {
        mean.iter_mut().zip(p.0).for_each(|(m, c)| *m += c / n);
    }
    let mut cov = SMatrix::<f64, 8, 8>::zeros();
    for p in pts {
        let d = nalgebra::SVector::<f64, 8>::from_fn(|i, _| p.0[i] - mean[i]);
        cov += d * d.transpose() / n;
    }
    let sv: Vec<f64> = SymmetricEigen::new(cov).eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect();
    let top = sv.iter().copied().fold(0.0, f64::max);
    let rank = if top <= f64::EPSILON { 0 } else { sv.iter().filter(|&&s| s > epsilon * top).count() };
    match rank {
        0 => Ok(0),
        1 | 2 => {
            let step = pts.windows(2).map(|w| (w[1] - w[0]).norm()).fold(0.0, f64::max);
            let radius = epsilon.max(step);
            let dists: Vec<f64> = pts.iter().map(|p| (*p - pts[0]).norm()).collect();
            let far = dists.iter().copied().fold(0.0, f64::max);
            let left_at = dists.iter().position(|&d| d > radius.max(0.5 * far));
            let returns = left_at.is_some_and(|i| dists[i..].iter().any(|&d| d <= radius));
            if returns {
                Ok(1)
            } else {
                Err(Error::InsufficientSamples("trajectory does not close up; sample at least one period".into()))
            }
        }
        r => Ok(r.div_ceil(2)),
    }
}
