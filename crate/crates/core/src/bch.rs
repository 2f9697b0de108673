//! Truncated Baker–Campbell–Hausdorff series on the imaginary octonions.
//!
//! The series is evaluated with the plain commutator `xy - yx`
//! (`FULL_COMMUTATOR_SCALE` times the algebra bracket). Any two octonions
//! generate an associative subalgebra, so the classical series converges to
//! `log(exp x * exp y)` for every pair inside its radius.

use serde::{Deserialize, Serialize};

use crate::algebra::{builtin, AlgebraSpec, FULL_COMMUTATOR_SCALE};
use crate::error::{Error, Result};
use crate::linop::Vector;
use crate::moufang::{imaginary_from_vector, imaginary_to_vector, oct_exp, oct_log};

pub const MAX_ORDER: usize = 6;

/// Homogeneous BCH terms of degree 2..=6 in Dynkin's right-nested form.
/// An entry `(prefix, p, q)` stands for `p/q * [a1, [a2, ..., [ak, [x, y]]]]`
/// where `prefix = a1 a2 ... ak` over the letters `x`, `y`.
const TERMS: [&[(&str, i64, i64)]; 5] = [
    &[("", 1, 2)],
    &[("x", 1, 12), ("y", -1, 12)],
    &[("xy", -1, 48), ("yx", -1, 48)],
    &[("xxx", -1, 720), ("xyx", -1, 120), ("xyy", -1, 360), ("yxx", 1, 360), ("yxy", 1, 120), ("yyy", 1, 720)],
    &[
        ("xxxy", 1, 2160),
        ("xxyx", -1, 1440),
        ("xxyy", -1, 1440),
        ("xyxx", 1, 2160),
        ("xyxy", 1, 360),
        ("xyyx", -1, 1440),
        ("xyyy", 1, 2160),
        ("yxxx", 1, 2160),
        ("yxxy", -1, 1440),
        ("yxyx", 1, 360),
        ("yxyy", 1, 2160),
        ("yyxx", -1, 1440),
        ("yyxy", -1, 1440),
        ("yyyx", 1, 2160),
    ],
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BchConfig {
    pub order: usize,
    /// Bracket continuity constant `B` in `‖[x,y]‖ <= B ‖x‖ ‖y‖`.
    pub b: f64,
    /// Bound `K >= 1` on the classical coefficients.
    pub k: f64,
}

impl Default for BchConfig {
    fn default() -> Self {
        BchConfig { order: MAX_ORDER, b: 2.0, k: 1.0 }
    }
}

impl BchConfig {
    pub fn new(order: usize, b: f64, k: f64) -> Result<Self> {
        check_order(order)?;
        if b.is_nan() || b <= 0.0 {
            return Err(Error::InvalidArgument(format!("B must be positive, got {b}")));
        }
        if k.is_nan() || k < 1.0 {
            return Err(Error::InvalidArgument(format!("K must be >= 1, got {k}")));
        }
        Ok(BchConfig { order, b, k })
    }

    /// Right-hand side `1/(4K)` of the radius condition.
    pub fn bound(&self) -> f64 {
        1.0 / (4.0 * self.k)
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    Ok(())
}

/// `B (‖x‖ + ‖y‖) < 1/(4K)`.
pub fn bch_radius_ok(cfg: &BchConfig, x: &Vector, y: &Vector) -> bool {
    cfg.b * (x.norm() + y.norm()) < cfg.bound()
}

struct Commutator {
    alg: AlgebraSpec,
}

impl Commutator {
    fn new() -> Result<Self> {
        Ok(Commutator { alg: builtin("octonion")? })
    }

    fn apply(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        Ok(self.alg.bracket(a, b)? * FULL_COMMUTATOR_SCALE)
    }
}

/// `x + y + 1/2 [x,y] + ...` through total degree `order`.
pub fn bch_truncated(x: &Vector, y: &Vector, order: usize) -> Result<Vector> {
    check_order(order)?;
    let br = Commutator::new()?;
    let mut z = x + y;
    if order == 1 {
        return Ok(z);
    }
    let xy = br.apply(x, y)?;
    for terms in TERMS.iter().take(order - 1) {
        for &(prefix, p, q) in terms.iter() {
            let mut v = xy.clone();
            for letter in prefix.chars().rev() {
                let a = if letter == 'x' { x } else { y };
                v = br.apply(a, &v)?;
            }
            z += v * (p as f64 / q as f64);
        }
    }
    Ok(z)
}

/// `log(exp x * exp y)` on the unit octonions, as a 7-vector.
pub fn bch_exact(x: &Vector, y: &Vector) -> Result<Vector> {
    let gx = oct_exp(&imaginary_from_vector(x)?)?;
    let gy = oct_exp(&imaginary_from_vector(y)?)?;
    Ok(imaginary_to_vector(&oct_log(&(gx * gy), 1e-12)?))
}

/// `‖log(exp x * exp y) - bch_truncated(x, y, order)‖`.
pub fn bch_error(x: &Vector, y: &Vector, order: usize) -> Result<f64> {
    let approx = bch_truncated(x, y, order)?;
    Ok((bch_exact(x, y)? - approx).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BchReport {
    pub order: usize,
    pub error: f64,
    pub radius_ok: bool,
    pub bound: f64,
}

pub fn bch_report(cfg: &BchConfig, x: &Vector, y: &Vector) -> Result<BchReport> {
    Ok(BchReport {
        order: cfg.order,
        error: bch_error(x, y, cfg.order)?,
        radius_ok: bch_radius_ok(cfg, x, y),
        bound: cfg.bound(),
    })
}
