//! Dense real operators and the few norms the rest of the crate needs.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Dense `n x n` real matrix.
pub type LinOp = DMatrix<f64>;
/// Coefficient vector over an algebra basis.
pub type Vector = DVector<f64>;
pub type CMatrix = DMatrix<Complex64>;

/// Largest singular value.
pub fn op_norm(m: &LinOp) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

pub fn frobenius(m: &LinOp) -> f64 {
    m.norm()
}

/// `‖A + Aᵀ‖_F`.
pub fn skew_defect(m: &LinOp) -> f64 {
    (m + m.transpose()).norm()
}

/// `AB - BA`.
pub fn commutator(a: &LinOp, b: &LinOp) -> LinOp {
    a * b - b * a
}

pub fn to_complex(m: &LinOp) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Numerical rank: singular values above `rel_tol * max_singular_value`.
pub fn rank(m: &LinOp, rel_tol: f64) -> usize {
    let sv = m.singular_values();
    let top = sv.max();
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}
