//! Finite-dimensional anti-commutative algebras given by structure constants.
//!
//! `bracket(e_i, e_j) = Σ_k c[i][j][k] e_k`. The octonion builtin is the
//! imaginary octonions with the half-commutator `[x,y] = (xy - yx)/2`;
//! code that needs the plain commutator `xy - yx` multiplies by
//! [`FULL_COMMUTATOR_SCALE`].

use std::path::Path;

use nalgebra::Cholesky;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linop::{self, LinOp, Vector};
use crate::octonion::Octonion;
use crate::sampling;

/// Ratio between the plain commutator `xy - yx` and the half-commutator
/// bracket carried by the octonion and quaternion builtins.
pub const FULL_COMMUTATOR_SCALE: f64 = 2.0;

pub const MAX_DIM: usize = 64;

pub const BUILTIN_NAMES: [&str; 5] = ["octonion", "su2", "im_quaternion", "m3", "sl2"];

/// Imaginary quaternion units `i, j, k` realised inside the octonions as
/// `e1, e2, e4` (the line `(1,2,4)`).
pub const QUATERNION_UNITS: [usize; 3] = [1, 2, 4];

#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    name: String,
    dim: usize,
    /// Flattened `c[i][j][k]` at `(i * dim + j) * dim + k`.
    constants: Vec<f64>,
    metric: LinOp,
    metric_factor: LinOp,
    metric_factor_inv_t: LinOp,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.dim == other.dim
            && self.constants == other.constants
            && self.metric == other.metric
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct AlgebraFile {
    name: String,
    dim: usize,
    bracket: Vec<(usize, usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metric: Option<Vec<Vec<f64>>>,
}

impl AlgebraSpec {
    /// Builds a spec from a dense `dim³` constant tensor, validating anti-symmetry.
    pub fn from_constants(name: impl Into<String>, dim: usize, constants: Vec<f64>) -> Result<Self> {
        Self::with_metric(name, dim, constants, LinOp::identity(dim, dim))
    }

    pub fn with_metric(name: impl Into<String>, dim: usize, constants: Vec<f64>, metric: LinOp) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Parse(format!("dim must be in 1..={MAX_DIM}, got {dim}")));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: constants.len() });
        }
        if metric.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: metric.nrows() });
        }
        if constants.iter().any(|c| !c.is_finite()) {
            return Err(Error::Parse("structure constants must be finite".into()));
        }
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    let f = constants[(i * dim + j) * dim + k];
                    let b = constants[(j * dim + i) * dim + k];
                    if (f + b).abs() > 1e-12 * f.abs().max(b.abs()).max(1.0) {
                        return Err(Error::AntisymmetryViolation { i, j, k, forward: f, backward: b });
                    }
                }
            }
        }
        if (&metric - metric.transpose()).norm() > 1e-12 * metric.norm() {
            return Err(Error::Parse("metric must be symmetric".into()));
        }
        let chol =
            Cholesky::new(metric.clone()).ok_or_else(|| Error::Parse("metric must be positive definite".into()))?;
        let factor = chol.l();
        let inv_t =
            factor.clone().try_inverse().ok_or_else(|| Error::Parse("metric factor is singular".into()))?.transpose();
        Ok(AlgebraSpec { name: name.into(), dim, constants, metric, metric_factor: factor, metric_factor_inv_t: inv_t })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> &LinOp {
        &self.metric
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Same algebra with every structure constant multiplied by `factor`.
    pub fn scaled(&self, factor: f64, name: impl Into<String>) -> Self {
        let mut s = self.clone();
        s.name = name.into();
        s.constants.iter_mut().for_each(|c| *c *= factor);
        s
    }

    /// Copy with `c[i][j][k] += delta` and `c[j][i][k] -= delta`.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: f64) -> Self {
        let mut s = self.clone();
        let d = self.dim;
        s.constants[(i * d + j) * d + k] += delta;
        s.constants[(j * d + i) * d + k] -= delta;
        s.name = format!("{}+perturbed", self.name);
        s
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = Vector::zeros(self.dim);
        v[i] = 1.0;
        v
    }

    pub fn is_octonion(&self) -> bool {
        let oct = octonion_spec();
        self.dim == oct.dim && self.constants == oct.constants && self.metric == oct.metric
    }

    /// Norm induced by the metric.
    pub fn norm(&self, v: &Vector) -> f64 {
        (self.metric_factor.transpose() * v).norm()
    }

    /// Operator norm with respect to the metric norm on both sides.
    pub fn op_norm(&self, m: &LinOp) -> f64 {
        linop::op_norm(&(self.metric_factor.transpose() * m * &self.metric_factor_inv_t))
    }

    fn check(&self, v: &Vector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let d = self.dim;
        let mut out = Vector::zeros(d);
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                let w = x[i] * y[j];
                if w == 0.0 {
                    continue;
                }
                let row = &self.constants[(i * d + j) * d..(i * d + j + 1) * d];
                for (o, c) in out.iter_mut().zip(row) {
                    *o += w * c;
                }
            }
        }
        out
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]`.
    pub fn jacobian(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        Ok(self.jacobian_unchecked(x, y, z))
    }

    fn jacobian_unchecked(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        let b = |a: &Vector, c: &Vector| self.bracket_unchecked(a, c);
        b(&b(x, y), z) + b(&b(y, z), x) + b(&b(z, x), y)
    }

    /// `‖J(x, y, [x,z]) - [J(x,y,z), x]‖`.
    pub fn malcev_residual(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        let xz = self.bracket_unchecked(x, z);
        let lhs = self.jacobian_unchecked(x, y, &xz);
        let rhs = self.bracket_unchecked(&self.jacobian_unchecked(x, y, z), x);
        Ok(self.norm(&(lhs - rhs)))
    }

    /// Largest Malcev residual over all `dim³` basis triples.
    pub fn max_basis_malcev_residual(&self, exec: Exec) -> f64 {
        let d = self.dim;
        exec.max_f64(d * d * d, |n| {
            let (i, j, k) = (n / (d * d), (n / d) % d, n % d);
            self.malcev_residual(&self.basis(i), &self.basis(j), &self.basis(k))
                .expect("basis vectors have the algebra's dimension")
        })
    }

    /// Matrix of `y -> [x, y]`.
    pub fn ad_matrix(&self, x: &Vector) -> Result<LinOp> {
        self.check(x)?;
        let d = self.dim;
        let mut m = LinOp::zeros(d, d);
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                for k in 0..d {
                    m[(k, j)] += x[i] * self.constants[(i * d + j) * d + k];
                }
            }
        }
        Ok(m)
    }

    /// Defect operator `S(x,y) = [ad x, ad y] - ad [x,y]`, assembled column by
    /// column from `S(x,y) z = -J(x, y, z)`.
    pub fn defect_s(&self, x: &Vector, y: &Vector) -> Result<LinOp> {
        self.check(x)?;
        self.check(y)?;
        let d = self.dim;
        let mut m = LinOp::zeros(d, d);
        for c in 0..d {
            let col = -self.jacobian_unchecked(x, y, &self.basis(c));
            m.set_column(c, &col);
        }
        Ok(m)
    }

    /// `[ad x, ad y] - ad [x,y]` from adjoint matrices.
    pub fn ad_commutator_defect(&self, x: &Vector, y: &Vector) -> Result<LinOp> {
        let ax = self.ad_matrix(x)?;
        let ay = self.ad_matrix(y)?;
        let axy = self.ad_matrix(&self.bracket(x, y)?)?;
        Ok(linop::commutator(&ax, &ay) - axy)
    }

    /// The closed form `z -> J([x,y], z, x) - J(x, y, [z,x])` written for the
    /// defect in the source literature. Kept as a diagnostic: it does not
    /// coincide with [`Self::defect_s`] on the octonions.
    pub fn defect_s_literal(&self, x: &Vector, y: &Vector) -> Result<LinOp> {
        self.check(x)?;
        self.check(y)?;
        let d = self.dim;
        let xy = self.bracket_unchecked(x, y);
        let mut m = LinOp::zeros(d, d);
        for c in 0..d {
            let z = self.basis(c);
            let zx = self.bracket_unchecked(&z, x);
            let col = self.jacobian_unchecked(&xy, &z, x) - self.jacobian_unchecked(x, y, &zx);
            m.set_column(c, &col);
        }
        Ok(m)
    }

    /// Max over basis pairs of `‖[e_i, e_j]‖`; a lower bound for the
    /// continuity constant `C` in `‖[x,y]‖ <= C ‖x‖ ‖y‖`.
    pub fn bracket_bound_basis(&self) -> f64 {
        let d = self.dim;
        (0..d * d)
            .map(|n| self.norm(&self.bracket_unchecked(&self.basis(n / d), &self.basis(n % d))))
            .fold(0.0, f64::max)
    }

    /// Exact basis-pair supremum and a seeded Monte-Carlo estimate of
    /// `sup ‖S(x,y) z‖` over unit `x, y, z`.
    pub fn defect_norm(&self, sample_count: usize, seed: u64, exec: Exec) -> Result<DefectNorm> {
        if sample_count == 0 {
            return Err(Error::InvalidArgument("sample_count must be >= 1".into()));
        }
        let d = self.dim;
        let basis_sup = exec.max_f64(d * d, |n| {
            let (i, j) = (n / d, n % d);
            let s = self.defect_s(&self.basis(i), &self.basis(j)).expect("basis vectors have the algebra's dimension");
            self.op_norm(&s)
        });
        let sampled_sup = exec.max_f64(sample_count, |n| {
            let mut rng = sampling::stream(seed, n as u64);
            let mut unit = || {
                let v = sampling::gaussian_vector(&mut rng, d);
                let len = self.norm(&v);
                v / len
            };
            let (x, y, z) = (unit(), unit(), unit());
            self.norm(&self.jacobian_unchecked(&x, &y, &z))
        });
        Ok(DefectNorm { basis_sup, sampled_sup })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let d = file.dim;
        if d == 0 || d > MAX_DIM {
            return Err(Error::Parse(format!("dim must be in 1..={MAX_DIM}, got {d}")));
        }
        let mut constants = vec![0.0; d * d * d];
        let mut present = vec![false; d * d * d];
        for &(i, j, k, c) in &file.bracket {
            if i >= d || j >= d || k >= d {
                return Err(Error::Parse(format!("bracket entry [{i}, {j}, {k}] out of range for dim {d}")));
            }
            let at = (i * d + j) * d + k;
            if present[at] {
                return Err(Error::Parse(format!("duplicate bracket entry [{i}, {j}, {k}]")));
            }
            present[at] = true;
            constants[at] = c;
        }
        for &(i, j, k, c) in &file.bracket {
            let mirror = (j * d + i) * d + k;
            if !present[mirror] && c != 0.0 {
                return Err(Error::AntisymmetryViolation { i, j, k, forward: c, backward: 0.0 });
            }
        }
        let metric = match file.metric {
            None => LinOp::identity(d, d),
            Some(rows) => {
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(Error::Parse(format!("metric must be {d}x{d}")));
                }
                LinOp::from_fn(d, d, |r, c| rows[r][c])
            }
        };
        Self::with_metric(file.name, d, constants, metric)
    }

    pub fn to_json_string(&self) -> String {
        let d = self.dim;
        let mut bracket = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = self.constant(i, j, k);
                    if c != 0.0 {
                        bracket.push((i, j, k, c));
                    }
                }
            }
        }
        let metric = (self.metric != LinOp::identity(d, d))
            .then(|| (0..d).map(|r| (0..d).map(|c| self.metric[(r, c)]).collect()).collect());
        let file = AlgebraFile { name: self.name.clone(), dim: d, bracket, metric };
        serde_json::to_string_pretty(&file).expect("algebra file serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DefectNorm {
    pub basis_sup: f64,
    pub sampled_sup: f64,
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<AlgebraSpec> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Parse(format!("{}: {e}", path.as_ref().display())))?;
    AlgebraSpec::from_json_str(&text)
}

pub fn builtin(name: &str) -> Result<AlgebraSpec> {
    match name {
        "octonion" => Ok(octonion_spec()),
        "im_quaternion" => Ok(im_quaternion_spec()),
        "su2" => Ok(su2_spec()),
        "sl2" => Ok(sl2_spec()),
        "m3" => Ok(sl2_spec().scaled(1.5, "m3")),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

/// Half-commutator structure constants of the subalgebra spanned by the
/// given imaginary octonion units.
fn half_commutator_constants(units: &[usize]) -> Vec<f64> {
    let d = units.len();
    let mut c = vec![0.0; d * d * d];
    for (a, &ua) in units.iter().enumerate() {
        for (b, &ub) in units.iter().enumerate() {
            let prod = Octonion::basis(ua).commutator(&Octonion::basis(ub)).scale(0.5);
            for (k, &uk) in units.iter().enumerate() {
                c[(a * d + b) * d + k] = prod[uk];
            }
        }
    }
    c
}

fn octonion_spec() -> AlgebraSpec {
    let units: Vec<usize> = (1..8).collect();
    AlgebraSpec::from_constants("octonion", 7, half_commutator_constants(&units))
        .expect("octonion constants are anti-symmetric")
}

fn im_quaternion_spec() -> AlgebraSpec {
    AlgebraSpec::from_constants("im_quaternion", 3, half_commutator_constants(&QUATERNION_UNITS))
        .expect("quaternion constants are anti-symmetric")
}

fn su2_spec() -> AlgebraSpec {
    let mut c = vec![0.0; 27];
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        c[(i * 3 + j) * 3 + k] = 1.0;
        c[(j * 3 + i) * 3 + k] = -1.0;
    }
    AlgebraSpec::from_constants("su2", 3, c).expect("su2 constants are anti-symmetric")
}

/// Basis `(h, e, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
fn sl2_spec() -> AlgebraSpec {
    let mut c = vec![0.0; 27];
    let mut set = |i: usize, j: usize, k: usize, v: f64| {
        c[(i * 3 + j) * 3 + k] = v;
        c[(j * 3 + i) * 3 + k] = -v;
    };
    set(0, 1, 1, 2.0);
    set(0, 2, 2, -2.0);
    set(1, 2, 0, 1.0);
    AlgebraSpec::from_constants("sl2", 3, c).expect("sl2 constants are anti-symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{stream, unit_vector};

    fn oct() -> AlgebraSpec {
        builtin("octonion").unwrap()
    }

    fn e(alg: &AlgebraSpec, one_based: usize) -> Vector {
        alg.basis(one_based - 1)
    }

    #[test]
    fn octonion_bracket_relations() {
        let a = oct();
        assert_eq!(a.bracket(&e(&a, 1), &e(&a, 2)).unwrap(), e(&a, 4));
        assert_eq!(a.bracket(&e(&a, 2), &e(&a, 4)).unwrap(), e(&a, 1));
        assert_eq!(a.bracket(&e(&a, 4), &e(&a, 1)).unwrap(), e(&a, 2));
        let x = Vector::from_vec(vec![0.3, -1.0, 2.0, 0.0, 0.5, 1.0, -0.7]);
        assert!(a.bracket(&x, &x).unwrap().norm() <= 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = oct();
        let bad = Vector::zeros(3);
        assert_eq!(a.bracket(&bad, &e(&a, 1)), Err(Error::DimensionMismatch { expected: 7, found: 3 }));
        assert!(a.jacobian(&e(&a, 1), &e(&a, 2), &bad).is_err());
        assert!(a.ad_matrix(&bad).is_err());
    }

    #[test]
    fn jacobian_fixtures() {
        let a = oct();
        assert_eq!(a.jacobian(&e(&a, 1), &e(&a, 2), &e(&a, 4)).unwrap().norm(), 0.0);
        // Hand expansion: [e4,e3] + [e5,e1] + [-e7,e2] = -e6 - e6 - e6.
        let j = a.jacobian(&e(&a, 1), &e(&a, 2), &e(&a, 3)).unwrap();
        assert_eq!(j, e(&a, 6) * -3.0);
        let su2 = builtin("su2").unwrap();
        for n in 0..27 {
            let (i, jj, k) = (n / 9, (n / 3) % 3, n % 3);
            assert_eq!(su2.jacobian(&su2.basis(i), &su2.basis(jj), &su2.basis(k)).unwrap().norm(), 0.0);
        }
    }

    #[test]
    fn jacobian_is_alternating() {
        let a = oct();
        for s in 0..20 {
            let mut rng = stream(11, s);
            let (x, y, z) = (unit_vector(&mut rng, 7), unit_vector(&mut rng, 7), unit_vector(&mut rng, 7));
            let j = a.jacobian(&x, &y, &z).unwrap();
            assert!((j.clone() + a.jacobian(&y, &x, &z).unwrap()).norm() < 1e-13);
            assert!((j.clone() + a.jacobian(&x, &z, &y).unwrap()).norm() < 1e-13);
            assert!((j - a.jacobian(&y, &z, &x).unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn malcev_residuals_on_builtins() {
        for name in BUILTIN_NAMES {
            let alg = builtin(name).unwrap();
            assert!(alg.max_basis_malcev_residual(Exec::Sequential) <= 1e-12, "{name}");
        }
    }

    #[test]
    fn perturbed_octonion_is_not_malcev() {
        let alg = oct().perturbed(0, 1, 3, 0.1);
        let r = alg.max_basis_malcev_residual(Exec::Parallel);
        // Regression fixture: the brute-force sweep gives 0.2.
        assert!(r > 0.01);
        assert!((r - 0.2).abs() < 1e-12, "observed {r}");
    }

    #[test]
    fn adjoint_matrix_properties() {
        let a = oct();
        let ad1 = a.ad_matrix(&e(&a, 1)).unwrap();
        assert_eq!(&ad1 * e(&a, 2), e(&a, 4));
        assert!(linop::skew_defect(&ad1) <= 1e-14);
        let x = Vector::from_vec(vec![1.0, 2.0, -0.5, 0.0, 0.25, 3.0, -1.0]);
        assert!((a.ad_matrix(&x).unwrap() * &x).norm() <= 1e-14);
    }

    #[test]
    fn defect_routes_agree() {
        for name in BUILTIN_NAMES {
            let alg = builtin(name).unwrap();
            for s in 0..100 {
                let mut rng = stream(3, s);
                let x = sampling::gaussian_vector(&mut rng, alg.dim());
                let y = sampling::gaussian_vector(&mut rng, alg.dim());
                let s1 = alg.defect_s(&x, &y).unwrap();
                let s2 = alg.ad_commutator_defect(&x, &y).unwrap();
                assert!((&s1 - s2).norm() <= 1e-12 * (1.0 + s1.norm()), "{name}");
                assert!((s1 + alg.defect_s(&y, &x).unwrap()).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn defect_zero_cases() {
        let a = oct();
        let x = Vector::from_vec(vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7]);
        assert!(a.defect_s(&x, &x).unwrap().norm() <= 1e-15);
        let su2 = builtin("su2").unwrap();
        assert_eq!(su2.defect_s(&su2.basis(0), &su2.basis(1)).unwrap().norm(), 0.0);
    }

    #[test]
    fn octonion_basis_defect_norms() {
        // S(e_i,e_j) = -J(e_i,e_j,.) kills the quaternion line through
        // e_i, e_j and maps its 4-dim complement with |J| = 3.
        let a = oct();
        for i in 0..7 {
            for j in 0..7 {
                if i != j {
                    let n = a.op_norm(&a.defect_s(&a.basis(i), &a.basis(j)).unwrap());
                    assert!((n - 3.0).abs() < 1e-12, "({i},{j}) -> {n}");
                }
            }
        }
    }

    #[test]
    fn literal_defect_formula_differs() {
        let a = oct();
        let lit = a.defect_s_literal(&e(&a, 1), &e(&a, 2)).unwrap();
        let s = a.defect_s(&e(&a, 1), &e(&a, 2)).unwrap();
        assert!((lit - s).norm() > 1.0);
    }

    #[test]
    fn defect_norm_values() {
        let dn = oct().defect_norm(2000, 42, Exec::Parallel).unwrap();
        assert!((dn.basis_sup - 3.0).abs() < 1e-10);
        assert!(dn.sampled_sup <= dn.basis_sup + 1e-9);
        assert!(dn.sampled_sup > 2.0);
        for name in ["su2", "im_quaternion", "m3", "sl2"] {
            let dn = builtin(name).unwrap().defect_norm(100, 1, Exec::Sequential).unwrap();
            assert_eq!(dn.basis_sup, 0.0, "{name}");
            assert!(dn.sampled_sup <= 1e-14, "{name}");
        }
        assert!(oct().defect_norm(0, 1, Exec::Sequential).is_err());
    }

    #[test]
    fn defect_norm_is_deterministic_across_policies() {
        let a = oct();
        let s = a.defect_norm(500, 9, Exec::Sequential).unwrap();
        let p = a.defect_norm(500, 9, Exec::Parallel).unwrap();
        assert_eq!(s, p);
    }

    #[test]
    fn builtins() {
        assert_eq!(oct().dim(), 7);
        assert!(oct().is_octonion());
        assert!(!builtin("su2").unwrap().is_octonion());
        let m3 = builtin("m3").unwrap();
        assert_eq!(m3.constant(1, 2, 0), 1.5);
        assert!(matches!(builtin("g2"), Err(Error::UnknownBuiltin(_))));
        let q = builtin("im_quaternion").unwrap();
        assert_eq!(q.bracket(&q.basis(0), &q.basis(1)).unwrap(), q.basis(2));
    }

    #[test]
    fn json_loader() {
        let good = r#"{"name": "toy", "dim": 3, "bracket": [[0, 1, 2, 1.0], [1, 0, 2, -1.0]]}"#;
        let alg = AlgebraSpec::from_json_str(good).unwrap();
        assert_eq!(alg.constant(0, 1, 2), 1.0);
        assert_eq!(alg.name(), "toy");

        let bad = r#"{"name": "bad", "dim": 3, "bracket": [[0, 1, 2, 1], [1, 0, 2, 1]]}"#;
        assert!(matches!(AlgebraSpec::from_json_str(bad), Err(Error::AntisymmetryViolation { i: 0, j: 1, k: 2, .. })));
        let missing = r#"{"name": "bad", "dim": 3, "bracket": [[0, 1, 2, 1]]}"#;
        assert!(matches!(AlgebraSpec::from_json_str(missing), Err(Error::AntisymmetryViolation { .. })));
        let range = r#"{"name": "bad", "dim": 2, "bracket": [[0, 1, 2, 1]]}"#;
        assert!(matches!(AlgebraSpec::from_json_str(range), Err(Error::Parse(_))));
        assert!(matches!(AlgebraSpec::from_json_str("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn json_roundtrip_of_builtins() {
        for name in BUILTIN_NAMES {
            let alg = builtin(name).unwrap();
            let back = AlgebraSpec::from_json_str(&alg.to_json_string()).unwrap();
            assert_eq!(alg, back);
        }
    }

    #[test]
    fn metric_norms() {
        let metric = LinOp::from_diagonal(&Vector::from_vec(vec![4.0, 1.0, 1.0]));
        let c = builtin("su2").unwrap().constants.clone();
        let alg = AlgebraSpec::with_metric("weighted", 3, c, metric).unwrap();
        assert!((alg.norm(&alg.basis(0)) - 2.0).abs() < 1e-15);
        // diag(1/2, 1, 1) maps e0 (metric norm 2) to e0/2 (metric norm 1).
        let m = LinOp::from_diagonal(&Vector::from_vec(vec![0.5, 1.0, 1.0]));
        assert!((alg.op_norm(&m) - 1.0).abs() < 1e-14);
        let not_pd = LinOp::from_diagonal(&Vector::from_vec(vec![1.0, -1.0, 1.0]));
        assert!(AlgebraSpec::with_metric("x", 3, vec![0.0; 27], not_pd).is_err());
    }
}
