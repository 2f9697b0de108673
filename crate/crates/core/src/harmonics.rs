//! The action of `Im(O)` on degree-1 harmonics of `S^7` and the Laplacian
//! spectrum of the round 7-sphere.
//!
//! Degree-1 harmonics are the restrictions of linear functionals
//! `p -> <a, p>` on `R^8`. A vector field `X_x` acts on such a functional
//! through the transpose of its translation matrix, so every operator here
//! is an exact 8x8 matrix with entries in `{-1, 0, 1}` (up to the bracket
//! scale of the chosen convention).

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{builtin, AlgebraSpec, FULL_COMMUTATOR_SCALE, QUATERNION_UNITS};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linop::{self, LinOp, Vector};
use crate::octonion::Octonion;

/// Pairing of vector field and tangent bracket used to build the action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ActionConvention {
    /// Field of the left-translation flow `p -> exp(tx) p` with the
    /// half-commutator bracket.
    #[serde(rename = "half-left")]
    HalfLeft,
    /// Field of the right-translation flow `p -> p exp(tx)` with the plain
    /// commutator. Translations of an associative algebra then represent
    /// the bracket exactly.
    #[default]
    #[serde(rename = "standard-right")]
    StandardRight,
}

impl ActionConvention {
    pub fn label(self) -> &'static str {
        match self {
            ActionConvention::HalfLeft => "half-left",
            ActionConvention::StandardRight => "standard-right",
        }
    }

    /// Factor applied to the half-commutator bracket.
    pub fn bracket_scale(self) -> f64 {
        match self {
            ActionConvention::HalfLeft => 1.0,
            ActionConvention::StandardRight => FULL_COMMUTATOR_SCALE,
        }
    }
}

impl FromStr for ActionConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "half-left" => Ok(ActionConvention::HalfLeft),
            "standard-right" => Ok(ActionConvention::StandardRight),
            other => Err(Error::UnknownConvention(other.to_string())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenspaceAction {
    pi: Vec<LinOp>,
    convention: ActionConvention,
    /// Half-commutator algebra of the generators.
    base: AlgebraSpec,
}

fn translation_matrix(unit: usize, convention: ActionConvention, coords: &[usize]) -> LinOp {
    let u = Octonion::basis(unit);
    let full = match convention {
        ActionConvention::HalfLeft => u.left_mul_matrix(),
        ActionConvention::StandardRight => u.right_mul_matrix(),
    };
    let n = coords.len();
    // Functionals transform by the transpose.
    LinOp::from_fn(n, n, |r, c| full[coords[c]][coords[r]])
}

impl EigenspaceAction {
    /// The octonion action on the 8-dimensional degree-1 eigenspace.
    pub fn octonion(convention: ActionConvention) -> Self {
        let coords: Vec<usize> = (0..8).collect();
        EigenspaceAction {
            pi: (1..8).map(|u| translation_matrix(u, convention, &coords)).collect(),
            convention,
            base: builtin("octonion").expect("octonion builtin"),
        }
    }

    /// The same construction for the unit quaternions `S^3 ⊂ H`, with `H`
    /// realised as `span{1, e1, e2, e4}`. Used as the associative calibration.
    pub fn quaternion(convention: ActionConvention) -> Self {
        let coords = [0, QUATERNION_UNITS[0], QUATERNION_UNITS[1], QUATERNION_UNITS[2]];
        EigenspaceAction {
            pi: QUATERNION_UNITS.iter().map(|&u| translation_matrix(u, convention, &coords)).collect(),
            convention,
            base: builtin("im_quaternion").expect("im_quaternion builtin"),
        }
    }

    pub fn dim(&self) -> usize {
        self.pi[0].nrows()
    }

    pub fn generators(&self) -> &[LinOp] {
        &self.pi
    }

    pub fn convention(&self) -> ActionConvention {
        self.convention
    }

    pub fn base(&self) -> &AlgebraSpec {
        &self.base
    }

    /// Bracket of the convention in force.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        Ok(self.base.bracket(x, y)? * self.convention.bracket_scale())
    }

    /// Jacobian of the convention's bracket.
    pub fn jacobian(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
        Ok(self.base.jacobian(x, y, z)? * self.convention.bracket_scale().powi(2))
    }

    pub fn pi(&self, x: &Vector) -> Result<LinOp> {
        if x.len() != self.pi.len() {
            return Err(Error::DimensionMismatch { expected: self.pi.len(), found: x.len() });
        }
        let n = self.dim();
        Ok(self.pi.iter().zip(x.iter()).fold(LinOp::zeros(n, n), |acc, (p, c)| acc + p * *c))
    }

    /// `T(x,y) = [π x, π y] - π([x,y])`.
    pub fn defect_t(&self, x: &Vector, y: &Vector) -> Result<LinOp> {
        Ok(linop::commutator(&self.pi(x)?, &self.pi(y)?) - self.pi(&self.bracket(x, y)?)?)
    }

    /// Cyclic coboundary `Σ [π x, T(y,z)] - Σ T([x,y], z)`.
    pub fn delta_t(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<LinOp> {
        let mut out = LinOp::zeros(self.dim(), self.dim());
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            out += linop::commutator(&self.pi(a)?, &self.defect_t(b, c)?);
            out -= self.defect_t(&self.bracket(a, b)?, c)?;
        }
        Ok(out)
    }

    /// `π(J(x,y,z))` for the convention's bracket.
    pub fn pi_of_jacobian(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<LinOp> {
        self.pi(&self.jacobian(x, y, z)?)
    }
}

pub fn build_action(convention: &str) -> Result<EigenspaceAction> {
    Ok(EigenspaceAction::octonion(convention.parse()?))
}

/// `-Σ π(e_i)²`.
pub fn casimir(action: &EigenspaceAction) -> LinOp {
    let n = action.dim();
    -action.generators().iter().fold(LinOp::zeros(n, n), |acc, p| acc + p * p)
}

/// The integer `c` with `casimir(action) == c I` entry for entry, if any.
pub fn casimir_scalar(action: &EigenspaceAction) -> Option<i64> {
    let c = casimir(action);
    let n = c.nrows();
    let value = c[(0, 0)];
    if value.fract() != 0.0 {
        return None;
    }
    let exact = (0..n).all(|r| (0..n).all(|col| c[(r, col)] == if r == col { value } else { 0.0 }));
    exact.then_some(value as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructuralConstant {
    /// `max ‖T(e_i,e_j)‖ / ‖S(e_i,e_j)‖` over pairs with `S != 0`; 0 if none.
    pub ratio: f64,
    pub max_t_norm: f64,
    pub max_s_norm: f64,
}

pub fn structural_constant(action: &EigenspaceAction) -> Result<StructuralConstant> {
    let d = action.base().dim();
    let mut out = StructuralConstant { ratio: 0.0, max_t_norm: 0.0, max_s_norm: 0.0 };
    for i in 0..d {
        for j in (i + 1)..d {
            let (x, y) = (action.base().basis(i), action.base().basis(j));
            let (t, s) = pair_norms(action, &x, &y)?;
            out.max_t_norm = out.max_t_norm.max(t);
            out.max_s_norm = out.max_s_norm.max(s);
            if s > 0.0 {
                out.ratio = out.ratio.max(t / s);
            }
        }
    }
    Ok(out)
}

/// `(‖T(x,y)‖_op, ‖S(x,y)‖_op)`.
pub fn pair_norms(action: &EigenspaceAction, x: &Vector, y: &Vector) -> Result<(f64, f64)> {
    let t = linop::op_norm(&action.defect_t(x, y)?);
    let s = action.base().op_norm(&action.base().defect_s(x, y)?);
    Ok((t, s))
}

/// Comparison of a measured quantity with a claimed value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimComparison {
    pub quantity: String,
    pub convention: String,
    pub measured: f64,
    pub claimed: f64,
    /// `measured / claimed`; a factor of 2 or 1/2 points at bracket normalisation.
    pub ratio: f64,
    pub note: String,
}

pub fn compare_claims(action: &EigenspaceAction) -> Result<Vec<ClaimComparison>> {
    let x = action.base().basis(0);
    let y = action.base().basis(1);
    let t = linop::op_norm(&action.defect_t(&x, &y)?);
    let c = structural_constant(action)?.ratio;
    let note = |r: f64| {
        if (r - 1.0).abs() < 1e-9 {
            "matches".to_string()
        } else if (r - 2.0).abs() < 1e-9 || (r - 0.5).abs() < 1e-9 {
            "off by a factor of 2 (bracket normalisation)".to_string()
        } else {
            format!("differs by factor {r:.6}")
        }
    };
    Ok(vec![
        ClaimComparison {
            quantity: "norm T(e1,e2)".into(),
            convention: action.convention().label().into(),
            measured: t,
            claimed: 2.0,
            ratio: t / 2.0,
            note: note(t / 2.0),
        },
        ClaimComparison {
            quantity: "structural constant C".into(),
            convention: action.convention().label().into(),
            measured: c,
            claimed: 1.0,
            ratio: c,
            note: note(c),
        },
    ])
}

/// `k (k + 6)`, the `k`-th eigenvalue of the round Laplacian on `S^7`.
pub fn laplacian_eigenvalue(k: i64) -> Result<f64> {
    if k < 0 {
        return Err(Error::NegativeDegree(k));
    }
    Ok((k * (k + 6)) as f64)
}

pub fn binomial(n: i64, r: i64) -> u64 {
    if r < 0 || n < r {
        return 0;
    }
    let r = r.min(n - r) as u64;
    (0..r).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// `C(k+6, 6) - C(k+4, 6)`, the multiplicity formula quoted in the literature.
pub fn binomial_multiplicity(k: i64) -> Result<u64> {
    if k < 0 {
        return Err(Error::NegativeDegree(k));
    }
    Ok(binomial(k + 6, 6) - binomial(k + 4, 6))
}

/// `C(k+7, 7) - C(k+5, 7)`, the dimension of degree-k harmonics in 8 variables.
pub fn harmonic_dimension_closed_form(k: i64) -> Result<u64> {
    if k < 0 {
        return Err(Error::NegativeDegree(k));
    }
    Ok(binomial(k + 7, 7) - binomial(k + 5, 7))
}

const VARS: usize = 8;
const PRIMES: [u64; 2] = [(1 << 61) - 1, 4_611_686_018_427_387_847];

fn monomials(degree: usize) -> Vec<[u8; VARS]> {
    fn rec(pos: usize, left: usize, cur: &mut [u8; VARS], out: &mut Vec<[u8; VARS]>) {
        if pos == VARS - 1 {
            cur[pos] = left as u8;
            out.push(*cur);
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e as u8;
            rec(pos + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, degree, &mut [0; VARS], &mut out);
    out
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let f = mul_mod(f, inv, p);
            for (v, &pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                if pv != 0 {
                    *v = (*v + p - mul_mod(f, pv, p)) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Dimension of the kernel of the flat Laplacian on homogeneous degree-`k`
/// polynomials in 8 variables, by rank–nullity on the monomial basis.
///
/// The rank is computed exactly modulo large primes. A rank mod `p` never
/// exceeds the rational rank, so hitting the row count certifies it.
pub fn multiplicity_oracle(k: i64) -> Result<u64> {
    if k < 0 {
        return Err(Error::NegativeDegree(k));
    }
    let k = k as usize;
    let domain = monomials(k);
    if k < 2 {
        return Ok(domain.len() as u64);
    }
    let target = monomials(k - 2);
    let index: HashMap<[u8; VARS], usize> = target.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut best = 0;
    for p in PRIMES {
        let mut rows = vec![vec![0u64; domain.len()]; target.len()];
        for (c, m) in domain.iter().enumerate() {
            for v in 0..VARS {
                let a = m[v] as u64;
                if a >= 2 {
                    let mut reduced = *m;
                    reduced[v] -= 2;
                    rows[index[&reduced]][c] = (a * (a - 1)) % p;
                }
            }
        }
        best = best.max(rank_mod(rows, p));
        if best == target.len() {
            break;
        }
    }
    Ok((domain.len() - best) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaplacianRow {
    pub k: u32,
    pub lambda: f64,
    pub mult_oracle: u64,
    pub mult_paper: u64,
    pub mismatch: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaplacianTable {
    pub rows: Vec<LaplacianRow>,
}

pub const LAPLACIAN_CSV_HEADER: &str = "k,lambda,mult_oracle,mult_paper,mismatch";

impl LaplacianTable {
    pub fn to_csv(&self) -> String {
        let mut out = format!("{LAPLACIAN_CSV_HEADER}\n");
        for r in &self.rows {
            writeln!(out, "{},{},{},{},{}", r.k, r.lambda, r.mult_oracle, r.mult_paper, r.mismatch).unwrap();
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h.trim() == LAPLACIAN_CSV_HEADER => {}
            other => return Err(Error::Parse(format!("bad laplacian header: {other:?}"))),
        }
        let parse_err = |line: &str| Error::Parse(format!("bad laplacian row `{line}`"));
        let rows = lines
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                let f: Vec<&str> = line.split(',').map(str::trim).collect();
                if f.len() != 5 {
                    return Err(parse_err(line));
                }
                let row = LaplacianRow {
                    k: f[0].parse().map_err(|_| parse_err(line))?,
                    lambda: f[1].parse().map_err(|_| parse_err(line))?,
                    mult_oracle: f[2].parse().map_err(|_| parse_err(line))?,
                    mult_paper: f[3].parse().map_err(|_| parse_err(line))?,
                    mismatch: f[4].parse().map_err(|_| parse_err(line))?,
                };
                let k = row.k as f64;
                if row.lambda != k * (k + 6.0) || row.mismatch != (row.mult_oracle != row.mult_paper) {
                    return Err(parse_err(line));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LaplacianTable { rows })
    }
}

/// Rows `k = 0..=k_max`, one kernel computation per degree under `exec`.
pub fn laplacian_table(k_max: i64, exec: Exec) -> Result<LaplacianTable> {
    if k_max < 0 {
        return Err(Error::NegativeDegree(k_max));
    }
    let rows = exec.map(k_max as usize + 1, |k| {
        let k = k as i64;
        let mult_oracle = multiplicity_oracle(k).expect("k is nonnegative");
        let mult_paper = binomial_multiplicity(k).expect("k is nonnegative");
        LaplacianRow {
            k: k as u32,
            lambda: laplacian_eigenvalue(k).expect("k is nonnegative"),
            mult_oracle,
            mult_paper,
            mismatch: mult_oracle != mult_paper,
        }
    });
    Ok(LaplacianTable { rows })
}

/// Truncated trace `Σ_{k <= k_max} f(λ_k) · mult(k)` with oracle multiplicities.
pub fn spectral_invariant<F>(f: F, k_max: i64, exec: Exec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let table = laplacian_table(k_max, exec)?;
    Ok(table.rows.iter().map(|r| f(r.lambda) * r.mult_oracle as f64).sum())
}
