//! Real octonions with the cyclic Fano-plane multiplication table.
//!
//! Imaginary units `e1..e7` multiply according to the seven oriented lines
//!
//! ```text
//! (1,2,4) (2,3,5) (3,4,6) (4,5,7) (5,6,1) (6,7,2) (7,1,3)
//! ```
//!
//! For each line `(i,j,k)`: `ei*ej = ek`, `ej*ek = ei`, `ek*ei = ej`, and the
//! reversed products pick up a minus sign. Every unit squares to `-1`.
//! This is the index-doubling table `(i, i+1, i+3) mod 7`.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Oriented lines of the Fano plane, 1-based imaginary indices.
pub const FANO_TRIPLES: [(usize, usize, usize); 7] =
    [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)];

/// `PRODUCT_TABLE[i][j] = (sign, k)` with `e_i * e_j = sign * e_k`, where
/// index 0 is the real unit.
pub const PRODUCT_TABLE: [[(i8, u8); 8]; 8] = build_table();

const fn build_table() -> [[(i8, u8); 8]; 8] {
    let mut t = [[(0i8, 0u8); 8]; 8];
    let mut i = 0;
    while i < 8 {
        t[0][i] = (1, i as u8);
        t[i][0] = (1, i as u8);
        if i > 0 {
            t[i][i] = (-1, 0);
        }
        i += 1;
    }
    let mut l = 0;
    while l < 7 {
        let (a, b, c) = FANO_TRIPLES[l];
        let cyc = [(a, b, c), (b, c, a), (c, a, b)];
        let mut r = 0;
        while r < 3 {
            let (p, q, s) = cyc[r];
            t[p][q] = (1, s as u8);
            t[q][p] = (-1, s as u8);
            r += 1;
        }
        l += 1;
    }
    t
}

#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Octonion(pub [f64; 8]);

impl Octonion {
    pub const ZERO: Self = Octonion([0.0; 8]);
    pub const ONE: Self = Octonion([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    pub fn new(c: [f64; 8]) -> Self {
        Octonion(c)
    }

    /// Basis element `e_i`; `i = 0` is the real unit.
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Octonion(c)
    }

    /// Purely imaginary octonion from the seven coefficients of `e1..e7`.
    pub fn imaginary(v: &[f64]) -> Result<Self> {
        if v.len() != 7 {
            return Err(Error::DimensionMismatch { expected: 7, found: v.len() });
        }
        let mut c = [0.0; 8];
        c[1..].copy_from_slice(v);
        Ok(Octonion(c))
    }

    pub fn re(&self) -> f64 {
        self.0[0]
    }

    /// Imaginary coefficients `e1..e7`.
    pub fn im(&self) -> [f64; 7] {
        let mut v = [0.0; 7];
        v.copy_from_slice(&self.0[1..]);
        v
    }

    pub fn conj(&self) -> Self {
        let mut c = self.0.map(|x| -x);
        c[0] = self.0[0];
        Octonion(c)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product `Re(x * conj(y))`.
    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn scale(&self, s: f64) -> Self {
        Octonion(self.0.map(|x| x * s))
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// `(a*b)*c - a*(b*c)`.
    pub fn associator(a: &Self, b: &Self, c: &Self) -> Self {
        (*a * *b) * *c - *a * (*b * *c)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Matrix of `p -> self * p` on the coordinate basis `1, e1..e7`.
    pub fn left_mul_matrix(&self) -> [[f64; 8]; 8] {
        let mut m = [[0.0; 8]; 8];
        for j in 0..8 {
            let col = *self * Octonion::basis(j);
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.0[i];
            }
        }
        m
    }

    /// Matrix of `p -> p * self`.
    pub fn right_mul_matrix(&self) -> [[f64; 8]; 8] {
        let mut m = [[0.0; 8]; 8];
        for j in 0..8 {
            let col = Octonion::basis(j) * *self;
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.0[i];
            }
        }
        m
    }
}

impl Index<usize> for Octonion {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        let mut out = [0.0; 8];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in rhs.0.iter().enumerate() {
                let (sign, k) = PRODUCT_TABLE[i][j];
                out[k as usize] += f64::from(sign) * a * b;
            }
        }
        Octonion(out)
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        c.iter_mut().zip(rhs.0.iter()).for_each(|(a, b)| *a += b);
        Octonion(c)
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        c.iter_mut().zip(rhs.0.iter()).for_each(|(a, b)| *a -= b);
        Octonion(c)
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(self.0.map(|x| -x))
    }
}

impl Mul<f64> for Octonion {
    type Output = Octonion;
    fn mul(self, s: f64) -> Octonion {
        self.scale(s)
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Octonion{:?}", self.0)
    }
}
