//! Real, complex, quaternion and octonion numbers as Cayley–Dickson
//! coordinate vectors.
//!
//! The doubling rule is `(a, b)(c, d) = (ac − d̄b, da + bc̄)`, applied
//! recursively to the halves of the coordinate vector. With this convention
//! the octonion units multiply as follows (row × column, `eᵢ` written `i`):
//!
//! ```text
//!      1   e1  e2  e3  e4  e5  e6  e7
//! e1  e1  -1   e3 -e2  e5 -e4 -e7  e6
//! e2  e2 -e3  -1   e1  e6  e7 -e4 -e5
//! e3  e3  e2 -e1  -1   e7 -e6  e5 -e4
//! e4  e4 -e5 -e6 -e7  -1   e1  e2  e3
//! e5  e5  e4 -e7  e6 -e1  -1  -e3  e2
//! e6  e6  e7  e4 -e5 -e2  e3  -1  -e1
//! e7  e7 -e6  e5  e4 -e3 -e2  e1  -1
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Coordinate algebra of a Jordan matrix algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algebra {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
    #[serde(rename = "H")]
    Quaternion,
    /// Hermitian 3×3 octonion matrices (the Albert algebra).
    #[serde(rename = "O")]
    Octonion,
}

impl Algebra {
    pub const ALL: [Algebra; 4] = [Algebra::Real, Algebra::Complex, Algebra::Quaternion, Algebra::Octonion];

    /// Real dimension of the coordinate algebra.
    pub fn dim(self) -> usize {
        match self {
            Algebra::Real => 1,
            Algebra::Complex => 2,
            Algebra::Quaternion => 4,
            Algebra::Octonion => 8,
        }
    }

    pub fn is_associative(self) -> bool {
        self != Algebra::Octonion
    }

    pub fn tag(self) -> &'static str {
        match self {
            Algebra::Real => "R",
            Algebra::Complex => "C",
            Algebra::Quaternion => "H",
            Algebra::Octonion => "O",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Algebra> {
        match tag {
            "R" => Some(Algebra::Real),
            "C" => Some(Algebra::Complex),
            "H" => Some(Algebra::Quaternion),
            "O" => Some(Algebra::Octonion),
            _ => None,
        }
    }
}

/// An element of ℝ, ℂ, ℍ or 𝕆; unused trailing coordinates are zero.
#[derive(Clone, Copy, PartialEq)]
pub struct CoordinateNumber {
    dim: usize,
    c: [f64; 8],
}

impl CoordinateNumber {
    pub fn zero(algebra: Algebra) -> Self {
        CoordinateNumber { dim: algebra.dim(), c: [0.0; 8] }
    }

    pub fn real(algebra: Algebra, x: f64) -> Self {
        let mut out = Self::zero(algebra);
        out.c[0] = x;
        out
    }

    pub fn one(algebra: Algebra) -> Self {
        Self::real(algebra, 1.0)
    }

    /// Basis unit `e_i` (with `e_0 = 1`).
    pub fn unit(algebra: Algebra, i: usize) -> Self {
        assert!(i < algebra.dim(), "basis index out of range");
        let mut out = Self::zero(algebra);
        out.c[i] = 1.0;
        out
    }

    /// Builds from coordinates; fails if the length is not the algebra's dimension.
    pub fn from_coords(algebra: Algebra, coords: &[f64]) -> Option<Self> {
        if coords.len() != algebra.dim() {
            return None;
        }
        let mut out = Self::zero(algebra);
        out.c[..coords.len()].copy_from_slice(coords);
        Some(out)
    }

    pub fn algebra(&self) -> Algebra {
        match self.dim {
            1 => Algebra::Real,
            2 => Algebra::Complex,
            4 => Algebra::Quaternion,
            _ => Algebra::Octonion,
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.c[..self.dim]
    }

    pub fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.c[..self.dim]
    }

    pub fn re(&self) -> f64 {
        self.c[0]
    }

    pub fn conj(&self) -> Self {
        let mut out = *self;
        for v in out.c[1..self.dim].iter_mut() {
            *v = -*v;
        }
        out
    }

    /// Squared Euclidean norm `x x̄`.
    pub fn norm(&self) -> f64 {
        self.coords().iter().map(|v| v * v).sum()
    }

    pub fn abs(&self) -> f64 {
        self.norm().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        for v in out.c.iter_mut() {
            *v *= s;
        }
        out
    }

    /// Real inner product `Re(x ȳ)`.
    pub fn inner(&self, other: &Self) -> f64 {
        self.coords().iter().zip(other.coords()).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.coords().iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn conj_into(src: &[f64], dst: &mut [f64]) {
    dst.copy_from_slice(src);
    for v in dst[1..].iter_mut() {
        *v = -*v;
    }
}

/// Cayley–Dickson product of two coordinate slices of equal power-of-two length.
fn cd_mul(x: &[f64], y: &[f64], out: &mut [f64]) {
    let n = x.len();
    if n == 1 {
        out[0] = x[0] * y[0];
        return;
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let mut t1 = [0.0; 4];
    let mut t2 = [0.0; 4];
    let mut bar = [0.0; 4];
    // first half: ac − d̄b
    cd_mul(a, c, &mut t1[..h]);
    conj_into(d, &mut bar[..h]);
    cd_mul(&bar[..h], b, &mut t2[..h]);
    for i in 0..h {
        out[i] = t1[i] - t2[i];
    }
    // second half: da + bc̄
    cd_mul(d, a, &mut t1[..h]);
    conj_into(c, &mut bar[..h]);
    cd_mul(b, &bar[..h], &mut t2[..h]);
    for i in 0..h {
        out[h + i] = t1[i] + t2[i];
    }
}

impl Mul for CoordinateNumber {
    type Output = CoordinateNumber;

    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "mixed coordinate algebras");
        let mut out = CoordinateNumber { dim: self.dim, c: [0.0; 8] };
        cd_mul(&self.c[..self.dim], &rhs.c[..self.dim], &mut out.c[..self.dim]);
        out
    }
}

impl Add for CoordinateNumber {
    type Output = CoordinateNumber;

    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        out
    }
}

impl Sub for CoordinateNumber {
    type Output = CoordinateNumber;

    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for (a, b) in out.c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
        out
    }
}

impl Neg for CoordinateNumber {
    type Output = CoordinateNumber;

    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl fmt::Debug for CoordinateNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords())
    }
}

/// Octonion product (Cayley–Dickson convention of this module).
pub fn octonion_multiply(x: &CoordinateNumber, y: &CoordinateNumber) -> CoordinateNumber {
    assert_eq!(x.algebra(), Algebra::Octonion, "octonion expected");
    *x * *y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> CoordinateNumber {
        CoordinateNumber::unit(Algebra::Octonion, i)
    }

    #[test]
    fn complex_and_quaternion_units() {
        let i = CoordinateNumber::unit(Algebra::Complex, 1);
        assert_eq!((i * i).coords(), &[-1.0, 0.0]);
        let (qi, qj, qk) = (
            CoordinateNumber::unit(Algebra::Quaternion, 1),
            CoordinateNumber::unit(Algebra::Quaternion, 2),
            CoordinateNumber::unit(Algebra::Quaternion, 3),
        );
        assert_eq!(qi * qj, qk);
        assert_eq!(qj * qi, -qk);
        assert_eq!(qk * qk, -CoordinateNumber::one(Algebra::Quaternion));
    }

    #[test]
    fn octonion_e1_e2() {
        assert_eq!(octonion_multiply(&e(1), &e(2)), e(3));
        let x = CoordinateNumber::from_coords(Algebra::Octonion, &[0.3, -1.0, 2.0, 0.5, 0.0, 1.5, -0.7, 0.2]).unwrap();
        assert_eq!(x * CoordinateNumber::one(Algebra::Octonion), x);
        let n = x * x.conj();
        assert!((n.re() - x.norm()).abs() < 1e-12);
        assert!(n.coords()[1..].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn documented_table_matches() {
        // row i, column j of the doc-comment table as (sign, index)
        let table: [[(i8, usize); 7]; 7] = [
            [(-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
            [(-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (-1, 4), (-1, 5)],
            [(1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (-1, 4)],
            [(-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 4), (-1, 7), (1, 6), (-1, 1), (-1, 0), (-1, 3), (1, 2)],
            [(1, 7), (1, 4), (-1, 5), (-1, 2), (1, 3), (-1, 0), (-1, 1)],
            [(-1, 6), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1), (-1, 0)],
        ];
        for i in 1..8 {
            for j in 1..8 {
                let (s, k) = table[i - 1][j - 1];
                assert_eq!(e(i) * e(j), e(k).scale(s as f64), "e{i} e{j}");
            }
        }
    }
}
