//! Real coordinates on a hermitian matrix algebra.

use super::{Algebra, CoordinateNumber, JordanElement};

/// Orthogonal real basis: diagonal units `E_ii`, then for each `i < j` and
/// each coordinate unit `u`, the element with `u` at `(i, j)` and `ū` at
/// `(j, i)`. Coordinates are the upper-triangle entries as stored, so
/// `from_coords(coords(x)) == x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianBasis {
    algebra: Algebra,
    n: usize,
}

impl HermitianBasis {
    pub fn new(algebra: Algebra, n: usize) -> Self {
        HermitianBasis { algebra, n }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n + n(n−1)k/2`.
    pub fn dim(&self) -> usize {
        self.n + self.n * (self.n - 1) * self.algebra.dim() / 2
    }

    pub fn coords(&self, x: &JordanElement) -> Vec<f64> {
        let (n, k) = (self.n, self.algebra.dim());
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..n {
            out.push(x.entry(i, i).re());
        }
        for i in 0..n {
            for j in i + 1..n {
                out.extend_from_slice(&x.entry(i, j).coords()[..k]);
            }
        }
        out
    }

    pub fn from_coords(&self, coords: &[f64]) -> JordanElement {
        assert_eq!(coords.len(), self.dim(), "coordinate vector length");
        let (n, k) = (self.n, self.algebra.dim());
        let mut x = JordanElement::zero(self.algebra, n);
        for i in 0..n {
            x.set_entry(i, i, CoordinateNumber::real(self.algebra, coords[i]));
        }
        let mut at = n;
        for i in 0..n {
            for j in i + 1..n {
                let c = CoordinateNumber::from_coords(self.algebra, &coords[at..at + k]).expect("k coordinates");
                x.set_entry(i, j, c);
                at += k;
            }
        }
        x
    }

    pub fn elements(&self) -> Vec<JordanElement> {
        (0..self.dim())
            .map(|i| {
                let mut c = vec![0.0; self.dim()];
                c[i] = 1.0;
                self.from_coords(&c)
            })
            .collect()
    }

    /// Rank-one idempotents whose span is the whole algebra: each `E_ii`,
    /// and `½(E_ii + E_jj + u E_ij + ū E_ji)` for every unit `u`.
    pub fn rank_one_spanning_set(&self) -> Vec<JordanElement> {
        let (n, alg) = (self.n, self.algebra);
        let mut out = Vec::new();
        for i in 0..n {
            let mut d = vec![0.0; n];
            d[i] = 1.0;
            out.push(JordanElement::diagonal(alg, &d));
        }
        for i in 0..n {
            for j in i + 1..n {
                for u in 0..alg.dim() {
                    let mut p = JordanElement::zero(alg, n);
                    p.set_entry(i, i, CoordinateNumber::real(alg, 0.5));
                    p.set_entry(j, j, CoordinateNumber::real(alg, 0.5));
                    p.set_entry(i, j, CoordinateNumber::unit(alg, u).scale(0.5));
                    out.push(p);
                }
            }
        }
        out
    }
}
