//! Dense linear algebra over any [`Field`].
//!
//! Everything here is small (tens of rows), so plain `Vec<Vec<T>>` storage and
//! textbook elimination with max-magnitude pivoting are enough.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::Serialize;

use crate::field::Field;

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub rows: Vec<Vec<T>>,
    /// Pivot column of each row in `rows`.
    pub pivots: Vec<usize>,
    pub n_cols: usize,
}

/// Computes the reduced row echelon form. Rows that reduce to zero are dropped.
pub fn rref<T: Field>(mut rows: Vec<Vec<T>>, n_cols: usize) -> Echelon<T> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n_cols {
        if r == rows.len() {
            break;
        }
        let mut best = None;
        let mut best_mag = T::zero();
        for (i, row) in rows.iter().enumerate().skip(r) {
            let mag = row[col].abs();
            if !row[col].is_negligible() && (best.is_none() || mag > best_mag) {
                best = Some(i);
                best_mag = mag;
                if T::EXACT {
                    break;
                }
            }
        }
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let inv = T::one() / rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        rows[r][col] = T::one();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_negligible() {
                if i != r {
                    row[col] = T::zero();
                }
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - factor.clone() * pv.clone();
            }
            row[col] = T::zero();
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots, n_cols }
}

pub fn rank<T: Field>(rows: &[Vec<T>], n_cols: usize) -> usize {
    rref(rows.to_vec(), n_cols).pivots.len()
}

/// Solves `a x = b` for some `x` (free variables set to zero).
/// Returns `None` when the system is inconsistent.
pub fn solve<T: Field>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let ech = rref(aug, n + 1);
    if ech.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![T::zero(); n];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = row[n].clone();
    }
    if !T::EXACT {
        let scale = b.iter().map(|v| v.as_f64().abs()).fold(1.0, f64::max);
        let resid = residual(a, &x, b);
        if resid > 1e-8 * scale {
            return None;
        }
    }
    Some(x)
}

fn residual<T: Field>(a: &[Vec<T>], x: &[T], b: &[T]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(row, rhs)| (dot(row, x) - rhs.clone()).as_f64().abs())
        .fold(0.0, f64::max)
}

/// Picks, greedily in index order, a maximal linearly independent subset of
/// `rows`. Returns their indices.
pub fn independent_rows<T: Field>(rows: &[Vec<T>], n_cols: usize) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<T>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (p, b) in &basis {
            if v[*p].is_negligible() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        let pivot = (0..n_cols)
            .filter(|&c| !v[c].is_negligible())
            .max_by(|&a, &b| v[a].abs().partial_cmp(&v[b].abs()).unwrap());
        if let Some(p) = pivot {
            if !T::EXACT {
                let scale = row.iter().map(|x| x.as_f64().abs()).fold(0.0, f64::max);
                if v[p].as_f64().abs() <= 1e-9 * scale.max(1.0) {
                    continue;
                }
            }
            let inv = T::one() / v[p].clone();
            for x in v.iter_mut() {
                *x = x.clone() * inv.clone();
            }
            basis.push((p, v));
            chosen.push(idx);
        }
    }
    chosen
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<T: Field>(m: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = m.len();
    let aug: Vec<Vec<T>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let ech = rref(aug, 2 * n);
    if ech.pivots.len() < n || ech.pivots[n - 1] >= n {
        return None;
    }
    Some(ech.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn axpy<T: Field>(alpha: &T, x: &[T], y: &mut [T]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi = yi.clone() + alpha.clone() * xi.clone();
    }
}

pub fn sub_vec<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn add_vec<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn scale_vec<T: Field>(s: &T, a: &[T]) -> Vec<T> {
    a.iter().map(|x| s.clone() * x.clone()).collect()
}

pub fn max_abs<T: Field>(a: &[T]) -> f64 {
    a.iter().map(|x| x.as_f64().abs()).fold(0.0, f64::max)
}

/// Affine dimension of a point set (rank of differences to the first point).
pub fn affine_dimension<T: Field>(points: &[Vec<T>]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let diffs: Vec<Vec<T>> = points[1..].iter().map(|p| sub_vec(p, first)).collect();
    rank(&diffs, first.len())
}

/// Explicit matrix of a linear operator `R^cols -> R^rows`, stored row-major.
#[derive(Clone, PartialEq, Serialize)]
pub struct LinearMap<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> LinearMap<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LinearMap { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds the map whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        LinearMap { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols, "dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &LinearMap<T>) -> LinearMap<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn add(&self, other: &LinearMap<T>) -> LinearMap<T> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &LinearMap<T>) -> LinearMap<T> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &T) -> LinearMap<T> {
        LinearMap {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| s.clone() * v.clone()).collect(),
        }
    }

    fn zip_with(&self, other: &LinearMap<T>, f: impl Fn(T, T) -> T) -> LinearMap<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        LinearMap {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a.clone(), b.clone())).collect(),
        }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.data)
    }

    pub fn is_zero_map(&self) -> bool {
        self.data.iter().all(Field::is_negligible)
    }
}

impl<T> Index<(usize, usize)> for LinearMap<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for LinearMap<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for LinearMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinearMap({}x{})", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
