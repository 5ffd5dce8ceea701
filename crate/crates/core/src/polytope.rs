//! Vertex enumeration for bounded polytopes `{x : a_i · x <= b_i}`.
//!
//! Vertices are basic feasible points: `dim` linearly independent tight rows.
//! Enumeration walks row subsets depth-first with incremental rank pruning,
//! which is plenty for the low-dimensional state spaces handled here.

use crate::field::Field;
use crate::linalg::{self, dot};

/// Upper bound on the number of returned vertices.
pub const MAX_VERTICES: usize = 1_000_000;
/// Upper bound on the number of full-rank row subsets examined.
pub const MAX_BASES: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CapacityError {
    #[error("vertex enumeration exceeded {0} vertices")]
    TooManyVertices(usize),
    #[error("vertex enumeration exceeded {0} candidate bases")]
    TooManyBases(usize),
}

#[derive(Clone, Debug)]
pub struct HalfSpace<T> {
    pub normal: Vec<T>,
    pub offset: T,
}

impl<T: Field> HalfSpace<T> {
    pub fn new(normal: Vec<T>, offset: T) -> Self {
        HalfSpace { normal, offset }
    }

    pub fn contains(&self, x: &[T]) -> bool {
        let slack = self.offset.clone() - dot(&self.normal, x);
        slack.sign() != std::cmp::Ordering::Less
    }

    pub fn is_tight(&self, x: &[T]) -> bool {
        (self.offset.clone() - dot(&self.normal, x)).is_negligible()
    }
}

/// Removes zero rows (returning `None` if one of them is violated) and exact
/// or near duplicates after normalising by the largest coefficient.
fn normalise<T: Field>(rows: &[HalfSpace<T>]) -> Option<Vec<HalfSpace<T>>> {
    let mut out: Vec<HalfSpace<T>> = Vec::new();
    for h in rows {
        let lead = h
            .normal
            .iter()
            .filter(|v| !v.is_negligible())
            .max_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
            .map(|v| v.abs());
        let Some(lead) = lead else {
            if h.offset.sign() == std::cmp::Ordering::Less {
                return None;
            }
            continue;
        };
        let scaled = HalfSpace::new(
            h.normal.iter().map(|v| v.clone() / lead.clone()).collect(),
            h.offset.clone() / lead,
        );
        let dup = out.iter().position(|o| {
            o.normal.iter().zip(&scaled.normal).all(|(a, b)| a.approx_eq(b))
        });
        match dup {
            Some(i) => {
                if scaled.offset < out[i].offset {
                    out[i].offset = scaled.offset;
                }
            }
            None => out.push(scaled),
        }
    }
    Some(out)
}

/// Enumerates the vertices of a bounded polytope in `R^dim`. The result is
/// deduplicated and sorted lexicographically (by `f64` view, ties by order of
/// discovery).
pub fn enumerate_vertices<T: Field>(
    rows: &[HalfSpace<T>],
    dim: usize,
) -> Result<Vec<Vec<T>>, CapacityError> {
    enumerate_vertices_within(rows, dim, MAX_BASES)
}

/// [`enumerate_vertices`] with a caller-chosen bound on examined bases.
pub fn enumerate_vertices_within<T: Field>(
    rows: &[HalfSpace<T>],
    dim: usize,
    max_bases: usize,
) -> Result<Vec<Vec<T>>, CapacityError> {
    let Some(rows) = normalise(rows) else { return Ok(Vec::new()) };
    if dim == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut search =
        Search { rows: &rows, dim, chosen: Vec::with_capacity(dim), bases: 0, max_bases, vertices: Vec::new() };
    search.descend(0, Vec::new())?;
    let mut vertices = search.vertices;
    vertices.sort_by(|a, b| {
        let af: Vec<f64> = a.iter().map(Field::as_f64).collect();
        let bf: Vec<f64> = b.iter().map(Field::as_f64).collect();
        af.partial_cmp(&bf).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(vertices)
}

struct Search<'a, T> {
    rows: &'a [HalfSpace<T>],
    dim: usize,
    chosen: Vec<usize>,
    bases: usize,
    max_bases: usize,
    vertices: Vec<Vec<T>>,
}

impl<T: Field> Search<'_, T> {
    /// `echelon` holds the chosen normals reduced to (pivot, row) form.
    fn descend(&mut self, start: usize, echelon: Vec<(usize, Vec<T>)>) -> Result<(), CapacityError> {
        if self.chosen.len() == self.dim {
            self.bases += 1;
            if self.bases > self.max_bases {
                return Err(CapacityError::TooManyBases(self.max_bases));
            }
            return self.visit_basis();
        }
        let needed = self.dim - self.chosen.len();
        for i in start..self.rows.len() {
            if self.rows.len() - i < needed {
                break;
            }
            let Some(next) = extend_echelon(&echelon, &self.rows[i].normal) else { continue };
            self.chosen.push(i);
            self.descend(i + 1, next)?;
            self.chosen.pop();
        }
        Ok(())
    }

    fn visit_basis(&mut self) -> Result<(), CapacityError> {
        let a: Vec<Vec<T>> = self.chosen.iter().map(|&i| self.rows[i].normal.clone()).collect();
        let b: Vec<T> = self.chosen.iter().map(|&i| self.rows[i].offset.clone()).collect();
        let Some(x) = linalg::solve(&a, &b) else { return Ok(()) };
        if !self.rows.iter().all(|h| h.contains(&x)) {
            return Ok(());
        }
        // Degenerate vertices are reached from several bases.
        if self.vertices.iter().any(|v| v.iter().zip(&x).all(|(p, q)| p.approx_eq(q))) {
            return Ok(());
        }
        if self.vertices.len() >= MAX_VERTICES {
            return Err(CapacityError::TooManyVertices(MAX_VERTICES));
        }
        self.vertices.push(x);
        Ok(())
    }
}

fn extend_echelon<T: Field>(echelon: &[(usize, Vec<T>)], row: &[T]) -> Option<Vec<(usize, Vec<T>)>> {
    let mut v = row.to_vec();
    for (p, b) in echelon {
        if v[*p].is_negligible() {
            continue;
        }
        let f = v[*p].clone();
        for (x, y) in v.iter_mut().zip(b) {
            *x = x.clone() - f.clone() * y.clone();
        }
    }
    let pivot = (0..v.len())
        .filter(|&c| !v[c].is_negligible())
        .max_by(|&a, &b| v[a].abs().partial_cmp(&v[b].abs()).unwrap())?;
    if !T::EXACT && v[pivot].as_f64().abs() < 1e-9 {
        return None;
    }
    let inv = T::one() / v[pivot].clone();
    for x in v.iter_mut() {
        *x = x.clone() * inv.clone();
    }
    let mut out = echelon.to_vec();
    out.push((pivot, v));
    Some(out)
}
