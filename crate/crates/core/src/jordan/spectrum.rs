//! Spectral decomposition into a Jordan frame.
//!
//! Associative coordinates: the hermitian matrix is embedded as a real
//! symmetric matrix of size `k·n` (block `(i, j)` is left multiplication by
//! `a_ij`), diagonalised, and each eigenvalue cluster's projector is pulled
//! back entrywise. The embedding is a *-homomorphism, so the pulled-back
//! projector is the hermitian spectral projection.
//!
//! Albert algebra: eigenvalues are the roots of
//! `λ³ − tr(a)λ² + σ(a)λ − N(a)`, and the idempotent for a simple root `λ` is
//! `(a − λ𝕀)# / tr((a − λ𝕀)#)`.

use nalgebra::{DMatrix, SymmetricEigen};

use super::{Algebra, CoordinateNumber, JordanElement, JordanError, CLUSTER_TOL, SPECTRAL_TOL};

#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Distinct eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Multiplicity (rank of the idempotent) of each value.
    pub multiplicities: Vec<usize>,
    /// Orthogonal idempotents summing to `𝕀`, aligned with `values`.
    pub frame: Vec<JordanElement>,
}

impl Spectrum {
    /// Eigenvalues repeated by multiplicity, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.values
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&v, &m)| std::iter::repeat(v).take(m))
            .collect()
    }

    /// `Σ λᵢ pᵢ`.
    pub fn reconstruct(&self) -> JordanElement {
        let first = &self.frame[0];
        let mut acc = JordanElement::zero(first.algebra(), first.n());
        for (v, p) in self.values.iter().zip(&self.frame) {
            acc = acc.add(&p.scale(*v));
        }
        acc
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    pub fn max_value(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    /// Applies `f` to the eigenvalues: `Σ f(λᵢ) pᵢ`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> JordanElement {
        let first = &self.frame[0];
        let mut acc = JordanElement::zero(first.algebra(), first.n());
        for (v, p) in self.values.iter().zip(&self.frame) {
            acc = acc.add(&p.scale(f(*v)));
        }
        acc
    }
}

/// Roots of the characteristic cubic closer than this are first tried as one
/// repeated eigenvalue.
const ALBERT_MERGE_TOL: f64 = 1e-6;

pub fn spectral_decomposition(a: &JordanElement) -> Result<Spectrum, JordanError> {
    let spectrum = match a.algebra() {
        Algebra::Octonion => albert_spectrum(a, ALBERT_MERGE_TOL).or_else(|_| albert_spectrum(a, CLUSTER_TOL))?,
        _ => associative_spectrum(a),
    };
    let residual = spectrum.reconstruct().sub(a).max_abs();
    if residual > SPECTRAL_TOL {
        return Err(JordanError::Decomposition { residual });
    }
    Ok(spectrum)
}

/// Left-multiplication matrix of `x`: column `c` is `x · e_c`.
fn left_mult(x: &CoordinateNumber) -> Vec<Vec<f64>> {
    let alg = x.algebra();
    let k = alg.dim();
    let mut m = vec![vec![0.0; k]; k];
    for c in 0..k {
        let col = *x * CoordinateNumber::unit(alg, c);
        for r in 0..k {
            m[r][c] = col.coords()[r];
        }
    }
    m
}

fn associative_spectrum(a: &JordanElement) -> Spectrum {
    let alg = a.algebra();
    let (n, k) = (a.n(), alg.dim());
    let size = n * k;
    let mut m = DMatrix::<f64>::zeros(size, size);
    for i in 0..n {
        for j in 0..n {
            let block = left_mult(&a.entry(i, j));
            for r in 0..k {
                for c in 0..k {
                    m[(i * k + r, j * k + c)] = block[r][c];
                }
            }
        }
    }
    // exact symmetry for the solver
    let m = (&m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].partial_cmp(&eig.eigenvalues[y]).unwrap());
    let clusters = cluster(&order.iter().map(|&i| eig.eigenvalues[i]).collect::<Vec<_>>(), CLUSTER_TOL);

    let mut values = Vec::new();
    let mut multiplicities = Vec::new();
    let mut frame = Vec::new();
    for (value, range) in clusters {
        let mut proj = DMatrix::<f64>::zeros(size, size);
        for &idx in &order[range.clone()] {
            let v = eig.eigenvectors.column(idx);
            proj += v * v.transpose();
        }
        let mut p = JordanElement::zero(alg, n);
        for i in 0..n {
            for j in i..n {
                let coords: Vec<f64> = (0..k).map(|r| proj[(i * k + r, j * k)]).collect();
                p.set_entry(i, j, CoordinateNumber::from_coords(alg, &coords).expect("k coordinates"));
            }
        }
        values.push(value);
        multiplicities.push(range.len() / k);
        frame.push(p);
    }
    Spectrum { values, multiplicities, frame }
}

/// Groups sorted values into runs whose consecutive gaps are at most `tol`.
fn cluster(sorted: &[f64], tol: f64) -> Vec<(f64, std::ops::Range<usize>)> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > tol {
            let run = &sorted[start..i];
            out.push((run.iter().sum::<f64>() / run.len() as f64, start..i));
            start = i;
        }
    }
    out
}

fn cubic_roots(trace: f64, sigma: f64, det: f64) -> [f64; 3] {
    // λ³ + bλ² + cλ + d with b = −tr, c = σ, d = −N; substitute λ = y − b/3.
    let (b, c, d) = (-trace, sigma, -det);
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let shift = -b / 3.0;
    let mut roots = if p >= 0.0 {
        [shift; 3]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        [0, 1, 2].map(|k| shift + m * (theta - tau * k as f64).cos())
    };
    let f = |x: f64| ((x - trace) * x + sigma) * x - det;
    let df = |x: f64| (3.0 * x - 2.0 * trace) * x + sigma;
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let slope = df(*r);
            if slope.abs() < 1e-300 {
                break;
            }
            let step = f(*r) / slope;
            if !step.is_finite() || step.abs() > 1e-6 * (1.0 + r.abs()) {
                break;
            }
            *r -= step;
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

fn albert_spectrum(a: &JordanElement, tol: f64) -> Result<Spectrum, JordanError> {
    let id = JordanElement::identity(Algebra::Octonion, 3);
    let roots = cubic_roots(a.trace(), a.sigma(), a.cubic_norm());
    let clusters = cluster(&roots, tol);
    let primitive = |lambda: f64| {
        let s = a.sub(&id.scale(lambda)).sharp();
        let t = s.trace();
        s.scale(1.0 / t)
    };
    let (values, multiplicities, frame) = match clusters.len() {
        1 => (vec![a.trace() / 3.0], vec![3], vec![id]),
        2 => {
            // the repeated root is recovered from the trace, which is exact
            let simple = clusters.iter().position(|(_, r)| r.len() == 1).expect("one simple root");
            let single = clusters[simple].0;
            let double = (a.trace() - single) / 2.0;
            let p = primitive(single);
            let q = id.sub(&p);
            if simple == 0 {
                (vec![single, double], vec![1, 2], vec![p, q])
            } else {
                (vec![double, single], vec![2, 1], vec![q, p])
            }
        }
        _ => {
            let ps: Vec<JordanElement> = roots.iter().map(|&r| primitive(r)).collect();
            (roots.to_vec(), vec![1, 1, 1], ps)
        }
    };
    let spectrum = Spectrum { values, multiplicities, frame };
    let residual = spectrum.reconstruct().sub(a).max_abs();
    if residual > SPECTRAL_TOL || !residual.is_finite() {
        return Err(JordanError::Decomposition { residual });
    }
    Ok(spectrum)
}
