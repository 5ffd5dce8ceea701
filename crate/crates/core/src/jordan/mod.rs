//! Euclidean Jordan algebras of hermitian matrices over ℝ, ℂ, ℍ, and the
//! Albert algebra of hermitian 3×3 octonion matrices.
//!
//! All arithmetic is binary64. The Jordan product is `a∘b = ½(ab + ba)`,
//! computed entrywise so that it is bitwise commutative.

mod basis;
mod number;
pub mod random;
mod spectrum;

pub use basis::HermitianBasis;
pub use number::{octonion_multiply, Algebra, CoordinateNumber};
pub use spectrum::{spectral_decomposition, Spectrum};

use std::fmt;

/// Tolerance for algebraic identities.
pub const IDENTITY_TOL: f64 = 1e-8;
/// Tolerance for spectral reconstruction.
pub const SPECTRAL_TOL: f64 = 1e-7;
/// Eigenvalues closer than this are merged into one idempotent.
pub const CLUSTER_TOL: f64 = 1e-9;
/// Hermiticity check on construction.
const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum JordanError {
    #[error("dimension {n} not allowed for algebra {algebra:?}")]
    Dimension { algebra: Algebra, n: usize },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("entry ({i}, {j}) has {got} coordinates, algebra needs {expected}")]
    Coordinates { i: usize, j: usize, expected: usize, got: usize },
    #[error("matrix is not hermitian at ({i}, {j})")]
    NotHermitian { i: usize, j: usize },
    #[error("operands differ in algebra or dimension")]
    Mismatch,
    #[error("spectral reconstruction residual {residual:e} exceeds {SPECTRAL_TOL:e}")]
    Decomposition { residual: f64 },
}

/// A hermitian matrix with entries in a Cayley–Dickson algebra.
#[derive(Clone, PartialEq)]
pub struct JordanElement {
    algebra: Algebra,
    n: usize,
    entries: Vec<CoordinateNumber>,
}

impl JordanElement {
    /// Validates shape and hermiticity. Octonion matrices must be 3×3.
    pub fn new(algebra: Algebra, n: usize, entries: Vec<CoordinateNumber>) -> Result<Self, JordanError> {
        check_dimension(algebra, n)?;
        if entries.len() != n * n {
            return Err(JordanError::EntryCount { expected: n * n, got: entries.len() });
        }
        for i in 0..n {
            for j in 0..n {
                let a = entries[i * n + j];
                if a.algebra() != algebra {
                    return Err(JordanError::Coordinates { i, j, expected: algebra.dim(), got: a.coords().len() });
                }
                if (a - entries[j * n + i].conj()).max_abs() > HERMITIAN_TOL {
                    return Err(JordanError::NotHermitian { i, j });
                }
            }
        }
        let mut out = JordanElement { algebra, n, entries };
        out.symmetrize();
        Ok(out)
    }

    /// Builds from row-major coordinate tuples.
    pub fn from_coordinate_rows(algebra: Algebra, n: usize, entries: &[Vec<f64>]) -> Result<Self, JordanError> {
        if entries.len() != n * n {
            return Err(JordanError::EntryCount { expected: n * n, got: entries.len() });
        }
        let mut out = Vec::with_capacity(n * n);
        for (k, c) in entries.iter().enumerate() {
            let num = CoordinateNumber::from_coords(algebra, c).ok_or(JordanError::Coordinates {
                i: k / n,
                j: k % n,
                expected: algebra.dim(),
                got: c.len(),
            })?;
            out.push(num);
        }
        Self::new(algebra, n, out)
    }

    /// Real symmetric matrix from rows.
    pub fn real(rows: &[Vec<f64>]) -> Result<Self, JordanError> {
        let n = rows.len();
        let entries: Vec<Vec<f64>> = rows.iter().flatten().map(|&v| vec![v]).collect();
        Self::from_coordinate_rows(Algebra::Real, n, &entries)
    }

    /// Complex hermitian matrix from rows of `(re, im)` pairs.
    pub fn complex(rows: &[Vec<(f64, f64)>]) -> Result<Self, JordanError> {
        let n = rows.len();
        let entries: Vec<Vec<f64>> = rows.iter().flatten().map(|&(re, im)| vec![re, im]).collect();
        Self::from_coordinate_rows(Algebra::Complex, n, &entries)
    }

    pub fn zero(algebra: Algebra, n: usize) -> Self {
        JordanElement { algebra, n, entries: vec![CoordinateNumber::zero(algebra); n * n] }
    }

    pub fn identity(algebra: Algebra, n: usize) -> Self {
        Self::diagonal(algebra, &vec![1.0; n])
    }

    pub fn diagonal(algebra: Algebra, values: &[f64]) -> Self {
        let n = values.len();
        let mut out = Self::zero(algebra, n);
        for (i, &v) in values.iter().enumerate() {
            out.entries[i * n + i] = CoordinateNumber::real(algebra, v);
        }
        out
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> CoordinateNumber {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[CoordinateNumber] {
        &self.entries
    }

    /// Sets `(i, j)` and its mirror `(j, i)` to the conjugate.
    pub fn set_entry(&mut self, i: usize, j: usize, value: CoordinateNumber) {
        let n = self.n;
        if i == j {
            self.entries[i * n + i] = CoordinateNumber::real(self.algebra, value.re());
        } else {
            self.entries[i * n + j] = value;
            self.entries[j * n + i] = value.conj();
        }
    }

    fn same_shape(&self, other: &Self) -> Result<(), JordanError> {
        if self.algebra == other.algebra && self.n == other.n {
            Ok(())
        } else {
            Err(JordanError::Mismatch)
        }
    }

    /// Restores exact hermiticity from the upper triangle.
    fn symmetrize(&mut self) {
        let n = self.n;
        for i in 0..n {
            let d = self.entries[i * n + i].re();
            self.entries[i * n + i] = CoordinateNumber::real(self.algebra, d);
            for j in i + 1..n {
                self.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
    }

    fn map2(&self, other: &Self, f: impl Fn(CoordinateNumber, CoordinateNumber) -> CoordinateNumber) -> Self {
        assert!(self.same_shape(other).is_ok(), "operands differ in algebra or dimension");
        JordanElement {
            algebra: self.algebra,
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.map2(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.map2(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        JordanElement { algebra: self.algebra, n: self.n, entries: self.entries.iter().map(|a| a.scale(s)).collect() }
    }

    /// Ordinary matrix product entry `(AB)_{ij}`; not hermitian in general.
    fn product_entry(&self, other: &Self, i: usize, j: usize) -> CoordinateNumber {
        let n = self.n;
        let mut acc = CoordinateNumber::zero(self.algebra);
        for k in 0..n {
            acc = acc + self.entries[i * n + k] * other.entries[k * n + j];
        }
        acc
    }

    /// `½(ab + ba)`.
    pub fn jordan_product(&self, other: &Self) -> Self {
        assert!(self.same_shape(other).is_ok(), "operands differ in algebra or dimension");
        let n = self.n;
        let mut out = Self::zero(self.algebra, n);
        for i in 0..n {
            for j in i..n {
                let v = (self.product_entry(other, i, j) + other.product_entry(self, i, j)).scale(0.5);
                out.set_entry(i, j, v);
            }
        }
        out
    }

    pub fn try_jordan_product(&self, other: &Self) -> Result<Self, JordanError> {
        self.same_shape(other)?;
        Ok(self.jordan_product(other))
    }

    pub fn square(&self) -> Self {
        self.jordan_product(self)
    }

    /// `a^k` by repeated Jordan multiplication (`a^0 = 𝕀`).
    pub fn power(&self, k: usize) -> Self {
        let mut out = Self::identity(self.algebra, self.n);
        for _ in 0..k {
            out = self.jordan_product(&out);
        }
        out
    }

    /// Jordan triple product `{a,b,c} = a∘(b∘c) − b∘(c∘a) + c∘(a∘b)`.
    pub fn triple_product(&self, b: &Self, c: &Self) -> Self {
        let a = self;
        a.jordan_product(&b.jordan_product(c))
            .sub(&b.jordan_product(&c.jordan_product(a)))
            .add(&c.jordan_product(&a.jordan_product(b)))
    }

    pub fn try_triple_product(&self, b: &Self, c: &Self) -> Result<Self, JordanError> {
        self.same_shape(b)?;
        self.same_shape(c)?;
        Ok(self.triple_product(b, c))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.entries[i * self.n + i].re()).sum()
    }

    /// Trace form `tr(a∘b)`, the canonical inner product.
    pub fn inner(&self, other: &Self) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| a.inner(b)).sum()
    }

    /// Norm induced by the trace form; bounds the operator norm from above.
    pub fn frobenius_norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, a| m.max(a.max_abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.same_shape(other).is_err() {
            return f64::INFINITY;
        }
        self.sub(other).max_abs()
    }

    /// Cubic norm of a 3×3 element:
    /// `αβγ − α n(x₂₃) − β n(x₃₁) − γ n(x₁₂) + 2 Re((x₁₂ x₂₃) x₃₁)`.
    pub fn cubic_norm(&self) -> f64 {
        assert_eq!(self.n, 3, "cubic norm is defined for 3×3 elements");
        let (a, b, c) = (self.entry(0, 0).re(), self.entry(1, 1).re(), self.entry(2, 2).re());
        let (x12, x23, x31) = (self.entry(0, 1), self.entry(1, 2), self.entry(2, 0));
        a * b * c - a * x23.norm() - b * x31.norm() - c * x12.norm() + 2.0 * ((x12 * x23) * x31).re()
    }

    /// Second elementary invariant `½((tr a)² − tr(a∘a))`.
    pub fn sigma(&self) -> f64 {
        let t = self.trace();
        0.5 * (t * t - self.square().trace())
    }

    /// Freudenthal adjoint `a# = a² − tr(a) a + σ(a) 𝕀` of a 3×3 element.
    pub fn sharp(&self) -> Self {
        let id = Self::identity(self.algebra, self.n);
        self.square().sub(&self.scale(self.trace())).add(&id.scale(self.sigma()))
    }
}

impl fmt::Debug for JordanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "JordanElement<{}, {}>", self.algebra.tag(), self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{:?}", self.entry(i, j))).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

fn check_dimension(algebra: Algebra, n: usize) -> Result<(), JordanError> {
    let ok = match algebra {
        Algebra::Octonion => n == 3,
        _ => n >= 1,
    };
    if ok {
        Ok(())
    } else {
        Err(JordanError::Dimension { algebra, n })
    }
}

pub fn jordan_product(a: &JordanElement, b: &JordanElement) -> Result<JordanElement, JordanError> {
    a.try_jordan_product(b)
}

pub fn triple_product(a: &JordanElement, b: &JordanElement, c: &JordanElement) -> Result<JordanElement, JordanError> {
    a.try_triple_product(b, c)
}

/// Largest absolute eigenvalue.
pub fn operator_norm(a: &JordanElement) -> Result<f64, JordanError> {
    let s = spectral_decomposition(a)?;
    Ok(s.values.iter().fold(0.0, |m, v| m.max(v.abs())))
}

/// `‖a∘a − a‖ ≤ tol`, measured in the trace-form norm (which dominates the
/// operator norm, so the test is never looser).
pub fn is_idempotent(a: &JordanElement, tol: f64) -> bool {
    a.square().sub(a).frobenius_norm() <= tol
}

/// Outcome of [`check_jb_laws`]. Slacks are non-negative when the inequality
/// holds; residuals are non-negative distances from equality.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct JbLawReport {
    /// `‖a‖‖b‖ − ‖a∘b‖`.
    pub product_slack: f64,
    /// `|‖a²‖ − ‖a‖²|`.
    pub square_residual: f64,
    /// `‖a² + b²‖ − ‖a²‖`.
    pub square_sum_slack: f64,
    /// `‖a²∘(a∘b) − a∘(a²∘b)‖`.
    pub jordan_identity_residual: f64,
}

impl JbLawReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.product_slack >= -tol
            && self.square_residual <= tol
            && self.square_sum_slack >= -tol
            && self.jordan_identity_residual <= tol
    }
}

/// Evaluates the three JB norm laws and the Jordan identity on a pair.
pub fn check_jb_laws(a: &JordanElement, b: &JordanElement) -> Result<JbLawReport, JordanError> {
    a.same_shape(b)?;
    let a2 = a.square();
    let b2 = b.square();
    let na = operator_norm(a)?;
    let nb = operator_norm(b)?;
    let nab = operator_norm(&a.jordan_product(b))?;
    let na2 = operator_norm(&a2)?;
    let nsum = operator_norm(&a2.add(&b2))?;
    let lhs = a2.jordan_product(&a.jordan_product(b));
    let rhs = a.jordan_product(&a2.jordan_product(b));
    let jordan = operator_norm(&lhs.sub(&rhs))?;
    Ok(JbLawReport {
        product_slack: na * nb - nab,
        square_residual: (na2 - na * na).abs(),
        square_sum_slack: nsum - na2,
        jordan_identity_residual: jordan,
    })
}
