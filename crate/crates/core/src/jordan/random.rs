//! Seeded random elements, idempotents and density elements.

use rand::Rng;

use super::{spectral_decomposition, Algebra, CoordinateNumber, HermitianBasis, JordanElement};

/// Hermitian element with every coordinate uniform in `[−1, 1]`.
pub fn hermitian<R: Rng>(rng: &mut R, algebra: Algebra, n: usize) -> JordanElement {
    let basis = HermitianBasis::new(algebra, n);
    let c: Vec<f64> = (0..basis.dim()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    basis.from_coords(&c)
}

/// Rank-one idempotent `v v*` for a random unit vector. For the Albert
/// algebra `v = (x, y, r)` with `x, y` octonions and `r` real, which keeps the
/// entries in an associative subalgebra so that `v v*` is idempotent.
pub fn rank_one<R: Rng>(rng: &mut R, algebra: Algebra, n: usize) -> JordanElement {
    let k = algebra.dim();
    let mut v: Vec<CoordinateNumber> = (0..n)
        .map(|i| {
            let c: Vec<f64> = (0..k)
                .map(|j| if algebra == Algebra::Octonion && i == n - 1 && j > 0 { 0.0 } else { gaussian(rng) })
                .collect();
            CoordinateNumber::from_coords(algebra, &c).expect("k coordinates")
        })
        .collect();
    let norm: f64 = v.iter().map(|x| x.norm()).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x = x.scale(1.0 / norm);
    }
    let mut p = JordanElement::zero(algebra, n);
    for i in 0..n {
        for j in i..n {
            p.set_entry(i, j, v[i] * v[j].conj());
        }
    }
    p
}

/// Random Jordan frame of `n` primitive orthogonal idempotents, taken from
/// the spectral decomposition of a random element.
pub fn frame<R: Rng>(rng: &mut R, algebra: Algebra, n: usize) -> Vec<JordanElement> {
    loop {
        let a = hermitian(rng, algebra, n);
        if let Ok(s) = spectral_decomposition(&a) {
            if s.frame.len() == n {
                return s.frame;
            }
        }
    }
}

/// Random idempotent of the given rank (sum of `rank` members of a random frame).
pub fn projection<R: Rng>(rng: &mut R, algebra: Algebra, n: usize, rank: usize) -> JordanElement {
    assert!(rank <= n, "rank exceeds dimension");
    let f = frame(rng, algebra, n);
    f.iter().take(rank).fold(JordanElement::zero(algebra, n), |acc, p| acc.add(p))
}

/// Random idempotent with rank uniform in `0..=n`.
pub fn any_projection<R: Rng>(rng: &mut R, algebra: Algebra, n: usize) -> JordanElement {
    let rank = rng.gen_range(0..=n);
    projection(rng, algebra, n, rank)
}

/// Random positive element of unit trace: `Σ wᵢ pᵢ` over a random frame
/// with Dirichlet-like weights.
pub fn density<R: Rng>(rng: &mut R, algebra: Algebra, n: usize) -> JordanElement {
    let f = frame(rng, algebra, n);
    let w: Vec<f64> = (0..n).map(|_| -rng.gen_range(f64::EPSILON..1.0f64).ln()).collect();
    let total: f64 = w.iter().sum();
    f.iter().zip(&w).fold(JordanElement::zero(algebra, n), |acc, (p, wi)| acc.add(&p.scale(wi / total)))
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
