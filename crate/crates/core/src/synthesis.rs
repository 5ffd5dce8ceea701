//! The order-unit space `A` spanned by an event system under a finite list of
//! states, the conditioning projections `Uₑ` on it, and the product
//! `x∘y = T_y x` with `Tₑ = ½(I + Uₑ − Uₑ′)`.
//!
//! `A` is the dual of the span of the generator states. Elements are stored
//! in coordinates over `π(b₁), …, π(b_d)` for a maximal independent set of
//! events `bᵢ`; an element is identified with its values `μ̂ⱼ(x)` on the
//! generators, and `d` generators with an invertible value matrix fix the
//! coordinates.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::field::{Field, Rational};
use crate::jordan::JordanElement;
use crate::linalg::{self, dot, LinearMap};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::lueders::{self, DensityState, LuedersError};
use crate::orthospace::{unit_decompositions, EventId, OrthoSpace};
use crate::polytope::{enumerate_vertices_within, HalfSpace};
use crate::statespace::{check_uc2, State, StateError, StatePolytope, UcWitness};

/// Tolerance for floating-point consistency checks inside the construction.
pub const CONSISTENCY_TOL: f64 = 1e-9;
/// Basis budget for enumerating the vertices of `[0, 𝟙]` before sampling.
pub const DENSITY_BASES: usize = 200_000;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SynthesisError {
    #[error("no generator states given")]
    NoStates,
    #[error("generator {index} has {got} values, expected {expected}")]
    Length { index: usize, got: usize, expected: usize },
    #[error("generator {0} does not give the unit event probability one")]
    NotNormalised(usize),
    #[error("the pairing matrix has rank zero")]
    Degenerate,
    #[error("conditional probability of generator {generator} under {event} is not unique")]
    NotUnique { generator: usize, event: EventId, witness: Option<UcWitness> },
    #[error("operator is not determined by the generators: residual {residual:e} for event {event}")]
    Inconsistent { event: EventId, residual: f64 },
    #[error("T symmetry fails for ({e}, {f}): residual {residual:e}")]
    Asymmetric { e: EventId, f: EventId, residual: f64 },
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Lueders(#[from] LuedersError),
}

/// The space `A` with its pairing against the generator states.
#[derive(Clone, Debug)]
pub struct SyntheticSpace<T> {
    n_events: usize,
    unit_event: EventId,
    /// `generators[j][e] = μⱼ(e)`.
    generators: Vec<Vec<T>>,
    basis_events: Vec<EventId>,
    basis_generators: Vec<usize>,
    /// `eval[j][i] = μⱼ(bᵢ)`.
    eval: Vec<Vec<T>>,
    /// Inverse of `eval` restricted to the basis generators.
    solve: Vec<Vec<T>>,
    event_coords: Vec<Vec<T>>,
    pub warnings: Vec<String>,
}

pub fn build_synthetic_space<T: Field>(
    space: &OrthoSpace,
    generators: Vec<Vec<T>>,
) -> Result<SyntheticSpace<T>, SynthesisError> {
    if generators.is_empty() {
        return Err(SynthesisError::NoStates);
    }
    let n = space.len();
    for (index, g) in generators.iter().enumerate() {
        if g.len() != n {
            return Err(SynthesisError::Length { index, got: g.len(), expected: n });
        }
        if !g[space.unit().index()].approx_eq(&T::one()) {
            return Err(SynthesisError::NotNormalised(index));
        }
    }
    let m = generators.len();
    let pairing: Vec<Vec<T>> = (0..n).map(|e| (0..m).map(|j| generators[j][e].clone()).collect()).collect();
    let basis_events: Vec<EventId> = linalg::independent_rows(&pairing, m).into_iter().map(EventId).collect();
    let d = basis_events.len();
    if d == 0 {
        return Err(SynthesisError::Degenerate);
    }
    let eval: Vec<Vec<T>> =
        (0..m).map(|j| basis_events.iter().map(|b| generators[j][b.index()].clone()).collect()).collect();
    let basis_generators = linalg::independent_rows(&eval, d);
    let sub: Vec<Vec<T>> = basis_generators.iter().map(|&j| eval[j].clone()).collect();
    let solve = linalg::inverse(&sub).ok_or(SynthesisError::Degenerate)?;
    let mut out = SyntheticSpace {
        n_events: n,
        unit_event: space.unit(),
        generators,
        basis_events,
        basis_generators,
        eval,
        solve,
        event_coords: Vec::new(),
        warnings: Vec::new(),
    };
    for e in 0..n {
        let values: Vec<T> = (0..m).map(|j| out.generators[j][e].clone()).collect();
        let (c, residual) = out.coordinates_from_values(&values);
        if residual > CONSISTENCY_TOL {
            return Err(SynthesisError::Inconsistent { event: EventId(e), residual });
        }
        out.event_coords.push(c);
    }
    for e in 0..n {
        for f in e + 1..n {
            if out.event_coords[e] == out.event_coords[f] {
                out.warnings.push(format!("states do not separate events {} and {}", space.label(EventId(e)), space.label(EventId(f))));
            }
        }
    }
    Ok(out)
}

impl<T: Field> SyntheticSpace<T> {
    pub fn dim(&self) -> usize {
        self.basis_events.len()
    }

    pub fn n_events(&self) -> usize {
        self.n_events
    }

    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn basis_events(&self) -> &[EventId] {
        &self.basis_events
    }

    pub fn basis_generators(&self) -> &[usize] {
        &self.basis_generators
    }

    /// `μⱼ(e)`.
    pub fn generator_value(&self, j: usize, e: EventId) -> &T {
        &self.generators[j][e.index()]
    }

    /// Coordinates of `π(e)`.
    pub fn coords(&self, e: EventId) -> &[T] {
        &self.event_coords[e.index()]
    }

    /// Coordinates of the order unit `π(𝕀)`.
    pub fn unit(&self) -> &[T] {
        self.coords(self.unit_event)
    }

    pub fn zero_vector(&self) -> Vec<T> {
        vec![T::zero(); self.dim()]
    }

    /// `μ̂ⱼ(x)`.
    pub fn evaluate(&self, j: usize, x: &[T]) -> T {
        dot(&self.eval[j], x)
    }

    pub fn evaluations(&self, x: &[T]) -> Vec<T> {
        (0..self.generators.len()).map(|j| self.evaluate(j, x)).collect()
    }

    /// `sup |μ̂(x)|` over the generators.
    pub fn norm(&self, x: &[T]) -> T {
        self.evaluations(x).into_iter().map(|v| v.abs()).fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// `μ̂(x) ≥ 0` for every generator.
    pub fn is_positive(&self, x: &[T]) -> bool {
        self.evaluations(x).iter().all(|v| v.sign() != std::cmp::Ordering::Less)
    }

    /// The element with the given generator values, and the largest
    /// mismatch on generators outside the solving set.
    pub fn coordinates_from_values(&self, values: &[T]) -> (Vec<T>, f64) {
        let rhs: Vec<T> = self.basis_generators.iter().map(|&j| values[j].clone()).collect();
        let c: Vec<T> = self.solve.iter().map(|row| dot(row, &rhs)).collect();
        let residual =
            (0..self.generators.len()).map(|j| (self.evaluate(j, &c) - values[j].clone()).as_f64().abs()).fold(0.0, f64::max);
        (c, residual)
    }

    /// Combination `Σ tₖ π(eₖ)`.
    pub fn combination(&self, terms: &[(T, EventId)]) -> Vec<T> {
        let mut x = self.zero_vector();
        for (t, e) in terms {
            linalg::axpy(t, self.coords(*e), &mut x);
        }
        x
    }

    /// Regression dump: dimension, basis, pairing and optional `Uₑ` matrices.
    pub fn dump(&self, ue: Option<&UeTable<T>>) -> SyntheticDump {
        let text = |v: &T| v.to_string();
        SyntheticDump {
            dim: self.dim(),
            basis_events: self.basis_events.clone(),
            basis_generators: self.basis_generators.clone(),
            pairing: self.generators.iter().map(|g| g.iter().map(text).collect()).collect(),
            unit: self.unit().iter().map(text).collect(),
            event_coords: self.event_coords.iter().map(|c| c.iter().map(text).collect()).collect(),
            ue: ue
                .map(|t| {
                    t.maps
                        .iter()
                        .map(|u| DumpedMap { event: u.event, matrix: u.matrix.to_rows().iter().map(|r| r.iter().map(text).collect()).collect() })
                        .collect()
                })
                .unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct DumpedMap {
    pub event: EventId,
    pub matrix: Vec<Vec<String>>,
}

/// Serializable snapshot of a synthetic space; numbers are written as text.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct SyntheticDump {
    pub dim: usize,
    pub basis_events: Vec<EventId>,
    pub basis_generators: Vec<usize>,
    /// `pairing[j][e] = μⱼ(e)`.
    pub pairing: Vec<Vec<String>>,
    pub unit: Vec<String>,
    pub event_coords: Vec<Vec<String>>,
    pub ue: Vec<DumpedMap>,
}

/// Supplies the conditional probability of generator `j` under `e`.
pub trait ConditionalOracle<T> {
    /// Values of `μⱼ(·|e)` on every event, or `None` when `μⱼ(e) = 0`.
    fn conditional(&self, generator: usize, e: EventId) -> Result<Option<Vec<T>>, SynthesisError>;
}

/// Conditionals decided by the exact UC2 linear programs.
pub struct LpOracle<'p, 's> {
    pub polytope: &'p StatePolytope<'s>,
    pub states: &'p [State],
}

impl ConditionalOracle<Rational> for LpOracle<'_, '_> {
    fn conditional(&self, generator: usize, e: EventId) -> Result<Option<Vec<Rational>>, SynthesisError> {
        let mu = &self.states[generator];
        if !num::Signed::is_positive(mu.value(e)) {
            return Ok(None);
        }
        let verdict = check_uc2(self.polytope, mu, e)?;
        match verdict.conditional {
            Some(nu) => Ok(Some(nu.values)),
            None => Err(SynthesisError::NotUnique { generator, event: e, witness: verdict.witnesses.into_iter().next() }),
        }
    }
}

/// Closed-form Lüders conditionals `μ(f|e) = μ̂({e,f,e})/μ(e)`.
pub struct LuedersOracle<'a> {
    pub projections: &'a [JordanElement],
    pub states: &'a [DensityState],
}

impl LuedersOracle<'_> {
    /// Generator values `μⱼ(e) = tr(ρⱼ∘pₑ)`.
    pub fn generator_values(&self) -> Vec<Vec<f64>> {
        self.states.iter().map(|s| self.projections.iter().map(|p| s.pairing(p)).collect()).collect()
    }
}

impl ConditionalOracle<f64> for LuedersOracle<'_> {
    fn conditional(&self, generator: usize, e: EventId) -> Result<Option<Vec<f64>>, SynthesisError> {
        let rho = &self.states[generator];
        let p = &self.projections[e.index()];
        if rho.pairing(p) <= lueders::CONDITION_THRESHOLD {
            return Ok(None);
        }
        let c = lueders::condition(rho, p)?;
        Ok(Some(self.projections.iter().map(|f| c.pairing(f)).collect()))
    }
}

/// Synthetic `Uₑ` as a matrix on the coordinates of `A`.
#[derive(Clone)]
pub struct SyntheticUe<T> {
    pub event: EventId,
    pub matrix: LinearMap<T>,
    /// Largest mismatch on generators outside the solving set.
    pub consistency_residual: f64,
}

/// Column `i` of `Uₑ` is the element with generator values `μⱼ(e)·μⱼ(bᵢ|e)`,
/// where a generator with `μⱼ(e) = 0` contributes zero.
pub fn build_synthetic_ue<T: Field>(
    space: &SyntheticSpace<T>,
    e: EventId,
    oracle: &dyn ConditionalOracle<T>,
) -> Result<SyntheticUe<T>, SynthesisError> {
    let (m, d) = (space.n_generators(), space.dim());
    let mut values = vec![vec![T::zero(); m]; d];
    for j in 0..m {
        let Some(cond) = oracle.conditional(j, e)? else { continue };
        let mass = space.generator_value(j, e).clone();
        for (i, b) in space.basis_events.iter().enumerate() {
            values[i][j] = mass.clone() * cond[b.index()].clone();
        }
    }
    let mut cols = Vec::with_capacity(d);
    let mut consistency_residual: f64 = 0.0;
    for v in &values {
        let (c, r) = space.coordinates_from_values(v);
        consistency_residual = consistency_residual.max(r);
        cols.push(c);
    }
    if consistency_residual > CONSISTENCY_TOL {
        return Err(SynthesisError::Inconsistent { event: e, residual: consistency_residual });
    }
    Ok(SyntheticUe { event: e, matrix: LinearMap::from_columns(d, &cols), consistency_residual })
}

/// `Uₑ` for every event, indexed by event.
#[derive(Clone)]
pub struct UeTable<T> {
    pub maps: Vec<SyntheticUe<T>>,
    complements: Vec<EventId>,
}

impl<T: std::fmt::Display> std::fmt::Debug for SyntheticUe<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "U[{}] residual {:e} {:?}", self.event.0, self.consistency_residual, self.matrix)
    }
}

impl<T: std::fmt::Display> std::fmt::Debug for UeTable<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.maps).finish()
    }
}

pub fn build_ue_table<T: Field>(
    space: &SyntheticSpace<T>,
    ortho: &OrthoSpace,
    oracle: &dyn ConditionalOracle<T>,
) -> Result<UeTable<T>, SynthesisError> {
    let maps = ortho.events().map(|e| build_synthetic_ue(space, e, oracle)).collect::<Result<Vec<_>, _>>()?;
    Ok(UeTable { maps, complements: ortho.events().map(|e| ortho.complement(e)).collect() })
}

impl<T: Field> UeTable<T> {
    pub fn ue(&self, e: EventId) -> &LinearMap<T> {
        &self.maps[e.index()].matrix
    }

    /// `Tₑ = ½(I + Uₑ − Uₑ′)`.
    pub fn t_e(&self, e: EventId) -> LinearMap<T> {
        let ue = self.ue(e);
        let uc = self.ue(self.complements[e.index()]);
        LinearMap::identity(ue.n_rows()).add(ue).sub(uc).scale(&T::half())
    }

    /// `Σ tₖ T_{eₖ}` for a primitive element `Σ tₖ π(eₖ)`.
    pub fn t_primitive(&self, terms: &[(T, EventId)]) -> LinearMap<T> {
        let d = self.maps[0].matrix.n_rows();
        terms.iter().fold(LinearMap::zeros(d, d), |acc, (t, e)| acc.add(&self.t_e(*e).scale(t)))
    }
}

/// `‖Tₑπ(f) − T_fπ(e)‖` in the synthetic norm.
pub fn check_t_symmetry<T: Field>(space: &SyntheticSpace<T>, table: &UeTable<T>, e: EventId, f: EventId) -> f64 {
    let a = table.t_e(e).apply(space.coords(f));
    let b = table.t_e(f).apply(space.coords(e));
    space.norm(&linalg::sub_vec(&a, &b)).as_f64()
}

/// Bilinear product on `A` from `x∘π(bⱼ) = T_{bⱼ} x`.
#[derive(Clone, Debug)]
pub struct ReconstructedProduct<T> {
    /// `table[i][j]` = coordinates of `π(bᵢ)∘π(bⱼ)`.
    pub table: Vec<Vec<Vec<T>>>,
    /// Largest `‖Tₑπ(f) − T_fπ(e)‖` over all event pairs.
    pub symmetry_residual: f64,
    /// Largest `‖𝟙∘π(bᵢ) − π(bᵢ)‖`.
    pub unit_residual: f64,
}

impl<T: Field> ReconstructedProduct<T> {
    pub fn product(&self, x: &[T], y: &[T]) -> Vec<T> {
        let d = x.len();
        let mut out = vec![T::zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let w = x[i].clone() * y[j].clone();
                linalg::axpy(&w, &self.table[i][j], &mut out);
            }
        }
        out
    }

    pub fn square(&self, x: &[T]) -> Vec<T> {
        self.product(x, x)
    }

    /// Whether `x∘y = y∘x` holds on the table (exactly for exact fields).
    pub fn is_commutative(&self) -> bool {
        let d = self.table.len();
        (0..d).all(|i| (0..d).all(|j| self.table[i][j].iter().zip(&self.table[j][i]).all(|(a, b)| a.approx_eq(b))))
    }
}

/// Builds the product after checking `Tₑπ(f) = T_fπ(e)` on all event pairs.
pub fn reconstruct_product<T: Field>(
    space: &SyntheticSpace<T>,
    table: &UeTable<T>,
    ortho: &OrthoSpace,
    tol: f64,
) -> Result<ReconstructedProduct<T>, SynthesisError> {
    let mut symmetry_residual: f64 = 0.0;
    let ts: Vec<LinearMap<T>> = ortho.events().map(|e| table.t_e(e)).collect();
    for e in ortho.events() {
        for f in ortho.events().filter(|&f| f > e) {
            let a = ts[e.index()].apply(space.coords(f));
            let b = ts[f.index()].apply(space.coords(e));
            let residual = space.norm(&linalg::sub_vec(&a, &b)).as_f64();
            if residual > tol {
                return Err(SynthesisError::Asymmetric { e, f, residual });
            }
            symmetry_residual = symmetry_residual.max(residual);
        }
    }
    let basis = space.basis_events();
    let prod: Vec<Vec<Vec<T>>> = basis
        .iter()
        .map(|&bi| basis.iter().map(|&bj| ts[bj.index()].apply(space.coords(bi))).collect())
        .collect();
    let unit_t = &ts[space.unit_event.index()];
    let unit_residual = basis
        .iter()
        .map(|&b| space.norm(&linalg::sub_vec(&unit_t.apply(space.coords(b)), space.coords(b))).as_f64())
        .fold(0.0, f64::max);
    Ok(ReconstructedProduct { table: prod, symmetry_residual, unit_residual })
}

/// Orthogonal family with coefficients, `Σ tₖ π(eₖ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Primitive<T> {
    pub terms: Vec<(T, EventId)>,
}

/// Random primitive elements over decompositions of the unit. Coefficients
/// are `k/4` for integers `k ∈ [−8, 8]`, exact in both fields.
pub fn sample_primitives<T: Field>(ortho: &OrthoSpace, count: usize, seed: u64) -> Vec<Primitive<T>> {
    let decomps = unit_decompositions(ortho, 4096).unwrap_or_default();
    if decomps.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = decomps.choose(&mut rng).expect("non-empty");
            Primitive { terms: d.iter().map(|&e| (T::from_ratio(rng.gen_range(-8..=8), 4), e)).collect() }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WellDefinedReport {
    pub comparisons: usize,
    /// Largest `‖T_y x − x∘y‖` between the decomposition-based operator and the table product.
    pub table_vs_decomposition: f64,
    /// Largest `‖T_y x − T_{y*} x‖` for two orthogonal decompositions `y = y*`.
    pub between_decompositions: f64,
}

impl WellDefinedReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.table_vs_decomposition <= tol && self.between_decompositions <= tol
    }
}

/// Tests that `T_y` depends only on `y`: for each sampled primitive `y`, the
/// operator from its decomposition is compared with the bilinear table and
/// with the operator from a second decomposition of the same element (either
/// merging two equal-coefficient events into their sum, or a different
/// decomposition of a multiple of the unit).
pub fn check_well_definedness<T: Field>(
    space: &SyntheticSpace<T>,
    table: &UeTable<T>,
    product: &ReconstructedProduct<T>,
    ortho: &OrthoSpace,
    samples: usize,
    seed: u64,
) -> WellDefinedReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let decomps = unit_decompositions(ortho, 4096).unwrap_or_default();
    let probes: Vec<Vec<T>> = space.basis_events().iter().map(|&b| space.coords(b).to_vec()).collect();
    let mut report = WellDefinedReport { comparisons: 0, table_vs_decomposition: 0.0, between_decompositions: 0.0 };
    let diff = |a: &[T], b: &[T]| space.norm(&linalg::sub_vec(a, b)).as_f64();
    for _ in 0..samples {
        let Some(d) = decomps.choose(&mut rng) else { break };
        let mut terms: Vec<(T, EventId)> = d.iter().map(|&e| (T::from_ratio(rng.gen_range(-8..=8), 4), e)).collect();
        let second: Vec<(T, EventId)> = if terms.len() >= 2 {
            terms[1].0 = terms[0].0.clone();
            let merged = ortho.sum(terms[0].1, terms[1].1).expect("orthogonal family");
            let mut s = vec![(terms[0].0.clone(), merged)];
            s.extend(terms[2..].iter().cloned());
            s
        } else {
            let other = decomps.choose(&mut rng).expect("non-empty");
            let t = terms[0].0.clone();
            other.iter().map(|&e| (t.clone(), e)).collect()
        };
        let y = space.combination(&terms);
        let ty = table.t_primitive(&terms);
        let ty2 = table.t_primitive(&second);
        for x in &probes {
            let a = ty.apply(x);
            report.table_vs_decomposition = report.table_vs_decomposition.max(diff(&a, &product.product(x, &y)));
            report.between_decompositions = report.between_decompositions.max(diff(&a, &ty2.apply(x)));
            report.comparisons += 1;
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JbReconstructionReport {
    pub pairs: usize,
    /// Largest `‖x²∘(x∘y) − x∘(x²∘y)‖`.
    pub jordan_identity: f64,
    /// Largest `|‖y²‖ − ‖y‖²|`.
    pub square_norm: f64,
    /// Smallest `‖x² + y²‖ − ‖x²‖`.
    pub square_sum_slack: f64,
    /// Smallest `‖x‖‖y‖ − ‖x∘y‖`.
    pub product_slack: f64,
    /// Largest `‖x²∘x² − x∘(x∘x²)‖`.
    pub power_associativity: f64,
}

impl JbReconstructionReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.jordan_identity <= tol
            && self.square_norm <= tol
            && self.square_sum_slack >= -tol
            && self.product_slack >= -tol
            && self.power_associativity <= tol
    }
}

/// Norm laws, Jordan identity and power associativity on pairs of elements,
/// all measured in the synthetic sup-norm.
pub fn check_jb_on_reconstruction<T: Field>(
    space: &SyntheticSpace<T>,
    product: &ReconstructedProduct<T>,
    pairs: &[(Vec<T>, Vec<T>)],
) -> JbReconstructionReport {
    let norm = |x: &[T]| space.norm(x).as_f64();
    let mut r = JbReconstructionReport {
        pairs: pairs.len(),
        jordan_identity: 0.0,
        square_norm: 0.0,
        square_sum_slack: f64::INFINITY,
        product_slack: f64::INFINITY,
        power_associativity: 0.0,
    };
    for (x, y) in pairs {
        let x2 = product.square(x);
        let y2 = product.square(y);
        let xy = product.product(x, y);
        let lhs = product.product(&x2, &xy);
        let rhs = product.product(x, &product.product(&x2, y));
        r.jordan_identity = r.jordan_identity.max(norm(&linalg::sub_vec(&lhs, &rhs)));
        let ny = norm(y);
        r.square_norm = r.square_norm.max((norm(&y2) - ny * ny).abs());
        r.square_sum_slack = r.square_sum_slack.min(norm(&linalg::add_vec(&x2, &y2)) - norm(&x2));
        r.product_slack = r.product_slack.min(norm(x) * ny - norm(&xy));
        let x4 = product.square(&x2);
        let x4b = product.product(x, &product.product(x, &x2));
        r.power_associativity = r.power_associativity.max(norm(&linalg::sub_vec(&x4, &x4b)));
    }
    r
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremeCheck {
    pub event: EventId,
    /// Rank of the generator constraints tight at `π(e)` in `0 ≤ μ̂(x) ≤ 1`.
    pub tight_rank: usize,
    /// `π(e)` is a vertex of the synthetic interval `[0, 𝟙]`.
    pub extreme_in_interval: bool,
    /// `π(e)` is not a convex combination of the other events (LP separation).
    pub extreme_in_hull: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub extreme: Vec<ExtremeCheck>,
    /// Vertex count of `[0, 𝟙]` when enumeration fits, else `None`.
    pub interval_vertices: Option<usize>,
    /// Sampled vertices of `[0, 𝟙]` (all of them when enumerated).
    pub samples: usize,
    /// Sampled vertices of `[0, 𝟙]` outside `conv π(E)`.
    pub outside_hull: usize,
    /// `conv π(E) = [0, 𝟙]`, decided exactly when the vertices were enumerated.
    pub hull_equals_interval: Option<bool>,
    pub note: Option<String>,
}

impl DensityReport {
    pub fn all_extreme_in_interval(&self) -> bool {
        self.extreme.iter().all(|c| c.extreme_in_interval)
    }

    pub fn all_extreme_in_hull(&self) -> bool {
        self.extreme.iter().all(|c| c.extreme_in_hull)
    }
}

fn is_tight<T: Field>(v: &T) -> bool {
    v.is_negligible() || v.approx_eq(&T::one())
}

/// Compares `conv π(E)` with the synthetic interval `[0, 𝟙]` and tests each
/// `π(e)` for extremality, both as a vertex of `[0, 𝟙]` and by LP separation
/// from the other events.
pub fn check_density<T: Field>(space: &SyntheticSpace<T>, samples: usize, seed: u64) -> DensityReport {
    let d = space.dim();
    let m = space.n_generators();
    let mut distinct: Vec<EventId> = Vec::new();
    for e in (0..space.n_events).map(EventId) {
        if !distinct.iter().any(|&f| space.coords(f) == space.coords(e)) {
            distinct.push(e);
        }
    }
    let mut extreme = Vec::new();
    for e in (0..space.n_events).map(EventId) {
        let x = space.coords(e);
        let tight: Vec<Vec<T>> =
            (0..m).filter(|&j| is_tight(&space.evaluate(j, x))).map(|j| space.eval[j].clone()).collect();
        let tight_rank = linalg::rank(&tight, d);
        let others: Vec<EventId> = distinct.iter().copied().filter(|&f| space.coords(f) != x).collect();
        let extreme_in_hull = !in_hull(space, &others, x);
        extreme.push(ExtremeCheck { event: e, tight_rank, extreme_in_interval: tight_rank == d, extreme_in_hull });
    }

    let mut rows = Vec::with_capacity(2 * m);
    for j in 0..m {
        rows.push(HalfSpace::new(space.eval[j].iter().map(|v| -v.clone()).collect(), T::zero()));
        rows.push(HalfSpace::new(space.eval[j].clone(), T::one()));
    }
    let (vertices, exact) = match enumerate_vertices_within(&rows, d, DENSITY_BASES) {
        Ok(v) => (v, true),
        Err(_) => (sample_interval_vertices(space, samples, seed), false),
    };
    let outside = vertices.iter().filter(|v| !in_hull(space, &distinct, v)).count();
    let hull_equals_interval = if exact { Some(outside == 0) } else if outside > 0 { Some(false) } else { None };
    let note = match (exact, outside) {
        (true, 0) => None,
        (true, _) => Some(format!("{outside} vertices of [0, 1] lie outside conv(E); density holds only in the limit of larger E")),
        (false, 0) => Some("vertex enumeration exceeded capacity; equality not decided from samples".into()),
        (false, _) => Some(format!("{outside} sampled vertices of [0, 1] lie outside conv(E); density holds only in the limit of larger E")),
    };
    DensityReport {
        extreme,
        interval_vertices: exact.then_some(vertices.len()),
        samples: vertices.len(),
        outside_hull: outside,
        hull_equals_interval,
        note,
    }
}

/// `x ∈ conv{π(f) : f ∈ events}` by a feasibility LP over convex weights.
fn in_hull<T: Field>(space: &SyntheticSpace<T>, events: &[EventId], x: &[T]) -> bool {
    if events.is_empty() {
        return false;
    }
    let k = events.len();
    let mut lp = LinearProgram::new(k);
    lp.push(vec![T::one(); k], Relation::Eq, T::one());
    for i in 0..space.dim() {
        lp.push(events.iter().map(|&f| space.coords(f)[i].clone()).collect(), Relation::Eq, x[i].clone());
    }
    matches!(lp.feasible_point(), LpOutcome::Optimal { .. })
}

/// Vertices of `[0, 𝟙]` maximising seeded random objectives.
fn sample_interval_vertices<T: Field>(space: &SyntheticSpace<T>, samples: usize, seed: u64) -> Vec<Vec<T>> {
    let d = space.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // shift x = z − 𝟙 so that the LP variables are non-negative: z ∈ [0, 2𝟙] in the box sense
    let mut lp = LinearProgram::new(2 * d);
    for j in 0..space.n_generators() {
        let mut row: Vec<T> = space.eval[j].clone();
        row.extend(space.eval[j].iter().map(|v| -v.clone()));
        lp.push(row.clone(), Relation::Ge, T::zero());
        lp.push(row, Relation::Le, T::one());
    }
    let mut out: Vec<Vec<T>> = Vec::new();
    for _ in 0..samples {
        let c: Vec<T> = (0..d).map(|_| T::from_ratio(rng.gen_range(-100..=100), 100)).collect();
        let mut obj = c.clone();
        obj.extend(c.iter().map(|v| -v.clone()));
        if let LpOutcome::Optimal { x, .. } = lp.maximize(&obj) {
            let v: Vec<T> = (0..d).map(|i| x[i].clone() - x[d + i].clone()).collect();
            if !out.iter().any(|o| o.iter().zip(&v).all(|(a, b)| a.approx_eq(b))) {
                out.push(v);
            }
        }
    }
    out
}
