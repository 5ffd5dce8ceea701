//! Lüders conditioning `ρ ↦ Uₑρ / tr(ρ∘e)` with `Uₑ = {e,·,e}`, and checks of
//! the operator identities of comparable or orthogonal idempotents, the
//! symmetry condition `Uₑf + Uₑ′f′ = U_f e + U_f′e′`, and the
//! Lattice conditions on projection instances.

use serde::Serialize;

use crate::jordan::{
    is_idempotent, operator_norm, spectral_decomposition, HermitianBasis, JordanElement, JordanError,
};
use crate::linalg::{self, LinearMap};

/// Below this probability conditioning is refused.
pub const CONDITION_THRESHOLD: f64 = 1e-12;
/// Smallest admissible eigenvalue of a density element.
pub const DENSITY_EIGEN_TOL: f64 = 1e-10;
/// Admissible deviation of a density element's trace from 1.
pub const DENSITY_TRACE_TOL: f64 = 1e-12;
/// Idempotence tolerance for inputs to `Uₑ`.
pub const IDEMPOTENT_TOL: f64 = 1e-8;
/// Tolerance for order relations between idempotents.
pub const ORDER_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum LuedersError {
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("not a density element: minimal eigenvalue {min_eigenvalue:e}, trace {trace}")]
    NotDensity { min_eigenvalue: f64, trace: f64 },
    #[error("conditioning undefined: probability {mass:e} is below {CONDITION_THRESHOLD:e}")]
    ZeroProbability { mass: f64 },
    #[error("idempotents are neither comparable nor orthogonal")]
    Unrelated,
    #[error(transparent)]
    Jordan(#[from] JordanError),
}

/// A positive element of unit trace, acting as the state `x ↦ tr(ρ∘x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityState {
    rho: JordanElement,
}

impl DensityState {
    pub fn new(rho: JordanElement) -> Result<Self, LuedersError> {
        let min_eigenvalue = spectral_decomposition(&rho)?.min_value();
        let trace = rho.trace();
        if min_eigenvalue < -DENSITY_EIGEN_TOL || (trace - 1.0).abs() > DENSITY_TRACE_TOL {
            return Err(LuedersError::NotDensity { min_eigenvalue, trace });
        }
        Ok(DensityState { rho })
    }

    /// `𝕀/n`.
    pub fn maximally_mixed(algebra: crate::jordan::Algebra, n: usize) -> Self {
        DensityState { rho: JordanElement::identity(algebra, n).scale(1.0 / n as f64) }
    }

    pub fn rho(&self) -> &JordanElement {
        &self.rho
    }

    /// `μ̂(x) = tr(ρ∘x)`.
    pub fn pairing(&self, x: &JordanElement) -> f64 {
        self.rho.inner(x)
    }
}

pub fn pairing(rho: &DensityState, x: &JordanElement) -> f64 {
    rho.pairing(x)
}

fn require_idempotent(e: &JordanElement) -> Result<(), LuedersError> {
    if is_idempotent(e, IDEMPOTENT_TOL) {
        Ok(())
    } else {
        Err(LuedersError::NotIdempotent)
    }
}

/// `Uₑx = {e,x,e}`.
pub fn u_e(e: &JordanElement, x: &JordanElement) -> Result<JordanElement, LuedersError> {
    require_idempotent(e)?;
    Ok(e.try_triple_product(x, e)?)
}

/// Lüders conditional state `Uₑρ / tr(ρ∘e)`, renormalised to unit trace.
pub fn condition(rho: &DensityState, e: &JordanElement) -> Result<DensityState, LuedersError> {
    let mass = rho.pairing(e);
    if mass <= CONDITION_THRESHOLD {
        return Err(LuedersError::ZeroProbability { mass });
    }
    let out = u_e(e, &rho.rho)?.scale(1.0 / mass);
    let t = out.trace();
    Ok(DensityState { rho: out.scale(1.0 / t) })
}

/// `μ(f|e) = μ̂({e,f,e}) / μ(e)`.
pub fn conditional_probability(rho: &DensityState, e: &JordanElement, f: &JordanElement) -> Result<f64, LuedersError> {
    let mass = rho.pairing(e);
    if mass <= CONDITION_THRESHOLD {
        return Err(LuedersError::ZeroProbability { mass });
    }
    Ok(rho.pairing(&u_e(e, f)?) / mass)
}

/// Matrix of a linear operator on the hermitian space in the coordinates of `basis`.
pub fn operator_matrix(basis: &HermitianBasis, op: impl Fn(&JordanElement) -> JordanElement) -> LinearMap<f64> {
    let cols: Vec<Vec<f64>> = basis.elements().iter().map(|b| basis.coords(&op(b))).collect();
    LinearMap::from_columns(basis.dim(), &cols)
}

/// `Uₑ` together with its matrix on the real basis of the hermitian space.
#[derive(Clone, Debug)]
pub struct UeMap {
    e: JordanElement,
    basis: HermitianBasis,
    matrix: LinearMap<f64>,
}

impl UeMap {
    pub fn new(e: &JordanElement) -> Result<Self, LuedersError> {
        require_idempotent(e)?;
        let basis = HermitianBasis::new(e.algebra(), e.n());
        let matrix = operator_matrix(&basis, |x| e.triple_product(x, e));
        Ok(UeMap { e: e.clone(), basis, matrix })
    }

    pub fn e(&self) -> &JordanElement {
        &self.e
    }

    pub fn basis(&self) -> &HermitianBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &LinearMap<f64> {
        &self.matrix
    }

    pub fn apply(&self, x: &JordanElement) -> JordanElement {
        self.e.triple_product(x, &self.e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `e ≤ f`.
    Below,
    /// `e∘f = 0`.
    Orthogonal,
}

/// `e ≤ f` for idempotents, i.e. `f − e ≥ 0`.
pub fn is_below(e: &JordanElement, f: &JordanElement) -> Result<bool, LuedersError> {
    Ok(spectral_decomposition(&f.sub(e))?.min_value() >= -ORDER_TOL)
}

pub fn is_orthogonal(e: &JordanElement, f: &JordanElement) -> bool {
    e.jordan_product(f).max_abs() <= ORDER_TOL
}

/// Residuals of the four operator identities for a comparable or orthogonal pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompatibilityReport {
    pub relation: Relation,
    /// `‖Uₑf − e‖` (below) or `‖Uₑf‖` (orthogonal).
    pub ue_f: f64,
    /// `‖U_f e − e‖` or `‖U_f e‖`.
    pub uf_e: f64,
    /// `‖UₑU_f − Uₑ‖` or `‖UₑU_f‖`, entrywise on the basis matrices.
    pub ue_uf: f64,
    /// `‖U_fUₑ − Uₑ‖` or `‖U_fUₑ‖`.
    pub uf_ue: f64,
}

impl CompatibilityReport {
    pub fn max_residual(&self) -> f64 {
        self.ue_f.max(self.uf_e).max(self.ue_uf).max(self.uf_ue)
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

pub fn check_compatibility(e: &JordanElement, f: &JordanElement) -> Result<CompatibilityReport, LuedersError> {
    let ue = UeMap::new(e)?;
    let uf = UeMap::new(f)?;
    let relation = if is_below(e, f)? {
        Relation::Below
    } else if is_orthogonal(e, f) {
        Relation::Orthogonal
    } else {
        return Err(LuedersError::Unrelated);
    };
    let ue_uf = ue.matrix.compose(&uf.matrix);
    let uf_ue = uf.matrix.compose(&ue.matrix);
    let zero = JordanElement::zero(e.algebra(), e.n());
    let (target_el, target_map) = match relation {
        Relation::Below => (e.clone(), ue.matrix.clone()),
        Relation::Orthogonal => (zero, LinearMap::zeros(ue.matrix.n_rows(), ue.matrix.n_cols())),
    };
    Ok(CompatibilityReport {
        relation,
        ue_f: ue.apply(f).max_abs_diff(&target_el),
        uf_e: uf.apply(e).max_abs_diff(&target_el),
        ue_uf: ue_uf.sub(&target_map).max_abs(),
        uf_ue: uf_ue.sub(&target_map).max_abs(),
    })
}

/// `‖{e,f,e} + {e′,f′,e′} − {f,e,f} − {f′,e′,f′}‖` in operator norm.
pub fn check_a1(e: &JordanElement, f: &JordanElement) -> Result<f64, LuedersError> {
    let (lhs, rhs) = a1_sides(e, f)?;
    Ok(operator_norm(&lhs.sub(&rhs))?)
}

/// Both sides `Uₑf + Uₑ′f′` and `U_f e + U_f′e′`.
pub fn a1_sides(e: &JordanElement, f: &JordanElement) -> Result<(JordanElement, JordanElement), LuedersError> {
    require_idempotent(e)?;
    require_idempotent(f)?;
    let id = JordanElement::identity(e.algebra(), e.n());
    let (ec, fc) = (id.sub(e), id.sub(f));
    let lhs = e.try_triple_product(f, e)?.add(&ec.triple_product(&fc, &ec));
    let rhs = f.triple_product(e, f).add(&fc.triple_product(&ec, &fc));
    Ok((lhs, rhs))
}

/// Largest `‖(Uₑ − Uₑ′)(2p − 𝕀)‖` over the given idempotents `p`.
pub fn complement_gap(e: &JordanElement, projections: &[JordanElement]) -> Result<f64, LuedersError> {
    let id = JordanElement::identity(e.algebra(), e.n());
    let ue = UeMap::new(e)?;
    let uc = UeMap::new(&id.sub(e))?;
    let mut worst: f64 = 0.0;
    for p in projections {
        let x = p.scale(2.0).sub(&id);
        worst = worst.max(operator_norm(&ue.apply(&x).sub(&uc.apply(&x)))?);
    }
    Ok(worst)
}

/// Positive elements among `samples` with `Uₑx = 0` but `Uₑ′x ≠ x`.
pub fn quasicomplement_violations(
    e: &JordanElement,
    samples: &[JordanElement],
    tol: f64,
) -> Result<Vec<JordanElement>, LuedersError> {
    let id = JordanElement::identity(e.algebra(), e.n());
    let ue = UeMap::new(e)?;
    let uc = UeMap::new(&id.sub(e))?;
    let mut out = Vec::new();
    for x in samples {
        if spectral_decomposition(x)?.min_value() < -tol {
            continue;
        }
        if ue.apply(x).max_abs() <= tol && uc.apply(x).max_abs_diff(x) > tol {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// Event set of a projection instance.
#[derive(Clone, Debug)]
pub enum Lattice {
    /// Every idempotent of the algebra.
    Full,
    /// An explicit finite list.
    Listed(Vec<JordanElement>),
}

#[derive(Clone, Debug)]
pub struct ProjectionInstance {
    pub algebra: crate::jordan::Algebra,
    pub n: usize,
    pub lattice: Lattice,
    pub states: Vec<DensityState>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionResult {
    pub passed: bool,
    pub detail: String,
}

impl ConditionResult {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        ConditionResult { passed, detail: detail.into() }
    }
}

/// Per-event checks of the projection condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EventCheck {
    pub index: usize,
    /// `‖Uₑ𝕀 − e‖`.
    pub unit_residual: f64,
    /// Smallest eigenvalue of `Uₑx` over the positive sample.
    pub min_positive_eigenvalue: f64,
    /// Largest distance of a column of `Uₑ` from the span of `{f ∈ E : f ≤ e}`
    /// (or, for the full lattice, of a spectral piece of `Uₑq` from being `≤ e`).
    pub range_residual: f64,
    /// Largest trace-norm `‖ρ − Uₑρ‖` over states with `μ(e) = 1`.
    pub invariance_residual: f64,
    pub invariance_states: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeReport {
    pub unit_in_e: ConditionResult,
    pub complements: ConditionResult,
    pub triple_sums: ConditionResult,
    pub span: ConditionResult,
    pub extension: ConditionResult,
    pub events: Vec<EventCheck>,
    pub caveat: Option<String>,
    pub tol: f64,
}

impl LatticeReport {
    pub fn projection_condition_holds(&self) -> bool {
        self.events.iter().all(|c| {
            c.unit_residual <= self.tol
                && c.min_positive_eigenvalue >= -self.tol
                && c.range_residual <= self.tol
                && c.invariance_residual <= self.tol
        })
    }

    pub fn passed(&self) -> bool {
        [&self.unit_in_e, &self.complements, &self.triple_sums, &self.span, &self.extension]
            .iter()
            .all(|c| c.passed)
            && self.projection_condition_holds()
    }
}

fn trace_norm(x: &JordanElement) -> Result<f64, LuedersError> {
    let s = spectral_decomposition(x)?;
    Ok(s.values.iter().zip(&s.multiplicities).map(|(v, m)| v.abs() * *m as f64).sum())
}

/// Checks the closure conditions, the span and extension condition, and the
/// projection condition (`Uₑ𝕀 = e`, positivity, range, invariance) on an instance.
/// For the full lattice the closure conditions are evaluated on the spanning
/// sample with membership meaning idempotence.
pub fn check_projection_lattice(instance: &ProjectionInstance, tol: f64) -> Result<LatticeReport, LuedersError> {
    let (alg, n) = (instance.algebra, instance.n);
    let basis = HermitianBasis::new(alg, n);
    let id = JordanElement::identity(alg, n);
    let spanning = basis.rank_one_spanning_set();
    let (events, caveat): (Vec<JordanElement>, Option<String>) = match &instance.lattice {
        Lattice::Listed(list) => (
            list.clone(),
            Some("range condition checked against the listed events below e, not the full lattice".into()),
        ),
        Lattice::Full => {
            let mut ev = vec![JordanElement::zero(alg, n), id.clone()];
            ev.extend(spanning.iter().cloned());
            ev.extend(spanning.iter().map(|p| id.sub(p)));
            (ev, None)
        }
    };
    let member = |x: &JordanElement| match &instance.lattice {
        Lattice::Full => is_idempotent(x, tol),
        Lattice::Listed(list) => list.iter().any(|p| p.max_abs_diff(x) <= tol),
    };

    let unit_in_e = ConditionResult::new(member(&id), if member(&id) { "identity present" } else { "identity missing" });
    let missing_complements: Vec<usize> = (0..events.len()).filter(|&i| !member(&id.sub(&events[i]))).collect();
    let complements = ConditionResult::new(
        missing_complements.is_empty(),
        format!("{} events without complement {:?}", missing_complements.len(), missing_complements),
    );
    let mut triple_failures = Vec::new();
    let m = events.len();
    for i in 0..m {
        for j in i + 1..m {
            let ij = events[i].add(&events[j]);
            if !member(&ij) {
                continue;
            }
            for k in j + 1..m {
                if member(&events[i].add(&events[k])) && member(&events[j].add(&events[k])) && !member(&ij.add(&events[k])) {
                    triple_failures.push((i, j, k));
                }
            }
        }
    }
    let triple_sums = ConditionResult::new(
        triple_failures.is_empty(),
        format!("{} triples without sum, first {:?}", triple_failures.len(), triple_failures.first()),
    );

    let coords: Vec<Vec<f64>> = events.iter().map(|e| basis.coords(e)).collect();
    let rank = linalg::rank(&coords, basis.dim());
    let span = ConditionResult::new(rank == basis.dim(), format!("events span {rank} of {} dimensions", basis.dim()));
    let bad_states = instance
        .states
        .iter()
        .filter(|s| events.iter().any(|e| !(-tol..=1.0 + tol).contains(&s.pairing(e))))
        .count();
    let extension = ConditionResult::new(
        bad_states == 0,
        format!("{} states; extension is the trace pairing; {bad_states} give values outside [0, 1]", instance.states.len()),
    );

    let mut positives: Vec<JordanElement> = spanning.clone();
    positives.extend(instance.states.iter().map(|s| s.rho.clone()));
    let mut checks = Vec::with_capacity(m);
    for (index, e) in events.iter().enumerate() {
        let ue = UeMap::new(e)?;
        let unit_residual = ue.apply(&id).max_abs_diff(e);
        let mut min_eig = f64::INFINITY;
        for x in &positives {
            min_eig = min_eig.min(spectral_decomposition(&ue.apply(x))?.min_value());
        }
        let range_residual = match &instance.lattice {
            Lattice::Listed(_) => {
                let below: Vec<Vec<f64>> = events
                    .iter()
                    .filter(|f| is_below(f, e).unwrap_or(false))
                    .map(|f| basis.coords(f))
                    .collect();
                range_distance(&ue.matrix, &below)
            }
            Lattice::Full => {
                let mut worst: f64 = 0.0;
                for q in &spanning {
                    let s = spectral_decomposition(&ue.apply(q))?;
                    for (value, p) in s.values.iter().zip(&s.frame) {
                        if value.abs() <= tol {
                            continue;
                        }
                        // a spectral piece of Uₑq must be an idempotent below e
                        worst = worst.max(spectral_decomposition(&e.sub(p))?.min_value().min(0.0).abs());
                    }
                }
                worst
            }
        };
        let mut invariance_residual: f64 = 0.0;
        let mut invariance_states = 0;
        for s in &instance.states {
            let candidates: Vec<DensityState> = if (s.pairing(e) - 1.0).abs() <= tol {
                vec![s.clone()]
            } else if s.pairing(e) > CONDITION_THRESHOLD {
                vec![condition(s, e)?]
            } else {
                Vec::new()
            };
            for c in candidates {
                invariance_states += 1;
                invariance_residual = invariance_residual.max(trace_norm(&c.rho.sub(&ue.apply(&c.rho)))?);
            }
        }
        checks.push(EventCheck {
            index,
            unit_residual,
            min_positive_eigenvalue: min_eig,
            range_residual,
            invariance_residual,
            invariance_states,
        });
    }
    Ok(LatticeReport { unit_in_e, complements, triple_sums, span, extension, events: checks, caveat, tol })
}

/// Largest residual of expressing a column of `map` in the span of `vectors`.
fn range_distance(map: &LinearMap<f64>, vectors: &[Vec<f64>]) -> f64 {
    let dim = map.n_rows();
    let rows: Vec<Vec<f64>> = (0..dim).map(|r| vectors.iter().map(|v| v[r]).collect()).collect();
    let mut worst: f64 = 0.0;
    for c in 0..map.n_cols() {
        let col: Vec<f64> = (0..dim).map(|r| map[(r, c)]).collect();
        if col.iter().all(|v| v.abs() <= 1e-14) {
            continue;
        }
        if vectors.is_empty() {
            worst = worst.max(linalg::max_abs(&col));
            continue;
        }
        worst = worst.max(match least_squares_residual(&rows, &col) {
            Some(r) => r,
            None => linalg::max_abs(&col),
        });
    }
    worst
}

/// `min ‖A t − b‖∞` approximated through the normal equations.
fn least_squares_residual(a: &[Vec<f64>], b: &[f64]) -> Option<f64> {
    let k = a.first().map_or(0, Vec::len);
    let ata: Vec<Vec<f64>> =
        (0..k).map(|i| (0..k).map(|j| a.iter().map(|r| r[i] * r[j]).sum()).collect()).collect();
    let atb: Vec<f64> = (0..k).map(|i| a.iter().zip(b).map(|(r, bv)| r[i] * bv).sum()).collect();
    let (basis_idx, reduced) = {
        let idx = linalg::independent_rows(&ata, k);
        let red: Vec<Vec<f64>> = idx.iter().map(|&i| idx.iter().map(|&j| ata[i][j]).collect()).collect();
        (idx, red)
    };
    let rhs: Vec<f64> = basis_idx.iter().map(|&i| atb[i]).collect();
    let t = linalg::solve(&reduced, &rhs)?;
    let mut full = vec![0.0; k];
    for (&i, v) in basis_idx.iter().zip(t) {
        full[i] = v;
    }
    Some(a.iter().zip(b).map(|(r, bv)| (linalg::dot(r, &full) - bv).abs()).fold(0.0, f64::max))
}
