//! Observables with finite support, the elements of `A` they represent, and
//! the representability axioms for conditioning and sums.

use serde::Serialize;

use crate::field::Field;
use crate::linalg;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::orthospace::{first_unit_decompositions, EventId, OrthoSpace};
use crate::synthesis::{SyntheticSpace, UeTable};

/// Bound on the number of unit decompositions searched for a resolution.
pub const DECOMPOSITION_LIMIT: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ObservableError {
    #[error("empty support")]
    Empty,
    #[error("event {0} is out of range")]
    UnknownEvent(usize),
    #[error("events {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("events do not sum to the unit")]
    NotUnit,
    #[error("value {0} appears twice")]
    DuplicateValue(String),
}

/// `Σ tₖ π(eₖ)` for pairwise orthogonal events.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimitiveElement<T> {
    pub terms: Vec<(T, EventId)>,
}

fn check_family<T>(space: &OrthoSpace, terms: &[(T, EventId)]) -> Result<(), ObservableError> {
    for (i, (_, e)) in terms.iter().enumerate() {
        if e.index() >= space.len() {
            return Err(ObservableError::UnknownEvent(e.index()));
        }
        for (_, f) in &terms[..i] {
            if !space.is_ortho(*e, *f) {
                return Err(ObservableError::NotOrthogonal(f.index(), e.index()));
            }
        }
    }
    Ok(())
}

/// Sum of a pairwise orthogonal family, when the partial sums are defined.
fn family_sum(space: &OrthoSpace, events: impl IntoIterator<Item = EventId>) -> Option<EventId> {
    events.into_iter().try_fold(space.zero(), |acc, e| space.sum(acc, e))
}

impl<T: Field> PrimitiveElement<T> {
    pub fn new(space: &OrthoSpace, terms: Vec<(T, EventId)>) -> Result<Self, ObservableError> {
        check_family(space, &terms)?;
        Ok(Self { terms })
    }

    pub fn coords(&self, a: &SyntheticSpace<T>) -> Vec<T> {
        a.combination(&self.terms)
    }
}

/// A spectral measure with finite support: distinct values on pairwise
/// orthogonal events summing to `𝕀`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiniteObservable<T> {
    support: Vec<(T, EventId)>,
}

impl<T: Field> FiniteObservable<T> {
    pub fn new(space: &OrthoSpace, support: Vec<(T, EventId)>) -> Result<Self, ObservableError> {
        if support.is_empty() {
            return Err(ObservableError::Empty);
        }
        check_family(space, &support)?;
        for (i, (t, _)) in support.iter().enumerate() {
            if support[..i].iter().any(|(s, _)| s == t) {
                return Err(ObservableError::DuplicateValue(t.to_string()));
            }
        }
        if family_sum(space, support.iter().map(|(_, e)| *e)) != Some(space.unit()) {
            return Err(ObservableError::NotUnit);
        }
        Ok(Self { support })
    }

    /// The observable `c·𝕀`.
    pub fn constant(space: &OrthoSpace, c: T) -> Self {
        Self { support: vec![(c, space.unit())] }
    }

    /// The indicator `1·e + 0·e′`.
    pub fn indicator(space: &OrthoSpace, e: EventId) -> Self {
        if e == space.unit() {
            return Self::constant(space, T::one());
        }
        if e == space.zero() {
            return Self::constant(space, T::zero());
        }
        Self { support: vec![(T::one(), e), (T::zero(), space.complement(e))] }
    }

    /// Merges equal values of a decomposition of the unit.
    pub fn from_resolution(space: &OrthoSpace, terms: &[(T, EventId)]) -> Result<Self, ObservableError> {
        let mut merged: Vec<(T, EventId)> = Vec::new();
        for (t, e) in terms {
            match merged.iter_mut().find(|(s, _)| s.approx_eq(t)) {
                Some(slot) => slot.1 = space.sum(slot.1, *e).ok_or(ObservableError::NotOrthogonal(slot.1.index(), e.index()))?,
                None => merged.push((t.clone(), *e)),
            }
        }
        Self::new(space, merged)
    }

    pub fn support(&self) -> &[(T, EventId)] {
        &self.support
    }

    /// `max |tₖ|`.
    pub fn spectral_radius(&self) -> T {
        self.support.iter().map(|(t, _)| t.abs()).fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// `Σ tₖ μ(eₖ)` for a state given by its event values.
    pub fn expectation(&self, state: &[T]) -> T {
        self.support.iter().fold(T::zero(), |acc, (t, e)| acc + t.clone() * state[e.index()].clone())
    }

    /// `(tₖ, μ(eₖ))` sorted by value.
    pub fn distribution(&self, state: &[T]) -> Vec<(T, T)> {
        let mut d: Vec<(T, T)> = self.support.iter().map(|(t, e)| (t.clone(), state[e.index()].clone())).collect();
        d.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        d
    }

    pub fn as_primitive(&self) -> PrimitiveElement<T> {
        PrimitiveElement { terms: self.support.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepresentingElement<T> {
    pub coords: Vec<T>,
    pub norm: T,
    pub radius: T,
    /// `|‖x‖ − r(X)| ≤ tol` (exact equality for exact fields).
    pub norm_matches: bool,
}

/// `x = Σ tₖ π(eₖ)` with its synthetic norm compared to `r(X)`.
pub fn representing_element<T: Field>(a: &SyntheticSpace<T>, x: &FiniteObservable<T>, tol: f64) -> RepresentingElement<T> {
    let coords = a.combination(x.support());
    let norm = a.norm(&coords);
    let radius = x.spectral_radius();
    let gap = (norm.clone() - radius.clone()).abs();
    let norm_matches = if T::EXACT { gap.is_zero() } else { gap.as_f64() <= tol };
    RepresentingElement { coords, norm, radius, norm_matches }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Representability<T> {
    /// A decomposition of the unit with coefficients reproducing the target.
    Representable(PrimitiveElement<T>),
    /// No decomposition of the unit in `E` resolves the target.
    NotRepresentable { decompositions_searched: usize, complete: bool },
}

impl<T> Representability<T> {
    pub fn is_representable(&self) -> bool {
        matches!(self, Representability::Representable(_))
    }
}

/// Searches the decompositions of `𝕀` in `E` for coefficients `tₖ` with
/// `Σ tₖ π(eₖ) = target`, solving each linear system exactly (or with the
/// float residual check on the matrix path).
pub fn resolve<T: Field>(a: &SyntheticSpace<T>, ortho: &OrthoSpace, target: &[T]) -> Representability<T> {
    let (decomps, complete) = first_unit_decompositions(ortho, DECOMPOSITION_LIMIT);
    for d in &decomps {
        let rows: Vec<Vec<T>> = (0..a.dim()).map(|i| d.iter().map(|&e| a.coords(e)[i].clone()).collect()).collect();
        if let Some(t) = linalg::solve(&rows, target) {
            return Representability::Representable(PrimitiveElement { terms: t.into_iter().zip(d.iter().copied()).collect() });
        }
    }
    Representability::NotRepresentable { decompositions_searched: decomps.len(), complete }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct A2Verdict<T> {
    pub e: EventId,
    pub f: EventId,
    /// Coordinates of `Uₑπ(f)`.
    pub target: Vec<T>,
    pub representability: Representability<T>,
}

/// Whether `Uₑπ(f)` is represented by an observable over `E`.
pub fn check_a2<T: Field>(
    a: &SyntheticSpace<T>,
    table: &UeTable<T>,
    ortho: &OrthoSpace,
    e: EventId,
    f: EventId,
) -> A2Verdict<T> {
    let target = table.ue(e).apply(a.coords(f));
    let representability = resolve(a, ortho, &target);
    A2Verdict { e, f, target, representability }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct A3Verdict<T> {
    /// Coordinates of the element representing `Y + Z`.
    pub target: Vec<T>,
    pub representability: Representability<T>,
    /// The sum observable when the resolution merges into one.
    pub sum: Option<FiniteObservable<T>>,
}

/// Whether the element representing `Y + Z` has a spectral resolution in `E`.
pub fn check_a3<T: Field>(
    a: &SyntheticSpace<T>,
    ortho: &OrthoSpace,
    y: &FiniteObservable<T>,
    z: &FiniteObservable<T>,
) -> A3Verdict<T> {
    let target = linalg::add_vec(&a.combination(y.support()), &a.combination(z.support()));
    let representability = resolve(a, ortho, &target);
    let sum = match &representability {
        Representability::Representable(p) => FiniteObservable::from_resolution(ortho, &p.terms).ok(),
        Representability::NotRepresentable { .. } => None,
    };
    A3Verdict { target, representability, sum }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EventOrderPair<T> {
    pub e: EventId,
    pub f: EventId,
    /// Every generated state with `μ(e) = 1` has `μ(f) = 1`.
    pub hypothesis: bool,
    /// A state with `μ(e) = 1` and `μ(f) < 1` when the hypothesis fails.
    pub witness: Option<Vec<T>>,
    /// `π(f) − π(e) ≥ 0`, checked when the hypothesis holds.
    pub ordered: Option<bool>,
    pub passed: bool,
}

/// Convex weights over the generators with `μ(e) = 1`, minimising `μ(f)`.
fn certainty_lp<T: Field>(a: &SyntheticSpace<T>, e: EventId, f: EventId) -> LpOutcome<T> {
    let m = a.n_generators();
    let mut lp = LinearProgram::new(m);
    lp.push(vec![T::one(); m], Relation::Eq, T::one());
    lp.push((0..m).map(|j| a.generator_value(j, e).clone()).collect(), Relation::Eq, T::one());
    lp.minimize(&(0..m).map(|j| a.generator_value(j, f).clone()).collect::<Vec<_>>())
}

/// Condition (ii): if `μ(e) = 1 ⇒ μ(f) = 1` over the states, then `e ≤ f`.
pub fn check_event_order<T: Field>(a: &SyntheticSpace<T>, e: EventId, f: EventId) -> EventOrderPair<T> {
    let outcome = certainty_lp(a, e, f);
    let (hypothesis, witness) = match &outcome {
        LpOutcome::Optimal { x, value } if !value.approx_eq(&T::one()) => {
            let state: Vec<T> = (0..a.n_events())
                .map(|g| (0..x.len()).fold(T::zero(), |acc, j| acc + x[j].clone() * a.generator_value(j, EventId(g)).clone()))
                .collect();
            (false, Some(state))
        }
        _ => (true, None),
    };
    let ordered = hypothesis.then(|| a.is_positive(&linalg::sub_vec(a.coords(f), a.coords(e))));
    let passed = !hypothesis || ordered == Some(true);
    EventOrderPair { e, f, hypothesis, witness, ordered, passed }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EventOrderReport<T> {
    pub pairs: usize,
    pub hypothesis_held: usize,
    pub failures: Vec<EventOrderPair<T>>,
}

impl<T> EventOrderReport<T> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_event_order_all<T: Field>(a: &SyntheticSpace<T>) -> EventOrderReport<T> {
    let mut report = EventOrderReport { pairs: 0, hypothesis_held: 0, failures: Vec::new() };
    for e in (0..a.n_events()).map(EventId) {
        for f in (0..a.n_events()).map(EventId) {
            let p = check_event_order(a, e, f);
            report.pairs += 1;
            report.hypothesis_held += p.hypothesis as usize;
            if !p.passed {
                report.failures.push(p);
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderComparison<T> {
    /// `min over S of (E_μ(Y) − E_μ(X))`.
    pub min_gap: T,
    /// `X ≤ Y` by expectations.
    pub by_expectation: bool,
    /// `X ≤ Y` by positivity of the representing elements' difference.
    pub by_order: bool,
}

impl<T> OrderComparison<T> {
    pub fn agrees(&self) -> bool {
        self.by_expectation == self.by_order
    }
}

/// Compares `X ≤ Y` by an LP over the generated states and by the synthetic order.
pub fn compare_observables<T: Field>(
    a: &SyntheticSpace<T>,
    x: &FiniteObservable<T>,
    y: &FiniteObservable<T>,
) -> OrderComparison<T> {
    let m = a.n_generators();
    let gen = |j: usize| -> Vec<T> { (0..a.n_events()).map(|g| a.generator_value(j, EventId(g)).clone()).collect() };
    let gaps: Vec<T> = (0..m).map(|j| {
        let s = gen(j);
        y.expectation(&s) - x.expectation(&s)
    }).collect();
    let mut lp = LinearProgram::new(m);
    lp.push(vec![T::one(); m], Relation::Eq, T::one());
    let min_gap = lp.minimize(&gaps).optimal_value().cloned().unwrap_or_else(T::zero);
    let diff = linalg::sub_vec(&a.combination(y.support()), &a.combination(x.support()));
    OrderComparison {
        by_expectation: min_gap.sign() != std::cmp::Ordering::Less,
        min_gap,
        by_order: a.is_positive(&diff),
    }
}
