//! States on a finite orthospace, the state polytope, conditional slices and
//! exact decisions of the two UCP axioms.
//!
//! All arithmetic is rational. A polytope is described in one of two ways:
//! the full state space as `{ν ∈ [0,1]^E : additivity}` (H-representation),
//! or a restricted space as the convex hull of explicit generator states
//! (V-representation, solved over convex weights).

use std::fmt;

use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::field::{format_rational, parse_rational, Rational};
use crate::linalg::{affine_dimension, rref};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::orthospace::{EventId, OrthoSpace};
use crate::polytope::{enumerate_vertices, CapacityError, HalfSpace};

/// Vertex enumeration of the full polytope is attempted up to this many events.
pub const MAX_ENUMERATED_EVENTS: usize = 64;
/// The exhaustive UC2 sweep runs when the generator count is at most this.
pub const EXHAUSTIVE_SWEEP_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum StateError {
    #[error("state has {got} values, orthospace has {expected} events")]
    Length { got: usize, expected: usize },
    #[error("conditioning on {event} is undefined: the state gives it probability zero")]
    ZeroProbability { event: EventId },
    #[error("input is not a state: {0}")]
    NotAState(String),
    #[error("state does not lie in the polytope")]
    OutsidePolytope,
    #[error("the generator list is empty")]
    NoGenerators,
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// A candidate or verified state: one rational per event.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct State {
    pub values: Vec<Rational>,
}

impl State {
    pub fn new(values: Vec<Rational>) -> Self {
        State { values }
    }

    pub fn value(&self, e: EventId) -> &Rational {
        &self.values[e.index()]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `s·self + (1−s)·other`.
    pub fn mix(&self, other: &State, s: &Rational) -> State {
        let t = Rational::one() - s;
        State::new(self.values.iter().zip(&other.values).map(|(a, b)| s * a + &t * b).collect())
    }

    /// Extends atom weights additively over a Boolean orthospace whose event
    /// index is the bitmask of its atoms.
    pub fn from_atom_weights(weights: &[Rational]) -> State {
        let n = 1usize << weights.len();
        let values = (0..n)
            .map(|mask| {
                weights.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w.clone()).sum()
            })
            .collect();
        State::new(values)
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(format_rational).collect();
        write!(f, "State[{}]", parts.join(", "))
    }
}

impl Serialize for State {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.values.iter().map(format_rational).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for State {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        let values = parts
            .iter()
            .map(|p| parse_rational(p).ok_or_else(|| D::Error::custom(format!("bad rational {p:?}"))))
            .collect::<Result<_, _>>()?;
        Ok(State { values })
    }
}

/// One failed state constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StateViolation {
    /// `μ(𝕀) ≠ 1`.
    Unit { value: String },
    /// Value outside `[0, 1]`.
    Bound { event: EventId, value: String },
    /// `μ(e) + μ(f) ≠ μ(e+f)`.
    Additivity { e: EventId, f: EventId, sum: EventId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateCheck {
    pub valid: bool,
    pub violations: Vec<StateViolation>,
}

/// Exact check of the unit, bound and additivity constraints.
pub fn is_state(space: &OrthoSpace, candidate: &[Rational]) -> Result<StateCheck, StateError> {
    if candidate.len() != space.len() {
        return Err(StateError::Length { got: candidate.len(), expected: space.len() });
    }
    let mut violations = Vec::new();
    let unit = &candidate[space.unit().index()];
    if !unit.is_one() {
        violations.push(StateViolation::Unit { value: format_rational(unit) });
    }
    for e in space.events() {
        let v = &candidate[e.index()];
        if v.is_negative() || *v > Rational::one() {
            violations.push(StateViolation::Bound { event: e, value: format_rational(v) });
        }
    }
    for (e, f, s) in space.sum_triples() {
        if e <= f && space.is_ortho(e, f) && &candidate[e.index()] + &candidate[f.index()] != candidate[s.index()] {
            violations.push(StateViolation::Additivity { e, f, sum: s });
        }
    }
    Ok(StateCheck { valid: violations.is_empty(), violations })
}

/// Additivity equalities `ν(𝕀) = 1` and `ν(e) + ν(f) − ν(e+f) = 0`, one per
/// unordered orthogonal pair.
fn additivity_rows(space: &OrthoSpace) -> Vec<(Vec<Rational>, Rational)> {
    let n = space.len();
    let mut rows = Vec::new();
    let mut unit = vec![Rational::zero(); n];
    unit[space.unit().index()] = Rational::one();
    rows.push((unit, Rational::one()));
    for (e, f, s) in space.sum_triples() {
        if e > f || !space.is_ortho(e, f) {
            continue;
        }
        let mut row = vec![Rational::zero(); n];
        row[e.index()] += Rational::one();
        row[f.index()] += Rational::one();
        row[s.index()] -= Rational::one();
        if row.iter().any(|v| !v.is_zero()) {
            rows.push((row, Rational::zero()));
        }
    }
    rows
}

/// A polytope `{G x : x ∈ [0,1]^k, A x = b}` in some variable space, mapped to
/// event values by `G` (the identity for the H-representation).
#[derive(Clone, Debug)]
struct System {
    n_vars: usize,
    equalities: Vec<(Vec<Rational>, Rational)>,
    /// `generators[j]` is the state contributed by variable `j`; `None` means
    /// the variables are the event values themselves.
    generators: Option<Vec<State>>,
}

impl System {
    /// Coefficients of `ν(e)` in the variables.
    fn event_row(&self, e: EventId) -> Vec<Rational> {
        match &self.generators {
            None => {
                let mut row = vec![Rational::zero(); self.n_vars];
                row[e.index()] = Rational::one();
                row
            }
            Some(gens) => gens.iter().map(|g| g.value(e).clone()).collect(),
        }
    }

    fn to_state(&self, x: &[Rational], n_events: usize) -> State {
        match &self.generators {
            None => State::new(x.to_vec()),
            Some(gens) => State::new(
                (0..n_events).map(|e| gens.iter().zip(x).map(|(g, w)| g.values[e].clone() * w).sum()).collect(),
            ),
        }
    }

    fn with_equalities(&self, extra: Vec<(Vec<Rational>, Rational)>) -> System {
        let mut out = self.clone();
        out.equalities.extend(extra);
        out
    }

    fn lp(&self) -> LinearProgram<Rational> {
        let n = self.n_vars;
        let mut lp = LinearProgram::new(n);
        // independent rows only; an inconsistent system keeps its `0 = c` row
        let aug = self.equalities.iter().map(|(row, rhs)| row.iter().cloned().chain([rhs.clone()]).collect()).collect();
        for mut row in rref(aug, n + 1).rows {
            let rhs = row.pop().expect("augmented row");
            lp.push(row, Relation::Eq, rhs);
        }
        for i in 0..self.n_vars {
            let mut row = vec![Rational::zero(); self.n_vars];
            row[i] = Rational::one();
            lp.push(row, Relation::Le, Rational::one());
        }
        lp
    }

    /// Parametrises the affine solution set as `x = base + D t` and returns
    /// the box constraints as half-spaces in `t`; `None` if inconsistent.
    fn parametrise(&self) -> Option<(Vec<Rational>, Vec<Vec<Rational>>, Vec<HalfSpace<Rational>>)> {
        let n = self.n_vars;
        let aug: Vec<Vec<Rational>> = self
            .equalities
            .iter()
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
        let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
        let mut base = vec![Rational::zero(); n];
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            base[p] = row[n].clone();
        }
        // dirs[i][k]: coefficient of t_k in x_i
        let mut dirs = vec![vec![Rational::zero(); free.len()]; n];
        for (k, &f) in free.iter().enumerate() {
            dirs[f][k] = Rational::one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                dirs[p][k] = -row[f].clone();
            }
        }
        let mut half = Vec::with_capacity(2 * n);
        for i in 0..n {
            half.push(HalfSpace::new(dirs[i].iter().map(|v| -v.clone()).collect(), base[i].clone()));
            if self.generators.is_none() {
                half.push(HalfSpace::new(dirs[i].clone(), Rational::one() - &base[i]));
            }
        }
        Some((base, dirs, half))
    }

    /// Vertices in event-value space, deduplicated and sorted.
    fn vertices(&self, n_events: usize) -> Result<Vec<State>, CapacityError> {
        let Some((base, dirs, half)) = self.parametrise() else { return Ok(Vec::new()) };
        let dim = dirs.first().map_or(0, Vec::len);
        let ts = enumerate_vertices(&half, dim)?;
        let mut out: Vec<State> = Vec::new();
        for t in ts {
            let x: Vec<Rational> = (0..self.n_vars)
                .map(|i| &base[i] + dirs[i].iter().zip(&t).map(|(d, tv)| d * tv).sum::<Rational>())
                .collect();
            let s = self.to_state(&x, n_events);
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out.sort_by(|a, b| a.values.cmp(&b.values));
        Ok(out)
    }
}

/// Convex combinations of `generators`, with the weights as variables.
fn convex_hull_system(generators: Vec<State>) -> System {
    let m = generators.len();
    System { n_vars: m, equalities: vec![(vec![Rational::one(); m], Rational::one())], generators: Some(generators) }
}

/// The state space `S`: either all states, or the convex hull of a generator list.
#[derive(Clone, Debug)]
pub struct StatePolytope<'s> {
    space: &'s OrthoSpace,
    system: System,
    /// System used for optimisation: over the vertices when they are known.
    search: System,
    restricted: bool,
    vertices: Option<Vec<State>>,
}

/// Full state polytope of `space`; vertices are enumerated when the space
/// has at most [`MAX_ENUMERATED_EVENTS`] events and the enumeration fits.
pub fn build_state_polytope(space: &OrthoSpace) -> StatePolytope<'_> {
    let system = System { n_vars: space.len(), equalities: additivity_rows(space), generators: None };
    let vertices =
        if space.len() <= MAX_ENUMERATED_EVENTS { system.vertices(space.len()).ok() } else { None };
    let search = match &vertices {
        Some(v) => convex_hull_system(v.clone()),
        None => system.clone(),
    };
    StatePolytope { space, system, search, restricted: false, vertices }
}

impl<'s> StatePolytope<'s> {
    /// Restricted state space `conv(generators)`. Every generator must be a state.
    pub fn from_generators(space: &'s OrthoSpace, generators: Vec<State>) -> Result<Self, StateError> {
        if generators.is_empty() {
            return Err(StateError::NoGenerators);
        }
        for (i, g) in generators.iter().enumerate() {
            let check = is_state(space, &g.values)?;
            if !check.valid {
                return Err(StateError::NotAState(format!("generator {i}: {:?}", check.violations)));
            }
        }
        let system = convex_hull_system(generators.clone());
        Ok(StatePolytope { space, search: system.clone(), system, restricted: true, vertices: Some(generators) })
    }

    pub fn space(&self) -> &'s OrthoSpace {
        self.space
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted
    }

    /// Vertices of the full polytope, or the generator list of a restricted one.
    pub fn generators(&self) -> Option<&[State]> {
        self.vertices.as_deref()
    }

    /// Additivity equalities over event values (empty for restricted polytopes).
    pub fn equalities(&self) -> Vec<(Vec<Rational>, Rational)> {
        if self.restricted {
            Vec::new()
        } else {
            self.system.equalities.clone()
        }
    }

    /// Affine dimension, from the generators when available.
    pub fn dimension(&self) -> Option<usize> {
        let gens = self.vertices.as_ref()?;
        let pts: Vec<Vec<Rational>> = gens.iter().map(|g| g.values.clone()).collect();
        Some(affine_dimension(&pts))
    }

    /// Exact membership test.
    pub fn contains(&self, mu: &State) -> Result<bool, StateError> {
        let check = is_state(self.space, &mu.values)?;
        if !check.valid {
            return Ok(false);
        }
        if !self.restricted {
            return Ok(true);
        }
        let extra = self.space.events().map(|e| (self.system.event_row(e), mu.value(e).clone())).collect();
        Ok(matches!(self.system.with_equalities(extra).lp().feasible_point(), LpOutcome::Optimal { .. }))
    }

    /// Maximises `ν(e)` over the polytope, returning an optimal state.
    pub fn maximize_event(&self, e: EventId) -> Option<State> {
        self.optimize(&self.search, &self.search.event_row(e), true)
    }

    fn optimize(&self, system: &System, objective: &[Rational], max: bool) -> Option<State> {
        let lp = system.lp();
        let out = if max { lp.maximize(objective) } else { lp.minimize(objective) };
        out.point().map(|x| system.to_state(x, self.space.len()))
    }
}

/// `S` intersected with `ν(f) = μ(f)/μ(e)` for every `f ≺ e`.
#[derive(Clone, Debug)]
pub struct ConditionalSlice<'p, 's> {
    pub polytope: &'p StatePolytope<'s>,
    pub event: EventId,
    /// `(f, μ(f)/μ(e))` for each `f ≺ e`.
    pub constraints: Vec<(EventId, Rational)>,
    system: System,
    search: System,
}

pub fn conditional_slice<'p, 's>(
    polytope: &'p StatePolytope<'s>,
    mu: &State,
    e: EventId,
) -> Result<ConditionalSlice<'p, 's>, StateError> {
    let space = polytope.space;
    if mu.len() != space.len() {
        return Err(StateError::Length { got: mu.len(), expected: space.len() });
    }
    let mass = mu.value(e).clone();
    if !mass.is_positive() {
        return Err(StateError::ZeroProbability { event: e });
    }
    let constraints: Vec<(EventId, Rational)> =
        space.events().filter(|&f| space.precedes(f, e)).map(|f| (f, mu.value(f) / &mass)).collect();
    let restrict = |sys: &System| {
        sys.with_equalities(constraints.iter().map(|(f, v)| (sys.event_row(*f), v.clone())).collect())
    };
    let (system, search) = (restrict(&polytope.system), restrict(&polytope.search));
    Ok(ConditionalSlice { polytope, event: e, constraints, system, search })
}

impl ConditionalSlice<'_, '_> {
    pub fn contains(&self, nu: &State) -> Result<bool, StateError> {
        if !self.polytope.contains(nu)? {
            return Ok(false);
        }
        Ok(self.constraints.iter().all(|(f, v)| nu.value(*f) == v))
    }

    pub fn vertices(&self) -> Result<Vec<State>, StateError> {
        Ok(self.system.vertices(self.polytope.space.len())?)
    }

    /// Affine dimension of the slice (`None` when empty).
    pub fn dimension(&self) -> Result<Option<usize>, StateError> {
        let v = self.vertices()?;
        if v.is_empty() {
            return Ok(None);
        }
        let pts: Vec<Vec<Rational>> = v.iter().map(|s| s.values.clone()).collect();
        Ok(Some(affine_dimension(&pts)))
    }

    /// Range `[min ν(g), max ν(g)]` over the slice with the attaining states.
    pub fn range(&self, g: EventId) -> Option<((Rational, State), (Rational, State))> {
        let row = self.search.event_row(g);
        let lo = self.polytope.optimize(&self.search, &row, false)?;
        let hi = self.polytope.optimize(&self.search, &row, true)?;
        Some(((lo.value(g).clone(), lo), (hi.value(g).clone(), hi)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UcAxiom {
    UC1,
    UC2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Uc2Outcome {
    Unique,
    Multiple,
    Empty,
}

/// Replayable evidence attached to a UC verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum UcWitness {
    /// `e ≠ f` but every state in `S` agrees on them.
    Inseparable { e: EventId, f: EventId },
    /// The conditional slice of `mu` under `event` is empty.
    EmptySlice { mu: State, event: EventId, infeasibility: String },
    /// Two conditional probabilities of `mu` under `event`, differing at `at`.
    TwoConditionals { mu: State, event: EventId, at: EventId, first: State, second: State },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UcVerdict {
    pub axiom: UcAxiom,
    pub passed: bool,
    /// UC2 only.
    pub outcome: Option<Uc2Outcome>,
    /// The unique conditional probability when UC2 passes.
    pub conditional: Option<State>,
    pub witnesses: Vec<UcWitness>,
}

/// UC1: fails iff two distinct events take equal values on every state of `S`.
pub fn check_uc1(polytope: &StatePolytope) -> Result<UcVerdict, StateError> {
    let space = polytope.space;
    let mut witnesses = Vec::new();
    match &polytope.vertices {
        Some(gens) => {
            let column = |e: EventId| gens.iter().map(|g| g.value(e)).collect::<Vec<_>>();
            let columns: Vec<Vec<&Rational>> = space.events().map(column).collect();
            for e in space.events() {
                for f in space.events().filter(|&f| f > e) {
                    if columns[e.index()] == columns[f.index()] {
                        witnesses.push(UcWitness::Inseparable { e, f });
                    }
                }
            }
        }
        None => {
            for e in space.events() {
                for f in space.events().filter(|&f| f > e) {
                    if inseparable_by_lp(polytope, e, f) {
                        witnesses.push(UcWitness::Inseparable { e, f });
                    }
                }
            }
        }
    }
    Ok(UcVerdict { axiom: UcAxiom::UC1, passed: witnesses.is_empty(), outcome: None, conditional: None, witnesses })
}

fn inseparable_by_lp(polytope: &StatePolytope, e: EventId, f: EventId) -> bool {
    let sys = &polytope.search;
    let diff: Vec<Rational> = sys.event_row(e).iter().zip(sys.event_row(f)).map(|(a, b)| a - b).collect();
    let lp = sys.lp();
    let hi = lp.maximize(&diff);
    let lo = lp.minimize(&diff);
    matches!((hi.optimal_value(), lo.optimal_value()), (Some(h), Some(l)) if h.is_zero() && l.is_zero())
}

/// UC2 at `(μ, e)`: the slice is a single point iff `min ν(g) = max ν(g)` for
/// every event `g`.
pub fn check_uc2(polytope: &StatePolytope, mu: &State, e: EventId) -> Result<UcVerdict, StateError> {
    if !polytope.contains(mu)? {
        return Err(StateError::OutsidePolytope);
    }
    let slice = conditional_slice(polytope, mu, e)?;
    let verdict = |passed, outcome, conditional, witnesses| UcVerdict {
        axiom: UcAxiom::UC2,
        passed,
        outcome: Some(outcome),
        conditional,
        witnesses,
    };
    let probe = slice.search.lp().feasible_point();
    let nu = match probe {
        LpOutcome::Optimal { x, .. } => slice.search.to_state(&x, polytope.space.len()),
        LpOutcome::Infeasible { infeasibility } => {
            let w = UcWitness::EmptySlice { mu: mu.clone(), event: e, infeasibility: format_rational(&infeasibility) };
            return Ok(verdict(false, Uc2Outcome::Empty, None, vec![w]));
        }
        LpOutcome::Unbounded => unreachable!("bounded feasibility problem"),
    };
    for g in polytope.space.events() {
        let Some(((lo, first), (hi, second))) = slice.range(g) else { continue };
        if lo != hi {
            let w = UcWitness::TwoConditionals { mu: mu.clone(), event: e, at: g, first, second };
            return Ok(verdict(false, Uc2Outcome::Multiple, None, vec![w]));
        }
    }
    Ok(verdict(true, Uc2Outcome::Unique, Some(nu), Vec::new()))
}

/// Re-verifies a witness against the polytope from scratch.
pub fn replay_uc_witness(polytope: &StatePolytope, witness: &UcWitness) -> Result<bool, StateError> {
    match witness {
        UcWitness::Inseparable { e, f } => {
            if e == f {
                return Ok(false);
            }
            Ok(match &polytope.vertices {
                Some(gens) => gens.iter().all(|g| g.value(*e) == g.value(*f)),
                None => inseparable_by_lp(polytope, *e, *f),
            })
        }
        UcWitness::EmptySlice { mu, event, .. } => {
            let slice = conditional_slice(polytope, mu, *event)?;
            Ok(matches!(slice.search.lp().feasible_point(), LpOutcome::Infeasible { .. }))
        }
        UcWitness::TwoConditionals { mu, event, at, first, second } => {
            let slice = conditional_slice(polytope, mu, *event)?;
            Ok(slice.contains(first)? && slice.contains(second)? && first.value(*at) != second.value(*at))
        }
    }
}

/// Result of checking UC2 over many `(μ, e)` pairs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Uc2Sweep {
    pub checked: usize,
    pub unique: usize,
    pub failures: Vec<UcVerdict>,
    /// Set when the sweep covered only a sample of the states.
    pub coverage_gap: Option<String>,
}

impl Uc2Sweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// UC2 over every generator and every event of positive mass when the
/// generator list is small, otherwise over `sample` only.
pub fn uc2_sweep(polytope: &StatePolytope, sample: &[State]) -> Result<Uc2Sweep, StateError> {
    let (states, coverage_gap): (Vec<State>, Option<String>) = match polytope.generators() {
        Some(g) if g.len() <= EXHAUSTIVE_SWEEP_VERTICES => (g.to_vec(), None),
        Some(g) => (
            sample.to_vec(),
            Some(format!("{} generators exceed the exhaustive limit; {} sampled states checked", g.len(), sample.len())),
        ),
        None => (sample.to_vec(), Some(format!("vertices unavailable; {} sampled states checked", sample.len()))),
    };
    let mut sweep = Uc2Sweep { checked: 0, unique: 0, failures: Vec::new(), coverage_gap };
    for mu in &states {
        for e in polytope.space.events() {
            if !mu.value(e).is_positive() {
                continue;
            }
            let v = check_uc2(polytope, mu, e)?;
            sweep.checked += 1;
            if v.passed {
                sweep.unique += 1;
            } else {
                sweep.failures.push(v);
            }
        }
    }
    Ok(sweep)
}

/// Both sides of the mixing identity for conditional probabilities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixReport {
    pub lhs: State,
    pub rhs: State,
    pub holds: bool,
}

/// Checks `(sμ+(1−s)ν)ₑ = (sμ(e)μₑ + (1−s)ν(e)νₑ) / (sμ(e)+(1−s)ν(e))`.
/// A state of zero mass at `e` enters with weight zero and needs no conditional.
pub fn mix_conditionals(
    mu: &State,
    nu: &State,
    s: &Rational,
    e: EventId,
    polytope: &StatePolytope,
) -> Result<MixReport, StateError> {
    if !s.is_positive() || *s >= Rational::one() {
        return Err(StateError::Precondition("mixing weight must lie strictly between 0 and 1".into()));
    }
    let t = Rational::one() - s;
    let wm = s * mu.value(e);
    let wn = &t * nu.value(e);
    let total = &wm + &wn;
    if !total.is_positive() {
        return Err(StateError::ZeroProbability { event: e });
    }
    let unique = |state: &State| -> Result<State, StateError> {
        let v = check_uc2(polytope, state, e)?;
        v.conditional.ok_or_else(|| {
            StateError::Precondition(format!("conditional under {e} is not unique ({:?})", v.outcome))
        })
    };
    let lhs = unique(&mu.mix(nu, s))?;
    let n = mu.len();
    let mut rhs = vec![Rational::zero(); n];
    for (weight, state) in [(&wm, mu), (&wn, nu)] {
        if weight.is_zero() {
            continue;
        }
        let cond = unique(state)?;
        for (r, c) in rhs.iter_mut().zip(&cond.values) {
            *r += weight * c;
        }
    }
    let rhs = State::new(rhs.into_iter().map(|v| v / &total).collect());
    Ok(MixReport { holds: lhs == rhs, lhs, rhs })
}

/// Classical conditional `μ(f∧e)/μ(e)` on a Boolean orthospace indexed by bitmask.
pub fn classical_conditional(mu: &State, e: EventId) -> State {
    let mass = mu.value(e).clone();
    State::new((0..mu.len()).map(|f| mu.values[f & e.index()].clone() / &mass).collect())
}
