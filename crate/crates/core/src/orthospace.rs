//! Finite event systems with orthogonality, partial sum and complement, and
//! exhaustive checks of the six orthospace axioms.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::jordan::{Algebra, JordanElement};

/// Hard cap on the number of events in a table.
pub const MAX_EVENTS: usize = 4096;

/// Handle into one [`OrthoSpace`]'s event table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EventId(pub usize);

impl EventId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrthoError {
    #[error("event count {0} outside 1..={MAX_EVENTS}")]
    Size(usize),
    #[error("atom count {0} outside 1..={1}")]
    AtomCount(usize, usize),
    #[error("event index {index} out of range for {n} events")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("conflicting sum entries for ({0}, {1})")]
    ConflictingSum(usize, usize),
    #[error("complement table has {got} entries, expected {expected}")]
    ComplementLength { got: usize, expected: usize },
    #[error("label table has {got} entries, expected {expected}")]
    LabelLength { got: usize, expected: usize },
    #[error("projection {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("projection list is missing {0}")]
    Missing(&'static str),
    #[error("projection list is not closed: {0}")]
    NotClosed(String),
    #[error("projections {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("projection {index} does not match algebra {algebra:?} of dimension {n}")]
    Shape { index: usize, algebra: Algebra, n: usize },
}

/// A finite event table. The tables are stored as given; whether they satisfy
/// the orthospace axioms is decided by [`verify_orthospace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoSpace {
    n: usize,
    zero: EventId,
    unit: EventId,
    ortho: Vec<bool>,
    sum: Vec<Option<EventId>>,
    complement: Vec<EventId>,
    labels: Vec<String>,
}

impl OrthoSpace {
    /// Builds a table from ordered orthogonal pairs, sum triples `(e, f, e+f)`
    /// and the complement map. Only index ranges and conflicting sums are
    /// rejected here.
    pub fn from_parts(
        n: usize,
        zero: usize,
        unit: usize,
        ortho_pairs: &[(usize, usize)],
        sums: &[(usize, usize, usize)],
        complement: &[usize],
    ) -> Result<Self, OrthoError> {
        if n == 0 || n > MAX_EVENTS {
            return Err(OrthoError::Size(n));
        }
        let check = |index: usize| {
            if index < n {
                Ok(EventId(index))
            } else {
                Err(OrthoError::IndexOutOfRange { index, n })
            }
        };
        let zero = check(zero)?;
        let unit = check(unit)?;
        let mut ortho = vec![false; n * n];
        for &(e, f) in ortho_pairs {
            check(e)?;
            check(f)?;
            ortho[e * n + f] = true;
        }
        let mut sum = vec![None; n * n];
        for &(e, f, s) in sums {
            check(e)?;
            check(f)?;
            let s = check(s)?;
            match sum[e * n + f] {
                Some(prev) if prev != s => return Err(OrthoError::ConflictingSum(e, f)),
                _ => sum[e * n + f] = Some(s),
            }
        }
        if complement.len() != n {
            return Err(OrthoError::ComplementLength { got: complement.len(), expected: n });
        }
        let complement = complement.iter().map(|&c| check(c)).collect::<Result<_, _>>()?;
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(OrthoSpace { n, zero, unit, ortho, sum, complement, labels })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, OrthoError> {
        if labels.len() != self.n {
            return Err(OrthoError::LabelLength { got: labels.len(), expected: self.n });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn zero(&self) -> EventId {
        self.zero
    }

    pub fn unit(&self) -> EventId {
        self.unit
    }

    pub fn events(&self) -> impl Iterator<Item = EventId> + '_ {
        (0..self.n).map(EventId)
    }

    pub fn label(&self, e: EventId) -> &str {
        &self.labels[e.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<EventId> {
        self.labels.iter().position(|l| l == label).map(EventId)
    }

    pub fn is_ortho(&self, e: EventId, f: EventId) -> bool {
        self.ortho[e.0 * self.n + f.0]
    }

    pub fn sum(&self, e: EventId, f: EventId) -> Option<EventId> {
        self.sum[e.0 * self.n + f.0]
    }

    pub fn complement(&self, e: EventId) -> EventId {
        self.complement[e.0]
    }

    /// Ordered orthogonal pairs in lexicographic order.
    pub fn ortho_pairs(&self) -> Vec<(EventId, EventId)> {
        let mut out = Vec::new();
        for e in self.events() {
            for f in self.events() {
                if self.is_ortho(e, f) {
                    out.push((e, f));
                }
            }
        }
        out
    }

    /// Defined sums `(e, f, e+f)` in lexicographic order of `(e, f)`.
    pub fn sum_triples(&self) -> Vec<(EventId, EventId, EventId)> {
        let mut out = Vec::new();
        for e in self.events() {
            for f in self.events() {
                if let Some(s) = self.sum(e, f) {
                    out.push((e, f, s));
                }
            }
        }
        out
    }

    /// `e ≺ f`, i.e. `e ⊥ f'`.
    pub fn precedes(&self, e: EventId, f: EventId) -> bool {
        self.is_ortho(e, self.complement(f))
    }

    /// All `d` with `e ⊥ d` and `e + d = f`, when `e ≺ f`.
    pub fn difference(&self, e: EventId, f: EventId) -> Difference {
        if !self.precedes(e, f) {
            return Difference::NotComparable;
        }
        let candidates: Vec<EventId> =
            self.events().filter(|&d| self.is_ortho(e, d) && self.sum(e, d) == Some(f)).collect();
        match candidates.len() {
            0 => Difference::Missing,
            1 => Difference::Unique(candidates[0]),
            _ => Difference::NonUnique(candidates),
        }
    }

    pub(crate) fn set_ortho(&mut self, e: EventId, f: EventId, value: bool) {
        self.ortho[e.0 * self.n + f.0] = value;
    }

    pub(crate) fn set_sum(&mut self, e: EventId, f: EventId, value: Option<EventId>) {
        self.sum[e.0 * self.n + f.0] = value;
    }

    pub(crate) fn set_complement(&mut self, e: EventId, g: EventId) {
        self.complement[e.0] = g;
    }

    /// Returns a copy with events renumbered: new index `perm[i]` holds old
    /// event `i`.
    pub fn permuted(&self, perm: &[usize]) -> OrthoSpace {
        let n = self.n;
        let map = |e: EventId| EventId(perm[e.0]);
        let mut out = OrthoSpace {
            n,
            zero: map(self.zero),
            unit: map(self.unit),
            ortho: vec![false; n * n],
            sum: vec![None; n * n],
            complement: vec![EventId(0); n],
            labels: vec![String::new(); n],
        };
        for e in self.events() {
            out.complement[perm[e.0]] = map(self.complement(e));
            out.labels[perm[e.0]] = self.labels[e.0].clone();
            for f in self.events() {
                out.set_ortho(map(e), map(f), self.is_ortho(e, f));
                out.set_sum(map(e), map(f), self.sum(e, f).map(map));
            }
        }
        out
    }
}

/// Outcome of [`OrthoSpace::difference`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Difference {
    /// `e ≺ f` does not hold.
    NotComparable,
    /// `e ≺ f` holds but no `d` exists (an OS6 violation).
    Missing,
    Unique(EventId),
    /// Several candidates; uniqueness is only guaranteed on UCP spaces.
    NonUnique(Vec<EventId>),
}

impl Difference {
    pub fn unique(&self) -> Option<EventId> {
        match self {
            Difference::Unique(d) => Some(*d),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    OS1,
    OS2,
    OS3,
    OS4,
    OS5,
    OS6,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [Axiom::OS1, Axiom::OS2, Axiom::OS3, Axiom::OS4, Axiom::OS5, Axiom::OS6];

    /// Arity of the witness tuples for this axiom.
    pub fn arity(self) -> usize {
        match self {
            Axiom::OS1 | Axiom::OS2 | Axiom::OS6 => 2,
            Axiom::OS3 => 3,
            Axiom::OS4 | Axiom::OS5 => 1,
        }
    }
}

/// Maximum number of witnesses stored per axiom.
pub const MAX_WITNESSES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub passed: bool,
    /// Total number of violating tuples found.
    pub violations: usize,
    /// The first violating tuples in lexicographic order.
    pub witnesses: Vec<Vec<EventId>>,
}

/// A table defect that is not an axiom violation: a sum entry on a pair that
/// is not orthogonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralIssue {
    pub e: EventId,
    pub f: EventId,
    pub sum: EventId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub structural: Vec<StructuralIssue>,
    pub verdicts: Vec<AxiomVerdict>,
}

impl AxiomReport {
    pub fn all_axioms_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn is_well_formed(&self) -> bool {
        self.structural.is_empty()
    }

    /// Well formed and every axiom passes.
    pub fn is_orthospace(&self) -> bool {
        self.is_well_formed() && self.all_axioms_pass()
    }

    pub fn verdict(&self, axiom: Axiom) -> &AxiomVerdict {
        self.verdicts.iter().find(|v| v.axiom == axiom).expect("all axioms reported")
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        self.verdicts.iter().filter(|v| !v.passed).map(|v| v.axiom).collect()
    }
}

/// Whether `witness` is a violation of `axiom` on `space`. This is the single
/// predicate used both by [`verify_orthospace`] and for replaying witnesses.
pub fn violates(space: &OrthoSpace, axiom: Axiom, witness: &[EventId]) -> bool {
    if witness.len() != axiom.arity() || witness.iter().any(|e| e.0 >= space.n) {
        return false;
    }
    match axiom {
        Axiom::OS1 => {
            let (e, f) = (witness[0], witness[1]);
            space.is_ortho(e, f) && !space.is_ortho(f, e)
        }
        Axiom::OS2 => {
            let (e, f) = (witness[0], witness[1]);
            space.is_ortho(e, f) && (space.sum(e, f).is_none() || space.sum(e, f) != space.sum(f, e))
        }
        Axiom::OS3 => {
            let (g, e, f) = (witness[0], witness[1], witness[2]);
            if !(space.is_ortho(g, e) && space.is_ortho(g, f) && space.is_ortho(e, f)) {
                return false;
            }
            let (Some(ef), Some(ge)) = (space.sum(e, f), space.sum(g, e)) else { return true };
            if !space.is_ortho(g, ef) || !space.is_ortho(f, ge) {
                return true;
            }
            match (space.sum(g, ef), space.sum(ge, f)) {
                (Some(a), Some(b)) => a != b,
                _ => true,
            }
        }
        Axiom::OS4 => {
            let e = witness[0];
            !space.is_ortho(space.zero, e) || space.sum(e, space.zero) != Some(e)
        }
        Axiom::OS5 => {
            let e = witness[0];
            let mut candidates =
                space.events().filter(|&g| space.is_ortho(e, g) && space.sum(e, g) == Some(space.unit));
            let first = candidates.next();
            first != Some(space.complement(e)) || candidates.next().is_some()
        }
        Axiom::OS6 => {
            let (e, f) = (witness[0], witness[1]);
            let exists = space.events().any(|d| space.is_ortho(e, d) && space.sum(e, d) == Some(f));
            exists != space.is_ortho(e, space.complement(f))
        }
    }
}

/// Checks all six axioms exhaustively over every tuple of events.
pub fn verify_orthospace(space: &OrthoSpace) -> AxiomReport {
    let mut structural = Vec::new();
    for e in space.events() {
        for f in space.events() {
            if let Some(s) = space.sum(e, f) {
                if !space.is_ortho(e, f) {
                    structural.push(StructuralIssue { e, f, sum: s });
                }
            }
        }
    }
    let verdicts = Axiom::ALL.iter().map(|&axiom| verify_axiom(space, axiom)).collect();
    AxiomReport { structural, verdicts }
}

fn verify_axiom(space: &OrthoSpace, axiom: Axiom) -> AxiomVerdict {
    let mut witnesses = Vec::new();
    let mut violations = 0;
    let mut record = |w: Vec<EventId>| {
        violations += 1;
        if witnesses.len() < MAX_WITNESSES {
            witnesses.push(w);
        }
    };
    match axiom.arity() {
        1 => {
            for e in space.events() {
                if violates(space, axiom, &[e]) {
                    record(vec![e]);
                }
            }
        }
        2 => {
            for e in space.events() {
                for f in space.events() {
                    if violates(space, axiom, &[e, f]) {
                        record(vec![e, f]);
                    }
                }
            }
        }
        _ => {
            // Only mutually orthogonal triples can violate OS3.
            let neighbours: Vec<Vec<EventId>> =
                space.events().map(|g| space.events().filter(|&e| space.is_ortho(g, e)).collect()).collect();
            for g in space.events() {
                for &e in &neighbours[g.0] {
                    for &f in &neighbours[g.0] {
                        if violates(space, axiom, &[g, e, f]) {
                            record(vec![g, e, f]);
                        }
                    }
                }
            }
        }
    }
    AxiomVerdict { axiom, passed: violations == 0, violations, witnesses }
}

/// One corrupted table entry, see [`single_entry_mutations`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Mutation {
    /// Toggle `ortho(e, f)`.
    Ortho(EventId, EventId),
    /// Replace a defined `sum(e, f)` with another event.
    Sum(EventId, EventId, EventId),
    /// Define `sum(e, f)` on a pair where it was undefined.
    ExtendSum(EventId, EventId, EventId),
    /// Replace `complement(e)`.
    Complement(EventId, EventId),
}

impl Mutation {
    pub fn apply(&self, space: &OrthoSpace) -> OrthoSpace {
        let mut out = space.clone();
        match *self {
            Mutation::Ortho(e, f) => out.set_ortho(e, f, !space.is_ortho(e, f)),
            Mutation::Sum(e, f, s) | Mutation::ExtendSum(e, f, s) => out.set_sum(e, f, Some(s)),
            Mutation::Complement(e, g) => out.set_complement(e, g),
        }
        out
    }
}

/// Every single-entry corruption of the tables: each ortho toggle, each
/// alternative value of each defined sum and complement entry, and each
/// definition of a previously undefined sum.
pub fn single_entry_mutations(space: &OrthoSpace) -> Vec<Mutation> {
    let mut out = Vec::new();
    for e in space.events() {
        for f in space.events() {
            out.push(Mutation::Ortho(e, f));
            match space.sum(e, f) {
                Some(s) => out.extend(space.events().filter(|&g| g != s).map(|g| Mutation::Sum(e, f, g))),
                None => out.extend(space.events().map(|g| Mutation::ExtendSum(e, f, g))),
            }
        }
        let c = space.complement(e);
        out.extend(space.events().filter(|&g| g != c).map(|g| Mutation::Complement(e, g)));
    }
    out
}

/// Power-set orthospace on `n_atoms` atoms. Event index = bitmask of atoms,
/// so `0` is the empty event and `2^n - 1` is the unit.
pub fn make_boolean(n_atoms: usize) -> Result<OrthoSpace, OrthoError> {
    const MAX_ATOMS: usize = 12;
    if n_atoms == 0 || n_atoms > MAX_ATOMS {
        return Err(OrthoError::AtomCount(n_atoms, MAX_ATOMS));
    }
    let n = 1usize << n_atoms;
    let full = n - 1;
    let mut ortho = Vec::new();
    let mut sums = Vec::new();
    for e in 0..n {
        for f in 0..n {
            if e & f == 0 {
                ortho.push((e, f));
                sums.push((e, f, e | f));
            }
        }
    }
    let complement: Vec<usize> = (0..n).map(|e| full & !e).collect();
    let labels = (0..n)
        .map(|mask| {
            if mask == 0 {
                "0".to_string()
            } else if mask == full {
                "1".to_string()
            } else {
                (0..n_atoms)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(atom_name)
                    .collect::<Vec<_>>()
                    .join("+")
            }
        })
        .collect();
    OrthoSpace::from_parts(n, 0, full, &ortho, &sums, &complement)?.with_labels(labels)
}

fn atom_name(i: usize) -> String {
    const NAMES: &[u8] = b"abcdefghijkl";
    (NAMES[i] as char).to_string()
}

/// Horizontal sum of `blocks` copies of `{0, x, x', 1}` glued at `0` and `1`
/// (the orthospace MO_n). Events: `0`, `1`, then `x_k`, `x_k'` for each block.
pub fn make_mo(blocks: usize) -> Result<OrthoSpace, OrthoError> {
    if blocks == 0 || 2 + 2 * blocks > MAX_EVENTS {
        return Err(OrthoError::Size(2 + 2 * blocks));
    }
    let n = 2 + 2 * blocks;
    let (zero, unit) = (0usize, 1usize);
    let mut ortho = Vec::new();
    let mut sums = Vec::new();
    for e in 0..n {
        ortho.push((zero, e));
        ortho.push((e, zero));
        sums.push((zero, e, e));
        if e != zero {
            sums.push((e, zero, e));
        }
    }
    let mut complement = vec![0; n];
    complement[zero] = unit;
    complement[unit] = zero;
    let mut labels = vec!["0".to_string(), "1".to_string()];
    for k in 0..blocks {
        let (x, xc) = (2 + 2 * k, 3 + 2 * k);
        ortho.push((x, xc));
        ortho.push((xc, x));
        sums.push((x, xc, unit));
        sums.push((xc, x, unit));
        complement[x] = xc;
        complement[xc] = x;
        let name = atom_name(k);
        labels.push(name.clone());
        labels.push(format!("{name}'"));
    }
    OrthoSpace::from_parts(n, zero, unit, &ortho, &sums, &complement)?.with_labels(labels)
}

/// The MO₂ fixture: events `0, 1, a, a', b, b'`.
pub fn make_mo2() -> OrthoSpace {
    make_mo(2).expect("fixed size")
}

/// Orthospace of a finite projection list: `p ⊥ q` iff `p∘q = 0`, sums are
/// matrix sums, complements `𝕀 − p`. Returns the space together with the
/// embedding table (event index = list position).
pub fn projection_orthospace(
    algebra: Algebra,
    n: usize,
    projections: &[JordanElement],
    tol: f64,
) -> Result<(OrthoSpace, Vec<JordanElement>), OrthoError> {
    let count = projections.len();
    if count == 0 || count > MAX_EVENTS {
        return Err(OrthoError::Size(count));
    }
    for (i, p) in projections.iter().enumerate() {
        if p.algebra() != algebra || p.n() != n {
            return Err(OrthoError::Shape { index: i, algebra, n });
        }
        if !crate::jordan::is_idempotent(p, tol) {
            return Err(OrthoError::NotIdempotent(i));
        }
    }
    let find = |x: &JordanElement| projections.iter().position(|p| p.max_abs_diff(x) <= tol);
    for i in 0..count {
        for j in i + 1..count {
            if projections[i].max_abs_diff(&projections[j]) <= tol {
                return Err(OrthoError::Duplicate(i, j));
            }
        }
    }
    let identity = JordanElement::identity(algebra, n);
    let zero = find(&JordanElement::zero(algebra, n)).ok_or(OrthoError::Missing("0"))?;
    let unit = find(&identity).ok_or(OrthoError::Missing("identity"))?;
    let mut complement = Vec::with_capacity(count);
    for (i, p) in projections.iter().enumerate() {
        let c = find(&identity.sub(p))
            .ok_or_else(|| OrthoError::NotClosed(format!("complement of projection {i}")))?;
        complement.push(c);
    }
    let mut ortho = Vec::new();
    let mut sums = Vec::new();
    for (i, p) in projections.iter().enumerate() {
        for (j, q) in projections.iter().enumerate() {
            if p.jordan_product(q).max_abs() > tol {
                continue;
            }
            let s = find(&p.add(q))
                .ok_or_else(|| OrthoError::NotClosed(format!("sum of projections {i} and {j}")))?;
            ortho.push((i, j));
            sums.push((i, j, s));
        }
    }
    let space = OrthoSpace::from_parts(count, zero, unit, &ortho, &sums, &complement)?;
    Ok((space, projections.to_vec()))
}

/// Sets of pairwise orthogonal nonzero events whose iterated sum is defined
/// and equals the unit, in lexicographic order. Returns `None` if more than
/// `limit` exist.
pub fn unit_decompositions(space: &OrthoSpace, limit: usize) -> Option<Vec<Vec<EventId>>> {
    let (out, complete) = first_unit_decompositions(space, limit);
    complete.then_some(out)
}

/// The first `limit` decompositions of the unit, and whether that is all of them.
pub fn first_unit_decompositions(space: &OrthoSpace, limit: usize) -> (Vec<Vec<EventId>>, bool) {
    let nonzero: Vec<EventId> = space.events().filter(|&e| e != space.zero()).collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn walk(
        space: &OrthoSpace,
        nonzero: &[EventId],
        start: usize,
        acc: Option<EventId>,
        stack: &mut Vec<EventId>,
        out: &mut Vec<Vec<EventId>>,
        limit: usize,
    ) -> bool {
        if acc == Some(space.unit()) {
            if out.len() >= limit {
                return false;
            }
            out.push(stack.clone());
            return true;
        }
        for (k, &e) in nonzero.iter().enumerate().skip(start) {
            if !stack.iter().all(|&g| space.is_ortho(g, e)) {
                continue;
            }
            let next = match acc {
                None => Some(e),
                Some(a) if space.is_ortho(a, e) => space.sum(a, e),
                Some(_) => None,
            };
            let Some(next) = next else { continue };
            stack.push(e);
            let ok = walk(space, nonzero, k + 1, Some(next), stack, out, limit);
            stack.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let complete = walk(space, &nonzero, 0, None, &mut stack, &mut out, limit);
    (out, complete)
}

/// Triples `(e, f, g)` with `e ≺ f`, `f ≺ g` but not `e ≺ g`.
pub fn precedence_transitivity_violations(space: &OrthoSpace, limit: usize) -> Vec<[EventId; 3]> {
    let mut out = Vec::new();
    for e in space.events() {
        for f in space.events() {
            if !space.precedes(e, f) {
                continue;
            }
            for g in space.events() {
                if space.precedes(f, g) && !space.precedes(e, g) {
                    out.push([e, f, g]);
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Pairs `e != f` with `e ≺ f` and `f ≺ e`.
pub fn precedence_antisymmetry_violations(space: &OrthoSpace) -> Vec<(EventId, EventId)> {
    let mut out = BTreeSet::new();
    for e in space.events() {
        for f in space.events() {
            if e < f && space.precedes(e, f) && space.precedes(f, e) {
                out.insert((e, f));
            }
        }
    }
    out.into_iter().collect()
}
