//! Projection-lattice instances: a finite set of idempotents closed under
//! orthogonal sums and complements, with density states as generators.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::jordan::{random, Algebra, JordanElement};
use crate::lueders::{DensityState, Lattice, LuedersError, ProjectionInstance};
use crate::orthospace::{projection_orthospace, EventId, OrthoError, OrthoSpace};
use crate::synthesis::{
    build_synthetic_space, build_ue_table, LuedersOracle, ReconstructedProduct, SynthesisError, SyntheticSpace, UeTable,
};

/// Tolerance for identifying two projections.
pub const MATCH_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum InstanceError {
    #[error(transparent)]
    Ortho(#[from] OrthoError),
    #[error(transparent)]
    Lueders(#[from] LuedersError),
    #[error("closure exceeds {0} projections")]
    TooLarge(usize),
}

/// Bound on the size of a closed projection list.
pub const MAX_CLOSURE: usize = 256;

#[derive(Clone, Debug)]
pub struct MatrixInstance {
    pub algebra: Algebra,
    pub n: usize,
    pub space: OrthoSpace,
    /// `projections[e]` is the idempotent of event `e`.
    pub projections: Vec<JordanElement>,
    pub states: Vec<DensityState>,
}

/// `0`, `𝕀` and every partial sum of every frame, without duplicates.
pub fn frame_closure(algebra: Algebra, n: usize, frames: &[Vec<JordanElement>]) -> Vec<JordanElement> {
    let mut out = vec![JordanElement::zero(algebra, n), JordanElement::identity(algebra, n)];
    for frame in frames {
        for mask in 1..(1usize << frame.len()) {
            let p = (0..frame.len())
                .filter(|i| mask >> i & 1 == 1)
                .fold(JordanElement::zero(algebra, n), |acc, i| acc.add(&frame[i]));
            if !out.iter().any(|q| q.max_abs_diff(&p) <= MATCH_TOL) {
                out.push(p);
            }
        }
    }
    out
}

/// The Pauli frames `{(𝕀 ± σ)/2}` for `σ = σz, σx, σy`.
pub fn pauli_frames() -> Vec<Vec<JordanElement>> {
    let h = 0.5;
    let c = |rows: [[(f64, f64); 2]; 2]| JordanElement::complex(&rows.map(|r| r.to_vec())).expect("hermitian");
    vec![
        vec![c([[(1.0, 0.0), (0.0, 0.0)], [(0.0, 0.0), (0.0, 0.0)]]), c([[(0.0, 0.0), (0.0, 0.0)], [(0.0, 0.0), (1.0, 0.0)]])],
        vec![c([[(h, 0.0), (h, 0.0)], [(h, 0.0), (h, 0.0)]]), c([[(h, 0.0), (-h, 0.0)], [(-h, 0.0), (h, 0.0)]])],
        vec![c([[(h, 0.0), (0.0, -h)], [(0.0, h), (h, 0.0)]]), c([[(h, 0.0), (0.0, h)], [(0.0, -h), (h, 0.0)]])],
    ]
}

/// Adds complements and sums of orthogonal pairs until the list is closed.
pub fn lattice_closure(algebra: Algebra, n: usize, list: Vec<JordanElement>) -> Result<Vec<JordanElement>, InstanceError> {
    let identity = JordanElement::identity(algebra, n);
    let mut out: Vec<JordanElement> = Vec::new();
    let push = |out: &mut Vec<JordanElement>, p: JordanElement| -> Result<bool, InstanceError> {
        if out.iter().any(|q| q.max_abs_diff(&p) <= MATCH_TOL) {
            return Ok(false);
        }
        if out.len() >= MAX_CLOSURE {
            return Err(InstanceError::TooLarge(MAX_CLOSURE));
        }
        out.push(p);
        Ok(true)
    };
    push(&mut out, JordanElement::zero(algebra, n))?;
    push(&mut out, identity.clone())?;
    for p in list {
        push(&mut out, p)?;
    }
    let mut done = 0;
    while done < out.len() {
        let p = out[done].clone();
        push(&mut out, identity.sub(&p))?;
        for i in 0..=done {
            let q = out[i].clone();
            if p.jordan_product(&q).max_abs() <= MATCH_TOL {
                push(&mut out, p.add(&q))?;
            }
        }
        done += 1;
    }
    Ok(out)
}

fn is_rank_one(p: &JordanElement) -> bool {
    (p.trace() - 1.0).abs() <= MATCH_TOL
}

impl MatrixInstance {
    /// Events from [`frame_closure`]; generators are the pure states of all
    /// rank-one events followed by `extra` states.
    pub fn from_frames(
        algebra: Algebra,
        n: usize,
        frames: &[Vec<JordanElement>],
        extra: Vec<DensityState>,
    ) -> Result<Self, InstanceError> {
        Self::from_projections(algebra, n, frame_closure(algebra, n, frames), extra)
    }

    /// Events from the [`lattice_closure`] of `list`; generators as in [`Self::from_frames`].
    pub fn from_projections(
        algebra: Algebra,
        n: usize,
        list: Vec<JordanElement>,
        extra: Vec<DensityState>,
    ) -> Result<Self, InstanceError> {
        let list = lattice_closure(algebra, n, list)?;
        let (space, projections) = projection_orthospace(algebra, n, &list, MATCH_TOL)?;
        let mut states = Vec::new();
        for p in projections.iter().filter(|p| is_rank_one(p)) {
            states.push(DensityState::new(p.clone())?);
        }
        states.extend(extra);
        Ok(Self { algebra, n, space, projections, states })
    }

    /// `frames` seeded random frames plus `densities` random density states.
    pub fn random(algebra: Algebra, n: usize, frames: usize, densities: usize, seed: u64) -> Result<Self, InstanceError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fs: Vec<Vec<JordanElement>> = (0..frames).map(|_| random::frame(&mut rng, algebra, n)).collect();
        let extra = (0..densities)
            .map(|_| DensityState::new(random::density(&mut rng, algebra, n)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_frames(algebra, n, &fs, extra)
    }

    /// Qubit with the Pauli frames and `extra_frames` seeded random frames.
    pub fn qubit(extra_frames: usize, seed: u64) -> Result<Self, InstanceError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut frames = pauli_frames();
        frames.extend((0..extra_frames).map(|_| random::frame(&mut rng, Algebra::Complex, 2)));
        let extra = vec![DensityState::maximally_mixed(Algebra::Complex, 2)];
        Self::from_frames(Algebra::Complex, 2, &frames, extra)
    }

    pub fn event_of(&self, p: &JordanElement) -> Option<EventId> {
        self.projections.iter().position(|q| q.max_abs_diff(p) <= MATCH_TOL).map(EventId)
    }

    pub fn projection(&self, e: EventId) -> &JordanElement {
        &self.projections[e.index()]
    }

    pub fn oracle(&self) -> LuedersOracle<'_> {
        LuedersOracle { projections: &self.projections, states: &self.states }
    }

    pub fn synthetic(&self) -> Result<SyntheticSpace<f64>, SynthesisError> {
        build_synthetic_space(&self.space, self.oracle().generator_values())
    }

    pub fn ue_table(&self, a: &SyntheticSpace<f64>) -> Result<UeTable<f64>, SynthesisError> {
        build_ue_table(a, &self.space, &self.oracle())
    }

    /// The canonical map `A → H`, `Σ xᵢ π(bᵢ) ↦ Σ xᵢ p_{bᵢ}`.
    pub fn embed(&self, a: &SyntheticSpace<f64>, x: &[f64]) -> JordanElement {
        a.basis_events()
            .iter()
            .zip(x)
            .fold(JordanElement::zero(self.algebra, self.n), |acc, (b, t)| acc.add(&self.projection(*b).scale(*t)))
    }

    /// Largest `‖ι(Uₑπ(bᵢ)) − {pₑ, p_{bᵢ}, pₑ}‖` over events and basis events.
    pub fn ue_residual(&self, a: &SyntheticSpace<f64>, table: &UeTable<f64>) -> f64 {
        let mut worst: f64 = 0.0;
        for e in self.space.events() {
            let p = self.projection(e);
            for &b in a.basis_events() {
                let got = self.embed(a, &table.ue(e).apply(a.coords(b)));
                let want = p.triple_product(self.projection(b), p);
                worst = worst.max(got.max_abs_diff(&want));
            }
        }
        worst
    }

    /// Largest `‖ι(π(e)∘π(f)) − pₑ∘p_f‖` over all event pairs.
    pub fn product_residual(&self, a: &SyntheticSpace<f64>, product: &ReconstructedProduct<f64>) -> f64 {
        let mut worst: f64 = 0.0;
        for e in self.space.events() {
            for f in self.space.events() {
                let got = self.embed(a, &product.product(a.coords(e), a.coords(f)));
                worst = worst.max(got.max_abs_diff(&self.projection(e).jordan_product(self.projection(f))));
            }
        }
        worst
    }

    pub fn lattice_instance(&self) -> ProjectionInstance {
        ProjectionInstance {
            algebra: self.algebra,
            n: self.n,
            lattice: Lattice::Listed(self.projections.clone()),
            states: self.states.clone(),
        }
    }
}

/// A sparse instance and its enrichment, with the events under test.
pub struct Enrichment {
    pub sparse: MatrixInstance,
    pub enriched: MatrixInstance,
    pub e: EventId,
    pub f: EventId,
}

/// Qubit over the Pauli frames with `e = (𝕀+σz)/2`, `f = (𝕀+σx)/2`; the
/// enrichment adds the spectral frame of `e + f`.
pub fn qubit_sum_enrichment() -> Result<Enrichment, InstanceError> {
    let frames = pauli_frames();
    let mixed = || vec![DensityState::maximally_mixed(Algebra::Complex, 2)];
    let sparse = MatrixInstance::from_frames(Algebra::Complex, 2, &frames, mixed())?;
    let (pe, pf) = (frames[0][0].clone(), frames[1][0].clone());
    let spectrum = crate::jordan::spectral_decomposition(&pe.add(&pf)).map_err(LuedersError::from)?;
    let mut more = frames;
    more.push(spectrum.frame);
    let enriched = MatrixInstance::from_frames(Algebra::Complex, 2, &more, mixed())?;
    let e = sparse.event_of(&pe).expect("listed");
    let f = sparse.event_of(&pf).expect("listed");
    Ok(Enrichment { sparse, enriched, e, f })
}

/// Random frames in `H₃(ℂ)` with `e` and `f` of rank two from the first two
/// frames; the enrichment adds the frame `{q, e − q, 𝕀 − e}`, where `q` is a
/// rank-one spectral projection of `efe`, and closes the result.
pub fn compression_enrichment(frames: usize, seed: u64) -> Result<Enrichment, InstanceError> {
    let (algebra, n) = (Algebra::Complex, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<Vec<JordanElement>> = (0..frames.max(2)).map(|_| random::frame(&mut rng, algebra, n)).collect();
    let pe = fs[0][0].add(&fs[0][1]);
    let pf = fs[1][0].add(&fs[1][1]);
    let spectrum = crate::jordan::spectral_decomposition(&pe.triple_product(&pf, &pe)).map_err(LuedersError::from)?;
    let q = spectrum.frame.last().expect("non-empty frame").clone();
    let sparse = MatrixInstance::from_frames(algebra, n, &fs, Vec::new())?;
    let mut more = fs.clone();
    more.push(vec![q.clone(), pe.sub(&q), fs[0][2].clone()]);
    let enriched = MatrixInstance::from_frames(algebra, n, &more, Vec::new())?;
    let e = sparse.event_of(&pe).expect("listed");
    let f = sparse.event_of(&pf).expect("listed");
    Ok(Enrichment { sparse, enriched, e, f })
}
