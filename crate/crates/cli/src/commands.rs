//! The four subcommands. Each returns a report or an input error.

use std::fs;
use std::path::Path;

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use ucp_core::field::{format_rational, parse_rational, Rational};
use ucp_core::formats::{parse_matrices, parse_observable, parse_orthospace, parse_states, MatrixFile};
use ucp_core::instances::MatrixInstance;
use ucp_core::jordan::{spectral_decomposition, JordanElement, SPECTRAL_TOL};
use ucp_core::lueders::{check_a1, condition, conditional_probability, DensityState, LuedersError};
use ucp_core::observables::FiniteObservable;
use ucp_core::orthospace::{verify_orthospace, violates, EventId, OrthoSpace};
use ucp_core::statespace::*;
use ucp_core::synthesis::*;

use crate::report::{parse_witnesses, Check, Report, Witness};
use crate::{CheckKind, ConditionArgs, SpectrumArgs, SynthesizeArgs, VerifyArgs};

/// Malformed or unreadable input.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<Report, InputError>;

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// The JSON object kind of an input file, decided by its fields.
enum InputKind {
    Orthospace,
    Matrices,
    Observable,
}

fn sniff(text: &str) -> Result<InputKind, InputError> {
    let v: Value = serde_json::from_str(text)?;
    let first = match &v {
        Value::Array(items) => items.first().cloned().unwrap_or(Value::Null),
        other => other.clone(),
    };
    let has = |k: &str| first.get(k).is_some();
    if has("n_events") {
        Ok(InputKind::Orthospace)
    } else if has("algebra") {
        Ok(InputKind::Matrices)
    } else if has("support") {
        Ok(InputKind::Observable)
    } else {
        Err(InputError("unrecognised input: expected an orthospace, matrix or observable file".into()))
    }
}

fn parse_event(space: &OrthoSpace, text: &str) -> Result<EventId, InputError> {
    if let Some(e) = space.find_label(text) {
        return Ok(e);
    }
    match text.parse::<usize>() {
        Ok(i) if i < space.len() => Ok(EventId(i)),
        _ => Err(InputError(format!("unknown event {text:?}"))),
    }
}

fn format_state(space: &OrthoSpace, s: &State) -> String {
    let parts: Vec<String> = space.events().map(|e| format!("{}={}", space.label(e), format_rational(s.value(e)))).collect();
    format!("({})", parts.join(", "))
}

fn rational_density(states: &[State], samples: usize, seed: u64) -> Vec<State> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = states.to_vec();
    if states.len() < 2 {
        return out;
    }
    for _ in 0..samples {
        let weights: Vec<Rational> = states.iter().map(|_| Rational::from_integer(rng.gen_range(0..5).into())).collect();
        let total: Rational = weights.iter().sum();
        if total.is_zero() {
            continue;
        }
        let n = states[0].len();
        let values = (0..n).map(|e| states.iter().zip(&weights).map(|(s, w)| &s.values[e] * w).sum::<Rational>() / &total);
        out.push(State::new(values.collect()));
    }
    out
}

fn load_polytope<'s>(space: &'s OrthoSpace, states: Option<&Path>) -> Result<StatePolytope<'s>, InputError> {
    match states {
        Some(path) => Ok(StatePolytope::from_generators(space, parse_states(&read(path)?)?)?),
        None => Ok(build_state_polytope(space)),
    }
}

/// Sample states of a polytope: its generators, or LP optima when they are unknown.
fn polytope_states(polytope: &StatePolytope) -> Vec<State> {
    if let Some(g) = polytope.generators() {
        return g.to_vec();
    }
    let mut out: Vec<State> = Vec::new();
    for e in polytope.space().events() {
        if let Some(s) = polytope.maximize_event(e) {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

pub fn verify(args: &VerifyArgs, mut report: Report) -> Outcome {
    let space = parse_orthospace(&read(&args.common.input)?)?;
    let (samples, seed) = (report.settings.samples, report.settings.seed);
    report.set("events", space.len());
    if let Some(path) = &args.replay {
        let witnesses = parse_witnesses(&read(path)?)?;
        let polytope = load_polytope(&space, args.common.states.as_deref())?;
        for w in witnesses {
            let confirmed = replay(&space, &polytope, &w)?;
            let detail = if confirmed { "violation reproduced" } else { "not a violation on this input" };
            report.push(Check::new("replay", !confirmed, detail).with_witnesses(vec![w]));
        }
        return Ok(report);
    }

    let axioms = verify_orthospace(&space);
    let structural: Vec<Witness> =
        axioms.structural.iter().map(|i| Witness::Structural { e: i.e, f: i.f, sum: i.sum }).collect();
    report.push(
        Check::new("table", structural.is_empty(), format!("{} sums on non-orthogonal pairs", structural.len()))
            .with_witnesses(structural),
    );
    for v in &axioms.verdicts {
        let witnesses = v.witnesses.iter().map(|w| Witness::Axiom { axiom: v.axiom, events: w.clone() }).collect();
        report.push(Check::new(format!("{:?}", v.axiom), v.passed, format!("{} violations", v.violations)).with_witnesses(witnesses));
    }
    let wanted: Vec<CheckKind> = args.check.iter().copied().filter(|c| *c != CheckKind::Os).collect();
    if wanted.is_empty() {
        return Ok(report);
    }
    if !axioms.is_orthospace() {
        report.set("skipped", wanted.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>());
        return Ok(report);
    }
    let polytope = load_polytope(&space, args.common.states.as_deref())?;
    let states = polytope_states(&polytope);
    report.set("generators", states.len());
    for kind in wanted {
        match kind {
            CheckKind::Os => {}
            CheckKind::Uc1 => {
                let v = check_uc1(&polytope)?;
                let ws = v.witnesses.into_iter().map(|w| Witness::Uc { witness: w }).collect::<Vec<_>>();
                report.push(Check::new("UC1", v.passed, format!("{} inseparable pairs", ws.len())).with_witnesses(ws));
            }
            CheckKind::Uc2 => {
                let sample = rational_density(&states, samples, seed);
                let sweep = uc2_sweep(&polytope, &sample)?;
                let mut detail = format!("{}/{} (state, event) pairs unique", sweep.unique, sweep.checked);
                if let Some(gap) = &sweep.coverage_gap {
                    detail.push_str(&format!("; {gap}"));
                }
                if let Some(first) = sweep.failures.first() {
                    detail.push_str(&format!("; first failure {:?}", first.outcome.expect("uc2 outcome")));
                }
                let ws = sweep
                    .failures
                    .iter()
                    .flat_map(|f| f.witnesses.iter().cloned())
                    .take(ucp_core::orthospace::MAX_WITNESSES)
                    .map(|w| Witness::Uc { witness: w })
                    .collect();
                report.push(Check::new("UC2", sweep.passed(), detail).with_witnesses(ws));
            }
            CheckKind::Mix => report.push(mixing_check(&space, &polytope, &states, samples, seed)?),
        }
    }
    Ok(report)
}

fn mixing_check(space: &OrthoSpace, polytope: &StatePolytope, states: &[State], samples: usize, seed: u64) -> Result<Check, InputError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = rational_density(states, samples, seed.wrapping_add(1));
    let (mut tested, mut skipped) = (0, 0);
    let mut witnesses = Vec::new();
    for _ in 0..samples {
        let mu = &pool[rng.gen_range(0..pool.len())];
        let nu = &pool[rng.gen_range(0..pool.len())];
        let s = Rational::new(rng.gen_range(1..12).into(), 12.into());
        let e = EventId(rng.gen_range(0..space.len()));
        match mix_conditionals(mu, nu, &s, e, polytope) {
            Ok(r) => {
                tested += 1;
                if !r.holds {
                    witnesses.push(Witness::Mixing { mu: mu.clone(), nu: nu.clone(), s: format_rational(&s), event: e });
                }
            }
            Err(StateError::ZeroProbability { .. }) | Err(StateError::Precondition(_)) => skipped += 1,
            Err(other) => return Err(other.into()),
        }
    }
    let detail = format!(
        "{}/{tested} tuples exact; {skipped} skipped (zero mass or non-unique conditional)",
        tested - witnesses.len()
    );
    Ok(Check::new("mixing identity", witnesses.is_empty(), detail).with_witnesses(witnesses))
}

fn replay(space: &OrthoSpace, polytope: &StatePolytope, w: &Witness) -> Result<bool, InputError> {
    let in_range = |e: &EventId| e.index() < space.len();
    Ok(match w {
        Witness::Axiom { axiom, events } => {
            if events.len() != axiom.arity() || !events.iter().all(in_range) {
                return Err(InputError(format!("witness does not fit {axiom:?} on this input")));
            }
            violates(space, *axiom, events)
        }
        Witness::Structural { e, f, sum } => {
            if ![e, f, sum].into_iter().all(in_range) {
                return Err(InputError("witness events out of range".into()));
            }
            space.sum(*e, *f) == Some(*sum) && !space.is_ortho(*e, *f)
        }
        Witness::Uc { witness } => replay_uc_witness(polytope, witness)?,
        Witness::Mixing { mu, nu, s, event } => {
            let s = parse_rational(s).ok_or_else(|| InputError(format!("bad mixing weight {s:?}")))?;
            !mix_conditionals(mu, nu, &s, *event, polytope)?.holds
        }
    })
}

pub fn condition_cmd(args: &ConditionArgs, mut report: Report) -> Outcome {
    let text = read(&args.common.input)?;
    let states_path = args.common.states.as_deref().ok_or_else(|| InputError("--states is required".into()))?;
    match sniff(&text)? {
        InputKind::Orthospace => {
            let space = parse_orthospace(&text)?;
            let event = args.event.as_deref().ok_or_else(|| InputError("--event is required for an orthospace input".into()))?;
            let e = parse_event(&space, event)?;
            let states = parse_states(&read(states_path)?)?;
            let [mu] = states.as_slice() else { return Err(InputError("expected exactly one state".into())) };
            let check = is_state(&space, &mu.values)?;
            if !check.valid {
                return Err(InputError(format!("input is not a state: {:?}", check.violations)));
            }
            report.set("mass", format_rational(mu.value(e)));
            if !mu.value(e).is_positive() {
                report.push(Check::new("conditioning", false, format!("conditioning undefined: probability of {} is 0", space.label(e))));
                return Ok(report);
            }
            let polytope = build_state_polytope(&space);
            let v = check_uc2(&polytope, mu, e)?;
            let slice = conditional_slice(&polytope, mu, e)?;
            if let Ok(Some(d)) = slice.dimension() {
                report.set("slice_dimension", d);
            }
            match v.conditional {
                Some(c) => {
                    report.set("conditional", format_state(&space, &c));
                    report.set("conditional_values", &c);
                    report.push(Check::new("conditioning", true, format!("unique conditional under {}", space.label(e))));
                }
                None => {
                    let ws = v.witnesses.into_iter().map(|w| Witness::Uc { witness: w }).collect();
                    let outcome = v.outcome.expect("uc2 outcome");
                    report.push(Check::new("conditioning", false, format!("conditional under {} is {outcome:?}", space.label(e))).with_witnesses(ws));
                }
            }
        }
        InputKind::Matrices => {
            let ps = parse_matrices(&text)?;
            let rho = parse_matrices(&read(states_path)?)?;
            let [rho] = rho.as_slice() else { return Err(InputError("expected exactly one density matrix".into())) };
            let rho = DensityState::new(rho.clone())?;
            let (e, targets) = ps.split_first().ok_or_else(|| InputError("no projection given".into()))?;
            report.set("mass", rho.pairing(e));
            match condition(&rho, e) {
                Ok(c) => {
                    report.set("conditional", MatrixFile::from_element(c.rho()));
                    for (i, f) in targets.iter().enumerate() {
                        report.set(&format!("probability_{}", i + 1), conditional_probability(&rho, e, f)?);
                    }
                    report.push(Check::new("conditioning", true, "Lueders conditional computed"));
                }
                Err(LuedersError::ZeroProbability { mass }) => {
                    report.push(Check::new("conditioning", false, format!("conditioning undefined: probability {mass:e}")));
                }
                Err(other) => return Err(other.into()),
            }
        }
        InputKind::Observable => return Err(InputError("condition expects an orthospace or matrix file".into())),
    }
    Ok(report)
}

pub fn synthesize(args: &SynthesizeArgs, mut report: Report) -> Outcome {
    let text = read(&args.common.input)?;
    match sniff(&text)? {
        InputKind::Orthospace => synthesize_rational(args, parse_orthospace(&text)?, report),
        InputKind::Matrices => {
            let ps = parse_matrices(&text)?;
            let first = ps.first().ok_or_else(|| InputError("no projection given".into()))?;
            let (algebra, n) = (first.algebra(), first.n());
            let states = match args.common.states.as_deref() {
                Some(path) => {
                    parse_matrices(&read(path)?)?.into_iter().map(DensityState::new).collect::<Result<Vec<_>, _>>()?
                }
                None => Vec::new(),
            };
            let inst = MatrixInstance::from_projections(algebra, n, ps, states)?;
            report.set("events", inst.space.len());
            report.set("generators", inst.states.len());
            let tol = report.settings.tol;
            let mut a1: f64 = 0.0;
            for e in &inst.projections {
                for f in &inst.projections {
                    a1 = a1.max(check_a1(e, f)?);
                }
            }
            report.push(Check::new("A1", a1 <= tol, format!("max residual {a1:e} over all event pairs")));
            let a = match inst.synthetic() {
                Ok(a) => a,
                Err(err) => {
                    report.push(Check::new("synthesis", false, err.to_string()));
                    return Ok(report);
                }
            };
            report.set("dim", a.dim());
            let table = match inst.ue_table(&a) {
                Ok(t) => t,
                Err(err) => {
                    report.push(Check::new("Ue", false, err.to_string()));
                    return Ok(report);
                }
            };
            let ue = inst.ue_residual(&a, &table);
            report.push(Check::new("Ue", ue <= tol, format!("max residual {ue:e} against the triple product")));
            let Some(product) = product_checks(&mut report, &a, &table, &inst.space, tol) else { return Ok(report) };
            let pr = inst.product_residual(&a, &product);
            report.push(Check::new("product oracle", pr <= tol, format!("max residual {pr:e} against the Jordan product")));
            density_check(&mut report, &a);
            write_dump(&a, &table, args)?;
            Ok(report)
        }
        InputKind::Observable => Err(InputError("synthesize expects an orthospace or matrix file".into())),
    }
}

fn synthesize_rational(args: &SynthesizeArgs, space: OrthoSpace, mut report: Report) -> Outcome {
    let axioms = verify_orthospace(&space);
    if !axioms.is_orthospace() {
        report.push(Check::new("orthospace", false, format!("failed: {:?}", axioms.failed_axioms())));
        return Ok(report);
    }
    let polytope = load_polytope(&space, args.common.states.as_deref())?;
    let states = polytope_states(&polytope);
    report.set("events", space.len());
    report.set("generators", states.len());
    let a = match build_synthetic_space(&space, states.iter().map(|s| s.values.clone()).collect()) {
        Ok(a) => a,
        Err(err) => {
            report.push(Check::new("synthesis", false, err.to_string()));
            return Ok(report);
        }
    };
    report.set("dim", a.dim());
    report.set("basis", a.basis_events().iter().map(|e| space.label(*e).to_string()).collect::<Vec<_>>());
    if !a.warnings.is_empty() {
        report.set("warnings", &a.warnings);
    }
    let table = match build_ue_table(&a, &space, &LpOracle { polytope: &polytope, states: &states }) {
        Ok(t) => t,
        Err(SynthesisError::NotUnique { generator, event, witness }) => {
            let ws = witness.into_iter().map(|w| Witness::Uc { witness: w }).collect();
            let detail = format!("conditional of generator {generator} under {} is not unique", space.label(event));
            report.push(Check::new("UC2", false, detail).with_witnesses(ws));
            return Ok(report);
        }
        Err(err) => {
            report.push(Check::new("Ue", false, err.to_string()));
            return Ok(report);
        }
    };
    report.push(Check::new("UC2", true, "every generator has a unique conditional under every event of positive mass"));
    if product_checks(&mut report, &a, &table, &space, 0.0).is_none() {
        return Ok(report);
    }
    density_check(&mut report, &a);
    write_dump(&a, &table, args)?;
    Ok(report)
}

fn product_checks<T: ucp_core::field::Field>(
    report: &mut Report,
    a: &SyntheticSpace<T>,
    table: &UeTable<T>,
    space: &OrthoSpace,
    tol: f64,
) -> Option<ReconstructedProduct<T>> {
    let product = match reconstruct_product(a, table, space, tol) {
        Ok(p) => p,
        Err(err) => {
            report.push(Check::new("product", false, err.to_string()));
            return None;
        }
    };
    report.push(Check::new(
        "product",
        true,
        format!("symmetry residual {:e}, unit residual {:e}", product.symmetry_residual, product.unit_residual),
    ));
    let (samples, seed) = (report.settings.samples, report.settings.seed);
    let wd = check_well_definedness(a, table, &product, space, samples, seed);
    report.push(Check::new(
        "well-defined",
        wd.holds(tol),
        format!("{} comparisons, residuals {:e} / {:e}", wd.comparisons, wd.table_vs_decomposition, wd.between_decompositions),
    ));
    let prims: Vec<Primitive<T>> = sample_primitives(space, 2 * samples, seed);
    let pairs: Vec<_> = prims.chunks(2).map(|p| (a.combination(&p[0].terms), a.combination(&p[1].terms))).collect();
    let jb = check_jb_on_reconstruction(a, &product, &pairs);
    report.push(Check::new(
        "JB laws",
        jb.holds(tol),
        format!(
            "{} pairs: Jordan identity {:e}, square norm {:e}, square slack {:e}, product slack {:e}",
            jb.pairs, jb.jordan_identity, jb.square_norm, jb.square_sum_slack, jb.product_slack
        ),
    ));
    Some(product)
}

fn density_check<T: ucp_core::field::Field>(report: &mut Report, a: &SyntheticSpace<T>) {
    let d = check_density(a, report.settings.samples, report.settings.seed);
    let n = d.extreme.len();
    let hull = d.extreme.iter().filter(|x| x.extreme_in_hull).count();
    let interval = d.extreme.iter().filter(|x| x.extreme_in_interval).count();
    report.push(Check::new("extreme points", d.all_extreme_in_hull(), format!("{hull}/{n} events extreme in conv(E), {interval}/{n} vertices of [0,1]")));
    report.set("hull_equals_interval", d.hull_equals_interval);
    if let Some(note) = &d.note {
        report.set("density_note", note);
    }
}

fn write_dump<T: ucp_core::field::Field>(a: &SyntheticSpace<T>, table: &UeTable<T>, args: &SynthesizeArgs) -> Result<(), InputError> {
    if let Some(path) = &args.dump {
        let text = serde_json::to_string_pretty(&a.dump(Some(table)))?;
        fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

pub fn spectrum(args: &SpectrumArgs, mut report: Report) -> Outcome {
    let text = read(&args.common.input)?;
    match sniff(&text)? {
        InputKind::Matrices => {
            for (i, x) in parse_matrices(&text)?.iter().enumerate() {
                let check = matrix_spectrum(&mut report, i, x);
                report.push(check);
            }
        }
        InputKind::Observable => {
            let space_path = args.space.as_deref().ok_or_else(|| InputError("--space is required for an observable".into()))?;
            let space = parse_orthospace(&read(space_path)?)?;
            let file = parse_observable(&text)?;
            for (_, e) in &file.support {
                if *e >= space.len() {
                    return Err(InputError(format!("unknown event {e}")));
                }
            }
            let x = FiniteObservable::new(&space, file.rational_support()?)?;
            let radius: Rational = x.spectral_radius();
            let mut values: Vec<&Rational> = x.support().iter().map(|(t, _)| t).collect();
            values.sort();
            report.set("values", values.iter().map(|v| format_rational(v)).collect::<Vec<_>>());
            report.set("spectral_radius", format_rational(&radius));
            report.push(Check::new("observable", true, format!("{} values, spectral radius {}", values.len(), format_rational(&radius))));
        }
        InputKind::Orthospace => return Err(InputError("spectrum expects a matrix or observable file".into())),
    }
    Ok(report)
}

fn matrix_spectrum(report: &mut Report, i: usize, x: &JordanElement) -> Check {
    let name = format!("spectrum {i}");
    let s = match spectral_decomposition(x) {
        Ok(s) => s,
        Err(err) => return Check::new(name, false, err.to_string()),
    };
    let residual = s.reconstruct().max_abs_diff(x);
    let idempotence = s.frame.iter().map(|p| p.square().max_abs_diff(p)).fold(0.0, f64::max);
    let radius = s.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    report.set(
        &format!("eigenvalues_{i}"),
        s.values.iter().zip(&s.multiplicities).map(|(v, m)| (*v, *m)).collect::<Vec<_>>(),
    );
    report.set(&format!("spectral_radius_{i}"), radius);
    let passed = residual <= SPECTRAL_TOL && idempotence <= SPECTRAL_TOL;
    Check::new(name, passed, format!("frame residual {residual:e}, idempotence {idempotence:e}, radius {radius}"))
}
