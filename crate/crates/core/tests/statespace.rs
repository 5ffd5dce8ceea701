use ucp_core::field::{rat, Rational};
use ucp_core::orthospace::{make_boolean, make_mo2, EventId};
use ucp_core::statespace::*;

fn uniform_mo2() -> State {
    State::new(vec![rat(0, 1), rat(1, 1), rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)])
}

#[test]
fn is_state_examples() {
    let b2 = make_boolean(2).unwrap();
    let half = State::new(vec![rat(0, 1), rat(1, 2), rat(1, 2), rat(1, 1)]);
    assert!(is_state(&b2, &half.values).unwrap().valid);

    let bad = State::new(vec![rat(0, 1), rat(1, 2), rat(2, 5), rat(9, 10)]);
    let check = is_state(&b2, &bad.values).unwrap();
    assert!(!check.valid);
    assert!(check.violations.contains(&StateViolation::Unit { value: "9/10".into() }));

    let b3 = make_boolean(3).unwrap();
    let mu = State::from_atom_weights(&[rat(1, 5), rat(3, 10), rat(1, 2)]);
    assert!(is_state(&b3, &mu.values).unwrap().valid);
    assert!(matches!(is_state(&b3, &half.values), Err(StateError::Length { .. })));
}

#[test]
fn polytope_vertices() {
    let b1 = make_boolean(2).unwrap();
    assert_eq!(build_state_polytope(&b1).generators().unwrap().len(), 2);
    let mo2 = make_mo2();
    let p = build_state_polytope(&mo2);
    assert_eq!(p.generators().unwrap().len(), 4);
    assert_eq!(p.dimension(), Some(2));
    let b3 = make_boolean(3).unwrap();
    let p = build_state_polytope(&b3);
    let v = p.generators().unwrap();
    assert_eq!(v.len(), 3);
    for s in v {
        assert!(is_state(&b3, &s.values).unwrap().valid);
    }
}

#[test]
fn slices() {
    let b3 = make_boolean(3).unwrap();
    let p = build_state_polytope(&b3);
    let mu = State::from_atom_weights(&[rat(1, 5), rat(3, 10), rat(1, 2)]);
    let slice = conditional_slice(&p, &mu, EventId(0b011)).unwrap();
    let v = slice.vertices().unwrap();
    assert_eq!(v, vec![State::from_atom_weights(&[rat(2, 5), rat(3, 5), rat(0, 1)])]);

    let mo2 = make_mo2();
    let p = build_state_polytope(&mo2);
    let slice = conditional_slice(&p, &uniform_mo2(), EventId(2)).unwrap();
    assert_eq!(slice.dimension().unwrap(), Some(1));
    for v in slice.vertices().unwrap() {
        assert_eq!(v.values[2], rat(1, 1));
    }

    let unit = conditional_slice(&p, &uniform_mo2(), EventId(1)).unwrap();
    assert!(unit.contains(&uniform_mo2()).unwrap());

    let point = p.generators().unwrap()[0].clone();
    let zero_event = (2..6).map(EventId).find(|&e| point.value(e) == &rat(0, 1)).unwrap();
    assert!(matches!(conditional_slice(&p, &point, zero_event), Err(StateError::ZeroProbability { .. })));
}

#[test]
fn uc1_examples() {
    let b2 = make_boolean(2).unwrap();
    assert!(check_uc1(&build_state_polytope(&b2)).unwrap().passed);
    let mo2 = make_mo2();
    assert!(check_uc1(&build_state_polytope(&mo2)).unwrap().passed);
    let single = StatePolytope::from_generators(&mo2, vec![uniform_mo2()]).unwrap();
    let v = check_uc1(&single).unwrap();
    assert!(!v.passed);
    assert!(v.witnesses.contains(&UcWitness::Inseparable { e: EventId(2), f: EventId(4) }));
    for w in &v.witnesses {
        assert!(replay_uc_witness(&single, w).unwrap());
    }
}

#[test]
fn uc1_permutation_invariant() {
    let mo2 = make_mo2();
    let perm = [3, 0, 5, 1, 4, 2];
    let permuted = mo2.permuted(&perm);
    assert_eq!(
        check_uc1(&build_state_polytope(&mo2)).unwrap().passed,
        check_uc1(&build_state_polytope(&permuted)).unwrap().passed
    );
}

#[test]
fn uc2_examples() {
    let b3 = make_boolean(3).unwrap();
    let p = build_state_polytope(&b3);
    let mu = State::from_atom_weights(&[rat(1, 5), rat(3, 10), rat(1, 2)]);
    for e in 1..8 {
        let v = check_uc2(&p, &mu, EventId(e)).unwrap();
        assert_eq!(v.outcome, Some(Uc2Outcome::Unique));
        assert_eq!(v.conditional.unwrap(), classical_conditional(&mu, EventId(e)));
    }
    let v = check_uc2(&p, &mu, EventId(7)).unwrap();
    assert_eq!(v.conditional.unwrap(), mu);

    let mo2 = make_mo2();
    let p = build_state_polytope(&mo2);
    let v = check_uc2(&p, &uniform_mo2(), EventId(2)).unwrap();
    assert_eq!(v.outcome, Some(Uc2Outcome::Multiple));
    match &v.witnesses[0] {
        UcWitness::TwoConditionals { at, first, second, .. } => {
            assert_eq!(*at, EventId(4));
            assert_eq!(first.values[4], rat(0, 1));
            assert_eq!(second.values[4], rat(1, 1));
        }
        other => panic!("unexpected witness {other:?}"),
    }
    assert!(replay_uc_witness(&p, &v.witnesses[0]).unwrap());
}

#[test]
fn certainty_states_exist() {
    let b3 = make_boolean(3).unwrap();
    let p = build_state_polytope(&b3);
    for e in 1..8 {
        assert_eq!(p.maximize_event(EventId(e)).unwrap().values[e], rat(1, 1));
    }
}

#[test]
fn mixing_identity() {
    let b3 = make_boolean(3).unwrap();
    let p = build_state_polytope(&b3);
    let mu = State::from_atom_weights(&[rat(1, 5), rat(3, 10), rat(1, 2)]);
    let nu = State::from_atom_weights(&[rat(1, 2), rat(1, 4), rat(1, 4)]);
    let r = mix_conditionals(&mu, &nu, &rat(1, 2), EventId(0b011), &p).unwrap();
    assert!(r.holds);
    let r = mix_conditionals(&mu, &mu, &rat(1, 3), EventId(0b011), &p).unwrap();
    assert_eq!(r.lhs, classical_conditional(&mu, EventId(0b011)));

    let point_c = State::from_atom_weights(&[rat(0, 1), rat(0, 1), rat(1, 1)]);
    let r = mix_conditionals(&mu, &point_c, &rat(1, 2), EventId(0b011), &p).unwrap();
    assert!(r.holds);
    assert_eq!(r.rhs, classical_conditional(&mu, EventId(0b011)));
}

#[test]
fn mixing_rejects_non_unique() {
    let mo2 = make_mo2();
    let p = build_state_polytope(&mo2);
    let v = p.generators().unwrap();
    let r = mix_conditionals(&v[0], &v[3], &rat(1, 2), EventId(1), &p);
    assert!(r.is_ok());
    let with_a = v.iter().find(|s| s.values[2] == rat(1, 1)).unwrap();
    let r = mix_conditionals(with_a, &uniform_mo2(), &Rational::new(1.into(), 2.into()), EventId(2), &p);
    assert!(matches!(r, Err(StateError::Precondition(_))));
}

#[test]
fn sweep_boolean_and_mo2() {
    let b3 = make_boolean(3).unwrap();
    let s = uc2_sweep(&build_state_polytope(&b3), &[]).unwrap();
    assert!(s.passed() && s.coverage_gap.is_none());
    assert_eq!(s.checked, 3 * 4);
    let mo2 = make_mo2();
    let s = uc2_sweep(&build_state_polytope(&mo2), &[]).unwrap();
    assert!(!s.passed());
}
