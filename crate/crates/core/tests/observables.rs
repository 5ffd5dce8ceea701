use ucp_core::field::{rat, Rational};
use ucp_core::instances::{compression_enrichment, qubit_sum_enrichment, MatrixInstance};
use ucp_core::jordan::Algebra;
use ucp_core::observables::*;
use ucp_core::orthospace::{make_boolean, make_mo2, EventId, OrthoSpace};
use ucp_core::statespace::{build_state_polytope, State};
use ucp_core::synthesis::{build_synthetic_space, build_ue_table, LpOracle, SyntheticSpace};

fn full(space: &OrthoSpace) -> (SyntheticSpace<Rational>, Vec<State>) {
    let states = build_state_polytope(space).generators().unwrap().to_vec();
    (build_synthetic_space(space, states.iter().map(|s| s.values.clone()).collect()).unwrap(), states)
}

#[test]
fn spectral_radius_examples() {
    let b2 = make_boolean(2).unwrap();
    let x = FiniteObservable::new(&b2, vec![(rat(2, 1), EventId(1)), (rat(-1, 1), EventId(2))]).unwrap();
    assert_eq!(x.spectral_radius(), rat(2, 1));
    assert_eq!(FiniteObservable::constant(&b2, rat(-3, 2)).spectral_radius(), rat(3, 2));
    let b3 = make_boolean(3).unwrap();
    let x = FiniteObservable::new(&b3, vec![(rat(1, 2), EventId(1)), (rat(-3, 1), EventId(2)), (rat(1, 1), EventId(4))]).unwrap();
    assert_eq!(x.spectral_radius(), rat(3, 1));
}

#[test]
fn observable_validation() {
    let b3 = make_boolean(3).unwrap();
    assert_eq!(FiniteObservable::<Rational>::new(&b3, vec![]), Err(ObservableError::Empty));
    assert_eq!(
        FiniteObservable::new(&b3, vec![(rat(1, 1), EventId(1)), (rat(2, 1), EventId(3))]),
        Err(ObservableError::NotOrthogonal(1, 3))
    );
    assert_eq!(FiniteObservable::new(&b3, vec![(rat(1, 1), EventId(1)), (rat(2, 1), EventId(2))]), Err(ObservableError::NotUnit));
    assert!(matches!(
        FiniteObservable::new(&b3, vec![(rat(1, 1), EventId(1)), (rat(1, 1), EventId(6))]),
        Err(ObservableError::DuplicateValue(_))
    ));
    assert_eq!(FiniteObservable::new(&b3, vec![(rat(1, 1), EventId(9))]), Err(ObservableError::UnknownEvent(9)));
}

#[test]
fn expectation_examples() {
    let b3 = make_boolean(3).unwrap();
    let mu = State::from_atom_weights(&[rat(1, 5), rat(3, 10), rat(1, 2)]);
    let x = FiniteObservable::new(&b3, vec![(rat(1, 1), EventId(1)), (rat(2, 1), EventId(2)), (rat(3, 1), EventId(4))]).unwrap();
    assert_eq!(x.expectation(&mu.values), rat(23, 10));
    assert_eq!(FiniteObservable::constant(&b3, rat(1, 1)).expectation(&mu.values), rat(1, 1));
    assert_eq!(FiniteObservable::indicator(&b3, EventId(3)).expectation(&mu.values), rat(1, 2));
    let d = x.distribution(&mu.values);
    assert_eq!(d, vec![(rat(1, 1), rat(1, 5)), (rat(2, 1), rat(3, 10)), (rat(3, 1), rat(1, 2))]);

    let nu = State::from_atom_weights(&[rat(1, 2), rat(1, 4), rat(1, 4)]);
    let mix = mu.mix(&nu, &rat(1, 3));
    let lhs = x.expectation(&mix.values);
    let rhs = rat(1, 3) * x.expectation(&mu.values) + rat(2, 3) * x.expectation(&nu.values);
    assert_eq!(lhs, rhs);
}

#[test]
fn representing_elements() {
    let b2 = make_boolean(2).unwrap();
    let (a, _) = full(&b2);
    let x = FiniteObservable::new(&b2, vec![(rat(2, 1), EventId(1)), (rat(-1, 1), EventId(2))]).unwrap();
    let r = representing_element(&a, &x, 0.0);
    assert_eq!(r.coords, vec![rat(2, 1), rat(-1, 1)]);
    assert_eq!(r.norm, rat(2, 1));
    assert!(r.norm_matches);
    let z = representing_element(&a, &FiniteObservable::constant(&b2, rat(0, 1)), 0.0);
    assert_eq!(z.coords, vec![rat(0, 1), rat(0, 1)]);
    let ind = representing_element(&a, &FiniteObservable::indicator(&b2, EventId(1)), 0.0);
    assert_eq!(ind.coords, a.coords(EventId(1)).to_vec());
}

#[test]
fn norm_equals_radius_on_matrix_instance() {
    let inst = MatrixInstance::random(Algebra::Complex, 3, 5, 0, 3).unwrap();
    let a = inst.synthetic().unwrap();
    let decomps = ucp_core::orthospace::unit_decompositions(&inst.space, 10_000).unwrap();
    for (k, d) in decomps.iter().enumerate() {
        let support: Vec<(f64, EventId)> = d.iter().enumerate().map(|(i, &e)| ((i as f64 + 1.0) * if k % 2 == 0 { 1.0 } else { -0.7 }, e)).collect();
        let x = FiniteObservable::new(&inst.space, support).unwrap();
        assert!(representing_element(&a, &x, 1e-8).norm_matches);
    }
}

#[test]
fn a2_boolean_is_classical() {
    let b3 = make_boolean(3).unwrap();
    let polytope = build_state_polytope(&b3);
    let (a, states) = full(&b3);
    let table = build_ue_table(&a, &b3, &LpOracle { polytope: &polytope, states: &states }).unwrap();
    for e in b3.events() {
        for f in b3.events() {
            let v = check_a2(&a, &table, &b3, e, f);
            assert_eq!(v.target, a.coords(EventId(e.0 & f.0)).to_vec());
            assert!(v.representability.is_representable());
        }
        let unit = check_a2(&a, &table, &b3, e, b3.unit());
        assert_eq!(unit.target, a.coords(e).to_vec());
    }
}

#[test]
fn a3_boolean_refinement() {
    let b3 = make_boolean(3).unwrap();
    let (a, _) = full(&b3);
    let y = FiniteObservable::new(&b3, vec![(rat(1, 1), EventId(1)), (rat(2, 1), EventId(6))]).unwrap();
    let z = FiniteObservable::new(&b3, vec![(rat(5, 1), EventId(3)), (rat(-1, 1), EventId(4))]).unwrap();
    let v = check_a3(&a, &b3, &y, &z);
    let sum = v.sum.unwrap();
    let mut s = sum.support().to_vec();
    s.sort_by(|p, q| p.0.cmp(&q.0));
    assert_eq!(s, vec![(rat(1, 1), EventId(4)), (rat(6, 1), EventId(1)), (rat(7, 1), EventId(2))]);

    let zero = FiniteObservable::constant(&b3, rat(0, 1));
    let v = check_a3(&a, &b3, &y, &zero);
    assert_eq!(a.combination(v.sum.unwrap().support()), a.combination(y.support()));
}

#[test]
fn a3_qubit_sum_needs_enrichment() {
    let en = qubit_sum_enrichment().unwrap();
    for (inst, expected) in [(&en.sparse, false), (&en.enriched, true)] {
        let a = inst.synthetic().unwrap();
        assert_eq!(a.dim(), 4);
        let y = FiniteObservable::indicator(&inst.space, en.e);
        let z = FiniteObservable::indicator(&inst.space, en.f);
        let v = check_a3(&a, &inst.space, &y, &z);
        assert_eq!(v.representability.is_representable(), expected);
        if let Representability::NotRepresentable { complete, .. } = v.representability {
            assert!(complete);
        }
    }
}

#[test]
fn a2_compression_needs_enrichment() {
    let en = compression_enrichment(5, 21).unwrap();
    for (inst, expected) in [(&en.sparse, false), (&en.enriched, true)] {
        let a = inst.synthetic().unwrap();
        assert_eq!(a.dim(), 9);
        let table = inst.ue_table(&a).unwrap();
        let v = check_a2(&a, &table, &inst.space, en.e, en.f);
        assert_eq!(v.representability.is_representable(), expected);
    }
}

#[test]
fn a2_qubit_always_representable() {
    let inst = MatrixInstance::qubit(6, 1).unwrap();
    let a = inst.synthetic().unwrap();
    let table = inst.ue_table(&a).unwrap();
    for e in inst.space.events() {
        for f in inst.space.events() {
            assert!(check_a2(&a, &table, &inst.space, e, f).representability.is_representable());
        }
    }
}

#[test]
fn event_order_examples() {
    let b3 = make_boolean(3).unwrap();
    let (a, _) = full(&b3);
    let p = check_event_order(&a, EventId(1), EventId(3));
    assert!(p.hypothesis && p.ordered == Some(true) && p.passed);
    assert!(check_event_order(&a, EventId(5), EventId(5)).passed);
    assert!(check_event_order_all(&a).passed());

    let mo2 = make_mo2();
    let (a, _) = full(&mo2);
    let p = check_event_order(&a, EventId(2), EventId(4));
    assert!(!p.hypothesis && p.passed);
    let w = p.witness.unwrap();
    assert_eq!((w[2].clone(), w[4].clone()), (rat(1, 1), rat(0, 1)));
    assert!(check_event_order_all(&a).passed());
}

#[test]
fn event_order_on_matrix_instance() {
    let inst = MatrixInstance::random(Algebra::Complex, 3, 5, 0, 3).unwrap();
    let a = inst.synthetic().unwrap();
    let r = check_event_order_all(&a);
    assert!(r.passed(), "{:?}", r.failures.first());
    assert!(r.hypothesis_held > inst.space.len());
}

#[test]
fn order_equivalence() {
    let b3 = make_boolean(3).unwrap();
    let (a, _) = full(&b3);
    let x = FiniteObservable::new(&b3, vec![(rat(1, 1), EventId(1)), (rat(2, 1), EventId(6))]).unwrap();
    let y = FiniteObservable::new(&b3, vec![(rat(3, 1), EventId(3)), (rat(2, 1), EventId(4))]).unwrap();
    let c = compare_observables(&a, &x, &y);
    assert!(c.by_expectation && c.by_order && c.agrees());
    assert_eq!(c.min_gap, rat(0, 1));
    let c = compare_observables(&a, &y, &x);
    assert!(!c.by_expectation && c.agrees());

    let mo2 = make_mo2();
    let (a, _) = full(&mo2);
    let ia = FiniteObservable::indicator(&mo2, EventId(2));
    let ib = FiniteObservable::indicator(&mo2, EventId(4));
    let c = compare_observables(&a, &ia, &ib);
    assert!(!c.by_expectation && c.agrees());
}

#[test]
fn enrichment_extends_the_sparse_lattice() {
    let en = compression_enrichment(5, 21).unwrap();
    for en in [en, qubit_sum_enrichment().unwrap()] {
        assert!(en.sparse.space.len() < en.enriched.space.len());
        for e in en.sparse.space.events() {
            assert_eq!(en.enriched.event_of(en.sparse.projection(e)), Some(e));
        }
    }
}
