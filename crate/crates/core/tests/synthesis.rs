use ucp_core::field::{rat, Rational};
use ucp_core::orthospace::{make_boolean, make_mo2, EventId};
use ucp_core::statespace::{build_state_polytope, State};
use ucp_core::synthesis::*;

fn boolean_setup(n: usize) -> (ucp_core::orthospace::OrthoSpace, Vec<State>) {
    let space = make_boolean(n).unwrap();
    let states = build_state_polytope(&space).generators().unwrap().to_vec();
    (space, states)
}

#[test]
fn boolean_dimension_and_unit() {
    for n in 1..=4 {
        let (space, states) = boolean_setup(n);
        let a = build_synthetic_space(&space, states.iter().map(|s| s.values.clone()).collect()).unwrap();
        assert_eq!(a.dim(), n);
        assert!(a.warnings.is_empty());
        for j in 0..a.n_generators() {
            assert_eq!(a.evaluate(j, a.unit()), rat(1, 1));
        }
        assert!(a.is_positive(a.unit()));
        assert_eq!(a.norm(a.unit()), rat(1, 1));
    }
}

#[test]
fn boolean_product_is_pointwise() {
    let (space, states) = boolean_setup(3);
    let polytope = build_state_polytope(&space);
    let a = build_synthetic_space(&space, states.iter().map(|s| s.values.clone()).collect()).unwrap();
    let oracle = LpOracle { polytope: &polytope, states: &states };
    let table = build_ue_table(&a, &space, &oracle).unwrap();
    for e in space.events() {
        for f in space.events() {
            let ue_f = table.ue(e).apply(a.coords(f));
            assert_eq!(ue_f, a.coords(EventId(e.0 & f.0)).to_vec());
        }
    }
    let product = reconstruct_product(&a, &table, &space, 0.0).unwrap();
    assert!(product.is_commutative());
    assert_eq!(product.symmetry_residual, 0.0);
    assert_eq!(product.unit_residual, 0.0);
    for e in space.events() {
        for f in space.events() {
            assert_eq!(product.product(a.coords(e), a.coords(f)), a.coords(EventId(e.0 & f.0)).to_vec());
        }
    }
    let wd = check_well_definedness(&a, &table, &product, &space, 50, 7);
    assert!(wd.comparisons > 0 && wd.holds(0.0));
    let prims: Vec<Primitive<Rational>> = sample_primitives(&space, 40, 3);
    let pairs: Vec<_> = prims.chunks(2).map(|p| (a.combination(&p[0].terms), a.combination(&p[1].terms))).collect();
    let jb = check_jb_on_reconstruction(&a, &product, &pairs);
    assert!(jb.holds(0.0), "{jb:?}");
}

#[test]
fn mo2_conditioning_is_not_unique() {
    let space = make_mo2();
    let polytope = build_state_polytope(&space);
    let states = polytope.generators().unwrap().to_vec();
    let mut gens = states.clone();
    gens.push(State::new(vec![rat(0, 1), rat(1, 1), rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)]));
    let a = build_synthetic_space(&space, gens.iter().map(|s| s.values.clone()).collect()).unwrap();
    assert_eq!(a.dim(), 3);
    let oracle = LpOracle { polytope: &polytope, states: &gens };
    match build_ue_table(&a, &space, &oracle) {
        Err(SynthesisError::NotUnique { generator, event, witness }) => {
            assert!(generator < 5);
            assert!((2..6).contains(&event.0));
            assert!(witness.is_some());
        }
        other => panic!("expected non-uniqueness, got {other:?}"),
    }
}

#[test]
fn density_boolean_two_is_exact() {
    let (space, states) = boolean_setup(2);
    let a = build_synthetic_space(&space, states.iter().map(|s| s.values.clone()).collect()).unwrap();
    let r = check_density(&a, 16, 1);
    assert!(r.all_extreme_in_interval() && r.all_extreme_in_hull());
    assert_eq!(r.interval_vertices, Some(4));
    assert_eq!(r.hull_equals_interval, Some(true));
    assert!(r.note.is_none());
}

#[test]
fn density_mo2_events_are_extreme() {
    let space = make_mo2();
    let states = build_state_polytope(&space).generators().unwrap().to_vec();
    let a = build_synthetic_space(&space, states.iter().map(|s| s.values.clone()).collect()).unwrap();
    let r = check_density(&a, 16, 1);
    assert!(r.all_extreme_in_interval());
    assert!(r.all_extreme_in_hull());
    assert_eq!(r.hull_equals_interval, Some(true));
}

#[test]
fn rejects_bad_generators() {
    let space = make_boolean(2).unwrap();
    assert!(matches!(build_synthetic_space::<Rational>(&space, vec![]), Err(SynthesisError::NoStates)));
    let bad = vec![vec![rat(0, 1), rat(1, 2), rat(1, 2), rat(1, 2)]];
    assert!(matches!(build_synthetic_space(&space, bad), Err(SynthesisError::NotNormalised(0))));
    let short = vec![vec![rat(0, 1), rat(1, 1)]];
    assert!(matches!(build_synthetic_space(&space, short), Err(SynthesisError::Length { .. })));
}

#[test]
fn separating_warning() {
    let space = make_mo2();
    let uniform = vec![vec![rat(0, 1), rat(1, 1), rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)]];
    let a = build_synthetic_space(&space, uniform).unwrap();
    assert_eq!(a.dim(), 1);
    assert!(!a.warnings.is_empty());
}

#[test]
fn dump_round_trips_through_json() {
    let (space, states) = boolean_setup(2);
    let polytope = build_state_polytope(&space);
    let a = build_synthetic_space(&space, states.iter().map(|s| s.values.clone()).collect()).unwrap();
    let table = build_ue_table(&a, &space, &LpOracle { polytope: &polytope, states: &states }).unwrap();
    let dump = a.dump(Some(&table));
    let text = serde_json::to_string(&dump).unwrap();
    let back: SyntheticDump = serde_json::from_str(&text).unwrap();
    assert_eq!(back, dump);
    assert_eq!(back.ue.len(), 4);
}

mod matrix {
    use ucp_core::instances::*;
    use ucp_core::jordan::Algebra;
    use ucp_core::synthesis::*;

    fn run(inst: &MatrixInstance, expected_dim: usize) {
        let a = inst.synthetic().unwrap();
        assert_eq!(a.dim(), expected_dim);
        let table = inst.ue_table(&a).unwrap();
        let ue = inst.ue_residual(&a, &table);
        assert!(ue <= 1e-9, "Ue residual {ue:e}");
        let product = reconstruct_product(&a, &table, &inst.space, 1e-8).unwrap();
        let pr = inst.product_residual(&a, &product);
        assert!(pr <= 1e-8, "product residual {pr:e}");
        let wd = check_well_definedness(&a, &table, &product, &inst.space, 40, 5);
        assert!(wd.holds(1e-8), "{wd:?}");
        let prims: Vec<Primitive<f64>> = sample_primitives(&inst.space, 400, 11);
        let pairs: Vec<_> = prims.chunks(2).map(|p| (a.combination(&p[0].terms), a.combination(&p[1].terms))).collect();
        let jb = check_jb_on_reconstruction(&a, &product, &pairs);
        assert!(jb.holds(1e-8), "{jb:?}");
        let d = check_density(&a, 32, 2);
        assert!(d.all_extreme_in_hull());
        assert_ne!(d.hull_equals_interval, Some(true));
    }

    #[test]
    fn qubit() {
        let inst = MatrixInstance::qubit(6, 1).unwrap();
        assert_eq!(inst.space.len(), 20);
        run(&inst, 4);
    }

    #[test]
    fn complex_three() {
        run(&MatrixInstance::random(Algebra::Complex, 3, 5, 2, 3).unwrap(), 9);
    }

    #[test]
    fn real_three() {
        run(&MatrixInstance::random(Algebra::Real, 3, 3, 2, 4).unwrap(), 6);
    }

    #[test]
    fn quaternion_two() {
        run(&MatrixInstance::random(Algebra::Quaternion, 2, 6, 2, 5).unwrap(), 6);
    }
}
