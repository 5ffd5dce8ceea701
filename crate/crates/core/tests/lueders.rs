use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ucp_core::instances::MatrixInstance;
use ucp_core::jordan::{random, Algebra, JordanElement};
use ucp_core::lueders::*;

fn qubit_pair() -> (JordanElement, JordanElement) {
    let e = JordanElement::real(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
    let f = JordanElement::real(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
    (e, f)
}

#[test]
fn worked_qubit_pair() {
    let (e, f) = qubit_pair();
    let (lhs, rhs) = a1_sides(&e, &f).unwrap();
    let half = JordanElement::identity(Algebra::Real, 2).scale(0.5);
    assert!(lhs.max_abs_diff(&half) <= 1e-12);
    assert!(rhs.max_abs_diff(&half) <= 1e-12);
    let rho = DensityState::maximally_mixed(Algebra::Real, 2);
    assert!((conditional_probability(&rho, &e, &f).unwrap() - 0.5).abs() <= 1e-12);
}

#[test]
fn a1_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for alg in [Algebra::Real, Algebra::Complex, Algebra::Quaternion] {
        for n in [2, 3] {
            for _ in 0..100 {
                let e = random::any_projection(&mut rng, alg, n);
                let f = random::any_projection(&mut rng, alg, n);
                let r = check_a1(&e, &f).unwrap();
                assert!(r <= 1e-9, "{alg:?} n={n}: {r:e}");
            }
        }
    }
}

#[test]
fn compatibility_identities_on_complex_instance() {
    let inst = MatrixInstance::random(Algebra::Complex, 3, 5, 0, 3).unwrap();
    let mut checked = 0;
    for e in &inst.projections {
        for f in &inst.projections {
            match check_compatibility(e, f) {
                Ok(r) => {
                    assert!(r.holds(1e-10), "{r:?}");
                    checked += 1;
                }
                Err(LuedersError::Unrelated) => {}
                Err(other) => panic!("{other}"),
            }
        }
    }
    assert!(checked > 2 * inst.projections.len());
}

#[test]
fn conditioning_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for alg in [Algebra::Real, Algebra::Complex, Algebra::Quaternion] {
        for _ in 0..30 {
            let rho = DensityState::new(random::density(&mut rng, alg, 3)).unwrap();
            let e = random::projection(&mut rng, alg, 3, 2);
            let c = condition(&rho, &e).unwrap();
            assert!((c.rho().trace() - 1.0).abs() <= 1e-10);
            assert!((c.pairing(&e) - 1.0).abs() <= 1e-10);
            let twice = condition(&c, &e).unwrap();
            assert!(twice.rho().max_abs_diff(c.rho()) <= 1e-10);
            let id = JordanElement::identity(alg, 3);
            assert!(condition(&rho, &id).unwrap().rho().max_abs_diff(rho.rho()) <= 1e-10);
        }
    }
}

#[test]
fn zero_probability_is_rejected() {
    let (e, _) = qubit_pair();
    let rho = DensityState::new(JordanElement::real(&[vec![0.0, 0.0], vec![0.0, 1.0]]).unwrap()).unwrap();
    assert!(matches!(condition(&rho, &e), Err(LuedersError::ZeroProbability { .. })));
}

#[test]
fn complement_gap_is_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for alg in [Algebra::Real, Algebra::Complex] {
        let e = random::projection(&mut rng, alg, 3, 1);
        let ps: Vec<JordanElement> = (0..20).map(|_| random::any_projection(&mut rng, alg, 3)).collect();
        assert!(complement_gap(&e, &ps).unwrap() <= 1.0 + 1e-9);
    }
}

#[test]
fn ue_is_positive_and_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let e = random::projection(&mut rng, Algebra::Complex, 3, 2);
    let u = UeMap::new(&e).unwrap();
    for _ in 0..20 {
        let x = random::density(&mut rng, Algebra::Complex, 3);
        let y = u.apply(&x);
        let s = ucp_core::jordan::spectral_decomposition(&y).unwrap();
        assert!(s.min_value() >= -1e-10);
        assert!(u.apply(&y).max_abs_diff(&y) <= 1e-10);
    }
}

#[test]
fn full_projection_lattice() {
    for (alg, n) in [(Algebra::Real, 2), (Algebra::Complex, 2), (Algebra::Complex, 3)] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let states = (0..6).map(|_| DensityState::new(random::density(&mut rng, alg, n)).unwrap()).collect();
        let r = check_projection_lattice(&ProjectionInstance { algebra: alg, n, lattice: Lattice::Full, states }, 1e-8).unwrap();
        assert!(r.passed(), "{alg:?} {n}: {r:?}");
        assert!(r.caveat.is_none());
    }
}

#[test]
fn listed_qubit_lattice() {
    let inst = MatrixInstance::qubit(6, 1).unwrap();
    let r = check_projection_lattice(&inst.lattice_instance(), 1e-8).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(r.caveat.is_some());
}

#[test]
fn listed_lattice_without_unit_fails() {
    let inst = MatrixInstance::qubit(2, 1).unwrap();
    let id = JordanElement::identity(Algebra::Complex, 2);
    let list: Vec<JordanElement> = inst.projections.iter().filter(|p| p.max_abs_diff(&id) > 1e-9).cloned().collect();
    let bad = ProjectionInstance { algebra: Algebra::Complex, n: 2, lattice: Lattice::Listed(list), states: inst.states.clone() };
    let r = check_projection_lattice(&bad, 1e-8).unwrap();
    assert!(!r.unit_in_e.passed);
    assert!(!r.passed());
}

#[test]
fn sparse_listed_lattice_misses_ranges() {
    let inst = MatrixInstance::random(Algebra::Complex, 3, 5, 0, 3).unwrap();
    let r = check_projection_lattice(&inst.lattice_instance(), 1e-8).unwrap();
    assert!(r.unit_in_e.passed && r.complements.passed);
    assert!(r.events.iter().any(|c| c.range_residual > 1e-8));
}
