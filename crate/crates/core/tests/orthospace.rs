use ucp_core::formats::{parse_orthospace, write_orthospace, OrthoFile};
use ucp_core::instances::MatrixInstance;
use ucp_core::jordan::Algebra;
use ucp_core::orthospace::*;

#[test]
fn fixtures_are_orthospaces() {
    for n in 1..=4 {
        assert!(verify_orthospace(&make_boolean(n).unwrap()).is_orthospace(), "Boolean({n})");
    }
    for blocks in 1..=4 {
        assert!(verify_orthospace(&make_mo(blocks).unwrap()).is_orthospace(), "MO{blocks}");
    }
}

#[test]
fn projection_spaces_are_orthospaces() {
    let instances = [
        MatrixInstance::qubit(6, 1).unwrap(),
        MatrixInstance::random(Algebra::Complex, 3, 5, 0, 3).unwrap(),
        MatrixInstance::random(Algebra::Real, 3, 3, 0, 4).unwrap(),
        MatrixInstance::random(Algebra::Quaternion, 2, 4, 0, 5).unwrap(),
    ];
    for inst in &instances {
        let r = verify_orthospace(&inst.space);
        assert!(r.is_orthospace(), "{r:?}");
    }
}

#[test]
fn every_boolean3_mutation_is_caught() {
    let b3 = make_boolean(3).unwrap();
    let mutations = single_entry_mutations(&b3);
    assert_eq!(mutations.len(), 64 + 27 * 7 + 37 * 8 + 8 * 7);
    for m in &mutations {
        let r = verify_orthospace(&m.apply(&b3));
        assert!(!r.is_orthospace(), "{m:?} went undetected");
    }
}

#[test]
fn witnesses_replay() {
    let b3 = make_boolean(3).unwrap();
    for m in single_entry_mutations(&b3).iter().step_by(37) {
        let broken = m.apply(&b3);
        for v in verify_orthospace(&broken).verdicts {
            assert_eq!(v.passed, v.witnesses.is_empty());
            for w in &v.witnesses {
                assert!(violates(&broken, v.axiom, w));
                assert!(!violates(&b3, v.axiom, w));
            }
        }
    }
}

#[test]
fn permutation_invariance() {
    let mo3 = make_mo(3).unwrap();
    let perm: Vec<usize> = (0..mo3.len()).rev().collect();
    let p = mo3.permuted(&perm);
    assert!(verify_orthospace(&p).is_orthospace());
    let m = &single_entry_mutations(&mo3)[5];
    let a = verify_orthospace(&m.apply(&mo3));
    let b = verify_orthospace(&m.apply(&mo3).permuted(&perm));
    assert_eq!(a.is_orthospace(), b.is_orthospace());
}

#[test]
fn order_and_differences() {
    let b3 = make_boolean(3).unwrap();
    for e in b3.events() {
        for f in b3.events() {
            assert_eq!(b3.precedes(e, f), e.0 & !f.0 == 0);
            if b3.precedes(e, f) {
                assert_eq!(b3.difference(e, f), Difference::Unique(EventId(f.0 & !e.0)));
            }
        }
    }
    assert!(precedence_transitivity_violations(&b3, 10).is_empty());
    assert!(precedence_antisymmetry_violations(&b3).is_empty());
    let mo2 = make_mo2();
    assert_eq!(mo2.difference(EventId(2), EventId(4)), Difference::NotComparable);
}

#[test]
fn unit_decompositions_of_boolean_are_partitions() {
    let bell = [1, 1, 2, 5, 15];
    for n in 1..=4 {
        let d = unit_decompositions(&make_boolean(n).unwrap(), 1000).unwrap();
        assert_eq!(d.len(), bell[n]);
    }
    let (first, complete) = first_unit_decompositions(&make_boolean(4).unwrap(), 3);
    assert_eq!(first.len(), 3);
    assert!(!complete);
}

#[test]
fn file_round_trip() {
    for space in [make_boolean(3).unwrap(), make_mo2(), MatrixInstance::qubit(1, 2).unwrap().space] {
        let text = write_orthospace(&space);
        let back = parse_orthospace(&text).unwrap();
        assert_eq!(back, space);
        assert_eq!(write_orthospace(&back), text);
    }
    let mut f = OrthoFile::from_space(&make_mo2());
    f.complement.pop();
    assert!(f.to_space().is_err());
    assert!(parse_orthospace("{\"n_events\": 2").is_err());
}
