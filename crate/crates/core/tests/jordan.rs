use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ucp_core::formats::{parse_matrices, write_matrices};
use ucp_core::jordan::*;
use ucp_core::lueders::{condition, DensityState};

const ALGEBRAS: [(Algebra, usize); 7] = [
    (Algebra::Real, 2),
    (Algebra::Real, 3),
    (Algebra::Complex, 2),
    (Algebra::Complex, 3),
    (Algebra::Quaternion, 2),
    (Algebra::Quaternion, 3),
    (Algebra::Octonion, 3),
];

fn jordan_identity_residual(a: &JordanElement, b: &JordanElement) -> f64 {
    let a2 = a.square();
    a2.jordan_product(b).jordan_product(a).max_abs_diff(&a2.jordan_product(&b.jordan_product(a)))
}

#[test]
fn jb_laws_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (alg, n) in ALGEBRAS {
        for _ in 0..150 {
            let a = random::hermitian(&mut rng, alg, n);
            let b = random::hermitian(&mut rng, alg, n);
            let r = check_jb_laws(&a, &b).unwrap();
            assert!(r.holds(1e-8), "{alg:?} {n}: {r:?}");
        }
    }
}

#[test]
fn albert_jordan_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let a = random::hermitian(&mut rng, Algebra::Octonion, 3);
        let b = random::hermitian(&mut rng, Algebra::Octonion, 3);
        worst = worst.max(jordan_identity_residual(&a, &b));
    }
    assert!(worst <= 1e-8, "{worst:e}");
}

#[test]
fn power_associativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (alg, n) in ALGEBRAS {
        for _ in 0..20 {
            let a = random::hermitian(&mut rng, alg, n);
            for (i, j) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
                let lhs = a.power(i).jordan_product(&a.power(j));
                assert!(lhs.max_abs_diff(&a.power(i + j)) <= 1e-9, "{alg:?} {n} ({i},{j})");
            }
        }
    }
}

#[test]
fn octonions_are_alternative_and_normed() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let rand_oct = |rng: &mut ChaCha8Rng| {
        let c: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
        CoordinateNumber::from_coords(Algebra::Octonion, &c).unwrap()
    };
    for _ in 0..500 {
        let (x, y) = (rand_oct(&mut rng), rand_oct(&mut rng));
        assert!(((x * y).abs() - x.abs() * y.abs()).abs() <= 1e-12);
        assert!(((x * x) * y - x * (x * y)).max_abs() <= 1e-12);
        assert!(((y * x) * x - y * (x * x)).max_abs() <= 1e-12);
        assert!(((x * y) * x - x * (y * x)).max_abs() <= 1e-12);
    }
    let e = |i| CoordinateNumber::unit(Algebra::Octonion, i);
    let assoc = (e(1) * e(2)) * e(4) - e(1) * (e(2) * e(4));
    assert!(assoc.max_abs() > 1.0);
}

#[test]
fn spectra_reconstruct() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (alg, n) in ALGEBRAS {
        for _ in 0..30 {
            let a = random::hermitian(&mut rng, alg, n);
            let s = spectral_decomposition(&a).unwrap();
            assert!(s.reconstruct().max_abs_diff(&a) <= SPECTRAL_TOL);
            assert_eq!(s.multiplicities.iter().sum::<usize>(), n);
            assert!((s.eigenvalues().iter().sum::<f64>() - a.trace()).abs() <= 1e-9);
            for p in &s.frame {
                assert!(is_idempotent(p, 1e-7));
            }
        }
    }
}

#[test]
fn albert_diagonal_spectrum_is_exact() {
    let a = JordanElement::diagonal(Algebra::Octonion, &[3.0, -1.0, 0.5]);
    let s = spectral_decomposition(&a).unwrap();
    assert_eq!(s.values, vec![-1.0, 0.5, 3.0]);
    assert_eq!(s.reconstruct().max_abs_diff(&a), 0.0);
    let d = JordanElement::diagonal(Algebra::Octonion, &[2.0, 2.0, -1.0]);
    let s = spectral_decomposition(&d).unwrap();
    assert_eq!(s.values, vec![-1.0, 2.0]);
    assert_eq!(s.multiplicities, vec![1, 2]);
}

#[test]
fn albert_cubic_norm_and_sharp() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let a = random::hermitian(&mut rng, Algebra::Octonion, 3);
        let s = spectral_decomposition(&a).unwrap();
        let det: f64 = s.eigenvalues().iter().product();
        assert!((a.cubic_norm() - det).abs() <= 1e-8);
        let cayley_hamilton = a.jordan_product(&a.sharp()).sub(&JordanElement::identity(Algebra::Octonion, 3).scale(a.cubic_norm()));
        assert!(cayley_hamilton.max_abs() <= 1e-8);
    }
}

#[test]
fn albert_conditioning_renormalises() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let p = random::rank_one(&mut rng, Algebra::Octonion, 3);
        assert!(is_idempotent(&p, 1e-9));
        let rho = DensityState::new(p).unwrap();
        let e = JordanElement::diagonal(Algebra::Octonion, &[1.0, 1.0, 0.0]);
        let c = condition(&rho, &e).unwrap();
        assert!((c.rho().trace() - 1.0).abs() <= 1e-10);
    }
}

#[test]
fn rejects_bad_shapes() {
    assert!(matches!(JordanElement::real(&[vec![1.0, 2.0], vec![3.0, 1.0]]), Err(JordanError::NotHermitian { .. })));
    let id2 = JordanElement::identity(Algebra::Real, 2);
    let id3 = JordanElement::identity(Algebra::Real, 3);
    assert_eq!(id2.try_jordan_product(&id3), Err(JordanError::Mismatch));
    assert!(matches!(
        JordanElement::from_coordinate_rows(Algebra::Octonion, 2, &vec![vec![0.0; 8]; 4]),
        Err(JordanError::Dimension { .. })
    ));
}

#[test]
fn matrix_file_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let xs: Vec<JordanElement> = ALGEBRAS.iter().map(|&(alg, n)| random::hermitian(&mut rng, alg, n)).collect();
    let text = write_matrices(&xs);
    let back = parse_matrices(&text).unwrap();
    assert_eq!(back, xs);
    assert!(parse_matrices("{\"algebra\": \"Z\", \"n\": 1, \"entries\": [[1.0]]}").is_err());
}
