use super::*;
use crate::testing::{f2_x2, f2_xy, random_matrix, solver_rings};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_vectors(n: u64, k: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v| (0..n).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn apply_mod(n: u64, a: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum::<u64>() % n).collect()
}

fn mod_matrix(r: &Ring, rows: &[Vec<u64>]) -> Matrix {
    Matrix::from_rows(r, rows.iter().map(|x| x.iter().map(|v| Elem::Mod(*v)).collect()).collect()).unwrap()
}

#[test]
fn howell_kernel_matches_brute_force_mod_12() {
    let r = Ring::integers_mod(12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let (m, k) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let a: Vec<Vec<u64>> = (0..m).map(|_| (0..k).map(|_| rng.gen_range(0..12)).collect()).collect();
        let brute = all_vectors(12, k).into_iter().filter(|x| apply_mod(12, &a, x).iter().all(|v| *v == 0)).count();
        let ker = kernel_basis(&mod_matrix(&r, &a)).unwrap();
        assert_eq!(span_cardinality(&ker).unwrap().unwrap(), BigUint::from(brute), "{a:?}");
        let am = mod_matrix(&r, &a);
        assert!(am.mul(&ker).unwrap().is_zero());
    }
}

#[test]
fn howell_solve_matches_brute_force_mod_12() {
    let r = Ring::integers_mod(12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let (m, k) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let a: Vec<Vec<u64>> = (0..m).map(|_| (0..k).map(|_| rng.gen_range(0..12)).collect()).collect();
        let image: std::collections::HashSet<Vec<u64>> = all_vectors(12, k).iter().map(|x| apply_mod(12, &a, x)).collect();
        for b in all_vectors(12, m).into_iter().step_by(7) {
            let be: Vec<Elem> = b.iter().map(|v| Elem::Mod(*v)).collect();
            let s = solve(&mod_matrix(&r, &a), &be).unwrap();
            assert_eq!(s.is_some(), image.contains(&b));
            if let Some(x) = s {
                assert_eq!(mod_matrix(&r, &a).mul_vec(&x).unwrap(), be);
            }
        }
    }
}

#[test]
fn span_cardinality_counts_orbits() {
    let r = Ring::integers_mod(8).unwrap();
    let g = mod_matrix(&r, &[vec![2], vec![4]]);
    assert_eq!(span_cardinality(&g).unwrap().unwrap(), BigUint::from(4u32));
}

#[test]
fn smith_transforms_are_consistent() {
    let z = Ring::integers();
    let a = Matrix::from_ints(&z, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let s = smith::smith(&a);
    assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
    assert!(s.u.mul(&s.u_inv).unwrap() == Matrix::identity(&z, 3));
    assert!(s.v.mul(&s.v_inv).unwrap() == Matrix::identity(&z, 3));
    let d: Vec<String> = s.diagonal().iter().map(|x| z.format(x)).collect();
    assert_eq!(d, vec!["2", "6", "12"]);
}

#[test]
fn integer_homology_of_multiplication_by_two() {
    let z = Ring::integers();
    let two = Matrix::from_ints(&z, &[&[2]]);
    let zero = Matrix::zeros(&z, 0, 1);
    let h = homology_module(&two, &zero).unwrap();
    assert_eq!(h.describe(), "Z/2");
    assert_eq!(h.cardinality, Some(BigUint::from(2u32)));
    let h0 = homology_module(&Matrix::zeros(&z, 2, 0), &Matrix::zeros(&z, 0, 2)).unwrap();
    assert_eq!(h0.describe(), "Z^2");
}

#[test]
fn modular_homology_factors_via_integer_lift() {
    let r = Ring::integers_mod(12).unwrap();
    let d = mod_matrix(&r, &[vec![2, 0], vec![0, 3]]);
    let h = homology_module(&d, &Matrix::zeros(&r, 0, 2)).unwrap();
    assert_eq!(h.cardinality, Some(BigUint::from(6u32)));
    assert_eq!(h.describe(), "Z/6");
}

#[test]
fn polynomial_pid_homology() {
    let r = Ring::poly_quotient(&Ring::prime_field(3).unwrap(), &["t"], &[]).unwrap();
    let d = Matrix::from_rows(&r, vec![vec![r.parse("t^2").unwrap()]]).unwrap();
    let h = homology_module(&d, &Matrix::zeros(&r, 0, 1)).unwrap();
    assert_eq!(h.cardinality, Some(BigUint::from(9u32)));
    assert!(h.describe().contains("t^2"));
}

#[test]
fn koszul_homology_over_dual_numbers() {
    // 0 -> R --x--> R -> 0 over F2[x]/(x^2): H_0 = H_1 = k.
    let r = f2_x2();
    let x = Matrix::from_rows(&r, vec![vec![r.parse("x").unwrap()]]).unwrap();
    let h1 = homology_module(&Matrix::zeros(&r, 1, 0), &x).unwrap();
    let h0 = homology_module(&x, &Matrix::zeros(&r, 0, 1)).unwrap();
    assert_eq!(h1.dimension(), Some(1));
    assert_eq!(h0.dimension(), Some(1));
}

#[test]
fn minimal_generators_drop_redundant_columns() {
    let r = f2_xy();
    let g = Matrix::from_rows(&r, vec![vec![r.parse("x").unwrap(), r.parse("y").unwrap(), r.parse("x + y").unwrap(), r.zero()]])
        .unwrap();
    assert_eq!(minimal_generators(&g).unwrap().cols(), 2);
    assert_eq!(minimal_generators(&Matrix::identity(&Ring::integers(), 1)).unwrap_err(), Error::NotLocal);
}

#[test]
fn preimage_of_span_over_z() {
    let z = Ring::integers();
    let d = Matrix::from_ints(&z, &[&[1]]);
    let rel = Matrix::from_ints(&z, &[&[4]]);
    let pre = preimage_of_span(&d, &rel).unwrap();
    let h = subquotient(&Matrix::identity(&z, 1), &pre).unwrap();
    assert_eq!(h.describe(), "Z/4");
}

#[test]
fn capability_missing_over_rational_quotient() {
    let r = Ring::poly_quotient(&Ring::rationals(), &["x"], &["x^2"]).unwrap();
    let m = Matrix::identity(&r, 1);
    assert!(matches!(kernel_basis(&m), Err(Error::CapabilityMissing(_))));
}

#[test]
fn echelon_transform_reproduces_form() {
    let q = Ring::rationals();
    let a = Matrix::from_ints(&q, &[&[1, 2, 3], &[2, 4, 7], &[1, 2, 4]]);
    match normal_form(&a).unwrap() {
        NormalForm::Echelon { form, transform, pivots } => {
            assert_eq!(transform.mul(&a).unwrap(), form);
            assert_eq!(pivots, vec![0, 2]);
        }
        _ => panic!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_and_solve_are_sound(idx in 0..solver_rings().len(), seed in any::<u64>()) {
        let r = &solver_rings()[idx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m, k) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let a = random_matrix(r, m, k, &mut rng);
        let ker = kernel_basis(&a).unwrap();
        prop_assert!(a.mul(&ker).unwrap().is_zero());
        let x = random_matrix(r, k, 1, &mut rng).column(0);
        let b = a.mul_vec(&x).unwrap();
        let s = solve(&a, &b).unwrap();
        prop_assert!(s.is_some());
        prop_assert_eq!(a.mul_vec(&s.unwrap()).unwrap(), b);
    }

    #[test]
    fn homology_of_exact_pair_is_zero(idx in 0..solver_rings().len(), seed in any::<u64>()) {
        let r = &solver_rings()[idx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(r, 2, 3, &mut rng);
        let ker = kernel_basis(&a).unwrap();
        let h = homology_module(&ker, &a).unwrap();
        prop_assert!(h.is_zero, "{}", h.describe());
    }
}

