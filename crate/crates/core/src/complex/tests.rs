use super::*;
use crate::ring::{Elem, Matrix, Ring, RingHom};
use crate::testing::f2_xy;
use std::collections::BTreeMap;

fn z() -> Ring {
    Ring::integers()
}

fn koszul_z_2_3() -> ChainComplex {
    let r = z();
    ChainComplex::new(&r, 0, vec![1, 2, 1], vec![Matrix::from_ints(&r, &[&[2, 3]]), Matrix::from_ints(&r, &[&[-3], &[2]])])
        .unwrap()
}

#[test]
fn construction_checks_square_zero() {
    let r = z();
    assert!(ChainComplex::new(&r, 0, vec![1, 1], vec![Matrix::from_ints(&r, &[&[2]])]).is_ok());
    koszul_z_2_3();
    let bad = ChainComplex::new(&r, 0, vec![1, 1, 1], vec![Matrix::from_ints(&r, &[&[2]]), Matrix::from_ints(&r, &[&[3]])]);
    assert_eq!(bad.unwrap_err(), Error::NotAComplex(1));
    let shape = ChainComplex::new(&r, 0, vec![1, 2], vec![Matrix::from_ints(&r, &[&[2]])]);
    assert!(matches!(shape, Err(Error::DimensionMismatch(_))));
}

#[test]
fn shift_signs() {
    let r = z();
    let c = ChainComplex::two_term(&Matrix::from_ints(&r, &[&[2]]), 0);
    assert_eq!(c.shift(0), c);
    let s = c.shift(1);
    assert_eq!(s.diff(2), Matrix::from_ints(&r, &[&[-2]]));
    assert_eq!(s.shift(1), c.shift(2));
    assert_eq!(c.shift(2).diff(3), Matrix::from_ints(&r, &[&[2]]));
}

#[test]
fn hard_truncations() {
    let k = koszul_z_2_3();
    let t = k.truncate_below(1);
    assert_eq!((0..3).map(|n| t.rank(n)).collect::<Vec<_>>(), vec![0, 2, 1]);
    assert!(t.diff(1).is_zero());
    assert_eq!(k.truncate_below(-4), k);
    assert!(k.truncate_above(0).truncate_below(1).is_zero());
    let u = k.truncate_above(1);
    assert_eq!(u.rank(2), 0);
    assert_eq!(u.diff(1), k.diff(1));
}

#[test]
fn tensor_block_layout_and_signs() {
    let r = z();
    let k = ChainComplex::two_term(&Matrix::from_ints(&r, &[&[2]]), 0);
    let n = ChainComplex::two_term(&Matrix::from_ints(&r, &[&[3]]), 0);
    let (t, layout) = tensor(&k, &n).unwrap();
    assert_eq!(t.diff(1), Matrix::from_ints(&r, &[&[2, 3]]));
    assert_eq!(t.diff(2), Matrix::from_ints(&r, &[&[-3], &[2]]));
    assert_eq!(layout.block(1, 0), Some((0, 1)));
    assert_eq!(layout.block(1, 1), Some((1, 1)));
    t.verify().unwrap();
    assert_eq!(t.bounds().unwrap(), Bounds::Acyclic);
    let unit = ChainComplex::concentrated(&r, 1, 0);
    assert_eq!(tensor(&unit, &k).unwrap().0, k);
    assert_eq!(tensor(&k, &unit).unwrap().0, k);
}

#[test]
fn hom_complex_contains_identity_class() {
    let r = z();
    let m = ChainComplex::two_term(&Matrix::from_ints(&r, &[&[2]]), 0);
    let (h, layout) = hom_complex(&m, &m).unwrap();
    h.verify().unwrap();
    let id = map_to_hom_vector(&m.identity(), &layout);
    assert!(h.diff(0).mul_vec(&id).unwrap().iter().all(|x| r.is_zero(x)));
    assert!(!crate::linear::in_span(&h.diff(1), &id).unwrap());
    let comps = hom_vector_components(&m, &m, &layout, 0, &id);
    assert_eq!(comps[&0], Matrix::identity(&r, 1));
    let unit = ChainComplex::concentrated(&r, 1, 0);
    assert_eq!(hom_complex(&unit, &m).unwrap().0, m);
}

#[test]
fn hom_cycles_are_chain_maps() {
    let r = Ring::integers_mod(4).unwrap();
    let m = ChainComplex::two_term(&Matrix::from_rows(&r, vec![vec![r.from_int(2)]]).unwrap(), 0);
    let (h, layout) = hom_complex(&m, &m).unwrap();
    let cycles = crate::linear::kernel_basis(&h.diff(0)).unwrap();
    for c in cycles.columns() {
        let comps = hom_vector_components(&m, &m, &layout, 0, &c);
        assert!(ChainMap::new(&m, &m, comps).is_ok());
    }
}

#[test]
fn cone_of_identity_is_contractible() {
    let k = koszul_z_2_3();
    let c = cone(&k.identity()).unwrap();
    c.verify().unwrap();
    let r = k.ring().clone();
    let mut comps = BTreeMap::new();
    for n in c.degrees() {
        let (tn, sn1) = (k.rank(n), k.rank(n - 1));
        let (tn1, sn) = (k.rank(n + 1), k.rank(n));
        let s = Matrix::from_blocks(&r, &[tn1, sn], &[tn, sn1], &[vec![None, None], vec![Some(Matrix::identity(&r, tn)), None]])
            .unwrap();
        comps.insert(n, s);
    }
    let sigma = Homotopy::new(comps.clone());
    assert!(sigma.is_contraction(&c).unwrap());
    let (n, m) = comps.iter().find(|(_, m)| m.rows() > 0 && m.cols() > 0).map(|(n, m)| (*n, m.clone())).unwrap();
    let mut bad = m.clone();
    bad.set(0, 0, r.add(bad.get(0, 0), &r.one()));
    comps.insert(n, bad);
    assert!(!Homotopy::new(comps).is_contraction(&c).unwrap());
    assert!(k.identity().is_quasi_iso().unwrap());
    assert!(ChainMap::zero(&k, &k).is_quasi_iso().unwrap());
    let m = ChainComplex::two_term(&Matrix::from_ints(&r, &[&[2]]), 0);
    assert!(!ChainMap::zero(&m, &m).is_quasi_iso().unwrap());
}

#[test]
fn zero_map_and_null_homotopy() {
    let k = koszul_z_2_3();
    let zero = ChainMap::zero(&k, &k);
    assert!(zero.is_chain_map().unwrap());
    assert!(Homotopy::new(BTreeMap::new()).is_null_homotopy(&zero).unwrap());
}

#[test]
fn base_change_reduces_entries() {
    let r = z();
    let c = ChainComplex::two_term(&Matrix::from_ints(&r, &[&[2]]), 0);
    let z4 = Ring::integers_mod(4).unwrap();
    let f = RingHom::new(&r, &z4, vec![]).unwrap();
    let b = c.base_change(&f).unwrap();
    assert_eq!(b.diff(1).get(0, 0), &Elem::Mod(2));
    let f2 = RingHom::new(&r, &Ring::prime_field(2).unwrap(), vec![]).unwrap();
    assert!(c.base_change(&f2).unwrap().diff(1).is_zero());
    assert_eq!(c.base_change(&RingHom::identity(&r)).unwrap(), c);
}

#[test]
fn bounds_of_koszul_over_z4() {
    let r = Ring::integers_mod(4).unwrap();
    let k = ChainComplex::two_term(&Matrix::from_rows(&r, vec![vec![r.from_int(2)]]).unwrap(), 0);
    assert_eq!(k.bounds().unwrap(), Bounds::Range { inf: 0, sup: 1 });
    assert_eq!(k.homology(1).unwrap().describe(), "Z/2");
    let exact = ChainComplex::two_term(&Matrix::identity(&r, 1), 0);
    assert_eq!(exact.bounds().unwrap(), Bounds::Acyclic);
}

#[test]
fn minimality() {
    let r = Ring::integers_mod(4).unwrap();
    assert!(ChainComplex::two_term(&Matrix::from_rows(&r, vec![vec![r.from_int(2)]]).unwrap(), 0).is_minimal().unwrap());
    assert!(!ChainComplex::two_term(&Matrix::identity(&r, 1), 0).is_minimal().unwrap());
    let q = f2_xy();
    assert!(ChainComplex::two_term(&Matrix::from_rows(&q, vec![vec![q.parse("x").unwrap()]]).unwrap(), 0).is_minimal().unwrap());
    assert_eq!(koszul_z_2_3().is_minimal().unwrap_err(), Error::NotLocal);
}

#[test]
fn augmentation_over_field_terminates() {
    let r = Ring::prime_field(5).unwrap();
    let a = ChainComplex::two_term(&Matrix::from_rows(&r, vec![vec![r.from_int(1), r.from_int(2)]]).unwrap(), 0);
    let aug = augment_by_resolution(&a, 1, 5).unwrap();
    assert!(aug.complete);
    assert_eq!(aug.complex.rank(2), 1);
    assert!(aug.complex.homology(1).unwrap().is_zero);
    assert_eq!(aug.complex.truncate_above(1), a);
}

#[test]
fn augmentation_over_z4_is_periodic() {
    let r = Ring::integers_mod(4).unwrap();
    let two = Matrix::from_rows(&r, vec![vec![r.from_int(2)]]).unwrap();
    let a = ChainComplex::two_term(&two, 0);
    let aug = augment_by_resolution(&a, 1, 4).unwrap();
    assert!(!aug.complete);
    for n in 2..=5 {
        assert_eq!(aug.complex.diff(n), two);
    }
    for n in aug.exact_window() {
        assert!(aug.complex.homology(n).unwrap().is_zero);
    }
    let exact = ChainComplex::two_term(&Matrix::identity(&r, 1), 0);
    assert!(augment_by_resolution(&exact, 1, 3).unwrap().complete);
}

#[test]
fn sparse_construction() {
    let r = z();
    let mut ranks = BTreeMap::new();
    ranks.insert(-1, 1);
    ranks.insert(1, 1);
    let c = ChainComplex::from_parts(&r, &ranks, &BTreeMap::new()).unwrap();
    assert_eq!(c.rank(0), 0);
    assert_eq!(c.degrees(), -1..2);
}

mod props {
    use super::super::*;
    use crate::testing::{random_complex, random_matrix, solver_rings};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn derived_complexes_square_to_zero(idx in 0..solver_rings().len(), seed in any::<u64>()) {
            let r = solver_rings()[idx].clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_complex(&r, rng.gen_range(-2..2), 3, 2, &mut rng);
            let n = random_complex(&r, rng.gen_range(-2..2), 3, 2, &mut rng);
            let (t, _) = tensor(&m, &n).unwrap();
            prop_assert!(t.verify().is_ok());
            let (h, _) = hom_complex(&m, &n).unwrap();
            prop_assert!(h.verify().is_ok());
            prop_assert!(m.shift(3).verify().is_ok());
            prop_assert!(m.direct_sum(&n).unwrap().verify().is_ok());
        }

        #[test]
        fn cone_of_random_chain_map(idx in 0..solver_rings().len(), seed in any::<u64>()) {
            let r = solver_rings()[idx].clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_complex(&r, 0, 3, 2, &mut rng);
            let (h, layout) = hom_complex(&m, &m).unwrap();
            let cycles = crate::linear::kernel_basis(&h.diff(0)).unwrap();
            let mix = random_matrix(&r, cycles.cols(), 1, &mut rng);
            let v = cycles.mul(&mix).unwrap().column(0);
            let comps = super::super::ops::hom_vector_components(&m, &m, &layout, 0, &v);
            let phi = ChainMap::new(&m, &m, comps).unwrap();
            let c = cone(&phi).unwrap();
            prop_assert!(c.verify().is_ok());
            prop_assert!(cone(&m.identity()).unwrap().bounds().unwrap() == Bounds::Acyclic);
        }

        #[test]
        fn shifts_compose(idx in 0..solver_rings().len(), seed in any::<u64>(), a in -3i64..3, b in -3i64..3) {
            let r = solver_rings()[idx].clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_complex(&r, 0, 4, 2, &mut rng);
            prop_assert_eq!(m.shift(a).shift(b), m.shift(a + b));
            let bm = m.bounds().unwrap();
            let bs = m.shift(a).bounds().unwrap();
            prop_assert_eq!(bm.inf().map(|x| x + a), bs.inf());
            prop_assert_eq!(bm.sup().map(|x| x + a), bs.sup());
        }

        #[test]
        fn kunneth_over_a_field(seed in any::<u64>()) {
            let r = Ring::prime_field(5).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_complex(&r, 0, 3, 3, &mut rng);
            let n = random_complex(&r, -1, 3, 3, &mut rng);
            let (t, _) = tensor(&m, &n).unwrap();
            let dims = |c: &ChainComplex| -> BTreeMap<i64, usize> {
                c.degrees().map(|d| (d, c.homology(d).unwrap().dimension().unwrap())).collect()
            };
            let (hm, hn, ht) = (dims(&m), dims(&n), dims(&t));
            for (deg, dim) in &ht {
                let expect: usize = hn.iter().map(|(p, b)| b * hm.get(&(deg - p)).copied().unwrap_or(0)).sum();
                prop_assert_eq!(*dim, expect);
            }
        }
    }
}
