use super::*;
use crate::complex::{cone, Bounds, ChainComplex, ChainMap};
use crate::ring::{Ring, RingHom};
use crate::testing::{f2_x2, random_chain_map, random_complex, random_elem, random_in_max_ideal, random_minimal_complex};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z4() -> Ring {
    Ring::integers_mod(4).unwrap()
}

fn k4() -> KoszulAlgebra {
    let r = z4();
    KoszulAlgebra::new(&r, &[r.from_int(2)]).unwrap()
}

#[test]
fn extending_the_ring_gives_the_algebra() {
    let k = k4();
    let reg = DGModule::regular(&k);
    assert_eq!(reg.underlying(), k.complex());
    for h in 0..k.dim() {
        for n in 0..=1 {
            assert_eq!(reg.action(h, n), k.mult(h, n));
        }
    }
    assert!(reg.verify().passed());
}

#[test]
fn extension_of_two_term_complex_verifies() {
    let r = z4();
    let p = ChainComplex::two_term(&Matrix::from_rows(&r, vec![vec![r.from_int(2)]]).unwrap(), 0);
    let d = DGModule::extend(&k4(), &p).unwrap();
    assert_eq!(d.underlying().ranks(), &[1, 2, 1]);
    assert!(d.verify().passed(), "{}", d.verify());
}

#[test]
fn residue_reduction_detects_minimality() {
    let r = z4();
    let f2 = Ring::prime_field(2).unwrap();
    let f = RingHom::new(&r, &f2, vec![]).unwrap();
    let minimal = ChainComplex::two_term(&Matrix::from_rows(&r, vec![vec![r.from_int(2)]]).unwrap(), 0);
    let not_minimal = ChainComplex::two_term(&Matrix::from_rows(&r, vec![vec![r.from_int(1)]]).unwrap(), 0);
    let zero_diffs = |p: &ChainComplex| {
        let u = DGModule::extend(&k4(), p).unwrap().base_change(&f).unwrap();
        u.underlying().degrees().all(|n| u.underlying().diff(n).is_zero())
    };
    assert!(zero_diffs(&minimal));
    assert!(!zero_diffs(&not_minimal));
}

#[test]
fn flipped_action_breaks_leibniz() {
    let r = Ring::integers_mod(8).unwrap();
    let k = KoszulAlgebra::new(&r, &[r.from_int(2)]).unwrap();
    let p = ChainComplex::concentrated(&r, 1, 0);
    let d = DGModule::extend(&k, &p).unwrap();
    let bad = d.with_action(1, 0, d.action(1, 0).neg()).unwrap();
    let report = bad.verify();
    assert!(report.check("unitality").unwrap().passed);
    assert!(report.check("associativity").unwrap().passed);
    let l = report.check("leibniz").unwrap();
    assert_eq!(l.counterexample.as_deref(), Some("e{1} in degree 0"));
    let zero = DGModule::extend(&k, &ChainComplex::zero(&r)).unwrap();
    assert!(zero.verify().passed());
}

#[test]
fn k_linearity_examples() {
    let r = z4();
    let k = KoszulAlgebra::new(&r, &[r.zero()]).unwrap();
    let p = ChainComplex::concentrated(&r, 2, 0);
    let d = DGModule::extend(&k, &p).unwrap();
    let u = d.underlying();
    assert!(is_k_linear(&u.identity(), &d, &d).unwrap());
    let three: BTreeMap<i64, Matrix> = u.degrees().map(|n| (n, Matrix::identity(&r, u.rank(n)).scale(&r.from_int(3)))).collect();
    assert!(is_k_linear(&ChainMap::new(u, u, three).unwrap(), &d, &d).unwrap());
    let swap = Matrix::from_ints(&r, &[&[0, 1], &[1, 0]]);
    let mut comps = BTreeMap::new();
    comps.insert(0, Matrix::identity(&r, 2));
    comps.insert(1, swap);
    let phi = ChainMap::new(u, u, comps).unwrap();
    assert_eq!(first_nonlinear(&phi, &d, &d).unwrap(), Some((1, 0)));
}

#[test]
fn adjunction_trivial_cases() {
    let k = k4();
    let r = z4();
    let m = ChainComplex::two_term(&Matrix::from_rows(&r, vec![vec![r.from_int(2)]]).unwrap(), 0);
    let n = DGModule::extend(&k, &m).unwrap();
    let (_, layout) = DGModule::extend_with_layout(&k, &m).unwrap();
    let mut incl = BTreeMap::new();
    for p in m.degrees() {
        let (off, size) = layout.block(p, p).unwrap();
        let mut c = Matrix::zeros(&r, n.underlying().rank(p), size);
        c.put(off, 0, &Matrix::identity(&r, size));
        incl.insert(p, c);
    }
    let psi = ChainMap::new(&m, n.underlying(), incl).unwrap();
    assert_eq!(adjoint_forward(&m, &n, &psi).unwrap(), n.underlying().identity());
    let zero = ChainMap::zero(&m, n.underlying());
    let phi0 = adjoint_forward(&m, &n, &zero).unwrap();
    assert!(phi0.components().values().all(|c| c.is_zero()));
}

#[test]
fn multiplication_splits_the_unit() {
    let r = Ring::integers_mod(8).unwrap();
    let k = KoszulAlgebra::new(&r, &[r.from_int(2), r.from_int(4)]).unwrap();
    let (mu, iota) = multiplication_map(&k).unwrap();
    assert!(mu.is_chain_map().unwrap());
    assert!(iota.is_chain_map().unwrap());
    assert_eq!(mu.compose(&iota).unwrap(), k.complex().identity());
    let src = DGModule::extend(&k, k.complex()).unwrap();
    assert!(is_k_linear(&mu, &src, &DGModule::regular(&k)).unwrap());
    let unit = KoszulAlgebra::new(&r, &[r.from_int(3), r.from_int(2)]).unwrap();
    assert!(multiplication_map(&unit).unwrap().0.is_quasi_iso().unwrap());
}

#[test]
fn multiplication_is_not_a_quasi_iso_in_general() {
    let k = k4();
    let (mu, _) = multiplication_map(&k).unwrap();
    assert!(!mu.is_quasi_iso().unwrap());
    assert_eq!(cone(&mu).unwrap().bounds().unwrap(), Bounds::Range { inf: 2, sup: 3 });
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn extensions_are_dg_modules(idx in 0..3usize, e in 0..=2usize, seed in any::<u64>()) {
        let r = [z4(), f2_x2(), Ring::prime_field(3).unwrap()][idx].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<Elem> = (0..e).map(|_| random_elem(&r, &mut rng)).collect();
        let k = KoszulAlgebra::new(&r, &a).unwrap();
        let m = random_complex(&r, -1, 3, 2, &mut rng);
        let d = DGModule::extend(&k, &m).unwrap();
        prop_assert!(d.verify().passed());
    }

    #[test]
    fn adjunction_round_trip(seed in any::<u64>()) {
        let r = Ring::prime_field(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<Elem> = (0..2).map(|_| random_elem(&r, &mut rng)).collect();
        let k = KoszulAlgebra::new(&r, &a).unwrap();
        let m = random_complex(&r, 0, 3, 2, &mut rng);
        let n = DGModule::extend(&k, &random_complex(&r, 0, 3, 2, &mut rng)).unwrap();
        let psi = random_chain_map(&m, n.underlying(), &mut rng);
        let phi = adjoint_forward(&m, &n, &psi).unwrap();
        prop_assert!(phi.is_chain_map().unwrap());
        prop_assert!(is_k_linear(&phi, &DGModule::extend(&k, &m).unwrap(), &n).unwrap());
        prop_assert_eq!(adjoint_backward(&m, &n, &phi).unwrap(), psi);
    }

    #[test]
    fn extension_is_functorial(seed in any::<u64>()) {
        let r = z4();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = KoszulAlgebra::new(&r, &[random_in_max_ideal(&r, &mut rng)]).unwrap();
        let c1 = random_minimal_complex(&r, 0, 3, 2, &mut rng);
        let c2 = random_complex(&r, 0, 3, 2, &mut rng);
        let c3 = random_complex(&r, 0, 3, 2, &mut rng);
        let g = random_chain_map(&c1, &c2, &mut rng);
        let f = random_chain_map(&c2, &c3, &mut rng);
        let lhs = extend_map(&k, &f.compose(&g).unwrap()).unwrap();
        let rhs = extend_map(&k, &f).unwrap().compose(&extend_map(&k, &g).unwrap()).unwrap();
        for n in -1..6 {
            prop_assert_eq!(lhs.comp(n), rhs.comp(n));
        }
    }
}
