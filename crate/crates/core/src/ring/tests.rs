use super::*;
use crate::testing::{random_elem, solver_rings};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gf(p: u64) -> Ring {
    Ring::prime_field(p).unwrap()
}

#[test]
fn integers_mod_four_basics() {
    let r = Ring::integers_mod(4).unwrap();
    let two = r.from_int(2);
    assert!(r.is_zero(&r.mul(&two, &two)));
    assert!(r.is_unit(&r.from_int(3)).unwrap());
    assert!(!r.is_unit(&two).unwrap());
    assert_eq!(r.capabilities().nilpotency_bound, Some(2));
    assert!(r.is_local());
    assert!(!Ring::integers_mod(12).unwrap().is_local());
}

#[test]
fn prime_field_rejects_composite() {
    assert_eq!(Ring::prime_field(4).unwrap_err(), Error::NonPrimeModulus(4));
    assert_eq!(Ring::integers_mod(1).unwrap_err(), Error::BadModulus(1));
}

#[test]
fn empty_variable_list_rejected() {
    assert_eq!(Ring::poly_quotient(&gf(2), &[], &[]).unwrap_err(), Error::EmptyVariableList);
}

#[test]
fn unit_ideal_rejected() {
    assert!(Ring::poly_quotient(&gf(2), &["x"], &["x", "x+1"]).is_err());
}

#[test]
fn lex_groebner_basis_of_twisted_cubic_like_ideal() {
    // (x^2 - y, x*y - 1) in Q[x,y] under lex has basis {x - y^2, y^3 - 1}
    let r = Ring::poly_quotient_with(&Ring::rationals(), &["x", "y"], &["x^2 - y", "x*y - 1"], MonomialOrder::Lex, 1000)
        .unwrap();
    let gb: Vec<String> = r.groebner_basis().iter().map(|g| r.format(&Elem::Poly(g.clone()))).collect();
    assert_eq!(gb, vec!["x - y^2", "y^3 - 1"]);
    assert_eq!(r.format(&r.parse("x^3").unwrap()), "1");
}

#[test]
fn degrevlex_basis_of_square_of_maximal_ideal() {
    let r = Ring::poly_quotient(&gf(2), &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
    assert_eq!(r.standard_basis().unwrap().len(), 3);
    assert!(r.is_local());
    assert_eq!(r.nilpotency_witnesses().unwrap(), &[2, 2]);
    assert_eq!(r.to_string(), "GF(2)[x,y]/(x^2, x*y, y^2)");
}

#[test]
fn groebner_budget_is_enforced() {
    let e = Ring::poly_quotient_with(
        &Ring::rationals(),
        &["x", "y", "z"],
        &["x^2*y - z^3", "x*y^2 - z", "x*y*z - 1"],
        MonomialOrder::Lex,
        1,
    );
    assert_eq!(e.unwrap_err(), Error::GroebnerBudgetExceeded(1));
}

#[test]
fn local_inverse_via_geometric_series() {
    let r = Ring::poly_quotient(&gf(2), &["x"], &["x^3"]).unwrap();
    let u = r.parse("1 + x").unwrap();
    let inv = r.inverse(&u).unwrap().unwrap();
    assert_eq!(r.format(&inv), "x^2 + x + 1");
    assert!(r.is_one(&r.mul(&u, &inv)));
    assert!(r.inverse(&r.parse("x").unwrap()).unwrap().is_none());
}

#[test]
fn nonlocal_finite_algebra_units() {
    let r = Ring::poly_quotient(&gf(2), &["x"], &["x^2 + x"]).unwrap();
    assert!(!r.is_local());
    assert!(r.capabilities().linear_solve);
    assert!(!r.is_unit(&r.parse("x").unwrap()).unwrap());
    assert!(r.is_unit(&r.parse("x + 1").unwrap()).unwrap() == false);
    let q = Ring::poly_quotient(&gf(3), &["x"], &["x^2 + 1"]).unwrap();
    let inv = q.inverse(&q.parse("x").unwrap()).unwrap().unwrap();
    assert_eq!(q.format(&inv), "2*x");
}

#[test]
fn parse_errors_carry_positions() {
    let r = Ring::poly_quotient(&Ring::rationals(), &["x", "y"], &[]).unwrap();
    match r.parse("x + * y") {
        Err(Error::SyntaxError { pos, .. }) => assert_eq!(pos, 4),
        other => panic!("{other:?}"),
    }
    assert_eq!(r.parse("x + w").unwrap_err(), Error::UnknownVariable("w".into()));
    assert!(matches!(Ring::integers().parse("1/2"), Err(Error::Invalid(_))));
    assert!(matches!(Ring::integers().parse("3/0"), Err(Error::SyntaxError { .. })));
}

#[test]
fn canonical_printing() {
    let r = Ring::poly_quotient(&Ring::rationals(), &["x", "y"], &[]).unwrap();
    let e = r.parse(" 1 + 3 * y * x ^2 - 3/4*x").unwrap();
    assert_eq!(r.format(&e), "3*x^2*y - 3/4*x + 1");
    let z = Ring::integers_mod(7).unwrap();
    assert_eq!(z.format(&z.parse("-1").unwrap()), "6");
    assert_eq!(z.format(&z.parse("1/3").unwrap()), "5");
}

#[test]
fn ring_spec_round_trip() {
    for s in ["Z", "Q", "Z/12", "GF(7)", "GF(2)[x,y]/(x^2, x*y, y^2)", "Q[a,b]", "GF(3)[t]/(t^3) order lex"] {
        let r = parse_ring(s).unwrap();
        assert_eq!(r.to_string(), s);
        assert_eq!(parse_ring(&r.to_string()).unwrap(), r);
    }
}

#[test]
fn homomorphism_checks_relations() {
    let src = Ring::poly_quotient(&gf(2), &["x"], &["x^2"]).unwrap();
    let tgt = Ring::poly_quotient(&gf(2), &["y"], &["y^4"]).unwrap();
    let ok = RingHom::new(&src, &tgt, vec![tgt.parse("y^2").unwrap()]).unwrap();
    assert_eq!(tgt.format(&ok.apply(&src.parse("1 + x").unwrap())), "y^2 + 1");
    assert!(matches!(RingHom::new(&src, &tgt, vec![tgt.parse("y").unwrap()]), Err(Error::NotAHomomorphism(_))));
    let z = Ring::integers();
    let z4 = Ring::integers_mod(4).unwrap();
    assert!(RingHom::new(&z, &z4, vec![]).is_ok());
    assert!(RingHom::new(&z4, &Ring::integers_mod(3).unwrap(), vec![]).is_err());
    assert!(RingHom::new(&z4, &Ring::integers_mod(2).unwrap(), vec![]).is_ok());
}

#[test]
fn matrix_kron_and_blocks() {
    let z = Ring::integers();
    let a = Matrix::from_ints(&z, &[&[1, 2], &[3, 4]]);
    let i = Matrix::identity(&z, 2);
    let k = a.kron(&i).unwrap();
    assert_eq!(k.get(0, 2), &z.from_int(2));
    assert_eq!(k.get(3, 1), &z.from_int(3));
    let t = Matrix::parse(&z, &a.to_text(), 2, 2).unwrap();
    assert_eq!(t, a);
    let q = Ring::integers_mod(5).unwrap();
    assert_eq!(a.mul(&Matrix::identity(&q, 2)).unwrap_err(), Error::MixedRings);
}

#[test]
fn integer_division_is_symmetric() {
    let z = Ring::integers();
    for a in -15i64..=15 {
        for b in [-7i64, -4, -1, 1, 3, 4] {
            let (q, r) = z.div_rem(&z.from_int(a), &z.from_int(b));
            assert_eq!(z.add(&z.mul(&q, &z.from_int(b)), &r), z.from_int(a));
            assert!(z.euclid_size(&r) * 2 <= z.euclid_size(&z.from_int(b)));
        }
    }
}

fn arb_ring() -> impl Strategy<Value = usize> {
    0..solver_rings().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(idx in arb_ring(), seed in any::<u64>()) {
        let r = &solver_rings()[idx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_elem(r, &mut rng), random_elem(r, &mut rng), random_elem(r, &mut rng));
        prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert!(r.is_zero(&r.add(&a, &r.neg(&a))));
        prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
        prop_assert!(r.contains(&r.mul(&a, &b)));
    }

    #[test]
    fn print_parse_round_trip(idx in arb_ring(), seed in any::<u64>()) {
        let r = &solver_rings()[idx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_elem(r, &mut rng);
        prop_assert_eq!(r.parse(&r.format(&a)).unwrap(), a);
    }

    #[test]
    fn inverses_are_inverses(idx in arb_ring(), seed in any::<u64>()) {
        let r = &solver_rings()[idx];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_elem(r, &mut rng);
        if let Some(inv) = r.inverse(&a).unwrap() {
            prop_assert!(r.is_one(&r.mul(&a, &inv)));
        }
    }
}
