use super::*;
use crate::descent::{canonical_solution, generate_system};
use crate::testing::{f2_x2, f2_xy, random_complex, random_elem, random_minimal_complex, random_nonzero_in_max_ideal, solver_rings};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn round_trip(obj: &Object) {
    let text = obj.to_text();
    let back = Object::parse_text(&text).unwrap();
    assert_eq!(&back, obj, "{text}");
    assert_eq!(back.to_text(), text);
    let json = obj.to_json().unwrap();
    let back = Object::parse_json(&json).unwrap();
    assert_eq!(&back, obj, "{json}");
    assert_eq!(back.to_json().unwrap(), json);
}

fn samples() -> Vec<Object> {
    let r = Ring::integers_mod(4).unwrap();
    let k = KoszulAlgebra::new(&r, &[r.from_int(2)]).unwrap();
    let p = ChainComplex::new(&r, 0, vec![1, 1], vec![Matrix::from_ints(&r, &[&[2]])]).unwrap();
    let f = DGModule::extend(&k, &p).unwrap();
    let sys = generate_system(&k, &p, &f).unwrap();
    let asg = canonical_solution(&k, &p, &f).unwrap();
    let s = f2_xy();
    let pres = Presentation::new(Matrix::from_rows(&s, vec![vec![s.var("x").unwrap(), s.var("y").unwrap()]]).unwrap());
    vec![
        Object::Ring(f2_xy()),
        Object::Complex(p),
        Object::Complex(ChainComplex::zero(&r)),
        Object::Koszul(k.clone()),
        Object::Koszul(KoszulAlgebra::new(&r, &[]).unwrap()),
        Object::Dg(f),
        Object::Presentation(pres),
        Object::System(sys),
        Object::Assignment(asg),
        Object::Map(MapData {
            ring: r.clone(),
            components: [(0, Matrix::from_ints(&r, &[&[1, 2]])), (1, Matrix::zeros(&r, 0, 3))].into(),
        }),
    ]
}

#[test]
fn every_kind_round_trips() {
    for obj in samples() {
        round_trip(&obj);
    }
}

#[test]
fn text_layout() {
    let r = Ring::integers_mod(4).unwrap();
    let c = ChainComplex::new(&r, 0, vec![1, 1], vec![Matrix::from_ints(&r, &[&[2]])]).unwrap();
    assert_eq!(complex_to_text(&c), "ring Z/4\ncomplex lo=0 ranks=1,1\nd 1 = [2]\n");
    let k = KoszulAlgebra::new(&r, &[r.from_int(2)]).unwrap();
    assert_eq!(koszul_to_text(&k), "ring Z/4\nkoszul 2\nd 1 = [2]\nt 0 0 = [1]\nt 0 1 = [1]\nt 1 0 = [1]\n");
    // The sequence alone builds the algebra.
    assert_eq!(parse_koszul("ring Z/4\nkoszul 2\n").unwrap(), k);
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(Object::parse_text("").is_err());
    assert!(Object::parse_text("complex lo=0 ranks=1").is_err());
    assert!(parse_complex("ring Z/4\ncomplex lo=0 ranks=1,1\nd 1 = [2, 2]\n").is_err());
    assert!(matches!(
        parse_complex("ring Z/8\ncomplex lo=0 ranks=1,1,1\nd 1 = [2]\nd 2 = [2]\n"),
        Err(Error::NotAComplex(_))
    ));
    assert!(parse_complex("ring Z/4\ncomplex lo=0 ranks=1,1\nd 5 = [2]\n").is_err());
    assert!(parse_koszul("ring Z/4\nkoszul 2\nd 1 = [2]\n").is_err());
    assert!(Object::parse_json("{\"kind\": \"complex\"}").is_err());
}

#[test]
fn broken_algebra_parses_but_fails_validation() {
    let text = "ring Z/4\nkoszul 2\nd 1 = [2]\nt 0 0 = [1]\nt 0 1 = [1]\nt 1 0 = [3]\n";
    let obj = Object::parse_text(text).unwrap();
    assert!(matches!(obj.validate(), Err(Error::VerificationFailed(_))));
}

#[test]
fn files_follow_extension() {
    let dir = tempfile::tempdir().unwrap();
    for obj in samples() {
        for ext in ["txt", "json"] {
            let path = dir.path().join(format!("{}.{ext}", obj.kind()));
            save(&path, &obj).unwrap();
            assert_eq!(load(&path).unwrap(), obj);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_objects_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rings = solver_rings();
        let r = &rings[rng.gen_range(0..rings.len())];
        let c = random_complex(r, rng.gen_range(-2..3), rng.gen_range(0..4), 2, &mut rng);
        round_trip(&Object::Complex(c.clone()));
        let a: Vec<_> = (0..rng.gen_range(0..3)).map(|_| random_elem(r, &mut rng)).collect();
        let k = KoszulAlgebra::new(r, &a).unwrap();
        round_trip(&Object::Koszul(k.clone()));
        round_trip(&Object::Dg(DGModule::extend(&k, &c).unwrap()));
    }

    #[test]
    fn random_systems_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = f2_x2();
        let p = random_minimal_complex(&r, 0, rng.gen_range(1..3), 2, &mut rng);
        let a: Vec<_> = (0..rng.gen_range(0..3)).map(|_| random_nonzero_in_max_ideal(&r, &mut rng)).collect();
        let k = KoszulAlgebra::new(&r, &a).unwrap();
        let f = DGModule::extend(&k, &p).unwrap();
        round_trip(&Object::System(generate_system(&k, &p, &f).unwrap()));
        round_trip(&Object::Assignment(canonical_solution(&k, &p, &f).unwrap()));
    }
}
