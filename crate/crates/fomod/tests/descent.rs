//! Descent from moduli points: known worked values and round trips
//! through the invariants.

use fomod::conic::{has_rational_point, Certificate, Conic, PointSearchResult};
use fomod::field::FieldElement as F;
use fomod::forms::{split, split_forms, FormPair};
use fomod::inv3::{c_tilde, invariants3, InvariantTuple3};
use fomod::moduli::{classify_tuple, normal_form, validate3, wp_equal3, Stratum, Validation};
use fomod::poly::BinaryForm;
use fomod::reconstruct::{c21_conic, c22_c0_model, descend3, DescentResult};
use fomod::sample::{random_map, random_nonzero_rational, random_sl2, seeded};
use num_bigint::BigUint;

fn pair8(cs: [i64; 8]) -> FormPair {
    FormPair::from_coefficients(&cs.map(F::from_i64)).unwrap()
}

#[test]
fn silverman_point_is_obstructed_by_a_definite_conic() {
    let p = InvariantTuple3::from_ints([144, 20, -12, 288, 192, -6912]);
    let DescentResult::Obstruction { conic, certificate } = descend3(&p, 10_000).unwrap() else { panic!() };
    let expect = Conic::from_form(
        F::from_i64(144),
        F::from_i64(1152),
        F::from_i64(1408),
        F::from_i64(576),
        F::from_i64(384),
        F::from_i64(768),
    );
    assert_eq!(conic, expect);
    assert_eq!(certificate, Certificate::RealDefinite { positive: true });
}

#[test]
fn special_models_have_the_expected_points() {
    // [0,0,0,1,0,0,0,1] lies on D8
    let d8 = invariants3(&pair8([0, 0, 0, 1, 0, 0, 0, 1])).unwrap();
    assert_eq!(classify_tuple(&d8), Stratum::D8);
    // the C3 point [0:0:0:1:0:0] is reached by the map (X0 X1^2, X0^3 + X1^3)
    let c3 = split_forms(&BinaryForm::from_ints(&[0, 0, 1, 0]), &BinaryForm::from_ints(&[1, 0, 0, 1]));
    let t = invariants3(&c3).unwrap();
    assert!(wp_equal3(&t, &InvariantTuple3::from_ints([0, 0, 0, 1, 0, 0])).unwrap());
    assert_eq!(descend3(&t, 10).unwrap().model(), Some(&c3));
}

#[test]
fn z_cubed_descends_through_the_c21_conic() {
    let z3 = InvariantTuple3::from_array([F::from_i64(18), F::frac(1, 2), F::zero(), F::zero(), F::from_i64(-3), F::zero()]);
    assert_eq!(classify_tuple(&z3), Stratum::D4_1);
    let DescentResult::Model { pair, route, .. } = descend3(&z3, 10_000).unwrap() else { panic!() };
    assert_eq!(route, "c2_1-conic");
    assert!(wp_equal3(&invariants3(&pair).unwrap(), &z3).unwrap());
}

#[test]
fn a4_conic_has_no_rational_point_at_three() {
    let c = Conic::diagonal(F::one(), F::from_i64(3), F::from_i64(-2));
    match has_rational_point(&c, 10_000) {
        PointSearchResult::Impossible(Certificate::PAdic { prime, .. }) => assert_eq!(prime, BigUint::from(3u32)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn c3_conic_contains_the_known_point() {
    // a X0 X1 - (1/3) j a X3^2 at [1 : j/3 : 1]
    for (a, j) in [(1, 3), (-2, 5), (7, -1)] {
        let (a, j) = (F::from_i64(a), F::from_i64(j));
        let c = Conic::from_form(F::zero(), F::zero(), -(&a * &j) * F::frac(1, 3), a.clone(), F::zero(), F::zero());
        assert!(c.eval(&[F::one(), &j * &F::frac(1, 3), F::one()]).is_zero());
    }
}

#[test]
fn c22_model_with_c_zero() {
    // d = -2 lambda^2, i = p lambda^2, b = -p lambda^4 / 3: c = 0, c~ != 0
    for (lambda, p) in [(1, 1), (2, -3), (-3, 5)] {
        let (l, p) = (F::from_i64(lambda), F::from_i64(p));
        let l2 = &l * &l;
        let t = InvariantTuple3::from_array([
            F::from_i64(-2) * &l2,
            &p * &l2,
            F::zero(),
            F::zero(),
            -(&p * &l2 * &l2) * F::frac(1, 3),
            F::zero(),
        ]);
        assert!(!c_tilde(&t).is_zero());
        let m = c22_c0_model(&t, &l);
        assert!(wp_equal3(&invariants3(&m).unwrap(), &t).unwrap());
    }
}

#[test]
fn c21_conic_of_z_cubed() {
    let z3 = InvariantTuple3::from_array([F::from_i64(18), F::frac(1, 2), F::zero(), F::zero(), F::from_i64(-3), F::zero()]);
    // 9 d^3 X^2 + 8 d^2 Y^2 - 36 d^2 i Z^2
    let c = c21_conic(&z3);
    assert_eq!(c, Conic::diagonal(F::from_i64(9 * 18 * 18 * 18), F::from_i64(8 * 18 * 18), F::from_i64(-18 * 18 * 18)));
}

#[test]
fn random_trivial_maps_round_trip() {
    let mut rng = seeded(2024);
    let (mut models, mut trials) = (0, 0);
    while trials < 40 {
        let m = random_map(&mut rng, 3, 10);
        let t = invariants3(&split(&m)).unwrap();
        if classify_tuple(&t) != Stratum::Trivial {
            continue;
        }
        trials += 1;
        match descend3(&t, 10_000).unwrap() {
            DescentResult::Model { pair, .. } => {
                let u = invariants3(&pair).unwrap();
                assert!(wp_equal3(&u, &t).unwrap());
                assert_eq!(classify_tuple(&u), Stratum::Trivial);
                models += 1;
            }
            DescentResult::SearchExhausted { .. } => {}
            other => panic!("a map over Q was declared not to descend: {other:?}"),
        }
    }
    assert!(models * 10 >= trials * 9, "{models} models in {trials} trials");
}

#[test]
fn conjugated_normal_forms_descend() {
    let mut rng = seeded(77);
    for stratum in [Stratum::C2_1, Stratum::C2_2, Stratum::C3, Stratum::D4_1, Stratum::D4_2, Stratum::D8] {
        let mut done = 0;
        for _ in 0..40 {
            if done == 4 {
                break;
            }
            let p: Vec<F> = (0..4).map(|_| random_nonzero_rational(&mut rng, 5)).collect();
            let pair = normal_form(stratum, [&p[0], &p[1], &p[2], &p[3]]).substitute(&random_sl2(&mut rng, 3));
            let t = invariants3(&pair).unwrap();
            if validate3(&t) != Validation::Ok {
                continue;
            }
            match descend3(&t, 10_000) {
                Ok(DescentResult::Model { pair: m, .. }) => {
                    assert!(wp_equal3(&invariants3(&m).unwrap(), &t).unwrap(), "{stratum:?}");
                    done += 1;
                }
                other => panic!("{stratum:?} at {t}: {other:?}"),
            }
        }
        assert_eq!(done, 4, "{stratum:?}");
    }
}
