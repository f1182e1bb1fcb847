//! Property tests for the algebraic identities the library relies on.

use fomod::conic::{diagonalize, has_rational_point, parametrize, Conic, PointSearchResult};
use fomod::field::FieldElement as F;
use fomod::forms::{merge, split, FormPair, RationalMap};
use fomod::inv2::{check_relation2, covariants2, invariants2};
use fomod::inv3::{
    check_relation3, covariant_system3, det3, invariants3, invariants3_appendix, quadratic_in_forms, rho_from_invariants,
    InvariantTuple3, Variant,
};
use fomod::moduli::{wp_equal2, wp_equal3};
use fomod::poly::{transvect, BinaryForm, Matrix2};
use fomod::reconstruct::{reconstruct2, BETA_WEIGHTS};
use proptest::prelude::*;

fn ints(n: usize, h: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-h..=h, n)
}

fn form(cs: &[i64]) -> BinaryForm {
    BinaryForm::from_ints(cs)
}

/// A degree-`d` map with nonvanishing resultant.
fn map(d: usize, h: i64) -> impl Strategy<Value = RationalMap> {
    ints(2 * (d + 1), h).prop_filter_map("resultant vanishes", move |cs| RationalMap::new(form(&cs[..=d]), form(&cs[d + 1..])).ok())
}

fn sl2(h: i64) -> impl Strategy<Value = Matrix2> {
    (-h..=h, -h..=h, 1..=h).prop_map(|(x, y, t)| {
        // shear(x) * shear'(y) * diag(t, 1/t)
        let (x, y, t) = (F::from_i64(x), F::from_i64(y), F::from_i64(t));
        let a = &F::one() + &(&x * &y);
        [[&a * &t, &x * &t.inv()], [&y * &t, t.inv()]]
    })
}

fn nonzero_rational() -> impl Strategy<Value = F> {
    (1i64..=7, 1i64..=7, any::<bool>()).prop_map(|(n, d, neg)| F::frac(if neg { -n } else { n }, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transvectant_symmetry(a in ints(4, 9), b in ints(5, 9), r in 0usize..=3) {
        let (f, g) = (form(&a), form(&b));
        let fg = transvect(&f, &g, r).unwrap();
        let gf = transvect(&g, &f, r).unwrap();
        let sign = if r % 2 == 0 { F::one() } else { -F::one() };
        prop_assert_eq!(fg, gf.scale(&sign));
    }

    #[test]
    fn split_merge_round_trip(m in map(3, 9)) {
        let back = merge(&split(&m)).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn relation3_holds(cs in ints(8, 10)) {
        let pair = FormPair::from_coefficients(&cs.iter().map(|&c| F::from_i64(c)).collect::<Vec<_>>()).unwrap();
        let t = invariants3(&pair).unwrap();
        prop_assert!(check_relation3(&t));
    }

    #[test]
    fn transvectant_pipeline_matches_closed_forms(cs in ints(8, 10)) {
        let c: Vec<F> = cs.iter().map(|&c| F::from_i64(c)).collect();
        let pair = FormPair::from_coefficients(&c).unwrap();
        let arr: [F; 8] = std::array::from_fn(|k| c[k].clone());
        prop_assert_eq!(invariants3(&pair).unwrap(), invariants3_appendix(&arr));
    }

    #[test]
    fn rho_is_the_resultant(m in map(3, 10)) {
        let t = invariants3(&split(&m)).unwrap();
        prop_assert_eq!(rho_from_invariants(&t), m.resultant());
    }

    #[test]
    fn degree3_invariance(m in map(3, 6), g in sl2(3)) {
        let t = invariants3(&split(&m)).unwrap();
        let u = invariants3(&split(&m.conjugate(&g).unwrap())).unwrap();
        prop_assert_eq!(t, u);
    }

    #[test]
    fn degree2_invariance_and_relation(m in map(2, 8), g in sl2(3)) {
        let pair = split(&m);
        let t = invariants2(&pair).unwrap();
        prop_assert!(check_relation2(&t));
        let cov = covariants2(&pair).unwrap();
        prop_assert_eq!(&cov.r, &cov.big_r);
        prop_assert_eq!(t, invariants2(&split(&m.conjugate(&g).unwrap())).unwrap());
    }

    #[test]
    fn scaling_by_beta(cs in ints(8, 8), beta in nonzero_rational()) {
        let c: Vec<F> = cs.iter().map(|&c| F::from_i64(c)).collect();
        let pair = FormPair::from_coefficients(&c).unwrap();
        let scaled = FormPair::new(pair.f.scale(&beta), pair.g.scale(&(&beta * &beta))).unwrap();
        let (p, q) = (invariants3(&pair).unwrap().to_array(), invariants3(&scaled).unwrap().to_array());
        for k in 0..6 {
            prop_assert_eq!(&q[k], &(&p[k] * &beta.pow(BETA_WEIGHTS[k])));
        }
    }

    #[test]
    fn weighted_rescaling_is_the_same_point(cs in ints(6, 20), alpha in nonzero_rational()) {
        let t = InvariantTuple3::from_ints(std::array::from_fn(|k| cs[k]));
        prop_assume!(!t.is_zero());
        prop_assert!(wp_equal3(&t, &t.rescale(&alpha)).unwrap());
    }

    #[test]
    fn covariant_system_identities(cs in ints(8, 6)) {
        let c: Vec<F> = cs.iter().map(|&c| F::from_i64(c)).collect();
        let pair = FormPair::from_coefficients(&c).unwrap();
        let t = invariants3(&pair).unwrap();
        let s = covariant_system3(&pair, Variant::Plain).unwrap();
        prop_assert_eq!(det3(&s.c), F::from_i64(2) * &t.c * &t.c);
        prop_assert!(quadratic_in_forms(&s.c, &s.xi).is_zero());
        let sum = (0..3).fold(BinaryForm::zero(4), |acc, k| acc.add(&s.u[k].mul(&s.xi[k])));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn reconstruct2_round_trip(m in map(2, 6)) {
        let t = invariants2(&split(&m)).unwrap();
        prop_assume!(!t.r.is_zero());
        let model = reconstruct2(&t, &fomod::poly::identity2()).unwrap();
        prop_assert!(wp_equal2(&invariants2(&model).unwrap(), &t).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn diagonalize_is_a_congruence(cs in ints(6, 9)) {
        let c = Conic::from_form(
            F::from_i64(cs[0]), F::from_i64(cs[1]), F::from_i64(cs[2]),
            F::from_i64(2 * cs[3]), F::from_i64(2 * cs[4]), F::from_i64(2 * cs[5]),
        );
        let (d, t) = diagonalize(&c);
        let m = c.matrix();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = F::zero();
                for p in 0..3 {
                    for q in 0..3 {
                        acc += &(&t[p][i] * &(&m[p][q] * &t[q][j]));
                    }
                }
                let expect = if i == j { d[i].clone() } else { F::zero() };
                prop_assert_eq!(acc, expect);
            }
        }
        let tm: Vec<Vec<F>> = t.iter().map(|r| r.to_vec()).collect();
        prop_assert!(!fomod::linalg::det(&tm).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// A conic built through a known point is never declared insoluble.
    #[test]
    fn point_search_is_sound(cs in ints(6, 30), p in ints(3, 12)) {
        prop_assume!(p.iter().any(|&x| x != 0));
        let k = p.iter().position(|&x| x != 0).unwrap();
        let pf: [F; 3] = std::array::from_fn(|i| F::from_i64(p[i]));
        let mut c = Conic::from_form(
            F::from_i64(cs[0]), F::from_i64(cs[1]), F::from_i64(cs[2]),
            F::from_i64(cs[3]), F::from_i64(cs[4]), F::from_i64(cs[5]),
        );
        // adjust the k-th diagonal entry so that p lies on the conic
        let v = c.eval(&pf);
        let mut m = c.matrix().clone();
        m[k][k] = &m[k][k] - &(v / (&pf[k] * &pf[k]));
        c = Conic::new(m).unwrap();
        prop_assert!(c.eval(&pf).is_zero());
        match has_rational_point(&c, 10_000) {
            PointSearchResult::Point(x) => prop_assert!(c.contains(&x)),
            PointSearchResult::Impossible(cert) => prop_assert!(false, "{c} declared insoluble: {cert:?}"),
            PointSearchResult::Exhausted { diagnostic, .. } => prop_assert!(false, "{c} exhausted: {diagnostic}"),
        }
        if !c.det().is_zero() {
            let theta = parametrize(&c, &pf).unwrap();
            prop_assert!(quadratic_in_forms(c.matrix(), &theta).is_zero());
        }
    }
}
