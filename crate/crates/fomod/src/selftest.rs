//! A quick, seeded run of the library's core identities, for checking an
//! installed build.

use crate::error::Result;
use crate::field::FieldElement;
use crate::forms::{merge, split};
use crate::inv2::{check_relation2, covariants2, invariants2, sigma_from_s, InvariantTuple2};
use crate::inv3::{check_relation3, invariants3, invariants3_appendix, rho_from_invariants, InvariantTuple3};
use crate::moduli::{classify_tuple, wp_equal2, wp_equal3, Stratum};
use crate::poly::identity2;
use crate::reconstruct::{descend3, reconstruct2, DescentResult};
use crate::sample::{random_map, random_pair3, random_sl2, seeded, SampleRng};

type F = FieldElement;

/// Outcome of one self-test check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub trials: usize,
    pub detail: String,
}

fn check(name: &'static str, trials: usize, rng: &mut SampleRng, mut body: impl FnMut(&mut SampleRng) -> Result<Option<String>>) -> Check {
    for _ in 0..trials {
        match body(rng) {
            Ok(None) => {}
            Ok(Some(detail)) => return Check { name, passed: false, trials, detail },
            Err(e) => return Check { name, passed: false, trials, detail: e.to_string() },
        }
    }
    Check { name, passed: true, trials, detail: String::new() }
}

fn fail_unless(ok: bool, detail: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(detail)
}

/// Run every check with `trials` random instances each (fewer for the
/// expensive ones).
pub fn run(seed: u64, trials: usize) -> Vec<Check> {
    let mut rng = seeded(seed);
    let few = trials.div_ceil(5).max(1);
    let mut out = Vec::new();
    out.push(check("relation3", trials, &mut rng, |rng| {
        let t = invariants3(&random_pair3(rng, 10))?;
        Ok(fail_unless(check_relation3(&t), || format!("relation fails at {t}")))
    }));
    out.push(check("closed-form-invariants", trials, &mut rng, |rng| {
        let pair = random_pair3(rng, 10);
        let cs = pair.coefficients();
        let arr: [F; 8] = std::array::from_fn(|k| cs[k].clone());
        Ok(fail_unless(invariants3(&pair)? == invariants3_appendix(&arr), || "pipelines disagree".into()))
    }));
    out.push(check("rho-is-resultant", trials, &mut rng, |rng| {
        let m = random_map(rng, 3, 10);
        let t = invariants3(&split(&m))?;
        Ok(fail_unless(rho_from_invariants(&t) == m.resultant(), || format!("mismatch for {t}")))
    }));
    out.push(check("sl2-invariance", few, &mut rng, |rng| {
        let m3 = random_map(rng, 3, 6);
        let m2 = random_map(rng, 2, 6);
        let g = random_sl2(rng, 3);
        let ok3 = invariants3(&split(&m3))? == invariants3(&split(&m3.conjugate(&g)?))?;
        let ok2 = invariants2(&split(&m2))? == invariants2(&split(&m2.conjugate(&g)?))?;
        Ok(fail_unless(ok3 && ok2, || "invariants changed under conjugation".into()))
    }));
    out.push(check("split-merge", trials, &mut rng, |rng| {
        let m = random_map(rng, 3, 10);
        Ok(fail_unless(merge(&split(&m))? == m, || "merge does not invert split".into()))
    }));
    out.push(check("relation2", trials, &mut rng, |rng| {
        let pair = split(&random_map(rng, 2, 10));
        let t = invariants2(&pair)?;
        let cov = covariants2(&pair)?;
        Ok(fail_unless(check_relation2(&t) && cov.r == cov.big_r, || format!("relation fails at {t}")))
    }));
    out.push(check("worked-examples", 1, &mut rng, |_| {
        let z3 = InvariantTuple3::from_array([F::from_i64(18), F::frac(1, 2), F::zero(), F::zero(), F::from_i64(-3), F::zero()]);
        let cube = crate::forms::RationalMap::new(
            crate::poly::BinaryForm::from_ints(&[1, 0, 0, 0]),
            crate::poly::BinaryForm::from_ints(&[0, 0, 0, 1]),
        )?;
        let t3 = invariants3(&split(&cube))?;
        let square = crate::forms::RationalMap::new(
            crate::poly::BinaryForm::from_ints(&[1, 0, 0]),
            crate::poly::BinaryForm::from_ints(&[0, 0, 1]),
        )?;
        let t2 = invariants2(&split(&square))?;
        let z2 = InvariantTuple2::from_array([F::from_i64(16), F::frac(-8, 3), F::frac(-2, 27), F::zero()]);
        let (sigma, rho) = sigma_from_s(&t2)?;
        let silverman = InvariantTuple3::from_ints([144, 20, -12, 288, 192, -6912]);
        let ok = t3 == z3
            && classify_tuple(&t3) == Stratum::D4_1
            && t2 == z2
            && sigma.sigma1 == F::from_i64(2)
            && sigma.sigma2.is_zero()
            && rho.is_one()
            && descend3(&silverman, 10_000)?.outcome() == "obstruction";
        Ok(fail_unless(ok, || "a worked example disagrees".into()))
    }));
    out.push(check("descent-round-trip", few, &mut rng, |rng| {
        let t = invariants3(&split(&random_map(rng, 3, 6)))?;
        match descend3(&t, 10_000)? {
            DescentResult::Model { pair, .. } => {
                Ok(fail_unless(wp_equal3(&invariants3(&pair)?, &t)?, || format!("model does not match {t}")))
            }
            DescentResult::SearchExhausted { .. } => Ok(None),
            other => Ok(Some(format!("map over Q reported {} at {t}", other.outcome()))),
        }
    }));
    out.push(check("reconstruct2-round-trip", few, &mut rng, |rng| {
        let t = invariants2(&split(&random_map(rng, 2, 6)))?;
        if t.r.is_zero() {
            return Ok(None);
        }
        let pair = reconstruct2(&t, &identity2())?;
        Ok(fail_unless(wp_equal2(&invariants2(&pair)?, &t)?, || format!("model does not match {t}")))
    }));
    out
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_checks_pass() {
        let checks = super::run(1, 10);
        assert_eq!(checks.len(), 9);
        for c in checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
