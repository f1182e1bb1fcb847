//! Invariants of degree-2 maps, i.e. of pairs `(f, g)` of a linear form and
//! a cubic, and their relation to the symmetric functions of the
//! fixed-point multipliers.

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::forms::FormPair;
use crate::poly::{tv, tv0, BinaryForm};

type F = FieldElement;

fn fe(n: i64, d: i64) -> F {
    F::frac(n, d)
}

/// Weights of `(s1, s2, s3, r)`.
pub const WEIGHTS2: [u32; 4] = [4, 4, 4, 6];

/// The basic invariants `s1, s2, s3` (degree 4) and `r` (degree 6).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTuple2 {
    pub s1: F,
    pub s2: F,
    pub s3: F,
    pub r: F,
}

impl InvariantTuple2 {
    pub fn from_array(v: [F; 4]) -> Self {
        let [s1, s2, s3, r] = v;
        InvariantTuple2 { s1, s2, s3, r }
    }

    pub fn to_array(&self) -> [F; 4] {
        [self.s1.clone(), self.s2.clone(), self.s3.clone(), self.r.clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.to_array().iter().all(F::is_zero)
    }

    pub fn field(&self) -> Result<FieldDescriptor> {
        self.to_array().iter().try_fold(FieldDescriptor::Rationals, |acc, x| acc.join(x.field()))
    }

    /// Multiply each coordinate by `alpha^weight`.
    pub fn rescale(&self, alpha: &F) -> Self {
        let v = self.to_array();
        Self::from_array(std::array::from_fn(|k| &v[k] * &alpha.pow(WEIGHTS2[k])))
    }
}

impl std::fmt::Display for InvariantTuple2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.s1, self.s2, self.s3, self.r)
    }
}

/// The covariants of a degree-2 pair that the invariants and the
/// reconstruction are built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covariants2 {
    /// `H = (g, g)_2`.
    pub h: BinaryForm,
    /// `t = (g, H)_1`.
    pub t: BinaryForm,
    /// `V0 = (H, f)_1`.
    pub v0: BinaryForm,
    /// `V1 = (g, f^2)_2`.
    pub v1: BinaryForm,
    /// `b0 = (V1, f)_1`.
    pub b0: F,
    /// `b1 = (V0, f)_1`.
    pub b1: F,
    /// `r = (V1, V0)_1`.
    pub r: F,
    /// `R = (t, f^3)_3`; always equal to `r`.
    pub big_r: F,
}

fn check_orders(pair: &FormPair) -> Result<()> {
    if pair.f.order() != 1 || pair.g.order() != 3 {
        return Err(Error::OrderMismatch(format!(
            "expected orders (1, 3), got ({}, {})",
            pair.f.order(),
            pair.g.order()
        )));
    }
    Ok(())
}

pub fn covariants2(pair: &FormPair) -> Result<Covariants2> {
    check_orders(pair)?;
    let (f, g) = (&pair.f, &pair.g);
    let h = tv(g, g, 2);
    let t = tv(g, &h, 1);
    let v0 = tv(&h, f, 1);
    let v1 = tv(g, &f.pow(2), 2);
    Ok(Covariants2 {
        b0: tv0(&v1, f, 1),
        b1: tv0(&v0, f, 1),
        r: tv0(&v1, &v0, 1),
        big_r: tv0(&t, &f.pow(3), 3),
        h,
        t,
        v0,
        v1,
    })
}

/// `s1 = (g, f^3)_3`, `s2 = (H, f^2)_2`, `s3 = (t, g)_3`, `r = (V1, V0)_1`.
pub fn invariants2(pair: &FormPair) -> Result<InvariantTuple2> {
    let cov = covariants2(pair)?;
    if cov.r != cov.big_r {
        return Err(Error::Internal(format!("r = {} but R = {}", cov.r, cov.big_r)));
    }
    let (f, g) = (&pair.f, &pair.g);
    Ok(InvariantTuple2 {
        s1: tv0(g, &f.pow(3), 3),
        s2: tv0(&cov.h, &f.pow(2), 2),
        s3: tv0(&cov.t, g, 3),
        r: cov.r,
    })
}

/// `r^2 - s1^2 s3 / 2 + s2^3 / 2`; zero on tuples coming from pairs.
pub fn relation2_defect(t: &InvariantTuple2) -> F {
    let InvariantTuple2 { s1, s2, s3, r } = t;
    r * r - fe(1, 2) * s1 * s1 * s3 + fe(1, 2) * s2 * s2 * s2
}

pub fn check_relation2(t: &InvariantTuple2) -> bool {
    relation2_defect(t).is_zero()
}

/// The two symmetric functions of the fixed-point multipliers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPair {
    pub sigma1: F,
    pub sigma2: F,
}

/// `(s1, s2, s3) = SIGMA_SYSTEM (tau1, tau2, rho)` with `tau_k = sigma_k rho`.
pub const SIGMA_SYSTEM: [[(i64, i64); 3]; 3] = [[(5, 1), (2, 1), (6, 1)], [(2, 3), (2, 3), (-4, 1)], [(-4, 27), (2, 27), (2, 9)]];

/// Exact inverse of [`SIGMA_SYSTEM`] (whose determinant is 4).
pub const SIGMA_SYSTEM_INVERSE: [[(i64, i64); 3]; 3] = [[(1, 9), (0, 1), (-3, 1)], [(1, 9), (1, 2), (6, 1)], [(1, 27), (-1, 6), (1, 2)]];

fn apply(m: &[[(i64, i64); 3]; 3], v: [&F; 3]) -> [F; 3] {
    std::array::from_fn(|r| (0..3).fold(F::zero(), |acc, k| acc + fe(m[r][k].0, m[r][k].1) * v[k]))
}

/// `(tau1, tau2, rho)` from `(s1, s2, s3)`.
pub fn tau_rho_from_s(t: &InvariantTuple2) -> [F; 3] {
    apply(&SIGMA_SYSTEM_INVERSE, [&t.s1, &t.s2, &t.s3])
}

/// `(s1, s2, s3)` from `(tau1, tau2, rho)`.
pub fn s_from_tau_rho(tau1: &F, tau2: &F, rho: &F) -> [F; 3] {
    apply(&SIGMA_SYSTEM, [tau1, tau2, rho])
}

/// `sigma1, sigma2` and the resultant `rho` from the invariants.
pub fn sigma_from_s(t: &InvariantTuple2) -> Result<(SigmaPair, F)> {
    let [tau1, tau2, rho] = tau_rho_from_s(t);
    if rho.is_zero() {
        return Err(Error::DegenerateLocus("the resultant rho vanishes".into()));
    }
    let inv = rho.inv();
    Ok((SigmaPair { sigma1: tau1 * &inv, sigma2: tau2 * &inv }, rho))
}

/// `b_k = LAMBDA[k] . (s1, s2, s3)`: the degree-4 invariants `b0`, `b1` as
/// combinations of the basic ones.
pub const B_LAMBDA: [[i64; 3]; 2] = [[1, 0, 0], [0, 1, 0]];

/// The invariant coefficients of the typical presentation of a quadratic
/// map in the covariants `V0, V1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionData2 {
    pub a000: F,
    pub a100: F,
    pub a110: F,
    pub a111: F,
    pub b0: F,
    pub b1: F,
}

impl ReconstructionData2 {
    /// `a_ijk`, symmetric in its indices.
    pub fn a(&self, i: usize, j: usize, k: usize) -> &F {
        match i + j + k {
            0 => &self.a000,
            1 => &self.a100,
            2 => &self.a110,
            _ => &self.a111,
        }
    }
}

pub fn reconstruction_data2(t: &InvariantTuple2) -> ReconstructionData2 {
    let s = [&t.s1, &t.s2, &t.s3];
    let lin = |l: &[i64; 3]| (0..3).fold(F::zero(), |acc, k| acc + F::from_i64(l[k]) * s[k]);
    ReconstructionData2 {
        a000: fe(1, 9) * &t.s3 * &t.r,
        a100: F::zero(),
        a110: fe(-1, 9) * &t.s2 * &t.r,
        a111: fe(-2, 9) * &t.s1 * &t.r,
        b0: lin(&B_LAMBDA[0]),
        b1: lin(&B_LAMBDA[1]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{fixed_point_multiplier, merge, split, RationalMap};
    use crate::linalg;
    use crate::sample::{random_map, random_pair2, seeded};

    fn z2() -> RationalMap {
        RationalMap::new(BinaryForm::from_ints(&[1, 0, 0]), BinaryForm::from_ints(&[0, 0, 1])).unwrap()
    }

    #[test]
    fn z2_invariants() {
        let t = invariants2(&split(&z2())).unwrap();
        assert_eq!(t, InvariantTuple2::from_array([F::from_i64(16), fe(-8, 3), fe(-2, 27), F::zero()]));
        let (sig, rho) = sigma_from_s(&t).unwrap();
        assert_eq!(sig, SigmaPair { sigma1: F::from_i64(2), sigma2: F::zero() });
        assert_eq!(rho, F::one());
    }

    #[test]
    fn z2_sigma_from_multipliers() {
        let m = z2();
        let pts = [(F::one(), F::zero()), (F::zero(), F::one()), (F::one(), F::one())];
        let mults: Vec<F> = pts.iter().map(|(x, y)| fixed_point_multiplier(&m, x, y).unwrap()).collect();
        let s1 = mults.iter().fold(F::zero(), |a, x| a + x);
        let s2 = &mults[0] * &mults[1] + &mults[0] * &mults[2] + &mults[1] * &mults[2];
        let (sig, _) = sigma_from_s(&invariants2(&split(&m)).unwrap()).unwrap();
        assert_eq!((sig.sigma1, sig.sigma2), (s1, s2));
    }

    #[test]
    fn zero_pair_and_orders() {
        let zero = FormPair::new(BinaryForm::zero(1), BinaryForm::zero(3)).unwrap();
        assert!(invariants2(&zero).unwrap().is_zero());
        assert!(matches!(sigma_from_s(&invariants2(&zero).unwrap()), Err(Error::DegenerateLocus(_))));
        let wrong = FormPair::new(BinaryForm::zero(2), BinaryForm::zero(4)).unwrap();
        assert!(matches!(invariants2(&wrong), Err(Error::OrderMismatch(_))));
    }

    #[test]
    fn sigma_inverse_is_exact() {
        let to = |m: &[[(i64, i64); 3]; 3]| -> linalg::Matrix {
            m.iter().map(|row| row.iter().map(|&(n, d)| fe(n, d)).collect()).collect()
        };
        let (m, minv) = (to(&SIGMA_SYSTEM), to(&SIGMA_SYSTEM_INVERSE));
        assert_eq!(linalg::det(&m), F::from_i64(4));
        assert_eq!(linalg::mat_mul(&m, &minv), linalg::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn sigma_homogeneity() {
        let t = invariants2(&split(&z2())).unwrap();
        let alpha = fe(3, 2);
        let scaled = t.rescale(&alpha);
        let (s0, r0) = sigma_from_s(&t).unwrap();
        let (s1, r1) = sigma_from_s(&scaled).unwrap();
        assert_eq!(s0, s1);
        assert_eq!(r1, r0 * alpha.pow(4));
    }

    #[test]
    fn reconstruction_data_examples() {
        let t = InvariantTuple2::from_array([9, 0, 1, 1].map(F::from_i64));
        let data = reconstruction_data2(&t);
        assert_eq!(data.a000, fe(1, 9));
        assert_eq!(data.a111, F::from_i64(-2));
        let t0 = InvariantTuple2::from_array([3, 4, 5, 0].map(F::from_i64));
        let d0 = reconstruction_data2(&t0);
        assert!([&d0.a000, &d0.a100, &d0.a110, &d0.a111].iter().all(|x| x.is_zero()));
    }

    /// Recover the coefficients of `b0`, `b1` in `s1, s2, s3` from random
    /// maps and compare with the stored ones.
    #[test]
    fn b_lambda_derivation() {
        let mut rng = seeded(17);
        let mut rows: linalg::Matrix = Vec::new();
        let mut rhs = [Vec::new(), Vec::new()];
        while rows.len() < 6 {
            let pair = split(&random_map(&mut rng, 2, 4));
            let t = invariants2(&pair).unwrap();
            let cov = covariants2(&pair).unwrap();
            rows.push(vec![t.s1, t.s2, t.s3]);
            rhs[0].push(cov.b0);
            rhs[1].push(cov.b1);
        }
        for k in 0..2 {
            let lambda = linalg::solve(&rows[..3].to_vec(), &rhs[k][..3]).unwrap();
            assert_eq!(lambda, B_LAMBDA[k].map(F::from_i64).to_vec());
            for (row, b) in rows.iter().zip(&rhs[k]) {
                let val = (0..3).fold(F::zero(), |acc, m| acc + &row[m] * &lambda[m]);
                assert_eq!(&val, b);
            }
        }
    }

    #[test]
    fn random_maps_bridge() {
        let mut rng = seeded(5);
        for _ in 0..20 {
            let m = random_map(&mut rng, 2, 5);
            let t = invariants2(&split(&m)).unwrap();
            assert!(check_relation2(&t));
            let [tau1, tau2, rho] = tau_rho_from_s(&t);
            assert_eq!(rho, m.resultant());
            assert_eq!(s_from_tau_rho(&tau1, &tau2, &rho), [t.s1.clone(), t.s2.clone(), t.s3.clone()]);
            let r2 = fe(-2, 1) * &tau1 * &tau1 * &tau1 - &tau1 * &tau1 * &tau2 + &tau1 * &tau1 * &rho
                + fe(8, 1) * &tau1 * &tau2 * &rho
                - fe(12, 1) * &tau1 * &rho * &rho
                + fe(4, 1) * &tau2 * &tau2 * &rho
                - fe(12, 1) * &tau2 * &rho * &rho
                + fe(36, 1) * &rho * &rho * &rho;
            assert_eq!(&t.r * &t.r, r2);
            let cov = covariants2(&split(&m)).unwrap();
            let data = reconstruction_data2(&t);
            assert_eq!((data.b0, data.b1), (cov.b0, cov.b1));
        }
        for _ in 0..20 {
            let pair = random_pair2(&mut rng, 5);
            if merge(&pair).is_ok() {
                assert!(check_relation2(&invariants2(&pair).unwrap()));
            }
        }
    }

    #[test]
    fn automorphisms_kill_r() {
        let inv_z2 = RationalMap::new(BinaryForm::from_ints(&[0, 0, 1]), BinaryForm::from_ints(&[1, 0, 0])).unwrap();
        assert!(invariants2(&split(&z2())).unwrap().r.is_zero());
        assert!(invariants2(&split(&inv_z2)).unwrap().r.is_zero());
        let generic = RationalMap::new(BinaryForm::from_ints(&[1, 2, 0]), BinaryForm::from_ints(&[0, 3, 1])).unwrap();
        assert!(!invariants2(&split(&generic)).unwrap().r.is_zero());
    }
}
