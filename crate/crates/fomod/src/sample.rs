//! Seeded random generators for forms, maps and matrices, used by the
//! property tests, the acceptance suite and the `selftest` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::FieldElement;
use crate::forms::{FormPair, RationalMap};
use crate::poly::{BinaryForm, Matrix2};

pub type SampleRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An integer in `[-h, h]`.
pub fn random_int<R: Rng>(rng: &mut R, h: i64) -> FieldElement {
    FieldElement::from_i64(rng.random_range(-h..=h))
}

/// A rational `n/m` with `|n| <= h`, `1 <= m <= h`.
pub fn random_rational<R: Rng>(rng: &mut R, h: i64) -> FieldElement {
    let n = rng.random_range(-h..=h);
    let m = rng.random_range(1..=h.max(1));
    FieldElement::frac(n, m)
}

/// A nonzero rational of height at most `h`.
pub fn random_nonzero_rational<R: Rng>(rng: &mut R, h: i64) -> FieldElement {
    loop {
        let x = random_rational(rng, h);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A form of the given order with integer coefficients in `[-h, h]`.
pub fn random_form<R: Rng>(rng: &mut R, order: usize, h: i64) -> BinaryForm {
    BinaryForm::new((0..=order).map(|_| random_int(rng, h)).collect())
}

/// A pair of a quadratic and a quartic with integer coefficients in `[-h, h]`.
pub fn random_pair3<R: Rng>(rng: &mut R, h: i64) -> FormPair {
    FormPair::new(random_form(rng, 2, h), random_form(rng, 4, h)).expect("orders differ by 2")
}

/// A pair of a linear form and a cubic with integer coefficients in `[-h, h]`.
pub fn random_pair2<R: Rng>(rng: &mut R, h: i64) -> FormPair {
    FormPair::new(random_form(rng, 1, h), random_form(rng, 3, h)).expect("orders differ by 2")
}

/// A map of the given degree with integer coefficients in `[-h, h]` and
/// nonzero resultant.
pub fn random_map<R: Rng>(rng: &mut R, degree: usize, h: i64) -> RationalMap {
    loop {
        if let Ok(m) = RationalMap::new(random_form(rng, degree, h), random_form(rng, degree, h)) {
            return m;
        }
    }
}

/// A matrix of determinant 1, a product of two shears and a diagonal
/// matrix with entries of height at most `h`.
pub fn random_sl2<R: Rng>(rng: &mut R, h: i64) -> Matrix2 {
    let x = random_rational(rng, h);
    let y = random_rational(rng, h);
    let t = random_nonzero_rational(rng, h);
    let ti = t.inv();
    // [[1, x], [0, 1]] * [[1, 0], [y, 1]] * [[t, 0], [0, 1/t]]
    let one = FieldElement::one();
    let m00 = &one + &(&x * &y);
    [[&m00 * &t, &x * &ti], [&y * &t, ti.clone()]]
}
