//! Rational maps `(F0, F1)` and their Clebsch–Gordan pair `(f, g)`.
//!
//! For a map of degree `d`, `f = dF0/dX0 + dF1/dX1` is the divergence (order
//! `d-1`) and `g = X0 F1 - X1 F0` vanishes exactly at the fixed points
//! (order `d+1`). The sign of `g` is the one for which the invariants of
//! `psi(x) = i((x-1)/(x+1))^3` come out as `(72i, 10i, 3-3i, -72+72i, -48, 864i)`.

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::linalg;
use crate::poly::{det2, substitute, BinaryForm, Matrix2};

/// A rational map of degree `d >= 2` with non-vanishing resultant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    f0: BinaryForm,
    f1: BinaryForm,
}

/// The pair `(f, g)` with `order g = order f + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormPair {
    pub f: BinaryForm,
    pub g: BinaryForm,
}

impl RationalMap {
    pub fn new(f0: BinaryForm, f1: BinaryForm) -> Result<Self> {
        if f0.order() != f1.order() {
            return Err(Error::OrderMismatch(format!("F0 has order {}, F1 has order {}", f0.order(), f1.order())));
        }
        if f0.order() < 2 {
            return Err(Error::OrderMismatch(format!("degree {} < 2", f0.order())));
        }
        f0.field()?.join(f1.field()?)?;
        if resultant(&f0, &f1).is_zero() {
            return Err(Error::DegenerateMap);
        }
        Ok(RationalMap { f0, f1 })
    }

    pub fn degree(&self) -> usize {
        self.f0.order()
    }

    pub fn f0(&self) -> &BinaryForm {
        &self.f0
    }

    pub fn f1(&self) -> &BinaryForm {
        &self.f1
    }

    pub fn field(&self) -> FieldDescriptor {
        self.f0.field().and_then(|a| a.join(self.f1.field()?)).expect("checked at construction")
    }

    pub fn resultant(&self) -> FieldElement {
        resultant(&self.f0, &self.f1)
    }

    /// `gamma^-1 o phi o gamma`, i.e. `gamma^-1 F(gamma X)`.
    pub fn conjugate(&self, gamma: &Matrix2) -> Result<Self> {
        let det = det2(gamma);
        if det.is_zero() {
            return Err(Error::PreconditionViolated("conjugating matrix is singular".into()));
        }
        let dinv = det.inv();
        let a = substitute(&self.f0, gamma);
        let b = substitute(&self.f1, gamma);
        // inverse = adj / det
        let g0 = a.scale(&gamma[1][1]).sub(&b.scale(&gamma[0][1])).scale(&dinv);
        let g1 = b.scale(&gamma[0][0]).sub(&a.scale(&gamma[1][0])).scale(&dinv);
        RationalMap::new(g0, g1)
    }

    /// Image of the point `[x0 : x1]`.
    pub fn eval(&self, x0: &FieldElement, x1: &FieldElement) -> (FieldElement, FieldElement) {
        (self.f0.eval(x0, x1), self.f1.eval(x0, x1))
    }
}

impl FormPair {
    pub fn new(f: BinaryForm, g: BinaryForm) -> Result<Self> {
        if g.order() != f.order() + 2 {
            return Err(Error::OrderMismatch(format!("orders ({}, {}) differ by {} instead of 2", f.order(), g.order(), g.order() as i64 - f.order() as i64)));
        }
        Ok(FormPair { f, g })
    }

    /// The eight coefficients `[c1..c8]` of a degree-3 pair
    /// (`f = c1 X0^2 + c2 X0X1 + c3 X1^2`, `g = c4 X0^4 + ... + c8 X1^4`).
    pub fn from_coefficients(cs: &[FieldElement]) -> Result<Self> {
        if cs.len() < 4 || cs.len() % 2 != 0 {
            return Err(Error::OrderMismatch(format!("{} coefficients do not describe a pair", cs.len())));
        }
        let nf = (cs.len() - 4) / 2 + 1;
        FormPair::new(BinaryForm::new(cs[..nf].to_vec()), BinaryForm::new(cs[nf..].to_vec()))
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        self.f.coeffs().iter().chain(self.g.coeffs()).cloned().collect()
    }

    /// Degree of the corresponding map.
    pub fn degree(&self) -> usize {
        self.f.order() + 1
    }

    pub fn field(&self) -> Result<FieldDescriptor> {
        self.f.field()?.join(self.g.field()?)
    }

    /// Apply `M` to both forms: `(f o M, g o M)`.
    pub fn substitute(&self, m: &Matrix2) -> FormPair {
        FormPair { f: substitute(&self.f, m), g: substitute(&self.g, m) }
    }

    /// `(beta f, beta^2 g)`; this multiplies every invariant by a power of
    /// `beta` fixed by its bidegree.
    pub fn rescale(&self, beta: &FieldElement) -> FormPair {
        FormPair { f: self.f.scale(beta), g: self.g.scale(&(beta * beta)) }
    }
}

/// Divergence and fixed-point form of a map.
pub fn split(map: &RationalMap) -> FormPair {
    split_forms(&map.f0, &map.f1)
}

/// [`split`] on a pair of forms of equal order that need not define a map
/// (the resultant may vanish).
pub fn split_forms(f0: &BinaryForm, f1: &BinaryForm) -> FormPair {
    let f = f0.d_x0().add(&f1.d_x1());
    let g = f1.times_x0().sub(&f0.times_x1());
    FormPair { f, g }
}

/// Inverse of [`split`]:
/// `F0 = (X0 f - dg/dX1)/(d+1)`, `F1 = (X1 f + dg/dX0)/(d+1)`.
pub fn merge(pair: &FormPair) -> Result<RationalMap> {
    let d = pair.degree();
    if d < 2 {
        return Err(Error::OrderMismatch("pair of a map of degree < 2".into()));
    }
    let s = FieldElement::frac(1, d as i64 + 1);
    let f0 = pair.f.times_x0().sub(&pair.g.d_x1()).scale(&s);
    let f1 = pair.f.times_x1().add(&pair.g.d_x0()).scale(&s);
    RationalMap::new(f0, f1)
}

/// Sylvester resultant of two forms of the same order.
///
/// Rows are the coefficient vectors of `F` (shifted `d` times) followed by
/// those of `G`, with coefficients listed from `X0^d` down to `X1^d`.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> FieldElement {
    assert_eq!(f.order(), g.order(), "resultant needs forms of equal order");
    let d = f.order();
    if d == 0 {
        return FieldElement::one();
    }
    let n = 2 * d;
    let mut m = vec![vec![FieldElement::zero(); n]; n];
    for k in 0..d {
        for i in 0..=d {
            m[k][k + i] = f.coeff(i).clone();
            m[d + k][k + i] = g.coeff(i).clone();
        }
    }
    linalg::det(&m)
}

/// Multiplier of the fixed point `[x0 : x1]`.
///
/// With `F(xi) = lambda xi`, rescaling `xi` by `mu` with `mu^(d-1) lambda = 1`
/// gives `F(mu xi) = mu xi`, and the multiplier `f(mu xi) - d` equals
/// `f(xi)/lambda - d`; it therefore lies in the field of the point.
pub fn fixed_point_multiplier(map: &RationalMap, x0: &FieldElement, x1: &FieldElement) -> Result<FieldElement> {
    if x0.is_zero() && x1.is_zero() {
        return Err(Error::NotAFixedPoint);
    }
    let pair = split(map);
    if !pair.g.eval(x0, x1).is_zero() {
        return Err(Error::NotAFixedPoint);
    }
    let (y0, y1) = map.eval(x0, x1);
    let lambda = if !x0.is_zero() { &y0 / x0 } else { &y1 / x1 };
    if lambda.is_zero() {
        return Err(Error::NonRescalable);
    }
    let d = FieldElement::from_i64(map.degree() as i64);
    Ok(pair.f.eval(x0, x1) / lambda - d)
}
