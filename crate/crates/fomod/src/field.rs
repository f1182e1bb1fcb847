//! Exact scalars: the rationals and quadratic extensions `Q(sqrt(D))`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

/// Build a rational from a numerator and denominator.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Build an integral rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rationals,
    /// `Q(sqrt(D))` with `D` squarefree and different from 0 and 1.
    QuadExt(i64),
}

impl FieldDescriptor {
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree_i64(d) {
            return Err(Error::Parse(format!("D = {d} is not a squarefree integer other than 0, 1")));
        }
        Ok(FieldDescriptor::QuadExt(d))
    }

    pub fn gaussian() -> Self {
        FieldDescriptor::QuadExt(-1)
    }

    pub fn discriminant(&self) -> Option<i64> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::QuadExt(d) => Some(*d),
        }
    }

    /// Smallest field containing both, if the two are compatible.
    ///
    /// The rationals sit inside every extension, so mixing a rational
    /// scalar into an extension computation is allowed; two different
    /// extensions are not.
    pub fn join(self, other: Self) -> Result<Self> {
        match (self, other) {
            (a, b) if a == b => Ok(a),
            (FieldDescriptor::Rationals, b) => Ok(b),
            (a, FieldDescriptor::Rationals) => Ok(a),
            (a, b) => Err(Error::FieldMismatch(format!("{a} vs {b}"))),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::QuadExt(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    /// Accepts `Q`, `Q(i)` and `Q(sqrt(D))`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        if t == "Q(i)" {
            return Ok(FieldDescriptor::gaussian());
        }
        let d = t
            .strip_prefix("Q(sqrt(")
            .and_then(|r| r.strip_suffix("))"))
            .and_then(|r| r.parse::<i64>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}; expected Q, Q(i) or Q(sqrt(D))")))?;
        FieldDescriptor::quadratic(d)
    }
}

fn is_squarefree_i64(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// An element `a + b*sqrt(D)` of a field described by [`FieldDescriptor`].
///
/// Rationals are kept in lowest terms by `BigRational`; `b` is zero for
/// elements of the rationals. Equality is structural: two elements are equal
/// when their coordinates agree (an element with `b = 0` compares equal to
/// the same rational in any field).
#[derive(Clone, Debug)]
pub struct FieldElement {
    a: Q,
    b: Q,
    field: FieldDescriptor,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.field == other.field)
    }
}

impl Eq for FieldElement {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn new(a: Q, b: Q, field: FieldDescriptor) -> Result<Self> {
        if field == FieldDescriptor::Rationals && !b.is_zero() {
            return Err(Error::FieldMismatch("irrational part in an element of Q".into()));
        }
        Ok(FieldElement { a, b, field })
    }

    pub fn rational(a: Q) -> Self {
        FieldElement { a, b: Q::zero(), field: FieldDescriptor::Rationals }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::rational(qi(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(q(n, d))
    }

    /// `sqrt(D)` itself.
    pub fn sqrt_d(d: i64) -> Result<Self> {
        let field = FieldDescriptor::quadratic(d)?;
        Ok(FieldElement { a: Q::zero(), b: Q::one(), field })
    }

    /// The imaginary unit in `Q(i)`.
    pub fn i() -> Self {
        FieldElement { a: Q::zero(), b: Q::one(), field: FieldDescriptor::gaussian() }
    }

    pub fn zero() -> Self {
        Self::rational(Q::zero())
    }

    pub fn one() -> Self {
        Self::rational(Q::one())
    }

    /// Re-tag a rational element as living in `field`.
    pub fn in_field(mut self, field: FieldDescriptor) -> Result<Self> {
        self.field = self.field.join(field)?;
        Ok(self)
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn b(&self) -> &Q {
        &self.b
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Q> {
        self.is_rational().then(|| self.a.clone())
    }

    fn d_value(&self) -> i64 {
        self.field.discriminant().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        FieldElement { a: self.a.clone(), b: -self.b.clone(), field: self.field }
    }

    /// `a^2 - D b^2`.
    pub fn norm(&self) -> Q {
        if self.b.is_zero() {
            return &self.a * &self.a;
        }
        &self.a * &self.a - qi(self.d_value()) * &self.b * &self.b
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(FieldElement { a: self.a.recip(), b: Q::zero(), field: self.field });
        }
        let n = self.norm();
        Ok(FieldElement { a: &self.a / &n, b: -(&self.b / &n), field: self.field })
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let field = self.field.join(rhs.field)?;
        Ok(FieldElement { a: &self.a + &rhs.a, b: &self.b + &rhs.b, field })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        let field = self.field.join(rhs.field)?;
        Ok(FieldElement { a: &self.a - &rhs.a, b: &self.b - &rhs.b, field })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let field = self.field.join(rhs.field)?;
        if self.b.is_zero() {
            if self.a.is_zero() {
                return Ok(FieldElement { a: Q::zero(), b: Q::zero(), field });
            }
            return Ok(FieldElement { a: &self.a * &rhs.a, b: &self.a * &rhs.b, field });
        }
        if rhs.b.is_zero() {
            return Ok(FieldElement { a: &self.a * &rhs.a, b: &self.b * &rhs.a, field });
        }
        let d = qi(field.discriminant().unwrap_or(0));
        Ok(FieldElement {
            a: &self.a * &rhs.a + d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            field,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.field.join(rhs.field)?;
        self.checked_mul(&rhs.checked_inv()?)
    }

    /// Scale by a rational.
    pub fn scale(&self, s: &Q) -> Self {
        FieldElement { a: &self.a * s, b: &self.b * s, field: self.field }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FieldElement::one().in_field(self.field).unwrap();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents allowed for nonzero elements.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.checked_inv()
        } else {
            Ok(p)
        }
    }

    /// Square root inside the element's own field, when it exists.
    ///
    /// Only rational radicands are supported (the root may then be rational
    /// or a rational multiple of `sqrt(D)`).
    pub fn sqrt_in_field(&self) -> Option<Self> {
        let r = self.to_rational()?;
        if let Some(s) = rational_square_root(&r) {
            return Some(FieldElement { a: s, b: Q::zero(), field: self.field });
        }
        let d = self.field.discriminant()?;
        let s = rational_square_root(&(r / qi(d)))?;
        Some(FieldElement { a: Q::zero(), b: s, field: self.field })
    }
}

/// Apply a named field operation.
pub fn arith(x: &FieldElement, y: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field operation on incompatible operands")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        self.field = self.field.join(rhs.field).expect("field operation on incompatible operands");
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        self.field = self.field.join(rhs.field).expect("field operation on incompatible operands");
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { a: -self.a, b: -self.b, field: self.field }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.clone().neg()
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_i64(n)
    }
}

impl From<Q> for FieldElement {
    fn from(a: Q) -> Self {
        FieldElement::rational(a)
    }
}

/// Canonical text of a rational: `p` or `p/q`.
pub fn fmt_rational(r: &Q) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElement {
    /// `p/q` for rationals, `p/q+r/s*sqrt(D)` otherwise; zero parts and unit
    /// coefficients of `sqrt(D)` are elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let d = self.d_value();
        let mut out = String::new();
        if !self.a.is_zero() {
            out.push_str(&fmt_rational(&self.a));
        }
        let mag = self.b.abs();
        if self.b.is_negative() {
            out.push('-');
        } else if !self.a.is_zero() {
            out.push('+');
        }
        if !mag.is_one() {
            out.push_str(&fmt_rational(&mag));
            out.push('*');
        }
        out.push_str(&format!("sqrt({d})"));
        write!(f, "{out}")
    }
}

/// Parse a rational in the form `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

impl FieldElement {
    /// Parse the canonical text form inside `field`.
    ///
    /// Accepted shapes: `p/q`, `p/q+r/s*sqrt(D)`, `p/q-r/s*sqrt(D)`,
    /// `r/s*sqrt(D)`, `sqrt(D)`, `-sqrt(D)`. The `D` in the text must match
    /// the field.
    pub fn parse(text: &str, field: FieldDescriptor) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = s.find("sqrt(") else {
            return Ok(FieldElement::rational(parse_rational(&s)?).in_field(field)?);
        };
        let bad = || Error::Parse(format!("not a field element: {text:?}"));
        let tail = &s[pos + 5..];
        let close = tail.find(')').ok_or_else(bad)?;
        if close + 1 != tail.len() {
            return Err(bad());
        }
        let d: i64 = tail[..close].parse().map_err(|_| bad())?;
        if field != FieldDescriptor::QuadExt(d) {
            return Err(Error::FieldMismatch(format!("sqrt({d}) in an element of {field}")));
        }
        let head = &s[..pos];
        // head is `[a](+|-)[coef*]` or `[coef*]` or empty
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (a_txt, b_txt) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_txt.is_empty() { Q::zero() } else { parse_rational(a_txt)? };
        let b = match b_txt {
            "" | "+" => Q::one(),
            "-" => -Q::one(),
            t => parse_rational(t.strip_prefix('+').unwrap_or(t))?,
        };
        FieldElement::new(a, b, field)
    }
}

/// The nonnegative rational square root of `x`, if there is one.
pub fn rational_square_root(x: &Q) -> Option<Q> {
    rational_nth_root(x, 2)
}

/// A rational `r` with `r^n = x`; for even `n` the nonnegative one.
pub fn rational_nth_root(x: &Q, n: u32) -> Option<Q> {
    assert!(n >= 1, "root index must be positive");
    if x.is_zero() {
        return Some(Q::zero());
    }
    if x.is_negative() && n % 2 == 0 {
        return None;
    }
    let num = integer_nth_root(&x.numer().abs(), n)?;
    let den = integer_nth_root(x.denom(), n)?;
    let r = Q::new(num, den);
    Some(if x.is_negative() { -r } else { r })
}

/// Exact `n`-th root of a nonnegative integer.
pub fn integer_nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    let r = x.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
}

/// Total order used for deterministic output (by `a`, then `b`).
pub fn cmp_elements(x: &FieldElement, y: &FieldElement) -> Ordering {
    x.a.cmp(&y.a).then_with(|| x.b.cmp(&y.b))
}

/// `x` as an `i64`, when it is a small integer.
pub fn as_small_int(x: &Q) -> Option<i64> {
    if x.denom().is_one() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Least common multiple of the denominators of a list of rationals.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(a: i64, b: i64) -> FieldElement {
        FieldElement::new(qi(a), qi(b), FieldDescriptor::gaussian()).unwrap()
    }

    #[test]
    fn sum_of_halves_and_thirds() {
        assert_eq!(FieldElement::frac(1, 2) + FieldElement::frac(1, 3), FieldElement::frac(5, 6));
    }

    #[test]
    fn two_over_i() {
        let r = FieldElement::from_i64(2) / FieldElement::i();
        assert_eq!(r, gi(0, -2));
        assert_eq!(r.to_string(), "-2*sqrt(-1)");
    }

    #[test]
    fn conjugate_product_in_q_sqrt_minus_three() {
        let f = FieldDescriptor::quadratic(-3).unwrap();
        let x = FieldElement::new(qi(1), qi(1), f).unwrap();
        assert_eq!(&x * &x.conjugate(), FieldElement::from_i64(4));
    }

    #[test]
    fn mixing_extensions_is_rejected() {
        let x = FieldElement::i();
        let y = FieldElement::sqrt_d(-3).unwrap();
        assert!(matches!(arith(&x, &y, ArithOp::Add), Err(Error::FieldMismatch(_))));
        assert!(matches!(
            arith(&x, &FieldElement::zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn roots() {
        assert_eq!(rational_square_root(&q(4, 9)), Some(q(2, 3)));
        assert_eq!(rational_square_root(&qi(2)), None);
        assert_eq!(rational_square_root(&qi(0)), Some(qi(0)));
        assert_eq!(rational_nth_root(&qi(8), 3), Some(qi(2)));
        assert_eq!(rational_nth_root(&q(-27, 8), 3), Some(q(-3, 2)));
        assert_eq!(rational_nth_root(&qi(2), 2), None);
        assert_eq!(rational_nth_root(&qi(-4), 2), None);
    }

    #[test]
    fn text_round_trip() {
        let f = FieldDescriptor::gaussian();
        for s in ["3-3*sqrt(-1)", "72*sqrt(-1)", "-72+72*sqrt(-1)", "sqrt(-1)", "-sqrt(-1)", "1/2+3/4*sqrt(-1)", "-48"] {
            let x = FieldElement::parse(s, f).unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!(FieldElement::parse("1+sqrt(-3)", f).is_err());
        assert!(FieldElement::parse("1/0", FieldDescriptor::Rationals).is_err());
        assert_eq!(FieldElement::parse("6/4", FieldDescriptor::Rationals).unwrap().to_string(), "3/2");
    }

    #[test]
    fn descriptor_validation() {
        assert!(FieldDescriptor::quadratic(-3).is_ok());
        assert!(FieldDescriptor::quadratic(12).is_err());
        assert!(FieldDescriptor::quadratic(1).is_err());
        assert!(FieldDescriptor::quadratic(0).is_err());
        assert_eq!("Q".parse::<FieldDescriptor>(), Ok(FieldDescriptor::Rationals));
        assert_eq!("Q(i)".parse::<FieldDescriptor>(), Ok(FieldDescriptor::gaussian()));
        assert_eq!("Q(sqrt(-3))".parse::<FieldDescriptor>(), Ok(FieldDescriptor::QuadExt(-3)));
        assert!("Q(sqrt(4))".parse::<FieldDescriptor>().is_err());
        assert!("R".parse::<FieldDescriptor>().is_err());
        for f in [FieldDescriptor::Rationals, FieldDescriptor::QuadExt(-1), FieldDescriptor::QuadExt(5)] {
            assert_eq!(f.to_string().parse::<FieldDescriptor>(), Ok(f));
        }
    }

    #[test]
    fn in_field_square_roots() {
        let f = FieldDescriptor::quadratic(-3).unwrap();
        let x = FieldElement::from_i64(-12).in_field(f).unwrap();
        let r = x.sqrt_in_field().unwrap();
        assert_eq!(&r * &r, x);
        assert!(FieldElement::from_i64(2).sqrt_in_field().is_none());
    }
}
