//! Binary forms, sparse multivariate polynomials and the omega process.
//!
//! Transvectants follow the normalisation
//! `(F,G)_r = (n-r)!(m-r)!/(n!m!) * Omega^r F(Z') G(Z'') |_{Z'=Z''=X}`
//! with `Omega = d/dZ'_0 d/dZ''_1 - d/dZ''_0 d/dZ'_1`. With this choice
//! `(X0^2, X1^2)_2 = 1` and `(X0 X1, X0 X1)_2 = -1/2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement, Q};

/// 2x2 matrix `[[p, q], [r, s]]` acting by `X0 -> p X0 + q X1`, `X1 -> r X0 + s X1`.
pub type Matrix2 = [[FieldElement; 2]; 2];

pub fn identity2() -> Matrix2 {
    [[FieldElement::one(), FieldElement::zero()], [FieldElement::zero(), FieldElement::one()]]
}

pub fn det2(m: &Matrix2) -> FieldElement {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `n (n-1) ... (n-k+1)`.
fn falling(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, t| acc * BigInt::from(n - t))
}

fn binomial(n: usize, k: usize) -> BigInt {
    falling(n, k) / factorial(k)
}

/// A homogeneous form `sum_i c_i X0^(n-i) X1^i` of declared order `n`.
///
/// The order is part of the data: `0*X0^2 + X0 X1 + 0*X1^2` is a quadratic
/// form even though its leading coefficient vanishes, and transvectants are
/// normalised by the declared orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<FieldElement>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<FieldElement>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| FieldElement::from_i64(c)).collect())
    }

    pub fn from_rationals(cs: &[Q]) -> Self {
        Self::new(cs.iter().cloned().map(FieldElement::rational).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![FieldElement::zero(); order + 1])
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![c])
    }

    /// `X0^(n-i) X1^i`.
    pub fn monomial(order: usize, i: usize) -> Self {
        let mut f = Self::zero(order);
        f.coeffs[i] = FieldElement::one();
        f
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    /// The value of an order-0 form.
    pub fn as_constant(&self) -> Option<&FieldElement> {
        (self.order() == 0).then(|| &self.coeffs[0])
    }

    /// Smallest field containing all coefficients.
    pub fn field(&self) -> Result<FieldDescriptor> {
        self.coeffs.iter().try_fold(FieldDescriptor::Rationals, |f, c| f.join(c.field()))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "adding forms of different orders");
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "subtracting forms of different orders");
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn scale_q(&self, s: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![FieldElement::zero(); self.order() + other.order() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(FieldElement::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `d^u/dX0^u d^v/dX1^v`.
    pub fn derivative(&self, u: usize, v: usize) -> Self {
        let n = self.order();
        if u + v > n {
            return Self::zero(0);
        }
        let mut out = Vec::with_capacity(n - u - v + 1);
        for i in v..=(n - u) {
            let c = &self.coeffs[i];
            if c.is_zero() {
                out.push(FieldElement::zero());
            } else {
                let k = falling(n - i, u) * falling(i, v);
                out.push(c.scale(&Q::from_integer(k)));
            }
        }
        Self::new(out)
    }

    pub fn d_x0(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        self.derivative(1, 0)
    }

    pub fn d_x1(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        self.derivative(0, 1)
    }

    /// Multiply by `X0`.
    pub fn times_x0(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.push(FieldElement::zero());
        Self::new(c)
    }

    /// Multiply by `X1`.
    pub fn times_x1(&self) -> Self {
        let mut c = vec![FieldElement::zero()];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    pub fn eval(&self, x0: &FieldElement, x1: &FieldElement) -> FieldElement {
        let n = self.order();
        let mut acc = FieldElement::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += &(c * &x0.pow((n - i) as u32) * x1.pow(i as u32));
        }
        acc
    }

    /// True when some scalar multiple of `self` equals `other`, or both vanish.
    pub fn proportional(&self, other: &Self) -> bool {
        if self.order() != other.order() {
            return false;
        }
        let n = self.order();
        for i in 0..=n {
            for j in 0..=n {
                if &self.coeffs[i] * &other.coeffs[j] != &self.coeffs[j] * &other.coeffs[i] {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match (n - i, i) {
                (0, 0) => String::new(),
                (a, 0) => pow_txt("X0", a),
                (0, b) => pow_txt("X1", b),
                (a, b) => format!("{}*{}", pow_txt("X0", a), pow_txt("X1", b)),
            };
            parts.push(if mono.is_empty() { format!("({c})") } else { format!("({c})*{mono}") });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn pow_txt(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// `r`-th transvectant of two binary forms.
pub fn transvect(f: &BinaryForm, g: &BinaryForm, r: usize) -> Result<BinaryForm> {
    let (n, m) = (f.order(), g.order());
    if r > n || r > m {
        return Err(Error::IndexTooLarge(format!("r = {r} with orders {n}, {m}")));
    }
    let mut acc = BinaryForm::zero(n + m - 2 * r);
    for k in 0..=r {
        let df = f.derivative(r - k, k);
        if df.is_zero() {
            continue;
        }
        let dg = g.derivative(k, r - k);
        if dg.is_zero() {
            continue;
        }
        let mut term = df.mul(&dg).scale_q(&Q::from_integer(binomial(r, k)));
        if k % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    let norm = Q::new(factorial(n - r) * factorial(m - r), factorial(n) * factorial(m));
    Ok(acc.scale_q(&norm))
}

/// Like [`transvect`] but panics on an out-of-range index; for internal use
/// where orders are fixed by construction.
pub(crate) fn tv(f: &BinaryForm, g: &BinaryForm, r: usize) -> BinaryForm {
    transvect(f, g, r).expect("transvectant index within range")
}

/// Value of an invariant transvectant (result of order 0).
pub(crate) fn tv0(f: &BinaryForm, g: &BinaryForm, r: usize) -> FieldElement {
    let t = tv(f, g, r);
    t.as_constant().cloned().expect("transvectant of order 0")
}

/// Variables available to a [`MultiPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(u8),
    Y(u8),
    /// Component `c` of the `p`-th copy `Z^(p)`.
    Z(usize, u8),
}

/// Sparse polynomial over a fixed variable list; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MultiPoly {
    pub fn zero(vars: Vec<Var>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<Var>, c: FieldElement) -> Self {
        let mut p = Self::zero(vars);
        let e = vec![0; p.vars.len()];
        p.add_term(e, c);
        p
    }

    /// Single monomial `c * prod vars^exps` given as `(var, exponent)` pairs.
    pub fn monomial(vars: Vec<Var>, c: FieldElement, powers: &[(Var, u32)]) -> Self {
        let mut e = vec![0; vars.len()];
        for (v, k) in powers {
            let idx = vars.iter().position(|w| w == v).expect("variable not declared");
            e[idx] += k;
        }
        let mut p = Self::zero(vars);
        p.add_term(e, c);
        p
    }

    /// Embed a binary form in the variables `(v0, v1)`.
    pub fn from_form(vars: Vec<Var>, form: &BinaryForm, v0: Var, v1: Var) -> Self {
        let i0 = vars.iter().position(|w| *w == v0).expect("variable not declared");
        let i1 = vars.iter().position(|w| *w == v1).expect("variable not declared");
        let n = form.order() as u32;
        let mut p = Self::zero(vars);
        for (i, c) in form.coeffs().iter().enumerate() {
            let mut e = vec![0; p.vars.len()];
            e[i0] += n - i as u32;
            e[i1] += i as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: FieldElement) {
        assert_eq!(e.len(), self.vars.len(), "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable lists differ");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable lists differ");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable lists differ");
        let mut out = Self::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    /// Partial derivative with respect to the variable at position `idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            out.add_term(e2, c.scale(&Q::from_integer(BigInt::from(e[idx]))));
        }
        out
    }

    fn index_of(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|w| *w == v)
    }

    /// `Omega_ab p = d2p/dZ0^(a) dZ1^(b) - d2p/dZ0^(b) dZ1^(a)`.
    pub fn omega(&self, a: usize, b: usize) -> Result<Self> {
        let idx = |p: usize, c: u8| self.index_of(Var::Z(p, c)).ok_or(Error::UnknownVariablePair(a, b));
        let (a0, a1, b0, b1) = (idx(a, 0)?, idx(a, 1)?, idx(b, 0)?, idx(b, 1)?);
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            // d/dZ0^(a) d/dZ1^(b)
            if e[a0] > 0 && e[b1] > 0 && (a0 != b1 || e[a0] > 1) {
                let mut e2 = e.clone();
                let k1 = e2[a0];
                e2[a0] -= 1;
                let k2 = e2[b1];
                e2[b1] -= 1;
                out.add_term(e2, c.scale(&Q::from_integer(BigInt::from(k1) * BigInt::from(k2))));
            }
            if e[b0] > 0 && e[a1] > 0 && (b0 != a1 || e[b0] > 1) {
                let mut e2 = e.clone();
                let k1 = e2[b0];
                e2[b0] -= 1;
                let k2 = e2[a1];
                e2[a1] -= 1;
                out.add_term(e2, -c.scale(&Q::from_integer(BigInt::from(k1) * BigInt::from(k2))));
            }
        }
        Ok(out)
    }

    /// Identify every copy `Z^(p)` (and `Y`) with `X`, producing a binary
    /// form of the given order. Fails if the polynomial is not homogeneous of
    /// that degree.
    pub fn collapse(&self, order: usize) -> Result<BinaryForm> {
        let mut out = BinaryForm::zero(order);
        for (e, c) in &self.terms {
            let (mut d0, mut d1) = (0usize, 0usize);
            for (v, k) in self.vars.iter().zip(e) {
                let comp = match v {
                    Var::X(c) | Var::Y(c) | Var::Z(_, c) => *c,
                };
                if comp == 0 {
                    d0 += *k as usize;
                } else {
                    d1 += *k as usize;
                }
            }
            if d0 + d1 != order {
                return Err(Error::Internal(format!("collapse: degree {} != {order}", d0 + d1)));
            }
            out.coeffs[d1] += c;
        }
        Ok(out)
    }
}

/// Generalised transvectant of the forms `G_0..G_{m-1}`.
///
/// `pairs` lists `(p, q, r)` with zero-based form indices: the operator
/// `Omega_pq^r` is applied for each entry, the copies are identified with
/// `X`, and the result is multiplied by `prod (s_l - kappa_l)! / s_l!`
/// where `s_l` is the order of `G_l` and `kappa_l` the total index of the
/// pairs involving `l`.
pub fn gen_transvect(forms: &[BinaryForm], pairs: &[(usize, usize, usize)]) -> Result<BinaryForm> {
    let m = forms.len();
    let mut kappa = vec![0usize; m];
    for &(p, q, r) in pairs {
        if p >= m || q >= m || p == q {
            return Err(Error::PreconditionViolated(format!("bad pair ({p}, {q})")));
        }
        kappa[p] += r;
        kappa[q] += r;
    }
    for (l, f) in forms.iter().enumerate() {
        if kappa[l] > f.order() {
            return Err(Error::IndexTooLarge(format!(
                "form {l} has order {} but total index {}",
                f.order(),
                kappa[l]
            )));
        }
    }
    let vars: Vec<Var> = (0..m).flat_map(|l| [Var::Z(l, 0), Var::Z(l, 1)]).collect();
    let mut poly = MultiPoly::constant(vars.clone(), FieldElement::one());
    for (l, f) in forms.iter().enumerate() {
        poly = poly.mul(&MultiPoly::from_form(vars.clone(), f, Var::Z(l, 0), Var::Z(l, 1)));
    }
    for &(p, q, r) in pairs {
        for _ in 0..r {
            poly = poly.omega(p, q)?;
        }
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (l, f) in forms.iter().enumerate() {
        num *= factorial(f.order() - kappa[l]);
        den *= factorial(f.order());
    }
    let order: usize = forms.iter().map(BinaryForm::order).sum::<usize>() - 2 * pairs.iter().map(|p| p.2).sum::<usize>();
    let collapsed = poly.collapse(order)?;
    Ok(collapsed.scale_q(&Q::new(num, den)))
}

/// `F(p X0 + q X1, r X0 + s X1)`.
pub fn substitute(f: &BinaryForm, m: &Matrix2) -> BinaryForm {
    let n = f.order();
    let l0 = BinaryForm::new(vec![m[0][0].clone(), m[0][1].clone()]);
    let l1 = BinaryForm::new(vec![m[1][0].clone(), m[1][1].clone()]);
    let mut p0 = vec![BinaryForm::constant(FieldElement::one())];
    let mut p1 = vec![BinaryForm::constant(FieldElement::one())];
    for k in 1..=n {
        p0.push(p0[k - 1].mul(&l0));
        p1.push(p1[k - 1].mul(&l1));
    }
    let mut acc = BinaryForm::zero(n);
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&p0[n - i].mul(&p1[i]).scale(c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    fn fi(n: i64) -> FieldElement {
        FieldElement::from_i64(n)
    }

    fn zvars() -> Vec<Var> {
        vec![Var::Z(1, 0), Var::Z(1, 1), Var::Z(2, 0), Var::Z(2, 1)]
    }

    #[test]
    fn omega_examples() {
        let v = zvars();
        let p = MultiPoly::monomial(v.clone(), fi(1), &[(Var::Z(1, 0), 1), (Var::Z(2, 1), 1)]);
        assert_eq!(p.omega(1, 2).unwrap(), MultiPoly::constant(v.clone(), fi(1)));
        let p = MultiPoly::monomial(v.clone(), fi(1), &[(Var::Z(2, 0), 1), (Var::Z(1, 1), 1)]);
        assert_eq!(p.omega(1, 2).unwrap(), MultiPoly::constant(v.clone(), fi(-1)));
        let p = MultiPoly::monomial(v.clone(), fi(1), &[(Var::Z(1, 0), 2), (Var::Z(2, 1), 2)]);
        let want = MultiPoly::monomial(v.clone(), fi(4), &[(Var::Z(1, 0), 1), (Var::Z(2, 1), 1)]);
        assert_eq!(p.omega(1, 2).unwrap(), want);
        assert_eq!(p.omega(1, 3), Err(Error::UnknownVariablePair(1, 3)));
    }

    #[test]
    fn transvectant_examples() {
        let x0x1 = BinaryForm::from_ints(&[0, 1, 0]);
        assert_eq!(transvect(&x0x1, &x0x1, 2).unwrap(), BinaryForm::constant(FieldElement::frac(-1, 2)));
        let x0sq = BinaryForm::from_ints(&[1, 0, 0]);
        let x1sq = BinaryForm::from_ints(&[0, 0, 1]);
        assert_eq!(transvect(&x0sq, &x1sq, 2).unwrap(), BinaryForm::constant(fi(1)));
        let f = BinaryForm::from_ints(&[3, -1, 4, 1]);
        assert!(transvect(&f, &f, 1).unwrap().is_zero());
        assert!(matches!(transvect(&x0sq, &f, 3), Err(Error::IndexTooLarge(_))));
    }

    #[test]
    fn gen_transvect_specialisations() {
        let f = BinaryForm::from_ints(&[1, -2, 0, 5]);
        let g = BinaryForm::from_ints(&[2, 1, 3]);
        for r in 0..=2 {
            assert_eq!(gen_transvect(&[f.clone(), g.clone()], &[(0, 1, r)]).unwrap(), transvect(&f, &g, r).unwrap());
        }
        let h = BinaryForm::from_ints(&[1, 1]);
        assert_eq!(gen_transvect(&[f.clone(), g.clone(), h.clone()], &[]).unwrap(), f.mul(&g).mul(&h));
        assert!(matches!(gen_transvect(&[g.clone(), h.clone()], &[(0, 1, 2)]), Err(Error::IndexTooLarge(_))));
    }

    #[test]
    fn substitution_examples() {
        let f = BinaryForm::from_ints(&[0, 1, 0, 0]);
        assert_eq!(substitute(&f, &identity2()), f);
        let swap = [[fi(0), fi(1)], [fi(1), fi(0)]];
        assert_eq!(substitute(&f, &swap), BinaryForm::from_ints(&[0, 0, 1, 0]));
        let t = FieldElement::rational(q(3, 7));
        let diag = [[t.clone(), fi(0)], [fi(0), t.inv()]];
        let x0x1 = BinaryForm::from_ints(&[0, 1, 0]);
        assert_eq!(substitute(&x0x1, &diag), x0x1);
    }

    #[test]
    fn derivatives_and_euler() {
        let f = BinaryForm::from_ints(&[2, -3, 0, 7]);
        // Euler: X0 f_X0 + X1 f_X1 = n f
        let e = f.d_x0().times_x0().add(&f.d_x1().times_x1());
        assert_eq!(e, f.scale(&fi(3)));
    }
}
