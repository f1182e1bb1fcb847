//! Invariants and covariants of degree-3 maps, i.e. of pairs `(f, g)` of a
//! quadratic and a quartic.
//!
//! Everything is computed twice: once through transvectants and once through
//! closed-form polynomials in the coefficients or in the basic invariants.
//! The two routes are cross-checked in the tests.

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::forms::FormPair;
use crate::poly::{gen_transvect, tv, tv0, BinaryForm};

type F = FieldElement;

fn fe(n: i64, d: i64) -> F {
    F::frac(n, d)
}

/// Weights of `(d, i, j, a, b, c)` in the weighted projective space.
pub const WEIGHTS3: [u32; 6] = [2, 2, 3, 3, 4, 6];

/// The six basic invariants `d, i, j, a, b, c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTuple3 {
    pub d: F,
    pub i: F,
    pub j: F,
    pub a: F,
    pub b: F,
    pub c: F,
}

impl InvariantTuple3 {
    pub fn from_array(v: [F; 6]) -> Self {
        let [d, i, j, a, b, c] = v;
        InvariantTuple3 { d, i, j, a, b, c }
    }

    pub fn from_ints(v: [i64; 6]) -> Self {
        Self::from_array(v.map(F::from_i64))
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 6])
    }

    pub fn to_array(&self) -> [F; 6] {
        [self.d.clone(), self.i.clone(), self.j.clone(), self.a.clone(), self.b.clone(), self.c.clone()]
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
        Self::from_array(std::array::from_fn(|k| &v[k] * &alpha.pow(WEIGHTS3[k])))
    }
}

impl std::fmt::Display for InvariantTuple3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = self.to_array();
        write!(f, "({}, {}, {}, {}, {}, {})", v[0], v[1], v[2], v[3], v[4], v[5])
    }
}

fn check_orders(pair: &FormPair) -> Result<()> {
    if pair.f.order() != 2 || pair.g.order() != 4 {
        return Err(Error::OrderMismatch(format!(
            "expected orders (2, 4), got ({}, {})",
            pair.f.order(),
            pair.g.order()
        )));
    }
    Ok(())
}

/// The Hessian `H = (g, g)_2` and `T = (g, H)_1` of the quartic.
fn hessian_and_t(g: &BinaryForm) -> (BinaryForm, BinaryForm) {
    let h = tv(g, g, 2);
    let t = tv(g, &h, 1);
    (h, t)
}

/// Basic invariants through transvectants.
pub fn invariants3(pair: &FormPair) -> Result<InvariantTuple3> {
    check_orders(pair)?;
    let (f, g) = (&pair.f, &pair.g);
    let (h, t) = hessian_and_t(g);
    let f2 = f.pow(2);
    Ok(InvariantTuple3 {
        d: tv0(f, f, 2),
        i: tv0(g, g, 4),
        j: tv0(&h, g, 4),
        a: tv0(g, &f2, 4),
        b: tv0(&h, &f2, 4),
        c: tv0(&t, &f.pow(3), 6),
    })
}

/// Sum of monomials in the coefficients `c1..c8`; each term is
/// `(numerator, denominator, 1-based indices)`.
fn eval_terms(terms: &[(i64, i64, &[usize])], c: &[F]) -> F {
    terms.iter().fold(F::zero(), |acc, (n, d, idx)| {
        let m = idx.iter().fold(fe(*n, *d), |p, &k| p * &c[k - 1]);
        acc + m
    })
}

/// Basic invariants from their explicit polynomials in the eight
/// coefficients (`f = c1 X0^2 + c2 X0X1 + c3 X1^2`,
/// `g = c4 X0^4 + c5 X0^3X1 + c6 X0^2X1^2 + c7 X0X1^3 + c8 X1^4`).
pub fn invariants3_appendix(c: &[F; 8]) -> InvariantTuple3 {
    let d = eval_terms(&[(-1, 2, &[2, 2]), (2, 1, &[1, 3])], c);
    let i = eval_terms(&[(1, 6, &[6, 6]), (-1, 2, &[5, 7]), (2, 1, &[4, 8])], c);
    let j = eval_terms(
        &[(-1, 36, &[6, 6, 6]), (1, 8, &[5, 6, 7]), (-3, 8, &[4, 7, 7]), (-3, 8, &[5, 5, 8]), (1, 1, &[4, 6, 8])],
        c,
    );
    let a = eval_terms(
        &[
            (1, 1, &[3, 3, 4]),
            (-1, 2, &[2, 3, 5]),
            (1, 6, &[2, 2, 6]),
            (1, 3, &[1, 3, 6]),
            (-1, 2, &[1, 2, 7]),
            (1, 1, &[1, 1, 8]),
        ],
        c,
    );
    let b = eval_terms(
        &[
            (-1, 8, &[3, 3, 5, 5]),
            (1, 3, &[3, 3, 4, 6]),
            (1, 12, &[2, 3, 5, 6]),
            (-1, 36, &[2, 2, 6, 6]),
            (-1, 18, &[1, 3, 6, 6]),
            (-1, 2, &[2, 3, 4, 7]),
            (1, 24, &[2, 2, 5, 7]),
            (1, 12, &[1, 3, 5, 7]),
            (1, 12, &[1, 2, 6, 7]),
            (-1, 8, &[1, 1, 7, 7]),
            (1, 3, &[2, 2, 4, 8]),
            (2, 3, &[1, 3, 4, 8]),
            (-1, 2, &[1, 2, 5, 8]),
            (1, 3, &[1, 1, 6, 8]),
        ],
        c,
    );
    let cc = eval_terms(
        &[
            (1, 32, &[3, 3, 3, 5, 5, 5]),
            (-1, 8, &[3, 3, 3, 4, 5, 6]),
            (-1, 32, &[2, 3, 3, 5, 5, 6]),
            (1, 8, &[2, 3, 3, 4, 6, 6]),
            (1, 4, &[3, 3, 3, 4, 4, 7]),
            (-1, 16, &[2, 3, 3, 4, 5, 7]),
            (1, 32, &[2, 2, 3, 5, 5, 7]),
            (1, 32, &[1, 3, 3, 5, 5, 7]),
            (-1, 8, &[2, 2, 3, 4, 6, 7]),
            (-1, 8, &[1, 3, 3, 4, 6, 7]),
            (1, 32, &[2, 2, 2, 4, 7, 7]),
            (3, 16, &[1, 2, 3, 4, 7, 7]),
            (-1, 32, &[1, 2, 2, 5, 7, 7]),
            (-1, 32, &[1, 1, 3, 5, 7, 7]),
            (1, 32, &[1, 1, 2, 6, 7, 7]),
            (-1, 32, &[1, 1, 1, 7, 7, 7]),
            (-1, 2, &[2, 3, 3, 4, 4, 8]),
            (1, 4, &[2, 2, 3, 4, 5, 8]),
            (1, 4, &[1, 3, 3, 4, 5, 8]),
            (-1, 32, &[2, 2, 2, 5, 5, 8]),
            (-3, 16, &[1, 2, 3, 5, 5, 8]),
            (1, 8, &[1, 2, 2, 5, 6, 8]),
            (1, 8, &[1, 1, 3, 5, 6, 8]),
            (-1, 8, &[1, 1, 2, 6, 6, 8]),
            (-1, 4, &[1, 2, 2, 4, 7, 8]),
            (-1, 4, &[1, 1, 3, 4, 7, 8]),
            (1, 16, &[1, 1, 2, 5, 7, 8]),
            (1, 8, &[1, 1, 1, 6, 7, 8]),
            (1, 2, &[1, 1, 2, 4, 8, 8]),
            (-1, 4, &[1, 1, 1, 5, 8, 8]),
        ],
        c,
    );
    InvariantTuple3 { d, i, j, a, b, c: cc }
}

/// `c~ = d^2 i/6 - a^2/2 + d b/2`, the invariant that replaces `c` on the
/// locus `c = 0`.
pub fn c_tilde(t: &InvariantTuple3) -> F {
    let (d, i, a, b) = (&t.d, &t.i, &t.a, &t.b);
    fe(1, 6) * d * d * i - fe(1, 2) * a * a + fe(1, 2) * d * b
}

/// Resultant of `F0, F1` as a polynomial in the basic invariants.
pub fn rho_from_invariants(t: &InvariantTuple3) -> F {
    let InvariantTuple3 { d, i, j, a, b, c } = t;
    fe(1, 8) * i * i * i + fe(1, 384) * i * d * d - fe(3, 4) * j * j - fe(3, 16) * j * a + fe(1, 256) * a * a
        + fe(3, 16) * i * b
        - fe(1, 64) * d * b
        - fe(1, 8) * c
}

/// `2c^2 - (right-hand side)` of the relation among the six invariants;
/// zero exactly for tuples coming from actual pairs.
pub fn relation3_defect(t: &InvariantTuple3) -> F {
    let InvariantTuple3 { d, i, j, a, b, c } = t;
    let d3 = d * d * d;
    let rhs = fe(1, 54) * &d3 * i * i * i - fe(1, 9) * &d3 * j * j - fe(1, 12) * d * i * i * a * a
        - fe(1, 3) * j * a * a * a
        + d * j * a * b
        + fe(1, 2) * i * a * a * b
        - fe(1, 2) * d * i * b * b
        - b * b * b;
    fe(2, 1) * c * c - rhs
}

pub fn check_relation3(t: &InvariantTuple3) -> bool {
    relation3_defect(t).is_zero()
}

/// Which triple of quadratic covariants a [`CovariantSystem3`] is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `u1 = f, u2 = (g, f)_2, u3 = (H, f)_2`.
    Plain,
    /// `u1 = f, u2 = (g, f)_2, u3 = (u2, f)_1`; usable when `c = 0`.
    Tilde,
}

pub type Sym3 = [[F; 3]; 3];

fn sym3(e11: F, e12: F, e13: F, e22: F, e23: F, e33: F) -> Sym3 {
    [[e11.clone(), e12.clone(), e13.clone()], [e12, e22.clone(), e23.clone()], [e13, e23, e33]]
}

/// Three quadratic covariants `u_i`, the dual triple `xi_i`, and the
/// invariants `A_i = (f, u_i)_2`, `B_ij = ((g, u_i)_2 (g, u_j)_2)`,
/// `C_ij = (u_i, u_j)_2`.
///
/// They satisfy `sum C_ij xi_i xi_j = 0`, `sum u_i xi_i = 0` and the typical
/// presentations `r f = sum A_i xi_i`, `r^2 g = sum B_ij xi_i xi_j`, where `r`
/// is `c` for the plain system and `-c~` for the tilde system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantSystem3 {
    pub variant: Variant,
    pub u: [BinaryForm; 3],
    pub xi: [BinaryForm; 3],
    pub a: [F; 3],
    pub b: Sym3,
    pub c: Sym3,
    /// `(u1, u2)_1 (u1, u3)_1 (u2, u3)_1` collapsed to an invariant; equals
    /// the basic invariant `c` for the plain system.
    pub r: F,
}

/// Build the covariant system by transvectants.
pub fn covariant_system3(pair: &FormPair, variant: Variant) -> Result<CovariantSystem3> {
    check_orders(pair)?;
    let (f, g) = (&pair.f, &pair.g);
    let u2 = tv(g, f, 2);
    let u3 = match variant {
        Variant::Plain => {
            let (h, _) = hessian_and_t(g);
            tv(&h, f, 2)
        }
        Variant::Tilde => tv(&u2, f, 1),
    };
    let u = [f.clone(), u2, u3];
    let xi = [tv(&u[1], &u[2], 1), tv(&u[2], &u[0], 1), tv(&u[0], &u[1], 1)];
    let a = std::array::from_fn(|k| tv0(f, &u[k], 2));
    let c = std::array::from_fn(|p| std::array::from_fn(|q| tv0(&u[p], &u[q], 2)));
    let b = std::array::from_fn(|p| {
        std::array::from_fn(|q| {
            let form = gen_transvect(&[g.clone(), u[p].clone(), u[q].clone()], &[(0, 1, 2), (0, 2, 2)])
                .expect("orders fit");
            form.as_constant().cloned().expect("invariant")
        })
    });
    let r = gen_transvect(&u, &[(0, 1, 1), (0, 2, 1), (1, 2, 1)])
        .expect("orders fit")
        .as_constant()
        .cloned()
        .expect("invariant");
    Ok(CovariantSystem3 { variant, u, xi, a, b, c, r })
}

/// `A_i` in terms of the basic invariants.
pub fn closed_a(t: &InvariantTuple3, variant: Variant) -> [F; 3] {
    match variant {
        Variant::Plain => [t.d.clone(), t.a.clone(), t.b.clone()],
        Variant::Tilde => [t.d.clone(), t.a.clone(), F::zero()],
    }
}

/// `C_ij` in terms of the basic invariants.
pub fn closed_c(t: &InvariantTuple3, variant: Variant) -> Sym3 {
    let InvariantTuple3 { d, i, j, a, b, .. } = t;
    let c22 = b + &(fe(1, 3) * i * d);
    match variant {
        Variant::Plain => sym3(
            d.clone(),
            a.clone(),
            b.clone(),
            c22,
            fe(1, 6) * i * a + fe(1, 3) * j * d,
            fe(1, 3) * j * a - fe(1, 6) * i * b + fe(1, 18) * i * i * d,
        ),
        Variant::Tilde => sym3(d.clone(), a.clone(), F::zero(), c22, F::zero(), c_tilde(t)),
    }
}

/// `B_ij` in terms of the basic invariants.
pub fn closed_b(t: &InvariantTuple3, variant: Variant) -> Sym3 {
    let InvariantTuple3 { d, i, j, a, b, c } = t;
    let b12 = b + &(fe(1, 3) * i * d);
    let b22 = fe(1, 2) * i * a + fe(1, 3) * j * d;
    match variant {
        Variant::Plain => sym3(
            a.clone(),
            b12,
            fe(1, 6) * i * a + fe(1, 3) * j * d,
            b22,
            fe(1, 3) * j * a + fe(1, 6) * i * b + fe(1, 18) * i * i * d,
            fe(1, 3) * j * b + fe(1, 36) * i * i * a + fe(1, 18) * d * i * j,
        ),
        Variant::Tilde => sym3(
            a.clone(),
            b12,
            F::zero(),
            b22,
            -c.clone(),
            fe(1, 2) * a * b - fe(1, 12) * i * a * d - fe(1, 6) * j * d * d,
        ),
    }
}

/// `sum M_ij x_i x_j` for forms `x_i`.
pub fn quadratic_in_forms(m: &Sym3, x: &[BinaryForm; 3]) -> BinaryForm {
    let order = 2 * x[0].order();
    let mut acc = BinaryForm::zero(order);
    for p in 0..3 {
        for q in 0..3 {
            if !m[p][q].is_zero() {
                acc = acc.add(&x[p].mul(&x[q]).scale(&m[p][q]));
            }
        }
    }
    acc
}

/// `sum v_i x_i` for forms `x_i`.
pub fn linear_in_forms(v: &[F; 3], x: &[BinaryForm; 3]) -> BinaryForm {
    let mut acc = BinaryForm::zero(x[0].order());
    for k in 0..3 {
        acc = acc.add(&x[k].scale(&v[k]));
    }
    acc
}

/// Determinant of a symmetric 3x3 matrix.
pub fn det3(m: &Sym3) -> F {
    let t1 = &m[0][0] * &(&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]);
    let t2 = &m[0][1] * &(&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0]);
    let t3 = &m[0][2] * &(&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    t1 - t2 + t3
}
