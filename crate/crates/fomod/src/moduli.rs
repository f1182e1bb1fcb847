//! Moduli points as weighted projective points, their equality over the
//! algebraic closure, validation, and the automorphism strata of the
//! degree-3 moduli space.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::forms::FormPair;
use crate::inv2::{tau_rho_from_s, check_relation2, InvariantTuple2, WEIGHTS2};
use crate::inv3::{c_tilde, check_relation3, rho_from_invariants, InvariantTuple3, WEIGHTS3};
use crate::poly::BinaryForm;

type F = FieldElement;

/// If `alpha^w_k p_k = q_k` for some `alpha` in the algebraic closure,
/// returns `(g, alpha^g)` where `g` is the gcd of the weights on the common
/// support; otherwise `None`.
///
/// Both tuples must be nonzero.
pub fn weighted_ratio(p: &[F], q: &[F], weights: &[u32]) -> Result<Option<(u32, F)>> {
    assert_eq!(p.len(), weights.len());
    assert_eq!(q.len(), weights.len());
    if p.iter().all(F::is_zero) || q.iter().all(F::is_zero) {
        return Err(Error::ZeroPoint);
    }
    let mut support = Vec::new();
    for k in 0..p.len() {
        match (p[k].is_zero(), q[k].is_zero()) {
            (true, true) => {}
            (false, false) => support.push(k),
            _ => return Ok(None),
        }
    }
    let ratios: Vec<F> = support.iter().map(|&k| q[k].checked_div(&p[k])).collect::<Result<_>>()?;
    let w: Vec<u32> = support.iter().map(|&k| weights[k]).collect();
    for x in 0..ratios.len() {
        for y in (x + 1)..ratios.len() {
            if ratios[x].pow(w[y]) != ratios[y].pow(w[x]) {
                return Ok(None);
            }
        }
    }
    // Bezout: sum e_k w_k = g, then alpha^g = prod r_k^e_k.
    let mut g = w[0] as i64;
    let mut coeffs = vec![0i64; w.len()];
    coeffs[0] = 1;
    for k in 1..w.len() {
        let ext = g.extended_gcd(&(w[k] as i64));
        for c in coeffs.iter_mut().take(k) {
            *c *= ext.x;
        }
        coeffs[k] = ext.y;
        g = ext.gcd;
    }
    let mut alpha_g = F::one();
    for (r, &e) in ratios.iter().zip(&coeffs) {
        alpha_g = alpha_g * r.powi(e)?;
    }
    for (r, &wk) in ratios.iter().zip(&w) {
        if &alpha_g.pow(wk / g as u32) != r {
            return Ok(None);
        }
    }
    Ok(Some((g as u32, alpha_g)))
}

/// Equality of weighted projective points over the algebraic closure.
pub fn wp_equal_weighted(p: &[F], q: &[F], weights: &[u32]) -> Result<bool> {
    Ok(weighted_ratio(p, q, weights)?.is_some())
}

/// A point of the degree-3 moduli space, `[d : i : j : a : b : c]` with
/// weights `(2, 2, 3, 3, 4, 6)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliPoint3 {
    pub coords: InvariantTuple3,
}

/// A point of the degree-2 moduli space, `[s1 : s2 : s3 : r]` with weights
/// `(4, 4, 4, 6)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliPoint2 {
    pub coords: InvariantTuple2,
}

impl ModuliPoint3 {
    pub fn new(coords: InvariantTuple3) -> Result<Self> {
        if coords.is_zero() {
            return Err(Error::ZeroPoint);
        }
        coords.field()?;
        Ok(ModuliPoint3 { coords })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.coords.field().expect("checked at construction")
    }

    pub fn wp_equal(&self, other: &ModuliPoint3) -> Result<bool> {
        wp_equal3(&self.coords, &other.coords)
    }
}

impl ModuliPoint2 {
    pub fn new(coords: InvariantTuple2) -> Result<Self> {
        if coords.is_zero() {
            return Err(Error::ZeroPoint);
        }
        coords.field()?;
        Ok(ModuliPoint2 { coords })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.coords.field().expect("checked at construction")
    }

    pub fn wp_equal(&self, other: &ModuliPoint2) -> Result<bool> {
        wp_equal2(&self.coords, &other.coords)
    }
}

pub fn wp_equal3(p: &InvariantTuple3, q: &InvariantTuple3) -> Result<bool> {
    wp_equal_weighted(&p.to_array(), &q.to_array(), &WEIGHTS3)
}

pub fn wp_equal2(p: &InvariantTuple2, q: &InvariantTuple2) -> Result<bool> {
    wp_equal_weighted(&p.to_array(), &q.to_array(), &WEIGHTS2)
}

/// Loci of degree-3 maps with a given automorphism group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stratum {
    Trivial,
    C2_1,
    C2_2,
    C3,
    D4_1,
    D4_2,
    D8,
    A4,
}

impl Stratum {
    pub const ALL: [Stratum; 8] =
        [Stratum::Trivial, Stratum::C2_1, Stratum::C2_2, Stratum::C3, Stratum::D4_1, Stratum::D4_2, Stratum::D8, Stratum::A4];

    pub fn name(self) -> &'static str {
        match self {
            Stratum::Trivial => "Trivial",
            Stratum::C2_1 => "C2_1",
            Stratum::C2_2 => "C2_2",
            Stratum::C3 => "C3",
            Stratum::D4_1 => "D4_1",
            Stratum::D4_2 => "D4_2",
            Stratum::D8 => "D8",
            Stratum::A4 => "A4",
        }
    }

    pub fn from_name(s: &str) -> Option<Stratum> {
        Stratum::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Dimension of the locus.
    pub fn dimension(self) -> u32 {
        match self {
            Stratum::Trivial => 3,
            Stratum::C2_1 | Stratum::C2_2 => 2,
            Stratum::C3 | Stratum::D4_1 | Stratum::D4_2 => 1,
            Stratum::D8 | Stratum::A4 => 0,
        }
    }

    /// Strata lying directly below this one.
    pub fn children(self) -> &'static [Stratum] {
        match self {
            Stratum::Trivial => &[Stratum::C2_1, Stratum::C2_2, Stratum::C3],
            Stratum::C2_1 => &[Stratum::D4_2, Stratum::D4_1],
            Stratum::C2_2 => &[Stratum::D4_1],
            Stratum::C3 => &[Stratum::A4],
            Stratum::D4_2 => &[Stratum::A4, Stratum::D8],
            Stratum::D4_1 => &[Stratum::D8],
            Stratum::D8 | Stratum::A4 => &[],
        }
    }

    /// `true` when this locus is contained in `other`'s (reflexive).
    pub fn is_within(self, other: Stratum) -> bool {
        self == other || other.children().iter().any(|&c| self.is_within(c))
    }
}

impl std::fmt::Display for Stratum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether the defining ideal of `stratum`'s closure vanishes at `t`.
pub fn ideal_vanishes(stratum: Stratum, t: &InvariantTuple3) -> bool {
    let ct = c_tilde(t);
    let gens: Vec<&F> = match stratum {
        Stratum::Trivial => vec![],
        Stratum::C2_1 => vec![&t.c, &ct],
        Stratum::C2_2 => vec![&t.a, &t.j],
        Stratum::C3 => vec![&t.d, &t.i, &t.b],
        Stratum::D4_1 => vec![&t.a, &t.j, &t.c, &ct],
        Stratum::D4_2 => vec![&t.d, &t.a, &t.b, &t.c],
        Stratum::D8 => vec![&t.d, &t.j, &t.a, &t.b, &t.c],
        Stratum::A4 => vec![&t.c, &t.b, &t.a, &t.i, &t.d],
    };
    gens.iter().all(|x| x.is_zero())
}

/// The smallest stratum whose ideal vanishes at the point.
pub fn classify_aut(p: &ModuliPoint3) -> Stratum {
    classify_tuple(&p.coords)
}

pub fn classify_tuple(t: &InvariantTuple3) -> Stratum {
    const ORDER: [Stratum; 7] =
        [Stratum::A4, Stratum::D8, Stratum::D4_1, Stratum::D4_2, Stratum::C3, Stratum::C2_1, Stratum::C2_2];
    ORDER.into_iter().find(|&s| ideal_vanishes(s, t)).unwrap_or(Stratum::Trivial)
}

/// Outcome of validating a coordinate tuple as a moduli point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    Ok,
    ViolatesSyzygy,
    DegenerateRho,
}

impl Validation {
    pub fn name(self) -> &'static str {
        match self {
            Validation::Ok => "ok",
            Validation::ViolatesSyzygy => "violates_syzygy",
            Validation::DegenerateRho => "degenerate_rho",
        }
    }
}

pub fn validate3(t: &InvariantTuple3) -> Validation {
    if !check_relation3(t) {
        Validation::ViolatesSyzygy
    } else if rho_from_invariants(t).is_zero() {
        Validation::DegenerateRho
    } else {
        Validation::Ok
    }
}

pub fn validate2(t: &InvariantTuple2) -> Validation {
    if !check_relation2(t) {
        Validation::ViolatesSyzygy
    } else if tau_rho_from_s(t)[2].is_zero() {
        Validation::DegenerateRho
    } else {
        Validation::Ok
    }
}

/// The normal form of the given stratum at parameters `(s, t, u, v)`
/// (unused parameters are ignored). The A4 form lives over `Q(sqrt(-3))`.
pub fn normal_form(stratum: Stratum, p: [&F; 4]) -> FormPair {
    let [s, t, u, v] = p;
    let z = F::zero;
    let (f, g) = match stratum {
        Stratum::Trivial => panic!("no normal form for the trivial stratum"),
        Stratum::C2_1 => (vec![z(), s.clone(), z()], vec![t.clone(), z(), u.clone(), z(), v.clone()]),
        Stratum::C2_2 => (vec![s.clone(), z(), t.clone()], vec![z(), u.clone(), z(), v.clone(), z()]),
        Stratum::C3 => (vec![s.clone(), z(), z()], vec![z(), t.clone(), z(), z(), u.clone()]),
        Stratum::D4_1 => (vec![z(), s.clone(), z()], vec![t.clone(), z(), z(), z(), -t.clone()]),
        Stratum::D4_2 => (vec![z(), z(), z()], vec![s.clone(), z(), t.clone(), z(), s.clone()]),
        Stratum::D8 => (vec![z(), z(), z()], vec![s.clone(), z(), z(), z(), s.clone()]),
        Stratum::A4 => {
            let r = F::sqrt_d(-3).expect("-3 is squarefree");
            (vec![z(), z(), z()], vec![F::one(), z(), F::from_i64(-2) * r, z(), F::one()])
        }
    };
    FormPair::new(BinaryForm::new(f), BinaryForm::new(g)).expect("orders (2, 4)")
}
