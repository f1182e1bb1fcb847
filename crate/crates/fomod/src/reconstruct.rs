//! From a moduli point back to a model: the obstruction conics, the
//! covariant reconstructions (plain and tilde), the special-locus models,
//! the orchestrating [`descend3`], and the degree-2 reconstruction.
//!
//! Every path that produces a model checks that the model's invariants are
//! equal to the input point as weighted projective points before returning.

use crate::conic::{has_rational_point, parametrize, tau_parametrize, to_field, Certificate, Conic, PointSearchResult};
use crate::error::{Error, Result};
use crate::field::{rational_nth_root, FieldDescriptor, FieldElement};
use crate::forms::{split_forms, FormPair};
use crate::inv2::{invariants2, reconstruction_data2, InvariantTuple2};
use crate::inv3::{c_tilde, closed_a, closed_b, closed_c, invariants3, linear_in_forms, quadratic_in_forms, InvariantTuple3, Sym3, Variant, WEIGHTS3};
use crate::linalg;
use crate::moduli::{classify_tuple, validate3, weighted_ratio, wp_equal2, wp_equal3, Stratum, Validation};
use crate::poly::{det2, BinaryForm, Matrix2};

type F = FieldElement;

/// Exponents of `beta` picked up by `(d, i, j, a, b, c)` when `(f, g)` is
/// replaced by `(beta f, beta^2 g)`.
pub const BETA_WEIGHTS: [u32; 6] = [2, 4, 6, 4, 6, 9];

/// Outcome of a descent attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescentResult {
    /// A model over `field`; `route` names the construction used.
    Model { pair: FormPair, field: FieldDescriptor, route: &'static str },
    /// No model over the base field: the conic has no rational point.
    Obstruction { conic: Conic, certificate: Certificate },
    /// A model over `Q(sqrt(discriminant))`, together with the conic whose
    /// rational points decide descent and the decision for it.
    NeedsExtension { pair: FormPair, discriminant: i64, conic: Conic, decision: PointSearchResult },
    /// The conic could be neither solved nor shown insoluble.
    SearchExhausted { conic: Conic, height_bound: u64, diagnostic: String },
}

impl DescentResult {
    pub fn outcome(&self) -> &'static str {
        match self {
            DescentResult::Model { .. } => "model",
            DescentResult::Obstruction { .. } => "obstruction",
            DescentResult::NeedsExtension { .. } => "needs_extension",
            DescentResult::SearchExhausted { .. } => "search_exhausted",
        }
    }

    pub fn model(&self) -> Option<&FormPair> {
        match self {
            DescentResult::Model { pair, .. } => Some(pair),
            _ => None,
        }
    }
}

fn sym_conic(m: Sym3) -> Conic {
    Conic::new(m).expect("symmetric by construction")
}

/// The conic `sum C_ij x_i x_j = 0`.
pub fn conic_cp(t: &InvariantTuple3) -> Result<Conic> {
    if t.c.is_zero() {
        return Err(Error::OnBadLocus("c = 0: the conic is singular".into()));
    }
    Ok(sym_conic(closed_c(t, Variant::Plain)))
}

/// The conic `sum C~_ij x_i x_j = 0` of the tilde system.
pub fn conic_cp_tilde(t: &InvariantTuple3) -> Result<Conic> {
    if c_tilde(t).is_zero() {
        return Err(Error::OnBadLocus("c~ = 0: the conic is singular".into()));
    }
    Ok(sym_conic(closed_c(t, Variant::Tilde)))
}

/// The conic `C~22 x1^2 - 2 C~12 x1 x2 + C~11 x2^2 + 2 x3^2 = 0`, the image of
/// the tilde conic under `x -> C~ x` (up to the factor `C~11 C~22 - C~12^2`).
pub fn dtilde(t: &InvariantTuple3) -> Conic {
    let c = closed_c(t, Variant::Tilde);
    sym_conic([
        [c[1][1].clone(), -c[0][1].clone(), F::zero()],
        [-c[0][1].clone(), c[0][0].clone(), F::zero()],
        [F::zero(), F::zero(), F::from_i64(2)],
    ])
}

fn verified(pair: FormPair, target: &InvariantTuple3) -> Result<FormPair> {
    let got = invariants3(&pair)?;
    if got.is_zero() || !wp_equal3(&got, target)? {
        return Err(Error::Internal(format!("reconstructed model has invariants {got}, expected {target}")));
    }
    Ok(pair)
}

fn matches(pair: &FormPair, target: &InvariantTuple3) -> bool {
    invariants3(pair).ok().is_some_and(|got| !got.is_zero() && wp_equal3(&got, target).unwrap_or(false))
}

/// All `beta` in the coefficient field with `beta^g = x`.
fn roots_in_field(x: &F, g: u32) -> Vec<F> {
    let mut out = Vec::new();
    if g == 1 {
        out.push(x.clone());
    } else if let Some(q) = x.to_rational() {
        if let Some(r) = rational_nth_root(&q, g) {
            let r = F::rational(r);
            if g % 2 == 0 {
                out.push(-r.clone());
            }
            out.push(r);
        }
    } else if g % 2 == 0 {
        if let Some(s) = x.sqrt_in_field() {
            for s in [s.clone(), -s] {
                out.extend(roots_in_field(&s, g / 2));
            }
        }
    }
    out
}

/// The covariant reconstruction at a point of `C_P`:
/// `f1 = (1/c) sum A_i theta_i`, `g1 = (1/c^2) sum B_ij theta_i theta_j`, then
/// `(f, g) = (f1 / beta, g1 / beta^2)` with `beta` read off from the
/// invariants of `(f1, g1)`.
pub fn reconstruct3_generic(t: &InvariantTuple3, point: &[F; 3]) -> Result<FormPair> {
    let conic = conic_cp(t)?;
    let theta = parametrize(&conic, point)?;
    let cinv = t.c.inv();
    let f1 = linear_in_forms(&closed_a(t, Variant::Plain), &theta).scale(&cinv);
    let g1 = quadratic_in_forms(&closed_b(t, Variant::Plain), &theta).scale(&(&cinv * &cinv));
    let pair1 = FormPair::new(f1, g1)?;
    let got = invariants3(&pair1)?;
    let (g, beta_g) = weighted_ratio(&t.to_array(), &got.to_array(), &BETA_WEIGHTS)?
        .ok_or_else(|| Error::Internal("intermediate model is not a rescaling of the target".into()))?;
    let roots = roots_in_field(&beta_g, g);
    if roots.is_empty() {
        return Err(Error::BetaNotInField(format!("beta^{g} = {beta_g} has no {g}-th root in the base field")));
    }
    for beta in roots {
        let bi = beta.inv();
        let pair = FormPair::new(pair1.f.scale(&bi), pair1.g.scale(&(&bi * &bi)))?;
        if matches(&pair, t) {
            return Ok(pair);
        }
    }
    Err(Error::Internal("no root of beta gives a matching model".into()))
}

/// The tilde reconstruction at a point `t` of the conic `D~_P`:
/// `f = tau1 / beta'`, `g = sum K_ij tau_i tau_j / beta'^2` with
/// `K = C~^-1 B~ C~^-1` and `beta' = +-2 t3`.
///
/// The two signs of `beta'` give models whose invariants differ by the sign
/// of `c`; when `c != 0` only one of them matches, and it is the one
/// returned.
pub fn reconstruct3_tilde(t: &InvariantTuple3, point: &[F; 3]) -> Result<FormPair> {
    let ct = c_tilde(t);
    if ct.is_zero() {
        return Err(Error::PreconditionViolated("c~ = 0".into()));
    }
    let cm = closed_c(t, Variant::Tilde);
    let bm = closed_b(t, Variant::Tilde);
    let tau = tau_parametrize(&cm[0][0], &cm[0][1], &cm[1][1], point)?;
    let m = |s: &Sym3| -> linalg::Matrix { s.iter().map(|r| r.to_vec()).collect() };
    let cinv = linalg::inverse(&m(&cm))?;
    let k = linalg::mat_mul(&linalg::mat_mul(&cinv, &m(&bm)), &cinv);
    let k: Sym3 = std::array::from_fn(|p| std::array::from_fn(|q| k[p][q].clone()));
    let g0 = quadratic_in_forms(&k, &tau);
    let two_t3 = F::from_i64(2) * &point[2];
    for beta in [two_t3.clone(), -two_t3] {
        let bi = beta.inv();
        let pair = FormPair::new(tau[0].scale(&bi), g0.scale(&(&bi * &bi)))?;
        if matches(&pair, t) {
            return Ok(pair);
        }
    }
    Err(Error::Internal("neither sign of beta' gives a matching model".into()))
}

/// A point of `conic` whose `k`-th coordinate is nonzero, moving along the
/// parametrization through `p` when needed.
fn point_off_line(conic: &Conic, p: [F; 3], k: usize) -> Option<[F; 3]> {
    if !p[k].is_zero() {
        return Some(p);
    }
    let theta = parametrize(conic, &p).ok()?;
    (0..4i64).flat_map(|a| [(1, a), (a, 1)]).find_map(|(x0, x1)| {
        let (x0, x1) = (F::from_i64(x0), F::from_i64(x1));
        let q: [F; 3] = std::array::from_fn(|i| theta[i].eval(&x0, &x1));
        (!q[k].is_zero()).then_some(q)
    })
}

fn model(pair: FormPair, route: &'static str) -> Result<DescentResult> {
    let field = pair.field()?;
    Ok(DescentResult::Model { pair, field, route })
}

fn search_conic(conic: &Conic, height_bound: u64, k: usize) -> std::result::Result<[F; 3], DescentResult> {
    match has_rational_point(conic, height_bound) {
        PointSearchResult::Point(p) => point_off_line(conic, to_field(&p), k).ok_or_else(|| DescentResult::SearchExhausted {
            conic: conic.clone(),
            height_bound,
            diagnostic: "found point lies on the excluded line and the conic is singular".into(),
        }),
        PointSearchResult::Impossible(certificate) => Err(DescentResult::Obstruction { conic: conic.clone(), certificate }),
        PointSearchResult::Exhausted { height_bound, diagnostic } => {
            Err(DescentResult::SearchExhausted { conic: conic.clone(), height_bound, diagnostic })
        }
    }
}

fn generic_descent(t: &InvariantTuple3, height_bound: u64) -> Result<DescentResult> {
    let conic = conic_cp(t)?;
    match search_conic(&conic, height_bound, 0) {
        Ok(p) => model(verified(reconstruct3_generic(t, &p)?, t)?, "covariants"),
        Err(other) => Ok(other),
    }
}

fn tilde_descent(t: &InvariantTuple3, height_bound: u64, route: &'static str) -> Result<DescentResult> {
    let conic = conic_cp_tilde(t)?;
    match search_conic(&conic, height_bound, 2) {
        Ok(x) => tilde_from_conic_point(t, &x, route),
        Err(other) => Ok(other),
    }
}

fn tilde_from_conic_point(t: &InvariantTuple3, x: &[F; 3], route: &'static str) -> Result<DescentResult> {
    let cm = closed_c(t, Variant::Tilde);
    let d: [F; 3] = std::array::from_fn(|i| (0..3).fold(F::zero(), |acc, j| acc + &cm[i][j] * &x[j]));
    model(verified(reconstruct3_tilde(t, &d)?, t)?, route)
}

/// Coordinates `alpha^w_k p_k` for `alpha^2 = alpha_sq`; requires the
/// odd-weight coordinates to vanish.
fn rescale_even(t: &InvariantTuple3, alpha_sq: &F) -> Result<InvariantTuple3> {
    let v = t.to_array();
    if WEIGHTS3.iter().zip(&v).any(|(w, x)| w % 2 == 1 && !x.is_zero()) {
        return Err(Error::PreconditionViolated("odd-weight coordinates must vanish".into()));
    }
    Ok(InvariantTuple3::from_array(std::array::from_fn(|k| &v[k] * &alpha_sq.pow(WEIGHTS3[k] / 2))))
}

fn fq(n: i64, d: i64) -> F {
    F::frac(n, d)
}

fn pair8(cs: [F; 8]) -> FormPair {
    FormPair::from_coefficients(&cs).expect("eight coefficients")
}

/// The model `X0^4 + 2 sqrt(-3) X0^2 X1^2 + X1^4` of the `A4` point, and the
/// conic `X^2 + 3Y^2 - 2Z^2` attached to it.
pub fn a4_data() -> (FormPair, Conic) {
    let r = F::sqrt_d(-3).expect("squarefree");
    let z = F::zero;
    let pair = pair8([z(), z(), z(), F::one(), z(), F::from_i64(2) * r, z(), F::one()]);
    (pair, Conic::diagonal(F::one(), F::from_i64(3), F::from_i64(-2)))
}

/// The conic `9d^3 X^2 + 8d^2 Y^2 - 24 d a YZ + (72a^2 - 36 d^2 i) Z^2` whose
/// points give models on the locus `c = c~ = 0`, `d != 0`.
pub fn c21_conic(t: &InvariantTuple3) -> Conic {
    let InvariantTuple3 { d, i, a, .. } = t;
    let d2 = d * d;
    Conic::from_form(
        F::from_i64(9) * &(&d2 * d),
        F::from_i64(8) * &d2,
        F::from_i64(72) * &(a * a) - F::from_i64(36) * &(&d2 * i),
        F::zero(),
        F::zero(),
        F::from_i64(-24) * &(d * a),
    )
}

/// The model `[1, 0, c3, c4, c5, c6, -c3 c5, c3^2 c4]` built from a point
/// `(x, y, z)` of [`c21_conic`] with `z != 0`.
pub fn c21_model(t: &InvariantTuple3, p: &[F; 3]) -> FormPair {
    let c5 = &p[0] / &p[2];
    let c6 = &p[1] / &p[2];
    let c3 = &t.d * &fq(1, 2);
    let c4 = F::from_i64(2) * &t.a / (&t.d * &t.d) - &c6 / (F::from_i64(3) * &t.d);
    pair8([F::one(), F::zero(), c3.clone(), c4.clone(), c5.clone(), c6, -(&c3 * &c5), &c3 * &c3 * &c4])
}

/// The closed-form model on the `C3` locus (requires `c != 0`).
pub fn c3_model(t: &InvariantTuple3) -> FormPair {
    let InvariantTuple3 { j, a, c, .. } = t;
    let (a2, a3) = (a * a, a * a * a);
    let (c1, c2) = (c.inv(), (c * c).inv());
    let j2 = j * j;
    pair8([
        -(&j2 * &a2) * &c1 * fq(1, 9),
        -(j * &a2) * &c1 * fq(2, 3),
        -(&a2 * &c1),
        (fq(2, 1) * &j2 * &j2 * &a2 * &a2 + fq(9, 1) * &j2 * &a3) * &c2 * fq(1, 81),
        &j2 * j * &a3 * &c2 * fq(2, 9),
        &j2 * &a3 * &c2 * fq(2, 3),
        j * &a3 * &c2 * fq(2, 3),
        F::zero(),
    ])
}

/// The `C3` point with `j = 0`: the map `(X0 X1^2, X0^3 + X1^3)`.
pub fn c3_j0_model() -> FormPair {
    split_forms(&BinaryForm::from_ints(&[0, 0, 1, 0]), &BinaryForm::from_ints(&[1, 0, 0, 1]))
}

/// The model `[0, 0, 0, -27 i^3, -27 i^3, 0, 24 j^2, 0]` on `D4(2)`.
pub fn d42_model(t: &InvariantTuple3) -> FormPair {
    let i3 = &t.i * &t.i * &t.i;
    let z = F::zero;
    pair8([z(), z(), z(), F::from_i64(-27) * &i3, F::from_i64(-27) * &i3, z(), F::from_i64(24) * &(&t.j * &t.j), z()])
}

pub fn d8_model() -> FormPair {
    pair8(std::array::from_fn(|k| if k == 3 || k == 7 { F::one() } else { F::zero() }))
}

/// The model on `C2(2)` with `c = 0`, in coordinates with `d = -2 lambda^2`:
/// `f = -2 lambda X0 X1`, `g = lambda^-3 (di/3 + b) X0^3 X1 + 2 lambda X0 X1^3`.
pub fn c22_c0_model(t: &InvariantTuple3, lambda: &F) -> FormPair {
    let k = &t.d * &t.i * fq(1, 3) + &t.b;
    let z = F::zero;
    pair8([
        z(),
        F::from_i64(-2) * lambda,
        z(),
        z(),
        k * lambda.pow(3).inv(),
        z(),
        F::from_i64(2) * lambda,
        z(),
    ])
}

/// The constructions for points with non-trivial automorphisms.
pub fn reconstruct3_special(t: &InvariantTuple3, stratum: Stratum, height_bound: u64) -> Result<DescentResult> {
    let unhandled = |why: &str| Err(Error::UnhandledLocus(format!("{}: {why}", stratum.name())));
    match stratum {
        Stratum::Trivial => Err(Error::PreconditionViolated("the trivial stratum has no special construction".into())),
        Stratum::C2_2 => {
            if t.d.is_zero() {
                return unhandled("d = 0");
            }
            if c_tilde(t).is_zero() {
                return unhandled("c~ = 0");
            }
            // alpha^2 = -2d makes the d-coordinate -2 lambda^2 with lambda = d
            let lambda = t.d.clone();
            let s = rescale_even(t, &(F::from_i64(-2) * &t.d))?;
            if s.c.is_zero() {
                return model(verified(c22_c0_model(&s, &lambda), t)?, "c2_2-explicit");
            }
            let x = [F::zero(), lambda, F::one()];
            let conic = conic_cp_tilde(&s)?;
            if !conic.eval(&x).is_zero() {
                return Err(Error::Internal("[0:lambda:1] is not on the tilde conic".into()));
            }
            tilde_from_conic_point(&s, &x, "c2_2-tilde").and_then(|r| match r {
                DescentResult::Model { pair, field, route } => Ok(DescentResult::Model { pair: verified(pair, t)?, field, route }),
                other => Ok(other),
            })
        }
        Stratum::C3 => {
            if t.j.is_zero() {
                model(verified(c3_j0_model(), t)?, "c3-j0")
            } else if t.a.is_zero() {
                reconstruct3_special(t, Stratum::A4, height_bound)
            } else if t.c.is_zero() {
                unhandled("c = 0")
            } else {
                model(verified(c3_model(t), t)?, "c3")
            }
        }
        Stratum::C2_1 | Stratum::D4_1 => {
            if t.d.is_zero() {
                return unhandled("d = 0");
            }
            let conic = c21_conic(t);
            match search_conic(&conic, height_bound, 2) {
                Ok(p) => model(verified(c21_model(t, &p), t)?, "c2_1-conic"),
                Err(other) => Ok(other),
            }
        }
        Stratum::D4_2 => {
            if t.i.is_zero() || t.j.is_zero() {
                return unhandled("i = 0 or j = 0");
            }
            model(verified(d42_model(t), t)?, "d4_2")
        }
        Stratum::D8 => model(verified(d8_model(), t)?, "d8"),
        Stratum::A4 => {
            let (pair, conic) = a4_data();
            let pair = verified(pair, t)?;
            let decision = has_rational_point(&conic, height_bound);
            Ok(DescentResult::NeedsExtension { pair, discriminant: -3, conic, decision })
        }
    }
}

/// Rational coordinates for a point given over `Q(sqrt(D))` whose field of
/// moduli is `Q`: if the conjugate point is `lambda . P` with
/// `N(lambda) = 1`, then `mu . P` is rational for `mu = 1 + lambda` (or
/// `mu = sqrt(D)` when `lambda = -1`). Returns `None` when the coordinates
/// cannot be made rational this way.
pub fn rationalize(t: &InvariantTuple3) -> Result<Option<InvariantTuple3>> {
    let field = t.field()?;
    let Some(disc) = field.discriminant() else { return Ok(Some(t.clone())) };
    let v = t.to_array();
    let conj: Vec<F> = v.iter().map(F::conjugate).collect();
    let Some((g, lam_g)) = weighted_ratio(&v, &conj, &WEIGHTS3)? else { return Ok(None) };
    let mut candidates = roots_in_field(&lam_g, g);
    if candidates.is_empty() && g % 2 == 0 {
        // only even weights in play: lambda^2 determines the action
        candidates = roots_in_field(&lam_g, g / 2).into_iter().filter_map(|x| x.sqrt_in_field()).collect();
    }
    for lambda in candidates {
        let mu = if (&lambda + &F::one()).is_zero() { F::sqrt_d(disc)? } else { &lambda + &F::one() };
        for m in [mu.clone(), mu.inv()] {
            let s = t.rescale(&m);
            if s.to_array().iter().all(F::is_rational) {
                let rational = InvariantTuple3::from_array(s.to_array().map(|x| F::rational(x.to_rational().expect("rational"))));
                return Ok(Some(rational));
            }
        }
    }
    Ok(None)
}

/// Decide whether the moduli point has a model over its coordinate field
/// and construct one when it does.
pub fn descend3(t: &InvariantTuple3, height_bound: u64) -> Result<DescentResult> {
    match validate3(t) {
        Validation::Ok => {}
        v => return Err(Error::PreconditionViolated(format!("point does not validate: {}", v.name()))),
    }
    let work = rationalize(t)?.unwrap_or_else(|| t.clone());
    let stratum = classify_tuple(&work);
    let result = if stratum != Stratum::Trivial {
        reconstruct3_special(&work, stratum, height_bound)?
    } else if !work.c.is_zero() {
        generic_descent(&work, height_bound)?
    } else if !c_tilde(&work).is_zero() {
        tilde_descent(&work, height_bound, "covariants-tilde")?
    } else {
        return Err(Error::UnhandledLocus("c = c~ = 0 outside the automorphism strata".into()));
    };
    if let DescentResult::Model { pair, .. } = &result {
        verified(pair.clone(), t)?;
    }
    Ok(result)
}

/// The degree-2 reconstruction: with `W = (W0, W1)` linear forms of
/// determinant 1,
/// `f = b0 W0 - b1 W1` and
/// `g = -(9 / 2r) sum_{i,j,k} (-1)^(i+j+k) a_ijk W_(i+1) W_(j+1) W_(k+1)`,
/// indices taken mod 2.
pub fn reconstruct2(t: &InvariantTuple2, w: &Matrix2) -> Result<FormPair> {
    if t.r.is_zero() {
        return Err(Error::AutomorphismLocus);
    }
    if !det2(w).is_one() {
        return Err(Error::PreconditionViolated("det W must be 1".into()));
    }
    let data = reconstruction_data2(t);
    let lin: [BinaryForm; 2] = std::array::from_fn(|k| BinaryForm::new(w[k].to_vec()));
    let f = lin[0].scale(&data.b0).sub(&lin[1].scale(&data.b1));
    let mut g = BinaryForm::zero(3);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let a = data.a(i, j, k);
                if a.is_zero() {
                    continue;
                }
                let sign = if (i + j + k) % 2 == 0 { F::one() } else { -F::one() };
                let term = lin[(i + 1) % 2].mul(&lin[(j + 1) % 2]).mul(&lin[(k + 1) % 2]);
                g = g.add(&term.scale(&(sign * a)));
            }
        }
    }
    let g = g.scale(&(F::frac(-9, 2) / &t.r));
    let pair = FormPair::new(f, g)?;
    let got = invariants2(&pair)?;
    if got.is_zero() || !wp_equal2(&got, t)? {
        return Err(Error::Internal(format!("reconstructed model has invariants {got}, expected {t}")));
    }
    Ok(pair)
}
