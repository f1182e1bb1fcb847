//! Plane conics `x^T M x = 0`: diagonalization, deciding and finding
//! rational points, and parametrization from a point.
//!
//! Existence of a rational point is decided by the local conditions (real
//! and Hilbert symbols at the primes dividing `2abc` of a reduced diagonal
//! form `aX^2 + bY^2 + cZ^2`). When the conic is locally soluble a point is
//! found by a short brute-force pass over small triples and, failing that, by
//! Legendre's lattice construction: the solutions of the congruence
//! `aX^2 + bY^2 + cZ^2 = 0 mod abc` form a lattice of determinant `|abc|`
//! whose short vectors give a zero of the form.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, abs_u, hilbert_symbol, modulo, mod_inverse, sqrt_mod_squarefree, DEFAULT_FACTOR_BUDGET};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement, Q};
use crate::linalg;
use crate::poly::BinaryForm;

type F = FieldElement;

/// Side of the brute-force pre-pass; larger bounds only matter for conics
/// whose factorization fails.
const SMALL_SEARCH: u64 = 6;

/// A plane conic given by a symmetric 3x3 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    m: [[F; 3]; 3],
}

impl Conic {
    pub fn new(m: [[F; 3]; 3]) -> Result<Self> {
        for p in 0..3 {
            for q in 0..3 {
                if m[p][q] != m[q][p] {
                    return Err(Error::PreconditionViolated("conic matrix is not symmetric".into()));
                }
            }
        }
        m.iter().flatten().try_fold(FieldDescriptor::Rationals, |acc, x| acc.join(x.field()))?;
        Ok(Conic { m })
    }

    /// `xx X^2 + yy Y^2 + zz Z^2 + xy XY + xz XZ + yz YZ`.
    pub fn from_form(xx: F, yy: F, zz: F, xy: F, xz: F, yz: F) -> Self {
        let h = F::frac(1, 2);
        let (xy, xz, yz) = (&xy * &h, &xz * &h, &yz * &h);
        Conic { m: [[xx, xy.clone(), xz.clone()], [xy, yy, yz.clone()], [xz, yz, zz]] }
    }

    pub fn diagonal(a: F, b: F, c: F) -> Self {
        Conic::from_form(a, b, c, F::zero(), F::zero(), F::zero())
    }

    pub fn matrix(&self) -> &[[F; 3]; 3] {
        &self.m
    }

    /// Coefficients of `X^2, Y^2, Z^2, XY, XZ, YZ`.
    pub fn form_coefficients(&self) -> [F; 6] {
        let two = F::from_i64(2);
        [
            self.m[0][0].clone(),
            self.m[1][1].clone(),
            self.m[2][2].clone(),
            &self.m[0][1] * &two,
            &self.m[0][2] * &two,
            &self.m[1][2] * &two,
        ]
    }

    pub fn field(&self) -> FieldDescriptor {
        self.m.iter().flatten().try_fold(FieldDescriptor::Rationals, |acc, x| acc.join(x.field())).expect("checked")
    }

    pub fn bilinear(&self, p: &[F; 3], q: &[F; 3]) -> F {
        let mut acc = F::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc += &(&self.m[i][j] * &(&p[i] * &q[j]));
            }
        }
        acc
    }

    pub fn eval(&self, p: &[F; 3]) -> F {
        self.bilinear(p, p)
    }

    pub fn contains(&self, p: &[BigInt; 3]) -> bool {
        self.eval(&to_field(p)).is_zero()
    }

    pub fn det(&self) -> F {
        linalg::det(&self.m.iter().map(|r| r.to_vec()).collect())
    }

    pub fn rational_matrix(&self) -> Option<[[Q; 3]; 3]> {
        let mut out: [[Q; 3]; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.m[i][j].to_rational()?;
            }
        }
        Some(out)
    }
}

impl std::fmt::Display for Conic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = ["x1^2", "x2^2", "x3^2", "x1*x2", "x1*x3", "x2*x3"];
        let order = [0, 3, 1, 4, 5, 2];
        let cs = self.form_coefficients();
        let mut terms = Vec::new();
        for k in order {
            if !cs[k].is_zero() {
                terms.push(format!("({})*{}", cs[k], names[k]));
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

pub fn to_field(p: &[BigInt; 3]) -> [F; 3] {
    std::array::from_fn(|k| F::rational(Q::from_integer(p[k].clone())))
}

/// Congruence diagonalization: returns `(diag, T)` with `T` invertible and
/// `T^T M T = diag(diag)`. An already diagonal matrix gives `T = I`.
pub fn diagonalize(c: &Conic) -> ([F; 3], [[F; 3]; 3]) {
    let mut a = c.m.clone();
    let mut t: [[F; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| if i == j { F::one() } else { F::zero() }));
    // column j += s * column k, applied as a congruence to `a` and to `t`
    fn add_col(a: &mut [[F; 3]; 3], t: &mut [[F; 3]; 3], j: usize, k: usize, s: &F) {
        for r in 0..3 {
            let v = &a[r][k] * s;
            a[r][j] += &v;
        }
        for r in 0..3 {
            let v = &a[k][r] * s;
            a[j][r] += &v;
        }
        for r in 0..3 {
            let v = &t[r][k] * s;
            t[r][j] += &v;
        }
    }
    fn swap(a: &mut [[F; 3]; 3], t: &mut [[F; 3]; 3], j: usize, k: usize) {
        a.swap(j, k);
        for row in a.iter_mut() {
            row.swap(j, k);
        }
        for row in t.iter_mut() {
            row.swap(j, k);
        }
    }
    for k in 0..3 {
        if a[k][k].is_zero() {
            let Some(j) = ((k + 1)..3).find(|&j| !a[k][j].is_zero()) else { continue };
            if let Some(j2) = ((k + 1)..3).find(|&j2| !a[j2][j2].is_zero()) {
                swap(&mut a, &mut t, k, j2);
            } else {
                add_col(&mut a, &mut t, k, j, &F::one());
            }
        }
        if a[k][k].is_zero() {
            continue;
        }
        let pinv = a[k][k].inv();
        for j in (k + 1)..3 {
            if !a[k][j].is_zero() {
                let s = -(&a[k][j] * &pinv);
                add_col(&mut a, &mut t, j, k, &s);
            }
        }
    }
    ([a[0][0].clone(), a[1][1].clone(), a[2][2].clone()], t)
}

/// Why a conic has no rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The form is definite, so there is no real point. `positive` gives
    /// the sign of the diagonalized form.
    RealDefinite { positive: bool },
    /// No point over the `prime`-adic numbers. `form` is the reduced
    /// diagonal form `aX^2 + bY^2 + cZ^2` (squarefree, pairwise coprime
    /// coefficients) equivalent to the conic over the rationals;
    /// `checked_modulus` is set when it was verified exhaustively that the
    /// form has no primitive zero modulo that number.
    PAdic { prime: BigUint, form: [BigInt; 3], checked_modulus: Option<BigUint> },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::RealDefinite { .. } => "real-definite",
            Certificate::PAdic { .. } => "p-adic",
        }
    }
}

/// Outcome of [`has_rational_point`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSearchResult {
    /// A primitive integer point.
    Point([BigInt; 3]),
    Impossible(Certificate),
    /// Neither a point nor a certificate was produced.
    Exhausted { height_bound: u64, diagnostic: String },
}

/// Decide whether a conic over the rationals has a rational point, and
/// find one if so.
pub fn has_rational_point(c: &Conic, height_bound: u64) -> PointSearchResult {
    let exhausted = |diagnostic: String| PointSearchResult::Exhausted { height_bound, diagnostic };
    let Some(mq) = c.rational_matrix() else {
        return exhausted(format!("conic is defined over {}; only conics over Q are decided", c.field()));
    };
    if let Some(p) = search_small(&mq, height_bound.min(SMALL_SEARCH)) {
        return PointSearchResult::Point(p);
    }
    let (diag, t) = diagonalize(c);
    let to_orig = |x: [Q; 3]| -> [BigInt; 3] {
        let v: [Q; 3] = std::array::from_fn(|i| {
            (0..3).fold(Q::zero(), |acc, j| acc + t[i][j].to_rational().expect("rational") * &x[j])
        });
        primitive(&v)
    };
    if let Some(k) = diag.iter().position(F::is_zero) {
        let mut e: [Q; 3] = Default::default();
        e[k] = Q::one();
        return PointSearchResult::Point(to_orig(e));
    }
    let dq: [Q; 3] = std::array::from_fn(|k| diag[k].to_rational().expect("rational"));
    let mut budget = DEFAULT_FACTOR_BUDGET;
    let Some(red) = Reduced::new(&dq, &mut budget) else {
        return exhausted("could not factor the discriminant within the iteration budget".into());
    };
    let pos = red.coeffs.iter().filter(|x| x.is_positive()).count();
    if pos == 0 || pos == 3 {
        return PointSearchResult::Impossible(Certificate::RealDefinite { positive: pos == 3 });
    }
    if let Some(p) = red.failing_prime() {
        let checked_modulus = verify_no_primitive_zero(&red.coeffs, &p);
        return PointSearchResult::Impossible(Certificate::PAdic { prime: p, form: red.coeffs.clone(), checked_modulus });
    }
    match red.solve() {
        Some(x) => {
            let p = to_orig(x);
            if c.contains(&p) {
                PointSearchResult::Point(p)
            } else {
                exhausted("lattice point failed the final check".into())
            }
        }
        None => exhausted("lattice search produced no zero".into()),
    }
}

/// Scale a rational vector to a primitive integer vector with first
/// nonzero entry positive.
pub fn primitive(v: &[Q; 3]) -> [BigInt; 3] {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut w: [BigInt; 3] = std::array::from_fn(|k| (&v[k] * Q::from_integer(den.clone())).to_integer());
    let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in w.iter_mut() {
            *x /= &g;
        }
    }
    if w.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in w.iter_mut() {
            *x = -x.clone();
        }
    }
    w
}

/// First zero among primitive integer triples of height `1..=h`, in order
/// of height and then lexicographically; triples are normalized so the first
/// nonzero coordinate is positive.
pub fn search_small(m: &[[Q; 3]; 3], h: u64) -> Option<[BigInt; 3]> {
    let den = m.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mi: [[BigInt; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| (&m[i][j] * Q::from_integer(den.clone())).to_integer()));
    let h = h as i64;
    for ht in 1..=h {
        for x in 0..=ht {
            for y in -ht..=ht {
                for z in -ht..=ht {
                    if x.abs().max(y.abs()).max(z.abs()) != ht {
                        continue;
                    }
                    if x == 0 && (y < 0 || (y == 0 && z < 0)) {
                        continue;
                    }
                    if x.gcd(&y).gcd(&z) != 1 {
                        continue;
                    }
                    let v = [BigInt::from(x), BigInt::from(y), BigInt::from(z)];
                    let mut acc = BigInt::zero();
                    for i in 0..3 {
                        for j in 0..3 {
                            acc += &mi[i][j] * &v[i] * &v[j];
                        }
                    }
                    if acc.is_zero() {
                        return Some(v);
                    }
                }
            }
        }
    }
    None
}

type Factors = BTreeMap<BigUint, u32>;

/// A diagonal form `a X^2 + b Y^2 + c Z^2` with squarefree, pairwise coprime
/// integer coefficients, equivalent to a given rational diagonal form via
/// `x_k = scale_k X_k`.
struct Reduced {
    coeffs: [BigInt; 3],
    factors: [Factors; 3],
    scale: [Q; 3],
}

fn factor_map(n: &BigUint, budget: &mut u64) -> Option<Factors> {
    Some(arith::factor(n, budget)?.into_iter().collect())
}

impl Reduced {
    fn new(diag: &[Q; 3], budget: &mut u64) -> Option<Reduced> {
        let mut neg = [false; 3];
        let mut factors: [Factors; 3] = Default::default();
        let mut scale: [Q; 3] = Default::default();
        for k in 0..3 {
            // q x^2 = (n d) (x / d)^2
            let (n, d) = (diag[k].numer(), diag[k].denom());
            neg[k] = n.is_negative();
            let mut f = factor_map(&abs_u(n), budget)?;
            for (p, e) in factor_map(&abs_u(d), budget)? {
                *f.entry(p).or_insert(0) += e;
            }
            factors[k] = f;
            scale[k] = Q::from_integer(d.clone());
        }
        loop {
            // squares: A s^2 X^2 = A (s X)^2
            for k in 0..3 {
                for (p, e) in factors[k].iter_mut() {
                    if *e >= 2 {
                        let s = BigInt::from(p.clone()).pow(*e / 2);
                        scale[k] /= Q::from_integer(s);
                        *e %= 2;
                    }
                }
                factors[k].retain(|_, e| *e > 0);
            }
            let shared: Option<BigUint> = (0..3)
                .flat_map(|k| factors[k].keys().cloned().collect::<Vec<_>>())
                .find(|p| (0..3).filter(|&k| factors[k].contains_key(p)).count() >= 2);
            let Some(p) = shared else { break };
            let holders: Vec<usize> = (0..3).filter(|&k| factors[k].contains_key(&p)).collect();
            if holders.len() == 3 {
                for f in factors.iter_mut() {
                    f.remove(&p);
                }
            } else {
                // p A_i' X_i^2 + p A_j' X_j^2 + A_k X_k^2: multiply by p
                for &k in &holders {
                    factors[k].remove(&p);
                    scale[k] /= Q::from_integer(BigInt::from(p.clone()));
                }
                let k = (0..3).find(|k| !holders.contains(k)).expect("one non-holder");
                *factors[k].entry(p).or_insert(0) += 1;
            }
        }
        let coeffs = std::array::from_fn(|k| {
            let m: BigUint = factors[k].iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
            arith::signed(neg[k], m)
        });
        Some(Reduced { coeffs, factors, scale })
    }

    fn primes(&self, k: usize) -> Vec<BigUint> {
        self.factors[k].keys().cloned().collect()
    }

    /// The first prime (in increasing order, 2 last) at which the form has
    /// no local zero.
    fn failing_prime(&self) -> Option<BigUint> {
        let [a, b, c] = &self.coeffs;
        let s1 = -(a * c);
        let s2 = -(b * c);
        let mut primes: Vec<BigUint> = (0..3).flat_map(|k| self.primes(k)).filter(|p| p != &BigUint::from(2u32)).collect();
        primes.sort();
        primes.dedup();
        primes.push(BigUint::from(2u32));
        primes.into_iter().find(|p| hilbert_symbol(&s1, &s2, p) != 1)
    }

    /// A zero of the reduced form, in the original diagonal coordinates.
    fn solve(&self) -> Option<[Q; 3]> {
        // put the coefficient of the odd sign last; the zero set of
        // aX^2 + bY^2 - CZ^2 does not depend on the overall sign
        let negs: Vec<usize> = (0..3).filter(|&k| self.coeffs[k].is_negative()).collect();
        let odd = if negs.len() == 1 { negs[0] } else { (0..3).find(|k| !negs.contains(k)).expect("mixed signs") };
        let perm: [usize; 3] = match odd {
            0 => [1, 2, 0],
            1 => [0, 2, 1],
            _ => [0, 1, 2],
        };
        let co: [BigUint; 3] = std::array::from_fn(|k| abs_u(&self.coeffs[perm[k]]));
        let pr: [Vec<BigUint>; 3] = std::array::from_fn(|k| self.primes(perm[k]));
        let x = legendre_zero(&co, &pr)?;
        let mut out: [Q; 3] = Default::default();
        for k in 0..3 {
            out[perm[k]] = Q::from_integer(x[k].clone()) * &self.scale[perm[k]];
        }
        Some(out)
    }
}

/// A nonzero solution of `a x^2 + b y^2 - C z^2 = 0` for squarefree,
/// pairwise coprime positive `a, b, C` that satisfy the local conditions.
/// `primes[k]` lists the prime factors of the `k`-th coefficient.
fn legendre_zero(co: &[BigUint; 3], primes: &[Vec<BigUint>; 3]) -> Option<[BigInt; 3]> {
    let [a, b, cc] = co;
    let (ai, bi, ci) = (BigInt::from(a.clone()), BigInt::from(b.clone()), BigInt::from(cc.clone()));
    // y = mu_a z (mod a), mu_a^2 = C / b
    let ra = sqrt_mod_squarefree(&(&bi * &ci), &primes[0])?;
    let mu_a = modulo(&(BigInt::from(ra) * BigInt::from(mod_inverse(&bi, a)?)), a);
    // x = mu_b z (mod b), mu_b^2 = C / a
    let rb = sqrt_mod_squarefree(&(&ai * &ci), &primes[1])?;
    let mu_b = modulo(&(BigInt::from(rb) * BigInt::from(mod_inverse(&ai, b)?)), b);
    // x = mu_c y (mod C), mu_c^2 = -b / a
    let rc = sqrt_mod_squarefree(&-(&ai * &bi), &primes[2])?;
    let mu_c = modulo(&(BigInt::from(rc) * BigInt::from(mod_inverse(&ai, cc)?)), cc);

    let x1 = arith::crt(&BigUint::zero(), b, &((&mu_c * a) % cc), cc);
    let y0 = mu_a.clone();
    let x0 = arith::crt(&mu_b, b, &((&mu_c * &y0) % cc), cc);
    let mut basis: [[BigInt; 3]; 3] = [
        [BigInt::from(b * cc), BigInt::zero(), BigInt::zero()],
        [BigInt::from(x1), ai.clone(), BigInt::zero()],
        [BigInt::from(x0), BigInt::from(y0), BigInt::one()],
    ];
    let w = [ai.clone(), bi.clone(), ci.clone()];
    lll(&mut basis, &w);
    let abc = &ai * &bi * &ci;
    let q = |v: &[BigInt; 3]| &ai * &v[0] * &v[0] + &bi * &v[1] * &v[1] - &ci * &v[2] * &v[2];
    let mut found = None;
    enumerate_short(&basis, &w, &(BigInt::from(3) * &abc), &mut |v| {
        let qv = q(v);
        if qv.is_zero() {
            found = Some(v.clone());
            true
        } else if qv == abc {
            // a X^2 + b Y^2 - C Z^2 = 0 at (xz + by, yz - ax, z^2 + ab)
            let (x, y, z) = (&v[0], &v[1], &v[2]);
            found = Some([x * z + &bi * y, y * z - &ai * x, z * z + &ai * &bi]);
            true
        } else {
            false
        }
    });
    found
}

fn gram_schmidt(b: &[[BigInt; 3]; 3], w: &[BigInt; 3]) -> ([[Q; 3]; 3], [Q; 3]) {
    let mut mu: [[Q; 3]; 3] = Default::default();
    let mut bstar: [[Q; 3]; 3] = Default::default();
    let mut norms: [Q; 3] = Default::default();
    let wq: [Q; 3] = std::array::from_fn(|k| Q::from_integer(w[k].clone()));
    let ip = |u: &[Q; 3], v: &[Q; 3]| (0..3).fold(Q::zero(), |acc, k| acc + &wq[k] * &u[k] * &v[k]);
    for i in 0..3 {
        let bi: [Q; 3] = std::array::from_fn(|k| Q::from_integer(b[i][k].clone()));
        let mut v = bi.clone();
        for j in 0..i {
            mu[i][j] = ip(&bi, &bstar[j]) / &norms[j];
            for k in 0..3 {
                v[k] = &v[k] - &mu[i][j] * &bstar[j][k];
            }
        }
        norms[i] = ip(&v, &v);
        bstar[i] = v;
    }
    (mu, norms)
}

/// LLL reduction (delta = 3/4) for the inner product `sum w_k u_k v_k`.
fn lll(b: &mut [[BigInt; 3]; 3], w: &[BigInt; 3]) {
    let delta = Q::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    while k < 3 {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(b, w);
            let q = mu[k][j].round().to_integer();
            if !q.is_zero() {
                for t in 0..3 {
                    let v = &q * &b[j][t];
                    b[k][t] -= v;
                }
            }
        }
        let (mu, norms) = gram_schmidt(b, w);
        if norms[k] >= (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}

/// Visit nonzero lattice vectors `v = sum u_i b_i` with `|v|^2 <= bound`
/// (Fincke-Pohst, floating-point bounds with a safety margin; the callback
/// does the exact checks). Stops when the callback returns `true`.
fn enumerate_short(b: &[[BigInt; 3]; 3], w: &[BigInt; 3], bound: &BigInt, visit: &mut dyn FnMut(&[BigInt; 3]) -> bool) {
    let (mu, norms) = gram_schmidt(b, w);
    let muf: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| mu[i][j].to_f64().unwrap_or(0.0)));
    let nf: [f64; 3] = std::array::from_fn(|i| norms[i].to_f64().unwrap_or(f64::INFINITY));
    let r = bound.to_f64().unwrap_or(f64::INFINITY) * (1.0 + 1e-6) + 1.0;
    if !r.is_finite() || nf.iter().any(|x| !x.is_finite() || *x <= 0.0) {
        return;
    }
    let mut u = [0i64; 3];
    fn rec(
        i: usize,
        rem: f64,
        u: &mut [i64; 3],
        muf: &[[f64; 3]; 3],
        nf: &[f64; 3],
        b: &[[BigInt; 3]; 3],
        visit: &mut dyn FnMut(&[BigInt; 3]) -> bool,
    ) -> bool {
        let center: f64 = -((i + 1)..3).map(|j| muf[j][i] * u[j] as f64).sum::<f64>();
        let radius = (rem / nf[i]).max(0.0).sqrt() + 1e-6;
        let lo = (center - radius).ceil() as i64;
        let hi = (center + radius).floor() as i64;
        for x in lo..=hi {
            u[i] = x;
            let d = x as f64 - center;
            let used = d * d * nf[i];
            if used > rem + 1e-6 * rem.abs() + 1e-9 {
                continue;
            }
            if i == 0 {
                if u.iter().all(|&t| t == 0) {
                    continue;
                }
                let v: [BigInt; 3] =
                    std::array::from_fn(|k| (0..3).fold(BigInt::zero(), |acc, j| acc + BigInt::from(u[j]) * &b[j][k]));
                if visit(&v) {
                    return true;
                }
            } else if rec(i - 1, rem - used, u, muf, nf, b, visit) {
                return true;
            }
        }
        u[i] = 0;
        false
    }
    rec(2, r, &mut u, &muf, &nf, b, visit);
}

/// For an odd prime `p <= 7` (or `p = 2`), check that the reduced form has no
/// zero with a unit coordinate modulo `p^2` (`2^4` for `p = 2`); returns the
/// modulus when the check was run and confirmed.
fn verify_no_primitive_zero(form: &[BigInt; 3], p: &BigUint) -> Option<BigUint> {
    let p = p.to_u64()?;
    let m = match p {
        2 => 16,
        3 | 5 | 7 => p * p,
        _ => return None,
    };
    let co: Vec<u64> = form.iter().map(|x| modulo(x, &BigUint::from(m)).to_u64().unwrap()).collect();
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                if x % p == 0 && y % p == 0 && z % p == 0 {
                    continue;
                }
                if (co[0] * x * x + co[1] * y * y + co[2] * z * z) % m == 0 {
                    return None;
                }
            }
        }
    }
    Some(BigUint::from(m))
}

/// Line-pencil parametrization of a nonsingular conic through the point
/// `p`: with `v = X0 e1 + X1 e2` for `e1, e2` completing `p` to a basis,
/// `theta = Q(v) p - 2 B(p, v) v` satisfies `Q(theta) = 0` identically.
pub fn parametrize(c: &Conic, p: &[F; 3]) -> Result<[BinaryForm; 3]> {
    if c.det().is_zero() {
        return Err(Error::SingularConic);
    }
    if p.iter().all(F::is_zero) || !c.eval(p).is_zero() {
        return Err(Error::PointNotOnConic);
    }
    let e = |k: usize| -> [F; 3] { std::array::from_fn(|i| if i == k { F::one() } else { F::zero() }) };
    let (e1, e2) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(i, j)| (e(i), e(j)))
        .find(|(e1, e2)| {
            let m: linalg::Matrix = vec![p.to_vec(), e1.to_vec(), e2.to_vec()];
            !linalg::det(&m).is_zero()
        })
        .expect("p is nonzero");
    let v: [BinaryForm; 3] = std::array::from_fn(|k| BinaryForm::new(vec![e1[k].clone(), e2[k].clone()]));
    Ok(pencil(c.matrix(), p, &v))
}

/// `Q(v) p - 2 B(p, v) v` for linear forms `v`.
fn pencil(m: &[[F; 3]; 3], p: &[F; 3], v: &[BinaryForm; 3]) -> [BinaryForm; 3] {
    let mut qv = BinaryForm::zero(2);
    let mut bpv = BinaryForm::zero(1);
    for i in 0..3 {
        for j in 0..3 {
            if m[i][j].is_zero() {
                continue;
            }
            qv = qv.add(&v[i].mul(&v[j]).scale(&m[i][j]));
            bpv = bpv.add(&v[j].scale(&(&m[i][j] * &p[i])));
        }
    }
    let two_b = bpv.scale(&F::from_i64(2));
    std::array::from_fn(|k| qv.scale(&p[k]).sub(&two_b.mul(&v[k])))
}

/// Parametrization of the conic
/// `C22 x1^2 - 2 C12 x1 x2 + C11 x2^2 + 2 x3^2 = 0` through `t` (with
/// `t3 != 0`):
///
/// ```text
/// tau1 = -C11 t1 X0^2 - 2 C11 t2 X0 X1 + (C22 t1 - 2 C12 t2) X1^2
/// tau2 = (C11 t2 - 2 C12 t1) X0^2 - 2 C22 t1 X0 X1 - C22 t2 X1^2
/// tau3 = -t3 (C11 X0^2 + 2 C12 X0 X1 + C22 X1^2)
/// ```
///
/// It satisfies `(tau_i, tau_j)_2 = 4 t3^2 C_ij` with `C13 = C23 = 0` and
/// `C33 = (C11 C22 - C12^2) / 2`.
pub fn tau_parametrize(c11: &F, c12: &F, c22: &F, t: &[F; 3]) -> Result<[BinaryForm; 3]> {
    let [t1, t2, t3] = t;
    let two = F::from_i64(2);
    let on = c22 * &(t1 * t1) - &two * c12 * t1 * t2 + c11 * &(t2 * t2) + &two * &(t3 * t3);
    if !on.is_zero() {
        return Err(Error::PreconditionViolated("t is not on the conic".into()));
    }
    if t3.is_zero() {
        return Err(Error::PreconditionViolated("t3 = 0".into()));
    }
    let m = [[c22.clone(), -c12.clone(), F::zero()], [-c12.clone(), c11.clone(), F::zero()], [F::zero(), F::zero(), two]];
    let v = [BinaryForm::new(vec![F::zero(), -F::one()]), BinaryForm::new(vec![F::one(), F::zero()]), BinaryForm::zero(1)];
    Ok(pencil(&m, t, &v).map(|f| f.neg()))
}
