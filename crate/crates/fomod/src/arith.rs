//! Elementary number theory on big integers: primality, factorization,
//! square roots modulo primes, CRT and Hilbert symbols.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default number of Pollard-rho iterations spent on one factorization.
pub const DEFAULT_FACTOR_BUDGET: u64 = 2_000_000;

const SMALL_PRIMES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// Miller-Rabin with the first twenty primes as bases: deterministic below
/// 3.3 * 10^24 and overwhelmingly reliable above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; returns a nontrivial factor of the
/// composite `n` or `None` when the budget runs out.
fn pollard_brent(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let m = 128u64;
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                if *budget < m {
                    return None;
                }
                *budget -= m;
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
    unreachable!()
}

/// Prime factorization `[(p, e)]` sorted by `p`; `None` if the budget of
/// Pollard-rho iterations is exhausted. `factor(0)` and `factor(1)` are empty.
pub fn factor(n: &BigUint, budget: &mut u64) -> Option<Vec<(BigUint, u32)>> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if n.is_zero() {
        return Some(out);
    }
    let mut n = n.clone();
    let mut p = 2u32;
    while p < 1000 {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            match out.iter_mut().find(|(q, _)| *q == m) {
                Some(entry) => entry.1 += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        if let Some(r) = integer_sqrt_exact(&m) {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = pollard_brent(&m, budget)?;
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    Some(out)
}

fn integer_sqrt_exact(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Non-negative residue of `a` modulo `m > 0`.
pub fn modulo(a: &BigInt, m: &BigUint) -> BigUint {
    let m = BigInt::from(m.clone());
    a.mod_floor(&m).to_biguint().expect("non-negative")
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigUint) -> Option<BigUint> {
    if m.is_one() {
        return Some(BigUint::zero());
    }
    let mi = BigInt::from(m.clone());
    let e = a.mod_floor(&mi).extended_gcd(&mi);
    e.gcd.is_one().then(|| modulo(&e.x, m))
}

/// Legendre symbol `(a / p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: &BigUint) -> i32 {
    let r = modulo(a, p);
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// A square root of `a` modulo the prime `p` (Tonelli-Shanks).
pub fn sqrt_mod_prime(a: &BigInt, p: &BigUint) -> Option<BigUint> {
    let a = modulo(a, p);
    if a.is_zero() || p == &BigUint::from(2u32) {
        return Some(a);
    }
    if legendre(&BigInt::from(a.clone()), p) != 1 {
        return None;
    }
    let p1 = p - 1u32;
    let s = p1.trailing_zeros().unwrap_or(0);
    let q = &p1 >> s;
    let mut z = BigUint::from(2u32);
    while legendre(&BigInt::from(z.clone()), p) != -1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}

/// Chinese remaindering: the `x` in `[0, m1 m2)` with `x = r1 mod m1`,
/// `x = r2 mod m2` for coprime moduli.
pub fn crt(r1: &BigUint, m1: &BigUint, r2: &BigUint, m2: &BigUint) -> BigUint {
    let inv = mod_inverse(&BigInt::from(m1.clone()), m2).expect("coprime moduli");
    let r1i = BigInt::from(r1.clone());
    let diff = BigInt::from(r2.clone()) - &r1i;
    let k = modulo(&(diff * BigInt::from(inv)), m2);
    (r1 % m1) + m1 * k
}

/// A square root of `a` modulo the squarefree `m = prod primes`.
pub fn sqrt_mod_squarefree(a: &BigInt, primes: &[BigUint]) -> Option<BigUint> {
    let mut r = BigUint::zero();
    let mut m = BigUint::one();
    for p in primes {
        let s = sqrt_mod_prime(a, p)?;
        r = crt(&r, &m, &s, p);
        m *= p;
    }
    Some(r)
}

/// Hilbert symbol `(a, b)_p` for nonzero integers and a prime `p`.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, p: &BigUint) -> i32 {
    assert!(!a.is_zero() && !b.is_zero());
    let pi = BigInt::from(p.clone());
    let split = |x: &BigInt| {
        let mut u = x.clone();
        let mut e = 0u32;
        while (&u % &pi).is_zero() {
            u /= &pi;
            e += 1;
        }
        (e, u)
    };
    let (alpha, u) = split(a);
    let (beta, v) = split(b);
    if p == &BigUint::from(2u32) {
        let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
        let eps = |x: &BigInt| ((m8(x) + 7) / 2) % 2; // (x-1)/2 mod 2 for odd x
        let omega = |x: &BigInt| {
            let r = m8(x);
            if r == 3 || r == 5 {
                1
            } else {
                0
            }
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let eps_p = ((p - 1u32) >> 1u32).is_odd();
    let mut s = if eps_p && (alpha * beta) % 2 == 1 { -1 } else { 1 };
    if beta % 2 == 1 {
        s *= legendre(&u, p);
    }
    if alpha % 2 == 1 {
        s *= legendre(&v, p);
    }
    s
}

/// Absolute value as a `BigUint`.
pub fn abs_u(x: &BigInt) -> BigUint {
    x.abs().to_biguint().expect("non-negative")
}

/// `BigInt` from sign and magnitude.
pub fn signed(neg: bool, m: BigUint) -> BigInt {
    BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, m)
}
