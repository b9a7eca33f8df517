//! Integer arithmetic: primality, factoring, residue symbols, square roots mod p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::budget;
use crate::error::{Error, Result};

const SMALL_PRIMES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn miller_rabin(n: &BigInt, base: &BigInt) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let mut x = base.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Strong Lucas probable prime test with Selfridge parameters.
fn strong_lucas(n: &BigInt) -> bool {
    // D in 5, -7, 9, -11, ... with Jacobi(D/n) = -1.
    let mut d = BigInt::from(5);
    loop {
        let j = jacobi(&d, n);
        if j == -1 {
            break;
        }
        if j == 0 && d.abs() != *n {
            return false;
        }
        d = if d.is_positive() { -(d + 2i32) } else { -(d - 2i32) };
        if d.abs() > BigInt::from(1_000_000) {
            return false;
        }
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;
    let np1 = n + 1u32;
    let mut dd = np1.clone();
    let mut s = 0u32;
    while dd.is_even() {
        dd >>= 1;
        s += 1;
    }
    let m = |x: BigInt| x.mod_floor(n);
    let inv2 = (n + 1) / 2;
    // Left-to-right binary Lucas chain for U_k, V_k, Q^k.
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    let bits = dd.bits();
    for i in (0..bits).rev() {
        // double
        u = m(&u * &v);
        v = m(&v * &v - 2 * &qk);
        qk = m(&qk * &qk);
        if dd.bit(i) {
            let nu = m((&p * &u + &v) * &inv2);
            let nv = m((&d * &u + &p * &v) * &inv2);
            u = nu;
            v = nv;
            qk = m(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = m(&v * &v - 2 * &qk);
        qk = m(&qk * &qk);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Primality test: deterministic Miller–Rabin below 3.3e24, BPSW above.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < big(2) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let bp = big(p);
        if *n == bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let limit: BigInt = "3317044064679887385961981".parse().unwrap();
    if *n < limit {
        return SMALL_PRIMES.iter().all(|&b| miller_rabin(n, &big(b)));
    }
    miller_rabin(n, &big(2)) && strong_lucas(n)
}

/// Brent's variant of Pollard rho; `None` when the iteration budget runs out.
fn pollard_rho(n: &BigInt, budget: u64) -> Option<BigInt> {
    if n.is_even() {
        return Some(big(2));
    }
    let one = BigInt::one();
    let mut spent = 0u64;
    for c in 1u64..50 {
        let c = big(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = big(2);
        let mut r = 1u64;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 128u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            spent += r;
            if spent > budget {
                return None;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
    None
}

/// Factor a nonzero integer into certified primes.
///
/// Trial division runs up to `bound`; the remaining cofactor is split with
/// Pollard rho under a fixed iteration budget. Returns pairs sorted by prime.
/// The sign and units are dropped, so `-1` factors as the empty list.
pub fn factor_integer(n: &BigInt, bound: u64) -> Result<Vec<(BigInt, u32)>> {
    assert!(!n.is_zero(), "factor_integer: zero has no factorization");
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |out: &mut Vec<(BigInt, u32)>, p: BigInt, e: u32| {
        if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += e;
        } else {
            out.push((p, e));
        }
    };
    let mut p = 2u64;
    while p <= bound {
        let bp = big(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            push(&mut out, bp, e);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        let bb = big(bound);
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if c == BigInt::one() {
                continue;
            }
            if c <= &bb * &bb || is_prime(&c) {
                push(&mut out, c, 1);
                continue;
            }
            let r = c.sqrt();
            if &r * &r == c {
                stack.push(r.clone());
                stack.push(r);
                continue;
            }
            match pollard_rho(&c, budget::rho_iterations()) {
                Some(f) => {
                    let g = &c / &f;
                    stack.push(f);
                    stack.push(g);
                }
                None => {
                    return Err(Error::FactorBoundExceeded {
                        cofactor: c.to_string(),
                    })
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// [`factor_integer`] with the default trial division limit.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    factor_integer(n, budget::trial_division_limit())
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigInt::from(3) && (&n % 4u32) == BigInt::from(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    jacobi(a, p)
}

/// Kronecker symbol (D/p) for a prime p (including p = 2).
pub fn kronecker_prime(disc: &BigInt, p: &BigInt) -> i32 {
    if *p == big(2) {
        if disc.is_even() {
            return 0;
        }
        let r = disc.mod_floor(&big(8)).to_u32().unwrap();
        if r == 1 || r == 7 {
            1
        } else {
            -1
        }
    } else {
        legendre(disc, p)
    }
}

/// A square root of `a` modulo the odd prime `p` (Tonelli–Shanks), if any.
pub fn sqrt_mod(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if *p == big(2) {
        return Some(a);
    }
    if legendre(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let pm1 = p - &one;
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = big(2);
    while legendre(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1) / 2), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = (&tt * &tt) % p;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    let other = p - &r;
    Some(if other < r { other } else { r })
}

/// Modular inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Exponent of the prime `p` in the nonzero integer `n`.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero());
    let mut n = n.clone();
    let mut e = 0;
    while (&n % p).is_zero() {
        n /= p;
        e += 1;
    }
    e
}

/// True if `n` has no repeated prime factor (|n| ≥ 1).
pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let m = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Euler's totient of a positive integer.
pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut r = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

/// Primes in ascending order starting from 2, without end.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| {
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: i64) -> Vec<(i64, u32)> {
        factor(&BigInt::from(n))
            .unwrap()
            .into_iter()
            .map(|(p, e)| (p.to_i64().unwrap(), e))
            .collect()
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(f(12), vec![(2, 2), (3, 1)]);
        assert_eq!(f(-1), vec![]);
        assert_eq!(f(10403), vec![(101, 1), (103, 1)]);
    }

    #[test]
    fn rho_splits_semiprime_beyond_trial_bound() {
        let p: BigInt = "1000000007".parse().unwrap();
        let q: BigInt = "998244353".parse().unwrap();
        let n = &p * &q;
        let fs = factor_integer(&n, 1000).unwrap();
        assert_eq!(fs, vec![(q, 1), (p, 1)]);
    }

    #[test]
    fn bpsw_on_large_values() {
        let m61: BigInt = (BigInt::one() << 61) - 1;
        let m89: BigInt = (BigInt::one() << 89) - 1;
        assert!(is_prime(&m61));
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 * &m61)));
        // Carmichael number
        assert!(!is_prime(&BigInt::from(561)));
        let m127: BigInt = (BigInt::one() << 127) - 1;
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m127 + 2)));
    }

    #[test]
    fn symbols_and_roots() {
        assert_eq!(legendre(&BigInt::from(2), &BigInt::from(7)), 1);
        assert_eq!(legendre(&BigInt::from(3), &BigInt::from(7)), -1);
        assert_eq!(kronecker_prime(&BigInt::from(-4), &BigInt::from(5)), 1);
        assert_eq!(kronecker_prime(&BigInt::from(-4), &BigInt::from(3)), -1);
        assert_eq!(kronecker_prime(&BigInt::from(-23), &BigInt::from(2)), 1);
        assert_eq!(kronecker_prime(&BigInt::from(5), &BigInt::from(2)), -1);
        for p in [5i64, 13, 17, 101, 1009] {
            let bp = BigInt::from(p);
            let r = sqrt_mod(&BigInt::from(-1), &bp).unwrap();
            assert_eq!((&r * &r + 1) % &bp, BigInt::zero());
        }
        assert!(sqrt_mod(&BigInt::from(-1), &BigInt::from(7)).is_none());
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(3), 2);
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn primality_matches_sieve() {
        let sieve: Vec<u64> = primes().take_while(|&p| p < 5000).collect();
        for n in 0u64..5000 {
            assert_eq!(is_prime(&BigInt::from(n)), sieve.binary_search(&n).is_ok(), "n={n}");
        }
    }
}
