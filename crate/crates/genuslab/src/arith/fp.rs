//! Dense polynomials over 𝔽_p with `u64` coefficients and their factorization
//! (square-free, distinct-degree, then Cantor–Zassenhaus equal-degree
//! splitting with a fixed-seed generator so results are reproducible).

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Polynomial over 𝔽_p, ascending coefficients, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod p");
    powmod(a, p - 2, p)
}

impl FpPoly {
    pub fn new(p: u64, c: Vec<u64>) -> FpPoly {
        let mut c: Vec<u64> = c.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> FpPoly {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> FpPoly {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = *self.c.get(i).unwrap_or(&0);
                let b = *o.c.get(i).unwrap_or(&0);
                (a + b) % self.p
            })
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = *self.c.get(i).unwrap_or(&0);
                let b = *o.c.get(i).unwrap_or(&0);
                (a + self.p - b) % self.p
            })
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p as u128;
            }
        }
        FpPoly::new(p, out.into_iter().map(|x| x as u64).collect())
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&a| mulmod(a, k, self.p)).collect())
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv(self.lead(), self.p))
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero());
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let mut r = self.c.clone();
        let dd = d.deg();
        let li = inv(d.lead(), p);
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = mulmod(r[i], li, p);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &dc) in d.c.iter().enumerate() {
                let k = i - dd + j;
                r[k] = (r[k] + p - mulmod(c, dc, p)) % p;
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let li = inv(r0.lead(), p);
        (r0.scale(li), s0.scale(li), t0.scale(li))
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mulmod(a, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn powmod(&self, e: &BigInt, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let mut b = self.rem(m);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
        }
        acc
    }

    /// `self^p mod m` via repeated squaring.
    fn frobenius(&self, m: &FpPoly) -> FpPoly {
        self.powmod(&BigInt::from(self.p), m)
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        // a^(1/p) = a in 𝔽_p
        FpPoly::new(self.p, c)
    }
}

/// Square-free decomposition of a monic polynomial: pairs `(g, multiplicity)`.
pub fn squarefree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, e) in squarefree(&f.pth_root()) {
            out.push((g, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if !c.is_one() {
        for (g, e) in squarefree(&c.monic().pth_root()) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.rem(&f);
    let mut i = 1;
    while f.deg() >= 2 * i {
        h = h.frobenius(&f);
        let g = f.gcd(&h.sub(&x));
        if !g.is_one() {
            f = f.divrem(&g).0;
            h = h.rem(&f);
            out.push((g, i));
        }
        i += 1;
    }
    if f.deg() > 0 {
        let d = f.deg();
        out.push((f.monic(), d));
    }
    out
}

/// Split a product of distinct monic irreducibles of degree `d`.
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let p = f.p;
    if f.deg() == d {
        return vec![f.monic()];
    }
    loop {
        let a = FpPoly::new(p, (0..f.deg()).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigInt::from(p).pow(d as u32) - BigInt::one()) / 2;
            a.powmod(&e, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.divrem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Full factorization of a nonzero polynomial: leading coefficient and monic
/// irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn factor(f: &FpPoly) -> (u64, Vec<(FpPoly, u32)>) {
    let lead = f.lead();
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ f.p);
    for (g, e) in squarefree(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, e));
            }
        }
    }
    out.sort_by(|a, b| (a.0.deg(), a.0.c.iter().rev().collect::<Vec<_>>()).cmp(&(b.0.deg(), b.0.c.iter().rev().collect::<Vec<_>>())));
    // merge equal factors coming from different square-free layers
    let mut merged: Vec<(FpPoly, u32)> = Vec::new();
    for (g, e) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += e,
            _ => merged.push((g, e)),
        }
    }
    (lead, merged)
}

/// Rabin irreducibility test.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let n = f.deg();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let p = f.p;
    let f = f.monic();
    let x = FpPoly::x(p);
    let mut prime_divs = Vec::new();
    let mut m = n;
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            prime_divs.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        prime_divs.push(m);
    }
    let xpow = |k: usize| {
        let mut h = x.rem(&f);
        for _ in 0..k {
            h = h.frobenius(&f);
        }
        h
    };
    for q in prime_divs {
        let h = xpow(n / q);
        if !f.gcd(&h.sub(&x)).is_one() {
            return false;
        }
    }
    xpow(n).sub(&x).rem(&f).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prod(p: u64, fs: &[(FpPoly, u32)], lead: u64) -> FpPoly {
        let mut acc = FpPoly::new(p, vec![lead]);
        for (g, e) in fs {
            for _ in 0..*e {
                acc = acc.mul(g);
            }
        }
        acc
    }

    #[test]
    fn factor_t2_minus_1_mod5() {
        let f = FpPoly::new(5, vec![4, 0, 1]);
        let (l, fs) = factor(&f);
        assert_eq!(l, 1);
        assert_eq!(fs, vec![(FpPoly::new(5, vec![1, 1]), 1), (FpPoly::new(5, vec![4, 1]), 1)]);
    }

    #[test]
    fn t2_plus_1_irreducible_mod3() {
        let f = FpPoly::new(3, vec![1, 0, 1]);
        assert!(is_irreducible(&f));
        assert_eq!(factor(&f).1, vec![(f, 1)]);
    }

    #[test]
    fn inseparable_parts_mod2_and_mod3() {
        // (t^2 + t + 1)^2 * t^3 over 𝔽_2
        let g = FpPoly::new(2, vec![1, 1, 1]);
        let f = g.mul(&g).mul(&FpPoly::new(2, vec![0, 0, 0, 1]));
        let (l, fs) = factor(&f);
        assert_eq!(prod(2, &fs, l), f);
        assert_eq!(fs.len(), 2);
        // (t^3 - t - 1)^3 * (t + 1)^4 over 𝔽_3
        let h = FpPoly::new(3, vec![2, 2, 0, 1]);
        let f = h.mul(&h).mul(&h).mul(&FpPoly::new(3, vec![1, 1]).mul(&FpPoly::new(3, vec![1, 1])).mul(&FpPoly::new(3, vec![1, 1])).mul(&FpPoly::new(3, vec![1, 1])));
        let (l, fs) = factor(&f);
        assert_eq!(prod(3, &fs, l), f);
        assert!(fs.iter().all(|(g, _)| is_irreducible(g)));
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &p in &[2u64, 3, 5, 7, 101] {
            for _ in 0..30 {
                let n = rng.gen_range(1..12);
                let mut c: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..p)).collect();
                c[n] = rng.gen_range(1..p);
                let f = FpPoly::new(p, c);
                let (l, fs) = factor(&f);
                assert_eq!(prod(p, &fs, l), f);
                for (g, _) in &fs {
                    assert!(is_irreducible(g));
                }
            }
        }
    }
}
