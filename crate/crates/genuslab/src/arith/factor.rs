//! Polynomial factorization over 𝔽_p and ℚ.
//!
//! Over ℚ the square-free parts are made primitive over ℤ and factored by
//! Zassenhaus: factor modulo a good prime, Hensel-lift past the Mignotte
//! bound, then try every subset of lifted factors as a true divisor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::{self, FpPoly};
use super::poly::{Base, Poly};
use crate::budget;
use crate::error::{Error, Result};

/// Output of [`factor_poly`]: `f = lead * Π factor^exponent`, factors monic
/// irreducible and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFactorization {
    pub lead: BigRational,
    pub factors: Vec<(Poly, u32)>,
}

impl PolyFactorization {
    /// Multiply the factorization back out.
    pub fn product(&self, base: &Base) -> Poly {
        let mut acc = Poly::constant(base.clone(), self.lead.clone());
        for (g, e) in &self.factors {
            acc = &acc * &g.pow(*e);
        }
        acc
    }
}

/// Factor a nonzero polynomial into monic irreducibles.
pub fn factor_poly(f: &Poly) -> Result<PolyFactorization> {
    assert!(!f.is_zero(), "factor_poly: zero polynomial");
    let deg = f.deg();
    if deg > budget::degree_bound() {
        return Err(Error::DegreeBudgetExceeded { degree: deg, bound: budget::degree_bound() });
    }
    match f.base() {
        Base::Fp(p) => {
            let (lead, fs) = fp::factor(&FpPoly::new(*p, f.to_u64_coeffs()));
            let factors = fs
                .into_iter()
                .map(|(g, e)| (Poly::new(Base::Fp(*p), g.c.iter().map(|&x| rat(x as i64)).collect()), e))
                .collect();
            Ok(PolyFactorization { lead: rat(lead as i64), factors })
        }
        Base::Q => factor_q(f),
    }
}

/// True if `f` is irreducible over its base field.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.is_zero() || f.deg() == 0 {
        return Ok(false);
    }
    match f.base() {
        Base::Fp(p) => Ok(fp::is_irreducible(&FpPoly::new(*p, f.to_u64_coeffs()))),
        Base::Q => {
            let fz = factor_q(f)?;
            Ok(fz.factors.len() == 1 && fz.factors[0].1 == 1)
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Yun's square-free decomposition in characteristic zero (monic input).
fn squarefree_q(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let d = f.derivative();
    let mut a = f.gcd(&d);
    let mut b = f.exact_div(&a);
    let mut c = d.exact_div(&a);
    let mut dd = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        a = b.gcd(&dd);
        b = b.exact_div(&a);
        c = dd.exact_div(&a);
        dd = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

fn factor_q(f: &Poly) -> Result<PolyFactorization> {
    let lead = f.lead();
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    if f.deg() > 0 {
        for (g, e) in squarefree_q(&f.monic()) {
            for h in zassenhaus(&primitive_int(&g))? {
                factors.push((int_to_monic(&h), e));
            }
        }
    }
    factors.sort();
    Ok(PolyFactorization { lead, factors })
}

/// Primitive integer polynomial with positive leading coefficient.
fn primitive_int(g: &Poly) -> Vec<BigInt> {
    let mut v = g.to_integer_coeffs();
    let cont = v.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    for x in v.iter_mut() {
        *x /= &cont;
    }
    if v.last().unwrap().is_negative() {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
    v
}

fn int_to_monic(v: &[BigInt]) -> Poly {
    Poly::new(Base::Q, v.iter().map(|x| BigRational::from_integer(x.clone())).collect()).monic()
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

fn zmod(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().map(|x| x.mod_floor(m)).collect();
    trim(&mut out);
    out
}

fn zmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zmod(&out, m)
}

fn zadd(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let out: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    zmod(&out, m)
}

fn zsub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let out: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    zmod(&out, m)
}

/// Division by a monic polynomial modulo m.
fn zdivrem_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut r = zmod(a, m);
    let dd = d.len() - 1;
    if r.len() <= dd {
        return (vec![], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (dd..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        q[i - dd] = c.clone();
        for (j, x) in d.iter().enumerate() {
            r[i - dd + j] = (&r[i - dd + j] - &c * x).mod_floor(m);
        }
    }
    trim(&mut r);
    (zmod(&q, m), r)
}

fn to_fp(v: &[BigInt], p: u64) -> FpPoly {
    let bp = BigInt::from(p);
    FpPoly::new(p, v.iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect())
}

fn from_fp(f: &FpPoly) -> Vec<BigInt> {
    f.c.iter().map(|&x| BigInt::from(x)).collect()
}

/// One quadratic Hensel step: from `f ≡ g h (mod m)`, `s g + t h ≡ 1`,
/// `h` monic, to the same data modulo `m²`.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let m2 = m * m;
    let e = zsub(f, &zmul(g, h, &m2), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e, &m2), h, &m2);
    let g2 = zadd(&zadd(g, &zmul(t, &e, &m2), &m2), &zmul(&q, g, &m2), &m2);
    let h2 = zadd(h, &r, &m2);
    let b = zsub(&zadd(&zmul(s, &g2, &m2), &zmul(t, &h2, &m2), &m2), &[BigInt::one()], &m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b, &m2), &h2, &m2);
    let s2 = zsub(s, &d, &m2);
    let t2 = zsub(&zsub(t, &zmul(t, &b, &m2), &m2), &zmul(&c, &g2, &m2), &m2);
    (g2, h2, s2, t2)
}

/// Lift monic factors of `f mod p` to monic factors modulo `p^(2^k) >= bound`.
fn multi_lift(f: &[BigInt], factors: &[FpPoly], p: u64, bound: &BigInt) -> (Vec<Vec<BigInt>>, BigInt) {
    let bp = BigInt::from(p);
    let mut modulus = bp.clone();
    while &modulus < bound {
        modulus = &modulus * &modulus;
    }
    let mut out = Vec::new();
    let mut f = f.to_vec();
    for idx in 0..factors.len() {
        if idx + 1 == factors.len() {
            // remaining f is lead * fac; make monic modulo the final modulus
            let l = f.last().unwrap().clone();
            let li = crate::arith::int::mod_inverse(&l, &modulus).expect("lead not invertible");
            out.push(zmod(&f.iter().map(|x| x * &li).collect::<Vec<_>>(), &modulus));
            break;
        }
        let rest = factors[idx + 1..]
            .iter()
            .fold(FpPoly::one(p), |acc, x| acc.mul(x));
        let lead = f.last().unwrap().clone();
        let g0 = to_fp(&f, p).divrem(&rest).0; // = lead * fac mod p
        let (_, s0, t0) = g0.ext_gcd(&rest);
        let (mut g, mut h, mut s, mut t) = (from_fp(&g0), from_fp(&rest), from_fp(&s0), from_fp(&t0));
        let mut m = bp.clone();
        while m < modulus {
            let (g2, h2, s2, t2) = hensel_step(&f, &g, &h, &s, &t, &m);
            g = g2;
            h = h2;
            s = s2;
            t = t2;
            m = &m * &m;
        }
        let li = crate::arith::int::mod_inverse(&lead, &modulus).expect("lead not invertible");
        out.push(zmod(&g.iter().map(|x| x * &li).collect::<Vec<_>>(), &modulus));
        f = h;
    }
    (out, modulus)
}

fn symmetric(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    let mut out: Vec<BigInt> = v
        .iter()
        .map(|x| {
            let y = x.mod_floor(m);
            if y > half {
                y - m
            } else {
                y
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Exact division over ℤ; `None` if `d` does not divide `a`.
fn zdiv_exact(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    if r.len() <= dd {
        return None;
    }
    let ld = d.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for i in (dd..r.len()).rev() {
        let (c, rem) = r[i].div_rem(ld);
        if !rem.is_zero() {
            return None;
        }
        q[i - dd] = c.clone();
        for (j, x) in d.iter().enumerate() {
            r[i - dd + j] -= &c * x;
        }
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn content_free(v: Vec<BigInt>) -> Vec<BigInt> {
    let cont = v.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    let mut v: Vec<BigInt> = v.into_iter().map(|x| x / &cont).collect();
    if v.last().unwrap().is_negative() {
        v = v.into_iter().map(|x| -x).collect();
    }
    v
}

/// Factor a primitive square-free integer polynomial with positive lead.
fn zassenhaus(f: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    // pick the prime giving the fewest modular factors among a few good ones
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in crate::arith::int::primes().skip(1) {
        if (f.last().unwrap() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        if !fp.gcd(&fp.derivative()).is_one() {
            continue;
        }
        let (_, fs) = fp::factor(&fp);
        let fs: Vec<FpPoly> = fs.into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 5 || p > 500 {
            break;
        }
    }
    let (p, local) = best.expect("no good prime");
    if local.len() == 1 {
        return Ok(vec![f.to_vec()]);
    }
    // Mignotte-style bound on coefficients of any factor, times the lead.
    let norm2: BigInt = f.iter().map(|x| x * x).sum::<BigInt>();
    let norm = num_integer::Roots::sqrt(&norm2) + 1;
    let lead = f.last().unwrap().clone();
    let bound = (BigInt::one() << (n + 1)) * norm * lead.abs() * 2;
    let (lifted, modulus) = multi_lift(f, &local, p, &bound);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut g = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        let combos = combinations(remaining.len(), size);
        for combo in combos {
            let lg = g.last().unwrap().clone();
            let mut cand = vec![lg.clone()];
            for &i in &combo {
                cand = zmul(&cand, &lifted[remaining[i]], &modulus);
            }
            let cand = symmetric(&cand, &modulus);
            if cand.len() < 2 {
                continue;
            }
            let cand = content_free(cand);
            if let Some(q) = zdiv_exact(&g, &cand) {
                out.push(cand);
                g = content_free(q);
                let chosen: Vec<usize> = combo.iter().map(|&i| remaining[i]).collect();
                remaining.retain(|i| !chosen.contains(i));
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if g.len() > 1 {
        out.push(g);
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Poly {
        Poly::from_ints(Base::Q, c)
    }

    #[test]
    fn examples() {
        let f5 = Poly::from_ints(Base::Fp(5), &[-1, 0, 1]);
        let fz = factor_poly(&f5).unwrap();
        assert_eq!(
            fz.factors,
            vec![(Poly::from_ints(Base::Fp(5), &[1, 1]), 1), (Poly::from_ints(Base::Fp(5), &[-1, 1]), 1)]
        );
        let f3 = Poly::from_ints(Base::Fp(3), &[1, 0, 1]);
        assert_eq!(factor_poly(&f3).unwrap().factors, vec![(f3.clone(), 1)]);
        let fq = q(&[-2, 0, 2]);
        let fz = factor_poly(&fq).unwrap();
        assert_eq!(fz.lead, rat(2));
        assert_eq!(fz.factors, vec![(q(&[-1, 1]), 1), (q(&[1, 1]), 1)]);
    }

    #[test]
    fn swinnerton_dyer_like_irreducible() {
        // t^4 - 10 t^2 + 1 splits modulo every prime but is irreducible over ℚ
        let f = q(&[1, 0, -10, 0, 1]);
        let fz = factor_poly(&f).unwrap();
        assert_eq!(fz.factors, vec![(f, 1)]);
    }

    #[test]
    fn mixed_multiplicities() {
        let a = q(&[1, 0, 1]);
        let b = q(&[-2, 0, 0, 1]);
        let c = q(&[3, 1]);
        let f = (&(&a * &a) * &b).scale(&rat(-7));
        let f = &f * &c.pow(3);
        let fz = factor_poly(&f).unwrap();
        assert_eq!(fz.product(&Base::Q), f);
        assert_eq!(fz.factors.len(), 3);
    }

    #[test]
    fn rational_coefficients() {
        let f = Poly::new(
            Base::Q,
            vec![
                BigRational::new(BigInt::from(-1), BigInt::from(4)),
                BigRational::zero(),
                BigRational::one(),
            ],
        );
        let fz = factor_poly(&f).unwrap();
        assert_eq!(fz.factors.len(), 2);
        assert_eq!(fz.product(&Base::Q), f);
    }

    #[test]
    fn degree_budget() {
        let mut c = vec![0i64; 70];
        c.push(1);
        c[0] = 1;
        assert!(matches!(factor_poly(&q(&c)), Err(Error::DegreeBudgetExceeded { .. })));
    }
}
