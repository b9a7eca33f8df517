//! Univariate polynomials over 𝔽_p or ℚ in the variable `t`.
//!
//! Coefficients are stored in ascending degree order and trimmed so that the
//! last stored coefficient is nonzero; the zero polynomial has no
//! coefficients. Over 𝔽_p coefficients are kept as integers in `0..p`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient field of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Q,
    Fp(u64),
}

impl Base {
    pub fn characteristic(&self) -> u64 {
        match self {
            Base::Q => 0,
            Base::Fp(p) => *p,
        }
    }

    /// Canonical representative of a coefficient.
    pub fn norm(&self, c: &BigRational) -> BigRational {
        match self {
            Base::Q => c.clone(),
            Base::Fp(p) => {
                if c.is_integer() {
                    return BigRational::from_integer(fp_int(c.numer(), *p));
                }
                let p = BigInt::from(*p);
                let n = c.numer().mod_floor(&p);
                let d = c.denom().mod_floor(&p);
                let dinv = crate::arith::int::mod_inverse(&d, &p)
                    .expect("denominator divisible by the characteristic");
                BigRational::from_integer((n * dinv).mod_floor(&p))
            }
        }
    }

    /// True if `c` can be read in this field (denominator prime to p).
    pub fn admits(&self, c: &BigRational) -> bool {
        match self {
            Base::Q => true,
            Base::Fp(p) => !(c.denom() % BigInt::from(*p)).is_zero(),
        }
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if let Base::Fp(p) = self {
            if a.is_integer() && b.is_integer() {
                return BigRational::from_integer(fp_int(&(a.numer() + b.numer()), *p));
            }
        }
        self.norm(&(a + b))
    }

    pub fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if let Base::Fp(p) = self {
            if a.is_integer() && b.is_integer() {
                return BigRational::from_integer(fp_int(&(a.numer() - b.numer()), *p));
            }
        }
        self.norm(&(a - b))
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if let Base::Fp(p) = self {
            if a.is_integer() && b.is_integer() {
                return BigRational::from_integer(fp_int(&(a.numer() * b.numer()), *p));
            }
        }
        self.norm(&(a * b))
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        self.norm(&(-a))
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Base::Q => a.recip(),
            Base::Fp(_) => self.norm(&a.recip()),
        }
    }

    pub fn from_int(&self, n: i64) -> BigRational {
        self.norm(&BigRational::from_integer(BigInt::from(n)))
    }
}

/// Reduction of an integer into [0, p).
fn fp_int(n: &BigInt, p: u64) -> BigInt {
    match n.to_u64() {
        Some(x) if x < p => n.clone(),
        _ => n.mod_floor(&BigInt::from(p)),
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Q => write!(f, "Q"),
            Base::Fp(p) => write!(f, "Fp({p})"),
        }
    }
}

/// A polynomial in `t` over a [`Base`] field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    base: Base,
    coeffs: Vec<BigRational>,
}

impl Poly {
    /// Build from ascending coefficients, normalizing and trimming.
    pub fn new(base: Base, coeffs: Vec<BigRational>) -> Poly {
        let mut coeffs: Vec<BigRational> = coeffs.iter().map(|c| base.norm(c)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { base, coeffs }
    }

    pub fn from_ints(base: Base, coeffs: &[i64]) -> Poly {
        Poly::new(
            base,
            coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        )
    }

    pub fn zero(base: Base) -> Poly {
        Poly { base, coeffs: vec![] }
    }

    pub fn one(base: Base) -> Poly {
        Poly::constant(base, BigRational::one())
    }

    pub fn constant(base: Base, c: BigRational) -> Poly {
        Poly::new(base, vec![c])
    }

    /// The variable `t`.
    pub fn t(base: Base) -> Poly {
        Poly::from_ints(base, &[0, 1])
    }

    /// `t - a`.
    pub fn linear(base: Base, a: BigRational) -> Poly {
        Poly::new(base, vec![-a, BigRational::one()])
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention deg 0 = 0 (callers must not pass zero).
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(
            self.base.clone(),
            self.coeffs.iter().map(|a| self.base.mul(a, c)).collect(),
        )
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.base.inv(&self.lead()))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.base.mul(c, &BigRational::from_integer(BigInt::from(i))))
            .collect();
        Poly::new(self.base.clone(), coeffs)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.base.clone());
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: `self = q * other + r` with `deg r < deg other`.
    pub fn div_rem(&self, other: &Poly) -> (Poly, Poly) {
        assert!(!other.is_zero(), "polynomial division by zero");
        let base = &self.base;
        if let Base::Fp(p) = *base {
            return self.div_rem_fp(other, p);
        }
        let mut r = self.coeffs.clone();
        let dd = other.deg();
        let inv = base.inv(&other.lead());
        if r.len() <= dd {
            return (Poly::zero(base.clone()), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = base.mul(&r[i], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, oc) in other.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = base.sub(&r[k], &base.mul(&c, oc));
            }
            q[i - dd] = c;
        }
        (Poly::new(base.clone(), q), Poly::new(base.clone(), r))
    }

    fn div_rem_fp(&self, other: &Poly, p: u64) -> (Poly, Poly) {
        let mut r = self.to_u64_coeffs();
        let b = other.to_u64_coeffs();
        let dd = b.len() - 1;
        if r.len() <= dd {
            return (Poly::zero(self.base.clone()), self.clone());
        }
        let p128 = p as u128;
        let inv = crate::arith::int::mod_inverse(&BigInt::from(b[dd]), &BigInt::from(p))
            .and_then(|x| x.to_u64())
            .expect("leading coefficient is invertible");
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = (r[i] as u128 * inv as u128 % p128) as u64;
            if c == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let k = i - dd + j;
                r[k] = ((r[k] as u128 + p128 - c as u128 * y as u128 % p128) % p128) as u64;
            }
            q[i - dd] = c;
        }
        (Poly::from_fp(self.base.clone(), q), Poly::from_fp(self.base.clone(), r))
    }

    /// From residues already reduced into [0, p).
    fn from_fp(base: Base, mut c: Vec<u64>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { base, coeffs: c.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect() }
    }

    pub fn rem(&self, other: &Poly) -> Poly {
        self.div_rem(other).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, other: &Poly) -> Poly {
        let (q, r) = self.div_rem(other);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, u)` with `s*self + u*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let base = self.base.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(base.clone()), Poly::zero(base.clone()));
        let (mut t0, mut t1) = (Poly::zero(base.clone()), Poly::one(base.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = base.inv(&r0.lead());
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, if coprime.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        if g.is_one() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// `self^e mod m` for a possibly large exponent.
    pub fn pow_mod(&self, e: &BigInt, m: &Poly) -> Poly {
        let mut acc = Poly::one(self.base.clone()).rem(m);
        let mut b = self.rem(m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = (&acc * &b).rem(m);
            }
            b = (&b * &b).rem(m);
        }
        acc
    }

    /// Exponent of the irreducible `f` in `self` (nonzero).
    pub fn valuation_at(&self, f: &Poly) -> u32 {
        assert!(!self.is_zero());
        let mut g = self.clone();
        let mut e = 0;
        loop {
            let (q, r) = g.div_rem(f);
            if !r.is_zero() {
                return e;
            }
            g = q;
            e += 1;
        }
    }

    /// Over ℚ: least common denominator of the coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Over ℚ: integer coefficient vector of `self * lcm(denominators)`.
    pub fn to_integer_coeffs(&self) -> Vec<BigInt> {
        let l = self.denominator_lcm();
        self.coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect()
    }

    /// Map 𝔽_p coefficients to `u64`.
    pub fn to_u64_coeffs(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.to_integer().to_u64().unwrap()).collect()
    }

    /// Reinterpret an integral ℚ-polynomial modulo p.
    pub fn reduce_mod(&self, p: u64) -> Poly {
        Poly::new(Base::Fp(p), self.coeffs.clone())
    }

    /// Coefficient height: largest absolute numerator or denominator.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.numer().abs().max(c.denom().clone()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    fn assert_same_base(&self, other: &Poly) {
        assert_eq!(self.base, other.base, "polynomials over different fields");
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by base, then degree, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| {
                for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                    let key = |c: &BigRational| (c.numer().abs(), !c.is_negative(), c.denom().clone());
                    match key(a).cmp(&key(b)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.assert_same_base(o);
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.base.add(&self.coeff(i), &o.coeff(i)))
            .collect();
        Poly::new(self.base.clone(), coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.assert_same_base(o);
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.base.sub(&self.coeff(i), &o.coeff(i)))
            .collect();
        Poly::new(self.base.clone(), coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.assert_same_base(o);
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.base.clone());
        }
        if let Base::Fp(p) = self.base {
            let (a, b) = (self.to_u64_coeffs(), o.to_u64_coeffs());
            let p = p as u128;
            let mut out = vec![0u128; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    out[i + j] = (out[i + j] + x as u128 * y as u128) % p;
                }
            }
            return Poly::from_fp(self.base.clone(), out.into_iter().map(|c| c as u64).collect());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(self.base.clone(), out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(
            self.base.clone(),
            self.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        )
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Prints as `t^3 - 2*t + 1`; the output parses back to the same polynomial.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if i == 0 {
                write!(f, "{}", fmt_coeff(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_coeff(&a))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Poly {
        Poly::from_ints(Base::Q, c)
    }

    #[test]
    fn arithmetic_and_division() {
        let a = q(&[-1, 0, 1]);
        let b = q(&[1, 1]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq, q(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&q(&[-1, 1])), q(&[-1, 1]));
    }

    #[test]
    fn fp_normalization() {
        let f = Poly::from_ints(Base::Fp(5), &[7, -1, 10]);
        assert_eq!(f.to_u64_coeffs(), vec![2, 4]);
        assert_eq!(f.degree(), Some(1));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = q(&[1, 0, 1]);
        let b = q(&[2, 1]);
        let (g, s, u) = a.ext_gcd(&b);
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&u * &b), g);
    }

    #[test]
    fn display() {
        assert_eq!(q(&[1, -2, 0, 1]).to_string(), "t^3 - 2*t + 1");
        assert_eq!(q(&[0, -1]).to_string(), "-t");
        assert_eq!(q(&[]).to_string(), "0");
    }
}
