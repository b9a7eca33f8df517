//! Fractional ideals of the maximal order of ℚ(√d).
//!
//! An ideal is stored as `(1/den)·J` with `J` integral and given by its
//! Hermite basis `{a, b + c·ω}` (c | a, c | b, 0 ≤ b < a).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::int::{kronecker_prime, sqrt_mod};
use super::linalg::hnf;
use super::quad::{discriminant, omega_relation, QuadElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    pub d: i64,
    pub den: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

impl Ideal {
    /// Ideal generated by integral elements (over ℤ by {g, gω}).
    fn from_integral_gens(d: i64, gens: &[(BigInt, BigInt)]) -> Ideal {
        let (bb, cc) = omega_relation(d);
        let mut rows = Vec::new();
        for (x, y) in gens {
            // g = x + yω ; gω = c·y + (x + b·y)ω. Columns ordered (y, x).
            rows.push(vec![y.clone(), x.clone()]);
            rows.push(vec![x + big(bb) * y, big(cc) * y]);
        }
        let h = hnf(&rows, &BigInt::zero());
        assert!(h.rank == 2, "zero ideal");
        let c = h.h[0][0].clone();
        let b = h.h[0][1].clone();
        let a = h.h[1][1].clone();
        Ideal { d, den: BigInt::one(), a, b, c }
    }

    /// Fractional ideal generated by the given elements (not all zero).
    pub fn from_generators(d: i64, gens: &[QuadElem]) -> Ideal {
        let den = gens.iter().fold(BigInt::one(), |acc, g| acc.lcm(&g.denominator()));
        let dr = BigRational::from_integer(den.clone());
        let ints: Vec<(BigInt, BigInt)> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.scale(&dr).int_coords())
            .collect();
        let mut i = Ideal::from_integral_gens(d, &ints);
        i.den = den;
        i.normalized()
    }

    pub fn principal(x: &QuadElem) -> Ideal {
        Ideal::from_generators(x.d, std::slice::from_ref(x))
    }

    pub fn unit(d: i64) -> Ideal {
        Ideal { d, den: BigInt::one(), a: BigInt::one(), b: BigInt::zero(), c: BigInt::one() }
    }

    /// The ideal generated by a rational number.
    pub fn rational(d: i64, q: &BigRational) -> Ideal {
        Ideal::principal(&QuadElem::from_rat(d, q.clone()))
    }

    fn normalized(mut self) -> Ideal {
        let g = self.den.gcd(&self.a).gcd(&self.b).gcd(&self.c);
        if !g.is_one() {
            self.den /= &g;
            self.a /= &g;
            self.b /= &g;
            self.c /= &g;
        }
        self
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.a.is_one() && self.c.is_one()
    }

    /// ℤ-basis `{a/den, (b + cω)/den}`.
    pub fn basis(&self) -> [QuadElem; 2] {
        let r = |n: &BigInt| BigRational::new(n.clone(), self.den.clone());
        [
            QuadElem::new(self.d, r(&self.a), BigRational::zero()),
            QuadElem::new(self.d, r(&self.b), r(&self.c)),
        ]
    }

    /// Two generators as an O-ideal.
    pub fn generators(&self) -> Vec<QuadElem> {
        let [x, y] = self.basis();
        if self.c == self.a && self.b.is_zero() {
            vec![x]
        } else {
            vec![x, y]
        }
    }

    pub fn norm(&self) -> BigRational {
        BigRational::new(&self.a * &self.c, &self.den * &self.den)
    }

    pub fn mul(&self, o: &Ideal) -> Ideal {
        assert_eq!(self.d, o.d);
        let [x1, y1] = self.basis().map(|e| e.scale(&BigRational::from_integer(self.den.clone())));
        let [x2, y2] = o.basis().map(|e| e.scale(&BigRational::from_integer(o.den.clone())));
        let gens: Vec<(BigInt, BigInt)> = [&x1 * &x2, &x1 * &y2, &y1 * &x2, &y1 * &y2]
            .iter()
            .map(|g| g.int_coords())
            .collect();
        let mut i = Ideal::from_integral_gens(self.d, &gens);
        i.den = &self.den * &o.den;
        i.normalized()
    }

    pub fn pow(&self, e: i64) -> Ideal {
        let b = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Ideal::unit(self.d);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&b);
        }
        acc
    }

    pub fn scale(&self, x: &QuadElem) -> Ideal {
        self.mul(&Ideal::principal(x))
    }

    pub fn conj(&self) -> Ideal {
        let gens: Vec<QuadElem> = self.basis().iter().map(|g| g.conj()).collect();
        Ideal::from_generators(self.d, &gens)
    }

    /// Inverse: conj(I)/N(I).
    pub fn inv(&self) -> Ideal {
        let n = self.norm();
        let gens: Vec<QuadElem> = self.basis().iter().map(|g| g.conj().scale(&n.recip())).collect();
        Ideal::from_generators(self.d, &gens)
    }

    pub fn add(&self, o: &Ideal) -> Ideal {
        let mut gens = self.basis().to_vec();
        gens.extend(o.basis());
        Ideal::from_generators(self.d, &gens)
    }

    /// Intersection via (A ∩ B)⁻¹ = A⁻¹ + B⁻¹.
    pub fn intersect(&self, o: &Ideal) -> Ideal {
        self.inv().add(&o.inv()).inv()
    }

    pub fn contains(&self, x: &QuadElem) -> bool {
        let s = x.scale(&BigRational::from_integer(self.den.clone()));
        if !s.is_integral() {
            return false;
        }
        let (xx, yy) = s.int_coords();
        if !yy.is_multiple_of(&self.c) {
            return false;
        }
        let k = &yy / &self.c;
        (xx - k * &self.b).is_multiple_of(&self.a)
    }

    /// `self ⊆ o`.
    pub fn is_subset(&self, o: &Ideal) -> bool {
        self.basis().iter().all(|g| o.contains(g))
    }

    /// Smallest positive integer in an integral ideal.
    pub fn min_integer(&self) -> BigInt {
        assert!(self.is_integral());
        self.a.clone()
    }

    /// Two-element presentation string, e.g. `(2, 1 + w)`.
    pub fn to_gen_string(&self) -> String {
        let g: Vec<String> = self.generators().iter().map(|x| x.to_string()).collect();
        format!("({})", g.join(", "))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_gen_string())
    }
}

/// A nonzero prime of the maximal order with its ramification index and
/// residue degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    pub p: BigInt,
    pub ideal: Ideal,
    pub e: u32,
    pub f: u32,
}

impl PrimeIdeal {
    pub fn d(&self) -> i64 {
        self.ideal.d
    }

    /// Residue field size p^f.
    pub fn norm(&self) -> BigInt {
        num_traits::pow(self.p.clone(), self.f as usize)
    }

    /// Valuation of a nonzero element.
    pub fn valuation(&self, x: &QuadElem) -> i64 {
        assert!(!x.is_zero(), "valuation of zero");
        self.ideal_valuation(&Ideal::principal(x))
    }

    /// Valuation of a fractional ideal.
    pub fn ideal_valuation(&self, i: &Ideal) -> i64 {
        let mut j = i.clone();
        let vden = super::int::valuation(&j.den, &self.p) as i64;
        j.den = BigInt::one();
        let pinv = self.ideal.inv();
        let mut k = 0;
        while j.is_subset(&self.ideal) {
            j = j.mul(&pinv);
            k += 1;
        }
        k - vden * self.e as i64
    }

    /// An element of 𝔭 not in 𝔭² (a uniformizer).
    pub fn uniformizer(&self) -> QuadElem {
        let d = self.d();
        let p = QuadElem::from_rat(d, BigRational::from_integer(self.p.clone()));
        if self.e == 1 && self.f == 2 {
            return p;
        }
        let [_, g] = self.ideal.basis();
        if self.valuation(&g) == 1 {
            g
        } else {
            &g + &p
        }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ideal)
    }
}

/// Roots of ω's minimal polynomial x² − b·x − c modulo p, ascending.
fn omega_roots_mod(d: i64, p: &BigInt) -> Vec<BigInt> {
    let (b, c) = omega_relation(d);
    if p.to_u64().is_some_and(|q| q < 64) {
        let q = p.to_i64().unwrap();
        return (0..q)
            .filter(|&r| (r * r - b * r - c).rem_euclid(q) == 0)
            .map(big)
            .collect();
    }
    let disc = big(b * b + 4 * c).mod_floor(p);
    let Some(s) = sqrt_mod(&disc, p) else { return vec![] };
    let inv2 = (p + 1u32) / 2u32;
    let mut r: Vec<BigInt> = [&s, &(p - &s)]
        .iter()
        .map(|s| ((big(b) + *s) * &inv2).mod_floor(p))
        .collect();
    r.sort();
    r.dedup();
    r
}

/// Primes above the rational prime p, with (e, f). Split primes are ordered
/// by the HNF entry b of (p, b + ω).
pub fn primes_above(d: i64, p: &BigInt) -> Vec<PrimeIdeal> {
    let disc = discriminant(d);
    let k = kronecker_prime(&big(disc), p);
    let mk = |b: BigInt, e: u32, f: u32| {
        let ideal = if f == 2 {
            Ideal { d, den: BigInt::one(), a: p.clone(), b: BigInt::zero(), c: p.clone() }
        } else {
            Ideal { d, den: BigInt::one(), a: p.clone(), b, c: BigInt::one() }
        };
        PrimeIdeal { ideal, p: p.clone(), e, f }
    };
    match k {
        -1 => vec![mk(BigInt::zero(), 1, 2)],
        0 => {
            let r = omega_roots_mod(d, p);
            vec![mk((-&r[0]).mod_floor(p), 2, 1)]
        }
        _ => {
            let mut bs: Vec<BigInt> = omega_roots_mod(d, p).iter().map(|r| (-r).mod_floor(p)).collect();
            bs.sort();
            bs.into_iter().map(|b| mk(b, 1, 1)).collect()
        }
    }
}

/// Prime factorization of a fractional ideal.
pub fn factor_ideal(i: &Ideal) -> crate::Result<Vec<(PrimeIdeal, i64)>> {
    let n = i.norm();
    let mut ps: Vec<BigInt> = Vec::new();
    for m in [n.numer(), n.denom()] {
        if !m.is_one() {
            for (p, _) in super::int::factor(m)? {
                ps.push(p);
            }
        }
    }
    if !i.den.is_one() {
        for (p, _) in super::int::factor(&i.den)? {
            ps.push(p);
        }
    }
    ps.sort();
    ps.dedup();
    let mut out = Vec::new();
    for p in ps {
        for q in primes_above(i.d, &p) {
            let v = q.ideal_valuation(i);
            if v != 0 {
                out.push((q, v));
            }
        }
    }
    Ok(out)
}

/// The prime above p matching a given HNF ideal, if it is prime.
pub fn as_prime(i: &Ideal) -> Option<PrimeIdeal> {
    if !i.is_integral() || i.is_one() {
        return None;
    }
    let p = i.a.clone();
    primes_above(i.d, &p).into_iter().find(|q| q.ideal == *i)
}

/// `|N(x)|` for integral x.
pub fn abs_norm_int(x: &QuadElem) -> BigInt {
    x.norm().abs().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_examples() {
        let ps = primes_above(-1, &big(5));
        assert_eq!(ps.len(), 2);
        assert_eq!((ps[0].ideal.a.clone(), ps[0].ideal.b.clone(), ps[0].ideal.c.clone()), (big(5), big(2), big(1)));
        assert!(ps[0].ideal.contains(&QuadElem::from_ints(-1, 2, 1)));
        let p3 = primes_above(-1, &big(3));
        assert_eq!((p3[0].e, p3[0].f), (1, 2));
        let p2 = primes_above(-1, &big(2));
        assert_eq!((p2[0].e, p2[0].f), (2, 1));
        assert!(p2[0].ideal.contains(&QuadElem::from_ints(-1, 1, 1)));
        let q2 = primes_above(-5, &big(2));
        assert_eq!(q2[0].ideal.to_gen_string(), "(2, 1 + w)");
    }

    #[test]
    fn products_and_inverses() {
        let d = -5;
        let p2 = &primes_above(d, &big(2))[0];
        let sq = p2.ideal.mul(&p2.ideal);
        assert_eq!(sq, Ideal::principal(&QuadElem::from_ints(d, 2, 0)));
        assert!(p2.ideal.mul(&p2.ideal.inv()).is_one());
        let p3 = primes_above(d, &big(3));
        assert_eq!(p3.len(), 2);
        let prod = p3[0].ideal.mul(&p3[1].ideal);
        assert_eq!(prod, Ideal::principal(&QuadElem::from_ints(d, 3, 0)));
        assert_eq!(p3[0].ideal.conj(), p3[1].ideal);
    }

    #[test]
    fn valuations_and_factorization() {
        let d = -1;
        let x = QuadElem::from_ints(d, 2, 1); // norm 5
        let ps = primes_above(d, &big(5));
        assert_eq!(ps[0].valuation(&x), 1);
        assert_eq!(ps[1].valuation(&x), 0);
        let two = QuadElem::from_ints(d, 2, 0);
        let p2 = &primes_above(d, &big(2))[0];
        assert_eq!(p2.valuation(&two), 2);
        assert_eq!(p2.valuation(&two.inv()), -2);
        let f = factor_ideal(&Ideal::principal(&QuadElem::from_ints(d, 6, 2))).unwrap();
        let desc: Vec<(BigInt, i64)> = f.iter().map(|(q, v)| (q.p.clone(), *v)).collect();
        assert_eq!(desc, vec![(big(2), 3), (big(5), 1)]);
    }

    #[test]
    fn intersection_of_coprime_is_product() {
        let d = -23;
        let ps2 = primes_above(d, &big(2));
        let ps3 = primes_above(d, &big(3));
        let a = &ps2[0].ideal;
        let b = &ps3[0].ideal;
        assert_eq!(a.intersect(b), a.mul(b));
        assert!(a.add(b).is_one());
    }
}
