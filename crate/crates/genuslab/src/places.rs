//! Discrete valuations of the supported fields, residue maps and extension
//! of places to quadratic extensions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::ideal::{factor_ideal, primes_above, Ideal, PrimeIdeal};
use crate::arith::int::{self, legendre, mod_inverse};
use crate::arith::quad::omega_relation;
use crate::arith::{factor_poly, Base, Poly, QuadElem, RatFn};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    RationalPrime(BigInt),
    /// Monic irreducible polynomial of k[t].
    FinitePoly(Poly),
    /// The place at infinity of k(t).
    InfinitePoly(Base),
    QuadPrime(PrimeIdeal),
}

impl Place {
    pub fn prime(p: i64) -> Place {
        Place::RationalPrime(BigInt::from(p))
    }

    /// The field this place belongs to.
    pub fn field(&self) -> Field {
        match self {
            Place::RationalPrime(_) => Field::Q,
            Place::FinitePoly(f) => Field::RatFn(f.base().clone()),
            Place::InfinitePoly(b) => Field::RatFn(b.clone()),
            Place::QuadPrime(q) => Field::Quad(q.d()),
        }
    }

    /// Degree of the residue field over the prime field (over k for k(t)).
    pub fn degree(&self) -> u32 {
        match self {
            Place::RationalPrime(_) | Place::InfinitePoly(_) => 1,
            Place::FinitePoly(f) => f.deg() as u32,
            Place::QuadPrime(q) => q.f,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::InfinitePoly(_))
    }

    pub fn uniformizer(&self) -> Elem {
        match self {
            Place::RationalPrime(p) => Elem::Q(BigRational::from_integer(p.clone())),
            Place::FinitePoly(f) => Elem::poly(f.clone()),
            Place::InfinitePoly(b) => Elem::F(RatFn::t(b.clone()).inv()),
            Place::QuadPrime(q) => Elem::Quad(q.uniformizer()),
        }
    }

    pub fn residue_field(&self) -> Result<ResidueField> {
        Ok(match self {
            Place::RationalPrime(p) => ResidueField::Fp(p.clone()),
            Place::InfinitePoly(Base::Q) => ResidueField::Q,
            Place::InfinitePoly(Base::Fp(p)) => ResidueField::Fp(BigInt::from(*p)),
            Place::FinitePoly(f) => match (f.base(), f.deg()) {
                (Base::Q, 1) => ResidueField::Q,
                (Base::Fp(p), 1) => ResidueField::Fp(BigInt::from(*p)),
                _ => ResidueField::Ext(f.clone()),
            },
            Place::QuadPrime(q) => {
                if q.f == 1 {
                    ResidueField::Fp(q.p.clone())
                } else {
                    let p = small_prime(&q.p)?;
                    let (b, c) = omega_relation(q.d());
                    ResidueField::Ext(Poly::from_ints(Base::Fp(p), &[-c, -b, 1]))
                }
            }
        })
    }
}

fn small_prime(p: &BigInt) -> Result<u64> {
    p.to_u64().ok_or_else(|| Error::Unsupported(format!("residue field of size {p}^2")))
}

/// Grammar: `p:5`, `poly:t^2+1@Fp(3)`, `inf@Q(t)`, `qprime:(2,1+w)@d=-5`.
impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::RationalPrime(p) => write!(f, "p:{p}"),
            Place::FinitePoly(g) => write!(f, "poly:{}@{}", g.to_string().replace(' ', ""), g.base()),
            Place::InfinitePoly(b) => write!(f, "inf@{b}(t)"),
            Place::QuadPrime(q) => {
                write!(f, "qprime:{}@d={}", q.ideal.to_gen_string().replace(' ', ""), q.d())
            }
        }
    }
}

/// Residue fields: 𝔽_p, ℚ, or k[t]/(g) for g irreducible of degree ≥ 2
/// (this covers 𝔽_{p²} for inert quadratic primes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidueField {
    Fp(BigInt),
    Q,
    Ext(Poly),
}

impl ResidueField {
    /// Number of elements, `None` for characteristic 0.
    pub fn size(&self) -> Option<BigInt> {
        match self {
            ResidueField::Fp(p) => Some(p.clone()),
            ResidueField::Q => None,
            ResidueField::Ext(g) => match g.base() {
                Base::Fp(p) => Some(num_traits::pow(BigInt::from(*p), g.deg())),
                Base::Q => None,
            },
        }
    }

    pub fn characteristic(&self) -> BigInt {
        match self {
            ResidueField::Fp(p) => p.clone(),
            ResidueField::Q => BigInt::zero(),
            ResidueField::Ext(g) => BigInt::from(g.base().characteristic()),
        }
    }
}

impl fmt::Display for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueField::Fp(p) => write!(f, "F{p}"),
            ResidueField::Q => write!(f, "Q"),
            ResidueField::Ext(g) => write!(f, "{}[t]/({})", g.base(), g),
        }
    }
}

/// Element of a residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidueElem {
    Fp { p: BigInt, v: BigInt },
    Q(BigRational),
    Ext { modulus: Poly, v: Poly },
}

impl ResidueElem {
    pub fn field(&self) -> ResidueField {
        match self {
            ResidueElem::Fp { p, .. } => ResidueField::Fp(p.clone()),
            ResidueElem::Q(_) => ResidueField::Q,
            ResidueElem::Ext { modulus, .. } => ResidueField::Ext(modulus.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ResidueElem::Fp { v, .. } => v.is_zero(),
            ResidueElem::Q(q) => q.is_zero(),
            ResidueElem::Ext { v, .. } => v.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ResidueElem::Fp { v, .. } => v.is_one(),
            ResidueElem::Q(q) => q.is_one(),
            ResidueElem::Ext { v, .. } => v.is_one(),
        }
    }

    pub fn mul(&self, o: &ResidueElem) -> ResidueElem {
        match (self, o) {
            (ResidueElem::Fp { p, v }, ResidueElem::Fp { v: w, .. }) => ResidueElem::Fp { p: p.clone(), v: (v * w).mod_floor(p) },
            (ResidueElem::Q(a), ResidueElem::Q(b)) => ResidueElem::Q(a * b),
            (ResidueElem::Ext { modulus, v }, ResidueElem::Ext { v: w, .. }) => {
                ResidueElem::Ext { modulus: modulus.clone(), v: (v * w).rem(modulus) }
            }
            _ => panic!("residue fields differ"),
        }
    }

    pub fn inv(&self) -> ResidueElem {
        assert!(!self.is_zero(), "inverse of zero residue");
        match self {
            ResidueElem::Fp { p, v } => ResidueElem::Fp { p: p.clone(), v: mod_inverse(v, p).unwrap() },
            ResidueElem::Q(q) => ResidueElem::Q(q.recip()),
            ResidueElem::Ext { modulus, v } => ResidueElem::Ext { modulus: modulus.clone(), v: v.inv_mod(modulus).unwrap() },
        }
    }

    pub fn neg(&self) -> ResidueElem {
        match self {
            ResidueElem::Fp { p, v } => ResidueElem::Fp { p: p.clone(), v: (-v).mod_floor(p) },
            ResidueElem::Q(q) => ResidueElem::Q(-q),
            ResidueElem::Ext { modulus, v } => ResidueElem::Ext { modulus: modulus.clone(), v: -v },
        }
    }

    /// Square test. Decidable for finite fields and ℚ; number fields of
    /// degree ≥ 2 are rejected.
    pub fn is_square(&self) -> Result<bool> {
        match self {
            ResidueElem::Fp { p, v } => Ok(*p == BigInt::from(2) || v.is_zero() || legendre(v, p) == 1),
            ResidueElem::Q(q) => Ok(!q.is_negative() && is_square_int(q.numer()) && is_square_int(q.denom())),
            ResidueElem::Ext { modulus, v } => match modulus.base() {
                Base::Fp(2) => Ok(true),
                Base::Fp(p) => {
                    if v.is_zero() {
                        return Ok(true);
                    }
                    let q = num_traits::pow(BigInt::from(*p), modulus.deg());
                    let e = (q - 1u32) / 2u32;
                    Ok(v.pow_mod(&e, modulus).is_one())
                }
                Base::Q => Err(Error::UnsupportedPlaceDegree { place: format!("Q[t]/({modulus})"), degree: modulus.deg() }),
            },
        }
    }
}

fn is_square_int(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueElem::Fp { v, .. } => write!(f, "{v}"),
            ResidueElem::Q(q) => write!(f, "{}", Elem::Q(q.clone())),
            ResidueElem::Ext { v, .. } => write!(f, "{v}"),
        }
    }
}

fn check_field(x: &Elem, v: &Place) -> Result<()> {
    if x.field() != v.field() {
        return Err(Error::Unsupported(format!("element of {} at place {v} of {}", x.field(), v.field())));
    }
    Ok(())
}

fn rational_valuation(q: &BigRational, p: &BigInt) -> i64 {
    int::valuation(q.numer(), p) as i64 - int::valuation(q.denom(), p) as i64
}

/// v(x). Errors with `ZeroElement` for x = 0.
pub fn valuation(x: &Elem, v: &Place) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    check_field(x, v)?;
    Ok(match (x, v) {
        (Elem::Q(q), Place::RationalPrime(p)) => rational_valuation(q, p),
        (Elem::F(r), Place::FinitePoly(f)) => r.valuation_at(f),
        (Elem::F(r), Place::InfinitePoly(_)) => r.valuation_inf(),
        (Elem::Quad(a), Place::QuadPrime(q)) => q.valuation(a),
        _ => unreachable!(),
    })
}

/// All places where x has nonzero valuation, sorted. For k(t) the infinite
/// place is included when its valuation is nonzero.
pub fn support(x: &Elem) -> Result<Vec<(Place, i64)>> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut out = Vec::new();
    match x {
        Elem::Q(q) => {
            for m in [q.numer(), q.denom()] {
                if m.abs().is_one() {
                    continue;
                }
                for (p, _) in int::factor(m)? {
                    let v = rational_valuation(q, &p);
                    out.push((Place::RationalPrime(p), v));
                }
            }
        }
        Elem::F(r) => {
            for m in [r.num(), r.den()] {
                if m.is_constant() {
                    continue;
                }
                for (f, _) in factor_poly(m)?.factors {
                    let v = r.valuation_at(&f);
                    out.push((Place::FinitePoly(f), v));
                }
            }
            let vi = r.valuation_inf();
            if vi != 0 {
                out.push((Place::InfinitePoly(r.base().clone()), vi));
            }
        }
        Elem::Quad(a) => {
            for (q, v) in factor_ideal(&Ideal::principal(a))? {
                out.push((Place::QuadPrime(q), v));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// An element of 𝔭⁻¹ with 𝔭-valuation exactly −1.
fn inverse_uniformizer(q: &PrimeIdeal) -> QuadElem {
    let inv = q.ideal.inv();
    let [u, w] = inv.basis();
    for cand in [u.clone(), w.clone(), &u + &w] {
        if !cand.is_zero() && q.valuation(&cand) == -1 {
            return cand;
        }
    }
    unreachable!("𝔭⁻¹ ≠ O")
}

/// Residue of an integral element outside 𝔭.
fn residue_integral(a: &QuadElem, q: &PrimeIdeal, rf: &ResidueField) -> ResidueElem {
    let (x, y) = a.int_coords();
    match rf {
        ResidueField::Fp(p) => {
            // ω ≡ −b (mod 𝔭) for 𝔭 = (p, b + ω)
            let r = -&q.ideal.b;
            ResidueElem::Fp { p: p.clone(), v: (x + y * r).mod_floor(p) }
        }
        ResidueField::Ext(g) => {
            let base = g.base().clone();
            let v = Poly::new(base.clone(), vec![base.norm(&BigRational::from_integer(x)), base.norm(&BigRational::from_integer(y))]);
            ResidueElem::Ext { modulus: g.clone(), v }
        }
        ResidueField::Q => unreachable!(),
    }
}

/// Image of x in the residue field at v. Requires v(x) = 0.
pub fn residue(x: &Elem, v: &Place) -> Result<ResidueElem> {
    if x.is_zero() || valuation(x, v)? != 0 {
        return Err(Error::NotAUnit { place: v.to_string() });
    }
    let rf = v.residue_field()?;
    Ok(match (x, v) {
        (Elem::Q(q), Place::RationalPrime(p)) => {
            let inv = mod_inverse(&q.denom().mod_floor(p), p).unwrap();
            ResidueElem::Fp { p: p.clone(), v: (q.numer() * inv).mod_floor(p) }
        }
        (Elem::F(r), Place::FinitePoly(f)) => {
            let n = r.num().rem(f);
            let d = r.den().rem(f);
            let val = (&n * &d.inv_mod(f).unwrap()).rem(f);
            match rf {
                ResidueField::Fp(p) => ResidueElem::Fp { p, v: val.coeff(0).to_integer() },
                ResidueField::Q => ResidueElem::Q(val.coeff(0)),
                ResidueField::Ext(g) => ResidueElem::Ext { modulus: g, v: val },
            }
        }
        (Elem::F(r), Place::InfinitePoly(b)) => {
            let c = b.mul(&r.num().lead(), &b.inv(&r.den().lead()));
            match rf {
                ResidueField::Fp(p) => ResidueElem::Fp { p, v: c.to_integer() },
                _ => ResidueElem::Q(c),
            }
        }
        (Elem::Quad(a), Place::QuadPrime(q)) => {
            let den = a.denominator();
            let num = a.scale(&BigRational::from_integer(den.clone()));
            let k = q.ideal_valuation(&Ideal::rational(q.d(), &BigRational::from_integer(den.clone())));
            if k == 0 {
                let rn = residue_integral(&num, q, &rf);
                let rd = residue_integral(&QuadElem::from_rat(q.d(), BigRational::from_integer(den)), q, &rf);
                rn.mul(&rd.inv())
            } else {
                let tau = inverse_uniformizer(q).pow(k);
                let rn = residue_integral(&(&num * &tau), q, &rf);
                let dd = QuadElem::from_rat(q.d(), BigRational::from_integer(den));
                let rd = residue_integral(&(&dd * &tau), q, &rf);
                rn.mul(&rd.inv())
            }
        }
        _ => unreachable!(),
    })
}

/// A quadratic extension L/K: ℚ(√d) over ℚ or k(t)(√g) over k(t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadExt {
    Number(i64),
    Function(Poly),
}

/// A place of L above a given place of K. Places of k(t)(√g) are described
/// only by (e, f).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceAbove {
    pub place: Option<Place>,
    pub e: u32,
    pub f: u32,
}

/// Places of L over v, with Σ e·f = 2.
pub fn places_above(v: &Place, l: &QuadExt) -> Result<Vec<PlaceAbove>> {
    match (v, l) {
        (Place::RationalPrime(p), QuadExt::Number(d)) => Ok(primes_above(*d, p)
            .into_iter()
            .map(|q| PlaceAbove { e: q.e, f: q.f, place: Some(Place::QuadPrime(q)) })
            .collect()),
        (Place::FinitePoly(_) | Place::InfinitePoly(_), QuadExt::Function(g)) => {
            if g.base().characteristic() == 2 {
                return Err(Error::Unsupported("quadratic extensions in characteristic 2".into()));
            }
            let ge = Elem::poly(g.clone());
            let vg = valuation(&ge, v)?;
            if vg % 2 != 0 {
                return Ok(vec![PlaceAbove { place: None, e: 2, f: 1 }]);
            }
            // g / π^{vg} is a unit; split iff its residue is a square
            let u = ge.div(&v.uniformizer().pow(vg));
            let square = residue(&u, v)?.is_square()?;
            Ok(if square {
                vec![PlaceAbove { place: None, e: 1, f: 1 }, PlaceAbove { place: None, e: 1, f: 1 }]
            } else {
                vec![PlaceAbove { place: None, e: 1, f: 2 }]
            })
        }
        _ => Err(Error::Unsupported(format!("extension {l:?} of the field at {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Elem {
        Elem::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&q(50, 3), &Place::prime(5)).unwrap(), 2);
        let b = Base::Fp(3);
        let t = RatFn::t(b.clone());
        let x = &(&t * &t) / &(&t - &RatFn::one(b.clone()));
        assert_eq!(valuation(&Elem::F(x), &Place::FinitePoly(Poly::t(b))).unwrap(), 2);
        let p2 = primes_above(-1, &BigInt::from(2)).remove(0);
        let one_i = Elem::Quad(QuadElem::from_ints(-1, 1, 1));
        assert_eq!(valuation(&one_i, &Place::QuadPrime(p2)).unwrap(), 1);
        assert_eq!(valuation(&q(0, 1), &Place::prime(5)), Err(Error::ZeroElement));
    }

    #[test]
    fn support_examples() {
        let s = support(&q(12, 1)).unwrap();
        assert_eq!(s, vec![(Place::prime(2), 2), (Place::prime(3), 1)]);
        let b = Base::Fp(5);
        let t = RatFn::t(b.clone());
        let x = &(&t - &RatFn::one(b.clone())) / &t;
        let s = support(&Elem::F(x)).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.contains(&(Place::FinitePoly(Poly::t(b.clone())), -1)));
        assert!(support(&q(1, 1)).unwrap().is_empty());
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue(&q(7, 3), &Place::prime(5)).unwrap().to_string(), "4");
        let t = RatFn::t(Base::Q);
        let x = &t + &RatFn::from_int(Base::Q, 3);
        let r = residue(&Elem::F(x), &Place::FinitePoly(Poly::t(Base::Q))).unwrap();
        assert_eq!(r, ResidueElem::Q(BigRational::from_integer(BigInt::from(3))));
        assert!(residue(&q(10, 1), &Place::prime(5)).is_err());
        let m1 = residue(&q(-1, 1), &Place::prime(7)).unwrap();
        assert_eq!(m1.to_string(), "6");
    }

    #[test]
    fn quad_residues_with_denominators() {
        let d = -1;
        let ps = primes_above(d, &BigInt::from(5));
        let p = Place::QuadPrime(ps[0].clone());
        // a = (2 − i)/5 = 1/(2 + i): valuation −1 at (2 + i)
        let a = QuadElem::from_ints(d, 2, -1).scale(&BigRational::new(BigInt::one(), BigInt::from(5)));
        assert_eq!(valuation(&Elem::Quad(a.clone()), &p).unwrap(), -1);
        // x = (2 − i)²/5: v = −1 at (2 + i), +1 at (2 − i)
        let x = &QuadElem::from_ints(d, 2, -1).pow(2) / &QuadElem::from_ints(d, 5, 0);
        let other = Place::QuadPrime(ps[1].clone());
        assert_eq!(valuation(&Elem::Quad(x.clone()), &other).unwrap(), 1);
        assert_eq!(valuation(&Elem::Quad(x.clone()), &p).unwrap(), -1);
        let y = &x * &QuadElem::from_ints(d, 2, 1);
        let r = residue(&Elem::Quad(y.clone()), &p).unwrap();
        // y = (2 − i)²(2 + i)/5 = 2 − i ≡ 2 − 3 = −1 ≡ 4 mod 𝔭 (i ≡ 3)
        assert_eq!(r.to_string(), "4");
        let p3 = Place::QuadPrime(primes_above(d, &BigInt::from(3)).remove(0));
        let z = Elem::Quad(QuadElem::from_ints(d, 1, 1));
        let rz = residue(&z, &p3).unwrap();
        assert!(matches!(rz, ResidueElem::Ext { .. }));
        assert_eq!(rz.mul(&rz).to_string(), "2*t");
    }

    #[test]
    fn places_above_examples() {
        let ef = |v: &Place, d: i64| -> Vec<(u32, u32)> {
            places_above(v, &QuadExt::Number(d)).unwrap().iter().map(|x| (x.e, x.f)).collect()
        };
        assert_eq!(ef(&Place::prime(5), -1), vec![(1, 1), (1, 1)]);
        assert_eq!(ef(&Place::prime(3), -1), vec![(1, 2)]);
        assert_eq!(ef(&Place::prime(2), -1), vec![(2, 1)]);
        let b = Base::Fp(5);
        let g = Poly::from_ints(b.clone(), &[2, 0, 1]); // t² + 2
        let l = QuadExt::Function(g);
        let at = |c: i64| places_above(&Place::FinitePoly(Poly::from_ints(b.clone(), &[c, 1])), &l).unwrap().len();
        // t = −c: residue c² + 2
        assert_eq!(at(0), 1); // 2 non-square mod 5
        assert_eq!(at(-1), 1); // 3 non-square
        let inf = places_above(&Place::InfinitePoly(b.clone()), &l).unwrap();
        assert_eq!(inf.len(), 2);
    }

    #[test]
    fn display_grammar() {
        assert_eq!(Place::prime(5).to_string(), "p:5");
        assert_eq!(Place::FinitePoly(Poly::from_ints(Base::Fp(3), &[1, 0, 1])).to_string(), "poly:t^2+1@Fp(3)");
        assert_eq!(Place::InfinitePoly(Base::Q).to_string(), "inf@Q(t)");
        let p2 = primes_above(-5, &BigInt::from(2)).remove(0);
        assert_eq!(Place::QuadPrime(p2).to_string(), "qprime:(2,1+w)@d=-5");
    }
}
