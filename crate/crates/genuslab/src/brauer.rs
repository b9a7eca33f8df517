//! Quaternion and cyclic algebras: Hilbert symbols, ramification, residues
//! of cyclic algebras, reduction to unit representatives, genus bounds.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::ideal::PrimeIdeal;
use crate::arith::int::{euler_phi, legendre};
use crate::arith::{Base, QuadElem};
use crate::divisor::{pic_group, places_above_set};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::places::{places_above, residue, support, valuation, Place, QuadExt};

/// A place for local Brauer data: a discrete valuation or the real place of ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BrPlace {
    Finite(Place),
    Real,
}

impl fmt::Display for BrPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrPlace::Finite(p) => write!(f, "{p}"),
            BrPlace::Real => write!(f, "real"),
        }
    }
}

fn rat_to_int_class(q: &BigRational) -> BigInt {
    // q and q·den² agree modulo squares
    q.numer() * q.denom()
}

fn hilbert_q_odd(a: &BigInt, b: &BigInt, p: &BigInt) -> i32 {
    let split = |x: &BigInt| {
        let mut x = x.clone();
        let mut v = 0i64;
        while x.is_multiple_of(p) {
            x /= p;
            v += 1;
        }
        (v, x)
    };
    let (al, u) = split(a);
    let (be, w) = split(b);
    let eps = ((p - 1u32) / 2u32).is_odd();
    let mut s = if al * be % 2 != 0 && eps { -1 } else { 1 };
    if be % 2 != 0 {
        s *= legendre(&u, p);
    }
    if al % 2 != 0 {
        s *= legendre(&w, p);
    }
    s
}

fn hilbert_q_two(a: &BigInt, b: &BigInt) -> i32 {
    let two = BigInt::from(2);
    let split = |x: &BigInt| {
        let mut x = x.clone();
        let mut v = 0i64;
        while x.is_even() {
            x /= &two;
            v += 1;
        }
        (v, x.mod_floor(&BigInt::from(8)).to_i64().unwrap())
    };
    let (al, u) = split(a);
    let (be, w) = split(b);
    let eps = |x: i64| ((x - 1) / 2) % 2;
    let omega = |x: i64| ((x * x - 1) / 8) % 2;
    let e = eps(u) * eps(w) + al * omega(w) + be * omega(u);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Local Hilbert symbol (a, b)_v ∈ {±1}.
pub fn hilbert_symbol(a: &Elem, b: &Elem, v: &BrPlace) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    match (a, b) {
        (Elem::Q(x), Elem::Q(y)) => {
            let (x, y) = (rat_to_int_class(x), rat_to_int_class(y));
            match v {
                BrPlace::Real => Ok(if x.is_negative() && y.is_negative() { -1 } else { 1 }),
                BrPlace::Finite(Place::RationalPrime(p)) => {
                    Ok(if *p == BigInt::from(2) { hilbert_q_two(&x, &y) } else { hilbert_q_odd(&x, &y, p) })
                }
                _ => Err(Error::Unsupported(format!("place {v} for ℚ"))),
            }
        }
        (Elem::F(x), Elem::F(_)) => {
            let Base::Fp(p) = x.base() else {
                return Err(Error::Unsupported("Hilbert symbols over ℚ(t)".into()));
            };
            if *p == 2 {
                return Err(Error::Unsupported("Hilbert symbols over F2(t)".into()));
            }
            let BrPlace::Finite(pl) = v else {
                return Err(Error::Unsupported("real place of a function field".into()));
            };
            let c = tame_unit(a, b, pl)?;
            Ok(if residue(&c, pl)?.is_square()? { 1 } else { -1 })
        }
        _ => Err(Error::Unsupported(format!("Hilbert symbols over {}", a.field()))),
    }
}

/// (−1)^{v(a)v(b)} a^{v(b)} b^{−v(a)}, a unit at v.
pub fn tame_unit(a: &Elem, b: &Elem, v: &Place) -> Result<Elem> {
    let al = valuation(a, v)?;
    let be = valuation(b, v)?;
    let sign = if (al * be) % 2 != 0 { a.field().one().neg() } else { a.field().one() };
    Ok(sign.mul(&a.pow(be)).mul(&b.pow(-al)))
}

/// Candidate places where (a, b) can ramify.
fn candidate_places(a: &Elem, b: &Elem) -> Result<Vec<BrPlace>> {
    let mut out: Vec<BrPlace> = Vec::new();
    for x in [a, b] {
        for (p, _) in support(x)? {
            out.push(BrPlace::Finite(p));
        }
    }
    if a.field() == Field::Q {
        out.push(BrPlace::Finite(Place::prime(2)));
        out.push(BrPlace::Real);
    }
    if let Field::RatFn(base) = a.field() {
        out.push(BrPlace::Finite(Place::InfinitePoly(base)));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Places where the quaternion algebra (a, b) ramifies.
pub fn ramification_set(a: &Elem, b: &Elem) -> Result<Vec<BrPlace>> {
    if a.field() != b.field() {
        return Err(Error::Unsupported("entries from different fields".into()));
    }
    let mut out = Vec::new();
    for v in candidate_places(a, b)? {
        if hilbert_symbol(a, b, &v)? == -1 {
            out.push(v);
        }
    }
    Ok(out)
}

/// The quadratic extension as a base-field element g with L = K(√g).
pub fn ext_generator(l: &QuadExt) -> Elem {
    match l {
        QuadExt::Number(d) => Elem::Q(BigRational::from_integer(BigInt::from(*d))),
        QuadExt::Function(g) => Elem::poly(g.clone()),
    }
}

/// χ(τ̄) = v(c)/m ∈ ℚ/ℤ for the cyclic algebra (L, σ, c) at v, m the
/// residue degree of w | v.
pub fn residue_cyclic(l: &QuadExt, c: &Elem, v: &Place) -> Result<BigRational> {
    let above = places_above(v, l)?;
    if above.iter().any(|w| w.e > 1) {
        return Err(Error::RamifiedExtension { place: v.to_string() });
    }
    let m = above[0].f as i64;
    let k = valuation(c, v)?;
    Ok(residue_value(k, m))
}

/// k/m reduced into [0, 1).
pub fn residue_value(k: i64, m: i64) -> BigRational {
    BigRational::new(BigInt::from(k.rem_euclid(m)), BigInt::from(m))
}

/// V′ = all finite places except `exclude`; the infinite place of k(t)
/// belongs to V′ only when `include_infinite` is set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlaceSet {
    pub exclude: Vec<Place>,
    pub include_infinite: bool,
}

impl PlaceSet {
    pub fn all_but(exclude: Vec<Place>) -> PlaceSet {
        PlaceSet { exclude, include_infinite: false }
    }

    pub fn contains(&self, v: &Place) -> bool {
        !self.exclude.contains(v) && (self.include_infinite || !v.is_infinite())
    }
}

/// Result of an unramifiedness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unramified {
    pub unramified: bool,
    pub offending: Vec<Place>,
}

/// Test (L, σ, c) over V′: residue_cyclic at unramified places of L, the
/// Hilbert symbol (g, c)_v where L ramifies.
pub fn is_unramified_cyclic(l: &QuadExt, c: &Elem, vp: &PlaceSet) -> Result<Unramified> {
    let g = ext_generator(l);
    let mut offending = Vec::new();
    for bv in candidate_places(&g, c)? {
        let BrPlace::Finite(v) = bv else { continue };
        if !vp.contains(&v) {
            continue;
        }
        let bad = match residue_cyclic(l, c, &v) {
            Ok(r) => !r.is_zero(),
            Err(Error::RamifiedExtension { .. }) => hilbert_symbol(&g, c, &BrPlace::Finite(v.clone()))? == -1,
            Err(e) => return Err(e),
        };
        if bad {
            offending.push(v);
        }
    }
    Ok(Unramified { unramified: offending.is_empty(), offending })
}

/// Test the quaternion algebra (a, b) over V′.
pub fn is_unramified_quaternion(a: &Elem, b: &Elem, vp: &PlaceSet) -> Result<Unramified> {
    let offending: Vec<Place> = ramification_set(a, b)?
        .into_iter()
        .filter_map(|p| match p {
            BrPlace::Finite(v) if vp.contains(&v) => Some(v),
            _ => None,
        })
        .collect();
    Ok(Unramified { unramified: offending.is_empty(), offending })
}

/// One factor of a norm certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiW {
    pub place: Place,
    pub above: Place,
    pub pi_w: QuadElem,
    pub exponent: i64,
}

/// Output of [`reduce_to_unit_rep`]: u = c/d with d = Π N(π_w)^{v(c)/n_v}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitRep {
    pub u: Elem,
    pub d: Elem,
    pub pi_w: Vec<PiW>,
}

/// Replace c by a unit u ∈ U(ℚ, V′) with (L, σ, c) ≅ (L, σ, u), for L = ℚ(√d).
pub fn reduce_to_unit_rep(l: &QuadExt, c: &Elem, vp: &PlaceSet) -> Result<UnitRep> {
    let QuadExt::Number(dd) = l else {
        return Err(Error::Unsupported("unit representatives need L = ℚ(√d)".into()));
    };
    let dd = *dd;
    if c.field() != Field::Q {
        return Err(Error::Unsupported("base field must be ℚ".into()));
    }
    let ur = is_unramified_cyclic(l, c, vp)?;
    let ext_ram: Vec<Place> = support(&ext_generator(l))?
        .into_iter()
        .map(|(p, _)| p)
        .chain(std::iter::once(Place::prime(2)))
        .filter(|p| vp.contains(p) && places_above(p, l).map(|w| w[0].e == 2).unwrap_or(false))
        .collect();
    if !ur.unramified || !ext_ram.is_empty() {
        let mut places: Vec<String> = ur.offending.iter().chain(ext_ram.iter()).map(|p| p.to_string()).collect();
        places.sort();
        places.dedup();
        return Err(Error::RamifiedInput { places });
    }
    let s_rat: Vec<BigInt> = vp
        .exclude
        .iter()
        .filter_map(|p| match p {
            Place::RationalPrime(q) => Some(q.clone()),
            _ => None,
        })
        .collect();
    let sl = places_above_set(dd, &s_rat);
    let lf = Field::Quad(dd);
    let pic = pic_group(&lf, &sl)?;
    if !pic.is_trivial() {
        return Err(Error::PicNontrivial(format!("Pic of ℚ(√{dd}) away from S has order {}", pic.order())));
    }
    let cl = pic.class_group().unwrap();
    let s_primes: Vec<PrimeIdeal> = sl
        .iter()
        .filter_map(|p| match p {
            Place::QuadPrime(q) => Some(q.clone()),
            _ => None,
        })
        .collect();
    let mut d = Elem::from_int(&Field::Q, 1);
    let mut pis = Vec::new();
    for (v, k) in support(c)? {
        if !vp.contains(&v) {
            continue;
        }
        let above = places_above(&v, l)?;
        let w = above[0].place.clone().unwrap();
        let n_v = above[0].f as i64;
        let Place::QuadPrime(q) = &w else { unreachable!() };
        let pi = cl
            .s_generator(&q.ideal, &s_primes)?
            .ok_or_else(|| Error::PicNontrivial(format!("class of {} not in the span of S", q.ideal)))?;
        let e = k / n_v;
        d = d.mul(&Elem::Q(pi.norm()).pow(e));
        pis.push(PiW { place: v, above: w, pi_w: pi, exponent: e });
    }
    let u = c.div(&d);
    for (v, _) in support(&u)? {
        assert!(!vp.contains(&v), "unit representative has support at {v}");
    }
    Ok(UnitRep { u, d, pi_w: pis })
}

/// |ₙBr(K)_V| · φ(n)^r.
pub fn genus_bound_e(n: u64, r: u32, order: &BigInt) -> BigInt {
    order * num_traits::pow(BigInt::from(euler_phi(n)), r as usize)
}

/// Product of the bounds of the primary parts.
pub fn genus_bound_composite(parts: &[(u64, u32, BigInt)]) -> BigInt {
    parts.iter().map(|(n, r, o)| genus_bound_e(*n, *r, o)).product()
}

/// A Brauer class over ℚ given by its local invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalBrauerClass {
    pub n: u64,
    pub invariants: BTreeMap<BrPlace, BigRational>,
}

impl GlobalBrauerClass {
    pub fn new(n: u64, inv: impl IntoIterator<Item = (BrPlace, BigRational)>) -> GlobalBrauerClass {
        let invariants = inv
            .into_iter()
            .map(|(p, x)| (p, frac(&x)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        GlobalBrauerClass { n, invariants }
    }

    pub fn invariant_sum(&self) -> BigRational {
        frac(&self.invariants.values().fold(BigRational::zero(), |a, b| a + b))
    }

    pub fn opposite(&self) -> GlobalBrauerClass {
        GlobalBrauerClass::new(self.n, self.invariants.iter().map(|(p, x)| (p.clone(), -x)))
    }

    /// Local orders.
    pub fn local_orders(&self) -> BTreeMap<BrPlace, BigInt> {
        self.invariants.iter().map(|(p, x)| (p.clone(), x.denom().clone())).collect()
    }
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// All classes with the same support and local orders whose invariants sum
/// to zero.
pub fn genus_enumerate_global(dc: &GlobalBrauerClass) -> Result<Vec<GlobalBrauerClass>> {
    let s = dc.invariant_sum();
    if !s.is_zero() {
        return Err(Error::InvariantSumNonzero { sum: format!("{}/{}", s.numer(), s.denom()) });
    }
    for (p, x) in &dc.invariants {
        if *p == BrPlace::Real && *x != BigRational::new(BigInt::one(), BigInt::from(2)) {
            return Err(Error::Unsupported("real invariant must be 0 or 1/2".into()));
        }
    }
    let places: Vec<BrPlace> = dc.invariants.keys().cloned().collect();
    let choices: Vec<Vec<BigRational>> = dc
        .local_orders()
        .values()
        .map(|o| {
            let o64 = o.to_i64().unwrap();
            (1..o64).filter(|k| k.gcd(&o64) == 1).map(|k| BigRational::new(BigInt::from(k), o.clone())).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; places.len()];
    loop {
        let inv: Vec<(BrPlace, BigRational)> = places.iter().zip(&idx).zip(&choices).map(|((p, &i), c)| (p.clone(), c[i].clone())).collect();
        let cand = GlobalBrauerClass::new(dc.n, inv);
        if cand.invariant_sum().is_zero() {
            out.push(cand);
        }
        let mut i = 0;
        while i < idx.len() {
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == idx.len() {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Poly, RatFn};

    fn q(n: i64) -> Elem {
        Elem::Q(BigRational::from_integer(BigInt::from(n)))
    }

    fn qp(p: i64) -> BrPlace {
        BrPlace::Finite(Place::prime(p))
    }

    /// z² = a x² + b y² has a solution mod 16 with some coordinate odd
    /// (2-adic oracle).
    fn solvable_mod16(a: i64, b: i64) -> bool {
        (0..16).any(|x| {
            (0..16).any(|y| (0..16).any(|z| (x % 2 != 0 || y % 2 != 0 || z % 2 != 0) && (z * z - a * x * x - b * y * y).rem_euclid(16) == 0))
        })
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &BrPlace::Real).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &qp(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &qp(5)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&q(2), &q(3), &qp(3)).unwrap(), -1);
    }

    #[test]
    fn two_adic_matches_brute_force() {
        // for units and 2·units, solvability mod 16 with a primitive vector
        // decides the 2-adic symbol
        for a in [-7i64, -5, -3, -1, 1, 3, 5, 7, 2, 6, 10, 14, -2, -6] {
            for b in [-7i64, -5, -3, -1, 1, 3, 5, 7, 2, 6, -2, -10] {
                let s = hilbert_symbol(&q(a), &q(b), &qp(2)).unwrap();
                assert_eq!(s == 1, solvable_mod16(a, b), "({a},{b})_2");
            }
        }
    }

    #[test]
    fn ramification_examples() {
        assert_eq!(ramification_set(&q(-1), &q(-1)).unwrap(), vec![qp(2), BrPlace::Real]);
        assert!(ramification_set(&q(1), &q(7)).unwrap().is_empty());
        let b = Base::Fp(5);
        let t = Elem::F(RatFn::t(b.clone()));
        let u = Elem::from_int(&Field::RatFn(b.clone()), 2);
        let r = ramification_set(&t, &u).unwrap();
        assert_eq!(r, vec![BrPlace::Finite(Place::FinitePoly(Poly::t(b.clone()))), BrPlace::Finite(Place::InfinitePoly(b))]);
        assert!(hilbert_symbol(&t, &t, &BrPlace::Real).is_err());
    }

    #[test]
    fn residue_cyclic_examples() {
        let l = QuadExt::Number(-1);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(residue_cyclic(&l, &q(3), &Place::prime(3)).unwrap(), half);
        assert!(residue_cyclic(&l, &q(9), &Place::prime(3)).unwrap().is_zero());
        assert!(residue_cyclic(&l, &q(5), &Place::prime(5)).unwrap().is_zero());
        assert!(matches!(residue_cyclic(&l, &q(2), &Place::prime(2)), Err(Error::RamifiedExtension { .. })));
    }

    #[test]
    fn unramified_examples() {
        let l = QuadExt::Number(-1);
        let odd = PlaceSet::all_but(vec![Place::prime(2)]);
        assert!(is_unramified_cyclic(&l, &q(5), &odd).unwrap().unramified);
        let r = is_unramified_cyclic(&l, &q(3), &odd).unwrap();
        assert_eq!(r.offending, vec![Place::prime(3)]);
        assert!(is_unramified_cyclic(&l, &q(1), &odd).unwrap().unramified);
    }

    #[test]
    fn unit_rep_examples() {
        let l = QuadExt::Number(-1);
        let odd = PlaceSet::all_but(vec![Place::prime(2)]);
        let r = reduce_to_unit_rep(&l, &q(5), &odd).unwrap();
        assert_eq!((r.u.clone(), r.d.clone()), (q(1), q(5)));
        assert_eq!(r.pi_w[0].pi_w, QuadElem::from_ints(-1, 2, 1));
        let r = reduce_to_unit_rep(&l, &q(9), &odd).unwrap();
        assert_eq!((r.u.clone(), r.d.clone()), (q(1), q(9)));
        assert_eq!(r.pi_w[0].pi_w, QuadElem::from_ints(-1, 3, 0));
        let r = reduce_to_unit_rep(&l, &q(-1), &odd).unwrap();
        assert_eq!((r.u, r.d), (q(-1), q(1)));
        let c = Elem::Q(BigRational::new(BigInt::from(45), BigInt::from(7)));
        let r = reduce_to_unit_rep(&l, &c, &odd);
        assert!(matches!(r, Err(Error::RamifiedInput { .. })));
        let c = Elem::Q(BigRational::new(BigInt::from(90), BigInt::from(49)));
        let r = reduce_to_unit_rep(&l, &c, &odd).unwrap();
        assert_eq!(r.u, q(2));
        assert!(matches!(reduce_to_unit_rep(&l, &q(5), &PlaceSet::all_but(vec![])), Err(Error::RamifiedInput { .. })));
    }

    #[test]
    fn unit_rep_with_nontrivial_class_group() {
        // L = ℚ(√−5), S = {2}: Pic trivial; c = 3·7 with 3, 7 split
        let l = QuadExt::Number(-5);
        let vp = PlaceSet::all_but(vec![Place::prime(2), Place::prime(5)]);
        let c = q(21);
        let r = reduce_to_unit_rep(&l, &c, &vp).unwrap();
        let u = r.u.as_rational().unwrap().clone();
        for (p, _) in support(&Elem::Q(u)).unwrap() {
            assert!(!vp.contains(&p));
        }
        let prod = r.pi_w.iter().fold(q(1), |acc, pw| acc.mul(&Elem::Q(pw.pi_w.norm()).pow(pw.exponent)));
        assert_eq!(prod, r.d);
        assert_eq!(r.u.mul(&r.d), c);
        assert!(matches!(reduce_to_unit_rep(&l, &c, &PlaceSet::all_but(vec![Place::prime(5)])), Err(_)));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_bound_e(2, 3, &BigInt::one()), BigInt::one());
        assert_eq!(genus_bound_e(3, 2, &BigInt::one()), BigInt::from(4));
        assert_eq!(genus_bound_composite(&[(2, 3, BigInt::one()), (3, 2, BigInt::one())]), BigInt::from(4));
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        let h = GlobalBrauerClass::new(2, [(qp(2), r(1, 2)), (BrPlace::Real, r(1, 2))]);
        assert_eq!(genus_enumerate_global(&h).unwrap(), vec![h.clone()]);
        let c3 = GlobalBrauerClass::new(3, [(qp(5), r(1, 3)), (qp(7), r(2, 3))]);
        let g = genus_enumerate_global(&c3).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.contains(&c3.opposite()));
        let c3b = GlobalBrauerClass::new(3, [(qp(5), r(1, 3)), (qp(7), r(1, 3)), (qp(11), r(1, 3))]);
        assert_eq!(genus_enumerate_global(&c3b).unwrap().len(), 2);
        let bad = GlobalBrauerClass::new(3, [(qp(5), r(1, 3))]);
        assert!(matches!(genus_enumerate_global(&bad), Err(Error::InvariantSumNonzero { .. })));
    }
}
