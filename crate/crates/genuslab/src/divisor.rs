//! Divisors, Picard groups of S-integer rings, S-unit groups and the first
//! cohomology of quadratic norm-one tori.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::abelian::AbGroup;
use crate::arith::classgroup::ClassGroup;
use crate::arith::ideal::{primes_above, Ideal, PrimeIdeal};
use crate::arith::int::{self, primes};
use crate::arith::linalg::{det, hnf, hnf_basis, inverse, map_mat, mat_mul, Mat};
use crate::arith::units::{find_generator, fundamental_unit, torsion_generator};
use crate::arith::{Base, QuadElem};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::places::{support, Place};

/// Finite formal sum of places with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub field: Field,
    pub entries: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero(field: Field) -> Divisor {
        Divisor { field, entries: BTreeMap::new() }
    }

    pub fn from_entries(field: Field, it: impl IntoIterator<Item = (Place, i64)>) -> Divisor {
        let mut d = Divisor::zero(field);
        for (p, n) in it {
            d.add_term(p, n);
        }
        d
    }

    pub fn add_term(&mut self, p: Place, n: i64) {
        let e = self.entries.entry(p.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.entries.remove(&p);
        }
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in &o.entries {
            d.add_term(p.clone(), *n);
        }
        d
    }

    pub fn neg(&self) -> Divisor {
        Divisor { field: self.field.clone(), entries: self.entries.iter().map(|(p, n)| (p.clone(), -n)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Degree Σ n·deg(v).
    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|(p, n)| n * p.degree() as i64).sum()
    }

    /// The ideal Π 𝔭^n of a divisor on a quadratic field.
    pub fn to_ideal(&self) -> Option<Ideal> {
        let Field::Quad(d) = self.field else { return None };
        let mut acc = Ideal::unit(d);
        for (p, n) in &self.entries {
            let Place::QuadPrime(q) = p else { return None };
            acc = acc.mul(&q.ideal.pow(*n));
        }
        Some(acc)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.entries.iter().map(|(p, n)| format!("{n}*{p}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// (a) restricted to V∖S. The infinite place of k(t) belongs to V only when
/// `include_infinite` is set.
pub fn principal_divisor(a: &Elem, s: &[Place], include_infinite: bool) -> Result<Divisor> {
    let sup = support(a)?;
    Ok(Divisor::from_entries(
        a.field(),
        sup.into_iter().filter(|(p, _)| !s.contains(p) && (include_infinite || !p.is_infinite())),
    ))
}

/// Pic of the ring of S-integers.
#[derive(Clone, Debug)]
pub struct PicGroup {
    pub field: Field,
    pub s: Vec<Place>,
    /// Invariant factors of the cyclic decomposition.
    pub invariants: Vec<BigInt>,
    /// One ideal per cyclic factor.
    pub witnesses: Vec<Ideal>,
    cl: Option<ClassGroup>,
    quotient: AbGroup,
}

impl PicGroup {
    pub fn order(&self) -> BigInt {
        self.invariants.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Class of a divisor (coordinates in the cyclic decomposition).
    pub fn class_of(&self, dv: &Divisor) -> Result<Vec<BigInt>> {
        match &self.cl {
            None => Ok(vec![]),
            Some(cl) => {
                let i = dv.to_ideal().ok_or_else(|| Error::Unsupported("divisor is not on a quadratic field".into()))?;
                Ok(self.quotient.coords(&cl.exponent_vector(&i)))
            }
        }
    }

    pub fn class_of_ideal(&self, i: &Ideal) -> Vec<BigInt> {
        match &self.cl {
            None => vec![],
            Some(cl) => self.quotient.coords(&cl.exponent_vector(i)),
        }
    }

    pub fn class_group(&self) -> Option<&ClassGroup> {
        self.cl.as_ref()
    }
}

fn quad_primes_in(s: &[Place]) -> Vec<PrimeIdeal> {
    s.iter()
        .filter_map(|p| match p {
            Place::QuadPrime(q) => Some(q.clone()),
            _ => None,
        })
        .collect()
}

/// Pic(K, V∖S): trivial for ℚ and k(t); Cl(K)/⟨S⟩ for quadratic K.
pub fn pic_group(field: &Field, s: &[Place]) -> Result<PicGroup> {
    let trivial = |cl| PicGroup {
        field: field.clone(),
        s: s.to_vec(),
        invariants: vec![],
        witnesses: vec![],
        cl,
        quotient: AbGroup::trivial(0),
    };
    match field {
        Field::Q | Field::RatFn(_) => Ok(trivial(None)),
        Field::Quad(d) => {
            let cl = ClassGroup::compute(*d)?;
            if cl.gens.is_empty() {
                return Ok(trivial(Some(cl)));
            }
            let ideals: Vec<Ideal> = quad_primes_in(s).into_iter().map(|q| q.ideal).collect();
            let quotient = cl.quotient(&ideals);
            let witnesses = (0..quotient.invariants.len()).map(|j| cl.ideal_from_vector(quotient.lift(j))).collect();
            Ok(PicGroup {
                field: field.clone(),
                s: s.to_vec(),
                invariants: quotient.invariants.clone(),
                witnesses,
                cl: Some(cl),
                quotient,
            })
        }
    }
}

/// A finite S with Pic(K, V∖S) = 0: primes of small norm are added while
/// they enlarge the generated subgroup, then redundant ones are dropped.
pub fn pic_trivializing_set(field: &Field) -> Result<Vec<Place>> {
    let Field::Quad(d) = field else { return Ok(vec![]) };
    let cl = ClassGroup::compute(*d)?;
    if cl.group.is_trivial() {
        return Ok(vec![]);
    }
    let generated = |set: &[Ideal]| cl.quotient(set).is_trivial();
    let mut chosen: Vec<PrimeIdeal> = Vec::new();
    let mut size = cl.order();
    'outer: for p in primes().take(10_000) {
        for q in primes_above(*d, &BigInt::from(p)) {
            let mut trial: Vec<Ideal> = chosen.iter().map(|c| c.ideal.clone()).collect();
            trial.push(q.ideal.clone());
            let rest = cl.quotient(&trial).order().unwrap();
            if rest < size {
                size = rest;
                chosen.push(q);
                if size.is_one() {
                    break 'outer;
                }
            }
        }
    }
    if !size.is_one() {
        return Err(Error::GeneratorSearchFailed { ideal: "class group generators".into() });
    }
    let mut i = 0;
    while i < chosen.len() {
        let without: Vec<Ideal> = chosen.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| c.ideal.clone()).collect();
        if generated(&without) {
            chosen.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(chosen.into_iter().map(Place::QuadPrime).collect())
}

/// Generators of U(K, V∖S).
#[derive(Clone, Debug)]
pub struct UnitBasis {
    pub field: Field,
    pub s: Vec<Place>,
    pub torsion: Elem,
    pub torsion_order: u64,
    pub free: Vec<Elem>,
    /// For ℚ(t) every nonzero constant is a unit; the constants are then
    /// not listed among the generators.
    pub constants_are_units: bool,
}

fn primitive_root(p: u64) -> Result<u64> {
    if p == 2 {
        return Ok(1);
    }
    let fs = int::factor(&BigInt::from(p - 1))?;
    let pb = BigInt::from(p);
    'g: for g in 2..p {
        for (q, _) in &fs {
            let e = BigInt::from(p - 1) / q;
            if BigInt::from(g).modpow(&e, &pb).is_one() {
                continue 'g;
            }
        }
        return Ok(g);
    }
    unreachable!()
}

/// Torsion, fundamental unit (real fields) and one generator per basis
/// vector of the lattice of principal divisors supported on S.
pub fn unit_group(field: &Field, s: &[Place]) -> Result<UnitBasis> {
    for p in s {
        if p.field() != *field {
            return Err(Error::Unsupported(format!("place {p} is not a place of {field}")));
        }
    }
    let pic = pic_group(field, s)?;
    if !pic.is_trivial() {
        return Err(Error::PicNontrivial(format!("Pic of {field} away from S has order {}", pic.order())));
    }
    let finite: Vec<Place> = s.iter().filter(|p| !p.is_infinite()).cloned().collect();
    match field {
        Field::Q => Ok(UnitBasis {
            field: field.clone(),
            s: s.to_vec(),
            torsion: Elem::from_int(field, -1),
            torsion_order: 2,
            free: finite
                .iter()
                .map(|p| match p {
                    Place::RationalPrime(q) => Elem::Q(BigRational::from_integer(q.clone())),
                    _ => unreachable!(),
                })
                .collect(),
            constants_are_units: false,
        }),
        Field::RatFn(b) => {
            let (tors, ord) = match b {
                Base::Fp(p) => (primitive_root(*p)? as i64, p - 1),
                Base::Q => (-1, 2),
            };
            Ok(UnitBasis {
                field: field.clone(),
                s: s.to_vec(),
                torsion: Elem::from_int(field, tors),
                torsion_order: ord,
                free: finite
                    .iter()
                    .map(|p| match p {
                        Place::FinitePoly(f) => Elem::poly(f.clone()),
                        _ => unreachable!(),
                    })
                    .collect(),
                constants_are_units: *b == Base::Q,
            })
        }
        Field::Quad(d) => {
            let (z, w) = torsion_generator(*d);
            let mut free = Vec::new();
            if *d > 0 {
                free.push(Elem::Quad(fundamental_unit(*d)?));
            }
            let qs = quad_primes_in(s);
            for ideal in principal_lattice(&pic, &qs) {
                free.push(Elem::Quad(find_generator(&ideal)?));
            }
            Ok(UnitBasis { field: field.clone(), s: s.to_vec(), torsion: Elem::Quad(z), torsion_order: w as u64, free, constants_are_units: false })
        }
    }
}

/// Ideals Π 𝔭ᵢ^{mᵢ} for a basis m of the lattice of principal divisors on S.
fn principal_lattice(pic: &PicGroup, qs: &[PrimeIdeal]) -> Vec<Ideal> {
    let Some(cl) = pic.class_group() else { return vec![] };
    let d = cl.d;
    let k = qs.len();
    if k == 0 {
        return vec![];
    }
    let basis: Mat<BigInt> = if cl.gens.is_empty() {
        (0..k).map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
    } else {
        // kernel of ℤ^S → Cl: rows (x, y) with x·E = y·R
        let e: Vec<Vec<BigInt>> = qs.iter().map(|q| cl.exponent_vector(&q.ideal)).collect();
        let r = cl.relations();
        let g = cl.gens.len();
        let mut rows: Mat<BigInt> = Vec::new();
        for (i, ei) in e.iter().enumerate() {
            let mut row = vec![BigInt::zero(); k + g];
            row[i] = BigInt::one();
            row[k..].clone_from_slice(ei);
            rows.push(row);
        }
        for rr in r {
            let mut row = vec![BigInt::zero(); k + g];
            for (j, x) in rr.iter().enumerate() {
                row[k + j] = x.clone();
            }
            rows.push(row);
        }
        // HNF with the Cl-columns first isolates rows vanishing there.
        let perm: Mat<BigInt> = rows.iter().map(|row| row[k..].iter().chain(row[..k].iter()).cloned().collect()).collect();
        let h = hnf(&perm, &BigInt::zero());
        let kernel: Mat<BigInt> = h.h[..h.rank]
            .iter()
            .filter(|row| row[..g].iter().all(|x| x.is_zero()))
            .map(|row| row[g..].to_vec())
            .collect();
        hnf_basis(&kernel, &BigInt::zero())
    };
    basis
        .iter()
        .map(|m| {
            let mut acc = Ideal::unit(d);
            for (q, e) in qs.iter().zip(m) {
                acc = acc.mul(&q.ideal.pow(e.to_i64().unwrap()));
            }
            acc
        })
        .collect()
}

impl UnitBasis {
    /// Exponents (torsion mod order, then free) of an S-unit, verified by
    /// reconstruction.
    pub fn express(&self, u: &Elem) -> Result<Vec<BigInt>> {
        if u.is_zero() {
            return Err(Error::ZeroElement);
        }
        let places: Vec<Place> = self.s.iter().filter(|p| !p.is_infinite()).cloned().collect();
        let bad = || Error::NotAUnit { place: "V∖S".into() };
        let sup = support(u)?;
        if sup.iter().any(|(p, _)| !places.contains(p) && !p.is_infinite()) {
            return Err(bad());
        }
        let val = |x: &Elem| -> Result<Vec<BigRational>> {
            places.iter().map(|p| Ok(BigRational::from_integer(BigInt::from(crate::places::valuation(x, p)?)))).collect()
        };
        let offset = usize::from(matches!(self.field, Field::Quad(d) if d > 0));
        let sfree = &self.free[offset..];
        let mut exps = vec![BigInt::zero(); self.free.len()];
        let mut rest = u.clone();
        if !sfree.is_empty() {
            let m: Mat<BigRational> = sfree.iter().map(&val).collect::<Result<_>>()?;
            let target = val(u)?;
            // x·M = target
            let minv = inverse(&m).ok_or_else(bad)?;
            let x = mat_mul(&vec![target], &minv).remove(0);
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_integer() {
                    return Err(bad());
                }
                exps[offset + i] = xi.to_integer();
                rest = rest.div(&sfree[i].pow(xi.to_integer().to_i64().unwrap()));
            }
        }
        if offset == 1 {
            // rest = ±ε^k
            let q = rest.as_quad().unwrap().clone();
            let eps = self.free[0].as_quad().unwrap();
            let k = (q.to_f64().abs().ln() / eps.to_f64().ln()).round() as i64;
            exps[0] = BigInt::from(k);
            rest = rest.div(&self.free[0].pow(k));
        }
        if let (Field::RatFn(Base::Q), true) = (&self.field, self.constants_are_units) {
            // constant part is absorbed
            let mut out = vec![BigInt::zero()];
            out.extend(exps);
            return Ok(out);
        }
        let mut z = self.field.one();
        for k in 0..self.torsion_order {
            if z == rest {
                let mut out = vec![BigInt::from(k)];
                out.extend(exps);
                return Ok(out);
            }
            z = z.mul(&self.torsion);
        }
        Err(bad())
    }

    /// Rank check: the valuation vectors of the free generators on S are
    /// linearly independent.
    pub fn independent(&self) -> Result<bool> {
        let places: Vec<Place> = self.s.iter().filter(|p| !p.is_infinite()).cloned().collect();
        let offset = usize::from(matches!(self.field, Field::Quad(d) if d > 0));
        let m: Mat<BigRational> = self.free[offset..]
            .iter()
            .map(|x| places.iter().map(|p| Ok(BigRational::from_integer(BigInt::from(crate::places::valuation(x, p)?)))).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        if m.is_empty() {
            return Ok(true);
        }
        let n = m.len();
        if n > places.len() {
            return Ok(false);
        }
        let gram = mat_mul(&m, &crate::arith::linalg::transpose(&m));
        Ok(!det(&gram).is_zero() && n <= places.len())
    }
}

/// Result of [`torus_h1`].
#[derive(Clone, Debug)]
pub struct TorusH1 {
    pub d: i64,
    pub s_places: Vec<Place>,
    /// Generators of U_S (torsion first).
    pub unit_generators: Vec<QuadElem>,
    pub torsion_order: u64,
    /// Matrix of σ on exponent vectors (rows: images of generators).
    pub sigma: Mat<BigInt>,
    pub order: BigInt,
}

/// S^L for a set of rational primes S.
pub fn places_above_set(d: i64, s: &[BigInt]) -> Vec<Place> {
    let mut out: Vec<Place> = s.iter().flat_map(|p| primes_above(d, p)).map(Place::QuadPrime).collect();
    out.sort();
    out
}

/// |H¹(ℤ/2, U_S)| for L = ℚ(√d) and S^L the primes above the rational primes
/// in S, with Z¹ = {u : u·σ(u) = 1} and B¹ = {v·σ(v)⁻¹}.
pub fn torus_h1(d: i64, s: &[BigInt]) -> Result<TorusH1> {
    let field = Field::Quad(d);
    let sl = places_above_set(d, s);
    let ub = unit_group(&field, &sl)?;
    let w = ub.torsion_order;
    let gens: Vec<QuadElem> =
        std::iter::once(ub.torsion.as_quad().unwrap().clone()).chain(ub.free.iter().map(|e| e.as_quad().unwrap().clone())).collect();
    let n = gens.len();
    let mut sigma: Mat<BigInt> = Vec::new();
    for g in &gens {
        let e = ub.express(&Elem::Quad(g.conj()))?;
        sigma.push(e);
    }
    let rel: Vec<BigInt> = (0..n).map(|i| if i == 0 { BigInt::from(w) } else { BigInt::zero() }).collect();
    let order = h1_order(&sigma, &rel)?;
    Ok(TorusH1 { d, s_places: sl, unit_generators: gens, torsion_order: w, sigma, order })
}

/// |ker(1+σ)/im(1−σ)| on A = ℤⁿ/⟨rel⟩, σ given by its matrix on rows.
pub fn h1_order(sigma: &Mat<BigInt>, rel: &[BigInt]) -> Result<BigInt> {
    let n = sigma.len();
    let id = |i: usize, j: usize| if i == j { BigInt::one() } else { BigInt::zero() };
    let plus: Mat<BigInt> = (0..n).map(|i| (0..n).map(|j| id(i, j) + &sigma[i][j]).collect()).collect();
    let minus: Mat<BigInt> = (0..n).map(|i| (0..n).map(|j| id(i, j) - &sigma[i][j]).collect()).collect();
    let has_rel = rel.iter().any(|x| !x.is_zero());
    // Z: x with x·plus ∈ ⟨rel⟩, i.e. (x, y) in the left kernel of [plus; rel]
    let mut stacked = plus.clone();
    if has_rel {
        stacked.push(rel.to_vec());
    }
    let h = hnf(&stacked, &BigInt::zero());
    let mut zrows: Mat<BigInt> = h.u[h.rank..].iter().map(|r| r[..n].to_vec()).collect();
    if has_rel {
        zrows.push(rel.to_vec());
    }
    let zl = hnf_basis(&zrows, &BigInt::zero());
    let mut brows = minus.clone();
    if has_rel {
        brows.push(rel.to_vec());
    }
    let bl = hnf_basis(&brows, &BigInt::zero());
    if zl.len() != bl.len() {
        return Err(Error::Unsupported("H¹ is infinite".into()));
    }
    if zl.is_empty() {
        return Ok(BigInt::one());
    }
    let gram = |m: &Mat<BigInt>| {
        let q = map_mat(m, |x| BigRational::from_integer(x.clone()));
        det(&mat_mul(&q, &crate::arith::linalg::transpose(&q)))
    };
    let ratio = gram(&bl) / gram(&zl);
    let r = ratio.to_integer();
    let s = r.sqrt();
    assert!(ratio.is_integer() && &s * &s == r, "sublattice index");
    Ok(s)
}

/// Brute-force |Z¹/B¹| from actual field elements with exponents in a box
/// (test oracle).
pub fn torus_h1_brute(d: i64, s: &[BigInt], radius: i64) -> Result<usize> {
    let field = Field::Quad(d);
    let ub = unit_group(&field, &places_above_set(d, s))?;
    let free: Vec<QuadElem> = ub.free.iter().map(|e| e.as_quad().unwrap().clone()).collect();
    let z = ub.torsion.as_quad().unwrap().clone();
    let mut elems = Vec::new();
    let r = free.len();
    let mut idx = vec![-radius; r];
    loop {
        for k in 0..ub.torsion_order as i64 {
            let mut x = z.pow(k);
            for (g, e) in free.iter().zip(&idx) {
                x = &x * &g.pow(*e);
            }
            elems.push(x);
        }
        let mut i = 0;
        while i < r {
            idx[i] += 1;
            if idx[i] <= radius {
                break;
            }
            idx[i] = -radius;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    let cocycles: Vec<QuadElem> = elems.iter().filter(|u| (*u * &u.conj()).is_one()).cloned().collect();
    let bset: Vec<QuadElem> = elems.iter().map(|v| v / &v.conj()).collect();
    let mut classes: Vec<QuadElem> = Vec::new();
    for u in cocycles {
        if !classes.iter().any(|c| bset.contains(&(&u / c))) {
            classes.push(u);
        }
    }
    Ok(classes.len())
}

/// H¹ for explicitly given torus data: a finite cyclic U of order `n` with σ
/// acting by u ↦ u^a (the trivial action is a = 1).
pub fn cyclic_h1(n: u64, a: i64) -> usize {
    let z1 = (0..n).filter(|&x| (x as i128 * (1 + a as i128)).rem_euclid(n as i128) == 0).count();
    let b1: std::collections::BTreeSet<i128> = (0..n).map(|x| (x as i128 * (1 - a as i128)).rem_euclid(n as i128)).collect();
    z1 / b1.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Poly, RatFn};

    fn q(n: i64) -> Elem {
        Elem::Q(BigRational::from_integer(BigInt::from(n)))
    }

    #[test]
    fn principal_divisor_examples() {
        let d = principal_divisor(&q(12), &[], false).unwrap();
        assert_eq!(d.to_string(), "2*p:2 + 1*p:3");
        let d = principal_divisor(&q(12), &[Place::prime(2)], false).unwrap();
        assert_eq!(d.to_string(), "1*p:3");
        let x = Elem::Quad(QuadElem::from_ints(-1, 2, 1));
        let d = principal_divisor(&x, &[], false).unwrap();
        assert_eq!(d.entries.len(), 1);
        assert_eq!(d.to_string(), "1*qprime:(5,2+w)@d=-1");
    }

    #[test]
    fn pic_examples() {
        assert!(pic_group(&Field::Q, &[]).unwrap().is_trivial());
        let p = pic_group(&Field::Quad(-5), &[]).unwrap();
        assert_eq!(p.invariants, vec![BigInt::from(2)]);
        let s = pic_trivializing_set(&Field::Quad(-5)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].to_string(), "qprime:(2,1+w)@d=-5");
        assert!(pic_group(&Field::Quad(-5), &s).unwrap().is_trivial());
        let s23 = pic_trivializing_set(&Field::Quad(-23)).unwrap();
        assert_eq!(s23.len(), 1);
        let Place::QuadPrime(q23) = &s23[0] else { panic!() };
        assert_eq!(q23.norm(), BigInt::from(2));
        assert!(pic_group(&Field::Quad(10), &[]).is_err());
    }

    #[test]
    fn unit_examples() {
        let u = unit_group(&Field::Q, &[Place::prime(2), Place::prime(3)]).unwrap();
        assert_eq!(u.torsion, q(-1));
        assert_eq!(u.free, vec![q(2), q(3)]);
        let b = Base::Fp(5);
        let u = unit_group(&Field::RatFn(b.clone()), &[Place::FinitePoly(Poly::t(b.clone()))]).unwrap();
        assert_eq!(u.torsion, Elem::from_int(&Field::RatFn(b.clone()), 2));
        assert_eq!(u.free, vec![Elem::F(RatFn::t(b))]);
        let p = primes_above(-1, &BigInt::from(5)).remove(0);
        let u = unit_group(&Field::Quad(-1), &[Place::QuadPrime(p)]).unwrap();
        assert_eq!(u.torsion, Elem::Quad(QuadElem::from_ints(-1, 0, 1)));
        assert_eq!(u.free, vec![Elem::Quad(QuadElem::from_ints(-1, 2, 1))]);
        assert!(u.independent().unwrap());
        let p2 = primes_above(-5, &BigInt::from(2)).remove(0);
        let u = unit_group(&Field::Quad(-5), &[Place::QuadPrime(p2)]).unwrap();
        assert_eq!(u.free, vec![Elem::Quad(QuadElem::from_ints(-5, 2, 0))]);
        let p3 = primes_above(-5, &BigInt::from(3)).remove(0);
        assert!(matches!(unit_group(&Field::Quad(-5), &[Place::QuadPrime(p3)]), Ok(_)));
        assert!(matches!(unit_group(&Field::Quad(-5), &[]), Err(Error::PicNontrivial(_))));
    }

    #[test]
    fn express_units() {
        let s = places_above_set(-1, &[BigInt::from(2), BigInt::from(5)]);
        let u = unit_group(&Field::Quad(-1), &s).unwrap();
        let x = Elem::Quad(QuadElem::from_ints(-1, 3, 4).scale(&BigRational::new(BigInt::one(), BigInt::from(8))));
        let e = u.express(&x).unwrap();
        let mut y = u.torsion.pow(e[0].to_i64().unwrap());
        for (g, k) in u.free.iter().zip(&e[1..]) {
            y = y.mul(&g.pow(k.to_i64().unwrap()));
        }
        assert_eq!(y, x);
        let r = unit_group(&Field::Quad(2), &places_above_set(2, &[BigInt::from(7)])).unwrap();
        let eps = r.free[0].clone();
        let z = eps.pow(3).mul(&r.free[1].pow(-2)).neg();
        let mut want = vec![BigInt::one(), BigInt::from(3), BigInt::from(-2)];
        want.resize(r.free.len() + 1, BigInt::zero());
        assert_eq!(r.express(&z).unwrap(), want);
    }

    #[test]
    fn torus_examples() {
        let t = torus_h1(-1, &[BigInt::from(2)]).unwrap();
        assert_eq!(t.order, BigInt::one());
        assert_eq!(torus_h1_brute(-1, &[BigInt::from(2)], 2).unwrap(), 1);
        let t5 = torus_h1(-5, &[BigInt::from(2)]).unwrap();
        assert_eq!(t5.order, BigInt::from(torus_h1_brute(-5, &[BigInt::from(2)], 2).unwrap()));
        assert_eq!(t5.order, BigInt::from(2));
        assert_eq!(cyclic_h1(2, 1), 2);
        for (d, s) in [(-1i64, vec![5i64]), (-2, vec![2, 3]), (-3, vec![7]), (2, vec![2]), (-1, vec![])] {
            let s: Vec<BigInt> = s.into_iter().map(BigInt::from).collect();
            let t = torus_h1(d, &s).unwrap();
            assert_eq!(t.order, BigInt::from(torus_h1_brute(d, &s, 2).unwrap()), "d={d} s={s:?}");
        }
    }
}
