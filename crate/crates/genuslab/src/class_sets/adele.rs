//! Rational adeles of GL_n, the lattices they glue, and the decomposition
//! g = k·h into an everywhere-integral adele and a global matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::Zero;

use super::dedekind;
use super::lattice::{lat_hnf, lat_intersect, lat_sum, scalar_lattice, PidElem};
use crate::arith::classgroup::ClassGroup;
use crate::arith::ideal::{primes_above, Ideal, PrimeIdeal};
use crate::arith::int::primes;
use crate::arith::linalg::{det, identity, inverse, is_identity, mat_mul, Mat};
use crate::arith::{Base, Poly, QuadElem, RatFn};
use crate::divisor::{pic_group, pic_trivializing_set};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::places::{support, valuation, Place};

/// The ring of S-integers of a global field: ℤ_S, k[t]_S or O_{ℚ(√d),S}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseRing {
    pub field: Field,
    pub s: Vec<Place>,
}

impl BaseRing {
    pub fn new(field: Field, mut s: Vec<Place>) -> Result<BaseRing> {
        for p in &s {
            if p.field() != field || p.is_infinite() {
                return Err(Error::Unsupported(format!("place {p} cannot be inverted in the ring of {field}")));
            }
        }
        s.sort();
        s.dedup();
        Ok(BaseRing { field, s })
    }

    pub fn integers(field: Field) -> BaseRing {
        BaseRing { field, s: vec![] }
    }

    /// ℤ_S and k[t]_S are principal; quadratic rings are treated as Dedekind.
    pub fn is_pid(&self) -> bool {
        !matches!(self.field, Field::Quad(_))
    }

    fn s_primes(&self) -> Vec<PrimeIdeal> {
        self.s
            .iter()
            .filter_map(|p| match p {
                Place::QuadPrime(q) => Some(q.clone()),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            Field::Q => write!(f, "Z")?,
            Field::RatFn(b) => write!(f, "{b}[t]")?,
            Field::Quad(d) => write!(f, "O(d={d})")?,
        }
        if !self.s.is_empty() {
            let inv: Vec<String> = self.s.iter().map(|p| format!("1/{p}")).collect();
            write!(f, "[{}]", inv.join(","))?;
        }
        Ok(())
    }
}

/// A point of GL_n(𝐀): finitely many components, identity elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdelePoint {
    pub ring: BaseRing,
    pub n: usize,
    pub entries: BTreeMap<Place, Mat<Elem>>,
}

impl AdelePoint {
    pub fn identity(ring: BaseRing, n: usize) -> AdelePoint {
        AdelePoint { ring, n, entries: BTreeMap::new() }
    }

    pub fn new(ring: BaseRing, n: usize, entries: impl IntoIterator<Item = (Place, Mat<Elem>)>) -> Result<AdelePoint> {
        let mut out = AdelePoint::identity(ring, n);
        for (p, g) in entries {
            out.set(p, g)?;
        }
        Ok(out)
    }

    /// Set the component at p. Components at inverted places are dropped.
    pub fn set(&mut self, p: Place, g: Mat<Elem>) -> Result<()> {
        if p.field() != self.ring.field || p.is_infinite() {
            return Err(Error::Unsupported(format!("place {p} is not a finite place of {}", self.ring.field)));
        }
        if g.len() != self.n || g.iter().any(|r| r.len() != self.n) || g.iter().flatten().any(|x| x.field() != self.ring.field) {
            return Err(Error::Unsupported(format!("component at {p} is not an {0}×{0} matrix over {1}", self.n, self.ring.field)));
        }
        if det(&g).is_zero() {
            return Err(Error::SingularComponent { place: p.to_string() });
        }
        if self.ring.s.contains(&p) || is_identity(&g) {
            self.entries.remove(&p);
        } else {
            self.entries.insert(p, g);
        }
        Ok(())
    }

    pub fn component(&self, p: &Place) -> Mat<Elem> {
        self.entries.get(p).cloned().unwrap_or_else(|| identity(self.n, &self.ring.field.one()))
    }

    pub fn support(&self) -> Vec<Place> {
        self.entries.keys().cloned().collect()
    }
}

/// A lattice N ⊂ Kⁿ. Over ℤ_S and k[t]_S it is free with the rows of `basis`
/// as basis; over quadratic rings it is given by a pseudo-basis N = ⊕ 𝔟ᵢvᵢ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lattice {
    Free { ring: BaseRing, basis: Mat<Elem> },
    Pseudo { ring: BaseRing, pseudo: Vec<(Ideal, Vec<QuadElem>)> },
}

impl Lattice {
    pub fn ring(&self) -> &BaseRing {
        match self {
            Lattice::Free { ring, .. } | Lattice::Pseudo { ring, .. } => ring,
        }
    }

    /// Steinitz ideal: (1) for free lattices, Π 𝔟ᵢ otherwise.
    pub fn steinitz(&self) -> Option<Ideal> {
        match self {
            Lattice::Free { .. } => None,
            Lattice::Pseudo { pseudo, .. } => Some(dedekind::steinitz_ideal(pseudo)),
        }
    }

    /// Class of the Steinitz ideal in Pic of the ring.
    pub fn steinitz_class(&self) -> Result<Vec<BigInt>> {
        match self.steinitz() {
            None => Ok(vec![]),
            Some(i) => Ok(pic_group(&self.ring().field, &self.ring().s)?.class_of_ideal(&i)),
        }
    }

    /// Rows with their ideal coefficients' valuations at p.
    fn local_rows(&self, p: &Place) -> (Mat<Elem>, Vec<i64>) {
        match self {
            Lattice::Free { basis, .. } => (basis.clone(), vec![0; basis.len()]),
            Lattice::Pseudo { pseudo, .. } => {
                let Place::QuadPrime(q) = p else { unreachable!("quadratic lattice at {p}") };
                let rows = pseudo.iter().map(|(_, v)| v.iter().cloned().map(Elem::Quad).collect()).collect();
                (rows, pseudo.iter().map(|(i, _)| q.ideal_valuation(i)).collect())
            }
        }
    }

    /// N_p = O_pⁿ·g exactly.
    pub fn localizes_to(&self, p: &Place, g: &Mat<Elem>) -> Result<bool> {
        let (v, e) = self.local_rows(p);
        let gi = inverse(g).ok_or(Error::SingularComponent { place: p.to_string() })?;
        let vi = inverse(&v).expect("lattice rows are independent");
        let ok = |m: &Mat<Elem>, bound: &dyn Fn(usize, usize) -> i64| -> Result<bool> {
            for (i, r) in m.iter().enumerate() {
                for (j, x) in r.iter().enumerate() {
                    if !x.is_zero() && valuation(x, p)? < bound(i, j) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        };
        // N ⊂ O_pⁿ g and O_pⁿ g ⊂ N
        Ok(ok(&mat_mul(&v, &gi), &|i, _| -e[i])? && ok(&mat_mul(g, &vi), &|_, j| e[j])?)
    }
}

fn to_pid<F: PidElem>(g: &Mat<Elem>, conv: &dyn Fn(&Elem) -> F) -> Mat<F> {
    g.iter().map(|r| r.iter().map(conv).collect()).collect()
}

fn glue_pid<F: PidElem>(a: &AdelePoint, conv: &dyn Fn(&Elem) -> F) -> Result<Mat<Elem>> {
    let one = a.ring.field.one();
    let minv = |m: &Mat<Elem>, p: &Place| -> Result<i64> {
        let mut lo = 0i64;
        for x in m.iter().flatten().filter(|x| !x.is_zero()) {
            lo = lo.min(valuation(x, p)?);
        }
        Ok(-lo)
    };
    // (place, g, m, k) with π^k O_pⁿ ⊂ O_pⁿ g ⊂ π^{-m} O_pⁿ
    let mut data = Vec::new();
    let mut l1 = one.clone();
    for (p, g) in &a.entries {
        let gi = inverse(g).ok_or(Error::SingularComponent { place: p.to_string() })?;
        let (m, k) = (minv(g, p)?, minv(&gi, p)?);
        l1 = l1.mul(&p.uniformizer().pow(-m));
        data.push((p, g, m, k));
    }
    // M_p = (rows(g_p) + π^k Rⁿ) ∩ π^{-m} Rⁿ is g_p at p and Rⁿ elsewhere.
    // Adding π^{k+m}·L₁ with L₁ = Π π_q^{-m_q} Rⁿ leaves p alone and makes
    // every other support place coarser than g_q there.
    let mut acc: Option<Mat<F>> = None;
    for (p, g, m, k) in data {
        let pi = p.uniformizer();
        let local = lat_sum(&lat_hnf(&to_pid(g, conv)), &scalar_lattice(&conv(&pi.pow(k)), a.n));
        let mp = lat_intersect(&local, &scalar_lattice(&conv(&pi.pow(-m)), a.n));
        let up = lat_sum(&mp, &scalar_lattice(&conv(&pi.pow(k + m).mul(&l1)), a.n));
        acc = Some(match acc {
            None => up,
            Some(x) => lat_intersect(&x, &up),
        });
    }
    let acc = acc.unwrap_or_else(|| scalar_lattice(&conv(&one), a.n));
    Ok(acc.iter().map(|r| r.iter().map(|x| x.to_elem()).collect()).collect())
}

fn quad_components(a: &AdelePoint) -> Vec<(PrimeIdeal, Mat<QuadElem>)> {
    a.entries
        .iter()
        .map(|(p, g)| {
            let Place::QuadPrime(q) = p else { unreachable!() };
            (q.clone(), g.iter().map(|r| r.iter().map(|x| x.as_quad().unwrap().clone()).collect()).collect())
        })
        .collect()
}

/// The lattice N with N_v = O_vⁿ·g_v for every finite place v ∉ S.
pub fn glue_lattice(a: &AdelePoint) -> Result<Lattice> {
    let ring = a.ring.clone();
    match &a.ring.field {
        Field::Q => {
            let basis = glue_pid(a, &|x: &Elem| x.as_rational().unwrap().clone())?;
            Ok(Lattice::Free { ring, basis })
        }
        Field::RatFn(_) => {
            let basis = glue_pid(a, &|x: &Elem| x.as_ratfn().unwrap().clone())?;
            Ok(Lattice::Free { ring, basis })
        }
        Field::Quad(d) => {
            let z = dedekind::glue(*d, a.n, &quad_components(a));
            Ok(Lattice::Pseudo { ring, pseudo: dedekind::pseudo_basis(*d, &z) })
        }
    }
}

/// g = k·h with h ∈ GL_n(K) and k_v ∈ GL_n(O_v) for all v ∉ S. Off the
/// support of g, k_v = h⁻¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub h: Mat<Elem>,
    pub k: BTreeMap<Place, Mat<Elem>>,
    pub k_default: Mat<Elem>,
}

fn is_local_unit_matrix(m: &Mat<Elem>, p: &Place) -> Result<bool> {
    for x in m.iter().flatten() {
        if !x.is_zero() && valuation(x, p)? < 0 {
            return Ok(false);
        }
    }
    Ok(valuation(&det(m), p)? == 0)
}

/// Places where some entry of m has negative valuation.
pub(crate) fn polar_places(m: &Mat<Elem>) -> Result<Vec<Place>> {
    let mut out = Vec::new();
    // over the PIDs only the common denominator needs factoring
    let den = match &m[0][0] {
        Elem::Q(_) => Some(Elem::Q(BigRational::from_integer(
            m.iter().flatten().fold(BigInt::from(1), |acc, x| acc.lcm(x.as_rational().unwrap().denom())),
        ))),
        Elem::F(r) => Some(Elem::F(RatFn::from_poly(
            m.iter().flatten().fold(Poly::one(r.base().clone()), |acc, x| {
                let d = x.as_ratfn().unwrap().den();
                (&acc * d).exact_div(&acc.gcd(d))
            }),
        ))),
        Elem::Quad(_) => None,
    };
    if let Some(den) = den {
        for (p, v) in support(&den)? {
            if v > 0 && !p.is_infinite() {
                out.push(p);
            }
        }
        return Ok(out);
    }
    for x in m.iter().flatten().filter(|x| !x.is_zero()) {
        for (p, v) in support(x)? {
            if v < 0 && !p.is_infinite() && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

impl Decomposition {
    /// Exact re-verification of k·h = g and integrality of every k_v.
    pub fn verify(&self, a: &AdelePoint) -> Result<bool> {
        for (p, g) in &a.entries {
            let k = &self.k[p];
            if mat_mul(k, &self.h) != *g || !is_local_unit_matrix(k, p)? {
                return Ok(false);
            }
        }
        if !is_identity(&mat_mul(&self.k_default, &self.h)) {
            return Ok(false);
        }
        // h ∈ GL_n(O_v) off the support: only places where h or h⁻¹ has a pole
        // can fail
        let mut bad = polar_places(&self.h)?;
        bad.extend(polar_places(&self.k_default)?);
        for p in bad {
            if !a.entries.contains_key(&p) && !a.ring.s.contains(&p) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// k_v at an arbitrary place.
    pub fn k_at(&self, p: &Place) -> Mat<Elem> {
        self.k.get(p).cloned().unwrap_or_else(|| self.k_default.clone())
    }
}

/// Split g into an integral adele and a global matrix. Over quadratic rings
/// this fails with `NonPrincipalClass` when the Steinitz class of the glued
/// lattice is nontrivial in Pic.
pub fn decompose_adele(a: &AdelePoint) -> Result<Decomposition> {
    let h = match glue_lattice(a)? {
        Lattice::Free { basis, .. } => basis,
        Lattice::Pseudo { ring, pseudo } => {
            let Field::Quad(d) = ring.field else { unreachable!() };
            let cl = ClassGroup::compute(d)?;
            let b = dedekind::free_basis(&cl, &ring.s_primes(), &pseudo)?;
            b.into_iter().map(|r| r.into_iter().map(Elem::Quad).collect()).collect()
        }
    };
    let hi = inverse(&h).expect("basis matrix is invertible");
    let k = a.entries.iter().map(|(p, g)| (p.clone(), mat_mul(g, &hi))).collect();
    let dec = Decomposition { h, k, k_default: hi };
    if !dec.verify(a)? {
        return Err(Error::Unsupported("decomposition failed verification".into()));
    }
    Ok(dec)
}

/// A description of Cl(GL_n, K, V∖S).
#[derive(Clone, Debug)]
pub struct ClassSet {
    pub ring: BaseRing,
    pub n: usize,
    pub size: BigInt,
    /// Cyclic invariants of the Picard group it is in bijection with.
    pub invariants: Vec<BigInt>,
    pub representatives: Vec<AdelePoint>,
    /// A finite set of places whose inversion makes the class set trivial.
    pub witness_s: Vec<Place>,
}

fn all_elements(inv: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![]];
    for m in inv {
        let mut next = Vec::new();
        for v in &out {
            let mut k = BigInt::zero();
            while &k < m {
                let mut w = v.clone();
                w.push(k.clone());
                next.push(w);
                k += 1;
            }
        }
        out = next;
    }
    out
}

fn diag_adele(ring: &BaseRing, n: usize, p: &PrimeIdeal) -> Result<AdelePoint> {
    let field = ring.field.clone();
    let mut g = identity(n, &field.one());
    g[0][0] = Elem::Quad(p.uniformizer());
    AdelePoint::new(ring.clone(), n, [(Place::QuadPrime(p.clone()), g)])
}

/// Class set of GL_n over the ring, via the Steinitz bijection with Pic.
pub fn class_set_gln(ring: &BaseRing, n: usize) -> Result<ClassSet> {
    if n == 0 {
        return Err(Error::Unsupported("n must be positive".into()));
    }
    let pic = pic_group(&ring.field, &ring.s)?;
    let witness_s = pic_trivializing_set(&ring.field)?;
    let mut representatives = vec![AdelePoint::identity(ring.clone(), n)];
    if let Field::Quad(d) = ring.field {
        let targets: Vec<Vec<BigInt>> = all_elements(&pic.invariants).into_iter().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
        let mut found: BTreeMap<Vec<BigInt>, PrimeIdeal> = BTreeMap::new();
        for p in primes().take(5_000) {
            for q in primes_above(d, &BigInt::from(p)) {
                if ring.s.contains(&Place::QuadPrime(q.clone())) {
                    continue;
                }
                let c = pic.class_of_ideal(&q.ideal);
                if targets.contains(&c) {
                    found.entry(c).or_insert(q);
                }
            }
            if found.len() == targets.len() {
                break;
            }
        }
        for t in &targets {
            let q = found.get(t).ok_or_else(|| Error::GeneratorSearchFailed { ideal: format!("prime in class {t:?}") })?;
            representatives.push(diag_adele(ring, n, q)?);
        }
    }
    Ok(ClassSet { ring: ring.clone(), n, size: pic.order(), invariants: pic.invariants, representatives, witness_s })
}

/// Rational matrix from (numerator, denominator) pairs.
pub fn q_matrix(rows: &[&[(i64, i64)]]) -> Mat<Elem> {
    rows.iter().map(|r| r.iter().map(|&(a, b)| Elem::Q(BigRational::new(BigInt::from(a), BigInt::from(b)))).collect()).collect()
}

/// Polynomial matrix from coefficient lists (constant term first).
pub fn ratfn_matrix(base: &Base, rows: &[&[&[i64]]]) -> Mat<Elem> {
    rows.iter()
        .map(|r| r.iter().map(|c| Elem::F(RatFn::from_poly(Poly::from_ints(base.clone(), c)))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn qi(rows: &[&[i64]]) -> Mat<Elem> {
        rows.iter().map(|r| r.iter().map(|&x| Elem::from_int(&Field::Q, x)).collect()).collect()
    }

    fn z() -> BaseRing {
        BaseRing::integers(Field::Q)
    }

    #[test]
    fn glue_examples() {
        let id = AdelePoint::identity(z(), 2);
        assert_eq!(glue_lattice(&id).unwrap(), Lattice::Free { ring: z(), basis: qi(&[&[1, 0], &[0, 1]]) });
        let g = AdelePoint::new(z(), 2, [(Place::prime(5), qi(&[&[5, 0], &[0, 1]]))]).unwrap();
        let Lattice::Free { basis, .. } = glue_lattice(&g).unwrap() else { panic!() };
        assert_eq!(basis, qi(&[&[5, 0], &[0, 1]]));
        let g = AdelePoint::new(z(), 2, [(Place::prime(2), qi(&[&[2, 0], &[0, 1]])), (Place::prime(3), qi(&[&[1, 0], &[0, 3]]))]).unwrap();
        let Lattice::Free { basis, .. } = glue_lattice(&g).unwrap() else { panic!() };
        assert_eq!(basis, qi(&[&[2, 0], &[0, 3]]));
    }

    #[test]
    fn glue_is_local() {
        let g5 = q_matrix(&[&[(3, 25), (1, 1)], &[(7, 1), (10, 1)]]);
        let g2 = q_matrix(&[&[(1, 2), (0, 1)], &[(3, 1), (4, 1)]]);
        let a = AdelePoint::new(z(), 2, [(Place::prime(5), g5.clone()), (Place::prime(2), g2.clone())]).unwrap();
        let n = glue_lattice(&a).unwrap();
        assert!(n.localizes_to(&Place::prime(5), &g5).unwrap());
        assert!(n.localizes_to(&Place::prime(2), &g2).unwrap());
        let id = identity(2, &Elem::from_int(&Field::Q, 1));
        for p in [3, 7, 11] {
            assert!(n.localizes_to(&Place::prime(p), &id).unwrap());
        }
        assert!(!n.localizes_to(&Place::prime(5), &id).unwrap());
        let dec = decompose_adele(&a).unwrap();
        assert!(dec.verify(&a).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let id = AdelePoint::identity(z(), 3);
        let dec = decompose_adele(&id).unwrap();
        assert!(is_identity(&dec.h) && dec.k.is_empty());
        let g = AdelePoint::new(z(), 2, [(Place::prime(5), qi(&[&[5, 0], &[0, 1]]))]).unwrap();
        let dec = decompose_adele(&g).unwrap();
        assert_eq!(dec.h, qi(&[&[5, 0], &[0, 1]]));
        assert!(is_identity(&dec.k[&Place::prime(5)]));
        let r = BaseRing::integers(Field::Quad(-5));
        let p2 = primes_above(-5, &BigInt::from(2)).remove(0);
        let a = diag_adele(&r, 1, &p2).unwrap();
        match decompose_adele(&a) {
            Err(Error::NonPrincipalClass { ideal }) => assert_eq!(ideal, "(2, 1 + w)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn function_field_decomposition() {
        let b = Base::Fp(5);
        let r = BaseRing::integers(Field::RatFn(b.clone()));
        let p = crate::arith::Poly::from_ints(b.clone(), &[1, 1]);
        let g = ratfn_matrix(&b, &[&[&[0, 0, 1], &[2]], &[&[1], &[1, 1]]]);
        let a = AdelePoint::new(r, 2, [(Place::FinitePoly(p), g)]).unwrap();
        let dec = decompose_adele(&a).unwrap();
        assert!(dec.verify(&a).unwrap());
    }

    #[test]
    fn quadratic_glue_is_local() {
        let d = -5;
        let r = BaseRing::integers(Field::Quad(d));
        let q = |x: i64, y: i64| Elem::Quad(QuadElem::from_ints(d, x, y));
        let h = |x: i64, y: i64, den: i64| Elem::Quad(QuadElem::from_ints(d, x, y).scale(&BigRational::new(1.into(), den.into())));
        let p2 = Place::QuadPrime(primes_above(d, &BigInt::from(2)).remove(0));
        let p3 = Place::QuadPrime(primes_above(d, &BigInt::from(3)).remove(0));
        let g2 = vec![vec![h(1, 1, 2), q(0, 0)], vec![q(3, 0), q(1, -1)]];
        let g3 = vec![vec![q(1, 0), h(2, 0, 9)], vec![q(0, 0), q(7, 1)]];
        let a = AdelePoint::new(r, 2, [(p2.clone(), g2.clone()), (p3.clone(), g3.clone())]).unwrap();
        let n = glue_lattice(&a).unwrap();
        assert!(n.localizes_to(&p2, &g2).unwrap());
        assert!(n.localizes_to(&p3, &g3).unwrap());
        let id = identity(2, &q(1, 0));
        for p in [5i64, 7, 29] {
            for pp in primes_above(d, &BigInt::from(p)) {
                assert!(n.localizes_to(&Place::QuadPrime(pp), &id).unwrap());
            }
        }
        assert!(!n.localizes_to(&p2, &id).unwrap());
    }

    #[test]
    fn class_set_examples() {
        let cs = class_set_gln(&z(), 4).unwrap();
        assert_eq!(cs.size, BigInt::one());
        assert!(cs.witness_s.is_empty());
        let r = BaseRing::integers(Field::Quad(-5));
        let cs = class_set_gln(&r, 2).unwrap();
        assert_eq!(cs.size, BigInt::from(2));
        assert_eq!(cs.representatives.len(), 2);
        assert!(decompose_adele(&cs.representatives[1]).is_err());
        let r2 = BaseRing::new(Field::Quad(-5), cs.witness_s.clone()).unwrap();
        assert_eq!(class_set_gln(&r2, 2).unwrap().size, BigInt::one());
        // 𝔭₃ is in the nontrivial class, which S kills
        let p3 = primes_above(-5, &BigInt::from(3)).remove(0);
        let a = diag_adele(&r2, 1, &p3).unwrap();
        assert!(decompose_adele(&a).unwrap().verify(&a).unwrap());
    }
}
