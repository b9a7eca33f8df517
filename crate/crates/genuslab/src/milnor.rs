//! Mod-2 Milnor K-theory: tame residues of symbols and the reduction of a
//! sum Σ (a, bᵢ, cᵢ) to one with every cᵢ a unit away from S.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::arith::{Base, Poly, RatFn};
use crate::brauer::{ramification_set, BrPlace, PlaceSet};
use crate::budget;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::places::{residue, support, valuation, Place, ResidueElem, ResidueField};

/// t(c₁, …, c_r) = Σ (a, bᵢ, cᵢ) with a and the bᵢ units on V′.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolFamily {
    pub a: Elem,
    pub b: Vec<Elem>,
    pub c: Vec<Elem>,
    pub vp: PlaceSet,
}

impl SymbolFamily {
    pub fn new(a: Elem, b: Vec<Elem>, c: Vec<Elem>, vp: PlaceSet) -> Result<SymbolFamily> {
        if b.is_empty() || b.len() != c.len() {
            return Err(Error::Unsupported("need r ≥ 1 and as many b's as c's".into()));
        }
        let field = a.field();
        match &field {
            Field::Q | Field::RatFn(Base::Q) => {}
            f => return Err(Error::Unsupported(format!("symbol families over {f}"))),
        }
        if b.iter().chain(&c).any(|x| x.field() != field) {
            return Err(Error::Unsupported("entries from different fields".into()));
        }
        for (name, x) in std::iter::once(("a".to_string(), &a)).chain(b.iter().enumerate().map(|(i, x)| (format!("b{}", i + 1), x))) {
            if x.is_zero() {
                return Err(Error::ZeroElement);
            }
            if let Some((p, _)) = support(x)?.into_iter().find(|(p, _)| vp.contains(p)) {
                return Err(Error::NonUnitCoefficient { entry: name, place: p.to_string() });
            }
        }
        if c.iter().any(|x| x.is_zero()) {
            return Err(Error::ZeroElement);
        }
        Ok(SymbolFamily { a, b, c, vp })
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// V(c₁, …, c_r): places of V′ where some cᵢ is not a unit.
    pub fn bad_places(&self) -> Result<Vec<Place>> {
        let mut out = Vec::new();
        for c in &self.c {
            for (p, _) in support(c)? {
                if self.vp.contains(&p) && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// A square class in a residue field, with its triviality when decidable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K1Class {
    pub place: Place,
    pub class: ResidueElem,
    pub trivial: Option<bool>,
}

fn check_residue_char(v: &Place) -> Result<ResidueField> {
    let rf = v.residue_field()?;
    if rf.characteristic() == BigInt::from(2) {
        return Err(Error::EvenResidueChar);
    }
    Ok(rf)
}

/// ∂_v(a, b) = class of (−1)^{v(a)v(b)} a^{v(b)} b^{−v(a)} in κ(v)^×/squares.
pub fn tame_residue_k2(a: &Elem, b: &Elem, v: &Place) -> Result<K1Class> {
    check_residue_char(v)?;
    let u = crate::brauer::tame_unit(a, b, v)?;
    let class = residue(&u, v)?;
    let trivial = match class.is_square() {
        Ok(s) => Some(s),
        Err(Error::UnsupportedPlaceDegree { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(K1Class { place: v.clone(), class, trivial })
}

/// ∂_v of t(c₁, …, c_r): the quaternion class (ā, b̄_J) over κ(v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueK2 {
    pub place: Place,
    pub residue_field: ResidueField,
    pub a_bar: ResidueElem,
    pub b_bar: ResidueElem,
    pub j: Vec<usize>,
    /// `None` when undecided (residue field a number field of degree ≥ 2).
    pub trivial: Option<bool>,
    /// Ramification of (ā, b̄_J) when κ(v) = ℚ.
    pub ramification: Vec<BrPlace>,
}

fn residue_one(rf: &ResidueField) -> ResidueElem {
    match rf {
        ResidueField::Fp(p) => ResidueElem::Fp { p: p.clone(), v: BigInt::from(1) },
        ResidueField::Q => ResidueElem::Q(BigRational::from_integer(BigInt::from(1))),
        ResidueField::Ext(m) => ResidueElem::Ext { modulus: m.clone(), v: Poly::one(m.base().clone()) },
    }
}

pub fn residue_k3_family(f: &SymbolFamily, v: &Place) -> Result<ResidueK2> {
    let rf = check_residue_char(v)?;
    let unit_res = |name: String, x: &Elem| -> Result<ResidueElem> {
        if valuation(x, v)? != 0 {
            return Err(Error::NonUnitCoefficient { entry: name, place: v.to_string() });
        }
        residue(x, v)
    };
    let a_bar = unit_res("a".into(), &f.a)?;
    let mut b_bar = residue_one(&rf);
    let mut j = Vec::new();
    for (i, (b, c)) in f.b.iter().zip(&f.c).enumerate() {
        let bi = unit_res(format!("b{}", i + 1), b)?;
        if valuation(c, v)?.rem_euclid(2) == 1 {
            j.push(i);
            b_bar = b_bar.mul(&bi);
        }
    }
    let mut ramification = Vec::new();
    let trivial = if j.is_empty() {
        Some(true)
    } else {
        match (&a_bar, &b_bar) {
            (ResidueElem::Q(x), ResidueElem::Q(y)) => {
                ramification = ramification_set(&Elem::Q(x.clone()), &Elem::Q(y.clone()))?;
                Some(ramification.is_empty())
            }
            // Brauer groups of finite fields vanish
            (ResidueElem::Fp { .. }, _) => Some(true),
            (ResidueElem::Ext { modulus, .. }, _) if modulus.base().characteristic() != 0 => Some(true),
            _ => None,
        }
    };
    Ok(ResidueK2 { place: v.clone(), residue_field: rf, a_bar, b_bar, j, trivial, ramification })
}

/// x₀² − a x₁² − b x₂² + ab x₃² = value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormCertificate {
    pub a: Elem,
    pub b: Elem,
    pub x: [Elem; 4],
    pub value: Elem,
}

/// Reduced norm form of the quaternion algebra (a, b).
pub fn reduced_norm(a: &Elem, b: &Elem, x: &[Elem; 4]) -> Elem {
    let sq = |e: &Elem| e.mul(e);
    sq(&x[0]).sub(&a.mul(&sq(&x[1]))).sub(&b.mul(&sq(&x[2]))).add(&a.mul(b).mul(&sq(&x[3])))
}

impl NormCertificate {
    pub fn verify(&self) -> bool {
        reduced_norm(&self.a, &self.b, &self.x) == self.value
    }

    fn square(a: &Elem, b: &Elem, s: &Elem) -> NormCertificate {
        let z = a.field().zero();
        NormCertificate { a: a.clone(), b: b.clone(), x: [s.clone(), z.clone(), z.clone(), z], value: s.mul(s) }
    }
}

impl fmt::Display for NormCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^2 - ({})({})^2 - ({})({})^2 + ({})({})({})^2 = {}", self.x[0], self.a, self.x[1], self.b, self.x[2], self.a, self.b, self.x[3], self.value)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Normalize,
    Eliminate,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Normalize => "normalize",
            Phase::Eliminate => "eliminate",
        })
    }
}

/// One reduction step: the indices touched were divided by `pi_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub place: Place,
    pub phase: Phase,
    pub indices: Vec<usize>,
    pub pi_v: Elem,
    pub certificate: NormCertificate,
    /// True when the certificate came from the generic search rather than a
    /// global splitting of the algebra.
    pub searched: bool,
}

/// Divide each cᵢ by an even power of π_v so that v(cᵢ) ∈ {0, 1}.
pub fn normalize_valuations(f: &SymbolFamily, v: &Place) -> Result<(SymbolFamily, Vec<Step>)> {
    let pi = v.uniformizer();
    let mut out = f.clone();
    let mut steps = Vec::new();
    for i in 0..f.c.len() {
        let m = valuation(&f.c[i], v)?.div_euclid(2);
        if m == 0 {
            continue;
        }
        let s = pi.pow(m);
        let cert = NormCertificate::square(&f.a, &f.b[i], &s);
        out.c[i] = f.c[i].div(&cert.value);
        steps.push(Step { place: v.clone(), phase: Phase::Normalize, indices: vec![i], pi_v: cert.value.clone(), certificate: cert, searched: false });
    }
    Ok((out, steps))
}

fn sqrt_rational(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

fn sqrt_elem(x: &Elem) -> Option<Elem> {
    match x {
        Elem::Q(q) => sqrt_rational(q).map(Elem::Q),
        Elem::F(r) => {
            let c = r.as_constant()?;
            sqrt_rational(&c).map(|s| Elem::F(RatFn::constant(r.base().clone(), s)))
        }
        Elem::Quad(_) => None,
    }
}

fn const_rational(x: &Elem) -> Option<BigRational> {
    match x {
        Elem::Q(q) => Some(q.clone()),
        Elem::F(r) => r.as_constant(),
        Elem::Quad(_) => None,
    }
}

fn embed(field: &Field, q: BigRational) -> Elem {
    match field {
        Field::RatFn(b) => Elem::F(RatFn::constant(b.clone(), q)),
        _ => Elem::Q(q),
    }
}

/// (y₀, y₁) with y₀² − p y₁² = q, i.e. q a norm from K(√p).
fn norm_from(p: &Elem, q: &Elem) -> Option<(Elem, Elem)> {
    let field = p.field();
    let two = Elem::from_int(&field, 2);
    if let Some(s) = sqrt_elem(p) {
        // (y₀ − s y₁)(y₀ + s y₁) = q
        let one = field.one();
        return Some((q.add(&one).div(&two), q.sub(&one).div(&two.mul(&s))));
    }
    if let Some(s) = sqrt_elem(q) {
        return Some((s, field.zero()));
    }
    let (pr, qr) = (const_rational(p)?, const_rational(q)?);
    // X² − p′Y² = q′Z² with p′ = p·dp², q′ = q·dq²
    let (dp, dq) = (pr.denom().clone(), qr.denom().clone());
    let pp = (pr.numer() * &dp).to_i128()?;
    let qq = (qr.numer() * &dq).to_i128()?;
    let h = budget::norm_search_height() as i128;
    if pp.abs() > 1 << 40 || qq.abs() > 1 << 40 {
        return None;
    }
    for z in 1..=h {
        for y in 0..=h {
            let t = qq * z * z + pp * y * y;
            if t < 0 {
                continue;
            }
            let x = t.sqrt();
            if x * x == t {
                let zd = BigRational::from_integer(BigInt::from(z) * &dq);
                let y0 = BigRational::from_integer(BigInt::from(x)) / &zd;
                let y1 = BigRational::from_integer(BigInt::from(y) * &dp) / &zd;
                return Some((embed(&field, y0), embed(&field, y1)));
            }
        }
    }
    None
}

/// Certificate for π as a reduced norm of (a, b) when (a, b) is split
/// globally by an explicit norm representation.
fn split_certificate(a: &Elem, b: &Elem, pi: &Elem) -> Option<NormCertificate> {
    let field = a.field();
    let two = Elem::from_int(&field, 2);
    let one = field.one();
    let x0 = pi.add(&one).div(&two);
    let w = pi.sub(&one).div(&two);
    let z = field.zero();
    let x = if let Some((y0, y1)) = norm_from(a, b) {
        // x₀² − b·N(x₂ + x₃√a) with x₂ + x₃√a = w·conj(y)/b
        [x0, z.clone(), w.mul(&y0).div(b), w.mul(&y1).div(b).neg()]
    } else if let Some((y0, y1)) = norm_from(b, a) {
        [x0, w.mul(&y0).div(a), z.clone(), w.mul(&y1).div(a).neg()]
    } else {
        return None;
    };
    let cert = NormCertificate { a: a.clone(), b: b.clone(), x, value: pi.clone() };
    debug_assert!(cert.verify());
    Some(cert)
}

fn acceptable(value: &Elem, v: &Place, vp: &PlaceSet) -> Result<bool> {
    if value.is_zero() || valuation(value, v)? != 1 {
        return Ok(false);
    }
    Ok(support(value)?.iter().all(|(p, _)| p == v || !vp.contains(p)))
}

fn candidate_pool(field: &Field, h: i64) -> Vec<Elem> {
    match field {
        Field::RatFn(base) => {
            let mut out = Vec::new();
            for c1 in -h..=h {
                for c0 in -h..=h {
                    out.push(Elem::poly(Poly::from_ints(base.clone(), &[c0, c1])));
                }
            }
            out
        }
        _ => (-h..=h).map(|n| Elem::from_int(field, n)).collect(),
    }
}

/// Bounded search for x with Nrd(x) of valuation 1 at v and a unit on V′ ∖ {v}.
fn search_certificate(a: &Elem, b: &Elem, v: &Place, vp: &PlaceSet, index: usize) -> Result<NormCertificate> {
    let field = a.field();
    let limit = budget::norm_search_candidates();
    let mut h = 1;
    let per_coord = |h: i64| match field {
        Field::RatFn(_) => (2 * h + 1) * (2 * h + 1),
        _ => 2 * h + 1,
    };
    while (per_coord(h + 1) as u64).pow(4) <= limit {
        h += 1;
    }
    let pool = candidate_pool(&field, h);
    let n = pool.len();
    let mut idx = [0usize; 4];
    let mut tried = 0u64;
    loop {
        let x = [pool[idx[0]].clone(), pool[idx[1]].clone(), pool[idx[2]].clone(), pool[idx[3]].clone()];
        let value = reduced_norm(a, b, &x);
        if acceptable(&value, v, vp)? {
            return Ok(NormCertificate { a: a.clone(), b: b.clone(), x, value });
        }
        tried += 1;
        let mut k = 0;
        while k < 4 {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == 4 || tried >= limit {
            return Err(Error::NormSearchFailed { place: v.to_string(), index, budget: limit });
        }
    }
}

/// Certified reduced norm π of (a, b) with v(π) = 1 and π a unit on V′ ∖ {v}.
pub fn find_norm_uniformizer(a: &Elem, b: &Elem, v: &Place, vp: &PlaceSet, index: usize) -> Result<(NormCertificate, bool)> {
    if let Some(c) = split_certificate(a, b, &v.uniformizer()) {
        return Ok((c, false));
    }
    search_certificate(a, b, v, vp, index).map(|c| (c, true))
}

/// Remove v from V(c₁, …, c_r). The family must be normalized at v.
pub fn eliminate_place(f: &SymbolFamily, v: &Place) -> Result<(SymbolFamily, Option<Step>)> {
    for c in &f.c {
        let k = valuation(c, v)?;
        if !(0..=1).contains(&k) {
            return Err(Error::Unsupported(format!("family not normalized at {v} (valuation {k})")));
        }
    }
    let res = residue_k3_family(f, v)?;
    if res.j.is_empty() {
        return Ok((f.clone(), None));
    }
    match res.trivial {
        Some(true) => {}
        Some(false) => return Err(Error::RamifiedAtPlace { place: v.to_string() }),
        None => return Err(Error::UnsupportedPlaceDegree { place: v.to_string(), degree: v.degree() as usize }),
    }
    let b_j = res.j.iter().fold(f.field().one(), |acc, &i| acc.mul(&f.b[i]));
    let (cert, searched) = find_norm_uniformizer(&f.a, &b_j, v, &f.vp, res.j[0])?;
    let before = f.bad_places()?;
    let mut out = f.clone();
    for &i in &res.j {
        out.c[i] = f.c[i].div(&cert.value);
    }
    let after = out.bad_places()?;
    assert!(!after.contains(v) && after.iter().all(|p| before.contains(p)), "support must shrink at {v}");
    let step = Step { place: v.clone(), phase: Phase::Eliminate, indices: res.j, pi_v: cert.value.clone(), certificate: cert, searched };
    Ok((out, Some(step)))
}

/// Output of [`reduce_to_units`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub family: SymbolFamily,
    pub steps: Vec<Step>,
    /// Places where a certificate had to be searched for because the
    /// algebra (a, b_J) is not split by an explicit norm representation.
    pub condition_t_used_at: Vec<Place>,
}

impl Reduction {
    /// Support of each output entry; all of it lies outside V′.
    pub fn s_parts(&self) -> Result<Vec<Vec<(Place, i64)>>> {
        self.family.c.iter().map(support).collect()
    }
}

/// Rewrite the family so that every cᵢ is a unit on V′, logging certificates.
pub fn reduce_to_units(f: &SymbolFamily) -> Result<Reduction> {
    let places = f.bad_places()?;
    if let Some(p) = places.iter().find(|p| p.degree() > 1) {
        return Err(Error::UnsupportedPlaceDegree { place: p.to_string(), degree: p.degree() as usize });
    }
    let mut cur = f.clone();
    let mut steps = Vec::new();
    let mut used = Vec::new();
    for v in &places {
        let (g, mut s) = normalize_valuations(&cur, v)?;
        steps.append(&mut s);
        let (g, st) = eliminate_place(&g, v)?;
        if let Some(st) = st {
            if st.searched {
                used.push(v.clone());
            }
            steps.push(st);
        }
        cur = g;
    }
    assert!(cur.bad_places()?.is_empty());
    Ok(Reduction { family: cur, steps, condition_t_used_at: used })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Elem {
        Elem::Q(BigRational::from_integer(BigInt::from(n)))
    }

    fn qt(coeffs: &[i64]) -> Elem {
        Elem::poly(Poly::from_ints(Base::Q, coeffs))
    }

    fn cq(n: i64) -> Elem {
        Elem::from_int(&Field::RatFn(Base::Q), n)
    }

    fn at(coeffs: &[i64]) -> Place {
        Place::FinitePoly(Poly::from_ints(Base::Q, coeffs))
    }

    fn fam(a: i64, b: i64, c: Elem) -> SymbolFamily {
        SymbolFamily::new(cq(a), vec![cq(b)], vec![c], PlaceSet::default()).unwrap()
    }

    #[test]
    fn tame_residue_examples() {
        let f7 = Base::Fp(7);
        let t = Elem::poly(Poly::t(f7.clone()));
        let tm1 = Elem::poly(Poly::from_ints(f7.clone(), &[-1, 1]));
        let v = Place::FinitePoly(Poly::t(f7));
        assert_eq!(tame_residue_k2(&t, &tm1, &v).unwrap().trivial, Some(false));
        let f5 = Base::Fp(5);
        let t = Elem::poly(Poly::t(f5.clone()));
        let tm1 = Elem::poly(Poly::from_ints(f5.clone(), &[-1, 1]));
        let v = Place::FinitePoly(Poly::t(f5.clone()));
        assert_eq!(tame_residue_k2(&t, &tm1, &v).unwrap().trivial, Some(true));
        let u = Elem::from_int(&Field::RatFn(f5), 2);
        assert_eq!(tame_residue_k2(&u, &tm1, &v).unwrap().trivial, Some(true));
        let f2 = Base::Fp(2);
        let t2 = Elem::poly(Poly::t(f2.clone()));
        assert_eq!(tame_residue_k2(&t2, &t2, &Place::FinitePoly(Poly::t(f2))), Err(Error::EvenResidueChar));
    }

    #[test]
    fn tame_residue_is_antisymmetric_mod_squares() {
        let b = Base::Fp(11);
        let v = Place::FinitePoly(Poly::from_ints(b.clone(), &[3, 1]));
        let xs: Vec<Elem> = [[2i64, 1, 0], [6, 5, 1], [3, 1, 0], [5, 0, 0], [0, 3, 1]].iter().map(|c| Elem::poly(Poly::from_ints(b.clone(), c))).collect();
        for x in &xs {
            for y in &xs {
                let r1 = tame_residue_k2(x, y, &v).unwrap();
                let r2 = tame_residue_k2(y, x, &v).unwrap();
                assert_eq!(r1.class.mul(&r2.class).is_square().unwrap(), true);
            }
        }
    }

    #[test]
    fn residue_family_examples() {
        let v = at(&[0, 1]);
        assert_eq!(residue_k3_family(&fam(-1, 2, qt(&[0, 1])), &v).unwrap().trivial, Some(true));
        let r = residue_k3_family(&fam(-1, -1, qt(&[0, 1])), &v).unwrap();
        assert_eq!(r.trivial, Some(false));
        assert_eq!(r.j, vec![0]);
        let r = residue_k3_family(&fam(-1, -1, qt(&[1, 1])), &v).unwrap();
        assert!(r.j.is_empty());
        assert_eq!(r.trivial, Some(true));
        let bad = SymbolFamily::new(cq(-1), vec![qt(&[0, 1])], vec![cq(1)], PlaceSet::default());
        assert!(matches!(bad, Err(Error::NonUnitCoefficient { .. })));
        // degree 2 place over ℚ(t) is undecided
        let r = residue_k3_family(&fam(-1, -1, qt(&[1, 0, 1])), &at(&[1, 0, 1])).unwrap();
        assert_eq!(r.trivial, None);
    }

    #[test]
    fn normalize_examples() {
        let v = at(&[-1, 1]);
        let tm1 = qt(&[-1, 1]);
        let (g, steps) = normalize_valuations(&fam(1, 1, tm1.pow(3)), &v).unwrap();
        assert_eq!(g.c[0], tm1);
        assert_eq!(steps[0].certificate.x[0], tm1);
        assert!(steps[0].certificate.verify());
        let t = qt(&[0, 1]);
        let (g, _) = normalize_valuations(&fam(-1, 2, t.pow(2)), &at(&[0, 1])).unwrap();
        assert!(g.c[0].is_one());
        let f = fam(-1, 2, t.clone());
        assert_eq!(normalize_valuations(&f, &at(&[0, 1])).unwrap(), (f, vec![]));
    }

    #[test]
    fn eliminate_examples() {
        let v = at(&[0, 1]);
        let (g, st) = eliminate_place(&fam(-1, 2, qt(&[0, 1])), &v).unwrap();
        assert!(g.c[0].is_one());
        let st = st.unwrap();
        assert!(st.certificate.verify());
        assert!(!st.searched);
        assert!(matches!(eliminate_place(&fam(-1, -1, qt(&[0, 1])), &v), Err(Error::RamifiedAtPlace { .. })));
        let f = fam(-1, -1, qt(&[1, 1]));
        assert_eq!(eliminate_place(&f, &v).unwrap(), (f, None));
    }

    #[test]
    fn reduce_examples() {
        let r = reduce_to_units(&fam(-1, 2, qt(&[0, -3, 1]))).unwrap();
        assert!(r.family.c[0].is_one());
        assert_eq!(r.steps.len(), 2);
        assert!(r.steps.iter().all(|s| s.certificate.verify()));
        let f = fam(-1, -1, cq(7));
        assert_eq!(reduce_to_units(&f).unwrap().family, f);
        assert!(matches!(reduce_to_units(&fam(-1, -1, qt(&[0, 1]))), Err(Error::RamifiedAtPlace { .. })));
    }

    #[test]
    fn reduce_over_q_uses_search_for_hamilton() {
        // (−1, −1) is not split, but residues at odd primes live in k₂(𝔽_p) = 0
        let vp = PlaceSet::all_but(vec![Place::prime(2)]);
        let f = SymbolFamily::new(q(-1), vec![q(-1)], vec![q(3 * 3 * 3 * 7)], vp).unwrap();
        let r = reduce_to_units(&f).unwrap();
        assert!(r.steps.iter().all(|s| s.certificate.verify()));
        assert_eq!(r.condition_t_used_at, vec![Place::prime(3), Place::prime(7)]);
        for (p, _) in support(&r.family.c[0]).unwrap() {
            assert_eq!(p, Place::prime(2));
        }
    }

    #[test]
    fn split_certificates_verify() {
        for (a, b) in [(-1i64, 2i64), (2, 7), (-2, 3), (5, 5), (4, -3), (-7, 2)] {
            let pi = qt(&[-3, 1]);
            let c = split_certificate(&cq(a), &cq(b), &pi).unwrap_or_else(|| panic!("({a},{b})"));
            assert!(c.verify());
        }
        assert!(split_certificate(&cq(-1), &cq(-1), &qt(&[0, 1])).is_none());
    }

    #[test]
    fn multiple_symbols_share_a_uniformizer() {
        // b₁ b₂ = 2: the product algebra is split though (−1, −1) is not
        let f = SymbolFamily::new(cq(-1), vec![cq(-1), cq(-2)], vec![qt(&[0, 1]), qt(&[0, 1])], PlaceSet::default()).unwrap();
        let r = reduce_to_units(&f).unwrap();
        assert!(r.family.c.iter().all(|c| c.is_one()));
        assert_eq!(r.steps[0].indices, vec![0, 1]);
    }
}
