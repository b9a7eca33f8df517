//! Čech 1-cocycles for GL_n on principal open covers of Spec R, their image
//! in the adelic double coset space, and the comparison with lattices.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::adele::{glue_lattice, polar_places, AdelePoint, BaseRing};
use crate::arith::linalg::{det, identity, inverse, is_identity, mat_mul, Mat};
use crate::divisor::pic_group;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::places::{support, valuation, Place};

/// Principal opens U_i = D(a_i) covering Spec R.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCover {
    pub ring: BaseRing,
    pub elements: Vec<Elem>,
}

fn finite_primes(x: &Elem, ring: &BaseRing) -> Result<Vec<Place>> {
    Ok(support(x)?.into_iter().map(|(p, _)| p).filter(|p| !p.is_infinite() && !ring.s.contains(p)).collect())
}

impl CechCover {
    pub fn new(ring: BaseRing, elements: Vec<Elem>) -> Result<CechCover> {
        if elements.is_empty() {
            return Err(Error::CocycleInvalid("empty cover".into()));
        }
        for a in &elements {
            if a.field() != ring.field {
                return Err(Error::CocycleInvalid(format!("{a} is not in {}", ring.field)));
            }
            if a.is_zero() {
                return Err(Error::CocycleInvalid("cover element 0 defines the empty open".into()));
            }
            if polar_places(&vec![vec![a.clone()]])?.iter().any(|p| !ring.s.contains(p)) {
                return Err(Error::CocycleInvalid(format!("{a} is not in {ring}")));
            }
        }
        let c = CechCover { ring, elements };
        if let Some(p) = c.uncovered()? {
            return Err(Error::CocycleInvalid(format!("no open of the cover contains {p}")));
        }
        Ok(c)
    }

    /// A prime lying in every V(a_i), if any.
    pub fn uncovered(&self) -> Result<Option<Place>> {
        for p in finite_primes(&self.elements[0], &self.ring)? {
            let mut hit = true;
            for a in &self.elements[1..] {
                if valuation(a, &p)? == 0 {
                    hit = false;
                    break;
                }
            }
            if hit {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Primes dividing some a_i: the only places where the image adele can be
    /// nontrivial.
    pub fn bad_primes(&self) -> Result<Vec<Place>> {
        let mut out: Vec<Place> = Vec::new();
        for a in &self.elements {
            for p in finite_primes(a, &self.ring)? {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Index (0-based) of the first open containing p.
    fn first_open(&self, p: &Place) -> Result<usize> {
        for (i, a) in self.elements.iter().enumerate() {
            if valuation(a, p)? == 0 {
                return Ok(i);
            }
        }
        Err(Error::CocycleInvalid(format!("no open of the cover contains {p}")))
    }

    fn last_open(&self, p: &Place) -> Result<usize> {
        for (i, a) in self.elements.iter().enumerate().rev() {
            if valuation(a, p)? == 0 {
                return Ok(i);
            }
        }
        Err(Error::CocycleInvalid(format!("no open of the cover contains {p}")))
    }
}

/// Transition matrices g_ij ∈ GL_n(R[1/(a_i a_j)]), indices 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCocycle {
    pub cover: CechCover,
    pub n: usize,
    pub g: BTreeMap<(usize, usize), Mat<Elem>>,
}

impl CechCocycle {
    /// Missing g_ii become the identity and a missing g_ji becomes g_ij⁻¹.
    pub fn new(cover: CechCover, n: usize, given: BTreeMap<(usize, usize), Mat<Elem>>) -> Result<CechCocycle> {
        let k = cover.len();
        let one = cover.ring.field.one();
        let mut g = BTreeMap::new();
        for (&(i, j), m) in &given {
            if i == 0 || j == 0 || i > k || j > k {
                return Err(Error::CocycleInvalid(format!("index ({i},{j}) outside the cover")));
            }
            if m.len() != n || m.iter().any(|r| r.len() != n) || m.iter().flatten().any(|x| x.field() != cover.ring.field) {
                return Err(Error::CocycleInvalid(format!("g({i},{j}) is not an {n}×{n} matrix over {}", cover.ring.field)));
            }
            g.insert((i, j), m.clone());
        }
        for i in 1..=k {
            g.entry((i, i)).or_insert_with(|| identity(n, &one));
            for j in 1..=k {
                if g.contains_key(&(i, j)) {
                    continue;
                }
                let m = g.get(&(j, i)).ok_or_else(|| Error::CocycleInvalid(format!("neither g({i},{j}) nor g({j},{i}) given")))?;
                let inv = inverse(m).ok_or_else(|| Error::CocycleInvalid(format!("g({j},{i}) is singular")))?;
                g.insert((i, j), inv);
            }
        }
        Ok(CechCocycle { cover, n, g })
    }

    /// The trivial cocycle.
    pub fn trivial(cover: CechCover, n: usize) -> CechCocycle {
        let k = cover.len();
        let id = identity(n, &cover.ring.field.one());
        let g = (1..=k).flat_map(|i| (1..=k).map(move |j| (i, j))).map(|ij| (ij, id.clone())).collect();
        CechCocycle { cover, n, g }
    }

    pub fn get(&self, i: usize, j: usize) -> &Mat<Elem> {
        &self.g[&(i, j)]
    }

    /// g_ij ∈ GL_n(R[1/(a_i a_j)]).
    fn in_overlap(&self, i: usize, j: usize) -> Result<bool> {
        let m = self.get(i, j);
        let d = det(m);
        if d.is_zero() {
            return Ok(false);
        }
        let allowed = |p: &Place| -> Result<bool> {
            Ok(self.cover.ring.s.contains(p)
                || valuation(&self.cover.elements[i - 1], p)? > 0
                || valuation(&self.cover.elements[j - 1], p)? > 0)
        };
        for p in polar_places(m)? {
            if !allowed(&p)? {
                return Ok(false);
            }
        }
        for (p, _) in support(&d)? {
            if !p.is_infinite() && !allowed(&p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Outcome of checking the cocycle relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechVerdict {
    pub ok: bool,
    /// First failing (i, j, k) in lexicographic order, 1-based.
    pub failing_triple: Option<(usize, usize, usize)>,
    /// First g_ij not invertible over R[1/(a_i a_j)].
    pub failing_pair: Option<(usize, usize)>,
}

/// Check g_ik = g_ij g_jk for all ordered triples and that every g_ij lives
/// on its overlap.
pub fn cech_verify(c: &CechCocycle) -> Result<CechVerdict> {
    let k = c.cover.len();
    for i in 1..=k {
        for j in 1..=k {
            if !c.in_overlap(i, j)? {
                return Ok(CechVerdict { ok: false, failing_triple: None, failing_pair: Some((i, j)) });
            }
        }
    }
    for i in 1..=k {
        if !is_identity(c.get(i, i)) {
            return Ok(CechVerdict { ok: false, failing_triple: Some((i, i, i)), failing_pair: None });
        }
    }
    for i in 1..=k {
        for j in 1..=k {
            for l in 1..=k {
                if mat_mul(c.get(i, j), c.get(j, l)) != *c.get(i, l) {
                    return Ok(CechVerdict { ok: false, failing_triple: Some((i, j, l)), failing_pair: None });
                }
            }
        }
    }
    Ok(CechVerdict { ok: true, failing_triple: None, failing_pair: None })
}

fn require_valid(c: &CechCocycle) -> Result<()> {
    let v = cech_verify(c)?;
    match (v.failing_triple, v.failing_pair) {
        (Some((i, j, k)), _) => Err(Error::CocycleInvalid(format!("g({i},{k}) ≠ g({i},{j})·g({j},{k})"))),
        (_, Some((i, j))) => Err(Error::CocycleInvalid(format!("g({i},{j}) is not invertible on U_{i} ∩ U_{j}"))),
        _ => Ok(()),
    }
}

/// Which open each bad prime is assigned to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    First,
    Last,
}

/// The adele with v-component h_{φ(v)} = g_{φ(v), i₀}; `i0` is 1-based.
pub fn cech_to_adele(c: &CechCocycle, i0: usize, phi: Choice) -> Result<AdelePoint> {
    require_valid(c)?;
    if i0 == 0 || i0 > c.cover.len() {
        return Err(Error::CocycleInvalid(format!("base index {i0} outside the cover")));
    }
    let mut out = AdelePoint::identity(c.cover.ring.clone(), c.n);
    for p in c.cover.bad_primes()? {
        let i = match phi {
            Choice::First => c.cover.first_open(&p)?,
            Choice::Last => c.cover.last_open(&p)?,
        } + 1;
        out.set(p, c.get(i, i0).clone())?;
    }
    Ok(out)
}

/// Double coset representative with i₀ = 1 and φ(v) the first open
/// containing v.
pub fn cech_to_double_coset(c: &CechCocycle) -> Result<AdelePoint> {
    cech_to_adele(c, 1, Choice::First)
}

/// True if x = k·y·γ with k integral at every place and γ ∈ GL_n(K).
pub fn same_double_coset_via(x: &AdelePoint, y: &AdelePoint, gamma: &Mat<Elem>) -> Result<bool> {
    let gi = inverse(gamma).ok_or_else(|| Error::Unsupported("γ is singular".into()))?;
    let mut places: Vec<Place> = x.support();
    places.extend(y.support());
    places.extend(polar_places(gamma)?);
    places.extend(polar_places(&gi)?);
    places.sort();
    places.dedup();
    for p in places {
        if x.ring.s.contains(&p) {
            continue;
        }
        let k = mat_mul(&mat_mul(&x.component(&p), &gi), &inverse(&y.component(&p)).expect("invertible"));
        if polar_places(&k)?.contains(&p) || valuation(&det(&k), &p)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Changing i₀ or φ moves the image only inside its double coset. Checks
/// every base index against i₀ = 1 with both choices of φ.
pub fn check_well_defined(c: &CechCocycle) -> Result<bool> {
    let base = cech_to_double_coset(c)?;
    for i1 in 1..=c.cover.len() {
        for phi in [Choice::First, Choice::Last] {
            let other = cech_to_adele(c, i1, phi)?;
            // h'_i = g_{i,i1} = h_i · g_{1,i1}
            if !same_double_coset_via(&other, &base, c.get(1, i1))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Both routes around the square, as Pic classes of the Steinitz ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    /// Steinitz class of the lattice glued from the image adele.
    pub adelic_class: Vec<BigInt>,
    /// Class of Π 𝔭^{v_𝔭(det h_ψ(𝔭))} for the module patched from the
    /// cocycle with base index k and φ = last open.
    pub patched_class: Vec<BigInt>,
    pub steinitz_ideal: String,
    pub commutes: bool,
}

/// Compare the lattice attached to the image double coset with the projective
/// module patched directly from the cocycle.
pub fn diagram_check(c: &CechCocycle) -> Result<DiagramReport> {
    require_valid(c)?;
    let ring = &c.cover.ring;
    let lattice = glue_lattice(&cech_to_double_coset(c)?)?;
    let adelic_class = lattice.steinitz_class()?;
    let steinitz_ideal = lattice.steinitz().map(|i| i.to_gen_string()).unwrap_or_else(|| "(1)".into());
    let patched_class = match ring.field {
        Field::Quad(d) => {
            let last = c.cover.len();
            let mut ideal = crate::arith::ideal::Ideal::unit(d);
            for p in c.cover.bad_primes()? {
                let Place::QuadPrime(q) = &p else { unreachable!() };
                let i = c.cover.last_open(&p)? + 1;
                let v = valuation(&det(c.get(i, last)), &p)?;
                ideal = ideal.mul(&q.ideal.pow(v));
            }
            pic_group(&ring.field, &ring.s)?.class_of_ideal(&ideal)
        }
        _ => vec![],
    };
    // the two routes use different i₀, so the ideals differ by the
    // principal ideal of det g_{1,k}; only classes are compared
    let commutes = adelic_class == patched_class;
    Ok(DiagramReport { adelic_class, patched_class, steinitz_ideal, commutes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QuadElem;
    use crate::class_sets::adele::decompose_adele;

    fn z_cover(a: &[i64]) -> CechCover {
        CechCover::new(BaseRing::integers(Field::Q), a.iter().map(|&x| Elem::from_int(&Field::Q, x)).collect()).unwrap()
    }

    fn one_by_one(x: Elem) -> Mat<Elem> {
        vec![vec![x]]
    }

    fn p2_cocycle() -> CechCocycle {
        let d = -5;
        let f = Field::Quad(d);
        let cover = CechCover::new(BaseRing::integers(f.clone()), vec![Elem::from_int(&f, 3), Elem::from_int(&f, 2)]).unwrap();
        let g12 = one_by_one(Elem::Quad(&QuadElem::one(d) + &QuadElem::sqrt_d(d)));
        CechCocycle::new(cover, 1, BTreeMap::from([((1, 2), g12)])).unwrap()
    }

    #[test]
    fn verify_examples() {
        let c = CechCocycle::trivial(z_cover(&[2, 3]), 2);
        assert!(cech_verify(&c).unwrap().ok);
        let q = Field::Q;
        let c = CechCocycle::new(z_cover(&[2, 3]), 1, BTreeMap::from([((1, 2), one_by_one(Elem::from_int(&q, 2)))])).unwrap();
        assert!(cech_verify(&c).unwrap().ok);
        assert_eq!(c.get(2, 1), &one_by_one(Elem::from_int(&q, 1).div(&Elem::from_int(&q, 2))));
        let mut bad = c.clone();
        bad.g.insert((2, 1), one_by_one(Elem::from_int(&q, 3)));
        let v = cech_verify(&bad).unwrap();
        assert_eq!(v.failing_triple, Some((1, 2, 1)));
        // 5 is not a unit on U_1 ∩ U_2
        let c = CechCocycle::new(z_cover(&[2, 3]), 1, BTreeMap::from([((1, 2), one_by_one(Elem::from_int(&q, 5)))])).unwrap();
        assert_eq!(cech_verify(&c).unwrap().failing_pair, Some((1, 2)));
        assert!(CechCover::new(BaseRing::integers(q.clone()), vec![Elem::from_int(&q, 2), Elem::from_int(&q, 4)]).is_err());
    }

    #[test]
    fn image_adeles() {
        let q = Field::Q;
        let c = CechCocycle::trivial(z_cover(&[2, 3]), 2);
        assert!(cech_to_double_coset(&c).unwrap().entries.is_empty());
        let c = CechCocycle::new(z_cover(&[2, 3]), 1, BTreeMap::from([((1, 2), one_by_one(Elem::from_int(&q, 2)))])).unwrap();
        let a = cech_to_double_coset(&c).unwrap();
        assert!(decompose_adele(&a).unwrap().verify(&a).unwrap());
        assert!(check_well_defined(&c).unwrap());
        let c = p2_cocycle();
        let a = cech_to_double_coset(&c).unwrap();
        assert!(matches!(decompose_adele(&a), Err(Error::NonPrincipalClass { .. })));
        assert!(check_well_defined(&c).unwrap());
    }

    #[test]
    fn diagram_examples() {
        let q = Field::Q;
        assert!(diagram_check(&CechCocycle::trivial(z_cover(&[2, 3]), 2)).unwrap().commutes);
        let g12 = vec![vec![Elem::from_int(&q, 2), Elem::from_int(&q, 0)], vec![Elem::from_int(&q, 0), Elem::from_int(&q, 1).div(&Elem::from_int(&q, 3))]];
        let c = CechCocycle::new(z_cover(&[2, 3]), 2, BTreeMap::from([((1, 2), g12)])).unwrap();
        assert!(diagram_check(&c).unwrap().commutes);
        let r = diagram_check(&p2_cocycle()).unwrap();
        assert!(r.commutes);
        assert_eq!(r.adelic_class, vec![BigInt::from(1)]);
    }
}
