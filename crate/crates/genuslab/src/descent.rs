//! Quadratic Galois descent: R = ℤ_S, R′ = O_L ⊗ ℤ_S for L = ℚ(√d), with
//! σ the nontrivial automorphism acting on R′ⁿ through a cocycle ξ.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::int::factor;
use crate::arith::linalg::{det, identity, inverse, is_identity, mat_mul, transpose, Mat};
use crate::arith::quad::{discriminant, valid_d};
use crate::arith::units::roots_of_unity;
use crate::arith::QuadElem;
use crate::brauer::ramification_set;
use crate::class_sets::adele::{class_set_gln, BaseRing};
use crate::class_sets::lattice::lat_hnf;
use crate::divisor::places_above_set;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// R′ = O_{ℚ(√d)}[1/S] over R = ℤ[1/S], with R′-basis {1, ω}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadGaloisRing {
    pub d: i64,
    pub s: Vec<BigInt>,
}

fn rat_valuation(q: &BigRational, p: &BigInt) -> i64 {
    let v = |n: &BigInt| crate::arith::int::valuation(n, p) as i64;
    v(q.numer()) - v(q.denom())
}

impl QuadGaloisRing {
    pub fn new(d: i64, s: &[BigInt]) -> Result<QuadGaloisRing> {
        if !valid_d(d) {
            return Err(Error::Unsupported(format!("d = {d} is not a square-free integer ≠ 0, 1")));
        }
        let mut s: Vec<BigInt> = s.to_vec();
        s.sort();
        s.dedup();
        Ok(QuadGaloisRing { d, s })
    }

    pub fn sigma(&self, x: &QuadElem) -> QuadElem {
        x.conj()
    }

    pub fn sigma_mat(&self, m: &Mat<QuadElem>) -> Mat<QuadElem> {
        m.iter().map(|r| r.iter().map(|x| x.conj()).collect()).collect()
    }

    /// The basis {1, ω} of R′ over R.
    pub fn basis(&self) -> [QuadElem; 2] {
        [QuadElem::one(self.d), QuadElem::omega(self.d)]
    }

    /// q ∈ ℤ_S.
    pub fn in_r(&self, q: &BigRational) -> bool {
        let mut den = q.denom().clone();
        for p in &self.s {
            while (&den % p).is_zero() {
                den /= p;
            }
        }
        den.is_one()
    }

    pub fn is_r_unit(&self, q: &BigRational) -> bool {
        !q.is_zero() && self.in_r(q) && self.in_r(&q.recip())
    }

    /// x ∈ R′: both coordinates in ℤ_S.
    pub fn in_r_prime(&self, x: &QuadElem) -> bool {
        self.in_r(&x.x) && self.in_r(&x.y)
    }

    pub fn is_r_prime_unit(&self, x: &QuadElem) -> bool {
        self.in_r_prime(x) && self.is_r_unit(&x.norm())
    }

    pub fn in_gl(&self, m: &Mat<QuadElem>) -> bool {
        m.iter().flatten().all(|x| self.in_r_prime(x)) && self.is_r_prime_unit(&det(m))
    }

    /// Divide by the S-part of the content so the vector is primitive at
    /// every p ∈ S.
    fn s_primitive(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut out = v.to_vec();
        for p in &self.s {
            let e = out.iter().filter(|x| !x.is_zero()).map(|x| rat_valuation(x, p)).min();
            if let Some(e) = e.filter(|&e| e != 0) {
                let f = BigRational::from_integer(p.pow(e.unsigned_abs() as u32));
                for x in out.iter_mut() {
                    *x = if e > 0 { &*x / &f } else { &*x * &f };
                }
            }
        }
        out
    }
}

impl fmt::Display for QuadGaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s.iter().map(|p| p.to_string()).collect();
        if s.is_empty() {
            write!(f, "Z ⊂ O(d={})", self.d)
        } else {
            write!(f, "Z[1/{0}] ⊂ O(d={1})[1/{0}]", s.join(","), self.d)
        }
    }
}

/// Conditions (a) freeness and (b) unit discriminant, plus invertibility of
/// A = (σᵢ(aⱼ)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisConditions {
    pub free: bool,
    pub disc: BigInt,
    pub disc_unit: bool,
    pub a: Mat<QuadElem>,
    pub det_a: QuadElem,
    pub a_invertible: bool,
    /// AᵗA agrees with the trace form Gram matrix.
    pub gram_matches: bool,
    /// Primes to add to S to repair (b).
    pub suggested_s: Vec<BigInt>,
}

impl GaloisConditions {
    pub fn all_hold(&self) -> bool {
        self.free && self.disc_unit && self.a_invertible
    }
}

fn a_matrix(r: &QuadGaloisRing) -> Mat<QuadElem> {
    let b = r.basis();
    vec![b.to_vec(), b.iter().map(|x| r.sigma(x)).collect()]
}

pub fn check_galois_ring_conditions(r: &QuadGaloisRing) -> Result<GaloisConditions> {
    let a = a_matrix(r);
    let det_a = det(&a);
    let b = r.basis();
    let gram: Mat<QuadElem> = b
        .iter()
        .map(|x| b.iter().map(|y| QuadElem::from_rat(r.d, (x * y).trace())).collect())
        .collect();
    let gram_matches = mat_mul(&transpose(&a), &a) == gram;
    let disc = BigInt::from(discriminant(r.d));
    let disc_q = BigRational::from_integer(disc.clone());
    let suggested_s = factor(&disc.abs())?.into_iter().map(|(p, _)| p).filter(|p| !r.s.contains(p)).collect();
    Ok(GaloisConditions {
        // {1, ω} is a ℤ-basis of O_L, hence an R-basis of R′
        free: true,
        disc_unit: r.is_r_unit(&disc_q),
        a_invertible: r.is_r_prime_unit(&det_a),
        a,
        det_a,
        gram_matches,
        disc,
        suggested_s,
    })
}

/// R-generators of the fixed module M₀ = {x ∈ M : ξ·σ(x) = x}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedModule {
    /// λⱼ(w) for every input generator w (outer) and basis element aⱼ (inner).
    pub lambdas: Vec<Vec<Vec<QuadElem>>>,
    /// An R-basis of M₀, S-primitive.
    pub basis: Vec<Vec<QuadElem>>,
    /// w = Σⱼ coeffs[j]·λⱼ(w), from the first row of (Aᵗ)⁻¹.
    pub coeffs: Vec<QuadElem>,
}

impl FixedModule {
    /// Re-check w = Σ cⱼ λⱼ(w) exactly for every generator.
    pub fn verify(&self, gens: &[Vec<QuadElem>]) -> bool {
        gens.iter().zip(&self.lambdas).all(|(w, ls)| {
            (0..w.len()).all(|k| {
                let mut acc = QuadElem::zero(w[k].d);
                for (c, l) in self.coeffs.iter().zip(ls) {
                    acc = &acc + &(c * &l[k]);
                }
                acc == w[k]
            })
        })
    }
}

fn mat_vec(m: &Mat<QuadElem>, v: &[QuadElem]) -> Vec<QuadElem> {
    m.iter()
        .map(|r| r.iter().zip(v).fold(QuadElem::zero(v[0].d), |acc, (a, b)| &acc + &(a * b)))
        .collect()
}

/// λⱼ(w) = Σᵢ τᵢ(aⱼ w) with τ₀ = id and τ₁(x) = ξ·σ(x).
pub fn fixed_module(r: &QuadGaloisRing, xi: &Mat<QuadElem>, gens: &[Vec<QuadElem>]) -> Result<FixedModule> {
    let cond = check_galois_ring_conditions(r)?;
    if !cond.all_hold() {
        return Err(Error::ConditionsFail(format!(
            "discriminant {} is not a unit of {r}; invert {:?}",
            cond.disc, cond.suggested_s.iter().map(|p| p.to_string()).collect::<Vec<_>>()
        )));
    }
    let at_inv = inverse(&transpose(&cond.a)).expect("A is invertible");
    let coeffs = at_inv[0].clone();
    let tau = |x: &[QuadElem]| mat_vec(xi, &x.iter().map(|y| r.sigma(y)).collect::<Vec<_>>());
    let mut lambdas = Vec::new();
    for w in gens {
        if w.len() != xi.len() {
            return Err(Error::Unsupported("generator length differs from the size of ξ".into()));
        }
        let ls = r
            .basis()
            .iter()
            .map(|a| {
                let aw: Vec<QuadElem> = w.iter().map(|x| a * x).collect();
                aw.iter().zip(tau(&aw)).map(|(x, y)| x + &y).collect()
            })
            .collect();
        lambdas.push(ls);
    }
    // R-span of the λ's: ℤ-HNF of their coordinates, then S-primitive rows
    let rows: Mat<BigRational> = lambdas
        .iter()
        .flatten()
        .map(|v: &Vec<QuadElem>| v.iter().flat_map(|x| [x.x.clone(), x.y.clone()]).collect())
        .collect();
    let nonzero = rows.iter().any(|r| r.iter().any(|x| !x.is_zero()));
    let basis = if nonzero {
        lat_hnf(&rows)
            .into_iter()
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .map(|row| r.s_primitive(&row).chunks(2).map(|c| QuadElem::new(r.d, c[0].clone(), c[1].clone())).collect())
            .collect()
    } else {
        vec![]
    };
    Ok(FixedModule { lambdas, basis, coeffs })
}

/// c ∈ GL_n(R′) with c⁻¹·ξ·σ(c) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivialization {
    pub xi: Mat<QuadElem>,
    pub c: Mat<QuadElem>,
    pub fixed: FixedModule,
}

impl Trivialization {
    pub fn verify(&self, r: &QuadGaloisRing) -> bool {
        let Some(ci) = inverse(&self.c) else { return false };
        r.in_gl(&self.c) && is_identity(&mat_mul(&mat_mul(&ci, &self.xi), &r.sigma_mat(&self.c)))
    }
}

/// Trivialize a ℤ/2-cocycle in GL_n(R′). The columns of c form an R-basis
/// of the fixed module of (R′)ⁿ; over ℤ_S that module is always free.
pub fn trivialize_cocycle(r: &QuadGaloisRing, xi: &Mat<QuadElem>) -> Result<Trivialization> {
    let n = xi.len();
    if n == 0 || xi.iter().any(|row| row.len() != n) || xi.iter().flatten().any(|x| x.d != r.d) {
        return Err(Error::Unsupported(format!("ξ must be a square matrix over ℚ(√{})", r.d)));
    }
    if !r.in_gl(xi) {
        return Err(Error::Unsupported(format!("ξ is not in GL_{n}({r})")));
    }
    if !is_identity(&mat_mul(xi, &r.sigma_mat(xi))) {
        return Err(Error::CocycleConditionFails);
    }
    let one = QuadElem::one(r.d);
    let gens = identity(n, &one);
    let fixed = fixed_module(r, xi, &gens)?;
    if fixed.basis.len() != n {
        return Err(Error::Obstruction { ideal: format!("fixed module has rank {} ≠ {n}", fixed.basis.len()) });
    }
    let c = transpose(&fixed.basis);
    let t = Trivialization { xi: xi.clone(), c, fixed };
    if !t.verify(r) {
        return Err(Error::Obstruction { ideal: "fixed module basis does not trivialize ξ".into() });
    }
    Ok(t)
}

/// One stage of the Condition (T) pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

/// Verdict for the norm-one group of the quaternion algebra (a, b) over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionTReport {
    pub a: i64,
    pub b: i64,
    pub l_d: i64,
    pub s: Vec<BigInt>,
    pub split: bool,
    pub stages: Vec<Stage>,
    pub verdict: bool,
}

/// Stored splitting over L = ℚ(√a): i ↦ diag(√a, −√a), j ↦ [[0, b], [1, 0]].
pub fn stored_splitting(d: i64, f: i64, b: i64) -> [Mat<QuadElem>; 4] {
    let q = |x: i64| QuadElem::from_ints(d, x, 0);
    let root = QuadElem::sqrt_d(d).scale(&BigRational::from_integer(f.into()));
    let z = q(0);
    let one = identity(2, &q(1));
    let ti = vec![vec![root.clone(), z.clone()], vec![z.clone(), -&root]];
    let tj = vec![vec![z.clone(), q(b)], vec![q(1), z]];
    let tij = mat_mul(&ti, &tj);
    [one, ti, tj, tij]
}

fn squarefree_part(a: i64) -> (i64, i64) {
    let mut d = a.signum();
    let mut f = 1;
    for (p, e) in factor(&BigInt::from(a.abs())).unwrap_or_default() {
        let p: i64 = p.try_into().expect("small prime");
        if e % 2 == 1 {
            d *= p;
        }
        f *= p.pow(e / 2);
    }
    (d, f)
}

/// Condition (T) for SL₁(D), D = (a, b) over ℚ, through the quadratic
/// splitting field L = ℚ(√l_d) and the ring ℤ[1/S].
///
/// Stages: class set of GL₂ over R′, conditions (a)/(b), condition (c) for
/// the stored splitting θ on the order ⟨1, i, j, ij⟩, and trivialization of
/// the ℤ/2-cocycles given by roots of unity of R′ and by the coordinate swap
/// in GL₂.
pub fn descent_condition_t(a: i64, b: i64, l_d: i64, s: &[BigInt]) -> Result<ConditionTReport> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroElement);
    }
    let mut stages = Vec::new();
    let mut s: Vec<BigInt> = s.to_vec();
    s.sort();
    s.dedup();
    let q = |x: i64| Elem::from_int(&Field::Q, x);
    let ram = ramification_set(&q(a), &q(b))?;
    if ram.is_empty() {
        stages.push(Stage {
            name: "split".into(),
            ok: true,
            detail: format!("({a},{b}) ≅ M₂(ℚ); SL₁(D) = SL₂ and ℤ_S is a PID"),
        });
        return Ok(ConditionTReport { a, b, l_d, s, split: true, stages, verdict: true });
    }
    let ram_s: Vec<String> = ram.iter().map(|p| p.to_string()).collect();
    stages.push(Stage { name: "ramification".into(), ok: true, detail: format!("D ramifies at {{{}}}", ram_s.join(", ")) });
    let (ad, af) = squarefree_part(a);
    let (bd, bf) = squarefree_part(b);
    let (d, f, other) = if ad == l_d && ad != 1 {
        (ad, af, b)
    } else if bd == l_d && bd != 1 {
        (bd, bf, a)
    } else {
        return Err(Error::SplittingNotStored(format!("no stored splitting of ({a},{b}) over ℚ(√{l_d})")));
    };
    let r = QuadGaloisRing::new(d, &s)?;

    // (i) class set of GL₂ over R′
    let places = places_above_set(d, &s);
    let cs = class_set_gln(&BaseRing::new(Field::Quad(d), places)?, 2)?;
    if cs.size > BigInt::one() {
        let rep = &cs.representatives[1];
        let (p, _) = rep.entries.iter().next().expect("nontrivial representative");
        let witness: Vec<String> = cs.witness_s.iter().map(|p| p.to_string()).collect();
        return Err(Error::Obstruction {
            ideal: format!("{p} (class set of GL_2 has {} elements; inverting {{{}}} kills it)", cs.size, witness.join(", ")),
        });
    }
    stages.push(Stage { name: "class_set".into(), ok: true, detail: format!("Cl(GL_2) over {r} is trivial") });

    // (a), (b)
    let cond = check_galois_ring_conditions(&r)?;
    if !cond.all_hold() {
        let sug: Vec<String> = cond.suggested_s.iter().map(|p| p.to_string()).collect();
        return Err(Error::ConditionsFail(format!("discriminant {} is not a unit; add {{{}}} to S", cond.disc, sug.join(", "))));
    }
    stages.push(Stage {
        name: "conditions_ab".into(),
        ok: true,
        detail: format!("basis {{1, w}}, disc {} and det A = {} are units", cond.disc, cond.det_a),
    });

    // (c) θ maps the order onto M₂(R′)
    let theta = stored_splitting(d, f, other);
    let flat: Mat<QuadElem> = theta.iter().map(|m| m.iter().flatten().cloned().collect()).collect();
    let integral = flat.iter().flatten().all(|x| r.in_r_prime(x));
    let dt = det(&flat);
    if !integral || !r.is_r_prime_unit(&dt) {
        return Err(Error::ConditionsFail(format!("θ(𝒞) spans a sublattice of M₂(R′) of determinant {dt}")));
    }
    stages.push(Stage { name: "condition_c".into(), ok: true, detail: format!("det θ(1, i, j, ij) = {dt}, a unit of R′") });

    // (ii) H¹ trivializations
    let mut cocycles: Vec<Mat<QuadElem>> = roots_of_unity(d).into_iter().map(|z| vec![vec![z]]).collect();
    let (zero, one) = (QuadElem::zero(d), QuadElem::one(d));
    for z in roots_of_unity(d) {
        cocycles.push(vec![vec![z, zero.clone()], vec![zero.clone(), one.clone()]]);
    }
    cocycles.push(vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]]);
    let mut shown = Vec::new();
    for xi in &cocycles {
        let t = trivialize_cocycle(&r, xi)?;
        shown.push(format!("{} ↦ {}", fmt_mat(xi), fmt_mat(&t.c)));
    }
    stages.push(Stage { name: "h1".into(), ok: true, detail: shown.join("; ") });
    Ok(ConditionTReport { a, b, l_d, s, split: false, stages, verdict: true })
}

/// `[[a, b], [c, d]]`.
pub fn fmt_mat(m: &Mat<QuadElem>) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

/// u·σ(u)⁻¹, a cocycle by construction.
pub fn coboundary(r: &QuadGaloisRing, u: &Mat<QuadElem>) -> Option<Mat<QuadElem>> {
    Some(mat_mul(u, &inverse(&r.sigma_mat(u))?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: &[i64]) -> Vec<BigInt> {
        p.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn condition_examples() {
        let c = check_galois_ring_conditions(&QuadGaloisRing::new(-1, &z(&[2])).unwrap()).unwrap();
        assert!(c.all_hold() && c.gram_matches);
        assert_eq!(c.disc, BigInt::from(-4));
        assert_eq!(c.det_a, QuadElem::from_ints(-1, 0, -2));
        let c = check_galois_ring_conditions(&QuadGaloisRing::new(-1, &[]).unwrap()).unwrap();
        assert!(!c.disc_unit);
        assert_eq!(c.suggested_s, z(&[2]));
        let c = check_galois_ring_conditions(&QuadGaloisRing::new(5, &z(&[2, 5])).unwrap()).unwrap();
        assert!(c.all_hold() && c.gram_matches);
        assert_eq!(c.disc, BigInt::from(5));
    }

    #[test]
    fn fixed_module_examples() {
        let r = QuadGaloisRing::new(-1, &z(&[2])).unwrap();
        let one = QuadElem::one(-1);
        let i = QuadElem::omega(-1);
        let f = fixed_module(&r, &vec![vec![one.clone()]], &[vec![one.clone()]]).unwrap();
        assert_eq!(f.basis, vec![vec![one.clone()]]);
        assert!(f.verify(&[vec![one.clone()]]));
        let f = fixed_module(&r, &vec![vec![i.clone()]], &[vec![one.clone()]]).unwrap();
        assert_eq!(f.basis, vec![vec![&one + &i]]);
        let f = fixed_module(&r, &vec![vec![i.clone()]], &[vec![QuadElem::zero(-1)]]).unwrap();
        assert!(f.basis.is_empty());
        let bad = QuadGaloisRing::new(-1, &[]).unwrap();
        assert!(matches!(fixed_module(&bad, &vec![vec![one.clone()]], &[vec![one]]), Err(Error::ConditionsFail(_))));
    }

    #[test]
    fn trivialize_examples() {
        let r = QuadGaloisRing::new(-1, &z(&[2])).unwrap();
        let one = QuadElem::one(-1);
        let i = QuadElem::omega(-1);
        let t = trivialize_cocycle(&r, &vec![vec![i.clone()]]).unwrap();
        assert_eq!(t.c, vec![vec![&one + &i]]);
        assert_eq!(trivialize_cocycle(&r, &vec![vec![one.clone()]]).unwrap().c, vec![vec![one.clone()]]);
        assert_eq!(trivialize_cocycle(&r, &vec![vec![-&one]]).unwrap().c, vec![vec![i.clone()]]);
        assert!(matches!(trivialize_cocycle(&r, &vec![vec![&one + &one]]), Err(Error::CocycleConditionFails)));
    }

    #[test]
    fn coboundaries_round_trip() {
        let r = QuadGaloisRing::new(-1, &z(&[2])).unwrap();
        let e = |x, y| QuadElem::from_ints(-1, x, y);
        let u = vec![vec![e(1, 1), e(0, 0)], vec![e(3, 0), e(1, 0)]];
        let xi = coboundary(&r, &u).unwrap();
        let t = trivialize_cocycle(&r, &xi).unwrap();
        let fixed = mat_mul(&inverse(&u).unwrap(), &t.c);
        assert!(fixed.iter().flatten().all(|x| x.y.is_zero() && r.in_r(&x.x)));
        assert!(r.is_r_unit(&det(&fixed).x));
    }

    #[test]
    fn condition_t_examples() {
        let rep = descent_condition_t(-1, -1, -1, &z(&[2])).unwrap();
        assert!(rep.verdict && !rep.split);
        assert_eq!(rep.stages.len(), 5);
        let rep = descent_condition_t(1, 7, -1, &[]).unwrap();
        assert!(rep.verdict && rep.split);
        assert!(matches!(descent_condition_t(-1, -1, -1, &[]), Err(Error::ConditionsFail(_))));
        assert!(matches!(descent_condition_t(-5, -1, -5, &[]), Err(Error::Obstruction { .. })));
        assert!(matches!(descent_condition_t(-1, -1, 7, &z(&[2])), Err(Error::SplittingNotStored(_))));
    }
}
