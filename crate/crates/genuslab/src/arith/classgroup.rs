//! Ideal class groups of imaginary quadratic fields via reduced binary
//! quadratic forms.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::abelian::AbGroup;
use super::ideal::{primes_above, Ideal, PrimeIdeal};
use super::int::primes;
use super::linalg::{hnf, hnf_basis, Mat};
use super::quad::{discriminant, half_omega, valid_d, QuadElem};
use super::units::find_generator;
use crate::error::{Error, Result};

/// Real quadratic fields ℚ(√d), d < 50, with class number one. Only these
/// real fields get ideal-class support.
pub const REAL_H1: &[i64] = &[2, 3, 5, 6, 7, 11, 13, 14, 17, 19, 21, 22, 23, 29, 31, 33, 37, 38, 41, 43, 46, 47];

/// Positive definite form (a, b, c) with b² − 4ac = D.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Form {
    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// Unique reduced representative: |b| ≤ a ≤ c, b ≥ 0 if |b| = a or a = c.
    pub fn reduce(&self) -> Form {
        let dd = self.disc();
        let (mut a, mut b) = (self.a.clone(), self.b.clone());
        let mut c;
        loop {
            // normalize b into (−a, a]
            let two_a = BigInt::from(2) * &a;
            let mut r = b.mod_floor(&two_a);
            if r > a {
                r -= &two_a;
            }
            b = r;
            c = (&b * &b - &dd) / (BigInt::from(4) * &a);
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            break;
        }
        if (b.abs() == a || a == c) && b.is_negative() {
            b = -b;
        }
        Form { a, b, c }
    }
}

/// Form attached to the class of a fractional ideal.
pub fn ideal_to_form(i: &Ideal) -> Form {
    let aa = &i.a / &i.c;
    let bp = &i.b / &i.c;
    let dd = BigInt::from(discriminant(i.d));
    let beta = if half_omega(i.d) { -(BigInt::from(2) * bp + 1u32) } else { -(BigInt::from(2) * bp) };
    let c = (&beta * &beta - &dd) / (BigInt::from(4) * &aa);
    Form { a: aa, b: beta, c }
}

/// Integral ideal [a, (−b + √D)/2] of the form's class.
pub fn form_to_ideal(d: i64, f: &Form) -> Ideal {
    let bp = if half_omega(d) { (-&f.b - 1u32) / 2u32 } else { -&f.b / 2u32 };
    Ideal { d, den: BigInt::one(), a: f.a.clone(), b: bp.mod_floor(&f.a), c: BigInt::one() }
}

#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub d: i64,
    /// Prime ideals generating the group.
    pub gens: Vec<PrimeIdeal>,
    table: HashMap<Form, Vec<BigInt>>,
    relations: Mat<BigInt>,
    pub group: AbGroup,
}

impl ClassGroup {
    /// Class group of ℚ(√d). Imaginary fields in general; real fields only
    /// from [`REAL_H1`].
    pub fn compute(d: i64) -> Result<ClassGroup> {
        if !valid_d(d) {
            return Err(Error::Unsupported(format!("d = {d} is not a square-free integer ≠ 0, 1")));
        }
        if d > 0 {
            if REAL_H1.contains(&d) {
                return Ok(ClassGroup { d, gens: vec![], table: HashMap::new(), relations: vec![], group: AbGroup::trivial(0) });
            }
            return Err(Error::Unsupported(format!("class group of real quadratic field d = {d}")));
        }
        let dd = discriminant(d).unsigned_abs();
        let bound = ((dd as f64) / 3.0).sqrt().floor() as u64;
        let mut gens = Vec::new();
        for p in primes().take_while(|&p| p <= bound.max(1)) {
            for q in primes_above(d, &BigInt::from(p)) {
                if q.f == 1 && !gens.iter().any(|g: &PrimeIdeal| g.ideal.conj() == q.ideal) {
                    gens.push(q);
                }
            }
        }
        let k = gens.len();
        let gen_forms: Vec<Ideal> = gens.iter().map(|g| g.ideal.clone()).collect();
        let start = ideal_to_form(&Ideal::unit(d)).reduce();
        let mut table: HashMap<Form, Vec<BigInt>> = HashMap::new();
        table.insert(start.clone(), vec![BigInt::zero(); k]);
        let mut queue = VecDeque::from([start]);
        let mut rels: Mat<BigInt> = Vec::new();
        while let Some(f) = queue.pop_front() {
            let v = table[&f].clone();
            let fi = form_to_ideal(d, &f);
            for (j, g) in gen_forms.iter().enumerate() {
                let nf = ideal_to_form(&fi.mul(g)).reduce();
                let mut nv = v.clone();
                nv[j] += 1;
                match table.get(&nf) {
                    Some(w) => {
                        let rel: Vec<BigInt> = nv.iter().zip(w).map(|(a, b)| a - b).collect();
                        if rel.iter().any(|x| !x.is_zero()) {
                            rels.push(rel);
                        }
                    }
                    None => {
                        table.insert(nf.clone(), nv);
                        queue.push_back(nf);
                    }
                }
            }
        }
        let relations = if rels.is_empty() { rels } else { hnf_basis(&rels, &BigInt::zero()) };
        let group = AbGroup::from_relations(k, &relations);
        Ok(ClassGroup { d, gens, table, relations, group })
    }

    pub fn order(&self) -> BigInt {
        self.group.order().expect("class group is finite")
    }

    /// Exponent vector over `gens` of an ideal's class.
    pub fn exponent_vector(&self, i: &Ideal) -> Vec<BigInt> {
        if self.gens.is_empty() {
            return vec![];
        }
        let f = ideal_to_form(i).reduce();
        self.table[&f].clone()
    }

    /// Smith coordinates of an ideal's class.
    pub fn class_of(&self, i: &Ideal) -> Vec<BigInt> {
        self.group.coords(&self.exponent_vector(i))
    }

    pub fn is_principal(&self, i: &Ideal) -> bool {
        self.class_of(i).iter().all(|x| x.is_zero())
    }

    /// Small integral ideal in the class with the given exponent vector.
    pub fn ideal_from_vector(&self, v: &[BigInt]) -> Ideal {
        let mut acc = Ideal::unit(self.d);
        for (g, e) in self.gens.iter().zip(v) {
            let e = e.to_i64().expect("exponent fits");
            acc = acc.mul(&g.ideal.pow(e));
        }
        if self.d < 0 {
            form_to_ideal(self.d, &ideal_to_form(&acc).reduce())
        } else {
            acc
        }
    }

    /// Reduced representative ideal for the j-th Smith generator.
    pub fn generator_ideal(&self, j: usize) -> Ideal {
        self.ideal_from_vector(self.group.lift(j))
    }

    /// Relation lattice on `gens`.
    pub fn relations(&self) -> &Mat<BigInt> {
        &self.relations
    }

    /// Cl / ⟨classes of the given ideals⟩, as a quotient of ℤ^gens.
    pub fn quotient(&self, ideals: &[Ideal]) -> AbGroup {
        let k = self.gens.len();
        let mut rels = self.relations.clone();
        for i in ideals {
            let v = self.exponent_vector(i);
            if v.iter().any(|x| !x.is_zero()) {
                rels.push(v);
            }
        }
        if k == 0 {
            return AbGroup::trivial(0);
        }
        AbGroup::from_relations(k, &rels)
    }

    /// Generator of 𝔞·Π_{𝔮∈S} 𝔮^{x_𝔮} for suitable integers x, i.e. an
    /// element with the valuations of 𝔞 at every prime outside S. `None`
    /// when the class of 𝔞 is not in the span of S.
    pub fn s_generator(&self, a: &Ideal, s: &[PrimeIdeal]) -> Result<Option<QuadElem>> {
        if self.gens.is_empty() || self.is_principal(a) {
            return find_generator(a).map(Some);
        }
        let k = s.len();
        let g = self.gens.len();
        // rows [e(𝔞) | 1 | 0], [e(𝔮_j) | 0 | e_j], [relation | 0 | 0]; a
        // kernel vector with a 1 in the 𝔞 slot gives the exponents
        let row = |cls: Vec<BigInt>, slot: Option<usize>| -> Vec<BigInt> {
            let mut r = cls;
            r.extend((0..=k).map(|j| if Some(j) == slot { BigInt::one() } else { BigInt::zero() }));
            r
        };
        let mut rows: Mat<BigInt> = vec![row(self.exponent_vector(a), Some(0))];
        for (j, q) in s.iter().enumerate() {
            rows.push(row(self.exponent_vector(&q.ideal), Some(j + 1)));
        }
        for rel in &self.relations {
            rows.push(row(rel.clone(), None));
        }
        let h = hnf(&rows, &BigInt::zero());
        let found = h.h[..h.rank].iter().find(|r| r[..g].iter().all(|x| x.is_zero()) && r[g].is_one());
        let Some(found) = found else { return Ok(None) };
        let mut ideal = a.clone();
        for (j, q) in s.iter().enumerate() {
            ideal = ideal.mul(&q.ideal.pow(found[g + 1 + j].to_i64().expect("exponent fits")));
        }
        find_generator(&ideal).map(Some)
    }

    /// All classes as reduced-form ideals (imaginary fields).
    pub fn class_representatives(&self) -> Vec<Ideal> {
        if self.gens.is_empty() {
            return vec![Ideal::unit(self.d)];
        }
        let mut forms: Vec<&Form> = self.table.keys().collect();
        forms.sort();
        forms.into_iter().map(|f| form_to_ideal(self.d, f)).collect()
    }
}

/// Class number by brute-force count of reduced forms (test oracle).
pub fn count_reduced_forms(dd: i64) -> u64 {
    assert!(dd < 0);
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= -dd {
        for b in -a + 1..=a {
            let num = b * b - dd;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::units::find_generator;

    #[test]
    fn class_numbers() {
        for (d, h) in [(-1i64, 1u32), (-5, 2), (-23, 3), (-3, 1), (-14, 4), (-47, 5), (-21, 4)] {
            let cg = ClassGroup::compute(d).unwrap();
            assert_eq!(cg.order(), BigInt::from(h), "d = {d}");
        }
        assert_eq!(ClassGroup::compute(-21).unwrap().group.invariants, vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(ClassGroup::compute(-14).unwrap().group.invariants, vec![BigInt::from(4)]);
        assert!(ClassGroup::compute(10).is_err());
    }

    #[test]
    fn matches_form_count() {
        for d in -60i64..0 {
            if !valid_d(d) {
                continue;
            }
            let cg = ClassGroup::compute(d).unwrap();
            assert_eq!(cg.order(), BigInt::from(count_reduced_forms(discriminant(d))), "d = {d}");
        }
    }

    #[test]
    fn principality_agrees_with_generator_search() {
        for d in [-5i64, -23, -14, -26] {
            let cg = ClassGroup::compute(d).unwrap();
            for p in [2u64, 3, 5, 7, 11, 13] {
                for q in primes_above(d, &BigInt::from(p)) {
                    assert_eq!(cg.is_principal(&q.ideal), find_generator(&q.ideal).is_ok(), "d={d} {}", q.ideal);
                }
            }
        }
    }

    #[test]
    fn h_minus_5_nontrivial_class() {
        let cg = ClassGroup::compute(-5).unwrap();
        let p2 = &primes_above(-5, &BigInt::from(2))[0];
        assert!(!cg.is_principal(&p2.ideal));
        assert_eq!(cg.generator_ideal(0), p2.ideal);
        assert!(cg.quotient(std::slice::from_ref(&p2.ideal)).is_trivial());
    }
}
