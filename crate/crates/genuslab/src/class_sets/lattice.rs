//! Full-rank lattices over a Euclidean ring R inside Frac(R)^n, stored as
//! canonical row Hermite bases.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::linalg::{hnf_basis, inverse, transpose, Euclid, FieldElem, Mat};
use crate::arith::{Poly, RatFn};
use crate::field::Elem;

/// Fraction field of a Euclidean ring.
pub trait PidElem: FieldElem {
    type Ring: Euclid;
    fn numer_denom(&self) -> (Self::Ring, Self::Ring);
    fn from_ring(&self, r: &Self::Ring) -> Self;
    fn ring_zero(&self) -> Self::Ring;
    fn to_elem(&self) -> Elem;
}

impl PidElem for BigRational {
    type Ring = BigInt;
    fn numer_denom(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }
    fn from_ring(&self, r: &BigInt) -> Self {
        BigRational::from_integer(r.clone())
    }
    fn ring_zero(&self) -> BigInt {
        BigInt::from(0)
    }
    fn to_elem(&self) -> Elem {
        Elem::Q(self.clone())
    }
}

impl PidElem for RatFn {
    type Ring = Poly;
    fn numer_denom(&self) -> (Poly, Poly) {
        (self.num().clone(), self.den().clone())
    }
    fn from_ring(&self, r: &Poly) -> Self {
        RatFn::from_poly(r.clone())
    }
    fn ring_zero(&self) -> Poly {
        Poly::zero(self.base().clone())
    }
    fn to_elem(&self) -> Elem {
        Elem::F(self.clone())
    }
}

fn gcd_r<R: Euclid>(a: &R, b: &R) -> R {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero_e() {
        let r = a.div_rem_r(&b).1;
        a = b;
        b = r;
    }
    let (u, _) = a.normalizing_unit();
    a.mul_r(&u)
}

fn lcm_r<R: Euclid>(a: &R, b: &R) -> R {
    let g = gcd_r(a, b);
    let (q, _) = a.mul_r(b).div_rem_r(&g);
    let (u, _) = q.normalizing_unit();
    q.mul_r(&u)
}

/// Canonical basis (row HNF) of the lattice spanned by the rows.
pub fn lat_hnf<F: PidElem>(rows: &Mat<F>) -> Mat<F> {
    let proto = &rows[0][0];
    let zero = proto.ring_zero();
    let den = rows.iter().flatten().fold(zero.one_like(), |acc, x| lcm_r(&acc, &x.numer_denom().1));
    let df = proto.from_ring(&den);
    let ints: Mat<F::Ring> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let (n, d) = x.mul_e(&df).numer_denom();
                    debug_assert!(d.sub_r(&d.one_like()).is_zero_e());
                    n
                })
                .collect()
        })
        .collect();
    hnf_basis(&ints, &zero)
        .iter().map(|r| r.iter().map(|x| proto.from_ring(x).div_e(&df)).collect()).collect()
}

/// Dual lattice {y : ⟨x, y⟩ ∈ R for x ∈ L} of a full-rank lattice.
pub fn lat_dual<F: PidElem>(basis: &Mat<F>) -> Mat<F> {
    transpose(&inverse(basis).expect("lattice basis must be nonsingular"))
}

pub fn lat_sum<F: PidElem>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let mut rows = a.clone();
    rows.extend(b.iter().cloned());
    lat_hnf(&rows)
}

pub fn lat_intersect<F: PidElem>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    lat_hnf(&lat_dual(&lat_sum(&lat_dual(a), &lat_dual(b))))
}

/// c·Rⁿ.
pub fn scalar_lattice<F: PidElem>(c: &F, n: usize) -> Mat<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { c.clone() } else { c.zero_like() }).collect()).collect()
}

/// True if every entry of `x·basis⁻¹` lies in R, i.e. rows of x lie in L.
pub fn lat_contains<F: PidElem>(basis: &Mat<F>, x: &Mat<F>) -> bool {
    let inv = inverse(basis).expect("lattice basis must be nonsingular");
    let one = basis[0][0].ring_zero().one_like();
    crate::arith::linalg::mat_mul(x, &inv).iter().flatten().all(|e| e.numer_denom().1 == one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Mat<BigRational> {
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect()
    }

    #[test]
    fn sum_and_intersection() {
        let a = qm(&[&[2, 0], &[0, 1]]);
        let b = qm(&[&[1, 0], &[0, 3]]);
        assert_eq!(lat_intersect(&a, &b), qm(&[&[2, 0], &[0, 3]]));
        assert_eq!(lat_sum(&a, &b), qm(&[&[1, 0], &[0, 1]]));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let c = scalar_lattice(&half, 2);
        assert_eq!(lat_intersect(&c, &a), a);
        assert!(lat_contains(&c, &a));
        assert!(!lat_contains(&a, &c));
    }

    #[test]
    fn polynomial_lattices() {
        use crate::arith::Base;
        let b = Base::Fp(5);
        let t = RatFn::t(b.clone());
        let one = RatFn::one(b.clone());
        let z = RatFn::zero(b.clone());
        let a = vec![vec![t.clone(), z.clone()], vec![z.clone(), one.clone()]];
        let c = vec![vec![one.clone(), z.clone()], vec![z.clone(), &t + &one]];
        let i = lat_intersect(&a, &c);
        assert_eq!(i, vec![vec![t.clone(), z.clone()], vec![z, &t + &one]]);
    }
}
