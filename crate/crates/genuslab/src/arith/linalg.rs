//! Dense linear algebra: matrices over fields (ℚ, k(t), ℚ(√d)) and Hermite /
//! Smith normal forms over Euclidean rings (ℤ, k[t]).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::quad::QuadElem;
use super::ratfn::RatFn;

/// Field operations used by the generic matrix routines. The `*_like`
/// constructors take a prototype so that context (p, d) travels with values.
pub trait FieldElem: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_e(&self, o: &Self) -> Self;
    fn sub_e(&self, o: &Self) -> Self;
    fn mul_e(&self, o: &Self) -> Self;
    fn div_e(&self, o: &Self) -> Self;
    fn neg_e(&self) -> Self {
        self.zero_like().sub_e(self)
    }
}

impl FieldElem for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_e(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_e(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_e(&self, o: &Self) -> Self {
        self * o
    }
    fn div_e(&self, o: &Self) -> Self {
        self / o
    }
}

impl FieldElem for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::zero(self.base().clone())
    }
    fn one_like(&self) -> Self {
        RatFn::one(self.base().clone())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_e(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_e(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_e(&self, o: &Self) -> Self {
        self * o
    }
    fn div_e(&self, o: &Self) -> Self {
        self / o
    }
}

impl FieldElem for QuadElem {
    fn zero_like(&self) -> Self {
        QuadElem::zero(self.d)
    }
    fn one_like(&self) -> Self {
        QuadElem::one(self.d)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_e(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_e(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_e(&self, o: &Self) -> Self {
        self * o
    }
    fn div_e(&self, o: &Self) -> Self {
        self / o
    }
}

/// Row-major dense matrix.
pub type Mat<F> = Vec<Vec<F>>;

pub fn identity<F: FieldElem>(n: usize, proto: &F) -> Mat<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { proto.one_like() } else { proto.zero_like() }).collect())
        .collect()
}

pub fn mat_mul<F: FieldElem>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    assert!(a.iter().all(|r| r.len() == k), "dimension mismatch");
    let z = b[0][0].zero_like();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = z.clone();
                    for l in 0..k {
                        if !a[i][l].is_zero_elem() && !b[l][j].is_zero_elem() {
                            acc = acc.add_e(&a[i][l].mul_e(&b[l][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose<F: Clone>(a: &Mat<F>) -> Mat<F> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn map_mat<F, G>(a: &Mat<F>, f: impl Fn(&F) -> G) -> Mat<G> {
    a.iter().map(|r| r.iter().map(&f).collect()).collect()
}

pub fn is_identity<F: FieldElem>(a: &Mat<F>) -> bool {
    a.iter().enumerate().all(|(i, r)| {
        r.iter().enumerate().all(|(j, x)| {
            if i == j {
                *x == x.one_like()
            } else {
                x.is_zero_elem()
            }
        })
    })
}

/// Determinant by fraction-free-free Gaussian elimination over the field.
pub fn det<F: FieldElem>(a: &Mat<F>) -> F {
    let n = a.len();
    let mut m = a.clone();
    let mut d = m[0][0].one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero_elem()) else {
            return d.zero_like();
        };
        if p != c {
            m.swap(p, c);
            d = d.neg_e();
        }
        let piv = m[c][c].clone();
        d = d.mul_e(&piv);
        for r in c + 1..n {
            if m[r][c].is_zero_elem() {
                continue;
            }
            let f = m[r][c].div_e(&piv);
            for k in c..n {
                let v = m[r][k].sub_e(&f.mul_e(&m[c][k]));
                m[r][k] = v;
            }
        }
    }
    d
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<F: FieldElem>(a: &Mat<F>) -> Option<Mat<F>> {
    let n = a.len();
    let proto = a[0][0].clone();
    let mut m: Mat<F> = a
        .iter()
        .zip(identity(n, &proto))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero_elem())?;
        m.swap(p, c);
        let piv = m[c][c].clone();
        for k in 0..2 * n {
            m[c][k] = m[c][k].div_e(&piv);
        }
        for r in 0..n {
            if r == c || m[r][c].is_zero_elem() {
                continue;
            }
            let f = m[r][c].clone();
            for k in 0..2 * n {
                let v = m[r][k].sub_e(&f.mul_e(&m[c][k]));
                m[r][k] = v;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Euclidean ring interface for Hermite normal forms.
pub trait Euclid: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_e(&self) -> bool;
    fn add_r(&self, o: &Self) -> Self;
    fn sub_r(&self, o: &Self) -> Self;
    fn mul_r(&self, o: &Self) -> Self;
    /// Division with remainder; the remainder is the canonical representative
    /// (nonnegative for integers).
    fn div_rem_r(&self, o: &Self) -> (Self, Self);
    /// Euclidean size used to pick pivots.
    fn size(&self) -> BigInt;
    /// `(u, u⁻¹)` with `u·self` normalized (positive / monic).
    fn normalizing_unit(&self) -> (Self, Self);
}

impl Euclid for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_e(&self) -> bool {
        self.is_zero()
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn div_rem_r(&self, o: &Self) -> (Self, Self) {
        let (q, r) = self.div_mod_floor(o);
        if r.is_negative() {
            // o negative: shift remainder into [0, |o|)
            (q + 1, r - o)
        } else {
            (q, r)
        }
    }
    fn size(&self) -> BigInt {
        self.abs()
    }
    fn normalizing_unit(&self) -> (Self, Self) {
        if self.is_negative() {
            (BigInt::from(-1), BigInt::from(-1))
        } else {
            (BigInt::one(), BigInt::one())
        }
    }
}

impl Euclid for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.base().clone())
    }
    fn one_like(&self) -> Self {
        Poly::one(self.base().clone())
    }
    fn is_zero_e(&self) -> bool {
        self.is_zero()
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn div_rem_r(&self, o: &Self) -> (Self, Self) {
        self.div_rem(o)
    }
    fn size(&self) -> BigInt {
        match self.degree() {
            None => BigInt::zero(),
            Some(d) => BigInt::from(d + 1),
        }
    }
    fn normalizing_unit(&self) -> (Self, Self) {
        let base = self.base().clone();
        if self.is_zero() {
            return (Poly::one(base.clone()), Poly::one(base));
        }
        let l = self.lead();
        (Poly::constant(base.clone(), base.inv(&l)), Poly::constant(base, l))
    }
}

/// Result of [`hnf`]: `u · input = h`, `u` unimodular; the first `rank` rows
/// of `h` are the nonzero echelon rows with pivots in `pivots`.
#[derive(Clone, Debug)]
pub struct Hnf<R> {
    pub h: Mat<R>,
    pub u: Mat<R>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Row Hermite normal form: pivots normalized, entries above each pivot
/// reduced to canonical remainders. Rows of `u` past `rank` span the left
/// kernel of the input.
pub fn hnf<R: Euclid>(a: &Mat<R>, proto: &R) -> Hnf<R> {
    hnf_impl(a, proto, true)
}

fn hnf_impl<R: Euclid>(a: &Mat<R>, proto: &R, track_u: bool) -> Hnf<R> {
    let m = a.len();
    let ncols = if m == 0 { 0 } else { a[0].len() };
    let mut h = a.clone();
    let mut u: Mat<R> = if track_u {
        (0..m).map(|i| (0..m).map(|j| if i == j { proto.one_like() } else { proto.zero_like() }).collect()).collect()
    } else {
        vec![vec![]; m]
    };
    let mut r = 0;
    let mut pivots = Vec::new();
    let row_sub = |h: &mut Mat<R>, u: &mut Mat<R>, i: usize, k: usize, q: &R| {
        // row_i -= q * row_k
        for c in 0..h[i].len() {
            let v = h[i][c].sub_r(&q.mul_r(&h[k][c]));
            h[i][c] = v;
        }
        for c in 0..u[i].len() {
            let v = u[i][c].sub_r(&q.mul_r(&u[k][c]));
            u[i][c] = v;
        }
    };
    for c in 0..ncols {
        if r >= m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[i][c].is_zero_e())
                .min_by(|&i, &j| h[i][c].size().cmp(&h[j][c].size()));
            let Some(b) = best else { break };
            h.swap(r, b);
            u.swap(r, b);
            let mut done = true;
            for i in r + 1..m {
                if h[i][c].is_zero_e() {
                    continue;
                }
                let (q, _) = h[i][c].div_rem_r(&h[r][c]);
                row_sub(&mut h, &mut u, i, r, &q);
                if !h[i][c].is_zero_e() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero_e() {
            continue;
        }
        let (unit, _) = h[r][c].normalizing_unit();
        for x in h[r].iter_mut() {
            *x = x.mul_r(&unit);
        }
        for x in u[r].iter_mut() {
            *x = x.mul_r(&unit);
        }
        for i in 0..r {
            let (q, _) = h[i][c].div_rem_r(&h[r][c]);
            if !q.is_zero_e() {
                row_sub(&mut h, &mut u, i, r, &q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Hnf { h, u, rank: r, pivots }
}

/// Echelon basis (nonzero HNF rows) of the row module.
pub fn hnf_basis<R: Euclid>(a: &Mat<R>, proto: &R) -> Mat<R> {
    let res = hnf_impl(a, proto, false);
    res.h.into_iter().take(res.rank).collect()
}

/// Smith normal form diagonal of an integer matrix (nonzero invariant factors
/// in divisibility order) together with `v` such that `u·a·v` is diagonal.
pub fn smith_int(a: &Mat<BigInt>) -> (Vec<BigInt>, Mat<BigInt>) {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut s = a.clone();
    let mut v: Mat<BigInt> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut t = 0;
    while t < m.min(n) {
        // pick smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !s[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.swap(t, bi);
        for row in s.iter_mut() {
            row.swap(t, bj);
        }
        for row in v.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..m {
            let q = s[i][t].div_floor(&s[t][t]);
            if !q.is_zero() {
                for j in t..n {
                    let x = &s[i][j] - &q * &s[t][j];
                    s[i][j] = x;
                }
            }
            if !s[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            let q = s[t][j].div_floor(&s[t][t]);
            if !q.is_zero() {
                for i in t..m {
                    let x = &s[i][j] - &q * &s[i][t];
                    s[i][j] = x;
                }
                for row in v.iter_mut() {
                    let x = &row[j] - &q * &row[t];
                    row[j] = x;
                }
            }
            if !s[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility condition
        let mut fixed = false;
        'outer: for i in t + 1..m {
            for j in t + 1..n {
                if !(&s[i][j] % &s[t][t]).is_zero() {
                    for k in t..n {
                        let x = &s[t][k] + &s[i][k];
                        s[t][k] = x;
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        if s[t][t].is_negative() {
            for k in t..n {
                s[t][k] = -s[t][k].clone();
            }
        }
        t += 1;
    }
    let diag = (0..t).map(|i| s[i][i].clone()).collect();
    (diag, v)
}

/// Left kernel of an integer matrix as a ℤ-basis (rows).
pub fn int_left_kernel(a: &Mat<BigInt>) -> Mat<BigInt> {
    let res = hnf(a, &BigInt::zero());
    let k = res.u[res.rank..].to_vec();
    if k.is_empty() {
        return k;
    }
    hnf_basis(&k, &BigInt::zero())
}

/// Convert a rational matrix to integers by a common denominator.
pub fn clear_denominators(a: &Mat<BigRational>) -> (Mat<BigInt>, BigInt) {
    let den = a
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let dd = BigRational::from_integer(den.clone());
    let m = a.iter().map(|r| r.iter().map(|x| (x * &dd).to_integer()).collect()).collect();
    (m, den)
}

/// ℤ-module echelon basis of the rows of a rational matrix.
pub fn rational_row_hnf(a: &Mat<BigRational>) -> Mat<BigRational> {
    if a.is_empty() {
        return vec![];
    }
    let (m, den) = clear_denominators(a);
    let b = hnf_basis(&m, &BigInt::zero());
    let dd = BigRational::from_integer(den);
    b.into_iter()
        .map(|r| r.into_iter().map(|x| BigRational::from_integer(x) / &dd).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zi(rows: &[&[i64]]) -> Mat<BigInt> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_small() {
        let a = zi(&[&[5, 0], &[0, 5], &[2, 1], &[-1, 2]]);
        let h = hnf(&a, &BigInt::zero());
        assert_eq!(h.rank, 2);
        assert_eq!(h.h[..2].to_vec(), zi(&[&[1, 3], &[0, 5]]));
        // u·a = h
        let prod: Mat<BigInt> = h
            .u
            .iter()
            .map(|r| (0..2).map(|j| (0..4).map(|k| &r[k] * &a[k][j]).sum()).collect())
            .collect();
        assert_eq!(prod, h.h);
    }

    #[test]
    fn smith_diag() {
        let a = zi(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let (d, _) = smith_int(&a);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn det_and_inverse() {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        let a = vec![vec![r(2), r(1)], vec![r(7), r(4)]];
        assert_eq!(det(&a), r(1));
        let inv = inverse(&a).unwrap();
        assert!(is_identity(&mat_mul(&a, &inv)));
    }

    #[test]
    fn kernel() {
        let a = zi(&[&[2], &[3], &[4]]);
        let k = int_left_kernel(&a);
        assert_eq!(k.len(), 2);
        for row in &k {
            let s: BigInt = row.iter().zip(&a).map(|(x, r)| x * &r[0]).sum();
            assert!(s.is_zero());
        }
    }
}
