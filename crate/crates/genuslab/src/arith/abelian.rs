//! Finitely generated abelian groups given by generators and relations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::linalg::{inverse, map_mat, smith_int, Mat};

/// ℤ^k modulo a relation lattice, in Smith coordinates ⊕ ℤ/dᵢ (dᵢ = 0 means ℤ).
#[derive(Clone, Debug)]
pub struct AbGroup {
    pub rank_in: usize,
    /// Nontrivial invariant factors d₁ | d₂ | ….
    pub invariants: Vec<BigInt>,
    /// k × r projection: coordinates = v·proj reduced mod invariants.
    proj: Mat<BigInt>,
    /// r × k: lifts of the Smith generators to ℤ^k.
    lifts: Mat<BigInt>,
}

impl AbGroup {
    pub fn trivial(k: usize) -> AbGroup {
        AbGroup { rank_in: k, invariants: vec![], proj: vec![vec![]; k], lifts: vec![] }
    }

    pub fn from_relations(k: usize, rels: &Mat<BigInt>) -> AbGroup {
        if k == 0 {
            return AbGroup::trivial(0);
        }
        let rels: Mat<BigInt> = if rels.is_empty() { vec![vec![BigInt::zero(); k]] } else { rels.clone() };
        let (diag, v) = smith_int(&rels);
        let mut full: Vec<BigInt> = diag;
        full.resize(k, BigInt::zero());
        let vq = map_mat(&v, |x| BigRational::from_integer(x.clone()));
        let vinv = map_mat(&inverse(&vq).expect("unimodular transform"), |x| x.to_integer());
        let keep: Vec<usize> = (0..k).filter(|&i| !full[i].is_one()).collect();
        let proj = (0..k).map(|r| keep.iter().map(|&c| v[r][c].clone()).collect()).collect();
        let lifts = keep.iter().map(|&i| vinv[i].clone()).collect();
        let invariants = keep.iter().map(|&i| full[i].clone()).collect();
        AbGroup { rank_in: k, invariants, proj, lifts }
    }

    /// Order, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        let mut o = BigInt::one();
        for d in &self.invariants {
            if d.is_zero() {
                return None;
            }
            o *= d;
        }
        Some(o)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Smith coordinates of the image of `v ∈ ℤ^k`.
    pub fn coords(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rank_in);
        (0..self.invariants.len())
            .map(|j| {
                let s: BigInt = v.iter().zip(&self.proj).map(|(x, row)| x * &row[j]).sum();
                let d = &self.invariants[j];
                if d.is_zero() {
                    s
                } else {
                    s.mod_floor(d)
                }
            })
            .collect()
    }

    pub fn is_zero(&self, v: &[BigInt]) -> bool {
        self.coords(v).iter().all(|x| x.is_zero())
    }

    /// A vector of ℤ^k mapping to the j-th Smith generator.
    pub fn lift(&self, j: usize) -> &[BigInt] {
        &self.lifts[j]
    }

    /// Order of the element with coordinates `c` (`None` if infinite).
    pub fn element_order(&self, c: &[BigInt]) -> Option<BigInt> {
        let mut o = BigInt::one();
        for (x, d) in c.iter().zip(&self.invariants) {
            if d.is_zero() {
                if !x.is_zero() {
                    return None;
                }
                continue;
            }
            let oi = d / x.gcd(d);
            o = o.lcm(&oi);
        }
        Some(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn z6_as_z2_z3() {
        // generators a, b with 2a = 0, 3b = 0
        let g = AbGroup::from_relations(2, &vec![v(&[2, 0]), v(&[0, 3])]);
        assert_eq!(g.invariants, v(&[6]));
        assert_eq!(g.order(), Some(BigInt::from(6)));
        assert!(!g.is_zero(&v(&[1, 0])));
        assert!(g.is_zero(&v(&[2, 3])));
        let l = g.lift(0).to_vec();
        assert_eq!(g.coords(&l), v(&[1]));
        assert_eq!(g.element_order(&g.coords(&v(&[1, 0]))), Some(BigInt::from(2)));
    }

    #[test]
    fn infinite_part() {
        let g = AbGroup::from_relations(2, &vec![v(&[4, 0])]);
        assert_eq!(g.order(), None);
        assert_eq!(g.invariants.len(), 2);
    }
}
