//! Lattices over the ring of integers of ℚ(√d), handled as O-stable
//! ℤ-lattices in ℚ^{2n} (coordinates w.r.t. {1, ω} in each slot), with
//! pseudo-bases and their reduction to bases.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lattice::{lat_hnf, lat_intersect, lat_sum};
use crate::arith::classgroup::ClassGroup;
use crate::arith::ideal::{Ideal, PrimeIdeal};
use crate::arith::linalg::{hnf, Mat};
use crate::arith::QuadElem;
use crate::error::{Error, Result};

fn coords(x: &QuadElem) -> [BigRational; 2] {
    [x.x.clone(), x.y.clone()]
}

fn times_omega(x: &QuadElem) -> QuadElem {
    x * &QuadElem::omega(x.d)
}

/// ℤ-generators of O·(rows): each row r gives r and ω·r.
pub fn z_rows(rows: &Mat<QuadElem>) -> Mat<BigRational> {
    let mut out = Vec::new();
    for r in rows {
        for k in 0..2 {
            let v: Vec<BigRational> = r.iter().flat_map(|x| coords(&if k == 0 { x.clone() } else { times_omega(x) })).collect();
            out.push(v);
        }
    }
    out
}

/// Row vector over L from ℚ-coordinates.
pub fn from_z_row(d: i64, row: &[BigRational]) -> Vec<QuadElem> {
    row.chunks(2).map(|c| QuadElem::new(d, c[0].clone(), c[1].clone())).collect()
}

/// ℤ-basis of 𝔞·Oⁿ.
pub fn ideal_lattice(a: &Ideal, n: usize) -> Mat<BigRational> {
    let d = a.d;
    let mut out = Vec::new();
    for j in 0..n {
        for b in a.basis() {
            let mut r = vec![QuadElem::zero(d); n];
            r[j] = b;
            out.push(r.iter().flat_map(coords).collect());
        }
    }
    out
}

fn min_valuation(p: &PrimeIdeal, m: &Mat<QuadElem>) -> i64 {
    m.iter().flatten().filter(|x| !x.is_zero()).map(|x| p.valuation(x)).min().unwrap_or(0)
}

/// ℤ-basis of the O-lattice N with N_𝔭 = O_𝔭ⁿ·g_𝔭 at the given primes and
/// N_𝔮 = O_𝔮ⁿ elsewhere.
pub fn glue(d: i64, n: usize, comps: &[(PrimeIdeal, Mat<QuadElem>)]) -> Mat<BigRational> {
    let mut data = Vec::new();
    let mut l1 = Ideal::unit(d);
    for (p, g) in comps {
        let gi = crate::arith::linalg::inverse(g).expect("component must be invertible");
        let m = (-min_valuation(p, g)).max(0);
        let k = (-min_valuation(p, &gi)).max(0);
        l1 = l1.mul(&p.ideal.pow(-m));
        data.push((p, g, m, k));
    }
    // M_𝔭 is g_𝔭 at 𝔭 and O elsewhere; adding 𝔭^{k+m}·L₁ keeps 𝔭 and
    // coarsens the other support primes
    let mut acc: Option<Mat<BigRational>> = None;
    for (p, g, m, k) in data {
        let local = lat_sum(&lat_hnf(&z_rows(g)), &ideal_lattice(&p.ideal.pow(k), n));
        let mp = lat_intersect(&local, &ideal_lattice(&p.ideal.pow(-m), n));
        let up = lat_sum(&mp, &ideal_lattice(&p.ideal.pow(k + m).mul(&l1), n));
        acc = Some(match acc {
            None => up,
            Some(x) => lat_intersect(&x, &up),
        });
    }
    lat_hnf(&acc.unwrap_or_else(|| ideal_lattice(&Ideal::unit(d), n)))
}

/// Integer combination of the rows of `gens` (integral coordinates) equal to
/// (1, 0), i.e. to 1 ∈ O.
fn express_one(gens: &[QuadElem]) -> Option<Vec<BigInt>> {
    let rows: Mat<BigInt> = gens.iter().map(|g| vec![g.x.to_integer(), g.y.to_integer()]).collect();
    if gens.iter().any(|g| !g.is_integral()) {
        return None;
    }
    let h = hnf(&rows, &BigInt::zero());
    (h.rank == 2 && h.h[0][0].is_one() && h.h[0][1].is_zero()).then(|| h.u[0].clone())
}

/// Pseudo-basis (𝔟ᵢ, vᵢ) with N = ⊕ 𝔟ᵢ vᵢ and vᵢ = (0, …, 0, 1, *, …).
pub fn pseudo_basis(d: i64, zbasis: &Mat<BigRational>) -> Vec<(Ideal, Vec<QuadElem>)> {
    let h = lat_hnf(zbasis);
    let n = h[0].len() / 2;
    let beta = [QuadElem::new(d, h[0][0].clone(), h[0][1].clone()), QuadElem::new(d, h[1][0].clone(), h[1][1].clone())];
    let lifts = [from_z_row(d, &h[0]), from_z_row(d, &h[1])];
    let b = Ideal::from_generators(d, &beta);
    let gamma = b.inv().basis();
    let mut prods = Vec::new();
    let mut pairs = Vec::new();
    for (a, be) in beta.iter().enumerate() {
        for (c, ga) in gamma.iter().enumerate() {
            prods.push(be * ga);
            pairs.push((a, c));
        }
    }
    let comb = express_one(&prods).expect("𝔟·𝔟⁻¹ = O");
    let mut v = vec![QuadElem::zero(d); n];
    for (coef, &(a, c)) in comb.iter().zip(&pairs) {
        if coef.is_zero() {
            continue;
        }
        let s = &gamma[c] * &QuadElem::from_rat(d, BigRational::from_integer(coef.clone()));
        for (vi, li) in v.iter_mut().zip(&lifts[a]) {
            *vi = &*vi + &(&s * li);
        }
    }
    debug_assert!(v[0].is_one());
    let mut out = vec![(b, v)];
    if n > 1 {
        let rest: Mat<BigRational> = h[2..].iter().map(|r| r[2..].to_vec()).collect();
        for (i, w) in pseudo_basis(d, &rest) {
            let mut full = vec![QuadElem::zero(d)];
            full.extend(w);
            out.push((i, full));
        }
    }
    out
}

fn scale_vec(v: &[QuadElem], s: &QuadElem) -> Vec<QuadElem> {
    v.iter().map(|x| x * s).collect()
}

/// Small α ∈ 𝔟⁻¹ with α𝔟 + 𝔠 = O (𝔠 integral).
fn coprime_scaling(b: &Ideal, c: &Ideal) -> Option<QuadElem> {
    let [g0, g1] = b.inv().basis();
    for h in 1i64..=30 {
        for x in -h..=h {
            for y in -h..=h {
                if x.abs().max(y.abs()) != h && h > 1 {
                    continue;
                }
                let a = &(&g0 * &QuadElem::from_ints(b.d, x, 0)) + &(&g1 * &QuadElem::from_ints(b.d, y, 0));
                if a.is_zero() {
                    continue;
                }
                if b.scale(&a).add(c).is_one() {
                    return Some(a);
                }
            }
        }
    }
    None
}

/// 𝔟v ⊕ 𝔠w = O·v′ ⊕ 𝔟′𝔠′·w′.
fn combine(b: &Ideal, v: &[QuadElem], c: &Ideal, w: &[QuadElem]) -> (Vec<QuadElem>, Ideal, Vec<QuadElem>) {
    let d = b.d;
    let den = QuadElem::from_rat(d, BigRational::from_integer(c.den.clone()));
    let c1 = c.scale(&den);
    let w1 = scale_vec(w, &den.inv());
    let alpha = coprime_scaling(b, &c1).expect("coprime representative exists");
    let b1 = b.scale(&alpha);
    let v1 = scale_vec(v, &alpha.inv());
    let gens: Vec<QuadElem> = b1.basis().into_iter().chain(c1.basis()).collect();
    let comb = express_one(&gens).expect("𝔟′ + 𝔠′ = O");
    let term = |range: std::ops::Range<usize>| {
        range.fold(QuadElem::zero(d), |acc, i| &acc + &(&gens[i] * &QuadElem::from_rat(d, BigRational::from_integer(comb[i].clone()))))
    };
    let (x, y) = (term(0..2), term(2..4));
    let vprime: Vec<QuadElem> = v1.iter().zip(&w1).map(|(p, q)| &(&x * p) + &(&y * q)).collect();
    let wprime: Vec<QuadElem> = v1.iter().zip(&w1).map(|(p, q)| p - q).collect();
    (vprime, b1.mul(&c1), wprime)
}

/// Bring a pseudo-basis to the form (O, u₁), …, (O, u_{n−1}), (𝔞, w).
pub fn steinitz_form(pb: &[(Ideal, Vec<QuadElem>)]) -> (Vec<Vec<QuadElem>>, Ideal, Vec<QuadElem>) {
    let mut basis = Vec::new();
    let (mut a, mut w) = pb[0].clone();
    for (c, x) in &pb[1..] {
        let (u, na, nw) = combine(&a, &w, c, x);
        basis.push(u);
        a = na;
        w = nw;
    }
    (basis, a, w)
}

/// Basis of N ⊗ O_S from a pseudo-basis, or the Steinitz ideal when its
/// class survives in Pic(O_S).
pub fn free_basis(cl: &ClassGroup, s: &[PrimeIdeal], pb: &[(Ideal, Vec<QuadElem>)]) -> Result<Mat<QuadElem>> {
    let (mut basis, a, w) = steinitz_form(pb);
    match cl.s_generator(&a, s)? {
        Some(alpha) => {
            basis.push(scale_vec(&w, &alpha));
            Ok(basis)
        }
        None => Err(Error::NonPrincipalClass { ideal: a.to_gen_string() }),
    }
}

/// Product of the pseudo-basis ideals.
pub fn steinitz_ideal(pb: &[(Ideal, Vec<QuadElem>)]) -> Ideal {
    pb.iter().fold(Ideal::unit(pb[0].0.d), |acc, (i, _)| acc.mul(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ideal::primes_above;
    use crate::arith::linalg::{det, inverse, mat_mul};

    fn p_above(d: i64, p: i64, k: usize) -> PrimeIdeal {
        primes_above(d, &BigInt::from(p)).remove(k)
    }

    fn diag(d: i64, xs: &[QuadElem]) -> Mat<QuadElem> {
        let n = xs.len();
        (0..n).map(|i| (0..n).map(|j| if i == j { xs[i].clone() } else { QuadElem::zero(d) }).collect()).collect()
    }

    #[test]
    fn glue_rank_one_is_prime_ideal() {
        let d = -5;
        let p2 = p_above(d, 2, 0);
        let g = diag(d, &[p2.uniformizer()]);
        let z = glue(d, 1, &[(p2.clone(), g)]);
        let pb = pseudo_basis(d, &z);
        assert_eq!(pb[0].0, p2.ideal);
        let cl = ClassGroup::compute(d).unwrap();
        assert!(matches!(free_basis(&cl, &[], &pb), Err(Error::NonPrincipalClass { .. })));
        // inverting 𝔭₂ makes it free
        let b = free_basis(&cl, &[p2.clone()], &pb).unwrap();
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn rank_two_with_principal_steinitz() {
        let d = -5;
        let p2 = p_above(d, 2, 0);
        let p3 = p_above(d, 3, 0);
        // det class 𝔭₂·𝔭₃ = (1 + √−5) is principal
        let comps = vec![(p2.clone(), diag(d, &[p2.uniformizer(), QuadElem::one(d)])), (p3.clone(), diag(d, &[QuadElem::one(d), p3.uniformizer()]))];
        let z = glue(d, 2, &comps);
        let pb = pseudo_basis(d, &z);
        assert_eq!(pb.len(), 2);
        let cl = ClassGroup::compute(d).unwrap();
        let h = free_basis(&cl, &[], &pb).unwrap();
        // h generates the same ℤ-lattice
        assert_eq!(lat_hnf(&z_rows(&h)), z);
        for (p, g) in &comps {
            let k = mat_mul(g, &inverse(&h).unwrap());
            assert!(k.iter().flatten().all(|x| x.is_zero() || p.valuation(x) >= 0));
            assert_eq!(p.valuation(&det(&k)), 0);
        }
    }

    #[test]
    fn steinitz_of_pseudo_basis_tracks_determinant() {
        let d = -23;
        let ps: Vec<PrimeIdeal> = [2i64, 3, 13].iter().map(|&p| p_above(d, p, 0)).collect();
        let comps: Vec<(PrimeIdeal, Mat<QuadElem>)> = ps
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut g = diag(d, &[QuadElem::one(d), QuadElem::one(d), QuadElem::one(d)]);
                g[i][(i + 1) % 3] = QuadElem::from_ints(d, 1, 1);
                g[i][i] = p.uniformizer().pow(i as i64 + 1);
                (p.clone(), g)
            })
            .collect();
        let z = glue(d, 3, &comps);
        let pb = pseudo_basis(d, &z);
        let st = steinitz_ideal(&pb);
        let cl = ClassGroup::compute(d).unwrap();
        let expected = ps.iter().enumerate().fold(Ideal::unit(d), |acc, (i, p)| acc.mul(&p.ideal.pow(i as i64 + 1)));
        assert_eq!(cl.class_of(&st), cl.class_of(&expected));
        let (_, a, _) = steinitz_form(&pb);
        assert_eq!(cl.class_of(&a), cl.class_of(&expected));
    }
}
