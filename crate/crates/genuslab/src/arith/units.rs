//! Units of quadratic orders and generators of principal ideals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ideal::Ideal;
use super::quad::{half_omega, omega_relation, QuadElem};
use crate::budget;
use crate::error::{Error, Result};

/// Fundamental unit ε > 1 of ℚ(√d), d > 0, from the continued fraction of ω.
pub fn fundamental_unit(d: i64) -> Result<QuadElem> {
    if d <= 1 {
        return Err(Error::Unsupported(format!("fundamental unit needs d > 1, got {d}")));
    }
    let (b, c) = omega_relation(d);
    let n = BigInt::from(d);
    let sq = n.sqrt();
    let (mut pp, mut qq) = if half_omega(d) { (BigInt::one(), BigInt::from(2)) } else { (BigInt::zero(), BigInt::one()) };
    // convergents p_k/q_k
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    let bound = budget::period_bound();
    for _ in 0..bound {
        let a = (&pp + &sq).div_floor(&qq);
        let p = &a * &p0 + &p1;
        let q = &a * &q0 + &q1;
        let norm = &p * &p - BigInt::from(b) * &p * &q - BigInt::from(c) * &q * &q;
        if norm.abs().is_one() {
            let e = QuadElem::new(d, BigRational::from_integer(&p - BigInt::from(b) * &q), BigRational::from_integer(q));
            return Ok(e);
        }
        p1 = std::mem::replace(&mut p0, p);
        q1 = std::mem::replace(&mut q0, q);
        pp = &a * &qq - &pp;
        qq = (&n - &pp * &pp) / &qq;
    }
    Err(Error::PeriodBudgetExceeded { bound })
}

/// Generator of the torsion units: i for d = −1, a primitive sixth root for
/// d = −3, −1 otherwise. Returns (generator, order).
pub fn torsion_generator(d: i64) -> (QuadElem, u32) {
    match d {
        -1 => (QuadElem::omega(d), 4),
        -3 => (QuadElem::omega(d), 6),
        _ => (QuadElem::from_ints(d, -1, 0), 2),
    }
}

/// All roots of unity.
pub fn roots_of_unity(d: i64) -> Vec<QuadElem> {
    let (g, n) = torsion_generator(d);
    (0..n as i64).map(|k| g.pow(k)).collect()
}

/// Canonical associate: for imaginary fields the root-of-unity multiple
/// with x > 0, y ≥ 0 when there is one; for real fields the ε-power with
/// the most balanced embeddings, then the positive one.
pub fn normalize_associate(a: &QuadElem) -> Result<QuadElem> {
    let d = a.d;
    let key = |x: &QuadElem| {
        let good = x.x.is_positive() && !x.y.is_negative();
        (!good, -x.x.clone(), x.y.abs())
    };
    if d < 0 {
        let best = roots_of_unity(d).iter().map(|u| u * a).min_by(|p, q| key(p).cmp(&key(q))).unwrap();
        return Ok(best);
    }
    let eps = fundamental_unit(d)?;
    let ratio = |x: &QuadElem| {
        let v = x.to_f64().abs().ln() - x.conj().to_f64().abs().ln();
        v.abs()
    };
    let mut cur = a.clone();
    let step = eps.to_f64().ln();
    // |α/α'| shifts by ε² per multiplication
    let r = (cur.to_f64().abs().ln() - cur.conj().to_f64().abs().ln()) / (2.0 * step);
    let k = r.round() as i64;
    if k != 0 {
        cur = &cur * &eps.pow(-k);
    }
    for cand in [&cur * &eps, &cur * &eps.inv()] {
        if ratio(&cand) + 1e-9 < ratio(&cur) {
            cur = cand;
        }
    }
    let alt = -&cur;
    Ok(if key(&alt) < key(&cur) { alt } else { cur })
}

/// Integer square root if `n` is a perfect square.
fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Integer solutions x of a·x² + b·x + c = 0.
fn int_roots(a: &BigInt, b: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let disc = b * b - BigInt::from(4) * a * c;
    let Some(s) = exact_sqrt(&disc) else { return vec![] };
    let mut out = Vec::new();
    for num in [-b + &s, -b - &s] {
        let den = BigInt::from(2) * a;
        if num.is_multiple_of(&den) {
            out.push(num / den);
        }
    }
    out.dedup();
    out
}

/// A generator of a principal ideal, found by solving N(x·u₁ + y·u₂) = ±N(I)
/// exactly over a bounded range of y; normalized by [`normalize_associate`].
pub fn find_generator(i: &Ideal) -> Result<QuadElem> {
    let d = i.d;
    let unsupported = || Error::GeneratorSearchFailed { ideal: i.to_gen_string() };
    // Work with the integral ideal den·I.
    let j = Ideal { den: BigInt::one(), ..i.clone() };
    let n = &j.a * &j.c;
    let [u1, u2] = j.basis();
    // N(x u1 + y u2) = A x² + B x y + C y²
    let a = u1.norm().to_integer();
    let bq = ((&u1 + &u2).norm() - u1.norm() - u2.norm()).to_integer();
    let cq = u2.norm().to_integer();
    let disc = &bq * &bq - BigInt::from(4) * &a * &cq;
    let ybound: BigInt = if d < 0 {
        // C·y² ≤ (4aN/|disc|)
        (BigInt::from(4) * &a * &n / disc.abs()).sqrt() + 1
    } else {
        let eps = fundamental_unit(d)?.to_f64();
        let sd = (disc.abs().to_f64().unwrap()).sqrt();
        let nb = n.to_f64().unwrap();
        let b = 2.0 * (nb * eps).sqrt() * a.to_f64().unwrap().sqrt() / sd + 2.0;
        let cap = budget::generator_norm_factor() as f64 * nb.max(1.0) * 1e4;
        BigInt::from(b.min(cap).ceil() as i64)
    };
    let targets: Vec<BigInt> = if d < 0 { vec![n.clone()] } else { vec![n.clone(), -&n] };
    let mut y = BigInt::zero();
    while y <= ybound {
        for ys in [y.clone(), -&y] {
            for t in &targets {
                // a x² + (b y) x + (c y² − t) = 0
                for x in int_roots(&a, &(&bq * &ys), &(&cq * &ys * &ys - t)) {
                    let g = &u1.scale(&BigRational::from_integer(x)) + &u2.scale(&BigRational::from_integer(ys.clone()));
                    if !g.is_zero() {
                        let g = g.scale(&BigRational::new(BigInt::one(), i.den.clone()));
                        return normalize_associate(&g);
                    }
                }
            }
            if y.is_zero() {
                break;
            }
        }
        y += 1;
    }
    Err(unsupported())
}

/// True if `u` is a unit of the maximal order.
pub fn is_unit(u: &QuadElem) -> bool {
    u.is_integral() && u.norm().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ideal::primes_above;

    #[test]
    fn fundamental_units() {
        assert_eq!(fundamental_unit(2).unwrap(), QuadElem::from_ints(2, 1, 1));
        assert_eq!(fundamental_unit(5).unwrap(), QuadElem::omega(5));
        assert_eq!(fundamental_unit(3).unwrap(), QuadElem::from_ints(3, 2, 1));
        // d = 46: ε = 24335 + 3588√46
        assert_eq!(fundamental_unit(46).unwrap(), QuadElem::from_ints(46, 24335, 3588));
        for d in [6i64, 7, 13, 19, 21, 29, 61, 94] {
            let e = fundamental_unit(d).unwrap();
            assert!(is_unit(&e), "d = {d}");
            assert!(e.to_f64() > 1.0);
        }
    }

    #[test]
    fn gaussian_generator() {
        let p = &primes_above(-1, &BigInt::from(5))[0];
        assert_eq!(find_generator(&p.ideal).unwrap(), QuadElem::from_ints(-1, 2, 1));
        let p2 = &primes_above(-1, &BigInt::from(2))[0];
        assert_eq!(find_generator(&p2.ideal).unwrap(), QuadElem::from_ints(-1, 1, 1));
    }

    #[test]
    fn nonprincipal_fails() {
        let p = &primes_above(-5, &BigInt::from(2))[0];
        assert!(find_generator(&p.ideal).is_err());
        let sq = p.ideal.mul(&p.ideal);
        assert_eq!(find_generator(&sq).unwrap(), QuadElem::from_ints(-5, 2, 0));
    }

    #[test]
    fn real_generators() {
        for d in [2i64, 3, 7, 13] {
            for p in [2u32, 3, 7, 11, 13, 17] {
                for q in primes_above(d, &BigInt::from(p)) {
                    let g = find_generator(&q.ideal).unwrap();
                    assert_eq!(Ideal::principal(&g), q.ideal, "d={d} p={p}");
                }
            }
        }
        let half = Ideal::principal(&QuadElem::from_ints(2, 1, 0)).mul(&primes_above(2, &BigInt::from(7))[0].ideal.inv());
        let g = find_generator(&half).unwrap();
        assert_eq!(Ideal::principal(&g), half);
    }
}
