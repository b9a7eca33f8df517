//! Quaternion and cyclic algebras over Q: Hilbert symbols, ramification,
//! residues, unit representatives with norm certificates, and genera.

use genuslab::brauer::{
    genus_enumerate_global, hilbert_symbol, is_unramified_quaternion, ramification_set, reduce_to_unit_rep,
    residue_cyclic, BrPlace, GlobalBrauerClass, PlaceSet,
};
use genuslab::field::{Elem, Field};
use genuslab::places::{Place, QuadExt};
use num_bigint::BigInt;
use num_rational::BigRational;

fn q(n: i64) -> Elem {
    Elem::from_int(&Field::Q, n)
}

fn main() -> genuslab::Result<()> {
    for (a, b) in [(-1, -1), (-1, 3), (2, 5), (-2, -7)] {
        let ram: Vec<String> = ramification_set(&q(a), &q(b))?.iter().map(|v| v.to_string()).collect();
        let h2 = hilbert_symbol(&q(a), &q(b), &BrPlace::Finite(Place::prime(2)))?;
        println!("({a}, {b}): (a,b)_2 = {h2:+}, ramified at {ram:?}");
    }

    // (Q(i), σ, 3^k) has residue k/2 at the inert prime 3
    let l = QuadExt::Number(-1);
    for k in 0..4u32 {
        println!("residue of (Q(i), 3^{k}) at 3: {}", residue_cyclic(&l, &q(3i64.pow(k)), &Place::prime(3))?);
    }

    // drop the split primes from c; the certificate is a product of norms
    let c = Elem::Q(BigRational::new(BigInt::from(45), BigInt::from(13)));
    let rep = reduce_to_unit_rep(&l, &c, &PlaceSet::all_but(vec![Place::prime(2)]))?;
    println!("c = {c}: u = {}, d = {}", rep.u, rep.d);
    for p in &rep.pi_w {
        println!("  N({})^{} at {}", p.pi_w, p.exponent, p.place);
    }

    let v = is_unramified_quaternion(&q(-1), &q(-1), &PlaceSet::all_but(vec![Place::prime(2)]))?;
    println!("(-1,-1) unramified away from 2: {}", v.unramified);

    let half = BigRational::new(1.into(), 2.into());
    let third = BigRational::new(1.into(), 3.into());
    let dc = GlobalBrauerClass::new(3, [(BrPlace::Finite(Place::prime(7)), third.clone()), (BrPlace::Finite(Place::prime(13)), -third)]);
    println!("genus of a degree-3 class ramified at 7, 13: {} member(s)", genus_enumerate_global(&dc)?.len());
    let dq = GlobalBrauerClass::new(2, [(BrPlace::Real, half.clone()), (BrPlace::Finite(Place::prime(2)), half)]);
    println!("genus of (-1,-1): {} member(s)", genus_enumerate_global(&dq)?.len());
    Ok(())
}
