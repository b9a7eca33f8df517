//! Picard groups and S-unit groups, and a set S that kills Pic.

use genuslab::divisor::{pic_group, pic_trivializing_set, places_above_set, principal_divisor, unit_group};
use genuslab::arith::QuadElem;
use genuslab::field::{Elem, Field};
use num_bigint::BigInt;

fn main() -> genuslab::Result<()> {
    for d in [-5, -14, -23] {
        let f = Field::Quad(d);
        let pic = pic_group(&f, &[])?;
        let s = pic_trivializing_set(&f)?;
        let after = pic_group(&f, &s)?;
        let names: Vec<String> = s.iter().map(|p| p.to_string()).collect();
        println!("d={d}: |Pic| = {}, inverting {names:?} gives |Pic| = {}", pic.order(), after.order());
    }

    let x = Elem::Quad(QuadElem::from_ints(-5, 1, 1));
    println!("div(1 + w) = {}", principal_divisor(&x, &[], false)?);

    let f2 = Field::Quad(2);
    let s = places_above_set(2, &[BigInt::from(7)]);
    let u = unit_group(&f2, &s)?;
    let free: Vec<String> = u.free.iter().map(|e| e.to_string()).collect();
    println!("U(Z[sqrt 2][1/7]): torsion {} (order {}), free {free:?}", u.torsion, u.torsion_order);
    Ok(())
}
