//! Places, valuations, residues and splitting in quadratic extensions.

use genuslab::field::Field;
use genuslab::parse::parse_element;
use genuslab::places::{places_above, residue, support, valuation, Place, QuadExt};

fn main() -> genuslab::Result<()> {
    let x = parse_element("-3^4 * 7 / 50", &Field::Q)?;
    for (p, v) in support(&x)? {
        println!("v_{p}({x}) = {v}");
    }
    let r = parse_element("(t^2 + 1)^2 / (t^3 - t) @ Fp(5)", &Field::Q)?;
    let sup = support(&r)?;
    let degree_sum: i64 = sup.iter().map(|(p, m)| m * p.degree() as i64).sum();
    let terms: Vec<String> = sup.iter().map(|(p, m)| format!("{m}*{p}")).collect();
    println!("support of {r}: {}; sum of m·deg = {degree_sum}", terms.join(" + "));

    let p7 = Place::prime(7);
    let u = parse_element("3/5", &Field::Q)?;
    println!("v_7(3/5) = {}, residue = {}", valuation(&u, &p7)?, residue(&u, &p7)?);

    for p in [2, 3, 5, 7] {
        let above = places_above(&Place::prime(p), &QuadExt::Number(-1))?;
        let ef: Vec<(u32, u32)> = above.iter().map(|w| (w.e, w.f)).collect();
        println!("{p} in Q(i): (e, f) = {ef:?}");
    }
    Ok(())
}
