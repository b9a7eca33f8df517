//! Class sets of GL_n: gluing lattices from rational adeles, splitting
//! g = k·h, and the Steinitz obstruction over Z[sqrt(-5)].

use genuslab::class_sets::adele::{class_set_gln, decompose_adele, glue_lattice, q_matrix, AdelePoint, BaseRing};
use genuslab::field::Field;
use genuslab::parse::{parse_place, parse_ring, parse_square_matrix};
use genuslab::places::Place;

fn main() -> genuslab::Result<()> {
    let z = BaseRing::integers(Field::Q);
    let a = AdelePoint::new(
        z,
        2,
        [(Place::prime(2), q_matrix(&[&[(1, 2), (3, 1)], &[(0, 1), (4, 1)]])), (Place::prime(5), q_matrix(&[&[(5, 1), (0, 1)], &[(1, 1), (1, 1)]]))],
    )?;
    let dec = decompose_adele(&a)?;
    println!("h = {:?}", dec.h.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    println!("verified: {}", dec.verify(&a)?);

    let o = parse_ring("O(d=-5)")?;
    for n in 1..=3 {
        let cs = class_set_gln(&o, n)?;
        println!("|Cl(GL_{n}, O(d=-5))| = {}", cs.size);
    }
    let p2 = parse_place("qprime:(2,1+w)@d=-5")?;
    let g = parse_square_matrix("[[1+w, 0], [0, 1]]", &o.field, 2)?;
    let adele = AdelePoint::new(o, 2, [(p2, g)])?;
    println!("Steinitz class of the glued lattice: {:?}", glue_lattice(&adele)?.steinitz_class()?);
    match decompose_adele(&adele) {
        Ok(_) => println!("decomposed"),
        Err(e) => println!("obstruction: {e}"),
    }
    Ok(())
}
