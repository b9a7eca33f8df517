//! Cech cocycles on principal covers of Spec R, their image in the adelic
//! double coset space, and the lattice comparison.

use std::collections::BTreeMap;

use genuslab::class_sets::adele::BaseRing;
use genuslab::class_sets::cech::{cech_to_double_coset, cech_verify, diagram_check, CechCocycle, CechCover};
use genuslab::field::Field;
use genuslab::parse::parse_element;

fn main() -> genuslab::Result<()> {
    let z = BaseRing::integers(Field::Q);
    let q = |s: &str| parse_element(s, &Field::Q);
    let cover = CechCover::new(z, vec![q("6")?, q("5")?, q("7")?])?;
    let g: BTreeMap<_, _> = [((1, 2), vec![vec![q("5")?]]), ((1, 3), vec![vec![q("7")?]]), ((2, 3), vec![vec![q("7/5")?]])].into();
    let c = CechCocycle::new(cover.clone(), 1, g)?;
    println!("valid: {}", cech_verify(&c)?.ok);
    for (p, m) in &cech_to_double_coset(&c)?.entries {
        println!("  component at {p}: {}", m[0][0]);
    }

    // break the relation on one triple
    let g: BTreeMap<_, _> = [((1, 2), vec![vec![q("5")?]]), ((1, 3), vec![vec![q("7")?]]), ((2, 3), vec![vec![q("7")?]])].into();
    let bad = CechCocycle::new(cover, 1, g)?;
    println!("tampered: {:?}", cech_verify(&bad)?.failing_triple);

    // over Z[sqrt(-5)] the gluing of 1 + w on D(3) ∩ D(2) is a non-free line bundle
    let o = BaseRing::integers(Field::Quad(-5));
    let e = |s: &str| parse_element(s, &Field::Quad(-5));
    let cover = CechCover::new(o, vec![e("3")?, e("2")?])?;
    let c = CechCocycle::new(cover, 1, [((1, 2), vec![vec![e("1 + w")?]])].into())?;
    let rep = diagram_check(&c)?;
    println!("Steinitz ideal {} class {:?}; diagram commutes: {}", rep.steinitz_ideal, rep.adelic_class, rep.commutes);
    Ok(())
}
