//! Reducing sums of Milnor symbols (a, b_i, c_i) over Q(t) to units, with
//! a norm certificate for every step.

use genuslab::brauer::PlaceSet;
use genuslab::field::Field;
use genuslab::milnor::{reduce_to_units, SymbolFamily};
use genuslab::parse::parse_element;
use genuslab::Error;

fn main() -> genuslab::Result<()> {
    let f = Field::RatFn(genuslab::arith::Base::Q);
    let p = |s: &str| parse_element(s, &f);

    let fam = SymbolFamily::new(p("-1")?, vec![p("2")?, p("5")?], vec![p("t*(t-3)")?, p("(t+1)^3")?], PlaceSet::default())?;
    let red = reduce_to_units(&fam)?;
    for st in &red.steps {
        println!("{} {}: divide by {}  [{}]", st.phase, st.place, st.pi_v, st.certificate);
        assert!(st.certificate.verify());
    }
    let out: Vec<String> = red.family.c.iter().map(|c| c.to_string()).collect();
    println!("output c = {out:?}");

    // (-1, -1, t) cannot be reduced: the residue at t is the nonsplit (-1, -1)
    let bad = SymbolFamily::new(p("-1")?, vec![p("-1")?], vec![p("t")?], PlaceSet::default())?;
    match reduce_to_units(&bad) {
        Err(e @ Error::RamifiedAtPlace { .. }) => println!("(-1, -1, t): {e}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
