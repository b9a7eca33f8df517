//! The text grammar for elements, places, rings and matrices.

use genuslab::field::Field;
use genuslab::parse::{parse_element, parse_matrix, parse_place, parse_ring, print_element};

fn main() -> genuslab::Result<()> {
    for text in ["-3/7", "t^2 + 1 @ Fp(3)", "(t+1)/t^2 @ Q(t)", "1 + 2*w @ d=-5", "(1 + i)^3 @ d=-1"] {
        let x = parse_element(text, &Field::Q)?;
        let printed = print_element(&x);
        assert_eq!(parse_element(&printed, &Field::Q)?, x);
        println!("{text:>20}  ->  {printed}");
    }
    for text in ["5", "poly:t^2+1@Fp(3)", "inf@Q(t)", "qprime:(3,1+w)@d=-5"] {
        println!("{text:>20}  ->  {}", parse_place(text)?);
    }
    for text in ["Z[1/6]", "Zs[2,3]", "Z[i,1/2]", "O(d=-5)[1/(2,1+w)]", "Fp(5)[t][1/(t^2-1)]"] {
        println!("{text:>20}  ->  {}", parse_ring(text)?);
    }
    let m = parse_matrix("[[1, 1/2], [0, t]]", &Field::RatFn(genuslab::arith::Base::Q))?;
    let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    println!("matrix over Q(t): {rows:?}");
    match parse_element("1 + $", &Field::Q) {
        Err(e) => println!("error: {e}"),
        Ok(x) => println!("parsed {x}"),
    }
    Ok(())
}
