//! H^1 of Z/2 acting on S-units of Q(sqrt d), by group theory and by brute
//! force over a box of exponents.

use genuslab::divisor::{torus_h1, torus_h1_brute};
use num_bigint::BigInt;

fn main() -> genuslab::Result<()> {
    for (d, s) in [(-1, vec![2]), (-1, vec![2, 5]), (2, vec![]), (-5, vec![2, 3])] {
        let s: Vec<BigInt> = s.into_iter().map(BigInt::from).collect();
        let h = torus_h1(d, &s)?;
        let brute = torus_h1_brute(d, &s, 2)?;
        println!("d = {d}, S = {s:?}: |H^1| = {}, brute force {brute}", h.order);
    }
    Ok(())
}
