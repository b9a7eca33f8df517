//! Quadratic Galois descent: conditions on R ⊂ R', trivializing cocycles,
//! and the staged verdict for norm-one groups of quaternion algebras.

use genuslab::arith::QuadElem;
use genuslab::descent::{check_galois_ring_conditions, descent_condition_t, fmt_mat, trivialize_cocycle, QuadGaloisRing};
use num_bigint::BigInt;

fn main() -> genuslab::Result<()> {
    let two = [BigInt::from(2)];
    for s in [&[][..], &two[..]] {
        let r = QuadGaloisRing::new(-1, s)?;
        let c = check_galois_ring_conditions(&r)?;
        println!("{r}: disc {} unit = {}, all hold = {}", c.disc, c.disc_unit, c.all_hold());
    }

    let r = QuadGaloisRing::new(-1, &two)?;
    let e = |x: i64, y: i64| QuadElem::from_ints(-1, x, y);
    for xi in [vec![vec![e(0, 1)]], vec![vec![e(0, 0), e(1, 0)], vec![e(1, 0), e(0, 0)]]] {
        let t = trivialize_cocycle(&r, &xi)?;
        println!("xi = {} -> c = {} (verified {})", fmt_mat(&xi), fmt_mat(&t.c), t.verify(&r));
    }

    let rep = descent_condition_t(-1, -1, -1, &two)?;
    for st in &rep.stages {
        println!("[{}] {}", st.name, st.detail);
    }
    match descent_condition_t(-5, -1, -5, &[]) {
        Ok(r) => println!("verdict {}", r.verdict),
        Err(e) => println!("(-5, -1) over Z: {e}"),
    }
    Ok(())
}
