//! Integers, polynomials and quadratic fields: factorization, class groups,
//! fundamental units and ideal arithmetic.

use genuslab::arith::classgroup::ClassGroup;
use genuslab::arith::ideal::{factor_ideal, primes_above, Ideal};
use genuslab::arith::units::{find_generator, fundamental_unit};
use genuslab::arith::{factor_integer, factor_poly, Base, Poly, QuadElem};
use num_bigint::BigInt;

fn main() -> genuslab::Result<()> {
    let n = BigInt::from(2_i64.pow(4) * 3 * 101 * 9973);
    println!("{n} = {:?}", factor_integer(&n, 1_000_000)?);

    let f = Poly::from_ints(Base::Fp(5), &[4, 0, 0, 0, 1]); // t^4 - 1
    let fac = factor_poly(&f)?;
    let parts: Vec<String> = fac.factors.iter().map(|(g, e)| format!("({g})^{e}")).collect();
    println!("{f} over F5 = {}", parts.join(" "));

    for d in [-5, -23, -47] {
        let cl = ClassGroup::compute(d)?;
        println!("Cl(Q(sqrt({d}))) has order {} with invariants {:?}", cl.order(), cl.group.invariants);
    }
    for d in [2, 7, 94] {
        println!("fundamental unit of Q(sqrt({d})): {}", fundamental_unit(d)?);
    }

    // (2, 1 + w) in Z[sqrt(-5)] is not principal, its square is
    let p2 = &primes_above(-5, &BigInt::from(2))[0];
    let sq = p2.ideal.mul(&p2.ideal);
    println!("p2 = {}, p2^2 = {} generated by {}", p2.ideal, sq, find_generator(&sq)?);

    let i = Ideal::from_generators(-5, &[QuadElem::from_ints(-5, 6, 0), QuadElem::from_ints(-5, 1, 1)]);
    for (p, e) in factor_ideal(&i)? {
        println!("  {} ^ {e}", p.ideal);
    }
    Ok(())
}
