//! Rational functions over 𝔽_p or ℚ in lowest terms with monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{Base, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Build `num/den` and reduce; panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> RatFn {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let base = num.base().clone();
        if num.is_zero() {
            return RatFn { num, den: Poly::one(base) };
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g);
        let den = den.exact_div(&g);
        let l = base.inv(&den.lead());
        RatFn { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn from_poly(p: Poly) -> RatFn {
        let base = p.base().clone();
        RatFn { num: p, den: Poly::one(base) }
    }

    pub fn constant(base: Base, c: BigRational) -> RatFn {
        RatFn::from_poly(Poly::constant(base, c))
    }

    pub fn from_int(base: Base, n: i64) -> RatFn {
        let c = base.from_int(n);
        RatFn::constant(base, c)
    }

    pub fn zero(base: Base) -> RatFn {
        RatFn::from_poly(Poly::zero(base))
    }

    pub fn one(base: Base) -> RatFn {
        RatFn::from_poly(Poly::one(base))
    }

    pub fn t(base: Base) -> RatFn {
        RatFn::from_poly(Poly::t(base))
    }

    pub fn base(&self) -> &Base {
        self.num.base()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True if the function is a constant of the base field.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, if [`RatFn::is_constant`].
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> RatFn {
        assert!(!self.is_zero(), "inverse of zero");
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> RatFn {
        let b = if e < 0 { self.inv() } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        RatFn { num: b.num.pow(e), den: b.den.pow(e) }
    }

    /// Valuation at the monic irreducible `f`.
    pub fn valuation_at(&self, f: &Poly) -> i64 {
        assert!(!self.is_zero());
        self.num.valuation_at(f) as i64 - self.den.valuation_at(f) as i64
    }

    /// Valuation at the infinite place: `deg den - deg num`.
    pub fn valuation_inf(&self) -> i64 {
        assert!(!self.is_zero());
        self.den.deg() as i64 - self.num.deg() as i64
    }

    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.base().mul(&self.num.eval(x), &self.base().inv(&d)))
        }
    }

    /// Largest degree of numerator and denominator.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.deg())
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        RatFn::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        RatFn::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        RatFn::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, o: &RatFn) -> RatFn {
        assert!(!o.is_zero(), "division by zero");
        RatFn::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| if needs_parens(p) { format!("({p})") } else { p.to_string() };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_valuations() {
        let b = Base::Fp(3);
        let t = RatFn::t(b.clone());
        let tm1 = &t - &RatFn::one(b.clone());
        let x = &(&t * &t) / &tm1;
        let tp = Poly::t(b.clone());
        assert_eq!(x.valuation_at(&tp), 2);
        assert_eq!(x.valuation_inf(), -1);
        let y = &x * &tm1;
        assert_eq!(y, &t * &t);
    }

    #[test]
    fn display() {
        let b = Base::Q;
        let t = RatFn::t(b.clone());
        let x = &(&t - &RatFn::one(b.clone())) / &t;
        assert_eq!(x.to_string(), "(t - 1)/t");
        let y = &t.pow(2) / &(&t - &RatFn::one(b.clone()));
        assert_eq!(y.to_string(), "t^2/(t - 1)");
    }
}
