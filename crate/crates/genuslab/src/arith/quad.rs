//! Quadratic number fields ℚ(√d) and their elements `x + y·ω`.
//!
//! ω = √d when d ≡ 2, 3 (mod 4) and ω = (1+√d)/2 when d ≡ 1 (mod 4), so
//! {1, ω} is always a ℤ-basis of the maximal order.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::int::is_squarefree;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// True if ω = (1+√d)/2.
pub fn half_omega(d: i64) -> bool {
    d.rem_euclid(4) == 1
}

/// Field discriminant of ℚ(√d).
pub fn discriminant(d: i64) -> i64 {
    if half_omega(d) {
        d
    } else {
        4 * d
    }
}

/// `(b, c)` with ω² = b·ω + c.
pub fn omega_relation(d: i64) -> (i64, i64) {
    if half_omega(d) {
        (1, (d - 1) / 4)
    } else {
        (0, d)
    }
}

/// Check that `d` names a quadratic field.
pub fn valid_d(d: i64) -> bool {
    d != 0 && d != 1 && is_squarefree(d)
}

/// Element `x + y·ω` of ℚ(√d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub d: i64,
    pub x: BigRational,
    pub y: BigRational,
}

impl QuadElem {
    pub fn new(d: i64, x: BigRational, y: BigRational) -> QuadElem {
        QuadElem { d, x, y }
    }

    pub fn from_ints(d: i64, x: i64, y: i64) -> QuadElem {
        QuadElem { d, x: rat(x), y: rat(y) }
    }

    pub fn from_rat(d: i64, x: BigRational) -> QuadElem {
        QuadElem { d, x, y: BigRational::zero() }
    }

    pub fn zero(d: i64) -> QuadElem {
        QuadElem::from_ints(d, 0, 0)
    }

    pub fn one(d: i64) -> QuadElem {
        QuadElem::from_ints(d, 1, 0)
    }

    pub fn omega(d: i64) -> QuadElem {
        QuadElem::from_ints(d, 0, 1)
    }

    /// √d expressed in the basis {1, ω}.
    pub fn sqrt_d(d: i64) -> QuadElem {
        if half_omega(d) {
            QuadElem::from_ints(d, -1, 2)
        } else {
            QuadElem::omega(d)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// True if the element lies in the maximal order.
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Galois conjugate.
    pub fn conj(&self) -> QuadElem {
        if half_omega(self.d) {
            QuadElem::new(self.d, &self.x + &self.y, -&self.y)
        } else {
            QuadElem::new(self.d, self.x.clone(), -&self.y)
        }
    }

    pub fn norm(&self) -> BigRational {
        let (b, c) = omega_relation(self.d);
        // N(x + yω) = x² + b·x·y − c·y²
        &self.x * &self.x + rat(b) * &self.x * &self.y - rat(c) * &self.y * &self.y
    }

    pub fn trace(&self) -> BigRational {
        let (b, _) = omega_relation(self.d);
        rat(2) * &self.x + rat(b) * &self.y
    }

    pub fn inv(&self) -> QuadElem {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero");
        let c = self.conj();
        QuadElem::new(self.d, c.x / &n, c.y / n)
    }

    pub fn pow(&self, e: i64) -> QuadElem {
        let mut b = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = QuadElem::one(self.d);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> QuadElem {
        QuadElem::new(self.d, &self.x * c, &self.y * c)
    }

    /// Least positive integer m with m·self integral.
    pub fn denominator(&self) -> BigInt {
        self.x.denom().lcm(self.y.denom())
    }

    /// Integer coordinates of an integral element.
    pub fn int_coords(&self) -> (BigInt, BigInt) {
        assert!(self.is_integral(), "element is not integral");
        (self.x.to_integer(), self.y.to_integer())
    }

    /// Floating-point value under the embedding with √d > 0 (real fields).
    pub fn to_f64(&self) -> f64 {
        let w = if half_omega(self.d) {
            (1.0 + (self.d as f64).sqrt()) / 2.0
        } else {
            (self.d as f64).sqrt()
        };
        self.x.to_f64().unwrap() + self.y.to_f64().unwrap() * w
    }

    fn check(&self, o: &QuadElem) {
        assert_eq!(self.d, o.d, "elements of different quadratic fields");
    }
}

impl Add for &QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        self.check(o);
        QuadElem::new(self.d, &self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        self.check(o);
        QuadElem::new(self.d, &self.x - &o.x, &self.y - &o.y)
    }
}

impl Mul for &QuadElem {
    type Output = QuadElem;
    fn mul(self, o: &QuadElem) -> QuadElem {
        self.check(o);
        let (b, c) = omega_relation(self.d);
        let yy = &self.y * &o.y;
        let x = &self.x * &o.x + rat(c) * &yy;
        let y = &self.x * &o.y + &self.y * &o.x + rat(b) * yy;
        QuadElem::new(self.d, x, y)
    }
}

impl Div for &QuadElem {
    type Output = QuadElem;
    fn div(self, o: &QuadElem) -> QuadElem {
        self * &o.inv()
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::new(self.d, -&self.x, -&self.y)
    }
}

fn fmt_rat(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Prints as `1 + 2*w`; append `@ d=...` to make it self-describing.
impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs = (!self.x.is_zero()).then(|| fmt_rat(&self.x));
        if self.y.is_zero() {
            return write!(f, "{}", xs.unwrap_or_else(|| "0".into()));
        }
        let ya = self.y.abs();
        let yterm = if ya.is_one() { "w".to_string() } else { format!("{}*w", fmt_rat(&ya)) };
        match xs {
            None => write!(f, "{}{}", if self.y.is_negative() { "-" } else { "" }, yterm),
            Some(x) => write!(f, "{} {} {}", x, if self.y.is_negative() { "-" } else { "+" }, yterm),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let i = QuadElem::omega(-1);
        assert_eq!(&i * &i, QuadElem::from_ints(-1, -1, 0));
        let a = QuadElem::from_ints(-1, 1, 1);
        assert_eq!(&a * &a, QuadElem::from_ints(-1, 0, 2));
        assert_eq!(a.norm(), rat(2));
        assert_eq!((&a / &a.conj()), i);
    }

    #[test]
    fn golden_ratio() {
        let w = QuadElem::omega(5);
        assert_eq!(w.norm(), rat(-1));
        assert_eq!(&w * &w, &w + &QuadElem::one(5));
        assert_eq!(QuadElem::sqrt_d(5).norm(), rat(-5));
        assert_eq!(w.conj(), QuadElem::from_ints(5, 1, -1));
    }

    #[test]
    fn norm_is_multiplicative() {
        for d in [-5i64, -3, 2, 13] {
            let a = QuadElem::from_ints(d, 3, -2);
            let b = QuadElem::from_ints(d, -1, 5);
            assert_eq!((&a * &b).norm(), a.norm() * b.norm());
            assert_eq!(&(&a * &a.inv()), &QuadElem::one(d));
        }
    }

    #[test]
    fn display() {
        assert_eq!(QuadElem::from_ints(-5, 1, 2).to_string(), "1 + 2*w");
        assert_eq!(QuadElem::from_ints(-5, 0, -1).to_string(), "-w");
        assert_eq!(QuadElem::from_ints(-5, -3, 0).to_string(), "-3");
    }
}
