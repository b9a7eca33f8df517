//! The supported global fields and their elements.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::linalg::FieldElem;
use crate::arith::{Base, Poly, QuadElem, RatFn};

/// ℚ, k(t) with k = 𝔽_p or ℚ, or ℚ(√d).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Q,
    RatFn(Base),
    Quad(i64),
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::RatFn(b) => b.characteristic(),
            _ => 0,
        }
    }

    pub fn zero(&self) -> Elem {
        Elem::from_int(self, 0)
    }

    pub fn one(&self) -> Elem {
        Elem::from_int(self, 1)
    }
}

/// Tags: `Q`, `Q(t)`, `Fp(5)(t)`, `d=-5`.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::RatFn(b) => write!(f, "{b}(t)"),
            Field::Quad(d) => write!(f, "d={d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Q(BigRational),
    F(RatFn),
    Quad(QuadElem),
}

impl Elem {
    pub fn from_int(field: &Field, n: i64) -> Elem {
        match field {
            Field::Q => Elem::Q(BigRational::from_integer(BigInt::from(n))),
            Field::RatFn(b) => Elem::F(RatFn::from_int(b.clone(), n)),
            Field::Quad(d) => Elem::Quad(QuadElem::from_ints(*d, n, 0)),
        }
    }

    pub fn rational(q: BigRational) -> Elem {
        Elem::Q(q)
    }

    pub fn poly(p: Poly) -> Elem {
        Elem::F(RatFn::from_poly(p))
    }

    pub fn field(&self) -> Field {
        match self {
            Elem::Q(_) => Field::Q,
            Elem::F(r) => Field::RatFn(r.base().clone()),
            Elem::Quad(q) => Field::Quad(q.d),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Q(q) => q.is_zero(),
            Elem::F(r) => r.is_zero(),
            Elem::Quad(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Elem::Q(q) => q.is_one(),
            Elem::F(r) => r.is_one(),
            Elem::Quad(q) => q.is_one(),
        }
    }

    fn binop(&self, o: &Elem, name: &str) -> Elem {
        match (self, o) {
            (Elem::Q(a), Elem::Q(b)) => Elem::Q(match name {
                "+" => a + b,
                "-" => a - b,
                "*" => a * b,
                _ => a / b,
            }),
            (Elem::F(a), Elem::F(b)) => Elem::F(match name {
                "+" => a + b,
                "-" => a - b,
                "*" => a * b,
                _ => a / b,
            }),
            (Elem::Quad(a), Elem::Quad(b)) => Elem::Quad(match name {
                "+" => a + b,
                "-" => a - b,
                "*" => a * b,
                _ => a / b,
            }),
            _ => panic!("field mismatch: {} vs {}", self.field(), o.field()),
        }
    }

    pub fn add(&self, o: &Elem) -> Elem {
        self.binop(o, "+")
    }

    pub fn sub(&self, o: &Elem) -> Elem {
        self.binop(o, "-")
    }

    pub fn mul(&self, o: &Elem) -> Elem {
        self.binop(o, "*")
    }

    pub fn div(&self, o: &Elem) -> Elem {
        assert!(!o.is_zero(), "division by zero");
        self.binop(o, "/")
    }

    pub fn neg(&self) -> Elem {
        self.field().zero().sub(self)
    }

    pub fn inv(&self) -> Elem {
        self.field().one().div(self)
    }

    pub fn pow(&self, e: i64) -> Elem {
        match self {
            Elem::Q(q) => Elem::Q(if e < 0 { q.recip().pow(-e as i32) } else { q.pow(e as i32) }),
            Elem::F(r) => Elem::F(r.pow(e)),
            Elem::Quad(q) => Elem::Quad(q.pow(e)),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Elem::Q(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_ratfn(&self) -> Option<&RatFn> {
        match self {
            Elem::F(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_quad(&self) -> Option<&QuadElem> {
        match self {
            Elem::Quad(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Elem::F(r) => write!(f, "{r}"),
            Elem::Quad(q) => write!(f, "{q}"),
        }
    }
}

impl FieldElem for Elem {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_e(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_e(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_e(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn div_e(&self, o: &Self) -> Self {
        self.div(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_fields() {
        let k = Field::RatFn(Base::Fp(5));
        let t = Elem::F(RatFn::t(Base::Fp(5)));
        let x = t.mul(&t).sub(&k.one());
        assert_eq!(x.to_string(), "t^2 + 4");
        assert_eq!(x.div(&x), k.one());
        let q = Elem::rational(BigRational::new(BigInt::from(-3), BigInt::from(7)));
        assert_eq!(q.to_string(), "-3/7");
        assert_eq!(q.pow(-2).to_string(), "49/9");
        assert_eq!(Field::Quad(-5).to_string(), "d=-5");
        assert_eq!(k.to_string(), "Fp(5)(t)");
    }
}
