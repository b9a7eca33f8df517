//! Text grammar shared by the CLI, fixtures and examples.
//!
//! Elements: `-3/7`, `t^3 - 2*t + 1 @ Fp(5)`, `(t+1)/t^2 @ Q(t)`,
//! `1 + 2*w @ d=-5` (`i` is accepted for `w` when d = −1).
//! Places: `p:5`, `poly:t^2+1@Fp(3)`, `inf@Q(t)`, `qprime:(2,1+w)@d=-5`.
//! Rings: `Z`, `Z[1/6]`, `Zs[2,3]`, `Fp(5)[t]`, `Q[t][1/(t+1)]`, `O(d=-5)`,
//! `Z[i,1/2]`, `Z[sqrt(-5),1/2]`, `O(d=-5)[1/(2,1+w)]`.
//! Matrices: `[[1, 0], [0, 1/2]]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::arith::ideal::{as_prime, Ideal};
use crate::arith::int::factor;
use crate::arith::linalg::Mat;
use crate::arith::quad::valid_d;
use crate::arith::{factor_poly, Base, QuadElem, RatFn};
use crate::class_sets::adele::BaseRing;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::places::Place;

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::ParseError { pos, msg: msg.into() })
}

/// Field tag: `Q`, `Q(t)`, `Fp(5)`, `Fp(5)(t)`, `F5(t)`, `d=-5`.
pub fn parse_field(tag: &str) -> Result<Field> {
    let s: String = tag.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "Q" {
        return Ok(Field::Q);
    }
    if s == "Q(t)" {
        return Ok(Field::RatFn(Base::Q));
    }
    if let Some(d) = s.strip_prefix("d=") {
        let d: i64 = d.parse().or_else(|_| perr(2, format!("bad discriminant parameter {d:?}")))?;
        if !valid_d(d) {
            return perr(2, format!("d = {d} must be square-free and ≠ 0, 1"));
        }
        return Ok(Field::Quad(d));
    }
    let base = s.strip_suffix("(t)").unwrap_or(&s);
    let p = base
        .strip_prefix("Fp(")
        .and_then(|x| x.strip_suffix(')'))
        .or_else(|| base.strip_prefix("F_"))
        .or_else(|| base.strip_prefix('F'));
    if let Some(p) = p {
        let p: u64 = p.parse().or_else(|_| perr(0, format!("bad characteristic in {tag:?}")))?;
        if !crate::arith::int::is_prime(&BigInt::from(p)) {
            return perr(0, format!("{p} is not prime"));
        }
        return Ok(Field::RatFn(Base::Fp(p)));
    }
    perr(0, format!("unknown field tag {tag:?}"))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str, offset: usize) -> Result<Vec<(usize, Tok)>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let n: String = cs[st..i].iter().collect();
            out.push((offset + st, Tok::Num(n.parse().unwrap())));
        } else if c.is_alphabetic() || c == '√' {
            let st = i;
            if c == '√' {
                i += 1;
                out.push((offset + st, Tok::Ident("sqrt".into())));
                continue;
            }
            while i < cs.len() && cs[i].is_alphanumeric() {
                i += 1;
            }
            out.push((offset + st, Tok::Ident(cs[st..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((offset + i, Tok::Op(c)));
            i += 1;
        } else {
            return perr(offset + i, format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    field: &'a Field,
    end: usize,
}

impl ExprParser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.0).unwrap_or(self.end)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Elem> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<Elem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let pos = self.pos();
                let d = self.unary()?;
                if d.is_zero() {
                    return perr(pos, "division by zero");
                }
                acc = acc.div(&d);
            } else if self.starts_atom() {
                // implicit multiplication, e.g. 2t or 3(t+1)
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Elem> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Elem> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let pos = self.pos();
            let Some(Tok::Num(n)) = self.peek().cloned() else { return perr(pos, "expected an integer exponent") };
            self.i += 1;
            let e = n.to_i64().filter(|e| *e <= 100_000).ok_or(Error::ParseError { pos, msg: "exponent too large".into() })?;
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return perr(pos, "negative power of zero");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Elem> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(match self.field {
                    Field::Q => Elem::Q(BigRational::from_integer(n)),
                    Field::RatFn(b) => Elem::F(RatFn::constant(b.clone(), BigRational::from_integer(n))),
                    Field::Quad(d) => Elem::Quad(QuadElem::from_rat(*d, BigRational::from_integer(n))),
                })
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return perr(self.pos(), "expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Ident(id)) => {
                self.i += 1;
                match (id.as_str(), self.field) {
                    ("t", Field::RatFn(b)) => Ok(Elem::F(RatFn::t(b.clone()))),
                    ("w", Field::Quad(d)) => Ok(Elem::Quad(QuadElem::omega(*d))),
                    ("i", Field::Quad(-1)) => Ok(Elem::Quad(QuadElem::omega(-1))),
                    ("sqrt", Field::Quad(d)) => {
                        // sqrt(d) or √d with the field's own d
                        let paren = self.eat('(');
                        let minus = self.eat('-');
                        let p = self.pos();
                        let Some(Tok::Num(n)) = self.peek().cloned() else { return perr(p, "expected sqrt(d)") };
                        self.i += 1;
                        if paren && !self.eat(')') {
                            return perr(self.pos(), "expected ')'");
                        }
                        let v = if minus { -n } else { n };
                        if v != BigInt::from(*d) {
                            return perr(p, format!("sqrt({v}) is not in ℚ(√{d})"));
                        }
                        Ok(Elem::Quad(QuadElem::sqrt_d(*d)))
                    }
                    _ => perr(pos, format!("unknown symbol {id:?} in {}", self.field)),
                }
            }
            Some(Tok::Op(c)) => perr(pos, format!("unexpected {c:?}")),
            None => perr(pos, "unexpected end of input"),
        }
    }
}

/// Parse an expression in a known field.
pub fn parse_in(text: &str, field: &Field) -> Result<Elem> {
    parse_in_at(text, field, 0)
}

fn parse_in_at(text: &str, field: &Field, offset: usize) -> Result<Elem> {
    let toks = tokenize(text, offset)?;
    let end = offset + text.chars().count();
    if toks.is_empty() {
        return perr(offset, "empty expression");
    }
    let mut p = ExprParser { toks, i: 0, field, end };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return perr(p.pos(), "trailing input");
    }
    Ok(e)
}

/// Parse `expr` or `expr @ tag`. Without a tag the default field is used; a
/// `Q` or `Fp(p)` tag on an expression in `t` means the rational function
/// field.
pub fn parse_element(text: &str, default: &Field) -> Result<Elem> {
    let (expr, field) = match text.rfind('@') {
        Some(at) => {
            let tag = &text[at + 1..];
            let mut f = parse_field(tag).map_err(|e| match e {
                Error::ParseError { pos, msg } => Error::ParseError { pos: pos + text[..at + 1].chars().count(), msg },
                e => e,
            })?;
            let expr = &text[..at];
            if f == Field::Q && tokenize(expr, 0)?.iter().any(|(_, t)| *t == Tok::Ident("t".into())) {
                f = Field::RatFn(Base::Q);
            }
            (expr, f)
        }
        None => (text, default.clone()),
    };
    parse_in(expr, &field)
}

/// `text @ field`, which parses back to the same element.
pub fn print_element(x: &Elem) -> String {
    format!("{x} @ {}", x.field())
}

fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// `[[a, b], [c, d]]` over the field.
pub fn parse_matrix(text: &str, field: &Field) -> Result<Mat<Elem>> {
    let t = text.trim();
    let inner = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or(Error::ParseError { pos: 0, msg: "matrix must be [[...], ...]".into() })?;
    let mut rows = Vec::new();
    for (off, r) in split_top(inner, ',') {
        let r = r.trim();
        let body = r.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or(Error::ParseError { pos: off + 1, msg: "row must be [...]".into() })?;
        let mut row = Vec::new();
        for (o2, e) in split_top(body, ',') {
            row.push(parse_in_at(e, field, off + o2 + 2)?);
        }
        rows.push(row);
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return perr(0, "rows have different lengths");
    }
    if n == 0 {
        return perr(0, "empty matrix");
    }
    Ok(rows)
}

/// Square matrix check on top of [`parse_matrix`].
pub fn parse_square_matrix(text: &str, field: &Field, n: usize) -> Result<Mat<Elem>> {
    let m = parse_matrix(text, field)?;
    if m.len() != n || m[0].len() != n {
        return perr(0, format!("expected a {n}×{n} matrix"));
    }
    Ok(m)
}

fn parse_prime_int(s: &str, pos: usize) -> Result<BigInt> {
    let p: BigInt = s.trim().parse().or_else(|_| perr(pos, format!("expected a prime, got {s:?}")))?;
    if !crate::arith::int::is_prime(&p.abs()) || p.is_negative() {
        return perr(pos, format!("{p} is not a prime"));
    }
    Ok(p)
}

/// A finite or infinite place. A bare prime `5` means `p:5`.
pub fn parse_place(text: &str) -> Result<Place> {
    let s = text.trim();
    if let Some(p) = s.strip_prefix("p:") {
        return Ok(Place::RationalPrime(parse_prime_int(p, 2)?));
    }
    if let Some(rest) = s.strip_prefix("inf@") {
        let tag = rest.strip_suffix("(t)").unwrap_or(rest);
        return match parse_field(tag)? {
            Field::Q => Ok(Place::InfinitePoly(Base::Q)),
            Field::RatFn(b) => Ok(Place::InfinitePoly(b)),
            Field::Quad(_) => perr(4, "inf@ needs a rational function field such as Q(t)"),
        };
    }
    if let Some(rest) = s.strip_prefix("poly:") {
        let at = rest.rfind('@').ok_or(Error::ParseError { pos: 5, msg: "poly: needs @base".into() })?;
        let Elem::F(f) = parse_element(rest, &Field::Q)? else { return perr(5, "not a polynomial") };
        if !f.den().is_one() || f.num().is_constant() {
            return perr(5, "expected a nonconstant polynomial");
        }
        let g = f.num().monic();
        let fac = factor_poly(&g)?;
        if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
            return perr(5 + at, format!("{g} is not irreducible"));
        }
        return Ok(Place::FinitePoly(g));
    }
    if let Some(rest) = s.strip_prefix("qprime:") {
        let at = rest.rfind('@').ok_or(Error::ParseError { pos: 7, msg: "qprime: needs @d=..".into() })?;
        let Field::Quad(d) = parse_field(&rest[at + 1..])? else { return perr(7 + at, "qprime needs d=..") };
        let gens = rest[..at].trim();
        let inner = gens.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or(Error::ParseError { pos: 7, msg: "expected (g1, g2)".into() })?;
        let mut elems = Vec::new();
        for (o, g) in split_top(inner, ',') {
            let Elem::Quad(q) = parse_in_at(g, &Field::Quad(d), 8 + o)? else { unreachable!() };
            elems.push(q);
        }
        let ideal = Ideal::from_generators(d, &elems);
        return as_prime(&ideal).map(Place::QuadPrime).ok_or(Error::ParseError { pos: 7, msg: format!("{ideal} is not a prime ideal") });
    }
    if s.chars().all(|c| c.is_ascii_digit()) && !s.is_empty() {
        return Ok(Place::RationalPrime(parse_prime_int(s, 0)?));
    }
    perr(0, format!("unknown place {s:?}"))
}

/// Comma-separated list of primes, e.g. `2,3`; empty means none.
pub fn parse_prime_list(text: &str) -> Result<Vec<BigInt>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(vec![]);
    }
    split_top(t, ',').into_iter().map(|(o, p)| parse_prime_int(p, o)).collect()
}

/// Comma-separated places such as `2,p:3` or `qprime:(2,1+w)@d=-5`; empty
/// means none.
pub fn parse_place_list(text: &str) -> Result<Vec<Place>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(vec![]);
    }
    split_top(t, ',').into_iter().map(|(_, p)| parse_place(p)).collect()
}

/// Comma-separated elements at top level (commas inside brackets or
/// parentheses do not split).
pub fn parse_element_list(text: &str, default: &Field) -> Result<Vec<Elem>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(vec![]);
    }
    split_top(t, ',').into_iter().map(|(o, x)| parse_element(x, default).map_err(|e| shift(e, o))).collect()
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::ParseError { pos, msg } => Error::ParseError { pos: pos + by, msg },
        e => e,
    }
}

/// Places of `field` to invert for the given generator: every prime factor
/// of a rational integer, every irreducible factor of a polynomial, or a
/// prime ideal given as `(g1, g2)`.
fn inverted_places(field: &Field, item: &str, pos: usize) -> Result<Vec<Place>> {
    let item = item.trim();
    let body = item.strip_prefix("1/").ok_or(Error::ParseError { pos, msg: format!("expected 1/x, got {item:?}") })?;
    let body_t = body.trim();
    if let Field::Quad(d) = field {
        if body_t.starts_with('(') && body_t.contains(',') {
            return Ok(vec![parse_place(&format!("qprime:{body_t}@d={d}"))?]);
        }
    }
    let x = parse_in_at(body_t, field, pos + 2)?;
    let mut out = Vec::new();
    match (&x, field) {
        (Elem::Q(q), _) if q.is_integer() => {
            for (p, _) in factor(&q.numer().abs())? {
                out.push(Place::RationalPrime(p));
            }
        }
        (Elem::F(r), _) if r.den().is_one() => {
            for (g, _) in factor_poly(r.num())?.factors {
                out.push(Place::FinitePoly(g));
            }
        }
        (Elem::Quad(q), Field::Quad(d)) if q.is_rational() && q.x.is_integer() => {
            let ps: Vec<BigInt> = factor(&q.x.numer().abs())?.into_iter().map(|(p, _)| p).collect();
            out.extend(crate::divisor::places_above_set(*d, &ps));
        }
        _ => return perr(pos, format!("cannot invert {x}")),
    }
    Ok(out)
}

/// Ring of S-integers; see the module documentation for the forms.
pub fn parse_ring(text: &str) -> Result<BaseRing> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    // base part ends at the first top-level '[' that is not part of the base
    let (field, mut rest, mut extra): (Field, &str, Vec<String>) = if let Some(r) = s.strip_prefix("Zs") {
        let inner = r.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or(Error::ParseError { pos: 2, msg: "expected Zs[p,...]".into() })?;
        let ps = parse_prime_list(inner)?;
        return BaseRing::new(Field::Q, ps.into_iter().map(Place::RationalPrime).collect());
    } else if let Some(r) = s.strip_prefix("O(") {
        let close = r.find(')').ok_or(Error::ParseError { pos: 2, msg: "expected O(d=..)".into() })?;
        (parse_field(&r[..close])?, &r[close + 1..], vec![])
    } else if let Some(r) = s.strip_prefix("Z[") {
        // Z[...] may carry the quadratic generator and inverses together
        let close = matching(&s, 1).ok_or(Error::ParseError { pos: 1, msg: "unbalanced '['".into() })?;
        let inner = &r[..close - 2];
        let mut field = Field::Q;
        let mut inv = Vec::new();
        for (_, item) in split_top(inner, ',') {
            if item.starts_with("1/") {
                inv.push(item.to_string());
            } else if item == "i" {
                field = Field::Quad(-1);
            } else if let Some(d) = item.strip_prefix("sqrt(").and_then(|x| x.strip_suffix(')')).or_else(|| item.strip_prefix('√')) {
                let d: i64 = d.parse().or_else(|_| perr(2, format!("bad square root {item:?}")))?;
                field = Field::Quad(d);
                if !valid_d(d) {
                    return perr(2, format!("d = {d} must be square-free"));
                }
            } else {
                return perr(2, format!("unknown ring generator {item:?}"));
            }
        }
        (field, &s[close + 1..], inv)
    } else if let Some(r) = s.strip_prefix('Z') {
        (Field::Q, r, vec![])
    } else if let Some(i) = s.find("[t]") {
        (parse_field(&format!("{}(t)", &s[..i]))?, &s[i + 3..], vec![])
    } else {
        return perr(0, format!("unknown ring {text:?}"));
    };
    while !rest.is_empty() {
        let close = matching(rest, 0).ok_or(Error::ParseError { pos: s.len() - rest.len(), msg: "expected [1/x,...]".into() })?;
        for (_, item) in split_top(&rest[1..close], ',') {
            extra.push(item.to_string());
        }
        rest = &rest[close + 1..];
    }
    let mut places = Vec::new();
    for item in extra {
        places.extend(inverted_places(&field, &item, 0)?);
    }
    BaseRing::new(field, places)
}

/// Index of the bracket closing the one at `open`.
fn matching(s: &str, open: usize) -> Option<usize> {
    let b = s.as_bytes();
    if b.get(open) != Some(&b'[') {
        return None;
    }
    let mut depth = 0;
    for (i, &c) in b.iter().enumerate().skip(open) {
        match c {
            b'[' => depth += 1,
            b']' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Quadratic field from `d=-1`, `-1` or `Q(sqrt(-1))`.
pub fn parse_quad_d(text: &str) -> Result<i64> {
    let t = text.trim();
    let t = t.strip_prefix("Q(sqrt(").and_then(|x| x.strip_suffix("))")).unwrap_or(t);
    let t = t.strip_prefix("d=").unwrap_or(t);
    match parse_field(&format!("d={t}"))? {
        Field::Quad(d) => Ok(d),
        _ => unreachable!(),
    }
}

/// `[1/2]`-style suffix list or `Z[1/2]` ring string to its set of primes.
pub fn parse_z_localization(text: &str) -> Result<Vec<BigInt>> {
    let r = parse_ring(text)?;
    if r.field != Field::Q {
        return perr(0, format!("{text:?} is not a localization of Z"));
    }
    Ok(r.s.iter().map(|p| match p {
        Place::RationalPrime(p) => p.clone(),
        _ => unreachable!(),
    })
    .collect())
}

/// Checks that a polynomial has coefficients in the base.
pub fn is_polynomial(x: &Elem) -> bool {
    matches!(x, Elem::F(r) if r.den().is_one())
}

/// Zero check helper for parsed inputs.
pub fn nonzero(x: Elem, what: &str) -> Result<Elem> {
    if x.is_zero() {
        return Err(Error::Unsupported(format!("{what} must be nonzero")));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Poly;

    #[test]
    fn element_examples() {
        assert_eq!(parse_element("-3/7", &Field::Q).unwrap(), Elem::Q(BigRational::new((-3).into(), 7.into())));
        let x = parse_element("t^2+1 @ Fp(3)", &Field::Q).unwrap();
        assert_eq!(x, Elem::F(RatFn::from_poly(Poly::from_ints(Base::Fp(3), &[1, 0, 1]))));
        let x = parse_element("1+2*w @ d=-5", &Field::Q).unwrap();
        assert_eq!(x, Elem::Quad(QuadElem::from_ints(-5, 1, 2)));
        assert_eq!(parse_element("i @ d=-1", &Field::Q).unwrap(), Elem::Quad(QuadElem::omega(-1)));
        assert_eq!(parse_element("t*(t-3)", &Field::RatFn(Base::Q)).unwrap(), parse_element("t^2 - 3t @ Q", &Field::Q).unwrap());
        assert_eq!(parse_element("sqrt(5) @ d=5", &Field::Q).unwrap(), Elem::Quad(QuadElem::sqrt_d(5)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_element("1 + $", &Field::Q) {
            Err(Error::ParseError { pos, .. }) => assert_eq!(pos, 4),
            e => panic!("{e:?}"),
        }
        match parse_element("(1 + 2", &Field::Q) {
            Err(Error::ParseError { pos, .. }) => assert_eq!(pos, 6),
            e => panic!("{e:?}"),
        }
        assert!(parse_element("t @ Q", &Field::Q).is_ok());
        assert!(parse_element("w", &Field::Q).is_err());
        assert!(parse_element("1/0", &Field::Q).is_err());
    }

    #[test]
    fn round_trips() {
        for s in ["-3/7", "t^3 - 2*t + 1 @ Fp(5)", "(t+1)/(t^2-2) @ Q(t)", "1/2 - 3/2*w @ d=-3", "-w @ d=-5", "2/(t) @ Q(t)"] {
            let x = parse_element(s, &Field::Q).unwrap();
            assert_eq!(parse_element(&print_element(&x), &Field::Q).unwrap(), x, "{s}");
        }
    }

    #[test]
    fn places_and_rings() {
        assert_eq!(parse_place("p:5").unwrap(), Place::prime(5));
        assert_eq!(parse_place("inf@Q(t)").unwrap(), Place::InfinitePoly(Base::Q));
        let p = parse_place("poly:t^2+1@Fp(3)").unwrap();
        assert_eq!(p, Place::FinitePoly(Poly::from_ints(Base::Fp(3), &[1, 0, 1])));
        assert!(parse_place("poly:t^2+1@Fp(5)").is_err());
        let q = parse_place("qprime:(2,1+w)@d=-5").unwrap();
        assert_eq!(parse_place(&q.to_string()).unwrap(), q);
        assert_eq!(parse_place(&p.to_string()).unwrap(), p);
        assert_eq!(parse_ring("Zs[]").unwrap(), BaseRing::integers(Field::Q));
        assert_eq!(parse_ring("Z[1/6]").unwrap().s, vec![Place::prime(2), Place::prime(3)]);
        assert_eq!(parse_ring("Zs[2,3]").unwrap().s, vec![Place::prime(2), Place::prime(3)]);
        let r = parse_ring("Z[sqrt(-5),1/2]").unwrap();
        assert_eq!(r.field, Field::Quad(-5));
        assert_eq!(r.s.len(), 1);
        assert_eq!(parse_ring("Z[i,1/2]").unwrap().field, Field::Quad(-1));
        assert_eq!(parse_ring("O(d=-5)[1/(2,1+w)]").unwrap().s, r.s);
        let f = parse_ring("Fp(5)[t][1/(t^2-1)]").unwrap();
        assert_eq!(f.s.len(), 2);
        assert_eq!(parse_ring("Q[t]").unwrap().field, Field::RatFn(Base::Q));
        let m = parse_matrix("[[1, 0], [0, 1/2]]", &Field::Q).unwrap();
        assert_eq!(m[1][1], Elem::Q(BigRational::new(1.into(), 2.into())));
        assert_eq!(parse_matrix("[[i]]", &Field::Quad(-1)).unwrap(), vec![vec![Elem::Quad(QuadElem::omega(-1))]]);
    }
}
