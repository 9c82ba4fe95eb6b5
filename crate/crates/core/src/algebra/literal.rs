//! Text literals for series and forms.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := coeff | var | var '^' int
//! coeff  := int | 'g' | 'g' '^' int
//! int    := '-'? digits
//! ```
//!
//! Forms extend a term with a wedge of `dlog(var)` factors and an optional
//! `| window(n,m)` suffix; a parenthesized expression may stand in for the
//! coefficient: `(t^-3 + t^-2) dlog(t) | window(3,1)`.

use super::galois::{GaloisRing, Scalar};
use super::series::{Nested, SeriesRing};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    ring: &'a SeriesRing,
}

/// A parsed form term: the `dlog` variables in written order (1-based) and the
/// coefficient.
pub type FormTerm = (Vec<usize>, Nested);

/// Result of parsing a form literal.
#[derive(Clone, Debug)]
pub struct ParsedForm {
    pub terms: Vec<FormTerm>,
    pub window: Option<(i64, i64)>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat(b'-');
        self.skip_ws();
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            self.pos = start;
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[digits_start..self.pos]).expect("ascii");
        let v: i64 = match text.parse() {
            Ok(v) => v,
            Err(_) => {
                self.pos = digits_start;
                return self.err("integer out of range");
            }
        };
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let src = self.src;
        if self.pos < src.len() && (src[self.pos].is_ascii_alphabetic() || src[self.pos] == b'_') {
            self.pos += 1;
            while self.pos < src.len() && (src[self.pos].is_ascii_alphanumeric() || src[self.pos] == b'_') {
                self.pos += 1;
            }
            Some(std::str::from_utf8(&src[start..self.pos]).expect("ascii"))
        } else {
            None
        }
    }

    fn peek_ident(&mut self) -> Option<&'a str> {
        let save = self.pos;
        let id = self.ident();
        self.pos = save;
        id
    }

    fn generator_power(&self, e: i64) -> Result<Scalar> {
        let r = self.ring.scalars();
        let g = r.generator();
        if e >= 0 {
            Ok(r.pow(&g, e as u64))
        } else {
            Ok(r.pow(&r.inv(&g)?, e.unsigned_abs()))
        }
    }

    /// A product of factors; stops before `+`, `)`, `|`, `dlog` or the end.
    fn product(&mut self) -> Result<(Scalar, Vec<i64>)> {
        let r = self.ring.scalars();
        let mut coeff = r.one();
        let mut exps = vec![0i64; self.vars.len()];
        loop {
            match self.peek() {
                Some(b'-') | Some(b'0'..=b'9') => {
                    let v = self.int()?;
                    coeff = r.mul(&coeff, &r.from_int(v));
                }
                Some(_) => {
                    let save = self.pos;
                    let Some(id) = self.ident() else {
                        return self.err("expected a factor");
                    };
                    let e = if self.eat(b'^') { self.int()? } else { 1 };
                    if let Some(i) = self.vars.iter().position(|v| v == id) {
                        exps[i] = exps[i]
                            .checked_add(e)
                            .ok_or(Error::Parse { pos: save, msg: "exponent overflow".into() })?;
                    } else if id == "g" {
                        coeff = r.mul(&coeff, &self.generator_power(e)?);
                    } else {
                        return Err(Error::UnknownVariable(id.to_string()));
                    }
                }
                None => return self.err("expected a factor"),
            }
            if !self.eat(b'*') {
                return Ok((coeff, exps));
            }
            if self.peek_ident() == Some("dlog") {
                return Ok((coeff, exps));
            }
        }
    }

    fn expr(&mut self) -> Result<Nested> {
        let mut monos = Vec::new();
        loop {
            monos.push(self.product()?);
            if !self.eat(b'+') {
                break;
            }
        }
        let level = self.vars.len();
        let x = self
            .ring
            .from_monomials(level, monos.iter().map(|(c, e)| (*c, e.as_slice())));
        self.ring.check_ord_bound(&x)?;
        Ok(x)
    }

    fn dlogs(&mut self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        while self.peek_ident() == Some("dlog") {
            self.ident();
            self.expect(b'(')?;
            let save = self.pos;
            let Some(id) = self.ident() else {
                return self.err("expected a variable");
            };
            let Some(i) = self.vars.iter().position(|v| v == id) else {
                self.pos = save;
                return Err(Error::UnknownVariable(id.to_string()));
            };
            self.expect(b')')?;
            out.push(i + 1);
            if !self.eat(b'^') {
                break;
            }
        }
        Ok(out)
    }

    fn form_term(&mut self) -> Result<FormTerm> {
        let level = self.vars.len();
        let coeff = if self.peek() == Some(b'(') {
            self.pos += 1;
            let x = self.expr()?;
            self.expect(b')')?;
            self.eat(b'*');
            x
        } else if self.peek_ident() == Some("dlog") {
            self.ring.one(level)
        } else {
            let (c, e) = self.product()?;
            self.ring.monomial(c, &e)
        };
        let dl = self.dlogs()?;
        Ok((dl, coeff))
    }

    fn window(&mut self) -> Result<Option<(i64, i64)>> {
        if !self.eat(b'|') {
            return Ok(None);
        }
        if self.ident() != Some("window") {
            return self.err("expected `window`");
        }
        self.expect(b'(')?;
        let n = self.int()?;
        self.expect(b',')?;
        let m = self.int()?;
        self.expect(b')')?;
        Ok(Some((n, m)))
    }
}

/// Parses a series literal into the ring of the given variables.
pub fn parse_series(text: &str, vars: &[String], ring: &SeriesRing) -> Result<Nested> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        ring,
    };
    let x = p.expr()?;
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    Ok(x)
}

/// Parses a form literal.
pub fn parse_form(text: &str, vars: &[String], ring: &SeriesRing) -> Result<ParsedForm> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        ring,
    };
    let mut terms = Vec::new();
    loop {
        terms.push(p.form_term()?);
        if !p.eat(b'+') {
            break;
        }
    }
    let window = p.window()?;
    if !p.at_end() {
        return p.err("unexpected trailing input");
    }
    Ok(ParsedForm { terms, window })
}

/// Discrete logarithm base `g` in a finite field.
fn field_log(r: &GaloisRing, c: &Scalar) -> Option<u64> {
    let g = r.generator();
    let mut x = r.one();
    let q1 = (r.p() as u64).pow(r.degree() as u32) - 1;
    for e in 0..q1 {
        if x == *c {
            return Some(e);
        }
        x = r.mul(&x, &g);
    }
    None
}

/// Coefficient pieces: each `(integer, power of g)` renders as one factor
/// group. Prime-ring values give one piece, field elements a single power of
/// `g`, and general Galois-ring values one piece per basis coefficient.
fn coefficient_pieces(r: &GaloisRing, c: &Scalar) -> Vec<(u32, u64)> {
    if let Some(v) = r.as_int(c) {
        return vec![(v, 0)];
    }
    if r.is_field() {
        if let Some(e) = field_log(r, c) {
            return vec![(1, e)];
        }
    }
    c.coefficients()
        .iter()
        .take(r.degree())
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| (v, i as u64))
        .collect()
}

fn render_monomial(int: u32, gpow: u64, exps: &[i64], vars: &[String]) -> String {
    let mut factors = Vec::new();
    let has_vars = exps.iter().any(|&e| e != 0) || gpow != 0;
    if int != 1 || !has_vars {
        factors.push(int.to_string());
    }
    match gpow {
        0 => {}
        1 => factors.push("g".into()),
        e => factors.push(format!("g^{e}")),
    }
    for (v, &e) in vars.iter().zip(exps) {
        match e {
            0 => {}
            1 => factors.push(v.clone()),
            e => factors.push(format!("{v}^{e}")),
        }
    }
    factors.join("*")
}

/// Canonical text: monomials ordered by exponent from the uniformizer
/// inwards, ascending; variables in tower order. Unknown tails are omitted.
pub fn render_series(x: &Nested, vars: &[String], ring: &SeriesRing) -> String {
    let mut monos = x.monomials();
    monos.sort_by(|a, b| a.1.iter().rev().cmp(b.1.iter().rev()));
    let mut out = Vec::new();
    for (c, e) in monos {
        for (int, gpow) in coefficient_pieces(ring.scalars(), &c) {
            out.push(render_monomial(int, gpow, &e, vars));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out.join(" + ")
    }
}

/// Number of rendered monomials; used to decide on parentheses.
pub fn rendered_terms(x: &Nested, ring: &SeriesRing) -> usize {
    x.monomials()
        .iter()
        .map(|(c, _)| coefficient_pieces(ring.scalars(), c).len())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tower::FieldTower;

    #[test]
    fn parses_mixed_literal() {
        let k = FieldTower::new(2, 1, 1, &["u", "t"], 64).unwrap();
        let x = k.parse("t^-3 + u*t^-1").unwrap();
        let f = k.field();
        let one = f.scalars().one();
        let expect = f.add(&f.monomial(one, &[0, -3]), &f.monomial(one, &[1, -1]));
        assert_eq!(x, expect);
        assert_eq!(k.render(&x), "t^-3 + u*t^-1");
    }

    #[test]
    fn generator_power_coefficient() {
        let k = FieldTower::laurent(2, 2, 1, "t").unwrap();
        let x = k.parse("g^2*t^2").unwrap();
        let r = k.field();
        let g = r.scalars().generator();
        assert_eq!(x, r.monomial(r.scalars().mul(&g, &g), &[2]));
        assert_eq!(k.render(&x), "g^2*t^2");
    }

    #[test]
    fn char_two_collapse() {
        let k = FieldTower::laurent(2, 1, 1, "t").unwrap();
        let x = k.parse("t^-1 + t^-1").unwrap();
        assert!(x.is_zero());
        assert_eq!(k.render(&x), "0");
    }

    #[test]
    fn errors_carry_position_and_names() {
        let k = FieldTower::laurent(3, 1, 1, "t").unwrap();
        assert!(matches!(k.parse("t^"), Err(Error::Parse { pos: 2, .. })));
        assert_eq!(k.parse("2*z"), Err(Error::UnknownVariable("z".into())));
        assert!(matches!(k.parse("t +"), Err(Error::Parse { .. })));
        assert_eq!(k.parse("t^-10001"), Err(Error::OrdOutOfRange(-10001)));
    }

    #[test]
    fn negative_integers_reduce() {
        let k = FieldTower::laurent(5, 1, 1, "t").unwrap();
        assert_eq!(k.render(&k.parse("-1*t + 7").unwrap()), "2 + 4*t");
    }

    #[test]
    fn galois_ring_render_round_trip() {
        let k = FieldTower::laurent(3, 2, 2, "t").unwrap();
        let x = k.parse_lift("4*g*t^-1 + 5 + g^3").unwrap();
        let text = render_series(&x, k.variables(), &k.lift());
        assert_eq!(k.parse_lift(&text).unwrap(), x);
    }

    #[test]
    fn form_literal() {
        let k = FieldTower::new(2, 1, 1, &["u", "t"], 64).unwrap();
        let f = parse_form("(t^-3 + t^-2) dlog(t) + u*t^-2 dlog(u)^dlog(t) | window(3,1)", k.variables(), &k.field())
            .unwrap();
        assert_eq!(f.window, Some((3, 1)));
        assert_eq!(f.terms.len(), 2);
        assert_eq!(f.terms[0].0, vec![2]);
        assert_eq!(f.terms[1].0, vec![1, 2]);
        assert_eq!(f.terms[1].1, k.parse("u*t^-2").unwrap());
    }
}
