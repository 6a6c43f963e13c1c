//! Expression parser for maps and polynomials.
//!
//! Grammar (whitespace insensitive):
//!   map    := '[' poly (':' poly){3} ']'
//!   poly   := ['+'|'-'] term (('+'|'-') term)*
//!   term   := factor ('*'? factor)*
//!   factor := coefficient | var ('^' nat)? | '(' poly ')'
//!   coefficient := nat ('/' nat)?
//!   var    := x | y | z  (source maps)  |  u | v | w | t  (surface equations)
//!
//! Implicit multiplication is permitted between adjacent factors. Limits:
//! exponents at most 9, at most 10^4 expanded terms per component.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Poly, Ring};
use crate::ratmap::RationalMap;
use crate::scalar::{Rational, Scalar};

const MAX_EXPONENT: u32 = 9;
const MAX_TERMS: usize = 10_000;

const SOURCE_VARS: [&str; 3] = ["x", "y", "z"];
const SURFACE_VARS: [&str; 4] = ["t", "u", "v", "w"];

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    LBracket,
    RBracket,
    LParen,
    RParen,
    Colon,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Int(BigInt),
    Var(char),
}

struct Lexer {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Lexer> {
        let mut tokens = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let start = i;
            match c {
                ' ' | '\t' | '\n' | '\r' => {
                    i += 1;
                    continue;
                }
                '[' => tokens.push((Tok::LBracket, start)),
                ']' => tokens.push((Tok::RBracket, start)),
                '(' => tokens.push((Tok::LParen, start)),
                ')' => tokens.push((Tok::RParen, start)),
                ':' => tokens.push((Tok::Colon, start)),
                '+' => tokens.push((Tok::Plus, start)),
                '-' => tokens.push((Tok::Minus, start)),
                '*' => tokens.push((Tok::Star, start)),
                '^' => tokens.push((Tok::Caret, start)),
                '/' => tokens.push((Tok::Slash, start)),
                '0'..='9' => {
                    let mut j = i;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    let n: BigInt = text[i..j].parse().expect("digits");
                    tokens.push((Tok::Int(n), start));
                    i = j;
                    continue;
                }
                'a'..='z' => tokens.push((Tok::Var(c), start)),
                _ => return Err(err(start, format!("unexpected character '{}'", c))),
            }
            i += 1;
        }
        Ok(Lexer {
            tokens,
            pos: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, o)| *o)
            .unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(self.offset(), format!("expected {}", what)))
        }
    }
}

/// Tracks which variable alphabet the expression uses.
#[derive(Clone, Copy, PartialEq)]
enum Alphabet {
    Unknown,
    Source,
    Surface,
}

struct Parser {
    lexer: Lexer,
    alphabet: Alphabet,
}

impl Parser {
    fn ring(&self) -> Ring {
        match self.alphabet {
            Alphabet::Surface => Ring::tuvw(),
            _ => Ring::xyz(),
        }
    }

    /// Constants may have been built before the alphabet was known; move them
    /// into the current ring so arithmetic never crosses rings.
    fn promote(&self, p: Poly) -> Poly {
        let ring = self.ring();
        if p.ring() == &ring {
            p
        } else {
            rering(p, &ring)
        }
    }

    fn register_var(&mut self, c: char, offset: usize) -> Result<()> {
        let name = c.to_string();
        let in_source = SOURCE_VARS.contains(&name.as_str());
        let in_surface = SURFACE_VARS.contains(&name.as_str());
        if !in_source && !in_surface {
            return Err(err(offset, format!("unknown variable '{}'", c)));
        }
        let var_alphabet = if in_source {
            Alphabet::Source
        } else {
            Alphabet::Surface
        };
        match self.alphabet {
            Alphabet::Unknown => {
                self.alphabet = var_alphabet;
                Ok(())
            }
            a if a == var_alphabet => Ok(()),
            _ => Err(err(
                offset,
                format!("variable '{}' mixes alphabets (x,y,z vs u,v,w,t)", c),
            )),
        }
    }

    /// poly := ['+'|'-'] term (('+'|'-') term)*
    fn parse_poly(&mut self) -> Result<Poly> {
        let mut negate = false;
        match self.lexer.peek() {
            Some(Tok::Plus) => {
                self.lexer.next();
            }
            Some(Tok::Minus) => {
                self.lexer.next();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.lexer.peek() {
                Some(Tok::Plus) => {
                    self.lexer.next();
                    let t = self.parse_term()?;
                    acc = self.promote(acc);
                    acc = acc.add(&self.promote(t));
                }
                Some(Tok::Minus) => {
                    self.lexer.next();
                    let t = self.parse_term()?;
                    acc = self.promote(acc);
                    acc = acc.sub(&self.promote(t));
                }
                _ => break,
            }
            if acc.num_terms() > MAX_TERMS {
                return Err(err(self.lexer.offset(), "term count limit exceeded"));
            }
        }
        Ok(acc)
    }

    /// term := factor ('*'? factor)*
    fn parse_term(&mut self) -> Result<Poly> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.lexer.peek() {
                Some(Tok::Star) => {
                    self.lexer.next();
                    let f = self.parse_factor()?;
                    acc = self.promote(acc);
                    acc = acc.mul(&self.promote(f));
                }
                // Implicit multiplication before a variable, number or '('.
                Some(Tok::Var(_)) | Some(Tok::Int(_)) | Some(Tok::LParen) => {
                    let f = self.parse_factor()?;
                    acc = self.promote(acc);
                    acc = acc.mul(&self.promote(f));
                }
                _ => break,
            }
            if acc.num_terms() > MAX_TERMS {
                return Err(err(self.lexer.offset(), "term count limit exceeded"));
            }
        }
        Ok(acc)
    }

    /// factor := coefficient | var ('^' nat)? | '(' poly ')'
    fn parse_factor(&mut self) -> Result<Poly> {
        let offset = self.lexer.offset();
        match self.lexer.next() {
            Some(Tok::Int(n)) => {
                // Optional '/ denominator'.
                let value = if self.lexer.peek() == Some(&Tok::Slash) {
                    self.lexer.next();
                    let doff = self.lexer.offset();
                    match self.lexer.next() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(err(doff, "zero denominator"));
                            }
                            Rational::new(n, d)
                        }
                        _ => return Err(err(doff, "expected denominator")),
                    }
                } else {
                    Rational::from(n)
                };
                // The ring may not be known yet; use a placeholder constant
                // in the current ring (constants embed in any ring).
                Ok(Poly::constant(&self.ring(), Scalar::Rat(value)))
            }
            Some(Tok::Var(c)) => {
                self.register_var(c, offset)?;
                let ring = self.ring();
                let idx = ring
                    .index_of(&c.to_string())
                    .expect("registered variable in ring");
                let mut exp = 1u32;
                if self.lexer.peek() == Some(&Tok::Caret) {
                    self.lexer.next();
                    let eoff = self.lexer.offset();
                    match self.lexer.next() {
                        Some(Tok::Int(n)) => {
                            exp = u32::try_from(&n)
                                .map_err(|_| err(eoff, "exponent too large"))?;
                            if exp > MAX_EXPONENT {
                                return Err(err(
                                    eoff,
                                    format!("exponent exceeds limit {}", MAX_EXPONENT),
                                ));
                            }
                        }
                        _ => return Err(err(eoff, "expected exponent")),
                    }
                }
                Ok(Poly::var(&ring, idx).pow(exp))
            }
            Some(Tok::LParen) => {
                let p = self.parse_poly()?;
                self.lexer.expect(Tok::RParen, "')'")?;
                Ok(p)
            }
            Some(t) => Err(err(offset, format!("unexpected token {:?}", t))),
            None => Err(err(offset, "unexpected end of input")),
        }
    }
}

/// Re-expresses a polynomial in the parser's final ring (constants may have
/// been built before the alphabet was known, but rings share no variables so
/// only constants and same-ring polynomials occur).
fn rering(p: Poly, ring: &Ring) -> Poly {
    if p.ring() == ring {
        return p;
    }
    assert!(p.is_constant());
    let c = p.eval(&vec![Scalar::zero(); p.ring().nvars()]);
    Poly::constant(ring, c)
}

/// A parsed map expression: four homogeneous components of one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct MapExpression {
    pub components: [Poly; 4],
    /// Byte spans of the component expressions in the input.
    pub spans: [(usize, usize); 4],
}

impl MapExpression {
    pub fn to_rational_map(&self) -> Result<RationalMap> {
        RationalMap::new(self.components.clone())
    }
}

impl fmt::Display for MapExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} : {} : {} : {}]",
            self.components[0], self.components[1], self.components[2], self.components[3]
        )
    }
}

/// Parses `[p0 : p1 : p2 : p3]` and validates homogeneity, a single shared
/// degree, and positive degree.
pub fn parse_map(text: &str) -> Result<MapExpression> {
    let lexer = Lexer::new(text)?;
    let mut parser = Parser {
        lexer,
        alphabet: Alphabet::Unknown,
    };
    parser.lexer.expect(Tok::LBracket, "'['")?;
    let mut components = Vec::new();
    let mut spans = Vec::new();
    for i in 0..4 {
        let start = parser.lexer.offset();
        let p = parser.parse_poly()?;
        let end = parser.lexer.offset();
        spans.push((start, end));
        components.push(p);
        if i < 3 {
            parser.lexer.expect(Tok::Colon, "':'")?;
        }
    }
    parser.lexer.expect(Tok::RBracket, "']'")?;
    if let Some(t) = parser.lexer.peek() {
        return Err(err(
            parser.lexer.offset(),
            format!("trailing input after map: {:?}", t),
        ));
    }
    let ring = parser.ring();
    let components: Vec<Poly> = components.into_iter().map(|p| rering(p, &ring)).collect();
    let mut degree: Option<usize> = None;
    for (i, p) in components.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let d = p
            .homogeneous_degree()
            .ok_or_else(|| err(spans[i].0, format!("component {} is not homogeneous", i)))?;
        if d == 0 {
            return Err(err(spans[i].0, format!("component {} has degree 0", i)));
        }
        match degree {
            None => degree = Some(d),
            Some(e) if e == d => {}
            Some(e) => {
                return Err(err(
                    spans[i].0,
                    format!("component {} has degree {}, expected {}", i, d, e),
                ))
            }
        }
    }
    if degree.is_none() {
        return Err(Error::AllComponentsZero);
    }
    Ok(MapExpression {
        components: components.try_into().unwrap(),
        spans: spans.try_into().unwrap(),
    })
}

/// Parses a standalone polynomial (either alphabet).
pub fn parse_poly(text: &str) -> Result<Poly> {
    let lexer = Lexer::new(text)?;
    let mut parser = Parser {
        lexer,
        alphabet: Alphabet::Unknown,
    };
    let p = parser.parse_poly()?;
    if let Some(t) = parser.lexer.peek() {
        return Err(err(
            parser.lexer.offset(),
            format!("trailing input after polynomial: {:?}", t),
        ));
    }
    Ok(rering(p, &parser.ring()))
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (sign, rest) = match t.strip_prefix('-') {
        Some(r) => (-1i64, r),
        None => (1, t),
    };
    let (num_s, den_s) = match rest.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (rest, "1"),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| err(0, format!("invalid rational '{}'", text)))?;
    let den: BigInt = den_s
        .parse()
        .map_err(|_| err(0, format!("invalid rational '{}'", text)))?;
    if den.is_zero() {
        return Err(err(0, "zero denominator"));
    }
    Ok(Rational::new(num * BigInt::from(sign), den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_q10() {
        let m = parse_map("[x^2 : x*y : y^2 : z^2]").unwrap();
        let r = Ring::xyz();
        let x = Poly::var_named(&r, "x");
        let y = Poly::var_named(&r, "y");
        let z = Poly::var_named(&r, "z");
        assert_eq!(m.components[0], x.pow(2));
        assert_eq!(m.components[1], x.mul(&y));
        assert_eq!(m.components[2], y.pow(2));
        assert_eq!(m.components[3], z.pow(2));
    }

    #[test]
    fn parses_c1_with_parens() {
        let m = parse_map("[z*(x^2+y^2) : y*(x^2+z^2) : x*(y^2+z^2) : x*y*z]").unwrap();
        let r = Ring::xyz();
        let x = Poly::var_named(&r, "x");
        let y = Poly::var_named(&r, "y");
        let z = Poly::var_named(&r, "z");
        assert_eq!(m.components[0], z.mul(&x.pow(2).add(&y.pow(2))));
        assert_eq!(m.components[3], x.mul(&y).mul(&z));
    }

    #[test]
    fn syntax_error_position() {
        let e = parse_map("[x : y : z : x+]").unwrap_err();
        match e {
            Error::Parse { offset, .. } => assert_eq!(offset, 15),
            _ => panic!("expected parse error"),
        }
    }

    #[test]
    fn inhomogeneous_component() {
        assert!(matches!(
            parse_map("[x^2 : x*y : y^2 : z]"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_map("[x^2+x : x*y : y^2 : z^2]"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn mixed_alphabets_rejected() {
        assert!(matches!(
            parse_map("[x^2 : x*y : y^2 : u^2]"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn exponent_limit() {
        // Degree > 3 is fine at parse time; map construction rejects it.
        let m = parse_map("[x^9 : x^8*y : y^9 : z^9]").unwrap();
        assert!(matches!(
            m.to_rational_map(),
            Err(Error::UnsupportedDegree(9))
        ));
        assert!(matches!(parse_poly("x^10"), Err(Error::Parse { .. })));
    }

    #[test]
    fn implicit_multiplication() {
        let p = parse_poly("2x y").unwrap();
        let r = Ring::xyz();
        let x = Poly::var_named(&r, "x");
        let y = Poly::var_named(&r, "y");
        assert_eq!(p, x.mul(&y).scale(&Scalar::from(2)));
    }

    #[test]
    fn rational_coefficients() {
        let p = parse_poly("1/2*x^2 - 3/4*y^2").unwrap();
        let r = Ring::xyz();
        let x = Poly::var_named(&r, "x");
        let y = Poly::var_named(&r, "y");
        assert_eq!(
            p,
            x.pow(2)
                .scale_rat(&crate::scalar::rat(1, 2))
                .sub(&y.pow(2).scale_rat(&crate::scalar::rat(3, 4)))
        );
    }

    #[test]
    fn surface_alphabet() {
        let p = parse_poly("4*t^3 - t*u^2 - t*v^2 - t*w^2 + u*v*w").unwrap();
        assert_eq!(p.ring(), &Ring::tuvw());
        assert_eq!(p.to_string(), "4*t^3 - t*u^2 - t*v^2 - t*w^2 + u*v*w");
    }

    #[test]
    fn round_trip_canonical() {
        for text in [
            "[x^2 : x*y : y^2 : z^2]",
            "[z*(x^2+y^2) : y*(x^2+z^2) : x*(y^2+z^2) : x*y*z]",
            "[x*y : x*z : y*z : x^2+y^2+z^2]",
            "[x^3 : x*y^2 : 2*x*y*z-y^3 : z*(x*z-y^2)]",
        ] {
            let m = parse_map(text).unwrap();
            let printed = m.to_string();
            let reparsed = parse_map(&printed).unwrap();
            assert_eq!(m.components, reparsed.components);
        }
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("3").unwrap(), crate::scalar::rat_int(3));
        assert_eq!(parse_rational("-5/7").unwrap(), crate::scalar::rat(-5, 7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn term_count_limit() {
        // A doubled product of dyadic binomials passes 10^4 distinct terms
        // while keeping every coefficient small.
        let mut factors = Vec::new();
        for _ in 0..2 {
            for v in ["x", "y", "z"] {
                for e in [1, 2, 4, 8] {
                    factors.push(format!("(1+{}^{})", v, e));
                }
            }
        }
        let huge = factors.join("*");
        match parse_poly(&huge) {
            Err(Error::Parse { message, .. }) => assert!(message.contains("term count")),
            other => panic!("expected a term-count limit error, got {:?}", other),
        }
    }

    #[test]
    fn leading_sign() {
        let p = parse_poly("-x^2 + y^2").unwrap();
        let r = Ring::xyz();
        let x = Poly::var_named(&r, "x");
        let y = Poly::var_named(&r, "y");
        assert_eq!(p, y.pow(2).sub(&x.pow(2)));
    }
}
