//! Text form of Laurent polynomials.
//!
//! Grammar (ASCII, whitespace ignored):
//!
//! ```text
//! poly     := '0' | [sign] term (sign term)*
//! term     := [integer] ['*'] [monomial]        (at least one of the two)
//! monomial := var ['^' [sign] digits] ('*' var ['^' [sign] digits])*
//! var      := 't' (lattice rank 1) | 't' digits (1-based index)
//! ```
//!
//! The canonical serialization lists terms in lexicographic exponent order,
//! writes `c*mono`, drops unit coefficients and unit exponents, and uses `t`
//! for the single variable of rank 1 and `t1..tm` otherwise.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::{ExponentVector, LaurentPoly};
use crate::error::ParseError;

struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        let chars: Vec<_> = src
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Cursor {
            chars,
            pos: 0,
            len: src.len(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(o, _)| o)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.pos += 1;
        }
        (!s.is_empty()).then_some(s)
    }
}

/// Parses `text` as an element of `Z[Z^m]`.
pub fn parse_poly(text: &str, m: usize) -> Result<LaurentPoly, ParseError> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(ParseError::at(
            0,
            "empty polynomial (write 0 for the zero polynomial)",
        ));
    }
    let mut poly = LaurentPoly::zero(m);
    let mut first = true;
    while cur.peek().is_some() {
        let negative = match cur.peek() {
            Some('+') => {
                cur.bump();
                false
            }
            Some('-') => {
                cur.bump();
                true
            }
            _ if first => false,
            Some(c) => {
                return Err(ParseError::at(
                    cur.offset(),
                    format!("expected '+' or '-', found '{c}'"),
                ))
            }
            None => unreachable!(),
        };
        first = false;
        let (mut coeff, exponent) = parse_term(&mut cur, m)?;
        if negative {
            coeff = -coeff;
        }
        poly.add_term(exponent, coeff);
    }
    Ok(poly)
}

fn parse_term(cur: &mut Cursor, m: usize) -> Result<(BigInt, ExponentVector), ParseError> {
    let start = cur.offset();
    let coeff = cur
        .digits()
        .map(|d| d.parse::<BigInt>().expect("digit string"));
    let star = cur.eat('*');
    let mut exponent = vec![0i64; m];
    let has_monomial = cur.peek() == Some('t');
    if has_monomial {
        loop {
            let (index, power) = parse_factor(cur, m)?;
            exponent[index] += power;
            if cur.peek() == Some('*') {
                cur.bump();
                if cur.peek() != Some('t') {
                    return Err(ParseError::at(
                        cur.offset(),
                        "expected a variable after '*'",
                    ));
                }
                continue;
            }
            break;
        }
    } else if star {
        return Err(ParseError::at(
            cur.offset(),
            "expected a variable after '*'",
        ));
    } else if coeff.is_none() {
        let msg = match cur.peek() {
            Some(c) => format!("unexpected character '{c}'"),
            None => "unexpected end of input".to_string(),
        };
        return Err(ParseError::at(start.max(cur.offset()), msg));
    }
    if let Some(c) = cur.peek() {
        if c != '+' && c != '-' {
            return Err(ParseError::at(
                cur.offset(),
                format!("unexpected character '{c}'"),
            ));
        }
    }
    Ok((
        coeff.unwrap_or_else(BigInt::one),
        ExponentVector::new(exponent),
    ))
}

fn parse_factor(cur: &mut Cursor, m: usize) -> Result<(usize, i64), ParseError> {
    let at = cur.offset();
    cur.bump(); // 't'
    let index = match cur.digits() {
        Some(d) => {
            let i: usize = d
                .parse()
                .map_err(|_| ParseError::at(at, "variable index too large"))?;
            if i == 0 || i > m {
                return Err(ParseError::at(
                    at,
                    format!("variable t{i} out of range for lattice rank {m}"),
                ));
            }
            i - 1
        }
        None => {
            if m != 1 {
                return Err(ParseError::at(
                    at,
                    format!(
                        "bare 't' is only valid for lattice rank 1 (rank is {m}); use t1..t{m}"
                    ),
                ));
            }
            0
        }
    };
    let mut power = 1i64;
    if cur.eat('^') {
        let neg = if cur.eat('-') {
            true
        } else {
            cur.eat('+');
            false
        };
        let d = cur
            .digits()
            .ok_or_else(|| ParseError::at(cur.offset(), "expected exponent after '^'"))?;
        power = d
            .parse()
            .map_err(|_| ParseError::at(at, "exponent out of range"))?;
        if neg {
            power = -power;
        }
    }
    Ok((index, power))
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: usize, e: &ExponentVector) -> fmt::Result {
    let mut first = true;
    for (i, &power) in e.as_slice().iter().enumerate() {
        if power == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if m == 1 {
            f.write_str("t")?;
        } else {
            write!(f, "t{}", i + 1)?;
        }
        if power != 1 {
            write!(f, "^{power}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let m = self.nvars();
        for (k, (e, c)) in self.terms().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let abs = c.abs();
            if e.is_zero() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m, e)?;
            }
        }
        Ok(())
    }
}

/// Parses a comma separated list of integers, e.g. a covector `"1,-2"`.
pub fn parse_int_list(text: &str) -> Result<Vec<i64>, ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let v = part.trim();
        let n: i64 = v
            .parse()
            .map_err(|_| ParseError::at(offset, format!("not an integer: '{v}'")))?;
        out.push(n);
        offset += part.len() + 1;
    }
    Ok(out)
}
