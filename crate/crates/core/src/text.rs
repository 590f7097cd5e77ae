//! Canonical text form: signed terms by ascending exponent,
//! e.g. `-1 + g - g^2 + 2g^5`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn format_terms(coeffs: &[BigInt], symbol: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => symbol.to_string(),
            _ => format!("{symbol}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }
    fn peek(&self) -> Option<char> {
        self.s[self.pos..].chars().next()
    }
    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }
    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.s[start..self.pos])
    }
    fn symbol(&mut self, symbols: &[&str]) -> bool {
        self.skip_ws();
        for sym in symbols {
            if self.s[self.pos..].starts_with(sym) {
                self.pos += sym.len();
                return true;
            }
        }
        false
    }
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} in `{}`", self.pos, self.s))
    }
}

/// Parse a sum of terms `±c·s^e` over any of the accepted symbols.
/// Returns `(coefficient, exponent)` pairs in input order; repeated
/// exponents are left for the caller to combine.
pub fn parse_terms(s: &str, symbols: &[&str]) -> Result<Vec<(BigInt, u64)>> {
    const MAX_DIGITS: usize = 4096;
    let mut cur = Cursor { s, pos: 0 };
    let mut terms = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err("empty expression"));
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            return Err(cur.err("expected `+` or `-`"));
        };
        first = false;
        let coeff = match cur.digits() {
            Some(d) if d.len() > MAX_DIGITS => return Err(cur.err("coefficient too long")),
            Some(d) => Some(d.parse::<BigInt>().map_err(|_| cur.err("bad coefficient"))?),
            None => None,
        };
        if coeff.is_some() {
            cur.eat('*');
        }
        let exp = if cur.symbol(symbols) {
            if cur.eat('^') {
                let d = cur.digits().ok_or_else(|| cur.err("expected exponent"))?;
                d.parse::<u64>().map_err(|_| cur.err("exponent out of range"))?
            } else {
                1
            }
        } else if coeff.is_some() {
            0
        } else {
            return Err(cur.err("expected a term"));
        };
        let c = coeff.unwrap_or_else(BigInt::one);
        terms.push((if negative { -c } else { c }, exp));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn formats_canonically() {
        let c = b(&[-1, 1, -1, 1, 0, 0, 1, -1, 1]);
        assert_eq!(format_terms(&c, "g"), "-1 + g - g^2 + g^3 + g^6 - g^7 + g^8");
        assert_eq!(format_terms(&b(&[0, 0, 2]), "x"), "2x^2");
        assert_eq!(format_terms(&b(&[0, 0]), "x"), "0");
        assert_eq!(format_terms(&b(&[0, -3]), "θ"), "-3θ");
    }

    #[test]
    fn parses_back() {
        let s = "-1 + g - g^2 + g^3 + g^6 - g^7 + g^8";
        let t = parse_terms(s, &["g"]).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t[0], (BigInt::from(-1), 0));
        assert_eq!(t[6], (BigInt::from(1), 8));
        let t = parse_terms("2*h^3 -  5 +x", &["h", "x"]).unwrap();
        assert_eq!(t, vec![(2.into(), 3), ((-5).into(), 0), (1.into(), 1)]);
        assert_eq!(parse_terms("-3θ", &["θ"]).unwrap(), vec![((-3).into(), 1)]);
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "g g", "+", "g^", "1 +", "y", "3 4"] {
            assert!(parse_terms(s, &["g"]).is_err(), "{s}");
        }
    }
}
