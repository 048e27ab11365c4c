//! Parsing of scalar literals.
//!
//! Accepts the canonical serialization produced by `Display for Scalar` and,
//! more generally, arithmetic expressions in the field's generator:
//!
//! ```text
//! rational        3   -7/4   (1/2 + 1/3)
//! prime field     3 mod 5    -1 mod 5    2/3 mod 7
//! cyclotomic      zeta 6: z - 1          z^5 + 2*z       (header optional)
//! ℚ(q)            (q^2 + 1)/(q)          -q - q^-1       qvar
//! ```

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;

use super::field::Field;
use super::scalar::Scalar;
use crate::error::{Error, Result};

impl Scalar {
    /// Parses `input` as an element of `field`.
    pub fn parse(field: Field, input: &str) -> Result<Scalar> {
        let err = |reason: String| Error::ScalarParse {
            input: input.to_string(),
            reason,
        };
        let mut body = input.trim();
        match field {
            Field::Prime(p) => {
                if let Some(idx) = body.rfind("mod") {
                    let modulus: u64 = body[idx + 3..]
                        .trim()
                        .parse()
                        .map_err(|_| err("bad modulus".to_string()))?;
                    if modulus != p {
                        return Err(err(format!("modulus {} does not match field {}", modulus, field)));
                    }
                    body = body[..idx].trim();
                }
            }
            Field::Cyclotomic(n) => {
                if let Some(rest) = body.strip_prefix("zeta") {
                    let colon = rest
                        .find(':')
                        .ok_or_else(|| err("missing ':' after zeta n".to_string()))?;
                    let order: u32 = rest[..colon]
                        .trim()
                        .parse()
                        .map_err(|_| err("bad cyclotomic order".to_string()))?;
                    if order != n {
                        return Err(err(format!("order {} does not match field {}", order, field)));
                    }
                    body = rest[colon + 1..].trim();
                }
            }
            _ => {}
        }
        let mut parser = ExprParser {
            src: body.as_bytes(),
            pos: 0,
            field,
        };
        let value = parser
            .expr()
            .map_err(|(at, msg)| err(format!("{} at offset {}", msg, at)))?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(err(format!("unexpected trailing input at offset {}", parser.pos)));
        }
        Ok(value)
    }
}

type PResult<T> = core::result::Result<T, (usize, String)>;

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    field: Field,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn fail<T>(&self, msg: &str) -> PResult<T> {
        Err((self.pos, msg.to_string()))
    }

    fn expr(&mut self) -> PResult<Scalar> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Scalar> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    acc = acc.try_div(&d).map_err(|_| (at, "division by zero".to_string()))?;
                }
                // Juxtaposition, as in `2q` or `3(z + 1)`.
                Some(c) if c.is_ascii_alphabetic() || c == b'(' => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> PResult<Scalar> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let at = self.pos;
        let e = self.integer()?;
        let e: i64 = i64::try_from(e).map_err(|_| (at, "exponent too large".to_string()))?;
        base.pow(if neg { -e } else { e })
            .map_err(|_| (at, "zero to a negative power".to_string()))
    }

    fn integer(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected integer");
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> PResult<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Scalar::from_bigint(self.field, &n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let ident = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match (ident, self.field) {
                    ("q" | "qvar", Field::RationalFunction) => Ok(Scalar::q_var()),
                    ("z" | "zeta", Field::Cyclotomic(n)) => Ok(Scalar::zeta(n, 1)),
                    _ => Err((start, format!("unknown symbol {:?} in field {}", ident, self.field))),
                }
            }
            _ => self.fail("expected a number, symbol or '('"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn canonical_forms_round_trip() {
        let cases = [
            (Field::Rational, "-7/4"),
            (Field::Prime(5), "3 mod 5"),
            (Field::Cyclotomic(6), "zeta 6: z - 1"),
            (Field::RationalFunction, "(q^2 + 1)/(q)"),
            (Field::RationalFunction, "-q - 2"),
        ];
        for (field, text) in cases {
            let x = Scalar::parse(field, text).unwrap();
            assert_eq!(x.to_string(), text);
        }
    }

    #[test]
    fn expressions() {
        let q = Scalar::q_var();
        let x = Scalar::parse(Field::RationalFunction, "-q - q^-1").unwrap();
        assert_eq!(x, Scalar::loop_value(&q).unwrap());
        let y = Scalar::parse(Field::Prime(7), "2/3").unwrap();
        assert_eq!(
            &y * &Scalar::from_int(Field::Prime(7), 3),
            Scalar::from_int(Field::Prime(7), 2)
        );
        let z = Scalar::parse(Field::Cyclotomic(4), "z^2").unwrap();
        assert_eq!(z, Scalar::from_int(Field::Cyclotomic(4), -1));
        assert_eq!(Scalar::parse(Field::RationalFunction, "2q").unwrap(), &q + &q);
    }

    #[test]
    fn errors() {
        assert!(Scalar::parse(Field::Rational, "q").is_err());
        assert!(Scalar::parse(Field::Prime(5), "1 mod 7").is_err());
        assert!(Scalar::parse(Field::Rational, "1/0").is_err());
        assert!(Scalar::parse(Field::Rational, "1 +").is_err());
        assert!(Scalar::parse(Field::Cyclotomic(5), "zeta 6: z").is_err());
    }
}
