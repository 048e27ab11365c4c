use alloc::format;
use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// The exact base fields supported throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// ℚ.
    Rational,
    /// 𝔽_p for a prime `p < 2^32`.
    Prime(u64),
    /// ℚ(ζ_n), elements stored as residues modulo the n-th cyclotomic polynomial.
    Cyclotomic(u32),
    /// ℚ(q), the field of rational functions in a formal variable `q`.
    RationalFunction,
}

impl Field {
    /// 𝔽_p, checking that `p` is a prime below `2^32`.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{} is not a prime below 2^32", p)));
        }
        Ok(Field::Prime(p))
    }

    pub fn cyclotomic(n: u32) -> Result<Field> {
        if n == 0 {
            return Err(Error::InvalidField("cyclotomic order must be positive".to_string()));
        }
        Ok(Field::Cyclotomic(n))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("rational"),
            Field::Prime(p) => write!(f, "fp:{}", p),
            Field::Cyclotomic(n) => write!(f, "cyclotomic:{}", n),
            Field::RationalFunction => f.write_str("qvar"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        match s {
            "rational" | "Q" | "q" => return Ok(Field::Rational),
            "qvar" | "ratfunc" | "Q(q)" => return Ok(Field::RationalFunction),
            _ => {}
        }
        let bad = || Error::InvalidField(format!("unknown field selector {:?}", s));
        if let Some(p) = s.strip_prefix("fp:") {
            return Field::prime(p.trim().parse().map_err(|_| bad())?);
        }
        if let Some(n) = s.strip_prefix("cyclotomic:") {
            return Field::cyclotomic(n.trim().parse().map_err(|_| bad())?);
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors_round_trip() {
        for f in [
            Field::Rational,
            Field::Prime(7),
            Field::Cyclotomic(12),
            Field::RationalFunction,
        ] {
            assert_eq!(f.to_string().parse::<Field>().unwrap(), f);
        }
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(9).is_err());
        assert!("fp:15".parse::<Field>().is_err());
        assert!("cyclotomic:0".parse::<Field>().is_err());
    }
}
