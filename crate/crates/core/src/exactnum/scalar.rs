use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::field::Field;
use super::qpoly::{cyclotomic_polynomial, QPoly};
use crate::error::{Error, Result};

/// An element of 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(value: u64, p: u64) -> Fp {
        Fp { value: value % p, p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self.value;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Fp { value: acc, p: self.p }
    }
}

/// An element of ℚ(ζ_n): a rational polynomial in `z` reduced modulo `Φ_n(z)`.
#[derive(Clone, Debug)]
pub struct Cyclo {
    n: u32,
    modulus: Arc<QPoly>,
    residue: QPoly,
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.residue == other.residue
    }
}

impl Eq for Cyclo {}

impl Cyclo {
    fn with_modulus(n: u32, modulus: Arc<QPoly>, poly: &QPoly) -> Cyclo {
        let residue = poly.rem(&modulus);
        Cyclo { n, modulus, residue }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn residue(&self) -> &QPoly {
        &self.residue
    }

    fn map(&self, residue: QPoly) -> Cyclo {
        Cyclo::with_modulus(self.n, self.modulus.clone(), &residue)
    }
}

/// A reduced rational function `num/den` in ℚ(q) with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { num, den: QPoly::one() });
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.divrem(&g).0, den.divrem(&g).0)
            }
        };
        let lead = den.leading().cloned().unwrap_or_else(BigRational::one);
        if lead.is_one() {
            Ok(RatFunc { num, den })
        } else {
            let inv = lead.recip();
            Ok(RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            })
        }
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    fn add(&self, other: &Self) -> RatFunc {
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone()).expect("nonzero den");
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero den")
    }

    fn mul(&self, other: &Self) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero den")
    }
}

/// An exact field element tagged with its field.
///
/// Arithmetic between scalars of different fields is an error. The checked
/// methods (`try_add`, ...) report it; the operator impls panic, and are meant
/// for code that has already validated a common field (e.g. inside [`Matrix`]).
///
/// [`Matrix`]: super::Matrix
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Prime(Fp),
    Cyclotomic(Cyclo),
    RationalFunction(RatFunc),
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_int(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: Field, c: i64) -> Scalar {
        Scalar::from_bigint(field, &BigInt::from(c))
    }

    pub fn from_bigint(field: Field, c: &BigInt) -> Scalar {
        let r = BigRational::from_integer(c.clone());
        Scalar::from_rational(field, &r).expect("integers embed in every field")
    }

    /// Embeds a rational number. Fails in 𝔽_p when `p` divides the denominator.
    pub fn from_rational(field: Field, c: &BigRational) -> Result<Scalar> {
        Ok(match field {
            Field::Rational => Scalar::Rational(c.clone()),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let num = c.numer().mod_floor(&m).to_u64().expect("reduced mod p");
                let den = c.denom().mod_floor(&m).to_u64().expect("reduced mod p");
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let den_inv = Fp::new(den, p).pow(p - 2);
                Scalar::Prime(Fp::new(num * den_inv.value % p, p))
            }
            Field::Cyclotomic(n) => {
                let modulus = Arc::new(cyclotomic_polynomial(n));
                Scalar::Cyclotomic(Cyclo::with_modulus(n, modulus, &QPoly::constant(c.clone())))
            }
            Field::RationalFunction => {
                Scalar::RationalFunction(RatFunc::new(QPoly::constant(c.clone()), QPoly::one())?)
            }
        })
    }

    /// The formal variable `q` of ℚ(q).
    pub fn q_var() -> Scalar {
        Scalar::RationalFunction(RatFunc {
            num: QPoly::monomial(1),
            den: QPoly::one(),
        })
    }

    /// `ζ_n^k` in ℚ(ζ_n).
    pub fn zeta(n: u32, k: u32) -> Scalar {
        let modulus = Arc::new(cyclotomic_polynomial(n));
        Scalar::Cyclotomic(Cyclo::with_modulus(n, modulus, &QPoly::monomial((k % n) as usize)))
    }

    /// The rational function `num/den`.
    pub fn rational_function(num: QPoly, den: QPoly) -> Result<Scalar> {
        Ok(Scalar::RationalFunction(RatFunc::new(num, den)?))
    }

    /// The element of ℚ(ζ_n) represented by `poly(ζ_n)`.
    pub fn cyclotomic(n: u32, poly: &QPoly) -> Scalar {
        let modulus = Arc::new(cyclotomic_polynomial(n));
        Scalar::Cyclotomic(Cyclo::with_modulus(n, modulus, poly))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime(x) => Field::Prime(x.p),
            Scalar::Cyclotomic(x) => Field::Cyclotomic(x.n),
            Scalar::RationalFunction(_) => Field::RationalFunction,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Prime(x) => x.value == 0,
            Scalar::Cyclotomic(x) => x.residue.is_zero(),
            Scalar::RationalFunction(x) => x.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_one(),
            Scalar::Prime(x) => x.value == 1 % x.p,
            Scalar::Cyclotomic(x) => x.residue.is_one(),
            Scalar::RationalFunction(x) => x.num.is_one() && x.den.is_one(),
        }
    }

    /// Zero of the same field.
    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Cyclotomic(x) => Scalar::Cyclotomic(x.map(QPoly::zero())),
            _ => Scalar::zero(self.field()),
        }
    }

    /// One of the same field.
    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Cyclotomic(x) => Scalar::Cyclotomic(x.map(QPoly::one())),
            _ => Scalar::one(self.field()),
        }
    }

    /// Integer `c` in the same field.
    pub fn int_like(&self, c: i64) -> Scalar {
        match self {
            Scalar::Cyclotomic(x) => {
                Scalar::Cyclotomic(x.map(QPoly::constant(BigRational::from_integer(BigInt::from(c)))))
            }
            _ => Scalar::from_int(self.field(), c),
        }
    }

    /// The rational value, if this scalar lies in the prime subfield ℚ of a
    /// characteristic-zero field.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(x) => Some(x.clone()),
            Scalar::Prime(_) => None,
            Scalar::Cyclotomic(x) => match x.residue.degree() {
                None => Some(BigRational::zero()),
                Some(0) => Some(x.residue.coeff(0)),
                _ => None,
            },
            Scalar::RationalFunction(x) => {
                if x.den.is_one() {
                    match x.num.degree() {
                        None => Some(BigRational::zero()),
                        Some(0) => Some(x.num.coeff(0)),
                        _ => None,
                    }
                } else {
                    None
                }
            }
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        let (l, r) = (self.field(), other.field());
        if l == r {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: l, right: r })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(Fp::new(a.value + b.value, a.p)),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => Scalar::Cyclotomic(Cyclo {
                n: a.n,
                modulus: a.modulus.clone(),
                residue: a.residue.add(&b.residue),
            }),
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) => Scalar::RationalFunction(a.add(b)),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(Fp::new(a.value * b.value, a.p)),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => Scalar::Cyclotomic(a.map(a.residue.mul(&b.residue))),
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) => Scalar::RationalFunction(a.mul(b)),
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime(a) => Scalar::Prime(Fp::new(a.p - a.value, a.p)),
            Scalar::Cyclotomic(a) => Scalar::Cyclotomic(Cyclo {
                n: a.n,
                modulus: a.modulus.clone(),
                residue: a.residue.neg(),
            }),
            Scalar::RationalFunction(a) => Scalar::RationalFunction(RatFunc {
                num: a.num.neg(),
                den: a.den.clone(),
            }),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Prime(a) => Scalar::Prime(a.pow(a.p - 2)),
            Scalar::Cyclotomic(a) => {
                // Φ_n is irreducible, so any nonzero residue is coprime to it.
                let (g, s, _) = a.residue.ext_gcd(&a.modulus);
                debug_assert!(g.is_one());
                Scalar::Cyclotomic(a.map(s))
            }
            Scalar::RationalFunction(a) => Scalar::RationalFunction(RatFunc::new(a.den.clone(), a.num.clone())?),
        })
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `-q - q^{-1}`, the loop value attached to `q`.
    pub fn loop_value(q: &Scalar) -> Result<Scalar> {
        Ok((q + &q.inv()?).neg_ref())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar {}: {}", stringify!($method), e),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// Canonical serialization: `p/q` for rationals, `c mod p` for 𝔽_p,
/// `zeta n: <poly in z>` for cyclotomics and polynomial fractions in `q`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => write!(f, "{}", x),
            Scalar::Prime(x) => write!(f, "{} mod {}", x.value, x.p),
            Scalar::Cyclotomic(x) => {
                write!(f, "zeta {}: ", x.n)?;
                x.residue.fmt_var(f, "z")
            }
            Scalar::RationalFunction(x) => {
                if x.den.is_one() {
                    x.num.fmt_var(f, "q")
                } else {
                    f.write_str("(")?;
                    x.num.fmt_var(f, "q")?;
                    f.write_str(")/(")?;
                    x.den.fmt_var(f, "q")?;
                    f.write_str(")")
                }
            }
        }
    }
}

/// Sum of a sequence of scalars, starting from `zero`.
pub fn sum<'a>(zero: Scalar, items: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    items.into_iter().fold(zero, |acc, x| acc + x)
}

/// All coefficients of `v` scaled to a common denominator, as integers.
pub(crate) fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(7);
        for c in 1..7 {
            let x = Scalar::from_int(f, c);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn zeta_six_has_trace_one() {
        let z = Scalar::zeta(6, 1);
        let s = &z + &z.inv().unwrap();
        assert!(s.is_one());
        assert!(z.pow(6).unwrap().is_one());
    }

    #[test]
    fn rational_function_reduces() {
        let q = Scalar::q_var();
        let a = (&(&q * &q) - &q.one_like()) / (&q - &q.one_like());
        assert_eq!(a, &q + &q.one_like());
        assert_eq!(a.to_string(), "q + 1");
        let b = q.inv().unwrap();
        assert_eq!(b.to_string(), "(1)/(q)");
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Scalar::one(Field::Rational);
        let b = Scalar::one(Field::Prime(5));
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn fraction_into_prime_field() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let x = Scalar::from_rational(Field::Prime(5), &half).unwrap();
        assert_eq!(x, Scalar::from_int(Field::Prime(5), 3));
        let fifth = BigRational::new(BigInt::from(1), BigInt::from(5));
        assert!(Scalar::from_rational(Field::Prime(5), &fifth).is_err());
    }

    #[test]
    fn clear_denominators_scales() {
        let v = vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(2), BigInt::from(3)),
        ];
        assert_eq!(clear_denominators(&v), vec![BigInt::from(3), BigInt::from(4)]);
    }
}
