//! Chebyshev-type polynomials and quantum integers.
//!
//! `P_n` is defined by `P_n(2cos x) = sin((n+1)x)/sin x` and satisfies
//! `P_0 = 1`, `P_1 = x`, `P_{n+1} = x P_n - P_{n-1}`. `Q_l` is defined by
//! `Q_l(2cos x) = 2cos(lx)`. Both are kept with integer coefficients and only
//! specialized to a field on evaluation.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Scalar};

/// A polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: i64) -> Self {
        Self::from_i64(&[c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `x · self`.
    fn shift(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(BigInt::zero());
        c.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: c }
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::default(), |acc, c| {
            acc.mul(inner).add(&Self::new(vec![c.clone()]))
        })
    }

    /// Horner evaluation at a scalar; integer coefficients are embedded in
    /// the scalar's field.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(x.zero_like(), |acc, c| &(&acc * x) + &embed(x, c))
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_at_matrix(&self, a: &Matrix) -> Result<Matrix> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch("polynomial at a non-square matrix".into()));
        }
        let n = a.rows();
        let field = a.field();
        let mut acc = Matrix::zeros(field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?;
            if !c.is_zero() {
                acc = acc.add(&Matrix::scalar(&Scalar::from_bigint(field, c), n))?;
            }
        }
        Ok(acc)
    }
}

fn embed(like: &Scalar, c: &BigInt) -> Scalar {
    match i64::try_from(c) {
        Ok(v) => like.int_like(v),
        Err(_) => Scalar::from_bigint(like.field(), c),
    }
}

impl fmt::Display for IntPoly {
    /// Human-readable form, e.g. `x^5 - 4x^3 + 3x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if k == 0 || !abs.is_one() {
                write!(f, "{}", abs)?;
            }
            if k >= 1 {
                f.write_str("x")?;
            }
            if k >= 2 {
                write!(f, "^{}", k)?;
            }
        }
        Ok(())
    }
}

/// `P_0, ..., P_n` by the three-term recurrence.
pub fn cheb_p_table(n: usize) -> Vec<IntPoly> {
    let mut out = vec![IntPoly::constant(1)];
    if n >= 1 {
        out.push(IntPoly::x());
    }
    for k in 1..n {
        let next = out[k].shift().sub(&out[k - 1]);
        out.push(next);
    }
    out
}

/// `P_n`.
pub fn cheb_p(n: usize) -> IntPoly {
    cheb_p_table(n).pop().expect("table is nonempty")
}

/// `Q_l`: `Q_0 = 2`, `Q_1 = x`, `Q_l = P_l - P_{l-2}` for `l >= 2`.
pub fn cheb_q(l: usize) -> IntPoly {
    match l {
        0 => IntPoly::constant(2),
        1 => IntPoly::x(),
        _ => {
            let t = cheb_p_table(l);
            t[l].sub(&t[l - 2])
        }
    }
}

/// `P_n(a)` at a square matrix.
pub fn eval_at_matrix(p: &IntPoly, a: &Matrix) -> Result<Matrix> {
    p.eval_at_matrix(a)
}

/// The quantum integer `[n]_q = P_{n-1}(q + q^{-1})`.
///
/// This avoids dividing by `q - q^{-1}`, so it is defined at `q = ±1` too.
pub fn quantum_integer(n: usize, q: &Scalar) -> Result<Scalar> {
    if n == 0 {
        return Ok(q.zero_like());
    }
    let t = q + &q.inv()?;
    Ok(cheb_p(n - 1).eval(&t))
}

/// Whether `P_{l-1}(x) · P_n(Q_l(x)) = P_{ln+l-1}(x)` holds as an identity of
/// integer polynomials.
pub fn composition_identity_check(l: usize, n: usize) -> bool {
    assert!(l >= 1, "l must be positive");
    let top = l * n + l - 1;
    let table = cheb_p_table(top.max(l).max(n));
    let lhs = table[l - 1].mul(&table[n].compose(&cheb_q(l)));
    lhs == table[top]
}

/// The sequence `P_0(A), P_1(A), ..., P_m(A)` via the matrix recurrence.
pub fn cheb_p_matrix_sequence(a: &Matrix, m: usize) -> Result<Vec<Matrix>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("non-square matrix".into()));
    }
    let n = a.rows();
    let mut out = vec![Matrix::identity(a.field(), n)];
    if m >= 1 {
        out.push(a.clone());
    }
    for k in 1..m {
        let next = a.mul(&out[k])?.sub(&out[k - 1])?;
        out.push(next);
    }
    Ok(out)
}

/// Smallest `m` in `1..=bound` with `P_m(A) = 0`, if any.
pub fn first_vanishing_index(a: &Matrix, bound: usize) -> Result<Option<usize>> {
    let n = a.rows();
    let mut prev = Matrix::identity(a.field(), n);
    let mut cur = a.clone();
    for m in 1..=bound {
        if cur.is_zero() {
            return Ok(Some(m));
        }
        let next = a.mul(&cur)?.sub(&prev)?;
        prev = core::mem::replace(&mut cur, next);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Field;
    use alloc::string::ToString;

    #[test]
    fn p_examples() {
        assert_eq!(cheb_p(0), IntPoly::constant(1));
        assert_eq!(cheb_p(2), IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(cheb_p(5), IntPoly::from_i64(&[0, 3, 0, -4, 0, 1]));
        assert_eq!(cheb_p(5).to_string(), "x^5 - 4x^3 + 3x");
        for n in 0..20 {
            assert_eq!(cheb_p(n).degree(), Some(n));
        }
    }

    #[test]
    fn q_examples() {
        assert_eq!(cheb_q(1), IntPoly::x());
        assert_eq!(cheb_q(2), IntPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(cheb_q(3), IntPoly::from_i64(&[0, -3, 0, 1]));
        assert_eq!(cheb_q(2).to_string(), "x^2 - 2");
    }

    #[test]
    fn q_satisfies_its_own_recurrence() {
        // Q_{l+1} = x Q_l - Q_{l-1}, independent of the P-difference formula.
        let mut prev = IntPoly::constant(2);
        let mut cur = IntPoly::x();
        for l in 1..20 {
            assert_eq!(cheb_q(l), cur);
            let next = cur.shift().sub(&prev);
            prev = core::mem::replace(&mut cur, next);
        }
    }

    #[test]
    fn matrix_evaluation_examples() {
        let f = Field::Rational;
        let a2 = Matrix::from_ints(f, &[[0, 1], [1, 0]]);
        assert_eq!(eval_at_matrix(&cheb_p(1), &a2).unwrap(), a2);
        assert!(eval_at_matrix(&cheb_p(2), &a2).unwrap().is_zero());
        let d = Matrix::from_ints(f, &[[0, 2], [2, 0]]);
        assert_eq!(
            eval_at_matrix(&cheb_p(2), &d).unwrap(),
            Matrix::from_ints(f, &[[3, 0], [0, 3]])
        );
    }

    #[test]
    fn quantum_integer_examples() {
        let q = Scalar::q_var();
        assert!(quantum_integer(1, &q).unwrap().is_one());
        assert_eq!(quantum_integer(2, &q).unwrap(), &q + &q.inv().unwrap());
        let z6 = Scalar::zeta(6, 1);
        assert!(quantum_integer(3, &z6).unwrap().is_zero());
        // at q = ±1 the quantum integer is ±n
        let one = Scalar::one(Field::Rational);
        assert_eq!(quantum_integer(4, &one).unwrap(), Scalar::from_int(Field::Rational, 4));
        assert_eq!(
            quantum_integer(4, &-one).unwrap(),
            Scalar::from_int(Field::Rational, -4)
        );
    }

    #[test]
    fn composition_identity_examples() {
        assert!(composition_identity_check(1, 5));
        assert!(composition_identity_check(2, 1));
        assert!(composition_identity_check(3, 2));
        // P_1(x)·P_1(x^2 - 2) = x^3 - 2x = P_3
        assert_eq!(
            cheb_p(1).mul(&cheb_p(1).compose(&cheb_q(2))),
            IntPoly::from_i64(&[0, -2, 0, 1])
        );
    }
}
