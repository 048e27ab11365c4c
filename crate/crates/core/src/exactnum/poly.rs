use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;
use super::matrix::Matrix;
use super::scalar::{clear_denominators, Scalar};
use crate::error::{Error, Result};

/// A univariate polynomial with scalar coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Result<Poly> {
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Ok(Poly { field, coeffs })
    }

    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::new(c.field(), vec![c.clone()]).expect("single field")
    }

    /// `x - r`.
    pub fn linear_root(r: &Scalar) -> Poly {
        Poly::new(r.field(), vec![-r, r.one_like()]).expect("single field")
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| Scalar::from_int(field, c)).collect()).expect("single field")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect()).expect("single field")
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect()).expect("single field")
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![Scalar::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, out).expect("single field")
    }

    /// Euclidean division by a nonzero polynomial.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let lead_inv = divisor.leading().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![Scalar::zero(self.field); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(self.field, quot)?, Poly::new(self.field, rem)?))
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(self.field), |acc, c| &(&acc * x) + c)
    }

    /// Horner evaluation at a square matrix; the constant term contributes `c·I`.
    pub fn eval_matrix(&self, m: &Matrix) -> Result<Matrix> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch("polynomial at a non-square matrix".into()));
        }
        let n = m.rows();
        let mut acc = Matrix::zeros(m.field(), n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&Matrix::scalar(c, n))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c)?,
                _ => {
                    if !c.is_one() {
                        write!(f, "({})*", c)?;
                    }
                    f.write_str("x")?;
                    if k > 1 {
                        write!(f, "^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Matrix {
    /// The characteristic polynomial `det(xI - M)` by the Berkowitz algorithm,
    /// which uses no division and so works over every field.
    pub fn char_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "characteristic polynomial of a non-square matrix".into(),
            ));
        }
        let field = self.field();
        let n = self.rows();
        let zero = Scalar::zero(field);
        // Coefficients highest degree first, built from the trailing principal
        // submatrices upward.
        let mut cp = vec![Scalar::one(field)];
        for k in (0..n).rev() {
            let size = n - k;
            let a = self.get(k, k).clone();
            let rest: Vec<usize> = (k + 1..n).collect();
            let row = self.submatrix(&[k], &rest);
            let col = self.submatrix(&rest, &[k]);
            let sub = self.submatrix(&rest, &rest);
            // Toeplitz column: 1, -a, -R C, -R S C, -R S^2 C, ...
            let mut t = Vec::with_capacity(size + 1);
            t.push(Scalar::one(field));
            t.push(-a);
            let mut v = col;
            for _ in 0..size.saturating_sub(1) {
                let rc = row.mul(&v)?;
                t.push(-rc.get(0, 0));
                v = sub.mul(&v)?;
            }
            let mut next = vec![zero.clone(); size + 1];
            for (i, out) in next.iter_mut().enumerate() {
                for (j, c) in cp.iter().enumerate() {
                    if i >= j {
                        *out = &*out + &(&t[i - j] * c);
                    }
                }
            }
            cp = next;
        }
        cp.reverse();
        Poly::new(field, cp)
    }
}

/// Roots found in the base field together with the unresolved cofactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPeeling {
    /// Distinct roots with multiplicities, in enumeration order.
    pub roots: Vec<(Scalar, usize)>,
    /// What is left after dividing out all found linear factors. Over ℚ and
    /// 𝔽_p this has no roots in the base field.
    pub residual: Poly,
}

/// Distinct roots of `p` in its base field.
pub fn rational_roots(p: &Poly) -> Vec<Scalar> {
    peel_roots(p).roots.into_iter().map(|(r, _)| r).collect()
}

/// Divides out linear factors `x - r` for every base-field root `r` found.
///
/// Over 𝔽_p every element is tried; over ℚ candidates come from the rational
/// root theorem, so the search is complete. Over ℚ(ζ_n) and ℚ(q) only a
/// fixed candidate set (small integers, roots of unity, powers of `q`) is
/// tried and any linear cofactor is solved directly.
pub fn peel_roots(p: &Poly) -> RootPeeling {
    assert!(!p.is_zero(), "peel_roots of the zero polynomial");
    let field = p.field();
    let candidates: Vec<Scalar> = match field {
        Field::Prime(q) => (0..q).map(|c| Scalar::from_int(field, c as i64)).collect(),
        Field::Rational => rational_candidates(p),
        Field::Cyclotomic(n) => {
            let mut c = small_candidates(field);
            for k in 0..n {
                let z = Scalar::zeta(n, k);
                c.push(-&z);
                c.push(z);
            }
            c
        }
        Field::RationalFunction => {
            let mut c = small_candidates(field);
            let deg = p.degree().unwrap_or(0) as i64 + 2;
            let q = Scalar::q_var();
            for k in 1..=deg {
                for e in [k, -k] {
                    let qk = q.pow(e).expect("q is nonzero");
                    c.push(-&qk);
                    c.push(qk.clone());
                    c.push(-(&qk + &qk));
                    c.push(&qk + &qk);
                }
            }
            c
        }
    };
    let mut residual = p.clone();
    let mut roots: Vec<(Scalar, usize)> = Vec::new();
    let try_root = |r: &Scalar, residual: &mut Poly, roots: &mut Vec<(Scalar, usize)>| {
        let mut mult = 0;
        while residual.degree().unwrap_or(0) > 0 && residual.eval(r).is_zero() {
            let (quot, rem) = residual.divrem(&Poly::linear_root(r)).expect("monic divisor");
            debug_assert!(rem.is_zero());
            *residual = quot;
            mult += 1;
        }
        if mult > 0 {
            match roots.iter_mut().find(|(x, _)| x == r) {
                Some(entry) => entry.1 += mult,
                None => roots.push((r.clone(), mult)),
            }
        }
    };
    for r in &candidates {
        if residual.degree().unwrap_or(0) == 0 {
            break;
        }
        try_root(r, &mut residual, &mut roots);
    }
    if residual.degree() == Some(1) {
        let c = residual.coeffs();
        let r = -(&c[0] / &c[1]);
        try_root(&r, &mut residual, &mut roots);
    }
    RootPeeling { roots, residual }
}

fn small_candidates(field: Field) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(field)];
    for k in 1..=4 {
        out.push(Scalar::from_int(field, k));
        out.push(Scalar::from_int(field, -k));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for h in [half.clone(), -half] {
        out.push(Scalar::from_rational(field, &h).expect("characteristic zero"));
    }
    out
}

/// Candidates `±a/b` with `a | c_low` and `b | c_lead`, largest first, plus 0.
fn rational_candidates(p: &Poly) -> Vec<Scalar> {
    let rat: Vec<BigRational> = p
        .coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Rational(v) => v.clone(),
            _ => unreachable!(),
        })
        .collect();
    let ints = clear_denominators(&rat);
    let mut out = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
    if low > 0 {
        out.push(BigRational::zero());
    }
    let a0 = ints[low].abs();
    let an = ints.last().expect("nonzero").abs();
    let mut cands: Vec<BigRational> = Vec::new();
    for a in divisors(&a0) {
        for b in divisors(&an) {
            let r = BigRational::new(a.clone(), b);
            if !cands.contains(&r) {
                cands.push(r);
            }
        }
    }
    cands.sort_by(|x, y| y.cmp(x));
    for r in cands {
        out.push(r.clone());
        out.push(-r);
    }
    out.into_iter().map(Scalar::Rational).collect()
}

/// Positive divisors of a positive integer by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    // Trial division runs over u64; coefficients this large never arise from
    // desk-scale matrices.
    let n = n.to_u64().expect("coefficient too large for rational root search");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn char_poly_examples() {
        let c = Matrix::from_ints(q(), &[[5]]);
        assert_eq!(c.char_poly().unwrap(), Poly::from_ints(q(), &[-5, 1]));
        let a2 = Matrix::from_ints(q(), &[[0, 1], [1, 0]]);
        assert_eq!(a2.char_poly().unwrap(), Poly::from_ints(q(), &[-1, 0, 1]));
        let d = Matrix::from_ints(q(), &[[0, 2], [2, 0]]);
        assert_eq!(d.char_poly().unwrap(), Poly::from_ints(q(), &[-4, 0, 1]));
    }

    #[test]
    fn cayley_hamilton_3x3() {
        let m = Matrix::from_ints(q(), &[[1, 2, 0], [-1, 3, 4], [2, 0, -2]]);
        let cp = m.char_poly().unwrap();
        assert!(cp.is_monic());
        assert_eq!(cp.degree(), Some(3));
        assert!(cp.eval_matrix(&m).unwrap().is_zero());
    }

    #[test]
    fn root_examples() {
        let r = rational_roots(&Poly::from_ints(q(), &[-1, 0, 1]));
        assert_eq!(r, vec![Scalar::from_int(q(), 1), Scalar::from_int(q(), -1)]);
        let r4 = rational_roots(&Poly::from_ints(q(), &[-4, 0, 1]));
        assert_eq!(r4, vec![Scalar::from_int(q(), 2), Scalar::from_int(q(), -2)]);
        assert!(rational_roots(&Poly::from_ints(q(), &[1, 0, 1])).is_empty());
        // 6x^2 - 5x + 1 = (2x - 1)(3x - 1)
        let r = rational_roots(&Poly::from_ints(q(), &[1, -5, 6]));
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn roots_in_prime_field_and_cyclotomic() {
        let f = Field::Prime(5);
        // x^2 + 1 = (x - 2)(x - 3) over F_5
        let r = rational_roots(&Poly::from_ints(f, &[1, 0, 1]));
        assert_eq!(r, vec![Scalar::from_int(f, 2), Scalar::from_int(f, 3)]);
        let c = Field::Cyclotomic(3);
        let r = rational_roots(&Poly::from_ints(c, &[1, 1, 1]));
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn multiplicity_and_residual() {
        // (x - 1)^2 (x^2 + 1)
        let p = Poly::from_ints(q(), &[1, -2, 2, -2, 1]);
        let peel = peel_roots(&p);
        assert_eq!(peel.roots, vec![(Scalar::from_int(q(), 1), 2)]);
        assert_eq!(peel.residual, Poly::from_ints(q(), &[1, 0, 1]));
    }
}
