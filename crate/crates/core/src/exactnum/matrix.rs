use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::Field;
use super::scalar::{clear_denominators, Scalar};
use crate::error::{Error, Result};

/// A dense matrix of scalars from a single field, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(bad) = data.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch {
                left: field,
                right: bad.field(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Integer entries embedded in `field`.
    pub fn from_ints<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Matrix {
        let zero = Scalar::zero(field);
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        assert!(rows.iter().all(|row| row.as_ref().len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.as_ref().iter().map(|&x| zero.int_like(x)))
            .collect();
        Matrix {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        let one = Scalar::one(field);
        for i in 0..n {
            m.data[i * n + i] = one.clone();
        }
        m
    }

    /// `c` times the identity.
    pub fn scalar(c: &Scalar, n: usize) -> Matrix {
        let mut m = Matrix::zeros(c.field(), n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "field mismatch in Matrix::set");
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Matrix> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: c.field(),
            });
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).fold(Scalar::zero(self.field), |acc, i| acc + self.get(i, i)))
    }

    /// The submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let data = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        Matrix {
            field: self.field,
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Rows of a rational matrix scaled to primitive integer rows.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row: Vec<BigRational> = self
                    .row(r)
                    .iter()
                    .map(|x| match x {
                        Scalar::Rational(v) => v.clone(),
                        _ => unreachable!("integer_rows on a non-rational matrix"),
                    })
                    .collect();
                clear_denominators(&row)
            })
            .collect()
    }

    /// Rank by exact elimination: fraction-free (Bareiss) over ℚ, Gaussian
    /// elimination over the other fields.
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rational => bareiss_echelon(self.integer_rows(), self.cols).rank,
            _ => self.echelon().1.len(),
        }
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one(self.field));
        }
        if self.field == Field::Rational {
            let mut scale = BigRational::one();
            for r in 0..n {
                let row: Vec<BigRational> = self
                    .row(r)
                    .iter()
                    .map(|x| match x {
                        Scalar::Rational(v) => v.clone(),
                        _ => unreachable!(),
                    })
                    .collect();
                let ints = clear_denominators(&row);
                // ints = row * lcm, recover lcm from any nonzero entry
                if let Some((i, v)) = row.iter().enumerate().find(|(_, v)| !v.is_zero()) {
                    scale *= BigRational::from_integer(ints[i].clone()) / v;
                } else {
                    return Ok(Scalar::zero(Field::Rational));
                }
            }
            let e = bareiss_echelon(self.integer_rows(), n);
            if e.rank < n {
                return Ok(Scalar::zero(Field::Rational));
            }
            let det = BigRational::from_integer(e.last_pivot) / scale;
            return Ok(Scalar::Rational(if e.swaps % 2 == 1 { -det } else { det }));
        }
        let mut a = self.clone();
        let mut det = Scalar::one(self.field);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return Ok(Scalar::zero(self.field));
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pivot = a.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for r in c + 1..n {
                let f = a.get(r, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(r, j) - &(&f * a.get(c, j));
                    a.data[r * n + j] = v;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn echelon(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = a.get(r, j) * &inv;
                a.data[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = a.get(i, j) - &(&f * a.get(r, j));
                    a.data[i * self.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        let one = Scalar::one(self.field);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = one.clone();
        }
        let (red, pivots) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(red.submatrix(&rows, &cols))
    }

    /// A basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (red, pivots) = self.echelon();
        let zero = Scalar::zero(self.field);
        let one = Scalar::one(self.field);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![zero.clone(); self.cols];
            v[free] = one.clone();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -red.get(r, free);
            }
            basis.push(v);
        }
        basis
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(self.field), |acc, (a, b)| acc + &(a * b))
            })
            .collect())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        self.get(r, c)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", x)?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

struct BareissResult {
    rank: usize,
    swaps: usize,
    last_pivot: BigInt,
}

/// Fraction-free row echelon form over ℤ. Every intermediate entry is a minor
/// of the input, so the division by the previous pivot is exact.
fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> BareissResult {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let lead = core::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    BareissResult {
        rank: r,
        swaps,
        last_pivot: prev,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(q(), 2).rank(), 2);
        assert_eq!(Matrix::zeros(q(), 3, 4).rank(), 0);
        assert_eq!(Matrix::from_ints(q(), &[[1, 2], [2, 4]]).rank(), 1);
        assert_eq!(Matrix::from_ints(Field::Prime(2), &[[1, 1], [1, 3]]).rank(), 1);
        assert_eq!(Matrix::from_ints(Field::Prime(3), &[[1, 1], [1, 3]]).rank(), 2);
    }

    #[test]
    fn bareiss_with_skipped_columns() {
        let m = Matrix::from_ints(q(), &[[0, 2, 4, 1], [0, 1, 2, 3], [0, 3, 6, 4]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn inverse_examples() {
        let id = Matrix::identity(q(), 3);
        assert_eq!(id.inverse().unwrap(), id);
        let ones = Matrix::from_ints(q(), &[[1, 1], [1, 1]]);
        assert_eq!(ones.inverse(), Err(Error::SingularMatrix));

        let qv = Scalar::q_var();
        let f = Field::RationalFunction;
        let e = Matrix::from_rows(
            f,
            vec![
                vec![Scalar::zero(f), -qv.clone()],
                vec![Scalar::one(f), Scalar::zero(f)],
            ],
        )
        .unwrap();
        let expected = Matrix::from_rows(
            f,
            vec![
                vec![Scalar::zero(f), Scalar::one(f)],
                vec![-qv.inv().unwrap(), Scalar::zero(f)],
            ],
        )
        .unwrap();
        assert_eq!(e.inverse().unwrap(), expected);
    }

    #[test]
    fn determinant_matches_across_methods() {
        let m = Matrix::from_ints(q(), &[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]);
        assert_eq!(m.determinant().unwrap(), Scalar::from_int(q(), 4));
        let frac = m.scale(&Scalar::parse(q(), "1/2").unwrap()).unwrap();
        assert_eq!(frac.determinant().unwrap(), Scalar::parse(q(), "1/2").unwrap());
        let swapped = Matrix::from_ints(q(), &[[0, 1], [1, 0]]);
        assert_eq!(swapped.determinant().unwrap(), Scalar::from_int(q(), -1));
        let p = Matrix::from_ints(Field::Prime(5), &[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]);
        assert_eq!(p.determinant().unwrap(), Scalar::from_int(Field::Prime(5), 4));
    }

    #[test]
    fn nullspace_is_kernel() {
        let m = Matrix::from_ints(q(), &[[1, 2, 3], [2, 4, 6]]);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.apply(&v).unwrap().iter().all(Scalar::is_zero));
        }
    }
}
