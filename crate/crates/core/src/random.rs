//! Seeded random scalars and nondegenerate forms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{Field, Matrix, QPoly, Scalar};

/// The generator used everywhere a seed is accepted.
pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random element with small integer coordinates in `-bound..=bound`.
///
/// Cyclotomic elements get a random residue polynomial; rational functions
/// get a random polynomial of degree at most 1 in `q`.
pub fn random_scalar<R: Rng>(field: Field, rng: &mut R, bound: i64) -> Scalar {
    let mut coord = || rng.random_range(-bound..=bound);
    match field {
        Field::Rational | Field::Prime(_) => Scalar::from_int(field, coord()),
        Field::Cyclotomic(n) => {
            let k = crate::exactnum::qpoly::cyclotomic_polynomial(n)
                .degree()
                .unwrap_or(1)
                .max(1);
            let coeffs: Vec<i64> = (0..k).map(|_| coord()).collect();
            Scalar::cyclotomic(n, &QPoly::from_ints(&coeffs))
        }
        Field::RationalFunction => {
            let c = [coord(), coord()];
            Scalar::rational_function(QPoly::from_ints(&c), QPoly::one()).expect("denominator is one")
        }
    }
}

/// A random nonzero scalar by rejection.
pub fn random_nonzero<R: Rng>(field: Field, rng: &mut R, bound: i64) -> Scalar {
    loop {
        let x = random_scalar(field, rng, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random invertible `n × n` matrix by rejection sampling over small
/// integer entries.
pub fn random_nondegenerate<R: Rng>(field: Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let data: Vec<Scalar> = (0..n * n).map(|_| random_scalar(field, rng, 3)).collect();
        let m = Matrix::new(field, n, n, data).expect("shape is n×n");
        if m.rank() == n {
            return m;
        }
    }
}

/// Independent random nondegenerate forms `E_ij` for every ordered pair with
/// `dims[i][j] > 0`. `dims` must be symmetric.
pub fn random_forms<R: Rng>(field: Field, dims: &[Vec<usize>], rng: &mut R) -> BTreeMap<(usize, usize), Matrix> {
    let mut out = BTreeMap::new();
    for (i, row) in dims.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            if d > 0 {
                out.insert((i, j), random_nondegenerate(field, d, rng));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_under_seed() {
        let a = random_nondegenerate(Field::Prime(5), 3, &mut seeded(7));
        let b = random_nondegenerate(Field::Prime(5), 3, &mut seeded(7));
        assert_eq!(a, b);
        assert_eq!(a.rank(), 3);
    }

    #[test]
    fn nondegenerate_over_f2() {
        let mut rng = seeded(1);
        for n in 1..4 {
            assert_eq!(random_nondegenerate(Field::Prime(2), n, &mut rng).rank(), n);
        }
    }
}
