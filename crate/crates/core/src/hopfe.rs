//! The universal Hopf algebras `H(E)`.
//!
//! `H(E)` is generated by the entries `a_{αβ}` of an `n × n` matrix `a`
//! subject to `E⁻¹aᵗEa = I` and `aE⁻¹aᵗE = I`. Computations happen in the
//! free algebra truncated at a word length `N`, with columns ordered longest
//! word first, so that echelon pivots sit on top-degree words and the
//! filtration pieces can be read off from pivot positions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exactnum::sparse::{Echelon, SparseVec};
use crate::exactnum::{Field, Matrix, Scalar};
use crate::Budget;

/// A noncommutative polynomial in the letters `a_{αβ}`, letter `α n + β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPoly {
    field: Field,
    n: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl NcPoly {
    pub fn zero(field: Field, n: usize) -> Self {
        NcPoly {
            field,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, n: usize) -> Self {
        Self::zero(c.field(), n).plus_term(Vec::new(), c)
    }

    /// The generator `a_{αβ}` (0-based).
    pub fn generator(field: Field, n: usize, alpha: usize, beta: usize) -> Self {
        Self::zero(field, n).plus_term(alloc::vec![alpha * n + beta], Scalar::one(field))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    fn plus_term(mut self, word: Vec<usize>, c: Scalar) -> Self {
        if c.is_zero() {
            return self;
        }
        let slot = self
            .terms
            .entry(word.clone())
            .or_insert_with(|| Scalar::zero(self.field));
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
        self
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out = out.plus_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        let mut out = Self::zero(self.field, self.n);
        for (w, x) in &self.terms {
            out = out.plus_term(w.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.scale(&Scalar::from_int(self.field, -1)))
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = Self::zero(self.field, self.n);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out = out.plus_term(w, c1 * c2);
            }
        }
        out
    }

    fn letter_name(&self, l: usize) -> String {
        let (a, b) = (l / self.n + 1, l % self.n + 1);
        if self.n <= 9 {
            format!("a{}{}", a, b)
        } else {
            format!("a_{}_{}", a, b)
        }
    }
}

impl fmt::Display for NcPoly {
    /// Terms by decreasing degree, e.g. `a12 a21 - [q] a11 a22 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Vec<usize>, &Scalar)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        let minus_one = Scalar::from_int(self.field, -1);
        for (k, (w, c)) in terms.into_iter().enumerate() {
            let neg = *c == minus_one;
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let word: Vec<String> = w.iter().map(|&l| self.letter_name(l)).collect();
            if w.is_empty() {
                if neg {
                    f.write_str("1")?;
                } else {
                    write!(f, "[{}]", c)?;
                }
            } else {
                if !c.is_one() && !neg {
                    write!(f, "[{}] ", c)?;
                }
                f.write_str(&word.join(" "))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfPresentation {
    e: Matrix,
    e_inv: Matrix,
    /// `(E⁻¹aᵗEa - I)_{ik}` in row-major order, then `(aE⁻¹aᵗE - I)_{ik}`.
    relations: Vec<NcPoly>,
}

/// Expands both matrix relations into `2n²` scalar relations.
pub fn h_relations(e: &Matrix) -> Result<HopfPresentation> {
    if !e.is_square() {
        return Err(Error::DimensionMismatch(format!("form is {}×{}", e.rows(), e.cols())));
    }
    let e_inv = e.inverse()?;
    let n = e.rows();
    let f = e.field();
    let word = |x: usize, y: usize| alloc::vec![x, y];
    let letter = |r: usize, c: usize| r * n + c;
    let mut relations = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for k in 0..n {
            // Σ (E⁻¹)_ij E_lm a_lj a_mk
            let mut p = NcPoly::constant(Scalar::from_int(f, -i64::from(i == k)), n);
            for j in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let c = e_inv.get(i, j) * e.get(l, m);
                        p = p.plus_term(word(letter(l, j), letter(m, k)), c);
                    }
                }
            }
            relations.push(p);
        }
    }
    for i in 0..n {
        for k in 0..n {
            // Σ (E⁻¹)_jl E_mk a_ij a_ml
            let mut p = NcPoly::constant(Scalar::from_int(f, -i64::from(i == k)), n);
            for j in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let c = e_inv.get(j, l) * e.get(m, k);
                        p = p.plus_term(word(letter(i, j), letter(m, l)), c);
                    }
                }
            }
            relations.push(p);
        }
    }
    Ok(HopfPresentation {
        e: e.clone(),
        e_inv,
        relations,
    })
}

impl HopfPresentation {
    pub fn size(&self) -> usize {
        self.e.rows()
    }

    pub fn field(&self) -> Field {
        self.e.field()
    }

    pub fn form(&self) -> &Matrix {
        &self.e
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn generator(&self, alpha: usize, beta: usize) -> NcPoly {
        NcPoly::generator(self.field(), self.size(), alpha, beta)
    }

    /// The entries of `a` as a matrix of polynomials.
    fn a(&self) -> Vec<Vec<NcPoly>> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|j| self.generator(i, j)).collect()).collect()
    }

    fn constant(&self, c: &Scalar) -> NcPoly {
        NcPoly::constant(c.clone(), self.size())
    }

    fn mat_mul(&self, x: &[Vec<NcPoly>], y: &[Vec<NcPoly>]) -> Vec<Vec<NcPoly>> {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| (0..n).fold(NcPoly::zero(self.field(), n), |acc, j| acc.add(&x[i][j].mul(&y[j][k]))))
                    .collect()
            })
            .collect()
    }

    fn lift(&self, m: &Matrix) -> Vec<Vec<NcPoly>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.constant(m.get(i, j))).collect())
            .collect()
    }

    fn transpose(x: &[Vec<NcPoly>]) -> Vec<Vec<NcPoly>> {
        let n = x.len();
        (0..n).map(|i| (0..n).map(|j| x[j][i].clone()).collect()).collect()
    }

    /// `S(a) = E⁻¹aᵗE`.
    pub fn antipode(&self) -> Vec<Vec<NcPoly>> {
        let at = Self::transpose(&self.a());
        self.mat_mul(&self.mat_mul(&self.lift(&self.e_inv), &at), &self.lift(&self.e))
    }
}

/// Words of length `0..=max_len`, numbered longest first.
struct WordSpace {
    letters: usize,
    max_len: usize,
    /// `start[len]` is the column of the first word of that length.
    start: Vec<usize>,
    total: usize,
}

impl WordSpace {
    fn new(letters: usize, max_len: usize, budget: Budget) -> Result<Self> {
        let mut sizes = Vec::with_capacity(max_len + 1);
        let mut s: usize = 1;
        for _ in 0..=max_len {
            sizes.push(s);
            s = s.saturating_mul(letters);
        }
        let total = sizes.iter().fold(0usize, |a, &b| a.saturating_add(b));
        if total > budget.max_words {
            return Err(Error::BudgetExceeded(format!(
                "{} words of length at most {}, limit {}",
                total, max_len, budget.max_words
            )));
        }
        let mut start = alloc::vec![0; max_len + 1];
        let mut at = 0;
        for len in (0..=max_len).rev() {
            start[len] = at;
            at += sizes[len];
        }
        Ok(WordSpace {
            letters,
            max_len,
            start,
            total,
        })
    }

    fn column(&self, w: &[usize]) -> usize {
        let rank = w.iter().fold(0, |acc, &l| acc * self.letters + l);
        self.start[w.len()] + rank
    }

    fn words(&self, len: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        let count = self.letters.pow(len as u32);
        (0..count).map(move |mut r| {
            let mut w = alloc::vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = r % self.letters;
                r /= self.letters;
            }
            w
        })
    }

    fn vector(&self, p: &NcPoly) -> SparseVec {
        SparseVec::from_entries(p.field(), p.terms().map(|(w, c)| (self.column(w), c.clone())))
    }

    /// Number of words of length at most `d`.
    fn filtration_size(&self, d: usize) -> usize {
        self.total - self.start[d]
    }
}

/// The span of `w₁ · r · w₂` with `|w₁| + |w₂| ≤ max_len - 2`.
fn ideal_slice(h: &HopfPresentation, max_len: usize, budget: Budget) -> Result<(WordSpace, Echelon)> {
    let ws = WordSpace::new(h.size() * h.size(), max_len, budget)?;
    let mut ech = Echelon::new();
    if max_len < 2 {
        // no relation fits
        return Ok((ws, ech));
    }
    let pad = max_len - 2;
    for total in 0..=pad {
        for left in 0..=total {
            let right = total - left;
            for w1 in ws.words(left) {
                for w2 in ws.words(right) {
                    for r in &h.relations {
                        let items = r.terms().map(|(w, c)| {
                            let mut word = w1.clone();
                            word.extend_from_slice(w);
                            word.extend_from_slice(&w2);
                            (ws.column(&word), c.clone())
                        });
                        ech.insert(SparseVec::from_entries(h.field(), items));
                    }
                }
            }
        }
    }
    Ok((ws, ech))
}

/// Cumulative dimensions of the filtration pieces `F_d`, `d = 0..=max_len`,
/// of the quotient truncated at word length `max_len`.
pub fn filtered_dims(h: &HopfPresentation, max_len: usize) -> Result<Vec<usize>> {
    filtered_dims_with(h, max_len, Budget::default())
}

pub fn filtered_dims_with(h: &HopfPresentation, max_len: usize, budget: Budget) -> Result<Vec<usize>> {
    let (ws, ech) = ideal_slice(h, max_len, budget)?;
    Ok((0..=max_len)
        .map(|d| {
            let boundary = ws.start[d];
            let in_ideal = ech.pivots().filter(|&p| p >= boundary).count();
            ws.filtration_size(d) - in_ideal
        })
        .collect())
}

/// Whether every element lies in the span of the relations padded by words
/// up to total length `max_len`.
pub fn in_ideal(h: &HopfPresentation, elements: &[NcPoly], max_len: usize) -> Result<Vec<bool>> {
    let needed = elements.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let max_len = max_len.max(needed).max(2);
    let (ws, ech) = ideal_slice(h, max_len, Budget::default())?;
    debug_assert!(ws.max_len >= needed);
    Ok(elements.iter().map(|p| ech.contains(ws.vector(p))).collect())
}

/// Cumulative count of the monomials `a^i b^j c^k` and `d^l b^j c^k`
/// (`l ≥ 1`) of total degree at most `d`, for `d = 0..=max`.
pub fn pbw_count_slq2(max: usize) -> Vec<usize> {
    let binom3 = |m: usize| if m < 3 { 0 } else { m * (m - 1) * (m - 2) / 6 };
    (0..=max).map(|d| binom3(d + 3) + binom3(d + 2)).collect()
}

/// `aᵗEa - E` lies in the degree-2 slice of the ideal.
pub fn comodule_map_check(h: &HopfPresentation) -> bool {
    let a = h.a();
    let ate = h.mat_mul(&HopfPresentation::transpose(&a), &h.lift(&h.e));
    let lhs = h.mat_mul(&ate, &a);
    let e = h.lift(&h.e);
    let diffs: Vec<NcPoly> = lhs
        .iter()
        .zip(&e)
        .flat_map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x.sub(y)))
        .collect();
    in_ideal(h, &diffs, 2)
        .map(|v| v.into_iter().all(|b| b))
        .unwrap_or(false)
}

/// `S(a)a - I` and `aS(a) - I` lie in the degree-2 slice of the ideal.
pub fn antipode_check(h: &HopfPresentation) -> bool {
    let a = h.a();
    let s = h.antipode();
    let n = h.size();
    let one = Scalar::one(h.field());
    let mut diffs = Vec::new();
    for prod in [h.mat_mul(&s, &a), h.mat_mul(&a, &s)] {
        for (i, row) in prod.into_iter().enumerate() {
            for (k, x) in row.into_iter().enumerate() {
                let id = if i == k { one.clone() } else { Scalar::zero(h.field()) };
                diffs.push(x.sub(&NcPoly::constant(id, n)));
            }
        }
    }
    in_ideal(h, &diffs, 2)
        .map(|v| v.into_iter().all(|b| b))
        .unwrap_or(false)
}

/// The form realizing `SL_q(2)`: `[[0, -q], [1, 0]]`, with
/// `Tr(E(Eᵗ)⁻¹) = -q - q⁻¹`.
pub fn slq2_form(q: &Scalar) -> Matrix {
    let f = q.field();
    Matrix::from_rows(
        f,
        alloc::vec![
            alloc::vec![Scalar::zero(f), q.neg_ref()],
            alloc::vec![Scalar::one(f), Scalar::zero(f)]
        ],
    )
    .expect("2×2")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlqReport {
    pub form: Matrix,
    /// Each quantum `SL(2)` relation with its membership result.
    pub relations: Vec<(String, bool)>,
    pub verdict: bool,
}

/// The seven defining relations of `SL_q(2)` in `a = a11, b = a12,
/// c = a21, d = a22`, with their printed forms.
pub fn slq2_relations(q: &Scalar) -> Result<Vec<(String, NcPoly)>> {
    let f = q.field();
    let g = |i, j| NcPoly::generator(f, 2, i, j);
    let (a, b, c, d) = (g(0, 0), g(0, 1), g(1, 0), g(1, 1));
    let qc = NcPoly::constant(q.clone(), 2);
    let qinv = q.inv()?;
    let one = NcPoly::constant(Scalar::one(f), 2);
    Ok(alloc::vec![
        ("ba = q ab".into(), b.mul(&a).sub(&qc.mul(&a.mul(&b)))),
        ("db = q bd".into(), d.mul(&b).sub(&qc.mul(&b.mul(&d)))),
        ("ca = q ac".into(), c.mul(&a).sub(&qc.mul(&a.mul(&c)))),
        ("dc = q cd".into(), d.mul(&c).sub(&qc.mul(&c.mul(&d)))),
        ("bc = cb".into(), b.mul(&c).sub(&c.mul(&b))),
        (
            "ad - da = (q^-1 - q) bc".into(),
            a.mul(&d).sub(&d.mul(&a)).sub(&b.mul(&c).scale(&(&qinv - q))),
        ),
        (
            "ad - q^-1 bc = 1".into(),
            a.mul(&d).sub(&b.mul(&c).scale(&qinv)).sub(&one)
        ),
    ])
}

/// Checks that the seven `SL_q(2)` relations lie in the ideal of `H(E)` for
/// the calibrated form.
pub fn slq2_specialization(q: &Scalar) -> Result<SlqReport> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let form = slq2_form(q);
    let h = h_relations(&form)?;
    let rels = slq2_relations(q)?;
    let polys: Vec<NcPoly> = rels.iter().map(|(_, p)| p.clone()).collect();
    let member = in_ideal(&h, &polys, 2)?;
    let relations: Vec<(String, bool)> = rels.into_iter().map(|(s, _)| s).zip(member).collect();
    let verdict = relations.iter().all(|(_, ok)| *ok);
    Ok(SlqReport {
        form,
        relations,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_nondegenerate, seeded};
    use alloc::string::ToString;
    use alloc::vec;

    fn standard() -> HopfPresentation {
        h_relations(&slq2_form(&Scalar::q_var())).unwrap()
    }

    #[test]
    fn one_dimensional() {
        let h = h_relations(&Matrix::from_ints(Field::Rational, &[[1]])).unwrap();
        assert_eq!(h.relations().len(), 2);
        assert_eq!(h.relations()[0], h.relations()[1]);
        assert_eq!(h.relations()[0].to_string(), "a11 a11 - 1");
        assert_eq!(filtered_dims(&h, 3).unwrap(), vec![1, 2, 2, 2]);
        for c in [2, -3, 7] {
            let h = h_relations(&Matrix::from_ints(Field::Rational, &[[c]])).unwrap();
            assert_eq!(filtered_dims(&h, 4).unwrap(), vec![1, 2, 2, 2, 2]);
        }
    }

    #[test]
    fn singular_form() {
        let e = Matrix::from_ints(Field::Rational, &[[1, 2], [2, 4]]);
        assert!(matches!(h_relations(&e), Err(Error::SingularMatrix)));
    }

    #[test]
    fn standard_form_dims() {
        let h = standard();
        assert_eq!(h.relations().len(), 8);
        assert_eq!(filtered_dims(&h, 1).unwrap(), vec![1, 5]);
        assert_eq!(filtered_dims(&h, 2).unwrap(), vec![1, 5, 14]);
        assert_eq!(pbw_count_slq2(3), vec![1, 5, 14, 30]);
        assert_eq!(filtered_dims(&h, 3).unwrap(), pbw_count_slq2(3));
    }

    #[test]
    fn antipode_matches_quantum_sl2() {
        // S(a) = [[d, -q b], [-q⁻¹ c, a]]
        let q = Scalar::q_var();
        let h = standard();
        let s = h.antipode();
        let g = |i, j| h.generator(i, j);
        let qinv = q.inv().unwrap();
        assert_eq!(s[0][0], g(1, 1));
        assert_eq!(s[0][1], g(0, 1).scale(&q.neg_ref()));
        assert_eq!(s[1][0], g(1, 0).scale(&qinv.neg_ref()));
        assert_eq!(s[1][1], g(0, 0));
    }

    #[test]
    fn checks_hold() {
        assert!(comodule_map_check(&standard()));
        assert!(antipode_check(&standard()));
        let id = h_relations(&Matrix::identity(Field::Rational, 2)).unwrap();
        assert!(antipode_check(&id) && comodule_map_check(&id));
        let mut rng = seeded(4);
        for f in [Field::Rational, Field::Prime(5)] {
            for n in 1..=3 {
                let h = h_relations(&random_nondegenerate(f, n, &mut rng)).unwrap();
                assert!(comodule_map_check(&h) && antipode_check(&h));
            }
        }
    }

    #[test]
    fn non_relation_rejected() {
        let h = standard();
        let ab = h.generator(0, 0).mul(&h.generator(0, 1));
        assert_eq!(in_ideal(&h, &[ab], 2).unwrap(), vec![false]);
    }

    #[test]
    fn slq2_generic_and_special() {
        let r = slq2_specialization(&Scalar::q_var()).unwrap();
        assert!(r.verdict, "{:?}", r.relations);
        assert_eq!(r.relations.len(), 7);
        assert!(slq2_specialization(&Scalar::one(Field::Rational)).unwrap().verdict);
        assert!(slq2_specialization(&Scalar::zeta(8, 1)).unwrap().verdict);
        // the other antidiagonal sign fails the first relation
        let q = Scalar::q_var();
        let f = q.field();
        let wrong = Matrix::from_rows(
            f,
            vec![vec![Scalar::zero(f), q.clone()], vec![Scalar::one(f), Scalar::zero(f)]],
        )
        .unwrap();
        let h = h_relations(&wrong).unwrap();
        let rels: Vec<NcPoly> = slq2_relations(&q).unwrap().into_iter().map(|(_, p)| p).collect();
        assert!(!in_ideal(&h, &rels, 2).unwrap().iter().all(|&b| b));
    }

    #[test]
    fn budget() {
        let h = standard();
        let tight = Budget {
            max_paths: 10,
            max_words: 10,
        };
        assert!(matches!(
            filtered_dims_with(&h, 3, tight),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
