//! Preprojective algebras of modulated graphs.
//!
//! `P(Γ)` is the path algebra of the doubled quiver modulo one quadratic
//! relation per vertex,
//!
//! ```text
//! r_i = Σ_j Σ_{a,b} (E_ji⁻¹)_{ab} e_a ⊗ f_b        e_a ∈ V_ij, f_b ∈ V_ji
//! ```
//!
//! the dual element of the forms. Graded pieces are computed exactly: the
//! degree `n` part of the ideal is grown as `I_{n-1} ⊗ V + T^{n-2} ⊗ R`,
//! where the first summand needs no elimination at all since right
//! extension by an arrow keeps pivots distinct.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::sparse::{Echelon, SparseVec};
use crate::exactnum::{Field, Matrix, Scalar};
use crate::modgraph::ModulatedGraph;
use crate::quiver::{PathSpace, Quiver};
use crate::random::{random_forms, seeded};
use crate::Budget;

/// An `I × I` table of integers, e.g. the block dimensions of one degree.
pub type DimTable = Vec<Vec<i64>>;

/// The relation at each vertex, stored by the pair of vertices it runs
/// through: `blocks[(i, j)]` holds the coefficients of `e_a ⊗ f_b` with
/// `e_a ∈ V_ij`, `f_b ∈ V_ji`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    field: Field,
    vertices: usize,
    blocks: BTreeMap<(usize, usize), Matrix>,
}

impl RelationSet {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn blocks(&self) -> &BTreeMap<(usize, usize), Matrix> {
        &self.blocks
    }

    /// Whether vertex `i` has a nonzero relation.
    pub fn is_nonzero_at(&self, i: usize) -> bool {
        self.blocks.iter().any(|(&(s, _), m)| s == i && !m.is_zero())
    }

    /// The relations as vectors in the degree-2 path space, one per vertex
    /// (zero for isolated vertices).
    pub fn vectors(&self, ps: &PathSpace) -> Vec<SparseVec> {
        let quiver = ps.quiver();
        (0..self.vertices)
            .map(|i| {
                let mut items = Vec::new();
                for (&(s, j), m) in &self.blocks {
                    if s != i {
                        continue;
                    }
                    for a in 0..m.rows() {
                        for b in 0..m.cols() {
                            let c = m.get(a, b);
                            if c.is_zero() {
                                continue;
                            }
                            let arrows = [quiver.arrow_id(i, j, a), quiver.arrow_id(j, i, b)];
                            let p = ps.index_of(i, &arrows).expect("composable");
                            items.push((p, c.clone()));
                        }
                    }
                }
                SparseVec::from_entries(self.field, items)
            })
            .collect()
    }

    /// `(E ⊗ id)(id ⊗ r) = id` on every `V_ij`, i.e. `E_ij` times the
    /// coefficient block of `V_ji ⊗ V_ij` is the identity.
    pub fn contraction_holds(&self, g: &ModulatedGraph) -> bool {
        self.blocks.keys().all(|&(i, j)| {
            let (Some(e), Some(c)) = (g.form(i, j), self.blocks.get(&(j, i))) else {
                return false;
            };
            e.mul(c).map(|m| m.is_identity()).unwrap_or(false)
        })
    }
}

/// The relation at each vertex, checked against the contraction identity.
pub fn relation_element(g: &ModulatedGraph) -> Result<RelationSet> {
    g.check_symmetric()?;
    g.check_forms()?;
    let forms = g.forms().ok_or(Error::MissingForms)?;
    let mut blocks = BTreeMap::new();
    for &(i, j) in forms.keys() {
        let inv = g
            .require_form(j, i)?
            .inverse()
            .map_err(|_| Error::DegenerateForm { i: j, j: i })?;
        blocks.insert((i, j), inv);
    }
    let rel = RelationSet {
        field: g.field(),
        vertices: g.vertex_count(),
        blocks,
    };
    if !rel.contraction_holds(g) {
        return Err(Error::ZigZagFailure);
    }
    Ok(rel)
}

/// Dimensions `dim e_i P_n e_j` for `n = 0..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTruncation {
    pub max_degree: usize,
    pub dims: Vec<DimTable>,
}

impl GradedTruncation {
    pub fn degree(&self, n: usize) -> &DimTable {
        &self.dims[n]
    }

    /// First degree at which `self` and `other` differ.
    pub fn first_difference(&self, other: &[DimTable]) -> Option<usize> {
        let n = self.dims.len().min(other.len());
        (0..n).find(|&k| self.dims[k] != other[k])
    }
}

fn to_table(counts: Vec<Vec<usize>>) -> DimTable {
    counts
        .into_iter()
        .map(|row| row.into_iter().map(|c| c as i64).collect())
        .collect()
}

fn path_space(g: &ModulatedGraph, max_degree: usize, budget: Budget) -> Result<PathSpace> {
    PathSpace::build(&Quiver::from_dims(g.dims()), max_degree.max(2), budget.max_paths)
}

fn subtract_pivots(ps: &PathSpace, n: usize, ech: &Echelon) -> DimTable {
    let mut table = to_table(ps.block_counts(n));
    for p in ech.pivots() {
        table[ps.start(n, p)][ps.end(n, p)] -= 1;
    }
    table
}

/// Graded dimensions of the path algebra modulo the ideal generated by
/// `relations` (homogeneous vectors in the degree-2 path space).
fn quotient_dims(ps: &PathSpace, relations: &[SparseVec], max_degree: usize) -> GradedTruncation {
    let quiver = ps.quiver();
    let two: Vec<[usize; 2]> = (0..ps.count(2))
        .map(|q| {
            let a = ps.arrows_of(2, q);
            [a[0], a[1]]
        })
        .collect();
    let rels: Vec<(usize, &SparseVec)> = relations
        .iter()
        .filter_map(|r| r.pivot().map(|p| (ps.start(2, p), r)))
        .collect();
    let mut dims = Vec::with_capacity(max_degree + 1);
    let mut prev = Echelon::new();
    for n in 0..=max_degree {
        if n < 2 {
            dims.push(to_table(ps.block_counts(n)));
            continue;
        }
        let mut cur = Echelon::new();
        for r in prev.rows() {
            let v = ps.end(n - 1, r.pivot().expect("nonzero row"));
            for e in quiver.out_arrows(v) {
                cur.insert_unchecked(r.map_columns(|p| ps.extend(n - 1, p, e)));
            }
        }
        for p in 0..ps.count(n - 2) {
            let v = ps.end(n - 2, p);
            for &(_, rel) in rels.iter().filter(|(s, _)| *s == v) {
                let w = rel.map_columns(|q| {
                    let [a, b] = two[q];
                    ps.extend(n - 1, ps.extend(n - 2, p, a), b)
                });
                cur.insert(w);
            }
        }
        dims.push(subtract_pivots(ps, n, &cur));
        prev = cur;
    }
    GradedTruncation { max_degree, dims }
}

/// The same dimensions, with the ideal in each degree spanned directly by
/// all `paths_a ⊗ R ⊗ paths_b`.
fn quotient_dims_by_definition(ps: &PathSpace, relations: &[SparseVec], max_degree: usize) -> GradedTruncation {
    let field = relations
        .iter()
        .find_map(|r| r.entries().first().map(|(_, c)| c.field()))
        .unwrap_or(Field::Rational);
    let mut dims = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        if n < 2 {
            dims.push(to_table(ps.block_counts(n)));
            continue;
        }
        let mut ech = Echelon::new();
        for a in 0..=n - 2 {
            let b = n - 2 - a;
            for p in 0..ps.count(a) {
                let head = ps.arrows_of(a, p);
                for rel in relations {
                    let Some(piv) = rel.pivot() else { continue };
                    if ps.start(2, piv) != ps.end(a, p) {
                        continue;
                    }
                    for s in 0..ps.count(b) {
                        if ps.start(b, s) != ps.end(2, piv) {
                            continue;
                        }
                        let tail = ps.arrows_of(b, s);
                        let items = rel.entries().iter().map(|(q, c)| {
                            let mut word = head.clone();
                            word.extend(ps.arrows_of(2, *q));
                            word.extend_from_slice(&tail);
                            let idx = ps.index_of(ps.start(a, p), &word).expect("composable");
                            (idx, c.clone())
                        });
                        ech.insert(SparseVec::from_entries(field, items));
                    }
                }
            }
        }
        dims.push(subtract_pivots(ps, n, &ech));
    }
    GradedTruncation { max_degree, dims }
}

/// `dim e_i P_n e_j` for `n ≤ max_degree`.
pub fn graded_dims(g: &ModulatedGraph, max_degree: usize) -> Result<GradedTruncation> {
    graded_dims_with(g, max_degree, Budget::default())
}

pub fn graded_dims_with(g: &ModulatedGraph, max_degree: usize, budget: Budget) -> Result<GradedTruncation> {
    let rel = relation_element(g)?;
    let ps = path_space(g, max_degree, budget)?;
    Ok(quotient_dims(&ps, &rel.vectors(&ps), max_degree))
}

/// Slow reference for [`graded_dims`], recomputing the ideal from its
/// definition in every degree.
pub fn graded_dims_by_definition(g: &ModulatedGraph, max_degree: usize) -> Result<GradedTruncation> {
    let rel = relation_element(g)?;
    let ps = path_space(g, max_degree, Budget::default())?;
    Ok(quotient_dims_by_definition(&ps, &rel.vectors(&ps), max_degree))
}

fn mat_mul(a: &DimTable, b: &DimTable) -> DimTable {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn identity_table(n: usize) -> DimTable {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Coefficients of `(1 - At + t²)⁻¹`: `H_0 = I`, `H_1 = A`,
/// `H_n = A H_{n-1} - H_{n-2}`.
pub fn expected_series(a: &DimTable, max_degree: usize) -> Vec<DimTable> {
    let mut out = vec![identity_table(a.len())];
    if max_degree >= 1 {
        out.push(a.clone());
    }
    for n in 2..=max_degree {
        let mut next = mat_mul(a, &out[n - 1]);
        for (row, prev) in next.iter_mut().zip(&out[n - 2]) {
            for (x, y) in row.iter_mut().zip(prev) {
                *x -= y;
            }
        }
        out.push(next);
    }
    out
}

pub fn adjacency_table(g: &ModulatedGraph) -> DimTable {
    to_table(g.dims().to_vec())
}

/// Outcome of comparing graded dimensions with `(1 - At + t²)⁻¹` and
/// with recomputations under fresh random forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatnessReport {
    pub seed: u64,
    pub trials: usize,
    pub max_degree: usize,
    /// Whether the forms of the input were used (otherwise random ones were drawn).
    pub used_given_forms: bool,
    pub dims: GradedTruncation,
    /// `None` when the comparison does not apply; see `expected_skipped`.
    pub expected: Option<Vec<DimTable>>,
    pub expected_skipped: Option<String>,
    pub expected_mismatch: Option<usize>,
    /// First degree of disagreement for each random trial.
    pub trial_mismatches: Vec<Option<usize>>,
}

impl FlatnessReport {
    pub fn first_discrepancy(&self) -> Option<usize> {
        self.trial_mismatches
            .iter()
            .flatten()
            .chain(self.expected_mismatch.iter())
            .copied()
            .min()
    }

    pub fn verdict(&self) -> String {
        match self.first_discrepancy() {
            None => format!("consistent to degree {}", self.max_degree),
            Some(n) => format!("discrepancy at degree {}", n),
        }
    }
}

/// Compares `graded_dims` with the recurrence (for connected non-ADET
/// graphs) and with `trials` recomputations under independently drawn
/// forms from a generator seeded with `seed`. A graph without forms gets a
/// random base choice from the same generator.
pub fn flatness_check(g: &ModulatedGraph, max_degree: usize, seed: u64, trials: usize) -> Result<FlatnessReport> {
    flatness_check_with(g, max_degree, seed, trials, Budget::default())
}

pub fn flatness_check_with(
    g: &ModulatedGraph,
    max_degree: usize,
    seed: u64,
    trials: usize,
    budget: Budget,
) -> Result<FlatnessReport> {
    g.check_symmetric()?;
    let mut rng = seeded(seed);
    let used_given_forms = g.has_forms();
    let base = if used_given_forms {
        g.clone()
    } else {
        g.with_forms(random_forms(g.field(), g.dims(), &mut rng))?
    };
    let dims = graded_dims_with(&base, max_degree, budget)?;
    let (expected, expected_skipped) = if g.components().len() != 1 {
        (None, Some(String::from("graph is not connected")))
    } else {
        let kinds = g.classify_all()?;
        match kinds.iter().find(|(_, t)| t.is_adet()) {
            Some((_, t)) => (None, Some(format!("graph is of type {}", t))),
            None => (Some(expected_series(&adjacency_table(g), max_degree)), None),
        }
    };
    let expected_mismatch = expected.as_ref().and_then(|e| dims.first_difference(e));
    let mut trial_mismatches = Vec::with_capacity(trials);
    for _ in 0..trials {
        let other = g.with_forms(random_forms(g.field(), g.dims(), &mut rng))?;
        let d = graded_dims_with(&other, max_degree, budget)?;
        trial_mismatches.push(dims.first_difference(&d.dims));
    }
    Ok(FlatnessReport {
        seed,
        trials,
        max_degree,
        used_given_forms,
        dims,
        expected,
        expected_skipped,
        expected_mismatch,
        trial_mismatches,
    })
}

/// The annihilator of the relation span inside the degree-2 dual, in the
/// dual basis of paths.
fn dual_relations(ps: &PathSpace, relations: &[SparseVec], field: Field) -> Vec<SparseVec> {
    let one = Scalar::one(field);
    let mut by_block: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for q in 0..ps.count(2) {
        by_block.entry((ps.start(2, q), ps.end(2, q))).or_default().push(q);
    }
    let mut out = Vec::new();
    for ((s, t), cols) in by_block {
        let rel = if s == t {
            relations.get(s).filter(|r| !r.is_zero())
        } else {
            None
        };
        match rel {
            None => out.extend(cols.iter().map(|&c| SparseVec::from_entries(field, [(c, one.clone())]))),
            Some(r) => {
                let p = r.pivot().expect("nonzero");
                let lead = r.get(p).expect("pivot entry");
                for &c in cols.iter().filter(|&&c| c != p) {
                    let k = match r.get(c) {
                        Some(x) => x / lead,
                        None => Scalar::zero(field),
                    };
                    out.push(SparseVec::from_entries(field, [(c, one.clone()), (p, -k)]));
                }
            }
        }
    }
    out
}

/// Graded dimensions of the quadratic dual `T(V*)/(R^⊥)`.
pub fn quadratic_dual_dims(g: &ModulatedGraph, max_degree: usize) -> Result<GradedTruncation> {
    quadratic_dual_dims_with(g, max_degree, Budget::default())
}

pub fn quadratic_dual_dims_with(g: &ModulatedGraph, max_degree: usize, budget: Budget) -> Result<GradedTruncation> {
    let rel = relation_element(g)?;
    let ps = path_space(g, max_degree, budget)?;
    let dual = dual_relations(&ps, &rel.vectors(&ps), g.field());
    Ok(quotient_dims(&ps, &dual, max_degree))
}

/// The algebra, its quadratic dual, and the convolution
/// `Σ_k (-1)^k H^!_k H_{n-k} = δ_{n0} I` degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulNumerics {
    pub algebra: GradedTruncation,
    pub dual: GradedTruncation,
    pub convolution: Vec<DimTable>,
    /// First degree where the convolution is not `δ_{n0} I`.
    pub first_failure: Option<usize>,
}

impl KoszulNumerics {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

pub fn euler_convolution(dual: &[DimTable], algebra: &[DimTable]) -> Vec<DimTable> {
    let n = dual.len().min(algebra.len());
    let size = algebra.first().map_or(0, |m| m.len());
    (0..n)
        .map(|d| {
            let mut acc = vec![vec![0i64; size]; size];
            for k in 0..=d {
                let term = mat_mul(&dual[k], &algebra[d - k]);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                for (row, trow) in acc.iter_mut().zip(&term) {
                    for (x, y) in row.iter_mut().zip(trow) {
                        *x += sign * y;
                    }
                }
            }
            acc
        })
        .collect()
}

pub fn koszul_numerics(g: &ModulatedGraph, max_degree: usize) -> Result<KoszulNumerics> {
    koszul_numerics_with(g, max_degree, Budget::default())
}

pub fn koszul_numerics_with(g: &ModulatedGraph, max_degree: usize, budget: Budget) -> Result<KoszulNumerics> {
    let rel = relation_element(g)?;
    let ps = path_space(g, max_degree, budget)?;
    let vecs = rel.vectors(&ps);
    let algebra = quotient_dims(&ps, &vecs, max_degree);
    let dual = quotient_dims(&ps, &dual_relations(&ps, &vecs, g.field()), max_degree);
    let convolution = euler_convolution(&dual.dims, &algebra.dims);
    let size = g.vertex_count();
    let first_failure = convolution.iter().enumerate().position(|(n, m)| {
        if n == 0 {
            *m != identity_table(size)
        } else {
            m.iter().flatten().any(|&x| x != 0)
        }
    });
    Ok(KoszulNumerics {
        algebra,
        dual,
        convolution,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modgraph::families;
    use crate::random::random_forms;

    fn with_random_forms(field: Field, dims: Vec<Vec<usize>>, seed: u64) -> ModulatedGraph {
        let g = ModulatedGraph::from_dims(field, dims).unwrap();
        let forms = random_forms(field, g.dims(), &mut seeded(seed));
        g.with_forms(forms).unwrap()
    }

    fn single(c: i64) -> ModulatedGraph {
        let f = Field::Rational;
        let g = ModulatedGraph::from_dims(f, vec![vec![1]]).unwrap();
        let mut forms = BTreeMap::new();
        forms.insert((0, 0), Matrix::from_ints(f, &[[c]]));
        g.with_forms(forms).unwrap()
    }

    #[test]
    fn relation_examples() {
        let rel = relation_element(&single(4)).unwrap();
        assert_eq!(
            rel.blocks()[&(0, 0)],
            Matrix::from_rows(
                Field::Rational,
                vec![vec![Scalar::parse(Field::Rational, "1/4").unwrap()]]
            )
            .unwrap()
        );

        let f = Field::Rational;
        let g = ModulatedGraph::from_dims(f, families::path(2)).unwrap();
        let mut forms = BTreeMap::new();
        forms.insert((0, 1), Matrix::from_ints(f, &[[1]]));
        forms.insert((1, 0), Matrix::from_ints(f, &[[-1]]));
        let g = g.with_forms(forms).unwrap();
        let rel = relation_element(&g).unwrap();
        assert_eq!(rel.blocks()[&(0, 1)], Matrix::from_ints(f, &[[-1]]));
        assert_eq!(rel.blocks()[&(1, 0)], Matrix::from_ints(f, &[[1]]));
        assert!(rel.contraction_holds(&g));

        let g = ModulatedGraph::from_dims(f, vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
        let mut forms = BTreeMap::new();
        forms.insert((0, 1), Matrix::from_ints(f, &[[1]]));
        forms.insert((1, 0), Matrix::from_ints(f, &[[1]]));
        let rel = relation_element(&g.with_forms(forms).unwrap()).unwrap();
        assert!(rel.is_nonzero_at(0) && !rel.is_nonzero_at(2));
    }

    #[test]
    fn degenerate_forms_rejected() {
        let f = Field::Rational;
        let mut forms = BTreeMap::new();
        forms.insert((0, 0), Matrix::from_ints(f, &[[0]]));
        let g = ModulatedGraph::unchecked(f, vec!["v".into()], vec![vec![1]], Some(forms)).unwrap();
        assert!(matches!(relation_element(&g), Err(Error::DegenerateForm { .. })));
    }

    #[test]
    fn expected_series_examples() {
        let s = expected_series(&vec![vec![0]], 4);
        assert_eq!(
            s,
            vec![
                vec![vec![1]],
                vec![vec![0]],
                vec![vec![-1]],
                vec![vec![0]],
                vec![vec![1]]
            ]
        );
        assert_eq!(
            expected_series(&vec![vec![0, 2], vec![2, 0]], 2)[2],
            vec![vec![3, 0], vec![0, 3]]
        );
        assert_eq!(
            expected_series(&vec![vec![0, 1], vec![1, 0]], 3)[3],
            vec![vec![0, -1], vec![-1, 0]]
        );
    }

    #[test]
    fn affine_a1() {
        let g = with_random_forms(Field::Rational, families::affine_a(1), 3);
        let d = graded_dims(&g, 5).unwrap();
        assert_eq!(d.dims[0], identity_table(2));
        assert_eq!(d.dims[1], adjacency_table(&g));
        assert_eq!(d.dims[2], vec![vec![3, 0], vec![0, 3]]);
        assert_eq!(d.dims, expected_series(&adjacency_table(&g), 5));
    }

    #[test]
    fn incremental_matches_definition() {
        let cases = [
            (Field::Rational, families::affine_a(2)),
            (Field::Prime(3), families::affine_d(4)),
            (Field::Prime(2), families::complete(4)),
            (Field::Rational, families::path(3)),
            (Field::Prime(5), vec![vec![1, 2], vec![2, 0]]),
        ];
        for (k, (f, dims)) in cases.into_iter().enumerate() {
            let g = with_random_forms(f, dims, k as u64);
            assert_eq!(graded_dims(&g, 4).unwrap(), graded_dims_by_definition(&g, 4).unwrap());
        }
    }

    #[test]
    fn adet_path_is_finite() {
        // P(A_2) has total dimension 4: e_1, e_2 and the two arrows
        let g = with_random_forms(Field::Rational, families::path(2), 0);
        let d = graded_dims(&g, 3).unwrap();
        assert_eq!(d.dims[2], vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(d.dims[3], vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn flatness_report() {
        let g = ModulatedGraph::from_dims(Field::Prime(5), families::affine_a(2)).unwrap();
        let r = flatness_check(&g, 4, 11, 2).unwrap();
        assert!(!r.used_given_forms);
        assert_eq!(r.first_discrepancy(), None);
        assert_eq!(r.verdict(), "consistent to degree 4");

        let g = with_random_forms(Field::Rational, families::path(3), 1);
        let r = flatness_check(&g, 3, 0, 1).unwrap();
        assert!(r.expected.is_none());
        assert_eq!(r.expected_skipped.as_deref(), Some("graph is of type A(3)"));
    }

    #[test]
    fn quadratic_dual_of_affine_a1() {
        let g = with_random_forms(Field::Rational, families::affine_a(1), 5);
        let k = koszul_numerics(&g, 5).unwrap();
        let a = adjacency_table(&g);
        let zero = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(
            k.dual.dims,
            vec![
                identity_table(2),
                a,
                identity_table(2),
                zero.clone(),
                zero.clone(),
                zero
            ]
        );
        assert!(k.holds());
        assert_eq!(quadratic_dual_dims(&g, 5).unwrap(), k.dual);
    }
}
