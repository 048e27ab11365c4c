//! The realization of Temperley-Lieb diagrams on `I × I`-graded spaces.
//!
//! `X^{⊗n}` is realized as the span of paths of length `n` in the quiver of
//! the graph (length 0: one line per vertex). The cap `β` acts by the forms
//! and the cup `α` by the dual element: with `e_a` a basis of `V_ij` and
//! `f_b` a basis of `V_ji`,
//!
//! ```text
//! β(e_a ⊗ f_b) = (E_ij)_{ab}        α at i = Σ_j Σ_{a,b} (E_ji⁻¹)_{ab} e_a ⊗ f_b
//! ```
//!
//! Both zig-zag identities then hold for any invertible forms, and the closed
//! loop at `i` evaluates to `Σ_j Tr(E_ij (E_jiᵗ)⁻¹)`.
//!
//! Worked example: one vertex, `E = [[0, -q], [1, 0]]`. Then
//! `E⁻¹ = [[0, 1], [-q⁻¹, 0]]`, so `α = e_1⊗e_2 - q⁻¹ e_2⊗e_1`, and
//! `β∘α = E_12 · 1 + E_21 · (-q⁻¹) = -q - q⁻¹`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::diagram::TLDiagram;
use super::element::TLElement;
use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix, Scalar};
use crate::modgraph::ModulatedGraph;
use crate::quiver::{PathSpace, Quiver};
use crate::Budget;

#[derive(Clone, Debug)]
pub struct GradedSpaceRep {
    graph: ModulatedGraph,
    q: Scalar,
    quiver: Quiver,
    /// `E_ij` by ordered pair.
    forms: BTreeMap<(usize, usize), Matrix>,
    /// `E_ji⁻¹`, stored under `(i, j)` since it pairs `V_ij ⊗ V_ji`.
    cup_coeffs: BTreeMap<(usize, usize), Matrix>,
    budget: Budget,
}

/// Builds the realization and runs the zig-zag self-test.
pub fn functor_image(g: &ModulatedGraph, q: &Scalar) -> Result<GradedSpaceRep> {
    GradedSpaceRep::new(g, q, Budget::default())
}

impl GradedSpaceRep {
    pub fn new(g: &ModulatedGraph, q: &Scalar, budget: Budget) -> Result<Self> {
        g.check_symmetric()?;
        g.check_forms()?;
        if q.field() != g.field() {
            return Err(Error::FieldMismatch {
                left: g.field(),
                right: q.field(),
            });
        }
        let forms = g.forms().ok_or(Error::MissingForms)?.clone();
        let mut cup_coeffs = BTreeMap::new();
        for &(i, j) in forms.keys() {
            let eji = g.require_form(j, i)?;
            let inv = eji.inverse().map_err(|_| Error::DegenerateForm { i: j, j: i })?;
            cup_coeffs.insert((i, j), inv);
        }
        let rep = GradedSpaceRep {
            graph: g.clone(),
            q: q.clone(),
            quiver: Quiver::from_dims(g.dims()),
            forms,
            cup_coeffs,
            budget,
        };
        if !rep.zig_zag_holds()? {
            return Err(Error::ZigZagFailure);
        }
        Ok(rep)
    }

    pub fn graph(&self) -> &ModulatedGraph {
        &self.graph
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn field(&self) -> Field {
        self.graph.field()
    }

    pub fn paths(&self, max_len: usize) -> Result<PathSpace> {
        PathSpace::build(&self.quiver, max_len, self.budget.max_paths)
    }

    /// `β(x ⊗ y)` for arrows `x`, `y`.
    fn cap_value(&self, x: usize, y: usize) -> Option<Scalar> {
        let (a, b) = (self.quiver.arrow(x), self.quiver.arrow(y));
        if a.target != b.source || b.target != a.source {
            return None;
        }
        let m = &self.forms[&(a.source, a.target)];
        Some(m.get(a.local, b.local).clone())
    }

    /// Coefficient of `x ⊗ y` in `α`.
    fn cup_value(&self, x: usize, y: usize) -> Option<Scalar> {
        let (a, b) = (self.quiver.arrow(x), self.quiver.arrow(y));
        if a.target != b.source || b.target != a.source {
            return None;
        }
        let m = &self.cup_coeffs[&(a.source, a.target)];
        Some(m.get(a.local, b.local).clone())
    }

    /// The graded map of a single diagram, as a `paths(m) × paths(n)` matrix.
    pub fn evaluate_diagram(&self, d: &TLDiagram) -> Result<Matrix> {
        let (n, m) = (d.source(), d.target());
        let ps = self.paths(n.max(m))?;
        self.evaluate_diagram_in(d, &ps)
    }

    fn evaluate_diagram_in(&self, d: &TLDiagram, ps: &PathSpace) -> Result<Matrix> {
        let (n, m) = (d.source(), d.target());
        let field = self.field();
        let rows = ps.count(m);
        let cols = ps.count(n);
        let mut out = Matrix::zeros(field, rows, cols);
        let xs: Vec<Vec<usize>> = (0..cols).map(|x| ps.arrows_of(n, x)).collect();
        let ys: Vec<Vec<usize>> = (0..rows).map(|y| ps.arrows_of(m, y)).collect();
        let one = Scalar::one(field);
        for (x, xa) in xs.iter().enumerate() {
            for (y, ya) in ys.iter().enumerate() {
                if ps.start(n, x) != ps.start(m, y) || ps.end(n, x) != ps.end(m, y) {
                    continue;
                }
                // arrow at a boundary point: bottom points first, then top
                let arrow_at = |p: usize| if p < n { xa[p] } else { ya[p - n] };
                let mut value = one.clone();
                for p in 0..n + m {
                    let partner = d.partner(p);
                    if partner < p {
                        continue;
                    }
                    let factor = if p < n && partner >= n {
                        (arrow_at(p) == arrow_at(partner)).then(|| one.clone())
                    } else if partner < n {
                        self.cap_value(arrow_at(p), arrow_at(partner))
                    } else {
                        self.cup_value(arrow_at(p), arrow_at(partner))
                    };
                    match factor {
                        Some(f) if !f.is_zero() => value = &value * &f,
                        _ => {
                            value = Scalar::zero(field);
                            break;
                        }
                    }
                }
                if !value.is_zero() {
                    out.set(y, x, value);
                }
            }
        }
        Ok(out)
    }

    /// The graded identity on paths of length `n`.
    pub fn identity(&self, n: usize) -> Result<Matrix> {
        Ok(Matrix::identity(self.field(), self.paths(n)?.count(n)))
    }

    /// `F ⊗ G` for graded maps `F: n1 -> m1` and `G: n2 -> m2`.
    pub fn tensor_maps(
        &self,
        f: &Matrix,
        (n1, m1): (usize, usize),
        g: &Matrix,
        (n2, m2): (usize, usize),
    ) -> Result<Matrix> {
        let (n, m) = (n1 + n2, m1 + m2);
        let ps = self.paths(n.max(m))?;
        for (mat, a, b) in [(f, n1, m1), (g, n2, m2)] {
            if mat.rows() != ps.count(b) || mat.cols() != ps.count(a) {
                return Err(Error::DimensionMismatch("graded map has the wrong shape".into()));
            }
        }
        let split = |len: usize, first: usize, p: usize| -> (usize, usize) {
            let arrows = ps.arrows_of(len, p);
            let start = ps.start(len, p);
            let head = ps.index_of(start, &arrows[..first]).expect("prefix of a path");
            let mid = ps.end(first, head);
            let tail = ps.index_of(mid, &arrows[first..]).expect("suffix of a path");
            (head, tail)
        };
        let xs: Vec<(usize, usize)> = (0..ps.count(n)).map(|x| split(n, n1, x)).collect();
        let ys: Vec<(usize, usize)> = (0..ps.count(m)).map(|y| split(m, m1, y)).collect();
        let mut out = Matrix::zeros(self.field(), ys.len(), xs.len());
        for (x, &(x1, x2)) in xs.iter().enumerate() {
            for (y, &(y1, y2)) in ys.iter().enumerate() {
                let a = f.get(y1, x1);
                if a.is_zero() {
                    continue;
                }
                let b = g.get(y2, x2);
                if b.is_zero() {
                    continue;
                }
                out.set(y, x, a * b);
            }
        }
        Ok(out)
    }

    /// `(β ⊗ id)(id ⊗ α) = id` and `(id ⊗ β)(α ⊗ id) = id` on paths of length 1.
    fn zig_zag_holds(&self) -> Result<bool> {
        let cup = self.evaluate_diagram(&TLDiagram::cup())?;
        let cap = self.evaluate_diagram(&TLDiagram::cap())?;
        let id = self.identity(1)?;
        let left = self
            .tensor_maps(&cap, (2, 0), &id, (1, 1))?
            .mul(&self.tensor_maps(&id, (1, 1), &cup, (0, 2))?)?;
        let right =
            self.tensor_maps(&id, (1, 1), &cap, (2, 0))?
                .mul(&self.tensor_maps(&cup, (0, 2), &id, (1, 1))?)?;
        Ok(left.is_identity() && right.is_identity())
    }

    /// `β∘α` at each vertex, computed as the product of the two images.
    pub fn loop_values(&self) -> Result<Vec<Scalar>> {
        let cup = self.evaluate_diagram(&TLDiagram::cup())?;
        let cap = self.evaluate_diagram(&TLDiagram::cap())?;
        let l = cap.mul(&cup)?;
        Ok((0..l.rows()).map(|i| l.get(i, i).clone()).collect())
    }
}

/// The graded map of a linear combination of diagrams.
pub fn tl_evaluate(rep: &GradedSpaceRep, elt: &TLElement) -> Result<Matrix> {
    if elt.field() != rep.field() {
        return Err(Error::FieldMismatch {
            left: rep.field(),
            right: elt.field(),
        });
    }
    let (n, m) = (elt.source(), elt.target());
    let ps = rep.paths(n.max(m))?;
    let mut out = Matrix::zeros(rep.field(), ps.count(m), ps.count(n));
    for (d, c) in elt.terms() {
        out = out.add(&rep.evaluate_diagram_in(d, &ps)?.scale(c)?)?;
    }
    Ok(out)
}

/// The identity of the graded unit object, one line per vertex.
pub fn unit(rep: &GradedSpaceRep) -> Matrix {
    Matrix::identity(rep.field(), rep.graph.vertex_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modgraph::families;
    use alloc::vec;

    fn single(e: Matrix) -> ModulatedGraph {
        let n = e.rows();
        let g = ModulatedGraph::from_dims(e.field(), vec![vec![n]]).unwrap();
        let mut forms = BTreeMap::new();
        forms.insert((0, 0), e);
        g.with_forms(forms).unwrap()
    }

    fn standard() -> (ModulatedGraph, Scalar) {
        let q = Scalar::q_var();
        let f = Field::RationalFunction;
        let e = Matrix::from_rows(
            f,
            vec![vec![Scalar::zero(f), -&q], vec![Scalar::one(f), Scalar::zero(f)]],
        )
        .unwrap();
        (single(e), q)
    }

    #[test]
    fn loop_value_examples() {
        let (g, q) = standard();
        let rep = functor_image(&g, &q).unwrap();
        assert_eq!(rep.loop_values().unwrap(), vec![Scalar::loop_value(&q).unwrap()]);

        let g = single(Matrix::from_ints(Field::Rational, &[[1]]));
        let rep = functor_image(&g, &Scalar::one(Field::Rational)).unwrap();
        assert!(rep.loop_values().unwrap()[0].is_one());

        let f = Field::Rational;
        let g = ModulatedGraph::from_dims(f, families::path(2)).unwrap();
        let mut forms = BTreeMap::new();
        forms.insert((0, 1), Matrix::from_ints(f, &[[1]]));
        forms.insert((1, 0), Matrix::from_ints(f, &[[-1]]));
        let rep = functor_image(&g.with_forms(forms).unwrap(), &Scalar::one(f)).unwrap();
        let minus_one = Scalar::from_int(f, -1);
        assert_eq!(rep.loop_values().unwrap(), vec![minus_one.clone(), minus_one]);
    }

    #[test]
    fn evaluate_examples() {
        let (g, q) = standard();
        let rep = functor_image(&g, &q).unwrap();
        let f = Field::RationalFunction;
        assert!(tl_evaluate(&rep, &TLElement::identity(f, 1)).unwrap().is_identity());
        // e_1 ∘ e_1 = δ e_1 holds under the realization since the trace equation holds
        let e = TLElement::e(f, 1, 2).unwrap();
        let fe = tl_evaluate(&rep, &e).unwrap();
        let delta = Scalar::loop_value(&q).unwrap();
        assert_eq!(fe.mul(&fe).unwrap(), fe.scale(&delta).unwrap());
        let ee = tl_evaluate(&rep, &e.compose(&e, &q).unwrap()).unwrap();
        assert_eq!(ee, fe.scale(&delta).unwrap());
    }

    #[test]
    fn tensor_matches_diagram_tensor() {
        let f = Field::Rational;
        let g = ModulatedGraph::from_dims(f, families::multi_edge(2)).unwrap();
        let mut forms = BTreeMap::new();
        forms.insert((0, 1), Matrix::from_ints(f, &[[1, 2], [0, 1]]));
        forms.insert((1, 0), Matrix::from_ints(f, &[[2, 0], [1, 1]]));
        let g = g.with_forms(forms).unwrap();
        let rep = functor_image(&g, &Scalar::one(f)).unwrap();
        let cup = TLDiagram::cup();
        let e = TLDiagram::e(1, 2).unwrap();
        let lhs = rep.evaluate_diagram(&cup.tensor(&e)).unwrap();
        let rhs = rep
            .tensor_maps(
                &rep.evaluate_diagram(&cup).unwrap(),
                (0, 2),
                &rep.evaluate_diagram(&e).unwrap(),
                (2, 2),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
