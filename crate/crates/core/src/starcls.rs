//! The trace equation, rescaling and the classification datum.
//!
//! For a modulated graph with forms, `d_ij = Tr(E_ij (E_jiᵗ)⁻¹)` and the
//! equation to satisfy at every vertex is `Σ_j d_ij = -q - q⁻¹`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactnum::{peel_roots, sum, Matrix, Poly, Scalar};
use crate::modgraph::{GraphType, ModulatedGraph};
use crate::random::{random_scalar, seeded};

/// `D = (d_ij)` with `d_ij = Tr(E_ij (E_jiᵗ)⁻¹)`, zero where there is no edge.
pub fn d_matrix(g: &ModulatedGraph) -> Result<Matrix> {
    g.check_symmetric()?;
    g.check_forms()?;
    let n = g.vertex_count();
    let field = g.field();
    let mut d = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            if g.dim(i, j) == 0 {
                continue;
            }
            let eij = g.require_form(i, j)?;
            let eji_t_inv = g
                .require_form(j, i)?
                .transpose()
                .inverse()
                .map_err(|_| Error::DegenerateForm { i: j, j: i })?;
            d.set(i, j, eij.mul(&eji_t_inv)?.trace()?);
        }
    }
    Ok(d)
}

/// Outcome of checking the trace equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCheck {
    pub holds: bool,
    /// `rowsum_i - (-q - q⁻¹)` per vertex.
    pub residuals: Vec<Scalar>,
}

/// Checks `Σ_j d_ij = -q - q⁻¹` at every vertex.
pub fn check_star(g: &ModulatedGraph, q: &Scalar) -> Result<StarCheck> {
    if q.field() != g.field() {
        return Err(Error::FieldMismatch {
            left: g.field(),
            right: q.field(),
        });
    }
    let delta = Scalar::loop_value(q)?;
    let d = d_matrix(g)?;
    let residuals: Vec<Scalar> = (0..d.rows()).map(|i| &sum(q.zero_like(), d.row(i)) - &delta).collect();
    Ok(StarCheck {
        holds: residuals.iter().all(Scalar::is_zero),
        residuals,
    })
}

/// `E'_ij = r_j E_ij`. Then `d'_ij = r_j d_ij r_i⁻¹`.
pub fn rescale(g: &ModulatedGraph, r: &[Scalar]) -> Result<ModulatedGraph> {
    if r.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} scale factors for {} vertices",
            r.len(),
            g.vertex_count()
        )));
    }
    if let Some(i) = r.iter().position(Scalar::is_zero) {
        return Err(Error::ZeroScale(i));
    }
    g.map_forms(|_, j, m| m.scale(&r[j]))
}

/// Search budget for [`nondegenerate_eigenvalue_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EigenSearch {
    pub seed: u64,
    /// Random combinations tried per eigenspace of dimension at least 2.
    pub trials: usize,
}

impl Default for EigenSearch {
    fn default() -> Self {
        EigenSearch { seed: 0, trials: 64 }
    }
}

/// Result of the eigenvalue search, with the part of the characteristic
/// polynomial whose roots lie outside the base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenOutcome {
    pub found: Option<(Scalar, Vec<Scalar>)>,
    /// Cofactor left after removing all base-field roots. Degree > 0 means
    /// some eigenvalues were not examined.
    pub unresolved: Poly,
}

/// An eigenvalue with an eigenvector whose coordinates are all nonzero,
/// searched with default settings.
pub fn nondegenerate_eigenvalue(d: &Matrix) -> Result<Option<(Scalar, Vec<Scalar>)>> {
    Ok(nondegenerate_eigenvalue_with(d, EigenSearch::default())?.found)
}

pub fn nondegenerate_eigenvalue_with(d: &Matrix, search: EigenSearch) -> Result<EigenOutcome> {
    let n = d.rows();
    let field = d.field();
    let cp = d.char_poly()?;
    let peeled = peel_roots(&cp);
    let mut rng = seeded(search.seed);
    for (lambda, _) in &peeled.roots {
        let shifted = d.sub(&Matrix::scalar(lambda, n))?;
        let basis = shifted.nullspace();
        let hit = if basis.len() == 1 {
            Some(basis[0].clone()).filter(|v| all_nonzero(v))
        } else {
            find_nondegenerate(&basis, field, search.trials, &mut rng)
        };
        if let Some(v) = hit {
            debug_assert_eq!(d.apply(&v)?, v.iter().map(|x| lambda * x).collect::<Vec<_>>());
            return Ok(EigenOutcome {
                found: Some((lambda.clone(), v)),
                unresolved: peeled.residual,
            });
        }
    }
    Ok(EigenOutcome {
        found: None,
        unresolved: peeled.residual,
    })
}

fn all_nonzero(v: &[Scalar]) -> bool {
    v.iter().all(|x| !x.is_zero())
}

fn combine(basis: &[Vec<Scalar>], coeffs: &[Scalar]) -> Vec<Scalar> {
    let n = basis[0].len();
    (0..n)
        .map(|k| {
            basis
                .iter()
                .zip(coeffs)
                .fold(coeffs[0].zero_like(), |acc, (b, c)| &acc + &(c * &b[k]))
        })
        .collect()
}

/// Random combinations first, then every coefficient vector in
/// `{-2..=2}^k` up to a fixed cap.
fn find_nondegenerate<R: Rng>(
    basis: &[Vec<Scalar>],
    field: crate::exactnum::Field,
    trials: usize,
    rng: &mut R,
) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return None;
    }
    for v in basis {
        if all_nonzero(v) {
            return Some(v.clone());
        }
    }
    for _ in 0..trials {
        let coeffs: Vec<Scalar> = (0..basis.len()).map(|_| random_scalar(field, rng, 5)).collect();
        let v = combine(basis, &coeffs);
        if all_nonzero(&v) {
            return Some(v);
        }
    }
    const SWEEP_CAP: usize = 20_000;
    let k = basis.len();
    let mut digits = vec![0usize; k];
    for _ in 0..SWEEP_CAP {
        let coeffs: Vec<Scalar> = digits.iter().map(|&d| Scalar::from_int(field, d as i64 - 2)).collect();
        let v = combine(basis, &coeffs);
        if all_nonzero(&v) {
            return Some(v);
        }
        // odometer over 0..5
        let mut pos = 0;
        loop {
            if pos == k {
                return None;
            }
            digits[pos] += 1;
            if digits[pos] < 5 {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
    None
}

/// Solutions of `q + q⁻¹ = -λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSolution {
    /// Distinct roots of `q² + λq + 1` with multiplicities.
    Roots(Vec<(Scalar, usize)>),
    /// `q² + λq + 1` has no root in the base field.
    Irreducible(Poly),
}

pub fn solve_q(lambda: &Scalar) -> QSolution {
    let one = lambda.one_like();
    let p = Poly::new(lambda.field(), vec![one.clone(), lambda.clone(), one]).expect("single field");
    let peeled = peel_roots(&p);
    if peeled.roots.is_empty() {
        QSolution::Irreducible(p)
    } else {
        QSolution::Roots(peeled.roots)
    }
}

/// The full classification datum: symmetry, nondegenerate forms, no ADET
/// component and the trace equation at `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub symmetric: bool,
    pub forms_nondegenerate: bool,
    pub adet_free: bool,
    pub star_holds: bool,
    pub q_used: Scalar,
    /// Component vertex names with their types, when symmetry holds.
    pub components: Vec<(Vec<String>, GraphType)>,
    /// Per-vertex residuals of the trace equation, when it could be evaluated.
    pub residuals: Option<Vec<Scalar>>,
    pub failures: Vec<String>,
}

impl ClassificationVerdict {
    pub fn accept(&self) -> bool {
        self.symmetric && self.forms_nondegenerate && self.adet_free && self.star_holds
    }
}

pub fn classify(g: &ModulatedGraph, q: &Scalar) -> ClassificationVerdict {
    let mut v = ClassificationVerdict {
        symmetric: false,
        forms_nondegenerate: false,
        adet_free: false,
        star_holds: false,
        q_used: q.clone(),
        components: Vec::new(),
        residuals: None,
        failures: Vec::new(),
    };
    match g.check_symmetric() {
        Ok(()) => v.symmetric = true,
        Err(e) => v.failures.push(format!("{}", e)),
    }
    match g.check_forms() {
        Ok(()) => v.forms_nondegenerate = v.symmetric,
        Err(e) => v.failures.push(format!("{}", e)),
    }
    if v.symmetric {
        match g.classify_all() {
            Ok(types) => {
                v.adet_free = true;
                for (comp, t) in types {
                    let names: Vec<String> = comp.iter().map(|&i| g.names()[i].clone()).collect();
                    if t.is_adet() {
                        v.adet_free = false;
                        v.failures.push(format!("ADET component {}", t));
                    }
                    v.components.push((names, t));
                }
            }
            Err(e) => v.failures.push(format!("{}", e)),
        }
    }
    if q.field() != g.field() {
        v.failures
            .push(format!("q = {} is not in the graph's field {}", q, g.field()));
    } else if q.is_zero() {
        v.failures.push(String::from("q must be nonzero"));
    } else if v.symmetric && v.forms_nondegenerate {
        match check_star(g, q) {
            Ok(sc) => {
                for (i, r) in sc.residuals.iter().enumerate() {
                    if !r.is_zero() {
                        v.failures.push(format!(
                            "trace equation fails at vertex {}: residual {}",
                            g.names()[i],
                            r
                        ));
                    }
                }
                v.star_holds = sc.holds;
                v.residuals = Some(sc.residuals);
            }
            Err(e) => v.failures.push(format!("{}", e)),
        }
    }
    v
}
