//! Modulated graphs and ADET classification.
//!
//! A modulated graph has a finite vertex set `I`, a dimension `dim V_ij` for
//! every ordered pair and, optionally, a form matrix `E_ij` of shape
//! `dim V_ij × dim V_ji` for each nonzero pair. The underlying graph joins
//! `i` and `j` by `dim V_ij` edges; `dim V_ii` counts loops at `i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chebpoly::first_vanishing_index;
use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    /// Tadpole: a path of `n` vertices with one loop at an end.
    T(usize),
    NonAdet,
}

impl GraphType {
    pub fn is_adet(&self) -> bool {
        *self != GraphType::NonAdet
    }
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphType::A(n) => write!(f, "A({})", n),
            GraphType::D(n) => write!(f, "D({})", n),
            GraphType::E6 => f.write_str("E6"),
            GraphType::E7 => f.write_str("E7"),
            GraphType::E8 => f.write_str("E8"),
            GraphType::T(n) => write!(f, "T({})", n),
            GraphType::NonAdet => f.write_str("NonADET"),
        }
    }
}

/// The Coxeter number `h`, the index with `P_{h-1}(A) = 0`.
pub fn coxeter_number(t: GraphType) -> Result<usize> {
    Ok(match t {
        GraphType::A(n) => n + 1,
        GraphType::D(n) => 2 * n - 2,
        GraphType::E6 => 12,
        GraphType::E7 => 18,
        GraphType::E8 => 30,
        GraphType::T(n) => 2 * n + 1,
        GraphType::NonAdet => return Err(Error::NotAdet),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulatedGraph {
    field: Field,
    names: Vec<String>,
    dims: Vec<Vec<usize>>,
    forms: Option<BTreeMap<(usize, usize), Matrix>>,
}

impl ModulatedGraph {
    /// A graph without forms. Only combinatorial operations apply.
    pub fn bare(field: Field, names: Vec<String>, dims: Vec<Vec<usize>>) -> Result<Self> {
        check_square(&names, &dims)?;
        Ok(ModulatedGraph {
            field,
            names,
            dims,
            forms: None,
        })
    }

    /// A graph with forms, validated: symmetric dimensions, a form for every
    /// nonzero pair of the right shape, every form invertible.
    pub fn new(
        field: Field,
        names: Vec<String>,
        dims: Vec<Vec<usize>>,
        forms: BTreeMap<(usize, usize), Matrix>,
    ) -> Result<Self> {
        let g = Self::unchecked(field, names, dims, Some(forms))?;
        g.check_symmetric()?;
        g.check_forms()?;
        Ok(g)
    }

    /// Stores the data after shape checks only, so that callers such as a
    /// classifier can report asymmetry or degeneracy instead of failing.
    pub fn unchecked(
        field: Field,
        names: Vec<String>,
        dims: Vec<Vec<usize>>,
        forms: Option<BTreeMap<(usize, usize), Matrix>>,
    ) -> Result<Self> {
        check_square(&names, &dims)?;
        if let Some(forms) = &forms {
            let n = names.len();
            for (&(i, j), m) in forms {
                if i >= n || j >= n {
                    return Err(Error::InvalidGraph(format!("form for unknown pair ({}, {})", i, j)));
                }
                if m.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field,
                        right: m.field(),
                    });
                }
                if dims[i][j] == 0 {
                    return Err(Error::InvalidGraph(format!(
                        "form given for ({}, {}) but dim V_ij = 0",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(ModulatedGraph {
            field,
            names,
            dims,
            forms,
        })
    }

    /// A graph with integer-named vertices `0..n`.
    pub fn from_dims(field: Field, dims: Vec<Vec<usize>>) -> Result<Self> {
        let names = (0..dims.len()).map(|i| i.to_string()).collect();
        Self::bare(field, names, dims)
    }

    /// Attaches forms to a bare graph, with full validation.
    pub fn with_forms(&self, forms: BTreeMap<(usize, usize), Matrix>) -> Result<Self> {
        Self::new(self.field, self.names.clone(), self.dims.clone(), forms)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.dims[i][j]
    }

    pub fn has_forms(&self) -> bool {
        self.forms.is_some()
    }

    pub fn forms(&self) -> Option<&BTreeMap<(usize, usize), Matrix>> {
        self.forms.as_ref()
    }

    /// `E_ij`, if forms are present and `dim V_ij > 0`.
    pub fn form(&self, i: usize, j: usize) -> Option<&Matrix> {
        self.forms.as_ref()?.get(&(i, j))
    }

    /// The form `E_ij`, or `MissingForms`.
    pub fn require_form(&self, i: usize, j: usize) -> Result<&Matrix> {
        let forms = self.forms.as_ref().ok_or(Error::MissingForms)?;
        forms.get(&(i, j)).ok_or(Error::DegenerateForm { i, j })
    }

    pub fn check_symmetric(&self) -> Result<()> {
        let n = self.vertex_count();
        for i in 0..n {
            for j in i + 1..n {
                if self.dims[i][j] != self.dims[j][i] {
                    return Err(Error::AsymmetricDims {
                        i,
                        j,
                        dij: self.dims[i][j],
                        dji: self.dims[j][i],
                    });
                }
            }
        }
        Ok(())
    }

    /// Every nonzero pair carries a square invertible form.
    pub fn check_forms(&self) -> Result<()> {
        let forms = self.forms.as_ref().ok_or(Error::MissingForms)?;
        let n = self.vertex_count();
        for i in 0..n {
            for j in 0..n {
                let d = self.dims[i][j];
                if d == 0 {
                    continue;
                }
                let m = forms.get(&(i, j)).ok_or(Error::DegenerateForm { i, j })?;
                if m.rows() != d || m.cols() != self.dims[j][i] || m.rank() != d {
                    return Err(Error::DegenerateForm { i, j });
                }
            }
        }
        Ok(())
    }

    /// The adjacency matrix over ℚ: `A_ij = dim V_ij`, loops included.
    pub fn adjacency(&self) -> Result<Matrix> {
        self.check_symmetric()?;
        let rows: Vec<Vec<i64>> = self
            .dims
            .iter()
            .map(|r| r.iter().map(|&d| d as i64).collect())
            .collect();
        Ok(Matrix::from_ints(Field::Rational, &rows))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::new();
        for root in 0..n {
            if label[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut comp = vec![root];
            label[root] = id;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                k += 1;
                for (w, lw) in label.iter_mut().enumerate() {
                    if *lw == usize::MAX && (self.dims[v][w] > 0 || self.dims[w][v] > 0) {
                        *lw = id;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The induced subgraph on `vertices`, in the given order.
    pub fn subgraph(&self, vertices: &[usize]) -> ModulatedGraph {
        let dims = vertices
            .iter()
            .map(|&i| vertices.iter().map(|&j| self.dims[i][j]).collect())
            .collect();
        let forms = self.forms.as_ref().map(|f| {
            let mut out = BTreeMap::new();
            for (a, &i) in vertices.iter().enumerate() {
                for (b, &j) in vertices.iter().enumerate() {
                    if let Some(m) = f.get(&(i, j)) {
                        out.insert((a, b), m.clone());
                    }
                }
            }
            out
        });
        ModulatedGraph {
            field: self.field,
            names: vertices.iter().map(|&i| self.names[i].clone()).collect(),
            dims,
            forms,
        }
    }

    /// Relabels vertices: vertex `i` becomes vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> ModulatedGraph {
        let n = self.vertex_count();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        self.subgraph(&inv)
    }

    /// Classifies a connected component, cross-checking the pattern match
    /// against Chebyshev vanishing.
    pub fn classify_component(&self, component: &[usize]) -> Result<GraphType> {
        self.check_symmetric()?;
        let sub = self.subgraph(component);
        let combinatorial = pattern_type(&sub.dims);
        let a = sub.adjacency()?;
        let s = component.len();
        let bound = (2 * s + 1).max(30);
        let vanishing = first_vanishing_index(&a, bound)?;
        let agrees = match (combinatorial, vanishing) {
            (GraphType::NonAdet, None) => true,
            (t, Some(m)) if t.is_adet() => coxeter_number(t)? == m + 1,
            _ => false,
        };
        if !agrees {
            return Err(Error::ClassificationMismatch(format!(
                "pattern says {}, first vanishing P_m at m = {:?}",
                combinatorial, vanishing
            )));
        }
        Ok(combinatorial)
    }

    /// Types of all components, in component order.
    pub fn classify_all(&self) -> Result<Vec<(Vec<usize>, GraphType)>> {
        self.components()
            .into_iter()
            .map(|c| {
                let t = self.classify_component(&c)?;
                Ok((c, t))
            })
            .collect()
    }

    /// The graph with every `E_ij` replaced by `f(i, j, E_ij)`.
    pub(crate) fn map_forms(
        &self,
        mut f: impl FnMut(usize, usize, &Matrix) -> Result<Matrix>,
    ) -> Result<ModulatedGraph> {
        let forms = self.forms.as_ref().ok_or(Error::MissingForms)?;
        let mut out = BTreeMap::new();
        for (&(i, j), m) in forms {
            out.insert((i, j), f(i, j, m)?);
        }
        Ok(ModulatedGraph {
            forms: Some(out),
            ..self.clone()
        })
    }
}

fn check_square(names: &[String], dims: &[Vec<usize>]) -> Result<()> {
    if dims.len() != names.len() || dims.iter().any(|r| r.len() != names.len()) {
        return Err(Error::InvalidGraph(format!(
            "dimension table must be {}×{}",
            names.len(),
            names.len()
        )));
    }
    Ok(())
}

/// Pattern match of a connected symmetric graph against the ADET families.
fn pattern_type(dims: &[Vec<usize>]) -> GraphType {
    let s = dims.len();
    let mut loops = Vec::new();
    let mut edges = 0;
    let mut degree = vec![0usize; s];
    for i in 0..s {
        if dims[i][i] > 0 {
            if dims[i][i] > 1 {
                return GraphType::NonAdet;
            }
            loops.push(i);
        }
        for j in i + 1..s {
            match dims[i][j] {
                0 => {}
                1 => {
                    edges += 1;
                    degree[i] += 1;
                    degree[j] += 1;
                }
                _ => return GraphType::NonAdet,
            }
        }
    }
    // connected, so a tree iff it has s - 1 edges
    if edges + 1 != s || loops.len() > 1 {
        return GraphType::NonAdet;
    }
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    if let Some(&v) = loops.first() {
        return if max_deg <= 2 && degree[v] <= 1 {
            GraphType::T(s)
        } else {
            GraphType::NonAdet
        };
    }
    if max_deg <= 2 {
        return GraphType::A(s);
    }
    let branch: Vec<usize> = (0..s).filter(|&v| degree[v] >= 3).collect();
    if branch.len() != 1 || degree[branch[0]] != 3 {
        return GraphType::NonAdet;
    }
    let c = branch[0];
    let mut arms: Vec<usize> = (0..s)
        .filter(|&w| w != c && dims[c][w] > 0)
        .map(|start| arm_length(dims, c, start))
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, k] => GraphType::D(k + 3),
        [1, 2, 2] => GraphType::E6,
        [1, 2, 3] => GraphType::E7,
        [1, 2, 4] => GraphType::E8,
        _ => GraphType::NonAdet,
    }
}

/// Number of vertices on the arm leaving `center` through `start`.
fn arm_length(dims: &[Vec<usize>], center: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        let next = (0..dims.len()).find(|&w| w != prev && w != cur && dims[cur][w] > 0);
        match next {
            Some(w) => {
                prev = cur;
                cur = w;
                len += 1;
            }
            None => return len,
        }
    }
}

/// Standard test graphs as dimension tables.
pub mod families {
    use alloc::vec;
    use alloc::vec::Vec;

    fn empty(n: usize) -> Vec<Vec<usize>> {
        vec![vec![0; n]; n]
    }

    fn join(d: &mut [Vec<usize>], i: usize, j: usize, k: usize) {
        d[i][j] = k;
        d[j][i] = k;
    }

    /// The path `A_n`.
    pub fn path(n: usize) -> Vec<Vec<usize>> {
        let mut d = empty(n);
        for i in 1..n {
            join(&mut d, i - 1, i, 1);
        }
        d
    }

    /// `D_n`, `n >= 4`: a path of `n - 2` vertices with two leaves at one end.
    pub fn d(n: usize) -> Vec<Vec<usize>> {
        assert!(n >= 4);
        let mut d = path(n - 1);
        d.push(vec![0; n - 1]);
        for row in d.iter_mut() {
            row.resize(n, 0);
        }
        join(&mut d, n - 3, n - 1, 1);
        d
    }

    /// `E_n` for `n` in 6..=8: arms of lengths 1, 2 and `n - 4` at a center.
    pub fn e(n: usize) -> Vec<Vec<usize>> {
        assert!((6..=8).contains(&n));
        star(&[1, 2, n - 4])
    }

    /// The tadpole `T_n`.
    pub fn tadpole(n: usize) -> Vec<Vec<usize>> {
        let mut d = path(n);
        d[n - 1][n - 1] = 1;
        d
    }

    /// A center with arms of the given lengths; the center is vertex 0.
    pub fn star(arms: &[usize]) -> Vec<Vec<usize>> {
        let n = 1 + arms.iter().sum::<usize>();
        let mut d = empty(n);
        let mut next = 1;
        for &len in arms {
            let mut prev = 0;
            for _ in 0..len {
                join(&mut d, prev, next, 1);
                prev = next;
                next += 1;
            }
        }
        d
    }

    /// The cycle `Ã_{n}` on `n + 1` vertices; `Ã_1` is a double edge.
    pub fn affine_a(n: usize) -> Vec<Vec<usize>> {
        if n == 1 {
            return multi_edge(2);
        }
        let m = n + 1;
        let mut d = empty(m);
        for i in 0..m {
            join(&mut d, i, (i + 1) % m, 1);
        }
        d
    }

    /// `D̃_n`, `n >= 4`, on `n + 1` vertices.
    pub fn affine_d(n: usize) -> Vec<Vec<usize>> {
        assert!(n >= 4);
        if n == 4 {
            return star(&[1, 1, 1, 1]);
        }
        // a path 0..=n-2 with an extra leaf at each end
        let m = n + 1;
        let mut d = empty(m);
        for i in 1..n - 1 {
            join(&mut d, i - 1, i, 1);
        }
        join(&mut d, 1, n - 1, 1);
        join(&mut d, n - 3, n, 1);
        d
    }

    /// Two vertices joined by `k` edges.
    pub fn multi_edge(k: usize) -> Vec<Vec<usize>> {
        let mut d = empty(2);
        join(&mut d, 0, 1, k);
        d
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Vec<Vec<usize>> {
        let mut d = empty(n);
        for i in 0..n {
            for j in i + 1..n {
                join(&mut d, i, j, 1);
            }
        }
        d
    }
}
