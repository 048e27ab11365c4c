//! JSON input: graphs with optional forms, and single forms for `hopf`.
//!
//! ```json
//! {"field": "qvar", "vertices": ["v"], "dims": [[0, 0, 2]],
//!  "forms": [[0, 0, [[0, "-q"], [1, 0]]]]}
//! ```
//!
//! `dims` lists each unordered pair once (loops included). Vertices may be
//! referred to by index or by name. Scalars are JSON integers or strings
//! in the field's syntax.

use std::collections::BTreeMap;
use std::path::Path;

use qsl2_core::{Field, Matrix, ModulatedGraph, Scalar};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Deserialize, Serialize, Clone, Debug)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Name(String),
}

#[derive(Deserialize, Serialize, Clone, Debug)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

/// `(i, j, matrix)` with rows of scalars.
pub type FormEntry = (VertexRef, VertexRef, Vec<Vec<ScalarText>>);

#[derive(Deserialize, Serialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct GraphInput {
    pub field: String,
    pub vertices: Vec<String>,
    pub dims: Vec<(VertexRef, VertexRef, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forms: Option<Vec<FormEntry>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct FormInput {
    pub field: String,
    pub matrix: Vec<Vec<ScalarText>>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))
}

pub fn parse_field(s: &str, at: &str) -> Result<Field, CliError> {
    s.parse().map_err(|e| CliError::Input(format!("{}: {}", at, e)))
}

pub fn parse_scalar(field: Field, s: &ScalarText, at: &str) -> Result<Scalar, CliError> {
    match s {
        ScalarText::Int(c) => Ok(Scalar::from_int(field, *c)),
        ScalarText::Text(t) => Scalar::parse(field, t).map_err(|e| CliError::Input(format!("{}: {}", at, e))),
    }
}

fn parse_matrix(field: Field, rows: &[Vec<ScalarText>], at: &str) -> Result<Matrix, CliError> {
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let mut parsed = Vec::with_capacity(row.len());
        for (c, x) in row.iter().enumerate() {
            parsed.push(parse_scalar(field, x, &format!("{}[{}][{}]", at, r, c))?);
        }
        out.push(parsed);
    }
    let width = out.first().map_or(0, Vec::len);
    if out.iter().any(|r| r.len() != width) {
        return Err(CliError::Input(format!("{}: rows have different lengths", at)));
    }
    if out.is_empty() {
        return Ok(Matrix::zeros(field, 0, 0));
    }
    Matrix::from_rows(field, out).map_err(|e| CliError::Input(format!("{}: {}", at, e)))
}

fn resolve(names: &[String], v: &VertexRef, at: &str) -> Result<usize, CliError> {
    match v {
        VertexRef::Index(i) if *i < names.len() => Ok(*i),
        VertexRef::Index(i) => Err(CliError::Input(format!(
            "{}: vertex index {} out of range (graph has {} vertices)",
            at,
            i,
            names.len()
        ))),
        VertexRef::Name(n) => names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| CliError::Input(format!("{}: unknown vertex {:?}", at, n))),
    }
}

/// Builds the graph without checking nondegeneracy, so that callers can
/// report it as a property of the data.
pub fn load_graph(path: &Path) -> Result<ModulatedGraph, CliError> {
    let input: GraphInput = parse_json(path)?;
    graph_from_input(&input, &path.display().to_string())
}

pub fn graph_from_input(input: &GraphInput, source: &str) -> Result<ModulatedGraph, CliError> {
    let field = parse_field(&input.field, &format!("{}: field", source))?;
    let names = &input.vertices;
    for (k, n) in names.iter().enumerate() {
        if names[..k].contains(n) {
            return Err(CliError::Input(format!(
                "{}: vertices[{}]: duplicate name {:?}",
                source, k, n
            )));
        }
    }
    let n = names.len();
    let mut dims = vec![vec![0usize; n]; n];
    let mut seen = vec![vec![false; n]; n];
    for (k, (a, b, d)) in input.dims.iter().enumerate() {
        let at = format!("{}: dims[{}]", source, k);
        let (i, j) = (resolve(names, a, &at)?, resolve(names, b, &at)?);
        if seen[i][j] {
            return Err(CliError::Input(format!(
                "{}: pair ({}, {}) listed twice",
                at, names[i], names[j]
            )));
        }
        seen[i][j] = true;
        seen[j][i] = true;
        dims[i][j] = *d;
        dims[j][i] = *d;
    }
    let forms = match &input.forms {
        None => None,
        Some(list) => {
            let mut forms = BTreeMap::new();
            for (k, (a, b, m)) in list.iter().enumerate() {
                let at = format!("{}: forms[{}]", source, k);
                let (i, j) = (resolve(names, a, &at)?, resolve(names, b, &at)?);
                let m = parse_matrix(field, m, &format!("{}[2]", at))?;
                let d = dims[i][j];
                if d == 0 {
                    return Err(CliError::Input(format!(
                        "{}: no edge between {} and {}",
                        at, names[i], names[j]
                    )));
                }
                if (m.rows(), m.cols()) != (d, d) {
                    return Err(CliError::Input(format!(
                        "{}: expected a {}×{} matrix, found {}×{}",
                        at,
                        d,
                        d,
                        m.rows(),
                        m.cols()
                    )));
                }
                if forms.insert((i, j), m).is_some() {
                    return Err(CliError::Input(format!(
                        "{}: form ({}, {}) given twice",
                        at, names[i], names[j]
                    )));
                }
            }
            Some(forms)
        }
    };
    ModulatedGraph::unchecked(field, names.clone(), dims, forms)
        .map_err(|e| CliError::Input(format!("{}: {}", source, e)))
}

/// The graph in input format, forms included when present.
pub fn graph_to_input(g: &ModulatedGraph) -> GraphInput {
    let n = g.vertex_count();
    let mut dims = Vec::new();
    for i in 0..n {
        for j in i..n {
            if g.dim(i, j) > 0 {
                dims.push((VertexRef::Index(i), VertexRef::Index(j), g.dim(i, j)));
            }
        }
    }
    let forms = g.forms().map(|fs| {
        fs.iter()
            .map(|(&(i, j), m)| {
                let rows = m
                    .to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| ScalarText::Text(x.to_string())).collect())
                    .collect();
                (VertexRef::Index(i), VertexRef::Index(j), rows)
            })
            .collect()
    });
    GraphInput {
        field: g.field().to_string(),
        vertices: g.names().to_vec(),
        dims,
        forms,
    }
}

pub fn load_form(path: &Path) -> Result<Matrix, CliError> {
    let input: FormInput = parse_json(path)?;
    let source = path.display().to_string();
    let field = parse_field(&input.field, &format!("{}: field", source))?;
    parse_matrix(field, &input.matrix, &format!("{}: matrix", source))
}
