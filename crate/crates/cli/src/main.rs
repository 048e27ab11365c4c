//! `qsl2`: command-line front end for `qsl2-core`.
//!
//! Exit codes: 0 accept, 1 reject, 2 malformed input, 3 budget exceeded.

mod input;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qsl2_core::hopfe::{self, HopfPresentation};
use qsl2_core::preproj;
use qsl2_core::starcls::{self, EigenSearch, QSolution};
use qsl2_core::tlcat::{self, GradedSpaceRep, TLElement, TlExpr};
use qsl2_core::{random, Budget, Error, Field, ModulatedGraph, Scalar};
use serde::Serialize;

use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            Error::QuantumIntegerZero(_) | Error::ZigZagFailure | Error::ClassificationMismatch(_) | Error::NotAdet => {
                CliError::Failed(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qsl2",
    version,
    about = "Exact computations for module categories over quantum SL(2)"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    output: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full classification verdict for a graph with forms.
    Classify {
        graph: PathBuf,
        #[arg(long)]
        q: String,
    },
    /// Checks the trace equation at every vertex.
    StarCheck {
        graph: PathBuf,
        #[arg(long)]
        q: String,
    },
    /// Rescales the forms along a nondegenerate eigenvector of D and solves for q.
    StarNormalize {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        trials: usize,
    },
    /// Graded dimensions of the preprojective algebra.
    Hilbert {
        graph: PathBuf,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        compare_expected: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        trials: usize,
    },
    /// Graded dimensions of the quadratic dual and the Euler convolution.
    QuadDual {
        graph: PathBuf,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluates a Temperley-Lieb expression.
    Tl {
        expr: String,
        #[arg(long, default_value = "qvar")]
        field: String,
        #[arg(long)]
        q: Option<String>,
        /// Also evaluates through the graded realization of this graph.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// The Jones-Wenzl idempotent on n strands.
    Jw {
        n: usize,
        #[arg(long, default_value = "qvar")]
        field: String,
        #[arg(long)]
        q: Option<String>,
    },
    /// The Hopf algebras H(E).
    Hopf {
        #[command(subcommand)]
        command: HopfCommand,
    },
}

#[derive(Subcommand, Debug)]
enum HopfCommand {
    /// The 2n² defining relations.
    Relations { form: PathBuf },
    /// Cumulative filtered dimensions up to word length N.
    Dims {
        form: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    /// Comodule-map and antipode identities.
    Check { form: PathBuf },
    /// Membership of the quantum SL(2) relations for the calibrated form.
    Slq2 {
        #[arg(long, default_value = "qvar")]
        field: String,
        #[arg(long)]
        q: Option<String>,
    },
}

/// A finished report with its accept/reject outcome.
struct Outcome {
    text: String,
    accept: bool,
}

fn budget_from_env() -> Result<Budget, CliError> {
    let Ok(raw) = std::env::var("QSL2_BUDGET") else {
        return Ok(Budget::default());
    };
    let bad = || CliError::Input(format!("QSL2_BUDGET: expected N or paths=N,words=M, found {:?}", raw));
    let mut b = Budget::default();
    if let Ok(n) = raw.trim().parse::<usize>() {
        return Ok(Budget {
            max_paths: n,
            max_words: n,
        });
    }
    for part in raw.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(bad)?;
        let v: usize = v.trim().parse().map_err(|_| bad())?;
        match k.trim() {
            "paths" => b.max_paths = v,
            "words" => b.max_words = v,
            _ => return Err(bad()),
        }
    }
    Ok(b)
}

fn parse_q(field: Field, q: &str) -> Result<Scalar, CliError> {
    Scalar::parse(field, q).map_err(|e| CliError::Input(format!("--q: {}", e)))
}

/// `--field` and `--q` for commands without a graph; `q` defaults to the
/// generator of ℚ(q).
fn field_and_q(field: &str, q: Option<&str>) -> Result<(Field, Scalar), CliError> {
    let field = input::parse_field(field, "--field")?;
    let q = match (q, field) {
        (Some(text), _) => parse_q(field, text)?,
        (None, Field::RationalFunction) => Scalar::q_var(),
        (None, _) => return Err(CliError::Input(format!("--q is required over {}", field))),
    };
    Ok((field, q))
}

fn with_forms_or_random(g: ModulatedGraph, seed: u64) -> Result<(ModulatedGraph, bool), CliError> {
    if g.has_forms() {
        return Ok((g, true));
    }
    let forms = random::random_forms(g.field(), g.dims(), &mut random::seeded(seed));
    Ok((g.with_forms(forms)?, false))
}

#[derive(Serialize)]
struct ComponentOut {
    vertices: Vec<String>,
    r#type: String,
}

#[derive(Serialize)]
struct ClassifyOut {
    command: &'static str,
    field: String,
    q: String,
    verdict: &'static str,
    symmetric: bool,
    forms_nondegenerate: bool,
    adet_free: bool,
    star_holds: bool,
    components: Vec<ComponentOut>,
    residuals: Option<Vec<String>>,
    reasons: Vec<String>,
}

fn classify(graph: &Path, q: &str, fmt: Format) -> Result<Outcome, CliError> {
    let g = input::load_graph(graph)?;
    let q = parse_q(g.field(), q)?;
    let v = starcls::classify(&g, &q);
    let accept = v.accept();
    let report = ClassifyOut {
        command: "classify",
        field: g.field().to_string(),
        q: output::scalar(&q),
        verdict: if accept { "accept" } else { "reject" },
        symmetric: v.symmetric,
        forms_nondegenerate: v.forms_nondegenerate,
        adet_free: v.adet_free,
        star_holds: v.star_holds,
        components: v
            .components
            .iter()
            .map(|(names, t)| ComponentOut {
                vertices: names.clone(),
                r#type: t.to_string(),
            })
            .collect(),
        residuals: v.residuals.as_deref().map(output::scalars),
        reasons: v.failures.clone(),
    };
    Ok(Outcome {
        text: output::render(&report, fmt),
        accept,
    })
}

#[derive(Serialize)]
struct StarCheckOut {
    command: &'static str,
    field: String,
    q: String,
    loop_value: String,
    d_matrix: Vec<Vec<String>>,
    row_sums: Vec<String>,
    residuals: Vec<String>,
    holds: bool,
}

fn star_check(graph: &Path, q: &str, fmt: Format) -> Result<Outcome, CliError> {
    let g = input::load_graph(graph)?;
    let q = parse_q(g.field(), q)?;
    let d = starcls::d_matrix(&g)?;
    let check = starcls::check_star(&g, &q)?;
    let row_sums: Vec<Scalar> = (0..d.rows())
        .map(|i| qsl2_core::exactnum::sum(Scalar::zero(g.field()), d.row(i)))
        .collect();
    let report = StarCheckOut {
        command: "star-check",
        field: g.field().to_string(),
        q: output::scalar(&q),
        loop_value: output::scalar(&Scalar::loop_value(&q)?),
        d_matrix: output::matrix(&d),
        row_sums: output::scalars(&row_sums),
        residuals: output::scalars(&check.residuals),
        holds: check.holds,
    };
    Ok(Outcome {
        text: output::render(&report, fmt),
        accept: check.holds,
    })
}

#[derive(Serialize)]
struct RootOut {
    q: String,
    multiplicity: usize,
    star_holds: bool,
}

#[derive(Serialize)]
struct StarNormalizeOut {
    command: &'static str,
    field: String,
    seed: u64,
    trials: usize,
    d_matrix: Vec<Vec<String>>,
    eigenvalue: Option<String>,
    scaling: Option<Vec<String>>,
    q_roots: Option<Vec<RootOut>>,
    /// `q² + λq + 1` when it has no root in the field.
    q_irreducible: Option<Vec<String>>,
    /// Part of the characteristic polynomial with no roots in the field.
    unresolved: Vec<String>,
    graph: Option<input::GraphInput>,
}

fn star_normalize(graph: &Path, seed: u64, trials: usize, fmt: Format) -> Result<Outcome, CliError> {
    let g = input::load_graph(graph)?;
    let d = starcls::d_matrix(&g)?;
    let outcome = starcls::nondegenerate_eigenvalue_with(&d, EigenSearch { seed, trials })?;
    let mut report = StarNormalizeOut {
        command: "star-normalize",
        field: g.field().to_string(),
        seed,
        trials,
        d_matrix: output::matrix(&d),
        eigenvalue: None,
        scaling: None,
        q_roots: None,
        q_irreducible: None,
        unresolved: output::poly(&outcome.unresolved),
        graph: None,
    };
    let accept = outcome.found.is_some();
    if let Some((lambda, r)) = outcome.found {
        let normalized = starcls::rescale(&g, &r)?;
        match starcls::solve_q(&lambda) {
            QSolution::Roots(roots) => {
                let mut out = Vec::new();
                for (q, m) in roots {
                    let holds = starcls::check_star(&normalized, &q)?.holds;
                    out.push(RootOut {
                        q: output::scalar(&q),
                        multiplicity: m,
                        star_holds: holds,
                    });
                }
                report.q_roots = Some(out);
            }
            QSolution::Irreducible(p) => report.q_irreducible = Some(output::poly(&p)),
        }
        report.eigenvalue = Some(output::scalar(&lambda));
        report.scaling = Some(output::scalars(&r));
        report.graph = Some(input::graph_to_input(&normalized));
    }
    Ok(Outcome {
        text: output::render(&report, fmt),
        accept,
    })
}

#[derive(Serialize)]
struct HilbertOut {
    command: &'static str,
    field: String,
    max_degree: usize,
    seed: u64,
    trials: usize,
    forms: &'static str,
    degrees: Vec<usize>,
    matrices: Vec<preproj::DimTable>,
    expected: Option<Vec<preproj::DimTable>>,
    expected_note: Option<String>,
    trial_mismatches: Vec<Option<usize>>,
    verdict: String,
}

fn hilbert(
    graph: &Path,
    max_degree: usize,
    compare: bool,
    seed: u64,
    trials: usize,
    budget: Budget,
    fmt: Format,
) -> Result<Outcome, CliError> {
    let g = input::load_graph(graph)?;
    let r = preproj::flatness_check_with(&g, max_degree, seed, trials, budget)?;
    let mut first = r.trial_mismatches.iter().flatten().copied().min();
    if compare {
        first = first.into_iter().chain(r.expected_mismatch).min();
    }
    let verdict = match first {
        None => format!("consistent to degree {}", max_degree),
        Some(n) => format!("discrepancy at degree {}", n),
    };
    let report = HilbertOut {
        command: "hilbert",
        field: g.field().to_string(),
        max_degree,
        seed,
        trials,
        forms: if r.used_given_forms { "given" } else { "random" },
        degrees: (0..=max_degree).collect(),
        matrices: r.dims.dims.clone(),
        expected: if compare { r.expected.clone() } else { None },
        expected_note: if compare { r.expected_skipped.clone() } else { None },
        trial_mismatches: r.trial_mismatches.clone(),
        verdict,
    };
    Ok(Outcome {
        text: output::render(&report, fmt),
        accept: first.is_none(),
    })
}

#[derive(Serialize)]
struct QuadDualOut {
    command: &'static str,
    field: String,
    max_degree: usize,
    forms: &'static str,
    degrees: Vec<usize>,
    dual: Vec<preproj::DimTable>,
    algebra: Vec<preproj::DimTable>,
    convolution: Vec<preproj::DimTable>,
    convolution_holds: bool,
    first_failure: Option<usize>,
}

fn quad_dual(graph: &Path, max_degree: usize, seed: u64, budget: Budget, fmt: Format) -> Result<Outcome, CliError> {
    let g = input::load_graph(graph)?;
    let field = g.field().to_string();
    let (g, given) = with_forms_or_random(g, seed)?;
    let k = preproj::koszul_numerics_with(&g, max_degree, budget)?;
    let report = QuadDualOut {
        command: "quad-dual",
        field,
        max_degree,
        forms: if given { "given" } else { "random" },
        degrees: (0..=max_degree).collect(),
        dual: k.dual.dims.clone(),
        algebra: k.algebra.dims.clone(),
        convolution: k.convolution.clone(),
        convolution_holds: k.holds(),
        first_failure: k.first_failure,
    };
    Ok(Outcome {
        text: output::render(&report, fmt),
        accept: k.holds(),
    })
}

#[derive(Serialize)]
struct TermOut {
    diagram: String,
    coefficient: String,
}

#[derive(Serialize)]
struct ElementOut {
    command: &'static str,
    input: String,
    field: String,
    q: String,
    source: usize,
    target: usize,
    result: String,
    terms: Vec<TermOut>,
    graded_map: Option<Vec<Vec<String>>>,
}

fn element_report(command: &'static str, input: String, q: &Scalar, e: &TLElement) -> ElementOut {
    ElementOut {
        command,
        input,
        field: q.field().to_string(),
        q: output::scalar(q),
        source: e.source(),
        target: e.target(),
        result: e.to_string(),
        terms: e
            .terms()
            .map(|(d, c)| TermOut {
                diagram: d.to_string(),
                coefficient: output::scalar(c),
            })
            .collect(),
        graded_map: None,
    }
}

fn tl(
    expr: &str,
    field: &str,
    q: Option<&str>,
    graph: Option<&Path>,
    budget: Budget,
    fmt: Format,
) -> Result<Outcome, CliError> {
    let parsed = TlExpr::parse(expr)?;
    let (field, q) = match graph {
        Some(_) if q.is_none() && field == "qvar" => (Field::RationalFunction, Scalar::q_var()),
        _ => field_and_q(field, q)?,
    };
    let mut graded = None;
    if let Some(path) = graph {
        let g = input::load_graph(path)?;
        if g.field() != field {
            return Err(CliError::Input(format!(
                "{}: graph field {} differs from --field {}",
                path.display(),
                g.field(),
                field
            )));
        }
        let rep = GradedSpaceRep::new(&g, &q, budget)?;
        graded = Some(output::matrix(&parsed.to_graded_map(&rep)?.matrix));
    }
    let e = parsed.to_element(&q)?;
    let mut report = element_report("tl", expr.to_string(), &q, &e);
    report.graded_map = graded;
    Ok(Outcome {
        text: output::render(&report, fmt),
        accept: true,
    })
}

fn jw(n: usize, field: &str, q: Option<&str>, fmt: Format) -> Result<Outcome, CliError> {
    let (_, q) = field_and_q(field, q)?;
    let p = tlcat::jones_wenzl(n, &q)?;
    let report = element_report("jw", format!("jw({})", n), &q, &p);
    Ok(Outcome {
        text: output::render(&report, fmt),
        accept: true,
    })
}

#[derive(Serialize)]
struct HopfRelationsOut {
    command: &'static str,
    field: String,
    n: usize,
    form: Vec<Vec<String>>,
    relations: Vec<String>,
}

#[derive(Serialize)]
struct HopfDimsOut {
    command: &'static str,
    field: String,
    n: usize,
    max_degree: usize,
    cumulative: Vec<usize>,
}

#[derive(Serialize)]
struct HopfCheckOut {
    command: &'static str,
    field: String,
    n: usize,
    comodule_map: bool,
    antipode: bool,
}

#[derive(Serialize)]
struct RelationOut {
    relation: String,
    member: bool,
}

#[derive(Serialize)]
struct Slq2Out {
    command: &'static str,
    field: String,
    q: String,
    form: Vec<Vec<String>>,
    relations: Vec<RelationOut>,
    verdict: bool,
}

fn load_presentation(path: &Path) -> Result<HopfPresentation, CliError> {
    let e = input::load_form(path)?;
    hopfe::h_relations(&e).map_err(|err| CliError::Input(format!("{}: {}", path.display(), err)))
}

fn hopf(cmd: &HopfCommand, budget: Budget, fmt: Format) -> Result<Outcome, CliError> {
    match cmd {
        HopfCommand::Relations { form } => {
            let h = load_presentation(form)?;
            let report = HopfRelationsOut {
                command: "hopf relations",
                field: h.field().to_string(),
                n: h.size(),
                form: output::matrix(h.form()),
                relations: h.relations().iter().map(|r| r.to_string()).collect(),
            };
            Ok(Outcome {
                text: output::render(&report, fmt),
                accept: true,
            })
        }
        HopfCommand::Dims { form, max_degree } => {
            let h = load_presentation(form)?;
            let dims = hopfe::filtered_dims_with(&h, *max_degree, budget)?;
            let report = HopfDimsOut {
                command: "hopf dims",
                field: h.field().to_string(),
                n: h.size(),
                max_degree: *max_degree,
                cumulative: dims,
            };
            Ok(Outcome {
                text: output::render(&report, fmt),
                accept: true,
            })
        }
        HopfCommand::Check { form } => {
            let h = load_presentation(form)?;
            let (c, a) = (hopfe::comodule_map_check(&h), hopfe::antipode_check(&h));
            let report = HopfCheckOut {
                command: "hopf check",
                field: h.field().to_string(),
                n: h.size(),
                comodule_map: c,
                antipode: a,
            };
            Ok(Outcome {
                text: output::render(&report, fmt),
                accept: c && a,
            })
        }
        HopfCommand::Slq2 { field, q } => {
            let (field, q) = field_and_q(field, q.as_deref())?;
            let r = hopfe::slq2_specialization(&q).map_err(|e| CliError::Input(format!("--q: {}", e)))?;
            let report = Slq2Out {
                command: "hopf slq2",
                field: field.to_string(),
                q: output::scalar(&q),
                form: output::matrix(&r.form),
                relations: r
                    .relations
                    .iter()
                    .map(|(s, ok)| RelationOut {
                        relation: s.clone(),
                        member: *ok,
                    })
                    .collect(),
                verdict: r.verdict,
            };
            Ok(Outcome {
                text: output::render(&report, fmt),
                accept: r.verdict,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let budget = budget_from_env()?;
    let fmt = cli.output;
    match &cli.command {
        Command::Classify { graph, q } => classify(graph, q, fmt),
        Command::StarCheck { graph, q } => star_check(graph, q, fmt),
        Command::StarNormalize { graph, seed, trials } => star_normalize(graph, *seed, *trials, fmt),
        Command::Hilbert {
            graph,
            max_degree,
            compare_expected,
            seed,
            trials,
        } => hilbert(graph, *max_degree, *compare_expected, *seed, *trials, budget, fmt),
        Command::QuadDual {
            graph,
            max_degree,
            seed,
        } => quad_dual(graph, *max_degree, *seed, budget, fmt),
        Command::Tl { expr, field, q, graph } => tl(expr, field, q.as_deref(), graph.as_deref(), budget, fmt),
        Command::Jw { n, field, q } => jw(*n, field, q.as_deref(), fmt),
        Command::Hopf { command } => hopf(command, budget, fmt),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.accept { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.code())
        }
    }
}
