//! Acceptance run: one PASS/FAIL line per criterion with its time limit.
//!
//! `cargo test -p qsl2-cli --test acceptance`

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use qsl2_core::chebpoly::{cheb_p, cheb_p_matrix_sequence, cheb_q, composition_identity_check};
use qsl2_core::hopfe::{
    antipode_check, comodule_map_check, filtered_dims, h_relations, pbw_count_slq2, slq2_form, slq2_specialization,
};
use qsl2_core::modgraph::families;
use qsl2_core::preproj::{graded_dims, koszul_numerics, quadratic_dual_dims, DimTable};
use qsl2_core::random::{random_forms, random_nondegenerate, random_nonzero, seeded};
use qsl2_core::starcls::{check_star, d_matrix, nondegenerate_eigenvalue, rescale, solve_q, QSolution};
use qsl2_core::tlcat::{functor_image, jones_wenzl, tl_basis, tl_evaluate, TLDiagram, TLElement};
use qsl2_core::{Error, Field, GraphType, Matrix, ModulatedGraph, Scalar};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{:?}", e))
}

fn graph(field: Field, dims: Vec<Vec<usize>>) -> ModulatedGraph {
    ModulatedGraph::from_dims(field, dims).expect("valid dims")
}

fn with_random_forms(field: Field, dims: &[Vec<usize>], seed: u64) -> ModulatedGraph {
    let forms = random_forms(field, dims, &mut seeded(seed));
    graph(field, dims.to_vec())
        .with_forms(forms)
        .expect("nondegenerate forms")
}

fn int_matrix(field: Field, dims: &[Vec<usize>]) -> Matrix {
    let rows: Vec<Vec<i64>> = dims.iter().map(|r| r.iter().map(|&d| d as i64).collect()).collect();
    Matrix::from_ints(field, &rows)
}

// ---------------------------------------------------------------- 1

fn adet_corpus() -> Vec<(String, Vec<Vec<usize>>, GraphType, usize)> {
    // Coxeter numbers written out by hand.
    let mut out = Vec::new();
    for n in 1..=12 {
        out.push((format!("A{}", n), families::path(n), GraphType::A(n), n + 1));
    }
    for n in 4..=12 {
        out.push((format!("D{}", n), families::d(n), GraphType::D(n), 2 * n - 2));
    }
    out.push(("E6".into(), families::e(6), GraphType::E6, 12));
    out.push(("E7".into(), families::e(7), GraphType::E7, 18));
    out.push(("E8".into(), families::e(8), GraphType::E8, 30));
    for n in 1..=12 {
        out.push((format!("T{}", n), families::tadpole(n), GraphType::T(n), 2 * n + 1));
    }
    out
}

fn criterion_1() -> Outcome {
    let corpus = adet_corpus();
    for (name, dims, ty, h) in &corpus {
        let g = graph(Field::Rational, dims.clone());
        let all: Vec<usize> = (0..g.vertex_count()).collect();
        let found = ok(g.classify_component(&all))?;
        ensure!(found == *ty, "{}: classified as {}", name, found);
        let a = ok(g.adjacency())?;
        ensure!(
            ok(cheb_p(h - 1).eval_at_matrix(&a))?.is_zero(),
            "{}: P_{}(A) != 0",
            name,
            h - 1
        );
        let seq = ok(cheb_p_matrix_sequence(&a, h - 1))?;
        ensure!(
            seq[..h - 1].iter().all(|m| !m.is_zero()),
            "{}: vanishes before P_{}",
            name,
            h - 1
        );
    }
    Ok(format!("{} graphs", corpus.len()))
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Outcome {
    let mut corpus: Vec<(String, Vec<Vec<usize>>)> = Vec::new();
    for n in 1..=8 {
        corpus.push((format!("affine A{}", n), families::affine_a(n)));
    }
    for n in 4..=8 {
        corpus.push((format!("affine D{}", n), families::affine_d(n)));
    }
    corpus.push(("double edge".into(), families::multi_edge(2)));
    corpus.push(("K4".into(), families::complete(4)));
    for (name, dims) in &corpus {
        let a = int_matrix(Field::Rational, dims);
        let seq = ok(cheb_p_matrix_sequence(&a, 50))?;
        ensure!(seq.len() == 51, "{}: sequence length {}", name, seq.len());
        if let Some(m) = seq.iter().position(Matrix::is_zero) {
            return Err(format!("{}: P_{}(A) = 0", name, m));
        }
    }
    Ok(format!("{} graphs, m <= 50", corpus.len()))
}

// ---------------------------------------------------------------- 3

fn criterion_3() -> Outcome {
    let q = Scalar::q_var();
    let x = &q + &ok(q.inv())?;
    for l in 0..=20 {
        let lhs = cheb_q(l).eval(&x);
        let rhs = &ok(q.pow(l as i64))? + &ok(q.pow(-(l as i64)))?;
        ensure!(lhs == rhs, "Q_{}(q + 1/q) = {}", l, lhs);
    }
    for l in 1..=8 {
        for n in 0..=8 {
            ensure!(
                composition_identity_check(l, n),
                "composition identity fails at l={}, n={}",
                l,
                n
            );
        }
    }
    Ok("Q_l for l <= 20, composition for l, n <= 8".into())
}

// ---------------------------------------------------------------- 4

/// Row sums of `Tr(E_ij (E_jiᵗ)⁻¹)`, written out directly.
fn oracle_loop_values(g: &ModulatedGraph) -> Result<Vec<Scalar>, String> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for i in 0..n {
        let mut s = Scalar::zero(g.field());
        for j in 0..n {
            if g.dim(i, j) == 0 {
                continue;
            }
            let eij = ok(g.require_form(i, j))?;
            let eji = ok(g.require_form(j, i))?;
            let m = ok(eij.mul(&ok(eji.transpose().inverse())?))?;
            for k in 0..m.rows() {
                s = &s + m.get(k, k);
            }
        }
        out.push(s);
    }
    Ok(out)
}

fn star_positive(k: u64) -> ModulatedGraph {
    let field = Field::RationalFunction;
    let q = Scalar::q_var();
    let mut rng = seeded(400 + k);
    let p = random_nondegenerate(field, 2, &mut rng);
    if k.is_multiple_of(2) {
        // a conjugated standard form on a single loop
        let e = p.transpose().mul(&slq2_form(&q)).unwrap().mul(&p).unwrap();
        graph(field, vec![vec![2]])
            .with_forms(BTreeMap::from([((0, 0), e)]))
            .unwrap()
    } else {
        // E_01 = P Z, E_10 = Pᵗ with Z = diag(-q, -1/q)
        let mq = q.neg_ref();
        let z = Matrix::from_rows(
            field,
            vec![
                vec![mq.clone(), Scalar::zero(field)],
                vec![Scalar::zero(field), mq.inv().unwrap()],
            ],
        )
        .unwrap();
        let forms = BTreeMap::from([((0, 1), p.mul(&z).unwrap()), ((1, 0), p.transpose())]);
        graph(field, families::multi_edge(2)).with_forms(forms).unwrap()
    }
}

fn criterion_4() -> Outcome {
    let field = Field::RationalFunction;
    let q = Scalar::q_var();
    let delta = ok(Scalar::loop_value(&q))?;
    ensure!(
        delta == (&q.neg_ref() - &ok(q.inv())?),
        "loop value {} is not -q - 1/q",
        delta
    );

    let standard = graph(field, vec![vec![2]])
        .with_forms(BTreeMap::from([((0, 0), slq2_form(&q))]))
        .unwrap();
    ensure!(
        ok(check_star(&standard, &q))?.holds,
        "standard form fails the trace equation"
    );
    let rep = ok(functor_image(&standard, &q))?;
    let closed = ok(TLElement::cup(field).compose(&TLElement::cap(field), &q))?;
    let value = ok(tl_evaluate(&rep, &closed))?;
    ensure!(
        value == Matrix::scalar(&delta, 1),
        "closed loop evaluates to {:?}",
        value
    );
    ensure!(
        ok(rep.loop_values())? == vec![delta.clone()],
        "structural loop value differs"
    );

    let (mut pos, mut neg) = (0, 0);
    let mut graphs: Vec<ModulatedGraph> = (0..8).map(star_positive).collect();
    let shapes = [
        vec![vec![2]],
        families::multi_edge(2),
        families::path(3),
        families::affine_a(2),
    ];
    for k in 0..8u64 {
        graphs.push(with_random_forms(field, &shapes[k as usize % shapes.len()], 500 + k));
    }
    for g in &graphs {
        let star = ok(check_star(g, &q))?.holds;
        let loops = ok(ok(functor_image(g, &q))?.loop_values())?;
        ensure!(
            loops == oracle_loop_values(g)?,
            "loop values disagree with the trace oracle"
        );
        let all_delta = loops.iter().all(|l| *l == delta);
        ensure!(star == all_delta, "trace equation {} but loop values {:?}", star, loops);
        if star {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    ensure!(
        pos >= 5 && neg >= 5,
        "only {} positive and {} negative graphs",
        pos,
        neg
    );
    Ok(format!("{} graphs ({} satisfying, {} not)", graphs.len(), pos, neg))
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Outcome {
    let shapes = [
        vec![vec![1]],
        vec![vec![2]],
        families::multi_edge(2),
        families::path(3),
        families::affine_a(2),
        vec![vec![1, 1], vec![1, 0]],
        families::star(&[1, 1, 1]),
    ];
    let (mut count, mut found, mut checked) = (0, 0, 0);
    for field in [Field::Rational, Field::Prime(5)] {
        for k in 0..14u64 {
            let dims = &shapes[k as usize % shapes.len()];
            let g = with_random_forms(field, dims, 700 + k);
            let n = g.vertex_count();
            let mut rng = seeded(800 + k);
            let r: Vec<Scalar> = (0..n).map(|_| random_nonzero(field, &mut rng, 4)).collect();
            let d = ok(d_matrix(&g))?;
            let d2 = ok(d_matrix(&ok(rescale(&g, &r))?))?;
            for i in 0..n {
                for j in 0..n {
                    let expect = &(&r[j] * d.get(i, j)) * &ok(r[i].inv())?;
                    ensure!(*d2.get(i, j) == expect, "{} graph {}: entry ({}, {})", field, k, i, j);
                }
            }
            count += 1;
            if let Some((lambda, v)) = ok(nondegenerate_eigenvalue(&d))? {
                found += 1;
                let h = ok(rescale(&g, &v))?;
                if let QSolution::Roots(roots) = solve_q(&lambda) {
                    for (q, _) in roots {
                        ensure!(
                            ok(check_star(&h, &q))?.holds,
                            "{} graph {}: rescaled graph fails at q = {}",
                            field,
                            k,
                            q
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    ensure!(checked > 0, "no graph produced a base-field q");
    Ok(format!(
        "{} graphs, {} eigenvalues, {} q values checked",
        count, found, checked
    ))
}

// ---------------------------------------------------------------- 6

/// Noncrossing perfect matchings on `2k` points, by listing all matchings.
fn brute_force_noncrossing(points: usize) -> usize {
    fn all(rest: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut usize) {
        if rest.is_empty() {
            let crossing = acc
                .iter()
                .any(|&(a, b)| acc.iter().any(|&(c, d)| a < c && c < b && b < d));
            if !crossing {
                *out += 1;
            }
            return;
        }
        let a = rest[0];
        for k in 1..rest.len() {
            let b = rest[k];
            let next: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != b).collect();
            acc.push((a, b));
            all(&next, acc, out);
            acc.pop();
        }
    }
    let pts: Vec<usize> = (0..points).collect();
    let mut out = 0;
    all(&pts, &mut Vec::new(), &mut out);
    out
}

fn placed(field: Field, left: usize, d: TLDiagram, right: usize) -> Result<TLElement, String> {
    let mid = TLElement::from_diagram(d, Scalar::one(field));
    let l = ok(TLElement::identity(field, left).tensor(&mid))?;
    ok(l.tensor(&TLElement::identity(field, right)))
}

fn criterion_6() -> Outcome {
    let field = Field::RationalFunction;
    let q = Scalar::q_var();
    let delta = ok(Scalar::loop_value(&q))?;
    let e = |i, n| TLElement::e(field, i, n).unwrap();
    for n in 2..=6 {
        for i in 1..n {
            let ei = e(i, n);
            ensure!(
                ok(ei.compose(&ei, &q))? == ei.scale(&delta),
                "e_{}^2 on {} strands",
                i,
                n
            );
            if i + 1 < n {
                let ej = e(i + 1, n);
                let lhs = ok(ok(ei.compose(&ej, &q))?.compose(&ei, &q))?;
                ensure!(lhs == ei, "e_{} e_{} e_{} on {} strands", i, i + 1, i, n);
                let lhs = ok(ok(ej.compose(&ei, &q))?.compose(&ej, &q))?;
                ensure!(lhs == ej, "e_{} e_{} e_{} on {} strands", i + 1, i, i + 1, n);
            }
            for j in i + 2..n {
                let ej = e(j, n);
                ensure!(
                    ok(ei.compose(&ej, &q))? == ok(ej.compose(&ei, &q))?,
                    "e_{} e_{} on {} strands",
                    i,
                    j,
                    n
                );
            }
        }
    }
    for n in 0..=6 {
        let expect = brute_force_noncrossing(2 * n);
        ensure!(
            tl_basis(n, n).len() == expect,
            "TL_{} has {} diagrams, expected {}",
            n,
            tl_basis(n, n).len(),
            expect
        );
    }
    for n in 1..=5 {
        let p = ok(jones_wenzl(n, &q))?;
        ensure!(ok(p.compose(&p, &q))? == p, "JW_{} is not idempotent", n);
        for i in 0..n.saturating_sub(1) {
            let cap = placed(field, i, TLDiagram::cap(), n - i - 2)?;
            ensure!(ok(p.compose(&cap, &q))?.is_zero(), "a cap does not kill JW_{}", n);
            let cup = placed(field, i, TLDiagram::cup(), n - i - 2)?;
            ensure!(ok(cup.compose(&p, &q))?.is_zero(), "a cup does not kill JW_{}", n);
        }
    }
    match jones_wenzl(3, &Scalar::zeta(6, 1)) {
        Err(Error::QuantumIntegerZero(_)) => {}
        other => return Err(format!("jw(3) at a primitive sixth root: {:?}", other.map(|_| ()))),
    }
    Ok("relations n <= 6, Catalan n <= 6, JW n <= 5".into())
}

// ---------------------------------------------------------------- 7, 8

fn preproj_corpus() -> Vec<(&'static str, Vec<Vec<usize>>)> {
    vec![
        ("affine A1", families::affine_a(1)),
        ("affine A2", families::affine_a(2)),
        ("affine D4", families::affine_d(4)),
        ("K4", families::complete(4)),
    ]
}

const FIELDS: [Field; 4] = [Field::Rational, Field::Prime(2), Field::Prime(3), Field::Prime(5)];

/// `H_0 = I`, `H_1 = A`, `H_n = A H_{n-1} - H_{n-2}` over the integers.
fn recurrence(a: &[Vec<usize>], max_degree: usize) -> Vec<DimTable> {
    let n = a.len();
    let mul = |x: &DimTable| -> DimTable {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] as i64 * x[k][j]).sum()).collect())
            .collect()
    };
    let id: DimTable = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut out = vec![id];
    for d in 1..=max_degree {
        let mut h = mul(&out[d - 1]);
        if d >= 2 {
            for i in 0..n {
                for j in 0..n {
                    h[i][j] -= out[d - 2][i][j];
                }
            }
        }
        out.push(h);
    }
    out
}

fn criterion_7() -> Outcome {
    let mut runs = 0;
    for (name, dims) in preproj_corpus() {
        let expect = recurrence(&dims, 6);
        for field in FIELDS {
            let mut draws = Vec::new();
            for seed in [11, 12] {
                let g = with_random_forms(field, &dims, seed);
                let got = ok(graded_dims(&g, 6))?.dims;
                if let Some(k) = (0..=6).find(|&k| got[k] != expect[k]) {
                    return Err(format!(
                        "{} over {} seed {}: degree {} is {:?}, expected {:?}",
                        name, field, seed, k, got[k], expect[k]
                    ));
                }
                draws.push(got);
                runs += 1;
            }
            ensure!(draws[0] == draws[1], "{} over {}: draws differ", name, field);
        }
    }
    let g = with_random_forms(Field::Rational, &families::affine_a(1), 13);
    let h2 = ok(graded_dims(&g, 2))?.dims[2].clone();
    ensure!(h2 == vec![vec![3, 0], vec![0, 3]], "affine A1 degree 2 is {:?}", h2);
    Ok(format!("{} truncations to degree 6", runs))
}

fn criterion_8() -> Outcome {
    let mut runs = 0;
    for (name, dims) in preproj_corpus() {
        let n = dims.len();
        let id: DimTable = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let zero: DimTable = vec![vec![0; n]; n];
        let adj: DimTable = dims.iter().map(|r| r.iter().map(|&d| d as i64).collect()).collect();
        let expect = vec![id.clone(), adj, id, zero.clone(), zero];
        for field in FIELDS {
            let g = with_random_forms(field, &dims, 21);
            let dual = ok(quadratic_dual_dims(&g, 4))?.dims;
            ensure!(dual == expect, "{} over {}: dual dims {:?}", name, field, dual);
            let k = ok(koszul_numerics(&g, 6))?;
            ensure!(
                k.holds(),
                "{} over {}: convolution fails at degree {:?}",
                name,
                field,
                k.first_failure
            );
            runs += 1;
        }
    }
    Ok(format!("{} graph/field pairs", runs))
}

// ---------------------------------------------------------------- 9

fn criterion_9() -> Outcome {
    let q = Scalar::q_var();
    let h = ok(h_relations(&slq2_form(&q)))?;
    let dims = ok(filtered_dims(&h, 3))?;
    ensure!(dims[..3] == [1, 5, 14], "cumulative dims {:?}", dims);
    ensure!(
        dims == pbw_count_slq2(3),
        "cumulative dims {:?}, PBW count {:?}",
        dims,
        pbw_count_slq2(3)
    );
    let report = ok(slq2_specialization(&q))?;
    ensure!(report.relations.len() == 7, "{} relations", report.relations.len());
    for (name, member) in &report.relations {
        ensure!(*member, "relation {} is not in the ideal", name);
    }
    let mut checked = 0;
    for field in [Field::Rational, Field::Prime(5)] {
        for n in 1..=3 {
            for seed in 0..2 {
                let e = random_nondegenerate(field, n, &mut seeded(900 + 10 * n as u64 + seed));
                let h = ok(h_relations(&e))?;
                ensure!(comodule_map_check(&h), "comodule check fails for {:?}", e);
                ensure!(antipode_check(&h), "antipode check fails for {:?}", e);
                checked += 1;
            }
        }
    }
    Ok(format!("dims {:?}, 7 relations, {} random forms", dims, checked))
}

// ---------------------------------------------------------------- 10

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn run_cli(args: &[String]) -> (Option<i32>, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_qsl2"))
        .args(args)
        .current_dir(root())
        .env_remove("QSL2_BUDGET")
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout, out.stderr)
}

fn criterion_10() -> Outcome {
    let text = ok(std::fs::read_to_string(root().join("docs/examples/cases.json")))?;
    let cases: Vec<serde_json::Value> = ok(serde_json::from_str(&text))?;
    let mut runs: Vec<Vec<String>> = cases
        .iter()
        .map(|c| {
            c["args"]
                .as_array()
                .unwrap()
                .iter()
                .map(|a| a.as_str().unwrap().to_string())
                .collect()
        })
        .collect();
    for seed in ["0", "5", "123"] {
        for cmd in [
            vec![
                "hilbert",
                "docs/examples/triangle_f5.json",
                "--max-degree",
                "4",
                "--seed",
                seed,
            ],
            vec![
                "quad-dual",
                "docs/examples/triangle_f5.json",
                "--max-degree",
                "3",
                "--seed",
                seed,
            ],
            vec![
                "star-normalize",
                "docs/examples/affine_a1_normalize.json",
                "--seed",
                seed,
            ],
        ] {
            runs.push(cmd.into_iter().map(String::from).collect());
        }
    }
    for args in &runs {
        let a = run_cli(args);
        let b = run_cli(args);
        ensure!(a == b, "output differs between runs of {:?}", args);
    }
    Ok(format!("{} commands run twice", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("ADET vanishing", 5, criterion_1),
        ("non-ADET nonvanishing", 10, criterion_2),
        ("Chebyshev identities", 5, criterion_3),
        ("trace equation and loop value", 10, criterion_4),
        ("rescaling covariance", 30, criterion_5),
        ("Temperley-Lieb algebra", 60, criterion_6),
        ("preprojective Hilbert series", 300, criterion_7),
        ("quadratic dual", 120, criterion_8),
        ("H(E) dimensions and checks", 120, criterion_9),
        ("CLI determinism", 120, criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(*limit);
        let (status, detail) = match result {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{}; over time", d)),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{} {:>2} {:<32} {:>8.2}s / {:>3}s  {}",
            status,
            k + 1,
            name,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            detail
        );
    }
    if failed > 0 {
        println!("{} of {} criteria failed", failed, criteria.len());
        std::process::exit(1);
    }
}
