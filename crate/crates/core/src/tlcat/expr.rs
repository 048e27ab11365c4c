//! Text syntax for Temperley-Lieb expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := tensor ('*' tensor)*           a * b  applies b first
//! tensor := atom ('(+)' atom)*
//! atom   := INT ['/' INT] | '[' scalar ']' | id(n) | e(i,n) | cup | cap
//!         | jw(n) | '(' expr ')'
//! ```
//!
//! A bare scalar added to an endomorphism of `n` strands stands for a
//! multiple of `id(n)`; a scalar left over at the end is a multiple of
//! `id(0)`. The printed form of a [`TLElement`] parses back to itself.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::element::TLElement;
use super::functor::GradedSpaceRep;
use super::jw::jones_wenzl;
use super::TLDiagram;
use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TlExpr {
    /// Scalar literal, kept as text until a field is known.
    Scalar(String),
    Id(usize),
    E(usize, usize),
    Cup,
    Cap,
    Jw(usize),
    Neg(Box<TlExpr>),
    Add(Box<TlExpr>, Box<TlExpr>),
    Sub(Box<TlExpr>, Box<TlExpr>),
    /// `Compose(a, b)` is `a * b`: `b` first.
    Compose(Box<TlExpr>, Box<TlExpr>),
    Tensor(Box<TlExpr>, Box<TlExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Bracket(String),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Star,
    Plus,
    Minus,
    Slash,
    TensorOp,
    End,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' if src[i..].starts_with("(+)") => {
                i += 3;
                Tok::TensorOp
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'-' => {
                i += 1;
                Tok::Minus
            }
            b'/' => {
                i += 1;
                Tok::Slash
            }
            b'[' => {
                let close = src[i..].find(']').ok_or_else(|| syntax(i, "unterminated '['"))?;
                let body = src[i + 1..i + close].to_string();
                i += close + 1;
                Tok::Bracket(body)
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                Tok::Int(src[start..i].to_string())
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(src[start..i].to_string())
            }
            _ => return Err(syntax(i, format!("unexpected character '{}'", c as char))),
        };
        out.push((tok, start));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {}", what)))
        }
    }

    fn int(&mut self) -> Result<usize> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(s) => s.parse().map_err(|_| syntax(at, "integer too large")),
            _ => Err(syntax(at, "expected an integer")),
        }
    }

    fn expr(&mut self) -> Result<TlExpr> {
        let mut lhs = if *self.peek() == Tok::Minus {
            self.bump();
            TlExpr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = TlExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = TlExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<TlExpr> {
        let mut lhs = self.tensor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = TlExpr::Compose(Box::new(lhs), Box::new(self.tensor()?));
        }
        Ok(lhs)
    }

    fn tensor(&mut self) -> Result<TlExpr> {
        let mut lhs = self.atom()?;
        while *self.peek() == Tok::TensorOp {
            self.bump();
            lhs = TlExpr::Tensor(Box::new(lhs), Box::new(self.atom()?));
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<TlExpr> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(num) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let den_at = self.offset();
                    match self.bump() {
                        Tok::Int(den) => Ok(TlExpr::Scalar(format!("{}/{}", num, den))),
                        _ => Err(syntax(den_at, "expected a denominator")),
                    }
                } else {
                    Ok(TlExpr::Scalar(num))
                }
            }
            Tok::Bracket(body) => Ok(TlExpr::Scalar(body)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "cup" => Ok(TlExpr::Cup),
                "cap" => Ok(TlExpr::Cap),
                "id" | "jw" => {
                    self.expect(Tok::LParen, "'('")?;
                    let n = self.int()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(if name == "id" { TlExpr::Id(n) } else { TlExpr::Jw(n) })
                }
                "e" => {
                    self.expect(Tok::LParen, "'('")?;
                    let i = self.int()?;
                    self.expect(Tok::Comma, "','")?;
                    let n = self.int()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(TlExpr::E(i, n))
                }
                _ => Err(syntax(at, format!("unknown identifier '{}'", name))),
            },
            Tok::End => Err(syntax(at, "unexpected end of input")),
            _ => Err(syntax(at, "expected an operand")),
        }
    }
}

impl TlExpr {
    pub fn parse(text: &str) -> Result<TlExpr> {
        let mut p = Parser {
            toks: lex(text)?,
            pos: 0,
        };
        let e = p.expr()?;
        if *p.peek() != Tok::End {
            return Err(syntax(p.offset(), "unexpected trailing input"));
        }
        Ok(e)
    }

    /// Evaluates in the diagram calculus with loop value `-q - q⁻¹`.
    pub fn to_element(&self, q: &Scalar) -> Result<TLElement> {
        match self.eval_tl(q)? {
            Value::Scalar(c) => Ok(TLElement::from_diagram(TLDiagram::identity(0), c)),
            Value::Map(e) => Ok(e),
        }
    }

    fn eval_tl(&self, q: &Scalar) -> Result<Value<TLElement>> {
        let field = q.field();
        let gen = |e: &TlExpr| -> Result<TLElement> {
            Ok(match e {
                TlExpr::Id(n) => TLElement::identity(field, *n),
                TlExpr::E(i, n) => TLElement::e(field, *i, *n)?,
                TlExpr::Cup => TLElement::cup(field),
                TlExpr::Cap => TLElement::cap(field),
                TlExpr::Jw(n) => jones_wenzl(*n, q)?,
                _ => unreachable!(),
            })
        };
        let ops = TlOps { q };
        self.fold(field, &ops, &gen)
    }

    /// Evaluates structurally through the graded realization, so closed
    /// loops take their per-vertex values rather than a single scalar.
    pub fn to_graded_map(&self, rep: &GradedSpaceRep) -> Result<GradedMap> {
        let gen = |e: &TlExpr| -> Result<GradedMap> {
            let d = match e {
                TlExpr::Id(n) => TLDiagram::identity(*n),
                TlExpr::E(i, n) => TLDiagram::e(*i, *n)?,
                TlExpr::Cup => TLDiagram::cup(),
                TlExpr::Cap => TLDiagram::cap(),
                TlExpr::Jw(n) => {
                    let p = jones_wenzl(*n, rep.q())?;
                    return Ok(GradedMap {
                        source: *n,
                        target: *n,
                        matrix: super::functor::tl_evaluate(rep, &p)?,
                    });
                }
                _ => unreachable!(),
            };
            Ok(GradedMap {
                source: d.source(),
                target: d.target(),
                matrix: rep.evaluate_diagram(&d)?,
            })
        };
        let ops = GradedOps { rep };
        match self.fold(rep.field(), &ops, &gen)? {
            Value::Scalar(c) => ops.scalar_map(&c, 0),
            Value::Map(m) => Ok(m),
        }
    }

    fn fold<T: Clone, O: Ops<T>>(&self, field: Field, ops: &O, gen: &dyn Fn(&TlExpr) -> Result<T>) -> Result<Value<T>> {
        use Value::*;
        let rec = |e: &TlExpr| e.fold(field, ops, gen);
        Ok(match self {
            TlExpr::Scalar(text) => Scalar(crate::exactnum::Scalar::parse(field, text)?),
            TlExpr::Id(_) | TlExpr::E(..) | TlExpr::Cup | TlExpr::Cap | TlExpr::Jw(_) => Map(gen(self)?),
            TlExpr::Neg(a) => match rec(a)? {
                Scalar(c) => Scalar(c.neg_ref()),
                Map(m) => Map(ops.scale(&m, &crate::exactnum::Scalar::from_int(field, -1))?),
            },
            TlExpr::Add(a, b) | TlExpr::Sub(a, b) => {
                let (x, y) = (rec(a)?, rec(b)?);
                let y = if matches!(self, TlExpr::Sub(..)) {
                    match y {
                        Scalar(c) => Scalar(c.neg_ref()),
                        Map(m) => Map(ops.scale(&m, &crate::exactnum::Scalar::from_int(field, -1))?),
                    }
                } else {
                    y
                };
                match (x, y) {
                    (Scalar(c), Scalar(d)) => Scalar(c.try_add(&d)?),
                    (Scalar(c), Map(m)) | (Map(m), Scalar(c)) => {
                        let (n, t) = ops.shape(&m);
                        if n != t {
                            return Err(Error::BoundaryMismatch { expected: n, found: t });
                        }
                        Map(ops.add(&m, &ops.scalar_map(&c, n)?)?)
                    }
                    (Map(m), Map(k)) => Map(ops.add(&m, &k)?),
                }
            }
            TlExpr::Compose(a, b) => match (rec(a)?, rec(b)?) {
                (Scalar(c), Scalar(d)) => Scalar(c.try_mul(&d)?),
                (Scalar(c), Map(m)) | (Map(m), Scalar(c)) => Map(ops.scale(&m, &c)?),
                (Map(m), Map(k)) => Map(ops.compose(&k, &m)?),
            },
            TlExpr::Tensor(a, b) => match (rec(a)?, rec(b)?) {
                (Scalar(c), Scalar(d)) => Scalar(c.try_mul(&d)?),
                (Scalar(c), Map(m)) | (Map(m), Scalar(c)) => Map(ops.scale(&m, &c)?),
                (Map(m), Map(k)) => Map(ops.tensor(&m, &k)?),
            },
        })
    }
}

enum Value<T> {
    Scalar(Scalar),
    Map(T),
}

trait Ops<T> {
    fn shape(&self, m: &T) -> (usize, usize);
    fn scale(&self, m: &T, c: &Scalar) -> Result<T>;
    fn add(&self, a: &T, b: &T) -> Result<T>;
    /// `a` first, then `b`.
    fn compose(&self, a: &T, b: &T) -> Result<T>;
    fn tensor(&self, a: &T, b: &T) -> Result<T>;
    fn scalar_map(&self, c: &Scalar, n: usize) -> Result<T>;
}

struct TlOps<'a> {
    q: &'a Scalar,
}

impl Ops<TLElement> for TlOps<'_> {
    fn shape(&self, m: &TLElement) -> (usize, usize) {
        (m.source(), m.target())
    }
    fn scale(&self, m: &TLElement, c: &Scalar) -> Result<TLElement> {
        if c.field() != m.field() {
            return Err(Error::FieldMismatch {
                left: m.field(),
                right: c.field(),
            });
        }
        Ok(m.scale(c))
    }
    fn add(&self, a: &TLElement, b: &TLElement) -> Result<TLElement> {
        a.add(b)
    }
    fn compose(&self, a: &TLElement, b: &TLElement) -> Result<TLElement> {
        a.compose(b, self.q)
    }
    fn tensor(&self, a: &TLElement, b: &TLElement) -> Result<TLElement> {
        a.tensor(b)
    }
    fn scalar_map(&self, c: &Scalar, n: usize) -> Result<TLElement> {
        Ok(TLElement::identity(c.field(), n).scale(c))
    }
}

/// A graded linear map between realizations of `source` and `target` strands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source: usize,
    pub target: usize,
    pub matrix: Matrix,
}

struct GradedOps<'a> {
    rep: &'a GradedSpaceRep,
}

impl Ops<GradedMap> for GradedOps<'_> {
    fn shape(&self, m: &GradedMap) -> (usize, usize) {
        (m.source, m.target)
    }
    fn scale(&self, m: &GradedMap, c: &Scalar) -> Result<GradedMap> {
        Ok(GradedMap {
            matrix: m.matrix.scale(c)?,
            ..m.clone()
        })
    }
    fn add(&self, a: &GradedMap, b: &GradedMap) -> Result<GradedMap> {
        if (a.source, a.target) != (b.source, b.target) {
            return Err(Error::BoundaryMismatch {
                expected: a.source,
                found: b.source,
            });
        }
        Ok(GradedMap {
            matrix: a.matrix.add(&b.matrix)?,
            ..a.clone()
        })
    }
    fn compose(&self, a: &GradedMap, b: &GradedMap) -> Result<GradedMap> {
        if a.target != b.source {
            return Err(Error::BoundaryMismatch {
                expected: a.target,
                found: b.source,
            });
        }
        Ok(GradedMap {
            source: a.source,
            target: b.target,
            matrix: b.matrix.mul(&a.matrix)?,
        })
    }
    fn tensor(&self, a: &GradedMap, b: &GradedMap) -> Result<GradedMap> {
        Ok(GradedMap {
            source: a.source + b.source,
            target: a.target + b.target,
            matrix: self
                .rep
                .tensor_maps(&a.matrix, (a.source, a.target), &b.matrix, (b.source, b.target))?,
        })
    }
    fn scalar_map(&self, c: &Scalar, n: usize) -> Result<GradedMap> {
        Ok(GradedMap {
            source: n,
            target: n,
            matrix: self.rep.identity(n)?.scale(c)?,
        })
    }
}

/// Parses and evaluates `text` in the diagram calculus over the field of `q`.
pub fn parse_tl_expression(text: &str, q: &Scalar) -> Result<TLElement> {
    TlExpr::parse(text)?.to_element(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modgraph::ModulatedGraph;
    use alloc::collections::BTreeMap;
    use alloc::vec;

    fn q() -> Scalar {
        Scalar::q_var()
    }

    #[test]
    fn examples() {
        let f = Field::RationalFunction;
        let delta = Scalar::loop_value(&q()).unwrap();
        let e = TLElement::e(f, 1, 2).unwrap();
        assert_eq!(parse_tl_expression("e(1,2) * e(1,2)", &q()).unwrap(), e.scale(&delta));
        assert_eq!(
            parse_tl_expression("cap * cup", &q()).unwrap(),
            TLElement::from_diagram(TLDiagram::identity(0), delta.clone())
        );
        match parse_tl_expression("id(2 (+) ", &q()) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{:?}", other),
        }
        assert!(matches!(
            parse_tl_expression("id(2) * id(3)", &q()),
            Err(Error::BoundaryMismatch { .. })
        ));
        assert_eq!(
            parse_tl_expression("1 + e(1,2)/1", &q()).map_err(|e| matches!(e, Error::Syntax { .. })),
            Err(true)
        );
        assert_eq!(
            parse_tl_expression("[q] + e(1,2)", &q()).unwrap(),
            TLElement::identity(f, 2).scale(&q()).add(&e).unwrap()
        );
        assert_eq!(
            parse_tl_expression("1/2 * cup", &q()).unwrap(),
            TLElement::cup(f).scale(&Scalar::parse(f, "1/2").unwrap())
        );
    }

    #[test]
    fn precedence() {
        // tensor binds tighter than composition, composition tighter than sum
        let a = parse_tl_expression("cap (+) id(1) * id(1) (+) cup", &q()).unwrap();
        let b = parse_tl_expression("(cap (+) id(1)) * (id(1) (+) cup)", &q()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, TLElement::identity(Field::RationalFunction, 1));
    }

    #[test]
    fn printer_round_trip() {
        let q = q();
        for text in [
            "jw(3)",
            "jw(4)",
            "e(1,3) - 2 * e(2,3)",
            "cup (+) cup",
            "[0] * id(2)",
            "cap * cup",
        ] {
            let x = parse_tl_expression(text, &q).unwrap();
            let printed = x.to_string();
            assert_eq!(parse_tl_expression(&printed, &q).unwrap(), x, "{}", printed);
        }
        let f5 = Field::Prime(5);
        let x = parse_tl_expression("3 * e(2,4) + e(1,4)", &Scalar::from_int(f5, 2)).unwrap();
        assert_eq!(
            parse_tl_expression(&x.to_string(), &Scalar::from_int(f5, 2)).unwrap(),
            x
        );
    }

    #[test]
    fn structural_loop_values() {
        let f = Field::Rational;
        let g = ModulatedGraph::from_dims(f, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let mut forms = BTreeMap::new();
        forms.insert((0, 1), Matrix::from_ints(f, &[[2]]));
        forms.insert((1, 0), Matrix::from_ints(f, &[[3]]));
        let g = g.with_forms(forms).unwrap();
        let rep = GradedSpaceRep::new(&g, &Scalar::one(f), crate::Budget::default()).unwrap();
        let m = TlExpr::parse("cap * cup").unwrap().to_graded_map(&rep).unwrap();
        // Tr(E_01 E_10^-T) = 2/3 at vertex 0 and 3/2 at vertex 1
        assert_eq!(m.matrix.get(0, 0), &Scalar::parse(f, "2/3").unwrap());
        assert_eq!(m.matrix.get(1, 1), &Scalar::parse(f, "3/2").unwrap());
        assert_eq!(
            rep.loop_values().unwrap(),
            vec![m.matrix.get(0, 0).clone(), m.matrix.get(1, 1).clone()]
        );
    }
}
