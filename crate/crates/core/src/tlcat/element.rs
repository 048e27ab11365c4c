//! Linear combinations of diagrams.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::diagram::TLDiagram;
use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLElement {
    n: usize,
    m: usize,
    field: Field,
    terms: BTreeMap<TLDiagram, Scalar>,
}

impl TLElement {
    pub fn zero(field: Field, n: usize, m: usize) -> Self {
        TLElement {
            n,
            m,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: TLDiagram, coeff: Scalar) -> Self {
        let mut e = Self::zero(coeff.field(), d.source(), d.target());
        if !coeff.is_zero() {
            e.terms.insert(d, coeff);
        }
        e
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::from_diagram(TLDiagram::identity(n), Scalar::one(field))
    }

    pub fn e(field: Field, i: usize, n: usize) -> Result<Self> {
        Ok(Self::from_diagram(TLDiagram::e(i, n)?, Scalar::one(field)))
    }

    pub fn cup(field: Field) -> Self {
        Self::from_diagram(TLDiagram::cup(), Scalar::one(field))
    }

    pub fn cap(field: Field) -> Self {
        Self::from_diagram(TLDiagram::cap(), Scalar::one(field))
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &TLDiagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    fn accumulate(&mut self, d: TLDiagram, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&d) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(d, s);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    fn check_field(&self, other: &TLElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TLElement) -> Result<TLElement> {
        self.check_field(other)?;
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::BoundaryMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.accumulate(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TLElement) -> Result<TLElement> {
        self.add(&other.scale(&Scalar::from_int(other.field, -1)))
    }

    pub fn scale(&self, c: &Scalar) -> TLElement {
        let mut out = Self::zero(self.field, self.n, self.m);
        for (d, x) in &self.terms {
            out.accumulate(d.clone(), x * c);
        }
        out
    }

    /// `self` first, then `g`; each closed loop contributes `-q - q⁻¹`.
    pub fn compose(&self, g: &TLElement, q: &Scalar) -> Result<TLElement> {
        self.check_field(g)?;
        if self.m != g.n {
            return Err(Error::BoundaryMismatch {
                expected: self.m,
                found: g.n,
            });
        }
        let delta = Scalar::loop_value(q)?;
        let mut powers: Vec<Scalar> = Vec::new();
        let mut out = Self::zero(self.field, self.n, g.m);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &g.terms {
                let (d, loops) = d1.compose(d2)?;
                while powers.len() <= loops {
                    let next = match powers.last() {
                        None => delta.one_like(),
                        Some(p) => p * &delta,
                    };
                    powers.push(next);
                }
                out.accumulate(d, &(c1 * c2) * &powers[loops]);
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, g: &TLElement) -> Result<TLElement> {
        self.check_field(g)?;
        let mut out = Self::zero(self.field, self.n + g.n, self.m + g.m);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &g.terms {
                out.accumulate(d1.tensor(d2), c1 * c2);
            }
        }
        Ok(out)
    }
}

/// `f` first, then `g`, with loop value `-q - q⁻¹`.
pub fn tl_compose(f: &TLElement, g: &TLElement, q: &Scalar) -> Result<TLElement> {
    f.compose(g, q)
}

pub fn tl_tensor(f: &TLElement, g: &TLElement) -> Result<TLElement> {
    f.tensor(g)
}

impl fmt::Display for TLElement {
    /// Prints in the expression syntax, so that parsing the output gives
    /// the element back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "[0] * id({})", self.n);
        }
        let minus_one = Scalar::from_int(self.field, -1);
        for (k, (d, c)) in self.terms.iter().enumerate() {
            let neg = *c == minus_one;
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !c.is_one() && !neg {
                write!(f, "[{}] * ", c)?;
            }
            write!(f, "{}", d)?;
        }
        Ok(())
    }
}
