//! Sparse vectors and an incrementally grown echelon basis.
//!
//! A row's pivot is its smallest nonzero column. Rows are kept with distinct
//! pivots, which is enough to reduce any vector against their span.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::field::Field;
use super::scalar::Scalar;

/// A sparse vector: strictly increasing column indices with nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from unsorted, possibly repeated entries, summing duplicates.
    pub fn from_entries(field: Field, items: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in items {
            let slot = map.entry(c).or_insert_with(|| Scalar::zero(field));
            *slot = &*slot + &v;
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pivot(&self) -> Option<usize> {
        self.entries.first().map(|(c, _)| *c)
    }

    pub fn get(&self, col: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// Applies an injective, order-preserving column relabeling.
    pub fn map_columns(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(c, v)| (f(*c), v.clone())).collect(),
        }
    }

    /// `self - factor * other`.
    pub fn sub_scaled(&self, factor: &Scalar, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                out.push((b[j].0, -(factor * &b[j].1)));
                j += 1;
            } else {
                let v = &a[i].1 - &(factor * &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }
}

/// A basis in echelon form, keyed by pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        // Columns are visited in increasing order; a column once cleared
        // is never reintroduced because every row starts at its pivot.
        let mut from = 0;
        loop {
            let next = v.entries.iter().find(|(c, _)| *c >= from).map(|(c, x)| (*c, x.clone()));
            let Some((col, coeff)) = next else {
                return v;
            };
            if let Some(row) = self.rows.get(&col) {
                let lead = &row.entries[0].1;
                let factor = &coeff / lead;
                v = v.sub_scaled(&factor, row);
            }
            from = col + 1;
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v` if it is independent of the basis. Returns whether the
    /// rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        match r.pivot() {
            None => false,
            Some(p) => {
                // After full reduction the leading column cannot be a pivot.
                debug_assert!(!self.rows.contains_key(&p));
                self.rows.insert(p, r);
                true
            }
        }
    }

    /// Inserts a row already known to be independent with a fresh pivot.
    pub(crate) fn insert_unchecked(&mut self, v: SparseVec) {
        let p = v.pivot().expect("nonzero row");
        debug_assert!(!self.rows.contains_key(&p));
        self.rows.insert(p, v);
    }
}
