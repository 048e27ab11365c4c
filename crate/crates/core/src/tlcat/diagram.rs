//! Planar pairings between boundary points.
//!
//! A diagram `n -> m` has bottom points `0..n` (left to right) and top points
//! `n..n+m` (left to right). Going round the rectangle, the circular order
//! is the bottom left to right, then the top right to left; a pairing is
//! planar iff no two chords interleave in that order.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    n: usize,
    m: usize,
    pairing: Vec<usize>,
}

impl TLDiagram {
    /// Validates that `pairing` is a fixed-point-free involution on
    /// `0..n+m` without crossings.
    pub fn new(n: usize, m: usize, pairing: Vec<usize>) -> Result<Self> {
        let total = n + m;
        if pairing.len() != total {
            return Err(Error::InvalidDiagram(format!(
                "pairing has {} entries for {} points",
                pairing.len(),
                total
            )));
        }
        for (p, &q) in pairing.iter().enumerate() {
            if q >= total || q == p || pairing[q] != p {
                return Err(Error::InvalidDiagram(format!("point {} is not properly paired", p)));
            }
        }
        let d = TLDiagram { n, m, pairing };
        let chords = d.chords();
        for (a, &(p, q)) in chords.iter().enumerate() {
            for &(r, s) in &chords[a + 1..] {
                if (p < r && r < q && q < s) || (r < p && p < s && s < q) {
                    return Err(Error::InvalidDiagram(String::from("pairing has crossing strands")));
                }
            }
        }
        Ok(d)
    }

    pub fn identity(n: usize) -> Self {
        let pairing = (0..n).map(|i| n + i).chain(0..n).collect();
        TLDiagram { n, m: n, pairing }
    }

    /// `α: 0 -> 2`.
    pub fn cup() -> Self {
        TLDiagram {
            n: 0,
            m: 2,
            pairing: vec![1, 0],
        }
    }

    /// `β: 2 -> 0`.
    pub fn cap() -> Self {
        TLDiagram {
            n: 2,
            m: 0,
            pairing: vec![1, 0],
        }
    }

    /// The generator `e_i` on `n` strands, `1 <= i < n`.
    pub fn e(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::InvalidDiagram(format!("e({}, {}) needs 1 <= i < n", i, n)));
        }
        let mut d = Self::identity(n);
        let (a, b) = (i - 1, i);
        d.pairing[a] = b;
        d.pairing[b] = a;
        d.pairing[n + a] = n + b;
        d.pairing[n + b] = n + a;
        Ok(d)
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.m
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn partner(&self, p: usize) -> usize {
        self.pairing[p]
    }

    fn circular(&self, p: usize) -> usize {
        if p < self.n {
            p
        } else {
            self.n + (self.m - 1 - (p - self.n))
        }
    }

    /// Chords as pairs of circular positions, smaller first.
    fn chords(&self) -> Vec<(usize, usize)> {
        self.pairing
            .iter()
            .enumerate()
            .filter(|&(p, &q)| p < q)
            .map(|(p, &q)| {
                let (a, b) = (self.circular(p), self.circular(q));
                (a.min(b), a.max(b))
            })
            .collect()
    }

    /// Number of strands joining bottom to top.
    pub fn through_strands(&self) -> usize {
        (0..self.n).filter(|&p| self.pairing[p] >= self.n).count()
    }

    pub fn is_identity(&self) -> bool {
        self.n == self.m && self.through_strands() == self.n
    }

    /// Stacks `g` on top of `self` (`self` first). Returns the diagram and
    /// the number of closed loops removed.
    pub fn compose(&self, g: &TLDiagram) -> Result<(TLDiagram, usize)> {
        if self.m != g.n {
            return Err(Error::BoundaryMismatch {
                expected: self.m,
                found: g.n,
            });
        }
        let (n, mid, k) = (self.n, self.m, g.m);
        let mut pairing = vec![usize::MAX; n + k];
        let mut seen_mid = vec![false; mid];
        // Walk from an outer point until another outer point is reached.
        // `in_f` tells which diagram the current point belongs to.
        let walk = |start_in_f: bool, start: usize, seen_mid: &mut [bool]| -> usize {
            let (mut in_f, mut p) = (start_in_f, start);
            loop {
                if in_f {
                    let q = self.pairing[p];
                    if q < n {
                        return q;
                    }
                    let t = q - n;
                    seen_mid[t] = true;
                    in_f = false;
                    p = t;
                } else {
                    let q = g.pairing[p];
                    if q >= mid {
                        return n + (q - mid);
                    }
                    seen_mid[q] = true;
                    in_f = true;
                    p = n + q;
                }
            }
        };
        for b in 0..n {
            if pairing[b] == usize::MAX {
                let other = walk(true, b, &mut seen_mid);
                pairing[b] = other;
                pairing[other] = b;
            }
        }
        for t in 0..k {
            if pairing[n + t] == usize::MAX {
                let other = walk(false, mid + t, &mut seen_mid);
                pairing[n + t] = other;
                pairing[other] = n + t;
            }
        }
        // Whatever middle points remain lie on closed loops.
        let mut loops = 0;
        for s in 0..mid {
            if seen_mid[s] {
                continue;
            }
            loops += 1;
            let mut t = s;
            loop {
                seen_mid[t] = true;
                // from the middle point go down through `self`, then up through `g`
                let down = self.pairing[n + t] - n;
                seen_mid[down] = true;
                t = g.pairing[down];
                if t == s {
                    break;
                }
            }
        }
        Ok((TLDiagram { n, m: k, pairing }, loops))
    }

    /// Horizontal juxtaposition, `self` on the left.
    pub fn tensor(&self, g: &TLDiagram) -> TLDiagram {
        let (n1, m1, n2, m2) = (self.n, self.m, g.n, g.m);
        let n = n1 + n2;
        let map_f = |p: usize| if p < n1 { p } else { n + (p - n1) };
        let map_g = |p: usize| if p < n2 { n1 + p } else { n + m1 + (p - n2) };
        let mut pairing = vec![0; n + m1 + m2];
        for (p, &q) in self.pairing.iter().enumerate() {
            pairing[map_f(p)] = map_f(q);
        }
        for (p, &q) in g.pairing.iter().enumerate() {
            pairing[map_g(p)] = map_g(q);
        }
        TLDiagram { n, m: m1 + m2, pairing }
    }

    /// Writes the diagram as cap layers followed by cup layers, in the
    /// expression syntax: `a * b` means `b` first.
    fn layers(&self) -> Vec<String> {
        let n = self.n;
        // bottom: remove adjacent capped pairs among the remaining points
        let mut bottom: Vec<usize> = (0..n).collect();
        let mut first: Vec<String> = Vec::new();
        loop {
            let hit = bottom.windows(2).position(|w| self.pairing[w[0]] == w[1]);
            let Some(pos) = hit else { break };
            first.push(layer(pos, "cap", bottom.len() - pos - 2));
            bottom.drain(pos..pos + 2);
        }
        let mut top: Vec<usize> = (n..n + self.m).collect();
        let mut last: Vec<String> = Vec::new();
        loop {
            let hit = top.windows(2).position(|w| self.pairing[w[0]] == w[1]);
            let Some(pos) = hit else { break };
            last.push(layer(pos, "cup", top.len() - pos - 2));
            top.drain(pos..pos + 2);
        }
        // `last` holds cups outermost-last; applied order is the reverse.
        let mut out: Vec<String> = last;
        first.reverse();
        out.extend(first);
        out
    }
}

fn layer(left: usize, gen: &str, right: usize) -> String {
    let mut parts = Vec::new();
    if left > 0 {
        parts.push(format!("id({})", left));
    }
    parts.push(String::from(gen));
    if right > 0 {
        parts.push(format!("id({})", right));
    }
    parts.join(" (+) ")
}

impl fmt::Display for TLDiagram {
    /// The diagram as an expression, e.g. `cup * cap` for `e(1,2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let layers = self.layers();
        if layers.is_empty() {
            return write!(f, "id({})", self.n);
        }
        f.write_str(&layers.join(" * "))
    }
}

/// All planar pairings `n -> m`, sorted.
pub fn tl_basis(n: usize, m: usize) -> Vec<TLDiagram> {
    if (n + m) % 2 == 1 {
        return Vec::new();
    }
    let total = n + m;
    // circular position -> point label
    let label = |c: usize| if c < n { c } else { n + (m - 1 - (c - n)) };
    let positions: Vec<usize> = (0..total).collect();
    let mut out: Vec<TLDiagram> = noncrossing(&positions)
        .into_iter()
        .map(|chords| {
            let mut pairing = vec![0; total];
            for (a, b) in chords {
                pairing[label(a)] = label(b);
                pairing[label(b)] = label(a);
            }
            TLDiagram { n, m, pairing }
        })
        .collect();
    out.sort();
    out
}

/// Noncrossing perfect matchings of points in circular order.
fn noncrossing(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in (1..points.len()).step_by(2) {
        let inside = noncrossing(&points[1..j]);
        let outside = noncrossing(&points[j + 1..]);
        for a in &inside {
            for b in &outside {
                let mut m = Vec::with_capacity(points.len() / 2);
                m.push((points[0], points[j]));
                m.extend_from_slice(a);
                m.extend_from_slice(b);
                out.push(m);
            }
        }
    }
    out
}
