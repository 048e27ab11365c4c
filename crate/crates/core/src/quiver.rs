//! The doubled quiver of a dimension matrix and its path spaces.
//!
//! There are `dims[i][j]` arrows `i -> j` for every ordered pair, loops
//! included. Arrows are numbered by source, then target, then local index,
//! so the arrows leaving a vertex are contiguous. Paths of each length are
//! numbered lexicographically in their arrow sequence, which makes
//! right-extension `p -> p·e` monotone in `p`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// One arrow: the `local`-th basis vector of `V_{source,target}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub local: usize,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<Arrow>,
    /// `out_start[i]..out_start[i+1]` are the arrows leaving `i`.
    out_start: Vec<usize>,
    /// `block_start[i*n + j]` is the id of the first arrow `i -> j`.
    block_start: Vec<usize>,
}

impl Quiver {
    pub fn from_dims(dims: &[Vec<usize>]) -> Self {
        let n = dims.len();
        let mut arrows = Vec::new();
        let mut out_start = Vec::with_capacity(n + 1);
        let mut block_start = Vec::with_capacity(n * n);
        for (i, row) in dims.iter().enumerate() {
            out_start.push(arrows.len());
            for (j, &d) in row.iter().enumerate() {
                block_start.push(arrows.len());
                for local in 0..d {
                    arrows.push(Arrow {
                        source: i,
                        target: j,
                        local,
                    });
                }
            }
        }
        out_start.push(arrows.len());
        Quiver {
            vertices: n,
            arrows,
            out_start,
            block_start,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: usize) -> Arrow {
        self.arrows[id]
    }

    /// Id of the `local`-th arrow `i -> j`.
    pub fn arrow_id(&self, i: usize, j: usize, local: usize) -> usize {
        self.block_start[i * self.vertices + j] + local
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_start[v + 1] - self.out_start[v]
    }

    pub fn out_arrows(&self, v: usize) -> core::ops::Range<usize> {
        self.out_start[v]..self.out_start[v + 1]
    }

    /// Position of arrow `e` among the arrows leaving its source.
    fn out_position(&self, e: usize) -> usize {
        e - self.out_start[self.arrows[e].source]
    }
}

/// Paths of one fixed length.
#[derive(Clone, Debug, Default)]
struct Level {
    start: Vec<u32>,
    end: Vec<u32>,
    /// Index of the path with the last arrow removed (the vertex for length 1).
    parent: Vec<u32>,
    last: Vec<u32>,
    /// Index in the next level of the first one-arrow extension.
    first_ext: Vec<u32>,
}

/// All paths of length `0..=max_len`, built level by level.
#[derive(Clone, Debug)]
pub struct PathSpace {
    quiver: Quiver,
    levels: Vec<Level>,
}

impl PathSpace {
    /// Builds all paths up to `max_len`, failing if a level exceeds `max_paths`.
    pub fn build(quiver: &Quiver, max_len: usize, max_paths: usize) -> Result<Self> {
        let n = quiver.vertex_count();
        let mut levels = Vec::with_capacity(max_len + 1);
        levels.push(Level {
            start: (0..n as u32).collect(),
            end: (0..n as u32).collect(),
            parent: vec![u32::MAX; n],
            last: vec![u32::MAX; n],
            first_ext: Vec::new(),
        });
        for len in 1..=max_len {
            let prev = levels.last_mut().expect("level 0 exists");
            let mut next = Level::default();
            prev.first_ext = Vec::with_capacity(prev.end.len());
            for p in 0..prev.end.len() {
                prev.first_ext.push(next.end.len() as u32);
                let v = prev.end[p] as usize;
                for e in quiver.out_arrows(v) {
                    next.start.push(prev.start[p]);
                    next.end.push(quiver.arrows[e].target as u32);
                    next.parent.push(p as u32);
                    next.last.push(e as u32);
                }
                if next.end.len() > max_paths {
                    return Err(Error::BudgetExceeded(format!(
                        "more than {} paths of length {}",
                        max_paths, len
                    )));
                }
            }
            levels.push(next);
        }
        Ok(PathSpace {
            quiver: quiver.clone(),
            levels,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn max_len(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn count(&self, len: usize) -> usize {
        self.levels[len].end.len()
    }

    pub fn start(&self, len: usize, p: usize) -> usize {
        self.levels[len].start[p] as usize
    }

    pub fn end(&self, len: usize, p: usize) -> usize {
        self.levels[len].end[p] as usize
    }

    /// Index of `p·e` at length `len + 1`; `e` must leave `end(p)`.
    pub fn extend(&self, len: usize, p: usize, e: usize) -> usize {
        debug_assert_eq!(self.quiver.arrows[e].source, self.end(len, p));
        self.levels[len].first_ext[p] as usize + self.quiver.out_position(e)
    }

    /// The arrow sequence of a path.
    pub fn arrows_of(&self, len: usize, mut p: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for l in (1..=len).rev() {
            out[l - 1] = self.levels[l].last[p] as usize;
            p = self.levels[l].parent[p] as usize;
        }
        out
    }

    /// Index of the path `start, arrows...`, if the arrows compose.
    pub fn index_of(&self, start: usize, arrows: &[usize]) -> Option<usize> {
        let mut p = start;
        let mut at = start;
        for (len, &e) in arrows.iter().enumerate() {
            if self.quiver.arrows[e].source != at {
                return None;
            }
            p = self.extend(len, p, e);
            at = self.quiver.arrows[e].target;
        }
        Some(p)
    }

    /// Number of paths `i -> j` of the given length, as an `I × I` table.
    pub fn block_counts(&self, len: usize) -> Vec<Vec<usize>> {
        let n = self.quiver.vertex_count();
        let mut out = vec![vec![0; n]; n];
        let level = &self.levels[len];
        for (s, e) in level.start.iter().zip(&level.end) {
            out[*s as usize][*e as usize] += 1;
        }
        out
    }
}
