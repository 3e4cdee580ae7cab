//! Quivers, truncated path algebras, and path words.
//!
//! A truncated path algebra is a path algebra `KQ` modulo the ideal spanned
//! by all paths of length `L+1`; the positive-length paths of length at most
//! `L` form a basis of its radical.  Vertices are 1-indexed.  Arrows are kept
//! sorted by id, which is the canonical form used by the JSON interface and
//! by every deterministic enumeration downstream.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver, sorting arrows by id.  Loops and parallel arrows are
    /// allowed; duplicate ids and out-of-range endpoints are not.
    pub fn new(vertex_count: usize, mut arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Algebra("vertex count must be positive".into()));
        }
        arrows.sort_by(|a, b| a.id.cmp(&b.id));
        for w in arrows.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::Algebra(format!("duplicate arrow id '{}'", w[0].id)));
            }
        }
        for a in &arrows {
            if a.source == 0 || a.source > vertex_count || a.target == 0 || a.target > vertex_count
            {
                return Err(Error::Algebra(format!(
                    "arrow '{}' endpoints must lie in 1..={vertex_count}",
                    a.id
                )));
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    /// Entry `(i, j)` counts the arrows `e_i -> e_j` (1-indexed vertices).
    pub fn arrow_multiplicity(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count;
        let mut m = vec![vec![0usize; n]; n];
        for a in &self.arrows {
            m[a.source - 1][a.target - 1] += 1;
        }
        m
    }

    pub fn arrows_from(&self, vertex: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == vertex)
    }

    /// All composable words of length exactly `l`, ignoring any truncation,
    /// in lexicographic order.
    pub fn words(&self, l: usize, start: Option<usize>) -> Vec<PathWord> {
        let starts: Vec<usize> = match start {
            Some(v) => vec![v],
            None => (1..=self.vertex_count).collect(),
        };
        let mut out = Vec::new();
        for s in starts {
            let mut stack = vec![PathWord::vertex(s)];
            while let Some(w) = stack.pop() {
                if w.len() == l {
                    out.push(w);
                    continue;
                }
                for (idx, _) in self
                    .arrows_from(w.end(self))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .rev()
                {
                    stack.push(w.extended(idx));
                }
            }
        }
        out.sort();
        out
    }

    /// The quiver with all arrows reversed (same ids).
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                id: a.id.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        Quiver {
            vertex_count: self.vertex_count,
            arrows,
        }
    }
}

/// A quiver together with the truncation index `L`: all paths of length
/// `L+1` vanish, so the Loewy length is at most `L+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedAlgebra {
    pub quiver: Quiver,
    pub truncation: usize,
}

impl TruncatedAlgebra {
    pub fn new(quiver: Quiver, truncation: usize) -> Result<Self> {
        if truncation == 0 {
            return Err(Error::Algebra("truncation index must be at least 1".into()));
        }
        Ok(TruncatedAlgebra { quiver, truncation })
    }

    /// One vertex, `r` loops named `alpha1..alphar`, truncation `L`.
    pub fn local(r: usize, truncation: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Algebra("loop count must be at least 1".into()));
        }
        let arrows = (1..=r)
            .map(|i| Arrow {
                id: format!("alpha{i}"),
                source: 1,
                target: 1,
            })
            .collect();
        TruncatedAlgebra::new(Quiver::new(1, arrows)?, truncation)
    }

    pub fn is_local(&self) -> bool {
        self.quiver.vertex_count == 1
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    pub fn opposite(&self) -> TruncatedAlgebra {
        TruncatedAlgebra {
            quiver: self.quiver.opposite(),
            truncation: self.truncation,
        }
    }

    /// All composable words of length exactly `l`, optionally with a fixed
    /// start vertex, in lexicographic order on the arrow indices applied
    /// first to last.  Length 0 yields the vertex idempotents; `l > L`
    /// yields nothing because those words vanish in the algebra.
    pub fn nonzero_paths(&self, l: usize, start: Option<usize>) -> Vec<PathWord> {
        if l > self.truncation {
            return Vec::new();
        }
        self.quiver.words(l, start)
    }

    pub fn json(&self) -> JsonAlgebra {
        JsonAlgebra {
            vertices: self.quiver.vertex_count,
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| JsonArrow {
                    id: a.id.clone(),
                    from: a.source,
                    to: a.target,
                })
                .collect(),
            truncation: self.truncation,
        }
    }

    pub fn from_json(j: &JsonAlgebra) -> Result<Self> {
        let arrows = j
            .arrows
            .iter()
            .map(|a| Arrow {
                id: a.id.clone(),
                source: a.from,
                target: a.to,
            })
            .collect();
        TruncatedAlgebra::new(Quiver::new(j.vertices, arrows)?, j.truncation)
    }
}

/// On-disk form: `{"vertices": n, "arrows": [{"id", "from", "to"}, ...],
/// "truncation": L}`, arrows sorted by id.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonAlgebra {
    pub vertices: usize,
    pub arrows: Vec<JsonArrow>,
    pub truncation: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonArrow {
    pub id: String,
    pub from: usize,
    pub to: usize,
}

/// A composable word of arrows.  Arrows are stored in application order
/// (first-applied first); the display form reads right to left, so the word
/// that applies `alpha` then `beta` prints as `beta*alpha`.  Words longer
/// than the truncation index are valid as words but vanish in the algebra.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathWord {
    start: usize,
    arrows: Vec<usize>,
}

impl PathWord {
    /// The length-0 path at a vertex.
    pub fn vertex(v: usize) -> Self {
        PathWord {
            start: v,
            arrows: Vec::new(),
        }
    }

    /// Builds a word from arrow indices in application order, checking
    /// composability.
    pub fn from_applied(quiver: &Quiver, start: usize, arrows: Vec<usize>) -> Result<Self> {
        let mut at = start;
        for &i in &arrows {
            let a = quiver
                .arrows
                .get(i)
                .ok_or_else(|| Error::Algebra(format!("arrow index {i} out of range")))?;
            if a.source != at {
                return Err(Error::Algebra(format!(
                    "arrow '{}' starts at {} but the word is at {at}",
                    a.id, a.source
                )));
            }
            at = a.target;
        }
        Ok(PathWord { start, arrows })
    }

    /// Resolves arrow ids (application order) into a word.
    pub fn from_ids(quiver: &Quiver, start: usize, ids: &[&str]) -> Result<Self> {
        let mut arrows = Vec::with_capacity(ids.len());
        for id in ids {
            let idx = quiver
                .arrows
                .iter()
                .position(|a| a.id == *id)
                .ok_or_else(|| Error::Algebra(format!("unknown arrow id '{id}'")))?;
            arrows.push(idx);
        }
        PathWord::from_applied(quiver, start, arrows)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self, quiver: &Quiver) -> usize {
        match self.arrows.last() {
            Some(&i) => quiver.arrows[i].target,
            None => self.start,
        }
    }

    /// Arrow indices in application order.
    pub fn applied(&self) -> &[usize] {
        &self.arrows
    }

    /// The word extended by one more arrow applied after this one.
    pub fn extended(&self, arrow: usize) -> PathWord {
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        PathWord {
            start: self.start,
            arrows,
        }
    }

    /// `other` applied first, then `self`; errors when endpoints mismatch.
    pub fn compose(&self, quiver: &Quiver, other: &PathWord) -> Result<PathWord> {
        if other.end(quiver) != self.start {
            return Err(Error::Algebra("composition endpoint mismatch".to_string()));
        }
        let mut arrows = other.arrows.clone();
        arrows.extend_from_slice(&self.arrows);
        Ok(PathWord {
            start: other.start,
            arrows,
        })
    }

    /// The proper initial subpath lacking the last applied arrow.
    pub fn parent(&self) -> Option<PathWord> {
        if self.arrows.is_empty() {
            return None;
        }
        Some(PathWord {
            start: self.start,
            arrows: self.arrows[..self.arrows.len() - 1].to_vec(),
        })
    }

    /// Right-to-left display, e.g. `delta*beta*alpha`; vertices print `e_i`.
    pub fn display(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.start);
        }
        self.arrows
            .iter()
            .rev()
            .map(|&i| quiver.arrows[i].id.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.start)
        } else {
            write!(
                f,
                "[{}]@{}",
                self.arrows
                    .iter()
                    .rev()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join("*"),
                self.start
            )
        }
    }
}
