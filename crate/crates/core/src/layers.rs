//! Dimension vectors and semisimple sequences.
//!
//! A semisimple sequence over an algebra with truncation index `L` is an
//! `(L+1)`-tuple of dimension vectors; trailing zero layers are stored
//! explicitly so comparison and reversal are positional.  The dominance
//! order compares per-vertex prefix sums; generic values of semicontinuous
//! invariants are dominance-minimal.

use crate::algebra::TruncatedAlgebra;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Multiplicities of the simple modules, one entry per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// An `(L+1)`-tuple of dimension vectors, layer 0 first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SemisimpleSequence {
    pub layers: Vec<DimVector>,
}

impl SemisimpleSequence {
    pub fn new(layers: Vec<DimVector>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::Layers("a sequence needs at least one layer".into()));
        }
        let n = layers[0].len();
        if n == 0 || layers.iter().any(|l| l.len() != n) {
            return Err(Error::Layers(
                "layers must share a positive vertex count".into(),
            ));
        }
        Ok(SemisimpleSequence { layers })
    }

    /// Sequence over a one-vertex algebra from bare layer dimensions.
    pub fn local(dims: &[usize]) -> Self {
        SemisimpleSequence {
            layers: dims.iter().map(|&d| DimVector(vec![d])).collect(),
        }
    }

    /// Bare layer dimensions of a local sequence.
    pub fn local_dims(&self) -> Option<Vec<usize>> {
        if self.vertex_count() != 1 {
            return None;
        }
        Some(self.layers.iter().map(|l| l.0[0]).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.layers[0].len()
    }

    /// Number of layers minus one; matches the algebra's truncation index.
    pub fn top_index(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn total_dim_vector(&self) -> DimVector {
        let mut acc = DimVector::zeros(self.vertex_count());
        for l in &self.layers {
            acc = acc.add(l);
        }
        acc
    }

    pub fn total(&self) -> usize {
        self.layers.iter().map(|l| l.total()).sum()
    }

    /// Layer order reversed: `(S_L, ..., S_0)`.
    pub fn reverse(&self) -> SemisimpleSequence {
        SemisimpleSequence {
            layers: self.layers.iter().rev().cloned().collect(),
        }
    }

    fn check_comparable(&self, other: &SemisimpleSequence) -> Result<()> {
        if self.layers.len() != other.layers.len() || self.vertex_count() != other.vertex_count() {
            return Err(Error::Incomparable(format!(
                "shape ({} layers, {} vertices) vs ({} layers, {} vertices)",
                self.layers.len(),
                self.vertex_count(),
                other.layers.len(),
                other.vertex_count()
            )));
        }
        if self.total_dim_vector() != other.total_dim_vector() {
            return Err(Error::Incomparable(format!(
                "total dimension vectors differ: {} vs {}",
                self.total_dim_vector(),
                other.total_dim_vector()
            )));
        }
        Ok(())
    }

    /// Per-vertex prefix sums `sum_{j<=l} S_j[i]`.
    fn prefix_sums(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut acc = vec![0usize; n];
        self.layers
            .iter()
            .map(|layer| {
                for (a, &x) in acc.iter_mut().zip(layer.0.iter()) {
                    *a += x;
                }
                acc.clone()
            })
            .collect()
    }

    /// Dominance comparison where it exists; `None` when incomparable.
    /// Requires equal shapes and equal total dimension vectors.
    pub fn dominance_cmp(&self, other: &SemisimpleSequence) -> Result<Option<Ordering>> {
        self.check_comparable(other)?;
        let a = self.prefix_sums();
        let b = other.prefix_sums();
        let mut le = true;
        let mut ge = true;
        for (ra, rb) in a.iter().zip(b.iter()) {
            for (&x, &y) in ra.iter().zip(rb.iter()) {
                le &= x <= y;
                ge &= x >= y;
            }
        }
        Ok(match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        })
    }

    /// `self <= other` in the dominance order.
    pub fn dominance_leq(&self, other: &SemisimpleSequence) -> Result<bool> {
        Ok(matches!(
            self.dominance_cmp(other)?,
            Some(Ordering::Less) | Some(Ordering::Equal)
        ))
    }

    /// Prints local sequences as bare tuples, general ones as a layer list.
    pub fn display(&self) -> String {
        match self.local_dims() {
            Some(dims) => format!(
                "({})",
                dims.iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            None => self
                .layers
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    /// JSON form: a list of lists, layer 0 first.
    pub fn to_json(&self) -> Vec<Vec<usize>> {
        self.layers.iter().map(|l| l.0.clone()).collect()
    }

    pub fn from_json(rows: Vec<Vec<usize>>) -> Result<Self> {
        SemisimpleSequence::new(rows.into_iter().map(DimVector).collect())
    }
}

impl fmt::Display for SemisimpleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// Whether `seq` arises as the radical layering of a module: each layer must
/// fit inside the first radical layer of a projective cover of the previous
/// one, i.e. `S_l[j] <= sum_i S_{l-1}[i] * #(arrows e_i -> e_j)`.
pub fn realizable(alg: &TruncatedAlgebra, seq: &SemisimpleSequence) -> Result<bool> {
    if seq.layers.len() != alg.truncation + 1 || seq.vertex_count() != alg.vertex_count() {
        return Err(Error::Layers(format!(
            "sequence shape ({} layers, {} vertices) does not match the algebra ({} layers, {} vertices)",
            seq.layers.len(),
            seq.vertex_count(),
            alg.truncation + 1,
            alg.vertex_count()
        )));
    }
    let mult = alg.quiver.arrow_multiplicity();
    let n = alg.vertex_count();
    for l in 1..seq.layers.len() {
        for j in 0..n {
            let cap: usize = (0..n).map(|i| seq.layers[l - 1].0[i] * mult[i][j]).sum();
            if seq.layers[l].0[j] > cap {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All realizable sequences with total dimension vector `d`, in
/// lexicographic order on the flattened layers.
pub fn enumerate_realizable(
    alg: &TruncatedAlgebra,
    d: &DimVector,
) -> Result<Vec<SemisimpleSequence>> {
    if d.len() != alg.vertex_count() {
        return Err(Error::Layers(
            "dimension vector length must match the vertex count".into(),
        ));
    }
    if d.total() == 0 {
        return Err(Error::Layers("total dimension must be positive".into()));
    }
    let mult = alg.quiver.arrow_multiplicity();
    let n = alg.vertex_count();
    let levels = alg.truncation + 1;
    let mut out = Vec::new();
    let mut layers: Vec<DimVector> = Vec::new();

    // Enumerates candidate layer vectors below `cap` in lexicographic order.
    fn layer_candidates(cap: &[usize]) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for &c in cap {
            let mut next = Vec::with_capacity(out.len() * (c + 1));
            for prefix in &out {
                for v in 0..=c {
                    let mut row = prefix.clone();
                    row.push(v);
                    next.push(row);
                }
            }
            out = next;
        }
        out
    }

    fn recurse(
        layers: &mut Vec<DimVector>,
        remaining: Vec<usize>,
        levels: usize,
        n: usize,
        mult: &[Vec<usize>],
        out: &mut Vec<SemisimpleSequence>,
    ) {
        if layers.len() == levels {
            if remaining.iter().all(|&x| x == 0) {
                out.push(SemisimpleSequence {
                    layers: layers.clone(),
                });
            }
            return;
        }
        // A zero layer forces all later layers to be zero.
        if let Some(last) = layers.last() {
            if last.is_zero() {
                if remaining.iter().all(|&x| x == 0) {
                    let mut full = layers.clone();
                    while full.len() < levels {
                        full.push(DimVector::zeros(n));
                    }
                    out.push(SemisimpleSequence { layers: full });
                }
                return;
            }
        }
        let cap: Vec<usize> = match layers.last() {
            None => remaining.clone(),
            Some(prev) => (0..n)
                .map(|j| {
                    let by_algebra: usize = (0..n).map(|i| prev.0[i] * mult[i][j]).sum();
                    by_algebra.min(remaining[j])
                })
                .collect(),
        };
        for row in layer_candidates(&cap) {
            let next_remaining: Vec<usize> =
                remaining.iter().zip(&row).map(|(r, v)| r - v).collect();
            layers.push(DimVector(row));
            recurse(layers, next_remaining, levels, n, mult, out);
            layers.pop();
        }
    }

    recurse(&mut layers, d.0.clone(), levels, n, &mult, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::four_vertex_loop_quiver;
    use proptest::prelude::*;

    fn seq(layers: &[&[usize]]) -> SemisimpleSequence {
        SemisimpleSequence::new(layers.iter().map(|l| DimVector(l.to_vec())).collect()).unwrap()
    }

    /// Layering of the reference sequence with layers
    /// `S_1+S_2, S_2+S_3+S_4, 2*S_3, S_1+S_3` over four vertices.
    pub(crate) fn reference_sequence() -> SemisimpleSequence {
        seq(&[&[1, 1, 0, 0], &[0, 1, 1, 1], &[0, 0, 2, 0], &[1, 0, 1, 0]])
    }

    #[test]
    fn dominance_prefix_example() {
        let a = SemisimpleSequence::local(&[1, 2, 1]);
        let b = SemisimpleSequence::local(&[2, 1, 1]);
        assert!(a.dominance_leq(&b).unwrap());
        assert!(!b.dominance_leq(&a).unwrap());
        assert!(a.dominance_leq(&a).unwrap());
    }

    #[test]
    fn dominance_rejects_mismatched_totals() {
        let a = SemisimpleSequence::local(&[1, 2, 1]);
        let b = SemisimpleSequence::local(&[2, 1, 0]);
        assert!(a.dominance_leq(&b).is_err());
    }

    #[test]
    fn uniserial_chain_below_split_layering() {
        // Four simples in a chain vs. the same simples split over two layers.
        let chain = seq(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let split = seq(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(chain.dominance_cmp(&split).unwrap(), Some(Ordering::Less));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(
            SemisimpleSequence::local(&[1, 3, 6]).reverse(),
            SemisimpleSequence::local(&[6, 3, 1])
        );
        let s = reference_sequence();
        assert_eq!(s.reverse().reverse(), s);
        // Reversal of the reference sequence sits below its generic socle
        // layering in dominance.
        let rev = s.reverse();
        assert_eq!(
            rev,
            seq(&[&[1, 0, 1, 0], &[0, 0, 2, 0], &[0, 1, 1, 1], &[1, 1, 0, 0]])
        );
        let socle = seq(&[&[1, 0, 1, 1], &[0, 0, 2, 0], &[0, 1, 1, 0], &[1, 1, 0, 0]]);
        assert!(rev.dominance_leq(&socle).unwrap());
    }

    #[test]
    fn realizability_local_inequalities() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        assert!(realizable(&alg, &SemisimpleSequence::local(&[1, 2, 4])).unwrap());
        assert!(!realizable(&alg, &SemisimpleSequence::local(&[1, 3, 0])).unwrap());
    }

    #[test]
    fn realizability_two_by_two_ladder() {
        // Vertices 1 -> 2 (two arrows), 2 -> 3 (two arrows), truncation 2.
        use crate::algebra::{Arrow, Quiver};
        let q = Quiver::new(
            3,
            vec![
                Arrow {
                    id: "a1".into(),
                    source: 1,
                    target: 2,
                },
                Arrow {
                    id: "a2".into(),
                    source: 1,
                    target: 2,
                },
                Arrow {
                    id: "b1".into(),
                    source: 2,
                    target: 3,
                },
                Arrow {
                    id: "b2".into(),
                    source: 2,
                    target: 3,
                },
            ],
        )
        .unwrap();
        let alg = TruncatedAlgebra::new(q, 2).unwrap();
        let s = seq(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        assert!(realizable(&alg, &s).unwrap());
    }

    #[test]
    fn realizability_on_loop_quiver() {
        let alg = TruncatedAlgebra::new(four_vertex_loop_quiver(), 3).unwrap();
        assert!(realizable(&alg, &reference_sequence()).unwrap());
        // Vertex 4 has no outgoing arrows, so nothing may follow it.
        let bad = seq(&[&[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert!(!realizable(&alg, &bad).unwrap());
    }

    #[test]
    fn enumerate_small_local() {
        let alg = TruncatedAlgebra::local(2, 1).unwrap();
        let all = enumerate_realizable(&alg, &DimVector(vec![3])).unwrap();
        let dims: Vec<Vec<usize>> = all.iter().map(|s| s.local_dims().unwrap()).collect();
        assert_eq!(dims, vec![vec![1, 2], vec![2, 1], vec![3, 0]]);
    }

    #[test]
    fn enumerate_matches_independent_filter() {
        let alg = TruncatedAlgebra::local(3, 2).unwrap();
        let all = enumerate_realizable(&alg, &DimVector(vec![10])).unwrap();
        // Independent brute force over all compositions of 10 into 3 parts.
        let mut want = Vec::new();
        for a in 0..=10usize {
            for b in 0..=(10 - a) {
                let c = 10 - a - b;
                if b <= 3 * a && c <= 3 * b {
                    want.push(vec![a, b, c]);
                }
            }
        }
        want.sort();
        let got: Vec<Vec<usize>> = all.iter().map(|s| s.local_dims().unwrap()).collect();
        assert_eq!(got, want);
        assert!(got.contains(&vec![1, 3, 6]));
        assert!(got.contains(&vec![6, 3, 1]));
        for s in &all {
            assert!(realizable(&alg, s).unwrap());
        }
        // No duplicates, sorted.
        let mut sorted = got.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), got.len());
    }

    #[test]
    fn dimension_one_forces_top_concentration() {
        let alg = TruncatedAlgebra::new(four_vertex_loop_quiver(), 2).unwrap();
        let d = DimVector(vec![0, 0, 1, 0]);
        let all = enumerate_realizable(&alg, &d).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].layers[0], d);
        assert!(all[0].layers[1].is_zero());
    }

    #[test]
    fn zero_top_layer_forces_zero_sequence() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        // Realizable sequences with S_0 = 0 can only be identically zero,
        // so every enumerated sequence for a nonzero d has S_0 != 0.
        for d in 1..=5usize {
            for s in enumerate_realizable(&alg, &DimVector(vec![d])).unwrap() {
                assert!(!s.layers[0].is_zero());
            }
        }
    }

    proptest! {
        #[test]
        fn dominance_is_a_partial_order(raw in proptest::collection::vec(0usize..4, 9)) {
            // Build three comparable sequences over one vertex with the same
            // total by padding each triple to the common total.
            let mk = |a: usize, b: usize, c: usize| {
                let total = 12usize;
                let used = a + b + c;
                SemisimpleSequence::local(&[a, b, c, total - used])
            };
            let s = mk(raw[0], raw[1], raw[2]);
            let t = mk(raw[3], raw[4], raw[5]);
            let u = mk(raw[6], raw[7], raw[8]);
            // Reflexive.
            prop_assert!(s.dominance_leq(&s).unwrap());
            // Antisymmetric.
            if s.dominance_leq(&t).unwrap() && t.dominance_leq(&s).unwrap() {
                prop_assert_eq!(&s, &t);
            }
            // Transitive.
            if s.dominance_leq(&t).unwrap() && t.dominance_leq(&u).unwrap() {
                prop_assert!(s.dominance_leq(&u).unwrap());
            }
        }

        #[test]
        fn reversal_is_an_involution(dims in proptest::collection::vec(0usize..5, 1..6)) {
            let s = SemisimpleSequence::local(&dims);
            prop_assert_eq!(s.reverse().reverse(), s);
        }
    }
}
