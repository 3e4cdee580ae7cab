//! Points of `Rep_d(Λ)`: arrow-indexed matrix tuples over a prime field.
//!
//! A point carries one matrix per arrow, of shape
//! `dims[target] x dims[source]`, and is a valid module exactly when every
//! composite of `L+1` arrows acts as zero.  All invariants computed here
//! (radical and socle layerings, path nullities, endomorphism algebras)
//! reduce to exact rank computations over `F_p`.

use crate::algebra::{PathWord, TruncatedAlgebra};
use crate::fp::FieldSpec;
use crate::layers::{DimVector, SemisimpleSequence};
use crate::linalg::{solve_columns, Mat, Subspace};
use crate::polys;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A vertex-graded subspace of the total space `⊕_i K^{d_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSubspace {
    pub blocks: Vec<Subspace>,
}

impl BlockSubspace {
    pub fn zero(field: FieldSpec, dims: &DimVector) -> Self {
        BlockSubspace {
            blocks: dims.0.iter().map(|&d| Subspace::zero(field, d)).collect(),
        }
    }

    pub fn full(field: FieldSpec, dims: &DimVector) -> Self {
        BlockSubspace {
            blocks: dims.0.iter().map(|&d| Subspace::full(field, d)).collect(),
        }
    }

    pub fn dims(&self) -> DimVector {
        DimVector(self.blocks.iter().map(|b| b.dim()).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn is_contained_in(&self, other: &BlockSubspace) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a.is_contained_in(b))
    }
}

/// Each column of `m` reduced modulo `s`.
fn reduce_columns(m: &Mat, s: &Subspace) -> Mat {
    let mut out = Mat::zeros(m.field, m.rows, m.cols);
    for j in 0..m.cols {
        let r = s.reduce(&m.col(j));
        for (i, &v) in r.iter().enumerate() {
            out.set(i, j, v);
        }
    }
    out
}

/// Outcome of the defining-relations check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Ok,
    /// Composable words of length `L+1` that act by a nonzero matrix.
    Violations(Vec<PathWord>),
}

impl CheckOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, CheckOutcome::Ok)
    }
}

/// A point of `Rep_d(Λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePoint {
    pub alg: TruncatedAlgebra,
    pub dims: DimVector,
    pub field: FieldSpec,
    /// One matrix per arrow, in the algebra's arrow order.
    pub mats: Vec<Mat>,
}

impl ModulePoint {
    pub fn new(
        alg: TruncatedAlgebra,
        dims: DimVector,
        field: FieldSpec,
        mats: Vec<Mat>,
    ) -> Result<Self> {
        if dims.len() != alg.vertex_count() {
            return Err(Error::Shape(format!(
                "dimension vector has {} entries for {} vertices",
                dims.len(),
                alg.vertex_count()
            )));
        }
        if mats.len() != alg.quiver.arrows.len() {
            return Err(Error::Shape(format!(
                "{} matrices for {} arrows",
                mats.len(),
                alg.quiver.arrows.len()
            )));
        }
        for (a, m) in alg.quiver.arrows.iter().zip(&mats) {
            let want = (dims.0[a.target - 1], dims.0[a.source - 1]);
            if (m.rows, m.cols) != want {
                return Err(Error::Shape(format!(
                    "matrix for arrow '{}' is {}x{}, expected {}x{}",
                    a.id, m.rows, m.cols, want.0, want.1
                )));
            }
            if m.field != field {
                return Err(Error::Shape(format!(
                    "matrix for arrow '{}' uses a different modulus",
                    a.id
                )));
            }
        }
        Ok(ModulePoint {
            alg,
            dims,
            field,
            mats,
        })
    }

    /// The semisimple module of dimension vector `dims`: all arrows act as 0.
    pub fn zero_point(alg: TruncatedAlgebra, dims: DimVector, field: FieldSpec) -> Result<Self> {
        let mats = alg
            .quiver
            .arrows
            .iter()
            .map(|a| Mat::zeros(field, dims.0[a.target - 1], dims.0[a.source - 1]))
            .collect();
        ModulePoint::new(alg, dims, field, mats)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }

    fn truncation(&self) -> usize {
        self.alg.truncation
    }

    /// The composite matrix of a path word acting from its start block to its
    /// end block.
    pub fn path_matrix(&self, w: &PathWord) -> Mat {
        let mut cur = Mat::identity(self.field, self.dims.0[w.start() - 1]);
        for &i in w.applied() {
            cur = self.mats[i].mul(&cur);
        }
        cur
    }

    /// Nullity of `m -> p m` on the whole module; the action is zero outside
    /// the start-vertex block.
    pub fn path_nullity(&self, w: &PathWord) -> usize {
        self.total_dim() - self.path_matrix(w).rank()
    }

    /// The chain `M ⊇ JM ⊇ J²M ⊇ ... ⊇ J^{L+1}M`, computed by iterating
    /// image sums over the arrows.
    pub fn radical_filtration(&self) -> Vec<BlockSubspace> {
        let mut chain = vec![BlockSubspace::full(self.field, &self.dims)];
        for _ in 0..=self.truncation() {
            let prev = chain.last().unwrap();
            let mut next = BlockSubspace::zero(self.field, &self.dims);
            for (idx, a) in self.alg.quiver.arrows.iter().enumerate() {
                for v in prev.blocks[a.source - 1].basis() {
                    next.blocks[a.target - 1].insert(self.mats[idx].apply(v));
                }
            }
            chain.push(next);
        }
        chain
    }

    /// Verifies that all composable words of length `L+1` act as zero.
    pub fn check_point(&self) -> CheckOutcome {
        let chain = self.radical_filtration();
        if chain[self.truncation() + 1].is_zero() {
            return CheckOutcome::Ok;
        }
        let violated: Vec<PathWord> = self
            .alg
            .quiver
            .words(self.truncation() + 1, None)
            .into_iter()
            .filter(|w| !self.path_matrix(w).is_zero())
            .collect();
        CheckOutcome::Violations(violated)
    }

    /// The radical layering `(J^l M / J^{l+1} M)_{0<=l<=L}` as per-vertex
    /// dimensions.
    pub fn radical_layering(&self) -> SemisimpleSequence {
        let chain = self.radical_filtration();
        self.layering_from_chain(&chain)
    }

    fn layering_from_chain(&self, chain: &[BlockSubspace]) -> SemisimpleSequence {
        let n = self.dims.len();
        let layers = (0..=self.truncation())
            .map(|l| {
                DimVector(
                    (0..n)
                        .map(|i| chain[l].blocks[i].dim() - chain[l + 1].blocks[i].dim())
                        .collect(),
                )
            })
            .collect();
        SemisimpleSequence { layers }
    }

    /// The chain `soc_0 M ⊆ soc_1 M ⊆ ... ⊆ soc_L M`; entry `l` collects the
    /// vectors annihilated by `J^{l+1}`.
    pub fn socle_filtration(&self) -> Vec<BlockSubspace> {
        let mut chain: Vec<BlockSubspace> = Vec::with_capacity(self.truncation() + 1);
        let zero = BlockSubspace::zero(self.field, &self.dims);
        for _ in 0..=self.truncation() {
            let next = self.annihilator_step(chain.last().unwrap_or(&zero));
            chain.push(next);
        }
        chain
    }

    /// `{ x : f_a x ∈ w for every arrow a }`, per vertex block.
    fn annihilator_step(&self, w: &BlockSubspace) -> BlockSubspace {
        let n = self.dims.len();
        let mut out = BlockSubspace::zero(self.field, &self.dims);
        for i in 0..n {
            let d_i = self.dims.0[i];
            let reduced: Vec<Mat> = self
                .alg
                .quiver
                .arrows_from(i + 1)
                .map(|(idx, a)| reduce_columns(&self.mats[idx], &w.blocks[a.target - 1]))
                .collect();
            let vectors: Vec<Vec<u64>> = if reduced.is_empty() {
                // No arrows leave this vertex: the whole block is annihilated.
                (0..d_i)
                    .map(|k| {
                        let mut v = vec![0u64; d_i];
                        v[k] = 1;
                        v
                    })
                    .collect()
            } else {
                let refs: Vec<&Mat> = reduced.iter().collect();
                Mat::vstack(self.field, &refs).kernel_basis()
            };
            for v in vectors {
                out.blocks[i].insert(v);
            }
        }
        out
    }

    /// The socle layering `(soc_l M / soc_{l-1} M)_{0<=l<=L}`.
    pub fn socle_layering(&self) -> SemisimpleSequence {
        let chain = self.socle_filtration();
        let n = self.dims.len();
        let layers = (0..=self.truncation())
            .map(|l| {
                DimVector(
                    (0..n)
                        .map(|i| {
                            let below = if l == 0 {
                                0
                            } else {
                                chain[l - 1].blocks[i].dim()
                            };
                            chain[l].blocks[i].dim() - below
                        })
                        .collect(),
                )
            })
            .collect();
        SemisimpleSequence { layers }
    }

    /// The pair (radical layering, socle layering).
    pub fn radsoc_pair(&self) -> (SemisimpleSequence, SemisimpleSequence) {
        (self.radical_layering(), self.socle_layering())
    }

    /// The dual module over the opposite algebra: arrows reversed, matrices
    /// transposed.  Vertex indices are kept, so layerings transfer verbatim.
    pub fn dual(&self) -> ModulePoint {
        ModulePoint {
            alg: self.alg.opposite(),
            dims: self.dims.clone(),
            field: self.field,
            mats: self.mats.iter().map(|m| m.transpose()).collect(),
        }
    }

    /// True when `J^L x != 0` for every `x` outside `JM`; operationally the
    /// annihilator of `J^L` must be contained in `JM`.
    pub fn loewy_full_support(&self) -> bool {
        let soc = self.socle_filtration();
        let rad = self.radical_filtration();
        // ann(J^L) = soc_{L-1}.
        soc[self.truncation() - 1].is_contained_in(&rad[1])
    }

    /// The subfactor `J^ρ M / J^{τ+1} M` as a module over the same quiver
    /// truncated at `τ - ρ`.
    pub fn subquotient(&self, rho: usize, tau: usize) -> Result<ModulePoint> {
        if rho >= tau || tau > self.truncation() {
            return Err(Error::Precondition(format!(
                "need 0 <= rho < tau <= {}, got rho={rho}, tau={tau}",
                self.truncation()
            )));
        }
        let chain = self.radical_filtration();
        let top = &chain[rho];
        let bottom = &chain[tau + 1];
        let n = self.dims.len();
        // Per-vertex complement of bottom inside top.
        let comps: Vec<Vec<Vec<u64>>> = (0..n)
            .map(|i| bottom.blocks[i].complement_in(&top.blocks[i]))
            .collect();
        let new_dims = DimVector(comps.iter().map(|c| c.len()).collect());
        let sub_alg = TruncatedAlgebra::new(self.alg.quiver.clone(), tau - rho)?;
        let mut mats = Vec::with_capacity(self.mats.len());
        for (idx, a) in self.alg.quiver.arrows.iter().enumerate() {
            let (s, t) = (a.source - 1, a.target - 1);
            let mut m = Mat::zeros(self.field, new_dims.0[t], new_dims.0[s]);
            // Solve against complement + bottom basis to extract complement
            // coordinates of each image.
            let mut cols: Vec<Vec<u64>> = comps[t].clone();
            cols.extend(bottom.blocks[t].basis().iter().cloned());
            for (j, v) in comps[s].iter().enumerate() {
                let y = self.mats[idx].apply(v);
                let x = solve_columns(self.field, &cols, &y).ok_or_else(|| {
                    Error::Shape(
                        "image escapes the subfactor; the point violates its relations".into(),
                    )
                })?;
                for i in 0..new_dims.0[t] {
                    m.set(i, j, x[i]);
                }
            }
            mats.push(m);
        }
        ModulePoint::new(sub_alg, new_dims, self.field, mats)
    }

    /// Basis of the algebra of module endomorphisms: block-diagonal tuples
    /// commuting with every arrow matrix.
    pub fn endomorphisms(&self) -> EndAlgebra {
        let n = self.dims.len();
        let offsets: Vec<usize> = {
            let mut acc = 0;
            let mut out = Vec::with_capacity(n + 1);
            for i in 0..n {
                out.push(acc);
                acc += self.dims.0[i] * self.dims.0[i];
            }
            out.push(acc);
            out
        };
        let unknowns = offsets[n];
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (idx, a) in self.alg.quiver.arrows.iter().enumerate() {
            let (s, t) = (a.source - 1, a.target - 1);
            let (ds, dt) = (self.dims.0[s], self.dims.0[t]);
            let m = &self.mats[idx];
            for r in 0..dt {
                for c in 0..ds {
                    // (phi_t A - A phi_s)[r,c] = 0
                    let mut row = vec![0u64; unknowns];
                    for k in 0..ds {
                        let pos = offsets[s] + k * ds + c;
                        row[pos] = self.field.sub(row[pos], m.get(r, k));
                    }
                    for k in 0..dt {
                        let pos = offsets[t] + r * dt + k;
                        row[pos] = self.field.add(row[pos], m.get(k, c));
                    }
                    rows.push(row);
                }
            }
        }
        let basis_vecs: Vec<Vec<u64>> = if rows.is_empty() {
            // No arrows: every block-diagonal tuple commutes.
            (0..unknowns)
                .map(|k| {
                    let mut v = vec![0u64; unknowns];
                    v[k] = 1;
                    v
                })
                .collect()
        } else {
            Mat::from_rows(self.field, rows).unwrap().kernel_basis()
        };
        let basis = basis_vecs
            .into_iter()
            .map(|v| {
                (0..n)
                    .map(|i| {
                        let d = self.dims.0[i];
                        let mut m = Mat::zeros(self.field, d, d);
                        for r in 0..d {
                            for c in 0..d {
                                m.set(r, c, v[offsets[i] + r * d + c]);
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        EndAlgebra {
            field: self.field,
            block_dims: self.dims.0.clone(),
            module_dim: self.total_dim(),
            basis,
        }
    }

    /// Probabilistically confirmed exact indecomposability test.
    ///
    /// The verdict itself is deterministic: the endomorphism algebra is
    /// local if and only if its semisimple quotient is commutative with a
    /// one-dimensional Frobenius fixed space.  The sampled trials look for
    /// an explicit splitting witness (an endomorphism whose minimal
    /// polynomial modulo the radical is reducible) as a cross-check.
    pub fn is_indecomposable(&self, trials: usize, seed: u64) -> Result<bool> {
        self.field.require_larger_than(self.total_dim())?;
        let end = self.endomorphisms();
        let top = end.semisimple_quotient()?;
        let verdict = if top.dim() == 1 {
            true
        } else if !top.is_commutative() {
            false
        } else {
            top.frobenius_fixed_dim() == 1
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let x: Vec<u64> = (0..top.dim())
                .map(|_| self.field.sample(&mut rng))
                .collect();
            let f = top.min_poly(&x);
            if polys::degree(&f).unwrap_or(0) >= 1 && !polys::is_irreducible(self.field, &f) {
                assert!(
                    !verdict,
                    "splitting witness found in a supposedly local endomorphism algebra"
                );
            }
        }
        Ok(verdict)
    }

    /// Structural summary of the endomorphism algebra, for reports.
    pub fn end_structure(&self) -> Result<EndStructure> {
        self.field.require_larger_than(self.total_dim())?;
        let end = self.endomorphisms();
        let top = end.semisimple_quotient()?;
        let commutative = top.is_commutative();
        Ok(EndStructure {
            end_dim: end.dim(),
            top_dim: top.dim(),
            top_commutative: commutative,
            top_field_count: if commutative {
                Some(top.frobenius_fixed_dim())
            } else {
                None
            },
        })
    }

    pub fn to_json(&self) -> JsonModule {
        let mats = self
            .alg
            .quiver
            .arrows
            .iter()
            .zip(&self.mats)
            .map(|(a, m)| {
                let rows = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
                (a.id.clone(), rows)
            })
            .collect();
        JsonModule {
            algebra: self.alg.json(),
            dims: self.dims.0.clone(),
            p: self.field.p,
            mats,
        }
    }

    pub fn from_json(j: &JsonModule) -> Result<Self> {
        let alg = TruncatedAlgebra::from_json(&j.algebra)?;
        let field = FieldSpec::new(j.p)?;
        let dims = DimVector(j.dims.clone());
        let mut mats = Vec::new();
        for a in &alg.quiver.arrows {
            let rows = j
                .mats
                .get(&a.id)
                .ok_or_else(|| Error::Input(format!("missing matrix for arrow '{}'", a.id)))?;
            let want_rows = dims.0[a.target - 1];
            if rows.len() != want_rows {
                return Err(Error::Shape(format!(
                    "matrix for arrow '{}' has {} rows, expected {want_rows}",
                    a.id,
                    rows.len()
                )));
            }
            mats.push(Mat::from_rows(field, rows.clone())?);
        }
        ModulePoint::new(alg, dims, field, mats)
    }
}

/// On-disk form of a module point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonModule {
    pub algebra: crate::algebra::JsonAlgebra,
    pub dims: Vec<usize>,
    pub p: u64,
    pub mats: BTreeMap<String, Vec<Vec<u64>>>,
}

/// Report on `End(M)` and its semisimple quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndStructure {
    pub end_dim: usize,
    pub top_dim: usize,
    pub top_commutative: bool,
    /// Number of simple factors when the quotient is commutative.
    pub top_field_count: Option<usize>,
}

/// The endomorphism algebra of a module point, as a list of block-diagonal
/// basis elements.
pub struct EndAlgebra {
    field: FieldSpec,
    block_dims: Vec<usize>,
    module_dim: usize,
    pub basis: Vec<Vec<Mat>>,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn vectorize(&self, elem: &[Mat]) -> Vec<u64> {
        let mut out = Vec::new();
        for (i, &d) in self.block_dims.iter().enumerate() {
            for r in 0..d {
                for c in 0..d {
                    out.push(elem[i].get(r, c));
                }
            }
        }
        out
    }

    fn basis_columns(&self) -> Vec<Vec<u64>> {
        self.basis.iter().map(|e| self.vectorize(e)).collect()
    }

    fn element(&self, coords: &[u64]) -> Vec<Mat> {
        let mut out: Vec<Mat> = self
            .block_dims
            .iter()
            .map(|&d| Mat::zeros(self.field, d, d))
            .collect();
        for (k, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, m) in out.iter_mut().enumerate() {
                *m = m.add(&self.basis[k][i].scale(c));
            }
        }
        out
    }

    fn mul_elements(&self, a: &[Mat], b: &[Mat]) -> Vec<Mat> {
        a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()
    }

    fn trace(&self, elem: &[Mat]) -> u64 {
        let f = self.field;
        let mut acc = 0u64;
        for m in elem {
            for i in 0..m.rows {
                acc = f.add(acc, m.get(i, i));
            }
        }
        acc
    }

    /// Coordinates of the radical, via the kernel of the trace form; exact
    /// when the modulus exceeds the module dimension.
    pub fn radical_coords(&self) -> Result<Vec<Vec<u64>>> {
        self.field.require_larger_than(self.module_dim)?;
        let m = self.dim();
        let mut gram = Mat::zeros(self.field, m, m);
        for i in 0..m {
            for j in 0..m {
                let prod = self.mul_elements(&self.basis[i], &self.basis[j]);
                gram.set(i, j, self.trace(&prod));
            }
        }
        Ok(gram.kernel_basis())
    }

    /// The semisimple quotient `End / rad`, with structure constants.
    pub fn semisimple_quotient(&self) -> Result<TopAlgebra> {
        let rad = self.radical_coords()?;
        let m = self.dim();
        let rad_space = Subspace::from_vectors(self.field, m, rad.iter().cloned());
        // Complete the radical to a basis of End; the added unit coordinate
        // vectors represent the quotient basis.
        let mut acc = rad_space.clone();
        let mut top_reps: Vec<Vec<u64>> = Vec::new();
        for k in 0..m {
            let mut v = vec![0u64; m];
            v[k] = 1;
            if acc.insert(v.clone()) {
                top_reps.push(v);
            }
        }
        let t = top_reps.len();
        let mut solve_cols = top_reps.clone();
        solve_cols.extend(rad_space.basis().iter().cloned());
        let project = |coords: &[u64]| -> Vec<u64> {
            let x = solve_columns(self.field, &solve_cols, coords)
                .expect("quotient projection must be solvable");
            x[..t].to_vec()
        };
        let basis_cols = self.basis_columns();
        let coords_of = |elem: &[Mat]| -> Vec<u64> {
            solve_columns(self.field, &basis_cols, &self.vectorize(elem))
                .expect("product of endomorphisms is an endomorphism")
        };
        let mut table = vec![vec![Vec::new(); t]; t];
        for i in 0..t {
            for j in 0..t {
                let prod =
                    self.mul_elements(&self.element(&top_reps[i]), &self.element(&top_reps[j]));
                table[i][j] = project(&coords_of(&prod));
            }
        }
        let identity: Vec<Mat> = self
            .block_dims
            .iter()
            .map(|&d| Mat::identity(self.field, d))
            .collect();
        let one = project(&coords_of(&identity));
        Ok(TopAlgebra {
            field: self.field,
            table,
            one,
        })
    }
}

/// A finite-dimensional associative algebra given by structure constants;
/// used for semisimple quotients of endomorphism algebras.
pub struct TopAlgebra {
    field: FieldSpec,
    /// `table[i][j]` holds the coordinates of `b_i * b_j`.
    table: Vec<Vec<Vec<u64>>>,
    one: Vec<u64>,
}

impl TopAlgebra {
    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn one(&self) -> Vec<u64> {
        self.one.clone()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.field;
        let t = self.dim();
        let mut out = vec![0u64; t];
        for i in 0..t {
            if a[i] == 0 {
                continue;
            }
            for j in 0..t {
                if b[j] == 0 {
                    continue;
                }
                let s = f.mul(a[i], b[j]);
                for (o, &c) in out.iter_mut().zip(self.table[i][j].iter()) {
                    *o = f.add(*o, f.mul(s, c));
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let t = self.dim();
        for i in 0..t {
            for j in (i + 1)..t {
                if self.table[i][j] != self.table[j][i] {
                    return false;
                }
            }
        }
        true
    }

    pub fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// For a commutative semisimple algebra over `F_p`, the fixed space of
    /// `x -> x^p` has dimension equal to the number of simple factors.
    pub fn frobenius_fixed_dim(&self) -> usize {
        let f = self.field;
        let t = self.dim();
        let mut m = Mat::zeros(f, t, t);
        for j in 0..t {
            let mut e = vec![0u64; t];
            e[j] = 1;
            let img = self.pow(&e, f.p);
            for i in 0..t {
                let v = if i == j { f.sub(img[i], 1) } else { img[i] };
                m.set(i, j, v);
            }
        }
        m.nullity()
    }

    /// Monic minimal polynomial of `x`, ascending coefficients.
    pub fn min_poly(&self, x: &[u64]) -> polys::Poly {
        let f = self.field;
        let mut powers: Vec<Vec<u64>> = vec![self.one()];
        loop {
            let last = powers.last().unwrap();
            let next = self.mul(last, x);
            if let Some(coeffs) = solve_columns(f, &powers, &next) {
                // next = sum coeffs_i * x^i, so minpoly = t^k - sum coeffs_i t^i.
                let k = powers.len();
                let mut poly = vec![0u64; k + 1];
                for (i, &c) in coeffs.iter().enumerate() {
                    poly[i] = f.neg(c);
                }
                poly[k] = 1;
                return poly;
            }
            powers.push(next);
        }
    }
}

/// Draws a uniformly random scalar family of the given length.
pub fn random_scalars<R: Rng>(field: FieldSpec, len: usize, rng: &mut R) -> Vec<u64> {
    (0..len).map(|_| field.sample(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TruncatedAlgebra;

    fn f() -> FieldSpec {
        FieldSpec::default_prime()
    }

    fn local_point(r: usize, ell: usize, mats: Vec<Vec<Vec<u64>>>) -> ModulePoint {
        let alg = TruncatedAlgebra::local(r, ell).unwrap();
        let d = mats[0].len();
        let mats = mats
            .into_iter()
            .map(|rows| Mat::from_rows(f(), rows).unwrap())
            .collect();
        ModulePoint::new(alg, DimVector(vec![d]), f(), mats).unwrap()
    }

    fn jordan_block(d: usize) -> Vec<Vec<u64>> {
        let mut rows = vec![vec![0u64; d]; d];
        for i in 1..d {
            rows[i][i - 1] = 1;
        }
        rows
    }

    fn zero_mat(d: usize) -> Vec<Vec<u64>> {
        vec![vec![0u64; d]; d]
    }

    #[test]
    fn zero_point_passes_and_is_semisimple() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        let m = ModulePoint::zero_point(alg, DimVector(vec![3]), f()).unwrap();
        assert!(m.check_point().is_ok());
        assert_eq!(m.radical_layering(), SemisimpleSequence::local(&[3, 0, 0]));
        assert_eq!(m.socle_layering(), SemisimpleSequence::local(&[3, 0, 0]));
        let (r, s) = m.radsoc_pair();
        assert_eq!(r, s);
    }

    #[test]
    fn nilpotent_pair_passes_check() {
        let m = local_point(2, 2, vec![jordan_block(3), jordan_block(3)]);
        assert!(m.check_point().is_ok());
    }

    #[test]
    fn scalar_identity_violates_truncation() {
        let m = local_point(2, 1, vec![vec![vec![1]], vec![vec![0]]]);
        match m.check_point() {
            CheckOutcome::Violations(ws) => {
                let shown: Vec<String> = ws.iter().map(|w| w.display(&m.alg.quiver)).collect();
                assert_eq!(shown, vec!["alpha1*alpha1"]);
            }
            CheckOutcome::Ok => panic!("expected a violation"),
        }
    }

    #[test]
    fn uniserial_layerings() {
        let m = local_point(2, 2, vec![jordan_block(3), zero_mat(3)]);
        assert_eq!(m.radical_layering(), SemisimpleSequence::local(&[1, 1, 1]));
        assert_eq!(m.socle_layering(), SemisimpleSequence::local(&[1, 1, 1]));
        let (r, s) = m.radsoc_pair();
        assert_eq!(s, r.reverse());
    }

    #[test]
    fn path_nullity_examples() {
        let m = local_point(2, 2, vec![jordan_block(3), zero_mat(3)]);
        let q = &m.alg.quiver;
        let a1 = PathWord::from_ids(q, 1, &["alpha1"]).unwrap();
        assert_eq!(m.path_nullity(&a1), 1);
        let a2 = PathWord::from_ids(q, 1, &["alpha2"]).unwrap();
        assert_eq!(m.path_nullity(&a2), 3);
        // Any word of full truncation length acts as zero.
        let w = PathWord::from_ids(q, 1, &["alpha1", "alpha1", "alpha1"]).unwrap();
        assert_eq!(m.path_nullity(&w), m.total_dim());
        // The vertex idempotent acts as the identity on its block.
        let e = PathWord::vertex(1);
        assert_eq!(m.path_nullity(&e), 0);
    }

    #[test]
    fn endomorphism_dims() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        let simple = ModulePoint::zero_point(alg.clone(), DimVector(vec![1]), f()).unwrap();
        assert_eq!(simple.endomorphisms().dim(), 1);
        let double = ModulePoint::zero_point(alg, DimVector(vec![2]), f()).unwrap();
        assert_eq!(double.endomorphisms().dim(), 4);
    }

    #[test]
    fn indecomposability_of_split_and_simple_modules() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        let simple = ModulePoint::zero_point(alg.clone(), DimVector(vec![1]), f()).unwrap();
        assert!(simple.is_indecomposable(5, 1).unwrap());
        let double = ModulePoint::zero_point(alg, DimVector(vec![2]), f()).unwrap();
        assert!(!double.is_indecomposable(5, 1).unwrap());
        // Uniserial chains are indecomposable.
        let chain = local_point(2, 2, vec![jordan_block(3), zero_mat(3)]);
        assert!(chain.is_indecomposable(5, 1).unwrap());
    }

    #[test]
    fn small_field_is_rejected_for_end_analysis() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        let m =
            ModulePoint::zero_point(alg, DimVector(vec![3]), FieldSpec::new(3).unwrap()).unwrap();
        assert!(m.is_indecomposable(3, 0).is_err());
    }

    #[test]
    fn dual_swaps_layerings() {
        let m = local_point(2, 2, vec![jordan_block(3), zero_mat(3)]);
        let d = m.dual();
        assert!(d.check_point().is_ok());
        assert_eq!(d.radical_layering(), m.socle_layering());
        assert_eq!(d.socle_layering(), m.radical_layering());
        assert_eq!(d.dual(), m);
    }

    #[test]
    fn loewy_support_distinguishes_split_summands() {
        let chain = local_point(2, 2, vec![jordan_block(3), zero_mat(3)]);
        assert!(chain.loewy_full_support());
        // Chain plus a simple summand: the simple generator dies under J.
        let mut a1 = zero_mat(4);
        a1[1][0] = 1;
        a1[2][1] = 1;
        let split = local_point(2, 2, vec![a1, zero_mat(4)]);
        assert_eq!(
            split.radical_layering(),
            SemisimpleSequence::local(&[2, 1, 1])
        );
        assert!(!split.loewy_full_support());
    }

    #[test]
    fn subquotient_of_uniserial() {
        let m = local_point(2, 3, vec![jordan_block(4), zero_mat(4)]);
        let sub = m.subquotient(1, 2).unwrap();
        assert_eq!(sub.alg.truncation, 1);
        assert_eq!(sub.total_dim(), 2);
        assert!(sub.check_point().is_ok());
        assert_eq!(sub.radical_layering(), SemisimpleSequence::local(&[1, 1]));
    }

    #[test]
    fn module_json_round_trip() {
        let m = local_point(2, 2, vec![jordan_block(3), zero_mat(3)]);
        let s = serde_json::to_string(&m.to_json()).unwrap();
        let back = ModulePoint::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(m, back);
    }

    /// The uniserial chain 1 -> 2 -> 3 -> 4 over the flow quiver, built by
    /// hand: each arrow matrix is the 1x1 block prescribed by the graph.
    fn flow_chain_module() -> ModulePoint {
        use crate::corpus::four_vertex_flow_quiver;
        let alg = TruncatedAlgebra::new(four_vertex_flow_quiver(), 3).unwrap();
        let one = Mat::from_rows(f(), vec![vec![1]]).unwrap();
        let zero = Mat::from_rows(f(), vec![vec![0]]).unwrap();
        // Arrow order (sorted by id): alpha: 1->2, beta: 2->3, delta: 3->2,
        // gamma: 3->4.
        ModulePoint::new(
            alg,
            DimVector(vec![1, 1, 1, 1]),
            f(),
            vec![one.clone(), one.clone(), zero, one],
        )
        .unwrap()
    }

    /// The split module over the flow quiver: generators at vertices 1 and
    /// 3, with 3 feeding vertex 2 through the back arrow and vertex 4.
    fn flow_split_module() -> ModulePoint {
        use crate::corpus::four_vertex_flow_quiver;
        let alg = TruncatedAlgebra::new(four_vertex_flow_quiver(), 3).unwrap();
        let one = Mat::from_rows(f(), vec![vec![1]]).unwrap();
        let zero = Mat::from_rows(f(), vec![vec![0]]).unwrap();
        ModulePoint::new(
            alg,
            DimVector(vec![1, 1, 1, 1]),
            f(),
            vec![one.clone(), zero, one.clone(), one],
        )
        .unwrap()
    }

    #[test]
    fn flow_quiver_reference_modules() {
        let g = flow_chain_module();
        assert!(g.check_point().is_ok());
        let (rad, soc) = g.radsoc_pair();
        assert_eq!(
            rad.to_json(),
            vec![
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1]
            ]
        );
        assert_eq!(soc, rad.reverse());
        // The back arrow annihilates the chain module entirely.
        let delta = PathWord::from_ids(&g.alg.quiver, 3, &["delta"]).unwrap();
        assert_eq!(g.path_nullity(&delta), 4);

        let h = flow_split_module();
        assert!(h.check_point().is_ok());
        let (rad, soc) = h.radsoc_pair();
        assert_eq!(
            rad.to_json(),
            vec![
                vec![1, 0, 1, 0],
                vec![0, 1, 0, 1],
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0]
            ]
        );
        assert_eq!(
            soc.to_json(),
            vec![
                vec![0, 1, 0, 1],
                vec![1, 0, 1, 0],
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0]
            ]
        );
        // Here the back arrow acts with rank one.
        assert_eq!(h.path_nullity(&delta), 3);
        // Both modules are rigid representatives of their strata; their
        // endomorphism algebras are scalars.
        assert!(g.is_indecomposable(5, 0).unwrap());
        assert!(h.is_indecomposable(5, 0).unwrap());
    }
}
