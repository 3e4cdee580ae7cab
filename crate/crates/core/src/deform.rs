//! Explicit one-parameter deformation families between strata.
//!
//! Two constructions, both over local algebras:
//!
//! - the simple-move family: when every module of the stratum has a simple
//!   direct summand in some two-layer subquotient `J^ρ M / J^{ρ+2} M`, one
//!   basis element of layer `ρ` is pushed down to layer `ρ+1` by a single
//!   matrix entry linear in the parameter;
//! - the tail-extension family: when the layering ends early (layer
//!   `min(d, L+1) - 1` vanishes), the deepest layer of dimension at least
//!   two sheds one basis element into a longer uniserial tail.
//!
//! Both families evaluate to the base module at `t = 0` and land in the
//! target stratum for every `t != 0`, witnessing that the base stratum lies
//! in the closure of the target stratum.

use crate::algebra::TruncatedAlgebra;
use crate::fp::FieldSpec;
use crate::layers::{DimVector, SemisimpleSequence};
use crate::linalg::{Mat, Subspace};
use crate::repmod::{BlockSubspace, ModulePoint};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Layered linear data: per-vertex layer sizes `K_0..K_L` plus, for each
/// arrow, blocks mapping layer `l` into strictly higher layers.
#[derive(Debug, Clone)]
pub struct GradedMapData {
    pub alg: TruncatedAlgebra,
    pub field: FieldSpec,
    pub layer_dims: Vec<DimVector>,
    /// `blocks[arrow][(u, l)]` is the component `K_l -> K_u` (`u > l`) from
    /// the arrow's source block to its target block.
    pub blocks: Vec<BTreeMap<(usize, usize), Mat>>,
}

impl GradedMapData {
    pub fn profile(&self) -> SemisimpleSequence {
        SemisimpleSequence {
            layers: self.layer_dims.clone(),
        }
    }

    /// Offset of layer `l` inside the block of `vertex` (0-based).
    fn layer_offset(&self, vertex: usize, l: usize) -> usize {
        (0..l).map(|k| self.layer_dims[k].0[vertex]).sum()
    }

    fn block_dim(&self, vertex: usize) -> usize {
        self.layer_dims.iter().map(|d| d.0[vertex]).sum()
    }
}

/// Assembles the full matrices from graded blocks.  Words of length `L+1`
/// vanish automatically because every block raises the layer.
pub fn graded_point(data: &GradedMapData) -> Result<ModulePoint> {
    let n = data.alg.vertex_count();
    let levels = data.alg.truncation + 1;
    if data.layer_dims.len() != levels || data.layer_dims.iter().any(|d| d.len() != n) {
        return Err(Error::Shape("layer sizes do not match the algebra".into()));
    }
    if data.blocks.len() != data.alg.quiver.arrows.len() {
        return Err(Error::Shape("one block map per arrow required".into()));
    }
    let dims = DimVector((0..n).map(|i| data.block_dim(i)).collect());
    let mut mats = Vec::with_capacity(data.blocks.len());
    for (idx, a) in data.alg.quiver.arrows.iter().enumerate() {
        let (s, t) = (a.source - 1, a.target - 1);
        let mut m = Mat::zeros(data.field, dims.0[t], dims.0[s]);
        for (&(u, l), block) in &data.blocks[idx] {
            if u <= l || u >= levels || l >= levels {
                return Err(Error::Shape(format!(
                    "block ({u}, {l}) of arrow '{}' does not raise the layer",
                    a.id
                )));
            }
            let want = (data.layer_dims[u].0[t], data.layer_dims[l].0[s]);
            if (block.rows, block.cols) != want {
                return Err(Error::Shape(format!(
                    "block ({u}, {l}) of arrow '{}' is {}x{}, expected {}x{}",
                    a.id, block.rows, block.cols, want.0, want.1
                )));
            }
            let (ro, co) = (data.layer_offset(t, u), data.layer_offset(s, l));
            for i in 0..block.rows {
                for j in 0..block.cols {
                    m.set(ro + i, co + j, block.get(i, j));
                }
            }
        }
        mats.push(m);
    }
    ModulePoint::new(data.alg.clone(), dims, data.field, mats)
}

/// The exactness criterion: the assembled module has radical layering equal
/// to the layer profile (rather than strictly above it) iff for each `l` the
/// images of layer `l` span all of layer `l+1` modulo higher layers.
pub fn graded_layering_is_exact(data: &GradedMapData) -> bool {
    let n = data.alg.vertex_count();
    let levels = data.alg.truncation + 1;
    for l in 0..levels - 1 {
        for j in 0..n {
            let need = data.layer_dims[l + 1].0[j];
            if need == 0 {
                continue;
            }
            let mut span = Subspace::zero(data.field, need);
            for (idx, a) in data.alg.quiver.arrows.iter().enumerate() {
                if a.target - 1 != j {
                    continue;
                }
                if let Some(block) = data.blocks[idx].get(&(l + 1, l)) {
                    for c in 0..block.cols {
                        span.insert(block.col(c));
                    }
                }
            }
            if span.dim() < need {
                return false;
            }
        }
    }
    true
}

/// Context for the witness entry of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformWitness {
    /// "simple-move" or "tail-extension".
    pub kind: &'static str,
    /// The layer the moved basis element leaves.
    pub layer: usize,
    /// Arrow whose matrix gains the parameter entry.
    pub arrow_id: String,
    /// Human-readable summary of the relation that makes the move possible.
    pub detail: String,
}

/// A one-parameter family `t -> D_t` with matrices linear in `t`; `D_0` is
/// the base point and every `D_t`, `t != 0`, has the target layering.
#[derive(Debug, Clone)]
pub struct DeformationFamily {
    pub base: ModulePoint,
    pub target: SemisimpleSequence,
    /// Entries `(arrow, row, col)` that gain `+t`.
    pub t_entries: Vec<(usize, usize, usize)>,
    pub witness: DeformWitness,
}

impl DeformationFamily {
    pub fn evaluate(&self, t: u64) -> ModulePoint {
        let mut point = self.base.clone();
        for &(arrow, row, col) in &self.t_entries {
            let cur = point.mats[arrow].get(row, col);
            point.mats[arrow].set(row, col, point.field.add(cur, t));
        }
        point
    }
}

fn require_local(m: &ModulePoint) -> Result<()> {
    if !m.alg.is_local() {
        return Err(Error::Precondition(
            "deformation families are implemented for one-vertex algebras".into(),
        ));
    }
    Ok(())
}

/// Complement vectors of `V_{l+1}` inside `V_l` for each layer (one-vertex
/// chain).
fn layer_complements(chain: &[BlockSubspace], levels: usize) -> Vec<Vec<Vec<u64>>> {
    (0..levels)
        .map(|l| chain[l + 1].blocks[0].complement_in(&chain[l].blocks[0]))
        .collect()
}

/// Residues of `A_arrow * v` modulo `V_{depth}` for the one-vertex chain.
fn reduced_image(
    m: &ModulePoint,
    chain: &[BlockSubspace],
    arrow: usize,
    v: &[u64],
    depth: usize,
) -> Vec<u64> {
    chain[depth].blocks[0].reduce(&m.mats[arrow].apply(v))
}

/// Kernel vectors of the map sending a layer-`rho` residue `x` to the tuple
/// of residues `(A_a x mod V_{rho+2})_a`, restricted to the listed arrows.
/// Returns the kernel combinations of `comp`.
fn annihilated_layer_vectors(
    m: &ModulePoint,
    chain: &[BlockSubspace],
    comp: &[Vec<u64>],
    rho: usize,
    arrows: &[usize],
) -> Vec<Vec<u64>> {
    let d = m.total_dim();
    if comp.is_empty() {
        return Vec::new();
    }
    let mut mat = Mat::zeros(m.field, d * arrows.len(), comp.len());
    for (j, v) in comp.iter().enumerate() {
        for (ai, &arrow) in arrows.iter().enumerate() {
            let img = reduced_image(m, chain, arrow, v, rho + 2);
            for (k, &x) in img.iter().enumerate() {
                mat.set(ai * d + k, j, x);
            }
        }
    }
    mat.kernel_basis()
        .into_iter()
        .map(|coeffs| combine(m.field, comp, &coeffs))
        .collect()
}

fn combine(field: FieldSpec, vecs: &[Vec<u64>], coeffs: &[u64]) -> Vec<u64> {
    let d = vecs[0].len();
    let mut out = vec![0u64; d];
    for (v, &c) in vecs.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for i in 0..d {
            out[i] = field.add(out[i], field.mul(c, v[i]));
        }
    }
    out
}

/// Conjugates the arrow matrices into the given basis (columns).
fn into_basis(m: &ModulePoint, basis: &[Vec<u64>]) -> Result<Vec<Mat>> {
    let d = m.total_dim();
    let mut b = Mat::zeros(m.field, d, d);
    for (j, v) in basis.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            b.set(i, j, x);
        }
    }
    let binv = b
        .inverse()
        .ok_or_else(|| Error::Precondition("adapted vectors do not form a basis".into()))?;
    Ok(m.mats.iter().map(|a| binv.mul(&a.mul(&b))).collect())
}

/// Global index of basis element `(layer, j)` when layers are concatenated.
fn basis_index(layer_sizes: &[usize], l: usize, j: usize) -> usize {
    layer_sizes[..l].iter().sum::<usize>() + j
}

/// The simple-move family from layer `rho`.  Requires a layer-`rho` element
/// annihilated into `J^{rho+2} M` (the simple-summand witness) and the
/// target layering, one simple lower, to be realizable.
pub fn lemma_5_2_family(m: &ModulePoint, rho: usize) -> Result<DeformationFamily> {
    require_local(m)?;
    let ell = m.alg.truncation;
    if rho + 1 > ell {
        return Err(Error::Precondition(format!("need rho < L = {ell}")));
    }
    if !m.check_point().is_ok() {
        return Err(Error::Precondition(
            "base point violates the relations".into(),
        ));
    }
    let layering = m.radical_layering();
    let dims = layering.local_dims().expect("local module");
    let r = m.alg.quiver.arrows.len();
    // Target: one simple moved from layer rho to rho + 1.
    if dims[rho] == 0 {
        return Err(Error::Precondition(format!("layer {rho} is empty")));
    }
    let mut tdims = dims.clone();
    tdims[rho] -= 1;
    tdims[rho + 1] += 1;
    for l in 1..=ell {
        if tdims[l] > r * tdims[l - 1] {
            return Err(Error::Precondition(format!(
                "target layering ({}) is not realizable",
                SemisimpleSequence::local(&tdims)
            )));
        }
    }
    let chain = m.radical_filtration();
    let mut comps = layer_complements(&chain, ell + 1);
    // The distinguished element: annihilated into J^{rho+2} M by every arrow.
    let all_arrows: Vec<usize> = (0..r).collect();
    let killed = annihilated_layer_vectors(m, &chain, &comps[rho], rho, &all_arrows);
    let Some(b1) = killed.first().cloned() else {
        return Err(Error::Precondition(format!(
            "no layer-{rho} element is annihilated into J^{} M",
            rho + 2
        )));
    };
    // Rebuild layer rho with b1 first.
    let mut layer_rho = vec![b1.clone()];
    let mut acc = chain[rho + 1].blocks[0].clone();
    acc.insert(b1.clone());
    for v in comps[rho].drain(..) {
        if acc.insert(v.clone()) {
            layer_rho.push(v);
        }
    }
    comps[rho] = layer_rho;
    let layer_sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    debug_assert_eq!(layer_sizes, dims);
    let basis: Vec<Vec<u64>> = comps.iter().flatten().cloned().collect();
    let mats = into_basis(m, &basis)?;
    // Dependence among the images of the non-distinguished layer-rho
    // elements in layer rho + 1: columns indexed by (arrow, j >= 2).
    let row0 = basis_index(&layer_sizes, rho + 1, 0);
    let rows = dims[rho + 1];
    let cols = r * (dims[rho] - 1);
    if cols == 0 {
        return Err(Error::Precondition(
            "layer has a single element; nothing to trade".into(),
        ));
    }
    let mut dep = Mat::zeros(m.field, rows, cols);
    let mut col_labels = Vec::with_capacity(cols);
    for arrow in 0..r {
        for j in 1..dims[rho] {
            let src = basis_index(&layer_sizes, rho, j);
            let col = col_labels.len();
            for i in 0..rows {
                dep.set(i, col, mats[arrow].get(row0 + i, src));
            }
            col_labels.push((arrow, j));
        }
    }
    let kernel = dep.kernel_basis();
    let relation = kernel
        .first()
        .ok_or_else(|| Error::Precondition("no relation among the layer images".into()))?;
    let lead = relation
        .iter()
        .position(|&c| c != 0)
        .expect("kernel vectors are nonzero");
    let (gamma, s) = col_labels[lead];
    // Re-order so the dependent element sits in position 2 of its layer.
    comps[rho].swap(1, s);
    let basis: Vec<Vec<u64>> = comps.iter().flatten().cloned().collect();
    let mats = into_basis(m, &basis)?;
    let base = ModulePoint::new(m.alg.clone(), m.dims.clone(), m.field, mats)?;
    let row = basis_index(&layer_sizes, rho, 0);
    let col = basis_index(&layer_sizes, rho, 1);
    debug_assert_eq!(base.mats[gamma].get(row, col), 0);
    let arrow_id = m.alg.quiver.arrows[gamma].id.clone();
    Ok(DeformationFamily {
        base,
        target: SemisimpleSequence::local(&tdims),
        t_entries: vec![(gamma, row, col)],
        witness: DeformWitness {
            kind: "simple-move",
            layer: rho,
            arrow_id: arrow_id.clone(),
            detail: format!(
                "basis element 1 of layer {rho} is annihilated into J^{} M; {}*(element 2) \
                 depends on the other arrow images, freeing the entry that gains t",
                rho + 2,
                arrow_id
            ),
        },
    })
}

/// The tail-extension family.  Requires the layering to vanish at index
/// `min(d, L+1) - 1`; `h` must be the deepest layer of dimension at least 2.
/// One element of layer `h` is pushed into a uniserial tail one layer longer
/// than before.
pub fn step1_family(m: &ModulePoint, h: usize) -> Result<DeformationFamily> {
    require_local(m)?;
    let ell = m.alg.truncation;
    if !m.check_point().is_ok() {
        return Err(Error::Precondition(
            "base point violates the relations".into(),
        ));
    }
    let layering = m.radical_layering();
    let dims = layering.local_dims().expect("local module");
    let d = m.total_dim();
    let cut = d.min(ell + 1);
    if dims[cut - 1] != 0 {
        return Err(Error::Precondition(format!(
            "layer {} must vanish for the tail extension",
            cut - 1
        )));
    }
    let lprime = (0..=ell)
        .rev()
        .find(|&l| dims[l] != 0)
        .ok_or_else(|| Error::Precondition("zero module cannot be deformed".into()))?;
    let expect_h = (0..=lprime)
        .rev()
        .find(|&l| dims[l] >= 2)
        .ok_or_else(|| Error::Precondition("no layer of dimension at least 2".into()))?;
    if h != expect_h {
        return Err(Error::Precondition(format!(
            "h must be the deepest layer of dimension >= 2, which is {expect_h}"
        )));
    }
    // Target: layer h loses one simple; single simples through L'+1.
    let mut tdims = vec![0usize; ell + 1];
    tdims[..h].copy_from_slice(&dims[..h]);
    tdims[h] = dims[h] - 1;
    for slot in tdims.iter_mut().take(lprime + 2).skip(h + 1) {
        *slot = 1;
    }
    let chain = m.radical_filtration();
    let mut comps = layer_complements(&chain, ell + 1);
    // b1: layer-h residue annihilated into J^{h+2} M by the first arrow.
    let killed = annihilated_layer_vectors(m, &chain, &comps[h], h, &[0]);
    let Some(b1) = killed.first().cloned() else {
        return Err(Error::Precondition(
            "no layer element annihilated by the first arrow".into(),
        ));
    };
    // b2: an independent layer-h element with J b2 = J^{h+1} M, searched
    // over small combinations of the complement vectors.
    let picked = pick_tail_generator(m, &chain, &comps[h], &b1, h, lprime)?;
    let mut layer_h = vec![b1.clone(), picked.clone()];
    let mut acc = chain[h + 1].blocks[0].clone();
    acc.insert(b1.clone());
    acc.insert(picked.clone());
    for v in comps[h].drain(..) {
        if acc.insert(v.clone()) {
            layer_h.push(v);
        }
    }
    comps[h] = layer_h;
    let layer_sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
    debug_assert_eq!(layer_sizes, dims);
    let basis: Vec<Vec<u64>> = comps.iter().flatten().cloned().collect();
    let mats = into_basis(m, &basis)?;
    let base = ModulePoint::new(m.alg.clone(), m.dims.clone(), m.field, mats)?;
    let row = basis_index(&layer_sizes, h, 1);
    let col = basis_index(&layer_sizes, h, 0);
    debug_assert_eq!(base.mats[0].get(row, col), 0);
    let arrow_id = m.alg.quiver.arrows[0].id.clone();
    Ok(DeformationFamily {
        base,
        target: SemisimpleSequence::local(&tdims),
        t_entries: vec![(0, row, col)],
        witness: DeformWitness {
            kind: "tail-extension",
            layer: h,
            arrow_id: arrow_id.clone(),
            detail: format!(
                "{arrow_id}*(element 1 of layer {h}) lies in J^{} M and element 2 generates \
                 J^{} M, so the entry sending element 1 to element 2 extends the tail",
                h + 2,
                h + 1
            ),
        },
    })
}

/// Finds a layer-`h` element, independent of `b1`, whose radical generates
/// `J^{h+1} M`.  Tries single complement vectors, then small combinations.
fn pick_tail_generator(
    m: &ModulePoint,
    chain: &[BlockSubspace],
    comp: &[Vec<u64>],
    b1: &[u64],
    h: usize,
    lprime: usize,
) -> Result<Vec<u64>> {
    let field = m.field;
    let r = m.alg.quiver.arrows.len();
    let tail_trivial = h == lprime;
    let independent = |v: &[u64]| {
        let mut acc = chain[h + 1].blocks[0].clone();
        acc.insert(b1.to_vec());
        acc.insert(v.to_vec())
    };
    let generates = |v: &[u64]| {
        tail_trivial || (0..r).any(|a| reduced_image(m, chain, a, v, h + 2).iter().any(|&x| x != 0))
    };
    for v in comp {
        if independent(v) && generates(v) {
            return Ok(v.clone());
        }
    }
    // Small deterministic combinations.
    for i in 0..comp.len() {
        for j in 0..comp.len() {
            if i == j {
                continue;
            }
            for lam in 1..=3u64 {
                let v = combine(field, &[comp[i].clone(), comp[j].clone()], &[1, lam]);
                if independent(&v) && generates(&v) {
                    return Ok(v);
                }
            }
        }
    }
    Err(Error::Precondition(
        "no layer element generates the radical tail; the point is too degenerate".into(),
    ))
}
