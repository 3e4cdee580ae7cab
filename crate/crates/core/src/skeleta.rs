//! Skeleta: layered path forests that parametrize module bases.
//!
//! A skeleton for a semisimple sequence `S` is a set of paths in a projective
//! cover `P = ⊕_r Λ z_r` of `S_0`, closed under initial subpaths, whose
//! length-`l` members ending at each vertex number exactly `S_l[i]`.  The
//! critical paths (minimal non-members with all proper initial subpaths in
//! the skeleton) carry the presentation relations: assigning a scalar to each
//! (critical, eligible member) pair produces a module with radical layering
//! exactly `S`.  Drawing those scalars uniformly from a large prime field
//! samples the dense skeleton chart of the stratum, which is how every
//! generic statistic in this crate is estimated.

use crate::algebra::{PathWord, TruncatedAlgebra};
use crate::fp::FieldSpec;
use crate::layers::{realizable, DimVector, SemisimpleSequence};
use crate::linalg::Mat;
use crate::repmod::ModulePoint;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A path `p z_r` in the projective cover: a root index plus the word
/// applied to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonPath {
    pub root: usize,
    pub word: PathWord,
}

impl SkeletonPath {
    fn key(&self) -> (usize, usize, PathWord) {
        (self.word.len(), self.root, self.word.clone())
    }
}

impl PartialOrd for SkeletonPath {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SkeletonPath {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// An abstract skeleton: roots with their norming vertices plus the member
/// paths (including all length-0 roots), kept in canonical order
/// (length, root, word).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    /// Norming vertex of each root, ascending.
    pub roots: Vec<usize>,
    pub paths: Vec<SkeletonPath>,
}

impl Skeleton {
    /// Per-layer, per-vertex member counts.
    pub fn layer_profile(&self, alg: &TruncatedAlgebra) -> SemisimpleSequence {
        let n = alg.vertex_count();
        let mut layers = vec![DimVector::zeros(n); alg.truncation + 1];
        for p in &self.paths {
            layers[p.word.len()].0[p.word.end(&alg.quiver) - 1] += 1;
        }
        SemisimpleSequence { layers }
    }

    /// Checks closure under initial subpaths and the layer counts.
    pub fn validate(&self, alg: &TruncatedAlgebra, layering: &SemisimpleSequence) -> Result<()> {
        let members: std::collections::BTreeSet<(usize, &PathWord)> =
            self.paths.iter().map(|p| (p.root, &p.word)).collect();
        for p in &self.paths {
            if p.word.len() > alg.truncation {
                return Err(Error::Layers("member path exceeds the truncation".into()));
            }
            if let Some(parent) = p.word.parent() {
                if !members.contains(&(p.root, &parent)) {
                    return Err(Error::Layers(format!(
                        "skeleton not closed under initial subpaths at {}*z{}",
                        p.word.display(&alg.quiver),
                        p.root + 1
                    )));
                }
            } else if p.word.start() != self.roots[p.root] {
                return Err(Error::Layers("root path normed by the wrong vertex".into()));
            }
        }
        if &self.layer_profile(alg) != layering {
            return Err(Error::Layers(
                "layer counts do not match the sequence".into(),
            ));
        }
        Ok(())
    }

    /// Indented one-tree-per-root rendering; parses back with `from_text`.
    pub fn to_text(&self, alg: &TruncatedAlgebra) -> String {
        let mut out = String::new();
        for (r, &v) in self.roots.iter().enumerate() {
            out.push_str(&format!("z{} @ v{}\n", r + 1, v));
            self.write_children(alg, r, &PathWord::vertex(v), 1, &mut out);
        }
        out
    }

    fn write_children(
        &self,
        alg: &TruncatedAlgebra,
        root: usize,
        at: &PathWord,
        depth: usize,
        out: &mut String,
    ) {
        for p in &self.paths {
            if p.root != root || p.word.len() != at.len() + 1 {
                continue;
            }
            if p.word.parent().as_ref() != Some(at) {
                continue;
            }
            let arrow = &alg.quiver.arrows[*p.word.applied().last().unwrap()];
            out.push_str(&format!(
                "{}{} -> v{}\n",
                "  ".repeat(depth),
                arrow.id,
                arrow.target
            ));
            self.write_children(alg, root, &p.word, depth + 1, out);
        }
    }

    pub fn from_text(alg: &TruncatedAlgebra, text: &str) -> Result<Skeleton> {
        let mut roots = Vec::new();
        let mut paths: Vec<SkeletonPath> = Vec::new();
        // Stack of words along the current branch, one entry per depth.
        let mut branch: Vec<PathWord> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            if raw.trim().is_empty() {
                continue;
            }
            let indent = raw.len() - raw.trim_start().len();
            if indent % 2 != 0 {
                return Err(Error::Input(format!("line {}: odd indent", lineno + 1)));
            }
            let depth = indent / 2;
            let line = raw.trim();
            if depth == 0 {
                let rest = line
                    .strip_prefix('z')
                    .and_then(|s| s.split_once(" @ v"))
                    .ok_or_else(|| {
                        Error::Input(format!("line {}: expected 'zN @ vM'", lineno + 1))
                    })?;
                let vertex: usize = rest
                    .1
                    .parse()
                    .map_err(|_| Error::Input(format!("line {}: bad vertex", lineno + 1)))?;
                roots.push(vertex);
                branch = vec![PathWord::vertex(vertex)];
                paths.push(SkeletonPath {
                    root: roots.len() - 1,
                    word: PathWord::vertex(vertex),
                });
                continue;
            }
            if depth > branch.len() {
                return Err(Error::Input(format!("line {}: indent jumps", lineno + 1)));
            }
            let (id, _) = line.split_once(" -> ").ok_or_else(|| {
                Error::Input(format!("line {}: expected 'arrow -> vM'", lineno + 1))
            })?;
            let arrow = alg
                .quiver
                .arrows
                .iter()
                .position(|a| a.id == id)
                .ok_or_else(|| {
                    Error::Input(format!("line {}: unknown arrow '{id}'", lineno + 1))
                })?;
            branch.truncate(depth);
            let word = branch.last().unwrap().extended(arrow);
            branch.push(word.clone());
            paths.push(SkeletonPath {
                root: roots.len() - 1,
                word,
            });
        }
        paths.sort();
        Ok(Skeleton { roots, paths })
    }

    pub fn to_json(&self, alg: &TruncatedAlgebra) -> JsonSkeleton {
        JsonSkeleton {
            roots: self.roots.clone(),
            paths: self
                .paths
                .iter()
                .map(|p| JsonSkeletonPath {
                    root: p.root,
                    arrows: p
                        .word
                        .applied()
                        .iter()
                        .map(|&i| alg.quiver.arrows[i].id.clone())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(alg: &TruncatedAlgebra, j: &JsonSkeleton) -> Result<Skeleton> {
        let mut paths = Vec::new();
        for p in &j.paths {
            let start = *j
                .roots
                .get(p.root)
                .ok_or_else(|| Error::Input(format!("root index {} out of range", p.root)))?;
            let ids: Vec<&str> = p.arrows.iter().map(|s| s.as_str()).collect();
            paths.push(SkeletonPath {
                root: p.root,
                word: PathWord::from_ids(&alg.quiver, start, &ids)?,
            });
        }
        paths.sort();
        Ok(Skeleton {
            roots: j.roots.clone(),
            paths,
        })
    }
}

/// JSON form of a skeleton: arrow ids in application order per member path.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonSkeleton {
    pub roots: Vec<usize>,
    pub paths: Vec<JsonSkeletonPath>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonSkeletonPath {
    pub root: usize,
    pub arrows: Vec<String>,
}

fn shape_check(alg: &TruncatedAlgebra, layering: &SemisimpleSequence) -> Result<()> {
    if layering.layers.len() != alg.truncation + 1 || layering.vertex_count() != alg.vertex_count()
    {
        return Err(Error::Layers(
            "sequence shape does not match the algebra".into(),
        ));
    }
    Ok(())
}

fn roots_of(layering: &SemisimpleSequence) -> Vec<usize> {
    let mut roots = Vec::new();
    for (i, &count) in layering.layers[0].0.iter().enumerate() {
        for _ in 0..count {
            roots.push(i + 1);
        }
    }
    roots
}

/// All candidate one-arrow extensions of the previous level, grouped by end
/// vertex, in canonical order.
fn level_candidates(alg: &TruncatedAlgebra, prev_level: &[SkeletonPath]) -> Vec<Vec<SkeletonPath>> {
    let n = alg.vertex_count();
    let mut cands = vec![Vec::new(); n];
    for p in prev_level {
        let at = p.word.end(&alg.quiver);
        for (idx, a) in alg.quiver.arrows_from(at) {
            cands[a.target - 1].push(SkeletonPath {
                root: p.root,
                word: p.word.extended(idx),
            });
        }
    }
    for c in cands.iter_mut() {
        c.sort();
    }
    cands
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn enumerate_inner(
    alg: &TruncatedAlgebra,
    layering: &SemisimpleSequence,
    limit: Option<usize>,
) -> Result<Vec<Skeleton>> {
    shape_check(alg, layering)?;
    if !realizable(alg, layering)? {
        return Ok(Vec::new());
    }
    let roots = roots_of(layering);
    let level0: Vec<SkeletonPath> = roots
        .iter()
        .enumerate()
        .map(|(r, &v)| SkeletonPath {
            root: r,
            word: PathWord::vertex(v),
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Vec<SkeletonPath>> = vec![level0];

    fn rec(
        alg: &TruncatedAlgebra,
        layering: &SemisimpleSequence,
        chosen: &mut Vec<Vec<SkeletonPath>>,
        roots: &[usize],
        out: &mut Vec<Skeleton>,
        limit: Option<usize>,
    ) {
        if limit.is_some_and(|cap| out.len() >= cap) {
            return;
        }
        let l = chosen.len();
        if l == layering.layers.len() {
            let mut paths: Vec<SkeletonPath> = chosen.iter().flatten().cloned().collect();
            paths.sort();
            out.push(Skeleton {
                roots: roots.to_vec(),
                paths,
            });
            return;
        }
        let cands = level_candidates(alg, chosen.last().unwrap());
        let needs = &layering.layers[l].0;
        // Per-vertex subset choices, combined as a product in lex order.
        let per_vertex: Vec<Vec<Vec<usize>>> = needs
            .iter()
            .enumerate()
            .map(|(i, &k)| k_subsets(cands[i].len(), k))
            .collect();
        if per_vertex.iter().any(|v| v.is_empty()) {
            return;
        }
        let mut pick = vec![0usize; per_vertex.len()];
        loop {
            let mut level: Vec<SkeletonPath> = Vec::new();
            for (i, cand) in cands.iter().enumerate() {
                for &j in &per_vertex[i][pick[i]] {
                    level.push(cand[j].clone());
                }
            }
            level.sort();
            chosen.push(level);
            rec(alg, layering, chosen, roots, out, limit);
            chosen.pop();
            if limit.is_some_and(|cap| out.len() >= cap) {
                return;
            }
            // Advance the odometer, last vertex fastest.
            let mut i = per_vertex.len();
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < per_vertex[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    rec(alg, layering, &mut chosen, &roots, &mut out, limit);
    Ok(out)
}

/// All skeleta with the given layer profile, in a deterministic order; empty
/// exactly when the sequence is not realizable.
pub fn enumerate_skeleta(
    alg: &TruncatedAlgebra,
    layering: &SemisimpleSequence,
) -> Result<Vec<Skeleton>> {
    enumerate_inner(alg, layering, None)
}

/// Like `enumerate_skeleta` but stops after `max` skeleta.
pub fn enumerate_skeleta_up_to(
    alg: &TruncatedAlgebra,
    layering: &SemisimpleSequence,
    max: usize,
) -> Result<Vec<Skeleton>> {
    enumerate_inner(alg, layering, Some(max))
}

/// The first skeleton in enumeration order, built greedily level by level.
/// Candidate counts per level depend only on the previous level's layer
/// profile, so the greedy choice always completes when the sequence is
/// realizable.
pub fn first_skeleton(alg: &TruncatedAlgebra, layering: &SemisimpleSequence) -> Result<Skeleton> {
    shape_check(alg, layering)?;
    if !realizable(alg, layering)? {
        return Err(Error::NotRealizable);
    }
    let roots = roots_of(layering);
    let mut paths: Vec<SkeletonPath> = roots
        .iter()
        .enumerate()
        .map(|(r, &v)| SkeletonPath {
            root: r,
            word: PathWord::vertex(v),
        })
        .collect();
    let mut prev = paths.clone();
    for l in 1..layering.layers.len() {
        let cands = level_candidates(alg, &prev);
        let mut level = Vec::new();
        for (i, &k) in layering.layers[l].0.iter().enumerate() {
            debug_assert!(cands[i].len() >= k);
            level.extend(cands[i][..k].iter().cloned());
        }
        level.sort();
        paths.extend(level.iter().cloned());
        prev = level;
    }
    paths.sort();
    Ok(Skeleton { roots, paths })
}

/// A skeleton with its critical paths and their eligible sets; scalar
/// families indexed by the (critical, eligible) pairs realize modules.
#[derive(Debug, Clone)]
pub struct PresentationTemplate {
    pub alg: TruncatedAlgebra,
    pub skeleton: Skeleton,
    pub criticals: Vec<SkeletonPath>,
    /// Per critical, the indices (into `skeleton.paths`) of the members of
    /// length at least the critical's, ending at the same vertex.
    pub eligible: Vec<Vec<usize>>,
}

impl PresentationTemplate {
    /// Total number of scalar parameters.
    pub fn param_count(&self) -> usize {
        self.eligible.iter().map(|e| e.len()).sum()
    }
}

/// Derives the critical paths and eligible sets of a skeleton.
pub fn presentation_template(alg: &TruncatedAlgebra, skeleton: &Skeleton) -> PresentationTemplate {
    let members: BTreeMap<(usize, &PathWord), usize> = skeleton
        .paths
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.root, &p.word), i))
        .collect();
    let mut criticals: Vec<SkeletonPath> = Vec::new();
    for p in &skeleton.paths {
        if p.word.len() >= alg.truncation {
            continue;
        }
        let at = p.word.end(&alg.quiver);
        for (idx, _) in alg.quiver.arrows_from(at) {
            let ext = p.word.extended(idx);
            if !members.contains_key(&(p.root, &ext)) {
                criticals.push(SkeletonPath {
                    root: p.root,
                    word: ext,
                });
            }
        }
    }
    criticals.sort();
    let eligible = criticals
        .iter()
        .map(|c| {
            let end = c.word.end(&alg.quiver);
            skeleton
                .paths
                .iter()
                .enumerate()
                .filter(|(_, m)| m.word.len() >= c.word.len() && m.word.end(&alg.quiver) == end)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    PresentationTemplate {
        alg: alg.clone(),
        skeleton: skeleton.clone(),
        criticals,
        eligible,
    }
}

/// Builds the module `P/U(c)` on the member-path basis.  The arrow action is
/// one-step rewriting: a member extension is either a member, zero (length
/// beyond the truncation), or a critical path replaced by its eligible
/// combination.
pub fn realize(
    tpl: &PresentationTemplate,
    field: FieldSpec,
    scalars: &[u64],
) -> Result<ModulePoint> {
    let want = tpl.param_count();
    if scalars.len() != want {
        return Err(Error::ScalarCount {
            got: scalars.len(),
            want,
        });
    }
    let alg = &tpl.alg;
    let n = alg.vertex_count();
    // Block coordinates: members grouped by end vertex, canonical order.
    let mut dims = vec![0usize; n];
    let mut member_pos = Vec::with_capacity(tpl.skeleton.paths.len());
    for p in &tpl.skeleton.paths {
        let v = p.word.end(&alg.quiver) - 1;
        member_pos.push((v, dims[v]));
        dims[v] += 1;
    }
    let members: BTreeMap<(usize, &PathWord), usize> = tpl
        .skeleton
        .paths
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.root, &p.word), i))
        .collect();
    let critical_index: BTreeMap<(usize, &PathWord), usize> = tpl
        .criticals
        .iter()
        .enumerate()
        .map(|(i, c)| ((c.root, &c.word), i))
        .collect();
    let offsets: Vec<usize> = {
        let mut acc = 0;
        tpl.eligible
            .iter()
            .map(|e| {
                let at = acc;
                acc += e.len();
                at
            })
            .collect()
    };
    let mut mats: Vec<Mat> = alg
        .quiver
        .arrows
        .iter()
        .map(|a| Mat::zeros(field, dims[a.target - 1], dims[a.source - 1]))
        .collect();
    for (mi, p) in tpl.skeleton.paths.iter().enumerate() {
        let (src_v, src_off) = member_pos[mi];
        for (idx, _) in alg.quiver.arrows_from(src_v + 1) {
            let ext = p.word.extended(idx);
            if ext.len() > alg.truncation {
                continue;
            }
            if let Some(&target) = members.get(&(p.root, &ext)) {
                let (tv, toff) = member_pos[target];
                debug_assert_eq!(tv, alg.quiver.arrows[idx].target - 1);
                mats[idx].set(toff, src_off, 1);
            } else {
                let ci = critical_index[&(p.root, &ext)];
                for (k, &em) in tpl.eligible[ci].iter().enumerate() {
                    let (tv, toff) = member_pos[em];
                    debug_assert_eq!(tv, alg.quiver.arrows[idx].target - 1);
                    let cur = mats[idx].get(toff, src_off);
                    mats[idx].set(toff, src_off, field.add(cur, scalars[offsets[ci] + k]));
                }
            }
        }
    }
    ModulePoint::new(alg.clone(), DimVector(dims), field, mats)
}

/// Repeated generic sampling in one stratum: the lexicographically first
/// skeleton chart, with fresh uniform scalars per draw.
pub struct GenericSampler {
    pub template: PresentationTemplate,
    pub field: FieldSpec,
}

impl GenericSampler {
    pub fn new(
        alg: &TruncatedAlgebra,
        layering: &SemisimpleSequence,
        field: FieldSpec,
    ) -> Result<Self> {
        let skeleton = first_skeleton(alg, layering)?;
        Ok(GenericSampler {
            template: presentation_template(alg, &skeleton),
            field,
        })
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> ModulePoint {
        let scalars: Vec<u64> = (0..self.template.param_count())
            .map(|_| self.field.sample(rng))
            .collect();
        realize(&self.template, self.field, &scalars).expect("scalar count matches by construction")
    }
}

/// One generic draw for the stratum of `layering`, from a bare seed.
pub fn sample_module(
    alg: &TruncatedAlgebra,
    layering: &SemisimpleSequence,
    field: FieldSpec,
    seed: u64,
) -> Result<ModulePoint> {
    let sampler = GenericSampler::new(alg, layering, field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sampler.sample(&mut rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{four_vertex_loop_quiver, reference_loop_sequence};
    use rand::SeedableRng;

    fn fp() -> FieldSpec {
        FieldSpec::default_prime()
    }

    fn loop_algebra() -> TruncatedAlgebra {
        TruncatedAlgebra::new(four_vertex_loop_quiver(), 3).unwrap()
    }

    #[test]
    fn reference_sequence_has_exactly_four_skeleta() {
        let alg = loop_algebra();
        let s = reference_loop_sequence();
        let all = enumerate_skeleta(&alg, &s).unwrap();
        assert_eq!(all.len(), 4);
        for sk in &all {
            sk.validate(&alg, &s).unwrap();
        }
        assert_eq!(all[0], first_skeleton(&alg, &s).unwrap());
    }

    #[test]
    fn uniserial_chain_counts() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        let s = SemisimpleSequence::local(&[1, 1, 1]);
        let all = enumerate_skeleta(&alg, &s).unwrap();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn semisimple_sequence_has_unique_skeleton() {
        let alg = TruncatedAlgebra::local(3, 2).unwrap();
        let s = SemisimpleSequence::local(&[4, 0, 0]);
        let all = enumerate_skeleta(&alg, &s).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].roots, vec![1, 1, 1, 1]);
        assert_eq!(all[0].paths.len(), 4);
    }

    #[test]
    fn non_realizable_sequences_have_no_skeleta() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        let s = SemisimpleSequence::local(&[1, 3, 0]);
        assert!(enumerate_skeleta(&alg, &s).unwrap().is_empty());
        assert!(first_skeleton(&alg, &s).is_err());
    }

    #[test]
    fn realizable_iff_nonempty_on_a_grid() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        for a in 0..=3usize {
            for b in 0..=3 {
                for c in 0..=3 {
                    if a + b + c == 0 {
                        continue;
                    }
                    let s = SemisimpleSequence::local(&[a, b, c]);
                    let count = enumerate_skeleta_up_to(&alg, &s, 1).unwrap().len();
                    assert_eq!(count > 0, realizable(&alg, &s).unwrap(), "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn simple_top_template_has_no_parameters() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        let s = SemisimpleSequence::local(&[1, 0, 0]);
        let sk = first_skeleton(&alg, &s).unwrap();
        let tpl = presentation_template(&alg, &sk);
        let shown: Vec<String> = tpl
            .criticals
            .iter()
            .map(|c| c.word.display(&alg.quiver))
            .collect();
        assert_eq!(shown, vec!["alpha1", "alpha2"]);
        assert!(tpl.eligible.iter().all(|e| e.is_empty()));
        assert_eq!(tpl.param_count(), 0);
        let m = realize(&tpl, fp(), &[]).unwrap();
        assert_eq!(m.radical_layering(), s);
    }

    #[test]
    fn uniserial_template_parameters() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        let s = SemisimpleSequence::local(&[1, 1, 1]);
        // First skeleton is the alpha1-chain.
        let sk = first_skeleton(&alg, &s).unwrap();
        let tpl = presentation_template(&alg, &sk);
        let shown: Vec<(String, Vec<String>)> = tpl
            .criticals
            .iter()
            .zip(&tpl.eligible)
            .map(|(c, e)| {
                (
                    c.word.display(&alg.quiver),
                    e.iter()
                        .map(|&i| tpl.skeleton.paths[i].word.display(&alg.quiver))
                        .collect(),
                )
            })
            .collect();
        assert_eq!(
            shown,
            vec![
                (
                    "alpha2".to_string(),
                    vec!["alpha1".to_string(), "alpha1*alpha1".to_string()]
                ),
                (
                    "alpha2*alpha1".to_string(),
                    vec!["alpha1*alpha1".to_string()]
                ),
            ]
        );
        assert_eq!(tpl.param_count(), 3);
        // alpha2 z = alpha1 z; everything else by the chain.
        let m = realize(&tpl, fp(), &[1, 0, 0]).unwrap();
        let a1 = &m.mats[0];
        let a2 = &m.mats[1];
        let expect_chain =
            Mat::from_rows(fp(), vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let expect_a2 =
            Mat::from_rows(fp(), vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(a1, &expect_chain);
        assert_eq!(a2, &expect_a2);
        assert_eq!(m.radical_layering(), s);
    }

    #[test]
    fn reference_first_skeleton_relations() {
        let alg = loop_algebra();
        let s = reference_loop_sequence();
        let sk = first_skeleton(&alg, &s).unwrap();
        let tpl = presentation_template(&alg, &sk);
        let shown: Vec<(String, usize, Vec<String>)> = tpl
            .criticals
            .iter()
            .zip(&tpl.eligible)
            .map(|(c, e)| {
                (
                    c.word.display(&alg.quiver),
                    c.root,
                    e.iter()
                        .map(|&i| tpl.skeleton.paths[i].word.display(&alg.quiver))
                        .collect(),
                )
            })
            .collect();
        // The three relations of the one-parameter-per-critical chart.
        assert!(shown.contains(&(
            "delta*beta".to_string(),
            1,
            vec!["delta*beta*alpha".to_string()]
        )));
        assert!(shown.contains(&(
            "delta*gamma*beta".to_string(),
            1,
            vec!["delta*beta*alpha".to_string()]
        )));
        assert!(shown.contains(&(
            "gamma*gamma*beta".to_string(),
            1,
            vec!["gamma*beta*alpha".to_string()]
        )));
        assert_eq!(tpl.param_count(), 3);
    }

    #[test]
    fn realize_has_prescribed_layering_for_all_scalars() {
        let alg = loop_algebra();
        let s = reference_loop_sequence();
        for sk in enumerate_skeleta(&alg, &s).unwrap() {
            let tpl = presentation_template(&alg, &sk);
            let zero = vec![0u64; tpl.param_count()];
            let m = realize(&tpl, fp(), &zero).unwrap();
            assert!(m.check_point().is_ok());
            assert_eq!(m.radical_layering(), s);
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..3 {
                let scalars: Vec<u64> = (0..tpl.param_count())
                    .map(|_| fp().sample(&mut rng))
                    .collect();
                let m = realize(&tpl, fp(), &scalars).unwrap();
                assert!(m.check_point().is_ok());
                assert_eq!(m.radical_layering(), s);
            }
        }
    }

    #[test]
    fn scalar_count_mismatch_is_rejected() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        let s = SemisimpleSequence::local(&[1, 1, 1]);
        let tpl = presentation_template(&alg, &first_skeleton(&alg, &s).unwrap());
        assert!(realize(&tpl, fp(), &[1]).is_err());
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let alg = loop_algebra();
        let s = reference_loop_sequence();
        let a = sample_module(&alg, &s, fp(), 42).unwrap();
        let b = sample_module(&alg, &s, fp(), 42).unwrap();
        assert_eq!(a, b);
        let c = sample_module(&alg, &s, fp(), 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_uniserial_socle() {
        let alg = TruncatedAlgebra::local(2, 2).unwrap();
        let s = SemisimpleSequence::local(&[1, 1, 1]);
        let m = sample_module(&alg, &s, fp(), 5).unwrap();
        assert_eq!(m.radical_layering(), s);
        assert_eq!(m.socle_layering(), SemisimpleSequence::local(&[1, 1, 1]));
    }

    #[test]
    fn text_and_json_round_trips() {
        let alg = loop_algebra();
        let s = reference_loop_sequence();
        for sk in enumerate_skeleta(&alg, &s).unwrap() {
            let text = sk.to_text(&alg);
            assert_eq!(Skeleton::from_text(&alg, &text).unwrap(), sk);
            let j = serde_json::to_string(&sk.to_json(&alg)).unwrap();
            let back = Skeleton::from_json(&alg, &serde_json::from_str(&j).unwrap()).unwrap();
            assert_eq!(back, sk);
        }
    }
}
