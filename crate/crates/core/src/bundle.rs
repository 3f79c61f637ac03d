//! The Grothendieck group at a point, transition cocycles over finite
//! covers, and the bundle constructions built on them.
//!
//! Fibers are semisimple: a multiplicity vector over a finite table of
//! labeled irreducibles. A transition function is then one invertible
//! rational matrix per irrep acting on the multiplicity space, which makes
//! the module-isomorphism constraint hold by construction; everything else
//! (sums, duals, pullbacks, the top-level functor, multiplicity splitting,
//! trivial complements over discrete bases, the inverse-clutching homotopy)
//! is exact matrix algebra on those blocks.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use num_traits::{One, Zero};

use crate::axioms::{AxiomReport, Counterexample};
use crate::element::GradedElement;
use crate::error::{Result, VoakError};
use crate::linalg::Matrix;
use crate::rational::{format_rational, rat_int, Rational};

/// One labeled irreducible: per-weight dimensions from the lowest weight up,
/// and the dimension of its lowest-weight space when known (needed by the
/// top-level functor).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IrrepInfo {
    pub label: String,
    pub weight_dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_dim: Option<usize>,
}

/// A finite list of distinct labeled irreducibles.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IrrepTable {
    pub irreps: Vec<IrrepInfo>,
}

impl IrrepTable {
    pub fn new(irreps: Vec<IrrepInfo>) -> Result<IrrepTable> {
        let mut seen = BTreeSet::new();
        for i in &irreps {
            if !seen.insert(&i.label) {
                return Err(VoakError::InvalidInput(format!(
                    "duplicate irrep label {}",
                    i.label
                )));
            }
        }
        Ok(IrrepTable { irreps })
    }

    /// A table of `p` anonymous labels `M1..Mp` (class arithmetic only).
    pub fn anonymous(p: usize) -> IrrepTable {
        IrrepTable {
            irreps: (1..=p)
                .map(|i| IrrepInfo {
                    label: format!("M{i}"),
                    weight_dims: vec![1],
                    top_dim: Some(1),
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.irreps.iter().map(|i| i.label.clone()).collect()
    }

    /// Dimension of the weight-offset piece of the i-th irrep.
    pub fn weight_dim(&self, irrep: usize, offset: usize) -> usize {
        self.irreps[irrep]
            .weight_dims
            .get(offset)
            .copied()
            .unwrap_or(0)
    }
}

/// An element of the free abelian group on the table's classes: a signed
/// multiplicity per irrep. The canonical positive/negative parts have
/// disjoint supports by construction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KClass {
    pub labels: Vec<String>,
    pub mults: Vec<i64>,
}

impl KClass {
    pub fn new(table: &IrrepTable, mults: Vec<i64>) -> Result<KClass> {
        if mults.len() != table.len() {
            return Err(VoakError::TableMismatch);
        }
        Ok(KClass {
            labels: table.labels(),
            mults,
        })
    }

    pub fn zero(table: &IrrepTable) -> KClass {
        KClass {
            labels: table.labels(),
            mults: vec![0; table.len()],
        }
    }

    /// Positive part of the canonical form `[E] - [F]`.
    pub fn positive_part(&self) -> Vec<i64> {
        self.mults.iter().map(|&m| m.max(0)).collect()
    }

    /// Negative part of the canonical form `[E] - [F]`.
    pub fn negative_part(&self) -> Vec<i64> {
        self.mults.iter().map(|&m| (-m).max(0)).collect()
    }

    fn check_table(&self, other: &KClass) -> Result<()> {
        if self.labels != other.labels {
            return Err(VoakError::TableMismatch);
        }
        Ok(())
    }
}

pub fn k_add(a: &KClass, b: &KClass) -> Result<KClass> {
    a.check_table(b)?;
    Ok(KClass {
        labels: a.labels.clone(),
        mults: a
            .mults
            .iter()
            .zip(b.mults.iter())
            .map(|(x, y)| x + y)
            .collect(),
    })
}

pub fn k_neg(a: &KClass) -> KClass {
    KClass {
        labels: a.labels.clone(),
        mults: a.mults.iter().map(|x| -x).collect(),
    }
}

pub fn k_eq(a: &KClass, b: &KClass) -> Result<bool> {
    a.check_table(b)?;
    Ok(a.mults == b.mults)
}

/// A named point of a finite discrete base: the patches containing it and
/// exact partition weights with square sum one.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct BasePoint {
    pub name: String,
    pub patches: Vec<usize>,
    /// `p_patch(x)`; patches not listed carry weight zero.
    #[serde(default)]
    pub weights: BTreeMap<usize, String>,
}

impl BasePoint {
    /// Parsed weights; defaults to weight 1 on the first patch when none
    /// are supplied.
    pub fn parsed_weights(&self) -> Result<BTreeMap<usize, Rational>> {
        if self.weights.is_empty() {
            let mut out = BTreeMap::new();
            let first = *self.patches.first().ok_or_else(|| {
                VoakError::InvalidInput(format!("point {} has no patch", self.name))
            })?;
            out.insert(first, rat_int(1));
            return Ok(out);
        }
        let mut out = BTreeMap::new();
        for (patch, w) in &self.weights {
            if !self.patches.contains(patch) {
                return Err(VoakError::InvalidInput(format!(
                    "point {} weights a patch it does not lie in",
                    self.name
                )));
            }
            let r = crate::rational::parse_rational(w).map_err(VoakError::InvalidInput)?;
            out.insert(*patch, r);
        }
        Ok(out)
    }
}

/// A finite combinatorial cover: patches, symmetric overlaps, triple
/// overlaps, and an optional finite point list for discrete bases.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CoverComplex {
    pub patches: Vec<String>,
    /// Unordered overlap pairs, stored with the smaller index first.
    pub overlaps: BTreeSet<(usize, usize)>,
    #[serde(default)]
    pub triples: BTreeSet<(usize, usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<BasePoint>>,
}

impl CoverComplex {
    pub fn validate(&self) -> Result<()> {
        let n = self.patches.len();
        for &(a, b) in &self.overlaps {
            if a >= b || b >= n {
                return Err(VoakError::InvalidInput(format!(
                    "overlap ({a},{b}) is not an ordered pair of patch indices"
                )));
            }
        }
        for &(a, b, c) in &self.triples {
            if !(a < b && b < c && c < n) {
                return Err(VoakError::InvalidInput(format!(
                    "triple ({a},{b},{c}) is not strictly increasing"
                )));
            }
            for pair in [(a, b), (a, c), (b, c)] {
                if !self.overlaps.contains(&pair) {
                    return Err(VoakError::InvalidInput(format!(
                        "triple ({a},{b},{c}) misses pairwise overlap {pair:?}"
                    )));
                }
            }
        }
        if let Some(points) = &self.points {
            for p in points {
                for &patch in &p.patches {
                    if patch >= n {
                        return Err(VoakError::InvalidInput(format!(
                            "point {} lies in unknown patch {patch}",
                            p.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Single-patch cover over a named finite point list.
    pub fn discrete(points: Vec<String>) -> CoverComplex {
        CoverComplex {
            patches: vec!["U".into()],
            overlaps: BTreeSet::new(),
            triples: BTreeSet::new(),
            points: Some(
                points
                    .into_iter()
                    .map(|name| BasePoint {
                        name,
                        patches: vec![0],
                        weights: BTreeMap::new(),
                    })
                    .collect(),
            ),
        }
    }
}

/// A bundle presented by transition data: a cover, a fiber given by irrep
/// multiplicities, and one invertible block per irrep on each ordered
/// overlap. `g_aa` is implicitly the identity.
///
/// Wire format: `{patches, overlaps, triples, points?, table,
/// fiber: {label: multiplicity}, transitions: {"a|b": {label: matrix}}}`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(into = "BundleRepr", try_from = "BundleRepr")]
pub struct BundleCocycle {
    pub cover: CoverComplex,
    pub table: IrrepTable,
    pub mults: Vec<usize>,
    /// Keyed by ordered pair (a, b) with a != b; blocks follow the table
    /// order. Both directions must be present and mutually inverse.
    pub transitions: BTreeMap<(usize, usize), Vec<Matrix>>,
}

#[derive(Clone, Serialize, Deserialize)]
struct BundleRepr {
    patches: Vec<String>,
    overlaps: Vec<(usize, usize)>,
    #[serde(default)]
    triples: Vec<(usize, usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<BasePoint>>,
    table: IrrepTable,
    fiber: BTreeMap<String, usize>,
    transitions: BTreeMap<String, BTreeMap<String, Matrix>>,
}

impl From<BundleCocycle> for BundleRepr {
    fn from(e: BundleCocycle) -> BundleRepr {
        let labels = e.table.labels();
        let fiber = labels
            .iter()
            .cloned()
            .zip(e.mults.iter().copied())
            .collect();
        let transitions = e
            .transitions
            .into_iter()
            .map(|((a, b), blocks)| {
                let by_label = labels.iter().cloned().zip(blocks).collect();
                (format!("{a}|{b}"), by_label)
            })
            .collect();
        BundleRepr {
            patches: e.cover.patches,
            overlaps: e.cover.overlaps.into_iter().collect(),
            triples: e.cover.triples.into_iter().collect(),
            points: e.cover.points,
            table: e.table,
            fiber,
            transitions,
        }
    }
}

impl TryFrom<BundleRepr> for BundleCocycle {
    type Error = String;

    fn try_from(r: BundleRepr) -> std::result::Result<BundleCocycle, String> {
        let labels = r.table.labels();
        let mults = labels
            .iter()
            .map(|l| {
                r.fiber
                    .get(l)
                    .copied()
                    .ok_or_else(|| format!("fiber misses irrep {l}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let mut transitions = BTreeMap::new();
        for (key, by_label) in r.transitions {
            let (a, b) = key
                .split_once('|')
                .ok_or_else(|| format!("bad transition key {key}"))?;
            let a: usize = a.parse().map_err(|_| format!("bad patch index in {key}"))?;
            let b: usize = b.parse().map_err(|_| format!("bad patch index in {key}"))?;
            let blocks = labels
                .iter()
                .map(|l| {
                    by_label
                        .get(l)
                        .cloned()
                        .ok_or_else(|| format!("transition {key} misses irrep {l}"))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            transitions.insert((a, b), blocks);
        }
        let cover = CoverComplex {
            patches: r.patches,
            overlaps: r.overlaps.into_iter().collect(),
            triples: r.triples.into_iter().collect(),
            points: r.points,
        };
        Ok(BundleCocycle {
            cover,
            table: r.table,
            mults,
            transitions,
        })
    }
}

impl BundleCocycle {
    /// Trivial cocycle: identity transitions on every overlap.
    pub fn trivial(
        cover: CoverComplex,
        table: IrrepTable,
        mults: Vec<usize>,
    ) -> Result<BundleCocycle> {
        cover.validate()?;
        if mults.len() != table.len() {
            return Err(VoakError::TableMismatch);
        }
        let mut transitions = BTreeMap::new();
        for &(a, b) in &cover.overlaps {
            let blocks: Vec<Matrix> = mults.iter().map(|&m| Matrix::identity(m)).collect();
            transitions.insert((a, b), blocks.clone());
            transitions.insert((b, a), blocks);
        }
        Ok(BundleCocycle {
            cover,
            table,
            mults,
            transitions,
        })
    }

    /// Builds a cocycle from blocks on the ordered overlaps `(a, b)` with
    /// `a < b`; the reverse directions are filled in with the inverses.
    pub fn from_upper_transitions(
        cover: CoverComplex,
        table: IrrepTable,
        mults: Vec<usize>,
        upper: BTreeMap<(usize, usize), Vec<Matrix>>,
    ) -> Result<BundleCocycle> {
        cover.validate()?;
        if mults.len() != table.len() {
            return Err(VoakError::TableMismatch);
        }
        let mut transitions = BTreeMap::new();
        for (&(a, b), blocks) in &upper {
            if !cover.overlaps.contains(&(a, b)) {
                return Err(VoakError::InvalidInput(format!(
                    "transition on ({a},{b}) without an overlap"
                )));
            }
            let inverses: Vec<Matrix> =
                blocks.iter().map(|m| m.inverse()).collect::<Result<_>>()?;
            transitions.insert((a, b), blocks.clone());
            transitions.insert((b, a), inverses);
        }
        for &(a, b) in &cover.overlaps {
            if !transitions.contains_key(&(a, b)) {
                let blocks: Vec<Matrix> = mults.iter().map(|&m| Matrix::identity(m)).collect();
                transitions.insert((a, b), blocks.clone());
                transitions.insert((b, a), blocks);
            }
        }
        Ok(BundleCocycle {
            cover,
            table,
            mults,
            transitions,
        })
    }

    pub fn blocks(&self, a: usize, b: usize) -> Result<&Vec<Matrix>> {
        if a == b {
            return Err(VoakError::InvalidInput("use g_aa = identity".into()));
        }
        self.transitions
            .get(&(a, b))
            .ok_or_else(|| VoakError::InvalidInput(format!("no transition on ({a},{b})")))
    }

    /// Full transition matrix on the weight-offset piece of the fiber:
    /// block diagonal over irreps of `g_i (x) id`, expanded by the table's
    /// per-weight dimensions.
    pub fn expanded_transition(&self, a: usize, b: usize, offset: usize) -> Result<Matrix> {
        let blocks = self.blocks(a, b)?;
        let mut parts = Vec::new();
        for (i, g) in blocks.iter().enumerate() {
            let d = self.table.weight_dim(i, offset);
            if d > 0 {
                parts.push(g.kron(&Matrix::identity(d)));
            }
        }
        Ok(Matrix::block_diag(&parts))
    }

    /// Total fiber dimension at a weight offset.
    pub fn fiber_dim(&self, offset: usize) -> usize {
        self.mults
            .iter()
            .enumerate()
            .map(|(i, m)| m * self.table.weight_dim(i, offset))
            .sum()
    }

    /// The class of the fiber in the Grothendieck group at a point.
    pub fn fiber_class(&self) -> KClass {
        KClass {
            labels: self.table.labels(),
            mults: self.mults.iter().map(|&m| m as i64).collect(),
        }
    }
}

/// Verifies the cocycle laws exactly: `g_ab g_ba = id` on every overlap,
/// and `g_ab g_bc = g_ac` on every triple, blockwise.
pub fn check_cocycle(e: &BundleCocycle) -> AxiomReport {
    let instance = format!("bundle over {} patches", e.cover.patches.len());
    let params = format!(
        "{} overlaps, {} triples",
        e.cover.overlaps.len(),
        e.cover.triples.len()
    );
    let fail = |at: String| AxiomReport {
        axiom: "cocycle".into(),
        instance: instance.clone(),
        params: params.clone(),
        pass: false,
        counterexample: Some(Counterexample {
            params: at,
            residual: GradedElement::zero(),
        }),
    };
    if e.cover.validate().is_err() {
        return fail("cover fails validation".into());
    }
    if e.mults.len() != e.table.len() {
        return fail("fiber multiplicities do not match the table".into());
    }
    for &(a, b) in &e.cover.overlaps {
        let (Ok(gab), Ok(gba)) = (e.blocks(a, b), e.blocks(b, a)) else {
            return fail(format!("missing transitions on ({a},{b})"));
        };
        if gab.len() != e.table.len() || gba.len() != e.table.len() {
            return fail(format!("wrong block count on ({a},{b})"));
        }
        for (i, (x, y)) in gab.iter().zip(gba.iter()).enumerate() {
            if x.rows() != e.mults[i] || x.cols() != e.mults[i] {
                return fail(format!("block {i} on ({a},{b}) has wrong shape"));
            }
            if !x.mul(y).is_identity() {
                return fail(format!("g_{a}{b} g_{b}{a} != id in block {i}"));
            }
        }
    }
    for &(a, b, c) in &e.cover.triples {
        let gab = e.blocks(a, b).unwrap();
        let gbc = e.blocks(b, c).unwrap();
        let gac = e.blocks(a, c).unwrap();
        for i in 0..e.table.len() {
            if gab[i].mul(&gbc[i]) != gac[i] {
                return fail(format!("g_{a}{b} g_{b}{c} != g_{a}{c} in block {i}"));
            }
        }
    }
    AxiomReport {
        axiom: "cocycle".into(),
        instance,
        params,
        pass: true,
        counterexample: None,
    }
}

/// Direct sum over the same cover: multiplicities add, transitions are
/// blockwise direct sums.
pub fn bundle_sum(e: &BundleCocycle, f: &BundleCocycle) -> Result<BundleCocycle> {
    if e.cover != f.cover {
        return Err(VoakError::CoverMismatch);
    }
    if e.table != f.table {
        return Err(VoakError::TableMismatch);
    }
    let mults: Vec<usize> = e
        .mults
        .iter()
        .zip(f.mults.iter())
        .map(|(a, b)| a + b)
        .collect();
    let mut transitions = BTreeMap::new();
    for (key, eb) in &e.transitions {
        let fb = f.transitions.get(key).ok_or(VoakError::CoverMismatch)?;
        let blocks: Vec<Matrix> = eb
            .iter()
            .zip(fb.iter())
            .map(|(x, y)| Matrix::block_diag(&[x.clone(), y.clone()]))
            .collect();
        transitions.insert(*key, blocks);
    }
    Ok(BundleCocycle {
        cover: e.cover.clone(),
        table: e.table.clone(),
        mults,
        transitions,
    })
}

/// Dual bundle: inverse-transpose blocks, so the natural pairing satisfies
/// `(g* s*, g s) = (s*, s)` on every overlap.
pub fn bundle_dual(e: &BundleCocycle) -> Result<BundleCocycle> {
    let mut transitions = BTreeMap::new();
    for (key, blocks) in &e.transitions {
        let dual: Vec<Matrix> = blocks
            .iter()
            .map(|g| Ok(g.inverse()?.transpose()))
            .collect::<Result<_>>()?;
        transitions.insert(*key, dual);
    }
    Ok(BundleCocycle {
        cover: e.cover.clone(),
        table: e.table.clone(),
        mults: e.mults.clone(),
        transitions,
    })
}

/// Pullback along a simplicial map of covers: every overlap of the source
/// must map to an overlap (or collapse to a single patch) of the target.
pub fn bundle_pullback(
    e: &BundleCocycle,
    cover: &CoverComplex,
    patch_map: &[usize],
) -> Result<BundleCocycle> {
    cover.validate()?;
    if patch_map.len() != cover.patches.len() {
        return Err(VoakError::NonSimplicialMap(
            "patch map length differs from the patch count".into(),
        ));
    }
    for &img in patch_map {
        if img >= e.cover.patches.len() {
            return Err(VoakError::NonSimplicialMap(format!(
                "patch image {img} out of range"
            )));
        }
    }
    let mut transitions = BTreeMap::new();
    for &(a, b) in &cover.overlaps {
        let (ia, ib) = (patch_map[a], patch_map[b]);
        let blocks = if ia == ib {
            e.mults
                .iter()
                .map(|&m| Matrix::identity(m))
                .collect::<Vec<_>>()
        } else {
            let key = (ia.min(ib), ia.max(ib));
            if !e.cover.overlaps.contains(&key) {
                return Err(VoakError::NonSimplicialMap(format!(
                    "overlap ({a},{b}) maps to non-overlap ({ia},{ib})"
                )));
            }
            e.blocks(ia, ib)?.clone()
        };
        let inverse: Vec<Matrix> = blocks.iter().map(|m| m.inverse()).collect::<Result<_>>()?;
        transitions.insert((a, b), blocks);
        transitions.insert((b, a), inverse);
    }
    Ok(BundleCocycle {
        cover: cover.clone(),
        table: e.table.clone(),
        mults: e.mults.clone(),
        transitions,
    })
}

/// The top-level functor at the cocycle level: the multiplicity blocks are
/// unchanged while the table's per-weight data collapses to the lowest
/// level, so expanded transition matrices shrink to top-level dimensions.
pub fn omega_bundle(e: &BundleCocycle) -> Result<BundleCocycle> {
    let irreps = e
        .table
        .irreps
        .iter()
        .map(|i| {
            let top = i
                .top_dim
                .ok_or_else(|| VoakError::MissingOmegaData(i.label.clone()))?;
            Ok(IrrepInfo {
                label: format!("Omega({})", i.label),
                weight_dims: vec![top],
                top_dim: Some(top),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BundleCocycle {
        cover: e.cover.clone(),
        table: IrrepTable { irreps },
        mults: e.mults.clone(),
        transitions: e.transitions.clone(),
    })
}

/// Splits a cocycle into its plain multiplicity cocycles, one per irrep;
/// [`reassemble`] inverts the split exactly.
pub fn multiplicity_bundles(e: &BundleCocycle) -> Vec<BundleCocycle> {
    (0..e.table.len())
        .map(|i| {
            let table = IrrepTable {
                irreps: vec![e.table.irreps[i].clone()],
            };
            let transitions = e
                .transitions
                .iter()
                .map(|(k, blocks)| (*k, vec![blocks[i].clone()]))
                .collect();
            BundleCocycle {
                cover: e.cover.clone(),
                table,
                mults: vec![e.mults[i]],
                transitions,
            }
        })
        .collect()
}

/// Reassembles the output of [`multiplicity_bundles`].
pub fn reassemble(parts: &[BundleCocycle]) -> Result<BundleCocycle> {
    let first = parts
        .first()
        .ok_or_else(|| VoakError::InvalidInput("no parts to reassemble".into()))?;
    let mut irreps = Vec::new();
    let mut mults = Vec::new();
    let mut transitions: BTreeMap<(usize, usize), Vec<Matrix>> = BTreeMap::new();
    for p in parts {
        if p.cover != first.cover {
            return Err(VoakError::CoverMismatch);
        }
        if p.table.len() != 1 {
            return Err(VoakError::InvalidInput(
                "reassemble expects single-irrep parts".into(),
            ));
        }
        irreps.push(p.table.irreps[0].clone());
        mults.push(p.mults[0]);
        for (k, blocks) in &p.transitions {
            transitions.entry(*k).or_default().push(blocks[0].clone());
        }
    }
    Ok(BundleCocycle {
        cover: first.cover.clone(),
        table: IrrepTable::new(irreps)?,
        mults,
        transitions,
    })
}

/// A per-irrep symmetric bilinear form on the multiplicity spaces.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FiberForm {
    pub grams: Vec<Matrix>,
}

impl FiberForm {
    pub fn identity(mults: &[usize]) -> FiberForm {
        FiberForm {
            grams: mults.iter().map(|&m| Matrix::identity(m)).collect(),
        }
    }
}

/// Per-point witness data for a trivial complement: the embedding into the
/// trivial bundle, a basis of its orthogonal complement, and the assembled
/// isomorphism, one set of matrices per irrep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointWitness {
    pub point: String,
    /// `sigma_i`: (copies * mult_i) x mult_i embedding per irrep.
    pub sigma: Vec<Matrix>,
    /// Complement basis per irrep, columns spanning the orthocomplement.
    pub complement_basis: Vec<Matrix>,
    /// `[sigma | complement]`, invertible.
    pub combined: Vec<Matrix>,
}

/// Result of the trivial-complement construction over a discrete base.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrivialComplement {
    /// Number of copies of the fiber in the ambient trivial bundle (the
    /// patch count of the input cover).
    pub copies: usize,
    /// The complement bundle over the same base, presented trivially.
    pub complement: BundleCocycle,
    pub witnesses: Vec<PointWitness>,
}

/// For a cocycle over a finite discrete base, embeds each fiber into
/// `copies` copies of itself by the weighted charts
/// `sigma(e) = (p_a(x) h_a(e))_a`, verifies that sigma preserves the
/// supplied fiber form, and returns the orthogonal complement with explicit
/// per-point isomorphisms `E (+) F ~ trivial`.
pub fn trivial_complement(e: &BundleCocycle, form: &FiberForm) -> Result<TrivialComplement> {
    let points = e
        .cover
        .points
        .as_ref()
        .ok_or_else(|| VoakError::InvalidInput("trivial_complement needs a point list".into()))?;
    if form.grams.len() != e.table.len() {
        return Err(VoakError::TableMismatch);
    }
    for (g, &m) in form.grams.iter().zip(e.mults.iter()) {
        if g.rows() != m || g.cols() != m {
            return Err(VoakError::ShapeMismatch("fiber form has wrong shape".into()));
        }
        if g.rank() != m {
            return Err(VoakError::DegenerateForm);
        }
    }
    // transitions must be orthogonal for the chart-independence chain
    for (&(a, b), blocks) in &e.transitions {
        for (i, g) in blocks.iter().enumerate() {
            let gram = &form.grams[i];
            if g.transpose().mul(gram).mul(g) != *gram {
                return Err(VoakError::InvalidInput(format!(
                    "transition ({a},{b}) block {i} does not preserve the form"
                )));
            }
        }
    }

    let copies = e.cover.patches.len();
    let mut witnesses = Vec::new();
    for point in points {
        let weights = point.parsed_weights()?;
        let mut sq_sum = Rational::zero();
        for w in weights.values() {
            sq_sum += w * w;
        }
        if !sq_sum.is_one() {
            return Err(VoakError::WeightsNotUnit {
                point: point.name.clone(),
                sum: format_rational(&sq_sum),
            });
        }
        let chart = *point.patches.first().ok_or_else(|| {
            VoakError::InvalidInput(format!("point {} has no patch", point.name))
        })?;

        let mut sigma_blocks = Vec::new();
        let mut comp_blocks = Vec::new();
        let mut combined_blocks = Vec::new();
        for i in 0..e.table.len() {
            let m = e.mults[i];
            // stack p_a g_{a, chart} over all patches a
            let mut rows = Vec::new();
            for a in 0..copies {
                let w = weights.get(&a).cloned().unwrap_or_else(Rational::zero);
                let block = if w.is_zero() {
                    Matrix::zeros(m, m)
                } else if a == chart {
                    Matrix::identity(m).scaled(&w)
                } else {
                    if !point.patches.contains(&a) {
                        return Err(VoakError::InvalidInput(format!(
                            "point {} weights patch {a} it does not lie in",
                            point.name
                        )));
                    }
                    e.blocks(a, chart)?[i].scaled(&w)
                };
                rows.push(block);
            }
            let sigma = Matrix::vstack(&rows);

            // extended form on the trivial bundle is blockwise
            let gram_ext = Matrix::block_diag(&vec![form.grams[i].clone(); copies]);
            // sigma preserves the form: sigma^T G_ext sigma = G
            if sigma.transpose().mul(&gram_ext).mul(&sigma) != form.grams[i] {
                return Err(VoakError::InvalidInput(format!(
                    "embedding at point {} fails to preserve the form",
                    point.name
                )));
            }
            // orthogonal complement: kernel of sigma^T G_ext
            let comp_rows = sigma.transpose().mul(&gram_ext).nullspace();
            let comp = comp_rows.transpose();
            let combined = Matrix::hstack(&[sigma.clone(), comp.clone()]);
            if combined.inverse().is_err() {
                return Err(VoakError::DegenerateForm);
            }
            sigma_blocks.push(sigma);
            comp_blocks.push(comp);
            combined_blocks.push(combined);
        }
        witnesses.push(PointWitness {
            point: point.name.clone(),
            sigma: sigma_blocks,
            complement_basis: comp_blocks,
            combined: combined_blocks,
        });
    }

    let comp_mults: Vec<usize> = e.mults.iter().map(|&m| (copies - 1) * m).collect();
    // the complement is presented trivially over the same point list
    let complement = BundleCocycle::trivial(
        CoverComplex::discrete(points.iter().map(|p| p.name.clone()).collect()),
        e.table.clone(),
        comp_mults,
    )?;
    Ok(TrivialComplement {
        copies,
        complement,
        witnesses,
    })
}

/// One frame of the inverse-clutching homotopy at the rational circle point
/// `(c, s) = ((1-t^2)/(1+t^2), 2t/(1+t^2))`:
///
/// `F = diag(f, 1) R(c, s) diag(1, f^{-1}) R(c, -s)`
///
/// with `R` the rotation block matrix. At `t = 0` this is `diag(f, f^{-1})`
/// and at `t = 1` the identity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomotopyFrame {
    #[serde(
        serialize_with = "crate::ser::rat_to_string",
        deserialize_with = "crate::ser::rat_from_string"
    )]
    pub s: Rational,
    #[serde(
        serialize_with = "crate::ser::rat_to_string",
        deserialize_with = "crate::ser::rat_from_string"
    )]
    pub cos: Rational,
    #[serde(
        serialize_with = "crate::ser::rat_to_string",
        deserialize_with = "crate::ser::rat_from_string"
    )]
    pub sin: Rational,
    /// One 2n x 2n frame per irrep block.
    pub blocks: Vec<Matrix>,
    /// Explicit inverses obtained by reversing the factor chain.
    pub inverse_blocks: Vec<Matrix>,
}

/// Rational circle point for the parameter `s`.
pub fn circle_point(s: &Rational) -> (Rational, Rational) {
    let s2 = s * s;
    let denom = &Rational::one() + &s2;
    let c = (&Rational::one() - &s2) / &denom;
    let sn = (s + s) / denom;
    (c, sn)
}

fn rotation(c: &Rational, s: &Rational, n: usize) -> Matrix {
    let id = Matrix::identity(n);
    Matrix::two_by_two_blocks(
        &id.scaled(c),
        &id.scaled(s),
        &id.scaled(&-s.clone()),
        &id.scaled(c),
    )
}

/// Builds the homotopy frame for the blockwise automorphism `f` at circle
/// parameter `s`. Errors when any block is singular.
pub fn clutch_homotopy(f: &[Matrix], s: &Rational) -> Result<HomotopyFrame> {
    let (c, sn) = circle_point(s);
    debug_assert!((&c * &c + &sn * &sn).is_one());
    let mut blocks = Vec::new();
    let mut inverse_blocks = Vec::new();
    for g in f {
        if g.rows() != g.cols() {
            return Err(VoakError::ShapeMismatch(
                "automorphism blocks must be square".into(),
            ));
        }
        let n = g.rows();
        let ginv = g.inverse()?;
        let id = Matrix::identity(n);
        let zero = Matrix::zeros(n, n);
        let diag_f = Matrix::two_by_two_blocks(g, &zero, &zero, &id);
        let diag_finv = Matrix::two_by_two_blocks(&id, &zero, &zero, &ginv);
        let r_plus = rotation(&c, &sn, n);
        let r_minus = rotation(&c, &-sn.clone(), n);
        let frame = diag_f.mul(&r_plus).mul(&diag_finv).mul(&r_minus);
        // inverse by reversing the chain: R(c,-s)^{-1} = R(c,s), and the
        // diagonal factors invert blockwise
        let diag_f_inv = Matrix::two_by_two_blocks(&ginv, &zero, &zero, &id);
        let diag_finv_inv = Matrix::two_by_two_blocks(&id, &zero, &zero, g);
        let inv = r_plus.mul(&diag_finv_inv).mul(&r_minus).mul(&diag_f_inv);
        debug_assert!(frame.mul(&inv).is_identity());
        blocks.push(frame);
        inverse_blocks.push(inv);
    }
    Ok(HomotopyFrame {
        s: s.clone(),
        cos: c,
        sin: sn,
        blocks,
        inverse_blocks,
    })
}

/// Shape of the variety of submodules of a semisimple module: a product of
/// classical factors `G(n_i, k_i)`, empty when any `k_i > n_i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GrassmannianShape {
    Empty,
    Product {
        factors: Vec<(usize, usize)>,
        dimension: usize,
    },
}

pub fn grassmannian_shape(ambient: &[usize], sub: &[usize]) -> Result<GrassmannianShape> {
    if ambient.len() != sub.len() {
        return Err(VoakError::TableMismatch);
    }
    if sub.iter().zip(ambient.iter()).any(|(k, n)| k > n) {
        return Ok(GrassmannianShape::Empty);
    }
    let factors: Vec<(usize, usize)> = ambient
        .iter()
        .zip(sub.iter())
        .map(|(&n, &k)| (n, k))
        .collect();
    let dimension = factors.iter().map(|&(n, k)| k * (n - k)).sum();
    Ok(GrassmannianShape::Product { factors, dimension })
}
