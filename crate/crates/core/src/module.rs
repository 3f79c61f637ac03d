//! Module instances over a VOA: the adjoint module, direct sums and
//! contragredient (graded dual) modules, together with the invariant
//! bilinear form on `M + M'` and homomorphism checks.
//!
//! A module element is a coordinate vector per weight with respect to the
//! module's own graded bases. The contragredient action is computed from
//! the adjoint identity: for homogeneous `u` of weight h,
//!
//! `(u_n w', w) = sum_{k>=0} (-1)^h / k! (w', (L(1)^k u)_{2h-k-n-2} w)`,
//!
//! a finite sum because `L(1)` strictly lowers weight. Mode matrices on the
//! dual are therefore signed transposes of finitely many modes downstairs.

use std::collections::BTreeMap;

use serde::Serialize;

use num_traits::Zero;

use crate::axioms::AxiomReport;
use crate::element::GradedElement;
use crate::error::{Result, VoakError};
use crate::linalg::Matrix;
use crate::rational::{factorial, rat_int, sign_pow, Rational};
use crate::voa::Voa;

#[derive(Clone, PartialEq, Debug)]
pub enum ModuleKind {
    /// The instance acting on itself through its own vertex operators.
    Adjoint,
    Sum(Box<VModule>, Box<VModule>),
    /// Graded dual of the inner module, materialized up to `wmax`.
    Contragredient(Box<VModule>, u32),
}

/// A concrete module over a fixed instance. Weight supports here are
/// nonnegative integers (the implemented instances are the adjoint ladder
/// and its duals and sums; a general lowest weight would enter only as a
/// uniform offset).
#[derive(Clone, PartialEq, Debug)]
pub struct VModule {
    voa: Voa,
    kind: ModuleKind,
}

/// Module element: coordinates per weight in the module's graded bases.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct ModuleElement {
    pub components: BTreeMap<u32, Vec<Rational>>,
}

impl ModuleElement {
    pub fn zero() -> ModuleElement {
        ModuleElement::default()
    }

    pub fn single(weight: u32, dim: usize, index: usize) -> ModuleElement {
        let mut v = vec![Rational::zero(); dim];
        v[index] = rat_int(1);
        let mut components = BTreeMap::new();
        components.insert(weight, v);
        ModuleElement { components }
    }

    pub fn is_zero(&self) -> bool {
        self.components
            .values()
            .all(|v| v.iter().all(|c| c.is_zero()))
    }

    /// Componentwise `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &ModuleElement) {
        if c.is_zero() {
            return;
        }
        for (w, coords) in &other.components {
            match self.components.get_mut(w) {
                None => {
                    self.components
                        .insert(*w, coords.iter().map(|x| c * x).collect());
                }
                Some(mine) => {
                    assert_eq!(mine.len(), coords.len(), "coordinate length mismatch");
                    for (t, s) in mine.iter_mut().zip(coords.iter()) {
                        *t += c * s;
                    }
                }
            }
        }
    }
}

impl VModule {
    pub fn adjoint(voa: &Voa) -> VModule {
        VModule {
            voa: voa.clone(),
            kind: ModuleKind::Adjoint,
        }
    }

    pub fn direct_sum(a: &VModule, b: &VModule) -> Result<VModule> {
        if a.voa != b.voa {
            return Err(VoakError::ShapeMismatch(
                "direct sum requires the same base instance".into(),
            ));
        }
        Ok(VModule {
            voa: a.voa.clone(),
            kind: ModuleKind::Sum(Box::new(a.clone()), Box::new(b.clone())),
        })
    }

    /// The contragredient module `M'`, with graded pieces the duals of the
    /// pieces of `M`, materialized for weights <= wmax.
    pub fn contragredient(&self, wmax: u32) -> VModule {
        VModule {
            voa: self.voa.clone(),
            kind: ModuleKind::Contragredient(Box::new(self.clone()), wmax),
        }
    }

    pub fn voa(&self) -> &Voa {
        &self.voa
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn descriptor(&self) -> String {
        match &self.kind {
            ModuleKind::Adjoint => format!("adjoint({})", self.voa.descriptor()),
            ModuleKind::Sum(a, b) => format!("{} (+) {}", a.descriptor(), b.descriptor()),
            ModuleKind::Contragredient(m, w) => {
                format!("contragredient({}, wmax={w})", m.descriptor())
            }
        }
    }

    /// Dimension of the weight-`w` piece.
    pub fn dim(&self, weight: u32) -> Result<usize> {
        match &self.kind {
            ModuleKind::Adjoint => Ok(self.voa.dim(weight)),
            ModuleKind::Sum(a, b) => Ok(a.dim(weight)? + b.dim(weight)?),
            ModuleKind::Contragredient(m, wmax) => {
                if weight > *wmax {
                    return Err(VoakError::WeightOverflow {
                        weight,
                        cutoff: *wmax,
                    });
                }
                m.dim(weight)
            }
        }
    }

    /// Weights with nonzero pieces, up to `wmax`.
    pub fn weight_support(&self, wmax: u32) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for w in 0..=wmax {
            if self.dim(w)? > 0 {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// Matrix of `u_n` from the weight-`from_weight` piece to the piece of
    /// weight `wt u - n - 1 + from_weight`. Requires homogeneous `u`.
    pub fn mode_matrix(&self, u: &GradedElement, n: i64, from_weight: u32) -> Result<Matrix> {
        self.voa.validate_element(u)?;
        let h = u.homogeneous_weight().ok_or(VoakError::NonHomogeneous)? as i64;
        let target = h - n - 1 + from_weight as i64;
        match &self.kind {
            ModuleKind::Adjoint => self.voa.mode_matrix(u, n, from_weight),
            ModuleKind::Sum(a, b) => {
                let ma = a.mode_matrix(u, n, from_weight)?;
                let mb = b.mode_matrix(u, n, from_weight)?;
                // block diagonal with the summand order preserved
                let rows = ma.rows() + mb.rows();
                let cols = ma.cols() + mb.cols();
                let mut out = Matrix::zeros(rows, cols);
                for i in 0..ma.rows() {
                    for j in 0..ma.cols() {
                        out.set(i, j, ma.get(i, j).clone());
                    }
                }
                for i in 0..mb.rows() {
                    for j in 0..mb.cols() {
                        out.set(ma.rows() + i, ma.cols() + j, mb.get(i, j).clone());
                    }
                }
                Ok(out)
            }
            ModuleKind::Contragredient(m, wmax) => {
                if from_weight > *wmax || target > *wmax as i64 {
                    return Err(VoakError::WeightOverflow {
                        weight: from_weight.max(target.max(0) as u32),
                        cutoff: *wmax,
                    });
                }
                if target < 0 {
                    return Ok(Matrix::zeros(0, self.dim(from_weight)?));
                }
                let adjoint_op = contragredient_adjoint_operator(
                    &self.voa,
                    m,
                    u,
                    n,
                    target as u32,
                    from_weight,
                )?;
                Ok(adjoint_op.transpose())
            }
        }
    }

    /// Applies `u_n` to a module element.
    pub fn apply_mode(&self, u: &GradedElement, n: i64, x: &ModuleElement) -> Result<ModuleElement> {
        let h = u.homogeneous_weight().ok_or(VoakError::NonHomogeneous)? as i64;
        let mut out = ModuleElement::zero();
        for (&w, coords) in &x.components {
            let tw = h - n - 1 + w as i64;
            if tw < 0 {
                continue;
            }
            let m = self.mode_matrix(u, n, w)?;
            let y = m.mul_vec(coords);
            if y.iter().all(|c| c.is_zero()) {
                continue;
            }
            let entry = out
                .components
                .entry(tw as u32)
                .or_insert_with(|| vec![Rational::zero(); y.len()]);
            for (t, s) in entry.iter_mut().zip(y.iter()) {
                *t += s;
            }
        }
        Ok(out)
    }
}

/// The operator `sum_k (-1)^h / k! (L(1)^k u)_{2h-k-n-2}` mapping the
/// weight-`dual_target` piece of `m` to its weight-`dual_source` piece; the
/// contragredient mode matrix is its transpose.
fn contragredient_adjoint_operator(
    voa: &Voa,
    m: &VModule,
    u: &GradedElement,
    n: i64,
    dual_target: u32,
    dual_source: u32,
) -> Result<Matrix> {
    let h = u.homogeneous_weight().ok_or(VoakError::NonHomogeneous)? as i64;
    let sign = sign_pow(h.rem_euclid(2) as u32);
    let mut acc = Matrix::zeros(m.dim(dual_source)?, m.dim(dual_target)?);
    let mut lku = u.clone();
    let mut k: i64 = 0;
    while !lku.is_zero() {
        let mode = 2 * h - k - n - 2;
        // (L(1)^k u)_{mode} maps weight dual_target to weight dual_source
        // by the grading law; skip terms that land elsewhere
        let land = (h - k) - mode - 1 + dual_target as i64;
        if land == dual_source as i64 {
            let mat = m.mode_matrix(&lku, mode, dual_target)?;
            let coeff = &sign / Rational::from_integer(factorial(k as u32));
            acc = acc.add(&mat.scaled(&coeff));
        }
        lku = voa.l_op(1, &lku)?;
        k += 1;
        if k > h + 1 {
            break;
        }
    }
    Ok(acc)
}

/// Natural pairing between a contragredient element and an element of the
/// underlying module: dual bases pair to the identity per weight, and
/// mismatched weights pair to zero.
pub fn pairing(
    dual_module: &VModule,
    dual_elem: &ModuleElement,
    module: &VModule,
    elem: &ModuleElement,
) -> Result<Rational> {
    match dual_module.kind() {
        ModuleKind::Contragredient(inner, _) if inner.as_ref() == module => {}
        _ => {
            return Err(VoakError::ShapeMismatch(
                "pairing requires the contragredient of the given module".into(),
            ))
        }
    }
    let mut acc = Rational::zero();
    for (w, dc) in &dual_elem.components {
        if let Some(mc) = elem.components.get(w) {
            if dc.len() != mc.len() {
                return Err(VoakError::ShapeMismatch("coordinate length mismatch".into()));
            }
            for (a, b) in dc.iter().zip(mc.iter()) {
                acc += a * b;
            }
        }
    }
    Ok(acc)
}

/// The canonical symmetric invariant form on `M (+) M'`, stored as one Gram
/// matrix per weight over the concatenated bases.
#[derive(Clone, Debug)]
pub struct BilinearFormModel {
    pub module: VModule,
    pub grams: BTreeMap<u32, Matrix>,
}

/// Builds the hyperbolic form `(u + u', w + w') = (u, w') + (w, u')` on
/// `M (+) M'` for weights <= wmax, asserting per-weight nondegeneracy.
pub fn double_form(m: &VModule, wmax: u32) -> Result<BilinearFormModel> {
    let dual = m.contragredient(wmax);
    let sum = VModule::direct_sum(m, &dual)?;
    let mut grams = BTreeMap::new();
    for w in 0..=wmax {
        let d = m.dim(w)?;
        let n = 2 * d;
        let mut g = Matrix::zeros(n, n);
        for i in 0..d {
            g.set(i, d + i, rat_int(1));
            g.set(d + i, i, rat_int(1));
        }
        if d > 0 && g.rank() != n {
            return Err(VoakError::DegenerateForm);
        }
        grams.insert(w, g);
    }
    Ok(BilinearFormModel { module: sum, grams })
}

impl BilinearFormModel {
    /// Evaluates the form on two elements of the carrier module.
    pub fn eval(&self, x: &ModuleElement, y: &ModuleElement) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (w, xc) in &x.components {
            let Some(yc) = y.components.get(w) else { continue };
            let Some(g) = self.grams.get(w) else {
                return Err(VoakError::WeightOverflow {
                    weight: *w,
                    cutoff: self.grams.keys().max().copied().unwrap_or(0),
                });
            };
            let gy = g.mul_vec(yc);
            for (a, b) in xc.iter().zip(gy.iter()) {
                acc += a * b;
            }
        }
        Ok(acc)
    }
}

/// Verifies the invariance identity
/// `(Y(u,z) w1, w2) = (w1, Y(e^{zL(1)} (-z^{-2})^{L(0)} u, z^{-1}) w2)`
/// coefficientwise on the form's carrier for all weights <= wbox, as exact
/// matrix identities.
pub fn check_invariance(
    form: &BilinearFormModel,
    u: &GradedElement,
    wbox: u32,
) -> Result<AxiomReport> {
    let voa = form.module.voa().clone();
    let h = u.homogeneous_weight().ok_or(VoakError::NonHomogeneous)? as i64;
    let params = format!("wbox={wbox}, wt u={h}");
    let mut pass = true;
    let mut counterexample = None;

    'outer: for a in 0..=wbox {
        for n in (h - 1 - wbox as i64)..=(wbox as i64 + h - 1) {
            let b = a as i64 + h - n - 1;
            if b < 0 || b > wbox as i64 {
                continue;
            }
            let b = b as u32;
            let ga = form.grams.get(&a).unwrap();
            let gb = form.grams.get(&b).unwrap();
            // LHS[w1, w2] = (u_n w1, w2) with w1 of weight a, w2 of weight b
            let m_un = form.module.mode_matrix(u, n, a)?;
            let lhs = m_un.transpose().mul(gb);
            // RHS[w1, w2] = sum_k (-1)^h/k! (w1, (L(1)^k u)_{2h-k-n-2} w2)
            let mut rhs = Matrix::zeros(form.module.dim(a)?, form.module.dim(b)?);
            let sign = sign_pow(h.rem_euclid(2) as u32);
            let mut lku = u.clone();
            let mut k: i64 = 0;
            while !lku.is_zero() {
                let mode = 2 * h - k - n - 2;
                let target = (h - k) - mode - 1 + b as i64;
                if target == a as i64 {
                    let mat = form.module.mode_matrix(&lku, mode, b)?;
                    let coeff = &sign / Rational::from_integer(factorial(k as u32));
                    rhs = rhs.add(&ga.mul(&mat).scaled(&coeff));
                }
                lku = voa.l_op(1, &lku)?;
                k += 1;
                if k > h + 1 {
                    break;
                }
            }
            if lhs != rhs {
                pass = false;
                counterexample = Some(crate::axioms::Counterexample {
                    params: format!("source weight {a}, n={n}"),
                    residual: GradedElement::zero(),
                });
                break 'outer;
            }
        }
    }

    Ok(AxiomReport {
        axiom: "invariance".into(),
        instance: form.module.descriptor(),
        params,
        pass,
        counterexample,
    })
}

/// A per-weight linear map between modules over the same instance.
#[derive(Clone, Debug)]
pub struct HomMap {
    pub mats: BTreeMap<u32, Matrix>,
}

impl HomMap {
    pub fn identity(m: &VModule, wmax: u32) -> Result<HomMap> {
        let mut mats = BTreeMap::new();
        for w in 0..=wmax {
            mats.insert(w, Matrix::identity(m.dim(w)?));
        }
        Ok(HomMap { mats })
    }

    pub fn scalar(m: &VModule, wmax: u32, c: &Rational) -> Result<HomMap> {
        let mut mats = BTreeMap::new();
        for w in 0..=wmax {
            mats.insert(w, Matrix::identity(m.dim(w)?).scaled(c));
        }
        Ok(HomMap { mats })
    }

    /// Projection `M (+) N -> M` onto the first summand.
    pub fn projection_first(m: &VModule, n: &VModule, wmax: u32) -> Result<HomMap> {
        let mut mats = BTreeMap::new();
        for w in 0..=wmax {
            let dm = m.dim(w)?;
            let dn = n.dim(w)?;
            let mut p = Matrix::zeros(dm, dm + dn);
            for i in 0..dm {
                p.set(i, i, rat_int(1));
            }
            mats.insert(w, p);
        }
        Ok(HomMap { mats })
    }
}

/// Verifies `f . u_n = u_n . f` for the sampled modes, and when that holds,
/// additionally checks that `f` maps the computed lowest-weight spaces of
/// the source into those of the target.
pub fn check_hom(
    from: &VModule,
    to: &VModule,
    f: &HomMap,
    samples: &[(GradedElement, i64)],
    wmax: u32,
) -> Result<AxiomReport> {
    if from.voa() != to.voa() {
        return Err(VoakError::ShapeMismatch(
            "hom check requires the same base instance".into(),
        ));
    }
    let params = format!("wmax={wmax}, {} sampled modes", samples.len());
    let fail = |at: String| AxiomReport {
        axiom: "module-hom".into(),
        instance: format!("{} -> {}", from.descriptor(), to.descriptor()),
        params: params.clone(),
        pass: false,
        counterexample: Some(crate::axioms::Counterexample {
            params: at,
            residual: GradedElement::zero(),
        }),
    };
    for (u, n) in samples {
        let h = u.homogeneous_weight().ok_or(VoakError::NonHomogeneous)? as i64;
        for w in 0..=wmax {
            let target = h - n - 1 + w as i64;
            if target < 0 || target > wmax as i64 {
                continue;
            }
            let target = target as u32;
            let f_w = f
                .mats
                .get(&w)
                .ok_or_else(|| VoakError::ShapeMismatch(format!("missing map at weight {w}")))?;
            let f_t = f.mats.get(&target).ok_or_else(|| {
                VoakError::ShapeMismatch(format!("missing map at weight {target}"))
            })?;
            if f_w.rows() != to.dim(w)? || f_w.cols() != from.dim(w)? {
                return Err(VoakError::ShapeMismatch(format!(
                    "map at weight {w} is {}x{}, expected {}x{}",
                    f_w.rows(),
                    f_w.cols(),
                    to.dim(w)?,
                    from.dim(w)?
                )));
            }
            let lhs = f_t.mul(&from.mode_matrix(u, *n, w)?);
            let rhs = to.mode_matrix(u, *n, w)?.mul(f_w);
            if lhs != rhs {
                return Ok(fail(format!("u of weight {h}, n={n}, source weight {w}")));
            }
        }
    }
    // A module homomorphism maps lowest-weight vectors to lowest-weight
    // vectors; check it on the computed spaces.
    let om_from = crate::zhu::omega_space(from, wmax)?;
    let om_to = crate::zhu::omega_space(to, wmax)?;
    for (w, basis_from) in om_from.per_weight() {
        let f_w = f.mats.get(w).unwrap();
        let target = om_to
            .basis_at(*w)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(0, f_w.rows()));
        for i in 0..basis_from.rows() {
            let img = f_w.mul_vec(basis_from.row(i));
            if img.iter().all(|c| c.is_zero()) {
                continue;
            }
            // membership: rank must not grow when adjoining the image
            let mut rows: Vec<Vec<Rational>> = (0..target.rows())
                .map(|r| target.row(r).to_vec())
                .collect();
            let base_rank = target.rank();
            rows.push(img);
            if Matrix::from_rows(rows).rank() != base_rank {
                return Ok(fail(format!("omega functoriality fails at weight {w}")));
            }
        }
    }
    Ok(AxiomReport {
        axiom: "module-hom".into(),
        instance: format!("{} -> {}", from.descriptor(), to.descriptor()),
        params,
        pass: true,
        counterexample: None,
    })
}

/// Serializable module descriptor: weight support with dimensions.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleDescriptor {
    pub module: String,
    pub weights: Vec<u32>,
    pub dims: Vec<usize>,
}

pub fn describe(m: &VModule, wmax: u32) -> Result<ModuleDescriptor> {
    let weights = m.weight_support(wmax)?;
    let dims = weights
        .iter()
        .map(|w| m.dim(*w))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModuleDescriptor {
        module: m.descriptor(),
        weights,
        dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::rational::rat;

    fn alpha1() -> GradedElement {
        GradedElement::from_monomial(Monomial::single(1, 1))
    }

    #[test]
    fn adjoint_dims_match_instance() {
        let voa = Voa::heisenberg(1);
        let m = VModule::adjoint(&voa);
        for w in 0..=6 {
            assert_eq!(m.dim(w).unwrap(), voa.dim(w));
        }
        let c = Voa::comm_assoc(crate::voa::CommAssocData::dual_numbers()).unwrap();
        let mc = VModule::adjoint(&c);
        assert_eq!(mc.dim(0).unwrap(), 2);
        assert_eq!(mc.weight_support(4).unwrap(), vec![0]);
    }

    #[test]
    fn contragredient_rejects_requests_beyond_window() {
        let voa = Voa::heisenberg(1);
        let dual = VModule::adjoint(&voa).contragredient(3);
        assert!(matches!(
            dual.dim(5),
            Err(VoakError::WeightOverflow { .. })
        ));
        assert!(matches!(
            dual.mode_matrix(&alpha1(), -2, 3),
            Err(VoakError::WeightOverflow { .. })
        ));
    }

    #[test]
    fn direct_sum_adds_dims_blockwise() {
        let voa = Voa::heisenberg(1);
        let m = VModule::adjoint(&voa);
        let s = VModule::direct_sum(&m, &m).unwrap();
        for w in 0..=4 {
            assert_eq!(s.dim(w).unwrap(), 2 * m.dim(w).unwrap());
        }
        // block-diagonal mode action
        let a = s.mode_matrix(&alpha1(), 1, 2).unwrap();
        let single = m.mode_matrix(&alpha1(), 1, 2).unwrap();
        assert_eq!(a.rows(), 2 * single.rows());
        for i in 0..single.rows() {
            for j in 0..single.cols() {
                assert_eq!(a.get(i, j), single.get(i, j));
                assert_eq!(
                    a.get(single.rows() + i, single.cols() + j),
                    single.get(i, j)
                );
                assert!(a.get(i, single.cols() + j).is_zero());
            }
        }
        // mismatched bases rejected
        let other = VModule::adjoint(&Voa::heisenberg(2));
        assert!(VModule::direct_sum(&m, &other).is_err());
    }

    #[test]
    fn contragredient_alpha_is_minus_transpose() {
        let voa = Voa::heisenberg(1);
        let m = VModule::adjoint(&voa);
        let dual = m.contragredient(6);
        for n in -3i64..=3 {
            for w in 0..=4u32 {
                let target = -n + w as i64;
                if !(0..=4).contains(&target) {
                    continue;
                }
                let got = dual.mode_matrix(&alpha1(), n, w).unwrap();
                // alpha'(n) = -alpha(-n)^T per weight
                let down = m.mode_matrix(&alpha1(), -n, target as u32).unwrap();
                let want = down.transpose().scaled(&rat_int(-1));
                assert_eq!(got, want, "n={n} w={w}");
            }
        }
    }

    #[test]
    fn contragredient_l_is_transpose_of_l_minus_n() {
        let voa = Voa::heisenberg(1);
        let m = VModule::adjoint(&voa);
        let dual = m.contragredient(6);
        let omega = voa.omega().clone();
        for ln in -2i64..=2 {
            // L(ln) = omega_{ln+1}
            for w in 0..=4u32 {
                let target = w as i64 - ln;
                if !(0..=4).contains(&target) {
                    continue;
                }
                let got = dual.mode_matrix(&omega, ln + 1, w).unwrap();
                let down = m.mode_matrix(&omega, -ln + 1, target as u32).unwrap();
                assert_eq!(got, down.transpose(), "L({ln}) w={w}");
            }
        }
    }

    #[test]
    fn double_contragredient_restores_modes() {
        let voa = Voa::heisenberg(1);
        let m = VModule::adjoint(&voa);
        let dd = m.contragredient(6).contragredient(6);
        let omega = voa.omega().clone();
        for u in [GradedElement::one(), alpha1(), omega] {
            let h = u.homogeneous_weight().unwrap() as i64;
            for n in -3i64..=3 {
                for w in 0..=4u32 {
                    let target = h - n - 1 + w as i64;
                    if !(0..=4).contains(&target) {
                        continue;
                    }
                    assert_eq!(
                        dd.mode_matrix(&u, n, w).unwrap(),
                        m.mode_matrix(&u, n, w).unwrap(),
                        "wt u={h} n={n} w={w}"
                    );
                }
            }
        }
    }

    #[test]
    fn pairing_dual_basis_is_delta() {
        let voa = Voa::heisenberg(1);
        let m = VModule::adjoint(&voa);
        let dual = m.contragredient(4);
        let d2 = m.dim(2).unwrap();
        for i in 0..d2 {
            for j in 0..d2 {
                let w_dual = ModuleElement::single(2, d2, i);
                let w = ModuleElement::single(2, d2, j);
                let p = pairing(&dual, &w_dual, &m, &w).unwrap();
                assert_eq!(p, rat_int((i == j) as i64));
            }
        }
        // weight mismatch pairs to zero
        let w_dual = ModuleElement::single(1, m.dim(1).unwrap(), 0);
        let w = ModuleElement::single(2, d2, 0);
        assert_eq!(pairing(&dual, &w_dual, &m, &w).unwrap(), rat_int(0));
        // bilinearity
        let mut x = ModuleElement::single(2, d2, 0);
        x.components.get_mut(&2).unwrap()[1] = rat(3, 2);
        let y = ModuleElement::single(2, d2, 1);
        assert_eq!(pairing(&dual, &x, &m, &y).unwrap(), rat(3, 2));
        // wrong module rejected
        assert!(pairing(&m, &w, &m, &w).is_err());
    }

    #[test]
    fn double_form_is_symmetric_hyperbolic() {
        let voa = Voa::heisenberg(1);
        let m = VModule::adjoint(&voa);
        let form = double_form(&m, 4).unwrap();
        for (w, g) in &form.grams {
            assert_eq!(g, &g.transpose(), "symmetric at weight {w}");
            let d = m.dim(*w).unwrap();
            if d > 0 {
                assert_eq!(g.rank(), 2 * d, "nondegenerate at weight {w}");
            }
            // restricted to M it vanishes (isotropic summand)
            for i in 0..d {
                for j in 0..d {
                    assert!(g.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn invariance_of_double_form() {
        for rank in [1u32, 2] {
            let voa = Voa::heisenberg(rank);
            let m = VModule::adjoint(&voa);
            let form = double_form(&m, 4).unwrap();
            // all homogeneous basis elements of weight <= 2, plus omega
            let mut us: Vec<GradedElement> = voa
                .basis_through(2)
                .into_iter()
                .map(GradedElement::from_monomial)
                .collect();
            us.push(voa.omega().clone());
            for u in us {
                let rep = check_invariance(&form, &u, 4).unwrap();
                assert!(
                    rep.pass,
                    "invariance rank {rank} for wt {:?}",
                    u.homogeneous_weight()
                );
            }
        }
    }

    #[test]
    fn hom_checks() {
        let voa = Voa::heisenberg(1);
        let m = VModule::adjoint(&voa);
        let samples = vec![
            (alpha1(), -1i64),
            (alpha1(), 1),
            (voa.omega().clone(), 1),
            (voa.omega().clone(), 2),
        ];
        let id = HomMap::identity(&m, 4).unwrap();
        assert!(check_hom(&m, &m, &id, &samples, 4).unwrap().pass);
        let twice = HomMap::scalar(&m, 4, &rat_int(2)).unwrap();
        assert!(check_hom(&m, &m, &twice, &samples, 4).unwrap().pass);
        let s = VModule::direct_sum(&m, &m).unwrap();
        let proj = HomMap::projection_first(&m, &m, 4).unwrap();
        assert!(check_hom(&s, &m, &proj, &samples, 4).unwrap().pass);
        // identity passes on every constructed module, including the dual
        let dual = m.contragredient(4);
        let id_dual = HomMap::identity(&dual, 4).unwrap();
        assert!(check_hom(&dual, &dual, &id_dual, &samples, 3).unwrap().pass);
        // negative control: a map violating one mode
        let mut bad = HomMap::identity(&m, 4).unwrap();
        let g = bad.mats.get_mut(&1).unwrap();
        g.set(0, 0, rat_int(5));
        assert!(!check_hom(&m, &m, &bad, &samples, 4).unwrap().pass);
    }
}
