//! The associative quotient algebra on a weight truncation.
//!
//! For homogeneous `a` the two products are
//!
//! - `a * b = sum_{i=0}^{wt a} C(wt a, i) a_{i-1} b`  (the residue of
//!   `(1+z)^{wt a} / z   Y(a,z) b`),
//! - `a o b = sum_{i=0}^{wt a} C(wt a, i) a_{i-2} b`  (the residue of
//!   `(1+z)^{wt a} / z^2 Y(a,z) b`),
//!
//! extended bilinearly. The relations space is the span of all `a o b`; the
//! quotient by it carries the `*` product, with `[1]` the identity and the
//! conformal class central.
//!
//! The relations space is infinite dimensional, so a cutoff model is used:
//! generators `a o b` with `wt a + wt b + 1 <= N` over basis monomials. This
//! can only under-approximate the true relations inside weight <= N, so
//! computed quotient dimensions are upper bounds; [`stabilization_sweep`]
//! reports whether they have stabilized across a range of cutoffs.

use serde::Serialize;

use num_traits::Zero;

use crate::element::GradedElement;
use crate::error::{Result, VoakError};
use crate::linalg::{Matrix, Subspace};
use crate::module::VModule;
use crate::monomial::Monomial;
use crate::rational::{binomial, factorial, sign_pow, Rational};
use crate::voa::Voa;

/// `a * b`: the image of the associative product on representatives.
/// Homogeneous components of the output lie in `[wt b, wt a + wt b]`.
pub fn star(voa: &Voa, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
    weighted_residue_product(voa, a, b, -1)
}

/// `a o b`: a generator of the relations space. Homogeneous components of
/// the output lie in `[wt b + 1, wt a + wt b + 1]`.
pub fn circ(voa: &Voa, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
    weighted_residue_product(voa, a, b, -2)
}

/// `sum_{i=0}^{wt a} C(wt a, i) a_{i+offset} b`, bilinear over the
/// homogeneous components of `a`.
fn weighted_residue_product(
    voa: &Voa,
    a: &GradedElement,
    b: &GradedElement,
    offset: i64,
) -> Result<GradedElement> {
    let mut out = GradedElement::zero();
    for (wa, component) in a.components() {
        for i in 0..=wa {
            let coeff = Rational::from_integer(binomial(wa as i64, i));
            let term = voa.vertex_mode(&component, i as i64 + offset, b)?;
            out.add_scaled(&coeff, &term);
        }
    }
    Ok(out)
}

/// The weight-cutoff model of the quotient algebra: ambient monomials of
/// weight <= N, the echelonized span of the truncated relation generators,
/// and the complement coset basis in canonical order.
#[derive(Clone, Debug)]
pub struct ZhuQuotient {
    voa: Voa,
    cutoff: u32,
    ambient: Vec<Monomial>,
    o_space: Subspace,
    coset_basis: Vec<Monomial>,
}

/// Coset coordinates in a [`ZhuQuotient`]'s coset basis.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ZhuClass {
    #[serde(
        serialize_with = "crate::ser::rat_vec_to_strings"
    )]
    pub coords: Vec<Rational>,
    pub cutoff: u32,
}

impl ZhuClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl ZhuQuotient {
    /// Builds the cutoff model at weight cutoff `n`.
    pub fn build(voa: &Voa, n: u32) -> Result<ZhuQuotient> {
        let ambient = voa.basis_through(n);
        let gens = truncated_generators(voa, n)?;
        let o_space = Subspace::echelonize(gens);
        let coset_basis = o_space.complement_basis(&ambient);
        Ok(ZhuQuotient {
            voa: voa.clone(),
            cutoff: n,
            ambient,
            o_space,
            coset_basis,
        })
    }

    pub fn voa(&self) -> &Voa {
        &self.voa
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn ambient(&self) -> &[Monomial] {
        &self.ambient
    }

    pub fn o_space(&self) -> &Subspace {
        &self.o_space
    }

    pub fn coset_basis(&self) -> &[Monomial] {
        &self.coset_basis
    }

    /// Dimension of the truncated quotient.
    pub fn dim(&self) -> usize {
        self.coset_basis.len()
    }

    /// The truncated relation generators (for coset-invariance tests).
    pub fn relation_generators(&self) -> Result<Vec<GradedElement>> {
        truncated_generators(&self.voa, self.cutoff)
    }

    /// Coset coordinates of `v`; errors when `v` has weight above the
    /// cutoff.
    pub fn reduce(&self, v: &GradedElement) -> Result<ZhuClass> {
        if let Some(w) = v.max_weight() {
            if w > self.cutoff {
                return Err(VoakError::WeightOverflow {
                    weight: w,
                    cutoff: self.cutoff,
                });
            }
        }
        let coords = self.o_space.quotient_coords(&self.ambient, v)?;
        Ok(ZhuClass {
            coords,
            cutoff: self.cutoff,
        })
    }

    /// `[a] [b] = reduce(a * b)`; errors when the representative product
    /// leaves the cutoff window.
    pub fn multiply(&self, a: &GradedElement, b: &GradedElement) -> Result<ZhuClass> {
        let prod = star(&self.voa, a, b)?;
        self.reduce(&prod)
    }

    /// Spot-check of well-definedness: recomputes `[a][b]` with `a`
    /// perturbed by the given relation generator (when the products remain
    /// inside the window) and compares.
    pub fn check_well_defined(
        &self,
        a: &GradedElement,
        b: &GradedElement,
        generator: &GradedElement,
    ) -> Result<bool> {
        let base = self.multiply(a, b)?;
        let ga = a + generator;
        let wa = ga.max_weight().unwrap_or(0);
        let wb = b.max_weight().unwrap_or(0);
        if wa + wb > self.cutoff {
            // perturbed product would overflow; nothing to compare
            return Ok(true);
        }
        let perturbed = self.multiply(&ga, b)?;
        Ok(base == perturbed)
    }

    /// Classes of the coset-basis monomials.
    pub fn basis_classes(&self) -> Result<Vec<ZhuClass>> {
        self.coset_basis
            .iter()
            .map(|m| self.reduce(&GradedElement::from_monomial(m.clone())))
            .collect()
    }
}

/// All nonzero `a o b` over basis monomials with `wt a + wt b + 1 <= n`.
fn truncated_generators(voa: &Voa, n: u32) -> Result<Vec<GradedElement>> {
    let mut gens = Vec::new();
    for wa in 0..=n {
        for ma in voa.basis(wa) {
            let a = GradedElement::from_monomial(ma);
            for wb in 0..=n {
                if wa + wb + 1 > n {
                    continue;
                }
                for mb in voa.basis(wb) {
                    let g = circ(voa, &a, &GradedElement::from_monomial(mb))?;
                    if !g.is_zero() {
                        gens.push(g);
                    }
                }
            }
        }
    }
    Ok(gens)
}

/// The anti-involution representative `phi(a) = e^{L(1)} (-1)^{L(0)} a`:
/// `(-1)^{wt}` componentwise, then the finite exponential series of `L(1)`
/// (nilpotent on weight-bounded elements).
pub fn phi(voa: &Voa, a: &GradedElement) -> Result<GradedElement> {
    let mut signed = GradedElement::zero();
    for (w, comp) in a.components() {
        signed.add_scaled(&sign_pow(w % 2), &comp);
    }
    let mut out = GradedElement::zero();
    let mut term = signed;
    let mut k: u32 = 0;
    while !term.is_zero() {
        out.add_scaled(&Rational::from_integer(factorial(k)).recip(), &term);
        term = voa.l_op(1, &term)?;
        k += 1;
    }
    Ok(out)
}

/// Lowest-weight spaces of a module, per weight: the simultaneous kernel of
/// the weight-lowering and weight-preserving-excess modes `a_{wt a + m}`,
/// tested against all spanning `a` of weight <= wmax and `0 <= m <= wmax`.
/// Bases are canonical RREF kernel rows in module coordinates.
#[derive(Clone, Debug)]
pub struct OmegaSpace {
    per_weight: Vec<(u32, Matrix)>,
    pub tested_weight: u32,
}

impl OmegaSpace {
    pub fn per_weight(&self) -> &[(u32, Matrix)] {
        &self.per_weight
    }

    pub fn basis_at(&self, w: u32) -> Option<&Matrix> {
        self.per_weight
            .iter()
            .find(|(pw, _)| *pw == w)
            .map(|(_, m)| m)
    }

    pub fn dims(&self) -> Vec<(u32, usize)> {
        self.per_weight.iter().map(|(w, m)| (*w, m.rows())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.per_weight.iter().map(|(_, m)| m.rows()).sum()
    }
}

/// Computes the lowest-weight spaces of `m` for weights <= wmax. The
/// annihilation condition is tested against spanning elements of weight
/// <= wmax only (the truncation is recorded in the result).
pub fn omega_space(m: &VModule, wmax: u32) -> Result<OmegaSpace> {
    let voa = m.voa().clone();
    let mut per_weight = Vec::new();
    for lambda in 0..=wmax {
        let dim = m.dim(lambda)?;
        if dim == 0 {
            continue;
        }
        let mut stacked: Vec<Matrix> = Vec::new();
        for wa in 0..=wmax {
            for ma in voa.basis(wa) {
                let a = GradedElement::from_monomial(ma);
                for excess in 0..=wmax as i64 {
                    // a_{wt a + m} maps weight lambda to lambda - m - 1
                    let mode = wa as i64 + excess;
                    let target = lambda as i64 - excess - 1;
                    if target < 0 {
                        continue;
                    }
                    let mat = m.mode_matrix(&a, mode, lambda)?;
                    if mat.rows() > 0 {
                        stacked.push(mat);
                    }
                }
            }
        }
        let kernel = if stacked.is_empty() {
            Matrix::identity(dim)
        } else {
            Matrix::vstack(&stacked).nullspace()
        };
        if kernel.rows() > 0 {
            per_weight.push((lambda, kernel));
        }
    }
    Ok(OmegaSpace {
        per_weight,
        tested_weight: wmax,
    })
}

/// Matrix of the top-level operator `o(a) = a_{wt a - 1}` on the given
/// lowest-weight basis, per weight (the operator preserves each graded
/// piece). Extended linearly over homogeneous components of `a`.
pub fn o_action(m: &VModule, a: &GradedElement, omega: &OmegaSpace) -> Result<Vec<(u32, Matrix)>> {
    let mut out = Vec::new();
    for (lambda, basis) in omega.per_weight() {
        let dim_lambda = m.dim(*lambda)?;
        // o(a) on the ambient weight piece
        let mut op = Matrix::zeros(dim_lambda, dim_lambda);
        for (wa, comp) in a.components() {
            let mat = m.mode_matrix(&comp, wa as i64 - 1, *lambda)?;
            op = op.add(&mat);
        }
        // restrict to the kernel basis: solve basis^T x = op * w for each
        // basis vector w
        let k = basis.rows();
        let mut restricted = Matrix::zeros(k, k);
        let basis_t = basis.transpose();
        for j in 0..k {
            let img = op.mul_vec(basis.row(j));
            let coords = solve_in_span(&basis_t, &img)?;
            for (i, c) in coords.into_iter().enumerate() {
                restricted.set(i, j, c);
            }
        }
        out.push((*lambda, restricted));
    }
    Ok(out)
}

/// Solves `cols * x = v` where the columns are independent; errors when `v`
/// is outside their span (the lowest-weight space failed to be invariant).
fn solve_in_span(cols: &Matrix, v: &[Rational]) -> Result<Vec<Rational>> {
    let n = cols.cols();
    let mut aug = Matrix::zeros(cols.rows(), n + 1);
    for (i, x) in v.iter().enumerate() {
        for j in 0..n {
            aug.set(i, j, cols.get(i, j).clone());
        }
        aug.set(i, n, x.clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&n) {
        return Err(VoakError::ShapeMismatch(
            "vector escapes the lowest-weight space".into(),
        ));
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, n).clone();
    }
    Ok(x)
}

/// One cutoff step of the stabilization sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    pub cutoff: u32,
    pub image_dim: usize,
}

/// Dimension of the image of the weight-filtered piece `V_{<= k}` in the
/// truncated quotient, for each cutoff in `cutoffs`; the dimensions are
/// non-increasing in the cutoff and the sweep reports whether they have
/// stabilized. Cutoffs below `k` cannot hold the filtration and are
/// skipped.
pub fn stabilization_sweep(voa: &Voa, k: u32, cutoffs: &[u32]) -> Result<(Vec<SweepPoint>, bool)> {
    let mut points = Vec::new();
    for &n in cutoffs {
        if n < k {
            continue;
        }
        let z = ZhuQuotient::build(voa, n)?;
        let mut coord_rows = Vec::new();
        for m in voa.basis_through(k) {
            let class = z.reduce(&GradedElement::from_monomial(m))?;
            coord_rows.push(class.coords);
        }
        let image_dim = Matrix::from_rows(coord_rows).rank();
        points.push(SweepPoint {
            cutoff: n,
            image_dim,
        });
    }
    let stabilized = points.windows(2).all(|w| w[0].image_dim == w[1].image_dim);
    Ok((points, stabilized))
}
