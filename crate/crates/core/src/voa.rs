//! Concrete vertex operator algebra instances.
//!
//! Two kinds are implemented:
//!
//! - the rank-d Heisenberg algebra on the Fock space
//!   `C[alpha_i(-n) | i <= d, n > 0]`, with the orthonormal form
//!   `(alpha_i, alpha_j) = delta_ij`, vacuum the empty monomial,
//!   `omega = 1/2 sum_i alpha_i(-1)^2` and central charge d;
//! - commutative associative algebras, where `Y(u,z)v = uv`, the unit is the
//!   vacuum, omega = 0 and everything has weight 0.
//!
//! Mode coefficients `u_n v` for the Heisenberg case are evaluated by
//! recursive reduction of the normal-ordered product
//! `Y(a_{i1}(-n1)...a_{ik}(-nk)1, z) = :prod_j (1/(n_j-1)!) d^{n_j-1} a_{ij}(z):`
//! — peel one factor, split it into creation and annihilation halves, and
//! recurse on the remaining field. Each `u_n v` is a finite exact sum.

use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::element::GradedElement;
use crate::error::{Result, VoakError};
use crate::linalg::Matrix;
use crate::monomial::{enumerate_basis, Factor, Monomial};
use crate::rational::{binomial, rat, rat_int, sign_pow, Rational};

/// Structure constants of a finite-dimensional commutative associative
/// algebra: `e_i e_j = sum_k c[i][j][k] e_k`, with a distinguished unit.
/// Indices are 1-based to match generator labels.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CommAssocData {
    pub dimension: u32,
    pub unit: u32,
    /// `constants[i-1][j-1][k-1]` is the coefficient of `e_k` in `e_i e_j`.
    #[serde(
        serialize_with = "crate::ser::rat_tensor3_to_strings",
        deserialize_with = "crate::ser::rat_tensor3_from_strings"
    )]
    pub constants: Vec<Vec<Vec<Rational>>>,
}

impl CommAssocData {
    /// The one-dimensional algebra `C`.
    pub fn complex_numbers() -> CommAssocData {
        CommAssocData {
            dimension: 1,
            unit: 1,
            constants: vec![vec![vec![rat_int(1)]]],
        }
    }

    /// `C[x]/(x^2)`: dimension 2, `e_1` the unit, `e_2^2 = 0`.
    pub fn dual_numbers() -> CommAssocData {
        let c = |k: usize| {
            let mut v = vec![rat_int(0); 2];
            v[k - 1] = rat_int(1);
            v
        };
        CommAssocData {
            dimension: 2,
            unit: 1,
            constants: vec![
                vec![c(1), c(2)],
                vec![c(2), vec![rat_int(0), rat_int(0)]],
            ],
        }
    }

    fn product_coeffs(&self, i: usize, j: usize) -> &[Rational] {
        &self.constants[i - 1][j - 1]
    }

    /// Checks commutativity, associativity of the table and the unit law.
    pub fn validate(&self) -> Result<()> {
        let d = self.dimension as usize;
        if d == 0 {
            return Err(VoakError::InvalidStructure("dimension must be positive".into()));
        }
        if self.unit == 0 || self.unit > self.dimension {
            return Err(VoakError::InvalidStructure("unit index out of range".into()));
        }
        if self.constants.len() != d
            || self
                .constants
                .iter()
                .any(|p| p.len() != d || p.iter().any(|q| q.len() != d))
        {
            return Err(VoakError::InvalidStructure(
                "structure-constant tensor has wrong shape".into(),
            ));
        }
        let u = self.unit as usize;
        for i in 1..=d {
            for j in 1..=d {
                if self.product_coeffs(i, j) != self.product_coeffs(j, i) {
                    return Err(VoakError::InvalidStructure(format!(
                        "not commutative at ({i},{j})"
                    )));
                }
            }
            for (k, c) in self.product_coeffs(u, i).iter().enumerate() {
                let want = if k + 1 == i { rat_int(1) } else { rat_int(0) };
                if *c != want {
                    return Err(VoakError::InvalidStructure(format!(
                        "unit does not act as identity on e_{i}"
                    )));
                }
            }
        }
        // (e_i e_j) e_k = e_i (e_j e_k)
        for i in 1..=d {
            for j in 1..=d {
                for k in 1..=d {
                    for m in 0..d {
                        let mut lhs = Rational::zero();
                        let mut rhs = Rational::zero();
                        for l in 1..=d {
                            lhs += &self.product_coeffs(i, j)[l - 1]
                                * &self.product_coeffs(l, k)[m];
                            rhs += &self.product_coeffs(j, k)[l - 1]
                                * &self.product_coeffs(i, l)[m];
                        }
                        if lhs != rhs {
                            return Err(VoakError::InvalidStructure(format!(
                                "not associative at ({i},{j},{k})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Deliberate corruptions of the mode rule, used as negative-control
/// fixtures by the axiom suite.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corruption {
    /// `u_n v -> u_n v + u_{n-1} v`: breaks vacuum, creation, translation,
    /// grading, Jacobi and Virasoro.
    ShiftModes,
    /// Annihilation bracket multiplier `m^2` instead of `m`: breaks the
    /// locality orders and the Virasoro relation while leaving the vacuum
    /// and creation axioms structurally intact.
    QuadraticBracket,
}

#[derive(Clone, PartialEq, Debug)]
pub enum VoaKind {
    Heisenberg { rank: u32 },
    CommAssoc(CommAssocData),
}

/// A concrete VOA instance: vacuum, conformal element, central charge and
/// the mode action `(u, n, v) -> u_n v`. Immutable after construction; all
/// mode evaluation is pure.
#[derive(Clone, PartialEq, Debug)]
pub struct Voa {
    kind: VoaKind,
    central_charge: Rational,
    vacuum: GradedElement,
    omega: GradedElement,
    corruption: Option<Corruption>,
}

impl Voa {
    /// The rank-d Heisenberg algebra `M(1)`.
    pub fn heisenberg(rank: u32) -> Voa {
        assert!(rank >= 1, "rank must be positive");
        let mut omega = GradedElement::zero();
        for i in 1..=rank {
            let sq = Monomial::from_factors(vec![
                Factor { gen: i, depth: 1 },
                Factor { gen: i, depth: 1 },
            ]);
            omega.add_term(sq, rat(1, 2));
        }
        Voa {
            kind: VoaKind::Heisenberg { rank },
            central_charge: rat_int(rank as i64),
            vacuum: GradedElement::one(),
            omega,
            corruption: None,
        }
    }

    /// A commutative associative algebra as a VOA: unit vacuum, omega = 0,
    /// central charge 0, all elements of weight 0.
    pub fn comm_assoc(data: CommAssocData) -> Result<Voa> {
        data.validate()?;
        Ok(Voa {
            kind: VoaKind::CommAssoc(data),
            central_charge: rat_int(0),
            vacuum: GradedElement::one(),
            omega: GradedElement::zero(),
            corruption: None,
        })
    }

    /// Same instance with a corrupted mode rule (negative-control fixture).
    pub fn corrupted(mut self, c: Corruption) -> Voa {
        self.corruption = Some(c);
        self
    }

    pub fn kind(&self) -> &VoaKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            VoaKind::Heisenberg { .. } => "heisenberg",
            VoaKind::CommAssoc(_) => "commutative-associative",
        }
    }

    pub fn rank_or_dim(&self) -> u32 {
        match &self.kind {
            VoaKind::Heisenberg { rank } => *rank,
            VoaKind::CommAssoc(d) => d.dimension,
        }
    }

    pub fn central_charge(&self) -> &Rational {
        &self.central_charge
    }

    pub fn vacuum(&self) -> &GradedElement {
        &self.vacuum
    }

    pub fn omega(&self) -> &GradedElement {
        &self.omega
    }

    pub fn corruption(&self) -> Option<Corruption> {
        self.corruption
    }

    /// JSON header `{kind, rank_or_dim, central_charge}`.
    pub fn header(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind_name(),
            "rank_or_dim": self.rank_or_dim(),
            "central_charge": crate::rational::format_rational(self.central_charge()),
        })
    }

    /// One-line descriptor used by reports.
    pub fn descriptor(&self) -> String {
        let base = match &self.kind {
            VoaKind::Heisenberg { rank } => format!("heisenberg(rank={rank})"),
            VoaKind::CommAssoc(d) => format!("comm-assoc(dim={})", d.dimension),
        };
        match self.corruption {
            None => base,
            Some(Corruption::ShiftModes) => format!("{base}+corrupt(shift-modes)"),
            Some(Corruption::QuadraticBracket) => format!("{base}+corrupt(quadratic-bracket)"),
        }
    }

    /// Basis monomials of the given weight, in canonical order.
    pub fn basis(&self, weight: u32) -> Vec<Monomial> {
        match &self.kind {
            VoaKind::Heisenberg { rank } => enumerate_basis(*rank, weight),
            VoaKind::CommAssoc(d) => {
                if weight != 0 {
                    return Vec::new();
                }
                let mut out = vec![Monomial::vacuum()];
                for i in 1..=d.dimension {
                    if i != d.unit {
                        out.push(Monomial::point(i));
                    }
                }
                out
            }
        }
    }

    pub fn dim(&self, weight: u32) -> usize {
        self.basis(weight).len()
    }

    /// All basis monomials of weight <= wmax, in canonical order.
    pub fn basis_through(&self, wmax: u32) -> Vec<Monomial> {
        (0..=wmax).flat_map(|w| self.basis(w)).collect()
    }

    /// Rejects elements that cannot belong to this instance (out-of-range
    /// generator indices, point factors in a Fock space, and vice versa).
    pub fn validate_element(&self, v: &GradedElement) -> Result<()> {
        for (m, _) in v.iter() {
            for f in m.factors() {
                match &self.kind {
                    VoaKind::Heisenberg { rank } => {
                        if f.depth == 0 {
                            return Err(VoakError::MixedInstance {
                                reason: format!("point factor e{} in a Fock element", f.gen),
                            });
                        }
                        if f.gen == 0 || f.gen > *rank {
                            return Err(VoakError::IndexOutOfRange {
                                index: f.gen,
                                rank: *rank,
                            });
                        }
                    }
                    VoaKind::CommAssoc(d) => {
                        if f.depth != 0 {
                            return Err(VoakError::MixedInstance {
                                reason: format!(
                                    "creation factor a{}(-{}) in a weight-zero algebra",
                                    f.gen, f.depth
                                ),
                            });
                        }
                        if f.gen == 0 || f.gen > d.dimension || f.gen == d.unit {
                            return Err(VoakError::MixedInstance {
                                reason: format!("invalid point index e{}", f.gen),
                            });
                        }
                    }
                }
                if m.factors().len() > 1 && f.depth == 0 {
                    return Err(VoakError::MixedInstance {
                        reason: "point factors cannot be combined".into(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The Heisenberg mode `alpha_i(m)` on `v`: creation for m < 0,
    /// annihilation through the bracket `[alpha_i(m), alpha_j(-n)] =
    /// m delta_{m,n} delta_{ij}` for m > 0, and zero for m = 0.
    pub fn alpha_mode(&self, i: u32, m: i64, v: &GradedElement) -> Result<GradedElement> {
        let VoaKind::Heisenberg { rank } = &self.kind else {
            return Err(VoakError::UnsupportedOperation(
                "alpha_mode is a Heisenberg operation".into(),
            ));
        };
        if i == 0 || i > *rank {
            return Err(VoakError::IndexOutOfRange { index: i, rank: *rank });
        }
        self.validate_element(v)?;
        Ok(self.alpha_mode_unchecked(i, m, v))
    }

    fn alpha_mode_unchecked(&self, i: u32, m: i64, v: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        if m < 0 {
            let f = Factor {
                gen: i,
                depth: (-m) as u32,
            };
            for (mono, c) in v.iter() {
                out.add_term(mono.with_factor(f), c.clone());
            }
            return out;
        }
        if m == 0 {
            return out;
        }
        let f = Factor {
            gen: i,
            depth: m as u32,
        };
        let mult = match self.corruption {
            Some(Corruption::QuadraticBracket) => rat_int(m * m),
            _ => rat_int(m),
        };
        for (mono, c) in v.iter() {
            let k = mono.multiplicity(f);
            if k == 0 {
                continue;
            }
            let idx = mono.factors().iter().position(|g| *g == f).unwrap();
            out.add_term(mono.without_index(idx), c * &mult * rat_int(k as i64));
        }
        out
    }

    /// The mode coefficient `u_n v` of `Y(u, z) v`. Bilinear in `u` and `v`;
    /// always a finite exact sum.
    pub fn vertex_mode(&self, u: &GradedElement, n: i64, v: &GradedElement) -> Result<GradedElement> {
        self.validate_element(u)?;
        self.validate_element(v)?;
        let mut out = self.vertex_mode_clean(u, n, v);
        if self.corruption == Some(Corruption::ShiftModes) {
            out.add_assign(&self.vertex_mode_clean(u, n - 1, v));
        }
        Ok(out)
    }

    fn vertex_mode_clean(&self, u: &GradedElement, n: i64, v: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for (mu, cu) in u.iter() {
            let term = self.mono_mode(mu, n, v);
            out.add_scaled(cu, &term);
        }
        out
    }

    /// `u_n v` for a single basis monomial `u`.
    fn mono_mode(&self, mu: &Monomial, n: i64, v: &GradedElement) -> GradedElement {
        match &self.kind {
            VoaKind::Heisenberg { .. } => self.fock_mode(mu, n, v),
            VoaKind::CommAssoc(d) => comm_mode(d, mu, n, v),
        }
    }

    fn fock_mode(&self, mu: &Monomial, n: i64, v: &GradedElement) -> GradedElement {
        if v.is_zero() {
            return GradedElement::zero();
        }
        // Y(1, z) = id
        if mu.is_vacuum() {
            return if n == -1 { v.clone() } else { GradedElement::zero() };
        }
        // u = a^{(n1)}_i normal-ordered against the field W of the
        // remaining factors:
        //   u_n v = sum_{p <= n1-2} A(p) (W_{n-p-1} v)
        //         + sum_{p >= n1-1} W_{n-p-1} (A(p) v)
        // with A(p) = (-1)^{n1-1} C(p, n1-1) alpha_i(p - n1 + 1).
        let lead = mu.factors()[0];
        let rest = mu.without_index(0);
        let n1 = lead.depth as i64;
        let rest_wt = rest.weight() as i64;
        let sign = sign_pow(lead.depth - 1);

        let mut out = GradedElement::zero();

        // Creation half: p < 0 only (C(p, n1-1) = 0 for 0 <= p <= n1-2),
        // and W_{n-p-1} v = 0 once the target weight drops below zero.
        let vmax = v.max_weight().unwrap_or(0) as i64;
        let lo = n - rest_wt - vmax;
        let hi = (n1 - 2).min(-1);
        for p in lo..=hi {
            let c = binomial(p, (n1 - 1) as u32);
            if c.is_zero() {
                continue;
            }
            let inner = self.fock_mode(&rest, n - p - 1, v);
            if inner.is_zero() {
                continue;
            }
            let created = self.alpha_mode_unchecked(lead.gen, p - n1 + 1, &inner);
            out.add_scaled(&(&sign * Rational::from_integer(c)), &created);
        }

        // Annihilation half: p - n1 + 1 in [0, max weight of v].
        for p in (n1 - 1)..=(n1 - 1 + vmax) {
            let c = binomial(p, (n1 - 1) as u32);
            if c.is_zero() {
                continue;
            }
            let killed = self.alpha_mode_unchecked(lead.gen, p - n1 + 1, v);
            if killed.is_zero() {
                continue;
            }
            let outer = self.fock_mode(&rest, n - p - 1, &killed);
            out.add_scaled(&(&sign * Rational::from_integer(c)), &outer);
        }

        out
    }

    /// `L(n) v = omega_{n+1} v`.
    pub fn l_op(&self, n: i64, v: &GradedElement) -> Result<GradedElement> {
        let omega = self.omega.clone();
        self.vertex_mode(&omega, n + 1, v)
    }

    /// Matrix of `u_n` from the weight-`from_weight` basis to the basis of
    /// weight `wt u - n - 1 + from_weight` (a `0 x dim` matrix when the
    /// target weight is negative). Requires homogeneous `u`.
    pub fn mode_matrix(&self, u: &GradedElement, n: i64, from_weight: u32) -> Result<Matrix> {
        self.validate_element(u)?;
        let wu = u.homogeneous_weight().ok_or(VoakError::NonHomogeneous)? as i64;
        let source = self.basis(from_weight);
        let target_weight = wu - n - 1 + from_weight as i64;
        if target_weight < 0 {
            return Ok(Matrix::zeros(0, source.len()));
        }
        let target = self.basis(target_weight as u32);
        let index: std::collections::BTreeMap<&Monomial, usize> =
            target.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut out = Matrix::zeros(target.len(), source.len());
        for (j, m) in source.iter().enumerate() {
            let img = self.vertex_mode(u, n, &GradedElement::from_monomial(m.clone()))?;
            for (mono, c) in img.iter() {
                match index.get(mono) {
                    Some(&i) => out.set(i, j, c.clone()),
                    // only a corrupted rule can leak weight
                    None => {
                        return Err(VoakError::InvalidStructure(format!(
                            "mode output leaks outside the graded target at {mono}"
                        )))
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Mode action for a commutative associative algebra: `Y(u,z)v = uv`, i.e.
/// `u_{-1} v = uv` and all other modes vanish.
fn comm_mode(data: &CommAssocData, mu: &Monomial, n: i64, v: &GradedElement) -> GradedElement {
    if n != -1 {
        return GradedElement::zero();
    }
    let i = basis_index(data, mu);
    let mut out = GradedElement::zero();
    for (mv, c) in v.iter() {
        let j = basis_index(data, mv);
        for (k0, coeff) in data.constants[i - 1][j - 1].iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            out.add_term(basis_monomial(data, (k0 + 1) as u32), c * coeff);
        }
    }
    out
}

fn basis_index(data: &CommAssocData, m: &Monomial) -> usize {
    if m.is_vacuum() {
        data.unit as usize
    } else {
        m.factors()[0].gen as usize
    }
}

fn basis_monomial(data: &CommAssocData, idx: u32) -> Monomial {
    if idx == data.unit {
        Monomial::vacuum()
    } else {
        Monomial::point(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(i: u32, n: u32) -> GradedElement {
        GradedElement::from_monomial(Monomial::single(i, n))
    }

    #[test]
    fn heisenberg_header_data() {
        let v = Voa::heisenberg(1);
        assert_eq!(*v.central_charge(), rat_int(1));
        assert_eq!(*v.vacuum(), GradedElement::one());
        // omega = 1/2 a1(-1)^2 1
        let sq = Monomial::from_factors(vec![
            Factor { gen: 1, depth: 1 },
            Factor { gen: 1, depth: 1 },
        ]);
        assert_eq!(*v.omega(), GradedElement::from_term(sq, rat(1, 2)));
        assert_eq!(v.omega().homogeneous_weight(), Some(2));

        let v3 = Voa::heisenberg(3);
        assert_eq!(v3.dim(1), 3);
        assert_eq!(*v3.central_charge(), rat_int(3));
    }

    #[test]
    fn alpha_mode_bracket() {
        let v = Voa::heisenberg(1);
        // a1(1) a1(-1) 1 = 1
        let out = v.alpha_mode(1, 1, &alpha(1, 1)).unwrap();
        assert_eq!(out, GradedElement::one());
        // a1(-2) 1 = a1(-2) 1
        let out = v.alpha_mode(1, -2, &GradedElement::one()).unwrap();
        assert_eq!(out, alpha(1, 2));
        // zero mode annihilates
        let out = v.alpha_mode(1, 0, &alpha(1, 3)).unwrap();
        assert!(out.is_zero());
        // index out of range
        assert!(matches!(
            v.alpha_mode(2, 1, &GradedElement::one()),
            Err(VoakError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn alpha_mode_counts_multiplicity() {
        let v = Voa::heisenberg(1);
        let sq = GradedElement::from_monomial(Monomial::from_factors(vec![
            Factor { gen: 1, depth: 1 },
            Factor { gen: 1, depth: 1 },
        ]));
        // a(1) a(-1)^2 1 = 2 a(-1) 1
        let out = v.alpha_mode(1, 1, &sq).unwrap();
        assert_eq!(out, alpha(1, 1).scaled(&rat_int(2)));
    }

    #[test]
    fn single_factor_field_is_alpha() {
        let v = Voa::heisenberg(2);
        // u = a1(-1)1: u_n = a1(n) for all n
        let u = alpha(1, 1);
        for n in -4..=4 {
            for w in 0..=3 {
                for m in v.basis(w) {
                    let e = GradedElement::from_monomial(m);
                    let lhs = v.vertex_mode(&u, n, &e).unwrap();
                    let rhs = v.alpha_mode(1, n, &e).unwrap();
                    assert_eq!(lhs, rhs, "n={n}");
                }
            }
        }
    }

    #[test]
    fn vacuum_field_is_identity() {
        let v = Voa::heisenberg(1);
        let one = GradedElement::one();
        let e = alpha(1, 2);
        assert_eq!(v.vertex_mode(&one, -1, &e).unwrap(), e);
        for n in [-3, -2, 0, 1, 5] {
            assert!(v.vertex_mode(&one, n, &e).unwrap().is_zero());
        }
    }

    #[test]
    fn l0_is_weight_times_identity() {
        for rank in 1..=2u32 {
            let v = Voa::heisenberg(rank);
            let wmax = if rank == 1 { 8 } else { 6 };
            for w in 0..=wmax {
                for m in v.basis(w) {
                    let e = GradedElement::from_monomial(m);
                    let out = v.l_op(0, &e).unwrap();
                    assert_eq!(out, e.scaled(&rat_int(w as i64)), "weight {w}");
                }
            }
        }
    }

    #[test]
    fn header_shape() {
        let v = Voa::heisenberg(2);
        assert_eq!(
            v.header(),
            serde_json::json!({"kind": "heisenberg", "rank_or_dim": 2, "central_charge": "2"})
        );
        let c = Voa::comm_assoc(CommAssocData::complex_numbers()).unwrap();
        assert_eq!(
            c.header(),
            serde_json::json!({"kind": "commutative-associative", "rank_or_dim": 1, "central_charge": "0"})
        );
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Voa>();
        assert_send_sync::<GradedElement>();
        assert_send_sync::<crate::linalg::Subspace>();
        assert_send_sync::<crate::linalg::Matrix>();
        // mode evaluation is pure: concurrent callers agree
        let v = std::sync::Arc::new(Voa::heisenberg(1));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let v = v.clone();
                std::thread::spawn(move || {
                    let om = v.omega().clone();
                    v.vertex_mode(&om, 1, &om).unwrap()
                })
            })
            .collect();
        let results: Vec<GradedElement> =
            handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn l_minus_one_kills_nothing_but_translates() {
        let v = Voa::heisenberg(1);
        // L(-1) 1 = 0 (creation axiom: omega_n 1 = 0 for n >= 0)
        assert!(v.l_op(-1, &GradedElement::one()).unwrap().is_zero());
        // L(-1) a(-1)1 = a(-2)1
        let out = v.l_op(-1, &alpha(1, 1)).unwrap();
        assert_eq!(out, alpha(1, 2));
    }

    #[test]
    fn virasoro_central_term_on_vacuum() {
        for d in 1..=3u32 {
            let v = Voa::heisenberg(d);
            let one = GradedElement::one();
            // [L(2), L(-2)] 1 = L(2) L(-2) 1 = (d/2) 1
            let lm2 = v.l_op(-2, &one).unwrap();
            assert_eq!(lm2, v.omega().clone());
            let lhs = v.l_op(2, &lm2).unwrap();
            assert_eq!(lhs, one.scaled(&rat(d as i64, 2)));
        }
    }

    #[test]
    fn heisenberg_bracket_identity() {
        let v = Voa::heisenberg(2);
        for m in 1..=5i64 {
            for n in 1..=5i64 {
                for w in 0..=4u32 {
                    for mono in v.basis(w) {
                        let e = GradedElement::from_monomial(mono);
                        let created = v.alpha_mode(2, -n, &e).unwrap();
                        let ab = v.alpha_mode(1, m, &created).unwrap();
                        let killed = v.alpha_mode(1, m, &e).unwrap();
                        let ba = v.alpha_mode(2, -n, &killed).unwrap();
                        let diff = &ab - &ba;
                        // different generators always commute
                        assert!(diff.is_zero(), "m={m} n={n}");
                        let created = v.alpha_mode(1, -n, &e).unwrap();
                        let ab = v.alpha_mode(1, m, &created).unwrap();
                        let ba = v.alpha_mode(1, -n, &killed).unwrap();
                        let diff = &ab - &ba;
                        let expect = if m == n {
                            e.scaled(&rat_int(m))
                        } else {
                            GradedElement::zero()
                        };
                        assert_eq!(diff, expect, "m={m} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn grading_law_on_box() {
        let v = Voa::heisenberg(1);
        for wu in 0..=4u32 {
            for mu in v.basis(wu) {
                let u = GradedElement::from_monomial(mu);
                for n in -4..=4i64 {
                    for wv in 0..=5u32 {
                        for mv in v.basis(wv) {
                            let out = v
                                .vertex_mode(&u, n, &GradedElement::from_monomial(mv))
                                .unwrap();
                            let expect = wu as i64 - n - 1 + wv as i64;
                            for (mono, _) in out.iter() {
                                assert_eq!(mono.weight() as i64, expect);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn modes_vanish_above_weight_bound() {
        let v = Voa::heisenberg(2);
        for wu in 0..=3u32 {
            for mu in v.basis(wu) {
                let u = GradedElement::from_monomial(mu);
                for wv in 0..=3u32 {
                    for mv in v.basis(wv) {
                        let e = GradedElement::from_monomial(mv);
                        let bound = wu as i64 - 1 + wv as i64;
                        for extra in 1..=2 {
                            assert!(v.vertex_mode(&u, bound + extra, &e).unwrap().is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mode_matrix_examples() {
        let v = Voa::heisenberg(1);
        // u = a(-1)1, n = 1, from weight 1: the 1x1 matrix [1]
        let m = v.mode_matrix(&alpha(1, 1), 1, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(*m.get(0, 0), rat_int(1));
        // vacuum at n = -1: identity
        let m = v.mode_matrix(&GradedElement::one(), -1, 2).unwrap();
        assert!(m.is_identity());
        // target weight negative: the 0 map
        let m = v.mode_matrix(&alpha(1, 1), 5, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 2));
        // non-homogeneous u rejected
        let mut bad = alpha(1, 1);
        bad.add_assign(&alpha(1, 2));
        assert!(matches!(
            v.mode_matrix(&bad, 0, 1),
            Err(VoakError::NonHomogeneous)
        ));
    }

    #[test]
    fn skew_symmetry_identity() {
        // u_n v = sum_{j>=0} (-1)^{n+j+1} / j!  L(-1)^j (v_{n+j} u),
        // a different route through the evaluator than the defining
        // recursion
        let v = Voa::heisenberg(1);
        for wu in 0..=3u32 {
            for mu in v.basis(wu) {
                let u = GradedElement::from_monomial(mu);
                for wv in 0..=3u32 {
                    for mv in v.basis(wv) {
                        let w = GradedElement::from_monomial(mv);
                        for n in -3i64..=3 {
                            let direct = v.vertex_mode(&u, n, &w).unwrap();
                            let mut skew = GradedElement::zero();
                            let mut j: i64 = 0;
                            let mut fact = rat_int(1);
                            loop {
                                let inner = v.vertex_mode(&w, n + j, &u).unwrap();
                                if inner.is_zero() && n + j > wv as i64 + wu as i64 {
                                    break;
                                }
                                let mut term = inner;
                                for _ in 0..j {
                                    term = v.l_op(-1, &term).unwrap();
                                }
                                let sign = if (n + j + 1).rem_euclid(2) == 0 {
                                    rat_int(1)
                                } else {
                                    rat_int(-1)
                                };
                                skew.add_scaled(&(&sign / &fact), &term);
                                j += 1;
                                fact *= rat_int(j);
                            }
                            assert_eq!(direct, skew, "u wt {wu}, v wt {wv}, n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn comm_assoc_complex_numbers() {
        let v = Voa::comm_assoc(CommAssocData::complex_numbers()).unwrap();
        assert_eq!(*v.central_charge(), rat_int(0));
        assert!(v.omega().is_zero());
        assert_eq!(v.dim(0), 1);
        assert_eq!(v.dim(1), 0);
        let one = GradedElement::one();
        assert_eq!(v.vertex_mode(&one, -1, &one).unwrap(), one);
        assert!(v.vertex_mode(&one, 0, &one).unwrap().is_zero());
    }

    #[test]
    fn comm_assoc_dual_numbers() {
        let v = Voa::comm_assoc(CommAssocData::dual_numbers()).unwrap();
        assert_eq!(v.dim(0), 2);
        let x = GradedElement::from_monomial(Monomial::point(2));
        // x * x = 0, 1 * x = x; only the -1 mode acts
        assert!(v.vertex_mode(&x, -1, &x).unwrap().is_zero());
        assert_eq!(v.vertex_mode(&GradedElement::one(), -1, &x).unwrap(), x);
        assert!(v.vertex_mode(&x, 0, &x).unwrap().is_zero());
        // all weights zero
        assert!(v.basis(0).iter().all(|m| m.weight() == 0));
    }

    #[test]
    fn comm_assoc_rejects_bad_tables() {
        // noncommutative table
        let bad = CommAssocData {
            dimension: 2,
            unit: 1,
            constants: vec![
                vec![
                    vec![rat_int(1), rat_int(0)],
                    vec![rat_int(0), rat_int(1)],
                ],
                vec![
                    vec![rat_int(1), rat_int(1)],
                    vec![rat_int(0), rat_int(0)],
                ],
            ],
        };
        assert!(matches!(
            Voa::comm_assoc(bad),
            Err(VoakError::InvalidStructure(_))
        ));
    }

    #[test]
    fn mixed_instance_rejected() {
        let h = Voa::heisenberg(1);
        let point = GradedElement::from_monomial(Monomial::point(1));
        assert!(matches!(
            h.vertex_mode(&point, -1, &GradedElement::one()),
            Err(VoakError::MixedInstance { .. })
        ));
        let c = Voa::comm_assoc(CommAssocData::complex_numbers()).unwrap();
        let fock = alpha(1, 1);
        assert!(matches!(
            c.vertex_mode(&fock, -1, &GradedElement::one()),
            Err(VoakError::MixedInstance { .. })
        ));
    }
}
