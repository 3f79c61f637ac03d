//! Machine verification of the defining identities on graded truncations.
//!
//! Every check quantifies over an explicit finite box (weights, mode
//! indices, exponent triples) and asserts exact equality of graded
//! elements. A pass is a proof for the checked box; a fail carries the
//! first counterexample found.

use serde::{Deserialize, Serialize};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::element::GradedElement;
use crate::error::Result;
use crate::monomial::Monomial;
use crate::rational::{binomial, rat, rat_int, sign_pow, Rational};
use crate::voa::Voa;

/// `(z_i - z_j)^exponent` expanded in nonnegative integral powers of the
/// second variable `z_j`:
/// `sum_{k>=0} (-1)^k C(exponent, k) z_i^{exponent-k} z_j^k`.
/// For `exponent >= 0` the expansion is finite; for negative exponents the
/// coefficients continue indefinitely and callers truncate by grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinomialExpansion {
    pub exponent: i64,
}

impl BinomialExpansion {
    pub fn new(exponent: i64) -> BinomialExpansion {
        BinomialExpansion { exponent }
    }

    /// Coefficient of `z_i^{exponent-k} z_j^k`.
    pub fn coeff(&self, k: u32) -> BigInt {
        let b = binomial(self.exponent, k);
        if k.is_multiple_of(2) {
            b
        } else {
            -b
        }
    }
}

/// Outcome of one axiom check on one instance and box.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub instance: String,
    pub params: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Counterexample {
    pub params: String,
    pub residual: GradedElement,
}

impl AxiomReport {
    fn pass(axiom: &str, voa: &Voa, params: String) -> AxiomReport {
        AxiomReport {
            axiom: axiom.into(),
            instance: voa.descriptor(),
            params,
            pass: true,
            counterexample: None,
        }
    }

    fn fail(axiom: &str, voa: &Voa, params: String, at: String, residual: GradedElement) -> AxiomReport {
        AxiomReport {
            axiom: axiom.into(),
            instance: voa.descriptor(),
            params,
            pass: false,
            counterexample: Some(Counterexample {
                params: at,
                residual,
            }),
        }
    }
}

fn basis_elements_through(voa: &Voa, wmax: u32) -> Vec<(Monomial, GradedElement)> {
    voa.basis_through(wmax)
        .into_iter()
        .map(|m| (m.clone(), GradedElement::from_monomial(m)))
        .collect()
}

/// Vacuum axiom `Y(1, z) = 1`: checks `1_n v = delta_{n,-1} v` for all basis
/// `v` of weight <= wmax and `n` in `[-wmax-2, wmax+2]`.
pub fn check_vacuum(voa: &Voa, wmax: u32) -> Result<AxiomReport> {
    let params = format!("wmax={wmax}, n in [{}, {}]", -(wmax as i64) - 2, wmax + 2);
    let one = GradedElement::one();
    for (mono, v) in basis_elements_through(voa, wmax) {
        for n in -(wmax as i64) - 2..=(wmax as i64) + 2 {
            let got = voa.vertex_mode(&one, n, &v)?;
            let want = if n == -1 { v.clone() } else { GradedElement::zero() };
            let residual = &got - &want;
            if !residual.is_zero() {
                return Ok(AxiomReport::fail(
                    "vacuum",
                    voa,
                    params,
                    format!("v={mono}, n={n}"),
                    residual,
                ));
            }
        }
    }
    Ok(AxiomReport::pass("vacuum", voa, params))
}

/// Creation axiom `Y(v,z)1 in V[[z]]`, `lim_{z->0} Y(v,z)1 = v`: checks
/// `v_n 1 = 0` for `0 <= n <= wt v + 2` (grading kills larger `n`) and
/// `v_{-1} 1 = v` for all basis `v` of weight <= wmax.
pub fn check_creation(voa: &Voa, wmax: u32) -> Result<AxiomReport> {
    let params = format!("wmax={wmax}");
    let one = GradedElement::one();
    for (mono, v) in basis_elements_through(voa, wmax) {
        let back = voa.vertex_mode(&v, -1, &one)?;
        let residual = &back - &v;
        if !residual.is_zero() {
            return Ok(AxiomReport::fail(
                "creation",
                voa,
                params,
                format!("v={mono}, n=-1"),
                residual,
            ));
        }
        for n in 0..=(mono.weight() as i64) + 2 {
            let got = voa.vertex_mode(&v, n, &one)?;
            if !got.is_zero() {
                return Ok(AxiomReport::fail(
                    "creation",
                    voa,
                    params,
                    format!("v={mono}, n={n}"),
                    got,
                ));
            }
        }
    }
    Ok(AxiomReport::pass("creation", voa, params))
}

/// Translation axiom `Y(L(-1)v, z) = d/dz Y(v, z)`: checks the coefficient
/// identity `(L(-1)v)_n = -n v_{n-1}` as operators on all basis elements of
/// weight <= wmax, for `n` in `nbox`.
pub fn check_translation(voa: &Voa, wmax: u32, nbox: (i64, i64)) -> Result<AxiomReport> {
    let params = format!("wmax={wmax}, n in [{}, {}]", nbox.0, nbox.1);
    for (mv, v) in basis_elements_through(voa, wmax) {
        let lv = voa.l_op(-1, &v)?;
        for (mw, w) in basis_elements_through(voa, wmax) {
            for n in nbox.0..=nbox.1 {
                let lhs = voa.vertex_mode(&lv, n, &w)?;
                let rhs = voa.vertex_mode(&v, n - 1, &w)?.scaled(&rat_int(-n));
                let residual = &lhs - &rhs;
                if !residual.is_zero() {
                    return Ok(AxiomReport::fail(
                        "translation",
                        voa,
                        params,
                        format!("v={mv}, w={mw}, n={n}"),
                        residual,
                    ));
                }
            }
        }
    }
    Ok(AxiomReport::pass("translation", voa, params))
}

/// Locality: finds the least `n <= nmax` with
/// `(z1-z2)^n [Y(u,z1), Y(v,z2)] = 0` on the box, i.e.
/// `sum_k (-1)^k C(n,k) [u_{a+n-k}, v_{b+k}] w = 0` for all basis `w` of
/// weight <= wmax and all mode offsets `(a, b)` that can produce a nonzero
/// target. Returns the minimal order along with the report.
pub fn check_locality(
    voa: &Voa,
    u: &GradedElement,
    v: &GradedElement,
    wmax: u32,
    nmax: u32,
) -> Result<(Option<u32>, AxiomReport)> {
    let params = format!("wmax={wmax}, nmax={nmax}");
    let wu = u.max_weight().unwrap_or(0) as i64;
    let wv = v.max_weight().unwrap_or(0) as i64;
    let span = wmax as i64 + wu + wv + 2;
    for n in 0..=nmax {
        let mut ok = true;
        let mut witness: Option<(String, GradedElement)> = None;
        'outer: for (mw, w) in basis_elements_through(voa, wmax) {
            for a in -span..=span {
                for b in -span..=span {
                    let mut acc = GradedElement::zero();
                    let exp = BinomialExpansion::new(n as i64);
                    for k in 0..=n {
                        let c = Rational::from_integer(exp.coeff(k));
                        if c.is_zero() {
                            continue;
                        }
                        let m1 = a + n as i64 - k as i64;
                        let m2 = b + k as i64;
                        let uv = voa.vertex_mode(u, m1, &voa.vertex_mode(v, m2, &w)?)?;
                        let vu = voa.vertex_mode(v, m2, &voa.vertex_mode(u, m1, &w)?)?;
                        acc.add_scaled(&c, &(&uv - &vu));
                    }
                    if !acc.is_zero() {
                        ok = false;
                        witness = Some((format!("w={mw}, a={a}, b={b}, order={n}"), acc));
                        break 'outer;
                    }
                }
            }
        }
        if ok {
            return Ok((
                Some(n),
                AxiomReport::pass("locality", voa, format!("{params}, minimal order={n}")),
            ));
        }
        if n == nmax {
            let (at, residual) = witness.unwrap();
            return Ok((
                None,
                AxiomReport::fail("locality", voa, params, at, residual),
            ));
        }
    }
    unreachable!("loop returns at n = nmax");
}

/// The Jacobi identity, checked coefficientwise: for each `(a, b, c)` in the
/// box, the coefficient of `z0^a z1^b z2^c` of both sides applied to `w`
/// must agree exactly. Binomials `(z_i - z_j)^n` are expanded in
/// nonnegative powers of the second variable.
pub fn check_jacobi(
    voa: &Voa,
    u: &GradedElement,
    v: &GradedElement,
    w: &GradedElement,
    box3: &[(i64, i64, i64)],
) -> Result<AxiomReport> {
    let params = format!("box of {} exponent triples", box3.len());
    for &(a, b, c) in box3 {
        let lhs = jacobi_lhs(voa, u, v, w, a, b, c)?;
        let rhs = jacobi_rhs(voa, u, v, w, a, b, c)?;
        let residual = &lhs - &rhs;
        if !residual.is_zero() {
            return Ok(AxiomReport::fail(
                "jacobi",
                voa,
                params,
                format!("(a,b,c)=({a},{b},{c})"),
                residual,
            ));
        }
    }
    Ok(AxiomReport::pass("jacobi", voa, params))
}

/// Coefficient of `z0^a z1^b z2^c` in
/// `z0^{-1} d((z1-z2)/z0) Y(u,z1) Y(v,z2) w
///  - z0^{-1} d((z2-z1)/-z0) Y(v,z2) Y(u,z1) w`.
fn jacobi_lhs(
    voa: &Voa,
    u: &GradedElement,
    v: &GradedElement,
    w: &GradedElement,
    a: i64,
    b: i64,
    c: i64,
) -> Result<GradedElement> {
    let mut acc = GradedElement::zero();
    let exp = BinomialExpansion::new(-a - 1);
    let wv = v.max_weight().unwrap_or(0) as i64;
    let wu = u.max_weight().unwrap_or(0) as i64;
    let ww = w.max_weight().unwrap_or(0) as i64;

    // first delta term: sum_{k>=0} (-1)^k C(-a-1, k) u_{-a-b-2-k} v_{k-c-1} w
    let kmax1 = wv + ww + c; // v_{k-c-1} w = 0 beyond this
    for k in 0..=kmax1.max(-1) {
        let coeff = Rational::from_integer(exp.coeff(k as u32));
        if coeff.is_zero() {
            continue;
        }
        let inner = voa.vertex_mode(v, k - c - 1, w)?;
        if inner.is_zero() {
            continue;
        }
        let outer = voa.vertex_mode(u, -a - b - 2 - k, &inner)?;
        acc.add_scaled(&coeff, &outer);
    }

    // second delta term, global sign (-1)^a:
    // sum_{k>=0} (-1)^k C(-a-1, k) v_{-a-c-2-k} u_{k-b-1} w
    let outer_sign = sign_pow(a.rem_euclid(2) as u32);
    let kmax2 = wu + ww + b;
    for k in 0..=kmax2.max(-1) {
        let coeff = Rational::from_integer(exp.coeff(k as u32));
        if coeff.is_zero() {
            continue;
        }
        let inner = voa.vertex_mode(u, k - b - 1, w)?;
        if inner.is_zero() {
            continue;
        }
        let outer = voa.vertex_mode(v, -a - c - 2 - k, &inner)?;
        acc.add_scaled(&(&coeff * &outer_sign), &outer);
    }
    Ok(acc)
}

/// Coefficient of `z0^a z1^b z2^c` in
/// `z2^{-1} d((z1-z0)/z2) Y(Y(u,z0)v, z2) w`:
/// `sum_{k>=0} (-1)^k C(b+k, k) (u_{k-a-1} v)_{-b-c-2-k} w`.
fn jacobi_rhs(
    voa: &Voa,
    u: &GradedElement,
    v: &GradedElement,
    w: &GradedElement,
    a: i64,
    b: i64,
    c: i64,
) -> Result<GradedElement> {
    let mut acc = GradedElement::zero();
    let wu = u.max_weight().unwrap_or(0) as i64;
    let wv = v.max_weight().unwrap_or(0) as i64;
    let kmax = wu + wv + a; // u_{k-a-1} v = 0 beyond this
    for k in 0..=kmax.max(-1) {
        let c_binom = binomial(b + k, k as u32);
        if c_binom.is_zero() {
            continue;
        }
        let coeff = &Rational::from_integer(c_binom) * &sign_pow(k.rem_euclid(2) as u32);
        let prod = voa.vertex_mode(u, k - a - 1, v)?;
        if prod.is_zero() {
            continue;
        }
        let outer = voa.vertex_mode(&prod, -b - c - 2 - k, w)?;
        acc.add_scaled(&coeff, &outer);
    }
    Ok(acc)
}

/// The Jacobi identity for a module action, checked coefficientwise like
/// [`check_jacobi`] but with the modes acting through the module (this is
/// how the contragredient and sum constructions are certified to be
/// modules on a truncation). `u, v` homogeneous; the module must have all
/// intermediate weights materialized.
pub fn check_jacobi_module(
    m: &crate::module::VModule,
    u: &GradedElement,
    v: &GradedElement,
    w: &crate::module::ModuleElement,
    box3: &[(i64, i64, i64)],
) -> Result<AxiomReport> {
    use crate::module::ModuleElement;

    let voa = m.voa().clone();
    let wu = u.homogeneous_weight().map(i64::from).unwrap_or(0);
    let wv = v.homogeneous_weight().map(i64::from).unwrap_or(0);
    let lmax = w.components.keys().max().copied().unwrap_or(0) as i64;
    let params = format!("module, box of {} exponent triples", box3.len());

    for &(a, b, c) in box3 {
        let exp = BinomialExpansion::new(-a - 1);
        let mut lhs = ModuleElement::zero();
        // first term: u_{-a-b-2-k} v_{k-c-1} w
        for k in 0..=(wv + lmax + c).max(-1) {
            let coeff = Rational::from_integer(exp.coeff(k as u32));
            if coeff.is_zero() {
                continue;
            }
            let inner = m.apply_mode(v, k - c - 1, w)?;
            if inner.is_zero() {
                continue;
            }
            let outer = m.apply_mode(u, -a - b - 2 - k, &inner)?;
            lhs.add_scaled(&coeff, &outer);
        }
        // second term with global sign (-1)^a: v_{-a-c-2-k} u_{k-b-1} w
        let outer_sign = sign_pow(a.rem_euclid(2) as u32);
        for k in 0..=(wu + lmax + b).max(-1) {
            let coeff = Rational::from_integer(exp.coeff(k as u32));
            if coeff.is_zero() {
                continue;
            }
            let inner = m.apply_mode(u, k - b - 1, w)?;
            if inner.is_zero() {
                continue;
            }
            let outer = m.apply_mode(v, -a - c - 2 - k, &inner)?;
            lhs.add_scaled(&(&coeff * &outer_sign), &outer);
        }
        // right side: (u_{k-a-1} v)_{-b-c-2-k} w
        let mut rhs = ModuleElement::zero();
        for k in 0..=(wu + wv + a).max(-1) {
            let c_binom = binomial(b + k, k as u32);
            if c_binom.is_zero() {
                continue;
            }
            let coeff = &Rational::from_integer(c_binom) * &sign_pow(k.rem_euclid(2) as u32);
            let prod = voa.vertex_mode(u, k - a - 1, v)?;
            if prod.is_zero() {
                continue;
            }
            let outer = m.apply_mode(&prod, -b - c - 2 - k, w)?;
            rhs.add_scaled(&coeff, &outer);
        }
        let mut residual = lhs;
        residual.add_scaled(&rat_int(-1), &rhs);
        if !residual.is_zero() {
            return Ok(AxiomReport {
                axiom: "jacobi-module".into(),
                instance: m.descriptor(),
                params,
                pass: false,
                counterexample: Some(Counterexample {
                    params: format!("(a,b,c)=({a},{b},{c})"),
                    residual: GradedElement::zero(),
                }),
            });
        }
    }
    Ok(AxiomReport {
        axiom: "jacobi-module".into(),
        instance: m.descriptor(),
        params,
        pass: true,
        counterexample: None,
    })
}

/// The cube `[-r, r]^3` of exponent triples.
pub fn cube_box(r: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// Virasoro relation: `[L(m), L(n)] v = (m-n) L(m+n) v +
/// (1/12)(m^3 - m) delta_{m+n,0} (central charge) v` over the box.
pub fn check_virasoro(voa: &Voa, mbox: (i64, i64), wmax: u32) -> Result<AxiomReport> {
    let params = format!("m,n in [{}, {}], wmax={wmax}", mbox.0, mbox.1);
    for (mono, v) in basis_elements_through(voa, wmax) {
        for m in mbox.0..=mbox.1 {
            for n in mbox.0..=mbox.1 {
                let lm_ln = voa.l_op(m, &voa.l_op(n, &v)?)?;
                let ln_lm = voa.l_op(n, &voa.l_op(m, &v)?)?;
                let mut rhs = voa.l_op(m + n, &v)?.scaled(&rat_int(m - n));
                if m + n == 0 {
                    let central = rat(m * m * m - m, 12) * voa.central_charge();
                    rhs.add_scaled(&central, &v);
                }
                let residual = &(&lm_ln - &ln_lm) - &rhs;
                if !residual.is_zero() {
                    return Ok(AxiomReport::fail(
                        "virasoro",
                        voa,
                        params,
                        format!("v={mono}, m={m}, n={n}"),
                        residual,
                    ));
                }
            }
        }
    }
    Ok(AxiomReport::pass("virasoro", voa, params))
}

/// Grading law: every monomial of `u_m v` has weight
/// `wt u - m - 1 + wt v`, over homogeneous basis `u, v` and `m` in `nbox`.
pub fn check_grading(voa: &Voa, wmax: u32, nbox: (i64, i64)) -> Result<AxiomReport> {
    let params = format!("wmax={wmax}, n in [{}, {}]", nbox.0, nbox.1);
    for (mu, u) in basis_elements_through(voa, wmax) {
        for (mv, v) in basis_elements_through(voa, wmax) {
            for m in nbox.0..=nbox.1 {
                let out = voa.vertex_mode(&u, m, &v)?;
                let expect = mu.weight() as i64 - m - 1 + mv.weight() as i64;
                for (mono, coeff) in out.iter() {
                    if mono.weight() as i64 != expect {
                        return Ok(AxiomReport::fail(
                            "grading",
                            voa,
                            params,
                            format!("u={mu}, v={mv}, n={m}"),
                            GradedElement::from_term(mono.clone(), coeff.clone()),
                        ));
                    }
                }
            }
        }
    }
    Ok(AxiomReport::pass("grading", voa, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::voa::Corruption;

    fn alpha1() -> GradedElement {
        GradedElement::from_monomial(Monomial::single(1, 1))
    }

    #[test]
    fn vacuum_axiom_holds_and_corruption_fails() {
        let v = Voa::heisenberg(1);
        assert!(check_vacuum(&v, 4).unwrap().pass);
        let c = Voa::comm_assoc(crate::voa::CommAssocData::complex_numbers()).unwrap();
        assert!(check_vacuum(&c, 2).unwrap().pass);
        let bad = Voa::heisenberg(1).corrupted(Corruption::ShiftModes);
        let report = check_vacuum(&bad, 3).unwrap();
        assert!(!report.pass);
        assert!(report.counterexample.is_some());
    }

    #[test]
    fn creation_axiom() {
        let v = Voa::heisenberg(1);
        assert!(check_creation(&v, 4).unwrap().pass);
        let v2 = Voa::heisenberg(2);
        assert!(check_creation(&v2, 5).unwrap().pass);
        // omega itself: omega_{-1} 1 = omega, omega_n 1 = 0 for n >= 0
        let one = GradedElement::one();
        assert_eq!(v.vertex_mode(v.omega(), -1, &one).unwrap(), *v.omega());
        for n in 0..=4 {
            assert!(v.vertex_mode(v.omega(), n, &one).unwrap().is_zero());
        }
        let bad = Voa::heisenberg(1).corrupted(Corruption::ShiftModes);
        assert!(!check_creation(&bad, 3).unwrap().pass);
    }

    #[test]
    fn translation_axiom() {
        let v = Voa::heisenberg(1);
        assert!(check_translation(&v, 4, (-4, 4)).unwrap().pass);
        let bad = Voa::heisenberg(1).corrupted(Corruption::ShiftModes);
        assert!(!check_translation(&bad, 3, (-2, 2)).unwrap().pass);
    }

    #[test]
    fn locality_minimal_orders() {
        let v = Voa::heisenberg(1);
        let (n, rep) = check_locality(&v, &alpha1(), &alpha1(), 3, 4).unwrap();
        assert!(rep.pass);
        assert_eq!(n, Some(2));
        let om = v.omega().clone();
        let (n, _) = check_locality(&v, &om, &om, 3, 5).unwrap();
        assert_eq!(n, Some(4));
        let (n, _) = check_locality(&v, &GradedElement::one(), &alpha1(), 3, 3).unwrap();
        assert_eq!(n, Some(0));
    }

    #[test]
    fn distinct_generators_commute_on_the_nose() {
        // orthogonal generators have vanishing bracket, so locality holds
        // already at order 0
        let v = Voa::heisenberg(2);
        let a1 = GradedElement::from_monomial(Monomial::single(1, 1));
        let a2 = GradedElement::from_monomial(Monomial::single(2, 1));
        let (n, rep) = check_locality(&v, &a1, &a2, 2, 2).unwrap();
        assert!(rep.pass);
        assert_eq!(n, Some(0));
    }

    #[test]
    fn locality_corruption_destroys_locality() {
        // the corrupted bracket [a(m), a(-m)] = m|m| is odd and
        // non-polynomial in m, so no power of (z1 - z2) kills the
        // commutator: the check fails at every order
        let bad = Voa::heisenberg(1).corrupted(Corruption::QuadraticBracket);
        for nmax in [2u32, 4] {
            let (n, rep) = check_locality(&bad, &alpha1(), &alpha1(), 2, nmax).unwrap();
            assert_eq!(n, None);
            assert!(!rep.pass);
            assert!(rep.counterexample.is_some());
        }
    }

    #[test]
    fn locality_monotone_in_order() {
        // if order n kills the commutator then so does n+1: orders 2..4 all
        // pass for the alpha field once 2 does
        let v = Voa::heisenberg(1);
        for nmax in 2..=4u32 {
            let mut found = None;
            for n in nmax..=nmax {
                let span = 2i64 + 1 + 1 + 2;
                let mut all_ok = true;
                for w in 0..=2u32 {
                    for mw in v.basis(w) {
                        let we = GradedElement::from_monomial(mw);
                        for a in -span..=span {
                            for b in -span..=span {
                                let mut acc = GradedElement::zero();
                                for k in 0..=n {
                                    let c = Rational::from_integer(
                                        BinomialExpansion::new(n as i64).coeff(k),
                                    );
                                    let m1 = a + n as i64 - k as i64;
                                    let m2 = b + k as i64;
                                    let uv = v
                                        .vertex_mode(
                                            &alpha1(),
                                            m1,
                                            &v.vertex_mode(&alpha1(), m2, &we).unwrap(),
                                        )
                                        .unwrap();
                                    let vu = v
                                        .vertex_mode(
                                            &alpha1(),
                                            m2,
                                            &v.vertex_mode(&alpha1(), m1, &we).unwrap(),
                                        )
                                        .unwrap();
                                    acc.add_scaled(&c, &(&uv - &vu));
                                }
                                all_ok &= acc.is_zero();
                            }
                        }
                    }
                }
                if all_ok {
                    found = Some(n);
                }
            }
            assert_eq!(found, Some(nmax), "order {nmax} must also annihilate");
        }
    }

    #[test]
    fn jacobi_on_boxes() {
        let v = Voa::heisenberg(1);
        let one = GradedElement::one();
        // u = vacuum: trivial for any box
        let rep = check_jacobi(&v, &one, &alpha1(), &alpha1(), &cube_box(2)).unwrap();
        assert!(rep.pass);
        // u = v = a(-1)1, w = 1
        let rep = check_jacobi(&v, &alpha1(), &alpha1(), &one, &cube_box(3)).unwrap();
        assert!(rep.pass);
        // u = omega, v = w = a(-1)1
        let om = v.omega().clone();
        let rep = check_jacobi(&v, &om, &alpha1(), &alpha1(), &cube_box(2)).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn jacobi_fails_on_corrupted_rule() {
        let bad = Voa::heisenberg(1).corrupted(Corruption::ShiftModes);
        let rep =
            check_jacobi(&bad, &alpha1(), &alpha1(), &GradedElement::one(), &cube_box(2)).unwrap();
        assert!(!rep.pass);
    }

    #[test]
    fn jacobi_holds_on_modules() {
        use crate::module::{ModuleElement, VModule};

        let v = Voa::heisenberg(1);
        let adj = VModule::adjoint(&v);
        let om = v.omega().clone();
        let box3 = cube_box(2);
        // adjoint module, lowest-weight vector and a weight-2 vector
        for w in [
            ModuleElement::single(0, 1, 0),
            ModuleElement::single(2, 2, 1),
        ] {
            let rep = check_jacobi_module(&adj, &alpha1(), &alpha1(), &w, &box3).unwrap();
            assert!(rep.pass);
            let rep = check_jacobi_module(&adj, &om, &alpha1(), &w, &box3).unwrap();
            assert!(rep.pass);
        }
        // the contragredient is a module on the truncation; the window must
        // cover every weight the box can reach
        let dual = adj.contragredient(14);
        for w in [
            ModuleElement::single(0, 1, 0),
            ModuleElement::single(2, 2, 0),
        ] {
            let rep = check_jacobi_module(&dual, &alpha1(), &alpha1(), &w, &box3).unwrap();
            assert!(rep.pass, "contragredient jacobi");
            let rep = check_jacobi_module(&dual, &om, &alpha1(), &w, &box3).unwrap();
            assert!(rep.pass, "contragredient jacobi with omega");
        }
        // direct sums act blockwise
        let sum = VModule::direct_sum(&adj, &adj).unwrap();
        let w = ModuleElement::single(1, 2, 1);
        let rep = check_jacobi_module(&sum, &alpha1(), &om, &w, &box3).unwrap();
        assert!(rep.pass);
        // a corrupted rule leaks weight, which the graded mode matrices
        // reject outright
        let bad = Voa::heisenberg(1).corrupted(Corruption::ShiftModes);
        let bad_adj = VModule::adjoint(&bad);
        let w = ModuleElement::single(0, 1, 0);
        assert!(check_jacobi_module(&bad_adj, &alpha1(), &alpha1(), &w, &box3).is_err());
    }

    #[test]
    fn virasoro_examples() {
        let v = Voa::heisenberg(1);
        // m=1, n=-1 on vacuum: 2 L(0) 1 = 0
        let one = GradedElement::one();
        let l = v.l_op(1, &v.l_op(-1, &one).unwrap()).unwrap();
        let r = v.l_op(-1, &v.l_op(1, &one).unwrap()).unwrap();
        assert!((&l - &r).is_zero());
        // m=2, n=-2 on vacuum: (1/12)(8-2) = 1/2
        let l = v.l_op(2, &v.l_op(-2, &one).unwrap()).unwrap();
        assert_eq!(l, one.scaled(&rat(1, 2)));
        assert!(check_virasoro(&v, (-3, 3), 4).unwrap().pass);
        let v2 = Voa::heisenberg(2);
        assert!(check_virasoro(&v2, (-2, 2), 3).unwrap().pass);
        let bad = Voa::heisenberg(1).corrupted(Corruption::QuadraticBracket);
        assert!(!check_virasoro(&bad, (-2, 2), 2).unwrap().pass);
    }

    #[test]
    fn grading_pass_and_corruption() {
        let v = Voa::heisenberg(1);
        assert!(check_grading(&v, 3, (-3, 3)).unwrap().pass);
        let c = Voa::comm_assoc(crate::voa::CommAssocData::dual_numbers()).unwrap();
        assert!(check_grading(&c, 2, (-2, 2)).unwrap().pass);
        let bad = Voa::heisenberg(1).corrupted(Corruption::ShiftModes);
        assert!(!check_grading(&bad, 2, (-2, 2)).unwrap().pass);
    }

    #[test]
    fn commutative_instance_passes_all() {
        let c = Voa::comm_assoc(crate::voa::CommAssocData::dual_numbers()).unwrap();
        assert!(check_vacuum(&c, 2).unwrap().pass);
        assert!(check_creation(&c, 2).unwrap().pass);
        assert!(check_translation(&c, 2, (-3, 3)).unwrap().pass);
        assert!(check_virasoro(&c, (-2, 2), 2).unwrap().pass);
        let x = GradedElement::from_monomial(Monomial::point(2));
        let (n, _) = check_locality(&c, &x, &x, 0, 2).unwrap();
        assert_eq!(n, Some(0));
        let rep = check_jacobi(&c, &x, &x, &GradedElement::one(), &cube_box(2)).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn report_serializes() {
        let v = Voa::heisenberg(1);
        let rep = check_vacuum(&v, 2).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"axiom\":\"vacuum\""));
        assert!(json.contains("\"pass\":true"));
        let back: AxiomReport = serde_json::from_str(&json).unwrap();
        assert!(back.pass);
    }
}
