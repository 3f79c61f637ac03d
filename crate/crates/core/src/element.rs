//! Sparse exact-rational linear combinations of basis monomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::monomial::Monomial;
use crate::rational::{format_rational, Rational};

/// A finite linear combination of [`Monomial`]s with nonzero exact-rational
/// coefficients. Zero coefficients are never stored, so structural equality
/// is semantic equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GradedElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedElement {
    pub fn zero() -> GradedElement {
        GradedElement {
            terms: BTreeMap::new(),
        }
    }

    /// The vacuum with coefficient 1.
    pub fn one() -> GradedElement {
        GradedElement::from_term(Monomial::vacuum(), Rational::from_integer(1.into()))
    }

    pub fn from_term(mono: Monomial, coeff: Rational) -> GradedElement {
        let mut e = GradedElement::zero();
        e.add_term(mono, coeff);
        e
    }

    pub fn from_monomial(mono: Monomial) -> GradedElement {
        GradedElement::from_term(mono, Rational::from_integer(1.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * mono`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &GradedElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &GradedElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }

    pub fn add_scaled(&mut self, scale: &Rational, other: &GradedElement) {
        if scale.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), scale * c);
        }
    }

    pub fn scaled(&self, scale: &Rational) -> GradedElement {
        if scale.is_zero() {
            return GradedElement::zero();
        }
        GradedElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), scale * c))
                .collect(),
        }
    }

    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Smallest monomial in the canonical order.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next()
    }

    /// Largest monomial in the canonical order (the echelon pivot column:
    /// pivoting on the largest keeps the canonical-order-first monomials
    /// free for coset bases).
    pub fn trailing_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// True when every monomial has the same weight.
    pub fn is_homogeneous(&self) -> bool {
        let mut ws = self.terms.keys().map(|m| m.weight());
        match ws.next() {
            None => true,
            Some(w0) => ws.all(|w| w == w0),
        }
    }

    /// `wt v` of a nonzero homogeneous element.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let w0 = self.terms.keys().next()?.weight();
        if self.terms.keys().all(|m| m.weight() == w0) {
            Some(w0)
        } else {
            None
        }
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.weight()).max()
    }

    /// The weight-`w` homogeneous component.
    pub fn component(&self, w: u32) -> GradedElement {
        GradedElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into homogeneous components keyed by weight.
    pub fn components(&self) -> BTreeMap<u32, GradedElement> {
        let mut out: BTreeMap<u32, GradedElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight())
                .or_insert_with(GradedElement::zero)
                .add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add<&GradedElement> for &GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub<&GradedElement> for &GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        GradedElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul<&Rational> for &GradedElement {
    type Output = GradedElement;
    fn mul(self, rhs: &Rational) -> GradedElement {
        self.scaled(rhs)
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", format_rational(c), m)?;
        }
        Ok(())
    }
}
