//! Serde glue pinning the wire formats:
//!
//! - rationals as strings `"p/q"` (or `"p"` when the denominator is one),
//!   never as decimals;
//! - monomials as lists of `[i, n]` pairs in canonical order;
//! - graded elements as lists of `{"mono": ..., "coeff": ...}` sorted by the
//!   canonical monomial order;
//! - matrices as row-major nested arrays of rational strings.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::element::GradedElement;
use crate::linalg::Matrix;
use crate::monomial::{Factor, Monomial};
use crate::rational::{format_rational, parse_rational, Rational};

pub fn rat_to_string<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn rat_from_string<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let raw = String::deserialize(d)?;
    parse_rational(&raw).map_err(D::Error::custom)
}

pub fn rat_vec_to_strings<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let strs: Vec<String> = v.iter().map(format_rational).collect();
    strs.serialize(s)
}

pub fn rat_vec_from_strings<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
    let raw: Vec<String> = Vec::deserialize(d)?;
    raw.iter()
        .map(|s| parse_rational(s).map_err(D::Error::custom))
        .collect()
}

pub fn rat_tensor3_to_strings<S: Serializer>(
    v: &[Vec<Vec<Rational>>],
    s: S,
) -> Result<S::Ok, S::Error> {
    let strs: Vec<Vec<Vec<String>>> = v
        .iter()
        .map(|p| p.iter().map(|q| q.iter().map(format_rational).collect()).collect())
        .collect();
    strs.serialize(s)
}

pub fn rat_tensor3_from_strings<'de, D: Deserializer<'de>>(
    d: D,
) -> Result<Vec<Vec<Vec<Rational>>>, D::Error> {
    let raw: Vec<Vec<Vec<String>>> = Vec::deserialize(d)?;
    raw.into_iter()
        .map(|p| {
            p.into_iter()
                .map(|q| {
                    q.into_iter()
                        .map(|s| parse_rational(&s).map_err(D::Error::custom))
                        .collect()
                })
                .collect()
        })
        .collect()
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[u32; 2]> = self.factors().iter().map(|f| [f.gen, f.depth]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Monomial, D::Error> {
        let pairs: Vec<[u32; 2]> = Vec::deserialize(d)?;
        Ok(Monomial::from_factors(
            pairs
                .into_iter()
                .map(|[gen, depth]| Factor { gen, depth })
                .collect(),
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    mono: Monomial,
    coeff: String,
}

impl Serialize for GradedElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // BTreeMap iteration order is the canonical monomial order
        let terms: Vec<TermRepr> = self
            .iter()
            .map(|(m, c)| TermRepr {
                mono: m.clone(),
                coeff: format_rational(c),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<GradedElement, D::Error> {
        let terms: Vec<TermRepr> = Vec::deserialize(d)?;
        let mut e = GradedElement::zero();
        for t in terms {
            let c = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            e.add_term(t.mono, c);
        }
        Ok(e)
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows())
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Matrix, D::Error> {
        let raw: Vec<Vec<String>> = Vec::deserialize(d)?;
        let cols = raw.first().map_or(0, |r| r.len());
        if raw.iter().any(|r| r.len() != cols) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        let mut rows = Vec::with_capacity(raw.len());
        for r in raw {
            let mut row = Vec::with_capacity(cols);
            for s in r {
                row.push(parse_rational(&s).map_err(D::Error::custom)?);
            }
            rows.push(row);
        }
        Ok(Matrix::from_rows(rows))
    }
}
