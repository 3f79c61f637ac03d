//! Exact linear algebra over the rationals: reduced-echelon subspaces keyed
//! by canonical monomials, and a small dense matrix type for mode matrices,
//! transition blocks and kernel computations.

use num_traits::{One, Zero};

use crate::element::GradedElement;
use crate::error::{Result, VoakError};
use crate::monomial::Monomial;
use crate::rational::Rational;

/// A subspace of the monomial span in reduced row-echelon form.
///
/// Each basis row has coefficient 1 on its pivot monomial (the largest
/// monomial of the row in the canonical order, so complements keep the
/// canonical-order-first monomials), pivots are strictly increasing across
/// rows, and no row has a nonzero entry at another row's pivot.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Subspace {
    rows: Vec<EchelonRow>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct EchelonRow {
    pivot: Monomial,
    elem: GradedElement,
}

impl Subspace {
    pub fn empty() -> Subspace {
        Subspace { rows: Vec::new() }
    }

    /// Span of the given elements, echelonized. Idempotent: echelonizing the
    /// resulting basis reproduces it byte for byte.
    pub fn echelonize<I>(vs: I) -> Subspace
    where
        I: IntoIterator<Item = GradedElement>,
    {
        let mut s = Subspace::empty();
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<GradedElement> {
        self.rows.iter().map(|r| r.elem.clone()).collect()
    }

    pub fn pivots(&self) -> Vec<Monomial> {
        self.rows.iter().map(|r| r.pivot.clone()).collect()
    }

    pub fn is_pivot(&self, m: &Monomial) -> bool {
        self.rows.binary_search_by(|r| r.pivot.cmp(m)).is_ok()
    }

    /// Fully reduces `v` modulo the span: the result has no support on any
    /// pivot monomial, and is zero iff `v` is in the span.
    pub fn reduce(&self, v: &GradedElement) -> GradedElement {
        let mut w = v.clone();
        for row in &self.rows {
            let c = w.coeff(&row.pivot);
            if !c.is_zero() {
                w.add_scaled(&(-c), &row.elem);
            }
        }
        w
    }

    /// Inserts `v`, returning true when the dimension grew.
    pub fn insert(&mut self, v: GradedElement) -> bool {
        let mut w = self.reduce(&v);
        let pivot = match w.trailing_monomial() {
            None => return false,
            Some(p) => p.clone(),
        };
        let lead = w.coeff(&pivot);
        w = w.scaled(&lead.recip());
        for row in self.rows.iter_mut() {
            let c = row.elem.coeff(&pivot);
            if !c.is_zero() {
                row.elem.add_scaled(&(-c), &w);
            }
        }
        let at = self
            .rows
            .partition_point(|r| r.pivot < pivot);
        self.rows.insert(at, EchelonRow { pivot, elem: w });
        true
    }

    /// True iff `v` lies in the span.
    pub fn contains(&self, v: &GradedElement) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of the coset `v + span(self)` in the complement basis of
    /// the subspace inside `span(ambient)`: the non-pivot ambient monomials,
    /// in ambient order. Errors when `v` (or the subspace itself) is not
    /// supported on the ambient monomials.
    pub fn quotient_coords(
        &self,
        ambient: &[Monomial],
        v: &GradedElement,
    ) -> Result<Vec<Rational>> {
        let ambient_set: std::collections::BTreeSet<&Monomial> = ambient.iter().collect();
        for (m, _) in v.iter() {
            if !ambient_set.contains(m) {
                return Err(VoakError::NotInAmbientSpan {
                    monomial: m.to_string(),
                });
            }
        }
        for row in &self.rows {
            for (m, _) in row.elem.iter() {
                if !ambient_set.contains(m) {
                    return Err(VoakError::NotInAmbientSpan {
                        monomial: m.to_string(),
                    });
                }
            }
        }
        let reduced = self.reduce(v);
        Ok(ambient
            .iter()
            .filter(|m| !self.is_pivot(m))
            .map(|m| reduced.coeff(m))
            .collect())
    }

    /// The complement basis used by [`Subspace::quotient_coords`].
    pub fn complement_basis(&self, ambient: &[Monomial]) -> Vec<Monomial> {
        ambient
            .iter()
            .filter(|m| !self.is_pivot(m))
            .cloned()
            .collect()
    }
}

/// Dense exact-rational matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Rational>(
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want_one = i == j;
                let x = self.get(i, j);
                if want_one && !x.is_one() {
                    return false;
                }
                if !want_one && !x.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scaled(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + &(a * b);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place Gauss-Jordan; returns the pivot column list.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).clone().recip();
            for j in 0..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row-echelon form with its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical (RREF) basis of the right kernel, one row per basis vector.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, Rational::one());
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, -r.get(pr, fc).clone());
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(VoakError::NonInvertible);
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let pivots = aug.rref_in_place();
        if pivots != (0..n).collect::<Vec<_>>() {
            return Err(VoakError::NonInvertible);
        }
        Ok(Matrix::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// Determinant by fraction-free-ish Gaussian elimination.
    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(VoakError::ShapeMismatch("det of non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            let inv = piv.recip();
            for i in (c + 1)..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Stacks matrices vertically.
    pub fn vstack(parts: &[Matrix]) -> Matrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        assert!(parts.iter().all(|m| m.cols == cols));
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            data.extend(m.data.iter().cloned());
        }
        Matrix { rows, cols, data }
    }

    /// Stacks matrices horizontally.
    pub fn hstack(parts: &[Matrix]) -> Matrix {
        let rows = parts.first().map_or(0, |m| m.rows);
        assert!(parts.iter().all(|m| m.rows == rows));
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut off = 0;
        for m in parts {
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j).clone());
                }
            }
            off += m.cols;
        }
        out
    }

    /// Block-diagonal assembly.
    pub fn block_diag(parts: &[Matrix]) -> Matrix {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(ro + i, co + j, m.get(i, j).clone());
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        out.set(
                            i * other.rows + p,
                            j * other.cols + q,
                            a * other.get(p, q),
                        );
                    }
                }
            }
        }
        out
    }

    /// 2x2 block matrix `[[a, b], [c, d]]` of equal-size square blocks.
    pub fn two_by_two_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        let n = a.rows;
        assert!(
            [a, b, c, d]
                .iter()
                .all(|m| m.rows == n && m.cols == n),
            "blocks must be square of equal size"
        );
        let mut out = Matrix::zeros(2 * n, 2 * n);
        for (bi, bj, m) in [(0, 0, a), (0, 1, b), (1, 0, c), (1, 1, d)] {
            for i in 0..n {
                for j in 0..n {
                    out.set(bi * n + i, bj * n + j, m.get(i, j).clone());
                }
            }
        }
        out
    }
}
