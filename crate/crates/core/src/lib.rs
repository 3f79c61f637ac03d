//! # voak-core
//!
//! Exact-arithmetic computer algebra for vertex operator algebras at desk
//! scale:
//!
//! - [`rational`], [`monomial`], [`element`], [`linalg`]: the exact kernel —
//!   rational scalars, canonical Fock monomials, sparse graded elements and
//!   reduced-echelon linear algebra.
//! - [`voa`]: concrete instances — the rank-d Heisenberg algebra with its
//!   normal-ordered vertex operators, and commutative-associative algebras.
//! - [`axioms`]: machine checks of the defining identities (vacuum, creation,
//!   translation, locality, Jacobi, Virasoro, grading) as exact coefficient
//!   equalities on finite boxes.
//! - [`zhu`]: the associative quotient algebra on a weight truncation, its
//!   anti-involution, lowest-weight spaces and top-level actions.
//! - [`module`]: module instances — adjoint, direct sums, contragredients —
//!   with invariant bilinear forms and homomorphism checks.
//! - [`bundle`]: the Grothendieck group at a point, transition cocycles over
//!   finite covers, multiplicity splitting, trivial complements over discrete
//!   bases, and the inverse-clutching homotopy in rational arithmetic.
//!
//! Everything is computed over exact rationals; a passing check is an exact
//! identity on the stated box, never an approximation.

pub mod axioms;
pub mod bundle;
pub mod element;
pub mod error;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod rational;
pub mod ser;
pub mod voa;
pub mod zhu;

pub use element::GradedElement;
pub use error::{Result, VoakError};
pub use linalg::{Matrix, Subspace};
pub use monomial::{enumerate_basis, Factor, Monomial};
pub use rational::Rational;
pub use voa::{CommAssocData, Corruption, Voa};
