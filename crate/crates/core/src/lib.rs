//! Twisted q-characters of Kirillov-Reshetikhin modules.
//!
//! The crate computes q-characters of KR modules over twisted quantum affine
//! algebras with three independent engines (Frenkel-Mukhin saturation,
//! folding from the simply-laced parent, T-system bootstrap), together with
//! closed tableau formulas, finite-type restrictions, Q-systems and fermionic
//! formulas.

pub mod cartan;
pub mod elementary;
pub mod emit;
pub mod engine;
pub mod error;
pub mod fermionic;
pub mod finitechar;
pub mod symalg;
pub mod tableaux;

pub use cartan::{Ade, Family, NodeKind, TypeSpec};
pub use error::{Error, Result};
pub use symalg::{CharPoly, Coeff, FiniteChar, FiniteWeight, Lattice, Monomial, SpectralParam, Var};
