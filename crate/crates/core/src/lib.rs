//! Exact counting of degree-bounded matrices in left orbits of
//! `GL_n(F_q[x])`, together with the brute-force oracles that check every
//! closed form at desk scale, and an integer-matrix companion for the
//! determinant-4 example over `Z`.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: F_q and F_q[x]
//! - [`polymat`]: matrices over F_q[x], determinants, Hermite normal form
//! - [`counting`]: closed forms and recursions, in arbitrary precision
//! - [`oracle`]: exhaustive enumeration ground truth
//! - [`lemma_moves`]: the triangular-matrix moves and their count checks
//! - [`zcase`]: integer matrices of fixed determinant under a norm bound
//! - [`verify`]: the verification grid shared by the CLI and the test suite

pub mod algebra;
pub mod counting;
mod error;
pub mod lemma_moves;
pub mod oracle;
pub mod polymat;
pub mod report;
pub mod verify;
pub mod zcase;

pub use algebra::{Degree, Field, FieldElem, FieldSpec, Poly};
pub use counting::{BoundVector, Composition};
pub use error::{Error, Result};
pub use oracle::{DetDegreeCensus, EnumerationBudget};
pub use polymat::{HermiteForm, PolyMatrix};
pub use report::CountReport;
