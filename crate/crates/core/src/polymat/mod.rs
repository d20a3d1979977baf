//! Matrices over F_q[x]: products, determinants, the degree-bound property
//! R(k), and Hermite normal form as the canonical left-orbit representative.

mod det;
mod hnf;
mod matrix;

pub use det::{adjugate, det, det_cofactor, det_via_hnf};
pub(crate) use hnf::reduce_column_above;
pub use hnf::{hnf, hnf_matrix, is_canonical, same_orbit, HermiteForm};
pub use matrix::PolyMatrix;
