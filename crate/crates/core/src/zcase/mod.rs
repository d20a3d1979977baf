//! Integer matrices of fixed determinant: left and two-sided classes,
//! counts inside a Frobenius ball, and the constant of their growth.

mod constant;
mod enumerate;
mod matrix;

pub use constant::{drs_constant, AsymptoticParams, ZetaValues};
pub use enumerate::{
    census_det_norm, class_inventory, count_det_norm, enumerate_det_norm, orbit_ratio_experiment,
    ClassInventory, LeftClass, RatioPoint, RatioReport, SnfClass,
};
pub use matrix::{hnf_int, hnf_int_reps, snf_int, IntMatrix};

pub(crate) fn as_decimal<S: serde::Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
