//! Exact arithmetic in F_q and F_q[x].

mod field;
mod poly;

pub(crate) use field::is_prime;
pub use field::{
    prime_power_decomposition, validate_field_spec, Field, FieldElem, FieldSpec, MAX_FIELD_SIZE,
};
pub use poly::{truncate_low, Degree, Poly};
