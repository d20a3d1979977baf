//! Full scans of the degree-bounded matrix space.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::space::MatrixSpace;
use super::{left_quotient, EnumerationBudget};
use crate::algebra::{Degree, Field, Poly};
use crate::error::{Error, Result};
use crate::polymat::{det, hnf, hnf_matrix, PolyMatrix};

/// Every polynomial of degree at most `max_deg`, each exactly once, in
/// little-endian digit order. `Degree::NegInf` yields only zero.
pub fn iter_polys(
    field: &Field,
    max_deg: Degree,
    budget: &EnumerationBudget,
) -> Result<impl Iterator<Item = Poly>> {
    let len = max_deg.finite().map_or(0, |d| d as u64 + 1);
    let total = budget.admit(field.q(), len)?;
    let field = field.clone();
    Ok((0..total).map(move |mut idx| {
        let q = field.q() as u64;
        let coeffs = (0..len)
            .map(|_| {
                let d = (idx % q) as u32;
                idx /= q;
                field.elem(d).expect("digit below q")
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }))
}

fn full_space(field: &Field, n: usize, k: u32, budget: &EnumerationBudget) -> Result<MatrixSpace> {
    budget.admit(field.q(), (n * n) as u64 * (k as u64 + 1))?;
    Ok(MatrixSpace::bounded(field, n, n, |_, _| Some(k)))
}

fn sum_u64(parts: Vec<u64>) -> BigUint {
    parts.into_iter().map(BigUint::from).sum()
}

/// Number of matrices with entries of degree at most `k` in the left orbit of `rep`.
pub fn count_orbit_bruteforce(
    rep: &PolyMatrix,
    k: u32,
    budget: &EnumerationBudget,
) -> Result<BigUint> {
    if !rep.is_square() {
        return Err(Error::NotSquare);
    }
    let target = match hnf(rep) {
        Ok(form) => form,
        Err(Error::SingularMatrix) => return Err(Error::SingularRepresentative),
        Err(e) => return Err(e),
    };
    let space = full_space(rep.field(), rep.rows(), k, budget)?;
    let t = Degree::Finite(target.det_degree);
    let parts = space.par_fold(
        budget.partitions,
        || 0u64,
        |acc, x| {
            let d = det(x).expect("square");
            if d.degree() == t && hnf_matrix(x).expect("nonsingular") == target.h {
                *acc += 1;
            }
        },
    );
    Ok(sum_u64(parts))
}

/// Counts of every left orbit met by the degree-`k` space, keyed by Hermite form.
pub fn orbit_census(
    field: &Field,
    n: usize,
    k: u32,
    budget: &EnumerationBudget,
) -> Result<BTreeMap<PolyMatrix, u64>> {
    let space = full_space(field, n, k, budget)?;
    let parts = space.par_fold(
        budget.partitions,
        BTreeMap::new,
        |acc: &mut BTreeMap<PolyMatrix, u64>, x| {
            if let Ok(h) = hnf_matrix(x) {
                *acc.entry(h).or_insert(0) += 1;
            }
        },
    );
    let mut merged = BTreeMap::new();
    for part in parts {
        for (h, c) in part {
            *merged.entry(h).or_insert(0) += c;
        }
    }
    Ok(merged)
}

/// Bucket counts by determinant degree over all matrices with entries of degree at most `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetDegreeCensus {
    pub n: usize,
    pub q: u32,
    pub k: u32,
    pub buckets: BTreeMap<u32, BigUint>,
    pub singular: BigUint,
}

impl DetDegreeCensus {
    pub fn bucket(&self, t: u32) -> BigUint {
        self.buckets.get(&t).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.buckets.values().sum::<BigUint>() + &self.singular
    }
}

impl Serialize for DetDegreeCensus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Buckets<'a>(&'a DetDegreeCensus);
        impl Serialize for Buckets<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.buckets.len() + 1))?;
                for (t, c) in &self.0.buckets {
                    map.serialize_entry(&t.to_string(), &c.to_string())?;
                }
                map.serialize_entry("singular", &self.0.singular.to_string())?;
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("q", &self.q)?;
        map.serialize_entry("k", &self.k)?;
        map.serialize_entry("buckets", &Buckets(self))?;
        map.end()
    }
}

pub fn census_by_det_degree(
    field: &Field,
    n: usize,
    k: u32,
    budget: &EnumerationBudget,
) -> Result<DetDegreeCensus> {
    let space = full_space(field, n, k, budget)?;
    let max_t = n * k as usize;
    let parts = space.par_fold(
        budget.partitions,
        || vec![0u64; max_t + 2],
        |acc, x| match det(x).expect("square").degree() {
            Degree::NegInf => acc[max_t + 1] += 1,
            Degree::Finite(t) => acc[t as usize] += 1,
        },
    );
    let mut totals = vec![BigUint::zero(); max_t + 2];
    for part in parts {
        for (slot, c) in totals.iter_mut().zip(part) {
            *slot += c;
        }
    }
    let singular = totals.pop().expect("singular bucket");
    let buckets = totals
        .into_iter()
        .enumerate()
        .map(|(t, c)| (t as u32, c))
        .collect();
    Ok(DetDegreeCensus {
        n,
        q: field.q(),
        k,
        buckets,
        singular,
    })
}

/// The transforms `g` with `g * m` in the orbit of `m` and of entry degree at most `k`,
/// recovered from a full scan as `g = X m^-1`.
pub fn g_set(m: &PolyMatrix, k: u32, budget: &EnumerationBudget) -> Result<BTreeSet<PolyMatrix>> {
    let target = hnf_matrix(m).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularRepresentative,
        e => e,
    })?;
    let space = full_space(m.field(), m.rows(), k, budget)?;
    let parts = space.par_fold(
        budget.partitions,
        Vec::new,
        |acc: &mut Vec<PolyMatrix>, x| {
            if hnf_matrix(x).ok().as_ref() == Some(&target) {
                acc.push(x.clone());
            }
        },
    );
    parts
        .into_iter()
        .flatten()
        .map(|x| left_quotient(&x, m))
        .collect()
}
