//! 2x2 integer matrices of fixed determinant inside a Frobenius ball.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::matrix::{hnf_int, hnf_int_reps, snf_int, IntMatrix};
use crate::algebra::is_prime;
use crate::error::{Error, Result};
use crate::oracle::EnumerationBudget;

fn isqrt(v: i64) -> i64 {
    if v < 0 {
        return -1;
    }
    let mut r = (v as f64).sqrt() as i64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

fn check(n: usize, t: u32, budget: &EnumerationBudget) -> Result<()> {
    if n != 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    if t == 0 {
        return Err(Error::InvalidParams("T must be at least 1".into()));
    }
    let side = 2 * t as u64 + 1;
    budget.admit_items(side.saturating_pow(3))?;
    Ok(())
}

/// Visits the matrices with top-left entry `a`, ordered by `b`, then `c`, then `d`.
fn scan_a(det: i64, t2: i64, a: i64, mut visit: impl FnMut(IntMatrix)) {
    let rb = isqrt(t2 - a * a);
    for b in -rb..=rb {
        let rc = isqrt(t2 - a * a - b * b);
        for c in -rc..=rc {
            let rest = t2 - a * a - b * b - c * c;
            if a != 0 {
                let num = det + b * c;
                if num % a == 0 {
                    let d = num / a;
                    if d * d <= rest {
                        visit(IntMatrix::from_2x2(a, b, c, d));
                    }
                }
            } else if b * c == -det {
                let rd = isqrt(rest);
                for d in -rd..=rd {
                    visit(IntMatrix::from_2x2(a, b, c, d));
                }
            }
        }
    }
}

/// Every `n x n` integer matrix with determinant `det` and squared
/// Frobenius norm at most `T^2`, exactly once, ordered by `(a, b, c, d)`.
pub fn enumerate_det_norm(
    n: usize,
    det: i64,
    t: u32,
    budget: &EnumerationBudget,
) -> Result<Vec<IntMatrix>> {
    check(n, t, budget)?;
    let t = t as i64;
    let mut out = Vec::new();
    for a in -t..=t {
        scan_a(det, t * t, a, |m| out.push(m));
    }
    Ok(out)
}

/// Counts of [`enumerate_det_norm`] grouped by `key`, sharded over the top-left entry.
pub fn census_det_norm<K, F>(
    det: i64,
    t: u32,
    budget: &EnumerationBudget,
    key: F,
) -> Result<BTreeMap<K, u64>>
where
    K: Ord + Send,
    F: Fn(&IntMatrix) -> K + Sync,
{
    check(2, t, budget)?;
    let t = t as i64;
    let parts: Vec<BTreeMap<K, u64>> = (-t..=t)
        .into_par_iter()
        .map(|a| {
            let mut acc = BTreeMap::new();
            scan_a(det, t * t, a, |m| *acc.entry(key(&m)).or_insert(0) += 1);
            acc
        })
        .collect();
    let mut merged = BTreeMap::new();
    for part in parts {
        for (k, c) in part {
            *merged.entry(k).or_insert(0) += c;
        }
    }
    Ok(merged)
}

/// Number of matrices of determinant `det` with norm at most `T`.
pub fn count_det_norm(det: i64, t: u32, budget: &EnumerationBudget) -> Result<u64> {
    Ok(census_det_norm(det, t, budget, |_| ())?.into_values().sum())
}

fn snf_key(m: &IntMatrix) -> Vec<i64> {
    snf_int(m).expect("nonsingular").diag()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioPoint {
    #[serde(rename = "T")]
    pub t: u32,
    /// Matrices in the scalar class `diag(p, p)`.
    #[serde(serialize_with = "crate::zcase::as_decimal")]
    pub o1: u64,
    /// Matrices in the class `diag(1, p^2)`.
    #[serde(serialize_with = "crate::zcase::as_decimal")]
    pub o2: u64,
    #[serde(serialize_with = "crate::zcase::as_decimal")]
    pub total: u64,
    /// `o1/o2` in lowest terms.
    pub ratio: String,
    pub ratio_value: f64,
    /// `|ratio_value - limit|`.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub det: i64,
    /// `1/(p^2 + p)`.
    pub limit: String,
    pub limit_value: f64,
    pub points: Vec<RatioPoint>,
}

impl RatioReport {
    /// The deviation at the largest `T` is no larger than at the smallest.
    pub fn improves(&self) -> bool {
        match (self.points.first(), self.points.last()) {
            (Some(a), Some(b)) => b.deviation <= a.deviation,
            _ => false,
        }
    }
}

fn prime_square_root(det: i64) -> Option<i64> {
    let p = isqrt(det);
    (det > 0 && p * p == det && is_prime(p as u64)).then_some(p)
}

/// Ratio of the two two-sided classes of determinant `p^2` over a ladder of norm bounds.
pub fn orbit_ratio_experiment(
    det: i64,
    ladder: &[u32],
    budget: &EnumerationBudget,
) -> Result<RatioReport> {
    let p = prime_square_root(det).ok_or_else(|| {
        Error::InvalidParams(format!("ratio needs a prime square determinant, got {det}"))
    })?;
    let limit_den = p * p + p;
    let limit_value = 1.0 / limit_den as f64;
    let mut points = Vec::new();
    for &t in ladder {
        let census = census_det_norm(det, t, budget, snf_key)?;
        let o1 = census.get(&vec![p, p]).copied().unwrap_or(0);
        let o2 = census.get(&vec![1, det]).copied().unwrap_or(0);
        let total = census.values().sum();
        let ratio_value = if o2 == 0 {
            f64::NAN
        } else {
            o1 as f64 / o2 as f64
        };
        let g = o1.gcd(&o2).max(1);
        points.push(RatioPoint {
            t,
            o1,
            o2,
            total,
            ratio: format!("{}/{}", o1 / g, o2 / g),
            ratio_value,
            deviation: (ratio_value - limit_value).abs(),
        });
    }
    Ok(RatioReport {
        det,
        limit: format!("1/{limit_den}"),
        limit_value,
        points,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeftClass {
    pub hnf: IntMatrix,
    pub snf: IntMatrix,
    /// Matrices of norm at most `T` in this class.
    #[serde(serialize_with = "crate::zcase::as_decimal")]
    pub points: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnfClass {
    pub snf: IntMatrix,
    pub left_classes: usize,
    #[serde(serialize_with = "crate::zcase::as_decimal")]
    pub points: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassInventory {
    pub det: i64,
    #[serde(rename = "T")]
    pub t: u32,
    /// Left classes met by the norm ball.
    pub left_classes: Vec<LeftClass>,
    pub snf_classes: Vec<SnfClass>,
    /// Left classes listed directly as Hermite forms, met or not.
    pub hnf_reps: Vec<IntMatrix>,
}

/// Left and two-sided classes of determinant `det` seen inside the ball of radius `T`.
pub fn class_inventory(det: i64, t: u32, budget: &EnumerationBudget) -> Result<ClassInventory> {
    if det <= 0 {
        return Err(Error::NonPositiveDeterminant);
    }
    let census = census_det_norm(det, t, budget, |m| {
        hnf_int(m).expect("positive determinant")
    })?;
    let mut left_classes = Vec::new();
    let mut snf: BTreeMap<IntMatrix, (usize, u64)> = BTreeMap::new();
    for (hnf, points) in census {
        let s = snf_int(&hnf)?;
        let entry = snf.entry(s.clone()).or_default();
        entry.0 += 1;
        entry.1 += points;
        left_classes.push(LeftClass {
            hnf,
            snf: s,
            points,
        });
    }
    let snf_classes = snf
        .into_iter()
        .map(|(snf, (left_classes, points))| SnfClass {
            snf,
            left_classes,
            points,
        })
        .collect();
    Ok(ClassInventory {
        det,
        t,
        left_classes,
        snf_classes,
        hnf_reps: hnf_int_reps(2, det as u64)?,
    })
}
