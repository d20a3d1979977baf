//! The leading constant of the count of integer matrices of fixed determinant.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Dimension and determinant, with the determinant factored into prime powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsymptoticParams {
    pub n: usize,
    pub k: u64,
    /// `(p, a)` pairs with `k = prod p^a`, primes ascending.
    pub factorization: Vec<(u64, u32)>,
}

impl AsymptoticParams {
    pub fn new(n: usize, k: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnsupportedDimension(n));
        }
        if k == 0 {
            return Err(Error::InvalidParams(
                "determinant must be at least 1".into(),
            ));
        }
        let mut factorization = Vec::new();
        let mut rest = k;
        let mut p = 2;
        while p * p <= rest {
            let mut a = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                a += 1;
            }
            if a > 0 {
                factorization.push((p, a));
            }
            p += 1;
        }
        if rest > 1 {
            factorization.push((rest, 1));
        }
        Ok(AsymptoticParams {
            n,
            k,
            factorization,
        })
    }
}

/// Values of `zeta(j)` for `j >= 3`; `zeta(2) = pi^2/6` is built in.
pub type ZetaValues = BTreeMap<usize, f64>;

/// `c_{n,k}` with `N(T, det = k) ~ c_{n,k} T^(n^2 - n)`, in double precision.
pub fn drs_constant(params: &AsymptoticParams, zeta: &ZetaValues) -> Result<f64> {
    let n = params.n;
    let nf = n as f64;
    let mut zeta_product = 1.0;
    for j in 2..=n {
        zeta_product *= match j {
            2 => PI * PI / 6.0,
            _ => *zeta.get(&j).ok_or(Error::MissingZetaValue(j))?,
        };
    }
    let head = PI.powf(nf * nf / 2.0)
        / (gamma((nf * nf - nf + 2.0) / 2.0) * gamma(nf / 2.0) * zeta_product);
    let mut local = (params.k as f64).powf(1.0 - nf);
    for &(p, a) in &params.factorization {
        for i in 1..n as u32 {
            let p = p as f64;
            local *= (p.powi((a + i) as i32) - 1.0) / (p.powi(i as i32) - 1.0);
        }
    }
    Ok(head * local)
}
