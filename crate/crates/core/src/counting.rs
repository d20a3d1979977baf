//! Closed forms and recursions for the orbit counts, in arbitrary precision.
//!
//! Notation: `n` is the matrix size, `q` the field size, `t` the degree of the
//! determinant and `k` the entry degree bound. For the unipotent-at-zero sets
//! `P`, `Q^i`, `R^i` the per-column bounds are a [`BoundVector`] and the
//! position `i` is 1-based.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::prime_power_decomposition;
use crate::error::{Error, Result};

/// Per-column degree bounds `(k_1, ..., k_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoundVector(Vec<u32>);

impl BoundVector {
    pub fn new(bounds: Vec<u32>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidParams("bound vector must be nonempty".into()));
        }
        Ok(BoundVector(bounds))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Copy with the bound at 1-based position `i` decremented.
    pub fn decremented(&self, i: usize) -> Option<BoundVector> {
        let mut b = self.0.clone();
        let slot = b.get_mut(i.checked_sub(1)?)?;
        *slot = slot.checked_sub(1)?;
        Some(BoundVector(b))
    }

    /// `l_i >= l_{i+1} >= ... >= l_n >= 1` for the 1-based position `i`.
    pub fn tail_descending_positive(&self, i: usize) -> bool {
        if i == 0 || i > self.n() {
            return false;
        }
        let tail = &self.0[i - 1..];
        tail.iter().all(|&l| l >= 1) && tail.windows(2).all(|w| w[0] >= w[1])
    }
}

impl std::fmt::Display for BoundVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A composition `t_1 + ... + t_n = t` with nonnegative parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParams(
                "composition must have at least one part".into(),
            ));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `t_1 + 2 t_2 + ... + n t_n`.
    pub fn weighted_sum(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &t)| (i as u32 + 1) * t)
            .sum()
    }
}

/// All compositions of `t` into `n` nonnegative parts, in lexicographic order.
pub fn compositions(n: usize, t: u32) -> Vec<Composition> {
    fn go(n: usize, t: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if prefix.len() + 1 == n {
            prefix.push(t);
            out.push(Composition(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in 0..=t {
            prefix.push(first);
            go(n, t - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, t, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

fn check_q(q: u32) -> Result<()> {
    prime_power_decomposition(q as u64)
        .map(|_| ())
        .ok_or_else(|| Error::InvalidParams(format!("q = {q} is not a prime power")))
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    Ok(())
}

fn pow(q: u32, e: u64) -> BigUint {
    num_traits::pow(BigUint::from(q), e as usize)
}

/// `#GL_n(F_q) = prod_{i<n} (q^n - q^i)`.
pub fn gl_count(n: usize, q: u32) -> Result<BigUint> {
    check_n(n)?;
    check_q(q)?;
    let qn = pow(q, n as u64);
    Ok((0..n).map(|i| &qn - pow(q, i as u64)).product())
}

fn check_bound(t: u32, k: u32) -> Result<()> {
    if k < t {
        return Err(Error::BoundTooSmall { k, t });
    }
    Ok(())
}

/// Number of matrices with entries of degree at most `k` in a single left
/// orbit whose determinant has degree `t`: `#GL_n(F_q) q^((n-1)(nk-t))`.
pub fn orbit_count_formula(n: usize, q: u32, t: u32, k: u32) -> Result<BigUint> {
    check_bound(t, k)?;
    let exp = (n as u64 - 1) * (n as u64 * k as u64 - t as u64);
    Ok(gl_count(n, q)? * pow(q, exp))
}

/// `c_{n,t} = sum over compositions of t of q^(t_1 + 2 t_2 + ... + n t_n)`.
///
/// Computed by a running convolution over the column index, so the cost is
/// `O(n t^2)` rather than the number of compositions.
pub fn c_nt(n: usize, q: u32, t: u32) -> Result<BigUint> {
    check_n(n)?;
    check_q(q)?;
    let t = t as usize;
    // table[s] = contribution of all partial compositions summing to s
    let mut table = vec![BigUint::zero(); t + 1];
    table[0] = BigUint::one();
    for col in 1..=n as u64 {
        let mut next = vec![BigUint::zero(); t + 1];
        for (s, acc) in table.iter().enumerate() {
            if acc.is_zero() {
                continue;
            }
            for part in 0..=t - s {
                next[s + part] += acc * pow(q, col * part as u64);
            }
        }
        table = next;
    }
    Ok(table.swap_remove(t))
}

/// All nonsingular matrices with entries of degree at most `k` and
/// determinant of degree exactly `t`.
pub fn total_count_formula(n: usize, q: u32, t: u32, k: u32) -> Result<BigUint> {
    check_bound(t, k)?;
    Ok(c_nt(n, q, t)? * orbit_count_formula(n, q, t, k)?)
}

/// `#P = q^((n-1) sum k_i)`.
pub fn p_count_formula(bounds: &BoundVector, q: u32) -> Result<BigUint> {
    check_q(q)?;
    Ok(pow(q, (bounds.n() as u64 - 1) * bounds.sum() as u64))
}

type Memo<K> = Mutex<HashMap<K, BigUint>>;

/// Memo tables for the recursions; safe to share between threads.
#[derive(Debug, Default)]
pub struct RecursionCache {
    p: Memo<(u32, Vec<u32>)>,
    q: Memo<(u32, usize, Vec<u32>)>,
}

impl RecursionCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `#P` by recursion on the largest bound.
    pub fn p_count(&self, bounds: &BoundVector, q: u32) -> Result<BigUint> {
        check_q(q)?;
        let mut sorted = bounds.as_slice().to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        Ok(self.p_sorted(sorted, q))
    }

    fn p_sorted(&self, sorted: Vec<u32>, q: u32) -> BigUint {
        let n = sorted.len();
        if n == 1 || sorted.iter().all(|&k| k == 0) {
            return BigUint::one();
        }
        let key = (q, sorted);
        if let Some(v) = self.p.lock().unwrap().get(&key) {
            return v.clone();
        }
        let sorted = &key.1;
        let value = if sorted[n - 1] == 0 {
            // A zero-bound last column contributes a free lower-left row.
            let rest = sorted[..n - 1].to_vec();
            let free: u64 = rest.iter().map(|&k| k as u64).sum();
            pow(q, free) * self.p_sorted(rest, q)
        } else {
            let mut smaller = sorted.clone();
            smaller[0] -= 1;
            smaller.sort_unstable_by(|a, b| b.cmp(a));
            pow(q, n as u64 - 1) * self.p_sorted(smaller, q)
        };
        self.p.lock().unwrap().insert(key, value.clone());
        value
    }

    /// `#Q^i`, 1-based `i`.
    pub fn q_count(&self, i: usize, bounds: &BoundVector, q: u32) -> Result<BigUint> {
        check_q(q)?;
        check_tail(i, bounds)?;
        self.q_inner(i, bounds, q)
    }

    fn q_inner(&self, i: usize, bounds: &BoundVector, q: u32) -> Result<BigUint> {
        let key = (q, i, bounds.as_slice().to_vec());
        if let Some(v) = self.q.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let n = bounds.n();
        let lowered = bounds.decremented(i).expect("tail bounds are positive");
        let p = self.p_count(&lowered, q)?;
        let value = if i == n {
            p
        } else {
            let r = self.r_inner(i + 1, &lowered, q)?;
            if r > p {
                return Err(Error::InvariantViolation(format!(
                    "#R^{} exceeds #P at {lowered}",
                    i + 1
                )));
            }
            pow(q, (n - i) as u64) * (p - r)
        };
        self.q.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// `#R^i = sum_{j >= i} #Q^j`, 1-based `i` with `2 <= i <= n`.
    pub fn r_count(&self, i: usize, bounds: &BoundVector, q: u32) -> Result<BigUint> {
        check_q(q)?;
        if i < 2 {
            return Err(Error::PreconditionViolation(format!(
                "R^i needs i >= 2, got {i}"
            )));
        }
        check_tail(i, bounds)?;
        self.r_inner(i, bounds, q)
    }

    fn r_inner(&self, i: usize, bounds: &BoundVector, q: u32) -> Result<BigUint> {
        (i..=bounds.n()).map(|j| self.q_inner(j, bounds, q)).sum()
    }
}

fn check_tail(i: usize, bounds: &BoundVector) -> Result<()> {
    if !bounds.tail_descending_positive(i) {
        return Err(Error::PreconditionViolation(format!(
            "bounds {bounds} are not descending and positive from position {i}"
        )));
    }
    Ok(())
}

pub fn p_count_recursive(bounds: &BoundVector, q: u32) -> Result<BigUint> {
    RecursionCache::new().p_count(bounds, q)
}

pub fn q_count_recursive(i: usize, bounds: &BoundVector, q: u32) -> Result<BigUint> {
    RecursionCache::new().q_count(i, bounds, q)
}

pub fn r_count_recursive(i: usize, bounds: &BoundVector, q: u32) -> Result<BigUint> {
    RecursionCache::new().r_count(i, bounds, q)
}

/// Every bound vector of length `n` with the given total.
pub fn bound_vectors(n: usize, total: u32) -> Vec<BoundVector> {
    compositions(n, total)
        .into_iter()
        .map(|c| BoundVector(c.0))
        .collect()
}
